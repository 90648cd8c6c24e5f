//! Coefficient rings and exact scalars.
//!
//! Every matrix entry is stored as a [`BigRational`]. Over `Z` and `F_p` the
//! denominator is always one, and over `F_p` the numerator lies in `[0, p)`.

use core::fmt;

use alloc::string::ToString;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Rationals => f.write_str("Q"),
            Ring::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl Ring {
    /// Builds `F_p`, rejecting composite moduli.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// Brings a rational value into the canonical representation of this ring.
    pub fn normalize(self, value: BigRational) -> Result<BigRational> {
        match self {
            Ring::Rationals => Ok(value),
            Ring::Integers => {
                if value.is_integer() {
                    Ok(value)
                } else {
                    Err(Error::InvalidScalar {
                        ring: self,
                        value: value.to_string(),
                    })
                }
            }
            Ring::PrimeField(p) => {
                let modulus = BigInt::from(p);
                let num = value.numer().mod_floor(&modulus);
                let den = value.denom().mod_floor(&modulus);
                if den.is_zero() {
                    return Err(Error::InvalidScalar {
                        ring: self,
                        value: value.to_string(),
                    });
                }
                let inv = mod_inverse(&den, &modulus).ok_or_else(|| Error::InvalidScalar {
                    ring: self,
                    value: value.to_string(),
                })?;
                Ok(BigRational::from_integer((num * inv).mod_floor(&modulus)))
            }
        }
    }

    /// Reduction of an integer into the ring; infallible for every ring.
    pub fn from_int(self, value: BigInt) -> BigRational {
        match self {
            Ring::PrimeField(p) => BigRational::from_integer(value.mod_floor(&BigInt::from(p))),
            _ => BigRational::from_integer(value),
        }
    }

    pub(crate) fn add(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a + b)
    }

    pub(crate) fn sub(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a - b)
    }

    pub(crate) fn mul(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a * b)
    }

    pub(crate) fn neg(self, a: &BigRational) -> BigRational {
        self.reduce(-a)
    }

    /// Multiplicative inverse in a field. Panics on zero or over `Z`.
    pub(crate) fn inv(self, a: &BigRational) -> BigRational {
        match self {
            Ring::Rationals => a.recip(),
            Ring::PrimeField(p) => {
                let modulus = BigInt::from(p);
                let inv = mod_inverse(&a.to_integer(), &modulus).expect("inverse of zero in F_p");
                BigRational::from_integer(inv)
            }
            Ring::Integers => panic!("no inverses over Z"),
        }
    }

    // Only integral values reach this path for F_p, so reduction is a mod.
    fn reduce(self, v: BigRational) -> BigRational {
        match self {
            Ring::PrimeField(p) => {
                BigRational::from_integer(v.to_integer().mod_floor(&BigInt::from(p)))
            }
            _ => v,
        }
    }
}

/// A ring element tagged with its ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    ring: Ring,
    value: BigRational,
}

impl Scalar {
    pub fn new(ring: Ring, value: BigRational) -> Result<Scalar> {
        Ok(Scalar {
            ring,
            value: ring.normalize(value)?,
        })
    }

    pub fn from_int(ring: Ring, value: i64) -> Scalar {
        Scalar {
            ring,
            value: ring.from_int(BigInt::from(value)),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn into_value(self) -> BigRational {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() || (-&e.gcd).is_one() {
        let x = if e.gcd.is_negative() { -e.x } else { e.x };
        Some(x.mod_floor(m))
    } else {
        None
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
