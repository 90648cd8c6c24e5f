//! Integer Laurent polynomials in line-element variables `l_1..l_p` and the
//! Adams operations `ψ_k : l_i ↦ l_i^k` on them.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

pub const MAX_VARIABLES: usize = 8;

/// Sparse Laurent polynomial; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(vars: usize) -> Result<LaurentPolynomial> {
        if vars > MAX_VARIABLES {
            return Err(Error::InvalidParameter(format!(
                "at most {MAX_VARIABLES} variables are supported, found {vars}"
            )));
        }
        Ok(LaurentPolynomial {
            vars,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(vars: usize, c: impl Into<BigInt>) -> Result<LaurentPolynomial> {
        LaurentPolynomial::monomial(vars, vec![0; vars], c)
    }

    pub fn one(vars: usize) -> Result<LaurentPolynomial> {
        LaurentPolynomial::constant(vars, 1)
    }

    /// The line element `l_{i+1}`.
    pub fn variable(vars: usize, i: usize) -> Result<LaurentPolynomial> {
        if i >= vars {
            return Err(Error::InvalidParameter(format!("variable {i} out of range for {vars} variables")));
        }
        let mut e = vec![0; vars];
        e[i] = 1;
        LaurentPolynomial::monomial(vars, e, 1)
    }

    pub fn monomial(vars: usize, exponents: Vec<i64>, c: impl Into<BigInt>) -> Result<LaurentPolynomial> {
        LaurentPolynomial::from_terms(vars, [(exponents, c.into())])
    }

    /// Sums the given terms, combining repeated exponent vectors.
    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Result<LaurentPolynomial> {
        let mut p = LaurentPolynomial::zero(vars)?;
        for (e, c) in terms {
            if e.len() != vars {
                return Err(Error::InvalidParameter(format!(
                    "exponent vector of length {} in {vars} variables",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pads exponent vectors with zeros to `vars` entries.
    fn widened(&self, vars: usize) -> LaurentPolynomial {
        if vars == self.vars {
            return self.clone();
        }
        LaurentPolynomial {
            vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(vars, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// `ψ_k`, sending every `l_i` to `l_i^k`.
    pub fn adams(&self, k: u32) -> Result<LaurentPolynomial> {
        if k == 0 {
            return Err(Error::InvalidParameter("Adams operations are indexed by k >= 1".into()));
        }
        let k = i64::from(k);
        Ok(LaurentPolynomial {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * k).collect(), c.clone()))
                .collect(),
        })
    }

    /// Value at `l_1 = … = l_p = 1`: the sum of the coefficients.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn pow(&self, e: u32) -> LaurentPolynomial {
        let mut acc = LaurentPolynomial {
            vars: self.vars,
            terms: BTreeMap::from([(vec![0; self.vars], BigInt::one())]),
        };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let vars = self.vars.max(rhs.vars);
        let mut out = self.widened(vars);
        for (e, c) in rhs.widened(vars).terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let vars = self.vars.max(rhs.vars);
        let (a, b) = (self.widened(vars), rhs.widened(vars));
        let mut out = LaurentPolynomial {
            vars,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (n == 0, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            let mag = c.abs();
            let factors: Vec<_> = e.iter().enumerate().filter(|(_, &x)| x != 0).collect();
            if factors.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
                if !factors.is_empty() {
                    f.write_str("*")?;
                }
            }
            for (j, (i, &x)) in factors.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                write!(f, "l{}", i + 1)?;
                if x != 1 {
                    write!(f, "^{x}")?;
                }
            }
        }
        Ok(())
    }
}

fn check_p(p: usize) -> Result<()> {
    if p == 0 || p > MAX_VARIABLES {
        return Err(Error::InvalidParameter(format!(
            "p must lie in 1..={MAX_VARIABLES}, found {p}"
        )));
    }
    Ok(())
}

/// `∏_{i=1..p} (1 - l_i)`.
pub fn koszul_class(p: usize) -> Result<LaurentPolynomial> {
    check_p(p)?;
    let one = LaurentPolynomial::one(p)?;
    let mut acc = one.clone();
    for i in 0..p {
        acc = &acc * &(&one - &LaurentPolynomial::variable(p, i)?);
    }
    Ok(acc)
}

/// `∏_{i=1..p} (1 + l_i + … + l_i^{k-1})`.
pub fn cofactor(p: usize, k: u32) -> Result<LaurentPolynomial> {
    check_p(p)?;
    if k == 0 {
        return Err(Error::InvalidParameter("Adams operations are indexed by k >= 1".into()));
    }
    let mut acc = LaurentPolynomial::one(p)?;
    for i in 0..p {
        let geometric = LaurentPolynomial::from_terms(
            p,
            (0..i64::from(k)).map(|j| {
                let mut e = vec![0; p];
                e[i] = j;
                (e, BigInt::one())
            }),
        )?;
        acc = &acc * &geometric;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdamsReport {
    pub p: usize,
    pub k: u32,
    pub koszul: LaurentPolynomial,
    pub adams_image: LaurentPolynomial,
    pub cofactor: LaurentPolynomial,
    /// `ψ_k(kos) = kos · cofactor` exactly.
    pub factorization_holds: bool,
    pub cofactor_at_one: BigInt,
    pub expected: BigInt,
}

impl AdamsReport {
    pub fn holds(&self) -> bool {
        self.factorization_holds && self.cofactor_at_one == self.expected
    }
}

pub fn verify_adams_koszul(p: usize, k: u32) -> Result<AdamsReport> {
    let koszul = koszul_class(p)?;
    let adams_image = koszul.adams(k)?;
    let cofactor = cofactor(p, k)?;
    let factorization_holds = adams_image == &koszul * &cofactor;
    Ok(AdamsReport {
        p,
        k,
        cofactor_at_one: cofactor.evaluate_at_one(),
        expected: Pow::pow(BigInt::from(k), p as u32),
        koszul,
        adams_image,
        cofactor,
        factorization_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(vars: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::variable(vars, i).unwrap()
    }

    fn one(vars: usize) -> LaurentPolynomial {
        LaurentPolynomial::one(vars).unwrap()
    }

    #[test]
    fn adams_examples() {
        assert_eq!(one(2).adams(5).unwrap(), one(2));
        let x = &one(1) - &l(1, 0);
        assert_eq!(x.adams(2).unwrap(), &one(1) - &l(1, 0).pow(2));
        let m = LaurentPolynomial::monomial(2, vec![1, -1], 1).unwrap();
        let six = LaurentPolynomial::monomial(2, vec![6, -6], 1).unwrap();
        assert_eq!(m.adams(3).unwrap().adams(2).unwrap(), six);
        assert_eq!(m.adams(6).unwrap(), six);
        assert!(m.adams(0).is_err());
    }

    #[test]
    fn koszul_and_cofactor_examples() {
        assert_eq!(koszul_class(1).unwrap(), &one(1) - &l(1, 0));
        assert_eq!(cofactor(1, 2).unwrap(), &one(1) + &l(1, 0));
        assert_eq!(cofactor(3, 1).unwrap(), one(3));
        let (a, b) = (l(2, 0), l(2, 1));
        let lhs = koszul_class(2).unwrap().adams(2).unwrap();
        let rhs = &(&(&(&one(2) - &a) * &(&one(2) - &b)) * &(&one(2) + &a)) * &(&one(2) + &b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn verification_examples() {
        let r = verify_adams_koszul(1, 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.cofactor_at_one, BigInt::from(2));
        assert_eq!(verify_adams_koszul(2, 3).unwrap().cofactor_at_one, BigInt::from(9));
        for p in 1..=4 {
            assert_eq!(verify_adams_koszul(p, 1).unwrap().cofactor_at_one, BigInt::one());
        }
        assert_eq!(verify_adams_koszul(3, 2).unwrap().cofactor_at_one, BigInt::from(8));
        assert!(koszul_class(9).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(koszul_class(1).unwrap().to_string(), "1 - l1");
        let m = LaurentPolynomial::monomial(2, vec![2, -1], -3).unwrap();
        assert_eq!(m.to_string(), "-3*l1^2*l2^-1");
        assert_eq!(LaurentPolynomial::zero(2).unwrap().to_string(), "0");
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = l(2, 0);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).len(), 0);
    }
}
