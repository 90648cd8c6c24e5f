//! Row-reduction kernels shared by the module-level operations.
//!
//! Integer routines work on `Vec<Vec<BigInt>>` rows; field routines work on
//! `Vec<Vec<BigRational>>` rows with arithmetic routed through [`Ring`].

use alloc::vec;
use alloc::vec::Vec;
use core::mem;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::Ring;

fn sub_multiple(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

fn add_row(target: &mut [BigInt], source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t += s;
        }
    }
}

fn negate(row: &mut [BigInt]) {
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v = -mem::take(v);
        }
    }
}

fn split_pair<T>(rows: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = rows.split_at_mut(j);
        (&mut a[i], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(i);
        (&mut b[0], &mut a[j])
    }
}

/// In-place row Hermite normal form, pivoting only on columns `0..pivot_cols`.
///
/// Afterwards the first `rank` rows are in echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`; the remaining rows vanish on
/// the pivot columns. Row operations are unimodular and act on whole rows, so
/// trailing columns record the transformation when the caller augments with an
/// identity block. Returns the pivot columns.
pub(crate) fn int_row_hnf(rows: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..n {
                let v = &rows[i][c];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if rows[b][c].abs() <= v.abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut clean = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let (pivot_row, row) = split_pair(rows, r, i);
                let q = row[c].div_floor(&pivot_row[c]);
                sub_multiple(row, pivot_row, &q);
                if !row[c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                if rows[r][c].is_negative() {
                    negate(&mut rows[r]);
                }
                for i in 0..r {
                    if rows[i][c].is_zero() {
                        continue;
                    }
                    let (pivot_row, row) = split_pair(rows, r, i);
                    let q = row[c].div_floor(&pivot_row[c]);
                    sub_multiple(row, pivot_row, &q);
                }
                pivots.push(c);
                r += 1;
                break;
            }
        }
    }
    pivots
}

pub(crate) struct SmithRaw {
    pub diag: Vec<BigInt>,
    pub u: Option<Vec<Vec<BigInt>>>,
    pub v: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            row
        })
        .collect()
}

/// Smith normal form of an integer matrix.
///
/// With `track`, also returns unimodular `U` (rows) and `V` (rows) with
/// `U * A * V = D`. The diagonal has length `min(m, n)`, is nonnegative and forms a
/// divisibility chain with zeros last.
pub(crate) fn int_smith(mut a: Vec<Vec<BigInt>>, cols: usize, track: bool) -> SmithRaw {
    let m = a.len();
    let n = cols;
    let mut u = track.then(|| identity_rows(m));
    // V is kept transposed so that column operations become row operations.
    let mut vt = track.then(|| identity_rows(n));
    let k = m.min(n);
    let mut diag = Vec::with_capacity(k);
    for t in 0..k {
        loop {
            // pivot: smallest nonzero magnitude in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let v = &a[i][j];
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a[bi][bj].abs() <= v.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            if pi != t {
                a.swap(pi, t);
                if let Some(u) = u.as_mut() {
                    u.swap(pi, t);
                }
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(pj, t);
                }
                if let Some(vt) = vt.as_mut() {
                    vt.swap(pj, t);
                }
            }
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (pr, row) = split_pair(&mut a, t, i);
                sub_multiple(row, pr, &q);
                if let Some(u) = u.as_mut() {
                    let (pr, row) = split_pair(u, t, i);
                    sub_multiple(row, pr, &q);
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    if !row[t].is_zero() {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
                if let Some(vt) = vt.as_mut() {
                    let (pr, row) = split_pair(vt, t, j);
                    sub_multiple(row, pr, &q);
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                let (pr, row) = split_pair(&mut a, t, i);
                add_row(pr, row);
                if let Some(u) = u.as_mut() {
                    let (pr, row) = split_pair(u, t, i);
                    add_row(pr, row);
                }
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            negate(&mut a[t]);
            if let Some(u) = u.as_mut() {
                negate(&mut u[t]);
            }
        }
        diag.push(a[t][t].clone());
    }
    let v = vt.map(|vt| transpose(&vt, n));
    SmithRaw { diag, u, v }
}

pub(crate) fn transpose(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    (0..cols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Invariant factors of an integer matrix, without transforms.
///
/// Alternates row Hermite reductions of the matrix and of its transpose until the
/// result is diagonal; the diagonal is then brought into divisibility-chain form by
/// gcd/lcm exchanges. Returns the nonzero invariant factors in increasing
/// divisibility order; their count is the rank.
pub(crate) fn int_invariant_factors(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let mut a = rows;
    let mut width = cols;
    loop {
        let pivots = int_row_hnf(&mut a, width);
        a.truncate(pivots.len());
        let diagonal = a.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, v)| v.is_zero() || j == pivots[i])
        });
        if diagonal {
            let mut d: Vec<BigInt> = a
                .iter()
                .enumerate()
                .map(|(i, row)| row[pivots[i]].abs())
                .collect();
            return normalize_diagonal(&mut d);
        }
        let t = transpose(&a, width);
        width = a.len();
        a = t;
    }
}

/// Converts any diagonal of nonzero integers into Smith form.
pub(crate) fn normalize_diagonal(d: &mut [BigInt]) -> Vec<BigInt> {
    let k = d.len();
    for i in 0..k {
        for j in i + 1..k {
            if d[j].is_multiple_of(&d[i]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.to_vec()
}

/// In-place reduced row echelon form over a field. Returns the pivot columns.
pub(crate) fn field_rref(ring: Ring, rows: &mut [Vec<BigRational>], pivot_cols: usize) -> Vec<usize> {
    debug_assert!(ring.is_field());
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ring.inv(&rows[r][c]);
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = ring.mul(v, &inv);
            }
        }
        for i in 0..n {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let (pr, row) = split_pair(rows, r, i);
            let factor = row[c].clone();
            for (t, s) in row.iter_mut().zip(pr.iter()) {
                if !s.is_zero() {
                    *t = ring.sub(t, &ring.mul(&factor, s));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn hnf_of_small_lattice() {
        let mut a = ints(&[&[4, 6], &[2, 2]]);
        let piv = int_row_hnf(&mut a, 2);
        assert_eq!(piv, [0, 1]);
        assert_eq!(a, ints(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn invariant_factors_match_smith() {
        let a = ints(&[&[6, 0], &[0, 4]]);
        assert_eq!(int_invariant_factors(a.clone(), 2), [BigInt::from(2), BigInt::from(12)]);
        assert_eq!(int_smith(a, 2, false).diag, [BigInt::from(2), BigInt::from(12)]);
    }
}
