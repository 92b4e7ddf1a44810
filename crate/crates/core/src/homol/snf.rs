//! Sparse integer Smith normal form.
//!
//! Elimination runs in checked `i64` arithmetic and restarts in `BigInt` the
//! first time any intermediate leaves the machine word range.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let row = &self.rows[i];
        match row.binary_search_by_key(&(j as u32), |e| e.0) {
            Ok(k) => row[k].1,
            Err(_) => 0,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&(j as u32), |e| e.0) {
            Ok(k) if v == 0 => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v == 0 => {}
            Err(k) => row.insert(k, (j as u32, v)),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Matrix product; panics on dimension mismatch or overflow.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.nrows, rhs.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = vec![0i64; rhs.ncols];
            for &(k, a) in row {
                for &(j, b) in &rhs.rows[k as usize] {
                    acc[j as usize] += a * b;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }
}

/// Invariant factors `d₁ | d₂ | …` (non-zero only) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigUint>,
    pub rank: usize,
}

trait Coeff: Clone + Debug + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `|self| < |other|`
    fn abs_lt(&self, other: &Self) -> bool;
    /// Quotient rounding to nearest, so the remainder is at most half the divisor.
    fn round_div(&self, d: &Self) -> Option<Self>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn to_biguint_abs(&self) -> BigUint;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn round_div(&self, d: &Self) -> Option<Self> {
        let q = self.checked_div_euclid(*d)?;
        let r = self.checked_rem_euclid(*d)?;
        // r in [0, |d|); shift toward the nearest multiple
        if r.checked_mul(2)? > d.checked_abs()? {
            if *d > 0 {
                q.checked_add(1)
            } else {
                q.checked_sub(1)
            }
        } else {
            Some(q)
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn to_biguint_abs(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn round_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_mod_floor(d);
        let two_r: BigInt = &r * 2;
        if two_r.magnitude() > d.magnitude() && r.sign() != Sign::NoSign {
            Some(q + 1)
        } else {
            Some(q)
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn to_biguint_abs(&self) -> BigUint {
        self.magnitude().clone()
    }
}

struct Overflow;

fn eliminate<T: Coeff>(m: &IntMatrix) -> Result<Vec<BigUint>, Overflow> {
    let mut rows: Vec<Vec<(u32, T)>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|&(j, v)| (j, T::from_i64(v))).collect())
        .collect();
    let mut diag = Vec::new();
    loop {
        // smallest |entry|, ties broken by shortest row
        let mut best: Option<(usize, usize)> = None;
        'scan: for (i, row) in rows.iter().enumerate() {
            for (k, (_, v)) in row.iter().enumerate() {
                let better = match best {
                    None => true,
                    Some((bi, bk)) => {
                        let bv = &rows[bi][bk].1;
                        v.abs_lt(bv) || (!bv.abs_lt(v) && row.len() < rows[bi].len())
                    }
                };
                if better {
                    best = Some((i, k));
                    if v.is_unit() && row.len() <= 2 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((r, k)) = best else { break };
        let (c, pivot) = rows[r][k].clone();
        let pivot_row = rows[r].clone();

        let mut reduced = true;
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let Ok(pos) = rows[i].binary_search_by_key(&c, |e| e.0) else {
                continue;
            };
            let q = rows[i][pos].1.round_div(&pivot).ok_or(Overflow)?;
            rows[i] = axpy(&rows[i], &q, &pivot_row)?;
            if rows[i].binary_search_by_key(&c, |e| e.0).is_ok() {
                reduced = false;
            }
        }
        if !reduced {
            continue;
        }
        // column c is now zero outside row r; clear row r by column operations
        let mut residue = Vec::new();
        for (j, v) in &pivot_row {
            if *j == c {
                continue;
            }
            let q = v.round_div(&pivot).ok_or(Overflow)?;
            let rem = v.sub_mul(&q, &pivot).ok_or(Overflow)?;
            if !rem.is_zero() {
                residue.push((*j, rem));
            }
        }
        if residue.is_empty() {
            diag.push(pivot.to_biguint_abs());
            rows[r].clear();
        } else {
            let pos = residue.partition_point(|e| e.0 < c);
            residue.insert(pos, (c, pivot));
            rows[r] = residue;
        }
    }
    Ok(diag)
}

/// `a - q * b` on sorted sparse rows.
fn axpy<T: Coeff>(a: &[(u32, T)], q: &T, b: &[(u32, T)]) -> Result<Vec<(u32, T)>, Overflow> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (col, v) = if take_a {
            i += 1;
            (a[i - 1].0, a[i - 1].1.clone())
        } else if take_b {
            j += 1;
            (b[j - 1].0, zero.sub_mul(q, &b[j - 1].1).ok_or(Overflow)?)
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, a[i - 1].1.sub_mul(q, &b[j - 1].1).ok_or(Overflow)?)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    Ok(out)
}

/// Rewrites a diagonal into the divisibility chain with the same product structure.
fn normalize(mut diag: Vec<BigUint>) -> Vec<BigUint> {
    let mut units: Vec<BigUint> = Vec::new();
    diag.retain(|d| {
        if d.is_one() {
            units.push(d.clone());
            false
        } else {
            true
        }
    });
    diag.sort();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = &diag[i] / &g * &diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    units.extend(diag);
    units
}

/// Smith normal form of an integer matrix: the non-zero invariant factors in
/// divisibility order and the rank.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let diag = match eliminate::<i64>(m) {
        Ok(d) => d,
        Err(Overflow) => match eliminate::<BigInt>(m) {
            Ok(d) => d,
            Err(Overflow) => unreachable!("bigint arithmetic does not overflow"),
        },
    };
    let factors = normalize(diag);
    SmithForm {
        rank: factors.len(),
        factors,
    }
}

#[cfg(test)]
pub(crate) fn smith_normal_form_bigint(m: &IntMatrix) -> SmithForm {
    let factors = normalize(eliminate::<BigInt>(m).ok().expect("bigint"));
    SmithForm {
        rank: factors.len(),
        factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(m: &[Vec<i64>]) -> Vec<u64> {
        smith_normal_form(&IntMatrix::from_dense(m))
            .factors
            .iter()
            .map(|d| d.try_into().unwrap())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(factors(&IntMatrix::identity(3).to_dense()), vec![1, 1, 1]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 4]]), vec![2, 4]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<u64>::new());
        assert_eq!(factors(&[vec![6, 4], vec![4, 6]]), vec![2, 10]);
        let z = IntMatrix::zeros(0, 3);
        assert_eq!(smith_normal_form(&z).rank, 0);
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        let big = i64::MAX / 3;
        let m = IntMatrix::from_dense(&[vec![big, big - 1], vec![big - 2, big - 7]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf, smith_normal_form_bigint(&m));
        // |det| = |big*(big-7) - (big-1)(big-2)| = |-4 big - 2|
        let det = BigUint::from(big as u64) * 4u32 + 2u32;
        assert_eq!(&snf.factors[0] * &snf.factors[1], det);
    }

    /// Oracle: determinantal divisors by cofactor expansion for 3x3.
    fn det3(m: &[Vec<i64>]) -> i64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    fn gcd_i(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd_i(b, a % b) }
    }

    proptest! {
        #[test]
        fn matches_determinantal_divisors(v in proptest::collection::vec(-9i64..10, 9)) {
            let m: Vec<Vec<i64>> = v.chunks(3).map(<[i64]>::to_vec).collect();
            let snf = smith_normal_form(&IntMatrix::from_dense(&m));
            let d1 = v.iter().fold(0, |g, &x| gcd_i(g, x));
            let mut d2 = 0;
            for r in 0..3 { for r2 in r+1..3 { for c in 0..3 { for c2 in c+1..3 {
                d2 = gcd_i(d2, m[r][c] * m[r2][c2] - m[r][c2] * m[r2][c]);
            }}}}
            let d3 = det3(&m).abs();
            let f: Vec<i64> = snf.factors.iter().map(|d| i64::try_from(d.clone()).unwrap()).collect();
            let expected_rank = [d1, d2, d3].iter().filter(|&&d| d != 0).count();
            prop_assert_eq!(snf.rank, expected_rank);
            if expected_rank >= 1 { prop_assert_eq!(f[0], d1); }
            if expected_rank >= 2 { prop_assert_eq!(f[0] * f[1], d2); }
            if expected_rank == 3 { prop_assert_eq!(f[0] * f[1] * f[2], d3); }
            for w in f.windows(2) { prop_assert_eq!(w[1] % w[0], 0); }
            prop_assert_eq!(snf, smith_normal_form_bigint(&IntMatrix::from_dense(&m)));
        }
    }
}
