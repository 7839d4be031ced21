//! Smith normal form over the integers.
//!
//! [`snf`] is the general elimination: minimal-absolute-value pivot, ties
//! broken by lowest row index and then lowest column index, so the output is
//! reproducible. [`p_local_exponents`] is a faster path for square
//! nonsingular triangular matrices (the staircase presentations): it only
//! recovers the p-primary part, working in `Z/p^E` with `E = v_p(det) + 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::error::{Error, Result};
use crate::padic::{mod_inverse, vp_big, Prime};

/// Invariant factors `d_1 | d_2 | ... | d_r` of a matrix, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    #[serde(with = "bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// Number of columns (the source of the map).
    pub source_dim: usize,
    /// Number of rows (the target of the map).
    pub target_dim: usize,
}

impl SnfResult {
    pub fn divisibility_chain_holds(&self) -> bool {
        self.invariant_factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
            && self.invariant_factors.iter().all(|d| d.is_positive())
    }

    pub fn product(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

/// Quotient `a / b` rounded to nearest, so remainders stay at most `|b|/2`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    // r has the sign of b, so q + 1 leaves r - b on the other side of zero
    if r.abs() * 2 > b.abs() {
        q + 1
    } else {
        q
    }
}

fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            // strict comparison keeps the first hit in row-major order on ties
            if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Bring the smallest nonzero entry of row `t` / column `t` to `(t, t)`.
fn pivot_cross(a: &mut IntMatrix, t: usize) {
    let mut best = (t, t);
    let mut best_abs = a.get(t, t).abs();
    for i in t + 1..a.rows() {
        let x = a.get(i, t);
        if !x.is_zero() && (best_abs.is_zero() || x.abs() < best_abs) {
            best = (i, t);
            best_abs = x.abs();
        }
    }
    for j in t + 1..a.cols() {
        let x = a.get(t, j);
        if !x.is_zero() && (best_abs.is_zero() || x.abs() < best_abs) {
            best = (t, j);
            best_abs = x.abs();
        }
    }
    a.swap_rows(t, best.0);
    a.swap_cols(t, best.1);
}

/// Smith normal form invariant factors of `m`.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -nearest_quotient(a.get(i, t), a.get(t, t));
                a.add_row_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -nearest_quotient(a.get(t, j), a.get(t, t));
                a.add_col_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                pivot_cross(&mut a, t);
                continue;
            }
            // the pivot must divide the rest of the block
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => a.add_row_multiple(t, i, &BigInt::one()),
                None => break,
            }
        }
        factors.push(a.get(t, t).abs());
        t += 1;
    }
    SnfResult { rank: factors.len(), invariant_factors: factors, source_dim: cols, target_dim: rows }
}

/// p-parts `v_p(d_k) > 0` of the invariant factors of a square nonsingular
/// triangular matrix, sorted descending.
pub fn p_local_exponents(m: &IntMatrix, p: Prime) -> Result<Vec<u32>> {
    let det = m
        .triangular_det()
        .ok_or_else(|| Error::Precondition("p-local path needs a square triangular matrix".into()))?;
    if det.is_zero() {
        return Err(Error::Precondition("p-local path needs a nonsingular matrix".into()));
    }
    let total = vp_big(p, &det)?;
    let modulus = p.pow(total + 1);
    let n = m.rows();
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a.set(i, j, m.get(i, j).mod_floor(&modulus));
        }
    }
    let val = |x: &BigInt| if x.is_zero() { u32::MAX } else { vp_big(p, x).expect("nonzero") };
    let mut exps = Vec::with_capacity(n);
    for t in 0..n {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in t..n {
            for j in t..n {
                let v = val(a.get(i, j));
                if v != u32::MAX && best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((pi, pj, k)) = best else {
            return Err(Error::Precondition("valuation overflowed the working modulus".into()));
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        let pk = p.pow(k);
        let unit = a.get(t, t) / &pk;
        let unit_inv = mod_inverse(&unit, &modulus).expect("unit mod p^E");
        for i in t + 1..n {
            if a.get(i, t).is_zero() {
                continue;
            }
            let q = -(a.get(i, t) / &pk) * &unit_inv;
            a.add_row_multiple(i, t, &q);
            for j in t..n {
                let r = a.get(i, j).mod_floor(&modulus);
                a.set(i, j, r);
            }
        }
        for j in t + 1..n {
            a.set(t, j, 0);
        }
        if k > 0 {
            exps.push(k);
        }
    }
    exps.sort_unstable_by(|x, y| y.cmp(x));
    Ok(exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn nearest_quotient_shrinks_remainder() {
        for a in -40i64..=40 {
            for b in [-7i64, -4, -1, 1, 4, 7] {
                let q = nearest_quotient(&a.into(), &b.into());
                let r = BigInt::from(a) - q * b;
                assert!(r.abs() * 2 <= BigInt::from(b).abs(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn negative_entries_terminate() {
        let r = snf(&m(&[vec![-6, 4], vec![10, -14]]));
        let det: i64 = (-6 * -14 - 4 * 10i64).abs();
        assert_eq!(r.product(), BigInt::from(det));
        assert!(r.divisibility_chain_holds());
    }

    fn factors(r: &SnfResult) -> Vec<i64> {
        r.invariant_factors.iter().map(|d| d.try_into().unwrap()).collect()
    }

    #[test]
    fn known_forms() {
        for p in [3i64, 5, 7, 11] {
            let r = snf(&m(&[vec![p, 2], vec![0, p]]));
            assert_eq!(factors(&r), vec![1, p * p]);
        }
        assert_eq!(factors(&snf(&IntMatrix::identity(4))), vec![1, 1, 1, 1]);
        assert_eq!(factors(&snf(&m(&[vec![3, 0], vec![1, 9]]))), vec![1, 27]);
        assert_eq!(factors(&snf(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]))), vec![2, 6, 12]);
    }

    #[test]
    fn degenerate_inputs() {
        let empty = snf(&IntMatrix::zeros(0, 0));
        assert!(empty.invariant_factors.is_empty());
        let z = snf(&IntMatrix::zeros(2, 3));
        assert_eq!(z.rank, 0);
        assert_eq!((z.target_dim, z.source_dim), (2, 3));
        let r = snf(&m(&[vec![0, 0], vec![0, 6], vec![0, 4]]));
        assert_eq!(factors(&r), vec![2]);
    }

    #[test]
    fn divisibility_is_restored() {
        // diag(2, 3) is not in normal form; its SNF is diag(1, 6)
        let r = snf(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(factors(&r), vec![1, 6]);
        assert!(r.divisibility_chain_holds());
    }

    #[test]
    fn p_local_matches_general_on_triangular() {
        let p = Prime::new(3).unwrap();
        let a = m(&[vec![3, 0, 0], vec![1, 9, 0], vec![0, 3, 9]]);
        let general: Vec<u32> = snf(&a)
            .invariant_factors
            .iter()
            .map(|d| vp_big(p, d).unwrap())
            .filter(|&e| e > 0)
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect();
        assert_eq!(p_local_exponents(&a, p).unwrap(), general);
        assert!(p_local_exponents(&m(&[vec![1, 2], vec![3, 4]]), p).is_err());
        assert!(p_local_exponents(&m(&[vec![0, 0], vec![1, 4]]), p).is_err());
    }
}
