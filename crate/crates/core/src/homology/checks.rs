//! Desk-scale consistency checks: length recursion, stabilization of the
//! cyclic tower towards `HP`, stabilization of the truncated negative cyclic
//! presentation, and the minimality of `a_i`.

use serde::{Deserialize, Serialize};

use super::compute::{hc_neg_closed_form, hc_oracle, hochschild_oracle, hp};
use super::presentation::negative_matrix;
use crate::error::{bad_index, Error, Result};
use crate::gaps::{g_for_valuation, in_z1_unchecked, in_z2_unchecked};
use crate::linalg::cokernel_shape;
use crate::padic::{a_unchecked, b_unchecked, vp_u64, Prime};
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnesReport {
    pub p: u64,
    pub i_max: i64,
    /// `(i, p-length of HC_i)` for even `0 <= i <= i_max`.
    pub lengths: Vec<(i64, u64)>,
    /// Even degrees where `len HC_i != len HC_{i-2} + 2`.
    pub failures: Vec<i64>,
    /// Even positive degrees where `len HH_i != 2`.
    pub hochschild_failures: Vec<i64>,
    pub passed: bool,
}

/// `len HC_i = len HC_{i-2} + 2` for even `2 <= i <= i_max`, so `len HC_i = i + 1`.
pub fn connes_length_check(p: Prime, i_max: i64, exec: Execution) -> Result<ConnesReport> {
    if i_max % 2 != 0 {
        return Err(bad_index("length check needs an even bound", i_max));
    }
    let degrees: Vec<i64> = (0..=i_max.max(-1)).step_by(2).collect();
    let computed = par::map(exec, degrees, |i| -> Result<(i64, u64, u64)> {
        let hc = hc_oracle(p, i)?.shape.p_length();
        let hh = hochschild_oracle(p, i)?.shape.p_length();
        Ok((i, hc, hh))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let lengths: Vec<(i64, u64)> = computed.iter().map(|&(i, hc, _)| (i, hc)).collect();
    let failures = lengths.windows(2).filter(|w| w[1].1 != w[0].1 + 2).map(|w| w[1].0).collect::<Vec<_>>();
    let hochschild_failures =
        computed.iter().filter(|&&(i, _, hh)| i > 0 && hh != 2).map(|&(i, _, _)| i).collect::<Vec<_>>();
    let base_ok = lengths.first().is_none_or(|&(_, l)| l == 1);
    Ok(ConnesReport {
        p: p.get(),
        i_max,
        passed: base_ok && failures.is_empty() && hochschild_failures.is_empty(),
        lengths,
        failures,
        hochschild_failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub p: u64,
    pub n_max: u64,
    pub i_max: i64,
    /// HC degrees `i` with `i - 1` in `Z1`, ascending.
    pub tested_degrees: Vec<i64>,
    /// Largest torsion exponent of `HC_i` at each tested degree.
    pub heads: Vec<u32>,
    /// Degrees where `HC_i` below its head differs from `HP_0` restricted to `n <= i - 1`.
    pub tail_mismatches: Vec<i64>,
    /// Degrees where the head is not `a_{i-1} + 2`.
    pub head_mismatches: Vec<i64>,
    /// Heads nondecreasing along the tested degrees.
    pub monotone: bool,
    pub passed: bool,
}

/// Along even `i <= i_max` with `i - 1` in `Z1`, `HC_i` is `R/p^(a_{i-1}+2)`
/// times the part of `HP_0` with `n <= i - 1`, and the head grows.
pub fn hp_stabilization_check(p: Prime, n_max: u64, i_max: i64, exec: Execution) -> Result<StabilizationReport> {
    let degrees: Vec<i64> = (2..=i_max.max(0)).step_by(2).filter(|&i| in_z1_unchecked(p, (i - 1) as u64)).collect();
    let rows = par::map(exec, degrees.clone(), |i| -> Result<(u32, bool, bool)> {
        let below = (i - 1) as u64;
        let shape = hc_oracle(p, i)?.shape;
        let head = shape.largest_exponent().unwrap_or(0);
        let limit = hp(p, 0, below).shape;
        let tail_ok = shape.without_largest().torsion_exponents == limit.torsion_exponents;
        Ok((head, tail_ok, head == a_unchecked(p, below) + 2))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let heads: Vec<u32> = rows.iter().map(|r| r.0).collect();
    let tail_mismatches = degrees.iter().zip(&rows).filter(|(_, r)| !r.1).map(|(&i, _)| i).collect::<Vec<_>>();
    let head_mismatches = degrees.iter().zip(&rows).filter(|(_, r)| !r.2).map(|(&i, _)| i).collect::<Vec<_>>();
    let monotone = heads.windows(2).all(|w| w[0] <= w[1]);
    Ok(StabilizationReport {
        p: p.get(),
        n_max,
        i_max,
        passed: tail_mismatches.is_empty() && head_mismatches.is_empty() && monotone,
        tested_degrees: degrees,
        heads,
        tail_mismatches,
        head_mismatches,
        monotone,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationProbeReport {
    pub p: u64,
    pub m: i64,
    pub size: usize,
    /// Torsion of the `K`- and `(K+1)`-truncations.
    pub torsion_k: Vec<u32>,
    pub torsion_k1: Vec<u32>,
    /// Exponents below the head present in both truncations (multiset intersection).
    pub stabilized: Vec<u32>,
    /// Largest odd `L` with `{v_p(n) : m-1 <= n <= L}` equal to `stabilized`.
    pub matched_bound: Option<u64>,
    /// `(m + 2K - 3) - L`: how far the last subdiagonal entry of the
    /// `K`-truncation runs ahead of the stabilized range.
    pub offset: Option<i64>,
    pub vacuous: bool,
    pub passed: bool,
}

fn multiset_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    // both sorted descending
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Greater => i += 1,
            std::cmp::Ordering::Less => j += 1,
        }
    }
    out
}

/// Compare the `K`- and `(K+1)`-truncations of the negative cyclic
/// presentation in degree `m`. The exponents below the head that agree
/// between them must be exactly the closed-form factors `R/n` for
/// `m - 1 <= n <= L`, for some `L`.
pub fn hc_neg_truncation_probe(p: Prime, m: i64, size: usize) -> Result<TruncationProbeReport> {
    if m < 2 || m % 2 != 0 {
        return Err(bad_index("truncation probe needs an even degree >= 2", m));
    }
    let first = (m - 1) as u64;
    if !in_z2_unchecked(p, first) {
        return Err(Error::NotInZ2(first));
    }
    let torsion_k = cokernel_shape(&negative_matrix(p, m, size)?.matrix, p).torsion_exponents;
    let torsion_k1 = cokernel_shape(&negative_matrix(p, m, size + 1)?.matrix, p).torsion_exponents;
    let tail = |t: &[u32]| t.get(1..).unwrap_or_default().to_vec();
    let stabilized = multiset_intersection(&tail(&torsion_k), &tail(&torsion_k1));

    let boundary = m as u64 + 2 * size as u64 - 1;
    let mut prefix: Vec<u32> = Vec::new();
    let mut matched_bound = None;
    for n in (first..=boundary).step_by(2) {
        let v = vp_u64(p, n);
        if v > 0 {
            let at = prefix.partition_point(|&e| e > v);
            prefix.insert(at, v);
        }
        if prefix.len() > stabilized.len() {
            break;
        }
        if prefix == stabilized {
            matched_bound = Some(n);
        }
    }
    // the closed form listed up to L must be the stabilized part
    let closed_ok = matched_bound
        .is_some_and(|l| hc_neg_closed_form(p, m, l).result().is_some_and(|r| r.shape.torsion_exponents == stabilized));
    let last_sub = m + 2 * size as i64 - 3;
    Ok(TruncationProbeReport {
        p: p.get(),
        m,
        size,
        offset: matched_bound.map(|l| last_sub - l as i64),
        vacuous: stabilized.is_empty(),
        passed: closed_ok,
        torsion_k,
        torsion_k1,
        stabilized,
        matched_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AMinimalityReport {
    pub p: u64,
    pub i: u64,
    pub horizon: u64,
    /// Minimal odd `n` in `(i, i + horizon]` with `a_i > a_n`.
    pub witness: Option<u64>,
    pub witness_valuation: Option<u32>,
    pub passed: bool,
}

/// If some odd `n > i` has `a_n < a_i`, the least such `n` has
/// `v_p(n) >= 3`, `b_{n-i} < v_p(n)` and `n - i <= g(n)`.
pub fn a_minimality_probe(p: Prime, i: u64, horizon: u64) -> Result<AMinimalityReport> {
    if i.is_multiple_of(2) || vp_u64(p, i) > 0 {
        return Err(bad_index("minimality probe needs an odd index prime to p", i as i64));
    }
    let ai = a_unchecked(p, i);
    let witness = (i + 2..=i + horizon).step_by(2).find(|&n| a_unchecked(p, n) < ai);
    let (passed, witness_valuation) = match witness {
        None => (true, None),
        Some(n) => {
            let v = vp_u64(p, n);
            let ok = v >= 3 && b_unchecked(p, n - i) < v && n - i <= g_for_valuation(p, v);
            (ok, Some(v))
        }
    };
    Ok(AMinimalityReport { p: p.get(), i, horizon, witness, witness_valuation, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn connes_examples() {
        let r = connes_length_check(p(3), 6, Execution::Sequential).unwrap();
        assert!(r.passed);
        assert_eq!(r.lengths, vec![(0, 1), (2, 3), (4, 5), (6, 7)]);
        assert!(connes_length_check(p(5), 0, Execution::Parallel).unwrap().passed);
        assert!(connes_length_check(p(3), 3, Execution::Sequential).is_err());
    }

    #[test]
    fn stabilization_examples() {
        let r = hp_stabilization_check(p(3), 13, 14, Execution::Sequential).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(!r.tested_degrees.is_empty());
        let r = hp_stabilization_check(p(3), 1, 2, Execution::Sequential).unwrap();
        assert!(r.passed);
        assert!(hp_stabilization_check(p(5), 25, 26, Execution::Parallel).unwrap().passed);
    }

    #[test]
    fn truncation_probe_examples() {
        let r = hc_neg_truncation_probe(p(3), 6, 6).unwrap();
        assert!(r.passed);
        assert_eq!(r.stabilized, vec![2, 1]);
        let r = hc_neg_truncation_probe(p(3), 2, 1).unwrap();
        assert!(r.vacuous && r.passed);
        assert_eq!(hc_neg_truncation_probe(p(5), 6, 8), Err(Error::NotInZ2(5)));
        assert!(hc_neg_truncation_probe(p(3), 5, 4).is_err());
    }

    #[test]
    fn multiset_intersection_sorted() {
        assert_eq!(multiset_intersection(&[3, 2, 2, 1], &[2, 1, 1]), vec![2, 1]);
        assert_eq!(multiset_intersection(&[], &[1]), Vec::<u32>::new());
    }

    #[test]
    fn minimality_examples() {
        for (q, i, h) in [(3, 5, 200), (3, 29, 200), (5, 7, 300)] {
            let r = a_minimality_probe(p(q), i, h).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert!(a_minimality_probe(p(3), 9, 10).is_err());
    }
}
