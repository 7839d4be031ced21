//! The colimit description of the staircase: the structure maps
//! `phi_{j,i}: R_j -> M_i = R x R/1 x R/3 x ... x R/i`, the comparison
//! `N_i = coker(p^2 phi_{i,i})`, and the generators of the kernels `K_i`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::compute::hc_oracle;
use super::indexing::n_to_hc_degree;
use crate::error::{bad_index, Error, Result};
use crate::gaps::in_z2_unchecked;
use crate::linalg::{cokernel_shape, submodule_equal_mod, IntMatrix, ModuleShape};
use crate::padic::{a_unchecked, seq_a, seq_b_upto, vp_u64, PadicRational, Prime};

/// Representative `(c_{j,-1}, c_{j,1}, c_{j,3}, ..., c_{j,i})` of `phi_{j,i}(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffVector {
    pub j: u64,
    /// `c_{j,-1} = A_j`.
    pub head: PadicRational,
    /// `(n, c_{j,n})` for odd `n` from 1 to `i`; `c_{j,n}` is read in `R/n`.
    pub components: Vec<(u64, PadicRational)>,
}

impl CoeffVector {
    pub fn component(&self, n: u64) -> Option<&PadicRational> {
        self.components.iter().find(|(m, _)| *m == n).map(|(_, c)| c)
    }

    /// Whether the component at `n` is nonzero in `R/n`.
    pub fn nonzero_in_quotient(&self, p: Prime, n: u64) -> bool {
        match self.component(n) {
            Some(c) if !c.is_zero() => {
                let v = c.valuation().expect("nonzero") as u32;
                v < vp_u64(p, n)
            }
            _ => false,
        }
    }
}

/// `phi_{j,i}(1)` for odd `1 <= j <= i`: head `A_j`, component `B_{j-n}` at
/// odd `n <= j`, zero at `j < n <= i`.
pub fn phi_coeffs(p: Prime, j: i64, i: i64) -> Result<CoeffVector> {
    if j < 1 || j % 2 == 0 {
        return Err(bad_index("phi_coeffs needs an odd positive j", j));
    }
    if i < j || i % 2 == 0 {
        return Err(bad_index("phi_coeffs needs an odd i >= j", i));
    }
    let (j, i) = (j as u64, i as u64);
    let bs = seq_b_upto(p, j - 1);
    let components = (1..=i)
        .step_by(2)
        .map(|n| {
            let c = if n > j { PadicRational::zero(p) } else { bs[((j - n) / 2) as usize].clone() };
            (n, c)
        })
        .collect();
    Ok(CoeffVector { j, head: seq_a(p, j as i64)?, components })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiReport {
    pub i: u64,
    /// Cokernel of `p^2 phi_{i,i}` on `M_i`.
    pub colimit_shape: ModuleShape,
    /// `HC_{i+1}` from the cyclic presentation.
    pub oracle_shape: ModuleShape,
    pub agree: bool,
}

/// Present `N_i` as `M_i / (p^2 phi_{i,i}(1))` and compare with `HC_{i+1}`.
///
/// Rows are `e_{-1}, e_1, e_3, ..., e_i`; columns are the relations `n e_n`
/// and `u p^2 phi_{i,i}(1)` where `u` clears the (prime-to-p) denominators.
pub fn verify_ni_equivalence(p: Prime, i: i64) -> Result<NiReport> {
    let phi = phi_coeffs(p, i, i)?;
    let i = i as u64;
    let dim = 1 + phi.components.len();
    let mut entries: Vec<&PadicRational> = vec![&phi.head];
    entries.extend(phi.components.iter().map(|(_, c)| c));
    let unit = entries.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.unit_denominator()));
    let p2 = p.big() * p.big();
    let relation: Vec<BigInt> = entries
        .iter()
        .map(|c| {
            let scaled = c.scale(&unit * &p2);
            debug_assert!(scaled.denominator().is_one());
            scaled.numerator().clone()
        })
        .collect();
    let mut columns = Vec::with_capacity(dim);
    for (k, (n, _)) in phi.components.iter().enumerate() {
        let mut col = vec![BigInt::zero(); dim];
        col[k + 1] = BigInt::from(*n);
        columns.push(col);
    }
    columns.push(relation);
    let matrix = IntMatrix::from_columns(dim, &columns)?;
    let colimit_shape = cokernel_shape(&matrix, p);
    let oracle_shape = hc_oracle(p, n_to_hc_degree(i as i64))?.shape;
    Ok(NiReport { i, agree: colimit_shape == oracle_shape, colimit_shape, oracle_shape })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelGeneratorParams {
    /// Even `J`: generators `psi_i, psi_{i+2}, ..., psi_{i+J}`.
    pub span: u64,
    /// The completed coordinate `e_{-1}` is read modulo `p^t_exponent`.
    pub t_exponent: u32,
    /// Coordinates `e_n` are kept for odd `n <= n_max`.
    pub n_max: u64,
}

/// Default truncation `T = a_i + 6`, `n_max = 4i + 1`.
pub fn kernel_generator_defaults(p: Prime, i: u64, span: u64) -> KernelGeneratorParams {
    KernelGeneratorParams { span, t_exponent: a_unchecked(p, i) + 6, n_max: 4 * i + 1 }
}

/// Check, in the truncation `Z/p^T x prod_{n <= n_max} R/n`, that
/// `psi_i(1), ..., psi_{i+J}(1)` and `A_i e_{-1}, e_i, e_{i+2}, ..., e_{i+J}`
/// generate the same submodule.
pub fn verify_kernel_generators(p: Prime, i: i64, params: KernelGeneratorParams) -> Result<bool> {
    if i < 1 || i % 2 == 0 {
        return Err(bad_index("kernel generators need an odd positive index", i));
    }
    let iu = i as u64;
    if !in_z2_unchecked(p, iu) {
        return Err(Error::NotInZ2(iu));
    }
    if params.span % 2 == 1 {
        return Err(bad_index("generator span J must be even", params.span as i64));
    }
    // coordinates: e_{-1}, then the nontrivial e_n
    let coords: Vec<(u64, u32)> =
        (1..=params.n_max).step_by(2).map(|n| (n, vp_u64(p, n))).filter(|&(_, v)| v > 0).collect();
    let mut moduli = vec![p.pow(params.t_exponent)];
    moduli.extend(coords.iter().map(|&(_, v)| p.pow(v)));
    let dim = moduli.len();

    let top = iu + params.span;
    let psi: Vec<Vec<BigInt>> = (iu..=top)
        .step_by(2)
        .map(|j| {
            let phi = phi_coeffs(p, j as i64, (top.max(params.n_max) | 1) as i64)?;
            let mut v = Vec::with_capacity(dim);
            v.push(phi.head.residue(&moduli[0])?);
            for (k, &(n, _)) in coords.iter().enumerate() {
                let c = phi.component(n).cloned().unwrap_or_else(|| PadicRational::zero(p));
                v.push(c.residue(&moduli[k + 1])?);
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;

    let mut target = Vec::new();
    let mut head = vec![BigInt::zero(); dim];
    head[0] = seq_a(p, i)?.residue(&moduli[0])?;
    target.push(head);
    for n in (iu..=top).step_by(2) {
        if let Some(k) = coords.iter().position(|&(m, _)| m == n) {
            let mut e = vec![BigInt::zero(); dim];
            e[k + 1] = BigInt::one();
            target.push(e);
        }
    }
    submodule_equal_mod(&psi, &target, &moduli)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaps::g_of;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn phi_examples() {
        for q in [3, 5, 7] {
            let v = phi_coeffs(p(q), 1, 1).unwrap();
            assert_eq!(v.head.to_string(), q.to_string());
            assert_eq!(v.components, vec![(1, PadicRational::integer(p(q), 1))]);
        }
        let v = phi_coeffs(p(3), 3, 5).unwrap();
        assert_eq!(v.head.to_string(), "9");
        assert_eq!(v.component(1).unwrap().to_string(), "9/2");
        assert!(!v.nonzero_in_quotient(p(3), 1));
        assert_eq!(v.component(3).unwrap().to_string(), "1");
        assert!(v.nonzero_in_quotient(p(3), 3));
        assert!(v.component(5).unwrap().is_zero());
        let v = phi_coeffs(p(3), 5, 5).unwrap();
        assert_eq!(v.head.valuation(), Some(4));
        assert_eq!(v.component(5).unwrap().to_string(), "1");
        assert!(phi_coeffs(p(3), 5, 3).is_err());
        assert!(phi_coeffs(p(3), 2, 3).is_err());
    }

    #[test]
    fn nonzero_entries_sit_inside_gap_windows() {
        for q in [3u64, 5] {
            let pr = p(q);
            for j in (1..=121).step_by(2) {
                let v = phi_coeffs(pr, j, j).unwrap();
                for &(n, _) in &v.components {
                    if n < j as u64 && v.nonzero_in_quotient(pr, n) {
                        assert!(j as u64 - n <= g_of(pr, n as i64).unwrap(), "p={q} j={j} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn ni_examples() {
        let r = verify_ni_equivalence(p(3), 1).unwrap();
        assert!(r.agree);
        assert_eq!(r.colimit_shape, ModuleShape::torsion([3]));
        let r = verify_ni_equivalence(p(3), 5).unwrap();
        assert!(r.agree);
        assert_eq!(r.colimit_shape, ModuleShape::torsion([6, 1]));
        assert!(verify_ni_equivalence(p(5), 7).unwrap().agree);
        assert!(verify_ni_equivalence(p(3), 4).is_err());
    }

    #[test]
    fn kernel_generator_examples() {
        let base = KernelGeneratorParams { span: 0, t_exponent: 8, n_max: 5 };
        assert!(verify_kernel_generators(p(3), 5, base).unwrap());
        let wide = KernelGeneratorParams { span: 6, t_exponent: 12, n_max: 13 };
        assert!(verify_kernel_generators(p(3), 5, wide).unwrap());
        assert_eq!(verify_kernel_generators(p(3), 25, base), Err(Error::NotInZ2(25)));
        assert!(verify_kernel_generators(p(3), 5, KernelGeneratorParams { span: 3, ..base }).is_err());
    }
}
