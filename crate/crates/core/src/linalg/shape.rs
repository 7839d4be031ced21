use std::fmt;

use serde::{Deserialize, Serialize};

use super::{snf, IntMatrix, SnfResult};
use crate::padic::{vp_big, vp_u64, Prime};

/// Isomorphism type of a module over a p-torsion-free `Z_(p)`-algebra `R`:
/// `R^free x (R^)^complete x R/p^e_1 x R/p^e_2 x ...`.
///
/// Torsion exponents are kept sorted descending, and trivial factors
/// (`R/n` with `n` prime to p) are dropped. A `truncated` shape stands for an
/// infinite product of which only the factors `R/n` with `n <= n_max` are
/// listed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ModuleShape {
    pub torsion_exponents: Vec<u32>,
    pub free_rank: usize,
    pub complete_rank: usize,
    pub truncated: bool,
    pub n_max: Option<u64>,
}

impl ModuleShape {
    pub fn new(torsion: impl IntoIterator<Item = u32>, free_rank: usize, complete_rank: usize) -> Self {
        let mut torsion_exponents: Vec<u32> = torsion.into_iter().filter(|&e| e > 0).collect();
        torsion_exponents.sort_unstable_by(|a, b| b.cmp(a));
        ModuleShape { torsion_exponents, free_rank, complete_rank, truncated: false, n_max: None }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn torsion(torsion: impl IntoIterator<Item = u32>) -> Self {
        Self::new(torsion, 0, 0)
    }

    /// `R/n_1 x R/n_2 x ...` for positive integers `n_k`.
    pub fn from_moduli(p: Prime, moduli: impl IntoIterator<Item = u64>) -> Self {
        Self::torsion(moduli.into_iter().map(|n| vp_u64(p, n)))
    }

    pub fn with_truncation(mut self, n_max: u64) -> Self {
        self.truncated = true;
        self.n_max = Some(n_max);
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion_exponents.is_empty() && self.free_rank == 0 && self.complete_rank == 0
    }

    /// Length of the torsion part, `sum e_k`.
    pub fn p_length(&self) -> u64 {
        self.torsion_exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn largest_exponent(&self) -> Option<u32> {
        self.torsion_exponents.first().copied()
    }

    /// The same shape with one copy of the largest torsion exponent removed.
    pub fn without_largest(&self) -> Self {
        let mut out = self.clone();
        if !out.torsion_exponents.is_empty() {
            out.torsion_exponents.remove(0);
        }
        out
    }

    /// Only the invariants, so that shapes from different truncations compare.
    pub fn same_invariants(&self, other: &ModuleShape) -> bool {
        self.torsion_exponents == other.torsion_exponents
            && self.free_rank == other.free_rank
            && self.complete_rank == other.complete_rank
    }
}

impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() && !self.truncated {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for _ in 0..self.complete_rank {
            parts.push("R^".to_string());
        }
        for _ in 0..self.free_rank {
            parts.push("R".to_string());
        }
        for &e in &self.torsion_exponents {
            parts.push(if e == 1 { "R/p".into() } else { format!("R/p^{e}") });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" x "))?;
        if let (true, Some(n)) = (self.truncated, self.n_max) {
            write!(f, " x ... (factors R/n listed for n <= {n})")?;
        }
        Ok(())
    }
}

/// Cokernel of `m` (columns are relations in `Z^rows`) localized at p.
pub fn cokernel_shape(m: &IntMatrix, p: Prime) -> ModuleShape {
    shape_from_snf(&snf(m), p)
}

pub fn shape_from_snf(r: &SnfResult, p: Prime) -> ModuleShape {
    let torsion = r.invariant_factors.iter().map(|d| vp_big(p, d).expect("invariant factors are nonzero"));
    ModuleShape::new(torsion, r.target_dim - r.rank, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        let z = cokernel_shape(&IntMatrix::zeros(2, 2), p3());
        assert_eq!(z, ModuleShape::new([], 2, 0));
        let a = IntMatrix::from_rows(&[vec![3, 0], vec![1, 9]]).unwrap();
        assert_eq!(cokernel_shape(&a, p3()), ModuleShape::torsion([3]));
        for q in [3u64, 5, 7] {
            let p = Prime::new(q).unwrap();
            let m = IntMatrix::from_rows(&[vec![q as i64, 2], vec![0, q as i64]]).unwrap();
            assert_eq!(cokernel_shape(&m, p), ModuleShape::torsion([2]));
        }
    }

    #[test]
    fn canonical_form() {
        let s = ModuleShape::from_moduli(p3(), [1, 3, 5, 9, 15, 21, 27]);
        assert_eq!(s.torsion_exponents, vec![3, 2, 1, 1, 1]);
        assert_eq!(s.p_length(), 8);
        assert_eq!(s.without_largest().torsion_exponents, vec![2, 1, 1, 1]);
        assert_eq!(ModuleShape::torsion([0, 0]), ModuleShape::trivial());
        assert_eq!(ModuleShape::trivial().to_string(), "0");
        assert_eq!(ModuleShape::torsion([2, 1]).to_string(), "R/p^2 x R/p");
    }

    #[test]
    fn prime_to_p_parts_dropped() {
        // coker diag(2, 5, 9) over Z_(3) is R/9
        let m = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 5, 0], vec![0, 0, 9]]).unwrap();
        assert_eq!(cokernel_shape(&m, p3()), ModuleShape::torsion([2]));
    }
}
