//! Homology of a segment `C_{i+1} -> C_i -> C_{i-1}` of a chain complex of
//! free modules.

use super::{snf, IntMatrix, ModuleShape};
use crate::error::{Error, Result};
use crate::padic::Prime;

/// `ker(d_out) / im(d_in)` at a free module of rank `dim`, localized at p.
///
/// `d_in: C_{i+1} -> C_i` is `dim x _`, `d_out: C_i -> C_{i-1}` is `_ x dim`.
/// The kernel of `d_out` is a direct summand, so the torsion of the homology
/// is the torsion of `coker(d_in)`.
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix, dim: usize, p: Prime) -> Result<ModuleShape> {
    if d_in.rows() != dim || d_out.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "differentials {}x{} and {}x{} around a module of rank {dim}",
            d_in.rows(),
            d_in.cols(),
            d_out.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::Precondition("consecutive differentials do not compose to zero".into()));
    }
    let incoming = snf(d_in);
    let outgoing = snf(d_out);
    let shape = super::shape_from_snf(&incoming, p);
    Ok(ModuleShape::new(shape.torsion_exponents, dim - outgoing.rank - incoming.rank, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_homology() {
        let p = Prime::new(3).unwrap();
        // Z --3--> Z --0--> Z : homology at the middle is Z/3
        let d_in = IntMatrix::from_rows(&[vec![3]]).unwrap();
        let d_out = IntMatrix::zeros(1, 1);
        assert_eq!(homology_at(&d_in, &d_out, 1, p).unwrap(), ModuleShape::torsion([1]));
        // Z --0--> Z --3--> Z : kernel is zero
        assert_eq!(homology_at(&d_out, &d_in, 1, p).unwrap(), ModuleShape::trivial());
        // Z^2 --0--> Z^2 --0--> : free of rank 2
        let z = IntMatrix::zeros(2, 2);
        assert_eq!(homology_at(&z, &z, 2, p).unwrap(), ModuleShape::new([], 2, 0));
        assert!(homology_at(&d_in, &d_in, 1, p).is_err());
        assert!(homology_at(&z, &d_in, 2, p).is_err());
    }
}
