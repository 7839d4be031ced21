use super::indexing::hc_degree_to_n;
use super::presentation::{cyclic_matrix, hochschild_differential, hochschild_rank, periodic_matrix};
use super::{Coverage, HomologyResult, Method, Theory};
use crate::error::{bad_index, Result};
use crate::gaps::{in_z1_unchecked, in_z2_unchecked};
use crate::linalg::{homology_at, shape_from_snf, snf, IntMatrix, ModuleShape};
use crate::padic::{a_unchecked, vp_u64, Prime};

/// `R/1 x R/3 x ... x R/hi` restricted to odd `n` in `[lo, hi]`.
pub(crate) fn odd_factor_exponents(p: Prime, lo: u64, hi: u64) -> impl Iterator<Item = u32> {
    let lo = lo.max(1) | 1;
    (lo..=hi).step_by(2).map(move |n| vp_u64(p, n))
}

/// `HH_i` from the closed form: `R/p` in degree 0, `R/p^2` in positive even
/// degrees, zero otherwise.
pub fn hochschild(p: Prime, i: i64) -> Result<HomologyResult> {
    if i < 0 {
        return Err(bad_index("Hochschild degree must be nonnegative", i));
    }
    let _ = p;
    let shape = match i {
        0 => ModuleShape::torsion([1]),
        i if i % 2 == 0 => ModuleShape::torsion([2]),
        _ => ModuleShape::trivial(),
    };
    Ok(HomologyResult::new(Theory::Hochschild, i, shape, Method::ClosedForm))
}

/// `HH_i` from the homology of the explicit total complex.
pub fn hochschild_oracle(p: Prime, i: i64) -> Result<HomologyResult> {
    if i < 0 {
        return Err(bad_index("Hochschild degree must be nonnegative", i));
    }
    let d_in = hochschild_differential(p, i + 1).matrix;
    let d_out = if i == 0 { IntMatrix::zeros(0, 1) } else { hochschild_differential(p, i).matrix };
    let shape = homology_at(&d_in, &d_out, hochschild_rank(i), p)?;
    let mut r = HomologyResult::new(Theory::Hochschild, i, shape, Method::Oracle);
    r.certificate = Some(snf(&d_in));
    Ok(r)
}

/// `HC_i` as the cokernel of the cyclic presentation.
pub fn hc_oracle(p: Prime, i: i64) -> Result<HomologyResult> {
    if i < 0 {
        return Err(bad_index("cyclic homology degree must be nonnegative", i));
    }
    if i % 2 == 1 {
        return Ok(HomologyResult::new(Theory::Cyclic, i, ModuleShape::trivial(), Method::Oracle));
    }
    let matrix = if i == 0 { IntMatrix::from_rows(&[vec![p.big()]])? } else { cyclic_matrix(p, i)?.matrix };
    let cert = snf(&matrix);
    let mut r = HomologyResult::new(Theory::Cyclic, i, shape_from_snf(&cert, p), Method::Oracle);
    r.certificate = Some(cert);
    Ok(r)
}

/// `HC_i` for even `i` from the closed forms.
///
/// With `i - 1` in `Z1`: `R/p^(a_{i-1}+2) x R/1 x R/3 x ... x R/(i-1)`.
/// Otherwise, with `i + 1` in `Z2`: `R/p^(a_{i+1}) x R/1 x ... x R/(i-1)`.
pub fn hc_closed_form(p: Prime, i: i64) -> Result<Coverage> {
    if i < 0 || i % 2 != 0 {
        return Err(bad_index("closed form for HC needs an even nonnegative degree", i));
    }
    if i == 0 {
        let r = HomologyResult::new(Theory::Cyclic, 0, ModuleShape::torsion([1]), Method::ClosedForm);
        return Ok(Coverage::Covered(r));
    }
    let below = hc_degree_to_n(i) as u64;
    let above = below + 2;
    let head = if in_z1_unchecked(p, below) {
        a_unchecked(p, below) + 2
    } else if in_z2_unchecked(p, above) {
        a_unchecked(p, above)
    } else {
        return Ok(Coverage::NotCovered {
            theory: Theory::Cyclic,
            degree: i,
            reason: format!("{below} is not in Z1 and {above} is not in Z2"),
        });
    };
    let shape = ModuleShape::torsion(std::iter::once(head).chain(odd_factor_exponents(p, 1, below)));
    Ok(Coverage::Covered(HomologyResult::new(Theory::Cyclic, i, shape, Method::ClosedForm)))
}

/// `HP_i`: zero in odd degrees, `R^ x R/1 x R/3 x ...` in even degrees,
/// listed up to `n_max`.
pub fn hp(p: Prime, i: i64, n_max: u64) -> HomologyResult {
    if i.rem_euclid(2) == 1 {
        return HomologyResult::new(Theory::Periodic, i, ModuleShape::trivial(), Method::ClosedForm);
    }
    let shape = ModuleShape::new(odd_factor_exponents(p, 1, n_max), 0, 1).with_truncation(n_max);
    HomologyResult::new(Theory::Periodic, i, shape, Method::ClosedForm)
}

/// Cokernel of the first `size` coordinates of the periodic presentation.
pub fn hp_oracle_truncation(p: Prime, size: usize) -> Result<HomologyResult> {
    let cert = snf(&periodic_matrix(p, size)?.matrix);
    let mut r = HomologyResult::new(Theory::Periodic, 0, shape_from_snf(&cert, p), Method::Oracle);
    r.certificate = Some(cert);
    Ok(r)
}

/// `HC^-_m` from the closed forms: `HP_0` for `m <= 0`, zero for odd `m`, and
/// `R^ x R/(m-1) x R/(m+1) x ...` when `m - 1` lies in `Z2`.
pub fn hc_neg_closed_form(p: Prime, m: i64, n_max: u64) -> Coverage {
    if m.rem_euclid(2) == 1 {
        let r = HomologyResult::new(Theory::NegativeCyclic, m, ModuleShape::trivial(), Method::ClosedForm);
        return Coverage::Covered(r);
    }
    if m <= 0 {
        let mut r = hp(p, 0, n_max);
        r.theory = Theory::NegativeCyclic;
        r.degree = m;
        return Coverage::Covered(r);
    }
    let first = (m - 1) as u64;
    if !in_z2_unchecked(p, first) {
        return Coverage::NotCovered {
            theory: Theory::NegativeCyclic,
            degree: m,
            reason: format!("{first} is not in Z2"),
        };
    }
    let shape = ModuleShape::new(odd_factor_exponents(p, first, n_max), 0, 1).with_truncation(n_max);
    Coverage::Covered(HomologyResult::new(Theory::NegativeCyclic, m, shape, Method::ClosedForm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn hochschild_values() {
        for q in [3, 5, 7] {
            assert_eq!(hochschild(p(q), 0).unwrap().shape, ModuleShape::torsion([1]));
            assert_eq!(hochschild(p(q), 4).unwrap().shape, ModuleShape::torsion([2]));
            assert_eq!(hochschild(p(q), 3).unwrap().shape, ModuleShape::trivial());
            for i in 0..=10 {
                assert_eq!(hochschild_oracle(p(q), i).unwrap().shape, hochschild(p(q), i).unwrap().shape);
            }
        }
        assert!(hochschild(p(3), -1).is_err());
        assert!(hochschild_oracle(p(3), -1).is_err());
    }

    #[test]
    fn hc_oracle_values() {
        assert_eq!(hc_oracle(p(3), 0).unwrap().shape, ModuleShape::torsion([1]));
        assert_eq!(hc_oracle(p(3), 2).unwrap().shape, ModuleShape::torsion([3]));
        assert_eq!(hc_oracle(p(3), 6).unwrap().shape, ModuleShape::torsion([6, 1]));
        for q in [3, 5, 7] {
            assert!(hc_oracle(p(q), 5).unwrap().shape.is_trivial());
        }
        assert!(hc_oracle(p(3), -2).is_err());
    }

    #[test]
    fn hc_closed_form_clauses() {
        let r = hc_closed_form(p(3), 6).unwrap();
        assert_eq!(r.result().unwrap().shape, ModuleShape::torsion([6, 1]));
        // 29 is excluded from Z1 but 31 is in Z2; a_31 from recursion
        let a31 = crate::padic::a_val(p(3), 31).unwrap();
        let expected = ModuleShape::torsion(std::iter::once(a31).chain(odd_factor_exponents(p(3), 1, 29)));
        let r30 = hc_closed_form(p(3), 30).unwrap();
        assert_eq!(r30.result().unwrap().shape, expected);
        assert_eq!(r30.result().unwrap().shape, hc_oracle(p(3), 30).unwrap().shape);
        assert!(!hc_closed_form(p(3), 28).unwrap().is_covered());
        assert!(hc_closed_form(p(3), 5).is_err());
    }

    #[test]
    fn hp_values() {
        let r = hp(p(3), 0, 11);
        assert_eq!(r.shape.complete_rank, 1);
        assert_eq!(r.shape.torsion_exponents, vec![2, 1]);
        assert!(r.shape.truncated);
        assert_eq!(hp(p(5), -4, 9).shape.torsion_exponents, vec![1]);
        assert!(hp(p(7), 3, 99).shape.is_trivial());
        assert!(hp(p(7), -3, 99).shape.is_trivial());
        assert_eq!(hp(p(3), 2, 11).shape, hp(p(3), -8, 11).shape);
    }

    #[test]
    fn hc_neg_values() {
        let r = hc_neg_closed_form(p(3), -2, 9);
        assert_eq!(r.result().unwrap().shape, hp(p(3), 0, 9).shape);
        let r = hc_neg_closed_form(p(3), 6, 15);
        let s = &r.result().unwrap().shape;
        assert_eq!((s.complete_rank, s.torsion_exponents.clone()), (1, vec![2, 1]));
        assert!(!hc_neg_closed_form(p(3), 26, 99).is_covered());
        assert!(hc_neg_closed_form(p(3), 7, 99).result().unwrap().shape.is_trivial());
    }
}
