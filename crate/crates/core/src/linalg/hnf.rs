//! Hermite normal form of integer lattices and submodule comparison in
//! finite products `Z/m_1 x ... x Z/m_d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows: upper echelon, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut piv_row = 0;
    for c in 0..dim {
        if piv_row >= a.len() {
            break;
        }
        loop {
            // smallest nonzero entry in column c at or below piv_row
            let best =
                (piv_row..a.len()).filter(|&r| !a[r][c].is_zero()).min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(best) = best else { break };
            a.swap(piv_row, best);
            let mut clean = true;
            for r in piv_row + 1..a.len() {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[piv_row][c]);
                let (head, tail) = a.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[piv_row]) {
                    *x -= &q * y;
                }
                clean &= a[r][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if a[piv_row][c].is_zero() {
            continue;
        }
        if a[piv_row][c].is_negative() {
            for x in a[piv_row].iter_mut() {
                *x = -x.clone();
            }
        }
        for r in 0..piv_row {
            let q = a[r][c].div_floor(&a[piv_row][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = a.split_at_mut(piv_row);
            for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        piv_row += 1;
    }
    a.truncate(piv_row);
    a
}

fn lattice(gens: &[Vec<BigInt>], moduli: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = moduli.len();
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    for (k, m) in moduli.iter().enumerate() {
        let mut e = vec![BigInt::zero(); d];
        e[k] = m.clone();
        rows.push(e);
    }
    hermite_rows(&rows, d)
}

fn validate(gens: &[Vec<BigInt>], moduli: &[BigInt]) -> Result<()> {
    if let Some(v) = gens.iter().find(|v| v.len() != moduli.len()) {
        return Err(Error::DimensionMismatch(format!(
            "generator of length {} against {} moduli",
            v.len(),
            moduli.len()
        )));
    }
    if moduli.iter().any(|m| !m.is_positive()) {
        return Err(Error::Precondition("moduli must be positive".into()));
    }
    Ok(())
}

/// Whether `gens_a` and `gens_b` generate the same submodule of
/// `Z/m_1 x ... x Z/m_d`.
///
/// Both are lifted to lattices in `Z^d` containing `m_k e_k` and compared by
/// Hermite normal form.
pub fn submodule_equal_mod(gens_a: &[Vec<BigInt>], gens_b: &[Vec<BigInt>], moduli: &[BigInt]) -> Result<bool> {
    validate(gens_a, moduli)?;
    validate(gens_b, moduli)?;
    Ok(lattice(gens_a, moduli) == lattice(gens_b, moduli))
}

/// Whether `v` lies in the submodule generated by `gens`.
pub fn contains_mod(gens: &[Vec<BigInt>], v: &[BigInt], moduli: &[BigInt]) -> Result<bool> {
    validate(gens, moduli)?;
    validate(std::slice::from_ref(&v.to_vec()), moduli)?;
    let mut with_v = gens.to_vec();
    with_v.push(v.to_vec());
    Ok(lattice(gens, moduli) == lattice(&with_v, moduli))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mods(ms: &[i64]) -> Vec<BigInt> {
        ms.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_of_small_lattice() {
        let h = hermite_rows(&vecs(&[&[2, 4], &[3, 1]]), 2);
        // det = -10; HNF [[1, 7], [0, 10]]
        assert_eq!(h, vecs(&[&[1, 7], &[0, 10]]));
    }

    #[test]
    fn submodule_examples() {
        let a = vecs(&[&[1, 0]]);
        assert!(submodule_equal_mod(&a, &a, &mods(&[9, 9])).unwrap());
        assert!(!submodule_equal_mod(&a, &vecs(&[&[0, 1]]), &mods(&[9, 9])).unwrap());
        // {(p,0),(0,1)} -> {(p,1),(0,1)}: subtract the second generator
        let p = 3;
        assert!(submodule_equal_mod(&vecs(&[&[p, 0], &[0, 1]]), &vecs(&[&[p, 1], &[0, 1]]), &mods(&[p * p * p, p]))
            .unwrap());
    }

    #[test]
    fn torsion_identifications() {
        // 3 e_1 generates the same subgroup as 6 e_1 in Z/9 (2 is a unit)
        assert!(submodule_equal_mod(&vecs(&[&[3]]), &vecs(&[&[6]]), &mods(&[9])).unwrap());
        assert!(!submodule_equal_mod(&vecs(&[&[3]]), &vecs(&[&[9]]), &mods(&[27])).unwrap());
        assert!(submodule_equal_mod(&vecs(&[]), &vecs(&[&[27]]), &mods(&[27])).unwrap());
        assert!(contains_mod(&vecs(&[&[3, 1]]), &[BigInt::from(6), BigInt::from(2)], &mods(&[9, 3])).unwrap());
        assert!(!contains_mod(&vecs(&[&[3, 1]]), &[BigInt::from(1), BigInt::from(0)], &mods(&[9, 3])).unwrap());
    }

    #[test]
    fn dimension_errors() {
        assert!(submodule_equal_mod(&vecs(&[&[1, 0]]), &vecs(&[&[1]]), &mods(&[3, 3])).is_err());
        assert!(submodule_equal_mod(&vecs(&[&[1]]), &vecs(&[&[1]]), &mods(&[0])).is_err());
    }
}
