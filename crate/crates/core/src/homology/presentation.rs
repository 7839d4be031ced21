//! The staircase presentation matrices. Columns are the source coordinates
//! `x_k`, rows the target coordinates, so the homology is the cokernel.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{bad_index, Result};
use crate::linalg::IntMatrix;
use crate::padic::Prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Total complex of the reduced Hochschild bicomplex, differential `d_degree`.
    HochschildTotal { degree: i64 },
    /// `HC_i` for even `i >= 2`.
    Cyclic { degree: i64 },
    /// First `size` coordinates of the product map computing `HC^-_m`.
    Negative { degree: i64, size: usize },
    /// First `size` coordinates of the product map computing `HP_even`.
    Periodic { size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircasePresentation {
    pub variant: Variant,
    pub matrix: IntMatrix,
}

/// `size x size` lower-bidiagonal matrix with the given diagonal and subdiagonal.
fn bidiagonal(diagonal: impl Fn(usize) -> BigInt, sub: impl Fn(usize) -> BigInt, size: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(size, size);
    for k in 0..size {
        m.set(k, k, diagonal(k));
        if k + 1 < size {
            m.set(k + 1, k, sub(k));
        }
    }
    m
}

/// `(x_1, ..., x_{i/2+1}) -> (p x_1, x_1 + p^2 x_2, 3 x_2 + p^2 x_3, ..., (i-1) x_{i/2} + p^2 x_{i/2+1})`.
pub fn cyclic_matrix(p: Prime, i: i64) -> Result<StaircasePresentation> {
    if i < 2 || i % 2 != 0 {
        return Err(bad_index("cyclic presentation needs an even degree >= 2", i));
    }
    let size = (i / 2 + 1) as usize;
    Ok(StaircasePresentation { variant: Variant::Cyclic { degree: i }, matrix: periodic_block(p, size) })
}

fn periodic_block(p: Prime, size: usize) -> IntMatrix {
    let p2 = p.big() * p.big();
    bidiagonal(|k| if k == 0 { p.big() } else { p2.clone() }, |k| BigInt::from(2 * k + 1), size)
}

/// `(x_1, x_2, ...) -> (p^2 x_1, (m+1) x_1 + p^2 x_2, (m+3) x_2 + p^2 x_3, ...)`, first `size` coordinates.
pub fn negative_matrix(p: Prime, m: i64, size: usize) -> Result<StaircasePresentation> {
    if m < 2 || m % 2 != 0 {
        return Err(bad_index("negative cyclic presentation needs an even degree >= 2", m));
    }
    if size == 0 {
        return Err(bad_index("truncation size must be positive", 0));
    }
    let p2 = p.big() * p.big();
    let matrix = bidiagonal(|_| p2.clone(), |k| BigInt::from(m + 1 + 2 * k as i64), size);
    Ok(StaircasePresentation { variant: Variant::Negative { degree: m, size }, matrix })
}

/// `(x_1, x_2, ...) -> (p x_1, x_1 + p^2 x_2, 3 x_2 + p^2 x_3, ...)`, first `size` coordinates.
pub fn periodic_matrix(p: Prime, size: usize) -> Result<StaircasePresentation> {
    if size == 0 {
        return Err(bad_index("truncation size must be positive", 0));
    }
    Ok(StaircasePresentation { variant: Variant::Periodic { size }, matrix: periodic_block(p, size) })
}

/// Rank of the degree-`k` term of the Hochschild total complex `R, R, R^2, R^2, ...`.
pub fn hochschild_rank(k: i64) -> usize {
    match k {
        k if k < 0 => 0,
        0 | 1 => 1,
        _ => 2,
    }
}

/// The differential `d_k: C_k -> C_{k-1}` of the Hochschild total complex:
/// `p` in degree 1, `[[p, 2], [0, p]]` in odd degrees `>= 3`, zero otherwise.
pub fn hochschild_differential(p: Prime, k: i64) -> StaircasePresentation {
    let (rows, cols) = (hochschild_rank(k - 1), hochschild_rank(k));
    let matrix = match k {
        1 => IntMatrix::from_rows(&[vec![p.big()]]).expect("1x1"),
        k if k >= 3 && k % 2 == 1 => {
            IntMatrix::from_rows(&[vec![p.big(), BigInt::from(2)], vec![BigInt::from(0), p.big()]]).expect("2x2")
        }
        _ => IntMatrix::zeros(rows, cols),
    };
    StaircasePresentation { variant: Variant::HochschildTotal { degree: k }, matrix }
}
