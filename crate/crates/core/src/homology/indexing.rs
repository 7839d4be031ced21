//! Translation between the staircase indices and homological degrees.
//!
//! `N_{-1} = HC_0`, `N_i = HC_{i+1}` for odd `i >= 1`, `N_inf = HP_0`, and
//! `K_i = HC^-_{i+3}`. Every user-facing query is in homological degree; the
//! engine converts here and nowhere else.

/// Homological degree of `N_i` (odd `i >= -1`).
pub const fn n_to_hc_degree(i: i64) -> i64 {
    i + 1
}

/// The staircase index `i` with `N_i = HC_degree` (even `degree >= 0`).
pub const fn hc_degree_to_n(degree: i64) -> i64 {
    degree - 1
}

/// Homological degree of `K_i`.
pub const fn k_to_hcneg_degree(i: i64) -> i64 {
    i + 3
}

/// The index `i` with `K_i = HC^-_degree`.
pub const fn hcneg_degree_to_k(degree: i64) -> i64 {
    degree - 3
}

/// `N_inf` is `HP` in every even degree; its representative degree.
pub const N_INFINITY_HP_DEGREE: i64 = 0;
