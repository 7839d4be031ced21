//! The gap function `g(n)`, the index sets `Z1` and `Z2`, and their density.
//!
//! For an odd multiple `n` of p, `g(n)` is the largest even `j` with
//! `b_j < v_p(n)`. `Z1` is the set of odd positive integers outside every
//! window `[n, n + g(n)]`, and `Z2` those outside every `[n - g(n), n + g(n)]`.
//! The integer 1 lies in both.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{bad_index, Error, Result};
use crate::padic::{b_unchecked, vp_u64, Prime};
use crate::par::{self, Execution};

/// `g(p^v)`: the largest even `j` with `b_j < v`. `g(p^0)` is reported as 0.
pub fn g_for_valuation(p: Prime, v: u32) -> u64 {
    // b_j > 3j/4 for j >= 2, so nothing beyond 2v + 2 can qualify
    let mut best = 0;
    let mut j = 0;
    while j <= 2 * v as u64 + 2 {
        if b_unchecked(p, j) < v {
            best = j;
        }
        j += 2;
    }
    best
}

/// `g(n)` for an odd positive multiple `n` of p.
pub fn g_of(p: Prime, n: i64) -> Result<u64> {
    if n < 1 || n % 2 == 0 {
        return Err(bad_index("g takes an odd positive integer", n));
    }
    let v = vp_u64(p, n as u64);
    if v == 0 {
        return Err(Error::NotMultipleOfP { n: n as u64, p: p.get() });
    }
    Ok(g_for_valuation(p, v))
}

/// The exclusion windows attached to an odd multiple of p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapWindow {
    pub n: u64,
    pub g: u64,
    /// `[n, n + g]`, removed from `Z1`.
    pub z1_interval: (u64, u64),
    /// `[n - g, n + g]`, removed from `Z2`.
    pub z2_interval: (u64, u64),
}

impl GapWindow {
    pub fn new(p: Prime, n: i64) -> Result<Self> {
        let g = g_of(p, n)?;
        let n = n as u64;
        Ok(GapWindow { n, g, z1_interval: (n, n + g), z2_interval: (n - g, n + g) })
    }
}

fn floor_log(p: Prime, m: u64) -> u32 {
    let mut e = 0;
    let mut acc = 1u64;
    while let Some(next) = acc.checked_mul(p.get()) {
        if next > m {
            break;
        }
        acc = next;
        e += 1;
    }
    e
}

/// Largest `g(n)` over multiples `n <= m` of p.
fn max_gap_upto(p: Prime, m: u64) -> u64 {
    g_for_valuation(p, floor_log(p, m))
}

fn odd_multiples_in(p: Prime, lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    let q = p.get();
    let step = 2 * q;
    // smallest odd multiple of p that is >= lo
    let mut first = lo.div_ceil(q) * q;
    if first.is_multiple_of(2) {
        first += q;
    }
    let first = first.max(q);
    (0..).map(move |k| first + k * step).take_while(move |&n| n <= hi)
}

pub(crate) fn in_z1_unchecked(p: Prime, i: u64) -> bool {
    let w = max_gap_upto(p, i);
    !odd_multiples_in(p, i.saturating_sub(w), i).any(|n| n + g_for_valuation(p, vp_u64(p, n)) >= i)
}

pub(crate) fn in_z2_unchecked(p: Prime, i: u64) -> bool {
    // g(n) < n/2, so a window [n - g(n), n + g(n)] containing i has n < 2i
    let w = max_gap_upto(p, 3 * i);
    !odd_multiples_in(p, i.saturating_sub(w), i + w).any(|n| n.abs_diff(i) <= g_for_valuation(p, vp_u64(p, n)))
}

fn check_odd(i: i64) -> Result<u64> {
    if i < 1 || i % 2 == 0 {
        return Err(bad_index("Z-set membership takes an odd positive integer", i));
    }
    Ok(i as u64)
}

pub fn in_z1(p: Prime, i: i64) -> Result<bool> {
    Ok(in_z1_unchecked(p, check_odd(i)?))
}

pub fn in_z2(p: Prime, i: i64) -> Result<bool> {
    Ok(in_z2_unchecked(p, check_odd(i)?))
}

fn check_max(max: u64) -> Result<()> {
    if max == 0 {
        return Err(Error::Precondition("enumeration bound must be at least 1".into()));
    }
    Ok(())
}

/// Elements of `Z1` in `[1, max]`, ascending.
pub fn enumerate_z1(p: Prime, max: u64, exec: Execution) -> Result<Vec<u64>> {
    check_max(max)?;
    Ok(par::filter_odd(exec, max, |i| in_z1_unchecked(p, i)))
}

/// Elements of `Z2` in `[1, max]`, ascending.
pub fn enumerate_z2(p: Prime, max: u64, exec: Execution) -> Result<Vec<u64>> {
    check_max(max)?;
    Ok(par::filter_odd(exec, max, |i| in_z2_unchecked(p, i)))
}

/// The odd members of `{(p^a ± 1)/2 : 1 <= a <= a_max}`, ascending.
pub fn z_sequence(p: Prime, a_max: u32) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=a_max)
        .filter_map(|a| p.checked_pow(a))
        .flat_map(|q| [(q - 1) / 2, q.div_ceil(2)])
        .filter(|x| x % 2 == 1)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `#{x odd, 1 <= x <= max : x = c p^e ± b}` for even `b` with `0 < b < p^e / 2`.
pub fn count_y(p: Prime, e: u32, b: u64, max: u64) -> Result<u64> {
    let pe = p.pow(e);
    if b == 0 || b % 2 == 1 || BigInt::from(2 * b) >= pe {
        return Err(Error::InvalidOffset { b, pe: pe.to_string() });
    }
    let Some(pe) = p.checked_pow(e) else {
        // p^e - b > max for every representable max
        return Ok(0);
    };
    // x = c p^e ± b is odd iff c is odd, and x >= 1 forces c >= 1
    let count_side = |offset: i128| -> u64 {
        let mut total = 0;
        let mut c: i128 = 1;
        loop {
            let x = c * pe as i128 + offset;
            if x > max as i128 {
                break;
            }
            if x >= 1 {
                total += 1;
            }
            c += 2;
        }
        total
    };
    Ok(count_side(b as i128) + count_side(-(b as i128)))
}

/// Smallest `e` with `g(p^e) >= k`, for even `k >= 2`.
pub fn min_exponent_for_gap(p: Prime, k: u64) -> u32 {
    let mut e = 1;
    while g_for_valuation(p, e) < k {
        e += 1;
    }
    e
}

/// `#X_N`, the number of odd integers in `[1, N]`.
pub fn odd_count(max: u64) -> u64 {
    max.div_ceil(2)
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Dyadic upper bound `u >= p^(-s/t)` with `bits` bits of precision.
fn pow_neg_frac_upper(p: Prime, s: u64, t: u64, bits: u32) -> BigRational {
    // smallest m with (m / 2^bits)^t * p^s >= 1
    let scale = BigInt::one() << bits;
    let target = num_traits::pow(scale.clone(), t as usize);
    let ps = num_traits::pow(p.big(), s as usize);
    let ok = |m: &BigInt| num_traits::pow(m.clone(), t as usize) * &ps >= target;
    let (mut lo, mut hi) = (BigInt::zero(), scale.clone());
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    BigRational::new(hi, scale)
}

/// Dyadic upper bound `u >= log_p(max)` with `bits` bits of precision.
fn log_upper(p: Prime, max: u64, bits: u32) -> BigRational {
    if max <= 1 {
        return BigRational::zero();
    }
    // smallest m with p^m >= max^(2^bits)
    let target = num_traits::pow(BigInt::from(max), 1usize << bits);
    let ok = |m: u64| num_traits::pow(p.big(), m as usize) >= target;
    let mut hi = (floor_log(p, max) as u64 + 1) << bits;
    let mut lo = 0u64;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    rat(hi, BigInt::one() << bits)
}

/// Largest-ish `f64` not exceeding the exact value.
fn lower_f64(x: &BigRational) -> f64 {
    x.to_f64().map(f64::next_down).unwrap_or(f64::NAN)
}

/// Empirical densities of `Z1`/`Z2` among odd integers up to `N`, next to the
/// closed-form lower bounds.
///
/// `bound_*` are the two displayed bounds with geometric tail
/// `sum_{k >= 6 even} c p^(-lambda k)` and finite correction
/// `(c log_p N + c) / (lambda #X_N)`; `asymptotic_bound_*` drop the
/// correction. `sharpened_*` run the same counting argument with the exact
/// exponents `e_k` (smallest `e` with `g(p^e) >= k`) and the exact count of
/// multiples of p, in place of the estimate `e_k > lambda k`. Every bound is
/// evaluated in exact rational arithmetic with outward rounding and then
/// rounded down to `f64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub p: u64,
    pub n: u64,
    pub odd_count: u64,
    pub z1_count: u64,
    pub z2_count: u64,
    pub empirical_z1: f64,
    pub empirical_z2: f64,
    pub bound_z1: f64,
    pub bound_z2: f64,
    pub asymptotic_bound_z1: f64,
    pub asymptotic_bound_z2: f64,
    pub sharpened_bound_z1: f64,
    pub sharpened_bound_z2: f64,
    pub sharpened_asymptotic_z1: f64,
    pub sharpened_asymptotic_z2: f64,
    /// `(2p - 3, 2p - 2)`.
    pub lambda: (u64, u64),
}

impl DensityReport {
    pub fn lambda_f64(&self) -> f64 {
        self.lambda.0 as f64 / self.lambda.1 as f64
    }

    /// Both empirical densities dominate every nonnegative finite bound.
    pub fn bounds_hold(&self) -> bool {
        let ok = |emp: f64, b: f64| b < 0.0 || emp >= b;
        ok(self.empirical_z1, self.bound_z1)
            && ok(self.empirical_z2, self.bound_z2)
            && ok(self.empirical_z1, self.sharpened_bound_z1)
            && ok(self.empirical_z2, self.sharpened_bound_z2)
    }
}

struct ExactBounds {
    bound_z1: BigRational,
    bound_z2: BigRational,
    asym_z1: BigRational,
    asym_z2: BigRational,
}

fn displayed_bounds(p: Prime, max: u64) -> ExactBounds {
    let q = p.get();
    let lambda = rat(2 * q - 3, 2 * q - 2);
    let bits = 48;
    // sum_{k >= 6 even} p^(-lambda k) = p^(-6 lambda) / (1 - p^(-2 lambda))
    let head = pow_neg_frac_upper(p, 3 * (2 * q - 3), q - 1, bits);
    let ratio = pow_neg_frac_upper(p, 2 * q - 3, q - 1, bits);
    let tail = head / (BigRational::one() - ratio);
    let inv = |e: u32| BigRational::new(BigInt::one(), p.pow(e));
    let one = BigRational::one();
    let two = rat(2, 1);
    let asym_z1 = &one - inv(1) - inv(3) - inv(5) - &tail;
    let asym_z2 = &one - inv(1) - &two * inv(3) - &two * inv(5) - &two * &tail;
    let x = rat(odd_count(max), 1);
    let log = log_upper(p, max, 10);
    let corr1 = (&log + &one) / (&lambda * &x);
    let corr2 = &two * &corr1;
    ExactBounds { bound_z1: &asym_z1 - corr1, bound_z2: &asym_z2 - corr2, asym_z1, asym_z2 }
}

fn sharpened_bounds(p: Prime, max: u64) -> ExactBounds {
    let q = p.get();
    let x = odd_count(max);
    let xr = rat(x, 1);
    let multiples = (max / q).div_ceil(2);
    let mut sum1 = BigRational::zero();
    let mut sum2 = BigRational::zero();
    let mut fin1 = rat(multiples, x);
    let mut fin2 = rat(multiples, x);
    let mut k = 2u64;
    let limit_e = 40u32;
    loop {
        let e = min_exponent_for_gap(p, k);
        if e > limit_e {
            break;
        }
        let pe = p.pow(e);
        let inv = BigRational::new(BigInt::one(), pe.clone());
        sum1 += &inv;
        sum2 += &inv * rat(2, 1);
        // Y is nonempty only if its smallest candidate element fits below N
        if pe.clone() + BigInt::from(k) <= BigInt::from(max) {
            fin1 += &inv + BigRational::one() / &xr;
        }
        if pe - BigInt::from(k) <= BigInt::from(max) {
            fin2 += &inv * rat(2, 1) + rat(2, 1) / &xr;
        }
        k += 2;
    }
    // remaining k satisfy e_k >= floor(lambda k) + 1, and consecutive exponents
    // grow by at least one, so the tail is dominated by a geometric series
    let lam_k = ((2 * q - 3) * k) / (2 * q - 2);
    let tail = BigRational::new(BigInt::from(q), p.pow(lam_k as u32 + 1) * BigInt::from(q - 1));
    let one = BigRational::one();
    let inv_p = rat(1, q);
    ExactBounds {
        bound_z1: &one - fin1,
        bound_z2: &one - fin2,
        asym_z1: &one - &inv_p - sum1 - &tail,
        asym_z2: &one - &inv_p - sum2 - &tail * rat(2, 1),
    }
}

pub fn density_bounds(p: Prime, max: u64, exec: Execution) -> Result<DensityReport> {
    check_max(max)?;
    let q = p.get();
    let x = odd_count(max);
    let z1_count = par::count_odd(exec, max, |i| in_z1_unchecked(p, i));
    let z2_count = par::count_odd(exec, max, |i| in_z2_unchecked(p, i));
    let shown = displayed_bounds(p, max);
    let sharp = sharpened_bounds(p, max);
    Ok(DensityReport {
        p: q,
        n: max,
        odd_count: x,
        z1_count,
        z2_count,
        empirical_z1: z1_count as f64 / x as f64,
        empirical_z2: z2_count as f64 / x as f64,
        bound_z1: lower_f64(&shown.bound_z1),
        bound_z2: lower_f64(&shown.bound_z2),
        asymptotic_bound_z1: lower_f64(&shown.asym_z1),
        asymptotic_bound_z2: lower_f64(&shown.asym_z2),
        sharpened_bound_z1: lower_f64(&sharp.bound_z1),
        sharpened_bound_z2: lower_f64(&sharp.bound_z2),
        sharpened_asymptotic_z1: lower_f64(&sharp.asym_z1),
        sharpened_asymptotic_z2: lower_f64(&sharp.asym_z2),
        lambda: (2 * q - 3, 2 * q - 2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    /// Brute force: scan every odd multiple of p up to 2i + 2.
    fn z1_brute(p: Prime, i: u64) -> bool {
        let q = p.get();
        !(1..=i).filter(|n| n % 2 == 1 && n % q == 0).any(|n| n <= i && i <= n + g_of(p, n as i64).unwrap())
    }

    fn z2_brute(p: Prime, i: u64) -> bool {
        let q = p.get();
        !(1..=2 * i + 2).filter(|n| n % 2 == 1 && n % q == 0).any(|n| n.abs_diff(i) <= g_of(p, n as i64).unwrap())
    }

    #[test]
    fn gap_examples() {
        for q in [3, 5, 7] {
            let pr = p(q);
            let pw = |e: u32| q.pow(e) as i64;
            assert_eq!(g_of(pr, pw(1)).unwrap(), 0);
            assert_eq!(g_of(pr, pw(2)).unwrap(), 0);
            assert_eq!(g_of(pr, pw(3)).unwrap(), 2);
            assert_eq!(g_of(pr, pw(4)).unwrap(), 2);
            assert_eq!(g_of(pr, pw(5)).unwrap(), 4);
        }
        assert_eq!(g_of(p(3), 729).unwrap(), 6);
        assert_eq!(g_of(p(3), 5), Err(Error::NotMultipleOfP { n: 5, p: 3 }));
        assert!(g_of(p(3), 6).is_err());
    }

    #[test]
    fn gap_depends_only_on_valuation() {
        let pr = p(3);
        assert_eq!(g_of(pr, 27).unwrap(), g_of(pr, 27 * 5).unwrap());
        assert_eq!(g_of(pr, 81 * 7).unwrap(), 2);
    }

    #[test]
    fn gap_window_invariants() {
        for q in [3u64, 5, 7] {
            let pr = p(q);
            for n in (q..2000).step_by(2 * q as usize) {
                let w = GapWindow::new(pr, n as i64).unwrap();
                let v = vp_u64(pr, n);
                assert_eq!(w.g % 2, 0);
                assert!(b_unchecked(pr, w.g) < v);
                assert!(b_unchecked(pr, w.g + 2) >= v);
                assert_eq!(w.z1_interval, (n, n + w.g));
                assert_eq!(w.z2_interval, (n - w.g, n + w.g));
            }
        }
    }

    #[test]
    fn membership_examples() {
        let pr = p(3);
        assert!(!in_z1(pr, 29).unwrap());
        assert!(in_z1(pr, 25).unwrap());
        assert!(!in_z2(pr, 25).unwrap());
        assert!(in_z2(pr, 7).unwrap());
        assert!(!in_z2(pr, 29).unwrap());
        assert!(in_z1(pr, 1).unwrap() && in_z2(pr, 1).unwrap());
        assert!(in_z1(pr, 4).is_err());
        assert!(in_z2(pr, 0).is_err());
    }

    #[test]
    fn windowed_membership_matches_brute_force() {
        for q in [3u64, 5, 7] {
            let pr = p(q);
            for i in (1..1500).step_by(2) {
                assert_eq!(in_z1_unchecked(pr, i), z1_brute(pr, i), "Z1 p={q} i={i}");
                assert_eq!(in_z2_unchecked(pr, i), z2_brute(pr, i), "Z2 p={q} i={i}");
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let pr = p(3);
        assert_eq!(enumerate_z1(pr, 30, Execution::Sequential).unwrap(), vec![1, 5, 7, 11, 13, 17, 19, 23, 25]);
        assert_eq!(enumerate_z2(pr, 32, Execution::Sequential).unwrap(), vec![1, 5, 7, 11, 13, 17, 19, 23, 31]);
        assert_eq!(enumerate_z2(p(5), 10, Execution::Parallel).unwrap(), vec![1, 3, 7, 9]);
        assert!(enumerate_z1(pr, 0, Execution::Sequential).is_err());
        assert_eq!(enumerate_z1(pr, 1, Execution::Sequential).unwrap(), vec![1]);
    }

    #[test]
    fn z_sequence_values() {
        // 3^a ± 1 over 2: (1,2), (4,5), (13,14), (40,41)
        assert_eq!(z_sequence(p(3), 4), vec![1, 5, 13, 41]);
    }

    /// Brute-force oracle for count_y: test every odd x <= max.
    fn count_y_brute(p: Prime, e: u32, b: u64, max: u64) -> u64 {
        let pe = p.get().pow(e);
        (1..=max).filter(|x| x % 2 == 1).filter(|x| (x + b).is_multiple_of(pe) || (x % pe) == b % pe).count() as u64
    }

    #[test]
    fn count_y_examples() {
        assert_eq!(count_y_brute(p(3), 3, 2, 29), 2);
        assert_eq!(count_y(p(3), 3, 2, 29).unwrap(), 2);
        assert_eq!(count_y(p(3), 3, 2, 24).unwrap(), 0);
        // brute force gives {3, 7, 13}
        assert_eq!(count_y_brute(p(5), 1, 2, 13), 3);
        assert_eq!(count_y(p(5), 1, 2, 13).unwrap(), 3);
        assert!(count_y(p(5), 1, 3, 13).is_err());
        assert!(count_y(p(5), 1, 4, 13).is_err());
        assert!(count_y(p(3), 2, 0, 13).is_err());
    }

    #[test]
    fn count_y_against_brute_force_and_bound() {
        for q in [3u64, 5, 7] {
            let pr = p(q);
            for e in 1..=4u32 {
                let pe = q.pow(e);
                for b in (2..).step_by(2).take_while(|b| 2 * b < pe) {
                    for max in [1u64, 10, 77, 500, 1234] {
                        let c = count_y(pr, e, b, max).unwrap();
                        assert_eq!(c, count_y_brute(pr, e, b, max), "p={q} e={e} b={b} N={max}");
                        let x = odd_count(max) as f64;
                        assert!((c as f64) / x < 2.0 / pe as f64 + 2.0 / x);
                    }
                }
            }
        }
    }

    #[test]
    fn gap_exponents() {
        for q in [3, 5, 7, 11] {
            assert_eq!(min_exponent_for_gap(p(q), 2), 3);
            assert_eq!(min_exponent_for_gap(p(q), 4), 5);
        }
    }

    #[test]
    fn rational_bounds_are_outward() {
        let pr = p(3);
        let u = pow_neg_frac_upper(pr, 9, 2, 48); // 3^-4.5
        let f = u.to_f64().unwrap();
        assert!(f >= 3f64.powf(-4.5) && f - 3f64.powf(-4.5) < 1e-12);
        let l = log_upper(pr, 1_000_000, 10).to_f64().unwrap();
        let exact = (1e6f64).ln() / 3f64.ln();
        assert!(l >= exact && l - exact < 2e-3);
        assert!(log_upper(pr, 1, 10).is_integer());
        assert!(log_upper(pr, 27, 10).is_integer());
    }

    #[test]
    fn small_density_report() {
        let r = density_bounds(p(3), 200, Execution::Sequential).unwrap();
        assert_eq!(r.odd_count, 100);
        // 4 non-multiples and 33 multiples of 3 are missing from the odd numbers
        assert_eq!(r.z1_count, 100 - 33 - 4);
        assert_eq!(r.z2_count, 100 - 33 - 8);
        assert!(r.bounds_hold());
        assert_eq!(r.lambda, (3, 4));
    }
}
