//! p-adic valuations, exact rationals with a cached valuation, and the
//! sequences `A_j`, `B_j` together with their valuations `a_j`, `b_j`.
//!
//! `A_1 = p`, `A_j = p^2 A_{j-2} / j` for odd `j`; `B_0 = 1`,
//! `B_j = p^2 B_{j-2} / j` for even `j`. Valuations are memoized per prime in
//! a process-wide table that grows on demand.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{bad_index, Error, Result};

/// An odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p^e` as an arbitrary-precision integer.
    pub fn pow(self, e: u32) -> BigInt {
        num_traits::pow(self.big(), e as usize)
    }

    /// `p^e` if it fits in a `u64`.
    pub fn checked_pow(self, e: u32) -> Option<u64> {
        self.0.checked_pow(e)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `e` with `p^e | n`.
pub fn vp(p: Prime, n: i64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    Ok(vp_u64(p, n.unsigned_abs()))
}

#[inline]
pub(crate) fn vp_u64(p: Prime, mut n: u64) -> u32 {
    debug_assert!(n != 0);
    let p = p.get();
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Valuation of a nonzero big integer.
pub fn vp_big(p: Prime, n: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = p.big();
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

/// `v_p(m!)` by Legendre's formula.
pub fn factorial_vp(p: Prime, m: u64) -> u64 {
    let p = p.get();
    let mut total = 0;
    let mut m = m / p;
    while m > 0 {
        total += m;
        m /= p;
    }
    total
}

/// An exact rational number with its p-adic valuation cached at construction.
///
/// Stored in lowest terms with a positive denominator. The valuation of zero
/// is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicRational {
    prime: Prime,
    numerator: BigInt,
    denominator: BigInt,
    valuation: Option<i64>,
}

impl PadicRational {
    pub fn new(prime: Prime, numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let g = numerator.gcd(&denominator);
        let (mut num, mut den) =
            if g.is_zero() { (BigInt::zero(), BigInt::one()) } else { (&numerator / &g, &denominator / &g) };
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let valuation =
            if num.is_zero() { None } else { Some(vp_big(prime, &num)? as i64 - vp_big(prime, &den)? as i64) };
        Ok(PadicRational { prime, numerator: num, denominator: den, valuation })
    }

    pub fn integer(prime: Prime, n: impl Into<BigInt>) -> Self {
        Self::new(prime, n.into(), BigInt::one()).expect("nonzero denominator")
    }

    pub fn zero(prime: Prime) -> Self {
        Self::integer(prime, 0)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// `v_p(numerator) - v_p(denominator)`, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Membership in the localization `Z_(p)`: the denominator is prime to p.
    pub fn in_zp(&self) -> bool {
        !self.denominator.is_multiple_of(&self.prime.big())
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        Self::new(self.prime, &self.numerator * k.into(), self.denominator.clone()).expect("nonzero denominator")
    }

    /// Divide by a nonzero integer.
    pub fn div_int(&self, k: impl Into<BigInt>) -> Result<Self> {
        let k = k.into();
        if k.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        Self::new(self.prime, self.numerator.clone(), &self.denominator * k)
    }

    /// The residue of this element of `Z_(p)` in `Z/modulus`, in `[0, modulus)`.
    ///
    /// `modulus` must be a power of p (including `1`).
    pub fn residue(&self, modulus: &BigInt) -> Result<BigInt> {
        if !self.in_zp() {
            return Err(Error::Precondition(format!("{self} does not lie in Z_(p)")));
        }
        if modulus.is_one() {
            return Ok(BigInt::zero());
        }
        let inv = mod_inverse(&self.denominator, modulus)
            .ok_or_else(|| Error::Precondition("denominator not invertible".into()))?;
        Ok((&self.numerator * inv).mod_floor(modulus))
    }

    /// The prime-to-p part `u` of the denominator; `u * self` has denominator
    /// a power of p (and is an integer when `self` lies in `Z_(p)`).
    pub fn unit_denominator(&self) -> BigInt {
        let p = self.prime.big();
        let mut u = self.denominator.clone();
        while u.is_multiple_of(&p) {
            u /= &p;
        }
        u
    }
}

impl fmt::Display for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn check_odd_positive(j: i64) -> Result<u64> {
    if j < 1 || j % 2 == 0 {
        return Err(bad_index("A defined on odd positive indices", j));
    }
    Ok(j as u64)
}

fn check_even_nonnegative(j: i64) -> Result<u64> {
    if j < 0 || j % 2 != 0 {
        return Err(bad_index("B defined on even nonnegative indices", j));
    }
    Ok(j as u64)
}

/// `A_j` for odd `j >= 1`.
pub fn seq_a(p: Prime, j: i64) -> Result<PadicRational> {
    let j = check_odd_positive(j)?;
    let p2 = p.big() * p.big();
    let mut num = p.big();
    let mut den = BigInt::one();
    let mut k = 3;
    while k <= j {
        num *= &p2;
        den *= BigInt::from(k);
        k += 2;
    }
    PadicRational::new(p, num, den)
}

/// `B_j` for even `j >= 0`.
pub fn seq_b(p: Prime, j: i64) -> Result<PadicRational> {
    let j = check_even_nonnegative(j)?;
    Ok(seq_b_upto(p, j).pop().expect("nonempty"))
}

/// `[B_0, B_2, ..., B_j]` in one pass.
pub fn seq_b_upto(p: Prime, j: u64) -> Vec<PadicRational> {
    let p2 = p.big() * p.big();
    let mut out = Vec::with_capacity(j as usize / 2 + 1);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    out.push(PadicRational::integer(p, 1));
    let mut k = 2;
    while k <= j {
        num *= &p2;
        den *= BigInt::from(k);
        let q = PadicRational::new(p, num.clone(), den.clone()).expect("nonzero");
        num = q.numerator().clone();
        den = q.denominator().clone();
        out.push(q);
        k += 2;
    }
    out
}

#[derive(Default)]
struct SeqTable {
    // a[k] = a_{2k+1}
    a: Vec<u32>,
    // b[k] = b_{2k}
    b: Vec<u32>,
}

impl SeqTable {
    fn extend_a(&mut self, p: Prime, k: usize) {
        if self.a.is_empty() {
            self.a.push(1);
        }
        while self.a.len() <= k {
            let j = 2 * self.a.len() as u64 + 1;
            let prev = *self.a.last().expect("nonempty") as i64;
            let next = prev + 2 - vp_u64(p, j) as i64;
            debug_assert!(next >= 0);
            self.a.push(next as u32);
        }
    }

    fn extend_b(&mut self, p: Prime, k: usize) {
        while self.b.len() <= k {
            let half = self.b.len() as u64;
            self.b.push((2 * half - factorial_vp(p, half)) as u32);
        }
    }
}

fn tables() -> &'static RwLock<HashMap<Prime, SeqTable>> {
    static TABLES: OnceLock<RwLock<HashMap<Prime, SeqTable>>> = OnceLock::new();
    TABLES.get_or_init(Default::default)
}

fn lookup(p: Prime, k: usize, pick: fn(&SeqTable) -> &Vec<u32>, grow: fn(&mut SeqTable, Prime, usize)) -> u32 {
    {
        let guard = tables().read().expect("sequence table poisoned");
        if let Some(v) = guard.get(&p).and_then(|t| pick(t).get(k)) {
            return *v;
        }
    }
    let mut guard = tables().write().expect("sequence table poisoned");
    let table = guard.entry(p).or_default();
    // grow in chunks so that sequential scans do not take the write lock every step
    grow(table, p, k.max(2 * pick(table).len()).max(64));
    pick(table)[k]
}

/// `a_j = v_p(A_j)` for odd `j >= 1`, via `a_j = a_{j-2} + 2 - v_p(j)`.
pub fn a_val(p: Prime, j: i64) -> Result<u32> {
    let j = check_odd_positive(j)?;
    Ok(a_unchecked(p, j))
}

/// `b_j = v_p(B_j) = j - v_p((j/2)!)` for even `j >= 0`.
pub fn b_val(p: Prime, j: i64) -> Result<u32> {
    let j = check_even_nonnegative(j)?;
    Ok(b_unchecked(p, j))
}

#[inline]
pub(crate) fn a_unchecked(p: Prime, j: u64) -> u32 {
    lookup(p, (j / 2) as usize, |t| &t.a, SeqTable::extend_a)
}

#[inline]
pub(crate) fn b_unchecked(p: Prime, j: u64) -> u32 {
    lookup(p, (j / 2) as usize, |t| &t.b, SeqTable::extend_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn prime_rejects_two_and_composites() {
        for bad in [0, 1, 2, 4, 9, 15, 21, 91] {
            assert_eq!(Prime::new(bad), Err(Error::InvalidPrime(bad)));
        }
        for good in [3, 5, 7, 11, 101] {
            assert_eq!(Prime::new(good).unwrap().get(), good);
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(p(3), 9).unwrap(), 2);
        assert_eq!(vp(p(5), 7).unwrap(), 0);
        assert_eq!(vp(p(3), 54).unwrap(), 3);
        assert_eq!(vp(p(3), -54).unwrap(), 3);
        assert_eq!(vp(p(3), 0), Err(Error::ZeroValuation));
        assert_eq!(Error::ZeroValuation.to_string(), "valuation of zero undefined");
    }

    #[test]
    fn legendre() {
        assert_eq!(factorial_vp(p(3), 6), 2);
        assert_eq!(factorial_vp(p(3), 0), 0);
        assert_eq!(factorial_vp(p(5), 25), 6);
    }

    #[test]
    fn sequence_a_examples() {
        for q in [3, 5, 7, 11] {
            let a1 = seq_a(p(q), 1).unwrap();
            assert_eq!(a1.numerator(), &BigInt::from(q));
            assert_eq!(a1.denominator(), &BigInt::one());
        }
        assert_eq!(seq_a(p(3), 3).unwrap().to_string(), "9");
        let a5 = seq_a(p(3), 5).unwrap();
        assert_eq!(a5.to_string(), "81/5");
        assert_eq!(a5.valuation(), Some(4));
        assert!(seq_a(p(3), 4).is_err());
        assert!(seq_a(p(3), -1).is_err());
        assert!(seq_a(p(3), 0).is_err());
    }

    #[test]
    fn sequence_b_examples() {
        assert_eq!(seq_b(p(7), 0).unwrap().to_string(), "1");
        let b2 = seq_b(p(3), 2).unwrap();
        assert_eq!(b2.to_string(), "9/2");
        assert_eq!(b2.valuation(), Some(2));
        let b6 = seq_b(p(3), 6).unwrap();
        assert_eq!(b6.to_string(), "243/16");
        assert_eq!(b6.valuation(), Some(5));
        assert!(seq_b(p(3), 3).is_err());
        assert!(seq_b(p(3), -2).is_err());
    }

    #[test]
    fn valuation_sequences() {
        assert_eq!(a_val(p(5), 1).unwrap(), 1);
        assert_eq!(a_val(p(3), 5).unwrap(), 4);
        // a_7 = a_5 + 2 - v_3(7) = 6; A_7 = 3^7 / (3*5*7)
        assert_eq!(a_val(p(3), 7).unwrap(), 6);
        assert_eq!(seq_a(p(3), 7).unwrap().valuation(), Some(6));
        assert_eq!(b_val(p(3), 0).unwrap(), 0);
        assert_eq!(b_val(p(3), 6).unwrap(), 5);
        assert_eq!(b_val(p(3), 14).unwrap(), 12);
        assert!(a_val(p(3), 2).is_err());
        assert!(b_val(p(3), 1).is_err());
    }

    #[test]
    fn residues_in_zp() {
        let b2 = seq_b(p(3), 2).unwrap();
        // 9/2 mod 27 = 9 * 14 mod 27 = 18
        assert_eq!(b2.residue(&BigInt::from(27)).unwrap(), BigInt::from(18));
        assert_eq!(b2.residue(&BigInt::from(1)).unwrap(), BigInt::zero());
        let third = PadicRational::new(p(3), 1.into(), 3.into()).unwrap();
        assert!(!third.in_zp());
        assert!(third.residue(&BigInt::from(9)).is_err());
    }

    #[test]
    fn rational_normalization() {
        let q = PadicRational::new(p(3), BigInt::from(-6), BigInt::from(-4)).unwrap();
        assert_eq!(q.to_string(), "3/2");
        assert_eq!(q.valuation(), Some(1));
        let z = PadicRational::zero(p(3));
        assert!(z.is_zero());
        assert_eq!(z.valuation(), None);
        assert!(PadicRational::new(p(3), 1.into(), 0.into()).is_err());
    }
}
