//! Exact arithmetic: arbitrary-precision counts, reduced rationals and
//! binomial coefficients.
//!
//! Binomials follow the zero-outside-range convention: `C(a, b) = 0` whenever
//! `b < 0`, `a < 0` or `b > a`. Every inclusion-exclusion sum downstream relies
//! on it, since a term whose residual ball count goes negative must vanish.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, ParseBigIntError};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
///
/// Serializes as a decimal digit string so counts survive JSON intact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Natural(BigUint);

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `self - rhs`, or `None` when the result would be negative.
    pub fn checked_sub(&self, rhs: &Natural) -> Option<Natural> {
        if self.0 >= rhs.0 {
            Some(Natural(&self.0 - &rhs.0))
        } else {
            None
        }
    }

    /// Floor division. Panics on a zero divisor.
    pub fn div_floor(&self, rhs: &Natural) -> Natural {
        Natural(&self.0 / &rhs.0)
    }

    pub fn pow(&self, exp: u32) -> Natural {
        Natural(self.0.pow(exp))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    /// Converts a signed value, returning `None` when it is negative.
    pub fn from_bigint(value: BigInt) -> Option<Natural> {
        value.to_biguint().map(Natural)
    }

    /// Number of decimal digits.
    pub fn decimal_digits(&self) -> usize {
        self.to_string().len()
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u128> for Natural {
    fn from(v: u128) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl PartialEq<u64> for Natural {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Natural {
    type Err = ParseBigIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        BigUint::from_str(s).map(Natural)
    }
}

impl Add for Natural {
    type Output = Natural;
    fn add(self, rhs: Natural) -> Natural {
        Natural(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Natural> for &'a Natural {
    type Output = Natural;
    fn add(self, rhs: &'a Natural) -> Natural {
        Natural(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Natural> for Natural {
    fn add_assign(&mut self, rhs: &Natural) {
        self.0 += &rhs.0;
    }
}

impl Mul for Natural {
    type Output = Natural;
    fn mul(self, rhs: Natural) -> Natural {
        Natural(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Natural> for &'a Natural {
    type Output = Natural;
    fn mul(self, rhs: &'a Natural) -> Natural {
        Natural(&self.0 * &rhs.0)
    }
}

impl Sum for Natural {
    fn sum<I: Iterator<Item = Natural>>(iter: I) -> Natural {
        iter.fold(Natural::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Natural> for Natural {
    fn sum<I: Iterator<Item = &'a Natural>>(iter: I) -> Natural {
        iter.fold(Natural::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Serialize for Natural {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Natural {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct DigitsVisitor;

        impl Visitor<'_> for DigitsVisitor {
            type Value = Natural;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a decimal digit string")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Natural, E> {
                if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::invalid_value(de::Unexpected::Str(v), &self));
                }
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_str(DigitsVisitor)
    }
}

/// Reduced exact fraction with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // Ratio::new reduces and moves the sign to the numerator.
        Ok(ExactRational(BigRational::new(numerator, denominator)))
    }

    /// `part / whole` for two counts.
    pub fn from_counts(part: &Natural, whole: &Natural) -> Result<Self> {
        Self::new(part.to_bigint(), whole.to_bigint())
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Nearest `f64`, for display.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn complement(&self) -> ExactRational {
        ExactRational(BigRational::one() - &self.0)
    }
}

impl Add for &ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: &ExactRational) -> ExactRational {
        ExactRational(&self.0 + &rhs.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Reduces `(a, b)` to the in-range case, or `None` when `C(a, b) = 0`.
fn in_range(a: i128, b: i128) -> Option<(u128, u128)> {
    if a < 0 || b < 0 || b > a {
        return None;
    }
    let (a, b) = (a as u128, b as u128);
    Some((a, b.min(a - b)))
}

/// Binomial coefficient `C(a, b)`, zero outside `0 <= b <= a`.
///
/// Uses the product form `prod (a - b + i) / i` with exact division after
/// every step. Runs in machine words until the partial product would overflow,
/// then continues in arbitrary precision.
pub fn binomial(a: i128, b: i128) -> Natural {
    let Some((a, b)) = in_range(a, b) else {
        return Natural::zero();
    };
    let base = a - b;
    let mut acc: u128 = 1;
    let mut i: u128 = 1;
    // acc * (base + i) is divisible by i because acc = C(base + i - 1, i - 1).
    while i <= b {
        match acc.checked_mul(base + i) {
            Some(p) => acc = p / i,
            None => break,
        }
        i += 1;
    }
    if i > b {
        return Natural::from(acc);
    }
    let mut big = BigUint::from(acc);
    while i <= b {
        big *= BigUint::from(base + i);
        big /= BigUint::from(i);
        i += 1;
    }
    Natural(big)
}

/// Rows above this index are not memoized; calls fall through to [`binomial`].
const MAX_CACHED_ROW: u128 = 1 << 14;

/// Thread-safe memo of whole Pascal rows.
#[derive(Debug, Default)]
pub struct BinomialCache {
    rows: RwLock<HashMap<u64, Arc<Vec<Natural>>>>,
}

impl BinomialCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Same value as [`binomial`].
    pub fn get(&self, a: i128, b: i128) -> Natural {
        let Some((row, col)) = in_range(a, b) else {
            return Natural::zero();
        };
        if row > MAX_CACHED_ROW {
            return binomial(a, b);
        }
        self.row(row as u64)[col as usize].clone()
    }

    /// Number of rows currently memoized.
    pub fn len(&self) -> usize {
        self.rows.read().expect("binomial cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn row(&self, a: u64) -> Arc<Vec<Natural>> {
        if let Some(row) = self.rows.read().expect("binomial cache poisoned").get(&a) {
            return Arc::clone(row);
        }
        let row = Arc::new(half_row(a));
        let mut rows = self.rows.write().expect("binomial cache poisoned");
        Arc::clone(rows.entry(a).or_insert(row))
    }
}

/// `C(a, 0), ..., C(a, a/2)`; the other half follows by symmetry.
fn half_row(a: u64) -> Vec<Natural> {
    let half = a / 2;
    let mut row = Vec::with_capacity(half as usize + 1);
    let mut cur = BigUint::one();
    row.push(Natural(cur.clone()));
    for b in 0..half {
        cur = cur * BigUint::from(a - b) / BigUint::from(b + 1);
        row.push(Natural(cur.clone()));
    }
    row
}

fn global_cache() -> &'static BinomialCache {
    static CACHE: OnceLock<BinomialCache> = OnceLock::new();
    CACHE.get_or_init(BinomialCache::new)
}

/// [`binomial`] through a process-wide row memo.
pub fn binomial_cached(a: i128, b: i128) -> Natural {
    global_cache().get(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(10, 10), 1);
    }

    #[test]
    fn zero_outside_range() {
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(-1, 2), 0);
        assert_eq!(binomial(-3, -1), 0);
        assert_eq!(binomial(5, -1), 0);
    }

    #[test]
    fn known_large_values() {
        assert_eq!(
            binomial(100, 49).to_string(),
            "98913082887808032681188722800"
        );
        assert_eq!(
            binomial(1000, 42).to_string(),
            "297242911333923795640059429176065863139989673213703918037987737481286092000"
        );
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn crosses_machine_word_boundary() {
        // C(130, 65) needs far more than 128 bits; check against Pascal's rule.
        for b in 60..70 {
            assert_eq!(binomial(130, b), &binomial(129, b - 1) + &binomial(129, b));
        }
    }

    #[test]
    fn cached_matches_plain() {
        assert_eq!(binomial_cached(4, 2), 6);
        assert_eq!(binomial_cached(3, 5), 0);
        assert_eq!(binomial_cached(-1, 2), 0);
        let first = binomial_cached(100, 50);
        let second = binomial_cached(100, 50);
        assert_eq!(first, second);
        assert_eq!(first, binomial(100, 50));
    }

    #[test]
    fn cache_is_shared_across_threads() {
        let cache = Arc::new(BinomialCache::new());
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let cache = Arc::clone(&cache);
                std::thread::spawn(move || {
                    for a in 0..60i128 {
                        for b in -1..=a + 1 {
                            assert_eq!(cache.get(a, b), binomial(a, b), "t={t} a={a} b={b}");
                        }
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(cache.len(), 60);
    }

    #[test]
    fn symmetry_and_pascal_up_to_200() {
        for a in 0..=200i128 {
            for b in 0..=a {
                assert_eq!(binomial(a, b), binomial(a, a - b));
                if b >= 1 {
                    assert_eq!(
                        binomial(a, b),
                        &binomial(a - 1, b - 1) + &binomial(a - 1, b)
                    );
                }
            }
        }
    }

    #[test]
    fn row_sums_are_powers_of_two() {
        for a in 0..=64i128 {
            let sum: Natural = (0..=a).map(|b| binomial(a, b)).sum();
            assert_eq!(sum, Natural::from(2u64).pow(a as u32));
        }
    }

    #[test]
    fn cached_agrees_on_ten_thousand_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let cache = BinomialCache::new();
        for _ in 0..10_000 {
            let a: i128 = rng.gen_range(-20..=300);
            let b: i128 = rng.gen_range(-20..=320);
            assert_eq!(cache.get(a, b), binomial(a, b), "a={a} b={b}");
        }
    }

    #[test]
    fn rational_is_reduced() {
        let half = ExactRational::new(BigInt::from(2), BigInt::from(4)).unwrap();
        assert_eq!(half.numerator(), &BigInt::from(1));
        assert_eq!(half.denominator(), &BigInt::from(2));
        assert_eq!(
            half,
            ExactRational::new(BigInt::from(1), BigInt::from(2)).unwrap()
        );
        let neg = ExactRational::new(BigInt::from(3), BigInt::from(-6)).unwrap();
        assert_eq!(neg.numerator(), &BigInt::from(-1));
        assert_eq!(neg.denominator(), &BigInt::from(2));
        assert_eq!(
            ExactRational::new(BigInt::from(1), BigInt::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn rational_display() {
        let r = ExactRational::from_counts(&Natural::from(3u64), &Natural::from(21u64)).unwrap();
        assert_eq!(r.to_string(), "1/7");
        assert_eq!(ExactRational::one().to_string(), "1");
        assert_eq!(ExactRational::zero().to_string(), "0");
    }

    #[test]
    fn natural_checked_sub() {
        let five = Natural::from(5u64);
        let three = Natural::from(3u64);
        assert_eq!(five.checked_sub(&three), Some(Natural::from(2u64)));
        assert_eq!(three.checked_sub(&five), None);
    }

    #[test]
    fn natural_rejects_non_digit_json() {
        assert!(serde_json::from_str::<Natural>("\"12a\"").is_err());
        assert!(serde_json::from_str::<Natural>("\"-3\"").is_err());
        assert!(serde_json::from_str::<Natural>("\"\"").is_err());
        assert!(serde_json::from_str::<Natural>("12").is_err());
    }

    proptest! {
        #[test]
        fn rational_reads_back_reduced(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = ExactRational::new(BigInt::from(p), BigInt::from(q)).unwrap();
            let g = num_integer::gcd(p, q);
            prop_assert_eq!(r.numerator(), &BigInt::from(p / g));
            prop_assert_eq!(r.denominator(), &BigInt::from(q / g));
        }

        #[test]
        fn natural_json_round_trip(digits in "[1-9][0-9]{0,80}") {
            let n: Natural = digits.parse().unwrap();
            let json = serde_json::to_string(&n).unwrap();
            prop_assert_eq!(&json, &format!("\"{digits}\""));
            let back: Natural = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, n);
        }
    }
}
