//! Arbitrary-precision integers and normalized rationals, plus the
//! combinatorial primitives (factorial, binomial, rising factorial) used by
//! every other module.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Integer = BigInt;

/// An exact fraction, always in lowest terms with a positive denominator.
///
/// There is deliberately no `Div` impl: division goes through
/// [`Rational::checked_div`] so that a zero divisor surfaces as an error.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: Integer) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn new(numer: Integer, denom: Integer) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    /// `numer / denom` for machine integers; panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer.into(), denom.into()).expect("zero denominator")
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Non-negative integer power; `0^0 = 1`.
    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Signed integer power; a negative power of zero is an error.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        let e = u32::try_from(exp.unsigned_abs())
            .map_err(|_| Error::domain(format!("exponent {exp} too large")))?;
        if exp >= 0 {
            Ok(self.pow(e))
        } else {
            self.recip().map(|r| r.pow(e))
        }
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// `(-1)^e` as a rational.
    pub fn sign_power(e: u64) -> Self {
        if e.is_multiple_of(2) {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n.into())
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::from_integer(n.into())
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n.into())
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational::from_integer(n)
    }
}

impl From<&Integer> for Rational {
    fn from(n: &Integer) -> Self {
        Rational::from_integer(n.clone())
    }
}

/// Prints `p` for integers and `p/q` otherwise.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Accepts `p`, `-p`, `p/q` with optional surrounding whitespace.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: Integer = num.parse().map_err(|_| bad())?;
        let den: Integer = den.parse().map_err(|_| bad())?;
        Rational::new(num, den)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                self.0.$assign_method(rhs.0);
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                self.0.$assign_method(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

pub fn factorial(n: u32) -> Integer {
    (2..=n).fold(Integer::one(), |acc, i| acc * i)
}

/// Binomial coefficient for a non-negative upper index; zero when `k` is
/// outside `0..=n`.
pub fn binomial(n: i64, k: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::domain(format!("binomial upper index {n} is negative")));
    }
    if k < 0 || k > n {
        return Ok(Integer::zero());
    }
    Ok(binom(n as u64, k as u64))
}

/// Infallible binomial for naturals, `0` when `k > n`.
pub(crate) fn binom(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        // exact: acc holds C(n, i) here, and C(n, i) * (n - i) is divisible by i + 1
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Same as [`binom`] lifted into the rationals.
pub(crate) fn binom_q(n: u64, k: u64) -> Rational {
    Rational::from_integer(binom(n, k))
}

pub(crate) fn factorial_q(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

/// Shifted (rising) factorial `c (c+1) ... (c+n-1)`, with `(c)_0 = 1`.
pub fn rising_factorial(c: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = c.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), Integer::from(6));
        assert_eq!(binomial(5, 0).unwrap(), Integer::from(1));
        assert_eq!(binomial(3, 5).unwrap(), Integer::from(0));
        assert_eq!(binomial(3, -1).unwrap(), Integer::from(0));
        assert!(matches!(binomial(-1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn rising_factorial_examples() {
        assert_eq!(rising_factorial(&Rational::from(1), 4), Rational::from(24));
        assert_eq!(rising_factorial(&q(1, 2), 2), q(3, 4));
        assert_eq!(rising_factorial(&Rational::from(-3), 5), Rational::zero());
        assert_eq!(rising_factorial(&q(7, 3), 0), Rational::one());
    }

    #[test]
    fn normalization_and_zero() {
        let r = Rational::new(Integer::from(6), Integer::from(-4)).unwrap();
        assert_eq!(r.numer(), &Integer::from(-3));
        assert_eq!(r.denom(), &Integer::from(2));
        let z = q(3, 5) - q(3, 5);
        assert_eq!(z.numer(), &Integer::from(0));
        assert_eq!(z.denom(), &Integer::from(1));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(q(1, 2).checked_div(&Rational::zero()), Err(Error::DivisionByZero));
        assert_eq!(Rational::zero().recip(), Err(Error::DivisionByZero));
        assert_eq!(Rational::zero().powi(-2), Err(Error::DivisionByZero));
        assert!(Rational::new(1.into(), 0.into()).is_err());
        assert!("3/0".parse::<Rational>().is_err());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!(" 12 ".parse::<Rational>().unwrap(), Rational::from(12));
        assert_eq!(q(-3, 2).to_string(), "-3/2");
        assert_eq!(Rational::from(216).to_string(), "216");
        assert!("1/2/3".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let json = serde_json::to_string(&q(5, 6)).unwrap();
        assert_eq!(json, "\"5/6\"");
        assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), q(5, 6));
    }

    #[test]
    fn rising_factorial_one_is_factorial() {
        for n in 0..=60 {
            assert_eq!(
                rising_factorial(&Rational::one(), n),
                Rational::from_integer(factorial(n))
            );
        }
    }

    #[test]
    fn binomial_symmetry() {
        for n in 0..=60i64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k).unwrap(), binomial(n, n - k).unwrap());
            }
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-60i64..60, 1i64..40).prop_map(|(n, d)| Rational::frac(n, d))
    }

    fn is_normalized(r: &Rational) -> bool {
        use num_integer::Integer as _;
        r.denom() > &Integer::zero() && r.numer().gcd(r.denom()) == Integer::one()
            || (r.is_zero() && r.denom() == &Integer::one())
    }

    proptest! {
        #[test]
        fn arithmetic_closure_is_normalized(a in small_rational(), b in small_rational()) {
            prop_assert!(is_normalized(&(&a + &b)));
            prop_assert!(is_normalized(&(&a - &b)));
            prop_assert!(is_normalized(&(&a * &b)));
            if !b.is_zero() {
                prop_assert!(is_normalized(&a.checked_div(&b).unwrap()));
            }
        }

        #[test]
        fn rising_factorial_splits(c in small_rational(), m in 0u32..=20, n in 0u32..=20) {
            let lhs = rising_factorial(&c, m + n);
            let rhs = rising_factorial(&c, m) * rising_factorial(&(&c + Rational::from(m)), n);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
