//! Exact coefficient fields: the rationals and the Gaussian rationals.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact field of characteristic zero.
///
/// Arithmetic goes through reference methods so hot loops never clone
/// big integers just to add them.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + FromStr + Send + Sync + 'static
{
    /// Tag written into manifests and reports.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: BigRational) -> Self;
    fn is_zero(&self) -> bool;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// `i`, when the field contains it.
    fn imaginary_unit() -> Option<Self>;
    fn conj(&self) -> Self;
    /// Sign of a real element; `None` when the element is not real.
    fn real_sign(&self) -> Option<Ordering>;

    /// Least common multiple of all denominators (positive).
    fn denom_lcm(&self) -> BigInt;
    /// Gcd of the integer components of an integral element (nonnegative).
    fn int_content(&self) -> BigInt;
    fn mul_int(&self, k: &BigInt) -> Self;
    /// Exact division by an integer that divides every component.
    fn div_int(&self, k: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        let p = a.times(b);
        self.add_assign_ref(&p);
    }

    /// `self -= a * b`
    fn sub_product(&mut self, a: &Self, b: &Self) {
        let p = a.times(b);
        *self = self.minus(&p);
    }
}

/// Exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

/// Exact element of ℚ(i), stored as `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

fn ratio_from_str(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|e| format!("{s:?}: {e}"))?;
            let d = BigInt::from_str(d.trim()).map_err(|e| format!("{s:?}: {e}"))?;
            if d.is_zero() {
                return Err(format!("{s:?}: zero denominator"));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(BigInt::from_str(s).map_err(|e| format!("{s:?}: {e}"))?),
    };
    Ok(parsed)
}

fn fmt_ratio(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn ratio_content(r: &BigRational) -> BigInt {
    r.numer().abs()
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_i64(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_ratio(&self.0, f)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ratio_from_str(s).map(Rational)
    }
}

impl Field for Rational {
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_rational(r: BigRational) -> Self {
        Rational(r)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn minus(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn times(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn negate(&self) -> Self {
        Rational(-&self.0)
    }
    fn inverse(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn real_sign(&self) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::zero()))
    }
    fn denom_lcm(&self) -> BigInt {
        self.0.denom().clone()
    }
    fn int_content(&self) -> BigInt {
        ratio_content(&self.0)
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        Rational(&self.0 * BigRational::from_integer(k.clone()))
    }
    fn div_int(&self, k: &BigInt) -> Self {
        Rational(&self.0 / BigRational::from_integer(k.clone()))
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.0 += &other.0;
    }
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Gaussian {
            re: BigRational::new(re.0.into(), re.1.into()),
            im: BigRational::new(im.0.into(), im.1.into()),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn real_part(&self) -> Gaussian {
        Gaussian::new(self.re.clone(), BigRational::zero())
    }

    pub fn imag_part(&self) -> Gaussian {
        Gaussian::new(self.im.clone(), BigRational::zero())
    }
}

impl From<Rational> for Gaussian {
    fn from(r: Rational) -> Self {
        Gaussian::from_rational(r.0)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_ratio(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_ratio(&self.re, f)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        fmt_ratio(&self.im, f)?;
        write!(f, "*i")
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Gaussian {
    type Err = String;
    /// Accepts the `Display` form: `a`, `b*i`, `a+b*i`, `a-b*i`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let Some(body) = s.strip_suffix("*i") else {
            return ratio_from_str(s).map(|re| Gaussian::new(re, BigRational::zero()));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(i) => {
                let re = ratio_from_str(&body[..i])?;
                let im_text = body[i..].trim_start_matches('+');
                Ok(Gaussian::new(re, ratio_from_str(im_text)?))
            }
            None => Ok(Gaussian::new(BigRational::zero(), ratio_from_str(body)?)),
        }
    }
}

impl Field for Gaussian {
    const NAME: &'static str = "gaussian";

    fn zero() -> Self {
        Gaussian::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Gaussian::new(BigRational::one(), BigRational::zero())
    }
    fn from_rational(r: BigRational) -> Self {
        Gaussian::new(r, BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        Gaussian::new(&self.re + &other.re, &self.im + &other.im)
    }
    fn minus(&self, other: &Self) -> Self {
        Gaussian::new(&self.re - &other.re, &self.im - &other.im)
    }
    fn times(&self, other: &Self) -> Self {
        if self.im.is_zero() && other.im.is_zero() {
            return Gaussian::from_rational(&self.re * &other.re);
        }
        Gaussian::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }
    fn negate(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Gaussian::new(&self.re / &norm, -&self.im / &norm))
    }
    fn imaginary_unit() -> Option<Self> {
        Some(Gaussian::new(BigRational::zero(), BigRational::one()))
    }
    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }
    fn real_sign(&self) -> Option<Ordering> {
        self.im.is_zero().then(|| self.re.cmp(&BigRational::zero()))
    }
    fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
    fn int_content(&self) -> BigInt {
        ratio_content(&self.re).gcd(&ratio_content(&self.im))
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Gaussian::new(&self.re * &k, &self.im * &k)
    }
    fn div_int(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Gaussian::new(&self.re / &k, &self.im / &k)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.re += &other.re;
        self.im += &other.im;
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(Rational);
string_serde!(Gaussian);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_display_and_parse() {
        let r = Rational::new(-6, 4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!("-3/2".parse::<Rational>().unwrap(), r);
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn gaussian_round_trip() {
        for g in [
            Gaussian::from_parts((1, 2), (-3, 4)),
            Gaussian::from_parts((0, 1), (5, 1)),
            Gaussian::from_parts((-7, 3), (0, 1)),
            Gaussian::from_parts((-1, 1), (1, 9)),
        ] {
            let text = g.to_string();
            assert_eq!(text.parse::<Gaussian>().unwrap(), g, "{text}");
        }
    }

    #[test]
    fn division_by_zero_is_an_error_value() {
        assert!(Rational::zero().inverse().is_none());
        assert!(Gaussian::zero().inverse().is_none());
    }

    #[test]
    fn gaussian_inverse() {
        let z = Gaussian::from_parts((3, 1), (4, 1));
        assert_eq!(z.times(&z.inverse().unwrap()), Gaussian::one());
        let i = Gaussian::imaginary_unit().unwrap();
        assert_eq!(i.times(&i), Gaussian::from_i64(-1));
        assert_eq!(z.real_sign(), None);
        assert_eq!(z.real_part().real_sign(), Some(Ordering::Greater));
    }

    #[test]
    fn integral_helpers() {
        let g = Gaussian::from_parts((1, 6), (3, 4));
        assert_eq!(g.denom_lcm(), BigInt::from(12));
        let scaled = g.mul_int(&BigInt::from(12));
        assert_eq!(scaled, Gaussian::from_parts((2, 1), (9, 1)));
        assert_eq!(scaled.int_content(), BigInt::from(1));
        assert_eq!(Rational::from(-12).int_content(), BigInt::from(12));
    }
}
