//! Scalar fields.
//!
//! Everything numeric in the crate is generic over [`Field`], which is
//! blanket-implemented for any `num-traits` number that can be negated and
//! cloned. Two fields carry the point fibers of a Real algebra:
//! [`Rational`] for a real point and [`GaussianRational`] for a complex point.
//! Both implement [`PointField`], which adds the exact-string codec used by
//! the JSON formats, exact square roots, and the sign of real values.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exact rational numbers with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Exact Gaussian rationals `a + b i` with `a, b` rational.
pub type GaussianRational = Complex<BigRational>;

/// A commutative field as far as the linear algebra here is concerned.
///
/// Zero tests are exact, so floating point types satisfy the bound but are
/// only meaningful on inputs that stay representable.
pub trait Field: Clone + PartialEq + Debug + Num + Neg<Output = Self> {}

impl<T> Field for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> {}

/// Which point fiber a scalar type models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    /// A fixed point of the involution: real scalars.
    #[serde(rename = "R")]
    RealPoint,
    /// A free orbit: complex scalars.
    #[serde(rename = "C")]
    ComplexPoint,
}

impl FieldTag {
    pub fn code(self) -> &'static str {
        match self {
            FieldTag::RealPoint => "R",
            FieldTag::ComplexPoint => "C",
        }
    }

    pub fn from_code(code: &str) -> Result<Self, Error> {
        match code {
            "R" => Ok(FieldTag::RealPoint),
            "C" => Ok(FieldTag::ComplexPoint),
            other => Err(Error::Parse(format!("unknown field tag {other:?}, expected \"R\" or \"C\""))),
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// Scalars of one of the two point fibers.
pub trait PointField: Field {
    const TAG: FieldTag;

    /// Parses the canonical exact-string form (`"p/q"`, `"p"`, or for
    /// Gaussian rationals `"p/q+r/s i"`).
    fn parse_scalar(text: &str) -> Result<Self, Error>;

    /// Canonical exact-string form. `parse_scalar(format_scalar(x)) == x`.
    fn format_scalar(&self) -> String;

    fn from_rational(value: Rational) -> Self;

    /// The value as a rational if it lies in the real subfield.
    fn to_rational(&self) -> Option<Rational>;

    /// An exact square root inside the field, when one exists.
    fn exact_sqrt(&self) -> Option<Self>;

    fn from_i64(value: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(value)))
    }

    /// Sign of a real value; `None` when the value is not real or the field
    /// carries no order.
    fn real_sign(&self) -> Option<Ordering> {
        if Self::TAG != FieldTag::RealPoint {
            return None;
        }
        self.to_rational().map(|q| q.cmp(&Rational::zero()))
    }
}

fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    if text.is_empty() {
        return Err(bad());
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

fn format_rational(value: &Rational) -> String {
    // Ratio keeps itself reduced with a positive denominator.
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer().sqrt();
    let d = value.denom().sqrt();
    if &(&n * &n) == value.numer() && &(&d * &d) == value.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl PointField for Rational {
    const TAG: FieldTag = FieldTag::RealPoint;

    fn parse_scalar(text: &str) -> Result<Self, Error> {
        parse_rational(text)
    }

    fn format_scalar(&self) -> String {
        format_rational(self)
    }

    fn from_rational(value: Rational) -> Self {
        value
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn exact_sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

impl PointField for GaussianRational {
    const TAG: FieldTag = FieldTag::ComplexPoint;

    fn parse_scalar(text: &str) -> Result<Self, Error> {
        let trimmed = text.trim();
        let Some(body) = trimmed.strip_suffix('i') else {
            return Ok(Complex::new(parse_rational(trimmed)?, Rational::zero()));
        };
        let body = body.trim_end();
        // The separator is the last sign that is not the leading one; signs
        // never appear inside a denominator.
        let split = body
            .char_indices()
            .rfind(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        match split {
            Some(at) => {
                let re = parse_rational(&body[..at])?;
                let im_text = body[at..].trim();
                let im_text = im_text.strip_prefix('+').unwrap_or(im_text);
                let im = if im_text.trim().is_empty() || im_text.trim() == "-" {
                    let unit = Rational::one();
                    if im_text.trim() == "-" { -unit } else { unit }
                } else {
                    parse_rational(im_text)?
                };
                Ok(Complex::new(re, im))
            }
            None => {
                let im = match body.trim() {
                    "" | "+" => Rational::one(),
                    "-" => -Rational::one(),
                    other => parse_rational(other)?,
                };
                Ok(Complex::new(Rational::zero(), im))
            }
        }
    }

    fn format_scalar(&self) -> String {
        let re = format_rational(&self.re);
        if self.im.is_negative() {
            format!("{re}-{} i", format_rational(&-self.im.clone()))
        } else {
            format!("{re}+{} i", format_rational(&self.im))
        }
    }

    fn from_rational(value: Rational) -> Self {
        Complex::new(value, Rational::zero())
    }

    fn to_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn exact_sqrt(&self) -> Option<Self> {
        // sqrt(x + iy) = u + iv with u = sqrt((|z| + x)/2), v = sign(y) sqrt((|z| - x)/2).
        let norm = rational_sqrt(&(&self.re * &self.re + &self.im * &self.im))?;
        let two = Rational::from_integer(BigInt::from(2));
        let u = rational_sqrt(&((&norm + &self.re) / &two))?;
        let mut v = rational_sqrt(&((&norm - &self.re) / &two))?;
        if self.im.is_negative() {
            v = -v;
        }
        let root = Complex::new(u, v);
        (&root * &root == *self).then_some(root)
    }
}

/// `(-1)^(a*b)` for parities `a, b` in `{0, 1}`.
pub(crate) fn koszul_sign<F: Field>(a: u8, b: u8) -> F {
    if a & b & 1 == 1 {
        -F::one()
    } else {
        F::one()
    }
}
