//! Field elements: exact rationals with a tagged float64 fallback.
//!
//! Arithmetic between two exact values stays exact. As soon as a numeric
//! operand takes part, the result is numeric. Zero tests and equality on
//! numeric values use the global tolerance (see [`tolerance`]).

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;
use core::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Default absolute tolerance for the numeric backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695);

/// Current absolute tolerance used by every numeric zero test.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(AtomicOrdering::Relaxed))
}

/// Replace the global tolerance. Non-positive or non-finite values are ignored.
pub fn set_tolerance(tol: f64) {
    if tol.is_finite() && tol > 0.0 {
        TOLERANCE_BITS.store(tol.to_bits(), AtomicOrdering::Relaxed);
    }
}

/// Which arithmetic produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Backend {
    Exact,
    Numeric,
}

impl Backend {
    /// Numeric wins: combining any numeric result taints the whole.
    pub fn join(self, other: Backend) -> Backend {
        if self == Backend::Numeric || other == Backend::Numeric {
            Backend::Numeric
        } else {
            Backend::Exact
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Numeric => "numeric",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(BigRational),
    Numeric(f64),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num/den` as an exact rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// A numeric value. Non-finite inputs are rejected.
    pub fn numeric(v: f64) -> Result<Self, Error> {
        if v.is_finite() {
            Ok(Scalar::Numeric(v))
        } else {
            Err(Error::Parse(alloc::format!("non-finite numeric scalar {v}")))
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Numeric(_) => Backend::Numeric,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Numeric(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Numeric(v) => *v,
        }
    }

    /// Same value on the numeric backend.
    pub fn to_numeric(&self) -> Scalar {
        Scalar::Numeric(self.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Numeric(v) => v.abs() <= tolerance(),
        }
    }

    pub fn is_one(&self) -> bool {
        (self - &Scalar::one()).is_zero()
    }

    /// Strictly positive; numeric values must clear the tolerance.
    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Numeric(v) => *v > tolerance(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Numeric(v) => *v < -tolerance(),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Numeric(v) => Scalar::Numeric(v.abs()),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Exact(r) => Scalar::Exact(r.recip()),
            Scalar::Numeric(v) => Scalar::Numeric(1.0 / v),
        })
    }

    /// Exact square root when the value is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        let r = self.as_rational()?;
        if r.is_negative() {
            return None;
        }
        let n = exact_isqrt(r.numer())?;
        let d = exact_isqrt(r.denom())?;
        Some(Scalar::Exact(BigRational::new(n, d)))
    }

    /// Square root: exact when possible, numeric otherwise.
    /// Returns `None` for negative inputs.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_negative() {
            return None;
        }
        if let Some(s) = self.sqrt_exact() {
            return Some(s);
        }
        Some(Scalar::Numeric(libm::sqrt(self.to_f64().max(0.0))))
    }

    /// Total order for sorting. Numeric comparisons treat values within the
    /// tolerance as equal.
    pub fn cmp_approx(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                if (a - b).abs() <= tolerance() {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// Parse `"p/q"`, an integer, or a decimal (with optional exponent) as an
    /// exact rational.
    pub fn parse_exact(s: &str) -> Result<Scalar, Error> {
        parse_rational(s.trim())
            .map(Scalar::Exact)
            .ok_or_else(|| Error::Parse(alloc::format!("invalid scalar {s:?}")))
    }

    /// Parse the same syntax onto the numeric backend.
    pub fn parse_numeric(s: &str) -> Result<Scalar, Error> {
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n = f64::from_str(n.trim()).map_err(|_| Error::Parse(alloc::format!("invalid scalar {s:?}")))?;
            let d = f64::from_str(d.trim()).map_err(|_| Error::Parse(alloc::format!("invalid scalar {s:?}")))?;
            if d == 0.0 {
                return Err(Error::Parse(alloc::format!("zero denominator in {s:?}")));
            }
            return Scalar::numeric(n / d);
        }
        let v = f64::from_str(t).map_err(|_| Error::Parse(alloc::format!("invalid scalar {s:?}")))?;
        Scalar::numeric(v)
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n.trim())?;
        let d = parse_rational(d.trim())?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], i64::from_str(&s[pos + 1..]).ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut all = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 4096 {
        return None;
    }
    let ten = BigInt::from(10);
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * pow)
    } else {
        BigRational::new(numer, pow)
    };
    if negative {
        value = -value;
    }
    Some(value)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Numeric(v) => {
                let s = v.to_string();
                f.write_str(&s)
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tolerance(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Exact(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Numeric(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Numeric(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self) $op rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on exact division by zero.
    fn div(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Exact(a / b)
            }
            _ => Scalar::Numeric(self.to_f64() / rhs.to_f64()),
        }
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Numeric(v) => Scalar::Numeric(-v),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.clone().neg()
    }
}

/// Largest absolute value in a sequence, `0` when empty. Stays exact when
/// every element is exact.
pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    values.into_iter().fold(Scalar::zero(), |acc, v| {
        let a = v.abs();
        if a.cmp_approx(&acc) == Ordering::Greater || (!a.is_exact() && acc.is_exact() && acc.is_zero()) {
            a
        } else {
            acc
        }
    })
}
