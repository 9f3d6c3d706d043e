//! Numeric scalars used throughout the crate.
//!
//! Every quantity in the game (powers, allocations, flows, LP values) is a
//! [`Scalar`]. Two implementations are provided:
//!
//! * [`Exact`] (`Ratio<i64>`), used whenever the inputs are integers or short
//!   decimals. Comparisons are exact and the tolerance is zero.
//! * `f64`, used for genuinely real-valued inputs. Comparisons use an absolute
//!   tolerance, [`DEFAULT_TOLERANCE`] unless configured otherwise.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{AddAssign, SubAssign};

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Exact = Ratio<i64>;

/// Absolute tolerance applied to `f64` comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Signed + Copy + PartialOrd + Debug + Display + AddAssign + SubAssign + Send + Sync + 'static
{
    /// Tolerance used when none is configured: zero for exact scalars.
    fn default_tolerance() -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Converts a float through its shortest decimal form. `None` for
    /// non-finite input or, for [`Exact`], values out of range.
    fn from_f64(v: f64) -> Option<Self>;

    fn is_integral(&self) -> bool;

    /// Converts a JSON number or a `"p/q"` string. Returns `None` when the
    /// value cannot be represented (for [`Exact`]: overflow or too many
    /// decimal digits).
    fn from_json(v: &serde_json::Value) -> Option<Self>;

    /// Lossless JSON form: a number where one round-trips, else `"p/q"`.
    fn to_json(&self) -> serde_json::Value;

    /// Three-way comparison treating values within `tol` as equal.
    fn cmp_tol(&self, other: &Self, tol: &Self) -> Ordering {
        let diff = *self - *other;
        if diff.abs() <= *tol {
            Ordering::Equal
        } else if diff > Self::zero() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn approx_eq(&self, other: &Self, tol: &Self) -> bool {
        self.cmp_tol(other, tol) == Ordering::Equal
    }

    /// Clamps values within `tol` of zero to exactly zero.
    fn snap(self, tol: &Self) -> Self {
        if self.abs() <= *tol {
            Self::zero()
        } else {
            self
        }
    }
}

impl Scalar for Exact {
    fn default_tolerance() -> Self {
        Exact::zero()
    }

    fn from_i64(v: i64) -> Self {
        Exact::from_integer(v)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64) -> Option<Self> {
        if v.is_finite() {
            parse_decimal(&v.to_string())
        } else {
            None
        }
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        let n = match v {
            serde_json::Value::Number(n) => n,
            serde_json::Value::String(s) => return parse_rational(s),
            _ => return None,
        };
        if let Some(i) = n.as_i64() {
            return Some(Exact::from_integer(i));
        }
        if n.is_u64() {
            return None;
        }
        // Display of f64 yields the shortest decimal that round-trips, which
        // is exactly what the user wrote for ordinary inputs such as `0.1`.
        parse_decimal(&n.as_f64()?.to_string())
    }

    fn to_json(&self) -> serde_json::Value {
        if self.is_integer() {
            return serde_json::Value::from(*self.numer());
        }
        let f = Scalar::to_f64(self);
        if parse_decimal(&f.to_string()) == Some(*self) {
            serde_json::Value::from(f)
        } else {
            serde_json::Value::from(format!("{}/{}", self.numer(), self.denom()))
        }
    }
}

impl Scalar for f64 {
    fn default_tolerance() -> Self {
        DEFAULT_TOLERANCE
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::Number(n) => n.as_f64(),
            serde_json::Value::String(s) => parse_rational(s).map(|r| Scalar::to_f64(&r)),
            _ => None,
        }
        .filter(|v| v.is_finite())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(*self)
    }
}

/// Parses `"p/q"` or a plain decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Option<Exact> {
    match text.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            (q != 0).then(|| Exact::new(p, q))
        }
        None => parse_decimal(text.trim()),
    }
}

/// Parses a plain decimal literal (`-12.375`) into an exact rational.
pub fn parse_decimal(text: &str) -> Option<Exact> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let frac_part = frac_part.trim_end_matches('0');
    let mut numer: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer.checked_mul(10)?.checked_add(i64::from(b - b'0'))?;
    }
    let denom = 10i64.checked_pow(u32::try_from(frac_part.len()).ok()?)?;
    let value = Exact::new(numer, denom);
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal("0.1"), Some(Exact::new(1, 10)));
        assert_eq!(parse_decimal("-12.375"), Some(Exact::new(-99, 8)));
        assert_eq!(parse_decimal("7"), Some(Exact::from_integer(7)));
        assert_eq!(parse_decimal("2.50"), Some(Exact::new(5, 2)));
        assert_eq!(parse_decimal("1e5"), None);
        assert_eq!(parse_decimal(""), None);
        assert_eq!(parse_decimal("0.00000000000000000000001"), None);
    }

    #[test]
    fn json_numbers_convert() {
        let n: serde_json::Value = serde_json::from_str("0.3").unwrap();
        assert_eq!(Exact::from_json(&n), Some(Exact::new(3, 10)));
        let big: serde_json::Value = serde_json::from_str("18446744073709551615").unwrap();
        assert_eq!(Exact::from_json(&big), None);
        assert_eq!(Exact::new(5, 2).to_json(), serde_json::json!(2.5));
        assert_eq!(Exact::from_integer(4).to_json(), serde_json::json!(4));
        assert_eq!(Exact::new(1, 3).to_json(), serde_json::json!("1/3"));
        assert_eq!(
            Exact::from_json(&serde_json::json!("-2/6")),
            Some(Exact::new(-1, 3))
        );
        assert_eq!(Exact::from_json(&serde_json::json!("1/0")), None);
        assert_eq!(f64::from_json(&serde_json::json!("1/4")), Some(0.25));
        assert_eq!(Exact::from_f64(0.125), Some(Exact::new(1, 8)));
        assert_eq!(Exact::from_f64(f64::NAN), None);
        assert_eq!(Exact::from_json(&serde_json::json!(true)), None);
    }

    #[test]
    fn exact_json_round_trips() {
        for (p, q) in [(1, 3), (7, 2), (-5, 8), (22, 7), (1, 10)] {
            let x = Exact::new(p, q);
            assert_eq!(Exact::from_json(&x.to_json()), Some(x));
        }
    }

    #[test]
    fn tolerance_comparisons() {
        let tol = DEFAULT_TOLERANCE;
        assert_eq!(1.0f64.cmp_tol(&(1.0 + 1e-12), &tol), Ordering::Equal);
        assert_eq!(1.0f64.cmp_tol(&1.1, &tol), Ordering::Less);
        let zero = Exact::zero();
        assert_eq!(
            Exact::new(1, 3).cmp_tol(&Exact::new(1, 3), &zero),
            Ordering::Equal
        );
        assert_eq!(
            Exact::new(1, 3).cmp_tol(&Exact::new(1, 2), &zero),
            Ordering::Less
        );
        assert_eq!((-1e-12f64).snap(&tol), 0.0);
    }
}
