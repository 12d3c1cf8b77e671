//! Scalar abstraction for edge weights.
//!
//! Every algorithm in this crate is generic over [`Weight`]. Weights must be
//! exactly comparable and closed under `+ - * /`, which rules out floats:
//! tie-breaking and the closed-form lower-bound identities are checked as
//! equalities. Implementations are provided for `Ratio<i32>`, `Ratio<i64>`,
//! `Ratio<i128>` and `BigRational`.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::WmstError;

/// An exact, totally ordered scalar usable as an edge weight.
pub trait Weight:
    Clone + Ord + Debug + Display + Send + Sync + Signed + 'static
{
    /// The integer `v` as a weight.
    fn from_int(v: i64) -> Self;

    /// Builds `numer / denom`, or `None` when it does not fit the representation.
    fn from_fraction(numer: &BigInt, denom: &BigInt) -> Option<Self>;

    /// Lowest-terms numerator and (positive) denominator.
    fn to_fraction(&self) -> (BigInt, BigInt);

    /// Nearest `f64`; used only for statistics and reporting.
    fn as_f64(&self) -> f64;

    /// `numer / denom` for small integers.
    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }
}

macro_rules! impl_weight_for_ratio {
    ($($int:ty),*) => {$(
        impl Weight for Ratio<$int> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(<$int>::try_from(v).expect("integer weight out of range"))
            }

            fn from_fraction(numer: &BigInt, denom: &BigInt) -> Option<Self> {
                if denom.is_zero() {
                    return None;
                }
                let r = BigRational::new(numer.clone(), denom.clone());
                let n = <$int>::try_from(r.numer().clone()).ok()?;
                let d = <$int>::try_from(r.denom().clone()).ok()?;
                Some(Ratio::new_raw(n, d))
            }

            fn to_fraction(&self) -> (BigInt, BigInt) {
                (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn as_f64(&self) -> f64 {
                ratio_to_f64(&BigInt::from(*self.numer()), &BigInt::from(*self.denom()))
            }
        }
    )*};
}

impl_weight_for_ratio!(i32, i64, i128);

impl Weight for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_fraction(numer: &BigInt, denom: &BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(BigRational::new(numer.clone(), denom.clone()))
    }

    fn to_fraction(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }

    fn as_f64(&self) -> f64 {
        ratio_to_f64(self.numer(), self.denom())
    }
}

fn ratio_to_f64(numer: &BigInt, denom: &BigInt) -> f64 {
    if let (Some(n), Some(d)) = (numer.to_f64(), denom.to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
            return n / d;
        }
    }
    // Shift both sides down so the quotient keeps 53 significant bits.
    let (q, r) = numer.div_rem(denom);
    let frac = {
        let shift = denom.bits().saturating_sub(60);
        let d = (denom >> shift).to_f64().unwrap_or(f64::INFINITY);
        let r = (&r >> shift).to_f64().unwrap_or(0.0);
        r / d
    };
    q.to_f64().unwrap_or(f64::NAN) + frac
}

/// Parses `"a/b"`, `"a"` or a decimal literal such as `"0.125"` or `"-2.5"`
/// into an exact fraction.
pub fn parse_fraction(text: &str) -> Result<(BigInt, BigInt), WmstError> {
    let bad = || WmstError::ParseWeight(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        let r = BigRational::new(n, d);
        return Ok((r.numer().clone(), r.denom().clone()));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        if !frac_part.chars().all(|c| c.is_ascii_digit())
            || !digits.chars().all(|c| c.is_ascii_digit())
            || (digits.is_empty() && frac_part.is_empty())
        {
            return Err(bad());
        }
        let joined = format!("{digits}{frac_part}");
        let mut n: BigInt = if joined.is_empty() {
            BigInt::zero()
        } else {
            joined.parse().map_err(|_| bad())?
        };
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10u8), frac_part.len());
        let r = BigRational::new(n, d);
        return Ok((r.numer().clone(), r.denom().clone()));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok((n, BigInt::one()))
}

/// Parses a weight literal directly into `W`.
pub fn parse_weight<W: Weight>(text: &str) -> Result<W, WmstError> {
    let (n, d) = parse_fraction(text)?;
    W::from_fraction(&n, &d).ok_or_else(|| WmstError::WeightOutOfRange(text.to_string()))
}

/// Renders a weight as `"num/den"`; the denominator is always present.
pub fn format_fraction<W: Weight>(w: &W) -> String {
    let (n, d) = w.to_fraction();
    format!("{n}/{d}")
}

/// Converts between two weight representations, if the value fits.
pub fn convert<A: Weight, B: Weight>(w: &A) -> Option<B> {
    let (n, d) = w.to_fraction();
    B::from_fraction(&n, &d)
}

/// Exact sum of a sequence of weights.
pub fn sum<'a, W: Weight, I: IntoIterator<Item = &'a W>>(items: I) -> W {
    items.into_iter().fold(W::zero(), |acc, w| acc + w.clone())
}
