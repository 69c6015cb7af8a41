//! Money amounts.
//!
//! The firm equations are written against the [`Amount`] trait so they can be
//! evaluated either on plain `f64` values or on [`Money`], which carries the
//! natural logarithm of the amount. With a money exponent above one, profits
//! compound geometrically and leave the `f64` range within a few dozen
//! periods; `Money` keeps the magnitude so market shares stay exact ratios
//! instead of `inf / inf`.

use std::fmt;

/// Non-negative quantity that the firm equations operate on.
pub trait Amount: Copy + fmt::Debug {
    const ZERO: Self;

    fn is_zero(self) -> bool;

    /// `self * factor`, `factor >= 0`.
    fn scale(self, factor: f64) -> Self;

    /// `self ^ exponent`, `exponent > 0`.
    fn pow(self, exponent: f64) -> Self;

    /// `self * base ^ exponent`, `base > 0`.
    fn scale_pow(self, base: f64, exponent: f64) -> Self;

    fn plus(self, other: Self) -> Self;

    /// Normalized shares `(self / (self + other), other / (self + other))`.
    ///
    /// Not finite when both sides are zero or both saturated.
    fn split(self, other: Self) -> (f64, f64);
}

impl Amount for f64 {
    const ZERO: Self = 0.0;

    fn is_zero(self) -> bool {
        self == 0.0
    }

    fn scale(self, factor: f64) -> Self {
        self * factor
    }

    fn pow(self, exponent: f64) -> Self {
        self.powf(exponent)
    }

    fn scale_pow(self, base: f64, exponent: f64) -> Self {
        base.powf(exponent) * self
    }

    fn plus(self, other: Self) -> Self {
        self + other
    }

    fn split(self, other: Self) -> (f64, f64) {
        let total = self + other;
        (self / total, other / total)
    }
}

/// A non-negative amount stored as its natural logarithm.
///
/// Zero is `ln = -inf`. Amounts far outside the `f64` range are representable;
/// [`Money::amount`] saturates to `0` or `inf` for those.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct Money {
    ln: f64,
}

impl Money {
    pub const ZERO: Money = Money {
        ln: f64::NEG_INFINITY,
    };

    /// Panics on negative or NaN input.
    pub fn from_amount(amount: f64) -> Self {
        assert!(amount >= 0.0, "money amount must be >= 0, got {amount}");
        Money { ln: amount.ln() }
    }

    pub fn from_ln(ln: f64) -> Self {
        assert!(!ln.is_nan(), "money log-magnitude must not be NaN");
        Money { ln }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    /// The amount as an `f64`, saturating outside the representable range.
    pub fn amount(self) -> f64 {
        self.ln.exp()
    }

    /// True when [`Money::amount`] is an accurate (normal, finite) `f64`.
    pub fn fits_f64(self) -> bool {
        let a = self.amount();
        (a == 0.0 && self.ln == f64::NEG_INFINITY) || (a.is_finite() && a >= f64::MIN_POSITIVE)
    }
}

impl Amount for Money {
    const ZERO: Self = Money::ZERO;

    fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    fn scale(self, factor: f64) -> Self {
        if factor == 0.0 || self.is_zero() {
            return Money::ZERO;
        }
        Money::from_ln(self.ln + factor.ln())
    }

    fn pow(self, exponent: f64) -> Self {
        if self.is_zero() {
            return Money::ZERO;
        }
        Money::from_ln(self.ln * exponent)
    }

    fn scale_pow(self, base: f64, exponent: f64) -> Self {
        if self.is_zero() {
            return Money::ZERO;
        }
        Money::from_ln(self.ln + exponent * base.ln())
    }

    fn plus(self, other: Self) -> Self {
        let (hi, lo) = if self.ln >= other.ln {
            (self.ln, other.ln)
        } else {
            (other.ln, self.ln)
        };
        if lo == f64::NEG_INFINITY || hi == f64::INFINITY {
            return Money { ln: hi };
        }
        Money::from_ln(hi + (lo - hi).exp().ln_1p())
    }

    fn split(self, other: Self) -> (f64, f64) {
        // logistic of the log-ratio; symmetric inputs give exactly 0.5
        let diff = other.ln - self.ln;
        (1.0 / (1.0 + diff.exp()), 1.0 / (1.0 + (-diff).exp()))
    }
}

impl fmt::Debug for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Money({self})")
    }
}

/// Scientific notation with 17 significant digits.
///
/// Values that fit an `f64` print exactly like `format!("{:.16e}", amount)`;
/// larger or smaller magnitudes are rendered from the logarithm.
impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fits_f64() {
            return write!(f, "{:.16e}", self.amount());
        }
        if self.ln == f64::INFINITY {
            return write!(f, "inf");
        }
        let log10 = self.ln / std::f64::consts::LN_10;
        let mut exponent = log10.floor();
        let mut mantissa = format!("{:.16}", 10f64.powf(log10 - exponent));
        if mantissa.starts_with("10") {
            exponent += 1.0;
            mantissa = format!("{:.16}", 1.0);
        }
        write!(f, "{mantissa}e{exponent}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_absorbing() {
        assert!(Money::ZERO.pow(1.5).is_zero());
        assert!(Money::ZERO.scale_pow(4.0, 2.0).is_zero());
        assert!(Money::from_amount(3.0).scale(0.0).is_zero());
        assert_eq!(Money::ZERO.plus(Money::from_amount(2.0)).amount(), 2.0);
    }

    #[test]
    fn log_arithmetic_tracks_plain_arithmetic() {
        let a = Money::from_amount(3.0);
        let b = Money::from_amount(1.0);
        assert!((a.scale_pow(4.0, 0.5).amount() - 6.0).abs() < 1e-14);
        assert!((a.pow(2.0).scale(2.0).amount() - 18.0).abs() < 1e-13);
        assert!((a.plus(b).amount() - 4.0).abs() < 1e-15);
        let (h, m) = a.split(b);
        assert!((h - 0.75).abs() < 1e-15 && (m - 0.25).abs() < 1e-15);
    }

    #[test]
    fn split_handles_magnitudes_beyond_f64() {
        let big = Money::from_ln(5000.0);
        let bigger = Money::from_ln(5000.0 + 2.0_f64.ln());
        assert!(big.amount().is_infinite());
        let (h, m) = big.split(bigger);
        assert!((h - 1.0 / 3.0).abs() < 1e-12);
        assert!((m - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(big.split(big), (0.5, 0.5));
    }

    #[test]
    fn split_against_zero() {
        let p = Money::from_amount(2.0);
        assert_eq!(p.split(Money::ZERO), (1.0, 0.0));
        assert_eq!(Money::ZERO.split(p), (0.0, 1.0));
        assert!(Money::ZERO.split(Money::ZERO).0.is_nan());
    }

    #[test]
    fn display_in_and_out_of_range() {
        assert_eq!(Money::ZERO.to_string(), "0.0000000000000000e0");
        assert_eq!(
            Money::from_amount(0.75).to_string(),
            format!("{:.16e}", 0.75)
        );
        let huge = Money::from_ln(1000.5 * std::f64::consts::LN_10);
        let s = huge.to_string();
        assert!(s.starts_with("3.16227766") && s.ends_with("e1000"), "{s}");
        let tiny = Money::from_ln(-1000.0 * std::f64::consts::LN_10 + 0.5);
        let s = tiny.to_string();
        assert!(
            s.starts_with("1.6487212707") && s.ends_with("e-1000"),
            "{s}"
        );
    }
}
