//! The characteristic polynomial `X_p(x) = x^p - (x^(p-1) + ... + x) - 1`.
//!
//! Its unique root in (1, 2) is the p-golden ratio Φ_p. Roots are enclosed by
//! decimal brackets whose endpoint signs are evaluated in exact integer
//! arithmetic, so the enclosure does not depend on any rounding. Newton steps
//! are used only to pick the next probe point inside the bracket.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::mpnum::{div_round, pow10, MPReal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharPolyError {
    #[error("order p = {0} is not supported; the golden ratio needs p >= 2")]
    OrderTooSmall(u32),
    #[error("digits must be at least 1")]
    ZeroDigits,
    #[error("segment length must be positive, got {0}")]
    NonPositiveTotal(String),
}

/// `X_p` for a fixed order `p >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharPoly {
    p: u32,
}

impl CharPoly {
    pub fn new(p: u32) -> Result<Self, CharPolyError> {
        if p < 2 {
            return Err(CharPolyError::OrderTooSmall(p));
        }
        Ok(CharPoly { p })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    /// Coefficients from degree 0 upwards: `[-1, -1, ..., -1, 1]`.
    pub fn coefficients(&self) -> Vec<i64> {
        let mut c = vec![-1; self.p as usize];
        c.push(1);
        c
    }

    fn derivative_coefficients(&self) -> Vec<i64> {
        self.coefficients()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as i64)
            .collect()
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let num = homogeneous_horner(&self.coefficients(), x.numer(), x.denom());
        BigRational::new(num, num_traits::pow(x.denom().clone(), self.p as usize))
    }

    /// Sign of `X_p(m / 10^scale)`, exact.
    pub fn sign_at(&self, x: &MPReal) -> Ordering {
        let d = pow10(x.scale());
        homogeneous_horner(&self.coefficients(), x.mantissa(), &d).cmp(&BigInt::zero())
    }

    /// Horner evaluation in fixed-point arithmetic at the scale of `x`.
    pub fn eval_mp(&self, x: &MPReal) -> MPReal {
        let scale = x.scale();
        self.coefficients()
            .iter()
            .rev()
            .fold(MPReal::zero(scale), |acc, &c| {
                &(&acc * x) + &MPReal::from_int(c, scale)
            })
    }
}

/// `d^deg * P(n / d)` for integer coefficients, lowest degree first.
fn homogeneous_horner(coeffs: &[i64], n: &BigInt, d: &BigInt) -> BigInt {
    let mut iter = coeffs.iter().rev();
    let mut acc = BigInt::from(*iter.next().expect("nonempty polynomial"));
    let mut d_pow = BigInt::one();
    for &c in iter {
        d_pow *= d;
        acc = acc * n + &d_pow * c;
    }
    acc
}

/// `X_p(x)` in exact rational arithmetic.
pub fn eval_charpoly(p: u32, x: &BigRational) -> Result<BigRational, CharPolyError> {
    Ok(CharPoly::new(p)?.eval(x))
}

/// Extra digits so that rounding Φ_p still leaves `X_p` small: `X_p'(Φ_p)` is
/// about `2^p`.
pub fn slope_guard(p: u32) -> u32 {
    (p as f64 * std::f64::consts::LOG10_2).ceil() as u32
}

/// Certified enclosure of Φ_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRatio {
    p: u32,
    digits: u32,
    lo: MPReal,
    hi: MPReal,
    value: MPReal,
}

impl GoldenRatio {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Lower endpoint; `X_p(lo) < 0`.
    pub fn lo(&self) -> &MPReal {
        &self.lo
    }

    /// Upper endpoint; `X_p(hi) > 0`.
    pub fn hi(&self) -> &MPReal {
        &self.hi
    }

    /// Midpoint rounded to `digits`.
    pub fn value(&self) -> &MPReal {
        &self.value
    }

    /// Exact midpoint of the enclosure, one digit finer than the endpoints.
    pub fn midpoint(&self) -> MPReal {
        let scale = self.lo.scale() + 1;
        (&self.lo + &self.hi)
            .with_scale(scale)
            .div_int(2)
            .expect("nonzero divisor")
    }

    pub fn width(&self) -> MPReal {
        &self.hi - &self.lo
    }

    /// Re-evaluates the endpoint signs exactly.
    pub fn certify(&self) -> bool {
        let poly = CharPoly { p: self.p };
        poly.sign_at(&self.lo) == Ordering::Less && poly.sign_at(&self.hi) == Ordering::Greater
    }
}

/// Enclosure of Φ_p with width at most `10^-(digits + 5)`.
///
/// The bracket starts at `[1, 2]` (`X_p(1) = 1 - p < 0`, `X_p(2) = 1 > 0`) and
/// is tightened on integer mantissas at a scale that also absorbs the slope of
/// `X_p`, so evaluating `X_p` at the midpoint stays below `10^-(digits + 5)`.
pub fn golden_ratio(p: u32, digits: u32) -> Result<GoldenRatio, CharPolyError> {
    let poly = CharPoly::new(p)?;
    if digits == 0 {
        return Err(CharPolyError::ZeroDigits);
    }
    let scale = digits + 5 + slope_guard(p);
    let denom = pow10(scale);
    let coeffs = poly.coefficients();
    let deriv = poly.derivative_coefficients();
    let sign = |m: &BigInt| homogeneous_horner(&coeffs, m, &denom).cmp(&BigInt::zero());

    let mut lo = denom.clone();
    let mut hi = &denom << 1u32;
    let mut x = hi.clone();
    while &hi - &lo > BigInt::one() {
        // Newton in mantissa units: step = d^p X(x) / (d^(p-1) X'(x))
        let fx = homogeneous_horner(&coeffs, &x, &denom);
        let dfx = homogeneous_horner(&deriv, &x, &denom);
        let mut candidate = if dfx.is_zero() {
            (&lo + &hi) >> 1u32
        } else {
            let step = div_round(&fx, &dfx);
            if step.is_zero() {
                // converged to the last unit; probe the neighbour toward the root
                &x - fx.signum()
            } else {
                &x - step
            }
        };
        if candidate <= lo || candidate >= hi {
            candidate = (&lo + &hi) >> 1u32;
        }
        match sign(&candidate) {
            Ordering::Less => lo = candidate.clone(),
            Ordering::Greater => hi = candidate.clone(),
            // X_p has no rational roots for p >= 2
            Ordering::Equal => unreachable!("rational root of X_{p}"),
        }
        x = candidate;
    }

    let lo = MPReal::new(lo, scale);
    let hi = MPReal::new(hi, scale);
    let mut ratio = GoldenRatio {
        p,
        digits,
        lo,
        hi,
        value: MPReal::zero(digits),
    };
    ratio.value = ratio.midpoint().with_scale(digits);
    Ok(ratio)
}

/// A segment cut into `p` pieces whose consecutive ratios all equal Φ_p.
///
/// Lengths are held at `digits + guard` fractional digits (see
/// [`SegmentDivision::guard_digits`]) so that ratios of short pieces keep
/// `digits` of accuracy; [`SegmentDivision::rendered_lengths`] rounds them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentDivision {
    pub p: u32,
    pub digits: u32,
    pub total: MPReal,
    pub phi: MPReal,
    pub lengths: Vec<MPReal>,
}

impl SegmentDivision {
    pub fn guard_digits(p: u32) -> u32 {
        crate::mpnum::GUARD_DIGITS + slope_guard(p)
    }

    pub fn rendered_lengths(&self) -> Vec<String> {
        self.lengths.iter().map(|a| a.render(self.digits)).collect()
    }

    pub fn sum(&self) -> MPReal {
        let scale = self.lengths[0].scale();
        self.lengths
            .iter()
            .fold(MPReal::zero(scale), |acc, a| &acc + a)
    }
}

/// Divides `total` into `a_1 < ... < a_p` with `a_(k+1) / a_k = Φ_p` and
/// `total / a_p = Φ_p`.
pub fn golden_section(
    p: u32,
    total: &MPReal,
    digits: u32,
) -> Result<SegmentDivision, CharPolyError> {
    CharPoly::new(p)?;
    if !total.is_positive() {
        return Err(CharPolyError::NonPositiveTotal(total.to_string()));
    }
    if digits == 0 {
        return Err(CharPolyError::ZeroDigits);
    }
    let scale = digits + SegmentDivision::guard_digits(p);
    let phi = golden_ratio(p, scale)?.midpoint().with_scale(scale);
    let one = MPReal::one(scale);
    // geometric series: total = a_1 (Φ^p - 1) / (Φ - 1)
    let a1 = (total.with_scale(scale) * (&phi - &one))
        .checked_div(&(phi.powi(p) - &one))
        .expect("Φ^p > 1");
    let mut lengths = Vec::with_capacity(p as usize);
    let mut a = a1;
    for _ in 0..p {
        let next = &a * &phi;
        lengths.push(a);
        a = next;
    }
    Ok(SegmentDivision {
        p,
        digits,
        total: total.clone(),
        phi,
        lengths,
    })
}
