//! Fixed-point decimal reals and complexes.
//!
//! An [`MPReal`] is an exact integer mantissa scaled by a power of ten:
//! `value = mantissa * 10^-scale`. The scale doubles as the working precision:
//! every operation that has to round produces a result whose distance to the
//! exact value (computed from the exact inputs) is at most `10^-scale`.
//!
//! Transcendental functions run on raw fixed-point integers with extra guard
//! digits and round half away from zero once at the end.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest precision accepted by the constant generators.
pub const DEFAULT_MAX_DIGITS: u32 = 100_000;

/// Extra digits carried through compositions of rounded operations.
pub const GUARD_DIGITS: u32 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MpError {
    #[error("digits must be at least 1")]
    ZeroDigits,
    #[error("digits {requested} exceeds the ceiling of {ceiling}")]
    DigitsAboveCeiling { requested: u32, ceiling: u32 },
    #[error("square root of a negative value")]
    NegativeSqrt,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid decimal literal {0:?}")]
    Parse(String),
}

/// Validates a requested precision against `ceiling`.
pub fn check_digits(digits: u32, ceiling: u32) -> Result<(), MpError> {
    if digits == 0 {
        Err(MpError::ZeroDigits)
    } else if digits > ceiling {
        Err(MpError::DigitsAboveCeiling {
            requested: digits,
            ceiling,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), n as usize)
}

/// `n / d` rounded half away from zero.
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if (r.abs() << 1u32) >= d.abs() {
        if n.sign() == d.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Number of decimal digits needed to count `n` items, i.e. `ceil(log10(n))`.
fn log10_ceil(n: u64) -> u32 {
    let mut digits = 0;
    let mut p = 1u64;
    while p < n {
        p = p.saturating_mul(10);
        digits += 1;
    }
    digits
}

/// Fixed-point decimal real.
#[derive(Clone, Debug)]
pub struct MPReal {
    mantissa: BigInt,
    scale: u32,
}

impl MPReal {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        MPReal { mantissa, scale }
    }

    pub fn zero(scale: u32) -> Self {
        MPReal::new(BigInt::zero(), scale)
    }

    pub fn one(scale: u32) -> Self {
        MPReal::from_int(1, scale)
    }

    pub fn from_int(value: impl Into<BigInt>, scale: u32) -> Self {
        MPReal::new(value.into() * pow10(scale), scale)
    }

    /// Rounds an exact rational to `scale` fractional digits.
    pub fn from_ratio(value: &BigRational, scale: u32) -> Self {
        let n = value.numer() * pow10(scale);
        MPReal::new(div_round(&n, value.denom()), scale)
    }

    /// Parses a decimal literal and rounds (or pads) it to `scale` digits.
    pub fn parse(s: &str, scale: u32) -> Result<Self, MpError> {
        Ok(s.parse::<MPReal>()?.with_scale(scale))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Working precision in decimal digits; identical to the scale.
    pub fn digits(&self) -> u32 {
        self.scale
    }

    /// Re-expresses the value with `scale` fractional digits. Widening is
    /// exact, narrowing rounds half away from zero.
    pub fn with_scale(&self, scale: u32) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => MPReal::new(&self.mantissa * pow10(scale - self.scale), scale),
            Ordering::Less => {
                MPReal::new(div_round(&self.mantissa, &pow10(self.scale - scale)), scale)
            }
        }
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), pow10(self.scale))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn abs(&self) -> Self {
        MPReal::new(self.mantissa.abs(), self.scale)
    }

    /// Exact product; the result scale is the sum of the operand scales.
    pub fn mul_exact(&self, rhs: &MPReal) -> Self {
        MPReal::new(&self.mantissa * &rhs.mantissa, self.scale + rhs.scale)
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        MPReal::new(&self.mantissa * k.into(), self.scale)
    }

    pub fn div_int(&self, k: impl Into<BigInt>) -> Result<Self, MpError> {
        let k = k.into();
        if k.is_zero() {
            return Err(MpError::DivisionByZero);
        }
        Ok(MPReal::new(div_round(&self.mantissa, &k), self.scale))
    }

    /// Quotient rounded to the larger of the two scales.
    pub fn checked_div(&self, rhs: &MPReal) -> Result<Self, MpError> {
        if rhs.is_zero() {
            return Err(MpError::DivisionByZero);
        }
        let scale = self.scale.max(rhs.scale);
        // (a/10^sa) / (b/10^sb) * 10^s = a * 10^(s + sb - sa) / b
        let n = &self.mantissa * pow10(scale + rhs.scale);
        let d = &rhs.mantissa * pow10(self.scale);
        Ok(MPReal::new(div_round(&n, &d), scale))
    }

    /// `self^k` by repeated squaring, each step rounded at `self.scale`.
    pub fn powi(&self, k: u32) -> Self {
        let mut result = MPReal::one(self.scale);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn aligned(&self, other: &MPReal) -> (BigInt, BigInt, u32) {
        let scale = self.scale.max(other.scale);
        (
            self.with_scale(scale).mantissa,
            other.with_scale(scale).mantissa,
            scale,
        )
    }

    /// Square root; error at most half a unit in the last place.
    pub fn sqrt(&self) -> Result<Self, MpError> {
        if self.is_negative() {
            return Err(MpError::NegativeSqrt);
        }
        // floor(sqrt(m * 10^(s + 2))) carries one extra digit for rounding.
        let s = self.scale;
        let radicand = &self.mantissa * pow10(s + 2);
        let root = radicand.sqrt();
        let mut q = &root / 10u8;
        let last = (&root % 10u8).to_u8().unwrap_or(0);
        if last >= 5 {
            q += 1;
        }
        Ok(MPReal::new(q, s))
    }

    pub fn exp(&self) -> Self {
        let w = self.scale + GUARD_DIGITS;
        let x = self.with_scale(w);
        MPReal::new(exp_raw(&x.mantissa, w), w).with_scale(self.scale)
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    /// `(sin x, cos x)` with argument reduction modulo 2π at guard precision.
    pub fn sin_cos(&self) -> (Self, Self) {
        let w = self.scale + GUARD_DIGITS;
        let x = self.with_scale(w);
        let (s, c) = sin_cos_raw(&x.mantissa, w);
        (
            MPReal::new(s, w).with_scale(self.scale),
            MPReal::new(c, w).with_scale(self.scale),
        )
    }

    /// Decimal rendering rounded to exactly `digits` fractional digits.
    pub fn render(&self, digits: u32) -> String {
        self.with_scale(digits).to_string()
    }
}

impl PartialEq for MPReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MPReal {}

impl PartialOrd for MPReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MPReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for MPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.abs().to_str_radix(10);
        let scale = self.scale as usize;
        let padded = if digits.len() <= scale {
            format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - scale);
        if self.mantissa.is_negative() {
            f.write_str("-")?;
        }
        if scale == 0 {
            write!(f, "{int_part}")
        } else {
            write!(f, "{int_part}.{frac_part}")
        }
    }
}

impl FromStr for MPReal {
    type Err = MpError;

    /// Parses `[-+]digits[.digits]`; the scale is the number of fractional
    /// digits written.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MpError::Parse(s.to_string());
        let t = s.trim();
        let (negative, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let joined = format!("{int_part}{frac_part}");
        let mut mantissa = if joined.is_empty() {
            BigInt::zero()
        } else {
            joined.parse::<BigInt>().map_err(|_| bad())?
        };
        if negative {
            mantissa = -mantissa;
        }
        Ok(MPReal::new(mantissa, frac_part.len() as u32))
    }
}

impl Neg for MPReal {
    type Output = MPReal;
    fn neg(self) -> MPReal {
        MPReal::new(-self.mantissa, self.scale)
    }
}

impl Neg for &MPReal {
    type Output = MPReal;
    fn neg(self) -> MPReal {
        MPReal::new(-&self.mantissa, self.scale)
    }
}

impl Add for &MPReal {
    type Output = MPReal;
    fn add(self, rhs: &MPReal) -> MPReal {
        let (a, b, s) = self.aligned(rhs);
        MPReal::new(a + b, s)
    }
}

impl Sub for &MPReal {
    type Output = MPReal;
    fn sub(self, rhs: &MPReal) -> MPReal {
        let (a, b, s) = self.aligned(rhs);
        MPReal::new(a - b, s)
    }
}

/// Product rounded to the larger of the two scales.
impl Mul for &MPReal {
    type Output = MPReal;
    fn mul(self, rhs: &MPReal) -> MPReal {
        let scale = self.scale.max(rhs.scale);
        self.mul_exact(rhs).with_scale(scale)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for MPReal {
            type Output = MPReal;
            fn $method(self, rhs: MPReal) -> MPReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MPReal> for MPReal {
            type Output = MPReal;
            fn $method(self, rhs: &MPReal) -> MPReal {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// π to `digits` fractional digits.
pub fn pi(digits: u32) -> Result<MPReal, MpError> {
    check_digits(digits, DEFAULT_MAX_DIGITS)?;
    let w = digits + GUARD_DIGITS;
    Ok(MPReal::new(pi_raw(w), w).with_scale(digits))
}

/// Euler's number to `digits` fractional digits.
pub fn e(digits: u32) -> Result<MPReal, MpError> {
    check_digits(digits, DEFAULT_MAX_DIGITS)?;
    let w = digits + GUARD_DIGITS;
    Ok(MPReal::new(e_raw(w), w).with_scale(digits))
}

// Raw fixed-point kernels. Inputs and outputs are mantissas at scale `w`;
// each result is within a few units of 10^-w of the exact value.

/// arctan(1/k) at scale `w`, truncating series terms.
fn atan_inv(k: u32, w: u32) -> BigInt {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = pow10(w) / &k;
    let mut sum = BigInt::zero();
    let mut n = 1u32;
    let mut positive = true;
    while !power.is_zero() {
        let term = &power / n;
        if positive {
            sum += term;
        } else {
            sum -= term;
        }
        positive = !positive;
        power /= &k2;
        n += 2;
    }
    sum
}

pub(crate) fn pi_raw(w: u32) -> BigInt {
    // π = 16 atan(1/5) - 4 atan(1/239)
    let terms = (w as u64) * 10 / 14 + 2;
    let g = 12 + log10_ceil(terms);
    let wg = w + g;
    let v = atan_inv(5, wg) * 16 - atan_inv(239, wg) * 4;
    div_round(&v, &pow10(g))
}

pub(crate) fn e_raw(w: u32) -> BigInt {
    // sum of 1/k!; the term count is bounded by w + 10 for any useful w
    let g = GUARD_DIGITS + log10_ceil(w as u64 + 10);
    let wg = w + g;
    let mut term = pow10(wg);
    let mut sum = term.clone();
    let mut k = 1u32;
    loop {
        term /= k;
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    div_round(&sum, &pow10(g))
}

pub(crate) fn exp_raw(x: &BigInt, w: u32) -> BigInt {
    if x.is_zero() {
        return pow10(w);
    }
    let negative = x.is_negative();
    let ax = x.abs();
    let int_part = (&ax / pow10(w)).to_u64().unwrap_or(u64::MAX);
    // exp(|x|) has about 0.4343*|x| integer digits
    let magnitude = (int_part as f64 * std::f64::consts::LOG10_E).ceil() as u32 + 1;
    let halvings = 64 - int_part.leading_zeros() + 8;
    let g = GUARD_DIGITS
        + magnitude
        + (halvings as f64 * std::f64::consts::LOG10_2).ceil() as u32
        + log10_ceil(w as u64 + 10);
    let wg = w + g;
    let one = pow10(wg);
    let r = (&ax * pow10(g)) >> halvings;

    let mut sum = one.clone();
    let mut term = one.clone();
    let mut n = 1u32;
    loop {
        term = (&term * &r) / &one / n;
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
    }
    for _ in 0..halvings {
        sum = div_round(&(&sum * &sum), &one);
    }
    if negative {
        sum = div_round(&(&one * &one), &sum);
    }
    div_round(&sum, &pow10(g))
}

pub(crate) fn sin_cos_raw(x: &BigInt, w: u32) -> (BigInt, BigInt) {
    if x.is_zero() {
        return (BigInt::zero(), pow10(w));
    }
    let int_part = (x.abs() / pow10(w)).to_u64().unwrap_or(u64::MAX);
    let g = GUARD_DIGITS + log10_ceil(int_part + 1) + log10_ceil(w as u64 + 10);
    let wg = w + g;
    let one = pow10(wg);
    let two_pi = pi_raw(wg) << 1u32;
    let xs = x * pow10(g);
    let turns = div_round(&xs, &two_pi);
    let r = xs - turns * &two_pi;
    let r2 = div_round(&(&r * &r), &one);

    // Taylor series on |r| <= π
    let mut sin = r.clone();
    let mut cos = one.clone();
    let mut sin_term = r;
    let mut cos_term = one.clone();
    let mut n = 1u32;
    loop {
        // cos_term: (-1)^k r^(2k)/(2k)!, sin_term: (-1)^k r^(2k+1)/(2k+1)!
        cos_term = -(&cos_term * &r2) / &one / (n * (n + 1));
        sin_term = -(&sin_term * &r2) / &one / ((n + 1) * (n + 2));
        if cos_term.is_zero() && sin_term.is_zero() {
            break;
        }
        cos += &cos_term;
        sin += &sin_term;
        n += 2;
    }
    let scale = pow10(g);
    (div_round(&sin, &scale), div_round(&cos, &scale))
}

/// Complex number with [`MPReal`] components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPComplex {
    pub re: MPReal,
    pub im: MPReal,
}

impl MPComplex {
    pub fn new(re: MPReal, im: MPReal) -> Self {
        MPComplex { re, im }
    }

    pub fn zero(scale: u32) -> Self {
        MPComplex::new(MPReal::zero(scale), MPReal::zero(scale))
    }

    pub fn real(re: MPReal) -> Self {
        let scale = re.scale();
        MPComplex::new(re, MPReal::zero(scale))
    }

    pub fn imag(im: MPReal) -> Self {
        let scale = im.scale();
        MPComplex::new(MPReal::zero(scale), im)
    }

    /// The imaginary unit.
    pub fn i(scale: u32) -> Self {
        MPComplex::new(MPReal::zero(scale), MPReal::one(scale))
    }

    pub fn scale(&self) -> u32 {
        self.re.scale().max(self.im.scale())
    }

    pub fn with_scale(&self, scale: u32) -> Self {
        MPComplex::new(self.re.with_scale(scale), self.im.with_scale(scale))
    }

    pub fn conj(&self) -> Self {
        MPComplex::new(self.re.clone(), -&self.im)
    }

    /// Modulus, rounded at the operand scale.
    pub fn abs(&self) -> MPReal {
        let scale = self.scale();
        let sq = self.re.mul_exact(&self.re) + self.im.mul_exact(&self.im);
        // sqrt at doubled scale keeps the exact sum of squares
        sq.sqrt()
            .expect("sum of squares is nonnegative")
            .with_scale(scale)
    }

    /// Largest absolute component, a cheap upper bound on per-component error.
    pub fn max_abs_component(&self) -> MPReal {
        self.re.abs().max(self.im.abs())
    }

    /// e^z = e^re (cos im + i sin im).
    pub fn exp(&self) -> Self {
        let scale = self.scale();
        let w = scale + GUARD_DIGITS;
        let re = self.re.with_scale(w);
        let im = self.im.with_scale(w);
        let mag = exp_raw(re.mantissa(), w);
        let (s, c) = sin_cos_raw(im.mantissa(), w);
        let one = pow10(w);
        MPComplex::new(
            MPReal::new(div_round(&(&mag * c), &one), w).with_scale(scale),
            MPReal::new(div_round(&(&mag * s), &one), w).with_scale(scale),
        )
    }

    pub fn render(&self, digits: u32) -> String {
        let re = self.re.render(digits);
        let im = self.im.with_scale(digits);
        if im.is_negative() {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

impl fmt::Display for MPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.scale()))
    }
}

impl Add for &MPComplex {
    type Output = MPComplex;
    fn add(self, rhs: &MPComplex) -> MPComplex {
        MPComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &MPComplex {
    type Output = MPComplex;
    fn sub(self, rhs: &MPComplex) -> MPComplex {
        MPComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &MPComplex {
    type Output = MPComplex;
    fn mul(self, rhs: &MPComplex) -> MPComplex {
        let scale = self.scale().max(rhs.scale());
        let re = self.re.mul_exact(&rhs.re) - self.im.mul_exact(&rhs.im);
        let im = self.re.mul_exact(&rhs.im) + self.im.mul_exact(&rhs.re);
        MPComplex::new(re.with_scale(scale), im.with_scale(scale))
    }
}

impl Neg for &MPComplex {
    type Output = MPComplex;
    fn neg(self) -> MPComplex {
        MPComplex::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned_complex {
    ($tr:ident, $method:ident) => {
        impl $tr for MPComplex {
            type Output = MPComplex;
            fn $method(self, rhs: MPComplex) -> MPComplex {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_complex!(Add, add);
forward_owned_complex!(Sub, sub);
forward_owned_complex!(Mul, mul);

/// e^z; alias for [`MPComplex::exp`].
pub fn cexp(z: &MPComplex) -> MPComplex {
    z.exp()
}
