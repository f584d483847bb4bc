//! The rational coefficient in `e ≈ Φ² + c/Φ` and continued-fraction
//! convergents for inspecting it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RelationError;
use crate::charpoly::golden_ratio;
use crate::mpnum::{e, MPReal, GUARD_DIGITS};

pub const PRINTED_NUMERATOR: i64 = 50_000;
pub const PRINTED_DENOMINATOR: i64 = 308_253;

/// The printed coefficient `50000/308253`.
pub fn printed_coefficient() -> BigRational {
    BigRational::new(PRINTED_NUMERATOR.into(), PRINTED_DENOMINATOR.into())
}

/// `c = (e - Φ²) Φ`, the coefficient that makes `Φ² + c/Φ = e` exact.
pub fn approx_coefficient(digits: u32) -> Result<MPReal, RelationError> {
    let w = digits + GUARD_DIGITS;
    let phi = golden_ratio(2, w)?.midpoint().with_scale(w);
    let e = e(w)?;
    let c = &(&e - &(&phi * &phi)) * &phi;
    Ok(c.with_scale(digits))
}

/// Partial quotients and convergents of an exact rational, stopping before
/// the first denominator above `max_denominator`.
struct Expansion {
    num: BigInt,
    den: BigInt,
}

impl Iterator for Expansion {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if self.den.is_zero() {
            return None;
        }
        let (a, r) = self.num.div_mod_floor(&self.den);
        self.num = std::mem::replace(&mut self.den, r);
        Some(a)
    }
}

fn expansion(x: &BigRational) -> Expansion {
    Expansion {
        num: x.numer().clone(),
        den: x.denom().clone(),
    }
}

fn collect_convergents(
    quotients: impl Iterator<Item = BigInt>,
    max_denominator: &BigInt,
) -> Vec<BigRational> {
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::new();
    for a in quotients {
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        if &k > max_denominator {
            break;
        }
        out.push(BigRational::new(h.clone(), k.clone()));
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
    }
    out
}

/// Convergents `p/q` of the decimal value `x` (taken as exact) with
/// `q <= max_denominator`, in order.
pub fn convergents(x: &MPReal, max_denominator: u64) -> Vec<BigRational> {
    collect_convergents(expansion(&x.to_ratio()), &BigInt::from(max_denominator))
}

/// Convergents shared by every real in `[lo, hi]`: expansion stops at the
/// first partial quotient on which the endpoints disagree.
pub fn convergents_enclosed(lo: &MPReal, hi: &MPReal, max_denominator: u64) -> Vec<BigRational> {
    let mut a = expansion(&lo.to_ratio());
    let mut b = expansion(&hi.to_ratio());
    let mut done = false;
    let shared = std::iter::from_fn(move || {
        if done {
            return None;
        }
        match (a.next(), b.next()) {
            (Some(x), Some(y)) if x == y => {
                // an endpoint that terminates here pins the final convergent
                done = a.den.is_zero() || b.den.is_zero();
                Some(x)
            }
            _ => None,
        }
    });
    collect_convergents(shared, &BigInt::from(max_denominator))
}
