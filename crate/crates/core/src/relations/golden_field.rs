//! Exact arithmetic in Q(Φ), elements written `a + bΦ` with `Φ² = Φ + 1`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPhi {
    pub a: BigRational,
    pub b: BigRational,
}

impl QPhi {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QPhi { a, b }
    }

    pub fn int(a: i64) -> Self {
        QPhi::new(BigRational::from_integer(a.into()), BigRational::zero())
    }

    pub fn phi() -> Self {
        QPhi::new(BigRational::zero(), BigRational::one())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QPhi::new(&self.a * k, &self.b * k)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(QPhi::int(1), |acc, _| &acc * self)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl Add for &QPhi {
    type Output = QPhi;
    fn add(self, rhs: &QPhi) -> QPhi {
        QPhi::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QPhi {
    type Output = QPhi;
    fn sub(self, rhs: &QPhi) -> QPhi {
        QPhi::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &QPhi {
    type Output = QPhi;
    fn neg(self) -> QPhi {
        QPhi::new(-&self.a, -&self.b)
    }
}

impl Mul for &QPhi {
    type Output = QPhi;
    fn mul(self, rhs: &QPhi) -> QPhi {
        // (a + bΦ)(c + dΦ) = (ac + bd) + (ad + bc + bd)Φ
        let bd = &self.b * &rhs.b;
        QPhi::new(
            &self.a * &rhs.a + &bd,
            &self.a * &rhs.b + &self.b * &rhs.a + bd,
        )
    }
}

/// `c = Φ/2` is a root of `T_5(c) + 1 = 16c^5 - 20c^3 + 5c + 1`, i.e.
/// `cos(5 · π/5) = -1` with `cos(π/5) = Φ/2`.
pub fn half_phi_is_cos_pi_over_5() -> bool {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let c = QPhi::phi().scale(&half);
    let t5 = &(&c.pow(5).scale(&BigRational::from_integer(16.into()))
        - &c.pow(3).scale(&BigRational::from_integer(20.into())))
        + &c.scale(&BigRational::from_integer(5.into()));
    (&t5 + &QPhi::int(1)).is_zero()
}

/// `Φ(Φ - 1) = 1`.
pub fn phi_times_phi_minus_one_is_one() -> bool {
    let phi = QPhi::phi();
    &phi * &(&phi - &QPhi::int(1)) == QPhi::int(1)
}

/// `Φ(-1 + Φ) = 1`, with `e^{iπ}` replaced by `-1`.
pub fn phi_times_minus_one_plus_phi_is_one() -> bool {
    let phi = QPhi::phi();
    &phi * &(&QPhi::int(-1) + &phi) == QPhi::int(1)
}

/// `Φ² = Φ + 1`.
pub fn phi_squared_is_phi_plus_one() -> bool {
    let phi = QPhi::phi();
    &phi * &phi == &phi + &QPhi::int(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_exactly() {
        assert!(half_phi_is_cos_pi_over_5());
        assert!(phi_times_phi_minus_one_is_one());
        assert!(phi_times_minus_one_plus_phi_is_one());
        assert!(phi_squared_is_phi_plus_one());
    }

    #[test]
    fn powers_follow_fibonacci() {
        // Φ^n = F(n-1) + F(n) Φ
        let p10 = QPhi::phi().pow(10);
        assert_eq!(
            p10,
            QPhi::new(
                BigRational::from_integer(34.into()),
                BigRational::from_integer(55.into())
            )
        );
    }

    #[test]
    fn wrong_identity_is_detected() {
        let phi = QPhi::phi();
        assert_ne!(&phi * &phi, &phi + &QPhi::int(2));
    }
}
