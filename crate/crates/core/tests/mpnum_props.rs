use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use pgolden::mpnum::{cexp, e, pi, MPComplex, MPReal};
use proptest::prelude::*;

fn tol(exponent: u32) -> MPReal {
    MPReal::new(BigInt::one(), exponent)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Partial sum of atan(1/k) with enough terms that the alternating tail is
/// below 10^-200.
fn atan_inv(k: i64) -> BigRational {
    let x = ratio(1, k);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = BigRational::zero();
    let bound = BigRational::new(BigInt::one(), BigInt::from(10).pow(200));
    let mut j = 0i64;
    loop {
        let term = &power / BigRational::from_integer((2 * j + 1).into());
        if term < bound {
            return sum;
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
        j += 1;
    }
}

fn pi_oracle() -> BigRational {
    // Gauss: π/4 = 12 atan(1/18) + 8 atan(1/57) - 5 atan(1/239)
    let q = |n: i64| BigRational::from_integer(n.into());
    q(48) * atan_inv(18) + q(32) * atan_inv(57) - q(20) * atan_inv(239)
}

fn e_oracle() -> BigRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 1..160i64 {
        sum += &term;
        term /= BigRational::from_integer(k.into());
    }
    sum
}

fn close_to(x: &MPReal, oracle: &BigRational, exponent: u32) -> bool {
    let gap = (x.to_ratio() - oracle).abs();
    gap <= tol(exponent).to_ratio()
}

#[test]
fn pi_matches_independent_series() {
    for digits in [10, 50, 120] {
        let p = pi(digits).unwrap();
        // half an ulp of rounding plus the oracle's tail
        assert!(close_to(&p, &pi_oracle(), digits), "digits {digits}");
    }
    assert_eq!(
        pi(50).unwrap().to_string(),
        "3.14159265358979323846264338327950288419716939937511"
    );
}

#[test]
fn e_matches_factorial_series() {
    for digits in [10, 50, 100] {
        assert!(
            close_to(&e(digits).unwrap(), &e_oracle(), digits),
            "digits {digits}"
        );
    }
    assert_eq!(
        e(50).unwrap().to_string(),
        "2.71828182845904523536028747135266249775724709369996"
    );
}

#[test]
fn exp_one_is_e() {
    let x = MPReal::one(60).exp();
    assert_eq!(x, e(60).unwrap());
}

#[test]
fn render_rounds_half_away_from_zero() {
    let x: MPReal = "1.25".parse().unwrap();
    assert_eq!(x.render(1), "1.3");
    assert_eq!((-x).render(1), "-1.3");
    let y: MPReal = "0.04".parse().unwrap();
    assert_eq!(y.render(1), "0.0");
}

fn real_in(lo: i64, hi: i64) -> impl Strategy<Value = MPReal> {
    let unit = 1_000_000_000_000i64;
    (lo * unit..=hi * unit).prop_map(|m| MPReal::new(m.into(), 12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pythagorean_identity(x in real_in(-50, 50), digits in 20u32..80) {
        let (s, c) = x.with_scale(digits).sin_cos();
        let one = s.mul_exact(&s) + c.mul_exact(&c);
        prop_assert!((&one - &MPReal::one(digits)).abs() <= tol(digits - 2));
    }

    #[test]
    fn sqrt_round_trip_on_unit_interval(x in real_in(0, 1), digits in 20u32..80) {
        let x = x.with_scale(digits);
        let r = x.sqrt().unwrap();
        prop_assert!((&r.mul_exact(&r) - &x).abs() <= MPReal::new(2.into(), digits));
    }

    #[test]
    fn sqrt_round_trip_up_to_ten(x in real_in(0, 10), digits in 20u32..80) {
        let x = x.with_scale(digits);
        let r = x.sqrt().unwrap();
        // |r² - x| <= 2√x·ulp/2 + ulp²/4 with √x <= √10
        let bound = MPReal::new(3163.into(), digits + 3);
        prop_assert!((&r.mul_exact(&r) - &x).abs() <= bound);
    }

    #[test]
    fn cexp_is_a_homomorphism(
        a in real_in(-3, 3), b in real_in(-3, 3), c in real_in(-3, 3), d in real_in(-3, 3),
        digits in 20u32..60,
    ) {
        let z = MPComplex::new(a.with_scale(digits), b.with_scale(digits));
        let w = MPComplex::new(c.with_scale(digits), d.with_scale(digits));
        let lhs = cexp(&(&z + &w));
        let rhs = &cexp(&z) * &cexp(&w);
        prop_assert!((&lhs - &rhs).max_abs_component() <= tol(digits - 3));
    }

    #[test]
    fn more_digits_agree_after_rounding(x in real_in(-20, 20), digits in 15u32..60) {
        let lo = x.with_scale(digits);
        let hi = x.with_scale(digits + 10);
        let ulp = tol(digits);
        // two roundings of the same value differ by at most one ulp
        prop_assert!((&lo.exp() - &hi.exp().with_scale(digits)).abs() <= ulp);
        prop_assert!((&lo.sin() - &hi.sin().with_scale(digits)).abs() <= ulp);
        prop_assert!((&lo.cos() - &hi.cos().with_scale(digits)).abs() <= ulp);
    }
}
