use num_bigint::BigInt;
use num_traits::One;
use pgolden::hypercomplex::{
    oct_mul, pure_exp_oct, pure_exp_quat, quat_mul, roots_of_unity_sum, HypercomplexError,
    Octonion, Quaternion, OCTONION_TABLE,
};
use pgolden::mpnum::pi;
use pgolden::MPReal;
use proptest::prelude::*;

fn tol(exponent: u32) -> MPReal {
    MPReal::new(BigInt::one(), exponent)
}

fn int(v: i64) -> MPReal {
    MPReal::from_int(v, 0)
}

fn sq_norm(c: &[MPReal]) -> MPReal {
    c.iter()
        .fold(MPReal::zero(0), |acc, x| &acc + &x.mul_exact(x))
}

fn quat() -> impl Strategy<Value = Quaternion> {
    proptest::array::uniform4(-50i64..=50).prop_map(|c| Quaternion::from_coeffs(c.map(int)))
}

fn oct() -> impl Strategy<Value = Octonion> {
    proptest::array::uniform8(-50i64..=50).prop_map(|c| Octonion::new(c.map(int)))
}

fn direction<const N: usize>() -> impl Strategy<Value = [MPReal; N]> {
    proptest::collection::vec(-1_000_000i64..=1_000_000, N)
        .prop_filter("nonzero direction", |v| v.iter().any(|&x| x.abs() > 1000))
        .prop_map(|v| std::array::from_fn(|k| MPReal::new(v[k].into(), 6)))
}

#[test]
fn octonion_units_square_to_minus_one_and_anticommute() {
    for (a, row) in OCTONION_TABLE.iter().enumerate().skip(1) {
        assert_eq!(row[a], (-1, 0));
        for (b, &(s, k)) in row.iter().enumerate().skip(1) {
            if a != b {
                assert_eq!(OCTONION_TABLE[b][a], (-s, k));
            }
        }
    }
}

#[test]
fn octonions_are_not_associative() {
    let e = |k| Octonion::basis(k, 0);
    let left = oct_mul(&oct_mul(&e(1), &e(2)), &e(4));
    let right = oct_mul(&e(1), &oct_mul(&e(2), &e(4)));
    assert_eq!(left.coeffs, right.coeffs.map(|c| -c));
}

#[test]
fn quaternion_hamilton_rules() {
    let q = |k| Quaternion::basis(k, 0);
    assert_eq!(quat_mul(&q(1), &q(2)), q(3));
    assert_eq!(quat_mul(&q(2), &q(3)), q(1));
    assert_eq!(quat_mul(&q(3), &q(1)), q(2));
    let ijk = quat_mul(&quat_mul(&q(1), &q(2)), &q(3));
    assert_eq!(ijk.coeffs(), [int(-1), int(0), int(0), int(0)]);
}

#[test]
fn half_turn_about_any_axis() {
    let theta = pi(40).unwrap();
    let q = pure_exp_quat(&[int(1), int(2), int(-2)], &theta).unwrap();
    assert!((&q.w + &MPReal::one(40)).abs() <= tol(38));
    let o = pure_exp_oct(
        &[int(1), int(0), int(3), int(0), int(0), int(-1), int(2)],
        &theta,
    )
    .unwrap();
    assert!((&o.coeffs[0] + &MPReal::one(40)).abs() <= tol(38));
}

#[test]
fn degenerate_direction_is_rejected() {
    let theta = pi(20).unwrap();
    let zero = [MPReal::zero(20), MPReal::zero(20), MPReal::zero(20)];
    assert!(matches!(
        pure_exp_quat(&zero, &theta),
        Err(HypercomplexError::DegenerateDirection)
    ));
}

#[test]
fn roots_of_unity_cancel() {
    let ns: Vec<u32> = (2..=64).chain([360, 1000]).collect();
    for n in ns {
        let s = roots_of_unity_sum(n, 50).unwrap();
        assert!(s.abs() < MPReal::new(n.into(), 48), "n={n}");
    }
    assert!(matches!(
        roots_of_unity_sum(1, 20),
        Err(HypercomplexError::TooFewRoots(1))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quaternions_associate(a in quat(), b in quat(), c in quat()) {
        prop_assert_eq!(quat_mul(&quat_mul(&a, &b), &c), quat_mul(&a, &quat_mul(&b, &c)));
    }

    #[test]
    fn quaternion_norm_is_multiplicative(a in quat(), b in quat()) {
        let ab = quat_mul(&a, &b);
        prop_assert_eq!(sq_norm(&ab.coeffs()), sq_norm(&a.coeffs()).mul_exact(&sq_norm(&b.coeffs())));
    }

    #[test]
    fn octonions_are_alternative(a in oct(), b in oct()) {
        prop_assert_eq!(oct_mul(&oct_mul(&a, &a), &b), oct_mul(&a, &oct_mul(&a, &b)));
        prop_assert_eq!(oct_mul(&oct_mul(&b, &a), &a), oct_mul(&b, &oct_mul(&a, &a)));
    }

    #[test]
    fn octonion_norm_is_multiplicative(a in oct(), b in oct()) {
        let ab = oct_mul(&a, &b);
        prop_assert_eq!(sq_norm(&ab.coeffs), sq_norm(&a.coeffs).mul_exact(&sq_norm(&b.coeffs)));
    }

    #[test]
    fn same_axis_exponentials_add(v in direction::<3>(), s in -3000i64..3000, t in -3000i64..3000) {
        let digits = 30;
        let s = MPReal::new(s.into(), 3).with_scale(digits);
        let t = MPReal::new(t.into(), 3).with_scale(digits);
        let product = quat_mul(&pure_exp_quat(&v, &s).unwrap(), &pure_exp_quat(&v, &t).unwrap());
        let sum = pure_exp_quat(&v, &(&s + &t)).unwrap();
        prop_assert!(product.sub(&sum).max_abs_component() <= tol(digits - 3));
    }

    #[test]
    fn exponentials_are_unit(v in direction::<7>(), t in -10_000i64..10_000) {
        let digits = 30;
        let t = MPReal::new(t.into(), 3).with_scale(digits);
        let o = pure_exp_oct(&v, &t).unwrap();
        prop_assert!((&o.norm() - &MPReal::one(digits)).abs() <= tol(digits - 3));
    }
}
