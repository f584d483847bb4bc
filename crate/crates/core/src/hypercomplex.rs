//! Quaternions and octonions over [`MPReal`], exponentials of pure elements,
//! and sums of roots of unity.

use num_bigint::BigInt;
use thiserror::Error;

use crate::mpnum::{pi, MPComplex, MPReal, MpError, GUARD_DIGITS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypercomplexError {
    #[error("direction vector is too close to zero to normalise")]
    DegenerateDirection,
    #[error("normalised direction has squared norm {0}, not 1")]
    NotUnit(String),
    #[error("roots of unity need n >= 2, got {0}")]
    TooFewRoots(u32),
    #[error(transparent)]
    Mp(#[from] MpError),
}

/// Octonion units `i_a i_b = i_c` for each triple, read cyclically.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
];

/// `OCTONION_TABLE[a][b] = (sign, c)` such that `e_a e_b = sign * e_c`, with
/// `e_0 = 1`.
pub const OCTONION_TABLE: [[(i8, usize); 8]; 8] = build_octonion_table();

const fn build_octonion_table() -> [[(i8, usize); 8]; 8] {
    let mut t = [[(0i8, 0usize); 8]; 8];
    let mut a = 0;
    while a < 8 {
        t[0][a] = (1, a);
        t[a][0] = (1, a);
        if a > 0 {
            t[a][a] = (-1, 0);
        }
        a += 1;
    }
    let mut k = 0;
    while k < 7 {
        let (x, y, z) = FANO_TRIPLES[k];
        t[x][y] = (1, z);
        t[y][z] = (1, x);
        t[z][x] = (1, y);
        t[y][x] = (-1, z);
        t[z][y] = (-1, x);
        t[x][z] = (-1, y);
        k += 1;
    }
    t
}

/// Hamilton product of basis elements `(1, i, j, k)`.
pub const QUATERNION_TABLE: [[(i8, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
];

/// Bilinear product per `table`, accumulated exactly and rounded once.
fn table_product<const N: usize>(
    table: &[[(i8, usize); N]; N],
    a: &[MPReal; N],
    b: &[MPReal; N],
) -> [MPReal; N] {
    let scale = a
        .iter()
        .chain(b.iter())
        .map(MPReal::scale)
        .max()
        .unwrap_or(0);
    let mut acc: [BigInt; N] = std::array::from_fn(|_| BigInt::default());
    for (i, x) in a.iter().enumerate() {
        let x = x.with_scale(scale);
        for (j, y) in b.iter().enumerate() {
            let (sign, idx) = table[i][j];
            let prod = x.mantissa() * y.with_scale(scale).mantissa();
            if sign > 0 {
                acc[idx] += prod;
            } else {
                acc[idx] -= prod;
            }
        }
    }
    acc.map(|m| MPReal::new(m, 2 * scale).with_scale(scale))
}

fn norm_of(coeffs: &[MPReal]) -> MPReal {
    let scale = coeffs.iter().map(MPReal::scale).max().unwrap_or(0);
    let sq = coeffs
        .iter()
        .fold(MPReal::zero(2 * scale), |acc, c| &acc + &c.mul_exact(c));
    sq.sqrt().expect("nonnegative").with_scale(scale)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion {
    pub w: MPReal,
    pub x: MPReal,
    pub y: MPReal,
    pub z: MPReal,
}

impl Quaternion {
    pub fn new(w: MPReal, x: MPReal, y: MPReal, z: MPReal) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_coeffs([w, x, y, z]: [MPReal; 4]) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn coeffs(&self) -> [MPReal; 4] {
        [
            self.w.clone(),
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
        ]
    }

    /// Basis element `e_k` of (1, i, j, k).
    pub fn basis(k: usize, scale: u32) -> Self {
        let mut c: [MPReal; 4] = std::array::from_fn(|_| MPReal::zero(scale));
        c[k] = MPReal::one(scale);
        Quaternion::from_coeffs(c)
    }

    pub fn norm(&self) -> MPReal {
        norm_of(&self.coeffs())
    }

    pub fn sub(&self, other: &Quaternion) -> Quaternion {
        let (a, b) = (self.coeffs(), other.coeffs());
        Quaternion::from_coeffs(std::array::from_fn(|k| &a[k] - &b[k]))
    }

    pub fn max_abs_component(&self) -> MPReal {
        self.coeffs()
            .iter()
            .map(MPReal::abs)
            .max()
            .expect("four components")
    }
}

pub fn quat_mul(q: &Quaternion, r: &Quaternion) -> Quaternion {
    Quaternion::from_coeffs(table_product(&QUATERNION_TABLE, &q.coeffs(), &r.coeffs()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octonion {
    pub coeffs: [MPReal; 8],
}

impl Octonion {
    pub fn new(coeffs: [MPReal; 8]) -> Self {
        Octonion { coeffs }
    }

    /// Basis element `e_k`, with `e_0 = 1` and `e_k = i_k`.
    pub fn basis(k: usize, scale: u32) -> Self {
        let mut c: [MPReal; 8] = std::array::from_fn(|_| MPReal::zero(scale));
        c[k] = MPReal::one(scale);
        Octonion::new(c)
    }

    pub fn norm(&self) -> MPReal {
        norm_of(&self.coeffs)
    }

    pub fn sub(&self, other: &Octonion) -> Octonion {
        Octonion::new(std::array::from_fn(|k| &self.coeffs[k] - &other.coeffs[k]))
    }

    pub fn max_abs_component(&self) -> MPReal {
        self.coeffs
            .iter()
            .map(MPReal::abs)
            .max()
            .expect("eight components")
    }
}

pub fn oct_mul(q: &Octonion, r: &Octonion) -> Octonion {
    Octonion::new(table_product(&OCTONION_TABLE, &q.coeffs, &r.coeffs))
}

/// `cos θ + u sin θ` for the unit vector `u = a / |a|`, at the scale of `θ`.
/// Returns the scalar part and the vector part.
fn pure_exp<const N: usize>(
    a: &[MPReal; N],
    theta: &MPReal,
) -> Result<(MPReal, [MPReal; N]), HypercomplexError> {
    let digits = theta.scale();
    let w = digits + GUARD_DIGITS;
    let a: [MPReal; N] = std::array::from_fn(|k| a[k].with_scale(w));
    let norm = norm_of(&a);
    // |a| < 10^-(digits/2)
    if norm < MPReal::new(BigInt::from(1), digits / 2) {
        return Err(HypercomplexError::DegenerateDirection);
    }
    let mut unit = a.clone();
    for u in unit.iter_mut() {
        *u = u.checked_div(&norm)?;
    }
    let sq = unit.iter().fold(MPReal::zero(w), |acc, u| &acc + &(u * u));
    let tol = MPReal::new(BigInt::from(1), w - 3);
    if (&sq - &MPReal::one(w)).abs() > tol {
        return Err(HypercomplexError::NotUnit(sq.render(digits)));
    }
    let (s, c) = theta.with_scale(w).sin_cos();
    let vector = unit.map(|u| (&u * &s).with_scale(digits));
    Ok((c.with_scale(digits), vector))
}

/// `exp((a_1 i + a_2 j + a_3 k) θ)` after normalising `a` to unit length.
pub fn pure_exp_quat(a: &[MPReal; 3], theta: &MPReal) -> Result<Quaternion, HypercomplexError> {
    let (w, [x, y, z]) = pure_exp(a, theta)?;
    Ok(Quaternion::new(w, x, y, z))
}

/// `exp((Σ a_k i_k) θ)` after normalising `a` to unit length.
pub fn pure_exp_oct(a: &[MPReal; 7], theta: &MPReal) -> Result<Octonion, HypercomplexError> {
    let (w, v) = pure_exp(a, theta)?;
    let mut coeffs: [MPReal; 8] = std::array::from_fn(|_| w.clone());
    coeffs[1..].clone_from_slice(&v);
    Ok(Octonion::new(coeffs))
}

/// `Σ_{k<n} exp(2πik/n)`.
pub fn roots_of_unity_sum(n: u32, digits: u32) -> Result<MPComplex, HypercomplexError> {
    if n < 2 {
        return Err(HypercomplexError::TooFewRoots(n));
    }
    let w = digits + GUARD_DIGITS + n.ilog10() + 1;
    let two_pi = pi(w)?.mul_int(2);
    let mut sum = MPComplex::zero(w);
    for k in 0..n {
        let angle = two_pi.mul_int(k).div_int(n)?;
        let (s, c) = angle.sin_cos();
        sum = &sum + &MPComplex::new(c, s);
    }
    Ok(sum.with_scale(digits))
}
