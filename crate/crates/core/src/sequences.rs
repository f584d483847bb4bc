//! Additive p-sequences over exact integers.
//!
//! Every term past the `p` seeds is the sum of the `p` terms before it. Terms
//! are generated with the equivalent sliding-window form
//! `t[n+1] = 2 t[n] - t[n-p]`, and distant terms come from powers of the
//! `p x p` companion matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::mpnum::MPReal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("order p must be at least 1")]
    ZeroOrder,
    #[error("expected {expected} seeds for p = {expected}, got {got}")]
    SeedCount { expected: usize, got: usize },
    #[error("count {count} is smaller than p = {p}")]
    CountTooSmall { count: usize, p: usize },
    #[error("ratio t[{}]/t[{n}] is degenerate: t[{n}] = 0", n + 1)]
    DegenerateRatio { n: u64 },
}

/// An additive p-sequence with its cached terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSequence {
    p: usize,
    seeds: Vec<BigInt>,
    terms: Vec<BigInt>,
}

impl PSequence {
    pub fn new(p: usize, seeds: Vec<BigInt>) -> Result<Self, SequenceError> {
        validate(p, &seeds)?;
        Ok(PSequence {
            p,
            terms: seeds.clone(),
            seeds,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn seeds(&self) -> &[BigInt] {
        &self.seeds
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    /// Grows the cache until it holds at least `count` terms.
    pub fn extend_to(&mut self, count: usize) {
        self.terms.reserve(count.saturating_sub(self.terms.len()));
        while self.terms.len() < count {
            let n = self.terms.len();
            let next = if n == self.p {
                self.terms.iter().sum()
            } else {
                // n > p: t[n] = 2 t[n-1] - t[n-1-p]
                (&self.terms[n - 1] << 1u32) - &self.terms[n - 1 - self.p]
            };
            self.terms.push(next);
        }
    }

    pub fn term(&mut self, n: usize) -> &BigInt {
        self.extend_to(n + 1);
        &self.terms[n]
    }

    pub fn ratio_at(&mut self, n: u64) -> Result<TermRatio, SequenceError> {
        let idx = n as usize;
        self.extend_to(idx + 2);
        TermRatio::new(self.terms[idx + 1].clone(), self.terms[idx].clone())
            .ok_or(SequenceError::DegenerateRatio { n })
    }
}

fn validate(p: usize, seeds: &[BigInt]) -> Result<(), SequenceError> {
    if p == 0 {
        return Err(SequenceError::ZeroOrder);
    }
    if seeds.len() != p {
        return Err(SequenceError::SeedCount {
            expected: p,
            got: seeds.len(),
        });
    }
    Ok(())
}

/// The quotient `t[n+1] / t[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermRatio {
    pub numerator: BigInt,
    pub denominator: BigInt,
    pub value: BigRational,
}

impl TermRatio {
    fn new(numerator: BigInt, denominator: BigInt) -> Option<Self> {
        if denominator.is_zero() {
            return None;
        }
        let value = BigRational::new(numerator.clone(), denominator.clone());
        Some(TermRatio {
            numerator,
            denominator,
            value,
        })
    }

    pub fn to_decimal(&self, digits: u32) -> MPReal {
        MPReal::from_ratio(&self.value, digits)
    }
}

/// First `count` terms of the p-sequence with the given seeds.
pub fn generate(p: usize, seeds: &[BigInt], count: usize) -> Result<PSequence, SequenceError> {
    let mut seq = PSequence::new(p, seeds.to_vec())?;
    if count < p {
        return Err(SequenceError::CountTooSmall { count, p });
    }
    seq.extend_to(count);
    Ok(seq)
}

type Matrix = Vec<Vec<BigInt>>;

/// Row 0 is all ones, the subdiagonal is the identity.
fn companion(p: usize) -> Matrix {
    (0..p)
        .map(|row| {
            (0..p)
                .map(|col| {
                    if row == 0 || col + 1 == row {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn identity(p: usize) -> Matrix {
    (0..p)
        .map(|row| {
            (0..p)
                .map(|col| {
                    if row == col {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let p = a.len();
    (0..p)
        .map(|i| {
            (0..p)
                .map(|j| {
                    (0..p)
                        .filter(|&k| !a[i][k].is_zero() && !b[k][j].is_zero())
                        .map(|k| &a[i][k] * &b[k][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

fn mat_pow(m: &Matrix, mut e: u64) -> Matrix {
    let mut result = identity(m.len());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    result
}

/// `t[n]` via binary exponentiation of the companion matrix.
pub fn nth_term_fast(p: usize, seeds: &[BigInt], n: u64) -> Result<BigInt, SequenceError> {
    validate(p, seeds)?;
    if n < p as u64 {
        return Ok(seeds[n as usize].clone());
    }
    // state (t[k+p-1], ..., t[k]); one step of the companion matrix advances k
    let m = mat_pow(&companion(p), n - p as u64 + 1);
    Ok(m[0]
        .iter()
        .zip(seeds.iter().rev())
        .map(|(coef, s)| coef * s)
        .sum())
}

/// Exact ratio `t[n+1] / t[n]`.
pub fn ratio_at(p: usize, seeds: &[BigInt], n: u64) -> Result<TermRatio, SequenceError> {
    let mut seq = PSequence::new(p, seeds.to_vec())?;
    seq.ratio_at(n)
}
