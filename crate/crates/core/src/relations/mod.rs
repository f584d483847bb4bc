//! Residual reports for the relations between e, π and the golden ratios.
//!
//! Identities are checked with threshold `10^-(digits - 5)` after evaluating
//! both sides at `digits + 10` fractional digits (plus the slope guard of
//! `X_p` for the order-p relations). The two approximations of e, R17 and R18,
//! never claim equality: they report the true distance to e and pass when the
//! approximating expression reproduces its printed 10-decimal value.

pub mod approx;
pub mod golden_field;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::charpoly::{golden_ratio, slope_guard, CharPolyError};
use crate::hypercomplex::{pure_exp_oct, pure_exp_quat, roots_of_unity_sum, HypercomplexError};
use crate::mpnum::{e, pi, MPComplex, MPReal, MpError, GUARD_DIGITS};

pub use approx::{approx_coefficient, convergents, convergents_enclosed, printed_coefficient};

/// Smallest precision that resolves the printed 10-decimal values.
pub const MIN_DIGITS: u32 = 12;

/// Digits between the working precision and the identity threshold.
pub const THRESHOLD_MARGIN: u32 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("unknown relation {0:?}; expected one of e1, e2, q3, o4, r17..r24")]
    UnknownRelation(String),
    #[error("digits = {0} is too small; relations need at least {MIN_DIGITS}")]
    DigitsTooSmall(u32),
    #[error("direction vector has {got} components, expected {expected}")]
    DirectionLength { expected: usize, got: usize },
    #[error("exact check for {0} failed")]
    ExactPathMismatch(RelationId),
    #[error(transparent)]
    CharPoly(#[from] CharPolyError),
    #[error(transparent)]
    Hypercomplex(#[from] HypercomplexError),
    #[error(transparent)]
    Mp(#[from] MpError),
}

/// Relation tags, ordered as they appear in batch output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    E1,
    E2,
    Q3,
    O4,
    R17,
    R18,
    R19,
    R20,
    R21,
    R22,
    R23,
    R24,
}

impl RelationId {
    pub const ALL: [RelationId; 12] = [
        RelationId::E1,
        RelationId::E2,
        RelationId::Q3,
        RelationId::O4,
        RelationId::R17,
        RelationId::R18,
        RelationId::R19,
        RelationId::R20,
        RelationId::R21,
        RelationId::R22,
        RelationId::R23,
        RelationId::R24,
    ];

    pub fn kind(self) -> RelationKind {
        match self {
            RelationId::R17 | RelationId::R18 => RelationKind::Approximation,
            _ => RelationKind::ExactIdentity,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RelationId::E1 => "E1",
            RelationId::E2 => "E2",
            RelationId::Q3 => "Q3",
            RelationId::O4 => "O4",
            RelationId::R17 => "R17",
            RelationId::R18 => "R18",
            RelationId::R19 => "R19",
            RelationId::R20 => "R20",
            RelationId::R21 => "R21",
            RelationId::R22 => "R22",
            RelationId::R23 => "R23",
            RelationId::R24 => "R24",
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationId {
    type Err = RelationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| RelationError::UnknownRelation(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    ExactIdentity,
    Approximation,
}

impl RelationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::ExactIdentity => "exact-identity",
            RelationKind::Approximation => "approximation",
        }
    }
}

/// Outcome of checking one relation.
///
/// `parameter` is the order p for R17..R24 (always 2 for R17..R21), the root
/// count n for E2, and absent for E1, Q3 and O4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub relation_id: RelationId,
    pub kind: RelationKind,
    pub parameter: Option<u32>,
    pub digits: u32,
    pub lhs: String,
    pub rhs: String,
    pub residual: Option<MPReal>,
    pub threshold: MPReal,
    pub pass: bool,
    pub error: Option<String>,
}

impl RelationReport {
    pub fn failed(
        id: RelationId,
        parameter: Option<u32>,
        digits: u32,
        err: &RelationError,
    ) -> Self {
        RelationReport {
            relation_id: id,
            kind: id.kind(),
            parameter,
            digits,
            lhs: String::new(),
            rhs: String::new(),
            residual: None,
            threshold: exact_threshold(digits.max(THRESHOLD_MARGIN)),
            pass: false,
            error: Some(err.to_string()),
        }
    }
}

/// Inputs for [`verify`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub digits: u32,
    /// Order for R22..R24.
    pub p: u32,
    /// Root count for E2.
    pub n: u32,
    /// Random directions drawn for Q3/O4 when `directions` is empty.
    pub vectors: usize,
    pub seed: u64,
    /// Explicit direction vectors for Q3 (3 entries) or O4 (7 entries).
    pub directions: Vec<Vec<MPReal>>,
}

impl VerifyOptions {
    pub fn new(digits: u32) -> Self {
        VerifyOptions {
            digits,
            p: 2,
            n: 2,
            vectors: 1000,
            seed: 0,
            directions: Vec::new(),
        }
    }
}

pub fn exact_threshold(digits: u32) -> MPReal {
    MPReal::new(BigInt::from(1), digits - THRESHOLD_MARGIN)
}

/// Printed value of each approximation.
pub fn printed_value(id: RelationId) -> Option<&'static str> {
    match id {
        RelationId::R17 => Some("2.7180339887"),
        RelationId::R18 => Some("2.7182818353"),
        _ => None,
    }
}

const PRINTED_DECIMALS: u32 = 10;

fn phi2(w: u32) -> Result<MPReal, RelationError> {
    Ok(golden_ratio(2, w)?.midpoint().with_scale(w))
}

fn complex_gap(a: &MPComplex, b: &MPComplex) -> MPReal {
    (a - b).abs()
}

fn max_pairwise(members: &[MPComplex]) -> MPReal {
    let mut worst = MPReal::zero(members[0].scale());
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            worst = worst.max(complex_gap(a, b));
        }
    }
    worst
}

fn random_direction<const N: usize>(rng: &mut ChaCha8Rng) -> [MPReal; N] {
    const SCALE: u32 = 12;
    let bound = 10i64.pow(SCALE);
    loop {
        let v: [MPReal; N] =
            std::array::from_fn(|_| MPReal::new(rng.gen_range(-bound..=bound).into(), SCALE));
        // reject directions too short to normalise accurately
        if v.iter().any(|c| c.abs() > MPReal::new(BigInt::from(1), 3)) {
            return v;
        }
    }
}

fn directions<const N: usize>(opts: &VerifyOptions) -> Result<Vec<[MPReal; N]>, RelationError> {
    if opts.directions.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        return Ok((0..opts.vectors)
            .map(|_| random_direction::<N>(&mut rng))
            .collect());
    }
    opts.directions
        .iter()
        .map(|v| {
            <[MPReal; N]>::try_from(v.clone()).map_err(|v| RelationError::DirectionLength {
                expected: N,
                got: v.len(),
            })
        })
        .collect()
}

struct Evaluation {
    lhs: String,
    rhs: String,
    residual: MPReal,
    /// Full-precision left side of an approximation.
    approx_value: Option<MPReal>,
}

/// Checks one relation.
pub fn verify(id: RelationId, opts: &VerifyOptions) -> Result<RelationReport, RelationError> {
    let digits = opts.digits;
    if digits < MIN_DIGITS {
        return Err(RelationError::DigitsTooSmall(digits));
    }
    let w = digits + GUARD_DIGITS;
    let one = MPReal::one(w);
    let c_one = MPComplex::real(one.clone());
    let render = |x: &MPReal| x.render(digits);
    let render_c = |z: &MPComplex| z.render(digits);
    let exact_check = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(RelationError::ExactPathMismatch(id))
        }
    };

    let mut parameter = None;
    let eval = match id {
        RelationId::E1 => {
            let lhs = &MPComplex::imag(pi(w)?).exp() + &c_one;
            Evaluation {
                lhs: render_c(&lhs),
                rhs: render(&MPReal::zero(w)),
                residual: lhs.abs(),
                approx_value: None,
            }
        }
        RelationId::E2 => {
            parameter = Some(opts.n);
            let sum = roots_of_unity_sum(opts.n, w)?;
            Evaluation {
                lhs: render_c(&sum),
                rhs: render(&MPReal::zero(w)),
                residual: sum.abs(),
                approx_value: None,
            }
        }
        RelationId::Q3 | RelationId::O4 => {
            let theta = pi(w)?;
            let mut worst = MPReal::zero(w);
            if id == RelationId::Q3 {
                for a in directions::<3>(opts)? {
                    let q = pure_exp_quat(&a, &theta)?;
                    let shifted = [&q.w + &one, q.x, q.y, q.z];
                    worst = shifted.iter().map(MPReal::abs).fold(worst, MPReal::max);
                }
            } else {
                for a in directions::<7>(opts)? {
                    let mut o = pure_exp_oct(&a, &theta)?;
                    o.coeffs[0] = &o.coeffs[0] + &one;
                    worst = o.coeffs.iter().map(MPReal::abs).fold(worst, MPReal::max);
                }
            }
            Evaluation {
                lhs: render(&worst),
                rhs: render(&MPReal::zero(w)),
                residual: worst,
                approx_value: None,
            }
        }
        RelationId::R17 | RelationId::R18 => {
            parameter = Some(2);
            let phi = phi2(w)?;
            let phi_sq = &phi * &phi;
            let lhs = if id == RelationId::R17 {
                &phi_sq + &MPReal::parse("0.1", w)?
            } else {
                let c = MPReal::from_ratio(&printed_coefficient(), w);
                &phi_sq + &c.checked_div(&phi)?
            };
            let e = e(w)?;
            Evaluation {
                lhs: render(&lhs),
                rhs: render(&e),
                residual: (&e - &lhs).abs(),
                approx_value: Some(lhs),
            }
        }
        RelationId::R19 => {
            parameter = Some(2);
            exact_check(golden_field::half_phi_is_cos_pi_over_5())?;
            let phi = phi2(w)?;
            let fifth = pi(w)?.div_int(5)?;
            let two_cos = fifth.cos().mul_int(2);
            let rot = MPComplex::imag(fifth).exp();
            let sum = &rot + &rot.conj();
            let members = [
                MPComplex::real(phi.clone()),
                MPComplex::real(two_cos.clone()),
                sum,
            ];
            Evaluation {
                lhs: render(&phi),
                rhs: render(&two_cos),
                residual: max_pairwise(&members),
                approx_value: None,
            }
        }
        RelationId::R20 => {
            parameter = Some(2);
            exact_check(golden_field::phi_times_phi_minus_one_is_one())?;
            let phi = phi2(w)?;
            let p = pi(w)?;
            let lhs = &phi * &(&phi - &one);
            let full_turn = MPComplex::imag(p.mul_int(2)).exp();
            let neg_half_turn = -&MPComplex::imag(p.clone()).exp();
            let quarter = MPComplex::imag(p.div_int(2)?).exp();
            let neg_i_quarter = -&(&MPComplex::i(w) * &quarter);
            let members = [
                MPComplex::real(lhs.clone()),
                full_turn.clone(),
                neg_half_turn,
                neg_i_quarter,
            ];
            Evaluation {
                lhs: render(&lhs),
                rhs: render_c(&full_turn),
                residual: max_pairwise(&members),
                approx_value: None,
            }
        }
        RelationId::R21 => {
            parameter = Some(2);
            exact_check(golden_field::phi_times_minus_one_plus_phi_is_one())?;
            let phi = MPComplex::real(phi2(w)?);
            let half_turn = MPComplex::imag(pi(w)?).exp();
            let lhs = &phi * &(&half_turn + &phi);
            Evaluation {
                lhs: render_c(&lhs),
                rhs: render(&one),
                residual: complex_gap(&lhs, &c_one),
                approx_value: None,
            }
        }
        RelationId::R22 | RelationId::R23 | RelationId::R24 => {
            let p = opts.p;
            parameter = Some(p);
            if p == 2 && id == RelationId::R22 {
                exact_check(golden_field::phi_squared_is_phi_plus_one())?;
            }
            let wp = w + slope_guard(p);
            let ratio = golden_ratio(p, wp)?;
            exact_check(ratio.certify())?;
            let phi = ratio.midpoint().with_scale(wp);
            // powers[k] = Φ^k for k = 0..=p+1
            let mut powers = vec![MPReal::one(wp)];
            for k in 1..=(p as usize + 1) {
                let next = &powers[k - 1] * &phi;
                powers.push(next);
            }
            let sum = |range: std::ops::Range<usize>| {
                powers[range]
                    .iter()
                    .fold(MPReal::zero(wp), |acc, x| &acc + x)
            };
            let pp = &powers[p as usize];
            match id {
                RelationId::R22 => {
                    let rhs = sum(0..p as usize);
                    Evaluation {
                        lhs: render(pp),
                        rhs: render(&rhs),
                        residual: (pp - &rhs).abs(),
                        approx_value: None,
                    }
                }
                RelationId::R23 => {
                    let lhs = &powers[p as usize + 1];
                    let rhs = &pp.mul_int(2) - &MPReal::one(wp);
                    Evaluation {
                        lhs: render(lhs),
                        rhs: render(&rhs),
                        residual: (lhs - &rhs).abs(),
                        approx_value: None,
                    }
                }
                _ => {
                    let half_turn = MPComplex::imag(pi(wp)?).exp();
                    let real = pp - &sum(1..p as usize);
                    let lhs = &half_turn + &MPComplex::real(real);
                    Evaluation {
                        lhs: render_c(&lhs),
                        rhs: render(&MPReal::zero(wp)),
                        residual: lhs.abs(),
                        approx_value: None,
                    }
                }
            }
        }
    };

    let (threshold, pass) = match printed_value(id) {
        Some(printed) => {
            // |printed - e| plus half a unit in the printed last place bounds
            // the residual of any expression that renders as `printed`
            let e_value = e(w)?;
            let printed_value = MPReal::parse(printed, w)?;
            let half_ulp = MPReal::new(BigInt::from(5), PRINTED_DECIMALS + 1).with_scale(w);
            let threshold = &(&printed_value - &e_value).abs() + &half_ulp;
            let rendered = eval
                .approx_value
                .as_ref()
                .map(|v| v.render(PRINTED_DECIMALS));
            let pass = rendered.as_deref() == Some(printed) && eval.residual <= threshold;
            (threshold, pass)
        }
        None => {
            let threshold = exact_threshold(digits);
            let pass = eval.residual <= threshold;
            (threshold, pass)
        }
    };

    Ok(RelationReport {
        relation_id: id,
        kind: id.kind(),
        parameter,
        digits,
        lhs: eval.lhs,
        rhs: eval.rhs,
        residual: Some(eval.residual),
        threshold,
        pass,
        error: None,
    })
}

/// The report parameter `verify` would attach for these options.
pub fn parameter_for(id: RelationId, opts: &VerifyOptions) -> Option<u32> {
    match id {
        RelationId::E1 | RelationId::Q3 | RelationId::O4 => None,
        RelationId::E2 => Some(opts.n),
        RelationId::R22 | RelationId::R23 | RelationId::R24 => Some(opts.p),
        _ => Some(2),
    }
}

/// Which relations and parameters a batch run covers.
#[derive(Clone, Debug)]
pub struct BatchPlan {
    pub p_max: u32,
    pub e2_range: std::ops::RangeInclusive<u32>,
}

impl BatchPlan {
    pub fn new(p_max: u32) -> Self {
        BatchPlan {
            p_max,
            e2_range: 2..=32,
        }
    }

    /// `(relation, parameter)` pairs in output order.
    pub fn entries(&self) -> Vec<(RelationId, Option<u32>)> {
        let mut out = vec![(RelationId::E1, None)];
        out.extend(self.e2_range.clone().map(|n| (RelationId::E2, Some(n))));
        out.push((RelationId::Q3, None));
        out.push((RelationId::O4, None));
        for id in [
            RelationId::R17,
            RelationId::R18,
            RelationId::R19,
            RelationId::R20,
            RelationId::R21,
        ] {
            out.push((id, Some(2)));
        }
        for id in [RelationId::R22, RelationId::R23, RelationId::R24] {
            out.extend((2..=self.p_max).map(|p| (id, Some(p))));
        }
        out
    }
}

/// Runs every relation; failures become failed reports instead of aborting.
pub fn verify_all(digits: u32, p_max: u32) -> Vec<RelationReport> {
    verify_batch(&VerifyOptions::new(digits), &BatchPlan::new(p_max))
}

pub fn verify_batch(base: &VerifyOptions, plan: &BatchPlan) -> Vec<RelationReport> {
    let entries = plan.entries();
    let run = |&(id, param): &(RelationId, Option<u32>)| {
        let mut opts = base.clone();
        match id {
            RelationId::E2 => opts.n = param.unwrap_or(2),
            RelationId::R22 | RelationId::R23 | RelationId::R24 => opts.p = param.unwrap_or(2),
            _ => {}
        }
        verify(id, &opts).unwrap_or_else(|err| RelationReport::failed(id, param, base.digits, &err))
    };
    // independent checks; results are collected back in plan order
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(entries.len().max(1));
    let chunk = entries.len().div_ceil(threads).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(run).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification thread panicked"))
            .collect()
    })
}
