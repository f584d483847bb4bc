//! Seeded property sweep over every module, used by `pgolden selftest`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charpoly::golden_ratio;
use crate::mpnum::MPReal;
use crate::relations::{verify_batch, BatchPlan, VerifyOptions};
use crate::sequences::{generate, nth_term_fast, PSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            detail: detail.into(),
            pass,
        }
    }
}

fn tol(exponent: u32) -> MPReal {
    MPReal::new(BigInt::one(), exponent)
}

fn naive_term(p: usize, seeds: &[BigInt], n: usize) -> BigInt {
    let mut t = seeds.to_vec();
    while t.len() <= n {
        let s = t[t.len() - p..].iter().sum();
        t.push(s);
    }
    t[n].clone()
}

fn random_seeds(rng: &mut ChaCha8Rng, p: usize) -> Vec<BigInt> {
    loop {
        let s: Vec<i64> = (0..p).map(|_| rng.gen_range(-9..=9)).collect();
        if s.iter().any(|&x| x != 0) {
            return s.into_iter().map(BigInt::from).collect();
        }
    }
}

fn sequence_checks(rng: &mut ChaCha8Rng, digits: u32) -> Vec<Check> {
    let mut out = Vec::new();

    let mut mismatches = 0;
    let mut cases = 0;
    for p in 1..=8usize {
        for _ in 0..5 {
            let seeds = random_seeds(rng, p);
            for _ in 0..4 {
                let n = rng.gen_range(0..=200usize);
                cases += 1;
                if nth_term_fast(p, &seeds, n as u64).ok() != Some(naive_term(p, &seeds, n)) {
                    mismatches += 1;
                }
            }
        }
    }
    out.push(Check::new(
        "sequences.fast_term_oracle",
        mismatches == 0,
        format!("{cases} cases, {mismatches} mismatches"),
    ));

    let mut bad = 0;
    for p in 1..=8usize {
        let seeds = random_seeds(rng, p);
        let seq = generate(p, &seeds, 120).expect("valid seeds");
        let t = seq.terms();
        for n in p..t.len() - 1 {
            let window: BigInt = t[n - p..n].iter().sum();
            if t[n] != window || t[n + 1] != (&t[n] << 1u32) - &t[n - p] {
                bad += 1;
            }
        }
    }
    out.push(Check::new(
        "sequences.recurrence_and_doubling",
        bad == 0,
        format!("{bad} violations"),
    ));

    let mut worst = MPReal::zero(digits);
    for p in 2..=8usize {
        let mut seeds = vec![BigInt::zero(); p];
        seeds[p - 1] = BigInt::one();
        let mut seq = PSequence::new(p, seeds).expect("valid seeds");
        let ratio = seq.ratio_at(64).expect("positive term").to_decimal(digits);
        let phi = golden_ratio(p as u32, digits)
            .expect("p >= 2")
            .value()
            .clone();
        worst = worst.max((&ratio - &phi).abs());
    }
    out.push(Check::new(
        "sequences.limit_ratio_n64",
        worst < tol(12),
        format!("max gap {}", worst.render(20)),
    ));
    out
}

fn charpoly_checks(digits: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let mut uncertified = Vec::new();
    let mut bound_failures = Vec::new();
    let mut product_worst = MPReal::zero(digits);
    let mut previous: Option<MPReal> = None;
    let mut monotone = true;
    for p in 2..=64u32 {
        let g = golden_ratio(p, digits).expect("p >= 2");
        if !g.certify() || g.width() > tol(digits) {
            uncertified.push(p);
        }
        let phi = g.midpoint();
        let gap = &MPReal::from_int(2, phi.scale()) - &phi;
        let lower = MPReal::one(p + 1)
            .checked_div(&MPReal::from_int(BigInt::one() << (p + 1), 0))
            .expect("nonzero");
        let upper = MPReal::one(p + 1)
            .checked_div(&MPReal::from_int(BigInt::one() << (p - 1), 0))
            .expect("nonzero");
        if !(lower < gap && gap < upper) {
            bound_failures.push(p);
        }
        let prod = &phi.powi(p) * &gap;
        product_worst = product_worst.max((&prod - &MPReal::one(phi.scale())).abs());
        if let Some(prev) = &previous {
            monotone &= &phi > prev;
        }
        previous = Some(phi);
    }
    out.push(Check::new(
        "charpoly.certified_enclosures_p2_64",
        uncertified.is_empty(),
        format!("uncertified: {uncertified:?}"),
    ));
    out.push(Check::new(
        "charpoly.tail_bounds_p2_64",
        bound_failures.is_empty() && monotone,
        format!("bound failures: {bound_failures:?}, increasing in p: {monotone}"),
    ));
    out.push(Check::new(
        "charpoly.product_identity_p2_64",
        product_worst <= tol(digits - 5),
        format!("max |Φ^p (2 - Φ) - 1| = {}", product_worst.render(digits)),
    ));
    out
}

fn random_real(rng: &mut ChaCha8Rng, lo: i64, hi: i64, digits: u32) -> MPReal {
    let unit = 10i64.pow(12);
    MPReal::new(rng.gen_range(lo * unit..=hi * unit).into(), 12).with_scale(digits)
}

fn mpnum_checks(rng: &mut ChaCha8Rng, digits: u32) -> Vec<Check> {
    let mut pyth_worst = MPReal::zero(digits);
    let mut sqrt_worst = MPReal::zero(2 * digits);
    for _ in 0..20 {
        let x = random_real(rng, -10, 10, digits);
        let (s, c) = x.sin_cos();
        let one = s.mul_exact(&s) + c.mul_exact(&c);
        pyth_worst = pyth_worst.max((&one - &MPReal::one(digits)).abs().with_scale(digits));

        let y = random_real(rng, 0, 1, digits);
        let r = y.sqrt().expect("nonnegative");
        sqrt_worst = sqrt_worst.max((&r.mul_exact(&r) - &y).abs());
    }
    vec![
        Check::new(
            "mpnum.pythagorean",
            pyth_worst <= tol(digits - 2),
            format!("max |sin²+cos²-1| = {}", pyth_worst.render(digits)),
        ),
        Check::new(
            "mpnum.sqrt_round_trip",
            sqrt_worst <= MPReal::new(2.into(), digits),
            format!("max |sqrt(x)²-x| = {}", sqrt_worst.render(digits + 2)),
        ),
    ]
}

/// Runs the whole sweep; `seed` drives every random choice.
pub fn run(digits: u32, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    checks.extend(mpnum_checks(&mut rng, digits));
    checks.extend(sequence_checks(&mut rng, digits));
    checks.extend(charpoly_checks(digits));

    let mut opts = VerifyOptions::new(digits);
    opts.seed = seed;
    opts.vectors = 200;
    for r in verify_batch(&opts, &BatchPlan::new(16)) {
        let name = match r.parameter {
            Some(p) => format!("relations.{}[{}]", r.relation_id, p),
            None => format!("relations.{}", r.relation_id),
        };
        let detail = match (&r.residual, &r.error) {
            (_, Some(err)) => format!("error: {err}"),
            (Some(res), None) => format!(
                "{} residual {} threshold {}",
                r.kind.as_str(),
                res.render(digits),
                r.threshold.render(digits)
            ),
            (None, None) => String::new(),
        };
        checks.push(Check::new(name, r.pass, detail));
    }
    checks
}
