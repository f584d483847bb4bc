//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pgolden::cli;
use pgolden::hypercomplex::roots_of_unity_sum;
use pgolden::relations::{
    printed_coefficient, verify, verify_all, RelationId, RelationKind, VerifyOptions,
};
use pgolden::{golden_ratio, golden_section, nth_term_fast, ratio_at, MPReal};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn tol(exponent: u32) -> MPReal {
    MPReal::new(BigInt::one(), exponent)
}

fn pgolden(args: &[&str]) -> (u8, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        std::iter::once("pgolden").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn residual(id: RelationId, opts: &VerifyOptions) -> Result<MPReal, String> {
    let r = verify(id, opts).map_err(|e| format!("{id}: {e}"))?;
    r.residual.ok_or_else(|| format!("{id}: no residual"))
}

fn fibonacci_listing() -> Outcome {
    let (code, out) = pgolden(&["seq", "--p", "2", "--seeds", "0,1", "--count", "11"]);
    let out = String::from_utf8_lossy(&out).into_owned();
    ensure(code == 0 && out == "0,1,1,2,3,5,8,13,21,34,55\n", || {
        format!("exit {code}, output {out:?}")
    })?;
    Ok(out.trim_end().to_string())
}

fn golden_ratio_two() -> Outcome {
    let short = golden_ratio(2, 10)
        .map_err(|e| e.to_string())?
        .value()
        .to_string();
    ensure(short == "1.6180339887", || format!("rendered {short}"))?;
    let phi = golden_ratio(2, 50)
        .map_err(|e| e.to_string())?
        .value()
        .clone();
    let root5 = MPReal::from_int(5, 50).sqrt().map_err(|e| e.to_string())?;
    let closed = (&MPReal::one(50) + &root5)
        .div_int(2)
        .map_err(|e| e.to_string())?;
    let gap = (&phi - &closed).abs();
    ensure(gap <= tol(48), || format!("gap {gap}"))?;
    Ok(format!("{short}, gap vs sqrt path {}", gap.render(50)))
}

/// `Φ² + extra(Φ)` at 60 digits.
fn phi_squared_plus(extra: impl Fn(&MPReal) -> MPReal) -> Result<MPReal, String> {
    let phi = golden_ratio(2, 60)
        .map_err(|e| e.to_string())?
        .midpoint()
        .with_scale(60);
    Ok(&(&phi * &phi) + &extra(&phi))
}

fn approximation(
    id: RelationId,
    lhs: Result<MPReal, String>,
    printed: &str,
    check: impl Fn(&MPReal) -> bool,
    bound: &str,
) -> Outcome {
    let r = verify(id, &VerifyOptions::new(50)).map_err(|e| e.to_string())?;
    let res = r.residual.clone().ok_or("no residual")?;
    let shown = lhs?.render(10);
    ensure(shown == printed && r.pass, || {
        format!("rendered {shown}, pass {}", r.pass)
    })?;
    ensure(check(&res), || {
        format!("residual {} outside {bound}", res.render(15))
    })?;
    Ok(format!("{shown}, residual {}", res.render(15)))
}

fn exact_identities() -> Outcome {
    let opts = VerifyOptions::new(50);
    let mut worst = MPReal::zero(50);
    for id in [
        RelationId::E1,
        RelationId::R19,
        RelationId::R20,
        RelationId::R21,
    ] {
        let r = residual(id, &opts)?;
        ensure(r <= tol(45), || format!("{id} residual {}", r.render(50)))?;
        worst = worst.max(r);
    }
    Ok(format!("max residual {}", worst.render(50)))
}

fn roots_of_unity() -> Outcome {
    let ns: Vec<u32> = (2..=64).chain([360, 1000]).collect();
    for &n in &ns {
        let s = roots_of_unity_sum(n, 50).map_err(|e| e.to_string())?;
        let bound = MPReal::new(n.into(), 48);
        let a = s.abs();
        ensure(a < bound, || format!("n={n}: |sum| = {}", a.render(50)))?;
    }
    Ok(format!("{} values of n", ns.len()))
}

fn hypercomplex_sweep() -> Outcome {
    let mut opts = VerifyOptions::new(40);
    opts.vectors = 1000;
    opts.seed = 1;
    let mut worst = MPReal::zero(40);
    for id in [RelationId::Q3, RelationId::O4] {
        let r = residual(id, &opts)?;
        ensure(r < tol(30), || {
            format!("{id} max component {}", r.render(40))
        })?;
        worst = worst.max(r);
    }
    Ok(format!("max component {}", worst.render(40)))
}

fn p_golden_identities() -> Outcome {
    let mut opts = VerifyOptions::new(50);
    let mut worst = MPReal::zero(50);
    for p in 2..=16 {
        opts.p = p;
        for id in [RelationId::R22, RelationId::R23, RelationId::R24] {
            let r = residual(id, &opts)?;
            ensure(r <= tol(45), || {
                format!("{id} p={p} residual {}", r.render(50))
            })?;
            worst = worst.max(r);
        }
    }
    let mut worst_product = MPReal::zero(50);
    for p in 2..=64 {
        let phi = golden_ratio(p, 50).map_err(|e| e.to_string())?.midpoint();
        let gap = &MPReal::from_int(2, phi.scale()) - &phi;
        let err = (&(&phi.powi(p) * &gap) - &MPReal::one(phi.scale())).abs();
        ensure(err <= tol(45), || {
            format!("product identity p={p}: {}", err.render(50))
        })?;
        worst_product = worst_product.max(err);
    }
    Ok(format!(
        "max residual {}, max product error {}",
        worst.render(50),
        worst_product.render(55)
    ))
}

fn naive(p: usize, seeds: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut t = seeds.to_vec();
    while t.len() <= n {
        let next = t[t.len() - p..].iter().sum();
        t.push(next);
    }
    t
}

fn fast_terms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cases = 0;
    for p in 1..=8usize {
        for _ in 0..50 {
            let seeds: Vec<BigInt> = (0..p)
                .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                .collect();
            let terms = naive(p, &seeds, 200);
            let mut ns: Vec<usize> = (0..16).map(|_| rng.gen_range(0..=200)).collect();
            ns.extend([0, p - 1, p, 200]);
            for n in ns {
                cases += 1;
                let fast = nth_term_fast(p, &seeds, n as u64).map_err(|e| e.to_string())?;
                ensure(fast == terms[n], || format!("p={p} seeds={seeds:?} n={n}"))?;
            }
        }
    }
    let f50 = nth_term_fast(2, &[BigInt::zero(), BigInt::one()], 50).map_err(|e| e.to_string())?;
    ensure(f50 == BigInt::from(12_586_269_025u64), || {
        format!("F_50 = {f50}")
    })?;
    Ok(format!("{cases} cases, F_50 = {f50}"))
}

fn convergence() -> Outcome {
    let mut worst = MPReal::zero(40);
    for p in 2..=8u32 {
        let mut seeds = vec![BigInt::zero(); p as usize];
        seeds[p as usize - 1] = BigInt::one();
        let phi = golden_ratio(p, 40).map_err(|e| e.to_string())?.midpoint();
        let r = ratio_at(p as usize, &seeds, 64)
            .map_err(|e| e.to_string())?
            .to_decimal(40);
        let gap = (&r - &phi).abs();
        ensure(gap < tol(12), || format!("p={p} gap {}", gap.render(20)))?;
        worst = worst.max(gap);
    }
    let phi = golden_ratio(2, 40).map_err(|e| e.to_string())?.midpoint();
    let r = ratio_at(2, &[BigInt::zero(), BigInt::one()], 30)
        .map_err(|e| e.to_string())?
        .to_decimal(40);
    let fib_gap = (&r - &phi).abs();
    ensure(fib_gap < tol(12), || {
        format!("Fibonacci gap {}", fib_gap.render(20))
    })?;
    Ok(format!(
        "max gap {}, Fibonacci n=30 gap {}",
        worst.render(20),
        fib_gap.render(20)
    ))
}

fn segment_division() -> Outcome {
    let bound = tol(27);
    for p in 2..=6u32 {
        let s = golden_section(p, &MPReal::one(0), 30).map_err(|e| e.to_string())?;
        let phi = golden_ratio(p, 40).map_err(|e| e.to_string())?.midpoint();
        let sum_err = (&s.sum() - &MPReal::one(0)).abs();
        ensure(sum_err <= bound, || format!("p={p} sum error {sum_err}"))?;
        for w in s.lengths.windows(2) {
            let r = w[1].checked_div(&w[0]).map_err(|e| e.to_string())?;
            ensure((&r - &phi).abs() <= bound, || {
                format!("p={p} ratio {}", r.render(30))
            })?;
        }
        let last = s.lengths.last().ok_or("no lengths")?;
        let r = MPReal::one(last.scale())
            .checked_div(last)
            .map_err(|e| e.to_string())?;
        ensure((&r - &phi).abs() <= bound, || {
            format!("p={p} total/a_p {}", r.render(30))
        })?;
    }
    Ok("p = 2..6".to_string())
}

fn determinism() -> Outcome {
    let args = ["selftest", "--digits", "50", "--seed-rng", "7"];
    let (code_a, a) = pgolden(&args);
    let (code_b, b) = pgolden(&args);
    ensure(code_a == code_b && a == b, || {
        "selftest outputs differ".to_string()
    })?;
    ensure(code_a == 0, || format!("selftest exit {code_a}"))?;

    let low = verify_all(50, 16);
    let high = verify_all(100, 16);
    for (x, y) in low.iter().zip(&high) {
        if x.kind == RelationKind::ExactIdentity {
            ensure(x.pass == y.pass, || {
                format!("{} {:?} flips", x.relation_id, x.parameter)
            })?;
        }
    }
    Ok(format!(
        "{} bytes identical, {} verdicts stable",
        a.len(),
        low.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Fibonacci listing", fibonacci_listing),
        ("golden ratio p=2", golden_ratio_two),
        ("Φ² + 0.1 ≈ e", || {
            approximation(
                RelationId::R17,
                phi_squared_plus(|_| MPReal::parse("0.1", 60).unwrap()),
                "2.7180339887",
                |r| {
                    MPReal::parse("0.00024", 50).unwrap() < *r
                        && *r < MPReal::parse("0.00025", 50).unwrap()
                },
                "(2.4e-4, 2.5e-4)",
            )
        }),
        ("Φ² + c/Φ ≈ e", || {
            let c = MPReal::from_ratio(&printed_coefficient(), 60);
            let lhs = phi_squared_plus(|phi| c.checked_div(phi).unwrap());
            approximation(
                RelationId::R18,
                lhs,
                "2.7182818353",
                |r| *r < tol(8),
                "[0, 1e-8)",
            )
        }),
        ("exact identities E1 R19 R20 R21", exact_identities),
        ("roots of unity sum to zero", roots_of_unity),
        ("quaternion and octonion half turns", hypercomplex_sweep),
        ("p-golden identities", p_golden_identities),
        ("fast terms match naive recurrence", fast_terms),
        ("term ratios converge", convergence),
        ("segment division", segment_division),
        ("determinism", determinism),
    ];

    let start = Instant::now();
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({:.1?})", k + 1, t.elapsed()),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why} ({:.1?})", k + 1, t.elapsed());
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
