//! Acceptance suite: one line per criterion, `criterion N: PASS|FAIL ...`.
//! Runs without the libtest harness so every line reaches the output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use hypersob::doc::PolynomialDoc;
use hypersob_core::exact::{factorial, frac, int, sign_pow, to_f64};
use hypersob_core::family::{gen_u, gen_y_ode, gen_y_toeplitz, y};
use hypersob_core::sobolev::{apply_l, circle_inner, circle_inner_quadrature, gram, sobolev_inner};
use hypersob_core::verify::{
    check_fasenmyer_expansions, check_incomplete_gamma, check_step_rho, relation_nullspace, residual_ode_high,
    residual_ode_second, residual_recurrence_u, residual_recurrence_y, residual_u_ode, run_suite, solve_phi,
    CheckStatus, PhiSource, Suite, GAMMA_POINTS,
};
use hypersob_core::{Polynomial, Rational, Scaling};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn random_pairs(count: usize, max_len: usize) -> Vec<(Polynomial, Polynomial)> {
    let coeff = (-40i64..=40, 1i64..=9).prop_map(|(a, b)| frac(a, b));
    let poly = proptest::collection::vec(coeff, 0..=max_len).prop_map(Polynomial::from_coeffs);
    let pair = (poly.clone(), poly);
    let mut runner = TestRunner::deterministic();
    (0..count)
        .map(|_| pair.new_tree(&mut runner).expect("strategy").current())
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 0..=20 {
        for rho in 1..=6 {
            let closed = y(n, rho, Scaling::Hypergeometric);
            ensure(gen_y_toeplitz(n, rho) == closed, || format!("toeplitz differs at n={n} rho={rho}"))?;
            let scaled = closed.scale(&factorial(n as u64));
            ensure(gen_y_ode(n, rho) == scaled, || format!("ode solve differs at n={n} rho={rho}"))?;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok("three generators agree for n <= 20, rho <= 6".into())
}

fn criterion_2() -> Outcome {
    for n in 0..=20 {
        for rho in 1..=6 {
            let image = apply_l(rho, &gen_y_ode(n, rho));
            ensure(image == Polynomial::monomial(Rational::one(), n), || format!("L y_n != x^n at n={n} rho={rho}"))?;
        }
    }
    Ok("L_rho y_n = x^n for n <= 20, rho <= 6".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for rho in 1..=5 {
        let g = gram(12, rho, Scaling::Ode);
        let h = gram(12, rho, Scaling::Hypergeometric);
        for i in 0..=12 {
            for j in 0..=12 {
                let identity = if i == j { Rational::one() } else { Rational::zero() };
                ensure(g[i][j] == identity, || format!("ode Gram entry ({i},{j}) = {} at rho={rho}", g[i][j]))?;
                let f = factorial(i as u64);
                let diag = if i == j { (&f * &f).recip() } else { Rational::zero() };
                ensure(h[i][j] == diag, || format!("hypergeometric Gram entry ({i},{j}) = {} at rho={rho}", h[i][j]))?;
            }
        }
    }
    for (k, (f, g)) in random_pairs(200, 12).iter().enumerate() {
        let rho = (k % 6) as u32 + 1;
        ensure(sobolev_inner(f, g, rho) == circle_inner(&apply_l(rho, f), &apply_l(rho, g)), || {
            format!("factorization fails on pair {k}")
        })?;
    }
    within(start, Duration::from_secs(10))?;
    Ok("Gram(12) = I (ode), diag 1/(n!)^2 (hypergeometric); rank-1 law on 200 pairs".into())
}

fn criterion_4() -> Outcome {
    for n in 0..=15 {
        for rho in 1..=5 {
            for s in Scaling::ALL {
                ensure(residual_ode_high(n, rho, s).is_zero(), || format!("order-rho ODE, n={n} rho={rho} {s}"))?;
                ensure(residual_ode_second(n, rho, s).is_zero(), || format!("second-order ODE, n={n} rho={rho} {s}"))?;
            }
            ensure(residual_u_ode(n, rho).is_zero(), || format!("2F0 ODE, n={n} rho={rho}"))?;
        }
    }
    Ok("all differential-equation residuals vanish for n <= 15, rho <= 5".into())
}

fn criterion_5() -> Outcome {
    for n in 0..=15usize {
        for rho in 1..=5u32 {
            // zⁿ y(-1/z) has coefficient (-1)^k c_k at z^{n-k}
            let yc = y(n, rho, Scaling::Hypergeometric);
            let factor = factorial(n as u64) * sign_pow(n as u64 + u64::from(rho));
            let coeffs: Vec<Rational> = (0..=n)
                .map(|i| {
                    let k = n - i;
                    yc.coeff(k) * sign_pow(k as u64) * &factor
                })
                .collect();
            ensure(gen_u(n, rho) == Polynomial::from_coeffs(coeffs), || format!("reversal fails at n={n} rho={rho}"))?;
        }
    }
    Ok("u_n(z) = n!(-1)^(n+rho) z^n y_n(-1/z) for n <= 15, rho <= 5".into())
}

fn criterion_6() -> Outcome {
    let mut phi5_mismatches = Vec::new();
    let mut points = 0;
    for n in 2..=12usize {
        for rho in 2..=5u32 {
            let r = check_fasenmyer_expansions(n, rho);
            ensure(r.status == CheckStatus::Pass, || format!("expansions fail at n={n} rho={rho}: {:?}", r.detail))?;
            let basis = relation_nullspace(n, rho).map_err(|e| e.to_string())?;
            ensure(basis.len() == 1, || format!("nullspace dimension {} at n={n} rho={rho}", basis.len()))?;
            let phi = solve_phi(n, rho).map_err(|e| e.to_string())?;
            let (n_q, rho_q) = (int(n as i64), int(rho.into()));
            ensure(phi.at(3).is_one(), || format!("phi3 = {} at n={n} rho={rho}", phi.at(3)))?;
            ensure(*phi.at(4) == &n_q + &rho_q, || format!("phi4 = {} at n={n} rho={rho}", phi.at(4)))?;
            if *phi.at(5) != int(-1) {
                phi5_mismatches.push(format!("n={n} rho={rho}: phi5 = {}", phi.at(5)));
            }
            points += 1;
            let sum = phi.at(1) + phi.at(2) + phi.at(3) + phi.at(6);
            ensure(sum.is_zero(), || format!("phi1+phi2+phi3+phi6 = {sum} at n={n} rho={rho}"))?;
            let res = residual_recurrence_u(n, rho, &phi).map_err(|e| e.to_string())?;
            ensure(res.is_zero(), || format!("u recurrence residual nonzero at n={n} rho={rho}"))?;
        }
    }
    ensure(phi5_mismatches.is_empty(), || {
        format!(
            "phi5 != -1 at {}/{points} points (e.g. {}); expansions, 1-dim nullspace, phi3, phi4, \
             phi1+phi2+phi3+phi6 = 0 and the u recurrence all hold",
            phi5_mismatches.len(),
            phi5_mismatches[..2.min(phi5_mismatches.len())].join(", ")
        )
    })?;
    Ok("expansions, 1-dim nullspace, normalization and u recurrence on 2 <= n <= 12, 2 <= rho <= 5".into())
}

fn criterion_7() -> Outcome {
    for n in 2..=12 {
        for rho in 2..=5 {
            let res = residual_recurrence_y(n, rho, PhiSource::Solved).map_err(|e| e.to_string())?;
            ensure(res.is_zero(), || format!("y recurrence residual nonzero at n={n} rho={rho}"))?;
        }
    }
    let fidelity = run_suite(12, 5, Suite::Fidelity);
    let mut emitted = 0;
    for n in 2..=12i64 {
        for rho in 2..=5i64 {
            for name in ["phi_printed_vs_solved", "recurrence_y_printed"] {
                let found = fidelity.iter().any(|r| {
                    r.check_name == name
                        && r.n() == Some(n)
                        && r.rho() == Some(rho)
                        && r.status != CheckStatus::NotApplicable
                });
                ensure(found, || format!("{name} missing at n={n} rho={rho}"))?;
                emitted += 1;
            }
        }
    }
    Ok(format!("solved y recurrence exact; {emitted} printed-form entries in the fidelity report"))
}

fn criterion_8() -> Outcome {
    for n in 0..=20 {
        for rho in 1..=5 {
            let r = check_step_rho(n, rho);
            ensure(r.status == CheckStatus::Pass, || format!("step recurrence fails at n={n} rho={rho}"))?;
        }
    }
    Ok("coefficient step in rho exact for n <= 20, rho <= 5".into())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 0..=8 {
        for a in GAMMA_POINTS {
            let r = check_incomplete_gamma(n, a, 1e-8);
            let err = r.numeric_error.unwrap_or(f64::INFINITY);
            ensure(r.status == CheckStatus::Pass, || format!("n={n} a={a}: relative error {err:e}"))?;
            worst = worst.max(err);
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("worst relative error {worst:.2e}"))
}

fn criterion_10() -> Outcome {
    let mut worst = 0.0f64;
    for (k, (f, g)) in random_pairs(100, 14).iter().enumerate() {
        let deg = |p: &Polynomial| p.degree().finite().unwrap_or(0);
        let exact = to_f64(&circle_inner(f, g));
        let q = circle_inner_quadrature(f, g, 2 * deg(f).max(deg(g)) + 1).map_err(|e| e.to_string())?;
        let abs_err = (q.re() - exact).hypot(q.im());
        // an exactly zero inner product leaves only the absolute error to test
        let err = if exact == 0.0 { abs_err } else { abs_err / exact.abs() };
        ensure(err <= 1e-10, || format!("pair {k}: relative error {err:e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("100 pairs, worst relative error {worst:.2e}"))
}

fn criterion_11() -> Outcome {
    for rho in 1..=6u32 {
        let p = y(1, rho, Scaling::Hypergeometric);
        let root = -(p.coeff(0) / p.coeff(1));
        ensure(root == int(-i64::from(rho)), || format!("root {root} at rho={rho}"))?;
        ensure(p.eval(&root).is_zero(), || format!("not a root at rho={rho}"))?;
        let unit = root.numer().magnitude() == root.denom().magnitude();
        ensure(unit == (rho == 1), || format!("unit modulus {unit} at rho={rho}"))?;
    }
    Ok("root of y_1 is -rho, on the unit circle only for rho = 1".into())
}

fn criterion_12() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hypersob");
    let out = Command::new(bin)
        .args(["verify", "--n-max", "12", "--rho-max", "5", "--suite", "all", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("verify exited with {:?}", out.status.code()))?;
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(doc["summary"]["failed"] == 0, || format!("summary {}", doc["summary"]))?;
    let mut checked = 0;
    for n in [0usize, 1, 5, 13] {
        for rho in [1u32, 3, 6] {
            for s in Scaling::ALL {
                let out = Command::new(bin)
                    .args(["gen", "--n", &n.to_string(), "--rho", &rho.to_string(), "--scaling", s.as_str()])
                    .output()
                    .map_err(|e| e.to_string())?;
                ensure(out.status.success(), || format!("gen failed for n={n} rho={rho} {s}"))?;
                let doc: PolynomialDoc = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
                let p = doc.polynomial().map_err(|e| e.to_string())?;
                ensure(p == y(n, rho, s), || format!("round trip differs for n={n} rho={rho} {s}"))?;
                ensure(doc.n == n && doc.rho == rho && doc.scaling == s.as_str(), || "header mismatch".into())?;
                checked += 1;
            }
        }
    }
    Ok(format!("verify exits 0 with {} mandatory passes; {checked} gen round trips exact", doc["summary"]["passed"]))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {id}: PASS {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id}: FAIL {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
