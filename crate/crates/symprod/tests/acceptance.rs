//! Acceptance gate: one test per structural claim the library is built
//! around, each ending in a single printed pass line. All comparisons are
//! exact; the timed criteria assert their wall-clock budgets.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! pass/fail lines.

use std::time::Instant;

use symprod::cdga::{quotient_ring_oracle, two_gen_sp_model, odd_sphere_sp_model};
use symprod::corpus::FIXTURES;
use symprod::presentation::parse_presentation;
use symprod::realize::realize;
use symprod::scalar;
use symprod::series::{free_series_from_counts, sp_series};
use symprod::sp::SpContext;
use symprod::verify::run_suite;
use symprod::{Limits, Monomial};

fn algebra_of(text: &str, cutoff: usize) -> symprod::AlgebraData {
    realize(&parse_presentation(text).unwrap(), cutoff).unwrap()
}

fn budget(name: &str, started: Instant, limit_secs: f64) -> f64 {
    let secs = started.elapsed().as_secs_f64();
    assert!(
        secs < limit_secs,
        "{} took {:.2}s, budget {:.0}s",
        name,
        secs,
        limit_secs
    );
    secs
}

#[test]
fn criterion_1_truncated_polynomial_tower() {
    let t = Instant::now();
    for n in 1..=6usize {
        let a = algebra_of("gen x:2; rel x^2;", 2 * n + 2);
        let ctx = SpContext::new(&a, n, Limits::default()).unwrap();
        let dims = ctx.dims(2 * n).unwrap();
        let expected: Vec<usize> = (0..=2 * n).map(|d| usize::from(d % 2 == 0)).collect();
        assert_eq!(dims, expected, "series mismatch at n = {}", n);
        let x = ctx.phi_gen((2, 0)).unwrap();
        let mut power = ctx.one();
        for k in 1..=n {
            power = ctx.mul(&power, &x).unwrap();
            assert!(!power.is_zero(), "[x]^{} vanished in SP^{}", k, n);
        }
        power = ctx.mul(&power, &x).unwrap();
        assert!(power.is_zero(), "[x]^{} nonzero in SP^{}", n + 1, n);
    }
    let secs = budget("criterion 1", t, 10.0);
    println!(
        "criterion 1: SP^n of Q[x]/(x^2) is Q[x]/(x^(n+1)) for n = 1..6 ... PASS ({:.2}s)",
        secs
    );
}

#[test]
fn criterion_2_stable_range_isomorphism() {
    let t = Instant::now();
    let report = run_suite("lemma-iso", &Limits::default()).unwrap();
    assert!(
        report.pass,
        "first failing check: {:?}",
        report.first_failure()
    );
    let secs = budget("criterion 2", t, 60.0);
    println!(
        "criterion 2: phi maps Lambda(A_+) isomorphically in degrees <= n on all fixtures ({} checks) ... PASS ({:.2}s)",
        report.checks.len(),
        secs
    );
}

#[test]
fn criterion_3_macdonald_equals_brute_force() {
    let t = Instant::now();
    let mut checks = 0;
    for f in FIXTURES {
        let a = f.realize(10).unwrap();
        let betti = a.betti();
        for n in 1..=4usize {
            let ctx = SpContext::new(&a, n, Limits::default()).unwrap();
            let brute = ctx.dims(10).unwrap();
            let formula = sp_series(&betti, n, 10).unwrap().to_dims().unwrap();
            assert_eq!(brute, formula, "fixture {} at n = {}", f.name, n);
            checks += 1;
        }
    }
    let secs = budget("criterion 3", t, 120.0);
    println!(
        "criterion 3: brute-force invariant dimensions equal Macdonald coefficients ({} fixture/n pairs, D = 10) ... PASS ({:.2}s)",
        checks, secs
    );
}

#[test]
fn criterion_4_layer_components() {
    let report = run_suite("series-stability", &Limits::default()).unwrap();
    assert!(
        report.pass,
        "first failing check: {:?}",
        report.first_failure()
    );
    println!(
        "criterion 4: G_0 = 1, z^i | G_i, layers sum to the SP^n series, series stable in degrees <= n ({} checks) ... PASS",
        report.checks.len()
    );
}

#[test]
fn criterion_5_free_series_at_large_n() {
    for f in FIXTURES {
        let a = f.realize(10).unwrap();
        let betti = a.betti();
        let mut counts = betti.clone();
        counts[0] = 0;
        let stable = sp_series(&betti, 10, 10).unwrap();
        assert_eq!(
            stable,
            free_series_from_counts(&counts, 10),
            "fixture {}",
            f.name
        );
    }
    println!(
        "criterion 5: for n >= D the SP^n series equals the free-algebra series on A_+ (all fixtures, D = 10) ... PASS"
    );
}

#[test]
fn criterion_6_two_generator_free_description() {
    let report = run_suite("prop-free", &Limits::default()).unwrap();
    assert!(
        report.pass,
        "first failing check: {:?}",
        report.first_failure()
    );
    let discrepancy_checks = report
        .checks
        .iter()
        .filter(|c| c.name == "literal-exponents-disagree-with-brute")
        .count();
    assert!(discrepancy_checks > 0, "discrepancy documentation missing");
    println!(
        "criterion 6: SP^n of a free two-generator algebra is free on the power-sum classes; the literal exponent table fails against brute force at r = 2 while the derived one passes ({} checks, {} discrepancy witnesses) ... PASS",
        report.checks.len(),
        discrepancy_checks
    );
}

#[test]
fn criterion_7_linearized_homotopy_is_reduced_cohomology() {
    let t = Instant::now();
    let report = run_suite("dold-thom", &Limits::default()).unwrap();
    assert!(
        report.pass,
        "first failing check: {:?}",
        report.first_failure()
    );
    assert!(report.checks.len() >= 31, "needs all model fixtures plus 20 random CDGAs");
    let secs = budget("criterion 7", t, 120.0);
    println!(
        "criterion 7: linearized homotopy of Lambda(A_+) equals reduced cohomology of (A, d) through degree 10 ({} models) ... PASS ({:.2}s)",
        report.checks.len(),
        secs
    );
}

#[test]
fn criterion_8_projective_space_tables() {
    for m in 1..=4usize {
        for n in 1..=4usize {
            let max_degree = (4 * (m + n)).min(16);
            let model = two_gen_sp_model(1, m + 1, n).unwrap();
            let (red, _) = model.reduce().unwrap();

            let homotopy = red.linearized_homotopy(max_degree);
            for d in 0..=max_degree {
                let even_part = d % 2 == 0 && d >= 2 && d <= 2 * m.min(n);
                let odd_part = d % 2 == 1 && d >= 2 * m.max(n) + 1 && d <= 2 * (m + n) - 1;
                assert_eq!(
                    homotopy.get(d).unwrap(),
                    usize::from(even_part || odd_part),
                    "homotopy at m={} n={} degree {}",
                    m,
                    n,
                    d
                );
            }

            let oracle = quotient_ring_oracle(n, m, max_degree).unwrap();
            assert!(oracle.agree, "oracle internal mismatch at m={} n={}", m, n);
            let cohomology = red.cohomology(max_degree);
            let dims: Vec<usize> = (0..=max_degree).map(|d| cohomology.get(d).unwrap()).collect();
            assert_eq!(dims, oracle.dims, "cohomology at m={} n={}", m, n);

            if m == 1 {
                let cpn: Vec<usize> = (0..=max_degree)
                    .map(|d| usize::from(d % 2 == 0 && d <= 2 * n))
                    .collect();
                assert_eq!(dims, cpn, "H(CP^n) shape at n={}", n);
            }
        }
    }
    println!(
        "criterion 8: reduced SP^n(CP^m) models reproduce the parity-refined homotopy table and the quotient-ring cohomology for m, n <= 4 ... PASS"
    );
}

#[test]
fn criterion_9_sphere_families() {
    let mut signs = Vec::new();
    for m in 1..=2usize {
        let mut factorial = 1u64;
        for n in 1..=4usize {
            factorial *= n as u64;
            let model = two_gen_sp_model(m, 2, n).unwrap();
            let (red, _) = model.reduce().unwrap();
            let gens = red.gens();
            assert_eq!(gens.len(), 2, "S^{} at n={}", 2 * m, n);
            let xi = gens.index_of("x1").unwrap();
            let yi = gens.index_of(&format!("y{}", n)).unwrap();
            let image = red.d_gen(yi);
            assert_eq!(image.num_terms(), 1);
            let mut exps = vec![0u32; 2];
            exps[xi] = (n + 1) as u32;
            let coeff = image.coeff(&Monomial::from_exps(gens, exps).unwrap());
            let magnitude = if coeff < scalar::zero() { -coeff.clone() } else { coeff.clone() };
            assert_eq!(
                magnitude,
                scalar::from_frac(1, factorial as i64),
                "S^{} at n={}",
                2 * m,
                n
            );
            if m == 1 {
                signs.push(format!(
                    "n={}: {}",
                    n,
                    if coeff < scalar::zero() { "-1/n!" } else { "+1/n!" }
                ));
            }
        }
    }
    for m in 1..=3usize {
        for n in 1..=4usize {
            let model = odd_sphere_sp_model(m, n);
            let gens = model.gens();
            assert_eq!(gens.len(), 1, "S^{} at n={}", 2 * m - 1, n);
            assert_eq!(gens.degree(0), 2 * m - 1);
            assert!(model.d_gen(0).is_zero());
            let homotopy = model.linearized_homotopy(2 * m);
            for d in 0..=2 * m {
                assert_eq!(homotopy.get(d).unwrap(), usize::from(d == 2 * m - 1));
            }
        }
    }
    println!(
        "criterion 9: SP^n(S^2m) reduces to Lambda(x, y') with d(y') = +-(1/n!) x^(n+1) [{}]; SP^n(S^2m-1) is Lambda(y) with zero differential ... PASS",
        signs.join(", ")
    );
}
