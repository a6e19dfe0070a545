//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p bilayer-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use bilayer_core::fieldcases::{
    make_case, CaseDefinition, CaseKind, LevelCount, Partner, RawParams,
};
use bilayer_core::observables::{
    current_density, envelope, envelope_touch_check, probability_density, BilayerState, Carrier,
    TightBinding,
};
use bilayer_core::oracle::{cross_validate, GridPolicy};
use bilayer_core::quadrature::Grid;
use bilayer_core::susy::{
    aligned_partner_eigenfunction, bilayer_level_count, factorization_error, intertwining_residual,
    level_window, seed_annihilation, spectrum, PartnerImage, DEFAULT_GRID_N,
};
use bilayer_core::Error;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn raw(omega: Option<f64>, alpha: Option<f64>, d: Option<f64>, k: f64) -> RawParams {
    RawParams {
        omega,
        alpha,
        d,
        k,
        b0: None,
    }
}

fn figure_cases() -> Vec<CaseDefinition> {
    vec![
        make_case(CaseKind::Constant, raw(Some(1.0), None, None, 1.0)).unwrap(),
        make_case(
            CaseKind::HyperbolicWell,
            raw(None, Some(1.0), Some(8.0), 11.0 / 10.0),
        )
        .unwrap(),
        make_case(
            CaseKind::TrigSingular,
            raw(None, Some(1.0), Some(4.0), 9.0 / 5.0),
        )
        .unwrap(),
        make_case(
            CaseKind::ExpDecay,
            raw(None, Some(1.0), Some(1.0), 11.0 / 2.0),
        )
        .unwrap(),
        make_case(
            CaseKind::HyperbolicSingular,
            raw(None, Some(1.0), Some(3.0), 105.0 / 4.0),
        )
        .unwrap(),
        make_case(CaseKind::Singular, raw(None, None, Some(3.0), 35.0 / 2.0)).unwrap(),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

fn levels_up_to(count: LevelCount, last: usize) -> usize {
    count.clip(last + 1)
}

/// Ladder `omega sqrt(n(n-1))`, k independence, doubled ground level.
fn ladder() -> Result<Outcome, Error> {
    let start = Instant::now();
    let omega = 1.0;
    let at = |k| make_case(CaseKind::Constant, raw(Some(omega), None, None, k));
    let s0 = spectrum(&at(0.0)?, 8)?;
    let s1 = spectrum(&at(1.0)?, 8)?;
    let mut worst = 0.0f64;
    for level in &s1.levels[1..] {
        let n = (level.m + 1) as f64;
        worst = worst.max(rel(level.electron, omega * (n * (n - 1.0)).sqrt()));
    }
    let k_drift = s0
        .levels
        .iter()
        .zip(&s1.levels)
        .map(|(a, b)| rel(a.electron, b.electron))
        .fold(0.0, f64::max);
    let ground = s1.levels[0].electron == 0.0 && s1.levels[0].multiplicity == 2;
    let elapsed = start.elapsed().as_secs_f64();
    let passed =
        s1.levels.len() == 8 && worst <= 1e-12 && k_drift <= 1e-12 && ground && elapsed < 1.0;
    Ok(outcome(
        passed,
        format!(
            "max rel err {worst:.2e}, k drift {k_drift:.2e}, ground x2 {ground}, {elapsed:.3}s"
        ),
    ))
}

/// Finite differences versus closed forms for levels n <= 5 of H0 and H2.
fn oracle_agreement(
    reports: &[(CaseDefinition, bilayer_core::oracle::ValidationReport)],
    elapsed: f64,
) -> Outcome {
    let mut passed = elapsed < 30.0;
    let mut parts = Vec::new();
    for (case, r) in reports {
        let tol = if case.kind().is_singular() {
            1e-3
        } else {
            1e-4
        };
        let worst = r
            .levels
            .iter()
            .filter(|l| l.n <= 5)
            .fold(0.0f64, |m, l| m.max(l.error));
        let count = r.levels.len();
        passed &= worst <= tol && count > 0;
        parts.push(format!("{} {worst:.1e}/{count}", case.kind()));
    }
    outcome(passed, format!("{}; {elapsed:.1}s", parts.join(", ")))
}

/// Seed annihilation, intertwining and factorization for n <= 5.
fn intertwining() -> Result<Outcome, Error> {
    let (mut seed, mut inter, mut fact) = (0.0f64, 0.0f64, 0.0f64);
    for case in figure_cases() {
        for j in 0..2 {
            seed = seed.max(seed_annihilation(&case, j, None)?);
        }
        for n in 0..levels_up_to(case.bound_state_count(Partner::H0), 5) {
            inter = inter.max(intertwining_residual(&case, n, None)?);
            fact = fact.max(factorization_error(&case, n, None)?);
        }
    }
    let passed = seed <= 1e-8 && inter <= 1e-6 && fact <= 1e-6;
    Ok(outcome(
        passed,
        format!("seed {seed:.1e}, intertwining {inter:.1e}, factorization {fact:.1e}"),
    ))
}

/// The H2 oracle spectrum is the H0 oracle spectrum minus its two lowest levels.
fn level_deletion(reports: &[(CaseDefinition, bilayer_core::oracle::ValidationReport)]) -> Outcome {
    let mut passed = true;
    let mut worst = 0.0f64;
    for (_, r) in reports {
        passed &= !r.deletion.is_empty() && r.deletion.iter().all(|d| d.passed);
        worst = r.deletion.iter().fold(worst, |m, d| m.max(d.error));
    }
    outcome(passed, format!("max rel mismatch {worst:.1e}"))
}

/// Densities normalized, ground currents zero, J_x negligible against J_y.
fn densities_and_currents() -> Result<Outcome, Error> {
    let (mut norm_err, mut jx_ratio) = (0.0f64, 0.0f64);
    let mut ground_zero = true;
    let mut profiles = 0;
    for case in figure_cases() {
        let mut states = vec![BilayerState::Ground { j: 0 }, BilayerState::Ground { j: 1 }];
        let top = levels_up_to(bilayer_level_count(&case), 4);
        states.extend((1..top).map(|m| BilayerState::Excited { m }));
        for s in states {
            let rho = probability_density(&case, s, None)?;
            norm_err = norm_err.max((rho.integral() - 1.0).abs());
            profiles += 1;
            for carrier in [Carrier::Electron, Carrier::Hole] {
                let j = current_density(&case, s, carrier, None)?;
                match s {
                    BilayerState::Ground { .. } => {
                        ground_zero &= j.jx.iter().chain(&j.jy).all(|&v| v == 0.0);
                    }
                    BilayerState::Excited { .. } => {
                        let jy = j.jy.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                        let jx = j.jx.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                        jx_ratio = jx_ratio.max(if jy > 0.0 { jx / jy } else { f64::INFINITY });
                    }
                }
            }
        }
    }
    let passed = norm_err <= 1e-6 && ground_zero && jx_ratio <= 1e-10;
    Ok(outcome(
        passed,
        format!("{profiles} profiles, norm err {norm_err:.1e}, ground J zero {ground_zero}, |Jx|/|Jy| {jx_ratio:.1e}"),
    ))
}

/// Envelope constants, endpoint touching, flattening as D shrinks.
fn envelopes() -> Result<Outcome, Error> {
    let cases = figure_cases();
    let iv = envelope(&cases[3])?;
    let alpha = 1.0;
    let iv_ok = iv.a == 1.0 && iv.b == 0.0 && iv.c == -alpha * alpha / 4.0;

    let (d, a) = (8.0, 1.0);
    let ii = envelope(&cases[1])?;
    let ii_ok = rel(ii.a, 4.0 * d * (d - a) / ((2.0 * d - a) * (2.0 * d - a))) <= 1e-15
        && rel(ii.b, 2.0 * a - 4.0 * d * d / (2.0 * d - a)) <= 1e-15
        && rel(ii.c, d * (d - a)) <= 1e-15;
    let (d, a) = (3.0, 1.0);
    let v = envelope(&cases[4])?;
    let v_ok = rel(v.a, 4.0 * d * (d + a) / ((2.0 * d + a) * (2.0 * d + a))) <= 1e-15
        && rel(v.b, -2.0 * a - 4.0 * d * d / (2.0 * d + a)) <= 1e-15
        && rel(v.c, d * (d + a)) <= 1e-15;

    let mut touch = 0.0f64;
    let mut touched = 0;
    for case in [&cases[1], &cases[3], &cases[4]] {
        for n in 2..=12 {
            match envelope_touch_check(case, n) {
                Ok(r) => {
                    touch = touch.max(r.residual);
                    touched += 1;
                }
                Err(Error::LevelOutOfRange { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }

    let mut a_values = Vec::new();
    for d in [1.0, 0.1, 0.01] {
        let c = make_case(
            CaseKind::HyperbolicSingular,
            raw(None, Some(1.0), Some(d), 1000.0),
        )?;
        a_values.push(envelope(&c)?.a);
    }
    let shrinking = a_values.windows(2).all(|w| w[1] < w[0]) && a_values[2] < 0.05;

    let passed = iv_ok && ii_ok && v_ok && touched > 0 && touch <= 1e-6 && shrinking;
    Ok(outcome(
        passed,
        format!(
            "IV exact {iv_ok}, II {ii_ok}, V {v_ok}, touch max {touch:.1e} over {touched} levels, a(D) = {:.4}, {:.4}, {:.4}",
            a_values[0], a_values[1], a_values[2]
        ),
    ))
}

/// Bands at the valley point and the low-energy parabola.
fn tight_binding() -> Outcome {
    let tb = TightBinding::default();
    let (kx, ky) = tb.k_point();
    let e = tb.bands(kx, ky);
    let k_ok = [0.0, 0.0, 0.4, -0.4]
        .iter()
        .zip(e)
        .all(|(want, got)| (want - got).abs() <= 1e-12);

    let mut worst = (0.0f64, 0.0f64);
    let directions = 24;
    for step in 1..=50 {
        let qa = 0.05 * step as f64 / 50.0;
        let q = qa / tb.lattice;
        for dir in 0..directions {
            let theta = std::f64::consts::TAU * dir as f64 / directions as f64;
            let bands = tb.bands(kx + q * theta.cos(), ky + q * theta.sin());
            let para = tb.parabolic_energy(q);
            for (band, target) in [(bands[0], para), (bands[1], -para)] {
                let err = (band - target).abs() / band.abs();
                if err > worst.0 {
                    worst = (err, qa);
                }
            }
        }
    }
    let para_ok = worst.0 <= 0.05;
    outcome(
        k_ok && para_ok,
        format!(
            "valley bands {k_ok}; parabola max rel err {:.4} at |q|a = {:.3} (limit 0.05)",
            worst.0, worst.1
        ),
    )
}

/// Normalized partner image versus the closed-form partner eigenfunction.
fn partner_images() -> Result<Outcome, Error> {
    let (mut norm_err, mut dist) = (0.0f64, 0.0f64);
    for case in figure_cases() {
        for n in 0..levels_up_to(case.bound_state_count(Partner::H2), 3) {
            let image = PartnerImage::new(&case, n)?;
            let closed = aligned_partner_eigenfunction(&case, n)?;
            let w = level_window(&case, Partner::H0, image.source().energy())?
                .union(&level_window(&case, Partner::H2, image.source().energy())?);
            let g = Grid::new(w.lo, w.hi, DEFAULT_GRID_N)?;
            let mut sq = Vec::with_capacity(g.n);
            let mut diff = Vec::with_capacity(g.n);
            for x in g.points() {
                let a = image.value(x)?;
                sq.push(a * a);
                diff.push((a - closed.value(x)?).powi(2));
            }
            norm_err = norm_err.max((g.integrate(&sq).sqrt() - 1.0).abs());
            dist = dist.max(g.integrate(&diff).sqrt());
        }
    }
    Ok(outcome(
        norm_err <= 1e-6 && dist <= 1e-5,
        format!("norm err {norm_err:.1e}, L2 distance {dist:.1e}"),
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let reports: Result<Vec<_>, Error> = figure_cases()
        .into_iter()
        .map(|c| cross_validate(&c, 6, &GridPolicy::default()).map(|r| (c, r)))
        .collect();
    let oracle_time = start.elapsed().as_secs_f64();

    let lift =
        |r: Result<Outcome, Error>| r.unwrap_or_else(|e| outcome(false, format!("error: {e}")));
    let results = vec![
        ("1 constant-field ladder", lift(ladder())),
        (
            "2 oracle eigenvalue agreement",
            match &reports {
                Ok(r) => oracle_agreement(r, oracle_time),
                Err(e) => outcome(false, format!("error: {e}")),
            },
        ),
        ("3 intertwining and factorization", lift(intertwining())),
        (
            "4 level deletion",
            match &reports {
                Ok(r) => level_deletion(r),
                Err(e) => outcome(false, format!("error: {e}")),
            },
        ),
        ("5 densities and currents", lift(densities_and_currents())),
        ("6 enveloping quadratics", lift(envelopes())),
        ("7 tight-binding bands", tight_binding()),
        ("8 partner image consistency", lift(partner_images())),
    ];

    let mut failed = 0;
    for (name, o) in &results {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {name:<36} {tag}  {}", o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed ({:.1}s)",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
