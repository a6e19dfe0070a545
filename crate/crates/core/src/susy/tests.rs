use super::*;
use crate::fieldcases::{make_case, CaseKind, RawParams};
use crate::testutil::figure_cases;

fn constant(omega: f64, k: f64) -> CaseDefinition {
    make_case(
        CaseKind::Constant,
        RawParams {
            omega: Some(omega),
            k,
            ..Default::default()
        },
    )
    .unwrap()
}

fn interior_points(case: &CaseDefinition) -> Vec<f64> {
    match case.kind() {
        CaseKind::TrigSingular => vec![0.4, 1.2, 2.0, 2.8],
        CaseKind::HyperbolicSingular | CaseKind::Singular => vec![0.1, 0.4, 1.1, 2.3],
        _ => vec![-1.7, -0.2, 0.6, 1.9],
    }
}

#[test]
fn gamma_for_oscillator_at_origin() {
    let case = constant(1.0, 0.0);
    assert!((gamma_fn(&case, 0.0).unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn v0_follows_from_eta_alone() {
    // V0 = eta''/(2 eta) - eta'^2/(4 eta^2) - eta' + eta^2/4 + (e1+e2)/2 + ((e1-e2)/(2 eta))^2
    for case in figure_cases() {
        for x in interior_points(&case) {
            let eta = case.eta_jet(x).unwrap();
            let (e, e1, e2) = (eta.value(), eta.d(1), eta.d(2));
            if e.abs() < 1e-3 {
                continue;
            }
            let (a, b) = (case.epsilon1, case.epsilon2);
            let v0 = e2 / (2.0 * e) - e1 * e1 / (4.0 * e * e) - e1
                + e * e / 4.0
                + (a + b) / 2.0
                + ((a - b) / (2.0 * e)).powi(2);
            let closed = case.potential(Partner::H0, x).unwrap();
            assert!(
                (v0 - closed).abs() <= 1e-9 * closed.abs().max(1.0),
                "{} x={x}",
                case.kind()
            );
        }
    }
}

#[test]
fn first_order_square_gamma_gives_squared_operator() {
    // With gamma = eta'/2 + eta^2/4 the operator is (d + eta/2)^2.
    let case = &figure_cases()[1];
    let x = 0.3;
    let f = Jet::var(x).sin() * Jet::var(x).exp();
    let eta = case.eta_jet(x).unwrap();
    let gamma = eta.derivative() * 0.5 + eta.sqr() * 0.25;
    let direct = apply_second_order(&f, &eta, &gamma);
    let half = eta * 0.5;
    let once = f.derivative() + half * f;
    let twice = once.derivative() + half * once;
    assert!((direct.value() - twice.value()).abs() < 1e-12);
    // The intertwiner differs from the square when the seeds are eigenstates.
    let iw = IntertwinerData::new(*case);
    assert!((iw.gamma(x).unwrap() - gamma.value()).abs() > 1e-3);
}

#[test]
fn seeds_are_annihilated() {
    for case in figure_cases() {
        for j in 0..2 {
            let r = seed_annihilation(&case, j, None).unwrap();
            assert!(r <= 1e-8, "{} seed {j}: {r}", case.kind());
        }
    }
}

#[test]
fn intertwining_and_factorization_hold() {
    for case in figure_cases() {
        let top = case.bound_state_count(Partner::H0).clip(6);
        for n in 0..top {
            let r = intertwining_residual(&case, n, None).unwrap();
            assert!(r <= 1e-6, "{} n={n}: intertwining {r}", case.kind());
            let f = factorization_error(&case, n, None).unwrap();
            assert!(f <= 1e-6, "{} n={n}: factorization {f}", case.kind());
        }
    }
}

#[test]
fn residual_rejects_unbound_level() {
    let case = &figure_cases()[1];
    assert!(matches!(
        intertwining_residual(case, 6, None),
        Err(Error::LevelOutOfRange { .. })
    ));
}

#[test]
fn gaussian_normalization_constant() {
    let case = constant(1.0, 0.0);
    let f = normalized_eigenfunction(&case, Partner::H0, 0).unwrap();
    let expected = (1.0 / (2.0 * std::f64::consts::PI)).powf(0.25);
    assert!((f.coefficient().unwrap() - expected).abs() < 1e-8 * expected);
}

#[test]
fn doubling_grid_keeps_norm() {
    for case in figure_cases() {
        let spec = case.aux_eigenfunction(Partner::H0, 2).unwrap();
        let g = default_grid(&spec).unwrap();
        let a = normalize(&spec, &g).unwrap().coefficient().unwrap();
        let fine = Grid::new(g.lo, g.hi, 2 * g.n - 1).unwrap();
        let b = normalize(&spec, &fine).unwrap().coefficient().unwrap();
        assert!((a - b).abs() <= 1e-8 * a, "{}: {a} vs {b}", case.kind());
    }
}

#[test]
fn short_window_is_rejected() {
    let case = constant(1.0, 0.0);
    let spec = case.aux_eigenfunction(Partner::H0, 3).unwrap();
    let g = Grid::new(-2.0, 2.0, 401).unwrap();
    assert!(matches!(
        normalize(&spec, &g),
        Err(Error::TailMassTooLarge { .. })
    ));
}

#[test]
fn partner_image_is_normalized_and_matches_closed_form() {
    for case in figure_cases() {
        let top = case.bound_state_count(Partner::H2).clip(4);
        for n in 0..top {
            let image = PartnerImage::new(&case, n).unwrap();
            let closed = aligned_partner_eigenfunction(&case, n).unwrap();
            let w = level_window(&case, Partner::H0, image.source().energy()).unwrap();
            let g = Grid::new(w.lo, w.hi, DEFAULT_GRID_N).unwrap();
            let mut sq = Vec::new();
            let mut dist = Vec::new();
            for x in g.points() {
                let a = image.value(x).unwrap();
                sq.push(a * a);
                dist.push((a - closed.value(x).unwrap()).powi(2));
            }
            let norm = g.integrate(&sq).sqrt();
            let d = g.integrate(&dist).sqrt();
            assert!(
                (norm - 1.0).abs() <= 1e-6,
                "{} n={n}: norm {norm}",
                case.kind()
            );
            assert!(d <= 1e-5, "{} n={n}: distance {d}", case.kind());
        }
    }
}

#[test]
fn oscillator_spectrum_ladder() {
    let s = spectrum(&constant(1.0, 1.0), 4).unwrap();
    let e: Vec<f64> = s.levels.iter().map(|l| l.electron).collect();
    assert_eq!(s.levels[0].multiplicity, 2);
    let expected = [0.0, 2f64.sqrt(), 6f64.sqrt(), 12f64.sqrt()];
    for (a, b) in e.iter().zip(expected) {
        assert!((a - b).abs() <= 1e-12 * b.max(1.0));
    }
    assert!(s.levels.iter().all(|l| l.hole == -l.electron));
    let other = spectrum(&constant(1.0, 0.0), 4).unwrap();
    for (a, b) in s.levels.iter().zip(&other.levels) {
        assert_eq!(a.electron, b.electron);
    }
}

#[test]
fn spectrum_respects_bound_count() {
    let case = &figure_cases()[1];
    let s = spectrum(case, 50).unwrap();
    assert_eq!(s.levels.len(), 5);
    assert!(s.levels.windows(2).all(|w| w[1].electron > w[0].electron));
    assert_eq!(s.levels.iter().filter(|l| l.multiplicity == 2).count(), 1);
}

#[test]
fn morse_spectrum_is_independent_of_d() {
    let make = |d| {
        make_case(
            CaseKind::ExpDecay,
            RawParams {
                alpha: Some(1.0),
                d: Some(d),
                k: 5.5,
                ..Default::default()
            },
        )
        .unwrap()
    };
    let a = spectrum(&make(1.0), 10).unwrap();
    let b = spectrum(&make(2.7), 10).unwrap();
    assert_eq!(a.levels.len(), b.levels.len());
    for (x, y) in a.levels.iter().zip(&b.levels) {
        assert_eq!(x.electron, y.electron);
    }
}

#[test]
fn spectrum_round_trips_through_json() {
    let s = spectrum(&figure_cases()[4], 10).unwrap();
    let text = serde_json::to_string(&s).unwrap();
    let back: SpectrumResult = serde_json::from_str(&text).unwrap();
    assert_eq!(s, back);
}

#[test]
fn physical_units() {
    assert_eq!(to_physical_units(0.0, 1e-9).unwrap(), 0.0);
    // hbar^2 / (2 m_e) = 3.80998 eV A^2 from the CODATA table.
    let expected = 3.809_982 / 0.054 / 100.0;
    let got = to_physical_units(1.0, 1e-9).unwrap();
    assert!((got - expected).abs() < 1e-5 * expected, "{got}");
    assert!((to_physical_units(2.0, 1e-9).unwrap() - 2.0 * got).abs() < 1e-15);
    assert!(to_physical_units(1.0, 0.0).is_err());
}
