use bilayer_core::fieldcases::{make_case, CaseDefinition, CaseKind, Partner, RawParams};
use bilayer_core::observables::{envelope_touch_check, TightBinding};
use bilayer_core::orthopoly::{assoc_laguerre_eval, hermite_eval, jacobi_eval};
use bilayer_core::susy::{bilayer_level_count, spectrum};
use proptest::prelude::*;

fn raw(omega: Option<f64>, alpha: Option<f64>, d: Option<f64>, k: f64) -> RawParams {
    RawParams {
        omega,
        alpha,
        d,
        k,
        b0: None,
    }
}

fn any_case() -> impl Strategy<Value = CaseDefinition> {
    let constant = (0.2..5.0f64, -3.0..3.0f64).prop_filter_map("invalid", |(w, k)| {
        make_case(CaseKind::Constant, raw(Some(w), None, None, k)).ok()
    });
    let well = (0.5..2.0f64, 4.0..12.0f64, -1.0..1.0f64).prop_filter_map("invalid", |(a, t, k)| {
        make_case(
            CaseKind::HyperbolicWell,
            raw(None, Some(a), Some(a * t), k * a),
        )
        .ok()
    });
    let trig = (0.5..2.0f64, 0.5..6.0f64, -4.0..4.0f64).prop_filter_map("invalid", |(a, d, k)| {
        make_case(CaseKind::TrigSingular, raw(None, Some(a), Some(d), k)).ok()
    });
    let exp = (0.5..2.0f64, 0.1..5.0f64, 1.0..8.0f64).prop_filter_map("invalid", |(a, d, k)| {
        make_case(CaseKind::ExpDecay, raw(None, Some(a), Some(d), k * a)).ok()
    });
    let hyp = (0.5..2.0f64, 0.5..4.0f64, 1.5..4.0f64).prop_filter_map("invalid", |(a, d, f)| {
        let k = f * (d + a).powi(2) / d;
        make_case(CaseKind::HyperbolicSingular, raw(None, Some(a), Some(d), k)).ok()
    });
    let sing = (0.5..5.0f64, 0.5..20.0f64).prop_filter_map("invalid", |(d, k)| {
        make_case(CaseKind::Singular, raw(None, None, Some(d), k)).ok()
    });
    prop_oneof![constant, well, trig, exp, hyp, sing]
}

fn sample_point(case: &CaseDefinition, u: f64) -> f64 {
    let l = case.length_scale();
    match case.domain.lower_wall().zip(case.domain.upper_wall()) {
        Some((lo, hi)) => lo + (hi - lo) * (0.05 + 0.9 * u),
        None => match case.domain.lower_wall() {
            Some(lo) => lo + l * (0.2 + 3.0 * u),
            None => {
                let (mut best, mut best_v) = (0.0, f64::INFINITY);
                for i in -400..=400 {
                    let x = i as f64 * 0.05 * l;
                    let v = case.potential(Partner::H0, x).unwrap();
                    if v < best_v {
                        best = x;
                        best_v = v;
                    }
                }
                best + l * (2.0 * u - 1.0)
            }
        },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_form_matches_spectrum(case in any_case()) {
        let s = spectrum(&case, 6).unwrap();
        for level in &s.levels[1..] {
            let alt = case.energy_via_gamma(level.m + 1);
            prop_assert!((alt - level.electron).abs() <= 1e-9 * level.electron.abs().max(case.epsilon1));
            prop_assert_eq!(level.hole, -level.electron);
        }
        prop_assert_eq!(s.levels[0].multiplicity, 2);
    }

    #[test]
    fn partner_levels_are_shifted_by_two(case in any_case()) {
        let count = case.bound_state_count(Partner::H2).clip(6);
        for n in 0..count {
            let e2 = case.aux_eigenvalue(Partner::H2, n).unwrap();
            let e0 = case.aux_eigenvalue(Partner::H0, n + 2).unwrap();
            prop_assert_eq!(e2, e0);
        }
        prop_assert_eq!(bilayer_level_count(&case).clip(100) + 1, case.bound_state_count(Partner::H0).clip(101));
    }

    #[test]
    fn eigenfunctions_solve_schrodinger(case in any_case(), n in 0usize..4, u in 0.0..1.0f64) {
        prop_assume!(case.bound_state_count(Partner::H0).contains(n));
        let spec = case.aux_eigenfunction(Partner::H0, n).unwrap();
        let x = sample_point(&case, u);
        let (psi, _, d2) = spec.eval(x).unwrap();
        let v = case.potential(Partner::H0, x).unwrap();
        let e = spec.energy();
        let scale = d2.abs().max((v * psi).abs()).max((e * psi).abs());
        prop_assume!(scale > 1e-250);
        prop_assert!((-d2 + v * psi - e * psi).abs() <= 1e-8 * scale, "x={} n={}", x, n);
    }

    #[test]
    fn constant_field_spectrum_ignores_k(w in 0.2..5.0f64, k1 in -5.0..5.0f64, k2 in -5.0..5.0f64) {
        let a = spectrum(&make_case(CaseKind::Constant, raw(Some(w), None, None, k1)).unwrap(), 8).unwrap();
        let b = spectrum(&make_case(CaseKind::Constant, raw(Some(w), None, None, k2)).unwrap(), 8).unwrap();
        for (x, y) in a.levels.iter().zip(&b.levels) {
            prop_assert_eq!(x.electron, y.electron);
        }
    }

    #[test]
    fn exp_decay_spectrum_ignores_d(a in 0.5..2.0f64, f in 1.5..6.0f64, d1 in 0.1..5.0f64, d2 in 0.1..5.0f64) {
        let at = |d| make_case(CaseKind::ExpDecay, raw(None, Some(a), Some(d), f * a)).unwrap();
        let (s1, s2) = (spectrum(&at(d1), 8).unwrap(), spectrum(&at(d2), 8).unwrap());
        prop_assert_eq!(s1.levels.len(), s2.levels.len());
        for (x, y) in s1.levels.iter().zip(&s2.levels) {
            prop_assert_eq!(x.electron, y.electron);
        }
    }

    #[test]
    fn envelope_touches_endpoints(case in any_case(), n in 2usize..6) {
        prop_assume!(matches!(case.kind(), CaseKind::HyperbolicWell | CaseKind::ExpDecay | CaseKind::HyperbolicSingular));
        if let Ok(r) = envelope_touch_check(&case, n) {
            prop_assert!(r.residual <= 1e-6, "{:?}", r);
        }
    }

    #[test]
    fn bands_are_particle_hole_and_inversion_symmetric(kx in -10.0..10.0f64, ky in -10.0..10.0f64) {
        let tb = TightBinding::default();
        let e = tb.bands(kx, ky);
        let m = tb.bands(-kx, -ky);
        for i in 0..4 {
            prop_assert!((e[i] - m[i]).abs() <= 1e-12);
        }
        prop_assert!((e[0] + e[1]).abs() <= 1e-12 && (e[2] + e[3]).abs() <= 1e-12);
        prop_assert!(e[0] >= e[1] && e[2] >= e[3]);
    }

    #[test]
    fn hermite_recurrence(n in 1usize..20, x in -5.0..5.0f64) {
        let (h_next, _) = hermite_eval(n + 1, x);
        let (h, dh) = hermite_eval(n, x);
        let (h_prev, _) = hermite_eval(n - 1, x);
        let scale = h_next.abs().max((2.0 * x * h).abs()).max(1.0);
        prop_assert!((h_next - 2.0 * x * h + 2.0 * n as f64 * h_prev).abs() <= 1e-12 * scale);
        prop_assert!((dh - 2.0 * n as f64 * h_prev).abs() <= 1e-12 * dh.abs().max(1.0));
    }

    #[test]
    fn jacobi_symmetry(n in 0usize..12, a in 0.1..5.0f64, b in 0.1..5.0f64, x in -1.0..1.0f64) {
        let (p, _) = jacobi_eval(n, a, b, x).unwrap();
        let (q, _) = jacobi_eval(n, b, a, -x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((p - sign * q).abs() <= 1e-10 * p.abs().max(1.0));
    }

    #[test]
    fn laguerre_derivative_lowers_degree(n in 1usize..15, a in 0.0..6.0f64, x in 0.0..20.0f64) {
        let (_, d) = assoc_laguerre_eval(n, a, x);
        let (lower, _) = assoc_laguerre_eval(n - 1, a + 1.0, x);
        prop_assert!((d + lower).abs() <= 1e-10 * lower.abs().max(1.0));
    }
}
