use super::*;
use crate::fieldcases::{make_case, CaseKind, RawParams};
use crate::testutil::figure_cases;

fn oscillator() -> CaseDefinition {
    make_case(
        CaseKind::Constant,
        RawParams {
            omega: Some(1.0),
            k: 0.0,
            ..Default::default()
        },
    )
    .unwrap()
}

#[test]
fn square_well_ground_level() {
    let h = discretize(
        &|_| Ok(0.0),
        Grid::new(0.0, std::f64::consts::PI, 2001).unwrap(),
    )
    .unwrap();
    let e = lowest_eigenpairs(&h, 1).unwrap()[0].value;
    assert!((e - 1.0).abs() < 1e-6);
}

#[test]
fn oscillator_ladder_and_second_order_convergence() {
    let case = oscillator();
    let v = |x: f64| case.potential(Partner::H0, x);
    let err = |n: usize| {
        let h = discretize(&v, Grid::new(-12.0, 12.0, n).unwrap()).unwrap();
        let pairs = lowest_eigenpairs(&h, 4).unwrap();
        for (i, p) in pairs.iter().enumerate() {
            assert!((p.value - i as f64).abs() < 1e-3, "level {i}: {}", p.value);
        }
        (pairs[3].value - 3.0).abs()
    };
    let coarse = err(1001);
    let fine = err(2001);
    let ratio = coarse / fine;
    assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn eigenvectors_are_orthonormal_in_weighted_norm() {
    let case = oscillator();
    let grid = Grid::new(-10.0, 10.0, 1001).unwrap();
    let h = discretize(&|x| case.potential(Partner::H0, x), grid).unwrap();
    let pairs = lowest_eigenpairs(&h, 5).unwrap();
    let step = grid.step();
    for (i, a) in pairs.iter().enumerate() {
        for (j, b) in pairs.iter().enumerate() {
            let dot: f64 = a
                .vector
                .iter()
                .zip(&b.vector)
                .map(|(x, y)| x * y)
                .sum::<f64>()
                * step;
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((dot - want).abs() <= 1e-8);
        }
    }
}

#[test]
fn coulomb_levels_match_closed_form() {
    let case = &figure_cases()[5];
    let w = classical_window(
        case,
        Partner::H0,
        case.aux_eigenvalue(Partner::H0, 2).unwrap(),
        20.0,
        1e-6,
    )
    .unwrap();
    let h = discretize(
        &|x| case.potential(Partner::H0, x),
        Grid::new(w.lo, w.hi, 4001).unwrap(),
    )
    .unwrap();
    let pairs = lowest_eigenpairs(&h, 3).unwrap();
    for (n, p) in pairs.iter().enumerate() {
        let e = case.aux_eigenvalue(Partner::H0, n).unwrap();
        assert!((p.value - e).abs() <= 1e-3 * e.max(case.epsilon1), "n={n}");
    }
}

#[test]
fn requests_are_validated() {
    let case = oscillator();
    let v = |x: f64| case.potential(Partner::H0, x);
    assert!(discretize(&v, Grid::new(-1.0, 1.0, 50).unwrap()).is_err());
    let h = discretize(&v, Grid::new(-3.0, 3.0, 200).unwrap()).unwrap();
    assert!(lowest_eigenpairs(&h, 21).is_err());
    assert!(matches!(
        h.check_window(10.0),
        Err(Error::WindowTooSmall { .. })
    ));
    let trig = &figure_cases()[2];
    assert!(matches!(
        discretize(
            &|x| trig.potential(Partner::H0, x),
            Grid::new(-0.1, 1.0, 200).unwrap()
        ),
        Err(Error::DomainViolation { .. })
    ));
}

#[test]
fn figure_cases_validate() {
    for case in figure_cases() {
        let r = cross_validate(&case, 6, &GridPolicy::default()).unwrap();
        for l in &r.levels {
            assert!(
                l.passed,
                "{} {:?} n={}: {:?}",
                case.kind(),
                l.partner,
                l.n,
                l
            );
        }
        assert!(r.deletion.iter().all(|d| d.passed), "{}", case.kind());
        assert!(!r.deletion.is_empty());
        assert!(r.passed);
        assert_eq!(r.delta_sensitivity.is_some(), case.kind().is_singular());
    }
}

#[test]
fn report_serializes() {
    let r = cross_validate(&oscillator(), 3, &GridPolicy::default()).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: ValidationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r, back);
}
