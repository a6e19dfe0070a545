//! Shared fixtures for unit tests.

use crate::fieldcases::{make_case, CaseDefinition, CaseKind, RawParams};

/// One case per kind, at the parameters of the published figures.
pub fn figure_cases() -> Vec<CaseDefinition> {
    let raw = |omega, alpha, d, k| RawParams {
        omega,
        alpha,
        d,
        k,
        b0: None,
    };
    vec![
        make_case(CaseKind::Constant, raw(Some(1.0), None, None, 0.5)).unwrap(),
        make_case(
            CaseKind::HyperbolicWell,
            raw(None, Some(1.0), Some(8.0), 1.1),
        )
        .unwrap(),
        make_case(CaseKind::TrigSingular, raw(None, Some(1.0), Some(4.0), 1.8)).unwrap(),
        make_case(CaseKind::ExpDecay, raw(None, Some(1.0), Some(1.0), 5.5)).unwrap(),
        make_case(
            CaseKind::HyperbolicSingular,
            raw(None, Some(1.0), Some(3.0), 26.25),
        )
        .unwrap(),
        make_case(CaseKind::Singular, raw(None, None, Some(3.0), 17.5)).unwrap(),
    ]
}
