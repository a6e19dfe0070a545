//! Closed-form eigenfunctions of the auxiliary Hamiltonians.
//!
//! Each eigenfunction is `prefactor(x) * P_n(zeta(x))` with a positive
//! prefactor. The prefactor is carried as its logarithm so that large
//! exponents and far tails neither overflow nor lose precision; the
//! polynomial derivatives come from lowering identities and are chained
//! through `zeta(x)` with jets.

use num_complex::Complex64;
use serde::Serialize;

use super::{coth, CaseDefinition, CaseKind, Partner};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::orthopoly::{pseudo_jacobi_complex, PolyFamily};

const LN_2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    /// `exp(-zeta^2/2) H_m(zeta)`, `zeta = scale (x - center)`.
    Oscillator { scale: f64, center: f64 },
    /// `(1-zeta)^p (1+zeta)^q P`, `zeta = tanh(alpha x)`.
    RosenMorse { alpha: f64, p: f64, q: f64 },
    /// `sin^p(alpha x) exp(rate x) R`, `zeta = cot(alpha x)`.
    Trig { alpha: f64, p: f64, rate: f64 },
    /// `zeta^p exp(-zeta/2) L`, `zeta = amp exp(-alpha x)`.
    Morse { alpha: f64, amp: f64, p: f64 },
    /// `(zeta-1)^p (zeta+1)^q P`, `zeta = coth(alpha x)`.
    Eckart { alpha: f64, p: f64, q: f64 },
    /// `zeta^p exp(-zeta/2) L`, `zeta = rate x`.
    Coulomb { rate: f64, p: f64 },
}

/// Exponents of the prefactor, for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeExponents {
    pub first: f64,
    pub second: Option<f64>,
}

/// An eigenfunction of `H0` or `H2` in closed form, with an optional
/// normalization coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenfunctionSpec {
    case: CaseDefinition,
    partner: Partner,
    n: usize,
    shape: Shape,
    family: PolyFamily,
    coefficient: Option<f64>,
}

impl EigenfunctionSpec {
    pub(super) fn new(case: CaseDefinition, partner: Partner, n: usize) -> Result<Self> {
        let level = n + partner.shift();
        if let Some(reason) = case.unbound_reason(level) {
            return Err(Error::NotSquareIntegrable(format!(
                "{} level {n} of the {}: {reason}",
                partner.name(),
                case.kind().describe()
            )));
        }
        let j = partner.shift() as f64;
        let nf = n as f64;
        let kappa = case.kappa();
        let (shape, family) = match case.kind() {
            CaseKind::Constant => {
                let w = case.omega();
                let shape = Shape::Oscillator {
                    scale: (w / 2.0).sqrt(),
                    center: -2.0 * case.k() / w,
                };
                (shape, PolyFamily::Hermite)
            }
            CaseKind::HyperbolicWell => {
                let (d, a) = (case.d(), case.alpha());
                let s = d / a - j;
                let t = d * kappa / (a * (d - (nf + j) * a));
                let (pa, pb) = (s - nf + t, s - nf - t);
                let shape = Shape::RosenMorse {
                    alpha: a,
                    p: pa / 2.0,
                    q: pb / 2.0,
                };
                (shape, PolyFamily::Jacobi { a: pa, b: pb })
            }
            CaseKind::TrigSingular => {
                let (d, a) = (case.d(), case.alpha());
                let s = d / a + j;
                let t = -kappa * d / (a * (d + (nf + j) * a));
                let shape = Shape::Trig {
                    alpha: a,
                    p: s + nf,
                    rate: t * a,
                };
                (shape, PolyFamily::Romanovski { s, t })
            }
            CaseKind::ExpDecay => {
                let (d, a) = (case.d(), case.alpha());
                let s = kappa / a - j;
                let shape = Shape::Morse {
                    alpha: a,
                    amp: 2.0 * d / a,
                    p: s - nf,
                };
                (shape, PolyFamily::AssocLaguerre { a: 2.0 * (s - nf) })
            }
            CaseKind::HyperbolicSingular => {
                let (d, a) = (case.d(), case.alpha());
                let s = d / a + j;
                let t = kappa * d / (a * (d + (nf + j) * a));
                let (pa, pb) = (-s - nf + t, -s - nf - t);
                let shape = Shape::Eckart {
                    alpha: a,
                    p: pa / 2.0,
                    q: pb / 2.0,
                };
                (shape, PolyFamily::Jacobi { a: pa, b: pb })
            }
            CaseKind::Singular => {
                let d = case.d();
                let shape = Shape::Coulomb {
                    rate: 2.0 * kappa * d / (nf + d + j),
                    p: d + j,
                };
                (
                    shape,
                    PolyFamily::AssocLaguerre {
                        a: 2.0 * d - 1.0 + 2.0 * j,
                    },
                )
            }
        };
        Ok(Self {
            case,
            partner,
            n,
            shape,
            family,
            coefficient: None,
        })
    }

    pub fn case(&self) -> &CaseDefinition {
        &self.case
    }

    pub fn partner(&self) -> Partner {
        self.partner
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> PolyFamily {
        self.family
    }

    pub fn energy(&self) -> f64 {
        self.case.level_energy(self.n + self.partner.shift())
    }

    pub fn coefficient(&self) -> Option<f64> {
        self.coefficient
    }

    pub fn with_coefficient(mut self, c: f64) -> Self {
        self.coefficient = Some(c);
        self
    }

    pub fn exponents(&self) -> ShapeExponents {
        let (first, second) = match self.shape {
            Shape::Oscillator { .. } => (0.0, None),
            Shape::RosenMorse { p, q, .. } | Shape::Eckart { p, q, .. } => (p, Some(q)),
            Shape::Trig { p, .. } | Shape::Morse { p, .. } | Shape::Coulomb { p, .. } => (p, None),
        };
        ShapeExponents { first, second }
    }

    /// The polynomial argument `zeta(x)`.
    pub fn zeta(&self, x: f64) -> Result<f64> {
        Ok(self.parts(x)?.1.value())
    }

    /// Log-prefactor and polynomial argument as jets.
    fn parts(&self, x: f64) -> Result<(Jet, Jet)> {
        if !self.case.domain.contains(x) {
            return Err(Error::DomainViolation {
                x,
                domain: self.case.domain.to_string(),
            });
        }
        let xj = Jet::var(x);
        let out = match self.shape {
            Shape::Oscillator { scale, center, .. } => {
                let z = (xj - center) * scale;
                (z.sqr() * -0.5, z)
            }
            Shape::RosenMorse { alpha, p, q } => {
                let y = xj * alpha;
                let ln_minus = LN_2 - (y * 2.0).softplus();
                let ln_plus = LN_2 - (y * -2.0).softplus();
                (ln_minus * p + ln_plus * q, y.tanh())
            }
            Shape::Trig { alpha, p, rate } => {
                let y = xj * alpha;
                let (s, c) = (y.sin(), y.cos());
                (s.ln() * p + xj * rate, c / s)
            }
            Shape::Morse { alpha, amp, p } => {
                let ln_z = (xj * -alpha).offset(amp.ln());
                let z = ln_z.exp();
                (ln_z * p - z * 0.5, z)
            }
            Shape::Eckart { alpha, p, q } => {
                let y = xj * alpha;
                let y0 = y.value();
                let u = (1.0 - (y * -2.0).exp()).with_value(-(-2.0 * y0).exp_m1());
                let ln_u = u.ln();
                let ln_minus = (LN_2 - y * 2.0) - ln_u;
                let ln_plus = LN_2 - ln_u;
                (ln_minus * p + ln_plus * q, coth(y))
            }
            Shape::Coulomb { rate, p } => {
                let z = xj * rate;
                (z.ln() * p - z * 0.5, z)
            }
        };
        Ok(out)
    }

    /// `psi` with derivatives up to order four, scaled by the coefficient.
    pub fn eval_jet(&self, x: f64) -> Result<Jet> {
        let (ln_pref, z) = self.parts(x)?;
        let poly = z.compose(self.family.derivatives(self.n, z.value())?);
        Ok(ln_pref.exp() * poly * self.coefficient.unwrap_or(1.0))
    }

    /// `(psi, psi', psi'')`.
    pub fn eval(&self, x: f64) -> Result<(f64, f64, f64)> {
        let j = self.eval_jet(x)?;
        Ok((j.value(), j.d(1), j.d(2)))
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.eval_jet(x)?.value())
    }

    /// Trigonometric case through complex pseudo-Jacobi arithmetic:
    /// `(1+zeta^2)^(-p/2) exp(t arccot zeta) (-i)^n P_n(i zeta)`.
    /// Agrees with [`value`](Self::value) up to rounding.
    pub fn value_complex_path(&self, x: f64) -> Result<Complex64> {
        let (alpha, p, rate) = match self.shape {
            Shape::Trig { alpha, p, rate } => (alpha, p, rate),
            _ => {
                return Err(Error::InvalidInput(
                    "complex path exists only for the trigonometric case".into(),
                ))
            }
        };
        let (s, t) = match self.family {
            PolyFamily::Romanovski { s, t } => (s, t),
            _ => unreachable!(),
        };
        if !self.case.domain.contains(x) {
            return Err(Error::DomainViolation {
                x,
                domain: self.case.domain.to_string(),
            });
        }
        let y = alpha * x;
        let zeta = y.cos() / y.sin();
        let arccot = std::f64::consts::FRAC_PI_2 - zeta.atan();
        let pref = (1.0 + zeta * zeta).powf(-p / 2.0) * (rate / alpha * arccot).exp();
        let poly = pseudo_jacobi_complex(self.n, s, t, zeta)?;
        Ok(poly * pref * self.coefficient.unwrap_or(1.0))
    }
}
