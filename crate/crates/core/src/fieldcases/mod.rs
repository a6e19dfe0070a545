//! The six solvable magnetic-field profiles.
//!
//! Natural units throughout: `e = c = hbar = 1` and `hbar^2 / 2m* = 1`, so
//! `eta(x) = 2 (k + A(x))` and `B(x) = A'(x) = eta'(x) / 2`. Every case uses
//! the factorization energies `eps2 = E_0 = 0` and `eps1 = E_1`, the two
//! lowest levels of `H0`, which makes `V0` and `V2` a shape-invariant pair:
//!
//! | kind                 | B(x)          | V0, V2          | polynomials |
//! |----------------------|---------------|-----------------|-------------|
//! | `Constant`           | `B0`          | oscillator      | Hermite     |
//! | `HyperbolicWell`     | `B0 sech^2`   | Rosen-Morse II  | Jacobi      |
//! | `TrigSingular`       | `B0 csc^2`    | trig Rosen-Morse| Romanovski  |
//! | `ExpDecay`           | `B0 e^{-ax}`  | Morse           | Laguerre    |
//! | `HyperbolicSingular` | `B0 csch^2`   | Eckart          | Jacobi      |
//! | `Singular`           | `B0 / x^2`    | radial Coulomb  | Laguerre    |

mod eigenfunction;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{sech_sq, Jet};

pub use eigenfunction::{EigenfunctionSpec, ShapeExponents};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    Constant,
    HyperbolicWell,
    TrigSingular,
    ExpDecay,
    HyperbolicSingular,
    Singular,
}

impl CaseKind {
    pub const ALL: [CaseKind; 6] = [
        CaseKind::Constant,
        CaseKind::HyperbolicWell,
        CaseKind::TrigSingular,
        CaseKind::ExpDecay,
        CaseKind::HyperbolicSingular,
        CaseKind::Singular,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseKind::Constant => "constant",
            CaseKind::HyperbolicWell => "hyperbolic-well",
            CaseKind::TrigSingular => "trig-singular",
            CaseKind::ExpDecay => "exp-decay",
            CaseKind::HyperbolicSingular => "hyperbolic-singular",
            CaseKind::Singular => "singular",
        }
    }

    /// Human-readable description used in messages.
    pub fn describe(&self) -> &'static str {
        match self {
            CaseKind::Constant => "constant field",
            CaseKind::HyperbolicWell => "hyperbolic well",
            CaseKind::TrigSingular => "trigonometric singular well",
            CaseKind::ExpDecay => "exponentially decaying field",
            CaseKind::HyperbolicSingular => "hyperbolic singular field",
            CaseKind::Singular => "singular field",
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            CaseKind::Constant => "Hermite",
            CaseKind::HyperbolicWell | CaseKind::HyperbolicSingular => "Jacobi",
            CaseKind::TrigSingular => "Romanovski",
            CaseKind::ExpDecay | CaseKind::Singular => "AssocLaguerre",
        }
    }

    /// Cases with a singular wall in the auxiliary potentials.
    pub fn is_singular(&self) -> bool {
        matches!(
            self,
            CaseKind::TrigSingular | CaseKind::HyperbolicSingular | CaseKind::Singular
        )
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let kind = match key.as_str() {
            "constant" | "i" | "1" => CaseKind::Constant,
            "hyperbolic-well" | "ii" | "2" => CaseKind::HyperbolicWell,
            "trig-singular" | "trigonometric-singular" | "iii" | "3" => CaseKind::TrigSingular,
            "exp-decay" | "exponential" | "iv" | "4" => CaseKind::ExpDecay,
            "hyperbolic-singular" | "v" | "5" => CaseKind::HyperbolicSingular,
            "singular" | "vi" | "6" => CaseKind::Singular,
            _ => return Err(Error::InvalidInput(format!("unknown case kind `{s}`"))),
        };
        Ok(kind)
    }
}

/// Which auxiliary Hamiltonian an eigenfunction belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Partner {
    H0,
    H2,
}

impl Partner {
    /// Level shift relative to `H0`: `E_n^(2) = E_{n+shift}^(0)`.
    pub fn shift(&self) -> usize {
        match self {
            Partner::H0 => 0,
            Partner::H2 => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Partner::H0 => "H0",
            Partner::H2 => "H2",
        }
    }
}

/// User-facing parameters before validation. Either `d` or `b0` fixes the
/// field strength (`omega` or `b0` for the constant field); `d` wins when
/// both are given.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    pub omega: Option<f64>,
    pub alpha: Option<f64>,
    pub d: Option<f64>,
    pub k: f64,
    pub b0: Option<f64>,
}

/// Validated parameters. `kappa` is the case-specific combination of `k`
/// and the field constants; for the constant field it equals `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseParams {
    pub kind: CaseKind,
    pub omega: Option<f64>,
    pub alpha: Option<f64>,
    pub d: Option<f64>,
    pub k: f64,
    pub kappa: f64,
    pub b0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Domain {
    Line,
    Interval { lo: f64, hi: f64 },
    HalfLine { lo: f64 },
}

impl Domain {
    pub fn contains(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match *self {
            Domain::Line => true,
            Domain::Interval { lo, hi } => x > lo && x < hi,
            Domain::HalfLine { lo } => x > lo,
        }
    }

    pub fn lower_wall(&self) -> Option<f64> {
        match *self {
            Domain::Line => None,
            Domain::Interval { lo, .. } | Domain::HalfLine { lo } => Some(lo),
        }
    }

    pub fn upper_wall(&self) -> Option<f64> {
        match *self {
            Domain::Interval { hi, .. } => Some(hi),
            _ => None,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Line => write!(f, "(-inf, inf)"),
            Domain::Interval { lo, hi } => write!(f, "({lo}, {hi})"),
            Domain::HalfLine { lo } => write!(f, "({lo}, inf)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LevelCount {
    Finite(usize),
    Infinite,
}

impl LevelCount {
    pub fn contains(&self, n: usize) -> bool {
        match *self {
            LevelCount::Finite(c) => n < c,
            LevelCount::Infinite => true,
        }
    }

    /// Highest bound level index, if any level is bound.
    pub fn max_level(&self) -> Option<usize> {
        match *self {
            LevelCount::Finite(0) => None,
            LevelCount::Finite(c) => Some(c - 1),
            LevelCount::Infinite => Some(usize::MAX),
        }
    }

    pub fn clip(&self, n: usize) -> usize {
        match *self {
            LevelCount::Finite(c) => n.min(c),
            LevelCount::Infinite => n,
        }
    }
}

impl fmt::Display for LevelCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelCount::Finite(c) => write!(f, "{c}"),
            LevelCount::Infinite => write!(f, "infinite"),
        }
    }
}

/// Levels scanned before giving up on a finite count.
const LEVEL_SCAN_LIMIT: usize = 100_000;

/// A validated field case with its factorization energies and domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseDefinition {
    pub params: CaseParams,
    pub epsilon1: f64,
    pub epsilon2: f64,
    pub domain: Domain,
}

fn positive(name: &'static str, v: Option<f64>) -> Result<f64> {
    match v {
        Some(x) if x.is_finite() && x > 0.0 => Ok(x),
        Some(x) => Err(Error::NonPositiveParameter { name, value: x }),
        None => Err(Error::InvalidInput(format!("missing parameter `{name}`"))),
    }
}

/// Validates raw parameters and builds the case.
pub fn make_case(kind: CaseKind, raw: RawParams) -> Result<CaseDefinition> {
    if !raw.k.is_finite() {
        return Err(Error::InvalidInput(format!(
            "k must be finite, got {}",
            raw.k
        )));
    }
    let k = raw.k;
    let params = match kind {
        CaseKind::Constant => {
            let omega = match (raw.omega, raw.b0) {
                (Some(w), _) => positive("omega", Some(w))?,
                (None, Some(b0)) => 2.0 * positive("B0", Some(b0))?,
                (None, None) => {
                    return Err(Error::InvalidInput("missing parameter `omega`".into()))
                }
            };
            CaseParams {
                kind,
                omega: Some(omega),
                alpha: None,
                d: None,
                k,
                kappa: k,
                b0: omega / 2.0,
            }
        }
        CaseKind::Singular => {
            let d = match (raw.d, raw.b0) {
                (Some(d), _) => positive("D", Some(d))?,
                (None, Some(b0)) => positive("D", Some(b0 - 0.5))?,
                (None, None) => return Err(Error::InvalidInput("missing parameter `D`".into())),
            };
            CaseParams {
                kind,
                omega: None,
                alpha: None,
                d: Some(d),
                k,
                kappa: 2.0 * (1.0 + d) * k / (1.0 + 2.0 * d),
                b0: d + 0.5,
            }
        }
        _ => {
            let alpha = positive("alpha", raw.alpha)?;
            let d_from_b0 = |b0: f64| match kind {
                CaseKind::HyperbolicWell => b0 / alpha + alpha / 2.0,
                CaseKind::ExpDecay => b0 / alpha,
                _ => b0 / alpha - alpha / 2.0,
            };
            let d = match (raw.d, raw.b0) {
                (Some(d), _) => positive("D", Some(d))?,
                (None, Some(b0)) => positive("D", Some(d_from_b0(b0)))?,
                (None, None) => return Err(Error::InvalidInput("missing parameter `D`".into())),
            };
            let (kappa, b0) = match kind {
                CaseKind::HyperbolicWell => {
                    if d <= alpha {
                        return Err(Error::ConstraintViolation(format!(
                            "|κ| < D in Case II requires D > α so that both seed levels are bound (D = {d}, α = {alpha})"
                        )));
                    }
                    (
                        2.0 * k * (d - alpha) / (2.0 * d - alpha),
                        alpha * (d - alpha / 2.0),
                    )
                }
                CaseKind::TrigSingular | CaseKind::HyperbolicSingular => (
                    2.0 * k * (d + alpha) / (2.0 * d + alpha),
                    alpha * (d + alpha / 2.0),
                ),
                CaseKind::ExpDecay => (k + alpha / 2.0, alpha * d),
                CaseKind::Constant | CaseKind::Singular => unreachable!(),
            };
            CaseParams {
                kind,
                omega: None,
                alpha: Some(alpha),
                d: Some(d),
                k,
                kappa,
                b0,
            }
        }
    };

    check_constraints(&params)?;

    let domain = match kind {
        CaseKind::TrigSingular => Domain::Interval {
            lo: 0.0,
            hi: std::f64::consts::PI / params.alpha.unwrap(),
        },
        CaseKind::HyperbolicSingular | CaseKind::Singular => Domain::HalfLine { lo: 0.0 },
        _ => Domain::Line,
    };
    let mut case = CaseDefinition {
        params,
        epsilon1: 0.0,
        epsilon2: 0.0,
        domain,
    };
    case.epsilon1 = case.level_energy(1);
    Ok(case)
}

fn check_constraints(p: &CaseParams) -> Result<()> {
    let kappa = p.kappa;
    match p.kind {
        CaseKind::Constant | CaseKind::TrigSingular => Ok(()),
        CaseKind::HyperbolicWell => {
            let (d, a) = (p.d.unwrap(), p.alpha.unwrap());
            if kappa.abs() >= d {
                return Err(Error::ConstraintViolation(format!(
                    "|κ| < D in Case II (κ = {kappa}, D = {d})"
                )));
            }
            // Seed level n = 1 must be bound: both Jacobi exponents positive.
            if (d - a).powi(2) <= kappa.abs() * d {
                return Err(Error::ConstraintViolation(format!(
                    "|κ| < D in Case II must leave level 1 bound: (D-α)² > |κ|D fails (κ = {kappa}, D = {d}, α = {a})"
                )));
            }
            Ok(())
        }
        CaseKind::ExpDecay => {
            let a = p.alpha.unwrap();
            if kappa <= 0.0 {
                return Err(Error::ConstraintViolation(format!(
                    "κ > 0 in Case IV (κ = {kappa})"
                )));
            }
            if kappa <= a {
                return Err(Error::ConstraintViolation(format!(
                    "κ > α in Case IV so that seed level 1 is bound (κ = {kappa}, α = {a})"
                )));
            }
            Ok(())
        }
        CaseKind::HyperbolicSingular => {
            let (d, a) = (p.d.unwrap(), p.alpha.unwrap());
            if kappa <= d {
                return Err(Error::ConstraintViolation(format!(
                    "κ > D > 0 in Case V (κ = {kappa}, D = {d})"
                )));
            }
            if kappa * d <= (d + a).powi(2) {
                return Err(Error::ConstraintViolation(format!(
                    "κD > (D+α)² in Case V so that seed level 1 is bound (κ = {kappa}, D = {d}, α = {a})"
                )));
            }
            Ok(())
        }
        CaseKind::Singular => {
            if kappa <= 0.0 {
                return Err(Error::ConstraintViolation(format!(
                    "κ > 0 in Case VI (κ = {kappa})"
                )));
            }
            Ok(())
        }
    }
}

impl CaseDefinition {
    pub fn kind(&self) -> CaseKind {
        self.params.kind
    }

    pub fn k(&self) -> f64 {
        self.params.k
    }

    pub fn kappa(&self) -> f64 {
        self.params.kappa
    }

    pub(crate) fn omega(&self) -> f64 {
        self.params
            .omega
            .expect("omega is set for the constant field")
    }

    pub(crate) fn alpha(&self) -> f64 {
        self.params.alpha.expect("alpha is set for Cases II-V")
    }

    pub(crate) fn d(&self) -> f64 {
        self.params.d.expect("D is set for Cases II-VI")
    }

    /// Natural length scale of the profile.
    pub fn length_scale(&self) -> f64 {
        match self.kind() {
            CaseKind::Constant => (2.0 / self.omega()).sqrt(),
            CaseKind::Singular => self.d().max(1.0) / self.kappa(),
            _ => 1.0 / self.alpha(),
        }
    }

    /// Offset kept from singular walls when sampling.
    pub fn wall_offset(&self) -> f64 {
        1e-6 * self.length_scale()
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::DomainViolation {
                x,
                domain: self.domain.to_string(),
            })
        }
    }

    /// `eta(x) = 2(k + A(x))` with derivatives.
    pub fn eta_jet(&self, x: f64) -> Result<Jet> {
        self.check_domain(x)?;
        let xj = Jet::var(x);
        let kappa = self.kappa();
        let eta = match self.kind() {
            CaseKind::Constant => xj * self.omega() + 2.0 * self.k(),
            CaseKind::HyperbolicWell => {
                let (d, a) = (self.d(), self.alpha());
                ((xj * a).tanh() + kappa / (d - a)) * (2.0 * d - a)
            }
            CaseKind::TrigSingular => {
                let (d, a) = (self.d(), self.alpha());
                let y = xj * a;
                (kappa / (d + a) - y.cos() / y.sin()) * (2.0 * d + a)
            }
            CaseKind::ExpDecay => {
                let (d, a) = (self.d(), self.alpha());
                (2.0 * kappa - a) - (xj * -a).exp() * (2.0 * d)
            }
            CaseKind::HyperbolicSingular => {
                let (d, a) = (self.d(), self.alpha());
                (kappa / (d + a) - coth(xj * a)) * (2.0 * d + a)
            }
            CaseKind::Singular => {
                let d = self.d();
                // -(1+2D)(1+D-κx)/((1+D)x)
                (xj * kappa - (1.0 + d)) / xj * ((1.0 + 2.0 * d) / (1.0 + d))
            }
        };
        Ok(eta)
    }

    pub fn eta(&self, x: f64) -> Result<f64> {
        Ok(self.eta_jet(x)?.value())
    }

    /// Landau-gauge amplitude `A(x)`, closed form per case.
    pub fn vector_potential(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let b0 = self.params.b0;
        let a = match self.kind() {
            CaseKind::Constant => b0 * x,
            CaseKind::HyperbolicWell => b0 / self.alpha() * (self.alpha() * x).tanh(),
            CaseKind::TrigSingular => {
                let y = self.alpha() * x;
                -b0 / self.alpha() * y.cos() / y.sin()
            }
            CaseKind::ExpDecay => -b0 / self.alpha() * (-self.alpha() * x).exp(),
            CaseKind::HyperbolicSingular => -b0 / self.alpha() / (self.alpha() * x).tanh(),
            CaseKind::Singular => -b0 / x,
        };
        Ok(a)
    }

    /// Field amplitude `B(x) = A'(x)`, closed form per case.
    pub fn magnetic_field(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let b0 = self.params.b0;
        let b = match self.kind() {
            CaseKind::Constant => b0,
            CaseKind::HyperbolicWell => b0 * sech_sq(self.alpha() * x),
            CaseKind::TrigSingular => b0 / (self.alpha() * x).sin().powi(2),
            CaseKind::ExpDecay => b0 * (-self.alpha() * x).exp(),
            CaseKind::HyperbolicSingular => b0 * csch_sq(self.alpha() * x),
            CaseKind::Singular => b0 / (x * x),
        };
        Ok(b)
    }

    /// Closed-form `V0` or `V2` with derivatives.
    pub fn potential_jet(&self, partner: Partner, x: f64) -> Result<Jet> {
        self.check_domain(x)?;
        let xj = Jet::var(x);
        let kappa = self.kappa();
        let two = partner == Partner::H2;
        let v = match self.kind() {
            CaseKind::Constant => {
                let w = self.omega();
                let shift = if two { 1.5 * w } else { -0.5 * w };
                (xj + 2.0 * self.k() / w).sqr() * (w * w / 4.0) + shift
            }
            CaseKind::HyperbolicWell => {
                let (d, a) = (self.d(), self.alpha());
                let y = xj * a;
                let t = y.tanh();
                let sech2 = (1.0 - t * t).with_value(sech_sq(y.value()));
                let depth = if two {
                    (d - a) * (d - 2.0 * a)
                } else {
                    d * (d + a)
                };
                t * (2.0 * kappa * d) - sech2 * depth + (d * d + kappa * kappa)
            }
            CaseKind::TrigSingular => {
                let (d, a) = (self.d(), self.alpha());
                let y = xj * a;
                let (s, c) = (y.sin(), y.cos());
                let cot = c / s;
                let csc2 = (s * s).recip();
                let wall = if two {
                    (d + 2.0 * a) * (d + a)
                } else {
                    d * (d - a)
                };
                csc2 * wall - cot * (2.0 * kappa * d) + (kappa * kappa - d * d)
            }
            CaseKind::ExpDecay => {
                let (d, a) = (self.d(), self.alpha());
                let e = (xj * -a).exp();
                let lin = if two {
                    kappa - 1.5 * a
                } else {
                    kappa + 0.5 * a
                };
                e.sqr() * (d * d) - e * (2.0 * d * lin) + kappa * kappa
            }
            CaseKind::HyperbolicSingular => {
                let (d, a) = (self.d(), self.alpha());
                let u = coth(xj * a);
                let csch2 = (u * u - 1.0).with_value(csch_sq(a * x));
                let wall = if two {
                    (d + 2.0 * a) * (d + a)
                } else {
                    d * (d - a)
                };
                csch2 * wall - u * (2.0 * kappa * d) + (kappa * kappa + d * d)
            }
            CaseKind::Singular => {
                let d = self.d();
                let inv = xj.recip();
                let wall = if two {
                    (d + 2.0) * (d + 1.0)
                } else {
                    d * (d - 1.0)
                };
                inv.sqr() * wall - inv * (2.0 * kappa * d) + kappa * kappa
            }
        };
        Ok(v)
    }

    pub fn potential(&self, partner: Partner, x: f64) -> Result<f64> {
        Ok(self.potential_jet(partner, x)?.value())
    }

    /// `(V0(x), V2(x))`.
    pub fn partner_potentials(&self, x: f64) -> Result<(f64, f64)> {
        Ok((
            self.potential(Partner::H0, x)?,
            self.potential(Partner::H2, x)?,
        ))
    }

    /// `E_n^(0)` from the closed form, without any bound-state check.
    pub(crate) fn level_energy(&self, n: usize) -> f64 {
        level_energy_formula(&self.params, n)
    }

    /// `E_n^(j)`, erroring when the level is not bound.
    pub fn aux_eigenvalue(&self, partner: Partner, n: usize) -> Result<f64> {
        let count = self.bound_state_count(partner);
        if !count.contains(n) {
            return Err(Error::LevelOutOfRange {
                level: n,
                partner: partner.name(),
                bound: count.to_string(),
            });
        }
        Ok(self.level_energy(n + partner.shift()))
    }

    /// Number of bound levels of `H0` or `H2`. `H2` always has two fewer.
    pub fn bound_state_count(&self, partner: Partner) -> LevelCount {
        match self.kind() {
            CaseKind::Constant | CaseKind::TrigSingular | CaseKind::Singular => {
                LevelCount::Infinite
            }
            _ => {
                let mut count = 0;
                while count < LEVEL_SCAN_LIMIT && self.unbound_reason(count).is_none() {
                    count += 1;
                }
                LevelCount::Finite(count.saturating_sub(partner.shift()))
            }
        }
    }

    /// Why `H0` level `n` is not square integrable, or `None` when it is.
    pub(crate) fn unbound_reason(&self, n: usize) -> Option<String> {
        let nf = n as f64;
        let kappa = self.kappa();
        match self.kind() {
            CaseKind::Constant | CaseKind::TrigSingular | CaseKind::Singular => None,
            CaseKind::HyperbolicWell => {
                let (d, a) = (self.d(), self.alpha());
                let gap = d - nf * a;
                if gap <= 0.0 {
                    return Some(format!("Nα < D fails at n = {n}"));
                }
                let s = d / a - nf;
                let shift = d * kappa / (a * gap);
                let (e1, e2) = ((s + shift) / 2.0, (s - shift) / 2.0);
                if e1 > 0.0 && e2 > 0.0 {
                    None
                } else {
                    Some(format!(
                        "Jacobi exponents must be positive at n = {n}: got {e1} and {e2}"
                    ))
                }
            }
            CaseKind::ExpDecay => {
                if kappa > nf * self.alpha() {
                    None
                } else {
                    Some(format!("κ > nα fails at n = {n} (κ = {kappa})"))
                }
            }
            CaseKind::HyperbolicSingular => {
                let (d, a) = (self.d(), self.alpha());
                let s = d / a;
                let shift = kappa * d / (a * (d + nf * a));
                let first = -(s + nf - shift) / 2.0;
                let second = -(s + nf + shift) / 2.0;
                if first > 0.0 && second < 0.0 {
                    None
                } else {
                    Some(format!(
                        "need first exponent > 0 and second < 0 at n = {n}: got {first} and {second}"
                    ))
                }
            }
        }
    }

    /// Closed-form eigenfunction of `H0` or `H2`, not yet normalized.
    pub fn aux_eigenfunction(&self, partner: Partner, n: usize) -> Result<EigenfunctionSpec> {
        EigenfunctionSpec::new(*self, partner, n)
    }

    /// Bilayer energy through the per-case `E_n sqrt(1 - gamma_n)` form,
    /// written out independently of [`aux_eigenvalue`](Self::aux_eigenvalue).
    pub fn energy_via_gamma(&self, n: usize) -> f64 {
        let p = &self.params;
        let nf = n as f64;
        let kappa = p.kappa;
        if n == 0 {
            return 0.0;
        }
        let (en, gamma) = match p.kind {
            CaseKind::Constant => return p.omega.unwrap() * (nf * (nf - 1.0)).sqrt(),
            CaseKind::HyperbolicWell => {
                let (d, a) = (p.d.unwrap(), p.alpha.unwrap());
                let en = d * d + kappa * kappa
                    - (d - nf * a).powi(2)
                    - kappa * kappa * d * d / (d - nf * a).powi(2);
                let e1 = d * d + kappa * kappa
                    - (d - a).powi(2)
                    - kappa * kappa * d * d / (d - a).powi(2);
                (en, e1 / en)
            }
            CaseKind::TrigSingular => {
                let (d, a) = (p.d.unwrap(), p.alpha.unwrap());
                let en = kappa * kappa - d * d + (d + nf * a).powi(2)
                    - kappa * kappa * d * d / (d + nf * a).powi(2);
                let e1 = kappa * kappa - d * d + (d + a).powi(2)
                    - kappa * kappa * d * d / (d + a).powi(2);
                (en, e1 / en)
            }
            CaseKind::ExpDecay => {
                let a = p.alpha.unwrap();
                let en = kappa * kappa - (kappa - nf * a).powi(2);
                (en, (kappa * kappa - (kappa - a).powi(2)) / en)
            }
            CaseKind::HyperbolicSingular => {
                let (d, a) = (p.d.unwrap(), p.alpha.unwrap());
                let en = kappa * kappa + d * d
                    - (d + nf * a).powi(2)
                    - kappa * kappa * d * d / (d + nf * a).powi(2);
                let e1 = kappa * kappa + d * d
                    - (d + a).powi(2)
                    - kappa * kappa * d * d / (d + a).powi(2);
                (en, e1 / en)
            }
            CaseKind::Singular => {
                let d = p.d.unwrap();
                let en = kappa * kappa * d * d * (1.0 / (d * d) - 1.0 / (nf + d).powi(2));
                let e1 = kappa * kappa * d * d * (1.0 / (d * d) - 1.0 / (1.0 + d).powi(2));
                (en, e1 / en)
            }
        };
        en * (1.0 - gamma).sqrt()
    }
}

/// `E_n^(0)` for the given parameters. Also used with modified `k` when
/// tracing where a level leaves the bound spectrum.
pub(crate) fn level_energy_formula(p: &CaseParams, n: usize) -> f64 {
    let nf = n as f64;
    let kappa = p.kappa;
    if n == 0 {
        return 0.0;
    }
    match p.kind {
        CaseKind::Constant => nf * p.omega.unwrap(),
        CaseKind::HyperbolicWell => {
            let (d, a) = (p.d.unwrap(), p.alpha.unwrap());
            let m = d - nf * a;
            d * d + kappa * kappa - m * m - kappa * kappa * d * d / (m * m)
        }
        CaseKind::TrigSingular => {
            let (d, a) = (p.d.unwrap(), p.alpha.unwrap());
            let m = d + nf * a;
            kappa * kappa - d * d + m * m - kappa * kappa * d * d / (m * m)
        }
        CaseKind::ExpDecay => {
            let a = p.alpha.unwrap();
            kappa * kappa - (kappa - nf * a).powi(2)
        }
        CaseKind::HyperbolicSingular => {
            let (d, a) = (p.d.unwrap(), p.alpha.unwrap());
            let m = d + nf * a;
            kappa * kappa + d * d - m * m - kappa * kappa * d * d / (m * m)
        }
        CaseKind::Singular => {
            let d = p.d.unwrap();
            kappa * kappa * d * d * (1.0 / (d * d) - 1.0 / ((nf + d) * (nf + d)))
        }
    }
}

/// `csch^2(y)` without overflow.
pub(crate) fn csch_sq(y: f64) -> f64 {
    let ay = y.abs();
    if ay < 1.0 {
        let s = ay.sinh();
        1.0 / (s * s)
    } else {
        let e = (-2.0 * ay).exp();
        4.0 * e / ((1.0 - e) * (1.0 - e))
    }
}

/// `coth` as a jet; derivatives use `u' = 1 - u^2 = -csch^2`.
pub(crate) fn coth(y: Jet) -> Jet {
    let y0 = y.value();
    let u = 1.0 / y0.tanh();
    let w = -csch_sq(y0);
    y.compose([
        u,
        w,
        -2.0 * u * w,
        w * (6.0 * u * u - 2.0),
        w * (16.0 * u - 24.0 * u * u * u),
    ])
}
