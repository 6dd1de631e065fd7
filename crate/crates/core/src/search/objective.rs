use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lhs::{critical_radius_bounds, RadiusParams};
use crate::linalg::DensityMatrix;
use crate::states::{build_family, reduce_pair, swap_operator, PartyPair, PureState3Q};
use crate::steering::{lhs_bound, quantum_value, SteeringFunctional};

/// How a raw search vector maps to the amplitudes of `ψ_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameterization {
    /// Real amplitudes of `|000>..|110>`, with `c_111 = 0`.
    Real7,
    /// All eight real amplitudes.
    Real8,
    /// `(re, im)` pairs of all eight amplitudes.
    Complex16,
}

impl Parameterization {
    pub fn dimension(&self) -> usize {
        match self {
            Self::Real7 => 7,
            Self::Real8 => 8,
            Self::Complex16 => 16,
        }
    }

    /// Normalized `ψ_1`; the all-zero vector is rejected.
    pub fn state(&self, coeffs: &[f64]) -> Result<PureState3Q> {
        if coeffs.len() != self.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a {}-dimensional parameterization",
                coeffs.len(),
                self.dimension()
            )));
        }
        let raw = match self {
            Self::Real7 | Self::Real8 => PureState3Q::from_real(coeffs)?,
            Self::Complex16 => PureState3Q::from_re_im_pairs(coeffs)?,
        };
        raw.normalized()
    }

    pub fn pair(&self, coeffs: &[f64]) -> Result<DensityMatrix> {
        reduce_pair(&build_family(&self.state(coeffs)?, 1.0)?, PartyPair::AB)
    }
}

/// Scenario-2 penalty constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapPenalty {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl GapPenalty {
    /// `c1 = c2 = 2 c3 = 1`.
    pub const BALANCED: Self = Self { c1: 1.0, c2: 1.0, c3: 0.5 };
    /// `c2 > c1`, `c3 = 1`, favouring a large `R_2`.
    pub const ASYMMETRIC: Self = Self { c1: 1.0, c2: 2.0, c3: 1.0 };
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectiveKind {
    /// `Q(ρ_AB) - c·max(0, Q(ρ_BA) - L)`.
    Scenario1 { c: f64 },
    /// `r(ρ_BA) - r(ρ_AB) - c·max(0, r(ρ_BA) - δ)` with the coarse bracket midpoint `r`.
    Scenario2Prefilter { c: f64, delta: f64 },
    /// `R_2 - R_1 - c1·max(0, R_1 - 1) - c2·max(0, 1 - R_2) - c3·(H(R_1 - 1) + H(1 - R_2))`.
    Scenario2Full { penalty: GapPenalty, radius: RadiusParams },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    #[serde(flatten)]
    pub kind: ObjectiveKind,
    pub parameterization: Parameterization,
}

/// Radius settings of the prefilter proxy.
pub const PREFILTER_RADIUS: RadiusParams =
    RadiusParams { meas_level: 0, hidden_level: 0, bisection_tol: 1e-2, psd_cap: 2.0 };

impl ObjectiveSpec {
    pub fn scenario1() -> Self {
        Self { kind: ObjectiveKind::Scenario1 { c: 2.0 }, parameterization: Parameterization::Real7 }
    }

    pub fn scenario2_prefilter(parameterization: Parameterization) -> Self {
        Self { kind: ObjectiveKind::Scenario2Prefilter { c: 1.0, delta: 1.2 }, parameterization }
    }

    pub fn scenario2_full(parameterization: Parameterization, penalty: GapPenalty, radius: RadiusParams) -> Self {
        Self { kind: ObjectiveKind::Scenario2Full { penalty, radius }, parameterization }
    }

    pub fn validate(&self) -> Result<()> {
        let constants: Vec<f64> = match self.kind {
            ObjectiveKind::Scenario1 { c } => vec![c],
            ObjectiveKind::Scenario2Prefilter { c, delta } => vec![c, delta],
            ObjectiveKind::Scenario2Full { penalty, radius } => {
                radius.validate()?;
                vec![penalty.c1, penalty.c2, penalty.c3]
            }
        };
        if constants.iter().all(|&c| c >= 0.0 && c.is_finite()) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("penalty constants must be non-negative: {constants:?}")))
        }
    }

    pub fn evaluate(&self, coeffs: &[f64]) -> Result<f64> {
        let rho_ab = self.parameterization.pair(coeffs)?;
        match self.kind {
            ObjectiveKind::Scenario1 { c } => scenario1_value(&rho_ab, c),
            ObjectiveKind::Scenario2Prefilter { c, delta } => {
                let (ab, ba) = both_directions(&rho_ab, &PREFILTER_RADIUS, |r| r.midpoint())?;
                Ok(ba - ab - c * (ba - delta).max(0.0))
            }
            ObjectiveKind::Scenario2Full { penalty, radius } => {
                let rho_ba = rho_ab.conjugate_by(&swap_operator());
                let (r1, r2) = rayon::join(
                    || critical_radius_bounds(&rho_ab, &radius).map(|r| r.r_out),
                    || critical_radius_bounds(&rho_ba, &radius).map(|r| r.r_in),
                );
                Ok(gap_objective(r1?, r2?, penalty))
            }
        }
    }
}

fn both_directions(
    rho_ab: &DensityMatrix,
    params: &RadiusParams,
    pick: impl Fn(&crate::lhs::RadiusReport) -> f64 + Sync,
) -> Result<(f64, f64)> {
    let rho_ba = rho_ab.conjugate_by(&swap_operator());
    let (ab, ba) = rayon::join(|| critical_radius_bounds(rho_ab, params), || critical_radius_bounds(&rho_ba, params));
    Ok((pick(&ab?), pick(&ba?)))
}

fn scenario1_value(rho_ab: &DensityMatrix, c: f64) -> Result<f64> {
    let f = SteeringFunctional::icosahedral();
    let l = lhs_bound(&f)?.value;
    let q_ab = quantum_value(rho_ab, &f)?.value;
    let q_ba = quantum_value(&rho_ab.conjugate_by(&swap_operator()), &f)?.value;
    Ok(q_ab - c * (q_ba - l).max(0.0))
}

/// Heaviside step with `H(0) = 0`.
pub fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        0.0
    }
}

pub fn gap_objective(r1: f64, r2: f64, p: GapPenalty) -> f64 {
    r2 - r1
        - p.c1 * (r1 - 1.0).max(0.0)
        - p.c2 * (1.0 - r2).max(0.0)
        - p.c3 * (heaviside(r1 - 1.0) + heaviside(1.0 - r2))
}

/// Scenario-1 objective on seven real coefficients with `c = 2`.
pub fn objective_scenario1(coeffs: &[f64]) -> Result<f64> {
    ObjectiveSpec::scenario1().evaluate(coeffs)
}

pub fn objective_scenario2_prefilter(coeffs: &[f64]) -> Result<f64> {
    ObjectiveSpec::scenario2_prefilter(parameterization_for(coeffs.len())?).evaluate(coeffs)
}

pub fn objective_scenario2_full(coeffs: &[f64]) -> Result<f64> {
    ObjectiveSpec::scenario2_full(parameterization_for(coeffs.len())?, GapPenalty::BALANCED, RadiusParams::default())
        .evaluate(coeffs)
}

fn parameterization_for(len: usize) -> Result<Parameterization> {
    match len {
        7 => Ok(Parameterization::Real7),
        8 => Ok(Parameterization::Real8),
        16 => Ok(Parameterization::Complex16),
        n => Err(Error::DimensionMismatch(format!("no parameterization with {n} coefficients"))),
    }
}
