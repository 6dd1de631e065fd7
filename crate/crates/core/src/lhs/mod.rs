//! Local-hidden-state models for finite measurement sets, steering
//! detection by LP duality, and brackets on the critical radius.
//!
//! Two qubit-LP modes share one formulation. Hidden states are drawn from the
//! vertices of a [`SpherePolytope`]:
//!
//! * `Restrict` uses the vertices as they are, so every feasible solution is
//!   a genuine LHS model.
//! * `Relax` scales the vertices by `1/eta` so their hull contains the whole
//!   Bloch ball; infeasibility then rules out every LHS model.
//!
//! Along the ray `radial_mix(ρ, t) = tρ + (1-t)(I/2 ⊗ ρ_B)`, steerability is
//! monotone in `t`, which turns both modes into bisections.

mod polytope;
mod simplex;

use serde::{Deserialize, Serialize};

pub use polytope::{SpherePolytope, MAX_LEVEL};

use crate::error::{Error, Result};
use crate::linalg::bloch::{self, hermitian_coords, Vec3};
use crate::linalg::{eigvalsh, ComplexMatrix, DensityMatrix};
use crate::states::{swap_operator, PartyPair, TriFamilyState};
use crate::steering::{make_assemblage, Assemblage, DichotomicSetting};
use crate::tol::TOL;
use simplex::{phase_one, ColumnOracle};

/// Settings are indexed by bits of a `u128`.
pub const MAX_LP_SETTINGS: usize = 128;
/// Witness bounds are enumerated exactly up to this many settings.
pub const MAX_EXACT_BOUND_SETTINGS: usize = 24;

pub const DEFAULT_MEAS_LEVEL: usize = 0;
pub const DEFAULT_HIDDEN_LEVEL: usize = 3;
pub const DEFAULT_BISECTION_TOL: f64 = 1e-3;
pub const DEFAULT_PSD_CAP: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HiddenMode {
    Restrict,
    Relax,
}

/// All `2^m` deterministic response functions `λ: x ↦ a`.
///
/// A strategy is a bitmask whose bit `x` is set when `λ(x) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterministicStrategySet {
    pub m: usize,
}

impl DeterministicStrategySet {
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_LP_SETTINGS {
            return Err(Error::TooManySettings { count: m, limit: MAX_LP_SETTINGS });
        }
        Ok(Self { m })
    }

    /// Number of strategies, saturating for `m ≥ 128`.
    pub fn len(&self) -> u128 {
        1u128.checked_shl(self.m as u32).unwrap_or(u128::MAX)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn outcome(lambda: u128, x: usize) -> u8 {
        if lambda >> x & 1 == 1 {
            0
        } else {
            1
        }
    }

    /// `D_λ(a|x)`.
    pub fn response(lambda: u128, a: u8, x: usize) -> f64 {
        (Self::outcome(lambda, x) == a) as u8 as f64
    }
}

/// One term `w · D_λ(a|x) · (I + v·σ)/2` of an LHS decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhsTerm {
    /// `λ(x)` for each setting.
    pub strategy: Vec<u8>,
    pub hidden: Vec3,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhsCertificate {
    pub mode: HiddenMode,
    pub terms: Vec<LhsTerm>,
    /// Largest entrywise deviation of the reconstructed assemblage from the target.
    pub residual: f64,
}

impl LhsCertificate {
    pub fn assemblage(&self, m: usize) -> Assemblage {
        let mut sigma = vec![[ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(2, 2)]; m];
        for t in &self.terms {
            let h = bloch::qubit_state(t.hidden).scale(t.weight);
            for (x, &a) in t.strategy.iter().enumerate() {
                let s = &mut sigma[x][a as usize];
                *s = &*s + &h;
            }
        }
        Assemblage::from_parts(sigma).expect("2x2 blocks")
    }

    /// Weight-normalized hidden state of each term.
    pub fn hidden_states(&self) -> Vec<ComplexMatrix> {
        self.terms.iter().map(|t| bloch::qubit_state(t.hidden)).collect()
    }
}

/// Linear functional `F(σ) = tr(Y_0 ρ_B) + Σ_x tr(Y_x σ_{0|x})`, each `Y`
/// stored as `(y_0, y_1, y_2, y_3)` for `y_0 I + y·σ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteeringWitness {
    pub anchor: [f64; 4],
    pub settings: Vec<[f64; 4]>,
    /// Value on the assemblage it was extracted from.
    pub value: f64,
    /// Upper bound over all LHS assemblages.
    pub bound: f64,
    /// Whether `bound` came from exhaustive enumeration.
    pub bound_exact: bool,
}

impl SteeringWitness {
    pub fn evaluate(&self, assemblage: &Assemblage) -> f64 {
        let dot = |a: &[f64; 4], b: [f64; 4]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
        dot(&self.anchor, hermitian_coords(&assemblage.marginal()))
            + self
                .settings
                .iter()
                .enumerate()
                .map(|(x, y)| dot(y, hermitian_coords(assemblage.sigma(x, 0))))
                .sum::<f64>()
    }

    pub fn violation(&self) -> f64 {
        self.value - self.bound
    }
}

/// `max_λ max_ρ F`: the largest eigenvalue of `Y_0 + Σ_{λ(x)=0} Y_x`.
///
/// Exact for up to [`MAX_EXACT_BOUND_SETTINGS`] settings; beyond that, an
/// upper bound from the relaxed polytope `hidden`.
pub fn witness_bound(anchor: [f64; 4], settings: &[[f64; 4]], hidden: &SpherePolytope) -> (f64, bool) {
    let m = settings.len();
    if m > MAX_EXACT_BOUND_SETTINGS {
        let cols = hidden_coords(hidden, HiddenMode::Relax);
        let y: Vec<f64> = anchor.iter().chain(settings.iter().flatten()).copied().collect();
        let oracle = LhsOracle { m, hidden: cols };
        return (oracle.price_best(&y).1, false);
    }
    let value = |v: [f64; 4]| v[0] + (v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt();
    let sum_for = |mask: u64| {
        (0..m).filter(|&x| mask >> x & 1 == 1).fold(anchor, |mut acc, x| {
            for i in 0..4 {
                acc[i] += settings[x][i];
            }
            acc
        })
    };
    let mut acc = anchor;
    let mut best = value(acc);
    let mut mask = 0u64;
    for k in 1..1u64 << m {
        let gray = k ^ (k >> 1);
        let bit = (gray ^ mask).trailing_zeros() as usize;
        mask = gray;
        let s = if mask >> bit & 1 == 1 { 1.0 } else { -1.0 };
        for i in 0..4 {
            acc[i] += s * settings[bit][i];
        }
        if k % 1024 == 0 {
            acc = sum_for(mask);
        }
        best = best.max(value(acc));
    }
    (best, true)
}

/// Result of an LHS feasibility LP.
#[derive(Debug, Clone)]
pub enum LpOutcome {
    Feasible(LhsCertificate),
    /// Normalized Farkas multipliers: `y·a ≤ 0` on every column, `y·b > 0`.
    Infeasible {
        duals: Vec<f64>,
        margin: f64,
    },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible(_))
    }
}

fn hidden_coords(hidden: &SpherePolytope, mode: HiddenMode) -> Vec<[f64; 4]> {
    let scale = match mode {
        HiddenMode::Restrict => 1.0,
        HiddenMode::Relax => 1.0 / hidden.eta(),
    };
    hidden.vertices().iter().map(|v| [1.0, v[0] * scale, v[1] * scale, v[2] * scale]).collect()
}

/// Columns `(λ, k)`: `h_k` in the marginal block and in every block `x` with `λ(x) = 0`.
struct LhsOracle {
    m: usize,
    hidden: Vec<[f64; 4]>,
}

impl LhsOracle {
    fn best_for(&self, y: &[f64], k: usize) -> (u128, f64) {
        let h = &self.hidden[k];
        let dot = |block: usize| (0..4).map(|i| y[4 * block + i] * h[i]).sum::<f64>();
        let mut value = dot(0);
        let mut mask = 0u128;
        for x in 0..self.m {
            let v = dot(x + 1);
            if v > 0.0 {
                value += v;
                mask |= 1 << x;
            }
        }
        (mask, value)
    }
}

impl ColumnOracle for LhsOracle {
    type Key = (u128, usize);

    fn price_best(&self, y: &[f64]) -> ((u128, usize), f64) {
        (0..self.hidden.len())
            .map(|k| {
                let (mask, v) = self.best_for(y, k);
                ((mask, k), v)
            })
            .fold(((0, 0), f64::NEG_INFINITY), |best, c| if c.1 > best.1 { c } else { best })
    }

    fn price_first(&self, y: &[f64], tol: f64) -> Option<((u128, usize), f64)> {
        (0..self.hidden.len()).find_map(|k| {
            let (mask, v) = self.best_for(y, k);
            (v > tol).then_some(((mask, k), v))
        })
    }

    fn column(&self, (mask, k): (u128, usize)) -> Vec<f64> {
        let h = self.hidden[k];
        let mut col = Vec::with_capacity(4 * (self.m + 1));
        col.extend(h);
        for x in 0..self.m {
            if mask >> x & 1 == 1 {
                col.extend(h);
            } else {
                col.extend([0.0; 4]);
            }
        }
        col
    }
}

fn target_vector(assemblage: &Assemblage) -> Vec<f64> {
    let mut b = Vec::with_capacity(4 * (assemblage.len() + 1));
    b.extend(hermitian_coords(&assemblage.marginal()));
    for x in 0..assemblage.len() {
        b.extend(hermitian_coords(assemblage.sigma(x, 0)));
    }
    b
}

/// Decides whether `assemblage` is a mixture of deterministic responses
/// times hidden states taken from `hidden` (scaled by `1/eta` in relax mode).
pub fn lhs_lp_feasible(assemblage: &Assemblage, hidden: &SpherePolytope, mode: HiddenMode) -> Result<LpOutcome> {
    let m = assemblage.len();
    DeterministicStrategySet::new(m)?;
    if m == 0 {
        return Err(Error::DimensionMismatch("empty assemblage".into()));
    }
    let residual = assemblage.consistency_residual();
    if residual > TOL.lp_feasibility {
        return Err(Error::InvalidState(format!("assemblage violates no-signalling or positivity by {residual:.3e}")));
    }
    let oracle = LhsOracle { m, hidden: hidden_coords(hidden, mode) };
    let b = target_vector(assemblage);
    let out = phase_one(&oracle, &b)?;

    if out.infeasibility <= TOL.lp_feasibility {
        let scale = match mode {
            HiddenMode::Restrict => 1.0,
            HiddenMode::Relax => 1.0 / hidden.eta(),
        };
        let terms: Vec<LhsTerm> = out
            .weights
            .iter()
            .map(|&((mask, k), w)| LhsTerm {
                strategy: (0..m).map(|x| DeterministicStrategySet::outcome(mask, x)).collect(),
                hidden: bloch::scale(hidden.vertices()[k], scale),
                weight: w,
            })
            .collect();
        let mut cert = LhsCertificate { mode, terms, residual: 0.0 };
        let rebuilt = cert.assemblage(m);
        cert.residual = (0..m)
            .flat_map(|x| [0, 1].map(|a| rebuilt.sigma(x, a).max_abs_diff(assemblage.sigma(x, a))))
            .fold(0.0, f64::max);
        return Ok(LpOutcome::Feasible(cert));
    }

    let norm = out.duals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if norm == 0.0 {
        return Err(Error::LpFailure("vanishing multipliers on an infeasible LP".into()));
    }
    let duals: Vec<f64> = out.duals.iter().map(|v| v / norm).collect();
    Ok(LpOutcome::Infeasible { duals, margin: out.infeasibility / norm })
}

/// `tρ + (1-t)(I/2 ⊗ ρ_B)`; above `t = 1` the result may fail to be positive.
#[derive(Debug, Clone)]
pub enum RadialMix {
    Valid(DensityMatrix),
    Indefinite { matrix: ComplexMatrix, min_eigenvalue: f64 },
}

impl RadialMix {
    pub fn valid(self) -> Option<DensityMatrix> {
        match self {
            Self::Valid(rho) => Some(rho),
            Self::Indefinite { .. } => None,
        }
    }
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!("expected a two-qubit state, got dims {:?}", rho.dims())));
    }
    Ok(())
}

/// `I/2 ⊗ ρ_B`.
pub fn separable_anchor(rho_ab: &DensityMatrix) -> Result<ComplexMatrix> {
    require_two_qubits(rho_ab)?;
    let rho_b = rho_ab.partial_trace(&[1])?;
    Ok(ComplexMatrix::identity(2).scale(0.5).kron(rho_b.matrix()))
}

pub fn radial_mix(rho_ab: &DensityMatrix, t: f64) -> Result<RadialMix> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange(format!("radial parameter {t} must be finite and non-negative")));
    }
    let anchor = separable_anchor(rho_ab)?;
    let m = &rho_ab.matrix().scale(t) + &anchor.scale(1.0 - t);
    let min = *eigvalsh(&m)?.last().expect("4x4 spectrum");
    if min < -TOL.psd {
        return Ok(RadialMix::Indefinite { matrix: m, min_eigenvalue: min });
    }
    Ok(RadialMix::Valid(DensityMatrix::new(m, vec![2, 2])?))
}

/// Largest `t ≤ cap` for which [`radial_mix`] stays positive semidefinite.
pub fn psd_boundary(rho_ab: &DensityMatrix, cap: f64) -> Result<f64> {
    if !(cap > 0.0 && cap.is_finite()) {
        return Err(Error::OutOfRange(format!("cap {cap} must be positive")));
    }
    let ok = |t: f64| -> Result<bool> { Ok(matches!(radial_mix(rho_ab, t)?, RadialMix::Valid(_))) };
    if ok(cap)? {
        return Ok(cap);
    }
    let (mut lo, mut hi) = (cap.min(1.0), cap);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn settings_for(directions: &[Vec3]) -> Result<Vec<DichotomicSetting>> {
    directions.iter().map(|&d| DichotomicSetting::along(d)).collect()
}

/// Outcome of [`detect_steerable`].
#[derive(Debug, Clone)]
pub struct Detection {
    pub steerable: bool,
    /// Present whenever the relaxed LP was infeasible, even if the certified
    /// violation fell short of the acceptance margin.
    pub witness: Option<SteeringWitness>,
}

/// Steering from A to B with projective measurements along `directions`,
/// certified by a witness whose LHS bound is recomputed independently of the LP.
pub fn detect_steerable(rho_ab: &DensityMatrix, directions: &[Vec3], hidden: &SpherePolytope) -> Result<Detection> {
    require_two_qubits(rho_ab)?;
    let assemblage = make_assemblage(rho_ab, &settings_for(directions)?)?;
    let LpOutcome::Infeasible { duals, .. } = lhs_lp_feasible(&assemblage, hidden, HiddenMode::Relax)? else {
        return Ok(Detection { steerable: false, witness: None });
    };
    let anchor = [duals[0], duals[1], duals[2], duals[3]];
    let settings: Vec<[f64; 4]> = duals[4..].chunks_exact(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
    let (bound, bound_exact) = witness_bound(anchor, &settings, hidden);
    let mut witness = SteeringWitness { anchor, settings, value: 0.0, bound, bound_exact };
    witness.value = witness.evaluate(&assemblage);
    Ok(Detection { steerable: witness.violation() >= TOL.farkas_violation, witness: Some(witness) })
}

/// An LHS model for measurements along every direction of `meas`, if the
/// restricted LP finds one. Its existence certifies that
/// `radial_mix(rho_ab, meas.eta())` is unsteerable for all projective
/// measurements, because every η-shortened Bloch vector is a convex
/// combination of vertices.
pub fn shrunk_lhs_model(
    rho_ab: &DensityMatrix,
    meas: &SpherePolytope,
    hidden: &SpherePolytope,
) -> Result<Option<LhsCertificate>> {
    require_two_qubits(rho_ab)?;
    let assemblage = make_assemblage(rho_ab, &settings_for(&meas.directions())?)?;
    Ok(match lhs_lp_feasible(&assemblage, hidden, HiddenMode::Restrict)? {
        LpOutcome::Feasible(cert) => Some(cert),
        LpOutcome::Infeasible { .. } => None,
    })
}

pub fn certify_unsteerable_shrunk(
    rho_ab: &DensityMatrix,
    meas: &SpherePolytope,
    hidden: &SpherePolytope,
) -> Result<bool> {
    Ok(shrunk_lhs_model(rho_ab, meas, hidden)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusParams {
    pub meas_level: usize,
    pub hidden_level: usize,
    pub bisection_tol: f64,
    pub psd_cap: f64,
}

impl Default for RadiusParams {
    fn default() -> Self {
        Self {
            meas_level: DEFAULT_MEAS_LEVEL,
            hidden_level: DEFAULT_HIDDEN_LEVEL,
            bisection_tol: DEFAULT_BISECTION_TOL,
            psd_cap: DEFAULT_PSD_CAP,
        }
    }
}

impl RadiusParams {
    pub fn validate(&self) -> Result<()> {
        if self.meas_level > MAX_LEVEL || self.hidden_level > MAX_LEVEL {
            return Err(Error::OutOfRange(format!("polytope levels must be at most {MAX_LEVEL}")));
        }
        if !(self.bisection_tol > 0.0 && self.bisection_tol.is_finite()) {
            return Err(Error::OutOfRange(format!("bisection tolerance {} must be positive", self.bisection_tol)));
        }
        if !(self.psd_cap > 0.0 && self.psd_cap.is_finite()) {
            return Err(Error::OutOfRange(format!("psd cap {} must be positive", self.psd_cap)));
        }
        Ok(())
    }
}

/// Bracket `r_in ≤ R ≤ r_out` on the critical radius along [`radial_mix`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub r_in: f64,
    pub r_out: f64,
    /// Upper end of the searched range.
    pub t_cap: f64,
    pub eta_meas: f64,
    pub eta_hidden: f64,
    pub meas_directions: usize,
    pub hidden_vertices: usize,
    pub meas_polytope_level: usize,
    pub hidden_polytope_level: usize,
    pub bisection_tol: f64,
    pub psd_cap: f64,
}

impl RadiusReport {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.r_in + self.r_out)
    }
}

fn valid_mix(rho_ab: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    radial_mix(rho_ab, t)?.valid().ok_or_else(|| Error::InvalidState(format!("radial mix at t = {t} is not positive")))
}

/// Smallest `t` in `[0, t_cap]` at which steering along the measurement
/// directions is detected, or `t_cap` if it never is.
fn outer_radius(rho_ab: &DensityMatrix, t_cap: f64, dirs: &[Vec3], hidden: &SpherePolytope, tol: f64) -> Result<f64> {
    let detect = |t: f64| -> Result<bool> { Ok(detect_steerable(&valid_mix(rho_ab, t)?, dirs, hidden)?.steerable) };
    if !detect(t_cap)? {
        return Ok(t_cap);
    }
    let (mut lo, mut hi) = (0.0, t_cap);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if detect(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Largest `t` in `[0, t_cap]` with a restricted LHS model on the
/// measurement vertices, or `None` if even `t = 0` has none.
fn inner_parameter(
    rho_ab: &DensityMatrix,
    t_cap: f64,
    meas: &SpherePolytope,
    hidden: &SpherePolytope,
    tol: f64,
) -> Result<Option<f64>> {
    let certify = |t: f64| certify_unsteerable_shrunk(&valid_mix(rho_ab, t)?, meas, hidden);
    if !certify(0.0)? {
        return Ok(None);
    }
    if certify(t_cap)? {
        return Ok(Some(t_cap));
    }
    let (mut lo, mut hi) = (0.0, t_cap);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if certify(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

pub fn critical_radius_bounds(rho_ab: &DensityMatrix, params: &RadiusParams) -> Result<RadiusReport> {
    require_two_qubits(rho_ab)?;
    params.validate()?;
    let meas = SpherePolytope::new(params.meas_level);
    let hidden = SpherePolytope::new(params.hidden_level);
    let dirs = meas.directions();
    let t_cap = psd_boundary(rho_ab, params.psd_cap)?;
    let tol = params.bisection_tol;
    let (r_out, inner) = rayon::join(
        || outer_radius(rho_ab, t_cap, &dirs, &hidden, tol),
        || inner_parameter(rho_ab, t_cap, &meas, &hidden, tol),
    );
    let r_out = r_out?;
    let r_in = inner?.map_or(0.0, |t| meas.eta() * t);
    Ok(RadiusReport {
        r_in,
        r_out,
        t_cap,
        eta_meas: meas.eta(),
        eta_hidden: hidden.eta(),
        meas_directions: dirs.len(),
        hidden_vertices: hidden.vertices().len(),
        meas_polytope_level: params.meas_level,
        hidden_polytope_level: params.hidden_level,
        bisection_tol: tol,
        psd_cap: params.psd_cap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// `r_out(ρ_AB) < 1 ≤ r_in(ρ_BA)`.
    CertifiedCyclic,
    /// `r_in(ρ_AB) ≥ 1` or `r_out(ρ_BA) < 1`.
    Refuted,
    #[serde(rename = "undetermined-at-this-resolution")]
    Undetermined,
}

impl Verdict {
    pub fn from_reports(ab: &RadiusReport, ba: &RadiusReport) -> Self {
        if ab.r_out < 1.0 && ba.r_in >= 1.0 {
            Self::CertifiedCyclic
        } else if ab.r_in >= 1.0 || ba.r_out < 1.0 {
            Self::Refuted
        } else {
            Self::Undetermined
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::CertifiedCyclic => "certified-cyclic",
            Self::Refuted => "refuted",
            Self::Undetermined => "undetermined-at-this-resolution",
        }
    }
}

/// Radius brackets in both directions of one reduced pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneWayReport {
    pub ab: RadiusReport,
    pub ba: RadiusReport,
    /// `r_in(ρ_BA) - r_out(ρ_AB)`; positive only when the one-way property is certified.
    pub delta: f64,
    pub ab_steerable: bool,
    pub ba_unsteerable: bool,
    pub verdict: Verdict,
}

pub fn one_way_report_pair(rho_ab: &DensityMatrix, params: &RadiusParams) -> Result<OneWayReport> {
    require_two_qubits(rho_ab)?;
    let rho_ba = rho_ab.conjugate_by(&swap_operator());
    let (ab, ba) = rayon::join(|| critical_radius_bounds(rho_ab, params), || critical_radius_bounds(&rho_ba, params));
    let (ab, ba) = (ab?, ba?);
    Ok(OneWayReport {
        delta: ba.r_in - ab.r_out,
        ab_steerable: ab.r_out < 1.0,
        ba_unsteerable: ba.r_in >= 1.0,
        verdict: Verdict::from_reports(&ab, &ba),
        ab,
        ba,
    })
}

/// For a shift-invariant family the pairs AB, BC and CA coincide, so the
/// AB pair decides cyclic steering.
pub fn one_way_report(family: &TriFamilyState, params: &RadiusParams) -> Result<OneWayReport> {
    one_way_report_pair(&family.pair(PartyPair::AB)?, params)
}

#[cfg(test)]
mod tests;
