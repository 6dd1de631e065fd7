//! Six-setting style steering inequalities: assemblages, the correlation
//! functional `F_{a|x} = (-1)^a b_x·σ`, its classical bound and its quantum
//! maximum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::bloch::{self, Vec3};
use crate::linalg::{bloch_to_obs, herm_eig, trace_norm, ComplexMatrix, DensityMatrix, C64};
use crate::states::swap_operator;
use crate::tol::TOL;

/// Largest setting count for which bounds are computed by exhaustive enumeration.
pub const MAX_ENUMERATED_SETTINGS: usize = 24;

/// A ±1 qubit measurement along a Bloch direction. The zero vector is allowed
/// and stands for a degenerate (outcome-independent) observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DichotomicSetting(Vec3);

impl DichotomicSetting {
    pub fn new(bloch: Vec3) -> Result<Self> {
        let n = bloch::norm(bloch);
        if n == 0.0 || (n - 1.0).abs() <= TOL.unit_vector {
            Ok(Self(bloch))
        } else {
            Err(Error::OutOfRange(format!("setting direction has norm {n}, expected 0 or 1")))
        }
    }

    /// Normalizes `v` onto the unit sphere.
    pub fn along(v: Vec3) -> Result<Self> {
        let n = bloch::norm(v);
        if n == 0.0 {
            return Err(Error::OutOfRange("zero direction".into()));
        }
        Ok(Self(bloch::scale(v, 1.0 / n)))
    }

    pub fn bloch(&self) -> Vec3 {
        self.0
    }

    /// `b · σ`.
    pub fn observable(&self) -> ComplexMatrix {
        bloch_to_obs(self.0)
    }
}

/// Golden-ratio coordinates of one vertex from each antipodal pair of the
/// regular icosahedron.
pub fn icosahedron_directions() -> [Vec3; 6] {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let n = (1.0 + phi * phi).sqrt();
    [
        [0.0, 1.0 / n, phi / n],
        [0.0, 1.0 / n, -phi / n],
        [1.0 / n, phi / n, 0.0],
        [1.0 / n, -phi / n, 0.0],
        [phi / n, 0.0, 1.0 / n],
        [phi / n, 0.0, -1.0 / n],
    ]
}

pub fn icosahedron_settings() -> Vec<DichotomicSetting> {
    icosahedron_directions().iter().map(|&b| DichotomicSetting(b)).collect()
}

/// Correlation functional with `F_{a|x} = (-1)^a B_x` and `B_x = b_x · σ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteeringFunctional {
    pub settings: Vec<DichotomicSetting>,
}

impl SteeringFunctional {
    pub fn new(settings: Vec<DichotomicSetting>) -> Self {
        Self { settings }
    }

    pub fn icosahedral() -> Self {
        Self::new(icosahedron_settings())
    }

    pub fn len(&self) -> usize {
        self.settings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.settings.is_empty()
    }

    pub fn directions(&self) -> Vec<Vec3> {
        self.settings.iter().map(DichotomicSetting::bloch).collect()
    }
}

/// General ±1 qubit observable `w I + a·σ` with `|w| + |a| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    pub identity: f64,
    pub bloch: Vec3,
}

impl Observable {
    pub fn projective(setting: DichotomicSetting) -> Self {
        Self { identity: 0.0, bloch: setting.bloch() }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        &ComplexMatrix::identity(2).scale(self.identity) + &bloch_to_obs(self.bloch)
    }

    /// Effect for outcome 0, `(I + A)/2`.
    pub fn effect(&self) -> ComplexMatrix {
        (&ComplexMatrix::identity(2) + &self.matrix()).scale(0.5)
    }
}

/// Conditional states `σ_{a|x}` prepared on the trusted side, two outcomes per setting.
#[derive(Debug, Clone)]
pub struct Assemblage {
    sigma: Vec<[ComplexMatrix; 2]>,
}

impl Assemblage {
    /// Measures the first qubit of `rho_ab` with the given observables.
    pub fn from_observables(rho_ab: &DensityMatrix, observables: &[Observable]) -> Result<Self> {
        require_two_qubits(rho_ab)?;
        let sigma = observables
            .iter()
            .map(|o| {
                let e0 = o.effect();
                let e1 = &ComplexMatrix::identity(2) - &e0;
                [conditional_state(rho_ab.matrix(), &e0), conditional_state(rho_ab.matrix(), &e1)]
            })
            .collect();
        Ok(Self { sigma })
    }

    /// Builds an assemblage from explicit conditional states.
    pub fn from_parts(sigma: Vec<[ComplexMatrix; 2]>) -> Result<Self> {
        for pair in &sigma {
            for s in pair {
                if s.rows() != 2 || s.cols() != 2 {
                    return Err(Error::DimensionMismatch("conditional states must be 2x2".into()));
                }
            }
        }
        Ok(Self { sigma })
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self, x: usize, a: usize) -> &ComplexMatrix {
        &self.sigma[x][a]
    }

    pub fn probability(&self, x: usize, a: usize) -> f64 {
        self.sigma[x][a].trace().re
    }

    /// `Σ_a σ_{a|x}` for the first setting.
    pub fn marginal(&self) -> ComplexMatrix {
        &self.sigma[0][0] + &self.sigma[0][1]
    }

    /// Largest violation of the no-signalling and positivity constraints.
    pub fn consistency_residual(&self) -> f64 {
        let Some(first) = self.sigma.first() else { return 0.0 };
        let marginal = &first[0] + &first[1];
        let mut worst = (marginal.trace().re - 1.0).abs();
        for pair in &self.sigma {
            worst = worst.max((&pair[0] + &pair[1]).max_abs_diff(&marginal));
            for s in pair {
                let min = herm_eig(s).map(|e| e.min()).unwrap_or(f64::NEG_INFINITY);
                worst = worst.max(-min);
            }
        }
        worst
    }
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!("expected a two-qubit state, got dims {:?}", rho.dims())));
    }
    Ok(())
}

/// `tr_A((E ⊗ I) ρ)` for a 4x4 `ρ`.
fn conditional_state(rho: &ComplexMatrix, effect: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2, 2);
    for k in 0..2 {
        for l in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..2 {
                for b in 0..2 {
                    acc += effect[(a, b)] * rho[(2 * b + k, 2 * a + l)];
                }
            }
            out[(k, l)] = acc;
        }
    }
    out
}

/// `tr_B((I ⊗ B) ρ)` for a 4x4 `ρ`.
fn untrusted_operator(rho: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..2 {
                for l in 0..2 {
                    acc += b[(k, l)] * rho[(2 * i + l, 2 * j + k)];
                }
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Conditional states for projective measurements along `settings`, with
/// `M_{0|x} = (I + b_x·σ)/2`.
pub fn make_assemblage(rho_ab: &DensityMatrix, settings: &[DichotomicSetting]) -> Result<Assemblage> {
    let obs: Vec<Observable> = settings.iter().map(|&s| Observable::projective(s)).collect();
    Assemblage::from_observables(rho_ab, &obs)
}

/// Classical bound of a correlation functional and one sign string attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhsBound {
    pub value: f64,
    pub signs: Vec<i8>,
}

/// `L = max_{a ∈ {±1}^m} |Σ_x a_x b_x|`, by enumerating the `2^(m-1)` strings
/// with `a_m = +1`. The first maximizer in binary order (bit `x` set means
/// `a_x = -1`) is returned.
pub fn lhs_bound(functional: &SteeringFunctional) -> Result<LhsBound> {
    let m = functional.len();
    if m > MAX_ENUMERATED_SETTINGS {
        return Err(Error::TooManySettings { count: m, limit: MAX_ENUMERATED_SETTINGS });
    }
    if m == 0 {
        return Ok(LhsBound { value: 0.0, signs: vec![] });
    }
    let b = functional.directions();
    let sum_for = |mask: u64| {
        (0..m).fold([0.0; 3], |acc, x| {
            let s = if mask >> x & 1 == 1 { -1.0 } else { 1.0 };
            bloch::add(acc, bloch::scale(b[x], s))
        })
    };

    let count = 1u64 << (m - 1);
    let mut best = (f64::NEG_INFINITY, 0u64);
    let mut sum = sum_for(0);
    let mut mask = 0u64;
    for k in 0..count {
        if k > 0 {
            // Gray-code step: flip one sign.
            let gray = k ^ (k >> 1);
            let bit = (gray ^ mask).trailing_zeros() as usize;
            mask = gray;
            let s = if mask >> bit & 1 == 1 { -2.0 } else { 2.0 };
            sum = bloch::add(sum, bloch::scale(b[bit], s));
            if k % 1024 == 0 {
                sum = sum_for(mask);
            }
        }
        let v = bloch::norm(sum);
        if v > best.0 + 1e-12 || (v > best.0 - 1e-12 && mask < best.1) {
            best = (best.0.max(v), mask);
        }
    }
    let signs: Vec<i8> = (0..m).map(|x| if best.1 >> x & 1 == 1 { -1 } else { 1 }).collect();
    let value = bloch::norm(sum_for(best.1));
    Ok(LhsBound { value, signs })
}

/// Quantum maximum of the functional and the observables attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumValue {
    pub value: f64,
    pub observables: Vec<Observable>,
}

/// `Q = Σ_x ||G_x||_1` with `G_x = tr_B((I ⊗ B_x) ρ_AB)`; the optimal
/// observables are `A_x = Σ_i sign(λ_i)|v_i><v_i|` with `sign(0) = +1`.
pub fn quantum_value(rho_ab: &DensityMatrix, functional: &SteeringFunctional) -> Result<QuantumValue> {
    require_two_qubits(rho_ab)?;
    let mut value = 0.0;
    let mut observables = Vec::with_capacity(functional.len());
    for s in &functional.settings {
        let g = untrusted_operator(rho_ab.matrix(), &s.observable()).hermitian_part();
        let e = herm_eig(&g)?;
        value += trace_norm(&g);
        let sign = |l: f64| if l < -TOL.degenerate_eigenvalue { -1.0 } else { 1.0 };
        let (s1, s2) = (sign(e.values[0]), sign(e.values[1]));
        let bloch = if s1 == s2 {
            [0.0; 3]
        } else {
            let v = e.vector(0);
            let top = ComplexMatrix::outer(&v);
            bloch::scale(bloch::obs_to_bloch(&top), s1 - s2)
        };
        observables.push(Observable { identity: (s1 + s2) / 2.0, bloch });
    }
    Ok(QuantumValue { value, observables })
}

/// `Σ_x Σ_a tr(F_{a|x} σ_{a|x})`.
pub fn evaluate_functional(assemblage: &Assemblage, functional: &SteeringFunctional) -> Result<f64> {
    if assemblage.len() != functional.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} assemblage settings for a {}-setting functional",
            assemblage.len(),
            functional.len()
        )));
    }
    Ok(functional
        .settings
        .iter()
        .enumerate()
        .map(|(x, s)| {
            let b = s.observable();
            let diff = assemblage.sigma(x, 0) - assemblage.sigma(x, 1);
            (&b * &diff).trace().re
        })
        .sum())
}

/// Both steering directions of a two-qubit state against one functional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario1Report {
    #[serde(rename = "L")]
    pub l: f64,
    pub l_signs: Vec<i8>,
    #[serde(rename = "Q_AB")]
    pub q_ab: f64,
    #[serde(rename = "Q_BA")]
    pub q_ba: f64,
    /// Optimal observables of the untrusted party for the `AB` direction.
    pub a_vectors: Vec<Observable>,
    pub b_vectors: Vec<Vec3>,
    pub violated: DirectionFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionFlags {
    #[serde(rename = "AB")]
    pub ab: bool,
    #[serde(rename = "BA")]
    pub ba: bool,
}

impl Scenario1Report {
    /// Violated from A to B and satisfied from B to A.
    pub fn is_one_way(&self) -> bool {
        self.violated.ab && !self.violated.ba
    }
}

/// Evaluates `Q(ρ_AB) > L` and `Q(ρ_BA) ≤ L`.
pub fn one_way_gap_scenario1(rho_ab: &DensityMatrix, functional: &SteeringFunctional) -> Result<Scenario1Report> {
    require_two_qubits(rho_ab)?;
    let bound = lhs_bound(functional)?;
    let forward = quantum_value(rho_ab, functional)?;
    let rho_ba = rho_ab.conjugate_by(&swap_operator());
    let backward = quantum_value(&rho_ba, functional)?;
    Ok(Scenario1Report {
        l: bound.value,
        l_signs: bound.signs,
        q_ab: forward.value,
        q_ba: backward.value,
        a_vectors: forward.observables,
        b_vectors: functional.directions(),
        violated: DirectionFlags { ab: forward.value > bound.value, ba: backward.value > bound.value },
    })
}

/// Rows `party,setting,outcome,x,y,z` with both endpoints `±v` of each axis.
pub fn bloch_vectors_csv(report: &Scenario1Report) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["party", "setting", "outcome", "x", "y", "z"]).map_err(io)?;
    let rows = report.a_vectors.iter().map(|o| ("alice", o.bloch)).chain(report.b_vectors.iter().map(|&b| ("bob", b)));
    let mut counters = [0usize; 2];
    for (party, v) in rows {
        let c = &mut counters[(party == "bob") as usize];
        *c += 1;
        for (outcome, s) in [(0, 1.0), (1, -1.0)] {
            let e = bloch::scale(v, s);
            w.write_record([
                party.to_string(),
                c.to_string(),
                outcome.to_string(),
                format!("{:.9}", e[0] + 0.0),
                format!("{:.9}", e[1] + 0.0),
                format!("{:.9}", e[2] + 0.0),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
