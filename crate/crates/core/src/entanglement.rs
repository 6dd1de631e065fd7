//! PPT test, negativity and the Gühne-Seevinck matrix-element criterion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, trace_norm, DensityMatrix};
use crate::states::{reduce_pair, PartyPair};
use crate::tol::TOL;

fn check_cut(rho: &DensityMatrix, cut: &[usize]) -> Result<()> {
    let n = rho.dims().len();
    if cut.is_empty() || cut.len() >= n {
        return Err(Error::DimensionMismatch(format!("cut {cut:?} is not a proper bipartition of {n} parties")));
    }
    for (i, &s) in cut.iter().enumerate() {
        if s >= n {
            return Err(Error::SubsystemOutOfRange { index: s, count: n });
        }
        if cut[..i].contains(&s) {
            return Err(Error::DimensionMismatch(format!("subsystem {s} repeated in cut")));
        }
    }
    Ok(())
}

/// `(‖ρ^{T_cut}‖₁ - 1)/2`, where `cut` lists the transposed subsystems.
pub fn negativity(rho: &DensityMatrix, cut: &[usize]) -> Result<f64> {
    check_cut(rho, cut)?;
    let pt = rho.partial_transpose(cut)?;
    let n = (trace_norm(&pt) - 1.0) / 2.0;
    Ok(if n < TOL.negativity_floor { 0.0 } else { n })
}

pub fn is_ppt(rho: &DensityMatrix, cut: &[usize]) -> Result<bool> {
    check_cut(rho, cut)?;
    let pt = rho.partial_transpose(cut)?;
    Ok(*eigvalsh(&pt)?.last().expect("non-empty spectrum") >= -TOL.psd)
}

/// Gühne-Seevinck criterion `|ρ_{1,8}| > √(ρ_{2,2}ρ_{7,7}) + √(ρ_{3,3}ρ_{6,6}) + √(ρ_{4,4}ρ_{5,5})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GsCriterion {
    pub lhs: f64,
    pub rhs: f64,
    pub detected: bool,
}

/// Evaluates the criterion in the basis `|000>, ..., |111>`. The printed
/// 1-based indices `i` map to matrix entries `i - 1`.
pub fn gte_criterion(rho3: &DensityMatrix) -> Result<GsCriterion> {
    if rho3.dims() != [2, 2, 2] {
        return Err(Error::DimensionMismatch(format!("expected three qubits, got dims {:?}", rho3.dims())));
    }
    let m = rho3.matrix();
    let d = |i: usize| m[(i, i)].re.max(0.0);
    let lhs = m[(0, 7)].norm();
    let rhs = (d(1) * d(6)).sqrt() + (d(2) * d(5)).sqrt() + (d(3) * d(4)).sqrt();
    Ok(GsCriterion { lhs, rhs, detected: lhs > rhs })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutReport {
    pub cut: String,
    pub negativity: f64,
    pub ppt: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GteReport {
    #[serde(flatten)]
    pub criterion: GsCriterion,
    pub status: String,
}

/// Negativities of every single-party cut; for three qubits also the
/// reduced pair `ρ_AB` and the tripartite criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub cuts: Vec<CutReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_ab: Option<CutReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gte: Option<GteReport>,
}

const NAMES: [&str; 3] = ["A", "B", "C"];

fn cut_report(rho: &DensityMatrix, cut: &[usize], label: String) -> Result<CutReport> {
    Ok(CutReport { cut: label, negativity: negativity(rho, cut)?, ppt: is_ppt(rho, cut)? })
}

pub fn entanglement_report(rho: &DensityMatrix) -> Result<EntanglementReport> {
    match rho.dims() {
        [2, 2] => Ok(EntanglementReport { cuts: vec![cut_report(rho, &[0], "A|B".into())?], pair_ab: None, gte: None }),
        [2, 2, 2] => {
            let cuts = (0..3)
                .map(|i| {
                    let rest: String = (0..3).filter(|&j| j != i).map(|j| NAMES[j]).collect();
                    cut_report(rho, &[i], format!("{}|{rest}", NAMES[i]))
                })
                .collect::<Result<Vec<_>>>()?;
            let pair = reduce_pair(rho, PartyPair::AB)?;
            let criterion = gte_criterion(rho)?;
            let status = if criterion.detected { "detected" } else { "GS criterion inconclusive" }.to_string();
            Ok(EntanglementReport {
                cuts,
                pair_ab: Some(cut_report(&pair, &[0], "A|B of rho_AB".into())?),
                gte: Some(GteReport { criterion, status }),
            })
        }
        dims => Err(Error::DimensionMismatch(format!("entanglement report needs two or three qubits, got {dims:?}"))),
    }
}
