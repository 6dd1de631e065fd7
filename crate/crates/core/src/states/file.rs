//! JSON state files.
//!
//! ```json
//! {"type": "three_qubit_family", "c": [[1.0, 0.0], ...], "p": 1.0}
//! {"type": "density_matrix", "dims": [2, 2], "re": [[...]], "im": [[...]]}
//! ```
//!
//! Family coefficients are listed in `(i,j,k)` lexicographic order and may be
//! unnormalized. Density matrices must be valid states within the crate
//! tolerances.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{PureState3Q, TriFamilyState};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateFile {
    ThreeQubitFamily { c: Vec<[f64; 2]>, p: f64 },
    DensityMatrix { dims: Vec<usize>, re: Vec<Vec<f64>>, im: Vec<Vec<f64>> },
}

/// A parsed and validated state.
#[derive(Debug, Clone)]
pub enum LoadedState {
    Family(TriFamilyState),
    Density(DensityMatrix),
}

impl StateFile {
    pub fn from_family(state: &TriFamilyState) -> Self {
        Self::ThreeQubitFamily { c: state.psi1.amplitudes().iter().map(|z| [z.re, z.im]).collect(), p: state.p }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self::DensityMatrix { dims: rho.dims().to_vec(), re: rho.matrix().re_parts(), im: rho.matrix().im_parts() }
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files serialize")
    }

    /// Validates the contents.
    pub fn load(&self) -> Result<LoadedState> {
        match self {
            Self::ThreeQubitFamily { c, p } => {
                if c.len() != 8 {
                    return Err(Error::Parse(format!("family needs 8 coefficients, got {}", c.len())));
                }
                let mut amplitudes = [C64::new(0.0, 0.0); 8];
                for (a, [re, im]) in amplitudes.iter_mut().zip(c) {
                    *a = C64::new(*re, *im);
                }
                Ok(LoadedState::Family(TriFamilyState::new(PureState3Q::new(amplitudes), *p)?))
            }
            Self::DensityMatrix { dims, re, im } => {
                let m = ComplexMatrix::from_parts(re, im)?;
                Ok(LoadedState::Density(DensityMatrix::new(m, dims.clone())?))
            }
        }
    }
}
