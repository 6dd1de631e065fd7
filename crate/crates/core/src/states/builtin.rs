use std::fmt;
use std::str::FromStr;

use super::PureState3Q;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Named three-qubit states with their coefficient tables stored as printed
/// (unnormalized). Index order is `c_000, c_001, …, c_111`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinState {
    /// Scenario-1 optimum of the penalized six-setting search.
    Sc1,
    /// Seven real coefficients with `c_111 = 0`.
    B1,
    /// Best real solution.
    B2,
    /// Best complex solution.
    B3,
    W,
    Ghz,
}

const SC1: [f64; 8] = [0.069455, 1.0, 1.0, -0.762707, 0.604546, -0.475110, -0.762707, 0.0];
const B1: [f64; 8] = [1.0, -0.321193, -0.477021, 0.045221, -0.718592, 0.213715, -0.0482, 0.0];
const B2: [f64; 8] = [1.0, -0.259910, -0.591007, 0.028007, -0.798924, 0.206125, -0.079214, -0.000311];
const B3: [(f64, f64); 8] = [
    (1.0, 0.0),
    (-0.252592, -0.065698),
    (0.002913, -0.000635),
    (0.025469, 0.025479),
    (-0.120348, -0.110323),
    (-0.103340, -0.161335),
    (-0.044067, -0.089806),
    (0.055929, -0.044192),
];
const W: [f64; 8] = [0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0];
const GHZ: [f64; 8] = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0];

impl BuiltinState {
    pub const ALL: [BuiltinState; 6] = [Self::Sc1, Self::B1, Self::B2, Self::B3, Self::W, Self::Ghz];

    pub fn name(self) -> &'static str {
        match self {
            Self::Sc1 => "sc1",
            Self::B1 => "b1",
            Self::B2 => "b2",
            Self::B3 => "b3",
            Self::W => "w",
            Self::Ghz => "ghz",
        }
    }

    /// Coefficients exactly as tabulated, before normalization.
    pub fn raw(self) -> PureState3Q {
        let amplitudes = match self {
            Self::B3 => B3.map(|(re, im)| C64::new(re, im)),
            _ => self.real_coefficients().expect("real table").map(|x| C64::new(x, 0.0)),
        };
        PureState3Q::new(amplitudes)
    }

    /// Real coefficient table, when the state has one.
    pub fn real_coefficients(self) -> Option<[f64; 8]> {
        match self {
            Self::Sc1 => Some(SC1),
            Self::B1 => Some(B1),
            Self::B2 => Some(B2),
            Self::B3 => None,
            Self::W => Some(W),
            Self::Ghz => Some(GHZ),
        }
    }

    /// Normalized state.
    pub fn state(self) -> Result<PureState3Q> {
        self.raw().normalized()
    }
}

impl fmt::Display for BuiltinState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownState(s.to_string()))
    }
}
