//! State constructors: the singlet and Werner family, the translationally
//! invariant three-qubit family, builtin coefficient tables and the cyclic
//! tensor-product construction for higher local dimension.
//!
//! Party ordering is fixed as A ⊗ B ⊗ C with A leftmost, so the basis index of
//! `|ijk>` is `4i + 2j + k`.

mod builtin;
mod file;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, permute_subsystems, ComplexMatrix, DensityMatrix, C64};
use crate::tol::TOL;

pub use builtin::BuiltinState;
pub use file::{LoadedState, StateFile};

/// Pure three-qubit state `Σ c_ijk |ijk>`; amplitudes are indexed `4i + 2j + k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState3Q {
    amplitudes: [C64; 8],
}

impl PureState3Q {
    /// Wraps raw (possibly unnormalized) amplitudes.
    pub fn new(amplitudes: [C64; 8]) -> Self {
        Self { amplitudes }
    }

    /// Real amplitudes. Seven values leave `c_111 = 0`; eight set every entry.
    pub fn from_real(c: &[f64]) -> Result<Self> {
        let mut amplitudes = [C64::new(0.0, 0.0); 8];
        match c.len() {
            7 | 8 => {
                for (a, &v) in amplitudes.iter_mut().zip(c) {
                    *a = C64::new(v, 0.0);
                }
                Ok(Self { amplitudes })
            }
            n => Err(Error::DimensionMismatch(format!("{n} real coefficients, expected 7 or 8"))),
        }
    }

    /// Sixteen reals read as `(re, im)` pairs.
    pub fn from_re_im_pairs(c: &[f64]) -> Result<Self> {
        if c.len() != 16 {
            return Err(Error::DimensionMismatch(format!("{} values, expected 16", c.len())));
        }
        let mut amplitudes = [C64::new(0.0, 0.0); 8];
        for (k, a) in amplitudes.iter_mut().enumerate() {
            *a = C64::new(c[2 * k], c[2 * k + 1]);
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[C64; 8] {
        &self.amplitudes
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> C64 {
        self.amplitudes[4 * i + 2 * j + k]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 <= 0.0 || !n2.is_finite() {
            return Err(Error::ZeroCoefficients);
        }
        let s = 1.0 / n2.sqrt();
        Ok(Self { amplitudes: self.amplitudes.map(|z| z * s) })
    }

    /// `S|ψ>`: the coefficient at `(i,j,k)` becomes the old one at `(j,k,i)`.
    pub fn shifted(&self) -> Self {
        let mut out = [C64::new(0.0, 0.0); 8];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out[4 * i + 2 * j + k] = self.coefficient(j, k, i);
                }
            }
        }
        Self { amplitudes: out }
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_pure(&self.normalized()?.amplitudes, vec![2, 2, 2])
    }
}

/// The mixture `p/3 Σ_n |S^n ψ><S^n ψ| + (1-p) I/8`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriFamilyState {
    pub psi1: PureState3Q,
    pub p: f64,
}

impl TriFamilyState {
    /// Normalizes `psi1` and checks `p`.
    pub fn new(psi1: PureState3Q, p: f64) -> Result<Self> {
        check_weight(p)?;
        Ok(Self { psi1: psi1.normalized()?, p })
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        build_family(&self.psi1, self.p)
    }

    pub fn pair(&self, pair: PartyPair) -> Result<DensityMatrix> {
        reduce_pair(&self.density()?, pair)
    }
}

fn check_weight(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("mixing weight p = {p} outside [0, 1]")))
    }
}

/// `(|01> - |10>)/√2`.
pub fn singlet() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    DensityMatrix::from_pure(&[z, C64::new(s, 0.0), C64::new(-s, 0.0), z], vec![2, 2]).expect("singlet is normalized")
}

/// `p |ψ-><ψ-| + (1-p) I/4`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check_weight(p)?;
    singlet().mix(&DensityMatrix::maximally_mixed(vec![2, 2]), p)
}

/// Right-shift `S = Σ |ijk><jki|` on three qubits.
pub fn shift_operator() -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(8, 8);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                s[(4 * i + 2 * j + k, 4 * j + 2 * k + i)] = C64::new(1.0, 0.0);
            }
        }
    }
    s
}

/// Two-qubit flip `V|ij> = |ji>`.
pub fn swap_operator() -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            v[(2 * j + i, 2 * i + j)] = C64::new(1.0, 0.0);
        }
    }
    v
}

/// Builds the translationally invariant family state from a normalized `psi1`.
pub fn build_family(psi1: &PureState3Q, p: f64) -> Result<DensityMatrix> {
    check_weight(p)?;
    let n2 = psi1.norm_sqr();
    if (n2 - 1.0).abs() > TOL.normalization {
        return Err(Error::Unnormalized(n2));
    }
    let mut m = ComplexMatrix::identity(8).scale((1.0 - p) / 8.0);
    let mut psi = *psi1;
    for _ in 0..3 {
        m = &m + &ComplexMatrix::outer(&psi.amplitudes).scale(p / 3.0 / n2);
        psi = psi.shifted();
    }
    DensityMatrix::new(m, vec![2, 2, 2])
}

/// Three parties of the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    fn index(self) -> usize {
        self as usize
    }
}

/// Ordered pair of distinct parties; the first is the untrusted (steering) side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartyPair(pub Party, pub Party);

impl PartyPair {
    pub const AB: Self = Self(Party::A, Party::B);
    pub const BA: Self = Self(Party::B, Party::A);
    pub const BC: Self = Self(Party::B, Party::C);
    pub const CB: Self = Self(Party::C, Party::B);
    pub const CA: Self = Self(Party::C, Party::A);
    pub const AC: Self = Self(Party::A, Party::C);
}

impl fmt::Display for PartyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.0, self.1)
    }
}

impl FromStr for PartyPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let party = |c: char| match c.to_ascii_uppercase() {
            'A' => Ok(Party::A),
            'B' => Ok(Party::B),
            'C' => Ok(Party::C),
            _ => Err(Error::Parse(format!("invalid party pair `{s}`"))),
        };
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 2 {
            return Err(Error::Parse(format!("invalid party pair `{s}`")));
        }
        Ok(Self(party(chars[0])?, party(chars[1])?))
    }
}

/// Two-qubit marginal of a three-qubit state, with the pair's order respected.
pub fn reduce_pair(rho3: &DensityMatrix, pair: PartyPair) -> Result<DensityMatrix> {
    if rho3.dims() != [2, 2, 2] {
        return Err(Error::DimensionMismatch(format!("expected dims [2, 2, 2], got {:?}", rho3.dims())));
    }
    let (x, y) = (pair.0.index(), pair.1.index());
    if x == y {
        return Err(Error::Parse(format!("pair {pair} repeats a party")));
    }
    let reduced = partial_trace(rho3, &[x.min(y), x.max(y)])?;
    if x < y {
        Ok(reduced)
    } else {
        Ok(reduced.conjugate_by(&swap_operator()))
    }
}

/// Composite state `ρ_AB ⊗ ρ_B'C ⊗ ρ_C'A'` with factors regrouped so each
/// party's pair is contiguous: output subsystem order is `[A, A', B, B', C, C']`.
pub fn cyclic_tensor_product(
    rho_ab: &DensityMatrix,
    rho_bc: &DensityMatrix,
    rho_ca: &DensityMatrix,
) -> Result<DensityMatrix> {
    for (name, r) in [("first", rho_ab), ("second", rho_bc), ("third", rho_ca)] {
        if r.dims().len() != 2 {
            return Err(Error::DimensionMismatch(format!("{name} factor must be bipartite, got dims {:?}", r.dims())));
        }
    }
    // raw order: A, B, B', C, C', A'
    let raw = rho_ab.tensor(rho_bc).tensor(rho_ca);
    permute_subsystems(&raw, &[0, 5, 1, 2, 3, 4])
}

/// Max deviation of `tr_C̃` of the composite from `ρ_AB ⊗ ρ_A' ⊗ ρ_B'`.
pub fn cyclic_product_marginal_residual(
    composite: &DensityMatrix,
    rho_ab: &DensityMatrix,
    rho_bc: &DensityMatrix,
    rho_ca: &DensityMatrix,
) -> Result<f64> {
    // keep A, A', B, B' then reorder to A, B, A', B'
    let marginal = permute_subsystems(&partial_trace(composite, &[0, 1, 2, 3])?, &[0, 2, 1, 3])?;
    let rho_a_prime = partial_trace(rho_ca, &[1])?;
    let rho_b_prime = partial_trace(rho_bc, &[0])?;
    let expected = rho_ab.tensor(&rho_a_prime).tensor(&rho_b_prime);
    Ok(marginal.matrix().max_abs_diff(expected.matrix()))
}
