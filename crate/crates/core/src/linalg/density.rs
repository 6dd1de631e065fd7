use super::eig::herm_eig;
use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::tol::TOL;

/// A validated density matrix together with its subsystem dimensions.
///
/// Subsystem 0 is the leftmost tensor factor.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates trace, Hermiticity and positivity. Small Hermiticity drift
    /// (below `TOL.hermitian_repair`) is symmetrized away.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let n = matrix.require_square()?;
        check_dims(&dims, n)?;
        let residual = matrix.hermitian_residual();
        if residual > TOL.hermitian_repair {
            return Err(Error::InvalidState(format!("not Hermitian (residual {residual:e})")));
        }
        let matrix = if residual > 0.0 { matrix.hermitian_part() } else { matrix };
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > TOL.trace {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = herm_eig(&matrix)?.min();
        if min < -TOL.psd {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix, dims })
    }

    /// Skips the spectral check. For results of operations that preserve
    /// positivity by construction (partial traces, convex mixtures, tensor products).
    pub(crate) fn new_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.rows());
        Self { matrix, dims }
    }

    /// `|ψ><ψ|` for a vector normalized within `TOL.normalization`.
    pub fn from_pure(psi: &[C64], dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, psi.len())?;
        let n2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (n2 - 1.0).abs() > TOL.normalization {
            return Err(Error::Unnormalized(n2));
        }
        let psi: Vec<C64> = psi.iter().map(|z| z / n2.sqrt()).collect();
        Ok(Self::new_unchecked(ComplexMatrix::outer(&psi), dims))
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        Self::new_unchecked(ComplexMatrix::identity(n).scale(1.0 / n as f64), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        herm_eig(&self.matrix).expect("density matrices are Hermitian").min()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        Self::new_unchecked(self.matrix.kron(&other.matrix), dims)
    }

    /// Convex combination `w·self + (1-w)·other`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch("mixing states with different dims".into()));
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::OutOfRange(format!("mixing weight {w}")));
        }
        let m = &self.matrix.scale(w) + &other.matrix.scale(1.0 - w);
        Ok(Self::new_unchecked(m, self.dims.clone()))
    }

    /// `U ρ U†` for a unitary acting on the whole space.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        Self::new_unchecked(self.matrix.conjugate_by(u).hermitian_part(), self.dims.clone())
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        partial_trace(self, keep)
    }

    pub fn partial_transpose(&self, subsystems: &[usize]) -> Result<ComplexMatrix> {
        partial_transpose_matrix(&self.matrix, &self.dims, subsystems)
    }
}

fn check_dims(dims: &[usize], n: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != n {
        return Err(Error::DimensionMismatch(format!("dims {dims:?} for matrix dimension {n}")));
    }
    Ok(())
}

fn check_indices(indices: &[usize], count: usize) -> Result<()> {
    for &index in indices {
        if index >= count {
            return Err(Error::SubsystemOutOfRange { index, count });
        }
    }
    Ok(())
}

/// Splits a flat index into per-subsystem digits.
fn digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

fn flat(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d)
}

/// Reduced state on the subsystems in `keep`, listed in their original order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let (m, dims) = partial_trace_matrix(&rho.matrix, &rho.dims, keep)?;
    Ok(DensityMatrix::new_unchecked(m, dims))
}

/// Partial trace on a bare operator with the given subsystem structure.
pub fn partial_trace_matrix(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<(ComplexMatrix, Vec<usize>)> {
    check_dims(dims, m.rows())?;
    check_indices(keep, dims.len())?;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() {
        return Err(Error::DimensionMismatch("partial trace must keep at least one subsystem".into()));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !kept.contains(k)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let nk: usize = kept_dims.iter().product();
    let nt: usize = traced_dims.iter().product();

    let mut out = ComplexMatrix::zeros(nk, nk);
    let mut full = vec![0; dims.len()];
    let compose = |full: &mut Vec<usize>, kd: &[usize], td: &[usize]| {
        for (pos, &k) in kept.iter().enumerate() {
            full[k] = kd[pos];
        }
        for (pos, &k) in traced.iter().enumerate() {
            full[k] = td[pos];
        }
        flat(full, dims)
    };
    for i in 0..nk {
        let di = digits(i, &kept_dims);
        for j in 0..nk {
            let dj = digits(j, &kept_dims);
            let mut acc = ZERO;
            for t in 0..nt {
                let dt = digits(t, &traced_dims);
                let r = compose(&mut full, &di, &dt);
                let c = compose(&mut full, &dj, &dt);
                acc += m[(r, c)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok((out, kept_dims))
}

/// Partial transpose of a density matrix on one subsystem.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<ComplexMatrix> {
    partial_transpose_matrix(&rho.matrix, &rho.dims, &[subsystem])
}

/// Transposes the listed subsystems' indices.
pub fn partial_transpose_matrix(m: &ComplexMatrix, dims: &[usize], subsystems: &[usize]) -> Result<ComplexMatrix> {
    check_dims(dims, m.rows())?;
    check_indices(subsystems, dims.len())?;
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let mut di = digits(i, dims);
        for j in 0..n {
            let mut dj = digits(j, dims);
            for &s in subsystems {
                std::mem::swap(&mut di[s], &mut dj[s]);
            }
            out[(flat(&di, dims), flat(&dj, dims))] = m[(i, j)];
            for &s in subsystems {
                std::mem::swap(&mut di[s], &mut dj[s]);
            }
        }
    }
    Ok(out)
}

/// Permutation matrix `P` that reorders tensor factors: factor `order[k]` of
/// the input becomes factor `k` of the output, so `P (x_0 ⊗ … ⊗ x_n) =
/// x_{order[0]} ⊗ … ⊗ x_{order[n]}`.
pub fn subsystem_permutation(dims: &[usize], order: &[usize]) -> Result<ComplexMatrix> {
    let mut seen = order.to_vec();
    seen.sort_unstable();
    if seen != (0..dims.len()).collect::<Vec<_>>() {
        return Err(Error::DimensionMismatch(format!("{order:?} is not a permutation of {} factors", dims.len())));
    }
    let n: usize = dims.iter().product();
    let new_dims: Vec<usize> = order.iter().map(|&k| dims[k]).collect();
    let mut p = ComplexMatrix::zeros(n, n);
    for src in 0..n {
        let d = digits(src, dims);
        let nd: Vec<usize> = order.iter().map(|&k| d[k]).collect();
        p[(flat(&nd, &new_dims), src)] = ONE;
    }
    Ok(p)
}

/// Reorders the tensor factors of a state; see [`subsystem_permutation`].
pub fn permute_subsystems(rho: &DensityMatrix, order: &[usize]) -> Result<DensityMatrix> {
    let p = subsystem_permutation(&rho.dims, order)?;
    let dims = order.iter().map(|&k| rho.dims[k]).collect();
    Ok(DensityMatrix::new_unchecked(rho.matrix.conjugate_by(&p), dims))
}
