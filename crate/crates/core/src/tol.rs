//! Numerical tolerances shared by every module.

/// Central tolerance record. All checks in the crate read from [`TOL`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Maximum `|M_ij - conj(M_ji)|` for a matrix to count as Hermitian.
    pub hermitian: f64,
    /// Above `hermitian` but below this, inputs are symmetrized instead of rejected.
    pub hermitian_repair: f64,
    /// Allowed deviation of a state's trace from one.
    pub trace: f64,
    /// Most negative eigenvalue still accepted as positive semidefinite.
    pub psd: f64,
    /// Jacobi stops once the off-diagonal Frobenius mass falls below this (relative).
    pub jacobi_offdiag: f64,
    /// Normalization slack for pure-state inputs.
    pub normalization: f64,
    /// Unit-vector slack for measurement directions.
    pub unit_vector: f64,
    /// Eigenvalues at or below this magnitude are treated as degenerate.
    pub degenerate_eigenvalue: f64,
    /// Primary residual at which an LP is declared feasible.
    pub lp_feasibility: f64,
    /// Minimum certified violation for a Farkas functional to count as a steering witness.
    pub farkas_violation: f64,
    /// Negativity values below this are clamped to zero.
    pub negativity_floor: f64,
}

pub const TOL: Tolerances = Tolerances {
    hermitian: 1e-12,
    hermitian_repair: 1e-10,
    trace: 1e-10,
    psd: 1e-10,
    jacobi_offdiag: 1e-14,
    normalization: 1e-9,
    unit_vector: 1e-12,
    degenerate_eigenvalue: 1e-9,
    lp_feasibility: 1e-8,
    farkas_violation: 1e-7,
    negativity_floor: 1e-12,
};
