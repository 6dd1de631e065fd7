//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::tol::TOL;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order and the matching orthonormal eigenvectors
/// stored as columns.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermEig {
    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.vectors.column(i)
    }

    /// `Σ_i f(λ_i) |v_i><v_i|`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        ComplexMatrix::from_fn(n, n, |r, c| {
            self.values
                .iter()
                .enumerate()
                .map(|(k, &l)| self.vectors[(r, k)] * self.vectors[(c, k)].conj() * f(l))
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }

    pub fn min(&self) -> f64 {
        *self.values.last().expect("empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Inputs within `TOL.hermitian_repair` of Hermitian are symmetrized first;
/// anything further off is rejected.
pub fn herm_eig(h: &ComplexMatrix) -> Result<HermEig> {
    let n = h.require_square()?;
    let residual = h.hermitian_residual();
    if residual > TOL.hermitian_repair {
        return Err(Error::NotHermitian(residual));
    }
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let total = a.frobenius_norm().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= TOL.jacobi_offdiag * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermEig { values, vectors })
}

/// Eigenvalues only, descending.
pub fn eigvalsh(h: &ComplexMatrix) -> Result<Vec<f64>> {
    herm_eig(h).map(|e| e.values)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with a unitary acting on coordinates `p, q`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let h = a[(p, q)];
    let mag = h.norm();
    if mag < f64::MIN_POSITIVE * 1e10 {
        return;
    }
    let phase = h / mag;
    let alpha = a[(p, p)].re;
    let beta = a[(q, q)].re;
    let theta = (beta - alpha) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U = diag(1, conj(phase)) · [[c, s], [-s, c]]
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Sum of singular values. Hermitian inputs use `Σ|λ_i|` directly.
///
/// Panics on non-square input.
pub fn trace_norm(g: &ComplexMatrix) -> f64 {
    g.require_square().expect("trace norm of a non-square matrix");
    if g.hermitian_residual() <= TOL.hermitian {
        let e = herm_eig(g).expect("Hermitian input");
        return e.values.iter().map(|l| l.abs()).sum();
    }
    let gram = &g.adjoint() * g;
    let e = herm_eig(&gram).expect("Gram matrix is Hermitian");
    e.values.iter().map(|l| l.max(0.0).sqrt()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::bloch::{bloch_to_obs, pauli};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let m = ComplexMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        m.hermitian_part()
    }

    #[test]
    fn pauli_z_spectrum() {
        let e = herm_eig(&pauli(3)).unwrap();
        assert_eq!(e.values, vec![1.0, -1.0]);
    }

    #[test]
    fn unit_bloch_observable_has_plus_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let v: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            let e = herm_eig(&bloch_to_obs([v[0] / n, v[1] / n, v[2] / n])).unwrap();
            assert!((e.values[0] - 1.0).abs() < 1e-14);
            assert!((e.values[1] + 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn random_8x8_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2, 3, 5, 8, 16] {
            let h = random_hermitian(n, &mut rng);
            let e = herm_eig(&h).unwrap();
            assert!(e.reconstruct().max_abs_diff(&h) <= 1e-10, "n={n}");
            let gram = &e.vectors.adjoint() * &e.vectors;
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_fn(2, 2, |i, j| C64::new((i + 2 * j) as f64, 0.0));
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn trace_norm_basics() {
        assert!((trace_norm(&ComplexMatrix::identity(2)) - 2.0).abs() < 1e-15);
        let half = bloch_to_obs([0.6, 0.0, 0.8]).scale(0.5);
        assert!((trace_norm(&half) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn trace_norm_of_non_hermitian_uses_singular_values() {
        // [[0, 2], [0, 0]] has singular values 2 and 0.
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(2.0, 0.0);
        assert!((trace_norm(&m) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_dominates_sampled_observables() {
        // Oracle: tr(AG) over sampled -I <= A <= I never exceeds ||G||_1,
        // and the sign observable attains it.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = random_hermitian(2, &mut rng);
            let tn = trace_norm(&g);
            let mut best = f64::NEG_INFINITY;
            for _ in 0..2000 {
                let w: f64 = rng.random_range(-1.0..1.0);
                let r = 1.0 - w.abs();
                let d: [f64; 3] =
                    [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
                let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                let a =
                    &ComplexMatrix::identity(2).scale(w) + &bloch_to_obs([r * d[0] / n, r * d[1] / n, r * d[2] / n]);
                best = best.max((&a * &g).trace().re);
            }
            assert!(best <= tn + 1e-12);
            let e = herm_eig(&g).unwrap();
            let sign_obs = e.reconstruct_with(|l| if l >= 0.0 { 1.0 } else { -1.0 });
            assert!(((&sign_obs * &g).trace().re - tn).abs() < 1e-12);
            assert!(tn >= g.trace().norm() - 1e-14);
        }
    }

    #[test]
    fn trace_norm_is_unitarily_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in [2, 4] {
            let g =
                ComplexMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let u = herm_eig(&random_hermitian(n, &mut rng)).unwrap().vectors;
            assert!((trace_norm(&g.conjugate_by(&u)) - trace_norm(&g)).abs() < 1e-10);
        }
    }
}
