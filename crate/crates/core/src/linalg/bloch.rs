//! Conversions between qubit operators and Bloch vectors.

use super::matrix::{ComplexMatrix, C64};

pub type Vec3 = [f64; 3];

/// Pauli matrix by index: 0 = identity, 1 = x, 2 = y, 3 = z.
pub fn pauli(i: usize) -> ComplexMatrix {
    let (o, z, p, m) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0));
    let d = match i {
        0 => vec![o, z, z, o],
        1 => vec![z, o, o, z],
        2 => vec![z, m, p, z],
        3 => vec![o, z, z, -o],
        _ => panic!("Pauli index {i} out of range"),
    };
    ComplexMatrix::new(2, 2, d).unwrap()
}

/// `r · σ`.
pub fn bloch_to_obs(r: Vec3) -> ComplexMatrix {
    let (x, y, z) = (r[0], r[1], r[2]);
    ComplexMatrix::new(2, 2, vec![C64::new(z, 0.0), C64::new(x, -y), C64::new(x, y), C64::new(-z, 0.0)]).unwrap()
}

/// Inverse of [`bloch_to_obs`]: `r_i = tr(O σ_i) / 2`.
pub fn obs_to_bloch(o: &ComplexMatrix) -> Vec3 {
    [(o[(0, 1)] + o[(1, 0)]).re / 2.0, (o[(1, 0)] - o[(0, 1)]).im / 2.0, (o[(0, 0)] - o[(1, 1)]).re / 2.0]
}

/// Coordinates `(tr X, tr Xσ_x, tr Xσ_y, tr Xσ_z)` of a Hermitian 2x2 matrix.
pub fn hermitian_coords(x: &ComplexMatrix) -> [f64; 4] {
    let b = obs_to_bloch(x);
    [x.trace().re, 2.0 * b[0], 2.0 * b[1], 2.0 * b[2]]
}

/// Inverse of [`hermitian_coords`].
pub fn from_hermitian_coords(c: [f64; 4]) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2).scale(c[0] / 2.0);
    &id + &bloch_to_obs([c[1] / 2.0, c[2] / 2.0, c[3] / 2.0])
}

/// Qubit state `(I + r·σ)/2`.
pub fn qubit_state(r: Vec3) -> ComplexMatrix {
    from_hermitian_coords([1.0, r[0], r[1], r[2]])
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn normalized(a: Vec3) -> Vec3 {
    scale(a, 1.0 / norm(a))
}
