use std::collections::HashMap;

use serde::Serialize;

use crate::linalg::bloch::{self, Vec3};
use crate::steering::icosahedron_directions;

/// Largest supported subdivision level (10242 vertices).
pub const MAX_LEVEL: usize = 5;

/// Geodesic polyhedron inscribed in the unit sphere.
///
/// Level 0 is the icosahedron; each further level splits every triangle into
/// four through renormalized edge midpoints. Vertices come in antipodal
/// pairs, and `eta` is a lower bound on the radius of the largest ball
/// centred at the origin inside the convex hull.
#[derive(Debug, Clone, Serialize)]
pub struct SpherePolytope {
    level: usize,
    vertices: Vec<Vec3>,
    #[serde(skip)]
    faces: Vec<[usize; 3]>,
    eta: f64,
}

impl SpherePolytope {
    pub fn new(level: usize) -> Self {
        assert!(level <= MAX_LEVEL, "polytope level {level} exceeds {MAX_LEVEL}");
        let (mut vertices, mut faces) = icosahedron();
        for _ in 0..level {
            (vertices, faces) = subdivide(&vertices, &faces);
        }
        let eta = faces.iter().map(|f| plane_distance(&vertices, f)).fold(f64::INFINITY, f64::min) - 1e-12;
        Self { level, vertices, faces, eta }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// One vertex from each antipodal pair, in vertex order.
    pub fn directions(&self) -> Vec<Vec3> {
        let mut out: Vec<Vec3> = Vec::with_capacity(self.vertices.len() / 2);
        for &v in &self.vertices {
            if !out.iter().any(|&u| bloch::norm(bloch::add(u, v)) < 1e-9) {
                out.push(v);
            }
        }
        out
    }
}

/// Vertices ordered `b_1, -b_1, b_2, -b_2, ...` and the 20 triangular faces.
fn icosahedron() -> (Vec<Vec3>, Vec<[usize; 3]>) {
    let vertices: Vec<Vec3> = icosahedron_directions().iter().flat_map(|&b| [b, bloch::scale(b, -1.0)]).collect();
    // Edges join vertices at dot product 1/√5; faces are mutually adjacent triples.
    let edge = 1.0 / 5f64.sqrt();
    let adjacent = |i: usize, j: usize| (bloch::dot(vertices[i], vertices[j]) - edge).abs() < 1e-9;
    let mut faces = Vec::with_capacity(20);
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    faces.push([i, j, k]);
                }
            }
        }
    }
    debug_assert_eq!(faces.len(), 20);
    (vertices, faces)
}

fn subdivide(vertices: &[Vec3], faces: &[[usize; 3]]) -> (Vec<Vec3>, Vec<[usize; 3]>) {
    let mut out = vertices.to_vec();
    let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
    let mut midpoint = |a: usize, b: usize, out: &mut Vec<Vec3>| {
        *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
            out.push(bloch::normalized(bloch::add(vertices[a], vertices[b])));
            out.len() - 1
        })
    };
    let mut new_faces = Vec::with_capacity(faces.len() * 4);
    for &[a, b, c] in faces {
        let ab = midpoint(a, b, &mut out);
        let bc = midpoint(b, c, &mut out);
        let ca = midpoint(c, a, &mut out);
        new_faces.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
    }
    (out, new_faces)
}

/// Distance from the origin to the plane through a face.
///
/// The faces tile the sphere radially, so the surface they form is
/// star-shaped about the origin and the smallest plane distance bounds the
/// inradius of the hull from below.
fn plane_distance(vertices: &[Vec3], face: &[usize; 3]) -> f64 {
    let [a, b, c] = face.map(|i| vertices[i]);
    let n = bloch::normalized(bloch::cross(bloch::sub(b, a), bloch::sub(c, a)));
    bloch::dot(n, a).abs()
}
