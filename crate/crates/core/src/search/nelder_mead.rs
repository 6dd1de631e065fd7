use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nelder-Mead coefficients and stopping rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NMParams {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Stop once both the value spread and the vertex spread (max-norm) fall below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Offset of the initial simplex vertices along each coordinate.
    pub initial_step: f64,
}

impl Default for NMParams {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            tolerance: 1e-8,
            max_iterations: 5000,
            initial_step: 0.25,
        }
    }
}

impl NMParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.reflection > 0.0
            && self.expansion > 1.0
            && self.contraction > 0.0
            && self.contraction < 1.0
            && self.shrink > 0.0
            && self.shrink < 1.0
            && self.tolerance >= 0.0
            && self.initial_step != 0.0
            && self.initial_step.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("invalid Nelder-Mead parameters {self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NMResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Maximizes `objective` starting from a simplex around `x0`.
///
/// NaN values count as `-inf`. The returned point is the best one ever
/// evaluated, so the result is never worse than `objective(x0)`.
pub fn nelder_mead(objective: impl Fn(&[f64]) -> f64, x0: &[f64], params: &NMParams) -> NMResult {
    let n = x0.len();
    let mut evaluations = 0;
    let mut best: (Vec<f64>, f64) = (x0.to_vec(), f64::INFINITY);
    // Minimize g = -f.
    let mut g = |x: &[f64], best: &mut (Vec<f64>, f64)| {
        evaluations += 1;
        let v = -objective(x);
        let v = if v.is_nan() { f64::INFINITY } else { v };
        if v < best.1 {
            *best = (x.to_vec(), v);
        }
        v
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), g(x0, &mut best)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += params.initial_step;
        let v = g(&x, &mut best);
        simplex.push((x, v));
    }

    let mut iterations = 0;
    while iterations < params.max_iterations && n > 0 {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if spread(&simplex) <= params.tolerance {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> =
            (0..n).map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64).collect();
        let along =
            |t: f64, from: &[f64]| -> Vec<f64> { centroid.iter().zip(from).map(|(c, w)| c + t * (c - w)).collect() };
        let worst = simplex[n].0.clone();
        let (g_best, g_second, g_worst) = (simplex[0].1, simplex[n - 1].1, simplex[n].1);

        let xr = along(params.reflection, &worst);
        let gr = g(&xr, &mut best);
        if gr < g_best {
            let xe = along(params.reflection * params.expansion, &worst);
            let ge = g(&xe, &mut best);
            simplex[n] = if ge < gr { (xe, ge) } else { (xr, gr) };
            continue;
        }
        if gr < g_second {
            simplex[n] = (xr, gr);
            continue;
        }
        let (xc, gc, accept) = if gr < g_worst {
            let xc = along(params.reflection * params.contraction, &worst);
            let gc = g(&xc, &mut best);
            (xc, gc, gc <= gr)
        } else {
            let xc = along(-params.contraction, &worst);
            let gc = g(&xc, &mut best);
            (xc, gc, gc < g_worst)
        };
        if accept {
            simplex[n] = (xc, gc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = anchor.iter().zip(&vertex.0).map(|(a, v)| a + params.shrink * (v - a)).collect();
            let v = g(&x, &mut best);
            *vertex = (x, v);
        }
    }

    NMResult { x: best.0, value: -best.1, iterations, evaluations }
}

fn spread(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let (x0, g0) = &simplex[0];
    simplex[1..]
        .iter()
        .map(|(x, g)| {
            let dx = x.iter().zip(x0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let dg = if g.is_finite() && g0.is_finite() { (g - g0).abs() } else { f64::INFINITY };
            dx.max(dg)
        })
        .fold(0.0, f64::max)
}
