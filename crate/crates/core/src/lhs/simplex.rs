//! Phase-one revised simplex over implicitly generated columns.
//!
//! Solves `min 1ᵀs` subject to `A w + s = b`, `w, s ≥ 0`, where the columns
//! of `A` are produced on demand by a pricing oracle. Artificial variables
//! that leave the basis are never readmitted.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 100_000;
const REFACTOR_EVERY: usize = 50;
const PIVOT_TOL: f64 = 1e-9;
const PRICING_TOL: f64 = 1e-11;
/// Degenerate pivots tolerated before switching to first-improving pricing.
const STALL_LIMIT: usize = 40;

pub(crate) trait ColumnOracle {
    type Key: Copy + Eq + Hash;

    /// Column maximizing `y·a` and that value.
    fn price_best(&self, y: &[f64]) -> (Self::Key, f64);

    /// First column in a fixed enumeration order with `y·a > tol`.
    fn price_first(&self, y: &[f64], tol: f64) -> Option<(Self::Key, f64)>;

    fn column(&self, key: Self::Key) -> Vec<f64>;
}

#[derive(Debug, Clone)]
pub(crate) struct PhaseOne<K> {
    /// Positive structural weights at termination.
    pub weights: Vec<(K, f64)>,
    /// Sum of the remaining artificial variables.
    pub infeasibility: f64,
    /// Simplex multipliers `y`, with `y·a ≤ tol` for every column and
    /// `y·b = infeasibility` at optimality.
    pub duals: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Var {
    Artificial(usize),
    Column(usize),
}

struct State<K> {
    n: usize,
    sign: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<Var>,
    pool: Vec<(K, Vec<f64>)>,
    binv: Vec<f64>,
    x: Vec<f64>,
}

impl<K: Copy + Eq + Hash> State<K> {
    fn basis_column(&self, v: Var) -> Vec<f64> {
        match v {
            Var::Artificial(i) => {
                let mut e = vec![0.0; self.n];
                e[i] = 1.0;
                e
            }
            Var::Column(j) => self.pool[j].1.clone(),
        }
    }

    fn cost(v: Var) -> f64 {
        matches!(v, Var::Artificial(_)) as u8 as f64
    }

    fn objective(&self) -> f64 {
        self.basis.iter().zip(&self.x).map(|(&v, &x)| Self::cost(v) * x).sum()
    }

    /// Multipliers in the caller's row signs.
    fn duals(&self) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|j| {
                let y: f64 = (0..n).map(|i| Self::cost(self.basis[i]) * self.binv[i * n + j]).sum();
                y * self.sign[j]
            })
            .collect()
    }

    fn refactor(&mut self) -> Result<()> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for (c, &v) in self.basis.iter().enumerate() {
            for (r, val) in self.basis_column(v).into_iter().enumerate() {
                a[r * n + c] = val;
            }
        }
        self.binv = invert(a, n)?;
        self.x = (0..n).map(|i| (0..n).map(|j| self.binv[i * n + j] * self.rhs[j]).sum::<f64>().max(0.0)).collect();
        Ok(())
    }

    fn pivot(&mut self, r: usize, d: &[f64], entering: Var) {
        let n = self.n;
        let p = d[r];
        for j in 0..n {
            self.binv[r * n + j] /= p;
        }
        self.x[r] /= p;
        for (i, &f) in d.iter().enumerate() {
            if i == r || f == 0.0 {
                continue;
            }
            for j in 0..n {
                self.binv[i * n + j] -= f * self.binv[r * n + j];
            }
            self.x[i] = (self.x[i] - f * self.x[r]).max(0.0);
        }
        self.basis[r] = entering;
    }
}

pub(crate) fn phase_one<O: ColumnOracle>(oracle: &O, b: &[f64]) -> Result<PhaseOne<O::Key>> {
    let n = b.len();
    let sign: Vec<f64> = b.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
    let rhs: Vec<f64> = b.iter().zip(&sign).map(|(v, s)| v * s).collect();
    let mut binv = vec![0.0; n * n];
    for i in 0..n {
        binv[i * n + i] = 1.0;
    }
    let mut st =
        State { n, sign, x: rhs.clone(), rhs, basis: (0..n).map(Var::Artificial).collect(), pool: Vec::new(), binv };
    let mut index: HashMap<O::Key, usize> = HashMap::new();
    let mut best = f64::INFINITY;
    let mut stall = 0;

    for iter in 0..MAX_ITERATIONS {
        if iter > 0 && iter % REFACTOR_EVERY == 0 {
            st.refactor()?;
        }
        let objective = st.objective();
        if objective <= f64::EPSILON {
            return finish(st);
        }
        if objective < best - 1e-13 {
            best = objective;
            stall = 0;
        } else {
            stall += 1;
        }

        let y = st.duals();
        let tol = PRICING_TOL * y.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let choice = if stall > STALL_LIMIT {
            oracle.price_first(&y, tol)
        } else {
            Some(oracle.price_best(&y)).filter(|&(_, v)| v > tol)
        };
        let Some((key, _)) = choice else {
            return finish(st);
        };

        let j = *index.entry(key).or_insert_with(|| {
            let col: Vec<f64> = oracle.column(key).iter().zip(&st.sign).map(|(a, s)| a * s).collect();
            st.pool.push((key, col));
            st.pool.len() - 1
        });
        let a = &st.pool[j].1;
        let d: Vec<f64> = (0..n).map(|i| (0..n).map(|k| st.binv[i * n + k] * a[k]).sum()).collect();

        let bland = stall > STALL_LIMIT;
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..n {
            if d[i] <= PIVOT_TOL {
                continue;
            }
            let ratio = st.x[i] / d[i];
            let better = match leave {
                None => true,
                Some((r, best_ratio)) => {
                    if ratio < best_ratio - 1e-12 {
                        true
                    } else if ratio > best_ratio + 1e-12 {
                        false
                    } else if bland {
                        var_order(st.basis[i], n) < var_order(st.basis[r], n)
                    } else {
                        let (ai, ar) = (is_artificial(st.basis[i]), is_artificial(st.basis[r]));
                        (ai && !ar) || (ai == ar && d[i] > d[r])
                    }
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::LpFailure("no pivot row for an improving column".into()));
        };
        st.pivot(r, &d, Var::Column(j));
    }
    Err(Error::LpFailure(format!("iteration limit {MAX_ITERATIONS} reached")))
}

fn is_artificial(v: Var) -> bool {
    matches!(v, Var::Artificial(_))
}

fn var_order(v: Var, n: usize) -> usize {
    match v {
        Var::Artificial(i) => i,
        Var::Column(j) => n + j,
    }
}

fn finish<K: Copy + Eq + Hash>(mut st: State<K>) -> Result<PhaseOne<K>> {
    st.refactor()?;
    let weights = st
        .basis
        .iter()
        .zip(&st.x)
        .filter_map(|(&v, &x)| match v {
            Var::Column(j) if x > 0.0 => Some((st.pool[j].0, x)),
            _ => None,
        })
        .collect();
    Ok(PhaseOne { weights, infeasibility: st.objective(), duals: st.duals() })
}

/// Gauss-Jordan inverse with partial pivoting of a row-major `n x n` matrix.
fn invert(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i * n + c].abs().total_cmp(&a[j * n + c].abs())).expect("non-empty range");
        if a[p * n + c].abs() < 1e-13 {
            return Err(Error::LpFailure("singular basis".into()));
        }
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
                inv.swap(p * n + j, c * n + j);
            }
        }
        let piv = a[c * n + c];
        for j in 0..n {
            a[c * n + j] /= piv;
            inv[c * n + j] /= piv;
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = a[i * n + c];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                a[i * n + j] -= f * a[c * n + j];
                inv[i * n + j] -= f * inv[c * n + j];
            }
        }
    }
    Ok(inv)
}
