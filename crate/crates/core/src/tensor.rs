//! The adjacency tensor of a uniform hypergraph, applied edge-wise.
//!
//! Entry `h[i1..im]` is `1/(m-1)!` whenever `{i1..im}` is an edge. The tensor
//! is never materialised: each of the `(m-1)!` orderings of an edge's tail
//! cancels the weight, so `(T x^{m-1})_i` is the sum over edges containing `i`
//! of the product of the other coordinates.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

#[derive(Debug, Clone, Copy)]
pub struct AdjacencyTensor<'a> {
    base: &'a UniformHypergraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusMethod {
    PowerIteration,
    DegreeBound,
}

/// Certified enclosure `lower <= rho <= upper` of the spectral radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRadiusEstimate {
    pub lower: f64,
    pub upper: f64,
    pub method: RadiusMethod,
}

impl SpectralRadiusEstimate {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, rho: f64) -> bool {
        self.lower <= rho && rho <= self.upper
    }
}

/// Knobs for [`AdjacencyTensor::spectral_radius`].
#[derive(Debug, Clone, Copy)]
pub struct PowerIterationConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub shift: f64,
}

impl Default for PowerIterationConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 10_000,
            shift: 1.0,
        }
    }
}

impl<'a> AdjacencyTensor<'a> {
    pub fn new(base: &'a UniformHypergraph) -> Self {
        Self { base }
    }

    pub fn hypergraph(&self) -> &'a UniformHypergraph {
        self.base
    }

    pub fn order(&self) -> usize {
        self.base.uniformity()
    }

    pub fn dimension(&self) -> usize {
        self.base.vertex_count()
    }

    /// Count of nonzero entries, `|E| * m!`.
    pub fn nnz(&self) -> u128 {
        let m = self.order() as u128;
        (1..=m).product::<u128>() * self.base.edge_count() as u128
    }

    /// Entry lookup by index tuple (0-based). Intended for checks, not hot
    /// loops.
    pub fn entry(&self, index: &[usize]) -> f64 {
        let m = self.order();
        if index.len() != m {
            return 0.0;
        }
        let mut sorted = index.to_vec();
        sorted.sort_unstable();
        if self.base.edges().binary_search(&sorted).is_ok() {
            1.0 / (1..m).map(|x| x as f64).product::<f64>()
        } else {
            0.0
        }
    }

    /// `T x^{m-1}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.dimension();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let mut out = vec![0.0; n];
        for e in self.base.edges() {
            for (pos, &i) in e.iter().enumerate() {
                let prod: f64 = e
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != pos)
                    .map(|(_, &v)| x[v])
                    .product();
                out[i] += prod;
            }
        }
        Ok(out)
    }

    /// Spectral radius enclosure by shifted power iteration per connected
    /// component, with Collatz-Wielandt ratios as the bracket.
    pub fn spectral_radius(&self, cfg: PowerIterationConfig) -> Result<SpectralRadiusEstimate> {
        if !(cfg.tol > 0.0) {
            return Err(Error::InvalidParameter("tolerance must be positive"));
        }
        let h = self.base;
        if h.is_empty() {
            return Ok(SpectralRadiusEstimate {
                lower: 0.0,
                upper: 0.0,
                method: RadiusMethod::PowerIteration,
            });
        }
        let mut lower: f64 = 0.0;
        let mut upper: f64 = 0.0;
        for comp in h.components() {
            if comp.len() < h.uniformity() {
                continue;
            }
            let sub = h.induced(&comp);
            match power_iteration(&sub, cfg) {
                Some((lo, hi)) => {
                    lower = lower.max(lo);
                    upper = upper.max(hi);
                }
                None => {
                    return Ok(SpectralRadiusEstimate {
                        lower: 0.0,
                        upper: rho_upper_degree(h),
                        method: RadiusMethod::DegreeBound,
                    })
                }
            }
        }
        Ok(SpectralRadiusEstimate {
            lower,
            upper: upper.min(rho_upper_degree(h)),
            method: RadiusMethod::PowerIteration,
        })
    }
}

/// Maximum vertex degree, which dominates the spectral radius (row sums).
pub fn rho_upper_degree(h: &UniformHypergraph) -> f64 {
    h.degrees().max() as f64
}

/// Returns `(lower, upper)` on convergence. `h` must be connected.
fn power_iteration(h: &UniformHypergraph, cfg: PowerIterationConfig) -> Option<(f64, f64)> {
    let tensor = AdjacencyTensor::new(h);
    let n = h.vertex_count();
    let m1 = (h.uniformity() - 1) as i32;
    let inv = 1.0 / m1 as f64;
    let shift = cfg.shift;
    let mut x = vec![1.0; n];
    let mut best = (0.0f64, f64::INFINITY);
    for _ in 0..cfg.max_iter {
        let tx = tensor.apply(&x).ok()?;
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        let mut y = Vec::with_capacity(n);
        for (t, xi) in tx.iter().zip(&x) {
            let xp = Float::powi(*xi, m1);
            let bx = t + shift * xp;
            let ratio = bx / xp;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
            y.push(Float::powf(bx, inv));
        }
        best.0 = best.0.max(lo - shift);
        best.1 = best.1.min(hi - shift);
        if best.1 - best.0 <= cfg.tol * best.1.max(f64::MIN_POSITIVE) {
            let pad = 8.0 * f64::EPSILON * (1.0 + best.1 + shift);
            return Some(((best.0 - pad).max(0.0), best.1 + pad));
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        if !(norm > 0.0) || !norm.is_finite() {
            return None;
        }
        x = y.into_iter().map(|v| v / norm).collect();
    }
    None
}
