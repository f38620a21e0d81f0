//! Exact d-th order traces of adjacency tensors.
//!
//! The trace is defined by applying, for each composition `d_1 + .. + d_n = d`,
//! the operators `(sum_y h_{iy} d/da_{iy})^{d_i} / (d_i (m-1))!` to
//! `tr(A^{d(m-1)})` for an auxiliary matrix `A`, and scaling by
//! `(m-1)^(n-1)`. Every monomial of `tr(A^N)` is a closed walk, so the result
//! is a weighted count of closed walks whose arc multiset is prescribed by the
//! chosen tensor entries.
//!
//! Evaluation used here:
//!
//! * The operator for vertex `i` picks `d_i` entries rooted at `i`. An entry
//!   is nonzero only when its indices form an edge `e` containing `i`, and the
//!   `(m-1)!` orderings of `e \ {i}` cancel the entry weight `1/(m-1)!`. So a
//!   selection is a multiset `M_i` of incident edges, counted
//!   `d_i! / prod_e M_i(e)!` times.
//! * Vertex `i` contributes `M_i(e)` arcs `i -> u` for each `u` in `e \ {i}`.
//!   With `T_e = sum_i M_i(e)`, the resulting multigraph is balanced exactly
//!   when `sum_{e ni v} T_e = m d_v` for every vertex.
//! * The derivative of the monomial gives `prod c_uv!`, which cancels against
//!   the parallel-arc symmetry of the walk count. By the BEST theorem the walks
//!   through `j` number `tau * prod_u (outdeg u - 1)! * outdeg j`, where `tau`
//!   counts spanning arborescences. Outdegree of `u` is `d_u (m-1)`, which
//!   cancels the operator normalisation down to `1 / prod_u d_u (m-1)`.
//!
//! The per-vertex term `mu_d(j)` carries the factor `d_j (m-1)`; summing over
//! `j` gives `d (m-1)` and hence the trace.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_f64, determinant, determinant_i128, factorial, pow};
use crate::hypergraph::UniformHypergraph;

/// Limits on how much enumeration a trace computation may do.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceBudget {
    /// Upper limit on the number of edge-total compositions visited for one
    /// order `d`.
    pub max_selections: f64,
}

impl Default for TraceBudget {
    fn default() -> Self {
        Self {
            max_selections: 1e9,
        }
    }
}

/// Exact traces `Tr_0 ..= Tr_D`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSequence {
    pub m: usize,
    pub n: usize,
    pub values: Vec<BigRational>,
}

impl TraceSequence {
    pub fn max_order(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn get(&self, d: usize) -> Option<&BigRational> {
        self.values.get(d)
    }
}

/// One diagonal term `mu_d(j)` of the trace.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexTraceTerm {
    pub d: usize,
    pub j: usize,
    pub value: BigRational,
}

/// Trace evaluator bound to one hypergraph.
#[derive(Debug, Clone)]
pub struct TraceEngine<'a> {
    h: &'a UniformHypergraph,
    budget: TraceBudget,
    prefactor: BigInt,
    /// Incident edge indices per vertex, ascending.
    incidence: Vec<Vec<usize>>,
    /// Largest edge index containing each vertex.
    last_edge: Vec<Option<usize>>,
}

impl<'a> TraceEngine<'a> {
    pub fn new(h: &'a UniformHypergraph, budget: TraceBudget) -> Self {
        let incidence = h.incidence();
        let last_edge = incidence.iter().map(|inc| inc.last().copied()).collect();
        Self {
            h,
            budget,
            prefactor: pow(h.uniformity() as i64 - 1, h.vertex_count() - 1),
            incidence,
            last_edge,
        }
    }

    pub fn hypergraph(&self) -> &'a UniformHypergraph {
        self.h
    }

    /// Number of edge-total compositions the enumeration for order `d` may
    /// visit.
    pub fn predicted_selections(&self, d: usize) -> f64 {
        let edges = self.h.edge_count();
        if d == 0 || edges == 0 {
            return 1.0;
        }
        binomial_f64(edges + d - 1, d)
    }

    fn check_budget(&self, d: usize) -> Result<()> {
        let predicted = self.predicted_selections(d);
        if predicted > self.budget.max_selections {
            return Err(Error::InstanceTooLarge {
                n: self.h.vertex_count(),
                m: self.h.uniformity(),
                d,
                predicted,
                limit: self.budget.max_selections,
            });
        }
        Ok(())
    }

    /// `Tr_d` of the adjacency tensor.
    pub fn trace(&self, d: usize) -> Result<BigRational> {
        let n = self.h.vertex_count();
        if d == 0 {
            return Ok(BigRational::from(&self.prefactor * BigInt::from(n)));
        }
        if self.h.is_empty() {
            return Ok(BigRational::zero());
        }
        self.check_budget(d)?;
        let m1 = self.h.uniformity() - 1;
        let mut total = BigRational::zero();
        for (profile, sum) in self.walk_sums(d) {
            let denom: BigInt = profile
                .iter()
                .filter(|&&dv| dv > 0)
                .map(|&dv| BigInt::from(dv as usize * m1))
                .product();
            total += BigRational::new(sum * BigInt::from(d * m1), denom);
        }
        Ok(total * BigRational::from(self.prefactor.clone()))
    }

    /// `mu_d(j)` for every vertex `j`.
    pub fn vertex_terms(&self, d: usize) -> Result<Vec<BigRational>> {
        let n = self.h.vertex_count();
        if d == 0 {
            return Ok(vec![BigRational::from(self.prefactor.clone()); n]);
        }
        if self.h.is_empty() {
            return Ok(vec![BigRational::zero(); n]);
        }
        self.check_budget(d)?;
        let sums = self.walk_sums(d);
        let m1 = self.h.uniformity() - 1;
        let mut terms = vec![BigRational::zero(); n];
        for (profile, total) in sums {
            let denom: BigInt = profile
                .iter()
                .filter(|&&dv| dv > 0)
                .map(|&dv| BigInt::from(dv as usize * m1))
                .product();
            let base = BigRational::new(&self.prefactor * total, denom);
            for (term, &dv) in terms.iter_mut().zip(&profile) {
                if dv > 0 {
                    *term += &base * BigInt::from(dv as usize * m1);
                }
            }
        }
        Ok(terms)
    }

    /// `mu_d(j)` for one vertex.
    pub fn vertex_term(&self, d: usize, j: usize) -> Result<BigRational> {
        let n = self.h.vertex_count();
        if j >= n {
            return Err(Error::VertexOutOfRange { vertex: j, n });
        }
        Ok(self.vertex_terms(d)?.swap_remove(j))
    }

    pub fn sequence(&self, max_order: usize) -> Result<TraceSequence> {
        let values = (0..=max_order)
            .map(|d| self.trace(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(TraceSequence {
            m: self.h.uniformity(),
            n: self.h.vertex_count(),
            values,
        })
    }

    /// For each per-vertex order profile `(d_v)`, the sum over selections of
    /// `multinomial * arborescence count`.
    fn walk_sums(&self, d: usize) -> BTreeMap<Vec<u32>, BigInt> {
        let edges = self.h.edge_count();
        let split = edges.min(2);
        let mut prefixes: Vec<Vec<usize>> = Vec::new();
        collect_prefixes(split, d, &mut Vec::new(), &mut prefixes);

        let factorials: Vec<BigInt> = (0..=d).map(factorial).collect();
        let binomials = BinomialTable::new(d);
        let run = |prefix: &Vec<usize>| {
            let mut walker = Walker::new(self, d, &factorials, &binomials);
            walker.run_prefix(prefix);
            walker.acc
        };

        #[cfg(feature = "parallel")]
        let partials: Vec<BTreeMap<Vec<u32>, BigInt>> = {
            use rayon::prelude::*;
            prefixes.par_iter().map(run).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let partials: Vec<BTreeMap<Vec<u32>, BigInt>> = prefixes.iter().map(run).collect();

        let mut merged: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for part in partials {
            for (k, v) in part {
                *merged.entry(k).or_insert_with(BigInt::zero) += v;
            }
        }
        merged
    }
}

fn collect_prefixes(len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for t in 0..=left {
        cur.push(t);
        collect_prefixes(len, left - t, cur, out);
        cur.pop();
    }
}

/// `C(a, b)` for `a <= d` in `u128`, `None` where it overflows.
struct BinomialTable {
    size: usize,
    values: Vec<Option<u128>>,
}

impl BinomialTable {
    fn new(d: usize) -> Self {
        let size = d + 1;
        let mut values: Vec<Option<u128>> = vec![None; size * size];
        for a in 0..size {
            values[a * size] = Some(1);
            for b in 1..=a {
                let above = values[(a - 1) * size + b - 1];
                let left = if b < a {
                    values[(a - 1) * size + b]
                } else {
                    Some(0)
                };
                values[a * size + b] = match (above, left) {
                    (Some(x), Some(y)) => x.checked_add(y),
                    _ => None,
                };
            }
        }
        Self { size, values }
    }

    fn get(&self, a: usize, b: usize) -> Option<u128> {
        self.values[a * self.size + b]
    }
}

/// Sum of `multinomial * tau` over the leaves of one edge-total assignment,
/// kept in `u128` until it overflows.
struct LeafSum {
    small: u128,
    big: BigInt,
}

impl LeafSum {
    fn new() -> Self {
        Self {
            small: 0,
            big: BigInt::zero(),
        }
    }

    fn add_small(&mut self, v: u128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += BigInt::from(self.small);
                self.small = v;
            }
        }
    }

    fn total(self) -> BigInt {
        self.big + BigInt::from(self.small)
    }
}

/// Depth-first enumeration state for one order `d`.
struct Walker<'e, 'a> {
    factorials: &'e [BigInt],
    binomials: &'e BinomialTable,
    engine: &'e TraceEngine<'a>,
    m: usize,
    d: usize,
    /// Edge totals `T_e`.
    totals: Vec<usize>,
    /// `sum_{e ni v} T_e` over edges assigned so far.
    load: Vec<usize>,
    /// Per-vertex order `d_v` once fixed.
    order: Vec<usize>,
    /// Orders still to be distributed per vertex.
    remaining: Vec<usize>,
    /// `M_v(e)`, indexed by edge then position within the edge.
    split: Vec<Vec<usize>>,
    leaf_sum: LeafSum,
    /// Scratch for the leaf: support index per vertex and Laplacian minor.
    index: Vec<usize>,
    minor: Vec<i64>,
    acc: BTreeMap<Vec<u32>, BigInt>,
}

impl<'e, 'a> Walker<'e, 'a> {
    fn new(
        engine: &'e TraceEngine<'a>,
        d: usize,
        factorials: &'e [BigInt],
        binomials: &'e BinomialTable,
    ) -> Self {
        let h = engine.h;
        let n = h.vertex_count();
        let m = h.uniformity();
        Self {
            engine,
            m,
            d,
            totals: vec![0; h.edge_count()],
            load: vec![0; n],
            order: vec![0; n],
            remaining: vec![0; n],
            split: vec![vec![0; m]; h.edge_count()],
            factorials,
            binomials,
            leaf_sum: LeafSum::new(),
            index: vec![usize::MAX; n],
            minor: Vec::new(),
            acc: BTreeMap::new(),
        }
    }

    fn run_prefix(&mut self, prefix: &[usize]) {
        let mut used = 0;
        for (e, &t) in prefix.iter().enumerate() {
            if !self.assign_total(e, t) {
                return;
            }
            used += t;
        }
        if used > self.d {
            return;
        }
        self.totals_from(prefix.len(), self.d - used);
    }

    /// Sets `T_e = t` and checks divisibility for vertices whose last edge is
    /// `e`. Loads are left applied; callers undo with `unassign_total`.
    fn assign_total(&mut self, e: usize, t: usize) -> bool {
        let edges = self.engine.h.edges();
        self.totals[e] = t;
        let mut ok = true;
        for &v in &edges[e] {
            self.load[v] += t;
            if self.engine.last_edge[v] == Some(e) && !self.load[v].is_multiple_of(self.m) {
                ok = false;
            }
        }
        ok
    }

    fn unassign_total(&mut self, e: usize) {
        let t = self.totals[e];
        for &v in &self.engine.h.edges()[e] {
            self.load[v] -= t;
        }
        self.totals[e] = 0;
    }

    fn totals_from(&mut self, e: usize, left: usize) {
        let edges = self.totals.len();
        if e == edges {
            if left == 0 {
                self.distribute_all();
            }
            return;
        }
        let range = if e + 1 == edges {
            left..=left
        } else {
            0..=left
        };
        for t in range {
            if self.assign_total(e, t) {
                self.totals_from(e + 1, left - t);
            }
            self.unassign_total(e);
        }
    }

    fn distribute_all(&mut self) {
        let n = self.order.len();
        for v in 0..n {
            self.order[v] = self.load[v] / self.m;
            self.remaining[v] = self.order[v];
        }
        self.leaf_sum = LeafSum::new();
        self.distribute(0, 0, self.totals.first().copied().unwrap_or(0), Some(1));
        let sum = core::mem::replace(&mut self.leaf_sum, LeafSum::new()).total();
        if !sum.is_zero() {
            let key: Vec<u32> = self.order.iter().map(|&x| x as u32).collect();
            *self.acc.entry(key).or_insert_with(BigInt::zero) += sum;
        }
    }

    /// Capacity of edges after `e` that contain `v`.
    fn capacity_after(&self, v: usize, e: usize) -> usize {
        self.engine.incidence[v]
            .iter()
            .filter(|&&f| f > e)
            .map(|&f| self.totals[f])
            .sum()
    }

    /// Chooses `M_v(e)` edge by edge. `coef` is the running product of
    /// `C(remaining_v, take)`, which ends as `prod_v d_v! / prod M_v(e)!`;
    /// `None` once it no longer fits in `u128`.
    fn distribute(&mut self, e: usize, pos: usize, left: usize, coef: Option<u128>) {
        let edges = self.totals.len();
        if e == edges {
            self.leaf(coef);
            return;
        }
        if pos == self.m {
            if left != 0 {
                return;
            }
            let next = if e + 1 < edges { self.totals[e + 1] } else { 0 };
            self.distribute(e + 1, 0, next, coef);
            return;
        }
        let v = self.engine.h.edges()[e][pos];
        let rem = self.remaining[v];
        let cap = self.capacity_after(v, e);
        let lo = rem.saturating_sub(cap);
        let hi = rem.min(left);
        if lo > hi {
            return;
        }
        let (lo, hi) = if pos + 1 == self.m {
            if left < lo || left > hi {
                return;
            }
            (left, left)
        } else {
            (lo, hi)
        };
        for take in lo..=hi {
            let next = coef.and_then(|c| c.checked_mul(self.binomials.get(rem, take)?));
            self.split[e][pos] = take;
            self.remaining[v] -= take;
            self.distribute(e, pos + 1, left - take, next);
            self.remaining[v] += take;
        }
        self.split[e][pos] = 0;
    }

    fn leaf(&mut self, coef: Option<u128>) {
        let h = self.engine.h;
        let n = h.vertex_count();
        let m1 = self.m - 1;

        // Support vertices in order; the first is dropped as the root.
        let mut s = 0;
        for v in 0..n {
            self.index[v] = if self.order[v] > 0 {
                s += 1;
                s - 1
            } else {
                usize::MAX
            };
        }
        let r = s - 1;
        self.minor.clear();
        self.minor.resize(r * r, 0);
        for v in 0..n {
            let i = self.index[v];
            if i != usize::MAX && i > 0 {
                self.minor[(i - 1) * r + i - 1] = (self.order[v] * m1) as i64;
            }
        }
        for (e, edge) in h.edges().iter().enumerate() {
            for (pos, &v) in edge.iter().enumerate() {
                let c = self.split[e][pos] as i64;
                let row = self.index[v];
                if c == 0 || row == 0 {
                    continue;
                }
                for &u in edge {
                    let col = self.index[u];
                    if u != v && col > 0 {
                        self.minor[(row - 1) * r + col - 1] -= c;
                    }
                }
            }
        }

        let small = match (coef, determinant_i128(r, &self.minor)) {
            (_, Some(0)) => return,
            (Some(c), Some(tau)) => u128::try_from(tau).ok().and_then(|t| c.checked_mul(t)),
            _ => None,
        };
        match small {
            Some(v) => self.leaf_sum.add_small(v),
            None => {
                let tau = determinant(r, &self.minor);
                let coefficient = self.multinomial_big();
                self.leaf_sum.big += coefficient * tau;
            }
        }
    }

    /// `prod_v d_v! / prod_{v,e} M_v(e)!` in big integers.
    fn multinomial_big(&self) -> BigInt {
        let mut coefficient = BigInt::one();
        for &dv in &self.order {
            coefficient *= &self.factorials[dv];
        }
        for split in &self.split {
            for &c in split {
                coefficient /= &self.factorials[c];
            }
        }
        coefficient
    }
}

/// `Tr_d` of the adjacency tensor of `h`.
pub fn trace_d(h: &UniformHypergraph, d: usize, budget: TraceBudget) -> Result<BigRational> {
    TraceEngine::new(h, budget).trace(d)
}

/// `Tr_0 ..= Tr_D`.
pub fn trace_sequence(
    h: &UniformHypergraph,
    max_order: usize,
    budget: TraceBudget,
) -> Result<TraceSequence> {
    TraceEngine::new(h, budget).sequence(max_order)
}

/// `mu_d(j)` with `j` 0-based.
pub fn vertex_trace_term(
    h: &UniformHypergraph,
    d: usize,
    j: usize,
    budget: TraceBudget,
) -> Result<VertexTraceTerm> {
    let value = TraceEngine::new(h, budget).vertex_term(d, j)?;
    Ok(VertexTraceTerm { d, j, value })
}

/// `m^(m-1) (m-1)^(n-m) |E|`, the order-`m` trace, exact. Zero when there
/// are no edges.
pub fn order_m_trace_formula(h: &UniformHypergraph) -> BigRational {
    let m = h.uniformity();
    let n = h.vertex_count();
    if h.is_empty() {
        return BigRational::zero();
    }
    let value = pow(m as i64, m - 1) * pow(m as i64 - 1, n - m) * BigInt::from(h.edge_count());
    BigRational::from(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{gen_empty, gen_hyperpath, gen_hyperstar};

    fn int(v: i64) -> BigRational {
        BigRational::from(BigInt::from(v))
    }

    fn seq(h: &UniformHypergraph, max: usize) -> Vec<BigRational> {
        trace_sequence(h, max, TraceBudget::default())
            .unwrap()
            .values
    }

    #[test]
    fn single_edge() {
        let e = gen_hyperstar(3, 1).unwrap();
        let expect: Vec<_> = [12, 0, 0, 9, 0, 0, 9].into_iter().map(int).collect();
        assert_eq!(seq(&e, 6), expect);
    }

    #[test]
    fn empty_hypergraph() {
        let e = gen_empty(3, 3).unwrap();
        let expect: Vec<_> = [12, 0, 0, 0, 0, 0].into_iter().map(int).collect();
        assert_eq!(seq(&e, 5), expect);
    }

    #[test]
    fn hyperstar_two_edges() {
        let s = gen_hyperstar(3, 2).unwrap();
        let expect: Vec<_> = [80, 0, 0, 72].into_iter().map(int).collect();
        assert_eq!(seq(&s, 3), expect);
    }

    #[test]
    fn vertex_terms() {
        let e = gen_hyperstar(3, 1).unwrap();
        let b = TraceBudget::default();
        assert_eq!(vertex_trace_term(&e, 3, 0, b).unwrap().value, int(3));
        assert_eq!(vertex_trace_term(&e, 0, 0, b).unwrap().value, int(4));
        let empty = gen_empty(3, 3).unwrap();
        assert_eq!(vertex_trace_term(&empty, 1, 0, b).unwrap().value, int(0));
        assert!(vertex_trace_term(&e, 1, 3, b).is_err());
    }

    #[test]
    fn order_m_formula_matches() {
        for h in [
            gen_hyperstar(3, 1).unwrap(),
            gen_hyperstar(3, 2).unwrap(),
            gen_hyperpath(3, 3).unwrap(),
            gen_hyperpath(4, 2).unwrap(),
            gen_hyperstar(2, 3).unwrap(),
        ] {
            let m = h.uniformity();
            let t = trace_d(&h, m, TraceBudget::default()).unwrap();
            assert_eq!(t, order_m_trace_formula(&h));
        }
    }

    #[test]
    fn guard_reports_instance() {
        let p = gen_hyperpath(3, 4).unwrap();
        let tight = TraceBudget {
            max_selections: 10.0,
        };
        match trace_d(&p, 6, tight) {
            Err(Error::InstanceTooLarge { n, m, d, .. }) => assert_eq!((n, m, d), (9, 3, 6)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
