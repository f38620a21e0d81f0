//! Estrada index `EE(H) = sum_i e^(lambda_i)` over all adjacency-tensor
//! eigenvalues, by four routes, and its spectral bounds.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, pow};
use crate::hypergraph::UniformHypergraph;
use crate::spectrum::{
    hyperstar_multiplicities, spectrum, symmetric_representatives, Spectrum, SpectrumBudget,
};
use crate::tensor::{AdjacencyTensor, PowerIterationConfig, SpectralRadiusEstimate};
use crate::trace::{order_m_trace_formula, TraceBudget, TraceEngine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstradaMethod {
    SpectrumSum,
    TraceSeries,
    SymmetricFormula,
    HyperstarClosedForm,
}

impl EstradaMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            EstradaMethod::SpectrumSum => "spectrum-sum",
            EstradaMethod::TraceSeries => "trace-series",
            EstradaMethod::SymmetricFormula => "symmetric-formula",
            EstradaMethod::HyperstarClosedForm => "hyperstar-closed-form",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstradaResult {
    pub value: f64,
    pub method: EstradaMethod,
    /// Certified for the series; propagated from the root residual for
    /// spectrum sums; zero for closed forms (float rounding aside).
    pub error_bound: f64,
    /// Number of series terms `Tr_0 ..= Tr_D` summed.
    pub terms_used: Option<usize>,
    /// Magnitude of the imaginary part dropped from the sum.
    pub imag_discard: f64,
    /// False when the series stopped at the trace budget before reaching
    /// its target tolerance.
    pub converged: bool,
}

impl EstradaResult {
    fn exact(value: f64, method: EstradaMethod) -> Self {
        Self {
            value,
            method,
            error_bound: 0.0,
            terms_used: None,
            imag_discard: 0.0,
            converged: true,
        }
    }
}

fn check_imaginary(value: f64, imag: f64) -> Result<()> {
    if imag > 1e-8 * value.abs().max(1.0) {
        return Err(Error::ImaginaryResidue { imag, value });
    }
    Ok(())
}

/// Sum of `e^lambda` over a spectrum.
pub fn ee_from_spectrum(s: &Spectrum) -> Result<EstradaResult> {
    let total: Complex64 = s
        .entries
        .iter()
        .map(|e| e.value.exp() * e.multiplicity as f64)
        .sum();
    let imag = Float::abs(total.im);
    check_imaginary(total.re, imag)?;
    let rho = s.spectral_radius();
    Ok(EstradaResult {
        value: total.re,
        method: EstradaMethod::SpectrumSum,
        error_bound: s.k as f64 * Float::exp(rho) * s.residual,
        terms_used: None,
        imag_discard: imag,
        converged: true,
    })
}

/// `ln` of the series tail bound `k rho^(D+1) e^rho / (D+1)!`.
fn log_tail(log_k: f64, rho: f64, terms: usize) -> f64 {
    let log_fact: f64 = (2..=terms).map(|i| Float::ln(i as f64)).sum();
    log_k + terms as f64 * Float::ln(rho) + rho - log_fact
}

/// Truncated `sum_d Tr_d / d!`, stopping once the tail bound
/// `k rho_hat^(D+1) e^(rho_hat) / (D+1)!` is at most `target_tol`.
///
/// If the trace budget refuses some order first, the partial sum is returned
/// with `converged = false` and the tail bound at the point reached.
pub fn ee_trace_series(
    h: &UniformHypergraph,
    target_tol: f64,
    rho_hat: f64,
    budget: TraceBudget,
) -> Result<EstradaResult> {
    if !(target_tol > 0.0) {
        return Err(Error::InvalidParameter("target tolerance must be positive"));
    }
    if !(rho_hat >= 0.0) {
        return Err(Error::InvalidParameter("rho_hat must be nonnegative"));
    }
    let n = h.vertex_count();
    let m = h.uniformity();
    let log_k = Float::ln(n as f64) + (n - 1) as f64 * Float::ln((m - 1) as f64);
    let tail = |terms: usize| -> f64 {
        if rho_hat == 0.0 {
            0.0
        } else {
            Float::exp(log_tail(log_k, rho_hat, terms))
        }
    };
    let mut max_order = 0;
    while tail(max_order + 1) > target_tol {
        max_order += 1;
    }

    let engine = TraceEngine::new(h, budget);
    let mut sum = BigRational::zero();
    let mut reached = 0;
    let mut converged = true;
    for d in 0..=max_order {
        match engine.trace(d) {
            Ok(t) => {
                sum += t / BigRational::from(factorial(d));
                reached = d;
            }
            Err(Error::InstanceTooLarge { .. }) if d > 0 => {
                converged = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(EstradaResult {
        value: sum.to_f64().unwrap_or(f64::NAN),
        method: EstradaMethod::TraceSeries,
        error_bound: tail(reached + 1),
        terms_used: Some(reached + 1),
        imag_discard: 0.0,
        converged,
    })
}

/// Orbit sum `sum_{r=1}^m e^(lambda e^(2 pi i r/m))`, real part, for one
/// representative `lambda = alpha + i beta`.
fn orbit_sum(lambda: Complex64, m: usize) -> f64 {
    let (alpha, beta) = (lambda.re, lambda.im);
    (1..=m)
        .map(|r| {
            let theta = 2.0 * PI * r as f64 / m as f64;
            let (s, c) = Float::sin_cos(theta);
            Float::exp(alpha * c - beta * s) * Float::cos(beta * c + alpha * s)
        })
        .sum()
}

fn check_counts(reps: &[(Complex64, u128)], n0: u128, m: usize, k: u128) -> Result<()> {
    let found = n0 + m as u128 * reps.iter().map(|r| r.1).sum::<u128>();
    if found != k {
        return Err(Error::InconsistentMultiplicities { found, k });
    }
    Ok(())
}

/// Estrada index of an `m`-symmetric spectrum from one representative per
/// rotation orbit (with multiplicity) and the zero multiplicity `n0`.
pub fn ee_symmetric(
    reps: &[(Complex64, u128)],
    n0: u128,
    m: usize,
    k: u128,
) -> Result<EstradaResult> {
    check_counts(reps, n0, m, k)?;
    let value = n0 as f64
        + reps
            .iter()
            .map(|&(lambda, mult)| mult as f64 * orbit_sum(lambda, m))
            .sum::<f64>();
    Ok(EstradaResult::exact(value, EstradaMethod::SymmetricFormula))
}

/// Specialisation of [`ee_symmetric`] for `m = 3`.
pub fn ee_symmetric_m3(reps: &[(Complex64, u128)], n0: u128, k: u128) -> Result<EstradaResult> {
    check_counts(reps, n0, 3, k)?;
    let h = 3f64.sqrt() / 2.0;
    let value = n0 as f64
        + 2.0
            * reps
                .iter()
                .map(|&(l, mult)| {
                    let (a, b) = (l.re, l.im);
                    let inner = Float::cos(b / 2.0) * Float::cos(h * a) * Float::cosh(h * b)
                        + Float::sin(b / 2.0) * Float::sin(h * a) * Float::sinh(-h * b);
                    mult as f64
                        * (Float::exp(-a / 2.0) * inner + 0.5 * Float::exp(a) * Float::cos(b))
                })
                .sum::<f64>();
    Ok(EstradaResult::exact(value, EstradaMethod::SymmetricFormula))
}

/// Specialisation of [`ee_symmetric`] for `m = 4`.
pub fn ee_symmetric_m4(reps: &[(Complex64, u128)], n0: u128, k: u128) -> Result<EstradaResult> {
    check_counts(reps, n0, 4, k)?;
    let value = n0 as f64
        + 2.0
            * reps
                .iter()
                .map(|&(l, mult)| {
                    let (a, b) = (l.re, l.im);
                    mult as f64 * (Float::cos(a) * Float::cosh(b) + Float::cos(b) * Float::cosh(a))
                })
                .sum::<f64>();
    Ok(EstradaResult::exact(value, EstradaMethod::SymmetricFormula))
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

fn hyperstar_args(m: usize, q: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidUniformity(m));
    }
    if q == 0 {
        return Err(Error::InvalidParameter("hyperstar needs q >= 1"));
    }
    Ok(())
}

/// `q (m-1)^(q(m-1)+1) - (m-1) sum_r c_r`, exact.
fn hyperstar_constant(m: usize, q: usize, c: &[BigInt]) -> BigInt {
    let lead = BigInt::from(q) * pow(m as i64 - 1, q * (m - 1) + 1);
    let total: BigInt = c.iter().sum();
    lead - BigInt::from(m - 1) * total
}

/// Closed-form Estrada index of the `m`-uniform hyperstar with `q` edges.
pub fn ee_hyperstar(m: usize, q: usize) -> Result<EstradaResult> {
    hyperstar_args(m, q)?;
    let c = hyperstar_multiplicities(m, q);
    let mut value = big_to_f64(&hyperstar_constant(m, q, &c));
    for (r, cr) in c.iter().enumerate() {
        let s = Float::powf(r as f64, 1.0 / m as f64);
        let orbit: f64 = (1..=m)
            .map(|l| {
                let theta = 2.0 * l as f64 * PI / m as f64;
                let (sn, cs) = Float::sin_cos(theta);
                Float::exp(s * cs) * Float::cos(s * sn)
            })
            .sum();
        value += big_to_f64(cr) * orbit;
    }
    Ok(EstradaResult::exact(
        value,
        EstradaMethod::HyperstarClosedForm,
    ))
}

/// `m = 3` hyperstar formula:
/// `2^(2q+1) q + sum_r C(q,r) 3^r (2 e^(-s/2) cos(sqrt3 s/2) + e^s - 2)`, `s = r^(1/3)`.
pub fn ee_hyperstar_m3(q: usize) -> Result<EstradaResult> {
    hyperstar_args(3, q)?;
    let mut value = big_to_f64(&(BigInt::from(q) * pow(2, 2 * q + 1)));
    for r in 0..=q {
        let weight = big_to_f64(&(crate::exact::binomial(q, r) * pow(3, r)));
        let s = Float::cbrt(r as f64);
        let term =
            2.0 * Float::exp(-s / 2.0) * Float::cos(3f64.sqrt() * s / 2.0) + Float::exp(s) - 2.0;
        value += weight * term;
    }
    Ok(EstradaResult::exact(
        value,
        EstradaMethod::HyperstarClosedForm,
    ))
}

/// `m = 4` hyperstar formula:
/// `3^(3q+1) q + sum_r C(q,r) 16^r 11^(q-r) (2 cos s + e^-s + e^s - 3)`, `s = r^(1/4)`.
pub fn ee_hyperstar_m4(q: usize) -> Result<EstradaResult> {
    hyperstar_args(4, q)?;
    let mut value = big_to_f64(&(BigInt::from(q) * pow(3, 3 * q + 1)));
    for r in 0..=q {
        let weight = big_to_f64(&(crate::exact::binomial(q, r) * pow(16, r) * pow(11, q - r)));
        let s = Float::powf(r as f64, 0.25);
        let term = 2.0 * Float::cos(s) + Float::exp(-s) + Float::exp(s) - 3.0;
        value += weight * term;
    }
    Ok(EstradaResult::exact(
        value,
        EstradaMethod::HyperstarClosedForm,
    ))
}

/// Lower and upper bounds from the eigenvalue count and the order-`m`
/// trace: `k + Tr_m/m! <= EE <= k e^rho`, using `rho.upper`.
pub fn bounds_basic(h: &UniformHypergraph, rho: &SpectralRadiusEstimate) -> (f64, f64) {
    let k = eigenvalue_count_f64(h);
    let lower = k + order_m_over_factorial(h);
    let upper = k * Float::exp(rho.upper);
    (lower, upper)
}

fn eigenvalue_count_f64(h: &UniformHypergraph) -> f64 {
    let n = h.vertex_count();
    let m = h.uniformity();
    big_to_f64(&(BigInt::from(n) * pow(m as i64 - 1, n - 1)))
}

/// `Tr_m / m!` as a float.
fn order_m_over_factorial(h: &UniformHypergraph) -> f64 {
    let t = order_m_trace_formula(h) / BigRational::from(factorial(h.uniformity()));
    t.to_f64().unwrap_or(f64::INFINITY)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    /// `k + Tr_m/m!`; equality exactly for edgeless inputs.
    pub lower: f64,
    /// `k e^rho`.
    pub upper_radius: f64,
    /// `k - 1 + e^sqrt(r)`; needs a spectrum.
    pub upper_moduli: Option<f64>,
    /// `k - 1 + e^sqrt(r) + Tr_m/m! - sum_{l=1}^m r^(l/2)/l!`; needs a spectrum.
    pub upper_moduli_refined: Option<f64>,
    /// `k - 1 + e^(rho sqrt(2k))`.
    pub upper_radius_count: f64,
    /// `k - 1 + e^(rho sqrt(2k)) + Tr_m/m! - sum_{l=1}^m (sqrt2 rho)^l/l!`.
    pub upper_radius_count_refined: f64,
    /// `r = 2 sum alpha_j^2 - Tr_2`, the sum of squared moduli.
    pub sum_sq_moduli: Option<f64>,
    pub rho: SpectralRadiusEstimate,
}

impl BoundsReport {
    /// Upper bounds that were evaluated, labelled.
    pub fn uppers(&self) -> Vec<(&'static str, f64)> {
        let mut v = Vec::new();
        v.push(("upper_radius", self.upper_radius));
        if let Some(b) = self.upper_moduli {
            v.push(("upper_moduli", b));
        }
        if let Some(b) = self.upper_moduli_refined {
            v.push(("upper_moduli_refined", b));
        }
        v.push(("upper_radius_count", self.upper_radius_count));
        v.push((
            "upper_radius_count_refined",
            self.upper_radius_count_refined,
        ));
        v
    }
}

fn partial_exp(x: f64, m: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for l in 1..=m {
        term *= x / l as f64;
        sum += term;
    }
    sum
}

/// All bounds. With a spectrum, `r` comes from its real parts and the exact
/// `Tr_2`; without one, only the radius-based bounds are filled in.
pub fn bounds_refined(
    s: Option<&Spectrum>,
    h: &UniformHypergraph,
    rho: &SpectralRadiusEstimate,
) -> Result<BoundsReport> {
    let (lower, upper) = bounds_basic(h, rho);
    let k = eigenvalue_count_f64(h);
    let m = h.uniformity();
    let trm = order_m_over_factorial(h);

    let sum_sq_moduli = match s {
        Some(s) => {
            let tr2 = TraceEngine::new(h, TraceBudget::default())
                .trace(2)?
                .to_f64()
                .unwrap_or(f64::NAN);
            Some((2.0 * s.sum_real_squares() - tr2).max(0.0))
        }
        None => None,
    };
    let moduli = sum_sq_moduli.map(|r| {
        let root = Float::sqrt(r);
        let first = k - 1.0 + Float::exp(root);
        (first, first + trm - partial_exp(root, m))
    });
    let x = rho.upper * Float::sqrt(2.0 * k);
    let radius_count = k - 1.0 + Float::exp(x);
    let upper_radius_count_refined = radius_count + trm - partial_exp(2f64.sqrt() * rho.upper, m);
    Ok(BoundsReport {
        lower,
        upper_radius: upper,
        upper_moduli: moduli.map(|t| t.0),
        upper_moduli_refined: moduli.map(|t| t.1),
        upper_radius_count: radius_count,
        upper_radius_count_refined,
        sum_sq_moduli,
        rho: *rho,
    })
}

/// Which route [`estrada_index`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    /// Closed form for hyperstars, else the full spectrum when `k` is within
    /// budget, else the trace series.
    Auto,
    Spectrum,
    Series,
    Symmetric,
    Star,
}

#[derive(Debug, Clone, Copy)]
pub struct EstradaOptions {
    pub method: MethodChoice,
    /// Target error for the series; matching tolerance for symmetry checks.
    pub tol: f64,
    pub spectrum: SpectrumBudget,
    pub radius: PowerIterationConfig,
}

impl Default for EstradaOptions {
    fn default() -> Self {
        Self {
            method: MethodChoice::Auto,
            tol: 1e-6,
            spectrum: SpectrumBudget::default(),
            radius: PowerIterationConfig::default(),
        }
    }
}

pub fn estrada_index(h: &UniformHypergraph, opts: EstradaOptions) -> Result<EstradaResult> {
    let m = h.uniformity();
    match opts.method {
        MethodChoice::Star => match h.hyperstar_center() {
            Some((_, q)) => ee_hyperstar(m, q),
            None => Err(Error::InvalidParameter("input is not a hyperstar")),
        },
        MethodChoice::Spectrum => ee_from_spectrum(&spectrum(h, opts.spectrum)?),
        MethodChoice::Symmetric => {
            let s = spectrum(h, opts.spectrum)?;
            let (reps, n0) = symmetric_representatives(&s, m, opts.tol.max(1e-6))?;
            match m {
                3 => ee_symmetric_m3(&reps, n0, s.k),
                4 => ee_symmetric_m4(&reps, n0, s.k),
                _ => ee_symmetric(&reps, n0, m, s.k),
            }
        }
        MethodChoice::Series => {
            let rho = AdjacencyTensor::new(h).spectral_radius(opts.radius)?;
            ee_trace_series(h, opts.tol, rho.upper, opts.spectrum.trace)
        }
        MethodChoice::Auto => {
            if let Some((_, q)) = h.hyperstar_center() {
                return ee_hyperstar(m, q);
            }
            let small = h
                .eigenvalue_count()
                .is_ok_and(|k| k <= opts.spectrum.max_degree as u128);
            if small {
                match spectrum(h, opts.spectrum).and_then(|s| ee_from_spectrum(&s)) {
                    Ok(r) => return Ok(r),
                    Err(Error::RootsDidNotConverge { .. })
                    | Err(Error::ImaginaryResidue { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            estrada_index(
                h,
                EstradaOptions {
                    method: MethodChoice::Series,
                    ..opts
                },
            )
        }
    }
}
