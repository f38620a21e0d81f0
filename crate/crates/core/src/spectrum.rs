//! Eigenvalue multisets of adjacency tensors.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, pow};
use crate::hypergraph::{eigenvalue_count, UniformHypergraph};
use crate::poly::{charpoly_from_traces, roots, CharPoly, RootConfig};
use crate::trace::{TraceBudget, TraceEngine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedFormHyperstar,
    NewtonRoots,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedFormHyperstar => "closed-form-hyperstar",
            Provenance::NewtonRoots => "newton-roots",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub value: Complex64,
    pub multiplicity: u128,
}

/// All `k` eigenvalues with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub k: u128,
    pub entries: Vec<SpectrumEntry>,
    pub provenance: Provenance,
    /// Largest relative residual of the numeric roots; zero for closed forms.
    pub residual: f64,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> u128 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn zero_multiplicity(&self, tol: f64) -> u128 {
        self.entries
            .iter()
            .filter(|e| e.value.norm() <= tol)
            .map(|e| e.multiplicity)
            .sum()
    }

    /// `max |lambda|`.
    pub fn spectral_radius(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.value.norm())
            .fold(0.0, f64::max)
    }

    /// `sum lambda^d` with multiplicity.
    pub fn power_sum(&self, d: u32) -> Complex64 {
        self.entries
            .iter()
            .map(|e| e.value.powu(d) * e.multiplicity as f64)
            .sum()
    }

    /// `sum alpha_j^2` over all eigenvalues.
    pub fn sum_real_squares(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.value.re * e.value.re * e.multiplicity as f64)
            .sum()
    }

    /// Every nonreal entry has a conjugate partner of equal multiplicity.
    pub fn is_conjugate_closed(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| {
            if Float::abs(e.value.im) <= tol {
                return true;
            }
            let c = e.value.conj();
            self.entries.iter().any(|f| {
                f.multiplicity == e.multiplicity && (f.value - c).norm() <= tol * c.norm().max(1.0)
            })
        })
    }
}

/// `c_r = C(q,r) (m^(m-2))^r ((m-1)^(m-1) - m^(m-2))^(q-r)` for `r = 0..=q`.
pub fn hyperstar_multiplicities(m: usize, q: usize) -> Vec<BigInt> {
    let a = pow(m as i64, m - 2);
    let b = pow(m as i64 - 1, m - 1) - &a;
    (0..=q)
        .map(|r| binomial(q, r) * num_traits::pow(a.clone(), r) * num_traits::pow(b.clone(), q - r))
        .collect()
}

/// Closed-form spectrum of the `m`-uniform hyperstar with `q` edges.
pub fn hyperstar_spectrum(m: usize, q: usize) -> Result<Spectrum> {
    if m < 2 {
        return Err(Error::InvalidUniformity(m));
    }
    if q == 0 {
        return Err(Error::InvalidParameter("hyperstar needs q >= 1"));
    }
    let n = q * (m - 1) + 1;
    let k = eigenvalue_count(n, m)?;
    let overflow = Error::EigenvalueCountOverflow { n, m };
    let c: Vec<u128> = hyperstar_multiplicities(m, q)
        .iter()
        .map(|v| v.to_u128().ok_or(overflow.clone()))
        .collect::<Result<_>>()?;
    let nonzero: u128 = c[1..].iter().sum::<u128>() * m as u128;
    let mut entries = Vec::new();
    if k > nonzero {
        entries.push(SpectrumEntry {
            value: Complex64::zero(),
            multiplicity: k - nonzero,
        });
    }
    for (r, &cr) in c.iter().enumerate().skip(1) {
        if cr == 0 {
            continue;
        }
        let modulus = Float::powf(r as f64, 1.0 / m as f64);
        for l in 1..=m {
            let angle = 2.0 * PI * l as f64 / m as f64;
            entries.push(SpectrumEntry {
                value: rotation_point(modulus, l, m, angle),
                multiplicity: cr,
            });
        }
    }
    Ok(Spectrum {
        k,
        entries,
        provenance: Provenance::ClosedFormHyperstar,
        residual: 0.0,
    })
}

/// `modulus * e^(2 pi i l / m)` with exact zeros on the axes.
fn rotation_point(modulus: f64, l: usize, m: usize, angle: f64) -> Complex64 {
    let l = l % m;
    if l == 0 {
        return Complex64::new(modulus, 0.0);
    }
    if 2 * l == m {
        return Complex64::new(-modulus, 0.0);
    }
    if 4 * l == m {
        return Complex64::new(0.0, modulus);
    }
    if 4 * l == 3 * m {
        return Complex64::new(0.0, -modulus);
    }
    Complex64::from_polar(modulus, angle)
}

/// Limits for [`spectrum`].
#[derive(Debug, Clone, Copy)]
pub struct SpectrumBudget {
    /// Largest eigenvalue count handled through traces and root finding.
    pub max_degree: usize,
    pub trace: TraceBudget,
    pub roots: RootConfig,
}

impl Default for SpectrumBudget {
    fn default() -> Self {
        Self {
            max_degree: 128,
            trace: TraceBudget::default(),
            roots: RootConfig::default(),
        }
    }
}

/// Roots of a characteristic polynomial as a spectrum.
pub fn spectrum_from_charpoly(p: &CharPoly, cfg: RootConfig) -> Result<Spectrum> {
    let (rs, residual) = roots(p, cfg)?;
    let mut entries: Vec<SpectrumEntry> = rs
        .into_iter()
        .map(|r| SpectrumEntry {
            value: r.value,
            multiplicity: r.multiplicity,
        })
        .collect();
    sort_entries(&mut entries);
    Ok(Spectrum {
        k: p.degree() as u128,
        entries,
        provenance: Provenance::NewtonRoots,
        residual,
    })
}

fn sort_entries(entries: &mut [SpectrumEntry]) {
    entries.sort_by(|a, b| {
        (a.value.norm(), a.value.arg())
            .partial_cmp(&(b.value.norm(), b.value.arg()))
            .unwrap_or(core::cmp::Ordering::Equal)
    });
}

/// The Newton-identity route: traces up to `k`, characteristic polynomial,
/// roots. Ignores the hyperstar shortcut.
pub fn spectrum_newton(h: &UniformHypergraph, budget: SpectrumBudget) -> Result<Spectrum> {
    let k = h.eigenvalue_count()?;
    if k > budget.max_degree as u128 {
        return Err(Error::SpectrumTooLarge {
            k,
            limit: budget.max_degree,
        });
    }
    let traces = TraceEngine::new(h, budget.trace).sequence(k as usize)?;
    let p = charpoly_from_traces(&traces)?;
    spectrum_from_charpoly(&p, budget.roots)
}

/// Full spectrum: closed form for hyperstars, otherwise the Newton route
/// when `k` is within budget.
pub fn spectrum(h: &UniformHypergraph, budget: SpectrumBudget) -> Result<Spectrum> {
    if let Some((_, q)) = h.hyperstar_center() {
        return hyperstar_spectrum(h.uniformity(), q);
    }
    spectrum_newton(h, budget)
}

/// Whether rotating every eigenvalue by `e^(2 pi i / m)` maps the multiset
/// onto itself, matching greedily by nearest neighbour within
/// `tol * max(1, |lambda|)`.
pub fn is_m_symmetric(s: &Spectrum, m: usize, tol: f64) -> bool {
    if m == 0 {
        return false;
    }
    let rot = Complex64::from_polar(1.0, 2.0 * PI / m as f64);
    let mut capacity: Vec<u128> = s.entries.iter().map(|e| e.multiplicity).collect();
    for e in &s.entries {
        let target = e.value * rot;
        let mut need = e.multiplicity;
        while need > 0 {
            let best = (0..s.entries.len())
                .filter(|&j| capacity[j] > 0)
                .map(|j| (j, (s.entries[j].value - target).norm()))
                .filter(|&(_, dist)| dist <= tol * target.norm().max(1.0))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(core::cmp::Ordering::Equal));
            let Some((j, _)) = best else {
                return false;
            };
            let take = need.min(capacity[j]);
            capacity[j] -= take;
            need -= take;
        }
    }
    true
}

/// Representatives of an `m`-symmetric spectrum: the nonzero eigenvalues
/// split into orbits under rotation by `e^(2 pi i / m)`, one per orbit, plus
/// the zero multiplicity.
pub fn symmetric_representatives(
    s: &Spectrum,
    m: usize,
    tol: f64,
) -> Result<(Vec<(Complex64, u128)>, u128)> {
    if !is_m_symmetric(s, m, tol) {
        return Err(Error::NotSymmetric { m });
    }
    let zero_tol = tol * s.spectral_radius().max(1.0);
    let n0 = s.zero_multiplicity(zero_tol);
    let rot = Complex64::from_polar(1.0, 2.0 * PI / m as f64);
    let mut remaining: Vec<u128> = s
        .entries
        .iter()
        .map(|e| {
            if e.value.norm() <= zero_tol {
                0
            } else {
                e.multiplicity
            }
        })
        .collect();
    let mut reps = Vec::new();
    for i in 0..s.entries.len() {
        while remaining[i] > 0 {
            let base = s.entries[i].value;
            // Size of this orbit's share: the smallest remaining multiplicity
            // along the rotation orbit.
            let mut orbit = vec![i];
            let mut z = base;
            for _ in 1..m {
                z *= rot;
                let j = (0..s.entries.len())
                    .filter(|&j| remaining[j] > 0 && !orbit.contains(&j))
                    .min_by(|&a, &b| {
                        (s.entries[a].value - z)
                            .norm()
                            .partial_cmp(&(s.entries[b].value - z).norm())
                            .unwrap_or(core::cmp::Ordering::Equal)
                    })
                    .filter(|&j| (s.entries[j].value - z).norm() <= tol * z.norm().max(1.0))
                    .ok_or(Error::NotSymmetric { m })?;
                orbit.push(j);
            }
            let share = orbit.iter().map(|&j| remaining[j]).min().unwrap_or(0);
            for &j in &orbit {
                remaining[j] -= share;
            }
            reps.push((base, share));
        }
    }
    Ok((reps, n0))
}
