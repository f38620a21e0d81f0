//! Characteristic polynomials from power sums, exact square-free
//! decomposition over the rationals, and simultaneous root iteration.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::trace::TraceSequence;

/// Monic characteristic polynomial with exact rational coefficients,
/// highest power first: `coeffs[d]` multiplies `lambda^(k-d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    pub coeffs: Vec<BigRational>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Builds from ascending-power coefficients, normalising to monic.
    pub fn from_ascending(asc: &[BigRational]) -> Self {
        let p = RatPoly::new(asc.to_vec()).monic();
        let mut coeffs = p.0;
        coeffs.reverse();
        Self { coeffs }
    }

    fn ascending(&self) -> Vec<BigRational> {
        let mut c = self.coeffs.clone();
        c.reverse();
        c
    }
}

/// Newton's identities: the monic polynomial whose roots have power sums
/// `Tr_1 ..= Tr_k`, with `k = Tr_0`.
pub fn charpoly_from_traces(traces: &TraceSequence) -> Result<CharPoly> {
    let k = traces
        .values
        .first()
        .and_then(|t0| t0.to_integer().to_usize())
        .ok_or(Error::InvalidParameter(
            "Tr_0 must be a small nonnegative integer",
        ))?;
    if traces.max_order() < k {
        return Err(Error::InsufficientTraces {
            have: traces.max_order(),
            need: k,
        });
    }
    charpoly_from_power_sums(&traces.values[1..=k])
}

/// Newton's identities on power sums `p_1 ..= p_k`.
pub fn charpoly_from_power_sums(power_sums: &[BigRational]) -> Result<CharPoly> {
    let k = power_sums.len();
    let mut e: Vec<BigRational> = Vec::with_capacity(k + 1);
    e.push(BigRational::one());
    for j in 1..=k {
        let mut acc = BigRational::zero();
        for i in 1..=j {
            let term = &e[j - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from(BigInt::from(j)));
    }
    let coeffs = e
        .into_iter()
        .enumerate()
        .map(|(j, ej)| if j % 2 == 1 { -ej } else { ej })
        .collect();
    Ok(CharPoly { coeffs })
}

/// Dense polynomial over the rationals, ascending powers, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RatPoly(pub Vec<BigRational>);

impl RatPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn monic(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let lc = self.lead().clone();
        Self(self.0.into_iter().map(|c| c / &lc).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        if self.0.len() < divisor.0.len() {
            return (Self(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        let lc = divisor.lead();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.0.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor. Remainders are scaled to primitive
    /// integer form between steps to keep coefficients small.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone().primitive();
        let mut b = other.clone().primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Scales to integer coefficients with unit content and positive lead.
    fn primitive(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &lcm).to_integer()).collect();
        let mut g = crate::exact::content(&ints);
        if ints.last().is_some_and(|x| x.is_negative()) {
            g = -g;
        }
        Self(
            ints.into_iter()
                .map(|c| BigRational::from(c / &g))
                .collect(),
        )
    }
}

/// Yun's square-free decomposition of a nonconstant polynomial:
/// `p = c * prod_i a_i^i` with each `a_i` monic and square-free.
/// Returns `(a_i, i)` for nonconstant factors.
pub(crate) fn squarefree_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let f = p.clone().monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let next_b = b.div_rem(&a).0;
        let next_c = d.div_rem(&a).0;
        if a.degree() > 0 {
            out.push((a, i));
        }
        d = next_c.sub(&next_b.derivative());
        b = next_b;
        i += 1;
    }
    out
}

/// A root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: u128,
}

/// Root-finding controls.
#[derive(Debug, Clone, Copy)]
pub struct RootConfig {
    /// Largest relative residual accepted for a square-free factor.
    pub residual_tol: f64,
    /// Roots closer than `cluster_radius * max(1, |z|)` are merged.
    pub cluster_radius: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-9,
            cluster_radius: 1e-7,
            max_iter: 2000,
        }
    }
}

/// All roots of `p` with multiplicities, plus the largest relative residual
/// among the square-free factors.
pub fn roots(p: &CharPoly, cfg: RootConfig) -> Result<(Vec<Root>, f64)> {
    if p.degree() == 0 {
        return Err(Error::InvalidParameter("polynomial must have degree >= 1"));
    }
    let asc = p.ascending();
    let zeros = asc.iter().take_while(|c| c.is_zero()).count();
    let mut out: Vec<Root> = Vec::new();
    if zeros > 0 {
        out.push(Root {
            value: Complex64::new(0.0, 0.0),
            multiplicity: zeros as u128,
        });
    }
    let deflated = RatPoly::new(asc[zeros..].to_vec());
    let mut residual: f64 = 0.0;
    for (factor, mult) in squarefree_decomposition(&deflated) {
        let coeffs: Vec<f64> = factor
            .0
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        let (found, res) = aberth(&coeffs, cfg.max_iter);
        if !(res <= cfg.residual_tol) {
            return Err(Error::RootsDidNotConverge {
                degree: factor.degree(),
                residual: res,
            });
        }
        residual = residual.max(res);
        out.extend(found.into_iter().map(|value| Root {
            value,
            multiplicity: mult as u128,
        }));
    }
    Ok((cluster(out, cfg.cluster_radius), residual))
}

/// Merges roots within `radius * max(1, |z|)` of each other, keeping the
/// multiplicity-weighted mean.
pub fn cluster(mut roots: Vec<Root>, radius: f64) -> Vec<Root> {
    roots.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut merged: Vec<Root> = Vec::new();
    'outer: for r in roots {
        for m in merged.iter_mut() {
            let scale = m.value.norm().max(r.value.norm()).max(1.0);
            if (m.value - r.value).norm() <= radius * scale {
                let total = m.multiplicity + r.multiplicity;
                m.value = (m.value * m.multiplicity as f64 + r.value * r.multiplicity as f64)
                    / total as f64;
                m.multiplicity = total;
                continue 'outer;
            }
        }
        merged.push(r);
    }
    merged
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let az = z.norm();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        scale = scale * az + c.abs();
    }
    (p, dp, scale)
}

/// Aberth-Ehrlich iteration on a real square-free polynomial given in
/// ascending coefficients. Returns the roots and the largest relative
/// residual `|p(z)| / sum |c_i| |z|^i`.
pub(crate) fn aberth(coeffs: &[f64], max_iter: usize) -> (Vec<Complex64>, f64) {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return (vec![Complex64::new(-monic[0], 0.0)], 0.0);
    }
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * core::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp, _) = horner(&monic, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[k] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[k].norm().max(1e-300) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    // Newton polish.
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = horner(&monic, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *zk - p / dp;
            if !(next.re.is_finite() && next.im.is_finite()) {
                break;
            }
            *zk = next;
        }
    }
    symmetrise_conjugates(&mut z);
    let residual = z
        .iter()
        .map(|&zk| {
            let (p, _, scale) = horner(&monic, zk);
            if scale > 0.0 {
                p.norm() / scale
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max);
    (z, residual)
}

/// Real polynomials have conjugate-closed root sets: snap near-real roots to
/// the axis and average each root with its nearest conjugate partner.
fn symmetrise_conjugates(z: &mut [Complex64]) {
    let n = z.len();
    let tiny = |w: Complex64| 1e-10 * w.norm().max(1.0);
    let mut paired = vec![false; n];
    for i in 0..n {
        if paired[i] {
            continue;
        }
        if Float::abs(z[i].im) <= tiny(z[i]) {
            z[i].im = 0.0;
            paired[i] = true;
            continue;
        }
        let target = z[i].conj();
        let partner = (0..n)
            .filter(|&j| j != i && !paired[j] && z[j].im * z[i].im < 0.0)
            .min_by(|&a, &b| {
                (z[a] - target)
                    .norm()
                    .partial_cmp(&(z[b] - target).norm())
                    .unwrap_or(core::cmp::Ordering::Equal)
            });
        if let Some(j) = partner {
            let avg = (z[i] + z[j].conj()) * 0.5;
            z[i] = avg;
            z[j] = avg.conj();
            paired[j] = true;
        }
        paired[i] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from(BigInt::from(v))
    }

    fn poly(asc: &[i64]) -> RatPoly {
        RatPoly::new(asc.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn newton_identities_single_edge() {
        // Power sums 0,0,9,0,0,9,... of {0,1,w,w^2} x3.
        let p: Vec<BigRational> = (1..=12)
            .map(|d| rat(if d % 3 == 0 { 9 } else { 0 }))
            .collect();
        let cp = charpoly_from_power_sums(&p).unwrap();
        let mut expected = vec![rat(0); 13];
        expected[0] = rat(1);
        expected[3] = rat(-3);
        expected[6] = rat(3);
        expected[9] = rat(-1);
        assert_eq!(cp.coeffs, expected);
    }

    #[test]
    fn gcd_and_division() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = poly(&[2, -3, 0, 1]);
        let b = poly(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
        let (q, r) = a.div_rem(&poly(&[-1, 1]));
        assert_eq!(q, poly(&[-2, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun_decomposition() {
        // x (x-1)^2 (x^2+1)^3
        let x = poly(&[0, 1]);
        let xm1 = poly(&[-1, 1]);
        let sq = poly(&[1, 0, 1]);
        let mul = |a: &RatPoly, b: &RatPoly| {
            let mut c = vec![rat(0); a.0.len() + b.0.len() - 1];
            for (i, ai) in a.0.iter().enumerate() {
                for (j, bj) in b.0.iter().enumerate() {
                    c[i + j] += ai * bj;
                }
            }
            RatPoly::new(c)
        };
        let p = mul(&mul(&mul(&x, &mul(&xm1, &xm1)), &mul(&sq, &sq)), &sq);
        let parts = squarefree_decomposition(&p);
        assert_eq!(parts, vec![(x, 1), (xm1, 2), (sq, 3)]);
    }

    #[test]
    fn aberth_finds_cube_roots() {
        let (z, res) = aberth(&[-2.0, 0.0, 0.0, 1.0], 500);
        assert!(res < 1e-14);
        let r = 2f64.powf(1.0 / 3.0);
        for zk in z {
            assert!((zk.norm() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn roots_with_multiplicity() {
        let mut coeffs = vec![rat(0); 13];
        coeffs[0] = rat(1);
        coeffs[3] = rat(-3);
        coeffs[6] = rat(3);
        coeffs[9] = rat(-1);
        let (rs, res) = roots(&CharPoly { coeffs }, RootConfig::default()).unwrap();
        assert!(res < 1e-12);
        assert_eq!(rs.len(), 4);
        assert!(rs.iter().all(|r| r.multiplicity == 3));
        let zero = rs.iter().find(|r| r.value.norm() < 1e-12).unwrap();
        assert_eq!(zero.multiplicity, 3);
    }

    #[test]
    fn pure_power_is_all_zero() {
        let mut coeffs = vec![rat(0); 13];
        coeffs[0] = rat(1);
        let (rs, _) = roots(&CharPoly { coeffs }, RootConfig::default()).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].multiplicity, 12);
        assert_eq!(rs[0].value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(roots(
            &CharPoly {
                coeffs: vec![rat(1)]
            },
            RootConfig::default()
        )
        .is_err());
    }
}
