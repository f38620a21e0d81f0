//! Serializable reports. Floats go out with 10 significant digits;
//! non-finite values (an overflowing bound) become `null`.

use hyperee_core::{
    BoundsReport, EstradaResult, RadiusMethod, SpectralRadiusEstimate, Spectrum, TraceSequence,
};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Round to 10 significant digits.
pub fn round_sig10(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

mod sig10 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(super::round_sig10(*x))
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

mod sig10_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => super::sig10::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<f64>::deserialize(d)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntryJson {
    #[serde(with = "sig10")]
    pub re: f64,
    #[serde(with = "sig10")]
    pub im: f64,
    pub mult: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub k: u128,
    pub entries: Vec<SpectrumEntryJson>,
    pub provenance: String,
    #[serde(with = "sig10")]
    pub residual: f64,
}

impl From<&Spectrum> for SpectrumJson {
    fn from(s: &Spectrum) -> Self {
        Self {
            k: s.k,
            entries: s
                .entries
                .iter()
                .map(|e| SpectrumEntryJson {
                    re: e.value.re,
                    im: e.value.im,
                    mult: e.multiplicity,
                })
                .collect(),
            provenance: s.provenance.as_str().to_string(),
            residual: s.residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstradaJson {
    #[serde(with = "sig10")]
    pub value: f64,
    pub method: String,
    #[serde(with = "sig10")]
    pub error_bound: f64,
    pub terms_used: Option<usize>,
    #[serde(with = "sig10")]
    pub imag_discard: f64,
    pub converged: bool,
}

impl From<&EstradaResult> for EstradaJson {
    fn from(r: &EstradaResult) -> Self {
        Self {
            value: r.value,
            method: r.method.as_str().to_string(),
            error_bound: r.error_bound,
            terms_used: r.terms_used,
            imag_discard: r.imag_discard,
            converged: r.converged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusJson {
    #[serde(with = "sig10")]
    pub lower: f64,
    #[serde(with = "sig10")]
    pub upper: f64,
    pub method: String,
}

impl From<&SpectralRadiusEstimate> for RadiusJson {
    fn from(r: &SpectralRadiusEstimate) -> Self {
        Self {
            lower: r.lower,
            upper: r.upper,
            method: match r.method {
                RadiusMethod::PowerIteration => "power-iteration",
                RadiusMethod::DegreeBound => "degree-bound",
            }
            .to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsJson {
    #[serde(with = "sig10")]
    pub lower: f64,
    #[serde(with = "sig10")]
    pub upper_radius: f64,
    #[serde(with = "sig10_opt")]
    pub upper_moduli: Option<f64>,
    #[serde(with = "sig10_opt")]
    pub upper_moduli_refined: Option<f64>,
    #[serde(with = "sig10")]
    pub upper_radius_count: f64,
    #[serde(with = "sig10")]
    pub upper_radius_count_refined: f64,
    #[serde(with = "sig10_opt")]
    pub sum_sq_moduli: Option<f64>,
    pub rho: RadiusJson,
}

impl From<&BoundsReport> for BoundsJson {
    fn from(b: &BoundsReport) -> Self {
        Self {
            lower: b.lower,
            upper_radius: b.upper_radius,
            upper_moduli: b.upper_moduli,
            upper_moduli_refined: b.upper_moduli_refined,
            upper_radius_count: b.upper_radius_count,
            upper_radius_count_refined: b.upper_radius_count_refined,
            sum_sq_moduli: b.sum_sq_moduli,
            rho: (&b.rho).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceJson {
    pub d: usize,
    /// Exact value, `p` or `p/q`.
    pub exact: String,
    #[serde(with = "sig10")]
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracesJson {
    pub m: usize,
    pub n: usize,
    pub traces: Vec<TraceJson>,
}

impl From<&TraceSequence> for TracesJson {
    fn from(t: &TraceSequence) -> Self {
        Self {
            m: t.m,
            n: t.n,
            traces: t
                .values
                .iter()
                .enumerate()
                .map(|(d, v)| TraceJson {
                    d,
                    exact: v.to_string(),
                    approx: v.to_f64().unwrap_or(f64::INFINITY),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig10(13.512_524_801_587_302), 13.512_524_80);
        assert_eq!(round_sig10(2_694.833_201_350_471), 2_694.833_201);
        assert_eq!(round_sig10(0.0), 0.0);
        assert!(round_sig10(f64::INFINITY).is_infinite());
    }

    #[test]
    fn non_finite_becomes_null() {
        let e = SpectrumEntryJson {
            re: f64::INFINITY,
            im: 0.0,
            mult: 1,
        };
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(text, r#"{"re":null,"im":0.0,"mult":1}"#);
        let back: SpectrumEntryJson = serde_json::from_str(&text).unwrap();
        assert!(back.re.is_infinite());
    }
}
