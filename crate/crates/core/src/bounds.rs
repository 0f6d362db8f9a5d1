//! Inversion of continuity bounds and the closed-form distance lower bounds built on it.
//!
//! Every bound here is a ratio of same-base quantities, so the value does not
//! depend on the logarithm base as long as the certificate and `log d` share it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::entropy::{g_func, LogBase};
use crate::error::{Error, Result};

/// Largest possible trace or diamond distance between normalized objects.
pub const MAX_DISTANCE: f64 = 2.0;

/// Certificates at or below this are treated as absent when assembling reports.
pub const CERTIFICATE_TOL: f64 = 1e-9;

/// A continuity bound `|F(x) - F(y)| <= A eps + r(eps)` in inverted form.
#[derive(Clone)]
pub struct ContinuityBoundSpec {
    scale: f64,
    correction: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ContinuityBoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContinuityBoundSpec")
            .field("scale", &self.scale)
            .finish_non_exhaustive()
    }
}

impl ContinuityBoundSpec {
    /// Checks `A > 0`, `r(0) = 0` and monotonicity of `r` on a grid over `[0, 4]`.
    pub fn new(scale: f64, correction: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        if scale <= 0.0 || !scale.is_finite() {
            return Err(Error::OutOfRange(format!("continuity scale {scale} must be positive")));
        }
        let r0 = correction(0.0);
        if r0.abs() > 1e-15 {
            return Err(Error::OutOfRange(format!("correction r(0) = {r0} must vanish")));
        }
        let mut prev = r0;
        for i in 1..=400 {
            let v = correction(i as f64 * 0.01);
            if v < prev - 1e-15 {
                return Err(Error::OutOfRange("correction must be nondecreasing".into()));
            }
            prev = v;
        }
        Ok(Self {
            scale,
            correction: Arc::new(correction),
        })
    }

    /// `A eps + factor * g(eps)`.
    pub fn with_g(scale: f64, factor: f64, base: LogBase) -> Result<Self> {
        Self::new(scale, move |t| factor * g_func(t, base))
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `r(t)`, zero for `t < 0`.
    pub fn correction(&self, t: f64) -> f64 {
        if t < 0.0 {
            0.0
        } else {
            (self.correction)(t)
        }
    }

    /// Unclamped `A^{-1} (delta - r(A^{-1} delta))`.
    pub fn invert_raw(&self, delta: f64) -> f64 {
        let t = delta / self.scale;
        (delta - self.correction(t)) / self.scale
    }
}

/// Smallest distance compatible with an increment `delta` of the bounded function.
pub fn invert_cb(cb: &ContinuityBoundSpec, delta: f64) -> Result<f64> {
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::OutOfRange(format!("increment {delta} must be nonnegative")));
    }
    Ok(cb.invert_raw(delta).max(0.0))
}

/// A lower bound value together with the formula value before clamping.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub value: f64,
    pub raw: f64,
}

impl Bound {
    fn from_raw(raw: f64) -> Self {
        Self {
            value: raw.clamp(0.0, MAX_DISTANCE),
            raw,
        }
    }
}

fn log_dim(d: usize, base: LogBase) -> Result<f64> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension {d} < 2")));
    }
    Ok(base.log(d as f64))
}

/// `2 G / log d - (2 / log d) g(G / log d)`, the shared kernel of the separable and
/// entanglement-breaking bounds. No sign check; `g` vanishes on negatives.
pub fn separable_kernel_raw(cert: f64, d: usize, base: LogBase) -> Result<f64> {
    let l = log_dim(d, base)?;
    Ok(2.0 * cert / l - 2.0 / l * g_func(cert / l, base))
}

/// `cert / log d - (1 / log d) g(cert / (2 log d))`, the shared kernel of the
/// antidegradable and degradable bounds.
pub fn degradable_kernel_raw(cert: f64, d: usize, base: LogBase) -> Result<f64> {
    let l = log_dim(d, base)?;
    Ok(cert / l - g_func(cert / (2.0 * l), base) / l)
}

/// Distance to the separable states from any certified lower bound `G` of the
/// relative entropy of entanglement, with `d = min{d_A, d_B}`.
pub fn ds_lower(cert: f64, d: usize, base: LogBase) -> Result<Bound> {
    if cert.is_nan() || cert < 0.0 {
        return Err(Error::OutOfRange(format!("certificate {cert} must be nonnegative")));
    }
    separable_kernel_raw(cert, d, base).map(Bound::from_raw)
}

/// Diamond distance to the antidegradable channels from `I_c(Phi, rho) > 0`.
pub fn da_lower(ic: f64, d: usize, base: LogBase) -> Result<Bound> {
    if ic.is_nan() || ic <= 0.0 {
        return Err(Error::NoCertificate("antidegradability"));
    }
    degradable_kernel_raw(ic, d, base).map(Bound::from_raw)
}

/// Diamond distance to the degradable channels from `-I_c(Phi, rho) > 0`.
pub fn dd_lower(neg_ic: f64, d: usize, base: LogBase) -> Result<Bound> {
    if neg_ic.is_nan() || neg_ic <= 0.0 {
        return Err(Error::NoCertificate("degradability"));
    }
    degradable_kernel_raw(neg_ic, d, base).map(Bound::from_raw)
}

/// Which entropic certificate feeds the entanglement-breaking bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EbSource {
    /// Channel coherent information `I_c(Phi, rho)`.
    Ic,
    /// Reverse coherent information `L(Phi, rho) = H(rho) - H(complement(rho))`.
    L,
    /// Lower bound on the relative entropy of entanglement of `(Phi (x) Id)(omega)`.
    ER,
}

impl EbSource {
    pub fn formula(self) -> FormulaTag {
        match self {
            EbSource::Ic => FormulaTag::EbCoherent,
            EbSource::L => FormulaTag::EbReverse,
            EbSource::ER => FormulaTag::EbRee,
        }
    }
}

/// Diamond distance to the entanglement-breaking channels.
///
/// The three sources share one kernel; `_source` only labels the certificate.
pub fn deb_lower(cert: f64, d: usize, _source: EbSource, base: LogBase) -> Result<Bound> {
    if cert.is_nan() || cert <= 0.0 {
        return Err(Error::NoCertificate("entanglement-breaking"));
    }
    separable_kernel_raw(cert, d, base).map(Bound::from_raw)
}

/// Trace distance to the product states from the mutual information, inverting
/// `|I(A:B)_rho - I(A:B)_sigma| <= 2 eps log d + 2 g(eps)`.
pub fn dprod_lower(mi: f64, d: usize, base: LogBase) -> Result<Bound> {
    if mi.is_nan() || mi < 0.0 {
        return Err(Error::OutOfRange(format!("mutual information {mi} must be nonnegative")));
    }
    let l = log_dim(d, base)?;
    Ok(Bound::from_raw(mi / l - 2.0 * g_func(mi / (2.0 * l), base) / l))
}

/// The set a distance is measured to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetSet {
    Degradable,
    Antidegradable,
    EntanglementBreaking,
    Separable,
    Product,
}

/// Which closed-form bound produced an entry. Wire names are the report tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormulaTag {
    /// Separable distance from a relative-entropy-of-entanglement lower bound.
    #[serde(rename = "Eq5")]
    SeparableRee,
    /// Separable distance from `max{H(A), H(B)} - H(AB)`.
    #[serde(rename = "Eq6")]
    SeparableCoherent,
    /// Antidegradable distance from a positive channel coherent information.
    #[serde(rename = "Eq9")]
    Antidegradable,
    /// Entanglement-breaking distance from the channel coherent information.
    #[serde(rename = "Eq10")]
    EbCoherent,
    /// Entanglement-breaking distance from `L(Phi, rho)`.
    #[serde(rename = "Eq11")]
    EbReverse,
    /// Entanglement-breaking distance from the relative entropy of entanglement.
    #[serde(rename = "Eq12")]
    EbRee,
    /// Degradable distance from a negative channel coherent information.
    #[serde(rename = "Eq13")]
    Degradable,
    /// Product-state distance from the mutual information.
    #[serde(rename = "ProdMI")]
    ProductMi,
}

impl FormulaTag {
    pub fn tag(self) -> &'static str {
        match self {
            FormulaTag::SeparableRee => "Eq5",
            FormulaTag::SeparableCoherent => "Eq6",
            FormulaTag::Antidegradable => "Eq9",
            FormulaTag::EbCoherent => "Eq10",
            FormulaTag::EbReverse => "Eq11",
            FormulaTag::EbRee => "Eq12",
            FormulaTag::Degradable => "Eq13",
            FormulaTag::ProductMi => "ProdMI",
        }
    }

    pub fn target(self) -> TargetSet {
        match self {
            FormulaTag::SeparableRee | FormulaTag::SeparableCoherent => TargetSet::Separable,
            FormulaTag::Antidegradable => TargetSet::Antidegradable,
            FormulaTag::EbCoherent | FormulaTag::EbReverse | FormulaTag::EbRee => {
                TargetSet::EntanglementBreaking
            }
            FormulaTag::Degradable => TargetSet::Degradable,
            FormulaTag::ProductMi => TargetSet::Product,
        }
    }
}

/// One certified lower bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub target: TargetSet,
    pub formula: FormulaTag,
    /// Clamped to `[0, 2]`.
    pub value: f64,
    pub unclamped: f64,
    pub d: usize,
    pub witness: String,
    pub inputs: BTreeMap<String, f64>,
}

/// A non-certified numerical estimate carried alongside the bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub name: String,
    pub value: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub subject: String,
    pub log_base: LogBase,
    pub entries: Vec<BoundEntry>,
    #[serde(default)]
    pub estimates: Vec<Estimate>,
}

impl BoundReport {
    pub fn entry(&self, formula: FormulaTag) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.formula == formula)
    }

    /// Best (largest) bound for a target set.
    pub fn best(&self, target: TargetSet) -> Option<&BoundEntry> {
        self.entries
            .iter()
            .filter(|e| e.target == target)
            .max_by(|a, b| a.value.total_cmp(&b.value))
    }
}

/// An entropic certificate value with a description of where it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct CertInput {
    pub value: f64,
    pub witness: String,
}

impl CertInput {
    pub fn new(value: f64, witness: impl Into<String>) -> Self {
        Self {
            value,
            witness: witness.into(),
        }
    }
}

/// Every certificate a report may draw on; absent fields produce no entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EntropicInputs {
    /// `min{d_A, d_B}` (channel input/output, or the two state factors).
    pub d: usize,
    /// Largest found `I_c(Phi, rho)`.
    pub channel_ic: Option<CertInput>,
    /// Largest found `-I_c(Phi, rho)`.
    pub channel_neg_ic: Option<CertInput>,
    /// Largest found `L(Phi, rho)`.
    pub channel_l: Option<CertInput>,
    /// Lower bound on the relative entropy of entanglement of `(Phi (x) Id)(omega)`,
    /// with `d` of the output system `B (x) R` (`min{d_B, d_A}`).
    pub channel_er: Option<CertInput>,
    /// `max{H(A), H(B)} - H(AB)` of a state.
    pub state_ic: Option<CertInput>,
    /// Certified lower bound on the relative entropy of entanglement of a state.
    pub state_er: Option<CertInput>,
    /// Mutual information of a state.
    pub state_mi: Option<CertInput>,
}

/// Evaluates every formula whose certificate is present and positive.
pub fn assemble_report(subject: &str, inputs: &EntropicInputs, base: LogBase) -> Result<BoundReport> {
    let d = inputs.d;
    let mut entries = Vec::new();
    let mut push = |formula: FormulaTag, cert: &CertInput, name: &str, bound: Bound| {
        entries.push(BoundEntry {
            target: formula.target(),
            formula,
            value: bound.value,
            unclamped: bound.raw,
            d,
            witness: cert.witness.clone(),
            inputs: BTreeMap::from([(name.to_string(), cert.value)]),
        });
    };
    fn positive(c: &Option<CertInput>) -> Option<&CertInput> {
        c.as_ref().filter(|c| c.value > CERTIFICATE_TOL)
    }

    if let Some(c) = positive(&inputs.channel_ic) {
        push(FormulaTag::Antidegradable, c, "ic", da_lower(c.value, d, base)?);
        push(EbSource::Ic.formula(), c, "ic", deb_lower(c.value, d, EbSource::Ic, base)?);
    }
    if let Some(c) = positive(&inputs.channel_l) {
        push(EbSource::L.formula(), c, "L", deb_lower(c.value, d, EbSource::L, base)?);
    }
    if let Some(c) = positive(&inputs.channel_er) {
        push(EbSource::ER.formula(), c, "er_lower", deb_lower(c.value, d, EbSource::ER, base)?);
    }
    if let Some(c) = positive(&inputs.channel_neg_ic) {
        push(FormulaTag::Degradable, c, "neg_ic", dd_lower(c.value, d, base)?);
    }
    if let Some(c) = positive(&inputs.state_er) {
        push(FormulaTag::SeparableRee, c, "er_lower", ds_lower(c.value, d, base)?);
    }
    if let Some(c) = positive(&inputs.state_ic) {
        push(FormulaTag::SeparableCoherent, c, "ic", ds_lower(c.value, d, base)?);
    }
    if let Some(c) = &inputs.state_mi {
        push(FormulaTag::ProductMi, c, "mi", dprod_lower(c.value.max(0.0), d, base)?);
    }
    Ok(BoundReport {
        subject: subject.to_string(),
        log_base: base,
        entries,
        estimates: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::binary_entropy;

    const TWO: LogBase = LogBase::Two;
    const NAT: LogBase = LogBase::Natural;

    fn g(x: f64) -> f64 {
        g_func(x, TWO)
    }

    #[test]
    fn invert_examples() {
        let lin = ContinuityBoundSpec::new(2.0, |_| 0.0).unwrap();
        assert_eq!(invert_cb(&lin, 0.0).unwrap(), 0.0);
        assert_eq!(invert_cb(&lin, 3.0).unwrap(), 1.5);
        let cb = ContinuityBoundSpec::with_g(2.0, 1.0, TWO).unwrap();
        assert_eq!(invert_cb(&cb, 2.0).unwrap(), 0.0);
        assert_eq!(cb.invert_raw(2.0), 0.0);
        assert!(invert_cb(&cb, -1.0).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(ContinuityBoundSpec::new(0.0, |_| 0.0).is_err());
        assert!(ContinuityBoundSpec::new(-1.0, |_| 0.0).is_err());
        assert!(ContinuityBoundSpec::new(1.0, |t| t + 1.0).is_err());
        assert!(ContinuityBoundSpec::new(1.0, |t| -t).is_err());
        let cb = ContinuityBoundSpec::with_g(1.0, 2.0, TWO).unwrap();
        assert_eq!(cb.correction(-0.5), 0.0);
    }

    #[test]
    fn ds_examples() {
        for d in [2usize, 4, 16, 64] {
            for base in [TWO, NAT] {
                let l = base.log(d as f64);
                let got = ds_lower(l, d, base).unwrap();
                let expect = 2.0 - 4.0 * base.log(2.0) / l;
                assert!((got.raw - expect).abs() < 1e-12);
            }
        }
        assert!((ds_lower(4.0, 16, TWO).unwrap().value - 1.0).abs() < 1e-12);
        assert_eq!(ds_lower(0.0, 16, TWO).unwrap().value, 0.0);
        assert!(ds_lower(1.0, 1, TWO).is_err());
        // equals twice the generic inversion with A = log d, r = g
        let cb = ContinuityBoundSpec::with_g(3.0, 1.0, TWO).unwrap();
        let b = ds_lower(2.2, 8, TWO).unwrap();
        assert!((b.value - 2.0 * invert_cb(&cb, 2.2).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn da_examples() {
        for d in [4usize, 16, 32] {
            let l = (d as f64).log2();
            for x in [0.1, 0.25, 0.4] {
                let got = da_lower(2.0 * x * l, d, TWO).unwrap();
                assert!((got.raw - (2.0 * x - g(x) / l)).abs() < 1e-12);
            }
            let id = da_lower(l, d, TWO).unwrap();
            assert!((id.raw - (1.0 - g(0.5) / l)).abs() < 1e-12);
        }
        let b = da_lower(2.0 * 0.2 * 4.0, 16, TWO).unwrap();
        assert!((b.value - 0.204993).abs() < 1e-6);
        assert!((g(0.2) - 0.780027).abs() < 1e-6);
        assert_eq!(da_lower(0.0, 4, TWO), Err(Error::NoCertificate("antidegradability")));
        assert!(da_lower(-1.0, 4, TWO).is_err());
        let cb = ContinuityBoundSpec::with_g(2.0 * 3.0, 1.0, TWO).unwrap();
        let b = da_lower(2.5, 8, TWO).unwrap();
        assert!((b.value - 2.0 * invert_cb(&cb, 2.5).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn dd_examples() {
        let l = 4.0;
        let b = dd_lower(2.0 * 0.3 * l, 16, TWO).unwrap();
        assert!((b.raw - (0.6 - g(0.3) / l)).abs() < 1e-12);
        assert!(dd_lower(0.0, 16, TWO).is_err());
        assert!(dd_lower(-0.5, 16, TWO).is_err());
        // completely depolarizing qubit, chaotic input: -I_c = 1 bit
        assert!((g(0.5) - 1.377443).abs() < 1e-6);
        let b = dd_lower(1.0, 2, TWO).unwrap();
        assert!((b.raw - (1.0 - g(0.5))).abs() < 1e-12);
        assert_eq!(b.value, 0.0);
    }

    #[test]
    fn deb_examples() {
        for d in [4usize, 16, 64] {
            let l = (d as f64).log2();
            let b = deb_lower(l, d, EbSource::Ic, TWO).unwrap();
            assert!((b.raw - (2.0 - 2.0 * g(1.0) / l)).abs() < 1e-12);
            for p in [0.1, 0.3, 0.45] {
                let h = binary_entropy(p, TWO).unwrap();
                let cert = (1.0 - p) * l - h;
                let b = deb_lower(cert, d, EbSource::L, TWO).unwrap();
                let display = 2.0 * (1.0 - p) - 2.0 / l * (h + g((1.0 - p) - h / l));
                assert!((b.raw - display).abs() < 1e-12);
                let b = deb_lower((1.0 - p) * l, d, EbSource::ER, TWO).unwrap();
                let display = 2.0 * (1.0 - p) - 2.0 * g(1.0 - p) / l;
                assert!((b.raw - display).abs() < 1e-12);
            }
        }
        assert_eq!(
            deb_lower(0.0, 4, EbSource::L, TWO),
            Err(Error::NoCertificate("entanglement-breaking"))
        );
    }

    #[test]
    fn dprod_examples() {
        assert_eq!(dprod_lower(0.0, 4, TWO).unwrap().value, 0.0);
        let b = dprod_lower(8.0, 16, TWO).unwrap();
        assert!((b.value - 1.0).abs() < 1e-12);
        let b = dprod_lower(2.0, 2, TWO).unwrap();
        assert_eq!(b.value, 0.0);
        assert!((b.raw - (2.0 - 4.0)).abs() < 1e-12);
        let cb = ContinuityBoundSpec::with_g(2.0 * 3.0, 2.0, TWO).unwrap();
        let b = dprod_lower(4.5, 8, TWO).unwrap();
        assert!((b.value - 2.0 * invert_cb(&cb, 4.5).unwrap()).abs() < 1e-15);
    }

    fn channel_inputs(d: usize, ic: f64, l: f64) -> EntropicInputs {
        EntropicInputs {
            d,
            channel_ic: Some(CertInput::new(ic, "chaotic")),
            channel_neg_ic: Some(CertInput::new(-ic, "chaotic")),
            channel_l: Some(CertInput::new(l, "chaotic")),
            ..Default::default()
        }
    }

    #[test]
    fn report_for_identity() {
        let inputs = channel_inputs(4, 2.0, 2.0);
        let r = assemble_report("identity_embedding(4,4)", &inputs, TWO).unwrap();
        assert!(r.entry(FormulaTag::Antidegradable).is_some());
        assert!(r.entry(FormulaTag::EbCoherent).is_some());
        assert!(r.entry(FormulaTag::EbReverse).is_some());
        assert!(r.entry(FormulaTag::Degradable).is_none());
        let da = r.entry(FormulaTag::Antidegradable).unwrap();
        assert!((da.value - (1.0 - g(0.5) / 2.0)).abs() < 1e-12);
        assert_eq!(r.entry(FormulaTag::EbCoherent).unwrap().value, 0.0);
    }

    #[test]
    fn report_for_erasure() {
        let l = 2.0;
        let ic = (1.0 - 2.0 * 0.9) * l;
        let lval = 0.1 * l - binary_entropy(0.9, TWO).unwrap();
        let r = assemble_report("erasure(4,0.9)", &channel_inputs(4, ic, lval), TWO).unwrap();
        assert!(r.entry(FormulaTag::Degradable).is_some());
        assert!(r.entry(FormulaTag::Antidegradable).is_none());

        let half = 0.5 * l - 1.0;
        let r = assemble_report("erasure(4,0.5)", &channel_inputs(4, 1e-17, half), TWO).unwrap();
        assert!(r.entries.is_empty());
    }

    #[test]
    fn report_serializes_tags() {
        let r = assemble_report("x", &channel_inputs(4, 2.0, 2.0), TWO).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"Eq9\""));
        assert!(json.contains("\"antidegradable\""));
        assert!(json.contains("\"log_base\":\"2\""));
        let back: BoundReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn dominance_on_erasure_family() {
        // ER >= L always; L >= Ic whenever p log d >= h2(p)
        for d in [16usize, 32, 256] {
            let l = (d as f64).log2();
            for i in 0..=45 {
                let p = i as f64 / 100.0;
                let h = binary_entropy(p, TWO).unwrap();
                let val = |cert: f64| if cert > 0.0 { ds_lower(cert, d, TWO).unwrap().value } else { 0.0 };
                let er = val((1.0 - p) * l);
                let lv = val((1.0 - p) * l - h);
                let ic = val((1.0 - 2.0 * p) * l);
                assert!(er >= lv - 1e-12);
                assert!(er >= ic - 1e-12);
                if p * l >= h {
                    assert!(lv >= ic - 1e-12, "d={d} p={p}");
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn inversion_is_sound(a in 0.5f64..10.0, eps in 0.0f64..1.0) {
                let cb = ContinuityBoundSpec::with_g(a, 1.0, TWO).unwrap();
                let delta = a * eps + g_func(eps, TWO);
                prop_assert!(invert_cb(&cb, delta).unwrap() <= eps + 1e-12);
            }

            #[test]
            fn bounds_are_monotone(d in 2usize..200, g1 in 0.0f64..8.0, step in 0.0f64..1.0) {
                let g2 = g1 + step;
                let mono = |f: &dyn Fn(f64) -> f64| f(g1) <= f(g2) + 1e-12;
                prop_assert!(mono(&|c| ds_lower(c, d, TWO).unwrap().value));
                prop_assert!(mono(&|c| dprod_lower(c, d, TWO).unwrap().value));
                if g1 > 0.0 {
                    prop_assert!(mono(&|c| da_lower(c, d, TWO).unwrap().value));
                    prop_assert!(mono(&|c| deb_lower(c, d, EbSource::L, TWO).unwrap().value));
                }
            }

            #[test]
            fn bounds_are_base_invariant(d in 2usize..200, bits in 0.001f64..8.0) {
                let nats = bits * std::f64::consts::LN_2;
                let pairs = [
                    (ds_lower(bits, d, TWO).unwrap(), ds_lower(nats, d, NAT).unwrap()),
                    (da_lower(bits, d, TWO).unwrap(), da_lower(nats, d, NAT).unwrap()),
                    (dd_lower(bits, d, TWO).unwrap(), dd_lower(nats, d, NAT).unwrap()),
                    (dprod_lower(bits, d, TWO).unwrap(), dprod_lower(nats, d, NAT).unwrap()),
                ];
                for (a, b) in pairs {
                    prop_assert!((a.raw - b.raw).abs() < 1e-10);
                    prop_assert!((a.value - b.value).abs() < 1e-10);
                }
            }

            #[test]
            fn bounds_stay_in_range(d in 2usize..1000, cert in 0.0f64..40.0) {
                for b in [ds_lower(cert, d, TWO).unwrap(), dprod_lower(cert, d, TWO).unwrap()] {
                    prop_assert!((0.0..=MAX_DISTANCE).contains(&b.value));
                }
            }
        }
    }
}
