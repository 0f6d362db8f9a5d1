//! Channel representations, complementary channels and channel-level entropic functionals.
//!
//! Stinespring convention: `V = sum_k K_k (x) |k>_E`, so row `i_B * d_E + k` of `V`
//! is row `i_B` of `K_k`.

use crate::entropy::{von_neumann_entropy, LogBase};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace_op, tensor, CMatrix, DensityMatrix, Subsystem, C64};

/// Completeness tolerance for Kraus lists.
pub const COMPLETENESS_TOL: f64 = 1e-9;

/// A channel `A -> B` given by Kraus operators of shape `d_out x d_in`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    kraus: Vec<CMatrix>,
    d_in: usize,
    d_out: usize,
}

impl KrausChannel {
    /// Validates shapes and `sum K^dagger K = I` within [`COMPLETENESS_TOL`].
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty Kraus list".into()))?;
        let (d_out, d_in) = first.shape();
        if d_in == 0 || d_out == 0 {
            return Err(Error::DimensionMismatch("zero-dimensional Kraus operator".into()));
        }
        if let Some(bad) = kraus.iter().find(|k| k.shape() != (d_out, d_in)) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operator of shape {:?}, expected {:?}",
                bad.shape(),
                (d_out, d_in)
            )));
        }
        let mut sum = CMatrix::zeros(d_in, d_in);
        for k in &kraus {
            sum = &sum + &k.adjoint().matmul(k);
        }
        let defect = (&sum - &CMatrix::identity(d_in)).max_abs();
        if defect > COMPLETENESS_TOL || defect.is_nan() {
            return Err(Error::Incomplete { defect });
        }
        Ok(Self { kraus, d_in, d_out })
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// `min{d_in, d_out}`, the dimension entering every bound formula.
    pub fn min_dim(&self) -> usize {
        self.d_in.min(self.d_out)
    }

    /// `sum_k K_k X K_k^dagger` for an arbitrary operator `X`.
    pub fn apply_operator(&self, x: &CMatrix) -> CMatrix {
        assert_eq!(x.shape(), (self.d_in, self.d_in), "channel input shape");
        let mut out = CMatrix::zeros(self.d_out, self.d_out);
        for k in &self.kraus {
            out = &out + &k.sandwich(x);
        }
        out
    }

    /// Adjoint map `sum_k K_k^dagger Y K_k`.
    pub fn apply_adjoint(&self, y: &CMatrix) -> CMatrix {
        assert_eq!(y.shape(), (self.d_out, self.d_out), "adjoint input shape");
        let mut out = CMatrix::zeros(self.d_in, self.d_in);
        for k in &self.kraus {
            out = &out + &k.adjoint().matmul(y).matmul(k);
        }
        out
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.d_in {
            return Err(Error::DimensionMismatch(format!(
                "{}-dim state into a channel with d_in = {}",
                rho.dim(),
                self.d_in
            )));
        }
        Ok(DensityMatrix::from_trusted(self.apply_operator(rho.matrix())))
    }

    pub fn stinespring(&self) -> StinespringIsometry {
        let d_env = self.kraus.len();
        let v = CMatrix::from_fn(self.d_out * d_env, self.d_in, |row, a| {
            self.kraus[row % d_env][(row / d_env, a)]
        });
        StinespringIsometry {
            v,
            d_in: self.d_in,
            d_out: self.d_out,
            d_env,
        }
    }

    /// The complementary channel `A -> E`; its `j`-th Kraus operator is the
    /// `d_E x d_A` slice of `V` at output index `j` of `B`.
    pub fn complement(&self) -> KrausChannel {
        let d_env = self.kraus.len();
        let kraus = (0..self.d_out)
            .map(|j| CMatrix::from_fn(d_env, self.d_in, |k, a| self.kraus[k][(j, a)]))
            .collect();
        KrausChannel {
            kraus,
            d_in: self.d_in,
            d_out: d_env,
        }
    }

    /// `Phi (x) Id_R` with Kraus operators `K_k (x) I_R`, acting on `A (x) R`.
    pub fn tensor_with_identity(&self, d_r: usize) -> KrausChannel {
        let id = CMatrix::identity(d_r);
        KrausChannel {
            kraus: self.kraus.iter().map(|k| tensor(k, &id)).collect(),
            d_in: self.d_in * d_r,
            d_out: self.d_out * d_r,
        }
    }

    /// `(Phi (x) Id)(sum_ij |i><j| (x) |i><j|)` on `B (x) A`.
    pub fn choi(&self) -> ChoiMatrix {
        let d = self.d_in;
        let mut mat = CMatrix::zeros(self.d_out * d, self.d_out * d);
        for i in 0..d {
            for j in 0..d {
                let block = self.apply_operator(&CMatrix::unit(d, d, i, j));
                let unit = CMatrix::unit(d, d, i, j);
                mat = &mat + &tensor(&block, &unit);
            }
        }
        ChoiMatrix {
            mat,
            d_in: self.d_in,
            d_out: self.d_out,
        }
    }
}

/// Isometry `V: H_A -> H_B (x) H_E`.
#[derive(Clone, Debug, PartialEq)]
pub struct StinespringIsometry {
    pub v: CMatrix,
    pub d_in: usize,
    pub d_out: usize,
    pub d_env: usize,
}

impl StinespringIsometry {
    /// `V rho V^dagger` on `B (x) E`.
    pub fn dilate(&self, rho: &CMatrix) -> CMatrix {
        self.v.sandwich(rho)
    }

    /// `Tr_E V rho V^dagger`
    pub fn channel_output(&self, rho: &CMatrix) -> CMatrix {
        partial_trace_op(&self.dilate(rho), (self.d_out, self.d_env), Subsystem::B)
    }

    /// `Tr_B V rho V^dagger`
    pub fn environment_output(&self, rho: &CMatrix) -> CMatrix {
        partial_trace_op(&self.dilate(rho), (self.d_out, self.d_env), Subsystem::A)
    }

    /// Max entrywise `|V^dagger V - I|`.
    pub fn isometry_defect(&self) -> f64 {
        (&self.v.adjoint().matmul(&self.v) - &CMatrix::identity(self.d_in)).max_abs()
    }
}

/// Unnormalized Choi matrix on `B (x) A` with trace `d_A`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    pub mat: CMatrix,
    pub d_in: usize,
    pub d_out: usize,
}

/// `I_c(Phi, rho) = H(Phi(rho)) - H(complement(Phi)(rho))`.
pub fn channel_coherent_information(
    phi: &KrausChannel,
    rho: &DensityMatrix,
    base: LogBase,
) -> Result<f64> {
    let out = phi.apply(rho)?;
    let env = phi.complement().apply(rho)?;
    Ok(von_neumann_entropy(&out, base)? - von_neumann_entropy(&env, base)?)
}

/// `L(Phi, rho) = H(rho) - H(complement(Phi)(rho))`.
pub fn channel_l(phi: &KrausChannel, rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    let env = phi.complement().apply(rho)?;
    Ok(von_neumann_entropy(rho, base)? - von_neumann_entropy(&env, base)?)
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("{name} = {p} outside [0, 1]")));
    }
    Ok(())
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension {d} < 2")));
    }
    Ok(())
}

/// Erasure channel `d -> d + 1`: `rho -> (1 - p) rho (+) p Tr(rho) |flag><flag|`, flag last.
///
/// Kraus order: `sqrt(1 - p) J`, then `sqrt(p) |flag><i|` for `i = 0..d`.
pub fn erasure(d: usize, p: f64) -> Result<KrausChannel> {
    check_dim(d)?;
    check_prob("p", p)?;
    let keep = C64::new((1.0 - p).sqrt(), 0.0);
    let erase = C64::new(p.sqrt(), 0.0);
    let mut kraus = Vec::with_capacity(d + 1);
    kraus.push(CMatrix::from_fn(d + 1, d, |b, a| if a == b { keep } else { C64::new(0.0, 0.0) }));
    for i in 0..d {
        kraus.push(CMatrix::unit(d + 1, d, d, i).scale(erase));
    }
    KrausChannel::new(kraus)
}

/// Canonical injection of `d_in` into `d_out >= d_in` as a single Kraus operator.
pub fn identity_embedding(d_in: usize, d_out: usize) -> Result<KrausChannel> {
    if d_in == 0 || d_out < d_in {
        return Err(Error::OutOfRange(format!(
            "identity embedding needs 1 <= d_in <= d_out, got ({d_in}, {d_out})"
        )));
    }
    KrausChannel::new(vec![CMatrix::from_fn(d_out, d_in, |b, a| {
        C64::new(if a == b { 1.0 } else { 0.0 }, 0.0)
    })])
}

/// `rho -> (1 - lambda) rho + lambda Tr(rho) I/d`.
///
/// Kraus order: `sqrt(1 - lambda) I`, then `sqrt(lambda/d) |i><j|` row-major in `(i, j)`.
pub fn depolarizing(d: usize, lambda: f64) -> Result<KrausChannel> {
    check_dim(d)?;
    check_prob("lambda", lambda)?;
    let mut kraus = vec![CMatrix::identity(d).scale_real((1.0 - lambda).sqrt())];
    kraus.extend(matrix_units(d, (lambda / d as f64).sqrt()));
    KrausChannel::new(kraus)
}

/// `rho -> Tr(rho) I/d` with the `d^2` Kraus operators `|i><j| / sqrt(d)`.
pub fn completely_depolarizing(d: usize) -> Result<KrausChannel> {
    check_dim(d)?;
    KrausChannel::new(matrix_units(d, 1.0 / (d as f64).sqrt()).collect())
}

fn matrix_units(d: usize, scale: f64) -> impl Iterator<Item = CMatrix> {
    (0..d * d).map(move |ij| CMatrix::unit(d, d, ij / d, ij % d).scale_real(scale))
}
