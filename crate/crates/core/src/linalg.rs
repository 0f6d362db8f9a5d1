//! Dense complex matrix kernel.
//!
//! Bipartite index convention used everywhere in the crate: the basis vector
//! `|i_A> (x) |i_B>` sits at flat index `i_A * d_B + i_B`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance for Hermiticity, positivity and normalization of states.
pub const STATE_TOL: f64 = 1e-10;
/// Tolerance for Hermiticity of inputs to [`hermitian_eigen`], relative to the largest entry.
pub const EIGEN_INPUT_TOL: f64 = 1e-8;
/// Eigenvalues in `[-CLIP_TOL, 0)` are treated as zero.
pub const CLIP_TOL: f64 = 1e-10;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// `|v><v|`
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    /// Matrix unit `|i><j|` of shape `rows x cols`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = ONE;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, other: &CMatrix, s: C64) {
        assert_eq!(self.shape(), other.shape(), "add_scaled shape mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let mut out = CMatrix::zeros(self.rows, other.cols);
        let n = other.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "mat_vec shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `A rho A^dagger`
    pub fn sandwich(&self, rho: &CMatrix) -> CMatrix {
        self.matmul(rho).matmul(&self.adjoint())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max entrywise `|M - M^dagger|`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut defect: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                defect = defect.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        defect
    }

    /// `(M + M^dagger) / 2`
    pub fn symmetrized(&self) -> CMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Hilbert-Schmidt inner product `Tr(A^dagger B)`.
    pub fn inner(&self, other: &CMatrix) -> C64 {
        assert_eq!(self.shape(), other.shape(), "inner shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Real part of `Tr(A B)` for Hermitian arguments.
    pub fn trace_product_re(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = 0.0;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += (self[(i, k)] * other[(k, i)]).re;
            }
        }
        acc
    }

    fn is_diagonal(&self, tol: f64) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && self[(i, j)].norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add<&CMatrix> for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&CMatrix> for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&CMatrix> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

/// Which factor of a bipartite system an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

/// A density matrix, optionally carrying a bipartite split `(d_A, d_B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
    dims: Option<(usize, usize)>,
}

impl DensityMatrix {
    /// Validates Hermiticity, positivity and unit trace at [`STATE_TOL`].
    pub fn new(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        let defect = mat.hermitian_defect();
        if defect > STATE_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::NotNormalized { trace });
        }
        let eig = hermitian_eigen(&mat)?;
        if let Some(&min) = eig.values.first() {
            if min < -STATE_TOL {
                return Err(Error::NegativeEigenvalue { value: min });
            }
        }
        Ok(Self {
            mat: mat.symmetrized(),
            dims: None,
        })
    }

    pub fn with_dims(mat: CMatrix, dims: (usize, usize)) -> Result<Self> {
        Self::new(mat)?.set_dims(dims)
    }

    /// Wraps a matrix that is a state by construction (e.g. a channel output).
    pub(crate) fn from_trusted(mat: CMatrix) -> Self {
        debug_assert!(mat.is_square());
        Self {
            mat: mat.symmetrized(),
            dims: None,
        }
    }

    pub fn set_dims(mut self, (d_a, d_b): (usize, usize)) -> Result<Self> {
        if d_a * d_b != self.dim() || d_a == 0 || d_b == 0 {
            return Err(Error::DimensionMismatch(format!(
                "dims ({d_a}, {d_b}) do not factor {}",
                self.dim()
            )));
        }
        self.dims = Some((d_a, d_b));
        Ok(self)
    }

    /// The maximally mixed state `I/n`.
    pub fn chaotic(n: usize) -> Self {
        Self::from_trusted(CMatrix::identity(n).scale_real(1.0 / n as f64))
    }

    /// `|i><i|` in dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        Self::from_trusted(CMatrix::unit(n, n, i, i))
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            mat: CMatrix::outer(psi.vector()),
            dims: psi.dims(),
        }
    }

    /// `rho (x) sigma` with dims `(dim rho, dim sigma)`.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self {
            mat: tensor(&self.mat, &other.mat),
            dims: Some((self.dim(), other.dim())),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn dims(&self) -> Option<(usize, usize)> {
        self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Convex mixture `(1 - t) self + t other`.
    pub fn mix(&self, other: &DensityMatrix, t: f64) -> DensityMatrix {
        let mut mat = self.mat.scale_real(1.0 - t);
        mat.add_scaled(&other.mat, C64::new(t, 0.0));
        Self {
            mat,
            dims: self.dims,
        }
    }
}

/// A normalized state vector, optionally carrying a bipartite split.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    vec: Vec<C64>,
    dims: Option<(usize, usize)>,
}

impl PureState {
    pub fn new(vec: Vec<C64>) -> Result<Self> {
        let norm = vec.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(Self { vec, dims: None })
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(vec: Vec<C64>) -> Result<Self> {
        let norm = vec.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(Self {
            vec: vec.into_iter().map(|z| z / norm).collect(),
            dims: None,
        })
    }

    pub fn with_dims(mut self, (d_a, d_b): (usize, usize)) -> Result<Self> {
        if d_a * d_b != self.vec.len() {
            return Err(Error::DimensionMismatch(format!(
                "dims ({d_a}, {d_b}) do not factor {}",
                self.vec.len()
            )));
        }
        self.dims = Some((d_a, d_b));
        Ok(self)
    }

    /// `sum_i |i>|i> / sqrt(d)` on `d (x) d`.
    pub fn maximally_entangled(d: usize) -> Self {
        let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
        let mut vec = vec![ZERO; d * d];
        for i in 0..d {
            vec[i * d + i] = amp;
        }
        Self {
            vec,
            dims: Some((d, d)),
        }
    }

    pub fn vector(&self) -> &[C64] {
        &self.vec
    }

    pub fn dims(&self) -> Option<(usize, usize)> {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }
}

/// Spectral decomposition `M = V diag(values) V^dagger`, values ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// `V f(diag(values)) V^dagger`
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        let mut out = CMatrix::zeros(n, n);
        for k in 0..n {
            if fv[k] == 0.0 {
                continue;
            }
            for i in 0..n {
                let a = v[(i, k)] * fv[k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(|x| x)
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.rows()).map(|i| self.vectors[(i, k)]).collect()
    }
}

/// Kronecker product; `(a (x) b)[(i_a d_b + i_b, j_a d_b' + j_b)] = a[i_a, j_a] b[i_b, j_b]`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMatrix::zeros(ra * rb, ca * cb);
    for ia in 0..ra {
        for ja in 0..ca {
            let x = a[(ia, ja)];
            if x == ZERO {
                continue;
            }
            for ib in 0..rb {
                for jb in 0..cb {
                    out[(ia * rb + ib, ja * cb + jb)] = x * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Partial trace of an operator on `d_A (x) d_B` over the given factor.
pub fn partial_trace_op(m: &CMatrix, (d_a, d_b): (usize, usize), over: Subsystem) -> CMatrix {
    assert_eq!(m.shape(), (d_a * d_b, d_a * d_b), "partial trace shape");
    match over {
        Subsystem::B => CMatrix::from_fn(d_a, d_a, |i, j| {
            (0..d_b).map(|k| m[(i * d_b + k, j * d_b + k)]).sum()
        }),
        Subsystem::A => CMatrix::from_fn(d_b, d_b, |i, j| {
            (0..d_a).map(|k| m[(k * d_b + i, k * d_b + j)]).sum()
        }),
    }
}

/// Marginal state obtained by tracing out `over`.
pub fn partial_trace(rho: &DensityMatrix, over: Subsystem) -> Result<DensityMatrix> {
    let dims = rho.dims().ok_or(Error::MissingDims)?;
    Ok(DensityMatrix::from_trusted(partial_trace_op(
        rho.matrix(),
        dims,
        over,
    )))
}

/// Transpose of the B factor of an operator on `d_A (x) d_B`.
pub fn partial_transpose(m: &CMatrix, (d_a, d_b): (usize, usize)) -> CMatrix {
    assert_eq!(m.shape(), (d_a * d_b, d_a * d_b), "partial transpose shape");
    let mut out = CMatrix::zeros(d_a * d_b, d_a * d_b);
    for ia in 0..d_a {
        for ib in 0..d_b {
            for ja in 0..d_a {
                for jb in 0..d_b {
                    out[(ia * d_b + ib, ja * d_b + jb)] = m[(ia * d_b + jb, ja * d_b + ib)];
                }
            }
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// The input is symmetrized before decomposition. Diagonal inputs are handled
/// exactly with standard-basis eigenvectors (stable order on ties).
pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = m.hermitian_defect();
    if defect > EIGEN_INPUT_TOL * m.max_abs().max(1.0) || defect.is_nan() {
        return Err(Error::NotHermitian { defect });
    }
    let n = m.rows();
    if m.is_diagonal(0.0) {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
        let values = order.iter().map(|&i| m[(i, i)].re).collect();
        let vectors = CMatrix::from_fn(n, n, |i, k| if order[k] == i { ONE } else { ZERO });
        return Ok(HermitianEigen { values, vectors });
    }
    let eig = nalgebra::SymmetricEigen::new(m.symmetrized().to_nalgebra());
    let finite = eig.eigenvalues.iter().all(|x| x.is_finite())
        && eig.eigenvectors.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    let (raw_values, raw_vectors) = if finite {
        let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let vectors = CMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, k)]);
        (values, vectors)
    } else {
        jacobi_eigen(&m.symmetrized())
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw_values[i].total_cmp(&raw_values[j]));
    let values = order.iter().map(|&k| raw_values[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, k| raw_vectors[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Cyclic complex Jacobi; used when the tridiagonal solver breaks down on
/// heavily degenerate spectra.
fn jacobi_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.rows();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius_norm().max(1e-300);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let (jpp, jpq) = (C64::new(c, 0.0), C64::new(s, 0.0));
                let (jqp, jqq) = (phase.conj() * -s, phase.conj() * c);
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

/// Sum of singular values.
pub fn trace_norm(m: &CMatrix) -> f64 {
    let scale = m.max_abs().max(1e-300);
    if m.is_square() && m.hermitian_defect() <= 1e-12 * scale {
        if let Ok(eig) = hermitian_eigen(m) {
            return eig.values.iter().map(|x| x.abs()).sum();
        }
    }
    let svd = nalgebra::SVD::new(m.to_nalgebra(), false, false);
    svd.singular_values.iter().sum()
}

/// Hermitian sign operator `sum_i sign(lambda_i) P_i` (zero on the kernel).
pub fn hermitian_sign(m: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eigen(m)?;
    let tol = 1e-14 * m.max_abs();
    Ok(eig.map(|x| {
        if x > tol {
            1.0
        } else if x < -tol {
            -1.0
        } else {
            0.0
        }
    }))
}

/// Canonical purification `sum_i sqrt(lambda_i) |e_i> (x) |i>` on `d (x) d`,
/// eigenvalues taken in descending order (ties in eigenvector order).
pub fn purify(rho: &DensityMatrix) -> Result<PureState> {
    let d = rho.dim();
    let eig = hermitian_eigen(rho.matrix())?;
    let mut vec = vec![ZERO; d * d];
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.values[j].total_cmp(&eig.values[i]));
    for (slot, k) in order.into_iter().enumerate() {
        let lambda = eig.values[k];
        if lambda < -CLIP_TOL {
            return Err(Error::NegativeEigenvalue { value: lambda });
        }
        let amp = lambda.max(0.0).sqrt();
        for a in 0..d {
            vec[a * d + slot] = eig.vectors[(a, k)] * amp;
        }
    }
    PureState::normalized(vec)?.with_dims((d, d))
}

/// Clipped spectrum of a state; errors on eigenvalues below `-CLIP_TOL`.
pub(crate) fn clipped_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&x| {
            if x < -CLIP_TOL {
                Err(Error::NegativeEigenvalue { value: x })
            } else {
                Ok(x.max(0.0))
            }
        })
        .collect()
}
