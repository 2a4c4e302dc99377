//! Dense complex linear algebra and entropy/information functionals over
//! small Hilbert spaces.
//!
//! Everything here is a pure function on immutable inputs. All entropies are
//! in nats. Spectral decompositions follow a fixed deterministic convention
//! so that repeated runs produce byte-identical results: eigenvalues sorted
//! descending, degenerate blocks resolved against the computational basis,
//! and each eigenvector phase-fixed so its first significant component is
//! real and positive.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Max allowed entrywise deviation from Hermiticity.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Max allowed deviation of a density-matrix trace from one.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues above this (negative) floor are treated as numerical zeros.
pub const EIGENVALUE_FLOOR: f64 = -1e-12;
/// Support threshold for relative entropy: eigenvalues at or below this are
/// outside the support.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;
/// Eigenvalues closer than this are treated as one degenerate block.
pub const DEGENERACY_GAP: f64 = 1e-10;
/// Vector components smaller than this are snapped to exact zero so that
/// structurally vanishing amplitudes compare equal to 0.0 downstream.
const SNAP_TOL: f64 = 1e-13;
/// Threshold used to pick the phase-fixing component.
const PHASE_TOL: f64 = 1e-10;

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

/// Max entrywise absolute difference between two matrices.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn hermiticity_error(m: &CMat) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Shannon entropy of a probability vector, with the 0 ln 0 := 0 convention.
/// Entries below 1e-15 are skipped (zero-probability groups carry no weight).
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 1e-15)
        .map(|&p| -p * p.ln())
        .sum()
}

/// A d×d complex Hermitian, unit-trace, positive-semidefinite state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    mat: CMat,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12 entrywise), unit trace (1e-12) and
    /// positivity (eigenvalues above -1e-12).
    pub fn new(mat: CMat) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::Validation(format!(
                "density matrix must be square and nonempty, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let herm = hermiticity_error(&mat);
        if herm > HERMITICITY_TOL {
            return Err(Error::Validation(format!(
                "density matrix not Hermitian: max |A - A^dag| = {herm:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Validation(format!(
                "density matrix trace {tr} deviates from 1 beyond 1e-12"
            )));
        }
        let eigs = SymmetricEigen::new(mat.clone()).eigenvalues;
        if let Some(min) = eigs.iter().cloned().reduce(f64::min) {
            if min < EIGENVALUE_FLOOR {
                return Err(Error::Validation(format!(
                    "density matrix has negative eigenvalue {min:.3e}"
                )));
            }
        }
        let dim = mat.nrows();
        Ok(Self { dim, mat })
    }

    /// Constructor for states produced by trace-preserving internal algebra,
    /// where the invariants hold by construction.
    pub(crate) fn new_unchecked(mat: CMat) -> Self {
        let dim = mat.nrows();
        Self { dim, mat }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let x = C64::new(1.0 / dim as f64, 0.0);
        Self::new_unchecked(CMat::from_diagonal_element(dim, dim, x))
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        let dist = ClassicalDistribution::new(probs.to_vec())?;
        let d = dist.len();
        let mut m = CMat::zeros(d, d);
        for (i, &p) in dist.probabilities().iter().enumerate() {
            m[(i, i)] = C64::new(p, 0.0);
        }
        Ok(Self::new_unchecked(m))
    }

    /// Rank-one state |psi><psi| from a normalized ket.
    pub fn pure(ket: &CVec) -> Result<Self> {
        let n = ket.norm();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!("ket norm {n} deviates from 1")));
        }
        Ok(Self::new_unchecked(ket * ket.adjoint()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    /// Diagonal in the computational basis, clamped to be nonnegative.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.mat[(i, i)].re.max(0.0)).collect()
    }

    /// Diagonal entries <v_i| rho |v_i> for the columns of `basis`.
    pub fn diagonal_in(&self, basis: &CMat) -> Vec<f64> {
        (0..basis.ncols())
            .map(|i| {
                let v = basis.column(i);
                (v.adjoint() * &self.mat * v)[(0, 0)].re.max(0.0)
            })
            .collect()
    }

    /// Full dephasing in the given orthonormal basis.
    pub fn dephase_in(&self, basis: &CMat) -> DensityMatrix {
        let d = self.dim;
        let mut out = CMat::zeros(d, d);
        for i in 0..basis.ncols() {
            let v = basis.column(i);
            let p = (v.adjoint() * &self.mat * v)[(0, 0)].re;
            out += v * v.adjoint() * C64::new(p, 0.0);
        }
        DensityMatrix::new_unchecked(out)
    }

    /// Largest off-diagonal magnitude in the computational basis.
    pub fn max_offdiagonal(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    m = m.max(self.mat[(i, j)].norm());
                }
            }
        }
        m
    }
}

/// Probabilities indexed by outcome label, summing to one within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalDistribution {
    probs: Vec<f64>,
}

impl ClassicalDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Validation("empty distribution".into()));
        }
        if let Some(&p) = probs.iter().find(|&&p| p < -1e-12 || !p.is_finite()) {
            return Err(Error::Validation(format!("invalid probability {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Validation(format!(
                "probabilities sum to {sum}, deviating from 1 beyond 1e-12"
            )));
        }
        let probs = probs.into_iter().map(|p| p.max(0.0)).collect();
        Ok(Self { probs })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn entropy(&self) -> f64 {
        shannon_entropy(&self.probs)
    }
}

/// Convention-fixed eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted descending. Inside a degenerate block the basis is
/// rebuilt from projections of the computational basis onto the block
/// subspace, so fully degenerate matrices decompose into the computational
/// basis. Every vector is phase-fixed (first significant component real and
/// positive) and components below 1e-13 are snapped to exact zero.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, aligned with `eigenvalues`.
    pub eigenvectors: CMat,
}

impl SpectralDecomposition {
    /// Sum of lambda_i |v_i><v_i|, for verifying the reconstruction bound.
    pub fn reconstruct(&self) -> CMat {
        let d = self.eigenvectors.nrows();
        let mut m = CMat::zeros(d, d);
        for (i, &l) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvectors.column(i);
            m += v * v.adjoint() * C64::new(l, 0.0);
        }
        m
    }

    /// Eigenvalues clamped to [0, inf) for use as probabilities.
    pub fn clamped_probabilities(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|&l| l.max(0.0)).collect()
    }
}

fn phase_fix(v: &mut CVec) {
    let idx = (0..v.len())
        .find(|&i| v[i].norm() > PHASE_TOL)
        .unwrap_or_else(|| {
            (0..v.len())
                .max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm()))
                .unwrap_or(0)
        });
    let z = v[idx];
    let n = z.norm();
    if n > 0.0 {
        let phase = z.conj() / C64::new(n, 0.0);
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}

fn snap_and_normalize(v: &mut CVec) {
    for x in v.iter_mut() {
        if x.re.abs() < SNAP_TOL {
            x.re = 0.0;
        }
        if x.im.abs() < SNAP_TOL {
            x.im = 0.0;
        }
    }
    let n = v.norm();
    if n > 0.0 {
        *v /= C64::new(n, 0.0);
    }
}

/// Convention-fixed spectral decomposition of a Hermitian matrix.
///
/// Deterministic: identical input produces byte-identical output across runs
/// and thread counts. Returns a validation error for non-Hermitian input.
pub fn spectral_decompose(h: &CMat) -> Result<SpectralDecomposition> {
    let herm = hermiticity_error(h);
    if herm > HERMITICITY_TOL {
        return Err(Error::Validation(format!(
            "spectral_decompose: input not Hermitian, max |A - A^dag| = {herm:.3e}"
        )));
    }
    let d = h.nrows();
    let se = SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[b]
            .total_cmp(&se.eigenvalues[a])
            .then(a.cmp(&b))
    });
    let sorted_vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut sorted_vecs: Vec<CVec> = order
        .iter()
        .map(|&i| CVec::from(se.eigenvectors.column(i)))
        .collect();

    // Resolve degenerate blocks against the computational basis.
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && (sorted_vals[end - 1] - sorted_vals[end]).abs() <= DEGENERACY_GAP {
            end += 1;
        }
        if end - start > 1 {
            let block = canonical_block(&sorted_vecs[start..end]);
            for (i, v) in block.into_iter().enumerate() {
                sorted_vecs[start + i] = v;
            }
        }
        start = end;
    }

    let mut eigenvectors = CMat::zeros(d, d);
    for (i, v) in sorted_vecs.iter_mut().enumerate() {
        snap_and_normalize(v);
        phase_fix(v);
        snap_and_normalize(v);
        eigenvectors.set_column(i, v);
    }
    Ok(SpectralDecomposition {
        eigenvalues: sorted_vals,
        eigenvectors,
    })
}

/// Rebuild an orthonormal basis of the degenerate subspace from projected
/// computational-basis vectors, in index order.
fn canonical_block(vecs: &[CVec]) -> Vec<CVec> {
    let d = vecs[0].len();
    let g = vecs.len();
    // Projector onto the block subspace.
    let mut proj = CMat::zeros(d, d);
    for v in vecs {
        proj += v * v.adjoint();
    }
    let mut out: Vec<CVec> = Vec::with_capacity(g);
    for j in 0..d {
        if out.len() == g {
            break;
        }
        let mut w = CVec::from(proj.column(j));
        for u in &out {
            let overlap = (u.adjoint() * &w)[(0, 0)];
            w -= u * overlap;
        }
        let n = w.norm();
        if n > 1e-6 {
            out.push(w / C64::new(n, 0.0));
        }
    }
    // Numerical fallback: fill from the original vectors.
    for v in vecs {
        if out.len() == g {
            break;
        }
        let mut w = v.clone();
        for u in &out {
            let overlap = (u.adjoint() * &w)[(0, 0)];
            w -= u * overlap;
        }
        let n = w.norm();
        if n > 1e-8 {
            out.push(w / C64::new(n, 0.0));
        }
    }
    out
}

/// Von Neumann entropy -Tr[rho ln rho] in nats, evaluated on the clamped
/// spectrum with 0 ln 0 := 0.
pub fn vn_entropy(rho: &DensityMatrix) -> f64 {
    let eigs = SymmetricEigen::new(rho.matrix().clone()).eigenvalues;
    shannon_entropy(&eigs.iter().map(|&l| l.max(0.0)).collect::<Vec<_>>())
}

/// Quantum relative entropy S(rho || tau) = Tr[rho (ln rho - ln tau)].
///
/// Returns +infinity when the support of `rho` is not contained in the
/// support of `tau` (support test at eigenvalue threshold 1e-12).
pub fn relative_entropy(rho: &DensityMatrix, tau: &DensityMatrix) -> Result<f64> {
    if rho.dim() != tau.dim() {
        return Err(Error::Validation(format!(
            "relative_entropy: dimension mismatch {} vs {}",
            rho.dim(),
            tau.dim()
        )));
    }
    let tr_rho_ln_rho = -vn_entropy(rho);
    let dec = spectral_decompose(tau.matrix())?;
    let weights = rho.diagonal_in(&dec.eigenvectors);
    let mut kernel_mass = 0.0;
    let mut tr_rho_ln_tau = 0.0;
    for (i, &l) in dec.eigenvalues.iter().enumerate() {
        if l > SUPPORT_THRESHOLD {
            tr_rho_ln_tau += weights[i] * l.ln();
        } else {
            kernel_mass += weights[i];
        }
    }
    if kernel_mass > SUPPORT_THRESHOLD {
        return Ok(f64::INFINITY);
    }
    Ok(tr_rho_ln_rho - tr_rho_ln_tau)
}

/// Holevo information chi = S(avg) - sum_y p_y S(rho^y) of a classical-quantum
/// ensemble.
pub fn holevo_information(ensemble: &[(f64, DensityMatrix)]) -> Result<f64> {
    if ensemble.is_empty() {
        return Err(Error::Validation("holevo_information: empty ensemble".into()));
    }
    let dim = ensemble[0].1.dim();
    ClassicalDistribution::new(ensemble.iter().map(|(p, _)| *p).collect())?;
    let mut avg = CMat::zeros(dim, dim);
    let mut mean_entropy = 0.0;
    for (p, rho) in ensemble {
        if rho.dim() != dim {
            return Err(Error::Validation(
                "holevo_information: mixed dimensions in ensemble".into(),
            ));
        }
        if *p > 1e-15 {
            avg += rho.matrix() * C64::new(*p, 0.0);
            mean_entropy += p * vn_entropy(rho);
        }
    }
    Ok(vn_entropy(&DensityMatrix::new_unchecked(avg)) - mean_entropy)
}

/// Conditional Holevo information
/// chi(rho : y2 | y1) = sum_{y1} P[y1] S(rho^{y1})
///                    - sum_{y1,y2} P[y1,y2] S(rho^{y1,y2}).
///
/// Groups with probability below 1e-15 are skipped (0 ln 0 convention).
pub fn conditional_holevo<K1, K2>(ensemble: &[((K1, K2), f64, DensityMatrix)]) -> Result<f64>
where
    K1: Ord + Clone,
    K2: Ord + Clone,
{
    use std::collections::BTreeMap;
    if ensemble.is_empty() {
        return Err(Error::Validation("conditional_holevo: empty ensemble".into()));
    }
    let dim = ensemble[0].2.dim();
    ClassicalDistribution::new(ensemble.iter().map(|(_, p, _)| *p).collect())?;
    let mut groups: BTreeMap<K1, (f64, CMat)> = BTreeMap::new();
    let mut joint_term = 0.0;
    for ((y1, _y2), p, rho) in ensemble {
        if *p <= 1e-15 {
            continue;
        }
        joint_term += p * vn_entropy(rho);
        let entry = groups
            .entry(y1.clone())
            .or_insert_with(|| (0.0, CMat::zeros(dim, dim)));
        entry.0 += p;
        entry.1 += rho.matrix() * C64::new(*p, 0.0);
    }
    let mut marginal_term = 0.0;
    for (p, sum) in groups.values() {
        if *p <= 1e-15 {
            continue;
        }
        let state = DensityMatrix::new_unchecked(sum / C64::new(*p, 0.0));
        marginal_term += p * vn_entropy(&state);
    }
    Ok(marginal_term - joint_term)
}
