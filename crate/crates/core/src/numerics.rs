//! Dense complex linear algebra primitives.
//!
//! Everything else in the crate is built on the handful of decompositions
//! here. Factorizations are delegated to LAPACK (via `ndarray-linalg`); the
//! contracts this module adds on top are the partial-isometry polar factor,
//! relative rank thresholds, and clamped PSD square roots.

use ndarray::{Array1, Array2};
use ndarray_linalg::{EigVals, Eigh, SVD, UPLO};
use num_complex::Complex64;

use crate::error::{CoreError, Result};

pub type C64 = Complex64;
/// Dense complex matrix, row-major semantics.
pub type CMat = Array2<C64>;

/// Thresholds used by rank and equality decisions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative threshold for treating singular values as zero.
    pub rank_tol: f64,
    /// Threshold for `‖u*u − 1‖`-style unitarity checks.
    pub unitary_tol: f64,
    /// Threshold for structural operator-equality checks.
    pub equality_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_tol: 1e-9,
            unitary_tol: 1e-8,
            equality_tol: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        if self.rank_tol > 0.0 && self.unitary_tol > 0.0 && self.equality_tol > 0.0 {
            Ok(())
        } else {
            Err(CoreError::InvalidInput(
                "tolerances must be strictly positive".into(),
            ))
        }
    }
}

/// Singular value decomposition `A = U · diag(σ) · V*` with `σ` descending.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// Columns orthonormal, `m × k` with `k = min(m, n)`.
    pub u: CMat,
    /// Nonnegative, descending.
    pub sigma: Vec<f64>,
    /// Columns orthonormal, `n × k`; note `V`, not `V*`.
    pub v: CMat,
}

pub fn eye(n: usize) -> CMat {
    Array2::eye(n)
}

pub fn zeros(rows: usize, cols: usize) -> CMat {
    Array2::zeros((rows, cols))
}

/// Conjugate transpose.
pub fn adjoint(a: &CMat) -> CMat {
    let mut out = a.t().to_owned();
    out.mapv_inplace(|z| z.conj());
    out
}

pub fn all_finite(a: &CMat) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn fro_norm(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest singular value (spectral norm). Zero-sized matrices have norm 0.
pub fn spec_norm(a: &CMat) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    singular_values(a).map(|s| s.first().copied().unwrap_or(0.0)).unwrap_or(f64::NAN)
}

/// Singular values only (descending), skipping the U/V factors.
pub fn singular_values(a: &CMat) -> Result<Vec<f64>> {
    if !all_finite(a) {
        return Err(CoreError::NonFiniteEntries);
    }
    let (_, s, _) = a
        .svd(false, false)
        .map_err(|e| CoreError::NumericalFailure(format!("svd: {e}")))?;
    Ok(s.to_vec())
}

pub fn svd(a: &CMat) -> Result<SvdResult> {
    if !all_finite(a) {
        return Err(CoreError::NonFiniteEntries);
    }
    let (u, s, vt) = a
        .svd(true, true)
        .map_err(|e| CoreError::NumericalFailure(format!("svd: {e}")))?;
    let u = u.expect("svd: U requested");
    let vt = vt.expect("svd: Vt requested");
    let k = s.len();
    // LAPACK returns full U (m×m) and Vt (n×n); keep the thin factors.
    let u = u.slice(ndarray::s![.., ..k]).to_owned();
    let v = adjoint(&vt.slice(ndarray::s![..k, ..]).to_owned());
    Ok(SvdResult {
        u,
        sigma: s.to_vec(),
        v,
    })
}

/// Number of singular values above `rank_tol · σ_max`.
///
/// Falls back to an absolute threshold when `σ_max` underflows, so the zero
/// matrix has rank 0 instead of tripping on `0 · rank_tol`.
pub fn numeric_rank(a: &CMat, tol: &Tolerance) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let s = match singular_values(a) {
        Ok(s) => s,
        Err(_) => return 0,
    };
    let smax = s.first().copied().unwrap_or(0.0);
    if smax < 1e-300 {
        return 0;
    }
    let thresh = tol.rank_tol * smax;
    s.iter().filter(|&&x| x > thresh).count()
}

/// Polar decomposition `A = v · p`.
///
/// `p = (A*A)^{1/2}` is positive semidefinite and `v` is the partial-isometry
/// polar factor: `U·V*` restricted to singular values above the rank
/// threshold, zero on the kernel. No unitary extension is performed here.
pub fn polar(a: &CMat, tol: &Tolerance) -> Result<(CMat, CMat)> {
    let dec = svd(a)?;
    let smax = dec.sigma.first().copied().unwrap_or(0.0);
    let thresh = if smax < 1e-300 { 1e-300 } else { tol.rank_tol * smax };
    let n = a.ncols();
    let mut v = zeros(a.nrows(), n);
    let mut p = zeros(n, n);
    for (i, &s) in dec.sigma.iter().enumerate() {
        let ui = dec.u.column(i);
        let vi = dec.v.column(i);
        if s > thresh {
            for r in 0..a.nrows() {
                for c in 0..n {
                    v[[r, c]] += ui[r] * vi[c].conj();
                }
            }
        }
        for r in 0..n {
            for c in 0..n {
                p[[r, c]] += vi[r] * s * vi[c].conj();
            }
        }
    }
    Ok((v, p))
}

/// Hermitian eigendecomposition, eigenvalues ascending; columns of the
/// returned matrix are eigenvectors, `A = V · diag(λ) · V*`.
pub fn eigh(a: &CMat) -> Result<(Vec<f64>, CMat)> {
    if !all_finite(a) {
        return Err(CoreError::NonFiniteEntries);
    }
    let (vals, vecs) = a
        .eigh(UPLO::Lower)
        .map_err(|e| CoreError::NumericalFailure(format!("eigh: {e}")))?;
    // The backend hands back eigenvectors of the transposed (row-major)
    // view; conjugate so that columns satisfy A v = λ v.
    let vecs = vecs.mapv(|z| z.conj());
    debug_assert!({
        let mut d = zeros(a.nrows(), a.nrows());
        for (i, &lam) in vals.iter().enumerate() {
            d[[i, i]] = C64::new(lam, 0.0);
        }
        let recon = vecs.dot(&d).dot(&adjoint(&vecs));
        fro_norm(&(&recon - a)) <= 1e-10 * (1.0 + fro_norm(a))
    });
    Ok((vals.to_vec(), vecs))
}

/// PSD square root of a Hermitian matrix.
///
/// Eigenvalues in `[−10·rank_tol, 0)` are clamped to zero; anything more
/// negative is rejected as `NotPositive`.
pub fn psd_sqrt(a: &CMat, tol: &Tolerance) -> Result<CMat> {
    let n = a.nrows();
    if n == 0 {
        return Ok(zeros(0, 0));
    }
    let (vals, vecs) = eigh(a)?;
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -10.0 * tol.rank_tol {
        return Err(CoreError::NotPositive(min));
    }
    let mut out = zeros(n, n);
    for (i, &lam) in vals.iter().enumerate() {
        let r = lam.max(0.0).sqrt();
        if r == 0.0 {
            continue;
        }
        let col = vecs.column(i);
        for p in 0..n {
            for q in 0..n {
                out[[p, q]] += col[p] * r * col[q].conj();
            }
        }
    }
    Ok(out)
}

/// Eigenvalues (with multiplicity) of a normal matrix.
pub fn eig_normal(a: &CMat, tol: &Tolerance) -> Result<Vec<C64>> {
    if !all_finite(a) {
        return Err(CoreError::NonFiniteEntries);
    }
    let ad = adjoint(a);
    let comm = ad.dot(a) - a.dot(&ad);
    let scale = 1.0 + fro_norm(a).powi(2);
    let resid = fro_norm(&comm);
    if resid > tol.unitary_tol * scale {
        return Err(CoreError::NotNormal(resid));
    }
    let vals = a
        .eigvals()
        .map_err(|e| CoreError::NumericalFailure(format!("eig: {e}")))?;
    Ok(vals.to_vec())
}

/// Greedy nearest-neighbor multiset matching within `tol`.
pub fn multisets_match(a: &[C64], b: &[C64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| {
        (a[j].norm(), a[j].re, a[j].im)
            .partial_cmp(&(a[i].norm(), a[i].re, a[i].im))
            .unwrap()
    });
    let mut used = vec![false; b.len()];
    for &i in &order {
        let mut best: Option<(usize, f64)> = None;
        for (j, bj) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (a[i] - bj).norm();
            if best.map(|(_, bd)| d < bd).unwrap_or(true) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// Rotate a vector so its largest-magnitude entry is positive real.
/// Ties break toward the lowest index. Leaves near-zero vectors alone.
pub fn phase_normalize(v: &Array1<C64>) -> Array1<C64> {
    let mut idx = 0usize;
    let mut best = -1.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best + 1e-15 {
            best = m;
            idx = i;
        }
    }
    if best <= 1e-300 {
        return v.clone();
    }
    let phase = v[idx].conj() / v[idx].norm();
    v.mapv(|z| z * phase)
}

/// Columns of `m` phase-normalized in place by `phase_normalize`.
pub fn phase_normalize_columns(m: &CMat) -> CMat {
    let mut out = m.clone();
    for j in 0..m.ncols() {
        let col = phase_normalize(&m.column(j).to_owned());
        for i in 0..m.nrows() {
            out[[i, j]] = col[i];
        }
    }
    out
}
