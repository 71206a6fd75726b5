//! Exact arithmetic for the shift class: operators `T(p) + F` on `ℓ²(ℕ)`,
//! where `p` is a Laurent polynomial in the shift and `F` is a finitely
//! supported perturbation.
//!
//! The matrix convention is `A[i][j] = c_{i−j} + F[i][j]`, so the symbol `z`
//! is the unilateral shift `S` (subdiagonal ones, `S e_j = e_{j+1}`).
//! Products, adjoints and defect operators stay inside the class and are
//! computed in closed form; the corner correction of a Toeplitz product is
//! the finite sum `−Σ_{k<0} p_{i−k} q_{k−j}`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::numerics::{CMat, C64};

/// Coefficients below this are dropped during canonicalization.
pub const CANON_EPS: f64 = 1e-14;

/// Finite-support Laurent polynomial `Σ c_k z^k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaurentSymbol {
    coeffs: BTreeMap<i64, C64>,
}

impl LaurentSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, C64::new(1.0, 0.0))
    }

    pub fn monomial(degree: i64, coeff: C64) -> Self {
        let mut s = Self::default();
        s.set(degree, coeff);
        s
    }

    pub fn from_pairs(pairs: &[(i64, C64)]) -> Self {
        let mut s = Self::default();
        for &(k, c) in pairs {
            s.add_to(k, c);
        }
        s
    }

    pub fn set(&mut self, degree: i64, coeff: C64) {
        if coeff.norm() <= CANON_EPS {
            self.coeffs.remove(&degree);
        } else {
            self.coeffs.insert(degree, coeff);
        }
    }

    pub fn add_to(&mut self, degree: i64, coeff: C64) {
        let cur = self.coeff(degree) + coeff;
        self.set(degree, cur);
    }

    pub fn coeff(&self, degree: i64) -> C64 {
        self.coeffs.get(&degree).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_min(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn degree_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Largest |degree| appearing; 0 for the zero symbol.
    pub fn band(&self) -> usize {
        self.coeffs
            .keys()
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_to(k, c);
        }
        out
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut out = Self::default();
        for (k, c) in self.iter() {
            out.set(k, c * factor);
        }
        out
    }

    /// Laurent product (convolution of coefficients).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (k1, c1) in self.iter() {
            for (k2, c2) in other.iter() {
                out.add_to(k1 + k2, c1 * c2);
            }
        }
        out
    }

    /// Symbol of the adjoint: degrees reflected, coefficients conjugated.
    pub fn conj_reflect(&self) -> Self {
        let mut out = Self::default();
        for (k, c) in self.iter() {
            out.set(-k, c.conj());
        }
        out
    }

    /// Evaluate at `e^{iθ}`.
    pub fn eval(&self, theta: f64) -> C64 {
        let mut acc = C64::default();
        for (k, c) in self.iter() {
            acc += c * C64::from_polar(1.0, k as f64 * theta);
        }
        acc
    }

    /// Sup of `|p|` over `samples` equispaced circle points.
    pub fn circle_sup(&self, samples: usize) -> f64 {
        let n = samples.max(1);
        (0..n)
            .map(|j| self.eval(2.0 * std::f64::consts::PI * j as f64 / n as f64).norm())
            .fold(0.0, f64::max)
    }
}

/// Finitely supported matrix correction, indices in `ℕ²`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FinitePerturbation {
    entries: BTreeMap<(usize, usize), C64>,
}

impl FinitePerturbation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: &[(usize, usize, C64)]) -> Self {
        let mut f = Self::default();
        for &(i, j, v) in entries {
            f.add_to(i, j, v);
        }
        f
    }

    pub fn matrix_unit(i: usize, j: usize) -> Self {
        Self::from_entries(&[(i, j, C64::new(1.0, 0.0))])
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        if v.norm() <= CANON_EPS {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: C64) {
        let cur = self.get(i, j) + v;
        self.set(i, j, cur);
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries.get(&(i, j)).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Smallest `N` with all entries inside `[0, N)²`.
    pub fn support_bound(&self) -> usize {
        self.entries
            .keys()
            .map(|&(i, j)| i.max(j) + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn row_bound(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(0)
    }

    pub fn col_bound(&self) -> usize {
        self.entries.keys().map(|&(_, j)| j + 1).max().unwrap_or(0)
    }

    pub fn max_coeff(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, v) in other.iter() {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut out = Self::default();
        for (i, j, v) in self.iter() {
            out.set(i, j, v * factor);
        }
        out
    }

    /// Transpose-conjugate.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::default();
        for (i, j, v) in self.iter() {
            out.set(j, i, v.conj());
        }
        out
    }

    /// Dense matrix of the leading `n × n` corner.
    pub fn window(&self, n: usize) -> CMat {
        let mut m = CMat::zeros((n, n));
        for (i, j, v) in self.iter() {
            if i < n && j < n {
                m[[i, j]] = v;
            }
        }
        m
    }

    pub fn from_window(m: &CMat) -> Self {
        let mut f = Self::default();
        for ((i, j), &v) in m.indexed_iter() {
            f.set(i, j, v);
        }
        f
    }
}

/// `T(symbol) + perturbation` acting on `ℓ²(ℕ)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ShiftClassOperator {
    pub symbol: LaurentSymbol,
    pub perturbation: FinitePerturbation,
}

impl ShiftClassOperator {
    pub fn new(symbol: LaurentSymbol, perturbation: FinitePerturbation) -> Self {
        ShiftClassOperator {
            symbol,
            perturbation,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::new(LaurentSymbol::one(), FinitePerturbation::zero())
    }

    /// `S^k` for `k ≥ 0`, `S*^{|k|}` for `k < 0`.
    pub fn shift_power(k: i64) -> Self {
        Self::new(
            LaurentSymbol::monomial(k, C64::new(1.0, 0.0)),
            FinitePerturbation::zero(),
        )
    }

    pub fn from_perturbation(perturbation: FinitePerturbation) -> Self {
        Self::new(LaurentSymbol::zero(), perturbation)
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.symbol.coeff(i as i64 - j as i64) + self.perturbation.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.symbol.is_zero() && self.perturbation.is_zero()
    }

    /// Largest coefficient magnitude over symbol and perturbation; this is
    /// the structural norm used by exact equality predicates.
    pub fn max_coeff(&self) -> f64 {
        self.symbol.max_coeff().max(self.perturbation.max_coeff())
    }

    /// Bound `N` such that the operator agrees with its symbol outside
    /// `[0, N)²`, plus the symbol band for margin computations.
    pub fn support_bound(&self) -> usize {
        self.perturbation.support_bound()
    }

    pub fn band(&self) -> usize {
        self.symbol.band()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.symbol.add(&other.symbol),
            self.perturbation.add(&other.perturbation),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::new(self.symbol.scale(factor), self.perturbation.scale(factor))
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.symbol.conj_reflect(), self.perturbation.adjoint())
    }

    /// Exact product within the class.
    ///
    /// `T(p)·T(q) = T(pq) + C` with the corner correction
    /// `C[i][j] = −Σ_{k<0} p_{i−k} q_{k−j}`; cross terms `T(p)·F`, `F·T(q)`
    /// and `F_A·F_B` are finitely supported and accumulated directly.
    pub fn mul(&self, other: &Self) -> Self {
        let p = &self.symbol;
        let q = &other.symbol;
        let mut pert = toeplitz_corner_correction(p, q);

        // T(p) · F_B
        for (k, j, v) in other.perturbation.iter() {
            for (d, c) in p.iter() {
                let i = k as i64 + d;
                if i >= 0 {
                    pert.add_to(i as usize, j, c * v);
                }
            }
        }
        // F_A · T(q)
        for (i, k, v) in self.perturbation.iter() {
            for (d, c) in q.iter() {
                let j = k as i64 - d;
                if j >= 0 {
                    pert.add_to(i, j as usize, v * c);
                }
            }
        }
        // F_A · F_B
        for (i, k, v) in self.perturbation.iter() {
            for (k2, j, w) in other.perturbation.iter() {
                if k == k2 {
                    pert.add_to(i, j, v * w);
                }
            }
        }

        let out = Self::new(p.mul(q), pert);
        debug_assert!(
            product_matches_dense_window(self, other, &out),
            "class product disagrees with dense window oracle"
        );
        out
    }

    /// Defect operators `(1 − A*A, 1 − AA*)`.
    pub fn defects(&self) -> (ShiftClassOperator, ShiftClassOperator) {
        let one = Self::identity();
        let ad = self.adjoint();
        let left = one.sub(&ad.mul(self));
        let right = one.sub(&self.mul(&ad));
        (left, right)
    }

    /// True when the defect is purely a finite perturbation.
    pub fn defect_is_finite_rank(defect: &ShiftClassOperator) -> bool {
        defect.symbol.is_zero()
    }

    pub fn is_isometry(&self, equality_tol: f64) -> bool {
        let (left, _) = self.defects();
        left.max_coeff() <= equality_tol
    }

    pub fn is_coisometry(&self, equality_tol: f64) -> bool {
        let (_, right) = self.defects();
        right.max_coeff() <= equality_tol
    }

    pub fn is_unitary(&self, equality_tol: f64) -> bool {
        let (left, right) = self.defects();
        left.max_coeff() <= equality_tol && right.max_coeff() <= equality_tol
    }

    /// Leading `n × n` compression.
    pub fn truncate(&self, n: usize) -> CMat {
        let mut m = CMat::zeros((n, n));
        for (d, c) in self.symbol.iter() {
            // Fill the d-th diagonal (row − col = d).
            if d >= 0 {
                let d = d as usize;
                for j in 0..n.saturating_sub(d) {
                    m[[j + d, j]] = c;
                }
            } else {
                let d = (-d) as usize;
                for i in 0..n.saturating_sub(d) {
                    m[[i, i + d]] += c;
                }
            }
        }
        for (i, j, v) in self.perturbation.iter() {
            if i < n && j < n {
                m[[i, j]] += v;
            }
        }
        m
    }

    /// Exact image of a finitely supported vector. The result length covers
    /// the full support of `A·x`.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let lx = x.len();
        let sym_rows = if lx == 0 {
            0
        } else {
            (lx as i64 - 1 + self.symbol.degree_max().unwrap_or(0)).max(-1) as usize + 1
        };
        let out_len = sym_rows.max(self.perturbation.row_bound());
        let mut y = vec![C64::default(); out_len];
        for (d, c) in self.symbol.iter() {
            for (j, &xj) in x.iter().enumerate() {
                let i = j as i64 + d;
                if i >= 0 && (i as usize) < out_len {
                    y[i as usize] += c * xj;
                }
            }
        }
        for (i, j, v) in self.perturbation.iter() {
            if j < lx {
                y[i] += v * x[j];
            }
        }
        y
    }
}

fn toeplitz_corner_correction(p: &LaurentSymbol, q: &LaurentSymbol) -> FinitePerturbation {
    let mut pert = FinitePerturbation::zero();
    let pmax = p.degree_max().unwrap_or(0);
    let qmin = q.degree_min().unwrap_or(0);
    if pmax < 1 || qmin > -1 {
        return pert; // correction needs positive degrees in p and negative in q
    }
    for i in 0..pmax as usize {
        for j in 0..(-qmin) as usize {
            let klo = (i as i64 - pmax).max(j as i64 + qmin);
            let mut acc = C64::default();
            for k in klo..0 {
                acc += p.coeff(i as i64 - k) * q.coeff(k - j as i64);
            }
            if acc.norm() > 0.0 {
                pert.add_to(i, j, -acc);
            }
        }
    }
    pert
}

/// Dense window oracle used by debug assertions in `mul`.
fn product_matches_dense_window(
    a: &ShiftClassOperator,
    b: &ShiftClassOperator,
    out: &ShiftClassOperator,
) -> bool {
    let bound = a
        .support_bound()
        .max(b.support_bound())
        .max(out.support_bound());
    let n = 32usize.max(2 * bound);
    let band = a.band() + b.band();
    let big = a.truncate(n + band).dot(&b.truncate(n + band));
    let got = out.truncate(n);
    for i in 0..n {
        for j in 0..n {
            if (big[[i, j]] - got[[i, j]]).norm() > 1e-12 {
                return false;
            }
        }
    }
    true
}

/// Winding number of `θ ↦ p(e^{iθ})` around 0 using summed argument
/// increments over `samples` points.
pub fn winding_number(p: &LaurentSymbol, samples: usize) -> Result<i64> {
    let n = samples.max(256);
    let mut total = 0.0f64;
    let mut prev = p.eval(0.0);
    check_nonvanishing(prev, 0.0)?;
    for j in 1..=n {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let cur = p.eval(theta);
        if j < n {
            check_nonvanishing(cur, theta)?;
        }
        total += (cur / prev).arg();
        prev = cur;
    }
    let w = total / (2.0 * std::f64::consts::PI);
    let rounded = w.round();
    if (w - rounded).abs() >= 0.1 {
        return Err(CoreError::NumericalFailure(format!(
            "winding residual {:.3} too large at {} samples",
            (w - rounded).abs(),
            n
        )));
    }
    Ok(rounded as i64)
}

/// Winding with the default sampling policy: 256 samples, escalating to 4096
/// when the rounding residual is not comfortably small.
pub fn winding_number_auto(p: &LaurentSymbol) -> Result<i64> {
    match winding_residual(p, 256)? {
        (w, r) if r <= 0.05 => Ok(w),
        _ => winding_number(p, 4096),
    }
}

fn winding_residual(p: &LaurentSymbol, samples: usize) -> Result<(i64, f64)> {
    let n = samples.max(256);
    let mut total = 0.0f64;
    let mut prev = p.eval(0.0);
    check_nonvanishing(prev, 0.0)?;
    for j in 1..=n {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let cur = p.eval(theta);
        if j < n {
            check_nonvanishing(cur, theta)?;
        }
        total += (cur / prev).arg();
        prev = cur;
    }
    let w = total / (2.0 * std::f64::consts::PI);
    Ok((w.round() as i64, (w - w.round()).abs()))
}

fn check_nonvanishing(value: Complex64, angle: f64) -> Result<()> {
    if value.norm() <= 1e-6 {
        Err(CoreError::SymbolVanishesOnCircle {
            modulus: value.norm(),
            angle,
        })
    } else {
        Ok(())
    }
}
