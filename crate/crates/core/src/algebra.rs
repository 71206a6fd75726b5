//! The ambient algebra: an ordered direct sum of factor blocks.
//!
//! A block is either a full matrix factor of finite dimension or a shift
//! factor modeled by the Toeplitz class. Central projections are block-index
//! sets (every block is a factor, so its center is trivial), and the closed
//! two-sided ideals that the model represents are exactly the block ideals.

use std::collections::BTreeSet;

use crate::error::{CoreError, Result};
use crate::numerics::{self, CMat, C64};
use crate::shift::ShiftClassOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockShape {
    Finite { dim: usize },
    Shift,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraShape {
    blocks: Vec<BlockShape>,
}

impl AlgebraShape {
    pub fn new(blocks: Vec<BlockShape>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(CoreError::InvalidInput("shape needs at least one block".into()));
        }
        for b in &blocks {
            if let BlockShape::Finite { dim: 0 } = b {
                return Err(CoreError::InvalidInput("finite blocks need dim ≥ 1".into()));
            }
        }
        Ok(AlgebraShape { blocks })
    }

    pub fn blocks(&self) -> &[BlockShape] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn shift_block_count(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| matches!(b, BlockShape::Shift))
            .count()
    }

    /// Sub-shape made of the selected indices, in order.
    pub fn restrict(&self, selected: &BTreeSet<usize>) -> Result<AlgebraShape> {
        let blocks: Vec<BlockShape> = selected
            .iter()
            .map(|&i| {
                self.blocks
                    .get(i)
                    .copied()
                    .ok_or_else(|| CoreError::InvalidInput(format!("block index {i} out of range")))
            })
            .collect::<Result<_>>()?;
        AlgebraShape::new(blocks)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BlockPayload {
    Finite(CMat),
    Shift(ShiftClassOperator),
}

impl BlockPayload {
    pub fn matches(&self, shape: BlockShape) -> bool {
        match (self, shape) {
            (BlockPayload::Finite(m), BlockShape::Finite { dim }) => {
                m.nrows() == dim && m.ncols() == dim
            }
            (BlockPayload::Shift(_), BlockShape::Shift) => true,
            _ => false,
        }
    }

    pub fn adjoint(&self) -> BlockPayload {
        match self {
            BlockPayload::Finite(m) => BlockPayload::Finite(numerics::adjoint(m)),
            BlockPayload::Shift(a) => BlockPayload::Shift(a.adjoint()),
        }
    }

    pub fn scale(&self, factor: C64) -> BlockPayload {
        match self {
            BlockPayload::Finite(m) => BlockPayload::Finite(m.mapv(|z| z * factor)),
            BlockPayload::Shift(a) => BlockPayload::Shift(a.scale(factor)),
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            BlockPayload::Finite(m) => numerics::max_abs(m) <= tol,
            BlockPayload::Shift(a) => a.max_coeff() <= tol,
        }
    }
}

/// An element of the direct sum, one payload per block.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    shape: AlgebraShape,
    payloads: Vec<BlockPayload>,
}

impl AlgebraElement {
    pub fn new(shape: AlgebraShape, payloads: Vec<BlockPayload>) -> Result<Self> {
        if shape.len() != payloads.len() {
            return Err(CoreError::ShapeMismatch(format!(
                "{} blocks vs {} payloads",
                shape.len(),
                payloads.len()
            )));
        }
        for (i, (p, &b)) in payloads.iter().zip(shape.blocks()).enumerate() {
            if !p.matches(b) {
                return Err(CoreError::ShapeMismatch(format!(
                    "payload {i} does not match its block shape"
                )));
            }
            if let BlockPayload::Finite(m) = p {
                if !numerics::all_finite(m) {
                    return Err(CoreError::NonFiniteEntries);
                }
            }
        }
        Ok(AlgebraElement { shape, payloads })
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn payloads(&self) -> &[BlockPayload] {
        &self.payloads
    }

    pub fn payload(&self, block: usize) -> &BlockPayload {
        &self.payloads[block]
    }

    pub fn identity(shape: &AlgebraShape) -> AlgebraElement {
        let payloads = shape
            .blocks()
            .iter()
            .map(|b| match b {
                BlockShape::Finite { dim } => BlockPayload::Finite(numerics::eye(*dim)),
                BlockShape::Shift => BlockPayload::Shift(ShiftClassOperator::identity()),
            })
            .collect();
        AlgebraElement {
            shape: shape.clone(),
            payloads,
        }
    }

    pub fn zero(shape: &AlgebraShape) -> AlgebraElement {
        let payloads = shape
            .blocks()
            .iter()
            .map(|b| match b {
                BlockShape::Finite { dim } => BlockPayload::Finite(numerics::zeros(*dim, *dim)),
                BlockShape::Shift => BlockPayload::Shift(ShiftClassOperator::zero()),
            })
            .collect();
        AlgebraElement {
            shape: shape.clone(),
            payloads,
        }
    }

    /// Replace one block payload, keeping the rest.
    pub fn with_payload(&self, block: usize, payload: BlockPayload) -> Result<AlgebraElement> {
        let mut payloads = self.payloads.clone();
        payloads[block] = payload;
        AlgebraElement::new(self.shape.clone(), payloads)
    }

    fn zip_blocks(
        &self,
        other: &AlgebraElement,
        f: impl Fn(&BlockPayload, &BlockPayload) -> BlockPayload,
    ) -> Result<AlgebraElement> {
        if self.shape != other.shape {
            return Err(CoreError::ShapeMismatch("elements live in different algebras".into()));
        }
        let payloads = self
            .payloads
            .iter()
            .zip(&other.payloads)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(AlgebraElement {
            shape: self.shape.clone(),
            payloads,
        })
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.zip_blocks(other, |a, b| match (a, b) {
            (BlockPayload::Finite(x), BlockPayload::Finite(y)) => BlockPayload::Finite(x + y),
            (BlockPayload::Shift(x), BlockPayload::Shift(y)) => BlockPayload::Shift(x.add(y)),
            _ => unreachable!("shape equality guarantees matching payload kinds"),
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.zip_blocks(other, |a, b| match (a, b) {
            (BlockPayload::Finite(x), BlockPayload::Finite(y)) => BlockPayload::Finite(x.dot(y)),
            (BlockPayload::Shift(x), BlockPayload::Shift(y)) => BlockPayload::Shift(x.mul(y)),
            _ => unreachable!("shape equality guarantees matching payload kinds"),
        })
    }

    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement {
            shape: self.shape.clone(),
            payloads: self.payloads.iter().map(|p| p.adjoint()).collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> AlgebraElement {
        AlgebraElement {
            shape: self.shape.clone(),
            payloads: self.payloads.iter().map(|p| p.scale(factor)).collect(),
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.payloads.iter().all(|p| p.is_zero(tol))
    }
}

/// Central projection, represented by the set of blocks it keeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralProjection {
    shape: AlgebraShape,
    selected: BTreeSet<usize>,
}

impl CentralProjection {
    pub fn new(shape: AlgebraShape, selected: BTreeSet<usize>) -> Result<Self> {
        if let Some(&max) = selected.iter().next_back() {
            if max >= shape.len() {
                return Err(CoreError::InvalidInput(format!(
                    "selected block {max} out of range"
                )));
            }
        }
        Ok(CentralProjection { shape, selected })
    }

    pub fn full(shape: &AlgebraShape) -> Self {
        CentralProjection {
            shape: shape.clone(),
            selected: (0..shape.len()).collect(),
        }
    }

    pub fn empty(shape: &AlgebraShape) -> Self {
        CentralProjection {
            shape: shape.clone(),
            selected: BTreeSet::new(),
        }
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn selected(&self) -> &BTreeSet<usize> {
        &self.selected
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.selected.len() == self.shape.len()
    }

    pub fn complement(&self) -> CentralProjection {
        let selected = (0..self.shape.len())
            .filter(|i| !self.selected.contains(i))
            .collect();
        CentralProjection {
            shape: self.shape.clone(),
            selected,
        }
    }

    pub fn contains(&self, block: usize) -> bool {
        self.selected.contains(&block)
    }
}

/// Block ideal: the closed two-sided ideal killing a nonempty proper subset
/// of blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockIdeal {
    shape: AlgebraShape,
    killed: BTreeSet<usize>,
}

impl BlockIdeal {
    pub fn new(shape: AlgebraShape, killed: BTreeSet<usize>) -> Result<Self> {
        if killed.is_empty() || killed.len() >= shape.len() {
            return Err(CoreError::InvalidIdeal);
        }
        if let Some(&max) = killed.iter().next_back() {
            if max >= shape.len() {
                return Err(CoreError::InvalidIdeal);
            }
        }
        Ok(BlockIdeal { shape, killed })
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn killed(&self) -> &BTreeSet<usize> {
        &self.killed
    }

    pub fn surviving(&self) -> BTreeSet<usize> {
        (0..self.shape.len())
            .filter(|i| !self.killed.contains(i))
            .collect()
    }
}

/// The projection as an element: block identities on the selection, zero
/// elsewhere. Commutes with every element of the same shape.
pub fn central_projection_element(p: &CentralProjection) -> AlgebraElement {
    let payloads = p
        .shape()
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| match (p.contains(i), b) {
            (true, BlockShape::Finite { dim }) => BlockPayload::Finite(numerics::eye(*dim)),
            (false, BlockShape::Finite { dim }) => BlockPayload::Finite(numerics::zeros(*dim, *dim)),
            (true, BlockShape::Shift) => BlockPayload::Shift(ShiftClassOperator::identity()),
            (false, BlockShape::Shift) => BlockPayload::Shift(ShiftClassOperator::zero()),
        })
        .collect();
    AlgebraElement {
        shape: p.shape().clone(),
        payloads,
    }
}

/// Compression `x ↦ px` viewed in the sub-direct-sum of selected blocks.
pub fn compress(x: &AlgebraElement, p: &CentralProjection) -> Result<AlgebraElement> {
    if p.shape() != x.shape() {
        return Err(CoreError::ShapeMismatch("projection shape differs".into()));
    }
    if p.is_empty() {
        return Err(CoreError::EmptySelection);
    }
    let shape = x.shape().restrict(p.selected())?;
    let payloads = p
        .selected()
        .iter()
        .map(|&i| x.payloads[i].clone())
        .collect();
    Ok(AlgebraElement { shape, payloads })
}

/// Canonical quotient by a block ideal: deletion of the killed blocks.
pub fn quotient_map(x: &AlgebraElement, ideal: &BlockIdeal) -> Result<AlgebraElement> {
    if ideal.shape() != x.shape() {
        return Err(CoreError::ShapeMismatch("ideal shape differs".into()));
    }
    let surviving = ideal.surviving();
    let p = CentralProjection::new(x.shape().clone(), surviving)?;
    compress(x, &p)
}

/// `dist(x, I)`: in a direct sum this is exactly the norm of the restriction
/// to the surviving blocks.
pub fn ideal_distance(x: &AlgebraElement, ideal: &BlockIdeal, window: usize) -> Result<f64> {
    let image = quotient_map(x, ideal)?;
    Ok(operator_norm(&image, window))
}

/// Norm data for one element: the certified value together with the window
/// convergence diagnostics for shift blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    /// Max over blocks; finite blocks exact, shift blocks a certified lower
    /// bound (symbol sup combined with the truncation's top singular value).
    pub value: f64,
    /// True when doubling the window does not move the value materially.
    pub converged: bool,
    /// `value(2W) − value(W)`, nonnegative.
    pub gap: f64,
}

const CIRCLE_SAMPLES: usize = 1024;

fn shift_block_norm(a: &ShiftClassOperator, window: usize) -> f64 {
    let sup = a.symbol.circle_sup(CIRCLE_SAMPLES);
    let trunc = numerics::spec_norm(&a.truncate(window));
    sup.max(trunc)
}

fn block_norm(p: &BlockPayload, window: usize) -> f64 {
    match p {
        BlockPayload::Finite(m) => numerics::spec_norm(m),
        BlockPayload::Shift(a) => shift_block_norm(a, window),
    }
}

/// Operator norm: max over blocks. Finite blocks are exact (largest singular
/// value); shift blocks use the certified lower bound at the given window.
pub fn operator_norm(x: &AlgebraElement, window: usize) -> f64 {
    x.payloads
        .iter()
        .map(|p| block_norm(p, window.max(16)))
        .fold(0.0, f64::max)
}

pub fn operator_norm_report(x: &AlgebraElement, window: usize) -> NormReport {
    let w = window.max(16);
    let v1 = operator_norm(x, w);
    let has_shift = x.shape().shift_block_count() > 0;
    if !has_shift {
        return NormReport {
            value: v1,
            converged: true,
            gap: 0.0,
        };
    }
    let v2 = operator_norm(x, 2 * w);
    let gap = (v2 - v1).max(0.0);
    NormReport {
        value: v1,
        converged: gap <= 1e-7 * v2.max(1.0),
        gap,
    }
}

/// Norm of `x − y`, used for operator-equality checks.
pub fn distance(x: &AlgebraElement, y: &AlgebraElement, window: usize) -> Result<f64> {
    Ok(operator_norm(&x.sub(y)?, window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::{FinitePerturbation, LaurentSymbol};
    use ndarray::array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn m2_shift_shape() -> AlgebraShape {
        AlgebraShape::new(vec![BlockShape::Finite { dim: 2 }, BlockShape::Shift]).unwrap()
    }

    fn random_finite_element(shape: &AlgebraShape, seed: u64) -> AlgebraElement {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let payloads = shape
            .blocks()
            .iter()
            .map(|b| match b {
                BlockShape::Finite { dim } => {
                    let mut m = numerics::zeros(*dim, *dim);
                    for z in m.iter_mut() {
                        *z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    }
                    BlockPayload::Finite(m)
                }
                BlockShape::Shift => unreachable!(),
            })
            .collect();
        AlgebraElement::new(shape.clone(), payloads).unwrap()
    }

    #[test]
    fn star_algebra_axioms_on_random_elements() {
        let shape = AlgebraShape::new(vec![
            BlockShape::Finite { dim: 3 },
            BlockShape::Finite { dim: 2 },
        ])
        .unwrap();
        for seed in 0..5 {
            let x = random_finite_element(&shape, seed);
            let y = random_finite_element(&shape, seed + 100);
            let z = random_finite_element(&shape, seed + 200);
            let one = AlgebraElement::identity(&shape);

            let ix = one.mul(&x).unwrap();
            assert!(distance(&ix, &x, 16).unwrap() < 1e-12);

            let assoc_l = x.mul(&y).unwrap().mul(&z).unwrap();
            let assoc_r = x.mul(&y.mul(&z).unwrap()).unwrap();
            assert!(distance(&assoc_l, &assoc_r, 16).unwrap() < 1e-12);

            let dist_l = x.mul(&y.add(&z).unwrap()).unwrap();
            let dist_r = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
            assert!(distance(&dist_l, &dist_r, 16).unwrap() < 1e-12);

            let inv_l = x.mul(&y).unwrap().adjoint();
            let inv_r = y.adjoint().mul(&x.adjoint()).unwrap();
            assert!(distance(&inv_l, &inv_r, 16).unwrap() < 1e-12);
        }
    }

    #[test]
    fn shift_block_symbol_product() {
        let shape = AlgebraShape::new(vec![BlockShape::Shift]).unwrap();
        let zsym = AlgebraElement::new(
            shape.clone(),
            vec![BlockPayload::Shift(ShiftClassOperator::shift_power(1))],
        )
        .unwrap();
        let prod = zsym.mul(&zsym).unwrap();
        let BlockPayload::Shift(p) = prod.payload(0) else {
            panic!()
        };
        assert_eq!(p.symbol, LaurentSymbol::monomial(2, c(1.0, 0.0)));
        assert!(p.perturbation.is_zero());
        // Entrywise window-16 check against dense truncations.
        let dense = ShiftClassOperator::shift_power(1)
            .truncate(18)
            .dot(&ShiftClassOperator::shift_power(1).truncate(18));
        let got = p.truncate(16);
        for i in 0..16 {
            for j in 0..16 {
                assert!((dense[[i, j]] - got[[i, j]]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn cstar_identity_on_finite_blocks() {
        let shape = AlgebraShape::new(vec![BlockShape::Finite { dim: 4 }]).unwrap();
        for seed in 0..5 {
            let x = random_finite_element(&shape, 300 + seed);
            let lhs = operator_norm(&x.adjoint().mul(&x).unwrap(), 16);
            let rhs = operator_norm(&x, 16).powi(2);
            assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs));
        }
    }

    #[test]
    fn operator_norm_examples() {
        let shape = m2_shift_shape();
        assert!((operator_norm(&AlgebraElement::identity(&shape), 64) - 1.0).abs() < 1e-12);

        let s_only = AlgebraShape::new(vec![BlockShape::Shift]).unwrap();
        let s = AlgebraElement::new(
            s_only.clone(),
            vec![BlockPayload::Shift(ShiftClassOperator::shift_power(1))],
        )
        .unwrap();
        assert!((operator_norm(&s, 64) - 1.0).abs() < 1e-6);

        let cosine = AlgebraElement::new(
            s_only,
            vec![BlockPayload::Shift(ShiftClassOperator::new(
                LaurentSymbol::from_pairs(&[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]),
                FinitePerturbation::zero(),
            ))],
        )
        .unwrap();
        let report = operator_norm_report(&cosine, 512);
        assert!((report.value - 2.0).abs() < 1e-3);
        assert!(report.converged);
    }

    #[test]
    fn central_projection_elements() {
        let shape = m2_shift_shape();
        let full = central_projection_element(&CentralProjection::full(&shape));
        assert!(distance(&full, &AlgebraElement::identity(&shape), 32).unwrap() < 1e-15);
        let empty = central_projection_element(&CentralProjection::empty(&shape));
        assert!(empty.is_zero(1e-15));

        let sel = CentralProjection::new(shape.clone(), [0usize].into_iter().collect()).unwrap();
        let p = central_projection_element(&sel);
        let BlockPayload::Finite(head) = p.payload(0) else { panic!() };
        assert!(numerics::fro_norm(&(head - &numerics::eye(2))) < 1e-15);
        let BlockPayload::Shift(tail) = p.payload(1) else { panic!() };
        assert!(tail.is_zero());

        // Commutes with arbitrary elements of the shape.
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let mut m = numerics::zeros(2, 2);
        for z in m.iter_mut() {
            *z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        let x = AlgebraElement::new(
            shape,
            vec![
                BlockPayload::Finite(m),
                BlockPayload::Shift(ShiftClassOperator::shift_power(1)),
            ],
        )
        .unwrap();
        let d = distance(&p.mul(&x).unwrap(), &x.mul(&p).unwrap(), 64).unwrap();
        assert!(d < 1e-12);
    }

    #[test]
    fn compress_examples_and_multiplicativity() {
        let shape = m2_shift_shape();
        let u = numerics::eye(2).mapv(|z| z * C64::from_polar(1.0, 0.7));
        let x = AlgebraElement::new(
            shape.clone(),
            vec![
                BlockPayload::Finite(u),
                BlockPayload::Shift(ShiftClassOperator::shift_power(1)),
            ],
        )
        .unwrap();
        let p1 = CentralProjection::new(shape.clone(), [1usize].into_iter().collect()).unwrap();
        let compressed = compress(&x, &p1).unwrap();
        assert_eq!(compressed.shape().len(), 1);
        let BlockPayload::Shift(s) = compressed.payload(0) else { panic!() };
        assert_eq!(s, &ShiftClassOperator::shift_power(1));

        let full = CentralProjection::full(&shape);
        assert_eq!(&compress(&x, &full).unwrap(), &x);
        assert!(matches!(
            compress(&x, &CentralProjection::empty(&shape)),
            Err(CoreError::EmptySelection)
        ));

        // compress(xy) = compress(x)·compress(y) on random finite triples.
        let fin = AlgebraShape::new(vec![
            BlockShape::Finite { dim: 2 },
            BlockShape::Finite { dim: 3 },
        ])
        .unwrap();
        let p = CentralProjection::new(fin.clone(), [0usize].into_iter().collect()).unwrap();
        for seed in 0..5 {
            let a = random_finite_element(&fin, 500 + seed);
            let b = random_finite_element(&fin, 600 + seed);
            let lhs = compress(&a.mul(&b).unwrap(), &p).unwrap();
            let rhs = compress(&a, &p).unwrap().mul(&compress(&b, &p).unwrap()).unwrap();
            assert!(distance(&lhs, &rhs, 16).unwrap() < 1e-12);
        }
    }

    #[test]
    fn quotient_map_examples() {
        let shape = AlgebraShape::new(vec![
            BlockShape::Finite { dim: 2 },
            BlockShape::Finite { dim: 3 },
        ])
        .unwrap();
        let x = random_finite_element(&shape, 7);
        let ideal = BlockIdeal::new(shape.clone(), [1usize].into_iter().collect()).unwrap();
        let q = quotient_map(&x, &ideal).unwrap();
        assert_eq!(q.shape().len(), 1);
        let BlockPayload::Finite(head) = q.payload(0) else { panic!() };
        let BlockPayload::Finite(orig) = x.payload(0) else { panic!() };
        assert!(numerics::fro_norm(&(head - orig)) < 1e-15);

        // *-homomorphism on random pairs.
        for seed in 0..5 {
            let a = random_finite_element(&shape, 800 + seed);
            let b = random_finite_element(&shape, 900 + seed);
            let lhs = quotient_map(&a.mul(&b).unwrap(), &ideal).unwrap();
            let rhs = quotient_map(&a, &ideal)
                .unwrap()
                .mul(&quotient_map(&b, &ideal).unwrap())
                .unwrap();
            assert!(distance(&lhs, &rhs, 16).unwrap() < 1e-12);
            let star = quotient_map(&a.adjoint(), &ideal).unwrap();
            assert!(distance(&star, &quotient_map(&a, &ideal).unwrap().adjoint(), 16).unwrap() < 1e-15);
        }
    }

    #[test]
    fn quotient_agrees_with_complement_compression() {
        let shape = AlgebraShape::new(vec![
            BlockShape::Finite { dim: 2 },
            BlockShape::Shift,
            BlockShape::Finite { dim: 1 },
        ])
        .unwrap();
        let x = AlgebraElement::identity(&shape);
        let killed: BTreeSet<usize> = [1usize].into_iter().collect();
        let ideal = BlockIdeal::new(shape.clone(), killed.clone()).unwrap();
        let p = CentralProjection::new(shape.clone(), killed).unwrap().complement();
        assert_eq!(quotient_map(&x, &ideal).unwrap(), compress(&x, &p).unwrap());
    }

    #[test]
    fn ideal_distance_examples() {
        let shape = m2_shift_shape();
        let diag = array![
            [C64::from_polar(1.0, 0.3), c(0.0, 0.0)],
            [c(0.0, 0.0), C64::from_polar(1.0, -1.1)]
        ];
        let extreme = AlgebraElement::new(
            shape.clone(),
            vec![
                BlockPayload::Finite(diag),
                BlockPayload::Shift(ShiftClassOperator::shift_power(1)),
            ],
        )
        .unwrap();
        for kill in 0..2usize {
            let ideal = BlockIdeal::new(shape.clone(), [kill].into_iter().collect()).unwrap();
            let d = ideal_distance(&extreme, &ideal, 256).unwrap();
            assert!((d - 1.0).abs() < 1e-9, "dist = {d}");
        }

        let zero = AlgebraElement::zero(&shape);
        let ideal = BlockIdeal::new(shape.clone(), [0usize].into_iter().collect()).unwrap();
        assert!(ideal_distance(&zero, &ideal, 64).unwrap() < 1e-15);

        let half = AlgebraElement::new(
            shape.clone(),
            vec![
                BlockPayload::Finite(numerics::eye(2)),
                BlockPayload::Shift(ShiftClassOperator::identity().scale(c(0.5, 0.0))),
            ],
        )
        .unwrap();
        let kill_head = BlockIdeal::new(shape, [0usize].into_iter().collect()).unwrap();
        let d = ideal_distance(&half, &kill_head, 64).unwrap();
        assert!((d - 0.5).abs() < 1e-9);
    }

    #[test]
    fn invalid_ideals_rejected() {
        let shape = m2_shift_shape();
        assert!(BlockIdeal::new(shape.clone(), BTreeSet::new()).is_err());
        assert!(BlockIdeal::new(shape.clone(), [0usize, 1].into_iter().collect()).is_err());
        assert!(BlockIdeal::new(shape, [5usize].into_iter().collect()).is_err());
    }
}
