use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn sector_dim(trunc: usize, d: isize) -> usize {
    let a = d.unsigned_abs();
    if a > trunc {
        0
    } else {
        trunc + 1 - a
    }
}

/// State `(n₁, n₂)` at position `i` of the sector `n₁ − n₂ = d`.
fn sector_state(d: isize, i: usize) -> (usize, usize) {
    if d >= 0 {
        (i + d as usize, i)
    } else {
        (i, i + d.unsigned_abs())
    }
}

fn sector_of(n1: usize, n2: usize) -> (isize, usize) {
    (n1 as isize - n2 as isize, n1.min(n2))
}

/// Two-mode state with both occupation numbers cut off at `trunc`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockTensor {
    trunc: usize,
    /// `amps[(n₁, n₂)]`.
    amps: DMatrix<Complex64>,
}

impl FockTensor {
    pub fn vacuum(trunc: usize) -> Self {
        Self::basis(trunc, 0, 0)
    }

    pub fn basis(trunc: usize, n1: usize, n2: usize) -> Self {
        let mut amps = DMatrix::from_element(trunc + 1, trunc + 1, ZERO);
        amps[(n1, n2)] = ONE;
        Self { trunc, amps }
    }

    pub fn from_amps(amps: DMatrix<Complex64>) -> Result<Self> {
        if amps.nrows() != amps.ncols() || amps.nrows() == 0 {
            return Err(Error::Domain("Fock amplitudes must be a nonempty square array".into()));
        }
        Ok(Self { trunc: amps.nrows() - 1, amps })
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn amp(&self, n1: usize, n2: usize) -> Complex64 {
        self.amps[(n1, n2)]
    }

    pub fn amps(&self) -> &DMatrix<Complex64> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `1 − ‖ψ‖²`, the weight lost through the truncation boundary.
    pub fn leakage(&self) -> f64 {
        1.0 - self.norm_sqr()
    }

    fn sector(&self, d: isize) -> Vec<Complex64> {
        (0..sector_dim(self.trunc, d))
            .map(|i| {
                let (n1, n2) = sector_state(d, i);
                self.amps[(n1, n2)]
            })
            .collect()
    }
}

/// Linear operator on the truncated two-mode space that changes `n₁ − n₂` by
/// a fixed `shift`.
///
/// Every operator built from `a₁`, `a₁†`, `a₂`, `a₂†` monomials with equal
/// `n₁ − n₂` change has this form, so the operator is kept as one dense block
/// per source sector instead of a single `(N+1)² × (N+1)²` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    trunc: usize,
    shift: isize,
    /// `blocks[d + N]` maps sector `d` to sector `d + shift`.
    blocks: Vec<DMatrix<Complex64>>,
}

impl FockOperator {
    fn sectors(trunc: usize) -> impl Iterator<Item = isize> {
        let n = trunc as isize;
        -n..=n
    }

    fn empty_block(&self, d: isize) -> DMatrix<Complex64> {
        DMatrix::from_element(
            sector_dim(self.trunc, d + self.shift),
            sector_dim(self.trunc, d),
            ZERO,
        )
    }

    /// Operator whose action on each basis state is a single basis state times a coefficient.
    ///
    /// `action(n₁, n₂)` returns `None` when the image falls outside the truncation.
    pub fn from_basis_map(
        trunc: usize,
        shift: isize,
        action: impl Fn(usize, usize) -> Option<((usize, usize), Complex64)>,
    ) -> Self {
        let blocks = Self::sectors(trunc)
            .map(|d| {
                let mut b = DMatrix::from_element(
                    sector_dim(trunc, d + shift),
                    sector_dim(trunc, d),
                    ZERO,
                );
                for i in 0..sector_dim(trunc, d) {
                    let (n1, n2) = sector_state(d, i);
                    if let Some(((m1, m2), c)) = action(n1, n2) {
                        if m1 > trunc || m2 > trunc {
                            continue;
                        }
                        let (e, r) = sector_of(m1, m2);
                        debug_assert_eq!(e, d + shift);
                        b[(r, i)] += c;
                    }
                }
                b
            })
            .collect();
        Self { trunc, shift, blocks }
    }

    pub fn identity(trunc: usize) -> Self {
        Self::from_basis_map(trunc, 0, |n1, n2| Some(((n1, n2), ONE)))
    }

    pub fn zero(trunc: usize, shift: isize) -> Self {
        let mut op = Self { trunc, shift, blocks: Vec::new() };
        op.blocks = Self::sectors(trunc).map(|d| op.empty_block(d)).collect();
        op
    }

    /// `a₁`.
    pub fn annihilate_1(trunc: usize) -> Self {
        Self::from_basis_map(trunc, -1, |n1, n2| {
            (n1 > 0).then(|| ((n1 - 1, n2), Complex64::new((n1 as f64).sqrt(), 0.0)))
        })
    }

    /// `a₁†`, truncated so that `a₁†|N, n₂⟩ = 0`.
    pub fn create_1(trunc: usize) -> Self {
        Self::annihilate_1(trunc).adjoint()
    }

    /// `a₂`.
    pub fn annihilate_2(trunc: usize) -> Self {
        Self::from_basis_map(trunc, 1, |n1, n2| {
            (n2 > 0).then(|| ((n1, n2 - 1), Complex64::new((n2 as f64).sqrt(), 0.0)))
        })
    }

    pub fn create_2(trunc: usize) -> Self {
        Self::annihilate_2(trunc).adjoint()
    }

    /// `ã₁† = Σ_n |n+1⟩⟨n|` on mode 1.
    pub fn isometry_1(trunc: usize) -> Self {
        Self::from_basis_map(trunc, 1, |n1, n2| Some(((n1 + 1, n2), ONE)))
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn shift(&self) -> isize {
        self.shift
    }

    /// Block mapping sector `d` to sector `d + shift`.
    pub fn block(&self, d: isize) -> &DMatrix<Complex64> {
        &self.blocks[(d + self.trunc as isize) as usize]
    }

    pub fn adjoint(&self) -> Self {
        let n = self.trunc as isize;
        let blocks = Self::sectors(self.trunc)
            .map(|e| {
                let d = e - self.shift;
                if d.abs() <= n {
                    self.block(d).adjoint()
                } else {
                    DMatrix::from_element(0, sector_dim(self.trunc, e), ZERO)
                }
            })
            .collect();
        Self { trunc: self.trunc, shift: -self.shift, blocks }
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &FockOperator) -> Self {
        assert_eq!(self.trunc, rhs.trunc, "truncation mismatch");
        let n = self.trunc as isize;
        let shift = self.shift + rhs.shift;
        let out = Self { trunc: self.trunc, shift, blocks: Vec::new() };
        let blocks = Self::sectors(self.trunc)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|d| {
                let mid = d + rhs.shift;
                if mid.abs() <= n {
                    self.block(mid) * rhs.block(d)
                } else {
                    out.empty_block(d)
                }
            })
            .collect();
        Self { blocks, ..out }
    }

    fn zip_with(&self, rhs: &FockOperator, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.trunc, rhs.trunc, "truncation mismatch");
        assert_eq!(self.shift, rhs.shift, "sector shift mismatch");
        let blocks = self
            .blocks
            .iter()
            .zip(&rhs.blocks)
            .map(|(a, b)| a.zip_map(b, &f))
            .collect();
        Self { trunc: self.trunc, shift: self.shift, blocks }
    }

    pub fn add(&self, rhs: &FockOperator) -> Self {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &FockOperator) -> Self {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            trunc: self.trunc,
            shift: self.shift,
            blocks: self.blocks.iter().map(|b| b * c).collect(),
        }
    }

    /// `[self, rhs]`.
    pub fn commutator(&self, rhs: &FockOperator) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn apply(&self, psi: &FockTensor) -> FockTensor {
        assert_eq!(self.trunc, psi.trunc, "truncation mismatch");
        let n = self.trunc as isize;
        let mut amps = DMatrix::from_element(self.trunc + 1, self.trunc + 1, ZERO);
        for d in Self::sectors(self.trunc) {
            let e = d + self.shift;
            if e.abs() > n {
                continue;
            }
            let v = nalgebra::DVector::from_vec(psi.sector(d));
            let w = self.block(d) * v;
            for (i, val) in w.iter().enumerate() {
                let (n1, n2) = sector_state(e, i);
                amps[(n1, n2)] = *val;
            }
        }
        FockTensor { trunc: self.trunc, amps }
    }

    /// Frobenius norm of the columns belonging to basis states with `n₁, n₂ ≤ level`.
    pub fn interior_norm(&self, level: usize) -> f64 {
        let n = self.trunc as isize;
        let mut s = 0.0;
        for d in Self::sectors(self.trunc) {
            let b = self.block(d);
            for i in 0..sector_dim(self.trunc, d) {
                let (n1, n2) = sector_state(d, i);
                if n1 <= level && n2 <= level && (d + self.shift).abs() <= n {
                    s += b.column(i).iter().map(|c| c.norm_sqr()).sum::<f64>();
                }
            }
        }
        s.sqrt()
    }

    /// Largest `|⟨m|op|n⟩|` with `n` an interior state and `m` within `margin` of the cutoff.
    pub fn boundary_reach(&self, level: usize, margin: usize) -> f64 {
        let n = self.trunc as isize;
        let top = self.trunc.saturating_sub(margin);
        let mut worst: f64 = 0.0;
        for d in Self::sectors(self.trunc) {
            let e = d + self.shift;
            if e.abs() > n {
                continue;
            }
            let b = self.block(d);
            for i in 0..sector_dim(self.trunc, d) {
                let (n1, n2) = sector_state(d, i);
                if n1 > level || n2 > level {
                    continue;
                }
                for r in 0..sector_dim(self.trunc, e) {
                    let (m1, m2) = sector_state(e, r);
                    if m1 >= top || m2 >= top {
                        worst = worst.max(b[(r, i)].norm());
                    }
                }
            }
        }
        worst
    }

    /// Full matrix in the basis ordered by `n₁·(N+1) + n₂`; meant for small truncations.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.trunc + 1;
        let n = self.trunc as isize;
        let mut m = DMatrix::from_element(dim * dim, dim * dim, ZERO);
        for d in Self::sectors(self.trunc) {
            let e = d + self.shift;
            if e.abs() > n {
                continue;
            }
            let b = self.block(d);
            for i in 0..sector_dim(self.trunc, d) {
                let (n1, n2) = sector_state(d, i);
                for r in 0..sector_dim(self.trunc, e) {
                    let (m1, m2) = sector_state(e, r);
                    m[(m1 * dim + m2, n1 * dim + n2)] = b[(r, i)];
                }
            }
        }
        m
    }

    /// Applies `f` to every block; used for block-wise matrix functions.
    pub(crate) fn map_blocks(&self, f: impl Fn(&DMatrix<Complex64>) -> DMatrix<Complex64> + Sync + Send) -> Self {
        let blocks = self.blocks.par_iter().map(f).collect();
        Self { trunc: self.trunc, shift: self.shift, blocks }
    }
}

/// Matrix exponential by scaling and squaring with a Taylor series.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }
    let norm1 = (0..n)
        .map(|j| a.column(j).iter().map(|c| c.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm1 > 0.5 { (norm1 / 0.5).log2().ceil() as u32 } else { 0 };
    let b = a / Complex64::new(2f64.powi(squarings as i32), 0.0);
    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..60 {
        term = &term * &b / Complex64::new(k as f64, 0.0);
        sum += &term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
