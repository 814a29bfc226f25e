//! Row spaces over `F_q` of vectors of length `n`.
//!
//! Vectors are packed words as produced by [`FieldCtx`]. The canonical form
//! of a row space is its reduced row echelon form with the pivot of each row
//! at its highest nonzero coordinate, pivot entries equal to 1, zero entries
//! above and below every pivot, and rows sorted by decreasing pivot.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gfield::FieldCtx;

/// Incremental echelon basis; rows keep their leading coefficient equal to 1.
pub(crate) struct Echelon<'a> {
    ctx: &'a FieldCtx,
    rows: Vec<u32>,
    pivots: Vec<usize>,
}

const NO_PIVOT: usize = usize::MAX;

impl<'a> Echelon<'a> {
    pub(crate) fn new(ctx: &'a FieldCtx) -> Self {
        Echelon {
            ctx,
            rows: Vec::new(),
            pivots: vec![NO_PIVOT; ctx.n() as usize],
        }
    }

    #[inline]
    fn sub_scaled(&self, v: u32, c: u32, row: u32) -> u32 {
        if self.ctx.q() == 2 {
            v ^ row
        } else {
            self.ctx.vadd(v, self.ctx.vneg(self.ctx.vscale(c, row)))
        }
    }

    /// Reduces `v` until its leading coordinate is not a pivot (or it vanishes).
    pub(crate) fn reduce(&self, mut v: u32) -> u32 {
        while let Some((j, c)) = self.ctx.leading(v) {
            match self.pivots[j] {
                NO_PIVOT => return v,
                i => v = self.sub_scaled(v, c, self.rows[i]),
            }
        }
        0
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: u32) -> bool {
        let r = self.reduce(v);
        match self.ctx.leading(r) {
            None => false,
            Some((j, c)) => {
                let r = self.ctx.vscale(self.ctx.scalar_inv(c), r);
                self.pivots[j] = self.rows.len();
                self.rows.push(r);
                true
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub(crate) fn into_canonical(self) -> Vec<u32> {
        let ctx = self.ctx;
        let mut rows = self.rows;
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let pivots: Vec<usize> = rows.iter().map(|&r| ctx.leading(r).unwrap().0).collect();
        for a in 0..rows.len() {
            let (pa, ra) = (pivots[a], rows[a]);
            for (b, row) in rows.iter_mut().enumerate() {
                if b == a {
                    continue;
                }
                let c = ctx.coord(*row, pa);
                if c != 0 {
                    *row = if ctx.q() == 2 {
                        *row ^ ra
                    } else {
                        ctx.vadd(*row, ctx.vneg(ctx.vscale(c, ra)))
                    };
                }
            }
        }
        rows
    }
}

/// Canonical rows of the span of `rows`.
pub(crate) fn canonical_rows(ctx: &FieldCtx, rows: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut ech = Echelon::new(ctx);
    for v in rows {
        ech.insert(v);
    }
    ech.into_canonical()
}

/// Dimension of the span of the given rows.
pub(crate) fn span_rank(ctx: &FieldCtx, rows: impl IntoIterator<Item = u32>) -> usize {
    let mut ech = Echelon::new(ctx);
    for v in rows {
        ech.insert(v);
        if ech.rank() == ctx.n() as usize {
            break;
        }
    }
    ech.rank()
}

/// Zassenhaus intersection of two spans, returned in canonical form.
pub(crate) fn intersection_rows(ctx: &FieldCtx, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut left = Echelon::new(ctx);
    let mut right: Vec<u32> = Vec::new();
    let mut leftover = Vec::new();
    let pairs = a.iter().map(|&v| (v, v)).chain(b.iter().map(|&v| (v, 0)));
    for (mut l, mut r) in pairs {
        while let Some((j, c)) = ctx.leading(l) {
            match left.pivots[j] {
                NO_PIVOT => break,
                i => {
                    l = left.sub_scaled(l, c, left.rows[i]);
                    r = left.sub_scaled(r, c, right[i]);
                }
            }
        }
        match ctx.leading(l) {
            None => leftover.push(r),
            Some((j, c)) => {
                let inv = ctx.scalar_inv(c);
                left.pivots[j] = left.rows.len();
                left.rows.push(ctx.vscale(inv, l));
                right.push(ctx.vscale(inv, r));
            }
        }
    }
    canonical_rows(ctx, leftover)
}

/// A matrix over `F_q` with `n` columns, stored as packed rows.
#[derive(Debug, Clone)]
pub struct MatrixFq {
    ctx: Arc<FieldCtx>,
    rows: Vec<u32>,
}

impl MatrixFq {
    /// Builds a matrix from explicit coordinate rows.
    pub fn new(ctx: &Arc<FieldCtx>, rows: &[Vec<u32>]) -> Result<MatrixFq> {
        let packed = rows
            .iter()
            .map(|r| ctx.from_coords(r).map(|x| x.packed()))
            .collect::<Result<Vec<u32>>>()?;
        Ok(MatrixFq {
            ctx: ctx.clone(),
            rows: packed,
        })
    }

    pub fn from_packed(ctx: &Arc<FieldCtx>, rows: Vec<u32>) -> Result<MatrixFq> {
        if let Some(&bad) = rows.iter().find(|&&v| v >= ctx.size()) {
            return Err(Error::BadCoordinate(bad));
        }
        Ok(MatrixFq {
            ctx: ctx.clone(),
            rows,
        })
    }

    pub(crate) fn from_canonical(ctx: Arc<FieldCtx>, rows: Vec<u32>) -> MatrixFq {
        MatrixFq { ctx, rows }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn packed_rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|&v| self.ctx.to_coords(self.ctx.elem(v)))
            .collect()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        span_rank(&self.ctx, self.rows.iter().copied())
    }

    /// Reduced row echelon form with zero rows removed.
    pub fn rref(&self) -> MatrixFq {
        MatrixFq {
            ctx: self.ctx.clone(),
            rows: canonical_rows(&self.ctx, self.rows.iter().copied()),
        }
    }

    fn check_same(&self, other: &MatrixFq) -> Result<()> {
        if self.ctx.same_field(&other.ctx) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Row space of the stacked matrix, in canonical form.
    pub fn sum_spaces(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_same(other)?;
        let rows = canonical_rows(&self.ctx, self.rows.iter().chain(&other.rows).copied());
        Ok(MatrixFq {
            ctx: self.ctx.clone(),
            rows,
        })
    }

    /// Intersection of the row spaces, in canonical form.
    pub fn intersect_spaces(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_same(other)?;
        let a = canonical_rows(&self.ctx, self.rows.iter().copied());
        let b = canonical_rows(&self.ctx, other.rows.iter().copied());
        Ok(MatrixFq {
            ctx: self.ctx.clone(),
            rows: intersection_rows(&self.ctx, &a, &b),
        })
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        let x = self.ctx.from_coords(v)?.packed();
        Ok(self.contains_packed(x))
    }

    pub(crate) fn contains_packed(&self, x: u32) -> bool {
        let mut ech = Echelon::new(&self.ctx);
        for &r in &self.rows {
            ech.insert(r);
        }
        ech.reduce(x) == 0
    }
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.rows == other.rows
    }
}

impl Eq for MatrixFq {}
