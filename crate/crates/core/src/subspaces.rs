//! `F_q`-subspaces of `F_{q^n}` under the multiplicative action of `F_{q^n}^*`.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::{divisors, gcd};
use crate::error::{Error, Result};
use crate::fqlinalg::{canonical_rows, intersection_rows, span_rank, Echelon, MatrixFq};
use crate::gfield::{FieldCtx, FieldElement};

/// A subspace stored by its canonical echelon basis.
#[derive(Clone)]
pub struct Subspace {
    ctx: Arc<FieldCtx>,
    rows: Vec<u32>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.ctx.same_field(&other.ctx)
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {}, rows {:?})", self.rows.len(), self.rows)
    }
}

impl Subspace {
    /// Span of explicit coordinate vectors.
    pub fn new(ctx: &Arc<FieldCtx>, rows: &[Vec<u32>]) -> Result<Subspace> {
        Ok(Subspace::from_matrix(&MatrixFq::new(ctx, rows)?))
    }

    pub fn from_matrix(m: &MatrixFq) -> Subspace {
        let ctx = m.ctx().clone();
        let rows = canonical_rows(&ctx, m.packed_rows().iter().copied());
        Subspace { ctx, rows }
    }

    /// Span of field elements.
    pub fn span(ctx: &Arc<FieldCtx>, elems: &[FieldElement]) -> Subspace {
        Subspace::from_packed_unchecked(ctx.clone(), elems.iter().map(|a| a.packed()))
    }

    /// Span of `alpha^k` for the given exponents.
    pub fn span_exponents(ctx: &Arc<FieldCtx>, exps: &[u64]) -> Subspace {
        let order = ctx.group_order() as u64;
        let elems: Vec<FieldElement> = exps
            .iter()
            .map(|&k| ctx.from_exponent((k % order) as i64))
            .collect();
        Subspace::span(ctx, &elems)
    }

    pub(crate) fn from_packed_unchecked(
        ctx: Arc<FieldCtx>,
        rows: impl IntoIterator<Item = u32>,
    ) -> Subspace {
        let rows = canonical_rows(&ctx, rows);
        Subspace { ctx, rows }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Subspace {
        Subspace {
            ctx: ctx.clone(),
            rows: Vec::new(),
        }
    }

    /// The subfield `F_{q^m}`, spanned by `1, g, ..., g^{m-1}` for its primitive element `g`.
    pub fn subfield(ctx: &Arc<FieldCtx>, m: u32) -> Result<Subspace> {
        let g = ctx.subfield_generator(m)?;
        let c = g.exponent().unwrap() as u64;
        Ok(Subspace::span_exponents(
            ctx,
            &(0..m as u64).map(|i| c * i).collect::<Vec<_>>(),
        ))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn packed_rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn basis(&self) -> MatrixFq {
        MatrixFq::from_canonical(self.ctx.clone(), self.rows.clone())
    }

    pub fn basis_elements(&self) -> Vec<FieldElement> {
        self.rows.iter().map(|&r| self.ctx.elem(r)).collect()
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ctx.same_field(&other.ctx) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        let mut ech = Echelon::new(&self.ctx);
        for &r in &self.rows {
            ech.insert(r);
        }
        ech.reduce(a.packed()) == 0
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same(other)?;
        Ok(span_rank(&self.ctx, other.rows.iter().chain(&self.rows).copied()) == other.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Subspace::from_packed_unchecked(
            self.ctx.clone(),
            self.rows.iter().chain(&other.rows).copied(),
        ))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Subspace {
            ctx: self.ctx.clone(),
            rows: intersection_rows(&self.ctx, &self.rows, &other.rows),
        })
    }

    /// `U * alpha^k`.
    pub(crate) fn mul_exp(&self, k: u64) -> Subspace {
        let k = (k % self.ctx.group_order() as u64) as u32;
        if k == 0 {
            return self.clone();
        }
        let ctx = &self.ctx;
        Subspace::from_packed_unchecked(ctx.clone(), self.rows.iter().map(|&r| ctx.vmul_exp(r, k)))
    }

    /// `U * b`.
    pub fn scalar_multiply(&self, b: FieldElement) -> Result<Subspace> {
        let k = b.exponent().ok_or(Error::ZeroElement)?;
        Ok(self.mul_exp(k as u64))
    }

    /// `dim(U + V) - dim(U ∩ V)`.
    pub fn distance(&self, other: &Subspace) -> Result<u32> {
        self.check_same(other)?;
        Ok(self.distance_unchecked(other))
    }

    pub(crate) fn distance_unchecked(&self, other: &Subspace) -> u32 {
        let s = span_rank(&self.ctx, self.rows.iter().chain(&other.rows).copied());
        (2 * s - self.dim() - other.dim()) as u32
    }

    /// Length of the orbit under `<alpha^k>` whose order is `ord`.
    pub(crate) fn orbit_len_exp(&self, k: u64, ord: u64) -> u64 {
        divisors(ord)
            .into_iter()
            .find(|&d| self.mul_exp(k * d) == *self)
            .unwrap_or(ord)
    }

    /// Order of the stabilizer of `U` inside `<b>`.
    pub fn stabilizer_order(&self, b: FieldElement) -> Result<u32> {
        let k = b.exponent().ok_or(Error::ZeroElement)? as u64;
        let ord = self.ctx.order_of_exponent(k) as u64;
        Ok((ord / self.orbit_len_exp(k, ord)) as u32)
    }

    /// Largest `m` such that `U` is an `F_{q^m}`-space.
    pub fn best_friend(&self) -> Result<u32> {
        if self.dim() == 0 {
            return Err(Error::ZeroSubspace);
        }
        let g = gcd(self.dim() as u64, self.ctx.n() as u64);
        for m in divisors(g).into_iter().rev() {
            let c = self.ctx.group_order() as u64 / self.ctx.subfield_group_order(m as u32);
            if self.mul_exp(c) == *self {
                return Ok(m as u32);
            }
        }
        Ok(1)
    }

    /// If `U` is a subfield of `F_{q^n}`, its degree over `F_q`.
    pub fn field_degree(&self) -> Option<u32> {
        let t = self.dim() as u32;
        if t == 0 || !self.ctx.n().is_multiple_of(t) {
            return None;
        }
        let f = Subspace::subfield(&self.ctx, t).ok()?;
        (f == *self).then_some(t)
    }

    pub fn orbit(&self, b: FieldElement) -> Result<SubspaceOrbit> {
        let k = b.exponent().ok_or(Error::ZeroElement)? as u64;
        Ok(SubspaceOrbit::new(self.clone(), k))
    }
}

/// `U * <beta>` listed by increasing exponent.
#[derive(Debug, Clone)]
pub struct SubspaceOrbit {
    generator: Subspace,
    beta_exp: u64,
    beta_order: u64,
    elements: Vec<Subspace>,
    stabilizer_order: u64,
}

impl SubspaceOrbit {
    pub(crate) fn new(generator: Subspace, beta_exp: u64) -> SubspaceOrbit {
        let beta_order = generator.ctx.order_of_exponent(beta_exp) as u64;
        let len = generator.orbit_len_exp(beta_exp, beta_order);
        let elements: Vec<Subspace> = (0..len)
            .into_par_iter()
            .map(|j| generator.mul_exp(beta_exp * j))
            .collect();
        debug_assert_eq!(elements.iter().collect::<HashSet<_>>().len() as u64, len);
        SubspaceOrbit {
            generator,
            beta_exp,
            beta_order,
            elements,
            stabilizer_order: beta_order / len,
        }
    }

    pub fn generator(&self) -> &Subspace {
        &self.generator
    }

    pub fn beta(&self) -> FieldElement {
        self.generator.ctx.from_exponent(self.beta_exp as i64)
    }

    pub fn beta_order(&self) -> u64 {
        self.beta_order
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn stabilizer_order(&self) -> u64 {
        self.stabilizer_order
    }

    /// Minimum distance, taken as 0 for a single codeword.
    pub fn min_distance(&self) -> u32 {
        let g = &self.generator;
        self.elements[1..]
            .par_iter()
            .map(|u| g.distance_unchecked(u))
            .min()
            .unwrap_or(0)
    }
}

/// Degree of the minimal polynomial of `alpha^l` over `F_{q^m}`.
pub fn minpoly_degree(ctx: &FieldCtx, l: u64, m: u32) -> u32 {
    let order = ctx.group_order() as u64;
    let l = l % order;
    let qm = ctx.subfield_group_order(m) + 1;
    let mut x = l;
    for d in 1..=ctx.n() / m.max(1) {
        x = ((x as u128 * qm as u128) % order as u128) as u64;
        if x == l {
            return d;
        }
    }
    ctx.n() / m
}

fn regular_form_checked(ctx: &Arc<FieldCtx>, m: u32, l: u64, t: u32) -> Result<(u32, Subspace)> {
    let n = ctx.n();
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::NotADivisor { m, n });
    }
    let bound = ctx.group_order() as u64 / ctx.subfield_group_order(m);
    if l == 0 || l >= bound {
        return Err(Error::ExponentOutOfRange { l, bound });
    }
    if t == 0 {
        return Err(Error::InvalidArgument(
            "a regular form needs at least one term".into(),
        ));
    }
    let big_l = minpoly_degree(ctx, l, m);
    if big_l == 1 {
        return Err(Error::DegenerateRegularForm { l, m });
    }
    if t > big_l {
        return Err(Error::RegularFormTooLong { t, degree: big_l });
    }
    let c = ctx.group_order() as u64 / ctx.subfield_group_order(m);
    let exps: Vec<u64> = (0..m as u64)
        .flat_map(|i| (0..t as u64).map(move |j| c * i + l * j))
        .collect();
    Ok((big_l, Subspace::span_exponents(ctx, &exps)))
}

/// `F_{q^m} + F_{q^m} alpha^l + ... + F_{q^m} alpha^{l(t-1)}`, a space of dimension `m t`.
///
/// Allows `t = L` only when the result is a proper subfield.
pub fn regular_form_subspace(ctx: &Arc<FieldCtx>, m: u32, l: u64, t: u32) -> Result<Subspace> {
    let (big_l, u) = regular_form_checked(ctx, m, l, t)?;
    if t == big_l && big_l * m == ctx.n() {
        return Err(Error::AmbientSpace { t });
    }
    Ok(u)
}

/// Same as [`regular_form_subspace`] but allows the whole field.
pub(crate) fn regular_form_any(ctx: &Arc<FieldCtx>, m: u32, l: u64, t: u32) -> Result<Subspace> {
    regular_form_checked(ctx, m, l, t).map(|(_, u)| u)
}

/// `d_S(U, V)`.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<u32> {
    u.distance(v)
}
