//! Exact arithmetic in `F_{q^n}` with `q = p^e`.
//!
//! Every element is kept in two forms at once: its discrete logarithm with
//! respect to a fixed primitive element `alpha`, and its coordinate vector in
//! the polynomial basis `1, x, ..., x^{n-1}` of `F_q[x]/(f)`. Coordinate
//! vectors are packed into a single `u32` as the base-`q` number
//! `c_0 + c_1 q + ... + c_{n-1} q^{n-1}`; each `c_j` is itself the base-`p`
//! packing of an element of `F_q = F_p[y]/(g)`. Tables cover the whole group,
//! so the field size is capped at `2^24`.
//!
//! Moduli are chosen deterministically: `g` is the lexicographically smallest
//! monic irreducible of degree `e` over `F_p` and `f` the lexicographically
//! smallest monic primitive polynomial of degree `n` over `F_q`, comparing
//! coefficient lists from the constant term upwards.

use std::fmt;
use std::sync::Arc;

use crate::arith::{divisors, gcd, is_prime, prime_factors};
use crate::error::{Error, Result};

/// Largest supported number of field elements.
pub const TABLE_CAP: u64 = 1 << 24;

const NO_LOG: u32 = u32::MAX;

/// `F_q` realised as `F_p[y]/(g)`, with log tables over a generator.
#[derive(Debug, Clone)]
struct BaseField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn to_digits(mut x: u64, base: u64, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (x % base) as u32;
        x /= base;
    }
    out
}

fn from_digits(digits: &[u32], base: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * base + d as u64)
}

/// Remainder of `a` modulo the monic polynomial `f` over `F_p`.
fn fp_poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let deg_f = f.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg_f {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg_f;
            for (j, &fj) in f[..deg_f].iter().enumerate() {
                let sub = (lead as u64 * fj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
    }
    r
}

fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut divisor = to_digits(k, p as u64, d);
            divisor.push(1);
            if fp_poly_rem(f, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Monic polynomials of degree `deg` over an alphabet of size `base`, in
/// lexicographic order of `(c_0, c_1, ..., c_{deg-1})`.
fn monic_candidates(base: u64, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = base.pow(deg as u32);
    (0..count).map(move |k| {
        let mut coeffs: Vec<u32> = to_digits(k, base, deg).into_iter().rev().collect();
        coeffs.push(1);
        coeffs
    })
}

impl BaseField {
    fn new(p: u32, e: u32) -> Result<Self> {
        let q = p.pow(e);
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            monic_candidates(p as u64, e as usize)
                .find(|f| fp_is_irreducible(f, p))
                .ok_or_else(|| {
                    Error::InvalidParameters(format!("no irreducible of degree {e} over F_{p}"))
                })?
        };
        let mul_slow = |a: u32, b: u32| -> u32 {
            if e == 1 {
                return (a as u64 * b as u64 % p as u64) as u32;
            }
            let da = to_digits(a as u64, p as u64, e as usize);
            let db = to_digits(b as u64, p as u64, e as usize);
            let mut prod = vec![0u32; 2 * e as usize - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            from_digits(&fp_poly_rem(&prod, &modulus, p), p as u64) as u32
        };
        let pow_slow = |mut a: u32, mut k: u64| -> u32 {
            let mut acc = 1u32;
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul_slow(acc, a);
                }
                a = mul_slow(a, a);
                k >>= 1;
            }
            acc
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| {
                pow_slow(g, order) == 1 && factors.iter().all(|&r| pow_slow(g, order / r) != 1)
            })
            .ok_or_else(|| Error::InvalidParameters(format!("F_{q} has no generator")))?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; q as usize];
        let mut x = 1u32;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = mul_slow(x, generator);
        }
        Ok(BaseField {
            p,
            e,
            q,
            modulus,
            exp,
            log,
        })
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as u64;
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.e {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }

    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u64;
        let mut a = a as u64;
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.e {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out as u32
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n as u64;
        self.exp[s as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let n = self.q - 1;
        let l = self.log[a as usize];
        self.exp[((n - l) % n) as usize]
    }
}

/// Immutable description of `F_{q^n}`: moduli, log/antilog tables and the
/// subfield lattice. Shared behind an [`Arc`].
pub struct FieldCtx {
    p: u32,
    e: u32,
    n: u32,
    q: u32,
    size: u32,
    order: u32,
    base: BaseField,
    modulus_top: Vec<u32>,
    q_pows: Vec<u32>,
    log: Vec<u32>,
    antilog: Vec<u32>,
    zech: Vec<u32>,
    divisors: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("n", &self.n)
            .field("modulus_base", &self.base.modulus)
            .field("modulus_top", &self.modulus_top)
            .finish()
    }
}

/// An element of `F_{q^n}`: discrete log (absent for zero) plus packed coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    exponent: Option<u32>,
    packed: u32,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.exponent.is_none()
    }

    /// Exponent `i` with `self = alpha^i`, or `None` for zero.
    pub fn exponent(&self) -> Option<u32> {
        self.exponent
    }

    /// Packed base-`q` coordinate word.
    pub fn packed(&self) -> u32 {
        self.packed
    }
}

impl FieldCtx {
    /// Builds `F_{q^n}` with `q = p^e`.
    pub fn build(p: u32, e: u32, n: u32) -> Result<Arc<FieldCtx>> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || n == 0 {
            return Err(Error::InvalidParameters(
                "extension degrees must be positive".into(),
            ));
        }
        let mut size = 1u64;
        for _ in 0..(e as u64 * n as u64) {
            size *= p as u64;
            if size > TABLE_CAP {
                return Err(Error::FieldTooLarge { p, e, n });
            }
        }
        let base = BaseField::new(p, e)?;
        let q = base.q;
        let order = (size - 1) as u32;
        let q_pows: Vec<u32> = (0..=n).map(|j| (q as u64).pow(j) as u32).collect();

        let modulus_top = find_primitive(&base, n, order as u64)?;

        let mut ctx = FieldCtx {
            p,
            e,
            n,
            q,
            size: size as u32,
            order,
            base,
            modulus_top,
            q_pows,
            log: Vec::new(),
            antilog: Vec::new(),
            zech: Vec::new(),
            divisors: divisors(n as u64).into_iter().map(|d| d as u32).collect(),
        };
        ctx.fill_tables()?;
        Ok(Arc::new(ctx))
    }

    fn fill_tables(&mut self) -> Result<()> {
        let order = self.order as usize;
        let mut antilog = Vec::with_capacity(order);
        let mut log = vec![NO_LOG; self.size as usize];
        let mut v = 1u32;
        for i in 0..order {
            if log[v as usize] != NO_LOG {
                return Err(Error::NoPrimitivePolynomial(self.n));
            }
            antilog.push(v);
            log[v as usize] = i as u32;
            v = self.times_x(v);
        }
        if v != 1 {
            return Err(Error::NoPrimitivePolynomial(self.n));
        }
        self.antilog = antilog;
        self.log = log;
        if self.p != 2 {
            let zech = (0..order)
                .map(|k| {
                    let s = self.add_slow(1, self.antilog[k]);
                    if s == 0 {
                        NO_LOG
                    } else {
                        self.log[s as usize]
                    }
                })
                .collect();
            self.zech = zech;
        }
        Ok(())
    }

    /// Multiplication of a packed vector by `x` modulo the top modulus.
    fn times_x(&self, v: u32) -> u32 {
        let n = self.n as usize;
        let q = self.q as u64;
        if self.q == 2 {
            let mut w = (v as u64) << 1;
            if w >> n & 1 == 1 {
                let low = from_digits(&self.modulus_top[..n], 2);
                w = (w ^ low) & ((1u64 << n) - 1);
            }
            return w as u32;
        }
        let c = to_digits(v as u64, q, n);
        let top = c[n - 1];
        let mut out = vec![0u32; n];
        for j in 0..n {
            let shifted = if j == 0 { 0 } else { c[j - 1] };
            let t = self.base.mul(top, self.modulus_top[j]);
            out[j] = self.base.add(shifted, self.base.neg(t));
        }
        from_digits(&out, q) as u32
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let q = self.q as u64;
        let n = self.n as usize;
        let da = to_digits(a as u64, q, n);
        let db = to_digits(b as u64, q, n);
        let sum: Vec<u32> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect();
        from_digits(&sum, q) as u32
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Size of the base field.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Extension degree over `F_q`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of field elements, `q^n`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group, `q^n - 1`.
    pub fn group_order(&self) -> u32 {
        self.order
    }

    pub fn modulus_base(&self) -> &[u32] {
        &self.base.modulus
    }

    pub fn modulus_top(&self) -> &[u32] {
        &self.modulus_top
    }

    pub fn divisors_of_n(&self) -> &[u32] {
        &self.divisors
    }

    /// Whether two contexts describe the same field (same parameters, hence
    /// the same deterministic tables).
    pub fn same_field(&self, other: &FieldCtx) -> bool {
        std::ptr::eq(self, other) || (self.p, self.e, self.n) == (other.p, other.e, other.n)
    }

    /// `q^m - 1`, the order of `F_{q^m}^*`.
    pub fn subfield_group_order(&self, m: u32) -> u64 {
        (self.q as u64).pow(m) - 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            exponent: None,
            packed: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_exponent(0)
    }

    /// The fixed primitive element.
    pub fn alpha(&self) -> FieldElement {
        self.from_exponent(1)
    }

    /// `alpha^k`, with `k` reduced modulo the group order.
    pub fn from_exponent(&self, k: i64) -> FieldElement {
        let e = k.rem_euclid(self.order as i64) as u32;
        FieldElement {
            exponent: Some(e),
            packed: self.antilog[e as usize],
        }
    }

    pub fn from_packed(&self, packed: u32) -> Result<FieldElement> {
        if packed >= self.size {
            return Err(Error::BadCoordinate(packed));
        }
        Ok(self.elem(packed))
    }

    pub(crate) fn elem(&self, packed: u32) -> FieldElement {
        let l = self.log[packed as usize];
        FieldElement {
            exponent: (l != NO_LOG).then_some(l),
            packed,
        }
    }

    /// Coordinates over `F_q` in the polynomial basis (constant term first).
    pub fn to_coords(&self, a: FieldElement) -> Vec<u32> {
        to_digits(a.packed as u64, self.q as u64, self.n as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.n as usize {
            return Err(Error::LengthMismatch {
                expected: self.n as usize,
                got: coords.len(),
            });
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.q) {
            return Err(Error::BadCoordinate(bad));
        }
        Ok(self.elem(from_digits(coords, self.q as u64) as u32))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.elem(self.vadd(a.packed, b.packed))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.elem(self.vneg(a.packed))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a.exponent, b.exponent) {
            (Some(x), Some(y)) => self.from_exponent(x as i64 + y as i64),
            _ => self.zero(),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let x = a.exponent.ok_or(Error::ZeroInverse)?;
        Ok(self.from_exponent(-(x as i64)))
    }

    /// `a^k`; negative `k` requires `a != 0`.
    pub fn pow(&self, a: FieldElement, k: i64) -> Result<FieldElement> {
        match a.exponent {
            Some(x) => {
                let r = (x as i128 * k as i128).rem_euclid(self.order as i128);
                Ok(self.from_exponent(r as i64))
            }
            None if k < 0 => Err(Error::ZeroInverse),
            None if k == 0 => Ok(self.one()),
            None => Ok(self.zero()),
        }
    }

    /// `|a|`, computed as `(q^n - 1) / gcd(log a, q^n - 1)`.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u32> {
        let x = a.exponent.ok_or(Error::ZeroElement)?;
        Ok((self.order as u64 / gcd(x as u64, self.order as u64)) as u32)
    }

    /// The order of `alpha^k` without building the element.
    pub fn order_of_exponent(&self, k: u64) -> u32 {
        (self.order as u64 / gcd(k % self.order as u64, self.order as u64)) as u32
    }

    /// `alpha^{(q^n-1)/(q^m-1)}`, a primitive element of `F_{q^m}`.
    pub fn subfield_generator(&self, m: u32) -> Result<FieldElement> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n: self.n });
        }
        let c = self.order as u64 / self.subfield_group_order(m);
        Ok(self.from_exponent(c as i64))
    }

    /// The Frobenius power `a^{q^m}`.
    pub fn frobenius(&self, a: FieldElement, m: u32) -> FieldElement {
        match a.exponent {
            None => a,
            Some(x) => {
                let n = self.order as u64;
                let mut qm = 1u64;
                for _ in 0..m {
                    qm = qm * self.q as u64 % n.max(1);
                }
                self.from_exponent((x as u64 * qm % n.max(1)) as i64)
            }
        }
    }

    // Packed-vector primitives used by the linear algebra layer.

    #[inline]
    pub(crate) fn vadd(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (la, lb) = (self.log[a as usize], self.log[b as usize]);
        let n = self.order;
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            0
        } else {
            self.antilog[((la as u64 + z as u64) % n as u64) as usize]
        }
    }

    #[inline]
    pub(crate) fn vneg(&self, a: u32) -> u32 {
        if self.p == 2 || a == 0 {
            a
        } else {
            self.vmul_exp(a, self.order / 2)
        }
    }

    #[inline]
    pub(crate) fn vmul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.vmul_exp(a, self.log[b as usize])
    }

    /// `a * alpha^k` for `k < q^n - 1`.
    #[inline]
    pub(crate) fn vmul_exp(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + k as u64;
        let n = self.order as u64;
        self.antilog[(if s >= n { s - n } else { s }) as usize]
    }

    /// Coordinate `j` of a packed vector.
    #[inline]
    pub(crate) fn coord(&self, v: u32, j: usize) -> u32 {
        if self.q == 2 {
            (v >> j) & 1
        } else {
            (v / self.q_pows[j]) % self.q
        }
    }

    /// Index and value of the highest nonzero coordinate.
    #[inline]
    pub(crate) fn leading(&self, v: u32) -> Option<(usize, u32)> {
        if v == 0 {
            return None;
        }
        if self.q == 2 {
            return Some((31 - v.leading_zeros() as usize, 1));
        }
        let j = match self.q_pows.binary_search(&v) {
            Ok(j) => j,
            Err(j) => j - 1,
        };
        Some((j, v / self.q_pows[j]))
    }

    /// Inverse of a nonzero `F_q` scalar.
    #[inline]
    pub(crate) fn scalar_inv(&self, c: u32) -> u32 {
        self.base.inv(c)
    }

    /// Scales a packed vector by an `F_q` scalar.
    #[inline]
    pub(crate) fn vscale(&self, c: u32, v: u32) -> u32 {
        if c == 1 {
            v
        } else {
            self.vmul(c, v)
        }
    }
}

/// Primitive polynomial search: `x` must have order exactly `order` modulo `f`.
fn find_primitive(base: &BaseField, n: u32, order: u64) -> Result<Vec<u32>> {
    let n_us = n as usize;
    let factors = prime_factors(order);
    for f in monic_candidates(base.q as u64, n_us) {
        if f[0] == 0 {
            continue;
        }
        let x = reduce_fq(base, &[0, 1], &f);
        let is_one = |v: &[u32]| v[0] == 1 && v[1..].iter().all(|&c| c == 0);
        if !is_one(&fq_pow(base, &x, order, &f)) {
            continue;
        }
        if factors
            .iter()
            .all(|&r| !is_one(&fq_pow(base, &x, order / r, &f)))
        {
            return Ok(f);
        }
    }
    Err(Error::NoPrimitivePolynomial(n))
}

/// Reduces a polynomial over `F_q` modulo the monic `f`; output has length `deg f`.
fn reduce_fq(base: &BaseField, a: &[u32], f: &[u32]) -> Vec<u32> {
    let deg = f.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg;
            for j in 0..deg {
                let t = base.mul(lead, f[j]);
                r[shift + j] = base.add(r[shift + j], base.neg(t));
            }
        }
    }
    r.resize(deg, 0);
    r
}

fn fq_mulmod(base: &BaseField, a: &[u32], b: &[u32], f: &[u32]) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = base.add(prod[i + j], base.mul(x, y));
        }
    }
    reduce_fq(base, &prod, f)
}

fn fq_pow(base: &BaseField, x: &[u32], mut k: u64, f: &[u32]) -> Vec<u32> {
    let deg = f.len() - 1;
    let mut acc = vec![0u32; deg];
    acc[0] = 1;
    let mut b = x.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = fq_mulmod(base, &acc, &b, f);
        }
        b = fq_mulmod(base, &b, &b, f);
        k >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_orders() {
        assert_eq!(FieldCtx::build(2, 1, 12).unwrap().group_order(), 4095);
        assert_eq!(FieldCtx::build(2, 1, 10).unwrap().group_order(), 1023);
        let f2 = FieldCtx::build(2, 1, 1).unwrap();
        assert_eq!(f2.group_order(), 1);
        assert_eq!(f2.alpha(), f2.one());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::build(4, 1, 2).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldCtx::build(2, 1, 25),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            FieldCtx::build(3, 2, 8),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(FieldCtx::build(2, 0, 3).is_err());
    }

    #[test]
    fn deterministic_moduli() {
        // smallest primitive polynomials, constant term compared first
        assert_eq!(
            FieldCtx::build(2, 1, 4).unwrap().modulus_top(),
            &[1, 0, 0, 1, 1]
        );
        assert_eq!(
            FieldCtx::build(2, 1, 3).unwrap().modulus_top(),
            &[1, 0, 1, 1]
        );
        assert_eq!(FieldCtx::build(2, 2, 2).unwrap().modulus_base(), &[1, 1, 1]);
        let a = FieldCtx::build(2, 1, 10).unwrap();
        let b = FieldCtx::build(2, 1, 10).unwrap();
        assert_eq!(a.modulus_top(), b.modulus_top());
    }

    #[test]
    fn cyclic_group_law() {
        let k = FieldCtx::build(2, 1, 10).unwrap();
        let a = k.from_exponent(700);
        let b = k.from_exponent(500);
        assert_eq!(k.mul(a, b).exponent(), Some(177));
        assert_eq!(k.pow(k.alpha(), 1023).unwrap(), k.one());
        assert_eq!(k.pow(k.alpha(), -1).unwrap(), k.inv(k.alpha()).unwrap());
        assert_eq!(k.inv(k.zero()), Err(Error::ZeroInverse));
        assert_eq!(k.pow(k.zero(), -2), Err(Error::ZeroInverse));
        assert_eq!(k.pow(k.zero(), 0).unwrap(), k.one());
    }

    #[test]
    fn order_of_alpha_33_is_31() {
        let k = FieldCtx::build(2, 1, 10).unwrap();
        let g = k.pow(k.alpha(), 33).unwrap();
        assert_eq!(k.multiplicative_order(g).unwrap(), 31);
        // repeated multiplication oracle
        let mut x = g;
        let mut steps = 1;
        while x != k.one() {
            x = k.mul(x, g);
            steps += 1;
        }
        assert_eq!(steps, 31);
    }

    #[test]
    fn orders_of_small_powers() {
        let k = FieldCtx::build(2, 1, 12).unwrap();
        assert_eq!(k.multiplicative_order(k.alpha()).unwrap(), 4095);
        assert_eq!(k.multiplicative_order(k.from_exponent(63)).unwrap(), 65);
        assert_eq!(k.multiplicative_order(k.one()).unwrap(), 1);
        assert_eq!(k.multiplicative_order(k.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn subfield_generators() {
        let k10 = FieldCtx::build(2, 1, 10).unwrap();
        let g = k10.subfield_generator(5).unwrap();
        assert_eq!(g.exponent(), Some(33));
        assert_eq!(k10.multiplicative_order(g).unwrap(), 31);
        assert_eq!(k10.subfield_generator(10).unwrap(), k10.alpha());
        assert_eq!(
            k10.subfield_generator(3),
            Err(Error::NotADivisor { m: 3, n: 10 })
        );
        let k12 = FieldCtx::build(2, 1, 12).unwrap();
        let g2 = k12.subfield_generator(2).unwrap();
        assert_eq!(g2.exponent(), Some(1365));
        assert_eq!(k12.multiplicative_order(g2).unwrap(), 3);
    }

    #[test]
    fn coordinates() {
        let k = FieldCtx::build(2, 1, 8).unwrap();
        assert_eq!(k.to_coords(k.zero()), vec![0; 8]);
        let mut unit = vec![0; 8];
        unit[0] = 1;
        assert_eq!(k.to_coords(k.one()), unit);
        assert!(matches!(
            k.from_coords(&[1, 0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(
            k.from_coords(&[0, 2, 0, 0, 0, 0, 0, 0]),
            Err(Error::BadCoordinate(2))
        );

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = k.elem(rng.random_range(0..k.size()));
            let b = k.elem(rng.random_range(0..k.size()));
            let lhs = k.to_coords(k.add(a, b));
            let rhs: Vec<u32> = k
                .to_coords(a)
                .iter()
                .zip(k.to_coords(b))
                .map(|(x, y)| x ^ y)
                .collect();
            assert_eq!(lhs, rhs);
            assert_eq!(k.from_coords(&k.to_coords(a)).unwrap(), a);
        }
    }

    fn field_axioms(k: &FieldCtx, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let a = k.elem(rng.random_range(0..k.size()));
            let b = k.elem(rng.random_range(0..k.size()));
            let c = k.elem(rng.random_range(0..k.size()));
            assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
            assert_eq!(k.add(a, k.neg(a)), k.zero());
            assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
            if !a.is_zero() {
                assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
            }
        }
    }

    #[test]
    fn distributivity_binary_and_odd() {
        field_axioms(&FieldCtx::build(2, 1, 12).unwrap(), 1);
        field_axioms(&FieldCtx::build(3, 1, 5).unwrap(), 2);
        field_axioms(&FieldCtx::build(2, 2, 3).unwrap(), 3);
        field_axioms(&FieldCtx::build(3, 2, 3).unwrap(), 4);
        field_axioms(&FieldCtx::build(5, 1, 1).unwrap(), 5);
    }

    #[test]
    fn extension_of_non_prime_base() {
        // F_{4^3} = F_64: subfield F_4 must be the constants
        let k = FieldCtx::build(2, 2, 3).unwrap();
        assert_eq!(k.q(), 4);
        assert_eq!(k.group_order(), 63);
        let g = k.subfield_generator(1).unwrap();
        for j in 0..3 {
            let x = k.pow(g, j).unwrap();
            assert!(x.packed() < 4, "F_q sits in coordinate 0");
        }
    }

    #[test]
    fn subfield_fixed_points() {
        for (p, e, n) in [(2, 1, 12), (3, 1, 4), (2, 2, 4)] {
            let k = FieldCtx::build(p, e, n).unwrap();
            for &m in k.divisors_of_n() {
                let g = k.subfield_generator(m).unwrap();
                let fixed: Vec<FieldElement> = (0..k.size())
                    .map(|v| k.elem(v))
                    .filter(|&x| k.frobenius(x, m) == x)
                    .collect();
                assert_eq!(fixed.len() as u64, (k.q() as u64).pow(m));
                let order = k.multiplicative_order(g).unwrap() as u64;
                for x in fixed.iter().filter(|x| !x.is_zero()) {
                    // x lies in <g> iff its order divides |g|
                    assert_eq!(order % k.multiplicative_order(*x).unwrap() as u64, 0);
                }
            }
        }
    }
}
