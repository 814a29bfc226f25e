//! Closed-form distance predictions and table helpers.

use std::sync::Arc;

use crate::arith::{divisors, gcd};
use crate::error::{Error, Result};
use crate::flags::Flag;
use crate::gfield::{FieldCtx, FieldElement};

use super::constructions::weaved_type;

/// One generator `alpha^{(q^n-1)/d}` per subgroup order `d`, by increasing `d`.
pub fn subgroup_generators(ctx: &FieldCtx) -> Vec<(u64, FieldElement)> {
    let order = ctx.group_order() as u64;
    divisors(order)
        .into_iter()
        .map(|d| (d, ctx.from_exponent((order / d) as i64)))
        .collect()
}

/// `|<b> ∩ F_{q^t}^*|`.
fn meet_order(ctx: &FieldCtx, b_order: u64, t: u32) -> u64 {
    gcd(b_order, ctx.subfield_group_order(t))
}

/// Distance of the `b`-orbit of the Galois flag of the given type, read off
/// from how `<b>` meets the subfields of the chain.
pub fn predict_galois_distance(
    ctx: &Arc<FieldCtx>,
    type_vector: &[u32],
    b: FieldElement,
) -> Result<u32> {
    super::galois_construction(ctx, type_vector)?;
    let ord = ctx.multiplicative_order(b)? as u64;
    let meets: Vec<u64> = type_vector
        .iter()
        .map(|&t| meet_order(ctx, ord, t))
        .collect();
    let total: u32 = type_vector.iter().sum();
    if meets[0] == ord {
        return Ok(0);
    }
    if meets[0] == *meets.last().unwrap() {
        return Ok(2 * total);
    }
    let j = meets.iter().position(|&s| s != meets[0]).unwrap();
    Ok(2 * type_vector[..j].iter().sum::<u32>())
}

/// Lower and upper bounds on the distance of the `b`-orbit of the weaved flag.
pub fn weaved_distance_bounds(
    ctx: &Arc<FieldCtx>,
    chain: &[u32],
    b: FieldElement,
) -> Result<(u32, u32)> {
    let n = ctx.n();
    weaved_type(n, chain)?;
    let ord = ctx.multiplicative_order(b)? as u64;
    let k = chain.len();
    let meets: Vec<u64> = chain.iter().map(|&m| meet_order(ctx, ord, m)).collect();
    if meets[0] == ord {
        return Err(Error::TrivialOrbit { m: chain[0] });
    }
    // m_{k+1} = n and L_{i+1} = m_{i+1} / m_i, with one-based indices as in the chain
    let m = |i: usize| if i <= k { chain[i - 1] } else { n };
    let big_l = |i: usize| m(i) / m(i - 1);
    let big_m = |i: usize| (1..i).map(|j| m(j + 1) * (big_l(j + 1) - 1)).sum::<u32>();
    let bounds = |i: usize, l: u32| (2 * m(i) * (l - 1) + big_m(i), m(i) * (l * l / 2) + big_m(i));
    match (1..k).find(|&j| meets[j] != meets[0]) {
        None => Ok(bounds(k, big_l(k + 1))),
        Some(j) => {
            let i = j + 1;
            Ok(bounds(i - 1, big_l(i)))
        }
    }
}

/// `2 m j` where `j` counts the subspaces sharing the flag's best friend `F_{q^m}`.
pub fn min_distance_lower_bound_by_bf_count(f: &Flag, b: FieldElement) -> Result<u32> {
    let ctx = f.ctx();
    let m = f.best_friend();
    let ord = ctx.multiplicative_order(b)? as u64;
    if ctx.subfield_group_order(m).is_multiple_of(ord) {
        return Err(Error::TrivialOrbit { m });
    }
    let j = f
        .subspaces()
        .iter()
        .filter(|u| u.best_friend() == Ok(m))
        .count() as u32;
    Ok(2 * m * j)
}

/// Range `[2m, 2m (sum_{s_i <= s/2} s_i + sum_{s_i > s/2} (s - s_i))]` for a
/// flag of type `(m s_1, ..., m s_r)` with best friend `F_{q^m}`, `s = n/m`.
pub fn best_friend_distance_bounds(f: &Flag) -> (u32, u32) {
    let m = f.best_friend();
    let s = f.ctx().n() / m;
    let upper: u32 = f
        .type_vector()
        .iter()
        .map(|&t| {
            let si = t as u32 / m;
            if si <= s / 2 {
                si
            } else {
                s - si
            }
        })
        .sum();
    (2 * m, 2 * m * upper)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub beta_exponent: u64,
    pub order: u64,
    pub intersection_order: u64,
    pub orbit_size: u64,
}

/// For each `beta`: its order, the order of `<beta> ∩ F_{q^m}^*` (found by
/// listing the powers of `beta` fixed by the `q^m`-Frobenius), and the orbit
/// size of any flag with best friend `F_{q^m}`.
pub fn table_report(ctx: &Arc<FieldCtx>, m: u32, betas: &[FieldElement]) -> Result<Vec<TableRow>> {
    if m == 0 || !ctx.n().is_multiple_of(m) {
        return Err(Error::NotADivisor { m, n: ctx.n() });
    }
    betas
        .iter()
        .map(|&b| {
            let order = ctx.multiplicative_order(b)? as u64;
            let mut x = ctx.one();
            let mut inter = 0;
            for _ in 0..order {
                if ctx.frobenius(x, m) == x {
                    inter += 1;
                }
                x = ctx.mul(x, b);
            }
            Ok(TableRow {
                beta_exponent: b.exponent().unwrap() as u64,
                order,
                intersection_order: inter,
                orbit_size: order / inter,
            })
        })
        .collect()
}
