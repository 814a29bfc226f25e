//! Potential and attained distance values of generalized Galois flag codes.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flagcodes::{subgroup_generators, FlagCode};
use crate::flags::Flag;

/// Largest field size accepted by the brute-force enumerations here.
pub const ENUMERATION_CAP: u64 = 1 << 20;

/// Even sums `d_1 + ... + d_k` over per-dimension distances with
/// `0 <= d_i <= 2 min(s_i, n - s_i)` and `|d_i - d_{i+1}| <= 2 (s_{i+1} - s_i)`,
/// where each field dimension `t` takes only `0` or `2t`, a field carrying
/// `2t` forces every lower dimension to its maximum, and a field carrying `0`
/// forces every higher field to `0`.
pub fn potential_values(n: u32, type_vector: &[u32], field_dims: &[u32]) -> Result<BTreeSet<u32>> {
    if type_vector.is_empty()
        || type_vector.windows(2).any(|w| w[0] >= w[1])
        || *type_vector.last().unwrap() >= n
    {
        return Err(Error::InvalidArgument(
            "type vector must be strictly increasing and below n".into(),
        ));
    }
    if type_vector[0] == 0 {
        return Err(Error::InvalidArgument(
            "type vector entries must be positive".into(),
        ));
    }
    if field_dims
        .windows(2)
        .any(|w| w[0] >= w[1] || w[1] % w[0] != 0)
    {
        return Err(Error::InvalidChain(
            "field dimensions must form a divisor chain".into(),
        ));
    }
    for &t in field_dims {
        if t == 0 || !n.is_multiple_of(t) {
            return Err(Error::InvalidChain(format!("{t} does not divide {n}")));
        }
        if !type_vector.contains(&t) {
            return Err(Error::InvalidChain(format!(
                "{t} is not in the type vector"
            )));
        }
    }
    let cap: Vec<u32> = type_vector.iter().map(|&s| 2 * s.min(n - s)).collect();
    let is_field: Vec<bool> = type_vector.iter().map(|s| field_dims.contains(s)).collect();
    let mut out = BTreeSet::new();
    let mut profile = Vec::with_capacity(type_vector.len());
    search(type_vector, &cap, &is_field, &mut profile, &mut out);
    Ok(out)
}

fn search(
    s: &[u32],
    cap: &[u32],
    is_field: &[bool],
    profile: &mut Vec<u32>,
    out: &mut BTreeSet<u32>,
) {
    let i = profile.len();
    if i == s.len() {
        if admissible(cap, is_field, profile) {
            out.insert(profile.iter().sum());
        }
        return;
    }
    let choices: Vec<u32> = if is_field[i] {
        vec![0, cap[i]]
    } else {
        (0..=cap[i]).step_by(2).collect()
    };
    for d in choices {
        if let Some(&prev) = profile.last() {
            if prev.abs_diff(d) > 2 * (s[i] - s[i - 1]) {
                continue;
            }
        }
        profile.push(d);
        search(s, cap, is_field, profile, out);
        profile.pop();
    }
}

fn admissible(cap: &[u32], is_field: &[bool], d: &[u32]) -> bool {
    let mut zero_field_seen = false;
    for i in 0..d.len() {
        if !is_field[i] {
            continue;
        }
        if d[i] == 0 {
            zero_field_seen = true;
        } else if zero_field_seen || (0..i).any(|l| d[l] != cap[l]) {
            return false;
        }
    }
    true
}

fn check_cap(f: &Flag) -> Result<()> {
    let size = f.ctx().size() as u64;
    if size > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            size,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// `{ d_f(Orb_beta(F)) }` over one generator per subgroup of `F_{q^n}^*`.
pub fn attained_values(f: &Flag) -> Result<BTreeSet<u32>> {
    check_cap(f)?;
    subgroup_generators(f.ctx())
        .into_iter()
        .map(|(_, b)| FlagCode::new(f.clone(), b).map(|c| c.min_distance()))
        .collect::<Result<BTreeSet<u32>>>()
}

/// `{ d_f(F, F c) : c in F_{q^n}^*, F c != F }`.
pub fn pairwise_attained_values(f: &Flag) -> Result<BTreeSet<u32>> {
    check_cap(f)?;
    let order = f.ctx().group_order() as u64;
    Ok((1..order)
        .into_par_iter()
        .map(|j| f.distance_unchecked(&f.mul_exp(j)))
        .filter(|&d| d > 0)
        .collect::<Vec<u32>>()
        .into_iter()
        .collect())
}

/// Potential values for `f` itself: its own field positions, and nonzero
/// values below `2 m j` dropped, where `F_{q^m}` is the best friend of `f`
/// and `j` the number of its subspaces sharing that best friend.
pub fn potential_values_for_flag(f: &Flag) -> Result<BTreeSet<u32>> {
    let t: Vec<u32> = f.type_vector().iter().map(|&x| x as u32).collect();
    let fields: Vec<u32> = f
        .classify()
        .underlying_type
        .iter()
        .map(|&x| x as u32)
        .collect();
    let m = f.best_friend();
    let j = f
        .subspaces()
        .iter()
        .filter(|u| u.best_friend() == Ok(m))
        .count() as u32;
    let mut out = potential_values(f.ctx().n(), &t, &fields)?;
    out.retain(|&d| d == 0 || d >= 2 * m * j);
    Ok(out)
}
