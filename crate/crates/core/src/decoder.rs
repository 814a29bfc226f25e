//! Erasure channel: stuttering received flags, shot selection and decoding
//! through a projected code.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flagcodes::FlagCode;
use crate::flags::Flag;
use crate::fqlinalg::Echelon;
use crate::subspaces::{Subspace, SubspaceOrbit};

/// Nested received subspaces `X_1 ⊆ ... ⊆ X_r`, possibly repeating, with the
/// number of erasures suffered at each shot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StutteringFlag {
    subspaces: Vec<Subspace>,
    erasures: Vec<u32>,
}

impl StutteringFlag {
    /// Wraps received subspaces; `type_vector` holds the dimensions of the
    /// code's flags, which the receiver knows.
    pub fn new(subspaces: Vec<Subspace>, type_vector: &[usize]) -> Result<StutteringFlag> {
        if subspaces.len() != type_vector.len() {
            return Err(Error::LengthMismatch {
                expected: type_vector.len(),
                got: subspaces.len(),
            });
        }
        for (i, w) in subspaces.windows(2).enumerate() {
            if !w[0].is_subspace_of(&w[1])? {
                return Err(Error::NotNested(i, i + 1));
            }
        }
        let mut erasures = Vec::with_capacity(type_vector.len());
        for (i, (u, &t)) in subspaces.iter().zip(type_vector).enumerate() {
            if u.dim() > t {
                return Err(Error::InfeasibleErasures(format!(
                    "shot {i} has dimension {} above {t}",
                    u.dim()
                )));
            }
            erasures.push((t - u.dim()) as u32);
        }
        Ok(StutteringFlag {
            subspaces,
            erasures,
        })
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn erasures(&self) -> &[u32] {
        &self.erasures
    }

    pub fn total_erasures(&self) -> u32 {
        self.erasures.iter().sum()
    }

    /// `sum_i d_S(X_i, G_i)`.
    pub fn distance_to(&self, g: &Flag) -> Result<u32> {
        if g.len() != self.subspaces.len() {
            return Err(Error::TypeMismatch);
        }
        self.subspaces
            .iter()
            .zip(g.subspaces())
            .map(|(x, u)| x.distance(u))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub success: bool,
    pub decoded: Option<Flag>,
    /// Zero-based index of the shot that was decoded.
    pub shot_used: Option<usize>,
    pub erasures_corrected: u32,
    pub failure: Option<Error>,
}

impl DecodeOutcome {
    fn failed(err: Error, shot: Option<usize>) -> DecodeOutcome {
        DecodeOutcome {
            success: false,
            decoded: None,
            shot_used: shot,
            erasures_corrected: 0,
            failure: Some(err),
        }
    }

    pub fn into_result(self) -> Result<Flag> {
        match (self.decoded, self.failure) {
            (Some(f), _) => Ok(f),
            (None, Some(e)) => Err(e),
            (None, None) => Err(Error::NoCodeword),
        }
    }
}

/// Projected codes and their decoding radii, built once per code.
pub struct Decoder<'a> {
    code: &'a FlagCode,
    projected: Vec<Option<(SubspaceOrbit, u32)>>,
}

impl<'a> Decoder<'a> {
    pub fn new(code: &'a FlagCode) -> Decoder<'a> {
        let card = code.cardinality() as usize;
        let projected = (0..code.generator().len())
            .map(|i| {
                let orb = code.projected_code(i).expect("index in range");
                if orb.len() != card || card == 1 {
                    return None;
                }
                let radius = (orb.min_distance() - 1) / 2;
                Some((orb, radius))
            })
            .collect();
        Decoder { code, projected }
    }

    pub fn code(&self) -> &FlagCode {
        self.code
    }

    /// Decoding radius of each projected code in bijection with the code.
    pub fn radii(&self) -> Vec<Option<u32>> {
        self.projected
            .iter()
            .map(|p| p.as_ref().map(|(_, r)| *r))
            .collect()
    }

    /// Smallest shot whose projected code is in bijection with the code and
    /// whose erasures fall within that code's radius.
    pub fn find_correctable_shot(&self, x: &StutteringFlag) -> Result<usize> {
        if x.subspaces.len() != self.projected.len() {
            return Err(Error::TypeMismatch);
        }
        if self.code.cardinality() == 1 {
            return Ok(0);
        }
        self.projected
            .iter()
            .zip(&x.erasures)
            .position(|(p, &e)| matches!(p, Some((_, r)) if e <= *r))
            .ok_or(Error::NoCorrectableShot)
    }

    pub fn decode(&self, x: &StutteringFlag) -> DecodeOutcome {
        let shot = match self.find_correctable_shot(x) {
            Ok(i) => i,
            Err(e) => return DecodeOutcome::failed(e, None),
        };
        let j = if self.code.cardinality() == 1 {
            0
        } else {
            let (orb, radius) = self.projected[shot]
                .as_ref()
                .expect("shot has a projected code");
            let xi = &x.subspaces[shot];
            let mut hits = orb
                .elements()
                .iter()
                .enumerate()
                .filter(|(_, v)| xi.distance_unchecked(v) <= *radius)
                .map(|(j, _)| j);
            match (hits.next(), hits.next()) {
                (Some(j), None) => j as u64,
                (None, _) => return DecodeOutcome::failed(Error::NoCodeword, Some(shot)),
                (Some(_), Some(_)) => {
                    return DecodeOutcome::failed(Error::AmbiguousDecoding, Some(shot))
                }
            }
        };
        let decoded = self.code.generator().mul_exp(self.code.beta_exponent() * j);
        DecodeOutcome {
            success: true,
            decoded: Some(decoded),
            shot_used: Some(shot),
            erasures_corrected: x.total_erasures(),
            failure: None,
        }
    }
}

/// Receiver-side dimensions `dim F_i - e_i`, checked for a nested solution.
fn target_dims(type_vector: &[usize], counts: &[u32]) -> Result<Vec<usize>> {
    if counts.len() != type_vector.len() {
        return Err(Error::LengthMismatch {
            expected: type_vector.len(),
            got: counts.len(),
        });
    }
    let mut dims = Vec::with_capacity(counts.len());
    for (i, (&t, &e)) in type_vector.iter().zip(counts).enumerate() {
        if e as usize > t {
            return Err(Error::InfeasibleErasures(format!(
                "{e} erasures at shot {i} of dimension {t}"
            )));
        }
        let k = t - e as usize;
        if dims.last().is_some_and(|&prev| prev > k) {
            return Err(Error::InfeasibleErasures(format!(
                "dimension {k} at shot {i} is below the previous shot"
            )));
        }
        dims.push(k);
    }
    Ok(dims)
}

/// Random nested `X_i ⊆ F_i` with `dim F_i - dim X_i = counts[i]`, drawn
/// bottom-up: each `X_{i+1}` extends `X_i` by uniform vectors of `F_{i+1}`.
pub fn erase_with_rng<R: Rng + ?Sized>(
    f: &Flag,
    counts: &[u32],
    rng: &mut R,
) -> Result<StutteringFlag> {
    let dims = target_dims(&f.type_vector(), counts)?;
    let ctx = f.ctx();
    let q = ctx.q();
    let mut ech = Echelon::new(ctx);
    let mut out = Vec::with_capacity(dims.len());
    for (u, &k) in f.subspaces().iter().zip(&dims) {
        if k == u.dim() {
            // the whole of F_i; keep the echelon in sync
            for &r in u.packed_rows() {
                ech.insert(r);
            }
        }
        while ech.rank() < k {
            let v = u.packed_rows().iter().fold(0, |acc, &r| {
                ctx.vadd(acc, ctx.vscale(rng.random_range(0..q), r))
            });
            ech.insert(v);
        }
        out.push(Subspace::from_packed_unchecked(
            ctx.clone(),
            ech.rows().iter().copied(),
        ));
    }
    Ok(StutteringFlag {
        subspaces: out,
        erasures: counts.to_vec(),
    })
}

pub fn erase(f: &Flag, counts: &[u32], seed: u64) -> Result<StutteringFlag> {
    erase_with_rng(f, counts, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Every count vector with total `e` that admits a nested erasure pattern.
pub fn feasible_patterns(type_vector: &[usize], e: u32) -> Vec<Vec<u32>> {
    fn go(
        t: &[usize],
        i: usize,
        left: u32,
        prev: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == t.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // dimensions never decrease, so shot i may lose at most t_i - prev
        let cap = (t[i].saturating_sub(prev) as u32).min(left);
        for c in 0..=cap {
            cur.push(c);
            go(t, i + 1, left - c, t[i] - c as usize, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(type_vector, 0, e, 0, &mut Vec::new(), &mut out);
    out
}

/// Uniform choice among [`feasible_patterns`].
pub fn random_erasure_pattern<R: Rng + ?Sized>(
    type_vector: &[usize],
    e: u32,
    rng: &mut R,
) -> Result<Vec<u32>> {
    feasible_patterns(type_vector, e)
        .choose(rng)
        .cloned()
        .ok_or_else(|| Error::InfeasibleErasures(format!("no nested pattern with {e} erasures")))
}

pub fn find_correctable_shot(x: &StutteringFlag, c: &FlagCode) -> Result<usize> {
    Decoder::new(c).find_correctable_shot(x)
}

pub fn decode(x: &StutteringFlag, c: &FlagCode) -> DecodeOutcome {
    Decoder::new(c).decode(x)
}

/// The codeword nearest to `x` in flag distance, by scanning the whole code.
pub fn decode_exhaustive(x: &StutteringFlag, c: &FlagCode) -> Result<Flag> {
    let mut best: Option<(u32, usize)> = None;
    let mut tie = false;
    for (j, g) in c.elements().iter().enumerate() {
        let d = x.distance_to(g)?;
        match best {
            Some((b, _)) if d > b => {}
            Some((b, _)) if d == b => tie = true,
            _ => {
                best = Some((d, j));
                tie = false;
            }
        }
    }
    match best {
        None => Err(Error::NoCodeword),
        Some(_) if tie => Err(Error::AmbiguousDecoding),
        Some((_, j)) => Ok(c.elements()[j].clone()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimRow {
    pub total_erasures: u32,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
}

/// Independent stream per `(e, trial)`, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, e: u32, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((e as u64) << 32) | trial);
    rng
}

/// One trial: random codeword, random feasible pattern with `e` erasures,
/// decode, compare.
fn run_trial(dec: &Decoder<'_>, e: u32, rng: &mut ChaCha8Rng) -> Result<bool> {
    let code = dec.code();
    let j = rng.random_range(0..code.cardinality());
    let sent = code.generator().mul_exp(code.beta_exponent() * j);
    let counts = random_erasure_pattern(&code.type_vector(), e, rng)?;
    let x = erase_with_rng(&sent, &counts, rng)?;
    Ok(dec.decode(&x).decoded.as_ref() == Some(&sent))
}

/// Success rates for every total erasure count `0..=max_erasures`.
pub fn channel_sim(c: &FlagCode, trials: u64, max_erasures: u32, seed: u64) -> Result<Vec<SimRow>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let total: usize = c.type_vector().iter().sum();
    if max_erasures as usize > total {
        return Err(Error::InfeasibleErasures(format!(
            "{max_erasures} exceeds the total dimension {total}"
        )));
    }
    let dec = Decoder::new(c);
    (0..=max_erasures)
        .map(|e| {
            let successes = (0..trials)
                .into_par_iter()
                .map(|t| run_trial(&dec, e, &mut trial_rng(seed, e, t)).map(u64::from))
                .sum::<Result<u64>>()?;
            Ok(SimRow {
                total_erasures: e,
                trials,
                successes,
                rate: successes as f64 / trials as f64,
            })
        })
        .collect()
}

/// CSV with header `total_erasures,trials,successes,rate`.
pub fn sim_csv(rows: &[SimRow]) -> String {
    let mut s = String::from("total_erasures,trials,successes,rate\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{:.6}\n",
            r.total_erasures, r.trials, r.successes, r.rate
        ));
    }
    s
}
