//! `beta`-cyclic orbit flag codes and their parameters.

mod constructions;
mod predict;

pub use constructions::{
    basic_construction, extend_flag_by_search, galois_construction, weaved_construction,
    weaved_type,
};
pub use predict::{
    best_friend_distance_bounds, min_distance_lower_bound_by_bf_count, predict_galois_distance,
    subgroup_generators, table_report, weaved_distance_bounds, TableRow,
};

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::flags::{Flag, FlagClassification};
use crate::gfield::FieldElement;
use crate::subspaces::SubspaceOrbit;

/// Translates examined per parallel batch when minimising distances.
const DISTANCE_BATCH: u64 = 512;

/// `Orb_beta(F)`: the generator, the acting element and lazily computed data.
pub struct FlagCode {
    generator: Flag,
    beta_exp: u64,
    beta_order: u64,
    stabilizer_order: u64,
    best_friend: u32,
    elements: OnceLock<Vec<Flag>>,
    min_distance: OnceLock<u32>,
    report: OnceLock<CodeReport>,
}

impl std::fmt::Debug for FlagCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlagCode")
            .field("type", &self.generator.type_vector())
            .field("beta_exp", &self.beta_exp)
            .field("cardinality", &self.cardinality())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedParams {
    pub dim: usize,
    pub size: u64,
    pub min_distance: u32,
    pub best_friend: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeReport {
    pub beta_order: u64,
    pub cardinality: u64,
    pub min_distance: u32,
    pub best_friend: u32,
    pub projected: Vec<ProjectedParams>,
    pub disjoint: bool,
    pub consistent: bool,
    pub classification: FlagClassification,
}

impl FlagCode {
    pub fn new(generator: Flag, beta: FieldElement) -> Result<FlagCode> {
        let k = beta.exponent().ok_or(Error::ZeroElement)? as u64;
        Ok(FlagCode::from_exponent(generator, k))
    }

    /// Orbit under `<alpha^k>`.
    pub fn from_exponent(generator: Flag, beta_exp: u64) -> FlagCode {
        let ctx = generator.ctx().clone();
        let beta_exp = beta_exp % ctx.group_order() as u64;
        let beta_order = ctx.order_of_exponent(beta_exp) as u64;
        let best_friend = generator.best_friend();
        // the stabilizer of a flag in F_{q^n}^* is the multiplicative group of its best friend
        let stabilizer_order = gcd(beta_order, ctx.subfield_group_order(best_friend));
        FlagCode {
            generator,
            beta_exp,
            beta_order,
            stabilizer_order,
            best_friend,
            elements: OnceLock::new(),
            min_distance: OnceLock::new(),
            report: OnceLock::new(),
        }
    }

    pub fn generator(&self) -> &Flag {
        &self.generator
    }

    pub fn beta(&self) -> FieldElement {
        self.generator.ctx().from_exponent(self.beta_exp as i64)
    }

    pub fn beta_exponent(&self) -> u64 {
        self.beta_exp
    }

    pub fn beta_order(&self) -> u64 {
        self.beta_order
    }

    pub fn stabilizer_order(&self) -> u64 {
        self.stabilizer_order
    }

    pub fn best_friend(&self) -> u32 {
        self.best_friend
    }

    pub fn cardinality(&self) -> u64 {
        self.beta_order / self.stabilizer_order
    }

    pub fn type_vector(&self) -> Vec<usize> {
        self.generator.type_vector()
    }

    /// Codewords `F beta^j` for `j < |C|`.
    pub fn elements(&self) -> &[Flag] {
        self.elements.get_or_init(|| {
            (0..self.cardinality())
                .into_par_iter()
                .map(|j| self.generator.mul_exp(self.beta_exp * j))
                .collect()
        })
    }

    /// Minimum distance, computed against the generator only; 0 for a single codeword.
    pub fn min_distance(&self) -> u32 {
        *self.min_distance.get_or_init(|| {
            let card = self.cardinality();
            if card == 1 {
                return 0;
            }
            let floor = 2 * self.best_friend;
            let mut best = u32::MAX;
            let mut start = 1;
            while start < card && best > floor {
                let end = (start + DISTANCE_BATCH).min(card);
                let batch = (start..end)
                    .into_par_iter()
                    .map(|j| {
                        self.generator
                            .distance_unchecked(&self.generator.mul_exp(self.beta_exp * j))
                    })
                    .min()
                    .unwrap_or(u32::MAX);
                best = best.min(batch);
                start = end;
            }
            best
        })
    }

    /// Minimum over all pairs of codewords; quadratic, meant as an oracle.
    pub fn min_distance_all_pairs(&self) -> u32 {
        let el = self.elements();
        (0..el.len())
            .into_par_iter()
            .flat_map_iter(|a| (a + 1..el.len()).map(move |b| (a, b)))
            .map(|(a, b)| el[a].distance_unchecked(&el[b]))
            .min()
            .unwrap_or(0)
    }

    /// The `i`-th projected code (zero-based), `Orb_beta(F_i)`.
    pub fn projected_code(&self, i: usize) -> Result<SubspaceOrbit> {
        let u = self.generator.subspaces().get(i).ok_or_else(|| {
            Error::BadIndices(format!(
                "position {i} out of range for a flag of length {}",
                self.generator.len()
            ))
        })?;
        Ok(SubspaceOrbit::new(u.clone(), self.beta_exp))
    }

    /// Sizes of the projected codes.
    pub fn projected_sizes(&self) -> Vec<u64> {
        let ctx = self.generator.ctx();
        self.generator
            .subspaces()
            .iter()
            .map(|u| {
                let bf = u.best_friend().expect("flag subspaces are nonzero");
                self.beta_order / gcd(self.beta_order, ctx.subfield_group_order(bf))
            })
            .collect()
    }

    pub fn is_disjoint(&self) -> bool {
        self.projected_sizes()
            .iter()
            .all(|&s| s == self.cardinality())
    }

    pub fn is_consistent(&self) -> bool {
        self.report().consistent
    }

    pub fn report(&self) -> &CodeReport {
        self.report.get_or_init(|| {
            let projected: Vec<ProjectedParams> = (0..self.generator.len())
                .map(|i| {
                    let orb = self.projected_code(i).expect("index in range");
                    let u = &self.generator.subspaces()[i];
                    ProjectedParams {
                        dim: u.dim(),
                        size: orb.len() as u64,
                        min_distance: orb.min_distance(),
                        best_friend: u.best_friend().expect("flag subspaces are nonzero"),
                    }
                })
                .collect();
            let min_distance = self.min_distance();
            let disjoint = projected.iter().all(|p| p.size == self.cardinality());
            let consistent =
                disjoint && min_distance == projected.iter().map(|p| p.min_distance).sum::<u32>();
            CodeReport {
                beta_order: self.beta_order,
                cardinality: self.cardinality(),
                min_distance,
                best_friend: self.best_friend,
                projected,
                disjoint,
                consistent,
                classification: self.generator.classify(),
            }
        })
    }

    /// Position of a flag in [`FlagCode::elements`].
    pub fn index_of(&self, f: &Flag) -> Option<usize> {
        self.elements().iter().position(|g| g == f)
    }

    /// Splits the code into orbits of the subgroup `<sub>` of `<beta>`.
    pub fn suborbits(&self, sub: FieldElement) -> Result<Vec<FlagCode>> {
        let ctx = self.generator.ctx();
        let sub_order = ctx.multiplicative_order(sub)? as u64;
        if !self.beta_order.is_multiple_of(sub_order) {
            return Err(Error::InvalidArgument(format!(
                "an element of order {sub_order} does not lie in a group of order {}",
                self.beta_order
            )));
        }
        let sub_exp = sub.exponent().unwrap() as u64;
        let index: HashMap<&Flag, usize> = self
            .elements()
            .iter()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let mut seen = vec![false; self.elements().len()];
        let mut out = Vec::new();
        for j in 0..seen.len() {
            if seen[j] {
                continue;
            }
            let piece = FlagCode::from_exponent(self.elements()[j].clone(), sub_exp);
            for f in piece.elements() {
                seen[index[f]] = true;
            }
            out.push(piece);
        }
        Ok(out)
    }
}

/// Builds `Orb_beta(F)`.
pub fn orbit_flag_code(f: &Flag, beta: FieldElement) -> Result<FlagCode> {
    FlagCode::new(f.clone(), beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::max_flag_distance;
    use crate::gfield::FieldCtx;
    use crate::subspaces::Subspace;
    use std::sync::Arc;

    fn field(n: u32) -> Arc<FieldCtx> {
        FieldCtx::build(2, 1, n).unwrap()
    }

    #[test]
    fn singleton_codes() {
        let k = field(8);
        let f = galois_construction(&k, &[2, 4]).unwrap();
        let c = FlagCode::new(f.clone(), k.subfield_generator(2).unwrap()).unwrap();
        assert_eq!(c.cardinality(), 1);
        assert_eq!(c.min_distance(), 0);
        assert!(c.is_disjoint());
        assert!(c.is_consistent());
        assert_eq!(c.projected_code(0).unwrap().len(), 1);
        assert_eq!(FlagCode::new(f, k.zero()).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn galois_code_parameters() {
        let k = field(8);
        let f = galois_construction(&k, &[2, 4]).unwrap();
        let c = orbit_flag_code(&f, k.alpha()).unwrap();
        assert_eq!(c.cardinality(), 85);
        assert_eq!(c.elements().len(), 85);
        assert_eq!(c.min_distance(), 4);
        assert_eq!(c.min_distance_all_pairs(), 4);
        assert_eq!(c.projected_code(0).unwrap().len(), 85);
        assert_eq!(c.projected_code(1).unwrap().len(), 17);
        let r = c.report();
        assert_eq!(r.projected[0].min_distance, 4);
        assert_eq!(r.projected[1].min_distance, 8);
        assert!(!r.disjoint);
        assert!(c.projected_code(2).is_err());
    }

    #[test]
    fn translate_distance_on_sixteen() {
        let k = field(16);
        let f = galois_construction(&k, &[2, 4, 8]).unwrap();
        let c = FlagCode::new(f.clone(), k.from_exponent(5)).unwrap();
        assert_eq!(c.min_distance(), 12);
        assert_eq!(
            min_distance_lower_bound_by_bf_count(&f, k.from_exponent(5)).unwrap(),
            4
        );
    }

    #[test]
    fn cardinality_matches_enumeration() {
        let k = field(10);
        let f = weaved_construction(&k, &[1, 5]).unwrap();
        for (order, beta) in subgroup_generators(&k) {
            let c = FlagCode::new(f.clone(), beta).unwrap();
            // stabilizer of this flag is trivial, so |C| = |beta|
            assert_eq!(c.cardinality(), order);
            let distinct: std::collections::HashSet<&Flag> = c.elements().iter().collect();
            assert_eq!(distinct.len() as u64, order);
            if order > 1 {
                assert_eq!(c.elements()[1], f.scalar_multiply(beta).unwrap());
            }
        }
    }

    #[test]
    fn min_distance_agrees_with_all_pairs() {
        let k = field(8);
        let flags = [
            galois_construction(&k, &[1, 2, 4]).unwrap(),
            basic_construction(&k, 2, 1, &[1, 2, 3]).unwrap(),
            basic_construction(&k, 1, 3, &[2, 5]).unwrap(),
            weaved_construction(&k, &[1, 2]).unwrap(),
            Flag::new(vec![
                Subspace::span_exponents(&k, &[0, 7]),
                Subspace::span_exponents(&k, &[0, 7, 30]),
            ])
            .unwrap(),
        ];
        for f in &flags {
            for (_, beta) in subgroup_generators(&k) {
                let c = FlagCode::new(f.clone(), beta).unwrap();
                if c.cardinality() <= 100 {
                    assert_eq!(c.min_distance(), c.min_distance_all_pairs());
                }
                let m = c.best_friend();
                assert_eq!(c.min_distance() % (2 * m), 0);
                assert!(c.min_distance() <= max_flag_distance(8, &f.type_vector()));
            }
        }
    }

    #[test]
    fn suborbit_decomposition() {
        let k = field(12);
        let f = basic_construction(&k, 2, 65, &[1, 2, 3]).unwrap();
        let c = orbit_flag_code(&f, k.alpha()).unwrap();
        assert_eq!(c.cardinality(), 1365);
        assert_eq!(c.min_distance(), 8);
        let pieces = c.suborbits(k.subfield_generator(6).unwrap()).unwrap();
        assert_eq!(pieces.len(), 65);
        assert!(pieces.iter().all(|p| p.cardinality() == 21));
        // flags of one piece share their top subspace
        for p in &pieces {
            let top = p.generator().subspaces()[2].clone();
            assert!(p.elements().iter().all(|g| g.subspaces()[2] == top));
        }
        assert!(c.suborbits(k.from_exponent(2)).is_ok());
        let small = orbit_flag_code(&f, k.from_exponent(3)).unwrap();
        assert!(small.suborbits(k.alpha()).is_err());
    }
}
