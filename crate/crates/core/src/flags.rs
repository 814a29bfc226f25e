//! Flags: strictly nested chains of proper nonzero subspaces.

use std::sync::Arc;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::gfield::{FieldCtx, FieldElement};
use crate::subspaces::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    subspaces: Vec<Subspace>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagKind {
    Galois,
    GeneralizedGalois,
    Plain,
}

impl FlagKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FlagKind::Galois => "galois",
            FlagKind::GeneralizedGalois => "generalized_galois",
            FlagKind::Plain => "plain",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagClassification {
    pub kind: FlagKind,
    /// Zero-based positions holding a subfield.
    pub field_positions: Vec<usize>,
    /// Type vector of the longest Galois subflag; empty for plain flags.
    pub underlying_type: Vec<usize>,
}

impl Flag {
    /// Validates nesting and properness.
    pub fn new(subspaces: Vec<Subspace>) -> Result<Flag> {
        let first = subspaces.first().ok_or(Error::EmptyFlag)?;
        let ctx = first.ctx().clone();
        let n = ctx.n();
        for (i, u) in subspaces.iter().enumerate() {
            if !u.ctx().same_field(&ctx) {
                return Err(Error::FieldMismatch);
            }
            if u.dim() == 0 || u.dim() >= n as usize {
                return Err(Error::TrivialSubspace {
                    index: i,
                    dim: u.dim(),
                    n,
                });
            }
        }
        for i in 1..subspaces.len() {
            let (a, b) = (&subspaces[i - 1], &subspaces[i]);
            if a.dim() >= b.dim() || !a.is_subspace_of(b)? {
                return Err(Error::NotNested(i - 1, i));
            }
        }
        Ok(Flag { subspaces })
    }

    pub(crate) fn new_unchecked(subspaces: Vec<Subspace>) -> Flag {
        Flag { subspaces }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.subspaces[0].ctx()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn type_vector(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }

    /// Sum of componentwise subspace distances.
    pub fn distance(&self, other: &Flag) -> Result<u32> {
        if self.type_vector() != other.type_vector() {
            return Err(Error::TypeMismatch);
        }
        if !self.ctx().same_field(other.ctx()) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.distance_unchecked(other))
    }

    pub(crate) fn distance_unchecked(&self, other: &Flag) -> u32 {
        self.subspaces
            .iter()
            .zip(&other.subspaces)
            .map(|(a, b)| a.distance_unchecked(b))
            .sum()
    }

    pub(crate) fn mul_exp(&self, k: u64) -> Flag {
        Flag {
            subspaces: self.subspaces.iter().map(|u| u.mul_exp(k)).collect(),
        }
    }

    pub fn scalar_multiply(&self, b: FieldElement) -> Result<Flag> {
        let k = b.exponent().ok_or(Error::ZeroElement)?;
        Ok(self.mul_exp(k as u64))
    }

    pub fn classify(&self) -> FlagClassification {
        let field_positions: Vec<usize> = (0..self.len())
            .filter(|&i| self.subspaces[i].field_degree().is_some())
            .collect();
        let kind = match field_positions.len() {
            0 => FlagKind::Plain,
            k if k == self.len() => FlagKind::Galois,
            _ => FlagKind::GeneralizedGalois,
        };
        let underlying_type = field_positions
            .iter()
            .map(|&i| self.subspaces[i].dim())
            .collect();
        FlagClassification {
            kind,
            field_positions,
            underlying_type,
        }
    }

    /// Degree of the largest subfield over which every subspace is a vector space.
    pub fn best_friend(&self) -> u32 {
        self.subspaces
            .iter()
            .map(|u| u.best_friend().expect("flag subspaces are nonzero") as u64)
            .fold(self.ctx().n() as u64, gcd) as u32
    }

    /// The chain at the given zero-based, strictly increasing positions.
    pub fn subflag(&self, indices: &[usize]) -> Result<Flag> {
        if indices.is_empty() {
            return Err(Error::BadIndices("empty selection".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadIndices(
                "positions must be strictly increasing".into(),
            ));
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::BadIndices(format!(
                "position {i} out of range for a flag of length {}",
                self.len()
            )));
        }
        Ok(Flag {
            subspaces: indices.iter().map(|&i| self.subspaces[i].clone()).collect(),
        })
    }

    /// The underlying Galois subflag, if any subspace is a field.
    pub fn underlying_galois(&self) -> Option<Flag> {
        let c = self.classify();
        if c.field_positions.is_empty() {
            None
        } else {
            self.subflag(&c.field_positions).ok()
        }
    }

    /// Appends a subspace on top of the flag.
    pub fn extend(&self, u: Subspace) -> Result<Flag> {
        let mut subspaces = self.subspaces.clone();
        subspaces.push(u);
        Flag::new(subspaces)
    }
}

pub fn make_flag(subspaces: Vec<Subspace>) -> Result<Flag> {
    Flag::new(subspaces)
}

pub fn flag_distance(f: &Flag, g: &Flag) -> Result<u32> {
    f.distance(g)
}

pub fn scalar_multiply_flag(f: &Flag, b: FieldElement) -> Result<Flag> {
    f.scalar_multiply(b)
}

pub fn classify_flag(f: &Flag) -> FlagClassification {
    f.classify()
}

pub fn best_friend_flag(f: &Flag) -> u32 {
    f.best_friend()
}

pub fn subflag(f: &Flag, indices: &[usize]) -> Result<Flag> {
    f.subflag(indices)
}

/// Largest possible flag distance for a type vector on `F_{q^n}`.
pub fn max_flag_distance(n: u32, type_vector: &[usize]) -> u32 {
    type_vector
        .iter()
        .map(|&t| 2 * (t as u32).min(n - t as u32))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(n: u32) -> Arc<FieldCtx> {
        FieldCtx::build(2, 1, n).unwrap()
    }

    fn sub(k: &Arc<FieldCtx>, m: u32) -> Subspace {
        Subspace::subfield(k, m).unwrap()
    }

    /// Random flag of the given type, built bottom-up by adding random vectors.
    fn random_flag(k: &Arc<FieldCtx>, rng: &mut ChaCha8Rng, type_vector: &[usize]) -> Flag {
        let mut out = Vec::new();
        let mut cur = Subspace::zero(k);
        for &t in type_vector {
            while cur.dim() < t {
                let v = k.from_packed(rng.random_range(1..k.size())).unwrap();
                cur = cur.sum(&Subspace::span(k, &[v])).unwrap();
            }
            out.push(cur.clone());
        }
        Flag::new(out).unwrap()
    }

    /// The flag of type (1,2,3,4,5) on F_{2^10} spanned by powers of a primitive element of F_32.
    fn weaved_example() -> (Arc<FieldCtx>, Flag) {
        let k = field(10);
        let g = k.subfield_generator(5).unwrap().exponent().unwrap() as u64;
        let subs = (1..=5)
            .map(|j| Subspace::span_exponents(&k, &(0..j).map(|i| g * i).collect::<Vec<_>>()))
            .collect();
        (k.clone(), Flag::new(subs).unwrap())
    }

    #[test]
    fn construction_and_validation() {
        let k = field(8);
        let f = Flag::new(vec![sub(&k, 2), sub(&k, 4)]).unwrap();
        assert_eq!(f.type_vector(), vec![2, 4]);
        assert_eq!(f.classify().kind, FlagKind::Galois);
        assert_eq!(
            Flag::new(vec![sub(&k, 2), sub(&k, 2)]),
            Err(Error::NotNested(0, 1))
        );
        assert_eq!(Flag::new(vec![]), Err(Error::EmptyFlag));
        assert!(matches!(
            Flag::new(vec![Subspace::zero(&k)]),
            Err(Error::TrivialSubspace { .. })
        ));
        let u = Subspace::span_exponents(&k, &[3, 7, 11]);
        assert_eq!(Flag::new(vec![u.clone()]).unwrap().len(), 1);
        let moved = sub(&k, 2).mul_exp(1);
        assert_eq!(
            Flag::new(vec![moved, sub(&k, 4)]),
            Err(Error::NotNested(0, 1))
        );
    }

    #[test]
    fn distance_of_example_translate() {
        let (k, f) = weaved_example();
        let g2 = k.pow(k.subfield_generator(5).unwrap(), 2).unwrap();
        let moved = f.scalar_multiply(g2).unwrap();
        let parts: Vec<u32> = f
            .subspaces()
            .iter()
            .zip(moved.subspaces())
            .map(|(a, b)| a.distance(b).unwrap())
            .collect();
        assert_eq!(parts, vec![2, 4, 4, 2, 0]);
        assert_eq!(f.distance(&moved).unwrap(), 12);
        assert_eq!(f.distance(&f).unwrap(), 0);
        let other = Flag::new(vec![sub(&k, 5)]).unwrap();
        assert_eq!(f.distance(&other), Err(Error::TypeMismatch));
    }

    #[test]
    fn classification() {
        let k = field(8);
        let alpha = k.alpha();
        let f4 = sub(&k, 4);
        let third = f4.sum(&sub(&k, 2).scalar_multiply(alpha).unwrap()).unwrap();
        let f = Flag::new(vec![sub(&k, 2), f4.clone(), third]).unwrap();
        let c = f.classify();
        assert_eq!(c.kind, FlagKind::GeneralizedGalois);
        assert_eq!(c.field_positions, vec![0, 1]);
        assert_eq!(c.underlying_type, vec![2, 4]);
        assert_eq!(f.underlying_galois().unwrap(), f.subflag(&[0, 1]).unwrap());
        assert_eq!(f.best_friend(), 2);

        let plain = Flag::new(vec![
            Subspace::span_exponents(&k, &[1]),
            Subspace::span_exponents(&k, &[1, 2]),
        ])
        .unwrap();
        let c = plain.classify();
        assert_eq!(c.kind, FlagKind::Plain);
        assert!(c.underlying_type.is_empty());
        assert!(plain.underlying_galois().is_none());
    }

    #[test]
    fn best_friends() {
        let k = field(8);
        let galois = Flag::new(vec![sub(&k, 2), sub(&k, 4)]).unwrap();
        assert_eq!(galois.best_friend(), 2);
        let gamma = k.subfield_generator(4).unwrap();
        let mid = sub(&k, 2).sum(&Subspace::span(&k, &[gamma])).unwrap();
        let f = Flag::new(vec![sub(&k, 2), mid, sub(&k, 4)]).unwrap();
        assert_eq!(f.best_friend(), 1);
        let single = Flag::new(vec![sub(&k, 4)]).unwrap();
        assert_eq!(single.best_friend(), 4);
    }

    #[test]
    fn subflags() {
        let (_, f) = weaved_example();
        assert_eq!(f.subflag(&[0, 1, 2, 3, 4]).unwrap(), f);
        assert_eq!(f.subflag(&[2]).unwrap().type_vector(), vec![3]);
        assert!(f.subflag(&[]).is_err());
        assert!(f.subflag(&[1, 1]).is_err());
        assert!(f.subflag(&[7]).is_err());
        assert_eq!(f.underlying_galois().unwrap().type_vector(), vec![1, 5]);
    }

    #[test]
    fn max_distance() {
        assert_eq!(max_flag_distance(12, &[2, 4, 8]), 4 + 8 + 8);
        assert_eq!(max_flag_distance(10, &[1, 2, 3, 4, 5]), 30);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn flag_metric_and_action(seed in any::<u64>(), exp in 1i64..4095) {
            let k = field(12);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = [2usize, 5, 9];
            let a = random_flag(&k, &mut rng, &t);
            let b = random_flag(&k, &mut rng, &t);
            let c = random_flag(&k, &mut rng, &t);
            let ab = a.distance(&b).unwrap();
            prop_assert_eq!(ab, b.distance(&a).unwrap());
            prop_assert!(ab <= a.distance(&c).unwrap() + c.distance(&b).unwrap());
            prop_assert!(ab <= max_flag_distance(12, &t));
            let by_parts: u32 = a.subspaces().iter().zip(b.subspaces()).map(|(x, y)| x.distance(y).unwrap()).sum();
            prop_assert_eq!(ab, by_parts);

            let beta = k.from_exponent(exp);
            let moved = a.scalar_multiply(beta).unwrap();
            prop_assert_eq!(moved.type_vector(), a.type_vector());
            prop_assert_eq!(moved.scalar_multiply(k.inv(beta).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(moved.best_friend(), a.best_friend());
            prop_assert_eq!(a.scalar_multiply(k.one()).unwrap(), a);
        }

        #[test]
        fn best_friend_lies_in_first_subspace(seed in any::<u64>(), exp in 1i64..4095) {
            let k = field(12);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // flags through 1 built on top of a random subfield
            let m = [1u32, 2, 3, 4, 6][rng.random_range(0..5)];
            let base = sub(&k, m);
            let mut subs = vec![base.clone()];
            let mut cur = base;
            while cur.dim() + (m as usize) < 12 && rng.random_bool(0.7) {
                let v = k.from_exponent(rng.random_range(0..4095));
                let next = cur.sum(&sub(&k, m).scalar_multiply(v).unwrap()).unwrap();
                if next.dim() < 12 && next.dim() > cur.dim() {
                    subs.push(next.clone());
                    cur = next;
                }
            }
            let f = Flag::new(subs).unwrap();
            let bf = f.best_friend();
            prop_assert!(sub(&k, bf).is_subspace_of(&f.subspaces()[0]).unwrap());
            prop_assert_eq!(f.mul_exp(exp as u64).best_friend(), bf);
        }
    }
}
