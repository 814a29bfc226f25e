//! Galois, basic and weaved flags, plus a deterministic extension search.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::flags::Flag;
use crate::gfield::FieldCtx;
use crate::subspaces::{minpoly_degree, regular_form_any, regular_form_subspace, Subspace};

fn check_divisor_chain(n: u32, chain: &[u32]) -> Result<()> {
    if chain.is_empty() {
        return Err(Error::InvalidChain("empty chain".into()));
    }
    if chain[0] == 0 {
        return Err(Error::InvalidChain("entries must be positive".into()));
    }
    for w in chain.windows(2) {
        if w[1] <= w[0] || w[1] % w[0] != 0 {
            return Err(Error::InvalidChain(format!(
                "{} does not properly divide {}",
                w[0], w[1]
            )));
        }
    }
    let last = *chain.last().unwrap();
    if last >= n || !n.is_multiple_of(last) {
        return Err(Error::InvalidChain(format!(
            "{last} is not a proper divisor of {n}"
        )));
    }
    Ok(())
}

/// `(F_{q^{t_1}}, ..., F_{q^{t_r}})` for a chain `t_1 | ... | t_r | n`.
pub fn galois_construction(ctx: &Arc<FieldCtx>, type_vector: &[u32]) -> Result<Flag> {
    check_divisor_chain(ctx.n(), type_vector)?;
    let subs = type_vector
        .iter()
        .map(|&t| Subspace::subfield(ctx, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Flag::new_unchecked(subs))
}

/// Flag of regular forms `F_i = sum_{j < s_i} F_{q^m} alpha^{l j}`.
pub fn basic_construction(ctx: &Arc<FieldCtx>, m: u32, l: u64, s: &[u32]) -> Result<Flag> {
    if s.is_empty() {
        return Err(Error::InvalidArgument(
            "the list of term counts is empty".into(),
        ));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "term counts must be strictly increasing".into(),
        ));
    }
    let subs = s
        .iter()
        .map(|&t| regular_form_subspace(ctx, m, l, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Flag::new_unchecked(subs))
}

/// Type vector `(m_1, 2m_1, ..., m_2 - m_1, m_2, ..., n - m_k)` of a weaved flag.
pub fn weaved_type(n: u32, chain: &[u32]) -> Result<Vec<u32>> {
    check_divisor_chain(n, chain)?;
    let mut out = Vec::new();
    for (i, &m) in chain.iter().enumerate() {
        let next = chain.get(i + 1).copied().unwrap_or(n);
        out.extend((1..next / m).map(|j| m * j));
    }
    Ok(out)
}

/// Weaving of basic constructions along `m_1 | ... | m_k | n`.
pub fn weaved_construction(ctx: &Arc<FieldCtx>, chain: &[u32]) -> Result<Flag> {
    let n = ctx.n();
    check_divisor_chain(n, chain)?;
    let mut subs = Vec::new();
    for (i, &m) in chain.iter().enumerate() {
        let next = chain.get(i + 1).copied().unwrap_or(n);
        let c = ctx.group_order() as u64 / ctx.subfield_group_order(next);
        debug_assert_eq!(minpoly_degree(ctx, c, m), next / m);
        for j in 1..next / m {
            subs.push(regular_form_any(ctx, m, c, j)?);
        }
    }
    Ok(Flag::new_unchecked(subs))
}

/// Appends a subspace of dimension `target_dim` with best friend exactly
/// `F_{q^bf}`, grown from the top of `f` by adding lines `F_{q^bf} alpha^j`
/// in increasing `j`.
pub fn extend_flag_by_search(f: &Flag, target_dim: usize, bf: u32) -> Result<Flag> {
    let ctx = f.ctx().clone();
    let n = ctx.n();
    let top = f.subspaces().last().expect("flags are nonempty");
    if bf == 0 || !n.is_multiple_of(bf) {
        return Err(Error::NotADivisor { m: bf, n });
    }
    if target_dim <= top.dim() {
        return Err(Error::BadTargetDimension {
            target: target_dim,
            reason: format!("must exceed the top dimension {}", top.dim()),
        });
    }
    if target_dim >= n as usize {
        return Err(Error::BadTargetDimension {
            target: target_dim,
            reason: format!("must be below {n}"),
        });
    }
    if !target_dim.is_multiple_of(bf as usize) {
        return Err(Error::BadTargetDimension {
            target: target_dim,
            reason: format!("must be a multiple of {bf}"),
        });
    }
    let line = Subspace::subfield(&ctx, bf)?;
    let mut w = top.clone();
    for j in 0..ctx.group_order() as u64 {
        let cand = w.sum(&line.mul_exp(j))?;
        if cand.dim() == w.dim() || cand.dim() > target_dim {
            continue;
        }
        if cand.dim() < target_dim {
            w = cand;
        } else if cand.best_friend()? == bf {
            return f.extend(cand);
        }
    }
    Err(Error::SearchExhausted {
        target: target_dim,
        bf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flagcodes::FlagCode;
    use crate::flags::{max_flag_distance, FlagKind};

    fn field(n: u32) -> Arc<FieldCtx> {
        FieldCtx::build(2, 1, n).unwrap()
    }

    #[test]
    fn galois_chains() {
        let k = field(12);
        assert_eq!(
            galois_construction(&k, &[2, 4]).unwrap().type_vector(),
            vec![2, 4]
        );
        assert!(matches!(
            galois_construction(&k, &[2, 3]),
            Err(Error::InvalidChain(_))
        ));
        assert!(matches!(
            galois_construction(&k, &[4, 12]),
            Err(Error::InvalidChain(_))
        ));
        assert!(matches!(
            galois_construction(&k, &[5]),
            Err(Error::InvalidChain(_))
        ));
        assert!(matches!(
            galois_construction(&k, &[]),
            Err(Error::InvalidChain(_))
        ));
        let spread = galois_construction(&k, &[3]).unwrap();
        let c = FlagCode::new(spread, k.alpha()).unwrap();
        assert_eq!(c.cardinality(), 4095 / 7);
        assert_eq!(c.min_distance(), 6);
    }

    #[test]
    fn basic_examples() {
        let k8 = field(8);
        let f = basic_construction(&k8, 2, 1, &[1, 2, 3]).unwrap();
        assert_eq!(f.type_vector(), vec![2, 4, 6]);
        let c = FlagCode::new(f, k8.alpha()).unwrap();
        assert_eq!((c.cardinality(), c.min_distance()), (85, 12));
        assert!(c.is_consistent());

        let f = basic_construction(&k8, 2, 1, &[1, 3]).unwrap();
        let c = FlagCode::new(f.clone(), k8.alpha()).unwrap();
        assert_eq!((c.cardinality(), c.min_distance()), (85, 8));
        assert_eq!(c.min_distance(), max_flag_distance(8, &f.type_vector()));

        assert_eq!(
            basic_construction(&k8, 2, 1, &[1, 4]).unwrap_err(),
            Error::AmbientSpace { t: 4 }
        );
        assert!(basic_construction(&k8, 2, 1, &[2, 1]).is_err());
        assert!(basic_construction(&k8, 2, 1, &[]).is_err());

        let k12 = field(12);
        let f = basic_construction(&k12, 2, 65, &[1, 2, 3]).unwrap();
        let c = FlagCode::new(f, k12.alpha()).unwrap();
        assert!(!c.is_disjoint());
        assert_eq!(c.min_distance(), 8);
    }

    #[test]
    fn weaved_examples() {
        let k10 = field(10);
        let f = weaved_construction(&k10, &[1, 5]).unwrap();
        assert_eq!(f.type_vector(), vec![1, 2, 3, 4, 5]);
        assert_eq!(f.classify().underlying_type, vec![1, 5]);
        let c = FlagCode::new(f, k10.alpha()).unwrap();
        assert_eq!((c.cardinality(), c.min_distance()), (1023, 8));

        let k12 = field(12);
        let f = weaved_construction(&k12, &[2, 4]).unwrap();
        assert_eq!(f.type_vector(), vec![2, 4, 8]);
        assert_eq!(weaved_type(12, &[2, 4]).unwrap(), vec![2, 4, 8]);
        assert_eq!(f.classify().kind, FlagKind::GeneralizedGalois);
        let c = FlagCode::new(f, k12.alpha()).unwrap();
        assert_eq!((c.cardinality(), c.min_distance()), (1365, 4));

        // a single-entry chain is the basic construction with l = 1
        let k8 = field(8);
        assert_eq!(
            weaved_construction(&k8, &[2]).unwrap(),
            basic_construction(&k8, 2, 1, &[1, 2, 3]).unwrap()
        );
        assert!(weaved_construction(&k8, &[2, 2]).is_err());
    }

    #[test]
    fn extension_search() {
        let k12 = field(12);
        let f = weaved_construction(&k12, &[2, 4]).unwrap();
        let g = extend_flag_by_search(&f, 10, 2).unwrap();
        assert_eq!(g.type_vector(), vec![2, 4, 8, 10]);
        assert_eq!(g.subspaces()[3].best_friend().unwrap(), 2);
        let c = FlagCode::new(g.clone(), k12.from_exponent(5)).unwrap();
        assert_eq!(c.cardinality(), 273);
        assert_eq!(c.min_distance(), 24);
        assert_eq!(c.min_distance(), max_flag_distance(12, &g.type_vector()));
        // deterministic
        assert_eq!(extend_flag_by_search(&f, 10, 2).unwrap(), g);

        let k8 = field(8);
        let base = galois_construction(&k8, &[2]).unwrap();
        let ext = extend_flag_by_search(&base, 6, 2).unwrap();
        assert_eq!(ext.subspaces()[1].best_friend().unwrap(), 2);
        assert!(matches!(
            extend_flag_by_search(&base, 2, 2),
            Err(Error::BadTargetDimension { .. })
        ));
        assert!(matches!(
            extend_flag_by_search(&base, 5, 2),
            Err(Error::BadTargetDimension { .. })
        ));
        assert!(matches!(
            extend_flag_by_search(&base, 6, 3),
            Err(Error::NotADivisor { .. })
        ));
    }
}
