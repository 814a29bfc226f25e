//! `key = value` code descriptions with `#` comments.
//!
//! ```text
//! p = 2
//! n = 10
//! construction = weaved
//! chain = 1,5
//! beta_order = 1023
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use flagcode::flagcodes::{
    basic_construction, extend_flag_by_search, galois_construction, weaved_construction,
};
use flagcode::{FieldCtx, Flag, FlagCode, Subspace};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Galois { type_vector: Vec<u32> },
    Basic { m: u32, l: u64, s: Vec<u32> },
    Weaved { chain: Vec<u32> },
    Custom { subspaces: Vec<Vec<u64>> },
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::Galois { .. } => "galois",
            Construction::Basic { .. } => "basic",
            Construction::Weaved { .. } => "weaved",
            Construction::Custom { .. } => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Beta {
    Exponent(u64),
    Order(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub p: u32,
    pub e: u32,
    pub n: u32,
    pub construction: Construction,
    /// Optional `(dimension, best friend degree)` appended by search.
    pub extend: Option<(usize, u32)>,
    pub beta: Beta,
}

struct Entries {
    map: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.map.remove(key)
    }

    fn require(&mut self, key: &str) -> Result<(usize, String), SpecError> {
        self.take(key).ok_or_else(|| SpecError::Missing(key.into()))
    }
}

fn num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, SpecError> {
    v.trim().parse().map_err(|_| SpecError::Line {
        line,
        msg: format!("`{key}` expects a non-negative integer, got `{v}`"),
    })
}

fn list<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<Vec<T>, SpecError> {
    if v.trim().is_empty() {
        return Err(SpecError::Line {
            line,
            msg: format!("`{key}` expects a comma-separated list"),
        });
    }
    v.split(',').map(|x| num(line, key, x)).collect()
}

pub fn parse(text: &str) -> Result<CodeSpec, SpecError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (k, v) = content.split_once('=').ok_or_else(|| SpecError::Line {
            line,
            msg: format!("expected `key = value`, got `{content}`"),
        })?;
        let k = k.trim();
        if k.is_empty() {
            return Err(SpecError::Line {
                line,
                msg: "empty key".into(),
            });
        }
        if let Some((prev, _)) = map.insert(k.to_string(), (line, v.trim().to_string())) {
            return Err(SpecError::Line {
                line,
                msg: format!("`{k}` already set on line {prev}"),
            });
        }
    }
    let mut ent = Entries { map };

    let (l, v) = ent.require("p")?;
    let p = num(l, "p", &v)?;
    let e = match ent.take("e") {
        Some((l, v)) => num(l, "e", &v)?,
        None => 1,
    };
    let (l, v) = ent.require("n")?;
    let n = num(l, "n", &v)?;

    let (cl, cname) = ent.require("construction")?;
    let construction = match cname.as_str() {
        "galois" => {
            let (l, v) = ent.require("type")?;
            Construction::Galois {
                type_vector: list(l, "type", &v)?,
            }
        }
        "basic" => {
            let (l, v) = ent.require("m")?;
            let m = num(l, "m", &v)?;
            let (l, v) = ent.require("l")?;
            let lv = num(l, "l", &v)?;
            let (l, v) = ent.require("s")?;
            Construction::Basic {
                m,
                l: lv,
                s: list(l, "s", &v)?,
            }
        }
        "weaved" => {
            let (l, v) = ent.require("chain")?;
            Construction::Weaved {
                chain: list(l, "chain", &v)?,
            }
        }
        "custom" => {
            let keys: Vec<String> = ent
                .map
                .keys()
                .filter(|k| k.starts_with("subspace."))
                .cloned()
                .collect();
            let mut indexed = Vec::new();
            for k in keys {
                let (l, v) = ent.take(&k).unwrap();
                let idx: usize = k["subspace.".len()..]
                    .parse()
                    .map_err(|_| SpecError::Line {
                        line: l,
                        msg: format!("bad subspace key `{k}`"),
                    })?;
                indexed.push((idx, list(l, &k, &v)?));
            }
            indexed.sort_by_key(|(i, _)| *i);
            if indexed.is_empty() {
                return Err(SpecError::Missing("subspace.1".into()));
            }
            for (pos, (idx, _)) in indexed.iter().enumerate() {
                if *idx != pos + 1 {
                    return Err(SpecError::Invalid(format!(
                        "subspace keys must run 1, 2, ...; found subspace.{idx}"
                    )));
                }
            }
            Construction::Custom {
                subspaces: indexed.into_iter().map(|(_, v)| v).collect(),
            }
        }
        other => {
            return Err(SpecError::Line {
                line: cl,
                msg: format!("unknown construction `{other}`"),
            })
        }
    };

    let extend = match ent.take("extend") {
        Some((l, v)) => match list::<u32>(l, "extend", &v)?.as_slice() {
            [d, bf] => Some((*d as usize, *bf)),
            _ => {
                return Err(SpecError::Line {
                    line: l,
                    msg: "`extend` expects `dimension,best_friend`".into(),
                })
            }
        },
        None => None,
    };

    let beta = match (ent.take("beta_exponent"), ent.take("beta_order")) {
        (Some(_), Some((l, _))) => {
            return Err(SpecError::Line {
                line: l,
                msg: "set only one of `beta_exponent` and `beta_order`".into(),
            })
        }
        (Some((l, v)), None) => Beta::Exponent(num(l, "beta_exponent", &v)?),
        (None, Some((l, v))) => Beta::Order(num(l, "beta_order", &v)?),
        (None, None) => Beta::Exponent(1),
    };

    if let Some((k, (l, _))) = ent.map.into_iter().min_by_key(|(_, (l, _))| *l) {
        return Err(SpecError::Line {
            line: l,
            msg: format!("unknown key `{k}` for construction `{cname}`"),
        });
    }
    Ok(CodeSpec {
        p,
        e,
        n,
        construction,
        extend,
        beta,
    })
}

impl CodeSpec {
    pub fn field(&self) -> flagcode::Result<Arc<FieldCtx>> {
        FieldCtx::build(self.p, self.e, self.n)
    }

    pub fn flag(&self, ctx: &Arc<FieldCtx>) -> flagcode::Result<Flag> {
        let f = match &self.construction {
            Construction::Galois { type_vector } => galois_construction(ctx, type_vector)?,
            Construction::Basic { m, l, s } => basic_construction(ctx, *m, *l, s)?,
            Construction::Weaved { chain } => weaved_construction(ctx, chain)?,
            Construction::Custom { subspaces } => Flag::new(
                subspaces
                    .iter()
                    .map(|exps| Subspace::span_exponents(ctx, exps))
                    .collect(),
            )?,
        };
        match self.extend {
            Some((dim, bf)) => extend_flag_by_search(&f, dim, bf),
            None => Ok(f),
        }
    }

    /// Exponent `k` of `beta = alpha^k`.
    pub fn beta_exponent(&self, ctx: &FieldCtx) -> flagcode::Result<u64> {
        let order = ctx.group_order() as u64;
        match self.beta {
            Beta::Exponent(k) => Ok(k % order),
            Beta::Order(d) if d > 0 && order.is_multiple_of(d) => Ok(order / d),
            Beta::Order(d) => Err(flagcode::Error::InvalidArgument(format!(
                "{d} does not divide {order}"
            ))),
        }
    }

    pub fn code(&self) -> flagcode::Result<FlagCode> {
        let ctx = self.field()?;
        let f = self.flag(&ctx)?;
        Ok(FlagCode::from_exponent(f, self.beta_exponent(&ctx)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weaved_file() {
        let s = parse("# weaved flag on 2^10\np = 2\nn = 10\nconstruction = weaved\nchain = 1, 5\nbeta_order = 1023\n").unwrap();
        assert_eq!(s.construction, Construction::Weaved { chain: vec![1, 5] });
        assert_eq!((s.p, s.e, s.n, s.beta), (2, 1, 10, Beta::Order(1023)));
        let c = s.code().unwrap();
        assert_eq!(c.beta_exponent(), 1);
    }

    #[test]
    fn custom_and_extend() {
        let s = parse(
            "p=2\nn=8\nconstruction=custom\nsubspace.2=0,17,34,51\nsubspace.1=0,85\nextend=6,2\n",
        )
        .unwrap();
        assert_eq!(
            s.construction,
            Construction::Custom {
                subspaces: vec![vec![0, 85], vec![0, 17, 34, 51]]
            }
        );
        assert_eq!(s.extend, Some((6, 2)));
        assert_eq!(s.code().unwrap().type_vector(), vec![2, 4, 6]);
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let err = |t: &str| parse(t).unwrap_err();
        assert_eq!(
            err("p=2\nn=8\nconstruction=galois\ntype=2,4\ncolour=red\n"),
            SpecError::Line {
                line: 5,
                msg: "unknown key `colour` for construction `galois`".into()
            }
        );
        assert!(matches!(err("p=2\nn=x\n"), SpecError::Line { line: 2, .. }));
        assert!(matches!(
            err("p=2\njunk\n"),
            SpecError::Line { line: 2, .. }
        ));
        assert!(matches!(err("p=2\np=3\n"), SpecError::Line { line: 2, .. }));
        assert_eq!(err("p=2\nn=8\n"), SpecError::Missing("construction".into()));
        assert!(matches!(
            err("p=2\nn=8\nconstruction=basic\nm=2\nl=1\ns=\n"),
            SpecError::Line { line: 6, .. }
        ));
        assert!(matches!(
            err("p=2\nn=8\nconstruction=custom\nsubspace.2=1\n"),
            SpecError::Invalid(_)
        ));
        assert!(matches!(
            err("p=2\nn=8\nconstruction=galois\ntype=2\nbeta_order=3\nbeta_exponent=1\n"),
            SpecError::Line { .. }
        ));
        assert!(matches!(
            err("p=2\nn=8\nconstruction=magic\n"),
            SpecError::Line { line: 3, .. }
        ));
    }
}
