//! JSON input documents.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::abelian::FinAbGroup;
use crate::blocks::{GroupSubset, Sequence};
use crate::error::{Error, Result};
use crate::krull::KrullMonoid;
use crate::towers::{ArcModule, Tower, TowerKind, TowerSpec};

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub orders: Vec<i64>,
}

impl GroupDoc {
    pub fn build(&self) -> Result<FinAbGroup> {
        FinAbGroup::new(&self.orders)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubsetSpec {
    Named(String),
    Elements(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetDoc {
    pub group: GroupDoc,
    pub subset: SubsetSpec,
}

impl SubsetDoc {
    pub fn build(&self) -> Result<Arc<GroupSubset>> {
        let group = self.group.build()?;
        let subset = match &self.subset {
            SubsetSpec::Named(n) if n == "nonzero" => GroupSubset::nonzero(group),
            SubsetSpec::Named(n) => {
                return Err(Error::InvalidSpecification(format!("unknown subset `{n}`")))
            }
            SubsetSpec::Elements(es) => {
                let elements = es
                    .iter()
                    .map(|r| group.element(r))
                    .collect::<Result<Vec<_>>>()?;
                GroupSubset::new(group, elements)?
            }
        };
        Ok(Arc::new(subset))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeDoc {
    pub name: String,
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KrullDoc {
    pub group: GroupDoc,
    pub primes: Vec<PrimeDoc>,
}

impl KrullDoc {
    pub fn build(&self) -> Result<KrullMonoid> {
        let group = self.group.build()?;
        let primes = self
            .primes
            .iter()
            .map(|p| Ok((p.name.clone(), group.element(&p.class)?)))
            .collect::<Result<Vec<_>>>()?;
        KrullMonoid::new(group, primes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDoc {
    pub name: String,
    #[serde(rename = "type")]
    pub kind: TowerKind,
    pub length: u32,
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowersDoc {
    pub group: GroupDoc,
    pub towers: Vec<TowerDoc>,
}

impl TowersDoc {
    pub fn build(&self) -> Result<TowerSpec> {
        let group = self.group.build()?;
        let towers = self
            .towers
            .iter()
            .map(|t| {
                Ok(Tower {
                    name: t.name.clone(),
                    kind: t.kind,
                    length: t.length,
                    class: group.element(&t.class)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TowerSpec::new(group, towers)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDoc {
    pub bottom: i64,
    pub length: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcModuleDoc {
    pub cycle_length: u32,
    pub arcs: Vec<ArcDoc>,
}

impl ArcModuleDoc {
    pub fn build(&self) -> Result<ArcModule> {
        ArcModule::new(
            self.cycle_length,
            self.arcs.iter().map(|a| (a.bottom, a.length)),
        )
    }
}

/// Parses a sequence written as space-separated terms `g` or `g^k`, where `g`
/// is a residue (`2`) or a tuple (`(1,0)`). `[` `]` around the whole is allowed.
pub fn parse_sequence(subset: &Arc<GroupSubset>, text: &str) -> Result<Sequence> {
    let bad = |t: &str| Error::InvalidElement(format!("cannot parse term `{t}`"));
    let group = subset.group();
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    let mut terms = Vec::new();
    for token in body.split_whitespace() {
        let (g, k) = match token.rsplit_once('^') {
            Some((g, k)) => (g, k.parse::<u32>().map_err(|_| bad(token))?),
            None => (token, 1),
        };
        let residues = g
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|r| r.trim().parse::<i64>().map_err(|_| bad(token)))
            .collect::<Result<Vec<_>>>()?;
        let e = group.element(&residues)?;
        terms.extend(std::iter::repeat_n(e, k as usize));
    }
    Sequence::from_elements(subset.clone(), terms.iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_documents() {
        let d: SubsetDoc = parse(r#"{"group":{"orders":[2,2]},"subset":"nonzero"}"#).unwrap();
        assert_eq!(d.build().unwrap().len(), 3);
        let d: SubsetDoc = parse(r#"{"group":{"orders":[4]},"subset":[[1],[3],[5]]}"#).unwrap();
        assert_eq!(d.build().unwrap().len(), 2);
        let d: SubsetDoc = parse(r#"{"group":{"orders":[4]},"subset":"all"}"#).unwrap();
        assert!(d.build().is_err());
        assert!(parse::<SubsetDoc>(r#"{"group":{"orders":[4]}}"#).is_err());
    }

    #[test]
    fn krull_and_tower_documents() {
        let d: KrullDoc = parse(
            r#"{"group":{"orders":[2]},"primes":[{"name":"p","class":[1]},{"name":"q","class":[1]}]}"#,
        )
        .unwrap();
        let h = d.build().unwrap();
        assert_eq!(h.primes(), &["p".to_string(), "q".to_string()]);
        assert_eq!(h.class_of(1).residues(), &[1]);

        let d: TowersDoc = parse(
            r#"{"group":{"orders":[3]},"towers":[{"name":"T","type":"cycle","length":2,"class":[2]}]}"#,
        )
        .unwrap();
        let s = d.build().unwrap();
        assert_eq!(s.towers()[0].kind, TowerKind::Cycle);
        assert!(parse::<TowersDoc>(
            r#"{"group":{"orders":[3]},"towers":[{"name":"T","type":"spiral","length":2,"class":[2]}]}"#
        )
        .is_err());
    }

    #[test]
    fn sequence_strings() {
        let d: SubsetDoc = parse(r#"{"group":{"orders":[3]},"subset":"nonzero"}"#).unwrap();
        let sub = d.build().unwrap();
        let s = parse_sequence(&sub, "1^3 2^3").unwrap();
        assert_eq!(s.counts(), &[3, 3]);
        assert_eq!(parse_sequence(&sub, &s.to_string()).unwrap(), s);
        assert!(parse_sequence(&sub, "1^x").is_err());
        assert!(parse_sequence(&sub, "0").is_err());

        let d: SubsetDoc = parse(r#"{"group":{"orders":[2,2]},"subset":"nonzero"}"#).unwrap();
        let sub = d.build().unwrap();
        let s = parse_sequence(&sub, "[(1,0)^2 (0,1)]").unwrap();
        assert_eq!(s.len(), 3);
        assert!(parse_sequence(&sub, "").unwrap().is_empty());
    }

    #[test]
    fn arc_documents() {
        let d: ArcModuleDoc =
            parse(r#"{"cycle_length":3,"arcs":[{"bottom":-1,"length":2}]}"#).unwrap();
        let m = d.build().unwrap();
        assert_eq!(m.arcs()[0].bottom, 2);
    }
}
