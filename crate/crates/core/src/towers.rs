//! Tower combinatorics: the covering of a cyclic group by disjoint starting
//! segments of arithmetic progressions, submodule and quotient extraction for
//! finite-length modules over cycle towers, and the genus update rule for
//! maximal submodules.
//!
//! A uniserial module whose composition factors lie in a cycle tower of
//! length `n` is an [`Arc`]: its socle has class `a`, and reading upward the
//! factors are `a, a-1, ..., a-k` modulo `n`. Its submodules are exactly its
//! bottom segments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GroupElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TowerKind {
    Cycle,
    Faithful,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub name: String,
    pub kind: TowerKind,
    pub length: u32,
    pub class: GroupElement,
}

impl Tower {
    pub fn is_trivial(&self) -> bool {
        self.length == 1
    }

    /// Label of the `i`-th simple module. For a faithful tower index 0 is the
    /// faithful top and index `i + 1` is the unfaithful successor of index `i`.
    /// For a cycle tower the successor of `i` is `i + 1 mod length`.
    pub fn simple(&self, i: u32) -> String {
        format!("{}:{}", self.name, i)
    }

    fn is_unfaithful(&self, i: u32) -> bool {
        match self.kind {
            TowerKind::Cycle => true,
            TowerKind::Faithful => i > 0,
        }
    }

    fn unfaithful_successor(&self, i: u32) -> Option<u32> {
        match self.kind {
            TowerKind::Cycle => Some((i + 1) % self.length),
            TowerKind::Faithful => (i + 1 < self.length).then_some(i + 1),
        }
    }
}

/// A finite collection of towers with classes in a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpec {
    group: FinAbGroup,
    towers: Vec<Tower>,
}

impl TowerSpec {
    pub fn new(group: FinAbGroup, towers: Vec<Tower>) -> Result<Self> {
        let mut names = BTreeSet::new();
        for t in &towers {
            if t.name.is_empty() || t.name.contains(':') {
                return Err(Error::InvalidSpecification(format!(
                    "tower name `{}` must be nonempty and free of `:`",
                    t.name
                )));
            }
            if !names.insert(t.name.as_str()) {
                return Err(Error::InvalidSpecification(format!(
                    "duplicate tower name `{}`",
                    t.name
                )));
            }
            if t.length == 0 {
                return Err(Error::InvalidSpecification(format!(
                    "tower `{}` has length 0",
                    t.name
                )));
            }
            if !group.contains(&t.class) {
                return Err(Error::InvalidElement(format!(
                    "class {} of tower `{}` is not in {group}",
                    t.class, t.name
                )));
            }
        }
        Ok(Self { group, towers })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn towers(&self) -> &[Tower] {
        &self.towers
    }

    fn locate(&self, label: &str) -> Result<(&Tower, u32)> {
        let not_found = || Error::InvalidSpecification(format!("unknown simple module `{label}`"));
        let (name, idx) = label.rsplit_once(':').ok_or_else(not_found)?;
        let idx: u32 = idx.parse().map_err(|_| not_found())?;
        let tower = self
            .towers
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(not_found)?;
        if idx >= tower.length {
            return Err(not_found());
        }
        Ok((tower, idx))
    }

    /// Labels of all unfaithful simple modules.
    pub fn unfaithful_simples(&self) -> Vec<String> {
        self.towers
            .iter()
            .flat_map(|t| {
                (0..t.length)
                    .filter(|&i| t.is_unfaithful(i))
                    .map(|i| t.simple(i))
            })
            .collect()
    }

    pub fn simples(&self) -> Vec<String> {
        self.towers
            .iter()
            .flat_map(|t| (0..t.length).map(|i| t.simple(i)))
            .collect()
    }

    pub fn is_unfaithful(&self, label: &str) -> Result<bool> {
        let (t, i) = self.locate(label)?;
        Ok(t.is_unfaithful(i))
    }

    pub fn unfaithful_successor(&self, label: &str) -> Result<Option<String>> {
        let (t, i) = self.locate(label)?;
        Ok(t.unfaithful_successor(i).map(|j| t.simple(j)))
    }

    pub fn tower_of(&self, label: &str) -> Result<&Tower> {
        Ok(self.locate(label)?.0)
    }
}

/// `(udim, ρ(·, W))` for the unfaithful simple modules `W`. Missing labels have rank 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusVector {
    pub udim: u32,
    #[serde(default)]
    pub ranks: BTreeMap<String, u32>,
}

impl GenusVector {
    pub fn new(udim: u32, ranks: impl IntoIterator<Item = (String, u32)>) -> Result<Self> {
        if udim == 0 {
            return Err(Error::InvalidSpecification(
                "uniform dimension must be positive".into(),
            ));
        }
        Ok(Self {
            udim,
            ranks: ranks.into_iter().filter(|&(_, r)| r > 0).collect(),
        })
    }

    pub fn rank(&self, label: &str) -> u32 {
        self.ranks.get(label).copied().unwrap_or(0)
    }

    fn set(&mut self, label: &str, r: u32) {
        if r == 0 {
            self.ranks.remove(label);
        } else {
            self.ranks.insert(label.to_string(), r);
        }
    }

    /// `ρ(·, T)`: the rank summed over the simples of a tower.
    pub fn tower_rank(&self, tower: &Tower) -> u64 {
        (0..tower.length)
            .filter(|&i| tower.is_unfaithful(i))
            .map(|i| self.rank(&tower.simple(i)) as u64)
            .sum()
    }
}

/// Genus of a maximal submodule `M ⊂ P` with `P/M ≅ V`:
/// `Ψ(M) = Ψ(P) + e_{(V)^+} - e_{(V)}`, where `e_{(V)} = 0` for faithful `V`
/// and `e_{(V)^+} = 0` when `V` has no unfaithful successor.
pub fn genus_step(genus: &GenusVector, simple: &str, spec: &TowerSpec) -> Result<GenusVector> {
    for label in genus.ranks.keys() {
        if !spec.is_unfaithful(label)? {
            return Err(Error::InvalidSpecification(format!(
                "genus carries a rank at faithful simple `{label}`"
            )));
        }
    }
    let mut delta: BTreeMap<String, i64> = BTreeMap::new();
    if let Some(succ) = spec.unfaithful_successor(simple)? {
        *delta.entry(succ).or_default() += 1;
    }
    if spec.is_unfaithful(simple)? {
        *delta.entry(simple.to_string()).or_default() -= 1;
    }
    let mut out = genus.clone();
    for (label, d) in delta {
        let r = genus.rank(&label) as i64 + d;
        if r < 0 {
            return Err(Error::InvalidStep(format!(
                "rank at `{label}` would drop below zero; no maximal submodule with quotient `{simple}` exists"
            )));
        }
        out.set(&label, r as u32);
    }
    Ok(out)
}

/// Cycle standard rank relative to `base`: `ρ(g,T)·udim(base) = ρ(base,T)·udim(g)`
/// for every cycle tower `T`.
pub fn check_cycle_standard_rank(
    genus: &GenusVector,
    spec: &TowerSpec,
    base: &GenusVector,
) -> bool {
    spec.towers
        .iter()
        .filter(|t| t.kind == TowerKind::Cycle)
        .all(|t| genus.tower_rank(t) * base.udim as u64 == base.tower_rank(t) * genus.udim as u64)
}

/// Prefix lengths `m_i ∈ [0, k_i + 1]` with `Σ m_i = n` such that the starting
/// segments `{a_i + j : j < m_i}` partition `Z/nZ`, given progressions
/// `{a_i + j : j ≤ k_i}` that cover `Z/nZ`.
///
/// Follows the constructive induction: while some progression is redundant
/// (the others already cover), the redundant one of largest index is dropped
/// with `m_i = 0`. Once none is redundant, each `m_i` is the largest value for
/// which `a_i + m_i - 1` is not covered by any other progression.
pub fn comb_cover_prefixes(n: u32, progressions: &[(i64, u32)]) -> Result<Vec<u32>> {
    if n == 0 {
        return Err(Error::InvalidSpecification(
            "cyclic group order must be positive".into(),
        ));
    }
    let starts: Vec<u32> = progressions
        .iter()
        .map(|&(a, _)| a.rem_euclid(n as i64) as u32)
        .collect();
    let spans: Vec<u32> = progressions.iter().map(|&(_, k)| k).collect();
    let members: Vec<Vec<bool>> = starts
        .iter()
        .zip(&spans)
        .map(|(&a, &k)| {
            let mut m = vec![false; n as usize];
            for j in 0..=(k.min(n - 1)) {
                m[((a + j) % n) as usize] = true;
            }
            m
        })
        .collect();

    let covers = |active: &[usize]| -> Option<u32> {
        (0..n).find(|&r| !active.iter().any(|&i| members[i][r as usize]))
    };

    let mut active: Vec<usize> = (0..progressions.len()).collect();
    if let Some(residue) = covers(&active) {
        return Err(Error::NotACovering {
            modulus: n,
            residue,
        });
    }
    loop {
        if active.len() <= 1 {
            break;
        }
        let redundant = active.iter().rev().copied().find(|&i| {
            let others: Vec<usize> = active.iter().copied().filter(|&j| j != i).collect();
            covers(&others).is_none()
        });
        match redundant {
            Some(i) => active.retain(|&j| j != i),
            None => break,
        }
    }

    let mut m = vec![0u32; progressions.len()];
    if let [only] = active[..] {
        m[only] = n;
    } else {
        for &i in &active {
            let in_others = |r: u32| active.iter().any(|&j| j != i && members[j][r as usize]);
            let top = spans[i].min(n - 1) + 1;
            m[i] = (1..=top)
                .rev()
                .find(|&len| !in_others((starts[i] + len - 1) % n))
                .ok_or_else(|| {
                    Error::InternalConsistency(format!(
                        "progression {i} has no element outside the others"
                    ))
                })?;
        }
    }
    verify_prefixes(n, &starts, &spans, &m)?;
    Ok(m)
}

fn verify_prefixes(n: u32, starts: &[u32], spans: &[u32], m: &[u32]) -> Result<()> {
    let mut seen = vec![false; n as usize];
    for ((&a, &k), &mi) in starts.iter().zip(spans).zip(m) {
        if mi > k + 1 {
            return Err(Error::InternalConsistency(format!(
                "prefix {mi} exceeds {}",
                k + 1
            )));
        }
        for j in 0..mi {
            let r = ((a + j) % n) as usize;
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::InternalConsistency(format!(
                    "residue {r} covered twice"
                )));
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::InternalConsistency("prefixes do not cover".into()));
    }
    Ok(())
}

/// A uniserial module over a cycle tower: socle class `bottom`, composition length `length`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub bottom: u32,
    pub length: u32,
}

/// A direct sum of [`Arc`]s over the cycle tower of length `cycle_length`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcModule {
    cycle_length: u32,
    arcs: Vec<Arc>,
}

impl ArcModule {
    pub fn new(cycle_length: u32, arcs: impl IntoIterator<Item = (i64, u32)>) -> Result<Self> {
        if cycle_length == 0 {
            return Err(Error::InvalidSpecification(
                "cycle length must be positive".into(),
            ));
        }
        let arcs = arcs
            .into_iter()
            .map(|(bottom, length)| {
                if length == 0 {
                    return Err(Error::InvalidSpecification(
                        "arc length must be positive".into(),
                    ));
                }
                Ok(Arc {
                    bottom: bottom.rem_euclid(cycle_length as i64) as u32,
                    length,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { cycle_length, arcs })
    }

    pub fn zero(cycle_length: u32) -> Self {
        Self {
            cycle_length,
            arcs: Vec::new(),
        }
    }

    pub fn cycle_length(&self) -> u32 {
        self.cycle_length
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn composition_length(&self) -> u32 {
        self.arcs.iter().map(|a| a.length).sum()
    }

    /// Composition factor classes of an arc, bottom to top.
    pub fn residues(&self, arc: &Arc) -> Vec<u32> {
        let n = self.cycle_length as i64;
        (0..arc.length as i64)
            .map(|j| (arc.bottom as i64 - j).rem_euclid(n) as u32)
            .collect()
    }

    /// Multiplicity of each residue class among all composition factors.
    pub fn class_vector(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.cycle_length as usize];
        for a in &self.arcs {
            for r in self.residues(a) {
                v[r as usize] += 1;
            }
        }
        v
    }

    fn require_full_tower(&self) -> Result<()> {
        if let Some(r) = self.class_vector().iter().position(|&c| c == 0) {
            return Err(Error::Precondition(format!(
                "residue {r} does not occur among the composition factors"
            )));
        }
        Ok(())
    }

    /// Keeps a bottom segment of the given size from each arc; empty segments vanish.
    pub fn bottom_segments(&self, sizes: &[u32]) -> Result<ArcModule> {
        if sizes.len() != self.arcs.len() {
            return Err(Error::InvalidSpecification(
                "one size per arc required".into(),
            ));
        }
        let mut arcs = Vec::new();
        for (a, &s) in self.arcs.iter().zip(sizes) {
            if s > a.length {
                return Err(Error::InvalidSpecification(format!(
                    "segment {s} longer than arc of length {}",
                    a.length
                )));
            }
            if s > 0 {
                arcs.push(Arc {
                    bottom: a.bottom,
                    length: s,
                });
            }
        }
        Ok(ArcModule {
            cycle_length: self.cycle_length,
            arcs,
        })
    }
}

impl fmt::Display for ArcModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arcs.is_empty() {
            return write!(f, "0");
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "U({},{})", a.bottom, a.length)?;
        }
        Ok(())
    }
}

/// Sizes of the bottom segments forming a submodule `K` whose composition
/// factors are each residue exactly once.
pub fn submodule_sizes(module: &ArcModule) -> Result<Vec<u32>> {
    module.require_full_tower()?;
    // Reading upward from the socle the classes decrease, so negate residues
    // to obtain progressions with step +1.
    let n = module.cycle_length as i64;
    let progs: Vec<(i64, u32)> = module
        .arcs
        .iter()
        .map(|a| ((-(a.bottom as i64)).rem_euclid(n), a.length - 1))
        .collect();
    comb_cover_prefixes(module.cycle_length, &progs)
}

pub fn submodule_with_class_t(module: &ArcModule) -> Result<ArcModule> {
    module.bottom_segments(&submodule_sizes(module)?)
}

/// Sizes of the bottom segments forming a submodule `L` such that the removed
/// top segments carry each residue exactly once.
pub fn quotient_sizes(module: &ArcModule) -> Result<Vec<u32>> {
    module.require_full_tower()?;
    // Reading downward from the top the classes increase by one.
    let n = module.cycle_length as i64;
    let progs: Vec<(i64, u32)> = module
        .arcs
        .iter()
        .map(|a| {
            (
                (a.bottom as i64 - (a.length as i64 - 1)).rem_euclid(n),
                a.length - 1,
            )
        })
        .collect();
    let tops = comb_cover_prefixes(module.cycle_length, &progs)?;
    Ok(module
        .arcs
        .iter()
        .zip(tops)
        .map(|(a, t)| a.length - t)
        .collect())
}

pub fn quotient_with_class_t(module: &ArcModule) -> Result<ArcModule> {
    module.bottom_segments(&quotient_sizes(module)?)
}
