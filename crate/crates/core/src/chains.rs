//! Finite lattices of right ideals and the rigid factorizations they encode.
//!
//! A rigid factorization of `a` corresponds to a maximal chain of principal
//! right ideals between `aR` and `R`. A lattice is given as a cover diagram:
//! each cover records the composition factors of its quotient. Most covers
//! carry one simple label; a cover may carry several when the intermediate
//! (non-principal) submodules are omitted from the data.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, LatticeError, Result};
use crate::factorize::LengthSet;

/// A cover label: one simple class, or a list of classes for a coarse cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoverLabel {
    One(String),
    Many(Vec<String>),
}

impl CoverLabel {
    fn labels(&self) -> Vec<String> {
        match self {
            CoverLabel::One(l) => vec![l.clone()],
            CoverLabel::Many(ls) => ls.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: String,
    pub principal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub upper: String,
    pub lower: String,
    pub label: CoverLabel,
}

/// Serialized form of an [`IdealLattice`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub simples: Vec<String>,
    pub nodes: Vec<NodeDoc>,
    pub covers: Vec<CoverDoc>,
    pub top: String,
    pub bottom: String,
}

/// Label multiset as counts indexed by simple.
type Counts = Vec<u32>;

#[derive(Debug, Clone)]
pub struct IdealLattice {
    doc: LatticeDoc,
    /// `below[u][v]`: label counts of the interval `[v, u]`, for all `v < u`.
    below: Vec<BTreeMap<usize, Counts>>,
    principal: Vec<bool>,
    top: usize,
    bottom: usize,
    fingerprint: u64,
}

/// A maximal chain of principal nodes, bottom to top.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    nodes: Vec<String>,
    steps: Vec<Vec<String>>,
    lattice: u64,
}

impl Chain {
    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    /// Composition factors of each step, sorted; bottom step first.
    pub fn step_labels(&self) -> &[Vec<String>] {
        &self.steps
    }

    /// Number of atoms in the corresponding factorization.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.nodes.iter().rev().enumerate() {
            if i > 0 {
                let step = &self.steps[self.steps.len() - i];
                write!(f, " >[{}]> ", step.join(","))?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl IdealLattice {
    /// Validates a lattice document.
    pub fn new(doc: LatticeDoc) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in doc.nodes.iter().enumerate() {
            if index.insert(n.id.clone(), i).is_some() {
                return Err(LatticeError::DuplicateNode(n.id.clone()).into());
            }
        }
        let simple_index: HashMap<&str, usize> = doc
            .simples
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let node = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| LatticeError::UnknownNode(id.to_string()))
        };
        let n = doc.nodes.len();
        let k = doc.simples.len();
        let mut lower_covers: Vec<Vec<(usize, Counts)>> = vec![Vec::new(); n];
        let mut has_upper = vec![false; n];
        for c in &doc.covers {
            let (u, l) = (node(&c.upper)?, node(&c.lower)?);
            let labels = c.label.labels();
            if labels.is_empty() {
                return Err(LatticeError::EmptyLabel {
                    upper: c.upper.clone(),
                    lower: c.lower.clone(),
                }
                .into());
            }
            let mut counts = vec![0u32; k];
            for l in &labels {
                let s = simple_index
                    .get(l.as_str())
                    .ok_or_else(|| LatticeError::UnknownLabel(l.clone()))?;
                counts[*s] += 1;
            }
            lower_covers[u].push((l, counts));
            has_upper[l] = true;
        }

        let order = topological_order(&lower_covers)
            .map_err(|i| LatticeError::Cycle(doc.nodes[i].id.clone()))?;

        let maximal: Vec<String> = (0..n)
            .filter(|&i| !has_upper[i])
            .map(|i| doc.nodes[i].id.clone())
            .collect();
        let minimal: Vec<String> = (0..n)
            .filter(|&i| lower_covers[i].is_empty())
            .map(|i| doc.nodes[i].id.clone())
            .collect();
        if maximal.len() != 1 {
            return Err(LatticeError::MultipleTops(maximal).into());
        }
        if minimal.len() != 1 {
            return Err(LatticeError::MultipleBottoms(minimal).into());
        }
        let top = node(&doc.top)?;
        let bottom = node(&doc.bottom)?;
        if maximal[0] != doc.top {
            return Err(LatticeError::TopMismatch {
                declared: doc.top.clone(),
                actual: maximal[0].clone(),
            }
            .into());
        }
        if minimal[0] != doc.bottom {
            return Err(LatticeError::BottomMismatch {
                declared: doc.bottom.clone(),
                actual: minimal[0].clone(),
            }
            .into());
        }
        if !doc.nodes[top].principal {
            return Err(LatticeError::NonPrincipalTop(doc.top.clone()).into());
        }
        if !doc.nodes[bottom].principal {
            return Err(LatticeError::NonPrincipalBottom(doc.bottom.clone()).into());
        }

        // Jordan–Hölder: every path between two nodes carries the same labels.
        let mut below: Vec<BTreeMap<usize, Counts>> = vec![BTreeMap::new(); n];
        for &u in &order {
            let mut acc: BTreeMap<usize, Counts> = BTreeMap::new();
            for (w, step) in &lower_covers[u] {
                let mut candidates = vec![(*w, step.clone())];
                for (v, c) in &below[*w] {
                    candidates.push((*v, step.iter().zip(c).map(|(a, b)| a + b).collect()));
                }
                for (v, c) in candidates {
                    match acc.get(&v) {
                        Some(prev) if *prev != c => {
                            return Err(LatticeError::LabelMultisetMismatch {
                                upper: doc.nodes[u].id.clone(),
                                lower: doc.nodes[v].id.clone(),
                            }
                            .into());
                        }
                        Some(_) => {}
                        None => {
                            acc.insert(v, c);
                        }
                    }
                }
            }
            below[u] = acc;
        }

        let principal = doc.nodes.iter().map(|n| n.principal).collect();
        let mut hasher = DefaultHasher::new();
        format!("{doc:?}").hash(&mut hasher);
        Ok(Self {
            fingerprint: hasher.finish(),
            doc,
            below,
            principal,
            top,
            bottom,
        })
    }

    pub fn doc(&self) -> &LatticeDoc {
        &self.doc
    }

    pub fn node_count(&self) -> usize {
        self.doc.nodes.len()
    }

    pub fn top(&self) -> &str {
        &self.doc.top
    }

    pub fn bottom(&self) -> &str {
        &self.doc.bottom
    }

    fn less(&self, v: usize, u: usize) -> bool {
        self.below[u].contains_key(&v)
    }

    fn labels_of(&self, counts: &Counts) -> Vec<String> {
        let mut out = Vec::new();
        for (s, &c) in self.doc.simples.iter().zip(counts) {
            out.extend(std::iter::repeat_n(s.clone(), c as usize));
        }
        out
    }

    /// Total number of composition factors of `[bottom, top]`.
    pub fn composition_length(&self) -> u32 {
        self.below[self.top]
            .get(&self.bottom)
            .map_or(0, |c| c.iter().sum())
    }

    /// Principal nodes strictly above `v` with no principal node in between.
    fn principal_successors(&self, v: usize) -> Vec<usize> {
        let above: Vec<usize> = (0..self.node_count())
            .filter(|&u| self.principal[u] && self.less(v, u))
            .collect();
        above
            .iter()
            .copied()
            .filter(|&u| !above.iter().any(|&z| z != u && self.less(z, u)))
            .collect()
    }
}

fn topological_order(
    lower_covers: &[Vec<(usize, Counts)>],
) -> std::result::Result<Vec<usize>, usize> {
    // Lower nodes first.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(
        u: usize,
        g: &[Vec<(usize, Counts)>],
        mark: &mut [Mark],
        out: &mut Vec<usize>,
    ) -> std::result::Result<(), usize> {
        match mark[u] {
            Mark::Done => return Ok(()),
            Mark::Active => return Err(u),
            Mark::New => {}
        }
        mark[u] = Mark::Active;
        for (w, _) in &g[u] {
            visit(*w, g, mark, out)?;
        }
        mark[u] = Mark::Done;
        out.push(u);
        Ok(())
    }
    let mut mark = vec![Mark::New; lower_covers.len()];
    let mut out = Vec::new();
    for u in 0..lower_covers.len() {
        visit(u, lower_covers, &mut mark, &mut out)?;
    }
    Ok(out)
}

pub fn load_lattice(doc: LatticeDoc) -> Result<IdealLattice> {
    IdealLattice::new(doc)
}

pub fn load_lattice_json(text: &str) -> Result<IdealLattice> {
    let doc: LatticeDoc = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    IdealLattice::new(doc)
}

/// All maximal chains of principal nodes from bottom to top.
pub fn rigid_factorizations(lattice: &IdealLattice) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut path = vec![lattice.bottom];
    fn rec(l: &IdealLattice, path: &mut Vec<usize>, out: &mut Vec<Chain>) {
        let v = *path.last().unwrap();
        if v == l.top {
            let nodes = path.iter().map(|&i| l.doc.nodes[i].id.clone()).collect();
            let steps = path
                .windows(2)
                .map(|w| l.labels_of(&l.below[w[1]][&w[0]]))
                .collect();
            out.push(Chain {
                nodes,
                steps,
                lattice: l.fingerprint,
            });
            return;
        }
        for u in l.principal_successors(v) {
            path.push(u);
            rec(l, path, out);
            path.pop();
        }
    }
    rec(lattice, &mut path, &mut out);
    out
}

pub fn length_set_chain(lattice: &IdealLattice) -> LengthSet {
    LengthSet::new(rigid_factorizations(lattice).iter().map(|c| c.len() as u32))
}

/// Composition distance: steps match when their composition factors agree as
/// multisets; after cancelling matched steps, the larger remainder.
pub fn composition_distance(a: &Chain, b: &Chain) -> Result<u32> {
    if a.lattice != b.lattice {
        return Err(Error::IncomparableFactorizations);
    }
    let mut pool: BTreeMap<&Vec<String>, u32> = BTreeMap::new();
    for s in &a.steps {
        *pool.entry(s).or_default() += 1;
    }
    let mut common = 0u32;
    for s in &b.steps {
        if let Some(c) = pool.get_mut(s) {
            if *c > 0 {
                *c -= 1;
                common += 1;
            }
        }
    }
    Ok((a.len() as u32 - common).max(b.len() as u32 - common))
}

pub const BUILTIN_NAMES: [&str; 4] = ["weyl_x2y", "m2a_embed", "m2a_uniserial", "m2r_nonhf"];

struct Builder {
    doc: LatticeDoc,
}

impl Builder {
    fn new(simples: &[&str], top: &str, bottom: &str) -> Self {
        Self {
            doc: LatticeDoc {
                simples: simples.iter().map(|s| s.to_string()).collect(),
                nodes: Vec::new(),
                covers: Vec::new(),
                top: top.into(),
                bottom: bottom.into(),
            },
        }
    }

    fn node(mut self, id: &str, principal: bool) -> Self {
        self.doc.nodes.push(NodeDoc {
            id: id.into(),
            principal,
        });
        self
    }

    fn cover(mut self, upper: &str, lower: &str, labels: &[&str]) -> Self {
        let label = match labels {
            [one] => CoverLabel::One(one.to_string()),
            many => CoverLabel::Many(many.iter().map(|s| s.to_string()).collect()),
        };
        self.doc.covers.push(CoverDoc {
            upper: upper.into(),
            lower: lower.into(),
            label,
        });
        self
    }
}

/// Lattices of the worked examples over the first Weyl algebra `A = K[x][y; d/dx]`,
/// over `M_2(A)`, and over `M_2(R)` for the idealizer `R = K + xA`.
pub fn builtin(name: &str) -> Result<IdealLattice> {
    let doc = match name {
        // x^2 y = (1 + xy) x in A. Factors of A/xA: A/xA; of xA/x^2A: A/xA;
        // of x^2A/x^2yA: A/yA. A/(1+xy)A has length 2 with top A/xA; its
        // only proper nonzero submodule is not principal and is omitted.
        // (1+xy)A/x^2yA = (1+xy)A/(1+xy)xA ≅ A/xA.
        "weyl_x2y" => Builder::new(&["A/xA", "A/yA"], "A", "x^2yA")
            .node("A", true)
            .node("xA", true)
            .node("x^2A", true)
            .node("x^2yA", true)
            .node("(1+xy)A", true)
            .cover("A", "xA", &["A/xA"])
            .cover("xA", "x^2A", &["A/xA"])
            .cover("x^2A", "x^2yA", &["A/yA"])
            .cover("A", "(1+xy)A", &["A/xA", "A/yA"])
            .cover("(1+xy)A", "x^2yA", &["A/xA"]),
        // diag(1+xy, 1) in M_2(A), seen as submodules of A^2. The left factor
        // corresponds to the free module with basis (x^2, x), (1+xy, y),
        // isomorphic to IA ⊕ A for IA = x^2A + (1+xy)A. A/IA ≅ A/xA and
        // IA/(1+xy)A ≅ A/yA, both simple, so both factors are atoms.
        "m2a_embed" => Builder::new(&["A/xA", "A/yA"], "A+A", "(1+xy)A+A")
            .node("A+A", true)
            .node("IA+A", true)
            .node("(1+xy)A+A", true)
            .cover("A+A", "IA+A", &["A/xA"])
            .cover("IA+A", "(1+xy)A+A", &["A/yA"]),
        // diag(x(x-y), 1) in M_2(A): A/x(x-y)A is uniserial with composition
        // series A ⊃ xA ⊃ x(x-y)A, so only the obvious chain exists.
        "m2a_uniserial" => Builder::new(&["A/xA", "A/(x-y)A"], "A+A", "x(x-y)A+A")
            .node("A+A", true)
            .node("xA+A", true)
            .node("x(x-y)A+A", true)
            .cover("A+A", "xA+A", &["A/xA"])
            .cover("xA+A", "x(x-y)A+A", &["A/(x-y)A"]),
        // Submodules of R^2 for the element a of M_2(R). Over R the simple
        // A/xA splits into W1 = A/R (top) over W2 = R/xA; V = A/(x-y)A stays
        // simple. I = x^2R + (1+xy)R with R/I ≅ (A/xA)_R, and J = xR + (1+xy)R
        // is the unique ideal strictly between I and R, so R/J ≅ W1, J/I ≅ W2.
        // X = xA ⊕ J and Y = x(x-y)A ⊕ J are free, as are R ⊕ I and
        // x(x-y)R ⊕ R. (R/x(x-y)R)_R is uniserial with factors W2, V, W1 from
        // the top, hence R ⊕ I over the bottom admits no principal refinement.
        "m2r_nonhf" => Builder::new(&["W1", "W2", "V"], "R+R", "x(x-y)R+I")
            .node("R+R", true)
            .node("xA+R", false)
            .node("R+J", false)
            .node("x(x-y)A+R", false)
            .node("X", true)
            .node("R+I", true)
            .node("x(x-y)R+R", true)
            .node("Y", true)
            .node("x(x-y)R+I", true)
            .cover("R+R", "xA+R", &["W2"])
            .cover("R+R", "R+J", &["W1"])
            .cover("xA+R", "x(x-y)A+R", &["V"])
            .cover("xA+R", "X", &["W1"])
            .cover("R+J", "X", &["W2"])
            .cover("R+J", "R+I", &["W2"])
            .cover("x(x-y)A+R", "x(x-y)R+R", &["W1"])
            .cover("x(x-y)A+R", "Y", &["W1"])
            .cover("X", "Y", &["V"])
            // (R/I)_R ≅ (A/xA)_R: W1 over W2
            .cover("x(x-y)R+R", "x(x-y)R+I", &["W1", "W2"])
            // (R/x(x-y)R)_R: W2, V, W1
            .cover("R+I", "x(x-y)R+I", &["W2", "V", "W1"])
            // x(x-y)A/x(x-y)R ⊕ J/I ≅ W1 ⊕ W2
            .cover("Y", "x(x-y)R+I", &["W1", "W2"]),
        other => return Err(Error::NotFound(format!("builtin lattice `{other}`"))),
    };
    IdealLattice::new(doc.doc)
}

/// Distinct step-label multisets appearing across all chains.
pub fn step_classes(chains: &[Chain]) -> BTreeSet<Vec<String>> {
    chains
        .iter()
        .flat_map(|c| c.steps.iter().cloned())
        .collect()
}
