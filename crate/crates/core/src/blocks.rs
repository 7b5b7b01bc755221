//! Sequences over a subset `G_0` of a finite abelian group, the monoid of
//! zero-sum sequences `B(G_0)`, its atoms (minimal zero-sum sequences) and
//! the Davenport constant.

use std::fmt;
use std::sync::Arc;

use crate::abelian::{CayleyTable, FinAbGroup, GroupElement};
use crate::error::{Error, Result};
use crate::factorize::AtomicMonoid;

/// An explicit finite subset `G_0` of a group, kept in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    group: FinAbGroup,
    elements: Vec<GroupElement>,
    positions: Vec<usize>,
}

impl GroupSubset {
    pub fn new(
        group: FinAbGroup,
        elements: impl IntoIterator<Item = GroupElement>,
    ) -> Result<Self> {
        let mut elements: Vec<GroupElement> = elements.into_iter().collect();
        for e in &elements {
            if !group.contains(e) {
                return Err(Error::InvalidElement(format!(
                    "{e} is not an element of {group}"
                )));
            }
        }
        elements.sort();
        elements.dedup();
        let positions = elements
            .iter()
            .map(|e| group.index_of(e).expect("checked above"))
            .collect();
        Ok(Self {
            group,
            elements,
            positions,
        })
    }

    /// `G \ {0}`.
    pub fn nonzero(group: FinAbGroup) -> Self {
        let zero = group.zero();
        let elems: Vec<_> = group
            .enumerate()
            .into_iter()
            .filter(|e| *e != zero)
            .collect();
        Self::new(group, elems).expect("enumerated elements are valid")
    }

    pub fn full(group: FinAbGroup) -> Self {
        let elems = group.enumerate();
        Self::new(group, elems).expect("enumerated elements are valid")
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, e: &GroupElement) -> Option<usize> {
        self.elements.binary_search(e).ok()
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.position(e).is_some()
    }

    /// Whether `G_0 = -G_0`.
    pub fn is_symmetric(&self) -> bool {
        self.elements
            .iter()
            .all(|e| self.contains(&self.group.neg(e).expect("member")))
    }

    /// Sum of the sequence with the given exponent vector.
    pub(crate) fn sum_counts(&self, counts: &[u32]) -> GroupElement {
        let orders = self.group.orders();
        let mut acc = vec![0u64; orders.len()];
        for (e, &c) in self.elements.iter().zip(counts) {
            if c == 0 {
                continue;
            }
            for ((s, &r), &n) in acc.iter_mut().zip(e.residues()).zip(orders) {
                *s = (*s + r as u64 * c as u64) % n as u64;
            }
        }
        self.group
            .element(&acc.iter().map(|&x| x as i64).collect::<Vec<_>>())
            .expect("arity matches")
    }

    pub(crate) fn is_zero_sum_counts(&self, counts: &[u32]) -> bool {
        let orders = self.group.orders();
        (0..orders.len()).all(|k| {
            let n = orders[k] as u64;
            self.elements.iter().zip(counts).fold(0u64, |s, (e, &c)| {
                (s + e.residues()[k] as u64 * c as u64) % n
            }) == 0
        })
    }
}

/// A finite multiset of elements of `G_0`, stored as an exponent vector
/// indexed like [`GroupSubset::elements`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    subset: Arc<GroupSubset>,
    counts: Vec<u32>,
}

impl Sequence {
    pub fn empty(subset: Arc<GroupSubset>) -> Self {
        let counts = vec![0; subset.len()];
        Self { subset, counts }
    }

    pub fn from_counts(subset: Arc<GroupSubset>, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != subset.len() {
            return Err(Error::InvalidElement(format!(
                "exponent vector has {} entries, subset has {}",
                counts.len(),
                subset.len()
            )));
        }
        Ok(Self { subset, counts })
    }

    pub fn from_elements<'a>(
        subset: Arc<GroupSubset>,
        elems: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        let mut counts = vec![0; subset.len()];
        for e in elems {
            let i = subset
                .position(e)
                .ok_or_else(|| Error::InvalidElement(format!("{e} is not in the subset")))?;
            counts[i] += 1;
        }
        Ok(Self { subset, counts })
    }

    pub fn subset(&self) -> &Arc<GroupSubset> {
        &self.subset
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn multiplicity(&self, e: &GroupElement) -> u32 {
        self.subset.position(e).map_or(0, |i| self.counts[i])
    }

    /// `|S|`, the number of terms with multiplicity.
    pub fn len(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// `σ(S)`.
    pub fn sum(&self) -> GroupElement {
        self.subset.sum_counts(&self.counts)
    }

    pub fn is_zero_sum(&self) -> bool {
        self.subset.is_zero_sum_counts(&self.counts)
    }

    /// Terms in canonical order, with repetition.
    pub fn terms(&self) -> Vec<GroupElement> {
        self.subset
            .elements()
            .iter()
            .zip(&self.counts)
            .flat_map(|(e, &c)| std::iter::repeat_n(e.clone(), c as usize))
            .collect()
    }

    pub fn mul(&self, other: &Sequence) -> Result<Sequence> {
        if self.subset != other.subset {
            return Err(Error::InvalidElement(
                "sequences over different subsets".into(),
            ));
        }
        Ok(Sequence {
            subset: self.subset.clone(),
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn divides(&self, other: &Sequence) -> bool {
        self.subset == other.subset && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    /// Image under `g ↦ -g`; requires `G_0 = -G_0`.
    pub fn negated(&self) -> Result<Sequence> {
        let g = self.subset.group();
        let terms: Vec<GroupElement> = self
            .terms()
            .iter()
            .map(|e| g.neg(e))
            .collect::<Result<_>>()?;
        Sequence::from_elements(self.subset.clone(), terms.iter())
    }

    /// Canonical sort key: length first, then the term positions.
    fn sort_key(&self) -> (u32, Vec<usize>) {
        let idx = self
            .counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
            .collect();
        (self.len(), idx)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for (e, &c) in self.subset.elements().iter().zip(&self.counts) {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if c == 1 {
                write!(f, "{e}")?;
            } else {
                write!(f, "{e}^{c}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence{self}")
    }
}

fn sort_canonical(seqs: &mut [Sequence]) {
    seqs.sort_by_cached_key(|s| s.sort_key());
}

/// Bitset over group element indices.
#[derive(Clone)]
struct SumSet(Vec<u64>);

impl SumSet {
    fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }
    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
}

/// All minimal zero-sum sequences over `G_0`, in canonical order.
///
/// Depth-first over nondecreasing element positions. Only zero-sum free
/// prefixes are extended; a zero-sum free prefix closed by `g` with total sum
/// zero is exactly a minimal zero-sum sequence.
pub fn atoms(subset: &Arc<GroupSubset>) -> Result<Vec<Sequence>> {
    if subset.is_empty() {
        return Err(Error::InvalidSpecification("G_0 must be nonempty".into()));
    }
    let table = CayleyTable::new(subset.group());
    let n = table.len();
    let pos = &subset.positions;
    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut counts = vec![0u32; subset.len()];

    struct Ctx<'a> {
        table: &'a CayleyTable,
        pos: &'a [usize],
        max_len: usize,
    }

    fn dfs(
        ctx: &Ctx<'_>,
        start: usize,
        sum: usize,
        len: usize,
        sums: &SumSet,
        counts: &mut Vec<u32>,
        found: &mut Vec<Vec<u32>>,
    ) {
        for j in start..ctx.pos.len() {
            let g = ctx.pos[j];
            if ctx.table.add(sum, g) == 0 {
                counts[j] += 1;
                found.push(counts.clone());
                counts[j] -= 1;
                continue;
            }
            // S·g keeps a zero-sum subsequence iff g = 0 or -g is a subsum of S.
            if g == 0 || sums.has(ctx.table.neg(g)) || len + 1 >= ctx.max_len {
                continue;
            }
            let mut next = sums.clone();
            next.set(g);
            for s in 0..ctx.table.len() {
                if sums.has(s) {
                    next.set(ctx.table.add(s, g));
                }
            }
            counts[j] += 1;
            dfs(ctx, j, ctx.table.add(sum, g), len + 1, &next, counts, found);
            counts[j] -= 1;
        }
    }

    let ctx = Ctx {
        table: &table,
        pos,
        max_len: n,
    };
    dfs(&ctx, 0, 0, 0, &SumSet::new(n), &mut counts, &mut found);
    let mut out: Vec<Sequence> = found
        .into_iter()
        .map(|c| Sequence {
            subset: subset.clone(),
            counts: c,
        })
        .collect();
    sort_canonical(&mut out);
    Ok(out)
}

/// Davenport constant: the maximal length of a minimal zero-sum sequence over `G`.
pub fn davenport(group: &FinAbGroup) -> u32 {
    let subset = Arc::new(GroupSubset::full(group.clone()));
    atoms(&subset)
        .expect("a group is nonempty")
        .iter()
        .map(Sequence::len)
        .max()
        .unwrap_or(1)
}

/// Every zero-sum sequence over `G_0` of length at most `max_len`, in canonical order.
pub fn zero_sum_up_to(subset: &Arc<GroupSubset>, max_len: u32) -> Vec<Sequence> {
    let table = CayleyTable::new(subset.group());
    let mut found = Vec::new();
    fn dfs(
        table: &CayleyTable,
        pos: &[usize],
        start: usize,
        sum: usize,
        left: u32,
        counts: &mut Vec<u32>,
        found: &mut Vec<Vec<u32>>,
    ) {
        if sum == 0 {
            found.push(counts.clone());
        }
        if left == 0 {
            return;
        }
        for j in start..pos.len() {
            counts[j] += 1;
            dfs(
                table,
                pos,
                j,
                table.add(sum, pos[j]),
                left - 1,
                counts,
                found,
            );
            counts[j] -= 1;
        }
    }
    let mut counts = vec![0u32; subset.len()];
    dfs(
        &table,
        &subset.positions,
        0,
        0,
        max_len,
        &mut counts,
        &mut found,
    );
    let mut out: Vec<Sequence> = found
        .into_iter()
        .map(|c| Sequence {
            subset: subset.clone(),
            counts: c,
        })
        .collect();
    sort_canonical(&mut out);
    out
}

/// `B(G_0)` as an [`AtomicMonoid`] whose alphabet is `G_0`.
#[derive(Debug, Clone)]
pub struct BlockMonoid {
    subset: Arc<GroupSubset>,
    atoms: Vec<Vec<u32>>,
}

impl BlockMonoid {
    pub fn new(subset: Arc<GroupSubset>) -> Result<Self> {
        let atoms = atoms(&subset)?.into_iter().map(|s| s.counts).collect();
        Ok(Self { subset, atoms })
    }

    pub fn subset(&self) -> &Arc<GroupSubset> {
        &self.subset
    }

    pub fn sequence(&self, counts: &[u32]) -> Result<Sequence> {
        Sequence::from_counts(self.subset.clone(), counts.to_vec())
    }

    pub fn atom_sequences(&self) -> Vec<Sequence> {
        self.atoms
            .iter()
            .map(|a| Sequence {
                subset: self.subset.clone(),
                counts: a.clone(),
            })
            .collect()
    }

    /// Position of a sequence in the atom list, if it is an atom.
    pub fn atom_index(&self, counts: &[u32]) -> Option<usize> {
        self.atoms.iter().position(|a| a.as_slice() == counts)
    }
}

impl AtomicMonoid for BlockMonoid {
    fn rank(&self) -> usize {
        self.subset.len()
    }

    fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.subset.len() && self.subset.is_zero_sum_counts(v)
    }

    fn atoms(&self) -> &[Vec<u32>] {
        &self.atoms
    }

    fn letter(&self, i: usize) -> String {
        self.subset.elements()[i].to_string()
    }
}
