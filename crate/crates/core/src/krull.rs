//! Krull monoids given by a class map from a finite set of primes into a
//! finite abelian group, and the transfer homomorphism onto the monoid of
//! zero-sum sequences over the set of classes that actually occur.
//!
//! Members are the exponent vectors over the primes whose class-weighted sum
//! vanishes. `beta` replaces each prime by its class.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::abelian::{FinAbGroup, GroupElement};
use crate::blocks::{zero_sum_up_to, BlockMonoid, GroupSubset, Sequence};
use crate::error::{Error, Result};
use crate::factorize::{
    self, catenary_of, factorizations, length_set, members_up_to, size, AtomicMonoid, Catenary,
    Factorization, LengthSet,
};
use crate::towers::{TowerKind, TowerSpec};

#[derive(Debug, Clone)]
pub struct KrullMonoid {
    group: FinAbGroup,
    primes: Vec<String>,
    classes: Vec<GroupElement>,
    /// Position of each prime's class inside `image`.
    class_pos: Vec<usize>,
    image: Arc<GroupSubset>,
    block: BlockMonoid,
    atoms: Vec<Vec<u32>>,
}

impl KrullMonoid {
    /// Builds the monoid from `(prime, class)` pairs in the given order.
    pub fn new(group: FinAbGroup, primes: Vec<(String, GroupElement)>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidSpecification(
                "at least one prime is required".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for (p, c) in &primes {
            if !seen.insert(p.as_str()) {
                return Err(Error::InvalidSpecification(format!(
                    "duplicate prime `{p}`"
                )));
            }
            if !group.contains(c) {
                return Err(Error::InvalidElement(format!(
                    "class {c} of `{p}` is not in {group}"
                )));
            }
        }
        let (names, classes): (Vec<String>, Vec<GroupElement>) = primes.into_iter().unzip();
        let image = Arc::new(GroupSubset::new(group.clone(), classes.iter().cloned())?);
        let class_pos = classes
            .iter()
            .map(|c| image.position(c).expect("image contains every class"))
            .collect();
        let block = BlockMonoid::new(image.clone())?;
        let mut monoid = Self {
            group,
            primes: names,
            classes,
            class_pos,
            image,
            block,
            atoms: Vec::new(),
        };
        monoid.atoms = monoid.realize_atoms();
        Ok(monoid)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn primes(&self) -> &[String] {
        &self.primes
    }

    pub fn classes(&self) -> &[GroupElement] {
        &self.classes
    }

    pub fn class_of(&self, prime: usize) -> &GroupElement {
        &self.classes[prime]
    }

    /// `G_M`, the set of classes containing a prime.
    pub fn image(&self) -> &Arc<GroupSubset> {
        &self.image
    }

    /// `B(G_M)`, the codomain of [`beta`].
    pub fn block_monoid(&self) -> &BlockMonoid {
        &self.block
    }

    /// Every realization over the primes of every atom of `B(G_M)`.
    fn realize_atoms(&self) -> Vec<Vec<u32>> {
        let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); self.image.len()];
        for (p, &c) in self.class_pos.iter().enumerate() {
            by_class[c].push(p);
        }
        let mut out = Vec::new();
        for block_atom in self.block.atoms() {
            let mut partial = vec![vec![0u32; self.primes.len()]];
            for (c, &k) in block_atom.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let choices = multisets(&by_class[c], k);
                let slots = &by_class[c];
                partial = partial
                    .iter()
                    .flat_map(|base| {
                        choices.iter().map(move |ch| {
                            let mut v = base.clone();
                            for (&p, &e) in slots.iter().zip(ch) {
                                v[p] += e;
                            }
                            v
                        })
                    })
                    .collect();
            }
            out.extend(partial);
        }
        out.sort_by(|a, b| size(a).cmp(&size(b)).then_with(|| b.cmp(a)));
        out
    }

    fn check_member(&self, x: &[u32]) -> Result<()> {
        if !self.contains(x) {
            return Err(Error::NotAMember(self.format_vector(x)));
        }
        Ok(())
    }

    /// Renders an exponent vector as a product of primes, e.g. `p^2*q`.
    pub fn format_vector(&self, x: &[u32]) -> String {
        let parts: Vec<String> = self
            .primes
            .iter()
            .zip(x)
            .filter(|(_, &e)| e > 0)
            .map(|(p, &e)| {
                if e == 1 {
                    p.clone()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    fn beta_counts(&self, x: &[u32]) -> Vec<u32> {
        let mut counts = vec![0u32; self.image.len()];
        for (&c, &e) in self.class_pos.iter().zip(x) {
            counts[c] += e;
        }
        counts
    }
}

/// Exponent tuples over `slots` letters summing to `k`, lexicographically descending.
fn multisets(slots: &[usize], k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if slots.is_empty() {
        return out;
    }
    rec(slots.len(), 0, k, &mut vec![0; slots.len()], &mut out);
    out
}

impl AtomicMonoid for KrullMonoid {
    fn rank(&self) -> usize {
        self.primes.len()
    }

    fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.primes.len() && self.image.is_zero_sum_counts(&self.beta_counts(v))
    }

    fn atoms(&self) -> &[Vec<u32>] {
        &self.atoms
    }

    fn letter(&self, i: usize) -> String {
        self.primes[i].clone()
    }
}

/// Builds a Krull monoid from a list of primes and a class map that must be
/// defined on exactly those primes.
pub fn make_krull(
    group: FinAbGroup,
    primes: &[String],
    class_map: &BTreeMap<String, GroupElement>,
) -> Result<KrullMonoid> {
    if let Some(p) = class_map.keys().find(|p| !primes.contains(p)) {
        return Err(Error::InvalidSpecification(format!(
            "class map names unknown prime `{p}`"
        )));
    }
    let pairs = primes
        .iter()
        .map(|p| {
            class_map
                .get(p)
                .cloned()
                .map(|c| (p.clone(), c))
                .ok_or_else(|| Error::InvalidSpecification(format!("prime `{p}` has no class")))
        })
        .collect::<Result<_>>()?;
    KrullMonoid::new(group, pairs)
}

pub fn krull_atoms(monoid: &KrullMonoid) -> &[Vec<u32>] {
    monoid.atoms()
}

/// The transfer homomorphism: each prime is replaced by its class.
pub fn beta(monoid: &KrullMonoid, x: &[u32]) -> Result<Sequence> {
    monoid.check_member(x)?;
    Sequence::from_counts(monoid.image.clone(), monoid.beta_counts(x))
}

/// Lifts a factorization `B_1 ... B_k` of `beta(x)` into atoms of `B(G_M)` to
/// atoms `u_1, ..., u_k` of the monoid with `u_1 ... u_k = x` and
/// `beta(u_i) = B_i`. Primes are assigned first-fit: blocks in the given
/// order, primes of each required class in canonical order.
pub fn lift_factorization(
    monoid: &KrullMonoid,
    x: &[u32],
    blocks: &[Sequence],
) -> Result<Vec<Vec<u32>>> {
    let image = monoid.beta_counts(x);
    monoid.check_member(x)?;
    let mut total = vec![0u32; monoid.image.len()];
    for b in blocks {
        if **b.subset() != *monoid.image {
            return Err(Error::Precondition(
                "block is not a sequence over G_M".into(),
            ));
        }
        if monoid.block.atom_index(b.counts()).is_none() {
            return Err(Error::Precondition(format!(
                "block {b} is not an atom of B(G_M)"
            )));
        }
        for (t, c) in total.iter_mut().zip(b.counts()) {
            *t += c;
        }
    }
    if total != image {
        return Err(Error::Precondition(
            "blocks do not multiply to beta(x)".into(),
        ));
    }
    lift_counts(monoid, x, blocks.iter().map(Sequence::counts))
}

fn lift_counts<'a>(
    monoid: &KrullMonoid,
    x: &[u32],
    blocks: impl Iterator<Item = &'a [u32]>,
) -> Result<Vec<Vec<u32>>> {
    let mut pool = x.to_vec();
    let mut out = Vec::new();
    for block in blocks {
        let mut u = vec![0u32; pool.len()];
        for (c, &need) in block.iter().enumerate() {
            let mut need = need;
            for (p, &cp) in monoid.class_pos.iter().enumerate() {
                if need == 0 {
                    break;
                }
                if cp != c {
                    continue;
                }
                let take = pool[p].min(need);
                pool[p] -= take;
                u[p] += take;
                need -= take;
            }
            if need > 0 {
                return Err(Error::InternalConsistency(format!(
                    "no prime of class {} left while lifting",
                    monoid.image.elements()[c]
                )));
            }
        }
        out.push(u);
    }
    if pool.iter().any(|&e| e > 0) {
        return Err(Error::InternalConsistency(
            "lift leaves primes unassigned".into(),
        ));
    }
    Ok(out)
}

/// Where a bounded transfer check first failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransferViolation {
    /// `beta(x)` is the empty sequence although `x` is not the identity.
    NontrivialUnitPreimage { element: Vec<u32> },
    /// A factorization or 2-split of `beta(x)` does not lift.
    LiftFailed { element: Vec<u32>, detail: String },
    LengthMismatch {
        element: Vec<u32>,
        in_monoid: LengthSet,
        in_blocks: LengthSet,
    },
    /// A zero-sum sequence over `G_M` with no preimage.
    NotSurjective { sequence: Vec<u32> },
}

impl fmt::Display for TransferViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransferViolation::NontrivialUnitPreimage { element } => {
                write!(f, "beta({element:?}) is empty")
            }
            TransferViolation::LiftFailed { element, detail } => {
                write!(f, "lifting failed at {element:?}: {detail}")
            }
            TransferViolation::LengthMismatch {
                element,
                in_monoid,
                in_blocks,
            } => write!(f, "L({element:?}) = {in_monoid} but L(beta) = {in_blocks}"),
            TransferViolation::NotSurjective { sequence } => {
                write!(f, "no preimage of {sequence:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub bound: u32,
    pub members_checked: usize,
    pub sequences_checked: usize,
    pub violation: Option<TransferViolation>,
}

impl TransferReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Bounded check of the transfer properties of `beta` on all members of size
/// at most `bound`: only the identity maps to the empty sequence, every
/// factorization and every 2-split of `beta(x)` lifts, sets of lengths agree,
/// and every zero-sum sequence over `G_M` of length at most `bound` has a
/// preimage. Reports the lexicographically first violating member.
pub fn verify_transfer(monoid: &KrullMonoid, bound: u32) -> TransferReport {
    let sequences = zero_sum_up_to(&monoid.image, bound);
    let block = &monoid.block;
    let table: HashMap<Vec<u32>, Vec<Factorization>> = sequences
        .par_iter()
        .map(|s| {
            let zs = factorizations(block, s.counts()).expect("zero-sum sequences are members");
            (s.counts().to_vec(), zs)
        })
        .collect();

    let mut by_class: Vec<Option<usize>> = vec![None; monoid.image.len()];
    for (p, &c) in monoid.class_pos.iter().enumerate() {
        by_class[c].get_or_insert(p);
    }
    for s in &sequences {
        let mut pre = vec![0u32; monoid.primes.len()];
        for (c, &k) in s.counts().iter().enumerate() {
            if k > 0 {
                pre[by_class[c].expect("every class of G_M has a prime")] += k;
            }
        }
        if !monoid.contains(&pre) || monoid.beta_counts(&pre) != s.counts() {
            return TransferReport {
                bound,
                members_checked: 0,
                sequences_checked: sequences.len(),
                violation: Some(TransferViolation::NotSurjective {
                    sequence: s.counts().to_vec(),
                }),
            };
        }
    }

    let members = members_up_to(monoid, bound);
    let violation = members
        .par_iter()
        .find_map_first(|x| check_member_transfer(monoid, x, &table));
    TransferReport {
        bound,
        members_checked: members.len(),
        sequences_checked: sequences.len(),
        violation,
    }
}

fn check_member_transfer(
    monoid: &KrullMonoid,
    x: &[u32],
    table: &HashMap<Vec<u32>, Vec<Factorization>>,
) -> Option<TransferViolation> {
    let block = &monoid.block;
    let image = monoid.beta_counts(x);
    if image.iter().all(|&c| c == 0) && x.iter().any(|&e| e > 0) {
        return Some(TransferViolation::NontrivialUnitPreimage {
            element: x.to_vec(),
        });
    }
    let lift_failed = |detail: String| TransferViolation::LiftFailed {
        element: x.to_vec(),
        detail,
    };
    let Some(block_zs) = table.get(&image) else {
        return Some(lift_failed(
            "beta(x) missing from the sequence table".into(),
        ));
    };

    for z in block_zs {
        let parts: Vec<&[u32]> = z
            .atom_indices()
            .map(|i| block.atoms()[i].as_slice())
            .collect();
        match lift_counts(monoid, x, parts.iter().copied()) {
            Ok(us) => {
                for (u, b) in us.iter().zip(&parts) {
                    if monoid.beta_counts(u) != *b || !is_atom(monoid, u) {
                        return Some(lift_failed(format!(
                            "lifted piece {} is not an atom over {b:?}",
                            monoid.format_vector(u)
                        )));
                    }
                }
            }
            Err(e) => return Some(lift_failed(e.to_string())),
        }
    }

    // 2-splits: beta(x) = S_1 S_2 with both factors zero-sum.
    let mut divisor = vec![0u32; image.len()];
    loop {
        if let (Some(z1), Some(z2)) = (table.get(&divisor).and_then(|v| v.first()), {
            let rest: Vec<u32> = image.iter().zip(&divisor).map(|(a, b)| a - b).collect();
            table.get(&rest).and_then(|v| v.first())
        }) {
            let k1 = z1.len() as usize;
            let parts: Vec<&[u32]> = z1
                .atom_indices()
                .chain(z2.atom_indices())
                .map(|i| block.atoms()[i].as_slice())
                .collect();
            match lift_counts(monoid, x, parts.iter().copied()) {
                Ok(us) => {
                    let mut y = vec![0u32; x.len()];
                    for u in &us[..k1] {
                        for (a, b) in y.iter_mut().zip(u) {
                            *a += b;
                        }
                    }
                    let rest: Vec<u32> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
                    if monoid.beta_counts(&y) != divisor
                        || !monoid.contains(&y)
                        || !monoid.contains(&rest)
                    {
                        return Some(lift_failed(format!("2-split {divisor:?} does not lift")));
                    }
                }
                Err(e) => return Some(lift_failed(e.to_string())),
            }
        }
        // next divisor in mixed radix
        let mut i = 0;
        while i < divisor.len() && divisor[i] == image[i] {
            divisor[i] = 0;
            i += 1;
        }
        if i == divisor.len() {
            break;
        }
        divisor[i] += 1;
    }

    let in_monoid = length_set(monoid, x).expect("scanned members are members");
    let in_blocks = LengthSet::new(block_zs.iter().map(Factorization::len));
    if in_monoid != in_blocks {
        return Some(TransferViolation::LengthMismatch {
            element: x.to_vec(),
            in_monoid,
            in_blocks,
        });
    }
    None
}

fn is_atom(monoid: &KrullMonoid, u: &[u32]) -> bool {
    monoid
        .atoms
        .binary_search_by(|a| size(a).cmp(&size(u)).then_with(|| u.cmp(a)))
        .is_ok()
}

/// Groups factorizations of one element by the multiset of `beta`-images of their atoms.
pub fn fibers(monoid: &KrullMonoid, zs: &[Factorization]) -> Vec<Vec<Factorization>> {
    let image_index: Vec<usize> = monoid
        .atoms
        .iter()
        .map(|u| {
            monoid
                .block
                .atom_index(&monoid.beta_counts(u))
                .expect("atoms map to atoms")
        })
        .collect();
    let mut groups: BTreeMap<Vec<usize>, Vec<Factorization>> = BTreeMap::new();
    for z in zs {
        let mut key: Vec<usize> = z.atom_indices().map(|i| image_index[i]).collect();
        key.sort_unstable();
        groups.entry(key).or_default().push(z.clone());
    }
    groups.into_values().collect()
}

/// Maximal bottleneck connectivity threshold inside a fiber, over all members
/// of size at most `bound`.
pub fn fiber_catenary(monoid: &KrullMonoid, bound: u32) -> Result<Catenary> {
    members_up_to(monoid, bound)
        .par_iter()
        .map(|x| {
            let zs = factorizations(monoid, x)?;
            fibers(monoid, &zs)
                .iter()
                .map(|f| catenary_of(f))
                .try_fold(Catenary::Finite(0), |acc, c| Ok(acc.max(c?)))
        })
        .try_reduce(|| Catenary::Finite(0), |a, b| Ok(a.max(b)))
}

pub fn catenary_monoid(monoid: &KrullMonoid, bound: u32) -> Result<Catenary> {
    factorize::catenary_monoid(monoid, bound)
}

/// Realizes the monoid of classes of principal-genus lattices: one prime per
/// tower, weighted by the tower's class. Every faithful tower must be trivial.
pub fn synth_hnp(spec: &TowerSpec) -> Result<KrullMonoid> {
    if let Some(t) = spec
        .towers()
        .iter()
        .find(|t| t.kind == TowerKind::Faithful && !t.is_trivial())
    {
        return Err(Error::F1Violation {
            tower: t.name.clone(),
        });
    }
    KrullMonoid::new(
        spec.group().clone(),
        spec.towers()
            .iter()
            .map(|t| (t.name.clone(), t.class.clone()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::towers::Tower;
    use std::collections::BTreeSet;

    fn monoid(orders: &[i64], classes: &[&[i64]]) -> KrullMonoid {
        let g = FinAbGroup::new(orders).unwrap();
        let names = ["p", "q", "r", "s", "t", "u", "v", "w"];
        KrullMonoid::new(
            g.clone(),
            classes
                .iter()
                .enumerate()
                .map(|(i, c)| (names[i].to_string(), g.element(c).unwrap()))
                .collect(),
        )
        .unwrap()
    }

    /// Members of weight at most `bound` with no proper nonzero member below them.
    fn brute_atoms(h: &KrullMonoid, bound: u32) -> BTreeSet<Vec<u32>> {
        let members = members_up_to(h, bound);
        members
            .iter()
            .filter(|x| x.iter().any(|&e| e > 0))
            .filter(|x| {
                !members
                    .iter()
                    .any(|y| y.iter().any(|&e| e > 0) && y != *x && factorize::divides(y, x))
            })
            .cloned()
            .collect()
    }

    #[test]
    fn make_krull_examples() {
        let h = monoid(&[2], &[&[0], &[0]]);
        assert!(h.contains(&[3, 5]));
        assert_eq!(h.atoms(), &[vec![1, 0], vec![0, 1]]);

        let h = monoid(&[2], &[&[1], &[1]]);
        assert!(h.contains(&[1, 1]) && h.contains(&[2, 0]) && !h.contains(&[2, 1]));

        let h = monoid(&[3], &[&[1], &[1], &[1]]);
        assert!(h.contains(&[1, 1, 1]));
    }

    #[test]
    fn make_krull_rejects_unknown_primes() {
        let g = FinAbGroup::cyclic(2);
        let primes = vec!["p".to_string()];
        let mut map = BTreeMap::new();
        map.insert("p".to_string(), g.zero());
        map.insert("z".to_string(), g.zero());
        assert!(matches!(
            make_krull(g.clone(), &primes, &map),
            Err(Error::InvalidSpecification(_))
        ));
        map.remove("z");
        assert!(make_krull(g.clone(), &primes, &map).is_ok());
        assert!(make_krull(g, &["q".to_string()], &BTreeMap::new()).is_err());
    }

    #[test]
    fn krull_atoms_examples() {
        let h = monoid(&[2], &[&[1], &[1]]);
        let want: BTreeSet<Vec<u32>> = [vec![2, 0], vec![1, 1], vec![0, 2]].into();
        assert_eq!(brute_atoms(&h, 2), want);
        assert_eq!(h.atoms().iter().cloned().collect::<BTreeSet<_>>(), want);

        let h = monoid(&[3], &[&[1], &[2], &[0]]);
        let want: BTreeSet<Vec<u32>> =
            [vec![0, 0, 1], vec![3, 0, 0], vec![0, 3, 0], vec![1, 1, 0]].into();
        assert_eq!(brute_atoms(&h, 3), want);
        assert_eq!(h.atoms().iter().cloned().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn atoms_match_brute_force_on_mixed_classes() {
        let h = monoid(&[2, 2], &[&[1, 0], &[0, 1], &[1, 1], &[1, 0], &[0, 0]]);
        let d = 3;
        assert_eq!(
            h.atoms().iter().cloned().collect::<BTreeSet<_>>(),
            brute_atoms(&h, 2 * d)
        );
    }

    #[test]
    fn beta_examples() {
        let h = monoid(&[2], &[&[1], &[1]]);
        assert!(beta(&h, &[0, 0]).unwrap().is_empty());
        let b = beta(&h, &[1, 1]).unwrap();
        assert_eq!(b.to_string(), "[1^2]");
        assert!(matches!(beta(&h, &[1, 0]), Err(Error::NotAMember(_))));
        let h3 = monoid(&[3], &[&[1]]);
        assert_eq!(beta(&h3, &[3]).unwrap().to_string(), "[1^3]");
    }

    #[test]
    fn lift_examples() {
        let h = monoid(&[2], &[&[1], &[1]]);
        let b = h.block_monoid().atom_sequences();
        let pair = b.iter().find(|s| s.len() == 2).unwrap().clone();
        let lifted = lift_factorization(&h, &[2, 2], &[pair.clone(), pair.clone()]).unwrap();
        // first-fit: both copies of p go to the first block
        assert_eq!(lifted, vec![vec![2, 0], vec![0, 2]]);
        for u in &lifted {
            assert_eq!(beta(&h, u).unwrap(), pair);
            assert!(h.atoms().contains(u));
        }
        let atom = vec![1, 1];
        assert_eq!(
            lift_factorization(&h, &atom, std::slice::from_ref(&pair)).unwrap(),
            vec![atom]
        );
        assert!(matches!(
            lift_factorization(&h, &[2, 2], &[pair]),
            Err(Error::Precondition(_))
        ));

        let f = monoid(&[3], &[&[0], &[0]]);
        let zero_block = f.block_monoid().atom_sequences()[0].clone();
        let lifted = lift_factorization(&f, &[1, 2], &vec![zero_block; 3]).unwrap();
        assert_eq!(lifted, vec![vec![1, 0], vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn transfer_examples() {
        let f = monoid(&[3], &[&[0], &[0], &[0]]);
        assert!(verify_transfer(&f, 6).ok());
        let h = monoid(&[2], &[&[1], &[1]]);
        let report = verify_transfer(&h, 8);
        assert!(report.ok(), "{:?}", report.violation);
        assert!(report.members_checked > 0);
    }

    #[test]
    fn fiber_catenary_examples() {
        let f = monoid(&[2], &[&[0], &[0]]);
        assert_eq!(fiber_catenary(&f, 6).unwrap(), Catenary::Finite(0));

        let h = monoid(&[2], &[&[1], &[1]]);
        let zs = factorizations(&h, &[2, 2]).unwrap();
        assert_eq!(zs.len(), 2);
        let fs = fibers(&h, &zs);
        assert_eq!(fs.len(), 1, "both factorizations map to (1·1)(1·1)");

        let h4 = monoid(&[2], &[&[1], &[1], &[1], &[1]]);
        let zs = factorizations(&h4, &[1, 1, 1, 1]).unwrap();
        assert_eq!(zs.len(), 3);
        assert_eq!(fibers(&h4, &zs).len(), 1);
        assert_eq!(fiber_catenary(&h4, 8).unwrap(), Catenary::Finite(2));
    }

    #[test]
    fn synth_hnp_examples() {
        let g = FinAbGroup::cyclic(2);
        let tower = |name: &str, kind, length, c: i64| Tower {
            name: name.into(),
            kind,
            length,
            class: g.element(&[c]).unwrap(),
        };
        let one = TowerSpec::new(g.clone(), vec![tower("T", TowerKind::Cycle, 3, 0)]).unwrap();
        let h = synth_hnp(&one).unwrap();
        assert_eq!(h.atoms(), &[vec![1]]);

        let two = TowerSpec::new(
            g.clone(),
            vec![
                tower("T1", TowerKind::Cycle, 2, 1),
                tower("T2", TowerKind::Faithful, 1, 1),
            ],
        )
        .unwrap();
        let h = synth_hnp(&two).unwrap();
        assert_eq!(h.atoms().len(), 3);
        assert_eq!(h.image().len(), 1);

        let bad = TowerSpec::new(g.clone(), vec![tower("F", TowerKind::Faithful, 2, 0)]).unwrap();
        assert_eq!(
            synth_hnp(&bad).unwrap_err(),
            Error::F1Violation { tower: "F".into() }
        );
    }
}
