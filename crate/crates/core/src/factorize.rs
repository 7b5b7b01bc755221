//! Factorization engine for reduced atomic commutative monoids.
//!
//! A monoid is presented as a set of exponent vectors over a finite alphabet
//! (a membership predicate) together with its finite list of atoms. Since the
//! monoid is reduced and commutative, a factorization is a multiset of atoms.
//!
//! Enumeration groups the atoms by their first nonzero coordinate. Walking the
//! coordinates in order, the atoms whose first coordinate is `p` are the only
//! ones left that can still reduce coordinate `p`, so every multiset of atoms
//! is produced exactly once.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::unionfind::connectivity_threshold;

/// Default upper limit on the number of factorizations enumerated for a single element.
pub const DEFAULT_FACTORIZATION_CAP: usize = 1_000_000;

/// A reduced commutative atomic monoid inside `(N_0^rank, +)`.
pub trait AtomicMonoid: Sync {
    fn rank(&self) -> usize;
    fn contains(&self, v: &[u32]) -> bool;
    fn atoms(&self) -> &[Vec<u32>];

    /// Display name of the `i`-th alphabet letter.
    fn letter(&self, i: usize) -> String {
        format!("p{i}")
    }
}

type Membership = Box<dyn Fn(&[u32]) -> bool + Send + Sync>;

/// A monoid given by an explicit atom list and a membership predicate.
pub struct PresentedMonoid {
    alphabet: Vec<String>,
    atoms: Vec<Vec<u32>>,
    membership: Membership,
}

impl PresentedMonoid {
    /// Validates that every atom is a nonzero member and that no atom divides
    /// another one inside the monoid.
    pub fn new(
        alphabet: Vec<String>,
        atoms: Vec<Vec<u32>>,
        membership: impl Fn(&[u32]) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        let rank = alphabet.len();
        for a in &atoms {
            if a.len() != rank {
                return Err(Error::InvalidSpecification(format!(
                    "atom {a:?} has {} coordinates, alphabet has {rank}",
                    a.len()
                )));
            }
            if a.iter().all(|&e| e == 0) {
                return Err(Error::InvalidSpecification(
                    "the zero vector is not an atom".into(),
                ));
            }
            if !membership(a) {
                return Err(Error::InvalidSpecification(format!(
                    "atom {a:?} is not a member"
                )));
            }
        }
        for (i, a) in atoms.iter().enumerate() {
            for (j, b) in atoms.iter().enumerate() {
                if i != j && divides(a, b) && (a == b || membership(&difference(b, a))) {
                    return Err(Error::InvalidSpecification(format!(
                        "atom {a:?} divides atom {b:?}"
                    )));
                }
            }
        }
        Ok(Self {
            alphabet,
            atoms,
            membership: Box::new(membership),
        })
    }
}

impl AtomicMonoid for PresentedMonoid {
    fn rank(&self) -> usize {
        self.alphabet.len()
    }
    fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.alphabet.len() && (self.membership)(v)
    }
    fn atoms(&self) -> &[Vec<u32>] {
        &self.atoms
    }
    fn letter(&self, i: usize) -> String {
        self.alphabet[i].clone()
    }
}

impl fmt::Debug for PresentedMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedMonoid")
            .field("alphabet", &self.alphabet)
            .field("atoms", &self.atoms)
            .finish_non_exhaustive()
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn difference(b: &[u32], a: &[u32]) -> Vec<u32> {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

/// 1-norm of an exponent vector.
pub fn size(v: &[u32]) -> u32 {
    v.iter().sum()
}

/// A multiset of atoms, stored as sorted `(atom index, multiplicity)` pairs,
/// together with the element it factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    element: Vec<u32>,
    parts: Vec<(usize, u32)>,
}

impl Factorization {
    /// Checks that the indices name atoms of `monoid` and recomputes the element.
    pub fn from_parts<M: AtomicMonoid + ?Sized>(
        monoid: &M,
        parts: &[(usize, u32)],
    ) -> Result<Self> {
        let atoms = monoid.atoms();
        let mut element = vec![0u32; monoid.rank()];
        let mut merged: std::collections::BTreeMap<usize, u32> = Default::default();
        for &(i, m) in parts {
            let atom = atoms
                .get(i)
                .ok_or_else(|| Error::InvalidElement(format!("atom index {i} out of range")))?;
            if m == 0 {
                continue;
            }
            for (e, a) in element.iter_mut().zip(atom) {
                *e += a * m;
            }
            *merged.entry(i).or_default() += m;
        }
        Ok(Self {
            element,
            parts: merged.into_iter().collect(),
        })
    }

    pub fn element(&self) -> &[u32] {
        &self.element
    }

    pub fn parts(&self) -> &[(usize, u32)] {
        &self.parts
    }

    /// Number of atoms counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.parts.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, atom: usize) -> u32 {
        self.parts
            .binary_search_by_key(&atom, |&(i, _)| i)
            .map(|k| self.parts[k].1)
            .unwrap_or(0)
    }

    /// Atom indices with repetition, ascending.
    pub fn atom_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts
            .iter()
            .flat_map(|&(i, m)| std::iter::repeat_n(i, m as usize))
    }

    /// The product `self * other` in the factorization monoid.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut parts = self.parts.clone();
        for &(i, m) in &other.parts {
            match parts.binary_search_by_key(&i, |&(j, _)| j) {
                Ok(k) => parts[k].1 += m,
                Err(k) => parts.insert(k, (i, m)),
            }
        }
        let element = self
            .element
            .iter()
            .zip(&other.element)
            .map(|(a, b)| a + b)
            .collect();
        Factorization { element, parts }
    }

    /// The greatest common divisor: componentwise minimum of multiplicities.
    pub fn gcd_len(&self, other: &Factorization) -> u32 {
        let (mut i, mut j, mut common) = (0, 0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, m) = self.parts[i];
            let (b, n) = other.parts[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += m.min(n);
                    i += 1;
                    j += 1;
                }
            }
        }
        common
    }
}

/// A set of lengths, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LengthSet(BTreeSet<u32>);

impl LengthSet {
    pub fn new(lengths: impl IntoIterator<Item = u32>) -> Self {
        Self(lengths.into_iter().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, l: u32) -> bool {
        self.0.contains(&l)
    }

    pub fn as_set(&self) -> &BTreeSet<u32> {
        &self.0
    }
}

impl fmt::Display for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, self.0.iter())
    }
}

pub(crate) fn write_set<'a>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = &'a u32>,
) -> fmt::Result {
    write!(f, "{{")?;
    for (i, x) in items.enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "}}")
}

/// Catenary degree value; `Infinite` is only produced for inputs whose
/// factorization graph is disconnected at every threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Catenary {
    Finite(u32),
    Infinite,
}

impl Catenary {
    pub fn finite(self) -> Option<u32> {
        match self {
            Catenary::Finite(n) => Some(n),
            Catenary::Infinite => None,
        }
    }
}

impl fmt::Display for Catenary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Catenary::Finite(n) => write!(f, "{n}"),
            Catenary::Infinite => write!(f, "inf"),
        }
    }
}

fn check_member<M: AtomicMonoid + ?Sized>(monoid: &M, a: &[u32]) -> Result<()> {
    if a.len() != monoid.rank() || !monoid.contains(a) {
        return Err(Error::NotAMember(format!("{a:?}")));
    }
    Ok(())
}

struct Enumerator<'a> {
    atoms: &'a [Vec<u32>],
    by_first: Vec<Vec<usize>>,
    cap: usize,
}

impl<'a> Enumerator<'a> {
    fn new(atoms: &'a [Vec<u32>], rank: usize, target: &[u32]) -> Self {
        let mut by_first = vec![Vec::new(); rank];
        for (i, a) in atoms.iter().enumerate() {
            if !divides(a, target) {
                continue;
            }
            if let Some(p) = a.iter().position(|&e| e > 0) {
                by_first[p].push(i);
            }
        }
        Self {
            atoms,
            by_first,
            cap: usize::MAX,
        }
    }

    fn run<F: FnMut(&[(usize, u32)]) -> bool>(&self, target: &[u32], visit: &mut F) {
        let mut rem = target.to_vec();
        let mut cur = Vec::new();
        match rem.iter().position(|&e| e > 0) {
            None => {
                visit(&cur);
            }
            Some(p) => {
                self.walk(p, 0, &mut rem, &mut cur, visit);
            }
        }
    }

    /// Returns `false` once the visitor asks to stop.
    fn walk<F: FnMut(&[(usize, u32)]) -> bool>(
        &self,
        p: usize,
        start: usize,
        rem: &mut [u32],
        cur: &mut Vec<(usize, u32)>,
        visit: &mut F,
    ) -> bool {
        if rem[p] == 0 {
            return match rem[p + 1..].iter().position(|&e| e > 0) {
                None => visit(cur),
                Some(q) => self.walk(p + 1 + q, 0, rem, cur, visit),
            };
        }
        let group = &self.by_first[p];
        for (k, &ai) in group.iter().enumerate().skip(start) {
            let atom = &self.atoms[ai];
            let max_mult = atom
                .iter()
                .zip(rem.iter())
                .filter(|(&a, _)| a > 0)
                .map(|(&a, &r)| r / a)
                .min()
                .unwrap_or(0);
            if max_mult == 0 {
                continue;
            }
            let mut keep_going = true;
            for m in 1..=max_mult {
                for (r, &a) in rem.iter_mut().zip(atom) {
                    *r -= a;
                }
                cur.push((ai, m));
                keep_going = self.walk(p, k + 1, rem, cur, visit);
                cur.pop();
                if !keep_going {
                    for (r, &a) in rem.iter_mut().zip(atom) {
                        *r += a * m;
                    }
                    break;
                }
            }
            if !keep_going {
                return false;
            }
            for (r, &a) in rem.iter_mut().zip(atom) {
                *r += a * max_mult;
            }
        }
        true
    }
}

/// All factorizations of `a`, each exactly once, in enumeration order.
pub fn factorizations<M: AtomicMonoid + ?Sized>(
    monoid: &M,
    a: &[u32],
) -> Result<Vec<Factorization>> {
    factorizations_capped(monoid, a, DEFAULT_FACTORIZATION_CAP)
}

/// Like [`factorizations`] but fails with [`Error::Truncated`] once more than
/// `cap` factorizations exist.
pub fn factorizations_capped<M: AtomicMonoid + ?Sized>(
    monoid: &M,
    a: &[u32],
    cap: usize,
) -> Result<Vec<Factorization>> {
    check_member(monoid, a)?;
    let mut en = Enumerator::new(monoid.atoms(), monoid.rank(), a);
    en.cap = cap;
    let mut out = Vec::new();
    let mut truncated = false;
    en.run(a, &mut |parts| {
        if out.len() >= en.cap {
            truncated = true;
            return false;
        }
        out.push(Factorization {
            element: a.to_vec(),
            parts: {
                let mut p = parts.to_vec();
                p.sort_unstable();
                p
            },
        });
        true
    });
    if truncated {
        return Err(Error::Truncated { cap });
    }
    Ok(out)
}

pub fn length_set<M: AtomicMonoid + ?Sized>(monoid: &M, a: &[u32]) -> Result<LengthSet> {
    check_member(monoid, a)?;
    let en = Enumerator::new(monoid.atoms(), monoid.rank(), a);
    let mut lengths = BTreeSet::new();
    en.run(a, &mut |parts| {
        lengths.insert(parts.iter().map(|&(_, m)| m).sum());
        true
    });
    Ok(LengthSet(lengths))
}

/// Successive differences of a set of lengths.
pub fn delta_of_set(lengths: &LengthSet) -> BTreeSet<u32> {
    lengths
        .0
        .iter()
        .zip(lengths.0.iter().skip(1))
        .map(|(k, l)| l - k)
        .collect()
}

/// All exponent vectors of 1-norm at most `bound` that lie in the monoid,
/// in ascending lexicographic order (the empty vector first).
pub fn members_up_to<M: AtomicMonoid + ?Sized>(monoid: &M, bound: u32) -> Vec<Vec<u32>> {
    fn rec<M: AtomicMonoid + ?Sized>(
        monoid: &M,
        i: usize,
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == cur.len() {
            if monoid.contains(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(monoid, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; monoid.rank()];
    rec(monoid, 0, bound, &mut cur, &mut out);
    out
}

/// Union of the successive-gap sets over all elements of size at most `bound`.
pub fn delta_monoid<M: AtomicMonoid + ?Sized>(monoid: &M, bound: u32) -> BTreeSet<u32> {
    members_up_to(monoid, bound)
        .par_iter()
        .map(|a| delta_of_set(&length_set(monoid, a).expect("scanned members are members")))
        .reduce(BTreeSet::new, |mut x, y| {
            x.extend(y);
            x
        })
}

/// Permutable distance: cancel the common atoms and take the longer remainder.
pub fn permutable_distance(z: &Factorization, w: &Factorization) -> Result<u32> {
    if z.element != w.element {
        return Err(Error::IncomparableFactorizations);
    }
    let common = z.gcd_len(w);
    Ok((z.len() - common).max(w.len() - common))
}

/// Bottleneck connectivity threshold of a set of factorizations of one element
/// under the permutable distance.
pub fn catenary_of(zs: &[Factorization]) -> Result<Catenary> {
    let mut edges = Vec::with_capacity(zs.len() * zs.len().saturating_sub(1) / 2);
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            edges.push((permutable_distance(&zs[i], &zs[j])?, i, j));
        }
    }
    Ok(match connectivity_threshold(zs.len(), edges) {
        Some(n) => Catenary::Finite(n),
        None => Catenary::Infinite,
    })
}

pub fn catenary<M: AtomicMonoid + ?Sized>(monoid: &M, a: &[u32]) -> Result<Catenary> {
    catenary_of(&factorizations(monoid, a)?)
}

/// Maximal catenary degree over all elements of size at most `bound`.
pub fn catenary_monoid<M: AtomicMonoid + ?Sized>(monoid: &M, bound: u32) -> Result<Catenary> {
    members_up_to(monoid, bound)
        .par_iter()
        .map(|a| catenary(monoid, a))
        .try_reduce(|| Catenary::Finite(0), |x, y| Ok(x.max(y)))
}

/// Largest factorization length of a product of two atoms of size at most `bound`.
pub fn rho2<M: AtomicMonoid + ?Sized>(monoid: &M, bound: u32) -> u32 {
    let atoms = monoid.atoms();
    let pairs: Vec<(usize, usize)> = (0..atoms.len())
        .flat_map(|i| (i..atoms.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| size(&atoms[i]) + size(&atoms[j]) <= bound)
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let prod: Vec<u32> = atoms[i].iter().zip(&atoms[j]).map(|(a, b)| a + b).collect();
            length_set(monoid, &prod)
                .expect("a product of atoms is a member")
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Outcome of a bounded half-factoriality scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HalfFactoriality {
    Holds,
    /// Lexicographically smallest element whose set of lengths is not a singleton.
    Fails {
        witness: Vec<u32>,
        lengths: LengthSet,
    },
}

impl HalfFactoriality {
    pub fn holds(&self) -> bool {
        matches!(self, HalfFactoriality::Holds)
    }
}

pub fn half_factorial<M: AtomicMonoid + ?Sized>(monoid: &M, bound: u32) -> HalfFactoriality {
    let found = members_up_to(monoid, bound)
        .into_par_iter()
        .find_map_first(|a| {
            let l = length_set(monoid, &a).expect("scanned members are members");
            (l.len() > 1).then_some((a, l))
        });
    match found {
        None => HalfFactoriality::Holds,
        Some((witness, lengths)) => HalfFactoriality::Fails { witness, lengths },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The numerical monoid generated by 2 and 3 inside N_0, written on one letter.
    fn numerical_2_3() -> PresentedMonoid {
        PresentedMonoid::new(vec!["t".into()], vec![vec![2], vec![3]], |v| v[0] != 1).unwrap()
    }

    #[test]
    fn presented_monoid_rejects_bad_atoms() {
        assert!(PresentedMonoid::new(vec!["t".into()], vec![vec![0]], |_| true).is_err());
        assert!(
            PresentedMonoid::new(vec!["t".into()], vec![vec![2], vec![4]], |v| v[0] % 2 == 0)
                .is_err()
        );
        assert!(PresentedMonoid::new(vec!["t".into()], vec![vec![3]], |v| v[0] % 2 == 0).is_err());
        assert!(PresentedMonoid::new(vec!["t".into()], vec![vec![1, 1]], |_| true).is_err());
    }

    #[test]
    fn numerical_monoid_lengths() {
        let h = numerical_2_3();
        assert_eq!(length_set(&h, &[6]).unwrap(), LengthSet::new([2, 3]));
        assert_eq!(length_set(&h, &[12]).unwrap(), LengthSet::new([4, 5, 6]));
        assert_eq!(factorizations(&h, &[12]).unwrap().len(), 3);
        assert!(matches!(length_set(&h, &[1]), Err(Error::NotAMember(_))));
        assert_eq!(catenary(&h, &[6]).unwrap(), Catenary::Finite(3));
        assert_eq!(rho2(&h, 6), 3);
    }

    #[test]
    fn empty_element_has_the_empty_factorization() {
        let h = numerical_2_3();
        let zs = factorizations(&h, &[0]).unwrap();
        assert_eq!(zs.len(), 1);
        assert!(zs[0].is_empty());
        assert_eq!(length_set(&h, &[0]).unwrap(), LengthSet::new([0]));
        assert_eq!(catenary(&h, &[0]).unwrap(), Catenary::Finite(0));
    }

    #[test]
    fn delta_of_set_examples() {
        assert_eq!(delta_of_set(&LengthSet::new([2, 3])), BTreeSet::from([1]));
        assert!(delta_of_set(&LengthSet::new([5])).is_empty());
        assert_eq!(
            delta_of_set(&LengthSet::new([2, 4, 7])),
            BTreeSet::from([2, 3])
        );
    }

    #[test]
    fn truncation_is_reported() {
        let h = numerical_2_3();
        assert_eq!(
            factorizations_capped(&h, &[12], 2),
            Err(Error::Truncated { cap: 2 })
        );
        assert_eq!(factorizations_capped(&h, &[12], 3).unwrap().len(), 3);
    }

    #[test]
    fn distance_requires_same_element() {
        let h = numerical_2_3();
        let a = Factorization::from_parts(&h, &[(0, 3)]).unwrap();
        let b = Factorization::from_parts(&h, &[(1, 2)]).unwrap();
        let c = Factorization::from_parts(&h, &[(1, 1)]).unwrap();
        assert_eq!(permutable_distance(&a, &b).unwrap(), 3);
        assert_eq!(permutable_distance(&a, &a).unwrap(), 0);
        assert_eq!(
            permutable_distance(&a, &c),
            Err(Error::IncomparableFactorizations)
        );
    }

    #[test]
    fn factorization_product_and_gcd() {
        let h = numerical_2_3();
        let a = Factorization::from_parts(&h, &[(0, 2), (1, 1)]).unwrap();
        let b = Factorization::from_parts(&h, &[(1, 2)]).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.element(), &[13]);
        assert_eq!(ab.parts(), &[(0, 2), (1, 3)]);
        assert_eq!(a.gcd_len(&b), 1);
        assert_eq!(ab.atom_indices().collect::<Vec<_>>(), vec![0, 0, 1, 1, 1]);
        assert_eq!(ab.multiplicity(1), 3);
        assert_eq!(ab.multiplicity(7), 0);
    }

    #[test]
    fn catenary_infinite_orders_last() {
        assert!(Catenary::Finite(100) < Catenary::Infinite);
        assert_eq!(Catenary::Infinite.to_string(), "inf");
        assert_eq!(Catenary::Finite(3).finite(), Some(3));
    }

    #[test]
    fn members_are_lexicographic() {
        let h = numerical_2_3();
        let m = members_up_to(&h, 5);
        assert_eq!(m, vec![vec![0], vec![2], vec![3], vec![4], vec![5]]);
    }
}
