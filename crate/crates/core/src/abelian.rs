//! Finite abelian groups given as products of cyclic factors.
//!
//! A group is stored as the list of its cyclic factor orders `n_1, ..., n_r`
//! (not necessarily in invariant-factor form). Elements are residue tuples,
//! always kept normalized so that equality is structural.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C_{n_1} ⊕ ... ⊕ C_{n_r}`. The empty product is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    orders: Vec<u32>,
}

/// A normalized residue tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u32>);

impl GroupElement {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [r] => write!(f, "{r}"),
            rs => {
                write!(f, "(")?;
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FinAbGroup {
    /// Builds the group from its cyclic factor orders. Every order must be at least 1.
    pub fn new(orders: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(orders.len());
        for &n in orders {
            if n < 1 || n > u32::MAX as i64 {
                return Err(Error::InvalidSpecification(format!(
                    "cyclic factor order {n} is not a positive integer"
                )));
            }
            out.push(n as u32);
        }
        Ok(Self { orders: out })
    }

    pub fn cyclic(n: u32) -> Self {
        assert!(n >= 1, "cyclic group order must be positive");
        Self { orders: vec![n] }
    }

    pub fn trivial() -> Self {
        Self { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn cardinality(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &n| lcm(acc, n as u64))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// Normalizes an arbitrary integer tuple into an element.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        self.check_arity(residues.len())?;
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.orders)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as u32)
                .collect(),
        ))
    }

    fn check_arity(&self, len: usize) -> Result<()> {
        if len != self.orders.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} residues, got {len}",
                self.orders.len()
            )));
        }
        Ok(())
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        self.check_arity(a.0.len())?;
        if a.0.iter().zip(&self.orders).any(|(&r, &n)| r >= n) {
            return Err(Error::InvalidElement(format!("{a} is not normalized")));
        }
        Ok(())
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.check(a).is_ok()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| ((x as u64 + y as u64) % n as u64) as u32)
                .collect(),
        ))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        ))
    }

    /// `k·a`.
    pub fn scale(&self, k: u64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((x as u128 * k as u128) % n as u128) as u32)
                .collect(),
        ))
    }

    /// Least `k >= 1` with `k·a = 0`.
    pub fn element_order(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        Ok(a.0.iter().zip(&self.orders).fold(1u64, |acc, (&x, &n)| {
            let n = n as u64;
            lcm(acc, n / gcd(x as u64, n))
        }))
    }

    /// All elements in lexicographic order of their residue tuples.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.cardinality())
            .map(|i| self.element_at(i))
            .collect()
    }

    /// Position of `a` in [`enumerate`](Self::enumerate) (mixed radix, last factor fastest).
    pub fn index_of(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(a.0
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&r, &n)| acc * n as usize + r as usize))
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut res = vec![0u32; self.orders.len()];
        for (slot, &n) in res.iter_mut().zip(&self.orders).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        GroupElement(res)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "C1");
        }
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "C{n}")?;
        }
        Ok(())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Dense addition table over element indices. Used by the enumeration-heavy
/// code paths; `add[a * n + b]` is the index of `a + b`.
#[derive(Debug, Clone)]
pub(crate) struct CayleyTable {
    n: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl CayleyTable {
    pub(crate) fn new(group: &FinAbGroup) -> Self {
        let elems = group.enumerate();
        let n = elems.len();
        let mut add = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let s = group.add(a, b).expect("enumerated elements are valid");
                add[i * n + j] = group.index_of(&s).expect("sum is valid") as u32;
            }
        }
        let neg = (0..n)
            .map(|i| (0..n).find(|&j| add[i * n + j] == 0).unwrap() as u32)
            .collect();
        Self { n, add, neg }
    }

    #[inline]
    pub(crate) fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub(crate) fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub(crate) fn len(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(g: &FinAbGroup, r: &[i64]) -> GroupElement {
        g.element(r).unwrap()
    }

    #[test]
    fn make_group_examples() {
        assert_eq!(FinAbGroup::new(&[]).unwrap().cardinality(), 1);
        assert_eq!(FinAbGroup::new(&[2, 2]).unwrap().cardinality(), 4);
        assert_eq!(FinAbGroup::new(&[6]).unwrap().cardinality(), 6);
        assert!(matches!(
            FinAbGroup::new(&[3, 0]),
            Err(Error::InvalidSpecification(_))
        ));
        assert!(FinAbGroup::new(&[-2]).is_err());
    }

    #[test]
    fn add_examples() {
        let k = FinAbGroup::new(&[2, 2]).unwrap();
        assert_eq!(
            k.add(&el(&k, &[1, 0]), &el(&k, &[0, 1])).unwrap(),
            el(&k, &[1, 1])
        );
        let c6 = FinAbGroup::cyclic(6);
        assert_eq!(
            c6.add(&el(&c6, &[4]), &el(&c6, &[5])).unwrap(),
            el(&c6, &[3])
        );
        let a = el(&c6, &[5]);
        assert_eq!(c6.add(&a, &c6.zero()).unwrap(), a);
        assert!(matches!(
            c6.add(&a, &k.zero()),
            Err(Error::InvalidElement(_))
        ));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            FinAbGroup::trivial().enumerate(),
            vec![GroupElement(vec![])]
        );
        let c2 = FinAbGroup::cyclic(2);
        assert_eq!(c2.enumerate(), vec![el(&c2, &[0]), el(&c2, &[1])]);
        let k = FinAbGroup::new(&[2, 2]).unwrap();
        let want: Vec<_> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|r| el(&k, r))
            .collect();
        assert_eq!(k.enumerate(), want);
    }

    #[test]
    fn element_order_examples() {
        let c6 = FinAbGroup::cyclic(6);
        assert_eq!(c6.element_order(&c6.zero()).unwrap(), 1);
        assert_eq!(c6.element_order(&el(&c6, &[1])).unwrap(), 6);
        assert_eq!(c6.element_order(&el(&c6, &[2])).unwrap(), 3);
        let g = FinAbGroup::new(&[4, 6]).unwrap();
        assert_eq!(g.element_order(&el(&g, &[1, 4])).unwrap(), 12);
        assert_eq!(g.exponent(), 12);
    }

    #[test]
    fn normalization_is_idempotent() {
        let g = FinAbGroup::new(&[3, 5]).unwrap();
        let a = el(&g, &[-7, 23]);
        let again = g
            .element(&a.residues().iter().map(|&r| r as i64).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(a, again);
        assert_eq!(a.residues(), &[2, 3]);
    }

    #[test]
    fn lagrange_by_exhaustion() {
        for orders in [
            vec![],
            vec![8],
            vec![2, 4],
            vec![2, 2, 2],
            vec![4, 4],
            vec![3, 6],
            vec![2, 2, 4, 4],
        ] {
            let g = FinAbGroup::new(&orders).unwrap();
            let n = g.cardinality() as u64;
            for a in g.enumerate() {
                let k = g.element_order(&a).unwrap();
                assert_eq!(n % k, 0, "{a} in {g}");
                assert_eq!(g.scale(k, &a).unwrap(), g.zero());
            }
        }
    }

    #[test]
    fn enumerate_is_a_bijection_onto_normalized_tuples() {
        let g = FinAbGroup::new(&[3, 1, 4]).unwrap();
        let all = g.enumerate();
        assert_eq!(all.len(), g.cardinality());
        let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for (i, a) in all.iter().enumerate() {
            assert!(g.contains(a));
            assert_eq!(g.index_of(a).unwrap(), i);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cayley_table_agrees_with_add() {
        let g = FinAbGroup::new(&[2, 6]).unwrap();
        let t = CayleyTable::new(&g);
        let elems = g.enumerate();
        for (i, a) in elems.iter().enumerate() {
            assert_eq!(elems[t.neg(i)], g.neg(a).unwrap());
            for (j, b) in elems.iter().enumerate() {
                assert_eq!(elems[t.add(i, j)], g.add(a, b).unwrap());
            }
        }
    }

    fn group_and_three() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>)> {
        prop::collection::vec(1i64..7, 0..4).prop_flat_map(|orders| {
            let r = orders.len();
            let v = prop::collection::vec(-50i64..50, r);
            (Just(orders), v.clone(), v.clone(), v)
        })
    }

    proptest! {
        #[test]
        fn group_axioms((orders, a, b, c) in group_and_three()) {
            let g = FinAbGroup::new(&orders).unwrap();
            let (a, b, c) = (el(&g, &a), el(&g, &b), el(&g, &c));
            let ab_c = g.add(&g.add(&a, &b).unwrap(), &c).unwrap();
            let a_bc = g.add(&a, &g.add(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(g.add(&a, &b).unwrap(), g.add(&b, &a).unwrap());
            prop_assert_eq!(g.add(&a, &g.neg(&a).unwrap()).unwrap(), g.zero());
            prop_assert_eq!(g.add(&a, &g.zero()).unwrap(), a);
        }
    }
}
