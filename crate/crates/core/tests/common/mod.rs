#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// Every factorization of `a`, as ascending lists of atom indices, by
/// repeatedly splitting off an atom of index at least the previous one.
pub fn naive_factorizations(atoms: &[Vec<u32>], a: &[u32]) -> Vec<Vec<usize>> {
    fn rec(
        atoms: &[Vec<u32>],
        a: &mut Vec<u32>,
        from: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if a.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in from..atoms.len() {
            if atoms[i].iter().zip(a.iter()).all(|(u, x)| u <= x) {
                for (x, u) in a.iter_mut().zip(&atoms[i]) {
                    *x -= u;
                }
                cur.push(i);
                rec(atoms, a, i, cur, out);
                cur.pop();
                for (x, u) in a.iter_mut().zip(&atoms[i]) {
                    *x += u;
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(atoms, &mut a.to_vec(), 0, &mut Vec::new(), &mut out);
    out
}

pub fn naive_lengths(atoms: &[Vec<u32>], a: &[u32]) -> BTreeSet<u32> {
    naive_factorizations(atoms, a)
        .iter()
        .map(|z| z.len() as u32)
        .collect()
}

/// Cancel common atoms, take the longer remainder.
pub fn multiset_distance(z: &[usize], w: &[usize]) -> u32 {
    let mut rest = w.to_vec();
    let mut left = 0;
    for i in z {
        match rest.iter().position(|j| j == i) {
            Some(p) => {
                rest.swap_remove(p);
            }
            None => left += 1,
        }
    }
    left.max(rest.len() as u32)
}

/// Smallest `N` such that the factorizations are linked by steps of distance at most `N`.
pub fn naive_catenary(zs: &[Vec<usize>]) -> u32 {
    if zs.len() <= 1 {
        return 0;
    }
    let top = zs.iter().map(Vec::len).max().unwrap() as u32;
    (0..=top)
        .find(|&n| {
            let mut seen = vec![false; zs.len()];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(i) = queue.pop_front() {
                for j in 0..zs.len() {
                    if !seen[j] && multiset_distance(&zs[i], &zs[j]) <= n {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            seen.iter().all(|&s| s)
        })
        .expect("distance is bounded by the longest factorization")
}

/// All tuples of a product of cyclic groups, last coordinate fastest.
pub fn tuples(orders: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &n in orders {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |r| {
                    let mut t = t.clone();
                    t.push(r);
                    t
                })
            })
            .collect();
    }
    out
}

fn add(orders: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter()
        .zip(b)
        .zip(orders)
        .map(|((x, y), n)| (x + y) % n)
        .collect()
}

fn neg(orders: &[u32], a: &[u32]) -> Vec<u32> {
    a.iter().zip(orders).map(|(x, n)| (n - x) % n).collect()
}

/// Minimal zero-sum sequences over the nonzero elements, as count vectors
/// indexed by the nonzero tuples in lexicographic order, and their maximal length.
///
/// Walks zero-sum-free sequences keeping the full set of subsums; closing a
/// zero-sum-free `S` with `-σ(S)` gives every minimal zero-sum sequence.
pub fn minimal_zero_sums(orders: &[u32]) -> (u32, BTreeSet<Vec<u32>>) {
    let elems: Vec<Vec<u32>> = tuples(orders)
        .into_iter()
        .filter(|t| t.iter().any(|&x| x != 0))
        .collect();
    let index: HashMap<Vec<u32>, usize> = elems
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let zero = vec![0u32; orders.len()];
    let mut found = BTreeSet::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        orders: &[u32],
        elems: &[Vec<u32>],
        index: &HashMap<Vec<u32>, usize>,
        zero: &[u32],
        from: usize,
        counts: &mut Vec<u32>,
        sum: Vec<u32>,
        subsums: &HashSet<Vec<u32>>,
        found: &mut BTreeSet<Vec<u32>>,
    ) {
        if counts.iter().any(|&c| c > 0) {
            let mut atom = counts.clone();
            atom[index[&neg(orders, &sum)]] += 1;
            found.insert(atom);
        }
        for j in from..elems.len() {
            let g = &elems[j];
            let mut next: HashSet<Vec<u32>> = subsums.clone();
            next.insert(g.clone());
            for s in subsums {
                next.insert(add(orders, s, g));
            }
            if next.contains(zero) {
                continue;
            }
            counts[j] += 1;
            rec(
                orders,
                elems,
                index,
                zero,
                j,
                counts,
                add(orders, &sum, g),
                &next,
                found,
            );
            counts[j] -= 1;
        }
    }
    rec(
        orders,
        &elems,
        &index,
        &zero,
        0,
        &mut vec![0; elems.len()],
        zero.clone(),
        &HashSet::new(),
        &mut found,
    );
    let d = found
        .iter()
        .map(|a| a.iter().sum::<u32>())
        .max()
        .unwrap_or(1);
    (d, found)
}

/// Every group of order at most 16, up to isomorphism.
pub fn small_groups() -> Vec<Vec<u32>> {
    let mut gs: Vec<Vec<u32>> = (1..=16).map(|n| vec![n]).collect();
    gs.extend([
        vec![2, 2],
        vec![2, 4],
        vec![2, 2, 2],
        vec![3, 3],
        vec![2, 6],
        vec![2, 8],
        vec![4, 4],
        vec![2, 2, 4],
        vec![2, 2, 2, 2],
    ]);
    gs
}

pub fn covers(n: u32, progs: &[(i64, u32)]) -> bool {
    (0..n as i64).all(|r| {
        progs
            .iter()
            .any(|&(a, k)| (r - a).rem_euclid(n as i64) <= k as i64)
    })
}

/// First tuple `m` with `m_i ≤ k_i + 1` whose starting segments partition `Z/nZ`.
pub fn brute_prefixes(n: u32, progs: &[(i64, u32)]) -> Option<Vec<u32>> {
    fn rec(n: u32, progs: &[(i64, u32)], i: usize, left: u32, cur: &mut Vec<u32>) -> bool {
        if i == progs.len() {
            return left == 0 && partitions(n, progs, cur);
        }
        let top = (progs[i].1 + 1).min(left);
        for m in 0..=top {
            cur.push(m);
            if rec(n, progs, i + 1, left - m, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    rec(n, progs, 0, n, &mut cur).then_some(cur)
}

pub fn partitions(n: u32, progs: &[(i64, u32)], m: &[u32]) -> bool {
    let mut hit = vec![0u32; n as usize];
    for (&(a, _), &mi) in progs.iter().zip(m) {
        for j in 0..mi as i64 {
            hit[(a + j).rem_euclid(n as i64) as usize] += 1;
        }
    }
    hit.iter().all(|&h| h == 1)
}
