//! Disjoint-set forest and the bottleneck connectivity threshold built on it.

#[derive(Clone, Debug)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
    components: usize,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            components: n,
        }
    }

    pub(crate) fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Returns `false` when both nodes were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
        self.components -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}

/// Smallest `N` such that the graph on `n` vertices keeping only edges of
/// weight `<= N` is connected. `Some(0)` for `n <= 1`; `None` if the full
/// edge set leaves the graph disconnected.
pub(crate) fn connectivity_threshold(n: usize, mut edges: Vec<(u32, usize, usize)>) -> Option<u32> {
    if n <= 1 {
        return Some(0);
    }
    edges.sort_unstable();
    let mut dsu = DisjointSet::new(n);
    for (w, a, b) in edges {
        if dsu.union(a, b) && dsu.components() == 1 {
            return Some(w);
        }
    }
    None
}
