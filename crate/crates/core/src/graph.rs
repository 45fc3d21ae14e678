//! Undirected graph of known comparisons.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::pcm::IncompletePcm;

/// One vertex per item, one edge `{i, j}` (stored as `i < j`) per known pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl ComparisonGraph {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: BTreeSet::new(),
        }
    }

    /// Adds `{i, j}`; self-loops and out-of-range vertices are ignored.
    /// Returns whether the edge was new.
    pub fn add_edge(&mut self, i: usize, j: usize) -> bool {
        if i == j || i >= self.vertex_count || j >= self.vertex_count {
            return false;
        }
        self.edges.insert((i.min(j), i.max(j)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut sets = DisjointSet::new(self.vertex_count);
        for &(a, b) in &self.edges {
            sets.union(a, b);
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for v in 0..self.vertex_count {
            by_root[sets.find(v)].push(v);
        }
        let mut comps: Vec<_> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// Whether `tree` is a subset of the edges forming a spanning tree.
    pub fn contains_spanning_tree(&self, tree: &[(usize, usize)]) -> bool {
        if self.vertex_count == 0 || tree.len() + 1 != self.vertex_count {
            return false;
        }
        let mut sets = DisjointSet::new(self.vertex_count);
        for &(a, b) in tree {
            if !self.has_edge(a, b) || !sets.union(a, b) {
                return false;
            }
        }
        true
    }
}

/// Graph representation of `pcm`.
pub fn graph_of(pcm: &IncompletePcm) -> ComparisonGraph {
    let mut g = ComparisonGraph::new(pcm.n());
    for (i, j, _) in pcm.known_upper() {
        g.add_edge(i, j);
    }
    g
}

/// True iff one component spans every vertex.
pub fn is_connected(g: &ComparisonGraph) -> bool {
    g.vertex_count() > 0 && g.components().len() == 1
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}
