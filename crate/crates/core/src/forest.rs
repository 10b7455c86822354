//! Labeled directed graphs, rooted forests and per-forest statistics.
//!
//! Vertices are labeled `1..=n`. A [`RootedForest`] is stored as a parent map:
//! `parent(v) = Some(u)` means the directed edge `u -> v`. The text format is
//! one line `n p_1 ... p_n` with `p_v = 0` for roots.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForestError {
    #[error("vertex count must be at least 1")]
    EmptyVertexSet,
    #[error("vertex {v} is outside 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} has more than one incoming edge")]
    MultipleParents(usize),
    #[error("directed cycle through vertex {0}")]
    CycleDetected(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A directed graph on `{1..n}` without self-loops or duplicate edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    succ: Vec<BTreeSet<usize>>,
    pred: Vec<BTreeSet<usize>>,
}

impl DirectedGraph {
    pub fn empty(n: usize) -> Result<Self, ForestError> {
        if n == 0 {
            return Err(ForestError::EmptyVertexSet);
        }
        Ok(Self {
            succ: vec![BTreeSet::new(); n],
            pred: vec![BTreeSet::new(); n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, ForestError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(ForestError::SelfLoop(u));
            }
            if !g.insert_edge(u, v) {
                return Err(ForestError::DuplicateEdge(u, v));
            }
        }
        Ok(g)
    }

    /// Every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Result<Self, ForestError> {
        let pairs = (1..=n).flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)));
        Self::from_edges(n, pairs)
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(BTreeSet::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n() && self.succ[u - 1].contains(&v)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, out)| out.iter().map(move |&v| (i + 1, v)))
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.pred[v - 1].len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.succ[v - 1].len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), ForestError> {
        if v == 0 || v > self.n() {
            Err(ForestError::VertexOutOfRange { v, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Inserts `u -> v`; returns false if the edge was already present.
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        let fresh = self.succ[u - 1].insert(v);
        self.pred[v - 1].insert(u);
        fresh
    }

    /// Removes every edge incident to `v`, in either direction.
    pub(crate) fn disconnect(&mut self, v: usize) {
        for u in std::mem::take(&mut self.pred[v - 1]) {
            self.succ[u - 1].remove(&v);
        }
        for w in std::mem::take(&mut self.succ[v - 1]) {
            self.pred[w - 1].remove(&v);
        }
    }

    pub fn is_forest(&self) -> bool {
        validate_forest(self).is_ok()
    }
}

/// A disjoint union of rooted trees on `{1..n}`, edges pointing away from roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedForest {
    // parents[v - 1] is the parent label of v, 0 for a root.
    parents: Vec<usize>,
}

impl RootedForest {
    pub fn edgeless(n: usize) -> Self {
        Self {
            parents: vec![0; n],
        }
    }

    /// Builds a forest from a parent array (`0` marks a root) and checks it.
    pub fn from_parents(parents: Vec<usize>) -> Result<Self, ForestError> {
        let n = parents.len();
        if n == 0 {
            return Err(ForestError::EmptyVertexSet);
        }
        for (i, &p) in parents.iter().enumerate() {
            if p > n {
                return Err(ForestError::VertexOutOfRange { v: p, n });
            }
            if p == i + 1 {
                return Err(ForestError::SelfLoop(p));
            }
        }
        let forest = Self { parents };
        if let Some(v) = forest.find_cycle() {
            return Err(ForestError::CycleDetected(v));
        }
        Ok(forest)
    }

    /// For constructions that are forests by design.
    pub(crate) fn from_parents_unchecked(parents: Vec<usize>) -> Self {
        let forest = Self { parents };
        debug_assert!(forest.find_cycle().is_none());
        forest
    }

    fn find_cycle(&self) -> Option<usize> {
        // 0 = unvisited, 1 = on current walk, 2 = known to reach a root
        let n = self.n();
        let mut state = vec![0u8; n + 1];
        let mut walk = Vec::new();
        for start in 1..=n {
            let mut v = start;
            while v != 0 && state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                v = self.parents[v - 1];
            }
            if v != 0 && state[v] == 1 {
                return Some(v);
            }
            for w in walk.drain(..) {
                state[w] = 2;
            }
        }
        None
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parents[v - 1] {
            0 => None,
            p => Some(p),
        }
    }

    /// Raw parent array, `0` for roots.
    pub fn parents(&self) -> &[usize] {
        &self.parents
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.parents
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == 0)
            .map(|(i, _)| i + 1)
    }

    pub fn num_edges(&self) -> usize {
        self.parents.iter().filter(|&&p| p != 0).count()
    }

    /// Edges `(parent, child)` ordered by child.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parents
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0)
            .map(|(i, &p)| (p, i + 1))
    }

    /// Edges `u -> v` with `u < v`.
    pub fn increasing_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges().filter(|&(u, v)| u < v)
    }

    pub fn is_tree(&self) -> bool {
        self.roots().count() == 1
    }

    pub fn to_graph(&self) -> DirectedGraph {
        DirectedGraph::from_edges(self.n(), self.edges()).expect("a forest is a valid digraph")
    }

    /// Moves vertex `l` to label `sigma[l - 1]`.
    pub fn relabel(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.n());
        let mut parents = vec![0; self.n()];
        for (i, &p) in self.parents.iter().enumerate() {
            if p != 0 {
                parents[sigma[i] - 1] = sigma[p - 1];
            }
        }
        Self { parents }
    }

    /// Root of the tree containing each vertex (`result[v - 1]`).
    pub fn root_of_each(&self) -> Vec<usize> {
        let n = self.n();
        let mut root = vec![0usize; n + 1];
        let mut walk = Vec::new();
        for start in 1..=n {
            let mut v = start;
            while root[v] == 0 {
                let p = self.parents[v - 1];
                if p == 0 {
                    root[v] = v;
                    break;
                }
                walk.push(v);
                v = p;
            }
            let r = root[v];
            for w in walk.drain(..) {
                root[w] = r;
            }
        }
        root.remove(0);
        root
    }

    /// Children lists (`result[u - 1]`), each in increasing label order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.n()];
        for (u, v) in self.edges() {
            children[u - 1].push(v);
        }
        children
    }

    /// Vertices of the subtree hanging from `v`, including `v`.
    pub fn subtree_size(&self, v: usize) -> usize {
        let children = self.children();
        let mut stack = vec![v];
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            stack.extend_from_slice(&children[x - 1]);
        }
        size
    }

    pub fn stats(&self) -> ForestStats {
        ForestStats::from_forest(self)
    }

    pub fn to_line(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RootedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())?;
        for p in &self.parents {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

impl FromStr for RootedForest {
    type Err = ForestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|e| ForestError::Parse(format!("{t:?}: {e}")))
        });
        let n = tokens
            .next()
            .ok_or_else(|| ForestError::Parse("empty input".into()))??;
        let parents = tokens.collect::<Result<Vec<_>, _>>()?;
        if parents.len() != n {
            return Err(ForestError::Parse(format!(
                "expected {n} parent entries, found {}",
                parents.len()
            )));
        }
        Self::from_parents(parents)
    }
}

/// Returns the forest view of `g`, or the reason `g` is not a rooted forest.
pub fn validate_forest(g: &DirectedGraph) -> Result<RootedForest, ForestError> {
    let n = g.n();
    let mut parents = vec![0; n];
    for v in 1..=n {
        let mut incoming = g.pred[v - 1].iter();
        if let Some(&u) = incoming.next() {
            if incoming.next().is_some() {
                return Err(ForestError::MultipleParents(v));
            }
            parents[v - 1] = u;
        }
    }
    RootedForest::from_parents(parents)
}

/// Aggregate observables of a single forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestStats {
    pub n: usize,
    pub num_trees: usize,
    pub num_edges: usize,
    /// Sorted in decreasing order.
    pub tree_sizes: Vec<usize>,
    pub in_degrees: Vec<usize>,
    pub out_degrees: Vec<usize>,
    /// Total degree `in + out` of each vertex.
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub max_tree_size: usize,
    root_of: Vec<usize>,
    size_by_root: Vec<usize>,
}

impl ForestStats {
    pub fn from_forest(f: &RootedForest) -> Self {
        let n = f.n();
        let mut in_degrees = vec![0; n];
        let mut out_degrees = vec![0; n];
        for (u, v) in f.edges() {
            out_degrees[u - 1] += 1;
            in_degrees[v - 1] = 1;
        }
        let degrees: Vec<usize> = in_degrees
            .iter()
            .zip(&out_degrees)
            .map(|(a, b)| a + b)
            .collect();
        let root_of = f.root_of_each();
        let mut size_by_root = vec![0; n + 1];
        for &r in &root_of {
            size_by_root[r] += 1;
        }
        let mut tree_sizes: Vec<usize> = size_by_root.iter().copied().filter(|&s| s > 0).collect();
        tree_sizes.sort_unstable_by(|a, b| b.cmp(a));
        let num_edges = n - tree_sizes.len();
        Self {
            n,
            num_trees: tree_sizes.len(),
            num_edges,
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            max_tree_size: tree_sizes.first().copied().unwrap_or(0),
            tree_sizes,
            in_degrees,
            out_degrees,
            degrees,
            root_of,
            size_by_root,
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v - 1]
    }

    pub fn root_of(&self, v: usize) -> usize {
        self.root_of[v - 1]
    }

    /// Size of the tree containing `v`.
    pub fn tree_size_of(&self, v: usize) -> usize {
        self.size_by_root[self.root_of[v - 1]]
    }

    /// `(root, size)` of every tree, in increasing root label.
    pub fn trees(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .filter(|&r| self.size_by_root[r] > 0)
            .map(|r| (r, self.size_by_root[r]))
            .collect()
    }

    /// JSON object with keys `n, num_trees, num_edges, tree_sizes, max_degree, max_tree_size`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct View<'a> {
            n: usize,
            num_trees: usize,
            num_edges: usize,
            tree_sizes: &'a [usize],
            max_degree: usize,
            max_tree_size: usize,
        }
        serde_json::to_string(&View {
            n: self.n,
            num_trees: self.num_trees,
            num_edges: self.num_edges,
            tree_sizes: &self.tree_sizes,
            max_degree: self.max_degree,
            max_tree_size: self.max_tree_size,
        })
        .expect("plain struct serializes")
    }
}

/// Integer-valued observables of a forest, used by the oracle and the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForestStatistic {
    NumTrees,
    NumEdges,
    Degree(usize),
    TreeSize(usize),
    MaxDegree,
    MaxTreeSize,
}

impl ForestStatistic {
    pub fn eval(&self, stats: &ForestStats) -> usize {
        match *self {
            Self::NumTrees => stats.num_trees,
            Self::NumEdges => stats.num_edges,
            Self::Degree(v) => stats.degree(v),
            Self::TreeSize(v) => stats.tree_size_of(v),
            Self::MaxDegree => stats.max_degree,
            Self::MaxTreeSize => stats.max_tree_size,
        }
    }
}
