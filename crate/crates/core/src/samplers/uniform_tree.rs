use crate::forest::RootedForest;
use crate::rng::RngStream;

use super::{check_n, SamplerError};

/// Linear-time Prüfer decoding. `word` has length `m - 2` with letters in `1..=m`;
/// returns the `m - 1` undirected edges of the tree.
pub fn prufer_decode(word: &[usize], m: usize) -> Vec<(usize, usize)> {
    assert!(m >= 2 && word.len() == m - 2);
    let mut degree = vec![1usize; m + 1];
    degree[0] = 0;
    for &x in word {
        degree[x] += 1;
    }
    let mut ptr = 1;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    let mut edges = Vec::with_capacity(m - 1);
    for &x in word {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, m));
    edges
}

/// Orients an undirected tree on `1..=m` away from `root`.
pub fn orient_tree(m: usize, edges: &[(usize, usize)], root: usize) -> RootedForest {
    // CSR adjacency
    let mut start = vec![0usize; m + 2];
    for &(a, b) in edges {
        start[a + 1] += 1;
        start[b + 1] += 1;
    }
    for i in 1..start.len() {
        start[i] += start[i - 1];
    }
    let mut fill = start.clone();
    let mut adj = vec![0usize; 2 * edges.len()];
    for &(a, b) in edges {
        adj[fill[a]] = b;
        fill[a] += 1;
        adj[fill[b]] = a;
        fill[b] += 1;
    }
    let mut parents = vec![0usize; m];
    let mut visited = vec![false; m + 1];
    visited[root] = true;
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for &y in &adj[start[x]..start[x + 1]] {
            if !visited[y] {
                visited[y] = true;
                parents[y - 1] = x;
                stack.push(y);
            }
        }
    }
    RootedForest::from_parents_unchecked(parents)
}

/// Uniform rooted labeled tree on `1..=m`: uniform Prüfer word, then a uniform root.
pub fn sample_uniform_rooted_tree(
    m: usize,
    rng: &mut RngStream,
) -> Result<RootedForest, SamplerError> {
    match m {
        0 => Err(SamplerError::InvalidN { n: 0, min: 1 }),
        1 => Ok(RootedForest::edgeless(1)),
        _ => {
            let word: Vec<usize> = (0..m - 2).map(|_| rng.vertex(m)).collect();
            let edges = prufer_decode(&word, m);
            let root = rng.vertex(m);
            Ok(orient_tree(m, &edges, root))
        }
    }
}

#[derive(Clone, Debug)]
pub struct ViaTreeRecord {
    /// Uniform rooted tree on `1..=n-1`.
    pub tree: RootedForest,
    pub kept_edges: usize,
    pub removed_edges: usize,
    /// Vertex of the tree that the new vertex `n` attaches to.
    pub attach_to: usize,
    /// Forest on `1..=n` before relabeling.
    pub pre_relabel: RootedForest,
    pub sigma: Vec<usize>,
    pub forest: RootedForest,
}

/// Removes the decreasing edges of `tree` and hangs a new last vertex from `attach_to`.
pub fn prune_and_attach(tree: &RootedForest, attach_to: usize) -> RootedForest {
    let mut parents: Vec<usize> = tree
        .parents()
        .iter()
        .enumerate()
        .map(|(i, &p)| if p != 0 && p < i + 1 { p } else { 0 })
        .collect();
    parents.push(attach_to);
    RootedForest::from_parents_unchecked(parents)
}

pub fn sample_via_uniform_tree_record(
    n: usize,
    rng: &mut RngStream,
) -> Result<ViaTreeRecord, SamplerError> {
    check_n(n)?;
    let tree = sample_uniform_rooted_tree(n - 1, rng)?;
    let attach_to = rng.vertex(n - 1);
    let pre_relabel = prune_and_attach(&tree, attach_to);
    let kept_edges = pre_relabel.num_edges() - 1;
    let removed_edges = tree.num_edges() - kept_edges;
    let sigma = rng.permutation(n);
    let forest = pre_relabel.relabel(&sigma);
    Ok(ViaTreeRecord {
        tree,
        kept_edges,
        removed_edges,
        attach_to,
        pre_relabel,
        sigma,
        forest,
    })
}

pub fn sample_via_uniform_tree(
    n: usize,
    rng: &mut RngStream,
) -> Result<RootedForest, SamplerError> {
    sample_via_uniform_tree_record(n, rng).map(|r| r.forest)
}
