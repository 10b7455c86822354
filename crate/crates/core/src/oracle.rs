//! Brute-force ground truth for tiny `n`: exhaustive enumeration of the uniform
//! attachment construction, the exact stationary law of the chain, and a direct
//! count of rooted trees by increasing edges. Everything is exact rational.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chain::{moran_step, MoranStep};
use crate::exactdist::Pmf;
use crate::forest::{validate_forest, ForestStatistic, RootedForest};
use crate::samplers::{backward_outcome, prune_and_attach, ua_record, UaVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} is outside the supported range {min}..={max}")]
    TooLarge { n: usize, min: usize, max: usize },
    #[error("stationary solve failed: {0}")]
    SolverDegenerate(String),
}

fn guard(n: usize, min: usize, max: usize) -> Result<(), OracleError> {
    if n < min || n > max {
        Err(OracleError::TooLarge { n, min, max })
    } else {
        Ok(())
    }
}

fn rational(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact law of a random forest, keyed by parent array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactForestDistribution {
    pub n: usize,
    pub probs: BTreeMap<RootedForest, BigRational>,
}

impl ExactForestDistribution {
    pub fn prob(&self, f: &RootedForest) -> BigRational {
        self.probs.get(f).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    pub fn total(&self) -> BigRational {
        self.probs.values().fold(BigRational::zero(), |a, p| a + p)
    }

    pub fn tv(&self, other: &Self) -> BigRational {
        let mut sum = BigRational::zero();
        for (f, p) in &self.probs {
            sum += (p - other.prob(f)).abs();
        }
        for (f, q) in &other.probs {
            if !self.probs.contains_key(f) {
                sum += q.clone();
            }
        }
        sum / BigRational::from_integer(BigInt::from(2))
    }

    /// True iff every relabeling of the vertices leaves the law unchanged.
    pub fn is_exchangeable(&self) -> bool {
        permutations(self.n).iter().all(|sigma| {
            self.probs
                .iter()
                .all(|(f, p)| &self.prob(&f.relabel(sigma)) == p)
        })
    }
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut out = vec![perm.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
        out.push(perm.clone());
    }
}

/// Enumerates the uniform attachment construction: every attachment vector
/// times every relabeling, each with weight `1 / ((n-1)^n n!)`.
pub fn ua_exact(n: usize) -> Result<ExactForestDistribution, OracleError> {
    guard(n, 2, 5)?;
    let perms = permutations(n);
    let vectors = (n as u64 - 1).pow(n as u32);
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for code in 0..vectors {
        // arrival l attaches to target[l - 1] when that is smaller than l
        let mut c = code;
        let mut target = vec![0usize; n];
        for (i, t) in target.iter_mut().enumerate() {
            let digit = (c % (n as u64 - 1)) as usize + 1;
            c /= n as u64 - 1;
            *t = if digit > i { digit + 1 } else { digit };
        }
        for sigma in &perms {
            let mut parents = vec![0usize; n];
            for l in 1..=n {
                let k = target[l - 1];
                if k < l {
                    parents[sigma[l - 1] - 1] = sigma[k - 1];
                }
            }
            *counts.entry(parents).or_default() += 1;
        }
    }
    let total = vectors * perms.len() as u64;
    let probs = counts
        .into_iter()
        .map(|(parents, c)| {
            let f = RootedForest::from_parents(parents).expect("construction yields forests");
            (f, rational(c, total))
        })
        .collect();
    Ok(ExactForestDistribution { n, probs })
}

fn from_counts(
    n: usize,
    counts: HashMap<RootedForest, u64>,
    total: u64,
) -> ExactForestDistribution {
    let probs = counts
        .into_iter()
        .map(|(f, c)| (f, rational(c, total)))
        .collect();
    ExactForestDistribution { n, probs }
}

fn attachment_vectors(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (n as u64 - 1).pow(n as u32);
    (0..total).map(move |mut c| {
        (1..=n)
            .map(|l| {
                let digit = (c % (n as u64 - 1)) as usize + 1;
                c /= n as u64 - 1;
                if digit >= l {
                    digit + 1
                } else {
                    digit
                }
            })
            .collect()
    })
}

/// Exact law of [`crate::samplers::sample_ua`]: its deterministic part applied
/// to every attachment vector and relabeling.
pub fn ua_construction_exact(n: usize) -> Result<ExactForestDistribution, OracleError> {
    guard(n, 2, 5)?;
    let perms = permutations(n);
    let mut counts: HashMap<RootedForest, u64> = HashMap::new();
    let mut total = 0;
    for u in attachment_vectors(n) {
        let u = UaVector::new(u).expect("valid vector");
        for sigma in &perms {
            let rec = ua_record(u.clone(), sigma.clone()).expect("valid permutation");
            *counts.entry(rec.forest).or_default() += 1;
            total += 1;
        }
    }
    Ok(from_counts(n, counts, total))
}

/// Exact law of [`crate::samplers::sample_backward`]. Transitions that hit an
/// already disconnected vertex change nothing, so the first-meeting order is a
/// uniform permutation and each mother is uniform among the other vertices.
pub fn backward_exact(n: usize) -> Result<ExactForestDistribution, OracleError> {
    guard(n, 2, 5)?;
    let mut counts: HashMap<RootedForest, u64> = HashMap::new();
    let mut total = 0;
    for order in permutations(n) {
        for mother in attachment_vectors(n) {
            *counts.entry(backward_outcome(&order, &mother)).or_default() += 1;
            total += 1;
        }
    }
    Ok(from_counts(n, counts, total))
}

/// Exact law of [`crate::samplers::sample_via_uniform_tree`] over every rooted
/// tree on `1..=n-1`, attachment point and relabeling.
pub fn via_tree_exact(n: usize) -> Result<ExactForestDistribution, OracleError> {
    guard(n, 2, 5)?;
    let perms = permutations(n);
    let mut counts: HashMap<RootedForest, u64> = HashMap::new();
    let mut total = 0;
    for tree in rooted_trees(n - 1)? {
        for attach_to in 1..n {
            let pre = prune_and_attach(&tree, attach_to);
            for sigma in &perms {
                *counts.entry(pre.relabel(sigma)).or_default() += 1;
                total += 1;
            }
        }
    }
    Ok(from_counts(n, counts, total))
}

/// Every rooted forest on `1..=n` with at least one edge.
pub fn nonempty_forests(n: usize) -> Vec<RootedForest> {
    let total = (n as u64 + 1).pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let parents: Vec<usize> = (0..n)
                .map(|_| {
                    let p = (code % (n as u64 + 1)) as usize;
                    code /= n as u64 + 1;
                    p
                })
                .collect();
            if parents.iter().all(|&p| p == 0) {
                return None;
            }
            RootedForest::from_parents(parents).ok()
        })
        .collect()
}

/// Transition kernel of the chain restricted to non-empty forests.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub states: Vec<RootedForest>,
    /// `rows[i][j]` is the probability of moving from state `i` to state `j`.
    pub rows: Vec<BTreeMap<usize, BigRational>>,
}

impl Kernel {
    pub fn row_sums(&self) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|r| r.values().fold(BigRational::zero(), |a, p| a + p))
            .collect()
    }
}

pub fn transition_kernel(n: usize) -> Result<Kernel, OracleError> {
    guard(n, 2, 4)?;
    let states = nonempty_forests(n);
    let index: HashMap<RootedForest, usize> = states
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    let step_prob = rational(1, (n * (n - 1)) as u64);
    let mut rows = Vec::with_capacity(states.len());
    for f in &states {
        let g = f.to_graph();
        let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
        for u in 1..=n {
            for v in (1..=n).filter(|&v| v != u) {
                let next = moran_step(&g, MoranStep { u, v })
                    .map_err(|e| OracleError::SolverDegenerate(e.to_string()))?;
                let next = validate_forest(&next)
                    .map_err(|e| OracleError::SolverDegenerate(format!("left the forests: {e}")))?;
                let j = *index
                    .get(&next)
                    .ok_or_else(|| OracleError::SolverDegenerate(format!("reached {next}")))?;
                *row.entry(j).or_insert_with(BigRational::zero) += &step_prob;
            }
        }
        rows.push(row);
    }
    Ok(Kernel { states, rows })
}

/// Solves `pi P = pi`, `sum pi = 1` by Gaussian elimination over the rationals.
pub fn stationary_solve(n: usize) -> Result<ExactForestDistribution, OracleError> {
    let kernel = transition_kernel(n)?;
    if kernel.row_sums().iter().any(|s| !s.is_one()) {
        return Err(OracleError::SolverDegenerate(
            "kernel is not stochastic".into(),
        ));
    }
    let size = kernel.states.len();
    // Equation j: sum_i pi_i (P_ij - [i = j]) = 0; last equation: sum_i pi_i = 1.
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); size + 1]; size + 1];
    for (i, row) in kernel.rows.iter().enumerate() {
        for (&j, p) in row {
            a[j][i] += p;
        }
        a[i][i] -= BigRational::one();
    }
    for entry in a[size].iter_mut() {
        *entry = BigRational::one();
    }
    let pi = solve_overdetermined(a, size)?;
    let probs = kernel
        .states
        .into_iter()
        .zip(pi)
        .filter(|(_, p)| !p.is_zero())
        .collect();
    Ok(ExactForestDistribution { n, probs })
}

/// Rows of `a` are `[coefficients | rhs]`; returns the unique solution or an error.
fn solve_overdetermined(
    mut a: Vec<Vec<BigRational>>,
    unknowns: usize,
) -> Result<Vec<BigRational>, OracleError> {
    let rows = a.len();
    let mut pivot_row = 0;
    for col in 0..unknowns {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            return Err(OracleError::SolverDegenerate(format!(
                "no pivot in column {col}"
            )));
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[pivot_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return Err(OracleError::SolverDegenerate("inconsistent system".into()));
    }
    Ok(a[..unknowns]
        .iter()
        .map(|row| row[unknowns].clone())
        .collect())
}

/// Quadratic Prüfer decoding: repeatedly join the smallest leaf to the next letter.
fn decode(word: &[usize], m: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; m + 1];
    for &x in word {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &x in word {
        let leaf = (1..=m).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (1..=m).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Parent array of the tree oriented away from `root`.
fn orient(m: usize, edges: &[(usize, usize)], root: usize) -> Vec<usize> {
    let mut parents = vec![0usize; m];
    let mut seen = vec![false; m + 1];
    seen[root] = true;
    let mut frontier = vec![root];
    while let Some(x) = frontier.pop() {
        for &(a, b) in edges {
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                parents[y - 1] = x;
                frontier.push(y);
            }
        }
    }
    parents
}

/// All `m^(m-1)` rooted trees on `1..=m`.
pub fn rooted_trees(m: usize) -> Result<Vec<RootedForest>, OracleError> {
    guard(m, 1, 7)?;
    if m == 1 {
        return Ok(vec![RootedForest::edgeless(1)]);
    }
    let words = (m as u64).pow(m as u32 - 2);
    let mut trees = Vec::with_capacity((words * m as u64) as usize);
    for mut code in 0..words {
        let word: Vec<usize> = (0..m - 2)
            .map(|_| {
                let x = (code % m as u64) as usize + 1;
                code /= m as u64;
                x
            })
            .collect();
        let edges = decode(&word, m);
        for root in 1..=m {
            let parents = orient(m, &edges, root);
            trees.push(RootedForest::from_parents(parents).expect("orientation of a tree"));
        }
    }
    Ok(trees)
}

/// `table[k]` = number of rooted trees on `1..=m` with `k` increasing edges.
pub fn count_trees_by_increasing_edges(m: usize) -> Result<Vec<u64>, OracleError> {
    guard(m, 1, 7)?;
    let mut table = vec![0u64; m];
    for tree in rooted_trees(m)? {
        let increasing = tree
            .parents()
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p != 0 && p < i + 1)
            .count();
        table[increasing] += 1;
    }
    Ok(table)
}

/// Law of a forest statistic under an exact forest law.
pub fn marginal(dist: &ExactForestDistribution, statistic: ForestStatistic) -> Pmf<BigRational> {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (f, p) in &dist.probs {
        *acc.entry(statistic.eval(&f.stats()))
            .or_insert_with(BigRational::zero) += p;
    }
    let lo = *acc.keys().next().expect("non-empty law");
    let hi = *acc.keys().last().unwrap();
    let probs = (lo..=hi)
        .map(|k| acc.get(&k).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    Pmf::new(lo as i64, probs)
}
