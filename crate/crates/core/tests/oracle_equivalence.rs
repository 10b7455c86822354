use std::collections::HashMap;

use moran_forest::chain::{
    apply_moran_step, cannings_step, run_scripted, MoranStep, OffspringVector,
};
use moran_forest::exactdist::{a_table, degree_pmf, ntrees_pmf, ntrees_pmf_via_a, t1_pmf};
use moran_forest::forest::{validate_forest, DirectedGraph, ForestStatistic, RootedForest};
use moran_forest::oracle::{
    backward_exact, count_trees_by_increasing_edges, marginal, stationary_solve, transition_kernel,
    ua_construction_exact, ua_exact, via_tree_exact,
};
use moran_forest::rng::RngStream;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[test]
fn stationary_law_is_the_ua_law() {
    for n in 2..=4 {
        let pi = stationary_solve(n).unwrap();
        let ua = ua_exact(n).unwrap();
        assert!(pi.tv(&ua).is_zero(), "n = {n}");
        assert_eq!(pi, ua);
    }
}

#[test]
fn every_construction_has_the_ua_law() {
    for n in 2..=5 {
        let truth = ua_exact(n).unwrap();
        assert_eq!(ua_construction_exact(n).unwrap(), truth, "ua n = {n}");
        assert_eq!(backward_exact(n).unwrap(), truth, "backward n = {n}");
        assert_eq!(via_tree_exact(n).unwrap(), truth, "via tree n = {n}");
    }
}

#[test]
fn support_and_exchangeability() {
    for n in 2..=5 {
        let d = ua_exact(n).unwrap();
        assert_eq!(d.support_size(), (n + 1).pow(n as u32 - 1) - 1);
        assert!(d.is_exchangeable());
    }
}

#[test]
fn kernel_is_stochastic() {
    for n in 2..=4 {
        let k = transition_kernel(n).unwrap();
        assert!(k
            .row_sums()
            .iter()
            .all(|s| s == &BigRational::from_integer(1.into())));
    }
}

#[test]
fn marginals_match_exact_laws() {
    for n in 2..=5 {
        let d = ua_exact(n).unwrap();
        assert_eq!(
            marginal(&d, ForestStatistic::NumTrees),
            ntrees_pmf::<BigRational>(n).unwrap()
        );
        for v in 1..=n {
            assert_eq!(
                marginal(&d, ForestStatistic::Degree(v)),
                degree_pmf::<BigRational>(n).unwrap()
            );
            assert_eq!(
                marginal(&d, ForestStatistic::TreeSize(v)),
                t1_pmf(n).unwrap()
            );
        }
        let edges = marginal(&d, ForestStatistic::NumEdges);
        let trees = marginal(&d, ForestStatistic::NumTrees);
        for k in 0..n as i64 {
            assert_eq!(edges.prob(k), trees.prob(n as i64 - k));
        }
    }
    let n4 = marginal(&ua_exact(4).unwrap(), ForestStatistic::NumTrees);
    for k in 0..=4 {
        assert_eq!(n4.prob(k), n4.prob(4 - k));
    }
}

#[test]
fn increasing_edge_counts_by_enumeration() {
    for m in 1..=7 {
        let counted: Vec<BigUint> = count_trees_by_increasing_edges(m)
            .unwrap()
            .into_iter()
            .map(BigUint::from)
            .collect();
        assert_eq!(counted, a_table(m), "m = {m}");
    }
    for n in 2..=8 {
        assert_eq!(
            ntrees_pmf_via_a(n).unwrap(),
            ntrees_pmf::<BigRational>(n).unwrap()
        );
    }
}

#[test]
fn scripted_steps() {
    let g = DirectedGraph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
    let after = run_scripted(&g, &[MoranStep::new(3, 2, 3).unwrap()]).unwrap();
    assert_eq!(after.edges().collect::<Vec<_>>(), vec![(3, 2)]);

    let star = RootedForest::from_parents(vec![0, 1, 1, 1]).unwrap();
    let script: Vec<MoranStep> = (2..=4).map(|v| MoranStep::new(1, v, 4).unwrap()).collect();
    for start in [
        DirectedGraph::empty(4).unwrap(),
        DirectedGraph::complete(4).unwrap(),
    ] {
        let end = run_scripted(&start, &script).unwrap();
        assert_eq!(validate_forest(&end).unwrap(), star);
    }
}

#[test]
fn absorbed_once_every_vertex_was_reattached() {
    let n = 5;
    for seed in 0..100 {
        let mut rng = RngStream::new(seed);
        let mut g = DirectedGraph::complete(n).unwrap();
        let mut seen = vec![false; n + 1];
        let mut covered = false;
        for _ in 0..500 {
            let step = MoranStep::random(n, &mut rng);
            apply_moran_step(&mut g, step).unwrap();
            seen[step.v] = true;
            covered = covered || seen[1..].iter().all(|&s| s);
            if covered {
                assert!(validate_forest(&g).is_ok(), "seed {seed}");
            }
        }
        assert!(covered);
    }
}

#[test]
fn cannings_with_one_parent_of_three() {
    let f = RootedForest::from_parents(vec![0, 1, 2]).unwrap();
    let xi = OffspringVector::new(vec![3, 0, 0]).unwrap();
    let out = cannings_step(&f, &xi, &mut RngStream::new(1)).unwrap();
    assert_eq!(out.parents(), &[0, 1, 1]);
}

#[test]
fn moran_offspring_reproduces_the_kernel() {
    let n = 4;
    let kernel = transition_kernel(n).unwrap();
    let from = 17;
    let start = kernel.states[from].clone();
    let draws = 200_000;
    let mut rng = RngStream::new(8);
    let mut counts: HashMap<RootedForest, u64> = HashMap::new();
    for _ in 0..draws {
        let xi = OffspringVector::moran(n, &mut rng);
        *counts
            .entry(cannings_step(&start, &xi, &mut rng).unwrap())
            .or_default() += 1;
    }
    let mut tv = 0.0;
    for (j, state) in kernel.states.iter().enumerate() {
        let p = kernel.rows[from]
            .get(&j)
            .map_or(0.0, |p| p.to_f64().unwrap());
        let q = *counts.get(state).unwrap_or(&0) as f64 / draws as f64;
        tv += (p - q).abs() / 2.0;
    }
    assert!(tv < 0.01, "tv = {tv}");
}
