use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::exactdist::{
    degree_limit_pmf, degree_pmf, h1_pmf, limit_tree_u_table, ntrees_pmf, t1_pmf_f64, Pmf,
};
use crate::forest::RootedForest;
use crate::rng::RngStream;
use crate::samplers::{sample_local_limit, sample_ua, vertex1_record, ForestSampler};

use super::gof::{chi_square, ks_distance, tv_distance, ChiSquareResult};
use super::HarnessError;

/// Largest `n` for which the O(n^2) exact references are computed.
pub const EXACT_REFERENCE_CAP: usize = 10_000;

/// Largest tree size kept as its own bin when comparing with the uniform-tree limit.
pub const TREE_U_BINS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    /// Number of trees.
    NumTrees,
    /// Degree of vertex 1.
    Degree,
    /// Size of a uniformly chosen tree.
    TreeUniform,
    /// Size of the tree containing vertex 1.
    Tree1,
    /// Construction steps after the root of vertex 1's tree arrived.
    H1,
    /// Largest degree.
    MaxDegree,
    /// Largest tree.
    MaxTreeSize,
    /// Degree of the focal vertex in the local limit.
    LocalDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerKind {
    Ua,
    Backward,
    UniformTree,
    LocalLimit,
}

impl SamplerKind {
    fn forest_sampler(self) -> Option<ForestSampler> {
        match self {
            Self::Ua => Some(ForestSampler::UniformAttachment),
            Self::Backward => Some(ForestSampler::Backward),
            Self::UniformTree => Some(ForestSampler::UniformTree),
            Self::LocalLimit => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Experiment {
    pub n: usize,
    pub replicates: usize,
    pub statistic: Statistic,
    pub sampler: SamplerKind,
    pub master_seed: u64,
}

impl Experiment {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: &str| Err(HarnessError::InvalidExperiment(msg.to_string()));
        if self.replicates == 0 {
            return bad("replicates must be at least 1");
        }
        let local = self.sampler == SamplerKind::LocalLimit;
        if local != (self.statistic == Statistic::LocalDegree) {
            return bad("the local-limit sampler goes with the local-degree statistic only");
        }
        if !local && self.n < 2 {
            return bad("n must be at least 2");
        }
        if self.statistic == Statistic::H1 && self.sampler != SamplerKind::Ua {
            return bad("h1 is read off the uniform attachment construction");
        }
        Ok(())
    }
}

fn forest_value(statistic: Statistic, forest: &RootedForest, rng: &mut RngStream) -> usize {
    let stats = forest.stats();
    match statistic {
        Statistic::NumTrees => stats.num_trees,
        Statistic::Degree => stats.degree(1),
        Statistic::Tree1 => stats.tree_size_of(1),
        Statistic::MaxDegree => stats.max_degree,
        Statistic::MaxTreeSize => stats.max_tree_size,
        Statistic::TreeUniform => {
            let trees = stats.trees();
            trees[rng.below(trees.len())].1
        }
        Statistic::H1 | Statistic::LocalDegree => unreachable!("handled by the caller"),
    }
}

/// Value of the statistic on replicate `index`, read from its own stream.
pub fn observe(e: &Experiment, index: u64) -> Result<usize, HarnessError> {
    let mut rng = RngStream::derive(e.master_seed, index);
    match (e.statistic, e.sampler.forest_sampler()) {
        (Statistic::LocalDegree, _) => Ok(sample_local_limit(&mut rng)?.focal_degree),
        (Statistic::H1, _) => {
            let rec = sample_ua(e.n, &mut rng)?;
            Ok(vertex1_record(&rec).root_age)
        }
        (stat, Some(sampler)) => {
            let forest = sampler.sample(e.n, &mut rng)?;
            Ok(forest_value(stat, &forest, &mut rng))
        }
        (_, None) => Err(HarnessError::InvalidExperiment("no forest sampler".into())),
    }
}

/// All replicate values in replicate order. `jobs` only sets the worker count.
pub fn collect_values(e: &Experiment, jobs: Option<usize>) -> Result<Vec<usize>, HarnessError> {
    e.validate()?;
    let work = || {
        (0..e.replicates as u64)
            .into_par_iter()
            .map(|i| observe(e, i))
            .collect::<Result<Vec<_>, _>>()
    };
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|err| HarnessError::InvalidExperiment(err.to_string()))?
            .install(work),
        None => work(),
    }
}

/// Law the statistic is compared with.
#[derive(Clone, Debug, Serialize)]
pub struct Reference {
    /// `exact` for finite-n laws, `limit` for n -> infinity laws.
    pub kind: &'static str,
    pub min: i64,
    pub probs: Vec<f64>,
    /// Mass beyond the last entry of `probs`.
    pub tail_mass: f64,
    pub mean: Option<f64>,
}

impl Reference {
    fn exact(pmf: Pmf<f64>, mean: Option<f64>) -> Self {
        let tail_mass = (1.0 - pmf.total()).max(0.0);
        Self {
            kind: "exact",
            min: pmf.min(),
            probs: pmf.probs().to_vec(),
            tail_mass,
            mean,
        }
    }

    fn limit(pmf: Pmf<f64>, tail_mass: f64, mean: Option<f64>) -> Self {
        Self {
            kind: "limit",
            min: pmf.min(),
            probs: pmf.probs().to_vec(),
            tail_mass,
            mean,
        }
    }

    pub fn max(&self) -> i64 {
        self.min + self.probs.len() as i64 - 1
    }
}

pub fn reference_for(statistic: Statistic, n: usize) -> Result<Reference, HarnessError> {
    let capped = |what: &str| -> Result<(), HarnessError> {
        if n > EXACT_REFERENCE_CAP {
            Err(HarnessError::IncompatibleReference(format!(
                "exact {what} law is only computed up to n = {EXACT_REFERENCE_CAP}"
            )))
        } else {
            Ok(())
        }
    };
    Ok(match statistic {
        Statistic::NumTrees => {
            capped("number-of-trees")?;
            Reference::exact(ntrees_pmf::<f64>(n)?, Some(n as f64 / 2.0))
        }
        Statistic::Degree => {
            capped("degree")?;
            Reference::exact(degree_pmf::<f64>(n)?, Some(1.0))
        }
        Statistic::Tree1 => {
            capped("tree-of-vertex-1")?;
            Reference::exact(t1_pmf_f64(n)?, None)
        }
        Statistic::H1 => Reference::exact(h1_pmf::<f64>(n)?, None),
        Statistic::TreeUniform => {
            let t = limit_tree_u_table(TREE_U_BINS);
            Reference::limit(t.pmf, t.tail_mass, Some(2.0))
        }
        Statistic::LocalDegree => {
            let t = degree_limit_pmf(30);
            Reference::limit(t.pmf, t.tail_mass, Some(1.0))
        }
        Statistic::MaxDegree | Statistic::MaxTreeSize => {
            return Err(HarnessError::IncompatibleReference(
                "extreme statistics have no exact law; use the extremes scan".into(),
            ))
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TestReport {
    pub experiment: Experiment,
    /// Smallest observed value; `counts[i]` counts the value `min_value + i`.
    pub min_value: usize,
    pub counts: Vec<u64>,
    pub mean: f64,
    pub std_error: f64,
    pub reference: Option<Reference>,
    pub chi_square: Option<ChiSquareResult>,
    pub tv: Option<f64>,
    pub ks: Option<f64>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl TestReport {
    pub fn empirical(&self) -> Pmf<f64> {
        Pmf::from_counts(self.min_value as i64, &self.counts)
    }

    /// Empirical frequency of the value `k`.
    pub fn freq(&self, k: usize) -> f64 {
        let total: u64 = self.counts.iter().sum();
        if k < self.min_value || k >= self.min_value + self.counts.len() {
            return 0.0;
        }
        self.counts[k - self.min_value] as f64 / total as f64
    }

    pub fn passes(&self, alpha: f64) -> bool {
        self.chi_square.as_ref().is_none_or(|c| c.p_value > alpha)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `k,count,empirical,reference` rows, then `metric,value` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,count,empirical,reference\n");
        let total: u64 = self.counts.iter().sum();
        for (i, &c) in self.counts.iter().enumerate() {
            let k = self.min_value + i;
            let reference = self
                .reference
                .as_ref()
                .map(|r| {
                    let j = k as i64 - r.min;
                    if j >= 0 && (j as usize) < r.probs.len() {
                        r.probs[j as usize].to_string()
                    } else {
                        String::new()
                    }
                })
                .unwrap_or_default();
            out += &format!("{k},{c},{},{reference}\n", c as f64 / total as f64);
        }
        out += "\nmetric,value\n";
        out += &format!("mean,{}\nstd_error,{}\n", self.mean, self.std_error);
        if let Some(c) = &self.chi_square {
            out += &format!(
                "chi_square,{}\ndf,{}\np_value,{}\n",
                c.statistic, c.df, c.p_value
            );
        }
        if let Some(tv) = self.tv {
            out += &format!("tv,{tv}\n");
        }
        if let Some(ks) = self.ks {
            out += &format!("ks,{ks}\n");
        }
        out
    }
}

pub(crate) fn summarize(values: &[usize]) -> (usize, Vec<u64>, f64, f64) {
    let lo = *values.iter().min().expect("at least one replicate");
    let hi = *values.iter().max().unwrap();
    let mut counts = vec![0u64; hi - lo + 1];
    for &v in values {
        counts[v - lo] += 1;
    }
    let r = values.len() as f64;
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / r;
    let var = if values.len() > 1 {
        values
            .iter()
            .map(|&v| (v as f64 - mean).powi(2))
            .sum::<f64>()
            / (r - 1.0)
    } else {
        0.0
    };
    (lo, counts, mean, (var / r).sqrt())
}

/// Bins `reference.min ..= reference.max` plus one bin above; observations
/// below the reference support land in the first bin.
fn binned(values_min: usize, counts: &[u64], reference: &Reference) -> (Vec<u64>, Vec<f64>) {
    let width = reference.probs.len();
    let mut observed = vec![0u64; width + 1];
    for (i, &c) in counts.iter().enumerate() {
        let j = (values_min + i) as i64 - reference.min;
        let slot = if j < 0 { 0 } else { (j as usize).min(width) };
        observed[slot] += c;
    }
    let mut probs = reference.probs.clone();
    probs.push(reference.tail_mass);
    (observed, probs)
}

pub fn compare(e: &Experiment, values: &[usize], reference: Option<Reference>) -> TestReport {
    let (min_value, counts, mean, std_error) = summarize(values);
    let (chi, tv, ks) = match &reference {
        Some(r) => {
            let (observed, probs) = binned(min_value, &counts, r);
            let total = values.len() as f64;
            let emp: Vec<f64> = observed.iter().map(|&c| c as f64 / total).collect();
            (
                Some(chi_square(&observed, &probs)),
                Some(tv_distance(&emp, &probs)),
                Some(ks_distance(&emp, &probs)),
            )
        }
        None => (None, None, None),
    };
    TestReport {
        experiment: *e,
        min_value,
        counts,
        mean,
        std_error,
        reference,
        chi_square: chi,
        tv,
        ks,
        runtime: Duration::ZERO,
    }
}

pub fn run_with_jobs(e: &Experiment, jobs: Option<usize>) -> Result<TestReport, HarnessError> {
    let start = Instant::now();
    e.validate()?;
    let reference = reference_for(e.statistic, e.n)?;
    let values = collect_values(e, jobs)?;
    let mut report = compare(e, &values, Some(reference));
    report.runtime = start.elapsed();
    Ok(report)
}

pub fn run(e: &Experiment) -> Result<TestReport, HarnessError> {
    run_with_jobs(e, None)
}

/// Size of a uniformly chosen tree, compared with its limit law on `k <= 20`.
pub fn uniform_tree_statistic(e: &Experiment) -> Result<TestReport, HarnessError> {
    if e.statistic != Statistic::TreeUniform {
        return Err(HarnessError::InvalidExperiment(
            "uniform_tree_statistic needs the tree-uniform statistic".into(),
        ));
    }
    run(e)
}

/// Per-size comparison of `P(T1 = k)` with `(k/2) P(TU = k)` from two independent runs.
#[derive(Clone, Debug, Serialize)]
pub struct SizeBiasRow {
    pub k: usize,
    pub tree1: f64,
    pub predicted: f64,
    pub z: f64,
}

pub fn size_biasing_check(
    n: usize,
    replicates: usize,
    master_seed: u64,
    kmax: usize,
    jobs: Option<usize>,
) -> Result<Vec<SizeBiasRow>, HarnessError> {
    let base = Experiment {
        n,
        replicates,
        statistic: Statistic::Tree1,
        sampler: SamplerKind::Ua,
        master_seed,
    };
    let t1 = compare(&base, &collect_values(&base, jobs)?, None);
    let tu_exp = Experiment {
        statistic: Statistic::TreeUniform,
        master_seed: master_seed.wrapping_add(1),
        ..base
    };
    let tu = compare(&tu_exp, &collect_values(&tu_exp, jobs)?, None);
    Ok(size_biasing_rows(&t1, &tu, kmax))
}

/// The same comparison from two finished runs, one of each statistic.
pub fn size_biasing_rows(t1: &TestReport, tu: &TestReport, kmax: usize) -> Vec<SizeBiasRow> {
    let r1 = t1.experiment.replicates as f64;
    let ru = tu.experiment.replicates as f64;
    (1..=kmax)
        .map(|k| {
            let a = t1.freq(k);
            let b = tu.freq(k);
            let half = k as f64 / 2.0;
            let predicted = half * b;
            let var = a * (1.0 - a) / r1 + half * half * b * (1.0 - b) / ru;
            let z = if var > 0.0 {
                (a - predicted) / var.sqrt()
            } else {
                0.0
            };
            SizeBiasRow {
                k,
                tree1: a,
                predicted,
                z,
            }
        })
        .collect()
}
