use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson goodness of fit after pooling.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    /// Number of bins after pooling.
    pub bins: usize,
}

/// Merges adjacent bins until each expected count reaches `min_expected`;
/// a short final run is folded into its left neighbour.
pub fn pool_bins(
    observed: &[u64],
    probs: &[f64],
    total: u64,
    min_expected: f64,
) -> Vec<(u64, f64)> {
    assert_eq!(observed.len(), probs.len());
    let mut pooled: Vec<(u64, f64)> = Vec::new();
    let mut cur = (0u64, 0.0f64);
    for (&o, &p) in observed.iter().zip(probs) {
        cur.0 += o;
        cur.1 += p * total as f64;
        if cur.1 >= min_expected {
            pooled.push(cur);
            cur = (0, 0.0);
        }
    }
    if cur.0 > 0 || cur.1 > 0.0 {
        match pooled.last_mut() {
            Some(last) => {
                last.0 += cur.0;
                last.1 += cur.1;
            }
            None => pooled.push(cur),
        }
    }
    pooled
}

/// Chi-square test of observed bin counts against bin probabilities summing to one.
pub fn chi_square(observed: &[u64], probs: &[f64]) -> ChiSquareResult {
    let total: u64 = observed.iter().sum();
    let impossible = observed.iter().zip(probs).any(|(&o, &p)| o > 0 && p <= 0.0);
    let pooled = pool_bins(observed, probs, total, 5.0);
    let mut statistic: f64 = pooled
        .iter()
        .map(|&(o, e)| {
            if e > 0.0 {
                (o as f64 - e).powi(2) / e
            } else if o > 0 {
                f64::INFINITY
            } else {
                0.0
            }
        })
        .sum();
    if impossible {
        statistic = f64::INFINITY;
    }
    let df = pooled.len().saturating_sub(1);
    let p_value = if statistic.is_infinite() {
        0.0
    } else if df == 0 {
        1.0
    } else {
        ChiSquared::new(df as f64)
            .expect("positive df")
            .sf(statistic)
    };
    ChiSquareResult {
        statistic,
        df,
        p_value,
        bins: pooled.len(),
    }
}

/// `sum |p - q| / 2` over aligned bins.
pub fn tv_distance(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    0.5 * (0..len).map(|i| (get(p, i) - get(q, i)).abs()).sum::<f64>()
}

/// Largest gap between the distribution functions of aligned bins.
pub fn ks_distance(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    let (mut fp, mut fq, mut worst) = (0.0, 0.0, 0.0f64);
    for i in 0..len {
        fp += get(p, i);
        fq += get(q, i);
        worst = worst.max((fp - fq).abs());
    }
    worst
}
