use serde::Serialize;

use crate::exactdist::{maxdegree_prediction, maxtree_prediction};

use super::experiment::{collect_values, summarize, Experiment, SamplerKind, Statistic};
use super::HarnessError;

#[derive(Clone, Debug, Serialize)]
pub struct ExtremesRow {
    pub n: usize,
    pub replicates: usize,
    pub mean: f64,
    pub std_error: f64,
    pub prediction: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremesReport {
    pub statistic: Statistic,
    pub rows: Vec<ExtremesRow>,
}

impl ExtremesReport {
    /// The last ratio on the grid is closer to 1 than the first one.
    pub fn trends_toward_one(&self) -> bool {
        match (self.rows.first(), self.rows.last()) {
            (Some(a), Some(b)) if self.rows.len() > 1 => {
                (b.ratio - 1.0).abs() < (a.ratio - 1.0).abs()
            }
            _ => false,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,replicates,mean,std_error,prediction,ratio\n");
        for r in &self.rows {
            out += &format!(
                "{},{},{},{},{},{}\n",
                r.n, r.replicates, r.mean, r.std_error, r.prediction, r.ratio
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Centering sequence of the largest degree or the largest tree.
pub fn prediction(statistic: Statistic, n: usize) -> Result<f64, HarnessError> {
    match statistic {
        Statistic::MaxDegree => Ok(maxdegree_prediction(n as f64)?),
        Statistic::MaxTreeSize => Ok(maxtree_prediction(n as f64)?),
        _ => Err(HarnessError::InvalidExperiment(
            "extremes scan takes max-degree or max-tree-size".into(),
        )),
    }
}

/// Mean of the extreme statistic at each `n` of the grid, and its ratio to the prediction.
pub fn extremes_scan(
    statistic: Statistic,
    n_grid: &[usize],
    replicates: usize,
    master_seed: u64,
    jobs: Option<usize>,
) -> Result<ExtremesReport, HarnessError> {
    let predictions = n_grid
        .iter()
        .map(|&n| prediction(statistic, n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(n_grid.len());
    for (i, (&n, prediction)) in n_grid.iter().zip(predictions).enumerate() {
        let e = Experiment {
            n,
            replicates,
            statistic,
            sampler: SamplerKind::Ua,
            master_seed: master_seed.wrapping_add(i as u64),
        };
        let values = collect_values(&e, jobs)?;
        let (_, _, mean, std_error) = summarize(&values);
        rows.push(ExtremesRow {
            n,
            replicates,
            mean,
            std_error,
            prediction,
            ratio: mean / prediction,
        });
    }
    Ok(ExtremesReport { statistic, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_and_statistic_checks() {
        assert!(matches!(
            extremes_scan(Statistic::MaxDegree, &[10], 5, 1, None),
            Err(HarnessError::Domain(_))
        ));
        assert!(extremes_scan(Statistic::NumTrees, &[100], 5, 1, None).is_err());
    }

    #[test]
    fn small_scan_is_sane() {
        let r = extremes_scan(Statistic::MaxTreeSize, &[200, 400], 50, 9, None).unwrap();
        assert_eq!(r.rows.len(), 2);
        for row in &r.rows {
            assert!(row.mean >= 2.0 && row.ratio > 0.3 && row.ratio < 3.0);
        }
        assert!(r.to_csv().starts_with("n,replicates"));
    }
}
