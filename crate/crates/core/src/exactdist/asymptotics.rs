use std::f64::consts::E;

use super::{domain, ExactError};

/// `-1 / log(1 - 1/e)`.
pub const ALPHA: f64 = 2.180_192_256_016_155;

/// `(e/k) (1 - 1/e)^(k+1)`.
pub fn tree_tail_asymptotic(k: f64) -> Result<f64, ExactError> {
    if k < 1.0 {
        return domain(format!("k = {k} must be at least 1"));
    }
    Ok(E / k * (1.0 - 1.0 / E).powf(k + 1.0))
}

fn check_large(n: f64) -> Result<(), ExactError> {
    if n <= E.powf(E) {
        return domain(format!("n = {n} must exceed e^e"));
    }
    Ok(())
}

/// `log n / log log n + log n log log log n / (log log n)^2`.
pub fn maxdegree_prediction(n: f64) -> Result<f64, ExactError> {
    check_large(n)?;
    let l = n.ln();
    let ll = l.ln();
    let lll = ll.ln();
    Ok(l / ll + l * lll / (ll * ll))
}

/// `alpha (log n - log log n)`.
pub fn maxtree_prediction(n: f64) -> Result<f64, ExactError> {
    check_large(n)?;
    let l = n.ln();
    Ok(ALPHA * (l - l.ln()))
}
