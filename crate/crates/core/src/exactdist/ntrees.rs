use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use statrs::distribution::{ContinuousCDF, Normal};

use super::{check_n, ExactError, Pmf, Weight};

/// Law of the number of trees: coefficients of `prod_{k=1}^{n-1} (1 + k/(n-1) (z - 1))`.
pub fn ntrees_pmf<W: Weight>(n: usize) -> Result<Pmf<W>, ExactError> {
    check_n(n)?;
    let m = (n - 1) as u64;
    let mut poly = vec![W::one()];
    for k in 1..=m {
        let b = W::ratio(k, m);
        let a = W::one() - b.clone();
        let mut next = vec![W::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] = next[i].clone() + a.clone() * c.clone();
            next[i + 1] = b.clone() * c.clone();
        }
        poly = next;
    }
    Ok(Pmf::new(0, poly).trimmed())
}

/// Number of rooted trees on `1..=m` with `k` increasing edges, `k = 0..m-1`:
/// coefficients of `prod_{j=1}^{m-1} (m - j + j z)`.
pub fn a_table(m: usize) -> Vec<BigUint> {
    assert!(m >= 1, "a_table needs m >= 1");
    let mut poly = vec![BigUint::one()];
    for j in 1..m {
        let a = BigUint::from(m - j);
        let b = BigUint::from(j);
        let mut next = vec![BigUint::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += &a * c;
            next[i + 1] += &b * c;
        }
        poly = next;
    }
    poly
}

/// `P(N_n = k) = a(n-1, k-1) / (n-1)^(n-2)`.
pub fn ntrees_pmf_via_a(n: usize) -> Result<Pmf<BigRational>, ExactError> {
    check_n(n)?;
    let table = a_table(n - 1);
    let den = BigUint::from(n - 1).pow((n - 2) as u32);
    let probs = table
        .iter()
        .map(|a| BigRational::from_big_ratio(a, &den))
        .collect();
    Ok(Pmf::new(1, probs).trimmed())
}

/// Law of `(N_n - n/2) / sqrt(n/6)` as atoms `(x, p)` in increasing `x`.
#[derive(Clone, Debug)]
pub struct NormalizedLaw {
    pub atoms: Vec<(f64, f64)>,
}

impl NormalizedLaw {
    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(x, p)| x * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.atoms.iter().map(|&(x, p)| (x - m) * (x - m) * p).sum()
    }

    /// Kolmogorov distance to the standard normal, checking both sides of every jump.
    pub fn ks_to_standard_normal(&self) -> f64 {
        let normal = Normal::standard();
        let mut below = 0.0;
        let mut worst: f64 = 0.0;
        for &(x, p) in &self.atoms {
            let phi = normal.cdf(x);
            worst = worst.max((below - phi).abs());
            below += p;
            worst = worst.max((below - phi).abs());
        }
        worst
    }
}

pub fn clt_normalized_dist(n: usize) -> Result<NormalizedLaw, ExactError> {
    let pmf = ntrees_pmf::<f64>(n)?;
    let centre = n as f64 / 2.0;
    let scale = (n as f64 / 6.0).sqrt();
    let atoms = pmf
        .iter()
        .map(|(k, &p)| ((k as f64 - centre) / scale, p))
        .collect();
    Ok(NormalizedLaw { atoms })
}
