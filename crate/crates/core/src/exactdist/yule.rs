use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_n, domain, ExactError, Pmf, Weight};

/// `Plain` jumps `i -> i+1` with probability `i/(n-1)`; `SizeBiased` with `(i+1)/n`.
/// Both start at 1 and stop at `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YuleVariant {
    Plain,
    SizeBiased,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YuleChainLaw {
    pub n: usize,
    pub variant: YuleVariant,
}

/// Law of the chain at time `ell` as integer counts over `base^ell`;
/// `counts[i - 1]` belongs to the value `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YuleRow {
    pub ell: usize,
    pub counts: Vec<BigUint>,
    pub base: usize,
}

impl YuleRow {
    pub fn denominator(&self) -> BigUint {
        BigUint::from(self.base).pow(self.ell as u32)
    }

    pub fn pmf(&self) -> Pmf<BigRational> {
        let den = self.denominator();
        let probs = self
            .counts
            .iter()
            .map(|c| BigRational::from_big_ratio(c, &den))
            .collect();
        Pmf::new(1, probs).trimmed()
    }
}

pub fn yule_law(n: usize, variant: YuleVariant) -> Result<YuleChainLaw, ExactError> {
    check_n(n)?;
    Ok(YuleChainLaw { n, variant })
}

impl YuleChainLaw {
    fn base(&self) -> usize {
        match self.variant {
            YuleVariant::Plain => self.n - 1,
            YuleVariant::SizeBiased => self.n,
        }
    }

    /// Weight of the jump out of state `i` (over `base`).
    fn up(&self, i: usize) -> usize {
        if i >= self.n {
            return 0;
        }
        match self.variant {
            YuleVariant::Plain => i,
            YuleVariant::SizeBiased => i + 1,
        }
    }

    /// Rows `ell = 0, 1, ..., n-1`, one at a time.
    pub fn rows(&self) -> impl Iterator<Item = YuleRow> + '_ {
        let base = self.base();
        let mut row = YuleRow {
            ell: 0,
            counts: vec![BigUint::one()],
            base,
        };
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = row.clone();
            if row.ell + 1 >= self.n {
                done = true;
            } else {
                let mut next = vec![BigUint::zero(); (row.counts.len() + 1).min(self.n)];
                for (idx, c) in row.counts.iter().enumerate() {
                    let i = idx + 1;
                    let up = self.up(i);
                    if up > 0 {
                        next[idx + 1] += c * BigUint::from(up);
                    }
                    next[idx] += c * BigUint::from(base - up);
                }
                row = YuleRow {
                    ell: row.ell + 1,
                    counts: next,
                    base,
                };
            }
            Some(out)
        })
    }

    pub fn row_at(&self, ell: usize) -> Result<YuleRow, ExactError> {
        if ell >= self.n {
            return domain(format!("ell = {ell} exceeds n - 1 = {}", self.n - 1));
        }
        Ok(self.rows().nth(ell).unwrap())
    }

    pub fn pmf_at(&self, ell: usize) -> Result<Pmf<BigRational>, ExactError> {
        Ok(self.row_at(ell)?.pmf())
    }

    /// Float forward recursion, full support.
    pub fn pmf_at_f64(&self, ell: usize) -> Result<Pmf<f64>, ExactError> {
        if ell >= self.n {
            return domain(format!("ell = {ell} exceeds n - 1 = {}", self.n - 1));
        }
        let base = self.base() as f64;
        let mut row = vec![1.0];
        for _ in 0..ell {
            let mut next = vec![0.0; (row.len() + 1).min(self.n)];
            for (idx, &p) in row.iter().enumerate() {
                let up = self.up(idx + 1) as f64 / base;
                if up > 0.0 {
                    next[idx + 1] += p * up;
                }
                next[idx] += p * (1.0 - up);
            }
            row = next;
        }
        Ok(Pmf::new(1, row))
    }
}

/// Float recursion on `1..=k` plus an absorbing state for `> k`; calls
/// `visit(ell, P(Upsilon_n(ell) > k))` for `ell = 0..=last`.
fn plain_tail_scan(n: usize, k: usize, last: usize, mut visit: impl FnMut(usize, f64)) {
    let m = (n - 1) as f64;
    let mut row = vec![0.0; k + 1];
    let mut above = 0.0;
    if k == 0 {
        above = 1.0;
    } else {
        row[1] = 1.0;
    }
    for ell in 0..=last {
        visit(ell, above);
        for i in (1..=k).rev() {
            let up = (i as f64 / m).min(1.0);
            let moved = row[i] * up;
            row[i] -= moved;
            if i == k {
                above += moved;
            } else {
                row[i + 1] += moved;
            }
        }
    }
}

/// `P(Upsilon_n(ell) > k)`.
pub fn yule_tail_f64(n: usize, ell: usize, k: usize) -> Result<f64, ExactError> {
    check_n(n)?;
    if ell >= n {
        return domain(format!("ell = {ell} exceeds n - 1 = {}", n - 1));
    }
    let mut out = 0.0;
    plain_tail_scan(n, k, ell, |l, p| {
        if l == ell {
            out = p;
        }
    });
    Ok(out)
}

/// `P(Upsilon_n(L) > k)` with `L` uniform on `0..=n-1`.
pub fn yule_mixture_tail(n: usize, k: usize) -> Result<f64, ExactError> {
    check_n(n)?;
    let mut sum = 0.0;
    plain_tail_scan(n, k, n - 1, |_, p| sum += p);
    Ok(sum / n as f64)
}

/// `P(Y(t) > k) = (1 - e^{-t})^k` for the rate-one Yule process started at 1.
pub fn yule_continuous_tail(t: f64, k: usize) -> f64 {
    if t <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (-(-t).exp_m1()).powi(k as i32)
}

/// `-((n-1)/k) log(1 - k/(n-1))`.
pub fn lambda_n(n: usize, k: usize) -> Result<f64, ExactError> {
    if k == 0 || k + 1 >= n {
        return domain(format!(
            "lambda_n needs 1 <= k < n - 1, got n = {n}, k = {k}"
        ));
    }
    let m = (n - 1) as f64;
    Ok(-(m / k as f64) * (-(k as f64) / m).ln_1p())
}

/// Continuous Yule bounds `(lower, upper)` on `P(Upsilon_n(ell) > k)`.
pub fn yule_sandwich(n: usize, ell: usize, k: usize) -> Result<(f64, f64), ExactError> {
    check_n(n)?;
    if k + 1 >= n {
        return domain(format!("k = {k} must be below n - 1 = {}", n - 1));
    }
    if ell >= n {
        return domain(format!("ell = {ell} exceeds n - 1 = {}", n - 1));
    }
    if k == 0 {
        return Ok((1.0, 1.0));
    }
    let m = (n - 1) as f64;
    let t_low = ((ell as f64 - k as f64 + 1.0) / m).max(0.0);
    let t_high = lambda_n(n, k)? * ell as f64 / m;
    Ok((
        yule_continuous_tail(t_low, k),
        yule_continuous_tail(t_high, k),
    ))
}
