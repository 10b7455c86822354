use std::f64::consts::E;

use super::{check_n, domain, ExactError, LimitTable, Pmf, Weight};

/// `Binomial(trials, 1/(n-1))` accumulated into `acc` with weight `w`, shifted by `shift`.
fn add_binomial<W: Weight>(acc: &mut [W], shift: usize, trials: usize, n: usize, w: &W) {
    let m = (n - 1) as u64;
    if m == 1 {
        acc[shift + trials] = acc[shift + trials].clone() + w.clone();
        return;
    }
    let stay = W::ratio(m - 1, m);
    let mut term = (0..trials).fold(w.clone(), |t, _| t * stay.clone());
    for j in 0..=trials {
        acc[shift + j] = acc[shift + j].clone() + term.clone();
        if j < trials {
            term = term * W::ratio((trials - j) as u64, (j as u64 + 1) * (m - 1));
            if term.is_zero() {
                break;
            }
        }
    }
}

/// Law of the degree of a fixed vertex: with `L` uniform on `0..=n-1`, a
/// `Bernoulli(1 - L/(n-1))` in-degree plus an independent `Binomial(L, 1/(n-1))`
/// out-degree.
pub fn degree_pmf<W: Weight>(n: usize) -> Result<Pmf<W>, ExactError> {
    check_n(n)?;
    let m = (n - 1) as u64;
    let mut acc = vec![W::zero(); n + 1];
    for l in 0..n {
        let mix = W::ratio(1, n as u64);
        let has_parent = W::ratio(m - l as u64, m);
        let no_parent = W::ratio(l as u64, m);
        add_binomial(&mut acc, 0, l, n, &(mix.clone() * no_parent));
        add_binomial(&mut acc, 1, l, n, &(mix * has_parent));
    }
    Ok(Pmf::new(0, acc).trimmed())
}

/// Closed form of the degree generating function.
pub fn degree_pgf_closed_form(n: usize, z: f64) -> f64 {
    let nf = n as f64;
    if z == 1.0 {
        return 1.0;
    }
    let inner = (1.0 + (z - 1.0) / (nf - 1.0)).powi(n as i32) - 1.0;
    2.0 * (1.0 - 1.0 / nf) * inner / (z - 1.0) - 1.0
}

/// `sum_{j > k} 1/j!`, summed from the small end.
fn factorial_tail(k: usize) -> f64 {
    let mut first = 1.0;
    for j in 1..=k + 1 {
        first /= j as f64;
    }
    let mut terms = vec![first];
    let mut j = k + 2;
    while *terms.last().unwrap() > first * 1e-20 {
        terms.push(terms.last().unwrap() / j as f64);
        j += 1;
    }
    terms.iter().rev().sum()
}

/// `P(D = k)` for the limiting degree.
pub fn degree_limit_prob(k: usize) -> f64 {
    if k == 0 {
        1.0 - 2.0 / E
    } else {
        2.0 / E * factorial_tail(k)
    }
}

/// `P(D >= k) = (2/e) sum_{l > k} (l - k) / l!` for `k >= 1`.
pub fn degree_limit_tail(k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut inv_fact = 1.0;
    for j in 1..=k {
        inv_fact /= j as f64;
    }
    let mut terms = Vec::new();
    let mut l = k + 1;
    loop {
        inv_fact /= l as f64;
        let t = (l - k) as f64 * inv_fact;
        terms.push(t);
        if t < terms[0] * 1e-20 {
            break;
        }
        l += 1;
    }
    2.0 / E * terms.iter().rev().sum::<f64>()
}

pub fn degree_limit_pmf(kmax: usize) -> LimitTable {
    let probs = (0..=kmax).map(degree_limit_prob).collect();
    LimitTable::new(Pmf::new(0, probs), degree_limit_tail(kmax + 1))
}

/// Bounds `(2/e)/(k+1)! <= P(D >= k) <= (1 + 1/k)^2 (2/e)/(k+1)!`.
pub fn degree_tail_bounds(k: usize) -> Result<(f64, f64), ExactError> {
    if k < 1 {
        return domain("tail bounds need k >= 1");
    }
    let mut lower = 2.0 / E;
    for j in 1..=k + 1 {
        lower /= j as f64;
    }
    let c = 1.0 + 1.0 / k as f64;
    Ok((lower, c * c * lower))
}
