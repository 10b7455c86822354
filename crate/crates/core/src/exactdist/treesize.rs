use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::quadrature::integrate;
use super::yule::{yule_law, YuleVariant};
use super::{check_n, domain, ExactError, LimitTable, Pmf, Weight};

/// Law of the number of construction steps after the arrival of the root of
/// vertex 1's tree: `P(H = h) = h/(n(n-1)) (1 + 1/(n-1))^h`, `h = 0..n-1`.
pub fn h1_pmf<W: Weight>(n: usize) -> Result<Pmf<W>, ExactError> {
    check_n(n)?;
    let (nn, m) = (n as u64, n as u64 - 1);
    let ratio = W::ratio(nn, m);
    let mut power = W::one();
    let mut probs = Vec::with_capacity(n);
    for h in 0..nn {
        probs.push(W::ratio(h, nn * m) * power.clone());
        power = power * ratio.clone();
    }
    Ok(Pmf::new(0, probs).trimmed())
}

/// Law of the tree size of vertex 1 given `H = h`.
pub fn t1_conditional(n: usize, h: usize) -> Result<Pmf<BigRational>, ExactError> {
    check_n(n)?;
    if h >= n {
        return domain(format!("h = {h} must be below n = {n}"));
    }
    yule_law(n, YuleVariant::SizeBiased)?.pmf_at(h)
}

/// Law of the size of the tree containing vertex 1, mixing over `H`.
pub fn t1_pmf(n: usize) -> Result<Pmf<BigRational>, ExactError> {
    let law = yule_law(n, YuleVariant::SizeBiased)?;
    // P(H = h) P(Y*(h) = i) = h c_h(i) (n-1)^(n-1-h) / (n (n-1)^n)
    let m = BigUint::from(n - 1);
    let mut acc = vec![BigUint::zero(); n];
    for row in law.rows() {
        let scale = BigUint::from(row.ell) * m.pow((n - 1 - row.ell) as u32);
        for (idx, c) in row.counts.iter().enumerate() {
            acc[idx] += c * &scale;
        }
    }
    let den = BigUint::from(n) * m.pow(n as u32);
    let probs = acc
        .iter()
        .map(|a| BigRational::from_big_ratio(a, &den))
        .collect();
    Ok(Pmf::new(1, probs).trimmed())
}

pub fn t1_pmf_f64(n: usize) -> Result<Pmf<f64>, ExactError> {
    let h = h1_pmf::<f64>(n)?;
    let nf = n as f64;
    let mut row = vec![1.0];
    let mut acc = vec![0.0; n];
    for ell in 0..n {
        let w = h.prob(ell as i64);
        for (i, &p) in row.iter().enumerate() {
            acc[i] += w * p;
        }
        if ell + 1 < n {
            let mut next = vec![0.0; (row.len() + 1).min(n)];
            for (idx, &p) in row.iter().enumerate() {
                let up = ((idx + 2) as f64 / nf).min(1.0);
                if up > 0.0 && idx + 1 < next.len() {
                    next[idx + 1] += p * up;
                }
                next[idx] += p * (1.0 - up);
            }
            row = next;
        }
    }
    Ok(Pmf::new(1, acc).trimmed())
}

/// `int_0^1 x e^{-a x} dx`.
fn moment_exp(a: f64) -> f64 {
    (1.0 - (1.0 + a) * (-a).exp()) / (a * a)
}

fn y(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// `2 int_0^1 x e^{-x} (1 - e^{-x})^{k-1} dx`: the limiting size of a uniformly chosen tree.
pub fn limit_tree_u_pmf(k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if k <= 8 {
        let mut binom = 1.0;
        let mut sum = 0.0;
        for j in 0..k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binom * moment_exp((j + 1) as f64);
            binom = binom * (k - 1 - j) as f64 / (j + 1) as f64;
        }
        2.0 * sum
    } else {
        2.0 * integrate(
            |x| x * (-x).exp() * y(x).powi(k as i32 - 1),
            0.0,
            1.0,
            1e-300,
        )
    }
}

/// `k int_0^1 x e^{-x} (1 - e^{-x})^{k-1} dx`: the limiting size of the tree of vertex 1.
pub fn limit_tree1_pmf(k: usize) -> f64 {
    k as f64 / 2.0 * limit_tree_u_pmf(k)
}

/// `P(T^U > k) = 2 int_0^1 x (1 - e^{-x})^k dx`.
pub fn limit_tree_u_tail(k: usize) -> f64 {
    2.0 * integrate(|x| x * y(x).powi(k as i32), 0.0, 1.0, 1e-300)
}

/// `P(T^(1) > k) = int_0^1 x ((k+1) y^k + y^(k+1) e^x) dx` with `y = 1 - e^{-x}`.
pub fn limit_tree1_tail(k: usize) -> f64 {
    let kk = k as i32;
    integrate(
        |x| {
            let yx = y(x);
            x * ((k + 1) as f64 * yx.powi(kk) + yx.powi(kk + 1) * x.exp())
        },
        0.0,
        1.0,
        1e-300,
    )
}

pub fn limit_tree_u_table(kmax: usize) -> LimitTable {
    let probs = (0..=kmax).map(limit_tree_u_pmf).collect();
    LimitTable::new(Pmf::new(0, probs).trimmed(), limit_tree_u_tail(kmax))
}

pub fn limit_tree1_table(kmax: usize) -> LimitTable {
    let probs = (0..=kmax).map(limit_tree1_pmf).collect();
    LimitTable::new(Pmf::new(0, probs).trimmed(), limit_tree1_tail(kmax))
}
