use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Scalar type of a probability table: exact rationals or floats.
pub trait Weight: Clone + Debug + PartialOrd + Num + Signed {
    fn from_u64(x: u64) -> Self;
    fn ratio(num: u64, den: u64) -> Self;
    fn from_big_ratio(num: &BigUint, den: &BigUint) -> Self;
    fn to_f64(&self) -> f64;
    /// `p/q` for rationals, decimal for floats.
    fn render(&self) -> String;
}

impl Weight for BigRational {
    fn from_u64(x: u64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }

    fn ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_big_ratio(num: &BigUint, den: &BigUint) -> Self {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Weight for f64 {
    fn from_u64(x: u64) -> Self {
        x as f64
    }

    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn from_big_ratio(num: &BigUint, den: &BigUint) -> Self {
        let r = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
        ToPrimitive::to_f64(&r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        let a = self.abs();
        if a == 0.0 || (1e-4..1e15).contains(&a) {
            format!("{self}")
        } else {
            format!("{self:e}")
        }
    }
}

/// Probability table on the integers `min, min + 1, ..., min + len - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pmf<W> {
    min: i64,
    probs: Vec<W>,
}

impl<W: Weight> Pmf<W> {
    pub fn new(min: i64, probs: Vec<W>) -> Self {
        assert!(!probs.is_empty(), "empty support");
        Self { min, probs }
    }

    pub fn point_mass(k: i64) -> Self {
        Self::new(k, vec![W::one()])
    }

    /// Normalized empirical law of integer observations.
    pub fn from_counts(min: i64, counts: &[u64]) -> Self {
        let total: u64 = counts.iter().sum();
        Self::new(min, counts.iter().map(|&c| W::ratio(c, total)).collect())
    }

    pub fn min(&self) -> i64 {
        self.min
    }

    pub fn max(&self) -> i64 {
        self.min + self.probs.len() as i64 - 1
    }

    pub fn probs(&self) -> &[W] {
        &self.probs
    }

    pub fn prob(&self, k: i64) -> W {
        if k < self.min || k > self.max() {
            W::zero()
        } else {
            self.probs[(k - self.min) as usize].clone()
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &W)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, p)| (self.min + i as i64, p))
    }

    pub fn total(&self) -> W {
        self.probs.iter().fold(W::zero(), |acc, p| acc + p.clone())
    }

    fn k_weight(k: i64) -> W {
        if k >= 0 {
            W::from_u64(k as u64)
        } else {
            -W::from_u64(k.unsigned_abs())
        }
    }

    pub fn mean(&self) -> W {
        self.iter()
            .fold(W::zero(), |acc, (k, p)| acc + Self::k_weight(k) * p.clone())
    }

    pub fn variance(&self) -> W {
        let mean = self.mean();
        self.iter().fold(W::zero(), |acc, (k, p)| {
            let d = Self::k_weight(k) - mean.clone();
            acc + d.clone() * d * p.clone()
        })
    }

    /// `E[X (X - 1) ... (X - p + 1)]`.
    pub fn factorial_moment(&self, p: u32) -> W {
        self.iter().fold(W::zero(), |acc, (k, prob)| {
            let falling = (0..p as i64).fold(W::one(), |f, j| f * Self::k_weight(k - j));
            acc + falling * prob.clone()
        })
    }

    /// `E[z^X]` for a law on the non-negative integers.
    pub fn pgf(&self, z: &W) -> W {
        assert!(self.min >= 0, "pgf needs non-negative support");
        let horner = self
            .probs
            .iter()
            .rev()
            .fold(W::zero(), |acc, p| acc * z.clone() + p.clone());
        (0..self.min).fold(horner, |acc, _| acc * z.clone())
    }

    /// `P(X <= k)`.
    pub fn cdf(&self, k: i64) -> W {
        self.iter()
            .take_while(|&(j, _)| j <= k)
            .fold(W::zero(), |acc, (_, p)| acc + p.clone())
    }

    /// `P(X >= k)`.
    pub fn tail(&self, k: i64) -> W {
        self.iter()
            .filter(|&(j, _)| j >= k)
            .fold(W::zero(), |acc, (_, p)| acc + p.clone())
    }

    /// The law with weights `k p(k) / E[X]`.
    pub fn size_biased(&self) -> Self {
        let mean = self.mean();
        let probs = self
            .iter()
            .map(|(k, p)| Self::k_weight(k) * p.clone() / mean.clone())
            .collect();
        Self::new(self.min, probs).trimmed()
    }

    /// Drops zero-probability points at both ends of the support.
    pub fn trimmed(&self) -> Self {
        let first = self.probs.iter().position(|p| !p.is_zero());
        let Some(first) = first else {
            return self.clone();
        };
        let last = self.probs.iter().rposition(|p| !p.is_zero()).unwrap();
        Self::new(self.min + first as i64, self.probs[first..=last].to_vec())
    }

    /// Total variation distance `sum |p - q| / 2`.
    pub fn tv(&self, other: &Self) -> W {
        let lo = self.min.min(other.min);
        let hi = self.max().max(other.max());
        let sum = (lo..=hi).fold(W::zero(), |acc, k| {
            acc + (self.prob(k) - other.prob(k)).abs()
        });
        sum / W::from_u64(2)
    }

    pub fn convolve(&self, other: &Self) -> Self {
        let mut probs = vec![W::zero(); self.probs.len() + other.probs.len() - 1];
        for (i, p) in self.probs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in other.probs.iter().enumerate() {
                probs[i + j] = probs[i + j].clone() + p.clone() * q.clone();
            }
        }
        Self::new(self.min + other.min, probs)
    }

    pub fn to_f64(&self) -> Pmf<f64> {
        Pmf::new(self.min, self.probs.iter().map(|p| p.to_f64()).collect())
    }

    pub fn is_normalized(&self) -> bool {
        self.total() == W::one()
    }

    /// CSV lines `k,prob`.
    pub fn to_csv(&self) -> String {
        self.iter()
            .map(|(k, p)| format!("{k},{}\n", p.render()))
            .collect()
    }
}

impl Pmf<f64> {
    /// Largest absolute difference of the distribution functions.
    pub fn ks(&self, other: &Self) -> f64 {
        let lo = self.min.min(other.min);
        let hi = self.max().max(other.max());
        let mut fa = 0.0;
        let mut fb = 0.0;
        let mut worst: f64 = 0.0;
        for k in lo..=hi {
            fa += self.prob(k);
            fb += other.prob(k);
            worst = worst.max((fa - fb).abs());
        }
        worst
    }
}

/// Accumulates `weight * pmf` into `acc`, growing the support as needed.
pub fn add_scaled<W: Weight>(acc: &mut Option<Pmf<W>>, pmf: &Pmf<W>, weight: &W) {
    let scaled = Pmf::new(
        pmf.min,
        pmf.probs
            .iter()
            .map(|p| p.clone() * weight.clone())
            .collect(),
    );
    let merged = match acc.take() {
        None => scaled,
        Some(a) => {
            let lo = a.min.min(scaled.min);
            let hi = a.max().max(scaled.max());
            Pmf::new(lo, (lo..=hi).map(|k| a.prob(k) + scaled.prob(k)).collect())
        }
    };
    *acc = Some(merged);
}
