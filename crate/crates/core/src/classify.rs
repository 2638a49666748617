//! One-vs-rest linear soft-margin classifiers and stratified cross-validation.
//!
//! Each binary problem minimizes `λ/2 |w|² + 1/n Σ max(0, 1 - y (w·x + b))`
//! with `λ = 1 / (C n)` by stochastic subgradient steps of size
//! `1 / (λ (t + 1))`. The bias is an extra constant feature and is
//! regularized with the rest. Training stops when the objective changes by
//! less than `tolerance` (relative) between epochs, or after `max_epochs`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::Scalar;

/// Sparse vector of `(feature index, value)`.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Margin threshold under which a training example counts as a support vector.
pub const SV_MARGIN: f64 = 1.0 + 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig<T> {
    pub c: T,
    pub max_epochs: usize,
    pub tolerance: T,
    pub seed: u64,
}

impl<T: Scalar> Default for TrainConfig<T> {
    fn default() -> Self {
        TrainConfig { c: T::one(), max_epochs: 100, tolerance: T::lit(1e-5), seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel<T> {
    /// Category labels in ascending order; index `k` owns `weights[k]`.
    pub categories: Vec<String>,
    pub weights: Vec<Vec<T>>,
    pub bias: Vec<T>,
    pub dim: usize,
    pub config: TrainConfig<T>,
    /// Epochs run per binary classifier.
    pub epochs: Vec<usize>,
}

fn check_dims<T>(xs: &[SparseVec<T>], dim: usize) -> Result<()> {
    for x in xs {
        if let Some(&(index, _)) = x.iter().find(|(i, _)| *i >= dim) {
            return Err(Error::DimensionMismatch { index, dim });
        }
    }
    Ok(())
}

fn dot<T: Scalar>(w: &[T], x: &SparseVec<T>) -> T {
    x.iter().map(|&(i, v)| w[i] * v).sum()
}

struct Binary<T> {
    w: Vec<T>,
    b: T,
    epochs: usize,
}

fn train_binary<T: Scalar>(xs: &[SparseVec<T>], ys: &[T], dim: usize, config: &TrainConfig<T>, seed: u64) -> Binary<T> {
    let n = xs.len();
    let lambda = T::one() / (config.c * T::from_count(n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // w = scale * v, the bias lives at index dim
    let mut v = vec![T::zero(); dim + 1];
    let mut scale = T::one();
    let mut order: Vec<usize> = (0..n).collect();
    let mut t = 1usize;
    let mut prev: Option<T> = None;
    let mut epochs = 0;

    let objective = |v: &[T], scale: T| {
        let norm2: T = v.iter().map(|&a| a * a).sum::<T>() * scale * scale;
        let hinge: T = xs
            .iter()
            .zip(ys)
            .map(|(x, &y)| (T::one() - y * scale * (dot(v, x) + v[dim])).max(T::zero()))
            .sum();
        lambda / T::lit(2.0) * norm2 + hinge / T::from_count(n)
    };

    while epochs < config.max_epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let (x, y) = (&xs[i], ys[i]);
            let eta = T::one() / (lambda * T::from_count(t + 1));
            let margin = y * scale * (dot(&v, x) + v[dim]);
            scale = scale * (T::one() - eta * lambda);
            if margin < T::one() {
                let step = eta * y / scale;
                for &(j, a) in x {
                    v[j] = v[j] + step * a;
                }
                v[dim] = v[dim] + step;
            }
            if scale < T::lit(1e-9) {
                for a in v.iter_mut() {
                    *a = *a * scale;
                }
                scale = T::one();
            }
            t += 1;
        }
        epochs += 1;
        let obj = objective(&v, scale);
        if let Some(p) = prev {
            if ((p - obj).abs() / obj.max(T::epsilon())) < config.tolerance {
                break;
            }
        }
        prev = Some(obj);
    }
    let w: Vec<T> = v.iter().map(|&a| a * scale).collect();
    Binary { b: w[dim], w: w[..dim].to_vec(), epochs }
}

/// Trains one classifier per category against the rest.
pub fn train<T: Scalar, S: AsRef<str>>(
    xs: &[SparseVec<T>],
    labels: &[S],
    dim: usize,
    config: &TrainConfig<T>,
) -> Result<LinearModel<T>> {
    if xs.len() != labels.len() {
        return Err(Error::InvalidParameter(format!("{} vectors but {} labels", xs.len(), labels.len())));
    }
    if !(config.c > T::zero()) || config.max_epochs == 0 {
        return Err(Error::InvalidParameter("C must be positive and max_epochs at least 1".into()));
    }
    check_dims(xs, dim)?;
    let categories: Vec<String> =
        labels.iter().map(|l| l.as_ref().to_string()).collect::<BTreeSet<_>>().into_iter().collect();
    if categories.len() < 2 {
        return Err(Error::SingleCategory);
    }
    let binaries: Vec<Binary<T>> = categories
        .iter()
        .enumerate()
        .map(|(k, cat)| {
            let ys: Vec<T> = labels.iter().map(|l| if l.as_ref() == cat { T::one() } else { -T::one() }).collect();
            train_binary(xs, &ys, dim, config, config.seed.wrapping_add(k as u64))
        })
        .collect();
    Ok(LinearModel {
        categories,
        epochs: binaries.iter().map(|b| b.epochs).collect(),
        bias: binaries.iter().map(|b| b.b).collect(),
        weights: binaries.into_iter().map(|b| b.w).collect(),
        dim,
        config: *config,
    })
}

impl<T: Scalar> LinearModel<T> {
    pub fn scores(&self, x: &SparseVec<T>) -> Result<Vec<T>> {
        check_dims(std::slice::from_ref(x), self.dim)?;
        Ok(self.weights.iter().zip(&self.bias).map(|(w, &b)| dot(w, x) + b).collect())
    }

    /// Category with the highest score; ties go to the earlier category.
    pub fn predict(&self, x: &SparseVec<T>) -> Result<&str> {
        let scores = self.scores(x)?;
        let mut best = 0;
        for (k, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = k;
            }
        }
        Ok(&self.categories[best])
    }

    /// Training examples with margin at most `1 + 1e-6` in some binary classifier.
    pub fn support_vectors<S: AsRef<str>>(&self, xs: &[SparseVec<T>], labels: &[S]) -> usize {
        xs.iter()
            .zip(labels)
            .filter(|(x, l)| {
                self.categories.iter().enumerate().any(|(k, cat)| {
                    let y = if l.as_ref() == cat { T::one() } else { -T::one() };
                    y * (dot(&self.weights[k], x) + self.bias[k]) <= T::lit(SV_MARGIN)
                })
            })
            .count()
    }
}

pub fn predict<'m, T: Scalar>(model: &'m LinearModel<T>, x: &SparseVec<T>) -> Result<&'m str> {
    model.predict(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport<T> {
    /// Micro-averaged accuracy over all held-out predictions.
    pub accuracy: T,
    pub fold_accuracies: Vec<T>,
    /// Support vectors summed over the fold models.
    pub support_vectors: usize,
    pub correct: usize,
    pub total: usize,
}

/// Assigns every example to one of `k` folds, dealing each category's
/// shuffled examples round-robin so proportions match within one example.
/// With `k` equal to the number of examples every example is its own fold.
pub fn stratified_folds<S: AsRef<str>>(labels: &[S], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::InvalidParameter("need at least 2 folds".into()));
    }
    let categories: BTreeSet<&str> = labels.iter().map(AsRef::as_ref).collect();
    if categories.len() < 2 {
        return Err(Error::SingleCategory);
    }
    if k == labels.len() {
        return Ok((0..k).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold = vec![0; labels.len()];
    let mut next = 0;
    for cat in categories {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i].as_ref() == cat).collect();
        if members.len() < k {
            return Err(Error::CategoryTooSmall { label: cat.to_string(), size: members.len(), folds: k });
        }
        members.shuffle(&mut rng);
        for i in members {
            fold[i] = next % k;
            next += 1;
        }
    }
    Ok(fold)
}

/// Stratified `k`-fold cross-validation; folds train in parallel.
pub fn cross_validate<T: Scalar, S: AsRef<str> + Sync>(
    xs: &[SparseVec<T>],
    labels: &[S],
    dim: usize,
    k: usize,
    config: &TrainConfig<T>,
) -> Result<EvalReport<T>> {
    if xs.len() != labels.len() {
        return Err(Error::InvalidParameter(format!("{} vectors but {} labels", xs.len(), labels.len())));
    }
    check_dims(xs, dim)?;
    let fold = stratified_folds(labels, k, config.seed)?;
    let results: Vec<(usize, usize, usize)> = (0..k)
        .into_par_iter()
        .map(|f| {
            let (mut tx, mut tl, mut hx, mut hl) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for i in 0..xs.len() {
                if fold[i] == f {
                    hx.push(xs[i].clone());
                    hl.push(labels[i].as_ref());
                } else {
                    tx.push(xs[i].clone());
                    tl.push(labels[i].as_ref());
                }
            }
            let cfg = TrainConfig { seed: config.seed.wrapping_add(1000 * (f as u64 + 1)), ..*config };
            let model = train(&tx, &tl, dim, &cfg)?;
            let mut correct = 0;
            for (x, l) in hx.iter().zip(&hl) {
                if model.predict(x)? == *l {
                    correct += 1;
                }
            }
            Ok((correct, hx.len(), model.support_vectors(&tx, &tl)))
        })
        .collect::<Result<_>>()?;
    let correct = results.iter().map(|r| r.0).sum();
    let total = results.iter().map(|r| r.1).sum();
    Ok(EvalReport {
        accuracy: T::from_count(correct) / T::from_count(total),
        fold_accuracies: results.iter().map(|r| T::from_count(r.0) / T::from_count(r.1.max(1))).collect(),
        support_vectors: results.iter().map(|r| r.2).sum(),
        correct,
        total,
    })
}
