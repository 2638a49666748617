//! Discrete power-law exponent estimation for degree sequences (x_min = 1).

use crate::error::{Error, Result};
use crate::Scalar;

pub const MIN_SAMPLES: usize = 10;

const ALPHA_LO: f64 = 1.0 + 1e-9;
const ALPHA_HI: f64 = 100.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit<T> {
    /// Maximum-likelihood exponent of `p(x) = x^-alpha / zeta(alpha)`, or
    /// `+inf` for a degenerate sample.
    pub alpha: T,
    /// Closed-form approximation `1 + n / sum ln(x / (x_min - 1/2))`.
    pub approx_alpha: T,
    /// Samples used (zeros dropped).
    pub n: usize,
    pub diagnostic: Option<String>,
}

impl<T: Scalar> PowerLawFit<T> {
    pub fn is_degenerate(&self) -> bool {
        self.alpha.is_infinite()
    }
}

/// Riemann zeta for `s > 1` by Euler-Maclaurin summation.
pub fn zeta(s: f64) -> f64 {
    // B_2j / (2j)!
    const COEF: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
    ];
    const N: f64 = 12.0;
    let head: f64 = (1..N as u32).map(|k| f64::from(k).powf(-s)).sum();
    let mut total = head + N.powf(1.0 - s) / (s - 1.0) + 0.5 * N.powf(-s);
    // rising factorial s (s+1) ... (s+2j-2), times N^(-s-2j+1)
    let mut rising = s;
    let mut power = N.powf(-s - 1.0);
    for (j, c) in COEF.iter().enumerate() {
        total += c * rising * power;
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power /= N * N;
    }
    total
}

/// Fits the exponent of a discrete power law with `x_min = 1`.
///
/// The estimate maximises `-alpha * sum ln x - n ln zeta(alpha)`, which is
/// concave in `alpha`; zero degrees are excluded first. A sample whose
/// values are all equal has no finite estimate and yields `alpha = +inf`.
pub fn fit_power_law<T: Scalar>(degrees: &[u64]) -> Result<PowerLawFit<T>> {
    let xs: Vec<u64> = degrees.iter().copied().filter(|&d| d > 0).collect();
    if xs.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples { needed: MIN_SAMPLES, got: xs.len() });
    }
    let n = xs.len() as f64;
    let sum_ln: f64 = xs.iter().map(|&x| (x as f64).ln()).sum();
    let approx = 1.0 + n / xs.iter().map(|&x| (x as f64 / 0.5).ln()).sum::<f64>();

    if xs.iter().all(|&x| x == xs[0]) {
        return Ok(PowerLawFit {
            alpha: T::infinity(),
            approx_alpha: T::lit(approx),
            n: xs.len(),
            diagnostic: Some(format!("all {} samples equal {}; likelihood grows without bound", xs.len(), xs[0])),
        });
    }

    let loglik = |a: f64| -a * sum_ln - n * zeta(a).ln();
    let (mut lo, mut hi) = (ALPHA_LO, ALPHA_HI);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (loglik(x1), loglik(x2));
    while hi - lo > 1e-10 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = loglik(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = loglik(x1);
        }
    }
    let alpha = 0.5 * (lo + hi);
    let diagnostic = (ALPHA_HI - alpha < 1e-6).then(|| format!("estimate reached search bound {ALPHA_HI}"));
    Ok(PowerLawFit { alpha: T::lit(alpha), approx_alpha: T::lit(approx), n: xs.len(), diagnostic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zeta_known_values() {
        assert_relative_eq!(zeta(2.0), std::f64::consts::PI.powi(2) / 6.0, max_relative = 1e-12);
        assert_relative_eq!(zeta(4.0), std::f64::consts::PI.powi(4) / 90.0, max_relative = 1e-12);
        assert_relative_eq!(zeta(3.0), 1.2020569031595942, max_relative = 1e-12);
        assert_relative_eq!(zeta(1.5), 2.612375348685488, max_relative = 1e-10);
        assert_relative_eq!(zeta(1.01), 100.57794333849687, max_relative = 1e-9);
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            fit_power_law::<f64>(&[1, 2, 3, 0, 0]),
            Err(Error::TooFewSamples { needed: 10, got: 3 })
        ));
    }

    #[test]
    fn equal_degrees_are_degenerate() {
        let fit = fit_power_law::<f64>(&[3; 20]).unwrap();
        assert!(fit.is_degenerate());
        assert!(fit.diagnostic.is_some());
    }

    #[test]
    fn zeros_are_dropped() {
        let mut xs = vec![0u64; 50];
        xs.extend([1, 1, 1, 1, 1, 2, 2, 3, 5, 9, 1, 1]);
        let fit = fit_power_law::<f64>(&xs).unwrap();
        assert_eq!(fit.n, 12);
        assert!(fit.alpha.is_finite() && fit.alpha > 1.0);
    }
}
