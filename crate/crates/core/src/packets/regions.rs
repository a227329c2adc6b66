use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Disjoint, sorted closed subintervals of `[0, π]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaIntervals {
    pub intervals: Vec<[f64; 2]>,
}

impl ThetaIntervals {
    pub fn contains(&self, theta: f64) -> bool {
        self.intervals.iter().any(|[lo, hi]| (*lo..=*hi).contains(&theta))
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|[lo, hi]| hi - lo).sum()
    }

    /// `Θ ↦ π − Θ`.
    pub fn mirrored(&self) -> Self {
        let mut intervals: Vec<[f64; 2]> =
            self.intervals.iter().map(|[lo, hi]| [PI - hi, PI - lo]).collect();
        intervals.reverse();
        Self { intervals }
    }
}

/// `Υ₁/(−4λ²)` for `e^{λ cos Θ}`, written as `cos 2Θ − λ cos Θ sin²Θ` to stay
/// accurate near the poles.
fn h(lambda: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    (2.0 * theta).cos() - lambda * c * s * s
}

const THETA_TOL: f64 = 1e-14;

fn bisect(lambda: f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_sign = h(lambda, lo) > 0.0;
    while hi - lo > THETA_TOL {
        let mid = 0.5 * (lo + hi);
        if (h(lambda, mid) > 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Polar angles `Θ` between `r̂` and `n` where `Υ₁ < 0` for `Φ = e^{λ cos Θ}`.
pub fn negative_upsilon_region(lambda: f64) -> Result<ThetaIntervals> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain(format!("λ must be finite and non-zero, got {lambda}")));
    }
    // h(ξ) = λξ³ + 2ξ² − λξ − 1 is monotone between the zeros of 3λξ² + 4ξ − λ
    let disc = (16.0 + 12.0 * lambda * lambda).sqrt();
    let mut cuts = vec![0.0, PI];
    for xi in [(-4.0 + disc) / (6.0 * lambda), (-4.0 - disc) / (6.0 * lambda)] {
        if xi.abs() < 1.0 {
            cuts.push(xi.acos());
        }
    }
    cuts.sort_by(f64::total_cmp);
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        if (h(lambda, w[0]) > 0.0) != (h(lambda, w[1]) > 0.0) {
            roots.push(bisect(lambda, w[0], w[1]));
        }
    }
    let mut edges = vec![0.0];
    edges.extend(roots);
    edges.push(PI);
    let intervals = edges
        .windows(2)
        .filter(|w| h(lambda, 0.5 * (w[0] + w[1])) > 0.0)
        .map(|w| [w[0], w[1]])
        .collect();
    Ok(ThetaIntervals { intervals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packets::upsilon1_xi;

    #[test]
    fn small_lambda_limit() {
        let r = negative_upsilon_region(1e-9).unwrap();
        assert_eq!(r.intervals.len(), 2);
        assert!(r.intervals[0][0] == 0.0 && (r.intervals[0][1] - PI / 4.0).abs() < 1e-8);
        assert!((r.intervals[1][0] - 3.0 * PI / 4.0).abs() < 1e-8 && r.intervals[1][1] == PI);
    }

    #[test]
    fn large_lambda_limit() {
        let lambda = 1e6;
        let r = negative_upsilon_region(lambda).unwrap();
        assert_eq!(r.intervals.len(), 2);
        let forward = r.intervals[0][1];
        assert!((forward * lambda.sqrt() - 1.0).abs() < 1e-5, "{forward}");
        assert!((r.intervals[1][0] - (PI / 2.0 + 1.0 / lambda)).abs() < 1e-10);
    }

    #[test]
    fn backward_quarter_always_included() {
        for lambda in [0.01, 0.5, 3.0, 40.0, 1e4] {
            let r = negative_upsilon_region(lambda).unwrap();
            assert!(r.contains(3.0 * PI / 4.0) && r.contains(PI));
        }
    }

    #[test]
    fn negative_lambda_mirrors() {
        for lambda in [0.2, 2.5, 100.0] {
            let pos = negative_upsilon_region(lambda).unwrap();
            let neg = negative_upsilon_region(-lambda).unwrap();
            assert_eq!(neg.intervals.len(), pos.intervals.len());
            for (a, b) in neg.intervals.iter().zip(&pos.mirrored().intervals) {
                assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sign_agrees_with_closed_form() {
        for lambda in [-7.0, -0.3, 0.4, 2.0, 15.0] {
            let r = negative_upsilon_region(lambda).unwrap();
            for i in 1..400 {
                let t = PI * i as f64 / 400.0;
                let u = upsilon1_xi(lambda, t.cos()).unwrap();
                let near_edge = r.intervals.iter().flatten().any(|e| (e - t).abs() < 1e-9);
                if !near_edge {
                    assert_eq!(u < 0.0, r.contains(t), "λ={lambda} Θ={t}");
                }
            }
        }
    }

    #[test]
    fn rejects_zero() {
        assert!(negative_upsilon_region(0.0).is_err());
    }
}
