use alloc::vec::Vec;

use crate::{Error, Result};

/// Composite Simpson's rule over uniformly spaced ordinates with spacing `h`.
///
/// `ys.len() - 1` is the interval count and must be even and at least 2.
pub fn composite_simpson(ys: &[f64], h: f64) -> Result<f64> {
    let intervals = ys.len().saturating_sub(1);
    if intervals == 0 || !intervals.is_multiple_of(2) {
        return Err(Error::OddIntervalCount(intervals));
    }
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, y) in ys.iter().enumerate().take(intervals).skip(1) {
        if i % 2 == 1 {
            odd += y;
        } else {
            even += y;
        }
    }
    Ok(h / 3.0 * (ys[0] + 4.0 * odd + 2.0 * even + ys[intervals]))
}

/// Running trapezoid integral, `out[i] = ∫ from xs[0] to xs[i]`.
pub fn cumulative_trapezoid(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    debug_assert_eq!(xs.len(), ys.len());
    let mut out = Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    for i in 0..xs.len() {
        if i > 0 {
            acc += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_for_cubics() {
        let n = 8;
        let h = 2.0 / n as f64;
        let ys: Vec<f64> = (0..=n)
            .map(|i| {
                let x = i as f64 * h;
                x * x * x - 2.0 * x + 1.0
            })
            .collect();
        // ∫0^2 (x^3 - 2x + 1) dx = 4 - 4 + 2
        assert!((composite_simpson(&ys, h).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn simpson_rejects_odd_counts() {
        assert_eq!(
            composite_simpson(&[0.0, 1.0, 2.0, 3.0], 1.0),
            Err(Error::OddIntervalCount(3))
        );
        assert_eq!(
            composite_simpson(&[1.0], 1.0),
            Err(Error::OddIntervalCount(0))
        );
    }

    #[test]
    fn trapezoid_is_exact_for_lines() {
        let xs = [0.0, 0.5, 1.5, 2.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 1.0).collect();
        let c = cumulative_trapezoid(&xs, &ys);
        for (x, v) in xs.iter().zip(&c) {
            assert!((v - (1.5 * x * x + x)).abs() < 1e-14);
        }
    }
}
