//! Uniform sampling grids on the circle and the 2-torus.
//!
//! Samples sit at `x_j = 2πj/N`. Coefficient maps are folded onto the grid
//! (index `k mod N`), so sampling a trigonometric polynomial is exact at the
//! grid points whatever its degree. Analysis is the normalized forward DFT;
//! bin `b` is read as frequency `b` for `b < N/2` and `b - N` above, with the
//! Nyquist bin `N/2` reported separately since it carries both `±N/2`.

use num_complex::Complex64;
use rustfft::FftPlanner;

pub fn is_power_of_two(n: usize) -> bool {
    n >= 1 && n & (n - 1) == 0
}

pub fn fold(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// Signed frequency for a DFT bin, `None` at the Nyquist bin.
pub fn bin_frequency(bin: usize, n: usize) -> Option<i64> {
    if n % 2 == 0 && bin == n / 2 {
        return None;
    }
    if bin <= n / 2 {
        Some(bin as i64)
    } else {
        Some(bin as i64 - n as i64)
    }
}

/// Distance (in bins) from `bin` to the Nyquist bin.
pub fn nyquist_distance(bin: usize, n: usize) -> usize {
    let half = n / 2;
    bin.abs_diff(half)
}

pub fn grid_point(j: usize, n: usize) -> f64 {
    std::f64::consts::TAU * j as f64 / n as f64
}

/// Values `Σ c_k e^{2πi jk/N}` from a buffer indexed by folded frequency.
pub fn synthesize(buf: &mut [Complex64]) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    FftPlanner::new().plan_fft_inverse(n).process(buf);
}

/// Normalized DFT: bin `b` becomes `N⁻¹ Σ_j f_j e^{-2πi jb/N}`.
pub fn analyze(buf: &mut [Complex64]) {
    let n = buf.len();
    if n == 0 {
        return;
    }
    if n > 1 {
        FftPlanner::new().plan_fft_forward(n).process(buf);
    }
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
}

/// Row-major `n × n` buffer: index `i * n + j` holds the sample at
/// `(x_i, y_j)` or the coefficient at folded `(m, n) = (i, j)`.
fn transform_2d(buf: &mut [Complex64], n: usize, inverse: bool) {
    assert_eq!(buf.len(), n * n);
    if n <= 1 {
        return;
    }
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    for row in buf.chunks_exact_mut(n) {
        fft.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        for i in 0..n {
            column[i] = buf[i * n + j];
        }
        fft.process(&mut column);
        for i in 0..n {
            buf[i * n + j] = column[i];
        }
    }
}

pub fn synthesize_2d(buf: &mut [Complex64], n: usize) {
    transform_2d(buf, n, true);
}

pub fn analyze_2d(buf: &mut [Complex64], n: usize) {
    transform_2d(buf, n, false);
    let scale = 1.0 / (n * n) as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bins_map_to_signed_frequencies() {
        assert_eq!(bin_frequency(0, 8), Some(0));
        assert_eq!(bin_frequency(3, 8), Some(3));
        assert_eq!(bin_frequency(4, 8), None);
        assert_eq!(bin_frequency(5, 8), Some(-3));
        assert_eq!(fold(-1, 8), 7);
        assert_eq!(nyquist_distance(6, 8), 2);
    }

    #[test]
    fn synthesis_then_analysis_is_identity() {
        let mut buf: Vec<Complex64> = (0..16)
            .map(|i| Complex64::new(i as f64, -(i as f64) * 0.5))
            .collect();
        let orig = buf.clone();
        synthesize(&mut buf);
        analyze(&mut buf);
        for (a, b) in buf.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
        let mut buf2 = orig.clone();
        synthesize_2d(&mut buf2, 4);
        analyze_2d(&mut buf2, 4);
        for (a, b) in buf2.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
