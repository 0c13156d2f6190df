//! Discontinuity growth `D_n = δ(hⁿ)` along the powers of a single map.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::exchange::IntervalExchange;

#[derive(Clone, Debug, Default)]
pub struct GrowthOptions {
    /// Abort once `δ(hⁿ)` exceeds this many intervals.
    pub max_delta: Option<usize>,
    /// Abort once this many seconds have elapsed.
    pub max_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("number of powers must be at least 1")]
    NoPowers,
    #[error("capacity exceeded at n = {reached}: {limit}")]
    Capacity { reached: u64, limit: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    /// `(n, D_n)` for `n = 1..=N`.
    pub powers: Vec<(u64, usize)>,
    /// `D_{n+1} − D_n`.
    pub first_differences: Vec<i64>,
    /// `(C, onset)`: the differences equal `C` from `first_differences[onset]`
    /// to the end, with `onset` minimal. `None` when fewer than two
    /// differences exist.
    pub eventually_constant_difference: Option<(i64, usize)>,
    /// Exact least-squares slope of `D_n` against `n` over the last
    /// `⌈N/2⌉` powers.
    pub slope_estimate: BigRational,
}

impl GrowthReport {
    fn from_powers(powers: Vec<(u64, usize)>) -> Self {
        let first_differences: Vec<i64> = powers.windows(2).map(|w| w[1].1 as i64 - w[0].1 as i64).collect();
        let eventually_constant_difference = if first_differences.len() < 2 {
            None
        } else {
            let last = *first_differences.last().expect("nonempty");
            let onset = first_differences.iter().rposition(|&d| d != last).map_or(0, |i| i + 1);
            Some((last, onset))
        };
        let tail = powers.len().div_ceil(2);
        let slope_estimate = least_squares_slope(&powers[powers.len() - tail..]);
        GrowthReport {
            powers,
            first_differences,
            eventually_constant_difference,
            slope_estimate,
        }
    }

    pub fn deltas(&self) -> Vec<usize> {
        self.powers.iter().map(|&(_, d)| d).collect()
    }

    /// Least-squares slope over the powers `n` with `from <= n <= to`.
    pub fn slope_over(&self, from: u64, to: u64) -> BigRational {
        let window: Vec<_> = self
            .powers
            .iter()
            .copied()
            .filter(|&(n, _)| from <= n && n <= to)
            .collect();
        least_squares_slope(&window)
    }

    /// Whether `D_{n+m} <= D_n + D_m` for all recorded `n + m <= N`.
    pub fn is_subadditive(&self) -> bool {
        let d = self.deltas();
        (1..=d.len()).all(|n| (1..=d.len() - n).all(|m| d[n + m - 1] <= d[n - 1] + d[m - 1]))
    }
}

/// Slope of the least-squares line through `(n, D)`; zero for fewer than
/// two points.
pub fn least_squares_slope(points: &[(u64, usize)]) -> BigRational {
    let k = BigInt::from(points.len());
    if points.len() < 2 {
        return BigRational::from_integer(BigInt::from(0));
    }
    let (mut sx, mut sy, mut sxx, mut sxy) = (BigInt::from(0), BigInt::from(0), BigInt::from(0), BigInt::from(0));
    for &(n, d) in points {
        let (x, y) = (BigInt::from(n), BigInt::from(d));
        sxx += &x * &x;
        sxy += &x * &y;
        sx += x;
        sy += y;
    }
    let num = &k * sxy - &sx * &sy;
    let den = &k * sxx - &sx * &sx;
    BigRational::new(num, den)
}

/// Records `δ(hⁿ)` for `n = 1..=count`, composing `hⁿ⁺¹ = h ∘ hⁿ` and keeping
/// only the current power.
pub fn growth(h: &IntervalExchange, count: u64, options: &GrowthOptions) -> Result<GrowthReport, GrowthError> {
    if count == 0 {
        return Err(GrowthError::NoPowers);
    }
    let started = Instant::now();
    let mut power = h.clone();
    let mut powers = Vec::with_capacity(count as usize);
    for n in 1..=count {
        if n > 1 {
            power = h.compose(&power);
        }
        let d = power.delta();
        if let Some(limit) = options.max_delta {
            if d > limit {
                return Err(GrowthError::Capacity {
                    reached: n,
                    limit: format!("delta {d} exceeds {limit}"),
                });
            }
        }
        if let Some(limit) = options.max_seconds {
            if started.elapsed().as_secs_f64() > limit {
                return Err(GrowthError::Capacity {
                    reached: n,
                    limit: format!("time limit of {limit} s"),
                });
            }
        }
        powers.push((n, d));
    }
    Ok(GrowthReport::from_powers(powers))
}
