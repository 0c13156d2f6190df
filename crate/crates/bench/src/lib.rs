//! Shared inputs for the benchmarks.

use iet_core::{restricted_rotation, IntervalExchange, Scalar};

/// `h = r_t ∘ r_(s, 1/2)` with `t = (√2−1)/4`, `s = (√2−1)/3`; its powers
/// gain three discontinuities per step.
pub fn growth_map() -> IntervalExchange {
    let r2 = Scalar::sqrt(2).expect("2 is a valid radicand");
    let t = (&r2 - Scalar::one()) / Scalar::from(4);
    let s = (&r2 - Scalar::one()) / Scalar::from(3);
    IntervalExchange::rotation(&t).compose(&restricted_rotation(&s, &Scalar::ratio(1, 2)).expect("1/2 in (0, 1]"))
}
