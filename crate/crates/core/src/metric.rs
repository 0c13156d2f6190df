//! The integral circle metric `d(f, g) = ∫ ρ(f(x), g(x)) dμ`, the uniform
//! displacement, and Koopman L² distances.
//!
//! On each piece of the common refinement of two interval exchanges both
//! maps are translations, so `ρ(f(x), g(x))` is constant there and every
//! quantity below is a finite exact sum.

use crate::exchange::IntervalExchange;
use crate::step::StepFunction;
use crate::{IetError, Scalar};

/// Representative of `c mod 1` in `(−1/2, 1/2]`.
pub fn signed_circle_rep(c: &Scalar) -> Scalar {
    let r = c.frac();
    if r > Scalar::ratio(1, 2) {
        r - Scalar::one()
    } else {
        r
    }
}

/// Shortest-path distance on the circle `[0, 1)`.
pub fn circle_distance(u: &Scalar, v: &Scalar) -> Result<Scalar, IetError> {
    for x in [u, v] {
        if x.is_negative() || *x >= Scalar::one() {
            return Err(IetError::OutOfRange(Box::new(x.clone())));
        }
    }
    let diff = (u - v).abs();
    let other = Scalar::one() - &diff;
    Ok(diff.min(other))
}

/// Pieces `(length, ω_f, ω_g)` of the common refinement of two partitions.
fn common_refinement<'a>(f: &'a IntervalExchange, g: &'a IntervalExchange) -> Vec<(Scalar, &'a Scalar, &'a Scalar)> {
    let (bf, bg) = (f.breakpoints(), g.breakpoints());
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut lo = Scalar::zero();
    while i < f.len() && j < g.len() {
        let hi = bf[i + 1].clone().min(bg[j + 1].clone());
        out.push((&hi - &lo, &f.translations()[i], &g.translations()[j]));
        if bf[i + 1] == hi {
            i += 1;
        }
        if bg[j + 1] == hi {
            j += 1;
        }
        lo = hi;
    }
    out
}

fn piece_rho(wf: &Scalar, wg: &Scalar) -> Scalar {
    signed_circle_rep(&(wf - wg)).abs()
}

/// `d(f, g)`, exact.
pub fn distance(f: &IntervalExchange, g: &IntervalExchange) -> Scalar {
    common_refinement(f, g)
        .into_iter()
        .map(|(len, wf, wg)| len * piece_rho(wf, wg))
        .sum()
}

/// `sup_x ρ(f(x), g(x))`, exact.
pub fn sup_displacement(f: &IntervalExchange, g: &IntervalExchange) -> Scalar {
    common_refinement(f, g)
        .into_iter()
        .map(|(_, wf, wg)| piece_rho(wf, wg))
        .max()
        .unwrap_or_else(Scalar::zero)
}

/// `‖φ∘f⁻¹ − φ∘g⁻¹‖²₂`, with the Koopman operator acting as `T_f φ = φ∘f⁻¹`.
pub fn koopman_l2_sq(f: &IntervalExchange, g: &IntervalExchange, phi: &StepFunction) -> Scalar {
    let a = phi.precompose(&f.inverse());
    let b = phi.precompose(&g.inverse());
    a.l2_distance_sq(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::LengthVector;
    use crate::perm::Permutation;
    use crate::random::random_exchange;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::ratio(a, b)
    }

    fn iet(perm: &[usize], lengths: &[(i64, i64)]) -> IntervalExchange {
        IntervalExchange::new(
            Permutation::from_one_based(perm).unwrap(),
            LengthVector::open(lengths.iter().map(|&(a, b)| q(a, b)).collect()).unwrap(),
        )
        .unwrap()
    }

    fn half_swap() -> IntervalExchange {
        iet(&[2, 1], &[(1, 2), (1, 2)])
    }

    fn f2() -> IntervalExchange {
        iet(&[2, 1, 4, 3, 5], &[(1, 8), (1, 8), (1, 8), (1, 8), (1, 2)])
    }

    fn g(n: u32) -> IntervalExchange {
        let p = 1i64 << n;
        let m = (1i64 << (n - 1)) - 1;
        iet(&[3, 2, 1, 4], &[(1, p), (m, p), (1, p), (m, p)])
    }

    /// Integration by evaluation: on each sub-interval between the union of
    /// both breakpoint sets, sample the midpoint through `apply` and take the
    /// circle distance of the images.
    fn integrate_by_sampling(f: &IntervalExchange, g: &IntervalExchange) -> (Scalar, Scalar) {
        let mut cuts: Vec<Scalar> = f.breakpoints().iter().chain(g.breakpoints()).cloned().collect();
        cuts.sort();
        cuts.dedup();
        let mut integral = Scalar::zero();
        let mut sup = Scalar::zero();
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / Scalar::from(2);
            let rho = circle_distance(&f.apply(&mid).unwrap(), &g.apply(&mid).unwrap()).unwrap();
            integral = integral + (&w[1] - &w[0]) * &rho;
            sup = sup.max(rho);
        }
        (integral, sup)
    }

    #[test]
    fn circle_distance_examples() {
        assert_eq!(circle_distance(&q(0, 1), &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(circle_distance(&q(3, 7), &q(3, 7)).unwrap(), q(0, 1));
        assert_eq!(circle_distance(&q(1, 8), &q(7, 8)).unwrap(), q(1, 4));
        assert!(circle_distance(&q(1, 1), &q(0, 1)).is_err());
    }

    #[test]
    fn signed_rep_ties_at_half() {
        assert_eq!(signed_circle_rep(&q(1, 2)), q(1, 2));
        assert_eq!(signed_circle_rep(&q(-1, 2)), q(1, 2));
        assert_eq!(signed_circle_rep(&q(-3, 4)), q(1, 4));
        assert_eq!(signed_circle_rep(&q(3, 4)), q(-1, 4));
    }

    #[test]
    fn distance_examples() {
        let id = IntervalExchange::identity();
        assert_eq!(distance(&half_swap(), &id), q(1, 2));
        assert_eq!(integrate_by_sampling(&half_swap(), &id).0, q(1, 2));
        assert_eq!(distance(&f2(), &id), q(1, 16));
        assert_eq!(integrate_by_sampling(&f2(), &id).0, q(1, 16));
        assert_eq!(distance(&g(3), &id), q(1, 8));
        assert_eq!(integrate_by_sampling(&g(3), &id).0, q(1, 8));
    }

    #[test]
    fn sup_examples() {
        let id = IntervalExchange::identity();
        for n in 2..=6 {
            assert_eq!(sup_displacement(&g(n), &id), q(1, 2));
        }
        assert_eq!(sup_displacement(&id, &id), q(0, 1));
        assert_eq!(sup_displacement(&f2(), &id), q(1, 8));
        assert_eq!(integrate_by_sampling(&f2(), &id).1, q(1, 8));
    }

    #[test]
    fn koopman_examples() {
        let id = IntervalExchange::identity();
        let chi_half = StepFunction::indicator(&q(0, 1), &q(1, 2)).unwrap();
        assert_eq!(koopman_l2_sq(&half_swap(), &id, &chi_half), q(1, 1));
        assert_eq!(koopman_l2_sq(&f2(), &f2(), &chi_half), q(0, 1));
        let chi_quarter = StepFunction::indicator(&q(0, 1), &q(1, 4)).unwrap();
        assert_eq!(koopman_l2_sq(&g(2), &id, &chi_quarter), q(1, 2));
    }

    #[test]
    fn koopman_is_a_homomorphism_convention() {
        // T_f T_g φ = T_{f∘g} φ with T_f φ = φ∘f⁻¹
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let phi = StepFunction::new(
            vec![q(0, 1), q(1, 3), q(5, 6), q(1, 1)],
            vec![q(2, 1), q(-1, 1), q(1, 2)],
        )
        .unwrap();
        for _ in 0..50 {
            let f = random_exchange(&mut rng, 5, 12);
            let g = random_exchange(&mut rng, 5, 12);
            let tg = phi.precompose(&g.inverse());
            let tftg = tg.precompose(&f.inverse());
            assert_eq!(tftg, phi.precompose(&f.compose(&g).inverse()));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn matches_sampling_oracle(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_exchange(&mut rng, 7, 24);
            let g = random_exchange(&mut rng, 7, 24);
            let (integral, sup) = integrate_by_sampling(&f, &g);
            prop_assert_eq!(distance(&f, &g), integral);
            prop_assert_eq!(sup_displacement(&f, &g), sup.clone());
            prop_assert!(distance(&f, &g) <= sup);
        }
    }
}
