//! Random generators for exact test data and benchmarks.
//!
//! All rational lengths produced here share the caller's denominator, which
//! makes pointwise checks on a fixed grid exhaustive.

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::exchange::{canonicalize, IntervalExchange, LengthVector};
use crate::perm::Permutation;
use crate::Scalar;

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle is a bijection")
}

/// `parts` positive integers summing to `total`; requires `total >= parts >= 1`.
pub fn random_composition<R: Rng + ?Sized>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    assert!(parts >= 1 && total >= parts);
    let mut cuts = index::sample(rng, total - 1, parts - 1).into_vec();
    cuts.iter_mut().for_each(|c| *c += 1);
    cuts.sort_unstable();
    cuts.push(total);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let part = c - prev;
            prev = c;
            part
        })
        .collect()
}

/// Strictly positive lengths `k_i / den`.
pub fn random_lengths<R: Rng + ?Sized>(rng: &mut R, n: usize, den: usize) -> LengthVector {
    let parts = random_composition(rng, den, n);
    LengthVector::open(parts.into_iter().map(|k| Scalar::ratio(k as i64, den as i64)).collect())
        .expect("composition sums to den")
}

/// Canonical form of a random `(π, λ)` with `n <= max_n` intervals of
/// lengths in `(1/den) Z`.
pub fn random_exchange<R: Rng + ?Sized>(rng: &mut R, max_n: usize, den: usize) -> IntervalExchange {
    let n = rng.random_range(1..=max_n.min(den));
    let perm = random_permutation(rng, n);
    canonicalize(&perm, &random_lengths(rng, n, den)).expect("matching sizes")
}

/// Strictly positive lengths in `Q(sqrt(d))`: rational lengths with
/// multiples of a small irrational `ε = sqrt(d) - p/q` shuffled between them.
pub fn random_quadratic_lengths<R: Rng + ?Sized>(rng: &mut R, n: usize, den: usize, radicand: u64) -> LengthVector {
    let base = random_lengths(rng, n, den).into_inner();
    let root = Scalar::sqrt(radicand).expect("valid radicand");
    // ε in (0, 1/1000)
    let scaled = Scalar::from(1000i64) * &root;
    let eps = (&scaled - &Scalar::from(scaled.floor())) / Scalar::from(1000i64);
    let mut shifts: Vec<i64> = (0..n).map(|_| rng.random_range(-2..=2)).collect();
    let total: i64 = shifts.iter().sum();
    if let Some(last) = shifts.last_mut() {
        *last -= total;
    }
    let lengths = base
        .into_iter()
        .zip(shifts)
        .map(|(l, k)| l + Scalar::from(k) * &eps)
        .collect();
    // |k ε| <= 2n/1000 stays below 1/den for the sizes used in tests
    LengthVector::open(lengths).expect("perturbation keeps lengths positive")
}

/// Coordinates in `[0, 1)`: `k/den`, or `frac(k/den + m sqrt(d))` when a
/// radicand is given.
pub fn random_torus_coords<R: Rng + ?Sized>(rng: &mut R, n: usize, den: usize, radicand: Option<u64>) -> Vec<Scalar> {
    (0..n)
        .map(|_| {
            let mut x = Scalar::ratio(rng.random_range(0..den as i64), den as i64);
            if let Some(d) = radicand {
                if rng.random_bool(0.7) {
                    let m = rng.random_range(1..=3i64);
                    x = (x + Scalar::from(m) * Scalar::sqrt(d).expect("valid radicand")).frac();
                }
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn compositions_are_positive_and_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let parts = random_composition(&mut rng, 12, 5);
            assert_eq!(parts.len(), 5);
            assert_eq!(parts.iter().sum::<usize>(), 12);
            assert!(parts.iter().all(|&p| p > 0));
        }
        assert_eq!(random_composition(&mut rng, 1, 1), vec![1]);
    }

    #[test]
    fn quadratic_lengths_are_open() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let l = random_quadratic_lengths(&mut rng, 6, 12, 2);
            assert!(l.is_open());
        }
    }
}
