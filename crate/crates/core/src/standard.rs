//! Recognition of standard torus elements.
//!
//! A cut point `β_k` is invariant when the first `k` intervals are permuted
//! among themselves, i.e. `{π(1..k)} = {1..k}`. Consecutive invariant cuts
//! bound the finest decomposition of `[0, 1)` into invariant blocks; the map
//! is a standard torus element iff every block is a single rotation.

use std::fmt;

use crate::exchange::{IntervalExchange, LengthVector};
use crate::flows::TorusPoint;
use crate::Scalar;

/// A block `[start, end)` rotated by `shift ∈ [0, end − start)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationBlock {
    pub start: Scalar,
    pub end: Scalar,
    pub shift: Scalar,
}

impl RotationBlock {
    pub fn length(&self) -> Scalar {
        &self.end - &self.start
    }

    /// `shift / length ∈ [0, 1)`.
    pub fn rate(&self) -> Scalar {
        &self.shift / &self.length()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationDecomposition {
    pub blocks: Vec<RotationBlock>,
}

impl RotationDecomposition {
    pub fn lengths(&self) -> LengthVector {
        LengthVector::open(self.blocks.iter().map(RotationBlock::length).collect()).expect("blocks partition [0, 1)")
    }

    pub fn alpha(&self) -> TorusPoint {
        TorusPoint::new(self.blocks.iter().map(RotationBlock::rate).collect()).expect("rates lie in [0, 1)")
    }
}

/// Witness that a map is not a standard torus element: an invariant block
/// that is not a rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotStandard {
    pub start: Scalar,
    pub end: Scalar,
    pub translations: Vec<Scalar>,
}

impl fmt::Display for NotStandard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invariant block [{}, {}) carries translations", self.start, self.end)?;
        for w in &self.translations {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

impl std::error::Error for NotStandard {}

pub fn decompose_standard(f: &IntervalExchange) -> Result<RotationDecomposition, Box<NotStandard>> {
    let perm = f.perm();
    let mut blocks = Vec::new();
    let mut first = 0;
    let mut max_image = 0;
    for k in 0..f.len() {
        max_image = max_image.max(perm.image(k));
        if max_image != k {
            continue;
        }
        // intervals first..=k form an invariant block
        let start = f.breakpoints()[first].clone();
        let end = f.breakpoints()[k + 1].clone();
        let ws = &f.translations()[first..=k];
        let shift = match ws {
            [w] => {
                debug_assert!(w.is_zero());
                Scalar::zero()
            }
            // a two-piece invariant block is always (+len₂, −len₁)
            [w, _] => w.clone(),
            _ => {
                return Err(Box::new(NotStandard {
                    start,
                    end,
                    translations: ws.to_vec(),
                }))
            }
        };
        blocks.push(RotationBlock { start, end, shift });
        first = k + 1;
    }
    Ok(RotationDecomposition { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::torus_element;
    use crate::perm::Permutation;
    use crate::random::{random_exchange, random_quadratic_lengths, random_torus_coords};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::ratio(a, b)
    }

    #[test]
    fn identity_is_one_fixed_block() {
        let d = decompose_standard(&IntervalExchange::identity()).unwrap();
        assert_eq!(
            d.blocks,
            vec![RotationBlock {
                start: q(0, 1),
                end: q(1, 1),
                shift: q(0, 1)
            }]
        );
    }

    #[test]
    fn g2_is_not_standard() {
        let g2 = IntervalExchange::new(
            Permutation::from_one_based(&[3, 2, 1, 4]).unwrap(),
            LengthVector::open(vec![q(1, 4); 4]).unwrap(),
        )
        .unwrap();
        let w = decompose_standard(&g2).unwrap_err();
        assert_eq!((w.start.clone(), w.end.clone()), (q(0, 1), q(3, 4)));
        assert_eq!(w.translations, vec![q(1, 2), q(0, 1), q(-1, 2)]);
    }

    #[test]
    fn round_trips_torus_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let n = rng.random_range(1..=4);
            let lambda = random_quadratic_lengths(&mut rng, n, 12, 2);
            let alpha = TorusPoint::new(random_torus_coords(&mut rng, n, 8, Some(2))).unwrap();
            let f = torus_element(&lambda, &alpha).unwrap();
            let d = decompose_standard(&f).unwrap();
            assert_eq!(torus_element(&d.lengths(), &d.alpha()).unwrap(), f);
        }
    }

    #[test]
    fn decomposition_regenerates_whenever_it_succeeds() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..300 {
            let f = random_exchange(&mut rng, 6, 12);
            if let Ok(d) = decompose_standard(&f) {
                assert_eq!(torus_element(&d.lengths(), &d.alpha()).unwrap(), f);
            }
        }
    }
}
