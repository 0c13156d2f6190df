//! Two reference sequences converging to the identity in the integral
//! metric: `f_n` also converges uniformly, `g_n` does not.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exchange::{canonicalize, IntervalExchange, LengthVector};
use crate::flows::torus_permutation;
use crate::perm::Permutation;
use crate::{IetError, Scalar};

fn pow2_ratio(num: BigInt, exp: u32) -> Scalar {
    Scalar::from(BigRational::new(num, BigInt::from(1) << exp))
}

fn check_index(n: u32) -> Result<(), IetError> {
    if n < 1 {
        return Err(IetError::Parameter("sequence index must be at least 1".into()));
    }
    Ok(())
}

/// `f_1` swaps the two halves. For `n >= 2`, `f_n` swaps `n` adjacent pairs
/// of intervals of length `2^{-(n+1)}` and fixes `[n/2^n, 1)`.
pub fn golden_fn(n: u32) -> Result<IntervalExchange, IetError> {
    check_index(n)?;
    let (perm, lengths) = if n == 1 {
        (torus_permutation(1), vec![Scalar::ratio(1, 2); 2])
    } else {
        let pairs = torus_permutation(n as usize);
        let mut images = pairs.images().to_vec();
        images.push(2 * n as usize);
        let mut lengths = vec![pow2_ratio(BigInt::from(1), n + 1); 2 * n as usize];
        lengths.push(Scalar::one() - pow2_ratio(BigInt::from(n), n));
        (Permutation::from_images(images)?, lengths)
    };
    canonicalize(&perm, &LengthVector::closed(lengths)?)
}

/// `g_n = f_((1 3), η^(n))` with `η^(n) = (2^{-n}, (2^{n-1}−1)/2^n, 2^{-n}, (2^{n-1}−1)/2^n)`.
pub fn golden_gn(n: u32) -> Result<IntervalExchange, IetError> {
    check_index(n)?;
    let short = pow2_ratio(BigInt::from(1), n);
    let long = pow2_ratio((BigInt::from(1) << (n - 1)) - 1, n);
    let perm = Permutation::from_one_based(&[3, 2, 1, 4])?;
    canonicalize(
        &perm,
        &LengthVector::closed(vec![short.clone(), long.clone(), short, long])?,
    )
}
