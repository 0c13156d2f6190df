//! Piecewise-constant functions on `[0, 1)` with exact breakpoints.

use crate::exchange::IntervalExchange;
use crate::{IetError, Scalar};

/// `values[k]` on `[breakpoints[k], breakpoints[k+1])`, with
/// `0 = c_0 < .. < c_m = 1`. Adjacent values always differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepFunction {
    breakpoints: Vec<Scalar>,
    values: Vec<Scalar>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<Scalar>, values: Vec<Scalar>) -> Result<Self, IetError> {
        if values.is_empty() {
            return Err(IetError::Empty);
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(IetError::DimensionMismatch {
                expected: values.len() + 1,
                found: breakpoints.len(),
            });
        }
        if !breakpoints[0].is_zero() || breakpoints[breakpoints.len() - 1] != Scalar::one() {
            return Err(IetError::Parameter(
                "step function breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
            return Err(IetError::Parameter(format!(
                "step function breakpoints must increase strictly: {} then {}",
                w[0], w[1]
            )));
        }
        Ok(Self::from_pieces(
            breakpoints.windows(2).map(|w| &w[1] - &w[0]).zip(values),
        ))
    }

    /// Consecutive `(length, value)` pieces covering `[0, 1)`.
    pub(crate) fn from_pieces<I>(pieces: I) -> Self
    where
        I: IntoIterator<Item = (Scalar, Scalar)>,
    {
        let mut breakpoints = vec![Scalar::zero()];
        let mut values: Vec<Scalar> = Vec::new();
        for (len, v) in pieces {
            if len.is_zero() {
                continue;
            }
            let end = breakpoints.last().expect("nonempty") + &len;
            if values.last() == Some(&v) {
                *breakpoints.last_mut().expect("nonempty") = end;
            } else {
                values.push(v);
                breakpoints.push(end);
            }
        }
        StepFunction { breakpoints, values }
    }

    pub fn constant(value: Scalar) -> Self {
        StepFunction {
            breakpoints: vec![Scalar::zero(), Scalar::one()],
            values: vec![value],
        }
    }

    /// Indicator of `[a, b)` for `0 <= a <= b <= 1`.
    pub fn indicator(a: &Scalar, b: &Scalar) -> Result<Self, IetError> {
        if a.is_negative() || a > b || *b > Scalar::one() {
            return Err(IetError::Parameter(format!("[{a}, {b}) is not an interval in [0, 1]")));
        }
        Ok(Self::from_pieces([
            (a.clone(), Scalar::zero()),
            (b - a, Scalar::one()),
            (Scalar::one() - b, Scalar::zero()),
        ]))
    }

    pub fn breakpoints(&self) -> &[Scalar] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    fn locate(&self, x: &Scalar) -> usize {
        self.breakpoints[..self.values.len()].partition_point(|b| b <= x) - 1
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar, IetError> {
        if x.is_negative() || *x >= Scalar::one() {
            return Err(IetError::OutOfRange(Box::new(x.clone())));
        }
        Ok(self.values[self.locate(x)].clone())
    }

    /// `self ∘ h`.
    pub fn precompose(&self, h: &IntervalExchange) -> StepFunction {
        let mut pieces = Vec::new();
        for (start, end, w) in h.pieces() {
            let mut lo = start + w;
            let hi = end + w;
            let mut k = self.locate(&lo);
            while lo < hi {
                let cut = self.breakpoints[k + 1].clone().min(hi.clone());
                pieces.push((&cut - &lo, self.values[k].clone()));
                lo = cut;
                k += 1;
            }
        }
        Self::from_pieces(pieces)
    }

    /// `∫ (self − other)² dμ` over the common refinement.
    pub fn l2_distance_sq(&self, other: &StepFunction) -> Scalar {
        let (mut i, mut j) = (0, 0);
        let mut lo = Scalar::zero();
        let mut total = Scalar::zero();
        while i < self.values.len() && j < other.values.len() {
            let a = &self.breakpoints[i + 1];
            let b = &other.breakpoints[j + 1];
            let hi = a.clone().min(b.clone());
            let diff = &self.values[i] - &other.values[j];
            total = total + (&hi - &lo) * &diff * &diff;
            if *a == hi {
                i += 1;
            }
            if *b == hi {
                j += 1;
            }
            lo = hi;
        }
        total
    }
}
