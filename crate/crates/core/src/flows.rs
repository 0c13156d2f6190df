//! Standard torus actions and the rotation flows built from them.
//!
//! For a length vector `λ` and `α ∈ [0,1)ⁿ` the torus element rotates block
//! `j` of the `λ`-partition by `λ_j α_j` modulo `λ_j`. A rotation flow is
//! `t ↦ h ∘ f_([tα], λ) ∘ h⁻¹`.

use crate::exchange::{canonicalize, IntervalExchange, LengthVector};
use crate::intervals::IntervalUnion;
use crate::perm::Permutation;
use crate::{IetError, Scalar};

/// A point of the torus `[0, 1)ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoint(Vec<Scalar>);

impl TorusPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self, IetError> {
        for x in &coords {
            if x.is_negative() || *x >= Scalar::one() {
                return Err(IetError::OutOfRange(Box::new(x.clone())));
            }
        }
        Ok(TorusPoint(coords))
    }

    /// Reduces each coordinate mod 1.
    pub fn wrapping(coords: Vec<Scalar>) -> Self {
        TorusPoint(coords.iter().map(Scalar::frac).collect())
    }

    pub fn zero(n: usize) -> Self {
        TorusPoint(vec![Scalar::zero(); n])
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate-wise addition mod 1.
    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint::wrapping(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// `(1 2)(3 4)…((2n−1) 2n)`.
pub fn torus_permutation(n: usize) -> Permutation {
    let images = (0..2 * n).map(|i| i ^ 1).collect();
    Permutation::from_images(images).expect("product of disjoint transpositions")
}

/// `(λ_1(1−α_1), λ_1α_1, …, λ_n(1−α_n), λ_nα_n)`, paired with
/// [`torus_permutation`].
pub fn torus_partition_vector(lambda: &LengthVector, alpha: &TorusPoint) -> Result<LengthVector, IetError> {
    check_dims(lambda.len(), alpha.len())?;
    let v = lambda
        .as_slice()
        .iter()
        .zip(alpha.coords())
        .flat_map(|(l, a)| [l * &(Scalar::one() - a), l * a])
        .collect();
    LengthVector::closed(v)
}

fn check_dims(expected: usize, found: usize) -> Result<(), IetError> {
    if expected != found {
        return Err(IetError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// The standard torus action: canonical form of `f_(α, λ)`.
pub fn torus_element(lambda: &LengthVector, alpha: &TorusPoint) -> Result<IntervalExchange, IetError> {
    check_dims(lambda.len(), alpha.len())?;
    if !lambda.is_open() {
        return Err(IetError::Parameter(
            "torus action needs strictly positive lengths".into(),
        ));
    }
    let mut pieces = Vec::with_capacity(2 * lambda.len());
    for (l, a) in lambda.as_slice().iter().zip(alpha.coords()) {
        let shift = l * a;
        pieces.push((l - &shift, shift.clone()));
        pieces.push((shift.clone(), &shift - l));
    }
    Ok(IntervalExchange::from_pieces(pieces))
}

/// Same map as [`torus_element`], built from the `(π, λ′)` description.
pub fn torus_element_via_permutation(lambda: &LengthVector, alpha: &TorusPoint) -> Result<IntervalExchange, IetError> {
    let v = torus_partition_vector(lambda, alpha)?;
    canonicalize(&torus_permutation(lambda.len()), &v)
}

/// Data of the rotation flow `t ↦ h ∘ f_([t a], λ) ∘ h⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSpec {
    base_lengths: LengthVector,
    rates: Vec<Scalar>,
    conjugator: Option<IntervalExchange>,
}

impl FlowSpec {
    pub fn new(
        base_lengths: LengthVector,
        rates: Vec<Scalar>,
        conjugator: Option<IntervalExchange>,
    ) -> Result<Self, IetError> {
        check_dims(base_lengths.len(), rates.len())?;
        if !base_lengths.is_open() {
            return Err(IetError::Parameter(
                "flow base lengths must be strictly positive".into(),
            ));
        }
        Ok(FlowSpec {
            base_lengths,
            rates,
            conjugator,
        })
    }

    pub fn base_lengths(&self) -> &LengthVector {
        &self.base_lengths
    }

    pub fn rates(&self) -> &[Scalar] {
        &self.rates
    }

    pub fn conjugator(&self) -> Option<&IntervalExchange> {
        self.conjugator.as_ref()
    }

    /// The same flow conjugated once more: conjugator becomes `k ∘ h`.
    pub fn conjugated_by(&self, k: &IntervalExchange) -> FlowSpec {
        let h = match &self.conjugator {
            Some(h) => k.compose(h),
            None => k.clone(),
        };
        FlowSpec {
            conjugator: Some(h),
            ..self.clone()
        }
    }

    /// `[t a] ∈ 𝕋ⁿ`.
    pub fn torus_point_at(&self, t: &Scalar) -> TorusPoint {
        TorusPoint::wrapping(self.rates.iter().map(|a| t * a).collect())
    }
}

/// `f_t` for the flow described by `spec`.
pub fn flow_at(spec: &FlowSpec, t: &Scalar) -> IntervalExchange {
    let alpha = spec.torus_point_at(t);
    let f = torus_element(&spec.base_lengths, &alpha).expect("dimensions checked by FlowSpec");
    match &spec.conjugator {
        Some(h) => f.conjugate_by(h),
        None => f,
    }
}

/// Rotation by `frac(s)·δ` modulo `δ` on `[0, δ)`, identity on `[δ, 1)`.
pub fn restricted_rotation(s: &Scalar, delta: &Scalar) -> Result<IntervalExchange, IetError> {
    if !delta.is_positive() || *delta > Scalar::one() {
        return Err(IetError::Parameter(format!("restriction length {delta} not in (0, 1]")));
    }
    let shift = s.frac() * delta;
    Ok(IntervalExchange::from_pieces([
        (delta - &shift, shift.clone()),
        (shift.clone(), &shift - delta),
        (Scalar::one() - delta, Scalar::zero()),
    ]))
}

/// Global fixed set: zero-rate blocks, pushed forward through the conjugator.
pub fn flow_fixed_set(spec: &FlowSpec) -> IntervalUnion {
    let mut start = Scalar::zero();
    let mut blocks = Vec::new();
    for (l, a) in spec.base_lengths.as_slice().iter().zip(&spec.rates) {
        let end = &start + l;
        if a.is_zero() {
            blocks.push((start.clone(), end.clone()));
        }
        start = end;
    }
    let fixed = IntervalUnion::from_intervals(blocks);
    match &spec.conjugator {
        Some(h) => fixed.image_under(h),
        None => fixed,
    }
}
