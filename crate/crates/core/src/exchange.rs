//! Interval exchanges in canonical coordinates and the group operations.

use std::hash::{Hash, Hasher};

use crate::intervals::IntervalUnion;
use crate::perm::Permutation;
use crate::{IetError, Scalar};

/// Lengths `λ_1..λ_n` summing exactly to 1 with every entry `>= 0`.
///
/// The open variant additionally has every entry `> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LengthVector(Vec<Scalar>);

impl LengthVector {
    /// Closed simplex: entries `>= 0`, sum 1.
    pub fn closed(lengths: Vec<Scalar>) -> Result<Self, IetError> {
        if lengths.is_empty() {
            return Err(IetError::Empty);
        }
        for (index, value) in lengths.iter().enumerate() {
            if value.is_negative() {
                return Err(IetError::NegativeLength {
                    index: index + 1,
                    value: Box::new(value.clone()),
                });
            }
        }
        let total: Scalar = lengths.iter().sum();
        if total != Scalar::one() {
            return Err(IetError::LengthSum(Box::new(total)));
        }
        Ok(LengthVector(lengths))
    }

    /// Open simplex: entries `> 0`, sum 1.
    pub fn open(lengths: Vec<Scalar>) -> Result<Self, IetError> {
        let v = Self::closed(lengths)?;
        if let Some(index) = v.0.iter().position(Scalar::is_zero) {
            return Err(IetError::ZeroLength { index: index + 1 });
        }
        Ok(v)
    }

    pub fn is_open(&self) -> bool {
        self.0.iter().all(Scalar::is_positive)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Scalar> {
        self.0
    }
}

/// Translation vector `ω_j = Σ_{π(i)<π(j)} λ_i − Σ_{i<j} λ_i`.
pub fn omega(perm: &Permutation, lengths: &LengthVector) -> Result<Vec<Scalar>, IetError> {
    let n = perm.len();
    if lengths.len() != n {
        return Err(IetError::DimensionMismatch {
            expected: n,
            found: lengths.len(),
        });
    }
    let lambda = lengths.as_slice();
    let inv = perm.inverse();
    // image_start[r] = total length of the intervals sent to ranks below r
    let mut image_start = Vec::with_capacity(n);
    let mut acc = Scalar::zero();
    for r in 0..n {
        image_start.push(acc.clone());
        acc = acc + &lambda[inv.image(r)];
    }
    let mut out = Vec::with_capacity(n);
    let mut start = Scalar::zero();
    for (j, len) in lambda.iter().enumerate() {
        out.push(&image_start[perm.image(j)] - &start);
        start = start + len;
    }
    Ok(out)
}

/// Canonical form of `f_(π, λ)` for any permutation and any `λ` in the
/// closed simplex.
pub fn canonicalize(perm: &Permutation, lengths: &LengthVector) -> Result<IntervalExchange, IetError> {
    let w = omega(perm, lengths)?;
    Ok(IntervalExchange::from_pieces(lengths.as_slice().iter().cloned().zip(w)))
}

/// An interval exchange of `[0, 1)` in canonical coordinates: unpartitioned
/// permutation and strictly positive lengths. Equality is equality of maps.
#[derive(Clone, Debug)]
pub struct IntervalExchange {
    perm: Permutation,
    lengths: Vec<Scalar>,
    breakpoints: Vec<Scalar>,
    translations: Vec<Scalar>,
}

impl PartialEq for IntervalExchange {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm && self.lengths == other.lengths
    }
}

impl Eq for IntervalExchange {}

impl Hash for IntervalExchange {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
        self.lengths.hash(state);
    }
}

impl IntervalExchange {
    /// Builds from data that must already be canonical.
    pub fn new(perm: Permutation, lengths: LengthVector) -> Result<Self, IetError> {
        if let Some(j) = perm.partition_point() {
            return Err(IetError::Partitioned(j + 1));
        }
        if let Some(index) = lengths.as_slice().iter().position(Scalar::is_zero) {
            return Err(IetError::ZeroLength { index: index + 1 });
        }
        let translations = omega(&perm, &lengths)?;
        Ok(Self::assemble(perm, lengths.into_inner(), translations))
    }

    fn assemble(perm: Permutation, lengths: Vec<Scalar>, translations: Vec<Scalar>) -> Self {
        let mut breakpoints = Vec::with_capacity(lengths.len() + 1);
        let mut acc = Scalar::zero();
        breakpoints.push(acc.clone());
        for len in &lengths {
            acc = acc + len;
            breakpoints.push(acc.clone());
        }
        debug_assert_eq!(acc, Scalar::one());
        IntervalExchange {
            perm,
            lengths,
            breakpoints,
            translations,
        }
    }

    /// Canonical map from consecutive domain pieces `(length, translation)`
    /// covering `[0, 1)`. Zero-length pieces are dropped and neighbours with
    /// equal translation merged; the permutation is read off the image order.
    pub(crate) fn from_pieces<I>(pieces: I) -> Self
    where
        I: IntoIterator<Item = (Scalar, Scalar)>,
    {
        let mut merged: Vec<(Scalar, Scalar)> = Vec::new();
        for (len, w) in pieces {
            if len.is_zero() {
                continue;
            }
            debug_assert!(len.is_positive());
            match merged.last_mut() {
                Some(last) if last.1 == w => last.0 = &last.0 + &len,
                _ => merged.push((len, w)),
            }
        }
        assert!(!merged.is_empty(), "pieces must cover [0, 1)");
        let mut image_starts = Vec::with_capacity(merged.len());
        let mut start = Scalar::zero();
        for (len, w) in &merged {
            image_starts.push(&start + w);
            start = start + len;
        }
        let mut order: Vec<usize> = (0..merged.len()).collect();
        order.sort_by(|&a, &b| image_starts[a].cmp(&image_starts[b]));
        let mut images = vec![0; merged.len()];
        for (rank, &j) in order.iter().enumerate() {
            images[j] = rank;
        }
        let perm = Permutation::from_images(images).expect("ranks form a permutation");
        let (lengths, translations): (Vec<_>, Vec<_>) = merged.into_iter().unzip();
        let f = Self::assemble(perm, lengths, translations);
        debug_assert!(f.perm.is_unpartitioned());
        f
    }

    pub fn identity() -> Self {
        Self::assemble(Permutation::identity(1), vec![Scalar::one()], vec![Scalar::zero()])
    }

    /// The rotation `x ↦ x + t (mod 1)`.
    pub fn rotation(t: &Scalar) -> Self {
        let t = t.frac();
        Self::from_pieces([(Scalar::one() - &t, t.clone()), (t.clone(), t - Scalar::one())])
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn lengths(&self) -> &[Scalar] {
        &self.lengths
    }

    /// `β_0 = 0 < β_1 < .. < β_n = 1`.
    pub fn breakpoints(&self) -> &[Scalar] {
        &self.breakpoints
    }

    /// `ω_1..ω_n`.
    pub fn translations(&self) -> &[Scalar] {
        &self.translations
    }

    /// Number of intervals of the canonical form.
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of discontinuities on `[0, 1)`, counting 0.
    pub fn delta(&self) -> usize {
        self.len()
    }

    pub fn is_identity(&self) -> bool {
        self.len() == 1
    }

    /// Domain interval `[β_{j}, β_{j+1})`, 0-based.
    pub fn interval(&self, j: usize) -> (&Scalar, &Scalar) {
        (&self.breakpoints[j], &self.breakpoints[j + 1])
    }

    /// `(start, end, translation)` for each domain interval.
    pub fn pieces(&self) -> impl Iterator<Item = (&Scalar, &Scalar, &Scalar)> + '_ {
        (0..self.len()).map(move |j| (&self.breakpoints[j], &self.breakpoints[j + 1], &self.translations[j]))
    }

    /// Radicand shared by the coordinates, if any is irrational.
    pub fn radicand(&self) -> Option<u64> {
        self.lengths.iter().find_map(Scalar::radicand)
    }

    /// Index `j` with `β_j <= x < β_{j+1}`; `x` must lie in `[0, 1)`.
    pub(crate) fn locate(&self, x: &Scalar) -> usize {
        self.breakpoints[..self.len()].partition_point(|b| b <= x) - 1
    }

    pub fn apply(&self, x: &Scalar) -> Result<Scalar, IetError> {
        if x.is_negative() || *x >= Scalar::one() {
            return Err(IetError::OutOfRange(Box::new(x.clone())));
        }
        Ok(x + &self.translations[self.locate(x)])
    }

    /// `self ∘ g`: apply `g` first.
    ///
    /// Each interval of `g` is cut where its image crosses a breakpoint of
    /// `self`; translations add on the pieces.
    pub fn compose(&self, g: &IntervalExchange) -> IntervalExchange {
        let mut pieces = Vec::with_capacity(self.len() + g.len());
        for (start, end, w) in g.pieces() {
            let mut lo = start + w;
            let hi = end + w;
            let mut k = self.locate(&lo);
            while lo < hi {
                let cut = self.breakpoints[k + 1].clone().min(hi.clone());
                pieces.push((&cut - &lo, w + &self.translations[k]));
                lo = cut;
                k += 1;
            }
        }
        Self::from_pieces(pieces)
    }

    /// Image intervals, sorted, become domain intervals with negated
    /// translations.
    pub fn inverse(&self) -> IntervalExchange {
        let inv = self.perm.inverse();
        Self::from_pieces((0..self.len()).map(|r| {
            let j = inv.image(r);
            (self.lengths[j].clone(), -&self.translations[j])
        }))
    }

    /// `self^k` for `k >= 0` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> IntervalExchange {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &IntervalExchange) -> IntervalExchange {
        h.compose(self).compose(&h.inverse())
    }

    /// Union of the intervals with zero translation: the pointwise fixed set.
    pub fn fix_set(&self) -> IntervalUnion {
        IntervalUnion::from_intervals(
            self.pieces()
                .filter(|(_, _, w)| w.is_zero())
                .map(|(a, b, _)| (a.clone(), b.clone())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_exchange;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::ratio(a, b)
    }

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_one_based(images).unwrap()
    }

    fn lengths(v: &[(i64, i64)]) -> LengthVector {
        LengthVector::closed(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    fn quarters() -> LengthVector {
        lengths(&[(1, 4); 4])
    }

    fn g2() -> IntervalExchange {
        IntervalExchange::new(perm(&[3, 2, 1, 4]), quarters()).unwrap()
    }

    /// Evaluation straight from the definition: locate x by summing lengths,
    /// then translate to the start of its image slot.
    fn eval_by_definition(p: &Permutation, lambda: &[Scalar], x: &Scalar) -> Scalar {
        let mut start = Scalar::zero();
        for (j, len) in lambda.iter().enumerate() {
            let end = &start + len;
            if *x >= start && *x < end {
                let image_start: Scalar = (0..lambda.len())
                    .filter(|&i| p.image(i) < p.image(j))
                    .map(|i| &lambda[i])
                    .sum();
                return image_start + (x - &start);
            }
            start = end;
        }
        panic!("x outside [0, 1)")
    }

    fn grid(den: i64) -> impl Iterator<Item = Scalar> {
        (0..den).map(move |k| q(k, den))
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            omega(&perm(&[2, 1]), &lengths(&[(3, 4), (1, 4)])).unwrap(),
            vec![q(1, 4), q(-3, 4)]
        );
        assert_eq!(omega(&perm(&[1]), &lengths(&[(1, 1)])).unwrap(), vec![Scalar::zero()]);
        assert_eq!(
            omega(&perm(&[3, 2, 1, 4]), &quarters()).unwrap(),
            vec![q(1, 2), Scalar::zero(), q(-1, 2), Scalar::zero()]
        );
        assert_eq!(
            omega(&perm(&[2, 1]), &quarters()),
            Err(IetError::DimensionMismatch { expected: 2, found: 4 })
        );
    }

    #[test]
    fn apply_examples() {
        let r = IntervalExchange::rotation(&q(1, 4));
        assert_eq!(r.perm().one_based(), vec![2, 1]);
        assert_eq!(r.lengths(), &[q(3, 4), q(1, 4)]);
        assert_eq!(r.apply(&q(7, 8)).unwrap(), q(1, 8));
        assert_eq!(IntervalExchange::identity().apply(&q(3, 7)).unwrap(), q(3, 7));
        assert_eq!(g2().apply(&q(1, 8)).unwrap(), q(5, 8));
        assert!(r.apply(&Scalar::one()).is_err());
        assert!(r.apply(&q(-1, 8)).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let p = perm(&[3, 4, 1, 2]);
        let f = canonicalize(&p, &quarters()).unwrap();
        assert_eq!(f.perm().one_based(), vec![2, 1]);
        assert_eq!(f.lengths(), &[q(1, 2), q(1, 2)]);
        for x in grid(8) {
            assert_eq!(f.apply(&x).unwrap(), eval_by_definition(&p, quarters().as_slice(), &x));
        }
        let degenerate = canonicalize(&perm(&[2, 1]), &lengths(&[(1, 1), (0, 1)])).unwrap();
        assert_eq!(degenerate, IntervalExchange::identity());
        assert_eq!(
            canonicalize(g2().perm(), &LengthVector::closed(g2().lengths().to_vec()).unwrap()).unwrap(),
            g2()
        );
    }

    #[test]
    fn new_rejects_non_canonical() {
        assert_eq!(
            IntervalExchange::new(perm(&[3, 4, 1, 2]), quarters()),
            Err(IetError::Partitioned(1))
        );
        assert_eq!(
            IntervalExchange::new(perm(&[2, 1]), lengths(&[(1, 1), (0, 1)])),
            Err(IetError::ZeroLength { index: 2 })
        );
        assert!(LengthVector::closed(vec![q(1, 2), q(1, 3)]).is_err());
        assert!(matches!(
            LengthVector::closed(vec![q(3, 2), q(-1, 2)]),
            Err(IetError::NegativeLength { index: 2, .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let r13 = IntervalExchange::rotation(&q(1, 3));
        assert_eq!(r13.compose(&r13), IntervalExchange::rotation(&q(2, 3)));
        let g = g2();
        let gg = g.compose(&g);
        assert_eq!(gg, IntervalExchange::identity());
        for x in grid(16) {
            assert_eq!(g.apply(&g.apply(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn invert_examples() {
        assert_eq!(
            IntervalExchange::rotation(&q(1, 4)).inverse(),
            IntervalExchange::rotation(&q(3, 4))
        );
        assert_eq!(IntervalExchange::identity().inverse(), IntervalExchange::identity());
        assert_eq!(g2().inverse(), g2());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(IntervalExchange::identity().delta(), 1);
        assert_eq!(IntervalExchange::rotation(&q(2, 7)).delta(), 2);
        assert_eq!(IntervalExchange::rotation(&Scalar::zero()).delta(), 1);
    }

    #[test]
    fn fix_set_examples() {
        assert_eq!(IntervalExchange::identity().fix_set(), IntervalUnion::full());
        assert!(IntervalExchange::rotation(&q(1, 5)).fix_set().is_empty());
        let f2 = IntervalExchange::new(
            perm(&[2, 1, 4, 3, 5]),
            lengths(&[(1, 8), (1, 8), (1, 8), (1, 8), (1, 2)]),
        )
        .unwrap();
        assert_eq!(f2.fix_set(), IntervalUnion::from_intervals([(q(1, 2), Scalar::one())]));
        assert_eq!(
            g2().fix_set().intervals(),
            &[(q(1, 4), q(1, 2)), (q(3, 4), Scalar::one())]
        );
    }

    #[test]
    fn pow_matches_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let f = random_exchange(&mut rng, 6, 12);
            let mut acc = IntervalExchange::identity();
            for k in 0..7u64 {
                assert_eq!(f.pow(k), acc);
                acc = f.compose(&acc);
            }
        }
    }

    #[test]
    fn random_maps_are_pointwise_compositions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let f = random_exchange(&mut rng, 6, 12);
            let g = random_exchange(&mut rng, 6, 12);
            let fg = f.compose(&g);
            // every breakpoint involved lies in (1/12)Z, so the left endpoints of
            // that lattice see every piece
            for x in grid(12) {
                assert_eq!(fg.apply(&x).unwrap(), f.apply(&g.apply(&x).unwrap()).unwrap());
            }
            // breakpoints of f∘g lie in breakpoints(g) ∪ g⁻¹(breakpoints(f))
            let ginv = g.inverse();
            for b in &fg.breakpoints()[1..fg.len()] {
                let from_g = g.breakpoints().contains(b);
                let from_f = f.breakpoints()[1..f.len()].iter().any(|c| ginv.apply(c).unwrap() == *b);
                assert!(from_g || from_f);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn canonical_invariants(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_exchange(&mut rng, 8, 16);
            // unpartitioned ⟺ discontinuous at every interior breakpoint
            prop_assert!(f.perm().is_unpartitioned());
            for j in 1..f.len() {
                let left_limit = &f.breakpoints()[j] + &f.translations()[j - 1];
                let value = f.apply(&f.breakpoints()[j]).unwrap();
                prop_assert_ne!(left_limit, value);
            }
            // measure preservation: image intervals tile [0, 1)
            let mut images: Vec<_> = f.pieces().map(|(a, b, w)| (a + w, b + w)).collect();
            images.sort();
            prop_assert_eq!(&images[0].0, &Scalar::zero());
            prop_assert_eq!(&images[images.len() - 1].1, &Scalar::one());
            for w in images.windows(2) {
                prop_assert_eq!(&w[0].1, &w[1].0);
            }
            let mut dom: Vec<_> = f.lengths().to_vec();
            let mut img: Vec<_> = images.iter().map(|(a, b)| b - a).collect();
            dom.sort();
            img.sort();
            prop_assert_eq!(dom, img);
        }

        #[test]
        fn delta_inequalities(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_exchange(&mut rng, 8, 16);
            let g = random_exchange(&mut rng, 8, 16);
            let fg = f.compose(&g);
            prop_assert!(fg.delta() <= f.delta() + g.delta());
            prop_assert!(fg.delta() >= f.delta().abs_diff(g.delta()));
            prop_assert_eq!(f.inverse().delta(), f.delta());
        }
    }
}
