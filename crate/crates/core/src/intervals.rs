//! Finite unions of half-open intervals `[a, b)` in `[0, 1)`.

use std::fmt;

use crate::exchange::IntervalExchange;
use crate::Scalar;

/// Canonical element of the set algebra of finite unions of half-open
/// intervals: sorted, pairwise disjoint, non-adjacent, non-empty pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntervalUnion {
    intervals: Vec<(Scalar, Scalar)>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        IntervalUnion {
            intervals: vec![(Scalar::zero(), Scalar::one())],
        }
    }

    /// Normalizes arbitrary intervals: empty ones dropped, overlapping or
    /// touching ones merged.
    pub fn from_intervals<I>(intervals: I) -> Self
    where
        I: IntoIterator<Item = (Scalar, Scalar)>,
    {
        let mut raw: Vec<_> = intervals.into_iter().filter(|(a, b)| a < b).collect();
        raw.sort_by(|x, y| x.0.cmp(&y.0));
        let mut out: Vec<(Scalar, Scalar)> = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            match out.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        IntervalUnion { intervals: out }
    }

    pub fn intervals(&self) -> &[(Scalar, Scalar)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> Scalar {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        let k = self.intervals.partition_point(|(a, _)| a <= x);
        k > 0 && *x < self.intervals[k - 1].1
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a, b) = &self.intervals[i];
            let (c, d) = &other.intervals[j];
            let lo = a.clone().max(c.clone());
            let hi = b.clone().min(d.clone());
            if lo < hi {
                out.push((lo, hi));
            }
            if b < d {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_intervals(out)
    }

    /// Complement in `[0, 1)`.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut cursor = Scalar::zero();
        for (a, b) in &self.intervals {
            out.push((cursor, a.clone()));
            cursor = b.clone();
        }
        out.push((cursor, Scalar::one()));
        Self::from_intervals(out)
    }

    /// `h(self)`: each interval is cut at the breakpoints of `h` and the
    /// pieces translated.
    pub fn image_under(&self, h: &IntervalExchange) -> Self {
        let mut out = Vec::new();
        for (a, b) in &self.intervals {
            let mut lo = a.clone();
            let mut k = h.locate(&lo);
            while lo < *b {
                let cut = h.breakpoints()[k + 1].clone().min(b.clone());
                let w = &h.translations()[k];
                out.push((&lo + w, &cut + w));
                lo = cut;
                k += 1;
            }
        }
        Self::from_intervals(out)
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("empty");
        }
        for (k, (a, b)) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "[{a}, {b})")?;
        }
        Ok(())
    }
}
