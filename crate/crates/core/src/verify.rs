//! Finite-sample checker for one-parameter families `t ↦ f_t`.
//!
//! Given exact samples `(t_i, f_{t_i})` the checker can refute that they come
//! from a rotation flow (with an explicit witness) but can only ever report
//! consistency. Three checks run in order:
//!
//! 1. homomorphism: `f_{s+t} = f_s ∘ f_t` whenever `s`, `t` and `s + t` are
//!    all sampled;
//! 2. bounded discontinuities: along every arithmetic progression of sampled
//!    times, `δ` must not increase strictly over [`GROWTH_RUN`] consecutive
//!    samples;
//! 3. local translation: on each interval of the common refinement of all
//!    sampled partitions, the rate `α` read off the smallest positive time
//!    (`f_t(x) = x + tα` on the circle) is compared against the next time.

use std::collections::HashMap;

use thiserror::Error;

use crate::exchange::IntervalExchange;
use crate::intervals::IntervalUnion;
use crate::metric::signed_circle_rep;
use crate::Scalar;

/// Strictly increasing `δ` over this many consecutive samples of an
/// arithmetic progression of times refutes a rotation flow.
pub const GROWTH_RUN: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("no samples")]
    Empty,
    #[error("duplicate sample time {0}")]
    DuplicateTime(Box<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Witness {
    /// The sample at `t = 0` is not the identity.
    NonIdentityAtZero,
    /// `f_{s+t} ≠ f_s ∘ f_t`.
    Homomorphism { s: Scalar, t: Scalar, sum: Scalar },
    /// `δ` strictly increasing along the progression `times`.
    DeltaGrowth { times: Vec<Scalar>, deltas: Vec<usize> },
}

/// Rate reconstructed on one interval of the refinement. `rate` is `None`
/// when the two smallest positive times disagree there (the interval is
/// within one sampled step of an exceptional point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateInterval {
    pub start: Scalar,
    pub end: Scalar,
    pub rate: Option<Scalar>,
    /// Positive sampled times at which `f_t = x + tα (mod 1)` holds here.
    pub agreeing_times: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Verdict {
    ConsistentWithRotation {
        rates: Vec<RateInterval>,
        /// Points fixed by every sample.
        fixed: IntervalUnion,
        max_delta: usize,
    },
    NotRotation(Witness),
    Inconclusive {
        max_delta: usize,
    },
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::ConsistentWithRotation { .. })
    }

    pub fn is_not_rotation(&self) -> bool {
        matches!(self, Verdict::NotRotation(_))
    }
}

pub fn verify_rotation_family(samples: &[(Scalar, IntervalExchange)]) -> Result<Verdict, VerifyError> {
    if samples.is_empty() {
        return Err(VerifyError::Empty);
    }
    let mut by_time: HashMap<&Scalar, &IntervalExchange> = HashMap::new();
    for (t, f) in samples {
        if by_time.insert(t, f).is_some() {
            return Err(VerifyError::DuplicateTime(Box::new(t.clone())));
        }
    }
    let zero = Scalar::zero();
    let identity = IntervalExchange::identity();
    match by_time.get(&zero) {
        Some(f) if !f.is_identity() => return Ok(Verdict::NotRotation(Witness::NonIdentityAtZero)),
        Some(_) => {}
        None => {
            by_time.insert(&zero, &identity);
        }
    }
    let mut times: Vec<&Scalar> = by_time.keys().copied().collect();
    times.sort();

    if let Some(w) = check_homomorphism(&times, &by_time) {
        return Ok(Verdict::NotRotation(w));
    }
    if let Some(w) = check_growth(&times, &by_time) {
        return Ok(Verdict::NotRotation(w));
    }
    let max_delta = by_time.values().map(|f| f.delta()).max().unwrap_or(1);
    let positive: Vec<&Scalar> = times.iter().copied().filter(|t| t.is_positive()).collect();
    if positive.len() < 2 {
        return Ok(Verdict::Inconclusive { max_delta });
    }
    let rates = local_rates(&positive, &by_time);
    let fixed = by_time
        .values()
        .fold(IntervalUnion::full(), |acc, f| acc.intersection(&f.fix_set()));
    Ok(Verdict::ConsistentWithRotation {
        rates,
        fixed,
        max_delta,
    })
}

fn check_homomorphism(times: &[&Scalar], by_time: &HashMap<&Scalar, &IntervalExchange>) -> Option<Witness> {
    for &s in times {
        for &t in times {
            let sum = s + t;
            if let Some(f_sum) = by_time.get(&sum) {
                if by_time[s].compose(by_time[t]) != **f_sum {
                    return Some(Witness::Homomorphism {
                        s: s.clone(),
                        t: t.clone(),
                        sum,
                    });
                }
            }
        }
    }
    None
}

fn check_growth(times: &[&Scalar], by_time: &HashMap<&Scalar, &IntervalExchange>) -> Option<Witness> {
    for (i, &start) in times.iter().enumerate() {
        for &next in &times[i + 1..] {
            let step = next - start;
            // only walk maximal progressions
            if by_time.contains_key(&(start - &step)) {
                continue;
            }
            let mut progression = vec![start.clone()];
            let mut t = start.clone();
            loop {
                t = &t + &step;
                if !by_time.contains_key(&t) {
                    break;
                }
                progression.push(t.clone());
            }
            let deltas: Vec<usize> = progression.iter().map(|t| by_time[t].delta()).collect();
            let mut run_start = 0;
            for k in 1..=deltas.len() {
                if k == deltas.len() || deltas[k] <= deltas[k - 1] {
                    if k - run_start >= GROWTH_RUN {
                        return Some(Witness::DeltaGrowth {
                            times: progression[run_start..k].to_vec(),
                            deltas: deltas[run_start..k].to_vec(),
                        });
                    }
                    run_start = k;
                }
            }
        }
    }
    None
}

fn local_rates(positive: &[&Scalar], by_time: &HashMap<&Scalar, &IntervalExchange>) -> Vec<RateInterval> {
    let mut cuts: Vec<Scalar> = by_time.values().flat_map(|f| f.breakpoints().iter().cloned()).collect();
    cuts.sort();
    cuts.dedup();
    let translation_at = |t: &Scalar, x: &Scalar| {
        let f = by_time[t];
        f.apply(x).expect("refinement point in [0, 1)") - x
    };
    cuts.windows(2)
        .map(|w| {
            let (start, end) = (&w[0], &w[1]);
            let (t1, t2) = (positive[0], positive[1]);
            let alpha = signed_circle_rep(&translation_at(t1, start)) / t1;
            let agrees = |t: &Scalar| signed_circle_rep(&(translation_at(t, start) - t * &alpha)).is_zero();
            let rate = agrees(t2).then(|| alpha.clone());
            let agreeing_times = positive.iter().filter(|t| agrees(t)).count();
            RateInterval {
                start: start.clone(),
                end: end.clone(),
                rate,
                agreeing_times,
            }
        })
        .collect()
}
