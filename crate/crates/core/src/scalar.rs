//! Exact scalars in `Q` or a real quadratic field `Q(sqrt(d))`.
//!
//! A [`Scalar`] denotes the real number `a + b*sqrt(d)` with `a`, `b`
//! arbitrary-precision rationals. Values whose radical part is zero are plain
//! rationals and combine with any field. Combining two different radicands is
//! an unsupported-field error: the `checked_*` methods report it, the operator
//! impls panic on it.
//!
//! Text grammar: `p/q` or `p/q+r/s*sqrt(D)`, signs allowed on `p` and `r`.
//! Formatting always emits the canonical lowest-terms form of that grammar.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("unsupported field: cannot combine sqrt({0}) with sqrt({1})")]
    MixedRadicands(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid radicand {0}: expected a squarefree non-square integer > 1")]
    InvalidRadicand(u64),
    #[error("malformed scalar `{token}`: {reason}")]
    Parse { token: String, reason: String },
}

fn parse_error(token: &str, reason: impl Into<String>) -> ScalarError {
    ScalarError::Parse {
        token: token.to_string(),
        reason: reason.into(),
    }
}

/// Checks that `d` is a valid radicand: squarefree, not a perfect square, `d > 1`.
pub fn validate_radicand(d: u64) -> Result<(), ScalarError> {
    if d < 2 {
        return Err(ScalarError::InvalidRadicand(d));
    }
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return Err(ScalarError::InvalidRadicand(d));
        }
        p += 1;
    }
    Ok(())
}

/// Exact element of `Q` or `Q(sqrt(d))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    rational: BigRational,
    radical: BigRational,
    /// `0` iff `radical` is zero.
    radicand: u64,
}

fn join_radicands(a: u64, b: u64) -> Result<u64, ScalarError> {
    match (a, b) {
        (0, d) | (d, 0) => Ok(d),
        (x, y) if x == y => Ok(x),
        (x, y) => Err(ScalarError::MixedRadicands(x, y)),
    }
}

/// Sign of `a + b*sqrt(d)` by sign analysis and exact squaring.
fn sign_of(a: &BigRational, b: &BigRational, d: u64) -> Ordering {
    let zero = BigRational::zero();
    let sa = a.cmp(&zero);
    let sb = b.cmp(&zero);
    match (sa, sb) {
        (_, Ordering::Equal) => sa,
        (Ordering::Equal, _) => sb,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        _ => {
            let a2 = a * a;
            let b2d = b * b * BigRational::from_integer(BigInt::from(d));
            if sa == Ordering::Greater {
                a2.cmp(&b2d)
            } else {
                b2d.cmp(&a2)
            }
        }
    }
}

impl Scalar {
    fn build(rational: BigRational, radical: BigRational, radicand: u64) -> Self {
        if radical.is_zero() {
            Scalar {
                rational,
                radical,
                radicand: 0,
            }
        } else {
            Scalar {
                rational,
                radical,
                radicand,
            }
        }
    }

    /// `rational + radical*sqrt(radicand)`; the radicand is validated only when
    /// the radical part is nonzero.
    pub fn new(rational: BigRational, radical: BigRational, radicand: u64) -> Result<Self, ScalarError> {
        if !radical.is_zero() {
            validate_radicand(radicand)?;
        }
        Ok(Self::build(rational, radical, radicand))
    }

    pub fn zero() -> Self {
        Self::build(BigRational::zero(), BigRational::zero(), 0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `sqrt(d)` for a valid radicand `d`.
    pub fn sqrt(d: u64) -> Result<Self, ScalarError> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.radical
    }

    /// The radicand, or `None` for a rational value.
    pub fn radicand(&self) -> Option<u64> {
        (self.radicand != 0).then_some(self.radicand)
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.rational.is_integer()
    }

    /// Sign as an ordering against zero.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.rational, &self.radical, self.radicand)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = join_radicands(self.radicand, other.radicand)?;
        Ok(Self::build(
            &self.rational + &other.rational,
            &self.radical + &other.radical,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = join_radicands(self.radicand, other.radicand)?;
        Ok(Self::build(
            &self.rational - &other.rational,
            &self.radical - &other.radical,
            d,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = join_radicands(self.radicand, other.radicand)?;
        let dq = BigRational::from_integer(BigInt::from(d));
        let rational = &self.rational * &other.rational + &self.radical * &other.radical * dq;
        let radical = &self.rational * &other.radical + &self.radical * &other.rational;
        Ok(Self::build(rational, radical, d))
    }

    /// Multiplicative inverse via the conjugate `a - b*sqrt(d)`.
    pub fn checked_recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let dq = BigRational::from_integer(BigInt::from(self.radicand));
        let norm = &self.rational * &self.rational - &self.radical * &self.radical * dq;
        Ok(Self::build(
            &self.rational / &norm,
            -(&self.radical / &norm),
            self.radicand,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        join_radicands(self.radicand, other.radicand)?;
        self.checked_mul(&other.checked_recip()?)
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering, ScalarError> {
        let diff = self.checked_sub(other)?;
        Ok(diff.signum())
    }

    /// Largest integer `k` with `k <= self`.
    pub fn floor(&self) -> BigInt {
        let base = self.rational.floor().to_integer();
        if self.radical.is_zero() {
            return base;
        }
        // floor(|b| sqrt(d)) = floor(sqrt(p q) / q) where b^2 d = p / q.
        let sq = &self.radical * &self.radical * BigRational::from_integer(BigInt::from(self.radicand));
        let (p, q) = (sq.numer(), sq.denom());
        let m = (p * q).sqrt().div_floor(q);
        // b sqrt(d) is irrational, so floor(-y) = -floor(y) - 1.
        let radical_floor = if self.radical.is_positive() { m } else { -m - 1 };
        // floor(a) + floor(c) <= floor(a + c) <= floor(a) + floor(c) + 1
        let mut k = base + radical_floor;
        while Scalar::from(&k + 1) <= *self {
            k += 1;
        }
        while Scalar::from(k.clone()) > *self {
            k -= 1;
        }
        k
    }

    /// `(k, r)` with `self = k + r`, `k` an integer, `0 <= r < 1`.
    pub fn floor_frac(&self) -> (BigInt, Scalar) {
        let k = self.floor();
        let r = self - &Scalar::from(k.clone());
        (k, r)
    }

    /// Fractional part in `[0, 1)`.
    pub fn frac(&self) -> Scalar {
        self.floor_frac().1
    }

    /// Decimal rendering with `sig` significant digits, rounded half up.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig > 0);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let x = self.abs();
        let ten = BigInt::from(10);
        // 10^e <= x < 10^(e+1)
        let mut e: i64 = if x >= Scalar::one() {
            x.floor().to_string().len() as i64 - 1
        } else {
            let mut e = -1;
            while &x * &Scalar::from(num_traits::pow(ten.clone(), (-e) as usize)) < Scalar::one() {
                e -= 1;
            }
            e
        };
        let scaled_digits = |e: i64| -> BigInt {
            let shift = sig as i64 - 1 - e;
            let scale = Scalar::from(num_traits::pow(ten.clone(), shift.unsigned_abs() as usize));
            let y = if shift >= 0 { &x * &scale } else { &x / &scale };
            (y + Scalar::ratio(1, 2)).floor()
        };
        let mut digits = scaled_digits(e);
        if digits.to_string().len() > sig {
            e += 1;
            digits = scaled_digits(e);
        }
        let s = digits.to_string();
        let shift = sig as i64 - 1 - e;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        if shift <= 0 {
            out.push_str(&s);
            out.extend(std::iter::repeat_n('0', (-shift) as usize));
        } else if shift as usize >= s.len() {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', shift as usize - s.len()));
            out.push_str(&s);
        } else {
            let split = s.len() - shift as usize;
            out.push_str(&s[..split]);
            out.push('.');
            out.push_str(&s[split..]);
        }
        out
    }

    /// Nearest-ish `f64`, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.radical.is_zero() {
            return a;
        }
        a + self.radical.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::build(r, BigRational::zero(), 0)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from(BigRational::from_integer(n))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics when comparing values from two different quadratic fields.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.radicand == other.radicand && self.radical == other.radical {
            return self.rational.cmp(&other.rational);
        }
        match self.checked_cmp(other) {
            Ok(o) => o,
            Err(e) => panic!("{e}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::build(-&self.rational, -&self.radical, self.radicand)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    write!(f, "{}/{}", r.numer(), r.denom())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.rational)?;
        if !self.radical.is_zero() {
            f.write_str("+")?;
            write_rational(f, &self.radical)?;
            write!(f, "*sqrt({})", self.radicand)?;
        }
        Ok(())
    }
}

fn parse_digits(token: &str, digits: &str) -> Result<BigInt, ScalarError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(token, "expected decimal digits"));
    }
    Ok(digits.parse::<BigInt>().expect("digits"))
}

/// `[+-]p` or `[+-]p/q`.
fn parse_rational(token: &str) -> Result<BigRational, ScalarError> {
    let (negative, body) = match token.as_bytes().first() {
        Some(b'-') => (true, &token[1..]),
        Some(b'+') => (false, &token[1..]),
        _ => (false, token),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (parse_digits(token, n)?, parse_digits(token, d)?),
        None => (parse_digits(token, body)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(parse_error(token, "zero denominator"));
    }
    let r = BigRational::new(num, den);
    Ok(if negative { -r } else { r })
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.is_empty() {
            return Err(parse_error(text, "empty scalar"));
        }
        let Some(idx) = text.find("sqrt(") else {
            return Ok(Scalar::from(parse_rational(text)?));
        };
        let head = text[..idx]
            .strip_suffix('*')
            .ok_or_else(|| parse_error(text, "expected `*` before `sqrt(`"))?;
        let inner = text[idx + 5..]
            .strip_suffix(')')
            .ok_or_else(|| parse_error(&text[idx..], "expected closing `)`"))?;
        let radicand_int = parse_digits(inner, inner)?;
        let radicand = radicand_int
            .to_u64()
            .ok_or_else(|| parse_error(inner, "radicand too large"))?;
        validate_radicand(radicand)
            .map_err(|_| parse_error(inner, "radicand must be a squarefree non-square integer > 1"))?;
        // Split `p/q+r/s` at the last sign that follows a digit.
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit());
        let (rational, radical) = match split {
            Some(i) => {
                let coeff = if bytes[i] == b'+' { &head[i + 1..] } else { &head[i..] };
                (parse_rational(&head[..i])?, parse_rational(coeff)?)
            }
            None => (BigRational::zero(), parse_rational(head)?),
        };
        Ok(Scalar::build(rational, radical, radicand))
    }
}
