//! Versioned text formats for interval exchanges, step functions and flow
//! specifications.
//!
//! ```text
//! iet v1
//! field Q            (or: field Qsqrt 2)
//! n 4
//! perm 3 2 1 4
//! len 1/4 1/4 1/4 1/4
//! ```
//!
//! ```text
//! stepfn v1
//! field Q
//! breakpoints 0/1 1/2 1/1
//! values 1/1 0/1
//! ```
//!
//! ```text
//! flow v1
//! field Qsqrt 2
//! len 1/2 1/2
//! rates 1/1 0/1+1/1*sqrt(2)
//! conjugator h.iet
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Permutations are
//! 1-based. Sample directories hold one file per time, named
//! `t=<scalar>.iet` with every `/` of the scalar written as `_`.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::exchange::{canonicalize, IntervalExchange, LengthVector};
use crate::flows::FlowSpec;
use crate::perm::Permutation;
use crate::scalar::validate_radicand;
use crate::step::StepFunction;
use crate::{IetError, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Scalar { line: usize, source: ScalarError },
    #[error("line {line}: scalar {value} does not belong to field {field}")]
    FieldMismatch {
        line: usize,
        value: Box<Scalar>,
        field: Field,
    },
    #[error("{0}")]
    Invalid(#[from] IetError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    InFile { path: String, source: Box<FormatError> },
}

impl FormatError {
    fn in_file(self, path: &Path) -> Self {
        match self {
            e @ (FormatError::Io { .. } | FormatError::InFile { .. }) => e,
            e => FormatError::InFile {
                path: path.display().to_string(),
                source: Box::new(e),
            },
        }
    }
}

/// Scalar field declared by a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Quadratic(u64),
}

impl Field {
    /// Smallest field containing all of `values`; panics on mixed radicands.
    pub fn of<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Field {
        let mut field = Field::Rational;
        for v in values {
            if let Some(d) = v.radicand() {
                match field {
                    Field::Rational => field = Field::Quadratic(d),
                    Field::Quadratic(e) => assert_eq!(d, e, "mixed radicands"),
                }
            }
        }
        field
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x.radicand()) {
            (_, None) => true,
            (Field::Quadratic(d), Some(e)) => *d == e,
            (Field::Rational, Some(_)) => false,
        }
    }

    /// Whether values of `self` and `other` can be combined.
    pub fn compatible(&self, other: &Field) -> bool {
        match (self, other) {
            (Field::Quadratic(a), Field::Quadratic(b)) => a == b,
            _ => true,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Quadratic(d) => write!(f, "Qsqrt {d}"),
        }
    }
}

/// A parsed value plus notes about normalizations applied to the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

struct Record<'a> {
    line: usize,
    args: Vec<&'a str>,
}

struct Document<'a> {
    records: HashMap<&'a str, Record<'a>>,
    field: Field,
    field_line: usize,
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

impl<'a> Document<'a> {
    fn parse(text: &'a str, header: &str, keys: &[&str]) -> Result<Self, FormatError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, l)) if l.split_whitespace().collect::<Vec<_>>().join(" ") == header => {}
            Some((line, l)) => return Err(syntax(line, format!("expected header `{header}`, found `{l}`"))),
            None => return Err(syntax(1, format!("empty input, expected header `{header}`"))),
        }
        let mut records = HashMap::new();
        for (line, l) in lines {
            let mut words = l.split_whitespace();
            let key = words.next().expect("non-empty line");
            if !keys.contains(&key) {
                return Err(syntax(line, format!("unknown key `{key}`")));
            }
            let args = words.collect();
            if records.insert(key, Record { line, args }).is_some() {
                return Err(syntax(line, format!("duplicate key `{key}`")));
            }
        }
        let field_record = records.get("field").ok_or_else(|| syntax(0, "missing `field` line"))?;
        let field_line = field_record.line;
        let field = match field_record.args.as_slice() {
            ["Q"] => Field::Rational,
            ["Qsqrt", d] => {
                let d: u64 = d
                    .parse()
                    .map_err(|_| syntax(field_line, format!("bad radicand `{d}`")))?;
                validate_radicand(d).map_err(|source| FormatError::Scalar {
                    line: field_line,
                    source,
                })?;
                Field::Quadratic(d)
            }
            other => {
                return Err(syntax(
                    field_line,
                    format!("expected `field Q` or `field Qsqrt D`, found `{}`", other.join(" ")),
                ))
            }
        };
        Ok(Document {
            records,
            field,
            field_line,
        })
    }

    fn record(&self, key: &str) -> Result<&Record<'a>, FormatError> {
        self.records
            .get(key)
            .ok_or_else(|| syntax(0, format!("missing `{key}` line")))
    }

    fn scalars(&self, key: &str) -> Result<(Vec<Scalar>, usize), FormatError> {
        let rec = self.record(key)?;
        let values = rec
            .args
            .iter()
            .map(|tok| {
                let value: Scalar = tok
                    .parse()
                    .map_err(|source| FormatError::Scalar { line: rec.line, source })?;
                if !self.field.contains(&value) {
                    return Err(FormatError::FieldMismatch {
                        line: rec.line,
                        value: Box::new(value),
                        field: self.field,
                    });
                }
                Ok(value)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((values, rec.line))
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn parse_iet(text: &str) -> Result<Parsed<IntervalExchange>, FormatError> {
    let doc = Document::parse(text, "iet v1", &["field", "n", "perm", "len"])?;
    let n_rec = doc.record("n")?;
    let n: usize = match n_rec.args.as_slice() {
        [n] => n.parse().map_err(|_| syntax(n_rec.line, format!("bad count `{n}`")))?,
        _ => return Err(syntax(n_rec.line, "expected `n <count>`")),
    };
    let perm_rec = doc.record("perm")?;
    let images = perm_rec
        .args
        .iter()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| syntax(perm_rec.line, format!("bad permutation entry `{tok}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if images.len() != n {
        return Err(syntax(
            perm_rec.line,
            format!("expected {n} permutation entries, found {}", images.len()),
        ));
    }
    let (lengths, len_line) = doc.scalars("len")?;
    if lengths.len() != n {
        return Err(syntax(
            len_line,
            format!("expected {n} lengths, found {}", lengths.len()),
        ));
    }
    let perm = Permutation::from_one_based(&images)?;
    let lengths = LengthVector::closed(lengths)?;
    let canonical = perm.is_unpartitioned() && lengths.is_open();
    let value = canonicalize(&perm, &lengths)?;
    let mut warnings = Vec::new();
    if !canonical {
        warnings.push(format!(
            "input was not canonical; canonicalized to {} intervals with perm {}",
            value.len(),
            value.perm()
        ));
    }
    Ok(Parsed { value, warnings })
}

pub fn write_iet(f: &IntervalExchange) -> String {
    format!(
        "iet v1\nfield {}\nn {}\nperm {}\nlen {}\n",
        Field::of(f.lengths()),
        f.len(),
        f.perm(),
        join(f.lengths())
    )
}

pub fn parse_stepfn(text: &str) -> Result<StepFunction, FormatError> {
    let doc = Document::parse(text, "stepfn v1", &["field", "breakpoints", "values"])?;
    let (breakpoints, _) = doc.scalars("breakpoints")?;
    let (values, _) = doc.scalars("values")?;
    Ok(StepFunction::new(breakpoints, values)?)
}

pub fn write_stepfn(phi: &StepFunction) -> String {
    format!(
        "stepfn v1\nfield {}\nbreakpoints {}\nvalues {}\n",
        Field::of(phi.breakpoints().iter().chain(phi.values())),
        join(phi.breakpoints()),
        join(phi.values())
    )
}

/// Parses a flow specification; `resolve` loads the file named on the
/// `conjugator` line.
pub fn parse_flow<F>(text: &str, mut resolve: F) -> Result<FlowSpec, FormatError>
where
    F: FnMut(&str) -> Result<IntervalExchange, FormatError>,
{
    let doc = Document::parse(text, "flow v1", &["field", "len", "rates", "conjugator"])?;
    let (lengths, len_line) = doc.scalars("len")?;
    let (rates, rates_line) = doc.scalars("rates")?;
    if rates.len() != lengths.len() {
        return Err(syntax(
            rates_line,
            format!(
                "expected {} rates to match line {len_line}, found {}",
                lengths.len(),
                rates.len()
            ),
        ));
    }
    let conjugator = match doc.records.get("conjugator") {
        None => None,
        Some(rec) => match rec.args.as_slice() {
            [path] => {
                let h = resolve(path)?;
                if !doc.field.compatible(&Field::of(h.lengths())) {
                    return Err(syntax(
                        rec.line,
                        format!(
                            "conjugator `{path}` is over field {}, declared {} on line {}",
                            Field::of(h.lengths()),
                            doc.field,
                            doc.field_line
                        ),
                    ));
                }
                Some(h)
            }
            _ => return Err(syntax(rec.line, "expected `conjugator <path>`")),
        },
    };
    Ok(FlowSpec::new(LengthVector::open(lengths)?, rates, conjugator)?)
}

pub fn write_flow(spec: &FlowSpec, conjugator_path: Option<&str>) -> String {
    let lengths = spec.base_lengths().as_slice();
    let mut out = format!(
        "flow v1\nfield {}\nlen {}\nrates {}\n",
        Field::of(lengths.iter().chain(spec.rates())),
        join(lengths),
        join(spec.rates())
    );
    if let Some(p) = conjugator_path {
        out.push_str(&format!("conjugator {p}\n"));
    }
    out
}

fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_iet_file(path: &Path) -> Result<Parsed<IntervalExchange>, FormatError> {
    parse_iet(&read_text(path)?).map_err(|e| e.in_file(path))
}

pub fn read_stepfn_file(path: &Path) -> Result<StepFunction, FormatError> {
    parse_stepfn(&read_text(path)?).map_err(|e| e.in_file(path))
}

/// Reads a flow file; a relative conjugator path is taken relative to the
/// flow file's directory.
pub fn read_flow_file(path: &Path) -> Result<FlowSpec, FormatError> {
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_flow(&read_text(path)?, |rel| {
        let p = base.join(rel);
        read_iet_file(&p).map(|parsed| parsed.value)
    })
    .map_err(|e| e.in_file(path))
}

/// `t=<scalar>.iet` with `/` written as `_`.
pub fn sample_file_name(t: &Scalar) -> String {
    format!("t={}.iet", t.to_string().replace('/', "_"))
}

/// Time encoded in a sample file name, if it follows the convention.
pub fn parse_sample_file_name(name: &str) -> Option<Result<Scalar, ScalarError>> {
    let body = name.strip_prefix("t=")?.strip_suffix(".iet")?;
    Some(body.replace('_', "/").parse())
}

/// All `t=<scalar>.iet` files of a directory, sorted by time.
pub fn read_sample_dir(dir: &Path) -> Result<Vec<(Scalar, IntervalExchange)>, FormatError> {
    let io_err = |e: std::io::Error| FormatError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err)?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io_err)?;
    paths.sort();
    let mut samples = Vec::new();
    for path in paths {
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
            continue;
        };
        let Some(time) = parse_sample_file_name(name) else {
            continue;
        };
        let time = time.map_err(|source| FormatError::Scalar { line: 0, source }.in_file(&path))?;
        samples.push((time, read_iet_file(&path)?.value));
    }
    samples.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::golden_gn;
    use crate::random::random_exchange;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const G2: &str = "iet v1\nfield Q\nn 4\nperm 3 2 1 4\nlen 1/4 1/4 1/4 1/4\n";

    #[test]
    fn reads_and_writes_the_documented_example() {
        let parsed = parse_iet(G2).unwrap();
        assert!(parsed.warnings.is_empty());
        assert_eq!(parsed.value, golden_gn(2).unwrap());
        assert_eq!(write_iet(&parsed.value), G2);
    }

    #[test]
    fn accepts_non_canonical_with_warning() {
        let text = "iet v1\nfield Q\nn 4\nperm 3 4 1 2\nlen 1/4 1/4 1/4 1/4\n";
        let parsed = parse_iet(text).unwrap();
        assert_eq!(parsed.value, IntervalExchange::rotation(&Scalar::ratio(1, 2)));
        assert_eq!(parsed.warnings.len(), 1);
        let zero = "iet v1\nfield Q\nn 2\nperm 2 1\nlen 1/1 0/1\n";
        assert_eq!(parse_iet(zero).unwrap().value, IntervalExchange::identity());
    }

    #[test]
    fn rejects_invalid_content() {
        let bad_perm = "iet v1\nfield Q\nn 2\nperm 1 1\nlen 1/2 1/2\n";
        assert!(matches!(
            parse_iet(bad_perm),
            Err(FormatError::Invalid(IetError::NotBijective { .. }))
        ));
        let bad_sum = "iet v1\nfield Q\nn 2\nperm 2 1\nlen 1/2 1/3\n";
        assert!(matches!(
            parse_iet(bad_sum),
            Err(FormatError::Invalid(IetError::LengthSum(_)))
        ));
        let negative = "iet v1\nfield Q\nn 2\nperm 2 1\nlen 3/2 -1/2\n";
        assert!(matches!(
            parse_iet(negative),
            Err(FormatError::Invalid(IetError::NegativeLength { .. }))
        ));
        let wrong_field = "iet v1\nfield Q\nn 2\nperm 2 1\nlen 1/2+1/2*sqrt(2) 1/2+-1/2*sqrt(2)\n";
        assert!(matches!(
            parse_iet(wrong_field),
            Err(FormatError::FieldMismatch { line: 5, .. })
        ));
        let other_radicand = "iet v1\nfield Qsqrt 3\nn 2\nperm 2 1\nlen 1/2+1/2*sqrt(2) 1/2+-1/2*sqrt(2)\n";
        assert!(matches!(
            parse_iet(other_radicand),
            Err(FormatError::FieldMismatch { .. })
        ));
        assert!(matches!(
            parse_iet("iet v2\n"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
        let bad_scalar = "iet v1\nfield Q\nn 2\nperm 2 1\nlen 1/2 x\n";
        match parse_iet(bad_scalar) {
            Err(FormatError::Scalar {
                line: 5,
                source: ScalarError::Parse { token, .. },
            }) => assert_eq!(token, "x"),
            other => panic!("{other:?}"),
        }
        let count = "iet v1\nfield Q\nn 3\nperm 2 1\nlen 1/2 1/2\n";
        assert!(matches!(parse_iet(count), Err(FormatError::Syntax { line: 4, .. })));
    }

    #[test]
    fn quadratic_field_round_trip() {
        let r = IntervalExchange::rotation(&(Scalar::sqrt(2).unwrap() - Scalar::one()));
        let text = write_iet(&r);
        assert!(text.contains("field Qsqrt 2\n"));
        assert_eq!(parse_iet(&text).unwrap().value, r);
    }

    #[test]
    fn stepfn_round_trip() {
        let phi = StepFunction::indicator(&Scalar::zero(), &Scalar::ratio(1, 2)).unwrap();
        let text = write_stepfn(&phi);
        assert_eq!(text, "stepfn v1\nfield Q\nbreakpoints 0/1 1/2 1/1\nvalues 1/1 0/1\n");
        assert_eq!(parse_stepfn(&text).unwrap(), phi);
    }

    #[test]
    fn flow_with_conjugator() {
        let text = "flow v1\nfield Qsqrt 2\nlen 1/2 1/2\nrates 1/1 0/1+1/1*sqrt(2)\nconjugator h.iet\n";
        let spec = parse_flow(text, |p| {
            assert_eq!(p, "h.iet");
            Ok(golden_gn(2).unwrap())
        })
        .unwrap();
        assert_eq!(spec.conjugator(), Some(&golden_gn(2).unwrap()));
        assert_eq!(write_flow(&spec, Some("h.iet")), text);
        let mismatch = "flow v1\nfield Q\nlen 1/1\nrates 1/1 2/1\n";
        assert!(matches!(
            parse_flow(mismatch, |_| unreachable!()),
            Err(FormatError::Syntax { line: 4, .. })
        ));
    }

    #[test]
    fn sample_names() {
        let t = Scalar::ratio(1, 8) + Scalar::ratio(1, 3) * Scalar::sqrt(2).unwrap();
        let name = sample_file_name(&t);
        assert_eq!(name, "t=1_8+1_3*sqrt(2).iet");
        assert_eq!(parse_sample_file_name(&name), Some(Ok(t)));
        assert_eq!(parse_sample_file_name("notes.txt"), None);
    }

    proptest! {
        #[test]
        fn iet_text_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_exchange(&mut rng, 8, 30);
            let parsed = parse_iet(&write_iet(&f)).unwrap();
            prop_assert!(parsed.warnings.is_empty());
            prop_assert_eq!(parsed.value, f);
        }
    }
}
