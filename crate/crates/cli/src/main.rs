//! `iet`: exact interval exchange computations on text files.

mod error;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use iet_core::format::{read_flow_file, read_iet_file, read_sample_dir, write_iet};
use iet_core::growth::GrowthReport;
use iet_core::plot::segments_tsv;
use iet_core::verify::{RateInterval, Witness};
use iet_core::{
    decompose_standard, distance, flow_at, golden_fn, golden_gn, growth, plot_segments, restricted_rotation,
    sup_displacement, torus_element, verify_rotation_family, FlowSpec, GrowthOptions, IntervalExchange, LengthVector,
    Scalar, TorusPoint, Verdict,
};

use error::{CliError, Kind};

const DECIMAL_DIGITS: usize = 30;

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "iet",
    version,
    about = "Exact computations with interval exchange transformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write A∘B (apply B first).
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write the inverse map.
    Invert {
        a: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Print A(x) for x in [0, 1).
    Apply {
        a: PathBuf,
        #[arg(value_parser = parse_scalar, allow_hyphen_values = true)]
        x: Scalar,
    },
    /// Print the integral circle distance d(A, B).
    Dist { a: PathBuf, b: PathBuf },
    /// Print the largest circle displacement between A and B.
    Sup { a: PathBuf, b: PathBuf },
    /// Print the number of discontinuities, counting 0.
    Delta { a: PathBuf },
    /// Print the fixed set as half-open intervals.
    Fixset { a: PathBuf },
    /// Write the standard torus element for block lengths and angles
    /// (angles are reduced mod 1).
    Torus {
        /// Comma-separated block lengths.
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_scalar, allow_hyphen_values = true)]
        len: Vec<Scalar>,
        /// Comma-separated angles, one per block.
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_scalar, allow_hyphen_values = true)]
        alpha: Vec<Scalar>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Split A into invariant rotation blocks, or print the offending block.
    Decompose { a: PathBuf },
    /// Write the flow element at time t.
    Flow {
        spec: PathBuf,
        #[arg(long = "t", value_parser = parse_scalar, allow_hyphen_values = true)]
        t: Scalar,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Check a directory of `t=<scalar>.iet` samples against rotation flows.
    VerifyRotation { dir: PathBuf },
    /// Record discontinuity counts of the powers of a map.
    Growth {
        /// Map file.
        #[arg(long, required_unless_present = "rt", conflicts_with_all = ["rt", "rr"])]
        map: Option<PathBuf>,
        /// Build h = r_t∘r_(s,δ) inline: rotation amount t.
        #[arg(long, requires = "rr", value_parser = parse_scalar, allow_hyphen_values = true)]
        rt: Option<Scalar>,
        /// Restricted rotation parameters s and δ.
        #[arg(long, num_args = 2, value_names = ["S", "DELTA"], requires = "rt", value_parser = parse_scalar, allow_hyphen_values = true)]
        rr: Vec<Scalar>,
        #[arg(short = 'N', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        tsv: Option<PathBuf>,
        /// Stop with a capacity error when a power exceeds this many intervals.
        #[arg(long)]
        max_delta: Option<usize>,
        /// Stop with a capacity error after this many seconds.
        #[arg(long)]
        max_seconds: Option<f64>,
    },
    /// Write a member of a reference sequence.
    Golden {
        which: Sequence,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write graph segments as TSV.
    Plot {
        a: PathBuf,
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sequence {
    Fn,
    Gn,
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.parse::<Scalar>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let message = rendered
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            let err = CliError::usage("argv", message);
            eprintln!("{err}");
            return err.kind.exit_code();
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            err.kind.exit_code()
        }
    }
}

fn show(path: &Path) -> String {
    path.display().to_string()
}

fn load(path: &Path) -> CliResult<IntervalExchange> {
    let parsed = read_iet_file(path).map_err(|e| CliError::from_format(show(path), e))?;
    for w in parsed.warnings {
        eprintln!("warning {}: {w}", show(path));
    }
    Ok(parsed.value)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::new(Kind::Io, show(p), e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::new(Kind::Io, "stdout", e)),
    }
}

fn println_out(text: impl AsRef<str>) -> CliResult {
    emit(None, &format!("{}\n", text.as_ref()))
}

/// Common radicand of a collection of scalars, or a field-mismatch error
/// naming `input`.
fn common_field<'a>(input: &str, values: impl IntoIterator<Item = &'a Scalar>) -> CliResult<Option<u64>> {
    let mut field = None;
    for v in values {
        match (field, v.radicand()) {
            (_, None) => {}
            (None, Some(d)) => field = Some(d),
            (Some(d), Some(e)) if d == e => {}
            (Some(d), Some(e)) => {
                return Err(CliError::format(
                    input,
                    format!("field mismatch: sqrt({d}) and sqrt({e})"),
                ));
            }
        }
    }
    Ok(field)
}

fn map_scalars(f: &IntervalExchange) -> impl Iterator<Item = &Scalar> {
    f.lengths().iter()
}

fn check_pair(pa: &Path, a: &IntervalExchange, pb: &Path, b: &IntervalExchange) -> CliResult {
    let input = format!("{} {}", show(pa), show(pb));
    common_field(&input, map_scalars(a).chain(map_scalars(b))).map(|_| ())
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Compose { a, b, o } => {
            let (f, g) = (load(&a)?, load(&b)?);
            check_pair(&a, &f, &b, &g)?;
            emit(o.as_deref(), &write_iet(&f.compose(&g)))
        }
        Command::Invert { a, o } => emit(o.as_deref(), &write_iet(&load(&a)?.inverse())),
        Command::Apply { a, x } => {
            let f = load(&a)?;
            common_field(&show(&a), map_scalars(&f).chain([&x]))?;
            let y = f.apply(&x).map_err(|e| CliError::usage(x.to_string(), e))?;
            println_out(y.to_string())
        }
        Command::Dist { a, b } => {
            let (f, g) = (load(&a)?, load(&b)?);
            check_pair(&a, &f, &b, &g)?;
            println_out(distance(&f, &g).to_string())
        }
        Command::Sup { a, b } => {
            let (f, g) = (load(&a)?, load(&b)?);
            check_pair(&a, &f, &b, &g)?;
            println_out(sup_displacement(&f, &g).to_string())
        }
        Command::Delta { a } => println_out(load(&a)?.delta().to_string()),
        Command::Fixset { a } => println_out(load(&a)?.fix_set().to_string()),
        Command::Torus { len, alpha, o } => {
            common_field("argv", len.iter().chain(&alpha))?;
            let lambda = LengthVector::open(len).map_err(|e| CliError::usage("--len", e))?;
            let f = torus_element(&lambda, &TorusPoint::wrapping(alpha)).map_err(|e| CliError::usage("--alpha", e))?;
            emit(o.as_deref(), &write_iet(&f))
        }
        Command::Decompose { a } => {
            let mut lines = Vec::new();
            match decompose_standard(&load(&a)?) {
                Ok(dec) => {
                    lines.push("standard yes".to_string());
                    for b in &dec.blocks {
                        lines.push(format!(
                            "block [{}, {}) shift {} rate {}",
                            b.start,
                            b.end,
                            b.shift,
                            b.rate()
                        ));
                    }
                }
                Err(w) => {
                    lines.push("standard no".to_string());
                    lines.push(format!("witness {w}"));
                }
            }
            println_out(lines.join("\n"))
        }
        Command::Flow { spec, t, o } => {
            let flow = read_flow_file(&spec).map_err(|e| CliError::from_format(show(&spec), e))?;
            check_flow_field(&spec, &flow, &t)?;
            emit(o.as_deref(), &write_iet(&flow_at(&flow, &t)))
        }
        Command::VerifyRotation { dir } => {
            let samples = read_sample_dir(&dir).map_err(|e| CliError::from_format(show(&dir), e))?;
            common_field(
                &show(&dir),
                samples
                    .iter()
                    .flat_map(|(t, f)| std::iter::once(t).chain(map_scalars(f))),
            )?;
            let verdict = verify_rotation_family(&samples).map_err(|e| CliError::format(show(&dir), e))?;
            println_out(render_verdict(samples.len(), &verdict))
        }
        Command::Growth {
            map,
            rt,
            rr,
            n,
            tsv,
            max_delta,
            max_seconds,
        } => {
            let (input, h) = match (map, rt) {
                (Some(path), _) => (show(&path), load(&path)?),
                (None, Some(t)) => {
                    common_field("argv", [&t].into_iter().chain(&rr))?;
                    let r = restricted_rotation(&rr[0], &rr[1]).map_err(|e| CliError::usage("--rr", e))?;
                    ("inline map".to_string(), IntervalExchange::rotation(&t).compose(&r))
                }
                (None, None) => return Err(CliError::usage("argv", "one of --map or --rt/--rr is required")),
            };
            let opts = GrowthOptions { max_delta, max_seconds };
            let report = growth(&h, n, &opts).map_err(|e| CliError::from_growth(input, e))?;
            if let Some(path) = tsv {
                emit(Some(&path), &growth_tsv(&report))?;
            }
            println_out(render_growth(&report))
        }
        Command::Golden { which, n, o } => {
            let f = match which {
                Sequence::Fn => golden_fn(n),
                Sequence::Gn => golden_gn(n),
            }
            .map_err(|e| CliError::usage(n.to_string(), e))?;
            emit(o.as_deref(), &write_iet(&f))
        }
        Command::Plot { a, tsv } => emit(tsv.as_deref(), &segments_tsv(&plot_segments(&load(&a)?))),
    }
}

fn check_flow_field(path: &Path, flow: &FlowSpec, t: &Scalar) -> CliResult {
    let conj = flow.conjugator().into_iter().flat_map(map_scalars);
    let values = flow
        .base_lengths()
        .as_slice()
        .iter()
        .chain(flow.rates())
        .chain(conj)
        .chain([t]);
    common_field(&show(path), values).map(|_| ())
}

fn render_verdict(count: usize, verdict: &Verdict) -> String {
    let mut lines = Vec::new();
    match verdict {
        Verdict::ConsistentWithRotation {
            rates,
            fixed,
            max_delta,
        } => {
            lines.push("verdict consistent-with-rotation".to_string());
            lines.push(format!("samples {count}"));
            lines.push(format!("max_delta {max_delta}"));
            lines.push(format!("fixed {fixed}"));
            for RateInterval {
                start,
                end,
                rate,
                agreeing_times,
            } in rates
            {
                let rate = rate.as_ref().map_or("unknown".to_string(), ToString::to_string);
                lines.push(format!("rate [{start}, {end}) {rate} agreeing {agreeing_times}"));
            }
        }
        Verdict::NotRotation(w) => {
            lines.push("verdict not-rotation".to_string());
            lines.push(format!("samples {count}"));
            lines.push(match w {
                Witness::NonIdentityAtZero => "witness nonidentity-at-zero".to_string(),
                Witness::Homomorphism { s, t, sum } => format!("witness homomorphism s={s} t={t} sum={sum}"),
                Witness::DeltaGrowth { times, deltas } => {
                    let times: Vec<String> = times.iter().map(ToString::to_string).collect();
                    let deltas: Vec<String> = deltas.iter().map(ToString::to_string).collect();
                    format!(
                        "witness delta-growth times={} deltas={}",
                        times.join(","),
                        deltas.join(",")
                    )
                }
            });
        }
        Verdict::Inconclusive { max_delta } => {
            lines.push("verdict inconclusive".to_string());
            lines.push(format!("samples {count}"));
            lines.push(format!("max_delta {max_delta}"));
        }
    }
    lines.join("\n")
}

fn growth_tsv(report: &GrowthReport) -> String {
    let mut out = String::from("n\tdelta\tdifference\tdelta_over_n\tdelta_over_n_dec\n");
    let mut prev = None;
    for &(n, d) in &report.powers {
        let diff = prev.map_or(String::new(), |p: usize| (d as i64 - p as i64).to_string());
        let ratio = Scalar::ratio(d as i64, n as i64);
        out.push_str(&format!(
            "{n}\t{d}\t{diff}\t{ratio}\t{}\n",
            ratio.to_decimal(DECIMAL_DIGITS)
        ));
        prev = Some(d);
    }
    out
}

fn render_growth(report: &GrowthReport) -> String {
    let slope = Scalar::from(report.slope_estimate.clone());
    let (first, last) = (report.powers[0], report.powers[report.powers.len() - 1]);
    let mut lines = vec![
        format!("powers {}", report.powers.len()),
        format!("delta_first {}", first.1),
        format!("delta_last {}", last.1),
    ];
    lines.push(match report.eventually_constant_difference {
        Some((c, onset)) => format!("eventual_difference {c} onset {onset}"),
        None => "eventual_difference none".to_string(),
    });
    lines.push(format!("slope {slope} {}", slope.to_decimal(DECIMAL_DIGITS)));
    lines.push(format!(
        "subadditive {}",
        if report.is_subadditive() { "yes" } else { "no" }
    ));
    lines.join("\n")
}
