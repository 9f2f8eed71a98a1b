//! Command-line front end.
//!
//! Inputs are file paths or inline codes. Files are read by extension:
//! `.gauss` (planar Gauss code), `.ann` (annular code with `b=` header),
//! `.scheme` (JSON). Anything else is sniffed: `{` starts JSON, `b=` an
//! annular code, otherwise a Gauss code.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::bracket::{jones_with_limit, DEFAULT_CROSSING_LIMIT};
use crate::classify::{classify, classify_family_pairwise, ClassifyOptions, Verdict, VerdictResult};
use crate::diagram::annular::AnnularDiagram;
use crate::diagram::gauss::{parse_gauss, serialize_gauss};
use crate::diagram::simplify::simplify_bfs;
use crate::diagram::PlanarDiagram;
use crate::error::Error;
use crate::family::{gen_k4_scheme_with_limit, gen_k5_scheme, perturb_scheme, realization_report, FamilyParams};
use crate::scheme::{
    closure_jones, derived_invariant, intersection_invariants, validate_scheme, Ambient, Budget, RuleStatus, Scheme,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "knotscheme", version, about = "Knot schemes of gradient-like flows on 4-manifolds")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest diagram handed to the bracket state sum.
    #[arg(long, default_value_t = DEFAULT_CROSSING_LIMIT, global = true)]
    pub max_crossings: usize,
    /// States a move search may visit.
    #[arg(long, default_value_t = 20_000, global = true)]
    pub bfs_budget: usize,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the parity, component and triviality rules of a scheme.
    Validate { input: String },
    /// Intersection counts, cut signs and polynomial invariants of a scheme.
    Invariants { input: String },
    /// Classify a pair of schemes. Exit 0/1/2 for equivalent/nonequivalent/unknown.
    Compare {
        a: String,
        b: String,
        /// Compare flows with the saddle roles swapped by time reversal.
        #[arg(long)]
        time_reversed: bool,
    },
    /// Verdict matrix for a list of schemes.
    Pairwise { inputs: Vec<String> },
    /// Emit a family scheme as JSON.
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=5))]
        k: u32,
        #[arg(long, default_value_t = 0)]
        gamma: u32,
        #[arg(long, default_value_t = 0)]
        i: u32,
        /// Apply this many random moves (seeded by --seed).
        #[arg(long, default_value_t = 0)]
        perturb: usize,
    },
    /// Handle decomposition of a flow realizing the scheme.
    Realize { input: String },
    /// Jones polynomial of a link diagram (or of a scheme's closed knot).
    Jones { input: String },
    /// Search for a diagram with fewer crossings.
    Simplify { input: String },
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(code, text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(CliError::Input(msg)) => Outcome::fail(EXIT_INPUT, format!("error: {msg}\n")),
        Err(CliError::Budget(msg)) => Outcome::fail(EXIT_UNDECIDED, format!("inconclusive: {msg}\n")),
    }
}

enum CliError {
    Input(String),
    Budget(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CrossingLimit { .. } => CliError::Budget(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Reads a file, dropping exactly one trailing newline.
fn read_input(input: &str) -> CliResult<(String, Option<String>)> {
    let path = Path::new(input);
    if path.is_file() {
        let mut text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{input}: {e}")))?;
        if text.ends_with('\n') {
            text.pop();
            if text.ends_with('\r') {
                text.pop();
            }
        }
        let ext = path.extension().and_then(|e| e.to_str()).map(str::to_string);
        Ok((text, ext))
    } else if [".gauss", ".ann", ".scheme", ".json"].iter().any(|e| input.ends_with(e)) {
        Err(CliError::Input(format!("{input}: no such file")))
    } else {
        Ok((input.to_string(), None))
    }
}

enum Loaded {
    Planar(PlanarDiagram),
    Scheme(Scheme),
}

fn sniff(text: &str, ext: Option<&str>) -> &'static str {
    match ext {
        Some("gauss") => "gauss",
        Some("ann") => "ann",
        Some("scheme") | Some("json") => "scheme",
        _ if text.trim_start().starts_with('{') => "scheme",
        _ if text.trim_start().starts_with("b=") => "ann",
        _ => "gauss",
    }
}

fn load(input: &str) -> CliResult<Loaded> {
    let (text, ext) = read_input(input)?;
    let with_source = |e: Error| CliError::Input(format!("{input}: {e}"));
    Ok(match sniff(&text, ext.as_deref()) {
        "scheme" => Loaded::Scheme(Scheme::from_json(&text).map_err(with_source)?),
        "ann" => Loaded::Scheme(
            Scheme::new(Ambient::S2xS1, AnnularDiagram::parse(&text).map_err(with_source)?).map_err(with_source)?,
        ),
        _ if text.contains('|') => Loaded::Scheme(
            Scheme::new(
                Ambient::S3,
                AnnularDiagram::from_code_counting_cuts(&text).map_err(with_source)?,
            )
            .map_err(with_source)?,
        ),
        _ => Loaded::Planar(parse_gauss(&text).map_err(with_source)?),
    })
}

fn load_scheme(input: &str) -> CliResult<Scheme> {
    match load(input)? {
        Loaded::Scheme(s) => Ok(s),
        Loaded::Planar(_) => Err(CliError::Input(format!(
            "{input}: expected a scheme (.scheme, .ann, or a code with cut tokens)"
        ))),
    }
}

fn render<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> String) -> String {
    match cli.format {
        Format::Json => serde_json::to_string_pretty(value).expect("plain data") + "\n",
        Format::Text => text(),
    }
}

fn budget(cli: &Cli) -> Budget {
    Budget {
        crossing_limit: cli.max_crossings,
        max_states: cli.bfs_budget,
        ..Budget::default()
    }
}

fn verdict_text(v: &Verdict) -> String {
    let cert = serde_json::to_string(&v.certificate).expect("plain data");
    format!("{} {cert}", v.result)
}

fn execute(cli: &Cli) -> CliResult<Outcome> {
    let opts = ClassifyOptions {
        crossing_limit: cli.max_crossings,
        time_reversed: false,
    };
    match &cli.command {
        Command::Validate { input } => {
            let s = load_scheme(input)?;
            let r = validate_scheme(&s, &budget(cli));
            let code = if r.any_failure() {
                EXIT_NEGATIVE
            } else if r.triviality.status == RuleStatus::Inconclusive {
                EXIT_UNDECIDED
            } else {
                EXIT_OK
            };
            let out = render(cli, &r, || {
                let mut t = format!("ambient {} b={} index={}\n", r.ambient, r.b, r.index);
                for (name, rule) in [
                    ("parity", &r.parity),
                    ("single_component", &r.single_component),
                    ("triviality", &r.triviality),
                ] {
                    let _ = writeln!(t, "{name}: {} ({})", rule.status, rule.detail);
                }
                t
            });
            Ok(Outcome::ok(code, out))
        }
        Command::Invariants { input } => {
            let s = load_scheme(input)?;
            let (b, index) = intersection_invariants(&s);
            let jones = closure_jones(&s, cli.max_crossings).ok();
            let derived = match s.ambient() {
                Ambient::S2xS1 => Some(derived_invariant(&s, cli.max_crossings)?),
                Ambient::S3 => None,
            };
            let complete = derived.as_ref().is_none_or(|d| d.is_complete());
            let value = json!({
                "ambient": s.ambient(),
                "b": b,
                "index": index,
                "cut_signs": s.cut_signs(),
                "closure_jones": jones,
                "derived_invariant": derived,
                "status": if complete { "COMPLETE" } else { "INCOMPLETE" },
            });
            let out = render(cli, &value, || {
                let mut t = format!("ambient {}\nb = {b}\nindex = {index}\ncut_signs = {:?}\n", s.ambient(), s.cut_signs());
                match &jones {
                    Some(j) => {
                        let _ = writeln!(t, "closure jones = {j}");
                    }
                    None => t.push_str("closure jones = (over crossing limit)\n"),
                }
                if let Some(d) = &derived {
                    for e in &d.entries {
                        match &e.jones {
                            Some(ps) => {
                                let ps: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                                let _ = writeln!(t, "strand {}: {{{}}}", e.strand, ps.join(", "));
                            }
                            None => {
                                let _ = writeln!(t, "strand {}: INCOMPLETE ({})", e.strand, e.note.as_deref().unwrap_or(""));
                            }
                        }
                    }
                }
                t
            });
            Ok(Outcome::ok(if complete { EXIT_OK } else { EXIT_UNDECIDED }, out))
        }
        Command::Compare { a, b, time_reversed } => {
            let (s1, s2) = (load_scheme(a)?, load_scheme(b)?);
            let v = classify(
                &s1,
                &s2,
                &ClassifyOptions {
                    time_reversed: *time_reversed,
                    ..opts
                },
            )?;
            let out = render(cli, &v, || verdict_text(&v) + "\n");
            Ok(Outcome::ok(v.result.exit_code(), out))
        }
        Command::Pairwise { inputs } => {
            let schemes = inputs.iter().map(|i| load_scheme(i)).collect::<CliResult<Vec<_>>>()?;
            let m = classify_family_pairwise(&schemes, &opts)?;
            let undecided = m.iter().flatten().any(|v| v.result == VerdictResult::Unknown);
            let out = render(cli, &m, || {
                let mut t = String::new();
                for row in &m {
                    let cells: Vec<&str> = row
                        .iter()
                        .map(|v| match v.result {
                            VerdictResult::Equivalent => "EQ",
                            VerdictResult::Nonequivalent => "NE",
                            VerdictResult::Unknown => "??",
                        })
                        .collect();
                    let _ = writeln!(t, "{}", cells.join(" "));
                }
                t
            });
            Ok(Outcome::ok(if undecided { EXIT_UNDECIDED } else { EXIT_OK }, out))
        }
        Command::Generate { k, gamma, i, perturb } => {
            let mut s = if *k == 4 {
                gen_k4_scheme_with_limit(FamilyParams { gamma: *gamma, i: *i }, cli.max_crossings)?
            } else {
                gen_k5_scheme(*gamma)?
            };
            if *perturb > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let room = s.diagram().num_crossings() + 4;
                s = perturb_scheme(&s, *perturb, room.min(cli.max_crossings), &mut rng)?;
            }
            Ok(Outcome::ok(EXIT_OK, s.to_json() + "\n"))
        }
        Command::Realize { input } => {
            let s = load_scheme(input)?;
            let r = realization_report(&s, &budget(cli))?;
            Ok(Outcome::ok(EXIT_OK, render(cli, &r, || r.to_text())))
        }
        Command::Jones { input } => {
            let (j, crossings) = match load(input)? {
                Loaded::Planar(d) => (jones_with_limit(&d, cli.max_crossings)?, d.num_crossings()),
                Loaded::Scheme(s) => (closure_jones(&s, cli.max_crossings)?, s.diagram().num_crossings()),
            };
            let value = json!({ "crossings": crossings, "jones": j, "jones_t": j.to_t_string() });
            Ok(Outcome::ok(EXIT_OK, render(cli, &value, || format!("{j}\n"))))
        }
        Command::Simplify { input } => {
            let d = match load(input)? {
                Loaded::Planar(d) => d,
                Loaded::Scheme(s) => s.diagram().closure(),
            };
            let max = d.num_crossings() + 2;
            let r = simplify_bfs(&d, max, cli.bfs_budget)?;
            let code = serialize_gauss(&r.diagram)?;
            let value = json!({
                "crossings_before": d.num_crossings(),
                "crossings_after": r.diagram.num_crossings(),
                "gauss_code": code,
                "states_explored": r.states_explored,
                "status": if r.inconclusive { "INCONCLUSIVE" } else { "COMPLETE" },
            });
            let out = render(cli, &value, || {
                format!(
                    "{} -> {} crossings{}\n{code}\n",
                    d.num_crossings(),
                    r.diagram.num_crossings(),
                    if r.inconclusive { " (INCONCLUSIVE, budget exhausted)" } else { "" }
                )
            });
            Ok(Outcome::ok(if r.inconclusive { EXIT_UNDECIDED } else { EXIT_OK }, out))
        }
    }
}
