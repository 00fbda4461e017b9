use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latval::birkhoff::{DownsetLattice, DEFAULT_LATTICE_LIMIT};
use latval::oracle::{self, DEFAULT_SEARCH_LIMIT};
use latval::realizer::{self, Construction, Verification};
use latval::valuation::{self, SegmentSide};
use latval::{
    complementary_poset, io, Complement, Error, Poset, Realizer, Valuation, WeightFunction,
};

const LIMIT_VAR: &str = "LATVAL_LIMIT";

#[derive(Parser)]
#[command(
    name = "latval",
    version,
    about = "Complete valuations on finite distributive lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the downsets of the poset, or print counts with --stats.
    Lattice {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        stats: bool,
    },
    /// Find a realizer, if the poset has dimension at most two.
    Dim2(Common),
    /// Chain-count weights of a realizer.
    Weights(Common),
    /// Valuation table of a realizer or of a weights file.
    Valuate(Common),
    /// Check the valuation axioms, bijectivity and completeness.
    Check(Common),
    /// Read the realizer back from a complete valuation.
    ExtractRealizer(Common),
    /// Construct, extract and reconstruct.
    Roundtrip(Common),
    /// Exhaustive search over weight functions.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        mode: SearchMode,
    },
    /// Graphviz Hasse diagram.
    ExportDot {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Target::Poset)]
        target: Target,
    },
}

#[derive(Args)]
struct Common {
    /// Poset file.
    #[arg(short = 'i', value_name = "FILE")]
    input: PathBuf,
    /// Realizer file.
    #[arg(short = 'r', value_name = "FILE")]
    realizer: Option<PathBuf>,
    /// Valuation: a weights file or a valuation table.
    #[arg(short = 'v', value_name = "FILE")]
    valuation: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(short = 'o', value_name = "FILE")]
    output: Option<PathBuf>,
    /// Size bound on lattices and search candidates.
    #[arg(long, value_name = "N")]
    limit: Option<u128>,
    /// Skip the completeness check when constructing valuations.
    #[arg(long)]
    unchecked: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    Bijective,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Poset,
    Complement,
    Lattice,
}

/// Output and whether the verdict was positive.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, ok: true }
    }

    fn negative(text: impl Into<String>) -> Self {
        let mut text = text.into();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Report { text, ok: false }
    }
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "io: {}: {e}", path.display()),
            Failure::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

impl Common {
    fn poset(&self) -> Result<Poset, Failure> {
        Ok(io::parse_poset(&read(&self.input)?)?)
    }

    fn limit(&self, default: u128) -> Result<u128, Failure> {
        if let Some(n) = self.limit {
            return Ok(n);
        }
        match std::env::var(LIMIT_VAR) {
            Ok(text) => text
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("cli: {LIMIT_VAR} is not a number: `{text}`"))),
            Err(_) => Ok(default),
        }
    }

    fn lattice(&self, poset: Poset) -> Result<DownsetLattice, Failure> {
        let limit = self.limit(DEFAULT_LATTICE_LIMIT as u128)?;
        Ok(DownsetLattice::with_limit(
            poset,
            usize::try_from(limit).unwrap_or(usize::MAX),
        )?)
    }

    /// The realizer from `-r`, or the lexicographically least one.
    fn realizer(&self, poset: &Poset) -> Result<Option<Realizer>, Failure> {
        match &self.realizer {
            Some(path) => Ok(Some(io::parse_realizer(poset, &read(path)?)?)),
            None => Ok(realizer::find_realizer(poset)?),
        }
    }

    fn construction(&self) -> Result<Construction, Failure> {
        let limit = self.limit(DEFAULT_LATTICE_LIMIT as u128)?;
        Ok(Construction {
            lattice_limit: usize::try_from(limit).unwrap_or(usize::MAX),
            verification: if self.unchecked {
                Verification::Unchecked
            } else {
                Verification::Auto
            },
        })
    }

    /// Raw value table from `-v`, accepting either a weights file or a
    /// valuation table.
    fn values(&self, lattice: &DownsetLattice) -> Result<Vec<u64>, Failure> {
        let path = self
            .valuation
            .as_ref()
            .ok_or_else(|| Failure::Usage("cli: a valuation is required (-v FILE)".into()))?;
        let text = read(path)?;
        if text.trim_start().starts_with('{') {
            let weights = io::parse_weights(lattice.poset(), &text)?;
            Ok(valuation::valuation_from_weights(lattice, &weights)?
                .values()
                .to_vec())
        } else {
            Ok(io::parse_table(lattice, &text)?)
        }
    }

    /// Weights from `-v` if given, else the chain counts of the realizer.
    fn labels(&self, lattice: &DownsetLattice) -> Result<Option<WeightFunction>, Failure> {
        if self.valuation.is_some() {
            let values = self.values(lattice)?;
            return Ok(Some(valuation::weights_from_valuation(lattice, &values)?));
        }
        if self.realizer.is_some() {
            let p = lattice.poset();
            let r = self.realizer(p)?.expect("read from file");
            return Ok(Some(realizer::chain_count_weights(p, &r)?));
        }
        Ok(None)
    }
}

const NO_REALIZER: &str = "no realizer: dimension ≥ 3";

fn lattice_cmd(common: &Common, stats: bool) -> Outcome {
    let l = common.lattice(common.poset()?)?;
    let p = l.poset();
    let text = if stats {
        let antichains: BTreeSet<_> = l.downsets().iter().map(|s| p.maximal_in(s)).collect();
        format!(
            "elements={} downsets={} antichains={}\n",
            p.len(),
            l.len(),
            antichains.len()
        )
    } else {
        let mut out = String::from("downset\tantichain\n");
        for s in l.downsets() {
            writeln!(
                out,
                "{}\t{}",
                io::format_set(p, s),
                io::format_set(p, &p.maximal_in(s))
            )
            .unwrap();
        }
        out
    };
    Ok(Report::ok(text))
}

fn dim2_cmd(common: &Common) -> Outcome {
    let p = common.poset()?;
    Ok(match realizer::find_realizer(&p)? {
        Some(r) => Report::ok(io::realizer_to_json(&p, &r)),
        None => Report::negative(NO_REALIZER),
    })
}

fn weights_cmd(common: &Common) -> Outcome {
    let p = common.poset()?;
    let Some(r) = common.realizer(&p)? else {
        return Ok(Report::negative(NO_REALIZER));
    };
    if !common.unchecked {
        realizer::complete_valuation_with(&p, &r, common.construction()?)?;
    }
    Ok(Report::ok(io::weights_to_json(
        &p,
        &realizer::chain_count_weights(&p, &r)?,
    )))
}

fn valuate_cmd(common: &Common) -> Outcome {
    let p = common.poset()?;
    if common.valuation.is_some() {
        let l = common.lattice(p)?;
        let values = common.values(&l)?;
        let weights = valuation::weights_from_valuation(&l, &values)?;
        let v = Valuation::new(&l, values)?;
        let dual = valuation::dual_valuation(&l, &weights)?;
        return Ok(Report::ok(io::render_table(&l, &v, &dual, None)));
    }
    let Some(r) = common.realizer(&p)? else {
        return Ok(Report::negative(NO_REALIZER));
    };
    let (l, v) = realizer::complete_valuation_with(&p, &r, common.construction()?)?;
    let dual = valuation::dual_valuation(&l, &realizer::chain_count_weights(&p, &r)?)?;
    Ok(Report::ok(io::render_table(
        &l,
        &v,
        &dual,
        Some(r.lambda1()),
    )))
}

fn check_cmd(common: &Common) -> Outcome {
    let l = common.lattice(common.poset()?)?;
    let p = l.poset();
    let values = common.values(&l)?;
    let axioms = valuation::check_valuation_axioms(&l, &values)?;
    let show = |i: usize| {
        format!(
            "{{{}}}",
            io::format_set(p, l.downset(i)).trim_start_matches(io::EMPTY_SET)
        )
    };
    let mut out = String::new();
    if let Some(v) = axioms.bottom_nonzero {
        writeln!(out, "bottom: failed, v(∅) = {v}").unwrap();
    } else {
        writeln!(out, "bottom: ok").unwrap();
    }
    match axioms.monotonicity {
        Some((a, b)) => writeln!(
            out,
            "monotonicity: failed, {} ≤ {} but v = {} > {}",
            show(a),
            show(b),
            values[a],
            values[b]
        ),
        None => writeln!(out, "monotonicity: ok"),
    }
    .unwrap();
    match axioms.additivity {
        Some((a, b)) => writeln!(out, "additivity: failed at {} and {}", show(a), show(b)),
        None => writeln!(out, "additivity: ok"),
    }
    .unwrap();
    if !axioms.is_valid() {
        out.push_str("verdict: not a valuation\n");
        return Ok(Report::negative(out));
    }
    let v = Valuation::new(&l, values)?;
    if !valuation::is_bijective(&l, &v) {
        out.push_str("bijective: no\nverdict: not bijective\n");
        return Ok(Report::negative(out));
    }
    out.push_str("bijective: yes\n");
    let verdict = valuation::is_complete(&l, &v)?;
    if let Some(w) = verdict.witness {
        let side = match w.side {
            SegmentSide::Lower => "join of values",
            SegmentSide::Upper => "meet of values",
        };
        let first = w.segment.iter().map(|&i| v.value(i)).min().unwrap_or(0);
        let last = w.segment.iter().map(|&i| v.value(i)).max().unwrap_or(0);
        let closure: Vec<String> = w.closure_values.iter().map(u64::to_string).collect();
        writeln!(
            out,
            "complete: no, {side} {first}..={last} reaches {{{}}}",
            closure.join(",")
        )
        .unwrap();
        out.push_str("verdict: not complete\n");
        return Ok(Report::negative(out));
    }
    out.push_str("complete: yes\nverdict: complete\n");
    Ok(Report::ok(out))
}

fn extract_cmd(common: &Common) -> Outcome {
    let l = common.lattice(common.poset()?)?;
    let values = common.values(&l)?;
    let v = match Valuation::new(&l, values) {
        Ok(v) => v,
        Err(Error::NotAValuation) => return Ok(Report::negative("not complete: not a valuation")),
        Err(e) => return Err(e.into()),
    };
    match realizer::extract_realizer(&l, &v) {
        Ok(r) => Ok(Report::ok(io::realizer_to_json(l.poset(), &r))),
        Err(Error::NotComplete) => Ok(Report::negative("not complete")),
        Err(e) => Err(e.into()),
    }
}

fn roundtrip_cmd(common: &Common) -> Outcome {
    let p = common.poset()?;
    let Some(r) = common.realizer(&p)? else {
        return Ok(Report::negative(NO_REALIZER));
    };
    Ok(if realizer::round_trip_check(&p, &r)? {
        Report::ok("roundtrip: ok\n".into())
    } else {
        Report::negative("roundtrip: failed")
    })
}

fn search_cmd(common: &Common, mode: SearchMode) -> Outcome {
    let p = common.poset()?;
    let limit = common.limit(DEFAULT_SEARCH_LIMIT)?;
    let (name, report) = match mode {
        SearchMode::Bijective => ("bijective", oracle::search_bijective_valuations(&p, limit)?),
        SearchMode::Complete => ("complete", oracle::search_complete_valuations(&p, limit)?),
    };
    let mut out = format!(
        "mode={name} downsets={} candidates={} found={}\n",
        report.lattice_size,
        report.candidates,
        report.found.len()
    );
    for w in &report.found {
        let parts: Vec<String> = p
            .elements()
            .iter()
            .zip(w.as_slice())
            .map(|(x, n)| format!("{x}={n}"))
            .collect();
        writeln!(out, "{}", parts.join(",")).unwrap();
    }
    Ok(Report::ok(out))
}

fn dot_cmd(common: &Common, target: Target) -> Outcome {
    let p = common.poset()?;
    let text = match target {
        Target::Poset => {
            let l = common.lattice(p.clone())?;
            latval::dot::poset_dot(&p, "poset", common.labels(&l)?.as_ref())
        }
        Target::Complement => {
            let Some(r) = common.realizer(&p)? else {
                return Ok(Report::negative(NO_REALIZER));
            };
            let q = complementary_poset(&p, &r, Complement::Q)?;
            let w = realizer::chain_count_weights(&p, &r)?;
            latval::dot::poset_dot(&q, "complement", Some(&w))
        }
        Target::Lattice => {
            let l = common.lattice(p)?;
            let v = common
                .labels(&l)?
                .map(|w| valuation::valuation_from_weights(&l, &w))
                .transpose()?;
            latval::dot::lattice_dot(&l, v.as_ref())
        }
    };
    Ok(Report::ok(text))
}

fn run(cli: &Cli) -> (Outcome, Option<&Path>) {
    let (outcome, common) = match &cli.command {
        Command::Lattice { common, stats } => (lattice_cmd(common, *stats), common),
        Command::Dim2(c) => (dim2_cmd(c), c),
        Command::Weights(c) => (weights_cmd(c), c),
        Command::Valuate(c) => (valuate_cmd(c), c),
        Command::Check(c) => (check_cmd(c), c),
        Command::ExtractRealizer(c) => (extract_cmd(c), c),
        Command::Roundtrip(c) => (roundtrip_cmd(c), c),
        Command::Search { common, mode } => (search_cmd(common, *mode), common),
        Command::ExportDot { common, target } => (dot_cmd(common, *target), common),
    };
    (outcome, common.output.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, output) = run(&cli);
    let report = match outcome {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match output {
        Some(path) => {
            if let Err(e) = fs::write(path, &report.text) {
                eprintln!("error: {}", Failure::Io(path.to_owned(), e));
                return ExitCode::from(2);
            }
        }
        None => print!("{}", report.text),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
