use std::fs;
use std::io::{self, BufRead, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use somino::enumerate::DEFAULT_CAP;
use somino::{
    count, count_dyck, count_total, count_u, count_wb, enumerate, enumerate_paths, path_to_tower, svg,
    tower_to_path, verify, ClassSpec, CountSpec, DyckPath, EnumSpec, HnSpec, MSeries, RowConvexDp,
    RowConvexGf, Tower, TowerGf, WidthList,
};

#[derive(Parser)]
#[command(name = "somino", version, about = "Count, enumerate and draw towers of one-row blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form counts
    Count(CountArgs),
    /// Exhaustive enumeration as JSON lines
    Enumerate(EnumerateArgs),
    /// Coefficients of the multivariate generating functions
    Series(SeriesArgs),
    /// Row-convex single-width towers on a platform
    Rowconvex(RowConvexArgs),
    /// Towers with one bottom block and their Dyck paths
    Bijection(BijectionArgs),
    /// Run the invariant suite
    Verify(VerifyArgs),
    /// Draw towers read as JSON lines
    Render(RenderArgs),
}

#[derive(Args)]
struct Multiset {
    /// Block widths, e.g. 2,3
    #[arg(long)]
    widths: WidthList,
    /// Number of blocks of each width, e.g. 1,2
    #[arg(long, value_delimiter = ',', required = true)]
    nvec: Vec<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountClass {
    Total,
    U,
    Dyck,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    set: Multiset,
    /// Count towers whose bottom row has exactly this many blocks
    #[arg(long, conflicts_with = "class")]
    b: Option<u64>,
    #[arg(long, value_enum, default_value = "total")]
    class: CountClass,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    set: Multiset,
    /// wb:B, u, v:L, h:L, any or rowconvex:L
    #[arg(long, default_value = "any")]
    class: ClassSpec,
    /// Skip towers with a block directly on an identical block
    #[arg(long)]
    restricted: bool,
    #[arg(long)]
    count_only: bool,
    /// Largest number of blocks allowed
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy)]
enum Gf {
    U,
    V1,
    V(u32),
    W(u32),
    H(u32),
    Total,
    Restricted,
}

impl FromStr for Gf {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let param = |p: &str| match p.parse::<u32>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(format!("expected a positive integer after ':' in {s:?}")),
        };
        match s.split_once(':') {
            None => match s {
                "u" => Ok(Gf::U),
                "v1" => Ok(Gf::V1),
                "total" => Ok(Gf::Total),
                "restricted" => Ok(Gf::Restricted),
                _ => Err(format!("unknown generating function {s:?}")),
            },
            Some(("v", p)) => param(p).map(Gf::V),
            Some(("w", p)) => param(p).map(Gf::W),
            Some(("h", p)) => param(p).map(Gf::H),
            Some(_) => Err(format!("unknown generating function {s:?}")),
        }
    }
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    widths: WidthList,
    /// u, v1, v:S, w:B, h:S, total or restricted
    #[arg(long, default_value = "total")]
    gf: Gf,
    /// Largest total degree kept
    #[arg(long, default_value_t = 32)]
    order: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct RowConvexArgs {
    /// Block width
    #[arg(long)]
    k: u64,
    /// Number of coefficients
    #[arg(long, default_value_t = 32)]
    order: usize,
    /// Sum over all bottom-row lengths instead of a fixed platform
    #[arg(long, conflicts_with = "ell")]
    g: bool,
    /// Platform width in blocks
    #[arg(long)]
    ell: Option<u32>,
    /// Take coefficients from the recurrence instead of the closed form
    #[arg(long)]
    dp: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct BijectionArgs {
    /// Block widths; needed to decode a path or for the round-trip check
    #[arg(long)]
    widths: Option<WidthList>,
    /// Decode this comma-separated path word into a tower
    #[arg(long, value_delimiter = ',')]
    path: Option<Vec<u32>>,
    /// Check both round trips over all towers with these multiplicities
    #[arg(long, requires_all = ["widths", "nvec"])]
    roundtrip_check: bool,
    #[arg(long, value_delimiter = ',')]
    nvec: Option<Vec<u32>>,
    /// Tower JSON file to encode; standard input when absent
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// all, or one of tower, exact, series, multivariate, enumerate, dyck, rowconvex
    #[arg(long, default_value = "all")]
    suite: String,
}

#[derive(Args)]
struct RenderArgs {
    /// JSON-lines file of towers; standard input when absent
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Core(somino::Error),
    Io(String),
    Verification(String),
}

impl From<somino::Error> for Failure {
    fn from(e: somino::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("malformed JSON: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    fn report(&self) -> (String, u8) {
        use somino::Error as E;
        match self {
            Failure::Usage(m) => (format!("usage: {m}"), 2),
            Failure::Core(E::InvalidInput(m)) => (format!("invalid-input: {m}"), 2),
            Failure::Core(e @ E::CapExceeded { .. }) => (format!("cap-exceeded: {e}"), 2),
            Failure::Core(E::Invariant(m)) => (format!("invariant: {m}"), 1),
            Failure::Io(m) => (format!("io: {m}"), 2),
            Failure::Verification(m) => (format!("verification: {m}"), 1),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: usage: {first}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Count(a) => run_count(a, &mut out),
        Command::Enumerate(a) => run_enumerate(a, &mut out),
        Command::Series(a) => run_series(a, &mut out),
        Command::Rowconvex(a) => run_rowconvex(a, &mut out),
        Command::Bijection(a) => run_bijection(a, &mut out),
        Command::Verify(a) => run_verify(a, &mut out),
        Command::Render(a) => run_render(a, &mut out),
    };
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (msg, code) = f.report();
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run_count(a: CountArgs, out: &mut impl Write) -> Outcome {
    let spec = CountSpec::new(a.set.widths, a.set.nvec)?;
    let n = match (a.b, a.class) {
        (Some(b), _) => count_wb(&spec, b)?,
        (None, CountClass::Total) => count_total(&spec)?,
        (None, CountClass::U) => count_u(&spec)?,
        (None, CountClass::Dyck) => count_dyck(&HnSpec::from_counts(&spec)?)?,
    };
    writeln!(out, "{n}")?;
    Ok(())
}

fn run_enumerate(a: EnumerateArgs, out: &mut impl Write) -> Outcome {
    let spec = EnumSpec::new(a.set.widths, a.set.nvec, a.class)?
        .restricted(a.restricted)
        .with_cap(a.cap);
    if a.count_only {
        writeln!(out, "{}", count(&spec)?)?;
        return Ok(());
    }
    for t in enumerate(&spec)? {
        writeln!(out, "{}", t.to_json())?;
    }
    Ok(())
}

fn gf_series(gf: &TowerGf, which: Gf) -> somino::Result<MSeries> {
    Ok(match which {
        Gf::U => gf.u().clone(),
        Gf::V1 => gf.v1().clone(),
        Gf::V(s) => gf.v(s)?,
        Gf::W(b) => gf.w(b)?,
        Gf::H(s) => gf.h(s)?,
        Gf::Total => gf.total(),
        Gf::Restricted => gf.restricted_total()?,
    })
}

fn run_series(a: SeriesArgs, out: &mut impl Write) -> Outcome {
    let gf = TowerGf::new(a.widths.clone(), a.order)?;
    let terms = gf_series(&gf, a.gf)?.natural_terms()?;
    match a.format {
        Format::Json => {
            let rows: Vec<_> = terms
                .iter()
                .map(|(e, c)| json!({ "exponents": e, "coefficient": c.to_string() }))
                .collect();
            let doc = json!({ "widths": a.widths.as_slice(), "degree": a.order, "terms": rows });
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["degree".to_string()];
            header.extend((1..=a.widths.len()).map(|i| format!("n{i}")));
            header.push("coefficient".into());
            w.write_record(&header)?;
            for (e, c) in &terms {
                let mut rec = vec![e.iter().sum::<u32>().to_string()];
                rec.extend(e.iter().map(u32::to_string));
                rec.push(c.to_string());
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn run_rowconvex(a: RowConvexArgs, out: &mut impl Write) -> Outcome {
    let ell = match (a.g, a.ell) {
        (true, _) => None,
        (false, Some(l)) => Some(l),
        (false, None) => return Err(Failure::Usage("give --g or --ell".into())),
    };
    let coeffs: Vec<String> = if a.dp {
        if a.k < 2 || ell == Some(0) {
            return Err(Failure::Usage("need k >= 2 and ell >= 1".into()));
        }
        let mut dp = RowConvexDp::new(a.k);
        (0..a.order as u64)
            .map(|n| match ell {
                Some(l) => dp.f(u64::from(l), n),
                None => dp.g(n),
            })
            .map(|c| c.to_string())
            .collect()
    } else {
        let gf = RowConvexGf::new(a.k, a.order)?;
        let series = match ell {
            Some(l) => gf.f(l)?,
            None => gf.g()?,
        };
        series.natural_coeffs()?.iter().map(|c| c.to_string()).collect()
    };
    match a.format {
        Format::Json => {
            let doc = match ell {
                Some(l) => json!({ "k": a.k, "ell": l, "coefficients": coeffs }),
                None => json!({ "k": a.k, "coefficients": coeffs }),
            };
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "coefficient"])?;
            for (n, c) in coeffs.iter().enumerate() {
                w.write_record([n.to_string(), c.clone()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

// The spec of a bare word: each distinct up-letter with its multiplicity, in width order.
fn spec_of_word(word: &[u32], widths: &WidthList) -> somino::Result<HnSpec> {
    let pairs = widths
        .iter()
        .filter(|&s| s >= 2)
        .map(|s| (word.iter().filter(|&&c| c == s - 1).count() as u32, s - 1))
        .filter(|&(t, _)| t > 0)
        .collect();
    HnSpec::new(pairs)
}

fn run_bijection(a: BijectionArgs, out: &mut impl Write) -> Outcome {
    if a.roundtrip_check {
        let widths = a.widths.expect("required by clap");
        let nvec = a.nvec.expect("required by clap");
        let spec = EnumSpec::new(widths.clone(), nvec.clone(), ClassSpec::U)?;
        let towers = enumerate(&spec)?;
        for t in &towers {
            let p = tower_to_path(t)?;
            if path_to_tower(&p, &widths)? != *t {
                return Err(Failure::Verification(format!("tower {} does not survive the round trip", t.to_json())));
            }
        }
        let hn = HnSpec::from_counts(&CountSpec::new(widths.clone(), nvec)?)?;
        let paths = enumerate_paths(&hn);
        for p in &paths {
            if tower_to_path(&path_to_tower(p, &widths)?)? != *p {
                return Err(Failure::Verification(format!("path {} does not survive the round trip", p.word_string())));
            }
        }
        if paths.len() != towers.len() {
            return Err(Failure::Verification(format!("{} towers but {} paths", towers.len(), paths.len())));
        }
        writeln!(out, "ok {} towers, {} paths", towers.len(), paths.len())?;
        return Ok(());
    }
    if let Some(word) = a.path {
        let widths = a.widths.ok_or_else(|| Failure::Usage("--path needs --widths".into()))?;
        let path = DyckPath::new(spec_of_word(&word, &widths)?, word);
        writeln!(out, "{}", path_to_tower(&path, &widths)?.to_json())?;
        return Ok(());
    }
    let tower = Tower::from_json(read_input(&a.input)?.trim())?;
    writeln!(out, "{}", serde_json::to_string(&tower_to_path(&tower)?)?)?;
    Ok(())
}

fn run_verify(a: VerifyArgs, out: &mut impl Write) -> Outcome {
    let outcomes = verify::run(&a.suite)?;
    write!(out, "{}", verify::table(&outcomes))?;
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    writeln!(out, "{} checks, {failed} failed", outcomes.len())?;
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} checks failed")));
    }
    Ok(())
}

fn run_render(a: RenderArgs, out: &mut impl Write) -> Outcome {
    let text = read_input(&a.input)?;
    let mut towers = Vec::new();
    for line in text.as_bytes().lines() {
        let line = line?;
        if !line.trim().is_empty() {
            towers.push(Tower::from_json(&line)?);
        }
    }
    let doc = svg::render(&towers);
    match a.output {
        Some(p) => fs::write(&p, doc).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        None => out.write_all(doc.as_bytes())?,
    }
    Ok(())
}
