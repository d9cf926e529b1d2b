use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rqcodes::format::{parse_generator, write_generator};
use rqcodes::report::{audit_csv, audit_json, audit_text, elements_json, rational_json, weight_distribution_json};
use rqcodes::{exit_code, limits_from_env, parallel};
use rqcodes_core::analysis::{choose_engine, covering_radius, weight_distribution, Engine};
use rqcodes_core::linalg::{column_multiset_equal, ColumnMatrix};
use rqcodes_core::{
    find_claim, AuditReport, BinaryCode, Budget, CodeOverRq, ConstructionParams, Error, Family, Generator, GrayMap,
    HomMode, Limits, Metric, Rational, RqMatrix, SymbolWeights, Verdict,
};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "rqcodes", version, about = "Simplex and MacDonald codes over F2[u1..uq]/(ui^2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generator matrix.
    Gen(GenArgs),
    /// List every codeword.
    Enum(CodeCmd),
    /// Weight distribution.
    Wdist(WdistArgs),
    /// Binary Gray image of the generator matrix.
    Gray(GrayArgs),
    /// Torsion or residue code.
    Torsion(TorsionArgs),
    /// Drop every term containing u_q.
    Project(ProjectArgs),
    /// Exact covering radius.
    Covradius(CovArgs),
    /// Evaluate the claim catalog.
    Audit(AuditArgs),
    /// Check a matrix file parses, round-trips and, optionally, matches a family.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct Source {
    /// Code family; ignored when --input is given.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long, default_value_t = 1)]
    q: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// MacDonald deletion parameter.
    #[arg(long, default_value_t = 1)]
    u: u32,
    /// Repetition length.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Repetition element: decimal bitmask, `u1+u2` style text, or `theta`.
    #[arg(long)]
    c: Option<String>,
    /// Read the generator from an rq-matrix or binary-matrix file instead.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Homogeneous weight scale, e.g. `4` or `1/2`; defaults to 2^q.
    #[arg(long)]
    gamma: Option<String>,
    /// Enumeration guard; overrides RQCODES_ENUM_LIMIT.
    #[arg(long)]
    enum_limit: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    src: Source,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CodeCmd {
    #[command(flatten)]
    src: Source,
}

#[derive(Args)]
struct WdistArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, value_parser = parse_metric, default_value = "lee")]
    metric: Metric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapArg {
    Lee,
    Hom,
    HomWeightExact,
}

#[derive(Args)]
struct GrayArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, value_enum, default_value_t = MapArg::Lee)]
    map: MapArg,
}

#[derive(Args)]
struct TorsionArgs {
    #[command(flatten)]
    src: Source,
    /// Index set A as comma-separated indices, e.g. `1,2`; empty for the empty set.
    #[arg(long, default_value = "")]
    set: String,
    /// Reduce modulo the maximal ideal instead.
    #[arg(long)]
    residue: bool,
}

#[derive(Args)]
struct ProjectArgs {
    #[command(flatten)]
    src: Source,
    /// Apply the projection this many times.
    #[arg(long, default_value_t = 1)]
    times: u32,
}

#[derive(Args)]
struct CovArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, value_parser = parse_metric, default_value = "lee")]
    metric: Metric,
    /// exhaustive, profile-dp, gray-syndrome or auto.
    #[arg(long, default_value = "auto")]
    engine: String,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, default_value_t = 2)]
    max_q: u32,
    #[arg(long, default_value_t = 3)]
    max_k: u32,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    /// Only these claim ids (repeatable).
    #[arg(long)]
    claim: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Exit with status 1 when some verdict is a mismatch.
    #[arg(long)]
    fail_on_mismatch: bool,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    enum_limit: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    src: Source,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failures carry their exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("rqcodes: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Gen(a) => gen(a),
        Command::Enum(a) => enumerate(a.src),
        Command::Wdist(a) => wdist(a),
        Command::Gray(a) => gray(a),
        Command::Torsion(a) => torsion(a),
        Command::Project(a) => project(a),
        Command::Covradius(a) => covradius(a),
        Command::Audit(a) => audit(a),
        Command::Verify(a) => verify(a.src),
    }
}

/// A generator plus the description echoed in JSON output.
struct Loaded {
    generator: Generator,
    family: String,
    params: Value,
    limits: Limits,
}

impl Loaded {
    fn ring(&self) -> Result<&RqMatrix, Failure> {
        match &self.generator {
            Generator::Ring(m) => Ok(m),
            Generator::Binary(_) => Err(Failure {
                code: 2,
                message: format!("{} is a binary family; this command needs a code over R_q", self.family),
            }),
        }
    }

    fn code(&self) -> Result<CodeOverRq, Failure> {
        Ok(CodeOverRq::enumerate(self.ring()?, &self.limits)?)
    }

    fn header(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("family".into(), Value::String(self.family.clone()));
        m.insert("params".into(), self.params.clone());
        m
    }
}

fn family_params(p: &ConstructionParams) -> Value {
    let mut m = Map::new();
    let f = p.family;
    if !f.is_binary() {
        m.insert("q".into(), json!(p.q));
    }
    match f {
        Family::Repetition => {
            m.insert("n".into(), json!(p.n));
            m.insert("c".into(), json!(p.c.clone().unwrap_or_else(|| "1".into())));
        }
        Family::BlockRepetition => {
            m.insert("n".into(), json!(p.n));
        }
        Family::MacdonaldAlpha | Family::MacdonaldBeta => {
            m.insert("k".into(), json!(p.k));
            m.insert("u".into(), json!(p.u));
        }
        _ => {
            m.insert("k".into(), json!(p.k));
        }
    }
    Value::Object(m)
}

fn load(src: &Source) -> Result<Loaded, Failure> {
    let limits = limits_from_env(src.enum_limit)?;
    let (generator, family, params) = if let Some(path) = &src.input {
        let text = fs::read_to_string(path)?;
        let g = parse_generator(&text)?;
        (g, "input".to_string(), json!({ "path": path.display().to_string() }))
    } else {
        let family =
            src.family.ok_or_else(|| Failure { code: 2, message: "either --family or --input is required".into() })?;
        let p = ConstructionParams { family, q: src.q, k: src.k, u: src.u, n: src.n, c: src.c.clone() };
        (p.build(&limits)?, family.name().to_string(), family_params(&p))
    };
    let generator = match (&src.gamma, generator) {
        (Some(text), Generator::Ring(m)) => {
            let gamma: Rational =
                text.trim().parse().map_err(|_| Error::Parse(format!("gamma is not a rational number: {text:?}")))?;
            let ring = m.ring().with_gamma(gamma)?;
            Generator::Ring(RqMatrix::new(ring, m.rows(), m.cols(), m.entries().to_vec())?)
        }
        (_, g) => g,
    };
    Ok(Loaded { generator, family, params, limits })
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn csv_out<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for r in rows {
        w.write_record(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is UTF-8")
}

fn matrix_json(g: &Generator) -> Value {
    match g {
        Generator::Ring(m) => json!({
            "q": m.ring().q(),
            "rows": m.rows(),
            "cols": m.cols(),
            "matrix": (0..m.rows()).map(|i| elements_json(m.row(i))).collect::<Vec<_>>(),
        }),
        Generator::Binary(m) => json!({
            "rows": m.rows(),
            "cols": m.cols(),
            "matrix": m.row_vectors().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        }),
    }
}

fn with_header(l: &Loaded, body: Value) -> Value {
    let mut m = l.header();
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

fn matrix_rows_csv(g: &Generator) -> String {
    match g {
        Generator::Ring(m) => {
            let header: Vec<String> = (1..=m.cols()).map(|j| format!("c{j}")).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_out(&header, (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.coeffs().to_string()).collect::<Vec<_>>()))
        }
        Generator::Binary(m) => csv_out(&["row"], m.row_vectors().iter().map(|r| vec![r.to_string()])),
    }
}

fn gen(a: GenArgs) -> Outcome {
    let l = load(&a.src)?;
    let text = match a.src.format {
        Format::Text => write_generator(&l.generator),
        Format::Json => json_out(with_header(&l, matrix_json(&l.generator))),
        Format::Csv => matrix_rows_csv(&l.generator),
    };
    match a.out {
        Some(path) => {
            fs::write(&path, text)?;
            Ok((String::new(), 0))
        }
        None => Ok((text, 0)),
    }
}

fn enumerate(src: Source) -> Outcome {
    let l = load(&src)?;
    let code = l.code()?;
    let words: Vec<String> =
        code.codewords().map(|w| w.iter().map(u16::to_string).collect::<Vec<_>>().join(" ")).collect();
    Ok((
        match src.format {
            Format::Text => words.iter().map(|w| format!("{w}\n")).collect(),
            Format::Json => json_out(with_header(
                &l,
                json!({
                    "size": code.size(),
                    "two_dimension": code.two_dimension(),
                    "codewords": (0..code.size()).map(|i| elements_json(&code.codeword(i))).collect::<Vec<_>>(),
                }),
            )),
            Format::Csv => {
                csv_out(&["index", "codeword"], words.into_iter().enumerate().map(|(i, w)| vec![i.to_string(), w]))
            }
        },
        0,
    ))
}

fn binary_hamming(code: &BinaryCode) -> Vec<(Rational, u64)> {
    code.weight_counts().into_iter().map(|(w, c)| (Rational::from_integer(w as i128), c)).collect()
}

fn wdist(a: WdistArgs) -> Outcome {
    let l = load(&a.src)?;
    let counts: Vec<(Rational, u64)> = match &l.generator {
        Generator::Binary(m) => {
            if a.metric != Metric::Hamming {
                return Err(Failure { code: 2, message: "binary families only carry the Hamming metric".into() });
            }
            let rank = m.rank();
            if rank > 24 {
                return Err(Error::ResourceLimit { what: "binary span", needed: 1 << rank, limit: 1 << 24 }.into());
            }
            binary_hamming(&m.span())
        }
        Generator::Ring(_) => weight_distribution(&l.code()?, a.metric).counts.into_iter().collect(),
    };
    let dist = rqcodes_core::WeightDistribution { metric: a.metric, counts: counts.into_iter().collect() };
    Ok((
        match a.src.format {
            Format::Text => format!("{dist}\n"),
            Format::Json => json_out(with_header(
                &l,
                json!({ "metric": a.metric.name(), "distribution": weight_distribution_json(&dist) }),
            )),
            Format::Csv => {
                csv_out(&["weight", "count"], dist.counts.iter().map(|(w, c)| vec![w.to_string(), c.to_string()]))
            }
        },
        0,
    ))
}

fn gray(a: GrayArgs) -> Outcome {
    let l = load(&a.src)?;
    let map = match a.map {
        MapArg::Lee => GrayMap::Lee,
        MapArg::Hom => GrayMap::Hom(HomMode::Linear),
        MapArg::HomWeightExact => GrayMap::Hom(HomMode::WeightExact),
    };
    let img = Generator::Binary(l.ring()?.gray_image(map));
    Ok((
        match a.src.format {
            Format::Text => write_generator(&img),
            Format::Json => json_out(with_header(&l, matrix_json(&img))),
            Format::Csv => matrix_rows_csv(&img),
        },
        0,
    ))
}

fn parse_set(text: &str, q: u32) -> Result<u32, Error> {
    let mut set = 0u32;
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: u32 =
            part.trim_start_matches('u').parse().map_err(|_| Error::Parse(format!("bad index {part:?} in --set")))?;
        if i == 0 || i > q {
            return Err(Error::InvalidParameter(format!("index {i} outside 1..={q}")));
        }
        set |= 1 << (i - 1);
    }
    Ok(set)
}

fn torsion(a: TorsionArgs) -> Outcome {
    let l = load(&a.src)?;
    let code = l.code()?;
    let (label, tor) = if a.residue {
        ("residue".to_string(), code.residue_code())
    } else {
        let set = parse_set(&a.set, code.ring().q())?;
        (format!("Tor{{{}}}", a.set), code.torsion_code(set)?)
    };
    let basis = tor.basis();
    let dmin = tor.min_nonzero_weight();
    Ok((
        match a.src.format {
            Format::Text => {
                let mut s = format!(
                    "{label} length={} dimension={} dmin={}\n",
                    tor.len(),
                    tor.rank(),
                    dmin.map_or("none".to_string(), |d| d.to_string())
                );
                for b in &basis {
                    s.push_str(&format!("{b}\n"));
                }
                s
            }
            Format::Json => json_out(with_header(
                &l,
                json!({
                    "code": label,
                    "length": tor.len(),
                    "dimension": tor.rank(),
                    "min_distance": dmin,
                    "basis": basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                    "distribution": distribution_of(&tor),
                }),
            )),
            Format::Csv => csv_out(&["basis"], basis.iter().map(|b| vec![b.to_string()])),
        },
        0,
    ))
}

fn distribution_of(code: &BinaryCode) -> Value {
    let mut m = Map::new();
    for (w, c) in code.weight_counts() {
        m.insert(w.to_string(), json!(c));
    }
    Value::Object(m)
}

fn project(a: ProjectArgs) -> Outcome {
    let l = load(&a.src)?;
    let mut m = l.ring()?.clone();
    for _ in 0..a.times {
        m = m.project()?;
    }
    let g = Generator::Ring(m);
    Ok((
        match a.src.format {
            Format::Text => write_generator(&g),
            Format::Json => json_out(with_header(&l, matrix_json(&g))),
            Format::Csv => matrix_rows_csv(&g),
        },
        0,
    ))
}

fn covradius(a: CovArgs) -> Outcome {
    let l = load(&a.src)?;
    let g = l.ring()?;
    let engine = match a.engine.as_str() {
        "auto" => choose_engine(g, a.metric, &l.limits),
        other => other.parse::<Engine>()?,
    };
    let workers = a.workers.unwrap_or_else(parallel::default_workers);
    let result = if engine == Engine::Exhaustive {
        let code = CodeOverRq::enumerate(g, &l.limits)?;
        parallel::exhaustive(&code, &SymbolWeights::new(g.ring(), a.metric), &l.limits, workers)?
    } else {
        covering_radius(g, a.metric, engine, &l.limits)?
    };
    Ok((
        match a.src.format {
            Format::Text => format!("{}\n", result.value),
            Format::Json => json_out(with_header(
                &l,
                json!({
                    "metric": a.metric.name(),
                    "radius": rational_json(&result.value),
                    "engine": result.engine.name(),
                    "certificate": elements_json(&result.certificate),
                }),
            )),
            Format::Csv => csv_out(
                &["metric", "radius", "engine", "certificate"],
                [vec![
                    a.metric.name().to_string(),
                    result.value.to_string(),
                    result.engine.name().to_string(),
                    result.certificate.iter().map(|e| e.coeffs().to_string()).collect::<Vec<_>>().join(" "),
                ]],
            ),
        },
        0,
    ))
}

fn audit(a: AuditArgs) -> Outcome {
    let budget = Budget { max_q: a.max_q, max_k: a.max_k, max_n: a.max_n, limits: limits_from_env(a.enum_limit)? };
    let workers = a.workers.unwrap_or_else(parallel::default_workers);
    let report = if a.claim.is_empty() {
        parallel::audit(&budget, workers)
    } else {
        let mut entries = Vec::new();
        for id in &a.claim {
            entries.extend(find_claim(id)?.evaluate(&budget));
        }
        AuditReport::from_entries(entries)
    };
    let text = match a.format {
        Format::Text => audit_text(&report),
        Format::Json => audit_json(&report),
        Format::Csv => audit_csv(&report),
    };
    let code = u8::from(a.fail_on_mismatch && report.count(Verdict::Mismatch) > 0);
    match a.out {
        Some(path) => {
            fs::write(&path, &text)?;
            Ok((String::new(), code))
        }
        None => Ok((text, code)),
    }
}

fn verify(src: Source) -> Outcome {
    let path = src.input.clone().ok_or_else(|| Failure { code: 2, message: "verify needs --input".into() })?;
    let text = fs::read_to_string(&path)?;
    let parsed = parse_generator(&text)?;
    let round_trip = parse_generator(&write_generator(&parsed))? == parsed;
    let mut report = vec![format!("round-trip: {}", if round_trip { "ok" } else { "FAILED" })];
    let mut ok = round_trip;
    if let Some(family) = src.family {
        let limits = limits_from_env(src.enum_limit)?;
        let p = ConstructionParams { family, q: src.q, k: src.k, u: src.u, n: src.n, c: src.c.clone() };
        let same = match (&parsed, p.build(&limits)?) {
            (Generator::Ring(a), Generator::Ring(b)) => {
                a.ring() == b.ring() && a.row_count() == b.row_count() && column_multiset_equal(a, &b)?
            }
            (Generator::Binary(a), Generator::Binary(b)) => {
                a.row_count() == b.row_count() && column_multiset_equal(a, &b)?
            }
            _ => false,
        };
        ok &= same;
        report.push(format!("columns match {}: {}", family.name(), if same { "ok" } else { "FAILED" }));
    }
    let out = match src.format {
        Format::Json => json_out(json!({ "path": path.display().to_string(), "ok": ok, "checks": report })),
        _ => report.iter().map(|l| format!("{l}\n")).collect(),
    };
    Ok((out, u8::from(!ok)))
}
