mod cache;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use fusionkit::checks::{self, Suite};
use fusionkit::fusion::{self, Backend, FusionTable, Level};
use fusionkit::{CartanType, Context, Error, Limits, RootSystem, Weight};
use serde_json::{json, Value};

use crate::cache::Cache;

#[derive(Debug, Parser)]
#[command(name = "fusionkit", version, about = "Weight multiplicities, tensor products and affine fusion rules")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Cache directory (default: $FUSIONKIT_CACHE, then ./.fusionkit-cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest module built explicitly
    #[arg(long, default_value_t = Limits::default().max_dim, global = true)]
    max_dim: u64,
    /// Largest Weyl group accepted
    #[arg(long, default_value_t = Limits::default().max_weyl, global = true)]
    max_weyl: u64,
    /// Largest dim(V^lambda) * dim(V^mu) for the fz backend
    #[arg(long, default_value_t = Limits::default().max_fz_dim, global = true)]
    max_fz_dim: u64,
    /// Worker threads for table sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Walton,
    Kacwalton,
    Fz,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cartan matrix, highest root, marks, comarks, dual Coxeter number, |W|
    Rootdata { cartan_type: String },
    /// Weight diagram of V^lambda
    Weights {
        cartan_type: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Decomposition of V^lambda ⊗ V^mu
    Tensor {
        cartan_type: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    /// Level-k fusion: the whole table, one product, or one coefficient
    Fusion {
        cartan_type: String,
        #[arg(long)]
        level: u64,
        #[arg(long, value_enum, default_value_t = BackendArg::Walton)]
        backend: BackendArg,
        /// Zero, two (lambda mu) or three (lambda mu nu) weights
        #[arg(allow_hyphen_values = true, num_args = 0..=3)]
        weights: Vec<String>,
    },
    /// Run a verification suite
    Verify {
        suite: String,
        /// Narrow three-way or axioms to one Cartan type (needs --level)
        cartan_type: Option<String>,
        #[arg(long)]
        level: Option<u64>,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Check(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) => match e {
                Error::Parse { .. } | Error::UnsupportedType(_) => 2,
                Error::NotDominant(_)
                | Error::RankMismatch { .. }
                | Error::IndexOutOfRange { .. }
                | Error::NotAWeight { .. }
                | Error::LevelViolation { .. }
                | Error::InvalidLevel(_) => 3,
                Error::CapExceeded { .. } => 4,
                Error::Internal(_) => 1,
            },
            Failure::Usage(_) => 2,
            Failure::Check(_) | Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Usage(s) | Failure::Check(s) => f.write_str(s),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// One command's result: a JSON document plus the same data as TSV rows.
struct Output {
    json: Value,
    tsv: Vec<Vec<String>>,
}

fn coords(w: &Weight) -> Value {
    json!(w.coords())
}

fn entries_output(kind: &str, cartan: CartanType, level: Option<Level>, rows: Vec<(Vec<&Weight>, u64)>) -> Output {
    let entries: Vec<Value> = rows
        .iter()
        .map(|(key, v)| json!({ "key": key.iter().map(|w| coords(w)).collect::<Vec<_>>(), "value": v }))
        .collect();
    let mut json = json!({ "type": cartan.to_string(), "kind": kind, "entries": entries });
    if let Some(k) = level {
        json["level"] = json!(k.get());
    }
    let tsv = rows
        .into_iter()
        .map(|(key, v)| key.iter().map(|w| w.to_string()).chain(std::iter::once(v.to_string())).collect())
        .collect();
    Output { json, tsv }
}

struct App {
    limits: Limits,
    cache: Option<Cache>,
}

impl App {
    fn context(&self, cartan: CartanType) -> Outcome<Context> {
        Ok(Context::new(cartan, self.limits)?)
    }

    /// Seeds the context with a cached diagram for `lambda`, if any.
    fn preload_diagram(&self, ctx: &Context, lambda: &Weight) {
        let Some(cache) = &self.cache else { return };
        let t = ctx.root_system().cartan_type();
        if let Some(d) = cache.load(&cache::diagram_key(t, lambda)).as_ref().and_then(cache::diagram_from_entry) {
            if d.highest() == lambda {
                let _ = ctx.insert_diagram(d);
            }
        }
    }

    /// Persists every diagram the context computed that is not yet on disk.
    fn save_diagrams(&self, ctx: &Context) {
        let Some(cache) = &self.cache else { return };
        let t = ctx.root_system().cartan_type();
        for d in ctx.cached_diagrams() {
            if !cache.contains(&cache::diagram_key(t, d.highest())) {
                if let Err(e) = cache.store(&cache::diagram_entry(t, &d)) {
                    eprintln!("warning: cache write failed: {e}");
                    return;
                }
            }
        }
    }

    fn cached_table(&self, ctx: &Context, k: Level, backend: Backend) -> Outcome<FusionTable> {
        let t = ctx.root_system().cartan_type();
        if let Some(cache) = &self.cache {
            let hit = cache.load(&cache::table_key(t, k, backend)).as_ref().and_then(cache::table_from_entry);
            if let Some(table) = hit.filter(|tb| tb.cartan_type == t && tb.level == k) {
                return Ok(table);
            }
        }
        let table = fusion::fusion_table(ctx, k, backend)?;
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.store(&cache::table_entry(&table, backend)) {
                eprintln!("warning: cache write failed: {e}");
            }
        }
        Ok(table)
    }
}

fn parse<T: FromStr<Err = Error>>(s: &str) -> Outcome<T> {
    Ok(s.parse()?)
}

fn rootdata(t: CartanType) -> Outcome<Output> {
    let rs = RootSystem::with_weyl_cap(t, u64::MAX)?;
    let json = json!({
        "type": t.to_string(),
        "rank": rs.rank(),
        "cartan_matrix": rs.cartan_matrix(),
        "theta": coords(rs.theta()),
        "marks": rs.marks(),
        "comarks": rs.comarks(),
        "dual_coxeter": rs.dual_coxeter(),
        "weyl_order": rs.weyl_order(),
        "rho": coords(rs.rho()),
        "dual_permutation": rs.dual_permutation(),
    });
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    let cartan = rs.cartan_matrix().iter().map(|r| join(r)).collect::<Vec<_>>().join(";");
    let tsv = vec![
        vec!["type".into(), t.to_string()],
        vec!["rank".into(), rs.rank().to_string()],
        vec!["cartan_matrix".into(), cartan],
        vec!["theta".into(), rs.theta().to_string()],
        vec!["marks".into(), join(rs.marks())],
        vec!["comarks".into(), join(rs.comarks())],
        vec!["dual_coxeter".into(), rs.dual_coxeter().to_string()],
        vec!["weyl_order".into(), rs.weyl_order().to_string()],
    ];
    Ok(Output { json, tsv })
}

fn weights(app: &App, t: CartanType, lambda: &str) -> Outcome<Output> {
    let ctx = app.context(t)?;
    let lambda: Weight = parse(lambda)?;
    app.preload_diagram(&ctx, &lambda);
    let d = ctx.diagram(&lambda)?;
    app.save_diagrams(&ctx);
    let rows = d.table().iter().map(|(w, &m)| (vec![w], m)).collect();
    let mut out = entries_output("weights", t, None, rows);
    out.json["dimension"] = json!(d.dimension());
    Ok(out)
}

fn tensor(app: &App, t: CartanType, lambda: &str, mu: &str) -> Outcome<Output> {
    let ctx = app.context(t)?;
    let (lambda, mu): (Weight, Weight) = (parse(lambda)?, parse(mu)?);
    app.preload_diagram(&ctx, &lambda);
    let dec = ctx.tensor_decompose(&lambda, &mu)?;
    app.save_diagrams(&ctx);
    let rows = dec.terms.iter().map(|(nu, &m)| (vec![nu], m)).collect();
    Ok(entries_output("tensor", t, None, rows))
}

fn backends(b: BackendArg) -> Vec<Backend> {
    match b {
        BackendArg::Walton => vec![Backend::Walton],
        BackendArg::Kacwalton => vec![Backend::KacWalton],
        BackendArg::Fz => vec![Backend::Fz],
        BackendArg::All => Backend::ALL.to_vec(),
    }
}

/// Values of one cell per backend; `None` when a backend is over its cap.
type Cell = Vec<(Backend, Option<u64>)>;

fn evaluate_cells(ctx: &Context, k: Level, chosen: &[Backend], triples: &[(Weight, Weight, Weight)]) -> Outcome<Vec<Cell>> {
    use rayon::prelude::*;
    let multi = chosen.len() > 1;
    triples
        .par_iter()
        .map(|(l, m, n)| {
            chosen
                .iter()
                .map(|&b| match fusion::coefficient(ctx, k, b, l, m, n) {
                    Ok(v) => Ok((b, Some(v))),
                    Err(Error::CapExceeded { .. }) if multi && b == Backend::Fz => Ok((b, None)),
                    Err(e) => Err(Failure::Lib(e)),
                })
                .collect()
        })
        .collect()
}

fn fusion_cmd(app: &App, t: CartanType, level: u64, backend: BackendArg, ws: &[String]) -> Outcome<Output> {
    let ctx = app.context(t)?;
    let k = Level::new(level)?;
    let rs = ctx.root_system();
    let parsed = ws.iter().map(|s| parse::<Weight>(s)).collect::<Outcome<Vec<_>>>()?;
    let alcove = fusion::level_alcove(rs, k);
    let triples: Vec<(Weight, Weight, Weight)> = match parsed.as_slice() {
        [] => {
            let mut v = Vec::new();
            for l in &alcove {
                for m in &alcove {
                    v.extend(alcove.iter().map(|n| (l.clone(), m.clone(), n.clone())));
                }
            }
            v
        }
        [l, m] => {
            for w in [l, m] {
                if !fusion::in_alcove(rs, w, k) {
                    rs.check_dominant(w)?;
                    return Err(Error::LevelViolation { weight: w.clone(), level: k.get() }.into());
                }
            }
            alcove.iter().map(|n| (l.clone(), m.clone(), n.clone())).collect()
        }
        [l, m, n] => vec![(l.clone(), m.clone(), n.clone())],
        _ => return Err(Failure::Usage("fusion takes zero, two or three weights".into())),
    };
    let chosen = backends(backend);

    // a full single-backend table goes through the cache
    let cells: Vec<Cell> = if parsed.is_empty() && chosen.len() == 1 {
        let table = app.cached_table(&ctx, k, chosen[0])?;
        triples.iter().map(|(l, m, n)| vec![(chosen[0], Some(table.get(l, m, n)))]).collect()
    } else {
        evaluate_cells(&ctx, k, &chosen, &triples)?
    };
    app.save_diagrams(&ctx);

    // tables and products list nonzero cells; a single coefficient is always shown
    let keep = |c: &Cell| parsed.len() == 3 || c.iter().any(|(_, v)| v.unwrap_or(0) > 0);
    let single = chosen.len() == 1;
    let mut entries = Vec::new();
    let mut tsv = Vec::new();
    let mut all_agree = true;
    for ((l, m, n), cell) in triples.iter().zip(&cells) {
        if !keep(cell) {
            continue;
        }
        let key = json!([coords(l), coords(m), coords(n)]);
        let mut row = vec![l.to_string(), m.to_string(), n.to_string()];
        if single {
            let v = cell[0].1.expect("single backend values are always computed");
            entries.push(json!({ "key": key, "value": v }));
            row.push(v.to_string());
        } else {
            let computed: Vec<u64> = cell.iter().filter_map(|(_, v)| *v).collect();
            let agreement = computed.windows(2).all(|w| w[0] == w[1]);
            all_agree &= agreement;
            let mut e = json!({ "key": key, "value": computed[0], "agreement": agreement });
            for (b, v) in cell {
                e[b.name()] = json!(v);
                row.push(v.map_or_else(|| "capped".to_string(), |x| x.to_string()));
            }
            row.push(agreement.to_string());
            entries.push(e);
        }
        tsv.push(row);
    }
    let mut json = json!({ "type": t.to_string(), "level": k.get(), "kind": "fusion", "entries": entries });
    if single {
        json["backend"] = json!(chosen[0].name());
    } else {
        json["backend"] = json!("all");
        json["agreement"] = json!(all_agree);
    }
    if !all_agree {
        print_output(&Output { json, tsv }, app_format())?;
        return Err(Failure::Check("backends disagree".into()));
    }
    Ok(Output { json, tsv })
}

fn verify(app: &App, suite: &str, cartan: Option<&str>, level: Option<u64>) -> Outcome<Output> {
    let suite: Suite = parse(suite)?;
    let case = match (cartan, level) {
        (Some(t), Some(k)) => Some((parse::<CartanType>(t)?, Level::new(k)?)),
        (None, None) => None,
        _ => return Err(Failure::Usage("a suite case needs both a Cartan type and --level".into())),
    };
    if case.is_some() && !suite.takes_case() {
        return Err(Failure::Usage(format!("suite {suite} does not take a Cartan type and level")));
    }
    let report = checks::run(suite, case, app.limits)?;
    let json = json!({
        "suite": report.suite,
        "passed": report.passed(),
        "checks": report.checks,
        "skipped": report.skipped,
        "failures": report.failures,
    });
    let mut tsv = vec![vec![
        report.suite.clone(),
        if report.passed() { "pass" } else { "fail" }.to_string(),
        report.checks.to_string(),
        report.failures.len().to_string(),
        report.skipped.to_string(),
    ]];
    tsv.extend(report.failures.iter().map(|f| vec!["failure".to_string(), f.clone()]));
    let out = Output { json, tsv };
    if !report.passed() {
        print_output(&out, app_format())?;
        return Err(Failure::Check(format!("suite {suite} failed")));
    }
    Ok(out)
}

static FORMAT: std::sync::OnceLock<Format> = std::sync::OnceLock::new();

fn app_format() -> Format {
    *FORMAT.get().unwrap_or(&Format::Json)
}

fn print_output(out: &Output, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut lock, &out.json)?;
            writeln!(lock)?;
        }
        Format::Tsv => {
            for row in &out.tsv {
                writeln!(lock, "{}", row.join("\t"))?;
            }
        }
    }
    lock.flush()
}

fn run(cli: Cli) -> Outcome<Output> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot configure {n} jobs: {e}")))?;
    }
    let app = App {
        limits: Limits { max_dim: cli.max_dim, max_weyl: cli.max_weyl, max_fz_dim: cli.max_fz_dim },
        cache: (!cli.no_cache).then(|| Cache::locate(cli.cache_dir.as_deref())),
    };
    Ok(match &cli.command {
        Command::Rootdata { cartan_type } => rootdata(parse(cartan_type)?)?,
        Command::Weights { cartan_type, lambda } => weights(&app, parse(cartan_type)?, lambda)?,
        Command::Tensor { cartan_type, lambda, mu } => tensor(&app, parse(cartan_type)?, lambda, mu)?,
        Command::Fusion { cartan_type, level, backend, weights } => {
            fusion_cmd(&app, parse(cartan_type)?, *level, *backend, weights)?
        }
        Command::Verify { suite, cartan_type, level } => verify(&app, suite, cartan_type.as_deref(), *level)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let _ = FORMAT.set(format);
    match run(cli) {
        Ok(out) => match print_output(&out, format) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes() {
        let w = Weight::new(vec![1]);
        assert_eq!(Failure::Lib(Error::Parse { what: "weight", input: "x".into() }).exit_code(), 2);
        assert_eq!(Failure::Lib(Error::LevelViolation { weight: w, level: 1 }).exit_code(), 3);
        assert_eq!(Failure::Lib(Error::CapExceeded { what: "x", actual: 2, cap: 1 }).exit_code(), 4);
        assert_eq!(Failure::Lib(Error::Internal("x".into())).exit_code(), 1);
    }
}
