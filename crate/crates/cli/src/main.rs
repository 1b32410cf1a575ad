mod render;

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lul_core::oracle::min_offdiag_bruteforce;
use lul_core::report::{CircuitReport, DecompositionReport, OracleReport};
use lul_core::slp::{
    apply_linear_perm, ram_addressing, recover_matrix, simulate_stream, synthesize_circuit, PermutationTable,
};
use lul_core::text::{parse_permutation, MatrixText};
use lul_core::{
    complete_decomposition, construct_l, decompose_pareto, rank_exchange, verify_decomposition, BlockedMatrix, Error,
    Field, FieldSpec, Gf2, Gfp, Matrix, ParetoTarget, Rationals, StrategyRegistry,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Minimal off-diagonal rank L·U·L block factorizations and streaming
/// permutation circuits.
#[derive(Parser)]
#[command(name = "lul", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Matrix file in the text format; stdin when omitted or `-`.
    input: Option<PathBuf>,
    /// Expected field (f2, fp:<p>, q); must agree with the file header.
    #[arg(long)]
    field: Option<String>,
    /// Block split `M N`, overriding the header (M + N must be unchanged).
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    split: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Factor P = (I 0; L I)(C4 C3; 0 C1)(I 0; R I) with minimal rank L + rank R.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// How L is chosen; see `lul strategies`.
        #[arg(long, default_value = "optimal")]
        strategy: String,
        /// Realize a given Pareto point (rank L, rank R).
        #[arg(long, num_args = 2, value_names = ["L", "R"], conflicts_with = "strategy")]
        target: Option<Vec<usize>>,
    },
    /// Rank profile, lower bounds and Pareto frontier.
    Bounds {
        #[command(flatten)]
        common: Common,
    },
    /// Check a decomposition report (JSON) against the matrix.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        decomposition: PathBuf,
    },
    /// Trade rank R for rank L along the frontier.
    Exchange {
        #[command(flatten)]
        common: Common,
        /// Start from the L of this decomposition report instead of the
        /// minimal-rank-L construction.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Synthesize a switch / RAM / switch circuit for a bit matrix.
    SlpSynth {
        #[command(flatten)]
        common: Common,
        /// Include the per-port RAM read schedule.
        #[arg(long)]
        schedule: bool,
    },
    /// Simulate a circuit report (JSON) or the circuit of a matrix file.
    SlpSim {
        #[command(flatten)]
        common: Common,
        /// Include the full index mapping.
        #[arg(long)]
        table: bool,
    },
    /// Recover the bit matrix of a linear permutation table.
    PermRecover {
        /// Whitespace-separated images of 0, 1, 2, ...; stdin when omitted.
        input: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        split: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive search over all L (GF(2), n*m <= 20).
    Oracle {
        #[command(flatten)]
        common: Common,
    },
    /// List the strategies for choosing L.
    Strategies {
        #[arg(long, default_value = "f2")]
        field: String,
    },
    /// Decompose random matrices along their whole frontier and verify.
    Selftest {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest matrix size.
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long, default_value = "f2")]
        field: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    /// Exit 1: the input is well formed but the request cannot be met.
    Domain(String),
    /// Exit 2: malformed input or invocation.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// A report plus whether it represents a successful check.
struct Output {
    report: Value,
    ok: bool,
}

impl Output {
    fn ok(report: Value) -> Self {
        Output { report, ok: true }
    }
}

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Field-specific pieces the generic commands need.
trait CliField: Field + Sized {
    fn registry() -> StrategyRegistry<Self>;
}

impl CliField for Gf2 {
    fn registry() -> StrategyRegistry<Self> {
        StrategyRegistry::for_gf2()
    }
}

impl CliField for Gfp {
    fn registry() -> StrategyRegistry<Self> {
        StrategyRegistry::with_builtins()
    }
}

impl CliField for Rationals {
    fn registry() -> StrategyRegistry<Self> {
        StrategyRegistry::with_builtins()
    }
}

/// Runs `$body` with `$f` bound to the field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Gf2 => {
                let $f = Gf2;
                $body
            }
            FieldSpec::Gfp(p) => {
                let $f = Gfp::new(p)?;
                $body
            }
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
        }
    };
}

struct Loaded {
    text: MatrixText,
    m: usize,
}

fn load(common: &Common) -> CliResult<Loaded> {
    load_from(&read_input(&common.input)?, common)
}

fn load_from(input: &str, common: &Common) -> CliResult<Loaded> {
    let text = MatrixText::parse(input)?;
    if let Some(f) = &common.field {
        let want = FieldSpec::parse(f).map_err(|e| Failure::Usage(e.to_string()))?;
        if want != text.field {
            return Err(Failure::Usage(format!(
                "--field {want} but the input is over {}",
                text.field
            )));
        }
    }
    let m = match common.split.as_deref() {
        Some([m, n]) if m + n == text.m + text.n => *m,
        Some([m, n]) => {
            return Err(Failure::Usage(format!(
                "--split {m} {n} does not fit a matrix of size {}",
                text.m + text.n
            )))
        }
        _ => text.m,
    };
    Ok(Loaded { text, m })
}

impl Loaded {
    fn blocked<F: Field>(&self, field: F) -> CliResult<BlockedMatrix<F>> {
        Ok(BlockedMatrix::new(self.text.to_matrix(field)?, self.m)?)
    }

    fn gf2(&self) -> CliResult<BlockedMatrix<Gf2>> {
        if self.text.field != FieldSpec::Gf2 {
            return Err(Failure::Domain(format!(
                "this command works over f2, the input is over {}",
                self.text.field
            )));
        }
        self.blocked(Gf2)
    }
}

fn decompose<F: CliField>(field: F, ld: &Loaded, strategy: &str, target: Option<&[usize]>) -> CliResult<Output> {
    let bm = ld.blocked(field)?;
    let d = match target {
        Some(&[l, r]) => decompose_pareto(&bm, ParetoTarget::new(l, r))?,
        _ => F::registry().get(strategy)?.decompose(&bm)?,
    };
    Ok(Output::ok(to_json(&DecompositionReport::new(&bm, &d))))
}

fn bounds<F: Field>(field: F, ld: &Loaded) -> CliResult<Output> {
    let bm = ld.blocked(field)?;
    let profile = bm.rank_profile();
    let b = bm.bounds();
    Ok(Output::ok(json!({
        "m": bm.m(),
        "n": bm.n(),
        "field": bm.field().spec().to_string(),
        "profile": profile,
        "bounds": b,
        "case": if profile.is_case1(bm.m(), bm.n()) { 1 } else { 2 },
        "frontier": ParetoTarget::frontier(&b),
    })))
}

fn read_report(path: &PathBuf) -> CliResult<DecompositionReport> {
    let s = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn verify<F: Field>(field: F, ld: &Loaded, path: &PathBuf) -> CliResult<Output> {
    let bm = ld.blocked(field.clone())?;
    let rep = read_report(path)?;
    if (rep.m, rep.n) != (bm.m(), bm.n()) {
        return Err(Failure::Domain(format!(
            "report is for a {}+{} split, the matrix is split {}+{}",
            rep.m,
            rep.n,
            bm.m(),
            bm.n()
        )));
    }
    let d = rep.to_decomposition(field)?;
    let v = verify_decomposition(&bm, &d);
    Ok(Output {
        ok: v.valid && v.bounds_ok(),
        report: to_json(&v),
    })
}

fn exchange<F: Field>(field: F, ld: &Loaded, from: Option<&PathBuf>, steps: usize) -> CliResult<Output> {
    let bm = ld.blocked(field.clone())?;
    let mut l: Matrix<F> = match from {
        Some(p) => read_report(p)?.to_decomposition(field)?.l,
        None => construct_l(&bm)?,
    };
    for _ in 0..steps {
        l = rank_exchange(&bm, &l)?;
    }
    let d = complete_decomposition(&bm, &l)?;
    Ok(Output::ok(to_json(&DecompositionReport::new(&bm, &d))))
}

fn slp_synth(ld: &Loaded, schedule: bool) -> CliResult<Output> {
    let spec = synthesize_circuit(&ld.gf2()?)?;
    let mut report = to_json(&CircuitReport::new(&spec));
    if schedule {
        let s = ram_addressing(&spec)?;
        report["ram_schedule"] = json!({
            "latency": s.latency,
            "bijective": s.bijective,
            "max_occupancy": s.max_occupancy,
            "ports": s.ports.iter().map(|p| json!({
                "port": p.port,
                "max_occupancy": p.max_occupancy,
                "read_cycles": p.accesses.iter().map(|a| a.read_cycle).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
    }
    Ok(Output::ok(report))
}

fn slp_sim(common: &Common, table: bool) -> CliResult<Output> {
    let input = read_input(&common.input)?;
    let spec = if input.trim_start().starts_with('{') {
        let rep: CircuitReport =
            serde_json::from_str(&input).map_err(|e| Failure::Usage(format!("circuit report: {e}")))?;
        rep.to_spec()?
    } else {
        synthesize_circuit(&load_from(&input, common)?.gf2()?)?
    };
    let sim = simulate_stream(&spec)?;
    let expected = apply_linear_perm(&spec.product())?;
    let matches = sim == expected;
    let mut report = json!({
        "m": spec.m,
        "n": spec.n,
        "points": sim.size(),
        "matches": matches,
    });
    if table {
        report["mapping"] = json!(sim.mapping());
    }
    Ok(Output { report, ok: matches })
}

fn perm_recover(input: &Option<PathBuf>, split: Option<&[usize]>) -> CliResult<(Value, String)> {
    let table =
        PermutationTable::new(parse_permutation(&read_input(input)?)?).map_err(|e| Failure::Usage(e.to_string()))?;
    let p = recover_matrix(&table)?;
    let k = p.rows();
    let m = match split {
        Some(&[m, n]) if m + n == k => m,
        Some(&[m, n]) => return Err(Failure::Usage(format!("--split {m} {n} does not fit width {k}"))),
        _ => k,
    };
    let bm = BlockedMatrix::new(p, m)?;
    let report = json!({
        "field": "f2",
        "m": bm.m(),
        "n": bm.n(),
        "matrix": bm.matrix().to_row_strings(),
    });
    Ok((report, lul_core::text::format_matrix_text(&bm)))
}

fn oracle(ld: &Loaded) -> CliResult<Output> {
    let bm = ld.gf2()?;
    let res = min_offdiag_bruteforce(&bm)?;
    Ok(Output::ok(to_json(&OracleReport::new(&bm, &res)?)))
}

fn strategies<F: CliField>(_: F) -> CliResult<Output> {
    let reg = F::registry();
    let list: Vec<Value> = reg
        .iter()
        .map(|s| json!({"name": s.name(), "description": s.description()}))
        .collect();
    Ok(Output::ok(json!({ "strategies": list })))
}

fn random_invertible<F: Field>(field: &F, rng: &mut ChaCha8Rng, k: usize) -> Matrix<F> {
    loop {
        let v: Vec<i64> = (0..k * k).map(|_| rng.gen_range(-3..=3)).collect();
        let p = Matrix::from_i64(field.clone(), k, k, &v).expect("shape matches");
        if lul_core::linalg::is_invertible(&p) {
            return p;
        }
    }
}

fn selftest<F: Field>(field: F, seed: u64, count: usize, size: usize) -> CliResult<Output> {
    if size < 1 {
        return Err(Failure::Usage("--size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut targets, mut failures) = (0usize, Vec::new());
    for i in 0..count {
        let k = rng.gen_range(1..=size);
        let m = rng.gen_range(0..=k);
        let bm = BlockedMatrix::new(random_invertible(&field, &mut rng, k), m)?;
        for t in ParetoTarget::frontier(&bm.bounds()) {
            targets += 1;
            let ok = decompose_pareto(&bm, t)
                .map(|d| {
                    let v = verify_decomposition(&bm, &d);
                    v.optimal && (d.rank_l, d.rank_r) == (t.l, t.r)
                })
                .unwrap_or(false);
            if !ok {
                failures.push(json!({"instance": i, "m": m, "n": k - m, "target": t}));
            }
        }
    }
    Ok(Output {
        ok: failures.is_empty(),
        report: json!({
            "seed": seed,
            "field": field.spec().to_string(),
            "instances": count,
            "targets": targets,
            "failed": failures.len(),
            "failures": failures,
        }),
    })
}

fn emit(report: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("valid JSON")),
        Format::Text => print!("{}", render::to_text(report)),
    }
}

fn parse_field(s: &str) -> CliResult<FieldSpec> {
    FieldSpec::parse(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> CliResult<bool> {
    let (out, format) = match cli.command {
        Command::Decompose {
            common,
            strategy,
            target,
        } => {
            let ld = load(&common)?;
            let out = with_field!(ld.text.field, f => decompose(f, &ld, &strategy, target.as_deref()))?;
            (out, common.format)
        }
        Command::Bounds { common } => {
            let ld = load(&common)?;
            (with_field!(ld.text.field, f => bounds(f, &ld))?, common.format)
        }
        Command::Verify { common, decomposition } => {
            let ld = load(&common)?;
            (
                with_field!(ld.text.field, f => verify(f, &ld, &decomposition))?,
                common.format,
            )
        }
        Command::Exchange {
            common,
            decomposition,
            steps,
        } => {
            let ld = load(&common)?;
            let out = with_field!(ld.text.field, f => exchange(f, &ld, decomposition.as_ref(), steps))?;
            (out, common.format)
        }
        Command::SlpSynth { common, schedule } => (slp_synth(&load(&common)?, schedule)?, common.format),
        Command::SlpSim { common, table } => (slp_sim(&common, table)?, common.format),
        Command::PermRecover { input, split, format } => {
            let (report, text) = perm_recover(&input, split.as_deref())?;
            match format {
                Format::Json => emit(&report, format),
                Format::Text => print!("{text}"),
            }
            return Ok(true);
        }
        Command::Oracle { common } => (oracle(&load(&common)?)?, common.format),
        Command::Strategies { field } => {
            let spec = parse_field(&field)?;
            (with_field!(spec, f => strategies(f))?, Format::Text)
        }
        Command::Selftest {
            seed,
            count,
            size,
            field,
            format,
        } => {
            let spec = parse_field(&field)?;
            (with_field!(spec, f => selftest(f, seed, count, size))?, format)
        }
    };
    emit(&out.report, format);
    Ok(out.ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
