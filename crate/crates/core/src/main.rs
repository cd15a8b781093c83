use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use fcc::bitcore::{BitWord, Code, DistanceMatrix};
use fcc::bounds::{self, BoundResult};
use fcc::channel::{simulate, ChannelModel, Messages};
use fcc::codegen::{
    exact_min_length_with, greedy_irregular_code, hadamard_code, reed_muller_code, SearchBudget, SearchOptions,
    SearchOutcome,
};
use fcc::fcc::{decode, function_distance_matrix, verify_fcc, verify_fcc_sampled, FccEncoder};
use fcc::functions::{minmax_distance_oracle, ml_distance_matrix_for, wt_requirement_matrix};
use fcc::registry::{build_encoder, load_encoder, parse_config, Construction, FunctionRef, Params};
use fcc::table::{render_rows, row_function, table_row};
use fcc::{Error, Result};

/// Function-correcting codes: bounds, constructions, verification and simulation.
#[derive(Parser)]
#[command(name = "fcc", version)]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Function parameters as `key=value` lines or a flat JSON object.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a bound.
    Bounds(BoundsArgs),
    /// Build a code for a distance-requirement matrix.
    BuildCode(BuildCodeArgs),
    /// Build an encoder and print it in text form.
    FccBuild(EncoderArgs),
    /// Check the encoder property over message pairs.
    FccVerify(VerifyArgs),
    /// Encode messages.
    FccEncode(EncodeArgs),
    /// Decode received words to function values.
    FccDecode(DecodeArgs),
    /// Run the substitution channel and decode.
    Simulate(SimulateArgs),
    /// Redundancy comparison rows.
    Table(TableArgs),
    /// Brute-force function-distance oracles.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct MatrixArgs {
    /// `dwt`, `regular`, `dmm`, `function`, or a JSON matrix file.
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Rows of a regular matrix.
    #[arg(long)]
    m: Option<usize>,
    /// Entry of a regular matrix.
    #[arg(long)]
    d: Option<u32>,
    /// Min-max parts.
    #[arg(long)]
    w: Option<usize>,
    /// Min-max part length.
    #[arg(long)]
    l: Option<usize>,
    /// Function for `--matrix function`.
    #[arg(long)]
    function: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundMethod {
    Plotkin,
    Gv,
    GvRowSum,
    Sandwich,
    RegularPlotkin,
    Hadamard,
    GvClosedForm,
    Wt,
    MinmaxLower,
    MinmaxSpherePacking,
    MinmaxGv,
    EccData,
    EccValues,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    source: MatrixArgs,
    #[arg(long, value_enum)]
    method: BoundMethod,
    /// Expressiveness for `ecc-values`.
    #[arg(long)]
    e: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeMethod {
    Greedy,
    Exact,
    Hadamard,
    ReedMuller,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 32)]
    max_length: usize,
    #[arg(long, default_value_t = 50_000_000)]
    max_nodes: u64,
    /// Seconds.
    #[arg(long, default_value_t = 120)]
    time_limit: u64,
    /// Search the second row's branches on several threads.
    #[arg(long)]
    parallel: bool,
    /// Order words of interchangeable rows.
    #[arg(long)]
    interchangeable_rows: bool,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_length: self.max_length,
            max_nodes: self.max_nodes,
            time_limit: Duration::from_secs(self.time_limit),
        }
    }

    fn options(&self) -> SearchOptions {
        SearchOptions { interchangeable_rows: self.interchangeable_rows, parallel: self.parallel }
    }
}

#[derive(Args)]
struct BuildCodeArgs {
    #[command(flatten)]
    source: MatrixArgs,
    #[arg(long, value_enum, default_value = "greedy")]
    method: CodeMethod,
    /// Greedy length; defaults to the greedy threshold.
    #[arg(long)]
    length: Option<usize>,
    /// Use the descending row-sum order for greedy.
    #[arg(long)]
    row_sum_order: bool,
    /// Reed-Muller order.
    #[arg(long)]
    r: Option<u32>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct FunctionArgs {
    /// Registry name, e.g. `wt`, `delta_T:T=3`, `minmax:w=3,l=3`, `ml:sigmoid,k=5,eps=1`.
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct EncoderArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// `auto`, `1`..`4`, `locally-binary`, `generic` or `exact`.
    #[arg(long, default_value = "auto")]
    construction: Construction,
    /// Load the encoder from a file written by `fcc-build` instead.
    #[arg(long)]
    encoder: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    encoder: EncoderArgs,
    /// Check this many random pairs instead of all.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    encoder: EncoderArgs,
    #[arg(long = "message", required = true)]
    messages: Vec<String>,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    encoder: EncoderArgs,
    #[arg(long = "received", required = true)]
    received: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelKind {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    encoder: EncoderArgs,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ChannelKind,
    /// Channel errors; defaults to the encoder's `t`.
    #[arg(long)]
    errors: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random patterns per message.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Transmit this many sampled messages instead of all.
    #[arg(long)]
    sample: Option<u64>,
}

#[derive(Args)]
struct TableArgs {
    /// Registry name or `locally_binary:E=<values>`; repeatable.
    #[arg(long = "function", required = true)]
    functions: Vec<String>,
    /// Error counts; repeatable.
    #[arg(long = "t", default_value = "1")]
    ts: Vec<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct OracleArgs {
    /// `minmax:w=..,l=..` or an `ml:` activation.
    #[arg(long)]
    function: String,
    #[arg(long, default_value_t = 1)]
    t: usize,
}

struct Ctx {
    json: bool,
    params: Params,
}

impl Ctx {
    fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value)?);
        } else {
            print!("{}", human());
        }
        Ok(())
    }

    fn function(&self, args: &FunctionArgs) -> Result<FunctionRef> {
        let name = args.function.as_deref().ok_or_else(|| Error::InvalidParameter("--function is required".into()))?;
        FunctionRef::parse_with(name, &self.params)?.with_k(args.k)
    }

    fn encoder(&self, args: &EncoderArgs) -> Result<FccEncoder> {
        if let Some(path) = &args.encoder {
            return load_encoder(&fs::read_to_string(path)?);
        }
        let f = self.function(&args.function)?;
        build_encoder(&f, args.t, args.construction, &args.budget.budget())
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required")))
}

fn matrix(ctx: &Ctx, a: &MatrixArgs) -> Result<DistanceMatrix> {
    match need(a.matrix.as_deref(), "matrix")? {
        "dwt" => Ok(wt_requirement_matrix(need(a.k, "k")?, need(a.t, "t")?)),
        "regular" => Ok(DistanceMatrix::regular(need(a.m, "m")?, need(a.d, "d")?)),
        "dmm" => Ok(minmax_distance_oracle(need(a.w, "w")?, need(a.l, "l")?)?.requirement_matrix(need(a.t, "t")?)),
        "function" => {
            let fargs = FunctionArgs { function: a.function.clone(), k: a.k };
            function_distance_matrix(&ctx.function(&fargs)?.spec()?, need(a.t, "t")?)
        }
        path => DistanceMatrix::from_json(&fs::read_to_string(path)?),
    }
}

fn run_bounds(ctx: &Ctx, a: &BoundsArgs) -> Result<ExitCode> {
    let s = &a.source;
    let to_u32 = |x: usize| u32::try_from(x).map_err(|_| Error::TooLarge(format!("{x}")));
    let single = |b: BoundResult| -> Result<ExitCode> {
        ctx.emit(&b, || format!("{b}\n"))?;
        Ok(ExitCode::SUCCESS)
    };
    match a.method {
        BoundMethod::Plotkin => single(bounds::plotkin_irregular(&matrix(ctx, s)?)),
        BoundMethod::Gv | BoundMethod::GvRowSum => {
            let d = matrix(ctx, s)?;
            let order = match a.method {
                BoundMethod::Gv => bounds::identity_order(d.dim()),
                _ => bounds::row_sum_order(&d),
            };
            single(BoundResult::upper_int(bounds::gv_irregular_threshold(&d, &order)? as i64, "irregular-gv"))
        }
        BoundMethod::Sandwich => {
            let sw = bounds::sandwich(&matrix(ctx, s)?);
            ctx.emit(&sw, || match &sw.upper {
                Some(u) => format!("{} <= N <= {}\n", sw.lower, u),
                None => format!("{} <= N\n", sw.lower),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        BoundMethod::RegularPlotkin => single(bounds::plotkin_regular(need(s.m, "m")?, need(s.d, "d")?)),
        BoundMethod::Hadamard => single(bounds::hadamard_upper(need(s.m, "m")?, need(s.d, "d")?).ok_or_else(|| {
            Error::InvalidParameter("the Hadamard bound needs an even d and a Sylvester order".into())
        })?),
        BoundMethod::GvClosedForm => single(
            bounds::gv_regular_closed_form(need(s.m, "m")?, need(s.d, "d")?)
                .ok_or_else(|| Error::InvalidParameter("the closed form does not apply".into()))?,
        ),
        BoundMethod::Wt => single(bounds::wt_lower_bound(to_u32(need(s.t, "t")?)?)),
        BoundMethod::MinmaxLower => {
            single(bounds::minmax_lower_bound(to_u32(need(s.w, "w")?)?, to_u32(need(s.t, "t")?)?)?)
        }
        BoundMethod::MinmaxSpherePacking => {
            single(bounds::minmax_sphere_packing_bound(to_u32(need(s.w, "w")?)?, to_u32(need(s.t, "t")?)?)?)
        }
        BoundMethod::MinmaxGv => single(bounds::minmax_gv_upper(to_u32(need(s.w, "w")?)?, to_u32(need(s.t, "t")?)?)?),
        BoundMethod::EccData => {
            let r = bounds::ecc_on_data_redundancy(need(s.k, "k")? as u64, need(s.t, "t")? as u64);
            single(BoundResult::upper_int(r as i64, "ecc-on-data"))
        }
        BoundMethod::EccValues => {
            let r = bounds::ecc_on_function_values_redundancy(need(a.e, "e")?, need(s.t, "t")? as u64);
            single(BoundResult::upper_int(r as i64, "ecc-on-function-values"))
        }
    }
}

fn emit_code(ctx: &Ctx, code: &Code, extra: serde_json::Value) -> Result<()> {
    let mut value = json!({ "length": code.word_len(), "words": code.words() });
    if let (Some(obj), serde_json::Value::Object(more)) = (value.as_object_mut(), extra) {
        obj.extend(more);
    }
    ctx.emit(&value, || code.to_text())
}

fn run_build_code(ctx: &Ctx, a: &BuildCodeArgs) -> Result<ExitCode> {
    match a.method {
        CodeMethod::Hadamard => {
            let d = need(a.source.d, "d")?;
            let code =
                hadamard_code(d).ok_or_else(|| Error::InvalidParameter(format!("no Sylvester code for d = {d}")))?;
            emit_code(ctx, &code, json!({}))?;
        }
        CodeMethod::ReedMuller => {
            emit_code(ctx, &reed_muller_code(need(a.r, "r")?, need(a.source.m, "m")? as u32)?, json!({}))?
        }
        CodeMethod::Greedy => {
            let d = matrix(ctx, &a.source)?;
            let order = if a.row_sum_order { bounds::row_sum_order(&d) } else { bounds::identity_order(d.dim()) };
            let r = match a.length {
                Some(r) => r,
                None => bounds::gv_irregular_threshold(&d, &order)?,
            };
            match greedy_irregular_code(&d, r, &order)? {
                Some(code) => emit_code(ctx, &code, json!({}))?,
                None => {
                    eprintln!("greedy construction failed at length {r}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        CodeMethod::Exact => {
            let d = matrix(ctx, &a.source)?;
            match exact_min_length_with(&d, &a.budget.budget(), &a.budget.options())? {
                SearchOutcome::Proven { code, nodes, .. } => {
                    emit_code(ctx, &code, json!({ "proven": true, "nodes": nodes }))?
                }
                SearchOutcome::BudgetExhausted { lower_bound, reason, nodes } => {
                    eprintln!("budget exhausted ({reason:?}) after {nodes} nodes; N >= {lower_bound}");
                    return Ok(ExitCode::from(2));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(ctx: &Ctx, a: &VerifyArgs) -> Result<ExitCode> {
    let enc = ctx.encoder(&a.encoder)?;
    let report = match a.samples {
        Some(n) => verify_fcc_sampled(&enc, n, a.seed)?,
        None => verify_fcc(&enc)?,
    };
    ctx.emit(&report, || match &report.violation {
        None => "OK\n".into(),
        Some(v) => format!(
            "VIOLATION {} {}: message distance {} + parity distance {} < {}\n",
            v.u1,
            v.u2,
            v.message_distance,
            v.parity_distance,
            2 * enc.t() + 1
        ),
    })?;
    Ok(if report.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_words(words: &[String]) -> Result<Vec<BitWord>> {
    words.iter().map(|w| w.parse()).collect()
}

fn run_simulate(ctx: &Ctx, a: &SimulateArgs) -> Result<ExitCode> {
    let enc = ctx.encoder(&a.encoder)?;
    let t = a.errors.unwrap_or(enc.t());
    let channel = match a.mode {
        ChannelKind::Exhaustive => ChannelModel::exhaustive(t),
        ChannelKind::Random => ChannelModel::random(t, a.seed, a.trials),
    };
    let messages = match a.sample {
        Some(count) => Messages::Sample { count, seed: a.seed },
        None => Messages::All,
    };
    let report = simulate(&enc, &channel, &messages)?;
    ctx.emit(&report, || {
        let mut out = format!("messages {}  trials {}  failures {}\n", report.messages, report.trials, report.failures);
        if let Some(w) = &report.witness {
            out += &format!(
                "first failure: message {} flips {:?} -> decoded {} (expected {})\n",
                w.message, w.positions, w.decoded, w.expected
            );
        }
        out
    })?;
    Ok(if report.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_table(ctx: &Ctx, a: &TableArgs) -> Result<ExitCode> {
    let mut rows = Vec::new();
    for name in &a.functions {
        let f = row_function(name, &ctx.params, a.k)?;
        for &t in &a.ts {
            match table_row(&f, t) {
                Ok(row) => rows.push(row),
                Err(e) if a.functions.len() * a.ts.len() > 1 => eprintln!("skipping {f} at t = {t}: {e}"),
                Err(e) => return Err(e),
            }
        }
    }
    ctx.emit(&rows, || render_rows(&rows))?;
    Ok(ExitCode::SUCCESS)
}

fn run_oracle(ctx: &Ctx, a: &OracleArgs) -> Result<ExitCode> {
    let f = FunctionRef::parse_with(&a.function, &ctx.params)?;
    if let fcc::registry::Family::MinMax { w, l } = f.family {
        let oracle = minmax_distance_oracle(w, l)?;
        ctx.emit(&oracle, || {
            let mut out = format!("max distance {}\n", oracle.max_distance());
            for (v, row) in oracle.values.iter().zip(&oracle.distances) {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                out += &format!("{v:<8} {}\n", cells.join(" "));
            }
            out
        })?;
        return Ok(ExitCode::SUCCESS);
    }
    let act = f.activation()?;
    let assembled = ml_distance_matrix_for(&act, a.t)?.in_value_order();
    let generic = function_distance_matrix(&act.function_spec()?, a.t)?;
    let agree = assembled == generic;
    let value = json!({ "function": act.name(), "t": a.t, "agree": agree, "class_matrix": assembled.rows(), "generic_matrix": generic.rows() });
    ctx.emit(&value, || {
        let status = if agree { "MATCH" } else { "MISMATCH" };
        format!("{status}: class-assembled and generic matrices for {} ({} values)\n", act.name(), assembled.dim())
    })?;
    Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let params = match &cli.config {
        Some(path) => parse_config(&fs::read_to_string(path)?)?,
        None => Params::new(),
    };
    let ctx = Ctx { json: cli.json, params };
    match &cli.command {
        Command::Bounds(a) => run_bounds(&ctx, a),
        Command::BuildCode(a) => run_build_code(&ctx, a),
        Command::FccBuild(a) => {
            let enc = ctx.encoder(a)?;
            let value = json!({ "k": enc.spec().k(), "t": enc.t(), "r": enc.r(), "function": enc.spec().name(), "text": enc.to_text() });
            ctx.emit(&value, || enc.to_text())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FccVerify(a) => run_verify(&ctx, a),
        Command::FccEncode(a) => {
            let enc = ctx.encoder(&a.encoder)?;
            let words = parse_words(&a.messages)?.iter().map(|u| enc.encode(u)).collect::<Result<Vec<_>>>()?;
            ctx.emit(&words, || words.iter().map(|w| format!("{w}\n")).collect())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FccDecode(a) => {
            let enc = ctx.encoder(&a.encoder)?;
            let decoded = parse_words(&a.received)?.iter().map(|y| decode(&enc, y)).collect::<Result<Vec<_>>>()?;
            ctx.emit(&decoded, || {
                decoded
                    .iter()
                    .map(|d| format!("{}{}\n", d.value, if d.out_of_model { " (out of model)" } else { "" }))
                    .collect()
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate(a) => run_simulate(&ctx, a),
        Command::Table(a) => run_table(&ctx, a),
        Command::Oracle(a) => run_oracle(&ctx, a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
