use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acga::classifier::{cross_validate, fit, Training};
use acga::dataset::validate_schema;
use acga::evolution::GenerationStats;
use acga::rules::RuleRecord;
use acga::scoring::AnchorSelection;
use acga::stats::Threshold;
use acga::{
    AttributeSchema, ClassifierModel, Config, Error, EvaluationReport, GaConfig, RawDataset,
    Significance, Tail, ZTestConfig,
};
use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "acga",
    version,
    about = "Associative classification with genetic rule evolution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine and evolve anchored class association rules on a dataset.
    Mine(MineArgs),
    /// Stratified k-fold cross validation of the full pipeline.
    Cv(CvArgs),
    /// Label a CSV with a saved model.
    Predict(PredictArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TailArg {
    Two,
    Right,
    Left,
}

impl From<TailArg> for Tail {
    fn from(t: TailArg) -> Self {
        match t {
            TailArg::Two => Tail::Two,
            TailArg::Right => Tail::Right,
            TailArg::Left => Tail::Left,
        }
    }
}

#[derive(Args)]
struct DataArgs {
    /// Input CSV with a header row.
    #[arg(long)]
    input: PathBuf,
    /// Name of the class column.
    #[arg(long = "class")]
    class: String,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    minsup: f64,
    /// Equal-width intervals per numeric attribute.
    #[arg(long, default_value_t = 3)]
    bins: usize,
    /// Maximum antecedent length of generated rules.
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    /// Significance level: 0.01, 0.05 or 0.10.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "right")]
    tail: TailArg,
    /// Explicit critical value; overrides --alpha.
    #[arg(long)]
    z_alpha: Option<f64>,
    #[arg(long, default_value_t = 50)]
    population: usize,
    #[arg(long, default_value_t = 30)]
    generations: usize,
    #[arg(long, default_value_t = 0.8)]
    crossover_rate: f64,
    #[arg(long, default_value_t = 0.1)]
    mutation_rate: f64,
    #[arg(long, default_value_t = 2)]
    tournament: usize,
    #[arg(long, default_value_t = 2)]
    elite: usize,
    #[arg(long, default_value_t = 100)]
    pool: usize,
}

impl PipelineArgs {
    fn resolve(&self) -> anyhow::Result<Config> {
        let threshold = match self.z_alpha {
            Some(z) => Threshold::Explicit(z),
            None => Threshold::Table(Significance::from_alpha(self.alpha)?),
        };
        let cfg = Config {
            bins: self.bins,
            max_len: self.max_len,
            ztest: ZTestConfig {
                minsup: self.minsup,
                threshold,
                tail: self.tail.into(),
            },
            ga: GaConfig {
                population_size: self.population,
                generations: self.generations,
                crossover_rate: self.crossover_rate,
                mutation_rate: self.mutation_rate,
                tournament_size: self.tournament,
                elite_count: self.elite,
                pool_size: self.pool,
                rng_seed: self.seed,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Write the rule dump here.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the trained classifier (JSON) here, for use with `predict`.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Write the per-generation fitness trace (CSV) here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct CvArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Number of folds.
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Write the evaluation report here.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct PredictArgs {
    /// Model file written by `mine --model`.
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    input: PathBuf,
    /// Labeled CSV destination; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mine(args) => mine(args),
        Command::Cv(args) => cv(args),
        Command::Predict(args) => predict(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match e.downcast_ref::<Error>() {
                Some(Error::NoFrequentRules) => {
                    eprintln!("warning: no frequent anchored rules; consider lowering --minsup")
                }
                _ => eprintln!("error: {}", one_line(&e)),
            }
            ExitCode::FAILURE
        }
    }
}

fn one_line(e: &anyhow::Error) -> String {
    e.chain()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(": ")
        .replace('\n', " ")
}

/// Writes through a temporary file in the destination directory and renames
/// it into place, so a failed run never leaves partial output.
fn write_atomic(path: &Path, contents: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot write {}", path.display()))?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| e.error)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

#[derive(Serialize)]
struct RuleDump {
    format_version: u32,
    input: String,
    class_attribute: String,
    n: usize,
    schema: Vec<AttributeSchema>,
    anchor: AnchorSelection<f64>,
    initial_rule_count: usize,
    pool_size_before_pruning: usize,
    default_class: String,
    rules: Vec<RuleRecord<f64>>,
    warnings: Vec<String>,
    seed: u64,
    config: Config,
    trace: Vec<GenerationStats<f64>>,
}

fn load(data: &DataArgs) -> anyhow::Result<RawDataset> {
    let raw = RawDataset::load_csv(&data.input, &data.class)?;
    validate_schema(raw.schema())?;
    Ok(raw)
}

fn mine(args: MineArgs) -> anyhow::Result<()> {
    let cfg = args.pipeline.resolve()?;
    let raw = load(&args.data)?;
    let training = fit(&raw, &cfg)?;
    let dump = rule_dump(&args, &raw, &cfg, &training);
    let text = render_dump(&dump);

    if let Some(path) = &args.output {
        let body = match args.format {
            Format::Json => serde_json::to_string_pretty(&dump)? + "\n",
            Format::Text => text.clone(),
        };
        write_atomic(path, body.as_bytes())?;
    }
    if let Some(path) = &args.model {
        write_atomic(path, (training.model.to_json()? + "\n").as_bytes())?;
    }
    if let Some(path) = &args.trace {
        let mut csv = String::from("generation,best,mean,pool_size,pool_best,pool_min\n");
        for s in &dump.trace {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                s.generation, s.best, s.mean, s.pool_size, s.pool_best, s.pool_min
            );
        }
        write_atomic(path, csv.as_bytes())?;
    }
    for w in &dump.warnings {
        eprintln!("warning: {w}");
    }
    print!("{text}");
    Ok(())
}

fn rule_dump(args: &MineArgs, raw: &RawDataset, cfg: &Config, t: &Training<f64>) -> RuleDump {
    let model = &t.model;
    let evolution = t.evolution.as_ref();
    RuleDump {
        format_version: 1,
        input: args.data.input.display().to_string(),
        class_attribute: args.data.class.clone(),
        n: raw.n(),
        schema: t.train.schema().to_vec(),
        anchor: t.anchor.clone(),
        initial_rule_count: t.initial_rules,
        pool_size_before_pruning: evolution.map_or(0, |e| e.unpruned),
        default_class: model.class_label(model.default_class()).to_string(),
        rules: model
            .rules()
            .iter()
            .map(|r| r.to_record(model.schema(), model.class_index()))
            .collect(),
        warnings: t.warnings.clone(),
        seed: cfg.ga.rng_seed,
        config: cfg.clone(),
        trace: evolution.map(|e| e.trace.clone()).unwrap_or_default(),
    }
}

fn render_dump(d: &RuleDump) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "dataset: {} ({} rows, class '{}')",
        d.input, d.n, d.class_attribute
    );
    let _ = writeln!(out, "anchor: {}", d.anchor.attribute);
    for s in &d.anchor.scores {
        let _ = writeln!(out, "  gini {:<24} {:.6}", s.attribute, s.gini);
    }
    let _ = writeln!(
        out,
        "initial rules: {}, pool before pruning: {}, rules after Z test: {}",
        d.initial_rule_count,
        d.pool_size_before_pruning,
        d.rules.len()
    );
    let _ = writeln!(out, "default class: {}", d.default_class);
    for (i, r) in d.rules.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>3}. {}  (support {:.4}, confidence {:.4}, z {:.4})",
            i + 1,
            r.text,
            r.support,
            r.confidence,
            r.z
        );
    }
    out
}

fn cv(args: CvArgs) -> anyhow::Result<()> {
    if args.k < 2 {
        bail!(
            "invalid configuration: k must be at least 2, got {}",
            args.k
        );
    }
    let cfg = args.pipeline.resolve()?;
    let raw = load(&args.data)?;
    let report = cross_validate(&raw, args.k, &cfg)?;
    let text = render_report(&report);
    if let Some(path) = &args.output {
        let body = match args.format {
            Format::Json => serde_json::to_string_pretty(&report)? + "\n",
            Format::Text => text.clone(),
        };
        write_atomic(path, body.as_bytes())?;
    }
    print!("{text}");
    Ok(())
}

fn render_report(r: &EvaluationReport<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}-fold cross validation, seed {}, {} rows",
        r.k, r.seed, r.n
    );
    let _ = writeln!(out, "fold  test  correct  accuracy  rules  anchor");
    for f in &r.per_fold {
        let _ = writeln!(
            out,
            "{:>4}  {:>4}  {:>7}  {:>8.4}  {:>5}  {}",
            f.fold, f.test_size, f.correct, f.accuracy, f.rule_count, f.anchor
        );
    }
    let _ = writeln!(out, "overall accuracy: {:.4}", r.overall_accuracy);
    let _ = writeln!(out, "majority baseline: {:.4}", r.majority_baseline);
    out
}

fn predict(args: PredictArgs) -> anyhow::Result<()> {
    let text = fs::read_to_string(&args.model)
        .with_context(|| format!("cannot read model {}", args.model.display()))?;
    let model = ClassifierModel::from_json(&text)?;

    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(&args.input)
        .with_context(|| format!("cannot read {}", args.input.display()))?;
    let header = rdr.headers()?.clone();
    let class_name = model.discretization().class_name().to_string();
    for col in &model.discretization().columns {
        if !col.is_class && !header.iter().any(|h| h == col.name) {
            return Err(
                Error::SchemaMismatch(format!("input lacks model column '{}'", col.name)).into(),
            );
        }
    }

    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut out_header: Vec<String> = header.iter().map(str::to_string).collect();
    out_header.push(format!("predicted_{class_name}"));
    wtr.write_record(&out_header)?;
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let fields: HashMap<&str, &str> = header.iter().zip(rec.iter()).collect();
        let row = model
            .discretization()
            .parse_fields(&fields)
            .map_err(|e| match e {
                Error::NotNumeric { column, value, .. } => Error::NotNumeric {
                    line,
                    column,
                    value,
                },
                other => other,
            })?;
        let class = model.predict(&row)?;
        let mut out: Vec<&str> = rec.iter().collect();
        out.push(model.class_label(class));
        wtr.write_record(&out)?;
    }
    let bytes = wtr.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?;
    match &args.output {
        Some(path) => write_atomic(path, &bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}
