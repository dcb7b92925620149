use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use reqclass::corpus::{read_corpus_file, Corpus, CorpusFormat, NfrSubcategory};
use reqclass::eval::{comparison_csv, confusion_csv, report_csv, ComparisonRow};
use reqclass::experiment::{run_experiment, ExperimentConfig, ExperimentResult, Method, Task};
use reqclass::preprocess::Preprocessor;

#[derive(Parser, Debug)]
#[command(name = "reqclass", version, about = "Requirements classification experiments")]
struct Cli {
    /// Experiment config (TOML). Defaults apply to every missing field.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Format of output printed to stdout and of the audit log.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// More logging (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Arff,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TaskArg {
    FrNfr,
    NfrSub,
}

#[derive(Args, Debug, Default)]
struct CorpusArgs {
    /// Corpus file; overrides `corpus.path`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Corpus format; guessed from the extension when absent.
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
}

#[derive(Args, Debug, Default)]
struct StageArgs {
    /// Skip all preprocessing.
    #[arg(long)]
    raw: bool,
    #[arg(long)]
    no_surface: bool,
    #[arg(long)]
    no_blinding: bool,
    #[arg(long)]
    no_temporal: bool,
    #[arg(long)]
    no_rules: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a corpus and write it as canonical CSV.
    Ingest {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Run the preprocessing pipeline; writes processed.csv and an audit log.
    Preprocess {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        stages: StageArgs,
    },
    /// Run one experiment; writes JSON and CSV reports.
    Evaluate {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        stages: StageArgs,
        #[arg(long, value_enum)]
        task: Option<TaskArg>,
        /// tree, bnb, lda, btm, hierarchical, kmeans or hybrid.
        #[arg(long)]
        method: Option<Method>,
        /// Folds per run.
        #[arg(long)]
        folds: Option<usize>,
        #[arg(long)]
        runs: Option<usize>,
    },
    /// Merge evaluate outputs into one comparison grid.
    Compare {
        /// Result JSON files written by `evaluate`.
        reports: Vec<PathBuf>,
        /// Run every sub-classification method on processed and raw text first.
        #[arg(long)]
        grid: bool,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Print a stored result, or the default config.
    Report {
        #[arg(long)]
        show_defaults: bool,
        result: Option<PathBuf>,
    },
}

/// Errors that map to exit code 1.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct DataError(String);

impl fmt::Display for DataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DataError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<Usage>().is_some() {
            return 1;
        }
        if cause.downcast_ref::<DataError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<reqclass::Error>() {
            return if e.is_data_error() { 2 } else { 1 };
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut cfg = load_config(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    match cli.command {
        Command::Ingest { corpus } => ingest(&cfg, &corpus, cli.format),
        Command::Preprocess { corpus, stages } => {
            apply_stages(&mut cfg, &stages);
            preprocess(&cfg, &corpus, cli.format)
        }
        Command::Evaluate {
            corpus,
            stages,
            task,
            method,
            folds,
            runs,
        } => {
            apply_stages(&mut cfg, &stages);
            if let Some(t) = task {
                let task = match t {
                    TaskArg::FrNfr => Task::FrNfr,
                    TaskArg::NfrSub => Task::NfrSub,
                };
                if task != cfg.task && method.is_none() {
                    cfg.method = match task {
                        Task::FrNfr => Method::Tree,
                        Task::NfrSub => Method::Bnb,
                    };
                }
                cfg.task = task;
            }
            if let Some(m) = method {
                cfg.method = m;
            }
            if let Some(k) = folds {
                cfg.folds.k = k;
            }
            if let Some(r) = runs {
                cfg.folds.runs = r;
            }
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            let data = load_corpus(&cfg, &corpus)?;
            let result = evaluate(&cfg, &data)?;
            print_result(&result, cli.format)
        }
        Command::Compare { reports, grid, corpus } => compare(&cfg, &reports, grid, &corpus, cli.format),
        Command::Report { show_defaults, result } => {
            if show_defaults {
                print!("{}", ExperimentConfig::default().to_toml()?);
                return Ok(());
            }
            let path = result.ok_or_else(|| usage("report needs a result file or --show-defaults"))?;
            print_result(&read_result(&path)?, cli.format)
        }
    }
}

fn load_config(path: Option<&Path>) -> anyhow::Result<ExperimentConfig> {
    let Some(path) = path else {
        return Ok(ExperimentConfig::default());
    };
    let src = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut cfg = ExperimentConfig::from_toml(&src).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    // Relative paths in a config file are relative to the file.
    let base = path.parent().unwrap_or(Path::new(""));
    let rebase = |p: &mut Option<PathBuf>| {
        if let Some(x) = p.as_mut() {
            if x.is_relative() {
                *x = base.join(&*x);
            }
        }
    };
    rebase(&mut cfg.corpus.path);
    rebase(&mut cfg.preprocess.dictionary);
    rebase(&mut cfg.preprocess.rules);
    for p in [&cfg.preprocess.dictionary, &cfg.preprocess.rules]
        .into_iter()
        .flatten()
    {
        if !p.exists() {
            return Err(usage(format!("{}: file not found", p.display())));
        }
    }
    Ok(cfg)
}

fn apply_stages(cfg: &mut ExperimentConfig, s: &StageArgs) {
    if s.raw {
        cfg.processed = false;
    }
    let st = &mut cfg.preprocess.stages;
    st.surface &= !s.no_surface;
    st.blinding &= !s.no_blinding;
    st.temporal &= !s.no_temporal;
    st.rules &= !s.no_rules;
}

fn load_corpus(cfg: &ExperimentConfig, args: &CorpusArgs) -> anyhow::Result<Corpus> {
    let path = args
        .input
        .clone()
        .or_else(|| cfg.corpus.path.clone())
        .ok_or_else(|| usage("no corpus given (use --input or corpus.path)"))?;
    let format = match args.input_format {
        Some(InputFormat::Arff) => Some(CorpusFormat::Arff),
        Some(InputFormat::Csv) => Some(CorpusFormat::Csv),
        None => cfg.corpus.format,
    };
    let corpus = read_corpus_file(&path, format)?;
    info!("loaded {} requirements from {}", corpus.len(), path.display());
    Ok(corpus)
}

/// Writes next to the target and renames, so readers never see partial files.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let name = path
        .file_name()
        .ok_or_else(|| anyhow!("bad output path {}", path.display()))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let mut f = fs::File::create(&tmp).with_context(|| format!("writing {}", tmp.display()))?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    info!("wrote {}", path.display());
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn ingest(cfg: &ExperimentConfig, args: &CorpusArgs, format: Format) -> anyhow::Result<()> {
    let corpus = load_corpus(cfg, args)?;
    write_atomic(&cfg.out.join("corpus.csv"), &corpus.to_csv())?;
    let counts = corpus.label_counts();
    match format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = counts
                .iter()
                .map(|(l, n)| (l.token().to_string(), (*n).into()))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({ "total": corpus.len(), "labels": map }))?
            );
        }
        Format::Csv => {
            println!("label,count");
            for (l, n) in &counts {
                println!("{},{n}", l.token());
            }
            println!("total,{}", corpus.len());
        }
    }
    Ok(())
}

fn preprocess(cfg: &ExperimentConfig, args: &CorpusArgs, format: Format) -> anyhow::Result<()> {
    let corpus = load_corpus(cfg, args)?;
    let mut pcfg = cfg.preprocess.clone();
    if !cfg.processed {
        pcfg.stages = reqclass::preprocess::StageToggles::all(false);
    }
    let pre = Preprocessor::fit(&pcfg, &corpus)?;
    let (processed, records) = pre.process_corpus(&corpus)?;
    write_atomic(&cfg.out.join("processed.csv"), &processed.to_csv())?;
    match format {
        Format::Json => {
            let entries: Vec<serde_json::Value> = records
                .iter()
                .map(|r| serde_json::json!({ "id": r.id, "passes": r.passes, "fired": r.fired }))
                .collect();
            write_atomic(
                &cfg.out.join("audit.json"),
                &(serde_json::to_string_pretty(&entries)? + "\n"),
            )?;
        }
        Format::Csv => {
            let mut s = String::from("id,stage,rule,before,after\n");
            for r in &records {
                for f in &r.fired {
                    s.push_str(&format!(
                        "{},{},{},{},{}\n",
                        csv_field(&r.id),
                        f.stage,
                        csv_field(&f.rule),
                        csv_field(&f.before),
                        csv_field(&f.after)
                    ));
                }
            }
            write_atomic(&cfg.out.join("audit.csv"), &s)?;
        }
    }
    let changed = records.iter().filter(|r| r.text != r.original).count();
    eprintln!("processed {} requirements, {} rewritten", records.len(), changed);
    Ok(())
}

fn task_name(t: Task) -> &'static str {
    match t {
        Task::FrNfr => "fr-nfr",
        Task::NfrSub => "nfr-sub",
    }
}

fn result_stem(r: &ExperimentResult) -> String {
    format!(
        "{}-{}-{}",
        task_name(r.task),
        r.method.name(),
        if r.processed { "processed" } else { "raw" }
    )
}

fn evaluate(cfg: &ExperimentConfig, corpus: &Corpus) -> anyhow::Result<ExperimentResult> {
    let result = run_experiment(corpus, cfg)?;
    let stem = result_stem(&result);
    write_atomic(
        &cfg.out.join(format!("{stem}.json")),
        &(serde_json::to_string_pretty(&result)? + "\n"),
    )?;
    write_atomic(&cfg.out.join(format!("{stem}.csv")), &report_csv(&result.report))?;
    write_atomic(
        &cfg.out.join(format!("{stem}-confusion.csv")),
        &confusion_csv(&result.report.matrix, false),
    )?;
    if let Some(d) = &result.diagnostics {
        let mut s = format!(
            "hopkins,{}\nmean_silhouette,{}\n\npoint,silhouette\n",
            d.hopkins, d.silhouette.mean
        );
        for (i, v) in d.silhouette.values.iter().enumerate() {
            s.push_str(&format!("{i},{v}\n"));
        }
        write_atomic(&cfg.out.join(format!("{stem}-diagnostics.csv")), &s)?;
    }
    Ok(result)
}

fn read_result(path: &Path) -> anyhow::Result<ExperimentResult> {
    let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let r = serde_json::from_str(&src)
        .map_err(reqclass::Error::from)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(r)
}

fn print_result(r: &ExperimentResult, format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(r)?),
        Format::Csv => print!("{}", report_csv(&r.report)),
    }
    Ok(())
}

fn compare(
    cfg: &ExperimentConfig,
    paths: &[PathBuf],
    grid: bool,
    args: &CorpusArgs,
    format: Format,
) -> anyhow::Result<()> {
    let mut results: Vec<ExperimentResult> = Vec::new();
    if grid {
        let corpus = load_corpus(cfg, args)?;
        for m in Method::SUBCLASSIFIERS {
            for processed in [true, false] {
                let mut c = cfg.clone();
                c.task = Task::NfrSub;
                c.method = m;
                c.processed = processed;
                if c.method == Method::Bnb && cfg.task == Task::FrNfr {
                    c.folds = ExperimentConfig::nfr_sub(m).folds;
                }
                eprintln!(
                    "running {} ({})",
                    m.display_name(),
                    if processed { "processed" } else { "raw" }
                );
                results.push(evaluate(&c, &corpus)?);
            }
        }
    } else if paths.len() < 2 {
        return Err(usage("compare needs at least two result files (or --grid)"));
    }
    for p in paths {
        results.push(read_result(p)?);
    }

    let mut rows: Vec<(Method, Option<&ExperimentResult>, Option<&ExperimentResult>)> = Vec::new();
    for r in &results {
        if r.processed {
            rows.push((r.method, Some(r), None));
        } else if let Some(row) = rows.iter_mut().find(|(m, _, u)| *m == r.method && u.is_none()) {
            row.2 = Some(r);
        } else {
            rows.push((r.method, None, Some(r)));
        }
    }
    let mut table = Vec::new();
    for (m, p, u) in rows {
        let Some(p) = p else {
            bail!(reqclass::Error::InvalidArgument(format!(
                "no processed result for {}",
                m.display_name()
            )));
        };
        table.push(ComparisonRow::from_reports(
            m.display_name(),
            &p.report,
            u.map(|u| &u.report),
        ));
    }
    if table.len() < 2 {
        return Err(usage("compare needs results for at least two methods"));
    }
    let present: Vec<String> = table[0].per_class.keys().cloned().collect();
    let order: Vec<String> = NfrSubcategory::REPORT_ORDER
        .iter()
        .map(|c| c.code().to_string())
        .filter(|c| present.contains(c))
        .chain(
            present
                .iter()
                .filter(|c| NfrSubcategory::REPORT_ORDER.iter().all(|s| s.code() != c.as_str()))
                .cloned(),
        )
        .collect();
    // Mismatched label sets are a property of the inputs, not of the invocation.
    let csv = comparison_csv(&table, &order).map_err(|e| anyhow::Error::new(DataError(e.to_string())))?;
    write_atomic(&cfg.out.join("comparison.csv"), &csv)?;
    match format {
        Format::Csv => print!("{csv}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&table)?),
    }
    Ok(())
}
