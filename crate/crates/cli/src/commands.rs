use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use boltzmann_core::data::{
    load_csv, load_features_csv, split_train_test, stratified_folds, Column, DatasetSpec,
};
use boltzmann_core::eval::{
    baseline_knn, baseline_logreg, baseline_nearest_centroid, cross_validate, default_kt_grid,
    evaluate, kt_sweep, LogRegOptions,
};
use boltzmann_core::model::{fit, Metric};
use boltzmann_core::pdbx::{extract_co_features, parse_pdb, write_features_csv, ExtractOptions};
use boltzmann_core::{BoltzmannModelF64, Error, LabeledDatasetF64};

#[derive(Debug)]
pub enum CliError {
    /// Inconsistent flags or parameters: exit code 1.
    Usage(String),
    /// Problems with input data or files: exit code 2.
    Data(Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::Parameter(msg) => CliError::Usage(msg),
            other => CliError::Data(other),
        }
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(
    name = "boltzmann",
    about = "Energy-based centroid classifier with Boltzmann probabilities",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a model on a labeled CSV and write it as JSON
    Fit(FitArgs),
    /// Predict labels and probabilities for a feature CSV
    Predict(PredictArgs),
    /// Evaluate on a hold-out split or with cross-validation
    Evaluate(EvaluateArgs),
    /// Sweep kT and record the probability gap of correct predictions
    Sweep(SweepArgs),
    /// Extract Co-ligand bond-distance features from PDB files
    Extract(ExtractArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    L1,
    L2,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::L1 => Metric::L1,
            MetricArg::L2 => Metric::L2,
        }
    }
}

#[derive(Args)]
struct DataArgs {
    /// Labeled CSV file
    #[arg(long)]
    data: PathBuf,
    /// Label column name (required unless --bcw)
    #[arg(long)]
    label: Option<String>,
    /// Columns to ignore, repeatable
    #[arg(long = "ignore")]
    ignored: Vec<String>,
    /// Treat the file as the UCI wdbc.data layout (id, diagnosis, 30 features)
    #[arg(long)]
    bcw: bool,
    /// Field delimiter
    #[arg(long, default_value = ",")]
    delimiter: char,
}

impl DataArgs {
    fn load(&self) -> Result<LabeledDatasetF64, CliError> {
        let spec = if self.bcw {
            DatasetSpec::bcw(&self.data)
        } else {
            let label = self.label.as_deref().ok_or_else(|| {
                CliError::Usage("--label is required unless --bcw is set".into())
            })?;
            let mut spec = DatasetSpec::new(&self.data, label);
            spec.ignored_columns = self
                .ignored
                .iter()
                .map(|c| Column::Name(c.clone()))
                .collect();
            spec.delimiter = self.delimiter as u8;
            spec
        };
        Ok(load_csv(&spec)?)
    }
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Temperature parameter
    #[arg(long, default_value_t = 1.0)]
    kt: f64,
    #[arg(long, value_enum, default_value = "l1")]
    metric: MetricArg,
    /// Output model JSON path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PredictArgs {
    /// Model JSON file
    #[arg(long)]
    model: PathBuf,
    /// Feature CSV (no label column)
    #[arg(long)]
    data: PathBuf,
    /// Whether the feature CSV has a header row
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    header: bool,
    /// Override the model's kT
    #[arg(long)]
    kt: Option<f64>,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, default_value_t = 1.0)]
    kt: f64,
    #[arg(long, value_enum, default_value = "l1")]
    metric: MetricArg,
    /// Cross-validate instead of a single hold-out split
    #[arg(long)]
    cv: bool,
    #[arg(long, default_value_t = 5)]
    folds: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.2)]
    test_fraction: f64,
    /// Write the report as JSON here (text goes to stdout either way)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also run the nearest-centroid, k-NN and logistic-regression baselines
    #[arg(long)]
    baselines: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, value_enum, default_value = "l1")]
    metric: MetricArg,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.2)]
    test_fraction: f64,
    /// Comma-separated ascending kT grid; defaults to 10 log-spaced
    /// points in [0.05, 5]
    #[arg(long)]
    grid: Option<String>,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExtractArgs {
    /// PDB file or directory of .pdb files
    #[arg(long)]
    input: PathBuf,
    /// Maximum Co-ligand bond distance in angstroms
    #[arg(long, default_value_t = 3.0)]
    cutoff: f64,
    /// Count hydrogens as ligand candidates
    #[arg(long)]
    include_hydrogens: bool,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Fit(args) => cmd_fit(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Extract(args) => cmd_extract(args),
    }
}

/// Write via a temp file in the same directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents).map_err(|e| CliError::Data(e.into()))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::Data(e.into()))?;
    Ok(())
}

fn cmd_fit(args: FitArgs) -> CliResult {
    let dataset = args.data.load()?;
    let model = fit(&dataset, args.kt, args.metric.into())?;
    write_atomic(&args.out, &model.to_json()?)?;
    println!(
        "fitted {} classes x {} features -> {}",
        model.n_classes(),
        model.n_features(),
        args.out.display()
    );
    Ok(())
}

fn cmd_predict(args: PredictArgs) -> CliResult {
    let mut model = BoltzmannModelF64::load(&args.model)?;
    if let Some(kt) = args.kt {
        model = model.with_kt(kt)?;
    }
    let (features, _) = load_features_csv::<f64>(&args.data, args.header, b',')?;
    let (labels, probs) = model.predict_batch(&features, true)?;

    let mut out = String::from("label");
    for name in model.class_names() {
        write!(out, ",p_{name}").unwrap();
    }
    out.push('\n');
    for (i, &label) in labels.iter().enumerate() {
        out.push_str(&model.class_names()[label]);
        for p in probs.row(i) {
            write!(out, ",{p:.15}").unwrap();
        }
        out.push('\n');
    }
    write_atomic(&args.out, &out)?;
    println!("wrote {} predictions -> {}", labels.len(), args.out.display());
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> CliResult {
    let dataset = args.data.load()?;
    let metric: Metric = args.metric.into();

    let json = if args.cv {
        if args.folds < 2 {
            return Err(CliError::Usage(format!(
                "--folds must be at least 2, got {}",
                args.folds
            )));
        }
        let plan = stratified_folds(&dataset.labels, &dataset.class_names, args.folds, args.seed)?;
        let report = cross_validate(&dataset, &plan, args.kt, metric)?;
        println!(
            "cross-validation: {} folds, accuracy {:.4} +/- {:.4}",
            plan.k, report.mean_accuracy, report.std_accuracy
        );
        for (i, fold) in report.folds.iter().enumerate() {
            println!("  fold {i}: accuracy {:.4}", fold.accuracy);
        }
        serde_json::to_string_pretty(&report).map_err(Error::from)?
    } else {
        let (train, test) = split_train_test(&dataset, args.test_fraction, args.seed)?;
        let model = fit(&train, args.kt, metric)?;
        let report = evaluate(&model, &test)?;
        print!("{}", report.render_text());
        if args.baselines {
            let nc = baseline_nearest_centroid(&train, &test, metric)?;
            println!("baseline nearest-centroid accuracy: {:.4}", nc.accuracy);
            let knn = baseline_knn(&train, &test, 5)?;
            println!("baseline 5-nn accuracy:             {:.4}", knn.accuracy);
            let lr = baseline_logreg(&train, &test, LogRegOptions::default())?;
            println!("baseline logistic-regression accuracy: {:.4}", lr.accuracy);
        }
        serde_json::to_string_pretty(&report).map_err(Error::from)?
    };
    if let Some(out) = &args.out {
        write_atomic(out, &json)?;
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> CliResult {
    let dataset = args.data.load()?;
    let grid = match &args.grid {
        None => default_kt_grid(),
        Some(spec) => spec
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad grid value '{tok}'")))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let (train, test) = split_train_test(&dataset, args.test_fraction, args.seed)?;
    let sweep = kt_sweep(&train, &test, &grid, args.metric.into())?;
    write_atomic(&args.out, &sweep.to_csv())?;
    println!("wrote kT sweep ({} points) -> {}", grid.len(), args.out.display());
    Ok(())
}

fn cmd_extract(args: ExtractArgs) -> CliResult {
    let options = ExtractOptions {
        cutoff: args.cutoff,
        include_hydrogens: args.include_hydrogens,
    };
    let mut paths: Vec<PathBuf> = Vec::new();
    let meta = std::fs::metadata(&args.input).map_err(|e| CliError::Data(e.into()))?;
    if meta.is_dir() {
        for entry in std::fs::read_dir(&args.input).map_err(|e| CliError::Data(e.into()))? {
            let path = entry.map_err(|e| CliError::Data(e.into()))?.path();
            if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pdb")) {
                paths.push(path);
            }
        }
        paths.sort();
    } else {
        paths.push(args.input.clone());
    }

    let mut records = Vec::new();
    let mut skipped_total = 0usize;
    for path in &paths {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Data(e.into()))?;
        let atoms = parse_pdb(&text)?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let (recs, skipped) = extract_co_features(&id, &atoms, options)?;
        for s in &skipped {
            eprintln!(
                "skipped: {} Co serial {} has only {} ligand candidates within {} A",
                s.structure_id, s.co_serial, s.candidates_within_cutoff, options.cutoff
            );
        }
        skipped_total += skipped.len();
        records.extend(recs);
    }

    let mut buf = Vec::new();
    write_features_csv(&mut buf, &records)?;
    write_atomic(&args.out, std::str::from_utf8(&buf).unwrap())?;
    println!(
        "extracted {} records ({} skipped) from {} files -> {}",
        records.len(),
        skipped_total,
        paths.len(),
        args.out.display()
    );
    Ok(())
}
