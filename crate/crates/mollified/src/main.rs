//! Command-line front end. Every command either prints its table or
//! value to standard output, or, with `--out`, writes the file and
//! prints a one-line summary. Identical arguments and seed produce
//! byte-identical output, also under parallel execution.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mollified::ar1::{default_b_grid, sweep, Ar1ScModel};
use mollified::glm::{run_ols_study, StudyConfig};
use mollified::report::{
    fmt_float, kurtosis_curve_csv, pmf_table_csv, samples_csv, study_runs_csv, sweep_csv,
};
use mollified::stream::{master_rng, DEFAULT_SEED};
use mollified::{
    kurtosis_curve, DiscreteMollifiedUniform, Error, Mollifier, MollifiedUniform,
};

#[derive(Parser)]
#[command(
    name = "mollified",
    version,
    about = "Mollified uniform distributions, soft-clipping regression, and bounded-count chains"
)]
struct Cli {
    /// Seed for randomized commands
    #[arg(long, global = true, env = "MOLLIFIED_SEED")]
    seed: Option<u64>,

    /// Write output to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format, for commands that support more than one
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the continuous mollified uniform at a point
    #[command(allow_negative_numbers = true)]
    Dist {
        #[arg(long, value_enum)]
        family: Family,
        /// Mollifier scale (sigma, c, or b depending on the family)
        #[arg(long)]
        scale: f64,
        #[arg(long, value_enum)]
        eval: Eval,
        /// Evaluation point (pdf, cdf) or probability level (qf)
        #[arg(long)]
        at: Option<f64>,
        /// Moment order, at most 30
        #[arg(long)]
        order: Option<u32>,
    },

    /// Tabulate the discrete mollified uniform's probability mass function
    #[command(allow_negative_numbers = true)]
    Ddist {
        #[arg(long, default_value_t = 10)]
        m: u32,
        /// One table per value
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.5])]
        lambda: Vec<f64>,
    },

    /// Kurtosis of the mollified uniform against the mollifier's variance
    #[command(allow_negative_numbers = true)]
    KurtosisCurve {
        /// Restrict to one family; default is all three
        #[arg(long, value_enum)]
        family: Option<Family>,
        /// Variance grid; default is 0 plus a log-spaced grid on [1e-4, 10]
        #[arg(long, value_delimiter = ',')]
        variances: Option<Vec<f64>>,
    },

    /// Least-squares misspecification study for the soft-clipping binomial model
    #[command(allow_negative_numbers = true)]
    GlmExample2 {
        #[arg(long, default_value_t = 1000)]
        runs: u32,
    },

    /// Sweep the bounded-count chain over a (c, b) grid
    #[command(allow_negative_numbers = true)]
    Ar1Sweep {
        #[arg(long, default_value_t = 30)]
        n: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.1])]
        c: Vec<f64>,
        /// Slope grid; default is -0.9 to 0.9 in steps of 0.1
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Option<Vec<f64>>,
        /// Stationary mean target as a fraction of n; sets a = target (1 - b)
        #[arg(long, default_value_t = 0.3)]
        target_mean: f64,
    },

    /// Stationary analysis of one bounded-count chain
    #[command(allow_negative_numbers = true)]
    Ar1Analyze {
        #[arg(long, default_value_t = 30)]
        n: u32,
        #[arg(long)]
        b: f64,
        #[arg(long, value_delimiter = ',')]
        c: Vec<f64>,
        /// Intercept; mutually exclusive with --target-mean
        #[arg(long, conflicts_with = "target_mean")]
        a: Option<f64>,
        /// Stationary mean target as a fraction of n; sets a = target (1 - b)
        #[arg(long)]
        target_mean: Option<f64>,
        /// Largest lag reported in acf and pacf
        #[arg(long, default_value_t = 10)]
        lags: usize,
    },

    /// Draw variates from the continuous mollified uniform
    #[command(allow_negative_numbers = true)]
    Sample {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        scale: f64,
        /// Number of draws
        #[arg(long, default_value_t = 1000)]
        runs: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Normal,
    Logistic,
    Laplace,
}

#[derive(Clone, Copy, ValueEnum)]
enum Eval {
    Pdf,
    Cdf,
    Qf,
    Moment,
    Kurtosis,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Lib(Error::Domain { .. }) => "domain",
            Failure::Lib(Error::NonConvergence { .. }) => "nonconvergence",
            Failure::Lib(Error::Numerical { .. }) => "numerical",
            Failure::Io(_) => "io",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(Error::Domain { .. }) => 3,
            Failure::Lib(_) | Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// One output artifact: payload plus, for file mode, a summary fragment.
struct Emitted {
    path_tag: Option<String>,
    payload: String,
    rows: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": f.message(), "kind": f.kind() })
            );
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let format = cli.format;
    let emitted = match cli.command {
        Command::Dist {
            family,
            scale,
            eval,
            at,
            order,
        } => {
            reject_format(format, "dist")?;
            run_dist(family, scale, eval, at, order)?
        }
        Command::Ddist { m, lambda } => {
            require_format(format, Format::Csv, "ddist")?;
            run_ddist(m, &lambda)?
        }
        Command::KurtosisCurve { family, variances } => {
            require_format(format, Format::Csv, "kurtosis-curve")?;
            run_kurtosis_curve(family, variances.as_deref())?
        }
        Command::GlmExample2 { runs } => run_glm(seed, runs, format)?,
        Command::Ar1Sweep {
            n,
            c,
            b,
            target_mean,
        } => {
            require_format(format, Format::Csv, "ar1-sweep")?;
            let b = b.unwrap_or_else(default_b_grid);
            let rows = sweep(n, &c, &b, target_mean)?;
            vec![Emitted {
                path_tag: None,
                rows: rows.len(),
                payload: sweep_csv(&rows),
            }]
        }
        Command::Ar1Analyze {
            n,
            b,
            c,
            a,
            target_mean,
            lags,
        } => {
            require_format(format, Format::Json, "ar1-analyze")?;
            run_ar1_analyze(n, b, &c, a, target_mean, lags)?
        }
        Command::Sample {
            family,
            scale,
            runs,
        } => {
            require_format(format, Format::Csv, "sample")?;
            run_sample(family, scale, runs, seed)?
        }
    };
    emit(&emitted, cli.out.as_deref())
}

fn reject_format(format: Option<Format>, command: &str) -> Result<(), Failure> {
    if format.is_some() {
        return Err(usage(format!("{command} does not take --format")));
    }
    Ok(())
}

fn require_format(format: Option<Format>, only: Format, command: &str) -> Result<(), Failure> {
    match format {
        None => Ok(()),
        Some(f) if f == only => Ok(()),
        Some(Format::Csv) => Err(usage(format!("{command} emits json, not csv"))),
        Some(Format::Json) => Err(usage(format!("{command} emits csv, not json"))),
    }
}

fn make_mollifier(family: Family, scale: f64) -> Result<Mollifier, Error> {
    match family {
        Family::Normal => Mollifier::normal(scale),
        Family::Logistic => Mollifier::logistic(scale),
        Family::Laplace => Mollifier::laplace(scale),
    }
}

fn run_dist(
    family: Family,
    scale: f64,
    eval: Eval,
    at: Option<f64>,
    order: Option<u32>,
) -> Result<Vec<Emitted>, Failure> {
    let dist = MollifiedUniform::new(make_mollifier(family, scale)?);
    let point = |at: Option<f64>, what: &str| {
        at.ok_or_else(|| usage(format!("--at is required for --eval {what}")))
    };
    let value = match eval {
        Eval::Pdf => dist.pdf(point(at, "pdf")?),
        Eval::Cdf => dist.cdf(point(at, "cdf")?),
        Eval::Qf => dist.qf(point(at, "qf")?)?,
        Eval::Moment => {
            let n = order.ok_or_else(|| usage("--order is required for --eval moment"))?;
            if n > 30 {
                return Err(Failure::Lib(Error::domain(
                    "order",
                    format!("moments are available up to order 30, got {n}"),
                )));
            }
            dist.raw_moment(n)
        }
        Eval::Kurtosis => dist.kurtosis(),
    };
    Ok(vec![Emitted {
        path_tag: None,
        payload: format!("{}\n", fmt_float(value)),
        rows: 1,
    }])
}

fn run_ddist(m: u32, lambdas: &[f64]) -> Result<Vec<Emitted>, Failure> {
    if lambdas.is_empty() {
        return Err(usage("--lambda needs at least one value"));
    }
    let tag = lambdas.len() > 1;
    let mut out = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let dist = DiscreteMollifiedUniform::new(m, lambda)?;
        let rows = mollified::discrete::pmf_table(&dist)?;
        out.push(Emitted {
            path_tag: tag.then(|| format!("lambda{}", fmt_float(lambda))),
            rows: rows.len(),
            payload: pmf_table_csv(&rows),
        });
    }
    Ok(out)
}

fn run_kurtosis_curve(
    family: Option<Family>,
    variances: Option<&[f64]>,
) -> Result<Vec<Emitted>, Failure> {
    let grid = match variances {
        Some(g) => g.to_vec(),
        None => {
            // 0 is the exact uniform limit row; the log grid spans the
            // mollifier scales the curves are plotted over
            let mut g = vec![0.0];
            g.extend((0..=50).map(|k| 10f64.powf(-4.0 + 0.1 * k as f64)));
            g
        }
    };
    let families = match family {
        Some(f) => vec![f],
        None => vec![Family::Normal, Family::Logistic, Family::Laplace],
    };
    let mut rows = Vec::new();
    for f in families {
        rows.extend(kurtosis_curve(&make_mollifier(f, 1.0)?, &grid)?);
    }
    Ok(vec![Emitted {
        path_tag: None,
        rows: rows.len(),
        payload: kurtosis_curve_csv(&rows),
    }])
}

fn run_glm(seed: u64, runs: u32, format: Option<Format>) -> Result<Vec<Emitted>, Failure> {
    let config = StudyConfig::reference(seed, runs);
    let (summary, records) = run_ols_study(&config)?;
    let emitted = match format.unwrap_or(Format::Json) {
        Format::Json => Emitted {
            path_tag: None,
            rows: 1,
            payload: format!(
                "{}\n",
                serde_json::to_string(&summary).expect("summary serializes")
            ),
        },
        Format::Csv => Emitted {
            path_tag: None,
            rows: records.len(),
            payload: study_runs_csv(&records),
        },
    };
    Ok(vec![emitted])
}

fn run_ar1_analyze(
    n: u32,
    b: f64,
    c: &[f64],
    a: Option<f64>,
    target_mean: Option<f64>,
    lags: usize,
) -> Result<Vec<Emitted>, Failure> {
    let &[c] = c else {
        return Err(usage("ar1-analyze takes exactly one --c value"));
    };
    let model = match (a, target_mean) {
        (Some(a), None) => Ar1ScModel::new(n, a, b, c)?,
        (None, target) => Ar1ScModel::with_target_mean(n, b, c, target.unwrap_or(0.3))?,
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    let analysis = model.stationary_analysis(lags)?;
    Ok(vec![Emitted {
        path_tag: None,
        rows: 1,
        payload: format!(
            "{}\n",
            serde_json::to_string(&analysis).expect("analysis serializes")
        ),
    }])
}

fn run_sample(family: Family, scale: f64, runs: u64, seed: u64) -> Result<Vec<Emitted>, Failure> {
    if runs == 0 {
        return Err(Failure::Lib(Error::domain("runs", "need at least one draw")));
    }
    let dist = MollifiedUniform::new(make_mollifier(family, scale)?);
    let mut rng = master_rng(seed);
    let samples = dist.sample(runs as usize, &mut rng);
    Ok(vec![Emitted {
        path_tag: None,
        rows: samples.len(),
        payload: samples_csv(&samples),
    }])
}

fn emit(artifacts: &[Emitted], out: Option<&Path>) -> Result<(), Failure> {
    match out {
        None => {
            let mut first = true;
            for a in artifacts {
                if !first {
                    println!();
                }
                print!("{}", a.payload);
                first = false;
            }
            Ok(())
        }
        Some(path) => {
            let mut summary = Vec::with_capacity(artifacts.len());
            for a in artifacts {
                let target = match &a.path_tag {
                    None => path.to_path_buf(),
                    Some(tag) => tagged_path(path, tag),
                };
                std::fs::write(&target, &a.payload)?;
                summary.push(format!("wrote {} ({} rows)", target.display(), a.rows));
            }
            println!("{}", summary.join(", "));
            Ok(())
        }
    }
}

/// pmf.csv with tag "lambda0.1" becomes pmf-lambda0.1.csv
fn tagged_path(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{tag}"),
    };
    path.with_file_name(name)
}
