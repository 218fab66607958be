use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use minsurf::catalog;
use minsurf::experiment::{emit_report, renormalize, run_experiment, ExperimentConfig};
use minsurf::metricgeo::{
    comparison_check, geodesic_distances, read_metric_csv, sample_metric, superharmonicity_check,
    write_distance_csv, ComparisonReport, SuperharmonicReport,
};
use minsurf::output::{f17, to_json17};
use minsurf::projgeom::{general_position, omission_margin};
use minsurf::weierstrass::DEFAULT_QUAD_ORDER;
use minsurf::{ComplexScalar, Error, HyperplaneSet, Result, WeierstrassData};

/// Minimal surfaces from Weierstrass data: validation, sampling, geodesic
/// distances, omission margins and the curvature-distance harness.
#[derive(Parser, Debug)]
#[command(name = "minsurf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check isotropy, common zeros and poles of a datum (file or catalog name).
    Validate { data: String },
    /// Sample u, v, x_1..x_m, lambda, K on the cell centers of an n x n grid.
    Sample {
        data: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_QUAD_ORDER)]
        quad_order: usize,
    },
    /// Graph geodesic distances of the induced metric from the cell nearest `u,v`.
    Geodesic {
        data: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sampled omission margins of the Gauss map against a hyperplane set.
    Omit {
        data: String,
        planes: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Point-picking and rescaling so that |K(p')| = 1.
    Renormalize {
        data: String,
        #[arg(long)]
        n: usize,
    },
    /// Run a family experiment and write `<output>.csv` and `<output>.json`.
    Experiment { config: PathBuf },
    /// Built-in surfaces.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Comparison with the hyperbolic disk of radius R for a metric grid.
    Lemma21 {
        #[arg(long)]
        metric: PathBuf,
        #[arg(long = "R")]
        big_r: f64,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

fn load_data(arg: &str) -> Result<WeierstrassData> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path)?;
        return serde_json::from_str(&text).map_err(|e| Error::InvalidData(e.to_string()));
    }
    catalog::builtin(arg).map(|e| e.data)
}

fn load_valid(arg: &str) -> Result<WeierstrassData> {
    let data = load_data(arg)?;
    data.validate().into_result()?;
    Ok(data)
}

fn parse_point(text: &str) -> Result<ComplexScalar> {
    let bad = || Error::Config(format!("expected `u,v`, got `{text}`"));
    let (u, v) = text.split_once(',').ok_or_else(bad)?;
    let u: f64 = u.trim().parse().map_err(|_| bad())?;
    let v: f64 = v.trim().parse().map_err(|_| bad())?;
    Ok(ComplexScalar::new(u, v))
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn say(line: impl std::fmt::Display) -> Result<()> {
    writeln!(io::stdout().lock(), "{line}")?;
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    say(to_json17(value)?)
}

fn sample(data: &WeierstrassData, n: usize, quad_order: usize, mut out: impl Write) -> Result<()> {
    let metric = sample_metric(data, n)?;
    let xs: Vec<String> = (1..=data.m()).map(|k| format!("x_{k}")).collect();
    writeln!(out, "u,v,{},lambda,K", xs.join(","))?;
    for (i, j) in metric.masked_cells() {
        let s = data.sample(metric.grid().center(i, j), quad_order)?;
        let pos: Vec<String> = s.position.iter().map(|x| f17(*x)).collect();
        writeln!(out, "{},{},{},{},{}", f17(s.z.re), f17(s.z.im), pos.join(","), f17(s.lambda), f17(s.curvature))?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Lemma21Output {
    comparison: ComparisonReport,
    superharmonicity: SuperharmonicReport,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { data } => {
            let report = load_data(&data)?.validate();
            print_json(&report)?;
            report.into_result()?;
        }
        Command::Sample { data, n, out, quad_order } => {
            let data = load_valid(&data)?;
            sample(&data, n, quad_order, sink(&out)?)?;
        }
        Command::Geodesic { data, n, from, out } => {
            let data = load_valid(&data)?;
            let metric = sample_metric(&data, n)?;
            let z = match from {
                Some(text) => parse_point(&text)?,
                None => data.domain().center,
            };
            if !data.domain().contains(z) {
                return Err(Error::Domain { z });
            }
            let field = geodesic_distances(&metric, metric.grid().cell_of(z))?;
            let mut w = sink(&out)?;
            write_distance_csv(&field, &mut w)?;
            w.flush()?;
        }
        Command::Omit { data, planes, n } => {
            let data = load_valid(&data)?;
            let set: HyperplaneSet = serde_json::from_str(&fs::read_to_string(&planes)?)
                .map_err(|e| Error::InvalidData(e.to_string()))?;
            let gp = general_position(&set);
            if let Some(w) = &gp.witness {
                eprintln!("WARN: hyperplanes not in general position; dependent subset {w:?}");
            }
            let margins = omission_margin(&data, &set, n)?;
            let mut out = BufWriter::new(io::stdout().lock());
            writeln!(out, "plane_index,min_margin,argmin_u,argmin_v")?;
            for m in margins {
                writeln!(out, "{},{},{},{}", m.plane_index, f17(m.min_margin), f17(m.argmin.re), f17(m.argmin.im))?;
            }
            out.flush()?;
        }
        Command::Renormalize { data, n } => {
            let data = load_valid(&data)?;
            let r = renormalize(&data, n)?;
            print_json(&serde_json::json!({ "report": r.report, "data": r.data }))?;
            if !r.report.bound_holds {
                return Err(Error::Hypothesis(format!(
                    "curvature range [{}, {}] on the inner disk leaves [-4, 0]",
                    f17(r.report.k_min_inner),
                    f17(r.report.k_max_inner)
                )));
            }
        }
        Command::Experiment { config } => {
            let text = fs::read_to_string(&config)?;
            let cfg = ExperimentConfig::from_json(&text)?;
            let report = run_experiment(&cfg)?;
            for w in &report.warnings {
                eprintln!("{w}");
            }
            // relative output paths are taken from the config file's directory
            let out = if cfg.output.is_relative() {
                config.parent().unwrap_or(Path::new(".")).join(&cfg.output)
            } else {
                cfg.output.clone()
            };
            let (csv_path, json_path) = emit_report(&report, &cfg, &out)?;
            say(format!("empirical_C {}", f17(report.empirical_c)))?;
            say(format!("stability {}", f17(report.stability)))?;
            say(csv_path.display())?;
            say(json_path.display())?;
        }
        Command::Catalog { action: CatalogAction::List } => {
            for name in catalog::list() {
                say(name)?;
            }
        }
        Command::Catalog { action: CatalogAction::Show { name } } => {
            print_json(&catalog::builtin(&name)?)?;
        }
        Command::Lemma21 { metric, big_r } => {
            let metric = read_metric_csv(BufReader::new(File::open(&metric)?))?;
            let comparison = comparison_check(&metric, big_r)?;
            let rho = geodesic_distances(&metric, metric.center_cell()?)?;
            let superharmonicity = superharmonicity_check(&rho, &metric)?;
            print_json(&Lemma21Output { comparison, superharmonicity })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        // reader went away (`| head`)
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
