use std::fs;
use std::path::{Path, PathBuf};

use dcsim_core::eraser::{joint_distribution, verify_eraser_identity, EraserOperators};
use dcsim_core::qcore::{Complex64, ComplexMatrix};
use dcsim_core::runs::{
    eraser_outcomes, expected_envelope, group_histograms, screen_edges, simulate_runs, visibility,
    wheeler_outcomes, DEFAULT_HISTOGRAM_BINS,
};
use dcsim_core::{wheeler, EraserConfig, Experiment};

use crate::args::{Command, VerifyTarget};
use crate::config::load_config;
use crate::export::{write_analytic, write_events, write_histograms, write_plot_data, Format};
use crate::failure::{io_failure, Failure};
use crate::manifest::{RunManifest, MANIFEST_FILE, TOOL_VERSION};
use crate::report::Report;

pub const HISTOGRAMS_FILE: &str = "histograms.csv";
pub const PLOT_DATA_FILE: &str = "plot_data.csv";

/// What a command printed and whether it succeeded.
#[derive(Debug)]
pub struct Execution {
    pub report: Report,
    pub failure: Option<Failure>,
}

impl Execution {
    pub fn exit_code(&self) -> u8 {
        self.failure.as_ref().map_or(0, Failure::exit_code)
    }
}

pub fn execute(command: Command) -> Execution {
    let mut report = Report::new();
    let result = match command {
        Command::Verify {
            target,
            n,
            config,
            tol,
        } => match target {
            VerifyTarget::Wheeler => verify_wheeler(&mut report, n, config.as_deref(), tol),
            VerifyTarget::Eraser => verify_eraser(&mut report, n, config.as_deref(), tol),
        },
        Command::Run {
            experiment,
            runs,
            seed,
            format,
            out,
            config,
            n,
            manifest,
        } => match manifest {
            Some(path) => RunManifest::read(&path).and_then(|m| replay(&mut report, m, &out)),
            None => plan_run(
                experiment.as_deref(),
                runs,
                seed,
                format.into(),
                config.as_deref(),
                n,
            )
            .and_then(|m| run(&mut report, m, &out)),
        },
        Command::Analytic {
            experiment,
            out,
            format,
            config,
            n,
        } => analytic(
            &mut report,
            &experiment,
            &out,
            format.into(),
            config.as_deref(),
            n,
        ),
    };
    Execution {
        report,
        failure: result.err(),
    }
}

/// Shortest round-tripping form, with an exponent for very small values.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "--tol must be a non-negative number, got {tol}"
        )))
    }
}

/// Renders entries of the form `a + b√2` with small rational `a`, `b`
/// symbolically, anything else numerically.
fn symbolic(z: Complex64) -> String {
    const EPS: f64 = 1e-12;
    if z.im.abs() > EPS {
        return z.to_string();
    }
    let x = z.re;
    let named = [
        (0.0, "0"),
        (0.5, "1/2"),
        (-0.5, "-1/2"),
        (1.0, "1"),
        (-1.0, "-1"),
        (std::f64::consts::FRAC_1_SQRT_2, "√2/2"),
        (-std::f64::consts::FRAC_1_SQRT_2, "-√2/2"),
    ];
    named
        .iter()
        .find(|(v, _)| (x - v).abs() <= EPS)
        .map_or_else(|| x.to_string(), |(_, s)| s.to_string())
}

fn push_matrix(report: &mut Report, key: &str, m: &ComplexMatrix) {
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|&z| symbolic(z)).collect();
        report.push(format!("{key}[{r}]"), row.join(" "));
    }
}

fn verify_wheeler(
    report: &mut Report,
    n: Option<usize>,
    config: Option<&Path>,
    tol: f64,
) -> Result<(), Failure> {
    check_tol(tol)?;
    if n.is_some() || config.is_some() {
        return Err(Failure::Usage(
            "--n and --config apply only to the eraser".into(),
        ));
    }
    let delayed = wheeler::compose_delayed();
    let nondelayed = wheeler::compose_nondelayed();
    let explicit = wheeler::explicit_composite();
    let diff = delayed.max_abs_diff(&nondelayed)?;
    let explicit_diff = delayed.max_abs_diff(&explicit)?;
    report
        .push("target", "wheeler")
        .push("max_abs_diff", num(diff))
        .push("explicit_diff", num(explicit_diff))
        .push("tol", num(tol));
    push_matrix(report, "matrix", &delayed);
    finish(
        report,
        diff.max(explicit_diff) <= tol,
        "wheeler orderings differ",
    )
}

fn verify_eraser(
    report: &mut Report,
    n: Option<usize>,
    config: Option<&Path>,
    tol: f64,
) -> Result<(), Failure> {
    check_tol(tol)?;
    let cfg = load_config(config, n)?;
    let r = verify_eraser_identity(&cfg)?;
    let defect = EraserOperators::new(&cfg)?.screen_intertwining_defect()?;
    report
        .push("target", "eraser")
        .push("n", cfg.n)
        .push("envelope", cfg.envelope)
        .push("max_abs_diff", num(r.max_abs_diff))
        .push("closed_form_diff", num(r.closed_form_diff))
        .push("intertwining_defect", num(defect))
        .push("tol", num(tol));
    let ok = r.max_abs_diff <= tol && r.closed_form_diff <= tol && defect <= tol;
    finish(report, ok, "eraser orderings differ")
}

fn finish(report: &mut Report, ok: bool, what: &str) -> Result<(), Failure> {
    report.push("status", if ok { "ok" } else { "fail" });
    if ok {
        Ok(())
    } else {
        Err(Failure::Invariant(format!(
            "{what} by more than the tolerance"
        )))
    }
}

fn parse_experiment(s: &str) -> Result<Experiment, Failure> {
    s.parse().map_err(Failure::from)
}

fn format_name(f: Format) -> String {
    f.extension().to_string()
}

fn parse_format(s: &str) -> Result<Format, Failure> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(Failure::Usage(format!("unknown format {s:?}"))),
    }
}

fn plan_run(
    experiment: Option<&str>,
    runs: u64,
    seed: u64,
    format: Format,
    config: Option<&Path>,
    n: Option<usize>,
) -> Result<RunManifest, Failure> {
    let experiment =
        parse_experiment(experiment.expect("clap requires an experiment without --manifest"))?;
    if runs == 0 {
        return Err(Failure::Usage("--runs must be at least 1".into()));
    }
    let config = if experiment.is_eraser() {
        Some(load_config(config, n)?)
    } else if n.is_some() || config.is_some() {
        return Err(Failure::Usage(
            "--n and --config apply only to eraser experiments".into(),
        ));
    } else {
        None
    };
    Ok(RunManifest {
        command: "run".into(),
        experiment,
        config,
        n_runs: Some(runs),
        seed: Some(seed),
        format: format_name(format),
        tool_version: TOOL_VERSION.into(),
        output_paths: Vec::new(),
    })
}

fn replay(report: &mut Report, manifest: RunManifest, out: &Path) -> Result<(), Failure> {
    if manifest.command != "run" {
        return Err(Failure::Usage(format!(
            "cannot replay a {:?} manifest",
            manifest.command
        )));
    }
    if manifest.n_runs.is_none() || manifest.seed.is_none() {
        return Err(Failure::Usage("manifest lacks n_runs or seed".into()));
    }
    run(report, manifest, out)
}

fn prepare_out(out: &Path) -> Result<(), Failure> {
    fs::create_dir_all(out).map_err(|e| io_failure(out, e))
}

fn run(report: &mut Report, mut manifest: RunManifest, out: &Path) -> Result<(), Failure> {
    let format = parse_format(&manifest.format)?;
    let (n_runs, seed) = (manifest.n_runs.unwrap_or(0), manifest.seed.unwrap_or(0));
    prepare_out(out)?;
    let experiment = manifest.experiment;
    let labels = experiment.detector_labels();

    let (events, joint) = match (experiment, &manifest.config) {
        (Experiment::Eraser(e), Some(cfg)) => {
            let joint = joint_distribution(cfg, e)?;
            (
                simulate_runs(experiment, &eraser_outcomes(&joint), n_runs, seed)?,
                Some((joint, cfg)),
            )
        }
        (Experiment::Wheeler(s), None) => (
            simulate_runs(experiment, &wheeler_outcomes(s), n_runs, seed)?,
            None,
        ),
        _ => {
            return Err(Failure::Usage(format!(
                "config does not match experiment {experiment}"
            )))
        }
    };

    let events_name = format!("events.{}", format.extension());
    let events_path = out.join(&events_name);
    write_events(&events_path, &events, format)?;
    let mut outputs = vec![events_name];

    report
        .push("command", "run")
        .push("experiment", experiment)
        .push("runs", n_runs)
        .push("seed", seed)
        .push("format", &manifest.format)
        .push("events", events_path.display());

    for label in &labels {
        let count = events.iter().filter(|e| &e.detector == label).count();
        report.push(format!("count[{label}]"), count);
    }

    if let Some((joint, cfg)) = joint {
        let edges = screen_edges(cfg, DEFAULT_HISTOGRAM_BINS);
        let hists = group_histograms(&events, &labels, &edges)?;
        let path = out.join(HISTOGRAMS_FILE);
        write_histograms(&path, &hists)?;
        outputs.push(HISTOGRAMS_FILE.into());
        report.push("histograms", path.display());
        let envelope = expected_envelope(&joint, &edges)?;
        for h in &hists {
            let v = visibility(h, &envelope)
                .map_or_else(|_| "n/a".to_string(), |v| v.value.to_string());
            report.push(format!("visibility[{}]", h.group), v);
        }
    }

    manifest.output_paths = outputs;
    manifest.write(out)?;
    report.push("manifest", out.join(MANIFEST_FILE).display());
    Ok(())
}

fn analytic(
    report: &mut Report,
    experiment: &str,
    out: &Path,
    format: Format,
    config: Option<&Path>,
    n: Option<usize>,
) -> Result<(), Failure> {
    let experiment = parse_experiment(experiment)?;
    let Experiment::Eraser(e) = experiment else {
        return Err(Failure::Usage(format!(
            "analytic distributions are available for eraser1..3, not {experiment}"
        )));
    };
    let cfg: EraserConfig = load_config(config, n)?;
    let joint = joint_distribution(&cfg, e)?;
    prepare_out(out)?;

    let name = format!("analytic.{}", format.extension());
    let path: PathBuf = out.join(&name);
    write_analytic(&path, &joint, format)?;
    let plot = out.join(PLOT_DATA_FILE);
    write_plot_data(&plot, &joint)?;

    report
        .push("command", "analytic")
        .push("experiment", experiment)
        .push("n", cfg.n)
        .push("envelope", cfg.envelope)
        .push("total", num(joint.total()));
    for &d in &joint.detectors {
        report.push(
            format!("total[{d}]"),
            num(joint.detector_total(d).unwrap_or(0.0)),
        );
    }
    report
        .push("analytic", path.display())
        .push("plot_data", plot.display());

    RunManifest {
        command: "analytic".into(),
        experiment,
        config: Some(cfg),
        n_runs: None,
        seed: None,
        format: format_name(format),
        tool_version: TOOL_VERSION.into(),
        output_paths: vec![name, PLOT_DATA_FILE.into()],
    }
    .write(out)?;
    report.push("manifest", out.join(MANIFEST_FILE).display());
    Ok(())
}
