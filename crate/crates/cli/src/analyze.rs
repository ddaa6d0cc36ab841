use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use clap::Args;

use seqx_core::analysis::{
    build_histogram, select_function, RuleVerdict, SplitHistogram, DEFAULT_BINS, DEFAULT_RANGE,
    DEFAULT_TIE_TOLERANCE,
};
use seqx_core::event::LabeledEvent;
use seqx_core::seqx::{default_wavg_weights, Aggregation};

use crate::error::CliError;
use crate::stream_files::{load_labels, load_stream, require_valid, FormatArg};

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Input event stream
    pub input: PathBuf,
    /// Label sidecar for the input ('1' real, '0' noise)
    #[arg(long)]
    pub labels: PathBuf,
    /// Past-event window length X
    #[arg(long, default_value_t = 2)]
    pub window: usize,
    /// Number of regular histogram bins (an overflow bin is always added)
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
    /// Upper edge of the binned range (lower edge is 0)
    #[arg(long, default_value_t = DEFAULT_RANGE.1)]
    pub range_max: f64,
    /// Comma-separated wavg weights, most recent first (default 3,1 for X=2)
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    /// Relative tolerance under which two ratios are tied (rule iii)
    #[arg(long, default_value_t = DEFAULT_TIE_TOLERANCE)]
    pub tie_tolerance: f64,
    /// Directory for per-mode histogram CSVs (hist_min.csv, ...)
    #[arg(long)]
    pub hist_dir: Option<PathBuf>,
    /// Input format
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub input_format: FormatArg,
    /// Print the verdict as JSON
    #[arg(long)]
    pub json: bool,
}

fn ratio_json(ratio: f64) -> serde_json::Value {
    if ratio.is_finite() {
        serde_json::json!(ratio)
    } else {
        serde_json::json!("inf")
    }
}

fn verdict_json(verdict: &RuleVerdict) -> serde_json::Value {
    serde_json::json!({
        "selected": verdict.selected_mode().name(),
        "rule1_fallback": verdict.rule1_fallback,
        "tie_tolerance": verdict.tie_tolerance,
        "modes": verdict.per_function.iter().map(|a| {
            serde_json::json!({
                "mode": a.mode.name(),
                "first_bin_real": a.first_bin_real,
                "first_bin_noise": a.first_bin_noise,
                "ratio": ratio_json(a.real_ratio),
                "rule1_pass": a.rule1_pass,
                "rule2_rank": a.rule2_rank,
                "rule3_rank": a.rule3_rank,
            })
        }).collect::<Vec<_>>(),
    })
}

pub fn run(args: AnalyzeArgs) -> Result<(), CliError> {
    if args.weights.is_some() && args.weights.as_ref().unwrap().len() != args.window {
        return Err(CliError::usage(format!(
            "--weights needs exactly {} values for --window {}",
            args.window, args.window
        )));
    }

    let (geom, events) = load_stream(&args.input, args.input_format)?;
    require_valid(&args.input, geom, &events)?;
    let labels = load_labels(&args.labels, events.len())?;
    let labeled: Vec<LabeledEvent> = events
        .into_iter()
        .zip(labels)
        .map(|(event, label)| LabeledEvent::new(event, label))
        .collect();

    let weights = args
        .weights
        .clone()
        .unwrap_or_else(|| default_wavg_weights(args.window));
    let modes = [
        Aggregation::Min,
        Aggregation::Max,
        Aggregation::Avg,
        Aggregation::WAvg(weights),
    ];

    let histograms: Vec<(Aggregation, SplitHistogram)> = modes
        .into_iter()
        .map(|mode| {
            build_histogram(
                &labeled,
                geom,
                args.window,
                &mode,
                args.bins,
                (0.0, args.range_max),
            )
            .map(|h| (mode, h))
        })
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(e.to_string()))?;

    if let Some(dir) = &args.hist_dir {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::processing(format!("cannot create {}: {e}", dir.display())))?;
        for (mode, hist) in &histograms {
            let path = dir.join(format!("hist_{}.csv", mode.name()));
            let file = File::create(&path)
                .map_err(|e| CliError::processing(format!("cannot create {}: {e}", path.display())))?;
            hist.write_csv(BufWriter::new(file))
                .map_err(|e| CliError::processing(format!("cannot write {}: {e}", path.display())))?;
        }
    }

    let verdict = select_function(&histograms, args.tie_tolerance)
        .map_err(|e| CliError::processing(e.to_string()))?;

    if args.json {
        println!("{}", verdict_json(&verdict));
    } else {
        println!("{verdict}");
    }
    Ok(())
}
