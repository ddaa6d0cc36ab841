use std::path::PathBuf;

use clap::{Args, ValueEnum};

use seqx_core::event::SensorGeometry;
use seqx_core::filter::{real_events, run_filter, EventFilter};
use seqx_core::seqx::{
    default_wavg_weights, Aggregation, ScaledSeqXFilter, SeqXConfig, SeqXFilter,
};
use seqx_core::baseline::{Bs1Filter, Bs2Filter, Bs3Filter};

use crate::error::CliError;
use crate::stream_files::{load_stream, require_valid, save_labels, save_stream, FormatArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterKind {
    Seqx,
    Bs1,
    Bs2,
    Bs3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AggKind {
    Min,
    Max,
    Avg,
    Wavg,
}

#[derive(Debug, Args)]
pub struct DenoiseArgs {
    /// Input event stream
    pub input: PathBuf,
    /// Output stream holding the passed events
    pub output: PathBuf,
    /// Filter to apply
    #[arg(long, value_enum, default_value_t = FilterKind::Seqx)]
    pub filter: FilterKind,
    /// Past-event window length X (seqx; default 2)
    #[arg(long)]
    pub window: Option<usize>,
    /// Spatial threshold sigma (seqx; default 0.05, or 0.005 above 300k pixels)
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Aggregation over the window distances (seqx; default min)
    #[arg(long, value_enum)]
    pub agg: Option<AggKind>,
    /// Comma-separated weights for --agg wavg, most recent first
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    /// Use the division-free integer path (seqx with min aggregation)
    #[arg(long)]
    pub scaled: bool,
    /// Only REAL-verdict events enter the window (seqx, non-default variant)
    #[arg(long)]
    pub update_on_real: bool,
    /// Time threshold in microseconds (bs1/bs2/bs3; default 1000)
    #[arg(long)]
    pub dt_us: Option<u64>,
    /// Sub-sampling factor s (bs2; default 2)
    #[arg(long)]
    pub subsample: Option<u16>,
    /// Input format
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub input_format: FormatArg,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub output_format: FormatArg,
    /// Also write the per-event verdict sidecar ('1' passed, '0' dropped)
    #[arg(long)]
    pub verdicts: Option<PathBuf>,
    /// Print the summary as JSON
    #[arg(long)]
    pub json: bool,
}

fn reject_irrelevant_flags(args: &DenoiseArgs) -> Result<(), CliError> {
    let seqx_flags = [
        (args.window.is_some(), "--window"),
        (args.sigma.is_some(), "--sigma"),
        (args.agg.is_some(), "--agg"),
        (args.weights.is_some(), "--weights"),
        (args.scaled, "--scaled"),
        (args.update_on_real, "--update-on-real"),
    ];
    let baseline_flags = [
        (args.dt_us.is_some(), "--dt-us"),
        (args.subsample.is_some(), "--subsample"),
    ];
    let reject = |flags: &[(bool, &str)], filter: &str| -> Result<(), CliError> {
        for (given, name) in flags {
            if *given {
                return Err(CliError::usage(format!(
                    "{name} does not apply to --filter {filter}"
                )));
            }
        }
        Ok(())
    };
    match args.filter {
        FilterKind::Seqx => reject(&baseline_flags, "seqx"),
        FilterKind::Bs1 => reject(&seqx_flags, "bs1"),
        FilterKind::Bs3 => reject(&seqx_flags, "bs3"),
        FilterKind::Bs2 => {
            reject(&seqx_flags, "bs2")?;
            Ok(())
        }
    }?;
    if args.filter != FilterKind::Bs2 && args.subsample.is_some() {
        return Err(CliError::usage("--subsample applies to --filter bs2 only"));
    }
    Ok(())
}

pub fn build_seqx_config(
    window: Option<usize>,
    sigma: Option<f64>,
    agg: Option<AggKind>,
    weights: Option<Vec<f64>>,
    update_on_real: bool,
    geom: SensorGeometry,
) -> Result<SeqXConfig, CliError> {
    let defaults = SeqXConfig::default_for(geom);
    let window = window.unwrap_or(defaults.window_length);
    let sigma = sigma.unwrap_or(defaults.sigma);
    let agg = agg.unwrap_or(AggKind::Min);
    if weights.is_some() && agg != AggKind::Wavg {
        return Err(CliError::usage("--weights requires --agg wavg"));
    }
    let aggregation = match agg {
        AggKind::Min => Aggregation::Min,
        AggKind::Max => Aggregation::Max,
        AggKind::Avg => Aggregation::Avg,
        AggKind::Wavg => Aggregation::WAvg(weights.unwrap_or_else(|| default_wavg_weights(window))),
    };
    let mut cfg = SeqXConfig::new(window, sigma, aggregation)
        .map_err(|e| CliError::usage(e.to_string()))?;
    cfg.update_on_real = update_on_real;
    Ok(cfg)
}

fn build_filter(
    args: &DenoiseArgs,
    geom: SensorGeometry,
) -> Result<Box<dyn EventFilter>, CliError> {
    let dt_us = args.dt_us.unwrap_or(1000);
    match args.filter {
        FilterKind::Seqx => {
            let cfg = build_seqx_config(
                args.window,
                args.sigma,
                args.agg,
                args.weights.clone(),
                args.update_on_real,
                geom,
            )?;
            if args.scaled {
                let filter =
                    ScaledSeqXFilter::new(cfg, geom).map_err(|e| CliError::usage(e.to_string()))?;
                Ok(Box::new(filter))
            } else {
                let filter =
                    SeqXFilter::new(cfg, geom).map_err(|e| CliError::usage(e.to_string()))?;
                Ok(Box::new(filter))
            }
        }
        FilterKind::Bs1 => Ok(Box::new(Bs1Filter::new(geom, dt_us))),
        FilterKind::Bs2 => {
            let s = args.subsample.unwrap_or(2);
            if s == 0 {
                return Err(CliError::usage("--subsample must be >= 1"));
            }
            Ok(Box::new(Bs2Filter::new(geom, s, dt_us)))
        }
        FilterKind::Bs3 => Ok(Box::new(Bs3Filter::new(geom, dt_us))),
    }
}

pub fn run(args: DenoiseArgs) -> Result<(), CliError> {
    reject_irrelevant_flags(&args)?;
    let (geom, events) = load_stream(&args.input, args.input_format)?;
    require_valid(&args.input, geom, &events)?;

    let mut filter = build_filter(&args, geom)?;
    let labeled = run_filter(filter.as_mut(), &events)
        .map_err(|e| CliError::processing(e.to_string()))?;
    let passed = real_events(&labeled);
    save_stream(&args.output, args.output_format, geom, &passed)?;

    if let Some(path) = &args.verdicts {
        let labels: Vec<_> = labeled.iter().map(|le| le.label).collect();
        save_labels(path, &labels)?;
    }

    let input_events = events.len();
    let dropped = input_events - passed.len();
    let pass_rate = if input_events == 0 {
        0.0
    } else {
        passed.len() as f64 / input_events as f64
    };
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "input_events": input_events,
                "passed": passed.len(),
                "dropped": dropped,
                "pass_rate": pass_rate,
            })
        );
    } else {
        println!("input events: {input_events}");
        println!("passed:       {} ({:.1}%)", passed.len(), pass_rate * 100.0);
        println!("dropped:      {dropped}");
    }
    Ok(())
}
