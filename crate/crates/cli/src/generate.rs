use std::path::PathBuf;

use clap::{Args, ValueEnum};

use seqx_core::event::{Event, Label, SensorGeometry};
use seqx_core::synth::{generate, SceneConfig, SynthError, Trajectory};

use crate::error::CliError;
use crate::stream_files::{save_labels, save_stream, FormatArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrajectoryKind {
    Pendulum,
    Linear,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Output event stream
    pub output: PathBuf,
    /// Sensor width in pixels
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub width: u16,
    /// Sensor height in pixels
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub height: u16,
    /// Scene duration in microseconds
    #[arg(long, default_value_t = 1_000_000)]
    pub duration_us: u64,
    /// Signal events per second from the object
    #[arg(long, default_value_t = 10_000.0)]
    pub signal_rate: f64,
    /// Background-activity events per second over the whole array
    #[arg(long, default_value_t = 10_000.0)]
    pub noise_rate: f64,
    /// Trajectory shape
    #[arg(long, value_enum, default_value_t = TrajectoryKind::Pendulum)]
    pub trajectory: TrajectoryKind,
    /// Pendulum center "x,y" (default: sensor center)
    #[arg(long, value_parser = parse_pair)]
    pub center: Option<(f64, f64)>,
    /// Pendulum swing amplitude in pixels (default: width / 4)
    #[arg(long)]
    pub amplitude: Option<f64>,
    /// Pendulum period in microseconds
    #[arg(long, default_value_t = 1_000_000.0)]
    pub period_us: f64,
    /// Linear start "x,y" (default: sensor center)
    #[arg(long, value_parser = parse_pair)]
    pub start: Option<(f64, f64)>,
    /// Linear velocity "vx,vy" in pixels per second
    #[arg(long, value_parser = parse_pair, default_value = "0,0")]
    pub velocity: (f64, f64),
    /// Chebyshev radius of the signal cluster
    #[arg(long, default_value_t = 1)]
    pub cluster_radius: u16,
    /// Reproducibility seed
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Ground-truth label sidecar path (default: OUTPUT.labels)
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub output_format: FormatArg,
    /// Print the summary as JSON
    #[arg(long)]
    pub json: bool,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"a,b\", got {s:?}"))?;
    let a = a.trim().parse().map_err(|e| format!("bad first value: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("bad second value: {e}"))?;
    Ok((a, b))
}

pub fn run(args: GenerateArgs) -> Result<(), CliError> {
    let geom = SensorGeometry::new(args.width, args.height);
    let center_default = (args.width as f64 / 2.0, args.height as f64 / 2.0);
    let trajectory = match args.trajectory {
        TrajectoryKind::Pendulum => Trajectory::Pendulum {
            center: args.center.unwrap_or(center_default),
            amplitude: args.amplitude.unwrap_or(args.width as f64 / 4.0),
            period_us: args.period_us,
        },
        TrajectoryKind::Linear => Trajectory::Linear {
            start: args.start.unwrap_or(center_default),
            velocity: args.velocity,
        },
    };
    let cfg = SceneConfig {
        geom,
        duration_us: args.duration_us,
        signal_rate: args.signal_rate,
        noise_rate: args.noise_rate,
        trajectory,
        cluster_radius: args.cluster_radius,
        seed: args.seed,
    };

    let labeled = generate(&cfg).map_err(|e| match e {
        SynthError::InvalidRate | SynthError::TrajectoryOutOfBounds { .. } => {
            CliError::usage(e.to_string())
        }
        other => CliError::processing(other.to_string()),
    })?;

    let events: Vec<Event> = labeled.iter().map(|le| le.event).collect();
    let labels: Vec<Label> = labeled.iter().map(|le| le.label).collect();
    let signal = labels.iter().filter(|l| **l == Label::Real).count();

    save_stream(&args.output, args.output_format, geom, &events)?;
    let labels_path = args.labels.clone().unwrap_or_else(|| {
        let mut p = args.output.clone().into_os_string();
        p.push(".labels");
        PathBuf::from(p)
    });
    save_labels(&labels_path, &labels)?;

    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "events": events.len(),
                "signal": signal,
                "noise": events.len() - signal,
                "seed": args.seed,
            })
        );
    } else {
        println!(
            "generated {} event(s): {} signal, {} noise (seed {})",
            events.len(),
            signal,
            events.len() - signal,
            args.seed
        );
        println!(
            "wrote {} and labels {}",
            args.output.display(),
            labels_path.display()
        );
    }
    Ok(())
}
