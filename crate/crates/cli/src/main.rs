//! `seqx` — the event-camera denoising pipeline as one binary:
//! generate -> denoise -> frames -> metrics, plus the aggregation-function
//! study (analyze). Every subcommand is deterministic given its inputs and
//! flags, and never mutates its input files.

mod analyze;
mod denoise;
mod error;
mod frames;
mod generate;
mod metrics_cmd;
mod stream_files;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "seqx", version, about = "Event-camera background-activity denoising toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Filter an event stream, keeping the events judged real
    Denoise(denoise::DenoiseArgs),
    /// Accumulate fixed-count event bundles into PGM frames
    Frames(frames::FramesArgs),
    /// Pairwise PSNR/SSIM between two frame directories
    Metrics(metrics_cmd::MetricsArgs),
    /// Histogram labeled f-values per aggregation mode and select the best
    Analyze(analyze::AnalyzeArgs),
    /// Generate a labeled synthetic scene (moving cluster + uniform noise)
    Generate(generate::GenerateArgs),
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; they are not failures.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    let result = match cli.command {
        Command::Denoise(args) => denoise::run(args),
        Command::Frames(args) => frames::run(args),
        Command::Metrics(args) => metrics_cmd::run(args),
        Command::Analyze(args) => analyze::run(args),
        Command::Generate(args) => generate::run(args),
    };

    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
