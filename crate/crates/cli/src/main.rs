mod evaluate;
mod extract;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use seqkey::synth::{self, SynthSpec};

#[derive(Parser, Debug)]
#[command(
    name = "seqkey",
    version,
    about = "Shot-aware sequential keyframe extraction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extract keyframes from features, shots and frames.
    Extract(ExtractArgs),
    /// Score extracted keyframes against benchmark keyframes.
    Evaluate(EvaluateArgs),
    /// Generate a deterministic synthetic video fixture.
    GenSynth(GenSynthArgs),
    /// Compute HSV histogram features for every frame in a manifest.
    FeaturesFallback(FeaturesArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Adaptive clustering with redundancy elimination.
    Adaptive,
    /// Evenly spaced frames (baseline).
    Uniform,
    /// Plain k-means over all frames (baseline).
    Kmeans,
}

#[derive(clap::Args, Debug)]
pub struct ExtractArgs {
    /// Feature matrix (LMKF binary).
    #[arg(long)]
    pub features: PathBuf,
    /// Shot list (JSON).
    #[arg(long)]
    pub shots: PathBuf,
    /// Frame manifest, one PPM path per line.
    #[arg(long)]
    pub frames: PathBuf,
    /// Output keyframe file (JSON).
    #[arg(long)]
    pub out: PathBuf,
    /// Redundancy similarity threshold.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// JSON pipeline config; its fields override command-line flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Run report path [default: <out stem>.report.json].
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Worker threads for per-shot processing (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = Method::Adaptive)]
    pub method: Method,
    /// Keyframe budget for the baselines [default: number of shots].
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct EvaluateArgs {
    /// Extracted keyframe file, or a directory of `<video>.json` files.
    #[arg(long)]
    pub extracted: PathBuf,
    /// Benchmark keyframe file, or a directory of `<video>.json` files.
    #[arg(long)]
    pub benchmark: PathBuf,
    /// Frame manifest, or a directory holding `<video>/manifest.txt`.
    #[arg(long)]
    pub frames: PathBuf,
    /// Metrics report (JSON).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(clap::Args, Debug)]
struct GenSynthArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    shots: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    frames_per_shot: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = synth::DEFAULT_WIDTH)]
    width: usize,
    #[arg(long, default_value_t = synth::DEFAULT_HEIGHT)]
    height: usize,
}

#[derive(clap::Args, Debug)]
struct FeaturesArgs {
    /// Frame manifest.
    #[arg(long)]
    frames: PathBuf,
    /// Output feature file (LMKF).
    #[arg(long)]
    out: PathBuf,
}

fn gen_synth(args: &GenSynthArgs) -> Result<()> {
    let spec = SynthSpec {
        shots: args.shots as usize,
        frames_per_shot: args.frames_per_shot as usize,
        seed: args.seed,
        width: args.width,
        height: args.height,
    };
    let video = synth::generate(&spec)?;
    synth::write_video(&video, &args.out)
        .with_context(|| format!("out: {}", args.out.display()))?;
    println!(
        "wrote {} frames in {} shots to {}",
        video.frames.len(),
        video.shots.len(),
        args.out.display()
    );
    Ok(())
}

fn features_fallback(args: &FeaturesArgs) -> Result<()> {
    let hists = inputs::histograms(&args.frames)?;
    let matrix = seqkey::frames::histogram_features(&hists);
    seqkey::interchange::write_features(&matrix, &args.out)?;
    let back = seqkey::interchange::load_features(&args.out)?;
    anyhow::ensure!(
        back == matrix,
        "written feature file does not read back identically"
    );
    println!(
        "wrote {}x{} features to {}",
        matrix.n(),
        matrix.d(),
        args.out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Extract(args) => extract::run(args),
        Command::Evaluate(args) => evaluate::run(args),
        Command::GenSynth(args) => gen_synth(args),
        Command::FeaturesFallback(args) => features_fallback(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
