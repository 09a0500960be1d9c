use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Result};
use serde::Serialize;

use seqkey::metrics::{evaluate_dataset, evaluate_video, EvalReport};

use crate::{inputs, EvaluateArgs};

#[derive(Debug, Serialize)]
struct VideoRow {
    name: String,
    frames: usize,
    extracted: usize,
    benchmark: usize,
    #[serde(flatten)]
    report: EvalReport,
}

#[derive(Debug, Serialize)]
struct MetricsReport {
    videos: Vec<VideoRow>,
    average: EvalReport,
}

struct VideoInputs {
    name: String,
    extracted: PathBuf,
    benchmark: PathBuf,
    manifest: PathBuf,
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "video".into(), |s| s.to_string_lossy().into_owned())
}

/// Pairs `<extracted>/<name>.json` with `<benchmark>/<name>.json` and
/// `<frames>/<name>/manifest.txt`, in name order.
fn dataset(args: &EvaluateArgs) -> Result<Vec<VideoInputs>> {
    if !args.benchmark.is_dir() || !args.frames.is_dir() {
        bail!("dataset mode needs --benchmark and --frames to be directories as well");
    }
    let mut names: Vec<String> = fs::read_dir(&args.extracted)
        .map_err(|e| anyhow!("extracted: {}: {e}", args.extracted.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json") && !stem(p).ends_with(".report"))
        .map(|p| stem(&p))
        .collect();
    names.sort();
    if names.is_empty() {
        bail!(
            "extracted: no <video>.json files in {}",
            args.extracted.display()
        );
    }
    Ok(names
        .into_iter()
        .map(|name| VideoInputs {
            extracted: args.extracted.join(format!("{name}.json")),
            benchmark: args.benchmark.join(format!("{name}.json")),
            manifest: args.frames.join(&name).join("manifest.txt"),
            name,
        })
        .collect())
}

fn evaluate_one(v: &VideoInputs) -> Result<VideoRow> {
    let extracted = inputs::keyframes("extracted", &v.extracted)?;
    let benchmark = inputs::keyframes("benchmark", &v.benchmark)?;
    let hists = inputs::histograms(&v.manifest)?;
    let report =
        evaluate_video(&extracted, &benchmark, &hists).map_err(|e| anyhow!("{}: {e}", v.name))?;
    Ok(VideoRow {
        name: v.name.clone(),
        frames: hists.len(),
        extracted: extracted.len(),
        benchmark: benchmark.len(),
        report,
    })
}

pub fn run(args: &EvaluateArgs) -> Result<()> {
    let videos = if args.extracted.is_dir() {
        dataset(args)?
    } else {
        vec![VideoInputs {
            name: stem(&args.extracted),
            extracted: args.extracted.clone(),
            benchmark: args.benchmark.clone(),
            manifest: args.frames.clone(),
        }]
    };
    let rows = videos
        .iter()
        .map(evaluate_one)
        .collect::<Result<Vec<_>>>()?;
    let per_video: Vec<EvalReport> = rows.iter().map(|r| r.report.clone()).collect();
    let average = evaluate_dataset(&per_video)?;
    println!(
        "{} video(s): F1 {:.4}  Fidelity {:.4}  CR {:.4}",
        rows.len(),
        average.f1,
        average.fidelity,
        average.cr
    );
    let report = MetricsReport {
        videos: rows,
        average,
    };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    fs::write(&args.out, text).map_err(|e| anyhow!("out: {}: {e}", args.out.display()))?;
    Ok(())
}
