use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};

use seqkey::baseline::{kmeans_keyframes, uniform_sampling};
use seqkey::interchange::write_keyframes;
use seqkey::pipeline::{run_video, PipelineConfig, RunReport, SilhouetteTieRule};
use seqkey::Points;

use crate::{inputs, ExtractArgs, Method};

/// Config file contents; every present field overrides the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    redundancy_threshold: Option<f64>,
    min_nonzero_bins: Option<usize>,
    l2_normalize_features: Option<bool>,
    sc_tie_rule: Option<SilhouetteTieRule>,
}

fn effective_config(args: &ExtractArgs) -> Result<PipelineConfig> {
    let mut config = PipelineConfig::default();
    if let Some(t) = args.threshold {
        config.redundancy_threshold = t;
    }
    if let Some(path) = &args.config {
        let text =
            fs::read_to_string(path).map_err(|e| anyhow!("config: {}: {e}", path.display()))?;
        let file: ConfigFile =
            serde_json::from_str(&text).map_err(|e| anyhow!("config: {}: {e}", path.display()))?;
        if let Some(v) = file.redundancy_threshold {
            config.redundancy_threshold = v;
        }
        if let Some(v) = file.min_nonzero_bins {
            config.min_nonzero_bins = v;
        }
        if let Some(v) = file.l2_normalize_features {
            config.l2_normalize_features = v;
        }
        if let Some(v) = file.sc_tie_rule {
            config.sc_tie_rule = v;
        }
    }
    config.validate().map_err(|e| anyhow!("config: {e}"))?;
    Ok(config)
}

fn default_report_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map_or_else(|| "keyframes".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.report.json"))
}

#[derive(Serialize)]
struct ExtractReport<'a> {
    method: &'a str,
    config: &'a PipelineConfig,
    frames: usize,
    keyframe_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    run: Option<&'a RunReport>,
}

pub fn run(args: &ExtractArgs) -> Result<()> {
    let config = effective_config(args)?;
    let features = inputs::features(&args.features)?;
    let shots = inputs::shots(&args.shots)?;
    if shots.frame_count() != features.n() {
        bail!(
            "shape: shots cover {} frames but features have {} rows",
            shots.frame_count(),
            features.n()
        );
    }
    let hists = inputs::histograms(&args.frames)?;
    if hists.len() != features.n() {
        bail!(
            "shape: manifest lists {} frames but features have {} rows",
            hists.len(),
            features.n()
        );
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .context("building worker pool")?;
    let budget = args.count.unwrap_or(shots.len());
    let (keyframes, run_report, method) = pool.install(|| -> Result<_> {
        Ok(match args.method {
            Method::Adaptive => {
                let (k, r) = run_video(&features, &shots, &hists, &config)?;
                (k, Some(r), "adaptive")
            }
            Method::Uniform => (uniform_sampling(features.n(), budget), None, "uniform"),
            Method::Kmeans => {
                let points = Points::from_features(&features, config.l2_normalize_features);
                (kmeans_keyframes(&points, budget, 100), None, "kmeans")
            }
        })
    })?;

    write_keyframes(&keyframes, &args.out).map_err(|e| anyhow!("out: {e}"))?;
    let back = inputs::keyframes("out", &args.out)?;
    ensure!(
        back == keyframes,
        "out: written keyframe file does not read back identically"
    );

    let report = ExtractReport {
        method,
        config: &config,
        frames: features.n(),
        keyframe_count: keyframes.len(),
        run: run_report.as_ref(),
    };
    let report_path = args
        .report
        .clone()
        .unwrap_or_else(|| default_report_path(&args.out));
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    fs::write(&report_path, text).map_err(|e| anyhow!("report: {}: {e}", report_path.display()))?;
    println!(
        "{} keyframes from {} frames -> {}",
        keyframes.len(),
        features.n(),
        args.out.display()
    );
    Ok(())
}
