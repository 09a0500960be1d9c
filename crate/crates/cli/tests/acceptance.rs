//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p seqkey-cli --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use seqkey::clustering::{
    adaptive_cluster, compute_sse, greedy_seed, greedy_seed_rounds, silhouette,
};
use seqkey::frames::{Histogram, BIN_COUNT};
use seqkey::interchange::{decode_features, FeatureMatrix};
use seqkey::metrics::{compression_ratio, evaluate_dataset, EvalReport};
use seqkey::redundancy::{eliminate, is_uninformative, DEFAULT_THRESHOLD};
use seqkey::Points;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn random_rows(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(-10.0..10.0)).collect())
        .collect()
}

fn naive_sse(rows: &[Vec<f64>], centers: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for x in rows {
        let mut best = f64::INFINITY;
        for c in centers {
            let mut s = 0.0;
            for t in 0..x.len() {
                s += (x[t] - c[t]) * (x[t] - c[t]);
            }
            best = best.min(s);
        }
        total += best;
    }
    total
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Mean of (b - a) / max(a, b). a: mean distance to the rest of the point's
/// cluster. b: distance to the nearest other center. Singletons score 0.
fn naive_silhouette(rows: &[Vec<f64>], centers: &[Vec<f64>], labels: &[usize]) -> f64 {
    let mut sum = 0.0;
    for (i, x) in rows.iter().enumerate() {
        let peers: Vec<usize> = (0..rows.len())
            .filter(|&j| j != i && labels[j] == labels[i])
            .collect();
        if peers.is_empty() {
            continue;
        }
        let a = peers.iter().map(|&j| euclid(x, &rows[j])).sum::<f64>() / peers.len() as f64;
        let b = (0..centers.len())
            .filter(|&c| c != labels[i])
            .map(|c| euclid(x, &centers[c]))
            .fold(f64::INFINITY, f64::min);
        let m = a.max(b);
        if m > 0.0 {
            sum += (b - a) / m;
        }
    }
    sum / rows.len() as f64
}

fn greedy_monotonicity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut rounds_checked = 0;
    for trial in 0..100 {
        let n = rng.random_range(2..=128);
        let d = rng.random_range(1..=16);
        let rows = random_rows(&mut rng, n, d);
        let points = Points::from_rows(&rows).map_err(|e| e.to_string())?;
        let k_max = ((n as f64).sqrt() as usize).max(1);
        let rounds = greedy_seed_rounds(&points, k_max).map_err(|e| e.to_string())?;
        let mut prev = f64::INFINITY;
        let mut centers = Vec::new();
        for (round, &(idx, sse)) in rounds.iter().enumerate() {
            if sse > prev {
                return Err(format!(
                    "trial {trial} round {round}: SSE rose from {prev} to {sse}"
                ));
            }
            centers.push(rows[idx].clone());
            let want = naive_sse(&rows, &centers);
            if (sse - want).abs() > 1e-9 * want.max(1.0) {
                return Err(format!(
                    "trial {trial} round {round}: reported SSE {sse}, recomputed {want}"
                ));
            }
            prev = sse;
            rounds_checked += 1;
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(5) {
        return Err(format!("took {took:.2?}, limit 5s"));
    }
    Ok(format!(
        "100 instances, {rounds_checked} rounds non-increasing, {took:.2?}"
    ))
}

fn sse_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let n = rng.random_range(1..=64);
        let d = rng.random_range(1..=8);
        let k = rng.random_range(1..=8);
        let rows = random_rows(&mut rng, n, d);
        let centers = random_rows(&mut rng, k, d);
        let points = Points::from_rows(&rows).map_err(|e| e.to_string())?;
        let got = compute_sse(&points, &centers).map_err(|e| e.to_string())?;
        let diff = (got - naive_sse(&rows, &centers)).abs();
        worst = worst.max(diff);
        if diff > 1e-9 {
            return Err(format!("trial {trial}: off by {diff:e}"));
        }
    }
    Ok(format!("100 instances, max |diff| {worst:.1e} <= 1e-9"))
}

fn silhouette_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst = 0.0f64;
    let mut trial = 0;
    let mut attempts = 0;
    while trial < 100 {
        attempts += 1;
        if attempts > 1000 {
            return Err(format!("only {trial} instances reached k in [2, 8]"));
        }
        let n = rng.random_range(8..=128);
        let d = rng.random_range(1..=8);
        let k = rng.random_range(2..=8);
        let rows = random_rows(&mut rng, n, d);
        let points = Points::from_rows(&rows).map_err(|e| e.to_string())?;
        let c = greedy_seed(&points, k).map_err(|e| e.to_string())?;
        if !(2..=8).contains(&c.k()) {
            continue;
        }
        let got = silhouette(&points, &c).map_err(|e| e.to_string())?;
        let diff = (got - naive_silhouette(&rows, &c.centers, &c.assignment)).abs();
        worst = worst.max(diff);
        if diff > 1e-9 {
            return Err(format!("instance {trial}: off by {diff:e}"));
        }
        trial += 1;
    }
    Ok(format!(
        "100 instances with k in [2, 8], max |diff| {worst:.1e} <= 1e-9"
    ))
}

/// Blob centers at least `10σ` apart (σ = 1), drawn by rejection.
fn blob_centers(rng: &mut ChaCha8Rng, k: usize) -> Vec<[f64; 2]> {
    loop {
        let centers: Vec<[f64; 2]> = (0..k)
            .map(|_| [rng.random_range(0.0..40.0), rng.random_range(0.0..40.0)])
            .collect();
        let ok = (0..k).all(|i| (i + 1..k).all(|j| euclid(&centers[i], &centers[j]) >= 10.0));
        if ok {
            return centers;
        }
    }
}

fn model_selection() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut hits = 0;
    let mut misses = Vec::new();
    for trial in 0..100 {
        let planted = 2 + trial % 3;
        let n = rng.random_range(24..=64);
        let centers = blob_centers(&mut rng, planted);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let c = centers[i % planted];
                vec![
                    c[0] + rng.sample::<f64, _>(StandardNormal),
                    c[1] + rng.sample::<f64, _>(StandardNormal),
                ]
            })
            .collect();
        let points = Points::from_rows(&rows).map_err(|e| e.to_string())?;
        let k = adaptive_cluster(&points).map_err(|e| e.to_string())?.k();
        if k == planted {
            hits += 1;
        } else {
            misses.push(format!("#{trial} planted {planted} got {k}"));
        }
    }
    let took = start.elapsed();
    let detail = format!("{hits}/100 recovered, {took:.2?}");
    if hits < 90 || took >= Duration::from_secs(30) {
        return Err(format!("{detail}; misses: {}", misses.join(", ")));
    }
    Ok(detail)
}

fn intersection(a: &Histogram, b: &Histogram) -> f64 {
    let (ta, tb) = (a.total() as f64, b.total() as f64);
    a.bins()
        .iter()
        .zip(b.bins().iter())
        .map(|(&x, &y)| (x as f64 / ta).min(y as f64 / tb))
        .sum()
}

fn random_histogram(rng: &mut ChaCha8Rng, used: usize) -> Histogram {
    let mut bins = [0u32; BIN_COUNT];
    for _ in 0..used {
        bins[rng.random_range(0..BIN_COUNT)] += rng.random_range(1..50);
    }
    Histogram::from_bins(bins).expect("nonzero histogram")
}

fn perturbed(rng: &mut ChaCha8Rng, base: &Histogram) -> Histogram {
    let mut bins = *base.bins();
    for _ in 0..3 {
        bins[rng.random_range(0..BIN_COUNT)] += rng.random_range(0..4);
    }
    Histogram::from_bins(bins).expect("nonzero histogram")
}

/// Checks one candidate list; returns a description of the violation.
fn check_elimination(hists: &[Histogram]) -> Option<String> {
    let candidates: Vec<(usize, &Histogram)> =
        hists.iter().enumerate().map(|(i, h)| (i * 3, h)).collect();
    let kept = eliminate(&candidates, DEFAULT_THRESHOLD);
    let position = |frame: usize| candidates.iter().position(|&(f, _)| f == frame);
    if kept.windows(2).any(|w| w[0] >= w[1]) || kept.iter().any(|&f| position(f).is_none()) {
        return Some(format!("survivors {kept:?} not an ordered subset"));
    }
    for (x, &a) in kept.iter().enumerate() {
        for &b in &kept[x + 1..] {
            let s = intersection(&hists[position(a)?], &hists[position(b)?]);
            if s >= DEFAULT_THRESHOLD {
                return Some(format!("survivors {a} and {b} have similarity {s}"));
            }
        }
    }
    if let Some(first) = candidates.iter().find(|(_, h)| !is_uninformative(h)) {
        if kept.first() != Some(&first.0) {
            return Some(format!(
                "earliest informative frame {} did not survive: {kept:?}",
                first.0
            ));
        }
    }
    None
}

fn redundancy_postcondition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut fixtures: Vec<(String, Vec<Histogram>)> = Vec::new();
    let one = random_histogram(&mut rng, 40);
    fixtures.push(("all-identical x2".into(), vec![one.clone(); 2]));
    fixtures.push(("all-identical x25".into(), vec![one.clone(); 25]));
    let mut solid = [0u32; BIN_COUNT];
    solid[7] = 100;
    let solid = Histogram::from_bins(solid).expect("nonzero histogram");
    fixtures.push(("all-identical uninformative".into(), vec![solid.clone(); 6]));
    fixtures.push((
        "uninformative then duplicates".into(),
        vec![solid, one.clone(), one.clone(), one],
    ));
    for t in 0..200 {
        let groups = rng.random_range(1..=5);
        let bases: Vec<Histogram> = (0..groups)
            .map(|_| random_histogram(&mut rng, 30))
            .collect();
        let len = rng.random_range(1..=25);
        let hists = (0..len)
            .map(|_| {
                let base = &bases[rng.random_range(0..groups)];
                match rng.random_range(0..3) {
                    0 => base.clone(),
                    1 => perturbed(&mut rng, base),
                    _ => {
                        let used = rng.random_range(1..=40);
                        random_histogram(&mut rng, used)
                    }
                }
            })
            .collect();
        fixtures.push((format!("random #{t}"), hists));
    }
    for (name, hists) in &fixtures {
        if let Some(problem) = check_elimination(hists) {
            return Err(format!("{name}: {problem}"));
        }
    }
    Ok(format!(
        "{} fixtures, survivors pairwise < 0.8, earliest survives",
        fixtures.len()
    ))
}

fn run_cli(args: &[&str], dir: &Path) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_seqkey"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    Ok(())
}

fn end_to_end() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    let start = Instant::now();
    let steps: [&[&str]; 4] = [
        &[
            "gen-synth",
            "--out",
            "v",
            "--shots",
            "3",
            "--frames-per-shot",
            "40",
            "--seed",
            "7",
        ],
        &[
            "features-fallback",
            "--frames",
            "v/manifest.txt",
            "--out",
            "v/fallback.lmkf",
        ],
        &[
            "extract",
            "--features",
            "v/fallback.lmkf",
            "--shots",
            "v/shots.json",
            "--frames",
            "v/manifest.txt",
            "--out",
            "keys.json",
        ],
        &[
            "evaluate",
            "--extracted",
            "keys.json",
            "--benchmark",
            "v/benchmark.json",
            "--frames",
            "v/manifest.txt",
            "--out",
            "metrics.json",
        ],
    ];
    for step in steps {
        run_cli(step, dir)?;
    }
    let took = start.elapsed();
    let text = std::fs::read_to_string(dir.join("metrics.json")).map_err(|e| e.to_string())?;
    let report: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let avg = &report["average"];
    let (f1, cr, fid) = (
        avg["f1"].as_f64(),
        avg["cr"].as_f64(),
        avg["fidelity"].as_f64(),
    );
    let show = |v: Option<f64>| v.map_or("missing".to_string(), |v| v.to_string());
    let detail = format!(
        "F1 {}, CR {}, fidelity {}, {took:.2?}",
        show(f1),
        show(cr),
        show(fid)
    );
    let ok = f1 == Some(1.0)
        && cr == Some(0.975)
        && fid.is_some_and(|f| f >= 0.95)
        && took < Duration::from_secs(10);
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn report(f1: f64, cr: f64) -> EvalReport {
    EvalReport {
        f1,
        precision: f1,
        recall: f1,
        fidelity: f1,
        cr,
        matches: Vec::new(),
    }
}

fn cr_arithmetic() -> Outcome {
    let cr = compression_ratio(1000, 8).map_err(|e| e.to_string())?;
    let avg = evaluate_dataset(&[report(0.4, 0.4), report(0.6, 0.6)]).map_err(|e| e.to_string())?;
    let detail = format!("CR(1000, 8) = {cr}, mean(0.4, 0.6) = {}", avg.f1);
    if cr == 0.992 && avg.f1 == 0.5 && avg.cr == 0.5 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

const CATEGORIES: [&str; 8] = [
    "bad-magic",
    "version",
    "truncated-header",
    "empty-dimension",
    "oversized",
    "truncated-payload",
    "trailing-data",
    "non-finite",
];

fn mutate(rng: &mut ChaCha8Rng, bytes: &mut Vec<u8>) {
    match rng.random_range(0..4) {
        0 => {
            let at = rng.random_range(0..13.min(bytes.len()).max(1));
            if let Some(b) = bytes.get_mut(at) {
                *b ^= 1 << rng.random_range(0..8);
            }
        }
        1 => {
            let at = rng.random_range(0..13.min(bytes.len()).max(1));
            if let Some(b) = bytes.get_mut(at) {
                *b = rng.random();
            }
        }
        2 => {
            let keep = rng.random_range(0..bytes.len().max(1));
            bytes.truncate(keep);
        }
        _ => {
            for _ in 0..rng.random_range(1..=8) {
                bytes.push(rng.random());
            }
        }
    }
}

fn interchange_robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let rows: Vec<Vec<f32>> = (0..6)
        .map(|_| (0..5).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let original = FeatureMatrix::from_rows(&rows)
        .map_err(|e| e.to_string())?
        .encode();
    let mut counts = std::collections::BTreeMap::new();
    let mut accepted = 0;
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut verdict = Ok(());
    for trial in 0..1000 {
        let mut bytes = original.clone();
        for _ in 0..rng.random_range(1..=3) {
            mutate(&mut rng, &mut bytes);
        }
        match panic::catch_unwind(AssertUnwindSafe(|| decode_features(&bytes))) {
            Err(_) => {
                verdict = Err(format!("mutation {trial} panicked on {bytes:02x?}"));
                break;
            }
            Ok(Err(e)) => {
                if !CATEGORIES.contains(&e.category()) {
                    verdict = Err(format!("mutation {trial}: uncategorized error {e}"));
                    break;
                }
                *counts.entry(e.category()).or_insert(0) += 1;
            }
            // A decode is only legitimate when the bytes are a faithful
            // encoding of what was decoded.
            Ok(Ok(m)) => {
                if m.encode() != bytes {
                    verdict = Err(format!("mutation {trial} silently accepted {bytes:02x?}"));
                    break;
                }
                accepted += 1;
            }
        }
    }
    panic::set_hook(hook);
    verdict?;
    let summary: Vec<String> = counts.iter().map(|(c, n)| format!("{c} {n}")).collect();
    Ok(format!(
        "1000 mutations: {}, valid re-encodings {accepted}",
        summary.join(", ")
    ))
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("greedy seeding monotonicity", greedy_monotonicity),
        ("SSE oracle equivalence", sse_oracle),
        ("silhouette oracle equivalence", silhouette_oracle),
        ("model selection on planted blobs", model_selection),
        ("redundancy post-condition", redundancy_postcondition),
        ("end-to-end synthetic video", end_to_end),
        ("compression ratio arithmetic", cr_arithmetic),
        ("feature header robustness", interchange_robustness),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
