//! End-to-end run: prices → returns → correlations → noise floor → MST and
//! asset graphs → centralities → PCoA map, plus a JSON manifest.
//!
//! Every artifact is named `<kind>_<param>.<ext>` inside the output directory
//! and listed in `manifest.json`. Outputs depend only on the input files and
//! the [`PipelineConfig`].

mod config;

pub use config::{
    parse_fit_range, parse_thresholds, PartialConfig, PipelineConfig, ANALYSIS_THRESHOLD,
    DEFAULT_SHUFFLES, DEFAULT_THRESHOLDS,
};

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::centrality::{
    ccdf, degree_distribution, degree_vs_kshell, CentralityOptions, CentralityReport, PowerLawFit,
};
use crate::correl::{
    distance_from_correlation, estimate_noise_threshold, spearman_correlation, write_matrix_csv,
    NoiseThreshold,
};
use crate::embed::pcoa_embedding;
use crate::error::StageExt;
use crate::netgraph::{
    build_mst, export_network, threshold_sweep, AssetNetwork, ExportFormat, NetworkKind,
};
use crate::panel::{compute_log_returns, load_metadata, load_prices, AssetMeta};
use crate::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";
const TOP_N: usize = 4;
const EMBEDDING_DIMS: usize = 3;
/// Above this threshold the manifest warns that noise dominates.
const NOISE_WARNING_THRESHOLD: f64 = 0.7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopNode {
    pub id: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureSummary {
    pub top: Vec<TopNode>,
    pub power_law: Option<PowerLawFit<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub label: String,
    pub kind: String,
    pub threshold: Option<f64>,
    pub nodes: usize,
    pub edges: usize,
    pub random_edges: usize,
    pub isolated_nodes: usize,
    pub components: usize,
    pub total_distance: f64,
    pub max_kshell: usize,
    pub eigenvalue: Option<f64>,
    pub eigenvector_converged: Option<bool>,
    pub degree: MeasureSummary,
    pub strength: MeasureSummary,
    pub eigenvector: MeasureSummary,
    pub betweenness: MeasureSummary,
    pub inv_closeness: MeasureSummary,
    pub kshell: MeasureSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingSummary {
    pub eigenvalues: Vec<f64>,
    pub negative_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub config: PipelineConfig,
    pub n_assets: usize,
    pub n_returns: usize,
    pub noise_threshold: NoiseThreshold<f64>,
    /// Label of the graph used for single-threshold centrality tables.
    pub analysis_graph: Option<String>,
    pub graphs: Vec<GraphSummary>,
    pub embedding: EmbeddingSummary,
    pub files: Vec<String>,
    pub warnings: Vec<String>,
}

struct Outputs<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Outputs<'_> {
    fn write(&mut self, name: String, contents: &str) -> Result<()> {
        let path = self.dir.join(&name);
        fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        self.files.push(name);
        Ok(())
    }

    fn register(&mut self, name: String) -> std::path::PathBuf {
        let path = self.dir.join(&name);
        self.files.push(name);
        path
    }
}

fn top_nodes(ids: &[String], values: &[f64]) -> Vec<TopNode> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    idx.into_iter()
        .take(TOP_N)
        .map(|i| TopNode {
            id: ids[i].clone(),
            value: values[i],
        })
        .collect()
}

fn analyze_graph(
    net: &AssetNetwork<f64>,
    config: &PipelineConfig,
    out: &mut Outputs,
    warnings: &mut Vec<String>,
) -> Result<GraphSummary> {
    let label = net.kind().label();
    let options = CentralityOptions {
        closeness: config.closeness,
        ..CentralityOptions::default()
    };
    let report = CentralityReport::compute(net, &options)?;

    for format in ExportFormat::ALL {
        let path = out.register(format!("network_{label}.{}", format.extension()));
        export_network(net, format, path)?;
    }
    out.write(format!("centrality_{label}.csv"), &report.to_csv()?)?;
    for width in [1, 10] {
        let table = degree_distribution(&report.degree, width)?;
        out.write(
            format!("degreedist_{label}-bin{width}.csv"),
            &table.to_csv(),
        )?;
    }
    let mut pairs = String::from("kshell,degree\n");
    for (k, d) in degree_vs_kshell(net) {
        pairs.push_str(&format!("{k},{d}\n"));
    }
    out.write(format!("degkshell_{label}.csv"), &pairs)?;

    if let Some(ev) = &report.eigenvector {
        if !ev.converged {
            warnings.push(format!(
                "{label}: eigenvector power iteration stopped after {} iterations with residual {:e}",
                ev.iterations, ev.residual
            ));
        }
    }

    let ids = &report.tickers;
    let as_f64 = |v: &[usize]| v.iter().map(|&x| x as f64).collect::<Vec<f64>>();
    let columns: [(&str, Option<Vec<f64>>); 6] = [
        ("degree", Some(as_f64(&report.degree))),
        ("strength", Some(report.strength.clone())),
        (
            "eigenvector",
            report.eigenvector.as_ref().map(|ev| ev.values.clone()),
        ),
        ("betweenness", Some(report.betweenness.clone())),
        ("invcloseness", Some(report.inv_closeness())),
        ("kshell", Some(as_f64(&report.kshell))),
    ];
    let mut summaries = Vec::with_capacity(columns.len());
    for (name, values) in columns {
        let Some(values) = values else {
            summaries.push(MeasureSummary {
                top: Vec::new(),
                power_law: None,
            });
            continue;
        };
        let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
        let power_law = if name == "kshell" {
            None
        } else {
            let series = match ccdf(&finite, Some(config.fit_range)) {
                Ok(s) => s,
                Err(e) => {
                    warnings.push(format!("{label}: no power-law fit for {name}: {e}"));
                    ccdf(&finite, None)?
                }
            };
            out.write(format!("ccdf_{label}-{name}.tsv"), &series.to_tsv())?;
            series.fit
        };
        summaries.push(MeasureSummary {
            top: top_nodes(ids, &values),
            power_law,
        });
    }
    let [degree, strength, eigenvector, betweenness, inv_closeness, kshell]: [MeasureSummary; 6] =
        summaries.try_into().expect("six measures");

    let (kind, threshold) = match net.kind() {
        NetworkKind::Mst => ("mst", None),
        NetworkKind::AssetGraph { threshold } => ("asset-graph", Some(threshold)),
        NetworkKind::Custom => ("custom", None),
    };
    Ok(GraphSummary {
        label,
        kind: kind.into(),
        threshold,
        nodes: net.n_nodes(),
        edges: net.n_edges(),
        random_edges: net.edges().iter().filter(|e| e.random).count(),
        isolated_nodes: report.degree.iter().filter(|&&d| d == 0).count(),
        components: net.component_count(),
        total_distance: net.total_distance(),
        max_kshell: report.kshell.iter().copied().max().unwrap_or(0),
        eigenvalue: report.eigenvector.as_ref().map(|ev| ev.eigenvalue),
        eigenvector_converged: report.eigenvector.as_ref().map(|ev| ev.converged),
        degree,
        strength,
        eigenvector,
        betweenness,
        inv_closeness,
        kshell,
    })
}

/// Runs every stage and writes all artifacts plus `manifest.json` under
/// `config.out`. Errors carry the label of the failing stage.
pub fn run_pipeline(config: &PipelineConfig) -> Result<RunManifest> {
    config.validate().stage("config")?;
    let dir = config.out.as_path();
    fs::create_dir_all(dir)
        .map_err(|e| Error::io(dir, e))
        .stage("output directory")?;

    let prices = load_prices::<f64>(&config.prices).stage("load prices")?;
    let meta: Vec<AssetMeta> = match &config.meta {
        Some(path) => load_metadata(path).stage("load metadata")?,
        None => Vec::new(),
    };
    let returns = compute_log_returns(&prices).stage("log returns")?;
    let corr = spearman_correlation(&returns).stage("spearman correlation")?;
    let dist = distance_from_correlation(&corr);
    let noise = estimate_noise_threshold(&returns, config.shuffles, config.seed)
        .stage("noise threshold")?;

    let mut out = Outputs {
        dir,
        files: Vec::new(),
    };
    let mut warnings = Vec::new();

    let missing = prices
        .tickers()
        .iter()
        .filter(|t| crate::panel::find_meta(&meta, t).is_none())
        .count();
    if config.meta.is_some() && missing > 0 {
        warnings.push(format!(
            "{missing} tickers have no metadata; sector set to unknown"
        ));
    }
    for &t in &config.thresholds {
        if t > NOISE_WARNING_THRESHOLD {
            warnings.push(format!(
                "threshold {t} is above {NOISE_WARNING_THRESHOLD}; beyond about 0.8 random noise starts to take over"
            ));
        }
    }

    let export = |r: Result<()>| r.stage("export");
    export(write_matrix_csv(
        corr.tickers(),
        corr.values(),
        out.register("matrix_correlation.csv".into()),
    ))?;
    export(write_matrix_csv(
        dist.tickers(),
        dist.values(),
        out.register("matrix_distance.csv".into()),
    ))?;

    let mst = build_mst(&dist, &meta, Some(&noise)).stage("minimum spanning tree")?;
    let graphs = threshold_sweep(&dist, &meta, &config.thresholds).stage("asset graphs")?;

    let mut summaries = Vec::with_capacity(graphs.len() + 1);
    for net in std::iter::once(&mst).chain(&graphs) {
        summaries.push(analyze_graph(net, config, &mut out, &mut warnings).stage("centrality")?);
    }

    let embedding = pcoa_embedding(&dist, EMBEDDING_DIMS).stage("embedding")?;
    warnings.extend(embedding.warnings.iter().map(|w| format!("embedding: {w}")));
    let csv = embedding.to_csv(&meta).stage("embedding")?;
    export(out.write(format!("embedding_pcoa{EMBEDDING_DIMS}.csv"), &csv))?;

    let analysis_graph = config.thresholds.contains(&ANALYSIS_THRESHOLD).then(|| {
        NetworkKind::AssetGraph {
            threshold: ANALYSIS_THRESHOLD,
        }
        .label()
    });

    let mut files = out.files;
    files.push(MANIFEST_FILE.into());
    files.sort();
    let manifest = RunManifest {
        config: config.clone(),
        n_assets: returns.n_assets(),
        n_returns: returns.n_observations(),
        noise_threshold: noise,
        analysis_graph,
        graphs: summaries,
        embedding: EmbeddingSummary {
            eigenvalues: embedding.eigenvalues.clone(),
            negative_mass: embedding.negative_mass,
        },
        files,
        warnings,
    };
    let path = dir.join(MANIFEST_FILE);
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    fs::write(&path, text)
        .map_err(|e| Error::io(&path, e))
        .stage("manifest")?;
    Ok(manifest)
}
