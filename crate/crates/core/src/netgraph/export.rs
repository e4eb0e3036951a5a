use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{AssetNetwork, Edge, NetworkKind, Node};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    GraphMl,
    Json,
    EdgeCsv,
}

impl ExportFormat {
    pub const ALL: [ExportFormat; 4] = [Self::Dot, Self::GraphMl, Self::Json, Self::EdgeCsv];

    pub fn extension(self) -> &'static str {
        match self {
            Self::Dot => "dot",
            Self::GraphMl => "graphml",
            Self::Json => "json",
            Self::EdgeCsv => "csv",
        }
    }
}

// Categorical palette, cycled when there are more sectors than colors.
const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];

/// Sector → color, in order of first appearance among the nodes.
fn sector_colors(nodes: &[Node]) -> Vec<(&str, &'static str)> {
    let mut out: Vec<(&str, &'static str)> = Vec::new();
    for node in nodes {
        if !out.iter().any(|(s, _)| *s == node.sector) {
            let color = PALETTE[out.len() % PALETTE.len()];
            out.push((&node.sector, color));
        }
    }
    out
}

pub fn render_network<T: Scalar>(net: &AssetNetwork<T>, format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Dot => Ok(render_dot(net)),
        ExportFormat::GraphMl => Ok(render_graphml(net)),
        ExportFormat::Json => Ok(serde_json::to_string_pretty(&JsonNetwork::from(net))? + "\n"),
        ExportFormat::EdgeCsv => render_edge_csv(net),
    }
}

pub fn export_network<T: Scalar>(
    net: &AssetNetwork<T>,
    format: ExportFormat,
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    let text = render_network(net, format)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render_dot<T: Scalar>(net: &AssetNetwork<T>) -> String {
    let colors = sector_colors(net.nodes());
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", net.kind().label());
    out.push_str("  node [style=filled];\n");
    for node in net.nodes() {
        let color = colors
            .iter()
            .find(|(s, _)| *s == node.sector)
            .map_or(PALETTE[0], |c| c.1);
        let _ = writeln!(
            out,
            "  \"{}\" [sector=\"{}\", fillcolor=\"{color}\"];",
            dot_escape(&node.id),
            dot_escape(&node.sector)
        );
    }
    for e in net.edges() {
        let style = if e.random { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [distance={}, correlation={}{style}];",
            dot_escape(&net.nodes()[e.source].id),
            dot_escape(&net.nodes()[e.target].id),
            e.distance,
            e.correlation
        );
    }
    out.push_str("}\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

fn render_graphml<T: Scalar>(net: &AssetNetwork<T>) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("  <key id=\"sector\" for=\"node\" attr.name=\"sector\" attr.type=\"string\"/>\n");
    out.push_str(
        "  <key id=\"company\" for=\"node\" attr.name=\"company\" attr.type=\"string\"/>\n",
    );
    out.push_str(
        "  <key id=\"distance\" for=\"edge\" attr.name=\"distance\" attr.type=\"double\"/>\n",
    );
    out.push_str(
        "  <key id=\"correlation\" for=\"edge\" attr.name=\"correlation\" attr.type=\"double\"/>\n",
    );
    out.push_str(
        "  <key id=\"random\" for=\"edge\" attr.name=\"random\" attr.type=\"boolean\"/>\n",
    );
    let _ = writeln!(
        out,
        "  <graph id=\"{}\" edgedefault=\"undirected\">",
        xml_escape(&net.kind().label())
    );
    for node in net.nodes() {
        let _ = writeln!(out, "    <node id=\"{}\">", xml_escape(&node.id));
        let _ = writeln!(
            out,
            "      <data key=\"sector\">{}</data>",
            xml_escape(&node.sector)
        );
        if let Some(company) = &node.company {
            let _ = writeln!(
                out,
                "      <data key=\"company\">{}</data>",
                xml_escape(company)
            );
        }
        out.push_str("    </node>\n");
    }
    for e in net.edges() {
        let _ = writeln!(
            out,
            "    <edge source=\"{}\" target=\"{}\">",
            xml_escape(&net.nodes()[e.source].id),
            xml_escape(&net.nodes()[e.target].id)
        );
        let _ = writeln!(out, "      <data key=\"distance\">{}</data>", e.distance);
        let _ = writeln!(
            out,
            "      <data key=\"correlation\">{}</data>",
            e.correlation
        );
        let _ = writeln!(out, "      <data key=\"random\">{}</data>", e.random);
        out.push_str("    </edge>\n");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn render_edge_csv<T: Scalar>(net: &AssetNetwork<T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["source", "target", "distance", "correlation", "random_flag"])?;
    for e in net.edges() {
        w.write_record([
            net.nodes()[e.source].id.clone(),
            net.nodes()[e.target].id.clone(),
            e.distance.to_string(),
            e.correlation.to_string(),
            e.random.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonNode {
    id: String,
    sector: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    company: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct JsonEdge<T> {
    source: String,
    target: String,
    distance: T,
    correlation: T,
    random: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct JsonNetwork<T> {
    kind: String,
    threshold: Option<T>,
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge<T>>,
}

impl<T: Scalar> From<&AssetNetwork<T>> for JsonNetwork<T> {
    fn from(net: &AssetNetwork<T>) -> Self {
        let (kind, threshold) = match net.kind() {
            NetworkKind::Mst => ("mst", None),
            NetworkKind::AssetGraph { threshold } => ("asset-graph", Some(threshold)),
            NetworkKind::Custom => ("custom", None),
        };
        Self {
            kind: kind.into(),
            threshold,
            nodes: net
                .nodes()
                .iter()
                .map(|v| JsonNode {
                    id: v.id.clone(),
                    sector: v.sector.clone(),
                    company: v.company.clone(),
                })
                .collect(),
            edges: net
                .edges()
                .iter()
                .map(|e| JsonEdge {
                    source: net.nodes()[e.source].id.clone(),
                    target: net.nodes()[e.target].id.clone(),
                    distance: e.distance,
                    correlation: e.correlation,
                    random: e.random,
                })
                .collect(),
        }
    }
}

/// Parses the JSON export back into a validated network.
pub fn read_network_json<T: Scalar, R: Read>(reader: R) -> Result<AssetNetwork<T>> {
    let raw: JsonNetwork<T> = serde_json::from_reader(reader)?;
    let kind = match (raw.kind.as_str(), raw.threshold) {
        ("mst", _) => NetworkKind::Mst,
        ("asset-graph", Some(threshold)) => NetworkKind::AssetGraph { threshold },
        ("custom", _) => NetworkKind::Custom,
        (other, _) => return Err(Error::invalid(format!("unknown network kind {other:?}"))),
    };
    let nodes: Vec<Node> = raw
        .nodes
        .into_iter()
        .map(|v| Node {
            id: v.id,
            sector: v.sector,
            company: v.company,
        })
        .collect();
    let index = |id: &str| {
        nodes
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::invalid(format!("edge endpoint {id:?} is not a node")))
    };
    let edges = raw
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (index(&e.source)?, index(&e.target)?);
            Ok(Edge {
                source: a.min(b),
                target: a.max(b),
                distance: e.distance,
                correlation: e.correlation,
                random: e.random,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    AssetNetwork::new(nodes, edges, kind)
}
