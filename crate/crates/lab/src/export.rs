use std::fmt::Write;
use std::str::FromStr;

use dhl_core::arcs::ArcGraph;
use dhl_core::kernel::RibbonGraph;
use dhl_core::spheres::SphereGraph;
use serde::Serialize;

use crate::error::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Arc,
    Sphere,
}

impl FromStr for GraphKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arc" => Ok(GraphKind::Arc),
            "sphere" => Ok(GraphKind::Sphere),
            other => Err(LabError::Config(format!("unknown graph kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(LabError::Format(other.to_string())),
        }
    }
}

/// Vertex labels and edges of an enumerated ball, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphDump {
    pub kind: &'static str,
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDump {
    pub fn arcs(g: &ArcGraph) -> Self {
        GraphDump {
            kind: "arc",
            vertices: g.arcs().iter().map(|a| a.to_string()).collect(),
            edges: g.edges().collect(),
        }
    }

    pub fn spheres(g: &SphereGraph) -> Self {
        GraphDump {
            kind: "sphere",
            vertices: g.spheres().iter().map(|s| s.to_string()).collect(),
            edges: g.edges().collect(),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, LabError> {
        let mut out = String::new();
        match format {
            Format::Json => out = serde_json::to_string_pretty(self)?,
            Format::Dot => {
                writeln!(out, "graph {} {{", self.kind).expect("string write");
                for (i, v) in self.vertices.iter().enumerate() {
                    writeln!(out, "  {i} [label=\"{}\"];", v.replace('"', "\\\"")).expect("string write");
                }
                for (i, j) in &self.edges {
                    writeln!(out, "  {i} -- {j};").expect("string write");
                }
                out.push_str("}\n");
            }
            Format::Csv => {
                out.push_str("source,target,source_label,target_label\n");
                for &(i, j) in &self.edges {
                    writeln!(out, "{i},{j},\"{}\",\"{}\"", self.vertices[i], self.vertices[j])
                        .expect("string write");
                }
            }
        }
        Ok(out)
    }
}

/// The arc ball of complexity `bound`, or the sphere ball of radius
/// `bound` with at most `cylinders` cylinders per side.
pub fn export_graph(
    rg: &RibbonGraph,
    kind: GraphKind,
    bound: usize,
    cylinders: usize,
    format: Format,
) -> Result<String, LabError> {
    if bound == 0 {
        return Err(LabError::Config("bound must be at least 1".into()));
    }
    let dump = match kind {
        GraphKind::Arc => GraphDump::arcs(&ArcGraph::build(rg, bound)),
        GraphKind::Sphere => GraphDump::spheres(&SphereGraph::build(rg.rank(), bound, cylinders)),
    };
    dump.render(format)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_arc_ball_of_complexity_one() {
        let rg = RibbonGraph::torus();
        let dump = GraphDump::arcs(&ArcGraph::build(&rg, 1));
        assert!(dump.edges.iter().all(|(i, j)| i != j));
        let csv = dump.render(Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), dump.edges.len() + 1);
    }

    #[test]
    fn sphere_ball_of_radius_one() {
        let dump = GraphDump::spheres(&SphereGraph::build(2, 1, 1));
        assert_eq!(dump.vertices.len(), 2);
        assert_eq!(dump.edges, vec![(0, 1)]);
        assert!(dump.render(Format::Dot).unwrap().contains("0 -- 1;"));
    }

    #[test]
    fn unknown_format_is_rejected() {
        assert!("svg".parse::<Format>().is_err());
    }
}
