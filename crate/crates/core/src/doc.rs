//! On-disk document formats: the graph/instance document and the coloring
//! document, both versioned JSON designed for cross-language interchange and
//! golden-file diffs.
//!
//! Serialization is byte-deterministic: struct fields serialize in a fixed
//! order, maps are sorted, and nothing carries wall-clock state. Colors in a
//! [`ColoringDocument`] align with the graph document's edge order, which is
//! required to be canonical (`u < v`, strictly increasing pairs) so edge
//! identity is never ambiguous.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::konig::{Bipartition, EdgeColoring, KonigError, Side};
use crate::pipeline::{PipelineOutput, RoundStats};
use crate::witness::{InstanceBundle, Provenance, SeparationWitness, WitnessError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("failed to parse document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}, expected {FORMAT_VERSION}")]
    UnsupportedVersion(u32),
    #[error(
        "edge list is not canonical at position {0}: pairs must have u < v and increase strictly"
    )]
    NonCanonicalEdges(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Konig(#[from] KonigError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error("bipartition has {got} entries for {expected} vertices")]
    BipartitionLen { got: usize, expected: usize },
    #[error("bipartition entry {value} at vertex {vertex} is not 0 or 1")]
    BadSide { vertex: usize, value: u8 },
    #[error("witness block declares s = {declared} but carries {got} parts")]
    WitnessSizeMismatch { declared: usize, got: usize },
    #[error("coloring document has {colors} colors for a graph with {edges} edges")]
    EdgeCountMismatch { colors: usize, edges: usize },
}

/// Witness block as it appears on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBlock {
    pub s: usize,
    pub r: usize,
    pub parts: Vec<Vec<usize>>,
    pub remainder: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub format_version: u32,
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// A graph document decoded and validated into domain values.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub graph: Graph,
    pub bipartition: Option<Bipartition>,
    pub witness: Option<SeparationWitness>,
    pub provenance: Option<Provenance>,
}

impl GraphDocument {
    pub fn from_bundle(bundle: &InstanceBundle) -> Self {
        let sides = bundle
            .bipartition
            .sides()
            .iter()
            .map(|s| match s {
                Side::Left => 0,
                Side::Right => 1,
            })
            .collect();
        GraphDocument {
            format_version: FORMAT_VERSION,
            vertex_count: bundle.graph.vertex_count(),
            edges: bundle.graph.edges().to_vec(),
            bipartition: Some(sides),
            witness: Some(WitnessBlock {
                s: bundle.witness.s(),
                r: bundle.witness.r(),
                parts: bundle
                    .witness
                    .parts()
                    .iter()
                    .map(|p| p.iter().collect())
                    .collect(),
                remainder: bundle.witness.remainder().iter().collect(),
            }),
            provenance: Some(bundle.provenance.clone()),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        let doc: GraphDocument = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(DocError::UnsupportedVersion(doc.format_version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }

    /// Full validation: canonical edges, graph invariants, bipartition
    /// crossing every edge, witness partitioning the vertices.
    pub fn load(&self) -> Result<LoadedInstance, DocError> {
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u >= v || (i > 0 && self.edges[i - 1] >= (u, v)) {
                return Err(DocError::NonCanonicalEdges(i));
            }
        }
        let graph = Graph::new(self.vertex_count, self.edges.iter().copied())?;
        let bipartition = match &self.bipartition {
            None => None,
            Some(raw) => {
                if raw.len() != graph.vertex_count() {
                    return Err(DocError::BipartitionLen {
                        got: raw.len(),
                        expected: graph.vertex_count(),
                    });
                }
                let sides = raw
                    .iter()
                    .enumerate()
                    .map(|(vertex, &value)| match value {
                        0 => Ok(Side::Left),
                        1 => Ok(Side::Right),
                        _ => Err(DocError::BadSide { vertex, value }),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let b = Bipartition::new(sides);
                b.validate(&graph)?;
                Some(b)
            }
        };
        let witness = match &self.witness {
            None => None,
            Some(block) => {
                if block.s != block.parts.len() {
                    return Err(DocError::WitnessSizeMismatch {
                        declared: block.s,
                        got: block.parts.len(),
                    });
                }
                let parts = block
                    .parts
                    .iter()
                    .map(|p| VertexSet::from_members(graph.vertex_count(), p.iter().copied()))
                    .collect::<Result<Vec<_>, _>>()?;
                let remainder =
                    VertexSet::from_members(graph.vertex_count(), block.remainder.iter().copied())?;
                Some(SeparationWitness::new(&graph, block.r, parts, remainder)?)
            }
        };
        Ok(LoadedInstance {
            graph,
            bipartition,
            witness,
            provenance: self.provenance.clone(),
        })
    }
}

/// Run telemetry recorded next to the colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Telemetry {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub non_paper_radius: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    pub delta: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_size: Option<usize>,
    pub colors_used: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rounds: Vec<RoundStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub format_version: u32,
    pub palette_size: usize,
    pub colors: Vec<usize>,
    pub telemetry: Telemetry,
}

impl ColoringDocument {
    pub fn for_pipeline(output: &PipelineOutput) -> Self {
        ColoringDocument {
            format_version: FORMAT_VERSION,
            palette_size: output.coloring.palette_size(),
            colors: output.coloring.colors().to_vec(),
            telemetry: Telemetry {
                mode: "pipeline".to_string(),
                seed: None,
                non_paper_radius: output.stats.non_paper_radius,
                radius: Some(output.stats.radius),
                delta: output.stats.delta,
                witness_size: Some(output.stats.witness_size),
                colors_used: output.stats.colors_used,
                rounds: output.stats.rounds.clone(),
            },
        }
    }

    pub fn for_greedy(g: &Graph, coloring: &EdgeColoring, seed: u64) -> Self {
        ColoringDocument {
            format_version: FORMAT_VERSION,
            palette_size: coloring.palette_size(),
            colors: coloring.colors().to_vec(),
            telemetry: Telemetry {
                mode: "greedy".to_string(),
                seed: Some(seed),
                non_paper_radius: false,
                radius: None,
                delta: g.max_degree(),
                witness_size: None,
                colors_used: coloring.colors_used(),
                rounds: Vec::new(),
            },
        }
    }

    pub fn for_konig(g: &Graph, coloring: &EdgeColoring) -> Self {
        ColoringDocument {
            format_version: FORMAT_VERSION,
            palette_size: coloring.palette_size(),
            colors: coloring.colors().to_vec(),
            telemetry: Telemetry {
                mode: "konig".to_string(),
                seed: None,
                non_paper_radius: false,
                radius: None,
                delta: g.max_degree(),
                witness_size: None,
                colors_used: coloring.colors_used(),
                rounds: Vec::new(),
            },
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        let doc: ColoringDocument = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(DocError::UnsupportedVersion(doc.format_version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }

    /// Rehydrates the coloring against a graph, checking edge-count
    /// alignment and the palette invariant.
    pub fn to_coloring(&self, g: &Graph) -> Result<EdgeColoring, DocError> {
        if self.colors.len() != g.edge_count() {
            return Err(DocError::EdgeCountMismatch {
                colors: self.colors.len(),
                edges: g.edge_count(),
            });
        }
        Ok(EdgeColoring::new(self.colors.clone(), self.palette_size)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::gen_even_cycle;

    #[test]
    fn graph_document_round_trips() {
        let bundle = gen_even_cycle(12, 4, 3).unwrap();
        let doc = GraphDocument::from_bundle(&bundle);
        let text = doc.to_json();
        let parsed = GraphDocument::parse(&text).unwrap();
        assert_eq!(parsed, doc);
        // And serializing again is byte-identical.
        assert_eq!(parsed.to_json(), text);

        let loaded = parsed.load().unwrap();
        assert_eq!(loaded.graph, bundle.graph);
        assert_eq!(loaded.bipartition.unwrap(), bundle.bipartition);
        assert_eq!(loaded.witness.unwrap(), bundle.witness);
    }

    #[test]
    fn load_rejects_non_canonical_edges() {
        let doc = GraphDocument {
            format_version: 1,
            vertex_count: 3,
            edges: vec![(1, 0), (1, 2)],
            bipartition: None,
            witness: None,
            provenance: None,
        };
        assert!(matches!(doc.load(), Err(DocError::NonCanonicalEdges(0))));

        let doc = GraphDocument {
            format_version: 1,
            vertex_count: 3,
            edges: vec![(0, 1), (0, 1)],
            bipartition: None,
            witness: None,
            provenance: None,
        };
        assert!(matches!(doc.load(), Err(DocError::NonCanonicalEdges(1))));
    }

    #[test]
    fn parse_rejects_wrong_version() {
        let bundle = gen_even_cycle(12, 4, 3).unwrap();
        let mut doc = GraphDocument::from_bundle(&bundle);
        doc.format_version = 2;
        let text = doc.to_json();
        assert!(matches!(
            GraphDocument::parse(&text),
            Err(DocError::UnsupportedVersion(2))
        ));
    }

    #[test]
    fn load_rejects_witness_size_mismatch_and_bad_side() {
        let bundle = gen_even_cycle(12, 4, 3).unwrap();
        let mut doc = GraphDocument::from_bundle(&bundle);
        doc.witness.as_mut().unwrap().s = 7;
        assert!(matches!(
            doc.load(),
            Err(DocError::WitnessSizeMismatch {
                declared: 7,
                got: 1
            })
        ));

        let mut doc = GraphDocument::from_bundle(&bundle);
        doc.bipartition.as_mut().unwrap()[3] = 9;
        assert!(matches!(
            doc.load(),
            Err(DocError::BadSide {
                vertex: 3,
                value: 9
            })
        ));
    }

    #[test]
    fn coloring_document_round_trips_and_aligns() {
        let bundle = gen_even_cycle(12, 4, 3).unwrap();
        let out = crate::pipeline::run_pipeline(
            &bundle.graph,
            &bundle.bipartition,
            &bundle.witness,
            Some(3),
        )
        .unwrap();
        let doc = ColoringDocument::for_pipeline(&out);
        let text = doc.to_json();
        let parsed = ColoringDocument::parse(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.to_json(), text);

        let coloring = parsed.to_coloring(&bundle.graph).unwrap();
        assert_eq!(&coloring, &out.coloring);

        let small = Graph::new(2, vec![(0, 1)]).unwrap();
        assert!(matches!(
            parsed.to_coloring(&small),
            Err(DocError::EdgeCountMismatch { .. })
        ));
    }
}
