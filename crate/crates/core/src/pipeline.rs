//! The matching-removal pipeline: build barrier shells from a separation
//! witness, peel off matchings round by round until the residual is empty,
//! and merge the leftovers into a (Δ + s)-edge-coloring.
//!
//! Round `i` works on the residual `G_i` (max degree ≤ Δ - i). The barrier
//! row `S_i^0..S_i^{s-1}` cuts the graph into small pieces: a matching `M_i`
//! is chosen per component of `G_i` restricted away from the barriers, and a
//! matching `N_i^j` per component of `G_i` restricted to the 2-ball of each
//! `S_i^j`. Together they cover every vertex of degree Δ - i, so removing
//! them drops the maximum degree by one. Shells of the same part sit at
//! pairwise distance ≥ 5, which keeps their 2-balls disjoint and lets all
//! `N_i^j` with the same `j` merge into a single color class.
//!
//! Everything is deterministic: components are processed in order of their
//! smallest vertex and each is colored by the canonical König routine. The
//! finite stand-in for a "Borel" selection is exactly this canonicality.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet, ball, restrict, shell};
use crate::konig::{Bipartition, EdgeColoring, KonigError, Matching, konig_color};
use crate::rng::{SplitMix64, shuffle};
use crate::witness::{SeparationWitness, WitnessError, validate_witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Konig(#[from] KonigError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error("the default radius 10*delta+1 needs delta >= 1")]
    ZeroDelta,
    #[error("witness does not validate against the graph: {0}")]
    InvalidWitness(String),
    #[error(
        "paper-faithful mode requires witness radius {required} = 10*delta+1, got {got}; \
         pass a radius override to accept a different radius"
    )]
    RadiusMismatch { got: usize, required: usize },
    #[error("radius override {expected} does not match the witness radius {got}")]
    OverrideMismatch { got: usize, expected: usize },
    #[error("graph has max degree {got}, above the round target {target}")]
    TargetExceeded { target: usize, got: usize },
    #[error(
        "internal invariant failure: vertex {vertex} of degree {degree} uncovered in round {round}"
    )]
    UncoveredVertex {
        round: usize,
        vertex: usize,
        degree: usize,
    },
    #[error(
        "internal invariant failure: residual max degree {got} exceeds {bound} after round {round}"
    )]
    DegreeDecayViolation {
        round: usize,
        got: usize,
        bound: usize,
    },
    #[error(
        "internal invariant failure: residual still has {edges} edges after all {rounds} rounds"
    )]
    ResidualNotEmpty { edges: usize, rounds: usize },
    #[error("internal invariant failure: merged class N_{class} is not a matching: {source}")]
    MergedNotMatching { class: usize, source: KonigError },
    #[error("internal invariant failure: edge {edge} left uncolored")]
    UncoloredEdge { edge: usize },
}

impl PipelineError {
    /// True for failures that indicate a bug in the construction itself
    /// (the theorem rules them out), as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            PipelineError::UncoveredVertex { .. }
                | PipelineError::DegreeDecayViolation { .. }
                | PipelineError::ResidualNotEmpty { .. }
                | PipelineError::MergedNotMatching { .. }
                | PipelineError::UncoloredEdge { .. }
        )
    }
}

/// The radius the construction is proved for: 10Δ + 1.
pub fn default_radius(delta: usize) -> Result<usize, PipelineError> {
    if delta == 0 {
        return Err(PipelineError::ZeroDelta);
    }
    Ok(10 * delta + 1)
}

/// Barrier shells S_i^j = E(U_j, 5i) for i < Δ, j < s, plus the row unions
/// S_i. Same-part shells sit at distance ≥ 5 by the triangle inequality;
/// [`validate_barriers`] confirms it by measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarrierFamily {
    vertex_count: usize,
    sets: Vec<Vec<VertexSet>>,
    unions: Vec<VertexSet>,
}

impl BarrierFamily {
    /// Assembles a family from explicit shell sets (row-major: `sets[i][j]`),
    /// computing the row unions. No properties are checked here; this exists
    /// so validators can be pointed at hand-built, possibly broken, families.
    pub fn from_sets(vertex_count: usize, sets: Vec<Vec<VertexSet>>) -> Self {
        let unions = sets
            .iter()
            .map(|row| {
                row.iter()
                    .fold(VertexSet::new(vertex_count), |acc, s| acc.union(s))
            })
            .collect();
        BarrierFamily {
            vertex_count,
            sets,
            unions,
        }
    }

    pub fn delta(&self) -> usize {
        self.sets.len()
    }

    pub fn s(&self) -> usize {
        self.sets.first().map_or(0, Vec::len)
    }

    pub fn set(&self, i: usize, j: usize) -> &VertexSet {
        &self.sets[i][j]
    }

    pub fn row(&self, i: usize) -> &[VertexSet] {
        &self.sets[i]
    }

    /// S_i, the union of row `i`.
    pub fn row_union(&self, i: usize) -> &VertexSet {
        &self.unions[i]
    }
}

/// Builds the barrier family for `delta` rounds: `sets[i][j] = E(U_j, 5i)`.
/// Lemma-level properties are *not* verified here; see [`validate_barriers`].
pub fn build_barriers(
    g: &Graph,
    w: &SeparationWitness,
    delta: usize,
) -> Result<BarrierFamily, PipelineError> {
    let mut sets = Vec::with_capacity(delta);
    for i in 0..delta {
        let row = w
            .parts()
            .iter()
            .map(|u| shell(g, u, 5 * i))
            .collect::<Result<Vec<_>, _>>()?;
        sets.push(row);
    }
    Ok(BarrierFamily::from_sets(g.vertex_count(), sets))
}

/// One measured spacing failure: same-part shells closer than 5.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpacingViolation {
    pub part: usize,
    pub row_a: usize,
    pub row_b: usize,
    pub distance: usize,
}

/// Measured barrier-family properties. `valid` reflects the distance
/// requirement; component sizes of all restrictions are reported alongside
/// as the finite reading of "component finite".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarrierReport {
    pub valid: bool,
    pub spacing_violations: Vec<SpacingViolation>,
    /// Overlapping 2-ball pairs `(part, row_a, row_b)`; empty whenever the
    /// spacing holds.
    pub ball2_overlaps: Vec<(usize, usize, usize)>,
    /// max component size of `G` restricted to `ball(S_i^j, 2)`, row-major.
    pub ball2_max_components: Vec<Vec<usize>>,
    /// max component size of `G` restricted to the complement of S_i.
    pub complement_max_components: Vec<usize>,
}

/// Measures shell spacing (pairwise BFS distance ≥ 5 within each part),
/// 2-ball disjointness, and component sizes of every restriction the
/// inductive step will color. Violations land in the report, not in errors.
pub fn validate_barriers(g: &Graph, bf: &BarrierFamily) -> Result<BarrierReport, GraphError> {
    let delta = bf.delta();
    let s = bf.s();
    let mut spacing_violations = Vec::new();
    let mut ball2_overlaps = Vec::new();
    let mut ball2 = vec![Vec::with_capacity(s); delta];
    for i in 0..delta {
        for j in 0..s {
            ball2[i].push(ball(g, bf.set(i, j), 2)?);
        }
    }
    for j in 0..s {
        for a in 0..delta {
            if bf.set(a, j).is_empty() {
                continue;
            }
            let dist = crate::graph::bfs_distances(g, bf.set(a, j))?;
            for b in a + 1..delta {
                if let Some(d) = bf.set(b, j).iter().filter_map(|v| dist[v]).min() {
                    if d < 5 {
                        spacing_violations.push(SpacingViolation {
                            part: j,
                            row_a: a,
                            row_b: b,
                            distance: d,
                        });
                    }
                }
                if !ball2[a][j].is_disjoint(&ball2[b][j]) {
                    ball2_overlaps.push((j, a, b));
                }
            }
        }
    }
    let mut ball2_max_components = Vec::with_capacity(delta);
    let mut complement_max_components = Vec::with_capacity(delta);
    for i in 0..delta {
        let per_j = ball2[i]
            .iter()
            .map(|b2| Ok(restrict(g, b2)?.max_component_size()))
            .collect::<Result<Vec<_>, GraphError>>()?;
        ball2_max_components.push(per_j);
        let complement = bf.row_union(i).complement();
        complement_max_components.push(restrict(g, &complement)?.max_component_size());
    }
    Ok(BarrierReport {
        valid: spacing_violations.is_empty(),
        spacing_violations,
        ball2_overlaps,
        ball2_max_components,
        complement_max_components,
    })
}

/// Raw output of one inductive step, before the pipeline deduplicates edges
/// that landed in several matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepMatchings {
    pub m: Matching,
    pub n: Vec<Matching>,
}

/// One step of the degree-reduction induction. Per component of `g_i`
/// restricted away from the barrier union, the canonical König matching
/// that covers the component's maximum-degree vertices becomes part of `M`;
/// the same per component of `g_i` restricted to each `ball(S^j, 2)` becomes
/// `N^j`. Every vertex of degree `target_degree` in `g_i` is covered by
/// `M ∪ ⋃_j N^j`: a vertex within distance 1 of some `S^j` keeps its full
/// degree inside the 2-ball, any other vertex keeps it in the complement.
pub fn inductive_step(
    g_i: &Graph,
    b: &Bipartition,
    barrier_row: &[VertexSet],
    target_degree: usize,
) -> Result<StepMatchings, PipelineError> {
    if g_i.max_degree() > target_degree {
        return Err(PipelineError::TargetExceeded {
            target: target_degree,
            got: g_i.max_degree(),
        });
    }
    b.validate(g_i)?;
    let mut union = VertexSet::new(g_i.vertex_count());
    for s_j in barrier_row {
        union = union.union(s_j);
    }
    let m = class_zero_union(g_i, b, &union.complement())?;
    let mut n = Vec::with_capacity(barrier_row.len());
    for s_j in barrier_row {
        let two_ball = ball(g_i, s_j, 2)?;
        n.push(class_zero_union(g_i, b, &two_ball)?);
    }
    Ok(StepMatchings { m, n })
}

/// Union over components of `g ↾ keep` of color class 0 of each component's
/// canonical König coloring. Class 0 covers every vertex achieving its
/// component's maximum degree. Components are vertex-disjoint, so the union
/// is a matching.
fn class_zero_union(
    g: &Graph,
    b: &Bipartition,
    keep: &VertexSet,
) -> Result<Matching, PipelineError> {
    let mut edges = Vec::new();
    for (sub, map) in g.induced_components(keep)? {
        if sub.edge_count() == 0 {
            continue;
        }
        let sub_b = b.restricted(&map);
        let coloring = konig_color(&sub, &sub_b)?;
        for (idx, &(x, y)) in sub.edges().iter().enumerate() {
            if coloring.color(idx) == 0 {
                edges.push((map[x], map[y]));
            }
        }
    }
    Ok(Matching::new(g, edges)?)
}

/// Everything round `i` produced: the (deduplicated) matchings and the
/// residual G_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundResult {
    pub round: usize,
    pub m: Matching,
    pub n: Vec<Matching>,
    pub residual: Graph,
}

/// Per-round telemetry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundStats {
    pub round: usize,
    pub target_degree: usize,
    pub m_edges: usize,
    pub n_edges: Vec<usize>,
    /// Vertices of target degree whose responsible piece (least j with the
    /// vertex inside `ball(S_i^j, 1)`, else the complement) was each N^j.
    pub covered_by_n: Vec<usize>,
    /// Vertices of target degree attributed to M.
    pub covered_by_m: usize,
    pub complement_max_component: usize,
    pub ball2_max_components: Vec<usize>,
    pub residual_edges: usize,
    pub residual_max_degree: usize,
}

/// Run-level telemetry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub delta: usize,
    pub witness_size: usize,
    pub radius: usize,
    pub non_paper_radius: bool,
    pub palette_size: usize,
    pub colors_used: usize,
    pub max_witness_component: usize,
    pub rounds: Vec<RoundStats>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutput {
    pub coloring: EdgeColoring,
    pub rounds: Vec<RoundResult>,
    pub stats: PipelineStats,
}

/// The full construction. Colors `0..Δ-1` are the `M_i`; colors `Δ..Δ+s-1`
/// are the merged classes `N_j = ⋃_i N_i^j`.
///
/// Without a radius override the run is paper-faithful and the witness
/// radius must equal `10Δ + 1`; with an override the witness radius must
/// equal the override and the output is flagged as using a non-paper radius.
///
/// An edge claimed by several matchings in a round is assigned to `M_i`
/// first, then to the lowest `j`; coverage is by the union, which
/// deduplication does not change.
pub fn run_pipeline(
    g: &Graph,
    b: &Bipartition,
    w: &SeparationWitness,
    radius_override: Option<usize>,
) -> Result<PipelineOutput, PipelineError> {
    b.validate(g)?;
    let report = validate_witness(g, w);
    if !report.valid {
        return Err(PipelineError::InvalidWitness(format!(
            "universe_ok={}, {} overlapping, {} uncovered, measured bound {} vs declared {}",
            report.universe_ok,
            report.overlapping.len(),
            report.uncovered.len(),
            report.measured_bound,
            report.declared_bound,
        )));
    }
    let delta = g.max_degree();
    let s = w.s();

    if g.edge_count() == 0 {
        return Ok(PipelineOutput {
            coloring: EdgeColoring::new(Vec::new(), 0)?,
            rounds: Vec::new(),
            stats: PipelineStats {
                delta: 0,
                witness_size: s,
                radius: w.r(),
                non_paper_radius: false,
                palette_size: 0,
                colors_used: 0,
                max_witness_component: report.measured_bound,
                rounds: Vec::new(),
            },
        });
    }

    let required = default_radius(delta)?;
    let non_paper_radius = match radius_override {
        None => {
            if w.r() != required {
                return Err(PipelineError::RadiusMismatch {
                    got: w.r(),
                    required,
                });
            }
            false
        }
        Some(expected) => {
            if w.r() != expected {
                return Err(PipelineError::OverrideMismatch {
                    got: w.r(),
                    expected,
                });
            }
            expected != required
        }
    };

    let barriers = build_barriers(g, w, delta)?;
    let mut residual = g.clone();
    let mut colors: Vec<Option<usize>> = vec![None; g.edge_count()];
    let mut rounds: Vec<RoundResult> = Vec::with_capacity(delta);
    let mut round_stats: Vec<RoundStats> = Vec::with_capacity(delta);

    for i in 0..delta {
        let target = delta - i;
        if residual.max_degree() > target {
            return Err(PipelineError::TargetExceeded {
                target,
                got: residual.max_degree(),
            });
        }
        let row = barriers.row(i);
        let step = inductive_step(&residual, b, row, target)?;

        // Dedupe: M_i keeps everything; each N_i^j keeps only edges not
        // already claimed by M_i or a lower j.
        let m_edges = step.m.edges().to_vec();
        let mut taken: BTreeSet<(usize, usize)> = m_edges.iter().copied().collect();
        let mut n_classes: Vec<Vec<(usize, usize)>> = Vec::with_capacity(s);
        for class in &step.n {
            let kept: Vec<(usize, usize)> = class
                .edges()
                .iter()
                .copied()
                .filter(|&e| taken.insert(e))
                .collect();
            n_classes.push(kept);
        }

        // Coverage audit, exactly as the inductive lemma argues it: a target
        // vertex inside some ball(S_i^j, 1) is owed to that N^j, everything
        // else to M. The hard requirement is coverage by the union.
        let ball1: Vec<VertexSet> = row
            .iter()
            .map(|s_j| ball(&residual, s_j, 1))
            .collect::<Result<Vec<_>, _>>()?;
        let mut covered_by_n = vec![0usize; s];
        let mut covered_by_m = 0usize;
        let covered_union = {
            let mut set = step.m.covered();
            for class in &step.n {
                set = set.union(&class.covered());
            }
            set
        };
        for v in 0..residual.vertex_count() {
            if residual.degree(v) != target {
                continue;
            }
            if !covered_union.contains(v) {
                return Err(PipelineError::UncoveredVertex {
                    round: i,
                    vertex: v,
                    degree: target,
                });
            }
            match (0..s).find(|&j| ball1[j].contains(v)) {
                Some(j) => {
                    debug_assert!(step.n[j].covers(v), "lemma attribution violated");
                    covered_by_n[j] += 1;
                }
                None => {
                    debug_assert!(step.m.covers(v), "lemma attribution violated");
                    covered_by_m += 1;
                }
            }
        }

        // Assign colors and remove the round's edges from the residual.
        let mut removed = m_edges.clone();
        for (u, v) in m_edges.iter().copied() {
            let idx = g.edge_index(u, v).expect("matching edge is in g");
            debug_assert!(colors[idx].is_none());
            colors[idx] = Some(i);
        }
        for (j, class) in n_classes.iter().enumerate() {
            for &(u, v) in class {
                let idx = g.edge_index(u, v).expect("matching edge is in g");
                debug_assert!(colors[idx].is_none());
                colors[idx] = Some(delta + j);
            }
            removed.extend_from_slice(class);
        }
        let next = residual.without_edges(&removed);
        if next.max_degree() + 1 > target {
            return Err(PipelineError::DegreeDecayViolation {
                round: i,
                got: next.max_degree(),
                bound: target - 1,
            });
        }

        let complement = barriers.row_union(i).complement();
        let complement_max_component = restrict(&residual, &complement)?.max_component_size();
        let mut ball2_max_components = Vec::with_capacity(s);
        for s_j in row {
            let b2 = ball(&residual, s_j, 2)?;
            ball2_max_components.push(restrict(&residual, &b2)?.max_component_size());
        }
        round_stats.push(RoundStats {
            round: i,
            target_degree: target,
            m_edges: m_edges.len(),
            n_edges: n_classes.iter().map(Vec::len).collect(),
            covered_by_n,
            covered_by_m,
            complement_max_component,
            ball2_max_components,
            residual_edges: next.edge_count(),
            residual_max_degree: next.max_degree(),
        });
        let n_matchings = n_classes
            .into_iter()
            .map(|kept| Matching::new(&residual, kept))
            .collect::<Result<Vec<_>, _>>()?;
        rounds.push(RoundResult {
            round: i,
            m: step.m,
            n: n_matchings,
            residual: next.clone(),
        });
        residual = next;
    }

    if residual.edge_count() != 0 {
        return Err(PipelineError::ResidualNotEmpty {
            edges: residual.edge_count(),
            rounds: delta,
        });
    }
    // Merge safety: for each j the per-round N_i^j live in pairwise disjoint
    // 2-balls, so their union must still be a matching.
    for j in 0..s {
        let merged: Vec<(usize, usize)> = rounds
            .iter()
            .flat_map(|r| r.n[j].edges().iter().copied())
            .collect();
        Matching::new(g, merged)
            .map_err(|source| PipelineError::MergedNotMatching { class: j, source })?;
    }

    let mut final_colors = Vec::with_capacity(colors.len());
    for (edge, c) in colors.into_iter().enumerate() {
        final_colors.push(c.ok_or(PipelineError::UncoloredEdge { edge })?);
    }
    let coloring = EdgeColoring::new(final_colors, delta + s)?;
    let colors_used = coloring.colors_used();
    Ok(PipelineOutput {
        stats: PipelineStats {
            delta,
            witness_size: s,
            radius: w.r(),
            non_paper_radius,
            palette_size: delta + s,
            colors_used,
            max_witness_component: report.measured_bound,
            rounds: round_stats,
        },
        coloring,
        rounds,
    })
}

/// Greedy baseline: edges in seeded shuffled order, least color unused on
/// any adjacent edge. Uses at most 2Δ - 1 colors because an edge meets at
/// most 2Δ - 2 others.
pub fn greedy_baseline(g: &Graph, order_seed: u64) -> EdgeColoring {
    let m = g.edge_count();
    let delta = g.max_degree();
    let cap = if delta == 0 { 0 } else { 2 * delta - 1 };
    let mut order: Vec<usize> = (0..m).collect();
    shuffle(&mut order, &mut SplitMix64::new(order_seed));
    let mut colors = vec![usize::MAX; m];
    let mut used_at: Vec<Vec<bool>> = vec![vec![false; cap]; g.vertex_count()];
    for &eidx in &order {
        let (u, v) = g.edges()[eidx];
        let c = (0..cap)
            .find(|&c| !used_at[u][c] && !used_at[v][c])
            .expect("2*delta-1 colors always leave one free");
        colors[eidx] = c;
        used_at[u][c] = true;
        used_at[v][c] = true;
    }
    let palette = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    EdgeColoring::new(colors, palette).expect("greedy colors sit below the palette")
}
