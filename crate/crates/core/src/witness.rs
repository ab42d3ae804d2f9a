//! Separation witnesses and planted-witness instance families.
//!
//! A witness of size `s` splits the vertices into parts U_0..U_{s-1} plus a
//! remainder so that each piece falls apart into small components inside the
//! r-power graph. On finite graphs "component finite" is vacuous, so the
//! witness carries the measured maximum component size instead of assuming
//! anything.
//!
//! Witnesses here are never searched for (that would be a different, much
//! harder problem): the generators plant periodic arcs, slabs, and rung
//! blocks whose separation is provable by inspection and checked by
//! [`validate_witness`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet, power_graph, restrict};
use crate::konig::{Bipartition, Side};
use crate::rng::{SplitMix64, shuffle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness pieces overlap at vertex {0}")]
    Overlap(usize),
    #[error("vertex {0} is not covered by any part or the remainder")]
    Uncovered(usize),
    #[error("witness radius must be at least 1")]
    ZeroRadius,
    #[error(
        "witness piece over universe {piece_universe} used with a graph on {vertex_count} vertices"
    )]
    UniverseMismatch {
        piece_universe: usize,
        vertex_count: usize,
    },
    #[error("invalid generator parameter: {0}")]
    Parameter(String),
}

/// Finite stand-in for an asymptotic-separation-index witness: a partition
/// (U_0, ..., U_{s-1}, V) with radius `r` and the measured component bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    r: usize,
    parts: Vec<VertexSet>,
    remainder: VertexSet,
    component_bound: usize,
}

impl SeparationWitness {
    /// Validates the partition against `g`, measures the maximum component
    /// size over all `G^{<=r}` restrictions, and stores it as the bound.
    pub fn new(
        g: &Graph,
        r: usize,
        parts: Vec<VertexSet>,
        remainder: VertexSet,
    ) -> Result<Self, WitnessError> {
        if r == 0 {
            return Err(WitnessError::ZeroRadius);
        }
        let n = g.vertex_count();
        for piece in parts.iter().chain(std::iter::once(&remainder)) {
            if piece.universe() != n {
                return Err(WitnessError::UniverseMismatch {
                    piece_universe: piece.universe(),
                    vertex_count: n,
                });
            }
        }
        let mut count = vec![0u8; n];
        for piece in parts.iter().chain(std::iter::once(&remainder)) {
            for v in piece.iter() {
                count[v] = count[v].saturating_add(1);
            }
        }
        if let Some(v) = count.iter().position(|&c| c > 1) {
            return Err(WitnessError::Overlap(v));
        }
        if let Some(v) = count.iter().position(|&c| c == 0) {
            return Err(WitnessError::Uncovered(v));
        }
        let component_bound = measure_bound(g, r, &parts, &remainder);
        Ok(SeparationWitness {
            r,
            parts,
            remainder,
            component_bound,
        })
    }

    /// Witness size `s`.
    pub fn s(&self) -> usize {
        self.parts.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn remainder(&self) -> &VertexSet {
        &self.remainder
    }

    /// Largest component observed across all `G^{<=r}` restrictions when the
    /// witness was built.
    pub fn component_bound(&self) -> usize {
        self.component_bound
    }
}

fn measure_bound(g: &Graph, r: usize, parts: &[VertexSet], remainder: &VertexSet) -> usize {
    let power = power_graph(g, r).expect("radius checked positive");
    parts
        .iter()
        .chain(std::iter::once(remainder))
        .map(|piece| {
            restrict(&power, piece)
                .expect("piece universe checked")
                .max_component_size()
        })
        .max()
        .unwrap_or(0)
}

/// Everything [`validate_witness`] measures. `valid` covers the partition
/// property and the declared bound; the component sizes are always reported
/// since they, not "finiteness", are the meaningful quantity at this scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub valid: bool,
    pub universe_ok: bool,
    pub overlapping: Vec<usize>,
    pub uncovered: Vec<usize>,
    pub part_max_components: Vec<usize>,
    pub remainder_max_component: usize,
    pub measured_bound: usize,
    pub declared_bound: usize,
}

/// Re-derives every witness property from scratch: partition check with
/// offending vertices listed, plus a fresh component-size measurement of all
/// `G^{<=r}` restrictions.
pub fn validate_witness(g: &Graph, w: &SeparationWitness) -> WitnessReport {
    let n = g.vertex_count();
    let universe_ok = w
        .parts
        .iter()
        .chain(std::iter::once(&w.remainder))
        .all(|piece| piece.universe() == n);
    if !universe_ok {
        return WitnessReport {
            valid: false,
            universe_ok,
            overlapping: Vec::new(),
            uncovered: Vec::new(),
            part_max_components: Vec::new(),
            remainder_max_component: 0,
            measured_bound: 0,
            declared_bound: w.component_bound,
        };
    }
    let mut count = vec![0u32; n];
    for piece in w.parts.iter().chain(std::iter::once(&w.remainder)) {
        for v in piece.iter() {
            count[v] += 1;
        }
    }
    let overlapping: Vec<usize> = (0..n).filter(|&v| count[v] > 1).collect();
    let uncovered: Vec<usize> = (0..n).filter(|&v| count[v] == 0).collect();

    let power = power_graph(g, w.r).expect("witness radius is positive");
    let part_max_components: Vec<usize> = w
        .parts
        .iter()
        .map(|u| {
            restrict(&power, u)
                .expect("universe checked")
                .max_component_size()
        })
        .collect();
    let remainder_max_component = restrict(&power, &w.remainder)
        .expect("universe checked")
        .max_component_size();
    let measured_bound = part_max_components
        .iter()
        .copied()
        .chain(std::iter::once(remainder_max_component))
        .max()
        .unwrap_or(0);
    WitnessReport {
        valid: overlapping.is_empty()
            && uncovered.is_empty()
            && measured_bound <= w.component_bound,
        universe_ok,
        overlapping,
        uncovered,
        part_max_components,
        remainder_max_component,
        measured_bound,
        declared_bound: w.component_bound,
    }
}

/// The s = 0 witness: everything in the remainder. The pipeline on this
/// witness reduces to plain König with Δ colors.
pub fn trivial_witness(g: &Graph, r: usize) -> Result<SeparationWitness, WitnessError> {
    SeparationWitness::new(g, r, Vec::new(), VertexSet::full(g.vertex_count()))
}

/// Where an instance came from: generator name, parameters, seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub seed: Option<u64>,
}

impl Provenance {
    fn new(generator: &str, params: &[(&str, u64)], seed: Option<u64>) -> Self {
        Provenance {
            generator: generator.to_string(),
            params: params
                .iter()
                .map(|&(k, v)| (k.to_string(), serde_json::Value::from(v)))
                .collect(),
            seed,
        }
    }
}

/// A graph bundled with everything the pipeline needs: a bipartition, a
/// separation witness, and the provenance to regenerate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceBundle {
    pub graph: Graph,
    pub bipartition: Bipartition,
    pub witness: SeparationWitness,
    pub provenance: Provenance,
}

/// Even cycle C_{2*n_half} with an s = 1 witness: U_0 is every other arc of
/// `arc_length` consecutive vertices. Arcs stay separated in the r-power
/// graph because the gaps (also `arc_length` long) exceed `r`.
pub fn gen_even_cycle(
    n_half: usize,
    arc_length: usize,
    r: usize,
) -> Result<InstanceBundle, WitnessError> {
    if r == 0 {
        return Err(WitnessError::Parameter("r must be at least 1".into()));
    }
    if n_half < 2 {
        return Err(WitnessError::Parameter(
            "n_half must be at least 2 (a 2-cycle collapses to a parallel edge)".into(),
        ));
    }
    if arc_length == 0 {
        return Err(WitnessError::Parameter(
            "arc_length must be positive".into(),
        ));
    }
    if arc_length <= r {
        return Err(WitnessError::Parameter(format!(
            "arc_length ({arc_length}) must exceed the separation radius ({r})"
        )));
    }
    let n = 2 * n_half;
    if n % (2 * arc_length) != 0 {
        return Err(WitnessError::Parameter(format!(
            "cycle length {n} must be divisible by 2*arc_length ({})",
            2 * arc_length
        )));
    }
    let graph = Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple");
    let mut u0 = VertexSet::new(n);
    for block in 0..n / (2 * arc_length) {
        for off in 0..arc_length {
            u0.insert(block * 2 * arc_length + off);
        }
    }
    let remainder = u0.complement();
    let witness = SeparationWitness::new(&graph, r, vec![u0], remainder)?;
    let bipartition = parity_bipartition(n, |v| v);
    Ok(InstanceBundle {
        graph,
        bipartition,
        witness,
        provenance: Provenance::new(
            "even-cycle",
            &[
                ("n_half", n_half as u64),
                ("arc_length", arc_length as u64),
                ("r", r as u64),
            ],
            None,
        ),
    })
}

/// 4-regular torus grid (both dimensions even, so bipartite) with an s = 1
/// witness of alternating vertical slabs `slab_thickness` columns wide.
/// Vertex ids are row-major: `id = y * width + x`.
pub fn gen_even_torus(
    width: usize,
    height: usize,
    slab_thickness: usize,
    r: usize,
) -> Result<InstanceBundle, WitnessError> {
    if r == 0 {
        return Err(WitnessError::Parameter("r must be at least 1".into()));
    }
    if width % 2 != 0 || height % 2 != 0 {
        return Err(WitnessError::Parameter(
            "torus dimensions must be even to stay bipartite".into(),
        ));
    }
    if width < 4 || height < 4 {
        return Err(WitnessError::Parameter(
            "torus dimensions below 4 create parallel edges".into(),
        ));
    }
    if slab_thickness == 0 {
        return Err(WitnessError::Parameter(
            "slab_thickness must be positive".into(),
        ));
    }
    if slab_thickness <= r {
        return Err(WitnessError::Parameter(format!(
            "slab gap ({slab_thickness}) must exceed the separation radius ({r})"
        )));
    }
    if width % (2 * slab_thickness) != 0 {
        return Err(WitnessError::Parameter(format!(
            "width ({width}) must be divisible by 2*slab_thickness ({})",
            2 * slab_thickness
        )));
    }
    let n = width * height;
    let id = |x: usize, y: usize| y * width + x;
    let mut edges = Vec::with_capacity(2 * n);
    for y in 0..height {
        for x in 0..width {
            edges.push((id(x, y), id((x + 1) % width, y)));
            edges.push((id(x, y), id(x, (y + 1) % height)));
        }
    }
    let graph = Graph::new(n, edges).expect("torus with even dims >= 4 is simple");
    let mut u0 = VertexSet::new(n);
    for x in 0..width {
        if (x / slab_thickness) % 2 == 0 {
            for y in 0..height {
                u0.insert(id(x, y));
            }
        }
    }
    let remainder = u0.complement();
    let witness = SeparationWitness::new(&graph, r, vec![u0], remainder)?;
    let bipartition = parity_bipartition(n, |v| (v % width) + (v / width));
    Ok(InstanceBundle {
        graph,
        bipartition,
        witness,
        provenance: Provenance::new(
            "even-torus",
            &[
                ("width", width as u64),
                ("height", height as u64),
                ("slab_thickness", slab_thickness as u64),
                ("r", r as u64),
            ],
            None,
        ),
    })
}

/// Which columns of a ladder carry rungs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RungPattern {
    /// A rung in every column.
    Full,
    /// Rungs in even columns only.
    Alternating,
}

impl RungPattern {
    pub fn as_str(self) -> &'static str {
        match self {
            RungPattern::Full => "full",
            RungPattern::Alternating => "alternating",
        }
    }
}

/// Finite window of a two-ended graph: a ladder (path x edge) of the given
/// length. The s = 1 witness takes rung-block columns of width r+1 with
/// equally wide gaps. Vertex ids: column i, row j -> `2*i + j`.
pub fn gen_two_ended_ladder(
    length: usize,
    rung_pattern: RungPattern,
    r: usize,
) -> Result<InstanceBundle, WitnessError> {
    if r == 0 {
        return Err(WitnessError::Parameter("r must be at least 1".into()));
    }
    if length <= 4 * r {
        return Err(WitnessError::Parameter(format!(
            "ladder length ({length}) must exceed 4r ({})",
            4 * r
        )));
    }
    let n = 2 * length;
    let mut edges = Vec::new();
    for i in 0..length {
        let rung = match rung_pattern {
            RungPattern::Full => true,
            RungPattern::Alternating => i % 2 == 0,
        };
        if rung {
            edges.push((2 * i, 2 * i + 1));
        }
        if i + 1 < length {
            edges.push((2 * i, 2 * (i + 1)));
            edges.push((2 * i + 1, 2 * (i + 1) + 1));
        }
    }
    let graph = Graph::new(n, edges).expect("ladder is simple");
    let block = r + 1;
    let mut u0 = VertexSet::new(n);
    for i in 0..length {
        if (i / block) % 2 == 0 {
            u0.insert(2 * i);
            u0.insert(2 * i + 1);
        }
    }
    let remainder = u0.complement();
    let witness = SeparationWitness::new(&graph, r, vec![u0], remainder)?;
    let bipartition = parity_bipartition(n, |v| (v / 2) + (v % 2));
    Ok(InstanceBundle {
        graph,
        bipartition,
        witness,
        provenance: Provenance {
            generator: "ladder".to_string(),
            params: [
                ("length".to_string(), serde_json::Value::from(length as u64)),
                (
                    "rung_pattern".to_string(),
                    serde_json::Value::from(rung_pattern.as_str()),
                ),
                ("r".to_string(), serde_json::Value::from(r as u64)),
            ]
            .into_iter()
            .collect(),
            seed: None,
        },
    })
}

/// Random bipartite graph with degrees capped at `max_degree`, built by
/// seeded shuffled edge insertion (splitmix64), bundled with the trivial
/// s = 0 witness. Degenerate parameters just give small or empty graphs.
pub fn gen_random_bipartite(
    n_left: usize,
    n_right: usize,
    max_degree: usize,
    seed: u64,
) -> InstanceBundle {
    let n = n_left + n_right;
    let mut candidates: Vec<(usize, usize)> = Vec::with_capacity(n_left * n_right);
    for l in 0..n_left {
        for r in 0..n_right {
            candidates.push((l, n_left + r));
        }
    }
    shuffle(&mut candidates, &mut SplitMix64::new(seed));
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for (u, v) in candidates {
        if degree[u] < max_degree && degree[v] < max_degree {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    let graph = Graph::new(n, edges).expect("distinct cross pairs are simple");
    let delta = graph.max_degree();
    let r = if delta >= 1 { 10 * delta + 1 } else { 1 };
    let witness = trivial_witness(&graph, r).expect("trivial witness is always valid");
    let side = (0..n)
        .map(|v| if v < n_left { Side::Left } else { Side::Right })
        .collect();
    InstanceBundle {
        graph,
        bipartition: Bipartition::new(side),
        witness,
        provenance: Provenance::new(
            "random-bipartite",
            &[
                ("n_left", n_left as u64),
                ("n_right", n_right as u64),
                ("max_degree", max_degree as u64),
            ],
            Some(seed),
        ),
    }
}

fn parity_bipartition(n: usize, class: impl Fn(usize) -> usize) -> Bipartition {
    Bipartition::new(
        (0..n)
            .map(|v| {
                if class(v) % 2 == 0 {
                    Side::Left
                } else {
                    Side::Right
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::konig::check_bipartite;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn set(universe: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_members(universe, members.iter().copied()).unwrap()
    }

    #[test]
    fn trivial_witness_is_valid_and_size_zero() {
        let g = cycle(6);
        let w = trivial_witness(&g, 2).unwrap();
        assert_eq!(w.s(), 0);
        assert!(w.parts().is_empty());
        let report = validate_witness(&g, &w);
        assert!(report.valid);
        // Whole 6-cycle is one component of its own 2-power graph.
        assert_eq!(report.remainder_max_component, 6);
    }

    #[test]
    fn validate_twelve_cycle_split() {
        let g = cycle(12);
        let u0 = set(12, &[0, 1, 2, 3]);
        let w =
            SeparationWitness::new(&g, 2, vec![u0], set(12, &(4..12).collect::<Vec<_>>())).unwrap();
        let report = validate_witness(&g, &w);
        assert!(report.valid);
        assert_eq!(report.part_max_components, vec![4]);
        assert_eq!(report.remainder_max_component, 8);
        assert_eq!(report.measured_bound, 8);
        assert_eq!(w.component_bound(), 8);
    }

    #[test]
    fn overlapping_parts_are_rejected_with_the_vertex() {
        let g = cycle(4);
        let res =
            SeparationWitness::new(&g, 1, vec![set(4, &[0]), set(4, &[0])], set(4, &[1, 2, 3]));
        assert_eq!(res, Err(WitnessError::Overlap(0)));
    }

    #[test]
    fn uncovered_vertex_is_rejected() {
        let g = cycle(4);
        let res = SeparationWitness::new(&g, 1, vec![set(4, &[0])], set(4, &[1, 2]));
        assert_eq!(res, Err(WitnessError::Uncovered(3)));
    }

    #[test]
    fn even_cycle_generator_matches_spec_example() {
        let bundle = gen_even_cycle(12, 4, 3).unwrap();
        assert_eq!(bundle.graph.vertex_count(), 24);
        let u0: Vec<usize> = bundle.witness.parts()[0].iter().collect();
        assert_eq!(u0, vec![0, 1, 2, 3, 8, 9, 10, 11, 16, 17, 18, 19]);
        let report = validate_witness(&bundle.graph, &bundle.witness);
        assert!(report.valid);
        assert_eq!(report.part_max_components, vec![4]);
        assert_eq!(report.remainder_max_component, 4);
        assert!(bundle.bipartition.validate(&bundle.graph).is_ok());
    }

    #[test]
    fn even_cycle_generator_rejects_bad_parameters() {
        assert!(matches!(
            gen_even_cycle(2, 1, 0),
            Err(WitnessError::Parameter(msg)) if msg.contains("r must be at least 1")
        ));
        assert!(matches!(
            gen_even_cycle(12, 3, 3),
            Err(WitnessError::Parameter(_))
        ));
        // 24 not divisible by 2*5
        assert!(matches!(
            gen_even_cycle(12, 5, 3),
            Err(WitnessError::Parameter(_))
        ));
    }

    #[test]
    fn planted_arc_components_count_matches_plan() {
        let bundle = gen_even_cycle(12, 4, 3).unwrap();
        let power = power_graph(&bundle.graph, 3).unwrap();
        let decomp = restrict(&power, &bundle.witness.parts()[0]).unwrap();
        assert_eq!(decomp.component_count(), 3); // three planted arcs
        assert_eq!(decomp.max_component_size(), 4);
    }

    #[test]
    fn doubling_cycle_size_keeps_component_sizes() {
        let small = gen_even_cycle(12, 4, 3).unwrap();
        let large = gen_even_cycle(24, 4, 3).unwrap();
        let rs = validate_witness(&small.graph, &small.witness);
        let rl = validate_witness(&large.graph, &large.witness);
        assert_eq!(rs.part_max_components, rl.part_max_components);
        assert_eq!(rs.remainder_max_component, rl.remainder_max_component);
    }

    #[test]
    fn torus_generator_valid_instance() {
        let bundle = gen_even_torus(8, 4, 2, 1).unwrap();
        assert_eq!(bundle.graph.vertex_count(), 32);
        assert_eq!(bundle.graph.max_degree(), 4);
        assert!(bundle.bipartition.validate(&bundle.graph).is_ok());
        let report = validate_witness(&bundle.graph, &bundle.witness);
        assert!(report.valid);
        // slab_thickness * height, reported not hidden
        assert_eq!(report.part_max_components, vec![8]);
        let power = power_graph(&bundle.graph, 1).unwrap();
        let decomp = restrict(&power, &bundle.witness.parts()[0]).unwrap();
        assert_eq!(decomp.component_count(), 2); // two planted slabs
    }

    #[test]
    fn torus_generator_rejects_bad_parameters() {
        assert!(matches!(
            gen_even_torus(2, 2, 1, 1),
            Err(WitnessError::Parameter(_))
        ));
        // gap == r violates separation
        assert!(matches!(
            gen_even_torus(4, 4, 1, 1),
            Err(WitnessError::Parameter(_))
        ));
        assert!(matches!(
            gen_even_torus(7, 4, 2, 1),
            Err(WitnessError::Parameter(_))
        ));
        // width not divisible by 2*slab_thickness
        assert!(matches!(
            gen_even_torus(10, 4, 3, 1),
            Err(WitnessError::Parameter(_))
        ));
    }

    #[test]
    fn ladder_generator_examples() {
        let bundle = gen_two_ended_ladder(40, RungPattern::Full, 3).unwrap();
        assert_eq!(bundle.graph.vertex_count(), 80);
        assert_eq!(bundle.graph.max_degree(), 3);
        assert!(bundle.bipartition.validate(&bundle.graph).is_ok());
        assert!(check_bipartite(&bundle.graph).is_ok());
        assert!(validate_witness(&bundle.graph, &bundle.witness).valid);

        assert!(matches!(
            gen_two_ended_ladder(12, RungPattern::Full, 3),
            Err(WitnessError::Parameter(_))
        ));

        let alt = gen_two_ended_ladder(21, RungPattern::Alternating, 2).unwrap();
        assert!(alt.bipartition.validate(&alt.graph).is_ok());
        assert!(validate_witness(&alt.graph, &alt.witness).valid);
    }

    #[test]
    fn random_bipartite_caps_degree_and_is_deterministic() {
        let a = gen_random_bipartite(20, 20, 4, 7);
        let b = gen_random_bipartite(20, 20, 4, 7);
        assert_eq!(a.graph, b.graph);
        assert!(a.graph.max_degree() <= 4);
        assert!(a.bipartition.validate(&a.graph).is_ok());
        assert_eq!(a.witness.s(), 0);
        assert!(validate_witness(&a.graph, &a.witness).valid);
        assert_eq!(a.provenance.seed, Some(7));

        let c = gen_random_bipartite(20, 20, 4, 8);
        assert_ne!(a.graph, c.graph);
    }

    #[test]
    fn random_bipartite_degenerate_parameters() {
        let tiny = gen_random_bipartite(1, 1, 1, 0);
        assert_eq!(tiny.graph.edge_count(), 1);
        let empty = gen_random_bipartite(0, 5, 2, 0);
        assert_eq!(empty.graph.edge_count(), 0);
        assert!(validate_witness(&empty.graph, &empty.witness).valid);
    }
}
