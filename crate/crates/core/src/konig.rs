//! Constructive König machinery for finite bipartite graphs: a Δ-edge
//! coloring via alternating-path insertion, a matching covering every
//! maximum-degree vertex, and an exact brute-force chromatic-index oracle
//! used as the independent check.
//!
//! Everything here is deterministic by construction: edges are processed in
//! canonical order and ties always break toward the least color.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Refusal threshold for the brute-force oracle.
pub const ORACLE_EDGE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KonigError {
    #[error("graph is not bipartite; odd cycle: {0:?}")]
    NotBipartite(Vec<usize>),
    #[error("bipartition covers {side_len} vertices but the graph has {vertex_count}")]
    SideLenMismatch {
        side_len: usize,
        vertex_count: usize,
    },
    #[error("edge ({0}, {1}) joins two vertices on the same side")]
    EdgeWithinSide(usize, usize),
    #[error("matching edges ({}, {}) and ({}, {}) share a vertex", .0.0, .0.1, .1.0, .1.1)]
    MatchingClash((usize, usize), (usize, usize)),
    #[error("matching edge ({0}, {1}) is not an edge of the host graph")]
    EdgeNotInGraph(usize, usize),
    #[error("edge {edge} has color {color}, outside palette of size {palette}")]
    ColorOutsidePalette {
        edge: usize,
        color: usize,
        palette: usize,
    },
    #[error("chromatic index oracle accepts at most {limit} edges, got {got}")]
    OracleTooLarge { got: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A two-sided vertex labeling. Whether it actually witnesses bipartiteness
/// of a given graph is checked by [`Bipartition::validate`], never assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    pub fn new(side: Vec<Side>) -> Self {
        Bipartition { side }
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side.is_empty()
    }

    /// Checks that every edge of `g` crosses sides.
    pub fn validate(&self, g: &Graph) -> Result<(), KonigError> {
        if self.side.len() != g.vertex_count() {
            return Err(KonigError::SideLenMismatch {
                side_len: self.side.len(),
                vertex_count: g.vertex_count(),
            });
        }
        for &(u, v) in g.edges() {
            if self.side[u] == self.side[v] {
                return Err(KonigError::EdgeWithinSide(u, v));
            }
        }
        Ok(())
    }

    /// Restriction to a subgraph extracted with an id map (new id -> old id).
    pub fn restricted(&self, map: &[usize]) -> Bipartition {
        Bipartition {
            side: map.iter().map(|&old| self.side[old]).collect(),
        }
    }
}

/// Two-colors the vertices with all edges crossing, or reports an odd cycle
/// witnessing that no such coloring exists. BFS from the smallest unvisited
/// vertex, neighbors in ascending order, roots on the left: deterministic.
pub fn check_bipartite(g: &Graph) -> Result<Bipartition, KonigError> {
    let n = g.vertex_count();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut parent: Vec<usize> = (0..n).collect();
    let mut depth = vec![0usize; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(Side::Left);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let flipped = match side[v].expect("queued vertices are labeled") {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            };
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(flipped);
                        parent[w] = v;
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    }
                    Some(s) if s == side[v].unwrap() => {
                        return Err(KonigError::NotBipartite(odd_cycle(&parent, &depth, v, w)));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Bipartition {
        side: side.into_iter().map(|s| s.expect("all labeled")).collect(),
    })
}

/// Closed odd cycle through the conflicting edge (v, w): walk both endpoints
/// up to their lowest common ancestor in the BFS forest.
fn odd_cycle(parent: &[usize], depth: &[usize], v: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (v, w);
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up_a.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        up_b.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up_a.push(a);
        up_b.push(b);
    }
    // up_a ends at the common ancestor; append the b-side path reversed,
    // omitting the duplicated ancestor. The (v, w) edge closes the cycle.
    up_b.pop();
    up_a.extend(up_b.into_iter().rev());
    up_a.reverse();
    up_a
}

/// Pairwise vertex-disjoint edges of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
    vertex_count: usize,
}

impl Matching {
    /// Validates and canonicalizes: every edge must exist in `g` and no two
    /// edges may share a vertex.
    pub fn new(g: &Graph, edges: Vec<(usize, usize)>) -> Result<Self, KonigError> {
        let mut canon: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        canon.sort_unstable();
        let mut owner: Vec<Option<(usize, usize)>> = vec![None; g.vertex_count()];
        for &(u, v) in &canon {
            if !g.has_edge(u, v) {
                return Err(KonigError::EdgeNotInGraph(u, v));
            }
            for x in [u, v] {
                if let Some(prev) = owner[x] {
                    return Err(KonigError::MatchingClash(prev, (u, v)));
                }
                owner[x] = Some((u, v));
            }
        }
        Ok(Matching {
            edges: canon,
            vertex_count: g.vertex_count(),
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Matching {
            edges: Vec::new(),
            vertex_count,
        }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices covered by some matching edge.
    pub fn covered(&self) -> VertexSet {
        let mut set = VertexSet::new(self.vertex_count);
        for &(u, v) in &self.edges {
            set.insert(u);
            set.insert(v);
        }
        set
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }
}

/// Total assignment of colors `0..palette_size` to the canonical edge list
/// of some graph. Properness is certified by the verification module, not
/// assumed here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<usize>,
    palette_size: usize,
}

impl EdgeColoring {
    pub fn new(colors: Vec<usize>, palette_size: usize) -> Result<Self, KonigError> {
        for (edge, &color) in colors.iter().enumerate() {
            if color >= palette_size {
                return Err(KonigError::ColorOutsidePalette {
                    edge,
                    color,
                    palette: palette_size,
                });
            }
        }
        Ok(EdgeColoring {
            colors,
            palette_size,
        })
    }

    pub fn color(&self, edge: usize) -> usize {
        self.colors[edge]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    /// Number of distinct colors actually appearing.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.palette_size];
        for &c in &self.colors {
            seen[c] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// Edges of one color class.
    pub fn class(&self, color: usize, g: &Graph) -> Vec<(usize, usize)> {
        self.colors
            .iter()
            .zip(g.edges())
            .filter(|&(&c, _)| c == color)
            .map(|(_, &e)| e)
            .collect()
    }
}

/// Proper Δ(g)-edge-coloring of a bipartite graph (König's theorem).
///
/// Edges are inserted in canonical order. For edge (u, v), let `a` be the
/// least color missing at `u` and `b` the least missing at `v`. If `a` is
/// also missing at `v` the edge takes `a`; otherwise the maximal alternating
/// a/b path starting at `v` is flipped (by bipartiteness it cannot reach
/// `u`) and the edge then takes `a`.
pub fn konig_color(g: &Graph, b: &Bipartition) -> Result<EdgeColoring, KonigError> {
    b.validate(g)?;
    let delta = g.max_degree();
    let mut colors: Vec<usize> = vec![usize::MAX; g.edge_count()];
    // slots[v][c] = edge currently colored c at v
    let mut slots: Vec<Vec<Option<usize>>> = (0..g.vertex_count())
        .map(|v| vec![None; if g.degree(v) > 0 { delta } else { 0 }])
        .collect();

    for (eidx, &(u, v)) in g.edges().iter().enumerate() {
        let a = (0..delta)
            .find(|&c| slots[u][c].is_none())
            .expect("an uncolored edge leaves a free color at u");
        if slots[v][a].is_some() {
            let b_col = (0..delta)
                .find(|&c| slots[v][c].is_none())
                .expect("an uncolored edge leaves a free color at v");
            flip_alternating_path(g, &mut colors, &mut slots, v, u, a, b_col);
        }
        colors[eidx] = a;
        slots[u][a] = Some(eidx);
        slots[v][a] = Some(eidx);
        debug_assert!(locally_proper(g, &colors, u) && locally_proper(g, &colors, v));
    }
    debug_assert!((0..g.vertex_count()).all(|x| locally_proper(g, &colors, x)));
    EdgeColoring::new(colors, delta)
}

/// Swaps colors a/b along the maximal alternating path starting at `start`
/// with an a-colored edge. `forbidden` is the endpoint the path provably
/// never reaches.
fn flip_alternating_path(
    g: &Graph,
    colors: &mut [usize],
    slots: &mut [Vec<Option<usize>>],
    start: usize,
    forbidden: usize,
    a: usize,
    b: usize,
) {
    let pair = [a, b];
    let mut path = Vec::new();
    let mut cur = start;
    let mut k = 0;
    while let Some(eidx) = slots[cur][pair[k % 2]] {
        path.push(eidx);
        let (x, y) = g.edges()[eidx];
        cur = if x == cur { y } else { x };
        debug_assert_ne!(cur, forbidden, "alternating path reached the far endpoint");
        k += 1;
    }
    for &eidx in &path {
        let c = colors[eidx];
        let (x, y) = g.edges()[eidx];
        slots[x][c] = None;
        slots[y][c] = None;
    }
    for (step, &eidx) in path.iter().enumerate() {
        let new = pair[(step + 1) % 2];
        colors[eidx] = new;
        let (x, y) = g.edges()[eidx];
        debug_assert!(slots[x][new].is_none() && slots[y][new].is_none());
        slots[x][new] = Some(eidx);
        slots[y][new] = Some(eidx);
    }
}

fn locally_proper(g: &Graph, colors: &[usize], v: usize) -> bool {
    let mut seen = Vec::new();
    for &w in g.neighbors(v) {
        let eidx = g.edge_index(v, w).expect("neighbor edge exists");
        let c = colors[eidx];
        if c == usize::MAX {
            continue;
        }
        if seen.contains(&c) {
            return false;
        }
        seen.push(c);
    }
    true
}

/// A matching covering every vertex of degree Δ(g): color class 0 of the
/// König coloring. A degree-Δ vertex meets all Δ colors, class 0 included.
pub fn matching_covering_max_degree(g: &Graph, b: &Bipartition) -> Result<Matching, KonigError> {
    let coloring = konig_color(g, b)?;
    if g.max_degree() == 0 {
        return Ok(Matching::empty(g.vertex_count()));
    }
    Matching::new(g, coloring.class(0, g))
}

/// Exact chromatic index by backtracking, or `None` if it exceeds
/// `max_colors`. Guarded to [`ORACLE_EDGE_LIMIT`] edges; refuses larger
/// inputs instead of running unbounded. Colors are canonicalized by first
/// use, which prunes the pure relabeling symmetry.
pub fn chromatic_index_oracle(g: &Graph, max_colors: usize) -> Result<Option<usize>, KonigError> {
    let m = g.edge_count();
    if m > ORACLE_EDGE_LIMIT {
        return Err(KonigError::OracleTooLarge {
            got: m,
            limit: ORACLE_EDGE_LIMIT,
        });
    }
    if m == 0 {
        return Ok(Some(0));
    }
    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..i {
            let (a, b) = g.edges()[i];
            let (c, d) = g.edges()[j];
            if a == c || a == d || b == c || b == d {
                conflicts[i].push(j);
                conflicts[j].push(i);
            }
        }
    }
    let mut assigned = vec![usize::MAX; m];
    for k in 1..=max_colors {
        if color_edges(&conflicts, &mut assigned, 0, 0, k) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn color_edges(
    conflicts: &[Vec<usize>],
    assigned: &mut [usize],
    edge: usize,
    used: usize,
    k: usize,
) -> bool {
    if edge == assigned.len() {
        return true;
    }
    let ceiling = k.min(used + 1);
    for c in 0..ceiling {
        if conflicts[edge].iter().any(|&other| assigned[other] == c) {
            continue;
        }
        assigned[edge] = c;
        if color_edges(conflicts, assigned, edge + 1, used.max(c + 1), k) {
            return true;
        }
        assigned[edge] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    fn assert_proper(g: &Graph, c: &EdgeColoring) {
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            for (j, &(x, y)) in g.edges().iter().enumerate().skip(i + 1) {
                if a == x || a == y || b == x || b == y {
                    assert_ne!(c.color(i), c.color(j), "edges {i} and {j} clash");
                }
            }
        }
    }

    #[test]
    fn check_bipartite_single_edge() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let b = check_bipartite(&g).unwrap();
        assert_ne!(b.side(0), b.side(1));
    }

    #[test]
    fn check_bipartite_even_cycle_alternates() {
        let g = cycle(6);
        let b = check_bipartite(&g).unwrap();
        for &(u, v) in g.edges() {
            assert_ne!(b.side(u), b.side(v));
        }
        assert!(b.validate(&g).is_ok());
    }

    #[test]
    fn check_bipartite_triangle_reports_odd_cycle() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let Err(KonigError::NotBipartite(cycle)) = check_bipartite(&g) else {
            panic!("triangle accepted as bipartite");
        };
        assert_eq!(cycle.len(), 3);
        let mut sorted = cycle.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn odd_cycle_witness_is_a_real_odd_cycle() {
        // Odd cycle away from the BFS root, forcing a nontrivial LCA walk.
        let g = Graph::new(
            7,
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 2)],
        )
        .unwrap();
        let Err(KonigError::NotBipartite(cyc)) = check_bipartite(&g) else {
            panic!("graph with 5-cycle accepted");
        };
        assert!(cyc.len() % 2 == 1 && cyc.len() >= 3);
        for i in 0..cyc.len() {
            let u = cyc[i];
            let v = cyc[(i + 1) % cyc.len()];
            assert!(g.has_edge(u, v), "cycle step ({u}, {v}) missing");
        }
        let mut dedup = cyc.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), cyc.len(), "cycle repeats a vertex");
    }

    #[test]
    fn konig_single_edge() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let c = konig_color(&g, &check_bipartite(&g).unwrap()).unwrap();
        assert_eq!(c.palette_size(), 1);
        assert_eq!(c.colors(), &[0]);
    }

    #[test]
    fn konig_star_uses_three_colors() {
        let g = star(3);
        let c = konig_color(&g, &check_bipartite(&g).unwrap()).unwrap();
        assert_eq!(c.palette_size(), 3);
        let mut cs = c.colors().to_vec();
        cs.sort_unstable();
        assert_eq!(cs, vec![0, 1, 2]);
    }

    #[test]
    fn konig_six_cycle_two_colors_matches_oracle() {
        let g = cycle(6);
        let c = konig_color(&g, &check_bipartite(&g).unwrap()).unwrap();
        assert_eq!(c.palette_size(), 2);
        assert_proper(&g, &c);
        assert_eq!(chromatic_index_oracle(&g, 8).unwrap(), Some(2));
    }

    #[test]
    fn konig_is_deterministic() {
        let g = Graph::new(
            8,
            vec![
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 6),
                (2, 5),
                (2, 7),
                (3, 6),
                (3, 7),
            ],
        )
        .unwrap();
        let b = check_bipartite(&g).unwrap();
        assert_eq!(konig_color(&g, &b).unwrap(), konig_color(&g, &b).unwrap());
    }

    #[test]
    fn konig_rejects_broken_bipartition() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let bad = Bipartition::new(vec![Side::Left, Side::Left, Side::Right]);
        assert_eq!(konig_color(&g, &bad), Err(KonigError::EdgeWithinSide(0, 1)));
    }

    #[test]
    fn matching_covers_max_degree_on_path() {
        let g = path(4);
        let m = matching_covering_max_degree(&g, &check_bipartite(&g).unwrap()).unwrap();
        // Vertices 1 and 2 have degree 2 = Delta and must be covered.
        assert!(m.covers(1) && m.covers(2));
    }

    #[test]
    fn matching_on_empty_graph_is_empty() {
        let g = Graph::new(3, Vec::new()).unwrap();
        let m = matching_covering_max_degree(&g, &check_bipartite(&g).unwrap()).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn matching_on_four_cycle_is_perfect() {
        let g = cycle(4);
        let m = matching_covering_max_degree(&g, &check_bipartite(&g).unwrap()).unwrap();
        assert_eq!(m.len(), 2);
        // The two perfect matchings of C4, enumerated by hand.
        let opposite_pairs = m.edges() == [(0, 1), (2, 3)] || m.edges() == [(0, 3), (1, 2)];
        assert!(opposite_pairs, "got {:?}", m.edges());
    }

    #[test]
    fn matching_validation_catches_clashes_and_foreign_edges() {
        let g = path(3);
        assert_eq!(
            Matching::new(&g, vec![(0, 1), (1, 2)]),
            Err(KonigError::MatchingClash((0, 1), (1, 2)))
        );
        assert_eq!(
            Matching::new(&g, vec![(0, 2)]),
            Err(KonigError::EdgeNotInGraph(0, 2))
        );
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(chromatic_index_oracle(&cycle(6), 8).unwrap(), Some(2));
        assert_eq!(chromatic_index_oracle(&star(3), 8).unwrap(), Some(3));
        assert_eq!(chromatic_index_oracle(&path(4), 8).unwrap(), Some(2));
        // Odd cycle needs 3.
        assert_eq!(chromatic_index_oracle(&cycle(5), 8).unwrap(), Some(3));
    }

    #[test]
    fn oracle_respects_max_colors_and_guard() {
        assert_eq!(chromatic_index_oracle(&star(4), 3).unwrap(), None);
        let big = star(ORACLE_EDGE_LIMIT + 1);
        assert_eq!(
            chromatic_index_oracle(&big, 30),
            Err(KonigError::OracleTooLarge {
                got: ORACLE_EDGE_LIMIT + 1,
                limit: ORACLE_EDGE_LIMIT
            })
        );
    }

    #[test]
    fn coloring_rejects_out_of_palette() {
        assert!(matches!(
            EdgeColoring::new(vec![0, 2], 2),
            Err(KonigError::ColorOutsidePalette { edge: 1, .. })
        ));
    }
}
