//! Finite simple undirected graphs plus the distance, power-graph, and
//! component primitives everything else builds on.
//!
//! Vertices are dense ids `0..n`; edges are stored canonically as `(u, v)`
//! with `u < v`, sorted lexicographically. All operations are pure and
//! deterministic: same input, same output, regardless of schedule.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("power graph radius must be at least 1")]
    ZeroRadius,
    #[error("vertex set over universe {set_universe} used with a graph on {vertex_count} vertices")]
    UniverseMismatch {
        set_universe: usize,
        vertex_count: usize,
    },
}

/// Simple undirected graph with canonical edge storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges may arrive in any order and
    /// orientation; they are canonicalized to `u < v` and sorted. Self-loops,
    /// parallel edges, and out-of-range endpoints are rejected.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges: canon,
            adj,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: Vec::new(),
            adj: vec![Vec::new(); vertex_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Position of `(u, v)` in the canonical edge list, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Same vertex set, minus the given edges. Edges not present are ignored.
    pub fn without_edges(&self, remove: &[(usize, usize)]) -> Graph {
        let mut drop = vec![false; self.edges.len()];
        for &(u, v) in remove {
            if let Some(idx) = self.edge_index(u, v) {
                drop[idx] = true;
            }
        }
        let kept = self
            .edges
            .iter()
            .zip(&drop)
            .filter(|&(_, &d)| !d)
            .map(|(&e, _)| e);
        Graph::new(self.vertex_count, kept).expect("subset of a valid edge list is valid")
    }

    /// Induced subgraph on `keep`, together with the map from new ids back to
    /// original ids (ascending, so canonical order is preserved).
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_universe(keep)?;
        let map: Vec<usize> = keep.iter().collect();
        let mut new_id = vec![usize::MAX; self.vertex_count];
        for (idx, &v) in map.iter().enumerate() {
            new_id[v] = idx;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (new_id[u], new_id[v]));
        let sub = Graph::new(map.len(), edges).expect("induced edges stay valid");
        Ok((sub, map))
    }

    /// Connected components of the induced subgraph on `keep`, each extracted
    /// as its own graph with an id map back to the host. Components are
    /// ordered by their smallest original vertex.
    pub fn induced_components(
        &self,
        keep: &VertexSet,
    ) -> Result<Vec<(Graph, Vec<usize>)>, GraphError> {
        let decomp = restrict(self, keep)?;
        let count = decomp.component_count();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for v in keep.iter() {
            members[decomp.component_of(v).expect("kept vertex has a component")].push(v);
        }
        let mut out = Vec::with_capacity(count);
        for group in members {
            let set = VertexSet::from_members(self.vertex_count, group.iter().copied())
                .expect("members are in range");
            out.push(self.induced_subgraph(&set)?);
        }
        Ok(out)
    }

    fn check_universe(&self, set: &VertexSet) -> Result<(), GraphError> {
        if set.universe() != self.vertex_count {
            return Err(GraphError::UniverseMismatch {
                set_universe: set.universe(),
                vertex_count: self.vertex_count,
            });
        }
        Ok(())
    }
}

/// Dense bitset over the vertex ids of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = VertexSet::new(universe);
        for v in 0..universe {
            set.insert(v);
        }
        set
    }

    pub fn from_members(
        universe: usize,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        let mut set = VertexSet::new(universe);
        for v in members {
            if v >= universe {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    vertex_count: universe,
                });
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// Inserts `v`; returns true if it was newly added. Panics if out of range.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        let mut words: Vec<u64> = self.words.iter().map(|&w| !w).collect();
        if let Some(last) = words.last_mut() {
            let used = self.universe % 64;
            if used != 0 {
                *last &= (1u64 << used) - 1;
            }
        }
        VertexSet {
            universe: self.universe,
            len: self.universe - self.len,
            words,
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet {
            universe: self.universe,
            words,
            len,
        }
    }
}

/// Connected components of a restricted subgraph. Vertices outside the
/// restriction have no component id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    component_id: Vec<Option<usize>>,
    component_sizes: Vec<usize>,
    max_component_size: usize,
}

impl ComponentDecomposition {
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.component_id[v]
    }

    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn component_sizes(&self) -> &[usize] {
        &self.component_sizes
    }

    pub fn max_component_size(&self) -> usize {
        self.max_component_size
    }
}

/// Exact shortest-path distance from every vertex to the nearest source.
/// Unreachable vertices get `None`, never a large stand-in number.
pub fn bfs_distances(g: &Graph, sources: &VertexSet) -> Result<Vec<Option<usize>>, GraphError> {
    bounded_distances(g, sources, usize::MAX)
}

/// B(u, r): vertices at path distance at most `r` from `u`.
pub fn ball(g: &Graph, u: &VertexSet, r: usize) -> Result<VertexSet, GraphError> {
    let dist = bounded_distances(g, u, r)?;
    let mut out = VertexSet::new(g.vertex_count());
    for (v, d) in dist.iter().enumerate() {
        if d.is_some() {
            out.insert(v);
        }
    }
    Ok(out)
}

/// E(u, r): vertices at path distance exactly `r` from `u`. `E(u, 0) = u`.
pub fn shell(g: &Graph, u: &VertexSet, r: usize) -> Result<VertexSet, GraphError> {
    let dist = bounded_distances(g, u, r)?;
    let mut out = VertexSet::new(g.vertex_count());
    for (v, d) in dist.iter().enumerate() {
        if *d == Some(r) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// G^{<=r}: same vertices, an edge wherever the path distance in `g` is
/// between 1 and `r`. `r = 0` is rejected rather than returning an edgeless
/// graph nobody wants.
pub fn power_graph(g: &Graph, r: usize) -> Result<Graph, GraphError> {
    if r == 0 {
        return Err(GraphError::ZeroRadius);
    }
    if r == 1 {
        return Ok(g.clone());
    }
    let n = g.vertex_count();
    let mut edges = Vec::new();
    for v in 0..n {
        let mut single = VertexSet::new(n);
        single.insert(v);
        let dist = bounded_distances(g, &single, r)?;
        for (w, d) in dist.iter().enumerate() {
            if w > v && matches!(d, Some(d) if *d >= 1) {
                edges.push((v, w));
            }
        }
    }
    Graph::new(n, edges)
}

/// Connected components of the induced subgraph on `keep`. Component ids are
/// assigned in order of each component's smallest vertex.
pub fn restrict(g: &Graph, keep: &VertexSet) -> Result<ComponentDecomposition, GraphError> {
    g.check_universe(keep)?;
    let n = g.vertex_count();
    let mut dsu = UnionFind::new(n);
    for &(u, v) in g.edges() {
        if keep.contains(u) && keep.contains(v) {
            dsu.union(u, v);
        }
    }
    let mut component_id = vec![None; n];
    let mut root_to_id = vec![usize::MAX; n];
    let mut component_sizes = Vec::new();
    for v in 0..n {
        if !keep.contains(v) {
            continue;
        }
        let root = dsu.find(v);
        if root_to_id[root] == usize::MAX {
            root_to_id[root] = component_sizes.len();
            component_sizes.push(0);
        }
        let id = root_to_id[root];
        component_id[v] = Some(id);
        component_sizes[id] += 1;
    }
    let max_component_size = component_sizes.iter().copied().max().unwrap_or(0);
    Ok(ComponentDecomposition {
        component_id,
        component_sizes,
        max_component_size,
    })
}

/// For each vertex in `keep`, the number of its neighbors also in `keep`;
/// zero for vertices outside `keep`.
pub fn degrees_within(g: &Graph, keep: &VertexSet) -> Result<Vec<usize>, GraphError> {
    g.check_universe(keep)?;
    let mut deg = vec![0; g.vertex_count()];
    for &(u, v) in g.edges() {
        if keep.contains(u) && keep.contains(v) {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    Ok(deg)
}

fn bounded_distances(
    g: &Graph,
    sources: &VertexSet,
    limit: usize,
) -> Result<Vec<Option<usize>>, GraphError> {
    g.check_universe(sources)?;
    let mut dist = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    for v in sources.iter() {
        dist[v] = Some(0);
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices have distances");
        if d == limit {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (mut a, mut b) = (self.find(x), self.find(y));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
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

    fn set(universe: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_members(universe, members.iter().copied()).unwrap()
    }

    /// Independent all-pairs shortest-path oracle (Floyd-Warshall over the
    /// raw edge list; shares nothing with the BFS implementation).
    fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
        let n = g.vertex_count();
        let mut d = vec![vec![None; n]; n];
        for v in 0..n {
            d[v][v] = Some(0);
        }
        for &(u, v) in g.edges() {
            d[u][v] = Some(1);
            d[v][u] = Some(1);
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                        if d[i][j].is_none_or(|c| a + b < c) {
                            d[i][j] = Some(a + b);
                        }
                    }
                }
            }
        }
        d
    }

    fn oracle_dist_to_set(g: &Graph, sources: &VertexSet) -> Vec<Option<usize>> {
        let apsp = floyd_warshall(g);
        (0..g.vertex_count())
            .map(|v| sources.iter().filter_map(|s| apsp[v][s]).min())
            .collect()
    }

    #[test]
    fn rejects_self_loops_duplicates_and_range() {
        assert_eq!(Graph::new(3, vec![(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, vec![(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, vec![(0, 5)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 5,
                vertex_count: 2
            })
        );
    }

    #[test]
    fn edges_are_canonical_and_adjacency_symmetric() {
        let g = Graph::new(4, vec![(3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        for &(u, v) in g.edges() {
            assert!(g.neighbors(u).contains(&v));
            assert!(g.neighbors(v).contains(&u));
        }
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.edge_index(3, 2), Some(2));
        assert_eq!(g.edge_index(1, 3), None);
    }

    #[test]
    fn bfs_on_path_from_one_end() {
        let g = path(4);
        let d = bfs_distances(&g, &set(4, &[0])).unwrap();
        assert_eq!(d, vec![Some(0), Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn bfs_all_sources_gives_zeros() {
        let g = cycle(6);
        let d = bfs_distances(&g, &VertexSet::full(6)).unwrap();
        assert!(d.iter().all(|&x| x == Some(0)));
    }

    #[test]
    fn bfs_on_six_cycle_matches_oracle() {
        let g = cycle(6);
        let sources = set(6, &[0]);
        let d = bfs_distances(&g, &sources).unwrap();
        // Frozen from the Floyd-Warshall oracle below.
        assert_eq!(
            d,
            vec![Some(0), Some(1), Some(2), Some(3), Some(2), Some(1)]
        );
        assert_eq!(d, oracle_dist_to_set(&g, &sources));
    }

    #[test]
    fn bfs_marks_unreachable_vertices() {
        let g = Graph::new(4, vec![(0, 1)]).unwrap();
        let d = bfs_distances(&g, &set(4, &[0])).unwrap();
        assert_eq!(d, vec![Some(0), Some(1), None, None]);
    }

    #[test]
    fn bfs_rejects_mismatched_universe() {
        let g = path(4);
        let bad = set(5, &[0]);
        assert_eq!(
            bfs_distances(&g, &bad),
            Err(GraphError::UniverseMismatch {
                set_universe: 5,
                vertex_count: 4
            })
        );
    }

    #[test]
    fn ball_examples() {
        let g = path(4);
        let b = ball(&g, &set(4, &[0]), 2).unwrap();
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 1, 2]);

        let g = cycle(6);
        let b = ball(&g, &set(6, &[0]), 1).unwrap();
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 1, 5]);
        let b = ball(&g, &set(6, &[0]), 2).unwrap();
        // Frozen from the shortest-path oracle.
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 1, 2, 4, 5]);
    }

    #[test]
    fn shell_examples() {
        let g = path(4);
        let s = shell(&g, &set(4, &[0]), 2).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![2]);

        // E(U, 0) = U by definition.
        let u = set(4, &[1, 3]);
        assert_eq!(shell(&g, &u, 0).unwrap(), u);

        let g = cycle(6);
        let s = shell(&g, &set(6, &[0]), 3).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn power_graph_examples() {
        let g = path(3);
        let p = power_graph(&g, 2).unwrap();
        assert_eq!(p.edges(), &[(0, 1), (0, 2), (1, 2)]);

        let g = cycle(6);
        assert_eq!(power_graph(&g, 1).unwrap(), g);
        let p2 = power_graph(&g, 2).unwrap();
        for v in 0..6 {
            assert_eq!(p2.degree(v), 4, "vertex {v}");
        }

        assert_eq!(power_graph(&g, 0), Err(GraphError::ZeroRadius));
    }

    #[test]
    fn restrict_examples() {
        let g = path(4);
        let d = restrict(&g, &set(4, &[0, 1, 3])).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.component_of(0), d.component_of(1));
        assert_ne!(d.component_of(0), d.component_of(3));
        assert_eq!(d.component_of(2), None);
        assert_eq!(d.max_component_size(), 2);

        let empty = restrict(&g, &VertexSet::new(4)).unwrap();
        assert_eq!(empty.component_count(), 0);
        assert_eq!(empty.max_component_size(), 0);

        let g = cycle(6);
        let d = restrict(&g, &set(6, &[0, 1, 3, 4])).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.component_of(0), d.component_of(1));
        assert_eq!(d.component_of(3), d.component_of(4));
        assert_ne!(d.component_of(0), d.component_of(3));
        assert_eq!(d.component_sizes(), &[2, 2]);
    }

    #[test]
    fn degrees_within_examples() {
        let g = path(4);
        let d = degrees_within(&g, &set(4, &[1, 2])).unwrap();
        assert_eq!(d, vec![0, 1, 1, 0]);

        let d = degrees_within(&g, &VertexSet::full(4)).unwrap();
        assert_eq!(d, vec![1, 2, 2, 1]);

        let g = cycle(6);
        let d = degrees_within(&g, &set(6, &[0, 1, 2])).unwrap();
        assert_eq!(d, vec![1, 2, 1, 0, 0, 0]);
    }

    #[test]
    fn induced_components_order_and_content() {
        let g = cycle(6);
        let comps = g.induced_components(&set(6, &[3, 4, 0, 1])).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].1, vec![0, 1]);
        assert_eq!(comps[1].1, vec![3, 4]);
        assert_eq!(comps[0].0.edges(), &[(0, 1)]);
    }

    #[test]
    fn vertex_set_complement_and_ops() {
        let s = set(70, &[0, 63, 64, 69]);
        let c = s.complement();
        assert_eq!(c.len(), 66);
        assert!(!c.contains(63) && !c.contains(64));
        assert!(c.contains(1) && c.contains(68));
        assert!(s.is_disjoint(&c));
        assert_eq!(s.union(&c), VertexSet::full(70));
        assert_eq!(s.intersection(&c).len(), 0);
        assert_eq!(s.difference(&s).len(), 0);
    }
}
