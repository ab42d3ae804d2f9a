//! DOT export: one undirected graph, edges styled by color class.

use crate::graph::Graph;
use crate::konig::EdgeColoring;

/// Style names assigned to color indices, in order. Palettes larger than
/// this table fall back to numeric labels only.
pub const DOT_STYLE_TABLE: [&str; 12] = [
    "red",
    "blue",
    "forestgreen",
    "orange",
    "purple",
    "saddlebrown",
    "deepskyblue",
    "magenta",
    "goldenrod",
    "darkcyan",
    "crimson",
    "gray40",
];

/// Renders the colored graph in DOT. Output is deterministic: vertices and
/// edges appear in canonical order. Panics if the coloring does not align
/// with the graph's edge list; callers validate alignment first.
pub fn render_dot(g: &Graph, coloring: &EdgeColoring) -> String {
    assert_eq!(
        coloring.colors().len(),
        g.edge_count(),
        "coloring must align with the edge list"
    );
    let styled = coloring.palette_size() <= DOT_STYLE_TABLE.len();
    let mut out = String::from("graph coloring {\n");
    for v in 0..g.vertex_count() {
        if g.degree(v) == 0 {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        let c = coloring.color(idx);
        if styled {
            out.push_str(&format!(
                "  {u} -- {v} [color=\"{}\", label=\"{c}\"];\n",
                DOT_STYLE_TABLE[c]
            ));
        } else {
            out.push_str(&format!("  {u} -- {v} [label=\"{c}\"];\n"));
        }
    }
    out.push_str("}\n");
    out
}
