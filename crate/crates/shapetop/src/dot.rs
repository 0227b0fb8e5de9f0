//! Hasse-diagram export in Graphviz DOT form.
//!
//! Nodes carry stable identifiers (`o0`, `o1`, ...) in the canonical open
//! order; a legend block at the end maps identifiers to shape listings.
//! Edges are the covering relation of the part order, drawn bottom-to-top.
//! Identical inputs produce byte-identical output.

use crate::shape::Shape;
use crate::space::SetTopology;
use crate::topology::Topology;
use std::collections::BTreeSet;

fn covering_edges<T, F: Fn(&T, &T) -> bool>(items: &[T], less: F) -> Vec<(usize, usize)> {
    let n = items.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !less(&items[i], &items[j]) {
                continue;
            }
            let covered = (0..n).any(|k| {
                k != i && k != j && less(&items[i], &items[k]) && less(&items[k], &items[j])
            });
            if !covered {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn render(name: &str, labels: &[String], legend: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {name} {{\n"));
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    for label in labels {
        out.push_str(&format!("  {label};\n"));
    }
    for (i, j) in edges {
        out.push_str(&format!("  o{i} -> o{j};\n"));
    }
    out.push_str("  // legend\n");
    for line in legend {
        out.push_str(&format!("  // {line}\n"));
    }
    out.push_str("}\n");
    out
}

/// The lattice of open parts as a DOT Hasse diagram.
pub fn topology_dot(t: &Topology) -> String {
    let opens: Vec<&Shape> = t.opens_sorted();
    let labels: Vec<String> = (0..opens.len()).map(|i| format!("o{i} [label=\"o{i}\"]")).collect();
    let legend: Vec<String> =
        opens.iter().enumerate().map(|(i, o)| format!("o{i} = {o}")).collect();
    let edges = covering_edges(&opens, |a, b| a != b && a.part_of_k(b));
    render("topology", &labels, &legend, &edges)
}

/// The star topology as a DOT Hasse diagram over point-index sets.
pub fn set_topology_dot(st: &SetTopology) -> String {
    let sets: Vec<&BTreeSet<usize>> = st.open_sets().iter().collect();
    let labels: Vec<String> = (0..sets.len()).map(|i| format!("o{i} [label=\"o{i}\"]")).collect();
    let mut legend: Vec<String> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let indices: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            format!("o{i} = {{{}}}", indices.join(", "))
        })
        .collect();
    for p in st.points() {
        legend.push(format!("point {} = {}", p.index, p.shape));
    }
    let edges = covering_edges(&sets, |a, b| a != b && a.is_subset(b));
    render("space", &labels, &legend, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::space::star_topology;
    use crate::topology::GenerateOptions;

    fn seg_x(lo: i64, hi: i64) -> Shape {
        Shape::segment(Point::at(lo, 0), Point::at(hi, 0)).unwrap()
    }

    fn five_open_topology() -> Topology {
        Topology::generate(
            &[seg_x(0, 2), seg_x(1, 3)],
            &seg_x(0, 3),
            GenerateOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn diagram_is_deterministic_and_covers() {
        let t = five_open_topology();
        let dot = topology_dot(&t);
        assert_eq!(dot, topology_dot(&t.clone()));
        // A diamond: 0 under [1,2], [1,2] under both generators, both
        // generators under the carrier.
        assert!(dot.contains("digraph topology {"));
        assert!(dot.contains("o0 = 0"));
        assert!(dot.contains("rankdir=BT"));
        let edge_count = dot.lines().filter(|l| l.contains("->")).count();
        assert_eq!(edge_count, 5);
    }

    #[test]
    fn chain_has_straight_line_diagram() {
        let carrier = seg_x(0, 3);
        let t = Topology::generate(&[seg_x(0, 1)], &carrier, GenerateOptions::with_carrier())
            .unwrap();
        let dot = topology_dot(&t);
        // 0 -> [0,1] -> S, nothing else.
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 2);
        assert!(dot.contains("o0 -> o1;"));
        assert!(dot.contains("o1 -> o2;"));
    }

    #[test]
    fn set_topology_diagram_mirrors_topology_diagram() {
        let t = five_open_topology();
        let star = star_topology(&t);
        let dot = set_topology_dot(&star);
        assert_eq!(
            dot.lines().filter(|l| l.contains("->")).count(),
            topology_dot(&t).lines().filter(|l| l.contains("->")).count()
        );
        assert!(dot.contains("point 0 = seg 0 0 2 0"));
    }
}
