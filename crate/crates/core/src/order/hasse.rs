use std::fmt::Write;

use super::Conrad;
use crate::error::{Error, Result};
use crate::ring::ElementId;

/// Covering pairs `(a, b)`: `a < b` with nothing strictly between, in
/// ascending `(a, b)` order.
pub fn hasse_edges(order: &Conrad) -> Vec<(ElementId, ElementId)> {
    let mut edges = Vec::new();
    for a in order.ids() {
        for b in order.up(a).ones().map(|b| ElementId(b as u32)) {
            if a == b {
                continue;
            }
            let between = order
                .up(a)
                .intersection(order.down(b))
                .any(|c| c != a.index() && c != b.index());
            if !between {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Hasse diagram of Conrad's order in DOT. Refuses relations that are not
/// partial orders.
pub fn emit_hasse(order: &Conrad) -> Result<String> {
    let diag = order.diagnostics();
    if let Some((axiom, witness)) = diag.first_failure() {
        return Err(Error::NotPartialOrder { axiom: axiom.to_string(), witness: witness.to_vec() });
    }
    let ring = order.ring();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(ring.label()));
    out.push_str("    rankdir=BT;\n");
    out.push_str("    node [shape=box];\n");
    for a in ring.elements() {
        let rendered = ring.render(a);
        let label = if rendered == a.to_string() {
            rendered.to_string()
        } else {
            format!("{a}: {rendered}")
        };
        let _ = writeln!(out, "    {a} [label=\"{}\"];", escape(&label));
    }
    for (a, b) in hasse_edges(order) {
        let _ = writeln!(out, "    {a} -> {b};");
    }
    out.push_str("}\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_modular, build_product, Limits};

    #[test]
    fn z6_edges() {
        let z6 = build_modular(6, &Limits::default()).unwrap();
        let c = Conrad::new(&z6);
        let edges: Vec<(u32, u32)> = hasse_edges(&c).into_iter().map(|(a, b)| (a.0, b.0)).collect();
        assert_eq!(edges, vec![(0, 2), (0, 3), (0, 4), (2, 5), (3, 1), (3, 5), (4, 1)]);
    }

    #[test]
    fn single_node() {
        let z1 = build_modular(1, &Limits::default()).unwrap();
        let dot = emit_hasse(&Conrad::new(&z1)).unwrap();
        assert!(dot.contains("    0 [label=\"0\"];"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn refuses_z4() {
        let z4 = build_modular(4, &Limits::default()).unwrap();
        match emit_hasse(&Conrad::new(&z4)) {
            Err(Error::NotPartialOrder { axiom, witness }) => {
                assert_eq!(axiom, "antisymmetry");
                assert_eq!(witness, vec![ElementId(0), ElementId(2)]);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn structured_labels() {
        let lim = Limits::default();
        let z2 = build_modular(2, &lim).unwrap();
        let p = build_product(&[z2.clone(), z2], &lim).unwrap();
        let dot = emit_hasse(&Conrad::new(&p)).unwrap();
        assert!(dot.contains("    3 [label=\"3: (1,1)\"];"));
        assert!(dot.contains("    1 -> 3;"));
    }
}
