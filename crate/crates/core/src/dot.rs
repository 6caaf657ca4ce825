//! Graphviz rendering of nets.
//!
//! Every subformula occurrence is a node: a box labelled `*` for a tensor,
//! `^` for a negation, or the variable name (with its polarity) for a leaf.
//! Tree edges point from a connective to its children and are solid. Axiom
//! links are drawn between leaves as dashed, undirected, blue edges with
//! `constraint=false`, so they do not affect the layering of the trees.
//! The domain tree is drawn in one cluster and the codomain in another.

use std::fmt::Write;

use crate::formula::{polarity_of, Addr, Formula, Polarity, Side, Step};
use crate::net::{End, JElement, Link, ProofNet};

fn node_id(side: Side, addr: &Addr) -> String {
    let prefix = match side {
        Side::Dom => "d",
        Side::Cod => "c",
    };
    format!("{prefix}_{addr}")
}

fn tree(out: &mut String, f: &Formula, side: Side, addr: Addr) {
    let id = node_id(side, &addr);
    match f {
        Formula::Var(name) => {
            let sign = match polarity_of(side, &addr) {
                Polarity::Pos => "+",
                Polarity::Neg => "-",
            };
            writeln!(out, "    {id} [label=\"{name}{sign}\", shape=plaintext];").unwrap();
        }
        Formula::Tensor(a, b) => {
            writeln!(out, "    {id} [label=\"*\", shape=circle];").unwrap();
            for (step, child) in [(Step::L, a), (Step::R, b)] {
                let c = addr.child(step);
                writeln!(out, "    {id} -> {};", node_id(side, &c)).unwrap();
                tree(out, child, side, c);
            }
        }
        Formula::Neg(a) => {
            writeln!(out, "    {id} [label=\"^\", shape=circle];").unwrap();
            let c = addr.child(Step::N);
            writeln!(out, "    {id} -> {};", node_id(side, &c)).unwrap();
            tree(out, a, side, c);
        }
    }
}

fn cluster(out: &mut String, name: &str, label: &str, f: &Formula, side: Side) {
    writeln!(out, "  subgraph cluster_{name} {{").unwrap();
    writeln!(out, "    label=\"{label}: {f}\";").unwrap();
    tree(out, f, side, Addr::root());
    out.push_str("  }\n");
}

fn axioms(out: &mut String, links: &[Link]) {
    for link in links {
        let (a, b): (&End, &End) = link.ends();
        writeln!(
            out,
            "  {} -> {} [dir=none, style=dashed, color=\"#1f5fbf\", constraint=false];",
            node_id(a.side, &a.addr),
            node_id(b.side, &b.addr)
        )
        .unwrap();
    }
}

/// DOT source for a net `dom -> cod`.
pub fn net_to_dot(net: &ProofNet) -> String {
    let mut out = String::from("digraph net {\n  node [fontname=\"monospace\"];\n");
    cluster(&mut out, "dom", "dom", net.dom(), Side::Dom);
    cluster(&mut out, "cod", "cod", net.cod(), Side::Cod);
    axioms(&mut out, net.links());
    out.push_str("}\n");
    out
}

/// DOT source for a single-conclusion net.
pub fn element_to_dot(el: &JElement) -> String {
    let mut out = String::from("digraph element {\n  node [fontname=\"monospace\"];\n");
    cluster(&mut out, "cod", "conclusion", el.formula(), Side::Cod);
    axioms(&mut out, el.links());
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::identity;
    use crate::formula::parse;

    #[test]
    fn one_node_per_occurrence() {
        let net = identity(&parse("(p * q^)").unwrap());
        let dot = net_to_dot(&net);
        // two trees of four nodes each
        assert_eq!(dot.matches("label=\"").count(), 2 + 8);
        assert_eq!(dot.matches("style=dashed").count(), 2);
        assert!(dot.contains("d_L -> c_L") || dot.contains("c_L -> d_L"));
        assert!(dot.starts_with("digraph net {") && dot.ends_with("}\n"));
    }
}
