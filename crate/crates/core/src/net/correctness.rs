//! Danos-Regnier correctness by exhaustive switching.
//!
//! Each conclusion formula is de-Morganized into a tensor/par tree (the
//! domain read negatively, the codomain positively). A switching keeps one
//! premise edge per par node; the linking is correct iff every one of the
//! `2^pars` switched graphs, with all tensor edges and axiom links, is a
//! single tree. The cost is exponential in the number of pars, which is fine
//! at the sizes the enumerator accepts.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{End, JElement, Link, ProofNet};
use crate::formula::{de_morganize, Addr, DMTree, Formula, Polarity, Side};

/// Premise kept at one par node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParChoice {
    pub side: Side,
    pub addr: Addr,
    pub keep: ParPremise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParPremise {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Failure {
    Cycle,
    Disconnected,
}

/// A failing switching: the premise chosen at each par node and what went
/// wrong in the resulting graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Switching {
    pub choices: Vec<ParChoice>,
    pub failure: Failure,
}

impl fmt::Display for Switching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.failure {
            Failure::Cycle => "cycle",
            Failure::Disconnected => "disconnected graph",
        };
        write!(f, "{what} under switching [")?;
        for (i, c) in self.choices.iter().enumerate() {
            let side = match c.side {
                Side::Dom => "dom",
                Side::Cod => "cod",
            };
            let keep = match c.keep {
                ParPremise::Left => "left",
                ParPremise::Right => "right",
            };
            write!(f, "{}{side}:\"{}\"={keep}", if i == 0 { "" } else { ", " }, c.addr)?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Correctness {
    Correct,
    Incorrect(Switching),
}

impl Correctness {
    pub fn is_correct(&self) -> bool {
        matches!(self, Correctness::Correct)
    }
}

/// Checks a morphism net. Matching and complementarity are assumed.
pub fn dr_correct(net: &ProofNet) -> Correctness {
    dr_correct_counted(net).0
}

/// Like [`dr_correct`], also returning how many switchings were examined:
/// `2^pars` for a correct net, fewer when a failure exits early.
pub fn dr_correct_counted(net: &ProofNet) -> (Correctness, u64) {
    check(&[(net.dom(), Side::Dom), (net.cod(), Side::Cod)], net.links())
}

/// Checks a single-conclusion net.
pub fn element_correct(el: &JElement) -> Correctness {
    check(&[(el.formula(), Side::Cod)], el.links()).0
}

struct Graph {
    nodes: usize,
    fixed: Vec<(usize, usize)>,
    pars: Vec<Par>,
}

struct Par {
    side: Side,
    addr: Addr,
    node: usize,
    left: usize,
    right: usize,
}

impl Graph {
    fn build(conclusions: &[(&Formula, Side)], links: &[Link]) -> Graph {
        let mut g = Graph { nodes: 0, fixed: Vec::new(), pars: Vec::new() };
        let mut leaf_node: HashMap<End, usize> = HashMap::new();
        for &(formula, side) in conclusions {
            let start = match side {
                Side::Dom => Polarity::Neg,
                Side::Cod => Polarity::Pos,
            };
            let tree = de_morganize(formula, start);
            g.add_tree(&tree, side, &mut leaf_node);
        }
        for link in links {
            let (a, b) = link.ends();
            g.fixed.push((leaf_node[a], leaf_node[b]));
        }
        g
    }

    fn add_tree(&mut self, tree: &DMTree, side: Side, leaf_node: &mut HashMap<End, usize>) -> usize {
        let id = self.nodes;
        self.nodes += 1;
        match tree {
            DMTree::Literal(leaf) => {
                leaf_node.insert(End { side, addr: leaf.addr.clone() }, id);
            }
            DMTree::TensorNode { left, right, .. } => {
                let l = self.add_tree(left, side, leaf_node);
                let r = self.add_tree(right, side, leaf_node);
                self.fixed.push((id, l));
                self.fixed.push((id, r));
            }
            DMTree::ParNode { addr, left, right } => {
                let l = self.add_tree(left, side, leaf_node);
                let r = self.add_tree(right, side, leaf_node);
                self.pars.push(Par { side, addr: addr.clone(), node: id, left: l, right: r });
            }
        }
        id
    }
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }
}

fn witness(pars: &[Par], mask: u64, failure: Failure) -> Switching {
    let choices = pars
        .iter()
        .enumerate()
        .map(|(i, p)| ParChoice {
            side: p.side,
            addr: p.addr.clone(),
            keep: if mask >> i & 1 == 0 { ParPremise::Left } else { ParPremise::Right },
        })
        .collect();
    Switching { choices, failure }
}

pub(crate) fn check(conclusions: &[(&Formula, Side)], links: &[Link]) -> (Correctness, u64) {
    let g = Graph::build(conclusions, links);
    assert!(g.pars.len() < 64, "too many par nodes for exhaustive switching");

    let mut base = UnionFind::new(g.nodes);
    for &(a, b) in &g.fixed {
        if !base.union(a, b) {
            return (Correctness::Incorrect(witness(&g.pars, 0, Failure::Cycle)), 1);
        }
    }

    let total = 1u64 << g.pars.len();
    for mask in 0..total {
        let mut uf = UnionFind { parent: base.parent.clone(), components: base.components };
        let mut failure = None;
        for (i, par) in g.pars.iter().enumerate() {
            let premise = if mask >> i & 1 == 0 { par.left } else { par.right };
            if !uf.union(par.node, premise) {
                failure = Some(Failure::Cycle);
                break;
            }
        }
        if failure.is_none() && uf.components != 1 {
            failure = Some(Failure::Disconnected);
        }
        if let Some(failure) = failure {
            return (Correctness::Incorrect(witness(&g.pars, mask, failure)), mask + 1);
        }
    }
    (Correctness::Correct, total)
}
