//! An independent switching checker, written against explicit adjacency
//! lists with depth-first search, compared with the library's checker on
//! every matching of many small sequents.

use std::collections::HashMap;

use mll_nets::coherence::formula_grid;
use mll_nets::formula::{leaves, parse, Addr, Formula, Side, Step};
use mll_nets::net::{dr_correct, enumerate_hom, enumerate_j, matchings, End, Link, ProofNet, DEFAULT_MAX_LEAVES};

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Tensor,
    Par,
    Leaf,
}

struct Node {
    kind: Kind,
    children: Vec<usize>,
}

/// Builds the de Morgan tree directly from polarity parity: a tensor read
/// with an odd number of enclosing negations (flipped on the domain) is a
/// par. Negation nodes are transparent.
fn build(f: &Formula, side: Side, addr: Addr, negs: usize, nodes: &mut Vec<Node>, leaf: &mut HashMap<End, usize>) -> usize {
    match f {
        Formula::Neg(a) => build(a, side, addr.child(Step::N), negs + 1, nodes, leaf),
        Formula::Var(_) => {
            nodes.push(Node { kind: Kind::Leaf, children: vec![] });
            leaf.insert(End { side, addr }, nodes.len() - 1);
            nodes.len() - 1
        }
        Formula::Tensor(a, b) => {
            let flipped = (negs % 2 == 1) != (side == Side::Dom);
            let l = build(a, side, addr.child(Step::L), negs, nodes, leaf);
            let r = build(b, side, addr.child(Step::R), negs, nodes, leaf);
            nodes.push(Node { kind: if flipped { Kind::Par } else { Kind::Tensor }, children: vec![l, r] });
            nodes.len() - 1
        }
    }
}

fn is_tree(n: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() + 1 != n {
        return false;
    }
    let mut adj = vec![vec![]; n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|s| *s)
}

fn oracle(conclusions: &[(&Formula, Side)], links: &[Link]) -> bool {
    let mut nodes = Vec::new();
    let mut leaf = HashMap::new();
    for &(f, side) in conclusions {
        build(f, side, Addr::root(), 0, &mut nodes, &mut leaf);
    }
    let mut fixed = Vec::new();
    let mut pars = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        match node.kind {
            Kind::Tensor => fixed.extend(node.children.iter().map(|&c| (i, c))),
            Kind::Par => pars.push((i, node.children[0], node.children[1])),
            Kind::Leaf => {}
        }
    }
    for l in links {
        let (a, b) = l.ends();
        fixed.push((leaf[a], leaf[b]));
    }
    (0..1u64 << pars.len()).all(|mask| {
        let mut edges = fixed.clone();
        for (i, &(p, l, r)) in pars.iter().enumerate() {
            edges.push((p, if mask >> i & 1 == 0 { l } else { r }));
        }
        is_tree(nodes.len(), &edges)
    })
}

fn all_leaves(a: &Formula, b: &Formula) -> Vec<mll_nets::formula::LeafRef> {
    let mut v = leaves(a, Side::Dom);
    v.extend(leaves(b, Side::Cod));
    v
}

#[test]
fn switching_checker_agrees_with_oracle_on_small_sequents() {
    let vars = ["p".to_string()];
    let grid = formula_grid(&vars, 3, 2);
    let mut compared = 0;
    let mut correct = 0;
    for a in &grid {
        for b in &grid {
            if a.leaf_count() + b.leaf_count() > 6 {
                continue;
            }
            for links in matchings(&all_leaves(a, b)) {
                let net = ProofNet::from_parts(a.clone(), b.clone(), links.clone());
                let mine = dr_correct(&net).is_correct();
                assert_eq!(mine, oracle(&[(a, Side::Dom), (b, Side::Cod)], &links), "{net}");
                compared += 1;
                correct += mine as u32;
            }
        }
    }
    assert!(compared > 1000 && correct > 100, "{compared} {correct}");
}

#[test]
fn enumeration_is_the_oracle_filter_of_all_matchings() {
    let vars = ["p".to_string(), "q".to_string()];
    let grid = formula_grid(&vars, 2, 2);
    for a in &grid {
        for b in &grid {
            let expected: Vec<Vec<Link>> = matchings(&all_leaves(a, b))
                .into_iter()
                .map(|mut l| {
                    l.sort();
                    l
                })
                .filter(|l| oracle(&[(a, Side::Dom), (b, Side::Cod)], l))
                .collect();
            let got = enumerate_hom(a, b, DEFAULT_MAX_LEAVES).unwrap();
            assert_eq!(got.len(), expected.len(), "hom({a}, {b})");
            for net in &got {
                assert!(expected.contains(&net.links().to_vec()));
            }
        }
    }
}

#[test]
fn element_enumeration_matches_oracle() {
    let vars = ["p".to_string()];
    for a in formula_grid(&vars, 4, 2) {
        let expected = matchings(&leaves(&a, Side::Cod)).into_iter().filter(|l| oracle(&[(&a, Side::Cod)], l)).count();
        assert_eq!(enumerate_j(&a, DEFAULT_MAX_LEAVES).unwrap().len(), expected, "J({a})");
    }
}

#[test]
fn named_counts() {
    let f = |s: &str| parse(s).unwrap();
    let hom = |a: &str, b: &str| enumerate_hom(&f(a), &f(b), DEFAULT_MAX_LEAVES).unwrap().len();
    assert_eq!(hom("p", "(p * (q * q^)^)"), 1);
    assert_eq!(hom("(p*p)", "(p*p)"), 2);
    assert_eq!(hom("(p*q)", "(p*q)"), 1);
    assert_eq!(hom("((p*p)*p)", "(p*(p*p))"), 6);
    // a par never maps into a tensor of its halves without mix
    assert_eq!(hom("(p^*p^)^", "(p*p)^^"), 0);
    assert_eq!(enumerate_j(&f("p"), DEFAULT_MAX_LEAVES).unwrap().len(), 0);
    assert_eq!(enumerate_j(&f("p -o p"), DEFAULT_MAX_LEAVES).unwrap().len(), 1);
}
