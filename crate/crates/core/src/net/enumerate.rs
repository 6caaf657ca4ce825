//! Exhaustive enumeration of hom-sets and element sets.

use super::correctness::check;
use super::{End, JElement, Link, ProofNet};
use crate::error::{Error, Result};
use crate::formula::{leaves, Formula, LeafRef, Side};

/// Default bound on the total number of leaves an enumeration may touch.
pub const DEFAULT_MAX_LEAVES: usize = 12;

/// All perfect matchings of `leaves` in which each pair joins the same
/// variable with opposite polarities. Leaves are paired greedily from the
/// front, so the output order is deterministic.
pub fn matchings(leaves: &[LeafRef]) -> Vec<Vec<Link>> {
    fn go(leaves: &[LeafRef], used: &mut [bool], current: &mut Vec<Link>, out: &mut Vec<Vec<Link>>) {
        let Some(first) = used.iter().position(|u| !u) else {
            out.push(current.clone());
            return;
        };
        used[first] = true;
        let a = &leaves[first];
        for j in first + 1..leaves.len() {
            let b = &leaves[j];
            if used[j] || b.var != a.var || b.polarity == a.polarity {
                continue;
            }
            used[j] = true;
            current.push(Link::new(
                End { side: a.side, addr: a.addr.clone() },
                End { side: b.side, addr: b.addr.clone() },
            ));
            go(leaves, used, current, out);
            current.pop();
            used[j] = false;
        }
        used[first] = false;
    }

    let mut out = Vec::new();
    if balanced(leaves) {
        go(leaves, &mut vec![false; leaves.len()], &mut Vec::new(), &mut out);
    }
    out
}

/// Every variable occurs as often positively as negatively.
fn balanced(leaves: &[LeafRef]) -> bool {
    let mut count: std::collections::BTreeMap<&str, i64> = Default::default();
    for l in leaves {
        *count.entry(&*l.var).or_default() += match l.polarity {
            crate::formula::Polarity::Pos => 1,
            crate::formula::Polarity::Neg => -1,
        };
    }
    count.values().all(|c| *c == 0)
}

/// All correct nets `a -> b`, sorted by link list.
pub fn enumerate_hom(a: &Formula, b: &Formula, bound: usize) -> Result<Vec<ProofNet>> {
    let mut all = leaves(a, Side::Dom);
    all.extend(leaves(b, Side::Cod));
    if all.len() > bound {
        return Err(Error::SizeBoundExceeded { leaves: all.len(), bound });
    }
    let conclusions = [(a, Side::Dom), (b, Side::Cod)];
    let mut nets: Vec<ProofNet> = matchings(&all)
        .into_iter()
        .filter_map(|mut links| {
            links.sort();
            check(&conclusions, &links).0.is_correct().then(|| ProofNet::from_parts(a.clone(), b.clone(), links))
        })
        .collect();
    nets.sort_by(|x, y| x.links().cmp(y.links()));
    Ok(nets)
}

/// All correct single-conclusion nets on `a`, sorted by link list.
pub fn enumerate_j(a: &Formula, bound: usize) -> Result<Vec<JElement>> {
    let all = leaves(a, Side::Cod);
    if all.len() > bound {
        return Err(Error::SizeBoundExceeded { leaves: all.len(), bound });
    }
    let conclusions = [(a, Side::Cod)];
    let mut els: Vec<JElement> = matchings(&all)
        .into_iter()
        .filter_map(|mut links| {
            links.sort();
            check(&conclusions, &links).0.is_correct().then(|| JElement::from_parts(a.clone(), links))
        })
        .collect();
    els.sort_by(|x, y| x.links().cmp(y.links()));
    Ok(els)
}
