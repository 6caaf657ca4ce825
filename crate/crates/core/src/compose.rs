//! Identities, composition by path tracing, tensor of morphisms and the
//! action of morphisms on elements.
//!
//! Composition never builds cut nodes. To compose `f: A -> B` with
//! `g: B -> C`, start at any leaf of `A` or `C` and follow links, hopping
//! between `f` and `g` whenever the path reaches a leaf of `B` (a codomain
//! leaf of `f` and the domain leaf of `g` at the same address are the same
//! occurrence). The path ends on a leaf of `A` or `C`; its two endpoints
//! form one link of the result.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::formula::{leaves, Addr, Formula, Side, Step};
use crate::net::{End, JElement, Link, ProofNet};

/// `id_A`: every domain leaf linked to the codomain leaf at the same address.
pub fn identity(a: &Formula) -> ProofNet {
    let links = leaves(a, Side::Cod)
        .into_iter()
        .map(|l| Link::new(End::dom(l.addr.clone()), End::cod(l.addr)))
        .collect();
    ProofNet::from_parts(a.clone(), a.clone(), links)
}

fn partners(links: &[Link]) -> HashMap<&End, &End> {
    let mut map = HashMap::with_capacity(links.len() * 2);
    for l in links {
        let (a, b) = l.ends();
        map.insert(a, b);
        map.insert(b, a);
    }
    map
}

/// Cuts `left` against `right` along their shared interface: codomain ends
/// of `left` meet domain ends of `right` at equal addresses. Domain ends of
/// `left` and codomain ends of `right` survive.
fn cut(left: &[Link], right: &[Link]) -> Result<Vec<Link>> {
    let lp = partners(left);
    let rp = partners(right);

    let mut interface: Vec<&Addr> = lp.keys().filter(|e| e.side == Side::Cod).map(|e| &e.addr).collect();
    interface.sort();
    let mut crossed: HashSet<&Addr> = HashSet::with_capacity(interface.len());

    let mut starts: Vec<(&End, bool)> = lp.keys().filter(|e| e.side == Side::Dom).map(|e| (*e, true)).collect();
    starts.extend(rp.keys().filter(|e| e.side == Side::Cod).map(|e| (*e, false)));
    starts.sort();

    let mut done: HashSet<&End> = HashSet::new();
    let mut out = Vec::new();
    for (start, start_left) in starts {
        if done.contains(start) {
            continue;
        }
        let (mut here, mut in_left) = (start, start_left);
        let finish = loop {
            let next = if in_left { lp[here] } else { rp[here] };
            let external = if in_left { next.side == Side::Dom } else { next.side == Side::Cod };
            if external {
                break next;
            }
            if !crossed.insert(&next.addr) {
                return Err(Error::CutCycle(End::cod(next.addr.clone())));
            }
            let across = if in_left { End::dom(next.addr.clone()) } else { End::cod(next.addr.clone()) };
            here = if in_left {
                rp.get_key_value(&across).map(|(k, _)| *k)
            } else {
                lp.get_key_value(&across).map(|(k, _)| *k)
            }
            .ok_or_else(|| Error::CutCycle(End::cod(next.addr.clone())))?;
            in_left = !in_left;
        };
        done.insert(start);
        done.insert(finish);
        out.push(Link::new(start.clone(), finish.clone()));
    }

    if let Some(loose) = interface.into_iter().find(|a| !crossed.contains(a)) {
        return Err(Error::CutCycle(End::cod(loose.clone())));
    }
    Ok(out)
}

/// `g . f` (first `f`, then `g`).
pub fn compose(f: &ProofNet, g: &ProofNet) -> Result<ProofNet> {
    if f.cod() != g.dom() {
        return Err(Error::InterfaceMismatch { left: f.cod().clone(), right: g.dom().clone() });
    }
    let links = cut(f.links(), g.links())?;
    Ok(ProofNet::from_parts(f.dom().clone(), g.cod().clone(), links))
}

/// [`compose`] followed by full revalidation of the result.
pub fn compose_checked(f: &ProofNet, g: &ProofNet) -> Result<ProofNet> {
    let h = compose(f, g)?;
    h.revalidate()?;
    Ok(h)
}

fn prefix_end(e: &End, step: Step) -> End {
    End { side: e.side, addr: e.addr.prefixed(&[step]) }
}

/// `f * g : A * B -> A' * B'`.
pub fn tensor_mor(f: &ProofNet, g: &ProofNet) -> ProofNet {
    let links = f
        .links()
        .iter()
        .map(|l| l.map(|e| prefix_end(e, Step::L)))
        .chain(g.links().iter().map(|l| l.map(|e| prefix_end(e, Step::R))))
        .collect();
    ProofNet::from_parts(
        Formula::tensor(f.dom().clone(), g.dom().clone()),
        Formula::tensor(f.cod().clone(), g.cod().clone()),
        links,
    )
}

/// `J(f)(a)`: cut the element `a` of `J(A)` against `f: A -> B`.
pub fn j_map(f: &ProofNet, a: &JElement) -> Result<JElement> {
    if a.formula() != f.dom() {
        return Err(Error::InterfaceMismatch { left: a.formula().clone(), right: f.dom().clone() });
    }
    let links = cut(a.links(), f.links())?;
    Ok(JElement::from_parts(f.cod().clone(), links))
}
