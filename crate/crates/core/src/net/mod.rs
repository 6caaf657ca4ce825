//! Proof nets as morphisms, and single-conclusion nets as elements.
//!
//! A morphism `A -> B` is a perfect matching on the leaves of `A` (tagged
//! [`Side::Dom`]) and `B` (tagged [`Side::Cod`]) in which every link joins
//! two occurrences of the same variable with opposite effective polarity,
//! and which passes the Danos-Regnier switching criterion on the two-formula
//! sequent. An element of `J(A)` is the same thing with no domain.

mod correctness;
mod enumerate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use correctness::{dr_correct, dr_correct_counted, element_correct, Correctness, Failure, ParChoice, Switching};
pub use enumerate::{enumerate_hom, enumerate_j, matchings, DEFAULT_MAX_LEAVES};

use crate::error::{Error, MatchingProblem, Result};
use crate::formula::{leaves, Addr, Formula, LeafRef, Side};

/// One endpoint of an axiom link.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct End {
    pub side: Side,
    pub addr: Addr,
}

impl End {
    pub fn dom(addr: Addr) -> End {
        End { side: Side::Dom, addr }
    }

    pub fn cod(addr: Addr) -> End {
        End { side: Side::Cod, addr }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Dom => "dom",
            Side::Cod => "cod",
        };
        write!(f, "{side}:\"{}\"", self.addr)
    }
}

/// An unordered pair of endpoints, stored with the smaller end first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link(End, End);

impl Link {
    pub fn new(a: End, b: End) -> Link {
        if a <= b {
            Link(a, b)
        } else {
            Link(b, a)
        }
    }

    pub fn ends(&self) -> (&End, &End) {
        (&self.0, &self.1)
    }

    pub fn map(&self, mut f: impl FnMut(&End) -> End) -> Link {
        Link::new(f(&self.0), f(&self.1))
    }
}

impl Serialize for Link {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.0, &self.1].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Link {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[End; 2]>::deserialize(deserializer)?;
        Ok(Link::new(a, b))
    }
}

fn sorted(mut links: Vec<Link>) -> Vec<Link> {
    links.sort();
    links
}

/// A validated proof net `dom -> cod`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProofNet {
    dom: Formula,
    cod: Formula,
    links: Vec<Link>,
}

/// A validated single-conclusion net: an element of `J(formula)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JElement {
    formula: Formula,
    links: Vec<Link>,
}

impl ProofNet {
    /// Checked constructor: perfect matching, complementarity, then the
    /// switching criterion.
    pub fn new(dom: Formula, cod: Formula, links: Vec<Link>) -> Result<ProofNet> {
        let net = ProofNet::from_parts(dom, cod, links);
        net.check_structure()?;
        match dr_correct(&net) {
            Correctness::Correct => Ok(net),
            Correctness::Incorrect(witness) => Err(Error::NotCorrect(witness)),
        }
    }

    /// Assembles a net without any validation. Intended for constructions
    /// that are correct by shape (relabelings, path tracing) and for tests
    /// that need deliberately broken linkings.
    pub fn from_parts(dom: Formula, cod: Formula, links: Vec<Link>) -> ProofNet {
        ProofNet { dom, cod, links: sorted(links) }
    }

    pub fn dom(&self) -> &Formula {
        &self.dom
    }

    pub fn cod(&self) -> &Formula {
        &self.cod
    }

    /// Links in canonical (sorted) order.
    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn into_parts(self) -> (Formula, Formula, Vec<Link>) {
        (self.dom, self.cod, self.links)
    }

    /// Checks perfect matching and complementarity, but not correctness.
    pub fn check_structure(&self) -> Result<()> {
        let mut all = leaves(&self.dom, Side::Dom);
        all.extend(leaves(&self.cod, Side::Cod));
        check_matching(&all, &self.links)
    }

    /// Re-runs every check of [`ProofNet::new`] on an existing value.
    pub fn revalidate(&self) -> Result<()> {
        self.check_structure()?;
        match dr_correct(self) {
            Correctness::Correct => Ok(()),
            Correctness::Incorrect(w) => Err(Error::NotCorrect(w)),
        }
    }

    pub fn to_raw(&self) -> RawNet {
        RawNet { dom: self.dom.clone(), cod: self.cod.clone(), links: self.links.clone() }
    }
}

impl JElement {
    /// Checked constructor; every endpoint must be on [`Side::Cod`].
    pub fn new(formula: Formula, links: Vec<Link>) -> Result<JElement> {
        let el = JElement::from_parts(formula, links);
        el.revalidate()?;
        Ok(el)
    }

    pub fn from_parts(formula: Formula, links: Vec<Link>) -> JElement {
        JElement { formula, links: sorted(links) }
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn into_parts(self) -> (Formula, Vec<Link>) {
        (self.formula, self.links)
    }

    pub fn check_structure(&self) -> Result<()> {
        check_matching(&leaves(&self.formula, Side::Cod), &self.links)
    }

    pub fn revalidate(&self) -> Result<()> {
        self.check_structure()?;
        match element_correct(self) {
            Correctness::Correct => Ok(()),
            Correctness::Incorrect(w) => Err(Error::NotCorrect(w)),
        }
    }

    pub fn to_raw(&self) -> RawElement {
        RawElement { formula: self.formula.clone(), links: self.links.clone() }
    }
}

fn check_matching(all: &[LeafRef], links: &[Link]) -> Result<()> {
    let index: BTreeMap<End, &LeafRef> =
        all.iter().map(|l| (End { side: l.side, addr: l.addr.clone() }, l)).collect();
    let mut used: BTreeMap<&End, bool> = index.keys().map(|e| (e, false)).collect();
    for link in links {
        let (a, b) = link.ends();
        for end in [a, b] {
            match used.get_mut(end) {
                None => return Err(Error::UnknownLeaf(end.clone())),
                Some(seen) if *seen => {
                    return Err(Error::NotPerfectMatching { end: end.clone(), problem: MatchingProblem::Reused })
                }
                Some(seen) => *seen = true,
            }
        }
        let (la, lb) = (index[a], index[b]);
        if la.var != lb.var || la.polarity == lb.polarity {
            return Err(Error::PolarityMismatch(a.clone(), b.clone()));
        }
    }
    if let Some((end, _)) = used.iter().find(|(_, seen)| !**seen) {
        return Err(Error::NotPerfectMatching { end: (*end).clone(), problem: MatchingProblem::Unused });
    }
    Ok(())
}

/// Wire form of a net: `{"dom": .., "cod": .., "links": [[end, end], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawNet {
    pub cod: Formula,
    pub dom: Formula,
    pub links: Vec<Link>,
}

/// Wire form of an element: a net without `"dom"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawElement {
    pub formula: Formula,
    pub links: Vec<Link>,
}

impl RawNet {
    pub fn validate(self) -> Result<ProofNet> {
        ProofNet::new(self.dom, self.cod, self.links)
    }
}

impl RawElement {
    pub fn validate(self) -> Result<JElement> {
        JElement::new(self.formula, self.links)
    }
}

impl Serialize for ProofNet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}

impl Serialize for JElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}

impl fmt::Display for ProofNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {{", self.dom, self.cod)?;
        for (i, l) in self.links.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{} -- {}", l.0, l.1)?;
        }
        f.write_str(" }")
    }
}

impl fmt::Display for JElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|- {} {{", self.formula)?;
        for (i, l) in self.links.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}\"{}\" -- \"{}\"", l.0.addr, l.1.addr)?;
        }
        f.write_str(" }")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{addr, parse};

    fn link(a: End, b: End) -> Link {
        Link::new(a, b)
    }

    #[test]
    fn identity_on_atom() {
        let p = parse("p").unwrap();
        let net = ProofNet::new(p.clone(), p, vec![link(End::dom(addr("")), End::cod(addr("")))]).unwrap();
        assert_eq!(net.links().len(), 1);
    }

    #[test]
    fn intro_net_is_valid() {
        let net = ProofNet::new(
            parse("p").unwrap(),
            parse("(p * (q * q^)^)").unwrap(),
            vec![
                link(End::dom(addr("")), End::cod(addr("L"))),
                link(End::cod(addr("RNL")), End::cod(addr("RNRN"))),
            ],
        );
        assert!(net.is_ok(), "{net:?}");
    }

    #[test]
    fn self_dual_element_is_rejected_by_switching() {
        let err = JElement::new(parse("(p * p^)").unwrap(), vec![link(End::cod(addr("L")), End::cod(addr("RN")))])
            .unwrap_err();
        match err {
            Error::NotCorrect(w) => {
                assert_eq!(w.failure, Failure::Cycle);
                assert!(w.choices.is_empty());
            }
            other => panic!("expected NotCorrect, got {other:?}"),
        }
    }

    #[test]
    fn matching_errors() {
        let p = parse("p").unwrap();
        let pp = parse("(p * p)").unwrap();
        let unused = ProofNet::new(pp.clone(), pp.clone(), vec![link(End::dom(addr("L")), End::cod(addr("L")))]);
        assert!(matches!(unused, Err(Error::NotPerfectMatching { problem: MatchingProblem::Unused, .. })));
        let reused = ProofNet::new(
            pp.clone(),
            pp.clone(),
            vec![link(End::dom(addr("L")), End::cod(addr("L"))), link(End::dom(addr("R")), End::cod(addr("L")))],
        );
        assert!(matches!(reused, Err(Error::NotPerfectMatching { problem: MatchingProblem::Reused, .. })));
        let same_pol = ProofNet::new(pp.clone(), pp.clone(), vec![
            link(End::dom(addr("L")), End::dom(addr("R"))),
            link(End::cod(addr("L")), End::cod(addr("R"))),
        ]);
        assert!(matches!(same_pol, Err(Error::PolarityMismatch(..))));
        let wrong_var = ProofNet::new(p.clone(), parse("q").unwrap(), vec![link(End::dom(addr("")), End::cod(addr("")))]);
        assert!(matches!(wrong_var, Err(Error::PolarityMismatch(..))));
        let unknown = ProofNet::new(p.clone(), p, vec![link(End::dom(addr("L")), End::cod(addr("")))]);
        assert!(matches!(unknown, Err(Error::UnknownLeaf(_))));
    }

    #[test]
    fn json_wire_format() {
        let p = parse("p").unwrap();
        let net = ProofNet::new(p.clone(), Formula::neg(Formula::neg(p)), vec![link(End::dom(addr("")), End::cod(addr("NN")))])
            .unwrap();
        let json = serde_json::to_string(&net).unwrap();
        assert_eq!(
            json,
            r#"{"cod":{"neg":{"neg":{"var":"p"}}},"dom":{"var":"p"},"links":[[{"side":"dom","addr":""},{"side":"cod","addr":"NN"}]]}"#
        );
        let raw: RawNet = serde_json::from_str(&json).unwrap();
        assert_eq!(raw.validate().unwrap(), net);
    }
}
