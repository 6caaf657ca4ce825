//! Canonical morphisms of the proof-net category.
//!
//! Almost everything here is a *relabeling*: the net links each leaf of one
//! formula to the leaf it becomes in another, or rewrites the endpoints of a
//! given net by address prefix. Relabelings preserve the de Morgan tree up to
//! isomorphism, so they preserve correctness. The exceptions are [`eval`],
//! [`psi`], [`psi_inv`] and [`l`], which are composites built from the
//! relabelings, and [`psi_direct`], which exists to cross-check [`psi`].

use crate::compose::{compose, identity, tensor_mor};
use crate::error::{Error, Result};
use crate::formula::{leaves, lolli, Formula, Side, Step};
use crate::net::{End, JElement, Link, ProofNet};

use Step::{L, N, R};

/// One prefix rewrite: endpoints on `from.0` whose address starts with
/// `from.1` move to `to.0`, with that prefix replaced by `to.1`.
type Rule = ((Side, &'static [Step]), (Side, &'static [Step]));

fn rewrite(rules: &[Rule], e: &End) -> End {
    for &((side, prefix), (to_side, to_prefix)) in rules {
        if e.side == side {
            if let Some(rest) = e.addr.strip(prefix) {
                return End { side: to_side, addr: rest.prefixed(to_prefix) };
            }
        }
    }
    panic!("no relabeling rule covers endpoint {e}")
}

/// Net `dom -> cod` linking each leaf of `dom` to its image under `rules`
/// (rules act on codomain-side addresses of `dom`).
fn relabeling(dom: &Formula, cod: Formula, rules: &[Rule]) -> ProofNet {
    let links = leaves(dom, Side::Cod)
        .into_iter()
        .map(|leaf| {
            let image = rewrite(rules, &End::cod(leaf.addr.clone()));
            Link::new(End::dom(leaf.addr), image)
        })
        .collect();
    ProofNet::from_parts(dom.clone(), cod, links)
}

fn relink(links: &[Link], rules: &[Rule]) -> Vec<Link> {
    links.iter().map(|l| l.map(|e| rewrite(rules, e))).collect()
}

fn shape(expected: &'static str, found: &Formula) -> Error {
    Error::ShapeMismatch { expected, found: found.clone() }
}

const C: Side = Side::Cod;
const D: Side = Side::Dom;

/// `alpha_{A,B,C} : (A * B) * C -> A * (B * C)`.
pub fn alpha(a: &Formula, b: &Formula, c: &Formula) -> ProofNet {
    let dom = Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone());
    let cod = Formula::tensor(a.clone(), Formula::tensor(b.clone(), c.clone()));
    relabeling(&dom, cod, &[((C, &[L, L]), (C, &[L])), ((C, &[L, R]), (C, &[R, L])), ((C, &[R]), (C, &[R, R]))])
}

/// `alpha^-1_{A,B,C} : A * (B * C) -> (A * B) * C`.
pub fn alpha_inv(a: &Formula, b: &Formula, c: &Formula) -> ProofNet {
    let dom = Formula::tensor(a.clone(), Formula::tensor(b.clone(), c.clone()));
    let cod = Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone());
    relabeling(&dom, cod, &[((C, &[L]), (C, &[L, L])), ((C, &[R, L]), (C, &[L, R])), ((C, &[R, R]), (C, &[R]))])
}

/// `sigma_{A,B} : A * B -> B * A`.
pub fn sigma(a: &Formula, b: &Formula) -> ProofNet {
    let dom = Formula::tensor(a.clone(), b.clone());
    let cod = Formula::tensor(b.clone(), a.clone());
    relabeling(&dom, cod, &[((C, &[L]), (C, &[R])), ((C, &[R]), (C, &[L]))])
}

/// The curry bijection `hom(A * B, C) -> hom(A, B -o C)`.
pub fn curry(f: &ProofNet) -> Result<ProofNet> {
    let (a, b) = f.dom().as_tensor().ok_or_else(|| shape("a tensor domain", f.dom()))?;
    let rules: [Rule; 3] = [((D, &[L]), (D, &[])), ((D, &[R]), (C, &[N, L])), ((C, &[]), (C, &[N, R, N]))];
    Ok(ProofNet::from_parts(a.clone(), lolli(b, f.cod()), relink(f.links(), &rules)))
}

/// Inverse of [`curry`].
pub fn uncurry(g: &ProofNet) -> Result<ProofNet> {
    let (b, c) = g.cod().as_lolli().ok_or_else(|| shape("a codomain of the form B -o C", g.cod()))?;
    let rules: [Rule; 3] = [((D, &[]), (D, &[L])), ((C, &[N, L]), (D, &[R])), ((C, &[N, R, N]), (C, &[]))];
    Ok(ProofNet::from_parts(Formula::tensor(g.dom().clone(), b.clone()), c.clone(), relink(g.links(), &rules)))
}

/// Evaluation `(A -o B) * A -> B`, the counit of currying.
pub fn eval(a: &Formula, b: &Formula) -> ProofNet {
    uncurry(&identity(&lolli(a, b))).expect("identity on a lolli has a lolli codomain")
}

/// `psi_{A,B,C} : (A * B) -o C -> A -o (B -o C)`, obtained by currying
/// `eval . alpha` twice.
pub fn psi(a: &Formula, b: &Formula, c: &Formula) -> ProofNet {
    let ab = Formula::tensor(a.clone(), b.clone());
    let m = lolli(&ab, c);
    let body = compose(&alpha(&m, a, b), &eval(&ab, c)).expect("alpha and eval share (A * B) -o C * (A * B)");
    let once = curry(&body).expect("tensor domain");
    curry(&once).expect("tensor domain")
}

/// `psi` as a direct address relabeling: the `A`, `B`, `C` leaves at
/// `NLL`, `NLR`, `NRN` move to `NL`, `NRNNL`, `NRNNRN`.
pub fn psi_direct(a: &Formula, b: &Formula, c: &Formula) -> ProofNet {
    let dom = lolli(&Formula::tensor(a.clone(), b.clone()), c);
    let cod = lolli(a, &lolli(b, c));
    relabeling(
        &dom,
        cod,
        &[
            ((C, &[N, L, L]), (C, &[N, L])),
            ((C, &[N, L, R]), (C, &[N, R, N, N, L])),
            ((C, &[N, R, N]), (C, &[N, R, N, N, R, N])),
        ],
    )
}

/// `psi^-1 : A -o (B -o C) -> (A * B) -o C`, obtained by uncurrying the
/// identity twice and reassociating.
pub fn psi_inv(a: &Formula, b: &Formula, c: &Formula) -> ProofNet {
    let m = lolli(a, &lolli(b, c));
    let twice = uncurry(&uncurry(&identity(&m)).expect("lolli codomain")).expect("lolli codomain");
    let body = compose(&alpha_inv(&m, a, b), &twice).expect("M * (A * B) reassociates to (M * A) * B");
    curry(&body).expect("tensor domain")
}

/// `e_{A,B} : J(A -o B) -> hom(A, B)`.
pub fn e(x: &JElement) -> Result<ProofNet> {
    let (a, b) = x.formula().as_lolli().ok_or_else(|| shape("a formula of the form A -o B", x.formula()))?;
    let rules: [Rule; 2] = [((C, &[N, L]), (D, &[])), ((C, &[N, R, N]), (C, &[]))];
    Ok(ProofNet::from_parts(a.clone(), b.clone(), relink(x.links(), &rules)))
}

/// Inverse of [`e`].
pub fn e_inv(f: &ProofNet) -> JElement {
    let rules: [Rule; 2] = [((D, &[]), (C, &[N, L])), ((C, &[]), (C, &[N, R, N]))];
    JElement::from_parts(lolli(f.dom(), f.cod()), relink(f.links(), &rules))
}

/// The duality functor on morphisms: `f: A -> B` gives `B^ -> A^`.
pub fn dual_of(f: &ProofNet) -> ProofNet {
    let rules: [Rule; 2] = [((D, &[]), (C, &[N])), ((C, &[]), (D, &[N]))];
    ProofNet::from_parts(Formula::neg(f.cod().clone()), Formula::neg(f.dom().clone()), relink(f.links(), &rules))
}

/// `iota_A : A -> A^^`.
pub fn iota(a: &Formula) -> ProofNet {
    relabeling(a, Formula::neg(Formula::neg(a.clone())), &[((C, &[]), (C, &[N, N]))])
}

/// `iota^-1_A : A^^ -> A`.
pub fn iota_inv(a: &Formula) -> ProofNet {
    relabeling(&Formula::neg(Formula::neg(a.clone())), a.clone(), &[((C, &[N, N]), (C, &[]))])
}

/// `hom(A * B, C^) -> hom(A * C, B^)`; an involution.
pub fn transpose(f: &ProofNet) -> Result<ProofNet> {
    let (a, b) = f.dom().as_tensor().ok_or_else(|| shape("a tensor domain", f.dom()))?;
    let c = f.cod().as_neg().ok_or_else(|| shape("a negated codomain", f.cod()))?;
    let rules: [Rule; 3] = [((D, &[L]), (D, &[L])), ((D, &[R]), (C, &[N])), ((C, &[N]), (D, &[R]))];
    Ok(ProofNet::from_parts(
        Formula::tensor(a.clone(), c.clone()),
        Formula::neg(b.clone()),
        relink(f.links(), &rules),
    ))
}

/// The internal hom on morphisms: for `f: A' -> A` and `g: B -> B'`,
/// `f -o g : (A -o B) -> (A' -o B')`.
pub fn lolli_mor(f: &ProofNet, g: &ProofNet) -> ProofNet {
    dual_of(&tensor_mor(f, &dual_of(g)))
}

/// Tensor of elements `m(a, b) = a * b`.
pub fn m(a: &JElement, b: &JElement) -> JElement {
    let rules: [Rule; 2] = [((C, &[]), (C, &[L])), ((C, &[]), (C, &[R]))];
    let left = relink(a.links(), &rules[..1]);
    let right = relink(b.links(), &rules[1..]);
    JElement::from_parts(
        Formula::tensor(a.formula().clone(), b.formula().clone()),
        left.into_iter().chain(right).collect(),
    )
}

/// The component at `x` of the linear element determined by `a`:
/// `a_X : X -> A * X`.
pub fn lin_of(a: &JElement, x: &Formula) -> ProofNet {
    let from_a = relink(a.links(), &[((C, &[]), (C, &[L]))]);
    let through = leaves(x, Side::Cod).into_iter().map(|leaf| {
        let image = leaf.addr.prefixed(&[R]);
        Link::new(End::dom(leaf.addr), End::cod(image))
    });
    ProofNet::from_parts(
        x.clone(),
        Formula::tensor(a.formula().clone(), x.clone()),
        from_a.into_iter().chain(through).collect(),
    )
}

/// `l_{A,B}(x) = eval . x_A`.
pub fn l(x: &JElement) -> Result<ProofNet> {
    let (a, b) = x.formula().as_lolli().ok_or_else(|| shape("a formula of the form A -o B", x.formula()))?;
    compose(&lin_of(x, a), &eval(a, b))
}
