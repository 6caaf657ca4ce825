//! One function per diagram. Each takes the instance formulas and returns a
//! tally of the equations it tested and the first one that failed.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Model, Witness};
use crate::canonical::{
    alpha, dual_of, e, e_inv, iota, iota_inv, l, lin_of, lolli_mor, m, psi_direct, transpose, uncurry,
};
use crate::compose::{compose, identity, j_map, tensor_mor};
use crate::error::Result;
use crate::formula::{dual, lolli, Formula};
use crate::net::{enumerate_hom, enumerate_j, JElement, ProofNet};

/// Equations tested so far and the first failure.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub checked: u64,
    pub witness: Option<Witness>,
    pub vacuous: bool,
}

impl Tally {
    fn fail(&mut self, w: Witness) {
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    fn nets(&mut self, note: &str, lhs: ProofNet, rhs: ProofNet) {
        self.checked += 1;
        if lhs != rhs {
            self.fail(Witness::Nets { note: note.into(), lhs, rhs });
        }
    }

    fn elements(&mut self, note: &str, lhs: JElement, rhs: JElement) {
        self.checked += 1;
        if lhs != rhs {
            self.fail(Witness::Elements { note: note.into(), lhs, rhs });
        }
    }

    fn counts(&mut self, note: &str, lhs: usize, rhs: usize) {
        self.checked += 1;
        if lhs != rhs {
            self.fail(Witness::Counts { note: note.into(), lhs, rhs });
        }
    }

    fn member(&mut self, note: &str, net: &ProofNet, set: &[ProofNet]) {
        self.checked += 1;
        if set.binary_search(net).is_err() {
            self.fail(Witness::Missing { note: note.into(), net: net.clone() });
        }
    }
}

type HomKey = (Formula, Formula);

/// Evaluates diagrams under a [`Model`], caching enumerated hom-sets.
pub struct Checker {
    pub model: Model,
    pub bound: usize,
    pub seed: u64,
    lin_pool: Vec<Formula>,
    homs: RefCell<HashMap<HomKey, Rc<Vec<ProofNet>>>>,
    elems: RefCell<HashMap<Formula, Rc<Vec<JElement>>>>,
}

const CACHE_LIMIT: usize = 20_000;

impl Checker {
    /// `lin_pool` is where `check_lin` draws its `X` and `Y` from.
    pub fn new(model: Model, bound: usize, seed: u64, lin_pool: Vec<Formula>) -> Checker {
        assert!(!lin_pool.is_empty(), "lin pool must be nonempty");
        Checker {
            model,
            bound,
            seed,
            lin_pool,
            homs: RefCell::default(),
            elems: RefCell::default(),
        }
    }

    pub(crate) fn hom(&self, a: &Formula, b: &Formula) -> Result<Rc<Vec<ProofNet>>> {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.homs.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let nets = Rc::new(enumerate_hom(a, b, self.bound)?);
        let mut cache = self.homs.borrow_mut();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, nets.clone());
        Ok(nets)
    }

    pub(crate) fn j(&self, a: &Formula) -> Result<Rc<Vec<JElement>>> {
        if let Some(hit) = self.elems.borrow().get(a) {
            return Ok(hit.clone());
        }
        let els = Rc::new(enumerate_j(a, self.bound)?);
        let mut cache = self.elems.borrow_mut();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(a.clone(), els.clone());
        Ok(els)
    }

    fn sigma(&self, a: &Formula, b: &Formula) -> ProofNet {
        (self.model.sigma)(a, b)
    }

    fn psi(&self, a: &Formula, b: &Formula, c: &Formula) -> ProofNet {
        (self.model.psi)(a, b, c)
    }

    fn curry(&self, f: &ProofNet) -> Result<ProofNet> {
        (self.model.curry)(f)
    }

    pub(crate) fn pentagon(&self, a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let ab = t2(a, b);
        let bc = t2(b, c);
        let cd = t2(c, d);
        let lhs = compose(&alpha(&ab, c, d), &alpha(a, b, &cd))?;
        let rhs = compose(
            &compose(&tensor_mor(&alpha(a, b, c), &identity(d)), &alpha(a, &bc, d))?,
            &tensor_mor(&identity(a), &alpha(b, c, d)),
        )?;
        lhs.revalidate()?;
        rhs.revalidate()?;
        t.nets("pentagon", lhs, rhs);
        Ok(t)
    }

    pub(crate) fn hexagon(&self, a: &Formula, b: &Formula, c: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let lhs = compose(&compose(&alpha(a, b, c), &self.sigma(a, &t2(b, c)))?, &alpha(b, c, a))?;
        let rhs = compose(
            &compose(&tensor_mor(&self.sigma(a, b), &identity(c)), &alpha(b, a, c))?,
            &tensor_mor(&identity(b), &self.sigma(a, c)),
        )?;
        lhs.revalidate()?;
        rhs.revalidate()?;
        t.nets("hexagon", lhs, rhs);
        Ok(t)
    }

    pub(crate) fn sigma_involution(&self, a: &Formula, b: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let s = self.sigma(a, b);
        s.revalidate()?;
        t.nets("sigma_{B,A} . sigma_{A,B} = id", compose(&s, &self.sigma(b, a))?, identity(&t2(a, b)));
        Ok(t)
    }

    pub(crate) fn psicoh(&self, a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let ab = t2(a, b);
        let bc = t2(b, c);
        let via_alpha = compose(
            &compose(&lolli_mor(&alpha(a, b, c), &identity(d)), &self.psi(&ab, c, d))?,
            &self.psi(a, b, &lolli(c, d)),
        )?;
        let via_psi = compose(&self.psi(a, &bc, d), &lolli_mor(&identity(a), &self.psi(b, c, d)))?;
        via_alpha.revalidate()?;
        via_psi.revalidate()?;
        t.nets("psi coherence", via_alpha, via_psi);
        Ok(t)
    }

    pub(crate) fn psi_constructions(&self, a: &Formula, b: &Formula, c: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let derived = self.psi(a, b, c);
        derived.revalidate()?;
        t.nets("psi via curry/eval = psi by relabeling", derived, psi_direct(a, b, c));
        Ok(t)
    }

    pub(crate) fn def_psi(&self, a: &Formula, x: &Formula, y: &Formula, z: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let homs = self.hom(a, &lolli(&t2(x, y), z))?;
        t.vacuous = homs.is_empty();
        let psi = self.psi(x, y, z);
        let assoc = alpha(a, x, y);
        for f in homs.iter() {
            let lhs = compose(f, &psi)?;
            let rhs = self.curry(&self.curry(&compose(&assoc, &uncurry(f)?)?)?)?;
            lhs.revalidate()?;
            t.nets("psi . f = curry(curry(uncurry(f) . alpha))", lhs, rhs);
        }
        Ok(t)
    }

    pub(crate) fn psi_square(&self, a: &Formula, b: &Formula, c: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let els = self.j(&lolli(&t2(a, b), c))?;
        t.vacuous = els.is_empty();
        let psi = self.psi(a, b, c);
        for x in els.iter() {
            let moved = j_map(&psi, x)?;
            moved.revalidate()?;
            t.nets("curry(e(x)) = e(J(psi)(x))", self.curry(&e(x)?)?, e(&moved)?);
        }
        Ok(t)
    }

    pub(crate) fn tensel(&self, a: &Formula, b: &Formula, c: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let (ja, jb, jc) = (self.j(a)?, self.j(b)?, self.j(c)?);
        t.vacuous = ja.is_empty() || jb.is_empty() || jc.is_empty();
        let assoc = alpha(a, b, c);
        for x in ja.iter() {
            for y in jb.iter() {
                let xy = m(x, y);
                for z in jc.iter() {
                    let lhs = j_map(&assoc, &m(&xy, z))?;
                    lhs.revalidate()?;
                    t.elements("J(alpha)(m(m(a,b),c)) = m(a,m(b,c))", lhs, m(x, &m(y, z)));
                }
            }
        }
        Ok(t)
    }

    /// The `(X, Y)` pairs `check_lin` tests at `a`: the first pool entry
    /// twice, plus seeded draws from the pool.
    pub(crate) fn lin_pairs(&self, a: &Formula) -> Vec<(Formula, Formula)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ fnv(&a.to_string()));
        let first = self.lin_pool[0].clone();
        let mut pairs = vec![(first.clone(), first)];
        for _ in 0..LIN_DRAWS {
            let x = self.lin_pool.choose(&mut rng).expect("nonempty pool").clone();
            let y = self.lin_pool.choose(&mut rng).expect("nonempty pool").clone();
            pairs.push((x, y));
        }
        pairs
    }

    pub(crate) fn lin(&self, a: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let els = self.j(a)?;
        t.vacuous = els.is_empty();
        if els.is_empty() {
            return Ok(t);
        }
        for (x, y) in self.lin_pairs(a) {
            let mut arrows: Vec<ProofNet> = Vec::new();
            arrows.extend(self.hom(&x, &y)?.iter().cloned());
            arrows.extend(self.hom(&x, &x)?.iter().cloned());
            for el in els.iter() {
                let ax = lin_of(el, &x);
                ax.revalidate()?;
                let lhs = lin_of(el, &t2(&x, &y));
                let rhs = compose(&tensor_mor(&ax, &identity(&y)), &alpha(a, &x, &y))?;
                t.nets("a_{X*Y} = alpha . (a_X * Y)", lhs, rhs);
                for f in &arrows {
                    let lhs = compose(&ax, &tensor_mor(&identity(a), f))?;
                    let rhs = compose(f, &lin_of(el, f.cod()))?;
                    t.nets("(A * f) . a_X = a_X' . f", lhs, rhs);
                }
            }
        }
        Ok(t)
    }

    pub(crate) fn l_iso(&self, a: &Formula, b: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let els = self.j(&lolli(a, b))?;
        let homs = self.hom(a, b)?;
        t.vacuous = els.is_empty() && homs.is_empty();
        t.counts("|J(A -o B)| = |hom(A, B)|", els.len(), homs.len());
        let mut images = BTreeSet::new();
        for x in els.iter() {
            let lx = l(x)?;
            lx.revalidate()?;
            t.member("l(x) lies in hom(A, B)", &lx, &homs);
            t.nets("l(x) = e(x)", lx.clone(), e(x)?);
            images.insert(lx);
        }
        t.counts("l is injective", images.len(), els.len());
        Ok(t)
    }

    /// The isomorphism chain turning `hom(A * B, C)` into `hom(A, B -o C)`
    /// using only duality: post-compose with `iota_C`, pre-compose with the
    /// symmetry, transpose, dualize, pre-compose with `iota_A`.
    pub(crate) fn curry_by_duality(&self, f: &ProofNet) -> Result<ProofNet> {
        let (a, b) = f.dom().as_tensor().ok_or_else(|| crate::Error::ShapeMismatch {
            expected: "a tensor domain",
            found: f.dom().clone(),
        })?;
        let to_double_dual = compose(f, &iota(f.cod()))?;
        let swapped = compose(&self.sigma(b, a), &to_double_dual)?;
        let transposed = transpose(&swapped)?;
        compose(&iota(a), &dual_of(&transposed))
    }

    pub(crate) fn sstac(&self, a: &Formula, b: &Formula, c: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let slots = distinct(&[a, b, c]);

        for x in &slots {
            let i = iota(x);
            i.revalidate()?;
            t.nets("iota^-1 . iota = id", compose(&i, &iota_inv(x))?, identity(x));
            t.nets("iota . iota^-1 = id", compose(&iota_inv(x), &i)?, identity(i.cod()));
        }

        for x in &slots {
            for y in &slots {
                let homs = self.hom(x, y)?;
                let duals = self.hom(&dual(y), &dual(x))?;
                t.counts("|hom(X, Y)| = |hom(Y^, X^)|", homs.len(), duals.len());
                let mut images = BTreeSet::new();
                for f in homs.iter() {
                    let df = dual_of(f);
                    t.member("dual_of(f) lies in hom(Y^, X^)", &df, &duals);
                    let ddf = dual_of(&df);
                    t.nets("iota_Y . f = f^^ . iota_X", compose(f, &iota(y))?, compose(&iota(x), &ddf)?);
                    images.insert(df);
                }
                t.counts("dual_of is injective", images.len(), homs.len());
            }
        }

        let homs = self.hom(&t2(a, b), c)?;
        t.vacuous = homs.is_empty();
        for f in homs.iter() {
            let chain = self.curry_by_duality(f)?;
            chain.revalidate()?;
            t.nets("curry through iota, sigma, transpose, duality = curry", chain, self.curry(f)?);
        }
        Ok(t)
    }

    pub(crate) fn transpose(&self, a: &Formula, b: &Formula, c: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let homs = self.hom(&t2(a, b), &dual(c))?;
        let targets = self.hom(&t2(a, c), &dual(b))?;
        t.vacuous = homs.is_empty() && targets.is_empty();
        t.counts("|hom(A * B, C^)| = |hom(A * C, B^)|", homs.len(), targets.len());
        let slots = distinct(&[a, b, c]);
        let mut images = BTreeSet::new();
        for f in homs.iter() {
            let tf = transpose(f)?;
            t.member("transpose(f) lies in hom(A * C, B^)", &tf, &targets);
            t.nets("transpose is an involution", transpose(&tf)?, f.clone());
            for x in &slots {
                for h in self.hom(x, a)?.iter() {
                    let lhs = transpose(&compose(&tensor_mor(h, &identity(b)), f)?)?;
                    let rhs = compose(&tensor_mor(h, &identity(c)), &tf)?;
                    t.nets("natural in A", lhs, rhs);
                }
                for k in self.hom(x, b)?.iter() {
                    let lhs = transpose(&compose(&tensor_mor(&identity(a), k), f)?)?;
                    let rhs = compose(&tf, &dual_of(k))?;
                    t.nets("natural in B", lhs, rhs);
                }
                for g in self.hom(x, c)?.iter() {
                    let lhs = transpose(&compose(f, &dual_of(g))?)?;
                    let rhs = compose(&tensor_mor(&identity(a), g), &tf)?;
                    t.nets("natural in C", lhs, rhs);
                }
            }
            images.insert(tf);
        }
        t.counts("transpose is injective", images.len(), homs.len());
        Ok(t)
    }

    pub(crate) fn curry_bij(&self, a: &Formula, b: &Formula, c: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let homs = self.hom(&t2(a, b), c)?;
        let curried = self.hom(a, &lolli(b, c))?;
        t.vacuous = homs.is_empty() && curried.is_empty();
        t.counts("|hom(A * B, C)| = |hom(A, B -o C)|", homs.len(), curried.len());
        for f in homs.iter() {
            let g = self.curry(f)?;
            t.member("curry(f) lies in hom(A, B -o C)", &g, &curried);
            t.nets("uncurry . curry = id", uncurry(&g)?, f.clone());
        }
        for g in curried.iter() {
            t.nets("curry . uncurry = id", self.curry(&uncurry(g)?)?, g.clone());
        }
        Ok(t)
    }

    pub(crate) fn e_bij(&self, a: &Formula, b: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let els = self.j(&lolli(a, b))?;
        let homs = self.hom(a, b)?;
        t.vacuous = els.is_empty() && homs.is_empty();
        t.counts("|J(A -o B)| = |hom(A, B)|", els.len(), homs.len());
        for x in els.iter() {
            let f = e(x)?;
            t.member("e(x) lies in hom(A, B)", &f, &homs);
            t.elements("e^-1 . e = id", e_inv(&f), x.clone());
        }
        for f in homs.iter() {
            t.nets("e . e^-1 = id", e(&e_inv(f))?, f.clone());
        }
        Ok(t)
    }

    pub(crate) fn dual_bij(&self, a: &Formula, b: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let homs = self.hom(a, b)?;
        let duals = self.hom(&dual(b), &dual(a))?;
        t.vacuous = homs.is_empty() && duals.is_empty();
        t.counts("|hom(A, B)| = |hom(B^, A^)|", homs.len(), duals.len());
        let mut images = BTreeSet::new();
        for f in homs.iter() {
            let df = dual_of(f);
            t.member("dual_of(f) lies in hom(B^, A^)", &df, &duals);
            let back = compose(&compose(&iota(a), &dual_of(&df))?, &iota_inv(b))?;
            t.nets("iota^-1 . f^^ . iota = f", back, f.clone());
            images.insert(df);
        }
        t.counts("dual_of is injective", images.len(), homs.len());
        Ok(t)
    }

    pub(crate) fn category_laws(&self, a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> Result<Tally> {
        let mut t = Tally::default();
        let (fs, gs, hs) = (self.hom(a, b)?, self.hom(b, c)?, self.hom(c, d)?);
        t.vacuous = fs.is_empty() || gs.is_empty() || hs.is_empty();
        for f in fs.iter() {
            t.nets("f . id = f", compose(&identity(a), f)?, f.clone());
            t.nets("id . f = f", compose(f, &identity(b))?, f.clone());
        }
        let mut gf = Vec::with_capacity(fs.len() * gs.len());
        for f in fs.iter() {
            for g in gs.iter() {
                let k = compose(f, g)?;
                k.revalidate()?;
                gf.push(k);
            }
        }
        let mut hg = Vec::with_capacity(gs.len() * hs.len());
        for g in gs.iter() {
            for h in hs.iter() {
                let k = compose(g, h)?;
                k.revalidate()?;
                hg.push(k);
            }
        }
        for (i, _) in fs.iter().enumerate() {
            for j in 0..gs.len() {
                for (k, h) in hs.iter().enumerate() {
                    let left = compose(&gf[i * gs.len() + j], h)?;
                    left.revalidate()?;
                    let right = compose(&fs[i], &hg[j * hs.len() + k])?;
                    t.nets("(h . g) . f = h . (g . f)", left, right);
                }
            }
        }
        Ok(t)
    }
}

const LIN_DRAWS: usize = 3;

fn t2(a: &Formula, b: &Formula) -> Formula {
    Formula::tensor(a.clone(), b.clone())
}

fn distinct<'a>(fs: &[&'a Formula]) -> Vec<&'a Formula> {
    let mut out: Vec<&Formula> = Vec::new();
    for f in fs {
        if !out.contains(f) {
            out.push(f);
        }
    }
    out
}

/// FNV-1a, used to derive per-instance seeds that do not depend on the
/// standard library's hasher.
pub(crate) fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}
