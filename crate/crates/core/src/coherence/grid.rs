//! The formula grid and the tuple spaces diagrams are instantiated over.
//!
//! Formulas are never materialized wholesale. The grid counts formulas by
//! leaf count, negation budget and *signature* (for each variable, positive
//! minus negative occurrences when read as a codomain), and unranks an index
//! into a formula on demand. A hom-set or element set can only be nonempty
//! when its sequent is balanced, which is a linear condition on the slot
//! signatures; [`TupleSpace`] counts and unranks exactly the tuples meeting
//! such conditions, so unbalanced (provably vacuous) tuples are accounted
//! for without being visited.

use std::collections::BTreeMap;

use crate::formula::Formula;

/// Per-variable occurrence balance.
pub type Sig = Vec<i16>;

fn add(a: &Sig, b: &Sig) -> Sig {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &Sig, k: i16) -> Sig {
    a.iter().map(|x| x * k).collect()
}

type Hist = BTreeMap<Sig, u128>;

/// All formulas over `vars` with between 1 and `max_leaves` leaves and at
/// most `neg_depth` negations on any root-to-leaf path.
#[derive(Debug, Clone)]
pub struct Grid {
    vars: Vec<String>,
    atoms: Vec<Formula>,
    neg_depth: usize,
    max_leaves: usize,
    // [n][d]: counts by signature, split into non-negated and total
    base: Vec<Vec<Hist>>,
    total: Vec<Vec<Hist>>,
    // [n][d]: plain counts
    base_n: Vec<Vec<u128>>,
    total_n: Vec<Vec<u128>>,
}

impl Grid {
    pub fn new(vars: &[String], max_leaves: usize, neg_depth: usize) -> Grid {
        assert!(!vars.is_empty(), "grid needs at least one variable");
        let v = vars.len();
        let empty = || vec![Hist::new(); neg_depth + 1];
        let mut base: Vec<Vec<Hist>> = vec![empty(); max_leaves + 1];
        let mut total: Vec<Vec<Hist>> = vec![empty(); max_leaves + 1];
        for n in 1..=max_leaves {
            for d in 0..=neg_depth {
                let mut h = Hist::new();
                if n == 1 {
                    for i in 0..v {
                        let mut s = vec![0; v];
                        s[i] = 1;
                        h.insert(s, 1);
                    }
                } else {
                    for k in 1..n {
                        for (s1, c1) in &total[k][d] {
                            for (s2, c2) in &total[n - k][d] {
                                *h.entry(add(s1, s2)).or_default() += c1 * c2;
                            }
                        }
                    }
                }
                let mut t = h.clone();
                if d > 0 {
                    for (s, c) in &total[n][d - 1] {
                        *t.entry(scale(s, -1)).or_default() += c;
                    }
                }
                base[n][d] = h;
                total[n][d] = t;
            }
        }
        let sum = |h: &Hist| h.values().sum::<u128>();
        let base_n = base.iter().map(|row| row.iter().map(sum).collect()).collect();
        let total_n = total.iter().map(|row| row.iter().map(sum).collect()).collect();
        Grid { vars: vars.to_vec(), atoms: vars.iter().map(|v| Formula::var(v)).collect(), neg_depth, max_leaves, base, total, base_n, total_n }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn max_leaves(&self) -> usize {
        self.max_leaves
    }

    pub fn neg_depth(&self) -> usize {
        self.neg_depth
    }

    /// Number of grid formulas with exactly `n` leaves.
    pub fn count(&self, n: usize) -> u128 {
        self.total_n[n][self.neg_depth]
    }

    /// Number of grid formulas with `n` leaves and signature `sig`.
    pub fn count_sig(&self, n: usize, sig: &Sig) -> u128 {
        self.total[n][self.neg_depth].get(sig).copied().unwrap_or(0)
    }

    /// Signature classes at `n` leaves with their sizes, in a fixed order.
    pub fn classes(&self, n: usize) -> &Hist {
        &self.total[n][self.neg_depth]
    }

    /// The `idx`-th formula with `n` leaves, in grid order: un-negated
    /// formulas first (atoms by variable order, tensors by split point), then
    /// negations.
    pub fn nth(&self, n: usize, idx: u128) -> Formula {
        self.nth_at(n, self.neg_depth, idx)
    }

    fn nth_at(&self, n: usize, d: usize, mut idx: u128) -> Formula {
        let base = self.base_n[n][d];
        if idx >= base {
            return Formula::neg(self.nth_at(n, d - 1, idx - base));
        }
        if n == 1 {
            return self.atoms[idx as usize].clone();
        }
        for k in 1..n {
            let right = self.total_n[n - k][d];
            let block = self.total_n[k][d] * right;
            if idx < block {
                return Formula::tensor(self.nth_at(k, d, idx / right), self.nth_at(n - k, d, idx % right));
            }
            idx -= block;
        }
        unreachable!("index out of range for grid size {n}")
    }

    /// The `idx`-th formula with `n` leaves and signature `sig`.
    pub fn nth_sig(&self, n: usize, sig: &Sig, idx: u128) -> Formula {
        self.nth_sig_at(n, self.neg_depth, sig, idx)
    }

    fn nth_sig_at(&self, n: usize, d: usize, sig: &Sig, mut idx: u128) -> Formula {
        let base = self.base[n][d].get(sig).copied().unwrap_or(0);
        if idx >= base {
            return Formula::neg(self.nth_sig_at(n, d - 1, &scale(sig, -1), idx - base));
        }
        if n == 1 {
            let var = sig.iter().position(|&x| x == 1).expect("atom signature");
            return self.atoms[var].clone();
        }
        for k in 1..n {
            for (s1, c1) in &self.total[k][d] {
                let s2: Sig = sig.iter().zip(s1).map(|(x, y)| x - y).collect();
                let Some(c2) = self.total[n - k][d].get(&s2) else { continue };
                let block = c1 * c2;
                if idx < block {
                    return Formula::tensor(
                        self.nth_sig_at(k, d, s1, idx / c2),
                        self.nth_sig_at(n - k, d, &s2, idx % c2),
                    );
                }
                idx -= block;
            }
        }
        unreachable!("index out of range for signature class")
    }

    /// Signature of an arbitrary formula over this grid's variables.
    pub fn signature(&self, f: &Formula) -> Sig {
        let mut s = vec![0; self.vars.len()];
        fn go(f: &Formula, sign: i16, vars: &[String], s: &mut Sig) {
            match f {
                Formula::Var(name) => {
                    if let Some(i) = vars.iter().position(|v| **v == **name) {
                        s[i] += sign;
                    }
                }
                Formula::Tensor(a, b) => {
                    go(a, sign, vars, s);
                    go(b, sign, vars, s);
                }
                Formula::Neg(a) => go(a, -sign, vars, s),
            }
        }
        go(f, 1, &self.vars, &mut s);
        s
    }
}

/// Every grid formula up to `max_leaves`, ordered by leaf count and then
/// grid order.
pub fn formula_grid(vars: &[String], max_leaves: usize, neg_depth: usize) -> Vec<Formula> {
    let grid = Grid::new(vars, max_leaves, neg_depth);
    (1..=max_leaves).flat_map(|n| (0..grid.count(n)).map(move |i| (n, i))).map(|(n, i)| grid.nth(n, i)).collect()
}

/// A balance condition on some slots of a tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// `sum coeff_i * sig(slot_i) = 0`, coefficients `+1` or `-1`.
    Sum(Vec<(usize, i16)>),
    /// All listed slots have the same signature.
    Equal(Vec<usize>),
}

impl Constraint {
    fn slots(&self) -> Vec<usize> {
        match self {
            Constraint::Sum(terms) => terms.iter().map(|t| t.0).collect(),
            Constraint::Equal(slots) => slots.clone(),
        }
    }
}

#[derive(Debug, Clone)]
enum Factor {
    Free { slot: usize, n: usize, count: u128 },
    Bound { slots: Vec<usize>, sizes: Vec<usize>, assignments: Vec<(Vec<Sig>, u128)>, count: u128 },
}

impl Factor {
    fn count(&self) -> u128 {
        match self {
            Factor::Free { count, .. } | Factor::Bound { count, .. } => *count,
        }
    }
}

#[derive(Debug, Clone)]
struct Block {
    factors: Vec<Factor>,
    count: u128,
}

/// Tuples of grid formulas with a per-slot and a total leaf bound, optionally
/// restricted by balance constraints on disjoint groups of slots.
#[derive(Debug, Clone)]
pub struct TupleSpace {
    arity: usize,
    blocks: Vec<Block>,
    total: u128,
}

fn compositions(arity: usize, slot_max: usize, total_max: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, slot_max: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for n in 1..=slot_max.min(budget.saturating_sub(left - 1)) {
            cur.push(n);
            go(left - 1, slot_max, budget - n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(arity, slot_max, total_max, &mut Vec::new(), &mut out);
    out.sort_by_key(|c| (c.iter().sum::<usize>(), c.clone()));
    out
}

fn assignments(grid: &Grid, c: &Constraint, sizes: &[usize]) -> Vec<(Vec<Sig>, u128)> {
    let mut out = Vec::new();
    match c {
        Constraint::Equal(_) => {
            for (s, c0) in grid.classes(sizes[0]) {
                let mut count = *c0;
                for &n in &sizes[1..] {
                    count *= grid.count_sig(n, s);
                }
                if count > 0 {
                    out.push((vec![s.clone(); sizes.len()], count));
                }
            }
        }
        Constraint::Sum(terms) => {
            let v = grid.vars().len();
            #[allow(clippy::too_many_arguments)]
            fn go(
                grid: &Grid,
                terms: &[(usize, i16)],
                sizes: &[usize],
                i: usize,
                partial: Sig,
                chosen: &mut Vec<Sig>,
                count: u128,
                out: &mut Vec<(Vec<Sig>, u128)>,
            ) {
                let last = terms.len() - 1;
                if i == last {
                    // coeff * s = -partial
                    let s = scale(&partial, -terms[last].1);
                    let c = grid.count_sig(sizes[last], &s);
                    if c > 0 {
                        chosen.push(s);
                        out.push((chosen.clone(), count * c));
                        chosen.pop();
                    }
                    return;
                }
                for (s, c) in grid.classes(sizes[i]) {
                    chosen.push(s.clone());
                    go(grid, terms, sizes, i + 1, add(&partial, &scale(s, terms[i].1)), chosen, count * c, out);
                    chosen.pop();
                }
            }
            go(grid, terms, sizes, 0, vec![0; v], &mut Vec::new(), 1, &mut out);
        }
    }
    out
}

impl TupleSpace {
    pub fn new(grid: &Grid, arity: usize, slot_max: usize, total_max: usize, constraints: &[Constraint]) -> TupleSpace {
        let slot_max = slot_max.min(grid.max_leaves());
        let mut owner = vec![None; arity];
        for (ci, c) in constraints.iter().enumerate() {
            for s in c.slots() {
                assert!(owner[s].is_none(), "constraints must touch disjoint slots");
                owner[s] = Some(ci);
            }
        }
        let mut blocks = Vec::new();
        let mut total = 0;
        for sizes in compositions(arity, slot_max, total_max) {
            let mut factors = Vec::new();
            for (ci, c) in constraints.iter().enumerate() {
                let slots = c.slots();
                let slot_sizes: Vec<usize> = slots.iter().map(|&s| sizes[s]).collect();
                let asg = assignments(grid, c, &slot_sizes);
                let count = asg.iter().map(|a| a.1).sum();
                let _ = ci;
                factors.push(Factor::Bound { slots, sizes: slot_sizes, assignments: asg, count });
            }
            for slot in 0..arity {
                if owner[slot].is_none() {
                    factors.push(Factor::Free { slot, n: sizes[slot], count: grid.count(sizes[slot]) });
                }
            }
            let count = factors.iter().map(Factor::count).product::<u128>();
            if count > 0 {
                total += count;
                blocks.push(Block { factors, count });
            }
        }
        TupleSpace { arity, blocks, total }
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The `idx`-th tuple. Tuples are ordered by total leaf count first.
    pub fn get(&self, grid: &Grid, mut idx: u128) -> Vec<Formula> {
        let block = self
            .blocks
            .iter()
            .find(|b| {
                if idx < b.count {
                    true
                } else {
                    idx -= b.count;
                    false
                }
            })
            .expect("tuple index out of range");
        let mut out: Vec<Option<Formula>> = vec![None; self.arity];
        for factor in &block.factors {
            let c = factor.count();
            let mut local = idx % c;
            idx /= c;
            match factor {
                Factor::Free { slot, n, .. } => out[*slot] = Some(grid.nth(*n, local)),
                Factor::Bound { slots, sizes, assignments, .. } => {
                    let (sigs, _) = assignments
                        .iter()
                        .find(|(_, cnt)| {
                            if local < *cnt {
                                true
                            } else {
                                local -= *cnt;
                                false
                            }
                        })
                        .expect("assignment index out of range");
                    for ((&slot, &n), sig) in slots.iter().zip(sizes).zip(sigs) {
                        let cnt = grid.count_sig(n, sig);
                        out[slot] = Some(grid.nth_sig(n, sig, local % cnt));
                        local /= cnt;
                    }
                }
            }
        }
        out.into_iter().map(|f| f.expect("every slot filled")).collect()
    }
}
