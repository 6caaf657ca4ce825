//! The coherence harness: each diagram is instantiated over tuples of grid
//! formulas and decided by comparing link sets.
//!
//! A diagram instance is *vacuous* when the sets it quantifies over are
//! empty. The suite counts those separately, both the ones it evaluated and
//! the ones it skipped without evaluation because their sequents are
//! unbalanced (and hence have no nets at all), so a diagram that only ever
//! passes vacuously is visible in the summary.
//!
//! ```
//! use mll_nets::coherence::{check_hexagon, Model, Status};
//! use mll_nets::formula::parse;
//!
//! let p = parse("p")?;
//! assert_eq!(check_hexagon(&p, &p, &p).status, Status::Holds);
//!
//! // a symmetry that does nothing when both factors agree breaks the hexagon
//! let bad = Model::wrong_sigma().checker(12, 0).hexagon_report(&p, &p, &p);
//! assert_eq!(bad.status, Status::Fails);
//! # Ok::<(), mll_nets::Error>(())
//! ```

mod checks;
pub mod grid;

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::canonical;
use crate::compose::{compose, identity};
use crate::error::{Error, Result};
use crate::formula::{Formula, Step};
use crate::net::{JElement, ProofNet, DEFAULT_MAX_LEAVES};

pub use checks::Checker;
use checks::{fnv, Tally};
pub use grid::{formula_grid, Constraint, Grid, TupleSpace};

/// The canonical morphisms a run is checked against. Swapping one of them
/// for a deliberately wrong variant is how negative controls are run.
#[derive(Clone, Copy, Debug)]
pub struct Model {
    pub name: &'static str,
    pub sigma: fn(&Formula, &Formula) -> ProofNet,
    pub psi: fn(&Formula, &Formula, &Formula) -> ProofNet,
    pub curry: fn(&ProofNet) -> Result<ProofNet>,
}

impl Default for Model {
    fn default() -> Self {
        Model::canonical()
    }
}

impl Model {
    pub fn canonical() -> Model {
        Model { name: "canonical", sigma: canonical::sigma, psi: canonical::psi, curry: canonical::curry }
    }

    /// `sigma_{A,A}` is the identity instead of the swap.
    pub fn wrong_sigma() -> Model {
        fn sigma(a: &Formula, b: &Formula) -> ProofNet {
            if a == b {
                identity(&Formula::tensor(a.clone(), b.clone()))
            } else {
                canonical::sigma(a, b)
            }
        }
        Model { name: "wrong-sigma", sigma, ..Model::canonical() }
    }

    /// `psi_{A,A,C}` sends the first `A` where the second should go.
    pub fn misoriented_psi() -> Model {
        fn psi(a: &Formula, b: &Formula, c: &Formula) -> ProofNet {
            if a != b {
                return canonical::psi(a, b, c);
            }
            let net = canonical::psi_direct(a, b, c);
            let (dom, cod, links) = net.into_parts();
            let swap = |e: &crate::net::End| {
                use Step::{L, N, R};
                let (from, to): (&[Step], &[Step]) = if e.side == crate::formula::Side::Cod {
                    if e.addr.strip(&[N, L]).is_some() {
                        (&[N, L], &[N, R, N, N, L])
                    } else if e.addr.strip(&[N, R, N, N, L]).is_some() {
                        (&[N, R, N, N, L], &[N, L])
                    } else {
                        return e.clone();
                    }
                } else {
                    return e.clone();
                };
                let rest = e.addr.strip(from).expect("prefix checked");
                crate::net::End { side: e.side, addr: rest.prefixed(to) }
            };
            ProofNet::from_parts(dom, cod, links.iter().map(|l| l.map(swap)).collect())
        }
        Model { name: "misoriented-psi", psi, ..Model::canonical() }
    }

    /// Currying precomposes with the symmetry when both factors of the
    /// domain agree, so its direction is reversed on those instances.
    pub fn swapped_curry() -> Model {
        fn curry(f: &ProofNet) -> Result<ProofNet> {
            match f.dom().as_tensor() {
                Some((a, b)) if a == b => canonical::curry(&compose(&canonical::sigma(a, b), f)?),
                _ => canonical::curry(f),
            }
        }
        Model { name: "swapped-curry", curry, ..Model::canonical() }
    }

    pub fn by_name(name: &str) -> Option<Model> {
        [Model::canonical(), Model::wrong_sigma(), Model::misoriented_psi(), Model::swapped_curry()]
            .into_iter()
            .find(|m| m.name == name)
    }

    /// A checker with this model, an enumeration bound and a seed, drawing
    /// `check_lin`'s sample formulas from the 1- and 2-leaf grid over `p, q`.
    pub fn checker(self, bound: usize, seed: u64) -> Checker {
        let vars = ["p".to_string(), "q".to_string()];
        Checker::new(self, bound, seed, formula_grid(&vars, 2, 2))
    }
}

/// Evidence that a diagram instance does not commute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    /// Two composite nets that should agree.
    Nets { note: String, lhs: ProofNet, rhs: ProofNet },
    /// Two elements that should agree.
    Elements { note: String, lhs: JElement, rhs: JElement },
    /// Two cardinalities that should agree.
    Counts { note: String, lhs: usize, rhs: usize },
    /// A net that should lie in an enumerated hom-set but does not.
    Missing { note: String, net: ProofNet },
    /// A construction that should have succeeded raised an error.
    Error { code: String, detail: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    /// An enumeration hit the size bound; the instance was not decided.
    Skipped,
}

/// The outcome of one diagram at one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub diagram: Diagram,
    #[serde(serialize_with = "printed")]
    pub instance: Vec<Formula>,
    pub status: Status,
    pub vacuous: bool,
    /// Number of equations (or set conditions) tested.
    pub checked: u64,
    pub witness: Option<Witness>,
}

fn printed<S: Serializer>(fs: &[Formula], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(fs.iter().map(|f| f.to_string()))
}

impl DiagramReport {
    fn from_tally(diagram: Diagram, instance: Vec<Formula>, tally: Result<Tally>) -> DiagramReport {
        match tally {
            Ok(t) => DiagramReport {
                diagram,
                instance,
                status: if t.witness.is_some() { Status::Fails } else { Status::Holds },
                vacuous: t.vacuous,
                checked: t.checked,
                witness: t.witness,
            },
            Err(err @ Error::SizeBoundExceeded { .. }) => DiagramReport {
                diagram,
                instance,
                status: Status::Skipped,
                vacuous: false,
                checked: 0,
                witness: Some(Witness::Error { code: err.code().into(), detail: err.to_string() }),
            },
            Err(err) => DiagramReport {
                diagram,
                instance,
                status: Status::Fails,
                vacuous: false,
                checked: 0,
                witness: Some(Witness::Error { code: err.code().into(), detail: err.to_string() }),
            },
        }
    }
}

/// Every diagram the harness knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagram {
    Pentagon,
    Hexagon,
    Sigma,
    Psicoh,
    PsiDirect,
    DefPsi,
    PsiSquare,
    Tensel,
    Lin,
    LIso,
    Sstac,
    Transpose,
    CurryBij,
    EBij,
    DualBij,
    CategoryLaws,
}

impl Diagram {
    pub const ALL: [Diagram; 16] = [
        Diagram::Pentagon,
        Diagram::Hexagon,
        Diagram::Sigma,
        Diagram::Psicoh,
        Diagram::PsiDirect,
        Diagram::DefPsi,
        Diagram::PsiSquare,
        Diagram::Tensel,
        Diagram::Lin,
        Diagram::LIso,
        Diagram::Sstac,
        Diagram::Transpose,
        Diagram::CurryBij,
        Diagram::EBij,
        Diagram::DualBij,
        Diagram::CategoryLaws,
    ];

    /// The coherence diagrams proper.
    pub const COHERENCE: [Diagram; 12] = [
        Diagram::Pentagon,
        Diagram::Hexagon,
        Diagram::Sigma,
        Diagram::Psicoh,
        Diagram::PsiDirect,
        Diagram::DefPsi,
        Diagram::PsiSquare,
        Diagram::Tensel,
        Diagram::Lin,
        Diagram::LIso,
        Diagram::Sstac,
        Diagram::Transpose,
    ];

    /// Bijections between hom-sets, with their round trips.
    pub const BIJECTIONS: [Diagram; 4] = [Diagram::CurryBij, Diagram::EBij, Diagram::DualBij, Diagram::Transpose];

    pub fn name(self) -> &'static str {
        match self {
            Diagram::Pentagon => "pentagon",
            Diagram::Hexagon => "hexagon",
            Diagram::Sigma => "sigma",
            Diagram::Psicoh => "psicoh",
            Diagram::PsiDirect => "psi_direct",
            Diagram::DefPsi => "def_psi",
            Diagram::PsiSquare => "psi_square",
            Diagram::Tensel => "tensel",
            Diagram::Lin => "lin",
            Diagram::LIso => "l_iso",
            Diagram::Sstac => "sstac",
            Diagram::Transpose => "transpose",
            Diagram::CurryBij => "curry_bij",
            Diagram::EBij => "e_bij",
            Diagram::DualBij => "dual_bij",
            Diagram::CategoryLaws => "category_laws",
        }
    }

    pub fn from_name(name: &str) -> Option<Diagram> {
        Diagram::ALL.into_iter().find(|d| d.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Diagram::Lin => 1,
            Diagram::Sigma | Diagram::LIso | Diagram::EBij | Diagram::DualBij => 2,
            Diagram::Hexagon
            | Diagram::PsiDirect
            | Diagram::PsiSquare
            | Diagram::Tensel
            | Diagram::Sstac
            | Diagram::Transpose
            | Diagram::CurryBij => 3,
            Diagram::Pentagon | Diagram::Psicoh | Diagram::DefPsi | Diagram::CategoryLaws => 4,
        }
    }

    /// Balance conditions a tuple must meet for the quantified sets to be
    /// nonempty. Coefficients read each slot as a codomain; a slot on the
    /// domain side of a sequent enters negated.
    pub fn constraints(self) -> Vec<Constraint> {
        use Constraint::{Equal, Sum};
        match self {
            Diagram::DefPsi => vec![Sum(vec![(0, -1), (1, -1), (2, -1), (3, 1)])],
            Diagram::PsiSquare | Diagram::Sstac | Diagram::CurryBij => vec![Sum(vec![(0, -1), (1, -1), (2, 1)])],
            Diagram::Transpose => vec![Sum(vec![(0, -1), (1, -1), (2, -1)])],
            Diagram::Tensel => vec![Sum(vec![(0, 1)]), Sum(vec![(1, 1)]), Sum(vec![(2, 1)])],
            Diagram::Lin => vec![Sum(vec![(0, 1)])],
            Diagram::LIso | Diagram::EBij | Diagram::DualBij => vec![Sum(vec![(0, -1), (1, 1)])],
            Diagram::CategoryLaws => vec![Equal(vec![0, 1, 2, 3])],
            Diagram::Pentagon | Diagram::Hexagon | Diagram::Sigma | Diagram::Psicoh | Diagram::PsiDirect => {
                vec![]
            }
        }
    }

    /// Leaf bounds `(per slot, whole tuple)` under a suite bound of
    /// `max_leaves`. Category laws bound each hom-set `hom(X, Y)` by
    /// `max_leaves`, so each slot gets half; everything else bounds the
    /// tuple as a whole.
    pub fn leaf_bounds(self, max_leaves: usize) -> (usize, usize) {
        match self {
            Diagram::CategoryLaws => (max_leaves / 2, 4 * (max_leaves / 2)),
            _ => (max_leaves, max_leaves),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Checker {
    /// Evaluates one diagram at one instance.
    pub fn report(&self, diagram: Diagram, instance: &[Formula]) -> DiagramReport {
        assert_eq!(instance.len(), diagram.arity(), "wrong number of formulas for {diagram}");
        let i = instance;
        let tally = match diagram {
            Diagram::Pentagon => self.pentagon(&i[0], &i[1], &i[2], &i[3]),
            Diagram::Hexagon => self.hexagon(&i[0], &i[1], &i[2]),
            Diagram::Sigma => self.sigma_involution(&i[0], &i[1]),
            Diagram::Psicoh => self.psicoh(&i[0], &i[1], &i[2], &i[3]),
            Diagram::PsiDirect => self.psi_constructions(&i[0], &i[1], &i[2]),
            Diagram::DefPsi => self.def_psi(&i[0], &i[1], &i[2], &i[3]),
            Diagram::PsiSquare => self.psi_square(&i[0], &i[1], &i[2]),
            Diagram::Tensel => self.tensel(&i[0], &i[1], &i[2]),
            Diagram::Lin => self.lin(&i[0]),
            Diagram::LIso => self.l_iso(&i[0], &i[1]),
            Diagram::Sstac => self.sstac(&i[0], &i[1], &i[2]),
            Diagram::Transpose => self.transpose(&i[0], &i[1], &i[2]),
            Diagram::CurryBij => self.curry_bij(&i[0], &i[1], &i[2]),
            Diagram::EBij => self.e_bij(&i[0], &i[1]),
            Diagram::DualBij => self.dual_bij(&i[0], &i[1]),
            Diagram::CategoryLaws => self.category_laws(&i[0], &i[1], &i[2], &i[3]),
        };
        DiagramReport::from_tally(diagram, instance.to_vec(), tally)
    }

    pub fn hexagon_report(&self, a: &Formula, b: &Formula, c: &Formula) -> DiagramReport {
        self.report(Diagram::Hexagon, &[a.clone(), b.clone(), c.clone()])
    }
}

fn default_report(diagram: Diagram, instance: &[&Formula]) -> DiagramReport {
    let instance: Vec<Formula> = instance.iter().map(|f| (*f).clone()).collect();
    Model::canonical().checker(DEFAULT_MAX_LEAVES, 0).report(diagram, &instance)
}

pub fn check_pentagon(a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> DiagramReport {
    default_report(Diagram::Pentagon, &[a, b, c, d])
}

pub fn check_hexagon(a: &Formula, b: &Formula, c: &Formula) -> DiagramReport {
    default_report(Diagram::Hexagon, &[a, b, c])
}

pub fn check_sigma(a: &Formula, b: &Formula) -> DiagramReport {
    default_report(Diagram::Sigma, &[a, b])
}

pub fn check_psicoh(a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> DiagramReport {
    default_report(Diagram::Psicoh, &[a, b, c, d])
}

pub fn check_def_psi(a: &Formula, x: &Formula, y: &Formula, z: &Formula) -> DiagramReport {
    default_report(Diagram::DefPsi, &[a, x, y, z])
}

pub fn check_psi_square(a: &Formula, b: &Formula, c: &Formula) -> DiagramReport {
    default_report(Diagram::PsiSquare, &[a, b, c])
}

pub fn check_tensel(a: &Formula, b: &Formula, c: &Formula) -> DiagramReport {
    default_report(Diagram::Tensel, &[a, b, c])
}

pub fn check_lin(a: &Formula) -> DiagramReport {
    default_report(Diagram::Lin, &[a])
}

pub fn check_l_iso(a: &Formula, b: &Formula) -> DiagramReport {
    default_report(Diagram::LIso, &[a, b])
}

pub fn check_sstac(a: &Formula, b: &Formula, c: &Formula) -> DiagramReport {
    default_report(Diagram::Sstac, &[a, b, c])
}

/// What to run and over which grid.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub vars: Vec<String>,
    pub max_leaves: usize,
    pub neg_depth: usize,
    pub seed: u64,
    /// Leaf bound passed to every hom-set and element enumeration.
    pub bound: usize,
    /// Balanced instances evaluated per diagram; above this, a seeded
    /// sample is taken.
    pub max_instances: u64,
    /// How many of the smallest balanced instances every sample includes.
    pub anchors: u64,
    pub diagrams: Vec<Diagram>,
    pub model: Model,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            vars: vec!["p".into(), "q".into()],
            max_leaves: 6,
            neg_depth: 2,
            seed: 0,
            bound: DEFAULT_MAX_LEAVES,
            max_instances: 20_000,
            anchors: 2_000,
            diagrams: Diagram::COHERENCE.to_vec(),
            model: Model::canonical(),
        }
    }
}

/// Per-diagram accounting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramSummary {
    pub diagram: Diagram,
    /// All tuples within the leaf bounds.
    #[serde(serialize_with = "as_string")]
    pub tuples: u128,
    /// Tuples whose quantified sets can be nonempty.
    #[serde(serialize_with = "as_string")]
    pub balanced: u128,
    /// True if every balanced tuple was evaluated.
    pub exhaustive: bool,
    pub evaluated: u64,
    pub holds: u64,
    pub fails: u64,
    pub skipped: u64,
    /// Evaluated instances whose quantified sets were empty.
    pub vacuous: u64,
    pub non_vacuous: u64,
    /// Equations tested across all evaluated instances.
    pub checked: u64,
    pub millis: u64,
}

fn as_string<S: Serializer>(n: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

impl DiagramSummary {
    /// No failures and at least one non-vacuous instance.
    pub fn passed(&self) -> bool {
        self.fails == 0 && self.non_vacuous > 0
    }
}

/// Everything a suite run produced.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub model: &'static str,
    pub vars: Vec<String>,
    pub max_leaves: usize,
    pub neg_depth: usize,
    pub seed: u64,
    pub bound: usize,
    pub summaries: Vec<DiagramSummary>,
    /// Every evaluated instance, in diagram order, then instance order.
    pub reports: Vec<DiagramReport>,
    /// Set when `l_iso` ran: whether `l` was a bijection agreeing with `e`
    /// on every evaluated instance. This is an empirical check only.
    pub l_bijective_on_grid: Option<bool>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &DiagramReport> {
        self.reports.iter().filter(|r| r.status == Status::Fails)
    }

    pub fn fail_count(&self) -> u64 {
        self.summaries.iter().map(|s| s.fails).sum()
    }

    /// Zero failures and every diagram has a non-vacuous instance.
    pub fn passed(&self) -> bool {
        self.summaries.iter().all(DiagramSummary::passed)
    }

    pub fn summary(&self, diagram: Diagram) -> Option<&DiagramSummary> {
        self.summaries.iter().find(|s| s.diagram == diagram)
    }

    /// JSON lines: one object per report selected by `keep`, then one
    /// `{"summary": ..}` object per diagram. Keys are sorted.
    pub fn json_lines(&self, keep: impl Fn(&DiagramReport) -> bool) -> String {
        let mut out = String::new();
        for r in self.reports.iter().filter(|r| keep(r)) {
            out.push_str(&serde_json::to_value(r).expect("report serializes").to_string());
            out.push('\n');
        }
        for s in &self.summaries {
            let line = serde_json::json!({ "summary": s });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

/// Indices of the balanced tuples to evaluate, ascending.
fn pick(len: u128, cfg: &SuiteConfig, diagram: Diagram) -> Vec<u128> {
    let cap = cfg.max_instances as u128;
    if len <= cap {
        return (0..len).collect();
    }
    let anchors = (cfg.anchors as u128).min(cap);
    let mut chosen: std::collections::BTreeSet<u128> = (0..anchors).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ fnv(diagram.name()));
    while (chosen.len() as u128) < cap {
        chosen.insert(rng.random_range(anchors..len));
    }
    chosen.into_iter().collect()
}

/// Runs every configured diagram over the grid.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let grid = Grid::new(&cfg.vars, cfg.max_leaves, cfg.neg_depth);
    let checker = Checker::new(cfg.model, cfg.bound, cfg.seed, formula_grid(&cfg.vars, 2.min(cfg.max_leaves), cfg.neg_depth));
    let mut summaries = Vec::new();
    let mut reports = Vec::new();
    for &diagram in &cfg.diagrams {
        let start = Instant::now();
        let (slot_max, total_max) = diagram.leaf_bounds(cfg.max_leaves);
        let all = TupleSpace::new(&grid, diagram.arity(), slot_max, total_max, &[]);
        let space = TupleSpace::new(&grid, diagram.arity(), slot_max, total_max, &diagram.constraints());
        let picked = pick(space.len(), cfg, diagram);
        let mut s = DiagramSummary {
            diagram,
            tuples: all.len(),
            balanced: space.len(),
            exhaustive: picked.len() as u128 == space.len(),
            evaluated: picked.len() as u64,
            holds: 0,
            fails: 0,
            skipped: 0,
            vacuous: 0,
            non_vacuous: 0,
            checked: 0,
            millis: 0,
        };
        for idx in picked {
            let r = checker.report(diagram, &space.get(&grid, idx));
            match r.status {
                Status::Holds => s.holds += 1,
                Status::Fails => s.fails += 1,
                Status::Skipped => s.skipped += 1,
            }
            if r.status != Status::Skipped {
                if r.vacuous {
                    s.vacuous += 1;
                } else {
                    s.non_vacuous += 1;
                }
            }
            s.checked += r.checked;
            reports.push(r);
        }
        s.millis = start.elapsed().as_millis() as u64;
        summaries.push(s);
    }
    let l_bijective_on_grid = summaries.iter().find(|s| s.diagram == Diagram::LIso).map(|s| s.fails == 0);
    SuiteReport {
        model: cfg.model.name,
        vars: cfg.vars.clone(),
        max_leaves: cfg.max_leaves,
        neg_depth: cfg.neg_depth,
        seed: cfg.seed,
        bound: cfg.bound,
        summaries,
        reports,
        l_bijective_on_grid,
    }
}
