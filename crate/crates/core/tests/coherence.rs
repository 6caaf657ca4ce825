use mll_nets::canonical::{psi, psi_direct};
use mll_nets::coherence::{
    check_def_psi, check_hexagon, check_l_iso, check_lin, check_pentagon, check_psi_square, check_psicoh,
    check_sigma, check_sstac, check_tensel, formula_grid, run_suite, Diagram, DiagramReport, Model, Status,
    SuiteConfig, Witness,
};
use mll_nets::formula::{parse, Formula};
use mll_nets::net::{enumerate_j, DEFAULT_MAX_LEAVES};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn vars(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[track_caller]
fn holds(r: &DiagramReport) {
    assert_eq!(r.status, Status::Holds, "{}", serde_json::to_string(r).unwrap());
}

#[test]
fn grid_basics() {
    let g = formula_grid(&vars(&["p"]), 1, 2);
    assert_eq!(g, [f("p"), f("p^"), f("p^^")]);
    let mut last = 0;
    for n in 1..=4 {
        let g = formula_grid(&vars(&["p", "q"]), n, 2);
        assert!(g.len() > last);
        last = g.len();
        for x in &g {
            assert_eq!(&parse(&x.to_string()).unwrap(), x);
            assert!(x.neg_depth() <= 2 && x.leaf_count() <= n);
        }
    }
}

#[test]
fn named_instances() {
    let (p, q, r, s) = (f("p"), f("q"), f("r"), f("s"));
    holds(&check_pentagon(&p, &q, &r, &s));
    holds(&check_hexagon(&p, &p, &p));
    holds(&check_sigma(&p, &q));
    holds(&check_psicoh(&p, &q, &r, &s));
    assert_eq!(psi(&p, &q, &r), psi_direct(&p, &q, &r));
}

#[test]
fn psicoh_on_all_atom_tuples() {
    let atoms = [f("p"), f("q")];
    for a in &atoms {
        for b in &atoms {
            for c in &atoms {
                for d in &atoms {
                    holds(&check_psicoh(a, b, c, d));
                }
            }
        }
    }
}

#[test]
fn def_psi_examples() {
    let p = f("p");
    let r = check_def_psi(&p, &p, &p, &p);
    holds(&r);
    assert!(r.vacuous);
    let r = check_def_psi(&f("p"), &f("q"), &f("p^^"), &f("(p * (q * p))"));
    holds(&r);
    assert!(!r.vacuous);
}

#[test]
fn psi_square_examples() {
    // J((p * q) -o r) is empty: the sequent is unbalanced
    let r = check_psi_square(&f("p"), &f("q"), &f("r"));
    holds(&r);
    assert!(r.vacuous);
    let r = check_psi_square(&f("p"), &f("q"), &f("(p * q)"));
    holds(&r);
    assert!(!r.vacuous);
}

#[test]
fn tensel_examples() {
    let single = f("p -o p");
    let r = check_tensel(&single, &single, &single);
    holds(&r);
    assert_eq!(r.checked, 1);

    let double = f("(p * p) -o (p * p)");
    assert_eq!(enumerate_j(&double, DEFAULT_MAX_LEAVES).unwrap().len(), 2);
    let r = check_tensel(&double, &double, &double);
    holds(&r);
    assert_eq!(r.checked, 8);

    let r = check_tensel(&f("p"), &single, &single);
    holds(&r);
    assert!(r.vacuous);
}

#[test]
fn lin_and_l() {
    let r = check_lin(&f("p -o p"));
    holds(&r);
    assert!(r.checked > 0);
    let r = check_l_iso(&f("p"), &f("p"));
    holds(&r);
    assert!(!r.vacuous);
    holds(&check_l_iso(&f("(p*p)"), &f("(p*p)")));
}

#[test]
fn sstac_examples() {
    let p = f("p");
    holds(&check_sstac(&p, &p, &p));
    let r = check_sstac(&p, &f("q"), &f("(p * q)"));
    holds(&r);
    assert!(!r.vacuous);
}

#[test]
fn small_bound_is_deterministic() {
    let cfg = SuiteConfig { max_leaves: 4, ..SuiteConfig::default() };
    let a = run_suite(&cfg);
    assert_eq!(a.fail_count(), 0);
    let b = run_suite(&cfg);
    assert_eq!(a.reports, b.reports);
    for (x, y) in a.summaries.iter().zip(&b.summaries) {
        assert_eq!((x.evaluated, x.holds, x.vacuous, x.checked), (y.evaluated, y.holds, y.vacuous, y.checked));
    }
}

#[test]
fn wrong_sigma_fails_first_at_smallest_instance() {
    let cfg = SuiteConfig {
        vars: vars(&["p", "q"]),
        max_leaves: 4,
        diagrams: vec![Diagram::Hexagon],
        model: Model::wrong_sigma(),
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg);
    let first = report.failures().next().expect("a failure");
    assert_eq!(first.instance, [f("p"), f("p"), f("p")]);
    match &first.witness {
        Some(Witness::Nets { lhs, rhs, .. }) => {
            assert_ne!(lhs, rhs);
            assert_eq!(lhs.dom(), rhs.dom());
            assert_eq!(lhs.cod(), rhs.cod());
        }
        other => panic!("expected a net witness, got {other:?}"),
    }
    // the line format
    let line = report.json_lines(|r| r.status == Status::Fails);
    let v: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    for key in ["diagram", "instance", "status", "vacuous", "witness"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn size_bound_is_reported_per_instance() {
    let cfg = SuiteConfig {
        vars: vars(&["p"]),
        max_leaves: 4,
        bound: 3,
        diagrams: vec![Diagram::LIso, Diagram::Sigma],
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg);
    let l = report.summary(Diagram::LIso).unwrap();
    assert!(l.skipped > 0);
    assert_eq!(l.fails, 0);
    assert!(report.summary(Diagram::Sigma).unwrap().holds > 0);
}
