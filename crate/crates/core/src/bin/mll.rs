use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mll_nets::canonical;
use mll_nets::coherence::{run_suite, Diagram, Model, Status, SuiteConfig};
use mll_nets::compose::{compose_checked, identity};
use mll_nets::dot::{element_to_dot, net_to_dot};
use mll_nets::formula::{leaves, parse, Formula, Polarity, Side};
use mll_nets::net::{dr_correct_counted, element_correct, enumerate_hom, enumerate_j, JElement, ProofNet, RawElement, RawNet};
use mll_nets::Error;

#[derive(Parser)]
#[command(name = "mll", version, about = "Proof nets for unit-free multiplicative linear logic")]
struct Cli {
    /// Report usage errors as JSON on stdout too.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and list its leaf occurrences.
    Parse { formula: String },
    /// Validate a net or element given as JSON ("-" reads stdin).
    Check { file: PathBuf },
    /// Compose two nets: first FIRST, then SECOND.
    Compose { first: PathBuf, second: PathBuf },
    /// Enumerate hom(DOM, COD).
    Hom {
        dom: String,
        cod: String,
        #[arg(long)]
        count: bool,
        /// Enumeration bound [default: $MLL_MAX_LEAVES or 8].
        #[arg(long)]
        max_leaves: Option<usize>,
    },
    /// Enumerate J(FORMULA).
    J {
        formula: String,
        #[arg(long)]
        count: bool,
        /// Enumeration bound [default: $MLL_MAX_LEAVES or 8].
        #[arg(long)]
        max_leaves: Option<usize>,
    },
    /// Build a canonical morphism.
    Canon {
        name: Canon,
        formulas: Vec<String>,
    },
    /// Run the coherence suite; prints failures and per-diagram summaries as JSON lines.
    Coherence {
        #[arg(long, default_value = "p,q,r", value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(long, default_value_t = 6)]
        max_leaves: usize,
        #[arg(long, default_value_t = 2)]
        neg_depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated diagram names [default: the coherence diagrams].
        #[arg(long, value_delimiter = ',')]
        diagrams: Option<Vec<String>>,
        /// canonical, wrong-sigma, misoriented-psi or swapped-curry.
        #[arg(long, default_value = "canonical")]
        model: String,
        #[arg(long)]
        max_instances: Option<u64>,
        /// Print every evaluated instance, not only failures.
        #[arg(long)]
        all: bool,
    },
    /// Render a net or element as Graphviz DOT.
    Dot { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Canon {
    Identity,
    Alpha,
    AlphaInv,
    Sigma,
    Eval,
    Psi,
    PsiDirect,
    PsiInv,
    Iota,
    IotaInv,
}

enum Failure {
    Domain(Error),
    Input(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
    /// Pre-rendered output plus the exit code to use.
    Lines(String, u8),
}

enum Item {
    Net(ProofNet),
    Element(JElement),
}

fn read_source(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

/// Reads without validating correctness; the caller decides what to check.
fn read_item(path: &Path) -> Result<Item, Failure> {
    let text = read_source(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
    let bad = |e: serde_json::Error| Failure::Input(format!("not a net or element: {e}"));
    if value.get("dom").is_some() {
        let raw: RawNet = serde_json::from_value(value).map_err(bad)?;
        Ok(Item::Net(ProofNet::from_parts(raw.dom, raw.cod, raw.links)))
    } else {
        let raw: RawElement = serde_json::from_value(value).map_err(bad)?;
        Ok(Item::Element(JElement::from_parts(raw.formula, raw.links)))
    }
}

fn read_net(path: &Path) -> Result<ProofNet, Failure> {
    match read_item(path)? {
        Item::Net(net) => {
            net.revalidate()?;
            Ok(net)
        }
        Item::Element(_) => Err(Failure::Input(format!("{}: expected a net with \"dom\"", path.display()))),
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    Ok(parse(text).map_err(Error::from)?)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn bound(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("MLL_MAX_LEAVES") {
        Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("MLL_MAX_LEAVES must be a number, got {v:?}"))),
        Err(_) => Ok(8),
    }
}

fn cmd_parse(text: &str) -> Out {
    let f = formula(text)?;
    let occurrences: Vec<Value> = leaves(&f, Side::Cod)
        .into_iter()
        .map(|l| {
            let polarity = match l.polarity {
                Polarity::Pos => "pos",
                Polarity::Neg => "neg",
            };
            json!({ "addr": l.addr.to_string(), "var": l.var, "polarity": polarity })
        })
        .collect();
    Ok(Output::Json(json!({
        "formula": f.to_string(),
        "leaves": f.leaf_count(),
        "neg_depth": f.neg_depth(),
        "tree": to_json(&f),
        "occurrences": occurrences,
    })))
}

fn cmd_check(path: &Path) -> Out {
    match read_item(path)? {
        Item::Net(net) => {
            net.check_structure()?;
            match dr_correct_counted(&net) {
                (mll_nets::net::Correctness::Correct, n) => {
                    Ok(Output::Json(json!({ "kind": "net", "status": "correct", "switchings": n })))
                }
                (mll_nets::net::Correctness::Incorrect(w), _) => Err(Error::NotCorrect(w).into()),
            }
        }
        Item::Element(el) => {
            el.check_structure()?;
            match element_correct(&el) {
                mll_nets::net::Correctness::Correct => Ok(Output::Json(json!({ "kind": "element", "status": "correct" }))),
                mll_nets::net::Correctness::Incorrect(w) => Err(Error::NotCorrect(w).into()),
            }
        }
    }
}

fn cmd_compose(first: &Path, second: &Path) -> Out {
    let (f, g) = (read_net(first)?, read_net(second)?);
    Ok(Output::Json(to_json(&compose_checked(&f, &g)?)))
}

fn cmd_hom(dom: &str, cod: &str, count: bool, max: Option<usize>) -> Out {
    let nets = enumerate_hom(&formula(dom)?, &formula(cod)?, bound(max)?)?;
    Ok(Output::Json(if count {
        json!({ "count": nets.len() })
    } else {
        json!({ "count": nets.len(), "nets": to_json(&nets) })
    }))
}

fn cmd_j(text: &str, count: bool, max: Option<usize>) -> Out {
    let els = enumerate_j(&formula(text)?, bound(max)?)?;
    Ok(Output::Json(if count {
        json!({ "count": els.len() })
    } else {
        json!({ "count": els.len(), "elements": to_json(&els) })
    }))
}

fn cmd_canon(name: Canon, texts: &[String]) -> Out {
    let fs: Vec<Formula> = texts.iter().map(|t| formula(t)).collect::<Result<_, _>>()?;
    let arity = match name {
        Canon::Identity | Canon::Iota | Canon::IotaInv => 1,
        Canon::Sigma | Canon::Eval => 2,
        _ => 3,
    };
    if fs.len() != arity {
        return Err(Failure::Usage(format!("this morphism takes {arity} formula(s), got {}", fs.len())));
    }
    let net = match name {
        Canon::Identity => identity(&fs[0]),
        Canon::Alpha => canonical::alpha(&fs[0], &fs[1], &fs[2]),
        Canon::AlphaInv => canonical::alpha_inv(&fs[0], &fs[1], &fs[2]),
        Canon::Sigma => canonical::sigma(&fs[0], &fs[1]),
        Canon::Eval => canonical::eval(&fs[0], &fs[1]),
        Canon::Psi => canonical::psi(&fs[0], &fs[1], &fs[2]),
        Canon::PsiDirect => canonical::psi_direct(&fs[0], &fs[1], &fs[2]),
        Canon::PsiInv => canonical::psi_inv(&fs[0], &fs[1], &fs[2]),
        Canon::Iota => canonical::iota(&fs[0]),
        Canon::IotaInv => canonical::iota_inv(&fs[0]),
    };
    Ok(Output::Json(to_json(&net)))
}

#[allow(clippy::too_many_arguments)]
fn cmd_coherence(
    vars: Vec<String>,
    max_leaves: usize,
    neg_depth: usize,
    seed: u64,
    diagrams: Option<Vec<String>>,
    model: &str,
    max_instances: Option<u64>,
    all: bool,
) -> Out {
    if vars.is_empty() || vars.iter().any(|v| !mll_nets::formula::is_var_name(v)) {
        return Err(Failure::Usage(format!("--vars must be variable names, got {vars:?}")));
    }
    let model = Model::by_name(model).ok_or_else(|| Failure::Usage(format!("unknown model {model:?}")))?;
    let mut cfg = SuiteConfig { vars, max_leaves, neg_depth, seed, model, ..SuiteConfig::default() };
    if let Some(names) = diagrams {
        cfg.diagrams = names
            .iter()
            .map(|n| Diagram::from_name(n).ok_or_else(|| Failure::Usage(format!("unknown diagram {n:?}"))))
            .collect::<Result<_, _>>()?;
    }
    if let Some(n) = max_instances {
        cfg.max_instances = n;
    }
    let report = run_suite(&cfg);
    let mut text = report.json_lines(|r| all || r.status == Status::Fails);
    let result = json!({ "result": {
        "passed": report.passed(),
        "fails": report.fail_count(),
        "l_bijective_on_grid": report.l_bijective_on_grid,
        "model": report.model,
    }});
    text.push_str(&result.to_string());
    text.push('\n');
    Ok(Output::Lines(text, if report.fail_count() > 0 { 1 } else { 0 }))
}

fn cmd_dot(path: &Path) -> Out {
    Ok(Output::Text(match read_item(path)? {
        Item::Net(net) => net_to_dot(&net),
        Item::Element(el) => element_to_dot(&el),
    }))
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Parse { formula } => cmd_parse(&formula),
        Command::Check { file } => cmd_check(&file),
        Command::Compose { first, second } => cmd_compose(&first, &second),
        Command::Hom { dom, cod, count, max_leaves } => cmd_hom(&dom, &cod, count, max_leaves),
        Command::J { formula, count, max_leaves } => cmd_j(&formula, count, max_leaves),
        Command::Canon { name, formulas } => cmd_canon(name, &formulas),
        Command::Coherence { vars, max_leaves, neg_depth, seed, diagrams, model, max_instances, all } => {
            cmd_coherence(vars, max_leaves, neg_depth, seed, diagrams, &model, max_instances, all)
        }
        Command::Dot { file } => cmd_dot(&file),
    }
}

fn error_json(code: &str, detail: String, extra: Option<(&str, Value)>) -> String {
    let mut v = json!({ "error": code, "detail": detail });
    if let Some((k, x)) = extra {
        v[k] = x;
    }
    v.to_string()
}

fn main() -> ExitCode {
    let json_flag = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if json_flag && e.use_stderr() => {
            println!("{}", error_json("Usage", e.to_string().trim().to_string(), None));
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(Output::Json(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Lines(t, code)) => {
            print!("{t}");
            ExitCode::from(code)
        }
        Err(Failure::Domain(e)) => {
            let extra = match &e {
                Error::NotCorrect(w) => Some(("witness", to_json(w))),
                _ => None,
            };
            println!("{}", error_json(e.code(), e.to_string(), extra));
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            println!("{}", error_json("InvalidInput", msg, None));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            println!("{}", error_json("Usage", msg, None));
            ExitCode::from(2)
        }
    }
}
