use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use surfcalc::dualgraph::io::{self, GraphJson};
use surfcalc::dualgraph::{classify_exceptional, fundamental_cycle, intersection_number, verify_fiber};
use surfcalc::equivariant::{certify, Verdict};
use surfcalc::exactmath::hj_expand;
use surfcalc::pencil::{contract_to_hirzebruch, cusp_data, resolve_pencil};
use surfcalc::quotient::{
    build_standard_completion, complete_fiber, freeness_defect, log_canonical_class,
    resolution_chain, validate_fork, ChainEnd, GroupModel,
};
use surfcalc::{
    CyclicQuotientType, Divisor, DualGraph, Error, ForkSpec, Fraction, GroupAction, HJChain,
    PolyEndomorphism,
};

#[derive(Parser)]
#[command(name = "surfcalc", version, about = "Exact computations on weighted dual graphs of rational surfaces")]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum End {
    First,
    Last,
}

#[derive(Subcommand)]
enum Command {
    /// Hirzebruch-Jung expansion of n/d.
    Hj { n: u64, d: u64 },
    /// Minimal resolution chain of the cyclic quotient of type (n, d).
    Resolve { n: u64, d: u64 },
    /// Validate a fork given as JSON.
    Fork { file: PathBuf },
    /// Fundamental cycle of a dual graph given as JSON.
    Fundcycle { file: PathBuf },
    /// Complete a chain of entries >= 2 to a degenerate fiber T + F + R.
    CompleteFiber {
        /// Entries separated by commas or spaces, e.g. "2,3".
        chain: String,
        /// End of the chain meeting the (-1)-curve F.
        #[arg(long, value_enum, default_value_t = End::Last)]
        attach: End,
    },
    /// Standard completion of a cyclic type (n, d) or of a fork.
    Completion {
        #[arg(required_unless_present = "fork", conflicts_with = "fork")]
        n: Option<u64>,
        #[arg(required_unless_present = "fork", conflicts_with = "fork")]
        d: Option<u64>,
        #[arg(long)]
        fork: Option<PathBuf>,
    },
    /// Resolve the pencil spanned by a S1 + l0 on the Hirzebruch surface F_n.
    Pencil {
        n: u64,
        a: u64,
        /// Also contract back down to F_n.
        #[arg(long)]
        contract: bool,
    },
    /// Certify a polynomial map (f, g) equivariant under a diagonal cyclic action.
    Keller {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        /// Action `n,d`: (x, y) -> (z x, z^d y) with z a primitive n-th root of unity.
        #[arg(long, value_parser = parse_action)]
        action: GroupAction,
    },
}

fn parse_action(s: &str) -> Result<GroupAction, String> {
    let (n, d) = s.split_once(',').ok_or("expected n,d")?;
    let n = n.trim().parse().map_err(|e| format!("bad n: {e}"))?;
    let d = d.trim().parse().map_err(|e| format!("bad d: {e}"))?;
    GroupAction::new(n, d).map_err(|e| e.to_string())
}

/// Successful output plus whether the reported verdict holds.
struct Report {
    body: String,
    holds: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, holds: true }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn rational_json(q: &surfcalc::Rational) -> Value {
    match q.is_integer().then(|| q.to_integer().to_string().parse::<i64>().ok()).flatten() {
        Some(i) => json!(i),
        None => json!(q.to_string()),
    }
}

fn divisor_json(d: &Divisor) -> Value {
    Value::Object(d.iter().map(|(n, c)| (n.to_owned(), rational_json(c))).collect())
}

fn graph_json(g: &DualGraph) -> Value {
    serde_json::to_value(GraphJson::from(g)).expect("graph serializes")
}

fn graph_text(g: &DualGraph) -> String {
    let mut out = String::new();
    for (n, c) in g.curves() {
        let b = if c.boundary { "" } else { "  (not in boundary)" };
        writeln!(out, "{n} {}{b}", c.weight).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "{a} -- {b}").unwrap();
    }
    out
}

fn graph_report(g: &DualGraph, name: &str, format: Format) -> String {
    match format {
        Format::Json => pretty(&graph_json(g)),
        Format::Dot => io::to_dot(g, name),
        Format::Text => graph_text(g),
    }
}

fn hj(n: u64, d: u64, format: Format) -> Result<Report, Error> {
    let c = hj_expand(Fraction::new(n, d)?)?;
    let body = match format {
        Format::Json => pretty(&json!({ "n": n, "d": d, "chain": c.entries() })),
        Format::Dot => io::to_dot(&DualGraph::chain("E", &c.weights(), true), &format!("hj_{n}_{d}")),
        Format::Text => {
            let v: Vec<String> = c.entries().iter().map(u64::to_string).collect();
            format!("{}\n", v.join(" "))
        }
    };
    Ok(Report::ok(body))
}

fn resolve(n: u64, d: u64, format: Format) -> Result<Report, Error> {
    let g = resolution_chain(CyclicQuotientType::new(n, d)?);
    Ok(Report::ok(graph_report(&g, &format!("resolution_{n}_{d}"), format)))
}

fn fork(file: &Path, format: Format) -> Result<Report, Error> {
    let spec = ForkSpec::from_json(&read(file)?)?;
    let r = validate_fork(&spec);
    let body = match format {
        Format::Json => pretty(&json!({
            "admissible": r.admissible,
            "determinants": r.determinants,
            "negative_definite": r.negative_definite,
            "platonic": r.platonic,
            "valid": r.is_valid(),
        })),
        Format::Dot => io::to_dot(&spec.realize(), "fork"),
        Format::Text => {
            let [a, b, c] = r.determinants;
            format!(
                "negative definite: {}\nadmissible: {}\ndeterminants: {a} {b} {c}\nplatonic: {}\nvalid: {}\n",
                r.negative_definite,
                r.admissible,
                r.platonic,
                r.is_valid()
            )
        }
    };
    Ok(Report { body, holds: r.is_valid() })
}

fn fundcycle(file: &Path, format: Format) -> Result<Report, Error> {
    let g = io::from_json(&read(file)?)?;
    let z = fundamental_cycle(&g)?;
    let sq = intersection_number(&g, &z, &z)?;
    let kind = classify_exceptional(&g);
    let body = match format {
        Format::Json => pretty(&json!({
            "cycle": divisor_json(&z),
            "self_intersection": rational_json(&sq),
            "type": kind,
        })),
        Format::Dot => {
            let labelled = g.renamed(|n| format!("{n} x{}", z.coeff(n)));
            io::to_dot(&labelled, "fundamental_cycle")
        }
        Format::Text => format!("Z = {z}\nZ.Z = {sq}\n"),
    };
    Ok(Report::ok(body))
}

fn parse_chain(s: &str) -> Result<HJChain, Error> {
    let entries = s
        .trim_matches(|c| c == '[' || c == ']')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|e| Error::Input(format!("chain entry `{t}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.is_empty() {
        return Err(Error::Input("empty chain".into()));
    }
    HJChain::new(entries)
}

fn complete_fiber_cmd(chain: &str, attach: End, format: Format) -> Result<Report, Error> {
    let t = parse_chain(chain)?;
    let end = match attach {
        End::First => ChainEnd::First,
        End::Last => ChainEnd::Last,
    };
    let fc = complete_fiber(&t, end)?;
    let body = match format {
        Format::Json => pretty(&json!({
            "graph": graph_json(&fc.fiber_graph),
            "m_f": fc.m_f,
            "multiplicities": divisor_json(&fc.multiplicities),
            "r": fc.r.entries(),
            "t": t.entries(),
        })),
        Format::Dot => io::to_dot(&fc.fiber_graph, "fiber"),
        Format::Text => {
            let r: Vec<String> = fc.r.entries().iter().map(u64::to_string).collect();
            format!("R = {}\nm(F) = {}\nfiber = {}\n", r.join(" "), fc.m_f, fc.multiplicities)
        }
    };
    Ok(Report::ok(body))
}

fn completion(model: GroupModel, format: Format) -> Result<Report, Error> {
    let sc = build_standard_completion(&model)?;
    sc.check()?;
    let lc = log_canonical_class(&sc)?;
    let fd = freeness_defect(&sc)?;
    let holds = lc.verified && fd.verified;
    let body = match format {
        Format::Json => pretty(&json!({
            "completion": sc.to_json_value(),
            "freeness_defect": {
                "effective": fd.effective,
                "failures": fd.failures,
                "l": divisor_json(&fd.l),
                "scalar": rational_json(&fd.scalar),
                "verified": fd.verified,
            },
            "kind": sc.kind,
            "log_canonical": lc,
            "s0_weight": sc.graph.weight("S0")?,
        })),
        Format::Dot => io::to_dot(&sc.graph, "completion"),
        Format::Text => {
            let mut out = graph_text(&sc.graph);
            for f in &sc.fibers {
                writeln!(out, "fiber {}: m = {}, {}", f.label, f.multiplicity, f.divisor).unwrap();
            }
            writeln!(out, "D + K = {} (verified: {})", lc.formula, lc.verified).unwrap();
            for e in &lc.failures {
                writeln!(out, "  mismatch: {e}").unwrap();
            }
            writeln!(out, "freeness defect: {}*l + L, L = {} (verified: {})", fd.scalar, fd.l, fd.verified).unwrap();
            out
        }
    };
    Ok(Report { body, holds })
}

fn pencil(n: u64, a: u64, contract: bool, format: Format) -> Result<Report, Error> {
    let pr = resolve_pencil(n, a)?;
    let cusp = cusp_data(n, a)?;
    let is_fiber = verify_fiber(&pr.graph, &pr.special_member);
    let hc = contract.then(|| contract_to_hirzebruch(&pr)).transpose()?;
    let body = match format {
        Format::Json => {
            let mut v = json!({
                "a": a,
                "cusp": cusp,
                "graph": graph_json(&pr.graph),
                "member": divisor_json(&pr.special_member),
                "member_is_fiber": is_fiber,
                "member_squares": pr.member_squares,
                "n": n,
                "section": pr.section,
                "steps": pr.steps,
            });
            if let Some(hc) = &hc {
                v["contraction"] = json!({
                    "final_graph": graph_json(&hc.final_graph),
                    "schedule": hc.schedule,
                });
            }
            pretty(&v)
        }
        Format::Dot => match &hc {
            Some(hc) => io::to_dot(&hc.final_graph, &format!("hirzebruch_{n}")),
            None => pr.to_dot(),
        },
        Format::Text => {
            let mut out = graph_text(&pr.graph);
            writeln!(out, "C0' = {}", pr.special_member).unwrap();
            writeln!(out, "fiber: {is_fiber}").unwrap();
            let m: Vec<String> = cusp.mult_seq.entries().iter().map(u64::to_string).collect();
            writeln!(out, "cusp {:?}, multiplicities {}", cusp.cusp_type, m.join(" ")).unwrap();
            if let Some(hc) = &hc {
                writeln!(out, "contract: {}", hc.schedule.join(" ")).unwrap();
                out.push_str(&graph_text(&hc.final_graph));
            }
            out
        }
    };
    Ok(Report { body, holds: is_fiber })
}

fn keller(f: &str, g: &str, act: GroupAction, format: Format) -> Result<Report, Error> {
    let e = PolyEndomorphism::parse(f, g)?;
    let cert = certify(&e, act);
    let holds = cert.verdict == Verdict::AutomorphismByTheorem;
    let body = match format {
        Format::Json => {
            let mut v = serde_json::to_value(&cert).expect("certificate serializes");
            v["verdict"] = json!(cert.verdict.to_string());
            v["map"] = json!([e.f.to_string(), e.g.to_string()]);
            v["action"] = json!([act.n(), act.d()]);
            pretty(&v)
        }
        Format::Dot => return Err(Error::Input("keller has no graph output; use --format text or json".into())),
        Format::Text => {
            let mut out = format!("{}\n", cert.verdict);
            writeln!(out, "jacobian: {}", cert.jacobian).unwrap();
            if let Some(r) = &cert.origin_fiber {
                writeln!(out, "origin fiber: {}", r.diagnostic).unwrap();
            }
            out
        }
    };
    Ok(Report { body, holds })
}

fn run(cli: Cli) -> Result<Report, Error> {
    let fmt = cli.format;
    match cli.command {
        Command::Hj { n, d } => hj(n, d, fmt),
        Command::Resolve { n, d } => resolve(n, d, fmt),
        Command::Fork { file } => fork(&file, fmt),
        Command::Fundcycle { file } => fundcycle(&file, fmt),
        Command::CompleteFiber { chain, attach } => complete_fiber_cmd(&chain, attach, fmt),
        Command::Completion { n, d, fork } => {
            let model = match (fork, n, d) {
                (Some(file), _, _) => GroupModel::non_cyclic(ForkSpec::from_json(&read(&file)?)?),
                (None, Some(n), Some(d)) => GroupModel::cyclic(CyclicQuotientType::new(n, d)?),
                _ => unreachable!("clap enforces n d or --fork"),
            };
            completion(model, fmt)
        }
        Command::Pencil { n, a, contract } => pencil(n, a, contract, fmt),
        Command::Keller { f, g, action } => keller(&f, &g, action, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(r) => {
            print!("{}", r.body);
            if r.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
