use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mcalg::envelope::{check_envelope, envelope, presentation, PresentedSym};
use mcalg::fixpoints::FixContext;
use mcalg::spec_file::{parse_spec, AlgebraSpec, SpecFile};
use mcalg::suites::{build, exit_code, timed, to_json, Built};

/// Finite cubic, multicubic and symmetric implication algebras: build them
/// from small spec files and check their laws exhaustively.
#[derive(Parser)]
#[command(name = "mcalg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the algebra and list its elements.
    Build { spec: String },
    /// Run a law suite (`all` by default, or the file's `suites=`).
    Check {
        spec: String,
        #[arg(long)]
        suite: Option<String>,
        /// One JSON object per suite instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Split a multicube into its Boolean part and its nucleus.
    Decompose { spec: String },
    /// Fixed-point data, for every element or at one element.
    Fixedpoints {
        spec: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Compute the locally symmetric envelope, printed as a presented spec.
    Envelope { spec: String },
    /// Hasse diagram in Graphviz format.
    ExportDot { spec: String },
}

fn read_spec(path: &str) -> Result<SpecFile, String> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    parse_spec(&text).map_err(|e| format!("{path}: {e}"))
}

fn load(path: &str) -> Result<(SpecFile, Built), String> {
    let spec = read_spec(path)?;
    let built = build(&spec).map_err(|e| e.to_string())?;
    Ok((spec, built))
}

fn names(b: &Built, xs: &[usize]) -> String {
    let v: Vec<&str> = xs.iter().map(|&x| b.base.label(x)).collect();
    format!("{{{}}}", v.join(", "))
}

fn cmd_build(path: &str) -> Result<i32, String> {
    let (_, b) = load(path)?;
    println!("{}: {} elements", b.name, b.len());
    for x in b.base.elements() {
        match &b.sym {
            Some(s) => println!("  {}  T={}", b.base.label(x), b.base.label(s.t(x))),
            None => println!("  {}", b.base.label(x)),
        }
    }
    Ok(0)
}

fn cmd_check(path: &str, suite: Option<String>, json: bool) -> Result<i32, String> {
    let (spec, b) = load(path)?;
    let suites = match suite {
        Some(s) => vec![s],
        None if spec.suites.is_empty() => vec!["all".to_string()],
        None => spec.suites.clone(),
    };
    let mut code = 0;
    for s in &suites {
        let (r, ms) = timed(&b, s).map_err(|e| e.to_string())?;
        if json {
            println!("{}", to_json(&b, s, &r, ms));
        } else {
            let text = r.to_string();
            let (head, notes) = text.split_once('\n').unwrap_or((&text, ""));
            println!("{head}  [{}, {} elements, {ms} ms]", b.name, b.len());
            if !notes.is_empty() {
                println!("{notes}");
            }
        }
        code = code.max(exit_code(&r));
    }
    Ok(code)
}

fn cmd_decompose(path: &str) -> Result<i32, String> {
    let (_, b) = load(path)?;
    let m = b.multicube.as_ref().ok_or_else(|| format!("{} is not a multicube", b.name))?;
    let d = m.decompose();
    let nl = d.nucleus.base();
    for x in b.base.elements() {
        let (s, n) = d.split(d.map[x]);
        println!("{} -> <{}, {}>", b.base.label(x), d.boolean.label(s), nl.label(n));
    }
    let r = m.check_decomposition();
    println!("{r}");
    Ok(exit_code(&r))
}

fn cmd_fixedpoints(path: &str, at: Option<String>) -> Result<i32, String> {
    let (_, b) = load(path)?;
    let sym = b.sym.clone().ok_or_else(|| format!("{} has no symmetry", b.name))?;
    let ctx = FixContext::derived(sym).map_err(|e| e.to_string())?;
    let top = b.base.top();
    match at {
        Some(label) => {
            let u = b.base.find(&label).ok_or_else(|| format!("no element {label}"))?;
            println!("element: {label}");
            println!("Fix: {}", names(&b, &ctx.fix_set(u)));
            println!("Phi: {}", names(&b, &ctx.phi_set(u)));
            println!("beta: {}", b.base.label(ctx.beta(u, top)));
            println!("delta: {}", b.base.label(ctx.delta_top(u)));
            println!("nowhere invariant: {}", ctx.is_nowhere_invariant(u));
            println!("L*: {}", names(&b, &ctx.localization_star(u)));
            println!("L: {}", names(&b, &ctx.localization(u)));
            for (x, (p, q)) in ctx.psi_iso(u) {
                println!("Psi({}) = <{}, {}>", b.base.label(x), b.base.label(p), b.base.label(q));
            }
        }
        None => {
            println!("element  beta  delta  nowhere-invariant");
            for u in b.base.elements() {
                println!(
                    "{}  {}  {}  {}",
                    b.base.label(u),
                    b.base.label(ctx.beta_top(u)),
                    b.base.label(ctx.delta_top(u)),
                    ctx.is_nowhere_invariant(u)
                );
            }
            println!("nucleus: {}", names(&b, &ctx.nucleus_elements()));
            println!("Phi(1): {}", names(&b, &ctx.phi_one()));
        }
    }
    Ok(0)
}

fn cmd_envelope(path: &str) -> Result<i32, String> {
    let (_, b) = load(path)?;
    let sym = b.sym.clone().ok_or_else(|| format!("{} has no symmetry", b.name))?;
    let p = PresentedSym::new(sym).map_err(|e| e.to_string())?;
    let r = envelope(&p).map_err(|e| e.to_string())?;
    let (atoms, masks, swaps) = presentation(&r.env);
    let out = SpecFile {
        algebra: AlgebraSpec::Presented { atoms, elements: masks.clone(), swaps },
        suites: Vec::new(),
        fault: None,
    };
    print!("{out}");
    for (x, &y) in r.embed.iter().enumerate() {
        println!("# e: {} -> {} ({})", b.base.label(x), r.env.base().label(y), masks[y]);
    }
    let rep = check_envelope(&p, &r);
    println!("# {}", rep.to_string().replace('\n', "\n# "));
    Ok(exit_code(&rep))
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Build { spec } => cmd_build(&spec),
        Command::Check { spec, suite, json } => cmd_check(&spec, suite, json),
        Command::Decompose { spec } => cmd_decompose(&spec),
        Command::Fixedpoints { spec, at } => cmd_fixedpoints(&spec, at),
        Command::Envelope { spec } => cmd_envelope(&spec),
        Command::ExportDot { spec } => {
            let (_, b) = load(&spec)?;
            print!("{}", mcalg::dot::hasse_dot(&b.name, &b.base, b.sym.as_ref()));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
