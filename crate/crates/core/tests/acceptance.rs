//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use mcalg::envelope::{
    check_envelope, check_universal_property, compare_envelopes, envelope, envelope_base2, PresentedSym,
    DEFAULT_BUDGET,
};
use mcalg::fixpoints::FixContext;
use mcalg::models::{check_signed_interval_iso, interval_algebra, signed_algebra};
use mcalg::multicube::{McSpec, Multicube};
use mcalg::symmetric::{check_delta_lemmas, check_delta_operator, Builtin, Identity, SymAlgebra};
use mcalg::CheckReport;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn require(r: CheckReport, what: &str) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{what}: {r}"))
    }
}

fn cube(n: &[i64]) -> Multicube {
    Multicube::new(&McSpec::new(n).unwrap()).unwrap()
}

const CUBES: &[&[i64]] = &[&[1], &[1, 1], &[1, 2], &[2, 2], &[1, 1, 1]];
/// Multicubes of at most 36 elements.
const SMALL_CUBES: &[&[i64]] = &[&[1], &[2], &[3], &[4], &[1, 1], &[1, 2], &[1, 3], &[2, 2]];

fn signed_sym(k: u32) -> SymAlgebra {
    SymAlgebra::from_cubic(&signed_algebra(k).unwrap()).unwrap()
}

fn c1() -> Outcome {
    for k in 0..=3 {
        for (name, c) in [("signed", signed_algebra(k).unwrap()), ("interval", interval_algebra(k).unwrap())] {
            require(c.check_all(), &format!("{name} {k}"))?;
            require(c.check_mr(), &format!("{name} {k} MR"))?;
        }
        require(check_signed_interval_iso(k).unwrap(), &format!("iso {k}"))?;
    }
    Ok("S(X), I(P(X)) for |X| <= 3: cubic axioms, caret totality, MR; signed and interval models isomorphic".into())
}

fn c2() -> Outcome {
    let mut counts = Vec::new();
    for n in CUBES {
        let m = cube(n);
        let expect: usize = n.iter().map(|&k| 2 * k as usize + 2).product();
        if m.len() != expect {
            return Err(format!("{n:?}: {} elements, expected {expect}", m.len()));
        }
        counts.push(m.len().to_string());
        for r in [
            m.check_order_lemma(),
            m.check_basic_reflection(),
            m.check_complement(),
            m.check_weak_distributivity(),
            m.check_reflection_complement_link(),
        ] {
            require(r, &format!("{n:?}"))?;
        }
    }
    Ok(format!("multicube suites exhaustive, element counts {}", counts.join(", ")))
}

fn c3() -> Outcome {
    let mut algebras: Vec<SymAlgebra> = Vec::new();
    for n in CUBES.iter().chain(SMALL_CUBES) {
        let m = cube(n);
        require(m.check_invariance(), &format!("{n:?}"))?;
        algebras.push(m.sym());
    }
    algebras.push(SymAlgebra::builtin(Builtin::A3));
    algebras.extend((1..=3).map(signed_sym));
    for s in algebras {
        let ctx = FixContext::derived(s).map_err(|e| e.to_string())?;
        let bad = ctx.alg().elements().find(|&u| ctx.is_nowhere_invariant(u) != ctx.nowhere_invariant_brute(u));
        if let Some(u) = bad {
            return Err(format!("closed form disagrees at {}", ctx.alg().label(u)));
        }
        if ctx.alg().elements().any(|u| ctx.is_nowhere_invariant(u) != (ctx.delta_top(u) == u)) {
            return Err("u = delta(u) characterization fails".into());
        }
    }
    Ok("closed forms of nowhere invariance agree with the definition everywhere".into())
}

fn c4() -> Outcome {
    for n in CUBES {
        let m = cube(n);
        require(m.check_nucleus(), &format!("{n:?} nucleus"))?;
        require(m.check_decomposition(), &format!("{n:?} decomposition"))?;
        let ctx = FixContext::derived(m.sym()).map_err(|e| e.to_string())?;
        require(ctx.nucleus().check_all(), &format!("{n:?} abstract nucleus"))?;
        require(ctx.check_global_embed(), &format!("{n:?} global embedding"))?;
    }
    Ok("nuclei cubic; decomposition and e injective order embeddings with up-closed image".into())
}

fn c5() -> Outcome {
    let a2 = SymAlgebra::builtin(Builtin::A2);
    let a3 = SymAlgebra::builtin(Builtin::A3);
    let a4 = SymAlgebra::builtin(Builtin::A4);
    let pattern = |s: &SymAlgebra| {
        [Identity::A2Basis, Identity::A3Basis, Identity::A23Basis].map(|i| s.eval_identity(i).passed())
    };
    if pattern(&a2) != [true, false, true] || pattern(&a3) != [false, true, true] {
        return Err(format!("A2 {:?}, A3 {:?}", pattern(&a2), pattern(&a3)));
    }
    let r = a4.eval_identity(Identity::A23Basis);
    match &r.witness {
        Some(w) if w.labels == ["<0,1>", "<0,0>"] => {}
        _ => return Err(format!("A4 joint basis: {r}")),
    }
    for n in CUBES {
        let s = cube(n).sym();
        require(s.eval_identity(Identity::A23Basis), &format!("{n:?}"))?;
        require(s.is_locally_symmetric(), &format!("{n:?}"))?;
    }
    Ok(format!("A2/A3 bases as expected; A4 fails with x=<0,1>, y=<0,0> ({})", r.witness.unwrap()))
}

fn c6() -> Outcome {
    for n in CUBES {
        let m = cube(n);
        require(m.check_symmetric_identities(), &format!("{n:?}"))?;
        let s = m.sym();
        require(check_delta_operator(&s, &s.derived_delta()), &format!("{n:?} delta operator"))?;
        require(check_delta_lemmas(&s), &format!("{n:?} lemmas"))?;
    }
    let a3 = SymAlgebra::builtin(Builtin::A3);
    require(check_delta_operator(&a3, &a3.derived_delta()), "A3")?;
    require(check_delta_lemmas(&a3), "A3 lemmas")?;
    let a4 = SymAlgebra::builtin(Builtin::A4);
    let r = check_delta_operator(&a4, &a4.derived_delta());
    match (&r.witness, r.rule()) {
        (Some(w), Some("c")) if w.labels == ["<0,0>", "<0,1>"] => {}
        _ => return Err(format!("A4: {r}")),
    }
    Ok(format!("derived = geometric reflection; operator and lemmas pass; A4 fails: {}", r.witness.unwrap()))
}

fn c7() -> Outcome {
    let mut sizes = Vec::new();
    for n in SMALL_CUBES {
        let m = cube(n);
        let ctx = FixContext::derived(m.sym()).map_err(|e| e.to_string())?;
        require(ctx.check_all(), &format!("{n:?}"))?;
        if ctx.nucleus_elements() != m.nucleus_elements() {
            return Err(format!("{n:?}: nucleus differs from the multicube nucleus"));
        }
        sizes.push(m.len().to_string());
    }
    let s1 = signed_algebra(1).unwrap();
    let ctx = FixContext::derived(SymAlgebra::from_cubic(&s1).unwrap()).map_err(|e| e.to_string())?;
    require(ctx.check_phi_one_interval(1), "S({1}) Phi(1)")?;
    Ok(format!("fixed-point suites, alpha, Psi and e exhaustive on multicubes of size {}", sizes.join(", ")))
}

fn two_vertices() -> PresentedSym {
    let s = signed_sym(2);
    let b = s.base();
    let (v, w) = (b.find("<1,2|>").unwrap(), b.find("<|1,2>").unwrap());
    let elems: Vec<usize> = b.elements().filter(|&x| b.leq(v, x) || b.leq(w, x)).collect();
    PresentedSym::new(s.restrict(&elems).unwrap()).unwrap()
}

fn c8() -> Outcome {
    let a3 = PresentedSym::new(SymAlgebra::builtin(Builtin::A3)).unwrap();
    let r = envelope(&a3).map_err(|e| e.to_string())?;
    if r.env.len() != 3 || r.embed != [0, 1, 2] {
        return Err("env(A3) is not A3".into());
    }
    let atoms3 = PresentedSym::from_masks(3, &[1, 2, 3, 5, 6, 7], &[(1, 2), (5, 6)]).map_err(|e| e.to_string())?;
    let ls = envelope(&atoms3).map_err(|e| e.to_string())?;
    if ls.embed != (0..atoms3.sym().len()).collect::<Vec<_>>() {
        return Err("locally symmetric input not mapped identically".into());
    }
    require(check_envelope(&atoms3, &ls), "atoms example")?;
    let sq = two_vertices();
    let general = envelope(&sq).map_err(|e| e.to_string())?;
    let literal = envelope_base2(&sq).map_err(|e| e.to_string())?;
    require(check_envelope(&sq, &general), "square")?;
    require(check_envelope(&sq, &literal), "square, literal construction")?;
    if compare_envelopes(&literal, &general, DEFAULT_BUDGET).is_none() {
        return Err("the two constructions are not isomorphic over the input".into());
    }
    let targets: Vec<SymAlgebra> = vec![
        SymAlgebra::builtin(Builtin::A2),
        SymAlgebra::builtin(Builtin::A3),
        SymAlgebra::builtin(Builtin::A4),
        signed_sym(1),
        signed_sym(2),
        signed_sym(3),
        cube(&[1]).sym(),
        SymAlgebra::from_cubic(&interval_algebra(2).unwrap()).unwrap(),
    ];
    let a4 = PresentedSym::new(SymAlgebra::builtin(Builtin::A4)).unwrap();
    let a4_env = envelope(&a4).map_err(|e| e.to_string())?;
    let inputs = [(&a3, &r), (&atoms3, &ls), (&sq, &general), (&a4, &a4_env)];
    let mut pairs = 0;
    for (p, env) in inputs {
        for m in &targets {
            require(check_universal_property(p, env, m, DEFAULT_BUDGET), &format!("target of size {}", m.len()))?;
            pairs += 1;
        }
    }
    Ok(format!(
        "env(A3) = A3; atoms example invariant; square envelope {} elements; universal property on {pairs} pairs",
        general.env.len()
    ))
}

fn run_cli(spec: &str, suite: &str) -> Result<(i32, String), String> {
    let dir = std::env::temp_dir().join(format!("mcalg-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join(format!("{suite}.spec"));
    std::fs::write(&path, spec).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_mcalg"))
        .args(["check", path.to_str().unwrap(), "--suite", suite])
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn c9() -> Outcome {
    let mut shown = Vec::new();
    for (spec, suite, rule) in [
        ("kind=signed ground=2 fault=join:1,2,1", "implication", "rule"),
        ("kind=signed ground=2 fault=identity-reflection", "cubic", "rule a "),
    ] {
        let (code, out) = run_cli(spec, suite)?;
        if code != 1 || !out.contains(rule) {
            return Err(format!("{spec}: exit {code}, output {out}"));
        }
        shown.push(out.lines().next().unwrap_or("").to_string());
    }
    Ok(shown.join(" | "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("cubic models", c1, Duration::from_secs(5)),
        ("multicube suites", c2, Duration::from_secs(60)),
        ("nowhere invariance", c3, Duration::from_secs(300)),
        ("nucleus and embeddings", c4, Duration::from_secs(300)),
        ("variety identities", c5, Duration::from_secs(300)),
        ("Delta-operators", c6, Duration::from_secs(300)),
        ("fixed points", c7, Duration::from_secs(300)),
        ("envelopes", c8, Duration::from_secs(300)),
        ("negative controls", c9, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > *limit => Err(format!("took {took:.1?}, limit {limit:?}; {msg}")),
            o => o,
        };
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name} ({took:.2?}) - {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({took:.2?}) - {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
