//! Building algebras from spec files and running named suites over them.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::FinAlgebra;
use crate::cubic::CubicAlg;
use crate::envelope::{self, EnvError, PresentedSym, DEFAULT_BUDGET};
use crate::fixpoints::FixContext;
use crate::models::{boolean_algebra, interval_algebra, signed_algebra, ModelError};
use crate::multicube::{McError, McSpec, Multicube};
use crate::report::{CheckReport, Status, Witness};
use crate::spec_file::{AlgebraSpec, Factor, Fault, SpecFile};
use crate::symmetric::{check_delta_lemmas, check_delta_operator, Builtin, Identity, SymAlgebra, SymError};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Multicube(#[from] McError),
    #[error(transparent)]
    Envelope(#[from] EnvError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("fault: {0}")]
    Fault(String),
}

/// An algebra built from a spec file, with whatever extra structure its
/// kind carries.
#[derive(Clone, Debug)]
pub struct Built {
    pub name: String,
    pub base: FinAlgebra,
    /// The cubic algebra checked by the cubic suites (the nucleus, for
    /// multicubes).
    pub cubic: Option<CubicAlg>,
    pub multicube: Option<Multicube>,
    pub sym: Option<SymAlgebra>,
}

impl Built {
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }
}

fn cubic_built(name: String, c: CubicAlg) -> Result<Built, BuildError> {
    let sym = SymAlgebra::from_cubic(&c)?;
    Ok(Built { name, base: c.base().clone(), cubic: Some(c), multicube: None, sym: Some(sym) })
}

fn multicube(sizes: &[i64]) -> Result<Multicube, BuildError> {
    Ok(Multicube::new(&McSpec::new(sizes)?)?)
}

/// `T` is the identity on a Boolean algebra.
fn boolean_sym(k: u32) -> Result<SymAlgebra, BuildError> {
    let b = boolean_algebra(k)?;
    let t = b.elements().collect();
    Ok(SymAlgebra::new(b, t)?)
}

fn factor_parts(f: &Factor) -> Result<(SymAlgebra, Option<CubicAlg>), BuildError> {
    Ok(match f {
        Factor::Signed(k) => {
            let c = signed_algebra(*k)?;
            (SymAlgebra::from_cubic(&c)?, Some(c))
        }
        Factor::Interval(k) => {
            let c = interval_algebra(*k)?;
            (SymAlgebra::from_cubic(&c)?, Some(c))
        }
        Factor::Multicube(n) => (multicube(n)?.sym(), None),
        Factor::Boolean(k) => (boolean_sym(*k)?, None),
    })
}

pub fn build(spec: &SpecFile) -> Result<Built, BuildError> {
    let built = match &spec.algebra {
        AlgebraSpec::Multicube { sizes } => {
            let m = multicube(sizes)?;
            let list: Vec<String> = sizes.iter().map(|n| n.to_string()).collect();
            Built {
                name: format!("multicube n=({})", list.join(",")),
                base: m.algebra().clone(),
                cubic: Some(m.nucleus()),
                sym: Some(m.sym()),
                multicube: Some(m),
            }
        }
        AlgebraSpec::Signed { ground } => cubic_built(format!("signed ground={ground}"), signed_algebra(*ground)?)?,
        AlgebraSpec::Interval { ground } => {
            cubic_built(format!("interval ground={ground}"), interval_algebra(*ground)?)?
        }
        AlgebraSpec::Presented { atoms, elements, swaps } => {
            let p = PresentedSym::from_masks(*atoms, elements, swaps)?;
            let sym = p.sym().clone();
            Built {
                name: format!("presented atoms={atoms}"),
                base: sym.base().clone(),
                cubic: None,
                multicube: None,
                sym: Some(sym),
            }
        }
        AlgebraSpec::Product { factors } => {
            let mut parts = factors.iter().map(factor_parts);
            let (mut sym, mut cubic) = parts.next().expect("at least one factor")?;
            for part in parts {
                let (s, c) = part?;
                sym = sym.product(&s);
                cubic = cubic.zip(c).map(|(x, y)| x.product(&y));
            }
            let names: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
            Built {
                name: format!("product {}", names.join(" x ")),
                base: sym.base().clone(),
                cubic,
                multicube: None,
                sym: Some(sym),
            }
        }
    };
    match spec.fault {
        None => Ok(built),
        Some(fault) => apply_fault(built, fault),
    }
}

fn apply_fault(b: Built, fault: Fault) -> Result<Built, BuildError> {
    let n = b.len();
    match fault {
        Fault::Join(x, y, z) => {
            if x.max(y).max(z) >= n {
                return Err(BuildError::Fault(format!("index out of range for {n} elements")));
            }
            let base = FinAlgebra::from_fn(n, b.base.top(), Some(b.base.labels().to_vec()), |p, q| {
                if (p, q) == (x, y) || (p, q) == (y, x) {
                    z
                } else {
                    b.base.join(p, q)
                }
            })
            .map_err(|e| BuildError::Fault(e.to_string()))?;
            Ok(Built { name: format!("{} with corrupted join", b.name), base, cubic: None, multicube: None, sym: None })
        }
        Fault::IdentityReflection => {
            let Some(c) = b.cubic else {
                return Err(BuildError::Fault("no reflection to corrupt".into()));
            };
            let m = c.len();
            let cubic = CubicAlg::new(c.base().clone(), (0..m * m).map(|i| i % m).collect())
                .map_err(|e| BuildError::Fault(e.to_string()))?;
            Ok(Built {
                name: format!("{} with identity reflection", b.name),
                base: b.base,
                cubic: Some(cubic),
                multicube: None,
                sym: None,
            })
        }
    }
}

/// Every suite name, in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "implication",
    "cubic",
    "mr",
    "order-lemma",
    "basicGD",
    "compGD",
    "weak-distributivity",
    "delta-complement",
    "centre",
    "invariance",
    "nucleus",
    "decomposition",
    "symmetric-identities",
    "a2-basis",
    "a3-basis",
    "a23-basis",
    "locally-symmetric",
    "delta-operator",
    "delta-lemmas",
    "fixed-points",
    "envelope",
];

/// Suites that classify rather than assert a law; `all` leaves them out.
const CLASSIFIERS: &[&str] = &["mr", "a2-basis", "a3-basis"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite '{0}'")]
    Unknown(String),
    #[error("suite {suite} does not apply to {algebra}")]
    Inapplicable { suite: String, algebra: String },
}

/// Runs one named suite, or `all` of those the algebra supports.
pub fn run_suite(b: &Built, name: &str) -> Result<CheckReport, SuiteError> {
    if name == "all" {
        let mut parts = Vec::new();
        let mut skipped = Vec::new();
        for s in SUITES.iter().filter(|s| !CLASSIFIERS.contains(s)) {
            match run_one(b, s) {
                Some(r) if r.status == Status::NotApplicable => skipped.push(format!("{s}: {}", r.notes.join("; "))),
                Some(r) => parts.push(r),
                None => {}
            }
        }
        let mut r = CheckReport::combine("all", parts);
        r.notes.extend(skipped.into_iter().map(|s| format!("not applicable: {s}")));
        return Ok(r);
    }
    if !SUITES.contains(&name) {
        return Err(SuiteError::Unknown(name.into()));
    }
    run_one(b, name).ok_or_else(|| SuiteError::Inapplicable { suite: name.into(), algebra: b.name.clone() })
}

fn run_one(b: &Built, name: &str) -> Option<CheckReport> {
    let mc = || b.multicube.as_ref();
    let sym = || b.sym.as_ref();
    Some(match name {
        "implication" => b.base.check_implication_axioms(),
        "cubic" => b.cubic.as_ref()?.check_all(),
        "mr" => b.cubic.as_ref()?.check_mr(),
        "order-lemma" => mc()?.check_order_lemma(),
        "basicGD" => mc()?.check_basic_reflection(),
        "compGD" => mc()?.check_complement(),
        "weak-distributivity" => mc()?.check_weak_distributivity(),
        "delta-complement" => mc()?.check_reflection_complement_link(),
        "centre" => mc()?.check_centre_monotone(),
        "invariance" => mc()?.check_invariance(),
        "nucleus" => mc()?.check_nucleus(),
        "decomposition" => mc()?.check_decomposition(),
        "symmetric-identities" => mc()?.check_symmetric_identities(),
        "a2-basis" => sym()?.eval_identity(Identity::A2Basis),
        "a3-basis" => sym()?.eval_identity(Identity::A3Basis),
        "a23-basis" => sym()?.eval_identity(Identity::A23Basis),
        "locally-symmetric" => sym()?.is_locally_symmetric(),
        "delta-operator" => {
            let s = sym()?;
            check_delta_operator(s, &s.derived_delta())
        }
        "delta-lemmas" => check_delta_lemmas(sym()?),
        "fixed-points" => match FixContext::derived(sym()?.clone()) {
            Ok(ctx) => ctx.check_all(),
            Err(e) => CheckReport::not_applicable("fixed-points", e.to_string()),
        },
        "envelope" => envelope_suite(sym()?),
        _ => return None,
    })
}

/// Envelope invariants plus the universal property into the small
/// locally symmetric algebras.
fn envelope_suite(s: &SymAlgebra) -> CheckReport {
    let Ok(p) = PresentedSym::new(s.clone()) else {
        return CheckReport::not_applicable("envelope", "T does not permute the minimal elements");
    };
    let r = match envelope::envelope(&p) {
        Ok(r) => r,
        Err(e) => return CheckReport::not_applicable("envelope", e.to_string()),
    };
    let mut parts = vec![envelope::check_envelope(&p, &r)];
    for t in [Builtin::A2, Builtin::A3, Builtin::A4] {
        parts.push(envelope::check_universal_property(&p, &r, &SymAlgebra::builtin(t), DEFAULT_BUDGET));
    }
    CheckReport::combine("envelope", parts)
}

/// 0 when everything passed, 1 on a violation, 2 when the question could
/// not be decided.
pub fn exit_code(r: &CheckReport) -> i32 {
    match r.status {
        Status::Passed => 0,
        Status::Failed => 1,
        Status::NotApplicable | Status::BudgetExceeded => 2,
    }
}

#[derive(Serialize)]
pub struct JsonReport<'a> {
    pub suite: &'a str,
    pub algebra: &'a str,
    pub size: usize,
    pub passed: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<&'a Witness>,
    pub elapsed_ms: u128,
}

/// Runs a suite and times it.
pub fn timed(b: &Built, name: &str) -> Result<(CheckReport, u128), SuiteError> {
    let start = Instant::now();
    let r = run_suite(b, name)?;
    Ok((r, start.elapsed().as_millis()))
}

pub fn to_json(b: &Built, suite: &str, r: &CheckReport, elapsed_ms: u128) -> String {
    let j = JsonReport {
        suite,
        algebra: &b.name,
        size: b.len(),
        passed: r.passed(),
        status: r.status,
        witness: r.witness.as_ref(),
        elapsed_ms,
    };
    serde_json::to_string(&j).expect("report serializes")
}
