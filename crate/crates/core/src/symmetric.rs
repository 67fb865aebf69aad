//! Symmetric implication algebras: an implication algebra with an
//! involutive automorphism `T`, and the reflection it induces.

use thiserror::Error;

use crate::algebra::{AlgebraError, FinAlgebra};
use crate::cubic::CubicAlg;
use crate::report::{CheckReport, Checker};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("symmetry table has {got} entries for {n} elements")]
    Shape { n: usize, got: usize },
    #[error("symmetry is not an involution at {0}")]
    NotInvolution(String),
    #[error("symmetry does not preserve {op} at ({x}, {y})")]
    NotAutomorphism { op: &'static str, x: String, y: String },
}

/// The three subdirectly irreducible symmetric implication algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Two-element chain, trivial symmetry.
    A2,
    /// `{a, b, 1}` with `a v b = 1`, symmetry swapping `a` and `b`.
    A3,
    /// `2 x 2` with the coordinate twist.
    A4,
}

/// Equational bases of the varieties generated by the builtins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `x -> T(x) = 1`.
    A2Basis,
    /// `x v T(x) = 1`.
    A3Basis,
    /// `(x -> T(x)) v y v T(y) = 1`.
    A23Basis,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::A2Basis => "x->Tx=1",
            Identity::A3Basis => "xvTx=1",
            Identity::A23Basis => "(x->Tx)vyvTy=1",
        }
    }
}

/// Implication algebra plus a validated involutive automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymAlgebra {
    base: FinAlgebra,
    t: Vec<usize>,
}

impl SymAlgebra {
    pub fn new(base: FinAlgebra, t: Vec<usize>) -> Result<Self, SymError> {
        let n = base.len();
        if t.len() != n {
            return Err(SymError::Shape { n, got: t.len() });
        }
        if let Some(&bad) = t.iter().find(|&&v| v >= n) {
            return Err(AlgebraError::OutOfRange(bad, n).into());
        }
        base.imp_table()?;
        if let Some(x) = (0..n).find(|&x| t[t[x]] != x) {
            return Err(SymError::NotInvolution(base.label(x).to_string()));
        }
        for x in 0..n {
            for y in 0..n {
                let bad = if t[base.join(x, y)] != base.join(t[x], t[y]) {
                    Some("join")
                } else if t[base.arrow(x, y)] != base.arrow(t[x], t[y]) {
                    Some("implication")
                } else {
                    None
                };
                if let Some(op) = bad {
                    return Err(SymError::NotAutomorphism {
                        op,
                        x: base.label(x).to_string(),
                        y: base.label(y).to_string(),
                    });
                }
            }
        }
        Ok(SymAlgebra { base, t })
    }

    pub fn builtin(which: Builtin) -> Self {
        let (join, top, labels, t): (Vec<usize>, usize, Vec<&str>, Vec<usize>) = match which {
            Builtin::A2 => (vec![0, 1, 1, 1], 1, vec!["<0,0>", "<1,1>"], vec![0, 1]),
            Builtin::A3 => (vec![0, 2, 2, 2, 1, 2, 2, 2, 2], 2, vec!["a", "b", "1"], vec![1, 0, 2]),
            Builtin::A4 => {
                // index 2p + q for <p,q>
                let join = (0..16).map(|i| (i / 4) | (i % 4)).collect();
                (join, 3, vec!["<0,0>", "<0,1>", "<1,0>", "<1,1>"], vec![0, 2, 1, 3])
            }
        };
        let labels = labels.into_iter().map(String::from).collect();
        let base = FinAlgebra::new(join, top, Some(labels)).expect("builtin table");
        SymAlgebra::new(base, t).expect("builtin symmetry")
    }

    /// A cubic algebra with `T = delta(1, .)`.
    pub fn from_cubic(c: &CubicAlg) -> Result<Self, SymError> {
        let t = (0..c.len()).map(|x| c.delta(c.top(), x)).collect();
        SymAlgebra::new(c.base().clone(), t)
    }

    pub fn base(&self) -> &FinAlgebra {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    #[inline]
    pub fn t(&self, x: usize) -> usize {
        self.t[x]
    }

    pub fn t_table(&self) -> &[usize] {
        &self.t
    }

    /// Componentwise product, element `(i, j)` at `i * |other| + j`.
    pub fn product(&self, other: &SymAlgebra) -> SymAlgebra {
        let m = other.len();
        let base = self.base.product(&other.base);
        let t = (0..base.len()).map(|k| self.t(k / m) * m + other.t(k % m)).collect();
        SymAlgebra::new(base, t).expect("product of symmetric algebras")
    }

    /// Sub-algebra on an up-closed (hence implication-closed) `T`-stable set.
    pub fn restrict(&self, elems: &[usize]) -> Result<SymAlgebra, SymError> {
        let (base, _) = self.base.restrict(elems)?;
        let mut pos = vec![usize::MAX; self.len()];
        elems.iter().enumerate().for_each(|(i, &e)| pos[e] = i);
        let t: Vec<usize> = elems.iter().map(|&e| pos[self.t(e)]).collect();
        if t.contains(&usize::MAX) {
            return Err(AlgebraError::NotSubalgebra.into());
        }
        SymAlgebra::new(base, t)
    }

    /// Evaluates one of the basis identities on every tuple.
    pub fn eval_identity(&self, id: Identity) -> CheckReport {
        let b = &self.base;
        let top = b.top();
        let mut c = Checker::new(format!("identity {}", id.name()), b.labels());
        let show = |v: usize| (v != top).then(|| format!("value {}", b.label(v)));
        match id {
            Identity::A2Basis => c.law_detail::<1, _>(id.name(), |[x]| show(b.arrow(x, self.t(x)))),
            Identity::A3Basis => c.law_detail::<1, _>(id.name(), |[x]| show(b.join(x, self.t(x)))),
            Identity::A23Basis => c.law_detail::<2, _>(id.name(), |[x, y]| {
                show(b.join(b.join(b.arrow(x, self.t(x)), y), self.t(y)))
            }),
        };
        c.finish()
    }

    /// `x meet T(x -> y)` exists for every `y <= x`.
    pub fn is_locally_symmetric(&self) -> CheckReport {
        let b = &self.base;
        let mut c = Checker::new("locally-symmetric", b.labels());
        c.law::<2, _>("local-meet", |[x, y]| !b.leq(y, x) || b.meet(x, self.t(b.arrow(x, y))).is_some());
        c.finish()
    }

    /// `delta(b, a) = b meet T(b -> a)` on comparable pairs where the meet exists.
    pub fn derived_delta(&self) -> DeltaTable {
        let b = &self.base;
        DeltaTable::from_fn(b, |hi, lo| b.meet(hi, self.t(b.arrow(hi, lo))))
    }
}

/// A partial reflection `delta(b, a)`, defined at most for `a <= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTable {
    n: usize,
    table: Vec<Option<u32>>,
}

impl DeltaTable {
    /// Tabulates `f(b, a)` over the comparable pairs `a <= b` of `alg`.
    pub fn from_fn(alg: &FinAlgebra, f: impl Fn(usize, usize) -> Option<usize>) -> Self {
        let n = alg.len();
        let table = (0..n * n)
            .map(|i| {
                let (hi, lo) = (i / n, i % n);
                if alg.leq(lo, hi) {
                    f(hi, lo).map(|v| v as u32)
                } else {
                    None
                }
            })
            .collect();
        DeltaTable { n, table }
    }

    /// Restriction of a totalized reflection to comparable pairs.
    pub fn from_cubic(c: &CubicAlg) -> Self {
        Self::from_fn(c.base(), |hi, lo| Some(c.delta(hi, lo)))
    }

    #[inline]
    pub fn get(&self, b: usize, a: usize) -> Option<usize> {
        self.table[b * self.n + a].map(|v| v as usize)
    }

    /// Defined on every comparable pair.
    pub fn is_total_on(&self, alg: &FinAlgebra) -> bool {
        (0..self.n * self.n).all(|i| !alg.leq(i % self.n, i / self.n) || self.table[i].is_some())
    }
}

/// Clauses (a)-(g) of the Delta-operator definition. Clause (f) is read as
/// "no common lower bound at all".
pub fn check_delta_operator(s: &SymAlgebra, d: &DeltaTable) -> CheckReport {
    let b = s.base();
    let top = b.top();
    let mut c = Checker::new("delta-operator", b.labels());
    // quantifier order is (a, b[, c]) with a <= b <= c
    c.law::<2, _>("a", |[x, y]| !b.leq(x, y) || d.get(y, x).is_some_and(|v| b.leq(v, y)));
    if c.is_failed() {
        return c.finish();
    }
    let d = |hi: usize, lo: usize| d.get(hi, lo).expect("clause (a) holds");
    c.law::<1, _>("b", |[x]| d(x, x) == x)
        .law::<2, _>("c", |[x, y]| !b.leq(x, y) || d(y, d(y, x)) == x)
        .law::<3, _>("d", |[x, y, z]| !(b.leq(x, y) && b.leq(y, z)) || b.leq(d(z, x), d(z, y)))
        .law::<3, _>("e", |[x, y, z]| !(b.leq(x, y) && b.leq(y, z)) || d(z, d(y, x)) == d(d(z, y), d(z, x)))
        .law::<2, _>("f", |[x, y]| !b.lt(x, y) || d(y, x) == x || !b.bounded_below(d(y, x), x))
        .law::<2, _>("g", |[x, y]| !b.leq(x, y) || b.meet(y, d(top, b.arrow(y, x))) == Some(d(y, x)));
    c.finish()
}

/// The reflection lemmas for a locally symmetric member of the join of the
/// two-generator varieties, run on its derived reflection.
pub fn check_delta_lemmas(s: &SymAlgebra) -> CheckReport {
    let basis = s.eval_identity(Identity::A23Basis);
    if !basis.passed() {
        return CheckReport::not_applicable("delta-lemmas", "outside the variety generated by A2 and A3");
    }
    if !s.is_locally_symmetric().passed() {
        return CheckReport::not_applicable("delta-lemmas", "not locally symmetric");
    }
    let dt = s.derived_delta();
    let b = s.base();
    let top = b.top();
    let t = |x| s.t(x);
    let imp = |x, y| b.arrow(x, y);
    let d = |hi: usize, lo: usize| dt.get(hi, lo).expect("locally symmetric");
    let chain = |x, y, z| b.leq(x, y) && b.leq(y, z);
    let mut c = Checker::new("delta-lemmas", b.labels());
    c.law::<1, _>("one", |[x]| d(top, x) == t(x))
        .law::<2, _>("one-corollary", |[x, y]| !b.leq(x, y) || b.meet(y, d(top, imp(y, x))) == Some(d(y, x)))
        .law::<2, _>("two", |[x, y]| !b.leq(x, y) || b.leq(d(y, x), y))
        .law::<2, _>("three", |[x, y]| !b.leq(x, y) || imp(y, d(y, x)) == t(imp(y, x)))
        .law::<2, _>("four", |[x, y]| !b.leq(x, y) || d(y, d(y, x)) == x)
        .law::<3, _>("five", |[x, y, z]| !chain(x, y, z) || b.leq(d(z, x), d(z, y)))
        .law::<2, _>("six", |[x, y]| !(b.leq(x, y) && t(x) == x) || t(y) == y)
        .law::<2, _>("seven", |[x, y]| !b.leq(x, y) || ((d(y, x) == x) == (t(imp(y, x)) == imp(y, x))))
        .law::<2, _>("eight", |[x, y]| !b.lt(x, y) || d(y, x) == x || !b.bounded_below(d(y, x), x))
        .law::<3, _>("nine", |[x, y, z]| !chain(x, y, z) || b.meet(imp(z, y), t(imp(y, x))) == Some(imp(z, d(y, x))))
        .law::<3, _>("ten", |[x, y, z]| !chain(x, y, z) || imp(d(z, y), d(z, x)) == t(imp(y, x)))
        .law::<3, _>("eleven", |[x, y, z]| !chain(x, y, z) || d(d(z, y), d(z, x)) == d(z, d(y, x)));
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_satisfy_their_bases() {
        let a2 = SymAlgebra::builtin(Builtin::A2);
        assert!(a2.eval_identity(Identity::A2Basis).passed());
        assert!(a2.eval_identity(Identity::A23Basis).passed());
        // with T the identity, x v Tx = x
        let r = a2.eval_identity(Identity::A3Basis);
        assert_eq!(r.witness.unwrap().labels, ["<0,0>"]);
        let a3 = SymAlgebra::builtin(Builtin::A3);
        assert!(a3.eval_identity(Identity::A3Basis).passed());
        assert!(a3.eval_identity(Identity::A23Basis).passed());
        assert!(a3.eval_identity(Identity::A2Basis).failed());
    }

    #[test]
    fn a4_breaks_the_joint_basis() {
        let a4 = SymAlgebra::builtin(Builtin::A4);
        let r = a4.eval_identity(Identity::A23Basis);
        let w = r.witness.unwrap();
        assert_eq!(w.labels, ["<0,1>", "<0,0>"]);
        assert_eq!(w.detail.as_deref(), Some("value <1,0>"));
        assert!(a4.eval_identity(Identity::A2Basis).failed());
        assert!(a4.eval_identity(Identity::A3Basis).failed());
    }

    #[test]
    fn local_symmetry_and_derived_reflection() {
        let a3 = SymAlgebra::builtin(Builtin::A3);
        assert!(a3.is_locally_symmetric().passed());
        let d = a3.derived_delta();
        assert_eq!(d.get(2, 0), Some(1));
        assert_eq!(d.get(0, 0), Some(0));
        assert!(check_delta_operator(&a3, &d).passed());
        assert!(check_delta_lemmas(&a3).passed());
        assert!(SymAlgebra::builtin(Builtin::A4).is_locally_symmetric().passed());
    }

    #[test]
    fn a4_fails_delta_clause_c() {
        let a4 = SymAlgebra::builtin(Builtin::A4);
        let r = check_delta_operator(&a4, &a4.derived_delta());
        assert_eq!(r.rule(), Some("c"));
        assert_eq!(r.witness.unwrap().labels, ["<0,0>", "<0,1>"]);
        assert_eq!(check_delta_lemmas(&a4).status, crate::report::Status::NotApplicable);
    }

    #[test]
    fn validation_rejects_bad_symmetries() {
        let a4 = SymAlgebra::builtin(Builtin::A4);
        let base = a4.base().clone();
        assert!(matches!(SymAlgebra::new(base.clone(), vec![1, 0, 2, 3]), Err(SymError::NotAutomorphism { .. })));
        assert!(matches!(SymAlgebra::new(base.clone(), vec![0, 2, 3, 1]), Err(SymError::NotInvolution(_))));
        assert!(matches!(SymAlgebra::new(base, vec![0, 1]), Err(SymError::Shape { .. })));
    }

    #[test]
    fn cubic_symmetry_is_reflection_at_top() {
        let s = crate::models::signed_algebra(1).unwrap();
        let sym = SymAlgebra::from_cubic(&s).unwrap();
        assert_eq!(sym.t_table(), &[0, 2, 1]);
        assert!(sym.eval_identity(Identity::A3Basis).passed());
    }
}
