//! Cubic implication algebras: a join table plus a reflection `delta`.

use crate::algebra::{AlgebraError, FinAlgebra};
use crate::report::{CheckReport, Checker};

/// Join semilattice with top and a totalized reflection table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicAlg {
    base: FinAlgebra,
    delta: Vec<u32>,
}

impl CubicAlg {
    /// Wraps a row-major table `delta[x][y]`. Only the shape is validated.
    pub fn new(base: FinAlgebra, delta: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = base.len();
        if delta.len() != n * n {
            return Err(AlgebraError::TableShape { n, got: delta.len() });
        }
        if let Some(&bad) = delta.iter().find(|&&v| v >= n) {
            return Err(AlgebraError::OutOfRange(bad, n));
        }
        Ok(CubicAlg { base, delta: delta.into_iter().map(|v| v as u32).collect() })
    }

    /// Builds the table from a partial reflection `f(b, a)` (called only with
    /// `a <= b`), totalized by `delta(x, y) = f(x v y, y)`.
    pub fn from_partial(base: FinAlgebra, f: impl Fn(usize, usize) -> usize) -> Result<Self, AlgebraError> {
        let n = base.len();
        let delta = (0..n * n).map(|i| f(base.join(i / n, i % n), i % n)).collect();
        Self::new(base, delta)
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

    pub fn top(&self) -> usize {
        self.base.top()
    }

    /// Stored (totalized) reflection.
    #[inline]
    pub fn delta(&self, x: usize, y: usize) -> usize {
        self.delta[x * self.base.len() + y] as usize
    }

    /// Reflection restricted to its natural domain `y <= x`.
    pub fn delta_partial(&self, x: usize, y: usize) -> Option<usize> {
        self.base.leq(y, x).then(|| self.delta(x, y))
    }

    /// `xy = delta(1, delta(x v y, y)) v y`.
    #[inline]
    pub fn derived_xy(&self, x: usize, y: usize) -> usize {
        let b = &self.base;
        b.join(self.delta(b.top(), self.delta(b.join(x, y), y)), y)
    }

    /// `x ^ y = x meet delta(x v y, y)`, when the meet exists.
    pub fn caret(&self, x: usize, y: usize) -> Option<usize> {
        self.base.meet(x, self.delta(self.base.join(x, y), y))
    }

    /// The second form of the caret, `x meet delta(1, xy)`.
    pub fn caret_via_top(&self, x: usize, y: usize) -> Option<usize> {
        self.base.meet(x, self.delta(self.base.top(), self.derived_xy(x, y)))
    }

    /// First pair on which the caret is undefined.
    pub fn caret_gap(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n * n).map(|i| (i / n, i % n)).find(|&(x, y)| self.caret(x, y).is_none())
    }

    /// Axioms (a)-(f) with the derived `xy`, then the totalization rule and
    /// agreement of `xy` with the relative-complement implication.
    pub fn check_cubic_axioms(&self) -> CheckReport {
        let b = &self.base;
        let d = |x, y| self.delta(x, y);
        let xy = |x, y| self.derived_xy(x, y);
        let mut c = Checker::new("cubic-axioms", b.labels());
        c.law::<2, _>("a", |[x, y]| !b.leq(x, y) || b.join(d(y, x), x) == y)
            .law::<3, _>("b", |[x, y, z]| {
                !(b.leq(x, y) && b.leq(y, z)) || d(z, d(y, x)) == d(d(z, y), d(z, x))
            })
            .law::<2, _>("c", |[x, y]| !b.leq(x, y) || d(y, d(y, x)) == x)
            .law::<3, _>("d", |[x, y, z]| !(b.leq(x, y) && b.leq(y, z)) || b.leq(d(z, x), d(z, y)))
            .law::<2, _>("e", |[x, y]| xy(xy(x, y), y) == b.join(x, y))
            .law::<3, _>("f", |[x, y, z]| xy(x, xy(y, z)) == xy(y, xy(x, z)))
            .law::<2, _>("totalization", |[x, y]| d(x, y) == d(b.join(x, y), y));
        if c.is_failed() {
            return c.finish();
        }
        match b.imp_table() {
            Err(AlgebraError::NotImplication { x, y }) => {
                c.fail("relative-complement", &[x, y], None);
            }
            Err(e) => {
                c.fail("relative-complement", &[], Some(e.to_string()));
            }
            Ok(_) => {
                c.law::<2, _>("xy-is-implication", |[x, y]| xy(x, y) == b.arrow(x, y));
            }
        }
        c.finish()
    }

    /// Eq. (1): `delta(x, y) = x meet delta(1, xy)` for `y <= x`; and the two
    /// caret forms agree (both undefined or both equal).
    pub fn check_reflection_meets(&self) -> CheckReport {
        let b = &self.base;
        let mut c = Checker::new("reflection-meets", b.labels());
        c.law::<2, _>("delta-as-meet", |[x, y]| {
            !b.leq(y, x) || b.meet(x, self.delta(b.top(), self.derived_xy(x, y))) == Some(self.delta(x, y))
        })
        .law::<2, _>("caret-forms", |[x, y]| self.caret(x, y) == self.caret_via_top(x, y))
        .law::<1, _>("caret-idempotent", |[x]| self.caret(x, x) == Some(x))
        .law::<1, _>("caret-top", |[x]| self.caret(x, b.top()) == Some(x));
        c.finish()
    }

    /// The MR-axiom in both directions, cross-checked against caret totality.
    pub fn check_mr(&self) -> CheckReport {
        let b = &self.base;
        let mut c = Checker::new("mr-axiom", b.labels());
        let admissible = |x, a, y| b.lt(a, x) && b.lt(y, x);
        c.law::<3, _>("mr-meet-absent-implies-below", |[x, a, y]| {
            !admissible(x, a, y) || b.meet(a, y).is_some() || b.lt(b.join(self.delta(x, a), y), x)
        })
        .law::<3, _>("mr-below-implies-meet-absent", |[x, a, y]| {
            !admissible(x, a, y) || !b.lt(b.join(self.delta(x, a), y), x) || b.meet(a, y).is_none()
        });
        let gap = self.caret_gap();
        if c.is_failed() {
            if gap.is_none() {
                c.note("caret is total although the MR-axiom fails");
            }
            return c.finish();
        }
        if let Some((x, y)) = gap {
            c.fail("caret-total", &[x, y], Some("MR-axiom holds but caret is undefined".into()));
        }
        c.finish()
    }

    /// `{y | exists z >= x, delta(z, x) <= y}`.
    pub fn localization(&self, x: usize) -> Vec<usize> {
        let b = &self.base;
        let mut mem = vec![false; b.len()];
        for z in b.up_set(x).iter() {
            for y in b.up_set(self.delta(z, x)).iter() {
                mem[y] = true;
            }
        }
        (0..b.len()).filter(|&y| mem[y]).collect()
    }

    /// Least up-closed, join-, implication- and reflection-closed set
    /// containing `x`, by saturation.
    pub fn subalgebra_closure(&self, seed: &[usize]) -> Vec<usize> {
        let b = &self.base;
        let n = b.len();
        let mut mem = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        let mut queue: Vec<usize> = seed.to_vec();
        while let Some(x) = queue.pop() {
            for y in b.up_set(x).iter() {
                if mem[y] {
                    continue;
                }
                mem[y] = true;
                for &z in &members {
                    for w in [self.delta(y, z), self.delta(z, y)] {
                        if !mem[w] {
                            queue.push(w);
                        }
                    }
                }
                members.push(y);
                if !mem[self.delta(y, y)] {
                    queue.push(self.delta(y, y));
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Localization by formula against the saturated closure, for every `x`.
    pub fn check_localization(&self) -> CheckReport {
        let b = &self.base;
        let mut c = Checker::new("localization", b.labels());
        for x in b.elements() {
            let loc = self.localization(x);
            let has = |y: usize| loc.binary_search(&y).is_ok();
            c.check("contains-seed", &[x], has(x))
                .check("contains-reflection-at-top", &[x], has(self.delta(b.top(), x)))
                .check("up-closed", &[x], b.is_up_closed(&loc));
            if c.is_failed() {
                break;
            }
            if loc != self.subalgebra_closure(&[x]) {
                c.fail("least-closed-subalgebra", &[x], Some(format!("{} elements by formula", loc.len())));
                break;
            }
        }
        c.finish()
    }

    /// Implication laws, cubic axioms, Eq. (1)/(2) and localization.
    pub fn check_all(&self) -> CheckReport {
        let imp = self.base.check_implication_axioms();
        if !imp.passed() {
            return CheckReport::combine("cubic", vec![imp]);
        }
        let ax = self.check_cubic_axioms();
        if !ax.passed() {
            return CheckReport::combine("cubic", vec![imp, ax]);
        }
        CheckReport::combine("cubic", vec![imp, ax, self.check_reflection_meets(), self.check_localization()])
    }

    /// The sub-structure on `elems` (must contain the top and be closed under
    /// join and reflection), with indices relabelled in the given order.
    pub fn restrict(&self, elems: &[usize]) -> Result<CubicAlg, AlgebraError> {
        let (base, _) = self.base.restrict(elems)?;
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let mut delta = Vec::with_capacity(elems.len() * elems.len());
        for &x in elems {
            for &y in elems {
                let v = pos[self.delta(x, y)];
                if v == usize::MAX {
                    return Err(AlgebraError::NotSubalgebra);
                }
                delta.push(v);
            }
        }
        CubicAlg::new(base, delta)
    }

    /// Componentwise product, element `(i, j)` at `i * |other| + j`.
    pub fn product(&self, other: &CubicAlg) -> CubicAlg {
        let m = other.len();
        let base = self.base.product(&other.base);
        let n = base.len();
        let delta = (0..n * n)
            .map(|k| {
                let (p, q) = (k / n, k % n);
                self.delta(p / m, q / m) * m + other.delta(p % m, q % m)
            })
            .collect();
        CubicAlg::new(base, delta).expect("product of valid tables")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{interval_algebra, signed_algebra};

    #[test]
    fn signed_and_interval_pass() {
        for k in 0..=2 {
            let s = signed_algebra(k).unwrap();
            assert!(s.check_all().passed(), "{}", s.check_all());
            assert!(s.check_mr().passed());
            let i = interval_algebra(k).unwrap();
            assert!(i.check_cubic_axioms().passed());
            assert!(i.check_mr().passed());
        }
    }

    #[test]
    fn three_point_nucleus_is_cubic_but_not_mr() {
        let m = crate::multicube::Multicube::new(&crate::multicube::McSpec::new(&[2]).unwrap()).unwrap();
        let n = m.nucleus();
        assert!(n.check_all().passed());
        let r = n.check_mr();
        assert!(r.failed());
        assert_eq!(r.rule(), Some("mr-meet-absent-implies-below"));
        assert_eq!(r.witness.unwrap().labels, vec!["(0)+X{1}", "(-2)+X{}", "(-1)+X{}"]);
    }

    #[test]
    fn identity_reflection_fails_axiom_a() {
        let s = signed_algebra(1).unwrap();
        let n = s.len();
        let bad = CubicAlg::new(s.base().clone(), (0..n * n).map(|i| i % n).collect()).unwrap();
        let r = bad.check_cubic_axioms();
        assert!(r.failed());
        assert_eq!(r.rule(), Some("a"));
    }

    #[test]
    fn derived_xy_and_caret_on_one_point() {
        let s = signed_algebra(1).unwrap();
        let b = s.base();
        let (top, plus, minus) = (b.top(), b.find("<1|>").unwrap(), b.find("<|1>").unwrap());
        assert_eq!(s.derived_xy(plus, minus), minus);
        assert_eq!(s.derived_xy(plus, plus), top);
        assert_eq!(s.derived_xy(top, minus), minus);
        assert_eq!(s.caret(plus, minus), Some(plus));
        assert_eq!(s.caret(plus, top), Some(plus));
        assert_eq!(s.localization(plus), vec![0, 1, 2]);
        assert_eq!(s.localization(top), vec![top]);
    }

    #[test]
    fn product_with_chain_like_factor() {
        let s1 = signed_algebra(1).unwrap();
        let p = s1.product(&s1);
        assert_eq!(p.len(), 9);
        assert!(p.check_cubic_axioms().passed());
    }
}
