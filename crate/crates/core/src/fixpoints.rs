//! Fixed points of a Delta-operator: `Fix`, `Phi`, the bounds `beta` and
//! `delta`, nowhere invariance, the nucleus, localizations and the two
//! structure isomorphisms.

use thiserror::Error;

use crate::algebra::FinAlgebra;
use crate::cubic::CubicAlg;
use crate::report::{CheckReport, Checker, Status};
use crate::symmetric::{check_delta_operator, DeltaTable, SymAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixError {
    #[error("not a Delta-operator: {0}")]
    NotDeltaOperator(String),
    #[error("{0} and {1} are bounded below but have no meet")]
    MissingMeet(String, String),
}

/// A symmetric algebra with a validated Delta-operator.
#[derive(Clone, Debug)]
pub struct FixContext {
    sym: SymAlgebra,
    delta: DeltaTable,
}

impl FixContext {
    pub fn new(sym: SymAlgebra, delta: DeltaTable) -> Result<Self, FixError> {
        let r = check_delta_operator(&sym, &delta);
        if !r.passed() {
            return Err(FixError::NotDeltaOperator(r.to_string()));
        }
        let b = sym.base();
        for x in b.elements() {
            for y in b.elements() {
                if b.bounded_below(x, y) && b.meet(x, y).is_none() {
                    return Err(FixError::MissingMeet(b.label(x).into(), b.label(y).into()));
                }
            }
        }
        Ok(FixContext { sym, delta })
    }

    /// Context using the reflection derived from the symmetry.
    pub fn derived(sym: SymAlgebra) -> Result<Self, FixError> {
        let d = sym.derived_delta();
        Self::new(sym, d)
    }

    pub fn sym(&self) -> &SymAlgebra {
        &self.sym
    }

    pub fn alg(&self) -> &FinAlgebra {
        self.sym.base()
    }

    fn top(&self) -> usize {
        self.alg().top()
    }

    /// `delta(b, a)` for `a <= b`.
    #[inline]
    pub fn d(&self, b: usize, a: usize) -> usize {
        self.delta.get(b, a).expect("reflection of a comparable pair")
    }

    /// Local complement `c(a, b) = b -> a`.
    #[inline]
    pub fn c(&self, a: usize, b: usize) -> usize {
        self.alg().arrow(b, a)
    }

    /// Meet of a bounded-below pair.
    #[inline]
    fn meet(&self, x: usize, y: usize) -> usize {
        self.alg().meet(x, y).expect("bounded-below pairs have meets")
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.alg().leq(x, y)
    }

    /// `{v >= u | delta(v, u) = u}`.
    pub fn fix_set(&self, u: usize) -> Vec<usize> {
        self.alg().up_set(u).iter().filter(|&v| self.d(v, u) == u).collect()
    }

    /// `{x <= u | delta(u, x) = x}`.
    pub fn phi_set(&self, u: usize) -> Vec<usize> {
        self.alg().down_set(u).iter().filter(|&x| self.d(u, x) == x).collect()
    }

    /// `beta^v(u) = u v delta(v, u)` for `u <= v`.
    pub fn beta(&self, u: usize, v: usize) -> usize {
        self.alg().join(u, self.d(v, u))
    }

    /// `delta^v(u) = c(u, beta^v(u)) meet v` for `u <= v`.
    pub fn delta_fn(&self, u: usize, v: usize) -> usize {
        self.meet(self.c(u, self.beta(u, v)), v)
    }

    pub fn beta_top(&self, u: usize) -> usize {
        self.beta(u, self.top())
    }

    pub fn delta_top(&self, u: usize) -> usize {
        self.delta_fn(u, self.top())
    }

    /// `x -> x v delta(w, u)` on `Fix(u) n [u, w]`, as `(x, alpha(x))` pairs.
    pub fn alpha_iso(&self, u: usize, w: usize) -> Vec<(usize, usize)> {
        self.fix_set(u)
            .into_iter()
            .filter(|&x| self.leq(x, w))
            .map(|x| (x, self.alg().join(x, self.d(w, u))))
            .collect()
    }

    /// Closed form: `u v delta(1, u) = 1`.
    pub fn is_nowhere_invariant(&self, u: usize) -> bool {
        self.alg().join(u, self.d(self.top(), u)) == self.top()
    }

    /// Definition: no `v > u` fixes `u`.
    pub fn nowhere_invariant_brute(&self, u: usize) -> bool {
        self.alg().up_set(u).iter().all(|v| v == u || self.d(v, u) != u)
    }

    pub fn nucleus_elements(&self) -> Vec<usize> {
        self.alg().elements().filter(|&u| self.is_nowhere_invariant(u)).collect()
    }

    /// Nowhere-invariant elements with the inherited join and reflection.
    pub fn nucleus(&self) -> CubicAlg {
        let elems = self.nucleus_elements();
        let (base, _) = self.alg().restrict(&elems).expect("nucleus is join-closed");
        let mut pos = vec![usize::MAX; self.alg().len()];
        elems.iter().enumerate().for_each(|(i, &e)| pos[e] = i);
        CubicAlg::from_partial(base, |b, a| pos[self.d(elems[b], elems[a])]).expect("nucleus is reflection-closed")
    }

    /// `{b | b >= delta(y, a) for some y >= a}`.
    pub fn localization_star(&self, a: usize) -> Vec<usize> {
        let alg = self.alg();
        let mut mem = vec![false; alg.len()];
        for y in alg.up_set(a).iter() {
            for b in alg.up_set(self.d(y, a)).iter() {
                mem[b] = true;
            }
        }
        alg.elements().filter(|&b| mem[b]).collect()
    }

    /// `L*_a` intersected with the nucleus.
    pub fn localization(&self, a: usize) -> Vec<usize> {
        self.localization_star(a).into_iter().filter(|&b| self.is_nowhere_invariant(b)).collect()
    }

    /// The admissible `y` for `Psi` at `x`: `y >= delta(a)` and `x >= delta(y, a)`.
    fn psi_choices(&self, a: usize, x: usize) -> Vec<usize> {
        let da = self.delta_top(a);
        self.alg().up_set(da).iter().filter(|&y| self.leq(self.d(y, a), x)).collect()
    }

    /// `Psi(x)` computed through `y`.
    pub fn psi_via(&self, a: usize, x: usize, y: usize) -> (usize, usize) {
        let ay = self.d(y, a);
        let day = self.delta_top(ay);
        (self.alg().join(x, day), self.d(y, self.meet(self.c(ay, x), day)))
    }

    /// `Psi: L*_a -> L_a x [a, delta(a)]` as `(x, (first, second))`, using
    /// the first admissible `y`.
    pub fn psi_iso(&self, a: usize) -> Vec<(usize, (usize, usize))> {
        self.localization_star(a)
            .into_iter()
            .map(|x| {
                let y = self.psi_choices(a, x)[0];
                (x, self.psi_via(a, x, y))
            })
            .collect()
    }

    /// `Phi(1)`: the `T`-fixed elements.
    pub fn phi_one(&self) -> Vec<usize> {
        self.phi_set(self.top())
    }

    /// `e(x) = (delta(x), beta(x))` into `N(M) x Phi(1)`.
    pub fn global_embed(&self) -> GlobalEmbedding {
        let alg = self.alg();
        let nuc = self.nucleus_elements();
        let phi = self.phi_one();
        let (nb, _) = alg.restrict(&nuc).expect("nucleus is join-closed");
        let (pb, _) = alg.restrict(&phi).expect("fixed elements are join-closed");
        let product = nb.product(&pb);
        let pos = |set: &[usize], x: usize| set.binary_search(&x).expect("component lies in its factor");
        let map = alg
            .elements()
            .map(|x| pos(&nuc, self.delta_top(x)) * phi.len() + pos(&phi, self.beta_top(x)))
            .collect();
        GlobalEmbedding { nucleus: nuc, phi_one: phi, product, map }
    }

    /// `Phi(1) = [beta(a), 1]` provided `L*_a` is everything.
    pub fn check_phi_one_interval(&self, a: usize) -> CheckReport {
        let alg = self.alg();
        if self.localization_star(a).len() != alg.len() {
            return CheckReport::not_applicable(
                "phi-one-interval",
                format!("the localization at {} is not the whole algebra", alg.label(a)),
            );
        }
        let mut c = Checker::new("phi-one-interval", alg.labels());
        let lo = self.beta_top(a);
        let interval: Vec<usize> = alg.up_set(lo).iter().collect();
        c.check("phi-one-interval", &[a, lo], self.phi_one() == interval);
        c.finish()
    }

    /// The interval theorem at the first generating element, if any.
    pub fn check_phi_one(&self) -> CheckReport {
        match self.alg().elements().find(|&a| self.localization_star(a).len() == self.alg().len()) {
            Some(a) => self.check_phi_one_interval(a),
            None => CheckReport::not_applicable("phi-one-interval", "no single element generates the algebra"),
        }
    }

    /// The transfer lemmas and characterizations of fixed points.
    pub fn check_fixed_point_lemmas(&self) -> CheckReport {
        let b = self.alg();
        let top = b.top();
        let d = |x, y| self.d(x, y);
        let c = |x, y| self.c(x, y);
        let meet = |x, y| self.meet(x, y);
        let chain = |x, y, z| b.leq(x, y) && b.leq(y, z);
        let mut ck = Checker::new("fixed-point-lemmas", b.labels());
        ck.law::<2, _>("transfer-a", |[x, y]| !b.leq(x, y) || b.arrow(y, d(y, x)) == d(top, b.arrow(y, x)))
            .law::<3, _>("transfer-b", |[x, y, z]| {
                !chain(x, y, z) || d(z, meet(c(x, y), z)) == meet(z, d(top, c(x, y)))
            })
            .law::<3, _>("transfer-c", |[x, y, z]| !chain(x, y, z) || d(y, x) == meet(y, d(z, meet(c(x, y), z))))
            .law::<3, _>("transfer-d", |[x, y, z]| !chain(x, y, z) || d(z, y) != y || d(z, x) == d(y, x))
            .law::<3, _>("transfer-e", |[x, y, z]| {
                !chain(x, y, z) || !(d(z, y) == y && d(y, x) == x) || d(z, x) == x
            })
            .law::<2, _>("fixed-iff-below", |[x, y]| !b.leq(x, y) || ((d(y, x) == x) == b.leq(d(y, x), x)))
            .law::<2, _>("fixed-iff-above", |[x, y]| !b.leq(x, y) || ((d(y, x) == x) == b.leq(x, d(y, x))))
            .law::<2, _>("fixed-iff-complement-fixed", |[x, y]| {
                !b.leq(x, y) || ((d(y, x) == x) == (d(top, c(x, y)) == c(x, y)))
            })
            .law::<3, _>("fixed-iff-local-complement-fixed", |[x, y, z]| {
                !chain(x, y, z) || ((d(y, x) == x) == (d(z, meet(c(x, y), z)) == meet(c(x, y), z)))
            })
            .law::<2, _>("upward-propagation", |[x, y]| !(b.leq(x, y) && d(top, x) == x) || d(top, y) == y)
            .law::<3, _>("fixing", |[x, y, z]| {
                !chain(x, y, z) || ((d(z, x) == x) == (d(z, y) == y && d(y, x) == x))
            });
        ck.finish()
    }

    /// Bounds `beta`, `delta` and their monotonicity.
    pub fn check_bound_lemmas(&self) -> CheckReport {
        let b = self.alg();
        let d = |x, y| self.d(x, y);
        let beta = |u, v| self.beta(u, v);
        let dl = |u, v| self.delta_fn(u, v);
        let chain = |x, y, z| b.leq(x, y) && b.leq(y, z);
        let mut ck = Checker::new("bound-lemmas", b.labels());
        ck.law::<3, _>("bottom-of-phi", |[u, x, v]| !chain(u, x, v) || ((d(v, x) == x) == b.leq(beta(u, v), x)))
            .law::<3, _>("bottom-shift", |[u, v, w]| !chain(u, v, w) || b.join(v, d(w, v)) == b.join(v, d(w, u)))
            .law::<3, _>("top-of-fix", |[u, x, v]| !chain(u, x, v) || ((d(x, u) == u) == b.leq(x, dl(u, v))))
            .law::<2, _>("delta-idempotent", |[u, v]| !b.leq(u, v) || dl(dl(u, v), v) == dl(u, v))
            .law::<3, _>("delta-monotone-top", |[u, v, w]| !chain(u, v, w) || b.leq(dl(u, v), dl(u, w)))
            .law::<3, _>("delta-restricts", |[u, v, w]| !chain(u, v, w) || dl(u, v) == self.meet(dl(u, w), v))
            .law::<3, _>("beta-restricts", |[u, v, w]| !chain(u, v, w) || beta(u, v) == self.meet(beta(u, w), v))
            .law::<3, _>("fixed-from-shrinking-reflection", |[u, v, w]| {
                !chain(u, v, w) || !b.leq(d(w, u), d(v, u)) || d(w, v) == v
            })
            .law::<2, _>("delta-monotone", |[u, v]| !b.leq(u, v) || b.leq(self.delta_top(u), self.delta_top(v)))
            .law::<3, _>("delta-constant-on-fixed", |[u, v, w]| {
                !chain(u, v, w) || d(v, u) != u || dl(u, w) == dl(v, w)
            })
            .law::<3, _>("beta-cuts-back", |[u, v, w]| {
                !chain(u, v, w) || d(v, u) != u || self.meet(beta(v, w), self.c(u, beta(u, w))) == v
            })
            .law::<4, _>("alpha-injective", |[u, w, v1, v2]| {
                if !(b.leq(u, v1) && b.leq(v1, w) && b.leq(u, v2) && b.leq(v2, w)) {
                    return true;
                }
                if d(v1, u) != u || d(v2, u) != u {
                    return true;
                }
                b.join(v1, d(w, u)) != b.join(v2, d(w, u)) || v1 == v2
            })
            .law::<3, _>("alpha-onto", |[u, y, w]| {
                if !chain(u, y, w) || d(w, y) != y {
                    return true;
                }
                let yp = self.meet(y, self.delta_top(u));
                yp == self.meet(y, dl(u, w))
                    && yp == self.meet(y, self.c(u, beta(u, w)))
                    && chain(u, yp, w)
                    && d(yp, u) == u
                    && b.join(yp, d(w, yp)) == y
            })
            .law::<2, _>("alpha-identities", |[u, v]| {
                !b.leq(u, v)
                    || (b.join(self.meet(v, self.delta_top(u)), d(v, u)) == v
                        && self.meet(beta(u, v), self.delta_top(u)) == u)
            });
        if ck.is_failed() {
            return ck.finish();
        }
        // extremal elements by brute force
        for u in b.elements() {
            for v in b.up_set(u).iter() {
                let fix: Vec<usize> = self.fix_set(u).into_iter().filter(|&x| b.leq(x, v)).collect();
                let phi: Vec<usize> = self.phi_set(v).into_iter().filter(|&x| b.leq(u, x)).collect();
                let (hi, lo) = (self.delta_fn(u, v), self.beta(u, v));
                if !fix.contains(&hi) || !fix.iter().all(|&x| b.leq(x, hi)) {
                    ck.fail("delta-is-greatest-fixing", &[u, v], None);
                    return ck.finish();
                }
                if !phi.contains(&lo) || !phi.iter().all(|&x| b.leq(lo, x)) {
                    ck.fail("beta-is-least-fixed", &[u, v], None);
                    return ck.finish();
                }
            }
        }
        ck.finish()
    }

    /// `alpha` is an order isomorphism `Fix(u) n [u, w] -> Phi(w) n [u, w]`
    /// inverted by `y -> y meet delta(u)`, for every `u <= w`.
    pub fn check_alpha(&self) -> CheckReport {
        let b = self.alg();
        let mut ck = Checker::new("alpha-isomorphism", b.labels());
        'outer: for u in b.elements() {
            for w in b.up_set(u).iter() {
                let pairs = self.alpha_iso(u, w);
                let mut target: Vec<usize> = self.phi_set(w).into_iter().filter(|&y| b.leq(u, y)).collect();
                let mut image: Vec<usize> = pairs.iter().map(|p| p.1).collect();
                image.sort_unstable();
                target.sort_unstable();
                let du = self.delta_top(u);
                let ok = image == target
                    && pairs.iter().all(|&(x, y)| self.meet(y, du) == x)
                    && pairs.iter().all(|&(x1, y1)| pairs.iter().all(|&(x2, y2)| b.leq(x1, x2) == b.leq(y1, y2)));
                if !ok {
                    ck.fail("alpha-bijective", &[u, w], None);
                    break 'outer;
                }
            }
        }
        ck.finish()
    }

    /// Nowhere invariance: closed form vs definition, `u = delta(u)`, upward
    /// closure, the existential characterization, and the nucleus being a
    /// cubic algebra with the reflection-built implication.
    pub fn check_nucleus(&self) -> CheckReport {
        let b = self.alg();
        let top = b.top();
        let nuc = self.nucleus_elements();
        let mut ck = Checker::new("nucleus", b.labels());
        ck.law::<1, _>("closed-form", |[u]| self.is_nowhere_invariant(u) == self.nowhere_invariant_brute(u))
            .law::<1, _>("equals-own-delta", |[u]| self.is_nowhere_invariant(u) == (self.delta_top(u) == u))
            .check("up-closed", &[], b.is_up_closed(&nuc))
            .law::<1, _>("witnessed-from-below", |[v]| {
                self.is_nowhere_invariant(v) == b.down_set(v).iter().any(|u| b.leq(self.delta_top(u), v))
            })
            .law::<2, _>("implication-from-reflection", |[x, y]| {
                if !(b.leq(x, y) && self.is_nowhere_invariant(x) && self.is_nowhere_invariant(y)) {
                    return true;
                }
                self.c(x, y) == b.join(self.d(top, self.d(y, x)), x)
            });
        if ck.is_failed() {
            return ck.finish();
        }
        CheckReport::combine("nucleus", vec![ck.finish(), self.nucleus().check_all()])
    }

    /// `L_a = L_delta(a) = L*_delta(a)`, and each `L_a` is an MR-algebra.
    pub fn check_localizations(&self) -> CheckReport {
        let b = self.alg();
        let nuc_elems = self.nucleus_elements();
        let nucleus = self.nucleus();
        let mut ck = Checker::new("localizations", b.labels());
        let mut parts = Vec::new();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for a in b.elements() {
            let da = self.delta_top(a);
            let la = self.localization(a);
            if la != self.localization(da) || la != self.localization_star(da) {
                ck.fail("localization-via-delta", &[a], None);
                break;
            }
            if seen.contains(&la) {
                continue;
            }
            let idx: Vec<usize> = la.iter().map(|x| nuc_elems.binary_search(x).expect("inside nucleus")).collect();
            match nucleus.restrict(&idx) {
                Ok(sub) => {
                    let r = CheckReport::combine(
                        format!("localization at {}", b.label(a)),
                        vec![sub.check_cubic_axioms(), sub.check_mr()],
                    );
                    if !r.passed() {
                        parts.push(r);
                        break;
                    }
                }
                Err(_) => {
                    ck.fail("localization-is-subalgebra", &[a], None);
                    break;
                }
            }
            seen.push(la);
        }
        parts.insert(0, ck.finish());
        CheckReport::combine("localizations", parts)
    }

    /// The technical lemma before the product decomposition, its
    /// `y`-independence corollary, and the bottom-shift lemma.
    pub fn check_localization_lemmas(&self) -> CheckReport {
        let b = self.alg();
        let d = |x, y| self.d(x, y);
        let c = |x, y| self.c(x, y);
        let mut ck = Checker::new("localization-lemmas", b.labels());
        ck.law::<3, _>("bottom-invariant-under-reflection", |[a, y, z]| {
            !(b.leq(a, y) && b.leq(y, z)) || self.beta(a, z) == self.beta(d(y, a), z)
        })
        .law::<3, _>("reflected-complement", |[x, y, a]| {
            if !b.leq(self.beta_top(a), x) || !b.leq(self.delta_top(a), y) {
                return true;
            }
            let ay = d(y, a);
            if !b.leq(ay, x) {
                return false;
            }
            let cx = c(ay, x);
            if !b.leq(b.join(self.delta_top(a), cx), y) {
                return true;
            }
            b.leq(a, x) && d(y, cx) == c(a, x)
        })
        .law::<4, _>("choice-independent", |[a, y1, y2, x]| {
            let da = self.delta_top(a);
            if !(b.leq(da, y1) && b.leq(da, y2)) {
                return true;
            }
            let (a1, a2) = (d(y1, a), d(y2, a));
            if !b.leq(b.join(a1, a2), x) {
                return true;
            }
            let side = |y, ai| {
                let m = self.meet(c(ai, x), self.delta_top(ai));
                b.leq(m, y).then(|| d(y, m))
            };
            matches!((side(y1, a1), side(y2, a2)), (Some(p), Some(q)) if p == q)
        });
        ck.finish()
    }

    /// `Psi` is well defined, and an isomorphism onto `L_a x [a, delta(a)]`
    /// with the second factor reversed, for every `a`.
    pub fn check_psi(&self) -> CheckReport {
        let b = self.alg();
        let mut ck = Checker::new("psi-isomorphism", b.labels());
        for a in b.elements() {
            let star = self.localization_star(a);
            let la = self.localization(a);
            let da = self.delta_top(a);
            let interval: Vec<usize> = b.up_set(a).iter().filter(|&w| b.leq(w, da)).collect();
            let mut images = Vec::with_capacity(star.len());
            for &x in &star {
                let ys = self.psi_choices(a, x);
                let Some(&y0) = ys.first() else {
                    ck.fail("psi-defined", &[a, x], Some("no admissible y".into()));
                    return ck.finish();
                };
                let p = self.psi_via(a, x, y0);
                if let Some(&y) = ys.iter().find(|&&y| self.psi_via(a, x, y) != p) {
                    ck.fail("psi-choice-independent", &[a, x, y0, y], None);
                    return ck.finish();
                }
                if la.binary_search(&p.0).is_err() || interval.binary_search(&p.1).is_err() {
                    ck.fail("psi-codomain", &[a, x], None);
                    return ck.finish();
                }
                images.push(p);
            }
            if star.len() != la.len() * interval.len() {
                ck.fail("psi-size", &[a], Some(format!("{} vs {} x {}", star.len(), la.len(), interval.len())));
                return ck.finish();
            }
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != images.len() {
                ck.fail("psi-injective", &[a], None);
                return ck.finish();
            }
            for (i, &x1) in star.iter().enumerate() {
                for (j, &x2) in star.iter().enumerate() {
                    let (p, q) = (images[i], images[j]);
                    if b.leq(x1, x2) != (b.leq(p.0, q.0) && b.leq(q.1, p.1)) {
                        ck.fail("psi-order", &[a, x1, x2], None);
                        return ck.finish();
                    }
                }
            }
        }
        ck.finish()
    }

    /// `e` is an injective order embedding with up-closed image, and the
    /// pointwise preimage of anything above `e(x)` is the meet of its parts.
    pub fn check_global_embed(&self) -> CheckReport {
        let b = self.alg();
        let g = self.global_embed();
        let p = &g.product;
        let f = &g.map;
        let mut ck = Checker::new("global-embedding", b.labels());
        ck.law::<1, _>("meet-of-parts", |[x]| self.meet(self.delta_top(x), self.beta_top(x)) == x)
            .law::<2, _>("order-embedding", |[x, y]| b.leq(x, y) == p.leq(f[x], f[y]));
        if ck.is_failed() {
            return ck.finish();
        }
        let mut pre = vec![usize::MAX; p.len()];
        for (x, &fx) in f.iter().enumerate() {
            if pre[fx] != usize::MAX {
                ck.fail("injective", &[pre[fx], x], None);
                return ck.finish();
            }
            pre[fx] = x;
        }
        let m = g.phi_one.len();
        for x in b.elements() {
            for q in p.up_set(f[x]).iter() {
                let (na, pb) = (g.nucleus[q / m], g.phi_one[q % m]);
                let ok = b.meet(na, pb).is_some_and(|y| f[y] == q);
                if !ok {
                    ck.fail("image-up-closed", &[x], Some(format!("{} has no preimage", p.label(q))));
                    return ck.finish();
                }
            }
        }
        ck.finish()
    }

    /// Every fixed-point suite.
    pub fn check_all(&self) -> CheckReport {
        let mut parts = vec![
            self.check_fixed_point_lemmas(),
            self.check_bound_lemmas(),
            self.check_alpha(),
            self.check_nucleus(),
            self.check_localizations(),
            self.check_localization_lemmas(),
            self.check_psi(),
            self.check_global_embed(),
        ];
        let phi = self.check_phi_one();
        let note = match phi.status {
            Status::NotApplicable => Some(format!("phi-one-interval not applicable: {}", phi.notes.join("; "))),
            _ => None,
        };
        if phi.status != Status::NotApplicable {
            parts.push(phi);
        }
        let mut r = CheckReport::combine("fixed-points", parts);
        r.notes.extend(note);
        r
    }
}

/// `e: M -> N(M) x Phi(1)`; product index `i * |Phi(1)| + j` over the sorted
/// element lists.
#[derive(Clone, Debug)]
pub struct GlobalEmbedding {
    pub nucleus: Vec<usize>,
    pub phi_one: Vec<usize>,
    pub product: FinAlgebra,
    pub map: Vec<usize>,
}

impl GlobalEmbedding {
    /// `e(x)` as a pair of elements of the original algebra.
    pub fn parts(&self, x: usize) -> (usize, usize) {
        let m = self.phi_one.len();
        (self.nucleus[self.map[x] / m], self.phi_one[self.map[x] % m])
    }
}
