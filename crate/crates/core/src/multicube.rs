//! Multicubes: cosets `g + X_A` of coordinate submodules of a product of odd
//! cyclic modules `{-n_i..n_i}`, each stored by its critical representative.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{BitSet, FinAlgebra};
use crate::cubic::CubicAlg;
use crate::report::{CheckReport, Checker};
use crate::symmetric::{Identity, SymAlgebra};

/// Maximum number of coordinates.
pub const MAX_DIMS: usize = 8;
/// Maximum half-width `n_i` of a coordinate module.
pub const MAX_HALF_WIDTH: i32 = 4;
/// Largest multicube that is tabulated.
pub const MAX_TABULATED: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McError {
    #[error("n_i must be >= 0 (got {0})")]
    Negative(i64),
    #[error("n_i must be <= {MAX_HALF_WIDTH} (got {0})")]
    TooWide(i64),
    #[error("at most {MAX_DIMS} coordinates are supported (got {0})")]
    TooManyDims(usize),
    #[error("vector has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("coordinate {index} value {value} lies outside -{bound}..{bound}")]
    OutOfRange { index: usize, value: i64, bound: i32 },
    #[error("support set {0:#b} has coordinates outside the index set")]
    BadSupport(u32),
    #[error("{0} elements exceeds the tabulation cap of {MAX_TABULATED}")]
    TooLarge(u64),
    #[error("{0} is not below {1}")]
    NotBelow(String, String),
}

/// The module sizes `n_1..n_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct McSpec {
    sizes: Vec<i32>,
}

impl McSpec {
    pub fn new(sizes: &[i64]) -> Result<Self, McError> {
        if sizes.len() > MAX_DIMS {
            return Err(McError::TooManyDims(sizes.len()));
        }
        for &s in sizes {
            if s < 0 {
                return Err(McError::Negative(s));
            }
            if s > MAX_HALF_WIDTH as i64 {
                return Err(McError::TooWide(s));
            }
        }
        Ok(McSpec { sizes: sizes.iter().map(|&s| s as i32).collect() })
    }

    pub fn sizes(&self) -> &[i32] {
        &self.sizes
    }

    pub fn dims(&self) -> usize {
        self.sizes.len()
    }

    /// Mask of the whole index set.
    pub fn full(&self) -> u32 {
        (1u32 << self.dims()) - 1
    }

    /// `prod (2 n_i + 2)`.
    pub fn element_count(&self) -> u64 {
        self.sizes.iter().map(|&n| 2 * n as u64 + 2).product()
    }

    /// `prod (2 n_i + 1)`.
    pub fn point_count(&self) -> u64 {
        self.sizes.iter().map(|&n| 2 * n as u64 + 1).product()
    }

    fn check_vector(&self, v: &[i32]) -> Result<(), McError> {
        if v.len() != self.dims() {
            return Err(McError::Dimension { expected: self.dims(), got: v.len() });
        }
        for (i, (&x, &n)) in v.iter().zip(&self.sizes).enumerate() {
            if x.abs() > n {
                return Err(McError::OutOfRange { index: i, value: x as i64, bound: n });
            }
        }
        Ok(())
    }

    fn wrap(&self, i: usize, x: i32) -> i32 {
        let n = self.sizes[i];
        (x + n).rem_euclid(2 * n + 1) - n
    }

    /// Difference in the ambient module.
    pub fn sub(&self, u: &[i32], v: &[i32]) -> Vec<i32> {
        u.iter().zip(v).enumerate().map(|(i, (x, y))| self.wrap(i, x - y)).collect()
    }

    /// Sum in the ambient module.
    pub fn add(&self, u: &[i32], v: &[i32]) -> Vec<i32> {
        u.iter().zip(v).enumerate().map(|(i, (x, y))| self.wrap(i, x + y)).collect()
    }

    /// All points of the ambient module, lexicographic from `(-n_1, ..)`.
    pub fn points(&self) -> Vec<Vec<i32>> {
        let mut out = vec![Vec::new()];
        for &n in &self.sizes {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (-n..=n).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// A flat `gamma + X_sigma` with `gamma` zero on `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct McElt {
    gamma: Vec<i32>,
    sigma: u32,
}

impl McElt {
    pub fn gamma(&self) -> &[i32] {
        &self.gamma
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Support of the critical vector.
    pub fn support(&self) -> u32 {
        support(&self.gamma)
    }
}

fn mask_label(mask: u32) -> String {
    let items: Vec<String> = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for McElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gamma.iter().map(|x| x.to_string()).collect();
        write!(f, "({})+X{}", g.join(","), mask_label(self.sigma))
    }
}

/// Indices where the vector is non-zero.
pub fn support(v: &[i32]) -> u32 {
    v.iter().enumerate().filter(|(_, &x)| x != 0).fold(0, |m, (i, _)| m | 1 << i)
}

/// `{i | a_i != b_i}`.
pub fn diff_set(a: &[i32], b: &[i32]) -> u32 {
    a.iter().zip(b).enumerate().filter(|(_, (x, y))| x != y).fold(0, |m, (i, _)| m | 1 << i)
}

/// The flat `v + X_A` in canonical form.
pub fn canonicalize(spec: &McSpec, v: &[i32], a: u32) -> Result<McElt, McError> {
    spec.check_vector(v)?;
    if a & !spec.full() != 0 {
        return Err(McError::BadSupport(a));
    }
    Ok(canon(v, a))
}

fn canon(v: &[i32], a: u32) -> McElt {
    let gamma = v.iter().enumerate().map(|(i, &x)| if a >> i & 1 == 1 { 0 } else { x }).collect();
    McElt { gamma, sigma: a }
}

/// `x <= y` iff `sigma x` is inside `sigma y` and the centres differ only
/// inside `sigma y`.
pub fn mc_leq(x: &McElt, y: &McElt) -> bool {
    x.sigma & !y.sigma == 0 && diff_set(&x.gamma, &y.gamma) & !y.sigma == 0
}

pub fn mc_join(x: &McElt, y: &McElt) -> McElt {
    canon(&x.gamma, x.sigma | y.sigma | diff_set(&x.gamma, &y.gamma))
}

/// Intersection of two flats, when non-empty.
pub fn mc_meet(x: &McElt, y: &McElt) -> Option<McElt> {
    if diff_set(&x.gamma, &y.gamma) & !(x.sigma | y.sigma) != 0 {
        return None;
    }
    // a common point: free coordinates of x take y's value and vice versa
    let c: Vec<i32> = (0..x.gamma.len())
        .map(|i| if x.sigma >> i & 1 == 1 { y.gamma[i] } else { x.gamma[i] })
        .collect();
    Some(canon(&c, x.sigma & y.sigma))
}

/// `(2 gamma(a) - gamma(b)) + X_sigma(b)`, evaluated as written on any pair.
/// Out-of-range coordinates are reported rather than wrapped.
pub fn mc_delta_raw(spec: &McSpec, a: &McElt, b: &McElt) -> Result<McElt, McError> {
    let v: Vec<i32> = a.gamma.iter().zip(&b.gamma).map(|(&x, &y)| 2 * x - y).collect();
    canonicalize(spec, &v, b.sigma)
}

/// The reflection on its natural domain `b <= a`.
pub fn mc_delta_partial(spec: &McSpec, a: &McElt, b: &McElt) -> Option<McElt> {
    mc_leq(b, a).then(|| mc_delta_raw(spec, a, b).expect("comparable reflection stays in range"))
}

/// Totalized reflection `delta(a, b) = delta(a v b, b)`.
pub fn mc_delta(spec: &McSpec, a: &McElt, b: &McElt) -> McElt {
    mc_delta_partial(spec, &mc_join(a, b), b).expect("b <= a v b")
}

/// `c(a, b) = gamma(a) + X_(sigma a u complement of sigma b)` for `a <= b`.
pub fn mc_complement(spec: &McSpec, a: &McElt, b: &McElt) -> Result<McElt, McError> {
    if !mc_leq(a, b) {
        return Err(McError::NotBelow(a.to_string(), b.to_string()));
    }
    Ok(canon(&a.gamma, a.sigma | (spec.full() & !b.sigma)))
}

/// `T(b) = -gamma(b) + X_sigma(b)`.
pub fn mc_t(b: &McElt) -> McElt {
    McElt { gamma: b.gamma.iter().map(|x| -x).collect(), sigma: b.sigma }
}

/// Closed form: every non-support direction of `u` is in the support of
/// its centre.
pub fn mc_is_nowhere_invariant(spec: &McSpec, u: &McElt) -> bool {
    spec.full() & !u.sigma & !u.support() == 0
}

/// The top `0 + X_Omega`.
pub fn mc_top(spec: &McSpec) -> McElt {
    McElt { gamma: vec![0; spec.dims()], sigma: spec.full() }
}

/// A tabulated multicube.
#[derive(Clone, Debug)]
pub struct Multicube {
    spec: McSpec,
    elems: Vec<McElt>,
    index: HashMap<McElt, usize>,
    reflection: CubicAlg,
    t: Vec<usize>,
}

impl Multicube {
    /// Enumerates every flat, ordered by support mask and then by centre.
    pub fn new(spec: &McSpec) -> Result<Self, McError> {
        let count = spec.element_count();
        if count > MAX_TABULATED as u64 {
            return Err(McError::TooLarge(count));
        }
        let mut elems = Vec::with_capacity(count as usize);
        for sigma in 0..=spec.full() {
            let mut gamma: Vec<Vec<i32>> = vec![Vec::new()];
            for (i, &n) in spec.sizes.iter().enumerate() {
                let range: Vec<i32> = if sigma >> i & 1 == 1 { vec![0] } else { (-n..=n).collect() };
                gamma = gamma
                    .into_iter()
                    .flat_map(|p| {
                        range.iter().map(move |&x| {
                            let mut q = p.clone();
                            q.push(x);
                            q
                        })
                    })
                    .collect();
            }
            elems.extend(gamma.into_iter().map(|g| McElt { gamma: g, sigma }));
        }
        let index: HashMap<McElt, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elems.len();
        let idx = |e: &McElt| index[e];
        let top = idx(&mc_top(spec));
        let labels = elems.iter().map(|e| e.to_string()).collect();
        let base = FinAlgebra::from_fn(n, top, Some(labels), |x, y| idx(&mc_join(&elems[x], &elems[y])))
            .expect("valid multicube table");
        let reflection = CubicAlg::from_partial(base, |b, a| idx(&mc_delta_partial(spec, &elems[b], &elems[a]).unwrap()))
            .expect("valid reflection table");
        let t = elems.iter().map(|e| idx(&mc_t(e))).collect();
        Ok(Multicube { spec: spec.clone(), elems, index, reflection, t })
    }

    pub fn spec(&self) -> &McSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[McElt] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &McElt {
        &self.elems[i]
    }

    pub fn index_of(&self, e: &McElt) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn algebra(&self) -> &FinAlgebra {
        self.reflection.base()
    }

    /// Join table with the totalized reflection. Not a cubic algebra in
    /// general (the reflection has fixed points); the nucleus is.
    pub fn reflection(&self) -> &CubicAlg {
        &self.reflection
    }

    pub fn t(&self, x: usize) -> usize {
        self.t[x]
    }

    pub fn sym(&self) -> SymAlgebra {
        SymAlgebra::new(self.algebra().clone(), self.t.clone()).expect("multicube symmetry is an automorphism")
    }

    fn labels(&self) -> &[String] {
        self.algebra().labels()
    }

    /// Index of `e`, which is always a tabulated flat when produced by the
    /// operations above.
    fn at(&self, e: &McElt) -> usize {
        self.index[e]
    }

    /// Definitional test: no `v > u` with `delta(v, u) = u`.
    pub fn nowhere_invariant_brute(&self, u: usize) -> bool {
        let a = self.algebra();
        a.up_set(u).iter().all(|v| v == u || self.reflection.delta(v, u) != u)
    }

    /// Indices of the nowhere-invariant flats.
    pub fn nucleus_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| mc_is_nowhere_invariant(&self.spec, &self.elems[i])).collect()
    }

    /// The nucleus as a cubic algebra with inherited join and reflection.
    pub fn nucleus(&self) -> CubicAlg {
        self.reflection.restrict(&self.nucleus_elements()).expect("nucleus is closed")
    }

    /// The embedding into `S x N(P)`, `S` the Boolean interval below the top
    /// through the origin.
    pub fn decompose(&self) -> Decomposition {
        let full = self.spec.full();
        let boolean =
            FinAlgebra::from_fn(1 << self.spec.dims(), full as usize, Some((0..=full).map(|m| format!("0+X{}", mask_label(m))).collect()), |x, y| {
                x | y
            })
            .expect("valid boolean table");
        let nuc = self.nucleus_elements();
        let mut pos = vec![usize::MAX; self.len()];
        nuc.iter().enumerate().for_each(|(i, &e)| pos[e] = i);
        let m = nuc.len();
        let map = self
            .elems
            .iter()
            .map(|e| {
                let supp = e.support();
                let second = canon(&e.gamma, full & !supp);
                (e.sigma | supp) as usize * m + pos[self.at(&second)]
            })
            .collect();
        Decomposition { boolean, nucleus: self.nucleus(), map }
    }

    /// Points contained in each flat.
    fn point_sets(&self) -> (Vec<Vec<i32>>, Vec<BitSet>) {
        let pts = self.spec.points();
        let sets = self
            .elems
            .iter()
            .map(|e| {
                let mut s = BitSet::new(pts.len());
                for (j, p) in pts.iter().enumerate() {
                    if diff_set(p, &e.gamma) & !e.sigma == 0 {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        (pts, sets)
    }

    /// Order, meet and join against the flats as point sets, plus the
    /// properties of the difference set.
    pub fn check_order_lemma(&self) -> CheckReport {
        let a = self.algebra();
        let e = &self.elems;
        let (pts, sets) = self.point_sets();
        let mut c = Checker::new("order-lemma", a.labels());
        // a trivial module collapses Γ+X_σ and Γ+X_{σ∪{i}} to the same points
        let faithful = self.spec.sizes().iter().all(|&n| n > 0);
        if faithful {
            c.law::<2, _>("leq-is-inclusion", |[x, y]| mc_leq(&e[x], &e[y]) == sets[x].is_subset(&sets[y]));
        } else {
            c.note("point-set laws skipped: some n_i = 0");
        }
        c.law::<2, _>("table-order", |[x, y]| a.leq(x, y) == mc_leq(&e[x], &e[y]))
            .law::<2, _>("strict-iff-support-grows", |[x, y]| {
                a.lt(x, y) == (a.leq(x, y) && e[x].sigma != e[y].sigma)
            })
            .law::<2, _>("translate-to-upper-support", |[x, y]| {
                !a.leq(x, y) || canon(&e[x].gamma, e[y].sigma) == e[y]
            })
            .law::<2, _>("meet-is-intersection", |[x, y]| {
                if !faithful {
                    return true;
                }
                let common = sets[x].intersection(&sets[y]);
                match mc_meet(&e[x], &e[y]) {
                    None => common.is_empty(),
                    Some(m) => sets[self.at(&m)] == common,
                }
            })
            .law::<2, _>("meet-matches-table", |[x, y]| mc_meet(&e[x], &e[y]).map(|m| self.at(&m)) == a.meet(x, y))
            .law::<2, _>("join-least-upper-bound", |[x, y]| {
                let j = a.join(x, y);
                a.leq(x, j)
                    && a.leq(y, j)
                    && a.up_set(x).intersection(a.up_set(y)).iter().all(|u| a.leq(j, u))
            });
        if c.is_failed() {
            return c.finish();
        }
        let p = pts.len();
        let zero = vec![0; self.spec.dims()];
        let bad = crate::search::first_failure::<3, _>(p, crate::search::Coverage::for_size(p), |[i, j, k]| {
            let (u, v, w) = (&pts[i], &pts[j], &pts[k]);
            let (su, sv) = (support(u), support(v));
            let uv = self.spec.sub(u, v);
            let su_v = diff_set(&uv, &zero);
            diff_set(u, v) == diff_set(v, u)
                && diff_set(u, v) == su_v
                && diff_set(&self.spec.add(u, w), &self.spec.add(v, w)) == diff_set(u, v)
                && su_v & !(su | sv) == 0
                // only this direction of the equality case holds in general
                && (su & sv != 0 || su_v == su | sv)
                && diff_set(u, &zero) == su
                && diff_set(u, u) == 0
        });
        if let Some([i, j, k]) = bad {
            c.fail("difference-set", &[], Some(format!("points {:?}, {:?}, {:?}", pts[i], pts[j], pts[k])));
        }
        c.finish()
    }

    /// Clauses (a)-(i) of the basic reflection proposition.
    pub fn check_basic_reflection(&self) -> CheckReport {
        let a = self.algebra();
        let e = &self.elems;
        let r = &self.reflection;
        let d = |x, y| r.delta(x, y);
        let g = |x: usize| &e[x].gamma;
        let mut c = Checker::new("basic-reflection", a.labels());
        c.law::<1, _>("a", |[x]| d(x, x) == x)
            .law::<2, _>("b", |[x, y]| !a.leq(y, x) || a.leq(d(x, y), x))
            .law::<2, _>("c", |[x, y]| {
                if !a.leq(y, x) {
                    return true;
                }
                let v: Vec<i32> = g(x).iter().zip(g(y)).map(|(p, q)| 2 * p - q).collect();
                v == *g(d(x, y)) && support(&v) & e[y].sigma == 0
            })
            .law::<2, _>("d", |[x, y]| !a.leq(y, x) || d(x, d(x, y)) == y)
            .law::<3, _>("e", |[x, y, z]| !(a.leq(z, y) && a.leq(y, x)) || a.leq(d(x, z), d(x, y)))
            .law::<2, _>("f", |[x, y]| !a.leq(y, x) || ((d(x, y) == y) == (g(x) == g(y))))
            .law::<2, _>("g", |[x, y]| !a.lt(y, x) || d(x, y) == y || a.meet(d(x, y), y).is_none())
            .law::<3, _>("h", |[x, y, z]| !(a.leq(z, y) && a.leq(y, x)) || d(x, d(y, z)) == d(d(x, y), d(x, z)))
            .law::<3, _>("i", |[x, y, z]| {
                if !(a.leq(z, x) && a.leq(z, y)) {
                    return true;
                }
                let Some(m) = a.meet(x, y) else { return false };
                let j = a.join(x, y);
                let lhs: Vec<i32> = g(x).iter().zip(g(y)).map(|(p, q)| p + q).collect();
                let rhs: Vec<i32> = g(m).iter().zip(g(j)).map(|(p, q)| p + q).collect();
                lhs == rhs
                    && diff_set(g(x), g(y)) == diff_set(g(m), g(j))
                    && a.join(d(x, z), d(y, z)) == a.join(d(j, z), d(m, z))
            });
        c.finish()
    }

    /// Local complement `c(a, b)` by index; `a <= b` required.
    pub fn complement(&self, a: usize, b: usize) -> usize {
        self.at(&mc_complement(&self.spec, &self.elems[a], &self.elems[b]).expect("a <= b"))
    }

    /// Clauses (a)-(g) of the complement lemma.
    pub fn check_complement(&self) -> CheckReport {
        let a = self.algebra();
        let top = a.top();
        let cc = |x, y| self.complement(x, y);
        let mut c = Checker::new("complement", a.labels());
        c.law::<2, _>("a", |[x, y]| !a.leq(x, y) || a.leq(x, cc(x, y)))
            .law::<2, _>("b", |[x, y]| !a.leq(x, y) || (a.meet(y, cc(x, y)) == Some(x) && a.join(y, cc(x, y)) == top))
            .law::<3, _>("c", |[x, y, z]| !(a.leq(x, y) && a.leq(y, z)) || a.leq(cc(x, z), cc(x, y)))
            .law::<2, _>("d", |[x, y]| !a.leq(x, y) || cc(x, cc(x, y)) == y)
            .law::<3, _>("e", |[x, y, z]| {
                if !(a.leq(x, y) && a.leq(x, z)) {
                    return true;
                }
                let Some(m) = a.meet(y, z) else { return false };
                cc(x, m) == a.join(cc(x, y), cc(x, z)) && Some(cc(x, a.join(y, z))) == a.meet(cc(x, y), cc(x, z))
            })
            // [x, 1] is a complemented distributive lattice
            .law::<3, _>("f", |[x, y, z]| {
                !(a.leq(x, y) && a.leq(x, z)) || a.meet(y, z).is_some_and(|m| a.leq(x, m))
            })
            .law::<4, _>("f", |[x, y, z, w]| {
                if !(a.leq(x, y) && a.leq(x, z) && a.leq(x, w)) {
                    return true;
                }
                match (a.meet(w, y), a.meet(w, z), a.meet(w, a.join(y, z))) {
                    (Some(p), Some(q), Some(r)) => a.join(p, q) == r,
                    _ => false,
                }
            });
        if c.is_failed() {
            return c.finish();
        }
        let imp = a.check_implication_axioms();
        if !imp.passed() {
            let w = imp.witness.clone();
            c.fail("g", &w.map(|w| w.elements).unwrap_or_default(), Some("join with complement is not an implication algebra".into()));
            return c.finish();
        }
        c.law::<2, _>("g", |[x, y]| cc(y, a.join(x, y)) == a.arrow(x, y));
        c.finish()
    }

    /// `a v (b meet c) = (a v b) meet (a v c)` whenever `b meet c` exists.
    pub fn check_weak_distributivity(&self) -> CheckReport {
        let a = self.algebra();
        let mut c = Checker::new("weak-distributivity", a.labels());
        c.law::<3, _>("weak-distributivity", |[x, y, z]| match a.meet(y, z) {
            None => true,
            Some(m) => Some(a.join(x, m)) == a.meet(a.join(x, y), a.join(x, z)),
        });
        c.finish()
    }

    /// The link between reflection and local complement.
    pub fn check_reflection_complement_link(&self) -> CheckReport {
        let a = self.algebra();
        let top = a.top();
        let d = |x, y| self.reflection.delta(x, y);
        let mut c = Checker::new("reflection-complement-link", a.labels());
        c.law::<2, _>("complement-of-reflection", |[x, y]| {
            !a.leq(x, y) || self.complement(d(y, x), y) == d(top, self.complement(x, y))
        })
        .law::<2, _>("reflection-as-meet", |[x, y]| {
            !a.leq(x, y) || a.meet(y, d(top, self.complement(x, y))) == Some(d(y, x))
        });
        c.finish()
    }

    /// `a < b` and `gamma(b)_i != 0` force `gamma(a)_i = gamma(b)_i`.
    pub fn check_centre_monotone(&self) -> CheckReport {
        let a = self.algebra();
        let e = &self.elems;
        let mut c = Checker::new("centre-monotone", a.labels());
        c.law::<2, _>("centre-monotone", |[x, y]| {
            !a.lt(x, y) || e[y].gamma.iter().zip(&e[x].gamma).all(|(&q, &p)| q == 0 || p == q)
        });
        c.finish()
    }

    /// Closed-form nowhere-invariance against the definition, upward closure
    /// of the nowhere-invariant set, and the element count.
    pub fn check_invariance(&self) -> CheckReport {
        let a = self.algebra();
        let mut c = Checker::new("invariance", a.labels());
        c.check("element-count", &[], self.len() as u64 == self.spec.element_count())
            .law::<1, _>("closed-form", |[u]| {
                mc_is_nowhere_invariant(&self.spec, &self.elems[u]) == self.nowhere_invariant_brute(u)
            })
            .check("nucleus-up-closed", &[], a.is_up_closed(&self.nucleus_elements()));
        c.finish()
    }

    /// The nucleus passes the whole cubic suite.
    pub fn check_nucleus(&self) -> CheckReport {
        CheckReport::combine("nucleus", vec![self.nucleus().check_all()])
    }

    /// The decomposition map is an injective order embedding preserving join,
    /// reflection, symmetry and implication, with up-closed image.
    pub fn check_decomposition(&self) -> CheckReport {
        let dec = self.decompose();
        let a = self.algebra();
        let p = dec.product();
        let f = &dec.map;
        let pd = |x: usize, y: usize| dec.product_delta(x, y);
        let mut c = Checker::new("decomposition", a.labels());
        let mut seen = vec![usize::MAX; p.len()];
        for (x, &fx) in f.iter().enumerate() {
            if seen[fx] != usize::MAX {
                c.fail("injective", &[seen[fx], x], None);
                break;
            }
            seen[fx] = x;
        }
        c.law::<2, _>("order-embedding", |[x, y]| a.leq(x, y) == p.leq(f[x], f[y]))
            .law::<2, _>("join", |[x, y]| f[a.join(x, y)] == p.join(f[x], f[y]))
            .law::<2, _>("reflection", |[x, y]| !a.leq(y, x) || f[self.reflection.delta(x, y)] == pd(f[x], f[y]))
            .law::<1, _>("symmetry", |[x]| f[self.t[x]] == dec.product_t(f[x]))
            .law::<2, _>("implication", |[x, y]| f[a.arrow(x, y)] == p.arrow(f[x], f[y]));
        if !c.is_failed() {
            let image: Vec<usize> = f.clone();
            if !p.is_up_closed(&image) {
                let miss = image
                    .iter()
                    .find_map(|&q| p.up_set(q).iter().find(|&r| seen[r] == usize::MAX).map(|r| (q, r)))
                    .expect("some element escapes");
                c.fail("image-up-closed", &[seen[miss.0]], Some(format!("{} is above the image but not in it", p.label(miss.1))));
            }
        }
        c.finish()
    }

    /// The symmetric-algebra identities: the join of the two-generator
    /// varieties' basis, local symmetry, and agreement of the derived
    /// reflection with the geometric one.
    pub fn check_symmetric_identities(&self) -> CheckReport {
        let s = self.sym();
        let basis = s.eval_identity(Identity::A23Basis);
        let local = s.is_locally_symmetric();
        let mut c = Checker::new("derived-reflection", self.labels());
        if local.passed() {
            let dt = s.derived_delta();
            let a = self.algebra();
            c.law::<2, _>("derived-equals-geometric", |[x, y]| {
                !a.leq(y, x) || dt.get(x, y) == Some(self.reflection.delta(x, y))
            });
        }
        CheckReport::combine("symmetric-identities", vec![basis, local, c.finish()])
    }

    /// Every multicube suite.
    pub fn check_all(&self) -> CheckReport {
        CheckReport::combine(
            "multicube",
            vec![
                self.check_order_lemma(),
                self.check_basic_reflection(),
                self.check_complement(),
                self.check_weak_distributivity(),
                self.check_reflection_complement_link(),
                self.check_centre_monotone(),
                self.check_invariance(),
                self.check_nucleus(),
                self.check_decomposition(),
                self.check_symmetric_identities(),
            ],
        )
    }
}

/// `P -> S x N(P)` with `S` the Boolean interval of flats through the
/// origin. Product index is `s * |N| + n`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub boolean: FinAlgebra,
    pub nucleus: CubicAlg,
    pub map: Vec<usize>,
}

impl Decomposition {
    pub fn product(&self) -> FinAlgebra {
        self.boolean.product(self.nucleus.base())
    }

    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.nucleus.len(), p % self.nucleus.len())
    }

    /// Reflection on the product: trivial on `S`, inherited on `N(P)`.
    pub fn product_delta(&self, x: usize, y: usize) -> usize {
        let m = self.nucleus.len();
        let ((_, xn), (ys, yn)) = (self.split(x), self.split(y));
        ys * m + self.nucleus.delta(xn, yn)
    }

    /// Symmetry on the product: trivial on `S`, `delta(1, .)` on `N(P)`.
    pub fn product_t(&self, x: usize) -> usize {
        let m = self.nucleus.len();
        let (xs, xn) = self.split(x);
        xs * m + self.nucleus.delta(self.nucleus.top(), xn)
    }
}
