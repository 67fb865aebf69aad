//! Locally symmetric envelopes of finite symmetric implication algebras,
//! and the universal property they satisfy.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::algebra::{check_morphism, FinAlgebra};
use crate::models::set_label;
use crate::report::{CheckReport, Checker, Status};
use crate::search::Coverage;
use crate::symmetric::{Builtin, Identity, SymAlgebra, SymError};

/// Largest envelope the closure will build.
pub const MAX_ENVELOPE: usize = 4096;
/// Default node budget for morphism enumeration.
pub const DEFAULT_BUDGET: u64 = 2_000_000;
/// Largest target accepted by the universal-property check.
pub const MAX_TARGET: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("envelope exceeds {MAX_ENVELOPE} elements")]
    TooLarge,
    #[error("the two cases of the embedding disagree at {0}")]
    Inconsistent(String),
}

/// A finite symmetric implication algebra together with its minimal elements.
#[derive(Clone, Debug)]
pub struct PresentedSym {
    sym: SymAlgebra,
    minimals: Vec<usize>,
}

impl PresentedSym {
    pub fn new(sym: SymAlgebra) -> Result<Self, EnvError> {
        let minimals = minimal_elements(&sym);
        for &a in &minimals {
            if !minimals.contains(&sym.t(a)) {
                return Err(EnvError::Invalid(format!("T moves minimal {} off the minimals", sym.base().label(a))));
            }
        }
        Ok(PresentedSym { sym, minimals })
    }

    /// An upward-closed family of subsets of `{1..atoms}` under union, with
    /// `T` swapping the listed pairs and fixing everything else.
    pub fn from_masks(atoms: u32, elements: &[u32], swaps: &[(u32, u32)]) -> Result<Self, EnvError> {
        if atoms > 16 {
            return Err(EnvError::Invalid(format!("at most 16 atoms supported (got {atoms})")));
        }
        let full = (1u32 << atoms) - 1;
        let set: BTreeSet<u32> = elements.iter().copied().collect();
        if let Some(m) = set.iter().find(|&&m| m & !full != 0) {
            return Err(EnvError::Invalid(format!("{} uses atoms beyond {atoms}", set_label(*m))));
        }
        if set.is_empty() {
            return Err(EnvError::Invalid("no elements".into()));
        }
        for &m in &set {
            for i in 0..atoms {
                if !set.contains(&(m | 1 << i)) {
                    return Err(EnvError::Invalid(format!(
                        "{} is listed but {} is not",
                        set_label(m),
                        set_label(m | 1 << i)
                    )));
                }
            }
        }
        let elems: Vec<u32> = set.into_iter().collect();
        let pos: HashMap<u32, usize> = elems.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut t: Vec<usize> = (0..elems.len()).collect();
        for &(x, y) in swaps {
            let (Some(&i), Some(&j)) = (pos.get(&x), pos.get(&y)) else {
                return Err(EnvError::Invalid(format!("T pair {}:{} is not among the elements", x, y)));
            };
            if t[i] != i || t[j] != j {
                return Err(EnvError::Invalid(format!("element {} swapped twice", set_label(if t[i] != i { x } else { y }))));
            }
            t[i] = j;
            t[j] = i;
        }
        let labels = elems.iter().map(|&m| set_label(m)).collect();
        let base = FinAlgebra::from_fn(elems.len(), pos[&full], Some(labels), |a, b| pos[&(elems[a] | elems[b])])
            .map_err(|e| EnvError::Invalid(e.to_string()))?;
        Self::new(SymAlgebra::new(base, t)?)
    }

    pub fn sym(&self) -> &SymAlgebra {
        &self.sym
    }

    pub fn minimals(&self) -> &[usize] {
        &self.minimals
    }
}

/// Coatom coordinates of `s`: atom count, the mask of each element (bit `i`
/// set when the element is not below coatom `i`), and the `T`-swapped pairs.
pub fn presentation(s: &SymAlgebra) -> (u32, Vec<u32>, Vec<(u32, u32)>) {
    let b = s.base();
    let coatoms = b.coatoms();
    let mask = |x: usize| {
        coatoms
            .iter()
            .enumerate()
            .filter(|&(_, &c)| !b.leq(x, c))
            .fold(0u32, |m, (i, _)| m | 1 << i)
    };
    let masks: Vec<u32> = b.elements().map(mask).collect();
    let swaps = b
        .elements()
        .filter(|&x| s.t(x) > x)
        .map(|x| (masks[x], masks[s.t(x)]))
        .collect();
    (coatoms.len() as u32, masks, swaps)
}

pub fn minimal_elements(s: &SymAlgebra) -> Vec<usize> {
    s.base().minimal_elements()
}

/// An envelope together with the embedding of the input.
#[derive(Clone, Debug)]
pub struct EnvelopeResult {
    pub env: SymAlgebra,
    pub embed: Vec<usize>,
}

fn identity(p: &PresentedSym) -> EnvelopeResult {
    EnvelopeResult { env: p.sym.clone(), embed: p.sym.base().elements().collect() }
}

/// The construction for at most two minimal elements: the input itself when
/// it is already locally symmetric, otherwise
/// `[a v b, 1] x I([a, a v b])` with the two-case embedding.
pub fn envelope_base2(p: &PresentedSym) -> Result<EnvelopeResult, EnvError> {
    let s = &p.sym;
    let b = s.base();
    if p.minimals.len() > 2 {
        return Err(EnvError::Unsupported(format!("{} minimal elements", p.minimals.len())));
    }
    if s.is_locally_symmetric().passed() {
        return Ok(identity(p));
    }
    let (a, bb) = match p.minimals[..] {
        [x, y] if s.t(x) == y => (x, y),
        _ => return Err(EnvError::Unsupported("minimal elements are not a swapped pair".into())),
    };
    let ab = b.join(a, bb);
    let meet = |x, y| b.meet(x, y).expect("meets exist above a common lower bound");
    let upper: Vec<usize> = b.up_set(ab).iter().collect();
    if let Some(&x) = upper.iter().find(|&&x| s.t(x) != x) {
        return Err(EnvError::Unsupported(format!("T moves {} above the join of the minimals", b.label(x))));
    }
    let cube: Vec<usize> = b.up_set(a).iter().filter(|&x| b.leq(x, ab)).collect();
    let not = |u| meet(b.arrow(u, a), ab);
    let intervals: Vec<(usize, usize)> = cube
        .iter()
        .flat_map(|&lo| cube.iter().filter(move |&&hi| b.leq(lo, hi)).map(move |&hi| (lo, hi)))
        .collect();
    let ipos: HashMap<(usize, usize), usize> = intervals.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let upos: HashMap<usize, usize> = upper.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = intervals.len();
    let pair = |j: usize, iv: (usize, usize)| upos[&j] * k + ipos[&iv];
    let labels = upper
        .iter()
        .flat_map(|&j| intervals.iter().map(move |&(lo, hi)| format!("({},[{},{}])", b.label(j), b.label(lo), b.label(hi))))
        .collect();
    let n = upper.len() * k;
    let top = pair(b.top(), (a, ab));
    let prod = FinAlgebra::from_fn(n, top, Some(labels), |x, y| {
        let ((l1, h1), (l2, h2)) = (intervals[x % k], intervals[y % k]);
        pair(b.join(upper[x / k], upper[y / k]), (meet(l1, l2), b.join(h1, h2)))
    })
    .map_err(|e| EnvError::Invalid(e.to_string()))?;
    let flip = |(lo, hi): (usize, usize)| (not(hi), not(lo));
    let t = (0..n).map(|x| upos[&upper[x / k]] * k + ipos[&flip(intervals[x % k])]).collect();
    let env = SymAlgebra::new(prod, t)?;
    let mut embed = Vec::with_capacity(b.len());
    for x in b.elements() {
        let from_a = b.leq(a, x).then(|| pair(b.join(x, ab), (a, meet(x, ab))));
        let from_b = b.leq(bb, x).then(|| pair(b.join(x, ab), flip((a, s.t(meet(x, ab))))));
        embed.push(match (from_a, from_b) {
            (Some(u), Some(v)) if u != v => return Err(EnvError::Inconsistent(b.label(x).into())),
            (Some(u), _) | (None, Some(u)) => u,
            (None, None) => unreachable!("every element lies above a minimal element"),
        });
    }
    Ok(EnvelopeResult { env, embed })
}

/// A coordinate of the coatom embedding.
#[derive(Clone, Copy, Debug)]
enum Coord {
    /// A `T`-fixed coatom: values in the two-element chain.
    Fixed(usize),
    /// A swapped pair of coatoms: values in `{a, b, 1}`.
    Pair(usize, usize),
}

/// The envelope in general: already locally symmetric inputs are their own
/// envelope; otherwise the input (which must lie in the variety generated by
/// the chain and the three-element algebra) is embedded by coatom
/// coordinates into a product of those two, and closed under `->` and the
/// local reflection `p meet T(p -> q)`.
pub fn envelope(p: &PresentedSym) -> Result<EnvelopeResult, EnvError> {
    let s = &p.sym;
    let b = s.base();
    if s.is_locally_symmetric().passed() {
        return Ok(identity(p));
    }
    let basis = s.eval_identity(Identity::A23Basis);
    if !basis.passed() {
        return Err(EnvError::Unsupported(format!("outside the A2 v A3 variety: {basis}")));
    }
    let coords: Vec<Coord> = b
        .coatoms()
        .into_iter()
        .filter_map(|c| match s.t(c) {
            tc if tc == c => Some(Coord::Fixed(c)),
            tc if tc > c => Some(Coord::Pair(c, tc)),
            _ => None,
        })
        .collect();
    let a2 = SymAlgebra::builtin(Builtin::A2);
    let a3 = SymAlgebra::builtin(Builtin::A3);
    let factor = |c: &Coord| if matches!(c, Coord::Fixed(_)) { &a2 } else { &a3 };
    let mut image = Vec::with_capacity(b.len());
    for x in b.elements() {
        let mut v = Vec::with_capacity(coords.len());
        for c in &coords {
            v.push(match *c {
                Coord::Fixed(c) => u8::from(!b.leq(x, c)),
                Coord::Pair(c, tc) => match (b.leq(x, c), b.leq(x, tc)) {
                    (true, true) => {
                        return Err(EnvError::Unsupported(format!(
                            "{} lies below both {} and its image",
                            b.label(x),
                            b.label(c)
                        )))
                    }
                    (true, false) => 0,
                    (false, true) => 1,
                    (false, false) => 2,
                },
            });
        }
        image.push(v);
    }
    let lift = |f: &dyn Fn(&SymAlgebra, usize, usize) -> usize, x: &[u8], y: &[u8]| -> Vec<u8> {
        coords.iter().enumerate().map(|(i, c)| f(factor(c), x[i] as usize, y[i] as usize) as u8).collect()
    };
    let arrow = |x: &[u8], y: &[u8]| lift(&|f, p, q| f.base().arrow(p, q), x, y);
    let leq = |x: &[u8], y: &[u8]| coords.iter().enumerate().all(|(i, c)| factor(c).base().leq(x[i] as usize, y[i] as usize));
    let local = |x: &[u8], y: &[u8]| {
        lift(
            &|f, p, q| f.base().meet(p, f.t(f.base().arrow(p, q))).expect("factors are locally symmetric"),
            x,
            y,
        )
    };
    let mut members: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut list: Vec<Vec<u8>> = Vec::new();
    let mut queue: Vec<Vec<u8>> = image.clone();
    while let Some(x) = queue.pop() {
        if members.contains(&x) {
            continue;
        }
        if members.len() >= MAX_ENVELOPE {
            return Err(EnvError::TooLarge);
        }
        members.insert(x.clone());
        list.push(x.clone());
        for y in &list {
            for z in [arrow(&x, y), arrow(y, &x)] {
                if !members.contains(&z) {
                    queue.push(z);
                }
            }
            if leq(y, &x) {
                queue.push(local(&x, y));
            }
            if leq(&x, y) {
                queue.push(local(y, &x));
            }
        }
    }
    let elems: Vec<Vec<u8>> = members.into_iter().collect();
    let pos: HashMap<&[u8], usize> = elems.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let top: Vec<u8> = coords.iter().map(|c| factor(c).base().top() as u8).collect();
    let name = |v: &[u8]| {
        let parts: Vec<&str> = coords.iter().zip(v).map(|(c, &x)| factor(c).base().label(x as usize)).collect();
        format!("({})", parts.join(","))
    };
    let mut labels: Vec<String> = elems.iter().map(|v| name(v)).collect();
    for (x, v) in image.iter().enumerate() {
        labels[pos[v.as_slice()]] = b.label(x).to_string();
    }
    if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
        labels = elems.iter().map(|v| name(v)).collect();
    }
    let join = |x: &[u8], y: &[u8]| lift(&|f, p, q| f.base().join(p, q), x, y);
    let base = FinAlgebra::from_fn(elems.len(), pos[top.as_slice()], Some(labels), |x, y| {
        pos[join(&elems[x], &elems[y]).as_slice()]
    })
    .map_err(|e| EnvError::Invalid(e.to_string()))?;
    let t = elems
        .iter()
        .map(|v| {
            let tv: Vec<u8> = coords.iter().zip(v).map(|(c, &x)| factor(c).t(x as usize) as u8).collect();
            pos[tv.as_slice()]
        })
        .collect();
    let env = SymAlgebra::new(base, t)?;
    let embed = image.iter().map(|v| pos[v.as_slice()]).collect();
    Ok(EnvelopeResult { env, embed })
}

/// Whether `f` is a `T`-equivariant implication morphism.
pub fn check_sym_morphism(f: &[usize], a: &SymAlgebra, b: &SymAlgebra) -> CheckReport {
    let r = check_morphism(f, a.base(), b.base());
    if !r.passed() {
        return r;
    }
    let mut c = Checker::new("symmetric-morphism", a.base().labels());
    c.law::<1, _>("equivariant", |[x]| f[a.t(x)] == b.t(f[x]));
    c.finish()
}

/// The invariants of an envelope of `p`: locally symmetric, injective
/// symmetric embedding, upward-closed image that generates under caret and
/// `->`.
pub fn check_envelope(p: &PresentedSym, r: &EnvelopeResult) -> CheckReport {
    let s = &p.sym;
    let e = &r.env;
    let eb = e.base();
    let mut parts = vec![e.is_locally_symmetric(), check_sym_morphism(&r.embed, s, e)];
    let mut c = Checker::new("envelope", s.base().labels());
    let mut seen = vec![usize::MAX; eb.len()];
    for (x, &y) in r.embed.iter().enumerate() {
        if seen[y] != usize::MAX {
            c.fail("injective", &[seen[y], x], None);
            break;
        }
        seen[y] = x;
    }
    let image: Vec<usize> = {
        let mut v = r.embed.clone();
        v.sort_unstable();
        v
    };
    c.check("image-up-closed", &[], eb.is_up_closed(&image));
    let generated = saturate(e, &image);
    if generated.len() != eb.len() {
        c.fail(
            "generates",
            &[],
            Some(format!("caret and -> reach {} of {} elements", generated.len(), eb.len())),
        );
    }
    parts.push(c.finish());
    CheckReport::combine("envelope", parts)
}

/// Closure of `seed` under `->` and the (partial) caret
/// `x ^ y = x meet (x v y) meet T((x v y) -> y)`.
pub fn saturate(s: &SymAlgebra, seed: &[usize]) -> Vec<usize> {
    let b = s.base();
    let caret = |x: usize, y: usize| {
        let j = b.join(x, y);
        b.meet(j, s.t(b.arrow(j, y))).and_then(|d| b.meet(x, d))
    };
    let mut mem = vec![false; b.len()];
    let mut list: Vec<usize> = Vec::new();
    let mut queue = seed.to_vec();
    while let Some(x) = queue.pop() {
        if mem[x] {
            continue;
        }
        mem[x] = true;
        list.push(x);
        for &y in &list {
            let new = [Some(b.arrow(x, y)), Some(b.arrow(y, x)), caret(x, y), caret(y, x)];
            queue.extend(new.into_iter().flatten().filter(|&z| !mem[z]));
        }
    }
    list.sort_unstable();
    list
}

/// Exhaustive enumeration of symmetric implication morphisms, with
/// propagation along `->` and `T` and a node budget.
pub struct MorphismSearch<'a> {
    dom: &'a SymAlgebra,
    cod: &'a SymAlgebra,
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded;

impl<'a> MorphismSearch<'a> {
    pub fn new(dom: &'a SymAlgebra, cod: &'a SymAlgebra, budget: u64) -> Self {
        let b = dom.base();
        let mut order = b.minimal_elements();
        let rest: Vec<usize> = b.elements().filter(|x| !order.contains(x)).collect();
        order.extend(rest);
        MorphismSearch { dom, cod, order, nodes: 0, budget }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Every morphism agreeing with `fixed`, in a deterministic order.
    pub fn all(&mut self, fixed: &[(usize, usize)]) -> Result<Vec<Vec<usize>>, BudgetExceeded> {
        let mut h = vec![None; self.dom.len()];
        let mut queue: Vec<(usize, usize)> = fixed.to_vec();
        queue.push((self.dom.base().top(), self.cod.base().top()));
        let mut out = Vec::new();
        if self.propagate(&mut h, queue) {
            self.branch(h, &mut out)?;
        }
        Ok(out)
    }

    fn branch(&mut self, h: Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) -> Result<(), BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExceeded);
        }
        let Some(&x) = self.order.iter().find(|&&x| h[x].is_none()) else {
            out.push(h.into_iter().map(|v| v.expect("assigned")).collect());
            return Ok(());
        };
        for v in self.cod.base().elements() {
            let mut next = h.clone();
            if self.propagate(&mut next, vec![(x, v)]) {
                self.branch(next, out)?;
            }
        }
        Ok(())
    }

    fn propagate(&self, h: &mut [Option<usize>], mut queue: Vec<(usize, usize)>) -> bool {
        let (da, cb) = (self.dom.base(), self.cod.base());
        while let Some((x, v)) = queue.pop() {
            match h[x] {
                Some(w) if w != v => return false,
                Some(_) => {}
                None => {
                    h[x] = Some(v);
                    queue.push((self.dom.t(x), self.cod.t(v)));
                    for y in da.elements() {
                        if let Some(w) = h[y] {
                            queue.push((da.arrow(x, y), cb.arrow(v, w)));
                            queue.push((da.arrow(y, x), cb.arrow(w, v)));
                        }
                    }
                }
            }
        }
        true
    }
}

fn budget_report(suite: &str, nodes: u64) -> CheckReport {
    CheckReport {
        suite: suite.into(),
        status: Status::BudgetExceeded,
        witness: None,
        coverage: Coverage::Exhaustive,
        notes: vec![format!("stopped after {nodes} search nodes")],
    }
}

/// Every symmetric morphism `f: I -> m` has exactly one symmetric extension
/// `h: env -> m` with `h . e = f`.
pub fn check_universal_property(p: &PresentedSym, r: &EnvelopeResult, m: &SymAlgebra, budget: u64) -> CheckReport {
    const SUITE: &str = "universal-property";
    if m.len() > MAX_TARGET {
        return CheckReport::not_applicable(SUITE, format!("target has {} > {MAX_TARGET} elements", m.len()));
    }
    if !m.is_locally_symmetric().passed() {
        return CheckReport::not_applicable(SUITE, "target is not locally symmetric");
    }
    let s = &p.sym;
    let mut outer = MorphismSearch::new(s, m, budget);
    let Ok(fs) = outer.all(&[]) else {
        return budget_report(SUITE, outer.nodes());
    };
    let mut spent = outer.nodes();
    let mut c = Checker::new(SUITE, s.base().labels());
    for f in &fs {
        let mut inner = MorphismSearch::new(&r.env, m, budget.saturating_sub(spent));
        let fixed: Vec<(usize, usize)> = r.embed.iter().zip(f).map(|(&x, &v)| (x, v)).collect();
        let Ok(ext) = inner.all(&fixed) else {
            return budget_report(SUITE, spent + inner.nodes());
        };
        spent += inner.nodes();
        if ext.len() != 1 {
            let shown: Vec<String> =
                f.iter().enumerate().map(|(x, &v)| format!("{}->{}", s.base().label(x), m.base().label(v))).collect();
            c.fail(
                "unique-extension",
                &[],
                Some(format!("f = {{{}}} has {} extensions", shown.join(", "), ext.len())),
            );
            break;
        }
    }
    c.note(format!("{} morphisms into a {}-element target, {spent} search nodes", fs.len(), m.len()));
    c.finish()
}

/// The isomorphism `env1 -> env2` commuting with the two embeddings, if the
/// unique such morphism exists and is bijective.
pub fn compare_envelopes(r1: &EnvelopeResult, r2: &EnvelopeResult, budget: u64) -> Option<Vec<usize>> {
    if r1.env.len() != r2.env.len() || r1.embed.len() != r2.embed.len() {
        return None;
    }
    let fixed: Vec<(usize, usize)> = r1.embed.iter().zip(&r2.embed).map(|(&x, &y)| (x, y)).collect();
    let maps = MorphismSearch::new(&r1.env, &r2.env, budget).all(&fixed).ok()?;
    match &maps[..] {
        [f] if f.iter().collect::<BTreeSet<_>>().len() == f.len() => Some(f.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::signed_algebra;
    use crate::multicube::{McSpec, Multicube};

    fn signed_sym(k: u32) -> SymAlgebra {
        SymAlgebra::from_cubic(&signed_algebra(k).unwrap()).unwrap()
    }

    /// Up-closure of two antipodal vertices of the square.
    fn two_vertices() -> PresentedSym {
        let s = signed_sym(2);
        let b = s.base();
        let (v, w) = (b.find("<1,2|>").unwrap(), b.find("<|1,2>").unwrap());
        let elems: Vec<usize> = b.elements().filter(|&x| b.leq(v, x) || b.leq(w, x)).collect();
        PresentedSym::new(s.restrict(&elems).unwrap()).unwrap()
    }

    fn atoms3() -> PresentedSym {
        PresentedSym::from_masks(3, &[1, 2, 3, 5, 6, 7], &[(1, 2), (5, 6)]).unwrap()
    }

    #[test]
    fn minimal_elements_of_builtins() {
        let labels = |s: &SymAlgebra| -> Vec<String> {
            minimal_elements(s).into_iter().map(|x| s.base().label(x).to_string()).collect()
        };
        assert_eq!(labels(&SymAlgebra::builtin(Builtin::A3)), ["a", "b"]);
        assert_eq!(labels(&SymAlgebra::builtin(Builtin::A4)), ["<0,0>"]);
        let m = Multicube::new(&McSpec::new(&[1]).unwrap()).unwrap();
        let mut got = labels(&m.sym());
        got.sort();
        assert_eq!(got, ["(-1)+X{}", "(0)+X{}", "(1)+X{}"]);
    }

    #[test]
    fn masks_validate() {
        assert!(matches!(PresentedSym::from_masks(2, &[1, 2], &[]), Err(EnvError::Invalid(_))));
        assert!(matches!(PresentedSym::from_masks(2, &[1, 2, 3], &[(1, 4)]), Err(EnvError::Invalid(_))));
        // T must be an automorphism: swapping a minimal with a non-minimal fails
        assert!(PresentedSym::from_masks(2, &[1, 2, 3], &[(1, 3)]).is_err());
        let p = PresentedSym::from_masks(2, &[1, 2, 3], &[(1, 2)]).unwrap();
        assert_eq!(p.sym().len(), 3);
    }

    #[test]
    fn presentation_round_trips() {
        for s in [signed_sym(2), SymAlgebra::builtin(Builtin::A4), two_vertices().sym().clone()] {
            let (k, masks, swaps) = presentation(&s);
            let p = PresentedSym::from_masks(k, &masks, &swaps).unwrap();
            assert_eq!(p.sym().len(), s.len());
            let f: Vec<usize> = masks.iter().map(|&m| p.sym().base().find(&set_label(m)).unwrap()).collect();
            assert!(check_sym_morphism(&f, &s, p.sym()).passed());
        }
    }

    #[test]
    fn a3_envelope_is_itself() {
        let p = PresentedSym::new(SymAlgebra::builtin(Builtin::A3)).unwrap();
        for r in [envelope(&p).unwrap(), envelope_base2(&p).unwrap()] {
            assert_eq!(r.env.len(), 3);
            assert!(check_envelope(&p, &r).passed());
        }
    }

    #[test]
    fn a4_is_already_locally_symmetric() {
        let p = PresentedSym::new(SymAlgebra::builtin(Builtin::A4)).unwrap();
        let r = envelope_base2(&p).unwrap();
        assert_eq!(r.embed, vec![0, 1, 2, 3]);
        assert_eq!(envelope(&p).unwrap().embed, vec![0, 1, 2, 3]);
    }

    #[test]
    fn two_vertices_envelope_is_the_square() {
        let p = two_vertices();
        assert_eq!(p.sym().len(), 7);
        assert!(!p.sym().is_locally_symmetric().passed());
        let general = envelope(&p).unwrap();
        let literal = envelope_base2(&p).unwrap();
        assert_eq!(general.env.len(), 9);
        assert_eq!(literal.env.len(), 9);
        assert!(check_envelope(&p, &general).passed(), "{}", check_envelope(&p, &general));
        assert!(check_envelope(&p, &literal).passed(), "{}", check_envelope(&p, &literal));
        assert!(compare_envelopes(&literal, &general, DEFAULT_BUDGET).is_some());
        let square = signed_sym(2);
        let f: Vec<usize> =
            p.sym().base().labels().iter().map(|l| square.base().find(l).unwrap()).collect();
        let to_square = PresentedSym::new(p.sym().clone()).unwrap();
        let sq = EnvelopeResult { env: square.clone(), embed: f };
        assert!(check_envelope(&to_square, &sq).passed());
        assert!(compare_envelopes(&general, &sq, DEFAULT_BUDGET).is_some());
    }

    #[test]
    fn three_atom_example_is_locally_symmetric() {
        let p = atoms3();
        assert_eq!(p.sym().len(), 6);
        let r = envelope(&p).unwrap();
        assert_eq!(r.embed, (0..6).collect::<Vec<_>>());
        assert!(check_envelope(&p, &r).passed());
    }

    #[test]
    fn universal_property_small() {
        let a2 = SymAlgebra::builtin(Builtin::A2);
        let a3 = SymAlgebra::builtin(Builtin::A3);
        let p = PresentedSym::new(a3.clone()).unwrap();
        let r = envelope(&p).unwrap();
        let into_a3 = check_universal_property(&p, &r, &a3, DEFAULT_BUDGET);
        assert!(into_a3.passed());
        // identity, swap and the constant map
        assert!(into_a3.notes[0].starts_with("3 morphisms"), "{into_a3}");
        let into_a2 = check_universal_property(&p, &r, &a2, DEFAULT_BUDGET);
        assert!(into_a2.passed());
        assert!(into_a2.notes[0].starts_with("1 morphisms"), "{into_a2}");
    }

    #[test]
    fn universal_property_square() {
        let p = two_vertices();
        let r = envelope(&p).unwrap();
        for m in [signed_sym(1), signed_sym(2), SymAlgebra::builtin(Builtin::A4)] {
            let rep = check_universal_property(&p, &r, &m, DEFAULT_BUDGET);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn identity_embedding_into_itself_is_not_an_envelope() {
        // the input alone is not locally symmetric
        let p = two_vertices();
        let r = identity(&p);
        assert!(check_envelope(&p, &r).failed());
    }

    #[test]
    fn tiny_budget_is_reported() {
        let p = two_vertices();
        let r = envelope(&p).unwrap();
        let rep = check_universal_property(&p, &r, &signed_sym(2), 3);
        assert_eq!(rep.status, Status::BudgetExceeded);
    }
}
