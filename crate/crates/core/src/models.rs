//! Concrete cube models: Boolean algebras on bitmasks, interval algebras
//! `I(B)` and signed-set algebras `S(X)`.

use std::fmt;

use thiserror::Error;

use crate::algebra::FinAlgebra;
use crate::cubic::CubicAlg;
use crate::report::{CheckReport, Checker};

/// Hard cap on the number of atoms / ground-set points.
pub const MAX_ATOMS: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{0} atoms exceeds the cap of {MAX_ATOMS}")]
    TooManyAtoms(u32),
    #[error("[{a:#b},{b:#b}] is not an interval: lower end not below upper end")]
    NotInterval { a: u32, b: u32 },
    #[error("<{plus:#b}|{minus:#b}> is not a signed set: the two parts overlap")]
    Overlap { plus: u32, minus: u32 },
    #[error("mask {mask:#b} has bits outside {k} atoms")]
    OutsideAtoms { mask: u32, k: u32 },
    #[error("{elements} elements is too many to tabulate")]
    TooLarge { elements: u64 },
}

/// Finite Boolean algebra `P({1..k})` with elements encoded as bit patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoolAlg {
    k: u32,
}

impl BoolAlg {
    pub fn new(k: u32) -> Result<Self, ModelError> {
        if k > MAX_ATOMS {
            return Err(ModelError::TooManyAtoms(k));
        }
        Ok(BoolAlg { k })
    }

    pub fn atoms(self) -> u32 {
        self.k
    }

    pub fn one(self) -> u32 {
        if self.k == 32 {
            u32::MAX
        } else {
            (1u32 << self.k) - 1
        }
    }

    pub fn not(self, x: u32) -> u32 {
        !x & self.one()
    }

    pub fn contains(self, x: u32) -> bool {
        x & !self.one() == 0
    }

    fn check(self, x: u32) -> Result<u32, ModelError> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(ModelError::OutsideAtoms { mask: x, k: self.k })
        }
    }
}

/// `{1,3}`-style rendering of a bitmask (atom `i` is bit `i-1`).
pub fn set_label(mask: u32) -> String {
    let items: Vec<String> = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn bare_list(mask: u32) -> String {
    (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Interval `[a, b]` of a Boolean algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntervalElt {
    a: u32,
    b: u32,
}

impl IntervalElt {
    pub fn new(alg: BoolAlg, a: u32, b: u32) -> Result<Self, ModelError> {
        alg.check(a)?;
        alg.check(b)?;
        if a & !b != 0 {
            return Err(ModelError::NotInterval { a, b });
        }
        Ok(IntervalElt { a, b })
    }

    pub fn lower(self) -> u32 {
        self.a
    }

    pub fn upper(self) -> u32 {
        self.b
    }

    pub fn leq(self, other: IntervalElt) -> bool {
        other.a & !self.a == 0 && self.b & !other.b == 0
    }
}

impl fmt::Display for IntervalElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", set_label(self.a), set_label(self.b))
    }
}

/// `[a,b] v [c,d] = [a ^ c, b v d]`.
pub fn interval_join(p: IntervalElt, q: IntervalElt) -> IntervalElt {
    IntervalElt { a: p.a & q.a, b: p.b | q.b }
}

/// Reflection of `q` inside `p`, defined for `q <= p`:
/// `[a v (b ^ -d), b ^ (a v -c)]`.
pub fn interval_delta_partial(alg: BoolAlg, p: IntervalElt, q: IntervalElt) -> Option<IntervalElt> {
    q.leq(p).then(|| IntervalElt {
        a: p.a | (p.b & alg.not(q.b)),
        b: p.b & (p.a | alg.not(q.a)),
    })
}

/// Totalized reflection `delta(p, q) = delta(p v q, q)`.
pub fn interval_delta(alg: BoolAlg, p: IntervalElt, q: IntervalElt) -> IntervalElt {
    interval_delta_partial(alg, interval_join(p, q), q).expect("q <= p v q")
}

/// Signed subset `<A|B>` with `A` and `B` disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedElt {
    plus: u32,
    minus: u32,
}

impl SignedElt {
    pub fn new(ground: BoolAlg, plus: u32, minus: u32) -> Result<Self, ModelError> {
        ground.check(plus)?;
        ground.check(minus)?;
        if plus & minus != 0 {
            return Err(ModelError::Overlap { plus, minus });
        }
        Ok(SignedElt { plus, minus })
    }

    pub fn plus(self) -> u32 {
        self.plus
    }

    pub fn minus(self) -> u32 {
        self.minus
    }

    /// Componentwise containment reversed: more signs means lower.
    pub fn leq(self, other: SignedElt) -> bool {
        other.plus & !self.plus == 0 && other.minus & !self.minus == 0
    }
}

impl fmt::Display for SignedElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}|{}>", bare_list(self.plus), bare_list(self.minus))
    }
}

/// `<A|B> v <C|D> = <A n C, B n D>`.
pub fn signed_join(s: SignedElt, t: SignedElt) -> SignedElt {
    SignedElt { plus: s.plus & t.plus, minus: s.minus & t.minus }
}

/// `delta(<A|B>, <C|D>) = <A u (D \ B), B u (C \ A)>` for `t <= s`.
pub fn signed_delta_partial(s: SignedElt, t: SignedElt) -> Option<SignedElt> {
    t.leq(s).then_some(SignedElt {
        plus: s.plus | (t.minus & !s.minus),
        minus: s.minus | (t.plus & !s.plus),
    })
}

pub fn signed_delta(s: SignedElt, t: SignedElt) -> SignedElt {
    signed_delta_partial(signed_join(s, t), t).expect("t <= s v t")
}

/// The isomorphism `S(X) -> I(P(X))`, `<A|B> -> [A, X \ B]`.
pub fn signed_to_interval(ground: BoolAlg, s: SignedElt) -> IntervalElt {
    IntervalElt { a: s.plus, b: ground.not(s.minus) }
}

fn tabulation_size(k: u32) -> Result<usize, ModelError> {
    let elements = 3u64.checked_pow(k).unwrap_or(u64::MAX);
    if elements > 1 << 16 {
        return Err(ModelError::TooLarge { elements });
    }
    Ok(elements as usize)
}

/// Signed sets over `{1..k}`, enumerated by base-3 digits per point
/// (0 = unsigned, 1 = in `A`, 2 = in `B`); the top `<|>` is index 0.
pub fn signed_elements(k: u32) -> Result<Vec<SignedElt>, ModelError> {
    let n = tabulation_size(k)?;
    Ok((0..n)
        .map(|mut code| {
            let (mut plus, mut minus) = (0, 0);
            for i in 0..k {
                match code % 3 {
                    1 => plus |= 1 << i,
                    2 => minus |= 1 << i,
                    _ => {}
                }
                code /= 3;
            }
            SignedElt { plus, minus }
        })
        .collect())
}

/// Intervals of `P({1..k})` in the same digit order as [`signed_elements`]
/// (0 = free, 1 = in the lower end, 2 = outside the upper end).
pub fn interval_elements(k: u32) -> Result<Vec<IntervalElt>, ModelError> {
    let ground = BoolAlg::new(k)?;
    Ok(signed_elements(k)?.into_iter().map(|s| signed_to_interval(ground, s)).collect())
}

fn index_of<T: PartialEq>(elems: &[T], x: &T) -> usize {
    elems.iter().position(|e| e == x).expect("closed operation")
}

/// `<A|B> -> [A, X \ B]` checked elementwise against the signed and interval
/// operations and against the two tabulated algebras.
pub fn check_signed_interval_iso(k: u32) -> Result<CheckReport, ModelError> {
    let g = BoolAlg::new(k)?;
    let ss = signed_elements(k)?;
    let is = interval_elements(k)?;
    let (sa, ia) = (signed_algebra(k)?, interval_algebra(k)?);
    let map = |x: SignedElt| signed_to_interval(g, x);
    let mut c = Checker::new("signed-interval-isomorphism", sa.base().labels());
    c.law::<1, _>("image", |[i]| map(ss[i]) == is[i])
        .law::<2, _>("injective", |[i, j]| i == j || is[i] != is[j])
        .law::<2, _>("order", |[i, j]| ss[i].leq(ss[j]) == is[i].leq(is[j]))
        .law::<2, _>("join", |[i, j]| map(signed_join(ss[i], ss[j])) == interval_join(is[i], is[j]))
        .law::<2, _>("reflection", |[i, j]| map(signed_delta(ss[i], ss[j])) == interval_delta(g, is[i], is[j]))
        .law::<2, _>("tables", |[i, j]| {
            sa.base().join(i, j) == ia.base().join(i, j) && sa.delta(i, j) == ia.delta(i, j)
        });
    Ok(c.finish())
}

/// `S({1..k})` as a tabulated cubic algebra.
pub fn signed_algebra(k: u32) -> Result<CubicAlg, ModelError> {
    let elems = signed_elements(k)?;
    let code = |s: &SignedElt| -> usize {
        (0..k).rev().fold(0, |acc, i| {
            acc * 3 + if s.plus >> i & 1 == 1 { 1 } else if s.minus >> i & 1 == 1 { 2 } else { 0 }
        })
    };
    let labels = elems.iter().map(|s| s.to_string()).collect();
    let n = elems.len();
    let base = FinAlgebra::from_fn(n, 0, Some(labels), |x, y| code(&signed_join(elems[x], elems[y])))
        .expect("valid signed table");
    let delta = (0..n * n).map(|i| code(&signed_delta(elems[i / n], elems[i % n]))).collect();
    Ok(CubicAlg::new(base, delta).expect("valid delta table"))
}

/// `I(P({1..k}))` as a tabulated cubic algebra.
pub fn interval_algebra(k: u32) -> Result<CubicAlg, ModelError> {
    let alg = BoolAlg::new(k)?;
    let elems = interval_elements(k)?;
    let labels = elems.iter().map(|s| s.to_string()).collect();
    let n = elems.len();
    let top = index_of(&elems, &IntervalElt { a: 0, b: alg.one() });
    let base = FinAlgebra::from_fn(n, top, Some(labels), |x, y| index_of(&elems, &interval_join(elems[x], elems[y])))
        .expect("valid interval table");
    let delta = (0..n * n).map(|i| index_of(&elems, &interval_delta(alg, elems[i / n], elems[i % n]))).collect();
    Ok(CubicAlg::new(base, delta).expect("valid delta table"))
}

/// `P({1..k})` as an implication algebra (`v` is union).
pub fn boolean_algebra(k: u32) -> Result<FinAlgebra, ModelError> {
    let alg = BoolAlg::new(k)?;
    if k > 16 {
        return Err(ModelError::TooLarge { elements: 1 << k });
    }
    let n = 1usize << k;
    let labels = (0..n as u32).map(set_label).collect();
    Ok(FinAlgebra::from_fn(n, alg.one() as usize, Some(labels), |x, y| x | y).expect("valid boolean table"))
}

/// Componentwise product of two cubic algebras.
pub fn product(a: &FinAlgebra, b: &FinAlgebra) -> FinAlgebra {
    a.product(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{first_failure, Coverage};

    fn s(g: BoolAlg, p: u32, m: u32) -> SignedElt {
        SignedElt::new(g, p, m).unwrap()
    }

    fn iv(b: BoolAlg, lo: u32, hi: u32) -> IntervalElt {
        IntervalElt::new(b, lo, hi).unwrap()
    }

    #[test]
    fn interval_join_examples() {
        let b = BoolAlg::new(2).unwrap();
        let top = iv(b, 0, 3);
        assert_eq!(interval_join(top, iv(b, 1, 1)), top);
        assert_eq!(interval_join(iv(b, 1, 1), iv(b, 2, 2)), iv(b, 0, 3));
        let p = iv(b, 1, 3);
        assert_eq!(interval_join(p, p), p);
    }

    #[test]
    fn interval_delta_examples() {
        let b1 = BoolAlg::new(1).unwrap();
        assert_eq!(interval_delta(b1, iv(b1, 0, 1), iv(b1, 0, 0)), iv(b1, 1, 1));
        let b = BoolAlg::new(2).unwrap();
        let p = iv(b, 1, 3);
        assert_eq!(interval_delta(b, p, p), p);
        assert_eq!(interval_delta(b, iv(b, 0, 3), iv(b, 1, 1)), iv(b, 2, 2));
        // partial form refuses incomparable arguments
        assert_eq!(interval_delta_partial(b, iv(b, 1, 1), iv(b, 2, 2)), None);
    }

    #[test]
    fn signed_examples() {
        let g = BoolAlg::new(2).unwrap();
        assert_eq!(signed_join(s(g, 1, 0), s(g, 1, 2)), s(g, 1, 0));
        let x = s(g, 2, 1);
        assert_eq!(signed_join(x, s(g, 0, 0)), s(g, 0, 0));
        assert_eq!(signed_join(x, x), x);
        assert_eq!(signed_delta(s(g, 0, 0), s(g, 1, 0)), s(g, 0, 1));
        let d = signed_delta(s(g, 1, 0), s(g, 1, 2));
        assert_eq!(d, s(g, 3, 0));
        assert_eq!(signed_delta(s(g, 1, 0), d), s(g, 1, 2));
        assert_eq!(signed_delta(x, x), x);
    }

    #[test]
    fn signed_to_interval_examples() {
        let g = BoolAlg::new(2).unwrap();
        assert_eq!(signed_to_interval(g, s(g, 0, 0)), iv(g, 0, 3));
        assert_eq!(signed_to_interval(g, s(g, 1, 2)), iv(g, 1, 1));
        assert_eq!(signed_to_interval(g, s(g, 0, 3)), iv(g, 0, 0));
    }

    #[test]
    fn constructors_reject_invalid_pairs() {
        let g = BoolAlg::new(2).unwrap();
        assert!(matches!(SignedElt::new(g, 1, 1), Err(ModelError::Overlap { .. })));
        assert!(matches!(IntervalElt::new(g, 2, 1), Err(ModelError::NotInterval { .. })));
        assert!(matches!(IntervalElt::new(g, 0, 4), Err(ModelError::OutsideAtoms { .. })));
        assert!(matches!(BoolAlg::new(33), Err(ModelError::TooManyAtoms(33))));
    }

    #[test]
    fn sizes_are_powers_of_three() {
        for k in 0..=4 {
            assert_eq!(signed_elements(k).unwrap().len(), 3usize.pow(k));
            assert_eq!(interval_elements(k).unwrap().len(), 3usize.pow(k));
        }
    }

    #[test]
    fn signed_to_interval_is_an_isomorphism() {
        for k in 0..=3 {
            let g = BoolAlg::new(k).unwrap();
            let ss = signed_elements(k).unwrap();
            let n = ss.len();
            let map = |x: SignedElt| signed_to_interval(g, x);
            let images: std::collections::HashSet<_> = ss.iter().map(|&x| map(x)).collect();
            assert_eq!(images.len(), n);
            let bad = first_failure::<2, _>(n, Coverage::Exhaustive, |[i, j]| {
                let (x, y) = (ss[i], ss[j]);
                map(signed_join(x, y)) == interval_join(map(x), map(y))
                    && map(signed_delta(x, y)) == interval_delta(g, map(x), map(y))
                    && x.leq(y) == map(x).leq(map(y))
            });
            assert_eq!(bad, None, "k = {k}");
        }
    }

    #[test]
    fn tabulated_models() {
        let s1 = signed_algebra(1).unwrap();
        assert_eq!(s1.base().labels(), &["<|>", "<1|>", "<|1>"]);
        let s2 = signed_algebra(2).unwrap();
        let a = s2.base().find("<1|>").unwrap();
        assert!(s2.base().leq(a, s2.base().top()));
        let i2 = interval_algebra(2).unwrap();
        assert_eq!(i2.base().label(i2.base().top()), "[{},{1,2}]");
        let b = boolean_algebra(2).unwrap();
        assert_eq!(b.labels(), &["{}", "{1}", "{2}", "{1,2}"]);
    }
}
