//! Finite implication-algebra kernel.
//!
//! An algebra is a dense join table over `{0..n}` with a designated top. The
//! order, partial meets and the implication are all derived from the table,
//! so a corrupted table shows up as a failed law rather than being trusted.

use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::report::{CheckReport, Checker};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("join table has {got} entries, expected {n}x{n}")]
    TableShape { n: usize, got: usize },
    #[error("element index {0} out of range (size {1})")]
    OutOfRange(usize, usize),
    #[error("empty universe")]
    Empty,
    #[error("{0} labels for {1} elements")]
    Labels(usize, usize),
    #[error("not an implication algebra: no unique relative complement of {x}v{y} over {y}")]
    NotImplication { x: usize, y: usize },
    #[error("subset is not closed under join or misses the top")]
    NotSubalgebra,
}

/// Fixed-width bit set over element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Explicit finite join semilattice with top, read as an implication algebra.
#[derive(Clone, Debug)]
pub struct FinAlgebra {
    n: usize,
    join: Vec<u32>,
    top: usize,
    labels: Vec<String>,
    down: OnceLock<Vec<BitSet>>,
    up: OnceLock<Vec<BitSet>>,
    imp: OnceLock<Result<Vec<u32>, AlgebraError>>,
}

impl PartialEq for FinAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.join == other.join && self.top == other.top
    }
}

impl Eq for FinAlgebra {}

impl FinAlgebra {
    /// Builds an algebra from a row-major `n x n` join table. Only the shape is
    /// validated; the algebraic laws are the business of the checkers.
    pub fn new(join: Vec<usize>, top: usize, labels: Option<Vec<String>>) -> Result<Self, AlgebraError> {
        let n = (join.len() as f64).sqrt().round() as usize;
        if n * n != join.len() {
            return Err(AlgebraError::TableShape { n, got: join.len() });
        }
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if top >= n {
            return Err(AlgebraError::OutOfRange(top, n));
        }
        if let Some(&bad) = join.iter().find(|&&v| v >= n) {
            return Err(AlgebraError::OutOfRange(bad, n));
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(AlgebraError::Labels(l.len(), n)),
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FinAlgebra {
            n,
            join: join.into_iter().map(|v| v as u32).collect(),
            top,
            labels,
            down: OnceLock::new(),
            up: OnceLock::new(),
            imp: OnceLock::new(),
        })
    }

    pub fn from_fn(
        n: usize,
        top: usize,
        labels: Option<Vec<String>>,
        join: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, AlgebraError> {
        let table = (0..n * n).map(|i| join(i / n, i % n)).collect();
        Self::new(table, top, labels)
    }

    /// The two-element chain `0 < 1`.
    pub fn chain2() -> Self {
        Self::from_fn(2, 1, None, |x, y| x.max(y)).expect("valid table")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.n {
            return Err(AlgebraError::Labels(labels.len(), self.n));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Index of the element carrying `label`.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y] as usize
    }

    /// Derived order: `x <= y` iff `x v y = y`.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join(x, y) == y
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Index-checked variant of [`FinAlgebra::leq`].
    pub fn try_leq(&self, x: usize, y: usize) -> Result<bool, AlgebraError> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.leq(x, y))
    }

    pub fn check_index(&self, x: usize) -> Result<(), AlgebraError> {
        if x < self.n {
            Ok(())
        } else {
            Err(AlgebraError::OutOfRange(x, self.n))
        }
    }

    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down.get_or_init(|| {
            (0..self.n)
                .map(|y| {
                    let mut s = BitSet::new(self.n);
                    (0..self.n).filter(|&x| self.leq(x, y)).for_each(|x| s.insert(x));
                    s
                })
                .collect()
        })[x]
    }

    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up.get_or_init(|| {
            (0..self.n)
                .map(|y| {
                    let mut s = BitSet::new(self.n);
                    (0..self.n).filter(|&x| self.leq(y, x)).for_each(|x| s.insert(x));
                    s
                })
                .collect()
        })[x]
    }

    /// Whether `x` and `y` have any common lower bound.
    pub fn bounded_below(&self, x: usize, y: usize) -> bool {
        !self.down_set(x).intersection(self.down_set(y)).is_empty()
    }

    /// Greatest common lower bound, when the set of common lower bounds has a
    /// maximum. Two incomparable maximal lower bounds mean "no meet".
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let common = self.down_set(x).intersection(self.down_set(y));
        let mut cur = common.iter().next()?;
        for l in common.iter() {
            if self.leq(cur, l) {
                cur = l;
            }
        }
        common.is_subset(self.down_set(cur)).then_some(cur)
    }

    /// Relative complement of `x v y` over `y` inside `[y, 1]`.
    pub fn imp(&self, x: usize, y: usize) -> Result<usize, AlgebraError> {
        self.check_index(x)?;
        self.check_index(y)?;
        let p = self.join(x, y);
        let mut found = None;
        for z in self.up_set(y).iter() {
            if self.join(p, z) == self.top && self.meet(p, z) == Some(y) {
                if found.is_some() {
                    return Err(AlgebraError::NotImplication { x, y });
                }
                found = Some(z);
            }
        }
        found.ok_or(AlgebraError::NotImplication { x, y })
    }

    /// Full implication table, computed once. The error names the
    /// lexicographically first pair without a unique relative complement.
    pub fn imp_table(&self) -> Result<&[u32], AlgebraError> {
        self.imp
            .get_or_init(|| {
                let rows: Vec<Result<Vec<u32>, AlgebraError>> = (0..self.n)
                    .into_par_iter()
                    .map(|x| (0..self.n).map(|y| self.imp(x, y).map(|z| z as u32)).collect())
                    .collect();
                let mut table = Vec::with_capacity(self.n * self.n);
                for row in rows {
                    table.extend(row?);
                }
                Ok(table)
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn is_implication_algebra(&self) -> bool {
        self.check_implication_axioms().passed()
    }

    /// `x -> y` from the cached table.
    ///
    /// Panics if the table is not an implication algebra; every derived
    /// structure validates this at construction.
    #[inline]
    pub fn arrow(&self, x: usize, y: usize) -> usize {
        let t = self.imp_table().expect("arrow() on a table that is not an implication algebra");
        t[x * self.n + y] as usize
    }

    /// Relative complement of `b` over `a` for `a <= b`, i.e. `b -> a`.
    #[inline]
    pub fn complement(&self, a: usize, b: usize) -> usize {
        self.arrow(b, a)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.down_set(x).len() == 1).collect()
    }

    /// Elements covered by the top.
    pub fn coatoms(&self) -> Vec<usize> {
        self.covers().into_iter().filter(|&(_, hi)| hi == self.top).map(|(lo, _)| lo).collect()
    }

    /// Cover pairs `(lo, hi)` of the Hasse diagram, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for lo in 0..self.n {
            for hi in self.up_set(lo).iter() {
                if hi == lo {
                    continue;
                }
                let between = self
                    .up_set(lo)
                    .intersection(self.down_set(hi))
                    .iter()
                    .any(|m| m != lo && m != hi);
                if !between {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// Sub-algebra on `elems` (which must contain the top and be join-closed),
    /// together with the inclusion map into `self`.
    pub fn restrict(&self, elems: &[usize]) -> Result<(FinAlgebra, Vec<usize>), AlgebraError> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &e) in elems.iter().enumerate() {
            self.check_index(e)?;
            pos[e] = i;
        }
        if pos[self.top] == usize::MAX {
            return Err(AlgebraError::NotSubalgebra);
        }
        let m = elems.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in elems {
            for &y in elems {
                let j = pos[self.join(x, y)];
                if j == usize::MAX {
                    return Err(AlgebraError::NotSubalgebra);
                }
                table.push(j);
            }
        }
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        Ok((FinAlgebra::new(table, pos[self.top], Some(labels))?, elems.to_vec()))
    }

    /// Whether `set` is upward closed.
    pub fn is_up_closed(&self, set: &[usize]) -> bool {
        let mut mem = vec![false; self.n];
        set.iter().for_each(|&x| mem[x] = true);
        set.iter().all(|&x| self.up_set(x).iter().all(|y| mem[y]))
    }

    /// Semilattice laws followed by the three implication identities.
    pub fn check_implication_axioms(&self) -> CheckReport {
        let mut c = Checker::new("implication-axioms", &self.labels);
        c.law::<1, _>("join-idempotent", |[x]| self.join(x, x) == x)
            .law::<2, _>("join-commutative", |[x, y]| self.join(x, y) == self.join(y, x))
            .law::<3, _>("join-associative", |[x, y, z]| {
                self.join(self.join(x, y), z) == self.join(x, self.join(y, z))
            })
            .law::<1, _>("top-absorbing", |[x]| self.join(x, self.top) == self.top);
        if c.is_failed() {
            return c.finish();
        }
        if let Err(AlgebraError::NotImplication { x, y }) = self.imp_table() {
            c.fail("relative-complement", &[x, y], None);
            return c.finish();
        }
        let t = self.imp_table().expect("checked above");
        let n = self.n;
        let imp = |x: usize, y: usize| t[x * n + y] as usize;
        c.law::<2, _>("contraction", |[x, y]| imp(imp(x, y), x) == x)
            .law::<2, _>("quasi-commutativity", |[x, y]| imp(imp(x, y), y) == imp(imp(y, x), x))
            .law::<3, _>("exchange", |[x, y, z]| imp(x, imp(y, z)) == imp(y, imp(x, z)));
        c.finish()
    }

    /// Product algebra, element `(i, j)` at index `i * |other| + j`.
    pub fn product(&self, other: &FinAlgebra) -> FinAlgebra {
        let m = other.len();
        let labels = (0..self.n * m)
            .map(|k| format!("({},{})", self.labels[k / m], other.labels[k % m]))
            .collect();
        FinAlgebra::from_fn(self.n * m, self.top * m + other.top, Some(labels), |p, q| {
            self.join(p / m, q / m) * m + other.join(p % m, q % m)
        })
        .expect("product of valid tables")
    }
}

/// Checks that `f: A -> B` preserves join, implication and top.
pub fn check_morphism(f: &[usize], a: &FinAlgebra, b: &FinAlgebra) -> CheckReport {
    let mut c = Checker::new("morphism", a.labels());
    if f.len() != a.len() || f.iter().any(|&v| v >= b.len()) {
        c.fail("total-map", &[], Some(format!("map of length {} into {} elements", f.len(), b.len())));
        return c.finish();
    }
    if a.imp_table().is_err() || b.imp_table().is_err() {
        c.fail("implication-algebras", &[], Some("domain or codomain is not an implication algebra".into()));
        return c.finish();
    }
    c.check("top", &[a.top()], f[a.top()] == b.top())
        .law::<2, _>("join", |[x, y]| f[a.join(x, y)] == b.join(f[x], f[y]))
        .law::<2, _>("implication", |[x, y]| f[a.arrow(x, y)] == b.arrow(f[x], f[y]));
    c.finish()
}
