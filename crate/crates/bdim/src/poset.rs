//! Core order-theoretic values: posets, linear orders and partial linear
//! extensions, duals, restriction, concatenation and the merge rule.
//!
//! A [`Poset`] stores its strict order as a dense `n x n` predicate; ground
//! sets stay desk-scale and all-pairs verification dominates, so the matrix
//! is the right trade. Elements are plain indices in `[0, n)`; external names
//! map through a symbol table at the CLI layer only.

use std::collections::HashMap;

use crate::{Error, Result};

/// Index into the ground set of a [`Poset`].
pub type Element = usize;

/// A finite poset `(X, <)` with `X = {0, .., n-1}` and an irreflexive,
/// antisymmetric, transitive strict order.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    lt: Vec<bool>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, <={:?})", self.n, self.strict_pairs())
    }
}

impl Poset {
    /// Builds the poset generated by `rel`: the transitive closure of the
    /// given ordered pairs. Fails with [`Error::Cycle`] if the closure would
    /// force `x < x`, i.e. the input is not acyclic.
    ///
    /// All pair entries must be valid indices below `n`.
    pub fn from_relations(n: usize, rel: &[(Element, Element)]) -> Result<Self> {
        assert!(n >= 1, "ground set must be nonempty");
        let mut lt = vec![false; n * n];
        for &(a, b) in rel {
            assert!(
                a < n && b < n,
                "relation ({a}, {b}) out of range for n = {n}"
            );
            lt[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if lt[i * n + k] {
                    for j in 0..n {
                        if lt[k * n + j] {
                            lt[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            if lt[x * n + x] {
                return Err(Error::Cycle(x));
            }
        }
        Ok(Poset { n, lt })
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(n.max(1), &rel).expect("chain is acyclic")
    }

    /// The antichain on `n` elements.
    pub fn antichain(n: usize) -> Self {
        Self::from_relations(n.max(1), &[]).expect("empty relation")
    }

    /// The standard example `S_n`: minimal elements `a_1..a_n` (indices
    /// `0..n`), maximal elements `b_1..b_n` (indices `n..2n`), and
    /// `a_i < b_j` exactly when `i != j`. Its dimension is `n`.
    ///
    /// Panics if `n < 2`.
    pub fn standard_example(n: usize) -> Self {
        assert!(n >= 2, "standard example needs n >= 2");
        let mut rel = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    rel.push((i, n + j));
                }
            }
        }
        Self::from_relations(2 * n, &rel).expect("height-2 relation is acyclic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Strict comparability `x < y`.
    pub fn lt(&self, x: Element, y: Element) -> bool {
        self.lt[x * self.n + y]
    }

    /// `x <= y`, i.e. `x == y` or `x < y`.
    pub fn le(&self, x: Element, y: Element) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: Element, y: Element) -> bool {
        self.lt(x, y) || self.lt(y, x)
    }

    pub fn incomparable(&self, x: Element, y: Element) -> bool {
        x != y && !self.comparable(x, y)
    }

    /// All strict pairs `(x, y)` with `x < y`.
    pub fn strict_pairs(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The dual poset: `x <' y` iff `y < x`.
    pub fn dual(&self) -> Self {
        let mut lt = vec![false; self.n * self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                lt[x * self.n + y] = self.lt(y, x);
            }
        }
        Poset { n: self.n, lt }
    }

    /// Cover pairs `(y, x)` where `x` covers `y`: `y < x` with no `z`
    /// strictly between.
    pub fn cover_pairs(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for y in 0..self.n {
            'next: for x in 0..self.n {
                if !self.lt(y, x) {
                    continue;
                }
                for z in 0..self.n {
                    if self.lt(y, z) && self.lt(z, x) {
                        continue 'next;
                    }
                }
                out.push((y, x));
            }
        }
        out
    }

    /// `Inc(P)`: every ordered pair `(x, y)` with `x || y`. Symmetric as a
    /// relation, so both orientations of each incomparable pair appear.
    pub fn incomparable_pairs(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && !self.comparable(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// True iff `l` is a linear extension of the subposet induced by its
    /// support: `x < y` in `P` implies `x` before `y` in `l`.
    pub fn is_linear_extension(&self, l: &LinearOrder) -> bool {
        let elems = l.elements();
        for i in 0..elems.len() {
            for j in 0..i {
                if self.lt(elems[i], elems[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// The subposet induced by `elems`, reindexed so that local element `k`
    /// is `elems[k]`.
    pub fn induced(&self, elems: &[Element]) -> Poset {
        let m = elems.len();
        let mut lt = vec![false; m * m];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                lt[i * m + j] = self.lt(x, y);
            }
        }
        Poset { n: m, lt }
    }

    /// Exhaustively checks irreflexivity, antisymmetry and transitivity.
    pub fn check_valid(&self) -> Result<()> {
        for x in 0..self.n {
            if self.lt(x, x) {
                return Err(Error::Cycle(x));
            }
            for y in 0..self.n {
                if self.lt(x, y) && self.lt(y, x) {
                    return Err(Error::Cycle(x));
                }
                for z in 0..self.n {
                    if self.lt(x, y) && self.lt(y, z) && !self.lt(x, z) {
                        return Err(Error::BadInput(format!(
                            "transitivity fails on {x} < {y} < {z}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Disjoint union; part `i` is shifted by the sum of the earlier sizes.
    pub fn disjoint_union(parts: &[Poset]) -> Poset {
        let n: usize = parts.iter().map(|p| p.n).sum();
        let mut rel = Vec::new();
        let mut off = 0;
        for p in parts {
            for (a, b) in p.strict_pairs() {
                rel.push((a + off, b + off));
            }
            off += p.n;
        }
        Poset::from_relations(n.max(1), &rel).expect("union of strict orders")
    }
}

/// A duplicate-free sequence over a subset of the ground set. Position lookup
/// is total on the support and undefined off it.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearOrder {
    elems: Vec<Element>,
    pos: HashMap<Element, usize>,
}

impl std::fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearOrder({:?})", self.elems)
    }
}

impl LinearOrder {
    /// Wraps a sequence; panics on duplicates (construction sites own
    /// uniqueness).
    pub fn new(elems: Vec<Element>) -> Self {
        let mut pos = HashMap::with_capacity(elems.len());
        for (i, &e) in elems.iter().enumerate() {
            let old = pos.insert(e, i);
            assert!(old.is_none(), "duplicate element {e} in linear order");
        }
        LinearOrder { elems, pos }
    }

    /// The identity order `0 < 1 < .. < n-1`.
    pub fn ascending(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements in order.
    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn contains(&self, x: Element) -> bool {
        self.pos.contains_key(&x)
    }

    pub fn position(&self, x: Element) -> Option<usize> {
        self.pos.get(&x).copied()
    }

    /// True iff both elements are in the support and `x` precedes `y`.
    pub fn before(&self, x: Element, y: Element) -> Result<bool> {
        let px = self.position(x).ok_or(Error::Support(x))?;
        let py = self.position(y).ok_or(Error::Support(y))?;
        Ok(px < py)
    }

    /// The dual order (reversed sequence).
    pub fn reversed(&self) -> Self {
        Self::new(self.elems.iter().rev().copied().collect())
    }

    /// `L(Y)`: the subsequence of elements lying in `keep`.
    pub fn restrict(&self, keep: &[Element]) -> Self {
        let set: std::collections::HashSet<Element> = keep.iter().copied().collect();
        Self::new(
            self.elems
                .iter()
                .copied()
                .filter(|e| set.contains(e))
                .collect(),
        )
    }

    /// `[A_1 < A_2 < .. < A_s]`: concatenation of pairwise disjoint orders.
    pub fn concat(parts: &[LinearOrder]) -> Result<Self> {
        let mut elems = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for part in parts {
            for &e in part.elements() {
                if !seen.insert(e) {
                    return Err(Error::Overlap(e));
                }
                elems.push(e);
            }
        }
        Ok(Self::new(elems))
    }

    /// The merge rule: given `self = [A < w < B]` and `other = [C < w < D]`
    /// whose supports intersect exactly in `{w}`, returns `[A < C < w < D < B]`.
    ///
    /// This choice forces the points of `A` and `B` outside while nesting the
    /// points of `C` and `D` inside; the block recursion relies on it.
    pub fn merge_at_cut(&self, other: &LinearOrder, w: Element) -> Result<Self> {
        let pw = self.position(w).ok_or(Error::BadIntersection { w })?;
        let qw = other.position(w).ok_or(Error::BadIntersection { w })?;
        for &e in other.elements() {
            if e != w && self.contains(e) {
                return Err(Error::BadIntersection { w });
            }
        }
        let mut elems = Vec::with_capacity(self.len() + other.len() - 1);
        elems.extend_from_slice(&self.elems[..pw]); // A
        elems.extend_from_slice(&other.elems[..qw]); // C
        elems.push(w);
        elems.extend_from_slice(&other.elems[qw + 1..]); // D
        elems.extend_from_slice(&self.elems[pw + 1..]); // B
        Ok(Self::new(elems))
    }
}
