//! Boolean realizers: an ordered family of linear orders plus a truth
//! function that answers comparability from the per-pair bit string alone,
//! exhaustive verification, the AND-realizer embedding of ordinary
//! realizers, the same-color and color-pair coding families with their
//! decoders, and binary separating families.
//!
//! Truth functions are stored as decision procedures with their construction
//! metadata (decode tables, family offsets) rather than as `2^s` tables; the
//! block construction reaches `s = 17 + d + 18*2^d`, far past table range.
//! [`verify`] checks bit-only dependence directly by reporting collisions.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::oracles::Realizer;
use crate::poset::{Element, LinearOrder, Poset};
use crate::Result;

pub(crate) fn ceil_log2(t: usize) -> usize {
    if t <= 1 {
        0
    } else {
        (t - 1).ilog2() as usize + 1
    }
}

/// Truth function of a Boolean realizer: a pure map from `s`-bit strings to
/// a bit, represented as a decision procedure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TruthFn {
    /// 1 exactly on the all-ones string; the AND-realizer truth.
    AllOnes { arity: usize },
    /// Explicit table over all `2^arity` strings, least-significant bit
    /// first.
    Table { arity: usize, table: Vec<bool> },
    /// Evaluates the inner function on a prefix, ignoring padding orders.
    Padded { arity: usize, inner: Box<TruthFn> },
    /// Component-composition procedure.
    Component(ComponentTruth),
    /// Block-composition procedure.
    Block(BlockTruth),
    /// Output flipped on one specific bit string; used by mutation tests.
    FlippedAt {
        bits: Vec<bool>,
        inner: Box<TruthFn>,
    },
}

impl TruthFn {
    pub fn arity(&self) -> usize {
        match self {
            TruthFn::AllOnes { arity } | TruthFn::Table { arity, .. } => *arity,
            TruthFn::Padded { arity, .. } => *arity,
            TruthFn::Component(c) => c.arity(),
            TruthFn::Block(b) => b.arity(),
            TruthFn::FlippedAt { inner, .. } => inner.arity(),
        }
    }

    pub fn eval(&self, bits: &[bool]) -> bool {
        debug_assert_eq!(bits.len(), self.arity());
        match self {
            TruthFn::AllOnes { .. } => bits.iter().all(|&b| b),
            TruthFn::Table { table, .. } => table[table_index(bits)],
            TruthFn::Padded { inner, .. } => inner.eval(&bits[..inner.arity()]),
            TruthFn::Component(c) => c.eval(bits),
            TruthFn::Block(b) => b.eval(bits),
            TruthFn::FlippedAt { bits: at, inner } => {
                let v = inner.eval(bits);
                if bits == at.as_slice() {
                    !v
                } else {
                    v
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TruthFn::AllOnes { .. } => "all_ones",
            TruthFn::Table { .. } => "table",
            TruthFn::Padded { .. } => "padded",
            TruthFn::Component(_) => "component",
            TruthFn::Block(_) => "block",
            TruthFn::FlippedAt { .. } => "flipped_at",
        }
    }
}

/// Little-endian index of a bit string into a truth table.
pub(crate) fn table_index(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .fold(0usize, |acc, (i, &b)| acc | (usize::from(b) << i))
}

/// Decision procedure of the component construction. Bit layout:
/// 2 same-component bits, `4r` color-pair bits, `d` inner-realizer bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentTruth {
    pub d: usize,
    pub r: usize,
    pub n_classes: usize,
    /// Truth table (length `2^d`) of every distinct inner truth function.
    pub tables: Vec<Vec<bool>>,
}

impl ComponentTruth {
    pub fn arity(&self) -> usize {
        2 + 4 * self.r + self.d
    }

    fn eval(&self, bits: &[bool]) -> bool {
        if !same_color_bits(bits[0], bits[1]) {
            return false; // different components are incomparable
        }
        let f2 = &bits[2..2 + 4 * self.r];
        let Some((cx, cy)) = color_pair_decode(self.r, self.n_classes, f2) else {
            return false;
        };
        if cx != cy {
            return false;
        }
        let f3 = &bits[2 + 4 * self.r..];
        self.tables[cx][table_index(f3)]
    }
}

/// Named offsets of the families inside a flat order list, for reports and
/// the realizer interchange format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRange {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyLayout {
    pub families: Vec<FamilyRange>,
}

/// Decision procedure of the block construction; see `blocks` for the
/// family-by-family assembly. All offsets index the flat order list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockTruth {
    /// Start of the optional 2-bit same-component detector.
    pub detector: Option<usize>,
    pub f1: usize,
    pub f2: usize,
    pub f3: usize,
    pub f4: usize,
    pub f5: usize,
    pub f6: usize,
    pub f7: usize,
    pub f8: usize,
    pub f9: usize,
    pub f10: usize,
    pub f11: usize,
    pub d: usize,
    pub r: usize,
    pub n_classes: usize,
    /// Number of separating sets; F10 holds `3 * m` orders.
    pub m: usize,
    /// Truth table (length `2^d`) per distinct block truth function.
    pub tables: Vec<Vec<bool>>,
    /// `sep_member[class][j]`: does separating set `j` contain the class?
    pub sep_member: Vec<Vec<bool>>,
}

impl BlockTruth {
    pub fn arity(&self) -> usize {
        self.f11 + 4
    }

    pub fn layout(&self) -> FamilyLayout {
        let mut families = Vec::new();
        if let Some(det) = self.detector {
            families.push(FamilyRange {
                name: "component_detector".into(),
                start: det,
                len: 2,
            });
        }
        let entries = [
            ("F1", self.f1, 2),
            ("F2", self.f2, 4 * self.r),
            ("F3", self.f3, self.d),
            ("F4", self.f4, 3),
            ("F5", self.f5, 2),
            ("F6", self.f6, 2),
            ("F7", self.f7, 4),
            ("F8", self.f8, 4 * self.r),
            ("F9", self.f9, 4 * self.r),
            ("F10", self.f10, 3 * self.m),
            ("F11", self.f11, 4),
        ];
        for (name, start, len) in entries {
            families.push(FamilyRange {
                name: name.into(),
                start,
                len,
            });
        }
        FamilyLayout { families }
    }

    fn eval(&self, bits: &[bool]) -> bool {
        if let Some(det) = self.detector {
            if !same_color_bits(bits[det], bits[det + 1]) {
                return false;
            }
        }
        let f2 = &bits[self.f2..self.f2 + 4 * self.r];
        let f3idx = table_index(&bits[self.f3..self.f3 + self.d]);
        if same_color_bits(bits[self.f1], bits[self.f1 + 1]) {
            // Same Z-part: decode the part's truth table, apply to F3 bits.
            let Some((cx, cy)) = color_pair_decode(self.r, self.n_classes, f2) else {
                return false;
            };
            if cx != cy {
                return false;
            }
            return self.tables[cx][f3idx];
        }
        let q4 = &bits[self.f4..self.f4 + 3];
        if q4.iter().all(|&b| b) {
            return true; // comparable already in Q
        }
        if q4.iter().all(|&b| !b) {
            return false;
        }
        match (bits[self.f5], bits[self.f5 + 1]) {
            (true, true) => {
                // x below y: dead unless the reversing extension M says so.
                if !bits[self.f6] {
                    return false;
                }
                let Some((cx, _)) = color_pair_decode(self.r, self.n_classes, f2) else {
                    return false;
                };
                self.tables[cx][f3idx]
            }
            (false, false) => {
                if !bits[self.f6 + 1] {
                    return false;
                }
                let Some((_, cy)) = color_pair_decode(self.r, self.n_classes, f2) else {
                    return false;
                };
                self.tables[cy][f3idx]
            }
            (true, false) => {
                // x left of y, gated by the four reversers in F7.
                if !bits[self.f7..self.f7 + 4].iter().all(|&b| b) {
                    return false;
                }
                let f8 = &bits[self.f8..self.f8 + 4 * self.r];
                let f9 = &bits[self.f9..self.f9 + 4 * self.r];
                let Some((alpha, _)) = color_pair_decode(self.r, self.n_classes, f8) else {
                    return false;
                };
                let Some((_, beta)) = color_pair_decode(self.r, self.n_classes, f9) else {
                    return false;
                };
                self.left_endgame(alpha, beta, bits, f3idx)
            }
            (false, true) => {
                // y left of x: mirrored roles, alpha from the climb-down
                // class of y, beta from the climb-up class of x.
                if !bits[self.f11..self.f11 + 4].iter().all(|&b| b) {
                    return false;
                }
                let f8 = &bits[self.f8..self.f8 + 4 * self.r];
                let f9 = &bits[self.f9..self.f9 + 4 * self.r];
                let Some((_, alpha)) = color_pair_decode(self.r, self.n_classes, f9) else {
                    return false;
                };
                let Some((beta, _)) = color_pair_decode(self.r, self.n_classes, f8) else {
                    return false;
                };
                self.left_endgame(alpha, beta, bits, f3idx)
            }
        }
    }

    /// Shared endgame of both left cases: identify the block's truth table
    /// among the candidates `alpha`, `beta` via the separating family.
    fn left_endgame(&self, alpha: usize, beta: usize, bits: &[bool], f3idx: usize) -> bool {
        if alpha == beta {
            return self.tables[alpha][f3idx];
        }
        let j1 = (0..self.m).find(|&j| self.sep_member[alpha][j] && !self.sep_member[beta][j]);
        let j2 = (0..self.m).find(|&j| self.sep_member[beta][j] && !self.sep_member[alpha][j]);
        let (Some(j1), Some(j2)) = (j1, j2) else {
            return false;
        };
        let incomparable_in = |j: usize| {
            let t = &bits[self.f10 + 3 * j..self.f10 + 3 * j + 3];
            !(t.iter().all(|&b| b) || t.iter().all(|&b| !b))
        };
        // Incomparable in exactly one switch poset singles out the block's
        // own table: the poset whose set omits its class keeps the pair
        // apart.
        match (incomparable_in(j1), incomparable_in(j2)) {
            (true, true) => false,
            (false, true) => self.tables[alpha][f3idx],
            (true, false) => self.tables[beta][f3idx],
            (false, false) => false,
        }
    }
}

/// A family of linear orders plus a truth function over its bit strings.
#[derive(Clone, Debug)]
pub struct BooleanRealizer {
    pub orders: Vec<LinearOrder>,
    pub truth: TruthFn,
}

impl BooleanRealizer {
    pub fn new(orders: Vec<LinearOrder>, truth: TruthFn) -> Self {
        assert_eq!(orders.len(), truth.arity(), "arity must match order count");
        assert!(!orders.is_empty());
        BooleanRealizer { orders, truth }
    }

    pub fn size(&self) -> usize {
        self.orders.len()
    }

    /// Common support of the orders (they must agree as sets).
    pub fn support(&self) -> Vec<Element> {
        let mut s = self.orders[0].elements().to_vec();
        s.sort_unstable();
        s
    }
}

/// The bit string `q(x, y, B)`: bit `i` is 1 iff `x` is before `y` in the
/// i-th order.
pub fn query_bits(r: &BooleanRealizer, x: Element, y: Element) -> Result<Vec<bool>> {
    r.orders.iter().map(|l| l.before(x, y)).collect()
}

/// One wrong answer of a verified realizer.
#[derive(Clone, Debug, Serialize)]
pub struct PairMismatch {
    pub x: Element,
    pub y: Element,
    pub in_poset: bool,
    pub answered: bool,
}

/// Two pairs sharing a bit string but disagreeing on comparability; no
/// bit-only truth function can serve both.
#[derive(Clone, Debug, Serialize)]
pub struct BitCollision {
    pub first: (Element, Element),
    pub second: (Element, Element),
    pub bits: Vec<bool>,
}

/// Outcome of replaying a realizer against the poset over every ordered
/// pair of its support.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub mismatches: Vec<PairMismatch>,
    pub collisions: Vec<BitCollision>,
    pub pairs_checked: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.collisions.is_empty()
    }
}

fn pack_bits(bits: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; bits.len().div_ceil(64)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

/// Replays the realizer on every ordered pair of its support: records every
/// disagreement with the poset and every bit-string collision. An empty
/// report means the realizer is valid with a truth function depending on
/// bits alone.
pub fn verify(p: &Poset, r: &BooleanRealizer) -> VerificationReport {
    let support = r.support();
    for l in &r.orders {
        let mut s = l.elements().to_vec();
        s.sort_unstable();
        assert_eq!(s, support, "orders must share one ground set");
    }
    let top = support.iter().max().map_or(0, |&m| m + 1);
    let positions: Vec<Vec<u32>> = r
        .orders
        .iter()
        .map(|l| {
            let mut pos = vec![0u32; top];
            for (i, &e) in l.elements().iter().enumerate() {
                pos[e] = i as u32;
            }
            pos
        })
        .collect();

    let mut report = VerificationReport::default();
    let mut classes: HashMap<Vec<u64>, (bool, (Element, Element))> = HashMap::new();
    let mut bits = vec![false; r.size()];
    for &x in &support {
        for &y in &support {
            if x == y {
                continue;
            }
            for (i, pos) in positions.iter().enumerate() {
                bits[i] = pos[x] < pos[y];
            }
            let want = p.lt(x, y);
            let got = r.truth.eval(&bits);
            if got != want {
                report.mismatches.push(PairMismatch {
                    x,
                    y,
                    in_poset: want,
                    answered: got,
                });
            }
            match classes.entry(pack_bits(&bits)) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    let &(w, first) = e.get();
                    if w != want {
                        report.collisions.push(BitCollision {
                            first,
                            second: (x, y),
                            bits: bits.clone(),
                        });
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert((want, (x, y)));
                }
            }
            report.pairs_checked += 1;
        }
    }
    report
}

/// Embeds an ordinary realizer: the truth function maps the all-ones string
/// to 1 and everything else to 0. Witnesses `bdim(P) <= dim(P)`.
pub fn and_realizer(r: &Realizer) -> BooleanRealizer {
    BooleanRealizer::new(
        r.extensions().to_vec(),
        TruthFn::AllOnes { arity: r.size() },
    )
}

/// Decodes the 2-bit answer of a [`SameColorFamily`]: mixed bits mean the two
/// elements share a color, equal bits mean they differ.
pub fn same_color_bits(b1: bool, b2: bool) -> bool {
    b1 != b2
}

/// Two orders deciding same-color-or-not for any coloring: classes laid out
/// ascending in the first order and ascending with reversed insides in the
/// second.
#[derive(Clone, Debug)]
pub struct SameColorFamily {
    pub orders: [LinearOrder; 2],
}

impl SameColorFamily {
    pub fn query(&self, x: Element, y: Element) -> Result<(bool, bool)> {
        Ok((self.orders[0].before(x, y)?, self.orders[1].before(x, y)?))
    }

    pub fn same_color(&self, x: Element, y: Element) -> Result<bool> {
        let (b1, b2) = self.query(x, y)?;
        Ok(same_color_bits(b1, b2))
    }
}

/// Builds the size-2 same-color family for `colors` (one color per element).
pub fn same_color_family(n: usize, colors: &[usize]) -> SameColorFamily {
    assert_eq!(colors.len(), n);
    let mut classes: std::collections::BTreeMap<usize, Vec<Element>> = Default::default();
    for (e, &c) in colors.iter().enumerate() {
        classes.entry(c).or_default().push(e);
    }
    let mut n1 = Vec::with_capacity(n);
    let mut n2 = Vec::with_capacity(n);
    for class in classes.values() {
        n1.extend(class.iter().copied());
        n2.extend(class.iter().rev().copied());
    }
    SameColorFamily {
        orders: [LinearOrder::new(n1), LinearOrder::new(n2)],
    }
}

/// Decodes the `4r` bits of a [`ColorPairFamily`] into the two class indices,
/// or `None` on patterns no real pair can produce.
pub fn color_pair_decode(r: usize, palette: usize, bits: &[bool]) -> Option<(usize, usize)> {
    debug_assert_eq!(bits.len(), 4 * r);
    let mut cx = 0usize;
    let mut cy = 0usize;
    for j in 0..r {
        let b = &bits[4 * j..4 * j + 4];
        let (in_x, in_y) = match (b[0], b[1], b[2], b[3]) {
            (true, false, true, false) | (false, true, false, true) => (true, true),
            (true, true, false, false) => (true, false),
            (false, false, true, true) => (false, true),
            (true, true, true, true) | (false, false, false, false) => (false, false),
            _ => return None,
        };
        if in_x {
            cx |= 1 << j;
        }
        if in_y {
            cy |= 1 << j;
        }
    }
    (cx < palette && cy < palette).then_some((cx, cy))
}

/// `4 * ceil(log2 t)` orders recovering the ordered color pair of any query
/// from its bits alone.
#[derive(Clone, Debug)]
pub struct ColorPairFamily {
    pub orders: Vec<LinearOrder>,
    pub r: usize,
    /// Distinct colors in first-appearance order; class `k` encodes
    /// `palette[k]`.
    pub palette: Vec<usize>,
}

impl ColorPairFamily {
    pub fn size(&self) -> usize {
        self.orders.len()
    }

    pub fn query(&self, x: Element, y: Element) -> Result<Vec<bool>> {
        self.orders.iter().map(|l| l.before(x, y)).collect()
    }

    /// Recovers `(color(x), color(y))` from query bits.
    pub fn decode(&self, bits: &[bool]) -> Option<(usize, usize)> {
        color_pair_decode(self.r, self.palette.len(), bits)
            .map(|(cx, cy)| (self.palette[cx], self.palette[cy]))
    }
}

/// Builds the color-pair family for an arbitrary coloring; colors become
/// subsets of `[r]` by first-appearance indexing, making decode tables
/// reproducible.
pub fn color_pair_family(n: usize, colors: &[usize]) -> ColorPairFamily {
    assert_eq!(colors.len(), n);
    let mut palette = Vec::new();
    let mut class_of = Vec::with_capacity(n);
    for &c in colors {
        let k = match palette.iter().position(|&p| p == c) {
            Some(k) => k,
            None => {
                palette.push(c);
                palette.len() - 1
            }
        };
        class_of.push(k);
    }
    let t = palette.len();
    let orders = color_pair_orders(n, &class_of, t);
    ColorPairFamily {
        orders,
        r: ceil_log2(t),
        palette,
    }
}

/// As [`color_pair_family`] but over a fixed palette `0..palette_size` of class
/// indices, so that several families share one class numbering.
pub(crate) fn color_pair_orders(
    n: usize,
    class_of: &[usize],
    palette_size: usize,
) -> Vec<LinearOrder> {
    let r = ceil_log2(palette_size);
    // Base order: ascending element index.
    let mut orders = Vec::with_capacity(4 * r);
    for j in 0..r {
        let xj: Vec<Element> = (0..n).filter(|&e| class_of[e] & (1 << j) != 0).collect();
        let rest: Vec<Element> = (0..n).filter(|&e| class_of[e] & (1 << j) == 0).collect();
        let xj_rev: Vec<Element> = xj.iter().rev().copied().collect();
        let mut m1 = xj.clone();
        m1.extend(&rest);
        let mut m2 = xj_rev.clone();
        m2.extend(&rest);
        let mut m3 = rest.clone();
        m3.extend(&xj);
        let mut m4 = rest.clone();
        m4.extend(&xj_rev);
        for m in [m1, m2, m3, m4] {
            orders.push(LinearOrder::new(m));
        }
    }
    orders
}

/// Subsets of `{0, .., universe-1}` such that every ordered pair `(a, b)` of
/// distinct members has a set containing `a` but not `b`: binary-code sets
/// plus their complements, `2 * ceil(log2 |A|)` in total.
#[derive(Clone, Debug)]
pub struct SeparatingFamily {
    pub universe: usize,
    pub sets: Vec<Vec<bool>>,
}

impl SeparatingFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: usize, elem: usize) -> bool {
        self.sets[set][elem]
    }

    /// Index of a set containing `a` but not `b`.
    pub fn separator(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.sets.len()).find(|&j| self.sets[j][a] && !self.sets[j][b])
    }
}

pub fn separating_family(universe: usize) -> SeparatingFamily {
    let r = ceil_log2(universe);
    let mut sets = Vec::with_capacity(2 * r);
    for j in 0..r {
        sets.push((0..universe).map(|e| e & (1 << j) != 0).collect());
    }
    for j in 0..r {
        sets.push((0..universe).map(|e| e & (1 << j) == 0).collect());
    }
    SeparatingFamily { universe, sets }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracles::minimum_realizer;

    #[test]
    fn single_order_bits() {
        let b = BooleanRealizer::new(
            vec![LinearOrder::new(vec![4, 7])],
            TruthFn::AllOnes { arity: 1 },
        );
        assert_eq!(query_bits(&b, 4, 7).unwrap(), vec![true]);
        assert_eq!(query_bits(&b, 7, 4).unwrap(), vec![false]);
        assert!(query_bits(&b, 4, 5).is_err());
    }

    #[test]
    fn order_and_dual_always_disagree() {
        let l = LinearOrder::new(vec![0, 1, 2]);
        let b = BooleanRealizer::new(vec![l.clone(), l.reversed()], TruthFn::AllOnes { arity: 2 });
        for x in 0..3 {
            for y in 0..3 {
                if x != y {
                    let bits = query_bits(&b, x, y).unwrap();
                    assert_ne!(bits[0], bits[1]);
                }
            }
        }
    }

    #[test]
    fn bits_of_swapped_pair_complement() {
        use rand::Rng;
        let mut rng = gen::rng(7);
        for _ in 0..50 {
            let n = rng.random_range(2..7usize);
            let p = gen::random_poset(n, 0.4, &mut rng);
            let r = and_realizer(&minimum_realizer(&p, 6).unwrap());
            for x in 0..n {
                for y in 0..n {
                    if x != y {
                        let a = query_bits(&r, x, y).unwrap();
                        let b = query_bits(&r, y, x).unwrap();
                        assert!(a.iter().zip(&b).all(|(u, v)| u != v));
                    }
                }
            }
        }
    }

    #[test]
    fn and_realizer_of_chain_is_single_identity_bit() {
        let p = Poset::chain(4);
        let r = and_realizer(&minimum_realizer(&p, 4).unwrap());
        assert_eq!(r.size(), 1);
        assert!(verify(&p, &r).passed());
    }

    #[test]
    fn and_realizer_of_standard_example() {
        let p = Poset::standard_example(3);
        let r = and_realizer(&minimum_realizer(&p, 4).unwrap());
        assert_eq!(r.size(), 3);
        let rep = verify(&p, &r);
        assert!(rep.passed());
        assert_eq!(rep.pairs_checked, 30);
    }

    #[test]
    fn bdim_at_most_dim_witnessed_on_random_posets() {
        use rand::Rng;
        let mut rng = gen::rng(13);
        for _ in 0..100 {
            let n = rng.random_range(1..=7usize);
            let p = gen::random_poset(n, 0.35, &mut rng);
            let r = and_realizer(&minimum_realizer(&p, 7).unwrap());
            assert!(verify(&p, &r).passed());
        }
    }

    #[test]
    fn corrupted_truth_is_reported_with_the_pair() {
        let p = Poset::chain(3);
        let good = and_realizer(&minimum_realizer(&p, 3).unwrap());
        let bits = query_bits(&good, 0, 2).unwrap();
        let bad = BooleanRealizer::new(
            good.orders.clone(),
            TruthFn::FlippedAt {
                bits,
                inner: Box::new(good.truth.clone()),
            },
        );
        let rep = verify(&p, &bad);
        assert!(!rep.passed());
        assert!(rep.mismatches.iter().any(|m| (m.x, m.y) == (0, 2)));
    }

    #[test]
    fn collisions_are_flagged() {
        // One order [1, 0, 2] on the chain 0 < 1 < 2: pairs (1, 0) and
        // (0, 2) share the bit string "1" but disagree on comparability.
        let p = Poset::chain(3);
        let b = BooleanRealizer::new(
            vec![LinearOrder::new(vec![1, 0, 2])],
            TruthFn::AllOnes { arity: 1 },
        );
        let rep = verify(&p, &b);
        assert!(!rep.collisions.is_empty());
    }

    #[test]
    fn accepted_realizers_never_answer_one_both_ways() {
        use rand::Rng;
        let mut rng = gen::rng(19);
        for _ in 0..30 {
            let n = rng.random_range(2..=6usize);
            let p = gen::random_poset(n, 0.4, &mut rng);
            let r = and_realizer(&minimum_realizer(&p, 6).unwrap());
            assert!(verify(&p, &r).passed());
            for x in 0..n {
                for y in 0..n {
                    if x != y {
                        let fwd = r.truth.eval(&query_bits(&r, x, y).unwrap());
                        let bwd = r.truth.eval(&query_bits(&r, y, x).unwrap());
                        assert!(!(fwd && bwd));
                    }
                }
            }
        }
    }

    #[test]
    fn same_color_family_with_one_color_always_says_same() {
        let fam = same_color_family(5, &[3; 5]);
        for x in 0..5 {
            for y in 0..5 {
                if x != y {
                    assert!(fam.same_color(x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn same_color_family_exhaustive_against_coloring() {
        use rand::Rng;
        let mut rng = gen::rng(29);
        for _ in 0..50 {
            let n = rng.random_range(1..=50usize);
            let t = rng.random_range(1..=8usize);
            let colors: Vec<usize> = (0..n).map(|_| rng.random_range(0..t)).collect();
            let fam = same_color_family(n, &colors);
            assert_eq!(fam.orders.len(), 2);
            for x in 0..n {
                for y in 0..n {
                    if x != y {
                        // Equal bits (00 or 11) decode as different colors.
                        assert_eq!(fam.same_color(x, y).unwrap(), colors[x] == colors[y]);
                    }
                }
            }
        }
    }

    #[test]
    fn color_pair_bit_patterns_match_the_table() {
        // Colors 0 and 1 over four elements; r = 1, one block of 4 orders.
        let colors = vec![0, 0, 1, 1];
        let fam = color_pair_family(4, &colors);
        assert_eq!(fam.size(), 4);
        // Class of color 1 is index 1, so j=0 lies in color-1 elements.
        let b = fam.query(2, 0).unwrap(); // x in X_j, y outside
        assert_eq!(b, vec![true, true, false, false]);
        let b = fam.query(0, 2).unwrap(); // x outside, y in X_j
        assert_eq!(b, vec![false, false, true, true]);
        let b = fam.query(0, 1).unwrap(); // neither in X_j
        assert!(b == vec![true, true, true, true] || b == vec![false, false, false, false]);
        let b = fam.query(2, 3).unwrap(); // both in X_j
        assert!(b == vec![true, false, true, false] || b == vec![false, true, false, true]);
    }

    #[test]
    fn color_pair_roundtrip_decodes_color_pairs() {
        use rand::Rng;
        let mut rng = gen::rng(47);
        for _ in 0..40 {
            let n = rng.random_range(2..=40usize);
            let t = rng.random_range(1..=1024usize);
            let colors: Vec<usize> = (0..n).map(|_| rng.random_range(0..t)).collect();
            let fam = color_pair_family(n, &colors);
            let distinct: std::collections::HashSet<_> = colors.iter().collect();
            assert_eq!(fam.size(), 4 * ceil_log2(distinct.len()));
            for x in 0..n {
                for y in 0..n {
                    if x != y {
                        let bits = fam.query(x, y).unwrap();
                        assert_eq!(fam.decode(&bits), Some((colors[x], colors[y])));
                    }
                }
            }
        }
    }

    #[test]
    fn separating_family_sizes_and_property() {
        assert_eq!(separating_family(1).len(), 0);
        let two = separating_family(2);
        assert_eq!(two.len(), 2);
        for a in 0..=64usize {
            if a == 0 {
                continue;
            }
            let fam = separating_family(a);
            assert_eq!(fam.len(), 2 * ceil_log2(a));
            for x in 0..a {
                for y in 0..a {
                    if x != y {
                        let j = fam.separator(x, y).expect("separator exists");
                        assert!(fam.contains(j, x) && !fam.contains(j, y));
                    }
                }
            }
        }
    }

    #[test]
    fn padding_preserves_verification() {
        let p = Poset::standard_example(2);
        let r = and_realizer(&minimum_realizer(&p, 4).unwrap());
        let mut orders = r.orders.clone();
        orders.push(orders.last().unwrap().clone());
        let padded = BooleanRealizer::new(
            orders,
            TruthFn::Padded {
                arity: r.size() + 1,
                inner: Box::new(r.truth.clone()),
            },
        );
        assert!(verify(&p, &padded).passed());
    }

    #[test]
    fn truth_fn_serde_roundtrip() {
        let t = TruthFn::Padded {
            arity: 3,
            inner: Box::new(TruthFn::AllOnes { arity: 2 }),
        };
        let json = serde_json::to_string(&t).unwrap();
        let back: TruthFn = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
