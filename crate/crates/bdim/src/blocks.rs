//! Composing a Boolean realizer of a poset from Boolean realizers of its
//! blocks.
//!
//! For a connected poset whose blocks all have realizers of size `d`, the
//! composite family consists of eleven subfamilies: a same-Z-part detector
//! (F1), a color-pair family over the distinct block truth tables (F2), the
//! `d` merged block orders (F3), a 3-realizer of the root-digraph poset
//! (F4), the two depth-first orders of the block tree (F5), one reversing
//! extension per below case (F6), four reversers gating each left case (F7
//! and F11), color-pair families over the climb targets (F8, F9), and
//! 3-realizers of the switch posets `Q(S)` for a separating family over the
//! truth tables (F10). Total: `17 + d + 18 * ceil(log2 |T|)`, within the
//! `17 + d + 18 * 2^d` budget. Disconnected posets get two extra orders
//! detecting same-component, every other family being built globally.
//!
//! Every reversibility claim consumed here is checked at construction time;
//! a failure aborts loudly with the offending alternating cycle.

use std::collections::HashMap;

use crate::decomp::{
    self, block_decomposition, block_tree, classify_pair, components, dfs_orders, is_forest,
    BlockDecomposition, BlockTree, PairPosition,
};
use crate::oracles::{forest_realizer3, reverse_set, Realizer};
use crate::poset::{Element, LinearOrder, Poset};
use crate::realizer::{
    ceil_log2, color_pair_orders, same_color_family, separating_family, verify, BlockTruth,
    BooleanRealizer, SeparatingFamily, TruthFn,
};
use crate::{Error, Result};

/// Block structure of a not-necessarily-connected poset: per-component
/// decompositions flattened into one global block list, so that colorings,
/// truth-table classes and the switch posets can be built over the whole
/// ground set at once.
pub struct GeneralDecomposition {
    pub components: Vec<Vec<Element>>,
    pub comp_of: Vec<usize>,
    /// Global block ground sets, component by component, each in its
    /// component's block order.
    pub blocks: Vec<Vec<Element>>,
    pub roots: Vec<Option<Element>>,
    pub zparts: Vec<Vec<Element>>,
    /// Global Z-part index of every element.
    pub z_of: Vec<usize>,
    /// Component owning each block.
    pub comp_of_block: Vec<usize>,
    comp_data: Vec<CompData>,
}

struct CompData {
    elems: Vec<Element>,
    poset: Poset,
    bd: BlockDecomposition,
    tree: BlockTree,
    block_offset: usize,
    local_of: HashMap<Element, usize>,
}

impl GeneralDecomposition {
    pub fn new(p: &Poset) -> Self {
        let comps = components(p);
        let n = p.n();
        let mut comp_of = vec![0usize; n];
        let mut comp_data = Vec::new();
        let mut blocks = Vec::new();
        let mut roots = Vec::new();
        let mut zparts = Vec::new();
        let mut z_of = vec![0usize; n];
        let mut comp_of_block = Vec::new();
        for (ci, elems) in comps.iter().enumerate() {
            for &x in elems {
                comp_of[x] = ci;
            }
            let local = p.induced(elems);
            let bd = block_decomposition(&local).expect("components are connected");
            let tree = block_tree(&bd);
            let offset = blocks.len();
            for i in 0..bd.block_count() {
                blocks.push(bd.blocks[i].iter().map(|&l| elems[l]).collect::<Vec<_>>());
                roots.push(bd.roots[i].map(|l| elems[l]));
                let z: Vec<Element> = bd.zparts[i].iter().map(|&l| elems[l]).collect();
                for &x in &z {
                    z_of[x] = offset + i;
                }
                zparts.push(z);
                comp_of_block.push(ci);
            }
            comp_data.push(CompData {
                local_of: elems.iter().enumerate().map(|(l, &g)| (g, l)).collect(),
                elems: elems.clone(),
                poset: local,
                bd,
                tree,
                block_offset: offset,
            });
        }
        GeneralDecomposition {
            components: comps,
            comp_of,
            blocks,
            roots,
            zparts,
            z_of,
            comp_of_block,
            comp_data,
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    fn same_component(&self, x: Element, y: Element) -> bool {
        self.comp_of[x] == self.comp_of[y]
    }

    /// Block-tree position of a same-component cross-Z pair.
    pub fn classify(&self, x: Element, y: Element) -> Result<PairPosition> {
        assert!(self.same_component(x, y));
        let cd = &self.comp_data[self.comp_of[x]];
        classify_pair(&cd.bd, &cd.tree, cd.local_of[&x], cd.local_of[&y])
    }

    /// Global `(block, u, v)` triple of a same-component cross-Z pair.
    pub fn iuv(&self, x: Element, y: Element) -> Result<(usize, Element, Element)> {
        assert!(self.same_component(x, y));
        let cd = &self.comp_data[self.comp_of[x]];
        let (i, u, v) = decomp::iuv(&cd.poset, &cd.bd, cd.local_of[&x], cd.local_of[&y])?;
        Ok((cd.block_offset + i, cd.elems[u], cd.elems[v]))
    }

    pub fn sigma1(&self, x: Element) -> Element {
        let cd = &self.comp_data[self.comp_of[x]];
        cd.elems[decomp::sigma1(&cd.poset, &cd.bd, cd.local_of[&x])]
    }

    pub fn sigma2(&self, x: Element) -> Element {
        let cd = &self.comp_data[self.comp_of[x]];
        cd.elems[decomp::sigma2(&cd.poset, &cd.bd, cd.local_of[&x])]
    }

    /// Root-digraph cover edges `(lower, upper)` of one global block.
    pub fn root_edges(&self, p: &Poset, b: usize) -> Vec<(Element, Element)> {
        let Some(r) = self.roots[b] else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for &u in &self.zparts[b] {
            if p.lt(u, r) {
                out.push((u, r));
            } else if p.lt(r, u) {
                out.push((r, u));
            }
        }
        out
    }

    /// The global root-digraph poset `Q`.
    pub fn q_poset(&self, p: &Poset) -> Poset {
        let mut covers = Vec::new();
        for b in 0..self.block_count() {
            covers.extend(self.root_edges(p, b));
        }
        debug_assert!(is_forest(p.n(), &covers));
        Poset::from_relations(p.n(), &covers).expect("forest covers are acyclic")
    }

    /// The two depth-first Z-part walks, concatenated over components, with
    /// ascending element order inside every Z-part.
    fn f5_orders(&self) -> [LinearOrder; 2] {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for cd in &self.comp_data {
            let (l, r) = dfs_orders(&cd.tree);
            for &z in &l {
                left.extend(self.zparts[cd.block_offset + z].iter().copied());
            }
            for &z in &r {
                right.extend(self.zparts[cd.block_offset + z].iter().copied());
            }
        }
        [LinearOrder::new(left), LinearOrder::new(right)]
    }
}

/// Validated input of the block constructions: the poset, its global block
/// structure, one verified Boolean realizer per block (padded to a common
/// size `d`), a fixed linear extension of every block, and the distinct
/// truth tables with each block's class.
pub struct BlockInput {
    pub poset: Poset,
    pub decomp: GeneralDecomposition,
    pub realizers: Vec<BooleanRealizer>,
    pub l0: Vec<LinearOrder>,
    pub d: usize,
    /// Class index of each block's truth table in `tables`.
    pub class_of_block: Vec<usize>,
    /// Distinct truth tables over `d`-bit strings.
    pub tables: Vec<Vec<bool>>,
}

impl BlockInput {
    /// `realizers` and `l0` follow the global block order of
    /// [`GeneralDecomposition::new`].
    pub fn new(
        poset: Poset,
        realizers: Vec<BooleanRealizer>,
        l0: Vec<LinearOrder>,
    ) -> Result<Self> {
        let decomp = GeneralDecomposition::new(&poset);
        let t = decomp.block_count();
        if realizers.len() != t || l0.len() != t {
            return Err(Error::BadInput(format!(
                "{} realizers / {} extensions for {} blocks",
                realizers.len(),
                l0.len(),
                t
            )));
        }
        for (b, r) in realizers.iter().enumerate() {
            if r.support() != decomp.blocks[b] {
                return Err(Error::BadInput(format!(
                    "realizer {b} support does not match its block"
                )));
            }
            let rep = verify(&poset, r);
            if !rep.passed() {
                return Err(Error::BadInput(format!(
                    "block realizer {b} fails verification ({} mismatches, {} collisions)",
                    rep.mismatches.len(),
                    rep.collisions.len()
                )));
            }
        }
        for (b, l) in l0.iter().enumerate() {
            let mut sup = l.elements().to_vec();
            sup.sort_unstable();
            if sup != decomp.blocks[b] || !poset.is_linear_extension(l) {
                return Err(Error::BadInput(format!(
                    "l0[{b}] is not a linear extension of its block"
                )));
            }
        }
        let realizers = crate::components::pad_realizers(realizers);
        let d = realizers[0].size();
        let mut tables: Vec<Vec<bool>> = Vec::new();
        let mut class_of_block = Vec::with_capacity(t);
        for r in &realizers {
            let fp = crate::components::truth_fingerprint(&r.truth, d);
            let class = match tables.iter().position(|e| *e == fp) {
                Some(k) => k,
                None => {
                    tables.push(fp);
                    tables.len() - 1
                }
            };
            class_of_block.push(class);
        }
        Ok(BlockInput {
            poset,
            decomp,
            realizers,
            l0,
            d,
            class_of_block,
            tables,
        })
    }

    /// Builds the input with per-block AND-realizers of minimum ordinary
    /// realizers (searched up to dimension `d_max`) and lexicographically
    /// minimal block extensions.
    pub fn auto(poset: Poset, d_max: usize) -> Result<Self> {
        let decomp = GeneralDecomposition::new(&poset);
        let mut realizers = Vec::new();
        let mut l0 = Vec::new();
        for b in &decomp.blocks {
            realizers.push(crate::components::subposet_and_realizer(&poset, b, d_max)?);
            let local = poset.induced(b);
            let ext = crate::oracles::min_linear_extension(&local);
            l0.push(LinearOrder::new(
                ext.elements().iter().map(|&l| b[l]).collect(),
            ));
        }
        Self::new(poset, realizers, l0)
    }
}

/// F3: for every coordinate `j`, folds the block orders together through the
/// merge rule at each block's root, in block-label order per component,
/// components concatenated ascending. The restriction of the result to any
/// block ground set is that block's own order.
pub fn build_f3(input: &BlockInput) -> Result<Vec<LinearOrder>> {
    let gd = &input.decomp;
    let mut out = Vec::with_capacity(input.d);
    for j in 0..input.d {
        let mut per_comp = Vec::new();
        for cd in &gd.comp_data {
            let t = cd.bd.block_count();
            let mut acc = input.realizers[cd.block_offset].orders[j].clone();
            for k in 1..t {
                let b = cd.block_offset + k;
                let w = gd.roots[b].expect("later blocks have roots");
                acc = acc.merge_at_cut(&input.realizers[b].orders[j], w)?;
            }
            per_comp.push(acc);
        }
        out.push(LinearOrder::concat(&per_comp)?);
    }
    for (b, block) in gd.blocks.iter().enumerate() {
        for (j, l) in out.iter().enumerate() {
            debug_assert_eq!(
                l.restrict(block),
                input.realizers[b].orders[j],
                "merged order must restrict to the block family"
            );
        }
    }
    Ok(out)
}

/// The switch poset `Q(S)` for a set of truth-table classes: blocks whose
/// class is in `S` contribute their fixed extension as a path of covers,
/// the others contribute their root-digraph star. Its cover graph is always
/// a forest.
pub fn qs_poset(input: &BlockInput, in_s: &[bool]) -> Poset {
    let gd = &input.decomp;
    let p = &input.poset;
    let mut covers = Vec::new();
    for b in 0..gd.block_count() {
        if in_s[input.class_of_block[b]] {
            let seq = input.l0[b].elements();
            for w in seq.windows(2) {
                covers.push((w[0], w[1]));
            }
        } else {
            covers.extend(gd.root_edges(p, b));
        }
    }
    assert!(
        is_forest(p.n(), &covers),
        "switch poset cover graph must be a forest"
    );
    Poset::from_relations(p.n(), &covers).expect("forest covers are acyclic")
}

/// F10: one verified 3-realizer of `Q(S_j)` per separating set.
pub fn build_f10(input: &BlockInput, sep: &SeparatingFamily) -> Result<Vec<Realizer>> {
    (0..sep.len())
        .map(|j| {
            let in_s: Vec<bool> = (0..input.tables.len())
                .map(|class| sep.contains(j, class))
                .collect();
            let q = qs_poset(input, &in_s);
            forest_realizer3(&q)
        })
        .collect()
}

struct CrossPair {
    x: Element,
    y: Element,
    pos: PairPosition,
    u: Element,
    v: Element,
}

/// Incomparable same-component pairs lying in different Z-parts, with their
/// classification and `(u, v)` cut elements.
fn cross_pairs(input: &BlockInput) -> Vec<CrossPair> {
    let p = &input.poset;
    let gd = &input.decomp;
    let mut out = Vec::new();
    for x in 0..p.n() {
        for y in 0..p.n() {
            if x == y || !p.incomparable(x, y) {
                continue;
            }
            if !gd.same_component(x, y) || gd.z_of[x] == gd.z_of[y] {
                continue;
            }
            let pos = gd.classify(x, y).expect("different Z-parts");
            let (_, u, v) = gd.iuv(x, y).expect("different Z-parts");
            out.push(CrossPair { x, y, pos, u, v });
        }
    }
    out
}

fn reverse_or_abort(p: &Poset, s: &[(Element, Element)], what: &str) -> LinearOrder {
    match reverse_set(p, s) {
        Ok(l) => l,
        Err(Error::NotReversible { certificate }) => {
            panic!("{what} must be reversible; found alternating cycle {certificate:?}")
        }
        Err(e) => panic!("{what}: unexpected error {e}"),
    }
}

/// F6: the extension `M` reversing the below-case set
/// `S = {(x, y) : x below y, v(x, y) not< y}` and its mirror `M'` reversing
/// `S' = {(x, y) : y below x, x not< u(x, y)}`.
pub fn build_f6(input: &BlockInput) -> (LinearOrder, LinearOrder) {
    let p = &input.poset;
    let cross = cross_pairs(input);
    let s: Vec<(Element, Element)> = cross
        .iter()
        .filter(|c| c.pos == PairPosition::XBelowY && !p.lt(c.v, c.y))
        .map(|c| (c.x, c.y))
        .collect();
    let s_mirror: Vec<(Element, Element)> = cross
        .iter()
        .filter(|c| c.pos == PairPosition::YBelowX && !p.lt(c.x, c.u))
        .map(|c| (c.x, c.y))
        .collect();
    let m = reverse_or_abort(p, &s, "below-case set S");
    let m_mirror = reverse_or_abort(p, &s_mirror, "below-case mirror set S'");
    (m, m_mirror)
}

/// F7 and F11: the four reversing extensions of the left-case sets
/// `R_1..R_4` (split by the position of `u` against `v` in `l1` and by
/// which endpoint fails to reach its cut element) and of their mirrors for
/// the right case.
pub fn build_f7_f11(input: &BlockInput, l1: &LinearOrder) -> (Vec<LinearOrder>, Vec<LinearOrder>) {
    let p = &input.poset;
    let cross = cross_pairs(input);
    let mut r_sets: [Vec<(Element, Element)>; 4] = Default::default();
    let mut r_mirror: [Vec<(Element, Element)>; 4] = Default::default();
    for c in &cross {
        let (left, sets) = match c.pos {
            PairPosition::XLeftOfY => (true, &mut r_sets),
            PairPosition::YLeftOfX => (false, &mut r_mirror),
            _ => continue,
        };
        let _ = left;
        let pu = l1.position(c.u).expect("F3 orders cover the ground set");
        let pv = l1.position(c.v).expect("F3 orders cover the ground set");
        let cond_x = !p.lt(c.x, c.u);
        let cond_y = !p.lt(c.v, c.y);
        if pu <= pv {
            if cond_x {
                sets[0].push((c.x, c.y));
            }
            if cond_y {
                sets[1].push((c.x, c.y));
            }
        }
        if pu >= pv {
            if cond_x {
                sets[2].push((c.x, c.y));
            }
            if cond_y {
                sets[3].push((c.x, c.y));
            }
        }
    }
    let f7 = r_sets
        .iter()
        .enumerate()
        .map(|(k, s)| reverse_or_abort(p, s, &format!("left-case set R{}", k + 1)))
        .collect();
    let f11 = r_mirror
        .iter()
        .enumerate()
        .map(|(k, s)| reverse_or_abort(p, s, &format!("right-case set R'{}", k + 1)))
        .collect();
    (f7, f11)
}

fn exactly_three(r: &Realizer) -> Vec<LinearOrder> {
    let mut v = r.extensions().to_vec();
    while v.len() < 3 {
        v.push(v.last().unwrap().clone());
    }
    v
}

/// Composite realizer of a connected poset from its block realizers. With a
/// single block the block's own realizer is returned unchanged.
pub fn build_block_realizer(input: &BlockInput) -> Result<BooleanRealizer> {
    if input.decomp.components.len() > 1 {
        return Err(Error::Disconnected {
            components: input.decomp.components.len(),
        });
    }
    if input.decomp.block_count() == 1 {
        return Ok(input.realizers[0].clone());
    }
    build(input, false)
}

/// Composite realizer of an arbitrary poset: the block construction with
/// every family built globally, prefixed by a two-order same-component
/// detector.
pub fn build_general_realizer(input: &BlockInput) -> Result<BooleanRealizer> {
    build(input, true)
}

fn build(input: &BlockInput, with_detector: bool) -> Result<BooleanRealizer> {
    let p = &input.poset;
    let gd = &input.decomp;
    let n = p.n();
    let d = input.d;
    let n_classes = input.tables.len();
    let r = ceil_log2(n_classes);

    let mut orders: Vec<LinearOrder> = Vec::new();

    let detector = with_detector.then(|| {
        let off = orders.len();
        orders.extend(same_color_family(n, &gd.comp_of).orders);
        off
    });

    let f1 = orders.len();
    orders.extend(same_color_family(n, &gd.z_of).orders);

    let phi2: Vec<usize> = (0..n).map(|x| input.class_of_block[gd.z_of[x]]).collect();
    let f2 = orders.len();
    orders.extend(color_pair_orders(n, &phi2, n_classes));

    let f3_orders = build_f3(input)?;
    let f3 = orders.len();
    orders.extend(f3_orders.iter().cloned());

    let q = gd.q_poset(p);
    let f4 = orders.len();
    orders.extend(exactly_three(
        &forest_realizer3(&q).expect("root digraph poset has a forest cover graph"),
    ));

    let f5 = orders.len();
    orders.extend(gd.f5_orders());

    let (m_ext, m_mirror) = build_f6(input);
    let f6 = orders.len();
    orders.push(m_ext);
    orders.push(m_mirror);

    let (n_left, n_right) = build_f7_f11(input, &f3_orders[0]);
    let f7 = orders.len();
    orders.extend(n_left.iter().cloned());

    let phi3: Vec<usize> = (0..n)
        .map(|x| input.class_of_block[gd.z_of[gd.sigma1(x)]])
        .collect();
    let f8 = orders.len();
    orders.extend(color_pair_orders(n, &phi3, n_classes));

    let phi4: Vec<usize> = (0..n)
        .map(|x| input.class_of_block[gd.z_of[gd.sigma2(x)]])
        .collect();
    let f9 = orders.len();
    orders.extend(color_pair_orders(n, &phi4, n_classes));

    let sep = separating_family(n_classes);
    let m = sep.len();
    let f10 = orders.len();
    for triple in build_f10(input, &sep)? {
        orders.extend(exactly_three(&triple));
    }

    let f11 = orders.len();
    orders.extend(n_right.iter().cloned());

    gate_self_test(input, &n_left, &n_right);

    let sep_member: Vec<Vec<bool>> = (0..n_classes)
        .map(|class| (0..m).map(|j| sep.contains(j, class)).collect())
        .collect();
    let truth = BlockTruth {
        detector,
        f1,
        f2,
        f3,
        f4,
        f5,
        f6,
        f7,
        f8,
        f9,
        f10,
        f11,
        d,
        r,
        n_classes,
        m,
        tables: input.tables.clone(),
        sep_member,
    };
    let base = if with_detector { 2 } else { 0 };
    assert_eq!(orders.len(), base + 17 + d + 18 * r);
    assert!(orders.len() <= base + 17 + d + 18 * (1usize << d));
    Ok(BooleanRealizer::new(orders, TruthFn::Block(truth)))
}

/// Construction-time check of the left-case gate consequences: any pair all
/// four reversers leave in place must satisfy `x < u`, `v < y` and `u != v`.
fn gate_self_test(input: &BlockInput, n_left: &[LinearOrder], n_right: &[LinearOrder]) {
    let p = &input.poset;
    for c in cross_pairs(input) {
        let gates = match c.pos {
            PairPosition::XLeftOfY => n_left,
            PairPosition::YLeftOfX => n_right,
            _ => continue,
        };
        let survives = gates
            .iter()
            .all(|l| l.position(c.x).unwrap() < l.position(c.y).unwrap());
        if survives {
            assert!(
                p.lt(c.x, c.u) && p.lt(c.v, c.y) && c.u != c.v,
                "left-case gate consequences fail for ({}, {})",
                c.x,
                c.y
            );
        }
    }
}
