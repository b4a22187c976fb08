//! Independent ground truth: alternating-cycle detection, reversible-set
//! extension construction, exact Dushnik-Miller dimension by partition
//! search, tiny-instance exact Boolean dimension by exhaustive order
//! enumeration, and a 3-realizer builder for posets whose cover graph is a
//! forest.

use crate::decomp::{components, cover_graph};
use crate::poset::{Element, LinearOrder, Poset};
use crate::{Error, Result};

/// A nonempty family of linear extensions whose intersection is the poset.
#[derive(Clone, Debug)]
pub struct Realizer {
    extensions: Vec<LinearOrder>,
}

impl Realizer {
    pub fn new(extensions: Vec<LinearOrder>) -> Self {
        assert!(!extensions.is_empty(), "realizers are nonempty");
        Realizer { extensions }
    }

    pub fn extensions(&self) -> &[LinearOrder] {
        &self.extensions
    }

    pub fn size(&self) -> usize {
        self.extensions.len()
    }

    /// Full verification: every member is a linear extension over the whole
    /// ground set and the intersection of the orders is exactly `p`.
    pub fn realizes(&self, p: &Poset) -> bool {
        for l in &self.extensions {
            if l.len() != p.n() || !p.is_linear_extension(l) {
                return false;
            }
        }
        for x in 0..p.n() {
            for y in 0..p.n() {
                if x == y {
                    continue;
                }
                let everywhere = self
                    .extensions
                    .iter()
                    .all(|l| l.position(x).unwrap() < l.position(y).unwrap());
                if everywhere != p.lt(x, y) {
                    return false;
                }
            }
        }
        true
    }
}

/// Searches `s` for an alternating cycle: a cyclic sequence of pairs with
/// `x_a <= y_{a+1}` throughout. Returns a certificate iff `s` is not
/// reversible; such cycles are the only obstruction.
pub fn find_alternating_cycle(
    p: &Poset,
    s: &[(Element, Element)],
) -> Result<Option<Vec<(Element, Element)>>> {
    for &(x, y) in s {
        if !p.incomparable(x, y) {
            return Err(Error::NotIncomparable(x, y));
        }
    }
    let k = s.len();
    let arc = |a: usize, b: usize| p.le(s[a].0, s[b].1);
    let mut color = vec![0u8; k]; // 0 fresh, 1 on stack, 2 done
    let mut parent = vec![usize::MAX; k];
    for start in 0..k {
        if color[start] != 0 {
            continue;
        }
        color[start] = 1;
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next == k {
                color[v] = 2;
                stack.pop();
                continue;
            }
            let w = *next;
            *next += 1;
            if v == w || !arc(v, w) {
                continue;
            }
            if color[w] == 1 {
                // Close the cycle w -> .. -> v -> w.
                let mut seq = vec![v];
                let mut cur = v;
                while cur != w {
                    cur = parent[cur];
                    seq.push(cur);
                }
                seq.reverse();
                let cert: Vec<_> = seq.into_iter().map(|i| s[i]).collect();
                debug_assert!(certificate_is_alternating(p, &cert));
                return Ok(Some(cert));
            }
            if color[w] == 0 {
                color[w] = 1;
                parent[w] = v;
                stack.push((w, 0));
            }
        }
    }
    Ok(None)
}

pub(crate) fn certificate_is_alternating(p: &Poset, cert: &[(Element, Element)]) -> bool {
    let k = cert.len();
    k >= 2 && (0..k).all(|a| p.le(cert[a].0, cert[(a + 1) % k].1))
}

/// A linear extension of `p` placing `y` before `x` for every `(x, y)` in
/// `s`, i.e. reversing `s`. Ties in the topological order break toward the
/// lowest element index, making the output deterministic.
pub fn reverse_set(p: &Poset, s: &[(Element, Element)]) -> Result<LinearOrder> {
    for &(x, y) in s {
        if !p.incomparable(x, y) {
            return Err(Error::NotIncomparable(x, y));
        }
    }
    let n = p.n();
    let mut adj = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for a in 0..n {
        for b in 0..n {
            if p.lt(a, b) {
                adj[a].push(b);
                indeg[b] += 1;
            }
        }
    }
    for &(x, y) in s {
        adj[y].push(x);
        indeg[x] += 1;
    }
    let mut heap = std::collections::BinaryHeap::new();
    for v in 0..n {
        if indeg[v] == 0 {
            heap.push(std::cmp::Reverse(v));
        }
    }
    let mut out = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = heap.pop() {
        out.push(v);
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(std::cmp::Reverse(w));
            }
        }
    }
    if out.len() < n {
        let certificate = find_alternating_cycle(p, s)?
            .expect("an unsortable reversal set must contain an alternating cycle");
        return Err(Error::NotReversible { certificate });
    }
    Ok(LinearOrder::new(out))
}

/// Deterministic linear extension (lowest index first).
pub fn min_linear_extension(p: &Poset) -> LinearOrder {
    reverse_set(p, &[]).expect("empty set is reversible")
}

/// Exact Dushnik-Miller dimension if it is at most `d_max`, else `None`.
///
/// Searches for a partition of `Inc(P)` into `d` reversible classes (the
/// partition characterization of dimension), coloring pairs in descending
/// 2-cycle conflict order with incremental alternating-cycle checks and
/// first-use color symmetry pruning.
pub fn exact_dimension(p: &Poset, d_max: usize) -> Option<usize> {
    minimum_realizer(p, d_max).map(|r| r.size())
}

/// Minimum realizer behind [`exact_dimension`]: one extension per class of
/// the first successful partition.
pub fn minimum_realizer(p: &Poset, d_max: usize) -> Option<Realizer> {
    let inc = p.incomparable_pairs();
    if inc.is_empty() {
        if d_max == 0 {
            return None;
        }
        return Some(Realizer::new(vec![min_linear_extension(p)]));
    }
    // Pairs that 2-cycle with many others first: fails fast on clique-like
    // conflict structure (standard examples).
    let k = inc.len();
    let mut deg = vec![0usize; k];
    for a in 0..k {
        for b in a + 1..k {
            if p.le(inc[a].0, inc[b].1) && p.le(inc[b].0, inc[a].1) {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
    }
    let mut by_degree: Vec<usize> = (0..k).collect();
    by_degree.sort_by_key(|&i| std::cmp::Reverse(deg[i]));
    let pairs: Vec<(Element, Element)> = by_degree.into_iter().map(|i| inc[i]).collect();

    for d in 2..=d_max {
        let mut classes: Vec<Vec<(Element, Element)>> = vec![Vec::new(); d];
        if assign(p, &pairs, 0, &mut classes, 0) {
            let extensions = classes
                .iter()
                .map(|cl| reverse_set(p, cl).expect("chosen classes are reversible"))
                .collect();
            let r = Realizer::new(extensions);
            debug_assert!(r.realizes(p));
            return Some(r);
        }
    }
    None
}

fn assign(
    p: &Poset,
    pairs: &[(Element, Element)],
    t: usize,
    classes: &mut Vec<Vec<(Element, Element)>>,
    used: usize,
) -> bool {
    if t == pairs.len() {
        return true;
    }
    let pr = pairs[t];
    let limit = (used + 1).min(classes.len());
    for c in 0..limit {
        if !creates_cycle(p, &classes[c], pr) {
            classes[c].push(pr);
            if assign(p, pairs, t + 1, classes, used.max(c + 1)) {
                return true;
            }
            classes[c].pop();
        }
    }
    false
}

/// Would adding `new` close an alternating cycle inside `members`? The class
/// is cycle-free, so any new cycle passes through `new`.
fn creates_cycle(p: &Poset, members: &[(Element, Element)], new: (Element, Element)) -> bool {
    let m = members.len();
    let mut visited = vec![false; m];
    let mut stack = Vec::new();
    for (i, pr) in members.iter().enumerate() {
        if p.le(new.0, pr.1) {
            visited[i] = true;
            stack.push(i);
        }
    }
    while let Some(i) = stack.pop() {
        if p.le(members[i].0, new.1) {
            return true;
        }
        for j in 0..m {
            if !visited[j] && p.le(members[i].0, members[j].1) {
                visited[j] = true;
                stack.push(j);
            }
        }
    }
    false
}

/// Exhaustively decides whether `p` admits a Boolean realizer with `s`
/// orders, for tiny instances (guarded to `n <= 6`, `s <= 3`). A family of
/// orders works iff no bit string is shared by a pair with `x < y` and a
/// pair without; the truth function then exists by table.
///
/// Order tuples are enumerated up to per-order reversal and order
/// permutation, both absorbed by the truth function.
pub fn exact_bdim_at_most(p: &Poset, s: usize) -> Result<bool> {
    let n = p.n();
    if n > 6 || s > 3 || s == 0 {
        return Err(Error::Budget { n, s });
    }
    if n <= 1 {
        return Ok(true);
    }
    let mut pair_info = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y {
                pair_info.push((x * n + y, p.lt(x, y)));
            }
        }
    }
    let masks = canonical_order_masks(n);
    for k in 1..=s {
        if some_tuple_consistent(&masks, &pair_info, k) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Before-relation bitmask (bit `x*n+y` set iff `x` before `y`) of every
/// permutation of `[0, n)` that is lexicographically no larger than its
/// reversal.
fn canonical_order_masks(n: usize) -> Vec<u64> {
    let mut masks = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let canonical = perm.iter().le(perm.iter().rev());
        if canonical {
            let mut m = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    m |= 1 << (perm[i] * n + perm[j]);
                }
            }
            masks.push(m);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    masks
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

fn some_tuple_consistent(masks: &[u64], pairs: &[(usize, bool)], k: usize) -> bool {
    let m = masks.len();
    let consistent = |ms: &[u64]| -> bool {
        let mut cls = [0u8; 8];
        for &(pi, is_lt) in pairs {
            let mut b = 0usize;
            for (j, &mask) in ms.iter().enumerate() {
                b |= (((mask >> pi) & 1) as usize) << j;
            }
            let want = if is_lt { 1 } else { 2 };
            if cls[b] == 0 {
                cls[b] = want;
            } else if cls[b] != want {
                return false;
            }
        }
        true
    };
    match k {
        1 => (0..m).any(|i| consistent(&[masks[i]])),
        2 => (0..m).any(|i| (i + 1..m).any(|j| consistent(&[masks[i], masks[j]]))),
        3 => (0..m).any(|i| {
            (i + 1..m).any(|j| (j + 1..m).any(|l| consistent(&[masks[i], masks[j], masks[l]])))
        }),
        _ => unreachable!("guarded above"),
    }
}

/// A verified realizer of size at most 3 for a poset whose cover graph is a
/// forest.
///
/// In such a poset `x < y` exactly when the unique tree path from `x` to `y`
/// climbs upward at every cover step. Each tree is rooted and three
/// extensions are built bottom-up: one keeping each subtree root as low as
/// its strict down-set allows, one keeping it as high as possible, and a
/// third with whole child subtrees laid out around the root; the child
/// arrangement (ascending prefixes / descending suffixes) makes every
/// incomparable pair show both relative orders somewhere. Duplicate and
/// redundant extensions are trimmed before returning.
pub fn forest_realizer3(p: &Poset) -> Result<Realizer> {
    let g = cover_graph(p);
    if !g.is_forest() {
        return Err(Error::NotForest);
    }
    let comps = components(p);
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut gammas = Vec::new();
    for comp in &comps {
        let (a, b, c) = tree_extensions(p, &g, comp);
        alphas.push(a);
        betas.push(b);
        gammas.push(c);
    }
    let l1: Vec<Element> = alphas.into_iter().flatten().collect();
    let l2: Vec<Element> = betas.into_iter().rev().flatten().collect();
    let l3: Vec<Element> = gammas.into_iter().flatten().collect();
    let mut exts = vec![
        LinearOrder::new(l1),
        LinearOrder::new(l2),
        LinearOrder::new(l3),
    ];
    exts.dedup();
    // Drop extensions that are not needed for the intersection.
    loop {
        let mut dropped = false;
        for i in 0..exts.len() {
            if exts.len() == 1 {
                break;
            }
            let mut cand = exts.clone();
            cand.remove(i);
            if Realizer::new(cand.clone()).realizes(p) {
                exts = cand;
                dropped = true;
                break;
            }
        }
        if !dropped {
            break;
        }
    }
    let r = Realizer::new(exts);
    assert!(
        r.realizes(p) && r.size() <= 3,
        "tree extension construction must realize a forest poset"
    );
    Ok(r)
}

/// The three extensions of one tree, rooted at the component's minimum.
fn tree_extensions(
    p: &Poset,
    g: &crate::decomp::CoverGraph,
    comp: &[Element],
) -> (Vec<Element>, Vec<Element>, Vec<Element>) {
    let root = comp[0];
    let mut children: std::collections::HashMap<Element, Vec<Element>> =
        std::collections::HashMap::new();
    let mut order = vec![root];
    let mut seen: std::collections::HashSet<Element> = [root].into();
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let mut kids: Vec<Element> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|w| seen.insert(*w))
            .collect();
        kids.sort_unstable();
        order.extend(kids.iter().copied());
        children.insert(v, kids);
    }
    // Bottom-up over the BFS order.
    type Triple = (Vec<Element>, Vec<Element>, Vec<Element>);
    let mut built: std::collections::HashMap<Element, Triple> = std::collections::HashMap::new();
    for &v in order.iter().rev() {
        let kids = &children[&v];
        let downs: Vec<Element> = kids.iter().copied().filter(|&c| p.lt(c, v)).collect();
        let ups: Vec<Element> = kids.iter().copied().filter(|&c| p.lt(v, c)).collect();

        // alpha: v immediately above its strict down-set.
        let mut alpha = Vec::new();
        let mut down_sufs = Vec::new();
        for &d in &downs {
            let (ad, _, _) = &built[&d];
            let cut = ad.iter().position(|&e| e == d).unwrap();
            alpha.extend_from_slice(&ad[..=cut]);
            down_sufs.push(ad[cut + 1..].to_vec());
        }
        alpha.push(v);
        for &u in &ups {
            alpha.extend_from_slice(&built[&u].0);
        }
        for suf in down_sufs.iter().rev() {
            alpha.extend_from_slice(suf);
        }

        // beta: v immediately below its strict up-set.
        let mut beta = Vec::new();
        let mut up_sufs = Vec::new();
        for &u in ups.iter().rev() {
            let (_, bu, _) = &built[&u];
            let cut = bu.iter().position(|&e| e == u).unwrap();
            beta.extend_from_slice(&bu[..cut]);
            up_sufs.push(bu[cut..].to_vec());
        }
        for &d in downs.iter().rev() {
            beta.extend_from_slice(&built[&d].1);
        }
        beta.push(v);
        for suf in &up_sufs {
            beta.extend_from_slice(suf);
        }

        // gamma: whole child subtrees around v.
        let mut gamma = Vec::new();
        for &d in &downs {
            gamma.extend_from_slice(&built[&d].2);
        }
        gamma.push(v);
        for &u in ups.iter().rev() {
            gamma.extend_from_slice(&built[&u].2);
        }

        built.insert(v, (alpha, beta, gamma));
    }
    built.remove(&root).unwrap()
}
