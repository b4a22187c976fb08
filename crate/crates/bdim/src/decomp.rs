//! Cover graphs and their block structure: components, blocks with roots,
//! the Z-partition, the root digraph and the poset it generates, the rooted
//! block tree with its two depth-first orders, tails, mandatory cut vertices
//! between two elements, and the climbing maps `sigma1`/`sigma2`.

use crate::poset::{Element, Poset};
use crate::{Error, Result};

/// Undirected graph on the poset's elements whose edges are the cover pairs.
#[derive(Clone, Debug)]
pub struct CoverGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl CoverGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Edges as `(lower, upper)` cover pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// A graph is a forest iff every component spans one more vertex than it
    /// has edges.
    pub fn is_forest(&self) -> bool {
        is_forest(self.n, &self.edges)
    }
}

pub(crate) fn is_forest(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for &(a, b) in edges {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// The cover graph of `p`.
pub fn cover_graph(p: &Poset) -> CoverGraph {
    let n = p.n();
    let mut adj = vec![Vec::new(); n];
    let edges = p.cover_pairs();
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    CoverGraph { n, adj, edges }
}

/// Connected components of the cover graph, each sorted, ordered by their
/// minimum element. Every component is a convex subposet.
pub fn components(p: &Poset) -> Vec<Vec<Element>> {
    let g = cover_graph(p);
    let mut seen = vec![false; g.n];
    let mut out = Vec::new();
    for s in 0..g.n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Blocks of a connected poset, labelled so that every block after the first
/// meets the union of the earlier ones in exactly one point, its root.
///
/// `Z_1 = X_1` and `Z_i = X_i - {root_i}` partition the ground set. The
/// block-cut tree is kept for path queries ([`cut_set`], [`classify_pair`]).
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    /// Block ground sets `X_1..X_t`, each sorted.
    pub blocks: Vec<Vec<Element>>,
    /// `roots[i]` is the root of block `i`; `None` exactly for block 0.
    pub roots: Vec<Option<Element>>,
    /// Z-parts: `zparts[0] == blocks[0]`, else the block minus its root.
    pub zparts: Vec<Vec<Element>>,
    /// Z-part index of every element.
    pub z_of: Vec<usize>,
    /// Cut vertices of the cover graph.
    pub is_cut: Vec<bool>,
    n: usize,
    /// Smallest block index containing each element.
    min_block_of: Vec<usize>,
    // Block-cut tree: nodes 0..t are blocks, then one node per cut vertex.
    bct_node_of_cut: Vec<usize>,
    bct_parent: Vec<usize>,
    bct_depth: Vec<usize>,
    bct_cut_label: Vec<Option<Element>>,
}

impl BlockDecomposition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `Y_i`: union of the first `i + 1` block ground sets.
    pub fn prefix(&self, i: usize) -> Vec<Element> {
        let mut mark = vec![false; self.n];
        for b in &self.blocks[..=i] {
            for &x in b {
                mark[x] = true;
            }
        }
        (0..self.n).filter(|&x| mark[x]).collect()
    }

    fn bct_node_of_element(&self, x: Element) -> usize {
        if self.is_cut[x] {
            self.bct_node_of_cut[x]
        } else {
            self.min_block_of[x]
        }
    }

    /// Nodes of the block-cut tree on the path from `x`'s node to `y`'s node,
    /// inclusive, in path order.
    fn bct_path(&self, x: Element, y: Element) -> Vec<usize> {
        let (mut a, mut b) = (self.bct_node_of_element(x), self.bct_node_of_element(y));
        let mut left = vec![a];
        let mut right = vec![b];
        while self.bct_depth[a] > self.bct_depth[b] {
            a = self.bct_parent[a];
            left.push(a);
        }
        while self.bct_depth[b] > self.bct_depth[a] {
            b = self.bct_parent[b];
            right.push(b);
        }
        while a != b {
            a = self.bct_parent[a];
            left.push(a);
            b = self.bct_parent[b];
            right.push(b);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }
}

/// Computes the block decomposition of a connected poset.
pub fn block_decomposition(p: &Poset) -> Result<BlockDecomposition> {
    let g = cover_graph(p);
    let comps = components(p);
    if comps.len() != 1 {
        return Err(Error::Disconnected {
            components: comps.len(),
        });
    }
    let n = g.n;

    // Biconnected components by DFS lowpoint with an edge stack.
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let mut raw_blocks: Vec<Vec<Element>> = Vec::new();

    // Iterative DFS to keep the stack shallow on long paths.
    let mut frame: Vec<(usize, usize, usize)> = Vec::new(); // (v, parent, next neighbor idx)
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        frame.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut idx)) = frame.last_mut() {
            if *idx < g.adj[v].len() {
                let w = g.adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frame.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frame.pop();
                if let Some(&mut (u, _, _)) = frame.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        // Pop one block's worth of edges.
                        let mut verts = std::collections::BTreeSet::new();
                        while let Some(&(a, b)) = estack.last() {
                            if disc[a] >= disc[v] || (a, b) == (u, v) {
                                estack.pop();
                                verts.insert(a);
                                verts.insert(b);
                                if (a, b) == (u, v) {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        raw_blocks.push(verts.into_iter().collect());
                    }
                }
            }
        }
        if g.adj[root].is_empty() {
            raw_blocks.push(vec![root]); // isolated vertex
        }
    }

    // Cut vertices are exactly the elements lying in two or more blocks.
    let mut membership = vec![0usize; n];
    for b in &raw_blocks {
        for &x in b {
            membership[x] += 1;
        }
    }
    let is_cut: Vec<bool> = membership.iter().map(|&c| c >= 2).collect();

    // Order the blocks by BFS over the block-cut tree, starting from a block
    // containing element 0; any order with the one-common-point property is
    // valid, this one is deterministic.
    let t = raw_blocks.len();
    let mut blocks_of_elem: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (bi, b) in raw_blocks.iter().enumerate() {
        for &x in b {
            blocks_of_elem[x].push(bi);
        }
    }
    let start = blocks_of_elem[0]
        .iter()
        .copied()
        .min_by_key(|&bi| raw_blocks[bi].clone())
        .expect("element 0 lies in a block");
    let mut order = Vec::with_capacity(t);
    let mut roots = Vec::with_capacity(t);
    let mut picked = vec![false; t];
    let mut in_prefix = vec![false; n];
    order.push(start);
    roots.push(None);
    picked[start] = true;
    for &x in &raw_blocks[start] {
        in_prefix[x] = true;
    }
    let mut head = 0;
    while head < order.len() {
        let cur = order[head];
        head += 1;
        let cuts: Vec<Element> = raw_blocks[cur]
            .iter()
            .copied()
            .filter(|&x| is_cut[x])
            .collect();
        for c in cuts {
            for &nb in &blocks_of_elem[c] {
                if !picked[nb] {
                    picked[nb] = true;
                    // The new block meets the prefix exactly in c.
                    let shared: Vec<Element> = raw_blocks[nb]
                        .iter()
                        .copied()
                        .filter(|&x| in_prefix[x])
                        .collect();
                    debug_assert_eq!(shared, vec![c], "block attaches at one point");
                    order.push(nb);
                    roots.push(Some(c));
                    for &x in &raw_blocks[nb] {
                        in_prefix[x] = true;
                    }
                }
            }
        }
    }
    assert_eq!(order.len(), t, "connected graph visits every block");

    let blocks: Vec<Vec<Element>> = order.iter().map(|&bi| raw_blocks[bi].clone()).collect();
    let mut zparts = Vec::with_capacity(t);
    let mut z_of = vec![usize::MAX; n];
    for (i, b) in blocks.iter().enumerate() {
        let z: Vec<Element> = match roots[i] {
            None => b.clone(),
            Some(r) => b.iter().copied().filter(|&x| x != r).collect(),
        };
        for &x in &z {
            debug_assert_eq!(z_of[x], usize::MAX, "Z-parts partition the ground set");
            z_of[x] = i;
        }
        zparts.push(z);
    }
    debug_assert!(z_of.iter().all(|&z| z != usize::MAX));

    let mut min_block_of = vec![usize::MAX; n];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            min_block_of[x] = min_block_of[x].min(i);
        }
    }

    // Block-cut tree rooted at block 0: cut-vertex nodes sit between blocks.
    let mut bct_node_of_cut = vec![usize::MAX; n];
    let mut bct_cut_label = vec![None; t];
    let mut next = t;
    for x in 0..n {
        if is_cut[x] {
            bct_node_of_cut[x] = next;
            bct_cut_label.push(Some(x));
            next += 1;
        }
    }
    let total = next;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            if is_cut[x] {
                let c = bct_node_of_cut[x];
                adj[i].push(c);
                adj[c].push(i);
            }
        }
    }
    let mut bct_parent = vec![usize::MAX; total];
    let mut bct_depth = vec![0usize; total];
    let mut queue = vec![0usize];
    let mut seen = vec![false; total];
    seen[0] = true;
    bct_parent[0] = 0;
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                bct_parent[w] = v;
                bct_depth[w] = bct_depth[v] + 1;
                queue.push(w);
            }
        }
    }

    Ok(BlockDecomposition {
        blocks,
        roots,
        zparts,
        z_of,
        is_cut,
        n,
        min_block_of,
        bct_node_of_cut,
        bct_parent,
        bct_depth,
        bct_cut_label,
    })
}

/// The root digraph: for every block `i >= 1` with root `r`, an edge between
/// `r` and each `u` in `Z_i` comparable with `r`, directed upward in `P`.
#[derive(Clone, Debug)]
pub struct RootDigraph {
    pub n: usize,
    /// `(a, b)` means `a` is covered by `b` in the generated poset `Q`.
    pub edges: Vec<(Element, Element)>,
    /// Same edges grouped by owning block index.
    pub per_block: Vec<Vec<(Element, Element)>>,
}

pub fn root_digraph(p: &Poset, bd: &BlockDecomposition) -> RootDigraph {
    let mut edges = Vec::new();
    let mut per_block = vec![Vec::new(); bd.block_count()];
    for i in 0..bd.block_count() {
        let Some(r) = bd.roots[i] else { continue };
        for &u in &bd.zparts[i] {
            if p.lt(u, r) {
                per_block[i].push((u, r));
                edges.push((u, r));
            } else if p.lt(r, u) {
                per_block[i].push((r, u));
                edges.push((r, u));
            }
        }
    }
    RootDigraph {
        n: p.n(),
        edges,
        per_block,
    }
}

/// The poset `Q` generated by the root digraph's covers. Its cover graph is
/// a forest, so this closure cannot cycle.
pub fn q_poset(rd: &RootDigraph) -> Poset {
    debug_assert!(is_forest(rd.n, &rd.edges), "root digraph must be a forest");
    Poset::from_relations(rd.n, &rd.edges).expect("forest covers are acyclic")
}

/// The natural tree on the Z-parts, rooted at `Z_1`, children ordered by
/// ascending block index (a fixed planar embedding).
#[derive(Clone, Debug)]
pub struct BlockTree {
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Preorder entry/exit stamps of the left-to-right walk.
    tin: Vec<usize>,
    tout: Vec<usize>,
    left_seq: Vec<usize>,
    right_seq: Vec<usize>,
}

impl BlockTree {
    /// True iff `a` is an ancestor of `b` (including `a == b`).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.tin[a] <= self.tin[b] && self.tout[b] <= self.tout[a]
    }

    pub fn left_position(&self, z: usize) -> usize {
        self.tin[z]
    }
}

pub fn block_tree(bd: &BlockDecomposition) -> BlockTree {
    let t = bd.block_count();
    let mut parent = vec![None; t];
    let mut children = vec![Vec::new(); t];
    for i in 1..t {
        let r = bd.roots[i].expect("non-first block has a root");
        let pz = bd.z_of[r];
        parent[i] = Some(pz);
        children[pz].push(i);
    }
    for c in &mut children {
        c.sort_unstable();
    }
    // Left-to-right preorder (children ascending) and right-to-left preorder
    // (children descending).
    let mut tin = vec![0usize; t];
    let mut tout = vec![0usize; t];
    let mut left_seq = Vec::with_capacity(t);
    let mut right_seq = Vec::with_capacity(t);
    let mut stack = vec![(0usize, false)];
    let mut timer = 0;
    while let Some((v, exiting)) = stack.pop() {
        if exiting {
            tout[v] = timer;
            continue;
        }
        tin[v] = timer;
        timer += 1;
        left_seq.push(v);
        stack.push((v, true));
        for &c in children[v].iter().rev() {
            stack.push((c, false));
        }
    }
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        right_seq.push(v);
        for &c in &children[v] {
            stack.push(c);
        }
    }
    BlockTree {
        parent,
        children,
        tin,
        tout,
        left_seq,
        right_seq,
    }
}

/// The two depth-first visit sequences of the Z-parts: left-to-right and
/// right-to-left, both starting at `Z_1`.
pub fn dfs_orders(t: &BlockTree) -> (Vec<usize>, Vec<usize>) {
    (t.left_seq.clone(), t.right_seq.clone())
}

/// Relative position of two elements' Z-parts in the block tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairPosition {
    /// `Z_{i_x}` lies on the path from `Z_{i_y}` to the root.
    XBelowY,
    YBelowX,
    /// Neither is an ancestor and `x`'s part is visited first left-to-right.
    XLeftOfY,
    YLeftOfX,
}

/// Classifies a cross-Z pair; exactly one of the four cases holds.
pub fn classify_pair(
    bd: &BlockDecomposition,
    tree: &BlockTree,
    x: Element,
    y: Element,
) -> Result<PairPosition> {
    let zx = bd.z_of[x];
    let zy = bd.z_of[y];
    if zx == zy {
        return Err(Error::SameZ(x, y));
    }
    Ok(if tree.is_ancestor(zx, zy) {
        PairPosition::XBelowY
    } else if tree.is_ancestor(zy, zx) {
        PairPosition::YBelowX
    } else if tree.left_position(zx) < tree.left_position(zy) {
        PairPosition::XLeftOfY
    } else {
        PairPosition::YLeftOfX
    })
}

/// The tail `T(u, X_i)`: all `v` whose every cover-graph path to a point of
/// `X_1` passes through `u`. Computed by deleting `u` and testing
/// reachability from `X_1 - {u}`; always contains `u`.
pub fn tail(p: &Poset, bd: &BlockDecomposition, u: Element, i: usize) -> Vec<Element> {
    debug_assert!(bd.blocks[i].contains(&u), "u must lie in block i");
    let g = cover_graph(p);
    let n = g.n();
    let mut reached = vec![false; n];
    let mut queue: Vec<usize> = bd.blocks[0].iter().copied().filter(|&s| s != u).collect();
    for &s in &queue {
        reached[s] = true;
    }
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &w in g.neighbors(v) {
            if w != u && !reached[w] {
                reached[w] = true;
                queue.push(w);
            }
        }
    }
    (0..n).filter(|&v| !reached[v]).collect()
}

/// `Cut(x, y)`: cut vertices of the cover graph lying on every path from `x`
/// to `y` (the endpoints themselves qualify when they are cut vertices),
/// listed in path order from `x` to `y`.
pub fn cut_set(p: &Poset, bd: &BlockDecomposition, x: Element, y: Element) -> Result<Vec<Element>> {
    let _ = p;
    if bd.z_of[x] == bd.z_of[y] {
        return Err(Error::SameZ(x, y));
    }
    let path = bd.bct_path(x, y);
    Ok(path
        .into_iter()
        .filter_map(|node| bd.bct_cut_label.get(node).copied().flatten())
        .collect())
}

/// The triple `(i, u, v)` attached to a cross-Z pair: `i` is the least block
/// index met by `Cut(x, y)`, and `u`, `v` are the members of `Cut(x, y)`
/// inside `Z_i` closest to `x` resp. `y`.
pub fn iuv(
    p: &Poset,
    bd: &BlockDecomposition,
    x: Element,
    y: Element,
) -> Result<(usize, Element, Element)> {
    let cut = cut_set(p, bd, x, y)?;
    debug_assert!(!cut.is_empty(), "cross-Z pairs always have a cut vertex");
    let i = cut
        .iter()
        .map(|&c| bd.min_block_of[c])
        .min()
        .expect("nonempty cut set");
    let in_zi: Vec<Element> = cut.iter().copied().filter(|&c| bd.z_of[c] == i).collect();
    // At the least index the cut set cannot contain the root of block i, so
    // Cut(x, y) meets X_i exactly in Z_i.
    debug_assert!(!in_zi.is_empty());
    Ok((i, in_zi[0], *in_zi.last().unwrap()))
}

/// `sigma1(a)`: the endpoint of the longest climb from `a` upward through
/// block roots (`w < root of w's block` at every step). If the result
/// differs from `a`, then `a < sigma1(a)` in `P`.
pub fn sigma1(p: &Poset, bd: &BlockDecomposition, a: Element) -> Element {
    let mut w = a;
    loop {
        let z = bd.z_of[w];
        let Some(r) = bd.roots[z] else { return w };
        if p.lt(w, r) {
            w = r;
        } else {
            return w;
        }
    }
}

/// Dual of [`sigma1`]: climbs downward through roots.
pub fn sigma2(p: &Poset, bd: &BlockDecomposition, a: Element) -> Element {
    let mut w = a;
    loop {
        let z = bd.z_of[w];
        let Some(r) = bd.roots[z] else { return w };
        if p.lt(r, w) {
            w = r;
        } else {
            return w;
        }
    }
}

/// DOT rendering of the cover graph.
pub fn dot_cover_graph(p: &Poset) -> String {
    let g = cover_graph(p);
    let mut s = String::from("graph cover {\n");
    for v in 0..g.n() {
        s.push_str(&format!("  {v};\n"));
    }
    for &(a, b) in g.edges() {
        s.push_str(&format!("  {a} -- {b};\n"));
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of the root digraph.
pub fn dot_root_digraph(rd: &RootDigraph) -> String {
    let mut s = String::from("digraph roots {\n");
    for v in 0..rd.n {
        s.push_str(&format!("  {v};\n"));
    }
    for &(a, b) in &rd.edges {
        s.push_str(&format!("  {a} -> {b};\n"));
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of the block tree; node labels are Z-part indices.
pub fn dot_block_tree(tree: &BlockTree) -> String {
    let mut s = String::from("digraph blocktree {\n");
    for z in 0..tree.children.len() {
        s.push_str(&format!("  z{z};\n"));
    }
    for (z, p) in tree.parent.iter().enumerate() {
        if let Some(p) = p {
            s.push_str(&format!("  z{p} -> z{z};\n"));
        }
    }
    s.push_str("}\n");
    s
}
