//! Seeded random structure generators used by the CLI and the test suites.
//! All generators are deterministic functions of the supplied RNG stream.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::poset::{Element, Poset};

/// Reproducible RNG for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random poset on `n` elements: each forward pair `(i, j)`, `i < j`, is a
/// generator with probability `edge_prob`, then the transitive closure is
/// taken. Index order guarantees acyclicity.
pub fn random_poset(n: usize, edge_prob: f64, rng: &mut impl Rng) -> Poset {
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(edge_prob) {
                rel.push((i, j));
            }
        }
    }
    Poset::from_relations(n.max(1), &rel).expect("forward edges are acyclic")
}

/// Random poset with a connected cover graph; resamples with a gently rising
/// density until connected.
pub fn random_connected_poset(n: usize, edge_prob: f64, rng: &mut impl Rng) -> Poset {
    let mut prob = edge_prob;
    loop {
        let p = random_poset(n, prob, rng);
        if crate::decomp::components(&p).len() == 1 {
            return p;
        }
        prob = (prob * 1.2).min(0.95);
    }
}

/// Random poset whose cover graph is a forest: a random forest shape with
/// every edge independently oriented up or down. The closure of a forest of
/// covers keeps exactly that forest as its cover graph.
pub fn random_forest_poset(n: usize, new_root_prob: f64, rng: &mut impl Rng) -> Poset {
    let mut rel = Vec::new();
    for v in 1..n {
        if rng.random_bool(new_root_prob) {
            continue; // v starts a new tree
        }
        let parent = rng.random_range(0..v);
        if rng.random_bool(0.5) {
            rel.push((parent, v));
        } else {
            rel.push((v, parent));
        }
    }
    Poset::from_relations(n.max(1), &rel).expect("forest covers are acyclic")
}

/// Uniform member of the height-2 family on `2n` points: minimal `a_i`
/// (indices `0..n`), maximal `b_j` (indices `n..2n`), each `(a_i, b_j)`
/// comparable independently with probability 1/2.
pub fn sample_pn(n: usize, rng: &mut impl Rng) -> Poset {
    let mut rel = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.random_bool(0.5) {
                rel.push((i, n + j));
            }
        }
    }
    Poset::from_relations(2 * n, &rel).expect("height-2 relation is acyclic")
}

/// Disconnected poset assembled from `parts` random connected pieces of at
/// most `max_part` elements each.
pub fn random_disconnected(parts: usize, max_part: usize, rng: &mut impl Rng) -> Poset {
    let pieces: Vec<Poset> = (0..parts)
        .map(|_| {
            let n = rng.random_range(1..=max_part);
            random_connected_poset(n, 0.4, rng)
        })
        .collect();
    Poset::disjoint_union(&pieces)
}

/// Connected poset glued from `pieces` random connected posets, each of at
/// most `max_piece` elements, attached one at a time at a random existing
/// element. One-point gluing along a tree of pieces keeps every piece's
/// relation intact and never creates cross-piece covers, so the blocks of
/// the result are exactly the blocks of the pieces.
pub fn random_block_glued(pieces: usize, max_piece: usize, rng: &mut impl Rng) -> Poset {
    assert!(pieces >= 1 && max_piece >= 2);
    let first = random_connected_poset(rng.random_range(2..=max_piece), 0.4, rng);
    let mut n = first.n();
    let mut rel = first.strict_pairs();
    for _ in 1..pieces {
        let piece = random_connected_poset(rng.random_range(2..=max_piece), 0.4, rng);
        let glue_global: Element = rng.random_range(0..n);
        let glue_local: Element = rng.random_range(0..piece.n());
        // Fresh global ids for all non-glue elements of the piece.
        let mut map = vec![0usize; piece.n()];
        let mut next = n;
        for l in 0..piece.n() {
            if l == glue_local {
                map[l] = glue_global;
            } else {
                map[l] = next;
                next += 1;
            }
        }
        for (a, b) in piece.strict_pairs() {
            rel.push((map[a], map[b]));
        }
        n = next;
    }
    Poset::from_relations(n, &rel).expect("one-point gluing along a tree is acyclic")
}
