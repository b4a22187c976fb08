//! Brute-force oracles shared by the integration suites. These stay
//! independent of the library code paths they judge: extension enumeration
//! goes element by element, and poset enumeration filters raw relations.

use bdim::{Element, Poset};

/// Every linear extension of `p`, by backtracking over minimal elements.
pub fn all_extensions(p: &Poset) -> Vec<Vec<Element>> {
    fn rec(p: &Poset, used: &mut Vec<bool>, cur: &mut Vec<Element>, out: &mut Vec<Vec<Element>>) {
        if cur.len() == p.n() {
            out.push(cur.clone());
            return;
        }
        for v in 0..p.n() {
            if used[v] {
                continue;
            }
            if (0..p.n()).any(|w| !used[w] && p.lt(w, v)) {
                continue;
            }
            used[v] = true;
            cur.push(v);
            rec(p, used, cur, out);
            cur.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(p, &mut vec![false; p.n()], &mut Vec::new(), &mut out);
    out
}

/// Does the extension place `x` above `y` for every `(x, y)` in `s`?
pub fn reverses_all(ext: &[Element], s: &[(Element, Element)]) -> bool {
    let mut pos = vec![0usize; ext.len()];
    for (i, &e) in ext.iter().enumerate() {
        pos[e] = i;
    }
    s.iter().all(|&(x, y)| pos[x] > pos[y])
}

/// All labeled posets on `n` elements: every subset of ordered pairs that is
/// irreflexive, antisymmetric and transitive. Exponential; keep `n <= 4`.
pub fn all_labeled_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b)
        .collect();
    let k = pairs.len();
    let mut out = Vec::new();
    'subsets: for mask in 0u32..(1 << k) {
        let has = |a: usize, b: usize| {
            pairs
                .iter()
                .position(|&pr| pr == (a, b))
                .is_some_and(|i| mask & (1 << i) != 0)
        };
        for a in 0..n {
            for b in 0..n {
                if a != b && has(a, b) && has(b, a) {
                    continue 'subsets;
                }
                for c in 0..n {
                    if has(a, b) && has(b, c) && !has(a, c) {
                        continue 'subsets;
                    }
                }
            }
        }
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &pr)| pr)
            .collect();
        out.push(Poset::from_relations(n, &rel).expect("filtered to strict orders"));
    }
    out
}
