//! Composing a Boolean realizer of a disconnected poset from Boolean
//! realizers of its components, plus the counting lower bound on the number
//! of orders any scheme needs for the height-2 family.
//!
//! With every component realized by `d` orders, the composite uses
//! `2 + d + 4*ceil(log2 |T|)` orders, where `T` is the set of distinct
//! component truth tables (at most `2^(2^d)`, giving the `2 + d + 4*2^d`
//! bound): two orders decide same-component, a color-pair family reveals the
//! component's truth table, and `d` concatenated orders restrict to every
//! component's own family.

use num_bigint::BigUint;

use crate::decomp::components;
use crate::poset::{Element, LinearOrder, Poset};
use crate::realizer::{
    self, color_pair_orders, same_color_family, verify, BooleanRealizer, ComponentTruth, TruthFn,
};
use crate::{Error, Result};

/// Canonical fingerprint of a truth function: its full table over `d`-bit
/// strings. Equal fingerprints mean identical truth behavior.
pub fn truth_fingerprint(truth: &TruthFn, d: usize) -> Vec<bool> {
    assert_eq!(truth.arity(), d);
    assert!(d <= 24, "fingerprinting is table-sized");
    let mut table = Vec::with_capacity(1 << d);
    let mut bits = vec![false; d];
    for m in 0..(1usize << d) {
        for (j, b) in bits.iter_mut().enumerate() {
            *b = m & (1 << j) != 0;
        }
        table.push(truth.eval(&bits));
    }
    table
}

/// Equalizes realizer sizes to `d = max` by duplicating each realizer's
/// last order; the wrapped truth ignores the new coordinates.
pub fn pad_realizers(inputs: Vec<BooleanRealizer>) -> Vec<BooleanRealizer> {
    let d = inputs.iter().map(|r| r.size()).max().unwrap_or(0);
    inputs
        .into_iter()
        .map(|r| {
            if r.size() == d {
                return r;
            }
            let mut orders = r.orders.clone();
            let last = orders.last().expect("realizers are nonempty").clone();
            while orders.len() < d {
                orders.push(last.clone());
            }
            BooleanRealizer::new(
                orders,
                TruthFn::Padded {
                    arity: d,
                    inner: Box::new(r.truth),
                },
            )
        })
        .collect()
}

/// Validated input of the component construction: the poset, its components
/// (as computed by [`components`]) and one verified Boolean realizer per
/// component, padded to a common size.
pub struct ComponentInput {
    pub poset: Poset,
    pub components: Vec<Vec<Element>>,
    pub realizers: Vec<BooleanRealizer>,
    pub d: usize,
}

impl ComponentInput {
    /// Checks that the realizers line up with the component list (same
    /// ground sets, in component order) and that each one verifies on its
    /// component before padding them to a common size.
    pub fn new(poset: Poset, realizers: Vec<BooleanRealizer>) -> Result<Self> {
        let comps = components(&poset);
        if comps.len() != realizers.len() {
            return Err(Error::BadInput(format!(
                "{} realizers for {} components",
                realizers.len(),
                comps.len()
            )));
        }
        for (c, r) in comps.iter().zip(&realizers) {
            if &r.support() != c {
                return Err(Error::BadInput(format!(
                    "realizer support {:?} does not match component {:?}",
                    r.support(),
                    c
                )));
            }
            let rep = verify(&poset, r);
            if !rep.passed() {
                return Err(Error::BadInput(format!(
                    "component realizer fails verification ({} mismatches, {} collisions)",
                    rep.mismatches.len(),
                    rep.collisions.len()
                )));
            }
        }
        let realizers = pad_realizers(realizers);
        let d = realizers[0].size();
        Ok(ComponentInput {
            poset,
            components: comps,
            realizers,
            d,
        })
    }

    /// Builds the input with inner realizers taken as AND-realizers of
    /// minimum ordinary realizers, searched up to dimension `d_max`.
    pub fn auto(poset: Poset, d_max: usize) -> Result<Self> {
        let comps = components(&poset);
        let realizers = comps
            .iter()
            .map(|c| subposet_and_realizer(&poset, c, d_max))
            .collect::<Result<Vec<_>>>()?;
        Self::new(poset, realizers)
    }
}

/// AND-realizer of a minimum realizer of the subposet induced by `elems`,
/// with orders back over the global element ids.
pub fn subposet_and_realizer(
    p: &Poset,
    elems: &[Element],
    d_max: usize,
) -> Result<BooleanRealizer> {
    let local = p.induced(elems);
    let r = crate::oracles::minimum_realizer(&local, d_max)
        .ok_or_else(|| Error::BadInput(format!("subposet dimension exceeds {d_max}")))?;
    let orders = r
        .extensions()
        .iter()
        .map(|l| LinearOrder::new(l.elements().iter().map(|&i| elems[i]).collect()))
        .collect();
    Ok(BooleanRealizer::new(
        orders,
        TruthFn::AllOnes { arity: r.size() },
    ))
}

/// The component composition: `F1` (2 same-component orders), `F2` (color
/// pairs over distinct truth tables), `F3` (`d` orders whose restriction to
/// every component is its own family).
pub fn build_component_realizer(input: &ComponentInput) -> Result<BooleanRealizer> {
    let t = input.components.len();
    if t < 2 {
        return Err(Error::SingleComponent);
    }
    let n = input.poset.n();
    let d = input.d;

    let mut comp_of = vec![0usize; n];
    for (i, c) in input.components.iter().enumerate() {
        for &x in c {
            comp_of[x] = i;
        }
    }

    // Distinct truth tables, keyed by fingerprint.
    let mut tables: Vec<Vec<bool>> = Vec::new();
    let mut class_of_comp = Vec::with_capacity(t);
    for r in &input.realizers {
        let fp = truth_fingerprint(&r.truth, d);
        let class = match tables.iter().position(|existing| *existing == fp) {
            Some(k) => k,
            None => {
                tables.push(fp);
                tables.len() - 1
            }
        };
        class_of_comp.push(class);
    }
    let n_classes = tables.len();
    let r_log = realizer::ceil_log2(n_classes);

    let f1 = same_color_family(n, &comp_of);
    let phi2: Vec<usize> = (0..n).map(|x| class_of_comp[comp_of[x]]).collect();
    let f2 = color_pair_orders(n, &phi2, n_classes);

    // F3: concatenate the component orders in ascending component order.
    let mut f3 = Vec::with_capacity(d);
    for j in 0..d {
        let parts: Vec<LinearOrder> = input
            .realizers
            .iter()
            .map(|r| r.orders[j].clone())
            .collect();
        f3.push(LinearOrder::concat(&parts)?);
    }
    for (i, c) in input.components.iter().enumerate() {
        for (j, l) in f3.iter().enumerate() {
            debug_assert_eq!(
                l.restrict(c),
                input.realizers[i].orders[j],
                "F3 restriction must reproduce the component family"
            );
        }
    }

    let mut orders = Vec::with_capacity(2 + 4 * r_log + d);
    orders.extend(f1.orders);
    orders.extend(f2);
    orders.extend(f3);

    let truth = ComponentTruth {
        d,
        r: r_log,
        n_classes,
        tables,
    };
    assert_eq!(orders.len(), 2 + 4 * r_log + d);
    assert!(orders.len() <= 2 + d + 4 * (1usize << d));
    Ok(BooleanRealizer::new(orders, TruthFn::Component(truth)))
}

/// True iff `((2n)!)^s * 2^(2^s) >= 2^(n^2)`, i.e. `s` orders leave enough
/// truth functions to give every member of the height-2 family a distinct
/// realizer. Decided by bit-length bounds with an exact big-integer power
/// comparison in the narrow undecided band.
pub fn lower_bound_holds(n: u64, s: u32, fact_2n: &BigUint) -> bool {
    let n2 = n * n;
    if s >= 63 || (1u64 << s) >= n2 {
        return true;
    }
    let rem = n2 - (1u64 << s); // need s * log2((2n)!) >= rem
    let bl = fact_2n.bits(); // 2^(bl-1) <= (2n)! < 2^bl
    let s64 = u64::from(s);
    if s64 * (bl - 1) >= rem {
        return true;
    }
    if s64 * bl <= rem {
        return false;
    }
    fact_2n.pow(s) >= (BigUint::from(1u8) << rem)
}

fn factorial(k: u64) -> BigUint {
    let mut f = BigUint::from(1u8);
    for i in 2..=k {
        f *= i;
    }
    f
}

/// Least `s` with `s * log2((2n)!) + 2^s >= n^2`: no scheme with fewer
/// orders can realize every poset of the height-2 family on `2n` points.
pub fn min_orders_lower_bound(n: u64) -> u32 {
    assert!(n >= 1);
    let fact = factorial(2 * n);
    let mut s = 1;
    while !lower_bound_holds(n, s, &fact) {
        s += 1;
    }
    s
}

/// [`min_orders_lower_bound`] for every `n` in `1..=n_max`, sharing one
/// incrementally grown factorial.
pub fn min_orders_lower_bounds_upto(n_max: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(n_max as usize);
    let mut fact = BigUint::from(1u8);
    let mut k = 0u64;
    for n in 1..=n_max {
        while k < 2 * n {
            k += 1;
            fact *= k;
        }
        let mut s = if n == 1 { 1 } else { out[n as usize - 2] };
        // The bound cannot drop as n grows; start from the previous value
        // and settle in both directions to stay correct regardless.
        while s > 1 && lower_bound_holds(n, s - 1, &fact) {
            s -= 1;
        }
        while !lower_bound_holds(n, s, &fact) {
            s += 1;
        }
        out.push(s);
    }
    out
}

/// Uniform sample from the height-2 family; see [`crate::gen::sample_pn`].
pub use crate::gen::sample_pn;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn padding_equalizes_and_keeps_verification() {
        let p = Poset::disjoint_union(&[Poset::chain(3), Poset::standard_example(3)]);
        let input = ComponentInput::auto(p.clone(), 4).unwrap();
        // Chain gives size 1, standard example size 3; both padded to 3.
        assert_eq!(input.d, 3);
        for (c, r) in input.components.iter().zip(&input.realizers) {
            assert_eq!(r.size(), 3);
            assert_eq!(&r.support(), c);
            assert!(verify(&p, r).passed());
        }
    }

    #[test]
    fn padding_is_identity_on_equal_sizes() {
        let p = Poset::disjoint_union(&[Poset::chain(2), Poset::chain(2)]);
        let input = ComponentInput::auto(p, 4).unwrap();
        assert_eq!(input.d, 1);
        assert!(input
            .realizers
            .iter()
            .all(|r| matches!(r.truth, TruthFn::AllOnes { .. })));
    }

    #[test]
    fn two_chains_compose_and_cross_pairs_answer_zero() {
        let p = Poset::disjoint_union(&[Poset::chain(2), Poset::chain(3)]);
        let input = ComponentInput::auto(p.clone(), 4).unwrap();
        let b = build_component_realizer(&input).unwrap();
        assert!(verify(&p, &b).passed());
        for x in 0..2 {
            for y in 2..5 {
                let bits = realizer::query_bits(&b, x, y).unwrap();
                assert!(!b.truth.eval(&bits));
            }
        }
    }

    #[test]
    fn chain_plus_antichain_fits_the_bound_for_d1() {
        let p = Poset::disjoint_union(&[Poset::chain(3), Poset::antichain(2)]);
        let input = ComponentInput::auto(p.clone(), 4).unwrap();
        assert_eq!(input.d, 1);
        let b = build_component_realizer(&input).unwrap();
        assert!(b.size() <= 2 + 1 + 4);
        assert!(verify(&p, &b).passed());
    }

    #[test]
    fn single_component_is_rejected() {
        let input = ComponentInput::auto(Poset::chain(3), 4).unwrap();
        assert!(matches!(
            build_component_realizer(&input),
            Err(Error::SingleComponent)
        ));
    }

    #[test]
    fn size_matches_the_refined_and_paper_bounds() {
        let mut rng = gen::rng(59);
        for _ in 0..25 {
            let p = gen::random_disconnected(3, 6, &mut rng);
            let input = ComponentInput::auto(p.clone(), 4).unwrap();
            if input.components.len() < 2 {
                continue;
            }
            let b = build_component_realizer(&input).unwrap();
            let distinct: std::collections::HashSet<Vec<bool>> = input
                .realizers
                .iter()
                .map(|r| truth_fingerprint(&r.truth, input.d))
                .collect();
            let r_log = realizer::ceil_log2(distinct.len());
            assert_eq!(b.size(), 2 + 4 * r_log + input.d);
            assert!(b.size() <= 2 + input.d + 4 * (1 << input.d));
            assert!(verify(&p, &b).passed());
        }
    }

    #[test]
    fn lower_bound_for_n1_by_direct_evaluation() {
        // s = 1: 1 * log2(2!) + 2 = 3 >= 1 already holds.
        assert_eq!(min_orders_lower_bound(1), 1);
        // Direct big-integer check of the defining inequality at n = 1.
        let fact = factorial(2);
        assert!(lower_bound_holds(1, 1, &fact));
    }

    #[test]
    fn lower_bound_matches_brute_inequality_on_small_n() {
        // Independent oracle: exact big-integer evaluation of
        // ((2n)!)^s * 2^(2^s) >= 2^(n^2) without the bit-length shortcuts.
        for n in 1..=30u64 {
            let fact = factorial(2 * n);
            let mut s_expected = 1u32;
            loop {
                let lhs = fact.pow(s_expected) << (1u64 << s_expected);
                let rhs = BigUint::from(1u8) << (n * n);
                if lhs >= rhs {
                    break;
                }
                s_expected += 1;
            }
            assert_eq!(min_orders_lower_bound(n), s_expected, "n = {n}");
        }
    }

    #[test]
    fn lower_bound_sweep_matches_single_calls() {
        let sweep = min_orders_lower_bounds_upto(60);
        for n in [1u64, 2, 7, 13, 29, 60] {
            assert_eq!(sweep[n as usize - 1], min_orders_lower_bound(n));
        }
        assert!(sweep.windows(2).all(|w| w[0] <= w[1]));
    }
}
