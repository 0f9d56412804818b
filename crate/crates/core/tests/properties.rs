mod common;

use std::collections::{BTreeSet, VecDeque};

use common::*;
use dcomplete::dcomplete::{
    build_shape, build_shifted, build_shifted_type_b, check_dcomplete, hook_table, hook_table_heap,
    shape_hook_cells, shifted_hook_cells, type_b_hook_cells, verify_coloring, BuilderSpec,
    ColoredPoset,
};
use dcomplete::excitation::{
    active_elements, enumerate_excited, enumerate_excited_type_b_cells, enumerate_k_excited,
    neighbors, peaks_direct, ExcitedState,
};
use dcomplete::genfun::{
    colored_hook_check, lhs_series, naruse_count, q_specialize, rhs_rational, trace_specialize,
    SparsePoly,
};
use dcomplete::weyl::{beta_roots, demazure_word, normal_form, word_for_subset};
use dcomplete::{ElemSet, Filter, Poset};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=5, 1..=4).prop_filter_map("size", |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        (v.iter().sum::<usize>() <= 12).then_some(v)
    })
}

fn strict_partition() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(1usize..=5, 1..=3).prop_filter_map("size", |s| {
        let v: Vec<usize> = s.into_iter().rev().collect();
        (v.iter().sum::<usize>() <= 12).then_some(v)
    })
}

fn random_poset() -> impl Strategy<Value = Poset> {
    (1usize..=8).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * n + j])
                .collect();
            Poset::from_covers(n, &pairs).unwrap()
        })
    })
}

fn nth_filter(cp: &ColoredPoset, k: usize) -> Filter {
    let all: Vec<Filter> = cp.poset().order_filters().collect();
    all[k % all.len()]
}

fn color_exponents(cp: &ColoredPoset, s: ElemSet) -> Vec<u32> {
    let mut e = vec![0; cp.graph().rank()];
    for x in s.iter() {
        e[cp.color(x)] += 1;
    }
    e
}

/// Diagrams reachable from `start` by elementary excitations.
fn reachable(cp: &ColoredPoset, start: ElemSet) -> BTreeSet<ElemSet> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        for a in active_elements(cp, d) {
            let next = d.without(a.top).with(a.bottom);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Number of P-partitions on `P \ F` of each size up to `cap`, by scanning
/// every value assignment.
fn univariate_brute(cp: &ColoredPoset, f: Filter, cap: u32) -> Vec<BigInt> {
    let p = cp.poset();
    let rest = p.elements().difference(f.members()).to_vec();
    let mut counts = vec![BigInt::zero(); cap as usize + 1];
    let mut vals = vec![0u32; rest.len()];
    loop {
        let size: u32 = vals.iter().sum();
        let ok = rest.iter().enumerate().all(|(a, &x)| {
            rest.iter()
                .enumerate()
                .all(|(b, &y)| !p.lt(x, y) || vals[a] >= vals[b])
        });
        if ok && size <= cap {
            counts[size as usize] += 1;
        }
        let mut k = 0;
        loop {
            if k == vals.len() {
                return counts;
            }
            vals[k] += 1;
            if vals[k] <= cap {
                break;
            }
            vals[k] = 0;
            k += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn covers_regenerate_order(p in random_poset()) {
        let q = Poset::from_covers(p.len(), p.covers()).unwrap();
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(p.leq(a, b), q.leq(a, b));
            }
        }
    }

    #[test]
    fn filters_match_brute_force(p in random_poset()) {
        let n = p.len();
        let brute = (0u32..1 << n)
            .filter(|&m| {
                let s = ElemSet::from_bits(m as u128);
                s.iter().all(|x| p.up_set(x).is_subset(s))
            })
            .count();
        prop_assert_eq!(p.order_filters().count(), brute);
        for f in p.order_filters() {
            prop_assert!(p.is_ideal(p.elements().difference(f.members())));
        }
    }

    #[test]
    fn extension_count_matches_enumeration(p in random_poset()) {
        let listed = p.linear_extensions(None).count();
        prop_assert_eq!(p.linear_extensions_count(), listed.into());
        for ext in p.linear_extensions(Some(5)) {
            prop_assert!(p.is_linear_extension(&ext));
        }
    }

    #[test]
    fn poset_json_round_trip(p in random_poset()) {
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back = Poset::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.covers(), p.covers());
    }

    #[test]
    fn shapes_are_dcomplete(lambda in partition()) {
        let cp = build_shape(&lambda).unwrap();
        prop_assert!(check_dcomplete(cp.poset()).is_ok());
        prop_assert_eq!(verify_coloring(&cp), Ok(()));
        prop_assert!(cp.poset().maximal_elements().len() == 1);
        let t = hook_table(&cp).unwrap();
        prop_assert_eq!(&hook_table_heap(&cp).unwrap(), &t);
        let classical = classical_hooks(&lambda);
        for x in 0..cp.len() {
            prop_assert_eq!(t.length(x), classical[&cp.poset().label(x).unwrap()]);
            prop_assert_eq!(t.exp(x), &color_exponents(&cp, shape_hook_cells(&cp, x))[..]);
        }
    }

    #[test]
    fn shifted_shapes_are_dcomplete(mu in strict_partition()) {
        let cp = build_shifted(&mu).unwrap();
        prop_assert!(check_dcomplete(cp.poset()).is_ok());
        prop_assert_eq!(verify_coloring(&cp), Ok(()));
        let t = hook_table(&cp).unwrap();
        prop_assert_eq!(&hook_table_heap(&cp).unwrap(), &t);
        let classical = shifted_hooks(&mu);
        for x in 0..cp.len() {
            prop_assert_eq!(t.length(x), classical[&cp.poset().label(x).unwrap()]);
            prop_assert_eq!(t.length(x), shifted_hook_cells(&cp, x).len() as u64);
        }
    }

    #[test]
    fn type_b_hooks_match_cells(mu in strict_partition()) {
        let cp = build_shifted_type_b(&mu).unwrap();
        prop_assert_eq!(verify_coloring(&cp), Ok(()));
        let t = cp.hooks().unwrap();
        for x in 0..cp.len() {
            let cells = type_b_hook_cells(&cp, x);
            prop_assert_eq!(t.exp(x), &color_exponents(&cp, cells)[..]);
        }
    }

    #[test]
    fn beta_roots_are_positive(mu in strict_partition(), lambda in partition()) {
        for cp in [build_shape(&lambda).unwrap(), build_shifted(&mu).unwrap(), build_shifted_type_b(&mu).unwrap()] {
            let ext = cp.poset().linear_extension();
            for r in beta_roots(&cp, &ext).unwrap() {
                prop_assert!(r.is_positive());
            }
        }
    }

    #[test]
    fn filter_words_are_reduced(lambda in partition(), k in any::<usize>()) {
        let cp = build_shape(&lambda).unwrap();
        let f = nth_filter(&cp, k);
        let ext = cp.poset().linear_extension();
        let w = word_for_subset(&cp, f.members(), &ext);
        prop_assert_eq!(demazure_word(cp.graph(), &w).unwrap().len(), f.len());
    }

    #[test]
    fn normal_form_ignores_commuting_swaps(lambda in partition(), k in any::<usize>(), pos in any::<usize>()) {
        let cp = build_shape(&lambda).unwrap();
        let f = nth_filter(&cp, k);
        let w = word_for_subset(&cp, f.members(), &cp.poset().linear_extension());
        prop_assume!(w.len() >= 2);
        let i = pos % (w.len() - 1);
        let g = cp.graph();
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        if g.commute(w[i], w[i + 1]) {
            prop_assert_eq!(normal_form(g, &swapped), normal_form(g, &w));
        }
    }

    #[test]
    fn excited_states_are_consistent(lambda in partition(), k in any::<usize>()) {
        let cp = build_shape(&lambda).unwrap();
        let f = nth_filter(&cp, k);
        let states = enumerate_excited(&cp, f).unwrap();
        prop_assert!(states.contains(&ExcitedState::initial(f)));
        for s in &states {
            prop_assert_eq!(s.diagram.len(), f.len());
            prop_assert!(s.diagram.is_disjoint(s.peaks));
            prop_assert_eq!(peaks_direct(&cp, s.diagram), s.peaks);
        }
        for e in enumerate_k_excited(&cp, f).unwrap() {
            prop_assert!(e.diagram.len() >= f.len());
            prop_assert_eq!(e.extra.is_empty(), states.iter().any(|s| s.diagram == e.diagram));
        }
        let heap = enumerate_excited(&cp.as_heap(), f).unwrap();
        prop_assert_eq!(heap, states);
    }

    #[test]
    fn same_color_slides_are_excitations(mu in strict_partition(), k in any::<usize>()) {
        let cp = build_shifted(&mu).unwrap();
        let f = nth_filter(&cp, k);
        let p = cp.poset();
        for s in enumerate_excited(&cp, f).unwrap() {
            let reach = reachable(&cp, s.diagram);
            for u in s.diagram.iter() {
                let c = cp.color(u);
                let n = neighbors(&cp, c);
                for v in cp.color_class(c).difference(s.diagram).iter() {
                    if p.lt(v, u) && p.interval_members(v, u).intersection(s.diagram).is_disjoint(n) {
                        prop_assert!(reach.contains(&s.diagram.without(u).with(v)));
                    }
                }
            }
        }
    }

    #[test]
    fn type_b_cell_rules_agree(mu in strict_partition(), k in any::<usize>()) {
        let cp = build_shifted_type_b(&mu).unwrap();
        let f = nth_filter(&cp, k);
        let generic = enumerate_excited(&cp, f).unwrap();
        prop_assert_eq!(enumerate_excited_type_b_cells(&cp, f).unwrap(), generic);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn q_series_matches_brute_force(lambda in partition(), k in any::<usize>()) {
        let cp = build_shape(&lambda).unwrap();
        let f = nth_filter(&cp, k);
        prop_assume!(cp.len() - f.len() <= 5);
        let cap = 5;
        let q = q_specialize(&rhs_rational(&cp, f).unwrap()).unwrap().expand(cap).unwrap();
        let brute = univariate_brute(&cp, f, cap);
        for (d, c) in brute.iter().enumerate() {
            prop_assert_eq!(&q.coeff(&[d as u32]), c);
        }
        let lhs = q_specialize(&lhs_series(&cp, f, cap)).unwrap();
        prop_assert_eq!(lhs, q);
    }

    #[test]
    fn trace_at_one_recovers_q(mu in strict_partition(), k in any::<usize>()) {
        let cp = build_shifted(&mu).unwrap();
        let f = nth_filter(&cp, k);
        let rhs = rhs_rational(&cp, f).unwrap();
        let traced = trace_specialize(&rhs, 0).unwrap();
        let q = q_specialize(&rhs).unwrap().expand(6).unwrap();
        let collapsed = traced.expand_weighted(6, vec![0, 1]).unwrap().poly().map_linear(&[vec![0, 1]]);
        let collapsed = collapsed.truncated(6, &[1]);
        prop_assert_eq!(&collapsed, q.poly());
    }

    #[test]
    fn lhs_coefficients_are_nonnegative(lambda in partition(), k in any::<usize>()) {
        let cp = build_shape(&lambda).unwrap();
        let f = nth_filter(&cp, k);
        let s = lhs_series(&cp, f, 5);
        prop_assert_eq!(s.coeff(&vec![0; cp.graph().rank()]), BigInt::from(1));
        for (_, c) in s.poly().terms() {
            prop_assert!(c > &BigInt::zero());
        }
    }

    #[test]
    fn naruse_counts_extensions(lambda in partition(), k in any::<usize>()) {
        let cp = build_shape(&lambda).unwrap();
        let f = nth_filter(&cp, k);
        let rest = cp.poset().elements().difference(f.members());
        let (sub, _) = cp.poset().induced_subposet(rest);
        prop_assert_eq!(naruse_count(&cp, f).unwrap(), sub.linear_extensions_count());
    }

    #[test]
    fn colored_hooks_hold_on_type_b_heaps(mu in strict_partition(), k in any::<usize>(), w in prop::collection::vec(1i64..=9, 5)) {
        let cp = build_shifted_type_b(&mu).unwrap();
        let f = nth_filter(&cp, k);
        let a: Vec<BigRational> = (0..cp.graph().rank()).map(|i| rational(w[i % w.len()])).collect();
        let v = colored_hook_check(&cp, f, &a).unwrap();
        prop_assert_eq!(&v.lhs, &v.rhs);
        let rest = cp.poset().elements().difference(f.members());
        let direct = cp.poset().induced_subposet(rest).0.linear_extensions_count();
        prop_assert_eq!(naruse_count(&cp, f).unwrap(), direct);
    }

    #[test]
    fn poly_json_round_trip(terms in prop::collection::vec((prop::collection::vec(0u32..4, 3), -50i64..50), 0..8)) {
        let names: Vec<String> = ["0", "0'", "1"].iter().map(|s| s.to_string()).collect();
        let mut p = SparsePoly::zero(3);
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        let back = SparsePoly::from_json(&p.to_json(&names), &names).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn oracles_on_random_shapes() {
    for lambda in [
        vec![3, 3, 2],
        vec![4, 3, 1],
        vec![2, 2, 2, 1],
        vec![5, 3, 2, 1],
    ] {
        let cp = build_shape(&lambda).unwrap();
        let table = WordTable::new(&cp);
        for f in cp.poset().order_filters() {
            let excited: BTreeSet<ElemSet> = enumerate_excited(&cp, f)
                .unwrap()
                .iter()
                .map(|s| s.diagram)
                .collect();
            assert_eq!(excited, table.excited(&cp, f), "{lambda:?}");
            let k: BTreeSet<ElemSet> = enumerate_k_excited(&cp, f)
                .unwrap()
                .iter()
                .map(|e| e.diagram)
                .collect();
            assert_eq!(k, table.k_excited(&cp, f), "{lambda:?}");
        }
    }
}

#[test]
fn builder_specs_round_trip() {
    for text in [
        r#"{"shape":[4,2,1]}"#,
        r#"{"shifted":[4,2]}"#,
        r#"{"shifted_typeB":[3,2,1]}"#,
        r#"{"swivel":true}"#,
        r#"{"tree":{"n":3,"covers":[[1,0],[2,0]]}}"#,
    ] {
        let spec = BuilderSpec::from_json_str(text).unwrap();
        let cp = spec.build().unwrap();
        let again = serde_json::to_string(&cp.family_spec().unwrap_or(spec)).unwrap();
        let rebuilt = BuilderSpec::from_json_str(&again).unwrap().build().unwrap();
        assert_eq!(rebuilt.poset().covers(), cp.poset().covers(), "{text}");
        assert_eq!(rebuilt.colors(), cp.colors(), "{text}");
    }
}

#[test]
fn fixtures_have_valid_colorings() {
    for fx in fixtures() {
        assert_eq!(verify_coloring(&fx.cp), Ok(()), "{}", fx.name);
        let hooks = fx.cp.hooks().unwrap();
        let ext = fx.cp.poset().linear_extension();
        for (x, r) in beta_roots(&fx.cp, &ext).unwrap().iter().enumerate() {
            let e: Vec<i64> = hooks.exp(x).iter().map(|&k| k as i64).collect();
            assert_eq!(r.coords(), &e[..], "{}", fx.name);
        }
    }
}
