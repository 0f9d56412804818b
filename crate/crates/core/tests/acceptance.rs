mod common;

use std::collections::BTreeSet;

use common::*;
use dcomplete::dcomplete::{hook_table, hook_table_heap, ColoredPoset, Structure};
use dcomplete::excitation::{enumerate_excited, enumerate_k_excited, ExcitedState};
use dcomplete::genfun::{
    chevalley_recurrence_check, colored_hook_check, merge_colors, naruse_count, rhs_rational,
    verify_main_theorem, RationalFn, SparsePoly,
};
use dcomplete::weyl::{billey_by_peaks, billey_localization};
use dcomplete::{ElemSet, Filter};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Cells = &'static [(i64, i64)];

/// Sorted diagram cells paired with sorted peak cells.
type StateCells = BTreeSet<(Vec<(i64, i64)>, Vec<(i64, i64)>)>;

fn states_by_cells(cp: &ColoredPoset, states: &[ExcitedState]) -> StateCells {
    let cells = |s: ElemSet| {
        let mut v: Vec<(i64, i64)> = s.iter().map(|x| cp.poset().label(x).unwrap()).collect();
        v.sort();
        v
    };
    states
        .iter()
        .map(|s| (cells(s.diagram), cells(s.peaks)))
        .collect()
}

fn expected(table: &[(Cells, Cells)]) -> StateCells {
    table
        .iter()
        .map(|(d, b)| {
            let mut d = d.to_vec();
            let mut b = b.to_vec();
            d.sort();
            b.sort();
            (d, b)
        })
        .collect()
}

#[test]
fn c1_excited_diagram_counts() {
    let (cp, f) = shape(&[5, 4, 2, 1], &[3, 1]);
    let got = enumerate_excited(&cp, f).unwrap();
    let fig3: &[(Cells, Cells)] = &[
        (&[(1, 1), (1, 2), (1, 3), (2, 1)], &[]),
        (&[(1, 1), (1, 2), (2, 4), (2, 1)], &[(1, 3)]),
        (&[(1, 1), (2, 3), (2, 4), (2, 1)], &[(1, 2)]),
        (&[(1, 1), (1, 2), (1, 3), (3, 2)], &[(2, 1)]),
        (&[(1, 1), (1, 2), (2, 4), (3, 2)], &[(2, 1), (1, 3)]),
        (&[(1, 1), (2, 3), (2, 4), (3, 2)], &[(2, 1), (1, 2)]),
        (&[(2, 2), (2, 3), (2, 4), (3, 2)], &[(1, 1)]),
    ];
    let shape_ok = got.len() == 7 && states_by_cells(&cp, &got) == expected(fig3);

    let (sw, f) = swivel();
    let got = enumerate_excited(&sw, f).unwrap();
    let fig4: &[(Cells, Cells)] = &[
        (&[(1, 1), (1, 2), (1, 3)], &[]),
        (&[(1, 1), (1, 2), (2, 4)], &[(1, 3)]),
        (&[(1, 1), (1, 2), (3, 5)], &[(1, 3), (2, 4)]),
        (&[(1, 1), (3, 4), (3, 5)], &[(1, 2)]),
        (&[(1, 1), (1, 2), (4, 6)], &[(1, 3), (2, 4), (3, 5)]),
        (&[(1, 1), (3, 4), (4, 6)], &[(1, 2), (3, 5)]),
        (&[(1, 1), (4, 5), (4, 6)], &[(1, 2), (3, 4)]),
        (&[(4, 4), (4, 5), (4, 6)], &[(1, 1)]),
    ];
    let swivel_ok = got.len() == 8 && states_by_cells(&sw, &got) == expected(fig4);
    report(
        "C1",
        "D(5,4,2,1)/D(3,1) has the expected 7 diagrams and peaks",
        shape_ok,
    );
    report(
        "C1",
        "swivel with a 3-element filter has the expected 8 diagrams",
        swivel_ok,
    );
}

fn decomposition_holds(cp: &ColoredPoset, f: Filter) -> (usize, usize, bool) {
    let ordinary = enumerate_excited(cp, f).unwrap();
    let k = enumerate_k_excited(cp, f).unwrap();
    let weighted: usize = ordinary.iter().map(|s| 1 << s.peaks.len()).sum();
    let ord_in_k = k.iter().filter(|e| e.is_ordinary()).count();
    (
        k.len(),
        ordinary.len(),
        weighted == k.len() && ord_in_k == ordinary.len(),
    )
}

#[test]
fn c2_k_theoretic_counts() {
    let (cp, f) = shifted(&[5, 4, 2, 1], &[3, 1]);
    let (k, ord, sum_ok) = decomposition_holds(&cp, f);
    report(
        "C2",
        "S(5,4,2,1)/S(3,1): 11 K-excited, 5 ordinary",
        k == 11 && ord == 5,
    );
    report("C2", "S(5,4,2,1)/S(3,1): sum of 2^#B equals #E*", sum_ok);

    let (cp, f) = shifted_b(&[5, 4, 2, 1], &[3, 1]);
    assert_eq!(cp.structure(), Structure::Heap);
    let (k, ord, sum_ok) = decomposition_holds(&cp, f);
    report(
        "C2",
        "type-B heap S(5,4,2,1)/S(3,1): 10 ordinary",
        ord == 10,
    );
    report(
        "C2",
        &format!("type-B heap: sum of 2^#B equals #E* = {k}"),
        sum_ok,
    );
}

fn mono(names: &[&str], pairs: &[(&str, u32)]) -> Vec<u32> {
    let mut e = vec![0; names.len()];
    for (n, k) in pairs {
        e[names.iter().position(|x| x == n).unwrap()] += k;
    }
    e
}

#[test]
fn c3_rational_identities() {
    let (cp, f) = shifted(&[3, 2, 1], &[2]);
    let d: &[&str] = &["0", "0'", "1", "2"];
    assert_eq!(cp.graph().names(), d);
    let num = SparsePoly::one_minus(&mono(d, &[("0", 2), ("0'", 1), ("1", 2), ("2", 1)]));
    let eq55 = RationalFn::new(
        num,
        vec![
            mono(d, &[("0", 1), ("0'", 1), ("1", 1), ("2", 1)]),
            mono(d, &[("0", 1), ("1", 1), ("2", 1)]),
            mono(d, &[("0", 1), ("0'", 1), ("1", 1)]),
            mono(d, &[("0", 1), ("1", 1)]),
            mono(d, &[("0", 1)]),
        ],
    )
    .unwrap();
    let rhs_d = rhs_rational(&cp, f).unwrap();
    report(
        "C3",
        "rhs_rational(S(3,2,1), S(2)) has the expected closed form",
        rhs_d.cross_eq(&eq55),
    );

    let (cb, fb) = shifted_b(&[3, 2, 1], &[2]);
    let b: &[&str] = &["0", "1", "2"];
    assert_eq!(cb.graph().names(), b);
    let num = SparsePoly::one_minus(&mono(b, &[("0", 3), ("1", 2), ("2", 1)]));
    let eq56 = RationalFn::new(
        num,
        vec![
            mono(b, &[("0", 1), ("1", 1), ("2", 1)]),
            mono(b, &[("0", 2), ("1", 1), ("2", 1)]),
            mono(b, &[("0", 1), ("1", 1)]),
            mono(b, &[("0", 2), ("1", 1)]),
            mono(b, &[("0", 1)]),
        ],
    )
    .unwrap();
    let rhs_b = rhs_rational(&cb, fb).unwrap();
    report(
        "C3",
        "type-B rhs_rational(S(3,2,1), S(2)) has the expected type-B closed form",
        rhs_b.cross_eq(&eq56),
    );

    let merged = merge_colors(&eq55, 1, 0).unwrap();
    report(
        "C3",
        "z_0' = z_0 maps the type-D closed form to the type-B one",
        merged.cross_eq(&eq56),
    );
}

#[test]
fn c4_main_theorem_sweep() {
    let mut sweeps: Vec<(&str, ColoredPoset)> = vec![
        ("D(4,2)", shape(&[4, 2], &[]).0),
        ("S(3,2,1)", shifted(&[3, 2, 1], &[]).0),
        ("swivel", swivel().0),
        ("tree7", tree7()),
    ];
    for (name, cp) in sweeps.drain(..) {
        let mut filters = 0;
        let mut bad = Vec::new();
        for f in cp.poset().order_filters() {
            filters += 1;
            let v = verify_main_theorem(&cp, f, 6).unwrap();
            if !v.is_ok() {
                bad.push((cp.set_names(f.members()), v.mismatch));
            }
        }
        report(
            "C4",
            &format!("{name}: series identity at N=6 on all {filters} filters, mismatches {bad:?}"),
            bad.is_empty(),
        );
    }
    let (cp, f) = shape(&[5, 4, 2, 1], &[3, 1]);
    let v = verify_main_theorem(&cp, f, 8).unwrap();
    report(
        "C4",
        &format!("D(5,4,2,1)/D(3,1) at N=8 ({} terms)", v.terms),
        v.is_ok(),
    );
}

#[test]
fn c5_hook_tables() {
    let (cp, _) = shifted(&[3, 2, 1], &[]);
    let t = hook_table(&cp).unwrap();
    let ex58 = [
        ((1, 1), "z_0 z_0' z_1^2 z_2"),
        ((1, 2), "z_0 z_0' z_1 z_2"),
        ((1, 3), "z_0 z_1 z_2"),
        ((2, 2), "z_0 z_0' z_1"),
        ((2, 3), "z_0 z_1"),
        ((3, 3), "z_0"),
    ];
    let ok = ex58
        .iter()
        .all(|&((i, j), m)| t.monomial(&cp, cp.cell(i, j).unwrap()) == m);
    report("C5", "hook monomials of S(3,2,1)", ok);

    let (cb, _) = shifted_b(&[3, 2, 1], &[]);
    let t = cb.hooks().unwrap();
    let ex59 = [
        ((1, 1), "z_0 z_1 z_2"),
        ((1, 2), "z_0^2 z_1^2 z_2"),
        ((1, 3), "z_0^2 z_1 z_2"),
        ((2, 2), "z_0 z_1"),
        ((2, 3), "z_0^2 z_1"),
        ((3, 3), "z_0"),
    ];
    let ok = ex59
        .iter()
        .all(|&((i, j), m)| t.monomial(&cb, cb.cell(i, j).unwrap()) == m);
    report("C5", "type-B hook monomials of S(3,2,1)", ok);

    let (big, _) = shifted(&[5, 4, 2, 1], &[]);
    let t = hook_table(&big).unwrap();
    let m = t.monomial(&big, big.cell(1, 2).unwrap());
    report(
        "C5",
        &format!("H_S(5,4,2,1)(1,2) = {m}"),
        m == "z_0 z_0' z_1^2 z_2 z_3 z_4",
    );

    let builders: Vec<(&str, ColoredPoset)> = vec![
        ("D(5,4,2,1)", shape(&[5, 4, 2, 1], &[]).0),
        ("D(4,2)", shape(&[4, 2], &[]).0),
        ("S(5,4,2,1)", shifted(&[5, 4, 2, 1], &[]).0),
        ("S(3,2,1)", shifted(&[3, 2, 1], &[]).0),
        ("swivel", swivel().0),
        ("tree7", tree7()),
    ];
    for (name, cp) in builders {
        let ok = hook_table(&cp).unwrap() == hook_table_heap(&cp).unwrap();
        report(
            "C5",
            &format!("{name}: beta-root exponents equal hook exponents"),
            ok,
        );
    }
}

#[test]
fn c6_counting() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for fx in fixtures() {
        let p = fx.cp.poset();
        for f in p.order_filters() {
            let rest = p.elements().difference(f.members());
            if rest.len() > 10 {
                continue;
            }
            checked += 1;
            let direct = p.induced_subposet(rest).0.linear_extensions_count();
            if naruse_count(&fx.cp, f).unwrap() != direct {
                bad.push((fx.name, fx.cp.set_names(f.members())));
            }
        }
    }
    report(
        "C6",
        &format!(
            "naruse_count equals linear-extension count on {checked} skew posets, failures {bad:?}"
        ),
        bad.is_empty(),
    );
    for lambda in [vec![5, 4, 2, 1], vec![4, 2], vec![3, 2], vec![3, 3, 1]] {
        let (cp, f) = shape(&lambda, &[]);
        let hooks = classical_hooks(&lambda);
        let n: usize = lambda.iter().sum();
        let num: BigUint = (1..=n).map(BigUint::from).product();
        let den: BigUint = hooks.values().map(|&h| BigUint::from(h)).product();
        let frt = num / den;
        let got = naruse_count(&cp, f).unwrap();
        report("C6", &format!("D{lambda:?}: n!/prod h = {frt}"), got == frt);
    }
}

#[test]
fn c7_word_oracles() {
    for fx in fixtures().into_iter().filter(|fx| fx.cp.len() <= 12) {
        let table = WordTable::new(&fx.cp);
        let mut filters = 0;
        let mut ok = true;
        for f in fx.cp.poset().order_filters() {
            filters += 1;
            let ordinary: BTreeSet<ElemSet> = enumerate_excited(&fx.cp, f)
                .unwrap()
                .into_iter()
                .map(|s| s.diagram)
                .collect();
            let k: BTreeSet<ElemSet> = enumerate_k_excited(&fx.cp, f)
                .unwrap()
                .into_iter()
                .map(|e| e.diagram)
                .collect();
            ok &= ordinary == table.excited(&fx.cp, f) && k == table.k_excited(&fx.cp, f);
        }
        report(
            "C7",
            &format!(
                "{}: brute-force word scans match on all {filters} filters",
                fx.name
            ),
            ok,
        );
    }
}

#[test]
fn c8_billey_identity() {
    for fx in fixtures() {
        let filters: Vec<Filter> = fx.cp.poset().order_filters().collect();
        let ok = filters.iter().all(|&f| {
            billey_localization(&fx.cp, f).unwrap() == billey_by_peaks(&fx.cp, f).unwrap()
        });
        report(
            "C8",
            &format!(
                "{}: alternating sum equals peak sum on {} filters",
                fx.name,
                filters.len()
            ),
            ok,
        );
    }
}

#[test]
fn c9_recurrence() {
    for (name, cp) in [
        ("D(3,2)", shape(&[3, 2], &[]).0),
        ("S(3,1)", shifted(&[3, 1], &[]).0),
    ] {
        let full = cp.poset().elements();
        let filters: Vec<Filter> = cp
            .poset()
            .order_filters()
            .filter(|f| f.members() != full)
            .collect();
        let ok = filters
            .iter()
            .all(|&f| chevalley_recurrence_check(&cp, f, 6).is_ok());
        report(
            "C9",
            &format!("{name}: recurrence at N=6 on {} filters", filters.len()),
            ok,
        );
    }
}

#[test]
fn c10_colored_hook_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for fx in fixtures() {
        if fx.cp.structure() != Structure::DComplete {
            continue;
        }
        let rank = fx.cp.graph().rank();
        let mut ok = true;
        for _ in 0..20 {
            let a: Vec<BigRational> = (0..rank)
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(1..=9))))
                .collect();
            let v = colored_hook_check(&fx.cp, fx.filter, &a).unwrap();
            ok &= v.is_ok();
            if fx.cp.len() - fx.filter.len() <= 9 {
                ok &= colored_lhs_by_extensions(&fx.cp, fx.filter, &a) == v.lhs;
            }
        }
        report(
            "C10",
            &format!("{}: 20 seeded weight vectors give exact equality", fx.name),
            ok,
        );
    }
}
