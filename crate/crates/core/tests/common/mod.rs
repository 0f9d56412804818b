#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use dcomplete::dcomplete::{
    build_shape, build_shifted, build_shifted_type_b, build_swivel, build_tree, ColoredPoset,
};
use dcomplete::weyl::{demazure_word, normal_form, word_for_subset};
use dcomplete::{ElemSet, Filter};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub struct Fixture {
    pub name: &'static str,
    pub cp: ColoredPoset,
    pub filter: Filter,
}

fn cells(cp: &ColoredPoset, cs: &[(i64, i64)]) -> Filter {
    let s: ElemSet = cs.iter().map(|&(i, j)| cp.cell(i, j).unwrap()).collect();
    Filter::new(cp.poset(), s).unwrap()
}

fn sub(cp: &ColoredPoset, parts: &[usize]) -> Filter {
    Filter::new(cp.poset(), cp.subdiagram(parts).unwrap()).unwrap()
}

pub fn shape(lambda: &[usize], mu: &[usize]) -> (ColoredPoset, Filter) {
    let cp = build_shape(lambda).unwrap();
    let f = sub(&cp, mu);
    (cp, f)
}

pub fn shifted(lambda: &[usize], mu: &[usize]) -> (ColoredPoset, Filter) {
    let cp = build_shifted(lambda).unwrap();
    let f = sub(&cp, mu);
    (cp, f)
}

pub fn shifted_b(lambda: &[usize], mu: &[usize]) -> (ColoredPoset, Filter) {
    let cp = build_shifted_type_b(lambda).unwrap();
    let f = sub(&cp, mu);
    (cp, f)
}

pub fn swivel() -> (ColoredPoset, Filter) {
    let cp = build_swivel().unwrap();
    let f = cells(&cp, &[(1, 1), (1, 2), (1, 3)]);
    (cp, f)
}

/// Complete binary tree on 7 nodes, root 0.
pub fn tree7() -> ColoredPoset {
    build_tree(7, &[(1, 0), (2, 0), (3, 1), (4, 1), (5, 2), (6, 2)]).unwrap()
}

pub fn empty(cp: &ColoredPoset) -> Filter {
    Filter::new(cp.poset(), ElemSet::EMPTY).unwrap()
}

pub fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    let mut push =
        |name, (cp, filter): (ColoredPoset, Filter)| out.push(Fixture { name, cp, filter });
    push("D(4,2)/D(2)", shape(&[4, 2], &[2]));
    push("D(3,2)/D(1)", shape(&[3, 2], &[1]));
    push("D(5,4,2,1)/D(3,1)", shape(&[5, 4, 2, 1], &[3, 1]));
    push("S(3,1)/S(1)", shifted(&[3, 1], &[1]));
    push("S(3,2,1)/S(2)", shifted(&[3, 2, 1], &[2]));
    push("S(5,4,2,1)/S(3,1)", shifted(&[5, 4, 2, 1], &[3, 1]));
    push("swivel/3", swivel());
    let t = tree7();
    let f = Filter::new(t.poset(), ElemSet::singleton(0)).unwrap();
    push("tree7/root", (t, f));
    push("B:S(3,2,1)/S(2)", shifted_b(&[3, 2, 1], &[2]));
    push("B:S(5,4,2,1)/S(3,1)", shifted_b(&[5, 4, 2, 1], &[3, 1]));
    out
}

/// Whether the two words are reduced words of the same fully commutative
/// element, given that `target` is such a word already in normal form.
fn same_fc(cp: &ColoredPoset, word: &[usize], target: &[usize]) -> bool {
    let g = cp.graph();
    demazure_word(g, word).unwrap().len() == word.len() && normal_form(g, word) == target
}

/// Per-subset data for the word oracles, independent of the filter.
pub struct WordTable {
    ext: Vec<usize>,
    /// Normal form of a reduced word of `w*_E` for every subset mask.
    star: Vec<Vec<usize>>,
}

impl WordTable {
    pub fn new(cp: &ColoredPoset) -> Self {
        let n = cp.len();
        assert!(n <= 16);
        let ext = cp.poset().linear_extension();
        let star = (0u32..1 << n)
            .map(|mask| {
                let w = word_for_subset(cp, ElemSet::from_bits(mask as u128), &ext);
                normal_form(cp.graph(), &demazure_word(cp.graph(), &w).unwrap())
            })
            .collect();
        WordTable { ext, star }
    }

    fn target(&self, cp: &ColoredPoset, f: Filter) -> Vec<usize> {
        let w = word_for_subset(cp, f.members(), &self.ext);
        normal_form(cp.graph(), &w)
    }

    /// `{D : #D = #F, w_D = w_F}` by scanning all subsets.
    pub fn excited(&self, cp: &ColoredPoset, f: Filter) -> BTreeSet<ElemSet> {
        let target = self.target(cp, f);
        (0u32..1 << cp.len())
            .map(|m| ElemSet::from_bits(m as u128))
            .filter(|d| d.len() == f.len())
            .filter(|&d| same_fc(cp, &word_for_subset(cp, d, &self.ext), &target))
            .collect()
    }

    /// `{E : w*_E = w_F}` by scanning all subsets.
    pub fn k_excited(&self, cp: &ColoredPoset, f: Filter) -> BTreeSet<ElemSet> {
        let target = self.target(cp, f);
        (0u32..1 << cp.len())
            .filter(|&m| self.star[m as usize] == target)
            .map(|m| ElemSet::from_bits(m as u128))
            .collect()
    }
}

/// Sum over explicit linear extensions `q_1, ..., q_n` of `P \ F` (minimal
/// first) of `prod_i 1 / (a(q_1) + ... + a(q_i))`.
pub fn colored_lhs_by_extensions(cp: &ColoredPoset, f: Filter, a: &[BigRational]) -> BigRational {
    let rest = cp.poset().elements().difference(f.members());
    let (sub, back) = cp.poset().induced_subposet(rest);
    let mut total = BigRational::zero();
    for ext in sub.linear_extensions(None) {
        let mut prefix = BigRational::zero();
        let mut prod = BigRational::one();
        for &x in &ext {
            prefix += &a[cp.color(back[x])];
            prod *= &prefix;
        }
        total += prod.recip();
    }
    total
}

pub fn rational(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Classical hook lengths `arm + leg + 1` keyed by cell.
pub fn classical_hooks(lambda: &[usize]) -> HashMap<(i64, i64), u64> {
    let mut out = HashMap::new();
    for (r, &len) in lambda.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = lambda.iter().skip(r + 1).filter(|&&l| l > c).count();
            out.insert((r as i64 + 1, c as i64 + 1), (arm + leg + 1) as u64);
        }
    }
    out
}

/// Shifted hook lengths: arm, leg, and row `j+1` right of column `j`.
pub fn shifted_hooks(mu: &[usize]) -> HashMap<(i64, i64), u64> {
    let inside = |i: i64, j: i64| {
        i >= 1 && (i as usize) <= mu.len() && j >= i && j < mu[i as usize - 1] as i64 + i
    };
    let mut out = HashMap::new();
    for (r, &len) in mu.iter().enumerate() {
        let i = r as i64 + 1;
        for j in i..i + len as i64 {
            let arm = (j + 1..=j + 40).filter(|&l| inside(i, l)).count();
            let leg = (i + 1..=i + 40).filter(|&k| inside(k, j)).count();
            let extra = (j + 1..=j + 40).filter(|&l| inside(j + 1, l)).count();
            out.insert((i, j), (1 + arm + leg + extra) as u64);
        }
    }
    out
}

/// Prints a PASS or FAIL line uncaptured, then asserts `ok`.
pub fn report(id: &str, what: &str, ok: bool) {
    let line = format!("[{}] {id} {what}\n", if ok { "PASS" } else { "FAIL" });
    std::io::Write::write_all(&mut std::io::stdout().lock(), line.as_bytes()).unwrap();
    assert!(ok, "{id} failed: {what}");
}
