use std::collections::BTreeMap;

use serde::Serialize;

use crate::poset::{Elem, ElemSet, Poset};

/// An interval `[bottom, top]` isomorphic to the double-tailed diamond d_k(1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DkInterval {
    pub bottom: Elem,
    pub top: Elem,
    pub sides: (Elem, Elem),
    pub k: usize,
    pub members: ElemSet,
}

/// A convex set isomorphic to d_k(1) with its top removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DkMinusSet {
    pub bottom: Elem,
    pub sides: (Elem, Elem),
    /// The unique maximal element for `k >= 4`, the two sides for `k = 3`.
    pub maxima: ElemSet,
    pub k: usize,
    pub members: ElemSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum Violation {
    /// A d_k^- convex set with no completing top.
    D1 { set: ElemSet, k: usize },
    /// The top of a d_k-interval covers an element outside it.
    D2 { interval: ElemSet, outside: Elem },
    /// Two d_k^- convex sets that differ only in their minimal elements.
    D3 { first: ElemSet, second: ElemSet },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DCompleteVerdict {
    pub violations: Vec<Violation>,
}

impl DCompleteVerdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whether `s` is order-isomorphic to d_k(1) (`with_top`) or to d_k(1) minus
/// its top, returning `k`.
pub(crate) fn double_tailed_k(p: &Poset, s: ElemSet, with_top: bool) -> Option<usize> {
    let n = s.len();
    let k = if with_top { (n + 2) / 2 } else { (n + 3) / 2 };
    if k < 3 || (with_top && n != 2 * k - 2) || (!with_top && n != 2 * k - 3) {
        return None;
    }
    let mut pair = None;
    for a in s.iter() {
        for b in s.iter().filter(|&b| b > a) {
            if !p.comparable(a, b) {
                if pair.is_some() {
                    return None;
                }
                pair = Some((a, b));
            }
        }
    }
    let (x, y) = pair?;
    let (mut below, mut above) = (0, 0);
    for c in s.without(x).without(y).iter() {
        if p.lt(c, x) && p.lt(c, y) {
            below += 1;
        } else if p.lt(x, c) && p.lt(y, c) {
            above += 1;
        } else {
            return None;
        }
    }
    let want_above = if with_top { k - 2 } else { k - 3 };
    (below == k - 2 && above == want_above).then_some(k)
}

/// Downward cover chains `w = c_1 > c_2 > ...` below the incomparable pair
/// `{x, y}` such that `[c_j, x]` and `[c_j, y]` stay inside the chain.
fn lower_tails(p: &Poset, x: Elem, y: Elem, w: Elem) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![w]];
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        let allowed: ElemSet = chain.iter().copied().collect();
        if !p.interval_members(last, x).without(x).is_subset(allowed)
            || !p.interval_members(last, y).without(y).is_subset(allowed)
        {
            continue;
        }
        for c in p.lower_covers(last).iter() {
            let mut next = chain.clone();
            next.push(c);
            stack.push(next);
        }
        out.push(chain);
    }
    out
}

/// Upward cover chains above `{x, y}` starting at a common upper cover, of
/// length at most `max_len`, pruned the same way.
fn upper_tails(p: &Poset, x: Elem, y: Elem, t: Elem, max_len: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![t]];
    while let Some(chain) = stack.pop() {
        if chain.len() > max_len {
            continue;
        }
        let last = *chain.last().unwrap();
        let allowed: ElemSet = chain.iter().copied().collect();
        if !p.interval_members(x, last).without(x).is_subset(allowed)
            || !p.interval_members(y, last).without(y).is_subset(allowed)
        {
            continue;
        }
        for c in p.upper_covers(last).iter() {
            let mut next = chain.clone();
            next.push(c);
            stack.push(next);
        }
        out.push(chain);
    }
    out
}

fn incomparable_pairs_with_lower_cover(p: &Poset) -> Vec<(Elem, Elem, Elem)> {
    let mut out = Vec::new();
    for x in 0..p.len() {
        for y in x + 1..p.len() {
            if p.comparable(x, y) {
                continue;
            }
            let common = p.lower_covers(x).intersection(p.lower_covers(y));
            for w in common.iter() {
                out.push((x, y, w));
            }
        }
    }
    out
}

/// All d_k-intervals of `p`, for every `k >= 3`.
pub fn find_dk_intervals(p: &Poset) -> Vec<DkInterval> {
    let mut out = Vec::new();
    for (x, y, w) in incomparable_pairs_with_lower_cover(p) {
        let tops = p.upper_covers(x).intersection(p.upper_covers(y));
        if tops.is_empty() {
            continue;
        }
        for lower in lower_tails(p, x, y, w) {
            let bottom = *lower.last().unwrap();
            for t in tops.iter() {
                for upper in upper_tails(p, x, y, t, lower.len()) {
                    if upper.len() != lower.len() {
                        continue;
                    }
                    let top = *upper.last().unwrap();
                    let members = p.interval_members(bottom, top);
                    let expected: ElemSet = lower
                        .iter()
                        .chain(upper.iter())
                        .copied()
                        .chain([x, y])
                        .collect();
                    if members == expected && double_tailed_k(p, members, true).is_some() {
                        out.push(DkInterval {
                            bottom,
                            top,
                            sides: (x, y),
                            k: lower.len() + 2,
                            members,
                        });
                    }
                }
            }
        }
    }
    out.sort_by_key(|iv| (iv.top, iv.bottom, iv.k));
    out
}

/// All d_k^- convex sets of `p`, for every `k >= 3`.
pub fn dk_minus_convex_sets(p: &Poset) -> Vec<DkMinusSet> {
    let mut out = Vec::new();
    for (x, y, w) in incomparable_pairs_with_lower_cover(p) {
        let tops = p.upper_covers(x).intersection(p.upper_covers(y));
        for lower in lower_tails(p, x, y, w) {
            let bottom = *lower.last().unwrap();
            let k = lower.len() + 2;
            let mut uppers: Vec<Vec<Elem>> = Vec::new();
            if k == 3 {
                uppers.push(Vec::new());
            } else {
                for t in tops.iter() {
                    uppers.extend(
                        upper_tails(p, x, y, t, k - 3)
                            .into_iter()
                            .filter(|u| u.len() == k - 3),
                    );
                }
            }
            for upper in uppers {
                let members: ElemSet = lower
                    .iter()
                    .chain(upper.iter())
                    .copied()
                    .chain([x, y])
                    .collect();
                if !p.is_convex(members) || double_tailed_k(p, members, false) != Some(k) {
                    continue;
                }
                let maxima = match upper.last() {
                    Some(&m) => ElemSet::singleton(m),
                    None => ElemSet::singleton(x).with(y),
                };
                out.push(DkMinusSet {
                    bottom,
                    sides: (x, y),
                    maxima,
                    k,
                    members,
                });
            }
        }
    }
    out.sort_by_key(|s| (s.members.bits(), s.k));
    out.dedup();
    out
}

/// Checks the three d-completeness axioms for every `k >= 3`.
pub fn check_dcomplete(p: &Poset) -> DCompleteVerdict {
    let mut violations = Vec::new();
    let minus = dk_minus_convex_sets(p);
    for set in &minus {
        let mut candidates = p.elements();
        for m in set.maxima.iter() {
            candidates = candidates.intersection(p.upper_covers(m));
        }
        let completed = candidates.iter().any(|u| {
            let members = set.members.with(u);
            p.interval_members(set.bottom, u) == members
                && double_tailed_k(p, members, true) == Some(set.k)
        });
        if !completed {
            violations.push(Violation::D1 {
                set: set.members,
                k: set.k,
            });
        }
    }
    for iv in find_dk_intervals(p) {
        for c in p.lower_covers(iv.top).iter() {
            if !iv.members.contains(c) {
                violations.push(Violation::D2 {
                    interval: iv.members,
                    outside: c,
                });
            }
        }
    }
    let mut by_upper: BTreeMap<u128, Vec<&DkMinusSet>> = BTreeMap::new();
    for set in &minus {
        by_upper
            .entry(set.members.without(set.bottom).bits())
            .or_default()
            .push(set);
    }
    for group in by_upper.values() {
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                violations.push(Violation::D3 {
                    first: a.members,
                    second: b.members,
                });
            }
        }
    }
    DCompleteVerdict { violations }
}
