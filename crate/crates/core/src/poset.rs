//! Finite posets with precomputed order structure.
//!
//! Elements are dense ids `0..n`. Every poset keeps its Hasse diagram in
//! canonical (transitively reduced) form together with the principal up- and
//! down-sets of every element, so order queries are bitset operations.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Element id.
pub type Elem = usize;

/// Largest poset the bitset representation can hold.
pub const MAX_ELEMENTS: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover relation contains a directed cycle")]
    CycleDetected,
    #[error("element {elem} out of range for a poset with {n} elements")]
    ElementOutOfRange { elem: Elem, n: usize },
    #[error("poset has {0} elements; at most {MAX_ELEMENTS} are supported")]
    TooLarge(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("{0:?} is not an order filter")]
    NotAFilter(ElemSet),
}

/// A set of element ids, stored as a 128-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u128) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(x: Elem) -> Self {
        ElemSet(1u128 << x)
    }

    pub fn contains(self, x: Elem) -> bool {
        x < 128 && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: Elem) {
        self.0 |= 1u128 << x;
    }

    pub fn remove(&mut self, x: Elem) {
        self.0 &= !(1u128 << x);
    }

    pub fn with(self, x: Elem) -> Self {
        ElemSet(self.0 | 1u128 << x)
    }

    pub fn without(self, x: Elem) -> Self {
        ElemSet(self.0 & !(1u128 << x))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<Elem> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Elem)
    }

    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Elem> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<T: IntoIterator<Item = Elem>>(iter: T) -> Self {
        let mut s = ElemSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl IntoIterator for ElemSet {
    type Item = Elem;
    type IntoIter = ElemIter;
    fn into_iter(self) -> ElemIter {
        self.iter()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ids = Vec::<Elem>::deserialize(d)?;
        if let Some(&bad) = ids.iter().find(|&&x| x >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!(
                "element id {bad} too large"
            )));
        }
        Ok(ids.into_iter().collect())
    }
}

/// Iterator over the members of an [`ElemSet`] in increasing order.
#[derive(Clone)]
pub struct ElemIter(u128);

impl Iterator for ElemIter {
    type Item = Elem;
    fn next(&mut self) -> Option<Elem> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as Elem;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ElemIter {}

/// An upward-closed subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Filter(ElemSet);

impl Filter {
    pub fn new(p: &Poset, members: ElemSet) -> Result<Self, PosetError> {
        if p.is_filter(members) {
            Ok(Filter(members))
        } else {
            Err(PosetError::NotAFilter(members))
        }
    }

    pub fn members(self) -> ElemSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }
}

/// A closed interval `[bottom, top]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub bottom: Elem,
    pub top: Elem,
    pub members: ElemSet,
}

/// A finite poset.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    covers: Vec<(Elem, Elem)>,
    upper_covers: Vec<ElemSet>,
    lower_covers: Vec<ElemSet>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
    labels: Option<Vec<(i64, i64)>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from `(lower, upper)` pairs. Redundant pairs are dropped
    /// so that `covers()` is always the Hasse diagram.
    pub fn from_covers(n: usize, pairs: &[(Elem, Elem)]) -> Result<Self, PosetError> {
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        let mut succ = vec![ElemSet::EMPTY; n];
        for &(lo, hi) in pairs {
            for e in [lo, hi] {
                if e >= n {
                    return Err(PosetError::ElementOutOfRange { elem: e, n });
                }
            }
            if lo == hi {
                return Err(PosetError::CycleDetected);
            }
            succ[lo].insert(hi);
        }

        // Kahn's algorithm; whatever is left unvisited sits on a cycle.
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for y in s.iter() {
                indeg[y] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<Elem> = (0..n).filter(|&x| indeg[x] == 0).collect();
        while let Some(x) = ready.pop() {
            order.push(x);
            for y in succ[x].iter() {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.push(y);
                }
            }
        }
        if order.len() != n {
            return Err(PosetError::CycleDetected);
        }

        let mut up = vec![ElemSet::EMPTY; n];
        for &x in order.iter().rev() {
            let mut s = ElemSet::singleton(x);
            for y in succ[x].iter() {
                s = s.union(up[y]);
            }
            up[x] = s;
        }
        Ok(Self::from_up_sets(up, None))
    }

    /// Builds from the principal up-sets (`up[x] = {y : x <= y}`), which must
    /// already be reflexive and transitively closed.
    fn from_up_sets(up: Vec<ElemSet>, labels: Option<Vec<(i64, i64)>>) -> Self {
        let n = up.len();
        let mut down = vec![ElemSet::EMPTY; n];
        for (x, s) in up.iter().enumerate() {
            for y in s.iter() {
                down[y].insert(x);
            }
        }
        let mut covers = Vec::new();
        let mut upper_covers = vec![ElemSet::EMPTY; n];
        let mut lower_covers = vec![ElemSet::EMPTY; n];
        for a in 0..n {
            for b in up[a].without(a).iter() {
                if up[a].intersection(down[b]).len() == 2 {
                    covers.push((a, b));
                    upper_covers[a].insert(b);
                    lower_covers[b].insert(a);
                }
            }
        }
        Poset {
            n,
            covers,
            upper_covers,
            lower_covers,
            up,
            down,
            labels,
        }
    }

    /// Attaches grid labels (metadata only).
    pub fn with_labels(mut self, labels: Vec<(i64, i64)>) -> Result<Self, PosetError> {
        if labels.len() != self.n {
            return Err(PosetError::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    /// Hasse diagram as `(lower, upper)` pairs, sorted.
    pub fn covers(&self) -> &[(Elem, Elem)] {
        &self.covers
    }

    pub fn labels(&self) -> Option<&[(i64, i64)]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: Elem) -> Option<(i64, i64)> {
        self.labels.as_ref().map(|l| l[x])
    }

    /// Finds the element carrying a grid label.
    pub fn find_label(&self, cell: (i64, i64)) -> Option<Elem> {
        self.labels.as_ref()?.iter().position(|&c| c == cell)
    }

    /// Human-readable element name: `(i,j)` when labelled, else the id.
    pub fn element_name(&self, x: Elem) -> String {
        match self.label(x) {
            Some((i, j)) => format!("({i},{j})"),
            None => x.to_string(),
        }
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn covers_pair(&self, lower: Elem, upper: Elem) -> bool {
        self.upper_covers[lower].contains(upper)
    }

    /// `{y : x <= y}`.
    pub fn up_set(&self, x: Elem) -> ElemSet {
        self.up[x]
    }

    /// `{y : y <= x}`.
    pub fn down_set(&self, x: Elem) -> ElemSet {
        self.down[x]
    }

    pub fn upper_covers(&self, x: Elem) -> ElemSet {
        self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: Elem) -> ElemSet {
        self.lower_covers[x]
    }

    /// Members of `[bottom, top]`; empty unless `bottom <= top`.
    pub fn interval_members(&self, bottom: Elem, top: Elem) -> ElemSet {
        self.up[bottom].intersection(self.down[top])
    }

    pub fn interval(&self, bottom: Elem, top: Elem) -> Option<Interval> {
        self.leq(bottom, top).then(|| Interval {
            bottom,
            top,
            members: self.interval_members(bottom, top),
        })
    }

    /// Elements of `s` with nothing of `s` strictly above them.
    pub fn maximal_in(&self, s: ElemSet) -> ElemSet {
        s.iter()
            .filter(|&x| self.up[x].intersection(s) == ElemSet::singleton(x))
            .collect()
    }

    /// Elements of `s` with nothing of `s` strictly below them.
    pub fn minimal_in(&self, s: ElemSet) -> ElemSet {
        s.iter()
            .filter(|&x| self.down[x].intersection(s) == ElemSet::singleton(x))
            .collect()
    }

    pub fn maximal_elements(&self) -> ElemSet {
        self.maximal_in(self.elements())
    }

    pub fn is_filter(&self, s: ElemSet) -> bool {
        s.is_subset(self.elements()) && s.iter().all(|x| self.up[x].is_subset(s))
    }

    pub fn is_ideal(&self, s: ElemSet) -> bool {
        s.is_subset(self.elements()) && s.iter().all(|x| self.down[x].is_subset(s))
    }

    pub fn is_convex(&self, s: ElemSet) -> bool {
        s.iter().all(|a| {
            s.iter()
                .all(|b| !self.leq(a, b) || self.interval_members(a, b).is_subset(s))
        })
    }

    pub fn is_antichain(&self, s: ElemSet) -> bool {
        s.iter()
            .all(|x| self.up[x].intersection(s) == ElemSet::singleton(x))
    }

    pub fn is_chain(&self, s: ElemSet) -> bool {
        s.iter().all(|a| s.iter().all(|b| self.comparable(a, b)))
    }

    /// Whether the Hasse diagram is connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = ElemSet::singleton(0);
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for y in self.upper_covers[x].union(self.lower_covers[x]).iter() {
                if !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        seen.len() == self.n
    }

    /// A deterministic linear extension, minimal elements first
    /// (`p_i < p_j` implies `i < j`).
    pub fn linear_extension(&self) -> Vec<Elem> {
        self.linear_extension_of(self.elements())
    }

    /// Linear extension of the induced subposet on `s`.
    pub fn linear_extension_of(&self, s: ElemSet) -> Vec<Elem> {
        let mut placed = ElemSet::EMPTY;
        let mut out = Vec::with_capacity(s.len());
        while placed != s {
            let next = s
                .difference(placed)
                .iter()
                .find(|&x| self.down[x].intersection(s).without(x).is_subset(placed))
                .expect("acyclic order always has an available element");
            placed.insert(next);
            out.push(next);
        }
        out
    }

    pub fn is_linear_extension(&self, seq: &[Elem]) -> bool {
        let set: ElemSet = seq.iter().copied().collect();
        if set != self.elements() || seq.len() != self.n {
            return false;
        }
        let mut placed = ElemSet::EMPTY;
        for &x in seq {
            if !self.down[x].without(x).is_subset(placed) {
                return false;
            }
            placed.insert(x);
        }
        true
    }

    /// Every order filter, each exactly once (including the empty set and the
    /// whole poset).
    pub fn order_filters(&self) -> OrderFilters<'_> {
        let mut order = self.linear_extension();
        order.reverse();
        OrderFilters {
            poset: self,
            order,
            stack: vec![(0, ElemSet::EMPTY)],
        }
    }

    /// Number of linear extensions, by dynamic programming over the lattice of
    /// order filters: paths from the empty filter to `P` that add one element
    /// of the complement's maximal set at a time.
    pub fn linear_extensions_count(&self) -> BigUint {
        fn go(p: &Poset, filter: ElemSet, memo: &mut HashMap<ElemSet, BigUint>) -> BigUint {
            if filter == p.elements() {
                return BigUint::one();
            }
            if let Some(v) = memo.get(&filter) {
                return v.clone();
            }
            let rest = p.elements().difference(filter);
            let mut total = BigUint::default();
            for x in p.maximal_in(rest).iter() {
                total += go(p, filter.with(x), memo);
            }
            memo.insert(filter, total.clone());
            total
        }
        go(self, ElemSet::EMPTY, &mut HashMap::new())
    }

    /// Linear extensions as sequences `q_1, ..., q_n` with `q_i < q_j`
    /// implying `i < j`, in lexicographic order of ids. Stops after `limit`
    /// sequences when given.
    pub fn linear_extensions(&self, limit: Option<usize>) -> LinearExtensions<'_> {
        let mut it = LinearExtensions {
            poset: self,
            seq: Vec::with_capacity(self.n),
            placed: ElemSet::EMPTY,
            choices: Vec::with_capacity(self.n),
            remaining: limit,
            started: false,
        };
        it.push_choices();
        it
    }

    /// The induced subposet on `s`, with ids renumbered in increasing order.
    /// Returns the subposet and the map from new ids to old ids.
    pub fn induced_subposet(&self, s: ElemSet) -> (Poset, Vec<Elem>) {
        let old: Vec<Elem> = s.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &x) in old.iter().enumerate() {
            new_of[x] = i;
        }
        let up = old
            .iter()
            .map(|&x| {
                self.up[x]
                    .intersection(s)
                    .iter()
                    .map(|y| new_of[y])
                    .collect()
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| old.iter().map(|&x| l[x]).collect());
        (Poset::from_up_sets(up, labels), old)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            n: self.n,
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| l.iter().map(|&(i, j)| [i, j]).collect()),
        }
    }

    pub fn from_json(j: &PosetJson) -> Result<Self, PosetError> {
        let pairs: Vec<(Elem, Elem)> = j.covers.iter().map(|&[a, b]| (a, b)).collect();
        let p = Poset::from_covers(j.n, &pairs)?;
        match &j.labels {
            Some(l) => p.with_labels(l.iter().map(|&[i, k]| (i, k)).collect()),
            None => Ok(p),
        }
    }
}

/// Wire form of a poset: `{"n": .., "covers": [[lo, hi], ..], "labels": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub covers: Vec<[Elem; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<[i64; 2]>>,
}

/// Iterator returned by [`Poset::order_filters`].
pub struct OrderFilters<'a> {
    poset: &'a Poset,
    // elements from the top down
    order: Vec<Elem>,
    stack: Vec<(usize, ElemSet)>,
}

impl Iterator for OrderFilters<'_> {
    type Item = Filter;

    fn next(&mut self) -> Option<Filter> {
        while let Some((k, set)) = self.stack.pop() {
            if k == self.order.len() {
                return Some(Filter(set));
            }
            let x = self.order[k];
            self.stack.push((k + 1, set));
            if self.poset.upper_covers(x).is_subset(set) {
                self.stack.push((k + 1, set.with(x)));
            }
        }
        None
    }
}

/// Iterator returned by [`Poset::linear_extensions`].
pub struct LinearExtensions<'a> {
    poset: &'a Poset,
    seq: Vec<Elem>,
    placed: ElemSet,
    // available minimal elements at each depth, and the index being tried
    choices: Vec<(Vec<Elem>, usize)>,
    remaining: Option<usize>,
    started: bool,
}

impl LinearExtensions<'_> {
    fn push_choices(&mut self) {
        let p = self.poset;
        let rest = p.elements().difference(self.placed);
        let avail = p.minimal_in(rest).to_vec();
        self.choices.push((avail, 0));
    }

    /// Descends along first choices until the sequence is complete.
    fn descend(&mut self) -> bool {
        loop {
            if self.seq.len() == self.poset.len() {
                return true;
            }
            let (avail, idx) = self.choices.last().expect("choice stack");
            let Some(&x) = avail.get(*idx) else {
                return false;
            };
            self.seq.push(x);
            self.placed.insert(x);
            self.push_choices();
        }
    }

    /// Moves to the next sibling of the deepest branch that has one.
    fn advance(&mut self) -> bool {
        loop {
            self.choices.pop();
            let Some(x) = self.seq.pop() else {
                return false;
            };
            self.placed.remove(x);
            let (avail, idx) = self.choices.last_mut().expect("choice stack");
            *idx += 1;
            if *idx < avail.len() {
                let y = avail[*idx];
                self.seq.push(y);
                self.placed.insert(y);
                self.push_choices();
                return true;
            }
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.remaining == Some(0) {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.descend()
        } else {
            self.advance() && self.descend()
        };
        if !found {
            self.remaining = Some(0);
            return None;
        }
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        Some(self.seq.clone())
    }
}
