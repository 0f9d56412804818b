//! d-complete posets and dominant minuscule heaps.
//!
//! A [`ColoredPoset`] is a poset together with a coloring by the nodes of a
//! Dynkin diagram ([`ColorGraph`]). Two structures are supported: d-complete
//! posets (simply laced, d_k-intervals drive everything) and heaps of
//! dominant minuscule elements (any symmetrizable Cartan matrix, the interval
//! between consecutive equally colored elements plays the role of the
//! d_k-interval).

mod builders;
mod hooks;
mod intervals;
pub mod spec;

pub use spec::{BuilderSpec, FilterSpec};

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::poset::{Elem, ElemSet, Poset, PosetError};

pub use builders::{
    build_heap, build_shape, build_shifted, build_shifted_type_b, build_swivel, build_tree,
    compute_coloring, grid_poset, shape_hook_cells, shifted_hook_cells, top_forest,
    type_b_hook_cells, verify_coloring, SWIVEL_CELLS,
};
pub use hooks::{format_monomial, hook_table, hook_table_heap, HookTable};
pub use intervals::{
    check_dcomplete, dk_minus_convex_sets, find_dk_intervals, DCompleteVerdict, DkInterval,
    DkMinusSet, Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DcError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("invalid strict partition {0:?}: parts must be positive and strictly decreasing")]
    InvalidStrictPartition(Vec<usize>),
    #[error("cover relation is not a rooted tree: {0}")]
    NotATree(String),
    #[error("coloring failed: {0}")]
    ColoringFailed(String),
    #[error("poset is not d-complete: {0}")]
    NotDComplete(String),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("element {0} is the top of more than one d_k-interval")]
    MultipleDkTops(Elem),
    #[error("hook monomial of element {0} has a negative exponent")]
    NegativeExponent(Elem),
    #[error("hook data depends on the chosen linear extension at element {0}")]
    ExtensionDependent(Elem),
    #[error("heap word is not reduced")]
    NonReducedWord,
    #[error("root arithmetic overflowed")]
    Overflow,
    #[error("filter: {0}")]
    InvalidFilter(String),
    #[error("operation requires a {0} structure")]
    WrongStructure(&'static str),
}

/// A Dynkin diagram given by its generalized Cartan matrix, with named nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorGraph {
    names: Vec<String>,
    cartan: Vec<Vec<i64>>,
    simply_laced: bool,
    /// False when the matrix came from user input and symmetrizability was
    /// not established.
    trusted: bool,
}

impl ColorGraph {
    /// The simply-laced diagram with the given edges.
    pub fn simply_laced(names: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let n = names.len();
        let mut cartan = vec![vec![0; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in edges {
            cartan[i][j] = -1;
            cartan[j][i] = -1;
        }
        ColorGraph {
            names,
            cartan,
            simply_laced: true,
            trusted: true,
        }
    }

    /// Validates `a_ii = 2`, nonpositive off-diagonal entries and
    /// `a_ij = 0 <=> a_ji = 0`.
    pub fn from_cartan(names: Vec<String>, cartan: Vec<Vec<i64>>) -> Result<Self, DcError> {
        let n = names.len();
        if cartan.len() != n || cartan.iter().any(|r| r.len() != n) {
            return Err(DcError::InvalidCartan(format!("matrix must be {n}x{n}")));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row[i] != 2 {
                return Err(DcError::InvalidCartan(format!("a_{i}{i} != 2")));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j && (a > 0 || (a == 0) != (cartan[j][i] == 0)) {
                    return Err(DcError::InvalidCartan(format!("bad entries at ({i},{j})")));
                }
            }
        }
        let simply_laced = (0..n).all(|i| {
            (0..n).all(|j| i == j || (cartan[i][j] == cartan[j][i] && cartan[i][j] >= -1))
        });
        let mut g = ColorGraph {
            names,
            cartan,
            simply_laced,
            trusted: false,
        };
        g.trusted = g.is_symmetrizable();
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `a_ij = <alpha_i^vee, alpha_j>`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn is_simply_laced(&self) -> bool {
        self.simply_laced
    }

    pub fn is_trusted(&self) -> bool {
        self.trusted
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// Whether `s_i s_j = s_j s_i` with `i != j`.
    pub fn commute(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] == 0
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| self.adjacent(i, j))
    }

    /// Looks for positive `d_i` with `d_i a_ij = d_j a_ji`.
    pub fn is_symmetrizable(&self) -> bool {
        let n = self.rank();
        let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
        for root in 0..n {
            if d[root].is_some() {
                continue;
            }
            d[root] = Some(Ratio::from_integer(1));
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                let di = d[i].unwrap();
                for j in self.neighbors(i) {
                    let dj = di * Ratio::new(self.cartan[i][j], self.cartan[j][i]);
                    match d[j] {
                        Some(old) if old != dj => return false,
                        Some(_) => {}
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                        }
                    }
                }
            }
        }
        true
    }

    /// Cartan–Killing style name of the diagram when it is a recognised
    /// finite type (`A_n`, `B_n`, `C_n`, `D_n`, `E_6`, `E_7`, `E_8`).
    pub fn dynkin_type(&self) -> String {
        let n = self.rank();
        if n == 0 {
            return "empty".into();
        }
        let deg: Vec<usize> = (0..n).map(|i| self.neighbors(i).count()).collect();
        let edges: usize = deg.iter().sum::<usize>() / 2;
        if edges + 1 != n || !self.connected() {
            return format!("non-tree diagram on {n} nodes");
        }
        if !self.simply_laced {
            let multiple: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| self.cartan[i][j] < -1)
                .collect();
            if deg.iter().all(|&d| d <= 2) && multiple.len() == 1 {
                let (i, j) = multiple[0];
                if self.cartan[i][j] == -2 && self.cartan[j][i] == -1 {
                    if deg[i] == 1 {
                        return format!("B_{n}");
                    }
                    if deg[j] == 1 {
                        return format!("C_{n}");
                    }
                }
            }
            return format!("multiply-laced tree on {n} nodes");
        }
        let branch: Vec<usize> = (0..n).filter(|&i| deg[i] >= 3).collect();
        if branch.is_empty() {
            return format!("A_{n}");
        }
        if branch.len() == 1 && deg[branch[0]] == 3 {
            let b = branch[0];
            let mut arms: Vec<usize> = self.neighbors(b).map(|s| self.arm_length(b, s)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => return format!("D_{n}"),
                [1, 2, 2] => return "E_6".into(),
                [1, 2, 3] => return "E_7".into(),
                [1, 2, 4] => return "E_8".into(),
                _ => {}
            }
        }
        format!("tree on {n} nodes")
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.rank()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn arm_length(&self, from: usize, start: usize) -> usize {
        let (mut prev, mut cur, mut len) = (from, start, 1);
        loop {
            let next: Vec<usize> = self.neighbors(cur).filter(|&j| j != prev).collect();
            match next.as_slice() {
                [only] => {
                    prev = cur;
                    cur = *only;
                    len += 1;
                }
                _ => return len,
            }
        }
    }
}

/// Which notion of "interval between two equally colored elements" applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    /// Simply-laced d-complete poset: d_k-intervals.
    DComplete,
    /// Dominant minuscule heap: `[v,u]` with `c(u) = c(v)` and no other
    /// element of that color inside.
    Heap,
}

/// Where a colored poset came from; drives filter parsing and rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Shape(Vec<usize>),
    Shifted(Vec<usize>),
    ShiftedTypeB(Vec<usize>),
    Swivel,
    Tree,
    Heap,
    General,
}

impl Family {
    /// Grid families accept sub-partitions as filters.
    pub fn partition(&self) -> Option<&[usize]> {
        match self {
            Family::Shape(p) | Family::Shifted(p) | Family::ShiftedTypeB(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_shifted(&self) -> bool {
        matches!(self, Family::Shifted(_) | Family::ShiftedTypeB(_))
    }
}

/// A d-complete poset or dominant minuscule heap with its coloring.
#[derive(Clone, Debug)]
pub struct ColoredPoset {
    poset: Poset,
    color: Vec<usize>,
    graph: ColorGraph,
    top_forest: ElemSet,
    structure: Structure,
    family: Family,
    dk: Vec<DkInterval>,
    dk_by_top: Vec<Option<usize>>,
    by_color: Vec<ElemSet>,
}

impl ColoredPoset {
    /// Assembles a colored poset. In d-complete mode every element may be the
    /// top of at most one d_k-interval.
    pub fn new(
        poset: Poset,
        color: Vec<usize>,
        graph: ColorGraph,
        structure: Structure,
        family: Family,
    ) -> Result<Self, DcError> {
        assert_eq!(color.len(), poset.len(), "one color per element");
        assert!(
            color.iter().all(|&c| c < graph.rank()),
            "color out of range"
        );
        let dk = find_dk_intervals(&poset);
        let mut dk_by_top = vec![None; poset.len()];
        for (idx, iv) in dk.iter().enumerate() {
            if dk_by_top[iv.top].is_some() && structure == Structure::DComplete {
                return Err(DcError::MultipleDkTops(iv.top));
            }
            dk_by_top[iv.top] = Some(idx);
        }
        let mut by_color = vec![ElemSet::EMPTY; graph.rank()];
        for (x, &c) in color.iter().enumerate() {
            by_color[c].insert(x);
        }
        let top_forest = top_forest(&poset);
        Ok(ColoredPoset {
            poset,
            color,
            graph,
            top_forest,
            structure,
            family,
            dk,
            dk_by_top,
            by_color,
        })
    }

    /// Same poset and coloring, read as a heap.
    pub fn as_heap(&self) -> ColoredPoset {
        ColoredPoset {
            structure: Structure::Heap,
            ..self.clone()
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn graph(&self) -> &ColorGraph {
        &self.graph
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn color(&self, x: Elem) -> usize {
        self.color[x]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color
    }

    pub fn color_name(&self, x: Elem) -> &str {
        self.graph.name(self.color[x])
    }

    /// Elements of color `i`.
    pub fn color_class(&self, i: usize) -> ElemSet {
        self.by_color[i]
    }

    pub fn top_forest(&self) -> ElemSet {
        self.top_forest
    }

    /// Color of the maximum element, when the poset has one.
    pub fn max_color(&self) -> Option<usize> {
        let m = self.poset.maximal_elements();
        (m.len() == 1).then(|| self.color[m.first().unwrap()])
    }

    pub fn dk_intervals(&self) -> &[DkInterval] {
        &self.dk
    }

    /// The d_k-interval whose top is `u`.
    pub fn dk_with_top(&self, u: Elem) -> Option<&DkInterval> {
        self.dk_by_top[u].map(|i| &self.dk[i])
    }

    /// The element `v < u` that an excitation at `u` moves to: the bottom of
    /// the d_k-interval with top `u` (d-complete), or the next element of the
    /// same color below `u` (heap).
    pub fn lower_partner(&self, u: Elem) -> Option<Elem> {
        match self.structure {
            Structure::DComplete => self.dk_with_top(u).map(|iv| iv.bottom),
            Structure::Heap => {
                let below = self
                    .color_class(self.color[u])
                    .intersection(self.poset.down_set(u))
                    .without(u);
                self.poset.maximal_in(below).first()
            }
        }
    }

    /// Hook exponent vectors appropriate for the structure.
    pub fn hooks(&self) -> Result<HookTable, DcError> {
        match self.structure {
            Structure::DComplete => hook_table(self),
            Structure::Heap => hook_table_heap(self),
        }
    }

    /// `(i,j)` grid element lookup.
    pub fn cell(&self, i: i64, j: i64) -> Option<Elem> {
        self.poset.find_label((i, j))
    }

    /// Element set of the cells of a (shifted) sub-diagram.
    pub fn subdiagram(&self, parts: &[usize]) -> Option<ElemSet> {
        let shifted = self.family.is_shifted();
        let mut s = ElemSet::EMPTY;
        for (r, &len) in parts.iter().enumerate() {
            let i = r as i64 + 1;
            let start = if shifted { i } else { 1 };
            for j in start..start + len as i64 {
                s.insert(self.cell(i, j)?);
            }
        }
        Some(s)
    }

    /// Display form of an element set.
    pub fn set_names(&self, s: ElemSet) -> String {
        let names: Vec<String> = s.iter().map(|x| self.poset.element_name(x)).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Per-color element lists keyed by name, for reports.
    pub fn coloring_report(&self) -> Vec<(String, String)> {
        (0..self.len())
            .map(|x| (self.poset.element_name(x), self.color_name(x).to_string()))
            .collect()
    }
}

impl fmt::Display for ColoredPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} elements, {} colors ({})",
            self.len(),
            self.graph.rank(),
            self.graph.dynkin_type()
        )
    }
}
