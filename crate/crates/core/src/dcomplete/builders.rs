use std::collections::{BTreeMap, VecDeque};

use super::{ColorGraph, ColoredPoset, DcError, Family, Structure};
use crate::poset::{Elem, ElemSet, Poset};
use crate::weyl;

/// Cells of the swivel, an E_6-type d-complete poset.
pub const SWIVEL_CELLS: [(i64, i64); 16] = [
    (1, 1),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (3, 6),
    (4, 4),
    (4, 5),
    (4, 6),
    (4, 7),
    (4, 8),
];

/// The induced subposet of Z^2 on `cells`, where `(i,j) >= (i',j')` iff
/// `i <= i'` and `j <= j'`. Element ids follow the order of `cells`.
pub fn grid_poset(cells: &[(i64, i64)]) -> Result<Poset, DcError> {
    let mut pairs = Vec::new();
    for (a, &(i, j)) in cells.iter().enumerate() {
        for (b, &(k, l)) in cells.iter().enumerate() {
            if a != b && k <= i && l <= j {
                pairs.push((a, b));
            }
        }
    }
    Ok(Poset::from_covers(cells.len(), &pairs)?.with_labels(cells.to_vec())?)
}

/// Elements all of whose ancestors (including themselves) have at most one
/// upper cover.
pub fn top_forest(p: &Poset) -> ElemSet {
    (0..p.len())
        .filter(|&x| p.up_set(x).iter().all(|y| p.upper_covers(y).len() <= 1))
        .collect()
}

fn check_partition(parts: &[usize]) -> Result<(), DcError> {
    if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(DcError::InvalidPartition(parts.to_vec()));
    }
    Ok(())
}

fn check_strict(parts: &[usize]) -> Result<(), DcError> {
    if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
        return Err(DcError::InvalidStrictPartition(parts.to_vec()));
    }
    Ok(())
}

fn shape_cells(parts: &[usize]) -> Vec<(i64, i64)> {
    let mut cells = Vec::new();
    for (r, &len) in parts.iter().enumerate() {
        let i = r as i64 + 1;
        cells.extend((1..=len as i64).map(|j| (i, j)));
    }
    cells
}

fn shifted_cells(parts: &[usize]) -> Vec<(i64, i64)> {
    let mut cells = Vec::new();
    for (r, &len) in parts.iter().enumerate() {
        let i = r as i64 + 1;
        cells.extend((i..i + len as i64).map(|j| (i, j)));
    }
    cells
}

fn path_graph(names: Vec<String>) -> ColorGraph {
    let edges: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
    ColorGraph::simply_laced(names, &edges)
}

/// The Young diagram `D(lambda)` colored by `c(i,j) = j - i`.
pub fn build_shape(lambda: &[usize]) -> Result<ColoredPoset, DcError> {
    check_partition(lambda)?;
    let cells = shape_cells(lambda);
    let poset = grid_poset(&cells)?;
    let lo = 1 - lambda.len() as i64;
    let hi = lambda[0] as i64 - 1;
    let names: Vec<String> = (lo..=hi).map(|c| c.to_string()).collect();
    let color = cells.iter().map(|&(i, j)| (j - i - lo) as usize).collect();
    let cp = ColoredPoset::new(
        poset,
        color,
        path_graph(names),
        Structure::DComplete,
        Family::Shape(lambda.to_vec()),
    )?;
    verify_coloring(&cp).map_err(DcError::ColoringFailed)?;
    Ok(cp)
}

/// The shifted diagram `S(mu)` with its type-D coloring: diagonal cells get
/// `0` or `0'` by parity of the row, other cells `j - i`.
pub fn build_shifted(mu: &[usize]) -> Result<ColoredPoset, DcError> {
    check_strict(mu)?;
    let cells = shifted_cells(mu);
    let poset = grid_poset(&cells)?;
    let m = mu[0];
    let (graph, color): (ColorGraph, Vec<usize>) = if mu.len() == 1 {
        let names = (0..m).map(|c| c.to_string()).collect();
        let color = cells.iter().map(|&(i, j)| (j - i) as usize).collect();
        (path_graph(names), color)
    } else {
        let mut names = vec!["0".to_string(), "0'".to_string()];
        names.extend((1..m).map(|c| c.to_string()));
        let mut edges = vec![(0, 2), (1, 2)];
        edges.extend((2..m).map(|c| (c, c + 1)));
        let color = cells
            .iter()
            .map(|&(i, j)| match (j - i, i % 2) {
                (0, 1) => 0,
                (0, _) => 1,
                (d, _) => d as usize + 1,
            })
            .collect();
        (ColorGraph::simply_laced(names, &edges), color)
    };
    let cp = ColoredPoset::new(
        poset,
        color,
        graph,
        Structure::DComplete,
        Family::Shifted(mu.to_vec()),
    )?;
    verify_coloring(&cp).map_err(DcError::ColoringFailed)?;
    Ok(cp)
}

/// The shifted diagram `S(mu)` as the heap of a dominant minuscule element in
/// type B, colored by `c'(i,j) = j - i`.
pub fn build_shifted_type_b(mu: &[usize]) -> Result<ColoredPoset, DcError> {
    check_strict(mu)?;
    let cells = shifted_cells(mu);
    let poset = grid_poset(&cells)?;
    let m = mu[0];
    let mut cartan = vec![vec![0i64; m]; m];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for i in 1..m {
        cartan[i - 1][i] = -1;
        cartan[i][i - 1] = -1;
    }
    if m >= 2 {
        cartan[0][1] = -2;
    }
    let names = (0..m).map(|c| c.to_string()).collect();
    let graph = ColorGraph::from_cartan(names, cartan)?;
    let color = cells.iter().map(|&(i, j)| (j - i) as usize).collect();
    let cp = ColoredPoset::new(
        poset,
        color,
        graph,
        Structure::Heap,
        Family::ShiftedTypeB(mu.to_vec()),
    )?;
    verify_coloring(&cp).map_err(DcError::ColoringFailed)?;
    Ok(cp)
}

/// The swivel, colored from its E_6 top tree.
pub fn build_swivel() -> Result<ColoredPoset, DcError> {
    let poset = grid_poset(&SWIVEL_CELLS)?;
    let mut cp = compute_coloring(&poset, None)?;
    cp.family = Family::Swivel;
    Ok(cp)
}

/// A rooted tree on `0..n` given by `(child, parent)` pairs. The root is the
/// maximum and every element gets its own color.
pub fn build_tree(n: usize, covers: &[(Elem, Elem)]) -> Result<ColoredPoset, DcError> {
    if n == 0 {
        return Err(DcError::NotATree("empty".into()));
    }
    let mut parent = vec![None; n];
    for &(c, p) in covers {
        if c >= n || p >= n {
            return Err(DcError::NotATree(format!("pair ({c},{p}) out of range")));
        }
        if parent[c].replace(p).is_some() {
            return Err(DcError::NotATree(format!("element {c} has two parents")));
        }
    }
    let roots = parent.iter().filter(|p| p.is_none()).count();
    if roots != 1 {
        return Err(DcError::NotATree(format!("{roots} roots")));
    }
    let poset = Poset::from_covers(n, covers).map_err(|e| DcError::NotATree(e.to_string()))?;
    let names = (0..n).map(|x| x.to_string()).collect();
    let graph = ColorGraph::simply_laced(names, covers);
    let cp = ColoredPoset::new(
        poset,
        (0..n).collect(),
        graph,
        Structure::DComplete,
        Family::Tree,
    )?;
    verify_coloring(&cp).map_err(DcError::ColoringFailed)?;
    Ok(cp)
}

/// The heap of a reduced word `letters[0] letters[1] ...` (first letter
/// minimal). Positions `a < b` with equal or non-commuting letters satisfy
/// `a < b` in the heap.
pub fn build_heap(letters: &[usize], graph: ColorGraph) -> Result<ColoredPoset, DcError> {
    if letters.iter().any(|&c| c >= graph.rank()) {
        return Err(DcError::InvalidCartan("letter outside the diagram".into()));
    }
    if !weyl::is_reduced(&graph, letters).map_err(|_| DcError::Overflow)? {
        return Err(DcError::NonReducedWord);
    }
    let mut pairs = Vec::new();
    for (a, &i) in letters.iter().enumerate() {
        for (b, &j) in letters.iter().enumerate().skip(a + 1) {
            if i == j || graph.adjacent(i, j) {
                pairs.push((a, b));
            }
        }
    }
    let poset = Poset::from_covers(letters.len(), &pairs)?;
    let cp = ColoredPoset::new(
        poset,
        letters.to_vec(),
        graph,
        Structure::Heap,
        Family::Heap,
    )?;
    verify_coloring(&cp).map_err(DcError::ColoringFailed)?;
    Ok(cp)
}

fn forest_bfs(p: &Poset, forest: ElemSet) -> Vec<Elem> {
    let mut order = Vec::new();
    let mut queue: VecDeque<Elem> = p.maximal_elements().intersection(forest).iter().collect();
    while let Some(x) = queue.pop_front() {
        order.push(x);
        queue.extend(p.lower_covers(x).intersection(forest).iter());
    }
    order
}

/// Extends a bijective labeling of the top forest to a d-complete coloring.
/// Without labels the forest is named `0, 1, ...` in breadth-first order from
/// the maximal elements.
pub fn compute_coloring(
    p: &Poset,
    gamma_labels: Option<&BTreeMap<Elem, String>>,
) -> Result<ColoredPoset, DcError> {
    let verdict = super::check_dcomplete(p);
    if !verdict.is_ok() {
        return Err(DcError::NotDComplete(format!(
            "{:?}",
            verdict.violations[0]
        )));
    }
    let forest = top_forest(p);
    let order = forest_bfs(p, forest);
    let names: Vec<String> = match gamma_labels {
        None => (0..order.len()).map(|i| i.to_string()).collect(),
        Some(labels) => {
            let keys: ElemSet = labels.keys().copied().collect();
            if keys != forest || labels.len() != forest.len() {
                return Err(DcError::ColoringFailed(
                    "labels must cover exactly the top forest".into(),
                ));
            }
            let names: Vec<String> = order.iter().map(|x| labels[x].clone()).collect();
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != names.len() {
                return Err(DcError::ColoringFailed("labels must be distinct".into()));
            }
            names
        }
    };
    let mut color: Vec<Option<usize>> = vec![None; p.len()];
    for (idx, &x) in order.iter().enumerate() {
        color[x] = Some(idx);
    }
    let edges: Vec<(usize, usize)> = p
        .covers()
        .iter()
        .filter(|(a, b)| forest.contains(*a) && forest.contains(*b))
        .map(|&(a, b)| (color[a].unwrap(), color[b].unwrap()))
        .collect();
    let graph = ColorGraph::simply_laced(names, &edges);
    let intervals = super::find_dk_intervals(p);
    for &y in p.linear_extension().iter().rev() {
        if color[y].is_some() {
            continue;
        }
        let mut found = None;
        for iv in intervals.iter().filter(|iv| iv.bottom == y) {
            let c = color[iv.top].ok_or_else(|| {
                DcError::ColoringFailed(format!("top of interval above {y} uncolored"))
            })?;
            if found.is_some_and(|f| f != c) {
                return Err(DcError::ColoringFailed(format!(
                    "conflicting colors forced on element {y}"
                )));
            }
            found = Some(c);
        }
        color[y] = Some(found.ok_or_else(|| {
            DcError::ColoringFailed(format!("element {y} is not the bottom of any d_k-interval"))
        })?);
    }
    let color = color.into_iter().map(Option::unwrap).collect();
    let cp = ColoredPoset::new(
        p.clone(),
        color,
        graph,
        Structure::DComplete,
        Family::General,
    )?;
    verify_coloring(&cp).map_err(DcError::ColoringFailed)?;
    Ok(cp)
}

/// Exhaustive check of the coloring conditions. d-complete posets must
/// satisfy all of (C1)-(C5); heaps only (C1), (C4) and (C5).
pub fn verify_coloring(cp: &ColoredPoset) -> Result<(), String> {
    let p = cp.poset();
    let g = cp.graph();
    let n = p.len();
    let name = |x: Elem| p.element_name(x);
    for x in 0..n {
        for y in x + 1..n {
            let (cx, cy) = (cp.color(x), cp.color(y));
            if !p.comparable(x, y) && (cx == cy || g.adjacent(cx, cy)) {
                return Err(format!(
                    "(C1/C5) incomparable {} and {} have equal or adjacent colors",
                    name(x),
                    name(y)
                ));
            }
        }
    }
    for &(lo, hi) in p.covers() {
        if !g.adjacent(cp.color(lo), cp.color(hi)) {
            return Err(format!(
                "(C4) cover {} < {} has non-adjacent colors",
                name(lo),
                name(hi)
            ));
        }
    }
    if cp.structure() == Structure::Heap {
        return Ok(());
    }
    for v in 0..n {
        for u in p.up_set(v).without(v).iter() {
            let members = p.interval_members(v, u);
            if p.is_chain(members) {
                let colors: ElemSet = members.iter().map(|x| cp.color(x)).collect();
                if colors.len() != members.len() {
                    return Err(format!(
                        "(C2) chain [{}, {}] repeats a color",
                        name(v),
                        name(u)
                    ));
                }
            }
        }
    }
    for iv in cp.dk_intervals() {
        if cp.color(iv.bottom) != cp.color(iv.top) {
            return Err(format!(
                "(C3) d_k-interval [{}, {}] has different end colors",
                name(iv.bottom),
                name(iv.top)
            ));
        }
    }
    Ok(())
}

fn grid_set(cp: &ColoredPoset, cells: impl IntoIterator<Item = (i64, i64)>) -> ElemSet {
    cells
        .into_iter()
        .filter_map(|(i, j)| cp.cell(i, j))
        .collect()
}

fn arm_and_leg(cp: &ColoredPoset, i: i64, j: i64) -> ElemSet {
    let width = cp.len() as i64 + j;
    let depth = cp.len() as i64 + i;
    grid_set(
        cp,
        std::iter::once((i, j))
            .chain((j + 1..=width).map(|l| (i, l)))
            .chain((i + 1..=depth).map(|k| (k, j))),
    )
}

/// Classical hook `H(i,j)` of a cell in a Young diagram.
pub fn shape_hook_cells(cp: &ColoredPoset, x: Elem) -> ElemSet {
    let (i, j) = cp.poset().label(x).expect("grid element");
    arm_and_leg(cp, i, j)
}

/// Shifted hook of a cell: arm, leg, and the part of row `j+1` right of
/// column `j`.
pub fn shifted_hook_cells(cp: &ColoredPoset, x: Elem) -> ElemSet {
    let (i, j) = cp.poset().label(x).expect("grid element");
    let width = cp.len() as i64 + j;
    arm_and_leg(cp, i, j).union(grid_set(cp, (j + 1..=width).map(|l| (j + 1, l))))
}

/// The type-B hook `H'(i,j)`.
pub fn type_b_hook_cells(cp: &ColoredPoset, x: Elem) -> ElemSet {
    let (i, j) = cp.poset().label(x).expect("grid element");
    let mut s = arm_and_leg(cp, i, j);
    if i < j && cp.cell(j, j).is_some() {
        let width = cp.len() as i64 + j;
        s = s.union(grid_set(
            cp,
            std::iter::once((i, i)).chain((j..=width).map(|l| (j, l))),
        ));
    }
    s
}
