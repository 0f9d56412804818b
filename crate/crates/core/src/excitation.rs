//! Excited diagrams, excited peaks and K-theoretical excited diagrams.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::dcomplete::{ColoredPoset, Family, Structure};
use crate::poset::{Elem, ElemSet, Filter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExcitationError {
    #[error("element {0} is not active")]
    NotActive(Elem),
    #[error("diagram {diagram:?} reached with peaks {first:?} and {second:?}")]
    PeakMismatch {
        diagram: ElemSet,
        first: ElemSet,
        second: ElemSet,
    },
    #[error("{0:?} is not a K-theoretical excited diagram")]
    NotKExcited(ElemSet),
    #[error("the two constructions of K-theoretical excited diagrams disagree")]
    DecompositionMismatch,
    #[error("type-B cell rules require a shifted type-B heap")]
    NotTypeB,
}

/// An excited diagram together with its excited peaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExcitedState {
    pub diagram: ElemSet,
    pub peaks: ElemSet,
}

impl ExcitedState {
    pub fn initial(f: Filter) -> Self {
        ExcitedState {
            diagram: f.members(),
            peaks: ElemSet::EMPTY,
        }
    }
}

/// A K-theoretical excited diagram `E = D ⊔ S` with `D` excited and
/// `S ⊆ B(D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KExcitedDiagram {
    pub diagram: ElemSet,
    pub excited: ElemSet,
    pub extra: ElemSet,
}

impl KExcitedDiagram {
    pub fn is_ordinary(&self) -> bool {
        self.extra.is_empty()
    }
}

/// An active element `top` together with the element `bottom` it moves to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Active {
    pub top: Elem,
    pub bottom: Elem,
}

/// Elements whose color is adjacent to `i`.
pub fn neighbors(cp: &ColoredPoset, i: usize) -> ElemSet {
    cp.graph()
        .neighbors(i)
        .fold(ElemSet::EMPTY, |acc, j| acc.union(cp.color_class(j)))
}

/// Elements `u` of `d` with a partner `v` outside `d` such that
/// `[v,u] ∩ d ∩ N_{c(u)}` is empty.
pub fn active_elements(cp: &ColoredPoset, d: ElemSet) -> Vec<Active> {
    d.iter()
        .filter_map(|u| {
            let v = cp.lower_partner(u)?;
            if d.contains(v) {
                return None;
            }
            let span = cp.poset().interval_members(v, u);
            span.intersection(d)
                .is_disjoint(neighbors(cp, cp.color(u)))
                .then_some(Active { top: u, bottom: v })
        })
        .collect()
}

/// Applies the elementary excitation at `u`, updating the peaks.
pub fn excite(
    cp: &ColoredPoset,
    state: ExcitedState,
    u: Elem,
) -> Result<ExcitedState, ExcitationError> {
    let act = active_elements(cp, state.diagram)
        .into_iter()
        .find(|a| a.top == u)
        .ok_or(ExcitationError::NotActive(u))?;
    let span = cp.poset().interval_members(act.bottom, u);
    Ok(ExcitedState {
        diagram: state.diagram.without(u).with(act.bottom),
        peaks: state
            .peaks
            .difference(span.intersection(neighbors(cp, cp.color(u))))
            .with(u),
    })
}

/// All excited diagrams of `f` with their peaks, sorted by diagram.
pub fn enumerate_excited(
    cp: &ColoredPoset,
    f: Filter,
) -> Result<Vec<ExcitedState>, ExcitationError> {
    bfs(ExcitedState::initial(f), |s| {
        active_elements(cp, s.diagram)
            .into_iter()
            .map(|a| excite(cp, s, a.top))
            .collect()
    })
}

fn bfs(
    start: ExcitedState,
    step: impl Fn(ExcitedState) -> Result<Vec<ExcitedState>, ExcitationError>,
) -> Result<Vec<ExcitedState>, ExcitationError> {
    let mut seen: BTreeMap<ElemSet, ElemSet> = BTreeMap::new();
    seen.insert(start.diagram, start.peaks);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for next in step(s)? {
            match seen.get(&next.diagram) {
                Some(&peaks) if peaks != next.peaks => {
                    return Err(ExcitationError::PeakMismatch {
                        diagram: next.diagram,
                        first: peaks,
                        second: next.peaks,
                    })
                }
                Some(_) => {}
                None => {
                    seen.insert(next.diagram, next.peaks);
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|(diagram, peaks)| ExcitedState { diagram, peaks })
        .collect())
}

/// Elements `x ∉ d` having some `y ∈ d` of the same color below with
/// `[y,x] ∩ d ∩ N_{c(x)}` empty. Equals the excited peaks of `d`.
pub fn peaks_direct(cp: &ColoredPoset, d: ElemSet) -> ElemSet {
    cp.poset()
        .elements()
        .difference(d)
        .iter()
        .filter(|&x| witness_below(cp, d, x))
        .collect()
}

fn witness_below(cp: &ColoredPoset, set: ElemSet, x: Elem) -> bool {
    let p = cp.poset();
    let n = neighbors(cp, cp.color(x));
    cp.color_class(cp.color(x))
        .intersection(set)
        .intersection(p.down_set(x))
        .without(x)
        .iter()
        .any(|y| p.interval_members(y, x).intersection(set).is_disjoint(n))
}

/// `S(E)`: elements of `e` with an equally colored witness below them in `e`.
pub fn extra_part(cp: &ColoredPoset, e: ElemSet) -> ElemSet {
    e.iter().filter(|&x| witness_below(cp, e, x)).collect()
}

/// Splits `e` as `D ⊔ S(E)` and checks that `D` is one of `excited` with
/// `S(E) ⊆ B(D)`.
pub fn split_k_excited(
    cp: &ColoredPoset,
    excited: &[ExcitedState],
    e: ElemSet,
) -> Result<KExcitedDiagram, ExcitationError> {
    let extra = extra_part(cp, e);
    let d = e.difference(extra);
    let state = excited
        .binary_search_by_key(&d, |s| s.diagram)
        .map(|i| excited[i])
        .map_err(|_| ExcitationError::NotKExcited(e))?;
    if !extra.is_subset(state.peaks) {
        return Err(ExcitationError::NotKExcited(e));
    }
    Ok(KExcitedDiagram {
        diagram: e,
        excited: d,
        extra,
    })
}

/// All K-theoretical excited diagrams of `f`, by closure under ordinary and
/// K-theoretical excitations. Each one is split and the result is compared
/// with `{D ⊔ S : S ⊆ B(D)}`.
pub fn enumerate_k_excited(
    cp: &ColoredPoset,
    f: Filter,
) -> Result<Vec<KExcitedDiagram>, ExcitationError> {
    let mut seen = BTreeSet::from([f.members()]);
    let mut queue = VecDeque::from([f.members()]);
    while let Some(e) = queue.pop_front() {
        for a in active_elements(cp, e) {
            for next in [e.without(a.top).with(a.bottom), e.with(a.bottom)] {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    let excited = enumerate_excited(cp, f)?;
    let mut expected = BTreeSet::new();
    for s in &excited {
        for sub in subsets(s.peaks) {
            expected.insert(s.diagram.union(sub));
        }
    }
    if expected != seen {
        return Err(ExcitationError::DecompositionMismatch);
    }
    seen.into_iter()
        .map(|e| split_k_excited(cp, &excited, e))
        .collect()
}

/// All subsets of `s`.
pub fn subsets(s: ElemSet) -> impl Iterator<Item = ElemSet> {
    let elems = s.to_vec();
    (0u64..1 << elems.len()).map(move |mask| {
        elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    })
}

/// Active cells of a shifted type-B heap by the explicit cell rules.
pub fn type_b_active_cells(cp: &ColoredPoset, d: ElemSet) -> Result<Vec<Active>, ExcitationError> {
    if !matches!(cp.family(), Family::ShiftedTypeB(_)) || cp.structure() != Structure::Heap {
        return Err(ExcitationError::NotTypeB);
    }
    let outside = |i: i64, j: i64| cp.cell(i, j).is_some_and(|x| !d.contains(x));
    Ok(d.iter()
        .filter_map(|u| {
            let (i, j) = cp.poset().label(u)?;
            let ok = if i < j {
                outside(i, j + 1) && outside(i + 1, j) && outside(i + 1, j + 1)
            } else {
                outside(i, i + 1) && outside(i + 1, i + 1)
            };
            ok.then(|| Active {
                top: u,
                bottom: cp.cell(i + 1, j + 1).unwrap(),
            })
        })
        .collect())
}

/// Elementary excitation of a shifted type-B heap by the explicit cell rules.
pub fn type_b_excite(
    cp: &ColoredPoset,
    state: ExcitedState,
    u: Elem,
) -> Result<ExcitedState, ExcitationError> {
    let act = type_b_active_cells(cp, state.diagram)?
        .into_iter()
        .find(|a| a.top == u)
        .ok_or(ExcitationError::NotActive(u))?;
    let (i, j) = cp.poset().label(u).unwrap();
    let mut peaks = state.peaks;
    let mut cleared = vec![(i, j + 1)];
    if i < j {
        cleared.push((i + 1, j));
    }
    for x in cleared.into_iter().filter_map(|(a, b)| cp.cell(a, b)) {
        peaks.remove(x);
    }
    Ok(ExcitedState {
        diagram: state.diagram.without(u).with(act.bottom),
        peaks: peaks.with(u),
    })
}

/// Excited diagrams of a shifted type-B heap by the explicit cell rules.
pub fn enumerate_excited_type_b_cells(
    cp: &ColoredPoset,
    f: Filter,
) -> Result<Vec<ExcitedState>, ExcitationError> {
    type_b_active_cells(cp, f.members())?;
    bfs(ExcitedState::initial(f), |s| {
        type_b_active_cells(cp, s.diagram)?
            .into_iter()
            .map(|a| type_b_excite(cp, s, a.top))
            .collect()
    })
}
