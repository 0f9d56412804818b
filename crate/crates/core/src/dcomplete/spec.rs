//! JSON builder specifications.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    build_heap, build_shape, build_shifted, build_shifted_type_b, build_swivel, build_tree,
    compute_coloring, ColorGraph, ColoredPoset, DcError, Family,
};
use crate::poset::{Elem, ElemSet, Filter, Poset, PosetJson};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub n: usize,
    /// `(child, parent)` pairs.
    pub covers: Vec<[Elem; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralSpec {
    #[serde(flatten)]
    pub poset: PosetJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_labels: Option<BTreeMap<Elem, String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeapSpec {
    pub word: Vec<usize>,
    pub cartan: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// One of the supported poset descriptions, e.g. `{"shape":[5,4,2,1]}` or
/// `{"swivel":true}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuilderSpec {
    Shape(Vec<usize>),
    Shifted(Vec<usize>),
    Swivel(bool),
    Tree(TreeSpec),
    #[serde(rename = "shifted_typeB")]
    ShiftedTypeB(Vec<usize>),
    General(GeneralSpec),
    Heap(HeapSpec),
}

impl BuilderSpec {
    pub fn build(&self) -> Result<ColoredPoset, DcError> {
        match self {
            BuilderSpec::Shape(l) => build_shape(l),
            BuilderSpec::Shifted(m) => build_shifted(m),
            BuilderSpec::Swivel(_) => build_swivel(),
            BuilderSpec::Tree(t) => {
                let pairs: Vec<(Elem, Elem)> = t.covers.iter().map(|c| (c[0], c[1])).collect();
                build_tree(t.n, &pairs)
            }
            BuilderSpec::ShiftedTypeB(m) => build_shifted_type_b(m),
            BuilderSpec::General(g) => {
                let p = Poset::from_json(&g.poset)?;
                compute_coloring(&p, g.gamma_labels.as_ref())
            }
            BuilderSpec::Heap(h) => {
                let names = h
                    .names
                    .clone()
                    .unwrap_or_else(|| (0..h.cartan.len()).map(|i| i.to_string()).collect());
                build_heap(&h.word, ColorGraph::from_cartan(names, h.cartan.clone())?)
            }
        }
    }

    /// Parses a builder spec; a bare poset JSON is read as `general`.
    pub fn from_json_str(s: &str) -> Result<BuilderSpec, serde_json::Error> {
        serde_json::from_str::<BuilderSpec>(s).or_else(|e| {
            serde_json::from_str::<PosetJson>(s)
                .map(|poset| {
                    BuilderSpec::General(GeneralSpec {
                        poset,
                        gamma_labels: None,
                    })
                })
                .map_err(|_| e)
        })
    }
}

/// An order filter given as a (strict) sub-partition of a shape, a list of
/// grid cells, or a list of element ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterSpec {
    Partition(Vec<usize>),
    Cells(Vec<(i64, i64)>),
    Elements(Vec<Elem>),
}

impl FilterSpec {
    pub fn from_json_str(s: &str) -> Result<FilterSpec, DcError> {
        serde_json::from_str(s).map_err(|e| {
            DcError::InvalidFilter(format!(
                "{e}; expected {{\"partition\":..}}, {{\"cells\":..}} or {{\"elements\":..}}"
            ))
        })
    }

    pub fn resolve(&self, cp: &ColoredPoset) -> Result<Filter, DcError> {
        let bad = DcError::InvalidFilter;
        let set = match self {
            FilterSpec::Partition(parts) => partition_cells(cp, parts).map_err(bad)?,
            FilterSpec::Cells(cells) => {
                let mut s = ElemSet::EMPTY;
                for &(i, j) in cells {
                    s.insert(
                        cp.cell(i, j)
                            .ok_or_else(|| bad(format!("no cell ({i},{j})")))?,
                    );
                }
                s
            }
            FilterSpec::Elements(xs) => {
                if let Some(x) = xs.iter().find(|&&x| x >= cp.len()) {
                    return Err(bad(format!("no element {x}")));
                }
                xs.iter().copied().collect()
            }
        };
        Filter::new(cp.poset(), set)
            .map_err(|_| bad(format!("{} is not an order filter", cp.set_names(set))))
    }
}

fn partition_cells(cp: &ColoredPoset, parts: &[usize]) -> Result<ElemSet, String> {
    if cp.family().partition().is_none() {
        return Err("partitions apply only to shapes and shifted shapes".into());
    }
    let strict = cp.family().is_shifted();
    let ordered = parts
        .windows(2)
        .all(|w| if strict { w[0] > w[1] } else { w[0] >= w[1] });
    if !ordered || parts.contains(&0) {
        let kind = if strict {
            "strict partition"
        } else {
            "partition"
        };
        return Err(format!("{parts:?} is not a {kind}"));
    }
    cp.subdiagram(parts)
        .ok_or_else(|| format!("{parts:?} does not fit inside the diagram"))
}

impl ColoredPoset {
    /// Builder spec that reproduces this poset, where one is known.
    pub fn family_spec(&self) -> Option<BuilderSpec> {
        match self.family() {
            Family::Shape(l) => Some(BuilderSpec::Shape(l.clone())),
            Family::Shifted(m) => Some(BuilderSpec::Shifted(m.clone())),
            Family::ShiftedTypeB(m) => Some(BuilderSpec::ShiftedTypeB(m.clone())),
            Family::Swivel => Some(BuilderSpec::Swivel(true)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_variants() {
        let cases = [
            (r#"{"shape":[3,1]}"#, 4),
            (r#"{"shifted":[3,1]}"#, 4),
            (r#"{"swivel":true}"#, 16),
            (r#"{"tree":{"n":3,"covers":[[1,0],[2,0]]}}"#, 3),
            (r#"{"shifted_typeB":[3,2,1]}"#, 6),
            (
                r#"{"general":{"n":4,"covers":[[0,1],[0,2],[1,3],[2,3]]}}"#,
                4,
            ),
            (r#"{"n":2,"covers":[[0,1]]}"#, 2),
            (r#"{"heap":{"word":[0,1],"cartan":[[2,-1],[-1,2]]}}"#, 2),
        ];
        for (s, n) in cases {
            let cp = BuilderSpec::from_json_str(s).unwrap().build().unwrap();
            assert_eq!(cp.len(), n, "{s}");
        }
    }

    #[test]
    fn filter_specs() {
        let cp = build_shape(&[3, 2]).unwrap();
        let f = |s: &str| FilterSpec::from_json_str(s).and_then(|spec| spec.resolve(&cp));
        assert_eq!(f(r#"{"partition":[2,1]}"#).unwrap().len(), 3);
        assert_eq!(f(r#"{"cells":[[1,1]]}"#).unwrap().len(), 1);
        assert_eq!(f(r#"{"elements":[]}"#).unwrap().len(), 0);
        assert!(f(r#"{"partition":[1,2]}"#).is_err());
        assert!(f(r#"{"partition":[4]}"#).is_err());
        assert!(f(r#"{"cells":[[2,2]]}"#).is_err());
        assert!(f(r#"{"elements":[9]}"#).is_err());
        assert!(f(r#"[1]"#).is_err());
        let sh = build_shifted(&[3, 2]).unwrap();
        assert!(FilterSpec::Partition(vec![2, 2]).resolve(&sh).is_err());
        let tree = build_tree(2, &[(1, 0)]).unwrap();
        assert!(FilterSpec::Partition(vec![1]).resolve(&tree).is_err());
    }

    #[test]
    fn round_trip() {
        let spec = BuilderSpec::ShiftedTypeB(vec![3, 1]);
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"shifted_typeB":[3,1]}"#);
        assert_eq!(BuilderSpec::from_json_str(&s).unwrap(), spec);
    }
}
