//! d-complete posets, excited diagrams and hook formulas for P-partitions.

pub mod dcomplete;
pub mod excitation;
pub mod genfun;
pub mod poset;
pub mod weyl;

pub use dcomplete::{ColorGraph, ColoredPoset, DcError, Family, HookTable, Structure};
pub use poset::{Elem, ElemSet, Filter, Poset, PosetError};
