//! Exact polynomials and series, both sides of the skew hook formula for
//! P-partitions, and its specializations.

mod partitions;
mod poly;
mod rational;
mod series;

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::dcomplete::{ColoredPoset, DcError};
use crate::excitation::{enumerate_excited, subsets, ExcitationError};
use crate::poset::{Elem, ElemSet, Filter};

pub use partitions::{for_each_p_partition, p_partitions, PPartition};
pub use poly::{degree, weighted_degree, Exp, SparsePoly};
pub use rational::RationalFn;
pub use series::{SeriesMismatch, TruncSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenfunError {
    #[error("factor 1 - z^{0:?} has a constant monomial")]
    NonExpandableFactor(Exp),
    #[error("count is not an integer: {0}")]
    NonIntegerResult(String),
    #[error("weights annihilate the hook form of element {0}")]
    ZeroHookForm(Elem),
    #[error("weights must be positive, one per color")]
    InvalidWeights,
    #[error("malformed series JSON: {0}")]
    BadJson(String),
    #[error(transparent)]
    Dc(#[from] DcError),
    #[error(transparent)]
    Excitation(#[from] ExcitationError),
}

/// Outcome of a series comparison up to a degree cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesVerdict {
    pub cap: u32,
    pub terms: usize,
    pub mismatch: Option<SeriesMismatch>,
}

impl SeriesVerdict {
    fn compare(lhs: &TruncSeries, rhs: &TruncSeries) -> Self {
        SeriesVerdict {
            cap: lhs.cap(),
            terms: lhs.poly().len(),
            mismatch: lhs.first_difference(rhs),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// `z^sigma` summed over all `(P \ F)`-partitions of size at most `cap`.
pub fn lhs_series(cp: &ColoredPoset, f: Filter, cap: u32) -> TruncSeries {
    let rank = cp.graph().rank();
    let mut poly = SparsePoly::zero(rank);
    let rest = cp.poset().elements().difference(f.members());
    for_each_p_partition(cp.poset(), rest, cp.colors(), rank, cap, |_, exp| {
        poly.add_term(exp.to_vec(), BigInt::one());
    });
    TruncSeries::new(&poly, cap)
}

/// The excited-diagram side over the common denominator
/// `prod_{v in P} (1 - z^{H(v)})`, with numerator
/// `sum_D prod_{B(D)} z^{H(v)} prod_{v in D} (1 - z^{H(v)})`.
pub fn rhs_rational(cp: &ColoredPoset, f: Filter) -> Result<RationalFn, GenfunError> {
    let hooks = cp.hooks()?;
    let rank = cp.graph().rank();
    let mut numerator = SparsePoly::zero(rank);
    for state in enumerate_excited(cp, f)? {
        let mut peak = vec![0u32; rank];
        for v in state.peaks.iter() {
            for (c, k) in hooks.exp(v).iter().enumerate() {
                peak[c] += k;
            }
        }
        let mut term = SparsePoly::monomial(peak, BigInt::one());
        for v in state.diagram.iter() {
            term = &term * &SparsePoly::one_minus(hooks.exp(v));
        }
        numerator = &numerator + &term;
    }
    RationalFn::new(numerator, hooks.exps.clone())
}

/// Compares `lhs_series` with the expansion of `rhs_rational` up to `cap`.
pub fn verify_main_theorem(
    cp: &ColoredPoset,
    f: Filter,
    cap: u32,
) -> Result<SeriesVerdict, GenfunError> {
    let lhs = lhs_series(cp, f, cap);
    let rhs = rhs_rational(cp, f)?.expand(cap)?;
    Ok(SeriesVerdict::compare(&lhs, &rhs))
}

/// Checks `(1 - z[P \ F]) G_{P/F} = sum_{F'} (-1)^{#(F' \ F) - 1} G_{P/F'}`
/// up to `cap`, where `F'` runs over filters with `F' \ F` a nonempty
/// antichain. Those are exactly `F ∪ A` for nonempty `A` inside the maximal
/// elements of `P \ F`.
pub fn chevalley_recurrence_check(cp: &ColoredPoset, f: Filter, cap: u32) -> SeriesVerdict {
    let p = cp.poset();
    let rest = p.elements().difference(f.members());
    assert!(!rest.is_empty(), "recurrence needs F != P");
    let rank = cp.graph().rank();
    let mut skew = vec![0u32; rank];
    for v in rest.iter() {
        skew[cp.color(v)] += 1;
    }
    let lhs = lhs_series(cp, f, cap).mul_poly(&SparsePoly::one_minus(&skew));
    let mut rhs = TruncSeries::new(&SparsePoly::zero(rank), cap);
    for a in subsets(p.maximal_in(rest)).filter(|a| !a.is_empty()) {
        let g = lhs_series(
            cp,
            Filter::new(p, f.members().union(a)).expect("filter"),
            cap,
        );
        rhs = if a.len() % 2 == 1 {
            rhs.add(&g)
        } else {
            rhs.sub(&g)
        };
    }
    SeriesVerdict::compare(&lhs, &rhs)
}

/// Objects that can be pushed through a monomial substitution.
pub trait Specialize: Sized {
    fn nvars(&self) -> usize;
    fn specialize(&self, m: &[Vec<u32>], weights: Vec<u32>) -> Result<Self, GenfunError>;
}

impl Specialize for RationalFn {
    fn nvars(&self) -> usize {
        RationalFn::nvars(self)
    }
    fn specialize(&self, m: &[Vec<u32>], _weights: Vec<u32>) -> Result<Self, GenfunError> {
        self.map_linear(m)
    }
}

impl Specialize for TruncSeries {
    fn nvars(&self) -> usize {
        TruncSeries::nvars(self)
    }
    fn specialize(&self, m: &[Vec<u32>], weights: Vec<u32>) -> Result<Self, GenfunError> {
        Ok(self.map_linear(m, weights))
    }
}

impl Specialize for SparsePoly {
    fn nvars(&self) -> usize {
        SparsePoly::nvars(self)
    }
    fn specialize(&self, m: &[Vec<u32>], _weights: Vec<u32>) -> Result<Self, GenfunError> {
        Ok(self.map_linear(m))
    }
}

/// `z_i -> q` for every color.
pub fn q_specialize<T: Specialize>(x: &T) -> Result<T, GenfunError> {
    x.specialize(&[vec![1; x.nvars()]], vec![1])
}

/// `z_i -> t q` for `i = t_color` and `z_i -> q` otherwise. Variables are
/// `(t, q)`; series stay truncated in the `q`-degree.
pub fn trace_specialize<T: Specialize>(x: &T, t_color: usize) -> Result<T, GenfunError> {
    let n = x.nvars();
    let t_row = (0..n).map(|i| u32::from(i == t_color)).collect();
    x.specialize(&[t_row, vec![1; n]], vec![0, 1])
}

/// Identifies color `from` with color `to`, dropping variable `from`.
pub fn merge_colors<T: Specialize>(x: &T, from: usize, to: usize) -> Result<T, GenfunError> {
    let n = x.nvars();
    let keep: Vec<usize> = (0..n).filter(|&i| i != from).collect();
    let m: Vec<Vec<u32>> = keep
        .iter()
        .map(|&r| {
            (0..n)
                .map(|i| u32::from(i == r || (r == to && i == from)))
                .collect()
        })
        .collect();
    x.specialize(&m, vec![1; keep.len()])
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `n! sum_D prod_{v in P \ D} 1 / h(v)` with `n = #(P \ F)`: the number of
/// linear extensions of `P \ F`.
pub fn naruse_count(cp: &ColoredPoset, f: Filter) -> Result<BigUint, GenfunError> {
    let hooks = cp.hooks()?;
    let all = cp.poset().elements();
    let mut sum = BigRational::zero();
    for state in enumerate_excited(cp, f)? {
        let den: BigInt = all
            .difference(state.diagram)
            .iter()
            .map(|v| BigInt::from(hooks.length(v)))
            .product();
        sum += BigRational::new(BigInt::one(), den);
    }
    let n = all.len() - f.len();
    let total = sum * BigRational::from_integer(BigInt::from(factorial(n)));
    if !total.is_integer() || total.is_negative() {
        return Err(GenfunError::NonIntegerResult(total.to_string()));
    }
    Ok(total.to_integer().to_biguint().expect("nonnegative"))
}

/// Both sides of the colored hook formula at a weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredHookVerdict {
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl ColoredHookVerdict {
    pub fn is_ok(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn check_weights(cp: &ColoredPoset, a: &[BigRational]) -> Result<(), GenfunError> {
    if a.len() != cp.graph().rank() || a.iter().any(|x| !x.is_positive()) {
        return Err(GenfunError::InvalidWeights);
    }
    Ok(())
}

fn weight_of(cp: &ColoredPoset, a: &[BigRational], s: ElemSet) -> BigRational {
    s.iter().map(|v| a[cp.color(v)].clone()).sum()
}

/// Sum over linear extensions `q_1, ..., q_n` of `P \ F` (minimal first) of
/// `prod_i 1 / (a(q_1) + ... + a(q_i))`, by dynamic programming over the
/// filters between `F` and `P`.
pub fn colored_hook_lhs(
    cp: &ColoredPoset,
    f: Filter,
    a: &[BigRational],
) -> Result<BigRational, GenfunError> {
    check_weights(cp, a)?;
    fn go(
        cp: &ColoredPoset,
        a: &[BigRational],
        g: ElemSet,
        memo: &mut HashMap<ElemSet, BigRational>,
    ) -> BigRational {
        let p = cp.poset();
        let rest = p.elements().difference(g);
        if rest.is_empty() {
            return BigRational::one();
        }
        if let Some(v) = memo.get(&g) {
            return v.clone();
        }
        let mut total = BigRational::zero();
        for x in p.maximal_in(rest).iter() {
            total += go(cp, a, g.with(x), memo);
        }
        let v = total / weight_of(cp, a, rest);
        memo.insert(g, v.clone());
        v
    }
    Ok(go(cp, a, f.members(), &mut HashMap::new()))
}

/// `sum_D prod_{v in P \ D} 1 / <a, H(v)>`.
pub fn colored_hook_rhs(
    cp: &ColoredPoset,
    f: Filter,
    a: &[BigRational],
) -> Result<BigRational, GenfunError> {
    check_weights(cp, a)?;
    let hooks = cp.hooks()?;
    let forms: Vec<BigRational> = (0..cp.len())
        .map(|v| {
            hooks
                .exp(v)
                .iter()
                .zip(a)
                .map(|(&k, w)| w * BigInt::from(k))
                .sum()
        })
        .collect();
    if let Some(v) = forms.iter().position(|x| x.is_zero()) {
        return Err(GenfunError::ZeroHookForm(v));
    }
    let mut total = BigRational::zero();
    for state in enumerate_excited(cp, f)? {
        let prod: BigRational = cp
            .poset()
            .elements()
            .difference(state.diagram)
            .iter()
            .map(|v| forms[v].clone())
            .product();
        total += prod.recip();
    }
    Ok(total)
}

pub fn colored_hook_check(
    cp: &ColoredPoset,
    f: Filter,
    a: &[BigRational],
) -> Result<ColoredHookVerdict, GenfunError> {
    Ok(ColoredHookVerdict {
        lhs: colored_hook_lhs(cp, f, a)?,
        rhs: colored_hook_rhs(cp, f, a)?,
    })
}
