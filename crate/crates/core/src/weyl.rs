//! Root-coordinate reflection actions, fully commutative normal forms, the
//! Demazure product, and inversion roots of heaps.

use std::fmt;

use thiserror::Error;

use num_bigint::BigInt;
use num_traits::One;

use crate::dcomplete::{ColorGraph, ColoredPoset};
use crate::excitation::{enumerate_excited, enumerate_k_excited};
use crate::genfun::{GenfunError, SparsePoly};
use crate::poset::{Elem, ElemSet, Filter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("root coordinate overflowed")]
    Overflow,
    #[error("word is not reduced")]
    NonReducedInput,
    #[error("vector is neither positive nor negative")]
    NotARoot,
}

/// Coordinates of a root-lattice vector in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootVec(Vec<i64>);

impl RootVec {
    pub fn zero(rank: usize) -> Self {
        RootVec(vec![0; rank])
    }

    /// The simple root `alpha_i`.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVec(v)
    }

    pub fn from_coords(coords: Vec<i64>) -> Self {
        RootVec(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `s_i(r) = r - <alpha_i^vee, r> alpha_i`.
pub fn reflect(g: &ColorGraph, i: usize, r: &RootVec) -> Result<RootVec, WeylError> {
    let mut pairing: i64 = 0;
    for (j, &rj) in r.0.iter().enumerate() {
        if rj != 0 {
            let t = g.cartan(i, j).checked_mul(rj).ok_or(WeylError::Overflow)?;
            pairing = pairing.checked_add(t).ok_or(WeylError::Overflow)?;
        }
    }
    let mut out = r.clone();
    out.0[i] = out.0[i].checked_sub(pairing).ok_or(WeylError::Overflow)?;
    Ok(out)
}

/// `w(r)` for `w = s_{a_1} ... s_{a_l}`: the last letter acts first.
pub fn apply_word(g: &ColorGraph, letters: &[usize], r: &RootVec) -> Result<RootVec, WeylError> {
    let mut v = r.clone();
    for &a in letters.iter().rev() {
        v = reflect(g, a, &v)?;
    }
    Ok(v)
}

/// `w^{-1}(r)` for `w = s_{a_1} ... s_{a_l}`: the first letter acts first.
pub fn apply_inverse(g: &ColorGraph, letters: &[usize], r: &RootVec) -> Result<RootVec, WeylError> {
    let mut v = r.clone();
    for &a in letters {
        v = reflect(g, a, &v)?;
    }
    Ok(v)
}

/// Roots `s_{a_1} ... s_{a_{k-1}} alpha_{a_k}` for every position `k`.
pub fn inversion_roots(g: &ColorGraph, letters: &[usize]) -> Result<Vec<RootVec>, WeylError> {
    (0..letters.len())
        .map(|k| apply_word(g, &letters[..k], &RootVec::simple(g.rank(), letters[k])))
        .collect()
}

/// A word is reduced iff all of its inversion roots are positive.
pub fn is_reduced(g: &ColorGraph, letters: &[usize]) -> Result<bool, WeylError> {
    for r in inversion_roots(g, letters)? {
        if !r.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn left_descent_unchecked(g: &ColorGraph, letters: &[usize], i: usize) -> Result<bool, WeylError> {
    let r = apply_inverse(g, letters, &RootVec::simple(g.rank(), i))?;
    if r.is_negative() {
        Ok(true)
    } else if r.is_positive() {
        Ok(false)
    } else {
        Err(WeylError::NotARoot)
    }
}

/// Whether `l(s_i w) < l(w)`, i.e. `w^{-1}(alpha_i)` is negative. The word
/// must be reduced.
pub fn is_descent_left(g: &ColorGraph, letters: &[usize], i: usize) -> Result<bool, WeylError> {
    if !is_reduced(g, letters)? {
        return Err(WeylError::NonReducedInput);
    }
    left_descent_unchecked(g, letters, i)
}

/// A reduced word for the Demazure product `s_{a_1} * ... * s_{a_l}`.
pub fn demazure_word(g: &ColorGraph, letters: &[usize]) -> Result<Vec<usize>, WeylError> {
    let mut w: Vec<usize> = Vec::with_capacity(letters.len());
    for &a in letters.iter().rev() {
        if !left_descent_unchecked(g, &w, a)? {
            w.insert(0, a);
        }
    }
    Ok(w)
}

/// Cartier–Foata normal form: each letter sits one level above the highest
/// earlier letter it does not commute with; letters are then listed level by
/// level in color order. Equal for any two words related by commutations.
pub fn normal_form(g: &ColorGraph, letters: &[usize]) -> Vec<usize> {
    let mut level = vec![0usize; letters.len()];
    for (k, &a) in letters.iter().enumerate() {
        level[k] = letters[..k]
            .iter()
            .zip(&level)
            .filter(|(&b, _)| b == a || !g.commute(a, b))
            .map(|(_, &l)| l + 1)
            .max()
            .unwrap_or(0);
    }
    let mut keyed: Vec<(usize, usize)> = level.into_iter().zip(letters.iter().copied()).collect();
    keyed.sort_unstable();
    keyed.into_iter().map(|(_, a)| a).collect()
}

/// The colors of `d` listed along the linear extension `ext`.
pub fn word_for_subset(cp: &ColoredPoset, d: ElemSet, ext: &[Elem]) -> Vec<usize> {
    ext.iter()
        .filter(|&&x| d.contains(x))
        .map(|&x| cp.color(x))
        .collect()
}

/// `beta(p_k) = s(p_1) ... s(p_{k-1}) alpha(p_k)` along `ext`, indexed by
/// element.
pub fn beta_roots(cp: &ColoredPoset, ext: &[Elem]) -> Result<Vec<RootVec>, WeylError> {
    let word: Vec<usize> = ext.iter().map(|&x| cp.color(x)).collect();
    let roots = inversion_roots(cp.graph(), &word)?;
    let mut out = vec![RootVec::zero(cp.graph().rank()); cp.len()];
    for (k, &x) in ext.iter().enumerate() {
        out[x] = roots[k].clone();
    }
    Ok(out)
}

/// `sum_{E} (-1)^{#E - #F} prod_{p in E} (1 - z^{H(p)})` over the
/// K-theoretical excited diagrams `E` of `f`.
pub fn billey_localization(cp: &ColoredPoset, f: Filter) -> Result<SparsePoly, GenfunError> {
    let hooks = cp.hooks()?;
    let rank = cp.graph().rank();
    let mut total = SparsePoly::zero(rank);
    for e in enumerate_k_excited(cp, f)? {
        let mut term = SparsePoly::one(rank);
        for p in e.diagram.iter() {
            term = &term * &SparsePoly::one_minus(hooks.exp(p));
        }
        if (e.diagram.len() - f.len()) % 2 == 1 {
            term = -&term;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// `sum_{D} prod_{p in D} (1 - z^{H(p)}) prod_{p in B(D)} z^{H(p)}` over the
/// excited diagrams of `f`; equal to [`billey_localization`].
pub fn billey_by_peaks(cp: &ColoredPoset, f: Filter) -> Result<SparsePoly, GenfunError> {
    let hooks = cp.hooks()?;
    let rank = cp.graph().rank();
    let mut total = SparsePoly::zero(rank);
    for s in enumerate_excited(cp, f)? {
        let mut peak = vec![0u32; rank];
        for p in s.peaks.iter() {
            for (c, k) in hooks.exp(p).iter().enumerate() {
                peak[c] += k;
            }
        }
        let mut term = SparsePoly::monomial(peak, BigInt::one());
        for p in s.diagram.iter() {
            term = &term * &SparsePoly::one_minus(hooks.exp(p));
        }
        total = &total + &term;
    }
    Ok(total)
}
