use num_bigint::BigInt;

use super::poly::{weighted_degree, SparsePoly};
use super::GenfunError;

/// A power series known up to weighted degree `cap`. The weights default to
/// all ones (total degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    poly: SparsePoly,
    cap: u32,
    weights: Vec<u32>,
}

/// First exponent at which two series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMismatch {
    pub exp: Vec<u32>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl TruncSeries {
    pub fn new(poly: &SparsePoly, cap: u32) -> Self {
        let weights = vec![1; poly.nvars()];
        Self::weighted(poly, cap, weights)
    }

    pub fn weighted(poly: &SparsePoly, cap: u32, weights: Vec<u32>) -> Self {
        assert_eq!(weights.len(), poly.nvars(), "one weight per variable");
        TruncSeries {
            poly: poly.truncated(cap, &weights),
            cap,
            weights,
        }
    }

    pub fn one(nvars: usize, cap: u32) -> Self {
        Self::new(&SparsePoly::one(nvars), cap)
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn coeff(&self, exp: &[u32]) -> BigInt {
        self.poly.coeff(exp)
    }

    fn same_window(&self, other: &Self) {
        assert_eq!(
            (self.cap, &self.weights),
            (other.cap, &other.weights),
            "series truncated differently"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_window(other);
        TruncSeries {
            poly: &self.poly + &other.poly,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_window(other);
        TruncSeries {
            poly: &self.poly - &other.poly,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_window(other);
        TruncSeries {
            poly: self
                .poly
                .mul_truncated(&other.poly, self.cap, &self.weights),
            ..self.clone()
        }
    }

    /// Product with a polynomial, re-truncated.
    pub fn mul_poly(&self, p: &SparsePoly) -> Self {
        TruncSeries {
            poly: self.poly.mul_truncated(p, self.cap, &self.weights),
            ..self.clone()
        }
    }

    /// Multiplies by `1 / (1 - z^m) = 1 + z^m + z^{2m} + ...`.
    pub fn div_one_minus(&self, m: &[u32]) -> Result<Self, GenfunError> {
        let step = weighted_degree(m, &self.weights);
        if step == 0 {
            return Err(GenfunError::NonExpandableFactor(m.to_vec()));
        }
        let mut total = self.poly.clone();
        let mut cur = self.poly.clone();
        loop {
            cur = cur.shift(m).truncated(self.cap, &self.weights);
            if cur.is_zero() {
                break;
            }
            total = &total + &cur;
        }
        Ok(TruncSeries {
            poly: total,
            ..self.clone()
        })
    }

    /// `1 + z^m + z^{2m} + ...` up to the cap.
    pub fn geometric(m: &[u32], cap: u32) -> Result<Self, GenfunError> {
        Self::one(m.len(), cap).div_one_minus(m)
    }

    /// Image under a monomial map, with new truncation weights. The caller
    /// guarantees that new weighted degrees equal old ones.
    pub fn map_linear(&self, m: &[Vec<u32>], weights: Vec<u32>) -> Self {
        TruncSeries::weighted(&self.poly.map_linear(m), self.cap, weights)
    }

    /// First differing exponent in the order of the exponent vectors.
    pub fn first_difference(&self, other: &Self) -> Option<SeriesMismatch> {
        let diff = &self.poly - &other.poly;
        let exp = diff.terms().next()?.0.clone();
        Some(SeriesMismatch {
            lhs: self.coeff(&exp),
            rhs: other.coeff(&exp),
            exp,
        })
    }
}
