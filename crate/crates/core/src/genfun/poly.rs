use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use super::GenfunError;

pub type Exp = Vec<u32>;

/// Total degree of an exponent vector.
pub fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Weighted degree `sum w_i e_i`.
pub fn weighted_degree(e: &[u32], w: &[u32]) -> u32 {
    e.iter().zip(w).map(|(a, b)| a * b).sum()
}

fn add_exp(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A polynomial with big-integer coefficients over `nvars` variables,
/// stored sparsely with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Exp, BigInt>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exp: Exp, coef: BigInt) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coef);
        p
    }

    /// The variable `z_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    /// `1 - z^exp`.
    pub fn one_minus(exp: &[u32]) -> Self {
        let mut p = Self::one(exp.len());
        p.add_term(exp.to_vec(), -BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Exp, coef: BigInt) {
        assert_eq!(exp.len(), self.nvars, "exponent width");
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    /// Drops terms of weighted degree above `cap`.
    pub fn truncated(&self, cap: u32, weights: &[u32]) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weighted_degree(e, weights) <= cap)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product keeping only terms of weighted degree at most `cap`.
    pub fn mul_truncated(&self, other: &Self, cap: u32, weights: &[u32]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            let da = weighted_degree(ea, weights);
            if da > cap {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + weighted_degree(eb, weights) <= cap {
                    out.add_term(add_exp(ea, eb), ca * cb);
                }
            }
        }
        out
    }

    /// Multiplies by the monomial `z^exp`.
    pub fn shift(&self, exp: &[u32]) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exp(e, exp), c.clone()))
                .collect(),
        }
    }

    /// Image under the monomial map `z^e -> z^{M e}`, where row `r` of `m`
    /// gives the new exponent `sum_i m[r][i] e_i`.
    pub fn map_linear(&self, m: &[Vec<u32>]) -> Self {
        let mut out = Self::zero(m.len());
        for (e, c) in &self.terms {
            out.add_term(map_exp(m, e), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Sum of all coefficients (every variable set to 1).
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Human-readable form, terms sorted by degree then exponent.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Exp> = self.terms.keys().collect();
        keys.sort_by_key(|e| (degree(e), std::cmp::Reverse((*e).clone())));
        let mut out = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono = crate::dcomplete::format_monomial(names, e);
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            let a = c.abs();
            if mono == "1" {
                let _ = write!(out, "{a}");
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{a} {mono}");
            }
        }
        out
    }

    /// `{"terms":[{"exp":{name:k},"coef":"..."}]}`.
    pub fn to_json(&self, names: &[String]) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exp: Map<String, Value> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| (names[i].clone(), Value::from(k)))
                    .collect();
                json!({"exp": exp, "coef": c.to_string()})
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value, names: &[String]) -> Result<Self, GenfunError> {
        let bad = |m: &str| GenfunError::BadJson(m.to_string());
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut out = Self::zero(names.len());
        for t in terms {
            let mut e = vec![0u32; names.len()];
            let exp = t
                .get("exp")
                .and_then(Value::as_object)
                .ok_or_else(|| bad("missing exp"))?;
            for (name, k) in exp {
                let i = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| bad(&format!("unknown color {name}")))?;
                e[i] = k
                    .as_u64()
                    .and_then(|k| u32::try_from(k).ok())
                    .ok_or_else(|| bad("bad exponent"))?;
            }
            let coef: BigInt = t
                .get("coef")
                .and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad coefficient"))?;
            out.add_term(e, coef);
        }
        Ok(out)
    }
}

pub(crate) fn map_exp(m: &[Vec<u32>], e: &[u32]) -> Exp {
    m.iter()
        .map(|row| row.iter().zip(e).map(|(a, b)| a * b).sum())
        .collect()
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exp(ea, eb), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["0".into(), "1".into()]
    }

    #[test]
    fn arithmetic() {
        let x = SparsePoly::var(2, 0);
        let y = SparsePoly::var(2, 1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.coeff(&[1, 1]), BigInt::from(2));
        assert_eq!(sq.len(), 3);
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.to_text(&names()), "z_0^2 + 2 z_0 z_1 + z_1^2");
        assert_eq!(SparsePoly::one_minus(&[1, 0]).to_text(&names()), "1 - z_0");
    }

    #[test]
    fn json_round_trip() {
        let p = &SparsePoly::one_minus(&[2, 1]) * &SparsePoly::var(2, 1);
        let v = p.to_json(&names());
        assert_eq!(SparsePoly::from_json(&v, &names()).unwrap(), p);
    }

    #[test]
    fn linear_maps() {
        let p = SparsePoly::monomial(vec![2, 3], BigInt::one());
        let q = p.map_linear(&[vec![1, 1]]);
        assert_eq!(q.coeff(&[5]), BigInt::one());
    }
}
