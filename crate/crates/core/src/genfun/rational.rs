use std::collections::BTreeMap;

use num_bigint::Sign;

use super::poly::{degree, map_exp, Exp, SparsePoly};
use super::series::TruncSeries;
use super::GenfunError;

/// `numerator / prod (1 - z^m)` with the denominator kept factored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    numerator: SparsePoly,
    factors: Vec<Exp>,
}

impl RationalFn {
    /// Every factor `1 - z^m` must have `m` nonconstant.
    pub fn new(numerator: SparsePoly, mut factors: Vec<Exp>) -> Result<Self, GenfunError> {
        if let Some(bad) = factors.iter().find(|m| degree(m) == 0) {
            return Err(GenfunError::NonExpandableFactor(bad.clone()));
        }
        assert!(
            factors.iter().all(|m| m.len() == numerator.nvars()),
            "factor width"
        );
        factors.sort();
        Ok(RationalFn { numerator, factors })
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.numerator
    }

    /// Exponents `m` of the factors `1 - z^m`, sorted.
    pub fn factors(&self) -> &[Exp] {
        &self.factors
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn denominator(&self) -> SparsePoly {
        self.factors
            .iter()
            .fold(SparsePoly::one(self.nvars()), |acc, m| {
                &acc * &SparsePoly::one_minus(m)
            })
    }

    /// Exact equality by cross-multiplication, after cancelling shared
    /// denominator factors.
    pub fn cross_eq(&self, other: &Self) -> bool {
        let mut mine: BTreeMap<&Exp, i64> = BTreeMap::new();
        for m in &self.factors {
            *mine.entry(m).or_default() += 1;
        }
        for m in &other.factors {
            *mine.entry(m).or_default() -= 1;
        }
        let mut lhs = self.numerator.clone();
        let mut rhs = other.numerator.clone();
        for (m, k) in mine {
            let f = SparsePoly::one_minus(m);
            for _ in 0..k.max(0) {
                rhs = &rhs * &f;
            }
            for _ in 0..(-k).max(0) {
                lhs = &lhs * &f;
            }
        }
        lhs == rhs
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    pub fn reduced(&self) -> Self {
        let mut numerator = self.numerator.clone();
        let mut factors = Vec::new();
        for m in &self.factors {
            match divide_one_minus(&numerator, m) {
                Some(q) => numerator = q,
                None => factors.push(m.clone()),
            }
        }
        RationalFn { numerator, factors }
    }

    /// Power series expansion up to total degree `cap`.
    pub fn expand(&self, cap: u32) -> Result<TruncSeries, GenfunError> {
        self.expand_weighted(cap, vec![1; self.nvars()])
    }

    pub fn expand_weighted(&self, cap: u32, weights: Vec<u32>) -> Result<TruncSeries, GenfunError> {
        let mut s = TruncSeries::weighted(&self.numerator, cap, weights);
        for m in &self.factors {
            s = s.div_one_minus(m)?;
        }
        Ok(s)
    }

    /// Image under the monomial map `z^e -> z^{M e}`.
    pub fn map_linear(&self, m: &[Vec<u32>]) -> Result<Self, GenfunError> {
        RationalFn::new(
            self.numerator.map_linear(m),
            self.factors.iter().map(|f| map_exp(m, f)).collect(),
        )
    }

    pub fn to_text(&self, names: &[String]) -> String {
        let den: Vec<String> = self
            .factors
            .iter()
            .map(|m| format!("(1 - {})", crate::dcomplete::format_monomial(names, m)))
            .collect();
        if den.is_empty() {
            return self.numerator.to_text(names);
        }
        format!("({}) / ({})", self.numerator.to_text(names), den.join(""))
    }

    /// `(1 + 2q + q^2) / ((1 - q)(1 - q^3))` rendering of a univariate
    /// function.
    pub fn to_q_text(&self) -> String {
        assert_eq!(self.nvars(), 1, "univariate");
        let mut num = String::new();
        for (e, c) in self.numerator.terms() {
            let abs = c.magnitude().to_string();
            let mono = match (abs.as_str(), e[0]) {
                (_, 0) => abs.clone(),
                ("1", k) => q_power(k),
                (a, k) => format!("{a}{}", q_power(k)),
            };
            num.push_str(match (num.is_empty(), c.sign() == Sign::Minus) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            });
            num.push_str(&mono);
        }
        if num.is_empty() {
            num.push('0');
        }
        if self.factors.is_empty() {
            return num;
        }
        let den: String = self
            .factors
            .iter()
            .map(|m| format!("(1 - {})", q_power(m[0])))
            .collect();
        format!("({num}) / ({den})")
    }
}

fn q_power(k: u32) -> String {
    match k {
        0 => "1".into(),
        1 => "q".into(),
        _ => format!("q^{k}"),
    }
}

/// `n / (1 - z^m)` when the quotient is a polynomial.
fn divide_one_minus(n: &SparsePoly, m: &[u32]) -> Option<SparsePoly> {
    let cap = n.total_degree()?;
    let ones = vec![1; n.nvars()];
    let mut q = n.clone();
    let mut cur = n.clone();
    loop {
        cur = cur.shift(m).truncated(cap, &ones);
        if cur.is_zero() {
            break;
        }
        q = &q + &cur;
    }
    (&q * &SparsePoly::one_minus(m) == *n).then_some(q)
}
