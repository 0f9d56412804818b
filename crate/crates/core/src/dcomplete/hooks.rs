use serde_json::{Map, Value};

use super::{ColoredPoset, DcError, Structure};
use crate::poset::Elem;
use crate::weyl;

/// Hook monomials as exponent vectors over the colors, with hook lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookTable {
    pub exps: Vec<Vec<u32>>,
    pub lengths: Vec<u64>,
}

impl HookTable {
    pub fn exp(&self, x: Elem) -> &[u32] {
        &self.exps[x]
    }

    pub fn length(&self, x: Elem) -> u64 {
        self.lengths[x]
    }

    /// `z_a^k z_b ...` rendering of one hook monomial.
    pub fn monomial(&self, cp: &ColoredPoset, x: Elem) -> String {
        format_monomial(cp.graph().names(), &self.exps[x])
    }

    /// `{element: {color: exponent}}`, zero exponents omitted.
    pub fn to_json(&self, cp: &ColoredPoset) -> Value {
        let mut out = Map::new();
        for (x, e) in self.exps.iter().enumerate() {
            let mut m = Map::new();
            for (c, &k) in e.iter().enumerate() {
                if k > 0 {
                    m.insert(cp.graph().name(c).to_string(), Value::from(k));
                }
            }
            out.insert(cp.poset().element_name(x), Value::Object(m));
        }
        Value::Object(out)
    }
}

/// `z_a^k z_b ...`, or `1` for the zero vector.
pub fn format_monomial(names: &[String], exp: &[u32]) -> String {
    let parts: Vec<String> = exp
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(c, &k)| {
            if k == 1 {
                format!("z_{}", names[c])
            } else {
                format!("z_{}^{}", names[c], k)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Hook monomials of a d-complete poset by the recursive rule: the product
/// over the principal ideal, or `H(x) H(y) / H(v)` at the top of a
/// d_k-interval `[v,u]` with sides `x, y`.
pub fn hook_table(cp: &ColoredPoset) -> Result<HookTable, DcError> {
    if cp.structure() != Structure::DComplete || !cp.graph().is_simply_laced() {
        return Err(DcError::WrongStructure("simply-laced d-complete"));
    }
    let p = cp.poset();
    let rank = cp.graph().rank();
    let mut exps: Vec<Vec<i64>> = vec![Vec::new(); p.len()];
    let mut lengths = vec![0i64; p.len()];
    for u in p.linear_extension() {
        let mut tops = cp.dk_intervals().iter().filter(|iv| iv.top == u);
        let (e, h) = match tops.next() {
            Some(iv) => {
                if tops.next().is_some() {
                    return Err(DcError::MultipleDkTops(u));
                }
                let (x, y, v) = (iv.sides.0, iv.sides.1, iv.bottom);
                let e: Vec<i64> = (0..rank)
                    .map(|c| exps[x][c] + exps[y][c] - exps[v][c])
                    .collect();
                (e, lengths[x] + lengths[y] - lengths[v])
            }
            None => {
                let mut e = vec![0i64; rank];
                let below = p.down_set(u);
                for w in below.iter() {
                    e[cp.color(w)] += 1;
                }
                (e, below.len() as i64)
            }
        };
        if e.iter().any(|&k| k < 0) || h <= 0 {
            return Err(DcError::NegativeExponent(u));
        }
        debug_assert_eq!(e.iter().sum::<i64>(), h);
        exps[u] = e;
        lengths[u] = h;
    }
    Ok(HookTable {
        exps: exps
            .into_iter()
            .map(|e| e.into_iter().map(|k| k as u32).collect())
            .collect(),
        lengths: lengths.into_iter().map(|h| h as u64).collect(),
    })
}

/// Hook exponents read off the roots `beta(p_k) = s(p_1) ... s(p_{k-1})
/// alpha(p_k)` along a linear extension, cross-checked on a second one.
pub fn hook_table_heap(cp: &ColoredPoset) -> Result<HookTable, DcError> {
    let p = cp.poset();
    let first = p.linear_extension();
    let second = reverse_greedy_extension(cp);
    let a = weyl::beta_roots(cp, &first).map_err(|_| DcError::Overflow)?;
    let b = weyl::beta_roots(cp, &second).map_err(|_| DcError::Overflow)?;
    let mut exps = Vec::with_capacity(p.len());
    let mut lengths = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        if a[x] != b[x] {
            return Err(DcError::ExtensionDependent(x));
        }
        if a[x].coords().iter().any(|&k| k < 0) {
            return Err(DcError::NegativeExponent(x));
        }
        let e: Vec<u32> = a[x]
            .coords()
            .iter()
            .map(|&k| u32::try_from(k).map_err(|_| DcError::Overflow))
            .collect::<Result<_, _>>()?;
        lengths.push(e.iter().map(|&k| k as u64).sum());
        exps.push(e);
    }
    Ok(HookTable { exps, lengths })
}

/// A linear extension that always takes the largest available element.
fn reverse_greedy_extension(cp: &ColoredPoset) -> Vec<Elem> {
    let p = cp.poset();
    let mut placed = crate::poset::ElemSet::EMPTY;
    let mut out = Vec::with_capacity(p.len());
    while out.len() < p.len() {
        let next = (0..p.len())
            .rev()
            .find(|&x| !placed.contains(x) && p.lower_covers(x).is_subset(placed))
            .expect("acyclic");
        placed.insert(next);
        out.push(next);
    }
    out
}
