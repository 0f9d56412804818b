use crate::poset::{Elem, ElemSet, Poset};

/// An order-reversing map `sigma` from a subset `support` of a poset to the
/// nonnegative integers: `x <= y` implies `sigma(x) >= sigma(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PPartition {
    pub support: ElemSet,
    /// Indexed by element id; zero outside the support.
    pub values: Vec<u32>,
}

impl PPartition {
    pub fn is_valid(&self, p: &Poset) -> bool {
        self.support.iter().all(|x| {
            p.up_set(x)
                .intersection(self.support)
                .iter()
                .all(|y| self.values[x] >= self.values[y])
        })
    }

    pub fn size(&self) -> u32 {
        self.values.iter().sum()
    }
}

/// Calls `visit(values, color_exponents)` for every P-partition on `s` of
/// size at most `cap`. Elements are assigned minimal first, each bounded by
/// the values below it and by the remaining size budget.
pub fn for_each_p_partition(
    p: &Poset,
    s: ElemSet,
    colors: &[usize],
    rank: usize,
    cap: u32,
    mut visit: impl FnMut(&[u32], &[u32]),
) {
    let order = p.linear_extension_of(s);
    let below: Vec<ElemSet> = order
        .iter()
        .map(|&x| p.down_set(x).without(x).intersection(s))
        .collect();
    let mut values = vec![0u32; p.len()];
    let mut exp = vec![0u32; rank];
    struct Ctx<'a, F> {
        order: &'a [Elem],
        below: &'a [ElemSet],
        colors: &'a [usize],
        visit: F,
    }
    fn go<F: FnMut(&[u32], &[u32])>(
        ctx: &mut Ctx<'_, F>,
        k: usize,
        budget: u32,
        values: &mut [u32],
        exp: &mut [u32],
    ) {
        if k == ctx.order.len() {
            (ctx.visit)(values, exp);
            return;
        }
        let x = ctx.order[k];
        let bound = ctx.below[k]
            .iter()
            .map(|y| values[y])
            .min()
            .unwrap_or(u32::MAX)
            .min(budget);
        let c = ctx.colors[x];
        for v in 0..=bound {
            values[x] = v;
            exp[c] += v;
            go(ctx, k + 1, budget - v, values, exp);
            exp[c] -= v;
        }
        values[x] = 0;
    }
    let mut ctx = Ctx {
        order: &order,
        below: &below,
        colors,
        visit: &mut visit,
    };
    go(&mut ctx, 0, cap, &mut values, &mut exp);
}

/// All P-partitions on `s` of size at most `cap`.
pub fn p_partitions(p: &Poset, s: ElemSet, cap: u32) -> Vec<PPartition> {
    let colors = vec![0; p.len()];
    let mut out = Vec::new();
    for_each_p_partition(p, s, &colors, 1, cap, |values, _| {
        out.push(PPartition {
            support: s,
            values: values.to_vec(),
        })
    });
    out
}
