//! ASCII pictures of grid-labelled posets.

use dcomplete::{ColoredPoset, Elem, ElemSet};

/// One line per row, one slot per column padded to the widest symbol.
/// `symbol` gives the text for each element; cells outside the poset are
/// blank.
pub fn grid_with(cp: &ColoredPoset, symbol: impl Fn(Elem) -> String) -> Option<String> {
    let labels = cp.poset().labels()?;
    let rows = labels.iter().map(|c| c.0);
    let cols = labels.iter().map(|c| c.1);
    let (r0, r1) = (rows.clone().min()?, rows.max()?);
    let (c0, c1) = (cols.clone().min()?, cols.max()?);
    let width = (0..cp.len())
        .map(|x| symbol(x).chars().count())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for i in r0..=r1 {
        let mut line = String::new();
        for j in c0..=c1 {
            let s = cp.cell(i, j).map(&symbol).unwrap_or_default();
            line.push_str(&format!("{s:<width$} "));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Some(out)
}

/// `#` for members of `diagram`, `*` for members of `extra`, `x` for
/// `marks`, `.` elsewhere.
pub fn diagram(
    cp: &ColoredPoset,
    diagram: ElemSet,
    extra: ElemSet,
    marks: ElemSet,
) -> Option<String> {
    grid_with(cp, |x| {
        let c = if extra.contains(x) {
            '*'
        } else if diagram.contains(x) {
            '#'
        } else if marks.contains(x) {
            'x'
        } else {
            '.'
        };
        c.to_string()
    })
}
