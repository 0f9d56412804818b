//! Poset and filter specifications given on the command line.

use std::fs;

use dcomplete::dcomplete::{BuilderSpec, FilterSpec};
use dcomplete::{ColoredPoset, ElemSet, Filter};

use crate::CliError;

/// Inline JSON when the argument starts with `{` or `[`, otherwise the
/// contents of the named file.
pub fn read_source(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))
}

pub fn parse_spec(arg: &str) -> Result<BuilderSpec, CliError> {
    let text = read_source(arg)?;
    BuilderSpec::from_json_str(&text).map_err(|e| CliError::Input(format!("poset spec: {e}")))
}

/// The filter named by `arg`, or the empty filter.
pub fn resolve_filter(cp: &ColoredPoset, arg: Option<&str>) -> Result<Filter, CliError> {
    match arg {
        None => Ok(Filter::new(cp.poset(), ElemSet::EMPTY).expect("empty set is a filter")),
        Some(arg) => Ok(FilterSpec::from_json_str(&read_source(arg)?)?.resolve(cp)?),
    }
}
