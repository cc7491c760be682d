//! Parsing of partition, filter and condition arguments.
//!
//! Partitions are given as block lists (`[[0,1],[2]]`), as their JSON form
//! (`{"rgs":[0,0,1]}`, `{"prefix":{"rgs":[..]},"tail":"singletons"}`) or as
//! the keywords `omega` / `all-singletons`. Other structured arguments are
//! inline JSON when they start with `{` or `[`, and a file path otherwise.

use anyhow::{anyhow, bail, Context, Result};
use dualramsey::filters::FilterBase;
use dualramsey::forcing::LaverTree;
use dualramsey::{FinPart, Part, XPart};
use serde::de::DeserializeOwned;
use std::fs;

fn blocks(arg: &str) -> Result<Vec<Vec<usize>>> {
    serde_json::from_str(arg).with_context(|| format!("not a block list: {arg}"))
}

fn is_omega(arg: &str) -> bool {
    matches!(arg.trim(), "omega" | "ω" | "all-singletons")
}

/// A partition of some `[0, m)`; blocks must cover it without gaps.
pub fn fin(arg: &str) -> Result<FinPart> {
    let arg = arg.trim();
    if arg.starts_with('{') {
        return serde_json::from_str(arg).map_err(|e| anyhow!("{e}"));
    }
    Ok(FinPart::from_blocks(blocks(arg)?)?)
}

/// An eventually-singleton partition; unlisted points are singletons.
pub fn xpart(arg: &str) -> Result<XPart> {
    let arg = arg.trim();
    if is_omega(arg) {
        return Ok(XPart::omega());
    }
    if arg.starts_with('{') {
        if arg.contains("\"prefix\"") {
            return serde_json::from_str(arg).map_err(|e| anyhow!("{e}"));
        }
        return Ok(XPart::from_prefix(fin(arg)?));
    }
    Ok(XPart::from_blocks(blocks(arg)?)?)
}

/// Finite unless given as `omega`, `omega:<blocks>` or with a tail.
pub fn part(arg: &str) -> Result<Part> {
    let arg = arg.trim();
    if is_omega(arg) || arg.contains("\"prefix\"") {
        return Ok(Part::Omega(xpart(arg)?));
    }
    if let Some(rest) = arg.strip_prefix("omega:") {
        return Ok(Part::Omega(xpart(rest)?));
    }
    Ok(Part::Fin(fin(arg)?))
}

/// A JSON document given inline or as a path.
pub fn json_arg<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", short(arg)))
}

/// A filter base: `{"members":[...]}` inline or in a file, or a single
/// partition generating a principal filter.
pub fn base(arg: &str) -> Result<FilterBase> {
    let trimmed = arg.trim();
    let inline_part = trimmed.starts_with('{') && !trimmed.contains("\"members\"");
    if inline_part || trimmed.starts_with('[') || is_omega(trimmed) {
        return Ok(FilterBase::principal(xpart(trimmed)?));
    }
    json_arg(arg)
}

/// A truncated tree: a document `{stem, depth, dom_bound, x_of}`, or the
/// uniform tree on `--stem` and `--cu` at `--depth` and `--dom-bound`.
#[derive(clap::Args)]
pub struct TreeArgs {
    #[arg(long, conflicts_with_all = ["stem", "cu"])]
    pub tree: Option<String>,
    #[arg(long)]
    pub stem: Option<String>,
    #[arg(long)]
    pub cu: Option<String>,
}

impl TreeArgs {
    pub fn load(&self, depth: usize, dom_bound: usize) -> Result<LaverTree> {
        match (&self.tree, &self.cu) {
            (Some(doc), _) => json_arg(doc),
            (None, Some(cu)) => {
                let stem = self.stem.as_deref().map(fin).transpose()?.unwrap_or_else(FinPart::empty);
                Ok(LaverTree::uniform(stem, &xpart(cu)?, depth, dom_bound))
            }
            (None, None) => bail!("give --tree, or --cu (and optionally --stem) for a uniform tree"),
        }
    }
}

/// A list of finite partitions, each in any of the accepted forms.
pub fn fin_list(arg: &str) -> Result<Vec<FinPart>> {
    let items: Vec<serde_json::Value> = json_arg(arg)?;
    items.iter().map(fin_value).collect()
}

pub fn fin_value(v: &serde_json::Value) -> Result<FinPart> {
    match v {
        serde_json::Value::String(s) => fin(s),
        other => fin(&other.to_string()),
    }
}

/// A partition read from one NDJSON line: JSON form or a block list.
pub fn part_line(line: &str) -> Result<Part> {
    let line = line.trim();
    if line.starts_with('{') {
        return part(line);
    }
    if line.starts_with('[') {
        return Ok(Part::Fin(fin(line)?));
    }
    bail!("not a partition: {line}")
}

fn short(arg: &str) -> String {
    if arg.len() > 40 {
        format!("{}…", &arg[..arg.char_indices().nth(40).map_or(arg.len(), |(i, _)| i)])
    } else {
        arg.to_string()
    }
}
