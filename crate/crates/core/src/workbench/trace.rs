//! Plain-text request traces: whitespace-separated item labels, `#` comment lines.

use crate::error::{Error, Result};
use crate::model::permutation::ItemList;
use crate::model::sequence::RequestSequence;

pub const DEFAULT_MAX_TOKENS: usize = 10_000_000;

/// Reads a trace. The item universe is the distinct tokens in first-appearance order.
pub fn ingest_trace(bytes: &[u8], max_tokens: usize) -> Result<(ItemList, RequestSequence)> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::InvalidTrace(format!("not valid UTF-8: {e}")))?;
    let mut tokens = Vec::new();
    for line in text.lines() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            if tokens.len() == max_tokens {
                return Err(Error::InvalidTrace(format!(
                    "more than {max_tokens} requests"
                )));
            }
            tokens.push(tok);
        }
    }
    if tokens.is_empty() {
        return Err(Error::EmptyList);
    }
    let mut seen = std::collections::HashSet::new();
    let universe: Vec<&str> = tokens.iter().copied().filter(|t| seen.insert(*t)).collect();
    let list = ItemList::new(universe)?;
    let sigma = RequestSequence::from_labels(&list, &tokens)?;
    Ok((list, sigma))
}

/// Writes a trace that [`ingest_trace`] reads back, with optional `#` header lines.
pub fn render_trace(list: &ItemList, sigma: &RequestSequence, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    out.push_str(&sigma.labels(list).join(" "));
    out.push('\n');
    out
}
