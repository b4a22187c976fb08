//! On-disk formats: the plain-text poset file and the JSON realizer
//! interchange format.

use serde::{Deserialize, Serialize};

use bdim::realizer::{BooleanRealizer, FamilyLayout, TruthFn};
use bdim::{LinearOrder, Poset};

use crate::CliError;

/// Parses the poset file format: the first significant line is
/// `poset <n>`, every following one `<a> <b>` meaning `a < b`; `#` starts a
/// comment. Errors carry 1-based line numbers.
pub fn parse_poset(text: &str) -> Result<Poset, CliError> {
    let mut n: Option<usize> = None;
    let mut rel = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match n {
            None => {
                let mut it = line.split_whitespace();
                if it.next() != Some("poset") {
                    return Err(CliError::Input(format!(
                        "line {lineno}: expected `poset <n>` header, got `{line}`"
                    )));
                }
                let count = it
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .filter(|&c| c >= 1)
                    .ok_or_else(|| {
                        CliError::Input(format!("line {lineno}: invalid ground-set size"))
                    })?;
                if it.next().is_some() {
                    return Err(CliError::Input(format!(
                        "line {lineno}: trailing tokens after header"
                    )));
                }
                n = Some(count);
            }
            Some(count) => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(CliError::Input(format!(
                        "line {lineno}: expected `<a> <b>`, got `{line}`"
                    )));
                }
                let a = parts[0].parse::<usize>().map_err(|_| {
                    CliError::Input(format!("line {lineno}: `{}` is not an element", parts[0]))
                })?;
                let b = parts[1].parse::<usize>().map_err(|_| {
                    CliError::Input(format!("line {lineno}: `{}` is not an element", parts[1]))
                })?;
                if a >= count || b >= count {
                    return Err(CliError::Input(format!(
                        "line {lineno}: element out of range (n = {count})"
                    )));
                }
                if a == b {
                    return Err(CliError::Input(format!(
                        "line {lineno}: {a} < {a} is not strict"
                    )));
                }
                rel.push((a, b));
            }
        }
    }
    let n = n.ok_or_else(|| CliError::Input("missing `poset <n>` header".into()))?;
    Poset::from_relations(n, &rel)
        .map_err(|e| CliError::Input(format!("relations do not form a strict order: {e}")))
}

/// Writes a poset as its cover pairs; parsing the output reproduces the
/// poset exactly.
pub fn write_poset(p: &Poset, comment: &str) -> String {
    let mut s = String::new();
    if !comment.is_empty() {
        s.push_str(&format!("# {comment}\n"));
    }
    s.push_str(&format!("poset {}\n", p.n()));
    for (a, b) in p.cover_pairs() {
        s.push_str(&format!("{a} {b}\n"));
    }
    s
}

/// JSON interchange form of a Boolean realizer: orders as element index
/// sequences, the truth function as a named procedure with its metadata,
/// and the family layout when the truth carries one.
#[derive(Serialize, Deserialize)]
pub struct RealizerFile {
    pub n: usize,
    pub orders: Vec<Vec<usize>>,
    pub truth: TruthFn,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layout: Option<FamilyLayout>,
}

impl RealizerFile {
    pub fn from_realizer(n: usize, r: &BooleanRealizer) -> Self {
        let layout = match &r.truth {
            TruthFn::Block(b) => Some(b.layout()),
            _ => None,
        };
        RealizerFile {
            n,
            orders: r.orders.iter().map(|l| l.elements().to_vec()).collect(),
            truth: r.truth.clone(),
            layout,
        }
    }

    /// Validates and converts to an in-memory realizer.
    pub fn into_realizer(self) -> Result<BooleanRealizer, CliError> {
        if self.orders.is_empty() {
            return Err(CliError::Input("realizer has no orders".into()));
        }
        if self.orders.len() != self.truth.arity() {
            return Err(CliError::Input(format!(
                "truth arity {} does not match {} orders",
                self.truth.arity(),
                self.orders.len()
            )));
        }
        let mut support: Option<Vec<usize>> = None;
        let mut orders = Vec::with_capacity(self.orders.len());
        for (i, seq) in self.orders.iter().enumerate() {
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(CliError::Input(format!("order {i} repeats an element")));
            }
            if sorted.iter().any(|&e| e >= self.n) {
                return Err(CliError::Input(format!(
                    "order {i} mentions an element outside [0, {})",
                    self.n
                )));
            }
            match &support {
                None => support = Some(sorted),
                Some(s) => {
                    if s != &sorted {
                        return Err(CliError::Input(format!(
                            "order {i} has a different support than order 0"
                        )));
                    }
                }
            }
            orders.push(LinearOrder::new(seq.clone()));
        }
        Ok(BooleanRealizer::new(orders, self.truth))
    }
}
