use std::fmt::Write;

use super::Graph;
use crate::error::Result;
use crate::valuation::Valuation;

/// Fill colour for vertices valued +1.
pub const PLUS_FILL: &str = "#e15759";
/// Fill colour for vertices valued -1.
pub const MINUS_FILL: &str = "#4e79a7";
/// Fill colour for soft (zero) vertices.
pub const SOFT_FILL: &str = "#d9d9d9";

/// Renders `g` as an undirected DOT graph.
///
/// With a valuation, each vertex is labelled by its value and filled with
/// [`PLUS_FILL`], [`MINUS_FILL`] or [`SOFT_FILL`]; values outside {-1,0,+1}
/// are labelled but left unfilled.
pub fn to_dot(g: &Graph, valuation: Option<&Valuation>) -> Result<String> {
    if let Some(v) = valuation {
        v.check_len(g.order())?;
    }
    let mut out = String::from("graph G {\n");
    for i in 0..g.order() {
        match valuation.map(|v| v[i]) {
            None => writeln!(out, "  {i};").unwrap(),
            Some(x) => {
                let label = if x > 0 { format!("+{x}") } else { x.to_string() };
                let fill = match x {
                    1 => Some(PLUS_FILL),
                    -1 => Some(MINUS_FILL),
                    0 => Some(SOFT_FILL),
                    _ => None,
                };
                match fill {
                    Some(c) => writeln!(
                        out,
                        "  {i} [label=\"{label}\", style=filled, fillcolor=\"{c}\"];"
                    )
                    .unwrap(),
                    None => writeln!(out, "  {i} [label=\"{label}\"];").unwrap(),
                }
            }
        }
    }
    for (i, j) in g.edges() {
        writeln!(out, "  {i} -- {j};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
