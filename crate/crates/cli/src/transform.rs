use std::io::Write;

use clap::ValueEnum;
use lapvalent_core::transforms::{
    add_alternate_matching, delete_alternate_matching, edge_to_soft_square, extend_with_soft,
    find_alternate_perfect_matching, reduce_certificate, soft_square_to_edge, toggle_equal_edge,
    Matching, MatchingMode, TransformRecord, Transformed,
};
use lapvalent_core::{parse_graph6, Certificate, Error, Graph, Valuation};
use serde::Serialize;

use crate::{emit, expect_len, pairs, CertificateJson, CliResult, Exit, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    /// `i,j`: add or delete an edge between equal values
    ToggleEdge,
    /// `count,u,v,...`: append `count` soft vertices and the listed edges
    ExtendSoft,
    /// no arguments: delete the soft vertices
    ReduceSupport,
    /// `i,j`: replace the edge by a soft square on two new vertices
    EdgeToSoftSquare,
    /// `k,l`: collapse the soft square through `k` and `l`
    SoftSquareToEdge,
    /// `i,j,...`: add the listed +1/-1 pairs; found automatically when empty
    AddMatching,
    /// `i,j,...`: delete the listed +1/-1 pairs; found automatically when empty
    DeleteMatching,
}

#[derive(Serialize)]
struct TransformReport {
    schema: &'static str,
    graph6: String,
    #[serde(flatten)]
    certificate: CertificateJson,
    record: TransformRecord,
    /// Old id to new id, for `reduce-support`.
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex_map: Option<Vec<Option<usize>>>,
}

fn matching(g: &Graph, cert: &Certificate, args: &[usize], mode: MatchingMode) -> CliResult<Matching> {
    if !args.is_empty() {
        return Ok(Matching::new(pairs(args)?));
    }
    find_alternate_perfect_matching(g, cert.valuation(), mode)?
        .ok_or_else(|| Error::MatchingUnavailable.into())
}

/// Applies `op` to the certificate `(vector, lambda)` on `graph6`. Any
/// failed precondition exits 1 with the error name.
pub fn transform(
    out: &mut impl Write,
    graph6: &str,
    vector: &str,
    lambda: i64,
    op: Op,
    args: &[usize],
) -> CliResult<Exit> {
    let g = parse_graph6(graph6)?;
    let v: Valuation = vector.parse()?;
    let cert = Certificate::new(&g, v, lambda)?;
    let mut vertex_map = None;
    let t: Transformed = match op {
        Op::ToggleEdge => {
            expect_len(args, 2, "toggle-edge")?;
            toggle_equal_edge(&g, &cert, args[0], args[1])?
        }
        Op::ExtendSoft => {
            let (&count, rest) = args
                .split_first()
                .ok_or_else(|| crate::CliError::Usage("extend-soft needs a vertex count".into()))?;
            extend_with_soft(&g, &cert, count, &pairs(rest)?)?
        }
        Op::ReduceSupport => {
            expect_len(args, 0, "reduce-support")?;
            let (t, map) = reduce_certificate(&g, &cert)?;
            vertex_map = Some(map);
            t
        }
        Op::EdgeToSoftSquare => {
            expect_len(args, 2, "edge-to-soft-square")?;
            edge_to_soft_square(&g, &cert, (args[0], args[1]))?
        }
        Op::SoftSquareToEdge => {
            expect_len(args, 2, "soft-square-to-edge")?;
            soft_square_to_edge(&g, &cert, args[0], args[1])?
        }
        Op::AddMatching => {
            let m = matching(&g, &cert, args, MatchingMode::WithinNonEdges)?;
            add_alternate_matching(&g, &cert, &m)?
        }
        Op::DeleteMatching => {
            let m = matching(&g, &cert, args, MatchingMode::WithinEdges)?;
            delete_alternate_matching(&g, &cert, &m)?
        }
    };
    debug_assert!(t.certificate.holds_on(&t.graph));
    emit(
        out,
        &TransformReport {
            schema: SCHEMA,
            graph6: t.graph.to_string(),
            certificate: CertificateJson::from(&t.certificate),
            record: t.record,
            vertex_map,
        },
    )?;
    Ok(Exit::Ok)
}
