//! Generators for small witness graphs, one per eigenvalue split.
//!
//! A support vertex `j` with `d̃_j` opposite neighbors and `s_j` soft
//! neighbors affords `λ = 2 d̃_j + s_j`. For each λ the catalog holds one
//! graph per split:
//!
//! * `d̃ = 0`: [`soft_star`], `K_{2,λ}` with the two hubs valued ±1;
//! * `d̃ ≥ 1, s ≥ 1`: [`opposite_pair_family`], `K_{d̃,d̃}` between the
//!   signs plus `s` soft vertices joined to the whole support;
//! * `s = 0`: [`regular_bivalent`], built by repeatedly adding alternate
//!   perfect matchings to disjoint copies of `K2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::laplacian::Certificate;
use crate::transforms::{add_alternate_matching, Matching};
use crate::valuation::Valuation;

pub const CATALOG_LAMBDA_MAX: i64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CatalogParams {
    /// Profile `(d, d̃, s)` shared by every support vertex.
    Split { d: usize, d_tilde: usize, s: usize },
    /// `copies` disjoint `K2`s plus `matchings` alternate matchings.
    Regular { d: usize, copies: usize, matchings: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
    pub certificate: Certificate,
    pub parameters: CatalogParams,
}

impl CatalogEntry {
    /// `(d, d̃, s)` every support vertex should have.
    pub fn profile(&self) -> (usize, usize, usize) {
        match self.parameters {
            CatalogParams::Split { d, d_tilde, s } => (d, d_tilde, s),
            CatalogParams::Regular { d, .. } => (d, d, 0),
        }
    }
}

/// `K_{2,d}`: vertex 0 is +1, vertices `1..=d` are soft, vertex `d + 1` is
/// -1. `soft_star(1)` is the path on three vertices.
pub fn soft_star(d: usize) -> Result<CatalogEntry> {
    if d == 0 {
        return Err(Error::InvalidSize("soft_star needs d >= 1".into()));
    }
    let minus = d + 1;
    let edges: Vec<Edge> = (1..=d).flat_map(|k| [(0, k), (k, minus)]).collect();
    let graph = Graph::new(d + 2, &edges)?;
    let mut v = vec![0; d + 2];
    v[0] = 1;
    v[minus] = -1;
    let certificate = Certificate::new(&graph, Valuation::new(v), d as i64)?;
    Ok(CatalogEntry {
        name: format!("soft_star({d})"),
        graph,
        certificate,
        parameters: CatalogParams::Split { d, d_tilde: 0, s: d },
    })
}

/// `d_tilde` vertices +1 and `d_tilde` vertices -1 joined completely, then
/// `s` soft vertices adjacent to all of them. λ = 2·d_tilde + s.
pub fn opposite_pair_family(d_tilde: usize, s: usize) -> Result<CatalogEntry> {
    if d_tilde == 0 {
        return Err(Error::InvalidSize("opposite_pair_family needs d_tilde >= 1".into()));
    }
    let support = 2 * d_tilde;
    let mut edges: Vec<Edge> = (0..d_tilde)
        .flat_map(|p| (d_tilde..support).map(move |m| (p, m)))
        .collect();
    edges.extend((support..support + s).flat_map(|k| (0..support).map(move |x| (x, k))));
    let graph = Graph::new(support + s, &edges)?;
    let v: Vec<i64> = (0..support + s)
        .map(|i| match i {
            i if i < d_tilde => 1,
            i if i < support => -1,
            _ => 0,
        })
        .collect();
    let lambda = (2 * d_tilde + s) as i64;
    let certificate = Certificate::new(&graph, Valuation::new(v), lambda)?;
    Ok(CatalogEntry {
        name: format!("opposite_pair({d_tilde},{s})"),
        graph,
        certificate,
        parameters: CatalogParams::Split {
            d: d_tilde + s,
            d_tilde,
            s,
        },
    })
}

/// The matching added at step `t` (1-based): copy `c`'s +1 vertex `2c` is
/// paired with copy `(c + t) mod d`'s -1 vertex.
pub fn regular_bivalent_schedule(d: usize, t: usize) -> Matching {
    Matching::new((0..d).map(|c| (2 * c, 2 * ((c + t) % d) + 1)))
}

/// `d`-regular bivalent graph with λ = 2d on `2d` vertices, valued
/// `(+1, -1, +1, -1, ...)`. The result is `K_{d,d}`.
pub fn regular_bivalent(d: usize) -> Result<CatalogEntry> {
    if d == 0 {
        return Err(Error::InvalidSize("regular_bivalent needs d >= 1".into()));
    }
    let edges: Vec<Edge> = (0..d).map(|c| (2 * c, 2 * c + 1)).collect();
    let mut graph = Graph::new(2 * d, &edges)?;
    let v: Vec<i64> = (0..2 * d).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    let mut certificate = Certificate::new(&graph, Valuation::new(v), 2)?;
    for t in 1..d {
        let step = add_alternate_matching(&graph, &certificate, &regular_bivalent_schedule(d, t))
            .map_err(|_| Error::MatchingUnavailable)?;
        graph = step.graph;
        certificate = step.certificate;
    }
    debug_assert_eq!(graph.regular_degree(), Some(d));
    Ok(CatalogEntry {
        name: format!("regular_bivalent({d})"),
        graph,
        certificate,
        parameters: CatalogParams::Regular {
            d,
            copies: d,
            matchings: d - 1,
        },
    })
}

/// Entries for `λ = 1..=lambda_max`, within each λ ordered by increasing
/// `d̃`.
pub fn smallest_trivalent_catalog(lambda_max: i64) -> Result<Vec<CatalogEntry>> {
    if !(1..=CATALOG_LAMBDA_MAX).contains(&lambda_max) {
        return Err(Error::InvalidSize(format!(
            "catalog eigenvalue bound must be in 1..={CATALOG_LAMBDA_MAX}"
        )));
    }
    let mut out = Vec::new();
    for lambda in 1..=lambda_max as usize {
        out.push(soft_star(lambda)?);
        for d_tilde in 1..=lambda / 2 {
            let s = lambda - 2 * d_tilde;
            out.push(if s == 0 {
                regular_bivalent(d_tilde)?
            } else {
                opposite_pair_family(d_tilde, s)?
            });
        }
    }
    Ok(out)
}
