use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use lapvalent_core::catalog::{
    opposite_pair_family, regular_bivalent, smallest_trivalent_catalog, soft_star, CatalogEntry,
    CatalogParams,
};
use lapvalent_core::graph::to_dot;
use serde::Serialize;

use crate::{emit, expect_len, CertificateJson, CliResult, Exit, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `d`: K_{2,d} with the two hubs valued +1 and -1
    SoftStar,
    /// `d̃,s`: complete +1/-1 core with `s` soft vertices attached to it
    Pair,
    /// `d`: `d`-regular bivalent graph, λ = 2d
    RegularBivalent,
    /// `λmax`: one entry per profile for every λ up to `λmax`
    Catalog,
}

#[derive(Serialize)]
struct EntryJson<'a> {
    name: &'a str,
    graph6: String,
    order: usize,
    #[serde(flatten)]
    certificate: CertificateJson,
    parameters: CatalogParams,
}

#[derive(Serialize)]
struct GenerateReport<'a> {
    schema: &'static str,
    entries: Vec<EntryJson<'a>>,
}

pub fn entries(family: Family, params: &[usize]) -> CliResult<Vec<CatalogEntry>> {
    Ok(match family {
        Family::SoftStar => {
            expect_len(params, 1, "soft-star")?;
            vec![soft_star(params[0])?]
        }
        Family::Pair => {
            expect_len(params, 2, "pair")?;
            vec![opposite_pair_family(params[0], params[1])?]
        }
        Family::RegularBivalent => {
            expect_len(params, 1, "regular-bivalent")?;
            vec![regular_bivalent(params[0])?]
        }
        Family::Catalog => {
            expect_len(params, 1, "catalog")?;
            let lambda_max = i64::try_from(params[0]).unwrap_or(i64::MAX);
            smallest_trivalent_catalog(lambda_max)?
        }
    })
}

/// Writes the entries as JSON and, with `dot`, every entry as a DOT graph
/// to that file.
pub fn generate(out: &mut impl Write, family: Family, params: &[usize], dot: Option<&Path>) -> CliResult<Exit> {
    let list = entries(family, params)?;
    if let Some(path) = dot {
        let mut text = String::new();
        for e in &list {
            text.push_str(&format!("// {}\n", e.name));
            text.push_str(&to_dot(&e.graph, Some(e.certificate.valuation()))?);
        }
        fs::write(path, text)?;
    }
    let report = GenerateReport {
        schema: SCHEMA,
        entries: list
            .iter()
            .map(|e| EntryJson {
                name: &e.name,
                graph6: e.graph.to_string(),
                order: e.graph.order(),
                certificate: CertificateJson::from(&e.certificate),
                parameters: e.parameters,
            })
            .collect(),
    };
    emit(out, &report)?;
    Ok(Exit::Ok)
}
