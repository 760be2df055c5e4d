//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lapvalent_core::catalog::{regular_bivalent_schedule, smallest_trivalent_catalog};
use lapvalent_core::characterize::{
    bivalent_from_matching, bivalent_structure_check, is_soft_regular, perfect_matching,
    regular_bipartite_witness, to_soft_regular, tree_perfect_matching, trivalent_structure_check,
};
use lapvalent_core::graph::{parse_graph6, write_graph6};
use lapvalent_core::par;
use lapvalent_core::search::{brute_force_valent, is_bivalent, search_valent, Alphabet, SearchOptions, SearchOutcome, Verdict};
use lapvalent_core::spectra::{contains_eigenvalue, laplacian_spectrum};
use lapvalent_core::transforms::{add_alternate_matching, find_alternate_perfect_matching, MatchingMode, Matching};
use lapvalent_core::{Certificate, Graph, Valence, Valuation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, budget {limit:?}"))
    }
}

/// Exhaustive certificate sets for one corpus graph.
struct Run {
    graph: Graph,
    bivalent: SearchOutcome,
    trivalent: SearchOutcome,
}

impl Run {
    fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.trivalent.certificates.iter()
    }
}

fn corpus_runs() -> Vec<Run> {
    let graphs = common::connected(1, 8);
    par::map(&graphs, |g| Run {
        graph: g.clone(),
        bivalent: search_valent(g, &SearchOptions::bivalent()).unwrap(),
        trivalent: search_valent(g, &SearchOptions::trivalent()).unwrap(),
    })
}

fn cert(g: &Graph, v: &[i64], lambda: i64) -> Result<Certificate, String> {
    ensure!(common::dense_is_eigenpair(g, v, lambda), "{v:?} is not a λ={lambda} eigenvector of {g}");
    Certificate::new(g, Valuation::new(v.to_vec()), lambda).map_err(|e| e.to_string())
}

fn figure_fixtures() -> Outcome {
    let start = Instant::now();
    let k2 = Graph::path(2).unwrap();
    cert(&k2, &[1, -1], 2)?;

    let c6 = Graph::cycle(6).unwrap();
    let mut c = cert(&c6, &[0, 1, 1, 0, -1, -1], 1)?;
    let mut g = c6;
    for want in [3, 5] {
        let m = find_alternate_perfect_matching(&g, c.valuation(), MatchingMode::WithinNonEdges)
            .map_err(|e| e.to_string())?
            .ok_or("no alternate matching on the C6 chain")?;
        let t = add_alternate_matching(&g, &c, &m).map_err(|e| e.to_string())?;
        ensure!(t.certificate.lambda() == want, "C6 chain gave λ={}", t.certificate.lambda());
        c = cert(&t.graph, t.certificate.valuation(), want)?;
        g = t.graph;
    }

    let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
    let c2 = cert(&two, &[1, -1, 1, -1], 2)?;
    let t = add_alternate_matching(&two, &c2, &Matching::new([(0, 3), (2, 1)])).map_err(|e| e.to_string())?;
    ensure!(t.graph.regular_degree() == Some(2) && t.graph.is_connected(), "2K2 + matching is not C4");
    cert(&t.graph, t.certificate.valuation(), 4)?;

    let three = Graph::new(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
    let mut c = cert(&three, &[1, -1, 1, -1, 1, -1], 2)?;
    let mut g = three;
    for step in 1..=2 {
        let t = add_alternate_matching(&g, &c, &regular_bivalent_schedule(3, step)).map_err(|e| e.to_string())?;
        g = t.graph;
        c = t.certificate;
    }
    ensure!(g.regular_degree() == Some(3) && g.bipartition().is_some(), "3K2 + 2 matchings not 3-regular bipartite");
    cert(&g, c.valuation(), 6)?;

    cert(&Graph::path(3).unwrap(), &[1, 0, -1], 1)?;
    cert(&Graph::cycle(4).unwrap(), &[1, 0, -1, 0], 2)?;
    within(Duration::from_secs(1), start)?;
    Ok("K2, C6 λ=1→3→5, 2K2→C4, 3K2→K3,3, P3, C4".into())
}

fn shift_law() -> Outcome {
    let start = Instant::now();
    let seeds = smallest_trivalent_catalog(8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut applied = 0usize;
    let mut per_kind = std::collections::BTreeMap::<String, usize>::new();
    let mut spectral = 0usize;
    while applied < 2000 {
        let seed = &seeds[rng.gen_range(0..seeds.len())];
        let (mut g, mut c) = (seed.graph.clone(), seed.certificate.clone());
        for _ in 0..rng.gen_range(1..=16) {
            let Some(t) = common::random_step(&mut rng, &g, &c) else {
                continue;
            };
            let r = &t.record;
            let delta = r.lambda_after - r.lambda_before;
            ensure!(r.lambda_before == c.lambda(), "record λ_before mismatch");
            ensure!(delta == common::expected_shift(&r.transform), "{:?} shifted λ by {delta}", r.transform);
            ensure!(
                common::dense_is_eigenpair(&t.graph, t.certificate.valuation(), r.lambda_after),
                "output of {:?} does not verify",
                r.transform
            );
            ensure!(common::is_simple(&t.graph), "non-simple output");
            if applied.is_multiple_of(10) {
                let spec = laplacian_spectrum(&t.graph).map_err(|e| e.to_string())?;
                ensure!(contains_eigenvalue(&spec, r.lambda_after, 1e-8), "λ not in spectrum");
                spectral += 1;
            }
            let kind = serde_json::to_value(r).unwrap()["kind"].as_str().unwrap().to_string();
            *per_kind.entry(kind).or_default() += 1;
            applied += 1;
            g = t.graph;
            c = t.certificate;
        }
    }
    ensure!(per_kind.len() == 7, "only {} kinds exercised", per_kind.len());
    within(Duration::from_secs(30), start)?;
    Ok(format!("{applied} applications, {spectral} spectral spot checks, {per_kind:?}"))
}

fn bivalent_reduction(runs: &[Run]) -> Outcome {
    let start = Instant::now();
    let results = par::map(runs, |r| {
        let witness = regular_bipartite_witness(&r.graph).unwrap().is_some();
        let found = !r.bivalent.certificates.is_empty();
        let per_cert = r
            .bivalent
            .certificates
            .iter()
            .all(|c| bivalent_structure_check(&r.graph, c.valuation()).unwrap().verdict);
        (witness == found && r.bivalent.exhausted && per_cert, found)
    });
    let bad: Vec<String> = runs
        .iter()
        .zip(&results)
        .filter(|(_, x)| !x.0)
        .map(|(r, _)| r.graph.to_string())
        .collect();
    ensure!(bad.is_empty(), "{} disagreements, e.g. {:?}", bad.len(), &bad[..bad.len().min(5)]);
    within(Duration::from_secs(600), start)?;
    let yes = results.iter().filter(|x| x.1).count();
    Ok(format!("{} graphs, {yes} bivalent, 0 disagreements", runs.len()))
}

fn tree_matchings() -> Outcome {
    let start = Instant::now();
    let trees = common::trees(1, 12);
    let results = par::map(&trees, |t| -> Result<bool, String> {
        let m = tree_perfect_matching(t).map_err(|e| e.to_string())?;
        ensure!(
            m.is_some() == perfect_matching(t).unwrap().is_some(),
            "leaf matching disagrees with general matching on {t}"
        );
        let verdict = match is_bivalent(t).map_err(|e| e.to_string())? {
            Verdict::Yes(_) => true,
            Verdict::No => false,
            Verdict::Unknown => return Err(format!("search gave up on {t}")),
        };
        ensure!(verdict == m.is_some(), "bivalent={verdict} but matching={} on {t}", m.is_some());
        if let Some(m) = m {
            let c = bivalent_from_matching(t, &m).map_err(|e| e.to_string())?;
            ensure!(c.lambda() == 2 && common::dense_is_eigenpair(t, c.valuation(), 2), "bad λ=2 certificate on {t}");
        }
        Ok(verdict)
    });
    let mut yes = 0;
    for r in results {
        yes += r? as usize;
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{} trees, {yes} with a perfect matching", trees.len()))
}

fn matching_without_bivalency(runs: &[Run]) -> Outcome {
    let start = Instant::now();
    let hits: Vec<&Graph> = runs
        .iter()
        .filter(|r| r.graph.order() == 6)
        .filter(|r| r.bivalent.exhausted && r.bivalent.certificates.is_empty())
        .filter(|r| perfect_matching(&r.graph).unwrap().is_some())
        .map(|r| &r.graph)
        .collect();
    ensure!(!hits.is_empty(), "no 6-vertex graph with a perfect matching lacks a bivalent certificate");
    within(Duration::from_secs(60), start)?;
    Ok(format!("{} graphs, first {}", hits.len(), hits[0]))
}

fn trivalent_structure(runs: &[Run]) -> Outcome {
    let start = Instant::now();
    let results = par::map(runs, |r| -> Result<usize, String> {
        let mut n = 0;
        for c in r.certificates().filter(|c| c.valence() == Valence::Trivalent) {
            let report = trivalent_structure_check(&r.graph, c.valuation()).map_err(|e| e.to_string())?;
            ensure!(
                report.verdict && report.lambda == Some(c.lambda()),
                "structure check failed on {} {}",
                r.graph,
                c.valuation()
            );
            let (h, c2, _) = to_soft_regular(&r.graph, c).map_err(|e| e.to_string())?;
            ensure!(
                is_soft_regular(&h, c2.valuation()).unwrap() == Some(c.lambda() as usize),
                "to_soft_regular not soft regular on {}",
                r.graph
            );
            ensure!(common::dense_is_eigenpair(&h, c2.valuation(), c.lambda()), "soft-regular output fails");
            n += 1;
        }
        Ok(n)
    });
    let mut total = 0;
    for r in results {
        total += r?;
    }
    within(Duration::from_secs(900), start)?;
    Ok(format!("{total} trivalent certificates checked"))
}

fn bivalent_bound(runs: &[Run]) -> Outcome {
    let mut total = 0;
    for r in runs {
        for c in &r.bivalent.certificates {
            let l = c.lambda();
            ensure!(l % 2 == 0, "odd λ={l} on {}", r.graph);
            ensure!(l <= 2 * r.graph.min_degree() as i64, "λ={l} > 2·d_min on {}", r.graph);
            ensure!(c.valuation().iter().sum::<i64>() == 0, "nonzero sum on {}", r.graph);
            total += 1;
        }
    }
    Ok(format!("{total} bivalent certificates"))
}

fn same_sets(g: &Graph, alphabet: Alphabet, searched: Option<&SearchOutcome>) -> Result<usize, String> {
    let opts = SearchOptions::new(alphabet);
    let owned;
    let a = match searched {
        Some(a) => a,
        None => {
            owned = search_valent(g, &opts).map_err(|e| e.to_string())?;
            &owned
        }
    };
    let b = brute_force_valent(g, &opts).map_err(|e| e.to_string())?;
    let sa: BTreeSet<_> = a.certificates.iter().collect();
    let sb: BTreeSet<_> = b.certificates.iter().collect();
    ensure!(a.exhausted && b.exhausted, "search not exhausted on {g}");
    ensure!(sa == sb && sa.len() == a.certificates.len(), "{alphabet:?} sets differ on {g}");
    Ok(sa.len())
}

fn oracle_equivalence(runs: &[Run]) -> Outcome {
    let start = Instant::now();
    let corpus = par::map(runs, |r| -> Result<usize, String> {
        Ok(same_sets(&r.graph, Alphabet::Bivalent, Some(&r.bivalent))?
            + same_sets(&r.graph, Alphabet::Trivalent, Some(&r.trivalent))?)
    });
    let mut certs = 0;
    for r in corpus {
        certs += r?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(910);
    let sample: Vec<Graph> = (0..500)
        .map(|_| {
            let n = rng.gen_range(9..=10);
            let p = rng.gen_range(0.15..0.85);
            common::gnp(&mut rng, n, p)
        })
        .collect();
    let random = par::map(&sample, |g| -> Result<usize, String> {
        Ok(same_sets(g, Alphabet::Bivalent, None)? + same_sets(g, Alphabet::Trivalent, None)?)
    });
    for r in random {
        certs += r?;
    }
    Ok(format!(
        "{} corpus + {} random graphs, {certs} certificates, 0 discrepancies ({:.1?})",
        runs.len(),
        sample.len(),
        start.elapsed()
    ))
}

fn spectra_cross_check(runs: &[Run]) -> Outcome {
    let results = par::map(runs, |r| -> Result<usize, String> {
        if r.trivalent.certificates.is_empty() {
            return Ok(0);
        }
        let spec = laplacian_spectrum(&r.graph).map_err(|e| e.to_string())?;
        for c in r.certificates() {
            ensure!(contains_eigenvalue(&spec, c.lambda(), 1e-8), "λ={} missing from spectrum of {}", c.lambda(), r.graph);
        }
        Ok(r.trivalent.certificates.len())
    });
    let mut total = 0;
    for r in results {
        total += r?;
    }
    for e in smallest_trivalent_catalog(8).unwrap() {
        let spec = laplacian_spectrum(&e.graph).map_err(|e| e.to_string())?;
        ensure!(contains_eigenvalue(&spec, e.certificate.lambda(), 1e-8), "{} λ not in spectrum", e.name);
        total += 1;
    }
    // bivalent certificates at the top of the order bound
    let big = lapvalent_core::catalog::regular_bivalent(32).unwrap();
    ensure!(big.graph.order() == 64, "expected a 64-vertex graph");
    let spec = laplacian_spectrum(&big.graph).map_err(|e| e.to_string())?;
    ensure!(contains_eigenvalue(&spec, big.certificate.lambda(), 1e-8), "K32,32 λ=64 missing");

    let mut worst = 0f64;
    for n in 1..=32 {
        for (g, closed) in [
            (Graph::path(n).unwrap(), (0..n).map(|k| 2.0 - 2.0 * (PI * k as f64 / n as f64).cos()).collect::<Vec<_>>()),
            (
                if n >= 3 { Graph::cycle(n).unwrap() } else { Graph::path(n).unwrap() },
                if n >= 3 {
                    (0..n).map(|k| 2.0 - 2.0 * (2.0 * PI * k as f64 / n as f64).cos()).collect()
                } else {
                    (0..n).map(|k| 2.0 - 2.0 * (PI * k as f64 / n as f64).cos()).collect()
                },
            ),
        ] {
            let mut want = closed;
            want.sort_by(f64::total_cmp);
            let got = laplacian_spectrum(&g).map_err(|e| e.to_string())?.eigenvalues;
            for (a, b) in got.iter().zip(&want) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    ensure!(worst <= 1e-8, "closed-form error {worst:e}");
    Ok(format!("{total} certificates in spectrum, closed-form max error {worst:.1e}"))
}

fn graph6_exact() -> Outcome {
    let text = std::fs::read_to_string(common::corpus_dir().join("graph6_reference.tsv")).map_err(|e| e.to_string())?;
    let mut rows = 0;
    for line in text.lines() {
        let cols: Vec<&str> = line.split('\t').collect();
        let n: usize = cols[0].parse().unwrap();
        let edges: Vec<(usize, usize)> = cols[1]
            .split(';')
            .filter(|e| !e.is_empty())
            .map(|e| {
                let (u, v) = e.split_once('-').unwrap();
                (u.parse().unwrap(), v.parse().unwrap())
            })
            .collect();
        let g = Graph::new(n, &edges).map_err(|e| e.to_string())?;
        ensure!(write_graph6(&g).as_bytes() == cols[2].as_bytes(), "bytes differ for n={n}");
        ensure!(parse_graph6(cols[2]).map_err(|e| e.to_string())? == g, "parse differs for n={n}");
        rows += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=50);
        let p = rng.gen::<f64>();
        let g = common::gnp(&mut rng, n, p);
        ensure!(parse_graph6(&write_graph6(&g)).map_err(|e| e.to_string())? == g, "round trip failed");
    }
    Ok(format!("{rows} reference rows byte-equal, 10000 random round trips"))
}

fn main() {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("acceptance {id:>2} PASS  {name} [{t:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("acceptance {id:>2} FAIL  {name} [{t:.2?}] {why}");
            }
        }
    };

    report(1, "figure fixtures", &mut figure_fixtures);
    report(2, "eigenvalue shift law", &mut shift_law);

    let setup = Instant::now();
    let runs = corpus_runs();
    println!(
        "corpus: {} connected graphs n<=8 searched exhaustively in {:.2?}",
        runs.len(),
        setup.elapsed()
    );

    report(3, "bivalent iff regular bipartite reduction", &mut || bivalent_reduction(&runs));
    report(4, "trees: bivalent iff perfect matching", &mut tree_matchings);
    report(5, "perfect matching without bivalency (n=6)", &mut || matching_without_bivalency(&runs));
    report(6, "trivalent structure and soft regularity", &mut || trivalent_structure(&runs));
    report(7, "bivalent eigenvalue bound", &mut || bivalent_bound(&runs));
    report(8, "search equals brute force", &mut || oracle_equivalence(&runs));
    report(9, "spectra cross-check", &mut || spectra_cross_check(&runs));
    report(10, "graph6 bit-exactness", &mut graph6_exact);

    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
