#![allow(dead_code)]

use std::path::PathBuf;

use lapvalent_core::{parse_graph6, Graph};
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn read_g6(name: &str) -> Vec<Graph> {
    let text = std::fs::read_to_string(corpus_dir().join(name))
        .unwrap_or_else(|e| panic!("{name}: {e}"));
    text.lines()
        .filter(|l| !l.is_empty())
        .map(|l| parse_graph6(l).unwrap_or_else(|e| panic!("{name}: {l}: {e}")))
        .collect()
}

/// All connected graphs on `lo..=hi` vertices, up to isomorphism.
pub fn connected(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi).flat_map(|n| read_g6(&format!("connected_n{n}.g6"))).collect()
}

pub fn trees(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi).flat_map(|n| read_g6(&format!("trees_n{n}.g6"))).collect()
}

pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, &edges).unwrap()
}

/// `(D - A) v` from a dense adjacency matrix built out of the edge list.
pub fn dense_laplacian_apply(g: &Graph, v: &[i64]) -> Vec<i64> {
    let n = g.order();
    let mut a = vec![vec![0i64; n]; n];
    for (i, j) in g.edges() {
        a[i][j] = 1;
        a[j][i] = 1;
    }
    (0..n)
        .map(|i| {
            let d: i64 = a[i].iter().sum();
            d * v[i] - (0..n).map(|j| a[i][j] * v[j]).sum::<i64>()
        })
        .collect()
}

/// Eigenpair test independent of the library's local check.
pub fn dense_is_eigenpair(g: &Graph, v: &[i64], lambda: i64) -> bool {
    v.iter().any(|&x| x != 0)
        && dense_laplacian_apply(g, v)
            .iter()
            .zip(v)
            .all(|(&lv, &x)| lv == lambda * x)
}

/// True iff `g` has no loops or repeated edges and symmetric adjacency.
pub fn is_simple(g: &Graph) -> bool {
    (0..g.order()).all(|i| {
        let nb = g.neighbors(i);
        nb.windows(2).all(|w| w[0] < w[1])
            && nb.iter().all(|&j| j != i && j < g.order() && g.neighbors(j).binary_search(&i).is_ok())
    })
}

use lapvalent_core::transforms::{
    add_alternate_matching, delete_alternate_matching, edge_to_soft_square, extend_with_soft,
    find_alternate_perfect_matching, reduce_certificate, soft_square_to_edge, toggle_equal_edge,
    MatchingMode, Transform, Transformed,
};
use lapvalent_core::Certificate;
use rand::seq::SliceRandom;

pub const WALK_ORDER_MAX: usize = 24;

/// Expected eigenvalue change for a record kind.
pub fn expected_shift(t: &Transform) -> i64 {
    match t {
        Transform::AddAlternateMatching { .. } => 2,
        Transform::DeleteAlternateMatching { .. } => -2,
        _ => 0,
    }
}

/// Soft squares `(k, l)`: two degree-2 soft vertices sharing the neighbors
/// `i`, `j` with `v_i = -v_j ≠ 0` and `i`, `j` non-adjacent.
pub fn soft_squares(g: &Graph, v: &[i64]) -> Vec<(usize, usize)> {
    let soft: Vec<usize> = (0..g.order()).filter(|&k| v[k] == 0 && g.degree(k) == 2).collect();
    let mut out = Vec::new();
    for (a, &k) in soft.iter().enumerate() {
        for &l in &soft[a + 1..] {
            let nb = g.neighbors(k);
            if nb == g.neighbors(l) && v[nb[0]] == -v[nb[1]] && v[nb[0]] != 0 && !g.has_edge(nb[0], nb[1]) {
                out.push((k, l));
            }
        }
    }
    out
}

/// One random applicable edit, or `None` if the drawn kind has no
/// applicable instance on this certificate.
pub fn random_step(rng: &mut impl Rng, g: &Graph, cert: &Certificate) -> Option<Transformed> {
    let v = cert.valuation();
    let n = g.order();
    let grow = n + 2 <= WALK_ORDER_MAX;
    match rng.gen_range(0..7) {
        0 => {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| v[i] == v[j])
                .collect();
            let &(i, j) = pairs.choose(rng)?;
            Some(toggle_equal_edge(g, cert, i, j).unwrap())
        }
        1 if grow => {
            let k = rng.gen_range(1..=2);
            let soft: Vec<usize> = (0..n).filter(|&i| v[i] == 0).chain(n..n + k).collect();
            let mut edges = Vec::new();
            for &x in &soft {
                for new in n..n + k {
                    if x < new && rng.gen_bool(0.5) {
                        edges.push((x, new));
                    }
                }
            }
            Some(extend_with_soft(g, cert, k, &edges).unwrap())
        }
        2 => {
            if v.iter().all(|&x| x != 0) {
                return None;
            }
            Some(reduce_certificate(g, cert).unwrap().0)
        }
        3 if grow => {
            let edges: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(i, j)| v[i] != 0 && v[i] == -v[j]).collect();
            let &e = edges.choose(rng)?;
            Some(edge_to_soft_square(g, cert, e).unwrap())
        }
        4 => {
            let &(k, l) = soft_squares(g, v).choose(rng)?;
            Some(soft_square_to_edge(g, cert, k, l).unwrap())
        }
        5 => {
            let m = find_alternate_perfect_matching(g, v, MatchingMode::WithinNonEdges).unwrap()?;
            Some(add_alternate_matching(g, cert, &m).unwrap())
        }
        6 => {
            let m = find_alternate_perfect_matching(g, v, MatchingMode::WithinEdges).unwrap()?;
            Some(delete_alternate_matching(g, cert, &m).unwrap())
        }
        _ => None,
    }
}
