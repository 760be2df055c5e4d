//! Graph edits that carry a Laplacian eigenpair along.
//!
//! Every function takes a graph with a [`Certificate`], checks the
//! certificate and the edit's preconditions, and returns a new graph with a
//! re-verified certificate plus a [`TransformRecord`]. Inputs are never
//! modified. Eigenvalue bookkeeping:
//!
//! | edit                                   | λ change |
//! |----------------------------------------|----------|
//! | toggle an edge between equal values    | 0        |
//! | add / drop soft vertices off support   | 0        |
//! | edge between ±1 ↔ square of two softs  | 0        |
//! | add / delete alternate perfect matching| +2 / −2  |

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::laplacian::Certificate;
use crate::valuation::Valuation;

/// Disjoint vertex pairs, each stored `(min, max)`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching(Vec<Edge>);

impl Matching {
    pub fn new(pairs: impl IntoIterator<Item = Edge>) -> Matching {
        let mut pairs: Vec<Edge> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        Matching(pairs)
    }

    pub fn pairs(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks the pairs are disjoint, in range, and not loops.
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut used = vec![false; n];
        for &(a, b) in &self.0 {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange(x, n));
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            for x in [a, b] {
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::NotAlternatePerfect(format!("vertex {x} matched twice")));
                }
            }
        }
        Ok(())
    }

    /// Whether this is an alternate perfect matching for `v`: it covers the
    /// support exactly and pairs each +1 with a -1.
    pub fn check_alternate(&self, v: &[i64]) -> Result<()> {
        self.validate(v.len())?;
        let mut covered = vec![false; v.len()];
        for &(a, b) in &self.0 {
            if v[a] == 0 || v[a] != -v[b] {
                return Err(Error::NotAlternatePerfect(format!(
                    "pair ({a}, {b}) has values ({}, {})",
                    v[a], v[b]
                )));
            }
            covered[a] = true;
            covered[b] = true;
        }
        if let Some(x) = (0..v.len()).find(|&x| v[x] != 0 && !covered[x]) {
            return Err(Error::NotAlternatePerfect(format!("support vertex {x} unmatched")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parameters", rename_all = "snake_case")]
pub enum Transform {
    ToggleEqualEdge { i: usize, j: usize, added: bool },
    /// New vertices are appended as ids `n..n + new_vertices`; edges use ids
    /// of the extended graph.
    SoftExtension { new_vertices: usize, edges: Vec<Edge> },
    /// Surviving old ids in order; they are renumbered `0..kept.len()`.
    SoftReduction { kept: Vec<usize> },
    EdgeToSoftSquare { i: usize, j: usize, k: usize, l: usize },
    SoftSquareToEdge { i: usize, j: usize, k: usize, l: usize },
    AddAlternateMatching { matching: Matching },
    DeleteAlternateMatching { matching: Matching },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformRecord {
    #[serde(flatten)]
    pub transform: Transform,
    pub lambda_before: i64,
    pub lambda_after: i64,
}

impl TransformRecord {
    /// Applies the recorded edit again to `(g, cert)`.
    pub fn replay(&self, g: &Graph, cert: &Certificate) -> Result<Transformed> {
        match &self.transform {
            Transform::ToggleEqualEdge { i, j, .. } => toggle_equal_edge(g, cert, *i, *j),
            Transform::SoftExtension { new_vertices, edges } => {
                extend_with_soft(g, cert, *new_vertices, edges)
            }
            Transform::SoftReduction { .. } => reduce_certificate(g, cert).map(|(t, _)| t),
            Transform::EdgeToSoftSquare { i, j, .. } => edge_to_soft_square(g, cert, (*i, *j)),
            Transform::SoftSquareToEdge { k, l, .. } => soft_square_to_edge(g, cert, *k, *l),
            Transform::AddAlternateMatching { matching } => add_alternate_matching(g, cert, matching),
            Transform::DeleteAlternateMatching { matching } => {
                delete_alternate_matching(g, cert, matching)
            }
        }
    }

    /// The record that undoes this one when replayed on its output, for the
    /// edits whose inverse keeps vertex ids stable.
    pub fn inverse(&self) -> Option<TransformRecord> {
        let transform = match &self.transform {
            Transform::ToggleEqualEdge { i, j, added } => Transform::ToggleEqualEdge {
                i: *i,
                j: *j,
                added: !added,
            },
            Transform::EdgeToSoftSquare { i, j, k, l } => Transform::SoftSquareToEdge {
                i: *i,
                j: *j,
                k: *k,
                l: *l,
            },
            Transform::AddAlternateMatching { matching } => Transform::DeleteAlternateMatching {
                matching: matching.clone(),
            },
            Transform::DeleteAlternateMatching { matching } => Transform::AddAlternateMatching {
                matching: matching.clone(),
            },
            _ => return None,
        };
        Some(TransformRecord {
            transform,
            lambda_before: self.lambda_after,
            lambda_after: self.lambda_before,
        })
    }
}

/// Output of an edit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transformed {
    pub graph: Graph,
    pub certificate: Certificate,
    pub record: TransformRecord,
}

fn require_certificate(g: &Graph, cert: &Certificate) -> Result<()> {
    cert.valuation().check_len(g.order())?;
    if cert.holds_on(g) {
        Ok(())
    } else {
        Err(Error::NotACertificate(cert.lambda()))
    }
}

fn finish(graph: Graph, valuation: Valuation, before: i64, after: i64, transform: Transform) -> Result<Transformed> {
    let certificate = Certificate::new(&graph, valuation, after)?;
    Ok(Transformed {
        graph,
        certificate,
        record: TransformRecord {
            transform,
            lambda_before: before,
            lambda_after: after,
        },
    })
}

/// Adds edge `(i, j)` if absent, deletes it if present; requires `v_i = v_j`.
pub fn toggle_equal_edge(g: &Graph, cert: &Certificate, i: usize, j: usize) -> Result<Transformed> {
    require_certificate(g, cert)?;
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if i == j {
        return Err(Error::SameVertex(i));
    }
    let v = cert.valuation();
    if v[i] != v[j] {
        return Err(Error::UnequalValues(i, j));
    }
    let added = !g.has_edge(i, j);
    let out = if added {
        g.with_edge(i, j)?
    } else {
        g.without_edges(&[(i, j)])?
    };
    let (i, j) = (i.min(j), i.max(j));
    let lambda = cert.lambda();
    finish(out, v.clone(), lambda, lambda, Transform::ToggleEqualEdge { i, j, added })
}

/// Appends `new_vertices` soft vertices and the given edges, none of which
/// may touch a vertex of the support.
pub fn extend_with_soft(
    g: &Graph,
    cert: &Certificate,
    new_vertices: usize,
    edges: &[Edge],
) -> Result<Transformed> {
    require_certificate(g, cert)?;
    let v = cert.valuation().extended(new_vertices);
    let n = v.len();
    for &(a, b) in edges {
        for x in [a, b] {
            if x >= n {
                return Err(Error::VertexOutOfRange(x, n));
            }
        }
        if v[a] != 0 || v[b] != 0 {
            return Err(Error::EdgeTouchesSupport((a.min(b), a.max(b))));
        }
    }
    let out = g.with_new_vertices(new_vertices).with_edges(edges)?;
    let edges = {
        let mut e: Vec<Edge> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        e
    };
    let lambda = cert.lambda();
    finish(out, v, lambda, lambda, Transform::SoftExtension { new_vertices, edges })
}

/// The reduced graph `G{W}` for `W` = support of a valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    pub valuation: Valuation,
    /// Old id to new id.
    pub vertex_map: Vec<Option<usize>>,
}

impl Reduction {
    pub fn kept(&self) -> Vec<usize> {
        (0..self.vertex_map.len()).filter(|&i| self.vertex_map[i].is_some()).collect()
    }
}

/// Keeps the support `W` and the vertices adjacent to it, and only the edges
/// with at least one endpoint in `W`.
pub fn reduce_to_support(g: &Graph, v: &Valuation) -> Result<Reduction> {
    v.check_len(g.order())?;
    if !v.is_ternary() {
        return Err(Error::NotTrivalentAlphabet);
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let in_support = |i: usize| v[i] != 0;
    let mask: Vec<bool> = (0..g.order())
        .map(|i| in_support(i) || g.neighbors(i).iter().any(|&j| in_support(j)))
        .collect();
    let (graph, vertex_map) = g.filtered(&mask, |i, j| in_support(i) || in_support(j));
    let valuation = v.restricted(&vertex_map);
    Ok(Reduction {
        graph,
        valuation,
        vertex_map,
    })
}

/// [`reduce_to_support`] for a certificate, with the vertex map.
pub fn reduce_certificate(g: &Graph, cert: &Certificate) -> Result<(Transformed, Vec<Option<usize>>)> {
    require_certificate(g, cert)?;
    let r = reduce_to_support(g, cert.valuation())?;
    let kept = r.kept();
    let lambda = cert.lambda();
    let t = finish(r.graph, r.valuation, lambda, lambda, Transform::SoftReduction { kept })?;
    Ok((t, r.vertex_map))
}

/// Replaces the edge `(i, j)`, `v_i = -v_j ≠ 0`, by the square `i-k-j-l-i`
/// through two new soft vertices `k = n`, `l = n + 1`.
pub fn edge_to_soft_square(g: &Graph, cert: &Certificate, (i, j): Edge) -> Result<Transformed> {
    require_certificate(g, cert)?;
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if !g.has_edge(i, j) {
        return Err(Error::NotAnEdge(i.min(j), i.max(j)));
    }
    let v = cert.valuation();
    for x in [i, j] {
        if v[x] == 0 {
            return Err(Error::ZeroEndpoint(x));
        }
    }
    if v[i] != -v[j] {
        return Err(Error::NotOppositeValues(i, j));
    }
    let n = g.order();
    let (k, l) = (n, n + 1);
    let out = g
        .without_edges(&[(i, j)])?
        .with_new_vertices(2)
        .with_edges(&[(i, k), (k, j), (i, l), (l, j)])?;
    let lambda = cert.lambda();
    finish(out, v.extended(2), lambda, lambda, Transform::EdgeToSoftSquare { i, j, k, l })
}

/// Inverse of [`edge_to_soft_square`]: removes soft vertices `k`, `l` of
/// degree two with common neighbors `{i, j}`, `v_i = -v_j`, and joins `i`
/// to `j`. Remaining vertices keep their relative order.
pub fn soft_square_to_edge(g: &Graph, cert: &Certificate, k: usize, l: usize) -> Result<Transformed> {
    require_certificate(g, cert)?;
    g.check_vertex(k)?;
    g.check_vertex(l)?;
    let not_square = |why: &str| Error::NotASoftSquare(k, l, why.to_string());
    if k == l {
        return Err(not_square("same vertex"));
    }
    let v = cert.valuation();
    if v[k] != 0 || v[l] != 0 {
        return Err(not_square("not soft"));
    }
    if g.degree(k) != 2 || g.degree(l) != 2 {
        return Err(not_square("degree is not 2"));
    }
    if g.neighbors(k) != g.neighbors(l) {
        return Err(not_square("different neighborhoods"));
    }
    let (i, j) = (g.neighbors(k)[0], g.neighbors(k)[1]);
    if v[i] == 0 || v[i] != -v[j] {
        return Err(not_square("neighbors are not opposite"));
    }
    if g.has_edge(i, j) {
        return Err(Error::EdgeAlreadyPresent(i, j));
    }
    let keep: Vec<usize> = (0..g.order()).filter(|&x| x != k && x != l).collect();
    let (reduced, map) = g.induced(&keep);
    let out = reduced.with_edge(map[i].unwrap(), map[j].unwrap())?;
    let lambda = cert.lambda();
    finish(out, v.restricted(&map), lambda, lambda, Transform::SoftSquareToEdge { i, j, k, l })
}

/// Where matching pairs are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingMode {
    /// Existing edges; a matching found this way can be deleted.
    WithinEdges,
    /// Non-adjacent pairs; a matching found this way can be added.
    WithinNonEdges,
}

/// One alternate perfect matching for `v`, found as a maximum matching
/// between the +1 and -1 vertices by augmenting paths. Plus vertices and
/// their candidate partners are scanned in ascending order and a free
/// partner is preferred, so the result is deterministic.
pub fn find_alternate_perfect_matching(g: &Graph, v: &[i64], mode: MatchingMode) -> Result<Option<Matching>> {
    if v.len() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            found: v.len(),
        });
    }
    if v.iter().any(|x| !(-1..=1).contains(x)) {
        return Err(Error::NotTrivalentAlphabet);
    }
    let plus: Vec<usize> = (0..v.len()).filter(|&i| v[i] == 1).collect();
    let minus: Vec<usize> = (0..v.len()).filter(|&i| v[i] == -1).collect();
    if plus.is_empty() && minus.is_empty() {
        return Err(Error::ZeroVector);
    }
    if plus.len() != minus.len() {
        return Err(Error::UnbalancedSupport {
            plus: plus.len(),
            minus: minus.len(),
        });
    }
    let allowed = |p: usize, m: usize| match mode {
        MatchingMode::WithinEdges => g.has_edge(p, m),
        MatchingMode::WithinNonEdges => !g.has_edge(p, m),
    };
    let candidates: Vec<Vec<usize>> = plus
        .iter()
        .map(|&p| (0..minus.len()).filter(|&mi| allowed(p, minus[mi])).collect())
        .collect();

    fn augment(pi: usize, cand: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &mi in &cand[pi] {
            if seen[mi] {
                continue;
            }
            seen[mi] = true;
            if owner[mi].is_none_or(|other| augment(other, cand, owner, seen)) {
                owner[mi] = Some(pi);
                return true;
            }
        }
        false
    }

    let mut owner: Vec<Option<usize>> = vec![None; minus.len()];
    for pi in 0..plus.len() {
        // lowest free partner first, augmenting only when none is left
        if let Some(&mi) = candidates[pi].iter().find(|&&mi| owner[mi].is_none()) {
            owner[mi] = Some(pi);
            continue;
        }
        let mut seen = vec![false; minus.len()];
        if !augment(pi, &candidates, &mut owner, &mut seen) {
            return Ok(None);
        }
    }
    Ok(Some(Matching::new(
        owner
            .iter()
            .enumerate()
            .map(|(mi, pi)| (plus[pi.unwrap()], minus[mi])),
    )))
}

/// Adds the pairs of an alternate perfect matching as edges; λ rises by 2.
pub fn add_alternate_matching(g: &Graph, cert: &Certificate, matching: &Matching) -> Result<Transformed> {
    require_certificate(g, cert)?;
    matching.check_alternate(cert.valuation())?;
    if let Some(&(a, b)) = matching.pairs().iter().find(|&&(a, b)| g.has_edge(a, b)) {
        return Err(Error::EdgeCollision(a, b));
    }
    let out = g.with_edges(matching.pairs())?;
    let lambda = cert.lambda();
    finish(
        out,
        cert.valuation().clone(),
        lambda,
        lambda + 2,
        Transform::AddAlternateMatching {
            matching: matching.clone(),
        },
    )
}

/// Deletes the edges of an alternate perfect matching; λ drops by 2.
pub fn delete_alternate_matching(g: &Graph, cert: &Certificate, matching: &Matching) -> Result<Transformed> {
    require_certificate(g, cert)?;
    matching.check_alternate(cert.valuation())?;
    if let Some(&(a, b)) = matching.pairs().iter().find(|&&(a, b)| !g.has_edge(a, b)) {
        return Err(Error::MissingEdge(a, b));
    }
    let out = g.without_edges(matching.pairs())?;
    let lambda = cert.lambda();
    finish(
        out,
        cert.valuation().clone(),
        lambda,
        lambda - 2,
        Transform::DeleteAlternateMatching {
            matching: matching.clone(),
        },
    )
}
