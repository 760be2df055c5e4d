//! Exact integer checks of the eigenvector condition
//! `(d_i - λ) v_i = Σ_{j~i} v_j` at every vertex.
//!
//! Eigenvalue range: if `v_j = ±1` and every entry lies in {-1,0,+1}, the
//! condition at `j` gives `λ = d_j - v_j Σ_{i~j} v_i`, and the sum is bounded
//! by `d_j` in absolute value, so `0 <= λ <= 2 d_j <= 2 d_max`. Searches only
//! ever need to try integers in `0..=2 d_max`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::valuation::Valuation;

/// `Δv` with `Δ = D - A`, in exact integer arithmetic.
pub fn apply_laplacian(g: &Graph, v: &[i64]) -> Result<Vec<i64>> {
    if v.len() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            found: v.len(),
        });
    }
    Ok((0..g.order())
        .map(|i| {
            let s: i64 = g.neighbors(i).iter().map(|&j| v[j]).sum();
            g.degree(i) as i64 * v[i] - s
        })
        .collect())
}

fn check_candidate(g: &Graph, v: &[i64]) -> Result<()> {
    if v.len() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            found: v.len(),
        });
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// A vertex where the eigenvector condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: usize,
    /// `(d_i - λ) v_i`
    pub lhs: i64,
    /// `Σ_{j~i} v_j`
    pub rhs: i64,
}

/// First vertex (by id) violating the condition, if any.
pub fn first_violation(g: &Graph, v: &[i64], lambda: i64) -> Result<Option<Violation>> {
    check_candidate(g, v)?;
    Ok((0..g.order()).find_map(|i| {
        let rhs: i64 = g.neighbors(i).iter().map(|&j| v[j]).sum();
        let lhs = (g.degree(i) as i64 - lambda) * v[i];
        (lhs != rhs).then_some(Violation { vertex: i, lhs, rhs })
    }))
}

/// True iff `Δv = λv` exactly.
pub fn verify_eigenpair(g: &Graph, v: &[i64], lambda: i64) -> Result<bool> {
    first_violation(g, v, lambda).map(|x| x.is_none())
}

/// The integer eigenvalue afforded by `v`, if `v` is an eigenvector with an
/// integer eigenvalue.
pub fn infer_eigenvalue(g: &Graph, v: &[i64]) -> Result<Option<i64>> {
    check_candidate(g, v)?;
    let i = v.iter().position(|&x| x != 0).unwrap();
    let s: i64 = g.neighbors(i).iter().map(|&j| v[j]).sum();
    if s % v[i] != 0 {
        return Ok(None);
    }
    let lambda = g.degree(i) as i64 - s / v[i];
    Ok(verify_eigenpair(g, v, lambda)?.then_some(lambda))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Valence {
    Monovalent,
    Bivalent,
    Trivalent,
    Other,
}

/// Strictest of the classes {+1}, {-1,+1} (both signs), {-1,0,+1} (some
/// zero, some nonzero) that contains `v`.
pub fn valence_of(v: &[i64]) -> Result<Valence> {
    if v.is_empty() {
        return Err(Error::EmptyVector);
    }
    let (mut plus, mut minus, mut zero) = (false, false, false);
    for &x in v {
        match x {
            1 => plus = true,
            -1 => minus = true,
            0 => zero = true,
            _ => return Ok(Valence::Other),
        }
    }
    Ok(match (plus, minus, zero) {
        (true, false, false) => Valence::Monovalent,
        (true, true, false) => Valence::Bivalent,
        (_, _, true) if plus || minus => Valence::Trivalent,
        _ => Valence::Other,
    })
}

/// Vertices where `v` vanishes.
pub fn soft_nodes(v: &[i64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] == 0).collect()
}

/// Degree split of one vertex against a valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SoftProfile {
    /// degree
    pub d: usize,
    /// neighbors with nonzero value
    pub d_tilde: usize,
    /// neighbors with zero value
    pub s: usize,
}

pub fn soft_profile(g: &Graph, v: &[i64], j: usize) -> Result<SoftProfile> {
    if v.len() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            found: v.len(),
        });
    }
    g.check_vertex(j)?;
    let nbrs = g.neighbors(j);
    let s = nbrs.iter().filter(|&&i| v[i] == 0).count();
    Ok(SoftProfile {
        d: nbrs.len(),
        d_tilde: nbrs.len() - s,
        s,
    })
}

/// A valuation together with the integer eigenvalue it affords on some graph.
///
/// Only constructible through [`Certificate::new`], which checks the
/// eigenvector condition exactly and stores the sign representative whose
/// first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Certificate {
    valuation: Valuation,
    lambda: i64,
}

impl Certificate {
    pub fn new(g: &Graph, valuation: Valuation, lambda: i64) -> Result<Certificate> {
        if !verify_eigenpair(g, &valuation, lambda)? {
            return Err(Error::NotACertificate(lambda));
        }
        Ok(Certificate {
            valuation: valuation.sign_normalized(),
            lambda,
        })
    }

    /// Certificate for `v` with its inferred eigenvalue.
    pub fn infer(g: &Graph, valuation: Valuation) -> Result<Option<Certificate>> {
        Ok(infer_eigenvalue(g, &valuation)?.map(|lambda| Certificate {
            valuation: valuation.sign_normalized(),
            lambda,
        }))
    }

    /// Skips verification. Callers must have established the eigenpair.
    pub(crate) fn trusted(valuation: Valuation, lambda: i64) -> Certificate {
        Certificate {
            valuation: valuation.sign_normalized(),
            lambda,
        }
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    pub fn valence(&self) -> Valence {
        valence_of(&self.valuation).unwrap_or(Valence::Other)
    }

    /// Re-runs the exact check against `g`.
    pub fn holds_on(&self, g: &Graph) -> bool {
        verify_eigenpair(g, &self.valuation, self.lambda).unwrap_or(false)
    }
}

impl PartialOrd for Certificate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// By eigenvalue, then lexicographically by valuation.
impl Ord for Certificate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.lambda, &self.valuation).cmp(&(other.lambda, &other.valuation))
    }
}
