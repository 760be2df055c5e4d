//! Deciding bivalency and trivalency.
//!
//! Two independent routes produce the same certificate sets:
//! [`brute_force_valent`] enumerates every vector over the alphabet, and
//! [`search_valent`] fixes λ and backtracks over vertices with exact local
//! pruning. Both report each eigenvector once up to sign, exclude the
//! monovalent all-ones vector, and sort by `(λ, valuation)`.

use std::collections::{BTreeSet, VecDeque};
use std::num::NonZeroUsize;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::laplacian::{infer_eigenvalue, valence_of, Certificate, Valence};
use crate::par::{self, Execution};
use crate::valuation::Valuation;

/// Brute force bound for {-1,+1}.
pub const BRUTE_FORCE_BIVALENT_MAX: usize = 14;
/// Brute force bound for {-1,0,+1}.
pub const BRUTE_FORCE_TRIVALENT_MAX: usize = 12;
pub const DEFAULT_SEARCH_MAX: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    /// {-1, +1}
    Bivalent,
    /// {-1, 0, +1}
    Trivalent,
}

impl Alphabet {
    pub fn values(self) -> &'static [i64] {
        match self {
            Alphabet::Bivalent => &[-1, 1],
            Alphabet::Trivalent => &[-1, 0, 1],
        }
    }

    fn admits(self, valence: Valence) -> bool {
        match self {
            Alphabet::Bivalent => valence == Valence::Bivalent,
            Alphabet::Trivalent => matches!(valence, Valence::Bivalent | Valence::Trivalent),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub alphabet: Alphabet,
    /// Only these eigenvalues are considered.
    pub lambda_filter: Option<BTreeSet<i64>>,
    /// Stop after this many certificates per eigenvalue, and keep at most
    /// this many overall.
    pub max_certificates: Option<NonZeroUsize>,
    /// Wall-clock cap. On expiry the outcome is returned with
    /// `exhausted = false`.
    pub time_budget: Option<Duration>,
    /// Report λ = 0 eigenvectors, which exist over the alphabet only on
    /// disconnected graphs (componentwise constant vectors).
    pub include_zero_lambda: bool,
    /// Largest order [`search_valent`] accepts.
    pub max_order: usize,
    /// Whether independent subproblems may run on the thread pool.
    pub execution: Execution,
}

impl SearchOptions {
    pub fn new(alphabet: Alphabet) -> Self {
        SearchOptions {
            alphabet,
            lambda_filter: None,
            max_certificates: None,
            time_budget: None,
            include_zero_lambda: true,
            max_order: DEFAULT_SEARCH_MAX,
            execution: Execution::default(),
        }
    }

    pub fn bivalent() -> Self {
        Self::new(Alphabet::Bivalent)
    }

    pub fn trivalent() -> Self {
        Self::new(Alphabet::Trivalent)
    }

    pub fn with_lambda(mut self, lambda: i64) -> Self {
        self.lambda_filter = Some(BTreeSet::from([lambda]));
        self
    }

    pub fn with_limit(mut self, cap: usize) -> Self {
        self.max_certificates = NonZeroUsize::new(cap);
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    fn wants_lambda(&self, lambda: i64) -> bool {
        (lambda != 0 || self.include_zero_lambda)
            && self.lambda_filter.as_ref().is_none_or(|f| f.contains(&lambda))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Partial (search) or complete (brute force) assignments examined.
    pub nodes: u64,
    /// Assignments rejected by a pruning rule.
    pub prunes: u64,
    #[serde(serialize_with = "as_micros")]
    pub elapsed: Duration,
}

fn as_micros<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_micros() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub certificates: Vec<Certificate>,
    /// True iff the whole space was explored; an empty certificate list then
    /// proves that none exist.
    pub exhausted: bool,
    pub stats: SearchStats,
}

fn finish(mut certificates: Vec<Certificate>, cap: Option<NonZeroUsize>) -> (Vec<Certificate>, bool) {
    certificates.sort();
    certificates.dedup();
    let mut truncated = false;
    if let Some(cap) = cap {
        if certificates.len() > cap.get() {
            certificates.truncate(cap.get());
            truncated = true;
        }
    }
    (certificates, truncated)
}

fn decode(alphabet: Alphabet, n: usize, code: u64) -> Option<Vec<i64>> {
    match alphabet {
        // vertex 0 is pinned to +1, bit k-1 gives vertex k
        Alphabet::Bivalent => Some(
            (0..n)
                .map(|k| if k == 0 || code >> (k - 1) & 1 == 0 { 1 } else { -1 })
                .collect(),
        ),
        Alphabet::Trivalent => {
            let mut v = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                v.push(match c % 3 {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                });
                c /= 3;
            }
            // first nonzero must be +1; also drops the zero vector
            (v.iter().find(|&&x| x != 0) == Some(&1)).then_some(v)
        }
    }
}

/// Exhaustive reference decision procedure: tries every vector over the
/// alphabet with first nonzero entry +1.
pub fn brute_force_valent(g: &Graph, opts: &SearchOptions) -> Result<SearchOutcome> {
    let n = g.order();
    let bound = match opts.alphabet {
        Alphabet::Bivalent => BRUTE_FORCE_BIVALENT_MAX,
        Alphabet::Trivalent => BRUTE_FORCE_TRIVALENT_MAX,
    };
    if n > bound {
        return Err(Error::TooLarge(n, bound));
    }
    let start = Instant::now();
    if n == 0 {
        return Ok(SearchOutcome {
            certificates: Vec::new(),
            exhausted: true,
            stats: SearchStats::default(),
        });
    }
    let total = match opts.alphabet {
        Alphabet::Bivalent => 1u64 << (n - 1),
        Alphabet::Trivalent => 3u64.pow(n as u32),
    };
    let found = par::filter_map_range_in(opts.execution, 0..total, |code| {
        let v = decode(opts.alphabet, n, code)?;
        if !opts.alphabet.admits(valence_of(&v).ok()?) {
            return None;
        }
        let lambda = infer_eigenvalue(g, &v).ok()??;
        opts.wants_lambda(lambda)
            .then(|| Certificate::trusted(Valuation::new(v), lambda))
    });
    let (certificates, _) = finish(found, opts.max_certificates);
    Ok(SearchOutcome {
        certificates,
        exhausted: true,
        stats: SearchStats {
            nodes: total,
            prunes: 0,
            elapsed: start.elapsed(),
        },
    })
}

/// Vertex order for the backtracking search: breadth first from a vertex of
/// maximum degree (smallest id on ties), restarting the same way in each
/// component not yet reached.
pub fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let start = (0..n)
            .filter(|&i| !seen[i])
            .max_by_key(|&i| (g.degree(i), std::cmp::Reverse(i)))
            .unwrap();
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Deadline {
    at: Option<Instant>,
}

impl Deadline {
    fn expired(&self) -> bool {
        self.at.is_some_and(|at| Instant::now() >= at)
    }
}

/// Backtracking state for one fixed eigenvalue.
struct Dfs<'a> {
    g: &'a Graph,
    alphabet: Alphabet,
    lambda: i64,
    order: &'a [usize],
    cap: usize,
    deadline: &'a Deadline,

    value: Vec<i64>,
    assigned: Vec<bool>,
    nbr_sum: Vec<i64>,
    open_nbrs: Vec<usize>,
    total: i64,
    nonzero: usize,

    found: Vec<Certificate>,
    nodes: u64,
    prunes: u64,
    aborted: bool,
}

impl<'a> Dfs<'a> {
    fn new(g: &'a Graph, alphabet: Alphabet, lambda: i64, order: &'a [usize], cap: usize, deadline: &'a Deadline) -> Self {
        let n = g.order();
        Dfs {
            g,
            alphabet,
            lambda,
            order,
            cap,
            deadline,
            value: vec![0; n],
            assigned: vec![false; n],
            nbr_sum: vec![0; n],
            open_nbrs: g.degrees(),
            total: 0,
            nonzero: 0,
            found: Vec::new(),
            nodes: 0,
            prunes: 0,
            aborted: false,
        }
    }

    /// Whether `target` can still be written as a sum of `k` alphabet values.
    fn reachable(&self, target: i64, k: usize) -> bool {
        let k = k as i64;
        match self.alphabet {
            Alphabet::Bivalent => target.abs() <= k && (target - k) % 2 == 0,
            Alphabet::Trivalent => target.abs() <= k,
        }
    }

    /// Residual of the eigenvector condition at an assigned vertex: what the
    /// still unassigned neighbors must sum to.
    fn residual(&self, w: usize) -> i64 {
        (self.g.degree(w) as i64 - self.lambda) * self.value[w] - self.nbr_sum[w]
    }

    fn consistent_at(&self, w: usize) -> bool {
        if self.assigned[w] {
            self.reachable(self.residual(w), self.open_nbrs[w])
        } else {
            // some value at w must leave a reachable residual
            let d = self.g.degree(w) as i64 - self.lambda;
            self.alphabet
                .values()
                .iter()
                .any(|&a| self.reachable(d * a - self.nbr_sum[w], self.open_nbrs[w]))
        }
    }

    fn feasible(&self, u: usize, depth: usize) -> bool {
        if !self.consistent_at(u) {
            return false;
        }
        if !self.g.neighbors(u).iter().all(|&w| self.consistent_at(w)) {
            return false;
        }
        // orthogonality to the all-ones vector
        if self.lambda > 0 {
            let remaining = self.order.len() - depth - 1;
            if !self.reachable(-self.total, remaining) {
                return false;
            }
        }
        true
    }

    fn assign(&mut self, u: usize, a: i64) {
        self.value[u] = a;
        self.assigned[u] = true;
        self.total += a;
        self.nonzero += (a != 0) as usize;
        for &w in self.g.neighbors(u) {
            self.nbr_sum[w] += a;
            self.open_nbrs[w] -= 1;
        }
    }

    fn unassign(&mut self, u: usize) {
        let a = self.value[u];
        for &w in self.g.neighbors(u) {
            self.nbr_sum[w] -= a;
            self.open_nbrs[w] += 1;
        }
        self.value[u] = 0;
        self.assigned[u] = false;
        self.total -= a;
        self.nonzero -= (a != 0) as usize;
    }

    fn run(&mut self, depth: usize) {
        if self.aborted || self.found.len() >= self.cap {
            return;
        }
        if depth == self.order.len() {
            // every neighborhood is closed, so the condition holds everywhere
            let valence = valence_of(&self.value).unwrap_or(Valence::Other);
            if self.nonzero > 0 && self.alphabet.admits(valence) {
                debug_assert!(crate::laplacian::verify_eigenpair(self.g, &self.value, self.lambda).unwrap());
                self.found.push(Certificate::trusted(Valuation::new(self.value.clone()), self.lambda));
            }
            return;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 1 && self.deadline.expired() {
            self.aborted = true;
            return;
        }
        let u = self.order[depth];
        for &a in self.alphabet.values() {
            // sign symmetry: the first nonzero entry is +1
            if self.nonzero == 0 && a < 0 {
                continue;
            }
            self.assign(u, a);
            if self.feasible(u, depth) {
                self.run(depth + 1);
            } else {
                self.prunes += 1;
            }
            self.unassign(u);
            if self.aborted || self.found.len() >= self.cap {
                return;
            }
        }
    }
}

/// Candidate eigenvalues, ascending, after the λ = 0 policy and the filter.
pub fn candidate_lambdas(g: &Graph, opts: &SearchOptions) -> Vec<i64> {
    let top = 2 * g.max_degree() as i64;
    let connected = g.is_connected();
    (0..=top)
        .filter(|&l| !(l == 0 && connected))
        .filter(|&l| opts.wants_lambda(l))
        .collect()
}

/// Pruned backtracking search for every certificate over the alphabet.
///
/// For each candidate λ in `0..=2 d_max` the vertices are assigned in
/// [`search_order`]; after each assignment the following must hold:
/// every assigned vertex whose neighbors are all assigned satisfies the
/// condition exactly; every other touched vertex can still be completed by
/// its unassigned neighbors; for λ > 0 the running sum can still be
/// cancelled. The first nonzero value is fixed to +1.
pub fn search_valent(g: &Graph, opts: &SearchOptions) -> Result<SearchOutcome> {
    let n = g.order();
    if n > opts.max_order {
        return Err(Error::TooLarge(n, opts.max_order));
    }
    let start = Instant::now();
    let deadline = Deadline {
        at: opts.time_budget.map(|b| start + b),
    };
    let order = search_order(g);
    let lambdas = candidate_lambdas(g, opts);
    let cap = opts.max_certificates.map_or(usize::MAX, NonZeroUsize::get);

    let runs = par::map_in(opts.execution, &lambdas, |&lambda| {
        let mut dfs = Dfs::new(g, opts.alphabet, lambda, &order, cap, &deadline);
        dfs.run(0);
        let complete = !dfs.aborted && dfs.found.len() < cap;
        (dfs.found, dfs.nodes, dfs.prunes, complete)
    });

    let mut stats = SearchStats::default();
    let mut found = Vec::new();
    let mut exhausted = true;
    for (certs, nodes, prunes, complete) in runs {
        found.extend(certs);
        stats.nodes += nodes;
        stats.prunes += prunes;
        exhausted &= complete;
    }
    let (certificates, truncated) = finish(found, opts.max_certificates);
    stats.elapsed = start.elapsed();
    Ok(SearchOutcome {
        certificates,
        exhausted: exhausted && !truncated,
        stats,
    })
}

/// Three-way answer to "does a certificate exist".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "lowercase")]
pub enum Verdict {
    Yes(Certificate),
    No,
    /// The time budget ran out first.
    Unknown,
}

impl Verdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Yes(_) => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Yes(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "true",
            Verdict::No => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

/// Short-circuiting existence check with caller-supplied options.
pub fn decide(g: &Graph, opts: &SearchOptions) -> Result<Verdict> {
    let opts = SearchOptions {
        max_certificates: NonZeroUsize::new(1),
        ..opts.clone()
    };
    let out = search_valent(g, &opts)?;
    Ok(match out.certificates.into_iter().next() {
        Some(c) => Verdict::Yes(c),
        None if out.exhausted => Verdict::No,
        None => Verdict::Unknown,
    })
}

pub fn is_bivalent(g: &Graph) -> Result<Verdict> {
    decide(g, &SearchOptions::bivalent())
}

pub fn is_trivalent(g: &Graph) -> Result<Verdict> {
    decide(g, &SearchOptions::trivalent())
}
