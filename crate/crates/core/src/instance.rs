//! Instances, objects and vertices.
//!
//! An instance is either the set of k-permutations of `[n]` or the set of
//! all permutations of a multiset `M`. Objects are words of length `k`;
//! vertices of the transition graph are words of length `s`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::gcd;

use crate::count::{
    falling_factorial, falling_factorial_expr, multinomial, multinomial_expr, next_permutation,
};
use crate::error::{Error, Result};

pub type Symbol = u8;

/// Default cap on the number of objects an operation may materialize.
pub const DEFAULT_EDGE_LIMIT: u64 = 10_000_000;

/// Largest alphabet representable by [`Symbol`].
pub const MAX_N: u64 = Symbol::MAX as u64;

fn write_symbols(f: &mut fmt::Formatter<'_>, symbols: &[Symbol]) -> fmt::Result {
    if symbols.iter().all(|&x| x < 10) {
        for x in symbols {
            write!(f, "{x}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = symbols.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// One object of an instance: a k-permutation or a multiset permutation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self, s: usize) -> Vertex {
        Vertex(self.0[..s].to_vec())
    }

    pub fn suffix(&self, s: usize) -> Vertex {
        Vertex(self.0[self.0.len() - s..].to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.0)
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

/// A length-s word: the s-prefix or s-suffix of some object.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub Vec<Symbol>);

impl Vertex {
    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.0)
    }
}

impl From<Vec<Symbol>> for Vertex {
    fn from(v: Vec<Symbol>) -> Self {
        Vertex(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    KPerm,
    Multiset,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::KPerm => "kperm",
            Mode::Multiset => "multiset",
        })
    }
}

/// Unvalidated instance description, as it arrives from flags or files.
///
/// Supplying `multiset` selects multiset mode; `n` then defaults to the
/// largest symbol and `k` to the multiset size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawParams {
    pub n: Option<u64>,
    pub k: Option<u64>,
    pub s: u64,
    pub multiset: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InstanceParams {
    mode: Mode,
    n: usize,
    k: usize,
    s: usize,
    multiset: Option<Vec<Symbol>>,
}

pub fn validate_params(raw: &RawParams) -> Result<InstanceParams> {
    let bad = |msg: String| Err(Error::InvalidParams(msg));
    if raw.s == 0 {
        return bad("s must be >= 1".into());
    }
    match &raw.multiset {
        None => {
            let (Some(n), Some(k)) = (raw.n, raw.k) else {
                return bad("k-permutation mode needs both n and k".into());
            };
            if n == 0 || n > MAX_N {
                return bad(format!("n must lie in [1, {MAX_N}], got {n}"));
            }
            if raw.s >= k {
                return bad(format!("s must be < k (s={}, k={k})", raw.s));
            }
            if k > n {
                return bad(format!("k must be <= n (k={k}, n={n})"));
            }
            Ok(InstanceParams {
                mode: Mode::KPerm,
                n: n as usize,
                k: k as usize,
                s: raw.s as usize,
                multiset: None,
            })
        }
        Some(m) => {
            if m.is_empty() {
                return bad("multiset must be non-empty".into());
            }
            let top = *m.iter().max().unwrap();
            let n = raw.n.unwrap_or(top);
            if n == 0 || n > MAX_N {
                return bad(format!("n must lie in [1, {MAX_N}], got {n}"));
            }
            if let Some(&x) = m.iter().find(|&&x| x == 0 || x > n) {
                return bad(format!("multiset symbol {x} outside [1, {n}]"));
            }
            let k = m.len() as u64;
            if let Some(given) = raw.k {
                if given != k {
                    return bad(format!("k={given} does not match multiset size {k}"));
                }
            }
            if raw.s >= k {
                return bad(format!("s must be < k (s={}, k={k})", raw.s));
            }
            let mut sorted: Vec<Symbol> = m.iter().map(|&x| x as Symbol).collect();
            sorted.sort_unstable();
            Ok(InstanceParams {
                mode: Mode::Multiset,
                n: n as usize,
                k: k as usize,
                s: raw.s as usize,
                multiset: Some(sorted),
            })
        }
    }
}

impl InstanceParams {
    pub fn kperm(n: u64, k: u64, s: u64) -> Result<Self> {
        validate_params(&RawParams {
            n: Some(n),
            k: Some(k),
            s,
            multiset: None,
        })
    }

    pub fn multiset(m: &[u64], s: u64) -> Result<Self> {
        validate_params(&RawParams {
            n: None,
            k: None,
            s,
            multiset: Some(m.to_vec()),
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Sorted multiset, multiset mode only.
    pub fn multiset_symbols(&self) -> Option<&[Symbol]> {
        self.multiset.as_deref()
    }

    /// Symbol advance between consecutive objects of a cycle.
    pub fn stride(&self) -> usize {
        self.k - self.s
    }

    /// Back to the raw form, e.g. for document headers.
    pub fn to_raw(&self) -> RawParams {
        RawParams {
            n: Some(self.n as u64),
            k: Some(self.k as u64),
            s: self.s as u64,
            multiset: self
                .multiset
                .as_ref()
                .map(|m| m.iter().map(|&x| u64::from(x)).collect()),
        }
    }

    /// Symbols available for an object before any is placed: `1..=n` or `M`.
    pub fn pool(&self) -> Vec<Symbol> {
        match &self.multiset {
            Some(m) => m.clone(),
            None => (1..=self.n as Symbol).collect(),
        }
    }

    /// Sorted symbols left in the pool once `used` is placed, or `None` if
    /// `used` cannot be drawn from the pool.
    pub fn remainder(&self, used: &[Symbol]) -> Option<Vec<Symbol>> {
        match &self.multiset {
            Some(m) => multiset_difference(m, used),
            None => {
                let mut seen = vec![false; self.n + 1];
                for &x in used {
                    let i = x as usize;
                    if i == 0 || i > self.n || seen[i] {
                        return None;
                    }
                    seen[i] = true;
                }
                Some(
                    (1..=self.n)
                        .filter(|&i| !seen[i])
                        .map(|i| i as Symbol)
                        .collect(),
                )
            }
        }
    }

    pub fn is_object(&self, w: &[Symbol]) -> bool {
        w.len() == self.k && self.remainder(w).is_some()
    }

    pub fn is_vertex(&self, v: &[Symbol]) -> bool {
        v.len() == self.s && self.remainder(v).is_some()
    }

    /// The distinguished target vertex: `1 2 ... s`, or the first s symbols of
    /// the sorted multiset.
    pub fn minimum_vertex(&self) -> Vertex {
        Vertex(self.pool()[..self.s].to_vec())
    }

    fn multiplicities(&self) -> Vec<u64> {
        symbol_counts(self.multiset.as_deref().unwrap_or(&[]))
            .into_iter()
            .map(|(_, c)| c)
            .collect()
    }

    /// `n!/(n-k)!` or the multinomial coefficient of `M`.
    pub fn object_count(&self) -> Result<u64> {
        match self.mode {
            Mode::KPerm => falling_factorial(self.n as u64, self.k as u64).ok_or_else(|| {
                Error::CountOverflow {
                    expr: falling_factorial_expr(self.n as u64, self.k as u64),
                }
            }),
            Mode::Multiset => {
                let counts = self.multiplicities();
                multinomial(&counts).ok_or_else(|| Error::CountOverflow {
                    expr: multinomial_expr(&counts),
                })
            }
        }
    }

    /// Object count, rejected if above `limit`.
    pub fn object_count_within(&self, limit: u64) -> Result<u64> {
        let count = self.object_count()?;
        if count > limit {
            return Err(Error::LimitExceeded { count, limit });
        }
        Ok(count)
    }

    pub fn vertex_count(&self) -> Result<u64> {
        match self.mode {
            Mode::KPerm => falling_factorial(self.n as u64, self.s as u64).ok_or_else(|| {
                Error::CountOverflow {
                    expr: falling_factorial_expr(self.n as u64, self.s as u64),
                }
            }),
            Mode::Multiset => {
                let counts = self.multiplicities();
                count_sequences(&counts, self.s as u64).ok_or_else(|| Error::CountOverflow {
                    expr: format!("#{}-sequences from {}", self.s, multinomial_expr(&counts)),
                })
            }
        }
    }
}

impl fmt::Display for InstanceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.multiset {
            None => write!(f, "kperm n={} k={} s={}", self.n, self.k, self.s),
            Some(m) => {
                let parts: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                write!(f, "multiset M=[{}] s={}", parts.join(","), self.s)
            }
        }
    }
}

/// Distinct symbols of a sorted slice with their multiplicities.
pub(crate) fn symbol_counts(sorted: &[Symbol]) -> Vec<(Symbol, u64)> {
    let mut out: Vec<(Symbol, u64)> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Sorted `pool \ used` as multisets, or `None` if `used` is not contained in `pool`.
pub(crate) fn multiset_difference(pool: &[Symbol], used: &[Symbol]) -> Option<Vec<Symbol>> {
    let mut rest = pool.to_vec();
    rest.sort_unstable();
    for x in used {
        let i = rest.binary_search(x).ok()?;
        rest.remove(i);
    }
    Some(rest)
}

/// Number of distinct length-`len` sequences drawable from a multiset.
fn count_sequences(counts: &[u64], len: u64) -> Option<u64> {
    // dp[j]: sequences of length j over the symbols seen so far. Adding t
    // copies of a new symbol interleaves them in binom(j + t, t) ways.
    let mut dp = vec![0u64; len as usize + 1];
    dp[0] = 1;
    for &c in counts {
        let mut next = vec![0u64; len as usize + 1];
        for (j, &ways) in dp.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            for t in 0..=c.min(len - j as u64) {
                let total = j as u64 + t;
                let add = ways.checked_mul(crate::count::binomial(total, t)?)?;
                next[total as usize] = next[total as usize].checked_add(add)?;
            }
        }
        dp = next;
    }
    Some(dp[len as usize])
}

// --- feasibility -----------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Guaranteed,
    Unknown,
    Infeasible,
}

/// Which hypothesis makes full permutations of `[n]` work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    ShortOverlap,
    CoprimeOverlap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Multiset permutations with `2s < k`.
    ShortOverlap,
    /// Multiset permutations with `gcd(s, k) = 1` and `s <= k - 2`.
    CoprimeOverlap,
    /// Permutations of `[n]` (k = n) through one of the two routes above.
    FullPermutations(Route),
    /// k-permutations, `k < n`, with `2s < k` or (`gcd(s, k) = 1`, `s < k - 1`).
    KSetExchange,
    /// k-permutations, `k < n`, any `1 <= s < k`.
    BlockRotation,
    /// `s = k - 1` over permutations of a k-set, `k >= 3`: each object has
    /// exactly one successor, a rotation, so no cycle can cover all objects.
    FullPermUcycleImpossible,
    ParamViolation,
    /// No known result applies.
    Open,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Justification::ShortOverlap => "short-overlap",
            Justification::CoprimeOverlap => "coprime-overlap",
            Justification::FullPermutations(Route::ShortOverlap) => {
                "full-permutations/short-overlap"
            }
            Justification::FullPermutations(Route::CoprimeOverlap) => {
                "full-permutations/coprime-overlap"
            }
            Justification::KSetExchange => "k-set-exchange",
            Justification::BlockRotation => "block-rotation",
            Justification::FullPermUcycleImpossible => "full-permutation-ucycle-impossible",
            Justification::ParamViolation => "param-violation",
            Justification::Open => "open",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub status: Status,
    pub justification: Justification,
}

impl fmt::Display for FeasibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Guaranteed => "guaranteed",
            Status::Unknown => "unknown",
            Status::Infeasible => "infeasible",
        };
        write!(f, "{status} ({})", self.justification)
    }
}

pub fn feasibility(params: &InstanceParams) -> FeasibilityVerdict {
    use Justification as J;
    let (n, k, s) = (params.n, params.k, params.s);
    let short = 2 * s < k;
    let coprime = gcd(s, k) == 1 && s + 2 <= k;
    let verdict = |status, justification| FeasibilityVerdict {
        status,
        justification,
    };
    // A k-set with s = k-1: every object has a single successor.
    let rotation_only = s + 1 == k && k >= 3;
    match params.mode {
        Mode::KPerm if k < n => {
            if short || coprime {
                verdict(Status::Guaranteed, J::KSetExchange)
            } else {
                verdict(Status::Guaranteed, J::BlockRotation)
            }
        }
        Mode::KPerm => {
            if short {
                verdict(Status::Guaranteed, J::FullPermutations(Route::ShortOverlap))
            } else if coprime {
                verdict(
                    Status::Guaranteed,
                    J::FullPermutations(Route::CoprimeOverlap),
                )
            } else if rotation_only {
                verdict(Status::Infeasible, J::FullPermUcycleImpossible)
            } else {
                verdict(Status::Unknown, J::Open)
            }
        }
        Mode::Multiset => {
            let distinct = params
                .multiset
                .as_ref()
                .is_some_and(|m| m.windows(2).all(|w| w[0] != w[1]));
            if short {
                verdict(Status::Guaranteed, J::ShortOverlap)
            } else if coprime {
                verdict(Status::Guaranteed, J::CoprimeOverlap)
            } else if rotation_only && distinct {
                verdict(Status::Infeasible, J::FullPermUcycleImpossible)
            } else {
                verdict(Status::Unknown, J::Open)
            }
        }
    }
}

/// Feasibility of an unvalidated description; invalid input is infeasible.
pub fn feasibility_raw(raw: &RawParams) -> FeasibilityVerdict {
    match validate_params(raw) {
        Ok(p) => feasibility(&p),
        Err(_) => FeasibilityVerdict {
            status: Status::Infeasible,
            justification: Justification::ParamViolation,
        },
    }
}

// --- enumeration -----------------------------------------------------------

/// Every object of an instance, once each, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Objects {
    n: usize,
    kperm: bool,
    current: Option<Vec<Symbol>>,
    started: bool,
}

impl Iterator for Objects {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.as_mut()?;
        if !self.started {
            self.started = true;
            return Some(Word(cur.clone()));
        }
        let advanced = if self.kperm {
            next_partial_permutation(cur, self.n)
        } else {
            next_permutation(cur)
        };
        if advanced {
            Some(Word(cur.clone()))
        } else {
            self.current = None;
            None
        }
    }
}

pub fn enumerate_objects(params: &InstanceParams, limit: u64) -> Result<Objects> {
    params.object_count_within(limit)?;
    let first = match &params.multiset {
        Some(m) => m.clone(),
        None => (1..=params.k as Symbol).collect(),
    };
    Ok(Objects {
        n: params.n,
        kperm: params.mode == Mode::KPerm,
        current: Some(first),
        started: false,
    })
}

/// Advances a sequence of distinct symbols from `1..=n` to its lexicographic
/// successor among sequences of the same length.
pub(crate) fn next_partial_permutation(a: &mut [Symbol], n: usize) -> bool {
    let mut used = vec![false; n + 2];
    for &x in a.iter() {
        used[x as usize] = true;
    }
    for j in (0..a.len()).rev() {
        used[a[j] as usize] = false;
        if let Some(x) = (a[j] as usize + 1..=n).find(|&x| !used[x]) {
            a[j] = x as Symbol;
            used[x] = true;
            let mut next = 1;
            for slot in a[j + 1..].iter_mut() {
                while used[next] {
                    next += 1;
                }
                *slot = next as Symbol;
                used[next] = true;
            }
            return true;
        }
    }
    false
}

// --- ranking ---------------------------------------------------------------

/// Lexicographic rank of a sequence of distinct symbols from `1..=n` among all
/// sequences of its length (falling-factorial mixed radix).
///
/// The caller guarantees the sequence is valid and `n!/(n-len)!` fits in u64.
pub fn rank_partial_perm(symbols: &[Symbol], n: usize) -> u64 {
    let len = symbols.len();
    let mut used = vec![false; n + 1];
    let mut rank = 0u64;
    for (i, &x) in symbols.iter().enumerate() {
        let smaller = (1..x as usize).filter(|&y| !used[y]).count() as u64;
        used[x as usize] = true;
        let weight = falling_factorial((n - 1 - i) as u64, (len - 1 - i) as u64)
            .expect("rank weight overflow");
        rank += smaller * weight;
    }
    rank
}

/// Inverse of [`rank_partial_perm`].
pub fn unrank_partial_perm(mut rank: u64, n: usize, len: usize) -> Vec<Symbol> {
    let mut free: Vec<Symbol> = (1..=n as Symbol).collect();
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let weight = falling_factorial((n - 1 - i) as u64, (len - 1 - i) as u64)
            .expect("rank weight overflow");
        let digit = (rank / weight) as usize;
        rank %= weight;
        out.push(free.remove(digit));
    }
    out
}

/// Bijection between the vertices of an instance and `0..vertex_count`.
///
/// k-permutation instances use the closed-form mixed-radix rank; multiset
/// instances keep an ordered map of all vertices.
#[derive(Clone, Debug)]
pub enum VertexIndex {
    KPerm {
        n: usize,
        s: usize,
        count: u64,
    },
    Multiset {
        ranks: BTreeMap<Vec<Symbol>, u64>,
        vertices: Vec<Vec<Symbol>>,
    },
}

impl VertexIndex {
    pub fn new(params: &InstanceParams) -> Result<Self> {
        let count = params.vertex_count()?;
        match &params.multiset {
            None => Ok(VertexIndex::KPerm {
                n: params.n,
                s: params.s,
                count,
            }),
            Some(m) => {
                let mut vertices = Vec::with_capacity(count as usize);
                let mut counts = symbol_counts(m);
                let mut buf = Vec::with_capacity(params.s);
                sequences_from(&mut counts, params.s, &mut buf, &mut vertices);
                let ranks = vertices
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.clone(), i as u64))
                    .collect();
                Ok(VertexIndex::Multiset { ranks, vertices })
            }
        }
    }

    pub fn len(&self) -> u64 {
        match self {
            VertexIndex::KPerm { count, .. } => *count,
            VertexIndex::Multiset { vertices, .. } => vertices.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of `v`, or `None` if `v` is not a vertex.
    pub fn rank_of(&self, v: &[Symbol]) -> Option<u64> {
        match self {
            VertexIndex::KPerm { n, s, .. } => {
                let mut seen = vec![false; n + 1];
                if v.len() != *s {
                    return None;
                }
                for &x in v {
                    let i = x as usize;
                    if i == 0 || i > *n || seen[i] {
                        return None;
                    }
                    seen[i] = true;
                }
                Some(rank_partial_perm(v, *n))
            }
            VertexIndex::Multiset { ranks, .. } => ranks.get(v).copied(),
        }
    }

    pub fn rank(&self, v: &Vertex) -> Result<u64> {
        self.rank_of(&v.0)
            .ok_or_else(|| Error::InvalidVertex(v.to_string()))
    }

    pub fn unrank(&self, r: u64) -> Result<Vertex> {
        if r >= self.len() {
            return Err(Error::RankOutOfRange {
                rank: r,
                count: self.len(),
            });
        }
        Ok(Vertex(match self {
            VertexIndex::KPerm { n, s, .. } => unrank_partial_perm(r, *n, *s),
            VertexIndex::Multiset { vertices, .. } => vertices[r as usize].clone(),
        }))
    }
}

fn sequences_from(
    counts: &mut [(Symbol, u64)],
    len: usize,
    buf: &mut Vec<Symbol>,
    out: &mut Vec<Vec<Symbol>>,
) {
    if buf.len() == len {
        out.push(buf.clone());
        return;
    }
    for i in 0..counts.len() {
        if counts[i].1 == 0 {
            continue;
        }
        counts[i].1 -= 1;
        buf.push(counts[i].0);
        sequences_from(counts, len, buf, out);
        buf.pop();
        counts[i].1 += 1;
    }
}

pub fn rank_vertex(v: &Vertex, params: &InstanceParams) -> Result<u64> {
    VertexIndex::new(params)?.rank(v)
}

pub fn unrank_vertex(r: u64, params: &InstanceParams) -> Result<Vertex> {
    VertexIndex::new(params)?.unrank(r)
}
