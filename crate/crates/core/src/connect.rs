//! Connectivity certificates for the transition graph.
//!
//! Each walker starts at an arbitrary vertex and produces an explicit walk to
//! the minimum vertex, using edges forwards (source to target) or backwards
//! (target to source). A certificate can be replayed against the instance
//! without trusting the walker that produced it.
//!
//! * [`walk_multiset`]: permutations of a multiset with `2s < k`. Fixes the
//!   first disagreeing position per round, by a transposition inside the
//!   prefix or by swapping in a symbol from the rest of the object.
//! * [`walk_kperm`]: k-permutations where the k-set of the current object
//!   can be rearranged freely. Repeatedly trades symbols above `k` for
//!   missing symbols of `1..=k`.
//! * [`walk_general`]: any k-permutation instance with `k < n`. Rotates the
//!   current object in blocks of `gcd(s, k)` and substitutes one position
//!   at a time.
//! * [`walk_search`]: breadth-first search, for the coprime-overlap regime
//!   where no constructive walk is available.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::gcd;

use crate::count::next_permutation;
use crate::error::{Error, Result};
use crate::graph::{completions, edge_for, edge_ordinal, Edge};
use crate::instance::{
    feasibility, multiset_difference, InstanceParams, Justification, Mode, Route, Symbol, Vertex,
    Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub edge: Edge,
    pub direction: Direction,
}

impl PathStep {
    /// Vertex the step leaves from.
    pub fn from(&self) -> Vertex {
        match self.direction {
            Direction::Forward => self.edge.source(),
            Direction::Backward => self.edge.target(),
        }
    }

    /// Vertex the step arrives at.
    pub fn to(&self) -> Vertex {
        match self.direction {
            Direction::Forward => self.edge.target(),
            Direction::Backward => self.edge.source(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCertificate {
    pub origin: Vertex,
    pub steps: Vec<PathStep>,
    pub terminus: Vertex,
}

impl PathCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for PathCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "origin {}", self.origin)?;
        for (i, step) in self.steps.iter().enumerate() {
            let dir = match step.direction {
                Direction::Forward => "forward ",
                Direction::Backward => "backward",
            };
            writeln!(
                f,
                "{:>4}  {dir}  {}  {} -> {}",
                i + 1,
                step.edge.word,
                step.from(),
                step.to()
            )?;
        }
        writeln!(f, "terminus {}", self.terminus)
    }
}

/// First disagreeing position with the minimum vertex, one entry per round.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProgressTrace(pub Vec<usize>);

impl ProgressTrace {
    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

/// Longest certificate a walker may emit: `8·k·s` steps.
pub fn step_cap(params: &InstanceParams) -> usize {
    8 * params.k() * params.s()
}

/// Certificate under construction; tracks the current vertex.
struct Walk<'a> {
    params: &'a InstanceParams,
    origin: Vec<Symbol>,
    current: Vec<Symbol>,
    steps: Vec<PathStep>,
    cap: usize,
}

impl<'a> Walk<'a> {
    fn start(params: &'a InstanceParams, origin: &Vertex) -> Result<Self> {
        if !params.is_vertex(&origin.0) {
            return Err(Error::InvalidVertex(origin.to_string()));
        }
        Ok(Walk {
            params,
            origin: origin.0.clone(),
            current: origin.0.clone(),
            steps: Vec::new(),
            cap: step_cap(params),
        })
    }

    fn push(&mut self, word: Vec<Symbol>, direction: Direction) -> Result<()> {
        let s = self.params.s();
        let (from, to) = match direction {
            Direction::Forward => (&word[..s], &word[word.len() - s..]),
            Direction::Backward => (&word[word.len() - s..], &word[..s]),
        };
        assert_eq!(from, &self.current[..], "walker broke the chain");
        self.current = to.to_vec();
        let edge = edge_for(self.params, Word(word))?;
        self.steps.push(PathStep { edge, direction });
        if self.steps.len() > self.cap {
            return Err(Error::StepCap { cap: self.cap });
        }
        Ok(())
    }

    fn forward(&mut self, word: Vec<Symbol>) -> Result<()> {
        self.push(word, Direction::Forward)
    }

    fn backward(&mut self, word: Vec<Symbol>) -> Result<()> {
        self.push(word, Direction::Backward)
    }

    /// Drops everything after the first arrival at the final vertex.
    fn finish(mut self) -> PathCertificate {
        let first = if self.origin == self.current {
            Some(0)
        } else {
            self.steps
                .iter()
                .position(|st| st.to().0 == self.current)
                .map(|i| i + 1)
        };
        if let Some(n) = first {
            self.steps.truncate(n);
        }
        PathCertificate {
            origin: Vertex(self.origin),
            steps: self.steps,
            terminus: Vertex(self.current),
        }
    }
}

fn concat(parts: &[&[Symbol]]) -> Vec<Symbol> {
    parts.concat()
}

/// Walks within the permutations of `pool` (sorted, `2s < |pool|`) to the
/// vertex `pool[..s]`.
fn exchange_within(walk: &mut Walk<'_>, pool: &[Symbol], trace: &mut Vec<usize>) -> Result<()> {
    let s = walk.params.s();
    let k = pool.len();
    let target = &pool[..s];
    loop {
        let cur = walk.current.clone();
        let Some(i) = (0..s).find(|&i| cur[i] != target[i]) else {
            return Ok(());
        };
        trace.push(i);
        let want = target[i];
        let rest = multiset_difference(pool, &cur).expect("vertex drawn from pool");
        if let Some(j) = (i + 1..s).find(|&j| cur[j] == want) {
            // Transpose positions i and j of the prefix; the suffix is untouched.
            let fwd = concat(&[&cur, &rest]);
            let mut back = fwd.clone();
            back.swap(i, j);
            walk.forward(fwd)?;
            walk.backward(back)?;
        } else {
            // Keep a spare copy of `want` out of the suffix, then swap it in.
            let middle = k - 2 * s;
            let mut tail = rest;
            let first = tail
                .iter()
                .position(|&y| y == want)
                .expect("minimum symbol still available");
            if first >= middle {
                let y = tail.remove(first);
                tail.insert(middle - 1, y);
            }
            let suffix = tail[middle..].to_vec();
            let fwd = concat(&[&cur, &tail]);
            let mut head = cur.clone();
            head[i] = want;
            let fill = multiset_difference(pool, &concat(&[&head, &suffix]))
                .expect("spare copy keeps the swap inside the pool");
            let back = concat(&[&head, &fill, &suffix]);
            walk.forward(fwd)?;
            walk.backward(back)?;
        }
    }
}

/// Shortest undirected walk from the current vertex to `target`.
///
/// Neighbours come from `pool` arrangements when given (objects are then the
/// permutations of `pool`), else from the instance's completions.
fn search_within(walk: &mut Walk<'_>, pool: Option<&[Symbol]>, target: &[Symbol]) -> Result<()> {
    let params = walk.params;
    let s = params.s();
    let start = walk.current.clone();
    if start == target {
        return Ok(());
    }
    let tails = |u: &[Symbol]| -> Vec<Vec<Symbol>> {
        match pool {
            Some(pool) => {
                let mut rest = multiset_difference(pool, u).expect("vertex drawn from pool");
                let mut out = vec![rest.clone()];
                while next_permutation(&mut rest) {
                    out.push(rest.clone());
                }
                out
            }
            None => completions(params, &params.remainder(u).expect("valid vertex")),
        }
    };
    let mut parent: HashMap<Vec<Symbol>, (Vec<Symbol>, Vec<Symbol>, Direction)> = HashMap::new();
    let mut queue = VecDeque::from([start.clone()]);
    let mut found = false;
    'bfs: while let Some(u) = queue.pop_front() {
        let tails = tails(&u);
        let forward = tails.iter().map(|t| (concat(&[&u, t]), Direction::Forward));
        let backward = tails
            .iter()
            .map(|t| (concat(&[t, &u]), Direction::Backward));
        for (word, dir) in forward.chain(backward) {
            let next = match dir {
                Direction::Forward => word[word.len() - s..].to_vec(),
                Direction::Backward => word[..s].to_vec(),
            };
            if next == start || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), (u.clone(), word, dir));
            if next == target {
                found = true;
                break 'bfs;
            }
            queue.push_back(next);
        }
    }
    if !found {
        return Err(Error::Precondition(format!(
            "{} is not connected to {}",
            Vertex(start),
            Vertex(target.to_vec())
        )));
    }
    let mut path = Vec::new();
    let mut at = target.to_vec();
    while at != start {
        let (prev, word, dir) = parent.remove(&at).expect("parent chain reaches start");
        path.push((word, dir));
        at = prev;
    }
    for (word, dir) in path.into_iter().rev() {
        walk.push(word, dir)?;
    }
    Ok(())
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

/// Walker for permutations of a multiset with `2s < k`; k-permutation
/// instances with `k = n` are treated as the multiset `[1, ..., n]`.
pub fn walk_multiset(
    w: &Vertex,
    params: &InstanceParams,
) -> Result<(PathCertificate, ProgressTrace)> {
    require(
        params.mode() == Mode::Multiset || params.k() == params.n(),
        "walk_multiset needs a multiset or full-permutation instance",
    )?;
    require(2 * params.s() < params.k(), "walk_multiset needs 2s < k")?;
    let mut walk = Walk::start(params, w)?;
    let mut trace = Vec::new();
    exchange_within(&mut walk, &params.pool(), &mut trace)?;
    Ok((walk.finish(), ProgressTrace(trace)))
}

fn kset_exchange(walk: &mut Walk<'_>, deficits: &mut Vec<usize>) -> Result<()> {
    let params = walk.params;
    let (k, s) = (params.k(), params.s());
    let rest = params.remainder(&walk.current).expect("valid vertex");
    let mut kset = concat(&[&walk.current, &rest[..k - s]]);
    kset.sort_unstable();
    loop {
        // Rearrange the current k-set into increasing order.
        if 2 * s < k {
            exchange_within(walk, &kset, &mut Vec::new())?;
        } else {
            search_within(walk, Some(&kset), &kset[..s])?;
        }
        let outside = kset.iter().filter(|&&x| x as usize > k).count();
        deficits.push(outside);
        if outside == 0 {
            return Ok(());
        }
        let missing: Vec<Symbol> = (1..=k as Symbol).filter(|x| !kset.contains(x)).collect();
        let d = missing.len().min(k - s);
        let mut appended = missing[..d].to_vec();
        appended.extend_from_slice(&kset[s..s + (k - s - d)]);
        appended.sort_unstable();
        let word = concat(&[&kset[..s], &appended]);
        walk.forward(word.clone())?;
        kset = word;
        kset.sort_unstable();
    }
}

fn kperm_exchange_applies(params: &InstanceParams) -> bool {
    let (k, s) = (params.k(), params.s());
    2 * s < k || (gcd(s, k) == 1 && s + 2 <= k)
}

/// Walker for k-permutations, `k < n`, with `2s < k` or (`gcd(s, k) = 1`,
/// `s < k - 1`). Also returns, per round, the number of symbols above `k` in
/// the current k-set; the sequence strictly decreases to zero.
pub fn walk_kperm_traced(
    w: &Vertex,
    params: &InstanceParams,
) -> Result<(PathCertificate, Vec<usize>)> {
    require(
        params.mode() == Mode::KPerm && params.k() < params.n(),
        "walk_kperm needs a k-permutation instance with k < n",
    )?;
    require(
        kperm_exchange_applies(params),
        "walk_kperm needs 2s < k, or gcd(s, k) = 1 and s < k - 1",
    )?;
    let mut walk = Walk::start(params, w)?;
    let mut deficits = Vec::new();
    kset_exchange(&mut walk, &mut deficits)?;
    Ok((walk.finish(), deficits))
}

pub fn walk_kperm(w: &Vertex, params: &InstanceParams) -> Result<PathCertificate> {
    walk_kperm_traced(w, params).map(|(c, _)| c)
}

fn rotate_left(w: &[Symbol], by: usize) -> Vec<Symbol> {
    let mut r = w.to_vec();
    r.rotate_left(by);
    r
}

/// Block-rotation walk starting from the s-prefix of `seed`.
fn rotation(walk: &mut Walk<'_>, seed: Vec<Symbol>) -> Result<()> {
    let params = walk.params;
    let (n, k, s) = (params.n(), params.k(), params.s());
    let g = gcd(s, k);
    let shift = k - s;
    let mut w = seed;
    // The current vertex is the cyclic window of `w` starting at `offset`.
    let mut offset = 0usize;

    let rotate_to = |walk: &mut Walk<'_>, w: &[Symbol], offset: &mut usize, dest: usize| {
        while *offset != dest {
            walk.forward(rotate_left(w, *offset))?;
            *offset = (*offset + shift) % k;
        }
        Ok::<(), Error>(())
    };
    // Forward along the rotation at `at`, back along the same word with
    // position `pos` replaced; `pos - at < g <= k - s` keeps the suffix fixed.
    let substitute =
        |walk: &mut Walk<'_>, w: &mut Vec<Symbol>, at: usize, pos: usize, letter: Symbol| {
            let r = rotate_left(w, at);
            let mut back = r.clone();
            back[pos - at] = letter;
            walk.forward(r)?;
            walk.backward(back)?;
            w[pos] = letter;
            Ok::<(), Error>(())
        };

    while let Some(p) = (0..s).find(|&p| w[p] as usize != p + 1) {
        let letter = (p + 1) as Symbol;
        if let Some(q) = w.iter().position(|&x| x == letter) {
            // The letter sits later in `w`: replace it by an unused one first.
            let fresh = (1..=n as Symbol)
                .find(|x| !w.contains(x))
                .expect("k < n leaves an unused letter");
            let at = g * (q / g);
            rotate_to(walk, &w, &mut offset, at)?;
            substitute(walk, &mut w, at, q, fresh)?;
            offset = at;
        }
        let at = g * (p / g);
        rotate_to(walk, &w, &mut offset, at)?;
        substitute(walk, &mut w, at, p, letter)?;
        offset = at;
        rotate_to(walk, &w, &mut offset, 0)?;
    }
    Ok(())
}

/// Walker for every k-permutation instance with `1 <= s < k < n`.
///
/// With `gcd(s, k) = 1` and `s < k - 1` this is exactly [`walk_kperm`];
/// otherwise the block-rotation walk runs from `w` extended by its smallest
/// completion.
pub fn walk_general(w: &Vertex, params: &InstanceParams) -> Result<PathCertificate> {
    require(
        params.mode() == Mode::KPerm && params.k() < params.n(),
        "walk_general needs a k-permutation instance with k < n",
    )?;
    if !params.is_vertex(&w.0) {
        return Err(Error::InvalidVertex(w.to_string()));
    }
    let (k, s) = (params.k(), params.s());
    if gcd(s, k) == 1 && s + 2 <= k {
        return walk_kperm(w, params);
    }
    let rest = params.remainder(&w.0).expect("valid vertex");
    walk_general_from(&Word(concat(&[&w.0, &rest[..k - s]])), params)
}

/// Block-rotation walk from the s-prefix of the object `seed`.
pub fn walk_general_from(seed: &Word, params: &InstanceParams) -> Result<PathCertificate> {
    require(
        params.mode() == Mode::KPerm && params.k() < params.n(),
        "walk_general needs a k-permutation instance with k < n",
    )?;
    if !params.is_object(&seed.0) {
        return Err(Error::InvalidWord(seed.to_string()));
    }
    let mut walk = Walk::start(params, &seed.prefix(params.s()))?;
    rotation(&mut walk, seed.0.clone())?;
    Ok(walk.finish())
}

/// Shortest walk to the minimum vertex found by breadth-first search over the
/// whole transition graph.
pub fn walk_search(w: &Vertex, params: &InstanceParams) -> Result<PathCertificate> {
    let mut walk = Walk::start(params, w)?;
    search_within(&mut walk, None, &params.minimum_vertex().0)?;
    Ok(walk.finish())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkerKind {
    Multiset,
    General,
    Search,
}

impl fmt::Display for WalkerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WalkerKind::Multiset => "multiset-exchange",
            WalkerKind::General => "block-rotation",
            WalkerKind::Search => "breadth-first-search",
        })
    }
}

/// The walker that certifies connectivity for a guaranteed instance.
pub fn applicable_walker(params: &InstanceParams) -> Option<WalkerKind> {
    use Justification as J;
    match feasibility(params).justification {
        J::ShortOverlap | J::FullPermutations(Route::ShortOverlap) => Some(WalkerKind::Multiset),
        J::CoprimeOverlap | J::FullPermutations(Route::CoprimeOverlap) => Some(WalkerKind::Search),
        J::KSetExchange | J::BlockRotation => Some(WalkerKind::General),
        _ => None,
    }
}

/// Runs the applicable walker from `w`.
pub fn walk(w: &Vertex, params: &InstanceParams) -> Result<PathCertificate> {
    match applicable_walker(params) {
        Some(WalkerKind::Multiset) => walk_multiset(w, params).map(|(c, _)| c),
        Some(WalkerKind::General) => walk_general(w, params),
        Some(WalkerKind::Search) => walk_search(w, params),
        None => Err(Error::Precondition(format!(
            "{params} is not guaranteed connected; no walker applies"
        ))),
    }
}

/// First point at which a certificate fails to replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayViolation {
    /// Offending step, or `None` for a problem with the endpoints.
    pub step: Option<usize>,
    pub reason: String,
}

impl fmt::Display for ReplayViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {}: {}", i + 1, self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

/// Checks a certificate against the instance alone.
pub fn replay_certificate(
    c: &PathCertificate,
    params: &InstanceParams,
) -> std::result::Result<(), ReplayViolation> {
    let at = |step: Option<usize>, reason: String| Err(ReplayViolation { step, reason });
    if !params.is_vertex(&c.origin.0) {
        return at(None, format!("origin {} is not a vertex", c.origin));
    }
    let s = params.s();
    let mut cur = c.origin.0.clone();
    for (i, step) in c.steps.iter().enumerate() {
        let word = &step.edge.word;
        if step.edge.overlap != s {
            return at(
                Some(i),
                format!("edge overlap {} != {s}", step.edge.overlap),
            );
        }
        let Some(ordinal) = edge_ordinal(params, &word.0) else {
            return at(Some(i), format!("{word} is not an object"));
        };
        if ordinal != step.edge.ordinal {
            return at(
                Some(i),
                format!(
                    "{word} has ordinal {ordinal}, certificate says {}",
                    step.edge.ordinal
                ),
            );
        }
        let from = step.from();
        if from.0 != cur {
            return at(
                Some(i),
                format!("{word} leaves from {from}, walk is at {}", Vertex(cur)),
            );
        }
        cur = step.to().0;
    }
    if cur != c.terminus.0 {
        return at(
            None,
            format!(
                "walk ends at {}, certificate claims {}",
                Vertex(cur),
                c.terminus
            ),
        );
    }
    if c.terminus != params.minimum_vertex() {
        return at(
            None,
            format!("terminus {} is not the minimum vertex", c.terminus),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::VertexIndex;

    fn v(xs: &[Symbol]) -> Vertex {
        Vertex(xs.to_vec())
    }

    fn kperm(n: u64, k: u64, s: u64) -> InstanceParams {
        InstanceParams::kperm(n, k, s).unwrap()
    }

    fn replays(c: &PathCertificate, p: &InstanceParams) {
        if let Err(e) = replay_certificate(c, p) {
            panic!("{p}: {e}\n{c}");
        }
        assert!(c.len() <= step_cap(p));
    }

    #[test]
    fn minimum_vertex_needs_no_steps() {
        let p = InstanceParams::multiset(&[1, 2, 3, 4, 5], 2).unwrap();
        let (c, t) = walk_multiset(&v(&[1, 2]), &p).unwrap();
        assert!(c.is_empty() && t.0.is_empty());
        assert!(replay_certificate(&c, &p).is_ok());
        assert!(walk_kperm(&v(&[1]), &kperm(5, 4, 1)).unwrap().is_empty());
        assert!(walk_general(&v(&[1, 2]), &kperm(5, 4, 2))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn multiset_examples() {
        let p = InstanceParams::multiset(&[1, 2, 3, 4, 5], 2).unwrap();
        let (c, t) = walk_multiset(&v(&[2, 1]), &p).unwrap();
        replays(&c, &p);
        assert_eq!(t.0, vec![0]);
        assert_eq!(c.len(), 2);

        let (c, t) = walk_multiset(&v(&[3, 4]), &p).unwrap();
        replays(&c, &p);
        assert!(t.0.len() <= 2 && t.is_strictly_increasing());
    }

    #[test]
    fn multiset_swap_with_repeated_symbols() {
        // three 1s: the suffix cannot avoid 1 entirely, only keep a spare copy
        let p = InstanceParams::multiset(&[1, 1, 1, 2, 2, 2], 2).unwrap();
        let (c, t) = walk_multiset(&v(&[2, 2]), &p).unwrap();
        replays(&c, &p);
        assert_eq!(t.0, vec![0, 1]);
    }

    #[test]
    fn kperm_examples() {
        let p = kperm(5, 4, 1);
        let c = walk_kperm(&v(&[5]), &p).unwrap();
        replays(&c, &p);
        assert_eq!(c.terminus, v(&[1]));

        let p = kperm(6, 4, 1);
        let (c, deficits) = walk_kperm_traced(&v(&[6]), &p).unwrap();
        replays(&c, &p);
        assert!(deficits.windows(2).all(|w| w[0] > w[1]), "{deficits:?}");
        assert_eq!(deficits.last(), Some(&0));
    }

    #[test]
    fn kperm_with_search_inside_kset() {
        // gcd(3, 5) = 1 with 2s >= k: the k-set is rearranged by search
        let p = kperm(7, 5, 3);
        let c = walk_kperm(&v(&[7, 6, 5]), &p).unwrap();
        replays(&c, &p);
    }

    #[test]
    fn general_examples() {
        let p = kperm(5, 4, 2);
        let c = walk_general(&v(&[3, 4]), &p).unwrap();
        replays(&c, &p);

        let p = kperm(7, 6, 4);
        let c = walk_general(&v(&[2, 1, 4, 3]), &p).unwrap();
        replays(&c, &p);
        let c = walk_general_from(&Word(vec![2, 1, 4, 3, 6, 5]), &p).unwrap();
        replays(&c, &p);
        let c = walk_general(&v(&[2, 4, 6, 1]), &p).unwrap();
        replays(&c, &p);
    }

    #[test]
    fn general_delegates_when_coprime() {
        let p = kperm(6, 5, 2);
        for r in 0..p.vertex_count().unwrap() {
            let u = VertexIndex::new(&p).unwrap().unrank(r).unwrap();
            assert_eq!(walk_general(&u, &p).unwrap(), walk_kperm(&u, &p).unwrap());
        }
    }

    #[test]
    fn general_handles_ucycle_overlap() {
        // s = k - 1: gcd is 1 but the exchange walker does not apply
        assert!(walk_kperm(&v(&[2]), &kperm(3, 2, 1)).is_err());
        for p in [kperm(3, 2, 1), kperm(5, 4, 3), kperm(6, 3, 2)] {
            let idx = VertexIndex::new(&p).unwrap();
            for r in 0..idx.len() {
                let c = walk_general(&idx.unrank(r).unwrap(), &p).unwrap();
                replays(&c, &p);
            }
        }
    }

    #[test]
    fn search_examples() {
        let p = kperm(5, 5, 3);
        let c = walk_search(&v(&[5, 4, 3]), &p).unwrap();
        replays(&c, &p);
        let p = InstanceParams::multiset(&[1, 1, 2, 2, 3], 3).unwrap();
        let c = walk_search(&v(&[3, 2, 2]), &p).unwrap();
        replays(&c, &p);
        // disconnected instance
        let p = kperm(4, 4, 2);
        assert!(matches!(
            walk_search(&v(&[1, 3]), &p),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn preconditions() {
        assert!(walk_multiset(&v(&[1, 2]), &kperm(5, 4, 2)).is_err());
        assert!(walk_multiset(&v(&[1, 2, 3]), &kperm(5, 5, 3)).is_err());
        assert!(walk_kperm(&v(&[1, 2]), &kperm(6, 4, 2)).is_err());
        assert!(walk_general(&v(&[1, 1]), &kperm(5, 4, 2)).is_err());
        assert!(walk_general(&v(&[1, 2]), &kperm(4, 4, 2)).is_err());
        assert!(walk(&v(&[1, 2, 3]), &kperm(4, 4, 3)).is_err());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let p = kperm(5, 4, 2);
        let mut c = walk_general(&v(&[2, 1]), &p).unwrap();
        assert!(replay_certificate(&c, &p).is_ok());
        c.steps[2].edge.word.0.swap(0, 1);
        let err = replay_certificate(&c, &p).unwrap_err();
        assert!(err.step.is_some());

        let mut c = walk_general(&v(&[2, 1]), &p).unwrap();
        c.steps[1].edge.word = Word(vec![1, 1, 2, 3]);
        assert_eq!(replay_certificate(&c, &p).unwrap_err().step, Some(1));

        let mut c = walk_general(&v(&[2, 1]), &p).unwrap();
        c.terminus = v(&[2, 1]);
        assert_eq!(replay_certificate(&c, &p).unwrap_err().step, None);
    }

    #[test]
    fn empty_certificate_replays() {
        let p = kperm(5, 4, 2);
        let c = PathCertificate {
            origin: v(&[1, 2]),
            steps: vec![],
            terminus: v(&[1, 2]),
        };
        assert!(replay_certificate(&c, &p).is_ok());
        let c = PathCertificate {
            origin: v(&[1, 3]),
            steps: vec![],
            terminus: v(&[1, 3]),
        };
        assert!(replay_certificate(&c, &p).is_err());
    }

    #[test]
    fn every_vertex_small_instances() {
        for p in [
            kperm(5, 4, 2),
            kperm(6, 4, 2),
            kperm(6, 4, 3),
            kperm(6, 5, 3),
            kperm(5, 5, 2),
            InstanceParams::multiset(&[1, 1, 2, 3, 4], 2).unwrap(),
            InstanceParams::multiset(&[1, 1, 1, 2, 2, 2], 2).unwrap(),
        ] {
            let idx = VertexIndex::new(&p).unwrap();
            for r in 0..idx.len() {
                let c = walk(&idx.unrank(r).unwrap(), &p).unwrap();
                replays(&c, &p);
            }
        }
    }
}
