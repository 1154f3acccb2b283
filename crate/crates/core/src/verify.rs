//! Independent checks of generated cycles.
//!
//! Nothing here trusts generator output: object counts and coverage are
//! re-derived from the instance, and the Hamilton oracle searches the
//! object-level overlap graph directly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::euler::{decode_cycle, decode_symbols, generate};
use crate::instance::{
    enumerate_objects, feasibility, rank_partial_perm, InstanceParams, Mode, Status, Symbol,
    Vertex, Word, DEFAULT_EDGE_LIMIT,
};

/// Adjacent pair `(position, position + 1)` whose overlap does not match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapViolation {
    pub position: usize,
    /// s-suffix of the object at `position`.
    pub expected: Vertex,
    /// s-prefix of the object that follows it.
    pub found: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    /// Objects read from the input.
    pub object_count: u64,
    /// Objects the instance has.
    pub expected_count: u64,
    /// One entry per surplus occurrence.
    pub duplicates: Vec<Word>,
    pub missing_count: u64,
    /// Entries that are not objects of the instance, with their position.
    pub invalid_words: Vec<(usize, Word)>,
    pub overlap_violations: Vec<OverlapViolation>,
    pub length_ok: bool,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.valid)?;
        writeln!(f, "object_count: {}", self.object_count)?;
        writeln!(f, "expected_count: {}", self.expected_count)?;
        writeln!(f, "length_ok: {}", self.length_ok)?;
        writeln!(f, "missing: {}", self.missing_count)?;
        writeln!(f, "duplicates: {}", self.duplicates.len())?;
        for w in &self.duplicates {
            writeln!(f, "  duplicate {w}")?;
        }
        writeln!(f, "invalid_words: {}", self.invalid_words.len())?;
        for (i, w) in &self.invalid_words {
            writeln!(f, "  invalid at {i}: {w}")?;
        }
        writeln!(f, "overlap_violations: {}", self.overlap_violations.len())?;
        for v in &self.overlap_violations {
            writeln!(
                f,
                "  violation at {} -> {}: suffix {} != prefix {}",
                v.position,
                (v.position + 1) % (self.object_count.max(1) as usize),
                v.expected,
                v.found
            )?;
        }
        Ok(())
    }
}

/// Exact-once accounting, keyed by rank for k-permutations and by value otherwise.
enum Coverage {
    Ranked { n: usize, seen: HashMap<u64, u32> },
    Keyed(BTreeMap<Vec<Symbol>, u32>),
}

impl Coverage {
    fn new(params: &InstanceParams, rankable: bool) -> Self {
        if params.mode() == Mode::KPerm && rankable {
            Coverage::Ranked {
                n: params.n(),
                seen: HashMap::new(),
            }
        } else {
            Coverage::Keyed(BTreeMap::new())
        }
    }

    /// Records a valid object; returns how often it has now been seen.
    fn record(&mut self, w: &[Symbol]) -> u32 {
        let slot = match self {
            Coverage::Ranked { n, seen } => seen.entry(rank_partial_perm(w, *n)).or_insert(0),
            Coverage::Keyed(seen) => seen.entry(w.to_vec()).or_insert(0),
        };
        *slot += 1;
        *slot
    }

    fn distinct(&self) -> u64 {
        match self {
            Coverage::Ranked { seen, .. } => seen.len() as u64,
            Coverage::Keyed(seen) => seen.len() as u64,
        }
    }
}

fn assess(
    words: &[Word],
    params: &InstanceParams,
    length_ok: bool,
    overlap_violations: Vec<OverlapViolation>,
) -> VerificationReport {
    let expected = params.object_count();
    let expected_count = *expected.as_ref().unwrap_or(&u64::MAX);
    let mut coverage = Coverage::new(params, expected.is_ok());
    let mut duplicates = Vec::new();
    let mut invalid_words = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if !params.is_object(&w.0) {
            invalid_words.push((i, w.clone()));
        } else if coverage.record(&w.0) > 1 {
            duplicates.push(w.clone());
        }
    }
    let missing_count = expected_count - coverage.distinct();
    let valid = length_ok
        && missing_count == 0
        && duplicates.is_empty()
        && invalid_words.is_empty()
        && overlap_violations.is_empty();
    VerificationReport {
        valid,
        object_count: words.len() as u64,
        expected_count,
        duplicates,
        missing_count,
        invalid_words,
        overlap_violations,
        length_ok,
    }
}

/// Decodes a cyclic string at stride `k - s` and checks exact-once coverage.
pub fn verify_cycle_string(symbols: &[Symbol], params: &InstanceParams) -> VerificationReport {
    match decode_symbols(symbols, params.k(), params.s()) {
        Ok(words) if !symbols.is_empty() => assess(&words, params, true, Vec::new()),
        _ => assess(&[], params, false, Vec::new()),
    }
}

/// Checks a list of objects: every cyclically adjacent pair must overlap by
/// `s` symbols, and every object must appear exactly once.
pub fn verify_object_list(words: &[Word], params: &InstanceParams) -> VerificationReport {
    let s = params.s();
    let mut violations = Vec::new();
    for (i, a) in words.iter().enumerate() {
        let b = &words[(i + 1) % words.len()];
        let tail = &a.0[a.len().saturating_sub(s)..];
        let head = &b.0[..s.min(b.len())];
        if tail != head {
            violations.push(OverlapViolation {
                position: i,
                expected: Vertex(tail.to_vec()),
                found: Vertex(head.to_vec()),
            });
        }
    }
    assess(words, params, !words.is_empty(), violations)
}

// --- Hamilton oracle ---------------------------------------------------------

/// Largest object count the brute-force oracle accepts.
pub const ORACLE_CAP: u64 = 60;

pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonWitness {
    pub cycle: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Witness(HamiltonWitness),
    /// The search space was exhausted without finding a cycle.
    NoCycle {
        nodes: u64,
    },
    /// The node budget ran out first.
    Exhausted {
        nodes: u64,
    },
}

struct Search<'a> {
    out: &'a [u64],
    len: usize,
    budget: u64,
    nodes: u64,
    path: Vec<usize>,
    out_of_budget: bool,
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let b = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(b)
    })
}

impl Search<'_> {
    fn full(&self) -> u64 {
        if self.len == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        }
    }

    // Object 0 is the start of every cycle.
    fn dfs(&mut self, cur: usize, visited: u64) -> bool {
        if self.path.len() == self.len {
            return self.out[cur] & 1 == 1;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
            return false;
        }
        let unvisited = self.full() & !visited;
        // every unvisited object must stay reachable through unvisited ones
        let mut reach = 0u64;
        let mut frontier = self.out[cur] & unvisited;
        while frontier != 0 {
            reach |= frontier;
            let next = bits(frontier).fold(0u64, |acc, v| acc | self.out[v]);
            frontier = next & unvisited & !reach;
        }
        if reach != unvisited || !bits(unvisited).any(|v| self.out[v] & 1 == 1) {
            return false;
        }
        for next in bits(self.out[cur] & unvisited) {
            self.path.push(next);
            if self.dfs(next, visited | (1 << next)) {
                return true;
            }
            self.path.pop();
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Depth-first search for a Hamilton cycle in the overlap graph whose vertices
/// are the objects and whose arcs join `a` to `b` when the s-suffix of `a` is
/// the s-prefix of `b`. Starts at the lexicographically smallest object.
pub fn hamilton_oracle(params: &InstanceParams, budget: u64) -> Result<OracleOutcome> {
    let count = params.object_count()?;
    if count > ORACLE_CAP {
        return Err(Error::OracleCap {
            count,
            cap: ORACLE_CAP,
        });
    }
    let objects: Vec<Word> = enumerate_objects(params, ORACLE_CAP)?.collect();
    let s = params.s();
    let out: Vec<u64> = objects
        .iter()
        .map(|a| {
            objects
                .iter()
                .enumerate()
                .filter(|(_, b)| a.0[a.len() - s..] == b.0[..s])
                .fold(0u64, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    let mut search = Search {
        out: &out,
        len: objects.len(),
        budget,
        nodes: 0,
        path: vec![0],
        out_of_budget: false,
    };
    let found = search.dfs(0, 1);
    Ok(if found {
        OracleOutcome::Witness(HamiltonWitness {
            cycle: search.path.iter().map(|&i| objects[i].clone()).collect(),
        })
    } else if search.out_of_budget {
        OracleOutcome::Exhausted {
            nodes: search.nodes,
        }
    } else {
        OracleOutcome::NoCycle {
            nodes: search.nodes,
        }
    })
}

/// The generated cycle, read as an object list, is a Hamilton cycle of the
/// overlap graph, and the oracle independently finds one.
pub fn cross_check(params: &InstanceParams) -> Result<bool> {
    if feasibility(params).status != Status::Guaranteed {
        return Err(Error::Precondition(format!(
            "{params} is not guaranteed to have a cycle"
        )));
    }
    let count = params.object_count()?;
    if count > ORACLE_CAP {
        return Err(Error::OracleCap {
            count,
            cap: ORACLE_CAP,
        });
    }
    let cycle = generate(params, DEFAULT_EDGE_LIMIT)?;
    let words = decode_cycle(&cycle)?;
    let listed = verify_object_list(&words, params).valid;
    let oracle = matches!(
        hamilton_oracle(params, DEFAULT_ORACLE_BUDGET)?,
        OracleOutcome::Witness(_)
    );
    Ok(listed && oracle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word(s.bytes().map(|b| b - b'0').collect())
    }

    fn kperm(n: u64, k: u64, s: u64) -> InstanceParams {
        InstanceParams::kperm(n, k, s).unwrap()
    }

    #[test]
    fn cycle_string_examples() {
        let p = kperm(3, 2, 1);
        let r = verify_cycle_string(&[1, 2, 1, 3, 2, 3], &p);
        assert!(r.valid, "{r}");
        assert_eq!(r.object_count, 6);

        let r = verify_cycle_string(&[1, 2, 1, 3, 2, 4], &p);
        assert!(!r.valid);
        assert!(!r.invalid_words.is_empty());
        assert!(r.missing_count > 0);
    }

    #[test]
    fn bad_length() {
        let p = kperm(5, 5, 3);
        let r = verify_cycle_string(&[1, 2, 3, 4, 5], &p);
        assert!(!r.valid && !r.length_ok);
        assert_eq!(r.missing_count, 120);
        assert!(!verify_cycle_string(&[], &p).valid);
    }

    #[test]
    fn object_list_examples() {
        let p = kperm(3, 2, 1);
        let list: Vec<Word> = ["12", "21", "13", "32", "23", "31"].map(w).to_vec();
        assert!(verify_object_list(&list, &p).valid);

        let mut swapped = list.clone();
        swapped.swap(1, 2);
        let r = verify_object_list(&swapped, &p);
        assert!(!r.valid);
        assert_eq!(r.overlap_violations[0].position, 0);
        assert_eq!(r.overlap_violations[0].expected, Vertex(vec![2]));
        assert_eq!(r.overlap_violations[0].found, Vertex(vec![1]));
        assert!(r.duplicates.is_empty() && r.missing_count == 0);
    }

    #[test]
    fn duplicates_are_counted() {
        let p = kperm(3, 2, 1);
        let list: Vec<Word> = ["12", "21", "12", "21"].map(w).to_vec();
        let r = verify_object_list(&list, &p);
        assert_eq!(r.duplicates.len(), 2);
        assert_eq!(r.missing_count, 4);
        assert!(r.overlap_violations.is_empty());
    }

    #[test]
    fn oracle_examples() {
        match hamilton_oracle(&kperm(3, 2, 1), DEFAULT_ORACLE_BUDGET).unwrap() {
            OracleOutcome::Witness(h) => {
                assert_eq!(h.cycle.len(), 6);
                assert!(verify_object_list(&h.cycle, &kperm(3, 2, 1)).valid);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            hamilton_oracle(&kperm(4, 3, 2), DEFAULT_ORACLE_BUDGET).unwrap(),
            OracleOutcome::Witness(_)
        ));
        assert!(matches!(
            hamilton_oracle(&kperm(4, 4, 3), DEFAULT_ORACLE_BUDGET).unwrap(),
            OracleOutcome::NoCycle { .. }
        ));
    }

    #[test]
    fn oracle_limits() {
        assert!(matches!(
            hamilton_oracle(&kperm(5, 4, 2), 10),
            Err(Error::OracleCap { count: 120, .. })
        ));
        assert!(matches!(
            hamilton_oracle(&kperm(4, 3, 1), 1).unwrap(),
            OracleOutcome::Exhausted { .. }
        ));
    }

    #[test]
    fn oracle_handles_self_loop() {
        let p = InstanceParams::multiset(&[1, 1], 1).unwrap();
        assert!(matches!(
            hamilton_oracle(&p, 10).unwrap(),
            OracleOutcome::Witness(_)
        ));
    }

    #[test]
    fn cross_check_examples() {
        assert!(cross_check(&kperm(3, 2, 1)).unwrap());
        assert!(cross_check(&kperm(4, 3, 1)).unwrap());
        assert!(cross_check(&kperm(4, 3, 2)).unwrap());
        assert!(cross_check(&kperm(4, 4, 3)).is_err());
    }
}
