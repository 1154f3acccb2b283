//! The implicit transition graph of an instance.
//!
//! Vertices are length-s words, edges are objects: the object `w` runs from
//! its s-prefix to its s-suffix. Nothing is stored per edge. The edges
//! leaving a vertex `v` are the completions of `v` to a full object, listed
//! in lexicographic order, and are addressed by their ordinal in that list.

use crate::count::{falling_factorial, multinomial};
use crate::error::{Error, Result};
use crate::instance::{
    enumerate_objects, symbol_counts, InstanceParams, Mode, Symbol, Vertex, VertexIndex, Word,
    DEFAULT_EDGE_LIMIT,
};

/// One object viewed as an edge `prefix(word) -> suffix(word)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub word: Word,
    /// Overlap length s.
    pub overlap: usize,
    /// Index of this edge among the successors of its source.
    pub ordinal: u64,
}

impl Edge {
    pub fn source(&self) -> Vertex {
        self.word.prefix(self.overlap)
    }

    pub fn target(&self) -> Vertex {
        self.word.suffix(self.overlap)
    }

    pub(crate) fn source_symbols(&self) -> &[Symbol] {
        &self.word.0[..self.overlap]
    }

    pub(crate) fn target_symbols(&self) -> &[Symbol] {
        &self.word.0[self.word.len() - self.overlap..]
    }
}

/// Number of edges leaving a vertex whose unused symbols are `rest` (sorted).
pub(crate) fn completion_count(params: &InstanceParams, rest: &[Symbol]) -> u64 {
    let len = params.stride() as u64;
    match params.mode() {
        Mode::KPerm => falling_factorial(rest.len() as u64, len).expect("degree overflow"),
        Mode::Multiset => {
            let counts: Vec<u64> = symbol_counts(rest).into_iter().map(|(_, c)| c).collect();
            multinomial(&counts).expect("degree overflow")
        }
    }
}

/// Lexicographic rank of `tail` among the completions drawable from `rest`.
fn completion_rank(params: &InstanceParams, rest: &[Symbol], tail: &[Symbol]) -> u64 {
    let mut pool = rest.to_vec();
    let mut rank = 0u64;
    match params.mode() {
        Mode::KPerm => {
            let len = tail.len();
            for (i, x) in tail.iter().enumerate() {
                let pos = pool.binary_search(x).expect("tail drawn from rest");
                let weight = falling_factorial((pool.len() - 1) as u64, (len - 1 - i) as u64)
                    .expect("rank overflow");
                rank += pos as u64 * weight;
                pool.remove(pos);
            }
        }
        Mode::Multiset => {
            for x in tail {
                let distinct: Vec<Symbol> =
                    symbol_counts(&pool).into_iter().map(|(y, _)| y).collect();
                for &y in distinct.iter().take_while(|&&y| y < *x) {
                    rank += arrangements_without(&pool, y);
                }
                let pos = pool.binary_search(x).expect("tail drawn from rest");
                pool.remove(pos);
            }
        }
    }
    rank
}

/// Arrangements of `pool` with one copy of `y` removed.
fn arrangements_without(pool: &[Symbol], y: Symbol) -> u64 {
    let counts: Vec<u64> = symbol_counts(pool)
        .into_iter()
        .map(|(z, c)| if z == y { c - 1 } else { c })
        .collect();
    multinomial(&counts).expect("rank overflow")
}

fn completion_unrank(params: &InstanceParams, rest: &[Symbol], mut ordinal: u64) -> Vec<Symbol> {
    let len = params.stride();
    let mut pool = rest.to_vec();
    let mut out = Vec::with_capacity(len);
    match params.mode() {
        Mode::KPerm => {
            for i in 0..len {
                let weight = falling_factorial((pool.len() - 1) as u64, (len - 1 - i) as u64)
                    .expect("rank overflow");
                let digit = (ordinal / weight) as usize;
                ordinal %= weight;
                out.push(pool.remove(digit));
            }
        }
        Mode::Multiset => {
            for _ in 0..len {
                for (y, _) in symbol_counts(&pool) {
                    let block = arrangements_without(&pool, y);
                    if ordinal < block {
                        let pos = pool.binary_search(&y).unwrap();
                        out.push(pool.remove(pos));
                        break;
                    }
                    ordinal -= block;
                }
            }
        }
    }
    out
}

/// All completions drawable from `rest`, in lexicographic order.
pub(crate) fn completions(params: &InstanceParams, rest: &[Symbol]) -> Vec<Vec<Symbol>> {
    (0..completion_count(params, rest))
        .map(|i| completion_unrank(params, rest, i))
        .collect()
}

/// Successor ordinal of an object, or `None` if `word` is not an object.
pub fn edge_ordinal(params: &InstanceParams, word: &[Symbol]) -> Option<u64> {
    if !params.is_object(word) {
        return None;
    }
    let s = params.s();
    let rest = params.remainder(&word[..s])?;
    Some(completion_rank(params, &rest, &word[s..]))
}

/// The edge carried by an object.
pub fn edge_for(params: &InstanceParams, word: Word) -> Result<Edge> {
    let ordinal =
        edge_ordinal(params, &word.0).ok_or_else(|| Error::InvalidWord(word.to_string()))?;
    Ok(Edge {
        word,
        overlap: params.s(),
        ordinal,
    })
}

#[derive(Clone, Debug)]
pub struct TransitionGraph {
    params: InstanceParams,
    index: VertexIndex,
    vertex_count: u64,
    edge_count: u64,
}

impl TransitionGraph {
    pub fn new(params: &InstanceParams) -> Result<Self> {
        Self::with_limit(params, DEFAULT_EDGE_LIMIT)
    }

    /// Fails with [`Error::LimitExceeded`] when the instance has more than
    /// `limit` objects.
    pub fn with_limit(params: &InstanceParams, limit: u64) -> Result<Self> {
        let edge_count = params.object_count_within(limit)?;
        let index = VertexIndex::new(params)?;
        Ok(TransitionGraph {
            params: params.clone(),
            vertex_count: index.len(),
            index,
            edge_count,
        })
    }

    pub fn params(&self) -> &InstanceParams {
        &self.params
    }

    pub fn index(&self) -> &VertexIndex {
        &self.index
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    fn rest_of(&self, v: &[Symbol]) -> Result<Vec<Symbol>> {
        if v.len() != self.params.s() {
            return Err(Error::InvalidVertex(Vertex(v.to_vec()).to_string()));
        }
        self.params
            .remainder(v)
            .ok_or_else(|| Error::InvalidVertex(Vertex(v.to_vec()).to_string()))
    }

    pub fn out_degree(&self, v: &Vertex) -> Result<u64> {
        let rest = self.rest_of(&v.0)?;
        Ok(completion_count(&self.params, &rest))
    }

    /// Objects ending in `v` arrange the same leftover symbols as objects
    /// starting with it, so this always equals the out-degree.
    pub fn in_degree(&self, v: &Vertex) -> Result<u64> {
        self.out_degree(v)
    }

    pub fn edge_at(&self, v: &Vertex, ordinal: u64) -> Result<Edge> {
        let rest = self.rest_of(&v.0)?;
        let degree = completion_count(&self.params, &rest);
        if ordinal >= degree {
            return Err(Error::RankOutOfRange {
                rank: ordinal,
                count: degree,
            });
        }
        Ok(self.edge_unchecked(&v.0, &rest, ordinal))
    }

    pub(crate) fn edge_unchecked(&self, v: &[Symbol], rest: &[Symbol], ordinal: u64) -> Edge {
        let mut word = v.to_vec();
        word.extend(completion_unrank(&self.params, rest, ordinal));
        Edge {
            word: Word(word),
            overlap: self.params.s(),
            ordinal,
        }
    }

    /// Edges leaving `v` in lexicographic order of their completion.
    pub fn successors(&self, v: &Vertex) -> Result<Successors<'_>> {
        let rest = self.rest_of(&v.0)?;
        let degree = completion_count(&self.params, &rest);
        Ok(Successors {
            graph: self,
            vertex: v.0.clone(),
            rest,
            next: 0,
            degree,
        })
    }

    /// Full sweep over all edges, tallying in- and out-degrees per vertex.
    pub fn check_balance(&self) -> Result<BalanceReport> {
        let s = self.params.s();
        let v = self.vertex_count as usize;
        let mut degrees = vec![(0u64, 0u64); v];
        let mut swept = 0u64;
        for word in enumerate_objects(&self.params, self.edge_count)? {
            let src = self.index.rank(&word.prefix(s))?;
            let dst = self.index.rank(&word.suffix(s))?;
            degrees[src as usize].1 += 1;
            degrees[dst as usize].0 += 1;
            swept += 1;
        }
        let mut unbalanced = Vec::new();
        for (r, &(i, o)) in degrees.iter().enumerate() {
            if i != o {
                unbalanced.push((self.index.unrank(r as u64)?, i, o));
            }
        }
        let in_sum = degrees.iter().map(|d| d.0).sum();
        let out_sum = degrees.iter().map(|d| d.1).sum();
        let prefixes_equal_suffixes = degrees.iter().all(|&(i, o)| (i > 0) == (o > 0));
        let min_degree = degrees.iter().map(|d| d.0.min(d.1)).min().unwrap_or(0);
        let max_degree = degrees.iter().map(|d| d.0.max(d.1)).max().unwrap_or(0);
        Ok(BalanceReport {
            vertex_count: self.vertex_count,
            edge_count: swept,
            in_sum,
            out_sum,
            balanced: unbalanced.is_empty() && swept == self.edge_count,
            unbalanced,
            prefixes_equal_suffixes,
            min_degree,
            max_degree,
            degrees,
        })
    }
}

pub struct Successors<'a> {
    graph: &'a TransitionGraph,
    vertex: Vec<Symbol>,
    rest: Vec<Symbol>,
    next: u64,
    degree: u64,
}

impl Iterator for Successors<'_> {
    type Item = Edge;

    fn next(&mut self) -> Option<Edge> {
        if self.next >= self.degree {
            return None;
        }
        let e = self
            .graph
            .edge_unchecked(&self.vertex, &self.rest, self.next);
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.degree - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Successors<'_> {}

#[derive(Clone, Debug)]
pub struct BalanceReport {
    pub vertex_count: u64,
    pub edge_count: u64,
    pub in_sum: u64,
    pub out_sum: u64,
    pub balanced: bool,
    /// Vertices with in-degree != out-degree, as (vertex, in, out).
    pub unbalanced: Vec<(Vertex, u64, u64)>,
    /// The set of s-prefixes equals the set of s-suffixes.
    pub prefixes_equal_suffixes: bool,
    pub min_degree: u64,
    pub max_degree: u64,
    /// (in, out) per vertex rank.
    pub degrees: Vec<(u64, u64)>,
}
