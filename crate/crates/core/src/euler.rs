//! Euler tours of the transition graph and their compression into cycle strings.

use crate::error::{Error, Result};
use crate::graph::{completion_count, Edge, TransitionGraph};
use crate::instance::{InstanceParams, Symbol, Vertex, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTour {
    pub start: Vertex,
    pub edges: Vec<Edge>,
}

impl EulerTour {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Consecutive edges chain and the last one returns to `start`.
    pub fn is_closed(&self) -> bool {
        let Some(first) = self.edges.first() else {
            return true;
        };
        first.source_symbols() == self.start.symbols()
            && self
                .edges
                .windows(2)
                .all(|w| w[0].target_symbols() == w[1].source_symbols())
            && self.edges.last().unwrap().target_symbols() == self.start.symbols()
    }
}

/// Iterative Hierholzer from `start`, taking each vertex's successors in
/// ordinal order.
///
/// Fails with [`Error::TourIncomplete`] (carrying the closed tour of the
/// start's component) when some edge is unreachable from `start`.
pub fn euler_tour(g: &TransitionGraph, start: &Vertex) -> Result<EulerTour> {
    let params = g.params();
    let index = g.index();
    let start_rank = index.rank(start)?;
    let v = g.vertex_count() as usize;
    let mut cursor = vec![0u64; v];
    let mut degree = vec![u64::MAX; v];

    let mut stack: Vec<(u64, Vec<Symbol>, Option<Edge>)> =
        vec![(start_rank, start.0.clone(), None)];
    let mut circuit: Vec<Edge> = Vec::with_capacity(g.edge_count() as usize);

    while let Some((rank, vertex, _)) = stack.last() {
        let r = *rank as usize;
        let rest = params.remainder(vertex).expect("stack holds vertices");
        if degree[r] == u64::MAX {
            degree[r] = completion_count(params, &rest);
        }
        if cursor[r] < degree[r] {
            let edge = g.edge_unchecked(vertex, &rest, cursor[r]);
            cursor[r] += 1;
            let target = edge.target_symbols().to_vec();
            let target_rank = index.rank_of(&target).expect("edge target is a vertex");
            stack.push((target_rank, target, Some(edge)));
        } else if let Some((_, _, Some(edge))) = stack.pop() {
            circuit.push(edge);
        }
    }
    circuit.reverse();

    let tour = EulerTour {
        start: start.clone(),
        edges: circuit,
    };
    let used = tour.len() as u64;
    if used < g.edge_count() {
        return Err(Error::TourIncomplete {
            used,
            total: g.edge_count(),
            partial: Box::new(tour),
        });
    }
    Ok(tour)
}

/// A cyclic symbol string in which object `i` starts at offset `i·(k-s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapCycle {
    pub symbols: Vec<Symbol>,
    pub params: InstanceParams,
    pub object_count: u64,
}

/// Writes the leading `k-s` symbols of every edge, in tour order. The string
/// therefore begins with the start vertex, and each edge's trailing `s`
/// symbols are the head of the next edge.
pub fn tour_to_cycle(t: &EulerTour, params: &InstanceParams) -> OverlapCycle {
    let stride = params.stride();
    let symbols = t
        .edges
        .iter()
        .flat_map(|e| e.word.0[..stride].iter().copied())
        .collect();
    OverlapCycle {
        symbols,
        params: params.clone(),
        object_count: t.len() as u64,
    }
}

/// The k-symbol windows of a cyclic string taken at stride `k - s`.
pub fn decode_symbols(symbols: &[Symbol], k: usize, s: usize) -> Result<Vec<Word>> {
    let stride = k - s;
    if !symbols.len().is_multiple_of(stride) {
        return Err(Error::Stride {
            len: symbols.len(),
            stride,
        });
    }
    let len = symbols.len();
    Ok((0..len / stride)
        .map(|i| Word((0..k).map(|j| symbols[(i * stride + j) % len]).collect()))
        .collect())
}

pub fn decode_cycle(c: &OverlapCycle) -> Result<Vec<Word>> {
    decode_symbols(&c.symbols, c.params.k(), c.params.s())
}

/// Tour from the minimum vertex, compressed to a cycle string.
pub fn generate(params: &InstanceParams, limit: u64) -> Result<OverlapCycle> {
    let g = TransitionGraph::with_limit(params, limit)?;
    let tour = euler_tour(&g, &params.minimum_vertex())?;
    Ok(tour_to_cycle(&tour, params))
}
