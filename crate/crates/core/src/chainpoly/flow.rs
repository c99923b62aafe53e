use std::collections::{BTreeMap, VecDeque};

use super::GPerm;
use crate::error::{Error, Result};

/// Splits a lattice point `t` into integer points of the summands: for every
/// interval with `c(i, j) > 0`, a nonnegative vector supported on `[i, j]`
/// summing to `c(i, j)`, the vectors together summing to `t`.
///
/// Solved as a transportation problem (intervals supply, coordinates demand)
/// with integral max flow.
pub fn decompose_lattice_point(g: &GPerm, t: &[i64]) -> Result<BTreeMap<(usize, usize), Vec<i64>>> {
    if t.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            got: t.len(),
        });
    }
    transport(g, t).ok_or_else(|| Error::Infeasible(t.to_vec()))
}

pub(super) fn transport(g: &GPerm, t: &[i64]) -> Option<BTreeMap<(usize, usize), Vec<i64>>> {
    let dim = g.dim();
    if t.len() != dim || t.iter().any(|&x| x < 0) {
        return None;
    }
    let support = g.support();
    let total: i64 = support.iter().map(|&(i, j)| g.c(i, j) as i64).sum();
    if t.iter().sum::<i64>() != total {
        return None;
    }
    // source, one node per interval, one per coordinate, sink
    let source = 0;
    let first_interval = 1;
    let first_coord = first_interval + support.len();
    let sink = first_coord + dim;
    let mut net = Network::new(sink + 1);
    for (s, &(i, j)) in support.iter().enumerate() {
        let c = g.c(i, j) as i64;
        net.add_edge(source, first_interval + s, c);
        for k in i..=j {
            net.add_edge(first_interval + s, first_coord + k - 1, c);
        }
    }
    for (k, &demand) in t.iter().enumerate() {
        net.add_edge(first_coord + k, sink, demand);
    }
    if net.max_flow(source, sink) != total {
        return None;
    }
    let mut parts = BTreeMap::new();
    for (s, &(i, j)) in support.iter().enumerate() {
        let mut part = vec![0i64; dim];
        for k in i..=j {
            part[k - 1] = net.flow(first_interval + s, first_coord + k - 1);
        }
        parts.insert((i, j), part);
    }
    Some(parts)
}

/// Dense Edmonds-Karp; the networks here have at most a few hundred nodes.
struct Network {
    n: usize,
    cap: Vec<i64>,
    flow: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(n: usize) -> Self {
        Self {
            n,
            cap: vec![0; n * n],
            flow: vec![0; n * n],
            adj: vec![Vec::new(); n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: i64) {
        if self.cap[u * self.n + v] == 0 && self.cap[v * self.n + u] == 0 {
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
        self.cap[u * self.n + v] += cap;
    }

    fn residual(&self, u: usize, v: usize) -> i64 {
        self.cap[u * self.n + v] - self.flow[u * self.n + v]
    }

    fn flow(&self, u: usize, v: usize) -> i64 {
        self.flow[u * self.n + v]
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut prev = vec![usize::MAX; self.n];
            prev[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if prev[v] == usize::MAX && self.residual(u, v) > 0 {
                        prev[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut v = t;
            while v != s {
                let u = prev[v];
                bottleneck = bottleneck.min(self.residual(u, v));
                v = u;
            }
            let mut v = t;
            while v != s {
                let u = prev[v];
                self.flow[u * self.n + v] += bottleneck;
                self.flow[v * self.n + u] -= bottleneck;
                v = u;
            }
            total += bottleneck;
        }
    }
}
