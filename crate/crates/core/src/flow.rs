//! Exact maximum flow over rational capacities (Edmonds–Karp).

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Capacity {
    Finite(Rational),
    Infinite,
}

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: Capacity,
    flow: Rational,
}

impl Edge {
    fn residual(&self) -> Option<Rational> {
        match &self.cap {
            Capacity::Infinite => None,
            Capacity::Finite(c) => Some(c - &self.flow),
        }
    }

    fn has_room(&self) -> bool {
        match self.residual() {
            None => true,
            Some(r) => r.is_positive(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { edges: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    /// Adds `u -> v` and returns its id for [`FlowNetwork::flow`].
    pub fn add_edge(&mut self, u: usize, v: usize, cap: Capacity) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to: v, cap, flow: Rational::zero() });
        self.edges.push(Edge { to: u, cap: Capacity::Finite(Rational::zero()), flow: Rational::zero() });
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    pub fn flow(&self, edge: usize) -> &Rational {
        &self.edges[edge].flow
    }

    /// Pushes a maximum flow from `s` to `t` and returns its value.
    ///
    /// Panics if an augmenting path of unbounded capacity exists.
    pub fn max_flow(&mut self, s: usize, t: usize) -> Rational {
        let mut total = Rational::zero();
        while let Some(path) = self.augmenting_path(s, t) {
            let bottleneck =
                path.iter().filter_map(|&e| self.edges[e].residual()).min().expect("unbounded augmenting path");
            for &e in &path {
                self.edges[e].flow += &bottleneck;
                self.edges[e ^ 1].flow -= &bottleneck;
            }
            total += bottleneck;
        }
        total
    }

    fn augmenting_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut via: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.edges[e].to;
                if !seen[v] && self.edges[e].has_room() {
                    seen[v] = true;
                    via[v] = Some(e);
                    if v == t {
                        let mut path = Vec::new();
                        let mut cur = t;
                        while let Some(e) = via[cur] {
                            path.push(e);
                            cur = self.edges[e ^ 1].to;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Nodes reachable from `s` in the residual graph (source side of a min cut).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let v = self.edges[e].to;
                if !seen[v] && self.edges[e].has_room() {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}
