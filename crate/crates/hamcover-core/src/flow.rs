//! Dinic's blocking-flow algorithm on small integral networks.
//!
//! Capacities are integral and stay integral throughout, which is all the
//! factor machinery needs. After a run, the residual reachability cut is
//! exposed so callers can extract infeasibility witnesses.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
struct Arc {
    to: u32,
    cap: u64,
    rev: u32,
}

/// A unit-friendly max-flow network.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: alloc::vec![Vec::new(); nodes],
            level: alloc::vec![-1; nodes],
            iter: alloc::vec![0; nodes],
        }
    }

    /// Adds a directed arc with the given capacity; returns an id usable
    /// with [`FlowNetwork::flow_on`].
    pub fn add_arc(&mut self, from: u32, to: u32, cap: u64) -> (u32, u32) {
        let fwd = self.adj[from as usize].len() as u32;
        let bwd = self.adj[to as usize].len() as u32;
        self.adj[from as usize].push(Arc { to, cap, rev: bwd });
        self.adj[to as usize].push(Arc { to: from, cap: 0, rev: fwd });
        (from, fwd)
    }

    /// Flow pushed through the arc id returned by [`FlowNetwork::add_arc`]:
    /// the reverse arc's accumulated capacity.
    pub fn flow_on(&self, id: (u32, u32)) -> u64 {
        let arc = &self.adj[id.0 as usize][id.1 as usize];
        self.adj[arc.to as usize][arc.rev as usize].cap
    }

    fn bfs(&mut self, s: u32, t: u32) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut q = VecDeque::new();
        self.level[s as usize] = 0;
        q.push_back(s);
        while let Some(u) = q.pop_front() {
            for arc in &self.adj[u as usize] {
                if arc.cap > 0 && self.level[arc.to as usize] < 0 {
                    self.level[arc.to as usize] = self.level[u as usize] + 1;
                    q.push_back(arc.to);
                }
            }
        }
        self.level[t as usize] >= 0
    }

    fn dfs(&mut self, u: u32, t: u32, pushed: u64) -> u64 {
        if u == t {
            return pushed;
        }
        while self.iter[u as usize] < self.adj[u as usize].len() {
            let i = self.iter[u as usize];
            let (to, cap, rev) = {
                let arc = &self.adj[u as usize][i];
                (arc.to, arc.cap, arc.rev)
            };
            if cap > 0 && self.level[to as usize] == self.level[u as usize] + 1 {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.adj[u as usize][i].cap -= d;
                    self.adj[to as usize][rev as usize].cap += d;
                    return d;
                }
            }
            self.iter[u as usize] += 1;
        }
        0
    }

    /// Computes the maximum s-t flow.
    pub fn max_flow(&mut self, s: u32, t: u32) -> u64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, u64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Nodes reachable from `s` in the final residual network; together
    /// with its complement this is a minimum cut.
    pub fn residual_reachable(&self, s: u32) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.adj.len()];
        let mut stack = alloc::vec![s];
        seen[s as usize] = true;
        while let Some(u) = stack.pop() {
            for arc in &self.adj[u as usize] {
                if arc.cap > 0 && !seen[arc.to as usize] {
                    seen[arc.to as usize] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}
