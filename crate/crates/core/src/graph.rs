//! Undirected graphs in compressed adjacency form, with BFS and text export.

use std::collections::VecDeque;
use std::fmt::Write;

use rayon::prelude::*;

use crate::table::IntersectionTable;

pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds from sorted neighbour lists.
    pub fn from_lists(lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for l in lists {
            targets.extend(l);
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    /// Vertices `i, j` adjacent iff `dim(S_i ∩ S_j) == adj_dim`, `i != j`.
    pub fn from_table(table: &IntersectionTable, adj_dim: u8) -> Self {
        let lists = (0..table.len())
            .into_par_iter()
            .map(|i| {
                table
                    .row(i)
                    .iter()
                    .enumerate()
                    .filter(|&(j, &d)| j != i && d == adj_dim)
                    .map(|(j, _)| j as u32)
                    .collect()
            })
            .collect();
        Self::from_lists(lists)
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Distances from `src`; [`UNREACHABLE`] for other components.
    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.len()];
        let mut queue = VecDeque::with_capacity(self.len());
        dist[src] = 0;
        queue.push_back(src as u32);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v as usize] + 1;
            for &w in self.neighbors(v as usize) {
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = dv;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest BFS distance from `src`, `None` if the graph is disconnected.
    pub fn eccentricity(&self, src: usize) -> Option<u32> {
        let d = self.bfs(src);
        let max = *d.iter().max()?;
        (max != UNREACHABLE).then_some(max)
    }

    /// Exact diameter by BFS from every vertex; `None` if disconnected.
    pub fn diameter(&self) -> Option<u32> {
        (0..self.len())
            .into_par_iter()
            .map(|v| self.eccentricity(v))
            .collect::<Option<Vec<u32>>>()
            .map(|e| e.into_iter().max().unwrap_or(0))
    }

    /// `ID: id id id` lines in ID order.
    pub fn to_adjlist(&self) -> String {
        self.to_adjlist_labelled(&|v| v)
    }

    /// Like [`to_adjlist`](Self::to_adjlist) with vertex `v` written as `label(v)`.
    pub fn to_adjlist_labelled(&self, label: &dyn Fn(usize) -> usize) -> String {
        let mut s = String::new();
        for v in 0..self.len() {
            write!(s, "{}:", label(v)).unwrap();
            for &w in self.neighbors(v) {
                write!(s, " {}", label(w as usize)).unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// DOT digraph; every undirected edge appears once, drawn without arrowheads.
    pub fn to_dot(&self, name: &str) -> String {
        self.to_dot_labelled(name, &|v| v)
    }

    pub fn to_dot_labelled(&self, name: &str, label: &dyn Fn(usize) -> usize) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  edge [dir=none];\n");
        for v in 0..self.len() {
            let l = label(v);
            writeln!(s, "  {l} [label=\"{l}\"];").unwrap();
        }
        for v in 0..self.len() {
            for &w in self.neighbors(v) {
                if (w as usize) > v {
                    writeln!(s, "  {} -> {};", label(v), label(w as usize)).unwrap();
                }
            }
        }
        s.push_str("}\n");
        s
    }
}
