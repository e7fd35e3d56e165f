use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Simple undirected graph with a bit-packed adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<usize>>,
}

impl UndirectedGraph {
    pub fn new(n: usize) -> UndirectedGraph {
        let words = n.div_ceil(64).max(1);
        UndirectedGraph {
            n,
            words,
            rows: vec![0; n * words],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Builds the graph on `n` vertices with `u ~ v` iff `adjacent(u, v)`,
    /// evaluating each unordered pair once.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Adds the edge `{u, v}`; loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u == v {
            return;
        }
        let w = self.words;
        self.rows[u * w + v / 64] |= 1 << (v % 64);
        self.rows[v * w + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u).filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::from_fn(self.n, |u, v| !self.has_edge(u, v));
        g.labels = self.labels.clone();
        g
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> UndirectedGraph {
        let mut g = UndirectedGraph::from_fn(vertices.len(), |a, b| {
            self.has_edge(vertices[a], vertices[b])
        });
        if let Some(labels) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| labels[v]).collect());
        }
        g
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn set_labels(&mut self, labels: Vec<usize>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels.as_ref().map_or(v, |l| l[v])
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            u < self.n && vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v))
        })
    }

    pub fn is_independent_set(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            u < self.n && vertices[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v))
        })
    }

    /// DIMACS `p edge n m` / `e u v`, 1-based.
    pub fn to_dimacs(&self) -> String {
        let edges = self.edges();
        let mut s = String::new();
        writeln!(s, "p edge {} {}", self.n, edges.len()).unwrap();
        for (u, v) in edges {
            writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
        }
        s
    }

    pub fn from_dimacs(text: &str) -> Result<UndirectedGraph> {
        let mut graph: Option<UndirectedGraph> = None;
        for (i, line) in text.lines().enumerate() {
            let err = |message: &str| Error::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            let mut toks = line.split_whitespace();
            match toks.next() {
                None | Some("c") => {}
                Some("p") => {
                    if toks.next() != Some("edge") {
                        return Err(err("expected 'p edge n m'"));
                    }
                    let n: usize = toks
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err("bad vertex count"))?;
                    graph = Some(UndirectedGraph::new(n));
                }
                Some("e") => {
                    let g = graph.as_mut().ok_or_else(|| err("edge before header"))?;
                    let mut endpoint = || -> Result<usize> {
                        let v: usize = toks
                            .next()
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| err("bad edge"))?;
                        if v == 0 || v > g.n {
                            return Err(err("edge endpoint out of range"));
                        }
                        Ok(v - 1)
                    };
                    let (u, v) = (endpoint()?, endpoint()?);
                    g.add_edge(u, v);
                }
                Some(_) => return Err(err("unrecognised line")),
            }
        }
        graph.ok_or(Error::Parse {
            line: 1,
            message: "missing 'p edge' header".into(),
        })
    }
}

pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_without_loops() {
        let mut g = UndirectedGraph::new(70);
        g.add_edge(3, 68);
        g.add_edge(5, 5);
        assert!(g.has_edge(68, 3));
        assert!(!g.has_edge(5, 5));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(3).collect::<Vec<_>>(), vec![68]);
    }

    #[test]
    fn dimacs_round_trip() {
        let g = UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (3, 4), (0, 4)]);
        let text = g.to_dimacs();
        assert!(text.starts_with("p edge 5 4\n"));
        assert!(text.contains("e 1 2\n"));
        assert_eq!(UndirectedGraph::from_dimacs(&text).unwrap(), g);
        assert!(UndirectedGraph::from_dimacs("e 1 2\n").is_err());
        assert!(UndirectedGraph::from_dimacs("p edge 2 1\ne 1 3\n").is_err());
    }

    #[test]
    fn complement_and_induced() {
        let g = UndirectedGraph::from_edges(4, &[(0, 1), (2, 3)]);
        let c = g.complement();
        assert_eq!(c.edge_count(), 4);
        let s = g.induced_subgraph(&[3, 2]);
        assert!(s.has_edge(0, 1));
        assert!(g.is_clique(&[0, 1]));
        assert!(g.is_independent_set(&[0, 2]));
        assert!(!g.is_clique(&[0, 0]));
    }
}
