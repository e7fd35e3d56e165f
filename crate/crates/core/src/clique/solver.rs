//! Bitset branch and bound for maximum cliques.
//!
//! Each node colours its candidate set greedily (lowest vertex first, one
//! colour class at a time) and branches on candidates in decreasing colour
//! order; `|R| + colour(v)` bounds any clique found below `v`. Candidates
//! are renumbered once by a degeneracy ordering so that the colouring sees
//! high-core vertices first. An optional vertex partition into independent
//! sets gives a second colouring, and whichever uses fewer colours drives
//! the node.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::graph::{BitIter, UndirectedGraph};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_ENUMERATION_LIMIT: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clique {
    pub size: usize,
    /// Sorted vertex list.
    pub vertices: Vec<usize>,
    /// Branch nodes visited.
    pub nodes: u64,
}

/// Configures one exact search.
#[derive(Clone, Debug)]
pub struct CliqueSearch<'g> {
    graph: &'g UndirectedGraph,
    budget: u64,
    workers: usize,
    base: Vec<usize>,
    candidates: Option<Vec<usize>>,
    incumbent: Vec<usize>,
    target: Option<usize>,
    partition: Option<Vec<u32>>,
}

impl<'g> CliqueSearch<'g> {
    pub fn new(graph: &'g UndirectedGraph) -> Self {
        CliqueSearch {
            graph,
            budget: DEFAULT_NODE_BUDGET,
            workers: 1,
            base: Vec::new(),
            candidates: None,
            incumbent: Vec::new(),
            target: None,
            partition: None,
        }
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.budget = nodes;
        self
    }

    /// More than one worker splits the top-level branches across threads.
    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    /// Vertices every reported clique must contain; must form a clique.
    pub fn base(mut self, base: &[usize]) -> Self {
        self.base = base.to_vec();
        self
    }

    /// Restricts the vertices used to extend the base.
    pub fn candidates(mut self, candidates: Vec<usize>) -> Self {
        self.candidates = Some(candidates);
        self
    }

    /// A known clique; only strictly larger cliques replace it.
    pub fn incumbent(mut self, clique: Vec<usize>) -> Self {
        self.incumbent = clique;
        self
    }

    /// Stop as soon as a clique of this size is found.
    pub fn target(mut self, size: usize) -> Self {
        self.target = Some(size);
        self
    }

    /// Per-vertex class labels; each class must be an independent set.
    pub fn partition(mut self, classes: Vec<u32>) -> Self {
        self.partition = Some(classes);
        self
    }

    pub fn run(&self) -> Result<Clique> {
        debug_assert!(self.graph.is_clique(&self.base));
        debug_assert!(self.graph.is_clique(&self.incumbent));
        let local = Local::build(self);
        let shared = Shared {
            best: AtomicUsize::new(self.incumbent.len()),
            witness: Mutex::new(self.incumbent.clone()),
            nodes: AtomicU64::new(0),
            abort: AtomicBool::new(false),
            exhausted: AtomicBool::new(false),
            budget: self.budget,
            target: self.target.unwrap_or(usize::MAX),
            base: &self.base,
            mode: Mode::Maximum,
            found: Mutex::new(Vec::new()),
        };
        if self.base.len() > shared.best.load(Ordering::Relaxed) {
            shared.best.store(self.base.len(), Ordering::Relaxed);
            *shared.witness.lock().unwrap() = self.base.clone();
        }
        if shared.best.load(Ordering::Relaxed) < shared.target {
            if self.workers > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(self.workers)
                    .build()
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?;
                pool.install(|| run_parallel(&local, &shared));
            } else {
                let mut w = Worker::new(&local, &shared);
                w.expand(local.all());
                w.flush();
            }
        }
        let nodes = shared.nodes.load(Ordering::Relaxed);
        if shared.exhausted.load(Ordering::Relaxed) {
            return Err(Error::SearchBudgetExceeded { nodes });
        }
        let mut vertices = shared.witness.into_inner().unwrap();
        vertices.sort_unstable();
        Ok(Clique {
            size: vertices.len(),
            vertices,
            nodes,
        })
    }

    /// Every clique of exactly `size` vertices containing the base, where
    /// `size` is the maximum; fails once more than `limit` are found.
    pub fn enumerate(&self, size: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
        match self.enumerate_at_most(size, limit)? {
            (found, false) => Ok(found),
            (_, true) => Err(Error::EnumerationLimitExceeded { limit }),
        }
    }

    /// Like [`enumerate`](Self::enumerate), but stops after `limit + 1`
    /// cliques and returns them with a flag saying the list was cut short.
    pub fn enumerate_at_most(&self, size: usize, limit: usize) -> Result<(Vec<Vec<usize>>, bool)> {
        let local = Local::build(self);
        let shared = Shared {
            best: AtomicUsize::new(0),
            witness: Mutex::new(Vec::new()),
            nodes: AtomicU64::new(0),
            abort: AtomicBool::new(false),
            exhausted: AtomicBool::new(false),
            budget: self.budget,
            target: usize::MAX,
            base: &self.base,
            mode: Mode::Enumerate { size, limit },
            found: Mutex::new(Vec::new()),
        };
        if self.base.len() == size {
            shared.found.lock().unwrap().push(self.base.clone());
        } else if self.base.len() < size {
            let mut w = Worker::new(&local, &shared);
            w.expand(local.all());
            w.flush();
        }
        if shared.exhausted.load(Ordering::Relaxed) {
            return Err(Error::SearchBudgetExceeded {
                nodes: shared.nodes.load(Ordering::Relaxed),
            });
        }
        let mut found = shared.found.into_inner().unwrap();
        let truncated = found.len() > limit;
        for c in &mut found {
            c.sort_unstable();
        }
        found.sort();
        Ok((found, truncated))
    }
}

/// Exact maximum clique with default settings and a single worker.
pub fn max_clique(graph: &UndirectedGraph) -> Result<Clique> {
    CliqueSearch::new(graph).run()
}

/// All maximum cliques, given the maximum size.
pub fn enumerate_maximum_cliques(
    graph: &UndirectedGraph,
    known_size: usize,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    CliqueSearch::new(graph).enumerate(known_size, limit)
}

/// Greedy clique: vertices taken by decreasing degree (ties by index),
/// restarted from each of the first few vertices in that order.
pub fn greedy_clique_lower_bound(graph: &UndirectedGraph) -> Clique {
    let n = graph.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    let degrees: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
    let mut best: Vec<usize> = Vec::new();
    for &start in order.iter().take(16) {
        let mut clique = vec![start];
        for &v in &order {
            if v != start && clique.iter().all(|&u| graph.has_edge(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    Clique {
        size: best.len(),
        vertices: best,
        nodes: 0,
    }
}

#[derive(Clone, Copy)]
enum Mode {
    Maximum,
    Enumerate { size: usize, limit: usize },
}

struct Shared<'a> {
    best: AtomicUsize,
    witness: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    abort: AtomicBool,
    exhausted: AtomicBool,
    budget: u64,
    target: usize,
    base: &'a [usize],
    mode: Mode,
    found: Mutex<Vec<Vec<usize>>>,
}

/// The candidate subgraph, renumbered.
struct Local {
    m: usize,
    words: usize,
    adj: Vec<u64>,
    to_global: Vec<usize>,
    class: Option<Vec<u32>>,
    class_count: usize,
}

impl Local {
    fn build(search: &CliqueSearch<'_>) -> Local {
        let g = search.graph;
        let n = g.vertex_count();
        let mut in_base = vec![false; n];
        for &b in &search.base {
            in_base[b] = true;
        }
        let pool: Vec<usize> = match &search.candidates {
            Some(c) => c.clone(),
            None => (0..n).collect(),
        };
        let mut seen = vec![false; n];
        let cand: Vec<usize> = pool
            .into_iter()
            .filter(|&v| {
                let fresh = !seen[v];
                seen[v] = true;
                fresh && !in_base[v] && search.base.iter().all(|&b| g.has_edge(b, v))
            })
            .collect();
        let order = degeneracy_order(g, &cand);
        let m = order.len();
        let words = m.div_ceil(64).max(1);
        let mut adj = vec![0u64; m * words];
        for i in 0..m {
            for j in i + 1..m {
                if g.has_edge(order[i], order[j]) {
                    adj[i * words + j / 64] |= 1 << (j % 64);
                    adj[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        let (class, class_count) = match &search.partition {
            Some(labels) => {
                let mut remap = std::collections::HashMap::new();
                let local: Vec<u32> = order
                    .iter()
                    .map(|&v| {
                        let next = remap.len() as u32;
                        *remap.entry(labels[v]).or_insert(next)
                    })
                    .collect();
                let count = remap.len();
                (Some(local), count)
            }
            None => (None, 0),
        };
        Local {
            m,
            words,
            adj,
            to_global: order,
            class,
            class_count,
        }
    }

    fn all(&self) -> Vec<u64> {
        let mut p = vec![0u64; self.words];
        for v in 0..self.m {
            p[v / 64] |= 1 << (v % 64);
        }
        p
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }
}

/// Highest-core vertices first: the reverse of repeated min-degree removal,
/// ties broken by position in `cand`.
fn degeneracy_order(g: &UndirectedGraph, cand: &[usize]) -> Vec<usize> {
    let m = cand.len();
    let mut deg: Vec<usize> = (0..m)
        .map(|i| (0..m).filter(|&j| j != i && g.has_edge(cand[i], cand[j])).count())
        .collect();
    let mut removed = vec![false; m];
    let mut removal = Vec::with_capacity(m);
    for _ in 0..m {
        let i = (0..m)
            .filter(|&i| !removed[i])
            .min_by_key(|&i| (deg[i], std::cmp::Reverse(i)))
            .expect("vertex left");
        removed[i] = true;
        removal.push(cand[i]);
        for j in 0..m {
            if !removed[j] && g.has_edge(cand[i], cand[j]) {
                deg[j] -= 1;
            }
        }
    }
    removal.reverse();
    removal
}

fn run_parallel(local: &Local, shared: &Shared<'_>) {
    let p = local.all();
    let mut root = Worker::new(local, shared);
    let (order, colors) = root.color(&p, 1);
    root.flush();
    let base = shared.base.len();
    let tasks: Vec<usize> = (0..order.len()).rev().collect();
    tasks.par_iter().for_each(|&i| {
        if shared.abort.load(Ordering::Relaxed)
            || base + colors[i] as usize <= shared.best.load(Ordering::Relaxed)
        {
            return;
        }
        let v = order[i] as usize;
        let mut sub = p.clone();
        for &u in &order[i + 1..] {
            sub[u as usize / 64] &= !(1u64 << (u % 64));
        }
        let mut w = Worker::new(local, shared);
        w.r.push(v as u32);
        for (a, b) in sub.iter_mut().zip(local.row(v)) {
            *a &= b;
        }
        if sub.iter().all(|&x| x == 0) {
            w.leaf();
        } else {
            w.expand(sub);
        }
        w.flush();
    });
}

struct Worker<'a> {
    local: &'a Local,
    shared: &'a Shared<'a>,
    r: Vec<u32>,
    pending_nodes: u64,
    stamp: Vec<u32>,
    stamp_gen: u32,
}

impl<'a> Worker<'a> {
    fn new(local: &'a Local, shared: &'a Shared<'a>) -> Self {
        Worker {
            local,
            shared,
            r: Vec::new(),
            pending_nodes: 0,
            stamp: vec![0; local.class_count],
            stamp_gen: 0,
        }
    }

    fn flush(&mut self) {
        if self.pending_nodes > 0 {
            self.shared
                .nodes
                .fetch_add(self.pending_nodes, Ordering::Relaxed);
            self.pending_nodes = 0;
        }
    }

    fn count_node(&mut self) -> bool {
        self.pending_nodes += 1;
        if self.pending_nodes >= 1024 {
            let total = self
                .shared
                .nodes
                .fetch_add(self.pending_nodes, Ordering::Relaxed)
                + self.pending_nodes;
            self.pending_nodes = 0;
            if total > self.shared.budget {
                self.shared.exhausted.store(true, Ordering::Relaxed);
                self.shared.abort.store(true, Ordering::Relaxed);
                return false;
            }
        } else if self.pending_nodes + self.shared.nodes.load(Ordering::Relaxed) > self.shared.budget
        {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            self.shared.abort.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Size of the current clique including the base.
    fn depth(&self) -> usize {
        self.shared.base.len() + self.r.len()
    }

    /// Minimum colour a vertex needs to be worth branching on.
    fn min_color(&self) -> i64 {
        match self.shared.mode {
            Mode::Maximum => {
                self.shared.best.load(Ordering::Relaxed) as i64 + 1 - self.depth() as i64
            }
            Mode::Enumerate { size, .. } => size as i64 - self.depth() as i64,
        }
    }

    fn expand(&mut self, mut p: Vec<u64>) {
        if self.shared.abort.load(Ordering::Relaxed) || !self.count_node() {
            return;
        }
        let (order, colors) = self.color(&p, self.min_color());
        for i in (0..order.len()).rev() {
            if (colors[i] as i64) < self.min_color() {
                return;
            }
            let v = order[i] as usize;
            self.r.push(v as u32);
            let mut next = p.clone();
            let mut empty = true;
            for (a, b) in next.iter_mut().zip(self.local.row(v)) {
                *a &= b;
                empty &= *a == 0;
            }
            match self.shared.mode {
                Mode::Enumerate { size, limit } if self.depth() == size => {
                    let mut found = self.shared.found.lock().unwrap();
                    found.push(self.global_clique());
                    if found.len() > limit {
                        self.shared.abort.store(true, Ordering::Relaxed);
                    }
                }
                _ if empty => self.leaf(),
                _ => self.expand(next),
            }
            self.r.pop();
            p[v / 64] &= !(1u64 << (v % 64));
            if self.shared.abort.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    fn leaf(&mut self) {
        if let Mode::Maximum = self.shared.mode {
            let size = self.depth();
            if size > self.shared.best.load(Ordering::Relaxed) {
                let clique = self.global_clique();
                let mut w = self.shared.witness.lock().unwrap();
                if size > w.len() {
                    *w = clique;
                    self.shared.best.fetch_max(size, Ordering::Relaxed);
                }
                if size >= self.shared.target {
                    self.shared.abort.store(true, Ordering::Relaxed);
                }
            }
        }
    }

    fn global_clique(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.shared.base.to_vec();
        c.extend(self.r.iter().map(|&v| self.local.to_global[v as usize]));
        c
    }

    /// Colours `p`; returns the vertices whose colour is at least
    /// `min_color`, in non-decreasing colour order, with their colours.
    fn color(&mut self, p: &[u64], min_color: i64) -> (Vec<u32>, Vec<u32>) {
        let min_color = min_color.max(1) as u32;
        if let Some(classes) = self.local.class.as_ref() {
            self.stamp_gen = self.stamp_gen.wrapping_add(1);
            if self.stamp_gen == 0 {
                self.stamp.iter_mut().for_each(|s| *s = 0);
                self.stamp_gen = 1;
            }
            let mut distinct = 0u32;
            for v in BitIter::new(p) {
                let c = classes[v] as usize;
                if self.stamp[c] != self.stamp_gen {
                    self.stamp[c] = self.stamp_gen;
                    distinct += 1;
                }
            }
            if distinct < min_color {
                return (Vec::new(), Vec::new());
            }
            let greedy = self.greedy_color(p, min_color);
            let greedy_colors = greedy.1.last().copied().unwrap_or(0);
            if distinct < greedy_colors {
                return self.partition_color(p, min_color);
            }
            return greedy;
        }
        self.greedy_color(p, min_color)
    }

    fn greedy_color(&self, p: &[u64], min_color: u32) -> (Vec<u32>, Vec<u32>) {
        let words = self.local.words;
        let mut uncolored = p.to_vec();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut k = 0u32;
        let mut first_word = 0usize;
        while first_word < words {
            if uncolored[first_word] == 0 {
                first_word += 1;
                continue;
            }
            k += 1;
            let mut q = uncolored.clone();
            let mut wi = first_word;
            while wi < words {
                if q[wi] == 0 {
                    wi += 1;
                    continue;
                }
                let b = q[wi].trailing_zeros() as usize;
                let v = wi * 64 + b;
                q[wi] &= !(1u64 << b);
                uncolored[wi] &= !(1u64 << b);
                let row = self.local.row(v);
                for j in wi..words {
                    q[j] &= !row[j];
                }
                if k >= min_color {
                    order.push(v as u32);
                    colors.push(k);
                }
            }
        }
        (order, colors)
    }

    fn partition_color(&mut self, p: &[u64], min_color: u32) -> (Vec<u32>, Vec<u32>) {
        let classes = self.local.class.as_ref().expect("partition");
        let mut rank: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut buckets: Vec<Vec<u32>> = Vec::new();
        for v in BitIter::new(p) {
            let next = rank.len() as u32;
            let r = *rank.entry(classes[v]).or_insert(next);
            if r as usize == buckets.len() {
                buckets.push(Vec::new());
            }
            buckets[r as usize].push(v as u32);
        }
        let mut order = Vec::new();
        let mut colors = Vec::new();
        for (i, b) in buckets.into_iter().enumerate() {
            let k = i as u32 + 1;
            if k >= min_color {
                colors.extend(std::iter::repeat_n(k, b.len()));
                order.extend(b);
            }
        }
        (order, colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_complete() {
        let g = UndirectedGraph::new(5);
        let c = max_clique(&g).unwrap();
        assert_eq!(c.size, 1);
        let k7 = UndirectedGraph::complete(7);
        let c = max_clique(&k7).unwrap();
        assert_eq!(c.vertices, (0..7).collect::<Vec<_>>());
        assert_eq!(max_clique(&UndirectedGraph::new(0)).unwrap().size, 0);
    }

    #[test]
    fn enumeration_examples() {
        let k4 = UndirectedGraph::complete(4);
        assert_eq!(enumerate_maximum_cliques(&k4, 4, 10).unwrap().len(), 1);
        let two = UndirectedGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let all = enumerate_maximum_cliques(&two, 3, 10).unwrap();
        assert_eq!(all, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let err = enumerate_maximum_cliques(&two, 3, 1).unwrap_err();
        assert_eq!(err, Error::EnumerationLimitExceeded { limit: 1 });
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_clique_lower_bound(&UndirectedGraph::complete(5)).size, 5);
        let c5 = UndirectedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let g = greedy_clique_lower_bound(&c5);
        assert_eq!(g.size, 2);
        assert!(c5.is_clique(&g.vertices));
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let mut g = UndirectedGraph::new(40);
        for u in 0..40 {
            for v in u + 1..40 {
                if (u * 7 + v * 13) % 5 != 0 {
                    g.add_edge(u, v);
                }
            }
        }
        let err = CliqueSearch::new(&g).budget(3).run().unwrap_err();
        assert!(matches!(err, Error::SearchBudgetExceeded { .. }));
        assert!(err.to_string().contains("search budget exceeded"));
    }

    #[test]
    fn base_and_incumbent() {
        let g = UndirectedGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)],
        );
        let c = CliqueSearch::new(&g).base(&[4]).run().unwrap();
        assert_eq!(c.vertices, vec![2, 3, 4]);
        let c = CliqueSearch::new(&g).base(&[5]).run().unwrap();
        assert_eq!(c.size, 2);
        let c = CliqueSearch::new(&g).incumbent(vec![0, 1, 2]).run().unwrap();
        assert_eq!(c.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn partition_bound_keeps_exactness() {
        // two disjoint triangles; classes pick one vertex of each triangle
        let g = UndirectedGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let c = CliqueSearch::new(&g)
            .partition(vec![0, 1, 2, 0, 1, 2])
            .run()
            .unwrap();
        assert_eq!(c.size, 3);
        assert!(g.is_clique(&c.vertices));
    }

    #[test]
    fn parallel_matches_sequential_size() {
        let mut g = UndirectedGraph::new(60);
        for u in 0..60usize {
            for v in u + 1..60usize {
                if (u * u + 3 * v + u * v) % 7 < 4 {
                    g.add_edge(u, v);
                }
            }
        }
        let seq = CliqueSearch::new(&g).run().unwrap();
        let par = CliqueSearch::new(&g).workers(4).run().unwrap();
        assert_eq!(seq.size, par.size);
        assert!(g.is_clique(&par.vertices));
    }
}
