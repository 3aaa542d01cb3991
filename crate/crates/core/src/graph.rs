//! Immutable labeled graphs with the deterministic orderings (shortest paths,
//! cycle decomposition) that the canonical-path construction relies on.
//!
//! Vertices are labeled `0..n-1`. Edges are unordered pairs `(u, v)` with
//! `u < v`, stored in lexicographic order and addressed by their index in that
//! order. All graphs are simple, connected, and have at least two vertices.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite connected simple graph with canonical vertex and edge orderings.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    /// `adj_edge[u][i]` is the edge index of `(u, adj[u][i])`.
    adj_edge: Vec<Vec<u32>>,
    /// `incident[u]` lists the indices of edges incident to `u`, ascending.
    incident: Vec<Vec<u32>>,
    degree: Vec<u32>,
    degree_f64: Vec<f64>,
    max_degree: u32,
}

/// Built-in graph families. Grid and torus use row-major vertex labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Grid(usize, usize),
    Torus(usize, usize),
}

impl Graph {
    /// Builds the canonical graph from an edge list, validating simplicity,
    /// connectivity and `n >= 2`.
    pub fn new(n: usize, mut edges: Vec<(u32, u32)>) -> Result<Graph> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        for e in edges.iter_mut() {
            if e.0 == e.1 {
                return Err(Error::SelfLoop(e.0));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.1 as usize >= n {
                return Err(Error::VertexOutOfRange(e.1, n));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::ParallelEdge(w[0].0, w[0].1));
        }

        let mut adj = vec![Vec::new(); n];
        let mut adj_edge = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u as usize].push(v);
            adj_edge[u as usize].push(i as u32);
            adj[v as usize].push(u);
            adj_edge[v as usize].push(i as u32);
            incident[u as usize].push(i as u32);
            incident[v as usize].push(i as u32);
        }
        for u in 0..n {
            let mut order: Vec<usize> = (0..adj[u].len()).collect();
            order.sort_unstable_by_key(|&i| adj[u][i]);
            adj[u] = order.iter().map(|&i| adj[u][i]).collect();
            adj_edge[u] = order.iter().map(|&i| adj_edge[u][i]).collect();
            // incident edge ids are already ascending: edges are lex sorted
        }
        let degree: Vec<u32> = adj.iter().map(|a| a.len() as u32).collect();
        let degree_f64: Vec<f64> = degree.iter().map(|&d| d as f64).collect();
        let max_degree = degree.iter().copied().max().unwrap_or(0);

        let g = Graph {
            n,
            edges,
            adj,
            adj_edge,
            incident,
            degree,
            degree_f64,
            max_degree,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Parses the edge-list text format: first non-comment line `n m`,
    /// then `m` lines `u v` (0-indexed). Lines starting with `#` are ignored.
    pub fn from_edge_list_text(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>, lineno: usize| -> Result<u64> {
                tok.ok_or(Error::Parse {
                    line: lineno + 1,
                    msg: "expected two integers".into(),
                })?
                .parse::<u64>()
                .map_err(|e| Error::Parse {
                    line: lineno + 1,
                    msg: e.to_string(),
                })
            };
            let a = parse(it.next(), lineno)?;
            let b = parse(it.next(), lineno)?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: "trailing tokens".into(),
                });
            }
            match header {
                None => header = Some((a as usize, b as usize)),
                Some(_) => edges.push((a as u32, b as u32)),
            }
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: 0,
            msg: "empty input".into(),
        })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header promises {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    pub fn generate(kind: GraphKind) -> Result<Graph> {
        let bad = |msg: &str| Err(Error::InvalidGenerator(msg.into()));
        match kind {
            GraphKind::Path(n) => {
                if n < 2 {
                    return bad("path needs n >= 2");
                }
                Graph::new(n, (0..n - 1).map(|i| (i as u32, i as u32 + 1)).collect())
            }
            GraphKind::Cycle(n) => {
                if n < 3 {
                    return bad("cycle needs n >= 3");
                }
                let mut e: Vec<(u32, u32)> =
                    (0..n - 1).map(|i| (i as u32, i as u32 + 1)).collect();
                e.push((0, n as u32 - 1));
                Graph::new(n, e)
            }
            GraphKind::Complete(n) => {
                if n < 2 {
                    return bad("complete graph needs n >= 2");
                }
                let mut e = Vec::new();
                for u in 0..n as u32 {
                    for v in u + 1..n as u32 {
                        e.push((u, v));
                    }
                }
                Graph::new(n, e)
            }
            GraphKind::Grid(r, c) => {
                if r < 1 || c < 1 || r * c < 2 {
                    return bad("grid needs at least 2 vertices");
                }
                let idx = |i: usize, j: usize| (i * c + j) as u32;
                let mut e = Vec::new();
                for i in 0..r {
                    for j in 0..c {
                        if j + 1 < c {
                            e.push((idx(i, j), idx(i, j + 1)));
                        }
                        if i + 1 < r {
                            e.push((idx(i, j), idx(i + 1, j)));
                        }
                    }
                }
                Graph::new(r * c, e)
            }
            GraphKind::Torus(r, c) => {
                if r < 3 || c < 3 {
                    return bad("torus needs both sides >= 3");
                }
                let idx = |i: usize, j: usize| (i * c + j) as u32;
                let mut e = Vec::new();
                for i in 0..r {
                    for j in 0..c {
                        e.push((idx(i, j), idx(i, (j + 1) % c)));
                        e.push((idx(i, j), idx((i + 1) % r, j)));
                    }
                }
                Graph::new(r * c, e)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn endpoints(&self, e: u32) -> (u32, u32) {
        self.edges[e as usize]
    }

    pub fn degree(&self, u: u32) -> u32 {
        self.degree[u as usize]
    }

    #[inline]
    pub fn degree_f64(&self, u: u32) -> f64 {
        self.degree_f64[u as usize]
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.adj[u as usize]
    }

    /// Edge indices incident to `u`, ascending.
    pub fn incident_edges(&self, u: u32) -> &[u32] {
        &self.incident[u as usize]
    }

    /// Index of edge `{u, v}`, if present.
    pub fn edge_id(&self, u: u32, v: u32) -> Option<u32> {
        let a = &self.adj[u as usize];
        a.binary_search(&v).ok().map(|i| self.adj_edge[u as usize][i])
    }

    /// The i-th neighbor of `u` together with the connecting edge index.
    #[inline]
    pub fn neighbor_at(&self, u: u32, i: usize) -> (u32, u32) {
        (self.adj[u as usize][i], self.adj_edge[u as usize][i])
    }

    pub fn full_edge_set(&self) -> EdgeSubset {
        let mut a = EdgeSubset::empty(self.m());
        for e in 0..self.m() as u32 {
            a.insert(e);
        }
        a
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// The set of odd-degree vertices of the spanning subgraph `(V, A)`,
    /// ascending. Always has even cardinality.
    pub fn boundary(&self, a: &EdgeSubset) -> Vec<u32> {
        let mut parity = vec![false; self.n];
        for e in a.iter() {
            let (u, v) = self.endpoints(e);
            parity[u as usize] = !parity[u as usize];
            parity[v as usize] = !parity[v as usize];
        }
        (0..self.n as u32).filter(|&v| parity[v as usize]).collect()
    }

    /// Graph distance in the full graph.
    pub fn distance(&self, u: u32, v: u32) -> u32 {
        let full = self.full_edge_set();
        let dist = self.bfs_distances(v, &full);
        dist[u as usize]
    }

    fn bfs_distances(&self, from: u32, restricted: &EdgeSubset) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        dist[from as usize] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(from);
        while let Some(w) = queue.pop_front() {
            let d = dist[w as usize];
            for i in 0..self.adj[w as usize].len() {
                let (nb, e) = self.neighbor_at(w, i);
                if restricted.contains(e) && dist[nb as usize] == u32::MAX {
                    dist[nb as usize] = d + 1;
                    queue.push_back(nb);
                }
            }
        }
        dist
    }

    /// A shortest `u`-`v` path inside the spanning subgraph `(V, restricted)`.
    ///
    /// Among equal-length paths, returns the lexicographically smallest vertex
    /// sequence starting from `min(u, v)`.
    pub fn shortest_path(&self, u: u32, v: u32, restricted: &EdgeSubset) -> Result<Vec<u32>> {
        let (s, t) = (u.min(v), u.max(v));
        if s == t {
            return Ok(vec![s]);
        }
        let dist = self.bfs_distances(t, restricted);
        if dist[s as usize] == u32::MAX {
            return Err(Error::NoPath(u, v));
        }
        let mut path = vec![s];
        let mut cur = s;
        while cur != t {
            let d = dist[cur as usize];
            let mut next = None;
            for i in 0..self.adj[cur as usize].len() {
                let (nb, e) = self.neighbor_at(cur, i);
                if restricted.contains(e) && dist[nb as usize] == d - 1 {
                    next = Some(nb);
                    break; // neighbors ascend, so first hit is smallest
                }
            }
            cur = next.expect("distance-decreasing neighbor must exist");
            path.push(cur);
        }
        Ok(path)
    }

    /// Decomposes an even subgraph `B` (no odd vertices) into an ordered list
    /// of edge-disjoint simple cycles whose union is `B`.
    ///
    /// Deterministic scheme: repeatedly walk from the lowest-labeled
    /// positive-degree vertex, always taking the lowest-indexed untraversed
    /// edge, until a vertex repeats; extract that cycle and remove its edges.
    /// Cycles are returned sorted lexicographically by their sorted edge-index
    /// lists, each oriented from its lowest vertex toward its lower-labeled
    /// cycle-neighbor.
    pub fn decompose_even_subgraph(&self, b: &EdgeSubset) -> Result<Vec<Cycle>> {
        if !self.boundary(b).is_empty() {
            return Err(Error::OddBoundary);
        }
        let mut remaining = b.clone();
        let mut deg = vec![0u32; self.n];
        for e in b.iter() {
            let (u, v) = self.endpoints(e);
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut left = b.len();
        let mut cycles = Vec::new();
        while left > 0 {
            let start = (0..self.n as u32)
                .find(|&v| deg[v as usize] > 0)
                .expect("nonempty remaining subgraph has a positive-degree vertex");
            let mut avail = remaining.clone();
            let mut seq = vec![start];
            let mut pos: HashMap<u32, usize> = HashMap::new();
            pos.insert(start, 0);
            let mut cur = start;
            loop {
                let e = self.incident[cur as usize]
                    .iter()
                    .copied()
                    .find(|&e| avail.contains(e))
                    .expect("walk in an even subgraph cannot get stuck");
                avail.remove(e);
                let (a, c) = self.endpoints(e);
                let next = if a == cur { c } else { a };
                if let Some(&p) = pos.get(&next) {
                    let verts = seq[p..].to_vec();
                    for k in 0..verts.len() {
                        let w1 = verts[k];
                        let w2 = verts[(k + 1) % verts.len()];
                        let eid = self.edge_id(w1, w2).expect("cycle edge exists");
                        remaining.remove(eid);
                        deg[w1 as usize] -= 1;
                        deg[w2 as usize] -= 1;
                        left -= 1;
                    }
                    cycles.push(Cycle::oriented(verts));
                    break;
                }
                pos.insert(next, seq.len());
                seq.push(next);
                cur = next;
            }
        }
        cycles.sort_by_cached_key(|c| {
            let mut ids: Vec<u32> = c
                .oriented_edges()
                .iter()
                .map(|&(u, v)| self.edge_id(u, v).unwrap())
                .collect();
            ids.sort_unstable();
            ids
        });
        Ok(cycles)
    }

    /// Canonical edge-list text for this graph (the same format `from_edge_list_text`
    /// accepts). Suitable for hashing.
    pub fn to_edge_list_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// A subset of the edges of a fixed graph, as a dense bitset over edge
/// indices. Flips are O(1); iteration is O(m / 64).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EdgeSubset {
    words: Vec<u64>,
    m: usize,
}

impl EdgeSubset {
    pub fn empty(m: usize) -> EdgeSubset {
        EdgeSubset {
            words: vec![0; m.div_ceil(64).max(1)],
            m,
        }
    }

    pub fn from_edges<I: IntoIterator<Item = u32>>(m: usize, edges: I) -> EdgeSubset {
        let mut s = EdgeSubset::empty(m);
        for e in edges {
            s.insert(e);
        }
        s
    }

    /// Universe size (number of edges of the underlying graph).
    pub fn universe(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn contains(&self, e: u32) -> bool {
        self.words[(e >> 6) as usize] >> (e & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: u32) {
        debug_assert!((e as usize) < self.m);
        self.words[(e >> 6) as usize] |= 1 << (e & 63);
    }

    #[inline]
    pub fn remove(&mut self, e: u32) {
        self.words[(e >> 6) as usize] &= !(1 << (e & 63));
    }

    #[inline]
    pub fn flip(&mut self, e: u32) {
        debug_assert!((e as usize) < self.m);
        self.words[(e >> 6) as usize] ^= 1 << (e & 63);
    }

    /// Number of edges in the subset.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(i as u32 * 64 + b)
                }
            })
        })
    }

    pub fn symmetric_difference(&self, other: &EdgeSubset) -> EdgeSubset {
        debug_assert_eq!(self.m, other.m);
        EdgeSubset {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
            m: self.m,
        }
    }

    pub fn difference(&self, other: &EdgeSubset) -> EdgeSubset {
        EdgeSubset {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
            m: self.m,
        }
    }

    /// Packs the subset into a single word; requires `m <= 64`.
    pub fn bits(&self) -> u64 {
        assert!(self.m <= 64, "bits() requires m <= 64");
        self.words[0]
    }

    pub fn from_bits(m: usize, bits: u64) -> EdgeSubset {
        assert!(m <= 64);
        let mut s = EdgeSubset::empty(m);
        s.words[0] = bits;
        s
    }
}

/// A simple cycle given by its vertex sequence; the closing edge from the
/// last vertex back to the first is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<u32>,
}

impl Cycle {
    /// Canonicalizes orientation: start at the lowest-labeled vertex, proceed
    /// toward its lower-labeled cycle-neighbor.
    fn oriented(verts: Vec<u32>) -> Cycle {
        let k = verts.len();
        debug_assert!(k >= 3);
        let (lo_pos, _) = verts
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| v)
            .expect("cycle is nonempty");
        let succ = verts[(lo_pos + 1) % k];
        let pred = verts[(lo_pos + k - 1) % k];
        let mut out = Vec::with_capacity(k);
        if succ <= pred {
            for i in 0..k {
                out.push(verts[(lo_pos + i) % k]);
            }
        } else {
            for i in 0..k {
                out.push(verts[(lo_pos + k - i) % k]);
            }
        }
        Cycle { vertices: out }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges in traversal order, including the closing edge.
    pub fn oriented_edges(&self) -> Vec<(u32, u32)> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_k2() {
        let g = Graph::from_edge_list_text("2 1\n0 1").unwrap();
        assert_eq!((g.n(), g.m(), g.max_degree()), (2, 1, 1));
    }

    #[test]
    fn load_k3_with_comments() {
        let g = Graph::from_edge_list_text("# triangle\n3 3\n0 1\n0 2\n1 2\n").unwrap();
        assert_eq!((g.n(), g.m(), g.max_degree()), (3, 3, 2));
    }

    #[test]
    fn load_rejects_parallel_edge() {
        assert!(matches!(
            Graph::from_edge_list_text("2 2\n0 1\n0 1"),
            Err(Error::ParallelEdge(0, 1))
        ));
    }

    #[test]
    fn load_rejects_loop_disconnected_small() {
        assert!(matches!(
            Graph::from_edge_list_text("2 1\n1 1"),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::from_edge_list_text("4 2\n0 1\n2 3"),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            Graph::from_edge_list_text("1 0"),
            Err(Error::TooFewVertices(1))
        ));
    }

    #[test]
    fn generators() {
        let k4 = Graph::generate(GraphKind::Complete(4)).unwrap();
        assert_eq!((k4.n(), k4.m(), k4.max_degree()), (4, 6, 3));
        let grid = Graph::generate(GraphKind::Grid(3, 3)).unwrap();
        assert_eq!((grid.n(), grid.m(), grid.max_degree()), (9, 12, 4));
        let p5 = Graph::generate(GraphKind::Path(5)).unwrap();
        assert_eq!((p5.n(), p5.m(), p5.max_degree()), (5, 4, 2));
        assert!(Graph::generate(GraphKind::Torus(2, 4)).is_err());
        let t = Graph::generate(GraphKind::Torus(3, 3)).unwrap();
        assert_eq!((t.n(), t.m(), t.max_degree()), (9, 18, 4));
        let sum: u32 = (0..t.n() as u32).map(|v| t.degree(v)).sum();
        assert_eq!(sum as usize, 2 * t.m());
    }

    #[test]
    fn boundary_examples() {
        let k3 = Graph::generate(GraphKind::Complete(3)).unwrap();
        let a = EdgeSubset::from_edges(3, [k3.edge_id(0, 1).unwrap()]);
        assert_eq!(k3.boundary(&a), vec![0, 1]);
        assert_eq!(k3.boundary(&k3.full_edge_set()), Vec::<u32>::new());

        let k4 = Graph::generate(GraphKind::Complete(4)).unwrap();
        let star = EdgeSubset::from_edges(
            6,
            [0, 1, 2].map(|v| k4.edge_id(0, v + 1).unwrap()),
        );
        assert_eq!(k4.boundary(&star), vec![0, 1, 2, 3]);
    }

    #[test]
    fn shortest_path_tiebreak() {
        let c4 = Graph::generate(GraphKind::Cycle(4)).unwrap();
        let p = c4.shortest_path(0, 2, &c4.full_edge_set()).unwrap();
        assert_eq!(p, vec![0, 1, 2]);

        let p3 = Graph::generate(GraphKind::Path(3)).unwrap();
        assert_eq!(
            p3.shortest_path(0, 2, &p3.full_edge_set()).unwrap(),
            vec![0, 1, 2]
        );

        let k3 = Graph::generate(GraphKind::Complete(3)).unwrap();
        assert_eq!(
            k3.shortest_path(1, 2, &k3.full_edge_set()).unwrap(),
            vec![1, 2]
        );
    }

    #[test]
    fn shortest_path_respects_restriction() {
        let c4 = Graph::generate(GraphKind::Cycle(4)).unwrap();
        // only the 0-3 and 2-3 edges available
        let sub = EdgeSubset::from_edges(
            4,
            [c4.edge_id(0, 3).unwrap(), c4.edge_id(2, 3).unwrap()],
        );
        assert_eq!(c4.shortest_path(0, 2, &sub).unwrap(), vec![0, 3, 2]);
        let empty = EdgeSubset::empty(4);
        assert!(c4.shortest_path(0, 2, &empty).is_err());
    }

    #[test]
    fn decompose_triangle_and_empty() {
        let k3 = Graph::generate(GraphKind::Complete(3)).unwrap();
        assert!(k3
            .decompose_even_subgraph(&EdgeSubset::empty(3))
            .unwrap()
            .is_empty());
        let cycles = k3.decompose_even_subgraph(&k3.full_edge_set()).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices(), &[0, 1, 2]);

        let a = EdgeSubset::from_edges(3, [k3.edge_id(0, 1).unwrap()]);
        assert!(matches!(
            k3.decompose_even_subgraph(&a),
            Err(Error::OddBoundary)
        ));
    }

    #[test]
    fn decompose_grid_four_cycle() {
        // the 4-cycle v4 v5 v8 v7 on the 3x3 grid, as in the worked example
        let g = Graph::generate(GraphKind::Grid(3, 3)).unwrap();
        let b = EdgeSubset::from_edges(
            g.m(),
            [
                g.edge_id(4, 5).unwrap(),
                g.edge_id(5, 8).unwrap(),
                g.edge_id(7, 8).unwrap(),
                g.edge_id(4, 7).unwrap(),
            ],
        );
        let cycles = g.decompose_even_subgraph(&b).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices(), &[4, 5, 8, 7]);
    }

    #[test]
    fn edge_subset_ops() {
        let mut a = EdgeSubset::empty(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.len(), 3);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        a.flip(64);
        assert!(!a.contains(64));
        let b = EdgeSubset::from_edges(130, [0, 5]);
        let d = a.symmetric_difference(&b);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![5, 129]);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![129]);
    }
}
