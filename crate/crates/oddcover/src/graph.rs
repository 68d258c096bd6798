//! Simple graphs backed by a packed GF(2) adjacency matrix.
//!
//! Vertices are labeled `1..=n` throughout the public API. Generators exist
//! for the families the rest of the crate works with (complete graphs,
//! paths, cycles, disjoint triangle unions, and the word graphs over
//! `{0,1,ε}` and `{0,1,2,ε}`), along with twin detection and reduction,
//! adjacent-twin matchings, and graph6 / edge-list I/O.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// Bipartition side label.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    A,
    B,
}

/// Default cap on the order of generated word graphs.
pub const DEFAULT_VERTEX_BUDGET: usize = 1 << 16;

/// A finite simple graph with 1-based vertex labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Gf2Matrix,
    bipartition: Option<Vec<Side>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: Gf2Matrix::zeros(n, n),
            bipartition: None,
        }
    }

    /// Builds a graph from 1-based edges. Rejects loops and out-of-range
    /// endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range 1..={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            g.adj.set(u - 1, v - 1, true);
            g.adj.set(v - 1, u - 1, true);
        }
        Ok(g)
    }

    /// Attaches side labels, checking that every edge crosses them.
    pub fn with_bipartition(mut self, sides: Vec<Side>) -> Result<Self> {
        if sides.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "expected {} side labels, got {}",
                self.n,
                sides.len()
            )));
        }
        for (u, v) in self.edges() {
            if sides[u - 1] == sides[v - 1] {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) does not cross the given bipartition"
                )));
            }
        }
        self.bipartition = Some(sides);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &Gf2Matrix {
        &self.adj
    }

    pub fn bipartition(&self) -> Option<&[Side]> {
        self.bipartition.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.check_vertex(u);
        self.check_vertex(v);
        u != v && self.adj.get(u - 1, v - 1)
    }

    /// Flips edge `{u, v}`; used to form symmetric differences.
    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        self.check_vertex(u);
        self.check_vertex(v);
        assert_ne!(u, v, "cannot toggle a loop");
        self.adj.flip(u - 1, v - 1);
        self.adj.flip(v - 1, u - 1);
        self.bipartition = None;
    }

    fn check_vertex(&self, v: usize) {
        assert!(
            v >= 1 && v <= self.n,
            "vertex {v} out of range 1..={}",
            self.n
        );
    }

    pub fn degree(&self, v: usize) -> usize {
        self.check_vertex(v);
        self.adj.row(v - 1).count_ones()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.check_vertex(v);
        self.adj.row(v - 1).ones().map(|i| i + 1)
    }

    /// The open neighborhood of `v` as a 0-indexed bit vector.
    pub fn neighborhood(&self, v: usize) -> Gf2Vector {
        self.check_vertex(v);
        self.adj.row(v - 1).clone()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|i| self.adj.row(i).count_ones()).sum::<usize>() / 2
    }

    /// Edges as 1-based pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.adj
                .row(i)
                .ones()
                .skip_while(move |&j| j < i)
                .map(move |j| (i + 1, j + 1))
        })
    }

    /// Rank of the adjacency matrix over GF(2).
    pub fn rank2(&self) -> usize {
        self.adj.rank()
    }

    /// Connected components as sorted vertex lists, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.push(u + 1);
                for w in self.adj.row(u).ones() {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    /// Two-colors the graph, component by component in vertex order, with the
    /// least vertex of each component on side A. Fails on odd cycles.
    pub fn compute_bipartition(&self) -> Result<Vec<Side>> {
        let mut sides: Vec<Option<Side>> = vec![None; self.n];
        for s in 0..self.n {
            if sides[s].is_some() {
                continue;
            }
            sides[s] = Some(Side::A);
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = sides[u].unwrap();
                let flip = if su == Side::A { Side::B } else { Side::A };
                for w in self.adj.row(u).ones() {
                    match sides[w] {
                        None => {
                            sides[w] = Some(flip);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return Err(Error::NotBipartite(w + 1)),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(sides.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some() || self.compute_bipartition().is_ok()
    }

    // ------------------------------------------------------------------
    // Generators
    // ------------------------------------------------------------------

    pub fn complete(n: usize) -> Self {
        assert!(n >= 1, "complete(n) requires n >= 1");
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.adj.set(i, j, true);
                g.adj.set(j, i, true);
            }
        }
        g
    }

    /// The cycle 1-2-…-n-1.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "cycle(n) requires n >= 3, got {n}"
            )));
        }
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((n, 1));
        Self::from_edges(n, &edges)
    }

    /// The path 1-2-…-n.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1, "path(n) requires n >= 1");
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, &edges).expect("valid path edges")
    }

    /// `k` disjoint triangles on vertices `{3i+1, 3i+2, 3i+3}`.
    pub fn k_triangles(k: usize) -> Self {
        assert!(k >= 1, "k_triangles(k) requires k >= 1");
        let mut g = Self::complete(3);
        for _ in 1..k {
            g = Self::disjoint_union(&g, &Self::complete(3));
        }
        g
    }

    /// Disjoint union; vertices of `h` are shifted up by `g.n()`.
    pub fn disjoint_union(g: &Self, h: &Self) -> Self {
        let n = g.n + h.n;
        let mut out = Self::empty(n);
        for (u, v) in g.edges() {
            out.adj.set(u - 1, v - 1, true);
            out.adj.set(v - 1, u - 1, true);
        }
        for (u, v) in h.edges() {
            out.adj.set(g.n + u - 1, g.n + v - 1, true);
            out.adj.set(g.n + v - 1, g.n + u - 1, true);
        }
        out
    }

    /// The graph on all strings in `{0,1,ε}^k`, adjacent when the number of
    /// coordinates where one has `0` and the other `1` is odd. Vertex `i`
    /// (1-based) carries the string whose base-3 digits (most significant
    /// first, digit order `0 < 1 < ε`) spell `i - 1`.
    pub fn graph_bk(k: usize) -> Result<Self> {
        Self::graph_bk_with_budget(k, DEFAULT_VERTEX_BUDGET)
    }

    pub fn graph_bk_with_budget(k: usize, budget: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidArgument("graph_bk requires k >= 1".into()));
        }
        let n = 3usize
            .checked_pow(k as u32)
            .filter(|&n| n <= budget)
            .ok_or(Error::VertexBudget {
                family: "graph_bk",
                param: k,
                needed: 3usize.saturating_pow(k as u32),
                budget,
            })?;
        // Per-vertex masks of coordinates holding 0 and holding 1.
        let mut masks = Vec::with_capacity(n);
        for index in 0..n {
            let (mut zeros, mut ones) = (0u64, 0u64);
            let mut rest = index;
            for pos in (0..k).rev() {
                match rest % 3 {
                    0 => zeros |= 1 << pos,
                    1 => ones |= 1 << pos,
                    _ => {}
                }
                rest /= 3;
            }
            masks.push((zeros, ones));
        }
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                let opposed = (masks[i].0 & masks[j].1).count_ones()
                    + (masks[i].1 & masks[j].0).count_ones();
                if opposed % 2 == 1 {
                    g.adj.set(i, j, true);
                    g.adj.set(j, i, true);
                }
            }
        }
        Ok(g)
    }

    /// The graph on all strings in `{0,1,2,ε}^k`, adjacent when the number
    /// of coordinates where they differ with neither `ε` is odd. Vertex `i`
    /// carries the base-4 digits of `i - 1` (digit order `0 < 1 < 2 < ε`).
    pub fn graph_tk(k: usize) -> Result<Self> {
        Self::graph_tk_with_budget(k, DEFAULT_VERTEX_BUDGET)
    }

    pub fn graph_tk_with_budget(k: usize, budget: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidArgument("graph_tk requires k >= 1".into()));
        }
        let n = 4usize
            .checked_pow(k as u32)
            .filter(|&n| n <= budget)
            .ok_or(Error::VertexBudget {
                family: "graph_tk",
                param: k,
                needed: 4usize.saturating_pow(k as u32),
                budget,
            })?;
        // One mask per symbol value; ε coordinates are left out entirely.
        let mut masks = Vec::with_capacity(n);
        for index in 0..n {
            let mut m = [0u64; 3];
            let mut rest = index;
            for pos in (0..k).rev() {
                let d = rest % 4;
                if d < 3 {
                    m[d] |= 1 << pos;
                }
                rest /= 4;
            }
            masks.push(m);
        }
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (&masks[i], &masks[j]);
                let differing = (a[0] & (b[1] | b[2])).count_ones()
                    + (a[1] & (b[0] | b[2])).count_ones()
                    + (a[2] & (b[0] | b[1])).count_ones();
                if differing % 2 == 1 {
                    g.adj.set(i, j, true);
                    g.adj.set(j, i, true);
                }
            }
        }
        Ok(g)
    }

    // ------------------------------------------------------------------
    // Twins
    // ------------------------------------------------------------------

    /// Partitions the vertices by open neighborhood and by closed
    /// neighborhood. Classes are sorted lists ordered by least member.
    pub fn twin_classes(&self) -> TwinClasses {
        let group = |closed: bool| -> Vec<Vec<usize>> {
            let mut by_key: HashMap<Gf2Vector, Vec<usize>> = HashMap::new();
            for v in 0..self.n {
                let mut key = self.adj.row(v).clone();
                if closed {
                    key.set(v);
                }
                by_key.entry(key).or_default().push(v + 1);
            }
            let mut classes: Vec<Vec<usize>> = by_key.into_values().collect();
            classes.sort_by_key(|c| c[0]);
            classes
        };
        TwinClasses {
            open_classes: group(false),
            closed_classes: group(true),
        }
    }

    /// Keeps the least vertex of every open twin class. Returns the reduced
    /// graph and the surjection from old to new vertex labels.
    pub fn reduce_twins(&self) -> (Graph, Vec<usize>) {
        let classes = self.twin_classes().open_classes;
        let mut mapping = vec![0usize; self.n];
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        for (new, class) in classes.iter().enumerate() {
            for &v in class {
                mapping[v - 1] = new + 1;
            }
        }
        let mut reduced = Graph::empty(reps.len());
        for (i, &u) in reps.iter().enumerate() {
            for (j, &v) in reps.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    reduced.adj.set(i, j, true);
                    reduced.adj.set(j, i, true);
                }
            }
        }
        (reduced, mapping)
    }

    /// A perfect matching into adjacent-twin pairs, if the closed twin
    /// classes admit one: every class must have even size, and vertices are
    /// then paired consecutively within their class.
    pub fn adjacent_twin_matching(&self) -> Option<AdjacentTwinMatching> {
        let classes = self.twin_classes().closed_classes;
        if classes.iter().any(|c| c.len() % 2 == 1) {
            return None;
        }
        let mut pairs = Vec::with_capacity(self.n / 2);
        for class in classes {
            for pair in class.chunks_exact(2) {
                pairs.push((pair[0], pair[1]));
            }
        }
        Some(AdjacentTwinMatching { pairs })
    }

    // ------------------------------------------------------------------
    // Formats
    // ------------------------------------------------------------------

    /// Parses the standard graph6 encoding, including the 4- and 8-byte
    /// headers for large orders. Directed and sparse variants are rejected.
    pub fn parse_graph6(text: &str) -> Result<Self> {
        let mut s = text.trim_end_matches(['\n', '\r']);
        let mut base = 0usize;
        if let Some(stripped) = s.strip_prefix(">>graph6<<") {
            base = 10;
            s = stripped;
        }
        let bytes = s.as_bytes();
        let at = |i: usize| base + i;
        match bytes.first() {
            None => return Err(Error::parse(at(0), "empty graph6 input")),
            Some(b':') | Some(b';') => {
                return Err(Error::parse(at(0), "sparse6 input is not supported"))
            }
            Some(b'&') => return Err(Error::parse(at(0), "digraph6 input is not supported")),
            _ => {}
        }
        if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
            return Err(Error::parse(
                at(pos),
                format!("byte 0x{:02x} outside the graph6 range 63..=126", bytes[pos]),
            ));
        }
        let sextet = |i: usize| (bytes[i] - 63) as u64;
        let (n, body_start) = if bytes[0] != b'~' {
            (sextet(0) as usize, 1)
        } else if bytes.len() >= 2 && bytes[1] != b'~' {
            if bytes.len() < 4 {
                return Err(Error::parse(at(0), "truncated 4-byte order header"));
            }
            let n = (sextet(1) << 12 | sextet(2) << 6 | sextet(3)) as usize;
            (n, 4)
        } else {
            if bytes.len() < 8 {
                return Err(Error::parse(at(0), "truncated 8-byte order header"));
            }
            let mut n = 0u64;
            for i in 2..8 {
                n = n << 6 | sextet(i);
            }
            (n as usize, 8)
        };
        let bits = n * n.saturating_sub(1) / 2;
        let want = bits.div_ceil(6);
        let got = bytes.len() - body_start;
        if got != want {
            return Err(Error::parse(
                at(body_start + got.min(want)),
                format!("graph6 body for n = {n} needs {want} bytes, found {got}"),
            ));
        }
        let mut g = Self::empty(n);
        let mut bit = 0usize;
        for j in 1..n {
            for i in 0..j {
                let byte = sextet(body_start + bit / 6);
                if byte >> (5 - bit % 6) & 1 == 1 {
                    g.adj.set(i, j, true);
                    g.adj.set(j, i, true);
                }
                bit += 1;
            }
        }
        // Padding bits must be zero on canonical encodings.
        while bit < want * 6 {
            if sextet(body_start + bit / 6) >> (5 - bit % 6) & 1 == 1 {
                return Err(Error::parse(
                    at(body_start + bit / 6),
                    "nonzero padding bit in graph6 body",
                ));
            }
            bit += 1;
        }
        Ok(g)
    }

    /// Canonical graph6 encoding.
    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out = Vec::new();
        if n <= 62 {
            out.push(63 + n as u8);
        } else if n <= 258_047 {
            out.push(b'~');
            for shift in [12, 6, 0] {
                out.push(63 + ((n >> shift) & 0x3f) as u8);
            }
        } else {
            out.extend(*b"~~");
            for shift in [30, 24, 18, 12, 6, 0] {
                out.push(63 + ((n >> shift) & 0x3f) as u8);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0u8;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | u8::from(self.adj.get(i, j));
                filled += 1;
                if filled == 6 {
                    out.push(63 + acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(63 + (acc << (6 - filled)));
        }
        String::from_utf8(out).expect("graph6 bytes are ASCII")
    }

    /// Parses a whitespace-separated edge list of 1-based endpoint pairs,
    /// optionally preceded by a literal `n <count>` header declaring the
    /// vertex count. Without a header, the order is the largest endpoint.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut tokens = tokenize(text);
        let mut declared: Option<usize> = None;
        if let Some(&(off, tok)) = tokens.first() {
            if tok == "n" {
                let Some(&(noff, ntok)) = tokens.get(1) else {
                    return Err(Error::parse(off, "header `n` without a vertex count"));
                };
                let count: usize = ntok
                    .parse()
                    .map_err(|_| Error::parse(noff, format!("invalid vertex count `{ntok}`")))?;
                declared = Some(count);
                tokens.drain(..2);
            }
        }
        if tokens.len() % 2 != 0 {
            let (off, tok) = tokens[tokens.len() - 1];
            return Err(Error::parse(
                off,
                format!("dangling endpoint `{tok}`: edges come in pairs"),
            ));
        }
        let mut edges = Vec::new();
        let mut max_seen = 0usize;
        for chunk in tokens.chunks_exact(2) {
            let mut pair = [0usize; 2];
            for (slot, &(off, tok)) in pair.iter_mut().zip(chunk) {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(off, format!("invalid vertex `{tok}`")))?;
                if v == 0 {
                    return Err(Error::parse(off, "vertices are 1-based; 0 is invalid"));
                }
                if let Some(n) = declared {
                    if v > n {
                        return Err(Error::parse(
                            off,
                            format!("vertex {v} exceeds the declared order {n}"),
                        ));
                    }
                }
                *slot = v;
            }
            let (off, _) = chunk[0];
            if pair[0] == pair[1] {
                return Err(Error::parse(off, format!("loop at vertex {}", pair[0])));
            }
            max_seen = max_seen.max(pair[0]).max(pair[1]);
            edges.push((pair[0], pair[1]));
        }
        let n = declared.unwrap_or(max_seen);
        Self::from_edges(n, &edges)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

fn tokenize(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

/// Vertex partitions by open and by closed neighborhood.
#[derive(Clone, Debug)]
pub struct TwinClasses {
    pub open_classes: Vec<Vec<usize>>,
    pub closed_classes: Vec<Vec<usize>>,
}

/// A perfect matching whose every edge joins a pair of adjacent twins.
#[derive(Clone, Debug)]
pub struct AdjacentTwinMatching {
    pub pairs: Vec<(usize, usize)>,
}
