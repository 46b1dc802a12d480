//! Multigraphs with parallel edges and loops, plus the small toolbox the
//! counting routines need: edge-list parsing and serialization, graph6
//! ingestion, named families, and structural predicates.
//!
//! Edges are stored in input order as ordered pairs `(u, v)`.  That order is
//! load-bearing: edge indices name the bits of subset and orientation masks,
//! and the stored direction `u → v` is the reference orientation.

use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

/// Errors from building, parsing or decoding graphs.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} endpoint {endpoint} is out of range for {n} vertices")]
    EndpointOutOfRange { edge: usize, endpoint: usize, n: usize },
    #[error("line {line}: expected `{expected}`, found `{found}`")]
    MalformedLine { line: usize, expected: &'static str, found: String },
    #[error("line {line}: endpoint {value} is out of range for {n} vertices")]
    ParsedEndpointOutOfRange { line: usize, value: usize, n: usize },
    #[error("expected {expected} edge lines, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter for family `{family}`: {reason}")]
    BadFamilyParameter { family: String, reason: &'static str },
    #[error("graph6: unsupported header (only >>graph6<< is accepted)")]
    Graph6UnsupportedHeader,
    #[error("graph6: byte {offset} (0x{byte:02x}) is outside the printable range 63..=126")]
    Graph6InvalidByte { offset: usize, byte: u8 },
    #[error("graph6: input is truncated (expected {expected} payload bytes, found {found})")]
    Graph6Truncated { expected: usize, found: usize },
    #[error("graph6: {0} trailing bytes after the edge bits")]
    Graph6TrailingData(usize),
    #[error("graph6: vertex count is too large to decode")]
    Graph6TooLarge,
}

/// Undirected multigraph: `n` vertices, edges as ordered endpoint pairs.
/// Parallel edges and loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Vertex degrees in vertex order; loops contribute 2 to their endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of the bipartiteness test: a 2-coloring, or an odd closed walk
/// certifying that none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    Bipartite { coloring: Vec<u8> },
    OddClosedWalk(OddClosedWalk),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }
}

/// A closed walk of odd length: `edges[i]` joins `vertices[i]` to
/// `vertices[(i+1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddClosedWalk {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl OddClosedWalk {
    /// Checks the walk edge by edge against `g`: closed, odd length, and
    /// every step uses an actual edge between consecutive vertices.
    pub fn validate(&self, g: &Multigraph) -> bool {
        let len = self.edges.len();
        if len == 0 || len.is_multiple_of(2) || self.vertices.len() != len {
            return false;
        }
        (0..len).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % len];
            match g.edges.get(self.edges[i]) {
                Some(&(u, v)) => (u, v) == (a, b) || (u, v) == (b, a),
                None => false,
            }
        })
    }
}

impl Multigraph {
    /// Builds a multigraph, validating that every endpoint is `< n`.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            for endpoint in [u, v] {
                if endpoint >= n {
                    return Err(GraphError::EndpointOutOfRange { edge: i, endpoint, n });
                }
            }
        }
        Ok(Self { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn has_loops(&self) -> bool {
        (0..self.edges.len()).any(|e| self.is_loop(e))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        DegreeSequence(deg)
    }

    /// Per-vertex incidence slots in edge order: slot `(e, side)` means this
    /// vertex is endpoint `side` (0 or 1) of edge `e`.  A loop contributes
    /// two consecutive slots to its vertex, side 0 first.
    pub fn incidence_lists(&self) -> Vec<Vec<(usize, u8)>> {
        let mut lists = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            lists[u].push((e, 0));
            lists[v].push((e, 1));
        }
        lists
    }

    /// The disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Multigraph { n: self.n + other.n, edges }
    }

    /// `Some(d)` when every vertex has degree `d`; `None` otherwise (and for
    /// the vertex-free graph).
    pub fn is_regular(&self) -> Option<usize> {
        let deg = self.degree_sequence().0;
        let &first = deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    /// True when every vertex has even degree, i.e. the graph admits an
    /// orientation with zero net degree at every vertex.
    pub fn is_eulerian(&self) -> bool {
        self.degree_sequence().0.iter().all(|d| d % 2 == 0)
    }

    /// True when every vertex is reachable from vertex 0 (vacuously true for
    /// the empty graph).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adjacency = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// BFS 2-coloring; on failure returns an odd closed walk, built from the
    /// two tree paths to a conflicting edge (or a loop).
    pub fn is_bipartite(&self) -> Bipartiteness {
        let adjacency = self.adjacency();
        let mut color: Vec<Option<u8>> = vec![None; self.n];
        // Parent data for walk reconstruction: (parent vertex, edge used).
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.n];
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(w, e) in &adjacency[u] {
                    if w == u {
                        // A loop is itself a closed walk of length 1.
                        return Bipartiteness::OddClosedWalk(OddClosedWalk {
                            vertices: vec![u],
                            edges: vec![e],
                        });
                    }
                    match color[w] {
                        None => {
                            color[w] = Some(1 - color[u].unwrap());
                            parent[w] = Some((u, e));
                            queue.push_back(w);
                        }
                        Some(cw) if cw == color[u].unwrap() => {
                            return Bipartiteness::OddClosedWalk(Self::odd_walk(
                                &parent, u, w, e,
                            ));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartiteness::Bipartite {
            coloring: color.into_iter().map(|c| c.unwrap_or(0)).collect(),
        }
    }

    /// Joins the tree paths from `u` and `w` to their lowest common ancestor
    /// and closes the walk with the conflict edge `e = {u, w}`.
    fn odd_walk(parent: &[Option<(usize, usize)>], u: usize, w: usize, e: usize) -> OddClosedWalk {
        let chain = |mut v: usize| {
            // (vertex, edge to parent) pairs from v up to the BFS root.
            let mut steps = vec![(v, None::<usize>)];
            while let Some((p, pe)) = parent[v] {
                steps.last_mut().unwrap().1 = Some(pe);
                steps.push((p, None));
                v = p;
            }
            steps
        };
        let mut up = chain(u);
        let mut down = chain(w);
        // Drop the shared part above the lowest common ancestor.
        while up.len() >= 2
            && down.len() >= 2
            && up[up.len() - 2].0 == down[down.len() - 2].0
        {
            up.pop();
            down.pop();
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        // u up to the common ancestor (whose own parent edge is not part of
        // the walk)…
        for (idx, &(v, pe)) in up.iter().enumerate() {
            vertices.push(v);
            if idx + 1 < up.len() {
                edges.push(pe.expect("ascending steps carry their parent edge"));
            }
        }
        // …then back down to w (skipping the ancestor, already emitted)…
        for &(v, pe) in down.iter().rev().skip(1) {
            edges.push(pe.expect("descending steps carry their parent edge"));
            vertices.push(v);
        }
        // …and the conflict edge closes the walk.
        edges.push(e);
        OddClosedWalk { vertices, edges }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adjacency = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adjacency[u].push((v, e));
            if u != v {
                adjacency[v].push((u, e));
            }
        }
        adjacency
    }

    /// Renders the edge-list format: header `n m`, then one `u v` line per
    /// edge, in stored order.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list format produced by [`Multigraph::serialize`].
    /// Blank lines and `#` comments are skipped; errors carry line numbers.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(GraphError::MalformedLine {
            line: 1,
            expected: "n m",
            found: String::new(),
        })?;
        let parse_pair = |line: usize, text: &str, expected: &'static str| {
            let mut parts = text.split_whitespace();
            let mut next = || {
                parts
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(GraphError::MalformedLine { line, expected, found: text.to_owned() })
            };
            let a = next()?;
            let b = next()?;
            if parts.next().is_some() {
                return Err(GraphError::MalformedLine { line, expected, found: text.to_owned() });
            }
            Ok((a, b))
        };
        let (n, m) = parse_pair(line, header, "n m")?;
        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines {
            let (u, v) = parse_pair(line, text, "u v")?;
            for value in [u, v] {
                if value >= n {
                    return Err(GraphError::ParsedEndpointOutOfRange { line, value, n });
                }
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::WrongEdgeCount { expected: m, found: edges.len() });
        }
        Ok(Self { n, edges })
    }

    /// Decodes a graph6 string (simple graphs only, by format definition).
    /// The optional `>>graph6<<` header is accepted; other headers are not.
    pub fn from_graph6(text: &str) -> Result<Self, GraphError> {
        let s = text.trim();
        let s = match s.strip_prefix(">>graph6<<") {
            Some(rest) => rest,
            None if s.starts_with(">>") => return Err(GraphError::Graph6UnsupportedHeader),
            None => s,
        };
        let bytes = s.as_bytes();
        for (offset, &byte) in bytes.iter().enumerate() {
            if !(63..=126).contains(&byte) {
                return Err(GraphError::Graph6InvalidByte { offset, byte });
            }
        }
        let sextet = |b: u8| usize::from(b - 63);
        let (n, header_len) = match bytes {
            [] => return Err(GraphError::Graph6Truncated { expected: 1, found: 0 }),
            [126, 126, rest @ ..] => {
                if rest.len() < 6 {
                    return Err(GraphError::Graph6Truncated { expected: 8, found: bytes.len() });
                }
                let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | sextet(b));
                (n, 8)
            }
            [126, rest @ ..] => {
                if rest.len() < 3 {
                    return Err(GraphError::Graph6Truncated { expected: 4, found: bytes.len() });
                }
                let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | sextet(b));
                (n, 4)
            }
            [b, ..] => (sextet(*b), 1),
        };
        let bit_count = n
            .checked_mul(n.saturating_sub(1))
            .map(|x| x / 2)
            .ok_or(GraphError::Graph6TooLarge)?;
        let payload_len = bit_count.div_ceil(6);
        let payload = &bytes[header_len..];
        if payload.len() < payload_len {
            return Err(GraphError::Graph6Truncated {
                expected: header_len + payload_len,
                found: bytes.len(),
            });
        }
        if payload.len() > payload_len {
            return Err(GraphError::Graph6TrailingData(payload.len() - payload_len));
        }
        let bit = |k: usize| (sextet(payload[k / 6]) >> (5 - k % 6)) & 1 == 1;
        let mut edges = Vec::new();
        let mut k = 0;
        // Upper triangle in column-major order, matching the format spec.
        for j in 1..n {
            for i in 0..j {
                if bit(k) {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Ok(Self { n, edges })
    }

    /// Builds a graph from a family spec such as `K5`, `C6`, `K4,4`,
    /// `K2,2,2`, `octahedron` or `petersen`; `+` takes disjoint unions,
    /// e.g. `C3+C3`.
    pub fn from_family_spec(spec: &str) -> Result<Self, GraphError> {
        let mut graph: Option<Multigraph> = None;
        for token in spec.split('+') {
            let next = Family::parse(token)?.build();
            graph = Some(match graph {
                None => next,
                Some(g) => g.disjoint_union(&next),
            });
        }
        graph.ok_or_else(|| GraphError::UnknownFamily(spec.to_owned()))
    }
}

/// Named graph families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Complete graph `K_n`.
    Complete(usize),
    /// Cycle `C_n` (`C1` is a loop, `C2` a pair of parallel edges).
    Cycle(usize),
    /// Complete multipartite graph with the given part sizes.
    CompleteMultipartite(Vec<usize>),
    /// The Petersen graph.
    Petersen,
}

impl Family {
    /// Parses a single family token (case-insensitive letter).
    pub fn parse(token: &str) -> Result<Self, GraphError> {
        let token = token.trim();
        let bad = |reason| GraphError::BadFamilyParameter { family: token.to_owned(), reason };
        match token.to_ascii_lowercase().as_str() {
            "petersen" => return Ok(Family::Petersen),
            "octahedron" => return Ok(Family::CompleteMultipartite(vec![2, 2, 2])),
            _ => {}
        }
        let (letter, rest) = token
            .split_at_checked(1)
            .ok_or_else(|| GraphError::UnknownFamily(token.to_owned()))?;
        if !matches!(letter, "K" | "k" | "C" | "c") {
            return Err(GraphError::UnknownFamily(token.to_owned()));
        }
        let parts: Vec<usize> = rest
            .split(',')
            .map(|p| p.parse::<usize>().map_err(|_| bad("expected a positive integer")))
            .collect::<Result<_, _>>()?;
        if parts.contains(&0) {
            return Err(bad("parameters must be at least 1"));
        }
        match (letter, parts.len()) {
            ("K" | "k", 1) => Ok(Family::Complete(parts[0])),
            ("K" | "k", _) => Ok(Family::CompleteMultipartite(parts)),
            ("C" | "c", 1) => Ok(Family::Cycle(parts[0])),
            _ => Err(bad("cycles take a single parameter")),
        }
    }

    /// Constructs the family member (edges in lexicographic order).
    pub fn build(&self) -> Multigraph {
        match self {
            Family::Complete(n) => {
                let mut edges = Vec::new();
                for i in 0..*n {
                    for j in i + 1..*n {
                        edges.push((i, j));
                    }
                }
                Multigraph { n: *n, edges }
            }
            Family::Cycle(n) => {
                let edges = (0..*n).map(|i| (i, (i + 1) % n)).collect();
                Multigraph { n: *n, edges }
            }
            Family::CompleteMultipartite(parts) => {
                let n = parts.iter().sum();
                let mut part_of = Vec::with_capacity(n);
                for (p, &size) in parts.iter().enumerate() {
                    part_of.extend(std::iter::repeat_n(p, size));
                }
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if part_of[i] != part_of[j] {
                            edges.push((i, j));
                        }
                    }
                }
                Multigraph { n, edges }
            }
            Family::Petersen => {
                let mut edges = Vec::new();
                for i in 0..5 {
                    edges.push((i, (i + 1) % 5)); // outer 5-cycle
                }
                for i in 0..5 {
                    edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
                }
                for i in 0..5 {
                    edges.push((i, 5 + i)); // spokes
                }
                Multigraph { n: 10, edges }
            }
        }
    }
}
