//! Finite graphs and edge-colored digraphs, with isomorphism machinery.
//!
//! [`Graph`] is a loopless undirected graph on at most 64 vertices with
//! bitset adjacency rows. [`ColoredDigraph`] is the general object the
//! partial automorphism machinery works over: a directed graph (loops
//! allowed) whose arcs are partitioned into color classes. A plain graph
//! embeds as a one-color digraph with both orientations of every edge.

mod canon;
mod generate;
mod graph6;

pub use canon::{automorphisms, canonical_form, is_isomorphic, vertex_orbits};
pub use generate::{all_labeled_graphs, nonisomorphic_graphs};
pub use graph6::{format_graph6, parse_graph6, Graph6Error};

use thiserror::Error;

/// Largest supported vertex count (bitset adjacency rows).
pub const MAX_VERTICES: usize = 64;

/// Errors from graph and digraph construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    /// Vertex count above [`MAX_VERTICES`].
    #[error("vertex count {0} exceeds the supported maximum {MAX_VERTICES}")]
    TooManyVertices(usize),
    /// A vertex index is not below the vertex count.
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    /// Undirected graphs here are loopless.
    #[error("loops are not allowed in an undirected graph (vertex {0})")]
    LoopNotAllowed(usize),
    /// An arc was assigned to two different color classes.
    #[error("arc ({0}, {1}) appears in more than one color class")]
    ColorOverlap(usize, usize),
    /// Exhaustive generation was asked for more vertices than it supports.
    #[error("generation is capped at {1} vertices, got {0}")]
    GenerationCapExceeded(usize, usize),
}

/// Errors from the edge-list text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    /// No nonempty lines at all.
    #[error("missing header line \"n l\"")]
    MissingHeader,
    /// The first line is not two integers `n l`.
    #[error("malformed header line {0:?}")]
    BadHeader(String),
    /// An arc line is not three integers `c u v`.
    #[error("malformed edge line {0:?} (expected \"c u v\")")]
    BadLine(String),
    /// A color index is outside `1..=l`.
    #[error("color {0} out of range 1..={1}")]
    ColorOutOfRange(usize, usize),
    /// A vertex index is outside `1..=n`.
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    /// The same arc is listed twice with the same color.
    #[error("duplicate arc ({1}, {2}) in color {0}")]
    DuplicateArc(usize, usize, usize),
    /// The same arc is listed under two different colors.
    #[error("arc ({0}, {1}) listed under more than one color")]
    ColorOverlap(usize, usize),
    /// Graph parsing requires a one-color header.
    #[error("an undirected graph needs exactly one color, header declares {0}")]
    NotAGraph(usize),
    /// Graph parsing rejects loops.
    #[error("an undirected graph cannot carry the loop ({0}, {0})")]
    LoopInGraph(usize),
    /// Vertex count or construction failure underneath.
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A loopless undirected graph on `n ≤ 64` vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    /// Builds a graph from undirected edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    /// Adds the edge `{u, v}`; loops are rejected, duplicates are idempotent.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::LoopNotAllowed(u));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjacency test.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] >> v & 1 == 1
    }

    /// Neighborhood of `v` as a bitset.
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in crate::pperm::bits(self.rows[u] & !((1u64 << u) | ((1u64 << u) - 1))) {
                out.push((u, v));
            }
        }
        out
    }

    /// The complement graph (all non-edges become edges).
    pub fn complement(&self) -> Graph {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let rows = (0..self.n)
            .map(|v| !self.rows[v] & full & !(1u64 << v))
            .collect();
        Graph { n: self.n, rows }
    }

    /// Induced subgraph on the vertices of `mask`, relabeled to `0..k`
    /// in increasing order of original index.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = crate::pperm::bits(mask).filter(|&v| v < self.n).collect();
        let mut g = Graph::new(verts.len()).expect("induced subgraph is no larger");
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    /// Relabels vertices by a permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n).unwrap();
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).unwrap();
        }
        g
    }

    /// The graph as a one-color digraph with both arc orientations.
    pub fn to_digraph(&self) -> ColoredDigraph {
        let mut d = ColoredDigraph::new(self.n, 1).expect("same vertex bound");
        for (u, v) in self.edges() {
            d.set_color(u, v, Some(0));
            d.set_color(v, u, Some(0));
        }
        d
    }

    /// Isomorphism with another graph; returns the lexicographically least
    /// witness mapping when one exists.
    pub fn is_isomorphic(&self, other: &Graph) -> Option<Vec<usize>> {
        is_isomorphic(&self.to_digraph(), &other.to_digraph())
    }

    /// Canonically relabeled copy: isomorphic graphs yield identical output.
    pub fn canonical(&self) -> Graph {
        Graph::from_digraph(&canonical_form(&self.to_digraph()))
            .expect("canonical form of a symmetric loopless digraph")
    }

    /// graph6 encoding of the canonically relabeled copy.
    pub fn canonical_g6(&self) -> String {
        format_graph6(&self.canonical()).expect("canonical graph within graph6 bounds")
    }

    /// Reads a symmetric loopless one-color digraph back as a graph.
    pub fn from_digraph(d: &ColoredDigraph) -> Option<Graph> {
        let mut g = Graph::new(d.n()).ok()?;
        for u in 0..d.n() {
            if d.color_of(u, u).is_some() {
                return None;
            }
            for v in u + 1..d.n() {
                match (d.color_of(u, v), d.color_of(v, u)) {
                    (Some(0), Some(0)) => g.add_edge(u, v).ok()?,
                    (None, None) => {}
                    _ => return None,
                }
            }
        }
        Some(g)
    }

    /// Parses the `n l` / `c u v` edge-list format as an undirected graph:
    /// one color, symmetric closure, loops rejected.
    pub fn parse_edgelist(text: &str) -> Result<Graph, EdgeListError> {
        let d = ColoredDigraph::parse_edgelist(text)?;
        if d.colors() != 1 {
            return Err(EdgeListError::NotAGraph(d.colors()));
        }
        let mut g = Graph::new(d.n())?;
        for u in 0..d.n() {
            for v in 0..d.n() {
                if d.color_of(u, v).is_some() {
                    if u == v {
                        return Err(EdgeListError::LoopInGraph(u + 1));
                    }
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Formats as edge-list text (one color, each edge listed once, 1-based).
    pub fn format_edgelist(&self) -> String {
        let mut out = format!("{} 1\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("1 {} {}\n", u + 1, v + 1));
        }
        out
    }
}

/// A directed graph on `n ≤ 64` vertices whose arcs (loops allowed) are
/// partitioned into `colors` pairwise disjoint classes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColoredDigraph {
    n: usize,
    colors: usize,
    /// Row-major: `adj[u*n + v]` is `0` for no arc, `1 + c` for color `c`.
    adj: Vec<u32>,
}

impl ColoredDigraph {
    /// An arcless digraph with a fixed number of color classes.
    pub fn new(n: usize, colors: usize) -> Result<ColoredDigraph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(ColoredDigraph { n, colors, adj: vec![0; n * n] })
    }

    /// Builds a digraph from per-color arc lists; classes must be disjoint.
    pub fn from_edge_lists(
        n: usize,
        edge_lists: &[Vec<(usize, usize)>],
    ) -> Result<ColoredDigraph, GraphError> {
        let mut d = ColoredDigraph::new(n, edge_lists.len())?;
        for (c, arcs) in edge_lists.iter().enumerate() {
            for &(u, v) in arcs {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange(u, n));
                }
                if v >= n {
                    return Err(GraphError::VertexOutOfRange(v, n));
                }
                if d.adj[u * n + v] != 0 {
                    return Err(GraphError::ColorOverlap(u, v));
                }
                d.adj[u * n + v] = 1 + c as u32;
            }
        }
        Ok(d)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of color classes.
    pub fn colors(&self) -> usize {
        self.colors
    }

    /// The color of arc `(u, v)`, if present.
    pub fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        match self.adj[u * self.n + v] {
            0 => None,
            c => Some(c as usize - 1),
        }
    }

    /// Raw color cell (0 = none, 1+c = color c); used by hot loops.
    #[inline]
    pub(crate) fn cell(&self, u: usize, v: usize) -> u32 {
        self.adj[u * self.n + v]
    }

    /// Sets or clears the color of arc `(u, v)`.
    pub fn set_color(&mut self, u: usize, v: usize, color: Option<usize>) {
        self.adj[u * self.n + v] = match color {
            None => 0,
            Some(c) => {
                assert!(c < self.colors, "color {c} out of range");
                1 + c as u32
            }
        };
    }

    /// Arcs of one color, sorted.
    pub fn arcs_of_color(&self, c: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.color_of(u, v) == Some(c) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Total arc count over all colors.
    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&x| x != 0).count()
    }

    /// Induced subdigraph on the vertices of `mask`, relabeled to `0..k` in
    /// increasing order of original index; the color count is preserved.
    pub fn induced(&self, mask: u64) -> ColoredDigraph {
        let verts: Vec<usize> = crate::pperm::bits(mask).filter(|&v| v < self.n).collect();
        let mut d = ColoredDigraph::new(verts.len(), self.colors)
            .expect("induced subgraph is no larger");
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                d.adj[i * verts.len() + j] = self.adj[u * self.n + v];
            }
        }
        d
    }

    /// Relabels vertices by a permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> ColoredDigraph {
        let mut d = ColoredDigraph::new(self.n, self.colors).unwrap();
        for u in 0..self.n {
            for v in 0..self.n {
                d.adj[perm[u] * self.n + perm[v]] = self.adj[u * self.n + v];
            }
        }
        d
    }

    /// Parses the edge-list text format:
    /// a header `n l`, then one `c u v` line per arc, all 1-based.
    pub fn parse_edgelist(text: &str) -> Result<ColoredDigraph, EdgeListError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or(EdgeListError::MissingHeader)?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (n, l) = match parts.as_slice() {
            [a, b] => (
                a.parse::<usize>().map_err(|_| EdgeListError::BadHeader(header.into()))?,
                b.parse::<usize>().map_err(|_| EdgeListError::BadHeader(header.into()))?,
            ),
            _ => return Err(EdgeListError::BadHeader(header.into())),
        };
        let mut d = ColoredDigraph::new(n, l)?;
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let nums: Vec<usize> = parts
                .iter()
                .map(|p| p.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| EdgeListError::BadLine(line.into()))?;
            let [c, u, v] = nums.as_slice() else {
                return Err(EdgeListError::BadLine(line.into()));
            };
            let (c, u, v) = (*c, *u, *v);
            if c == 0 || c > l {
                return Err(EdgeListError::ColorOutOfRange(c, l));
            }
            if u == 0 || u > n {
                return Err(EdgeListError::VertexOutOfRange(u, n));
            }
            if v == 0 || v > n {
                return Err(EdgeListError::VertexOutOfRange(v, n));
            }
            match d.adj[(u - 1) * n + (v - 1)] {
                0 => d.adj[(u - 1) * n + (v - 1)] = c as u32,
                prev if prev == c as u32 => return Err(EdgeListError::DuplicateArc(c, u, v)),
                _ => return Err(EdgeListError::ColorOverlap(u, v)),
            }
        }
        Ok(d)
    }

    /// Formats as edge-list text, arcs sorted by `(color, source, target)`.
    pub fn format_edgelist(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.colors);
        for c in 0..self.colors {
            for (u, v) in self.arcs_of_color(c) {
                out.push_str(&format!("{} {} {}\n", c + 1, u + 1, v + 1));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma0() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn construction_and_validation() {
        assert!(Graph::new(65).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        let g = gamma0();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 0));
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.degree(3), 0);
    }

    #[test]
    fn complement_of_path_plus_isolated() {
        // Complement of {12, 23} on 4 vertices is {13, 14, 24, 34} (1-based).
        let c = gamma0().complement();
        assert_eq!(c.edges(), vec![(0, 2), (0, 3), (1, 3), (2, 3)]);
        assert_eq!(c.complement(), gamma0());
        assert_eq!(Graph::new(0).unwrap().complement().n(), 0);
    }

    #[test]
    fn induced_subgraphs() {
        let g = gamma0();
        // Vertices {1,2,3} (1-based) induce a path; {1,3,4} induce no edges.
        assert_eq!(g.induced(0b0111).edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.induced(0b1101).edge_count(), 0);
        assert_eq!(g.induced(0b0011).edges(), vec![(0, 1)]);
        assert_eq!(g.induced(0).n(), 0);
    }

    #[test]
    fn digraph_round_trip() {
        let g = gamma0();
        let d = g.to_digraph();
        assert_eq!(d.arc_count(), 4);
        assert_eq!(Graph::from_digraph(&d), Some(g));
        let mut loops = ColoredDigraph::new(2, 1).unwrap();
        loops.set_color(0, 0, Some(0));
        assert_eq!(Graph::from_digraph(&loops), None);
    }

    #[test]
    fn colored_digraph_construction() {
        let d = ColoredDigraph::from_edge_lists(3, &[vec![(0, 1), (1, 0)], vec![(2, 2)]])
            .unwrap();
        assert_eq!(d.color_of(0, 1), Some(0));
        assert_eq!(d.color_of(2, 2), Some(1));
        assert_eq!(d.color_of(1, 2), None);
        assert!(ColoredDigraph::from_edge_lists(3, &[vec![(0, 1)], vec![(0, 1)]]).is_err());
        assert!(ColoredDigraph::from_edge_lists(3, &[vec![(0, 5)]]).is_err());
    }

    #[test]
    fn edgelist_round_trip_digraph() {
        let d = ColoredDigraph::from_edge_lists(
            4,
            &[vec![(0, 1), (1, 0), (3, 3)], vec![(2, 0)]],
        )
        .unwrap();
        let text = d.format_edgelist();
        assert_eq!(text, "4 2\n1 1 2\n1 2 1\n1 4 4\n2 3 1\n");
        assert_eq!(ColoredDigraph::parse_edgelist(&text).unwrap(), d);
    }

    #[test]
    fn edgelist_round_trip_graph() {
        let g = gamma0();
        let text = g.format_edgelist();
        assert_eq!(text, "4 1\n1 1 2\n1 2 3\n");
        assert_eq!(Graph::parse_edgelist(&text).unwrap(), g);
        // Symmetric closure: either orientation may be listed.
        assert_eq!(Graph::parse_edgelist("4 1\n1 2 1\n1 2 3\n").unwrap(), g);
    }

    #[test]
    fn edgelist_rejects_bad_input() {
        use EdgeListError::{
            BadHeader, BadLine, ColorOutOfRange, ColorOverlap, DuplicateArc, LoopInGraph,
            MissingHeader, NotAGraph, VertexOutOfRange,
        };
        assert!(matches!(ColoredDigraph::parse_edgelist(""), Err(MissingHeader)));
        assert!(matches!(ColoredDigraph::parse_edgelist("x 1\n"), Err(BadHeader(_))));
        assert!(matches!(ColoredDigraph::parse_edgelist("3\n"), Err(BadHeader(_))));
        assert!(matches!(ColoredDigraph::parse_edgelist("3 1\n1 2\n"), Err(BadLine(_))));
        assert!(matches!(
            ColoredDigraph::parse_edgelist("3 1\n2 1 2\n"),
            Err(ColorOutOfRange(2, 1))
        ));
        assert!(matches!(
            ColoredDigraph::parse_edgelist("3 1\n1 4 1\n"),
            Err(VertexOutOfRange(4, 3))
        ));
        assert!(matches!(
            ColoredDigraph::parse_edgelist("3 1\n1 1 2\n1 1 2\n"),
            Err(DuplicateArc(1, 1, 2))
        ));
        assert!(matches!(
            ColoredDigraph::parse_edgelist("3 2\n1 1 2\n2 1 2\n"),
            Err(ColorOverlap(1, 2))
        ));
        assert!(matches!(Graph::parse_edgelist("3 2\n"), Err(NotAGraph(2))));
        assert!(matches!(Graph::parse_edgelist("3 1\n1 2 2\n"), Err(LoopInGraph(2))));
    }

    #[test]
    fn relabel_moves_edges() {
        let g = gamma0();
        let r = g.relabel(&[3, 2, 1, 0]);
        assert_eq!(r.edges(), vec![(1, 2), (2, 3)]);
    }
}
