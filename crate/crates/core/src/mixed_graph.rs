//! Mixed graphs: simple graphs in which some edges carry an orientation.
//!
//! A directed edge `(tail, head)` gives the Klein relation `tail head tail = head`
//! in the associated group, an undirected edge gives a commutation relation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("vertex `{0}` used before being declared")]
    UndeclaredVertex(String),
    #[error("cannot parse `{0}`")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is empty")]
    EmptyGraph,
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<GraphError>,
    },
}

impl GraphError {
    /// The error with any line annotation stripped.
    pub fn root(&self) -> &GraphError {
        match self {
            GraphError::AtLine { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            GraphError::AtLine { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// A finite simple mixed graph with string-labelled vertices.
///
/// Vertices keep insertion order. Every unordered pair of vertices carries at
/// most one edge, undirected or directed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MixedGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// Stored as `(min, max)`.
    undirected: BTreeSet<(usize, usize)>,
    /// Stored as `(tail, head)`.
    directed: BTreeSet<(usize, usize)>,
}

impl MixedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex if it is not present yet and returns its index.
    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }

    pub fn add_undirected(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let (i, j) = self.check_new_edge(a, b)?;
        self.undirected.insert((i.min(j), i.max(j)));
        Ok(())
    }

    pub fn add_directed(&mut self, tail: &str, head: &str) -> Result<(), GraphError> {
        let (i, j) = self.check_new_edge(tail, head)?;
        self.directed.insert((i, j));
        Ok(())
    }

    fn check_new_edge(&mut self, a: &str, b: &str) -> Result<(usize, usize), GraphError> {
        if a == b {
            return Err(GraphError::LoopEdge(a.to_string()));
        }
        if let (Some(&i), Some(&j)) = (self.index.get(a), self.index.get(b)) {
            if self.adjacent(i, j) {
                return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
            }
        }
        Ok((self.add_vertex(a), self.add_vertex(b)))
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.undirected.contains(&(i.min(j), i.max(j)))
            || self.directed.contains(&(i, j))
            || self.directed.contains(&(j, i))
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.undirected.len() + self.directed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn undirected_edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.undirected
            .iter()
            .map(|&(i, j)| (self.label(i), self.label(j)))
    }

    /// Directed edges as `(tail, head)`.
    pub fn directed_edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.directed
            .iter()
            .map(|&(i, j)| (self.label(i), self.label(j)))
    }

    pub fn has_directed_edge(&self) -> bool {
        !self.directed.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.undirected
            .iter()
            .chain(self.directed.iter())
            .filter(|&&(a, b)| a == i || b == i)
            .count()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for &(a, b) in self.undirected.iter().chain(self.directed.iter()) {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// The graph with every orientation forgotten.
    pub fn underlying_graph(&self) -> MixedGraph {
        let mut out = self.clone();
        for (t, h) in std::mem::take(&mut out.directed) {
            out.undirected.insert((t.min(h), t.max(h)));
        }
        out
    }

    /// The subgraph spanned by `subset`, keeping every edge (with its
    /// orientation) whose endpoints both lie in the subset. Vertex order
    /// follows `self`.
    pub fn induced_subgraph<S: AsRef<str>>(&self, subset: &[S]) -> Result<MixedGraph, GraphError> {
        let mut keep = vec![false; self.labels.len()];
        for label in subset {
            let i = self
                .vertex_index(label.as_ref())
                .ok_or_else(|| GraphError::UnknownVertex(label.as_ref().to_string()))?;
            keep[i] = true;
        }
        Ok(self.restrict(&keep))
    }

    fn restrict(&self, keep: &[bool]) -> MixedGraph {
        let mut out = MixedGraph::new();
        for (i, label) in self.labels.iter().enumerate() {
            if keep[i] {
                out.add_vertex(label);
            }
        }
        let map = |i: usize| out.index[&self.labels[i]];
        let undirected = self
            .undirected
            .iter()
            .filter(|&&(a, b)| keep[a] && keep[b])
            .map(|&(a, b)| {
                let (x, y) = (map(a), map(b));
                (x.min(y), x.max(y))
            })
            .collect();
        let directed = self
            .directed
            .iter()
            .filter(|&&(a, b)| keep[a] && keep[b])
            .map(|&(a, b)| (map(a), map(b)))
            .collect();
        out.undirected = undirected;
        out.directed = directed;
        out
    }

    /// Connected components of the underlying graph, ordered by the least
    /// vertex label they contain.
    pub fn connected_components(&self) -> Vec<MixedGraph> {
        let adj = self.neighbours();
        let mut comp = vec![usize::MAX; self.labels.len()];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.labels.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            groups.push(members);
        }
        groups.sort_by(|a, b| {
            let least = |g: &Vec<usize>| g.iter().map(|&i| self.labels[i].as_str()).min();
            least(a).cmp(&least(b))
        });
        groups
            .into_iter()
            .map(|members| {
                let mut keep = vec![false; self.labels.len()];
                for v in members {
                    keep[v] = true;
                }
                self.restrict(&keep)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.connected_components().len() == 1
    }

    /// Classifies a connected, nonempty mixed graph.
    pub fn classify_component(&self) -> Result<ComponentClass, GraphError> {
        if self.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        let n = self.vertex_count();
        if n == 1 {
            return Ok(ComponentClass::SingleVertex);
        }
        // A connected graph is a tree iff it has exactly n - 1 edges.
        if self.edge_count() != n - 1 {
            return Ok(ComponentClass::Cyclic);
        }
        let leaves = n - 1;
        if self.directed.is_empty() {
            if (0..n).any(|v| self.degree(v) == leaves) {
                return Ok(ComponentClass::Star(leaves));
            }
            return Ok(ComponentClass::OtherTree);
        }
        if self.undirected.is_empty() {
            let heads: BTreeSet<usize> = self.directed.iter().map(|&(_, h)| h).collect();
            if heads.len() == 1 {
                let head = *heads.iter().next().unwrap();
                if self.degree(head) == leaves {
                    return Ok(ComponentClass::SinkStar(leaves));
                }
            }
        }
        Ok(ComponentClass::DirectedOther)
    }

    pub fn graph_shape(&self) -> GraphShape {
        let components = self
            .connected_components()
            .iter()
            .map(|c| {
                c.classify_component()
                    .expect("connected components are connected and nonempty")
            })
            .collect();
        GraphShape { components }
    }

    /// Every triangle of the underlying graph, with the orientation pattern
    /// it carries. Triangles are listed by increasing vertex indices.
    pub fn triangles(&self) -> Vec<Triangle> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.adjacent(a, b) {
                    continue;
                }
                for c in b + 1..n {
                    if self.adjacent(a, c) && self.adjacent(b, c) {
                        out.push(Triangle {
                            vertices: [a, b, c].map(|i| self.labels[i].clone()),
                            kind: self.triangle_kind([a, b, c]),
                        });
                    }
                }
            }
        }
        out
    }

    fn triangle_kind(&self, vs: [usize; 3]) -> TriangleKind {
        let arcs: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .filter_map(|&(i, j)| {
                let (a, b) = (vs[i], vs[j]);
                if self.directed.contains(&(a, b)) {
                    Some((a, b))
                } else if self.directed.contains(&(b, a)) {
                    Some((b, a))
                } else {
                    None
                }
            })
            .collect();
        match arcs.as_slice() {
            [] => TriangleKind::Undirected,
            [_] => TriangleKind::OneArc,
            [(t1, h1), (t2, h2)] => {
                if h1 == h2 {
                    TriangleKind::CommonHead
                } else if t1 == t2 {
                    TriangleKind::CommonTail
                } else {
                    TriangleKind::ArcPath
                }
            }
            _ => {
                let mut outdeg = [0usize; 3];
                for (t, _) in &arcs {
                    let k = vs.iter().position(|v| v == t).unwrap();
                    outdeg[k] += 1;
                }
                if outdeg.iter().all(|&d| d == 1) {
                    TriangleKind::DirectedCycle
                } else {
                    TriangleKind::Transitive
                }
            }
        }
    }

    /// Renders the graph in the line format accepted by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            out.push_str(&format!("vertex {label}\n"));
        }
        for (a, b) in self.undirected_edges() {
            out.push_str(&format!("{a} -- {b}\n"));
        }
        for (t, h) in self.directed_edges() {
            out.push_str(&format!("{t} -> {h}\n"));
        }
        out
    }
}

/// Parses the line format; edges implicitly declare their endpoints.
pub fn parse_graph(text: &str) -> Result<MixedGraph, GraphError> {
    parse_with(text, false)
}

/// Like [`parse_graph`] but every edge endpoint must first appear in a
/// `vertex` line.
pub fn parse_graph_strict(text: &str) -> Result<MixedGraph, GraphError> {
    parse_with(text, true)
}

fn parse_with(text: &str, strict: bool) -> Result<MixedGraph, GraphError> {
    let mut g = MixedGraph::new();
    for (lineno, raw) in text.lines().enumerate() {
        let at = |e: GraphError| GraphError::AtLine {
            line: lineno + 1,
            source: Box::new(e),
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", label] => {
                g.add_vertex(label);
            }
            [a, op @ ("--" | "->"), b] => {
                if strict {
                    for v in [a, b] {
                        if g.vertex_index(v).is_none() {
                            return Err(at(GraphError::UndeclaredVertex(v.to_string())));
                        }
                    }
                }
                let res = if *op == "--" {
                    g.add_undirected(a, b)
                } else {
                    g.add_directed(a, b)
                };
                res.map_err(at)?;
            }
            _ => return Err(at(GraphError::Syntax(line.to_string()))),
        }
    }
    Ok(g)
}

/// The class of a connected mixed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentClass {
    SingleVertex,
    /// Undirected star with the given number of leaves.
    Star(usize),
    /// `n` directed edges sharing one head, which is the centre.
    SinkStar(usize),
    /// Undirected tree that is neither a vertex nor a star.
    OtherTree,
    /// Tree with a directed edge that is not a sink star.
    DirectedOther,
    /// The underlying graph has a cycle.
    Cyclic,
}

impl ComponentClass {
    /// True for the classes that always carry a directed edge. A cyclic
    /// component may or may not.
    pub fn has_directed_edge(self) -> bool {
        matches!(
            self,
            ComponentClass::SinkStar(_) | ComponentClass::DirectedOther
        )
    }

    pub fn is_tree(self) -> bool {
        !matches!(self, ComponentClass::Cyclic)
    }
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentClass::SingleVertex => write!(f, "vertex"),
            ComponentClass::Star(n) => write!(f, "star({n})"),
            ComponentClass::SinkStar(n) => write!(f, "sink_star({n})"),
            ComponentClass::OtherTree => write!(f, "other_tree"),
            ComponentClass::DirectedOther => write!(f, "directed_other"),
            ComponentClass::Cyclic => write!(f, "cyclic"),
        }
    }
}

/// Orientation pattern of a triangle in the underlying graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    /// No directed edge.
    Undirected,
    /// Exactly one directed edge.
    OneArc,
    /// Two directed edges with the same head.
    CommonHead,
    /// Two directed edges forming a directed path.
    ArcPath,
    /// Two directed edges with the same tail.
    CommonTail,
    /// Three directed edges forming a directed cycle.
    DirectedCycle,
    /// Three directed edges, one source and one sink.
    Transitive,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 7] = [
        TriangleKind::Undirected,
        TriangleKind::OneArc,
        TriangleKind::CommonHead,
        TriangleKind::ArcPath,
        TriangleKind::CommonTail,
        TriangleKind::DirectedCycle,
        TriangleKind::Transitive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TriangleKind::Undirected => "undirected",
            TriangleKind::OneArc => "one_arc",
            TriangleKind::CommonHead => "common_head",
            TriangleKind::ArcPath => "arc_path",
            TriangleKind::CommonTail => "common_tail",
            TriangleKind::DirectedCycle => "directed_cycle",
            TriangleKind::Transitive => "transitive",
        }
    }

    /// A triangle of this kind on vertices `a`, `b`, `c`.
    pub fn example(self) -> MixedGraph {
        let mut g = MixedGraph::new();
        let edges: [(&str, &str, bool); 3] = match self {
            TriangleKind::Undirected => [("a", "b", false), ("b", "c", false), ("c", "a", false)],
            TriangleKind::OneArc => [("a", "b", true), ("b", "c", false), ("c", "a", false)],
            TriangleKind::CommonHead => [("a", "b", true), ("c", "b", true), ("c", "a", false)],
            TriangleKind::ArcPath => [("a", "b", true), ("b", "c", true), ("c", "a", false)],
            TriangleKind::CommonTail => [("b", "a", true), ("b", "c", true), ("c", "a", false)],
            TriangleKind::DirectedCycle => [("a", "b", true), ("b", "c", true), ("c", "a", true)],
            TriangleKind::Transitive => [("a", "b", true), ("b", "c", true), ("a", "c", true)],
        };
        for v in ["a", "b", "c"] {
            g.add_vertex(v);
        }
        for (x, y, arc) in edges {
            let res = if arc {
                g.add_directed(x, y)
            } else {
                g.add_undirected(x, y)
            };
            res.expect("triangle edges are distinct");
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub vertices: [String; 3],
    pub kind: TriangleKind,
}

/// Component classes of a mixed graph, in component order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphShape {
    pub components: Vec<ComponentClass>,
}

impl GraphShape {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn isolated_count(&self) -> usize {
        self.count(|c| c == ComponentClass::SingleVertex)
    }

    /// Leaf counts of the star components, sorted.
    pub fn star_sizes(&self) -> Vec<usize> {
        self.sizes(|c| match c {
            ComponentClass::Star(n) => Some(n),
            _ => None,
        })
    }

    /// Leaf counts of the sink star components, sorted.
    pub fn sink_star_sizes(&self) -> Vec<usize> {
        self.sizes(|c| match c {
            ComponentClass::SinkStar(n) => Some(n),
            _ => None,
        })
    }

    pub fn other_tree_count(&self) -> usize {
        self.count(|c| c == ComponentClass::OtherTree)
    }

    pub fn directed_other_count(&self) -> usize {
        self.count(|c| c == ComponentClass::DirectedOther)
    }

    pub fn cyclic_count(&self) -> usize {
        self.count(|c| c == ComponentClass::Cyclic)
    }

    fn count(&self, pred: impl Fn(ComponentClass) -> bool) -> usize {
        self.components.iter().filter(|&&c| pred(c)).count()
    }

    fn sizes(&self, pick: impl Fn(ComponentClass) -> Option<usize>) -> Vec<usize> {
        let mut v: Vec<usize> = self.components.iter().filter_map(|&c| pick(c)).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for GraphShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
