//! Partially directed graphs, DAGs, and chordal-graph machinery.
//!
//! Vertices are dense indices `0..n` with a side table of display names.
//! Adjacency is stored as per-vertex bitsets so membership tests stay O(1)
//! inside the exponential search oracles. Edge storage is canonical
//! (undirected pairs with the smaller id first, directed pairs ordered), so
//! iteration order (and therefore every serialized artifact) is
//! deterministic.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// A partially directed graph: for any vertex pair at most one of `u -> v`,
/// `v -> u`, `u -- v` is present, and self-adjacencies are rejected.
#[derive(Clone)]
pub struct PartiallyDirectedGraph {
    names: Vec<String>,
    /// `children[u]` = { v : u -> v }
    children: Vec<FixedBitSet>,
    /// `parents[v]` = { u : u -> v }
    parents: Vec<FixedBitSet>,
    /// `und[u]` = { v : u -- v }
    und: Vec<FixedBitSet>,
}

/// Partition of the vertices into the connected components that remain after
/// removing all directed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    /// Components sorted by smallest member; each component sorted ascending.
    pub components: Vec<Vec<usize>>,
    /// `component_of[v]` = index into `components`.
    pub component_of: Vec<usize>,
}

impl ChainDecomposition {
    /// Components with more than one vertex, in order.
    pub fn non_singletons(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.components.iter().filter(|c| c.len() > 1)
    }
}

fn validate_name(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name.contains(char::is_whitespace)
        || name.starts_with('#')
        || name == "->"
        || name == "--"
        || name.contains(',');
    if bad {
        return Err(Error::InvalidName(name.to_string()));
    }
    Ok(())
}

impl PartiallyDirectedGraph {
    /// An edgeless graph on `n` vertices named `0..n`.
    pub fn new(n: usize) -> Self {
        Self::with_names((0..n).map(|v| v.to_string()).collect()).expect("numeric names are valid")
    }

    /// An edgeless graph with the given display names (unique, whitespace-free).
    pub fn with_names(names: Vec<String>) -> Result<Self> {
        let n = names.len();
        let mut seen = HashMap::with_capacity(n);
        for (v, name) in names.iter().enumerate() {
            validate_name(name)?;
            if seen.insert(name.clone(), v).is_some() {
                return Err(Error::InvalidName(name.clone()));
            }
        }
        Ok(Self {
            names,
            children: vec![FixedBitSet::with_capacity(n); n],
            parents: vec![FixedBitSet::with_capacity(n); n],
            und: vec![FixedBitSet::with_capacity(n); n],
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n {
            return Err(Error::VertexOutOfRange(u, n));
        }
        if v >= n {
            return Err(Error::VertexOutOfRange(v, n));
        }
        if u == v {
            return Err(Error::SelfAdjacency(u));
        }
        if self.adjacent(u, v) {
            return Err(Error::ConflictingAdjacency(u, v));
        }
        Ok(())
    }

    pub fn add_directed(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.children[u].insert(v);
        self.parents[v].insert(u);
        Ok(())
    }

    pub fn add_undirected(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.und[u].insert(v);
        self.und[v].insert(u);
        Ok(())
    }

    pub fn remove_directed(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_directed(u, v) {
            return Err(Error::EdgeNotDirected(u, v));
        }
        self.children[u].remove(v);
        self.parents[v].remove(u);
        Ok(())
    }

    /// Replace the undirected edge `u -- v` by `u -> v`.
    pub fn orient(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_undirected(u, v) {
            return Err(Error::EdgeNotDirected(u, v));
        }
        self.und[u].remove(v);
        self.und[v].remove(u);
        self.children[u].insert(v);
        self.parents[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn has_directed(&self, u: usize, v: usize) -> bool {
        self.children[u].contains(v)
    }

    #[inline]
    pub fn has_undirected(&self, u: usize, v: usize) -> bool {
        self.und[u].contains(v)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_undirected(u, v) || self.has_directed(u, v) || self.has_directed(v, u)
    }

    #[inline]
    pub fn parents(&self, v: usize) -> &FixedBitSet {
        &self.parents[v]
    }

    #[inline]
    pub fn children(&self, v: usize) -> &FixedBitSet {
        &self.children[v]
    }

    #[inline]
    pub fn und_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.und[v]
    }

    /// All vertices adjacent to `v`, regardless of edge kind.
    pub fn neighbors(&self, v: usize) -> FixedBitSet {
        let mut nb = self.und[v].clone();
        nb.union_with(&self.children[v]);
        nb.union_with(&self.parents[v]);
        nb
    }

    /// Directed edges in canonical `(u, v)` order.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            out.extend(self.children[u].ones().map(|v| (u, v)));
        }
        out
    }

    /// Undirected edges as `(u, v)` with `u < v`, in canonical order.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            out.extend(self.und[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn directed_edge_count(&self) -> usize {
        self.children.iter().map(|c| c.count_ones(..)).sum()
    }

    pub fn undirected_edge_count(&self) -> usize {
        self.und.iter().map(|c| c.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_directed_edges(&self) -> bool {
        self.children.iter().any(|c| c.count_ones(..) > 0)
    }

    pub fn has_undirected_edges(&self) -> bool {
        self.und.iter().any(|c| c.count_ones(..) > 0)
    }

    /// Same vertex set, every adjacency undirected.
    pub fn skeleton(&self) -> PartiallyDirectedGraph {
        let n = self.vertex_count();
        let mut g = PartiallyDirectedGraph {
            names: self.names.clone(),
            children: vec![FixedBitSet::with_capacity(n); n],
            parents: vec![FixedBitSet::with_capacity(n); n],
            und: self.und.clone(),
        };
        for u in 0..n {
            for v in self.children[u].ones() {
                g.und[u].insert(v);
                g.und[v].insert(u);
            }
        }
        g
    }

    /// All induced subgraphs `b -> a <- c` with `b`, `c` non-adjacent,
    /// canonicalized as `(b, a, c)` with `b < c` and sorted.
    pub fn v_structures(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            let pa: Vec<usize> = self.parents[a].ones().collect();
            for (i, &b) in pa.iter().enumerate() {
                for &c in &pa[i + 1..] {
                    if !self.adjacent(b, c) {
                        out.push((b, a, c));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected components after deleting all directed edges.
    pub fn chain_components(&self) -> ChainDecomposition {
        let n = self.vertex_count();
        let mut component_of = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let idx = components.len();
            let mut comp = vec![start];
            component_of[start] = idx;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in self.und[u].ones() {
                    if component_of[v] == usize::MAX {
                        component_of[v] = idx;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        ChainDecomposition {
            components,
            component_of,
        }
    }

    /// True iff no cycle (walking directed edges forwards and undirected edges
    /// either way) contains a directed edge. Equivalently: no directed edge
    /// joins two vertices of one chain component, and the component quotient
    /// digraph is acyclic.
    pub fn is_chain_graph(&self) -> bool {
        let cc = self.chain_components();
        let k = cc.components.len();
        let mut quotient = vec![FixedBitSet::with_capacity(k); k];
        for (u, v) in self.directed_edges() {
            let (cu, cv) = (cc.component_of[u], cc.component_of[v]);
            if cu == cv {
                return false;
            }
            quotient[cu].insert(cv);
        }
        // Kahn on the quotient digraph.
        let mut indeg = vec![0usize; k];
        for succs in &quotient {
            for v in succs.ones() {
                indeg[v] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..k).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = ready.pop() {
            seen += 1;
            for v in quotient[u].ones() {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(v);
                }
            }
        }
        seen == k
    }

    /// Induced subgraph on `vertices` (strictly ascending). Returns the
    /// subgraph plus the map from new ids to the original ids; names carry
    /// over.
    pub fn induced(&self, vertices: &[usize]) -> Result<(PartiallyDirectedGraph, Vec<usize>)> {
        let n = self.vertex_count();
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "induced subgraph vertices must be strictly ascending".into(),
            ));
        }
        if let Some(&v) = vertices.last() {
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
        }
        let mut to_new = vec![usize::MAX; n];
        for (new, &old) in vertices.iter().enumerate() {
            to_new[old] = new;
        }
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        let mut sub = PartiallyDirectedGraph::with_names(names)?;
        for (new_u, &old_u) in vertices.iter().enumerate() {
            for old_v in self.children[old_u].ones() {
                if to_new[old_v] != usize::MAX {
                    sub.add_directed(new_u, to_new[old_v])?;
                }
            }
            for old_v in self.und[old_u].ones() {
                if old_v > old_u && to_new[old_v] != usize::MAX {
                    sub.add_undirected(new_u, to_new[old_v])?;
                }
            }
        }
        Ok((sub, vertices.to_vec()))
    }

    /// Maximum cardinality search over the undirected graph: repeatedly pick
    /// the vertex with the most already-visited neighbors, breaking ties by
    /// lowest id. Rejects graphs with directed adjacencies.
    pub fn maximum_cardinality_search(&self) -> Result<Vec<usize>> {
        if self.has_directed_edges() {
            return Err(Error::DirectedEdgesPresent);
        }
        let n = self.vertex_count();
        let mut weight = vec![0usize; n];
        let mut visited = FixedBitSet::with_capacity(n);
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !visited.contains(v))
                .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .expect("unvisited vertex exists");
            visited.insert(next);
            order.push(next);
            for v in self.und[next].ones() {
                if !visited.contains(v) {
                    weight[v] += 1;
                }
            }
        }
        Ok(order)
    }

    /// Is `order` a perfect elimination ordering: for every vertex, do its
    /// neighbors that appear earlier in the order form a clique?
    pub fn is_perfect_elimination_ordering(&self, order: &[usize]) -> bool {
        let n = self.vertex_count();
        let mut earlier = FixedBitSet::with_capacity(n);
        for &v in order {
            let mut nb = self.und[v].clone();
            nb.intersect_with(&earlier);
            // nb is a clique iff every member covers the rest of it.
            for w in nb.ones() {
                let mut rest = nb.clone();
                rest.remove(w);
                if !rest.is_subset(&self.und[w]) {
                    return false;
                }
            }
            earlier.insert(v);
        }
        true
    }

    /// Chordality test via maximum cardinality search. Returns a witness
    /// perfect elimination ordering when the graph is chordal, `None`
    /// otherwise. Rejects graphs with directed adjacencies.
    pub fn is_chordal(&self) -> Result<Option<Vec<usize>>> {
        let order = self.maximum_cardinality_search()?;
        if self.is_perfect_elimination_ordering(&order) {
            Ok(Some(order))
        } else {
            Ok(None)
        }
    }

    /// Maximal cliques of a chordal undirected graph, enumerated from the
    /// candidate cliques a perfect elimination ordering induces. Each clique
    /// is sorted; the list is sorted lexicographically.
    pub fn maximal_cliques(&self) -> Result<Vec<Vec<usize>>> {
        let peo = self.is_chordal()?.ok_or(Error::NotChordal)?;
        let n = self.vertex_count();
        let mut earlier = FixedBitSet::with_capacity(n);
        let mut candidates: Vec<FixedBitSet> = Vec::with_capacity(n);
        for &v in &peo {
            let mut c = self.und[v].clone();
            c.intersect_with(&earlier);
            c.insert(v);
            candidates.push(c);
            earlier.insert(v);
        }
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        for (i, c) in candidates.iter().enumerate() {
            let dominated = candidates
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && c.is_subset(other));
            if !dominated {
                cliques.push(c.ones().collect());
            }
        }
        cliques.sort();
        Ok(cliques)
    }

    /// Size of the largest clique of a chordal undirected graph.
    pub fn clique_number(&self) -> Result<usize> {
        Ok(self
            .maximal_cliques()?
            .iter()
            .map(|c| c.len())
            .max()
            .unwrap_or(0))
    }
}

impl PartialEq for PartiallyDirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.children == other.children && self.und == other.und
    }
}

impl Eq for PartiallyDirectedGraph {}

impl fmt::Debug for PartiallyDirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PartiallyDirectedGraph(n={}, directed={:?}, undirected={:?})",
            self.vertex_count(),
            self.directed_edges(),
            self.undirected_edges()
        )
    }
}

/// A fully directed acyclic graph. Wraps [`PartiallyDirectedGraph`] with the
/// invariants checked at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Dag {
    g: PartiallyDirectedGraph,
}

impl Deref for Dag {
    type Target = PartiallyDirectedGraph;

    fn deref(&self) -> &Self::Target {
        &self.g
    }
}

impl fmt::Debug for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dag({:?})", self.g)
    }
}

impl Dag {
    /// Validates that `g` has no undirected edges and no directed cycle.
    pub fn try_new(g: PartiallyDirectedGraph) -> Result<Self> {
        if g.has_undirected_edges() {
            return Err(Error::DirectedEdgesPresent);
        }
        let dag = Dag { g };
        if dag.topological_order().is_none() {
            return Err(Error::DirectedCycle);
        }
        Ok(dag)
    }

    pub fn graph(&self) -> &PartiallyDirectedGraph {
        &self.g
    }

    pub fn into_graph(self) -> PartiallyDirectedGraph {
        self.g
    }

    /// Topological order picking the smallest available id first, or `None`
    /// if a directed cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.g.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.g.parents(v).count_ones(..)).collect();
        let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
            .filter(|&v| indeg[v] == 0)
            .map(std::cmp::Reverse)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(std::cmp::Reverse(u)) = ready.pop() {
            order.push(u);
            for v in self.g.children(u).ones() {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(std::cmp::Reverse(v));
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// The DAG with every directed edge into a vertex of `targets` deleted.
    pub fn without_incoming(&self, targets: &[usize]) -> Dag {
        let mut g = self.g.clone();
        for &t in targets {
            let sources: Vec<usize> = g.parents(t).ones().collect();
            for s in sources {
                g.remove_directed(s, t).expect("edge exists");
            }
        }
        Dag { g }
    }

    /// Induced sub-DAG; see [`PartiallyDirectedGraph::induced`].
    pub fn induced_dag(&self, vertices: &[usize]) -> Result<(Dag, Vec<usize>)> {
        let (sub, map) = self.g.induced(vertices)?;
        Ok((Dag { g: sub }, map))
    }

    /// For each maximal clique `C` of the skeleton of a v-structure-free DAG,
    /// the unique vertex `s` with `C = pa(s) ∪ {s}`; equivalently the unique
    /// out-degree-0 vertex of the induced sub-DAG on `C`. Returned aligned
    /// with [`PartiallyDirectedGraph::maximal_cliques`] of the skeleton.
    pub fn sink_nodes(&self) -> Result<Vec<(Vec<usize>, usize)>> {
        if !self.g.v_structures().is_empty() {
            return Err(Error::HasVStructures);
        }
        let skel = self.g.skeleton();
        let cliques = skel.maximal_cliques()?;
        let n = self.g.vertex_count();
        let mut out = Vec::with_capacity(cliques.len());
        let mut seen = FixedBitSet::with_capacity(n);
        for clique in cliques {
            let mut members = FixedBitSet::with_capacity(n);
            for &v in &clique {
                members.insert(v);
            }
            let mut sink = None;
            for &v in &clique {
                let mut outdeg = self.g.children(v).clone();
                outdeg.intersect_with(&members);
                if outdeg.count_ones(..) == 0 {
                    sink = Some(v);
                    break;
                }
            }
            let s = sink.ok_or_else(|| Error::Internal("clique without sink".into()))?;
            let mut closure = self.g.parents(s).clone();
            closure.insert(s);
            if closure != members {
                return Err(Error::Internal(
                    "maximal clique is not pa(s) ∪ {s} for its sink".into(),
                ));
            }
            if seen.contains(s) {
                return Err(Error::Internal("sink shared between maximal cliques".into()));
            }
            seen.insert(s);
            out.push((clique, s));
        }
        Ok(out)
    }

    /// The sink vertices of a v-structure-free DAG, sorted ascending.
    pub fn sink_vertices(&self) -> Result<Vec<usize>> {
        let mut sinks: Vec<usize> = self.sink_nodes()?.into_iter().map(|(_, s)| s).collect();
        sinks.sort_unstable();
        Ok(sinks)
    }
}

// ---------------------------------------------------------------------------
// Edge-list text format: one adjacency per line, `u -> v` directed,
// `u -- v` undirected, a bare token declares an isolated vertex, `#` begins a
// comment line. Vertex names are whitespace-free tokens; ids are assigned by
// first appearance.
// ---------------------------------------------------------------------------

enum EdgeLine {
    Directed(usize, usize),
    Undirected(usize, usize),
}

impl PartiallyDirectedGraph {
    pub fn parse_edge_list(text: &str) -> Result<PartiallyDirectedGraph> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges: Vec<(usize, EdgeLine)> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut intern = |tok: &str| -> Result<usize> {
                validate_name(tok).map_err(|e| Error::Parse {
                    line: lineno + 1,
                    msg: e.to_string(),
                })?;
                Ok(*index.entry(tok.to_string()).or_insert_with(|| {
                    names.push(tok.to_string());
                    names.len() - 1
                }))
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [v] => {
                    intern(v)?;
                }
                [u, "->", v] => {
                    let (u, v) = (intern(u)?, intern(v)?);
                    edges.push((lineno + 1, EdgeLine::Directed(u, v)));
                }
                [u, "--", v] => {
                    let (u, v) = (intern(u)?, intern(v)?);
                    edges.push((lineno + 1, EdgeLine::Undirected(u, v)));
                }
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("expected `u -> v`, `u -- v`, or a bare vertex, got {line:?}"),
                    })
                }
            }
        }

        let mut g = PartiallyDirectedGraph::with_names(names)?;
        for (line, edge) in edges {
            let res = match edge {
                EdgeLine::Directed(u, v) => g.add_directed(u, v),
                EdgeLine::Undirected(u, v) => g.add_undirected(u, v),
            };
            res.map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }

    /// Serialize in the edge-list text format; inverse of
    /// [`Self::parse_edge_list`] up to vertex renumbering.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.directed_edges() {
            out.push_str(&format!("{} -> {}\n", self.names[u], self.names[v]));
        }
        for (u, v) in self.undirected_edges() {
            out.push_str(&format!("{} -- {}\n", self.names[u], self.names[v]));
        }
        for v in 0..self.vertex_count() {
            if self.neighbors(v).count_ones(..) == 0 {
                out.push_str(&format!("{}\n", self.names[v]));
            }
        }
        out
    }
}

impl Dag {
    /// Parse an edge list that must describe a DAG.
    pub fn parse_edge_list(text: &str) -> Result<Dag> {
        Dag::try_new(PartiallyDirectedGraph::parse_edge_list(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naive;

    /// The running example: a v-structure-free DAG whose skeleton has the
    /// three maximal cliques {a,b}, {b,c,e}, {c,d,f}.
    fn demo_dag() -> Dag {
        Dag::parse_edge_list(
            "a -> b\nb -> c\nb -> e\nc -> e\nc -> d\nc -> f\nd -> f\n",
        )
        .unwrap()
    }

    fn ids(g: &PartiallyDirectedGraph, names: &[&str]) -> Vec<usize> {
        names.iter().map(|n| g.vertex_by_name(n).unwrap()).collect()
    }

    #[test]
    fn skeleton_of_single_directed_edge() {
        let g = PartiallyDirectedGraph::parse_edge_list("a -> b\n").unwrap();
        let s = g.skeleton();
        assert_eq!(s.undirected_edges(), vec![(0, 1)]);
        assert!(!s.has_directed_edges());
    }

    #[test]
    fn skeleton_of_demo_dag_has_all_seven_pairs() {
        let d = demo_dag();
        let s = d.skeleton();
        assert_eq!(s.undirected_edge_count(), 7);
        for (u, v) in d.directed_edges() {
            assert!(s.has_undirected(u, v));
        }
    }

    #[test]
    fn skeleton_of_empty_graph_is_identity() {
        let g = PartiallyDirectedGraph::new(3);
        assert_eq!(g.skeleton(), g);
    }

    #[test]
    fn skeleton_is_idempotent() {
        let d = demo_dag();
        let s = d.skeleton();
        assert_eq!(s.skeleton(), s);
    }

    #[test]
    fn v_structure_detected() {
        let mut g = PartiallyDirectedGraph::new(3);
        g.add_directed(1, 0).unwrap();
        g.add_directed(2, 0).unwrap();
        assert_eq!(g.v_structures(), vec![(1, 0, 2)]);
    }

    #[test]
    fn demo_dag_has_no_v_structures() {
        assert!(demo_dag().v_structures().is_empty());
    }

    #[test]
    fn shielded_collider_is_not_a_v_structure() {
        let mut g = PartiallyDirectedGraph::new(3);
        g.add_directed(1, 0).unwrap();
        g.add_directed(2, 0).unwrap();
        g.add_directed(1, 2).unwrap();
        assert!(g.v_structures().is_empty());
    }

    #[test]
    fn four_cycle_is_not_chordal() {
        let mut g = PartiallyDirectedGraph::new(4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            g.add_undirected(u, v).unwrap();
        }
        assert_eq!(g.is_chordal().unwrap(), None);
        assert!(!naive::is_chordal_bruteforce(&g));
    }

    #[test]
    fn triangle_is_chordal() {
        let mut g = PartiallyDirectedGraph::new(3);
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            g.add_undirected(u, v).unwrap();
        }
        assert!(g.is_chordal().unwrap().is_some());
    }

    #[test]
    fn demo_skeleton_is_chordal_and_matches_cycle_check() {
        let s = demo_dag().skeleton();
        assert!(s.is_chordal().unwrap().is_some());
        assert!(naive::is_chordal_bruteforce(&s));
    }

    #[test]
    fn is_chordal_rejects_directed_input() {
        let mut g = PartiallyDirectedGraph::new(2);
        g.add_directed(0, 1).unwrap();
        assert_eq!(g.is_chordal(), Err(Error::DirectedEdgesPresent));
    }

    #[test]
    fn demo_skeleton_maximal_cliques() {
        let d = demo_dag();
        let s = d.skeleton();
        let mut expected = vec![
            ids(&s, &["a", "b"]),
            ids(&s, &["b", "c", "e"]),
            ids(&s, &["c", "d", "f"]),
        ];
        for c in &mut expected {
            c.sort_unstable();
        }
        expected.sort();
        assert_eq!(s.maximal_cliques().unwrap(), expected);
    }

    #[test]
    fn maximal_cliques_of_triangle_and_path() {
        let mut k3 = PartiallyDirectedGraph::new(3);
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            k3.add_undirected(u, v).unwrap();
        }
        assert_eq!(k3.maximal_cliques().unwrap(), vec![vec![0, 1, 2]]);

        let mut path = PartiallyDirectedGraph::new(3);
        path.add_undirected(0, 1).unwrap();
        path.add_undirected(1, 2).unwrap();
        assert_eq!(path.maximal_cliques().unwrap(), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn maximal_cliques_match_bruteforce_on_all_small_graphs() {
        // Exhaustive over every undirected graph on up to 7 vertices; the
        // production enumeration applies to the chordal ones.
        use rayon::prelude::*;
        for n in 0..=7usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            let chordal_count: u64 = (0u64..(1 << pairs.len()))
                .into_par_iter()
                .map(|mask| {
                    let mut g = PartiallyDirectedGraph::new(n);
                    for (i, &(u, v)) in pairs.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            g.add_undirected(u, v).unwrap();
                        }
                    }
                    if g.is_chordal().unwrap().is_some() {
                        assert_eq!(
                            g.maximal_cliques().unwrap(),
                            naive::maximal_cliques_bruteforce(&g),
                            "mismatch on {g:?}"
                        );
                        1
                    } else {
                        0
                    }
                })
                .sum();
            assert!(chordal_count > 0 || n == 0);
        }
    }

    #[test]
    fn chain_components_mixed() {
        let g = PartiallyDirectedGraph::parse_edge_list("a -> b\nb -- c\n").unwrap();
        let cc = g.chain_components();
        assert_eq!(cc.components, vec![vec![0], vec![1, 2]]);
        assert_eq!(cc.component_of, vec![0, 1, 1]);
    }

    #[test]
    fn chain_components_of_undirected_skeleton_is_one_block() {
        let s = demo_dag().skeleton();
        assert_eq!(s.chain_components().components.len(), 1);
    }

    #[test]
    fn chain_components_of_directed_dag_are_singletons() {
        let d = Dag::parse_edge_list("a -> b\nb -> c\nc -> d\n").unwrap();
        assert_eq!(d.chain_components().components.len(), 4);
    }

    #[test]
    fn semi_directed_triangle_is_not_a_chain_graph() {
        let g = PartiallyDirectedGraph::parse_edge_list("b -> c\nc -- e\ne -- b\n").unwrap();
        assert!(!g.is_chain_graph());
    }

    #[test]
    fn dags_and_undirected_graphs_are_chain_graphs() {
        assert!(demo_dag().is_chain_graph());
        assert!(demo_dag().skeleton().is_chain_graph());
    }

    #[test]
    fn directed_triangle_cycle_is_not_a_chain_graph() {
        let mut g = PartiallyDirectedGraph::new(3);
        g.add_directed(0, 1).unwrap();
        g.add_directed(1, 2).unwrap();
        g.add_directed(2, 0).unwrap();
        assert!(!g.is_chain_graph());
    }

    #[test]
    fn sink_nodes_of_demo_dag() {
        let d = demo_dag();
        let sinks = d.sink_nodes().unwrap();
        let by_clique: Vec<(Vec<&str>, &str)> = sinks
            .iter()
            .map(|(c, s)| (c.iter().map(|&v| d.name(v)).collect(), d.name(*s)))
            .collect();
        assert!(by_clique.contains(&(vec!["a", "b"], "b")));
        assert!(by_clique.contains(&(vec!["b", "c", "e"], "e")));
        assert!(by_clique.contains(&(vec!["c", "d", "f"], "f")));
        assert_eq!(d.sink_vertices().unwrap().len(), 3);
    }

    #[test]
    fn sink_nodes_of_directed_path() {
        let d = Dag::parse_edge_list("a -> b\nb -> c\n").unwrap();
        let sinks = d.sink_nodes().unwrap();
        assert_eq!(sinks, vec![(vec![0, 1], 1), (vec![1, 2], 2)]);
    }

    #[test]
    fn sink_nodes_of_single_vertex() {
        let d = Dag::try_new(PartiallyDirectedGraph::new(1)).unwrap();
        assert_eq!(d.sink_nodes().unwrap(), vec![(vec![0], 0)]);
    }

    #[test]
    fn sink_nodes_rejects_v_structures() {
        let d = Dag::parse_edge_list("a -> c\nb -> c\n").unwrap();
        assert_eq!(d.sink_nodes(), Err(Error::HasVStructures));
    }

    #[test]
    fn sink_nodes_injective_on_random_instances() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for _ in 0..100 {
            let d = crate::generators::er_dag_no_vstructures_with(7, 0.35, &mut rng).unwrap();
            let sinks = d.sink_nodes().unwrap();
            let mut vals: Vec<usize> = sinks.iter().map(|&(_, s)| s).collect();
            vals.sort_unstable();
            vals.dedup();
            assert_eq!(vals.len(), sinks.len());
        }
    }

    #[test]
    fn topological_orderings_of_v_structure_free_dags_are_peos() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..50 {
            let d = crate::generators::er_dag_no_vstructures_with(8, 0.3, &mut rng).unwrap();
            let skel = d.skeleton();
            assert!(skel.is_chordal().unwrap().is_some());
            let topo = d.topological_order().unwrap();
            assert!(skel.is_perfect_elimination_ordering(&topo));
        }
    }

    #[test]
    fn dag_construction_rejects_cycles_and_undirected_edges() {
        let mut g = PartiallyDirectedGraph::new(2);
        g.add_undirected(0, 1).unwrap();
        assert!(Dag::try_new(g).is_err());

        let mut g = PartiallyDirectedGraph::new(2);
        g.add_directed(0, 1).unwrap();
        assert_eq!(g.add_directed(1, 0), Err(Error::ConflictingAdjacency(1, 0)));
    }

    #[test]
    fn adjacency_exclusivity_and_self_loops() {
        let mut g = PartiallyDirectedGraph::new(3);
        assert_eq!(g.add_directed(1, 1), Err(Error::SelfAdjacency(1)));
        g.add_directed(0, 1).unwrap();
        assert_eq!(g.add_undirected(0, 1), Err(Error::ConflictingAdjacency(0, 1)));
    }

    #[test]
    fn edge_list_round_trip() {
        let d = demo_dag();
        let text = d.to_edge_list();
        let back = PartiallyDirectedGraph::parse_edge_list(&text).unwrap();
        assert_eq!(back, *d.graph());
    }

    #[test]
    fn edge_list_keeps_isolated_vertices() {
        let g = PartiallyDirectedGraph::new(3);
        let text = g.to_edge_list();
        let back = PartiallyDirectedGraph::parse_edge_list(&text).unwrap();
        assert_eq!(back.vertex_count(), 3);
    }

    #[test]
    fn edge_list_rejects_malformed_lines() {
        assert!(matches!(
            PartiallyDirectedGraph::parse_edge_list("a => b\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            PartiallyDirectedGraph::parse_edge_list("# fine\na -> b\na -> b\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn induced_subgraph_preserves_structure_and_names() {
        let d = demo_dag();
        let verts = ids(&d, &["b", "c", "e"]);
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        let (sub, map) = d.induced(&sorted).unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.directed_edge_count(), 3);
        for (new, &old) in map.iter().enumerate() {
            assert_eq!(sub.name(new), d.name(old));
        }
    }

    #[test]
    fn zero_vertex_graph_is_valid_everywhere() {
        let g = PartiallyDirectedGraph::new(0);
        assert!(g.maximal_cliques().unwrap().is_empty());
        assert!(g.chain_components().components.is_empty());
        assert!(g.is_chain_graph());
        let d = Dag::try_new(g).unwrap();
        assert!(d.sink_nodes().unwrap().is_empty());
    }
}
