//! Interventional essential graphs.
//!
//! `i_essential_graph` computes the partially directed graph representing all
//! DAGs that remain indistinguishable from a ground-truth DAG after a set of
//! interventions: it seeds the skeleton with the v-structure and
//! intervention-cut orientations and closes under the four orientation
//! propagation rules. Every result is validated against the exact
//! characterization (`check_i_essential`), which is the ground truth here;
//! closure incompleteness would surface as a hard error, never as a silently
//! wrong graph. `i_mec` / `i_mec_union` provide the independent brute-force
//! oracle by enumerating acyclic orientations of the skeleton.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::graph::{Dag, PartiallyDirectedGraph};
use crate::{Error, Result};

/// Default cap on the number of acyclic orientations the brute-force
/// equivalence-class oracles will examine.
pub const DEFAULT_ORIENTATION_BUDGET: u64 = 1_000_000;

/// A family of intervention target sets. The empty intervention (purely
/// observational data) is always a member; the reported size excludes it.
#[derive(Clone, PartialEq, Eq)]
pub struct InterventionSet {
    /// Sorted target vectors, including the empty one.
    members: BTreeSet<Vec<usize>>,
}

impl InterventionSet {
    /// Only the empty intervention.
    pub fn observational() -> Self {
        let mut members = BTreeSet::new();
        members.insert(Vec::new());
        Self { members }
    }

    /// Build from arbitrary target sets; targets are sorted and de-duplicated
    /// and the empty intervention is added.
    pub fn new<I, T>(interventions: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = usize>,
    {
        let mut set = Self::observational();
        for iv in interventions {
            set.insert(iv);
        }
        set
    }

    /// The atomic intervention set `{{v} : v ∈ targets}`.
    pub fn atomic<I: IntoIterator<Item = usize>>(targets: I) -> Self {
        Self::new(targets.into_iter().map(|v| vec![v]))
    }

    pub fn insert<T: IntoIterator<Item = usize>>(&mut self, targets: T) {
        let mut iv: Vec<usize> = targets.into_iter().collect();
        iv.sort_unstable();
        iv.dedup();
        self.members.insert(iv);
    }

    /// Number of interventions, not counting the empty one.
    pub fn size(&self) -> usize {
        self.members.len() - 1
    }

    /// All members including the empty intervention, in canonical order.
    pub fn members(&self) -> impl Iterator<Item = &[usize]> {
        self.members.iter().map(|m| m.as_slice())
    }

    pub fn non_empty_members(&self) -> impl Iterator<Item = &[usize]> {
        self.members().filter(|m| !m.is_empty())
    }

    /// Largest member size (0 for the purely observational set).
    pub fn max_member_size(&self) -> usize {
        self.members.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Does some member contain exactly one endpoint of `{u, v}`?
    pub fn cuts(&self, u: usize, v: usize) -> bool {
        self.members.iter().any(|m| {
            let cu = m.binary_search(&u).is_ok();
            let cv = m.binary_search(&v).is_ok();
            cu != cv
        })
    }

    /// Projection `{I ∩ S : I ∈ self}` onto a vertex set, empty member kept.
    pub fn project(&self, s: &[usize]) -> InterventionSet {
        let keep: BTreeSet<usize> = s.iter().copied().collect();
        let mut out = Self::observational();
        for m in &self.members {
            out.insert(m.iter().copied().filter(|v| keep.contains(v)));
        }
        out
    }

    /// Rewrite members through a vertex-id map (`map[old] = Some(new)`).
    /// Members are intersected with the map's domain.
    pub fn relabel(&self, map: &[Option<usize>]) -> InterventionSet {
        let mut out = Self::observational();
        for m in &self.members {
            out.insert(m.iter().filter_map(|&v| map[v]));
        }
        out
    }

    /// Parse the intervention-set text format: one intervention per line as
    /// comma-separated vertex names, `#` comment lines, the empty
    /// intervention implicit.
    pub fn parse(text: &str, g: &PartiallyDirectedGraph) -> Result<InterventionSet> {
        let mut set = Self::observational();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut targets = Vec::new();
            for tok in line.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: "empty vertex token".into(),
                    });
                }
                let v = g.vertex_by_name(tok).ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    msg: Error::UnknownName(tok.to_string()).to_string(),
                })?;
                targets.push(v);
            }
            set.insert(targets);
        }
        Ok(set)
    }

    /// Inverse of [`Self::parse`]; the empty intervention is not written.
    pub fn format(&self, g: &PartiallyDirectedGraph) -> String {
        let mut out = String::new();
        for m in self.non_empty_members() {
            let names: Vec<&str> = m.iter().map(|&v| g.name(v)).collect();
            out.push_str(&names.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for InterventionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InterventionSet{:?}", self.members)
    }
}

/// Which configuration certifies that a directed edge cannot be undirected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protection {
    /// Some intervention contains exactly one endpoint.
    Cut,
    /// `c -> a -> b` with `c`, `b` non-adjacent.
    Chain,
    /// `a -> b <- c` with `a`, `c` non-adjacent.
    Collider,
    /// `a -> c -> b` closing the triangle with `a -> b`.
    Triangle,
    /// `c1 -> b <- c2`, `a -- c1`, `a -- c2`, `c1`, `c2` non-adjacent.
    Kite,
}

impl Protection {
    pub fn token(&self) -> &'static str {
        match self {
            Protection::Cut => "cut",
            Protection::Chain => "chain",
            Protection::Collider => "collider",
            Protection::Triangle => "triangle",
            Protection::Kite => "kite",
        }
    }
}

/// First failed condition of the essential-graph characterization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SkeletonMismatch,
    DirectionMismatch { edge: (usize, usize) },
    VStructureUndirected { v_structure: (usize, usize, usize) },
    NotChainGraph,
    ComponentNotChordal { component: Vec<usize> },
    DirectedIntoUndirected { a: usize, b: usize, c: usize },
    CutEdgeUndirected { edge: (usize, usize) },
    NotStronglyProtected { edge: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SkeletonMismatch => write!(f, "skeleton differs from the DAG's"),
            Violation::DirectionMismatch { edge } => {
                write!(f, "edge {} -> {} disagrees with the DAG", edge.0, edge.1)
            }
            Violation::VStructureUndirected { v_structure } => write!(
                f,
                "v-structure {} -> {} <- {} not directed",
                v_structure.0, v_structure.1, v_structure.2
            ),
            Violation::NotChainGraph => write!(f, "not a chain graph"),
            Violation::ComponentNotChordal { component } => {
                write!(f, "chain component {component:?} is not chordal")
            }
            Violation::DirectedIntoUndirected { a, b, c } => {
                write!(f, "induced subgraph {a} -> {b} -- {c}")
            }
            Violation::CutEdgeUndirected { edge } => {
                write!(f, "intervention-cut edge {} -- {} undirected", edge.0, edge.1)
            }
            Violation::NotStronglyProtected { edge } => {
                write!(f, "edge {} -> {} is not strongly protected", edge.0, edge.1)
            }
        }
    }
}

/// An interventional essential graph together with its provenance. The
/// wrapped graph satisfies every condition of the characterization; the
/// validator runs at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialGraph {
    graph: PartiallyDirectedGraph,
    source: Dag,
    interventions: InterventionSet,
}

impl EssentialGraph {
    pub fn graph(&self) -> &PartiallyDirectedGraph {
        &self.graph
    }

    pub fn source(&self) -> &Dag {
        &self.source
    }

    pub fn interventions(&self) -> &InterventionSet {
        &self.interventions
    }

    pub fn is_fully_directed(&self) -> bool {
        !self.graph.has_undirected_edges()
    }
}

/// Is the directed edge `a -> b` of `h` strongly protected under `iv`?
/// Returns the certifying configuration, or `None`.
pub fn is_strongly_protected(
    h: &PartiallyDirectedGraph,
    a: usize,
    b: usize,
    iv: &InterventionSet,
) -> Result<Option<Protection>> {
    if !h.has_directed(a, b) {
        return Err(Error::EdgeNotDirected(a, b));
    }
    if iv.cuts(a, b) {
        return Ok(Some(Protection::Cut));
    }
    // c -> a -> b with c, b non-adjacent.
    if h.parents(a).ones().any(|c| !h.adjacent(c, b)) {
        return Ok(Some(Protection::Chain));
    }
    // a -> b <- c with a, c non-adjacent.
    if h.parents(b).ones().any(|c| c != a && !h.adjacent(a, c)) {
        return Ok(Some(Protection::Collider));
    }
    // a -> c -> b alongside a -> b.
    {
        let mut through = h.children(a).clone();
        through.intersect_with(h.parents(b));
        if through.count_ones(..) > 0 {
            return Ok(Some(Protection::Triangle));
        }
    }
    // c1 -> b <- c2 with a -- c1, a -- c2 and c1, c2 non-adjacent.
    {
        let mut cands = h.und_neighbors(a).clone();
        cands.intersect_with(h.parents(b));
        let cands: Vec<usize> = cands.ones().collect();
        for (i, &c1) in cands.iter().enumerate() {
            for &c2 in &cands[i + 1..] {
                if !h.adjacent(c1, c2) {
                    return Ok(Some(Protection::Kite));
                }
            }
        }
    }
    Ok(None)
}

/// Exact membership test for interventional essential graphs: `h` passes iff
/// it has the skeleton of `d`, agrees with `d` on directed edges, directs all
/// v-structures of `d`, and satisfies the four characterization conditions.
/// By uniqueness this holds iff `h` equals the essential graph of `(d, iv)`.
pub fn check_i_essential(
    h: &PartiallyDirectedGraph,
    d: &Dag,
    iv: &InterventionSet,
) -> std::result::Result<(), Violation> {
    if h.skeleton() != d.skeleton() {
        return Err(Violation::SkeletonMismatch);
    }
    for (u, v) in h.directed_edges() {
        if !d.has_directed(u, v) {
            return Err(Violation::DirectionMismatch { edge: (u, v) });
        }
    }
    for (b, a, c) in d.v_structures() {
        if !(h.has_directed(b, a) && h.has_directed(c, a)) {
            return Err(Violation::VStructureUndirected {
                v_structure: (b, a, c),
            });
        }
    }
    // Condition 1: chain graph with chordal chain components.
    if !h.is_chain_graph() {
        return Err(Violation::NotChainGraph);
    }
    for comp in &h.chain_components().components {
        let (sub, _) = h
            .induced(comp)
            .expect("chain component is a valid vertex set");
        // Inside a chain component of a chain graph every edge is undirected.
        if sub.is_chordal().expect("component is undirected").is_none() {
            return Err(Violation::ComponentNotChordal {
                component: comp.clone(),
            });
        }
    }
    // Condition 2: no induced a -> b -- c.
    for (a, b) in h.directed_edges() {
        for c in h.und_neighbors(b).ones() {
            if c != a && !h.adjacent(a, c) {
                return Err(Violation::DirectedIntoUndirected { a, b, c });
            }
        }
    }
    // Condition 3: intervention-cut edges are directed.
    for (u, v) in h.undirected_edges() {
        if iv.cuts(u, v) {
            return Err(Violation::CutEdgeUndirected { edge: (u, v) });
        }
    }
    // Condition 4: every directed edge strongly protected.
    for (a, b) in h.directed_edges() {
        let protected = is_strongly_protected(h, a, b, iv).expect("edge is directed");
        if protected.is_none() {
            return Err(Violation::NotStronglyProtected { edge: (a, b) });
        }
    }
    Ok(())
}

/// One orientation-propagation step: returns the directed orientation of one
/// currently undirected edge, scanning edges in canonical order, or `None` at
/// the fixpoint.
fn propagation_step(h: &PartiallyDirectedGraph) -> Option<(usize, usize)> {
    for (u, v) in h.undirected_edges() {
        for (x, y) in [(u, v), (v, u)] {
            // R1: w -> x, x -- y, w and y non-adjacent  =>  x -> y.
            if h.parents(x).ones().any(|w| !h.adjacent(w, y)) {
                return Some((x, y));
            }
            // R2: x -> w -> y with x -- y  =>  x -> y.
            let mut through = h.children(x).clone();
            through.intersect_with(h.parents(y));
            if through.count_ones(..) > 0 {
                return Some((x, y));
            }
            // R3: x -- c1, x -- c2, c1 -> y, c2 -> y, c1 and c2 non-adjacent.
            let mut cands = h.und_neighbors(x).clone();
            cands.intersect_with(h.parents(y));
            let cands: Vec<usize> = cands.ones().collect();
            let mut hit = false;
            'r3: for (i, &c1) in cands.iter().enumerate() {
                for &c2 in &cands[i + 1..] {
                    if !h.adjacent(c1, c2) {
                        hit = true;
                        break 'r3;
                    }
                }
            }
            if hit {
                return Some((x, y));
            }
            // R4: x -- d, d -> c, c -> y, d and y non-adjacent, x and c
            // adjacent  =>  x -> y.
            for c in h.parents(y).ones() {
                if c == x || !h.adjacent(x, c) {
                    continue;
                }
                let mut ds = h.und_neighbors(x).clone();
                ds.intersect_with(h.parents(c));
                if ds.ones().any(|dv| !h.adjacent(dv, y)) {
                    return Some((x, y));
                }
            }
        }
    }
    None
}

/// Compute the interventional essential graph of `d` under `iv`.
///
/// Seeds the skeleton with the v-structure orientations and every
/// intervention-cut edge, closes under the propagation rules, then runs the
/// exact characterization check. A validation failure is a hard error: it
/// would mean the rule closure is incomplete, and no graph is returned.
pub fn i_essential_graph(d: &Dag, iv: &InterventionSet) -> Result<EssentialGraph> {
    let mut h = d.skeleton();
    for (b, a, c) in d.v_structures() {
        if h.has_undirected(b, a) {
            h.orient(b, a)?;
        }
        if h.has_undirected(c, a) {
            h.orient(c, a)?;
        }
    }
    for (u, v) in d.directed_edges() {
        if h.has_undirected(u, v) && iv.cuts(u, v) {
            h.orient(u, v)?;
        }
    }
    while let Some((x, y)) = propagation_step(&h) {
        h.orient(x, y)?;
    }
    if let Err(violation) = check_i_essential(&h, d, iv) {
        return Err(Error::Internal(format!(
            "essential-graph closure failed validation: {violation}"
        )));
    }
    Ok(EssentialGraph {
        graph: h,
        source: d.clone(),
        interventions: iv.clone(),
    })
}

/// Does `iv` fully orient the equivalence class of `d`?
pub fn fully_orients(d: &Dag, iv: &InterventionSet) -> Result<bool> {
    Ok(i_essential_graph(d, iv)?.is_fully_directed())
}

/// Skeleton edges and v-structures of a pruned graph; the equivalence test
/// compares these.
type PrunedFingerprint = (Vec<(usize, usize)>, Vec<(usize, usize, usize)>);

/// Fingerprint after deleting all edges into `targets`.
fn pruned_fingerprint(d: &Dag, targets: &[usize]) -> PrunedFingerprint {
    let pruned = d.without_incoming(targets);
    let mut skel: Vec<(usize, usize)> = pruned
        .directed_edges()
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    skel.sort_unstable();
    (skel, pruned.v_structures())
}

/// Brute-force interventional Markov equivalence class of `d`: all DAGs on
/// the skeleton of `d` whose pruned graphs match `d`'s for every member of
/// `iv`. Enumerates acyclic orientations of the skeleton; aborts with
/// [`Error::BudgetExceeded`] once more than `budget` acyclic orientations
/// have been examined.
pub fn i_mec_with_budget(d: &Dag, iv: &InterventionSet, budget: u64) -> Result<Vec<Dag>> {
    let skel_edges: Vec<(usize, usize)> = d
        .directed_edges()
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    let references: Vec<_> = iv.members().map(|m| pruned_fingerprint(d, m)).collect();
    let member_list: Vec<Vec<usize>> = iv.members().map(|m| m.to_vec()).collect();

    let mut work = PartiallyDirectedGraph::with_names(d.names().to_vec())?;
    let mut out = Vec::new();
    let mut examined: u64 = 0;

    fn reaches(g: &PartiallyDirectedGraph, from: usize, to: usize) -> bool {
        let mut seen = FixedBitSet::with_capacity(g.vertex_count());
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            if u == to {
                return true;
            }
            if seen.put(u) {
                continue;
            }
            stack.extend(g.children(u).ones());
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        edges: &[(usize, usize)],
        idx: usize,
        work: &mut PartiallyDirectedGraph,
        examined: &mut u64,
        budget: u64,
        member_list: &[Vec<usize>],
        references: &[PrunedFingerprint],
        out: &mut Vec<Dag>,
    ) -> Result<()> {
        if idx == edges.len() {
            *examined += 1;
            if *examined > budget {
                return Err(Error::BudgetExceeded);
            }
            let candidate = Dag::try_new(work.clone()).expect("orientation kept acyclic");
            let equivalent = member_list
                .iter()
                .zip(references)
                .all(|(m, reference)| &pruned_fingerprint(&candidate, m) == reference);
            if equivalent {
                out.push(candidate);
            }
            return Ok(());
        }
        let (u, v) = edges[idx];
        for (a, b) in [(u, v), (v, u)] {
            // Orienting a -> b closes a cycle iff b already reaches a.
            if !reaches(work, b, a) {
                work.add_directed(a, b)?;
                assign(edges, idx + 1, work, examined, budget, member_list, references, out)?;
                work.remove_directed(a, b)?;
            }
        }
        Ok(())
    }

    assign(
        &skel_edges,
        0,
        &mut work,
        &mut examined,
        budget,
        &member_list,
        &references,
        &mut out,
    )?;
    out.sort_by_key(|dag| dag.directed_edges());
    Ok(out)
}

/// [`i_mec_with_budget`] at the default budget.
pub fn i_mec(d: &Dag, iv: &InterventionSet) -> Result<Vec<Dag>> {
    i_mec_with_budget(d, iv, DEFAULT_ORIENTATION_BUDGET)
}

/// Union oracle: edge directed `u -> v` iff every member of the equivalence
/// class orients it that way, undirected otherwise. This is the ground truth
/// that `i_essential_graph` is checked against.
pub fn i_mec_union_with_budget(
    d: &Dag,
    iv: &InterventionSet,
    budget: u64,
) -> Result<PartiallyDirectedGraph> {
    let class = i_mec_with_budget(d, iv, budget)?;
    let mut union = PartiallyDirectedGraph::with_names(d.names().to_vec())?;
    for (u, v) in d.directed_edges() {
        if class.iter().all(|m| m.has_directed(u, v)) {
            union.add_directed(u, v)?;
        } else {
            union.add_undirected(u, v)?;
        }
    }
    Ok(union)
}

/// [`i_mec_union_with_budget`] at the default budget.
pub fn i_mec_union(d: &Dag, iv: &InterventionSet) -> Result<PartiallyDirectedGraph> {
    i_mec_union_with_budget(d, iv, DEFAULT_ORIENTATION_BUDGET)
}
