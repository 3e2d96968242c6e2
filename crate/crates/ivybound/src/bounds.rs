//! Lower bounds on the number of atomic interventions needed to fully orient
//! a DAG's equivalence class, and the comparison against the clique-number
//! bound used by earlier work.
//!
//! All arithmetic is exact integer arithmetic.

use crate::essential::{i_essential_graph, InterventionSet};
use crate::graph::{Dag, PartiallyDirectedGraph};
use crate::{Error, Result};

/// Per-chain-component clique statistics of the observational essential
/// graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBounds {
    /// Number of vertices in the component.
    pub size: usize,
    /// Number of maximal cliques of the component's skeleton.
    pub clique_count: usize,
    /// Largest clique size within the component.
    pub omega: usize,
}

/// Everything the lower bounds need about one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    /// Vertex count.
    pub n: usize,
    /// Total maximal cliques over all chain components, singletons included.
    pub r: usize,
    /// Same, excluding singleton components.
    pub r_star: usize,
    /// Largest clique size over all components.
    pub omega: usize,
    /// `Σ_S ceil((|S| - r(S)) / 2)` (the universal lower bound).
    pub our_bound: usize,
    /// `Σ_S floor(omega(S) / 2)` (the clique-number bound, summed per
    /// component).
    pub prior_bound: usize,
    pub per_component: Vec<ComponentBounds>,
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

impl BoundsReport {
    pub const CSV_HEADER: &'static str = "n,r,r_star,omega,our_bound,prior_bound";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.r, self.r_star, self.omega, self.our_bound, self.prior_bound
        )
    }

    pub fn parse_csv_row(line: &str) -> Result<BoundsReport> {
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected 6 fields, got {}", fields.len()),
            });
        }
        let num = |s: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad integer {s:?}"),
            })
        };
        Ok(BoundsReport {
            n: num(fields[0])?,
            r: num(fields[1])?,
            r_star: num(fields[2])?,
            omega: num(fields[3])?,
            our_bound: num(fields[4])?,
            prior_bound: num(fields[5])?,
            per_component: Vec::new(),
        })
    }
}

/// The universal lower bound: decompose the observational essential graph of
/// `d` into chain components and sum `ceil((|S| - r(S)) / 2)` where `r(S)`
/// counts the maximal cliques of the component's skeleton.
pub fn universal_lower_bound(d: &Dag) -> Result<BoundsReport> {
    let essential = i_essential_graph(d, &InterventionSet::observational())?;
    let h = essential.graph();
    let cc = h.chain_components();
    let mut per_component = Vec::with_capacity(cc.components.len());
    for comp in &cc.components {
        let (sub, _) = h.induced(comp)?;
        let cliques = sub.maximal_cliques().map_err(|e| match e {
            Error::NotChordal => Error::Internal("essential chain component not chordal".into()),
            other => other,
        })?;
        per_component.push(ComponentBounds {
            size: comp.len(),
            clique_count: cliques.len(),
            omega: cliques.iter().map(|c| c.len()).max().unwrap_or(0),
        });
    }
    let n = d.vertex_count();
    let r = per_component.iter().map(|c| c.clique_count).sum();
    let r_star = per_component
        .iter()
        .filter(|c| c.size > 1)
        .map(|c| c.clique_count)
        .sum();
    let omega = per_component.iter().map(|c| c.omega).max().unwrap_or(0);
    let our_bound = per_component
        .iter()
        .map(|c| ceil_div(c.size - c.clique_count, 2))
        .sum();
    let prior_bound = per_component.iter().map(|c| c.omega / 2).sum();
    Ok(BoundsReport {
        n,
        r,
        r_star,
        omega,
        our_bound,
        prior_bound,
        per_component,
    })
}

/// The clique-number lower bound `Σ_S floor(omega(S) / 2)`. Earlier work
/// states it for a single chordal component; summing per component is the
/// convention used throughout this crate.
pub fn prior_lower_bound(d: &Dag) -> Result<usize> {
    Ok(universal_lower_bound(d)?.prior_bound)
}

/// Lower bound on the number of interventions when each may target up to `k`
/// vertices: `ceil(ceil((n - r) / 2) / k)`.
pub fn multi_node_lower_bound(d: &Dag, k: usize) -> Result<usize> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let report = universal_lower_bound(d)?;
    Ok(ceil_div(ceil_div(report.n - report.r, 2), k))
}

/// Both sides of the clique-count inequality for a chordal undirected graph:
/// `(n - #maximal cliques, omega - 1)`. The first component is always at
/// least the second.
pub fn clique_count_gap(g: &PartiallyDirectedGraph) -> Result<(usize, usize)> {
    let cliques = g.maximal_cliques()?;
    let omega = cliques.iter().map(|c| c.len()).max().unwrap_or(0);
    Ok((
        g.vertex_count() - cliques.len(),
        omega.saturating_sub(1),
    ))
}
