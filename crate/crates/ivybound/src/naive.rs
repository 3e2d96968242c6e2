//! Deliberately simple reference implementations and exhaustive enumerators.
//!
//! Nothing here is fast; these exist so the production paths can be checked
//! against an independently written answer in tests. They stay out of every
//! hot path.

use rand::{Rng, RngExt};

use crate::graph::{Dag, PartiallyDirectedGraph};
use crate::InterventionSet;

/// Maximal cliques by Bron–Kerbosch over the undirected adjacency, without
/// pivoting. Exponential; intended for graphs of a dozen vertices at most.
pub fn maximal_cliques_bruteforce(g: &PartiallyDirectedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut cliques: Vec<Vec<usize>> = Vec::new();

    fn extend(
        g: &PartiallyDirectedGraph,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let mut p = p;
        let mut x = x;
        while let Some(v) = p.first().copied() {
            r.push(v);
            let p2 = p.iter().copied().filter(|&u| g.has_undirected(u, v)).collect();
            let x2 = x.iter().copied().filter(|&u| g.has_undirected(u, v)).collect();
            extend(g, r, p2, x2, out);
            r.pop();
            p.remove(0);
            x.push(v);
        }
    }

    extend(
        g,
        &mut Vec::new(),
        (0..n).collect(),
        Vec::new(),
        &mut cliques,
    );
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort();
    cliques
}

/// Chordality by exhaustive simple-cycle enumeration: every simple cycle of
/// length at least four must have a chord.
pub fn is_chordal_bruteforce(g: &PartiallyDirectedGraph) -> bool {
    let n = g.vertex_count();

    fn search(g: &PartiallyDirectedGraph, start: usize, path: &mut Vec<usize>) -> bool {
        let last = *path.last().unwrap();
        for next in g.und_neighbors(last).ones() {
            if next == start && path.len() >= 4 {
                // Found a simple cycle; look for a chord.
                let k = path.len();
                let mut chord = false;
                'pairs: for i in 0..k {
                    for j in (i + 1)..k {
                        let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                        if !consecutive && g.has_undirected(path[i], path[j]) {
                            chord = true;
                            break 'pairs;
                        }
                    }
                }
                if !chord {
                    return false;
                }
            }
            // Canonical start avoids re-finding cycles from other roots.
            if next > start && !path.contains(&next) {
                path.push(next);
                if !search(g, start, path) {
                    return false;
                }
                path.pop();
            }
        }
        true
    }

    for start in 0..n {
        if !search(g, start, &mut vec![start]) {
            return false;
        }
    }
    true
}

/// Every labeled DAG on `n` vertices: each unordered pair is absent or
/// directed either way, acyclic orientations kept. `3^(n choose 2)` work;
/// usable for `n <= 5`.
pub fn all_dags(n: usize) -> Vec<Dag> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0u8; pairs.len()];
    loop {
        let mut g = PartiallyDirectedGraph::new(n);
        for (&(u, v), &c) in pairs.iter().zip(&choice) {
            match c {
                0 => {}
                1 => g.add_directed(u, v).unwrap(),
                _ => g.add_directed(v, u).unwrap(),
            }
        }
        if let Ok(dag) = Dag::try_new(g) {
            out.push(dag);
        }
        // Odometer increment over base-3 digits.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < 3 {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Every intervention set whose non-empty members are subsets of `0..n` of
/// size at most `max_size`. `2^(#candidates)` sets.
pub fn all_intervention_sets(n: usize, max_size: usize) -> Vec<InterventionSet> {
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if members.len() <= max_size {
            candidates.push(members);
        }
    }
    let mut out = Vec::new();
    for pick in 0u64..(1 << candidates.len()) {
        let mut set = InterventionSet::observational();
        for (i, cand) in candidates.iter().enumerate() {
            if pick & (1 << i) != 0 {
                set.insert(cand.iter().copied());
            }
        }
        out.push(set);
    }
    out
}

/// A uniform random DAG: sample each unordered pair with probability `p` and
/// orient along a random permutation. May contain v-structures.
pub fn random_dag<R: Rng>(n: usize, p: f64, rng: &mut R) -> Dag {
    let mut order: Vec<usize> = (0..n).collect();
    use rand::seq::SliceRandom;
    order.shuffle(rng);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut g = PartiallyDirectedGraph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                if pos[u] < pos[v] {
                    g.add_directed(u, v).unwrap();
                } else {
                    g.add_directed(v, u).unwrap();
                }
            }
        }
    }
    Dag::try_new(g).expect("orientation along a permutation is acyclic")
}
