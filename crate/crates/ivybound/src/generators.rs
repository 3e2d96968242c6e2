//! Synthetic instance generators: the two experiment families, two block-graph
//! constructions separating the lower bounds, and the equality families
//! (k-trees, split graphs).
//!
//! All randomized generators draw from a ChaCha12 stream seeded with a 64-bit
//! seed, so identical (parameters, seed) pairs produce bit-identical graphs
//! across runs and platforms. The generator algorithm is pinned by the
//! `rand_chacha` version in the lockfile.

use num_bigint::BigInt;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::graph::{Dag, PartiallyDirectedGraph};
use crate::{Error, Result};

/// The pinned deterministic generator behind every seeded operation.
pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// An independent stream over the same seed; used to give each graph of an
/// experiment its own schedule-independent generator.
pub fn rng_stream(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn check_probability(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "{what} must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Erdős–Rényi skeleton turned into a v-structure-free DAG: sample `G(n, p)`,
/// orient along a random permutation, then scan vertices in reverse
/// permutation order joining every non-adjacent parent pair with an edge
/// oriented by the permutation. The reverse scan guarantees no v-structure
/// survives.
pub fn er_dag_no_vstructures_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Dag> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    check_probability(p, "edge probability")?;
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
                    g.add_directed(u, v)?;
                } else {
                    g.add_directed(v, u)?;
                }
            }
        }
    }
    for &u in order.iter().rev() {
        let parents: Vec<usize> = g.parents(u).ones().collect();
        for (i, &a) in parents.iter().enumerate() {
            for &b in &parents[i + 1..] {
                if !g.adjacent(a, b) {
                    if pos[a] < pos[b] {
                        g.add_directed(a, b)?;
                    } else {
                        g.add_directed(b, a)?;
                    }
                }
            }
        }
    }
    Dag::try_new(g)
}

/// Seeded wrapper over [`er_dag_no_vstructures_with`].
pub fn er_dag_no_vstructures(n: usize, p: f64, seed: u64) -> Result<Dag> {
    er_dag_no_vstructures_with(n, p, &mut rng_from_seed(seed))
}

/// Random v-structure-free DAG with clique sizes steered into
/// `[min_clique_size, max_clique_size]` (parent-pair closure can overshoot
/// the upper end). Vertices `0..n` with the identity ordering as the perfect
/// elimination ordering; each vertex, scanned in reverse, draws a uniform
/// number of extra parents compatible with the size window and then has its
/// parent set completed into a clique.
pub fn bounded_clique_dag_with<R: Rng>(
    n: usize,
    min_clique_size: usize,
    max_clique_size: usize,
    rng: &mut R,
) -> Result<Dag> {
    if !(2 <= min_clique_size && min_clique_size <= max_clique_size && max_clique_size <= n) {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= min ({min_clique_size}) <= max ({max_clique_size}) <= n ({n})"
        )));
    }
    let mut g = PartiallyDirectedGraph::new(n);
    for u in (0..n).rev() {
        let current = g.parents(u).count_ones(..);
        let available: Vec<usize> = (0..u).filter(|&v| !g.has_directed(v, u)).collect();
        let upper = (max_clique_size - 1)
            .saturating_sub(current)
            .min(available.len());
        let lower = (min_clique_size - 1).saturating_sub(current).min(upper);
        let extra = rng.random_range(lower..=upper);
        let mut chosen: Vec<usize> = rand::seq::index::sample(rng, available.len(), extra)
            .into_iter()
            .map(|i| available[i])
            .collect();
        chosen.sort_unstable();
        for z in chosen {
            g.add_directed(z, u)?;
        }
        // Close the parent set now so vertices processed later see these
        // edges; the identity ordering plays the role of the permutation.
        let parents: Vec<usize> = g.parents(u).ones().collect();
        for (i, &a) in parents.iter().enumerate() {
            for &b in &parents[i + 1..] {
                if !g.adjacent(a, b) {
                    g.add_directed(a.min(b), a.max(b))?;
                }
            }
        }
    }
    Dag::try_new(g)
}

/// Seeded wrapper over [`bounded_clique_dag_with`].
pub fn bounded_clique_dag(
    n: usize,
    min_clique_size: usize,
    max_clique_size: usize,
    seed: u64,
) -> Result<Dag> {
    bounded_clique_dag_with(n, min_clique_size, max_clique_size, &mut rng_from_seed(seed))
}

fn complete_on(g: &mut PartiallyDirectedGraph, members: &[usize]) -> Result<()> {
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if !g.adjacent(u, v) {
                g.add_undirected(u, v)?;
            }
        }
    }
    Ok(())
}

/// Block graph on a line: vertices `0..2k` form a path, and for each `p < k`
/// a clique of size `omega` is grown over the path pair `(2p, 2p+1)` with
/// `omega - 2` fresh vertices. `n = k·omega` with `2k - 1` maximal cliques.
pub fn construction1(k: usize, omega: usize) -> Result<PartiallyDirectedGraph> {
    if k < 1 || omega < 2 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 and omega >= 2, got k={k}, omega={omega}"
        )));
    }
    let n = k * omega;
    let mut g = PartiallyDirectedGraph::new(n);
    for i in 0..(2 * k - 1) {
        g.add_undirected(i, i + 1)?;
    }
    let mut fresh = 2 * k;
    for p in 0..k {
        let mut clique = vec![2 * p, 2 * p + 1];
        for _ in 0..(omega - 2) {
            clique.push(fresh);
            fresh += 1;
        }
        complete_on(&mut g, &clique)?;
    }
    Ok(g)
}

/// Windmill of cliques: `k` cliques of size `omega` all sharing one hub
/// vertex, so every pair of cliques intersects at exactly that node.
/// `n = k(omega - 1) + 1` with `k` maximal cliques.
pub fn construction2(k: usize, omega: usize) -> Result<PartiallyDirectedGraph> {
    if k < 1 || omega < 2 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 and omega >= 2, got k={k}, omega={omega}"
        )));
    }
    let n = k * (omega - 1) + 1;
    let mut g = PartiallyDirectedGraph::new(n);
    let mut fresh = 1;
    for _ in 0..k {
        let mut clique = vec![0];
        for _ in 0..(omega - 1) {
            clique.push(fresh);
            fresh += 1;
        }
        complete_on(&mut g, &clique)?;
    }
    Ok(g)
}

/// Random k-tree: start from the complete graph on `k + 1` vertices and
/// attach each further vertex to a uniformly chosen existing k-clique.
pub fn k_tree(k: usize, n: usize, seed: u64) -> Result<PartiallyDirectedGraph> {
    if k < 1 || n < k + 1 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 and n >= k + 1, got k={k}, n={n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut g = PartiallyDirectedGraph::new(n);
    let base: Vec<usize> = (0..=k).collect();
    complete_on(&mut g, &base)?;
    let mut k_cliques: Vec<Vec<usize>> = (0..=k)
        .map(|skip| {
            let mut c = base.clone();
            c.remove(skip);
            c
        })
        .collect();
    for v in (k + 1)..n {
        let host = k_cliques[rng.random_range(0..k_cliques.len())].clone();
        for &u in &host {
            g.add_undirected(u, v)?;
        }
        for i in 0..host.len() {
            let mut c = host.clone();
            c[i] = v;
            c.sort_unstable();
            k_cliques.push(c);
        }
    }
    Ok(g)
}

/// Random split graph: a clique plus an independent set, each independent
/// vertex attached to a nonempty random subset of the clique (every clique
/// member kept with probability `attach_prob`; an empty draw falls back to a
/// single uniform member).
pub fn split_graph(
    clique_size: usize,
    independent_size: usize,
    attach_prob: f64,
    seed: u64,
) -> Result<PartiallyDirectedGraph> {
    check_probability(attach_prob, "attach probability")?;
    let mut rng = rng_from_seed(seed);
    let n = clique_size + independent_size;
    let mut g = PartiallyDirectedGraph::new(n);
    let clique: Vec<usize> = (0..clique_size).collect();
    complete_on(&mut g, &clique)?;
    for z in clique_size..n {
        let mut attached = false;
        for &c in &clique {
            if rng.random_bool(attach_prob) {
                g.add_undirected(c, z)?;
                attached = true;
            }
        }
        if !attached && clique_size > 0 {
            g.add_undirected(rng.random_range(0..clique_size), z)?;
        }
    }
    Ok(g)
}

/// Orient an undirected chordal graph into a v-structure-free DAG along a
/// perfect elimination ordering that starts inside a largest clique.
pub fn orient_by_peo_from_largest_clique(g: &PartiallyDirectedGraph) -> Result<Dag> {
    if g.has_directed_edges() {
        return Err(Error::DirectedEdgesPresent);
    }
    let cliques = g.maximal_cliques()?;
    let largest = cliques
        .iter()
        .max_by_key(|c| c.len())
        .cloned()
        .unwrap_or_default();
    let n = g.vertex_count();
    // Maximum cardinality search with the clique visited first: the prefix is
    // pinned and the whole order stays a perfect elimination ordering.
    let mut visited = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let visit = |v: usize,
                     visited: &mut Vec<bool>,
                     weight: &mut Vec<usize>,
                     order: &mut Vec<usize>| {
        visited[v] = true;
        order.push(v);
        for u in g.und_neighbors(v).ones() {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    };
    for &v in &largest {
        visit(v, &mut visited, &mut weight, &mut order);
    }
    for _ in largest.len()..n {
        let next = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex exists");
        visit(next, &mut visited, &mut weight, &mut order);
    }
    if !g.is_perfect_elimination_ordering(&order) {
        return Err(Error::NotChordal);
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut oriented = PartiallyDirectedGraph::with_names(g.names().to_vec())?;
    for (u, v) in g.undirected_edges() {
        if pos[u] < pos[v] {
            oriented.add_directed(u, v)?;
        } else {
            oriented.add_directed(v, u)?;
        }
    }
    Dag::try_new(oriented)
}

/// Seeds drawn from the decimal expansion of π (digits after the decimal
/// point), skipping the first 1015 digits and reading consecutive 10-digit
/// groups. A convenience for reproducible seed schedules, not
/// required by any generator.
pub fn pi_seeds(count: usize) -> Vec<u64> {
    const SKIP: usize = 1015;
    const GROUP: usize = 10;
    let digits = pi_fractional_digits(SKIP + GROUP * count);
    (0..count)
        .map(|i| {
            digits[SKIP + GROUP * i..SKIP + GROUP * (i + 1)]
                .iter()
                .fold(0u64, |acc, &d| acc * 10 + u64::from(d))
        })
        .collect()
}

/// First `count` decimal digits of π after the decimal point, via Machin's
/// formula in fixed-point big-integer arithmetic.
pub fn pi_fractional_digits(count: usize) -> Vec<u8> {
    let guard = 12;
    let prec = count + guard;

    fn atan_inv(x: u64, prec: usize) -> BigInt {
        let scale = BigInt::from(10u8).pow(prec as u32);
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut power = scale / &x;
        let mut sum = power.clone();
        let mut k: u64 = 0;
        loop {
            power = &power / &x2;
            k += 1;
            if power == BigInt::from(0u8) {
                break;
            }
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
        }
        sum
    }

    let pi = BigInt::from(16u8) * atan_inv(5, prec) - BigInt::from(4u8) * atan_inv(239, prec);
    let text = pi.to_string();
    // text is "3" followed by the fractional digits at this precision.
    text[1..=count].bytes().map(|b| b - b'0').collect()
}
