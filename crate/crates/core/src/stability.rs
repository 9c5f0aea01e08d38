//! Iterated preimages over finite fields: their Galois (Frobenius) orbits,
//! an eventual-stability probe, and a bounded search for coherent backward
//! orbits meeting a subvariety.

use std::cmp::{Ordering, Reverse};

use crate::dynamics::{context_of_degree, Budget, PointIndexer, ResidueMap, ResiduePoint, ResidueVariety};
use crate::error::{Error, Result};
use crate::padic::{PAdicContext, ResidueElement};

/// The functional graph of a residue map over one extension F_{q^m}.
struct FieldGraph {
    extension: usize,
    ctx: PAdicContext,
    indexer: PointIndexer,
    map: ResidueMap,
    next: Vec<u64>,
    preimages: Vec<Vec<u64>>,
}

impl FieldGraph {
    fn build(map: &ResidueMap, extension: usize, budget: Budget) -> Result<Self> {
        let base = map.context();
        let ctx = context_of_degree(base, base.degree() * extension)?;
        let indexer = PointIndexer::new(&ctx, map.dimension(), budget)?;
        let map = map.base_change(&ctx)?;
        let next = indexer.successor_table(&map);
        let mut preimages = vec![Vec::new(); indexer.size() as usize];
        for (i, &j) in next.iter().enumerate() {
            preimages[j as usize].push(i as u64);
        }
        Ok(Self { extension, ctx, indexer, map, next, preimages })
    }

    fn embed_point(&self, x: &[ResidueElement]) -> Result<u64> {
        let base = x.first().map(|c| c.context().clone()).ok_or(Error::Invalid("empty point".into()))?;
        let emb = base.embedding_into(&self.ctx)?;
        let coords = x.iter().map(|c| emb.apply_residue(c)).collect::<Result<Vec<_>>>()?;
        Ok(self.indexer.index(&coords))
    }

    /// Indices of F^(-n)(x), sorted.
    fn level(&self, x: u64, n: usize) -> Vec<u64> {
        let mut current = vec![x];
        for _ in 0..n {
            let mut next_level: Vec<u64> =
                current.iter().flat_map(|&y| self.preimages[y as usize].iter().copied()).collect();
            next_level.sort_unstable();
            next_level.dedup();
            current = next_level;
        }
        current
    }
}

fn check_base_point(map: &ResidueMap, x: &[ResidueElement]) -> Result<()> {
    if x.len() != map.dimension() {
        return Err(Error::DimensionMismatch { expected: map.dimension(), actual: x.len() });
    }
    x.iter().try_for_each(|c| map.context().check_same(c.context()))
}

fn graphs(map: &ResidueMap, degree_bound: usize, budget: Budget) -> Result<Vec<FieldGraph>> {
    if degree_bound == 0 {
        return Err(Error::Invalid("degree bound must be at least 1".into()));
    }
    (1..=degree_bound).map(|m| FieldGraph::build(map, m, budget)).collect()
}

/// F^(-n)(x) over the smallest tested extension holding the most solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct PreimageSet {
    pub base_point: ResiduePoint,
    pub depth: usize,
    /// degree k of the field x and the map are defined over
    pub base_degree: usize,
    /// m, with the points living in F_{p^(k m)}
    pub extension: usize,
    pub points: Vec<ResiduePoint>,
    /// whether the count is known to capture all preimages
    pub complete: bool,
    /// (m, |F^(-n)(x)(F_{p^(k m)})|) for every tested m
    pub counts: Vec<(usize, usize)>,
}

fn preimage_set_in(map: &ResidueMap, x: &[ResidueElement], n: usize, graphs: &[FieldGraph]) -> Result<PreimageSet> {
    let mut levels = Vec::with_capacity(graphs.len());
    for g in graphs {
        levels.push(g.level(g.embed_point(x)?, n));
    }
    let counts: Vec<(usize, usize)> = graphs.iter().zip(&levels).map(|(g, l)| (g.extension, l.len())).collect();
    let best = counts.iter().map(|c| c.1).max().unwrap_or(0);
    let pos = counts.iter().position(|c| c.1 == best).unwrap();
    let m = counts[pos].0;
    let bezout = map
        .degrees()
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul((d as u64).checked_pow(n as u32)?))
        .unwrap_or(u64::MAX);
    // nested fields F_{q^m} in F_{q^2m} with the same count: nothing new appeared
    let stabilized = counts.iter().any(|&(m2, c)| m2 == 2 * m && c == best);
    let complete = n == 0 || best as u64 == bezout || stabilized;
    let g = &graphs[pos];
    Ok(PreimageSet {
        base_point: x.to_vec(),
        depth: n,
        base_degree: map.context().degree(),
        extension: m,
        points: levels[pos].iter().map(|&i| g.indexer.point(i)).collect(),
        complete,
        counts,
    })
}

/// Solve F^n(y) = x over F_{p^(k m)} for m = 1..=degree_bound.
///
/// The reported set is the one for the smallest m attaining the largest
/// count. It is flagged complete when that count equals the Bezout bound
/// prod_i deg(F_i)^n, or when doubling the extension adds nothing.
pub fn preimage_set(
    map: &ResidueMap,
    x: &[ResidueElement],
    n: usize,
    degree_bound: usize,
    budget: Budget,
) -> Result<PreimageSet> {
    check_base_point(map, x)?;
    preimage_set_in(map, x, n, &graphs(map, degree_bound, budget)?)
}

/// Orbits of the q-power Frobenius, q = p^base_degree, acting
/// coordinatewise on the set. Each orbit is listed from its smallest point.
pub fn galois_orbits(set: &PreimageSet, base_degree: usize) -> Result<Vec<Vec<ResiduePoint>>> {
    if !set.complete {
        return Err(Error::IncompletePreimageSet);
    }
    let frobenius = |pt: &ResiduePoint| -> ResiduePoint { pt.iter().map(|c| c.frobenius_power(base_degree)).collect() };
    let mut seen = vec![false; set.points.len()];
    let mut orbits = Vec::new();
    for start in 0..set.points.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![set.points[start].clone()];
        seen[start] = true;
        let mut y = frobenius(&set.points[start]);
        while y != set.points[start] {
            // points are sorted
            let pos = set
                .points
                .binary_search(&y)
                .map_err(|_| Error::Invalid("preimage set is not closed under Frobenius".into()))?;
            seen[pos] = true;
            orbit.push(y.clone());
            y = frobenius(&y);
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

pub fn galois_orbit_count(set: &PreimageSet, base_degree: usize) -> Result<usize> {
    Ok(galois_orbits(set, base_degree)?.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityVerdict {
    /// orbit counts flattened out within the tested depths
    BoundedUpToNMax,
    Growing,
}

impl StabilityVerdict {
    pub fn label(self) -> &'static str {
        match self {
            StabilityVerdict::BoundedUpToNMax => "bounded-up-to-n_max",
            StabilityVerdict::Growing => "growing",
        }
    }

    /// Heuristic: bounded if the last (up to) three counts agree, or the
    /// maximum is reached before the last depth and never exceeded after.
    pub fn from_counts(counts: &[usize]) -> Self {
        let tail = &counts[counts.len().saturating_sub(3)..];
        if tail.windows(2).all(|w| w[0] == w[1]) {
            return StabilityVerdict::BoundedUpToNMax;
        }
        let peak = counts.iter().copied().max().unwrap_or(0);
        let first_peak = counts.iter().position(|&c| c == peak).unwrap_or(0);
        let non_increasing_after = counts[first_peak..].windows(2).all(|w| w[0] >= w[1]);
        if first_peak + 1 < counts.len() && non_increasing_after {
            StabilityVerdict::BoundedUpToNMax
        } else {
            StabilityVerdict::Growing
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRow {
    pub depth: usize,
    pub preimages: usize,
    pub orbits: usize,
    pub extension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub rows: Vec<OrbitRow>,
    pub verdict: StabilityVerdict,
}

/// Galois-orbit counts of F^(-n)(x) for n = 0..=n_max.
pub fn eventual_stability_probe(
    map: &ResidueMap,
    x: &[ResidueElement],
    n_max: usize,
    degree_bound: usize,
    budget: Budget,
) -> Result<OrbitReport> {
    check_base_point(map, x)?;
    let graphs = graphs(map, degree_bound, budget)?;
    let k = map.context().degree();
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let set = preimage_set_in(map, x, n, &graphs)?;
        let orbits = galois_orbit_count(&set, k)?;
        rows.push(OrbitRow { depth: n, preimages: set.points.len(), orbits, extension: set.extension });
    }
    let counts: Vec<usize> = rows.iter().map(|r| r.orbits).collect();
    Ok(OrbitReport { verdict: StabilityVerdict::from_counts(&counts), rows })
}

/// A coherent backward orbit a_0 = x, F(a_(i+1)) = a_i, of length depth+1.
#[derive(Debug, Clone, PartialEq)]
pub struct BackwardOrbit {
    /// m, with the points living in F_{p^(k m)}
    pub extension: usize,
    pub points: Vec<ResiduePoint>,
    /// indices i with a_i on the variety
    pub hits: Vec<usize>,
}

impl BackwardOrbit {
    /// Re-check F(a_(i+1)) = a_i by direct evaluation.
    pub fn is_coherent(&self, map: &ResidueMap) -> bool {
        let Some(ctx) = self.points.first().and_then(|p| p.first()).map(|c| c.context().clone()) else {
            return false;
        };
        let Ok(map) = map.base_change(&ctx) else {
            return false;
        };
        self.points.windows(2).all(|w| map.eval(&w[1]).is_ok_and(|y| y == w[0]))
    }
}

/// Limits for the backward-orbit search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// D: number of backward steps
    pub depth: usize,
    /// L: levels of look-ahead used to order branches
    pub lookahead: usize,
    /// extensions F_{q^m} tried, m = 1..=degree_bound
    pub degree_bound: usize,
    pub budget: Budget,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { depth: 8, lookahead: 2, degree_bound: 2, budget: Budget::default() }
    }
}

struct Search<'a> {
    graph: &'a FieldGraph,
    hit: Vec<bool>,
    /// alive[r][y]: some coherent chain of r more steps starts at y
    alive: Vec<Vec<bool>>,
    /// score[y]: most hits reachable within the look-ahead window below y
    score: Vec<usize>,
    depth: usize,
    best: Option<(usize, Vec<u64>)>,
    expansions: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(graph: &'a FieldGraph, variety: &ResidueVariety, limits: &SearchLimits) -> Result<Self> {
        let variety = variety.base_change(&graph.ctx)?;
        let size = graph.next.len();
        let hit: Vec<bool> = (0..size as u64).map(|i| variety.contains(&graph.indexer.point(i))).collect();
        let mut alive = vec![vec![true; size]];
        for r in 0..limits.depth {
            let row = (0..size).map(|y| graph.preimages[y].iter().any(|&z| alive[r][z as usize])).collect();
            alive.push(row);
        }
        let mut score: Vec<usize> = hit.iter().map(|&h| h as usize).collect();
        for _ in 0..limits.lookahead {
            score = (0..size)
                .map(|y| hit[y] as usize + graph.preimages[y].iter().map(|&z| score[z as usize]).max().unwrap_or(0))
                .collect();
        }
        Ok(Self { graph, hit, alive, score, depth: limits.depth, best: None, expansions: 0, budget: limits.budget.0 })
    }

    fn consider(&mut self, chain: &[u64], hits: usize) {
        let better = match &self.best {
            None => true,
            Some((h, c)) => hits > *h || (hits == *h && chain < c.as_slice()),
        };
        if better {
            self.best = Some((hits, chain.to_vec()));
        }
    }

    fn dfs(&mut self, chain: &mut Vec<u64>, hits: usize) -> Result<()> {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(Error::BudgetExceeded { required: self.expansions, budget: self.budget });
        }
        let level = chain.len() - 1;
        if level == self.depth {
            self.consider(chain, hits);
            return Ok(());
        }
        let remaining = self.depth - level;
        if let Some((best_hits, best_chain)) = &self.best {
            let ceiling = hits + remaining;
            let prefix = best_chain[..chain.len()].cmp(chain.as_slice());
            if ceiling < *best_hits || (ceiling == *best_hits && prefix == Ordering::Less) {
                return Ok(());
            }
        }
        let node = *chain.last().unwrap() as usize;
        let mut children: Vec<u64> =
            self.graph.preimages[node].iter().copied().filter(|&z| self.alive[remaining - 1][z as usize]).collect();
        children.sort_by_key(|&z| (Reverse(self.score[z as usize]), z));
        for z in children {
            chain.push(z);
            let h = hits + self.hit[z as usize] as usize;
            self.dfs(chain, h)?;
            chain.pop();
        }
        Ok(())
    }
}

/// Depth-first search for the coherent backward orbit of x of length
/// `depth + 1` with the most points on the variety, over each extension
/// F_{q^m}, m <= degree_bound. Ties prefer the smaller extension, then the
/// lexicographically smaller point sequence. Branches are explored in order
/// of how many variety points their next `lookahead` levels can reach.
pub fn coherent_backward_orbit_search(
    map: &ResidueMap,
    x: &[ResidueElement],
    variety: &ResidueVariety,
    limits: SearchLimits,
) -> Result<BackwardOrbit> {
    check_base_point(map, x)?;
    map.context().check_same(variety.context())?;
    let mut best: Option<(usize, BackwardOrbit)> = None;
    for graph in graphs(map, limits.degree_bound, limits.budget)? {
        let start = graph.embed_point(x)?;
        let mut search = Search::new(&graph, variety, &limits)?;
        if !search.alive[limits.depth][start as usize] {
            continue;
        }
        let mut chain = vec![start];
        let h = search.hit[start as usize] as usize;
        search.dfs(&mut chain, h)?;
        let (hits, chain) = search.best.expect("a live start yields a chain");
        if best.as_ref().is_some_and(|(b, _)| *b >= hits) {
            continue;
        }
        let orbit = BackwardOrbit {
            extension: graph.extension,
            points: chain.iter().map(|&i| graph.indexer.point(i)).collect(),
            hits: chain.iter().enumerate().filter(|(_, &i)| search.hit[i as usize]).map(|(j, _)| j).collect(),
        };
        debug_assert!(orbit.points.windows(2).all(|w| graph.map.eval_unchecked(&w[1]) == w[0]));
        best = Some((hits, orbit));
    }
    best.map(|(_, o)| o).ok_or(Error::NoCoherentChain { depth: limits.depth, degree_bound: limits.degree_bound })
}
