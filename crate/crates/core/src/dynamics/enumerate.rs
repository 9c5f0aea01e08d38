use crate::dynamics::{ResidueMap, ResiduePoint};
use crate::error::{Error, Result};
use crate::padic::PAdicContext;

/// Cap on the number of points any brute-force enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(10_000_000)
    }
}

impl Budget {
    pub fn check(self, required: u64) -> Result<()> {
        if required > self.0 {
            Err(Error::BudgetExceeded { required, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

/// Bijection between F_q^dim and 0..q^dim. Coordinate 0 is the most
/// significant digit, so index order is lexicographic tuple order.
#[derive(Debug, Clone)]
pub(crate) struct PointIndexer {
    ctx: PAdicContext,
    dim: usize,
    q: u64,
    size: u64,
}

impl PointIndexer {
    pub fn new(ctx: &PAdicContext, dim: usize, budget: Budget) -> Result<Self> {
        let q = ctx.residue_field_size();
        let size = (0..dim).try_fold(1u64, |acc, _| acc.checked_mul(q)).unwrap_or(u64::MAX);
        budget.check(size)?;
        Ok(Self { ctx: ctx.clone(), dim, q, size })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn point(&self, mut index: u64) -> ResiduePoint {
        let mut coords = vec![self.ctx.residue_zero(); self.dim];
        for slot in coords.iter_mut().rev() {
            *slot = self.ctx.residue_from_index(index % self.q);
            index /= self.q;
        }
        coords
    }

    pub fn index(&self, point: &[crate::padic::ResidueElement]) -> u64 {
        point.iter().fold(0, |acc, c| acc * self.q + c.index())
    }

    pub fn points(&self) -> impl Iterator<Item = ResiduePoint> + '_ {
        (0..self.size).map(|i| self.point(i))
    }

    /// next[i] = index of F(point i).
    pub fn successor_table(&self, map: &ResidueMap) -> Vec<u64> {
        debug_assert!(map.context().same(&self.ctx));
        (0..self.size).map(|i| self.index(&map.eval_unchecked(&self.point(i)))).collect()
    }
}

/// All cycles of a functional graph, each as the list of its node indices
/// starting from its smallest index.
pub(crate) fn functional_graph_cycles(next: &[u64]) -> Vec<Vec<u64>> {
    const UNSEEN: u32 = 0;
    const DONE: u32 = u32::MAX;
    let mut state = vec![UNSEEN; next.len()];
    let mut cycles = Vec::new();
    let mut walk = Vec::new();
    for (start, walk_id) in (0..next.len()).zip(1u32..) {
        if state[start] != UNSEEN {
            continue;
        }
        walk.clear();
        let mut node = start;
        while state[node] == UNSEEN {
            state[node] = walk_id;
            walk.push(node);
            node = next[node] as usize;
        }
        if state[node] == walk_id {
            let pos = walk.iter().position(|&n| n == node).unwrap();
            let mut cycle: Vec<u64> = walk[pos..].iter().map(|&n| n as u64).collect();
            let min_pos = cycle.iter().enumerate().min_by_key(|(_, &n)| n).unwrap().0;
            cycle.rotate_left(min_pos);
            cycles.push(cycle);
        }
        for &n in &walk {
            state[n] = DONE;
        }
    }
    cycles.sort();
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_of_a_small_functional_graph() {
        // 0 -> 1 -> 2 -> 0, 3 -> 3, 4 -> 0, 5 -> 4
        let next = [1, 2, 0, 3, 0, 4];
        assert_eq!(functional_graph_cycles(&next), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn indexer_round_trip() {
        let ctx = PAdicContext::new(3, 2, 1).unwrap();
        let ix = PointIndexer::new(&ctx, 2, Budget::default()).unwrap();
        assert_eq!(ix.size(), 81);
        let pts: Vec<_> = ix.points().collect();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(ix.index(p), i as u64);
        }
        assert!(PointIndexer::new(&ctx, 3, Budget(100)).is_err());
    }
}
