//! Block systems, quotient actions and their kernels.

use std::collections::HashMap;

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// A partition of the points into blocks, blocks ordered by smallest point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn new(degree: usize, mut blocks: Vec<Vec<usize>>) -> Result<BlockSystem> {
        let mut block_of = vec![usize::MAX; degree];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                if v >= degree {
                    return Err(Error::InvalidPartition(format!("point {v} out of range")));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("point {v} in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidPartition("blocks do not cover all points".into()));
        }
        Ok(BlockSystem { blocks, block_of })
    }

    pub fn singletons(degree: usize) -> BlockSystem {
        BlockSystem::new(degree, (0..degree).map(|v| vec![v]).collect()).expect("singletons")
    }

    fn from_labels(labels: &[usize]) -> BlockSystem {
        let mut map: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let id = *map.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[id].push(v);
        }
        BlockSystem::new(labels.len(), blocks).expect("labels give a partition")
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Size of the block holding point 0.
    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    /// Only singletons, or a single block holding everything.
    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1 || self.blocks.len() == self.block_of.len()
    }

    /// The block-index permutation induced by `g`, if `g` respects blocks.
    pub fn induced(&self, g: &Perm) -> Option<Perm> {
        let mut images = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let target = self.block_of[g.apply(b[0])];
            if b.iter().any(|&v| self.block_of[g.apply(v)] != target) {
                return None;
            }
            images.push(target);
        }
        Perm::from_images(images).ok()
    }

    pub fn is_invariant(&self, group: &PermGroup) -> bool {
        group.generators().iter().all(|g| self.induced(g).is_some())
    }
}

/// The action on blocks: quotient group, per-element projection and kernel.
#[derive(Clone, Debug)]
pub struct QuotientAction {
    pub quotient: PermGroup,
    /// `projection[i]` is the index in `quotient` of the image of element `i`.
    pub projection: Vec<usize>,
    pub kernel: PermGroup,
    /// Indices (into the acting group) of kernel elements.
    pub kernel_indices: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl PermGroup {
    /// Finest invariant partition in which `u` and `v` share a block, or
    /// `None` when that partition is the single block of all points.
    pub fn minimal_block_system(&self, u: usize, v: usize) -> Result<Option<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        if u == v || u >= self.degree || v >= self.degree {
            return Err(Error::InvalidArgument(format!(
                "need two distinct points, got {u} and {v}"
            )));
        }
        let mut uf = UnionFind::new(self.degree);
        uf.union(u, v);
        let mut pending = vec![(u, v)];
        while let Some((a, b)) = pending.pop() {
            for g in &self.generators {
                let (x, y) = (g.apply(a), g.apply(b));
                if uf.union(x, y) {
                    pending.push((x, y));
                }
            }
        }
        let labels: Vec<usize> = (0..self.degree).map(|x| uf.find(x)).collect();
        let system = BlockSystem::from_labels(&labels);
        Ok(if system.block_count() == 1 {
            None
        } else {
            Some(system)
        })
    }

    /// Nontrivial minimal block systems from the pairs `(0, v)`, deduplicated
    /// and sorted by block size. Coarser systems that are not minimal for any
    /// such pair are not listed.
    pub fn all_block_systems(&self) -> Result<Vec<BlockSystem>> {
        let mut out: Vec<BlockSystem> = Vec::new();
        for v in 1..self.degree {
            if let Some(s) = self.minimal_block_system(0, v)? {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out.sort_by_key(|s| (s.block_size(), s.blocks.clone()));
        Ok(out)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.all_block_systems()?.is_empty())
    }

    pub fn quotient_action(&self, system: &BlockSystem) -> Result<QuotientAction> {
        if system.block_of.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: system.block_of.len(),
            });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| system.induced(g).ok_or(Error::NonInvariantPartition))
            .collect::<Result<Vec<_>>>()?;
        let quotient = PermGroup::generate(system.block_count(), &gens, usize::MAX)?;
        let projection = self
            .elements
            .iter()
            .map(|g| {
                let img = system.induced(g).ok_or(Error::NonInvariantPartition)?;
                Ok(quotient.index_of(&img).expect("image lies in quotient"))
            })
            .collect::<Result<Vec<_>>>()?;
        let kernel_indices: Vec<usize> = (0..self.order()).filter(|&i| projection[i] == 0).collect();
        let kernel = self.subgroup_from_indices(&kernel_indices);
        Ok(QuotientAction {
            quotient,
            projection,
            kernel,
            kernel_indices,
        })
    }
}
