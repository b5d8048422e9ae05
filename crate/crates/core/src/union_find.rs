//! Disjoint sets with union by rank and path compression.

/// The operations the bridge monitor needs from a union-find structure. The
/// monitor only ever unions endpoints of edges of a fixed planar dual, so a
/// structure specialised to that case can be plugged in here.
pub trait UnionFind {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn find(&mut self, a: usize) -> usize;
    /// Returns whether two distinct sets were merged.
    fn union(&mut self, a: usize, b: usize) -> bool;
    fn component_count(&self) -> usize;
    /// Total number of `find` and `union` calls so far.
    fn op_count(&self) -> u64;
}

#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<u32>,
    rank: Vec<u8>,
    components: usize,
    ops: u64,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        assert!(n <= u32::MAX as usize);
        Self {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            components: n,
            ops: 0,
        }
    }

    fn root(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = a;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }
}

impl UnionFind for Dsu {
    fn len(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, a: usize) -> usize {
        assert!(a < self.parent.len(), "element {a} out of range");
        self.ops += 1;
        self.root(a)
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        assert!(a < self.parent.len(), "element {a} out of range");
        assert!(b < self.parent.len(), "element {b} out of range");
        self.ops += 1;
        let (ra, rb) = (self.root(a), self.root(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb as u32,
            std::cmp::Ordering::Greater => self.parent[rb] = ra as u32,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra as u32;
                self.rank[ra] += 1;
            }
        }
        self.components -= 1;
        true
    }

    fn component_count(&self) -> usize {
        self.components
    }

    fn op_count(&self) -> u64 {
        self.ops
    }
}
