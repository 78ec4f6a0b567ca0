/// Union-find with path compression and union by size.
pub(crate) struct UnionFind {
    parents: Vec<u32>,
    sizes: Vec<u32>,
}

impl UnionFind {
    pub fn new(size: usize) -> Self {
        UnionFind {
            parents: (0..size as u32).collect(),
            sizes: vec![1; size],
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parents[root] as usize != root {
            root = self.parents[root] as usize;
        }
        while i != root {
            let parent = self.parents[i] as usize;
            self.parents[i] = root as u32;
            i = parent;
        }
        root
    }

    pub fn union(&mut self, i: usize, j: usize) {
        let a = self.find(i);
        let b = self.find(j);
        if a == b {
            return;
        }
        if self.sizes[a] < self.sizes[b] {
            self.parents[a] = b as u32;
            self.sizes[b] += self.sizes[a];
        } else {
            self.parents[b] = a as u32;
            self.sizes[a] += self.sizes[b];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unions_merge_classes() {
        let mut uf = UnionFind::new(6);
        uf.union(0, 1);
        uf.union(2, 3);
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(1), uf.find(2));
        uf.union(1, 3);
        assert_eq!(uf.find(0), uf.find(2));
        assert_ne!(uf.find(0), uf.find(5));
    }
}
