//! Relations on states and equivalence partitions (union-find).

use std::collections::BTreeSet;

/// A relation on states: a set of ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Relation {
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new() -> Self {
        Relation::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Relation {
            pairs: pairs.into_iter().collect(),
        }
    }

    /// The full relation on `n` states.
    pub fn full(n: usize) -> Self {
        Relation::from_pairs((0..n).flat_map(|x| (0..n).map(move |y| (x, y))))
    }

    /// The diagonal {(x, x)}.
    pub fn diagonal(n: usize) -> Self {
        Relation::from_pairs((0..n).map(|x| (x, x)))
    }

    pub fn insert(&mut self, x: usize, y: usize) -> bool {
        self.pairs.insert((x, y))
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// Renders as `{(0,1), (2,3)}` in lexicographic order.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.iter().map(|(x, y)| format!("({x},{y})")).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// An equivalence partition over `0..n`, kept as a union-find with
/// union-by-rank and path compression. The canonical representative of a
/// block is its smallest member, so reports are reproducible.
#[derive(Debug, Clone)]
pub struct Partition {
    parent: Vec<usize>,
    rank: Vec<u32>,
}

impl Partition {
    pub fn identity(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Root without path compression, for shared references.
    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.root(x) == self.root(y)
    }

    /// Merges the blocks of x and y; returns true if they were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (a, b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
        true
    }

    /// Smallest member of each element's block.
    pub fn canonical(&self) -> Vec<usize> {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        for x in 0..n {
            let r = self.root(x);
            if label[r] == usize::MAX {
                label[r] = x; // first visit in increasing order is the minimum
            }
        }
        (0..n).map(|x| label[self.root(x)]).collect()
    }

    /// Blocks sorted by smallest member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let canon = self.canonical();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index: Vec<Option<usize>> = vec![None; self.len()];
        for (x, &c) in canon.iter().enumerate() {
            match index[c] {
                Some(i) => blocks[i].push(x),
                None => {
                    index[c] = Some(blocks.len());
                    blocks.push(vec![x]);
                }
            }
        }
        blocks
    }

    /// The partition as a relation: all pairs inside blocks.
    pub fn as_relation(&self) -> Relation {
        let mut rel = Relation::new();
        for block in self.blocks() {
            for &x in &block {
                for &y in &block {
                    rel.insert(x, y);
                }
            }
        }
        rel
    }

    /// Renders blocks as `{0 5}{1 2 3 4}`.
    pub fn render(&self) -> String {
        self.blocks()
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", inner.join(" "))
            })
            .collect()
    }

    /// Renders blocks through a state-naming function.
    pub fn render_named(&self, name: impl Fn(usize) -> String) -> String {
        self.blocks()
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|&x| name(x)).collect();
                format!("{{{}}}", inner.join(" "))
            })
            .collect()
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for Partition {}

/// The smallest equivalence relation containing `rel`, by union-find.
pub fn equiv_close(rel: &Relation, n_states: usize) -> Partition {
    let mut p = Partition::identity(n_states);
    for (x, y) in rel.iter() {
        p.union(x, y);
    }
    p
}
