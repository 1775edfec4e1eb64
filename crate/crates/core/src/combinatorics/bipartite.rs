use crate::error::{Error, Result};

/// Left nodes `0..left`, right nodes `0..capacity.len()` each holding up to
/// `capacity[r]` left nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    capacity: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, capacity: Vec<usize>) -> Self {
        Self {
            capacity,
            adjacency: vec![Vec::new(); left],
        }
    }

    /// Adds an edge; repeated edges are ignored.
    pub fn add_edge(&mut self, l: usize, r: usize) -> Result<()> {
        if l >= self.adjacency.len() {
            return Err(Error::InvalidGraph(format!("left node {l} out of range")));
        }
        if r >= self.capacity.len() {
            return Err(Error::InvalidGraph(format!("right node {r} out of range")));
        }
        if !self.adjacency[l].contains(&r) {
            self.adjacency[l].push(r);
            self.adjacency[l].sort_unstable();
        }
        Ok(())
    }

    pub fn num_left(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_right(&self) -> usize {
        self.capacity.len()
    }

    pub fn capacity(&self, r: usize) -> usize {
        self.capacity[r]
    }

    /// Right neighbours of `l` in increasing order.
    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adjacency[l]
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adjacency[l].binary_search(&r).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, r)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityMatching {
    pub size: usize,
    /// Right node of each left node.
    pub assignment: Vec<Option<usize>>,
}

/// Augmenting-path search over capacitated right nodes. Left nodes are
/// inserted in index order and neighbours scanned in increasing order.
pub fn max_cardinality_matching(g: &BipartiteGraph) -> CardinalityMatching {
    let mut state = Augmenter {
        g,
        assignment: vec![None; g.num_left()],
        holders: vec![Vec::new(); g.num_right()],
        visited: vec![false; g.num_right()],
    };
    let mut size = 0;
    for l in 0..g.num_left() {
        state.visited.iter_mut().for_each(|v| *v = false);
        if state.augment(l) {
            size += 1;
        }
    }
    CardinalityMatching {
        size,
        assignment: state.assignment,
    }
}

struct Augmenter<'a> {
    g: &'a BipartiteGraph,
    assignment: Vec<Option<usize>>,
    holders: Vec<Vec<usize>>,
    visited: Vec<bool>,
}

impl Augmenter<'_> {
    fn augment(&mut self, l: usize) -> bool {
        for &r in self.g.neighbors(l) {
            if std::mem::replace(&mut self.visited[r], true) {
                continue;
            }
            if self.holders[r].len() < self.g.capacity(r) {
                self.holders[r].push(l);
                self.assignment[l] = Some(r);
                return true;
            }
            for k in 0..self.holders[r].len() {
                let other = self.holders[r][k];
                if self.augment(other) {
                    // `other` moved elsewhere; take its place
                    self.holders[r][k] = l;
                    self.assignment[l] = Some(r);
                    return true;
                }
            }
        }
        false
    }
}
