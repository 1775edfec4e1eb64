use std::fmt::Debug;
use std::ops::{Add, Neg, Sub};

use super::bipartite::BipartiteGraph;

/// Totally ordered additive group usable as an assignment weight.
pub trait AssignmentWeight:
    Copy + Ord + Debug + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
}

impl AssignmentWeight for i64 {
    fn zero() -> Self {
        0
    }
}

/// Pair compared lexicographically: any amount of `major` dominates any
/// amount of `minor`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexWeight {
    pub major: i64,
    pub minor: i64,
}

impl LexWeight {
    pub const ZERO: LexWeight = LexWeight { major: 0, minor: 0 };
    pub const MAJOR: LexWeight = LexWeight { major: 1, minor: 0 };
    pub const MINOR: LexWeight = LexWeight { major: 0, minor: 1 };

    pub fn new(major: i64, minor: i64) -> Self {
        Self { major, minor }
    }
}

impl Add for LexWeight {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.major + o.major, self.minor + o.minor)
    }
}

impl Sub for LexWeight {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.major - o.major, self.minor - o.minor)
    }
}

impl Neg for LexWeight {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.major, -self.minor)
    }
}

impl AssignmentWeight for LexWeight {
    fn zero() -> Self {
        Self::ZERO
    }
}

/// Weight of every (left, right) pair. `None` forbids the pair; leaving a
/// left node unassigned is always allowed and weighs zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAssignment<W> {
    weights: Vec<Vec<Option<W>>>,
}

impl<W: AssignmentWeight> WeightedAssignment<W> {
    /// Everything forbidden.
    pub fn new(left: usize, right: usize) -> Self {
        Self {
            weights: vec![vec![None; right]; left],
        }
    }

    pub fn set(&mut self, l: usize, r: usize, w: W) {
        self.weights[l][r] = Some(w);
    }

    pub fn forbid(&mut self, l: usize, r: usize) {
        self.weights[l][r] = None;
    }

    pub fn get(&self, l: usize, r: usize) -> Option<W> {
        self.weights.get(l)?.get(r).copied().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment<W> {
    pub assignment: Vec<Option<usize>>,
    pub objective: W,
}

/// Maximum-weight capacity-respecting assignment restricted to the edges of
/// `g` that carry a weight.
///
/// Hungarian method on a square expansion: one column per unit of right-node
/// capacity plus one zero-weight "unassigned" column per left node. Ties are
/// broken toward lower column indices.
pub fn solve_assignment<W: AssignmentWeight>(
    g: &BipartiteGraph,
    w: &WeightedAssignment<W>,
) -> Assignment<W> {
    let n = g.num_left();
    // column -> right node, None for the unassigned columns
    let mut columns: Vec<Option<usize>> = Vec::new();
    for r in 0..g.num_right() {
        columns.extend(std::iter::repeat_n(Some(r), g.capacity(r)));
    }
    columns.extend(std::iter::repeat_n(None, n));
    let m = columns.len();

    // costs, 1-indexed to match the potentials below
    let cost = |i: usize, j: usize| -> Option<W> {
        match columns[j - 1] {
            None => Some(W::zero()),
            Some(r) if g.has_edge(i - 1, r) => w.get(i - 1, r).map(|x| -x),
            Some(_) => None,
        }
    };

    let zero = W::zero();
    let mut u = vec![zero; n + 1];
    let mut v = vec![zero; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<W>> = vec![None; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<W> = None;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                if let Some(c) = cost(i0, j) {
                    let cur = c - u[i0] - v[j];
                    if minv[j].is_none_or(|mv| cur < mv) {
                        minv[j] = Some(cur);
                        way[j] = j0;
                    }
                }
                if let Some(mv) = minv[j] {
                    if delta.is_none_or(|d| mv < d) {
                        delta = Some(mv);
                        j1 = j;
                    }
                }
            }
            // every row can reach an unused unassigned column
            let delta = delta.expect("an unassigned column is always reachable");
            for j in 0..=m {
                if used[j] {
                    u[p[j]] = u[p[j]] + delta;
                    v[j] = v[j] - delta;
                } else if let Some(mv) = minv[j] {
                    minv[j] = Some(mv - delta);
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![None; n];
    let mut objective = zero;
    for j in 1..=m {
        if p[j] != 0 {
            if let Some(r) = columns[j - 1] {
                let l = p[j] - 1;
                assignment[l] = Some(r);
                objective = objective + w.get(l, r).expect("only weighted edges are used");
            }
        }
    }
    Assignment {
        assignment,
        objective,
    }
}
