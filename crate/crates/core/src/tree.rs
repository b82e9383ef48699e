//! Branch structure of non-path trees and the closed forms built on it.
//!
//! A branch of an exterior major vertex `v` is the path from `v` to one of its
//! terminal leaves; its length `l` counts vertices including `v`. Branches of
//! each exterior major are kept sorted by `(l, terminal id)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::resolve::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    /// Owner first, terminal leaf last.
    pub vertices: Vec<usize>,
}

#[allow(clippy::len_without_is_empty)]
impl Branch {
    pub fn owner(&self) -> usize {
        self.vertices[0]
    }

    pub fn terminal(&self) -> usize {
        *self
            .vertices
            .last()
            .expect("branch has at least two vertices")
    }

    /// Number of vertices including the owner.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// 1-based positions (owner is position 1) of the members of `w` on this
    /// branch, owner excluded.
    pub fn hits(&self, w: &VertexSet) -> Vec<usize> {
        self.vertices
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &v)| w.contains(v))
            .map(|(i, _)| i + 1)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExteriorMajor {
    pub vertex: usize,
    pub branches: Vec<Branch>,
    /// Groups (indices into `branches`) of two or more equal-length branches.
    pub similar_groups: Vec<Vec<usize>>,
    /// At least two terminal leaves adjacent to the vertex.
    pub twin_leaves: bool,
    /// `t >= 2` and the first branch is strictly shorter than all others.
    pub unique_shortest: bool,
}

impl ExteriorMajor {
    pub fn terminal_degree(&self) -> usize {
        self.branches.len()
    }

    /// Counted by `mu`: two or more branches, no strictly shortest one.
    pub fn lacks_unique_shortest(&self) -> bool {
        self.branches.len() >= 2 && !self.unique_shortest
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    pub order: usize,
    pub exterior_majors: Vec<ExteriorMajor>,
    pub mu: usize,
    pub theta: usize,
    pub sigma: usize,
    pub ex: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeBounds {
    /// Sum of `l - 1` over all branches.
    pub lower: usize,
    /// `n - theta + 2`.
    pub upper: usize,
    /// Whether exterior majors with a single branch moved either bound.
    pub single_branch_majors_matter: bool,
}

pub fn decompose_tree(g: &Graph) -> Result<TreeDecomposition> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if g.max_degree() <= 2 {
        return Err(Error::IsAPath);
    }
    let n = g.order();
    let mut by_owner: Vec<Vec<Branch>> = vec![Vec::new(); n];
    for leaf in (0..n).filter(|&v| g.degree(v) == 1) {
        let mut walk = vec![leaf];
        let (mut prev, mut cur) = (leaf, g.neighbors(leaf)[0]);
        while g.degree(cur) == 2 {
            walk.push(cur);
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&x| x != prev)
                .unwrap();
            (prev, cur) = (cur, next);
        }
        walk.push(cur);
        walk.reverse();
        by_owner[cur].push(Branch { vertices: walk });
    }

    let mut exterior_majors = Vec::new();
    for (vertex, mut branches) in by_owner.into_iter().enumerate() {
        if branches.is_empty() {
            continue;
        }
        branches.sort_by_key(|b| (b.len(), b.terminal()));
        let mut similar_groups: Vec<Vec<usize>> = Vec::new();
        for i in 0..branches.len() {
            match similar_groups.last_mut() {
                Some(group) if branches[group[0]].len() == branches[i].len() => group.push(i),
                _ => similar_groups.push(vec![i]),
            }
        }
        similar_groups.retain(|grp| grp.len() >= 2);
        let twin_leaves = branches.iter().filter(|b| b.len() == 2).count() >= 2;
        let unique_shortest = branches.len() >= 2 && branches[0].len() < branches[1].len();
        exterior_majors.push(ExteriorMajor {
            vertex,
            branches,
            similar_groups,
            twin_leaves,
            unique_shortest,
        });
    }
    let mu = exterior_majors
        .iter()
        .filter(|m| m.lacks_unique_shortest())
        .count();
    let theta = exterior_majors
        .iter()
        .flat_map(|m| m.branches.iter().map(Branch::len))
        .min()
        .expect("a non-path tree has leaves");
    let sigma = exterior_majors
        .iter()
        .map(ExteriorMajor::terminal_degree)
        .sum();
    Ok(TreeDecomposition {
        order: n,
        ex: exterior_majors.len(),
        exterior_majors,
        mu,
        theta,
        sigma,
    })
}

impl TreeDecomposition {
    /// `sigma - ex`.
    pub fn metric_dimension(&self) -> usize {
        self.sigma - self.ex
    }

    /// `sigma - ex + mu`.
    pub fn weak_total_dimension(&self) -> usize {
        self.metric_dimension() + self.mu
    }

    /// A minimum WTR-set: the terminal of every branch except the unique
    /// shortest one, for each exterior major with two or more branches.
    pub fn construct_wtmb(&self) -> VertexSet {
        let mut members = Vec::new();
        for m in self
            .exterior_majors
            .iter()
            .filter(|m| m.branches.len() >= 2)
        {
            let skip = usize::from(m.unique_shortest);
            members.extend(m.branches[skip..].iter().map(Branch::terminal));
        }
        members.sort_unstable();
        VertexSet::new(self.order, members).expect("terminals are distinct")
    }

    pub fn branches(&self) -> impl Iterator<Item = &Branch> {
        self.exterior_majors.iter().flat_map(|m| m.branches.iter())
    }

    pub fn reswt_bounds(&self) -> TreeBounds {
        let lower = self.branches().map(|b| b.len() - 1).sum();
        let upper = self.order + 2 - self.theta;
        let multi = || {
            self.exterior_majors
                .iter()
                .filter(|m| m.branches.len() >= 2)
                .flat_map(|m| m.branches.iter())
        };
        let lower_multi: usize = multi().map(|b| b.len() - 1).sum();
        let theta_multi = multi().map(Branch::len).min().unwrap_or(self.theta);
        TreeBounds {
            lower,
            upper,
            single_branch_majors_matter: lower_multi != lower || theta_multi != self.theta,
        }
    }

    /// Whether the tree has weak total metric dimension two: every exterior
    /// major has at most three branches including a unique shortest one, and
    /// either one has three branches and none has two, or exactly two have
    /// two branches and none has three.
    pub fn dimwt2_characterization(&self) -> bool {
        let multi: Vec<&ExteriorMajor> = self
            .exterior_majors
            .iter()
            .filter(|m| m.branches.len() >= 2)
            .collect();
        if multi
            .iter()
            .any(|m| m.branches.len() > 3 || !m.unique_shortest)
        {
            return false;
        }
        let with = |t: usize| multi.iter().filter(|m| m.branches.len() == t).count();
        (with(3) == 1 && with(2) == 0) || (with(2) == 2 && with(3) == 0)
    }
}

/// Trees split into paths (closed forms) and everything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeAnalysis {
    Path { order: usize, ends: (usize, usize) },
    NonPath(TreeDecomposition),
}

pub fn analyze_tree(g: &Graph) -> Result<TreeAnalysis> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if g.max_degree() <= 2 {
        let ends: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 1).collect();
        return Ok(TreeAnalysis::Path {
            order: g.order(),
            ends: (ends[0], ends[1]),
        });
    }
    decompose_tree(g).map(TreeAnalysis::NonPath)
}

impl TreeAnalysis {
    pub fn metric_dimension(&self) -> usize {
        match self {
            TreeAnalysis::Path { .. } => 1,
            TreeAnalysis::NonPath(td) => td.metric_dimension(),
        }
    }

    pub fn weak_total_dimension(&self) -> usize {
        match self {
            TreeAnalysis::Path { .. } => 2,
            TreeAnalysis::NonPath(td) => td.weak_total_dimension(),
        }
    }

    pub fn construct_wtmb(&self) -> VertexSet {
        match self {
            TreeAnalysis::Path { order, ends } => {
                VertexSet::new(*order, vec![ends.0, ends.1]).expect("distinct ends")
            }
            TreeAnalysis::NonPath(td) => td.construct_wtmb(),
        }
    }
}
