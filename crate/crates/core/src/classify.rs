//! Major/minor classification of the roots of `f - xi` relative to `g`.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::Series;
use crate::tpoly::{pi_leading, to_t_domain, TPoly};
use crate::tree::{NodeStatus, RootTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootKind {
    /// `ord g(alpha) < 0`.
    Major,
    /// `ord g(alpha) = 0`.
    Minor,
    /// `ord g(alpha) > 0`; impossible for Jacobian pairs.
    Vanishing,
}

impl RootKind {
    pub fn name(self) -> &'static str {
        match self {
            RootKind::Major => "major",
            RootKind::Minor => "minor",
            RootKind::Vanishing => "vanishing",
        }
    }

    fn of(ord: &Rational) -> Self {
        if ord.is_negative() {
            RootKind::Major
        } else if ord.is_zero() {
            RootKind::Minor
        } else {
            RootKind::Vanishing
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootInfo {
    pub leaf: usize,
    pub kind: RootKind,
    pub ord_g: Rational,
    /// `max ord(alpha - beta)` over the roots `beta` of `g`.
    pub delta: Rational,
    /// The tree node `alpha|<delta + pi t^delta` when it is a final pi-root.
    pub final_node: Option<usize>,
    /// Roots of `f - xi` related to the same pi-root `alpha|<delta + pi t^delta`.
    pub related: usize,
}

#[derive(Clone, Debug)]
pub struct RootClassification {
    pub roots: Vec<RootInfo>,
}

impl RootClassification {
    pub fn count(&self, tree: &RootTree, kind: RootKind) -> usize {
        self.roots
            .iter()
            .filter(|r| r.kind == kind)
            .map(|r| tree.nodes[r.leaf].weight * tree.nodes[r.leaf].multiplicity)
            .sum()
    }

    /// Whether every root of the kind is related to a final pi-root.
    pub fn all_final(&self, kind: RootKind) -> bool {
        self.roots.iter().filter(|r| r.kind == kind).all(|r| r.final_node.is_some())
    }

    pub fn info(&self, leaf: usize) -> Option<&RootInfo> {
        self.roots.iter().find(|r| r.leaf == leaf)
    }

    /// Distinct final pi-roots of the given kind, ascending.
    pub fn final_nodes(&self, kind: RootKind) -> Vec<usize> {
        let mut v: Vec<usize> = self.roots.iter().filter(|r| r.kind == kind).filter_map(|r| r.final_node).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Classifies each leaf of `tree` (the roots of `f - xi`) against `g`.
pub fn classify_roots(g: &BiPoly, tree: &RootTree) -> Result<RootClassification> {
    let gt = to_t_domain(g);
    let mut roots = Vec::new();
    for leaf in tree.leaves() {
        let (ord_g, delta) = match walk(&gt, tree, leaf) {
            Some(r) => r,
            None => by_polygon(&gt, &tree.nodes[leaf].prefix)?,
        };
        let final_node =
            tree.node_on_path_with_delta(leaf, &delta).filter(|&i| tree.nodes[i].status == NodeStatus::Final);
        roots.push(RootInfo { leaf, kind: RootKind::of(&ord_g), ord_g, delta, final_node, related: 0 });
    }
    for i in 0..roots.len() {
        roots[i].related = related_count(tree, &roots, i);
    }
    Ok(RootClassification { roots })
}

/// Roots sharing the related pi-root of `roots[i]`: those below the first
/// node on its path whose split order reaches `delta` and whose own `delta`
/// is the same.
fn related_count(tree: &RootTree, roots: &[RootInfo], i: usize) -> usize {
    let r = &roots[i];
    let mut path = tree.ancestors(r.leaf);
    path.push(r.leaf);
    let top = path.into_iter().find(|&n| tree.nodes[n].delta.as_ref().is_some_and(|d| d >= &r.delta));
    let Some(top) = top else {
        return tree.nodes[r.leaf].multiplicity;
    };
    let w = tree.nodes[top].weight;
    tree.leaves_under(top)
        .into_iter()
        .filter(|&l| roots.iter().any(|o| o.leaf == l && o.delta == r.delta))
        .map(|l| tree.nodes[l].weight / w * tree.nodes[l].multiplicity)
        .sum()
}

/// Reads `(ord g(alpha), delta_alpha)` off the exact g-leading forms at
/// the pi-roots on the path of `leaf`.
fn walk(gt: &TPoly, tree: &RootTree, leaf: usize) -> Option<(Rational, Rational)> {
    let mut path = tree.ancestors(leaf);
    path.push(leaf);
    for w in path.windows(2) {
        let (node, child) = (w[0], w[1]);
        let n = &tree.nodes[node];
        let delta = n.delta.as_ref()?;
        let shifted = gt.taylor_shift(&n.prefix, None);
        let (lambda, gs) = pi_leading(&shifted, delta).ok()?;
        if gs.degree()? == 0 {
            // every root of g diverges from alpha strictly before delta
            return None;
        }
        let b = tree.branch_value(node, child);
        if !gs.eval(&b).is_zero() {
            return Some((lambda, delta.clone()));
        }
    }
    None
}

/// Newton polygon of `g(alpha + y)` read from its Taylor coefficients.
fn by_polygon(gt: &TPoly, alpha: &Series) -> Result<(Rational, Rational)> {
    let mut target = int(4);
    let mut last: Option<Rational> = None;
    loop {
        let c = gt.taylor_shift(alpha, Some(&target));
        if c[0].is_exact_zero() {
            return Err(Error::ZeroResultant);
        }
        if let Some(v0) = c[0].valuation() {
            let mut best: Option<Rational> = None;
            let mut bound: Option<Rational> = None;
            for (i, s) in c.iter().enumerate().skip(1) {
                let k = int(i as i64);
                match (s.valuation(), s.precision()) {
                    (Some(v), _) => {
                        let cand = (&v0 - v) / &k;
                        if best.as_ref().is_none_or(|b| &cand > b) {
                            best = Some(cand);
                        }
                    }
                    (None, Some(p)) => {
                        let ub = (&v0 - p) / &k;
                        if bound.as_ref().is_none_or(|b| &ub > b) {
                            bound = Some(ub);
                        }
                    }
                    (None, None) => {}
                }
            }
            if let Some(b) = &best {
                if bound.as_ref().is_none_or(|u| u < b) {
                    return Ok((v0, b.clone()));
                }
            }
        }
        let reached = c.iter().filter_map(|s| s.precision()).min().cloned();
        if reached.is_none() || reached <= last {
            return Err(Error::NotSeparated("the order of g at a root".into()));
        }
        last = reached;
        target *= int(2);
    }
}

/// Whether every root of `f - xi` in the disc below `tau` (the leaves under
/// tree node `tau`) is minor.
pub fn minor_disc_check(class: &RootClassification, tree: &RootTree, tau: usize) -> bool {
    tree.leaves_under(tau).into_iter().all(|l| class.info(l).is_some_and(|r| r.kind == RootKind::Minor))
}
