//! Newton-Puiseux root trees of `f(1/t, y) - xi`.
//!
//! Each node is a pi-root `sigma = P + pi t^delta` for a cluster of roots
//! sharing the exact prefix `P`; `delta` is the order where the cluster
//! first separates from `P`. Children correspond to the distinct roots `b`
//! of the leading form `f_sigma`. Conjugate roots (roots of one irreducible
//! factor over the current field) are represented by a single child in the
//! field extended by that factor, and `conjugates` records how many actual
//! branches it stands for. Clusters of a single root become leaves that are
//! lifted by Newton iteration without further field extension.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::factor::factor_over;
use crate::field::{Field, FieldElement};
use crate::poly::UniPoly;
use crate::rational::{fmt_rational, int, Rational};
use crate::series::Series;
use crate::tpoly::{hull, pi_leading, to_t_domain, TPoly};

/// Default limit on the absolute degree of field towers.
pub const DEFAULT_EXT_BUDGET: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeStatus {
    /// The leading form has a single distinct root.
    Unsplit,
    /// At least two distinct roots, some repeated.
    Split,
    /// Squarefree leading form of degree at least two.
    Final,
    /// A leaf: a single root, or an unseparated cluster when allowed.
    Simple,
}

impl NodeStatus {
    pub fn name(self) -> &'static str {
        match self {
            NodeStatus::Unsplit => "unsplit",
            NodeStatus::Split => "split",
            NodeStatus::Final => "final",
            NodeStatus::Simple => "simple",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "unsplit" => NodeStatus::Unsplit,
            "split" => NodeStatus::Split,
            "final" => NodeStatus::Final,
            "simple" => NodeStatus::Simple,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub status: NodeStatus,
    /// Exact prefix of a pi-root, or the (possibly truncated) root of a leaf.
    pub prefix: Series,
    /// Split order; `None` for leaves.
    pub delta: Option<Rational>,
    pub lambda: Option<Rational>,
    pub leading_form: Option<UniPoly>,
    /// Distinct roots of the leading form (1 for leaves).
    pub e: usize,
    /// Number of roots, counted with multiplicity, in one branch.
    pub multiplicity: usize,
    /// Conjugate branches this node represents relative to its parent.
    pub conjugates: usize,
    /// Conjugate branches represented in total (product along the path).
    pub weight: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub field: Field,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.status == NodeStatus::Simple
    }

    /// Nodes whose leading form has two or more distinct roots.
    pub fn is_split(&self) -> bool {
        matches!(self.status, NodeStatus::Split | NodeStatus::Final)
    }
}

#[derive(Clone, Debug)]
pub struct RootTree {
    pub f: BiPoly,
    pub xi: Rational,
    pub cutoff: Rational,
    pub nodes: Vec<TreeNode>,
}

#[derive(Clone, Debug)]
pub struct ExpandOptions {
    pub cutoff: Rational,
    pub ext_budget: usize,
    /// Accept clusters that are still joined at the cutoff (or exact
    /// multiple roots) as leaves of higher multiplicity.
    pub allow_unseparated: bool,
}

impl ExpandOptions {
    pub fn new(cutoff: Rational) -> Self {
        ExpandOptions { cutoff, ext_budget: DEFAULT_EXT_BUDGET, allow_unseparated: false }
    }
}

/// `2 deg_y(f) (1 + max |slope|)` over the Newton polygon of `f - xi`.
pub fn default_cutoff(f: &BiPoly, xi: &Rational) -> Rational {
    let t = to_t_domain(&f.minus_const(xi));
    let m = t.newton_polygon().iter().map(|e| e.slope.abs()).max().unwrap_or_else(Rational::zero);
    int(2 * f.deg_y() as i64) * (int(1) + m)
}

struct Item {
    parent: Option<usize>,
    prefix: Series,
    lower: Option<Rational>,
    r: usize,
    field: Field,
    conjugates: usize,
    weight: usize,
}

struct Builder<'a> {
    f: &'a TPoly,
    opts: &'a ExpandOptions,
    nodes: Vec<TreeNode>,
}

/// Expands the roots of `f - xi` (with `f` monic in `y`) into a tree.
pub fn expand_root_tree(f: &BiPoly, xi: &Rational, opts: &ExpandOptions) -> Result<RootTree> {
    let f = f.monicized()?;
    if f.deg_y() == 0 {
        return Err(Error::Domain("polynomial has no roots in y".into()));
    }
    if !opts.cutoff.is_positive() {
        return Err(Error::CutoffTooSmall { cutoff: fmt_rational(&opts.cutoff), order: "0".into() });
    }
    let t = to_t_domain(&f.minus_const(xi));
    let mut b = Builder { f: &t, opts, nodes: Vec::new() };
    b.grow(Item {
        parent: None,
        prefix: Series::zero(),
        lower: None,
        r: f.deg_y() as usize,
        field: Field::rationals(),
        conjugates: 1,
        weight: 1,
    })?;
    Ok(RootTree { f, xi: xi.clone(), cutoff: opts.cutoff.clone(), nodes: b.nodes })
}

impl Builder<'_> {
    fn push(&mut self, node: TreeNode) -> usize {
        let idx = self.nodes.len();
        if let Some(p) = node.parent {
            self.nodes[p].children.push(idx);
        }
        self.nodes.push(node);
        idx
    }

    fn leaf(&mut self, it: &Item, root: Series, multiplicity: usize) -> usize {
        self.push(TreeNode {
            status: NodeStatus::Simple,
            prefix: root,
            delta: None,
            lambda: None,
            leading_form: None,
            e: 1,
            multiplicity,
            conjugates: it.conjugates,
            weight: it.weight,
            parent: it.parent,
            children: Vec::new(),
            field: it.field.clone(),
        })
    }

    fn grow(&mut self, it: Item) -> Result<usize> {
        let g = self.f.taylor_shift(&it.prefix, None);
        let zeros = g.iter().take(it.r).take_while(|s| s.is_exact_zero()).count();
        if zeros >= it.r {
            if it.r > 1 && !self.opts.allow_unseparated {
                return Err(Error::Domain("the shifted polynomial has a multiple root".into()));
            }
            let r = it.r;
            return Ok(self.leaf(&it, it.prefix.clone(), r));
        }
        if it.r == 1 {
            let root = self.lift_simple(&g, &it.prefix)?;
            return Ok(self.leaf(&it, root, 1));
        }
        let pts: Vec<(usize, Rational)> = (zeros..=it.r).filter_map(|k| g[k].valuation().map(|v| (k, v))).collect();
        let edges = hull(&pts);
        let last = edges.last().expect("cluster without a Newton edge");
        let delta = last.slope.clone();
        debug_assert!(it.lower.as_ref().is_none_or(|l| &delta > l));
        if delta >= self.opts.cutoff {
            if !self.opts.allow_unseparated {
                return Err(Error::CutoffTooSmall {
                    cutoff: fmt_rational(&self.opts.cutoff),
                    order: fmt_rational(&delta),
                });
            }
            let r = it.r;
            return Ok(self.leaf(&it, it.prefix.with_precision(Some(delta)), r));
        }
        let (lambda, lf) = pi_leading(&g, &delta)?;
        debug_assert_eq!(lf.degree(), Some(it.r));
        let (_, e) = lf.squarefree_and_distinct_roots().unwrap();
        let status = if e == 1 {
            NodeStatus::Unsplit
        } else if e == it.r {
            NodeStatus::Final
        } else {
            NodeStatus::Split
        };
        let idx = self.push(TreeNode {
            status,
            prefix: it.prefix.clone(),
            delta: Some(delta.clone()),
            lambda: Some(lambda),
            leading_form: Some(lf.clone()),
            e,
            multiplicity: it.r,
            conjugates: it.conjugates,
            weight: it.weight,
            parent: it.parent,
            children: Vec::new(),
            field: it.field.clone(),
        });
        for (phi, mult) in factor_over(&lf, &it.field) {
            let d = phi.degree().unwrap();
            let (field, b) = if d == 1 {
                (it.field.clone(), phi.coeff(0).neg_ref())
            } else {
                let k = it.field.extend(&phi, self.opts.ext_budget)?;
                let gen = k.generator();
                (k, gen)
            };
            let prefix = if b.is_zero() { it.prefix.clone() } else { it.prefix.add(&Series::monomial(b, &delta)) };
            self.grow(Item {
                parent: Some(idx),
                prefix,
                lower: Some(delta.clone()),
                r: mult,
                field,
                conjugates: d,
                weight: it.weight * d,
            })?;
        }
        Ok(idx)
    }

    /// Lifts the unique root `beta` of `F` with `beta = P + O(t^(>lower))`,
    /// given the shifted coefficients `g` of `F(P + y)`.
    fn lift_simple(&self, g: &[Series], prefix: &Series) -> Result<Series> {
        if g[0].is_exact_zero() {
            return Ok(prefix.clone());
        }
        let (v0, c0) = g[0].leading().unwrap();
        let (v1, c1) = g[1].leading().expect("simple root with vanishing derivative");
        let d1 = &v0 - &v1;
        let s = v1;
        let mut alpha = prefix.add(&Series::monomial(c0.div_ref(c1).neg_ref(), &d1));
        let den = Rational::from_integer(alpha.den().into());
        let step = den.recip();
        let w = if s.is_negative() { &self.opts.cutoff - &s + &step } else { &self.opts.cutoff + &step };
        let fp = self.f.dy();
        loop {
            let fa = self.f.eval(&alpha, Some(&(&w + &s)));
            if fa.is_exact_zero() {
                return Ok(alpha);
            }
            let va = match fa.valuation() {
                None => return Ok(alpha.truncate(&w)),
                Some(v) => v,
            };
            if va >= &w + &s {
                return Ok(alpha.truncate(&w));
            }
            let need = &w + &s + &s - &va;
            let fpa = fp.eval(&alpha, Some(&need));
            let corr = fa.div(&fpa, &w);
            alpha = alpha.sub(&corr).restrict_below(&w);
        }
    }
}

impl RootTree {
    pub fn degree(&self) -> usize {
        self.f.deg_y() as usize
    }

    pub fn t_poly(&self) -> TPoly {
        to_t_domain(&self.f.minus_const(&self.xi))
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_leaf()).collect()
    }

    pub fn split_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_split()).collect()
    }

    /// Ancestors of `idx`, from the root down, excluding `idx`.
    pub fn ancestors(&self, idx: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.nodes[idx].parent;
        while let Some(p) = cur {
            out.push(p);
            cur = self.nodes[p].parent;
        }
        out.reverse();
        out
    }

    /// Leaves in the subtree of `idx`.
    pub fn leaves_under(&self, idx: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![idx];
        while let Some(i) = stack.pop() {
            if self.nodes[i].is_leaf() {
                out.push(i);
            }
            stack.extend(self.nodes[i].children.iter().rev());
        }
        out.sort_unstable();
        out
    }

    /// Actual roots (with multiplicity) under one copy of `idx`.
    pub fn roots_under(&self, idx: usize) -> usize {
        let w = self.nodes[idx].weight;
        self.leaves_under(idx).iter().map(|&l| self.nodes[l].weight / w * self.nodes[l].multiplicity).sum()
    }

    /// Sum of leaf multiplicities over all conjugates.
    pub fn total_multiplicity(&self) -> usize {
        self.leaves().iter().map(|&l| self.nodes[l].weight * self.nodes[l].multiplicity).sum()
    }

    /// Whether every leaf is a single root.
    pub fn is_separated(&self) -> bool {
        self.leaves().iter().all(|&l| self.nodes[l].multiplicity == 1)
    }

    /// `-sum (e - 1) lambda` over split nodes, counting conjugates.
    pub fn split_formula(&self) -> Rational {
        let mut acc = Rational::zero();
        for i in self.split_nodes() {
            let n = &self.nodes[i];
            acc -= int((n.weight * (n.e - 1)) as i64) * n.lambda.clone().unwrap();
        }
        acc
    }

    /// Index of the deepest ancestor-or-self pi-root of `leaf` with split
    /// order `delta`.
    pub fn node_on_path_with_delta(&self, leaf: usize, delta: &Rational) -> Option<usize> {
        let mut path = self.ancestors(leaf);
        path.push(leaf);
        path.into_iter().find(|&i| self.nodes[i].delta.as_ref() == Some(delta))
    }

    /// The coefficient chosen below node `idx` on the way to its child `child`.
    pub fn branch_value(&self, idx: usize, child: usize) -> FieldElement {
        let d = self.nodes[idx].delta.clone().unwrap();
        self.nodes[child].prefix.coeff_at(&d)
    }

    /// One-line description for diagnostics.
    pub fn describe(&self, idx: usize) -> alloc::string::String {
        let n = &self.nodes[idx];
        match &n.delta {
            Some(d) => alloc::format!(
                "{} delta={} lambda={} f_sigma={} e={} mult={} x{}",
                n.status.name(),
                fmt_rational(d),
                fmt_rational(n.lambda.as_ref().unwrap()),
                n.leading_form.as_ref().unwrap(),
                n.e,
                n.multiplicity,
                n.weight
            ),
            None => alloc::format!("leaf {} mult={} x{}", n.prefix, n.multiplicity, n.weight),
        }
        .to_string()
    }
}

/// Checks that the leading pair of `f_y` at the pi-root of node `idx` is
/// `(lambda - delta, f_sigma')`.
pub fn derivative_leading_form_check(tree: &RootTree, idx: usize) -> Result<bool> {
    let n = &tree.nodes[idx];
    let (Some(delta), Some(lambda), Some(lf)) = (&n.delta, &n.lambda, &n.leading_form) else {
        return Ok(true);
    };
    let fy = tree.t_poly().dy();
    let g = fy.taylor_shift(&n.prefix, None);
    let (l2, h) = pi_leading(&g, delta)?;
    Ok(l2 == (lambda - delta) && h == lf.derivative())
}

/// Largest cutoff tried by [`with_adaptive_cutoff`].
pub const MAX_ADAPTIVE_CUTOFF: i64 = 1024;

/// Runs `run` with cutoffs `start, 2 start, ...` until it stops failing
/// for lack of precision.
pub fn with_adaptive_cutoff<T>(start: &Rational, mut run: impl FnMut(&Rational) -> Result<T>) -> Result<T> {
    let mut cutoff = if start.is_positive() { start.clone() } else { int(1) };
    loop {
        match run(&cutoff) {
            Err(Error::CutoffTooSmall { .. } | Error::NotSeparated(_)) if cutoff < int(MAX_ADAPTIVE_CUTOFF) => {
                cutoff *= int(2);
            }
            r => return r,
        }
    }
}

/// Expands with the smallest doubling of `opts.cutoff` that separates all
/// roots.
pub fn expand_adaptive(f: &BiPoly, xi: &Rational, opts: &ExpandOptions) -> Result<RootTree> {
    with_adaptive_cutoff(&opts.cutoff, |c| {
        let o = ExpandOptions { cutoff: c.clone(), ..opts.clone() };
        expand_root_tree(f, xi, &o)
    })
}
