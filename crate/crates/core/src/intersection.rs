//! Intersection numbers at infinity computed along several routes.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::bipoly::{resultant_degree, resultant_y, BiPoly};
use crate::classify::{classify_roots, RootClassification, RootInfo, RootKind};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::Series;
use crate::tpoly::{order_at, to_t_domain};
use crate::tree::{expand_root_tree, with_adaptive_cutoff, ExpandOptions, RootTree};

#[derive(Clone, Debug)]
pub struct PolyPair {
    pub f: BiPoly,
    pub g: BiPoly,
    pub m: usize,
    pub n: usize,
    pub jacobian: BiPoly,
}

impl PolyPair {
    /// Both polynomials must be monic in `y` up to a constant factor.
    pub fn new(f: &BiPoly, g: &BiPoly) -> Result<Self> {
        let f = f.monicized()?;
        let g = g.monicized()?;
        let jacobian = BiPoly::jacobian(&f, &g);
        Ok(PolyPair { m: f.deg_y() as usize, n: g.deg_y() as usize, f, g, jacobian })
    }

    pub fn is_jacobian_pair(&self) -> bool {
        self.jacobian.as_constant().is_some_and(|c| !c.is_zero())
    }

    fn require_jacobian(&self) -> Result<()> {
        if self.is_jacobian_pair() {
            Ok(())
        } else {
            Err(Error::NotJacobianPair)
        }
    }
}

/// `deg_x Res_y(f, g)`.
pub fn intersection_resultant(f: &BiPoly, g: &BiPoly) -> Result<usize> {
    resultant_degree(f, g)
}

/// `-sum ord f(beta)` over the roots `beta` of `g`.
pub fn intersection_by_root_orders(f: &BiPoly, g: &BiPoly, opts: &ExpandOptions) -> Result<Rational> {
    let ft = to_t_domain(f);
    with_adaptive_cutoff(&opts.cutoff, |c| {
        let o = ExpandOptions { cutoff: c.clone(), allow_unseparated: true, ..opts.clone() };
        let tree = expand_root_tree(g, &Rational::zero(), &o)?;
        let mut acc = Rational::zero();
        for l in tree.leaves() {
            let node = &tree.nodes[l];
            let ord = order_at(&ft, &node.prefix)?.ok_or(Error::ZeroResultant)?;
            acc -= int((node.weight * node.multiplicity) as i64) * ord;
        }
        Ok(acc)
    })
}

/// Sorted multiset of `ord f_xi(beta)` over the roots `beta` of `f_y`,
/// with multiplicity.
pub fn critical_orders(f: &BiPoly, xi: &Rational, opts: &ExpandOptions) -> Result<Vec<Rational>> {
    let ft = to_t_domain(&f.minus_const(xi));
    if f.deg_y() < 2 {
        return Ok(Vec::new());
    }
    let fy = f.diff_y().monicized()?;
    with_adaptive_cutoff(&opts.cutoff, |c| {
        let o = ExpandOptions { cutoff: c.clone(), allow_unseparated: true, ..opts.clone() };
        let tree = expand_root_tree(&fy, &Rational::zero(), &o)?;
        let mut out = Vec::new();
        for l in tree.leaves() {
            let node = &tree.nodes[l];
            let ord = order_at(&ft, &node.prefix)?.ok_or(Error::ZeroResultant)?;
            for _ in 0..node.weight * node.multiplicity {
                out.push(ord.clone());
            }
        }
        out.sort();
        Ok(out)
    })
}

/// Sorted multiset with each split `lambda` repeated `e - 1` times per
/// conjugate.
pub fn split_lambda_multiset(tree: &RootTree) -> Vec<Rational> {
    let mut out = Vec::new();
    for i in tree.split_nodes() {
        let n = &tree.nodes[i];
        for _ in 0..n.weight * (n.e - 1) {
            out.push(n.lambda.clone().unwrap());
        }
    }
    out.sort();
    out
}

/// Expands `f - xi` with the smallest sufficient cutoff.
pub fn expand_generic(f: &BiPoly, xi: &Rational, opts: &ExpandOptions) -> Result<RootTree> {
    crate::tree::expand_adaptive(f, xi, opts)
}

/// `-sum (e - 1) lambda` over the split pi-roots of `f - xi`.
pub fn i_fxfy_split_formula(f: &BiPoly, xi: &Rational, opts: &ExpandOptions) -> Result<Rational> {
    Ok(expand_generic(f, xi, opts)?.split_formula())
}

/// `g_y(a) d/dt f(a) - f_y(a) d/dt g(a) + J(1/t, a) t^-2` for `x = 1/t`,
/// known at least below `target`. The identity holds for every series, so
/// a truncated root is treated as exact.
pub fn chain_rule_residual(f: &BiPoly, g: &BiPoly, alpha: &Series, target: &Rational) -> Series {
    let alpha = alpha.with_precision(None);
    let (ft, gt) = (to_t_domain(f), to_t_domain(g));
    let (fy, gy) = (to_t_domain(&f.diff_y()), to_t_domain(&g.diff_y()));
    let jt = to_t_domain(&BiPoly::jacobian(f, g));
    let mut work = target + int(2);
    loop {
        let ev = |p: &crate::tpoly::TPoly| p.eval(&alpha, Some(&work));
        let df = ev(&ft).deriv();
        let dg = ev(&gt).deriv();
        let j = ev(&jt).shift(&int(-2));
        let r = ev(&gy).mul(&df, None).sub(&ev(&fy).mul(&dg, None)).add(&j);
        if r.precision().is_none_or(|p| p >= target) {
            return r;
        }
        work = work * int(2) + int(2);
    }
}

/// The tree of `f - xi` and the classification of its roots against `g`.
#[derive(Clone, Debug)]
pub struct PairAnalysis {
    pub tree: RootTree,
    pub class: RootClassification,
}

pub fn analyze_pair(pair: &PolyPair, xi: &Rational, opts: &ExpandOptions) -> Result<PairAnalysis> {
    with_adaptive_cutoff(&opts.cutoff, |c| {
        let o = ExpandOptions { cutoff: c.clone(), ..opts.clone() };
        let tree = expand_root_tree(&pair.f, xi, &o)?;
        let class = classify_roots(&pair.g, &tree)?;
        Ok(PairAnalysis { tree, class })
    })
}

fn roots_of(a: &PairAnalysis, kind: RootKind) -> impl Iterator<Item = (Rational, &RootInfo)> {
    a.class.roots.iter().filter(move |r| r.kind == kind).map(|r| {
        let n = &a.tree.nodes[r.leaf];
        (int((n.weight * n.multiplicity) as i64), r)
    })
}

/// `(I(f_xi, f_y), I(f_xi, g))` from the minor roots: sums over the
/// related pi-roots, which are final pi-roots when every minor root is
/// related to one.
pub fn i_minor_formulas(pair: &PolyPair, a: &PairAnalysis) -> Result<(Rational, Rational)> {
    pair.require_jacobian()?;
    let mut fy = int(pair.m as i64 - 1);
    let mut fg = int(1);
    for (k, r) in roots_of(a, RootKind::Minor) {
        // each pi-root is shared by `related` roots
        let share = k / int(r.related as i64);
        let d1 = &r.delta - int(1);
        fy += &share * int(r.related as i64 - 1) * &d1;
        fg += share * d1;
    }
    Ok((fy, fg))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorFormula {
    /// `-sum |D| lambda^g`.
    pub lambda_form: Rational,
    /// `n/(m+n) sum |D| (1 - delta)`.
    pub delta_form: Rational,
    /// Every major root is related to a final pi-root.
    pub all_final: bool,
}

impl MajorFormula {
    pub fn agree(&self) -> bool {
        self.lambda_form == self.delta_form
    }
}

/// `I(f_xi, g)` from the major roots, in both forms.
pub fn i_major_formula(pair: &PolyPair, a: &PairAnalysis) -> Result<MajorFormula> {
    pair.require_jacobian()?;
    let mut lf = Rational::zero();
    let mut df = Rational::zero();
    for (k, r) in roots_of(a, RootKind::Major) {
        lf -= &k * &r.ord_g;
        df += k * (int(1) - &r.delta);
    }
    df = df * int(pair.n as i64) / int((pair.m + pair.n) as i64);
    Ok(MajorFormula { lambda_form: lf, delta_form: df, all_final: a.class.all_final(RootKind::Major) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalences {
    /// `I(f_xi, g) = 1`.
    pub intersection_one: bool,
    pub no_minor_roots: bool,
    /// `I(f_xi, f_y) = deg_y f - 1`.
    pub fy_intersection: bool,
}

impl Equivalences {
    /// The computable conditions agree; the field and ring equalities are
    /// equivalent to them and not decided separately.
    pub fn consistent(&self) -> bool {
        self.intersection_one == self.no_minor_roots && self.no_minor_roots == self.fy_intersection
    }

    pub fn all_true(&self) -> bool {
        self.intersection_one && self.no_minor_roots && self.fy_intersection
    }
}

pub fn equivalence_suite(pair: &PolyPair, xi: &Rational, a: &PairAnalysis) -> Result<Equivalences> {
    pair.require_jacobian()?;
    let fx = pair.f.minus_const(xi);
    Ok(Equivalences {
        intersection_one: intersection_resultant(&fx, &pair.g)? == 1,
        no_minor_roots: a.class.count(&a.tree, RootKind::Minor) == 0,
        fy_intersection: intersection_resultant(&fx, &pair.f.diff_y())? + 1 == pair.m,
    })
}

/// `I(f_xi, g) < mn / (m + n)`.
pub fn extension_degree_bound_check(pair: &PolyPair, xi: &Rational) -> Result<bool> {
    pair.require_jacobian()?;
    if pair.m < 2 || pair.n < 2 {
        return Err(Error::Domain("both degrees in y must exceed 1".into()));
    }
    let i = intersection_resultant(&pair.f.minus_const(xi), &pair.g)?;
    Ok(bound_holds(&int(i as i64), pair.m, pair.n))
}

pub fn bound_holds(i: &Rational, m: usize, n: usize) -> bool {
    i < &(int((m * n) as i64) / int((m + n) as i64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericShift {
    pub xi: Rational,
    /// `Res_y(f - xi, f_y)` is not the zero polynomial.
    pub discriminant_nonzero: bool,
    /// A point where `f(x0, y) - xi` has `deg_y f` distinct roots.
    pub sample_x: Rational,
    pub distinct_roots_at_sample: usize,
    pub attempts: usize,
}

/// Certificate that `f - xi` is squarefree in `y`, if it is.
pub fn check_generic(f: &BiPoly, xi: &Rational) -> Result<Option<GenericShift>> {
    let fx = f.minus_const(xi);
    let res = resultant_y(&fx, &f.diff_y())?;
    let Some(d) = res.degree() else { return Ok(None) };
    let m = f.deg_y() as usize;
    for x0 in 0..=(d as i64 + 1) {
        let x0 = int(x0);
        let p = fx.eval_x(&x0);
        if p.degree() != Some(m) {
            continue;
        }
        if let Some((_, e)) = p.squarefree_and_distinct_roots() {
            if e == m {
                return Ok(Some(GenericShift {
                    xi: xi.clone(),
                    discriminant_nonzero: true,
                    sample_x: x0,
                    distinct_roots_at_sample: e,
                    attempts: 1,
                }));
            }
        }
    }
    Ok(None)
}

pub const XI_RANGE: i64 = 1000;
pub const XI_ATTEMPTS: usize = 64;

/// Draws `xi` uniformly from `[-1000, 1000]` until `f - xi` is squarefree.
pub fn pick_generic_xi(f: &BiPoly, seed: u64) -> Result<GenericShift> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=XI_ATTEMPTS {
        let xi = int(uniform(&mut rng, -XI_RANGE, XI_RANGE));
        if let Some(mut c) = check_generic(f, &xi)? {
            c.attempts = attempt;
            return Ok(c);
        }
    }
    Err(Error::RetriesExhausted(XI_ATTEMPTS))
}

pub(crate) fn uniform(rng: &mut impl RngCore, lo: i64, hi: i64) -> i64 {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as i64
}

/// Values of one intersection number along the routes that apply.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Routes {
    pub resultant: Option<Rational>,
    pub root_orders: Option<Rational>,
    pub split: Option<Rational>,
    pub minor: Option<Rational>,
    pub major: Option<Rational>,
    /// `(route, message)` for routes that failed or do not apply.
    pub skipped: Vec<(String, String)>,
}

impl Routes {
    pub fn values(&self) -> Vec<(&'static str, &Rational)> {
        let mut v = Vec::new();
        for (k, x) in [
            ("resultant", &self.resultant),
            ("root_orders", &self.root_orders),
            ("split", &self.split),
            ("minor", &self.minor),
            ("major", &self.major),
        ] {
            if let Some(x) = x {
                v.push((k, x));
            }
        }
        v
    }

    pub fn agree(&self) -> bool {
        let v = self.values();
        v.windows(2).all(|w| w[0].1 == w[1].1)
    }

    fn put(&mut self, route: &str, r: Result<Rational>) -> Option<Rational> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.skipped.push((route.to_string(), e.to_string()));
                None
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct IntersectionReport {
    pub pair: PolyPair,
    pub shift: GenericShift,
    pub is_jacobian_pair: bool,
    /// `I(f, g)`.
    pub plain: Routes,
    /// `I(f_xi, g)`.
    pub fxi_g: Routes,
    /// `I(f_xi, f_y)`.
    pub fxi_fy: Routes,
    pub major_forms_agree: Option<bool>,
    /// Every major root is related to a final pi-root.
    pub major_roots_final: Option<bool>,
}

impl IntersectionReport {
    pub fn agree(&self) -> bool {
        self.plain.agree() && self.fxi_g.agree() && self.fxi_fy.agree() && self.major_forms_agree.unwrap_or(true)
    }
}

fn as_rat(r: Result<usize>) -> Result<Rational> {
    r.map(|v| int(v as i64))
}

pub fn intersection_report(
    f: &BiPoly,
    g: &BiPoly,
    shift: GenericShift,
    opts: &ExpandOptions,
) -> Result<IntersectionReport> {
    let pair = PolyPair::new(f, g)?;
    let xi = shift.xi.clone();
    let fx = pair.f.minus_const(&xi);
    let fy = pair.f.diff_y();
    let mut plain = Routes::default();
    plain.resultant = plain.put("resultant", as_rat(intersection_resultant(&pair.f, &pair.g)));
    plain.root_orders = plain.put("root_orders", intersection_by_root_orders(&pair.f, &pair.g, opts));
    let mut fxi_g = Routes::default();
    fxi_g.resultant = fxi_g.put("resultant", as_rat(intersection_resultant(&fx, &pair.g)));
    fxi_g.root_orders = fxi_g.put("root_orders", intersection_by_root_orders(&fx, &pair.g, opts));
    let mut fxi_fy = Routes::default();
    fxi_fy.resultant = fxi_fy.put("resultant", as_rat(intersection_resultant(&fx, &fy)));
    fxi_fy.root_orders = fxi_fy.put("root_orders", intersection_by_root_orders(&fx, &fy, opts));
    fxi_fy.split = fxi_fy.put("split", i_fxfy_split_formula(&pair.f, &xi, opts));
    let is_jac = pair.is_jacobian_pair();
    let mut major_forms_agree = None;
    let mut major_roots_final = None;
    if is_jac {
        match analyze_pair(&pair, &xi, opts) {
            Ok(a) => {
                let minor = i_minor_formulas(&pair, &a);
                let (mf, mg) = match minor {
                    Ok((x, y)) => (Ok(x), Ok(y)),
                    Err(e) => (Err(e.clone()), Err(e)),
                };
                fxi_fy.minor = fxi_fy.put("minor", mf);
                fxi_g.minor = fxi_g.put("minor", mg);
                let major = i_major_formula(&pair, &a);
                if let Ok(m) = &major {
                    major_forms_agree = Some(m.agree());
                    major_roots_final = Some(m.all_final);
                }
                fxi_g.major = fxi_g.put("major", major.map(|m| m.delta_form));
            }
            Err(e) => {
                fxi_g.skipped.push(("minor".into(), e.to_string()));
                fxi_g.skipped.push(("major".into(), e.to_string()));
                fxi_fy.skipped.push(("minor".into(), e.to_string()));
            }
        }
    } else {
        for r in [&mut fxi_g, &mut fxi_fy] {
            r.skipped.push(("minor".into(), Error::NotJacobianPair.to_string()));
        }
        fxi_g.skipped.push(("major".into(), Error::NotJacobianPair.to_string()));
    }
    Ok(IntersectionReport {
        pair,
        shift,
        is_jacobian_pair: is_jac,
        plain,
        fxi_g,
        fxi_fy,
        major_forms_agree,
        major_roots_final,
    })
}

/// Random polynomial monic in `y` of the given degrees, coefficients in
/// `[-c, c]`.
pub fn random_monic(rng: &mut impl RngCore, deg_y: u32, deg_x: u32, c: i64) -> BiPoly {
    let mut f = BiPoly::term(Rational::one(), 0, deg_y);
    for j in 0..deg_y {
        for i in 0..=deg_x {
            // keep the support sparse-ish
            if rng.next_u32().is_multiple_of(3) {
                continue;
            }
            let v = uniform(rng, -c, c);
            if v != 0 {
                f = f.add(&BiPoly::term(int(v), i, j));
            }
        }
    }
    if f.deg_x() == 0 && deg_x > 0 {
        f = f.add(&BiPoly::term(int(1), deg_x, 0));
    }
    f
}

/// Seeded corpus of [`random_monic`] polynomials with `deg_y` cycling
/// through `1..=max_deg_y`.
pub fn random_monic_corpus(seed: u64, count: usize, max_deg_y: u32, deg_x: u32, c: i64) -> Vec<BiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|k| random_monic(&mut rng, 1 + k as u32 % max_deg_y, deg_x, c)).collect()
}

/// Coefficients of a random polynomial of degree `1..=d`.
fn random_uni(rng: &mut impl RngCore, d: u32, c: i64) -> Vec<i64> {
    let deg = 1 + rng.next_u32() % d;
    let mut v: Vec<i64> = (0..=deg).map(|_| uniform(rng, -c, c)).collect();
    while v[deg as usize] == 0 {
        v[deg as usize] = uniform(rng, -c, c);
    }
    v
}

fn compose_uni(p: &[i64], z: &BiPoly) -> BiPoly {
    let mut acc = BiPoly::zero();
    for c in p.iter().rev() {
        acc = acc.mul(z).add(&BiPoly::constant(int(*c)));
    }
    acc
}

/// A Jacobian pair built from up to three elementary maps
/// `(F, G) -> (F, G + p(F))` and `(F, G) -> (F + q(G), G)` starting at
/// `(x, y)`, normalized to be monic in `y`. Returns `None` when the draw
/// violates the degree bounds.
pub fn random_tame_pair(rng: &mut impl RngCore, max_deg_y: u32, max_deg_x: u32) -> Option<(BiPoly, BiPoly)> {
    let mut f = BiPoly::x();
    let mut g = BiPoly::y();
    let steps = 2 + rng.next_u32() % 2;
    let mut on_g = rng.next_u32().is_multiple_of(2);
    for _ in 0..steps {
        let p = random_uni(rng, 3, 3);
        if on_g {
            g = g.add(&compose_uni(&p, &f));
        } else {
            f = f.add(&compose_uni(&p, &g));
        }
        on_g = !on_g;
    }
    if rng.next_u32().is_multiple_of(2) {
        core::mem::swap(&mut f, &mut g);
    }
    for p in [&f, &g] {
        if p.deg_y() == 0 || p.deg_y() > max_deg_y || p.deg_x() > max_deg_x || !p.is_monic_y() {
            return None;
        }
    }
    Some((f.monicized().ok()?, g.monicized().ok()?))
}

/// Seeded generator of tame pairs, skipping draws outside the bounds.
pub fn tame_pairs(seed: u64, count: usize, max_deg_y: u32, max_deg_x: u32) -> Vec<(BiPoly, BiPoly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(p) = random_tame_pair(&mut rng, max_deg_y, max_deg_x) {
            out.push(p);
        }
    }
    out
}

impl PairAnalysis {
    /// Whether every final split order relative to `g` is below 1.
    pub fn major_deltas_below_one(&self) -> bool {
        self.class.roots.iter().all(|r| r.kind != RootKind::Major || r.delta < int(1))
    }

    /// Whether the minor roots all have split order above 1.
    pub fn minor_deltas_above_one(&self) -> bool {
        self.class.roots.iter().all(|r| r.kind != RootKind::Minor || r.delta > int(1))
    }

    pub fn has_vanishing_roots(&self) -> bool {
        self.class.roots.iter().any(|r| r.kind == RootKind::Vanishing)
    }
}
