//! Property suites over seeded corpora.

use std::time::{Duration, Instant};

use pjl_core::caselab::{analyze, builtin_case};
use pjl_core::classify::RootKind;
use pjl_core::field::FieldElement;
use pjl_core::intersection::{
    analyze_pair, bound_holds, chain_rule_residual, critical_orders, equivalence_suite, expand_generic,
    i_major_formula, i_minor_formulas, intersection_by_root_orders, intersection_resultant, pick_generic_xi,
    random_monic_corpus, split_lambda_multiset, tame_pairs, PolyPair,
};
use pjl_core::ode::{solve_special_ode, wronskian_d};
use pjl_core::rational::{int, rat, Rational};
use pjl_core::semigroup::{random_delta_sequences, semigroup_member};
use pjl_core::tree::ExpandOptions;
use pjl_core::{BiPoly, Error, UniPoly};
use serde_json::{json, Value};

pub const SUITES: &[&str] = &[
    "split-formula",
    "root-partition",
    "route-agreement",
    "jacobian",
    "chain-rule",
    "bound",
    "semigroup-lemma",
    "ode",
    "membership",
    "caselab",
];

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub seed: u64,
    /// Corpus size; `None` selects the suite default.
    pub count: Option<usize>,
    pub cutoff: Rational,
    pub ext_budget: usize,
}

impl SuiteParams {
    pub fn new(seed: u64) -> Self {
        SuiteParams { seed, count: None, cutoff: int(2), ext_budget: pjl_core::tree::DEFAULT_EXT_BUDGET }
    }

    fn opts(&self) -> ExpandOptions {
        ExpandOptions { ext_budget: self.ext_budget, ..ExpandOptions::new(self.cutoff.clone()) }
    }

    fn count(&self, default: usize) -> usize {
        self.count.unwrap_or(default)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub passed: usize,
    /// Cases not applicable to the property (e.g. a vanishing resultant).
    pub skipped: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            cases: 0,
            passed: 0,
            skipped: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    fn record(&mut self, label: impl Into<String>, r: Result<bool, String>) {
        self.cases += 1;
        match r {
            Ok(true) => self.passed += 1,
            Ok(false) => self.failures.push(label.into()),
            Err(e) => self.failures.push(format!("{}: {e}", label.into())),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "skipped": self.skipped,
            "failures": self.failures,
            "ok": self.ok(),
        })
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {}/{} passed{} [{}]",
            self.suite,
            self.passed,
            self.cases,
            if self.skipped > 0 { format!(", {} skipped", self.skipped) } else { String::new() },
            if self.ok() { "ok" } else { "FAIL" }
        )
    }
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Option<SuiteReport> {
    let t = Instant::now();
    let mut r = match name {
        "split-formula" => split_formula(p),
        "root-partition" => root_partition(p),
        "route-agreement" => route_agreement(p),
        "jacobian" => jacobian(p),
        "chain-rule" => chain_rule(p),
        "bound" => bound(p),
        "semigroup-lemma" => semigroup_lemma(p),
        "ode" => ode(p),
        "membership" => membership(p),
        "caselab" => caselab(),
        _ => return None,
    };
    r.elapsed = t.elapsed();
    Some(r)
}

fn e2s(e: Error) -> String {
    e.to_string()
}

/// Random monic polynomials with `deg_y <= 5`, `deg_x <= 4` and a generic
/// shift for each.
pub fn monic_corpus(p: &SuiteParams, count: usize) -> Vec<(BiPoly, Result<Rational, String>)> {
    random_monic_corpus(p.seed, count, 5, 4, 5)
        .into_iter()
        .enumerate()
        .map(|(k, f)| {
            let xi = pick_generic_xi(&f, p.seed.wrapping_add(k as u64)).map(|s| s.xi).map_err(e2s);
            (f, xi)
        })
        .collect()
}

fn split_formula(p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new("split-formula");
    for (f, xi) in monic_corpus(p, p.count(100)) {
        let res = xi.and_then(|xi| {
            let lhs = expand_generic(&f, &xi, &p.opts()).map_err(e2s)?.split_formula();
            let rhs = intersection_resultant(&f.minus_const(&xi), &f.diff_y()).map_err(e2s)?;
            Ok(lhs == int(rhs as i64))
        });
        r.record(f.to_string(), res);
    }
    r
}

fn root_partition(p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new("root-partition");
    for (f, xi) in monic_corpus(p, p.count(100)) {
        let res = xi.and_then(|xi| {
            let tree = expand_generic(&f, &xi, &p.opts()).map_err(e2s)?;
            let crit = critical_orders(&f, &xi, &p.opts()).map_err(e2s)?;
            Ok(crit == split_lambda_multiset(&tree))
        });
        r.record(f.to_string(), res);
    }
    r
}

fn route_agreement(p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new("route-agreement");
    let want = p.count(100);
    let mut batch = 0u64;
    while r.cases < want && batch < 64 {
        let polys = random_monic_corpus(p.seed.wrapping_add(batch.wrapping_mul(7919)), 2 * want, 4, 4, 5);
        batch += 1;
        for w in polys.chunks(2) {
            if r.cases >= want {
                break;
            }
            let (f, g) = (&w[0], &w[1]);
            match intersection_resultant(f, g) {
                Err(Error::ZeroResultant) => r.skipped += 1,
                Err(e) => r.record(format!("{f} / {g}"), Err(e.to_string())),
                Ok(v) => {
                    let res = intersection_by_root_orders(f, g, &p.opts()).map(|o| o == int(v as i64)).map_err(e2s);
                    r.record(format!("{f} / {g}"), res);
                }
            }
        }
    }
    r
}

/// Tame pairs with `deg_y <= 12` and a generic shift for each.
pub fn tame_corpus(p: &SuiteParams, count: usize) -> Vec<(PolyPair, Result<Rational, String>)> {
    tame_pairs(p.seed, count, 12, 12)
        .into_iter()
        .enumerate()
        .map(|(k, (f, g))| {
            let pair = PolyPair::new(&f, &g).expect("tame pairs are monic");
            let xi = pick_generic_xi(&pair.f, p.seed.wrapping_add(k as u64)).map(|s| s.xi).map_err(e2s);
            (pair, xi)
        })
        .collect()
}

fn label(pair: &PolyPair) -> String {
    format!("({}, {})", pair.f, pair.g)
}

/// Every Jacobian-pair identity at one tame pair.
pub fn jacobian_checks(
    pair: &PolyPair,
    xi: &Rational,
    opts: &ExpandOptions,
) -> Result<Vec<(&'static str, bool)>, String> {
    let fx = pair.f.minus_const(xi);
    let a = analyze_pair(pair, xi, opts).map_err(e2s)?;
    let eq = equivalence_suite(pair, xi, &a).map_err(e2s)?;
    let (fy_minor, fg_minor) = i_minor_formulas(pair, &a).map_err(e2s)?;
    let major = i_major_formula(pair, &a).map_err(e2s)?;
    let fg = intersection_resultant(&fx, &pair.g).map_err(e2s)?;
    let fy = intersection_resultant(&fx, &pair.f.diff_y()).map_err(e2s)?;
    Ok(vec![
        ("jacobian determinant is a nonzero constant", pair.is_jacobian_pair()),
        ("I(f_xi, g) = 1", fg == 1),
        ("no minor roots", a.class.count(&a.tree, RootKind::Minor) == 0),
        ("I(f_xi, f_y) = deg_y f - 1", fy + 1 == pair.m),
        ("equivalences all hold", eq.all_true()),
        ("minor formulas give (deg_y f - 1, 1)", (fy_minor, fg_minor) == (int(pair.m as i64 - 1), int(1))),
        ("major formula gives 1", major.delta_form == int(1) && major.lambda_form == int(1)),
        ("major split orders below 1", a.major_deltas_below_one()),
    ])
}

fn jacobian(p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new("jacobian");
    let opts = ExpandOptions { cutoff: int(1), ..p.opts() };
    for (pair, xi) in tame_corpus(p, p.count(30)) {
        let res = xi.and_then(|xi| jacobian_checks(&pair, &xi, &opts));
        let res = res.map(|checks| match checks.iter().find(|c| !c.1) {
            None => Ok(true),
            Some((name, _)) => Err(format!("fails: {name}")),
        });
        r.record(label(&pair), res.and_then(|x| x));
    }
    r
}

/// Residuals at no fewer than `min_roots` roots of `f - xi_k`, counted with
/// conjugates, for a few generic shifts, vanishing below `order`.
pub fn chain_rule_at_roots(pair: &PolyPair, seed: u64, order: &Rational, min_roots: usize) -> Result<usize, String> {
    let mut seen = 0;
    let mut k = 0u64;
    while seen < min_roots {
        let xi = pick_generic_xi(&pair.f, seed.wrapping_add(1000 * k)).map_err(e2s)?.xi;
        k += 1;
        // the identity holds for any truncation, so a short prefix will do
        let opts = ExpandOptions::new(int(1));
        let tree = expand_generic(&pair.f, &xi, &opts).map_err(e2s)?;
        for l in tree.leaves() {
            let res = chain_rule_residual(&pair.f, &pair.g, &tree.nodes[l].prefix, order);
            if !res.vanishes_below(order) {
                return Err(format!("residual {res} at xi = {xi}"));
            }
            // a Galois representative checks every conjugate at once
            seen += tree.nodes[l].weight;
        }
    }
    Ok(seen)
}

fn chain_rule(p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new("chain-rule");
    for (pair, _) in tame_corpus(p, p.count(30)) {
        let res = chain_rule_at_roots(&pair, p.seed, &int(10), 3).map(|n| n >= 3);
        r.record(label(&pair), res);
    }
    r
}

fn bound(p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new("bound");
    for (pair, xi) in tame_corpus(p, p.count(30)) {
        if pair.m < 2 || pair.n < 2 {
            r.skipped += 1;
            continue;
        }
        let res = xi.and_then(|xi| {
            let i = int(intersection_resultant(&pair.f.minus_const(&xi), &pair.g).map_err(e2s)? as i64);
            if bound_holds(&i, pair.m, pair.n) {
                return Ok(true);
            }
            let b = int((pair.m * pair.n) as i64) / int((pair.m + pair.n) as i64);
            Err(format!("I = {i} not below {b} (m = {}, n = {})", pair.m, pair.n))
        });
        r.record(label(&pair), res);
    }
    r
}

fn semigroup_lemma(p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new("semigroup-lemma");
    for s in random_delta_sequences(p.seed, p.count(20), 4, 200) {
        for k in 2..=s.h() {
            let d = s.delta();
            let t = d[k] + s.m(k);
            let brute = (brute_member(t, &d[1..k]), !brute_member(t - d[0], &d[..k]));
            let res = s.semigroup_lemma_check(k).map(|v| v == (true, true) && v == brute).map_err(e2s);
            r.record(format!("{:?} k={k}", s.delta()), res);
        }
    }
    r
}

/// `(p, l, c)` with `deg p = 1..=4`, `l = 2..=4` and seeded coefficients.
pub fn ode_corpus(seed: u64, per_shape: usize) -> Vec<(UniPoly, usize, FieldElement)> {
    let mut out = Vec::new();
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = |m: i64| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % (2 * m as u64 + 1)) as i64 - m
    };
    for deg in 1..=4usize {
        for l in 2..=4usize {
            for _ in 0..per_shape {
                let mut c: Vec<i64> = (0..deg).map(|_| next(6)).collect();
                let mut lc = next(3);
                if lc == 0 {
                    lc = 1;
                }
                c.push(lc);
                let mut cn = next(5);
                if cn == 0 {
                    cn = 2;
                }
                let cd = 1 + next(2).abs();
                out.push((UniPoly::from_ints(&c), l, FieldElement::from(rat(cn, cd))));
            }
        }
    }
    out
}

/// Plug-back and factorization checks for one solution.
pub fn ode_holds(p: &UniPoly, l: usize, c: &FieldElement) -> Result<bool, String> {
    let m = p.degree().unwrap();
    let s = solve_special_ode(p, l, c, m).map_err(e2s)?;
    let mi = m as i64;
    let plug = wronskian_d(mi, mi * (l as i64 - 1), p, &s.q) == p.pow(l).scale(c);
    let lin = UniPoly::new(vec![s.a.neg_ref(), FieldElement::one()]);
    let cm = c.div_ref(&FieldElement::from_i64(mi));
    let factor = s.q == lin.mul_ref(&p.pow(l - 1)).scale(&cm);
    Ok(plug && factor)
}

fn ode(p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new("ode");
    for (poly, l, c) in ode_corpus(p.seed, p.count(3)) {
        r.record(format!("p = {poly}, l = {l}, c = {c}"), ode_holds(&poly, l, &c));
    }
    r
}

fn membership(p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new("membership");
    let mut state = p.seed | 1;
    let mut next = |m: u64| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % m
    };
    for _ in 0..p.count(200) {
        let gens: Vec<i64> = (0..1 + next(3)).map(|_| 1 + next(40) as i64).collect();
        let target = next(201) as i64;
        let brute = brute_member(target, &gens);
        r.record(format!("{target} in {gens:?}"), Ok(semigroup_member(target, &gens) == brute));
    }
    r
}

/// Exhaustive enumeration of combinations `sum c_i g_i = target`.
pub fn brute_member(target: i64, gens: &[i64]) -> bool {
    fn go(t: i64, gens: &[i64]) -> bool {
        match gens.split_first() {
            None => t == 0,
            Some((&g, rest)) => (0..=t / g).any(|c| go(t - c * g, rest)),
        }
    }
    target >= 0 && go(target, gens)
}

fn caselab() -> SuiteReport {
    let mut r = SuiteReport::new("caselab");
    let c75 = builtin_case("75x50").unwrap();
    let v = analyze(&c75, false).unwrap();
    let pairs: Vec<(Rational, Rational)> = v.patterns.iter().map(|p| (p.minor.clone(), p.major.clone())).collect();
    r.record("75x50 values", Ok(pairs == vec![(int(4), int(8)), (int(6), int(4))]));
    r.record("75x50 ruled out", Ok(v.ruled_out()));
    let c99 = builtin_case("99x66").unwrap();
    let v = analyze(&c99, false).unwrap();
    r.record("99x66 major route 16", Ok(v.patterns.iter().all(|p| p.major == int(16))));
    let minors: Vec<&Rational> = v.patterns.iter().map(|p| &p.minor).collect();
    r.record("99x66 candidates 8/3 and 6 present", Ok(minors.contains(&&rat(8, 3)) && minors.contains(&&int(6))));
    let unique = v.survivors.len() == 1 && {
        let s = &v.patterns[v.survivors[0]].pattern.principal;
        s.split_at == Some(int(1)) && s.finals == vec![(6, int(6)); 3]
    };
    r.record("99x66 unique survivor is the order-1 triple split", Ok(unique));
    let v = analyze(&c99, true).unwrap();
    r.record("99x66 ruled out with the obstruction", Ok(v.survivors.is_empty()));
    r
}
