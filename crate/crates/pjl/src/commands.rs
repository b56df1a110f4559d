use std::fmt::Write as _;

use anyhow::{bail, Result};
use serde_json::{json, Value};

use pjl_core::caselab::{analyze, builtin_cases, CaseData};
use pjl_core::classify::classify_roots;
use pjl_core::field::FieldElement;
use pjl_core::intersection::{check_generic, intersection_report, pick_generic_xi, Routes};
use pjl_core::rational::{fmt_rational, Rational};
use pjl_core::semigroup::{semigroup_member, Axioms, DeltaSequence};
use pjl_core::tree::{default_cutoff, expand_adaptive, expand_root_tree, ExpandOptions, RootTree, DEFAULT_EXT_BUDGET};
use pjl_core::{parse_poly, BiPoly, UniPoly};

use crate::json::{self, document, rat};
use crate::verify::{run_suite, SuiteParams, SUITES};

/// Exit code for a detected mathematical contradiction.
pub const EXIT_CONTRADICTION: i32 = 1;
/// Exit code for usage and input errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Fixed cutoff order; `None` starts from a heuristic and doubles as
    /// needed.
    pub cutoff: Option<Rational>,
    pub ext_budget: usize,
    pub seed: u64,
    pub json: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { cutoff: None, ext_budget: DEFAULT_EXT_BUDGET, seed: 0, json: false }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cutoff.as_ref().is_some_and(|c| c <= &Rational::from_integer(0.into())) {
            bail!("cutoff must be positive");
        }
        if self.ext_budget < 1 {
            bail!("extension budget must be at least 1");
        }
        Ok(())
    }

    fn expand(&self, f: &BiPoly, xi: &Rational) -> pjl_core::Result<RootTree> {
        match &self.cutoff {
            Some(c) => {
                let o = ExpandOptions { ext_budget: self.ext_budget, ..ExpandOptions::new(c.clone()) };
                expand_root_tree(f, xi, &o)
            }
            None => {
                let o = ExpandOptions { ext_budget: self.ext_budget, ..ExpandOptions::new(default_cutoff(f, xi)) };
                expand_adaptive(f, xi, &o)
            }
        }
    }

    fn start_options(&self) -> ExpandOptions {
        let c = self.cutoff.clone().unwrap_or_else(|| Rational::from_integer(2.into()));
        ExpandOptions { ext_budget: self.ext_budget, ..ExpandOptions::new(c) }
    }
}

/// Result of one command: text for humans, a JSON document, and the exit
/// code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub exit: i32,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, exit: 0 }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).unwrap()
        } else {
            self.text.clone()
        }
    }
}

pub fn parse_input(text: &str, what: &str) -> Result<BiPoly> {
    parse_poly(text).map_err(|e| anyhow::anyhow!("{what}: {e}"))
}

fn choose_xi(f: &BiPoly, xi: Option<Rational>, seed: u64) -> Result<Rational> {
    match xi {
        Some(x) => Ok(x),
        None => Ok(pick_generic_xi(f, seed)?.xi),
    }
}

pub fn tree_text(t: &RootTree) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "f - xi with f = {}, xi = {}, cutoff {}", t.f, fmt_rational(&t.xi), fmt_rational(&t.cutoff));
    fn walk(t: &RootTree, i: usize, depth: usize, s: &mut String) {
        let _ = writeln!(s, "{}{}", "  ".repeat(depth), t.describe(i));
        for &c in &t.nodes[i].children {
            walk(t, c, depth + 1, s);
        }
    }
    walk(t, 0, 0, &mut s);
    let _ = writeln!(s, "split formula -sum (e-1) lambda = {}", fmt_rational(&t.split_formula()));
    s
}

pub fn cmd_expand(f: &str, xi: Option<Rational>, cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let f = parse_input(f, "f")?;
    if !f.is_monic_y() {
        bail!("f must be monic in y");
    }
    let xi = choose_xi(&f, xi, cfg.seed)?;
    let t = cfg.expand(&f, &xi)?;
    let mut doc = json::tree_to_json(&t);
    doc["split_formula"] = rat(&t.split_formula());
    Ok(Outcome::ok(tree_text(&t), doc))
}

/// Loads a serialized tree and reports the same analysis as `expand`, with
/// an optional classification of its roots against `g`.
pub fn cmd_tree(doc: &Value, g: Option<&str>) -> Result<Outcome> {
    let t = json::tree_from_json(doc)?;
    let mut text = tree_text(&t);
    let mut out = json::tree_to_json(&t);
    out["split_formula"] = rat(&t.split_formula());
    if let Some(g) = g {
        let g = parse_input(g, "g")?;
        let c = classify_roots(&g, &t)?;
        let roots: Vec<Value> = c
            .roots
            .iter()
            .map(|r| {
                let _ = writeln!(
                    text,
                    "leaf {}: {} (ord g = {}, delta = {}, related {})",
                    r.leaf,
                    r.kind.name(),
                    fmt_rational(&r.ord_g),
                    fmt_rational(&r.delta),
                    r.related
                );
                json!({
                    "leaf": r.leaf,
                    "kind": r.kind.name(),
                    "ord_g": rat(&r.ord_g),
                    "delta": rat(&r.delta),
                    "final_node": r.final_node,
                    "related": r.related,
                })
            })
            .collect();
        out["classification"] = Value::Array(roots);
    }
    Ok(Outcome::ok(text, out))
}

fn routes_json(r: &Routes) -> Value {
    let mut m = serde_json::Map::new();
    for (k, v) in r.values() {
        m.insert(k.into(), rat(v));
    }
    let skipped: Vec<Value> = r.skipped.iter().map(|(k, why)| json!({ "route": k, "reason": why })).collect();
    json!({ "values": m, "skipped": skipped, "agree": r.agree() })
}

fn routes_text(name: &str, r: &Routes) -> String {
    let vals: Vec<String> = r.values().iter().map(|(k, v)| format!("{k}={}", fmt_rational(v))).collect();
    let mut s = format!("{name}: {} [{}]\n", vals.join(" "), if r.agree() { "agree" } else { "DISAGREE" });
    for (k, why) in &r.skipped {
        let _ = writeln!(s, "  {k} skipped: {why}");
    }
    s
}

pub fn cmd_intersect(f: &str, g: &str, xi: Option<Rational>, cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let f = parse_input(f, "f")?;
    let g = parse_input(g, "g")?;
    for (name, p) in [("f", &f), ("g", &g)] {
        if !p.is_monic_y() {
            bail!("{name} must be monic in y (up to a constant factor)");
        }
    }
    let shift = match xi {
        Some(x) => match check_generic(&f, &x)? {
            Some(s) => s,
            None => bail!("xi = {} is a critical value: f - xi is not squarefree in y", fmt_rational(&x)),
        },
        None => pick_generic_xi(&f, cfg.seed)?,
    };
    let r = intersection_report(&f, &g, shift, &cfg.start_options())?;
    let mut text = String::new();
    let _ = writeln!(text, "f = {}\ng = {}", r.pair.f, r.pair.g);
    let _ = writeln!(
        text,
        "deg_y f = {}, deg_y g = {}, jacobian = {} ({})",
        r.pair.m,
        r.pair.n,
        r.pair.jacobian,
        if r.is_jacobian_pair { "Jacobian pair" } else { "not a Jacobian pair" }
    );
    let _ = writeln!(text, "xi = {} (certified at x = {})", fmt_rational(&r.shift.xi), fmt_rational(&r.shift.sample_x));
    text += &routes_text("I(f, g)", &r.plain);
    text += &routes_text("I(f_xi, g)", &r.fxi_g);
    text += &routes_text("I(f_xi, f_y)", &r.fxi_fy);
    if let Some(a) = r.major_forms_agree {
        let _ = writeln!(text, "major formula forms agree: {a}");
    }
    let _ = writeln!(text, "agreement: {}", r.agree());
    let doc = document(
        "intersection_report",
        json!({
            "f": pjl_core::parse::to_text(&r.pair.f),
            "g": pjl_core::parse::to_text(&r.pair.g),
            "m": r.pair.m,
            "n": r.pair.n,
            "jacobian": pjl_core::parse::to_text(&r.pair.jacobian),
            "is_jacobian_pair": r.is_jacobian_pair,
            "shift": {
                "xi": rat(&r.shift.xi),
                "discriminant_nonzero": r.shift.discriminant_nonzero,
                "sample_x": rat(&r.shift.sample_x),
                "distinct_roots_at_sample": r.shift.distinct_roots_at_sample,
                "attempts": r.shift.attempts,
            },
            "i_f_g": routes_json(&r.plain),
            "i_fxi_g": routes_json(&r.fxi_g),
            "i_fxi_fy": routes_json(&r.fxi_fy),
            "major_forms_agree": r.major_forms_agree,
            "major_roots_final": r.major_roots_final,
            "agree": r.agree(),
        }),
    );
    Ok(Outcome::ok(text, doc))
}

pub fn cmd_caselab_list() -> Outcome {
    let cases = builtin_cases();
    let mut text = String::new();
    for c in &cases {
        let _ = writeln!(
            text,
            "{}: n={} m={} M2={} M3={} V3={} V2={} delta2={} delta1={} principal={} u={}",
            c.key(),
            c.n,
            c.m,
            c.m2,
            c.m3,
            c.v3,
            c.v2,
            fmt_rational(&c.delta2),
            fmt_rational(&c.delta1),
            c.principal,
            c.distinct_cap
        );
    }
    let list: Vec<Value> = cases.iter().map(json::case_to_json).collect();
    Outcome::ok(text, document("case_list", json!({ "cases": list })))
}

pub fn cmd_caselab_analyze(case: &CaseData, obstruction: bool) -> Result<Outcome> {
    let v = analyze(case, obstruction)?;
    let mut text = String::new();
    let _ = writeln!(text, "case {} ({} patterns)", case.key(), v.patterns.len());
    for (i, p) in v.patterns.iter().enumerate() {
        let tag = if !p.contradiction {
            if p.obstructed {
                "equal, excluded by the order-1 obstruction"
            } else {
                "SURVIVES"
            }
        } else {
            "contradiction"
        };
        let _ = writeln!(
            text,
            "  [{i}] {}: minor route {} vs major route {}: {tag}",
            p.pattern.describe(),
            fmt_rational(&p.minor),
            fmt_rational(&p.major)
        );
    }
    let _ = writeln!(
        text,
        "survivors: {} (arithmetic: {}); {}",
        v.survivors.len(),
        v.arithmetic_survivors.len(),
        if v.ruled_out() { "the case is ruled out" } else { "the case is not ruled out" }
    );
    let exit = if v.ruled_out() { EXIT_CONTRADICTION } else { 0 };
    Ok(Outcome { text, json: json::verdict_to_json(&v), exit })
}

pub fn cmd_semigroup(delta: &[i64], strict: bool) -> Result<Outcome> {
    let axioms = if strict { Axioms::CORPUS } else { Axioms::USER };
    let s = DeltaSequence::new(delta, axioms)?;
    let mut text = format!(
        "delta = {:?}\nd = {:?}\nq = {:?} (q_2..q_h)\nM = {:?} (M_1..M_h)\n",
        s.delta(),
        s.d_seq(),
        s.q_seq(),
        s.m_seq()
    );
    let mut lemma = Vec::new();
    for k in 2..=s.h() {
        let (a, b) = s.semigroup_lemma_check(k)?;
        let _ = writeln!(text, "k={k}: delta_k + M_k = {} in_part={a} notin_part={b}", s.delta()[k] + s.m(k));
        lemma.push(json!({ "k": k, "target": s.delta()[k] + s.m(k), "in_part": a, "notin_part": b }));
    }
    let doc = document(
        "delta_sequence",
        json!({
            "delta": s.delta(),
            "d": s.d_seq(),
            "q": s.q_seq(),
            "m": s.m_seq(),
            "strict": strict,
            "lemma": lemma,
        }),
    );
    Ok(Outcome::ok(text, doc))
}

pub fn cmd_member(target: i64, gens: &[i64]) -> Result<Outcome> {
    if gens.iter().any(|&g| g <= 0) {
        bail!("generators must be positive");
    }
    let m = semigroup_member(target, gens);
    Ok(Outcome::ok(
        format!("{target} {} the semigroup generated by {gens:?}\n", if m { "is in" } else { "is not in" }),
        document("membership", json!({ "target": target, "generators": gens, "member": m })),
    ))
}

/// Reads a polynomial in one variable written with `pi` or `x`.
pub fn parse_pi_poly(text: &str) -> Result<UniPoly> {
    let f = parse_input(&text.replace("pi", "x"), "p")?;
    if f.deg_y() > 0 {
        bail!("p must be a polynomial in pi alone");
    }
    Ok(f.y_coeffs().into_iter().next().unwrap_or_else(UniPoly::zero))
}

pub fn cmd_ode(p: &str, l: usize, c: &Rational, m: Option<usize>) -> Result<Outcome> {
    let p = parse_pi_poly(p)?;
    let m = m.or(p.degree()).unwrap_or(0);
    let c = FieldElement::from(c.clone());
    let s = pjl_core::ode::solve_special_ode(&p, l, &c, m)?;
    let text = format!("q = {}\na = {}\nD({m}, {}, p, q) = c p^{l} holds\n", s.q.display("pi"), s.a, m * (l - 1));
    let coeffs: Vec<Value> = s.q.coeffs().iter().map(|x| json!(x.to_string())).collect();
    let doc = document(
        "ode_solution",
        json!({ "p": p.display("pi"), "l": l, "m": m, "c": c.to_string(), "q": coeffs, "a": s.a.to_string() }),
    );
    Ok(Outcome::ok(text, doc))
}

pub fn cmd_verify(suite: &str, count: Option<usize>, cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut params = SuiteParams::new(cfg.seed);
    params.count = count;
    params.ext_budget = cfg.ext_budget;
    if let Some(c) = &cfg.cutoff {
        params.cutoff = c.clone();
    }
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut all_ok = true;
    for name in names {
        let Some(r) = run_suite(name, &params) else {
            bail!("unknown suite {name:?}; expected one of {} or all", SUITES.join(", "));
        };
        text += &r.summary();
        text.push('\n');
        for f in r.failures.iter().take(10) {
            let _ = writeln!(text, "  failed: {f}");
        }
        all_ok &= r.ok();
        reports.push(r.to_json());
    }
    let doc = document("verify", json!({ "seed": cfg.seed, "suites": reports, "ok": all_ok }));
    Ok(Outcome { text, json: doc, exit: if all_ok { 0 } else { EXIT_CONTRADICTION } })
}
