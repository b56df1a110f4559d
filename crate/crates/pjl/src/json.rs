//! JSON encodings. Rationals are `"p/q"` strings; algebraic numbers are
//! `{"field": i, "coords": [...]}` with `i` indexing the tower table of the
//! enclosing document. Maps use sorted keys.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use pjl_core::caselab::{CaseData, CaseVerdict};
use pjl_core::field::{Field, FieldElement};
use pjl_core::parse::to_text;
use pjl_core::rational::{fmt_rational, parse_rational};
use pjl_core::series::Series;
use pjl_core::tree::{NodeStatus, RootTree, TreeNode};
use pjl_core::{parse_poly, Rational, UniPoly};

pub const SCHEMA: &str = "pjl/1";

pub fn rat(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn opt_rat(r: &Option<Rational>) -> Value {
    r.as_ref().map_or(Value::Null, rat)
}

pub fn read_rat(v: &Value) -> Result<Rational> {
    let s = v.as_str().ok_or_else(|| anyhow!("expected a rational string, got {v}"))?;
    parse_rational(s).ok_or_else(|| anyhow!("malformed rational {s:?}"))
}

fn read_opt_rat(v: &Value) -> Result<Option<Rational>> {
    if v.is_null() {
        Ok(None)
    } else {
        read_rat(v).map(Some)
    }
}

/// Wraps a document body with the schema tag.
pub fn document(kind: &str, body: Value) -> Value {
    let mut m = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    Value::Object(m)
}

pub fn check_schema(v: &Value, kind: &str) -> Result<()> {
    if v.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        bail!("missing or unsupported schema tag (expected {SCHEMA:?})");
    }
    if v.get("kind").and_then(Value::as_str) != Some(kind) {
        bail!("expected a {kind:?} document");
    }
    Ok(())
}

/// Tower levels referenced by a document, parents before children.
#[derive(Default)]
pub struct Towers {
    levels: Vec<Field>,
}

impl Towers {
    pub fn index(&mut self, f: &Field) -> Option<usize> {
        if f.is_rationals() {
            return None;
        }
        for level in f.chain() {
            if !self.levels.iter().any(|l| l.same(&level)) {
                self.levels.push(level);
            }
        }
        self.levels.iter().position(|l| l.same(f))
    }

    pub fn element(&mut self, e: &FieldElement) -> Value {
        match e {
            FieldElement::Rat(r) => rat(r),
            FieldElement::Alg(f, c) => {
                let i = self.index(f);
                let coords: Vec<Value> = c.iter().map(|x| self.element(x)).collect();
                json!({ "field": i, "coords": coords })
            }
        }
    }

    pub fn poly(&mut self, p: &UniPoly) -> Value {
        Value::Array(p.coeffs().iter().map(|c| self.element(c)).collect())
    }

    pub fn series(&mut self, s: &Series) -> Value {
        let terms: Vec<Value> = s.terms().iter().map(|(e, c)| json!([rat(e), self.element(c)])).collect();
        json!({ "terms": terms, "precision": s.precision().map_or(Value::Null, rat) })
    }

    /// The tower table; parents precede children.
    pub fn table(&mut self) -> Value {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.levels.len() {
            let l = self.levels[i].clone();
            let parent = self.index(l.parent().unwrap());
            let modulus = self.poly(&l.modulus());
            out.push(json!({ "name": l.name(), "parent": parent, "modulus": modulus }));
            i += 1;
        }
        Value::Array(out)
    }
}

/// Rebuilds a tower table.
pub struct TowerReader {
    levels: Vec<Field>,
}

impl TowerReader {
    pub fn new(table: &Value) -> Result<Self> {
        let mut r = TowerReader { levels: Vec::new() };
        for entry in table.as_array().ok_or_else(|| anyhow!("towers must be an array"))? {
            let parent = match &entry["parent"] {
                Value::Null => Field::rationals(),
                v => r.level(v)?.clone(),
            };
            let modulus = r.poly(&entry["modulus"])?;
            let name = entry["name"].as_str().unwrap_or("a");
            if modulus.degree().unwrap_or(0) < 2 || !modulus.lc().unwrap().is_one() {
                bail!("tower modulus must be monic of degree at least 2");
            }
            r.levels.push(parent.extend_named(&modulus, name, usize::MAX)?);
        }
        Ok(r)
    }

    fn level(&self, v: &Value) -> Result<&Field> {
        let i = v.as_u64().ok_or_else(|| anyhow!("bad field index {v}"))? as usize;
        self.levels.get(i).ok_or_else(|| anyhow!("field index {i} out of range"))
    }

    pub fn field(&self, v: &Value) -> Result<Field> {
        match v {
            Value::Null => Ok(Field::rationals()),
            v => self.level(v).cloned(),
        }
    }

    pub fn element(&self, v: &Value) -> Result<FieldElement> {
        match v {
            Value::String(_) => Ok(FieldElement::Rat(read_rat(v)?)),
            Value::Object(_) => {
                let f = self.level(&v["field"])?;
                let coords = v["coords"]
                    .as_array()
                    .ok_or_else(|| anyhow!("coords must be an array"))?
                    .iter()
                    .map(|c| self.element(c))
                    .collect::<Result<Vec<_>>>()?;
                if coords.len() != f.degree() {
                    bail!("expected {} coordinates, got {}", f.degree(), coords.len());
                }
                Ok(FieldElement::from_coords(f, coords))
            }
            _ => bail!("malformed field element {v}"),
        }
    }

    pub fn poly(&self, v: &Value) -> Result<UniPoly> {
        let c = v.as_array().ok_or_else(|| anyhow!("polynomial must be an array"))?;
        Ok(UniPoly::new(c.iter().map(|x| self.element(x)).collect::<Result<_>>()?))
    }

    pub fn series(&self, v: &Value) -> Result<Series> {
        let terms = v["terms"]
            .as_array()
            .ok_or_else(|| anyhow!("series terms must be an array"))?
            .iter()
            .map(|t| Ok((read_rat(&t[0])?, self.element(&t[1])?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series::from_terms(&terms, read_opt_rat(&v["precision"])?))
    }
}

pub fn tree_to_json(t: &RootTree) -> Value {
    let mut tw = Towers::default();
    let nodes: Vec<Value> = t
        .nodes
        .iter()
        .map(|n| {
            json!({
                "status": n.status.name(),
                "prefix": tw.series(&n.prefix),
                "delta": opt_rat(&n.delta),
                "lambda": opt_rat(&n.lambda),
                "leading_form": n.leading_form.as_ref().map_or(Value::Null, |p| tw.poly(p)),
                "e": n.e,
                "multiplicity": n.multiplicity,
                "conjugates": n.conjugates,
                "weight": n.weight,
                "parent": n.parent,
                "children": n.children,
                "field": tw.index(&n.field),
            })
        })
        .collect();
    let towers = tw.table();
    document(
        "root_tree",
        json!({
            "f": to_text(&t.f),
            "xi": rat(&t.xi),
            "cutoff": rat(&t.cutoff),
            "towers": towers,
            "nodes": nodes,
        }),
    )
}

fn read_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| anyhow!("{what} must be a nonnegative integer"))
}

pub fn tree_from_json(v: &Value) -> Result<RootTree> {
    check_schema(v, "root_tree")?;
    let f = parse_poly(v["f"].as_str().ok_or_else(|| anyhow!("missing f"))?)?;
    let tr = TowerReader::new(&v["towers"]).context("reading towers")?;
    let mut nodes = Vec::new();
    for (i, n) in v["nodes"].as_array().ok_or_else(|| anyhow!("missing nodes"))?.iter().enumerate() {
        let status =
            n["status"].as_str().and_then(NodeStatus::from_name).ok_or_else(|| anyhow!("node {i}: bad status"))?;
        let leading_form = match &n["leading_form"] {
            Value::Null => None,
            p => Some(tr.poly(p)?),
        };
        let children = n["children"]
            .as_array()
            .ok_or_else(|| anyhow!("node {i}: children must be an array"))?
            .iter()
            .map(|c| read_usize(c, "child index"))
            .collect::<Result<Vec<_>>>()?;
        nodes.push(TreeNode {
            status,
            prefix: tr.series(&n["prefix"]).with_context(|| format!("node {i}"))?,
            delta: read_opt_rat(&n["delta"])?,
            lambda: read_opt_rat(&n["lambda"])?,
            leading_form,
            e: read_usize(&n["e"], "e")?,
            multiplicity: read_usize(&n["multiplicity"], "multiplicity")?,
            conjugates: read_usize(&n["conjugates"], "conjugates")?,
            weight: read_usize(&n["weight"], "weight")?,
            parent: match &n["parent"] {
                Value::Null => None,
                p => Some(read_usize(p, "parent")?),
            },
            children,
            field: tr.field(&n["field"])?,
        });
    }
    let len = nodes.len();
    for (i, n) in nodes.iter().enumerate() {
        if n.parent.is_some_and(|p| p >= len) || n.children.iter().any(|&c| c >= len || c <= i) {
            bail!("node {i}: links out of range");
        }
    }
    Ok(RootTree { f, xi: read_rat(&v["xi"])?, cutoff: read_rat(&v["cutoff"])?, nodes })
}

pub fn case_to_json(c: &CaseData) -> Value {
    json!({
        "name": c.name,
        "n": c.n,
        "m": c.m,
        "m2": c.m2,
        "m3": c.m3,
        "v3": c.v3,
        "v2": c.v2,
        "delta2": rat(&c.delta2),
        "delta1": rat(&c.delta1),
        "principal": c.principal,
        "distinct_cap": c.distinct_cap,
        "d3": c.d3,
        "max_order": rat(&c.max_order),
    })
}

pub fn case_from_json(v: &Value) -> Result<CaseData> {
    let int = |k: &str| v[k].as_i64().ok_or_else(|| anyhow!("case field {k:?} must be an integer"));
    let c = CaseData {
        name: v["name"].as_str().unwrap_or("user").to_string(),
        n: int("n")?,
        m: int("m")?,
        m2: int("m2")?,
        m3: int("m3")?,
        v3: int("v3")?,
        v2: int("v2")?,
        delta2: read_rat(&v["delta2"]).context("delta2")?,
        delta1: read_rat(&v["delta1"]).context("delta1")?,
        principal: int("principal")?,
        distinct_cap: int("distinct_cap")?,
        d3: v["d3"].as_i64(),
        max_order: match &v["max_order"] {
            Value::Null => pjl_core::rational::int(10),
            x => read_rat(x)?,
        },
    };
    c.validate()?;
    Ok(c)
}

pub fn verdict_to_json(v: &CaseVerdict) -> Value {
    let patterns: Vec<Value> = v
        .patterns
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let branches: Vec<Value> = p
                .pattern
                .branches
                .iter()
                .map(|b| {
                    json!({
                        "kind": match b.kind {
                            pjl_core::caselab::BranchKind::Major => "major",
                            pjl_core::caselab::BranchKind::Minor => "minor",
                        },
                        "conjugates": b.conjugates,
                        "f_mult": b.f_mult,
                        "g_mult": rat(&b.g_mult),
                        "delta": rat(&b.delta),
                        "principal": b.principal,
                    })
                })
                .collect();
            json!({
                "index": i,
                "description": p.pattern.describe(),
                "blocks": p.pattern.blocks,
                "principal_split": opt_rat(&p.pattern.principal.split_at),
                "branches": branches,
                "i_fxg_minor": rat(&p.minor),
                "i_fxg_major": rat(&p.major),
                "contradiction": p.contradiction,
                "obstructed": p.obstructed,
            })
        })
        .collect();
    document(
        "case_verdict",
        json!({
            "case": case_to_json(&v.case),
            "patterns": patterns,
            "arithmetic_survivors": v.arithmetic_survivors,
            "survivors": v.survivors,
            "obstruction_applied": v.obstruction_applied,
            "ruled_out": v.ruled_out(),
        }),
    )
}
