//! Case analyses for exceptional degree pairs: enumerate splitting
//! patterns of the major pi-roots and of the principal minor roots and
//! compare the minor-route and major-route values of `I(f_xi, g)`.
//!
//! Model. The `m - K` non-principal roots of `f_xi` share the pi-root
//! `sigma_2` (split order `delta_2 = p/q2`), whose leading form is a
//! product of blocks `(pi^q2 - c)^k`. A block is major when it finalizes at
//! order `delta_1`, and minor when it finalizes at an order above 1 where
//! the f-leading exponent reaches 0. The `K` principal minor roots either
//! finalize together or split once at an order `s >= 1` into at most `u`
//! distinct roots, each of which then finalizes.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{denom_u64, fmt_rational, int, lcm_u64, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseData {
    pub name: String,
    pub n: i64,
    pub m: i64,
    pub m2: i64,
    pub m3: i64,
    pub v3: i64,
    pub v2: i64,
    pub delta2: Rational,
    pub delta1: Rational,
    /// Multiplicity of the principal minor roots in `f`.
    pub principal: i64,
    /// Maximum number of distinct roots at a principal split (`u_s`).
    pub distinct_cap: i64,
    /// `d_3`, when known; `u_s` is stored directly otherwise.
    pub d3: Option<i64>,
    /// Largest split order enumerated for minor finals.
    pub max_order: Rational,
}

impl CaseData {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidCase(s.into()));
        if !(self.m < self.n) {
            return bad("need m < n");
        }
        if !(Rational::zero() < self.delta2 && self.delta2 < self.delta1 && self.delta1 < int(1)) {
            return bad("need 0 < delta2 < delta1 < 1");
        }
        if self.principal <= 0 || self.principal >= self.m || self.distinct_cap <= 0 {
            return bad("principal multiplicity and distinct-root cap must be positive");
        }
        if [self.m2, self.m3, self.v3, self.v2].iter().any(|&x| x <= 0) {
            return bad("M and V data must be positive");
        }
        if (self.m - self.principal) % self.q2() != 0 {
            return bad("the non-principal multiplicity is not a multiple of the ramification");
        }
        if self.max_order <= int(1) {
            return bad("max order must exceed 1");
        }
        Ok(())
    }

    /// Denominator of `delta2`: conjugates per block at `sigma_2`.
    pub fn q2(&self) -> i64 {
        denom_u64(&self.delta2) as i64
    }

    pub fn key(&self) -> String {
        format!("{}x{}", self.n, self.m)
    }
}

pub fn builtin_cases() -> Vec<CaseData> {
    vec![
        CaseData {
            name: "75x50".into(),
            n: 75,
            m: 50,
            m2: 55,
            m3: 73,
            v3: 4,
            v2: 2,
            delta2: rat(1, 5),
            delta1: rat(2, 3),
            principal: 10,
            distinct_cap: 1,
            d3: None,
            max_order: int(10),
        },
        CaseData {
            name: "99x66".into(),
            n: 99,
            m: 66,
            m2: 77,
            m3: 97,
            v3: 8,
            v2: 8,
            delta2: rat(1, 3),
            delta1: rat(4, 9),
            principal: 18,
            distinct_cap: 3,
            d3: None,
            max_order: int(10),
        },
    ]
}

/// Looks up a built-in case by `"NxM"` or `"N,M"`.
pub fn builtin_case(key: &str) -> Option<CaseData> {
    let k = key.replace([',', ' ', '(', ')'], "x").replace("xx", "x");
    let k = k.trim_matches('x');
    builtin_cases().into_iter().find(|c| c.key() == k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BranchKind {
    Major,
    Minor,
}

/// A family of final pi-roots sharing one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub kind: BranchKind,
    /// Number of final pi-roots in the family.
    pub conjugates: i64,
    /// `|D|`: roots of `f_xi` related to each pi-root.
    pub f_mult: i64,
    /// Roots of `g` related to each pi-root.
    pub g_mult: Rational,
    /// Final split order.
    pub delta: Rational,
    pub principal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalPattern {
    /// Order of the principal split, if any.
    pub split_at: Option<Rational>,
    /// `(multiplicity, final order)` of each principal final pi-root.
    pub finals: Vec<(i64, Rational)>,
}

impl PrincipalPattern {
    pub fn describe(&self) -> String {
        let fin: Vec<String> = self.finals.iter().map(|(k, d)| format!("final(k={k},d={})", fmt_rational(d))).collect();
        match &self.split_at {
            None => fin.join(","),
            Some(s) => format!("split@{}[{}]", fmt_rational(s), fin.join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPattern {
    /// Block multiplicities at `sigma_2`, descending.
    pub blocks: Vec<i64>,
    pub principal: PrincipalPattern,
    pub branches: Vec<Branch>,
}

impl SplitPattern {
    pub fn describe(&self) -> String {
        let b: Vec<String> = self.blocks.iter().map(|k| format!("{k}")).collect();
        format!("sigma2{{{}}} principal {}", b.join(","), self.principal.describe())
    }

    pub fn f_total(&self) -> i64 {
        self.branches.iter().map(|b| b.conjugates * b.f_mult).sum()
    }
}

/// `1 + sum (delta - 1)` over final minor pi-roots.
pub fn eval_minor_route(p: &SplitPattern) -> Rational {
    let mut acc = int(1);
    for b in p.branches.iter().filter(|b| b.kind == BranchKind::Minor) {
        acc += int(b.conjugates) * (&b.delta - int(1));
    }
    acc
}

/// `n/(m+n) sum |D| (1 - delta)` over final major pi-roots.
pub fn eval_major_route(p: &SplitPattern, n: i64, m: i64) -> Rational {
    let mut acc = Rational::zero();
    for b in p.branches.iter().filter(|b| b.kind == BranchKind::Major) {
        acc += int(b.conjugates * b.f_mult) * (int(1) - &b.delta);
    }
    acc * int(n) / int(m + n)
}

enum BlockKind {
    Major,
    Minor(Rational),
}

/// A block `(pi^q2 - c)^k` at `sigma_2`: major if it finalizes at
/// `delta_1`, minor if the f-exponent vanishes at an order in `(1, max]`.
fn block_kind(case: &CaseData, k: i64) -> Option<BlockKind> {
    let kk = int(case.principal);
    let b = int(case.m - case.principal);
    let kr = int(k);
    let rest = -&kk + (&b - &kr) * &case.delta2;
    // rest + k delta = m/(m+n) (delta - 1)
    let w = int(case.m) / int(case.m + case.n);
    let major = (-&w - &rest) / (&kr - &w);
    if major == case.delta1 {
        return Some(BlockKind::Major);
    }
    if k >= 2 {
        let d = -rest / &kr;
        if d > int(1) && d <= case.max_order {
            return Some(BlockKind::Minor(d));
        }
    }
    None
}

/// Multisets of even block sizes with `k n / m` integral, summing to
/// `(m - K) / q2`, in descending lexicographic order.
fn block_multisets(case: &CaseData) -> Vec<Vec<i64>> {
    fn rec(rem: i64, max: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>, case: &CaseData) {
        if rem == 0 {
            out.push(acc.clone());
            return;
        }
        let mut k = max.min(rem);
        while k >= 1 {
            if k % 2 == 0 && (k * case.n) % case.m == 0 {
                acc.push(k);
                rec(rem - k, k, acc, out, case);
                acc.pop();
            }
            k -= 1;
        }
    }
    let total = (case.m - case.principal) / case.q2();
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out, case);
    out
}

fn principal_final(k: i64, a: &Rational, floor: &Rational, den: u64, max: &Rational) -> Option<Rational> {
    if k < 2 {
        return None;
    }
    let d = -a / int(k);
    if &d <= floor || d <= int(1) || &d > max {
        return None;
    }
    let orbit = (lcm_u64(den, denom_u64(&d)) / den) as i64;
    if !(k % orbit == 0 || k % orbit == 1) {
        return None;
    }
    Some(d)
}

/// Ways to write `k` as an optional part at `pi = 0` plus groups of `q`
/// equal parts (conjugate roots of `pi^q - c`), all even, with between 2
/// and `u` distinct roots.
fn principal_parts(k: i64, q: i64, u: i64) -> Vec<Vec<i64>> {
    fn rec(rem: i64, max: i64, q: i64, u: i64, acc: &mut Vec<i64>, ndist: i64, out: &mut Vec<Vec<i64>>) {
        if rem == 0 {
            if ndist >= 2 {
                let mut v = acc.clone();
                v.sort_unstable_by(|a, b| b.cmp(a));
                if !out.contains(&v) {
                    out.push(v);
                }
            }
            return;
        }
        let mut sz = max.min(rem / q);
        while sz >= 1 {
            if sz % 2 == 0 && ndist + q <= u {
                for _ in 0..q {
                    acc.push(sz);
                }
                rec(rem - q * sz, sz, q, u, acc, ndist + q, out);
                acc.truncate(acc.len() - q as usize);
            }
            sz -= 1;
        }
    }
    let mut out = Vec::new();
    let mut z = 0;
    while z <= k {
        if z % 2 == 0 {
            let mut acc = Vec::new();
            if z > 0 {
                acc.push(z);
            }
            rec(k - z, k, q, u, &mut acc, (z > 0) as i64, &mut out);
        }
        z += 1;
    }
    out
}

/// Principal minor patterns: a single final, or one split at `s` (with
/// `1 <= s < max`, denominator at most `u`) followed by finals.
pub fn principal_patterns(case: &CaseData) -> Vec<PrincipalPattern> {
    let k = case.principal;
    let a = -int(case.m - case.principal);
    let max = &case.max_order;
    let mut out = Vec::new();
    if let Some(d) = principal_final(k, &a, &Rational::zero(), 1, max) {
        out.push(PrincipalPattern { split_at: None, finals: vec![(k, d)] });
    }
    let mut orders: Vec<Rational> = Vec::new();
    for q in 1..=case.distinct_cap {
        let top = (max * int(q)).to_integer();
        let mut num = Rational::one().to_integer();
        while num <= top {
            let s = Rational::new(num.clone(), q.into());
            if s >= int(1) && &s < max && !orders.contains(&s) {
                orders.push(s);
            }
            num += 1;
        }
    }
    orders.sort();
    for s in orders {
        let den = denom_u64(&s);
        for parts in principal_parts(k, den as i64, case.distinct_cap) {
            let mut finals = Vec::new();
            for &p in &parts {
                let a2 = &a + int(k - p) * &s;
                match principal_final(p, &a2, &s, den, max) {
                    Some(d) => finals.push((p, d)),
                    None => break,
                }
            }
            if finals.len() == parts.len() {
                out.push(PrincipalPattern { split_at: Some(s.clone()), finals });
            }
        }
    }
    out
}

/// All admissible patterns: block multisets at `sigma_2` with at least one
/// major block, combined with every principal pattern.
pub fn enumerate_patterns(case: &CaseData) -> Result<Vec<SplitPattern>> {
    case.validate()?;
    let q2 = case.q2();
    let ratio = int(case.n) / int(case.m);
    let principal = principal_patterns(case);
    let mut out = Vec::new();
    for blocks in block_multisets(case) {
        let mut branches = Vec::new();
        let mut has_major = false;
        let mut ok = true;
        for &k in &blocks {
            let (kind, delta) = match block_kind(case, k) {
                Some(BlockKind::Major) => {
                    has_major = true;
                    (BranchKind::Major, case.delta1.clone())
                }
                Some(BlockKind::Minor(d)) => (BranchKind::Minor, d),
                None => {
                    ok = false;
                    break;
                }
            };
            branches.push(Branch { kind, conjugates: q2, f_mult: k, g_mult: int(k) * &ratio, delta, principal: false });
        }
        if !ok || !has_major {
            continue;
        }
        for pp in &principal {
            let mut b = branches.clone();
            for (k, d) in &pp.finals {
                b.push(Branch {
                    kind: BranchKind::Minor,
                    conjugates: 1,
                    f_mult: *k,
                    g_mult: int(*k) * &ratio,
                    delta: d.clone(),
                    principal: true,
                });
            }
            out.push(SplitPattern { blocks: blocks.clone(), principal: pp.clone(), branches: b });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternVerdict {
    pub pattern: SplitPattern,
    pub minor: Rational,
    pub major: Rational,
    pub contradiction: bool,
    /// Excluded because the principal minor roots split at order 1.
    pub obstructed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseVerdict {
    pub case: CaseData,
    pub patterns: Vec<PatternVerdict>,
    /// Indices of patterns whose two routes agree.
    pub arithmetic_survivors: Vec<usize>,
    /// Arithmetic survivors not excluded by the order-1 obstruction.
    pub survivors: Vec<usize>,
    pub obstruction_applied: bool,
}

impl CaseVerdict {
    pub fn ruled_out(&self) -> bool {
        self.survivors.is_empty()
    }
}

pub fn analyze(case: &CaseData, obstruction: bool) -> Result<CaseVerdict> {
    let mut patterns = Vec::new();
    for p in enumerate_patterns(case)? {
        let minor = eval_minor_route(&p);
        let major = eval_major_route(&p, case.n, case.m);
        let obstructed = obstruction && p.principal.split_at == Some(int(1));
        patterns.push(PatternVerdict { contradiction: minor != major, minor, major, obstructed, pattern: p });
    }
    let arithmetic_survivors: Vec<usize> = (0..patterns.len()).filter(|&i| !patterns[i].contradiction).collect();
    let survivors = arithmetic_survivors.iter().copied().filter(|&i| !patterns[i].obstructed).collect();
    Ok(CaseVerdict { case: case.clone(), patterns, arithmetic_survivors, survivors, obstruction_applied: obstruction })
}
