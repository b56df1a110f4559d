//! delta-sequences, their derived d/q/M sequences and planar semigroups.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

/// Whether `target` is a nonnegative integer combination of `gens`.
pub fn semigroup_member(target: i64, gens: &[i64]) -> bool {
    if target < 0 {
        return false;
    }
    if target == 0 {
        return true;
    }
    let gens: Vec<usize> = gens.iter().filter(|&&g| g > 0).map(|&g| g as usize).collect();
    let t = target as usize;
    let mut ok = vec![false; t + 1];
    ok[0] = true;
    for i in 1..=t {
        ok[i] = gens.iter().any(|&g| g <= i && ok[i - g]);
    }
    ok[t]
}

/// Which axioms a delta-sequence must satisfy beyond positivity and the
/// strict descent `d_1 > d_2 > ... > d_{h+1} = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Axioms {
    /// `q_i >= 1` for `2 <= i <= h`.
    pub strict: bool,
    /// `delta_i d_i / d_{i+1}` lies in the semigroup of `delta_0..delta_{i-1}`.
    pub semigroup: bool,
}

impl Axioms {
    pub const USER: Axioms = Axioms { strict: false, semigroup: false };
    pub const CORPUS: Axioms = Axioms { strict: true, semigroup: true };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSequence {
    delta: Vec<i64>,
    /// `d[i - 1] = d_i = gcd(delta_0, .., delta_{i-1})` for `1 <= i <= h + 1`.
    d: Vec<i64>,
    /// `q[i - 2] = q_i` for `2 <= i <= h`.
    q: Vec<i64>,
    /// `m[i - 1] = M_i` for `1 <= i <= h`.
    m: Vec<i64>,
}

/// Derives `d`, `q` and `M` for a sequence of positive integers with
/// overall gcd 1.
pub fn derive_dqm(delta: &[i64]) -> Result<DeltaSequence> {
    if delta.is_empty() {
        return Err(Error::InvalidSequence("empty sequence".into()));
    }
    if let Some(x) = delta.iter().find(|&&x| x <= 0) {
        return Err(Error::InvalidSequence(alloc::format!("entry {x} is not positive")));
    }
    let h = delta.len() - 1;
    let mut d = Vec::with_capacity(h + 1);
    let mut acc = 0i64;
    for &x in delta {
        acc = acc.gcd(&x);
        d.push(acc);
    }
    if d[h] != 1 {
        return Err(Error::InvalidSequence("the entries are not coprime".into()));
    }
    let mut q = Vec::new();
    let mut m = Vec::new();
    if h >= 1 {
        m.push(-delta[1]);
    }
    for i in 2..=h {
        let qi = delta[i - 1] * d[i - 2] / d[i - 1] - delta[i];
        q.push(qi);
        m.push(m[i - 2] + qi);
    }
    Ok(DeltaSequence { delta: delta.to_vec(), d, q, m })
}

impl DeltaSequence {
    pub fn new(delta: &[i64], axioms: Axioms) -> Result<Self> {
        let s = derive_dqm(delta)?;
        s.check(axioms)?;
        Ok(s)
    }

    pub fn check(&self, axioms: Axioms) -> Result<()> {
        let h = self.h();
        for i in 1..=h {
            if self.d(i + 1) >= self.d(i) {
                return Err(Error::InvalidSequence(alloc::format!(
                    "d_{} = {} does not drop below d_{} = {}",
                    i + 1,
                    self.d(i + 1),
                    i,
                    self.d(i)
                )));
            }
        }
        if axioms.strict {
            if let Some(i) = (2..=h).find(|&i| self.q(i) < 1) {
                return Err(Error::InvalidSequence(alloc::format!("q_{i} = {} < 1", self.q(i))));
            }
        }
        if axioms.semigroup {
            for i in 1..=h {
                let t = self.delta[i] * self.d(i) / self.d(i + 1);
                if !semigroup_member(t, &self.delta[..i]) {
                    return Err(Error::InvalidSequence(alloc::format!(
                        "delta_{i} d_{i}/d_{} = {t} is outside the semigroup of the earlier entries",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Index of the last entry.
    pub fn h(&self) -> usize {
        self.delta.len() - 1
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    /// `d_i`, `1 <= i <= h + 1`.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i - 1]
    }

    /// `q_i`, `2 <= i <= h`.
    pub fn q(&self, i: usize) -> i64 {
        self.q[i - 2]
    }

    /// `M_i`, `1 <= i <= h`.
    pub fn m(&self, i: usize) -> i64 {
        self.m[i - 1]
    }

    pub fn d_seq(&self) -> &[i64] {
        &self.d
    }

    pub fn q_seq(&self) -> &[i64] {
        &self.q
    }

    pub fn m_seq(&self) -> &[i64] {
        &self.m
    }

    /// `(delta_k + M_k in G(delta_1..delta_{k-1}),
    ///   delta_k + M_k - delta_0 not in G(delta_0..delta_{k-1}))`.
    pub fn semigroup_lemma_check(&self, k: usize) -> Result<(bool, bool)> {
        let h = self.h();
        if k < 2 || k > h {
            return Err(Error::IndexOutOfRange { k, h });
        }
        let t = self.delta[k] + self.m(k);
        let in_part = semigroup_member(t, &self.delta[1..k]);
        let notin_part = !semigroup_member(t - self.delta[0], &self.delta[..k]);
        Ok((in_part, notin_part))
    }
}

/// Degrees `-mu_0, .., -mu_s` of quasi-approximate roots, with the
/// optional bookkeeping `u_s + v_s = d_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSequence {
    pub degrees: Vec<i64>,
    pub u_s: Option<i64>,
    pub v_s: Option<i64>,
}

impl MuSequence {
    pub fn new(degrees: Vec<i64>, u_s: Option<i64>, v_s: Option<i64>) -> Result<Self> {
        let mu = MuSequence { degrees, u_s, v_s };
        mu.normalized()?;
        if let (Some(u), Some(v)) = (u_s, v_s) {
            let s = mu.degrees.len() - 1;
            let ds = mu.d(s);
            if u + v != ds {
                return Err(Error::InvalidSequence(alloc::format!("u_s + v_s = {} but d_s = {ds}", u + v)));
            }
        }
        Ok(mu)
    }

    /// `gcd(-mu_0, .., -mu_{i-1})`.
    pub fn d(&self, i: usize) -> i64 {
        self.degrees[..i].iter().fold(0i64, |a, &b| a.gcd(&b))
    }

    /// The delta-sequence `(-mu_i / d_{s+1})` and the scale `d_{s+1}`.
    pub fn normalized(&self) -> Result<(DeltaSequence, i64)> {
        if self.degrees.len() < 3 {
            return Err(Error::InvalidSequence("need at least three degrees".into()));
        }
        if self.degrees.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidSequence("degrees must be positive".into()));
        }
        let g = self.d(self.degrees.len());
        let scaled: Vec<i64> = self.degrees.iter().map(|x| x / g).collect();
        Ok((DeltaSequence::new(&scaled, Axioms::USER)?, g))
    }

    /// `M_s` of the degrees, in the same units.
    pub fn m_s(&self) -> Result<i64> {
        let (seq, g) = self.normalized()?;
        Ok(seq.m(seq.h()) * g)
    }

    /// The obstruction target `-mu_s + M_s - n` with `n = -mu_0`.
    pub fn obstruction_target(&self) -> Result<i64> {
        let s = self.degrees.len() - 1;
        Ok(self.degrees[s] + self.m_s()? - self.degrees[0])
    }
}

/// Whether `-mu_s + M_s - n` lies outside `G(-mu_0, .., -mu_{s-1})`.
pub fn obstruction_check(mu: &MuSequence) -> Result<bool> {
    let t = mu.obstruction_target()?;
    let s = mu.degrees.len() - 1;
    Ok(!semigroup_member(t, &mu.degrees[..s]))
}

/// Random delta-sequences satisfying [`Axioms::CORPUS`], with `2 <= h <=
/// max_h` and entries at most `max_entry`.
pub fn random_delta_sequences(seed: u64, count: usize, max_h: usize, max_entry: i64) -> Vec<DeltaSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut draws = 0usize;
    while out.len() < count && draws < 1_000_000 {
        draws += 1;
        if let Some(s) = draw_sequence(&mut rng, max_h, max_entry) {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

fn draw_sequence(rng: &mut ChaCha8Rng, max_h: usize, max_entry: i64) -> Option<DeltaSequence> {
    let h = 2 + (rng.next_u32() as usize) % (max_h - 1);
    // d_i / d_{i+1} >= 2 for i = 1..h
    let ratios: Vec<i64> = (0..h).map(|_| 2 + (rng.next_u32() % 3) as i64).collect();
    let mut d = vec![1i64; h + 1];
    for i in (0..h).rev() {
        d[i] = d[i + 1] * ratios[i];
    }
    if d[0] > max_entry {
        return None;
    }
    let mut delta = vec![d[0]];
    for i in 1..=h {
        // delta_i = d_{i+1} k with gcd(k, d_i / d_{i+1}) = 1
        let step = d[i];
        let hi = if i >= 2 { delta[i - 1] * d[i - 2] / d[i - 1] - 1 } else { max_entry };
        let hi = hi.min(max_entry);
        if hi < step {
            return None;
        }
        let mut chosen = None;
        for _ in 0..32 {
            let k = 1 + (rng.next_u64() % (hi / step) as u64) as i64;
            let x = k * step;
            if k.gcd(&ratios[i - 1]) == 1 && semigroup_member(x * ratios[i - 1], &delta) {
                chosen = Some(x);
                break;
            }
        }
        delta.push(chosen?);
    }
    DeltaSequence::new(&delta, Axioms::CORPUS).ok()
}
