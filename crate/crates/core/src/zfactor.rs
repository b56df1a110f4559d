//! Factorization of squarefree integer polynomials (Zassenhaus).
//!
//! Pipeline: pick a small prime `p` keeping the polynomial squarefree and of
//! full degree, factor modulo `p` by distinct-degree and Cantor-Zassenhaus
//! equal-degree splitting, lift the factorization quadratically to `p^(2^k)`
//! beyond twice the Landau-Mignotte bound, then recombine subsets of the
//! lifted factors by exact trial multiplication.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of admissible primes tried before keeping the one with fewest
/// modular factors.
pub const PRIME_TRIALS: usize = 5;
/// Seed of the splitting randomness; factorization output does not depend on it.
pub const SPLIT_SEED: u64 = 0x5eed_f00d;

type ZPoly = Vec<BigInt>;
type PPoly = Vec<u64>;

fn trim_z(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn trim_p(mut a: PPoly) -> PPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn to_p(a: &[BigInt], p: u64) -> PPoly {
    let pb = BigInt::from(p);
    trim_p(a.iter().map(|x| u64::try_from(x.mod_floor(&pb)).unwrap()).collect())
}

fn p_sub(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    trim_p(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn p_mul(a: &[u64], b: &[u64], p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim_p(c)
}

fn p_divrem(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim_p(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (db..r.len()).rev() {
        let c = mulmod(r[k], inv, p);
        q[k - db] = c;
        if c == 0 {
            continue;
        }
        for i in 0..=db {
            r[k - db + i] = (r[k - db + i] + p - mulmod(c, b[i], p)) % p;
        }
    }
    r.truncate(db);
    (trim_p(q), trim_p(r))
}

fn p_monic(a: &[u64], p: u64) -> PPoly {
    let inv = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|&x| mulmod(x, inv, p)).collect()
}

fn p_gcd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = p_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        p_monic(&a, p)
    }
}

/// `(s, t)` with `s*a + t*b = 1` modulo `p` for coprime `a`, `b`.
fn p_bezout(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = p_divrem(&r0, &r1, p);
        r0 = core::mem::replace(&mut r1, r);
        let s = p_sub(&s0, &p_mul(&q, &s1, p), p);
        s0 = core::mem::replace(&mut s1, s);
        let t = p_sub(&t0, &p_mul(&q, &t1, p), p);
        t0 = core::mem::replace(&mut t1, t);
    }
    assert_eq!(r0.len(), 1, "factors not coprime modulo p");
    let inv = inv_mod(r0[0], p);
    (s0.iter().map(|&x| mulmod(x, inv, p)).collect(), t0.iter().map(|&x| mulmod(x, inv, p)).collect())
}

fn p_powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> PPoly {
    let mut acc = vec![1u64];
    let base = p_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = p_divrem(&p_mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = p_divrem(&p_mul(&acc, &base, p), m, p).1;
        }
    }
    acc
}

fn p_derivative(a: &[u64], p: u64) -> PPoly {
    trim_p(a.iter().enumerate().skip(1).map(|(i, &x)| mulmod(x, i as u64 % p, p)).collect())
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &[u64], p: u64) -> Vec<(PPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 0;
    while f.len() > 2 * (d + 1) {
        d += 1;
        h = p_powmod(&h, &pe, &f, p);
        let g = p_gcd(&p_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = p_divrem(&f, &g, p).0;
            h = p_divrem(&h, &f, p).1;
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting of a monic product of degree-`d` irreducibles.
fn edf(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<PPoly>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: PPoly = trim_p((0..n).map(|_| rng.next_u64() % p).collect());
        if a.len() < 2 {
            continue;
        }
        let b = p_sub(&p_powmod(&a, &e, f, p), &[1], p);
        let g = p_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = p_divrem(f, &g, p).0;
            edf(&g, d, p, rng, out);
            edf(&p_monic(&h, p), d, p, rng, out);
            return;
        }
    }
}

fn factor_mod_p(f: &[u64], p: u64) -> Vec<PPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ p);
    let mut out = Vec::new();
    for (g, d) in ddf(&p_monic(f, p), p) {
        edf(&g, d, p, &mut rng, &mut out);
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

// Arithmetic modulo a prime power.

fn m_reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim_z(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn z_add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim_z((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn z_sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim_z((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim_z(c)
}

/// Division by a monic polynomial modulo `m`.
fn m_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut r = m_reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for i in 0..=db {
            r[k - db + i] = (&r[k - db + i] - &c * &b[i]).mod_floor(m);
        }
        q[k - db] = c;
    }
    r.truncate(db);
    (trim_z(q), trim_z(r))
}

fn lift_p(a: &[u64]) -> ZPoly {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// One quadratic Hensel step: from a factorization `f = g h` with Bezout
/// pair `(s, t)` modulo `m` to one modulo `m^2`. `h` is monic.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = m_reduce(&z_sub(f, &z_mul(g, h)), &m2);
    let (q, r) = m_divrem_monic(&z_mul(s, &e), h, &m2);
    let g2 = m_reduce(&z_add(&z_add(g, &z_mul(t, &e)), &z_mul(&q, g)), &m2);
    let h2 = m_reduce(&z_add(h, &r), &m2);
    let b = m_reduce(&z_sub(&z_add(&z_mul(s, &g2), &z_mul(t, &h2)), &[BigInt::one()]), &m2);
    let (c, d) = m_divrem_monic(&z_mul(s, &b), &h2, &m2);
    let s2 = m_reduce(&z_sub(s, &d), &m2);
    let t2 = m_reduce(&z_sub(&z_sub(t, &z_mul(t, &b)), &z_mul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc * prod(factors)` (monic factors mod `p`) to modulus
/// `p^(2^steps)`, returning monic lifted factors in the same order.
fn multi_lift(f: &[BigInt], factors: &[PPoly], p: u64, steps: u32) -> Vec<ZPoly> {
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    for _ in 0..steps {
        modulus = &modulus * &modulus;
    }
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc.modinv(&modulus).expect("leading coefficient not invertible");
        return vec![m_reduce(&f.iter().map(|x| x * &inv).collect::<Vec<_>>(), &modulus)];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let lc_p = u64::try_from(f.last().unwrap().mod_floor(&pb)).unwrap();
    let mut gp = vec![lc_p];
    for x in left {
        gp = p_mul(&gp, x, p);
    }
    let mut hp = vec![1u64];
    for x in right {
        hp = p_mul(&hp, x, p);
    }
    let (sp, tp) = p_bezout(&gp, &hp, p);
    let (mut g, mut h, mut s, mut t) = (lift_p(&gp), lift_p(&hp), lift_p(&sp), lift_p(&tp));
    let mut m = pb;
    for _ in 0..steps {
        let r = hensel_step(f, &g, &h, &s, &t, &m);
        g = r.0;
        h = r.1;
        s = r.2;
        t = r.3;
        m = &m * &m;
    }
    let mut out = multi_lift(&g, left, p, steps);
    out.extend(multi_lift(&h, right, p, steps));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim_z(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.sign() == Sign::Minus) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Irreducible factors over `Z` of a squarefree primitive polynomial of
/// positive degree, each primitive with positive leading coefficient.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let f = primitive(f);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let lc = f[n].clone();
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    let mut p = (n as u64 + 2).max(3);
    while tried < PRIME_TRIALS {
        p += 1;
        if !is_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_p(&f, p);
        let g = p_gcd(&fp, &p_derivative(&fp, p), p);
        if g.len() != 1 {
            continue;
        }
        tried += 1;
        let fac = factor_mod_p(&fp, p);
        if fac.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| fac.len() < b.len()) {
            best = Some((p, fac));
        }
    }
    let (p, modular) = best.unwrap();

    // Landau-Mignotte: coefficients of a factor are bounded by
    // 2^n * ||f||_2 <= 2^n * (n+1) * max|a_i|; the lc trick doubles in |lc|.
    let maxc = f.iter().map(|x| x.abs()).max().unwrap();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * maxc * lc.abs() * 2;
    let mut steps = 0u32;
    let mut modulus = BigInt::from(p);
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let mut lifted = multi_lift(&f, &modular, p, steps);

    let mut out = Vec::new();
    let mut rest = f;
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let lcr = rest.last().unwrap().clone();
        for subset in combinations(lifted.len(), s) {
            let mut g = vec![lcr.clone()];
            let mut h = vec![lcr.clone()];
            for (i, fac) in lifted.iter().enumerate() {
                if subset.contains(&i) {
                    g = m_reduce(&z_mul(&g, fac), &modulus);
                } else {
                    h = m_reduce(&z_mul(&h, fac), &modulus);
                }
            }
            let g = symmetric(&g, &modulus);
            let h = symmetric(&h, &modulus);
            let target: ZPoly = rest.iter().map(|x| x * &lcr).collect();
            if z_mul(&g, &h) == target {
                out.push(primitive(&g));
                rest = primitive(&h);
                let mut keep = Vec::new();
                for (i, fac) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(fac);
                    }
                }
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    out.push(rest);
    out
}
