//! Factorization of square-free primitive integer polynomials (Zassenhaus).
//!
//! Factor modulo a small prime with Cantor-Zassenhaus, Hensel-lift each
//! modular factor past the Mignotte bound, then recombine subsets of lifted
//! factors by trial division over the integers. Degrees here stay small
//! (at most the number of orbits), so exhaustive recombination is fine.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type ModPoly = Vec<u64>;

fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn p_sub(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| {
                let x = a.get(k).copied().unwrap_or(0);
                let y = b.get(k).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn p_add(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| (a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn p_mul(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn p_divrem(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = inv(b[db], p);
    let mut quot = vec![0u64; rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = mulmod(rem[k + db], lead_inv, p);
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - mulmod(c, y, p)) % p;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn p_monic(a: &[u64], p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = inv(l, p);
            a.iter().map(|&c| mulmod(c, li, p)).collect()
        }
    }
}

fn p_gcd(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = p_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    p_monic(&a, p)
}

/// `(s, t)` with `s*a + t*b = 1 (mod p)` for coprime `a`, `b`.
fn p_bezout(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = p_divrem(&r0, &r1, p);
        let s2 = p_sub(&s0, &p_mul(&q, &s1, p), p);
        let t2 = p_sub(&t0, &p_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is a nonzero constant
    let c = inv(r0[0], p);
    let scale = |v: &[u64]| trim(v.iter().map(|&x| mulmod(x, c, p)).collect());
    (scale(&s0), scale(&t0))
}

fn p_derivative(a: &[u64], p: u64) -> ModPoly {
    trim(a.iter().enumerate().skip(1).map(|(k, &c)| mulmod(c, k as u64 % p, p)).collect())
}

fn p_powmod(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> ModPoly {
    let mut result = vec![1u64];
    let (_, mut b) = p_divrem(base, modulus, p);
    for i in 0..exp.bits() {
        if exp.bit(i) {
            result = p_divrem(&p_mul(&result, &b, p), modulus, p).1;
        }
        b = p_divrem(&p_mul(&b, &b, p), modulus, p).1;
    }
    result
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn distinct_degree(f: &[u64], p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 1;
    while f.len() > 2 * d {
        h = p_powmod(&h, &pb, &f, p);
        let g = p_gcd(&p_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            f = p_divrem(&f, &g, p).0;
            h = p_divrem(&h, &f, p).1;
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` (odd `p`).
fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: ModPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = p_sub(&p_powmod(&a, &exp, f, p), &[1], p);
        let g = p_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let rest = p_monic(&p_divrem(f, &g, p).0, p);
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&rest, d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &[u64], p: u64) -> Vec<ModPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let monic = p_monic(f, p);
    distinct_degree(&monic, p)
        .into_iter()
        .flat_map(|(g, d)| equal_degree(&g, d, p, &mut rng))
        .collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn to_mod(f: &[BigInt], p: u64) -> ModPoly {
    trim(f.iter().map(|c| reduce(c, p)).collect())
}

/// Lifts the monic factor `g0` of `f (mod p)` to the unique monic factor of
/// `f (mod p^k)` congruent to it.
fn hensel_lift(f: &[BigInt], g0: &[u64], p: u64, k: u32) -> Vec<BigInt> {
    let fp = to_mod(f, p);
    let (h0, r) = p_divrem(&fp, g0, p);
    debug_assert!(r.is_empty());
    let (s, t) = p_bezout(g0, &h0, p);
    let big = |v: &[u64]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut g = big(g0);
    let mut h = big(&h0);
    let mut q = BigInt::from(p);
    for _ in 1..k {
        let gh = int_mul(&g, &h);
        let n = f.len().max(gh.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let fi = f.get(i).cloned().unwrap_or_default();
                let pi = gh.get(i).cloned().unwrap_or_default();
                let diff = fi - pi;
                debug_assert!((&diff % &q).is_zero());
                diff / &q
            })
            .collect();
        let e = to_mod(&e, p);
        let (quot, dg) = p_divrem(&p_mul(&e, &t, p), g0, p);
        let dh = p_add(&p_mul(&e, &s, p), &p_mul(&quot, &h0, p), p);
        for (i, c) in dg.iter().enumerate() {
            g[i] += &q * BigInt::from(*c);
        }
        if h.len() < dh.len() {
            h.resize(dh.len(), BigInt::zero());
        }
        for (i, c) in dh.iter().enumerate() {
            h[i] += &q * BigInt::from(*c);
        }
        q *= p;
    }
    g.iter().map(|c| c.mod_floor(&q)).collect()
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division over the integers, `None` if `g` does not divide `f`.
fn int_div_exact(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    let mut rem = f.to_vec();
    if rem.len() < g.len() {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dg];
    for k in (0..quot.len()).rev() {
        let (c, r) = rem[k + dg].div_rem(&g[dg]);
        if !r.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in g.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

fn primitive(f: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if f.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    f.into_iter().map(|c| c / &g).collect()
}

fn symmetric(c: &BigInt, modulus: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(modulus);
    if &r > half {
        r - modulus
    } else {
        r
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors over Z of a square-free primitive polynomial with
/// positive leading coefficient (coefficients ascending). Each returned
/// factor is primitive with positive leading coefficient.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut good = 0;
    for p in small_primes() {
        if reduce(&lc, p) == 0 {
            continue;
        }
        let fp = to_mod(f, p);
        if p_gcd(&fp, &p_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let factors = factor_mod_p(&fp, p);
        if factors.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        good += 1;
        if good >= 5 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime keeps f square-free");

    let max_coeff = f.iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * max_coeff;
    let mut k = 1u32;
    let mut modulus = BigInt::from(p);
    while modulus <= &bound * 2 {
        modulus *= p;
        k += 1;
    }
    let half = &modulus / 2;
    let mut lifted: Vec<Vec<BigInt>> = modular.iter().map(|g| hensel_lift(f, g, p, k)).collect();

    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in subsets(lifted.len(), size) {
            let lc_rest = rest.last().expect("nonzero").clone();
            let mut cand = vec![lc_rest];
            for &i in &subset {
                cand = int_mul(&cand, &lifted[i]);
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| symmetric(c, &modulus, &half)).collect();
            let cand = primitive(cand);
            if let Some(q) = int_div_exact(&rest, &cand) {
                out.push(cand);
                rest = q;
                let mut keep = Vec::new();
                for (i, g) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if rest.len() > 1 {
        out.push(primitive(rest));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn product(fs: &[Vec<BigInt>]) -> Vec<BigInt> {
        fs.iter().fold(ints(&[1]), |acc, f| int_mul(&acc, f))
    }

    #[test]
    fn modular_factorization_reconstructs() {
        let f = ints(&[6, 0, -5, 0, 1]); // (x^2-2)(x^2-3)
        for p in [5u64, 7, 11, 13] {
            let fp = to_mod(&f, p);
            let parts = factor_mod_p(&fp, p);
            let prod = parts.iter().fold(vec![1u64], |acc, g| p_mul(&acc, g, p));
            assert_eq!(prod, p_monic(&fp, p), "p = {p}");
        }
    }

    #[test]
    fn splits_product_of_quadratics() {
        let f = ints(&[6, 0, -5, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![ints(&[-3, 0, 1]), ints(&[-2, 0, 1])]);
    }

    #[test]
    fn swinnerton_dyer_style_irreducibles_stay_whole() {
        // x^4 + 1 and x^4 - 10x^2 + 1 split modulo every prime
        assert_eq!(factor_squarefree(&ints(&[1, 0, 0, 0, 1])), vec![ints(&[1, 0, 0, 0, 1])]);
        assert_eq!(factor_squarefree(&ints(&[1, 0, -10, 0, 1])), vec![ints(&[1, 0, -10, 0, 1])]);
    }

    #[test]
    fn non_monic_with_large_coefficients() {
        let a = vec![
            BigInt::parse_bytes(b"-1234567891234567", 10).unwrap(),
            BigInt::parse_bytes(b"98765432123", 10).unwrap(),
            BigInt::from(7777),
        ];
        let b = vec![
            BigInt::parse_bytes(b"-5555555555555551", 10).unwrap(),
            BigInt::parse_bytes(b"-13131313131", 10).unwrap(),
            BigInt::from(9999),
        ];
        let c = ints(&[-7, 3]);
        let f = product(&[a.clone(), b.clone(), c.clone()]);
        let got = factor_squarefree(&f);
        assert_eq!(got.len(), 3);
        assert_eq!(product(&got), f);
        assert!(got.contains(&c));
    }

    #[test]
    fn linear_and_cubic() {
        let f = product(&[ints(&[1, 2]), ints(&[-2, 0, 0, 1]), ints(&[5, -1, 3])]);
        let got = factor_squarefree(&primitive(f.clone()));
        assert_eq!(got.len(), 3);
        assert_eq!(product(&got), f);
    }
}
