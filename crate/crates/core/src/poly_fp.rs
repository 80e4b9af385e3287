//! Dense polynomials over a prime field GF(p), coefficients low-to-high.
//!
//! Only what the field constructors need: modular products and powers,
//! gcd, the irreducibility test, and primitivity of `X`.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `f` (not necessarily monic).
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let df = degree(f).expect("division by the zero polynomial");
    let lead_inv = inv_mod(f[df], p) as u64;
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let c = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - df;
        for (i, &fc) in f[..=df].iter().enumerate() {
            let t = c * fc as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - t) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn powmod(a: &[u32], mut e: u128, f: &[u32], p: u32) -> Poly {
    let mut result: Poly = rem(&[1], f, p);
    let mut base = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base, f, p);
        }
        base = mulmod(&base, &base, f, p);
        e >>= 1;
    }
    result
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Irreducibility of a polynomial of degree `m ≥ 1` over GF(p):
/// gcd(X^{p^k} − X, f) = 1 for 1 ≤ k < m and f | X^{p^m} − X.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = match degree(f) {
        Some(0) | None => return false,
        Some(m) => m,
    };
    if m == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut frob = rem(&x, f, p);
    for k in 1..=m {
        frob = powmod(&frob, p as u128, f, p);
        let diff = sub(&frob, &x, p);
        if k < m {
            let g = gcd(f, &diff, p);
            if degree(&g) != Some(0) {
                return false;
            }
        } else if !rem(&diff, f, p).is_empty() {
            return false;
        }
    }
    true
}

/// Whether `X` has multiplicative order p^m − 1 modulo an irreducible `f`.
pub(crate) fn x_is_primitive(f: &[u32], p: u32) -> bool {
    let m = degree(f).unwrap_or(0) as u32;
    let order = (p as u128).pow(m) - 1;
    let x: Poly = vec![0, 1];
    let one: Poly = vec![1];
    if powmod(&x, order, f, p) != one {
        return false;
    }
    prime_factors(order as u64)
        .into_iter()
        .all(|l| powmod(&x, order / l as u128, f, p) != one)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in ascending order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
