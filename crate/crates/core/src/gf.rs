//! Finite fields GF(p^e) backed by full operation tables.
//!
//! Elements are encoded as integers in `[0, q)`: the base-p digits of the
//! index are the coefficients of a polynomial of degree `< e` (constant
//! term in the least significant digit). Index 0 is zero and index 1 is one.

use std::fmt;

use thiserror::Error;

/// Largest field order accepted unless the caller raises the cap.
pub const DEFAULT_MAX_ORDER: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{e} exceeds the configured cap of {cap}")]
    OrderTooLarge { p: u32, e: u32, cap: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("modulus must be monic of degree {expected} (got {got} coefficients)")]
    BadModulus { expected: u32, got: usize },
    #[error("modulus coefficient {0} is not a base-{1} digit")]
    BadCoefficient(u32, u32),
    #[error("modulus is reducible over GF({0})")]
    Reducible(u32),
    #[error("no built-in modulus for GF({p}^{e}); pass one explicitly")]
    NoBuiltinModulus { p: u32, e: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// An element of a particular [`FieldSpec`], identified by its table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^e) with precomputed addition, multiplication, negation and
/// inversion tables. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` with `p` prime, if possible.
pub fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Built-in monic irreducible moduli, constant term first.
pub fn builtin_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    match (p, e) {
        (_, 1) => Some(vec![0, 1]),
        // x^2 + x + 1
        (2, 2) => Some(vec![1, 1, 1]),
        // x^3 + x + 1
        (2, 3) => Some(vec![1, 1, 0, 1]),
        // x^4 + x + 1
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        // x^2 + 1
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Exhaustive irreducibility test: no monic polynomial of degree
/// `1..=deg/2` divides `m`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for low in 0..count {
            let mut f = digits(low, p, d);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut x: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((x % p as usize) as u32);
        x /= p as usize;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> usize {
    d.iter()
        .rev()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Builds GF(p^e). With `modulus == None` and `e > 1`, a built-in modulus
/// is used. `max_order` caps `p^e`.
pub fn build_field(p: u32, e: u32, modulus: Option<&[u32]>, max_order: u32) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if e == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = p
        .checked_pow(e)
        .filter(|&q| q <= max_order && q <= 256)
        .ok_or(FieldError::OrderTooLarge {
            p,
            e,
            cap: max_order.min(256),
        })?;

    let modulus = match modulus {
        Some(m) => m.to_vec(),
        None => builtin_modulus(p, e).ok_or(FieldError::NoBuiltinModulus { p, e })?,
    };
    if modulus.len() != e as usize + 1 || modulus[e as usize] != 1 {
        return Err(FieldError::BadModulus {
            expected: e,
            got: modulus.len(),
        });
    }
    if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
        return Err(FieldError::BadCoefficient(c, p));
    }
    if e > 1 && !is_irreducible(&modulus, p) {
        return Err(FieldError::Reducible(p));
    }

    let qs = q as usize;
    let polys: Vec<Vec<u32>> = (0..qs).map(|i| digits(i, p, e as usize)).collect();
    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    for a in 0..qs {
        for b in 0..qs {
            let sum: Vec<u32> = polys[a].iter().zip(&polys[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * qs + b] = from_digits(&sum, p) as u8;

            let mut prod = vec![0u32; 2 * e as usize - 1];
            for (i, x) in polys[a].iter().enumerate() {
                for (j, y) in polys[b].iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let reduced = if e == 1 {
                prod
            } else {
                poly_rem(&prod, &modulus, p)
            };
            mul[a * qs + b] = from_digits(&reduced, p) as u8;
        }
    }
    let neg = (0..qs)
        .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
        .collect();
    let mut inv = vec![0u8; qs];
    for a in 1..qs {
        inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
    }

    Ok(FieldSpec {
        p,
        e,
        q,
        modulus,
        add,
        mul,
        neg,
        inv,
    })
}

impl FieldSpec {
    /// Convenience constructor for GF(q) with the default cap and built-in
    /// modulus.
    pub fn of_order(q: u32) -> Result<FieldSpec, FieldError> {
        let (p, e) = factor_prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        build_field(p, e, None, DEFAULT_MAX_ORDER)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first (includes the leading 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.q).then_some(FieldElement(index as u8))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|i| FieldElement(i as u8))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            Err(FieldError::ZeroInverse)
        } else {
            Ok(FieldElement(self.inv[a.index()]))
        }
    }

    /// Order of `a` in the multiplicative group, or `None` for zero.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.elements()
            .find(|&a| self.multiplicative_order(a) == Some(self.q - 1))
            .expect("multiplicative group of a finite field is cyclic")
    }
}
