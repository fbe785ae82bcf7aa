//! Prime and extension finite fields GF(p^n).
//!
//! Elements are stored as their coordinate code `x_0 + x_1 p + ... + x_{n-1} p^{n-1}`
//! on the polynomial basis `{1, x, ..., x^{n-1}}` of `Z_p[x] / (modulus)`. The same
//! code is the element index of the additive group `Z_p^n` (see [`crate::groups`]),
//! so field elements and group elements share one numbering.
//!
//! Construction picks the lexicographically smallest monic irreducible modulus
//! and the smallest primitive element, comparing codes as integers. Multiplication
//! goes through exponent/logarithm tables built once per field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
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

/// Returns `(p, n)` when `q = p^n` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut n = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        n += 1;
    }
    Some((p, n))
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Square root of `n` when `n` is a perfect square.
pub fn exact_sqrt(n: i64) -> Option<u64> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u64);
    (r * r == n as u64).then_some(r)
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let quotient = r / new_r;
        (t, new_t) = (new_t, t - quotient * new_t);
        (r, new_r) = (new_r, r - quotient * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i64) as u64)
}

/// Dense polynomial over `Z_p`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    /// `x^k`
    pub fn monomial(p: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Self::new(p, coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0) + other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&a| a * (c % self.p)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lead = inv_mod(divisor.lead(), p).expect("leading coefficient invertible");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * inv_lead % p;
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p * p - c * b % p) % p;
            }
        }
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match inv_mod(self.lead(), self.p) {
            Some(inv) if !self.is_zero() => self.scale(inv),
            _ => self.clone(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.p).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over `Z_p` via `gcd(f, x^{p^i} - x) = 1` for `i <= deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let x = Self::monomial(self.p, 1);
        let mut frob = x.rem(self);
        for _ in 1..=n / 2 {
            frob = frob.pow_mod(self.p, self);
            let g = self.gcd(&frob.sub(&x));
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

/// Nonzero-or-zero element of a [`FiniteField`], identified by its coordinate code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldElement(pub usize);

impl FieldElement {
    pub const ZERO: Self = FieldElement(0);
    pub const ONE: Self = FieldElement(1);

    pub fn code(self) -> usize {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    n: usize,
    q: u64,
    modulus: Vec<u64>,
    w: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus && self.w == other.w
    }
}

impl Eq for FiniteField {}

fn checked_order(p: u64, n: usize) -> Result<u64> {
    let mut q: u64 = 1;
    for _ in 0..n {
        q = q
            .checked_mul(p)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p, n })?;
    }
    Ok(q)
}

fn decode(mut code: u64, p: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn encode(coords: &[u64], p: u64) -> u64 {
    coords.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FiniteField {
    /// GF(p^n) with the smallest monic irreducible modulus and smallest primitive element.
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = checked_order(p, n)?;
        let modulus = (0..q)
            .map(|low| {
                let mut c = decode(low, p, n);
                c.push(1);
                Poly::new(p, c)
            })
            .find(Poly::is_irreducible)
            .ok_or(Error::NotIrreducible { p, n })?;
        let modulus_poly = modulus.clone();
        let w = (1..q)
            .map(|code| FieldElement(code as usize))
            .find(|&x| is_primitive_poly(&to_poly(x, p, n), &modulus_poly, q))
            .ok_or_else(|| Error::Internal("no primitive element".into()))?;
        Self::assemble(p, n, q, modulus.coeffs().to_vec(), w)
    }

    /// Field from explicit parts; validates irreducibility of `modulus` and primitivity of `w`.
    pub fn from_parts(p: u64, n: usize, modulus: &[u64], w: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = checked_order(p, n)?;
        if modulus.len() != n + 1 || modulus[n] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::NotIrreducible { p, n });
        }
        let modulus_poly = Poly::new(p, modulus.to_vec());
        if !modulus_poly.is_irreducible() {
            return Err(Error::NotIrreducible { p, n });
        }
        if w.len() != n || w.iter().any(|&c| c >= p) {
            return Err(Error::BadCoordinates {
                coords: w.to_vec(),
                context: format!("GF({p}^{n})"),
            });
        }
        let w_elem = FieldElement(encode(w, p) as usize);
        if !is_primitive_poly(&to_poly(w_elem, p, n), &modulus_poly, q) {
            return Err(Error::NotPrimitive(w.to_vec()));
        }
        Self::assemble(p, n, q, modulus.to_vec(), w_elem)
    }

    /// Same field and modulus with a different primitive element.
    pub fn with_primitive(&self, w: FieldElement) -> Result<Self> {
        if !self.is_primitive(w) {
            return Err(Error::NotPrimitive(self.coords(w)));
        }
        Self::assemble(self.p, self.n, self.q, self.modulus.clone(), w)
    }

    fn assemble(p: u64, n: usize, q: u64, modulus: Vec<u64>, w: FieldElement) -> Result<Self> {
        let modulus_poly = Poly::new(p, modulus.clone());
        let w_poly = to_poly(w, p, n);
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut acc = Poly::one(p);
        for k in 0..q - 1 {
            let code = encode(acc.coeffs(), p) as usize;
            if log[code] != u32::MAX {
                return Err(Error::NotPrimitive(decode(w.0 as u64, p, n)));
            }
            log[code] = k as u32;
            exp.push(code as u32);
            acc = acc.mul_mod(&w_poly, &modulus_poly);
        }
        Ok(Self {
            p,
            n,
            q,
            modulus,
            w,
            exp,
            log,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus, ascending coefficients (length `n + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive(&self) -> FieldElement {
        self.w
    }

    pub fn order(&self) -> usize {
        self.q as usize
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u64> {
        decode(x.0 as u64, self.p, self.n)
    }

    pub fn element(&self, coords: &[u64]) -> Result<FieldElement> {
        if coords.len() != self.n || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::BadCoordinates {
                coords: coords.to_vec(),
                context: format!("GF({}^{})", self.p, self.n),
            });
        }
        Ok(FieldElement(encode(coords, self.p) as usize))
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, a: i64) -> FieldElement {
        FieldElement(a.rem_euclid(self.p as i64) as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as usize).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((a.0 + b.0) % self.p as usize);
        }
        let p = self.p as usize;
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.n {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.p as usize;
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..self.n {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let k = (self.log[a.0] as u64 + self.log[b.0] as u64) % (self.q - 1);
        FieldElement(self.exp[k as usize] as usize)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let k = (self.q - 1 - self.log[a.0] as u64) % (self.q - 1);
        Ok(FieldElement(self.exp[k as usize] as usize))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let k = (self.log[a.0] as u128 * e as u128) % (self.q as u128 - 1);
        FieldElement(self.exp[k as usize] as usize)
    }

    /// `w^k`
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % (self.q - 1)) as usize] as usize)
    }

    /// Discrete logarithm to the base `w`; `None` for zero.
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        match self.log.get(x.0) {
            Some(&k) if k != u32::MAX => Some(k as u64),
            _ => None,
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Option<u64> {
        let k = self.log(x)?;
        let m = self.q - 1;
        Some(m / gcd(k, m))
    }

    pub fn is_primitive(&self, x: FieldElement) -> bool {
        self.multiplicative_order(x) == Some(self.q - 1)
    }

    /// All primitive elements in ascending code order.
    pub fn primitive_elements(&self) -> Vec<FieldElement> {
        self.elements().filter(|&x| self.is_primitive(x)).collect()
    }

    pub fn discrete_log_table(&self) -> DiscreteLogTable {
        self.discrete_log_table_base(self.w)
            .expect("field primitive element is primitive")
    }

    /// Logarithm table to an arbitrary primitive base.
    pub fn discrete_log_table_base(&self, base: FieldElement) -> Result<DiscreteLogTable> {
        if !self.is_primitive(base) {
            return Err(Error::NotPrimitive(self.coords(base)));
        }
        let mut table = vec![None; self.order()];
        let mut acc = FieldElement::ONE;
        for k in 0..self.q - 1 {
            table[acc.0] = Some(k);
            acc = self.mul(acc, base);
        }
        Ok(DiscreteLogTable { base, table })
    }

    /// True when `x` lies in the prime subfield `Z_p`.
    pub fn in_prime_subfield(&self, x: FieldElement) -> bool {
        (x.0 as u64) < self.p
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn to_poly(x: FieldElement, p: u64, n: usize) -> Poly {
    Poly::new(p, decode(x.0 as u64, p, n))
}

fn is_primitive_poly(x: &Poly, modulus: &Poly, q: u64) -> bool {
    if x.is_zero() {
        return false;
    }
    let one = Poly::one(x.p);
    if x.pow_mod(q - 1, modulus) != one {
        return false;
    }
    prime_factors(q - 1)
        .into_iter()
        .all(|r| x.pow_mod((q - 1) / r, modulus) != one)
}

/// `table[x] = k` iff `base^k = x`.
#[derive(Debug, Clone)]
pub struct DiscreteLogTable {
    base: FieldElement,
    table: Vec<Option<u64>>,
}

impl DiscreteLogTable {
    pub fn base(&self) -> FieldElement {
        self.base
    }

    pub fn get(&self, x: FieldElement) -> Option<u64> {
        self.table.get(x.0).copied().flatten()
    }

    pub fn iter(&self) -> impl Iterator<Item = (FieldElement, u64)> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter_map(|(i, k)| k.map(|k| (FieldElement(i), k)))
    }
}
