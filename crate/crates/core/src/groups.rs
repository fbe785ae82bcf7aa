//! Finite abelian groups `Z_{d_1} x ... x Z_{d_r}`, their characters, and exact
//! arithmetic in `Z[zeta_m]` for character sums.
//!
//! Elements are indexed in mixed radix with the first coordinate least significant:
//! `index = x_1 + d_1 (x_2 + d_2 (x_3 + ...))`. Characters use the same numbering
//! for their parameter tuples.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteField;
use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u64>,
    v: usize,
    exponent: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl AbelianGroup {
    pub fn new(orders: &[u64]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptyGroup);
        }
        if orders.contains(&0) {
            return Err(Error::ZeroOrder);
        }
        let v = orders.iter().product::<u64>() as usize;
        let exponent = orders.iter().fold(1, |l, &d| l / gcd(l, d) * d);
        Ok(Self {
            orders: orders.to_vec(),
            v,
            exponent,
        })
    }

    pub fn cyclic(v: u64) -> Result<Self> {
        Self::new(&[v])
    }

    /// `(F_q, +)` as `Z_p^n`; field codes and group indices coincide.
    pub fn additive(field: &FiniteField) -> Self {
        Self::new(&vec![field.p(); field.n()]).expect("field orders are positive")
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.len() == 1
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn check(&self, index: usize) -> Result<usize> {
        if index < self.v {
            Ok(index)
        } else {
            Err(Error::IndexOutOfRange { index, v: self.v })
        }
    }

    pub fn coords(&self, mut index: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&d| {
                let c = index as u64 % d;
                index /= d as usize;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.orders.len() || coords.iter().zip(&self.orders).any(|(c, d)| c >= d)
        {
            return Err(Error::BadCoordinates {
                coords: coords.to_vec(),
                context: format!("group {:?}", self.orders),
            });
        }
        Ok(coords
            .iter()
            .zip(&self.orders)
            .rev()
            .fold(0, |acc, (&c, &d)| acc * d as usize + c as usize))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if let [d] = self.orders[..] {
            return (a + b) % d as usize;
        }
        let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
        for &d in &self.orders {
            let d = d as usize;
            out += ((x % d + y % d) % d) * place;
            x /= d;
            y /= d;
            place *= d;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        if let [d] = self.orders[..] {
            return (d as usize - a) % d as usize;
        }
        let (mut x, mut out, mut place) = (a, 0, 1);
        for &d in &self.orders {
            let d = d as usize;
            out += ((d - x % d) % d) * place;
            x /= d;
            place *= d;
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.v
    }

    pub fn character(&self, index: usize) -> Character {
        Character {
            params: self.coords(index),
        }
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.elements().map(|i| self.character(i))
    }

    /// Exponent `e` with `chi_a(x) = zeta_m^e`, `m` the group exponent.
    pub fn char_exponent(&self, chi: &Character, x: usize) -> u64 {
        let m = self.exponent;
        let mut idx = x;
        let mut e = 0u64;
        for (&d, &a) in self.orders.iter().zip(&chi.params) {
            let xi = (idx as u64) % d;
            idx /= d as usize;
            e = (e + (m / d) * (a * xi % d)) % m;
        }
        e
    }

    pub fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.orders.clone(),
                right: other.orders.clone(),
            })
        }
    }
}

/// Character `chi_a(x) = zeta_m^{sum_i (m/d_i) a_i x_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    params: Vec<u64>,
}

impl Character {
    pub fn new(group: &AbelianGroup, params: &[u64]) -> Result<Self> {
        group.index(params)?;
        Ok(Self {
            params: params.to_vec(),
        })
    }

    pub fn params(&self) -> &[u64] {
        &self.params
    }

    pub fn is_principal(&self) -> bool {
        self.params.iter().all(|&a| a == 0)
    }
}

/// `Z[x] / (Phi_m)` with precomputed reductions of `x^0 .. x^{m-1}`.
#[derive(Debug)]
pub struct CyclotomicRing {
    m: u64,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

/// `Phi_d` for every divisor `d` of `m`, by exact division of `x^d - 1`.
fn cyclotomic_polynomials(m: u64) -> HashMap<u64, Vec<i64>> {
    let mut out: HashMap<u64, Vec<i64>> = HashMap::new();
    let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    for &d in &divisors {
        let mut num = vec![0i64; d as usize + 1];
        num[0] = -1;
        num[d as usize] = 1;
        for &e in divisors.iter().filter(|&&e| e < d && d % e == 0) {
            num = exact_div(&num, &out[&e]);
        }
        out.insert(d, num);
    }
    out
}

/// Division by a monic integer polynomial with zero remainder.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i];
        quot[i - dd] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i - dd + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

impl CyclotomicRing {
    pub fn new(m: u64) -> Arc<Self> {
        assert!(m >= 1, "root-of-unity order must be positive");
        let phi = cyclotomic_polynomials(m).remove(&m).unwrap();
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x, then x^deg = -sum_{i<deg} phi_i x^i
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for (c, &ph) in cur.iter_mut().zip(&phi) {
                *c -= top * ph;
            }
        }
        Arc::new(Self { m, phi, powers })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Degree of `Phi_m`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    /// Reduces `sum_e slots[e] zeta^e` (slots indexed mod `m`).
    pub fn reduce_slots(self: &Arc<Self>, slots: &[i64]) -> CyclotomicInteger {
        let mut coeffs = vec![0i64; self.degree()];
        for (e, &c) in slots.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (acc, &b) in coeffs.iter_mut().zip(&self.powers[e % self.m as usize]) {
                *acc += c * b;
            }
        }
        CyclotomicInteger {
            ring: Arc::clone(self),
            coeffs,
        }
    }

    pub fn zeta_pow(self: &Arc<Self>, e: u64) -> CyclotomicInteger {
        CyclotomicInteger {
            ring: Arc::clone(self),
            coeffs: self.powers[(e % self.m) as usize].clone(),
        }
    }

    pub fn integer(self: &Arc<Self>, n: i64) -> CyclotomicInteger {
        let mut coeffs = vec![0i64; self.degree()];
        coeffs[0] = n;
        CyclotomicInteger {
            ring: Arc::clone(self),
            coeffs,
        }
    }
}

/// Element of `Z[zeta_m]` on the power basis reduced modulo `Phi_m`.
#[derive(Clone)]
pub struct CyclotomicInteger {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<i64>,
}

impl PartialEq for CyclotomicInteger {
    fn eq(&self, other: &Self) -> bool {
        self.ring.m == other.ring.m && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicInteger {}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", self.ring.m),
                _ => format!("{c}*z{}^{i}", self.ring.m),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CyclotomicInteger {
    pub fn ring(&self) -> &Arc<CyclotomicRing> {
        &self.ring
    }

    pub fn m(&self) -> u64 {
        self.ring.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring.m == other.ring.m {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.ring.m, other.ring.m))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.ring.m as usize;
        let mut slots = vec![0i64; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                slots[(i + j) % m] += a * b;
            }
        }
        Ok(self.ring.reduce_slots(&slots))
    }

    /// Complex conjugation `zeta -> zeta^{m-1}`.
    pub fn conj(&self) -> Self {
        let m = self.ring.m as usize;
        let mut slots = vec![0i64; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            slots[(m - i) % m] += a;
        }
        self.ring.reduce_slots(&slots)
    }

    /// `|x|^2 = x * conj(x)`.
    pub fn norm_squared(&self) -> Self {
        self.mul(&self.conj()).expect("same ring")
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then(|| self.coeffs[0])
    }
}

/// `chi(x)` as a root of unity.
pub fn char_eval(group: &AbelianGroup, chi: &Character, x: usize) -> CyclotomicInteger {
    let ring = CyclotomicRing::new(group.exponent());
    ring.zeta_pow(group.char_exponent(chi, x))
}

/// `chi(A) = sum_g A_g chi(g)`, one character at a time.
pub fn char_sum(chi: &Character, a: &GroupRingElement) -> CyclotomicInteger {
    let ring = CyclotomicRing::new(a.group().exponent());
    char_sum_in(&ring, chi, a)
}

pub fn char_sum_in(
    ring: &Arc<CyclotomicRing>,
    chi: &Character,
    a: &GroupRingElement,
) -> CyclotomicInteger {
    let group = a.group();
    let mut slots = vec![0i64; ring.m() as usize];
    for (g, c) in a.support() {
        slots[group.char_exponent(chi, g) as usize] += c;
    }
    ring.reduce_slots(&slots)
}

/// `chi(A)` for every character, indexed like group elements.
///
/// Runs a separable transform one cyclic axis at a time over unreduced
/// `Z[x]/(x^m - 1)` values, then reduces modulo `Phi_m`.
pub fn character_sums(a: &GroupRingElement) -> Vec<CyclotomicInteger> {
    let group = a.group();
    let m = group.exponent() as usize;
    let v = group.order();
    let mut data = vec![0i64; v * m];
    for (g, c) in a.support() {
        data[g * m] = c;
    }
    let mut stride = 1usize;
    for &d in group.orders() {
        let d = d as usize;
        let step = m / d;
        let mut line = vec![0i64; d * m];
        for base in 0..v {
            if !(base / stride).is_multiple_of(d) {
                continue;
            }
            line.iter_mut().for_each(|c| *c = 0);
            for aa in 0..d {
                let out = &mut line[aa * m..(aa + 1) * m];
                for x in 0..d {
                    let src = &data[(base + x * stride) * m..(base + x * stride + 1) * m];
                    let rot = (step * (aa * x % d)) % m;
                    for (e, &c) in src.iter().enumerate() {
                        if c != 0 {
                            out[(e + rot) % m] += c;
                        }
                    }
                }
            }
            for aa in 0..d {
                let dst = base + aa * stride;
                data[dst * m..(dst + 1) * m].copy_from_slice(&line[aa * m..(aa + 1) * m]);
            }
        }
        stride *= d;
    }
    let ring = CyclotomicRing::new(m as u64);
    data.chunks(m)
        .map(|slots| ring.reduce_slots(slots))
        .collect()
}

/// Inverse formula `a_g = (1/|G|) sum_chi chi(A) chi(-g)`.
pub fn coefficients_from_characters(
    sums: &[CyclotomicInteger],
    group: &AbelianGroup,
) -> Result<GroupRingElement> {
    let v = group.order();
    if sums.len() != v {
        return Err(Error::MissingCharacters {
            expected: v,
            got: sums.len(),
        });
    }
    let m = group.exponent();
    if let Some(bad) = sums.iter().find(|s| s.m() != m) {
        return Err(Error::OrderMismatch(bad.m(), m));
    }
    let ring = CyclotomicRing::new(m);
    let characters: Vec<Character> = group.characters().collect();
    let mut coeffs = Vec::with_capacity(v);
    for g in group.elements() {
        let minus_g = group.neg(g);
        let mut slots = vec![0i64; m as usize];
        for (chi, sum) in characters.iter().zip(sums) {
            let rot = group.char_exponent(chi, minus_g) as usize;
            for (e, &c) in sum.coeffs().iter().enumerate() {
                slots[(e + rot) % m as usize] += c;
            }
        }
        let total = ring.reduce_slots(&slots);
        match total.as_integer() {
            Some(t) if t % v as i64 == 0 => coeffs.push(t / v as i64),
            _ => return Err(Error::NonIntegerCoefficient { index: g }),
        }
    }
    GroupRingElement::new(group.clone(), coeffs)
}
