//! Ternary sequences and group-invariant weighing matrices from signed sets.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::designs::{verify_sds, Strictness};
use crate::error::{Error, Result};
use crate::groupring::SignedSet;
use crate::groups::AbelianGroup;

/// Largest order for which the full matrix is materialized.
pub const DENSE_LIMIT: usize = 512;
pub const SAMPLED_PAIRS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernarySequence {
    symbols: Vec<i8>,
}

impl TernarySequence {
    pub fn new(symbols: Vec<i8>) -> Result<Self> {
        if let Some(i) = symbols.iter().position(|s| !(-1..=1).contains(s)) {
            return Err(Error::Document(format!(
                "symbol {} at position {i} is not ternary",
                symbols[i]
            )));
        }
        Ok(Self { symbols })
    }

    pub fn period(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[i8] {
        &self.symbols
    }
}

fn symbol_char(s: i8) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

fn symbol_line(symbols: &[i8]) -> String {
    symbols.iter().map(|&s| symbol_char(s)).collect()
}

impl fmt::Display for TernarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&symbol_line(&self.symbols))
    }
}

fn signs(d: &SignedSet) -> Vec<i8> {
    d.to_ring().coeffs().iter().map(|&c| c as i8).collect()
}

/// `s_i = 1, -1, 0` as `i` lies in `P`, `N`, or neither.
pub fn sequence_from_sds(d: &SignedSet) -> Result<TernarySequence> {
    if !d.group().is_cyclic() {
        return Err(Error::NotCyclic(d.group().orders().to_vec()));
    }
    TernarySequence::new(signs(d))
}

/// Periodic `C_S(tau) = sum_i s_{i+tau} s_i`.
pub fn autocorrelation(s: &TernarySequence, tau: usize) -> Result<i64> {
    let v = s.period();
    if tau >= v {
        return Err(Error::ShiftOutOfRange { tau, v });
    }
    Ok((0..v)
        .map(|i| (s.symbols[(i + tau) % v] * s.symbols[i]) as i64)
        .sum())
}

/// `C_S(tau)` for every shift.
pub fn autocorrelation_all(s: &TernarySequence) -> Vec<i64> {
    (0..s.period())
        .into_par_iter()
        .map(|tau| autocorrelation(s, tau).expect("in range"))
        .collect()
}

/// All out-of-phase values equal `-1`.
pub fn is_two_level(s: &TernarySequence) -> bool {
    autocorrelation_all(s).iter().skip(1).all(|&c| c == -1)
}

/// `W_{g, h} = a_{h - g}` for a `(v, k, 0)` signed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeighingMatrix {
    group: AbelianGroup,
    weight: i64,
    first_row: Vec<i8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeighingCheck {
    /// Every entry of `W W^T`.
    Full,
    /// Inner products of sampled row pairs, including each row with itself.
    Sampled { pairs: usize },
}

impl WeighingMatrix {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn first_row(&self) -> &[i8] {
        &self.first_row
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.first_row[self.group.sub(col, row)]
    }

    pub fn row(&self, row: usize) -> Vec<i8> {
        (0..self.order()).map(|c| self.entry(row, c)).collect()
    }

    pub fn dense(&self) -> Vec<Vec<i8>> {
        (0..self.order()).map(|r| self.row(r)).collect()
    }

    fn inner(&self, a: usize, b: usize) -> i64 {
        (0..self.order())
            .map(|c| (self.entry(a, c) * self.entry(b, c)) as i64)
            .sum()
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        let value = self.inner(a, b);
        let expected = if a == b { self.weight } else { 0 };
        if value != expected {
            return Err(Error::WeighingCheck {
                row: a,
                col: b,
                value,
            });
        }
        Ok(())
    }

    /// Asserts `W W^T = k I`, fully up to the dense limit and by sampling above it.
    pub fn check(&self, seed: u64) -> Result<WeighingCheck> {
        let v = self.order();
        if v <= DENSE_LIMIT {
            (0..v)
                .into_par_iter()
                .try_for_each(|a| (0..v).try_for_each(|b| self.check_pair(a, b)))?;
            return Ok(WeighingCheck::Full);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_PAIRS {
            let a = rng.gen_range(0..v);
            let b = rng.gen_range(0..v);
            self.check_pair(a, b)?;
            self.check_pair(a, a)?;
        }
        Ok(WeighingCheck::Sampled {
            pairs: SAMPLED_PAIRS,
        })
    }

    /// `v k row`
    pub fn first_row_line(&self) -> String {
        format!(
            "{} {} {}",
            self.order(),
            self.weight,
            symbol_line(&self.first_row)
        )
    }

    pub fn dense_lines(&self) -> Vec<String> {
        (0..self.order())
            .map(|r| symbol_line(&self.row(r)))
            .collect()
    }
}

/// Group-invariant weighing matrix of a `lambda = 0` signed set, checked before return.
pub fn weighing_from_sds(d: &SignedSet, seed: u64) -> Result<(WeighingMatrix, WeighingCheck)> {
    let params = verify_sds(&d.to_ring(), Strictness::Strict)?;
    if params.lambda != 0 {
        return Err(Error::NonZeroLambda(params.lambda));
    }
    let weight = d.balance() * d.balance();
    let w = WeighingMatrix {
        group: d.group().clone(),
        weight,
        first_row: signs(d),
    };
    let check = w.check(seed)?;
    Ok((w, check))
}
