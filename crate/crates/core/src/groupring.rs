//! Integer group ring `Z[G]` over a finite abelian group.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::groups::AbelianGroup;

/// `sum_g a_g g` stored densely by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: AbelianGroup,
    coeffs: Vec<i64>,
}

impl GroupRingElement {
    pub fn new(group: AbelianGroup, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Document(format!(
                "coefficient vector has length {}, group order is {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(Self { group, coeffs })
    }

    pub fn zero(group: &AbelianGroup) -> Self {
        Self {
            group: group.clone(),
            coeffs: vec![0; group.order()],
        }
    }

    /// `sum_{s in S} s` for a subset given by element indices.
    pub fn indicator<I: IntoIterator<Item = usize>>(
        group: &AbelianGroup,
        elements: I,
    ) -> Result<Self> {
        let mut out = Self::zero(group);
        for g in elements {
            out.coeffs[group.check(g)?] += 1;
        }
        Ok(out)
    }

    /// The element `G`.
    pub fn full(group: &AbelianGroup) -> Self {
        Self {
            group: group.clone(),
            coeffs: vec![1; group.order()],
        }
    }

    /// The element `0_G`.
    pub fn identity(group: &AbelianGroup) -> Self {
        let mut out = Self::zero(group);
        out.coeffs[0] = 1;
        out
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> i64 {
        self.coeffs[g]
    }

    /// Nonzero `(element, coefficient)` pairs in index order.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(g, &c)| (g, c))
    }

    /// `sum_g a_g^2`, the identity coefficient of `A A^{(-1)}`.
    pub fn size(&self) -> i64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// `sum_g a_g`, the principal character value.
    pub fn augmentation(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    /// `A^{(-1)}`: coefficient at `g` is the input coefficient at `-g`.
    pub fn involution(&self) -> Self {
        let coeffs = self
            .group
            .elements()
            .map(|g| self.coeffs[self.group.neg(g)])
            .collect();
        Self {
            group: self.group.clone(),
            coeffs,
        }
    }

    /// `(A B)_g = sum_h A_h B_{g-h}`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        let mut out = vec![0i64; self.group.order()];
        let rhs: Vec<(usize, i64)> = other.support().collect();
        for (h, a) in self.support() {
            for &(k, b) in &rhs {
                out[self.group.add(h, k)] += a * b;
            }
        }
        Ok(Self {
            group: self.group.clone(),
            coeffs: out,
        })
    }

    /// `A A^{(-1)}`
    pub fn autocorrelate(&self) -> Self {
        self.convolve(&self.involution()).expect("same group")
    }

    /// Elements whose coefficient lies outside `{-1, 0, 1}`.
    pub fn strictness_violations(&self) -> Vec<(usize, i64)> {
        self.support().filter(|(_, c)| c.abs() > 1).collect()
    }

    pub fn is_signed_set(&self) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= 1)
    }

    pub fn to_signed_set(&self) -> Result<SignedSet> {
        if let Some(&(element, coefficient)) = self.strictness_violations().first() {
            return Err(Error::NotStrict {
                element,
                coefficient,
            });
        }
        let positive = self
            .support()
            .filter(|(_, c)| *c > 0)
            .map(|(g, _)| g)
            .collect();
        let negative = self
            .support()
            .filter(|(_, c)| *c < 0)
            .map(|(g, _)| g)
            .collect();
        SignedSet::new(self.group.clone(), positive, negative)
    }
}

/// Coefficientwise sum of several elements over one group.
pub fn ring_sum(parts: &[GroupRingElement]) -> Result<GroupRingElement> {
    let first = parts.first().ok_or(Error::EmptyGroup)?;
    parts[1..]
        .iter()
        .try_fold(first.clone(), |acc, p| acc.add(p))
}

/// `D = P - N` with disjoint `P` and `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSet {
    group: AbelianGroup,
    positive: BTreeSet<usize>,
    negative: BTreeSet<usize>,
}

impl SignedSet {
    pub fn new(
        group: AbelianGroup,
        positive: BTreeSet<usize>,
        negative: BTreeSet<usize>,
    ) -> Result<Self> {
        for &g in positive.iter().chain(&negative) {
            group.check(g)?;
        }
        if let Some(&g) = positive.intersection(&negative).next() {
            return Err(Error::Overlap(g));
        }
        Ok(Self {
            group,
            positive,
            negative,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn positive(&self) -> &BTreeSet<usize> {
        &self.positive
    }

    pub fn negative(&self) -> &BTreeSet<usize> {
        &self.negative
    }

    /// `k = |P| + |N|`
    pub fn size(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    /// `|P| - |N|`
    pub fn balance(&self) -> i64 {
        self.positive.len() as i64 - self.negative.len() as i64
    }

    pub fn to_ring(&self) -> GroupRingElement {
        let mut out = GroupRingElement::zero(&self.group);
        for &g in &self.positive {
            out.coeffs[g] = 1;
        }
        for &g in &self.negative {
            out.coeffs[g] = -1;
        }
        out
    }

    /// `-D = N - P`
    pub fn negated(&self) -> Self {
        Self {
            group: self.group.clone(),
            positive: self.negative.clone(),
            negative: self.positive.clone(),
        }
    }
}
