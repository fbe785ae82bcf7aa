//! Product construction in `G = G_0 x G_1 x G_1` with `G_0 = Z_3`, `G_1 = Z_3^m`:
//!
//! `D = (x_0, 0, G_1) + (0, G_1, x_1) + (0, D', D')`
//!
//! where `D'` is a `(3^m, 3^m - 1, -1)` SDS in `G_1`. The result satisfies
//! `D D^{(-1)} = G + 3^{2m} 0_G`. It is a proper signed set whenever `x_1` lies
//! outside the support of `D'`; otherwise some coefficients equal 2 or cancel.
//!
//! Coordinates of `G` are `(a, g_1, g_2)` flattened as `[a, g_1..., g_2...]`.

use crate::algebra::FiniteField;
use crate::designs::{paley_pds, sds_from_pds, verify_sds, SdsParams, Strictness};
use crate::error::{Error, Result};
use crate::groupring::{ring_sum, GroupRingElement, SignedSet};
use crate::groups::{character_sums, AbelianGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product3Spec {
    m: usize,
    x0: u64,
    x1: usize,
    d_prime: SignedSet,
}

/// Which Paley set of `F_{3^m}` seeds the default `D'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PaleySeed {
    #[default]
    Squares,
    NonSquares,
}

/// Paley-lift SDS `(3^m, 3^m - 1, -1)` in `Z_3^m`.
pub fn default_d_prime(m: usize, seed: PaleySeed) -> Result<SignedSet> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::Product3(format!(
            "m = {m} must be a positive even integer"
        )));
    }
    let field = FiniteField::new(3, m)?;
    let squares = paley_pds(&field)?;
    let pds = match seed {
        PaleySeed::Squares => squares,
        PaleySeed::NonSquares => squares.complement_without_identity(),
    };
    Ok(sds_from_pds(&pds)?.0)
}

impl Product3Spec {
    pub fn new(m: usize, x0: u64, x1: usize, d_prime: SignedSet) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(2) {
            return Err(Error::Product3(format!(
                "m = {m} must be a positive even integer"
            )));
        }
        if x0 == 0 || x0 > 2 {
            return Err(Error::Product3(format!(
                "x0 = {x0} must be a nonzero element of Z_3"
            )));
        }
        let g1 = AbelianGroup::new(&vec![3; m])?;
        g1.check(x1)?;
        d_prime.group().ensure_same(&g1)?;
        let inner = 3i64.pow(m as u32);
        let found = verify_sds(&d_prime.to_ring(), Strictness::Strict)?;
        let expected = SdsParams {
            v: inner as usize,
            k: inner - 1,
            lambda: -1,
        };
        if found != expected {
            return Err(Error::Product3(format!(
                "D' has parameters ({}, {}, {}), expected ({}, {}, -1)",
                found.v,
                found.k,
                found.lambda,
                inner,
                inner - 1
            )));
        }
        Ok(Self { m, x0, x1, d_prime })
    }

    /// `x_0 = 1`, `x_1 = 0`, `D'` from the squares of `F_{3^m}`.
    pub fn with_defaults(m: usize) -> Result<Self> {
        Self::new(m, 1, 0, default_d_prime(m, PaleySeed::Squares)?)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x0(&self) -> u64 {
        self.x0
    }

    pub fn x1(&self) -> usize {
        self.x1
    }

    pub fn d_prime(&self) -> &SignedSet {
        &self.d_prime
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::new(&vec![3; 2 * self.m + 1]).expect("positive orders")
    }

    /// `x_1` in `P' u N'`, so the blocks overlap.
    pub fn overlapping(&self) -> bool {
        self.d_prime.positive().contains(&self.x1) || self.d_prime.negative().contains(&self.x1)
    }

    /// `(3^{2m+1}, 3^{2m} + 1, 1)`; `k` is `sum a_g^2` for overlapping blocks.
    pub fn predicted(&self) -> SdsParams {
        let inner2 = 3i64.pow(2 * self.m as u32);
        SdsParams {
            v: 3 * inner2 as usize,
            k: inner2 + 1,
            lambda: 1,
        }
    }

    fn embed(&self, a: u64, g1: usize, g2: usize) -> usize {
        let side = 3usize.pow(self.m as u32);
        a as usize + 3 * (g1 + side * g2)
    }

    /// The three summands, in order.
    pub fn blocks(&self) -> [GroupRingElement; 3] {
        let group = self.group();
        let side = 3usize.pow(self.m as u32);
        let first =
            GroupRingElement::indicator(&group, (0..side).map(|g2| self.embed(self.x0, 0, g2)));
        let second =
            GroupRingElement::indicator(&group, (0..side).map(|g1| self.embed(0, g1, self.x1)));
        let sign = self.d_prime.to_ring();
        let mut third = vec![0i64; group.order()];
        for (d1, s1) in sign.support() {
            for (d2, s2) in sign.support() {
                third[self.embed(0, d1, d2)] = s1 * s2;
            }
        }
        [
            first.expect("indices in range"),
            second.expect("indices in range"),
            GroupRingElement::new(group, third).expect("length matches"),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product3Check {
    /// Exact convolution `D D^{(-1)}`.
    Convolution,
    /// All character sums; practical for `m = 4`.
    Characters,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product3Result {
    pub element: GroupRingElement,
    pub params: SdsParams,
    /// Elements whose coefficient is outside `{-1, 0, 1}`.
    pub violations: Vec<(usize, i64)>,
}

impl Product3Result {
    pub fn is_strict(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Builds the formal sum and re-verifies it.
pub fn product3_construct(spec: &Product3Spec, check: Product3Check) -> Result<Product3Result> {
    let element = ring_sum(&spec.blocks())?;
    let predicted = spec.predicted();
    let params = match check {
        Product3Check::Convolution => verify_sds(&element, Strictness::Relaxed)?,
        Product3Check::Characters => {
            let report = product3_char_verify(&element, spec.m)?;
            SdsParams {
                v: element.group().order(),
                k: element.size(),
                lambda: element.size() - report.n,
            }
        }
    };
    if params != predicted {
        return Err(Error::ParamsMismatch {
            predicted: (predicted.v, predicted.k, predicted.lambda),
            found: (params.v, params.k, params.lambda),
        });
    }
    let violations = element.strictness_violations();
    Ok(Product3Result {
        element,
        params,
        violations,
    })
}

/// Per-case character counts for `chi_{a, b_1, b_2}`:
/// 1) `b_1 = 0, b_2 != 0`; 2) `b_1 != 0, b_2 = 0`; 3) `b_1 = b_2 = 0, a != 0`;
/// 4) `b_1, b_2 != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterReport {
    pub case_counts: [usize; 4],
    /// `chi_0(D)`
    pub principal: i64,
    /// Common value of `|chi(D)|^2` over non-principal characters.
    pub n: i64,
}

pub fn product3_char_verify(d: &GroupRingElement, m: usize) -> Result<CharacterReport> {
    let group = AbelianGroup::new(&vec![3; 2 * m + 1])?;
    d.group().ensure_same(&group)?;
    let side = 3usize.pow(m as u32);
    let expected = 3i64.pow(2 * m as u32);
    let sums = character_sums(d);
    let mut case_counts = [0usize; 4];
    for (index, sum) in sums.iter().enumerate().skip(1) {
        let a = index % 3;
        let b1 = (index / 3) % side;
        let b2 = index / (3 * side);
        let case = match (b1 == 0, b2 == 0) {
            (true, false) => 0,
            (false, true) => 1,
            (true, true) => {
                debug_assert!(a != 0);
                2
            }
            (false, false) => 3,
        };
        let norm = sum.norm_squared();
        if norm.as_integer() != Some(expected) {
            return Err(Error::CharacterCheck {
                params: group.coords(index),
                found: norm.to_string(),
                expected,
            });
        }
        case_counts[case] += 1;
    }
    let principal = sums[0]
        .as_integer()
        .ok_or_else(|| Error::Internal("principal sum not rational".into()))?;
    Ok(CharacterReport {
        case_counts,
        principal,
        n: expected,
    })
}
