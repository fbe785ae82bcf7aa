//! Verification of signed, partial, and ordinary difference sets, the integer
//! feasibility test, and the PDS-based constructions: Paley sets from squares,
//! the PDS-to-SDS lift, and the (243, 22, 1, 2) PDS from the ternary Golay code.

use std::collections::BTreeSet;

use crate::algebra::{exact_sqrt, prime_power, FiniteField, Poly};
use crate::error::{Error, Result};
use crate::groupring::{GroupRingElement, SignedSet};
use crate::groups::{character_sums, AbelianGroup};

/// `(v, k, lambda)`; `n = k - lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SdsParams {
    pub v: usize,
    pub k: i64,
    pub lambda: i64,
}

impl SdsParams {
    pub fn n(&self) -> i64 {
        self.k - self.lambda
    }

    fn tuple(&self) -> (usize, i64, i64) {
        (self.v, self.k, self.lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PdsParams {
    pub v: usize,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdsReport {
    pub params: PdsParams,
    pub regular: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Coefficients must lie in `{-1, 0, 1}`.
    Strict,
    /// Any integer element of `Z[G]`; `k` is `sum_g a_g^2`.
    Relaxed,
}

/// A subset of a group, by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSubset {
    group: AbelianGroup,
    elements: BTreeSet<usize>,
}

impl GroupSubset {
    pub fn new(group: AbelianGroup, elements: BTreeSet<usize>) -> Result<Self> {
        for &g in &elements {
            group.check(g)?;
        }
        Ok(Self { group, elements })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &BTreeSet<usize> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn indicator(&self) -> GroupRingElement {
        GroupRingElement::indicator(&self.group, self.elements.iter().copied())
            .expect("checked indices")
    }

    /// `G - D - 0_G`
    pub fn complement_without_identity(&self) -> Self {
        let elements = self
            .group
            .elements()
            .filter(|g| *g != 0 && !self.elements.contains(g))
            .collect();
        Self {
            group: self.group.clone(),
            elements,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.elements
            .iter()
            .all(|&g| self.elements.contains(&self.group.neg(g)))
    }
}

/// Checks `D D^{(-1)} = lambda G + n 0_G` by exact convolution.
pub fn verify_sds(d: &GroupRingElement, strictness: Strictness) -> Result<SdsParams> {
    if strictness == Strictness::Strict {
        if let Some(&(element, coefficient)) = d.strictness_violations().first() {
            return Err(Error::NotStrict {
                element,
                coefficient,
            });
        }
    }
    let e = d.autocorrelate();
    let v = d.group().order();
    let k = d.size();
    debug_assert_eq!(e.coeff(0), k);
    let lambda = if v > 1 { e.coeff(1) } else { 0 };
    if let Some(g) = (2..v).find(|&g| e.coeff(g) != lambda) {
        return Err(Error::NonConstant {
            first: 1,
            first_value: lambda,
            second: g,
            second_value: e.coeff(g),
        });
    }
    Ok(SdsParams { v, k, lambda })
}

/// Character criterion: `|chi(D)|^2` is the same integer `n` for every
/// non-principal character; then `lambda = k - n`.
pub fn verify_sds_characters(d: &GroupRingElement) -> Result<SdsParams> {
    let v = d.group().order();
    let k = d.size();
    let sums = character_sums(d);
    let mut n: Option<i64> = None;
    for (index, sum) in sums.iter().enumerate().skip(1) {
        let norm = sum.norm_squared();
        let ok = match (norm.as_integer(), n) {
            (Some(x), None) => {
                n = Some(x);
                true
            }
            (Some(x), Some(n)) => x == n,
            (None, _) => false,
        };
        if !ok {
            return Err(Error::CharacterCheck {
                params: d.group().coords(index),
                found: norm.to_string(),
                expected: n.unwrap_or(0),
            });
        }
    }
    let lambda = n.map_or(0, |n| k - n);
    Ok(SdsParams { v, k, lambda })
}

/// Checks `D D^{(-1)} = lambda D + mu (G - D - 0_G) + k 0_G`.
pub fn verify_pds(d: &GroupSubset) -> Result<PdsReport> {
    if d.elements.contains(&0) {
        return Err(Error::IdentityInSet);
    }
    let group = d.group();
    let e = d.indicator().autocorrelate();
    let k = d.len() as i64;
    if e.coeff(0) != k {
        return Err(Error::PdsMismatch {
            element: 0,
            found: e.coeff(0),
            expected: k,
        });
    }
    let mut lambda = None;
    let mut mu = None;
    for g in 1..group.order() {
        let slot = if d.elements.contains(&g) {
            &mut lambda
        } else {
            &mut mu
        };
        match *slot {
            None => *slot = Some(e.coeff(g)),
            Some(x) if x != e.coeff(g) => {
                return Err(Error::PdsMismatch {
                    element: g,
                    found: e.coeff(g),
                    expected: x,
                })
            }
            _ => {}
        }
    }
    let params = PdsParams {
        v: group.order(),
        k,
        lambda: lambda.unwrap_or(0),
        mu: mu.unwrap_or(0),
    };
    Ok(PdsReport {
        params,
        regular: d.is_symmetric(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// `root^2 = k + lambda (v - 1)`, `root = ||P| - |N||` when sizes are given.
    Accept {
        root: u64,
    },
    Reject(String),
}

impl Feasibility {
    pub fn is_accept(&self) -> bool {
        matches!(self, Feasibility::Accept { .. })
    }
}

/// Necessary condition: `lambda >= -1` and `k + lambda (v - 1)` a perfect square.
pub fn feasible(v: u64, k: i64, lambda: i64, sizes: Option<(u64, u64)>) -> Feasibility {
    if lambda < -1 {
        return Feasibility::Reject(format!("lambda = {lambda} < -1"));
    }
    let target = k + lambda * (v as i64 - 1);
    let Some(root) = exact_sqrt(target) else {
        return Feasibility::Reject(format!(
            "k + lambda(v-1) = {target} is not a perfect square"
        ));
    };
    if let Some((p, n)) = sizes {
        if (p + n) as i64 != k {
            return Feasibility::Reject(format!("|P| + |N| = {} differs from k = {k}", p + n));
        }
        if p.abs_diff(n) != root {
            return Feasibility::Reject(format!(
                "(|P| - |N|)^2 = {} differs from {target}",
                p.abs_diff(n).pow(2)
            ));
        }
    }
    Feasibility::Accept { root }
}

/// Nonzero squares of `F_q`, `q = 1 (mod 4)`.
pub fn paley_pds(field: &FiniteField) -> Result<GroupSubset> {
    if field.p() == 2 {
        return Err(Error::EvenOrder(field.q()));
    }
    if field.q() % 4 != 1 {
        return Err(Error::NotOneModFour(field.q()));
    }
    let group = AbelianGroup::additive(field);
    let squares = field
        .elements()
        .skip(1)
        .map(|x| field.mul(x, x).code())
        .collect();
    GroupSubset::new(group, squares)
}

/// `P = D'`, `N = G - D' - 0_G` for a regular PDS with `lambda - mu = -1`.
/// Returns the signed set with its verified `(v, v - 1, v - 4k + 4mu - 2)` parameters.
pub fn sds_from_pds(d: &GroupSubset) -> Result<(SignedSet, SdsParams)> {
    let report = verify_pds(d)?;
    if !report.regular {
        return Err(Error::NotRegular);
    }
    let PdsParams { v, k, lambda, mu } = report.params;
    if lambda - mu != -1 {
        return Err(Error::WrongLambdaMinusMu(lambda - mu));
    }
    let predicted = SdsParams {
        v,
        k: v as i64 - 1,
        lambda: v as i64 - 4 * k + 4 * mu - 2,
    };
    let negative = d.complement_without_identity();
    let set = SignedSet::new(d.group().clone(), d.elements.clone(), negative.elements)?;
    let found = verify_sds(&set.to_ring(), Strictness::Strict)?;
    if found != predicted {
        return Err(Error::ParamsMismatch {
            predicted: predicted.tuple(),
            found: found.tuple(),
        });
    }
    Ok((set, found))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaleyExistence {
    /// `v = p^n = 1 (mod 4)`; squares of `F_v` are a witness.
    PrimePower {
        p: u64,
        n: usize,
    },
    /// `v = n^4`, `n > 1` odd.
    FourthPower {
        n: u64,
    },
    /// `v = 9 n^4`, `n > 1` odd.
    NineTimesFourthPower {
        n: u64,
    },
    None,
}

impl PaleyExistence {
    pub fn exists(&self) -> bool {
        !matches!(self, PaleyExistence::None)
    }
}

fn odd_fourth_root(v: u64) -> Option<u64> {
    let r = (1..).take_while(|r: &u64| r.pow(4) <= v).last()?;
    (r.pow(4) == v && r > 1 && r % 2 == 1).then_some(r)
}

/// Existence of a Paley PDS in some abelian group of odd order `v`.
///
/// In a cyclic group of order `v = 1 (mod 4)` one exists only for prime `v`.
pub fn paley_exists(v: u64) -> Result<PaleyExistence> {
    if v.is_multiple_of(2) {
        return Err(Error::EvenOrder(v));
    }
    if v < 3 {
        return Ok(PaleyExistence::None);
    }
    if let Some((p, n)) = prime_power(v) {
        if v % 4 == 1 {
            return Ok(PaleyExistence::PrimePower { p, n });
        }
    }
    if let Some(n) = odd_fourth_root(v) {
        return Ok(PaleyExistence::FourthPower { n });
    }
    if v.is_multiple_of(9) {
        if let Some(n) = odd_fourth_root(v / 9) {
            return Ok(PaleyExistence::NineTimesFourthPower { n });
        }
    }
    Ok(PaleyExistence::None)
}

/// Linear code over `Z_p` given by a generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    p: u64,
    rows: Vec<Vec<u64>>,
}

impl LinearCode {
    pub fn new(p: u64, rows: Vec<Vec<u64>>) -> Self {
        Self { p, rows }
    }

    pub fn generator(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn length(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.length())
            .map(|j| self.rows.iter().map(|r| r[j]).collect())
            .collect()
    }

    /// Every codeword, by enumerating message vectors.
    pub fn codewords(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let total = p.pow(self.dimension() as u32);
        (0..total)
            .map(|mut code| {
                let mut word = vec![0u64; self.length()];
                for row in &self.rows {
                    let c = code % p;
                    code /= p;
                    for (w, &r) in word.iter_mut().zip(row) {
                        *w = (*w + c * r) % p;
                    }
                }
                word
            })
            .collect()
    }

    pub fn nonzero_weights(&self) -> BTreeSet<usize> {
        self.codewords()
            .iter()
            .map(|w| w.iter().filter(|&&c| c != 0).count())
            .filter(|&w| w > 0)
            .collect()
    }

    /// Basis of `{ y : G y = 0 }`, the dual code.
    pub fn dual(&self) -> Self {
        let p = self.p;
        let n = self.length();
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(pr) = (r..m.len()).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(r, pr);
            let inv = (1..p).find(|&x| x * m[r][col] % p == 1).unwrap();
            for c in m[r].iter_mut() {
                *c = *c * inv % p;
            }
            for i in 0..m.len() {
                if i != r && m[i][col] != 0 {
                    let f = m[i][col];
                    let pivot = m[r].clone();
                    for (c, &x) in m[i].iter_mut().zip(&pivot) {
                        *c = (*c + p * p - f * x) % p;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&fc| {
                let mut y = vec![0u64; n];
                y[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    y[pc] = (p - m[i][fc]) % p;
                }
                y
            })
            .collect();
        Self { p, rows }
    }

    /// Nonzero columns, pairwise not scalar multiples.
    pub fn is_projective(&self) -> bool {
        let cols = self.columns();
        let mut seen = BTreeSet::new();
        for col in cols {
            if col.iter().all(|&c| c == 0) {
                return false;
            }
            let lead = *col.iter().find(|&&c| c != 0).unwrap();
            let inv = (1..self.p).find(|&x| x * lead % self.p == 1).unwrap();
            let normalized: Vec<u64> = col.iter().map(|&c| c * inv % self.p).collect();
            if !seen.insert(normalized) {
                return false;
            }
        }
        true
    }
}

/// The `[11, 6]` cyclic ternary Golay code from the smallest degree-5 irreducible
/// factor of `x^11 - 1` over `Z_3`.
pub fn ternary_golay_code() -> Result<LinearCode> {
    let p = 3;
    let mut x11 = vec![0u64; 12];
    x11[0] = 2;
    x11[11] = 1;
    let x11 = Poly::new(p, x11);
    let generator = (0..243u64)
        .map(|low| {
            let mut c: Vec<u64> = (0..5).map(|i| low / 3u64.pow(i) % 3).collect();
            c.push(1);
            Poly::new(p, c)
        })
        .find(|g| x11.rem(g).is_zero() && g.is_irreducible())
        .ok_or_else(|| Error::Golay("x^11 - 1 has no degree-5 irreducible factor".into()))?;
    let rows = (0..6)
        .map(|shift| {
            let mut row = vec![0u64; 11];
            for (i, &c) in generator.coeffs().iter().enumerate() {
                row[i + shift] = c;
            }
            row
        })
        .collect();
    Ok(LinearCode::new(p, rows))
}

/// Regular `(243, 22, 1, 2)` PDS in `Z_3^5`: nonzero multiples of the columns
/// of a generator matrix of the dual Golay code.
pub fn golay_pds() -> Result<GroupSubset> {
    let code = ternary_golay_code()?;
    let dual = code.dual();
    if dual.dimension() != 5 {
        return Err(Error::Golay(format!(
            "dual code has dimension {}",
            dual.dimension()
        )));
    }
    let weights = dual.nonzero_weights();
    if weights != BTreeSet::from([6, 9]) {
        return Err(Error::Golay(format!(
            "dual weights {weights:?}, expected {{6, 9}}"
        )));
    }
    if !dual.is_projective() {
        return Err(Error::Golay(
            "dual generator columns are not projective".into(),
        ));
    }
    let group = AbelianGroup::new(&[3; 5])?;
    let mut elements = BTreeSet::new();
    for col in dual.columns() {
        for alpha in [1, 2] {
            let scaled: Vec<u64> = col.iter().map(|&c| c * alpha % 3).collect();
            elements.insert(group.index(&scaled)?);
        }
    }
    if elements.len() != 22 {
        return Err(Error::Golay(format!(
            "{} elements, expected 22",
            elements.len()
        )));
    }
    GroupSubset::new(group, elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr_signed_set(q: u64) -> SignedSet {
        let field = FiniteField::new(q, 1).unwrap();
        let (set, _) = sds_from_pds(&paley_pds(&field).unwrap()).unwrap();
        set
    }

    #[test]
    fn verify_sds_examples() {
        let d = qr_signed_set(13);
        assert_eq!(
            d.positive().iter().copied().collect::<Vec<_>>(),
            vec![1, 3, 4, 9, 10, 12]
        );
        let params = verify_sds(&d.to_ring(), Strictness::Strict).unwrap();
        assert_eq!(
            params,
            SdsParams {
                v: 13,
                k: 12,
                lambda: -1
            }
        );
        // brute-force difference counting on Z_13
        for tau in 1..13usize {
            let c: i64 = (0..13usize)
                .map(|i| d.to_ring().coeff((i + tau) % 13) * d.to_ring().coeff(i))
                .sum();
            assert_eq!(c, -1);
        }
        for orders in [vec![7], vec![3, 3]] {
            let g = AbelianGroup::new(&orders).unwrap();
            let p = verify_sds(&GroupRingElement::identity(&g), Strictness::Strict).unwrap();
            assert_eq!((p.k, p.lambda), (1, 0));
        }
    }

    #[test]
    fn verify_sds_failures() {
        let z7 = AbelianGroup::cyclic(7).unwrap();
        let d = GroupRingElement::indicator(&z7, [0, 1]).unwrap();
        assert!(matches!(
            verify_sds(&d, Strictness::Strict),
            Err(Error::NonConstant { .. })
        ));
        let big = d.scale(2);
        assert_eq!(
            verify_sds(&big, Strictness::Strict),
            Err(Error::NotStrict {
                element: 0,
                coefficient: 2
            })
        );
        assert!(matches!(
            verify_sds(&big, Strictness::Relaxed),
            Err(Error::NonConstant { .. })
        ));
    }

    #[test]
    fn character_route_matches_convolution() {
        let d = qr_signed_set(13).to_ring();
        assert_eq!(
            verify_sds_characters(&d).unwrap(),
            verify_sds(&d, Strictness::Strict).unwrap()
        );
        let z7 = AbelianGroup::cyclic(7).unwrap();
        let bad = GroupRingElement::indicator(&z7, [0, 1]).unwrap();
        assert!(matches!(
            verify_sds_characters(&bad),
            Err(Error::CharacterCheck { .. })
        ));
    }

    #[test]
    fn verify_pds_examples() {
        let f13 = FiniteField::new(13, 1).unwrap();
        let r = verify_pds(&paley_pds(&f13).unwrap()).unwrap();
        assert_eq!(
            r.params,
            PdsParams {
                v: 13,
                k: 6,
                lambda: 2,
                mu: 3
            }
        );
        assert!(r.regular);

        let z33 = AbelianGroup::new(&[3, 3]).unwrap();
        let listed: BTreeSet<usize> = [[1, 1], [2, 1], [1, 2], [2, 2]]
            .iter()
            .map(|c| z33.index(c).unwrap())
            .collect();
        let r = verify_pds(&GroupSubset::new(z33.clone(), listed).unwrap()).unwrap();
        assert_eq!(
            r.params,
            PdsParams {
                v: 9,
                k: 4,
                lambda: 1,
                mu: 2
            }
        );

        let empty = verify_pds(&GroupSubset::new(z33.clone(), BTreeSet::new()).unwrap()).unwrap();
        assert_eq!(
            empty.params,
            PdsParams {
                v: 9,
                k: 0,
                lambda: 0,
                mu: 0
            }
        );
        let with_zero = GroupSubset::new(z33, BTreeSet::from([0, 1])).unwrap();
        assert_eq!(verify_pds(&with_zero), Err(Error::IdentityInSet));
    }

    #[test]
    fn feasibility_examples() {
        assert_eq!(
            feasible(13, 12, -1, Some((6, 6))),
            Feasibility::Accept { root: 0 }
        );
        assert_eq!(
            feasible(243, 242, 161, None),
            Feasibility::Accept { root: 198 }
        );
        assert!(!feasible(7, 6, 1, None).is_accept());
        assert!(!feasible(7, 6, -2, None).is_accept());
        assert!(!feasible(13, 12, -1, Some((7, 5))).is_accept());
    }

    #[test]
    fn paley_pds_examples() {
        let f13 = FiniteField::new(13, 1).unwrap();
        let oracle: BTreeSet<usize> = (1..13usize).map(|x| x * x % 13).collect();
        assert_eq!(paley_pds(&f13).unwrap().elements(), &oracle);
        let f9 = FiniteField::new(3, 2).unwrap();
        let d9 = paley_pds(&f9).unwrap();
        assert_eq!(d9.len(), 4);
        assert_eq!(
            verify_pds(&d9).unwrap().params,
            PdsParams {
                v: 9,
                k: 4,
                lambda: 1,
                mu: 2
            }
        );
        assert_eq!(
            paley_pds(&FiniteField::new(7, 1).unwrap()),
            Err(Error::NotOneModFour(7))
        );
    }

    #[test]
    fn lift_examples() {
        let (_, params) =
            sds_from_pds(&paley_pds(&FiniteField::new(13, 1).unwrap()).unwrap()).unwrap();
        assert_eq!(
            params,
            SdsParams {
                v: 13,
                k: 12,
                lambda: -1
            }
        );
        // Singer (7, 3, 1) difference set: lambda = mu
        let z7 = AbelianGroup::cyclic(7).unwrap();
        let ds = GroupSubset::new(z7, BTreeSet::from([1, 2, 4])).unwrap();
        assert!(matches!(
            sds_from_pds(&ds),
            Err(Error::NotRegular) | Err(Error::WrongLambdaMinusMu(0))
        ));
        // symmetric DS: the whole Z_5 minus 0 is a (5,4,3) DS with lambda = mu
        let z5 = AbelianGroup::cyclic(5).unwrap();
        let full = GroupSubset::new(z5, (1..5).collect()).unwrap();
        assert_eq!(sds_from_pds(&full), Err(Error::WrongLambdaMinusMu(3)));
    }

    #[test]
    fn paley_exists_examples() {
        assert_eq!(
            paley_exists(13).unwrap(),
            PaleyExistence::PrimePower { p: 13, n: 1 }
        );
        assert!(paley_exists(81).unwrap().exists());
        assert_eq!(paley_exists(15).unwrap(), PaleyExistence::None);
        assert_eq!(
            paley_exists(625 * 81).unwrap(),
            PaleyExistence::FourthPower { n: 15 }
        );
        assert_eq!(
            paley_exists(9 * 625 * 81).unwrap(),
            PaleyExistence::NineTimesFourthPower { n: 15 }
        );
        assert_eq!(paley_exists(10), Err(Error::EvenOrder(10)));
    }

    #[test]
    fn golay_code_is_perfect() {
        let code = ternary_golay_code().unwrap();
        assert_eq!((code.length(), code.dimension()), (11, 6));
        assert_eq!(code.nonzero_weights().first(), Some(&5));
        // sphere packing: 3^6 * (1 + 2*11 + 4*55) = 3^11
        assert_eq!(729 * (1 + 22 + 220), 3u64.pow(11));
        let dual = code.dual();
        for a in dual.generator() {
            for b in code.generator() {
                assert_eq!(a.iter().zip(b).map(|(x, y)| x * y).sum::<u64>() % 3, 0);
            }
        }
    }

    #[test]
    fn golay_pds_parameters() {
        let d = golay_pds().unwrap();
        assert_eq!(d.len(), 22);
        let r = verify_pds(&d).unwrap();
        assert_eq!(
            r.params,
            PdsParams {
                v: 243,
                k: 22,
                lambda: 1,
                mu: 2
            }
        );
        assert!(r.regular);
        let c = verify_pds(&d.complement_without_identity()).unwrap();
        assert_eq!(
            c.params,
            PdsParams {
                v: 243,
                k: 220,
                lambda: 199,
                mu: 200
            }
        );
        assert_eq!(golay_pds().unwrap(), d);
    }

    /// Cyclic `Z_v`, `v = 1 (mod 4)`, `v <= 33`: a Paley PDS exists only for prime `v`.
    /// PDSs with `lambda != mu` avoiding 0 are symmetric, so it suffices to search
    /// unions of `{x, -x}` pairs.
    #[test]
    fn cyclic_paley_only_for_primes() {
        for v in (5..=33u64).step_by(4) {
            let g = AbelianGroup::cyclic(v).unwrap();
            let pairs = (v as usize - 1) / 2;
            let pick = (v as usize - 1) / 4;
            let target = PdsParams {
                v: v as usize,
                k: (v as i64 - 1) / 2,
                lambda: (v as i64 - 5) / 4,
                mu: (v as i64 - 1) / 4,
            };
            let mut found = false;
            for mask in 0u32..(1 << pairs) {
                if mask.count_ones() as usize != pick {
                    continue;
                }
                let elements: BTreeSet<usize> = (0..pairs)
                    .filter(|i| mask >> i & 1 == 1)
                    .flat_map(|i| [i + 1, v as usize - 1 - i])
                    .collect();
                let s = GroupSubset::new(g.clone(), elements).unwrap();
                if verify_pds(&s).is_ok_and(|r| r.params == target) {
                    found = true;
                    break;
                }
            }
            assert_eq!(found, crate::algebra::is_prime(v), "v = {v}");
        }
    }
}
