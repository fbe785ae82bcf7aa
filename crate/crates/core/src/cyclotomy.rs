//! Fourth-order cyclotomy of `F_q`, `q = 1 (mod 4)`.
//!
//! `C_i = w^i <w^4>` for `i = 0..3`. Cyclotomic numbers `(i, j) = |(C_i + 1) n C_j|`
//! have closed forms in the pair `(s, t)` with `q = s^2 + t^2`; the sign of `t` is
//! tied to the choice of `w` through `w^{(q-1)/4} = s / t` in `Z_p`.
//!
//! The case classifier enumerates every signed set built from the classes and
//! `{0}`, predicts existence from `(s, t, f, p)`, and verifies each candidate by
//! convolution.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{exact_sqrt, isqrt, prime_power, FieldElement, FiniteField};
use crate::designs::{feasible, verify_sds, Feasibility, SdsParams, Strictness};
use crate::error::{Error, Result};
use crate::groupring::{GroupRingElement, SignedSet};
use crate::groups::AbelianGroup;

#[derive(Debug, Clone)]
pub struct CyclotomicSystem {
    field: FiniteField,
    f: u64,
    class_of: Vec<Option<u8>>,
    classes: [BTreeSet<usize>; 4],
}

impl CyclotomicSystem {
    /// Classes relative to `w`, or to the field's own primitive element.
    pub fn new(field: &FiniteField, w: Option<FieldElement>) -> Result<Self> {
        if field.q() % 4 != 1 {
            return Err(Error::NotOneModFour(field.q()));
        }
        let field = match w {
            Some(w) => field.with_primitive(w)?,
            None => field.clone(),
        };
        let f = (field.q() - 1) / 4;
        let mut class_of = vec![None; field.order()];
        let mut classes: [BTreeSet<usize>; 4] = Default::default();
        for x in field.elements().skip(1) {
            let c = (field.log(x).expect("nonzero") % 4) as u8;
            class_of[x.code()] = Some(c);
            classes[c as usize].insert(x.code());
        }
        Ok(Self {
            field,
            f,
            class_of,
            classes,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn w(&self) -> FieldElement {
        self.field.primitive()
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::additive(&self.field)
    }

    pub fn class(&self, i: u8) -> &BTreeSet<usize> {
        &self.classes[i as usize % 4]
    }

    pub fn class_of(&self, x: FieldElement) -> Option<u8> {
        self.class_of[x.code()]
    }

    /// `(i, j) = |(C_i + 1) n C_j|` by direct count.
    pub fn cyclo_number_oracle(&self, i: u8, j: u8) -> u64 {
        self.class(i)
            .iter()
            .filter(|&&x| {
                self.class_of(self.field.add(FieldElement(x), FieldElement::ONE)) == Some(j % 4)
            })
            .count() as u64
    }

    pub fn quartic_params(&self) -> Result<QuarticParams> {
        quartic_params(&self.field)
    }

    pub fn cyclo_number_table(&self, i: u8, j: u8) -> Result<u64> {
        cyclo_number_table(self.q(), self.quartic_params()?, i, j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuarticParams {
    pub s: i64,
    pub t: i64,
}

fn mod_inverse(a: i64, p: i64) -> Option<i64> {
    let a = a.rem_euclid(p);
    (1..p).find(|&x| a * x % p == 1)
}

/// `(s, t)` for the field's primitive element.
pub fn quartic_params(field: &FiniteField) -> Result<QuarticParams> {
    let (p, n, q) = (field.p(), field.n(), field.q());
    if q % 4 != 1 {
        return Err(Error::NotOneModFour(q));
    }
    if p % 4 == 3 {
        // q = 1 (mod 4) forces n even here
        let s = (-(p as i64)).pow((n / 2) as u32);
        return Ok(QuarticParams { s, t: 0 });
    }
    let root = isqrt(q) as i64;
    let candidates: Vec<(i64, u64)> = (-root..=root)
        .filter(|s| s.rem_euclid(4) == 1 && s.rem_euclid(p as i64) != 0)
        .filter_map(|s| exact_sqrt(q as i64 - s * s).map(|t| (s, t)))
        .collect();
    let &[(s, t_abs)] = &candidates[..] else {
        return Err(Error::Internal(format!(
            "q = {q}: expected one (s, |t|), found {candidates:?}"
        )));
    };
    let quarter = field.pow(field.primitive(), (q - 1) / 4);
    if !field.in_prime_subfield(quarter) {
        return Err(Error::Internal(format!("w^((q-1)/4) not in Z_{p}")));
    }
    let target = quarter.code() as i64;
    let p = p as i64;
    for t in [t_abs as i64, -(t_abs as i64)] {
        let ratio = mod_inverse(t, p).map(|inv| s.rem_euclid(p) * inv % p);
        if ratio == Some(target) {
            return Ok(QuarticParams { s, t });
        }
    }
    Err(Error::Internal(format!(
        "q = {q}: no sign of t matches w^((q-1)/4) = {target}"
    )))
}

/// Letter layout of the `(i, j)` tables for even and odd `f`.
const TABLE_F_EVEN: [[u8; 4]; 4] = [*b"ABCD", *b"BDEE", *b"CECE", *b"DEEB"];
const TABLE_F_ODD: [[u8; 4]; 4] = [*b"ABCD", *b"EEDB", *b"AEAE", *b"EDBE"];

/// Closed-form cyclotomic number of order 4.
pub fn cyclo_number_table(q: u64, params: QuarticParams, i: u8, j: u8) -> Result<u64> {
    let QuarticParams { s, t } = params;
    let q = q as i64;
    let f_even = ((q - 1) / 4) % 2 == 0;
    let (letter, numerator) = if f_even {
        let l = TABLE_F_EVEN[i as usize % 4][j as usize % 4];
        let num = match l {
            b'A' => q - 11 - 6 * s,
            b'B' => q - 3 + 2 * s + 4 * t,
            b'C' => q - 3 + 2 * s,
            b'D' => q - 3 + 2 * s - 4 * t,
            _ => q + 1 - 2 * s,
        };
        (l, num)
    } else {
        let l = TABLE_F_ODD[i as usize % 4][j as usize % 4];
        let num = match l {
            b'A' => q - 7 + 2 * s,
            b'B' => q + 1 + 2 * s - 4 * t,
            b'C' => q + 1 - 6 * s,
            b'D' => q + 1 + 2 * s + 4 * t,
            _ => q - 3 - 2 * s,
        };
        (l, num)
    };
    if numerator < 0 || numerator % 16 != 0 {
        return Err(Error::Internal(format!(
            "cyclotomic number {} = {numerator}/16 is not a nonnegative integer (s = {s}, t = {t})",
            letter as char
        )));
    }
    Ok((numerator / 16) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuarticDsReport {
    /// `q = 4t^2 + 1`, `t` odd.
    pub c0_criterion: bool,
    /// `C_0` verified as a `(q, (q-1)/4, (q-5)/16)` difference set.
    pub c0_verified: bool,
    /// `q = 4t^2 + 9`, `t` odd.
    pub c0_zero_criterion: bool,
    /// `C_0 + 0_G` verified as a `(q, (q+3)/4, (q+3)/16)` difference set.
    pub c0_zero_verified: bool,
}

impl QuarticDsReport {
    pub fn consistent(&self) -> bool {
        self.c0_criterion == self.c0_verified && self.c0_zero_criterion == self.c0_zero_verified
    }
}

/// `q = 4t^2 + c` for some odd `t > 0`.
fn four_t_squared_plus(q: u64, c: u64) -> bool {
    q > c
        && (q - c).is_multiple_of(4)
        && exact_sqrt(((q - c) / 4) as i64).is_some_and(|t| t % 2 == 1)
}

fn is_difference_set(
    group: &AbelianGroup,
    elements: &BTreeSet<usize>,
    expected: (i64, i64),
) -> bool {
    let d = GroupRingElement::indicator(group, elements.iter().copied()).expect("indices in range");
    verify_sds(&d, Strictness::Strict).is_ok_and(|p| (p.k, p.lambda) == expected)
}

/// Difference-set tests for `C_0` and `C_0 + 0_G`, by criterion and by convolution.
pub fn quartic_ds_test(sys: &CyclotomicSystem) -> QuarticDsReport {
    let q = sys.q();
    let group = sys.group();
    let c0 = sys.class(0).clone();
    let qi = q as i64;
    let c0_verified =
        (qi - 5) % 16 == 0 && is_difference_set(&group, &c0, ((qi - 1) / 4, (qi - 5) / 16));
    let mut c0z = c0;
    c0z.insert(0);
    let c0_zero_verified =
        (qi + 3) % 16 == 0 && is_difference_set(&group, &c0z, ((qi + 3) / 4, (qi + 3) / 16));
    QuarticDsReport {
        c0_criterion: four_t_squared_plus(q, 1),
        c0_verified,
        c0_zero_criterion: four_t_squared_plus(q, 9),
        c0_zero_verified,
    }
}

/// Rows of the fourth-order cyclotomic SDS table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    /// `P = G - 0`, `N = 0`
    C1a,
    /// `P = G - C_i - 0`, `N = C_i + 0`
    C1b,
    /// `P = C_i + C_j`, `N = G - C_i - C_j`
    C1c,
    /// `P = C_i`, `N = G - C_i`
    C1d,
    /// `P = G - C_i - 0`, `N = C_i`
    C2a,
    /// `P = C_i + C_j`, `N = G - C_i - C_j - 0`
    C2b,
    /// `P = C_i`, `N = G - C_i - C_j`
    C3a,
    /// `P = G - C_i - C_j - 0`, `N = C_i + 0`
    C3b,
    /// `P = G - C_j - 0`, `N = 0`
    C3c,
    /// `P = C_i`, `N = G - C_i - C_j - 0`
    C4,
    /// `P = C_i`, `N = 0`
    C5,
    /// `P = C_i`, `N = C_j + 0`
    C6a,
    /// `P = C_i`, `N = C_j`
    C6b,
}

impl CaseId {
    pub const ALL: [CaseId; 13] = [
        CaseId::C1a,
        CaseId::C1b,
        CaseId::C1c,
        CaseId::C1d,
        CaseId::C2a,
        CaseId::C2b,
        CaseId::C3a,
        CaseId::C3b,
        CaseId::C3c,
        CaseId::C4,
        CaseId::C5,
        CaseId::C6a,
        CaseId::C6b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::C1a => "1a",
            CaseId::C1b => "1b",
            CaseId::C1c => "1c",
            CaseId::C1d => "1d",
            CaseId::C2a => "2a",
            CaseId::C2b => "2b",
            CaseId::C3a => "3a",
            CaseId::C3b => "3b",
            CaseId::C3c => "3c",
            CaseId::C4 => "4",
            CaseId::C5 => "5",
            CaseId::C6a => "6a",
            CaseId::C6b => "6b",
        }
    }

    /// Admissible `(i, j)` index choices.
    pub fn candidates(self) -> Vec<Candidate> {
        let pairs_ordered = || {
            (0..4u8).flat_map(|i| {
                (0..4u8)
                    .filter(move |&j| j != i)
                    .map(move |j| (Some(i), Some(j)))
            })
        };
        let list: Vec<(Option<u8>, Option<u8>)> = match self {
            CaseId::C1a => vec![(None, None)],
            CaseId::C1b | CaseId::C1d | CaseId::C2a | CaseId::C5 => {
                (0..4).map(|i| (Some(i), None)).collect()
            }
            CaseId::C3c => (0..4).map(|j| (None, Some(j))).collect(),
            CaseId::C1c | CaseId::C2b => (0..4u8)
                .flat_map(|i| (i + 1..4).map(move |j| (Some(i), Some(j))))
                .collect(),
            CaseId::C3a | CaseId::C3b | CaseId::C4 | CaseId::C6a | CaseId::C6b => {
                pairs_ordered().collect()
            }
        };
        list.into_iter()
            .map(|(i, j)| Candidate { case: self, i, j })
            .collect()
    }

    /// Cases the table lists with a dash.
    pub fn never_reason(self) -> Option<&'static str> {
        match self {
            CaseId::C1c => Some("C_i + C_j is never a difference set"),
            CaseId::C2a => {
                Some("equal class coefficients force s = -1 (f odd) or q = 9 with f = 1 (f even)")
            }
            CaseId::C6a | CaseId::C6b => Some("lambda = -1/2"),
            _ => None,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidCase(format!("unknown case {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Candidate {
    pub case: CaseId,
    pub i: Option<u8>,
    pub j: Option<u8>,
}

impl Candidate {
    /// Validates the index choice for `case`.
    pub fn new(case: CaseId, i: Option<u8>, j: Option<u8>) -> Result<Self> {
        let c = Candidate { case, i, j };
        let admissible = case.candidates();
        if admissible.contains(&c) {
            return Ok(c);
        }
        // unordered pairs given in either order
        if let (Some(a), Some(b)) = (i, j) {
            let swapped = Candidate {
                case,
                i: Some(b),
                j: Some(a),
            };
            if matches!(case, CaseId::C1c | CaseId::C2b) && admissible.contains(&swapped) {
                return Ok(swapped);
            }
        }
        Err(Error::InvalidCase(format!(
            "case {case} does not accept i = {i:?}, j = {j:?}"
        )))
    }

    /// `(i - j) mod 4`
    pub fn diff(&self) -> Option<u8> {
        Some((self.i? + 4 - self.j?) % 4)
    }
}

/// Table prediction for one candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    /// `k` from the table row.
    pub k: i64,
    /// `lambda` from the table row, when integral.
    pub lambda: Option<i64>,
    /// The row's existence condition holds.
    pub holds: bool,
    pub reason: String,
}

fn quarter(num: i64) -> Option<i64> {
    (num % 4 == 0).then_some(num / 4)
}

/// Evaluates the table condition for `candidate` given `(s, t)`.
pub fn predict(q: u64, p: u64, params: QuarticParams, candidate: &Candidate) -> Prediction {
    let QuarticParams { s, t } = params;
    let f = ((q - 1) / 4) as i64;
    let qi = q as i64;
    let d = candidate.diff();
    let f1 = f % 4 == 1;
    let f3 = f % 4 == 3;
    let case = candidate.case;
    if let Some(reason) = case.never_reason() {
        let k = match case {
            CaseId::C1c => qi,
            CaseId::C2a => qi - 1,
            CaseId::C6a => 2 * f + 1,
            _ => 2 * f,
        };
        return Prediction {
            k,
            lambda: None,
            holds: false,
            reason: reason.into(),
        };
    }
    let (k, lambda, holds, reason): (i64, Option<i64>, bool, String) = match case {
        CaseId::C1a => (qi, Some(qi - 4), true, "always".into()),
        CaseId::C1b => (
            qi,
            quarter(qi - 9),
            four_t_squared_plus(q, 9),
            "q = 4t^2 + 9, t odd".into(),
        ),
        CaseId::C1d => (
            qi,
            quarter(qi - 1),
            four_t_squared_plus(q, 1),
            "q = 4t^2 + 1, t odd".into(),
        ),
        CaseId::C2b => {
            let holds = d == Some(2) || p % 4 == 3;
            let reason = if d == Some(2) {
                "i - j = 2 (mod 4)"
            } else {
                "i - j = 1, 3 (mod 4) and p = 3 (mod 4)"
            };
            (qi - 1, Some(-1), holds, reason.into())
        }
        CaseId::C3a => {
            let (holds, reason) = match d {
                Some(1) => (4 * t + 3 * s == 3, "f = 1 (mod 4), 4t + 3s = 3"),
                Some(2) => (s == 9, "f = 1 (mod 4), s = 9"),
                _ => (3 * s - 4 * t == 3, "f = 1 (mod 4), 3s - 4t = 3"),
            };
            (3 * f + 1, quarter(f - 1), f1 && holds, reason.into())
        }
        CaseId::C3b => {
            let (holds, reason) = match d {
                Some(1) => (3 * s + 4 * t == -5, "f = 1 (mod 4), 3s + 4t = -5"),
                Some(2) => (s == -15, "f = 1 (mod 4), s = -15"),
                _ => (4 * t - 3 * s == 5, "f = 1 (mod 4), 4t - 3s = 5"),
            };
            (3 * f + 1, quarter(f - 5), f1 && holds, reason.into())
        }
        CaseId::C3c => (
            3 * f + 1,
            quarter(9 * f - 9),
            f1 && s == -7,
            "f = 1 (mod 4), s = -7".into(),
        ),
        CaseId::C4 => {
            let (holds, reason) = match d {
                Some(1) => (3 * s + 4 * t == -1, "f = 3 (mod 4), 3s + 4t = -1"),
                Some(2) => (s == -3, "f = 3 (mod 4), s = -3"),
                _ => (3 * s - 4 * t == -1, "f = 3 (mod 4), 3s - 4t = -1"),
            };
            (3 * f, quarter(f - 3), f3 && holds, reason.into())
        }
        CaseId::C5 => (
            f + 1,
            quarter(f - 3),
            f3 && s == 5,
            "f = 3 (mod 4), s = 5".into(),
        ),
        CaseId::C1c | CaseId::C2a | CaseId::C6a | CaseId::C6b => unreachable!(),
    };
    Prediction {
        k,
        lambda,
        holds: holds && lambda.is_some(),
        reason,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseConstruction {
    pub candidate: Candidate,
    pub set: SignedSet,
    pub prediction: Prediction,
}

fn union(parts: &[&BTreeSet<usize>]) -> BTreeSet<usize> {
    parts.iter().flat_map(|s| s.iter().copied()).collect()
}

/// Builds the candidate's signed set and attaches the table prediction.
pub fn construct_case(sys: &CyclotomicSystem, candidate: &Candidate) -> Result<CaseConstruction> {
    let candidate = Candidate::new(candidate.case, candidate.i, candidate.j)?;
    let group = sys.group();
    let zero = BTreeSet::from([0usize]);
    let everything: BTreeSet<usize> = group.elements().collect();
    let nonzero: BTreeSet<usize> = group.elements().skip(1).collect();
    let c = |x: Option<u8>| sys.class(x.expect("validated index"));
    let minus = |a: &BTreeSet<usize>, b: &BTreeSet<usize>| -> BTreeSet<usize> {
        a.difference(b).copied().collect()
    };
    let (i, j) = (candidate.i, candidate.j);
    let (positive, negative) = match candidate.case {
        CaseId::C1a => (nonzero.clone(), zero.clone()),
        CaseId::C1b => (minus(&nonzero, c(i)), union(&[c(i), &zero])),
        CaseId::C1c => {
            let p = union(&[c(i), c(j)]);
            (p.clone(), minus(&everything, &p))
        }
        CaseId::C1d => (c(i).clone(), minus(&everything, c(i))),
        CaseId::C2a => (minus(&nonzero, c(i)), c(i).clone()),
        CaseId::C2b => {
            let p = union(&[c(i), c(j)]);
            (p.clone(), minus(&nonzero, &p))
        }
        CaseId::C3a => (c(i).clone(), minus(&everything, &union(&[c(i), c(j)]))),
        CaseId::C3b => (
            minus(&nonzero, &union(&[c(i), c(j)])),
            union(&[c(i), &zero]),
        ),
        CaseId::C3c => (minus(&nonzero, c(j)), zero.clone()),
        CaseId::C4 => (c(i).clone(), minus(&nonzero, &union(&[c(i), c(j)]))),
        CaseId::C5 => (c(i).clone(), zero.clone()),
        CaseId::C6a => (c(i).clone(), union(&[c(j), &zero])),
        CaseId::C6b => (c(i).clone(), c(j).clone()),
    };
    let set = SignedSet::new(group, positive, negative)?;
    let params = sys.quartic_params()?;
    let prediction = predict(sys.q(), sys.field().p(), params, &candidate);
    Ok(CaseConstruction {
        candidate,
        set,
        prediction,
    })
}

/// One classified candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub q: u64,
    pub candidate: Candidate,
    pub prediction: Prediction,
    /// `|P| + |N|` of the constructed set.
    pub size: usize,
    /// Convolution result.
    pub verified: Option<SdsParams>,
    /// `||P| - |N||` when the verified parameters pass the feasibility test.
    pub root: Option<u64>,
}

impl ClassRow {
    /// Prediction and verification agree, including the parameters.
    pub fn agrees(&self) -> bool {
        if self.size as i64 != self.prediction.k {
            return false;
        }
        match (&self.verified, self.prediction.holds) {
            (Some(found), true) => {
                Some(found.lambda) == self.prediction.lambda
                    && found.k == self.prediction.k
                    && self.root.is_some()
            }
            (None, false) => true,
            _ => false,
        }
    }

    pub fn record(&self) -> String {
        let idx = |x: Option<u8>| x.map_or("-".to_string(), |v| v.to_string());
        let lambda = self
            .prediction
            .lambda
            .map_or("-".to_string(), |l| l.to_string());
        let verified = match &self.verified {
            Some(p) => format!("({},{},{})", p.v, p.k, p.lambda),
            None => "no".into(),
        };
        format!(
            "q={} case={} i={} j={} predicted=({},{},{}) condition={} verified={} root={} agree={}",
            self.q,
            self.candidate.case,
            idx(self.candidate.i),
            idx(self.candidate.j),
            self.q,
            self.prediction.k,
            lambda,
            self.prediction.holds,
            verified,
            self.root.map_or("-".to_string(), |r| r.to_string()),
            self.agrees()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub q: u64,
    pub w: FieldElement,
    pub params: QuarticParams,
    pub rows: Vec<ClassRow>,
}

impl ClassificationReport {
    pub fn disagreements(&self) -> Vec<&ClassRow> {
        self.rows.iter().filter(|r| !r.agrees()).collect()
    }

    /// Verified rows.
    pub fn existing(&self) -> impl Iterator<Item = &ClassRow> {
        self.rows.iter().filter(|r| r.verified.is_some())
    }

    /// Case families with at least one verified candidate.
    pub fn existing_cases(&self) -> BTreeSet<CaseId> {
        self.existing().map(|r| r.candidate.case).collect()
    }
}

pub fn classify_row(sys: &CyclotomicSystem, candidate: &Candidate) -> Result<ClassRow> {
    let built = construct_case(sys, candidate)?;
    let verified = verify_sds(&built.set.to_ring(), Strictness::Strict).ok();
    let root = verified.and_then(|p| {
        let sizes = (
            built.set.positive().len() as u64,
            built.set.negative().len() as u64,
        );
        match feasible(p.v as u64, p.k, p.lambda, Some(sizes)) {
            Feasibility::Accept { root } => Some(root),
            Feasibility::Reject(_) => None,
        }
    });
    Ok(ClassRow {
        q: sys.q(),
        candidate: built.candidate,
        prediction: built.prediction,
        size: built.set.size(),
        verified,
        root,
    })
}

/// Every case and index choice for one system, in table order.
pub fn classify_cases(sys: &CyclotomicSystem) -> Result<ClassificationReport> {
    let params = sys.quartic_params()?;
    let rows = CaseId::ALL
        .iter()
        .flat_map(|c| c.candidates())
        .map(|cand| classify_row(sys, &cand))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport {
        q: sys.q(),
        w: sys.w(),
        params,
        rows,
    })
}

/// Field of order `q` with default modulus and primitive element.
pub fn field_of_order(q: u64) -> Result<FiniteField> {
    let (p, n) = prime_power(q).ok_or(Error::NotPrime(q))?;
    FiniteField::new(p, n)
}

/// Prime powers `q = 1 (mod 4)` with `5 <= q <= max_q`.
pub fn admissible_orders(max_q: u64) -> Vec<u64> {
    (5..=max_q)
        .filter(|&q| q % 4 == 1 && prime_power(q).is_some())
        .collect()
}

/// Classification of every admissible `q <= max_q`, ascending in `q`.
pub fn classify_range(max_q: u64) -> Result<Vec<ClassificationReport>> {
    admissible_orders(max_q)
        .into_par_iter()
        .map(|q| classify_cases(&CyclotomicSystem::new(&field_of_order(q)?, None)?))
        .collect()
}

/// Per-family existence under the configured `w` and under some primitive element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyExistence {
    pub case: CaseId,
    pub configured: bool,
    pub some_primitive: bool,
}

pub fn family_existence(field: &FiniteField) -> Result<Vec<FamilyExistence>> {
    let configured = classify_cases(&CyclotomicSystem::new(field, None)?)?.existing_cases();
    let mut any = BTreeSet::new();
    for w in field.primitive_elements() {
        any.extend(classify_cases(&CyclotomicSystem::new(field, Some(w))?)?.existing_cases());
    }
    Ok(CaseId::ALL
        .iter()
        .map(|&case| FamilyExistence {
            case,
            configured: configured.contains(&case),
            some_primitive: any.contains(&case),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(q: u64) -> CyclotomicSystem {
        CyclotomicSystem::new(&field_of_order(q).unwrap(), None).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn classes_gf13() {
        let s = sys(13);
        assert_eq!(s.w(), FieldElement(2));
        // powers of 2 mod 13 bucketed by exponent mod 4
        let mut oracle: [BTreeSet<usize>; 4] = Default::default();
        let mut x = 1usize;
        for e in 0..12 {
            oracle[e % 4].insert(x);
            x = x * 2 % 13;
        }
        assert_eq!(oracle[0], set(&[1, 3, 9]));
        assert_eq!(oracle[1], set(&[2, 5, 6]));
        assert_eq!(oracle[2], set(&[4, 10, 12]));
        assert_eq!(oracle[3], set(&[7, 8, 11]));
        for i in 0..4 {
            assert_eq!(s.class(i), &oracle[i as usize]);
        }
    }

    #[test]
    fn classes_gf5_and_rejections() {
        let s = sys(5);
        assert_eq!(s.f(), 1);
        assert_eq!(s.class(0), &set(&[1]));
        assert!(matches!(
            CyclotomicSystem::new(&FiniteField::new(2, 3).unwrap(), None),
            Err(Error::NotOneModFour(8))
        ));
        assert!(matches!(
            CyclotomicSystem::new(&FiniteField::new(7, 1).unwrap(), None),
            Err(Error::NotOneModFour(7))
        ));
    }

    #[test]
    fn class_of_is_multiplicative() {
        let s = sys(37);
        let f = s.field();
        for a in f.elements().skip(1) {
            for b in f.elements().skip(1).step_by(5) {
                let sum = (s.class_of(a).unwrap() + s.class_of(b).unwrap()) % 4;
                assert_eq!(s.class_of(f.mul(a, b)), Some(sum));
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let s13 = sys(13);
        assert_eq!(s13.cyclo_number_oracle(0, 0), 0);
        assert_eq!(s13.cyclo_number_oracle(0, 2), 2);
        let s17 = sys(17);
        assert_eq!(s17.w(), FieldElement(3));
        assert_eq!(s17.cyclo_number_oracle(0, 1), 2);
    }

    #[test]
    fn quartic_params_examples() {
        assert_eq!(
            sys(13).quartic_params().unwrap(),
            QuarticParams { s: -3, t: -2 }
        );
        assert_eq!(
            sys(17).quartic_params().unwrap(),
            QuarticParams { s: 1, t: 4 }
        );
        assert_eq!(
            sys(9).quartic_params().unwrap(),
            QuarticParams { s: -3, t: 0 }
        );
        assert_eq!(
            sys(81).quartic_params().unwrap(),
            QuarticParams { s: 9, t: 0 }
        );
    }

    #[test]
    fn table_examples() {
        let p13 = QuarticParams { s: -3, t: -2 };
        assert_eq!(cyclo_number_table(13, p13, 0, 2).unwrap(), 2);
        assert_eq!(cyclo_number_table(13, p13, 0, 0).unwrap(), 0);
        assert_eq!(
            cyclo_number_table(17, QuarticParams { s: 1, t: 4 }, 0, 1).unwrap(),
            2
        );
        assert!(cyclo_number_table(13, QuarticParams { s: 1, t: 2 }, 0, 0).is_err());
    }

    #[test]
    fn table_matches_oracle_small() {
        for q in [5, 9, 13, 17, 25, 29, 37, 41, 49] {
            let s = sys(q);
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(
                        s.cyclo_number_table(i, j).unwrap(),
                        s.cyclo_number_oracle(i, j),
                        "q={q} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn row_sums() {
        for q in admissible_orders(120) {
            let s = sys(q);
            let total: u64 = (0..4).map(|j| s.cyclo_number_oracle(0, j)).sum();
            assert_eq!(total, s.f() - s.f().is_multiple_of(2) as u64, "q={q}");
        }
    }

    #[test]
    fn ds_tests() {
        let r5 = quartic_ds_test(&sys(5));
        assert!(r5.c0_criterion && r5.c0_verified);
        let r13 = quartic_ds_test(&sys(13));
        assert!(r13.c0_zero_criterion && r13.c0_zero_verified);
        assert!(!r13.c0_criterion && !r13.c0_verified);
        let r17 = quartic_ds_test(&sys(17));
        assert!(
            !r17.c0_criterion
                && !r17.c0_verified
                && !r17.c0_zero_criterion
                && !r17.c0_zero_verified
        );
        for q in admissible_orders(200) {
            assert!(quartic_ds_test(&sys(q)).consistent(), "q={q}");
        }
    }

    #[test]
    fn construct_examples_q13() {
        let s = sys(13);
        let c4 =
            construct_case(&s, &Candidate::new(CaseId::C4, Some(0), Some(2)).unwrap()).unwrap();
        assert_eq!(c4.set.positive(), &set(&[1, 3, 9]));
        assert_eq!(c4.set.negative(), &set(&[2, 5, 6, 7, 8, 11]));
        assert!(c4.prediction.holds);
        assert_eq!(
            verify_sds(&c4.set.to_ring(), Strictness::Strict).unwrap(),
            SdsParams {
                v: 13,
                k: 9,
                lambda: 0
            }
        );
        let c2 =
            construct_case(&s, &Candidate::new(CaseId::C2b, Some(0), Some(2)).unwrap()).unwrap();
        assert_eq!(c2.set.positive(), &set(&[1, 3, 4, 9, 10, 12]));
        assert_eq!(
            verify_sds(&c2.set.to_ring(), Strictness::Strict).unwrap(),
            SdsParams {
                v: 13,
                k: 12,
                lambda: -1
            }
        );
        let c6 =
            construct_case(&s, &Candidate::new(CaseId::C6b, Some(0), Some(1)).unwrap()).unwrap();
        assert!(!c6.prediction.holds);
        assert_eq!(c6.prediction.reason, "lambda = -1/2");
        assert!(Candidate::new(CaseId::C4, Some(1), Some(1)).is_err());
        assert!(Candidate::new(CaseId::C5, None, None).is_err());
        assert!("7".parse::<CaseId>().is_err());
    }

    #[test]
    fn classify_q13() {
        let r = classify_cases(&sys(13)).unwrap();
        assert!(r.disagreements().is_empty(), "{:#?}", r.disagreements());
        let found: BTreeSet<(CaseId, i64, i64)> = r
            .existing()
            .map(|row| row.verified.unwrap())
            .zip(r.existing())
            .map(|(p, row)| (row.candidate.case, p.k, p.lambda))
            .collect();
        assert!(found.contains(&(CaseId::C1b, 13, 1)));
        assert!(found.contains(&(CaseId::C2b, 12, -1)));
        assert!(found.contains(&(CaseId::C4, 9, 0)));
        assert!(!r.existing_cases().contains(&CaseId::C1d));
        assert!(!r.existing_cases().contains(&CaseId::C5));
    }

    #[test]
    fn classify_q29_and_q53() {
        let r29 = classify_cases(&sys(29)).unwrap();
        assert!(r29.disagreements().is_empty());
        assert!(r29.existing().any(|row| row.candidate.case == CaseId::C5
            && row.verified
                == Some(SdsParams {
                    v: 29,
                    k: 8,
                    lambda: 1
                })));
        let r53 = classify_cases(&sys(53)).unwrap();
        assert!(r53.disagreements().is_empty());
        assert!(r53.existing().any(|row| row.candidate.case == CaseId::C3c
            && row.verified
                == Some(SdsParams {
                    v: 53,
                    k: 40,
                    lambda: 27
                })));
    }
}
