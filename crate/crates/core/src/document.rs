//! JSON file format for signed sets and relaxed group-ring elements.
//!
//! ```json
//! {
//!   "group": { "type": "cyclic", "orders": [13], "field": { "p": 13, "n": 1, "modulus": [0, 1], "w": [2] } },
//!   "positive": [[1], [3], [4], [9], [10], [12]],
//!   "negative": [[2], [5], [6], [7], [8], [11]],
//!   "params": { "v": 13, "k": 12, "lambda": -1 }
//! }
//! ```
//!
//! Repeated tuples in a list raise the coefficient, so relaxed elements with
//! coefficients of absolute value 2 or more are representable.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime, FieldElement, FiniteField};
use crate::designs::SdsParams;
use crate::error::{Error, Result};
use crate::groupring::{GroupRingElement, SignedSet};
use crate::groups::AbelianGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Cyclic,
    Elementary,
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: usize,
    /// Monic modulus, constant term first.
    pub modulus: Vec<u64>,
    /// Coordinates of the primitive element.
    pub w: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    #[serde(rename = "type")]
    pub kind: GroupKind,
    pub orders: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredParams {
    pub v: usize,
    pub k: i64,
    pub lambda: i64,
}

impl From<SdsParams> for DeclaredParams {
    fn from(p: SdsParams) -> Self {
        Self {
            v: p.v,
            k: p.k,
            lambda: p.lambda,
        }
    }
}

impl From<DeclaredParams> for SdsParams {
    fn from(p: DeclaredParams) -> Self {
        Self {
            v: p.v,
            k: p.k,
            lambda: p.lambda,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignedSetDocument {
    pub group: GroupDescriptor,
    pub positive: Vec<Vec<u64>>,
    pub negative: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<DeclaredParams>,
}

fn kind_of(group: &AbelianGroup) -> GroupKind {
    let orders = group.orders();
    if orders.len() == 1 {
        GroupKind::Cyclic
    } else if is_prime(orders[0]) && orders.iter().all(|&o| o == orders[0]) {
        GroupKind::Elementary
    } else {
        GroupKind::Product
    }
}

impl SignedSetDocument {
    /// Lists each element `|a_g|` times on the side of its sign.
    pub fn from_element(
        d: &GroupRingElement,
        field: Option<&FiniteField>,
        params: Option<SdsParams>,
    ) -> Self {
        let group = d.group();
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (g, c) in d.support() {
            let side = if c > 0 { &mut positive } else { &mut negative };
            for _ in 0..c.abs() {
                side.push(group.coords(g));
            }
        }
        let field = field.map(|f| FieldDescriptor {
            p: f.p(),
            n: f.n(),
            modulus: f.modulus().to_vec(),
            w: f.coords(f.primitive()),
        });
        Self {
            group: GroupDescriptor {
                kind: kind_of(group),
                orders: group.orders().to_vec(),
                field,
            },
            positive,
            negative,
            params: params.map(DeclaredParams::from),
        }
    }

    pub fn from_signed_set(
        d: &SignedSet,
        field: Option<&FiniteField>,
        params: Option<SdsParams>,
    ) -> Self {
        Self::from_element(&d.to_ring(), field, params)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        doc.element()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn group(&self) -> Result<AbelianGroup> {
        let g = &self.group;
        let group = AbelianGroup::new(&g.orders)?;
        let consistent = match g.kind {
            GroupKind::Cyclic => g.orders.len() == 1,
            GroupKind::Elementary => {
                is_prime(g.orders[0]) && g.orders.iter().all(|&o| o == g.orders[0])
            }
            GroupKind::Product => true,
        };
        if !consistent {
            return Err(Error::Document(format!(
                "orders {:?} do not describe a {:?} group",
                g.orders, g.kind
            )));
        }
        if let Some(f) = &g.field {
            if g.orders.len() != f.n || g.orders.iter().any(|&o| o != f.p) {
                return Err(Error::Document(format!(
                    "orders {:?} are not the additive group of F_{}^{}",
                    g.orders, f.p, f.n
                )));
            }
        }
        Ok(group)
    }

    pub fn field(&self) -> Result<Option<FiniteField>> {
        self.group
            .field
            .as_ref()
            .map(|f| FiniteField::from_parts(f.p, f.n, &f.modulus, &f.w))
            .transpose()
    }

    pub fn primitive(&self) -> Result<Option<FieldElement>> {
        Ok(self.field()?.map(|f| f.primitive()))
    }

    fn indices(&self, group: &AbelianGroup, list: &[Vec<u64>]) -> Result<Vec<usize>> {
        list.iter()
            .map(|c| {
                group.index(c).map_err(|_| Error::BadCoordinates {
                    coords: c.clone(),
                    context: format!("group with orders {:?}", group.orders()),
                })
            })
            .collect()
    }

    /// `sum P - sum N`, rejecting out-of-range tuples and elements on both sides.
    pub fn element(&self) -> Result<GroupRingElement> {
        let group = self.group()?;
        self.field()?;
        let pos = self.indices(&group, &self.positive)?;
        let neg = self.indices(&group, &self.negative)?;
        let pos_set: BTreeSet<usize> = pos.iter().copied().collect();
        if let Some(&g) = neg.iter().find(|g| pos_set.contains(g)) {
            return Err(Error::Overlap(g));
        }
        let mut coeffs = vec![0i64; group.order()];
        for g in pos {
            coeffs[g] += 1;
        }
        for g in neg {
            coeffs[g] -= 1;
        }
        GroupRingElement::new(group, coeffs)
    }

    pub fn signed_set(&self) -> Result<SignedSet> {
        self.element()?.to_signed_set()
    }

    pub fn declared(&self) -> Option<SdsParams> {
        self.params.map(SdsParams::from)
    }
}
