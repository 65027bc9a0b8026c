//! JSON form of an expansion:
//! `{"basis":"p","terms":[{"partition":[2],"num":1,"den":2},…]}`.
//!
//! Coefficients are written in lowest terms. Integers that do not fit in an
//! `i64` are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Basis, SymExpansion};
use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(JsonInt(v.into())),
            Raw::Text(t) => t.parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub partition: Partition,
    pub num: JsonInt,
    pub den: JsonInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionJson {
    pub basis: String,
    pub terms: Vec<TermJson>,
}

impl From<&SymExpansion> for ExpansionJson {
    fn from(x: &SymExpansion) -> Self {
        let terms = x
            .terms
            .iter()
            .rev()
            .map(|(p, c)| TermJson {
                partition: p.clone(),
                num: JsonInt(c.numer().clone()),
                den: JsonInt(c.denom().clone()),
            })
            .collect();
        Self {
            basis: x.basis.tag().to_string(),
            terms,
        }
    }
}

impl ExpansionJson {
    pub fn to_expansion(&self) -> Result<SymExpansion> {
        let basis = Basis::from_tag(&self.basis)?;
        let mut out = SymExpansion::zero_inhomogeneous(basis);
        for t in &self.terms {
            if t.den.0.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            out.add_term_unchecked(
                t.partition.clone(),
                BigRational::new(t.num.0.clone(), t.den.0.clone()),
            );
        }
        out.inhomogeneous = out.weight().is_none() && !out.is_zero();
        Ok(out)
    }
}

impl SymExpansion {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ExpansionJson::from(self)).expect("expansion serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ExpansionJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.to_expansion()
    }
}
