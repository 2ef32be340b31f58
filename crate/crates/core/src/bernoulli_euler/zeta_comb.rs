use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{parse_rational, Rational};

/// Formal rational combination `c + sum_s c_s * ζ(s)/π^s` over odd `s >= 3`.
///
/// The symbols `ζ(s)/π^s` for distinct odd `s` are treated as linearly
/// independent, so equality is coefficient-wise. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZetaComb {
    constant: Rational,
    zeta: BTreeMap<u64, Rational>,
}

impl ZetaComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self { constant: c, zeta: BTreeMap::new() }
    }

    /// `c * ζ(s)/π^s` for odd `s >= 3`.
    pub fn symbol(s: u64, c: Rational) -> Self {
        assert!(s >= 3 && s % 2 == 1, "ζ symbols are odd arguments >= 3, got {s}");
        let mut out = Self::zero();
        out.add_term(s, c);
        out
    }

    fn add_term(&mut self, s: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.zeta.entry(s).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.zeta.remove(&s);
        }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    /// Coefficient of `ζ(s)/π^s`.
    pub fn coeff(&self, s: u64) -> Rational {
        self.zeta.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.zeta.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.zeta.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (s, c) in &other.zeta {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            constant: &self.constant * k,
            zeta: self.zeta.iter().map(|(s, c)| (*s, c * k)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }
}

impl fmt::Display for ZetaComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.constant.is_zero() || self.zeta.is_empty() {
            parts.push(self.constant.to_string());
        }
        for (s, c) in &self.zeta {
            parts.push(format!("({c})ζ({s})/π^{s}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Deserialize)]
struct Wire {
    #[serde(rename = "const")]
    constant: String,
    zeta: BTreeMap<String, String>,
}

// Keys in numeric order.
struct ZetaMap<'a>(&'a BTreeMap<u64, Rational>);

impl Serialize for ZetaMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k.to_string(), v.to_string())))
    }
}

impl Serialize for ZetaComb {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ZetaComb", 2)?;
        st.serialize_field("const", &self.constant.to_string())?;
        st.serialize_field("zeta", &ZetaMap(&self.zeta))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ZetaComb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let mut out = ZetaComb::constant(parse_rational(&w.constant).map_err(D::Error::custom)?);
        for (k, v) in w.zeta {
            let s: u64 = k.parse().map_err(D::Error::custom)?;
            if s < 3 || s % 2 == 0 {
                return Err(D::Error::custom(format!("ζ key must be an odd integer >= 3, got {s}")));
            }
            out.add_term(s, parse_rational(&v).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn arithmetic_drops_zeros() {
        let a = ZetaComb::symbol(3, rat(7, 4));
        let b = ZetaComb::symbol(3, rat(-7, 4)).add(&ZetaComb::symbol(5, int(1)));
        let s = a.add(&b);
        assert_eq!(s.coeff(3), int(0));
        assert_eq!(s.terms().count(), 1);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.scale(&int(0)), ZetaComb::zero());
    }

    #[test]
    fn json_schema() {
        let z = ZetaComb::constant(rat(1, 4)).add(&ZetaComb::symbol(3, rat(7, 2))).add(&ZetaComb::symbol(5, rat(93, 2)));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"const":"1/4","zeta":{"3":"7/2","5":"93/2"}}"#);
        let back: ZetaComb = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<ZetaComb>(r#"{"const":"0","zeta":{"4":"1"}}"#).is_err());
    }
}
