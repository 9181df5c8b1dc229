use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::rational::Rational;
use super::{Exponent, OrderTerm};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// A concrete element of some [`OrderTerm`]. The variant must match the
/// constructor of the term it is used with.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Element {
    Fin(u64),
    Omega(u64),
    /// Counted from the top: `OmegaStar(0)` is the greatest element.
    OmegaStar(u64),
    Zeta(i64),
    Eta(Rational),
    Left(Box<Element>),
    Right(Box<Element>),
    Pair(Box<Element>, Box<Element>),
    Fs(Support),
}

/// Index of a finite-support function: an ordinal below an ordinal
/// exponent, or an element of a term exponent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Position {
    Ord(Ordinal),
    Elem(Element),
}

impl Position {
    pub fn as_ord(&self) -> Option<&Ordinal> {
        match self {
            Position::Ord(o) => Some(o),
            Position::Elem(_) => None,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Position::Ord(o) => serde_json::to_value(o).expect("ordinal serializes"),
            Position::Elem(e) => e.to_json(),
        }
    }

    /// Ordinal positions are accepted in the CNF array encoding, as a
    /// natural number, or as an ordinal expression string such as `"w+1"`.
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(_) => serde_json::from_value(v.clone())
                .map(Position::Ord)
                .map_err(|e| Error::syntax(0, format!("bad ordinal position: {e}"))),
            Value::Number(n) => n
                .as_u64()
                .map(|k| Position::Ord(Ordinal::nat(k)))
                .ok_or_else(|| Error::syntax(0, format!("bad ordinal position: {n}"))),
            Value::String(s) => s.parse().map(Position::Ord),
            _ => Element::from_json(v).map(Position::Elem),
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Ord(o) => write!(f, "{o}"),
            Position::Elem(e) => write!(f, "{e}"),
        }
    }
}

impl From<Ordinal> for Position {
    fn from(o: Ordinal) -> Self {
        Position::Ord(o)
    }
}

/// Non-basepoint values of a finite-support function, sorted by strictly
/// increasing position.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Support(Vec<(Position, Element)>);

impl Support {
    pub fn empty() -> Self {
        Support(Vec::new())
    }

    /// Wraps entries already sorted by position with no basepoint values.
    /// Use [`crate::exponential::fs_make`] for unchecked input.
    pub(crate) fn from_sorted(entries: Vec<(Position, Element)>) -> Self {
        Support(entries)
    }

    pub fn entries(&self) -> &[(Position, Element)] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<(Position, Element)> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, p: &Position) -> Option<&Element> {
        self.0.iter().find(|(q, _)| q == p).map(|(_, v)| v)
    }

    /// Value at `p`, falling back to the basepoint.
    pub fn value_at<'a>(&'a self, p: &Position, point: &'a Element) -> &'a Element {
        self.get(p).unwrap_or(point)
    }

    /// Greatest position in the support.
    pub fn top(&self) -> Option<&(Position, Element)> {
        self.0.last()
    }

    pub fn bottom(&self) -> Option<&(Position, Element)> {
        self.0.first()
    }
}

impl Element {
    pub fn left(e: Element) -> Self {
        Element::Left(Box::new(e))
    }

    pub fn right(e: Element) -> Self {
        Element::Right(Box::new(e))
    }

    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn eta(p: i64, q: i64) -> Self {
        Element::Eta(Rational::new(p, q))
    }

    pub fn as_pair(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_support(&self) -> Option<&Support> {
        match self {
            Element::Fs(s) => Some(s),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Element::Fin(i) => json!({ "fin": i }),
            Element::Omega(k) => json!({ "omega": k }),
            Element::OmegaStar(k) => json!({ "omegastar": k }),
            Element::Zeta(z) => json!({ "zeta": z }),
            Element::Eta(q) => json!({ "eta": [q.numer(), q.denom()] }),
            Element::Left(e) => json!({ "left": e.to_json() }),
            Element::Right(e) => json!({ "right": e.to_json() }),
            Element::Pair(a, b) => json!({ "pair": [a.to_json(), b.to_json()] }),
            Element::Fs(s) => {
                let entries: Vec<Value> =
                    s.0.iter()
                        .map(|(p, v)| json!([p.to_json(), v.to_json()]))
                        .collect();
                json!({ "fs": entries })
            }
        }
    }

    /// Decodes the element JSON encoding. The result is not checked against
    /// any term; see [`OrderTerm::check`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::syntax(0, format!("{msg}: {v}"));
        let obj = v
            .as_object()
            .ok_or_else(|| bad("element must be an object"))?;
        if obj.len() != 1 {
            return Err(bad("element object must have exactly one key"));
        }
        let (key, val) = obj.iter().next().unwrap();
        let nat = |val: &Value| val.as_u64().ok_or_else(|| bad("expected a natural number"));
        Ok(match key.as_str() {
            "fin" => Element::Fin(nat(val)?),
            "omega" => Element::Omega(nat(val)?),
            "omegastar" => Element::OmegaStar(nat(val)?),
            "zeta" => Element::Zeta(val.as_i64().ok_or_else(|| bad("expected an integer"))?),
            "eta" => {
                let pq = val
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad("eta expects [p,q]"))?;
                let p = pq[0].as_i64().ok_or_else(|| bad("eta numerator"))?;
                let q = pq[1]
                    .as_i64()
                    .filter(|q| *q != 0)
                    .ok_or_else(|| bad("eta denominator"))?;
                Element::eta(p, q)
            }
            "left" => Element::left(Element::from_json(val)?),
            "right" => Element::right(Element::from_json(val)?),
            "pair" => {
                let ab = val
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad("pair expects [e1,e2]"))?;
                Element::pair(Element::from_json(&ab[0])?, Element::from_json(&ab[1])?)
            }
            "fs" => {
                let items = val.as_array().ok_or_else(|| bad("fs expects a list"))?;
                let mut entries = Vec::with_capacity(items.len());
                for item in items {
                    let pv = item
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| bad("fs entry expects [pos,value]"))?;
                    entries.push((Position::from_json(&pv[0])?, Element::from_json(&pv[1])?));
                }
                Element::Fs(Support(entries))
            }
            other => return Err(bad(&format!("unknown element kind `{other}`"))),
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl OrderTerm {
    pub(crate) fn mismatch(&self, e: &Element) -> Error {
        Error::ShapeMismatch {
            term: self.to_string(),
            element: e.to_string(),
        }
    }

    /// Checks that `e` is a valid element of this term, including the
    /// normal-form invariants of finite-support functions.
    pub fn check(&self, e: &Element) -> Result<()> {
        match (self, e) {
            (OrderTerm::Fin(n), Element::Fin(i)) if i < n => Ok(()),
            (OrderTerm::Omega, Element::Omega(_))
            | (OrderTerm::OmegaStar, Element::OmegaStar(_))
            | (OrderTerm::Zeta, Element::Zeta(_))
            | (OrderTerm::Eta, Element::Eta(_)) => Ok(()),
            (OrderTerm::Sum(a, _), Element::Left(x)) => a.check(x),
            (OrderTerm::Sum(_, b), Element::Right(y)) => b.check(y),
            (OrderTerm::Prod(a, b), Element::Pair(x, y)) => {
                a.check(x)?;
                b.check(y)
            }
            (OrderTerm::Rev(inner), _) => inner.check(e),
            (
                OrderTerm::Exp {
                    base,
                    point,
                    exponent,
                },
                Element::Fs(s),
            ) => check_support(base, point, exponent, s).map_err(|err| match err {
                Error::ShapeMismatch { .. } => self.mismatch(e),
                other => other,
            }),
            _ => Err(self.mismatch(e)),
        }
    }
}

pub(crate) fn check_support(
    base: &OrderTerm,
    point: &Element,
    exponent: &Exponent,
    s: &Support,
) -> Result<()> {
    for (i, (p, v)) in s.0.iter().enumerate() {
        exponent.check_position(p)?;
        base.check(v)?;
        if v == point {
            return Err(Error::ShapeMismatch {
                term: base.to_string(),
                element: format!("basepoint value stored at {p}"),
            });
        }
        if i > 0 && exponent.compare_positions(&s.0[i - 1].0, p)? != std::cmp::Ordering::Less {
            return Err(Error::InvalidPosition {
                position: p.to_string(),
                exponent: exponent.to_string(),
            });
        }
    }
    Ok(())
}
