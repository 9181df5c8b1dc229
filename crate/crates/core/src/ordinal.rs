//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An ordinal is a finite sum `w^e1*c1 + w^e2*c2 + ...` with strictly
//! decreasing exponents `e1 > e2 > ...` (themselves ordinals) and positive
//! coefficients. The empty sum is zero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `w^exp`.
    pub fn omega_pow(exp: Ordinal) -> Self {
        Self::monomial(exp, 1)
    }

    /// `w^exp * coeff`; zero when `coeff == 0`.
    pub fn monomial(exp: Ordinal, coeff: u64) -> Self {
        if coeff == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(exp, coeff)],
            }
        }
    }

    /// Builds an ordinal from explicit CNF terms, checking the normal-form
    /// invariants.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self> {
        for (i, (_, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(Error::syntax(i, "CNF coefficient must be positive"));
            }
            if i > 0 && terms[i - 1].0 <= terms[i].0 {
                return Err(Error::syntax(i, "CNF exponents must strictly decrease"));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Nonzero with no finite tail.
    pub fn is_limit(&self) -> bool {
        match self.terms.last() {
            None => false,
            Some((e, _)) => !e.is_zero(),
        }
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    /// `β` with `β + 1 = self`, when `self` is a successor.
    pub fn predecessor(&self) -> Option<Ordinal> {
        let (last_exp, last_coeff) = self.terms.last()?;
        if !last_exp.is_zero() {
            return None;
        }
        let mut terms = self.terms.clone();
        if *last_coeff == 1 {
            terms.pop();
        } else {
            terms.last_mut().unwrap().1 -= 1;
        }
        Some(Ordinal { terms })
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Ordinal sum `self + other`. Terms of `self` below the leading
    /// exponent of `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead_exp, lead_coeff)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut merged = None;
        for (e, c) in &self.terms {
            match e.cmp(lead_exp) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => merged = Some(*c),
                Ordering::Less => break,
            }
        }
        terms.push((lead_exp.clone(), lead_coeff + merged.unwrap_or(0)));
        terms.extend(other.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    /// Left subtraction: the unique `δ` with `beta + δ = self`.
    pub fn sub(&self, beta: &Ordinal) -> Result<Ordinal> {
        let err = || Error::BetaExceedsGamma {
            gamma: self.to_string(),
            beta: beta.to_string(),
        };
        let n = self.terms.len().min(beta.terms.len());
        for i in 0..n {
            let (ge, gc) = &self.terms[i];
            let (be, bc) = &beta.terms[i];
            match ge.cmp(be) {
                Ordering::Less => return Err(err()),
                Ordering::Greater => {
                    return Ok(Ordinal {
                        terms: self.terms[i..].to_vec(),
                    })
                }
                Ordering::Equal => match gc.cmp(bc) {
                    Ordering::Less => return Err(err()),
                    Ordering::Greater => {
                        let mut terms = vec![(ge.clone(), gc - bc)];
                        terms.extend(self.terms[i + 1..].iter().cloned());
                        return Ok(Ordinal { terms });
                    }
                    Ordering::Equal => {}
                },
            }
        }
        if beta.terms.len() > self.terms.len() {
            return Err(err());
        }
        Ok(Ordinal {
            terms: self.terms[n..].to_vec(),
        })
    }

    /// Splits `self = beta + n` with `beta` zero or a limit.
    pub fn split_limit_finite(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => (
                Ordinal {
                    terms: self.terms[..self.terms.len() - 1].to_vec(),
                },
                *c,
            ),
            _ => (self.clone(), 0),
        }
    }

    /// Ordinal product. Only used to read well-ordered products of order
    /// terms back as ordinals.
    pub(crate) fn mul(&self, other: &Ordinal) -> Ordinal {
        if self.is_zero() || other.is_zero() {
            return Ordinal::zero();
        }
        let (lead_exp, lead_coeff) = &self.terms[0];
        let mut out = Ordinal::zero();
        for (e, c) in &other.terms {
            let piece = if e.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = lead_coeff * c;
                Ordinal { terms }
            } else {
                Ordinal::monomial(lead_exp.add(e), *c)
            };
            out = out.add(&piece);
        }
        out
    }

    /// Random ordinal strictly below `self`, biased towards small finite
    /// values and short normal forms.
    pub fn random_below<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Ordinal> {
        if self.is_zero() {
            return None;
        }
        if let Some(n) = self.as_nat() {
            return Some(Ordinal::nat(rng.random_range(0..n)));
        }
        if rng.random_bool(0.35) {
            return Some(Ordinal::nat(small_nat(rng)));
        }
        let i = rng.random_range(0..self.terms.len());
        let mut terms: Vec<(Ordinal, u64)> = self.terms[..i].to_vec();
        let (e, c) = &self.terms[i];
        let keep = rng.random_range(0..*c);
        if keep > 0 {
            terms.push((e.clone(), keep));
        }
        let tail = random_below_power(e, rng, 3);
        Some(Ordinal { terms }.add(&tail))
    }
}

pub(crate) fn small_nat<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    if rng.random_bool(0.5) {
        let mut k = 0;
        while k < 40 && rng.random_bool(0.5) {
            k += 1;
        }
        k
    } else {
        rng.random_range(0..12)
    }
}

// Random ordinal below w^exp.
fn random_below_power<R: Rng + ?Sized>(exp: &Ordinal, rng: &mut R, depth: u32) -> Ordinal {
    if exp.is_zero() || depth == 0 || rng.random_bool(0.25) {
        return Ordinal::zero();
    }
    let e = exp.random_below(rng).unwrap_or_default();
    let c = 1 + small_nat(rng) % 4;
    let head = Ordinal::monomial(e.clone(), c);
    head.add(&random_below_power(&e, rng, depth - 1))
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(&other.terms) {
            match ea.cmp(eb).then(ca.cmp(cb)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e.as_nat() {
                Some(0) => write!(f, "{c}")?,
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None => write!(f, "w^({e})")?,
            }
            if *c > 1 && !e.is_zero() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::cli::parse::parse_ordinal(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms: Vec<(Ordinal, u64)> = Vec::deserialize(deserializer)?;
        Ordinal::from_terms(terms).map_err(serde::de::Error::custom)
    }
}
