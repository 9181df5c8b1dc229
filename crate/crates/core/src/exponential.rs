//! Finite-support exponentials `(L,a)^E`.
//!
//! An element is a function from the exponent `E` into the base `L` that
//! takes the value `a` at all but finitely many positions; only the other
//! positions are stored. Functions compare by their values at the greatest
//! position where they differ.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linorder::{Element, Exponent, Extremum, OrderTerm, Position, Support};
use crate::ordinal::Ordinal;

/// The carrier `(base, point)^exponent`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpSpace {
    term: OrderTerm,
}

impl ExpSpace {
    pub fn new(
        base: OrderTerm,
        point: Element,
        exponent: impl Into<Exponent>,
    ) -> Result<Arc<Self>> {
        Ok(Arc::new(ExpSpace {
            term: OrderTerm::exp(base, point, exponent)?,
        }))
    }

    pub fn from_term(term: &OrderTerm) -> Result<Arc<Self>> {
        match term {
            OrderTerm::Exp { .. } => Ok(Arc::new(ExpSpace { term: term.clone() })),
            _ => Err(Error::unsupported(format!("{term} is not an exponential"))),
        }
    }

    pub fn term(&self) -> &OrderTerm {
        &self.term
    }

    fn parts(&self) -> (&OrderTerm, &Element, &Exponent) {
        self.term.as_exp().expect("ExpSpace holds an exponential")
    }

    pub fn base(&self) -> &OrderTerm {
        self.parts().0
    }

    pub fn point(&self) -> &Element {
        self.parts().1
    }

    pub fn exponent(&self) -> &Exponent {
        self.parts().2
    }

    /// The same base and exponent with another basepoint.
    pub fn with_point(&self, point: Element) -> Result<Arc<Self>> {
        ExpSpace::new(self.base().clone(), point, self.exponent().clone())
    }

    /// The constant function at the basepoint.
    pub fn constant(self: &Arc<Self>) -> FsFunction {
        FsFunction {
            space: Arc::clone(self),
            support: Support::empty(),
        }
    }

    /// Interprets an element of [`ExpSpace::term`] as a function.
    pub fn wrap(self: &Arc<Self>, e: &Element) -> Result<FsFunction> {
        self.term.check(e)?;
        match e {
            Element::Fs(s) => Ok(FsFunction {
                space: Arc::clone(self),
                support: s.clone(),
            }),
            _ => Err(self.term.mismatch(e)),
        }
    }
}

impl fmt::Display for ExpSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FsFunction {
    space: Arc<ExpSpace>,
    support: Support,
}

impl FsFunction {
    pub fn space(&self) -> &Arc<ExpSpace> {
        &self.space
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn element(&self) -> Element {
        Element::Fs(self.support.clone())
    }

    pub fn into_element(self) -> Element {
        Element::Fs(self.support)
    }

    pub fn value_at(&self, p: &Position) -> &Element {
        self.support.value_at(p, self.space.point())
    }

    pub fn is_constant(&self) -> bool {
        self.support.is_empty()
    }

    /// The restriction to positions strictly below the ordinal `beta`,
    /// as a function over `beta`.
    pub fn restrict_below(&self, beta: &Ordinal) -> Result<FsFunction> {
        let space = self.space.with_exponent(beta.clone())?;
        let entries = self
            .support
            .entries()
            .iter()
            .filter(|(p, _)| p.as_ord().is_some_and(|o| o < beta))
            .cloned()
            .collect();
        Ok(FsFunction {
            space,
            support: Support::from_sorted(entries),
        })
    }
}

impl ExpSpace {
    fn with_exponent(&self, exponent: impl Into<Exponent>) -> Result<Arc<Self>> {
        ExpSpace::new(self.base().clone(), self.point().clone(), exponent)
    }
}

impl fmt::Display for FsFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Element::Fs(self.support.clone()))
    }
}

/// Builds a normalized function from explicit assignments. Values equal to
/// the basepoint are dropped.
pub fn fs_make(space: &Arc<ExpSpace>, assignments: Vec<(Position, Element)>) -> Result<FsFunction> {
    let exponent = space.exponent();
    let mut entries = Vec::with_capacity(assignments.len());
    for (p, v) in assignments {
        exponent.check_position(&p)?;
        space.base().check(&v)?;
        if &v != space.point() {
            entries.push((p, v));
        }
    }
    let mut err = None;
    entries.sort_by(|x, y| {
        exponent.compare_positions(&x.0, &y.0).unwrap_or_else(|e| {
            err = Some(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::InvalidPosition {
            position: format!("{} (assigned twice)", w[0].0),
            exponent: exponent.to_string(),
        });
    }
    Ok(FsFunction {
        space: Arc::clone(space),
        support: Support::from_sorted(entries),
    })
}

/// Convenience for ordinal exponents: assignments keyed by naturals.
pub fn fs_from_nat_pairs(space: &Arc<ExpSpace>, pairs: &[(u64, Element)]) -> Result<FsFunction> {
    fs_make(
        space,
        pairs
            .iter()
            .map(|(p, v)| (Position::Ord(Ordinal::nat(*p)), v.clone()))
            .collect(),
    )
}

pub fn fs_compare(f: &FsFunction, g: &FsFunction) -> Result<Ordering> {
    if f.space != g.space {
        return Err(Error::IncompatibleExponentials);
    }
    f.space.term.compare(&f.element(), &g.element())
}

/// Immediate neighbors; the base must be discrete and unbounded, in which
/// case only the value at the least position moves.
pub fn fs_neighbors(f: &FsFunction) -> Result<(Option<FsFunction>, Option<FsFunction>)> {
    let base = f.space.base();
    if !base.classify()?.discrete_unbounded() {
        return Err(Error::UnsupportedBase(base.to_string()));
    }
    let (p, s) = f.space.term.neighbors(&f.element())?;
    let wrap = |e: Option<Element>| -> Result<Option<FsFunction>> {
        e.map(|e| f.space.wrap(&e)).transpose()
    };
    Ok((wrap(p)?, wrap(s)?))
}

fn exponent_sum(space: &ExpSpace) -> Result<(&OrderTerm, &OrderTerm)> {
    match space.exponent().as_term() {
        Some(OrderTerm::Sum(a, b)) => Ok((a, b)),
        _ => Err(Error::ExponentNotSum(space.exponent().to_string())),
    }
}

fn exponent_prod(space: &ExpSpace) -> Result<(&OrderTerm, &OrderTerm)> {
    match space.exponent().as_term() {
        Some(OrderTerm::Prod(a, b)) => Ok((a, b)),
        _ => Err(Error::ExponentNotProd(space.exponent().to_string())),
    }
}

/// The two factor spaces `(L,a)^E1` and `(L,a)^E2` of an exponent `E1 + E2`.
pub fn split_sum_spaces(space: &ExpSpace) -> Result<(Arc<ExpSpace>, Arc<ExpSpace>)> {
    let (a, b) = exponent_sum(space)?;
    Ok((
        space.with_exponent(a.clone())?,
        space.with_exponent(b.clone())?,
    ))
}

/// `(L,a)^(E1+E2) -> (L,a)^E1 * (L,a)^E2`, splitting the support by side.
pub fn iso_split_sum(f: &FsFunction) -> Result<(FsFunction, FsFunction)> {
    let (s1, s2) = split_sum_spaces(&f.space)?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (p, v) in f.support.entries() {
        match p {
            Position::Elem(Element::Left(x)) => {
                left.push((Position::Elem((**x).clone()), v.clone()))
            }
            Position::Elem(Element::Right(y)) => {
                right.push((Position::Elem((**y).clone()), v.clone()))
            }
            _ => return Err(f.space.term.mismatch(&f.element())),
        }
    }
    Ok((
        FsFunction {
            space: s1,
            support: Support::from_sorted(left),
        },
        FsFunction {
            space: s2,
            support: Support::from_sorted(right),
        },
    ))
}

pub fn iso_split_sum_inverse(
    space: &Arc<ExpSpace>,
    f1: &FsFunction,
    f2: &FsFunction,
) -> Result<FsFunction> {
    let (s1, s2) = split_sum_spaces(space)?;
    if f1.space != s1 || f2.space != s2 {
        return Err(Error::IncompatibleExponentials);
    }
    let entries = f1
        .support
        .entries()
        .iter()
        .map(|(p, v)| (tag_position(p, Element::left), v.clone()))
        .chain(
            f2.support
                .entries()
                .iter()
                .map(|(p, v)| (tag_position(p, Element::right), v.clone())),
        )
        .collect();
    Ok(FsFunction {
        space: Arc::clone(space),
        support: Support::from_sorted(entries),
    })
}

fn tag_position(p: &Position, tag: fn(Element) -> Element) -> Position {
    match p {
        Position::Elem(e) => Position::Elem(tag(e.clone())),
        Position::Ord(_) => unreachable!("term exponents have element positions"),
    }
}

/// The outer space `((L,a)^E1, const)^E2` of an exponent `E1 * E2`, together
/// with the inner space `(L,a)^E1`.
pub fn curry_spaces(space: &ExpSpace) -> Result<(Arc<ExpSpace>, Arc<ExpSpace>)> {
    let (a, b) = exponent_prod(space)?;
    let inner = space.with_exponent(a.clone())?;
    let outer = ExpSpace::new(inner.term.clone(), Element::Fs(Support::empty()), b.clone())?;
    Ok((outer, inner))
}

/// `(L,a)^(E1*E2) -> ((L,a)^E1)^E2`, grouping the support by the second
/// coordinate.
pub fn iso_curry(f: &FsFunction) -> Result<FsFunction> {
    let (outer, _) = curry_spaces(&f.space)?;
    let mut groups: Vec<(Position, Vec<(Position, Element)>)> = Vec::new();
    for (p, v) in f.support.entries() {
        let Position::Elem(Element::Pair(x, y)) = p else {
            return Err(f.space.term.mismatch(&f.element()));
        };
        let key = Position::Elem((**y).clone());
        let item = (Position::Elem((**x).clone()), v.clone());
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, items)) => items.push(item),
            None => groups.push((key, vec![item])),
        }
    }
    let inner_space = outer.base().clone();
    let inner_exp = inner_space
        .as_exp()
        .map(|(_, _, e)| e.clone())
        .expect("inner exponential");
    let mut entries = Vec::with_capacity(groups.len());
    for (key, mut items) in groups {
        let mut err = None;
        items.sort_by(|x, y| {
            inner_exp.compare_positions(&x.0, &y.0).unwrap_or_else(|e| {
                err = Some(e);
                Ordering::Equal
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
        entries.push((key, Element::Fs(Support::from_sorted(items))));
    }
    fs_make(&outer, entries)
}

pub fn iso_curry_inverse(space: &Arc<ExpSpace>, g: &FsFunction) -> Result<FsFunction> {
    let (outer, _) = curry_spaces(space)?;
    if g.space != outer {
        return Err(Error::IncompatibleExponentials);
    }
    let mut assignments = Vec::new();
    for (y, inner) in g.support.entries() {
        let (Position::Elem(y), Element::Fs(inner)) = (y, inner) else {
            return Err(outer.term.mismatch(&g.element()));
        };
        for (x, v) in inner.entries() {
            let Position::Elem(x) = x else {
                return Err(outer.term.mismatch(&g.element()));
            };
            assignments.push((
                Position::Elem(Element::pair(x.clone(), y.clone())),
                v.clone(),
            ));
        }
    }
    fs_make(space, assignments)
}

/// Where a function sits in the decomposition
/// `(sum over b in alpha* of (L,a)^b * L_<a) + 1 + (sum over b in alpha of (L,a)^b * L_>a)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RemRepLocator {
    Below {
        top_index: Ordinal,
        top_value: Element,
        prefix: FsFunction,
    },
    Middle,
    Above {
        top_index: Ordinal,
        top_value: Element,
        prefix: FsFunction,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RemBranch {
    Below,
    Middle,
    Above,
}

impl RemRepLocator {
    pub fn branch(&self) -> RemBranch {
        match self {
            RemRepLocator::Below { .. } => RemBranch::Below,
            RemRepLocator::Middle => RemBranch::Middle,
            RemRepLocator::Above { .. } => RemBranch::Above,
        }
    }
}

pub fn locate_rem_rep(f: &FsFunction) -> Result<RemRepLocator> {
    if f.space.exponent().as_ordinal().is_none() {
        return Err(Error::unsupported("locator needs an ordinal exponent"));
    }
    let Some((top, value)) = f.support.top() else {
        return Ok(RemRepLocator::Middle);
    };
    let top_index = top.as_ord().expect("ordinal position").clone();
    let prefix = f.restrict_below(&top_index)?;
    let top_value = value.clone();
    Ok(match f.space.base().compare(value, f.space.point())? {
        Ordering::Less => RemRepLocator::Below {
            top_index,
            top_value,
            prefix,
        },
        Ordering::Greater => RemRepLocator::Above {
            top_index,
            top_value,
            prefix,
        },
        Ordering::Equal => unreachable!("basepoint values are never stored"),
    })
}

/// Order of the decomposition: `Below` summands in decreasing index, the
/// middle point, then `Above` summands in increasing index; colex inside
/// each summand.
pub fn locator_compare(base: &OrderTerm, x: &RemRepLocator, y: &RemRepLocator) -> Result<Ordering> {
    use RemRepLocator::*;
    let rank = |l: &RemRepLocator| l.branch() as u8;
    match (x, y) {
        (
            Below {
                top_index: i,
                top_value: u,
                prefix: p,
            },
            Below {
                top_index: j,
                top_value: v,
                prefix: q,
            },
        ) => Ok(j
            .cmp(i)
            .then(base.compare(u, v)?)
            .then(summand_cmp(i, j, p, q)?)),
        (
            Above {
                top_index: i,
                top_value: u,
                prefix: p,
            },
            Above {
                top_index: j,
                top_value: v,
                prefix: q,
            },
        ) => Ok(i
            .cmp(j)
            .then(base.compare(u, v)?)
            .then(summand_cmp(i, j, p, q)?)),
        _ => Ok(rank(x).cmp(&rank(y))),
    }
}

fn summand_cmp(i: &Ordinal, j: &Ordinal, p: &FsFunction, q: &FsFunction) -> Result<Ordering> {
    if i != j {
        return Ok(Ordering::Equal);
    }
    fs_compare(p, q)
}

/// A function strictly between `f < g` when the exponent is a term without
/// a least element: change one value below both supports.
pub fn fs_between(f: &FsFunction, g: &FsFunction) -> Result<FsFunction> {
    if f.space != g.space {
        return Err(Error::IncompatibleExponentials);
    }
    let space = &f.space;
    let exponent = match space.exponent() {
        Exponent::Term(t) if t.extremum(Extremum::Least)?.is_none() && !t.is_empty() => t,
        other => return Err(Error::ExponentHasLeast(other.to_string())),
    };
    let base = space.base();
    if crate::linorder::finite_size(base) == Some(1) {
        return Err(Error::DegenerateBase(base.to_string()));
    }
    if fs_compare(f, g)? != Ordering::Less {
        return Err(Error::unsupported("fs_between needs f < g"));
    }
    let lows = [f.support.bottom(), g.support.bottom()];
    let mut floor: Option<&Element> = None;
    for (p, _) in lows.into_iter().flatten() {
        let Position::Elem(p) = p else {
            unreachable!("term exponent")
        };
        if floor.is_none_or(|q| exponent.lt(p, q).unwrap_or(false)) {
            floor = Some(p);
        }
    }
    let below = exponent.between(None, floor)?.ok_or_else(|| {
        Error::InternalInvariantViolation(format!("no position below {floor:?} in {exponent}"))
    })?;
    let below = Position::Elem(below);
    let point = space.point();
    let (source, value) = match base.between(Some(point), None)? {
        Some(up) if !base.is_extremal(point, Extremum::Greatest)? => (f, up),
        _ => {
            // The basepoint is the greatest value: lower g instead.
            let down = base
                .between(None, Some(point))?
                .ok_or_else(|| Error::DegenerateBase(base.to_string()))?;
            (g, down)
        }
    };
    let mut assignments: Vec<(Position, Element)> = source.support.entries().to_vec();
    assignments.push((below, value));
    fs_make(space, assignments)
}

// Element-level entry point used by `OrderTerm::between`.
pub(crate) fn between_supports(
    term: &OrderTerm,
    lo: &Element,
    hi: &Element,
) -> Result<Option<Element>> {
    let space = ExpSpace::from_term(term)?;
    match fs_between(&space.wrap(lo)?, &space.wrap(hi)?) {
        Ok(h) => Ok(Some(h.into_element())),
        Err(Error::ExponentHasLeast(_)) => {
            Err(Error::unsupported(format!("interval search in {term}")))
        }
        Err(e) => Err(e),
    }
}

/// The same function stored relative to another basepoint. Only finite
/// exponents keep the support finite.
pub fn fs_rebase(f: &FsFunction, point: &Element) -> Result<FsFunction> {
    let target = f.space.with_point(point.clone())?;
    let positions: Vec<Position> = match f.space.exponent() {
        Exponent::Ordinal(o) => match o.as_nat() {
            Some(n) => (0..n).map(|i| Position::Ord(Ordinal::nat(i))).collect(),
            None => return Err(Error::unsupported("rebasing needs a finite exponent")),
        },
        Exponent::Term(t) => match crate::linorder::finite_size(t) {
            Some(n) => t.enumerate(n)?.into_iter().map(Position::Elem).collect(),
            None => return Err(Error::unsupported("rebasing needs a finite exponent")),
        },
    };
    let assignments = positions
        .into_iter()
        .map(|p| {
            let v = f.value_at(&p).clone();
            (p, v)
        })
        .collect();
    fs_make(&target, assignments)
}

/// Splits an exponent as `alpha + rest` with `alpha` its longest
/// well-ordered initial segment and `rest` empty or without a least element.
pub fn split_exponent(term: &OrderTerm) -> Result<(Ordinal, OrderTerm)> {
    if term.is_empty() {
        return Ok((Ordinal::zero(), OrderTerm::Fin(0)));
    }
    if let Some(alpha) = term.as_ordinal() {
        return Ok((alpha, OrderTerm::Fin(0)));
    }
    if term.extremum(Extremum::Least)?.is_none() {
        return Ok((Ordinal::zero(), term.clone()));
    }
    match term {
        OrderTerm::Sum(a, b) => {
            let (alpha, rest) = split_exponent(a)?;
            if !rest.is_empty() {
                return Ok((alpha, OrderTerm::sum(rest, (**b).clone())));
            }
            let (beta, rest) = split_exponent(b)?;
            Ok((alpha.add(&beta), rest))
        }
        OrderTerm::Prod(a, b) => {
            let Some(alpha) = a.as_ordinal() else {
                return Err(Error::unsupported(format!("split of {term}")));
            };
            let (beta, rest) = split_exponent(b)?;
            let rest = if rest.is_empty() {
                rest
            } else {
                OrderTerm::prod((**a).clone(), rest)
            };
            Ok((alpha.mul(&beta), rest))
        }
        _ => Err(Error::unsupported(format!("split of {term}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(s: &str) -> Arc<ExpSpace> {
        ExpSpace::from_term(&s.parse().unwrap()).unwrap()
    }

    fn zw() -> Arc<ExpSpace> {
        space(r#"exp(z@{"zeta":0}, w)"#)
    }

    fn zf(sp: &Arc<ExpSpace>, pairs: &[(u64, i64)]) -> FsFunction {
        let pairs: Vec<_> = pairs.iter().map(|&(p, v)| (p, Element::Zeta(v))).collect();
        fs_from_nat_pairs(sp, &pairs).unwrap()
    }

    #[test]
    fn make_normalizes() {
        let w0 = space(r#"exp(w@{"omega":0}, w)"#);
        assert!(fs_from_nat_pairs(&w0, &[]).unwrap().is_constant());
        assert!(fs_from_nat_pairs(&w0, &[(3, Element::Omega(0))])
            .unwrap()
            .is_constant());
        let w1 = space(r#"exp(w@{"omega":1}, w)"#);
        let f = fs_from_nat_pairs(&w1, &[(0, Element::Omega(0))]).unwrap();
        assert_eq!(f.support().len(), 1);
        assert!(fs_from_nat_pairs(&w1, &[(0, Element::Omega(0)), (0, Element::Omega(2))]).is_err());
        assert!(fs_make(
            &w1,
            vec![(Position::Ord(Ordinal::omega()), Element::Omega(0))]
        )
        .is_err());
    }

    #[test]
    fn compare_examples() {
        let w1 = space(r#"exp(w@{"omega":1}, w)"#);
        let f = fs_from_nat_pairs(&w1, &[(0, Element::Omega(0))]).unwrap();
        assert_eq!(fs_compare(&f, &w1.constant()).unwrap(), Ordering::Less);
        let s = zw();
        assert_eq!(
            fs_compare(
                &zf(&s, &[(0, 5), (3, -1)]),
                &zf(&s, &[(0, 9), (3, -1), (7, 2)])
            )
            .unwrap(),
            Ordering::Less
        );
        assert_eq!(
            fs_compare(&f, &zw().constant()),
            Err(Error::IncompatibleExponentials)
        );
    }

    #[test]
    fn neighbors_move_position_zero() {
        let s = zw();
        let (p, n) = fs_neighbors(&s.constant()).unwrap();
        assert_eq!(p.unwrap(), zf(&s, &[(0, -1)]));
        assert_eq!(n.unwrap(), zf(&s, &[(0, 1)]));
        assert_eq!(
            fs_neighbors(&zf(&s, &[(0, -1)])).unwrap().1.unwrap(),
            s.constant()
        );
        assert_eq!(
            fs_neighbors(&zf(&s, &[(5, 3)])).unwrap().1.unwrap(),
            zf(&s, &[(0, 1), (5, 3)])
        );
        let w = space(r#"exp(w@{"omega":0}, w)"#);
        assert!(matches!(
            fs_neighbors(&w.constant()),
            Err(Error::UnsupportedBase(_))
        ));
    }

    #[test]
    fn split_and_curry() {
        let s = space(r#"exp(z@{"zeta":0}, [w + 2])"#);
        let f = fs_make(
            &s,
            vec![
                (
                    Position::Elem(Element::left(Element::Omega(2))),
                    Element::Zeta(4),
                ),
                (
                    Position::Elem(Element::right(Element::Fin(0))),
                    Element::Zeta(-1),
                ),
            ],
        )
        .unwrap();
        let (a, b) = iso_split_sum(&f).unwrap();
        assert_eq!(a.support().len(), 1);
        assert_eq!(b.support().len(), 1);
        assert_eq!(iso_split_sum_inverse(&s, &a, &b).unwrap(), f);

        let p = space(r#"exp(z@{"zeta":0}, [2*w])"#);
        let g = fs_make(
            &p,
            vec![
                (
                    Position::Elem(Element::pair(Element::Fin(0), Element::Omega(3))),
                    Element::Zeta(1),
                ),
                (
                    Position::Elem(Element::pair(Element::Fin(1), Element::Omega(3))),
                    Element::Zeta(2),
                ),
            ],
        )
        .unwrap();
        let c = iso_curry(&g).unwrap();
        assert_eq!(c.support().len(), 1);
        assert_eq!(iso_curry_inverse(&p, &c).unwrap(), g);
    }

    #[test]
    fn locator_branches() {
        let w1 = space(r#"exp(w@{"omega":1}, w)"#);
        assert_eq!(
            locate_rem_rep(&w1.constant()).unwrap(),
            RemRepLocator::Middle
        );
        let above = fs_from_nat_pairs(&w1, &[(5, Element::Omega(3))]).unwrap();
        match locate_rem_rep(&above).unwrap() {
            RemRepLocator::Above {
                top_index,
                top_value,
                prefix,
            } => {
                assert_eq!(top_index, Ordinal::nat(5));
                assert_eq!(top_value, Element::Omega(3));
                assert!(prefix.is_constant());
            }
            other => panic!("{other:?}"),
        }
        let below = fs_from_nat_pairs(&w1, &[(5, Element::Omega(0))]).unwrap();
        assert_eq!(locate_rem_rep(&below).unwrap().branch(), RemBranch::Below);
    }

    #[test]
    fn between_below_supports() {
        let s = space(r#"exp(z@{"zeta":0}, [z])"#);
        let g = fs_make(
            &s,
            vec![(Position::Elem(Element::Zeta(0)), Element::Zeta(1))],
        )
        .unwrap();
        let h = fs_between(&s.constant(), &g).unwrap();
        assert_eq!(fs_compare(&s.constant(), &h).unwrap(), Ordering::Less);
        assert_eq!(fs_compare(&h, &g).unwrap(), Ordering::Less);
        assert_eq!(
            h.support().entries()[0].0,
            Position::Elem(Element::Zeta(-1))
        );

        let top = space(r#"exp(eta + 1@{"right":{"fin":0}}, [z])"#);
        let f = top.constant();
        let g = fs_make(
            &top,
            vec![(
                Position::Elem(Element::Zeta(3)),
                Element::left(Element::eta(0, 1)),
            )],
        )
        .unwrap();
        let (lo, hi) = if fs_compare(&f, &g).unwrap() == Ordering::Less {
            (f, g)
        } else {
            (g, f)
        };
        let h = fs_between(&lo, &hi).unwrap();
        assert_eq!(fs_compare(&lo, &h).unwrap(), Ordering::Less);
        assert_eq!(fs_compare(&h, &hi).unwrap(), Ordering::Less);

        assert!(matches!(
            fs_between(&zw().constant(), &zf(&zw(), &[(0, 1)])),
            Err(Error::ExponentHasLeast(_))
        ));
    }

    #[test]
    fn split_exponent_fragment() {
        let t = |s: &str| s.parse::<OrderTerm>().unwrap();
        assert_eq!(
            split_exponent(&t("w")).unwrap(),
            (Ordinal::omega(), OrderTerm::Fin(0))
        );
        assert_eq!(split_exponent(&t("z")).unwrap(), (Ordinal::zero(), t("z")));
        assert_eq!(
            split_exponent(&t("w + z")).unwrap(),
            (Ordinal::omega(), t("z"))
        );
        assert_eq!(
            split_exponent(&t("3 + w + eta + 1")).unwrap(),
            (Ordinal::omega(), t("eta + 1"))
        );
        assert_eq!(
            split_exponent(&t("2*(w + z)")).unwrap(),
            (Ordinal::omega(), t("2*z"))
        );
    }
}
