use std::cmp::Ordering;

use super::rational::simplest_between;
use super::{Element, Exponent, OrderTerm, Position, Support};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Extremum {
    Least,
    Greatest,
}

impl Extremum {
    pub fn flip(self) -> Self {
        match self {
            Extremum::Least => Extremum::Greatest,
            Extremum::Greatest => Extremum::Least,
        }
    }
}

/// Direction of an immediate neighbor: `Up` is the successor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Dir {
    Up,
    Down,
}

impl Dir {
    fn flip(self) -> Self {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }

    // The extremum a coordinate must hold before a carry can pass it.
    fn end(self) -> Extremum {
        match self {
            Dir::Up => Extremum::Greatest,
            Dir::Down => Extremum::Least,
        }
    }
}

impl OrderTerm {
    /// Least or greatest element, if it exists.
    pub fn extremum(&self, which: Extremum) -> Result<Option<Element>> {
        use Extremum::*;
        Ok(match (self, which) {
            (OrderTerm::Fin(0), _) => None,
            (OrderTerm::Fin(_), Least) => Some(Element::Fin(0)),
            (OrderTerm::Fin(n), Greatest) => Some(Element::Fin(n - 1)),
            (OrderTerm::Omega, Least) => Some(Element::Omega(0)),
            (OrderTerm::OmegaStar, Greatest) => Some(Element::OmegaStar(0)),
            (OrderTerm::Omega | OrderTerm::OmegaStar | OrderTerm::Zeta | OrderTerm::Eta, _) => None,
            (OrderTerm::Sum(a, b), Least) => match a.extremum(Least)? {
                Some(x) => Some(Element::left(x)),
                None if a.is_empty() => b.extremum(Least)?.map(Element::right),
                None => None,
            },
            (OrderTerm::Sum(a, b), Greatest) => match b.extremum(Greatest)? {
                Some(y) => Some(Element::right(y)),
                None if b.is_empty() => a.extremum(Greatest)?.map(Element::left),
                None => None,
            },
            (OrderTerm::Prod(a, b), _) => match (a.extremum(which)?, b.extremum(which)?) {
                (Some(x), Some(y)) => Some(Element::pair(x, y)),
                _ => None,
            },
            (
                OrderTerm::Exp {
                    base,
                    point,
                    exponent,
                },
                _,
            ) => exp_extremum(base, point, exponent, which)?,
            (OrderTerm::Rev(x), _) => x.extremum(which.flip())?,
        })
    }

    pub fn is_extremal(&self, e: &Element, which: Extremum) -> Result<bool> {
        Ok(self.extremum(which)?.as_ref() == Some(e))
    }

    /// Immediate predecessor and successor of `e`.
    pub fn neighbors(&self, e: &Element) -> Result<(Option<Element>, Option<Element>)> {
        self.check(e)?;
        Ok((self.step(e, Dir::Down)?, self.step(e, Dir::Up)?))
    }

    pub fn successor(&self, e: &Element) -> Result<Option<Element>> {
        self.check(e)?;
        self.step(e, Dir::Up)
    }

    pub fn predecessor(&self, e: &Element) -> Result<Option<Element>> {
        self.check(e)?;
        self.step(e, Dir::Down)
    }

    // Assumes `e` already checked.
    pub(crate) fn step(&self, e: &Element, dir: Dir) -> Result<Option<Element>> {
        let up = dir == Dir::Up;
        Ok(match (self, e) {
            (OrderTerm::Fin(n), Element::Fin(i)) => {
                if up {
                    (i + 1 < *n).then(|| Element::Fin(i + 1))
                } else {
                    i.checked_sub(1).map(Element::Fin)
                }
            }
            (OrderTerm::Omega, Element::Omega(k)) => {
                if up {
                    Some(Element::Omega(k + 1))
                } else {
                    k.checked_sub(1).map(Element::Omega)
                }
            }
            (OrderTerm::OmegaStar, Element::OmegaStar(k)) => {
                if up {
                    k.checked_sub(1).map(Element::OmegaStar)
                } else {
                    Some(Element::OmegaStar(k + 1))
                }
            }
            (OrderTerm::Zeta, Element::Zeta(z)) => {
                let next = if up {
                    z.checked_add(1)
                } else {
                    z.checked_sub(1)
                };
                Some(Element::Zeta(
                    next.ok_or_else(|| Error::unsupported("integer overflow"))?,
                ))
            }
            (OrderTerm::Eta, Element::Eta(_)) => None,
            (OrderTerm::Sum(a, b), Element::Left(x)) => match a.step(x, dir)? {
                Some(x2) => Some(Element::left(x2)),
                None if up && a.is_extremal(x, Extremum::Greatest)? => {
                    b.extremum(Extremum::Least)?.map(Element::right)
                }
                None => None,
            },
            (OrderTerm::Sum(a, b), Element::Right(y)) => match b.step(y, dir)? {
                Some(y2) => Some(Element::right(y2)),
                None if !up && b.is_extremal(y, Extremum::Least)? => {
                    a.extremum(Extremum::Greatest)?.map(Element::left)
                }
                None => None,
            },
            (OrderTerm::Prod(a, b), Element::Pair(x, y)) => match a.step(x, dir)? {
                Some(x2) => Some(Element::pair(x2, (**y).clone())),
                None if a.is_extremal(x, dir.end())? => {
                    match (b.step(y, dir)?, a.extremum(dir.end().flip())?) {
                        (Some(y2), Some(x2)) => Some(Element::pair(x2, y2)),
                        _ => None,
                    }
                }
                None => None,
            },
            (
                OrderTerm::Exp {
                    base,
                    point,
                    exponent,
                },
                Element::Fs(f),
            ) => exp_step(base, point, exponent, f, dir)?.map(Element::Fs),
            (OrderTerm::Rev(x), _) => x.step(e, dir.flip())?,
            _ => return Err(self.mismatch(e)),
        })
    }

    /// Some element strictly between the bounds (`None` bounds are open),
    /// when one can be found.
    pub fn between(&self, lo: Option<&Element>, hi: Option<&Element>) -> Result<Option<Element>> {
        if let (Some(l), Some(h)) = (lo, hi) {
            if self.compare(l, h)? != Ordering::Less {
                return Ok(None);
            }
        }
        let fits = |t: &OrderTerm, c: &Element| -> Result<bool> {
            Ok(hi.map_or(Ok(true), |h| t.lt(c, h))? && lo.map_or(Ok(true), |l| t.lt(l, c))?)
        };
        Ok(match self {
            OrderTerm::Eta => {
                let q = |e: Option<&Element>| match e {
                    Some(Element::Eta(q)) => Ok(Some(*q)),
                    None => Ok(None),
                    Some(other) => Err(self.mismatch(other)),
                };
                Some(Element::Eta(simplest_between(q(lo)?, q(hi)?)))
            }
            OrderTerm::Fin(_) | OrderTerm::Omega | OrderTerm::OmegaStar | OrderTerm::Zeta => {
                let candidate = match (lo, hi) {
                    (Some(l), _) => self.step(l, Dir::Up)?,
                    (None, Some(h)) => self.step(h, Dir::Down)?,
                    (None, None) => self.some_element()?,
                };
                match candidate {
                    Some(c) if fits(self, &c)? => Some(c),
                    _ => None,
                }
            }
            OrderTerm::Sum(a, b) => {
                let split = |e: Option<&Element>| -> Result<(Option<Element>, Option<Element>)> {
                    match e {
                        None => Ok((None, None)),
                        Some(Element::Left(x)) => Ok((Some((**x).clone()), None)),
                        Some(Element::Right(y)) => Ok((None, Some((**y).clone()))),
                        Some(other) => Err(self.mismatch(other)),
                    }
                };
                let (lo_a, lo_b) = split(lo)?;
                let (hi_a, hi_b) = split(hi)?;
                let lo_in_b = lo_b.is_some();
                let hi_in_a = hi_a.is_some();
                let mut found = None;
                if !lo_in_b && !a.is_empty() {
                    found = a.between(lo_a.as_ref(), hi_a.as_ref())?.map(Element::left);
                }
                if found.is_none() && !hi_in_a && !b.is_empty() {
                    found = b.between(lo_b.as_ref(), hi_b.as_ref())?.map(Element::right);
                }
                found
            }
            OrderTerm::Prod(a, b) => {
                let pair = |e: Option<&Element>| -> Result<Option<(Element, Element)>> {
                    match e {
                        None => Ok(None),
                        Some(Element::Pair(x, y)) => Ok(Some(((**x).clone(), (**y).clone()))),
                        Some(other) => Err(self.mismatch(other)),
                    }
                };
                let lo = pair(lo)?;
                let hi = pair(hi)?;
                let mut found = None;
                if let (Some((x1, y1)), Some((x2, y2))) = (&lo, &hi) {
                    if y1 == y2 {
                        return Ok(a
                            .between(Some(x1), Some(x2))?
                            .map(|x| Element::pair(x, y1.clone())));
                    }
                }
                if let Some((x1, y1)) = &lo {
                    found = a
                        .between(Some(x1), None)?
                        .map(|x| Element::pair(x, y1.clone()));
                }
                if found.is_none() {
                    if let Some((x2, y2)) = &hi {
                        found = a
                            .between(None, Some(x2))?
                            .map(|x| Element::pair(x, y2.clone()));
                    }
                }
                if found.is_none() {
                    let mid = b.between(lo.as_ref().map(|p| &p.1), hi.as_ref().map(|p| &p.1))?;
                    if let (Some(y), Some(x)) = (mid, a.some_element()?) {
                        found = Some(Element::pair(x, y));
                    }
                }
                found
            }
            OrderTerm::Exp { .. } => {
                let candidate = match (lo, hi) {
                    (Some(l), _) => self.step(l, Dir::Up)?,
                    (None, Some(h)) => self.step(h, Dir::Down)?,
                    (None, None) => self.some_element()?,
                };
                match candidate {
                    Some(c) if fits(self, &c)? => Some(c),
                    _ => match (lo, hi) {
                        (Some(l), Some(h)) => crate::exponential::between_supports(self, l, h)?,
                        _ => {
                            return Err(Error::unsupported(format!(
                                "open interval search in {self}"
                            )))
                        }
                    },
                }
            }
            OrderTerm::Rev(x) => x.between(hi, lo)?,
        })
    }

    /// A canonical element of a non-empty term.
    pub fn some_element(&self) -> Result<Option<Element>> {
        Ok(match self {
            OrderTerm::Fin(0) => None,
            OrderTerm::Fin(_) => Some(Element::Fin(0)),
            OrderTerm::Omega => Some(Element::Omega(0)),
            OrderTerm::OmegaStar => Some(Element::OmegaStar(0)),
            OrderTerm::Zeta => Some(Element::Zeta(0)),
            OrderTerm::Eta => Some(Element::eta(0, 1)),
            OrderTerm::Sum(a, b) => match a.some_element()? {
                Some(x) => Some(Element::left(x)),
                None => b.some_element()?.map(Element::right),
            },
            OrderTerm::Prod(a, b) => match (a.some_element()?, b.some_element()?) {
                (Some(x), Some(y)) => Some(Element::pair(x, y)),
                _ => None,
            },
            OrderTerm::Exp { .. } => Some(Element::Fs(Support::empty())),
            OrderTerm::Rev(x) => x.some_element()?,
        })
    }

    /// All elements in increasing order, for terms with at most `limit`
    /// elements.
    pub fn enumerate(&self, limit: u64) -> Result<Vec<Element>> {
        match super::finite_size(self) {
            Some(n) if n <= limit => {}
            _ => {
                return Err(Error::TooLarge(
                    super::finite_size(self).unwrap_or(u64::MAX),
                ))
            }
        }
        let mut out = Vec::new();
        let mut cur = self.extremum(Extremum::Least)?;
        while let Some(e) = cur {
            cur = self.step(&e, Dir::Up)?;
            out.push(e);
        }
        Ok(out)
    }
}

fn exp_extremum(
    base: &OrderTerm,
    point: &Element,
    exponent: &Exponent,
    which: Extremum,
) -> Result<Option<Element>> {
    if exponent.is_empty() || base.is_extremal(point, which)? {
        return Ok(Some(Element::Fs(Support::empty())));
    }
    let Some(end) = base.extremum(which)? else {
        return Ok(None);
    };
    // With a finite exponent the extremum holds the base extremum everywhere.
    let positions: Vec<Position> = match exponent {
        Exponent::Ordinal(o) => match o.as_nat() {
            Some(n) => (0..n)
                .map(|i| Position::Ord(crate::ordinal::Ordinal::nat(i)))
                .collect(),
            None => return Ok(None),
        },
        Exponent::Term(t) => match super::finite_size(t) {
            Some(n) => t.enumerate(n)?.into_iter().map(Position::Elem).collect(),
            None => return Ok(None),
        },
    };
    Ok(Some(Element::Fs(Support::from_sorted(
        positions.into_iter().map(|p| (p, end.clone())).collect(),
    ))))
}

// Odometer step: bump the least coordinate, carrying past coordinates that
// sit at the base extremum and resetting them to the opposite extremum.
fn exp_step(
    base: &OrderTerm,
    point: &Element,
    exponent: &Exponent,
    f: &Support,
    dir: Dir,
) -> Result<Option<Support>> {
    let Some(mut q) = exponent.least_position()? else {
        return Ok(None);
    };
    let end = dir.end();
    let point_at_end = base.is_extremal(point, end)?;
    let mut carried: Vec<Position> = Vec::new();
    loop {
        let beyond = match f.top() {
            None => true,
            Some((top, _)) => exponent.compare_positions(&q, top)? == Ordering::Greater,
        };
        if beyond && point_at_end {
            // Every later coordinate is at the extremum as well.
            return Ok(None);
        }
        let v = f.value_at(&q, point);
        if let Some(v2) = base.step(v, dir)? {
            let reset = if carried.is_empty() {
                None
            } else {
                match base.extremum(end.flip())? {
                    Some(r) => Some(r),
                    None => return Ok(None),
                }
            };
            let mut entries: Vec<(Position, Element)> = Vec::new();
            if let Some(r) = reset {
                if &r != point {
                    entries.extend(carried.into_iter().map(|p| (p, r.clone())));
                }
            }
            if &v2 != point {
                entries.push((q.clone(), v2));
            }
            for (p, val) in f.entries() {
                if exponent.compare_positions(p, &q)? == Ordering::Greater {
                    entries.push((p.clone(), val.clone()));
                }
            }
            return Ok(Some(Support::from_sorted(entries)));
        }
        if !base.is_extremal(v, end)? {
            return Ok(None);
        }
        let Some(next) = exponent.next_position(&q)? else {
            return Ok(None);
        };
        carried.push(std::mem::replace(&mut q, next));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;

    fn t(s: &str) -> OrderTerm {
        s.parse().unwrap()
    }

    fn fs(v: &[(u64, i64)]) -> Element {
        Element::Fs(Support::from_sorted(
            v.iter()
                .map(|&(p, x)| (Position::Ord(Ordinal::nat(p)), Element::Zeta(x)))
                .collect(),
        ))
    }

    #[test]
    fn atomic_neighbors() {
        assert_eq!(
            t("z").neighbors(&Element::Zeta(5)).unwrap(),
            (Some(Element::Zeta(4)), Some(Element::Zeta(6)))
        );
        assert_eq!(
            t("eta").neighbors(&Element::eta(1, 2)).unwrap(),
            (None, None)
        );
        assert_eq!(
            t("w*").neighbors(&Element::OmegaStar(0)).unwrap(),
            (Some(Element::OmegaStar(1)), None)
        );
    }

    #[test]
    fn sum_junction() {
        let ww = t("w + w");
        let r0 = Element::right(Element::Omega(0));
        assert_eq!(
            ww.neighbors(&r0).unwrap(),
            (None, Some(Element::right(Element::Omega(1))))
        );
        let ws = t("w* + w");
        assert_eq!(
            ws.successor(&Element::left(Element::OmegaStar(0))).unwrap(),
            Some(Element::right(Element::Omega(0)))
        );
        let we = t("w + eta");
        assert_eq!(
            we.predecessor(&Element::right(Element::eta(0, 1))).unwrap(),
            None
        );
        let two = t("1 + 1");
        assert_eq!(
            two.successor(&Element::left(Element::Fin(0))).unwrap(),
            Some(Element::right(Element::Fin(0)))
        );
    }

    #[test]
    fn product_carry() {
        let p = t("2*w");
        let e = Element::pair(Element::Fin(1), Element::Omega(4));
        assert_eq!(
            p.neighbors(&e).unwrap(),
            (
                Some(Element::pair(Element::Fin(0), Element::Omega(4))),
                Some(Element::pair(Element::Fin(0), Element::Omega(5)))
            )
        );
        assert_eq!(
            t("2*w").extremum(Extremum::Least).unwrap(),
            Some(Element::pair(Element::Fin(0), Element::Omega(0)))
        );
    }

    #[test]
    fn exponential_step() {
        let zw = OrderTerm::zeta_power(Ordinal::omega());
        assert_eq!(
            zw.neighbors(&fs(&[])).unwrap(),
            (Some(fs(&[(0, -1)])), Some(fs(&[(0, 1)])))
        );
        assert_eq!(zw.successor(&fs(&[(0, -1)])).unwrap(), Some(fs(&[])));
        assert_eq!(
            zw.successor(&fs(&[(5, 3)])).unwrap(),
            Some(fs(&[(0, 1), (5, 3)]))
        );
    }

    #[test]
    fn binary_counter() {
        // (2,0)^w is w: successors count in binary.
        let b: OrderTerm = t(r#"exp(2@{"fin":0}, w)"#);
        let mut cur = b.extremum(Extremum::Least).unwrap().unwrap();
        for _ in 0..20 {
            let next = b.successor(&cur).unwrap().unwrap();
            assert_eq!(b.predecessor(&next).unwrap(), Some(cur.clone()));
            assert!(b.lt(&cur, &next).unwrap());
            cur = next;
        }
        // 20 = 0b10100
        let bits = Element::Fs(Support::from_sorted(vec![
            (Position::Ord(Ordinal::nat(2)), Element::Fin(1)),
            (Position::Ord(Ordinal::nat(4)), Element::Fin(1)),
        ]));
        assert_eq!(cur, bits);
    }

    #[test]
    fn enumerate_finite() {
        let e = t("2*3").enumerate(10).unwrap();
        assert_eq!(e.len(), 6);
        for w in e.windows(2) {
            assert!(t("2*3").lt(&w[0], &w[1]).unwrap());
        }
        assert!(t("w").enumerate(10).is_err());
    }

    #[test]
    fn between_eta_uses_simplest() {
        let b = t("eta")
            .between(Some(&Element::eta(1, 3)), Some(&Element::eta(1, 2)))
            .unwrap();
        assert_eq!(b, Some(Element::eta(2, 5)));
        let s = t("eta + eta");
        let lo = Element::left(Element::eta(5, 1));
        let hi = Element::right(Element::eta(-5, 1));
        let mid = s.between(Some(&lo), Some(&hi)).unwrap().unwrap();
        assert!(s.lt(&lo, &mid).unwrap() && s.lt(&mid, &hi).unwrap());
    }
}
