#![allow(dead_code)]

use ordcalc::{Element, OrderTerm};

/// An initial-and-final segment of `term` listed in increasing order,
/// built from the definitions of the constructors alone. `m` bounds every
/// infinite atom.
pub fn window(term: &OrderTerm, m: i64) -> Vec<Element> {
    match term {
        OrderTerm::Fin(n) => (0..*n).map(Element::Fin).collect(),
        OrderTerm::Omega => (0..m as u64).map(Element::Omega).collect(),
        OrderTerm::OmegaStar => (0..m as u64).rev().map(Element::OmegaStar).collect(),
        OrderTerm::Zeta => (-m..=m).map(Element::Zeta).collect(),
        OrderTerm::Sum(a, b) => {
            let mut v: Vec<Element> = window(a, m).into_iter().map(Element::left).collect();
            v.extend(window(b, m).into_iter().map(Element::right));
            v
        }
        OrderTerm::Prod(a, b) => {
            let wa = window(a, m);
            window(b, m)
                .into_iter()
                .flat_map(|y| wa.iter().map(move |x| Element::pair(x.clone(), y.clone())))
                .collect()
        }
        OrderTerm::Rev(x) => window(x, m).into_iter().rev().collect(),
        _ => panic!("no window for {term}"),
    }
}

/// Immediate neighbors read off two windows; a neighbor counts only when
/// both windows agree on it.
pub fn oracle_neighbors(
    term: &OrderTerm,
    x: &Element,
    m: i64,
) -> (Option<Element>, Option<Element>) {
    let look = |size: i64| {
        let w = window(term, size);
        let i = w.iter().position(|e| e == x).unwrap();
        (
            i.checked_sub(1).map(|j| w[j].clone()),
            w.get(i + 1).cloned(),
        )
    };
    let (p1, s1) = look(2 * m);
    let (p2, s2) = look(3 * m);
    (
        if p1 == p2 { p1 } else { None },
        if s1 == s2 { s1 } else { None },
    )
}

/// Whether the closed interval between `x` and `y` is finite: its size
/// read off two windows must agree.
pub fn finite_interval(term: &OrderTerm, x: &Element, y: &Element, m: i64) -> bool {
    let size = |s: i64| {
        let w = window(term, s);
        let i = w.iter().position(|e| e == x).unwrap();
        let j = w.iter().position(|e| e == y).unwrap();
        i.abs_diff(j)
    };
    size(2 * m) == size(3 * m)
}
