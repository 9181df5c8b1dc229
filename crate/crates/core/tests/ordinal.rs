use std::cmp::Ordering;

use ordcalc::Ordinal;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Ordinals below w^w as coefficient vectors, index = exponent.
#[derive(Clone, Debug, PartialEq)]
struct Vecord(Vec<u64>);

impl Vecord {
    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn coeff(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    fn cmp(&self, other: &Vecord) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for k in (0..n).rev() {
            match self.coeff(k).cmp(&other.coeff(k)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    fn add(&self, other: &Vecord) -> Vecord {
        let Some(top) = other.0.iter().rposition(|&c| c != 0) else {
            return self.clone();
        };
        let n = self.0.len().max(other.0.len());
        let out = (0..n)
            .map(|k| match k.cmp(&top) {
                Ordering::Greater => self.coeff(k),
                Ordering::Equal => self.coeff(k) + other.coeff(k),
                Ordering::Less => other.coeff(k),
            })
            .collect();
        Vecord(out).trim()
    }

    fn sub(&self, beta: &Vecord) -> Vecord {
        let n = self.0.len().max(beta.0.len());
        let Some(k) = (0..n).rev().find(|&k| self.coeff(k) != beta.coeff(k)) else {
            return Vecord(vec![]);
        };
        let out = (0..=k)
            .map(|i| {
                if i == k {
                    self.coeff(k) - beta.coeff(k)
                } else {
                    self.coeff(i)
                }
            })
            .collect();
        Vecord(out).trim()
    }

    fn to_ordinal(&self) -> Ordinal {
        let terms = (0..self.0.len())
            .rev()
            .filter(|&k| self.0[k] != 0)
            .map(|k| (Ordinal::nat(k as u64), self.0[k]))
            .collect();
        Ordinal::from_terms(terms).unwrap()
    }

    fn random(rng: &mut ChaCha8Rng, max_exp: usize) -> Vecord {
        let len = rng.random_range(0..=max_exp + 1);
        Vecord(
            (0..len)
                .map(|_| {
                    if rng.random_bool(0.4) {
                        0
                    } else {
                        rng.random_range(1..4)
                    }
                })
                .collect(),
        )
        .trim()
    }
}

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

#[test]
fn compare_examples() {
    assert_eq!(o("0").cmp(&o("0")), Ordering::Equal);
    assert!(o("w") < o("w + 1"));
    assert!(o("w*2 + 3") < o("w^2"));
}

#[test]
fn add_examples() {
    assert_eq!(Ordinal::one().add(&Ordinal::omega()), Ordinal::omega());
    assert_eq!(o("w").add(&o("1")), o("w + 1"));
    assert_eq!(o("w*2 + 3").add(&o("w")), o("w*3"));
}

#[test]
fn sub_examples() {
    assert_eq!(o("w").sub(&o("1")).unwrap(), o("w"));
    assert_eq!(o("w + 3").sub(&o("w")).unwrap(), o("3"));
    let d = o("w^2 + w*2 + 1").sub(&o("w^2 + w")).unwrap();
    assert_eq!(d, o("w + 1"));
    assert_eq!(o("w^2 + w").add(&d), o("w^2 + w*2 + 1"));
    assert!(o("3").sub(&o("w")).is_err());
}

#[test]
fn split_and_limit_examples() {
    assert_eq!(o("7").split_limit_finite(), (Ordinal::zero(), 7));
    assert_eq!(o("w").split_limit_finite(), (o("w"), 0));
    assert_eq!(o("w*2 + 5").split_limit_finite(), (o("w*2"), 5));
    assert!(!o("0").is_limit());
    assert!(o("w").is_limit());
    assert!(!o("w^2 + 1").is_limit());
}

#[test]
fn arithmetic_agrees_with_vector_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..4000 {
        let (a, b) = (Vecord::random(&mut rng, 3), Vecord::random(&mut rng, 3));
        let (oa, ob) = (a.to_ordinal(), b.to_ordinal());
        assert_eq!(oa.cmp(&ob), a.cmp(&b), "{oa} vs {ob}");
        assert_eq!(oa.add(&ob), a.add(&b).to_ordinal(), "{oa} + {ob}");
        let (lo, hi) = if a.cmp(&b) == Ordering::Greater {
            (b, a)
        } else {
            (a, b)
        };
        let d = hi.sub(&lo);
        assert_eq!(lo.add(&d), hi);
        assert_eq!(
            hi.to_ordinal().sub(&lo.to_ordinal()).unwrap(),
            d.to_ordinal()
        );
    }
}

#[test]
fn associativity_on_grid() {
    let grid: Vec<Ordinal> = [
        "0",
        "1",
        "2",
        "w",
        "w + 1",
        "w*2 + 3",
        "w^2",
        "w^2 + w",
        "w^2*2 + 1",
    ]
    .iter()
    .map(|s| o(s))
    .collect();
    for a in &grid {
        for b in &grid {
            for c in &grid {
                assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
            }
        }
    }
}

#[test]
fn split_recombines() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let a = Vecord::random(&mut rng, 3).to_ordinal();
        let (beta, n) = a.split_limit_finite();
        assert!(beta.is_zero() || beta.is_limit());
        assert_eq!(beta.add(&Ordinal::nat(n)), a);
        assert_eq!(a.is_successor(), n > 0);
    }
}

#[test]
fn print_parse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let a = Vecord::random(&mut rng, 4).to_ordinal();
        assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
    }
    assert_eq!(o("w^w + w^(w + 1)"), o("w^(w + 1)"));
}
