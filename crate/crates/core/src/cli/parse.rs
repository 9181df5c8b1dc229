//! Text grammars for ordinals, order terms and elements.
//!
//! ```text
//! ord  := oterm ('+' oterm)*
//! oterm:= ('w' ('^' oexp)? | NAT) ('*' NAT)?
//! oexp := NAT | 'w' | '(' ord ')'
//!
//! term := prod ('+' term)?
//! prod := atom ('*' prod)?
//! atom := 'w' | 'w*' | 'z' | 'eta' | NAT | '(' term ')' | 'rev(' term ')'
//!       | 'exp(' term '@' ELEMENT ',' (ord | '[' term ']') ')'
//! ```
//!
//! `w*` is read as the reversed naturals unless the next non-blank
//! character starts an atom, in which case the `*` is a product.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::linorder::{Element, Exponent, OrderTerm};
use crate::ordinal::Ordinal;

pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    let mut p = Parser::new(text);
    let o = p.ordinal()?;
    p.finish()?;
    Ok(o)
}

pub fn parse_term(text: &str) -> Result<OrderTerm> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses element JSON and checks it against `term`.
pub fn parse_element(term: &OrderTerm, text: &str) -> Result<Element> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::syntax(e.column().saturating_sub(1), e.to_string()))?;
    let e = Element::from_json(&v)?;
    term.check(&e)?;
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::syntax(self.pos, msg)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: &str = {
            let r = self.rest();
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            &r[..end]
        };
        if digits.is_empty() {
            return Err(self.error("expected a natural number"));
        }
        let n = digits.parse().map_err(|_| self.error("number too large"))?;
        self.pos += digits.len();
        Ok(n)
    }

    // Keyword match that does not swallow a longer identifier.
    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let r = self.rest();
        if r.starts_with(kw) && !r[kw.len()..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn ordinal(&mut self) -> Result<Ordinal> {
        let mut acc = self.ordinal_term()?;
        while self.eat("+") {
            acc = acc.add(&self.ordinal_term()?);
        }
        Ok(acc)
    }

    fn ordinal_term(&mut self) -> Result<Ordinal> {
        let (exp, mut coeff) = if self.keyword("w") {
            let exp = if self.eat("^") {
                if self.eat("(") {
                    let e = self.ordinal()?;
                    self.expect(")")?;
                    e
                } else if self.keyword("w") {
                    Ordinal::omega()
                } else {
                    Ordinal::nat(self.nat()?)
                }
            } else {
                Ordinal::one()
            };
            (exp, 1)
        } else if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            (Ordinal::zero(), self.nat()?)
        } else {
            return Err(self.error("expected an ordinal term"));
        };
        while self.eat("*") {
            coeff = coeff
                .checked_mul(self.nat()?)
                .ok_or_else(|| self.error("coefficient too large"))?;
        }
        Ok(Ordinal::monomial(exp, coeff))
    }

    fn term(&mut self) -> Result<OrderTerm> {
        let left = self.product()?;
        if self.eat("+") {
            Ok(OrderTerm::sum(left, self.term()?))
        } else {
            Ok(left)
        }
    }

    fn product(&mut self) -> Result<OrderTerm> {
        let left = self.atom()?;
        if self.eat("*") {
            Ok(OrderTerm::prod(left, self.product()?))
        } else {
            Ok(left)
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || "wzer(".contains(c))
    }

    fn atom(&mut self) -> Result<OrderTerm> {
        if self.eat("(") {
            let t = self.term()?;
            self.expect(")")?;
            return Ok(t);
        }
        if self.eat("exp(") {
            return self.exponential();
        }
        if self.eat("rev(") {
            let t = self.term()?;
            self.expect(")")?;
            return Ok(t.reverse());
        }
        if self.keyword("eta") {
            return Ok(OrderTerm::Eta);
        }
        if self.keyword("z") {
            return Ok(OrderTerm::Zeta);
        }
        if self.keyword("w") {
            let save = self.pos;
            if self.eat("*") {
                if self.starts_atom() {
                    self.pos = save;
                } else {
                    return Ok(OrderTerm::OmegaStar);
                }
            }
            return Ok(OrderTerm::Omega);
        }
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Ok(OrderTerm::Fin(self.nat()?));
        }
        Err(self.error("expected an order term"))
    }

    fn exponential(&mut self) -> Result<OrderTerm> {
        let base = self.term()?;
        self.expect("@")?;
        let start = self.pos;
        let point = self.element_json()?;
        self.expect(",")?;
        let exponent = if self.eat("[") {
            let t = self.term()?;
            self.expect("]")?;
            Exponent::Term(Box::new(t))
        } else {
            Exponent::Ordinal(self.ordinal()?)
        };
        self.expect(")")?;
        OrderTerm::exp(base, point, exponent).map_err(|e| match e {
            Error::Syntax { .. } => e,
            other => Error::syntax(start, other.to_string()),
        })
    }

    // Scans a balanced `{...}` block and decodes it as an element.
    fn element_json(&mut self) -> Result<Element> {
        self.skip_ws();
        let start = self.pos;
        if !self.rest().starts_with('{') {
            return Err(self.error("expected element JSON"));
        }
        let mut depth = 0usize;
        let mut end = None;
        for (i, c) in self.rest().char_indices() {
            match c {
                '{' | '[' => depth += 1,
                '}' | ']' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(i + 1);
                        break;
                    }
                }
                _ => {}
            }
        }
        let end = end.ok_or_else(|| self.error("unbalanced element JSON"))?;
        let text = &self.rest()[..end];
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::syntax(start, e.to_string()))?;
        self.pos += end;
        Element::from_json(&v).map_err(|e| Error::syntax(start, e.to_string()))
    }
}
