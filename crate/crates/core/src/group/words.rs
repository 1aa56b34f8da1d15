//! Words in named generators, e.g. `sigma rho phihat^{p*q/2}` or `σ(τα)^2`.
//!
//! ```text
//! word     := factor*              (separated by spaces, `*` or `·`)
//! factor   := atom [ "^" exponent ]
//! atom     := name | "1" | "(" word ")"
//! exponent := ["-"] int | "{" expr "}"
//! ```

use std::collections::BTreeMap;

use super::Group;
use crate::error::{Error, Result};
use crate::expr::{parse_expr, Cursor, Params};

const GREEK: [(&str, &str); 9] = [
    ("φ̂", "phihat "),
    ("φ", "phi "),
    ("σ", "sigma "),
    ("τ₁", "tau1 "),
    ("τ₂", "tau2 "),
    ("τ", "tau "),
    ("ρ", "rho "),
    ("α", "alpha "),
    ("·", " "),
];

/// Replace Greek letters by their ASCII generator names.
pub fn normalize_word(text: &str) -> String {
    let mut s = text.to_string();
    for (from, to) in GREEK {
        s = s.replace(from, to);
    }
    s.replace("tau_1", "tau1").replace("tau_2", "tau2")
}

struct Env<'a> {
    group: &'a Group,
    aliases: &'a BTreeMap<String, String>,
    params: &'a Params,
    depth: usize,
}

/// Evaluate `text` in `group`; names resolve to generators first, then aliases.
pub fn eval_word(
    group: &Group,
    text: &str,
    aliases: &BTreeMap<String, String>,
    params: &Params,
) -> Result<usize> {
    let env = Env {
        group,
        aliases,
        params,
        depth: 0,
    };
    env.eval(text)
}

impl Env<'_> {
    fn eval(&self, text: &str) -> Result<usize> {
        if self.depth > 16 {
            return Err(Error::Recipe(format!(
                "alias recursion too deep at `{text}`"
            )));
        }
        let norm = normalize_word(text);
        let mut cur = Cursor::new(&norm);
        let g = self.word(&mut cur)?;
        if !cur.at_end() {
            return Err(Error::syntax(
                cur.pos(),
                format!("unexpected input in word `{text}`"),
            ));
        }
        Ok(g)
    }

    fn word(&self, cur: &mut Cursor<'_>) -> Result<usize> {
        let mut acc = 0;
        loop {
            while cur.eat("*") {}
            match cur.peek() {
                None | Some(')') => return Ok(acc),
                _ => {
                    let f = self.factor(cur)?;
                    acc = self.group.mul(acc, f);
                }
            }
        }
    }

    fn factor(&self, cur: &mut Cursor<'_>) -> Result<usize> {
        let base = self.atom(cur)?;
        if cur.peek() == Some('^') {
            cur.bump();
            let k = self.exponent(cur)?;
            return Ok(self.group.pow(base, k));
        }
        Ok(base)
    }

    fn exponent(&self, cur: &mut Cursor<'_>) -> Result<i64> {
        if cur.eat("{") {
            let e = parse_expr(cur)?;
            cur.expect("}")?;
            return e.eval(self.params);
        }
        let neg = cur.eat("-");
        let v = cur.unsigned()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn atom(&self, cur: &mut Cursor<'_>) -> Result<usize> {
        let pos = cur.pos();
        if cur.eat("(") {
            let g = self.word(cur)?;
            cur.expect(")")?;
            return Ok(g);
        }
        if cur.eat("1") {
            return Ok(0);
        }
        let name = cur
            .ident()
            .ok_or_else(|| Error::syntax(pos, "expected a generator name"))?;
        if let Some(g) = self.group.generator(&name) {
            return Ok(g);
        }
        if let Some(w) = self.aliases.get(&name) {
            let inner = Env {
                depth: self.depth + 1,
                ..*self
            };
            return inner.eval(w);
        }
        Err(Error::Recipe(format!("unknown generator `{name}`")))
    }
}
