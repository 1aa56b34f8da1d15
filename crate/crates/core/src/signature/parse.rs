//! Text form of signatures.
//!
//! ```text
//! signature := "(" genus "," [ sign "," ] periods [ "," cycles ] ")"
//! sign      := "+" | "-"
//! periods   := "[" ( "-" | int ("," int)* ) "]"
//! cycles    := "{" cycle ("," cycle)* "}"
//! cycle     := "(" ( "-" | int ("," int)* ) ")"
//! ```
//!
//! Whitespace is ignored. Without a sign and without cycles the signature is
//! Fuchsian; without a sign but with cycles it is read as orientable.

use super::NecSignature;
use crate::error::{Error, Result};
use crate::expr::Cursor;

pub(super) fn parse_signature(text: &str) -> Result<NecSignature> {
    let mut cur = Cursor::new(text);
    cur.expect("(")?;
    let genus = small(&mut cur)?;
    cur.expect(",")?;
    let orientable = if cur.eat("+") {
        cur.expect(",")?;
        true
    } else if cur.peek() == Some('-') {
        cur.bump();
        cur.expect(",")?;
        false
    } else {
        true
    };
    let periods = list(&mut cur, "[", "]")?;
    let mut cycles = Vec::new();
    if cur.eat(",") {
        cur.expect("{")?;
        loop {
            cycles.push(list(&mut cur, "(", ")")?);
            if cur.eat("}") {
                break;
            }
            cur.expect(",")?;
        }
    }
    cur.expect(")")?;
    if !cur.at_end() {
        return Err(Error::syntax(cur.pos(), "trailing input after signature"));
    }
    Ok(NecSignature::new(orientable, genus, periods, cycles))
}

fn small(cur: &mut Cursor<'_>) -> Result<u32> {
    cur.skip_ws();
    let pos = cur.pos();
    let v = cur.unsigned()?;
    u32::try_from(v).map_err(|_| Error::syntax(pos, "integer out of range"))
}

fn list(cur: &mut Cursor<'_>, open: &str, close: &str) -> Result<Vec<u32>> {
    cur.expect(open)?;
    if cur.eat("-") {
        cur.expect(close)?;
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    loop {
        cur.skip_ws();
        let pos = cur.pos();
        let v = small(cur)?;
        if v < 2 {
            return Err(Error::PeriodBelowTwo {
                pos,
                value: v as u64,
            });
        }
        out.push(v);
        if cur.eat(close) {
            return Ok(out);
        }
        cur.expect(",")?;
    }
}

fn join(values: &[u32]) -> String {
    if values.is_empty() {
        "-".to_string()
    } else {
        values
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub(super) fn format_signature(sig: &NecSignature) -> String {
    let periods = format!("[{}]", join(&sig.proper_periods));
    if sig.is_fuchsian() {
        return format!("({},{periods})", sig.genus);
    }
    let sign = if sig.orientable { '+' } else { '-' };
    let mut out = format!("({},{sign},{periods}", sig.genus);
    if !sig.period_cycles.is_empty() {
        let cycles: Vec<String> = sig
            .period_cycles
            .iter()
            .map(|c| format!("({})", join(c)))
            .collect();
        out.push_str(&format!(",{{{}}}", cycles.join(",")));
    }
    out.push(')');
    out
}
