//! Expression evaluation over the word / automorphism / M_k literal
//! syntaxes, with `*` for composition and `^n` applied to parenthesized
//! factors.

use anyhow::{anyhow, bail, Result};
use fga_core::{Automorphism, Basis, MkElement, Word};

/// Splits at top-level `*` (outside parentheses).
fn split_factors(expr: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in expr.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '*' if depth == 0 => {
                parts.push(&expr[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&expr[start..]);
    parts
}

/// Takes `(body)^n` apart; returns (inner text, power). A `^` only counts
/// as a power marker after a closing parenthesis, so word tokens like
/// `a1^-1` are untouched.
fn strip_power(factor: &str) -> Result<(&str, i32)> {
    let factor = factor.trim();
    if !factor.starts_with('(') {
        return Ok((factor, 1));
    }
    let close = factor
        .rfind(')')
        .ok_or_else(|| anyhow!("unbalanced parentheses in `{factor}`"))?;
    let tail = factor[close + 1..].trim();
    let power = if tail.is_empty() {
        1
    } else {
        tail.strip_prefix('^')
            .and_then(|p| p.trim().parse::<i32>().ok())
            .ok_or_else(|| anyhow!("bad exponent `{tail}` at position {close}"))?
    };
    Ok((factor[1..=close - 1].trim(), power))
}

/// Smallest standard basis covering the names in the text: rank 2 unless
/// stable letters x_i appear.
pub fn infer_basis(text: &str) -> Basis {
    let mut rank = 2usize;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'x' {
            let digits: String = text[i + 1..]
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            if let Ok(idx) = digits.parse::<usize>() {
                rank = rank.max(idx + 2);
            }
        }
    }
    Basis::standard(rank)
}

pub fn eval_word(basis: &Basis, expr: &str) -> Result<Word> {
    let mut out = Word::identity(basis);
    for factor in split_factors(expr) {
        let (body, power) = strip_power(factor)?;
        let value = if body.contains('*') || body.starts_with('(') {
            eval_word(basis, body)?
        } else {
            basis.parse_word(body)?
        };
        out = out.multiply(&value.pow(power))?;
    }
    Ok(out)
}

pub fn eval_aut(basis: &Basis, expr: &str, search_depth: usize) -> Result<Automorphism> {
    let mut out = Automorphism::identity(basis);
    for factor in split_factors(expr) {
        let (body, power) = strip_power(factor)?;
        let value = if body.contains('*') {
            eval_aut(basis, body, search_depth)?
        } else {
            Automorphism::parse(basis, body, search_depth)?
        };
        out = out.compose(&value.pow(power))?;
    }
    Ok(out)
}

pub fn eval_mk(basis: &Basis, expr: &str, search_depth: usize) -> Result<MkElement> {
    let factors = split_factors(expr);
    let mut out: Option<MkElement> = None;
    for factor in factors {
        let factor = factor.trim();
        if factor.is_empty() {
            bail!("empty factor in `{expr}`");
        }
        // an M_k literal is itself parenthesized, so only an exponent after
        // the outer close counts
        let (value, power) = if let Some((body, power)) = factor
            .rfind(')')
            .and_then(|close| {
                let tail = factor[close + 1..].trim();
                tail.strip_prefix('^').map(|p| (close, p))
            })
            .map(|(close, p)| -> Result<(&str, i32)> {
                Ok((
                    factor[..=close].trim(),
                    p.trim().parse::<i32>().map_err(|_| anyhow!("bad exponent `{p}`"))?,
                ))
            })
            .transpose()?
        {
            (MkElement::parse(basis, body, search_depth)?, power)
        } else {
            (MkElement::parse(basis, factor, search_depth)?, 1)
        };
        let value = mk_pow(&value, power)?;
        out = Some(match out {
            None => value,
            Some(acc) => acc.mul(&value)?,
        });
    }
    out.ok_or_else(|| anyhow!("empty expression"))
}

fn mk_pow(x: &MkElement, n: i32) -> Result<MkElement> {
    let base = if n >= 0 { x.clone() } else { x.inverse() };
    let mut out = MkElement::identity(x.basis(), x.arity());
    for _ in 0..n.unsigned_abs() {
        out = out.mul(&base)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_expressions() {
        let b = infer_basis("a1 a1^-1");
        assert_eq!(b.rank(), 2);
        assert_eq!(eval_word(&b, "a1 a1^-1").unwrap().to_string(), "1");
        assert_eq!(eval_word(&b, "a1 * a2").unwrap().to_string(), "a1 a2");
        assert_eq!(eval_word(&b, "(a1 a2)^-1").unwrap().to_string(), "a2^-1 a1^-1");
        assert_eq!(eval_word(&b, "(a1 * a2)^2").unwrap().to_string(), "a1 a2 a1 a2");

        let b3 = infer_basis("x1 a1");
        assert_eq!(b3.rank(), 3);
        let b5 = infer_basis("x3");
        assert_eq!(b5.rank(), 5);
    }

    #[test]
    fn aut_expressions() {
        let b = Basis::standard(2);
        let composed = eval_aut(&b, "(a1 -> a1 a2) * (a1 -> a1 a2)", 4).unwrap();
        assert_eq!(composed.to_string(), "a1 -> a1 a2 a2; a2 -> a2");
        let inv = eval_aut(&b, "(a1 -> a1 a2)^-1", 4).unwrap();
        assert_eq!(inv.to_string(), "a1 -> a1 a2^-1; a2 -> a2");
        assert!(eval_aut(&b, "(a1 -> a1 a2)^3 * (a1 -> a1 a2)^-3", 4)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn mk_expressions() {
        let b = Basis::standard(2);
        let prod = eval_mk(&b, "(a1 ; a1 -> a1 a2) * (a2 ; 1)", 4).unwrap();
        assert_eq!(prod.to_string(), "(a1 a2 ; a1 -> a1 a2)");
        let id = eval_mk(&b, "(a1 ; a1 -> a1 a2) * (a1 ; a1 -> a1 a2)^-1", 4).unwrap();
        assert!(id.is_identity());
    }
}
