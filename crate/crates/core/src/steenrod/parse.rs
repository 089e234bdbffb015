//! Text syntax for Steenrod operations.
//!
//! Accepted input token forms: `Sq3`, `Sq^3`, and the compressed
//! `Sq^{6,1}` meaning `Sq^6 Sq^1`. A whitespace-separated sequence of
//! tokens denotes the product word. The printer emits the compressed form,
//! `1` for the unit and `0` for zero; printer output parses back to the
//! same element.

use crate::error::{Error, Result};

use super::{adem_normalize, SteenrodElement};

/// Parse a word of squaring operations into its exponent sequence.
pub fn parse_word(input: &str) -> Result<Vec<u32>> {
    let mut word = Vec::new();
    let trimmed = input.trim();
    if trimmed == "1" {
        return Ok(word);
    }
    for token in trimmed.split_whitespace() {
        let rest = token
            .strip_prefix("Sq")
            .ok_or_else(|| Error::Usage(format!("expected Sq token, found {token:?}")))?;
        let rest = rest.strip_prefix('^').unwrap_or(rest);
        if let Some(body) = rest.strip_prefix('{') {
            let body = body
                .strip_suffix('}')
                .ok_or_else(|| Error::Usage(format!("unterminated brace in {token:?}")))?;
            for part in body.split(',') {
                word.push(parse_exponent(part, token)?);
            }
        } else {
            word.push(parse_exponent(rest, token)?);
        }
    }
    Ok(word)
}

fn parse_exponent(text: &str, token: &str) -> Result<u32> {
    text.trim()
        .parse::<u32>()
        .map_err(|_| Error::Usage(format!("bad exponent in {token:?}")))
}

/// Parse and normalize in one step; `+`-separated words are summed, so the
/// printer output below parses back to the same element.
pub fn parse_element(input: &str) -> Result<SteenrodElement> {
    if input.trim() == "0" {
        return Ok(SteenrodElement::zero());
    }
    let mut acc = SteenrodElement::zero();
    for part in input.split('+') {
        acc = acc.add(&adem_normalize(&parse_word(part)?));
    }
    Ok(acc)
}

/// Print in the compressed `Sq^{…}` syntax; terms joined by ` + `.
pub fn print_element(e: &SteenrodElement) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = e
        .terms()
        .map(|t| {
            if t.is_unit() {
                "1".to_string()
            } else {
                let exps: Vec<String> = t.exponents().iter().map(u32::to_string).collect();
                format!("Sq^{{{}}}", exps.join(","))
            }
        })
        .collect();
    // larger leading exponents first reads like the usual tables
    parts.sort_by(|a, b| b.cmp(a));
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_forms() {
        assert_eq!(parse_word("Sq2 Sq2").unwrap(), vec![2, 2]);
        assert_eq!(parse_word("Sq^6 Sq^1").unwrap(), vec![6, 1]);
        assert_eq!(parse_word("Sq^{6,1}").unwrap(), vec![6, 1]);
        assert_eq!(parse_word("1").unwrap(), Vec::<u32>::new());
        assert!(parse_word("Tq3").is_err());
        assert!(parse_word("Sq^{3").is_err());
    }

    #[test]
    fn print_and_reparse() {
        for word in [vec![2u32, 2], vec![2, 3], vec![1, 1], vec![7]] {
            let e = adem_normalize(&word);
            let printed = print_element(&e);
            let back = parse_element(&printed).unwrap();
            assert_eq!(back, e, "round-trip failed for {printed}");
        }
        assert_eq!(print_element(&adem_normalize(&[1, 1])), "0");
        assert_eq!(print_element(&adem_normalize(&[2, 2])), "Sq^{3,1}");
        assert_eq!(print_element(&SteenrodElement::unit()), "1");
    }
}
