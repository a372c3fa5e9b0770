//! Helpers for the `name:key=value,...` textual forms used on the command line.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Splits on `sep` at bracket depth zero (`()`, `[]`).
pub(crate) fn split_top_level(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth: i32 = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(s, "unbalanced closing bracket"));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(s, "unbalanced brackets"));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

/// Parses `k1=v1,k2=v2` into a map, rejecting unknown, duplicate and missing keys.
pub(crate) fn parse_kv<'a>(
    input: &str,
    body: &'a str,
    allowed: &[&str],
) -> Result<BTreeMap<String, &'a str>> {
    let mut out = BTreeMap::new();
    if body.trim().is_empty() {
        if allowed.is_empty() {
            return Ok(out);
        }
        return Err(Error::parse(input, format!("missing keys {allowed:?}")));
    }
    for item in split_top_level(body, ',')? {
        let item = item.trim();
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::parse(input, format!("expected key=value, got `{item}`")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(Error::parse(input, format!("unknown key `{k}`")));
        }
        if out.insert(k.to_string(), v.trim()).is_some() {
            return Err(Error::parse(input, format!("duplicate key `{k}`")));
        }
    }
    for k in allowed {
        if !out.contains_key(*k) {
            return Err(Error::parse(input, format!("missing key `{k}`")));
        }
    }
    Ok(out)
}

pub(crate) fn parse_f64(input: &str, s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::parse(input, format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::parse(input, format!("`{s}` is not finite")));
    }
    Ok(v)
}

pub(crate) fn get_f64(input: &str, kv: &BTreeMap<String, &str>, key: &str) -> Result<f64> {
    parse_f64(input, kv[key])
}

/// Comma-separated list of finite reals.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|t| parse_f64(s, t)).collect()
}

/// Splits `name:rest` (rest may be empty when there is no colon).
pub(crate) fn split_head(s: &str) -> (&str, &str) {
    match s.split_once(':') {
        Some((h, r)) => (h.trim(), r.trim()),
        None => (s.trim(), ""),
    }
}

pub(crate) fn join_list(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_level_split_respects_brackets() {
        let parts = split_top_level("a=1,b=f(p=1,q=2),c=[x,y]", ',').unwrap();
        assert_eq!(parts, vec!["a=1", "b=f(p=1,q=2)", "c=[x,y]"]);
    }

    #[test]
    fn kv_rejects_unknown_and_duplicate() {
        assert!(parse_kv("x", "a=1,b=2", &["a"]).is_err());
        assert!(parse_kv("x", "a=1,a=2", &["a"]).is_err());
        assert!(parse_kv("x", "a=1", &["a", "b"]).is_err());
        let kv = parse_kv("x", "b=2, a=1", &["a", "b"]).unwrap();
        assert_eq!(kv["a"], "1");
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("0.5,0.9").unwrap(), vec![0.5, 0.9]);
        assert!(parse_list("1,x").is_err());
        assert!(parse_list("1,inf").is_err());
    }
}
