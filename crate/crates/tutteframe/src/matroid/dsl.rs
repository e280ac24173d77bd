//! The matroid description language.
//!
//! ```text
//! uniform:R,N | pg:D,Q | complete:M | graphic:[(u,v);...] | echelon:BITS
//! multipoint:L;M1,M2,... | line:M1,M2,... | sum(S|S|...) | bases:N,R,{e1 e2;...}
//! ```

use std::collections::BTreeMap;

use super::{Mask, Matroid, MAX_ELEMENTS};
use crate::error::{Error, Result};

pub(super) fn parse(spec: &str) -> Result<Matroid> {
    parse_normalized(&normalize(spec))
}

/// Drop whitespace, except that inside braces a run of whitespace separates elements.
fn normalize(spec: &str) -> String {
    let mut out = String::new();
    let mut depth = 0usize;
    let mut pending_sep = false;
    for ch in spec.chars() {
        match ch {
            '{' => {
                depth += 1;
                pending_sep = false;
                out.push(ch);
            }
            '}' => {
                depth = depth.saturating_sub(1);
                pending_sep = false;
                out.push(ch);
            }
            c if c.is_whitespace() => {
                if depth > 0 && !out.ends_with(['{', ';', ',']) {
                    pending_sep = true;
                }
            }
            c => {
                if pending_sep && !matches!(c, ';' | ',') {
                    out.push(',');
                }
                pending_sep = false;
                out.push(c);
            }
        }
    }
    out
}

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn numbers(s: &str, sep: char) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(sep)
        .map(|t| t.parse::<usize>().or_else(|_| err(format!("expected a number, got {t:?}"))))
        .collect()
}

fn parse_normalized(s: &str) -> Result<Matroid> {
    if let Some(inner) = s.strip_prefix("sum(") {
        let inner = inner.strip_suffix(')').ok_or_else(|| Error::Parse("unclosed sum(".into()))?;
        let parts = split_top(inner, '|')?
            .into_iter()
            .map(parse_normalized)
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return err("empty sum");
        }
        return Matroid::direct_sum(&parts);
    }
    let (kind, args) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("missing ':' in {s:?}")))?;
    match kind {
        "uniform" => match numbers(args, ',')?[..] {
            [r, n] => Matroid::uniform(r, n),
            _ => err("uniform needs R,N"),
        },
        "pg" => match numbers(args, ',')?[..] {
            [d, q] => projective_geometry(d, q),
            _ => err("pg needs D,Q"),
        },
        "complete" => match numbers(args, ',')?[..] {
            [m] => complete_graph(m),
            _ => err("complete needs M"),
        },
        "graphic" => graph(args),
        "echelon" => {
            let bits = args
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => err(format!("bad bit {c:?}")),
                })
                .collect::<Result<Vec<_>>>()?;
            if bits.len() > MAX_ELEMENTS {
                return err("echelon sequence too long");
            }
            Matroid::nested(&bits)
        }
        "multipoint" => {
            let (l, rest) = args.split_once(';').unwrap_or((args, ""));
            let loops = numbers(l, ',')?;
            if loops.len() != 1 {
                return err("multipoint needs L;M1,...");
            }
            let classes = numbers(rest, ',')?;
            if classes.contains(&0) {
                return err("multipoint classes must be non-empty");
            }
            Matroid::multipoint(loops[0], &classes)
        }
        "line" => {
            let classes = numbers(args, ',')?;
            if classes.is_empty() {
                return err("line needs at least one class");
            }
            Matroid::line(&classes)
        }
        "bases" => bases(args),
        _ => err(format!("unknown constructor {kind:?}")),
    }
}

/// Split on `sep` outside parentheses, brackets and braces.
fn split_top(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return err("unbalanced brackets");
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return err("unbalanced brackets");
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn projective_geometry(d: usize, q: usize) -> Result<Matroid> {
    if !is_prime(q) {
        return err(format!("pg:{d},{q}: Q must be prime"));
    }
    let dim = d + 1;
    let count = (0..dim).try_fold(0usize, |acc, k| acc.checked_add(q.checked_pow(k as u32)?));
    match count {
        Some(c) if c <= MAX_ELEMENTS => {}
        _ => return err(format!("pg:{d},{q} has more than {MAX_ELEMENTS} points")),
    }
    // Representatives whose first non-zero coordinate is 1.
    let mut vectors = Vec::new();
    for lead in 0..dim {
        let free = dim - lead - 1;
        for code in 0..q.pow(free as u32) {
            let mut v = vec![0u32; dim];
            v[lead] = 1;
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (c % q) as u32;
                c /= q;
            }
            vectors.push(v);
        }
    }
    Matroid::linear(q as u32, vectors, format!("pg:{d},{q}"))
}

fn complete_graph(m: usize) -> Result<Matroid> {
    let edges: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    if edges.len() > MAX_ELEMENTS {
        return err(format!("complete:{m} has more than {MAX_ELEMENTS} edges"));
    }
    Matroid::graphic(m, edges, format!("complete:{m}"))
}

fn graph(args: &str) -> Result<Matroid> {
    let body = args
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("graphic needs [(u,v);...]".into()))?;
    let mut labels = BTreeMap::new();
    let mut raw = Vec::new();
    for item in body.split(';').filter(|t| !t.is_empty()) {
        let pair = item
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad edge {item:?}")))?;
        match numbers(pair, ',')?[..] {
            [u, v] => raw.push((u, v)),
            _ => return err(format!("bad edge {item:?}")),
        }
    }
    for &(u, v) in &raw {
        let next = labels.len();
        labels.entry(u).or_insert(next);
        let next = labels.len();
        labels.entry(v).or_insert(next);
    }
    if raw.len() > MAX_ELEMENTS {
        return err(format!("more than {MAX_ELEMENTS} edges"));
    }
    let edges = raw.iter().map(|(u, v)| (labels[u], labels[v])).collect();
    let spec = format!(
        "graphic:[{}]",
        raw.iter().map(|(u, v)| format!("({u},{v})")).collect::<Vec<_>>().join(";")
    );
    Matroid::graphic(labels.len(), edges, spec)
}

fn bases(args: &str) -> Result<Matroid> {
    let (head, sets) = args
        .split_once('{')
        .ok_or_else(|| Error::Parse("bases needs N,R,{...}".into()))?;
    let sets = sets.strip_suffix('}').ok_or_else(|| Error::Parse("unclosed '{'".into()))?;
    let nr = numbers(head.trim_end_matches(','), ',')?;
    let [n, r] = nr[..] else {
        return err("bases needs N,R");
    };
    if n > MAX_ELEMENTS {
        return err(format!("more than {MAX_ELEMENTS} elements"));
    }
    let mut masks: Vec<Mask> = Vec::new();
    let mut canonical = Vec::new();
    for set in sets.split(';') {
        let elems = numbers(set, ',')?;
        let mut mask = 0u64;
        for &e in &elems {
            if e == 0 || e > n {
                return err(format!("inconsistent base list: element {e} not in 1..{n}"));
            }
            if mask >> (e - 1) & 1 == 1 {
                return err(format!("inconsistent base list: repeated element {e}"));
            }
            mask |= 1 << (e - 1);
        }
        masks.push(mask);
        canonical.push(elems.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "));
    }
    let spec = format!("bases:{n},{r},{{{}}}", canonical.join(";"));
    Matroid::from_bases(n, r, masks, spec)
}
