//! Plain-text group files.
//!
//! ```text
//! perm 4            # or: table <order>, followed by <order> rows
//! (0 1 2 3)
//! (0 1)
//! subgroup          # optional; generators as cycles or element indices
//! (0 1 2)
//! ```
//!
//! `#` starts a comment. Points and element indices are 0-based.

use super::{FiniteGroup, SubgroupSet};
use crate::{Error, Result};

/// Longest accepted input, in bytes.
const MAX_INPUT: usize = 4 << 20;

/// A parsed group file: the group and the subgroup `T` (trivial if the file
/// has no `subgroup` section).
#[derive(Clone, Debug)]
pub struct GroupInput {
    pub group: FiniteGroup,
    pub subgroup: SubgroupSet,
}

/// Parses a permutation in cycle notation, e.g. `(0 1 2)(3 4)` or `(0,1)`.
/// `()` and the empty string are the identity.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Vec<u32>> {
    let bad = |msg: String| Error::InvalidPermutation(msg);
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let mut touched = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| bad(format!("expected '(' in {text:?}")))?;
        let close = body.find(')').ok_or_else(|| bad(format!("unclosed cycle in {text:?}")))?;
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad(format!("bad point {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        for &x in &points {
            if x >= degree {
                return Err(bad(format!("point {x} is not below degree {degree}")));
            }
            if touched[x] {
                return Err(bad(format!("point {x} appears twice in {text:?}")));
            }
            touched[x] = true;
        }
        for (i, &x) in points.iter().enumerate() {
            perm[x] = points[(i + 1) % points.len()] as u32;
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Writes a permutation in cycle notation; the identity is `()`.
pub fn format_permutation(perm: &[u32]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start] as usize;
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x] as usize;
        }
        let body: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn parse_count(word: Option<&str>, line: usize, what: &str) -> Result<usize> {
    word.ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("{what} must be a non-negative integer")))
}

/// Parses a group file. `cap` bounds the group order.
pub fn parse_group_file(text: &str, cap: usize) -> Result<GroupInput> {
    if text.len() > MAX_INPUT {
        return Err(Error::parse(0, "input too large"));
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty group file"))?;
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or("");
    let size = parse_count(words.next(), hline, "size")?;
    if words.next().is_some() {
        return Err(Error::parse(hline, "unexpected text after the header"));
    }
    let mut body = Vec::new();
    let mut sub = None;
    for (n, l) in lines {
        if l == "subgroup" {
            if sub.is_some() {
                return Err(Error::parse(n, "repeated subgroup section"));
            }
            sub = Some(Vec::new());
        } else if let Some(s) = sub.as_mut() {
            s.push((n, l));
        } else {
            body.push((n, l));
        }
    }
    let group = match kind {
        "perm" => {
            if size == 0 || size > cap {
                return Err(Error::parse(hline, format!("degree must be in 1..={cap}")));
            }
            let gens = body
                .iter()
                .map(|&(n, l)| parse_permutation(l, size).map_err(|e| Error::parse(n, e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_permutations(size, &gens, cap)?
        }
        "table" => {
            if size == 0 || size > cap {
                return Err(Error::parse(hline, format!("order must be in 1..={cap}")));
            }
            if body.len() != size {
                return Err(Error::parse(hline, format!("expected {size} table rows, found {}", body.len())));
            }
            let rows = body
                .iter()
                .map(|&(n, l)| {
                    l.split_whitespace()
                        .map(|w| w.parse::<u32>().map_err(|_| Error::parse(n, format!("bad entry {w:?}"))))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_table(rows, cap)?
        }
        other => return Err(Error::parse(hline, format!("unknown group kind {other:?}; use perm or table"))),
    };
    let mut seeds = Vec::new();
    for (n, l) in sub.unwrap_or_default() {
        if l.starts_with('(') {
            let perms = group
                .permutations()
                .ok_or_else(|| Error::parse(n, "cycles need a permutation group"))?;
            let p = parse_permutation(l, perms.degree).map_err(|e| Error::parse(n, e.to_string()))?;
            let x = group
                .find_permutation(&p)
                .ok_or_else(|| Error::parse(n, format!("{l} is not an element of the group")))?;
            seeds.push(x);
        } else {
            for w in l.split_whitespace() {
                let x: u32 = w.parse().map_err(|_| Error::parse(n, format!("bad element index {w:?}")))?;
                if x as usize >= group.order() {
                    return Err(Error::parse(n, format!("element {x} is not below {}", group.order())));
                }
                seeds.push(x);
            }
        }
    }
    let subgroup = SubgroupSet::closure(&group, &seeds)?;
    Ok(GroupInput { group, subgroup })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_round_trip() {
        let p = parse_permutation("(0 1 2)(3,4)", 6).unwrap();
        assert_eq!(p, vec![1, 2, 0, 4, 3, 5]);
        assert_eq!(format_permutation(&p), "(0 1 2)(3 4)");
        assert_eq!(parse_permutation("()", 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(format_permutation(&[0, 1]), "()");
        for bad in ["(0 1", "0 1)", "(0 3)", "(0 0)", "(0 1)(1 2)", "(a)"] {
            assert!(parse_permutation(bad, 3).is_err(), "{bad}");
        }
    }

    #[test]
    fn s4_file() {
        let text = "perm 4\n(0 1 2 3)\n(0 1)  # transposition\n\nsubgroup\n(0 1 2)\n";
        let input = parse_group_file(text, 5000).unwrap();
        assert_eq!(input.group.order(), 24);
        assert_eq!(input.subgroup.order(), 3);
    }

    #[test]
    fn table_file() {
        let text = "table 2\n0 1\n1 0\nsubgroup\n1\n";
        let input = parse_group_file(text, 5000).unwrap();
        assert_eq!(input.subgroup.order(), 2);
        let no_sub = parse_group_file("table 1\n0\n", 10).unwrap();
        assert_eq!(no_sub.subgroup.order(), 1);
    }

    #[test]
    fn errors_carry_lines() {
        match parse_group_file("perm 3\n(0 1)\n(0 5)\n", 100) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_group_file("", 10).is_err());
        assert!(parse_group_file("group 3", 10).is_err());
        assert!(parse_group_file("table 2\n0 1\n", 10).is_err());
        assert!(parse_group_file("table 2\n0 1\n1 0\nsubgroup\n(0 1)\n", 10).is_err());
        assert!(parse_group_file("perm 3\n(0 1)\nsubgroup\n(0 1 2)\n", 10).is_err());
    }
}
