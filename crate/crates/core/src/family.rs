//! Canonical uniform set families and their text file format.
//!
//! File format: one member per line as whitespace-separated non-negative
//! integers; `#` starts a comment; blank lines are ignored; an optional
//! `%% s=<int> n=<int>` header fixes uniformity and ground-set size.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::set::MemberSet;

/// A deduplicated, canonically ordered `s`-uniform family over `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    s: usize,
    n: usize,
    members: Vec<MemberSet>,
}

impl SetFamily {
    /// Validates and canonicalizes. Duplicates collapse.
    pub fn new(s: usize, n: usize, members: impl IntoIterator<Item = MemberSet>) -> Result<Self> {
        if s == 0 {
            return Err(Error::Domain("uniformity must be positive".into()));
        }
        let mut members: Vec<MemberSet> = members.into_iter().collect();
        for m in &members {
            if m.len() != s {
                return Err(Error::Domain(format!(
                    "member {m} has {} elements, expected {s}",
                    m.len()
                )));
            }
            if let Some(max) = m.max_element() {
                if max >= n {
                    return Err(Error::Domain(format!(
                        "member {m} has element {max} outside ground set of size {n}"
                    )));
                }
            }
        }
        members.sort();
        members.dedup();
        Ok(Self { s, n, members })
    }

    /// Builds a family from element lists, inferring `n` as one past the largest element.
    pub fn from_lists<I, J>(s: usize, lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let members: Vec<MemberSet> = lists.into_iter().map(MemberSet::from_elements).collect();
        let n = members
            .iter()
            .filter_map(MemberSet::max_element)
            .max()
            .map_or(s, |m| m + 1);
        Self::new(s, n, members)
    }

    pub fn empty(s: usize, n: usize) -> Result<Self> {
        Self::new(s, n, [])
    }

    pub fn uniformity(&self) -> usize {
        self.s
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[MemberSet] {
        &self.members
    }

    pub fn member(&self, index: usize) -> &MemberSet {
        &self.members[index]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Subfamily on the given member indices, with the same `s` and `n`.
    pub fn subfamily(&self, indices: &[usize]) -> SetFamily {
        let mut members: Vec<MemberSet> = indices.iter().map(|&i| self.members[i].clone()).collect();
        members.sort();
        members.dedup();
        SetFamily {
            s: self.s,
            n: self.n,
            members,
        }
    }

    /// Parses the family file format.
    pub fn parse(text: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(text).map_err(|e| Error::Parse {
            line: 0,
            message: format!("input is not UTF-8: {e}"),
        })?;
        let mut header: Option<(usize, usize)> = None;
        let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.trim_end_matches('\r');
            if let Some(rest) = line.trim_start().strip_prefix("%%") {
                if header.is_some() || !rows.is_empty() {
                    return Err(Error::Format(format!(
                        "line {line_no}: header must precede all members and appear once"
                    )));
                }
                header = Some(parse_header(rest, line_no)?);
                continue;
            }
            let body = line.split('#').next().unwrap_or("");
            let mut elems = Vec::new();
            for tok in body.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("invalid element `{tok}`"),
                })?;
                elems.push(v);
            }
            if elems.is_empty() {
                continue;
            }
            rows.push((line_no, elems));
        }

        let s = match (header, rows.first()) {
            (Some((s, _)), _) => s,
            (None, Some((_, first))) => first.len(),
            (None, None) => {
                return Err(Error::Format(
                    "no members and no `%% s=<int> n=<int>` header".into(),
                ))
            }
        };
        let mut members = Vec::with_capacity(rows.len());
        let mut max_elem: Option<usize> = None;
        for (line, elems) in rows {
            let set = MemberSet::from_elements(elems.iter().copied());
            if elems.len() != s || set.len() != s {
                // a repeated element inside a line also breaks uniformity
                return Err(Error::Uniformity {
                    line,
                    expected: s,
                    found: set.len(),
                });
            }
            max_elem = max_elem.max(set.max_element());
            members.push(set);
        }
        let n = match header {
            Some((_, n)) => {
                if let Some(m) = max_elem {
                    if m >= n {
                        return Err(Error::Format(format!(
                            "element {m} outside header ground-set size n={n}"
                        )));
                    }
                }
                n
            }
            None => max_elem.map_or(s, |m| m + 1),
        };
        Self::new(s, n, members)
    }

    /// Canonical text. The header is written only when it carries information
    /// that the member lines alone would not reproduce.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let inferred_n = self
            .members
            .iter()
            .filter_map(MemberSet::max_element)
            .max()
            .map(|m| m + 1);
        if inferred_n != Some(self.n) {
            let _ = writeln!(out, "%% s={} n={}", self.s, self.n);
        }
        for m in &self.members {
            let mut first = true;
            for e in m.elements() {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{e}");
            }
            out.push('\n');
        }
        out
    }
}

fn parse_header(rest: &str, line: usize) -> Result<(usize, usize)> {
    let mut s = None;
    let mut n = None;
    for tok in rest.split_whitespace() {
        let (key, value) = tok.split_once('=').ok_or_else(|| Error::Format(format!(
            "line {line}: malformed header token `{tok}`"
        )))?;
        let v: usize = value.parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid header value `{value}`"),
        })?;
        match key {
            "s" => s = Some(v),
            "n" => n = Some(v),
            _ => {
                return Err(Error::Format(format!(
                    "line {line}: unknown header key `{key}`"
                )))
            }
        }
    }
    match (s, n) {
        (Some(s), Some(n)) if s > 0 => Ok((s, n)),
        (Some(0), _) => Err(Error::Format(format!("line {line}: s must be positive"))),
        _ => Err(Error::Format(format!(
            "line {line}: header needs both s=<int> and n=<int>"
        ))),
    }
}

impl std::str::FromStr for SetFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s.as_bytes())
    }
}
