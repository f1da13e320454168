//! Group specifications as typed on the command line.
//!
//! ```text
//! sym:N  alt:N  cyc:N  dih:N          named families on N points
//! gens:(1 2 3)(4 5),(1 2)             1-indexed disjoint cycles
//! <spec>@D                            act on D points instead
//! ```
//!
//! Generators are separated by commas outside parentheses; points inside a
//! cycle by spaces or commas.

use thiserror::Error;

use crate::permgrp::{families, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degree error: {0}")]
    Degree(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupSpec {
    /// Re-embeds the generators on `degree` points.
    pub fn with_degree(&self, degree: usize) -> Result<Self, SpecError> {
        if degree < self.degree {
            return Err(SpecError::Degree(format!(
                "group needs {} points but the ambient degree is {degree}",
                self.degree
            )));
        }
        let generators = self
            .generators
            .iter()
            .map(|g| g.extend(degree).expect("degree checked"))
            .collect();
        Ok(Self { degree, generators })
    }
}

fn parse_err(pos: usize, msg: impl Into<String>) -> SpecError {
    SpecError::Parse {
        pos,
        msg: msg.into(),
    }
}

fn parse_number(s: &str, offset: usize) -> Result<usize, SpecError> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| parse_err(offset, format!("expected a number, found {:?}", s.trim())))
}

/// 1-indexed cycles, 0-indexed on output; one `Vec` of cycles per generator.
fn parse_cycles(s: &str, offset: usize) -> Result<Vec<Vec<Vec<usize>>>, SpecError> {
    let mut gens: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    let mut in_gen = false;
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            '(' => {
                let close = chars[i + 1..]
                    .iter()
                    .position(|&(_, c)| c == ')' || c == '(')
                    .map(|k| k + i + 1);
                let Some(close) = close.filter(|&k| chars[k].1 == ')') else {
                    return Err(parse_err(offset + pos, "unclosed cycle"));
                };
                let body_start = chars[i].0 + 1;
                let body_end = chars[close].0;
                let body = &s[body_start..body_end];
                let mut cycle = Vec::new();
                let mut field_start = body_start;
                for field in body.split(|c: char| c == ',' || c.is_whitespace()) {
                    if !field.is_empty() {
                        let point = parse_number(field, offset + field_start)?;
                        if point == 0 {
                            return Err(parse_err(offset + field_start, "points are numbered from 1"));
                        }
                        if cycle.contains(&(point - 1)) {
                            return Err(parse_err(
                                offset + field_start,
                                format!("point {point} repeated in cycle"),
                            ));
                        }
                        cycle.push(point - 1);
                    }
                    field_start += field.len() + 1;
                }
                if cycle.len() > 1 {
                    current.push(cycle);
                }
                in_gen = true;
                i = close + 1;
            }
            ',' => {
                if !in_gen {
                    return Err(parse_err(offset + pos, "empty generator"));
                }
                gens.push(std::mem::take(&mut current));
                in_gen = false;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            ')' => return Err(parse_err(offset + pos, "unmatched ')'")),
            other => return Err(parse_err(offset + pos, format!("unexpected {other:?}"))),
        }
    }
    if in_gen {
        gens.push(current);
    } else if !gens.is_empty() {
        return Err(parse_err(offset + s.len(), "trailing comma"));
    }
    Ok(gens)
}

pub fn parse_group_spec(s: &str) -> Result<GroupSpec, SpecError> {
    let s = s.trim();
    let (body, explicit_degree) = match s.rsplit_once('@') {
        Some((body, d)) => (body, Some(parse_number(d, body.len() + 1)?)),
        None => (s, None),
    };
    let Some((family, arg)) = body.split_once(':') else {
        return Err(parse_err(0, "expected <family>:<argument>"));
    };
    let arg_offset = family.len() + 1;
    let fam_err = |e: crate::permgrp::GroupError| SpecError::Degree(e.to_string());
    let spec = match family.trim() {
        "sym" | "alt" | "cyc" | "dih" => {
            let n = parse_number(arg, arg_offset)?;
            if n == 0 {
                return Err(SpecError::Degree("a family needs at least one point".into()));
            }
            let degree = explicit_degree.unwrap_or(n);
            if degree < n {
                return Err(SpecError::Degree(format!(
                    "{family}:{n} does not fit on {degree} points"
                )));
            }
            let generators = match family.trim() {
                "sym" => families::symmetric(n, degree),
                "alt" => families::alternating(n, degree),
                "cyc" => families::cyclic(n, degree),
                _ => families::dihedral(n, degree),
            }
            .map_err(fam_err)?;
            GroupSpec { degree, generators }
        }
        "gens" => {
            let cycles = parse_cycles(arg, arg_offset)?;
            let largest = cycles.iter().flatten().flatten().max().map_or(1, |&p| p + 1);
            let degree = match explicit_degree {
                Some(d) if d < largest => {
                    return Err(SpecError::Degree(format!(
                        "point {largest} moved but degree is {d}"
                    )))
                }
                Some(d) => d,
                None => largest,
            };
            let generators = cycles
                .iter()
                .map(|g| Permutation::from_cycles(degree, g))
                .collect::<Result<_, _>>()
                .map_err(|e| parse_err(arg_offset, e.to_string()))?;
            GroupSpec { degree, generators }
        }
        other => return Err(parse_err(0, format!("unknown group family {other:?}"))),
    };
    Ok(spec)
}
