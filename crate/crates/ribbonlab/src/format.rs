//! Text formats: ribbon data, move scripts, quandle tables and search
//! outcomes.
//!
//! All formats are line based. `#` starts a comment that runs to the end of
//! the line, and blank lines are skipped. Errors carry 1-based line numbers.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ribbonlab_core::search::Refutation;
use ribbonlab_core::{
    Direction, End, FiniteQuandle, Handle, Move, MoveScript, RibbonData, SearchOutcome,
    SignedLetter,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_int<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, FormatError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected an integer, found `{token}`")))
}

fn expect_keyword<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    keyword: &str,
) -> Result<(usize, &'a str), FormatError> {
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated(format!("missing `{keyword}` line")))?;
    match tokens.as_slice() {
        [k, v] if *k == keyword => Ok((line, v)),
        _ => Err(syntax(line, format!("expected `{keyword} <value>`"))),
    }
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Parses the `ribbon 1` format. Fields are kept exactly as written.
pub fn parse_ribbon(text: &str) -> Result<RibbonData, FormatError> {
    let mut lines = content_lines(text);
    let (line, version) = expect_keyword(&mut lines, "ribbon")?;
    if version != "1" {
        return Err(syntax(
            line,
            format!("unsupported ribbon format version `{version}`"),
        ));
    }
    let (line, dim) = expect_keyword(&mut lines, "dim")?;
    let dim: u32 = parse_int(line, dim)?;
    if dim < 2 {
        return Err(syntax(line, "dim must be \u{2265} 2"));
    }
    let (line, bases) = expect_keyword(&mut lines, "bases")?;
    let base_count: usize = parse_int(line, bases)?;
    if base_count == 0 {
        return Err(syntax(line, "bases must be \u{2265} 1"));
    }
    let base = |line: usize, value: usize| {
        if (1..=base_count).contains(&value) {
            Ok(value)
        } else {
            Err(syntax(line, format!("base index {value} out of range")))
        }
    };
    let mut handles = Vec::new();
    for (line, tokens) in lines {
        let [keyword, s, e, colon, letters @ ..] = tokens.as_slice() else {
            return Err(syntax(line, "expected `handle <start> <end> : <letters>`"));
        };
        if *keyword != "handle" || *colon != ":" {
            return Err(syntax(line, "expected `handle <start> <end> : <letters>`"));
        }
        let start = base(line, parse_int(line, s)?)?;
        let end = base(line, parse_int(line, e)?)?;
        let word = letters
            .iter()
            .map(|t| {
                let v: i64 = parse_int(line, t)?;
                if v == 0 {
                    return Err(syntax(line, "letter 0 is not a signed base index"));
                }
                base(line, v.unsigned_abs() as usize)?;
                Ok(SignedLetter::from_signed(v).expect("non-zero"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        handles.push(Handle::new(start, end, word));
    }
    Ok(RibbonData {
        dim,
        base_count,
        handles,
    })
}

pub fn write_ribbon(data: &RibbonData) -> String {
    let mut out = format!("ribbon 1\ndim {}\nbases {}\n", data.dim, data.base_count);
    for h in &data.handles {
        write!(out, "handle {} {} :", h.start, h.end).unwrap();
        for l in &h.word {
            write!(out, " {l}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_direction(line: usize, token: &str) -> Result<Direction, FormatError> {
    match token {
        "fwd" => Ok(Direction::Forward),
        "rev" => Ok(Direction::Reverse),
        _ => Err(syntax(
            line,
            format!("expected `fwd` or `rev`, found `{token}`"),
        )),
    }
}

fn parse_move(line: usize, tokens: &[&str]) -> Result<Move, FormatError> {
    let int = |t: &str| parse_int::<usize>(line, t);
    let mv = match tokens {
        ["stab", b] => Move::Stab { target: int(b)? },
        ["destab", b] => Move::Destab { base: int(b)? },
        ["ins", h, p, l] => {
            let v: i64 = parse_int(line, l)?;
            let letter = SignedLetter::from_signed(v)
                .ok_or_else(|| syntax(line, "letter 0 is not a signed base index"))?;
            Move::CancelInsert {
                handle: int(h)?,
                position: int(p)?,
                base: letter.base,
                sign: letter.sign,
            }
        }
        ["del", h, p] => Move::CancelDelete {
            handle: int(h)?,
            position: int(p)?,
        },
        ["slide", h, end, along, dir] => Move::Slide {
            handle: int(h)?,
            end: match *end {
                "start" => End::Start,
                "end" => End::End,
                _ => {
                    return Err(syntax(
                        line,
                        format!("expected `start` or `end`, found `{end}`"),
                    ))
                }
            },
            along: int(along)?,
            direction: parse_direction(line, dir)?,
        },
        ["xslide", h, p, via, dir] => Move::CrossSlide {
            handle: int(h)?,
            position: int(p)?,
            via: int(via)?,
            direction: parse_direction(line, dir)?,
        },
        ["trivh", b] => Move::TrivialHandle { base: int(b)? },
        ["untrivh", h] => Move::RemoveTrivialHandle { handle: int(h)? },
        ["revh", h] => Move::ReverseHandle { handle: int(h)? },
        _ => {
            return Err(syntax(
                line,
                format!("unrecognized move `{}`", tokens.join(" ")),
            ))
        }
    };
    Ok(mv)
}

/// Parses a move script, returning the moves and the line each came from.
pub fn parse_script_lines(text: &str) -> Result<(MoveScript, Vec<usize>), FormatError> {
    let mut script = MoveScript::default();
    let mut lines = Vec::new();
    for (line, tokens) in content_lines(text) {
        script.push(parse_move(line, &tokens)?);
        lines.push(line);
    }
    Ok((script, lines))
}

pub fn parse_script(text: &str) -> Result<MoveScript, FormatError> {
    parse_script_lines(text).map(|(s, _)| s)
}

pub fn write_script(script: &MoveScript) -> String {
    script.moves.iter().map(|m| format!("{m}\n")).collect()
}

/// Parses the `quandle 1` table format; `id` names the result.
pub fn parse_quandle(text: &str, id: &str) -> Result<FiniteQuandle, FormatError> {
    let mut lines = content_lines(text);
    let (line, version) = expect_keyword(&mut lines, "quandle")?;
    if version != "1" {
        return Err(syntax(
            line,
            format!("unsupported quandle format version `{version}`"),
        ));
    }
    let (line, size) = expect_keyword(&mut lines, "size")?;
    let m: usize = parse_int(line, size)?;
    if m == 0 {
        return Err(syntax(line, "size must be \u{2265} 1"));
    }
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tokens) = lines
            .next()
            .ok_or_else(|| FormatError::Truncated(format!("expected {m} table rows")))?;
        if tokens.len() != m {
            return Err(syntax(
                line,
                format!("expected {m} entries, found {}", tokens.len()),
            ));
        }
        let row = tokens
            .iter()
            .map(|t| {
                let v: u32 = parse_int(line, t)?;
                if v == 0 || v as usize > m {
                    return Err(syntax(line, format!("entry {v} out of range 1..{m}")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<u32>, _>>()?;
        rows.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "unexpected content after the table"));
    }
    FiniteQuandle::from_rows(id, &rows).map_err(|e| syntax(line, e.to_string()))
}

pub fn write_quandle(q: &FiniteQuandle) -> String {
    let mut out = format!("quandle 1\nsize {}\n", q.size());
    for row in q.rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// A built-in (`dihedral:m`, `trivial:m`) when `arg` has that shape,
/// otherwise a quandle file at that path.
pub fn resolve_quandle(arg: &str) -> Result<FiniteQuandle, FormatError> {
    let builtin =
        |m: &str, make: fn(usize) -> Result<FiniteQuandle, ribbonlab_core::QuandleError>| {
            let m: usize = m.parse().map_err(|_| FormatError::Io {
                path: arg.to_string(),
                message: format!("bad quandle order `{m}`"),
            })?;
            make(m).map_err(|e| FormatError::Io {
                path: arg.to_string(),
                message: e.to_string(),
            })
        };
    if let Some(m) = arg.strip_prefix("dihedral:") {
        return builtin(m, FiniteQuandle::dihedral);
    }
    if let Some(m) = arg.strip_prefix("trivial:") {
        return builtin(m, FiniteQuandle::trivial);
    }
    let path = Path::new(arg);
    let text = read_file(path)?;
    parse_quandle(&text, arg).map_err(|e| FormatError::Io {
        path: arg.to_string(),
        message: e.to_string(),
    })
}

/// First line is the verdict; the two scripts follow under `--- script A`
/// and `--- script B` (empty unless the verdict is `EQUIVALENT`).
pub fn write_outcome(outcome: &SearchOutcome) -> String {
    let mut out = String::new();
    let empty = MoveScript::default();
    let (a, b) = match outcome {
        SearchOutcome::Equivalent(cert) => {
            writeln!(out, "EQUIVALENT").unwrap();
            writeln!(out, "# weak {} {}", cert.weak_used_a, cert.weak_used_b).unwrap();
            (&cert.script_a, &cert.script_b)
        }
        SearchOutcome::Refuted(Refutation::Coloring {
            quandle,
            count_a,
            count_b,
        }) => {
            writeln!(out, "REFUTED {quandle} {count_a} {count_b}").unwrap();
            (&empty, &empty)
        }
        SearchOutcome::Refuted(Refutation::Genus { genus_a, genus_b }) => {
            writeln!(out, "REFUTED genus {genus_a} {genus_b}").unwrap();
            (&empty, &empty)
        }
        SearchOutcome::Unknown { states, depth } => {
            writeln!(out, "UNKNOWN {states} {depth}").unwrap();
            (&empty, &empty)
        }
    };
    out.push_str("--- script A\n");
    out.push_str(&write_script(a));
    out.push_str("--- script B\n");
    out.push_str(&write_script(b));
    out
}

/// Verdict line and the two scripts of a serialized outcome.
pub fn parse_outcome_scripts(text: &str) -> Result<(String, MoveScript, MoveScript), FormatError> {
    let verdict = text
        .lines()
        .next()
        .ok_or_else(|| FormatError::Truncated("empty outcome".into()))?
        .to_string();
    let a_at = text
        .find("--- script A\n")
        .ok_or_else(|| FormatError::Truncated("missing `--- script A`".into()))?;
    let b_at = text
        .find("--- script B\n")
        .ok_or_else(|| FormatError::Truncated("missing `--- script B`".into()))?;
    let a = parse_script(&text[a_at + 13..b_at])?;
    let b = parse_script(&text[b_at + 13..])?;
    Ok((verdict, a, b))
}
