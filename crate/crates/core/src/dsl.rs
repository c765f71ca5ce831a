//! The `.wrs` text format for recursion systems.
//!
//! ```text
//! # Basilica
//! degree 2
//! gen a = (0 1) [b, 1]
//! gen b = [a, 1]
//! rel b^-1*a^-1*b^-1*a*b*a^-1*b*a
//! ```
//!
//! `degree` must be the first non-comment line. Generators may be used before
//! they are defined. [`serialize`] writes the canonical form, which
//! [`parse`] reads back to a structurally equal system.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::system::{Definition, RecursionSystem};
use crate::tree::Alphabet;
use crate::word::{is_valid_name, parse_raw_word, GenId, GroupWord, Letter, RawFactor};

/// A parsed document, keeping the source next to the system.
#[derive(Debug, Clone)]
pub struct SystemDocument {
    pub source: String,
    pub system: RecursionSystem,
}

impl SystemDocument {
    pub fn parse(source: &str) -> Result<Self> {
        Ok(Self {
            source: source.to_string(),
            system: parse(source)?,
        })
    }
}

fn err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

struct PendingGen {
    name: String,
    root: Permutation,
    sections: Vec<(Vec<RawFactor>, usize)>,
    line: usize,
}

/// Offset of `part` inside `line`, as a 1-based column.
fn col_of(line: &str, part: &str) -> usize {
    (part.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

pub fn parse(text: &str) -> Result<RecursionSystem> {
    let text = text.replace("\r\n", "\n");
    let mut degree: Option<usize> = None;
    let mut gens: Vec<PendingGen> = Vec::new();
    let mut relators: Vec<(Vec<RawFactor>, usize, usize)> = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();

    for (i, raw_line) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let body = line.trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = body
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((body, ""));
        let Some(d) = degree else {
            if keyword != "degree" {
                return Err(err(
                    line_no,
                    col_of(raw_line, body),
                    "degree missing: the first line must be `degree <int>`",
                ));
            }
            let d: usize = rest.parse().map_err(|_| {
                err(
                    line_no,
                    col_of(raw_line, rest),
                    format!("bad degree `{rest}`"),
                )
            })?;
            Alphabet::new(d).map_err(|e| err(line_no, col_of(raw_line, rest), e.to_string()))?;
            degree = Some(d);
            continue;
        };
        match keyword {
            "degree" => return Err(err(line_no, 1, "degree given twice")),
            "gen" => {
                let Some((name, def)) = rest.split_once('=') else {
                    return Err(err(
                        line_no,
                        col_of(raw_line, rest),
                        "expected `gen <name> = [perm] [sections]`",
                    ));
                };
                let name = name.trim();
                if !is_valid_name(name) {
                    return Err(err(
                        line_no,
                        col_of(raw_line, name),
                        format!("invalid generator name `{name}`"),
                    ));
                }
                if let Some(prev) = seen.get(name) {
                    return Err(err(
                        line_no,
                        col_of(raw_line, name),
                        format!("duplicate generator `{name}` (first defined on line {prev})"),
                    ));
                }
                let def = def.trim();
                let Some(open) = def.find('[') else {
                    return Err(err(
                        line_no,
                        col_of(raw_line, def),
                        "expected `[` before sections",
                    ));
                };
                let perm_text = &def[..open];
                let root = Permutation::parse_cycles(d, perm_text)
                    .map_err(|e| err(line_no, col_of(raw_line, perm_text), e.to_string()))?;
                let after = &def[open + 1..];
                let Some(close) = after.rfind(']') else {
                    return Err(err(line_no, col_of(raw_line, after), "unclosed `[`"));
                };
                let trailing = after[close + 1..].trim();
                if !trailing.is_empty() {
                    return Err(err(
                        line_no,
                        col_of(raw_line, trailing),
                        format!("unexpected `{trailing}`"),
                    ));
                }
                let inner = &after[..close];
                let mut sections = Vec::new();
                for part in inner.split(',') {
                    let col = col_of(raw_line, part);
                    let factors =
                        parse_raw_word(part).map_err(|e| err(line_no, col, e.to_string()))?;
                    sections.push((factors, col));
                }
                if sections.len() != d {
                    return Err(err(
                        line_no,
                        col_of(raw_line, inner),
                        format!("expected {d} sections, got {}", sections.len()),
                    ));
                }
                seen.insert(name.to_string(), line_no);
                gens.push(PendingGen {
                    name: name.to_string(),
                    root,
                    sections,
                    line: line_no,
                });
            }
            "rel" => {
                let col = col_of(raw_line, rest);
                let factors = parse_raw_word(rest).map_err(|e| err(line_no, col, e.to_string()))?;
                relators.push((factors, line_no, col));
            }
            other => {
                return Err(err(
                    line_no,
                    col_of(raw_line, body),
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }

    let Some(d) = degree else {
        return Err(err(1, 1, "degree missing: empty document"));
    };
    let index: HashMap<&str, GenId> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| (g.name.as_str(), GenId(i as u32)))
        .collect();
    let resolve = |factors: &[RawFactor], line: usize, col: usize| -> Result<GroupWord> {
        let mut w = GroupWord::identity();
        for f in factors {
            let gen = *index.get(f.name.as_str()).ok_or_else(|| {
                err(
                    line,
                    col + f.offset,
                    format!("undefined symbol `{}`", f.name),
                )
            })?;
            let l = if f.exp < 0 {
                Letter::neg(gen)
            } else {
                Letter::pos(gen)
            };
            for _ in 0..f.exp.unsigned_abs() {
                w.push(l);
            }
        }
        Ok(w)
    };

    let mut resolved = Vec::with_capacity(gens.len());
    for g in &gens {
        let sections = g
            .sections
            .iter()
            .map(|(f, col)| resolve(f, g.line, *col))
            .collect::<Result<Vec<_>>>()?;
        resolved.push((
            g.name.clone(),
            Definition {
                root: g.root.clone(),
                sections,
            },
        ));
    }
    let relators = relators
        .iter()
        .map(|(f, line, col)| resolve(f, *line, *col))
        .collect::<Result<Vec<_>>>()?;
    RecursionSystem::new(Alphabet::new(d)?, resolved, relators)
}

/// Canonical text: degree line, generators in definition order, relators
/// last.
pub fn serialize(sys: &RecursionSystem) -> String {
    let mut out = String::new();
    writeln!(out, "degree {}", sys.degree()).unwrap();
    for gen in sys.generators() {
        let def = sys.definition(gen);
        let mut line = format!("gen {} = ", sys.name(gen));
        if !def.root.is_identity() {
            write!(line, "{} ", def.root).unwrap();
        }
        let sections: Vec<String> = def
            .sections
            .iter()
            .map(|s| sys.display(s).to_string())
            .collect();
        write!(line, "[{}]", sections.join(", ")).unwrap();
        writeln!(out, "{line}").unwrap();
    }
    for r in sys.relators() {
        writeln!(out, "rel {}", sys.display(r)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basilica() {
        let sys = parse("degree 2\ngen a = (0 1) [b, 1]\ngen b = [a, 1]").unwrap();
        assert_eq!(sys.degree(), 2);
        assert_eq!(sys.generator_count(), 2);
        let a = sys.lookup("a").unwrap();
        assert_eq!(sys.definition(a).sections[0], sys.parse_word("b").unwrap());
        assert_eq!(
            serialize(&sys),
            "degree 2\ngen a = (0 1) [b, 1]\ngen b = [a, 1]\n"
        );
    }

    #[test]
    fn forward_and_self_references() {
        let sys = parse("degree 2\ngen g = [g*a, g]\ngen a = (0 1) [b,1]\ngen b=[a,1]").unwrap();
        let g = sys.lookup("g").unwrap();
        assert_eq!(
            sys.definition(g).sections[0],
            sys.parse_word("g.a").unwrap()
        );
    }

    #[test]
    fn section_count_error() {
        let e = parse("degree 3\ngen a = (1 2) [a, 1]").unwrap_err();
        match e {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert_eq!(message, "expected 3 sections, got 2");
            }
            other => panic!("{other:?}"),
        }
    }

    fn parse_error(text: &str) -> (usize, usize, String) {
        match parse(text) {
            Err(Error::Parse { line, col, message }) => (line, col, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn error_classes_carry_positions() {
        let (line, col, msg) = parse_error("degree 2\ngen a = (0 1) [b, 1]");
        assert_eq!((line, col), (2, 16));
        assert!(msg.contains("undefined symbol `b`"), "{msg}");

        let (line, _, msg) = parse_error("degree 2\ngen a = (0 2) [1, 1]");
        assert_eq!(line, 2);
        assert!(msg.contains("out of range"), "{msg}");

        let (line, _, msg) = parse_error("degree 2\ngen a = (0 1)(1 0) [1, 1]");
        assert_eq!(line, 2);
        assert!(msg.contains("repeated"), "{msg}");

        let (line, _, msg) = parse_error("degree 2\ngen a = [1, 1]\n# c\ngen a = [a, a]");
        assert_eq!(line, 4);
        assert!(msg.contains("duplicate generator"), "{msg}");

        let (line, col, msg) = parse_error("# header\n\ngen a = [1, 1]");
        assert_eq!((line, col), (3, 1));
        assert!(msg.contains("degree missing"), "{msg}");

        let (line, _, msg) = parse_error("degree 2\nrel a*");
        assert_eq!(line, 2);
        assert!(msg.contains("bad word"), "{msg}");

        let (_, _, msg) = parse_error("degree 1");
        assert!(msg.contains("degree"), "{msg}");
    }

    #[test]
    fn comments_and_crlf() {
        let sys =
            parse("# odometer\r\ndegree 3 # ternary\r\ngen g = (0,1,2) [1, 1, g]  # adds one\r\n")
                .unwrap();
        assert_eq!(serialize(&sys), "degree 3\ngen g = (0 1 2) [1, 1, g]\n");
    }

    #[test]
    fn relators_are_kept() {
        let text =
            "degree 2\ngen a = (0 1) [b, 1]\ngen b = [a, 1]\nrel b^-1*a^-1 * b^-1*a*b*a^-1*b*a\n";
        let sys = parse(text).unwrap();
        assert_eq!(sys.relators().len(), 1);
        assert_eq!(
            serialize(&sys),
            "degree 2\ngen a = (0 1) [b, 1]\ngen b = [a, 1]\nrel b^-1*a^-1*b^-1*a*b*a^-1*b*a\n"
        );
    }

    #[test]
    fn document_keeps_source() {
        let doc = SystemDocument::parse("degree 2\ngen t = (0 1) [1, 1]").unwrap();
        assert!(doc.source.starts_with("degree 2"));
        assert_eq!(doc.system.generator_count(), 1);
    }
}
