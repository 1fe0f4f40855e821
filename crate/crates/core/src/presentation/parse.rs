//! Text format for presentations.
//!
//! ```text
//! # the Borromean rings
//! gens: x, y, z
//! rels:
//! [x, [y, z]]
//! [z, [y, x]]
//! ```
//!
//! Relator tokens are `name`, `name^k`, `[u, v]` (nestable, with optional
//! `^k`), and `1` for the identity. Juxtaposition is the product and `#`
//! starts a comment. A relator may also follow `rels:` on the same line.

use std::collections::HashMap;

use super::{FinitePresentation, Word};
use crate::{Error, Result};

pub fn parse_presentation(text: &str) -> Result<FinitePresentation> {
    let mut names: Option<Vec<String>> = None;
    let mut in_rels = false;
    let mut relators = Vec::new();
    let mut lookup: HashMap<String, usize> = HashMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let trimmed = line.trim_start();

        if names.is_none() {
            let Some(rest) = trimmed.strip_prefix("gens:") else {
                return Err(syntax(line_no, indent + 1, "expected `gens:` header"));
            };
            let offset = indent + "gens:".len();
            let parsed = parse_generator_list(rest, line_no, offset)?;
            for (i, name) in parsed.iter().enumerate() {
                if lookup.insert(name.clone(), i).is_some() {
                    return Err(Error::DuplicateGenerator(name.clone()));
                }
            }
            names = Some(parsed);
            continue;
        }

        let body_offset;
        let body = if !in_rels {
            let Some(rest) = trimmed.strip_prefix("rels:") else {
                return Err(syntax(line_no, indent + 1, "expected `rels:` header"));
            };
            in_rels = true;
            body_offset = indent + "rels:".len();
            if rest.trim().is_empty() {
                continue;
            }
            rest
        } else {
            body_offset = 0;
            line
        };
        let mut p = RelatorParser {
            chars: body.chars().collect(),
            pos: 0,
            line: line_no,
            offset: body_offset,
            lookup: &lookup,
        };
        relators.push(p.parse_line()?);
    }

    let Some(names) = names else {
        return Err(syntax(1, 1, "missing `gens:` header"));
    };
    FinitePresentation::new(names, relators)
}

fn syntax(line: usize, column: usize, message: &str) -> Error {
    Error::Syntax { line, column, message: message.to_string() }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn parse_generator_list(rest: &str, line: usize, offset: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut col = offset;
    for part in rest.split(',') {
        let lead = part.len() - part.trim_start().len();
        let name = part.trim();
        let column = col + lead + 1;
        if name.is_empty() {
            return Err(syntax(line, column, "empty generator name"));
        }
        let mut chars = name.chars();
        let ok = chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char);
        if !ok {
            return Err(syntax(line, column, &format!("invalid generator name `{name}`")));
        }
        out.push(name.to_string());
        col += part.len() + 1;
    }
    Ok(out)
}

struct RelatorParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    offset: usize,
    lookup: &'a HashMap<String, usize>,
}

impl RelatorParser<'_> {
    fn column(&self) -> usize {
        self.offset + self.pos + 1
    }

    fn error(&self, message: &str) -> Error {
        syntax(self.line, self.column(), message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn parse_line(&mut self) -> Result<Word> {
        let w = self.parse_product()?;
        self.skip_ws();
        match self.peek() {
            None => Ok(w),
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
        }
    }

    /// product := factor*
    fn parse_product(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if is_ident_start(c) || c == '[' || c == '1' => {
                    let f = self.parse_factor()?;
                    w = w.multiply(&f);
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return Err(self.error("expected a word"));
        }
        Ok(w)
    }

    /// factor := (name | `1` | `[` product `,` product `]`) (`^` integer)?
    fn parse_factor(&mut self) -> Result<Word> {
        let base = match self.peek() {
            Some('[') => {
                self.pos += 1;
                let u = self.parse_product()?;
                self.skip_ws();
                if self.peek() != Some(',') {
                    return Err(self.error("expected `,` in commutator"));
                }
                self.pos += 1;
                let v = self.parse_product()?;
                self.skip_ws();
                if self.peek() != Some(']') {
                    return Err(self.error("expected `]`"));
                }
                self.pos += 1;
                u.commutator(&v)
            }
            Some('1') => {
                self.pos += 1;
                Word::identity()
            }
            _ => {
                let start = self.pos;
                let column = self.column();
                while self.peek().is_some_and(is_ident_char) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.lookup.get(&name) {
                    Some(&g) => Word::generator(g),
                    None => {
                        return Err(Error::UndeclaredGenerator { name, line: self.line, column })
                    }
                }
            }
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.parse_integer()?;
            if k == 0 {
                return Err(self.error("exponent must be nonzero"));
            }
            return Ok(base.power(k));
        }
        Ok(base)
    }

    fn parse_integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error("expected an integer exponent"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>().map_err(|_| self.error("exponent out of range"))
    }
}
