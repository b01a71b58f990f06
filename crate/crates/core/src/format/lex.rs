//! Line lexer and token cursor shared by all text formats. Every format is
//! line-oriented, so tokens carry only a column; the line number travels
//! with the cursor.

use thiserror::Error;

use crate::syntax::Decoration;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("`{name}` is declared {declared} but its decoration is forced to {forced}")]
    DecorationAnnotationConflict {
        name: String,
        declared: Decoration,
        forced: Decoration,
    },
    #[error("a try block needs at least one catch clause")]
    EmptyClauseList,
    #[error("ill-typed: {0}")]
    IllTyped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, col: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, col, kind }
    }

    pub fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError::new(line, col, ParseErrorKind::Syntax(msg.into()))
    }
}

pub type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Sym(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    /// 1-based column.
    pub col: usize,
}

// longest first
const SYMS: [&str; 18] = [
    ":=", "|-", "->", "=>", "==", "(", ")", "[", "]", "{", "}", "|", ",", ":", "~", "+", "=", "*",
];

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Strips a `#` comment.
pub fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

pub fn lex_line(text: &str, line: usize) -> PResult<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut k = 0;
    while k < chars.len() {
        let (byte, c) = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if ident_char(c) {
            let start = k;
            while k < chars.len() && ident_char(chars[k].1) {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|(_, c)| c).collect();
            out.push(Token {
                tok: Tok::Ident(s),
                col,
            });
            continue;
        }
        match SYMS.iter().find(|s| text[byte..].starts_with(**s)) {
            Some(s) => {
                out.push(Token { tok: Tok::Sym(s), col });
                k += s.chars().count();
            }
            None => return Err(ParseError::syntax(line, col, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

/// A non-blank line with its comment removed.
pub struct Line<'a> {
    pub number: usize,
    pub indent: usize,
    pub text: &'a str,
}

pub fn lines(src: &str) -> impl Iterator<Item = Line<'_>> {
    src.lines().enumerate().filter_map(|(k, raw)| {
        let text = strip_comment(raw);
        let body = text.trim_start();
        if body.trim().is_empty() {
            return None;
        }
        Some(Line {
            number: k + 1,
            indent: text.len() - body.len(),
            text,
        })
    })
}

pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    eol: usize,
}

impl Cursor {
    pub fn new(l: &Line<'_>) -> PResult<Cursor> {
        Cursor::from_text(l.text, l.number)
    }

    pub fn from_text(text: &str, line: usize) -> PResult<Cursor> {
        Ok(Cursor {
            toks: lex_line(text, line)?,
            pos: 0,
            line,
            eol: text.chars().count() + 1,
        })
    }

    pub fn line(&self) -> usize {
        self.line
    }

    /// Column of the next token, or of the end of the line.
    pub fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.eol, |t| t.col)
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    pub fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(t)) if t == w)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.is_sym(s);
        if hit {
            self.pos += 1;
        }
        hit
    }

    pub fn eat_word(&mut self, w: &str) -> bool {
        let hit = self.is_word(w);
        if hit {
            self.pos += 1;
        }
        hit
    }

    pub fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.line, self.col(), kind)
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        let found = match self.peek() {
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Sym(s)) => format!("`{s}`"),
            None => "end of line".to_string(),
        };
        self.err(ParseErrorKind::Syntax(format!("expected {wanted}, found {found}")))
    }

    pub fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    pub fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    pub fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn finish(&self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }

    pub fn decoration(&mut self) -> PResult<Decoration> {
        self.expect_sym("[")?;
        let col = self.col();
        let w = self.ident()?;
        let d = Decoration::from_keyword(&w)
            .ok_or_else(|| ParseError::syntax(self.line, col, format!("unknown decoration `{w}`")))?;
        self.expect_sym("]")?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_symbols_longest_first() {
        let t = lex_line("a :=b |- c == d", 1).unwrap();
        let syms: Vec<_> = t.iter().filter_map(|t| match t.tok {
            Tok::Sym(s) => Some(s),
            _ => None,
        }).collect();
        assert_eq!(syms, vec![":=", "|-", "=="]);
        assert_eq!(t[1].col, 3);
    }

    #[test]
    fn bad_character_reports_column() {
        let e = lex_line("f o $", 4).unwrap_err();
        assert_eq!((e.line, e.col), (4, 5));
    }

    #[test]
    fn lines_skip_comments_and_measure_indent() {
        let v: Vec<_> = lines("a\n  # only a comment\n    b # trailing\n").collect();
        assert_eq!(v.len(), 2);
        assert_eq!((v[1].number, v[1].indent), (3, 4));
    }
}
