//! S-expression reader for SMT-LIB2 text.

use num_bigint::BigInt;

use super::FrontendError;
use crate::arith::Rational;

/// Line and column of a token, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Symbol(String),
    Keyword(String),
    Numeral(BigInt),
    Decimal(Rational),
    Str(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Atom(Atom, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            SExpr::Atom(Atom::Symbol(s), _) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Some(items),
            _ => None,
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c)
}

impl<'a> Reader<'a> {
    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn syntax(&self, pos: Pos, msg: impl Into<String>) -> FrontendError {
        FrontendError::Syntax { line: pos.line, col: pos.col, msg: msg.into() }
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Option<SExpr>, FrontendError> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(self.syntax(pos, "unclosed parenthesis")),
                        Some(')') => {
                            self.bump();
                            return Ok(Some(SExpr::List(items, pos)));
                        }
                        Some(_) => items.push(self.read()?.expect("input is not exhausted")),
                    }
                }
            }
            ')' => Err(self.syntax(pos, "unexpected `)`")),
            '|' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.syntax(pos, "unterminated quoted symbol")),
                        Some('|') => break,
                        Some('\\') => return Err(self.syntax(pos, "backslash in quoted symbol")),
                        Some(c) => s.push(c),
                    }
                }
                Ok(Some(SExpr::Atom(Atom::Symbol(s), pos)))
            }
            '"' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.syntax(pos, "unterminated string literal")),
                        Some('"') => {
                            if self.chars.peek() == Some(&'"') {
                                self.bump();
                                s.push('"');
                            } else {
                                break;
                            }
                        }
                        Some(c) => s.push(c),
                    }
                }
                Ok(Some(SExpr::Atom(Atom::Str(s), pos)))
            }
            '#' => Err(FrontendError::Unsupported(
                "binary/hexadecimal literals".to_string(),
            )),
            ':' => {
                self.bump();
                let word = self.take_word();
                Ok(Some(SExpr::Atom(Atom::Keyword(word), pos)))
            }
            c if c.is_ascii_digit() => {
                let word = self.take_word();
                if word.contains('.') {
                    let value = Rational::from_decimal_str(&word)
                        .ok_or_else(|| self.syntax(pos, format!("malformed decimal `{word}`")))?;
                    Ok(Some(SExpr::Atom(Atom::Decimal(value), pos)))
                } else if word.bytes().all(|b| b.is_ascii_digit()) {
                    if word.len() > 1 && word.starts_with('0') {
                        return Err(self.syntax(pos, format!("numeral with leading zero `{word}`")));
                    }
                    let n: BigInt = word.parse().expect("digits only");
                    Ok(Some(SExpr::Atom(Atom::Numeral(n), pos)))
                } else {
                    Err(self.syntax(pos, format!("malformed numeral `{word}`")))
                }
            }
            c if is_symbol_char(c) => {
                let word = self.take_word();
                Ok(Some(SExpr::Atom(Atom::Symbol(word), pos)))
            }
            c => Err(self.syntax(pos, format!("unexpected character `{c}`"))),
        }
    }

    fn take_word(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if is_symbol_char(c) {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }
}

/// Reads every top-level s-expression in `text`.
pub fn read_all(text: &str) -> Result<Vec<SExpr>, FrontendError> {
    let mut reader = Reader { chars: text.chars().peekable(), line: 1, col: 1 };
    let mut out = Vec::new();
    while let Some(e) = reader.read()? {
        out.push(e);
    }
    Ok(out)
}

/// Whether `name` can be printed without `|...|` quoting.
pub fn is_simple_symbol(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with(|c: char| c.is_ascii_digit())
        && name.chars().all(is_symbol_char)
}

/// Prints a symbol, quoting it when necessary.
pub fn quote_symbol(name: &str) -> String {
    if is_simple_symbol(name) {
        name.to_string()
    } else {
        format!("|{name}|")
    }
}
