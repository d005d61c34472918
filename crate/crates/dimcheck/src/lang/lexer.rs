//! Line lexer for the model language. `#` starts a comment running to the
//! end of the line.

use crate::error::{Error, Result};
use crate::lang::ast::Span;

#[derive(Debug, Clone, PartialEq)]
pub enum TokKind {
    Ident(String),
    Number(String),
    Colon,
    Assign,
    EqEq,
    Star,
    Slash,
    Caret,
    Plus,
    Minus,
    LParen,
    RParen,
    Comma,
}

impl TokKind {
    pub fn describe(&self) -> String {
        match self {
            TokKind::Ident(s) => format!("identifier '{s}'"),
            TokKind::Number(s) => format!("number '{s}'"),
            TokKind::Colon => "':'".to_string(),
            TokKind::Assign => "'='".to_string(),
            TokKind::EqEq => "'=='".to_string(),
            TokKind::Star => "'*'".to_string(),
            TokKind::Slash => "'/'".to_string(),
            TokKind::Caret => "'^'".to_string(),
            TokKind::Plus => "'+'".to_string(),
            TokKind::Minus => "'-'".to_string(),
            TokKind::LParen => "'('".to_string(),
            TokKind::RParen => "')'".to_string(),
            TokKind::Comma => "','".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tok {
    pub kind: TokKind,
    pub span: Span,
}

pub fn lex_line(line: &str, line_no: u32) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = (i + 1) as u32;
        let span = Span { line: line_no, col };
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                toks.push(Tok {
                    kind: TokKind::Ident(ident),
                    span,
                });
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                toks.push(Tok {
                    kind: TokKind::Number(text),
                    span,
                });
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    toks.push(Tok {
                        kind: TokKind::EqEq,
                        span,
                    });
                    i += 2;
                } else {
                    toks.push(Tok {
                        kind: TokKind::Assign,
                        span,
                    });
                    i += 1;
                }
            }
            ':' | '*' | '/' | '^' | '+' | '-' | '(' | ')' | ',' => {
                let kind = match c {
                    ':' => TokKind::Colon,
                    '*' => TokKind::Star,
                    '/' => TokKind::Slash,
                    '^' => TokKind::Caret,
                    '+' => TokKind::Plus,
                    '-' => TokKind::Minus,
                    '(' => TokKind::LParen,
                    ')' => TokKind::RParen,
                    _ => TokKind::Comma,
                };
                toks.push(Tok { kind, span });
                i += 1;
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    col,
                    message: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Ok(toks)
}
