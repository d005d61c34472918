//! Line-oriented parser for the model language.
//!
//! Grammar, one declaration or statement per line (`#` comments):
//!
//! ```text
//! class <Name> <b1> … <bn>
//! system <Name> reference
//! system <Name> <s1> … <sn>
//! dim <Name> = <DimExpr>
//! var <name> : <DimExpr> [= <number> <System>]
//! check <DimExpr> == <DimExpr>
//! eq <name> : <DimExpr> = <QExpr>
//! raweq <name> : <DimExpr> = <QExpr>
//! pigroups <target> given <v1> , <v2> , …
//! pigroups <target> auto
//! ```
//!
//! Every name referenced by a line must have been declared on an earlier
//! line; the file holds exactly one class and one reference system.

use std::sync::Arc;

use crate::dimension::DimClass;
use crate::error::{Error, Result};
use crate::lang::ast::{DimExpr, QExpr, Span};
use crate::lang::lexer::{lex_line, Tok, TokKind};
use crate::lang::{DimAlias, Model, Statement, VarDecl};
use crate::units::{UnitRegistry, UnitSystem};

struct Cursor<'a> {
    toks: &'a [Tok],
    pos: usize,
    line: u32,
    end_col: u32,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Tok], line: u32) -> Self {
        let end_col = toks.last().map_or(1, |t| t.span.col + 1);
        Cursor {
            toks,
            pos: 0,
            line,
            end_col,
        }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> Span {
        self.peek().map_or(
            Span {
                line: self.line,
                col: self.end_col,
            },
            |t| t.span,
        )
    }

    fn error(&self, expected: &str) -> Error {
        let found = self
            .peek()
            .map_or("end of line".to_string(), |t| t.kind.describe());
        let span = self.here();
        Error::Parse {
            line: span.line,
            col: span.col,
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Span)> {
        match self.peek() {
            Some(Tok {
                kind: TokKind::Ident(s),
                span,
            }) => {
                let out = (s.clone(), *span);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.error(what)),
        }
    }

    fn expect(&mut self, kind: &TokKind) -> Result<Span> {
        match self.peek() {
            Some(t) if t.kind == *kind => {
                self.pos += 1;
                Ok(t.span)
            }
            _ => Err(self.error(&kind.describe())),
        }
    }

    fn eat(&mut self, kind: &TokKind) -> bool {
        if self.peek().is_some_and(|t| t.kind == *kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.error("end of line"))
        }
    }

    /// A float literal, optionally preceded by a minus sign.
    fn expect_number(&mut self, what: &str) -> Result<(f64, Span)> {
        let negative = self.eat(&TokKind::Minus);
        match self.peek() {
            Some(Tok {
                kind: TokKind::Number(text),
                span,
            }) => {
                let value: f64 = text.parse().map_err(|_| Error::Parse {
                    line: span.line,
                    col: span.col,
                    message: format!("invalid number '{text}'"),
                })?;
                let out = (if negative { -value } else { value }, *span);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.error(what)),
        }
    }

    /// An integer literal, optionally preceded by a minus sign.
    fn expect_int(&mut self, what: &str) -> Result<(i64, Span)> {
        let negative = self.eat(&TokKind::Minus);
        match self.peek() {
            Some(Tok {
                kind: TokKind::Number(text),
                span,
            }) => {
                let value: i64 = text.parse().map_err(|_| Error::Parse {
                    line: span.line,
                    col: span.col,
                    message: format!("expected integer, found '{text}'"),
                })?;
                let out = (if negative { -value } else { value }, *span);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.error(what)),
        }
    }
}

// --- expression parsers -------------------------------------------------

fn parse_dim_expr(cur: &mut Cursor) -> Result<DimExpr> {
    let mut lhs = parse_dim_pow(cur)?;
    loop {
        if cur.eat(&TokKind::Star) {
            let rhs = parse_dim_pow(cur)?;
            lhs = DimExpr::Mul(Box::new(lhs), Box::new(rhs));
        } else if cur.eat(&TokKind::Slash) {
            let rhs = parse_dim_pow(cur)?;
            lhs = DimExpr::Div(Box::new(lhs), Box::new(rhs));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_dim_pow(cur: &mut Cursor) -> Result<DimExpr> {
    let mut base = parse_dim_atom(cur)?;
    while cur.eat(&TokKind::Caret) {
        let (k, _) = cur.expect_int("integer exponent")?;
        base = DimExpr::Pow(Box::new(base), k);
    }
    Ok(base)
}

fn parse_dim_atom(cur: &mut Cursor) -> Result<DimExpr> {
    match cur.peek() {
        Some(Tok {
            kind: TokKind::Ident(name),
            span,
        }) => {
            let e = DimExpr::Name(name.clone(), *span);
            cur.pos += 1;
            Ok(e)
        }
        Some(Tok {
            kind: TokKind::Number(text),
            span,
        }) if text == "1" => {
            let e = DimExpr::One(*span);
            cur.pos += 1;
            Ok(e)
        }
        Some(Tok {
            kind: TokKind::LParen,
            ..
        }) => {
            cur.pos += 1;
            let inner = parse_dim_expr(cur)?;
            cur.expect(&TokKind::RParen)?;
            Ok(inner)
        }
        _ => Err(cur.error("dimension expression (base symbol, alias, '1' or '(')")),
    }
}

fn parse_q_expr(cur: &mut Cursor) -> Result<QExpr> {
    let mut lhs = parse_q_term(cur)?;
    loop {
        if cur.eat(&TokKind::Plus) {
            let rhs = parse_q_term(cur)?;
            lhs = QExpr::Add(Box::new(lhs), Box::new(rhs));
        } else if cur.eat(&TokKind::Minus) {
            let rhs = parse_q_term(cur)?;
            lhs = QExpr::Sub(Box::new(lhs), Box::new(rhs));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_q_term(cur: &mut Cursor) -> Result<QExpr> {
    let mut lhs = parse_q_pow(cur)?;
    loop {
        if cur.eat(&TokKind::Star) {
            let rhs = parse_q_pow(cur)?;
            lhs = QExpr::Mul(Box::new(lhs), Box::new(rhs));
        } else if cur.eat(&TokKind::Slash) {
            let rhs = parse_q_pow(cur)?;
            lhs = QExpr::Div(Box::new(lhs), Box::new(rhs));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_q_pow(cur: &mut Cursor) -> Result<QExpr> {
    let mut base = parse_q_atom(cur)?;
    while cur.eat(&TokKind::Caret) {
        let (k, _) = cur.expect_int("integer exponent")?;
        base = QExpr::Pow(Box::new(base), k);
    }
    Ok(base)
}

fn parse_q_atom(cur: &mut Cursor) -> Result<QExpr> {
    match cur.peek() {
        Some(Tok {
            kind: TokKind::Ident(name),
            span,
        }) if name == "root" => {
            let span = *span;
            cur.pos += 1;
            cur.expect(&TokKind::LParen)?;
            let inner = parse_q_expr(cur)?;
            cur.expect(&TokKind::Comma)?;
            let (k, kspan) = cur.expect_int("positive root degree")?;
            if k < 1 {
                return Err(Error::Parse {
                    line: kspan.line,
                    col: kspan.col,
                    message: format!("root degree must be positive, got {k}"),
                });
            }
            cur.expect(&TokKind::RParen)?;
            Ok(QExpr::Root(Box::new(inner), k as u32, span))
        }
        Some(Tok {
            kind: TokKind::Ident(name),
            span,
        }) => {
            let e = QExpr::Var(name.clone(), *span);
            cur.pos += 1;
            Ok(e)
        }
        Some(Tok {
            kind: TokKind::Number(text),
            span,
        }) => {
            let value: f64 = text.parse().map_err(|_| Error::Parse {
                line: span.line,
                col: span.col,
                message: format!("invalid number '{text}'"),
            })?;
            let e = QExpr::Num(value, *span);
            cur.pos += 1;
            Ok(e)
        }
        Some(Tok {
            kind: TokKind::LParen,
            ..
        }) => {
            cur.pos += 1;
            let inner = parse_q_expr(cur)?;
            cur.expect(&TokKind::RParen)?;
            Ok(inner)
        }
        _ => Err(cur.error("expression (variable, number, 'root(…)' or '(')")),
    }
}

/// Parses a standalone quantity expression.
pub fn parse_q_expr_str(src: &str) -> Result<QExpr> {
    let toks = lex_line(src, 1)?;
    let mut cur = Cursor::new(&toks, 1);
    let e = parse_q_expr(&mut cur)?;
    cur.expect_end()?;
    Ok(e)
}

// --- file parser ---------------------------------------------------------

struct FileState {
    class: Option<Arc<DimClass>>,
    class_span: Span,
    reference: Option<String>,
    systems: Vec<(String, Option<Vec<f64>>, Span)>,
    dim_aliases: Vec<DimAlias>,
    vars: Vec<VarDecl>,
    eq_names: Vec<String>,
    statements: Vec<Statement>,
}

impl FileState {
    fn class_or_err(&self, span: Span) -> Result<&Arc<DimClass>> {
        self.class.as_ref().ok_or(Error::Parse {
            line: span.line,
            col: span.col,
            message: "a 'class' declaration must come first".to_string(),
        })
    }

    fn system_declared(&self, name: &str) -> bool {
        self.systems.iter().any(|(n, _, _)| n == name)
    }

    fn var(&self, name: &str) -> Option<&VarDecl> {
        self.vars.iter().find(|v| v.name == name)
    }

    /// Resolves a dimension expression against the bases and the aliases
    /// declared so far.
    fn resolve_dim(&self, expr: &DimExpr) -> Result<crate::dimension::Dim> {
        let class = self.class_or_err(expr.span())?;
        match expr {
            DimExpr::One(_) => Ok(class.dimless()),
            DimExpr::Name(name, span) => {
                if class.bases().iter().any(|b| b == name) {
                    return class.base_dim(name);
                }
                if let Some(alias) = self.dim_aliases.iter().find(|a| a.name == *name) {
                    return Ok(alias.dim.clone());
                }
                Err(Error::UndeclaredName {
                    line: span.line,
                    col: span.col,
                    name: name.clone(),
                })
            }
            DimExpr::Mul(l, r) => self.resolve_dim(l)?.times(&self.resolve_dim(r)?),
            DimExpr::Div(l, r) => self.resolve_dim(l)?.over(&self.resolve_dim(r)?),
            DimExpr::Pow(b, k) => self.resolve_dim(b)?.pow(*k),
        }
    }

    /// Checks that every variable in a quantity expression is declared.
    fn check_q_names(&self, expr: &QExpr) -> Result<()> {
        match expr {
            QExpr::Var(name, span) => {
                if self.var(name).is_none() {
                    return Err(Error::UndeclaredName {
                        line: span.line,
                        col: span.col,
                        name: name.clone(),
                    });
                }
                Ok(())
            }
            QExpr::Num(_, _) => Ok(()),
            QExpr::Add(l, r) | QExpr::Sub(l, r) | QExpr::Mul(l, r) | QExpr::Div(l, r) => {
                self.check_q_names(l)?;
                self.check_q_names(r)
            }
            QExpr::Pow(b, _) => self.check_q_names(b),
            QExpr::Root(b, _, _) => self.check_q_names(b),
        }
    }
}

/// Parses a complete model file.
pub fn parse(text: &str) -> Result<Model> {
    let mut state = FileState {
        class: None,
        class_span: Span { line: 1, col: 1 },
        reference: None,
        systems: Vec::new(),
        dim_aliases: Vec::new(),
        vars: Vec::new(),
        eq_names: Vec::new(),
        statements: Vec::new(),
    };

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = (idx + 1) as u32;
        let toks = lex_line(raw_line, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, line_no);
        let (keyword, kw_span) = cur.expect_ident("statement keyword")?;
        match keyword.as_str() {
            "class" => parse_class(&mut cur, &mut state, kw_span)?,
            "system" => parse_system(&mut cur, &mut state, kw_span)?,
            "dim" => parse_dim_alias(&mut cur, &mut state, kw_span)?,
            "var" => parse_var(&mut cur, &mut state, kw_span)?,
            "check" => parse_check(&mut cur, &mut state, kw_span)?,
            "eq" => parse_eq(&mut cur, &mut state, kw_span, false)?,
            "raweq" => parse_eq(&mut cur, &mut state, kw_span, true)?,
            "pigroups" => parse_pigroups(&mut cur, &mut state, kw_span)?,
            other => {
                return Err(Error::Parse {
                    line: kw_span.line,
                    col: kw_span.col,
                    message: format!(
                        "expected one of class/system/dim/var/check/eq/raweq/pigroups, \
                         found '{other}'"
                    ),
                });
            }
        }
    }

    let class = state
        .class
        .clone()
        .ok_or(Error::Parse {
            line: 1,
            col: 1,
            message: "file declares no 'class'".to_string(),
        })?;
    let reference = state.reference.clone().ok_or(Error::Parse {
        line: state.class_span.line,
        col: state.class_span.col,
        message: "file declares no reference system".to_string(),
    })?;

    let mut registry = UnitRegistry::new(Arc::clone(&class), reference.clone());
    for (name, sizes, span) in &state.systems {
        if let Some(sizes) = sizes {
            let sys = UnitSystem::new(name.clone(), sizes.clone()).map_err(|e| Error::Parse {
                line: span.line,
                col: span.col,
                message: e.to_string(),
            })?;
            registry = registry.register(sys).map_err(|e| match e {
                Error::DuplicateSystem { name } => Error::DuplicateName {
                    line: span.line,
                    col: span.col,
                    name,
                },
                other => other,
            })?;
        }
    }

    Ok(Model {
        class,
        registry,
        dim_aliases: state.dim_aliases,
        vars: state.vars,
        statements: state.statements,
    })
}

fn parse_class(cur: &mut Cursor, state: &mut FileState, kw_span: Span) -> Result<()> {
    if state.class.is_some() {
        return Err(Error::Parse {
            line: kw_span.line,
            col: kw_span.col,
            message: "a file may declare only one class".to_string(),
        });
    }
    let (name, _) = cur.expect_ident("class name")?;
    let mut bases = Vec::new();
    let mut base_spans = Vec::new();
    while cur.peek().is_some() {
        let (b, s) = cur.expect_ident("base dimension symbol")?;
        bases.push(b);
        base_spans.push(s);
    }
    if bases.is_empty() {
        return Err(cur.error("at least one base dimension symbol"));
    }
    for (i, b) in bases.iter().enumerate() {
        if bases[..i].contains(b) {
            return Err(Error::DuplicateName {
                line: base_spans[i].line,
                col: base_spans[i].col,
                name: b.clone(),
            });
        }
    }
    let refs: Vec<&str> = bases.iter().map(String::as_str).collect();
    state.class = Some(DimClass::new(name, &refs)?);
    state.class_span = kw_span;
    Ok(())
}

fn parse_system(cur: &mut Cursor, state: &mut FileState, kw_span: Span) -> Result<()> {
    let class = state.class_or_err(kw_span)?.clone();
    let (name, name_span) = cur.expect_ident("system name")?;
    if state.system_declared(&name) {
        return Err(Error::DuplicateName {
            line: name_span.line,
            col: name_span.col,
            name,
        });
    }
    if let Some(Tok {
        kind: TokKind::Ident(word),
        span,
    }) = cur.peek()
    {
        if word == "reference" {
            if state.reference.is_some() {
                return Err(Error::Parse {
                    line: span.line,
                    col: span.col,
                    message: "a file may declare only one reference system".to_string(),
                });
            }
            cur.pos += 1;
            cur.expect_end()?;
            state.reference = Some(name.clone());
            state.systems.push((name, None, kw_span));
            return Ok(());
        }
    }
    let mut sizes = Vec::new();
    while cur.peek().is_some() {
        let (v, span) = cur.expect_number("base-unit size")?;
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Parse {
                line: span.line,
                col: span.col,
                message: format!("base-unit sizes must be positive, got {v}"),
            });
        }
        sizes.push(v);
    }
    if sizes.len() != class.len() {
        return Err(Error::Parse {
            line: kw_span.line,
            col: kw_span.col,
            message: format!(
                "system '{}' declares {} sizes but class '{}' has {} bases",
                name,
                sizes.len(),
                class.name(),
                class.len()
            ),
        });
    }
    state.systems.push((name, Some(sizes), kw_span));
    Ok(())
}

fn parse_dim_alias(cur: &mut Cursor, state: &mut FileState, kw_span: Span) -> Result<()> {
    state.class_or_err(kw_span)?;
    let (name, name_span) = cur.expect_ident("dimension alias name")?;
    let class = state.class.as_ref().unwrap();
    let taken = class.bases().iter().any(|b| *b == name)
        || state.dim_aliases.iter().any(|a| a.name == name);
    if taken {
        return Err(Error::DuplicateName {
            line: name_span.line,
            col: name_span.col,
            name,
        });
    }
    cur.expect(&TokKind::Assign)?;
    let expr = parse_dim_expr(cur)?;
    cur.expect_end()?;
    let dim = state.resolve_dim(&expr)?;
    state.dim_aliases.push(DimAlias { name, expr, dim });
    Ok(())
}

fn parse_var(cur: &mut Cursor, state: &mut FileState, kw_span: Span) -> Result<()> {
    state.class_or_err(kw_span)?;
    let (name, name_span) = cur.expect_ident("variable name")?;
    if state.var(&name).is_some() {
        return Err(Error::DuplicateName {
            line: name_span.line,
            col: name_span.col,
            name,
        });
    }
    cur.expect(&TokKind::Colon)?;
    let dim_expr = parse_dim_expr(cur)?;
    let value = if cur.eat(&TokKind::Assign) {
        let (v, vspan) = cur.expect_number("value")?;
        if !v.is_finite() {
            return Err(Error::Parse {
                line: vspan.line,
                col: vspan.col,
                message: format!("variable values must be finite, got {v}"),
            });
        }
        let (sys, sys_span) = cur.expect_ident("unit system name")?;
        if !state.system_declared(&sys) {
            return Err(Error::UndeclaredName {
                line: sys_span.line,
                col: sys_span.col,
                name: sys,
            });
        }
        Some((v, sys))
    } else {
        None
    };
    cur.expect_end()?;
    let dim = state.resolve_dim(&dim_expr)?;
    state.vars.push(VarDecl {
        name,
        dim_expr,
        dim,
        value,
    });
    Ok(())
}

fn parse_check(cur: &mut Cursor, state: &mut FileState, kw_span: Span) -> Result<()> {
    state.class_or_err(kw_span)?;
    let lhs_expr = parse_dim_expr(cur)?;
    cur.expect(&TokKind::EqEq)?;
    let rhs_expr = parse_dim_expr(cur)?;
    cur.expect_end()?;
    let lhs = state.resolve_dim(&lhs_expr)?;
    let rhs = state.resolve_dim(&rhs_expr)?;
    state.statements.push(Statement::Check {
        lhs_expr,
        rhs_expr,
        lhs,
        rhs,
        span: kw_span,
    });
    Ok(())
}

fn parse_eq(cur: &mut Cursor, state: &mut FileState, kw_span: Span, raw: bool) -> Result<()> {
    state.class_or_err(kw_span)?;
    let (name, name_span) = cur.expect_ident("equation name")?;
    if state.eq_names.contains(&name) {
        return Err(Error::DuplicateName {
            line: name_span.line,
            col: name_span.col,
            name,
        });
    }
    cur.expect(&TokKind::Colon)?;
    let declared_expr = parse_dim_expr(cur)?;
    cur.expect(&TokKind::Assign)?;
    let expr = parse_q_expr(cur)?;
    cur.expect_end()?;
    let declared = state.resolve_dim(&declared_expr)?;
    state.check_q_names(&expr)?;
    state.eq_names.push(name.clone());
    let stmt = if raw {
        Statement::RawEq {
            name,
            declared_expr,
            declared,
            expr,
            span: kw_span,
        }
    } else {
        Statement::TypedEq {
            name,
            declared_expr,
            declared,
            expr,
            span: kw_span,
        }
    };
    state.statements.push(stmt);
    Ok(())
}

fn parse_pigroups(cur: &mut Cursor, state: &mut FileState, kw_span: Span) -> Result<()> {
    state.class_or_err(kw_span)?;
    let (target, target_span) = cur.expect_ident("target variable")?;
    if state.var(&target).is_none() {
        return Err(Error::UndeclaredName {
            line: target_span.line,
            col: target_span.col,
            name: target,
        });
    }
    let (mode, mode_span) = cur.expect_ident("'given' or 'auto'")?;
    let given = match mode.as_str() {
        "auto" => {
            cur.expect_end()?;
            None
        }
        "given" => {
            let mut names = Vec::new();
            loop {
                let (n, nspan) = cur.expect_ident("variable name")?;
                if state.var(&n).is_none() {
                    return Err(Error::UndeclaredName {
                        line: nspan.line,
                        col: nspan.col,
                        name: n,
                    });
                }
                names.push(n);
                if !cur.eat(&TokKind::Comma) {
                    break;
                }
            }
            cur.expect_end()?;
            Some(names)
        }
        other => {
            return Err(Error::Parse {
                line: mode_span.line,
                col: mode_span.col,
                message: format!("expected 'given' or 'auto', found '{other}'"),
            });
        }
    };
    state.statements.push(Statement::PiQuery {
        target,
        given,
        span: kw_span,
    });
    Ok(())
}
