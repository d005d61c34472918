//! Expression trees for the model language.

/// Source position, 1-based.
///
/// Spans never take part in structural comparison: two models that differ
/// only in layout compare equal.
#[derive(Debug, Clone, Copy)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

/// Dimension expression: base symbols, alias names, the literal `1`,
/// products, quotients and integer powers.
#[derive(Debug, Clone, PartialEq)]
pub enum DimExpr {
    One(Span),
    Name(String, Span),
    Mul(Box<DimExpr>, Box<DimExpr>),
    Div(Box<DimExpr>, Box<DimExpr>),
    Pow(Box<DimExpr>, i64),
}

impl DimExpr {
    pub fn span(&self) -> Span {
        match self {
            DimExpr::One(s) | DimExpr::Name(_, s) => *s,
            DimExpr::Mul(l, _) | DimExpr::Div(l, _) | DimExpr::Pow(l, _) => l.span(),
        }
    }

    /// Canonical rendering with minimal parentheses.
    pub fn render(&self) -> String {
        self.render_prec(0)
    }

    fn prec(&self) -> u8 {
        match self {
            DimExpr::One(_) | DimExpr::Name(_, _) => 3,
            DimExpr::Pow(_, _) => 2,
            DimExpr::Mul(_, _) | DimExpr::Div(_, _) => 1,
        }
    }

    fn render_prec(&self, min: u8) -> String {
        let s = match self {
            DimExpr::One(_) => "1".to_string(),
            DimExpr::Name(n, _) => n.clone(),
            DimExpr::Mul(l, r) => format!("{} * {}", l.render_prec(1), r.render_prec(2)),
            DimExpr::Div(l, r) => format!("{} / {}", l.render_prec(1), r.render_prec(2)),
            DimExpr::Pow(b, k) => format!("{}^{}", b.render_prec(3), k),
        };
        if self.prec() < min {
            format!("({s})")
        } else {
            s
        }
    }
}

/// Quantity expression: variables, numeric literals, arithmetic, integer
/// powers and integral roots.
#[derive(Debug, Clone, PartialEq)]
pub enum QExpr {
    Var(String, Span),
    Num(f64, Span),
    Add(Box<QExpr>, Box<QExpr>),
    Sub(Box<QExpr>, Box<QExpr>),
    Mul(Box<QExpr>, Box<QExpr>),
    Div(Box<QExpr>, Box<QExpr>),
    Pow(Box<QExpr>, i64),
    Root(Box<QExpr>, u32, Span),
}

impl QExpr {
    pub fn span(&self) -> Span {
        match self {
            QExpr::Var(_, s) | QExpr::Num(_, s) | QExpr::Root(_, _, s) => *s,
            QExpr::Add(l, _) | QExpr::Sub(l, _) | QExpr::Mul(l, _) | QExpr::Div(l, _) => l.span(),
            QExpr::Pow(b, _) => b.span(),
        }
    }

    /// Variable names referenced by the expression, in first-use order.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            QExpr::Var(n, _) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            QExpr::Num(_, _) => {}
            QExpr::Add(l, r) | QExpr::Sub(l, r) | QExpr::Mul(l, r) | QExpr::Div(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            QExpr::Pow(b, _) => b.collect_vars(out),
            QExpr::Root(b, _, _) => b.collect_vars(out),
        }
    }

    pub fn render(&self) -> String {
        self.render_prec(0)
    }

    fn prec(&self) -> u8 {
        match self {
            QExpr::Var(_, _) | QExpr::Num(_, _) | QExpr::Root(_, _, _) => 4,
            QExpr::Pow(_, _) => 3,
            QExpr::Mul(_, _) | QExpr::Div(_, _) => 2,
            QExpr::Add(_, _) | QExpr::Sub(_, _) => 1,
        }
    }

    fn render_prec(&self, min: u8) -> String {
        let s = match self {
            QExpr::Var(n, _) => n.clone(),
            QExpr::Num(x, _) => format!("{x}"),
            QExpr::Add(l, r) => format!("{} + {}", l.render_prec(1), r.render_prec(2)),
            QExpr::Sub(l, r) => format!("{} - {}", l.render_prec(1), r.render_prec(2)),
            QExpr::Mul(l, r) => format!("{} * {}", l.render_prec(2), r.render_prec(3)),
            QExpr::Div(l, r) => format!("{} / {}", l.render_prec(2), r.render_prec(3)),
            QExpr::Pow(b, k) => format!("{}^{}", b.render_prec(4), k),
            QExpr::Root(b, k, _) => format!("root({}, {})", b.render_prec(0), k),
        };
        if self.prec() < min {
            format!("({s})")
        } else {
            s
        }
    }
}
