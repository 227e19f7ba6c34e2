//! Syntax tree of a `.ask` document. Spans are carried for diagnostics and
//! ignored by equality, so `parse(print(doc)) == doc` compares structure.

use std::fmt;

use super::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(String),
    Ident(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Expr(Expr),
    List(Vec<Value>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Pos(Value),
    Named(String, Value),
}

/// `name(arg, key = value, ...)`; a bare `name` has no arguments.
#[derive(Clone, Debug)]
pub struct Call {
    pub name: String,
    pub args: Vec<Arg>,
    pub span: Span,
}

impl PartialEq for Call {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.args == other.args
    }
}

impl Eq for Call {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    /// `scalars(char = 0, cyclotomic = 4, params = [q])`
    Scalars(Vec<Arg>),
    /// `base A = laurent(t)`
    Base { name: String, def: Call },
    /// `auto alpha on A { t -> q*t }`
    Auto { name: String, on: String, maps: Vec<(String, Expr)> },
    /// `ring R = ambiskew(A, alpha, v = 1, rho = q)`
    Ring { name: String, def: Call },
    /// `torus Q { 1, q \n q^-1, 1 }`
    Torus { name: String, rows: Vec<Vec<Expr>> },
    /// `check simple(R)`
    Check(Call),
}

#[derive(Clone, Debug)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Stmt {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub stmts: Vec<Stmt>,
}

// ------------------------------------------------------------ printing

fn prec(e: &ExprKind) -> u8 {
    match e {
        ExprKind::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        ExprKind::Bin(..) => 2,
        ExprKind::Neg(_) => 3,
        ExprKind::Pow(..) => 4,
        ExprKind::Int(_) | ExprKind::Ident(_) => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(&e.kind) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(s) | ExprKind::Ident(s) => f.write_str(s),
            ExprKind::Neg(a) => {
                f.write_str("-")?;
                write_at(f, a, 3)
            }
            ExprKind::Bin(op, a, b) => {
                let (sym, p) = match op {
                    BinOp::Add => (" + ", 1),
                    BinOp::Sub => (" - ", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                };
                write_at(f, a, p)?;
                f.write_str(sym)?;
                // Left associative: an equal-precedence right operand needs parentheses.
                write_at(f, b, p + 1)
            }
            ExprKind::Pow(a, k) => {
                write_at(f, a, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Expr(e) => write!(f, "{e}"),
            Value::List(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Pos(v) => write!(f, "{v}"),
            Arg::Named(k, v) => write!(f, "{k} = {v}"),
        }
    }
}

fn args_text(args: &[Arg]) -> String {
    args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            f.write_str(&self.name)
        } else {
            write!(f, "{}({})", self.name, args_text(&self.args))
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Scalars(args) => write!(f, "scalars({})", args_text(args)),
            StmtKind::Base { name, def } => write!(f, "base {name} = {def}"),
            StmtKind::Auto { name, on, maps } => {
                let parts: Vec<String> = maps.iter().map(|(g, e)| format!("{g} -> {e}")).collect();
                if parts.is_empty() {
                    write!(f, "auto {name} on {on} {{}}")
                } else {
                    write!(f, "auto {name} on {on} {{ {} }}", parts.join(", "))
                }
            }
            StmtKind::Ring { name, def } => write!(f, "ring {name} = {def}"),
            StmtKind::Torus { name, rows } => {
                writeln!(f, "torus {name} {{")?;
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                    writeln!(f, "  {}", cells.join(", "))?;
                }
                f.write_str("}")
            }
            StmtKind::Check(call) => write!(f, "check {call}"),
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
