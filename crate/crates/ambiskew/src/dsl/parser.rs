//! Recursive-descent parser producing the syntax tree.

use super::ast::{Arg, BinOp, Call, Document, Expr, ExprKind, Stmt, StmtKind, Value};
use super::lexer::{tokenize, Tok};
use super::{DslError, ErrorKind, Span};

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    /// Inside brackets newlines are insignificant.
    depth: usize,
}

type PResult<T> = Result<T, DslError>;

pub fn parse_document(src: &str) -> PResult<Document> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let mut stmts = Vec::new();
    loop {
        while p.peek_raw() == &Tok::Newline {
            p.pos += 1;
        }
        if p.peek_raw() == &Tok::Eof {
            break;
        }
        stmts.push(p.statement()?);
        match p.peek_raw() {
            Tok::Newline | Tok::Eof => {}
            t => return Err(p.error_here(format!("expected end of line, found {}", t.describe()))),
        }
    }
    Ok(Document { stmts })
}

/// Parses a single expression (used by the evaluator front end).
pub fn parse_expr(src: &str) -> PResult<Expr> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, depth: 1 };
    let e = p.expr()?;
    match p.peek().clone() {
        Tok::Eof => Ok(e),
        t => Err(p.error_here(format!("unexpected {} after expression", t.describe()))),
    }
}

impl Parser {
    fn skip_newlines(&mut self) {
        if self.depth > 0 {
            while self.toks[self.pos].0 == Tok::Newline {
                self.pos += 1;
            }
        }
    }

    fn peek_raw(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek(&mut self) -> &Tok {
        self.skip_newlines();
        &self.toks[self.pos].0
    }

    fn span(&mut self) -> Span {
        self.skip_newlines();
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, Span) {
        self.skip_newlines();
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&mut self, msg: String) -> DslError {
        let span = self.span();
        DslError::new(ErrorKind::Syntax, span, msg)
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        let (t, span) = self.next();
        if t == tok {
            Ok(span)
        } else {
            Err(DslError::new(ErrorKind::Syntax, span, format!("expected {}, found {}", tok.describe(), t.describe())))
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.next() {
            (Tok::Ident(s), span) => Ok((s, span)),
            (t, span) => {
                Err(DslError::new(ErrorKind::Syntax, span, format!("expected identifier, found {}", t.describe())))
            }
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match self.next() {
            (Tok::Ident(s), _) if s == kw => Ok(()),
            (t, span) => {
                Err(DslError::new(ErrorKind::Syntax, span, format!("expected '{kw}', found {}", t.describe())))
            }
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let (head, span) = self.ident()?;
        let kind = match head.as_str() {
            "scalars" => {
                let args = if self.peek() == &Tok::LParen { self.args()? } else { Vec::new() };
                StmtKind::Scalars(args)
            }
            "base" | "ring" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                let def = self.call()?;
                if head == "base" {
                    StmtKind::Base { name, def }
                } else {
                    StmtKind::Ring { name, def }
                }
            }
            "auto" => {
                let (name, _) = self.ident()?;
                self.keyword("on")?;
                let (on, _) = self.ident()?;
                self.expect(Tok::LBrace)?;
                self.depth += 1;
                let mut maps = Vec::new();
                while self.peek() != &Tok::RBrace {
                    let (g, _) = self.ident()?;
                    self.expect(Tok::Arrow)?;
                    maps.push((g, self.expr()?));
                    if self.peek() != &Tok::Comma {
                        break;
                    }
                    self.next();
                }
                self.expect(Tok::RBrace)?;
                self.depth -= 1;
                StmtKind::Auto { name, on, maps }
            }
            "torus" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::LBrace)?;
                let rows = self.torus_rows()?;
                StmtKind::Torus { name, rows }
            }
            "check" => StmtKind::Check(self.call()?),
            other => {
                return Err(DslError::new(
                    ErrorKind::Syntax,
                    span,
                    format!("unknown statement '{other}' (expected scalars, base, auto, ring, torus or check)"),
                ))
            }
        };
        Ok(Stmt { kind, span })
    }

    /// Rows of comma-separated entries, one per line, up to `}`.
    fn torus_rows(&mut self) -> PResult<Vec<Vec<Expr>>> {
        let mut rows = Vec::new();
        loop {
            while self.peek_raw() == &Tok::Newline {
                self.pos += 1;
            }
            if self.peek_raw() == &Tok::RBrace {
                self.pos += 1;
                return Ok(rows);
            }
            let mut row = vec![self.expr()?];
            while self.peek_raw() == &Tok::Comma {
                self.pos += 1;
                row.push(self.expr()?);
            }
            match self.peek_raw() {
                Tok::Newline | Tok::RBrace => {}
                t => {
                    let msg = format!("expected ',' or end of row, found {}", t.describe());
                    return Err(self.error_here(msg));
                }
            }
            rows.push(row);
        }
    }

    fn call(&mut self) -> PResult<Call> {
        let (name, span) = self.ident()?;
        let args = if self.peek_raw() == &Tok::LParen { self.args()? } else { Vec::new() };
        Ok(Call { name, args, span })
    }

    fn args(&mut self) -> PResult<Vec<Arg>> {
        self.expect(Tok::LParen)?;
        self.depth += 1;
        let mut args = Vec::new();
        while self.peek() != &Tok::RParen {
            let named =
                matches!(self.peek(), Tok::Ident(_)) && self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::Eq);
            if named {
                let (k, _) = self.ident()?;
                self.next();
                args.push(Arg::Named(k, self.value()?));
            } else {
                args.push(Arg::Pos(self.value()?));
            }
            if self.peek() != &Tok::Comma {
                break;
            }
            self.next();
        }
        self.expect(Tok::RParen)?;
        self.depth -= 1;
        Ok(args)
    }

    fn value(&mut self) -> PResult<Value> {
        if self.peek() == &Tok::LBracket {
            self.next();
            self.depth += 1;
            let mut items = Vec::new();
            while self.peek() != &Tok::RBracket {
                items.push(self.value()?);
                if self.peek() != &Tok::Comma {
                    break;
                }
                self.next();
            }
            self.expect(Tok::RBracket)?;
            self.depth -= 1;
            return Ok(Value::List(items));
        }
        Ok(Value::Expr(self.expr()?))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek_op() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            let span = lhs.span;
            lhs = Expr { kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)), span };
        }
    }

    /// Operators continue an expression across lines only inside brackets.
    fn peek_op(&mut self) -> Option<Tok> {
        let t = if self.depth > 0 { self.peek().clone() } else { self.peek_raw().clone() };
        Some(t)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek_op() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.unary()?;
            let span = lhs.span;
            lhs = Expr { kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.peek() == &Tok::Minus {
            let (_, span) = self.next();
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span });
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if self.peek_op() != Some(Tok::Caret) {
            return Ok(base);
        }
        self.next();
        let neg = if self.peek() == &Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let (t, span) = self.next();
        let Tok::Int(s) = t else {
            return Err(DslError::new(
                ErrorKind::Syntax,
                span,
                format!("expected integer exponent, found {}", t.describe()),
            ));
        };
        let k: i64 =
            s.parse().map_err(|_| DslError::new(ErrorKind::Syntax, span, format!("exponent {s} is too large")))?;
        let span0 = base.span;
        Ok(Expr { kind: ExprKind::Pow(Box::new(base), if neg { -k } else { k }), span: span0 })
    }

    fn atom(&mut self) -> PResult<Expr> {
        let (t, span) = self.next();
        match t {
            Tok::Int(s) => Ok(Expr { kind: ExprKind::Int(s), span }),
            Tok::Ident(s) => Ok(Expr { kind: ExprKind::Ident(s), span }),
            Tok::LParen => {
                self.depth += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                self.depth -= 1;
                Ok(e)
            }
            t => Err(DslError::new(ErrorKind::Syntax, span, format!("expected an expression, found {}", t.describe()))),
        }
    }
}
