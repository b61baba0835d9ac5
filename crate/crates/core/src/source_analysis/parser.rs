//! Recursive-descent parser for the supported C subset. Out-of-subset
//! syntax fails loudly with `ParseError::Unsupported` naming the construct.

use super::ast::*;
use super::lexer::{lex, Punct, Token, TokenKind};
use super::ParseError;

pub fn parse_source(text: &str) -> Result<TranslationUnit, ParseError> {
    let tokens = lex(text)?;
    Parser::new(tokens).translation_unit(text)
}

const TYPE_KEYWORDS: [&str; 10] = [
    "const", "unsigned", "signed", "int", "long", "short", "char", "float", "double", "void",
];

fn is_type_start(word: &str) -> bool {
    TYPE_KEYWORDS.contains(&word)
}

fn unsupported_construct(word: &str) -> Option<&'static str> {
    Some(match word {
        "for" => "for loop",
        "do" => "do-while loop",
        "switch" => "switch statement",
        "case" | "default" => "switch label",
        "break" => "break statement",
        "continue" => "continue statement",
        "goto" => "goto statement",
        "struct" => "struct declaration",
        "union" => "union declaration",
        "enum" => "enum declaration",
        "typedef" => "typedef",
        "sizeof" => "sizeof expression",
        "static" => "static storage class",
        "extern" => "extern storage class",
        "volatile" => "volatile qualifier",
        "register" => "register storage class",
        "class" => "class declaration",
        "template" => "template",
        "namespace" => "namespace",
        "using" => "using declaration",
        "new" => "new expression",
        "delete" => "delete expression",
        _ => return None,
    })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    pending: Vec<String>,
    last_span: Span,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        Parser {
            tokens,
            pos: 0,
            pending: Vec::new(),
            last_span: Span::default(),
        }
    }

    /// Next significant token, moving comments into the pending buffer.
    fn peek(&mut self) -> Token {
        loop {
            let tok = &self.tokens[self.pos];
            if let TokenKind::Comment { text, .. } = &tok.kind {
                self.pending.push(text.clone());
                self.pos += 1;
            } else {
                return tok.clone();
            }
        }
    }

    fn bump(&mut self) -> Token {
        let tok = self.peek();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        self.last_span = tok.span;
        tok
    }

    fn take_pending(&mut self) -> Vec<String> {
        std::mem::take(&mut self.pending)
    }

    /// Consumes comments that sit entirely on `end_line` right after a node.
    fn take_trailing(&mut self, end_line: u32) -> Option<String> {
        let mut out: Option<String> = None;
        while let TokenKind::Comment { text, .. } = &self.tokens[self.pos].kind {
            let span = self.tokens[self.pos].span;
            if span.line == end_line && span.end_line == end_line {
                out = Some(match out {
                    None => text.clone(),
                    Some(prev) => format!("{prev} {text}"),
                });
                self.pos += 1;
            } else {
                break;
            }
        }
        out
    }

    fn unexpected(&mut self, expected: &str) -> ParseError {
        let tok = self.peek();
        ParseError::Syntax {
            line: tok.span.line,
            col: tok.span.col,
            message: format!("unexpected {}, expected {}", tok.describe(), expected),
        }
    }

    fn unsupported(&self, span: Span, construct: impl Into<String>) -> ParseError {
        ParseError::Unsupported {
            line: span.line,
            col: span.col,
            construct: construct.into(),
        }
    }

    fn expect_punct(&mut self, punct: Punct) -> Result<Token, ParseError> {
        let tok = self.peek();
        if tok.kind == TokenKind::Punct(punct) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&format!("`{}`", punct.symbol())))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        let tok = self.peek();
        match tok.kind {
            TokenKind::Ident(name) => {
                self.bump();
                Ok((name, tok.span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn at_punct(&mut self, punct: Punct) -> bool {
        self.peek().kind == TokenKind::Punct(punct)
    }

    fn translation_unit(&mut self, text: &str) -> Result<TranslationUnit, ParseError> {
        let mut includes = Vec::new();
        let mut globals = Vec::new();
        let mut functions = Vec::new();
        loop {
            let tok = self.peek();
            if tok.kind == TokenKind::Eof {
                break;
            }
            let leading = self.take_pending();
            match tok.kind {
                TokenKind::Include { path, system } => {
                    self.bump();
                    let trailing = self.take_trailing(tok.span.end_line);
                    includes.push(IncludeDirective {
                        path,
                        system,
                        trivia: Trivia { leading, trailing },
                        span: tok.span,
                    });
                }
                TokenKind::Ident(word) if is_type_start(&word) => {
                    self.item(leading, &mut globals, &mut functions)?;
                }
                TokenKind::Ident(word) => {
                    if let Some(construct) = unsupported_construct(&word) {
                        return Err(self.unsupported(tok.span, construct));
                    }
                    return Err(
                        self.unexpected("`#include`, a declaration or a function definition")
                    );
                }
                _ => {
                    return Err(
                        self.unexpected("`#include`, a declaration or a function definition")
                    );
                }
            }
        }
        let trailing_comments = self.take_pending();
        Ok(TranslationUnit::new(
            includes,
            globals,
            functions,
            trailing_comments,
            text,
        ))
    }

    fn item(
        &mut self,
        leading: Vec<String>,
        globals: &mut Vec<GlobalDecl>,
        functions: &mut Vec<FunctionDef>,
    ) -> Result<(), ParseError> {
        let start = self.peek().span;
        let ty = self.parse_type()?;
        let (name, name_span) = self.expect_ident("an identifier")?;
        if self.at_punct(Punct::LParen) {
            let func = self.function_def(ty, name, leading, start)?;
            functions.push(func);
        } else {
            let decl = self.decl_tail(ty, name)?;
            if let Some(init) = &decl.init {
                if let Some(call_span) = first_call_span(init) {
                    return Err(
                        self.unsupported(call_span, "function call in a global initializer")
                    );
                }
            }
            let span = span_between(start, self.last_span);
            let trailing = self.take_trailing(span.end_line);
            globals.push(GlobalDecl {
                decl,
                trivia: Trivia { leading, trailing },
                span,
            });
        }
        let _ = name_span;
        Ok(())
    }

    /// Parses `= expr? ;` after the declared name.
    fn decl_tail(&mut self, ty: String, name: String) -> Result<VarDecl, ParseError> {
        if self.at_punct(Punct::LBracket) {
            let span = self.peek().span;
            return Err(self.unsupported(span, "array declarator"));
        }
        let init = if self.at_punct(Punct::Assign) {
            self.bump();
            Some(self.expr()?)
        } else {
            None
        };
        self.expect_punct(Punct::Semi)?;
        Ok(VarDecl { ty, name, init })
    }

    fn parse_type(&mut self) -> Result<String, ParseError> {
        let mut parts: Vec<String> = Vec::new();
        let tok = self.peek();
        if let TokenKind::Ident(word) = &tok.kind {
            if word == "const" {
                parts.push(self.ident_text());
            }
        }
        let tok = self.peek();
        let TokenKind::Ident(base) = &tok.kind else {
            return Err(self.unexpected("a type name"));
        };
        let base = base.clone();
        match base.as_str() {
            "unsigned" | "signed" => {
                parts.push(self.ident_text());
                if let TokenKind::Ident(next) = self.peek().kind {
                    if matches!(next.as_str(), "int" | "long" | "char" | "short") {
                        parts.push(self.ident_text());
                    }
                }
            }
            "long" => {
                parts.push(self.ident_text());
                if let TokenKind::Ident(next) = self.peek().kind {
                    if next == "long" {
                        parts.push(self.ident_text());
                    }
                }
                if let TokenKind::Ident(next) = self.peek().kind {
                    if next == "int" {
                        parts.push(self.ident_text());
                    }
                }
            }
            "short" => {
                parts.push(self.ident_text());
                if let TokenKind::Ident(next) = self.peek().kind {
                    if next == "int" {
                        parts.push(self.ident_text());
                    }
                }
            }
            "int" | "char" | "float" | "double" | "void" => parts.push(self.ident_text()),
            _ => return Err(self.unexpected("a type name")),
        }
        if self.at_punct(Punct::Star) {
            let span = self.peek().span;
            return Err(self.unsupported(span, "pointer type"));
        }
        Ok(parts.join(" "))
    }

    fn ident_text(&mut self) -> String {
        match self.bump().kind {
            TokenKind::Ident(word) => word,
            _ => unreachable!("caller peeked an identifier"),
        }
    }

    fn function_def(
        &mut self,
        return_type: String,
        name: String,
        leading: Vec<String>,
        start: Span,
    ) -> Result<FunctionDef, ParseError> {
        self.expect_punct(Punct::LParen)?;
        let mut params = Vec::new();
        if !self.at_punct(Punct::RParen) {
            loop {
                let ty = self.parse_type()?;
                if ty == "void" && self.at_punct(Punct::RParen) && params.is_empty() {
                    break;
                }
                let (pname, _) = self.expect_ident("a parameter name")?;
                params.push(Param { ty, name: pname });
                if self.at_punct(Punct::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect_punct(Punct::RParen)?;
        if self.at_punct(Punct::Semi) {
            let span = self.peek().span;
            return Err(self.unsupported(span, format!("function prototype for `{name}`")));
        }
        let body = self.block()?;
        let span = span_between(start, self.last_span);
        let trailing = self.take_trailing(span.end_line);
        Ok(FunctionDef {
            return_type,
            name,
            params,
            body,
            trivia: Trivia { leading, trailing },
            span,
        })
    }

    fn block(&mut self) -> Result<Block, ParseError> {
        self.expect_punct(Punct::LBrace)?;
        let mut stmts = Vec::new();
        loop {
            let tok = self.peek();
            match tok.kind {
                TokenKind::Punct(Punct::RBrace) => {
                    let trailing_comments = self.take_pending();
                    self.bump();
                    return Ok(Block {
                        stmts,
                        trailing_comments,
                    });
                }
                TokenKind::Eof => return Err(self.unexpected("`}`")),
                _ => stmts.push(self.stmt()?),
            }
        }
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let tok = self.peek();
        let leading = self.take_pending();
        let start = tok.span;
        let kind = match &tok.kind {
            TokenKind::Punct(Punct::LBrace) => StmtKind::Block(self.block()?),
            TokenKind::Punct(Punct::Semi) => {
                self.bump();
                StmtKind::Empty
            }
            TokenKind::Ident(word) => match word.as_str() {
                "if" => self.if_stmt()?,
                "while" => self.while_stmt()?,
                "return" => {
                    self.bump();
                    let value = if self.at_punct(Punct::Semi) {
                        None
                    } else {
                        Some(self.expr()?)
                    };
                    self.expect_punct(Punct::Semi)?;
                    StmtKind::Return(value)
                }
                "else" => return Err(self.unexpected("a statement")),
                word if is_type_start(word) => {
                    let ty = self.parse_type()?;
                    let (name, _) = self.expect_ident("a variable name")?;
                    StmtKind::Decl(self.decl_tail(ty, name)?)
                }
                word => {
                    if let Some(construct) = unsupported_construct(word) {
                        return Err(self.unsupported(tok.span, construct));
                    }
                    let expr = self.expr()?;
                    self.expect_punct(Punct::Semi)?;
                    StmtKind::Expr(expr)
                }
            },
            _ => {
                let expr = self.expr()?;
                self.expect_punct(Punct::Semi)?;
                StmtKind::Expr(expr)
            }
        };
        let span = span_between(start, self.last_span);
        let trailing = self.take_trailing(span.end_line);
        Ok(Stmt {
            kind,
            trivia: Trivia { leading, trailing },
            span,
        })
    }

    fn if_stmt(&mut self) -> Result<StmtKind, ParseError> {
        self.bump(); // `if`
        self.expect_punct(Punct::LParen)?;
        let cond = self.expr()?;
        self.expect_punct(Punct::RParen)?;
        let then_branch = Box::new(self.stmt()?);
        let else_branch = match self.peek().kind {
            TokenKind::Ident(ref word) if word == "else" => {
                self.bump();
                Some(Box::new(self.stmt()?))
            }
            _ => None,
        };
        Ok(StmtKind::If {
            cond,
            then_branch,
            else_branch,
        })
    }

    fn while_stmt(&mut self) -> Result<StmtKind, ParseError> {
        self.bump(); // `while`
        self.expect_punct(Punct::LParen)?;
        let cond = self.expr()?;
        self.expect_punct(Punct::RParen)?;
        let body = Box::new(self.stmt()?);
        Ok(StmtKind::While { cond, body })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.assignment()
    }

    fn assignment(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.binary(1)?;
        if self.at_punct(Punct::Assign) {
            self.bump();
            let rhs = self.assignment()?;
            return Ok(Expr::Binary {
                op: BinaryOp::Assign,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            });
        }
        Ok(lhs)
    }

    fn binary(&mut self, min_prec: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some((op, prec)) = binary_op_of(&self.peek().kind) {
            if prec < min_prec {
                break;
            }
            self.bump();
            let rhs = self.binary(prec + 1)?;
            lhs = Expr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let op = match self.peek().kind {
            TokenKind::Punct(Punct::Minus) => Some(UnaryOp::Neg),
            TokenKind::Punct(Punct::Not) => Some(UnaryOp::Not),
            TokenKind::Punct(Punct::Tilde) => Some(UnaryOp::BitNot),
            TokenKind::Punct(Punct::Plus) => Some(UnaryOp::Plus),
            _ => None,
        };
        if let Some(op) = op {
            self.bump();
            let operand = Box::new(self.unary()?);
            return Ok(Expr::Unary { op, operand });
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek();
        match tok.kind {
            TokenKind::Int(text) => {
                self.bump();
                Ok(Expr::IntLit(text))
            }
            TokenKind::CharLit(text) => {
                self.bump();
                Ok(Expr::CharLit(text))
            }
            TokenKind::StrLit(text) => {
                self.bump();
                Ok(Expr::StrLit(text))
            }
            TokenKind::Ident(word) => {
                if let Some(construct) = unsupported_construct(&word) {
                    return Err(self.unsupported(tok.span, construct));
                }
                if is_type_start(&word) {
                    return Err(self.unsupported(tok.span, "type name in an expression"));
                }
                self.bump();
                if self.at_punct(Punct::LParen) {
                    self.bump();
                    let mut args = Vec::new();
                    if !self.at_punct(Punct::RParen) {
                        loop {
                            args.push(self.expr()?);
                            if self.at_punct(Punct::Comma) {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    let close = self.expect_punct(Punct::RParen)?;
                    return Ok(Expr::Call {
                        callee: word,
                        args,
                        span: span_between(tok.span, close.span),
                    });
                }
                Ok(Expr::Ident(word))
            }
            TokenKind::Punct(Punct::LParen) => {
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(Punct::RParen)?;
                Ok(Expr::Paren(Box::new(inner)))
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

fn binary_op_of(kind: &TokenKind) -> Option<(BinaryOp, u8)> {
    let TokenKind::Punct(p) = kind else {
        return None;
    };
    Some(match p {
        Punct::OrOr => (BinaryOp::Or, 1),
        Punct::AndAnd => (BinaryOp::And, 2),
        Punct::Pipe => (BinaryOp::BitOr, 3),
        Punct::Caret => (BinaryOp::BitXor, 4),
        Punct::Amp => (BinaryOp::BitAnd, 5),
        Punct::EqEq => (BinaryOp::Eq, 6),
        Punct::NotEq => (BinaryOp::Ne, 6),
        Punct::Lt => (BinaryOp::Lt, 7),
        Punct::Gt => (BinaryOp::Gt, 7),
        Punct::Le => (BinaryOp::Le, 7),
        Punct::Ge => (BinaryOp::Ge, 7),
        Punct::Shl => (BinaryOp::Shl, 8),
        Punct::Shr => (BinaryOp::Shr, 8),
        Punct::Plus => (BinaryOp::Add, 9),
        Punct::Minus => (BinaryOp::Sub, 9),
        Punct::Star => (BinaryOp::Mul, 10),
        Punct::Slash => (BinaryOp::Div, 10),
        Punct::Percent => (BinaryOp::Rem, 10),
        _ => return None,
    })
}

fn span_between(start: Span, end: Span) -> Span {
    Span::new(start.line, start.col, end.end_line, end.end_col)
}

fn first_call_span(expr: &Expr) -> Option<Span> {
    match expr {
        Expr::Call { span, .. } => Some(*span),
        Expr::Unary { operand, .. } => first_call_span(operand),
        Expr::Binary { lhs, rhs, .. } => first_call_span(lhs).or_else(|| first_call_span(rhs)),
        Expr::Paren(inner) => first_call_span(inner),
        Expr::IntLit(_) | Expr::CharLit(_) | Expr::StrLit(_) | Expr::Ident(_) => None,
    }
}
