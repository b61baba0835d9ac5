//! AST for the supported C subset. Nodes carry source spans and comment
//! trivia; structural equality ignores spans so a printed-and-reparsed tree
//! compares equal to the original.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32, end_line: u32, end_col: u32) -> Self {
        Span {
            line,
            col,
            end_line,
            end_col,
        }
    }
}

/// Comments attached to a node: `leading` are own-line comments above it,
/// `trailing` is a same-line comment after it. Text keeps the delimiters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trivia {
    pub leading: Vec<String>,
    pub trailing: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncludeDirective {
    pub path: String,
    /// `true` for `#include <...>`, `false` for `#include "..."`.
    pub system: bool,
    pub trivia: Trivia,
    pub span: Span,
}

impl IncludeDirective {
    /// Header name used for classification, e.g. `simpletools.h`.
    pub fn header_name(&self) -> &str {
        &self.path
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    /// Canonicalized type text, e.g. `const int`.
    pub ty: String,
    pub name: String,
    pub init: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalDecl {
    pub decl: VarDecl,
    pub trivia: Trivia,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub ty: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDef {
    pub return_type: String,
    pub name: String,
    pub params: Vec<Param>,
    pub body: Block,
    pub trivia: Trivia,
    pub span: Span,
}

impl FunctionDef {
    /// Signature as source text, e.g. `long GetQTIState(int comPort)`.
    pub fn signature(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|p| format!("{} {}", p.ty, p.name))
            .collect::<Vec<_>>()
            .join(", ");
        format!("{} {}({})", self.return_type, self.name, params)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Block {
    pub stmts: Vec<Stmt>,
    /// Own-line comments between the last statement and the closing brace.
    pub trailing_comments: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub trivia: Trivia,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Expr(Expr),
    Decl(VarDecl),
    If {
        cond: Expr,
        then_branch: Box<Stmt>,
        else_branch: Option<Box<Stmt>>,
    },
    While {
        cond: Expr,
        body: Box<Stmt>,
    },
    Return(Option<Expr>),
    Block(Block),
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Not,
    BitNot,
    Plus,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Not => "!",
            UnaryOp::BitNot => "~",
            UnaryOp::Plus => "+",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Assign,
    Or,
    And,
    BitOr,
    BitXor,
    BitAnd,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    Shl,
    Shr,
    Add,
    Sub,
    Mul,
    Div,
    Rem,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Assign => "=",
            BinaryOp::Or => "||",
            BinaryOp::And => "&&",
            BinaryOp::BitOr => "|",
            BinaryOp::BitXor => "^",
            BinaryOp::BitAnd => "&",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Gt => ">",
            BinaryOp::Le => "<=",
            BinaryOp::Ge => ">=",
            BinaryOp::Shl => "<<",
            BinaryOp::Shr => ">>",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Rem => "%",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Raw literal text, e.g. `24`, `0b1`, `0x1F`.
    IntLit(String),
    CharLit(String),
    StrLit(String),
    Ident(String),
    Call {
        callee: String,
        args: Vec<Expr>,
        span: Span,
    },
    Unary {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Paren(Box<Expr>),
}

impl Expr {
    pub fn contains_call(&self) -> bool {
        match self {
            Expr::IntLit(_) | Expr::CharLit(_) | Expr::StrLit(_) | Expr::Ident(_) => false,
            Expr::Call { .. } => true,
            Expr::Unary { operand, .. } => operand.contains_call(),
            Expr::Binary { lhs, rhs, .. } => lhs.contains_call() || rhs.contains_call(),
            Expr::Paren(inner) => inner.contains_call(),
        }
    }
}

/// One call expression occurrence, in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallSite {
    pub name: String,
    pub enclosing_function: String,
    pub args: Vec<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationUnit {
    pub includes: Vec<IncludeDirective>,
    pub globals: Vec<GlobalDecl>,
    pub functions: Vec<FunctionDef>,
    /// Own-line comments after the last top-level item.
    pub trailing_comments: Vec<String>,
    /// Physical newline count of the source text.
    pub source_line_count: usize,
    fingerprint: u64,
    call_sites: Vec<CallSite>,
}

impl TranslationUnit {
    pub fn new(
        includes: Vec<IncludeDirective>,
        globals: Vec<GlobalDecl>,
        functions: Vec<FunctionDef>,
        trailing_comments: Vec<String>,
        source_text: &str,
    ) -> Self {
        let mut tu = TranslationUnit {
            includes,
            globals,
            functions,
            trailing_comments,
            source_line_count: source_text.matches('\n').count(),
            fingerprint: fingerprint_of(source_text),
            call_sites: Vec::new(),
        };
        tu.call_sites = collect_call_sites(&tu.functions);
        tu
    }

    /// Stable hash of the source text; used as the analysis memo key.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// All call expressions in source order.
    pub fn call_sites(&self) -> &[CallSite] {
        &self.call_sites
    }

    pub fn defines_function(&self, name: &str) -> bool {
        self.functions.iter().any(|f| f.name == name)
    }

    pub fn function(&self, name: &str) -> Option<&FunctionDef> {
        self.functions.iter().find(|f| f.name == name)
    }

    /// Structural comparison ignoring source spans.
    pub fn structurally_eq(&self, other: &Self) -> bool {
        self.normalized_items() == other.normalized_items()
    }

    fn normalized_items(
        &self,
    ) -> (
        Vec<IncludeDirective>,
        Vec<GlobalDecl>,
        Vec<FunctionDef>,
        Vec<String>,
    ) {
        let mut includes = self.includes.clone();
        let mut globals = self.globals.clone();
        let mut functions = self.functions.clone();
        includes.iter_mut().for_each(|i| i.span = Span::default());
        globals.iter_mut().for_each(|g| {
            g.span = Span::default();
            if let Some(init) = &mut g.decl.init {
                zero_expr_spans(init);
            }
        });
        functions.iter_mut().for_each(|f| {
            f.span = Span::default();
            zero_block_spans(&mut f.body);
        });
        (includes, globals, functions, self.trailing_comments.clone())
    }
}

fn fingerprint_of(text: &str) -> u64 {
    let mut hasher = DefaultHasher::new();
    text.len().hash(&mut hasher);
    text.hash(&mut hasher);
    hasher.finish()
}

fn collect_call_sites(functions: &[FunctionDef]) -> Vec<CallSite> {
    let mut sites = Vec::new();
    for func in functions {
        for stmt in &func.body.stmts {
            walk_stmt(stmt, &func.name, &mut sites);
        }
    }
    sites
}

fn walk_stmt(stmt: &Stmt, enclosing: &str, sites: &mut Vec<CallSite>) {
    match &stmt.kind {
        StmtKind::Expr(expr) => walk_expr(expr, enclosing, sites),
        StmtKind::Decl(decl) => {
            if let Some(init) = &decl.init {
                walk_expr(init, enclosing, sites);
            }
        }
        StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            walk_expr(cond, enclosing, sites);
            walk_stmt(then_branch, enclosing, sites);
            if let Some(els) = else_branch {
                walk_stmt(els, enclosing, sites);
            }
        }
        StmtKind::While { cond, body } => {
            walk_expr(cond, enclosing, sites);
            walk_stmt(body, enclosing, sites);
        }
        StmtKind::Return(expr) => {
            if let Some(expr) = expr {
                walk_expr(expr, enclosing, sites);
            }
        }
        StmtKind::Block(block) => {
            for stmt in &block.stmts {
                walk_stmt(stmt, enclosing, sites);
            }
        }
        StmtKind::Empty => {}
    }
}

fn walk_expr(expr: &Expr, enclosing: &str, sites: &mut Vec<CallSite>) {
    match expr {
        Expr::Call { callee, args, span } => {
            sites.push(CallSite {
                name: callee.clone(),
                enclosing_function: enclosing.to_string(),
                args: args.clone(),
                span: *span,
            });
            for arg in args {
                walk_expr(arg, enclosing, sites);
            }
        }
        Expr::Unary { operand, .. } => walk_expr(operand, enclosing, sites),
        Expr::Binary { lhs, rhs, .. } => {
            walk_expr(lhs, enclosing, sites);
            walk_expr(rhs, enclosing, sites);
        }
        Expr::Paren(inner) => walk_expr(inner, enclosing, sites),
        Expr::IntLit(_) | Expr::CharLit(_) | Expr::StrLit(_) | Expr::Ident(_) => {}
    }
}

fn zero_expr_spans(expr: &mut Expr) {
    match expr {
        Expr::Call { args, span, .. } => {
            *span = Span::default();
            args.iter_mut().for_each(zero_expr_spans);
        }
        Expr::Unary { operand, .. } => zero_expr_spans(operand),
        Expr::Binary { lhs, rhs, .. } => {
            zero_expr_spans(lhs);
            zero_expr_spans(rhs);
        }
        Expr::Paren(inner) => zero_expr_spans(inner),
        Expr::IntLit(_) | Expr::CharLit(_) | Expr::StrLit(_) | Expr::Ident(_) => {}
    }
}

fn zero_stmt_spans(stmt: &mut Stmt) {
    stmt.span = Span::default();
    match &mut stmt.kind {
        StmtKind::Expr(expr) => zero_expr_spans(expr),
        StmtKind::Decl(decl) => {
            if let Some(init) = &mut decl.init {
                zero_expr_spans(init);
            }
        }
        StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            zero_expr_spans(cond);
            zero_stmt_spans(then_branch);
            if let Some(els) = else_branch {
                zero_stmt_spans(els);
            }
        }
        StmtKind::While { cond, body } => {
            zero_expr_spans(cond);
            zero_stmt_spans(body);
        }
        StmtKind::Return(Some(expr)) => zero_expr_spans(expr),
        StmtKind::Return(None) | StmtKind::Empty => {}
        StmtKind::Block(block) => zero_block_spans(block),
    }
}

pub(crate) fn zero_block_spans(block: &mut Block) {
    block.stmts.iter_mut().for_each(zero_stmt_spans);
}

/// Span-insensitive statement comparison, used by tests and by the
/// decomposition checks.
pub fn stmts_structurally_eq(a: &[Stmt], b: &[Stmt]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| {
        let mut x = x.clone();
        let mut y = y.clone();
        zero_stmt_spans(&mut x);
        zero_stmt_spans(&mut y);
        x == y
    })
}
