//! Re-serializes ASTs to source text. Printing then re-parsing yields a
//! structurally equal tree; codegen reuses the same routines so retained
//! constructs survive migration with their comments.

use super::ast::*;

const INDENT: &str = "  ";

pub fn print_translation_unit(tu: &TranslationUnit) -> String {
    let mut out = String::new();
    for include in &tu.includes {
        out.push_str(&print_include(include));
        out.push('\n');
    }
    for global in &tu.globals {
        out.push_str(&print_global(global));
        out.push('\n');
    }
    for func in &tu.functions {
        out.push_str(&print_function(func));
        out.push('\n');
    }
    for comment in &tu.trailing_comments {
        out.push_str(comment);
        out.push('\n');
    }
    out
}

pub fn print_include(include: &IncludeDirective) -> String {
    let mut out = String::new();
    push_leading(&mut out, &include.trivia.leading, 0);
    if include.system {
        out.push_str(&format!("#include <{}>", include.path));
    } else {
        out.push_str(&format!("#include \"{}\"", include.path));
    }
    push_trailing(&mut out, &include.trivia.trailing);
    out
}

pub fn print_global(global: &GlobalDecl) -> String {
    let mut out = String::new();
    push_leading(&mut out, &global.trivia.leading, 0);
    out.push_str(&print_var_decl(&global.decl));
    push_trailing(&mut out, &global.trivia.trailing);
    out
}

pub fn print_function(func: &FunctionDef) -> String {
    let mut out = String::new();
    push_leading(&mut out, &func.trivia.leading, 0);
    out.push_str(&func.signature());
    out.push_str(" {");
    push_block_body(&mut out, &func.body, 1);
    out.push_str("\n}");
    push_trailing(&mut out, &func.trivia.trailing);
    out
}

fn print_var_decl(decl: &VarDecl) -> String {
    match &decl.init {
        Some(init) => format!("{} {} = {};", decl.ty, decl.name, print_expr(init)),
        None => format!("{} {};", decl.ty, decl.name),
    }
}

/// Prints one statement at `indent`, without a trailing newline.
pub fn print_stmt(stmt: &Stmt, indent: usize) -> String {
    let mut out = String::new();
    push_leading(&mut out, &stmt.trivia.leading, indent);
    out.push_str(&INDENT.repeat(indent));
    print_stmt_inner(&mut out, stmt, indent);
    push_trailing(&mut out, &stmt.trivia.trailing);
    out
}

/// Statement text after indentation has been written; recursive cases
/// manage their own newlines.
fn print_stmt_inner(out: &mut String, stmt: &Stmt, indent: usize) {
    match &stmt.kind {
        StmtKind::Expr(expr) => {
            out.push_str(&print_expr(expr));
            out.push(';');
        }
        StmtKind::Decl(decl) => out.push_str(&print_var_decl(decl)),
        StmtKind::Return(value) => {
            match value {
                Some(expr) => out.push_str(&format!("return {};", print_expr(expr))),
                None => out.push_str("return;"),
            };
        }
        StmtKind::Empty => out.push(';'),
        StmtKind::Block(block) => {
            out.push('{');
            push_block_body(out, block, indent + 1);
            out.push('\n');
            out.push_str(&INDENT.repeat(indent));
            out.push('}');
        }
        StmtKind::While { cond, body } => {
            out.push_str(&format!("while ({})", print_expr(cond)));
            print_branch(out, body, indent);
        }
        StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } => print_if(out, cond, then_branch, else_branch.as_deref(), indent),
    }
}

fn print_if(
    out: &mut String,
    cond: &Expr,
    then_branch: &Stmt,
    else_branch: Option<&Stmt>,
    indent: usize,
) {
    out.push_str(&format!("if ({})", print_expr(cond)));
    print_branch(out, then_branch, indent);
    if let Some(els) = else_branch {
        // a line comment after `}` would swallow a same-line `else`
        let line_comment_before_else = then_branch
            .trivia
            .trailing
            .as_deref()
            .is_some_and(|t| t.starts_with("//"));
        if inline_block(then_branch) && !line_comment_before_else {
            out.push_str(" else");
        } else {
            out.push('\n');
            out.push_str(&INDENT.repeat(indent));
            out.push_str("else");
        }
        // `else if` chains stay on one line
        if let StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } = &els.kind
        {
            out.push(' ');
            push_leading_inline(out, &els.trivia.leading, indent);
            print_if(out, cond, then_branch, else_branch.as_deref(), indent);
            push_trailing(out, &els.trivia.trailing);
        } else {
            print_branch(out, els, indent);
        }
    }
}

/// True when the branch is a block with no leading comments, so its `{`
/// can share the `if`/`while` line.
fn inline_block(stmt: &Stmt) -> bool {
    matches!(stmt.kind, StmtKind::Block(_)) && stmt.trivia.leading.is_empty()
}

/// An `if`/`while` body: blocks open on the same line, everything else
/// goes on the next line, indented.
fn print_branch(out: &mut String, body: &Stmt, indent: usize) {
    if inline_block(body) {
        let StmtKind::Block(block) = &body.kind else {
            unreachable!()
        };
        out.push_str(" {");
        push_block_body(out, block, indent + 1);
        out.push('\n');
        out.push_str(&INDENT.repeat(indent));
        out.push('}');
        push_trailing(out, &body.trivia.trailing);
    } else {
        out.push('\n');
        out.push_str(&print_stmt(body, indent + 1));
    }
}

fn push_block_body(out: &mut String, block: &Block, indent: usize) {
    for stmt in &block.stmts {
        out.push('\n');
        out.push_str(&print_stmt(stmt, indent));
    }
    for comment in &block.trailing_comments {
        out.push('\n');
        out.push_str(&INDENT.repeat(indent));
        out.push_str(comment);
    }
}

fn push_leading(out: &mut String, comments: &[String], indent: usize) {
    for comment in comments {
        out.push_str(&INDENT.repeat(indent));
        out.push_str(comment);
        out.push('\n');
    }
}

/// Leading comments for an `else if` keep the chain on one line by being
/// emitted inline before the nested `if`.
fn push_leading_inline(out: &mut String, comments: &[String], indent: usize) {
    if comments.is_empty() {
        return;
    }
    // fall back to own lines, then re-indent the `if`
    let tail: String = std::mem::take(out);
    let mut rebuilt = tail;
    rebuilt.push('\n');
    for comment in comments {
        rebuilt.push_str(&INDENT.repeat(indent));
        rebuilt.push_str(comment);
        rebuilt.push('\n');
    }
    rebuilt.push_str(&INDENT.repeat(indent));
    *out = rebuilt;
}

fn push_trailing(out: &mut String, trailing: &Option<String>) {
    if let Some(comment) = trailing {
        out.push(' ');
        out.push_str(comment);
    }
}

pub fn print_expr(expr: &Expr) -> String {
    match expr {
        Expr::IntLit(text) | Expr::CharLit(text) | Expr::StrLit(text) => text.clone(),
        Expr::Ident(name) => name.clone(),
        Expr::Paren(inner) => format!("({})", print_expr(inner)),
        Expr::Unary { op, operand } => {
            // parenthesize nested binaries so `-a + b` round-trips as written
            let inner = match operand.as_ref() {
                Expr::Binary { .. } => format!("({})", print_expr(operand)),
                _ => print_expr(operand),
            };
            format!("{}{}", op.symbol(), inner)
        }
        Expr::Binary { op, lhs, rhs } => {
            let (prec, right_assoc) = binary_prec(*op);
            let lhs_text = print_operand(lhs, prec, right_assoc, true);
            let rhs_text = print_operand(rhs, prec, right_assoc, false);
            format!("{} {} {}", lhs_text, op.symbol(), rhs_text)
        }
        Expr::Call { callee, args, .. } => {
            let args = args.iter().map(print_expr).collect::<Vec<_>>().join(", ");
            format!("{callee}({args})")
        }
    }
}

fn print_operand(expr: &Expr, parent_prec: u8, right_assoc: bool, is_left: bool) -> String {
    if let Expr::Binary { op, .. } = expr {
        let (prec, _) = binary_prec(*op);
        let needs_parens = if right_assoc {
            // assignment: left operand of equal precedence needs parens
            prec < parent_prec || (prec == parent_prec && is_left)
        } else {
            prec < parent_prec || (prec == parent_prec && !is_left)
        };
        if needs_parens {
            return format!("({})", print_expr(expr));
        }
    }
    print_expr(expr)
}

fn binary_prec(op: BinaryOp) -> (u8, bool) {
    match op {
        BinaryOp::Assign => (0, true),
        BinaryOp::Or => (1, false),
        BinaryOp::And => (2, false),
        BinaryOp::BitOr => (3, false),
        BinaryOp::BitXor => (4, false),
        BinaryOp::BitAnd => (5, false),
        BinaryOp::Eq | BinaryOp::Ne => (6, false),
        BinaryOp::Lt | BinaryOp::Gt | BinaryOp::Le | BinaryOp::Ge => (7, false),
        BinaryOp::Shl | BinaryOp::Shr => (8, false),
        BinaryOp::Add | BinaryOp::Sub => (9, false),
        BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem => (10, false),
    }
}
