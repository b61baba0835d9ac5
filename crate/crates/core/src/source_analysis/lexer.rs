//! Tokenizer for the C subset. Comments come out as tokens so the parser
//! can attach them as trivia; include directives are lexed whole.

use super::ast::Span;
use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Include { path: String, system: bool },
    Ident(String),
    Int(String),
    CharLit(String),
    StrLit(String),
    Punct(Punct),
    Comment { text: String, own_line: bool },
    Eof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Punct {
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Assign,
    EqEq,
    NotEq,
    Lt,
    Gt,
    Le,
    Ge,
    AndAnd,
    OrOr,
    Amp,
    Pipe,
    Caret,
    Shl,
    Shr,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Not,
    Tilde,
}

impl Punct {
    pub fn symbol(self) -> &'static str {
        match self {
            Punct::LParen => "(",
            Punct::RParen => ")",
            Punct::LBrace => "{",
            Punct::RBrace => "}",
            Punct::LBracket => "[",
            Punct::RBracket => "]",
            Punct::Semi => ";",
            Punct::Comma => ",",
            Punct::Assign => "=",
            Punct::EqEq => "==",
            Punct::NotEq => "!=",
            Punct::Lt => "<",
            Punct::Gt => ">",
            Punct::Le => "<=",
            Punct::Ge => ">=",
            Punct::AndAnd => "&&",
            Punct::OrOr => "||",
            Punct::Amp => "&",
            Punct::Pipe => "|",
            Punct::Caret => "^",
            Punct::Shl => "<<",
            Punct::Shr => ">>",
            Punct::Plus => "+",
            Punct::Minus => "-",
            Punct::Star => "*",
            Punct::Slash => "/",
            Punct::Percent => "%",
            Punct::Not => "!",
            Punct::Tilde => "~",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

impl Token {
    pub fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Include { path, .. } => format!("#include {path:?}"),
            TokenKind::Ident(name) => format!("`{name}`"),
            TokenKind::Int(text) => format!("`{text}`"),
            TokenKind::CharLit(text) | TokenKind::StrLit(text) => format!("`{text}`"),
            TokenKind::Punct(p) => format!("`{}`", p.symbol()),
            TokenKind::Comment { .. } => "comment".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
    /// True until a non-whitespace character is seen on the current line.
    at_line_start: bool,
}

pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut lexer = Lexer {
        src: text.as_bytes(),
        pos: 0,
        line: 1,
        col: 1,
        at_line_start: true,
    };
    let mut tokens = Vec::new();
    loop {
        let token = lexer.next_token()?;
        let done = token.kind == TokenKind::Eof;
        tokens.push(token);
        if done {
            return Ok(tokens);
        }
    }
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.src.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
            self.at_line_start = true;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn next_token(&mut self) -> Result<Token, ParseError> {
        while let Some(c) = self.peek() {
            if c == b' ' || c == b'\t' || c == b'\r' || c == b'\n' {
                self.bump();
            } else {
                break;
            }
        }
        let start_line = self.line;
        let start_col = self.col;
        let own_line = self.at_line_start;
        self.at_line_start = false;

        let Some(c) = self.peek() else {
            return Ok(Token {
                kind: TokenKind::Eof,
                span: Span::new(start_line, start_col, start_line, start_col),
            });
        };

        let kind = match c {
            b'#' => return self.lex_directive(start_line, start_col),
            b'/' if self.peek_at(1) == Some(b'/') => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c != b'\n') {
                    self.bump();
                }
                TokenKind::Comment {
                    text: self.text_from(start),
                    own_line,
                }
            }
            b'/' if self.peek_at(1) == Some(b'*') => {
                let start = self.pos;
                self.bump();
                self.bump();
                loop {
                    match self.peek() {
                        Some(b'*') if self.peek_at(1) == Some(b'/') => {
                            self.bump();
                            self.bump();
                            break;
                        }
                        Some(_) => {
                            self.bump();
                        }
                        None => return Err(self.error("unterminated block comment")),
                    }
                }
                TokenKind::Comment {
                    text: self.text_from(start),
                    own_line,
                }
            }
            b'"' => {
                let start = self.pos;
                self.bump();
                loop {
                    match self.peek() {
                        Some(b'\\') => {
                            self.bump();
                            self.bump();
                        }
                        Some(b'"') => {
                            self.bump();
                            break;
                        }
                        Some(b'\n') | None => return Err(self.error("unterminated string literal")),
                        Some(_) => {
                            self.bump();
                        }
                    }
                }
                TokenKind::StrLit(self.text_from(start))
            }
            b'\'' => {
                let start = self.pos;
                self.bump();
                loop {
                    match self.peek() {
                        Some(b'\\') => {
                            self.bump();
                            self.bump();
                        }
                        Some(b'\'') => {
                            self.bump();
                            break;
                        }
                        Some(b'\n') | None => {
                            return Err(self.error("unterminated character literal"))
                        }
                        Some(_) => {
                            self.bump();
                        }
                    }
                }
                TokenKind::CharLit(self.text_from(start))
            }
            b'0'..=b'9' => {
                let start = self.pos;
                self.bump();
                if c == b'0' && matches!(self.peek(), Some(b'x') | Some(b'X')) {
                    self.bump();
                    while self.peek().is_some_and(|c| c.is_ascii_hexdigit()) {
                        self.bump();
                    }
                } else if c == b'0' && matches!(self.peek(), Some(b'b') | Some(b'B')) {
                    self.bump();
                    while matches!(self.peek(), Some(b'0') | Some(b'1')) {
                        self.bump();
                    }
                } else {
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.bump();
                    }
                }
                TokenKind::Int(self.text_from(start))
            }
            c if c == b'_' || c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c == b'_' || c.is_ascii_alphanumeric())
                {
                    self.bump();
                }
                TokenKind::Ident(self.text_from(start))
            }
            _ => TokenKind::Punct(self.lex_punct()?),
        };
        Ok(Token {
            kind,
            span: Span::new(start_line, start_col, self.line, self.col),
        })
    }

    fn lex_punct(&mut self) -> Result<Punct, ParseError> {
        let c = self.bump().expect("caller checked");
        let two = |lexer: &mut Self, expect: u8, yes: Punct, no: Punct| {
            if lexer.peek() == Some(expect) {
                lexer.bump();
                yes
            } else {
                no
            }
        };
        Ok(match c {
            b'(' => Punct::LParen,
            b')' => Punct::RParen,
            b'{' => Punct::LBrace,
            b'}' => Punct::RBrace,
            b'[' => Punct::LBracket,
            b']' => Punct::RBracket,
            b';' => Punct::Semi,
            b',' => Punct::Comma,
            b'=' => two(self, b'=', Punct::EqEq, Punct::Assign),
            b'!' => two(self, b'=', Punct::NotEq, Punct::Not),
            b'<' => {
                if self.peek() == Some(b'<') {
                    self.bump();
                    Punct::Shl
                } else {
                    two(self, b'=', Punct::Le, Punct::Lt)
                }
            }
            b'>' => {
                if self.peek() == Some(b'>') {
                    self.bump();
                    Punct::Shr
                } else {
                    two(self, b'=', Punct::Ge, Punct::Gt)
                }
            }
            b'&' => two(self, b'&', Punct::AndAnd, Punct::Amp),
            b'|' => two(self, b'|', Punct::OrOr, Punct::Pipe),
            b'^' => Punct::Caret,
            b'+' => Punct::Plus,
            b'-' => Punct::Minus,
            b'*' => Punct::Star,
            b'/' => Punct::Slash,
            b'%' => Punct::Percent,
            b'~' => Punct::Tilde,
            other => {
                return Err(ParseError::Syntax {
                    line: self.line,
                    col: self.col.saturating_sub(1),
                    message: format!("stray `{}` in input", other as char),
                })
            }
        })
    }

    /// Lexes `#include <...>` / `#include "..."`; any other directive is an
    /// unsupported construct.
    fn lex_directive(&mut self, start_line: u32, start_col: u32) -> Result<Token, ParseError> {
        self.bump(); // '#'
        while self.peek() == Some(b' ') || self.peek() == Some(b'\t') {
            self.bump();
        }
        let name_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.bump();
        }
        let name = self.text_from(name_start);
        if name != "include" {
            return Err(ParseError::Unsupported {
                line: start_line,
                col: start_col,
                construct: format!("preprocessor directive #{name}"),
            });
        }
        while self.peek() == Some(b' ') || self.peek() == Some(b'\t') {
            self.bump();
        }
        let (path, system) = match self.peek() {
            Some(b'<') => {
                self.bump();
                let start = self.pos;
                while self.peek().is_some_and(|c| c != b'>' && c != b'\n') {
                    self.bump();
                }
                if self.peek() != Some(b'>') {
                    return Err(self.error("unterminated include path"));
                }
                let path = self.text_from(start);
                self.bump();
                (path, true)
            }
            Some(b'"') => {
                self.bump();
                let start = self.pos;
                while self.peek().is_some_and(|c| c != b'"' && c != b'\n') {
                    self.bump();
                }
                if self.peek() != Some(b'"') {
                    return Err(self.error("unterminated include path"));
                }
                let path = self.text_from(start);
                self.bump();
                (path, false)
            }
            _ => return Err(self.error("expected `<path>` or \"path\" after #include")),
        };
        Ok(Token {
            kind: TokenKind::Include { path, system },
            span: Span::new(start_line, start_col, self.line, self.col),
        })
    }

    fn text_from(&self, start: usize) -> String {
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        lex(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn lexes_binary_literal() {
        let toks = kinds("0b1 0x1F 230");
        assert_eq!(
            toks[..3],
            [
                TokenKind::Int("0b1".into()),
                TokenKind::Int("0x1F".into()),
                TokenKind::Int("230".into())
            ]
        );
    }

    #[test]
    fn lexes_includes_both_forms() {
        let toks = kinds("#include \"simpletools.h\"\n#include <stdio.h>\n");
        assert_eq!(
            toks[..2],
            [
                TokenKind::Include {
                    path: "simpletools.h".into(),
                    system: false
                },
                TokenKind::Include {
                    path: "stdio.h".into(),
                    system: true
                }
            ]
        );
    }

    #[test]
    fn other_directives_are_unsupported() {
        match lex("#define X 1\n") {
            Err(ParseError::Unsupported { construct, .. }) => {
                assert!(construct.contains("#define"));
            }
            other => panic!("expected Unsupported, got {other:?}"),
        }
    }

    #[test]
    fn comment_own_line_flag() {
        let toks = lex("x; //same line\n  //own line\n").unwrap();
        let comments: Vec<_> = toks
            .iter()
            .filter_map(|t| match &t.kind {
                TokenKind::Comment { text, own_line } => Some((text.clone(), *own_line)),
                _ => None,
            })
            .collect();
        assert_eq!(
            comments,
            vec![
                ("//same line".to_string(), false),
                ("//own line".to_string(), true)
            ]
        );
    }

    #[test]
    fn spans_are_one_based() {
        let toks = lex("ab\ncd").unwrap();
        assert_eq!(toks[0].span, Span::new(1, 1, 1, 3));
        assert_eq!(toks[1].span, Span::new(2, 1, 2, 3));
    }
}
