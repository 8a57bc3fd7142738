use crate::diag::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u32),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Assign,
    Eq,
    EqEq,
    EqSub,
    Implies,
    Lolli,
    Arrow,
    Star,
    Plus,
    TensorOp,
    Bang,
    Unit,
    Lambda,
    Or,
    /// `#check`, `#schema` and friends. The schema kind word is attached.
    Directive(String, Option<String>),
    /// End of a directive line.
    Eol,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Directive(d, _) => format!("`#{d}`"),
            Tok::Eol => "end of line".into(),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", symbol(other)),
        }
    }
}

fn symbol(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBracket => "[",
        Tok::RBracket => "]",
        Tok::LBrace => "{",
        Tok::RBrace => "}",
        Tok::Comma => ",",
        Tok::Dot => ".",
        Tok::Colon => ":",
        Tok::Assign => ":=",
        Tok::Eq => "=",
        Tok::EqEq => "==",
        Tok::EqSub => "=_",
        Tok::Implies => "=>",
        Tok::Lolli => "-o",
        Tok::Arrow => "->",
        Tok::Star => "*",
        Tok::Plus => "+",
        Tok::TensorOp => "(*)",
        Tok::Bang => "!",
        Tok::Unit => "<>",
        Tok::Lambda => "/\\",
        Tok::Or => "\\/",
        _ => "?",
    }
}

pub const DIRECTIVES: &[&str] = &["check", "normalize", "equal", "admissible", "schema"];

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn ident_continue(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut in_directive = false;
    let mut depth: Vec<(u8, usize)> = Vec::new();
    while i < b.len() {
        let c = b[i];
        if c == b'\n' {
            if in_directive {
                out.push(Token {
                    tok: Tok::Eol,
                    span: Span::new(i, i),
                });
                in_directive = false;
            }
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c == b'#' {
            let mut j = i + 1;
            while j < b.len() && b[j].is_ascii_alphabetic() {
                j += 1;
            }
            let word = &src[i + 1..j];
            if DIRECTIVES.contains(&word) && !in_directive {
                let mut kind = None;
                if word == "schema" {
                    let mut k = j;
                    while k < b.len() && (b[k] == b' ' || b[k] == b'\t') {
                        k += 1;
                    }
                    let s = k;
                    while k < b.len() && (b[k].is_ascii_alphabetic() || b[k] == b'-') {
                        k += 1;
                    }
                    kind = Some(src[s..k].to_string());
                    j = k;
                }
                out.push(Token {
                    tok: Tok::Directive(word.to_string(), kind),
                    span: Span::new(i, j),
                });
                in_directive = true;
                i = j;
                continue;
            }
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if ident_start(c) {
            let mut j = i + 1;
            while j < b.len() && ident_continue(b[j]) {
                j += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[i..j].to_string()),
                span: Span::new(i, j),
            });
            i = j;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let n = src[i..j]
                .parse()
                .map_err(|_| Diagnostic::error("number too large", Span::new(i, j)))?;
            out.push(Token {
                tok: Tok::Num(n),
                span: Span::new(i, j),
            });
            i = j;
            continue;
        }
        let rest = &src[i..];
        let table: &[(&str, Tok)] = &[
            ("(*)", Tok::TensorOp),
            (":=", Tok::Assign),
            ("==", Tok::EqEq),
            ("=_", Tok::EqSub),
            ("=>", Tok::Implies),
            ("-o", Tok::Lolli),
            ("->", Tok::Arrow),
            ("<>", Tok::Unit),
            ("/\\", Tok::Lambda),
            ("\\/", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("[", Tok::LBracket),
            ("]", Tok::RBracket),
            ("{", Tok::LBrace),
            ("}", Tok::RBrace),
            (",", Tok::Comma),
            (".", Tok::Dot),
            (":", Tok::Colon),
            ("=", Tok::Eq),
            ("*", Tok::Star),
            ("+", Tok::Plus),
            ("!", Tok::Bang),
        ];
        let Some((text, tok)) = table.iter().find(|(t, _)| rest.starts_with(t)) else {
            let ch = rest.chars().next().unwrap_or('?');
            return Err(Diagnostic::error(
                format!("unexpected character `{ch}`"),
                Span::new(i, i + ch.len_utf8()),
            ));
        };
        // `-o` must not swallow the start of an identifier such as `-ok`.
        if *tok == Tok::Lolli && b.get(i + 2).is_some_and(|&n| ident_continue(n)) {
            return Err(Diagnostic::error("expected `-o` or `->`", Span::new(i, i + 1)));
        }
        match tok {
            Tok::LParen | Tok::LBracket | Tok::LBrace => depth.push((text.as_bytes()[0], start)),
            Tok::RParen | Tok::RBracket | Tok::RBrace => {
                let want = match tok {
                    Tok::RParen => b'(',
                    Tok::RBracket => b'[',
                    _ => b'{',
                };
                match depth.pop() {
                    Some((open, _)) if open == want => {}
                    _ => {
                        return Err(Diagnostic::error(
                            format!("unbalanced `{text}`"),
                            Span::new(i, i + 1),
                        ))
                    }
                }
            }
            _ => {}
        }
        out.push(Token {
            tok: tok.clone(),
            span: Span::new(i, i + text.len()),
        });
        i += text.len();
    }
    if let Some((open, at)) = depth.pop() {
        return Err(Diagnostic::error(
            format!("unclosed `{}`", open as char),
            Span::new(at, at + 1),
        ));
    }
    if in_directive {
        out.push(Token {
            tok: Tok::Eol,
            span: Span::new(b.len(), b.len()),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(b.len(), b.len()),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn tensor_operator_is_one_token() {
        assert_eq!(
            toks("x (*) y"),
            vec![
                Tok::Ident("x".into()),
                Tok::TensorOp,
                Tok::Ident("y".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_and_directives() {
        let t = toks("# a comment\n#check x\nterm");
        assert_eq!(
            t,
            vec![
                Tok::Directive("check".into(), None),
                Tok::Ident("x".into()),
                Tok::Eol,
                Tok::Ident("term".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn schema_kind_is_attached() {
        let t = toks("#schema identity-extension a");
        assert_eq!(t[0], Tok::Directive("schema".into(), Some("identity-extension".into())));
    }

    #[test]
    fn unbalanced_delimiters_are_reported() {
        let e = lex("(a -o b").unwrap_err();
        assert_eq!(e.span, Span::new(0, 1));
        assert!(lex("a)").is_err());
    }
}
