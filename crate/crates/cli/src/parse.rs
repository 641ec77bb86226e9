//! Lexer and parser for declarative session files. A session is a list of
//! statements terminated by semicolons: declarations binding names to
//! rings, primes, windows, modules, and level sequences, plus commands
//! that produce reports. Polynomial entries are captured as raw text
//! spans and parsed later against the ring they belong to.

use spectilt_core::error::{Error, Result};

/// Byte offset → 1-based (line, column).
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, c) in src.char_indices() {
        if i >= offset {
            break;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

pub fn err_at(src: &str, offset: usize, msg: &str) -> Error {
    let (l, c) = line_col(src, offset);
    Error::input(format!("line {l}, column {c}: {msg}"))
}

/// A polynomial captured as raw source text, parsed once its ring is known.
#[derive(Clone, Debug)]
pub struct RawPoly {
    pub text: String,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

#[derive(Clone, Debug)]
pub enum Atom {
    Ident(String),
    Int(i64),
    Str(String),
}

impl Atom {
    pub fn display(&self) -> String {
        match self {
            Atom::Ident(s) => s.clone(),
            Atom::Int(v) => v.to_string(),
            Atom::Str(s) => format!("\"{s}\""),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Arg {
    pub atom: Atom,
    pub offset: usize,
}

/// A command invocation: positional arguments first, then `--flag` options,
/// each with zero or more comma-separated values.
#[derive(Clone, Debug)]
pub struct Command {
    pub name: String,
    pub offset: usize,
    pub pos: Vec<Arg>,
    pub flags: Vec<(String, Vec<Arg>, usize)>,
}

impl Command {
    /// Canonical one-line rendering, used as the command echo in reports.
    pub fn echo(&self) -> String {
        let mut out = self.name.clone();
        for a in &self.pos {
            out.push(' ');
            out.push_str(&a.atom.display());
        }
        for (name, vals, _) in &self.flags {
            out.push_str(&format!(" --{name}"));
            if !vals.is_empty() {
                out.push(' ');
                out.push_str(&vals.iter().map(|a| a.atom.display()).collect::<Vec<_>>().join(","));
            }
        }
        out
    }

    pub fn flag(&self, name: &str) -> Option<&(String, Vec<Arg>, usize)> {
        self.flags.iter().find(|(n, _, _)| n == name)
    }
}

#[derive(Clone, Debug)]
pub enum StmtKind {
    Ring {
        name: String,
        field: FieldSpec,
        vars: Vec<String>,
        quotient: Vec<RawPoly>,
        gorenstein: bool,
    },
    Prime {
        name: String,
        gens: Vec<RawPoly>,
        assert_prime: bool,
        height: Option<i64>,
    },
    Window {
        name: String,
        primes: Vec<Arg>,
    },
    Module {
        name: String,
        rows: Vec<Vec<RawPoly>>,
        degrees: Vec<i64>,
        degrees_offset: usize,
    },
    Seq {
        name: String,
        text: String,
        text_offset: usize,
        window: String,
        window_offset: usize,
    },
    Command(Command),
}

#[derive(Clone, Debug)]
pub struct Stmt {
    pub offset: usize,
    pub kind: StmtKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Flag(String),
    Punct(char),
    Eof,
}

impl Tok {
    fn display(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier \"{s}\""),
            Tok::Int(v) => format!("integer {v}"),
            Tok::Str(_) => "string literal".to_string(),
            Tok::Flag(s) => format!("flag --{s}"),
            Tok::Punct(c) => format!("'{c}'"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
}

pub struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    peeked: Option<Token>,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_continue(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Parser<'a> {
        Parser { src, bytes: src.as_bytes(), pos: 0, peeked: None }
    }

    fn skip_trivia(&mut self) {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
    }

    fn lex(&mut self) -> Result<Token> {
        self.skip_trivia();
        let start = self.pos;
        if self.pos >= self.bytes.len() {
            return Ok(Token { tok: Tok::Eof, start });
        }
        let c = self.bytes[self.pos];
        if c == b'-' {
            if self.bytes.get(self.pos + 1) == Some(&b'-') {
                self.pos += 2;
                let fs = self.pos;
                while self.pos < self.bytes.len()
                    && (is_ident_continue(self.bytes[self.pos])
                        || (self.bytes[self.pos] == b'-'
                            && self.bytes.get(self.pos + 1).copied().map_or(false, is_ident_start)))
                {
                    self.pos += 1;
                }
                if self.pos == fs {
                    return Err(err_at(self.src, start, "expected a flag name after \"--\""));
                }
                return Ok(Token { tok: Tok::Flag(self.src[fs..self.pos].to_string()), start });
            }
            if self.bytes.get(self.pos + 1).map_or(false, |b| b.is_ascii_digit()) {
                self.pos += 1;
                let v = self.lex_digits(start)?;
                return Ok(Token { tok: Tok::Int(-v), start });
            }
            return Err(err_at(self.src, start, "unexpected '-' outside a number or flag"));
        }
        if c.is_ascii_digit() {
            let v = self.lex_digits(start)?;
            return Ok(Token { tok: Tok::Int(v), start });
        }
        if is_ident_start(c) {
            self.pos += 1;
            while self.pos < self.bytes.len()
                && (is_ident_continue(self.bytes[self.pos])
                    || (self.bytes[self.pos] == b'-'
                        && self.bytes.get(self.pos + 1).copied().map_or(false, |b| is_ident_start(b))))
            {
                self.pos += 1;
            }
            return Ok(Token { tok: Tok::Ident(self.src[start..self.pos].to_string()), start });
        }
        if c == b'"' {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos] != b'"' {
                if self.bytes[self.pos] == b'\n' {
                    return Err(err_at(self.src, start, "unterminated string literal"));
                }
                self.pos += 1;
            }
            if self.pos >= self.bytes.len() {
                return Err(err_at(self.src, start, "unterminated string literal"));
            }
            let s = self.src[fs..self.pos].to_string();
            self.pos += 1;
            return Ok(Token { tok: Tok::Str(s), start });
        }
        if b"=;,()[]{}/".contains(&c) {
            self.pos += 1;
            return Ok(Token { tok: Tok::Punct(c as char), start });
        }
        Err(err_at(self.src, start, &format!("unexpected character {:?}", c as char)))
    }

    fn lex_digits(&mut self, start: usize) -> Result<i64> {
        let fs = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[fs..self.pos]
            .parse::<i64>()
            .map_err(|_| err_at(self.src, start, "integer literal out of range"))
    }

    fn next(&mut self) -> Result<Token> {
        if let Some(t) = self.peeked.take() {
            return Ok(t);
        }
        self.lex()
    }

    fn peek(&mut self) -> Result<&Token> {
        if self.peeked.is_none() {
            let t = self.lex()?;
            self.peeked = Some(t);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn expect_punct(&mut self, c: char, expected: &str) -> Result<usize> {
        let t = self.next()?;
        if t.tok == Tok::Punct(c) {
            Ok(t.start)
        } else {
            Err(err_at(
                self.src,
                t.start,
                &format!("expected {expected}, found {}", t.tok.display()),
            ))
        }
    }

    fn expect_ident(&mut self, expected: &str) -> Result<(String, usize)> {
        let t = self.next()?;
        match t.tok {
            Tok::Ident(s) => Ok((s, t.start)),
            other => Err(err_at(
                self.src,
                t.start,
                &format!("expected {expected}, found {}", other.display()),
            )),
        }
    }

    fn expect_int(&mut self, expected: &str) -> Result<(i64, usize)> {
        let t = self.next()?;
        match t.tok {
            Tok::Int(v) => Ok((v, t.start)),
            other => Err(err_at(
                self.src,
                t.start,
                &format!("expected {expected}, found {}", other.display()),
            )),
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<usize> {
        let t = self.next()?;
        match &t.tok {
            Tok::Ident(s) if s == word => Ok(t.start),
            other => Err(err_at(
                self.src,
                t.start,
                &format!("expected keyword '{word}', found {}", other.display()),
            )),
        }
    }

    /// Consume raw source text up to (not including) the next occurrence of
    /// any stop character, for a polynomial slot. Polynomials contain no
    /// parentheses, brackets, commas, or semicolons, so no nesting applies.
    fn raw_until(&mut self, stops: &[u8]) -> Result<RawPoly> {
        if let Some(t) = self.peeked.take() {
            self.pos = t.start;
        }
        self.skip_trivia();
        let start = self.pos;
        while self.pos < self.bytes.len() && !stops.contains(&self.bytes[self.pos]) {
            self.pos += 1;
        }
        if self.pos >= self.bytes.len() {
            return Err(err_at(
                self.src,
                start,
                "unterminated polynomial: expected a closing delimiter",
            ));
        }
        let text = self.src[start..self.pos].trim_end().to_string();
        if text.is_empty() {
            return Err(err_at(self.src, start, "expected a polynomial"));
        }
        Ok(RawPoly { text, offset: start })
    }

    /// Comma-separated polynomials up to a closing delimiter, which is
    /// consumed. The list may be empty.
    fn poly_list(&mut self, close: char) -> Result<Vec<RawPoly>> {
        let mut out = Vec::new();
        loop {
            let t = self.peek()?;
            if t.tok == Tok::Punct(close) {
                self.next()?;
                return Ok(out);
            }
            if t.tok == Tok::Eof {
                let start = t.start;
                return Err(err_at(
                    self.src,
                    start,
                    &format!("expected a polynomial or '{close}', found end of input"),
                ));
            }
            out.push(self.raw_until(&[b',', close as u8, b';'])?);
            let t = self.next()?;
            match t.tok {
                Tok::Punct(',') => continue,
                Tok::Punct(c) if c == close => return Ok(out),
                other => {
                    return Err(err_at(
                        self.src,
                        t.start,
                        &format!("expected ',' or '{close}', found {}", other.display()),
                    ))
                }
            }
        }
    }

    fn int_list(&mut self) -> Result<(Vec<i64>, usize)> {
        let open = self.expect_punct('[', "'['")?;
        let mut out = Vec::new();
        if self.peek()?.tok == Tok::Punct(']') {
            self.next()?;
            return Ok((out, open));
        }
        loop {
            out.push(self.expect_int("an integer")?.0);
            let t = self.next()?;
            match t.tok {
                Tok::Punct(',') => continue,
                Tok::Punct(']') => return Ok((out, open)),
                other => {
                    return Err(err_at(
                        self.src,
                        t.start,
                        &format!("expected ',' or ']', found {}", other.display()),
                    ))
                }
            }
        }
    }

    fn ring_decl(&mut self, offset: usize) -> Result<Stmt> {
        let (name, _) = self.expect_ident("a ring name")?;
        self.expect_punct('=', "'='")?;
        let (fw, fo) = self.expect_ident("a coefficient field (QQ or FF(p))")?;
        let field = match fw.as_str() {
            "QQ" => FieldSpec::Rational,
            "FF" => {
                self.expect_punct('(', "'(' after FF")?;
                let (p, po) = self.expect_int("a prime modulus")?;
                self.expect_punct(')', "')'")?;
                if p <= 1 {
                    return Err(err_at(self.src, po, "the modulus must be a prime number"));
                }
                FieldSpec::Prime(p as u64)
            }
            other => {
                return Err(err_at(
                    self.src,
                    fo,
                    &format!("expected 'QQ' or 'FF', found identifier \"{other}\""),
                ))
            }
        };
        self.expect_punct('[', "'[' opening the variable list")?;
        let mut vars = Vec::new();
        loop {
            vars.push(self.expect_ident("a variable name")?.0);
            let t = self.next()?;
            match t.tok {
                Tok::Punct(',') => continue,
                Tok::Punct(']') => break,
                other => {
                    return Err(err_at(
                        self.src,
                        t.start,
                        &format!("expected ',' or ']', found {}", other.display()),
                    ))
                }
            }
        }
        let mut quotient = Vec::new();
        if self.peek()?.tok == Tok::Punct('/') {
            self.next()?;
            self.expect_punct('(', "'(' opening the quotient ideal")?;
            quotient = self.poly_list(')')?;
        }
        let mut gorenstein = false;
        if let Tok::Ident(w) = &self.peek()?.tok {
            if w == "gorenstein" {
                gorenstein = true;
                self.next()?;
            }
        }
        Ok(Stmt { offset, kind: StmtKind::Ring { name, field, vars, quotient, gorenstein } })
    }

    fn prime_decl(&mut self, offset: usize) -> Result<Stmt> {
        let (name, _) = self.expect_ident("a prime name")?;
        self.expect_punct('=', "'='")?;
        self.expect_punct('(', "'(' opening the generator list")?;
        let gens = self.poly_list(')')?;
        let (mode, mo) = self.expect_ident("'certify' or 'assert'")?;
        let assert_prime = match mode.as_str() {
            "certify" => false,
            "assert" => true,
            other => {
                return Err(err_at(
                    self.src,
                    mo,
                    &format!("expected 'certify' or 'assert', found identifier \"{other}\""),
                ))
            }
        };
        let mut height = None;
        if let Tok::Ident(w) = &self.peek()?.tok {
            if w == "height" {
                self.next()?;
                height = Some(self.expect_int("a height value")?.0);
            }
        }
        Ok(Stmt { offset, kind: StmtKind::Prime { name, gens, assert_prime, height } })
    }

    fn window_decl(&mut self, offset: usize) -> Result<Stmt> {
        let (name, _) = self.expect_ident("a window name")?;
        self.expect_punct('=', "'='")?;
        self.expect_punct('{', "'{' opening the prime list")?;
        let mut primes = Vec::new();
        if self.peek()?.tok == Tok::Punct('}') {
            self.next()?;
        } else {
            loop {
                let (p, po) = self.expect_ident("a prime name")?;
                primes.push(Arg { atom: Atom::Ident(p), offset: po });
                let t = self.next()?;
                match t.tok {
                    Tok::Punct(',') => continue,
                    Tok::Punct('}') => break,
                    other => {
                        return Err(err_at(
                            self.src,
                            t.start,
                            &format!("expected ',' or '}}', found {}", other.display()),
                        ))
                    }
                }
            }
        }
        Ok(Stmt { offset, kind: StmtKind::Window { name, primes } })
    }

    fn module_decl(&mut self, offset: usize) -> Result<Stmt> {
        let (name, _) = self.expect_ident("a module name")?;
        self.expect_punct('=', "'='")?;
        self.expect_keyword("coker")?;
        self.expect_punct('[', "'[' opening the relation matrix")?;
        let mut rows = Vec::new();
        if self.peek()?.tok == Tok::Punct(']') {
            self.next()?;
        } else {
            loop {
                self.expect_punct('[', "'[' opening a matrix row")?;
                rows.push(self.poly_list(']')?);
                let t = self.next()?;
                match t.tok {
                    Tok::Punct(',') => continue,
                    Tok::Punct(']') => break,
                    other => {
                        return Err(err_at(
                            self.src,
                            t.start,
                            &format!("expected ',' or ']', found {}", other.display()),
                        ))
                    }
                }
            }
        }
        self.expect_keyword("degrees")?;
        let (degrees, degrees_offset) = self.int_list()?;
        Ok(Stmt { offset, kind: StmtKind::Module { name, rows, degrees, degrees_offset } })
    }

    fn seq_decl(&mut self, offset: usize) -> Result<Stmt> {
        let (name, _) = self.expect_ident("a sequence name")?;
        self.expect_punct('=', "'='")?;
        let t = self.next()?;
        let (text, text_offset) = match t.tok {
            Tok::Str(s) => (s, t.start),
            other => {
                return Err(err_at(
                    self.src,
                    t.start,
                    &format!(
                        "expected a quoted level description like \"Y1=p1,p2; Y2=p2\", found {}",
                        other.display()
                    ),
                ))
            }
        };
        self.expect_keyword("window")?;
        let (window, window_offset) = self.expect_ident("a window name")?;
        Ok(Stmt { offset, kind: StmtKind::Seq { name, text, text_offset, window, window_offset } })
    }

    fn command(&mut self, name: String, offset: usize) -> Result<Stmt> {
        let mut pos = Vec::new();
        let mut flags: Vec<(String, Vec<Arg>, usize)> = Vec::new();
        loop {
            let t = self.peek()?.clone();
            match t.tok {
                Tok::Punct(';') | Tok::Eof => break,
                Tok::Flag(f) => {
                    self.next()?;
                    let mut vals = Vec::new();
                    loop {
                        let v = self.peek()?.clone();
                        let atom = match v.tok {
                            Tok::Ident(s) => Atom::Ident(s),
                            Tok::Int(i) => Atom::Int(i),
                            Tok::Str(s) => Atom::Str(s),
                            _ => break,
                        };
                        self.next()?;
                        vals.push(Arg { atom, offset: v.start });
                        if self.peek()?.tok == Tok::Punct(',') {
                            self.next()?;
                        } else {
                            break;
                        }
                    }
                    flags.push((f, vals, t.start));
                }
                Tok::Ident(_) | Tok::Int(_) | Tok::Str(_) => {
                    if !flags.is_empty() {
                        return Err(err_at(
                            self.src,
                            t.start,
                            &format!(
                                "expected a flag or ';', found {} (positional arguments precede flags)",
                                t.tok.display()
                            ),
                        ));
                    }
                    let atom = match self.next()?.tok {
                        Tok::Ident(s) => Atom::Ident(s),
                        Tok::Int(i) => Atom::Int(i),
                        Tok::Str(s) => Atom::Str(s),
                        _ => unreachable!("peeked an atom"),
                    };
                    pos.push(Arg { atom, offset: t.start });
                }
                _ => {
                    return Err(err_at(
                        self.src,
                        t.start,
                        &format!(
                            "expected an argument, a flag, or ';', found {}",
                            t.tok.display()
                        ),
                    ))
                }
            }
        }
        Ok(Stmt { offset, kind: StmtKind::Command(Command { name, offset, pos, flags }) })
    }

    pub fn session(&mut self) -> Result<Vec<Stmt>> {
        let mut out = Vec::new();
        loop {
            let t = self.next()?;
            let stmt = match t.tok {
                Tok::Eof => break,
                Tok::Punct(';') => continue,
                Tok::Ident(word) => match word.as_str() {
                    "ring" => self.ring_decl(t.start)?,
                    "prime" => self.prime_decl(t.start)?,
                    "window" => self.window_decl(t.start)?,
                    "module" => self.module_decl(t.start)?,
                    "seq" => self.seq_decl(t.start)?,
                    _ => self.command(word, t.start)?,
                },
                other => {
                    return Err(err_at(
                        self.src,
                        t.start,
                        &format!(
                            "expected a declaration (ring, prime, window, module, seq) or a command name, found {}",
                            other.display()
                        ),
                    ))
                }
            };
            let t = self.next()?;
            match t.tok {
                Tok::Punct(';') => out.push(stmt),
                other => {
                    return Err(err_at(
                        self.src,
                        t.start,
                        &format!("expected ';' ending the statement, found {}", other.display()),
                    ))
                }
            }
        }
        Ok(out)
    }
}

pub fn parse_session(src: &str) -> Result<Vec<Stmt>> {
    Parser::new(src).session()
}
