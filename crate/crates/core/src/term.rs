//! Term datatypes, their textual grammar, sizes and conversions.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// de Bruijn term: `v(N) | l(T) | a(T,T)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DbTerm {
    V(usize),
    L(Box<DbTerm>),
    A(Box<DbTerm>, Box<DbTerm>),
}

/// Compressed de Bruijn term: `v(K,N) | a(K,T,T)`, `K` counting the binders wrapped around it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompTerm {
    V(usize, usize),
    A(usize, Box<CompTerm>, Box<CompTerm>),
}

/// Variable name of a standard term: bound `xN` or free `fN`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Name {
    X(usize),
    F(usize),
}

/// Named lambda term. Binders always carry an `xN` name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StdTerm {
    Var(Name),
    Lam(usize, Box<StdTerm>),
    App(Box<StdTerm>, Box<StdTerm>),
}

/// Binary tree with leaf `x` and node `>`: a simple type, an X-combinator tree or a tree natural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinTree {
    Leaf,
    Node(Box<BinTree>, Box<BinTree>),
}

/// SK combinator tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkTerm {
    S,
    K,
    Ap(Box<SkTerm>, Box<SkTerm>),
}

impl DbTerm {
    pub fn v(i: usize) -> Self {
        DbTerm::V(i)
    }

    pub fn l(body: DbTerm) -> Self {
        DbTerm::L(Box::new(body))
    }

    pub fn a(f: DbTerm, x: DbTerm) -> Self {
        DbTerm::A(Box::new(f), Box::new(x))
    }

    /// Number of `l` and `a` nodes.
    pub fn size(&self) -> usize {
        match self {
            DbTerm::V(_) => 0,
            DbTerm::L(b) => 1 + b.size(),
            DbTerm::A(f, x) => 1 + f.size() + x.size(),
        }
    }

    pub fn is_closed(&self) -> bool {
        fn go(t: &DbTerm, depth: usize) -> bool {
            match t {
                DbTerm::V(i) => *i < depth,
                DbTerm::L(b) => go(b, depth + 1),
                DbTerm::A(f, x) => go(f, depth) && go(x, depth),
            }
        }
        go(self, 0)
    }

    /// True when no `a` node has an `l` as its left child.
    pub fn is_normal(&self) -> bool {
        match self {
            DbTerm::V(_) => true,
            DbTerm::L(b) => b.is_normal(),
            DbTerm::A(f, x) => !matches!(**f, DbTerm::L(_)) && f.is_normal() && x.is_normal(),
        }
    }
}

impl CompTerm {
    pub fn v(k: usize, n: usize) -> Self {
        CompTerm::V(k, n)
    }

    pub fn a(k: usize, x: CompTerm, y: CompTerm) -> Self {
        CompTerm::A(k, Box::new(x), Box::new(y))
    }

    /// Size of the de Bruijn expansion.
    pub fn size(&self) -> usize {
        match self {
            CompTerm::V(k, _) => *k,
            CompTerm::A(k, x, y) => k + 1 + x.size() + y.size(),
        }
    }

    pub fn is_closed(&self) -> bool {
        fn go(t: &CompTerm, s: usize) -> bool {
            match t {
                CompTerm::V(k, n) => *n < s + k,
                CompTerm::A(k, x, y) => go(x, s + k) && go(y, s + k),
            }
        }
        go(self, 0)
    }

    fn binders(&self) -> usize {
        match self {
            CompTerm::V(k, _) | CompTerm::A(k, _, _) => *k,
        }
    }

    fn with_binders(self, k: usize) -> Self {
        match self {
            CompTerm::V(_, n) => CompTerm::V(k, n),
            CompTerm::A(_, x, y) => CompTerm::A(k, x, y),
        }
    }
}

impl StdTerm {
    pub fn var(n: usize) -> Self {
        StdTerm::Var(Name::X(n))
    }

    pub fn free(n: usize) -> Self {
        StdTerm::Var(Name::F(n))
    }

    pub fn lam(n: usize, body: StdTerm) -> Self {
        StdTerm::Lam(n, Box::new(body))
    }

    pub fn app(f: StdTerm, x: StdTerm) -> Self {
        StdTerm::App(Box::new(f), Box::new(x))
    }

    pub fn size(&self) -> usize {
        match self {
            StdTerm::Var(_) => 0,
            StdTerm::Lam(_, b) => 1 + b.size(),
            StdTerm::App(f, x) => 1 + f.size() + x.size(),
        }
    }
}

impl BinTree {
    pub fn leaf() -> Self {
        BinTree::Leaf
    }

    pub fn node(l: BinTree, r: BinTree) -> Self {
        BinTree::Node(Box::new(l), Box::new(r))
    }

    /// Internal node count.
    pub fn size(&self) -> usize {
        match self {
            BinTree::Leaf => 0,
            BinTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            BinTree::Leaf => 0,
            BinTree::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinTree::Leaf)
    }
}

impl SkTerm {
    pub fn ap(l: SkTerm, r: SkTerm) -> Self {
        SkTerm::Ap(Box::new(l), Box::new(r))
    }

    /// Count of `*` nodes.
    pub fn size(&self) -> usize {
        match self {
            SkTerm::S | SkTerm::K => 0,
            SkTerm::Ap(l, r) => 1 + l.size() + r.size(),
        }
    }
}

/// b2c: fold runs of binders into the compressed counter.
pub fn db_to_compressed(t: &DbTerm) -> CompTerm {
    match t {
        DbTerm::V(i) => CompTerm::V(0, *i),
        DbTerm::A(f, x) => CompTerm::a(0, db_to_compressed(f), db_to_compressed(x)),
        DbTerm::L(b) => {
            let inner = db_to_compressed(b);
            let k = inner.binders() + 1;
            inner.with_binders(k)
        }
    }
}

/// c2b: expand each counter into that many `l` wrappers.
pub fn compressed_to_db(t: &CompTerm) -> DbTerm {
    let (k, core) = match t {
        CompTerm::V(k, n) => (*k, DbTerm::V(*n)),
        CompTerm::A(k, x, y) => (*k, DbTerm::a(compressed_to_db(x), compressed_to_db(y))),
    };
    (0..k).fold(core, |acc, _| DbTerm::l(acc))
}

/// Canonical named form. Binders are `x0, x1, …` in preorder; an index `i` that escapes
/// `d` enclosing binders becomes the free name `f(i-d)`.
pub fn db_to_std(t: &DbTerm) -> StdTerm {
    fn go(t: &DbTerm, stack: &mut Vec<usize>, next: &mut usize) -> StdTerm {
        match t {
            DbTerm::V(i) => {
                let d = stack.len();
                if *i < d {
                    StdTerm::var(stack[d - 1 - i])
                } else {
                    StdTerm::free(i - d)
                }
            }
            DbTerm::L(b) => {
                let n = *next;
                *next += 1;
                stack.push(n);
                let body = go(b, stack, next);
                stack.pop();
                StdTerm::lam(n, body)
            }
            DbTerm::A(f, x) => {
                let f = go(f, stack, next);
                let x = go(x, stack, next);
                StdTerm::app(f, x)
            }
        }
    }
    go(t, &mut Vec::new(), &mut 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("name x{0} is used but never bound")]
    Unbound(usize),
}

/// Inverse of [`db_to_std`]; shadowed names resolve to the innermost binder.
pub fn std_to_db(t: &StdTerm) -> Result<DbTerm, ConvertError> {
    fn go(t: &StdTerm, stack: &mut Vec<usize>) -> Result<DbTerm, ConvertError> {
        match t {
            StdTerm::Var(Name::X(n)) => stack
                .iter()
                .rev()
                .position(|b| b == n)
                .map(DbTerm::V)
                .ok_or(ConvertError::Unbound(*n)),
            StdTerm::Var(Name::F(k)) => Ok(DbTerm::V(stack.len() + k)),
            StdTerm::Lam(n, b) => {
                stack.push(*n);
                let body = go(b, stack);
                stack.pop();
                Ok(DbTerm::l(body?))
            }
            StdTerm::App(f, x) => Ok(DbTerm::a(go(f, stack)?, go(x, stack)?)),
        }
    }
    go(t, &mut Vec::new())
}

/// Rename binders to canonical preorder names.
pub fn canonical_std(t: &StdTerm) -> Result<StdTerm, ConvertError> {
    std_to_db(t).map(|b| db_to_std(&b))
}

// ---------------------------------------------------------------- printing

impl fmt::Display for DbTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DbTerm::V(i) => write!(f, "v({i})"),
            DbTerm::L(b) => write!(f, "l({b})"),
            DbTerm::A(x, y) => write!(f, "a({x},{y})"),
        }
    }
}

impl fmt::Display for CompTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompTerm::V(k, n) => write!(f, "v({k},{n})"),
            CompTerm::A(k, x, y) => write!(f, "a({k},{x},{y})"),
        }
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Name::X(n) => write!(f, "x{n}"),
            Name::F(n) => write!(f, "f{n}"),
        }
    }
}

impl fmt::Display for StdTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StdTerm::Var(n) => write!(f, "{n}"),
            StdTerm::Lam(n, b) => write!(f, "l(x{n},{b})"),
            StdTerm::App(x, y) => write!(f, "a({x},{y})"),
        }
    }
}

impl fmt::Display for BinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(t: &BinTree, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                BinTree::Leaf => f.write_str("x"),
                _ => write!(f, "({t})"),
            }
        }
        match self {
            BinTree::Leaf => f.write_str("x"),
            BinTree::Node(l, r) => {
                child(l, f)?;
                f.write_str(">")?;
                child(r, f)
            }
        }
    }
}

impl fmt::Display for SkTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkTerm::S => f.write_str("s"),
            SkTerm::K => f.write_str("k"),
            SkTerm::Ap(l, r) => match **r {
                SkTerm::Ap(..) => write!(f, "{l}*({r})"),
                _ => write!(f, "{l}*{r}"),
            },
        }
    }
}

// ----------------------------------------------------------------- parsing

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Which textual grammar to read or write.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grammar {
    Db,
    Comp,
    Std,
    Tree,
    Sk,
}

impl FromStr for Grammar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "db" => Ok(Grammar::Db),
            "comp" | "compressed" => Ok(Grammar::Comp),
            "std" | "standard" => Ok(Grammar::Std),
            "tree" | "type" | "x" => Ok(Grammar::Tree),
            "sk" => Ok(Grammar::Sk),
            _ => Err(format!("unknown grammar {s}")),
        }
    }
}

/// A term of any representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Db(DbTerm),
    Comp(CompTerm),
    Std(StdTerm),
    Tree(BinTree),
    Sk(SkTerm),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Db(t) => t.fmt(f),
            Term::Comp(t) => t.fmt(f),
            Term::Std(t) => t.fmt(f),
            Term::Tree(t) => t.fmt(f),
            Term::Sk(t) => t.fmt(f),
        }
    }
}

pub fn parse_term(text: &str, grammar: Grammar) -> Result<Term, ParseError> {
    Ok(match grammar {
        Grammar::Db => Term::Db(text.parse()?),
        Grammar::Comp => Term::Comp(text.parse()?),
        Grammar::Std => Term::Std(text.parse()?),
        Grammar::Tree => Term::Tree(text.parse()?),
        Grammar::Sk => Term::Sk(text.parse()?),
    })
}

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("number out of range")
            })
    }

    fn finish<T>(&mut self, t: T) -> Result<T, ParseError> {
        if self.peek().is_some() {
            self.err("trailing input")
        } else {
            Ok(t)
        }
    }

    fn db(&mut self) -> Result<DbTerm, ParseError> {
        match self.peek() {
            Some(b'v') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.number()?;
                self.expect(b')')?;
                Ok(DbTerm::V(n))
            }
            Some(b'l') => {
                self.pos += 1;
                self.expect(b'(')?;
                let b = self.db()?;
                self.expect(b')')?;
                Ok(DbTerm::l(b))
            }
            Some(b'a') => {
                self.pos += 1;
                self.expect(b'(')?;
                let f = self.db()?;
                self.expect(b',')?;
                let x = self.db()?;
                self.expect(b')')?;
                Ok(DbTerm::a(f, x))
            }
            _ => self.err("expected v, l or a"),
        }
    }

    fn comp(&mut self) -> Result<CompTerm, ParseError> {
        match self.peek() {
            Some(b'v') => {
                self.pos += 1;
                self.expect(b'(')?;
                let k = self.number()?;
                self.expect(b',')?;
                let n = self.number()?;
                self.expect(b')')?;
                Ok(CompTerm::V(k, n))
            }
            Some(b'a') => {
                self.pos += 1;
                self.expect(b'(')?;
                let k = self.number()?;
                self.expect(b',')?;
                let x = self.comp()?;
                self.expect(b',')?;
                let y = self.comp()?;
                self.expect(b')')?;
                Ok(CompTerm::a(k, x, y))
            }
            _ => self.err("expected v or a"),
        }
    }

    fn std(&mut self) -> Result<StdTerm, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(StdTerm::var(self.number()?))
            }
            Some(b'f') => {
                self.pos += 1;
                Ok(StdTerm::free(self.number()?))
            }
            Some(b'l') => {
                self.pos += 1;
                self.expect(b'(')?;
                self.expect(b'x')?;
                let n = self.number()?;
                self.expect(b',')?;
                let b = self.std()?;
                self.expect(b')')?;
                Ok(StdTerm::lam(n, b))
            }
            Some(b'a') => {
                self.pos += 1;
                self.expect(b'(')?;
                let f = self.std()?;
                self.expect(b',')?;
                let x = self.std()?;
                self.expect(b')')?;
                Ok(StdTerm::app(f, x))
            }
            _ => self.err("expected xN, fN, l or a"),
        }
    }

    fn tree(&mut self) -> Result<BinTree, ParseError> {
        let left = match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                BinTree::Leaf
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.tree()?;
                self.expect(b')')?;
                t
            }
            _ => return self.err("expected x or '('"),
        };
        if self.peek() == Some(b'>') {
            self.pos += 1;
            Ok(BinTree::node(left, self.tree()?))
        } else {
            Ok(left)
        }
    }

    fn sk_atom(&mut self) -> Result<SkTerm, ParseError> {
        match self.peek() {
            Some(b's') => {
                self.pos += 1;
                Ok(SkTerm::S)
            }
            Some(b'k') => {
                self.pos += 1;
                Ok(SkTerm::K)
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.sk()?;
                self.expect(b')')?;
                Ok(t)
            }
            _ => self.err("expected s, k or '('"),
        }
    }

    fn sk(&mut self) -> Result<SkTerm, ParseError> {
        let mut t = self.sk_atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            t = SkTerm::ap(t, self.sk_atom()?);
        }
        Ok(t)
    }
}

macro_rules! from_str_via {
    ($ty:ty, $method:ident) => {
        impl FromStr for $ty {
            type Err = ParseError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let mut p = Parser::new(s);
                let t = p.$method()?;
                p.finish(t)
            }
        }
    };
}

from_str_via!(DbTerm, db);
from_str_via!(CompTerm, comp);
from_str_via!(StdTerm, std);
from_str_via!(BinTree, tree);
from_str_via!(SkTerm, sk);
