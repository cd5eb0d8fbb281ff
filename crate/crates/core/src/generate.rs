//! Exhaustive generators for every term family, each in a fixed clause order.
//!
//! Each generator walks the search tree depth first, trying alternatives in clause order and
//! threading the remaining size budget left to right. Exact-size mode only accepts
//! completions that leave no budget behind.

use std::fmt;
use std::ops::ControlFlow;

use crate::term::{db_to_compressed, db_to_std, BinTree, CompTerm, DbTerm, SkTerm, StdTerm};
use crate::typeinf::{infer_sk_simple, sk_type, typable, typable_sk, TyId, Unifier};

pub type Flow = ControlFlow<()>;

const GO: Flow = ControlFlow::Continue(());

/// Whether results must use the whole size budget or may use less.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Upto,
}

impl Mode {
    fn exact(self) -> bool {
        self == Mode::Exact
    }
}

/// A lazily produced, finite, single-consumer sequence.
///
/// Nothing runs until a consuming method is called; consumers may stop early.
pub struct Enumeration<'a, T> {
    run: Producer<'a, T>,
}

type Producer<'a, T> = Box<dyn FnOnce(&mut dyn FnMut(T) -> Flow) -> Flow + 'a>;

impl<'a, T: 'a> Enumeration<'a, T> {
    pub fn new(f: impl FnOnce(&mut dyn FnMut(T) -> Flow) -> Flow + 'a) -> Self {
        Enumeration { run: Box::new(f) }
    }

    pub fn from_vec(v: Vec<T>) -> Self {
        Enumeration::new(move |k| {
            for t in v {
                k(t)?;
            }
            GO
        })
    }

    /// Feed every element to `f` until it breaks.
    pub fn try_for_each(self, mut f: impl FnMut(T) -> Flow) -> Flow {
        (self.run)(&mut f)
    }

    pub fn for_each(self, mut f: impl FnMut(T)) {
        let _ = (self.run)(&mut |t| {
            f(t);
            GO
        });
    }

    pub fn count(self) -> u64 {
        let mut n = 0;
        self.for_each(|_| n += 1);
        n
    }

    pub fn collect_vec(self) -> Vec<T> {
        let mut v = Vec::new();
        self.for_each(|t| v.push(t));
        v
    }

    pub fn take(self, n: usize) -> Vec<T> {
        let mut v = Vec::new();
        if n == 0 {
            return v;
        }
        let _ = (self.run)(&mut |t| {
            v.push(t);
            if v.len() >= n {
                ControlFlow::Break(())
            } else {
                GO
            }
        });
        v
    }

    pub fn first(self) -> Option<T> {
        self.take(1).pop()
    }

    pub fn map<U: 'a>(self, mut g: impl FnMut(T) -> U + 'a) -> Enumeration<'a, U> {
        Enumeration::new(move |k| (self.run)(&mut |t| k(g(t))))
    }

    pub fn filter(self, mut p: impl FnMut(&T) -> bool + 'a) -> Self {
        Enumeration::new(move |k| (self.run)(&mut |t| if p(&t) { k(t) } else { GO }))
    }

    pub fn filter_map<U: 'a>(self, mut g: impl FnMut(T) -> Option<U> + 'a) -> Enumeration<'a, U> {
        Enumeration::new(move |k| (self.run)(&mut |t| match g(t) {
            Some(u) => k(u),
            None => GO,
        }))
    }

    pub fn chain(self, other: Self) -> Self {
        Enumeration::new(move |k| {
            (self.run)(k)?;
            (other.run)(k)
        })
    }
}

type K<'k, T> = &'k mut dyn FnMut(T, usize) -> Flow;

// ------------------------------------------------------------------ trees

fn trees(fuel: usize, exact: bool, k: K<'_, BinTree>) -> Flow {
    if !exact || fuel == 0 {
        k(BinTree::Leaf, fuel)?;
    }
    if fuel > 0 {
        trees(fuel - 1, false, &mut |l, f1| {
            trees(f1, exact, &mut |r, f2| k(BinTree::node(l.clone(), r), f2))
        })?;
    }
    GO
}

fn depth_trees(d: usize, k: &mut dyn FnMut(BinTree) -> Flow) -> Flow {
    k(BinTree::Leaf)?;
    if d > 0 {
        depth_trees(d - 1, &mut |l| depth_trees(d - 1, &mut |r| k(BinTree::node(l.clone(), r))))?;
    }
    GO
}

/// All binary trees of depth at most `d`.
pub fn gen_tree_by_depth(d: usize) -> Enumeration<'static, BinTree> {
    Enumeration::new(move |k| depth_trees(d, k))
}

/// Binary trees with `n` internal nodes (or at most `n`).
pub fn gen_tree(n: usize, mode: Mode) -> Enumeration<'static, BinTree> {
    Enumeration::new(move |k| trees(n, mode.exact(), &mut |t, _| k(t)))
}

/// Types are binary trees.
pub fn gen_type(n: usize, mode: Mode) -> Enumeration<'static, BinTree> {
    gen_tree(n, mode)
}

// --------------------------------------------------------------- motzkin

/// Unary-binary tree: leaf `u`, unary `l`, binary `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Motzkin {
    U,
    L(Box<Motzkin>),
    A(Box<Motzkin>, Box<Motzkin>),
}

impl fmt::Display for Motzkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Motzkin::U => f.write_str("u"),
            Motzkin::L(a) => write!(f, "l({a})"),
            Motzkin::A(a, b) => write!(f, "a({a},{b})"),
        }
    }
}

fn motzkin(fuel: usize, exact: bool, schroeder: bool, k: K<'_, Motzkin>) -> Flow {
    if schroeder {
        if !exact || fuel == 0 {
            k(Motzkin::U, fuel)?;
        }
    } else if fuel > 0 && (!exact || fuel == 1) {
        k(Motzkin::U, fuel - 1)?;
    }
    if fuel > 0 {
        motzkin(fuel - 1, exact, schroeder, &mut |a, f| k(Motzkin::L(Box::new(a)), f))?;
        motzkin(fuel - 1, false, schroeder, &mut |a, f1| {
            motzkin(f1, exact, schroeder, &mut |b, f2| {
                k(Motzkin::A(Box::new(a.clone()), Box::new(b)), f2)
            })
        })?;
    }
    GO
}

/// Motzkin trees where leaves, unary and binary nodes each cost one unit.
/// With `schroeder` leaves are free.
pub fn gen_motzkin(n: usize, schroeder: bool) -> Enumeration<'static, Motzkin> {
    Enumeration::new(move |k| motzkin(n, true, schroeder, &mut |t, _| k(t)))
}

// ------------------------------------------------------------ lambda terms

fn std_terms(
    vs: &[usize],
    fuel: usize,
    next: usize,
    exact: bool,
    k: &mut dyn FnMut(StdTerm, usize, usize) -> Flow,
) -> Flow {
    if !exact || fuel == 0 {
        for v in vs.iter().rev() {
            k(StdTerm::var(*v), fuel, next)?;
        }
    }
    if fuel > 0 {
        let mut inner = vs.to_vec();
        inner.push(next);
        std_terms(&inner, fuel - 1, next + 1, exact, &mut |b, f, nx| {
            k(StdTerm::lam(next, b), f, nx)
        })?;
        std_terms(vs, fuel - 1, next, false, &mut |a, f1, n1| {
            std_terms(vs, f1, n1, exact, &mut |b, f2, n2| k(StdTerm::app(a.clone(), b), f2, n2))
        })?;
    }
    GO
}

/// Closed named terms with exactly `n` binder and application nodes.
pub fn gen_lambda_std(n: usize) -> Enumeration<'static, StdTerm> {
    Enumeration::new(move |k| std_terms(&[], n, 0, true, &mut |t, _, _| k(t)))
}

fn db_terms(depth: usize, fuel: usize, exact: bool, k: K<'_, DbTerm>) -> Flow {
    if !exact || fuel == 0 {
        for i in 0..depth {
            k(DbTerm::V(i), fuel)?;
        }
    }
    if fuel > 0 {
        db_terms(depth + 1, fuel - 1, exact, &mut |b, f| k(DbTerm::l(b), f))?;
        db_terms(depth, fuel - 1, false, &mut |a, f1| {
            db_terms(depth, f1, exact, &mut |b, f2| k(DbTerm::a(a.clone(), b), f2))
        })?;
    }
    GO
}

/// Closed de Bruijn terms; indices cost nothing.
pub fn gen_db(n: usize, mode: Mode) -> Enumeration<'static, DbTerm> {
    Enumeration::new(move |k| db_terms(0, n, mode.exact(), &mut |t, _| k(t)))
}

pub fn gen_compressed(n: usize, mode: Mode) -> Enumeration<'static, CompTerm> {
    gen_db(n, mode).map(|t| db_to_compressed(&t))
}

pub fn gen_standard(n: usize, mode: Mode) -> Enumeration<'static, StdTerm> {
    gen_db(n, mode).map(|t| db_to_std(&t))
}

fn nf_terms(depth: usize, fuel: usize, exact: bool, k: K<'_, DbTerm>) -> Flow {
    if !exact || fuel == 0 {
        for i in 0..depth {
            k(DbTerm::V(i), fuel)?;
        }
    }
    if fuel > 0 {
        nf_terms(depth + 1, fuel - 1, exact, &mut |b, f| k(DbTerm::l(b), f))?;
        nf_apps(depth, fuel, exact, k)?;
    }
    GO
}

// applications whose head is not an abstraction
fn nf_apps(depth: usize, fuel: usize, exact: bool, k: K<'_, DbTerm>) -> Flow {
    if fuel == 0 {
        return GO;
    }
    for i in 0..depth {
        nf_terms(depth, fuel - 1, exact, &mut |b, f| k(DbTerm::a(DbTerm::V(i), b), f))?;
    }
    nf_apps(depth, fuel - 1, false, &mut |a, f1| {
        nf_terms(depth, f1, exact, &mut |b, f2| k(DbTerm::a(a.clone(), b), f2))
    })
}

/// Closed β-normal forms.
pub fn gen_nf(n: usize, mode: Mode) -> Enumeration<'static, CompTerm> {
    Enumeration::new(move |k| nf_terms(0, n, mode.exact(), &mut |t, _| k(db_to_compressed(&t))))
}

/// Splits of `vs` into two order-preserving parts.
fn splits(vs: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    match vs.split_first() {
        None => vec![(Vec::new(), Vec::new())],
        Some((x, rest)) => {
            let mut out = Vec::new();
            for (ys, zs) in splits(rest) {
                let mut a = vec![*x];
                a.extend(&ys);
                out.push((a, zs.clone()));
                let mut b = vec![*x];
                b.extend(&zs);
                out.push((ys, b));
            }
            out
        }
    }
}

// `vs` holds the depths of the still unused binders, newest first
fn linear(vs: &[usize], depth: usize, fuel: usize, exact: bool, affine: bool, k: K<'_, DbTerm>) -> Flow {
    if !exact || fuel == 0 {
        let ok = if affine { !vs.is_empty() } else { vs.len() == 1 };
        if ok {
            k(DbTerm::V(depth - 1 - vs[0]), fuel)?;
        }
    }
    if fuel > 0 {
        let mut inner = vec![depth];
        inner.extend_from_slice(vs);
        linear(&inner, depth + 1, fuel - 1, exact, affine, &mut |b, f| k(DbTerm::l(b), f))?;
        for (ys, zs) in splits(vs) {
            linear(&ys, depth, fuel - 1, false, affine, &mut |a, f1| {
                linear(&zs, depth, f1, exact, affine, &mut |b, f2| k(DbTerm::a(a.clone(), b), f2))
            })?;
        }
    }
    GO
}

/// Linear terms: every binder used exactly once.
pub fn gen_linear(n: usize) -> Enumeration<'static, CompTerm> {
    Enumeration::new(move |k| linear(&[], 0, n, true, false, &mut |t, _| k(db_to_compressed(&t))))
}

/// Affine terms: every binder used at most once.
pub fn gen_affine(n: usize) -> Enumeration<'static, CompTerm> {
    Enumeration::new(move |k| linear(&[], 0, n, true, true, &mut |t, _| k(db_to_compressed(&t))))
}

fn bounded(depth: usize, d: usize, fuel: usize, exact: bool, k: K<'_, DbTerm>) -> Flow {
    if !exact || fuel == 0 {
        for i in 0..depth {
            k(DbTerm::V(i), fuel)?;
        }
    }
    if fuel > 0 {
        if d > 0 {
            bounded(depth + 1, d - 1, fuel - 1, exact, &mut |b, f| k(DbTerm::l(b), f))?;
        }
        bounded(depth, d, fuel - 1, false, &mut |a, f1| {
            bounded(depth, d, f1, exact, &mut |b, f2| k(DbTerm::a(a.clone(), b), f2))
        })?;
    }
    GO
}

/// Closed terms with at most `d` binders on any root-to-leaf path.
pub fn gen_bounded_unary(d: usize, n: usize, mode: Mode) -> Enumeration<'static, CompTerm> {
    Enumeration::new(move |k| bounded(0, d, n, mode.exact(), &mut |t, _| k(db_to_compressed(&t))))
}

fn blc_terms(depth: usize, bits: usize, exact: bool, k: K<'_, DbTerm>) -> Flow {
    for x in 1..=depth {
        let cost = x + 1;
        if cost <= bits && (!exact || cost == bits) {
            k(DbTerm::V(x), bits - cost)?;
        }
    }
    if bits >= 2 {
        blc_terms(depth + 1, bits - 2, exact, &mut |b, f| k(DbTerm::l(b), f))?;
        blc_terms(depth, bits - 2, false, &mut |a, f1| {
            blc_terms(depth, f1, exact, &mut |b, f2| k(DbTerm::a(a.clone(), b), f2))
        })?;
    }
    GO
}

/// Binary lambda calculus code of a compressed term with 1-based indices.
pub fn blc_encode(t: &CompTerm) -> Vec<u8> {
    fn go(t: &DbTerm, out: &mut Vec<u8>) {
        match t {
            DbTerm::V(x) => {
                out.extend(std::iter::repeat_n(1, *x));
                out.push(0);
            }
            DbTerm::L(b) => {
                out.extend([0, 0]);
                go(b, out);
            }
            DbTerm::A(a, b) => {
                out.extend([0, 1]);
                go(a, out);
                go(b, out);
            }
        }
    }
    let mut out = Vec::new();
    go(&crate::term::compressed_to_db(t), &mut out);
    out
}

/// Decode a complete code; `None` if malformed or not closed.
pub fn blc_decode(bits: &[u8]) -> Option<CompTerm> {
    fn go(bits: &[u8], pos: &mut usize, depth: usize) -> Option<DbTerm> {
        match (bits.get(*pos)?, bits.get(*pos + 1)) {
            (0, Some(0)) => {
                *pos += 2;
                Some(DbTerm::l(go(bits, pos, depth + 1)?))
            }
            (0, Some(1)) => {
                *pos += 2;
                let a = go(bits, pos, depth)?;
                Some(DbTerm::a(a, go(bits, pos, depth)?))
            }
            (1, _) => {
                let mut x = 0;
                while *bits.get(*pos)? == 1 {
                    x += 1;
                    *pos += 1;
                }
                *pos += 1;
                (x <= depth).then_some(DbTerm::V(x))
            }
            _ => None,
        }
    }
    let mut pos = 0;
    let t = go(bits, &mut pos, 0)?;
    (pos == bits.len()).then(|| db_to_compressed(&t))
}

/// Closed terms whose binary lambda calculus code has exactly `bits` bits.
/// Indices in the result are 1-based.
pub fn gen_blc(bits: usize) -> Enumeration<'static, (CompTerm, Vec<u8>)> {
    Enumeration::new(move |k| {
        blc_terms(0, bits, true, &mut |t, _| {
            let c = db_to_compressed(&t);
            let code = blc_encode(&c);
            k((c, code))
        })
    })
}

/// Typable terms by filtering.
pub fn gen_typable(n: usize, mode: Mode) -> Enumeration<'static, CompTerm> {
    gen_compressed(n, mode).filter(typable)
}

// ------------------------------------------------------------ typed terms

#[derive(Clone, Copy)]
struct Ctx<'a> {
    head: Option<&'a CtxNode<'a>>,
}

struct CtxNode<'a> {
    ty: TyId,
    next: Option<&'a CtxNode<'a>>,
}

impl<'a> Ctx<'a> {
    fn iter(self) -> impl Iterator<Item = TyId> + 'a {
        std::iter::successors(self.head, |n| n.next).map(|n| n.ty)
    }
}

struct Typed {
    u: Unifier,
}

type TK<'k> = &'k mut dyn FnMut(&mut Typed, DbTerm, usize) -> Flow;

impl Typed {
    // clause order: variable, application, abstraction
    fn go(&mut self, ty: TyId, ctx: Ctx<'_>, fuel: usize, exact: bool, k: TK<'_>) -> Flow {
        if !exact || fuel == 0 {
            for (i, vt) in ctx.iter().enumerate() {
                let m = self.u.mark();
                if self.u.unify(ty, vt) {
                    k(self, DbTerm::V(i), fuel)?;
                }
                self.u.undo(m);
            }
        }
        if fuel == 0 {
            return GO;
        }
        let m = self.u.mark();
        let x = self.u.fresh();
        let xy = self.u.arrow(x, ty);
        self.go(xy, ctx, fuel - 1, false, &mut |s, a, f1| {
            s.go(x, ctx, f1, exact, &mut |s2, b, f2| k(s2, DbTerm::a(a.clone(), b), f2))
        })?;
        self.u.undo(m);

        let m = self.u.mark();
        let x = self.u.fresh();
        let y = self.u.fresh();
        let xy = self.u.arrow(x, y);
        if self.u.unify(ty, xy) {
            let node = CtxNode { ty: x, next: ctx.head };
            let inner = Ctx { head: Some(&node) };
            self.go(y, inner, fuel - 1, exact, &mut |s, b, f| k(s, DbTerm::l(b), f))?;
        }
        self.u.undo(m);
        GO
    }
}

/// Generate terms together with their types, pruning untypable partial terms.
/// `free` fresh variables form the outer context; `goal` pre-binds the root type.
fn typed_search(
    n: usize,
    mode: Mode,
    free: usize,
    goal: Option<&BinTree>,
    k: &mut dyn FnMut(DbTerm, BinTree) -> Flow,
) -> Flow {
    let mut g = Typed { u: Unifier::new(true) };
    let root = match goal {
        Some(t) => g.u.build(&t.into(), &mut Default::default()),
        None => g.u.fresh(),
    };
    let frees: Vec<TyId> = (0..free).map(|_| g.u.fresh()).collect();
    fn with_ctx<R>(frees: &[TyId], ctx: Ctx<'_>, f: &mut dyn FnMut(Ctx<'_>) -> R) -> R {
        match frees.split_last() {
            None => f(ctx),
            Some((last, rest)) => {
                let node = CtxNode { ty: *last, next: ctx.head };
                with_ctx(rest, Ctx { head: Some(&node) }, f)
            }
        }
    }
    with_ctx(&frees, Ctx { head: None }, &mut |ctx| {
        g.go(root, ctx, n, mode.exact(), &mut |s, t, _| {
            let ty = s.u.ground(root);
            k(t, ty)
        })
    })
}

/// Closed simply-typed terms with their types.
pub fn gen_typed(n: usize, mode: Mode) -> Enumeration<'static, (DbTerm, BinTree)> {
    Enumeration::new(move |k| typed_search(n, mode, 0, None, &mut |t, ty| k((t, ty))))
}

/// The naive oracle: generate closed terms, then infer.
pub fn gen_typed_by_filter(n: usize, mode: Mode) -> Enumeration<'static, (DbTerm, BinTree)> {
    gen_db(n, mode).filter_map(|t| crate::typeinf::infer_db(&t).map(|ty| (t, ty)))
}

/// Typed terms of size `n` over contexts of 0, 1, …, `max_free` free variables, in that order.
/// A term that needs fewer free variables appears once per context that admits it.
pub fn gen_typed_with_free(n: usize, max_free: usize) -> Enumeration<'static, (DbTerm, BinTree)> {
    Enumeration::new(move |k| {
        for free in 0..=max_free {
            typed_search(n, Mode::Exact, free, None, &mut |t, ty| k((t, ty)))?;
        }
        GO
    })
}

/// Closed terms whose principal type, bound to `x`, is exactly `ty`.
pub fn query_typed(n: usize, ty: &BinTree, mode: Mode) -> Enumeration<'static, DbTerm> {
    let ty = ty.clone();
    Enumeration::new(move |k| {
        typed_search(n, mode, 0, Some(&ty), &mut |t, _| {
            if crate::typeinf::infer_db(&t).as_ref() == Some(&ty) {
                k(t)
            } else {
                GO
            }
        })
    })
}

/// For each type of size `n`, its inhabitants of size at most `n`.
pub fn gen_by_type(n: usize) -> Enumeration<'static, (DbTerm, BinTree)> {
    Enumeration::new(move |k| {
        gen_type(n, Mode::Exact).try_for_each(|ty| {
            query_typed(n, &ty, Mode::Upto).try_for_each(|t| k((t, ty.clone())))
        })
    })
}

// ---------------------------------------------------------------- SK terms

fn sk_terms(fuel: usize, exact: bool, k: K<'_, SkTerm>) -> Flow {
    if !exact || fuel == 0 {
        k(SkTerm::K, fuel)?;
        k(SkTerm::S, fuel)?;
    }
    if fuel > 0 {
        sk_terms(fuel - 1, false, &mut |a, f1| {
            sk_terms(f1, exact, &mut |b, f2| k(SkTerm::ap(a.clone(), b), f2))
        })?;
    }
    GO
}

pub fn gen_sk(n: usize, mode: Mode) -> Enumeration<'static, SkTerm> {
    Enumeration::new(move |k| sk_terms(n, mode.exact(), &mut |t, _| k(t)))
}

pub fn gen_typed_sk(n: usize, mode: Mode) -> Enumeration<'static, (SkTerm, BinTree)> {
    gen_sk(n, mode).filter_map(|t| infer_sk_simple(&t).map(|ty| (t, ty)))
}

pub fn gen_untypable_sk(n: usize, mode: Mode) -> Enumeration<'static, SkTerm> {
    gen_sk(n, mode).filter(|t| !typable_sk(t))
}

/// For each type τ of size `n`, the SK terms of size at most `n` whose principal type
/// has τ as an instance.
pub fn gen_by_type_sk(n: usize) -> Enumeration<'static, (SkTerm, BinTree)> {
    Enumeration::new(move |k| {
        let mut u = Unifier::new(true);
        let mut typed = Vec::new();
        gen_sk(n, Mode::Upto).for_each(|t| {
            let m = u.mark();
            match sk_type(&mut u, &t) {
                Some(id) => typed.push((t, id)),
                None => u.undo(m),
            }
        });
        gen_type(n, Mode::Exact).try_for_each(|ty| {
            for (t, id) in &typed {
                let m = u.mark();
                let want = u.build(&(&ty).into(), &mut Default::default());
                let ok = u.unify(*id, want);
                u.undo(m);
                if ok {
                    k((t.clone(), ty.clone()))?;
                }
            }
            GO
        })
    })
}
