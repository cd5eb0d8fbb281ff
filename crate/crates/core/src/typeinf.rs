//! Simple-type inference by first-order unification.
//!
//! One engine serves every term species. It keeps a union-find store with a trail so that
//! generators can undo bindings when they backtrack.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::reduce::x_to_db;
use crate::term::{BinTree, CompTerm, DbTerm, Name, SkTerm, StdTerm};
use crate::term::compressed_to_db;

/// Type expression with metavariables. `Mu`/`Rec` only appear in cyclic results.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypeExpr {
    Meta(usize),
    Base,
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
    Mu(usize, Box<TypeExpr>),
    Rec(usize),
}

impl TypeExpr {
    pub fn arrow(a: TypeExpr, b: TypeExpr) -> Self {
        TypeExpr::Arrow(Box::new(a), Box::new(b))
    }

    pub fn is_cyclic(&self) -> bool {
        match self {
            TypeExpr::Mu(..) | TypeExpr::Rec(_) => true,
            TypeExpr::Arrow(a, b) => a.is_cyclic() || b.is_cyclic(),
            _ => false,
        }
    }
}

impl From<&BinTree> for TypeExpr {
    fn from(t: &BinTree) -> Self {
        match t {
            BinTree::Leaf => TypeExpr::Base,
            BinTree::Node(a, b) => TypeExpr::arrow(a.as_ref().into(), b.as_ref().into()),
        }
    }
}

fn meta_name(i: usize) -> String {
    if i < 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("T{i}")
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(t: &TypeExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                TypeExpr::Arrow(..) | TypeExpr::Mu(..) => write!(f, "({t})"),
                _ => write!(f, "{t}"),
            }
        }
        match self {
            TypeExpr::Meta(i) => f.write_str(&meta_name(*i)),
            TypeExpr::Base => f.write_str("x"),
            TypeExpr::Arrow(a, b) => {
                child(a, f)?;
                f.write_str(">")?;
                child(b, f)
            }
            TypeExpr::Mu(i, b) => write!(f, "mu R{i}.{b}"),
            TypeExpr::Rec(i) => write!(f, "R{i}"),
        }
    }
}

pub type TyId = u32;

#[derive(Clone, Copy, Debug)]
enum Node {
    Var,
    Base,
    Arrow(TyId, TyId),
}

/// Saved store state, see [`Unifier::mark`].
#[derive(Clone, Copy, Debug)]
pub struct Mark {
    nodes: usize,
    trail: usize,
}

/// Union-find type store. With `occurs_check` off it performs rational-tree unification.
#[derive(Clone, Debug)]
pub struct Unifier {
    nodes: Vec<Node>,
    parent: Vec<TyId>,
    trail: Vec<TyId>,
    occurs_check: bool,
}

impl Unifier {
    pub fn new(occurs_check: bool) -> Self {
        Unifier { nodes: Vec::new(), parent: Vec::new(), trail: Vec::new(), occurs_check }
    }

    fn push(&mut self, n: Node) -> TyId {
        let id = self.nodes.len() as TyId;
        self.nodes.push(n);
        self.parent.push(id);
        id
    }

    pub fn fresh(&mut self) -> TyId {
        self.push(Node::Var)
    }

    pub fn base(&mut self) -> TyId {
        self.push(Node::Base)
    }

    pub fn arrow(&mut self, a: TyId, b: TyId) -> TyId {
        self.push(Node::Arrow(a, b))
    }

    pub fn mark(&self) -> Mark {
        Mark { nodes: self.nodes.len(), trail: self.trail.len() }
    }

    /// Forget every binding and node created since `m`.
    pub fn undo(&mut self, m: Mark) {
        for id in self.trail.drain(m.trail..) {
            self.parent[id as usize] = id;
        }
        self.nodes.truncate(m.nodes);
        self.parent.truncate(m.nodes);
    }

    pub fn find(&self, mut id: TyId) -> TyId {
        loop {
            let p = self.parent[id as usize];
            if p == id {
                return id;
            }
            id = p;
        }
    }

    fn link(&mut self, from: TyId, to: TyId) {
        self.parent[from as usize] = to;
        self.trail.push(from);
    }

    fn occurs(&self, v: TyId, t: TyId) -> bool {
        let t = self.find(t);
        if t == v {
            return true;
        }
        match self.nodes[t as usize] {
            Node::Arrow(a, b) => self.occurs(v, a) || self.occurs(v, b),
            _ => false,
        }
    }

    /// Unify two types. On failure the store may hold partial bindings; undo to a mark.
    pub fn unify(&mut self, a: TyId, b: TyId) -> bool {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return true;
        }
        match (self.nodes[a as usize], self.nodes[b as usize]) {
            (Node::Var, _) => self.bind(a, b),
            (_, Node::Var) => self.bind(b, a),
            (Node::Base, Node::Base) => true,
            (Node::Arrow(a1, a2), Node::Arrow(b1, b2)) => {
                if !self.occurs_check {
                    self.link(a, b);
                }
                self.unify(a1, b1) && self.unify(a2, b2)
            }
            _ => false,
        }
    }

    fn bind(&mut self, v: TyId, t: TyId) -> bool {
        if self.occurs_check && self.occurs(v, t) {
            return false;
        }
        self.link(v, t);
        true
    }

    /// Bind every metavariable to the base type and read the result back.
    pub fn ground(&self, id: TyId) -> BinTree {
        match self.nodes[self.find(id) as usize] {
            Node::Arrow(a, b) => BinTree::node(self.ground(a), self.ground(b)),
            _ => BinTree::Leaf,
        }
    }

    /// Read back with metavariables named in order of first occurrence.
    pub fn read(&self, id: TyId) -> TypeExpr {
        let mut names = HashMap::new();
        let mut path = Vec::new();
        self.read_into(id, &mut names, &mut path)
    }

    fn read_into(
        &self,
        id: TyId,
        names: &mut HashMap<TyId, usize>,
        path: &mut Vec<(TyId, bool)>,
    ) -> TypeExpr {
        let r = self.find(id);
        match self.nodes[r as usize] {
            Node::Var => {
                let n = names.len();
                TypeExpr::Meta(*names.entry(r).or_insert(n))
            }
            Node::Base => TypeExpr::Base,
            Node::Arrow(a, b) => {
                if let Some(pos) = path.iter().position(|(p, _)| *p == r) {
                    path[pos].1 = true;
                    return TypeExpr::Rec(pos);
                }
                path.push((r, false));
                let ta = self.read_into(a, names, path);
                let tb = self.read_into(b, names, path);
                let (_, used) = path.pop().unwrap();
                let t = TypeExpr::arrow(ta, tb);
                if used {
                    TypeExpr::Mu(path.len(), Box::new(t))
                } else {
                    t
                }
            }
        }
    }

    /// Build a type expression into the store; metas are looked up or created in `metas`.
    pub fn build(&mut self, t: &TypeExpr, metas: &mut HashMap<usize, TyId>) -> TyId {
        let mut recs = Vec::new();
        self.build_rec(t, metas, &mut recs)
    }

    fn build_rec(
        &mut self,
        t: &TypeExpr,
        metas: &mut HashMap<usize, TyId>,
        recs: &mut Vec<(usize, TyId)>,
    ) -> TyId {
        match t {
            TypeExpr::Meta(i) => match metas.get(i) {
                Some(id) => *id,
                None => {
                    let id = self.fresh();
                    metas.insert(*i, id);
                    id
                }
            },
            TypeExpr::Base => self.base(),
            TypeExpr::Arrow(a, b) => {
                let a = self.build_rec(a, metas, recs);
                let b = self.build_rec(b, metas, recs);
                self.arrow(a, b)
            }
            TypeExpr::Mu(i, b) => {
                let v = self.fresh();
                recs.push((*i, v));
                let body = self.build_rec(b, metas, recs);
                recs.pop();
                self.link(v, body);
                body
            }
            TypeExpr::Rec(i) => recs.iter().rev().find(|(j, _)| j == i).map(|(_, v)| *v).unwrap_or_else(|| self.fresh()),
        }
    }
}

/// Finite substitution from metavariable ids to types.
pub type Bindings = HashMap<usize, TypeExpr>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("type clash")]
    Clash,
    #[error("occurs check failure")]
    Occurs,
}

fn load(
    a: &TypeExpr,
    b: &TypeExpr,
    bindings: &Bindings,
    occurs_check: bool,
) -> (Unifier, HashMap<usize, TyId>, bool) {
    let mut u = Unifier::new(occurs_check);
    let mut metas = HashMap::new();
    let ia = u.build(a, &mut metas);
    let ib = u.build(b, &mut metas);
    let mut pairs: Vec<_> = bindings.iter().collect();
    pairs.sort_by_key(|(k, _)| **k);
    let mut ok = true;
    for (k, t) in pairs {
        let v = match metas.get(k) {
            Some(id) => *id,
            None => {
                let id = u.fresh();
                metas.insert(*k, id);
                id
            }
        };
        let it = u.build(t, &mut metas);
        ok = ok && u.unify(v, it);
    }
    ok = ok && u.unify(ia, ib);
    (u, metas, ok)
}

/// Most general unifier of `a` and `b` extending `bindings`.
pub fn unify(
    a: &TypeExpr,
    b: &TypeExpr,
    bindings: &Bindings,
    occurs_check: bool,
) -> Result<Bindings, UnifyError> {
    let (u, metas, ok) = load(a, b, bindings, occurs_check);
    if !ok {
        // a problem that only fails with the occurs check on is an occurs failure
        return Err(if occurs_check && load(a, b, bindings, false).2 {
            UnifyError::Occurs
        } else {
            UnifyError::Clash
        });
    }
    let mut out = Bindings::new();
    let mut ids: Vec<_> = metas.into_iter().collect();
    ids.sort();
    for (k, id) in ids {
        let r = u.find(id);
        if r != id || !matches!(u.nodes[r as usize], Node::Var) {
            out.insert(k, read_named(&u, id));
        }
    }
    Ok(out)
}

/// Read back keeping metavariable identities as store ids so that bindings stay consistent.
fn read_named(u: &Unifier, id: TyId) -> TypeExpr {
    fn go(u: &Unifier, id: TyId, path: &mut Vec<(TyId, bool)>) -> TypeExpr {
        let r = u.find(id);
        match u.nodes[r as usize] {
            Node::Var => TypeExpr::Meta(r as usize),
            Node::Base => TypeExpr::Base,
            Node::Arrow(a, b) => {
                if let Some(pos) = path.iter().position(|(p, _)| *p == r) {
                    path[pos].1 = true;
                    return TypeExpr::Rec(pos);
                }
                path.push((r, false));
                let t = TypeExpr::arrow(go(u, a, path), go(u, b, path));
                let (_, used) = path.pop().unwrap();
                if used {
                    TypeExpr::Mu(path.len(), Box::new(t))
                } else {
                    t
                }
            }
        }
    }
    go(u, id, &mut Vec::new())
}

/// Replace every metavariable by the base type.
pub fn bind_base(t: &TypeExpr) -> BinTree {
    match t {
        TypeExpr::Arrow(a, b) => BinTree::node(bind_base(a), bind_base(b)),
        _ => BinTree::Leaf,
    }
}

fn db_type(u: &mut Unifier, t: &DbTerm, ctx: &mut Vec<TyId>) -> Option<TyId> {
    match t {
        DbTerm::V(i) => {
            let d = ctx.len();
            if *i < d {
                Some(ctx[d - 1 - i])
            } else {
                None
            }
        }
        DbTerm::A(a, b) => {
            let x = u.fresh();
            let y = u.fresh();
            let xy = u.arrow(x, y);
            let ta = db_type(u, a, ctx)?;
            if !u.unify(ta, xy) {
                return None;
            }
            let tb = db_type(u, b, ctx)?;
            u.unify(tb, x).then_some(y)
        }
        DbTerm::L(body) => {
            let x = u.fresh();
            ctx.push(x);
            let tb = db_type(u, body, ctx);
            ctx.pop();
            let tb = tb?;
            Some(u.arrow(x, tb))
        }
    }
}

/// Principal type of a closed de Bruijn term.
pub fn principal_db(t: &DbTerm) -> Option<TypeExpr> {
    let mut u = Unifier::new(true);
    let ty = db_type(&mut u, t, &mut Vec::new())?;
    Some(u.read(ty))
}

/// Simple type of a closed de Bruijn term, metavariables bound to `x`.
pub fn infer_db(t: &DbTerm) -> Option<BinTree> {
    let mut u = Unifier::new(true);
    let ty = db_type(&mut u, t, &mut Vec::new())?;
    Some(u.ground(ty))
}

/// True when `t` can be given the ground type `ty`.
pub fn check_db(t: &DbTerm, ty: &BinTree) -> bool {
    let mut u = Unifier::new(true);
    let Some(inferred) = db_type(&mut u, t, &mut Vec::new()) else {
        return false;
    };
    let want = u.build(&ty.into(), &mut HashMap::new());
    u.unify(inferred, want)
}

pub fn infer_compressed(t: &CompTerm) -> Option<BinTree> {
    infer_db(&compressed_to_db(t))
}

pub fn typable(t: &CompTerm) -> bool {
    infer_compressed(t).is_some()
}

/// Principal type of a standard term; free names get one metavariable each.
pub fn infer_std(t: &StdTerm) -> Option<TypeExpr> {
    fn go(
        u: &mut Unifier,
        t: &StdTerm,
        env: &mut Vec<(usize, TyId)>,
        free: &mut HashMap<usize, TyId>,
    ) -> Option<TyId> {
        match t {
            StdTerm::Var(Name::X(n)) => env.iter().rev().find(|(m, _)| m == n).map(|(_, ty)| *ty),
            StdTerm::Var(Name::F(n)) => Some(match free.get(n) {
                Some(ty) => *ty,
                None => {
                    let ty = u.fresh();
                    free.insert(*n, ty);
                    ty
                }
            }),
            StdTerm::Lam(n, b) => {
                let x = u.fresh();
                env.push((*n, x));
                let tb = go(u, b, env, free);
                env.pop();
                let tb = tb?;
                Some(u.arrow(x, tb))
            }
            StdTerm::App(a, b) => {
                let ta = go(u, a, env, free)?;
                let tb = go(u, b, env, free)?;
                let y = u.fresh();
                let want = u.arrow(tb, y);
                u.unify(ta, want).then_some(y)
            }
        }
    }
    let mut u = Unifier::new(true);
    let ty = go(&mut u, t, &mut Vec::new(), &mut HashMap::new())?;
    Some(u.read(ty))
}

/// Type schemas of the K and S combinators, built fresh on each call.
fn sk_axiom(u: &mut Unifier, leaf: &SkTerm) -> TyId {
    match leaf {
        SkTerm::K => {
            let a = u.fresh();
            let b = u.fresh();
            let ba = u.arrow(b, a);
            u.arrow(a, ba)
        }
        _ => {
            let a = u.fresh();
            let b = u.fresh();
            let c = u.fresh();
            let bc = u.arrow(b, c);
            let abc = u.arrow(a, bc);
            let ab = u.arrow(a, b);
            let ac = u.arrow(a, c);
            let abac = u.arrow(ab, ac);
            u.arrow(abc, abac)
        }
    }
}

pub(crate) fn sk_type(u: &mut Unifier, t: &SkTerm) -> Option<TyId> {
    match t {
        SkTerm::Ap(a, b) => {
            let ta = sk_type(u, a)?;
            let tb = sk_type(u, b)?;
            let y = u.fresh();
            let want = u.arrow(tb, y);
            u.unify(ta, want).then_some(y)
        }
        leaf => Some(sk_axiom(u, leaf)),
    }
}

pub fn infer_sk(t: &SkTerm) -> Option<TypeExpr> {
    let mut u = Unifier::new(true);
    let ty = sk_type(&mut u, t)?;
    Some(u.read(ty))
}

pub fn infer_sk_simple(t: &SkTerm) -> Option<BinTree> {
    let mut u = Unifier::new(true);
    let ty = sk_type(&mut u, t)?;
    Some(u.ground(ty))
}

pub fn typable_sk(t: &SkTerm) -> bool {
    let mut u = Unifier::new(true);
    sk_type(&mut u, t).is_some()
}

/// SK typing with rational-tree unification; never fails.
pub fn useless_type(t: &SkTerm) -> TypeExpr {
    let mut u = Unifier::new(false);
    let ty = sk_type(&mut u, t).expect("cyclic unification of arrows and variables cannot clash");
    u.read(ty)
}

/// How [`infer_x`] obtains the type of an X-tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XMode {
    /// Infer the type of the de Bruijn expansion.
    Borrowed,
    /// Unify fresh copies of the X combinator's type at each node.
    Direct,
}

fn x_schema() -> &'static TypeExpr {
    use std::sync::OnceLock;
    static XT: OnceLock<TypeExpr> = OnceLock::new();
    XT.get_or_init(|| principal_db(&x_to_db(&BinTree::Leaf)).expect("X is typable"))
}

pub fn infer_x(t: &BinTree, mode: XMode) -> Option<BinTree> {
    match mode {
        XMode::Borrowed => infer_db(&x_to_db(t)),
        XMode::Direct => {
            fn go(u: &mut Unifier, t: &BinTree) -> Option<TyId> {
                match t {
                    BinTree::Leaf => Some(u.build(x_schema(), &mut HashMap::new())),
                    BinTree::Node(a, b) => {
                        let ta = go(u, a)?;
                        let tb = go(u, b)?;
                        let y = u.fresh();
                        let want = u.arrow(tb, y);
                        u.unify(ta, want).then_some(y)
                    }
                }
            }
            let mut u = Unifier::new(true);
            let ty = go(&mut u, t)?;
            Some(u.ground(ty))
        }
    }
}

/// Borrowed X typing.
pub fn xtype(t: &BinTree) -> Option<BinTree> {
    infer_x(t, XMode::Borrowed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::db_to_std;

    fn tree(s: &str) -> BinTree {
        s.parse().unwrap()
    }

    #[test]
    fn unify_examples() {
        let m0 = TypeExpr::Meta(0);
        let xx = TypeExpr::arrow(TypeExpr::Base, TypeExpr::Base);
        let b = unify(&m0, &xx, &Bindings::new(), true).unwrap();
        assert_eq!(b.get(&0), Some(&xx));
        let loop_ty = TypeExpr::arrow(TypeExpr::Meta(0), TypeExpr::Base);
        assert_eq!(unify(&m0, &loop_ty, &Bindings::new(), true), Err(UnifyError::Occurs));
        let cyc = unify(&m0, &loop_ty, &Bindings::new(), false).unwrap();
        assert!(cyc[&0].is_cyclic());
        assert_eq!(unify(&TypeExpr::Base, &xx, &Bindings::new(), true), Err(UnifyError::Clash));
    }

    #[test]
    fn std_examples() {
        let t: StdTerm = "l(x0,a(x0,l(x1,x1)))".parse().unwrap();
        let ty = infer_std(&t).unwrap();
        assert_eq!(ty.to_string(), "((A>A)>B)>B");
        assert_eq!(bind_base(&ty).to_string(), "((x>x)>x)>x");
        assert_eq!(infer_std(&"l(x0,x0)".parse().unwrap()).unwrap().to_string(), "A>A");
        assert!(infer_std(&"a(f0,f0)".parse().unwrap()).is_none());
    }

    #[test]
    fn db_examples() {
        let s: DbTerm = "l(l(l(a(a(v(2),v(0)),a(v(1),v(0))))))".parse().unwrap();
        assert_eq!(infer_db(&s).unwrap().to_string(), "(x>(x>x))>((x>x)>(x>x))");
        let y: DbTerm = "l(a(l(a(v(1),a(v(0),v(0)))),l(a(v(1),a(v(0),v(0))))))".parse().unwrap();
        assert!(infer_db(&y).is_none());
        assert_eq!(infer_db(&"l(v(0))".parse().unwrap()).unwrap(), tree("x>x"));
        let c: CompTerm = "a(3,a(0,v(0,2),v(0,0)),a(0,v(0,1),v(0,0)))".parse().unwrap();
        assert_eq!(infer_compressed(&c), infer_db(&s));
        assert_eq!(infer_std(&db_to_std(&s)).map(|t| bind_base(&t)), infer_db(&s));
    }

    #[test]
    fn sk_examples() {
        let t: SkTerm = "k*s*k".parse().unwrap();
        assert_eq!(infer_sk_simple(&t).unwrap().to_string(), "(x>(x>x))>((x>x)>(x>x))");
        assert!(infer_sk_simple(&"s*s*(s*k*k)".parse().unwrap()).is_none());
        assert_eq!(infer_sk_simple(&SkTerm::K).unwrap(), tree("x>(x>x)"));
        assert_eq!(infer_sk(&SkTerm::K).unwrap().to_string(), "A>(B>A)");
        assert!(useless_type(&"s*s*(s*k*k)".parse().unwrap()).is_cyclic());
        assert_eq!(
            infer_sk_simple(&"s*(k*s)*k".parse().unwrap()).unwrap(),
            tree("(x>x)>((x>x)>(x>x))")
        );
    }

    #[test]
    fn x_examples() {
        let xt = tree("((x>(x>x))>(((x>(x>x))>((x>x)>(x>x)))>((x>(x>x))>x)))>x");
        assert_eq!(xtype(&BinTree::Leaf), Some(xt.clone()));
        assert_eq!(infer_x(&BinTree::Leaf, XMode::Direct), Some(xt));
        let skk = tree("((x>(x>x))>((x>x)>x))>((x>x)>x)");
        assert_eq!(infer_x(&skk, XMode::Borrowed), Some(tree("x>x")));
        assert_eq!(infer_x(&skk, XMode::Direct), Some(tree("x>x")));
        assert_eq!(xtype(&tree("(x>x)>x")), Some(tree("x>(x>x)")));
        assert_eq!(xtype(&tree("x>(x>x)")), Some(tree("(x>(x>x))>((x>x)>(x>x))")));
    }

    #[test]
    fn check_accepts_instances() {
        let id: DbTerm = "l(v(0))".parse().unwrap();
        assert!(check_db(&id, &tree("(x>x)>(x>x)")));
        assert!(!check_db(&id, &tree("x>(x>x)")));
    }
}
