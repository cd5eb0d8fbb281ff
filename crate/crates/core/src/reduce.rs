//! Normal-order reduction of de Bruijn terms and the SK and X combinator evaluators.

use thiserror::Error;

use crate::term::{compressed_to_db, db_to_compressed, db_to_std, std_to_db};
use crate::term::{BinTree, CompTerm, ConvertError, DbTerm, SkTerm, StdTerm};

/// Optional bound on rewrite steps. `None` means unbounded.
/// A bounded run also stops once it has copied more than [`NODE_BUDGET`] nodes.
pub type Fuel = Option<u64>;

pub const NODE_BUDGET: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("fuel exhausted after {0} steps")]
    Exhausted(u64),
    #[error("term growth exceeded {0} copied nodes")]
    TooLarge(u64),
    #[error(transparent)]
    Convert(#[from] ConvertError),
}

struct Meter {
    left: Option<u64>,
    used: u64,
    copied: u64,
}

impl Meter {
    fn new(fuel: Fuel) -> Self {
        Meter { left: fuel, used: 0, copied: 0 }
    }

    fn tick(&mut self) -> Result<(), ReduceError> {
        if let Some(n) = self.left.as_mut() {
            if *n == 0 {
                return Err(ReduceError::Exhausted(self.used));
            }
            *n -= 1;
        }
        self.used += 1;
        Ok(())
    }

    fn copy(&mut self, nodes: usize) -> Result<(), ReduceError> {
        if self.left.is_some() {
            self.copied += nodes as u64;
            if self.copied > NODE_BUDGET {
                return Err(ReduceError::TooLarge(NODE_BUDGET));
            }
        }
        Ok(())
    }
}

/// Add `inc` to every index at or above `cutoff`.
pub fn shift(inc: usize, cutoff: usize, t: &DbTerm) -> DbTerm {
    match t {
        DbTerm::V(n) if *n >= cutoff => DbTerm::V(n + inc),
        DbTerm::V(n) => DbTerm::V(*n),
        DbTerm::L(a) => DbTerm::l(shift(inc, cutoff + 1, a)),
        DbTerm::A(a, b) => DbTerm::a(shift(inc, cutoff, a), shift(inc, cutoff, b)),
    }
}

/// Replace index `level` in `body` by `arg`, decrementing the indices above it.
pub fn subst(body: &DbTerm, level: usize, arg: &DbTerm) -> DbTerm {
    match body {
        DbTerm::A(a, b) => DbTerm::a(subst(a, level, arg), subst(b, level, arg)),
        DbTerm::L(a) => DbTerm::l(subst(a, level + 1, arg)),
        DbTerm::V(n) if *n > level => DbTerm::V(n - 1),
        DbTerm::V(n) if *n < level => DbTerm::V(*n),
        DbTerm::V(_) => shift(level, 0, arg),
    }
}

/// Contract the redex `a(l(body), arg)`. Panics if `abs` is not an abstraction.
pub fn beta(abs: &DbTerm, arg: &DbTerm) -> DbTerm {
    match abs {
        DbTerm::L(body) => subst(body, 0, arg),
        _ => panic!("beta expects an abstraction"),
    }
}

fn wh(t: &DbTerm, m: &mut Meter) -> Result<DbTerm, ReduceError> {
    let mut cur = t.clone();
    loop {
        match cur {
            DbTerm::A(x, y) => {
                let x1 = wh(&x, m)?;
                match x1 {
                    DbTerm::L(_) => {
                        m.tick()?;
                        m.copy(y.size())?;
                        cur = beta(&x1, &y);
                    }
                    other => return Ok(DbTerm::A(Box::new(other), y)),
                }
            }
            other => return Ok(other),
        }
    }
}

fn nf(t: &DbTerm, m: &mut Meter) -> Result<DbTerm, ReduceError> {
    let mut cur = t.clone();
    loop {
        match cur {
            DbTerm::V(_) => return Ok(cur),
            DbTerm::L(e) => return Ok(DbTerm::l(nf(&e, m)?)),
            DbTerm::A(e1, e2) => {
                let ne = wh(&e1, m)?;
                match ne {
                    DbTerm::V(_) => return Ok(DbTerm::a(ne, nf(&e2, m)?)),
                    DbTerm::L(_) => {
                        m.tick()?;
                        m.copy(e2.size())?;
                        cur = beta(&ne, &e2);
                    }
                    DbTerm::A(..) => return Ok(DbTerm::a(nf(&ne, m)?, nf(&e2, m)?)),
                }
            }
        }
    }
}

/// Weak head normal form.
pub fn whnf(t: &DbTerm, fuel: Fuel) -> Result<DbTerm, ReduceError> {
    wh(t, &mut Meter::new(fuel))
}

/// Normal-order reduction to β-normal form.
pub fn nf_reduce(t: &DbTerm, fuel: Fuel) -> Result<DbTerm, ReduceError> {
    nf(t, &mut Meter::new(fuel))
}

pub fn eval_std(t: &StdTerm, fuel: Fuel) -> Result<StdTerm, ReduceError> {
    Ok(db_to_std(&nf_reduce(&std_to_db(t)?, fuel)?))
}

pub fn eval_compressed(t: &CompTerm, fuel: Fuel) -> Result<CompTerm, ReduceError> {
    Ok(db_to_compressed(&nf_reduce(&compressed_to_db(t), fuel)?))
}

/// `l(l(v(1)))`
pub fn k_db() -> DbTerm {
    DbTerm::l(DbTerm::l(DbTerm::v(1)))
}

/// `l(l(l(a(a(v(2),v(0)),a(v(1),v(0))))))`
pub fn s_db() -> DbTerm {
    let v = DbTerm::v;
    DbTerm::l(DbTerm::l(DbTerm::l(DbTerm::a(
        DbTerm::a(v(2), v(0)),
        DbTerm::a(v(1), v(0)),
    ))))
}

/// The X combinator, `X f = f K S K`.
pub fn x_db() -> DbTerm {
    DbTerm::l(DbTerm::a(
        DbTerm::a(DbTerm::a(DbTerm::v(0), k_db()), s_db()),
        k_db(),
    ))
}

pub fn sk_to_db(t: &SkTerm) -> DbTerm {
    match t {
        SkTerm::S => s_db(),
        SkTerm::K => k_db(),
        SkTerm::Ap(a, b) => DbTerm::a(sk_to_db(a), sk_to_db(b)),
    }
}

/// Replace leaves by [`x_db`] and nodes by applications.
pub fn x_to_db(t: &BinTree) -> DbTerm {
    match t {
        BinTree::Leaf => x_db(),
        BinTree::Node(a, b) => DbTerm::a(x_to_db(a), x_to_db(b)),
    }
}

fn app_sk_m(f: SkTerm, g: SkTerm, m: &mut Meter) -> Result<SkTerm, ReduceError> {
    match f {
        SkTerm::Ap(sx, y) if matches!(&*sx, SkTerm::Ap(s, _) if **s == SkTerm::S) => {
            m.tick()?;
            let SkTerm::Ap(_, x) = *sx else { unreachable!() };
            m.copy(g.size())?;
            let r1 = app_sk_m(*x, g.clone(), m)?;
            let r2 = app_sk_m(*y, g, m)?;
            app_sk_m(r1, r2, m)
        }
        SkTerm::Ap(k, x) if *k == SkTerm::K => {
            m.tick()?;
            Ok(*x)
        }
        f => Ok(SkTerm::ap(f, g)),
    }
}

fn eval_sk_m(t: &SkTerm, m: &mut Meter) -> Result<SkTerm, ReduceError> {
    match t {
        SkTerm::Ap(f, g) => {
            let f1 = eval_sk_m(f, m)?;
            let g1 = eval_sk_m(g, m)?;
            app_sk_m(f1, g1, m)
        }
        leaf => Ok(leaf.clone()),
    }
}

/// Apply `f` to `g` with the K and S rules.
pub fn app_sk(f: &SkTerm, g: &SkTerm) -> SkTerm {
    app_sk_m(f.clone(), g.clone(), &mut Meter::new(None)).expect("unbounded")
}

/// Evaluate both children, then apply. May diverge on untypable input.
pub fn eval_sk(t: &SkTerm) -> SkTerm {
    eval_sk_m(t, &mut Meter::new(None)).expect("unbounded")
}

/// [`eval_sk`] with a bound on K and S rewrites.
pub fn eval_sk_fuel(t: &SkTerm, fuel: Fuel) -> Result<SkTerm, ReduceError> {
    eval_sk_m(t, &mut Meter::new(fuel))
}

fn is_k_tree(t: &BinTree) -> bool {
    // (x>x)>x
    matches!(t, BinTree::Node(l, r) if r.is_leaf() && matches!(&**l, BinTree::Node(a, b) if a.is_leaf() && b.is_leaf()))
}

fn is_s_tree(t: &BinTree) -> bool {
    // x>(x>x)
    matches!(t, BinTree::Node(l, r) if l.is_leaf() && matches!(&**r, BinTree::Node(a, b) if a.is_leaf() && b.is_leaf()))
}

fn app_x_m(f: BinTree, g: BinTree, m: &mut Meter) -> Result<BinTree, ReduceError> {
    match f {
        // ((x>x)>x)>X applied to anything gives X
        BinTree::Node(k, x) if is_k_tree(&k) => {
            m.tick()?;
            Ok(*x)
        }
        BinTree::Node(sx, y) if matches!(&*sx, BinTree::Node(s, _) if is_s_tree(s)) => {
            m.tick()?;
            let BinTree::Node(_, x) = *sx else { unreachable!() };
            m.copy(g.size())?;
            let r1 = app_x_m(*x, g.clone(), m)?;
            let r2 = app_x_m(*y, g, m)?;
            app_x_m(r1, r2, m)
        }
        f => Ok(BinTree::node(f, g)),
    }
}

fn eval_x_m(t: &BinTree, m: &mut Meter) -> Result<BinTree, ReduceError> {
    match t {
        BinTree::Node(f, g) => {
            let f1 = eval_x_m(f, m)?;
            let g1 = eval_x_m(g, m)?;
            app_x_m(f1, g1, m)
        }
        BinTree::Leaf => Ok(BinTree::Leaf),
    }
}

pub fn app_x(f: &BinTree, g: &BinTree) -> BinTree {
    app_x_m(f.clone(), g.clone(), &mut Meter::new(None)).expect("unbounded")
}

/// Evaluate an X-combinator tree with the K-tree and S-tree rules.
pub fn eval_x(t: &BinTree) -> BinTree {
    eval_x_m(t, &mut Meter::new(None)).expect("unbounded")
}

pub fn eval_x_fuel(t: &BinTree, fuel: Fuel) -> Result<BinTree, ReduceError> {
    eval_x_m(t, &mut Meter::new(fuel))
}

/// Evaluate as an X-tree, then expand.
pub fn eval_as_t(t: &BinTree, fuel: Fuel) -> Result<DbTerm, ReduceError> {
    Ok(x_to_db(&eval_x_fuel(t, fuel)?))
}

/// Expand, then reduce as a lambda term.
pub fn eval_as_b(t: &BinTree, fuel: Fuel) -> Result<DbTerm, ReduceError> {
    nf_reduce(&x_to_db(t), fuel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn db(s: &str) -> DbTerm {
        s.parse().unwrap()
    }

    fn tree(s: &str) -> BinTree {
        s.parse().unwrap()
    }

    fn sk(s: &str) -> SkTerm {
        s.parse().unwrap()
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&db("l(v(0))"), &k_db()), k_db());
        assert_eq!(beta(&db("l(l(v(1)))"), &db("v(5)")), db("l(v(6))"));
        assert_eq!(beta(&db("l(v(1))"), &k_db()), db("v(0)"));
    }

    #[test]
    fn whnf_keeps_inner_redexes() {
        let t = db("a(l(v(0)),l(a(l(v(0)),v(0))))");
        assert_eq!(whnf(&t, None).unwrap(), db("l(a(l(v(0)),v(0)))"));
        assert_eq!(whnf(&db("v(0)"), None).unwrap(), db("v(0)"));
    }

    #[test]
    fn normal_forms() {
        let skk = DbTerm::a(DbTerm::a(s_db(), k_db()), k_db());
        assert_eq!(nf_reduce(&skk, None).unwrap(), db("l(v(0))"));
        let c: CompTerm = "a(0,a(0,a(3,a(0,v(0,2),v(0,0)),a(0,v(0,1),v(0,0))),v(2,1)),v(2,1))"
            .parse()
            .unwrap();
        assert_eq!(eval_compressed(&c, None).unwrap(), CompTerm::v(1, 0));
        let omega = db("a(l(a(v(0),v(0))),l(a(v(0),v(0))))");
        assert_eq!(nf_reduce(&omega, Some(1000)), Err(ReduceError::Exhausted(1000)));
    }

    #[test]
    fn sk_rules() {
        assert_eq!(app_sk(&sk("s*k*k"), &SkTerm::S), SkTerm::S);
        assert_eq!(app_sk(&sk("s*k*s"), &SkTerm::K), SkTerm::K);
        assert_eq!(eval_sk(&SkTerm::K), SkTerm::K);
        assert_eq!(sk_to_db(&sk("k*k")), DbTerm::a(k_db(), k_db()));
    }

    #[test]
    fn x_rules() {
        let skk = tree("((x>(x>x))>((x>x)>x))>((x>x)>x)");
        assert_eq!(app_x(&skk, &BinTree::Leaf), BinTree::Leaf);
        let skx = tree("((x>(x>x))>((x>x)>x))>x");
        assert_eq!(app_x(&skx, &BinTree::Leaf), BinTree::Leaf);
        assert_eq!(eval_x(&BinTree::Leaf), BinTree::Leaf);
        assert_eq!(x_to_db(&BinTree::Leaf).to_string(), "l(a(a(a(v(0),l(l(v(1)))),l(l(l(a(a(v(2),v(0)),a(v(1),v(0))))))),l(l(v(1)))))");
        assert_eq!(x_to_db(&BinTree::Leaf).size(), 14);
        assert_eq!(x_to_db(&tree("x>x")).size(), 29);
        assert_eq!(eval_as_b(&tree("x>x"), None).unwrap(), db("l(l(l(v(1))))"));
        assert_eq!(eval_as_t(&tree("x>x"), None).unwrap().size(), 29);
        let t = eval_as_t(&tree("x>x"), None).unwrap();
        assert_eq!(nf_reduce(&t, None).unwrap(), db("l(l(l(v(1))))"));
    }
}
