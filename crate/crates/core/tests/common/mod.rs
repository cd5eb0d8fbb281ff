//! Brute-force oracles and proptest strategies shared by the integration tests.
#![allow(dead_code)]

use lambda_playground::{BinTree, CompTerm, DbTerm, SkTerm};
use proptest::prelude::*;

pub fn tree(s: &str) -> BinTree {
    s.parse().unwrap()
}

pub fn db(s: &str) -> DbTerm {
    s.parse().unwrap()
}

pub fn comp(s: &str) -> CompTerm {
    s.parse().unwrap()
}

pub fn sk(s: &str) -> SkTerm {
    s.parse().unwrap()
}

/// Catalan numbers by the convolution recurrence.
pub fn catalan_oracle(n: usize) -> u64 {
    let mut c = vec![1u64];
    for m in 1..=n {
        c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
    }
    c[n]
}

/// Trees of depth at most `d`: a(0) = 1, a(d+1) = a(d)^2 + 1.
pub fn depth_oracle(d: usize) -> u64 {
    (0..d).fold(1u64, |a, _| a * a + 1)
}

/// Binary-unary trees where leaves and both node kinds each cost one unit.
pub fn motzkin_oracle(n: usize) -> u64 {
    let mut m = vec![0u64; n + 1];
    for k in 1..=n {
        m[k] = if k == 1 { 1 } else { m[k - 1] + (1..k - 1).map(|i| m[i] * m[k - 1 - i]).sum::<u64>() };
    }
    m[n]
}

/// Every de Bruijn term with exactly `n` lambda/application nodes whose
/// indices stay below `depth` plus the binders above them.
pub fn all_db(n: usize, depth: usize) -> Vec<DbTerm> {
    let mut out = Vec::new();
    if n == 0 {
        out.extend((0..depth).map(DbTerm::V));
        return out;
    }
    for b in all_db(n - 1, depth + 1) {
        out.push(DbTerm::l(b));
    }
    for i in 0..n {
        let rights = all_db(n - 1 - i, depth);
        for f in all_db(i, depth) {
            for x in &rights {
                out.push(DbTerm::a(f.clone(), x.clone()));
            }
        }
    }
    out
}

/// Closed de Bruijn terms counted by the size/depth recurrence.
pub fn closed_db_oracle(n: usize) -> u64 {
    fn c(n: usize, d: usize, memo: &mut std::collections::HashMap<(usize, usize), u64>) -> u64 {
        if let Some(v) = memo.get(&(n, d)) {
            return *v;
        }
        let v = if n == 0 {
            d as u64
        } else {
            c(n - 1, d + 1, memo) + (0..n).map(|i| c(i, d, memo) * c(n - 1 - i, d, memo)).sum::<u64>()
        };
        memo.insert((n, d), v);
        v
    }
    c(n, 0, &mut Default::default())
}

/// Closed beta-normal forms counted by splitting into neutral terms and abstractions.
pub fn nf_oracle(n: usize) -> u64 {
    type Memo = std::collections::HashMap<(bool, usize, usize), u64>;
    fn nf(n: usize, d: usize, memo: &mut Memo) -> u64 {
        if let Some(v) = memo.get(&(true, n, d)) {
            return *v;
        }
        let v = neutral(n, d, memo) + if n > 0 { nf(n - 1, d + 1, memo) } else { 0 };
        memo.insert((true, n, d), v);
        v
    }
    fn neutral(n: usize, d: usize, memo: &mut Memo) -> u64 {
        if let Some(v) = memo.get(&(false, n, d)) {
            return *v;
        }
        let v = if n == 0 {
            d as u64
        } else {
            (0..n).map(|i| neutral(i, d, memo) * nf(n - 1 - i, d, memo)).sum()
        };
        memo.insert((false, n, d), v);
        v
    }
    nf(n, 0, &mut Default::default())
}

/// No application has an abstraction in function position.
pub fn no_redex(t: &DbTerm) -> bool {
    match t {
        DbTerm::V(_) => true,
        DbTerm::L(b) => no_redex(b),
        DbTerm::A(f, x) => !matches!(**f, DbTerm::L(_)) && no_redex(f) && no_redex(x),
    }
}

/// How often each binder is referenced, in binder preorder.
pub fn binder_uses(t: &DbTerm) -> Vec<usize> {
    fn go(t: &DbTerm, stack: &mut Vec<usize>, uses: &mut Vec<usize>) {
        match t {
            DbTerm::V(i) => {
                if *i < stack.len() {
                    uses[stack[stack.len() - 1 - i]] += 1;
                }
            }
            DbTerm::L(b) => {
                stack.push(uses.len());
                uses.push(0);
                go(b, stack, uses);
                stack.pop();
            }
            DbTerm::A(f, x) => {
                go(f, stack, uses);
                go(x, stack, uses);
            }
        }
    }
    let mut uses = Vec::new();
    go(t, &mut Vec::new(), &mut uses);
    uses
}

pub fn arb_db() -> impl Strategy<Value = DbTerm> {
    (0usize..6).prop_map(DbTerm::V).prop_recursive(8, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(DbTerm::l),
            (inner.clone(), inner).prop_map(|(f, x)| DbTerm::a(f, x)),
        ]
    })
}

pub fn arb_closed_db() -> impl Strategy<Value = DbTerm> {
    arb_db().prop_map(|t| {
        fn close(t: &DbTerm, d: usize) -> DbTerm {
            match t {
                DbTerm::V(_) if d == 0 => DbTerm::l(DbTerm::V(0)),
                DbTerm::V(i) => DbTerm::V(i % d),
                DbTerm::L(b) => DbTerm::l(close(b, d + 1)),
                DbTerm::A(f, x) => DbTerm::a(close(f, d), close(x, d)),
            }
        }
        close(&t, 0)
    })
}

pub fn arb_tree() -> impl Strategy<Value = BinTree> {
    Just(BinTree::Leaf).prop_recursive(8, 64, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| BinTree::node(a, b))
    })
}

pub fn arb_sk() -> impl Strategy<Value = SkTerm> {
    prop_oneof![Just(SkTerm::S), Just(SkTerm::K)].prop_recursive(8, 64, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| SkTerm::ap(a, b))
    })
}
