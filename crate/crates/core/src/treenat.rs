//! Binary trees as natural numbers: the `cons`/`decons` bijection, successor, predecessor,
//! and a Gödel numbering of de Bruijn terms onto trees.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::term::{BinTree, DbTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeNatError {
    #[error("decons of zero")]
    DeconsZero,
    #[error("predecessor of zero")]
    PredZero,
    #[error("tree does not match any predecessor clause")]
    Shape,
    #[error("number too large to materialize")]
    TooLarge,
    #[error("variable index does not fit in a machine word")]
    IndexOverflow,
}

/// Largest exponent accepted by [`nat_of_tree`]; beyond it the number would not fit in memory.
const MAX_SHIFT: u64 = 1 << 26;

/// `2^(i+1)·j` for odd `j`, `2^(i+1)·(j+1) - 1` for even `j`.
pub fn cons(i: &BigUint, j: &BigUint) -> Result<BigUint, TreeNatError> {
    let shift = i.to_u64().filter(|s| *s < MAX_SHIFT).ok_or(TreeNatError::TooLarge)? + 1;
    let d: u32 = if j.bit(0) { 0 } else { 1 };
    Ok(((j + d) << shift) - d)
}

pub fn decons(k: &BigUint) -> Result<(BigUint, BigUint), TreeNatError> {
    if k.is_zero() {
        return Err(TreeNatError::DeconsZero);
    }
    let b: u32 = if k.bit(0) { 1 } else { 0 };
    let kb = k + b;
    let i = kb.trailing_zeros().expect("nonzero");
    let j = kb >> i;
    Ok((BigUint::from(i.saturating_sub(1)), j - b))
}

pub fn cons_u64(i: u64, j: u64) -> Option<u64> {
    let d = (j + 1) % 2;
    let shift = u32::try_from(i.checked_add(1)?).ok()?;
    let base = j.checked_add(d)?;
    if shift >= 64 || base.leading_zeros() < shift {
        return None;
    }
    Some((base << shift) - d)
}

pub fn decons_u64(k: u64) -> Option<(u64, u64)> {
    if k == 0 {
        return None;
    }
    let b = k % 2;
    let kb = k as u128 + b as u128;
    let i = kb.trailing_zeros() as u64;
    let j = (kb >> i) as u64;
    Some((i.saturating_sub(1), j - b))
}

pub fn tree_of_nat(k: &BigUint) -> BinTree {
    if k.is_zero() {
        return BinTree::Leaf;
    }
    let (i, j) = decons(k).expect("nonzero");
    BinTree::node(tree_of_nat(&i), tree_of_nat(&j))
}

pub fn tree_of_u64(k: u64) -> BinTree {
    match decons_u64(k) {
        None => BinTree::Leaf,
        Some((i, j)) => BinTree::node(tree_of_u64(i), tree_of_u64(j)),
    }
}

/// Fails with `TooLarge` when an intermediate exponent exceeds 2^26 bits.
pub fn nat_of_tree(t: &BinTree) -> Result<BigUint, TreeNatError> {
    match t {
        BinTree::Leaf => Ok(BigUint::zero()),
        BinTree::Node(a, b) => cons(&nat_of_tree(a)?, &nat_of_tree(b)?),
    }
}

pub fn u64_of_tree(t: &BinTree) -> Option<u64> {
    match t {
        BinTree::Leaf => Some(0),
        BinTree::Node(a, b) => cons_u64(u64_of_tree(a)?, u64_of_tree(b)?),
    }
}

/// Parity of the number a tree denotes, by a scan over its blocks.
pub fn parity(t: &BinTree) -> u8 {
    let mut p = 0u8;
    let mut cur = t;
    loop {
        match cur {
            BinTree::Leaf => return p,
            BinTree::Node(_, r) => match &**r {
                BinTree::Leaf => return 1 ^ p,
                rest => {
                    p ^= 1;
                    cur = rest;
                }
            },
        }
    }
}

pub fn is_even(t: &BinTree) -> bool {
    parity(t) == 0
}

pub fn is_odd(t: &BinTree) -> bool {
    parity(t) == 1
}

fn node(a: BinTree, b: BinTree) -> BinTree {
    BinTree::node(a, b)
}

fn split(t: &BinTree) -> Option<(&BinTree, &BinTree)> {
    match t {
        BinTree::Node(a, b) => Some((a, b)),
        BinTree::Leaf => None,
    }
}

/// Successor, one block of binary digits at a time.
pub fn tree_succ(t: &BinTree) -> BinTree {
    let Some((x, xs)) = split(t) else {
        return node(BinTree::Leaf, BinTree::Leaf);
    };
    if xs.is_leaf() {
        return node(x.clone(), node(BinTree::Leaf, BinTree::Leaf));
    }
    let (y, ys) = split(xs).expect("node");
    if parity(t) == 0 {
        match x {
            BinTree::Leaf => node(tree_succ(y), ys.clone()),
            _ => node(BinTree::Leaf, node(tree_pred(x).expect("x is a node"), xs.clone())),
        }
    } else {
        match (y, split(ys)) {
            (BinTree::Leaf, Some((z, zs))) => node(x.clone(), node(tree_succ(z), zs.clone())),
            _ => node(x.clone(), node(BinTree::Leaf, node(tree_pred(y).expect("odd block"), ys.clone()))),
        }
    }
}

/// Predecessor; fails on `x`.
pub fn tree_pred(t: &BinTree) -> Result<BinTree, TreeNatError> {
    let (x, xs) = split(t).ok_or(TreeNatError::PredZero)?;
    if x.is_leaf() && xs.is_leaf() {
        return Ok(BinTree::Leaf);
    }
    if let Some((a, b)) = split(xs) {
        if a.is_leaf() && b.is_leaf() {
            return Ok(node(x.clone(), BinTree::Leaf));
        }
    }
    if parity(t) == 0 {
        let (y, ys) = split(xs).ok_or(TreeNatError::Shape)?;
        match (y, split(ys)) {
            (BinTree::Leaf, Some((z, zs))) => Ok(node(x.clone(), node(tree_succ(z), zs.clone()))),
            (BinTree::Node(..), _) => {
                Ok(node(x.clone(), node(BinTree::Leaf, node(tree_pred(y)?, ys.clone()))))
            }
            _ => Err(TreeNatError::Shape),
        }
    } else {
        match x {
            BinTree::Leaf => {
                let (y, ys) = split(xs).ok_or(TreeNatError::Shape)?;
                Ok(node(tree_succ(y), ys.clone()))
            }
            _ => Ok(node(BinTree::Leaf, node(tree_pred(x)?, xs.clone()))),
        }
    }
}

/// `n + m` computed through the natural numbers.
pub fn tree_add(a: &BinTree, b: &BinTree) -> Result<BinTree, TreeNatError> {
    Ok(tree_of_nat(&(nat_of_tree(a)? + nat_of_tree(b)?)))
}

/// `n - m`, or `None` when `m > n`.
pub fn tree_sub(a: &BinTree, b: &BinTree) -> Result<Option<BinTree>, TreeNatError> {
    let (x, y) = (nat_of_tree(a)?, nat_of_tree(b)?);
    Ok((x >= y).then(|| tree_of_nat(&(x - y))))
}

/// Rank a de Bruijn term as a tree: `v(0)` is `x`, `l(A)` is `x>A`, `v(K)` is `t(K)>x`
/// and applications take the successor of both ranks.
pub fn rank_db(t: &DbTerm) -> BinTree {
    match t {
        DbTerm::V(0) => BinTree::Leaf,
        DbTerm::V(k) => node(tree_of_u64(*k as u64), BinTree::Leaf),
        DbTerm::L(a) => node(BinTree::Leaf, rank_db(a)),
        DbTerm::A(a, b) => node(tree_succ(&rank_db(a)), tree_succ(&rank_db(b))),
    }
}

/// Inverse of [`rank_db`]. Fails only when a variable index exceeds the machine word.
pub fn unrank_db(t: &BinTree) -> Result<DbTerm, TreeNatError> {
    match t {
        BinTree::Leaf => Ok(DbTerm::V(0)),
        BinTree::Node(x, r) if x.is_leaf() => Ok(DbTerm::l(unrank_db(r)?)),
        BinTree::Node(k, r) if r.is_leaf() => {
            let n = u64_of_tree(k).ok_or(TreeNatError::IndexOverflow)?;
            Ok(DbTerm::V(usize::try_from(n).map_err(|_| TreeNatError::IndexOverflow)?))
        }
        BinTree::Node(x, y) => Ok(DbTerm::a(unrank_db(&tree_pred(x)?)?, unrank_db(&tree_pred(y)?)?)),
    }
}

/// De Bruijn term whose variable indices are themselves tree naturals, so that every tree decodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TreeIndexedDb {
    V(BinTree),
    L(Box<TreeIndexedDb>),
    A(Box<TreeIndexedDb>, Box<TreeIndexedDb>),
}

/// Variant of [`rank_db`] that never converts indices through machine naturals.
pub fn rank_tree_indexed(t: &TreeIndexedDb) -> BinTree {
    match t {
        TreeIndexedDb::V(BinTree::Leaf) => BinTree::Leaf,
        TreeIndexedDb::V(k) => node(k.clone(), BinTree::Leaf),
        TreeIndexedDb::L(a) => node(BinTree::Leaf, rank_tree_indexed(a)),
        TreeIndexedDb::A(a, b) => {
            node(tree_succ(&rank_tree_indexed(a)), tree_succ(&rank_tree_indexed(b)))
        }
    }
}

pub fn unrank_tree_indexed(t: &BinTree) -> TreeIndexedDb {
    match t {
        BinTree::Leaf => TreeIndexedDb::V(BinTree::Leaf),
        BinTree::Node(x, r) if x.is_leaf() => TreeIndexedDb::L(Box::new(unrank_tree_indexed(r))),
        BinTree::Node(k, r) if r.is_leaf() => TreeIndexedDb::V((**k).clone()),
        BinTree::Node(x, y) => TreeIndexedDb::A(
            Box::new(unrank_tree_indexed(&tree_pred(x).expect("x is not a leaf"))),
            Box::new(unrank_tree_indexed(&tree_pred(y).expect("y is not a leaf"))),
        ),
    }
}

/// Convenience for tests and the CLI.
pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

pub fn one() -> BigUint {
    BigUint::one()
}
