//! Size-proportionate ranking of types and compressed de Bruijn terms.
//!
//! A term splits into its binary skeleton, ranked as a balanced parenthesis word,
//! and its list of integer labels, packed with the generalized Cantor bijection.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::generate::Enumeration;
use crate::term::{BinTree, CompTerm};
use crate::typeinf::typable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("unbalanced parenthesis word")]
    Unbalanced,
    #[error("label list has {got} entries, skeleton needs {want}")]
    LengthMismatch { want: usize, got: usize },
    #[error("set is not strictly increasing")]
    NotIncreasing,
    #[error("cannot decode a nonzero rank into an empty tuple")]
    ZeroArity,
    #[error("label {0} does not fit a machine word")]
    LabelOverflow(BigUint),
}

// ------------------------------------------------------------- parentheses

/// 0 opens, 1 closes; the outer pair makes the word self-delimiting.
pub fn tree_to_parens(t: &BinTree) -> Vec<u8> {
    fn catpar(t: &BinTree, out: &mut Vec<u8>) {
        out.push(0);
        catpars(t, out);
    }
    fn catpars(t: &BinTree, out: &mut Vec<u8>) {
        let mut cur = t;
        while let BinTree::Node(x, xs) = cur {
            catpar(x, out);
            cur = xs;
        }
        out.push(1);
    }
    let mut out = Vec::new();
    catpar(t, &mut out);
    out
}

pub fn parens_to_tree(w: &[u8]) -> Result<BinTree, CodecError> {
    fn catpar(w: &[u8], pos: &mut usize) -> Result<BinTree, CodecError> {
        if w.get(*pos) != Some(&0) {
            return Err(CodecError::Unbalanced);
        }
        *pos += 1;
        let mut kids = Vec::new();
        loop {
            match w.get(*pos) {
                Some(1) => {
                    *pos += 1;
                    break;
                }
                Some(0) => kids.push(catpar(w, pos)?),
                _ => return Err(CodecError::Unbalanced),
            }
        }
        Ok(kids.into_iter().rev().fold(BinTree::Leaf, |acc, k| BinTree::node(k, acc)))
    }
    let mut pos = 0;
    let t = catpar(w, &mut pos)?;
    if pos == w.len() {
        Ok(t)
    } else {
        Err(CodecError::Unbalanced)
    }
}

fn check_word(w: &[u8]) -> Result<(), CodecError> {
    if w.len() < 2 || w.len() % 2 == 1 {
        return Err(CodecError::Unbalanced);
    }
    let mut depth = 0i64;
    for (i, b) in w.iter().enumerate() {
        match b {
            0 => depth += 1,
            1 => depth -= 1,
            _ => return Err(CodecError::Unbalanced),
        }
        if depth < 0 || (depth == 0 && i + 1 < w.len()) {
            return Err(CodecError::Unbalanced);
        }
    }
    if depth == 0 {
        Ok(())
    } else {
        Err(CodecError::Unbalanced)
    }
}

// ------------------------------------------------------- binomials, Catalan

fn binomial_loop(n: &BigUint, k: &BigUint) -> BigUint {
    let mut i = BigUint::zero();
    let mut p = BigUint::one();
    while &i < k {
        let i1 = &i + 1u32;
        p = ((n - &i) * p) / &i1;
        i = i1;
    }
    p
}

/// `n` choose `k`, zero when `k > n`.
pub fn binomial(n: &BigUint, k: &BigUint) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k1 = n - k;
    if k > &k1 {
        binomial_loop(n, &k1)
    } else {
        binomial_loop(n, k)
    }
}

pub fn binomial_u64(n: u64, k: u64) -> BigUint {
    binomial(&BigUint::from(n), &BigUint::from(k))
}

fn binomial_i(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 {
        return BigInt::zero();
    }
    BigInt::from(binomial_u64(n as u64, k as u64))
}

pub fn catalan(n: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 1..=n {
        c = c * (2 * (2 * i - 1)) / (i + 1);
    }
    c
}

fn bin_dif(n: i64, x: i64, y: i64) -> BigInt {
    let n1 = 2 * n - x;
    let r1 = n - (x + y) / 2;
    binomial_i(n1, r1) - binomial_i(n1, r1 - 1)
}

fn local_rank(n: i64, xs: &[u8]) -> BigInt {
    let (mut x, mut y) = (1i64, 0i64);
    let mut lo = BigInt::zero();
    while x < 2 * n {
        if xs[x as usize] == 0 {
            y += 1;
        } else {
            lo += bin_dif(n, x, y + 1);
            y -= 1;
        }
        x += 1;
    }
    lo
}

fn local_unrank(n: i64, r: &BigInt) -> Vec<u8> {
    let mut as_ = vec![0u8; (2 * n + 1) as usize];
    let (mut x, mut y) = (1i64, 0i64);
    let mut lo = BigInt::zero();
    while x <= 2 * n {
        let lk = &lo + bin_dif(n, x, y + 1);
        if r < &lk {
            y += 1;
            as_[x as usize] = 0;
        } else {
            lo = lk;
            y -= 1;
            as_[x as usize] = 1;
        }
        x += 1;
    }
    as_
}

/// Rank among all balanced words: shorter words first, then by local rank.
pub fn rank_catalan(w: &[u8]) -> Result<BigUint, CodecError> {
    check_word(w)?;
    let i = ((w.len() - 2) / 2) as i64;
    let local = local_rank(i, w);
    let mut s = BigUint::zero();
    let mut c = BigUint::one();
    for j in 0..i as u64 {
        s += &c;
        c = c * (2 * (2 * (j + 1) - 1)) / (j + 2);
    }
    Ok(s + local.to_biguint().expect("local rank is nonnegative"))
}

pub fn unrank_catalan(r: &BigUint) -> Vec<u8> {
    let mut s = BigUint::zero();
    let mut i = 0u64;
    let mut c = BigUint::one();
    while &(&s + &c) <= r {
        s += &c;
        i += 1;
        c = c * (2 * (2 * i - 1)) / (i + 1);
    }
    let lr = BigInt::from(r - &s);
    let as_ = local_unrank(i as i64, &lr);
    let mut xs = Vec::with_capacity(as_.len() + 1);
    xs.push(0);
    xs.extend_from_slice(&as_[1..]);
    xs.push(1);
    xs
}

pub fn rank_type(t: &BinTree) -> BigUint {
    rank_catalan(&tree_to_parens(t)).expect("tree words are balanced")
}

pub fn unrank_type(r: &BigUint) -> BinTree {
    parens_to_tree(&unrank_catalan(r)).expect("unranked words are balanced")
}

// ------------------------------------------------------------- skeletons

fn cskel(t: &CompTerm, labels: &mut Vec<usize>) -> BinTree {
    match t {
        CompTerm::V(k, n) => {
            labels.extend([*k, *n]);
            BinTree::Leaf
        }
        CompTerm::A(k, x, y) => {
            labels.push(*k);
            let a = cskel(x, labels);
            BinTree::node(a, cskel(y, labels))
        }
    }
}

/// The parenthesis word of the applicative skeleton and the depth-first labels.
pub fn to_skel(t: &CompTerm) -> (Vec<u8>, Vec<usize>) {
    let mut labels = Vec::new();
    let skel = cskel(t, &mut labels);
    (tree_to_parens(&skel), labels)
}

pub fn from_skel(w: &[u8], labels: &[usize]) -> Result<CompTerm, CodecError> {
    fn build(t: &BinTree, labels: &mut std::slice::Iter<'_, usize>) -> CompTerm {
        match t {
            BinTree::Leaf => {
                let k = *labels.next().unwrap();
                CompTerm::v(k, *labels.next().unwrap())
            }
            BinTree::Node(a, b) => {
                let k = *labels.next().unwrap();
                let x = build(a, labels);
                CompTerm::a(k, x, build(b, labels))
            }
        }
    }
    let skel = parens_to_tree(w)?;
    let want = 3 * skel.size() + 2;
    if labels.len() != want {
        return Err(CodecError::LengthMismatch { want, got: labels.len() });
    }
    Ok(build(&skel, &mut labels.iter()))
}

// ---------------------------------------------------------------- Cantor

pub fn list_to_set(xs: &[BigUint]) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::with_capacity(xs.len());
    for n in xs {
        let x = match out.last() {
            None => n.clone(),
            Some(prev) => n + prev + 1u32,
        };
        out.push(x);
    }
    out
}

pub fn set_to_list(xs: &[BigUint]) -> Result<Vec<BigUint>, CodecError> {
    let mut out = Vec::with_capacity(xs.len());
    let mut prev: Option<&BigUint> = None;
    for x in xs {
        let n = match prev {
            None => x.clone(),
            Some(p) if x > p => x - p - 1u32,
            Some(_) => return Err(CodecError::NotIncreasing),
        };
        out.push(n);
        prev = Some(x);
    }
    Ok(out)
}

/// Σ C(x_i, i) over the set, i counted from 1.
pub fn from_kset(xs: &[BigUint]) -> BigUint {
    xs.iter()
        .enumerate()
        .map(|(i, x)| binomial(x, &BigUint::from(i + 1)))
        .sum()
}

fn upper_binomial(k: &BigUint, n: &BigUint) -> BigUint {
    let s = n + k;
    let mut m = k.clone();
    while binomial(&m, k) <= s {
        m <<= 1;
    }
    let mut from = &m >> 1;
    let mut to = m;
    while from != to {
        let mid: BigUint = (&from + &to) >> 1;
        if &binomial(&mid, k) > n {
            to = mid;
        } else {
            from = mid + 1u32;
        }
    }
    from
}

/// Digits of `n` in the combinatorial number system of degree `k`, increasing.
pub fn to_kset(k: usize, n: &BigUint) -> Vec<BigUint> {
    let mut digits = Vec::with_capacity(k);
    let mut n = n.clone();
    for j in (1..=k).rev() {
        let kb = BigUint::from(j);
        let m1 = upper_binomial(&kb, &n) - 1u32;
        n -= binomial(&m1, &kb);
        digits.push(m1);
    }
    digits.reverse();
    digits
}

pub fn from_cantor(ns: &[BigUint]) -> BigUint {
    from_kset(&list_to_set(ns))
}

pub fn to_cantor(k: usize, r: &BigUint) -> Result<Vec<BigUint>, CodecError> {
    if k == 0 {
        return if r.is_zero() { Ok(Vec::new()) } else { Err(CodecError::ZeroArity) };
    }
    set_to_list(&to_kset(k, r))
}

// ----------------------------------------------------------------- terms

pub fn rank_term(t: &CompTerm) -> BigUint {
    let (ps, ns) = to_skel(t);
    let cat = rank_catalan(&ps).expect("skeleton words are balanced");
    let ns: Vec<BigUint> = ns.into_iter().map(BigUint::from).collect();
    from_cantor(&[cat, from_cantor(&ns)])
}

pub fn unrank_term(r: &BigUint) -> Result<CompTerm, CodecError> {
    let pair = to_cantor(2, r)?;
    let ps = unrank_catalan(&pair[0]);
    let l = (ps.len() - 2) / 2;
    let ns = to_cantor(3 * l + 2, &pair[1])?;
    let labels = ns
        .into_iter()
        .map(|n| n.to_usize().ok_or(CodecError::LabelOverflow(n)))
        .collect::<Result<Vec<_>, _>>()?;
    from_skel(&ps, &labels)
}

/// Terms of rank 0..=max, open ones included.
pub fn ogen(max: u64) -> Enumeration<'static, CompTerm> {
    Enumeration::new(move |k| {
        for i in 0..=max {
            k(unrank_term(&BigUint::from(i)).expect("small ranks have small labels"))?;
        }
        std::ops::ControlFlow::Continue(())
    })
}

pub fn cgen(max: u64) -> Enumeration<'static, CompTerm> {
    ogen(max).filter(CompTerm::is_closed)
}

pub fn tgen(max: u64) -> Enumeration<'static, CompTerm> {
    cgen(max).filter(typable)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RanKind {
    Open,
    Closed,
    Typed,
}

impl RanKind {
    pub fn accepts(self, t: &CompTerm) -> bool {
        match self {
            RanKind::Open => true,
            RanKind::Closed => t.is_closed(),
            RanKind::Typed => t.is_closed() && typable(t),
        }
    }
}

/// Most ranks [`ran_term`] will try before giving up.
pub const MAX_SCAN: u64 = 1 << 14;

/// Draw N uniformly from [2^bits, 2^(bits+1)) and return the first rank in
/// N..=N+2^bits whose term passes the filter, trying at most [`MAX_SCAN`] ranks.
/// Ranks whose labels overflow a machine word are skipped.
pub fn ran_term(kind: RanKind, bits: u32, seed: u64) -> Option<(BigUint, CompTerm)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = BigUint::one() << bits as usize;
    let n = &x + rng.gen_biguint_below(&x);
    let m = &n + (&x).min(&BigUint::from(MAX_SCAN - 1));
    let mut i = n;
    while i <= m {
        if let Ok(t) = unrank_term(&i) {
            if kind.accepts(&t) {
                return Some((i, t));
            }
        }
        i += 1u32;
    }
    None
}

/// Parse a decimal rank.
pub fn parse_rank(s: &str) -> Option<BigUint> {
    let t = s.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigUint::parse_bytes(t.as_bytes(), 10)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn parens_examples() {
        let t: BinTree = "(x>x)>(x>x)".parse().unwrap();
        assert_eq!(tree_to_parens(&t), [0, 0, 0, 1, 1, 0, 1, 1]);
        assert_eq!(parens_to_tree(&[0, 0, 0, 1, 1, 0, 1, 1]).unwrap(), t);
        assert_eq!(tree_to_parens(&BinTree::Leaf), [0, 1]);
        assert!(parens_to_tree(&[0, 1, 0, 1]).is_err());
        assert!(parens_to_tree(&[0, 0, 1]).is_err());
    }

    #[test]
    fn catalan_examples() {
        let w = unrank_catalan(&b(2015));
        assert_eq!(w, [0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 1]);
        assert_eq!(rank_catalan(&w).unwrap(), b(2015));
        assert_eq!(unrank_catalan(&b(0)), [0, 1]);
        assert_eq!(unrank_type(&b(100)).to_string(), "((x>x)>((x>(x>x))>x))>x");
        assert_eq!(rank_type(&BinTree::Leaf), b(0));
        let cats: Vec<BigUint> = (0..10).map(catalan).collect();
        assert_eq!(cats, [1u32, 1, 2, 5, 14, 42, 132, 429, 1430, 4862].map(BigUint::from));
        assert_eq!(binomial_u64(5, 2), b(10));
        assert_eq!(binomial_u64(2, 5), b(0));
    }

    #[test]
    fn cantor_examples() {
        assert_eq!(to_kset(5, &b(2014)), [0u32, 3, 4, 5, 14].map(BigUint::from));
        assert_eq!(from_kset(&[0u32, 3, 4, 5, 14].map(BigUint::from)), b(2014));
        let xs = [2u32, 0, 1, 4].map(BigUint::from);
        assert_eq!(list_to_set(&xs), [2u32, 3, 5, 10].map(BigUint::from));
        assert_eq!(set_to_list(&list_to_set(&xs)).unwrap(), xs);
        assert!(set_to_list(&[b(3), b(3)]).is_err());
        let big = num_traits::pow(b(2014), 103);
        let ns = to_cantor(1000, &big).unwrap();
        assert_eq!(ns.len(), 1000);
        assert_eq!(from_cantor(&ns), big);
        assert_eq!(to_cantor(0, &b(1)), Err(CodecError::ZeroArity));
    }

    #[test]
    fn term_examples() {
        let s: CompTerm = "a(3,a(0,v(0,2),v(0,0)),a(0,v(0,1),v(0,0)))".parse().unwrap();
        let (ps, ns) = to_skel(&s);
        assert_eq!(ps, [0, 0, 0, 1, 1, 0, 1, 1]);
        assert_eq!(ns, [3, 0, 0, 2, 0, 0, 0, 0, 1, 0, 0]);
        assert_eq!(from_skel(&ps, &ns).unwrap(), s);
        assert_eq!(rank_term(&s), b(56493141));
        assert_eq!(unrank_term(&b(56493141)).unwrap(), s);
        let y: CompTerm = "a(1,a(1,v(0,1),a(0,v(0,0),v(0,0))),a(1,v(0,1),a(0,v(0,0),v(0,0))))"
            .parse()
            .unwrap();
        assert_eq!(rank_term(&y), b(261507060));
        assert!(from_skel(&[0, 1], &[0]).is_err());
    }

    #[test]
    fn tgen_example() {
        let got: Vec<String> = tgen(200).collect_vec().iter().map(|t| t.to_string()).collect();
        assert_eq!(
            got,
            [
                "v(1,0)",
                "v(2,0)",
                "v(2,1)",
                "v(3,0)",
                "v(3,1)",
                "v(4,0)",
                "a(0,v(1,0),v(1,0))",
                "a(1,v(0,0),v(1,0))",
                "v(3,2)",
                "v(4,1)"
            ]
        );
    }

    #[test]
    fn random_is_deterministic() {
        let a = ran_term(RanKind::Closed, 10, 7).unwrap();
        let b = ran_term(RanKind::Closed, 10, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.1.is_closed());
        let (r, _) = ran_term(RanKind::Open, 10, 3).unwrap();
        assert!(r >= BigUint::from(1024u32) && r < BigUint::from(2048u32));
    }
}
