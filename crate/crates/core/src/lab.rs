//! Experiments: type queries, censuses, densities, well-typed frontiers,
//! iterated types, size-inflating injections and orbits.

use std::collections::HashMap;
use std::fmt;

use crate::codec::catalan;
use crate::generate::{gen_tree, gen_typed, gen_typed_sk, Enumeration, Mode};
use crate::reduce::{eval_sk, nf_reduce, x_to_db};
use crate::term::{BinTree, DbTerm, SkTerm};
use crate::treenat::{rank_db, tree_succ, unrank_db, TreeNatError};
use crate::typeinf::{check_db, infer_db, typable_sk, xtype};

pub use crate::generate::query_typed;

/// All terms of size at most that of `t` sharing its principal type, or `None` if untypable.
pub fn type_siblings(t: &DbTerm) -> Option<Enumeration<'static, DbTerm>> {
    let ty = infer_db(t)?;
    Some(query_typed(t.size(), &ty, Mode::Upto))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusRow {
    /// `None` for the cumulative row.
    pub size: Option<usize>,
    pub distinct_types: usize,
    pub terms: u64,
    pub ratio: f64,
    pub top_types: Vec<(BinTree, u64)>,
}

/// Type frequencies over closed typable terms of size exactly `n`.
pub fn census_counts(n: usize) -> HashMap<BinTree, u64> {
    let mut counts = HashMap::new();
    gen_typed(n, Mode::Exact).for_each(|(_, ty)| *counts.entry(ty).or_insert(0) += 1);
    counts
}

pub fn census_row(size: Option<usize>, counts: &HashMap<BinTree, u64>, top_k: usize) -> CensusRow {
    let terms: u64 = counts.values().sum();
    let mut top: Vec<(BinTree, u64)> = counts.iter().map(|(t, c)| (t.clone(), *c)).collect();
    top.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
    top.truncate(top_k);
    CensusRow {
        size,
        distinct_types: counts.len(),
        terms,
        ratio: if terms == 0 { 0.0 } else { counts.len() as f64 / terms as f64 },
        top_types: top,
    }
}

/// Combine per-size counts into rows, in size order, followed by the cumulative row.
pub fn census_from_counts(per_size: &[(usize, HashMap<BinTree, u64>)], top_k: usize) -> Vec<CensusRow> {
    let mut rows = Vec::new();
    let mut total: HashMap<BinTree, u64> = HashMap::new();
    for (n, counts) in per_size {
        rows.push(census_row(Some(*n), counts, top_k));
        for (t, c) in counts {
            *total.entry(t.clone()).or_insert(0) += c;
        }
    }
    rows.push(census_row(None, &total, top_k));
    rows
}

/// Per-size rows for 1..=max_size plus a cumulative row.
pub fn type_census(max_size: usize, top_k: usize) -> Vec<CensusRow> {
    let per: Vec<_> = (1..=max_size).map(|n| (n, census_counts(n))).collect();
    census_from_counts(&per, top_k)
}

/// Number of closed terms of each exact size 1..=max_size with principal type `ty`.
pub fn growth_sequence(ty: &BinTree, max_size: usize) -> Vec<u64> {
    (1..=max_size).map(|n| query_typed(n, ty, Mode::Exact).count()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub size: usize,
    pub typed: u64,
    pub total: u64,
    pub ratio: f64,
}

fn density_row(size: usize, typed: u64, total: u64) -> DensityRow {
    DensityRow { size, typed, total, ratio: typed as f64 / total as f64 }
}

pub fn sk_density_row(n: usize) -> DensityRow {
    let total = (catalan(n as u64) << (n + 1)).try_into().expect("SK totals fit in u64 for feasible sizes");
    density_row(n, gen_typed_sk(n, Mode::Exact).count(), total)
}

pub fn x_density_row(n: usize) -> DensityRow {
    let total = catalan(n as u64).try_into().expect("Catalan totals fit in u64 for feasible sizes");
    density_row(n, gen_tree(n, Mode::Exact).filter(|t| xtype(t).is_some()).count(), total)
}

/// Sizes 0..=max_size.
pub fn sk_density(max_size: usize) -> Vec<DensityRow> {
    (0..=max_size).map(sk_density_row).collect()
}

pub fn x_density(max_size: usize) -> Vec<DensityRow> {
    (0..=max_size).map(x_density_row).collect()
}

// --------------------------------------------------------------- frontier

/// The untypable part of an SK tree, with numbered holes where the frontier was cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trunk {
    Hole(usize),
    Ap(Box<Trunk>, Box<Trunk>),
}

impl Trunk {
    pub fn size(&self) -> usize {
        match self {
            Trunk::Hole(_) => 0,
            Trunk::Ap(a, b) => 1 + a.size() + b.size(),
        }
    }
}

pub fn hole_name(i: usize) -> String {
    let letter = (b'A' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}

impl fmt::Display for Trunk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trunk::Hole(i) => f.write_str(&hole_name(*i)),
            Trunk::Ap(a, b) => match **b {
                Trunk::Ap(..) => write!(f, "{a}*({b})"),
                Trunk::Hole(_) => write!(f, "{a}*{b}"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    pub trunk: Trunk,
    /// Hole id and the maximal typable subtree cut out there, in pre-order.
    pub equations: Vec<(usize, SkTerm)>,
}

pub fn well_typed_frontier(t: &SkTerm) -> Frontier {
    fn wtf(t: &SkTerm, eqs: &mut Vec<(usize, SkTerm)>) -> Trunk {
        if typable_sk(t) {
            let i = eqs.len();
            eqs.push((i, t.clone()));
            return Trunk::Hole(i);
        }
        match t {
            SkTerm::Ap(a, b) => {
                let x = wtf(a, eqs);
                Trunk::Ap(Box::new(x), Box::new(wtf(b, eqs)))
            }
            _ => unreachable!("S and K are typable"),
        }
    }
    let mut equations = Vec::new();
    let trunk = wtf(t, &mut equations);
    Frontier { trunk, equations }
}

pub fn extract_frontier(f: &Frontier) -> Vec<SkTerm> {
    f.equations.iter().map(|(_, t)| t.clone()).collect()
}

/// Graft the frontier back into the trunk.
pub fn fuse_frontier(f: &Frontier) -> SkTerm {
    fn graft(t: &Trunk, eqs: &HashMap<usize, &SkTerm>) -> SkTerm {
        match t {
            Trunk::Hole(i) => eqs[i].clone(),
            Trunk::Ap(a, b) => SkTerm::ap(graft(a, eqs), graft(b, eqs)),
        }
    }
    let eqs = f.equations.iter().map(|(i, t)| (*i, t)).collect();
    graft(&f.trunk, &eqs)
}

/// Normalize every frontier member and graft the results back.
pub fn simplify_sk(t: &SkTerm) -> SkTerm {
    let mut f = well_typed_frontier(t);
    for (_, m) in f.equations.iter_mut() {
        *m = eval_sk(m);
    }
    fuse_frontier(&f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierRow {
    pub size: usize,
    pub avg_trunk: f64,
    pub avg_frontier: f64,
    pub pct_trunk: f64,
    pub pct_frontier: f64,
}

/// Average trunk and frontier sizes over all SK trees of each size 1..=max_size.
pub fn frontier_stats(max_size: usize) -> Vec<FrontierRow> {
    (1..=max_size)
        .map(|n| {
            let (mut count, mut trunk, mut front) = (0u64, 0u64, 0u64);
            crate::generate::gen_sk(n, Mode::Exact).for_each(|t| {
                let f = well_typed_frontier(&t);
                count += 1;
                trunk += f.trunk.size() as u64;
                front += f.equations.iter().map(|(_, m)| m.size() as u64).sum::<u64>();
            });
            let avg_trunk = trunk as f64 / count as f64;
            let avg_frontier = front as f64 / count as f64;
            FrontierRow {
                size: n,
                avg_trunk,
                avg_frontier,
                pct_trunk: avg_trunk / n as f64 * 100.0,
                pct_frontier: avg_frontier / n as f64 * 100.0,
            }
        })
        .collect()
}

// ------------------------------------------------------------ X-tree types

/// Apply X-tree type inference at most `max_steps` times, stopping at an
/// untypable tree or a type already produced.
pub fn iter_type(t: &BinTree, max_steps: usize) -> (Vec<BinTree>, usize) {
    let mut seen: Vec<BinTree> = Vec::new();
    let mut x = t.clone();
    while seen.len() < max_steps {
        match xtype(&x) {
            Some(ty) if !seen.contains(&ty) => {
                seen.push(ty.clone());
                x = ty;
            }
            _ => break,
        }
    }
    let steps = seen.len();
    (seen, steps)
}

/// X-trees with `n` internal nodes that are an instance of their own principal type.
pub fn gen_self_typed(n: usize) -> Enumeration<'static, BinTree> {
    gen_tree(n, Mode::Exact).filter(|t| check_db(&x_to_db(t), t))
}

pub fn inflate_b2b(t: &DbTerm) -> DbTerm {
    x_to_db(&rank_db(t))
}

pub fn inflate_t2t(t: &BinTree) -> BinTree {
    rank_db(&x_to_db(t))
}

/// Normal form if `t` is typable and not already normal, otherwise the term of next rank.
pub fn eval_or_next(t: &DbTerm) -> Result<DbTerm, TreeNatError> {
    if infer_db(t).is_some() {
        let nf = nf_reduce(t, None).expect("typable terms normalize");
        if &nf != t {
            return Ok(nf);
        }
    }
    unrank_db(&tree_succ(&rank_db(t)))
}

/// The start followed by `steps` applications of [`eval_or_next`].
pub fn orbit(t: &DbTerm, steps: usize) -> Result<Vec<DbTerm>, TreeNatError> {
    let mut out = vec![t.clone()];
    for _ in 0..steps {
        let next = eval_or_next(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(s: &str) -> BinTree {
        s.parse().unwrap()
    }

    fn sk(s: &str) -> SkTerm {
        s.parse().unwrap()
    }

    #[test]
    fn query_example() {
        let got: Vec<String> =
            query_typed(3, &tree("x>x"), Mode::Exact).collect_vec().iter().map(|t| t.to_string()).collect();
        assert_eq!(got, ["a(l(v(0)),l(v(0)))", "l(a(l(v(0)),v(0)))", "l(a(l(v(1)),v(0)))"]);
    }

    #[test]
    fn siblings_example() {
        let t: DbTerm = "l(l(a(v(0),a(v(0),v(1)))))".parse().unwrap();
        let got: Vec<String> = type_siblings(&t).unwrap().collect_vec().iter().map(|t| t.to_string()).collect();
        assert_eq!(got, ["l(l(a(v(0),v(1))))", "l(l(a(v(0),a(v(0),v(1)))))"]);
    }

    #[test]
    fn frontier_example() {
        let t = sk("s*s*(s*k*k)*(s*s*(s*k*k))");
        let f = well_typed_frontier(&t);
        assert_eq!(f.trunk.to_string(), "A*B*(C*D)");
        let members: Vec<String> = extract_frontier(&f).iter().map(|m| m.to_string()).collect();
        assert_eq!(members, ["s*s", "s*k*k", "s*s", "s*k*k"]);
        assert_eq!(fuse_frontier(&f), t);
    }

    #[test]
    fn simplify_examples() {
        assert_eq!(simplify_sk(&sk("s*s*s*(s*s)*s*(k*s*k)")).to_string(), "s*s*s*(s*s)*s*s");
        assert_eq!(simplify_sk(&sk("k*(s*s*s*(s*s)*s*(k*s*k))")).to_string(), "k*(s*s*s*(s*s)*s*s)");
    }

    #[test]
    fn iter_examples() {
        let (ts, steps) = iter_type(&tree("(x>x)>x"), 100);
        let shown: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, ["x>(x>x)", "(x>(x>x))>((x>x)>(x>x))", "(x>x)>(x>x)"]);
        assert_eq!(steps, 3);
        let (ts, steps) = iter_type(&tree("((x>(x>x))>((x>x)>x))>((x>x)>x)"), 100);
        assert_eq!(steps, 5);
        assert_eq!(ts[4].to_string(), "(x>x)>(x>x)");
    }

    #[test]
    fn self_typed_example() {
        let got = gen_self_typed(6).collect_vec();
        assert_eq!(got.len(), 4);
        assert_eq!(got[0].to_string(), "x>((x>x)>((x>x)>(x>x)))");
    }

    #[test]
    fn orbit_includes_start() {
        let start: DbTerm = "l(v(0))".parse().unwrap();
        let o = orbit(&start, 5).unwrap();
        assert_eq!(o.len(), 6);
        assert_eq!(o[0], start);
    }
}
