mod common;

use std::collections::{HashMap, HashSet};

use common::*;
use lambda_playground::generate::{gen_sk, gen_tree, gen_typed, Mode};
use lambda_playground::lab::*;
use lambda_playground::reduce::{eval_sk, x_db};
use lambda_playground::typeinf::{infer_db, typable_sk, xtype};
use lambda_playground::{BinTree, SkTerm};
use proptest::prelude::*;

fn strings<T: std::fmt::Display>(v: Vec<T>) -> Vec<String> {
    v.iter().map(|t| t.to_string()).collect()
}

#[test]
fn queries() {
    let q = strings(query_typed(3, &tree("x>x"), Mode::Exact).collect_vec());
    assert_eq!(q, ["a(l(v(0)),l(v(0)))", "l(a(l(v(0)),v(0)))", "l(a(l(v(1)),v(0)))"]);
    assert_eq!(query_typed(9, &tree("(x>x)>x"), Mode::Upto).count(), 0);
    for n in 1..=6 {
        let mut by_type: HashMap<BinTree, u64> = HashMap::new();
        gen_typed(n, Mode::Exact).for_each(|(_, ty)| *by_type.entry(ty).or_default() += 1);
        let total: u64 = by_type.keys().map(|ty| query_typed(n, ty, Mode::Exact).count()).sum();
        assert_eq!(total, by_type.values().sum::<u64>());
        for (ty, c) in &by_type {
            let q = query_typed(n, ty, Mode::Exact).collect_vec();
            assert_eq!(q.len() as u64, *c);
            assert!(q.iter().all(|t| infer_db(t).as_ref() == Some(ty)));
        }
    }
}

#[test]
fn siblings() {
    let t = db("l(l(a(v(0),a(v(0),v(1)))))");
    let s = strings(type_siblings(&t).unwrap().collect_vec());
    assert_eq!(s, ["l(l(a(v(0),v(1))))", "l(l(a(v(0),a(v(0),v(1)))))"]);
    assert_eq!(strings(type_siblings(&db("l(v(0))")).unwrap().collect_vec()), ["l(v(0))"]);
    assert!(type_siblings(&db("l(a(v(0),v(0)))")).is_none());
}

#[test]
fn census_agrees_with_generator() {
    let rows = type_census(7, 3);
    assert_eq!(rows.len(), 8);
    for (n, row) in rows.iter().take(7).enumerate() {
        assert_eq!(row.size, Some(n + 1));
        assert_eq!(row.terms, gen_typed(n + 1, Mode::Exact).count());
        assert!(row.top_types.windows(2).all(|w| w[0].1 >= w[1].1));
    }
    assert_eq!((rows[0].distinct_types, rows[0].terms), (1, 1));
    assert_eq!((rows[6].distinct_types, rows[6].terms), (1102, 11807));
    let all = &rows[7];
    assert_eq!(all.size, None);
    assert_eq!(all.terms, rows[..7].iter().map(|r| r.terms).sum::<u64>());
}

#[test]
fn growth_sequences() {
    assert_eq!(growth_sequence(&tree("x>(x>x)"), 7), [0, 2, 0, 14, 12, 201, 445]);
    assert_eq!(growth_sequence(&tree("x>x"), 7), [1, 0, 3, 3, 31, 78, 596]);
    assert_eq!(growth_sequence(&tree("(x>x)>(x>x)"), 7), [0, 0, 1, 1, 18, 52, 503]);
    assert!(growth_sequence(&tree("(x>x)>x"), 7).iter().all(|c| *c == 0));
}

#[test]
fn densities() {
    let sk = sk_density(6);
    let typed: Vec<u64> = sk.iter().map(|r| r.typed).collect();
    assert_eq!(typed, [2, 4, 14, 67, 337, 1867, 10699]);
    for r in &sk {
        assert_eq!(r.total, 2u64.pow(r.size as u32 + 1) * catalan_oracle(r.size));
    }
    let x = x_density(8);
    let typed: Vec<u64> = x.iter().map(|r| r.typed).collect();
    assert_eq!(typed, [1, 1, 2, 5, 12, 38, 113, 357, 1148]);
    assert!(x.iter().all(|r| r.total == catalan_oracle(r.size)));
    assert!((x[4].ratio - 12.0 / 14.0).abs() < 1e-12);
}

#[test]
fn frontier_examples() {
    let f = well_typed_frontier(&sk("s*s*(s*k*k)*(s*s*(s*k*k))"));
    assert_eq!(f.trunk.to_string(), "A*B*(C*D)");
    assert_eq!(strings(extract_frontier(&f)), ["s*s", "s*k*k", "s*s", "s*k*k"]);
    let f = well_typed_frontier(&sk("k*s"));
    assert_eq!(f.trunk, Trunk::Hole(0));
    assert_eq!(strings(extract_frontier(&f)), ["k*s"]);
    assert_eq!(simplify_sk(&sk("s*s*s*(s*s)*s*(k*s*k)")), sk("s*s*s*(s*s)*s*s"));
    assert_eq!(simplify_sk(&sk("k*(s*s*s*(s*s)*s*(k*s*k))")), sk("k*(s*s*s*(s*s)*s*s)"));
    assert_eq!(simplify_sk(&sk("s*k*k*(k*s)")), eval_sk(&sk("s*k*k*(k*s)")));
}

#[test]
fn frontier_invariants_up_to_size_6() {
    gen_sk(6, Mode::Upto).for_each(|t| {
        let f = well_typed_frontier(&t);
        assert_eq!(fuse_frontier(&f), t);
        for (_, m) in &f.equations {
            assert!(typable_sk(m));
        }
        fn parents_untypable(t: &SkTerm, trunk: &Trunk) {
            if let (SkTerm::Ap(a, b), Trunk::Ap(ta, tb)) = (t, trunk) {
                assert!(!typable_sk(t), "{t}");
                parents_untypable(a, ta);
                parents_untypable(b, tb);
            }
        }
        parents_untypable(&t, &f.trunk);
        let trunk_size = f.trunk.size();
        let front: usize = f.equations.iter().map(|(_, m)| m.size()).sum();
        assert_eq!(trunk_size + front, t.size());
    });
}

#[test]
fn simplify_terminates_up_to_size_8() {
    let start = std::time::Instant::now();
    gen_sk(8, Mode::Upto).for_each(|t| {
        let s = simplify_sk(&t);
        if typable_sk(&t) {
            assert_eq!(s, eval_sk(&t));
        }
    });
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn frontier_table() {
    let rows = frontier_stats(6);
    assert_eq!((rows[0].avg_trunk, rows[0].avg_frontier), (0.0, 1.0));
    assert_eq!((rows[0].pct_trunk, rows[0].pct_frontier), (0.0, 100.0));
    let r4 = &rows[3];
    assert!((r4.avg_trunk - 0.47).abs() < 0.01 && (r4.avg_frontier - 3.53).abs() < 0.01);
    assert!((r4.pct_trunk - 11.77).abs() < 0.01 && (r4.pct_frontier - 88.23).abs() < 0.01);
}

#[test]
fn iterated_types() {
    let (types, steps) = iter_type(&tree("(x>x)>x"), 100);
    assert_eq!(strings(types), ["x>(x>x)", "(x>(x>x))>((x>x)>(x>x))", "(x>x)>(x>x)"]);
    assert_eq!(steps, 3);
    let (types, steps) = iter_type(&tree("((x>(x>x))>((x>x)>x))>((x>x)>x)"), 100);
    assert_eq!(steps, 5);
    assert_eq!(types.last().unwrap(), &tree("(x>x)>(x>x)"));
    let untypable = gen_tree(6, Mode::Upto).filter(|t: &BinTree| xtype(t).is_none()).first().unwrap();
    assert_eq!(iter_type(&untypable, 100), (vec![], 0));
    gen_tree(6, Mode::Upto).for_each(|t| {
        let (types, steps) = iter_type(&t, 50);
        let distinct: HashSet<_> = types.iter().collect();
        assert_eq!(distinct.len(), types.len());
        assert_eq!(steps, types.len());
    });
}

#[test]
fn self_typed() {
    let counts: Vec<u64> = (1..=8).map(|n| gen_self_typed(n).count()).collect();
    assert_eq!(counts, [0, 0, 0, 1, 2, 4, 14, 34]);
    let six = gen_self_typed(6).collect_vec();
    assert_eq!(six.len(), 4);
    assert_eq!(six[0], tree("x>((x>x)>((x>x)>(x>x)))"));
}

#[test]
fn inflation() {
    let sizes: Vec<usize> = (0..4).map(|k| inflate_t2t(&lambda_playground::treenat::tree_of_u64(k)).size()).collect();
    assert_eq!(sizes, [27, 57, 86, 86]);
    let skk = lambda_playground::reduce::sk_to_db(&sk("s*k*k"));
    assert_eq!(skk.size(), 12);
    assert_eq!(inflate_b2b(&skk).size(), 374);
    let trees = gen_tree(4, Mode::Upto).collect_vec();
    let images: HashSet<_> = trees.iter().map(inflate_t2t).collect();
    assert_eq!(images.len(), trees.len());
    assert!(trees.iter().all(|t| inflate_t2t(t).size() > t.size()));
    let terms = lambda_playground::generate::gen_db(4, Mode::Upto).collect_vec();
    let images: HashSet<_> = terms.iter().map(inflate_b2b).collect();
    assert_eq!(images.len(), terms.len());
}

#[test]
fn orbits() {
    let o = orbit(&x_db(), 12).unwrap();
    assert_eq!(o.len(), 13);
    assert_eq!(o[0], x_db());
    let sizes: Vec<usize> = o.iter().map(|t| t.size()).collect();
    assert_eq!(sizes, ORBIT_SIZES);
    let nf = db("l(a(v(0),v(0)))");
    let step = orbit(&nf, 1).unwrap();
    assert_eq!(step[1], lambda_playground::treenat::unrank_db(&lambda_playground::treenat::tree_succ(&lambda_playground::treenat::rank_db(&nf))).unwrap());
}

const ORBIT_SIZES: [usize; 13] = [14, 11, 10, 13, 15, 10, 9, 9, 9, 7, 7, 6, 5];

proptest! {
    #[test]
    fn fuse_undoes_frontier(t in arb_sk()) {
        prop_assert_eq!(fuse_frontier(&well_typed_frontier(&t)), t);
    }

    #[test]
    fn t2t_is_injective(a in arb_tree(), b in arb_tree()) {
        prop_assume!(a != b);
        prop_assert_ne!(inflate_t2t(&a), inflate_t2t(&b));
    }
}
