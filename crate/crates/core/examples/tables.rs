//! Prints a few of the count tables: typed terms, SK density and the type census.

use lambda_playground::generate::{gen_typed, Mode};
use lambda_playground::lab::{sk_density, type_census};

fn main() {
    let typed: Vec<u64> = (1..=7).map(|n| gen_typed(n, Mode::Exact).count()).collect();
    println!("closed typable terms by size: {typed:?}");

    println!("size\ttyped\ttotal\tratio");
    for r in sk_density(6) {
        println!("{}\t{}\t{}\t{:.4}", r.size, r.typed, r.total, r.ratio);
    }

    for row in type_census(6, 1) {
        let size = row.size.map_or("all".to_string(), |s| s.to_string());
        let (ty, count) = &row.top_types[0];
        println!("census {size}: {} types, {} terms, most common {ty} ({count})", row.distinct_types, row.terms);
    }
}
