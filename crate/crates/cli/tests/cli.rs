use std::process::{Command, Output};

fn lplay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lplay")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = lplay(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn typed_pairs_golden() {
    let out = stdout(&["gen", "--family", "typed", "--size", "3", "--format", "pairs"]);
    assert_eq!(out, golden("gen_typed_3_pairs.txt"));
    assert_eq!(out.lines().count(), 9);
}

#[test]
fn rank_golden() {
    let out = stdout(&["rank", "--scheme", "term", "a(3,a(0,v(0,2),v(0,0)),a(0,v(0,1),v(0,0)))"]);
    assert_eq!(out, golden("rank_term_s.txt"));
}

#[test]
fn count_golden() {
    assert_eq!(stdout(&["count", "--family", "sk-typed", "--max", "5"]), golden("count_sk_typed_5.txt"));
    assert_eq!(stdout(&["count", "--family", "sk-typed", "--max", "5", "--jobs", "3"]), golden("count_sk_typed_5.txt"));
}

#[test]
fn random_and_orbit_goldens() {
    assert_eq!(stdout(&["random", "--kind", "closed", "--bits", "10", "--seed", "42"]), golden("random_closed_10_42.txt"));
    let x = stdout(&["convert", "--from", "x", "--to", "db", "x"]);
    let out = stdout(&["orbit", "--steps", "12", "--format", "csv", x.trim()]);
    assert_eq!(out, golden("orbit_x_12.csv"));
}

fn sample_ranks() -> Vec<u64> {
    let mut r = 0x9e37_79b9u64;
    (0..100)
        .map(|i| {
            r = r.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            if i < 20 { i } else { (r >> 33) % 1_000_000_000 }
        })
        .collect()
}

#[test]
fn unrank_then_rank_is_identity() {
    for scheme in ["term", "type", "catalan", "nat"] {
        for r in sample_ranks() {
            let obj = stdout(&["unrank", "--scheme", scheme, &r.to_string()]);
            let back = stdout(&["rank", "--scheme", scheme, obj.trim()]);
            assert_eq!(back.trim(), r.to_string(), "{scheme} {obj}");
        }
    }
    for r in sample_ranks() {
        let obj = stdout(&["unrank", "--scheme", "cantor", "--arity", "3", &r.to_string()]);
        let back = stdout(&["rank", "--scheme", "cantor", obj.trim()]);
        assert_eq!(back.trim(), r.to_string());
    }
    for r in sample_ranks().into_iter().map(|r| r % 100_000) {
        let tree = stdout(&["unrank", "--scheme", "nat", &r.to_string()]);
        let term = stdout(&["unrank", "--scheme", "db", tree.trim()]);
        let back = stdout(&["rank", "--scheme", "db", term.trim()]);
        assert_eq!(back, tree);
    }
}

#[test]
fn exit_codes() {
    let omega = lplay(&["eval", "a(l(a(v(0),v(0))),l(a(v(0),v(0))))"]);
    assert_eq!(omega.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&omega.stderr).contains("fuel exhausted"));
    assert_eq!(lplay(&["type", "l(a(v(0),v(0)))"]).status.code(), Some(2));
    assert_eq!(lplay(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lplay(&["eval", "l(v(0)"]).status.code(), Some(1));
    assert_eq!(lplay(&["unrank", "--scheme", "catalan", "-1"]).status.code(), Some(1));
    assert_eq!(lplay(&["--help"]).status.code(), Some(0));
}

#[test]
fn assorted_commands() {
    assert_eq!(stdout(&["eval", "--engine", "sk", "s*k*k*s"]), "s\n");
    assert_eq!(stdout(&["type", "--engine", "sk", "k*s*k"]), "(A>(B>C))>((A>B)>(A>C))\n");
    assert_eq!(stdout(&["type", "--engine", "x-direct", "((x>(x>x))>((x>x)>x))>((x>x)>x)"]), "x>x\n");
    assert_eq!(stdout(&["convert", "--from", "db", "--to", "comp", "l(l(l(a(a(v(2),v(0)),a(v(1),v(0))))))"]), "a(3,a(0,v(0,2),v(0,0)),a(0,v(0,1),v(0,0)))\n");
    assert_eq!(stdout(&["simplify-sk", "s*s*s*(s*s)*s*(k*s*k)"]), "s*s*s*(s*s)*s*s\n");
    assert_eq!(stdout(&["itertype", "(x>x)>x"]), "x>(x>x)\n(x>(x>x))>((x>x)>(x>x))\n(x>x)>(x>x)\nsteps 3\n");
    assert_eq!(stdout(&["count", "--family", "db", "--max", "5"]), "1 3 14 82 579\n");
    assert_eq!(stdout(&["unrank", "--scheme", "type", "100"]), "((x>x)>((x>(x>x))>x))>x\n");
    let census = stdout(&["census", "--max", "3", "--top", "1"]);
    assert_eq!(census.lines().count(), 4);
    let json = stdout(&["gen", "--family", "typed", "--size", "1", "--format", "json"]);
    assert!(json.starts_with('{') && json.contains("\"type\""));
}
