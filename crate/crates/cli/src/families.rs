//! Generator families selectable from the command line.

use clap::ValueEnum;
use lambda_playground::codec;
use lambda_playground::generate::{self as g, Enumeration, Mode};
use lambda_playground::lab;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Binary trees by internal nodes
    Tree,
    /// Binary trees by depth bound
    TreeDepth,
    Motzkin,
    Schroeder,
    /// Closed terms with named variables
    Std,
    /// Closed de Bruijn terms
    Db,
    Compressed,
    /// Closed de Bruijn terms printed with canonical names
    Standard,
    Nf,
    Linear,
    Affine,
    /// Closed terms with at most `--depth` nested binders
    Bounded,
    /// Closed terms by binary lambda calculus code length
    Blc,
    /// Typable terms, by filtering
    Typable,
    /// Terms with their types
    Typed,
    /// Typed terms over up to `--max-free` free variables
    TypedFree,
    /// Types
    Type,
    /// Inhabitants of each type of the given size
    ByType,
    /// SK inhabitants of each type of the given size
    ByTypeSk,
    Sk,
    SkTyped,
    SkUntypable,
    /// X-trees that are instances of their type
    SelfTyped,
    /// Terms of ranks 0..=size
    Ogen,
    Cgen,
    Tgen,
}

pub struct Params {
    pub depth: usize,
    pub max_free: usize,
    pub exact: bool,
}

pub struct Item {
    pub term: String,
    pub extra: Option<(&'static str, String)>,
}

fn plain<T: ToString>(t: T) -> Item {
    Item { term: t.to_string(), extra: None }
}

fn pair<T: ToString, U: ToString>(key: &'static str, t: T, u: U) -> Item {
    Item { term: t.to_string(), extra: Some((key, u.to_string())) }
}

impl Family {
    /// Smallest size worth counting from.
    pub fn min_size(self) -> usize {
        use Family::*;
        match self {
            Tree | TreeDepth | Schroeder | Type | Sk | SkTyped | SkUntypable | Ogen | Cgen | Tgen => 0,
            _ => 1,
        }
    }

    pub fn items(self, n: usize, p: &Params) -> Enumeration<'static, Item> {
        use Family::*;
        let mode = if p.exact { Mode::Exact } else { Mode::Upto };
        match self {
            Tree => g::gen_tree(n, mode).map(plain),
            TreeDepth => g::gen_tree_by_depth(n).map(plain),
            Motzkin => g::gen_motzkin(n, false).map(plain),
            Schroeder => g::gen_motzkin(n, true).map(plain),
            Std => g::gen_lambda_std(n).map(plain),
            Db => g::gen_db(n, mode).map(plain),
            Compressed => g::gen_compressed(n, mode).map(plain),
            Standard => g::gen_standard(n, mode).map(plain),
            Nf => g::gen_nf(n, mode).map(plain),
            Linear => g::gen_linear(n).map(plain),
            Affine => g::gen_affine(n).map(plain),
            Bounded => g::gen_bounded_unary(p.depth, n, mode).map(plain),
            Blc => g::gen_blc(n).map(|(t, code)| {
                let bits: String = code.iter().map(|b| char::from(b'0' + b)).collect();
                pair("code", t, bits)
            }),
            Typable => g::gen_typable(n, mode).map(plain),
            Typed => g::gen_typed(n, mode).map(|(t, ty)| pair("type", t, ty)),
            TypedFree => g::gen_typed_with_free(n, p.max_free).map(|(t, ty)| pair("type", t, ty)),
            Type => g::gen_type(n, mode).map(plain),
            ByType => g::gen_by_type(n).map(|(t, ty)| pair("type", t, ty)),
            ByTypeSk => g::gen_by_type_sk(n).map(|(t, ty)| pair("type", t, ty)),
            Sk => g::gen_sk(n, mode).map(plain),
            SkTyped => g::gen_typed_sk(n, mode).map(|(t, ty)| pair("type", t, ty)),
            SkUntypable => g::gen_untypable_sk(n, mode).map(plain),
            SelfTyped => lab::gen_self_typed(n).map(plain),
            Ogen => codec::ogen(n as u64).map(plain),
            Cgen => codec::cgen(n as u64).map(plain),
            Tgen => codec::tgen(n as u64).map(plain),
        }
    }
}
