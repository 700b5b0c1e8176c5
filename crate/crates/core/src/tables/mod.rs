//! Table data for the `t = 2` ramification types: the realizable types
//! (table 1), the genus at most 1 types of the coordinate action (table 2),
//! the Galois genus at most 1 types (table 3) and the non-occurring types
//! (table 4), together with realization recipes, the row verifier and the
//! non-existence witnesses.
//!
//! The data ships as a versioned JSON file embedded at compile time. Row
//! descriptors are symbolic in `l` and `a` (see [`expr`]); a row is valid at
//! `(l, a)` exactly when every multiplicity evaluates to a nonnegative
//! integer, every partition sums to `l`, and `0 < a < l/2` with
//! `gcd(a, l) = 1` when the row mentions `a`.

pub mod expr;
pub mod realize;
pub mod small;
pub mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monodromy::GroupId;
use crate::wreath::ClassDescriptor;

pub use realize::{
    even_commutator_census, grid, realize, realize_with, variant_feasible, verify_row,
    CommutatorCensus, CoverReport, Realization,
};
pub use small::{
    refute, verify_table2, verify_table3, RefutationReport, Table2Report, Table3Report,
};
pub use witness::{
    f4n3_search, nonexistence_witness, random_witness_params, F4N3Report, Witness, WitnessKind,
};

/// Smallest degree for which group-theoretic claims are made.
pub const MIN_REALIZE_DEGREE: usize = 9;

/// Smallest degree accepted for arithmetic-only instantiation.
pub const MIN_INSTANTIATE_DEGREE: usize = 7;

const TABLE_DATA: &str = include_str!("../../data/tables.json");

/// Rule giving the expected group of a table 1 row.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum GroupRule {
    Const {
        id: GroupId,
    },
    /// Keyed by `l mod modulus`.
    Mod {
        modulus: usize,
        map: BTreeMap<String, GroupId>,
    },
    /// Keyed by the construction variant.
    Variant {
        default: GroupId,
        even: GroupId,
    },
}

/// How a row is realized when no explicit construction is tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Recipe {
    /// Explicit base permutations for the `(b,d), (1,u)s, (bv,b^-1)s` shape.
    Explicit,
    /// An explicit product-1 triple (or quadruple) in `S_l`, braided into
    /// the two-swap layout.
    Triple,
    /// The four-swap construction for the genus 1 types with four swaps.
    F4,
    /// Seeded search.
    Sampler,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Row {
    pub id: String,
    pub descriptors: Vec<String>,
    pub genus: i64,
    pub group: GroupRule,
    pub recipe: Recipe,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table2Row {
    pub degree: usize,
    pub classes: Vec<String>,
    pub group: String,
    pub order: u64,
    /// Number of group elements of each order.
    pub element_orders: BTreeMap<String, u64>,
    pub genus: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table3Row {
    pub case: String,
    /// Ramification indices as expressions in `m`.
    pub indices: Vec<String>,
    /// Default group order used when none is supplied.
    pub m: u64,
    pub genus: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table4Row {
    pub id: String,
    pub descriptors: Vec<String>,
    pub witness: String,
}

/// A small-degree ramification type with no primitive realization.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Refutation {
    pub id: String,
    pub degree: usize,
    pub classes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableData {
    pub version: String,
    pub table1: Vec<Table1Row>,
    pub table2: Vec<Table2Row>,
    pub table3: Vec<Table3Row>,
    pub table4: Vec<Table4Row>,
    pub refutations: Vec<Refutation>,
}

/// The embedded table data.
pub fn data() -> &'static TableData {
    static DATA: OnceLock<TableData> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(TABLE_DATA).expect("embedded table data parses"))
}

/// Version string of the embedded data file.
pub fn data_version() -> &'static str {
    &data().version
}

/// Looks up a table 1 row.
pub fn row(id: &str) -> Result<&'static Table1Row> {
    data()
        .table1
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownRow(id.to_string()))
}

/// Looks up a table 4 row.
pub fn table4_row(id: &str) -> Result<&'static Table4Row> {
    data()
        .table4
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownRow(id.to_string()))
}

/// Construction variant for the rows whose group depends on the choice of
/// base permutations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Default,
    /// Even base permutations, giving a subgroup of `A_l wr S_2`.
    Even,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "default" => Ok(Variant::Default),
            "even" => Ok(Variant::Even),
            _ => Err(Error::InvalidInput(format!("unknown variant {s:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Default => "default",
            Variant::Even => "even",
        })
    }
}

/// A row instantiated at concrete parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Instantiation {
    pub id: String,
    pub ell: usize,
    pub a: Option<usize>,
    pub descriptors: Vec<ClassDescriptor>,
    pub warnings: Vec<String>,
}

fn uses_a(descriptors: &[String]) -> bool {
    descriptors.iter().any(|d| expr::mentions(d, 'a'))
}

/// Whether a table 1 row mentions the parameter `a`.
pub fn row_uses_a(id: &str) -> Result<bool> {
    Ok(uses_a(&row(id)?.descriptors))
}

fn instantiate_descriptors(
    id: &str,
    descriptors: &[String],
    ell: usize,
    a: Option<usize>,
) -> Result<Instantiation> {
    if ell < MIN_INSTANTIATE_DEGREE {
        return Err(Error::Congruence(format!(
            "{id} needs l >= {MIN_INSTANTIATE_DEGREE}, got {ell}"
        )));
    }
    let mut warnings = Vec::new();
    if ell < MIN_REALIZE_DEGREE {
        warnings.push(format!(
            "l = {ell} < {MIN_REALIZE_DEGREE}: arithmetic only, no group-theoretic claim"
        ));
    }
    let mut vars = expr::Bindings::new();
    vars.insert('l', ell as i64);
    if uses_a(descriptors) {
        let a = a.ok_or_else(|| Error::InvalidInput(format!("{id} needs the parameter a")))?;
        if a == 0 || 2 * a >= ell {
            return Err(Error::Congruence(format!(
                "{id} needs 0 < a < l/2, got a = {a}"
            )));
        }
        if a.gcd(&ell) != 1 {
            return Err(Error::Congruence(format!(
                "{id} needs gcd(a, l) = 1, got gcd({a}, {ell}) = {}",
                a.gcd(&ell)
            )));
        }
        vars.insert('a', a as i64);
    } else if a.is_some() {
        return Err(Error::InvalidInput(format!("{id} takes no parameter a")));
    }
    let descriptors = descriptors
        .iter()
        .map(|d| {
            expr::eval_descriptor(d, &vars).map_err(|e| match e {
                Error::Congruence(m) => Error::Congruence(format!("{id} at l = {ell}: {m}")),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Instantiation {
        id: id.to_string(),
        ell,
        a,
        descriptors,
        warnings,
    })
}

/// Instantiates a table 1 or table 4 row at `(l, a)`.
pub fn instantiate_row(id: &str, ell: usize, a: Option<usize>) -> Result<Instantiation> {
    if let Ok(r) = row(id) {
        return instantiate_descriptors(id, &r.descriptors, ell, a);
    }
    let r = table4_row(id)?;
    instantiate_descriptors(id, &r.descriptors, ell, a)
}

/// All valid values of the parameter for a row at degree `l`: `[None]` for
/// rows without `a`, an empty list when the row is invalid at `l`.
pub fn valid_parameters(id: &str, ell: usize) -> Result<Vec<Option<usize>>> {
    let r = row(id)?;
    let candidates: Vec<Option<usize>> = if uses_a(&r.descriptors) {
        (1..ell)
            .filter(|&a| 2 * a < ell && a.gcd(&ell) == 1)
            .map(Some)
            .collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for a in candidates {
        match instantiate_descriptors(id, &r.descriptors, ell, a) {
            Ok(_) => out.push(a),
            Err(Error::Congruence(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Expected monodromy group of a row at degree `l`.
pub fn expected_group(id: &str, ell: usize, variant: Variant) -> Result<GroupId> {
    let r = row(id)?;
    match (&r.group, variant) {
        (GroupRule::Const { id: g }, Variant::Default) => Ok(*g),
        (GroupRule::Mod { modulus, map }, Variant::Default) => {
            let key = (ell % modulus).to_string();
            map.get(&key).copied().ok_or_else(|| {
                Error::Congruence(format!("{id}: no group listed for l = {ell} mod {modulus}"))
            })
        }
        (GroupRule::Variant { default, .. }, Variant::Default) => Ok(*default),
        (GroupRule::Variant { even, .. }, Variant::Even) => Ok(*even),
        (_, Variant::Even) => Err(Error::InvalidInput(format!("{id} has no even variant"))),
    }
}

/// Whether a row accepts the even variant.
pub fn has_variants(id: &str) -> Result<bool> {
    Ok(matches!(row(id)?.group, GroupRule::Variant { .. }))
}
