//! Small-degree checks: table 2 by exhaustive search, table 3 by the Galois
//! genus formula, and the degree-6 refutations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{data, expr};
use crate::error::{Error, Result};
use crate::permcore::GroupHandle;
use crate::ramify::galois_genus;
use crate::search::{exists_primitive_tuple, find_tuples, SearchQuery};

/// Outcome of the exhaustive check of one table 2 row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table2Report {
    pub index: usize,
    pub degree: usize,
    pub classes: Vec<String>,
    pub group: String,
    /// Transitive product-1 tuples found.
    pub tuples: usize,
    pub nodes: u64,
    pub expected_order: u64,
    /// Distinct group orders among the tuples.
    pub orders: Vec<String>,
    /// Whether every tuple's group has the expected element-order histogram.
    pub element_orders_match: bool,
    /// Lcm of each class, the ramification of the Galois closure.
    pub galois_indices: Vec<u64>,
    pub expected_genus: i64,
    pub genus: Option<i64>,
    pub passed: bool,
}

/// Element-order histogram of a group, by listing its elements.
fn element_orders(g: &GroupHandle) -> BTreeMap<String, u64> {
    let mut hist = BTreeMap::new();
    for x in g.elements() {
        *hist.entry(x.order().to_string()).or_insert(0) += 1;
    }
    hist
}

/// Checks table 2 row `index` (0-based) by exhaustive search.
pub fn verify_table2(index: usize) -> Result<Table2Report> {
    let row = data()
        .table2
        .get(index)
        .ok_or_else(|| Error::UnknownRow(format!("table 2 row {index}")))?;
    let classes = SearchQuery::parse_classes(row.degree, &row.classes.join(";"))?;
    let res = find_tuples(&SearchQuery::new(row.degree, classes.clone()).transitive())?;
    let mut orders = Vec::new();
    let mut element_orders_match = true;
    let mut histograms: Vec<(String, BTreeMap<String, u64>)> = Vec::new();
    for t in &res.tuples {
        let g = GroupHandle::new(row.degree, t.clone())?;
        let order = g.order().to_string();
        if !orders.contains(&order) {
            orders.push(order.clone());
        }
        // Groups of the same order from tuples of one type are few; cache
        // the histogram per order.
        let hist = match histograms.iter().find(|(o, _)| *o == order) {
            Some((_, h)) => h.clone(),
            None => {
                let h = element_orders(&g);
                histograms.push((order.clone(), h.clone()));
                h
            }
        };
        if hist != row.element_orders {
            element_orders_match = false;
        }
    }
    let galois_indices: Vec<u64> = classes.iter().map(|c| c.lcm() as u64).collect();
    let genus = galois_genus(row.order, &galois_indices).ok();
    let passed = !res.tuples.is_empty()
        && orders == vec![row.order.to_string()]
        && element_orders_match
        && genus == Some(row.genus);
    Ok(Table2Report {
        index,
        degree: row.degree,
        classes: row.classes.clone(),
        group: row.group.clone(),
        tuples: res.tuples.len(),
        nodes: res.nodes,
        expected_order: row.order,
        orders,
        element_orders_match,
        galois_indices,
        expected_genus: row.genus,
        genus,
        passed,
    })
}

/// Outcome of the Galois genus check of one table 3 case.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table3Report {
    pub case: String,
    pub m: u64,
    pub indices: Vec<u64>,
    pub expected_genus: i64,
    pub genus: i64,
    pub passed: bool,
}

/// Checks a table 3 case at group order `m` (the row's default if `None`).
pub fn verify_table3(case: &str, m: Option<u64>) -> Result<Table3Report> {
    let row = data()
        .table3
        .iter()
        .find(|r| r.case == case)
        .ok_or_else(|| Error::UnknownRow(format!("table 3 case {case}")))?;
    let m = m.unwrap_or(row.m);
    let mut vars = expr::Bindings::new();
    vars.insert('m', m as i64);
    let indices = row
        .indices
        .iter()
        .map(|e| {
            let v = expr::eval_int(e, &vars)?;
            u64::try_from(v)
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::Congruence(format!("index {e} = {v} at m = {m}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    let genus = galois_genus(m, &indices)?;
    Ok(Table3Report {
        case: case.to_string(),
        m,
        indices,
        expected_genus: row.genus,
        genus,
        passed: genus == row.genus,
    })
}

/// Outcome of an exhaustive refutation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RefutationReport {
    pub id: String,
    pub degree: usize,
    pub classes: Vec<String>,
    pub nodes: u64,
    pub type_matches: u64,
    pub transitive_tuples: u64,
    pub primitive_tuple_found: bool,
    pub refuted: bool,
}

/// Exhaustively confirms that a listed small-degree type has no tuple
/// generating a primitive group.
pub fn refute(id: &str) -> Result<RefutationReport> {
    let r = data()
        .refutations
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownRow(id.to_string()))?;
    let classes = SearchQuery::parse_classes(r.degree, &r.classes.join(";"))?;
    let res = exists_primitive_tuple(&SearchQuery::new(r.degree, classes))?;
    Ok(RefutationReport {
        id: id.to_string(),
        degree: r.degree,
        classes: r.classes.clone(),
        nodes: res.nodes,
        type_matches: res.type_matches,
        transitive_tuples: res.transitive_tuples,
        primitive_tuple_found: res.exists,
        refuted: !res.exists,
    })
}
