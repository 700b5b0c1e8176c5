//! Command-line interface. Every command builds a [`RunReport`]; the exit
//! code is 0 when all checks pass, 1 when a check fails and 2 on invalid
//! input.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::monodromy::{check_product_one, is_product_type};
use crate::orbitcount::{rpi_bruteforce, CosetModel, DEFAULT_ORBIT_CAP};
use crate::permcore::{product, GroupHandle};
use crate::ramify::{genus_from_wreath_tuple, T2Data};
use crate::reducer::{check_multiset, hatf_genus, normalize_lgy, reduced_multiset};
use crate::report::RunReport;
use crate::search::{find_tuples, SearchQuery};
use crate::tables::{
    self, f4n3_search, grid, nonexistence_witness, random_witness_params, refute, variant_feasible,
    verify_row, verify_table2, verify_table3, Variant,
};
use crate::wreath::TupleFile;

/// Exit code for a run whose checks all pass.
pub const EXIT_OK: i32 = 0;
/// Exit code for a run with a failed check.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit code for invalid input.
pub const EXIT_INVALID_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "wreathcover",
    version,
    about = "Covers of the line with wreath-product monodromy"
)]
pub struct Cli {
    /// Emit the JSON report, to stdout or to PATH.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "-", value_name = "PATH")]
    pub json: Option<String>,
    /// Record wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Default,
    Even,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Default => Variant::Default,
            VariantArg::Even => Variant::Even,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantSelection {
    Default,
    Even,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Realize a table 1 type and check the resulting cover.
    Realize {
        #[arg(long = "type")]
        id: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long, value_enum, default_value = "default")]
        variant: VariantArg,
        /// Write the tuple to this file in tuple-file format.
        #[arg(long, value_name = "PATH")]
        tuple_out: Option<PathBuf>,
    },
    /// Check a whole table.
    VerifyTable {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        table: u8,
        /// Degree range `A:B` (tables 1 and 4).
        #[arg(long)]
        ell_range: Option<String>,
        /// Worker threads; defaults to the available cores.
        #[arg(long)]
        parallel: Option<usize>,
        /// Witness draws per type and degree (table 4).
        #[arg(long, default_value_t = 20)]
        draws: usize,
        /// Construction variants to run (table 1).
        #[arg(long, value_enum, default_value = "all")]
        variants: VariantSelection,
    },
    /// Genus of the cover defined by a tuple file.
    Genus {
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Reduced product-1 multiset of a tuple file.
    Reduce {
        #[arg(long)]
        tuple: PathBuf,
        /// Skip the swap-move normalization.
        #[arg(long)]
        no_normalize: bool,
    },
    /// Search for product-1 tuples in given classes of `S_n`.
    Search {
        #[arg(long)]
        degree: usize,
        /// Classes such as `[6];[3,3];[2,1^4]`.
        #[arg(long)]
        classes: String,
        #[arg(long)]
        require_transitive: bool,
        #[arg(long)]
        require_primitive: bool,
        /// Keep only tuples generating a group of this order.
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Product-type analysis and group identification of a tuple file.
    Classify {
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Orbit-count ramification value of each entry of a tuple file.
    Rpi {
        #[arg(long)]
        tuple: PathBuf,
        /// Model `M` as the regular set of the cyclic group of each top
        /// instead of the image of the whole tuple.
        #[arg(long)]
        cyclic: bool,
    },
}

/// Exit code for an error raised while running a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::CapExceeded(_) | Error::NotFound(_) | Error::Io(_) => {
            EXIT_CHECK_FAILED
        }
        _ => EXIT_INVALID_INPUT,
    }
}

fn read_tuple(path: &Path) -> Result<TupleFile> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    TupleFile::from_json(&text)
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("range {text:?} is not of the form A:B")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad range bound {s:?}")))
    };
    let (lo, hi) = (parse(a)?, parse(b)?);
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty range {lo}:{hi}")));
    }
    Ok((lo, hi))
}

fn fmt_genus(g: Option<i64>) -> String {
    g.map(|g| g.to_string()).unwrap_or_else(|| "-".into())
}

fn fmt_a(a: Option<usize>) -> String {
    a.map(|a| a.to_string()).unwrap_or_else(|| "-".into())
}

/// Seed for one witness draw sequence, independent of scheduling.
fn witness_seed(id: &str, ell: usize) -> u64 {
    id.bytes()
        .chain(ell.to_le_bytes())
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
        })
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::Internal(format!("thread pool: {e}"))),
    }
}

fn cmd_realize(
    rep: &mut RunReport,
    id: &str,
    ell: usize,
    a: Option<usize>,
    variant: Variant,
    tuple_out: Option<&Path>,
) -> Result<()> {
    rep.param("type", id)
        .param("ell", ell)
        .param("a", fmt_a(a))
        .param("variant", variant);
    let cover = verify_row(id, ell, a, variant)?;
    rep.check(
        "realized",
        cover.realized,
        cover.failures.first().cloned().unwrap_or_default(),
    );
    if cover.realized {
        rep.check("classes match the row", cover.classes_match, "");
        rep.check("product is 1", cover.product_one, "");
        rep.check("transitive on Delta^2", cover.transitive, "");
        rep.check("primitive", cover.primitive, "");
        rep.check("K contains A_l^2", cover.k_contains_alternating_square, "");
        rep.check(
            "genus",
            cover.genus_tuple == Some(cover.expected_genus) && cover.genus_routes_agree,
            format!(
                "embedding {}, formula {}, expected {}",
                fmt_genus(cover.genus_tuple),
                fmt_genus(cover.genus_formula),
                cover.expected_genus
            ),
        );
        let name = |g: Option<crate::monodromy::GroupId>| {
            g.map(|g| g.as_str().to_string())
                .unwrap_or_else(|| "?".into())
        };
        rep.check(
            format!("group {}", name(cover.group)),
            cover.group.is_some() && cover.group == cover.expected_group,
            format!("expected {}", name(cover.expected_group)),
        );
    }
    if let (Some(path), Some(tuple)) = (tuple_out, &cover.tuple) {
        let file = TupleFile::new(tuple.clone())?;
        std::fs::write(path, file.to_json() + "\n")
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    rep.payload = serde_json::to_value(&cover).expect("cover reports serialize");
    Ok(())
}

fn cmd_verify_table1(
    rep: &mut RunReport,
    lo: usize,
    hi: usize,
    threads: Option<usize>,
    variants: VariantSelection,
) -> Result<()> {
    let cells: Vec<_> = grid(lo, hi)?
        .into_iter()
        .filter(|c| match variants {
            VariantSelection::All => true,
            VariantSelection::Default => c.3 == Variant::Default,
            VariantSelection::Even => c.3 == Variant::Even,
        })
        .collect();
    let (feasible, infeasible): (Vec<_>, Vec<_>) = cells
        .into_iter()
        .partition(|(id, ell, _, v)| variant_feasible(id, *ell, *v));
    let results: Vec<Result<tables::CoverReport>> = with_pool(threads, || {
        feasible
            .par_iter()
            .map(|(id, ell, a, v)| verify_row(id, *ell, *a, *v))
            .collect()
    })?;
    let mut summaries = Vec::new();
    for ((id, ell, a, v), res) in feasible.iter().zip(results) {
        let name = format!("{id} l={ell} a={} {v}", fmt_a(*a));
        match res {
            Ok(mut cover) => {
                rep.check(name, cover.passed, cover.failures.join("; "));
                cover.tuple = None;
                summaries.push(serde_json::to_value(&cover).expect("cover reports serialize"));
            }
            Err(e) => rep.check(name, false, e.to_string()),
        }
    }
    for (id, ell, a, v) in &infeasible {
        rep.notes.push(format!(
            "{id} l={ell} a={} {v}: infeasible, no even pair with a 3-cycle commutator \
             generates a primitive group at even l",
            fmt_a(*a)
        ));
    }
    let infeasible: Vec<_> = infeasible
        .iter()
        .map(|(id, ell, a, v)| json!({"id": id, "ell": ell, "a": a, "variant": v}))
        .collect();
    rep.payload = json!({"cells": summaries, "infeasible": infeasible});
    Ok(())
}

fn cmd_verify_table4(
    rep: &mut RunReport,
    lo: usize,
    hi: usize,
    draws: usize,
    threads: Option<usize>,
) -> Result<()> {
    let mut jobs = Vec::new();
    for row in &tables::data().table4 {
        if row.witness == "search" {
            continue;
        }
        for ell in lo..=hi {
            jobs.push((row.id.clone(), ell));
        }
    }
    let results: Vec<Result<(usize, Vec<String>)>> = with_pool(threads, || {
        jobs.par_iter()
            .map(|(id, ell)| {
                let mut rng = ChaCha8Rng::seed_from_u64(witness_seed(id, *ell));
                let mut verified = 0;
                let mut failures = Vec::new();
                for _ in 0..draws {
                    let params = random_witness_params(id, *ell, &mut rng)?;
                    let w = nonexistence_witness(id, &params)?;
                    if w.verified() {
                        verified += 1;
                    } else {
                        let bad: Vec<&str> = w
                            .relations
                            .iter()
                            .filter(|(_, ok)| !ok)
                            .map(|(r, _)| r.as_str())
                            .collect();
                        failures.push(bad.join(", "));
                    }
                }
                Ok((verified, failures))
            })
            .collect()
    })?;
    let mut witness_counts = Vec::new();
    for ((id, ell), res) in jobs.iter().zip(results) {
        let name = format!("{id} l={ell} witnesses");
        match res {
            Ok((verified, failures)) => {
                rep.check(
                    name,
                    verified == draws,
                    format!("{verified}/{draws} verified"),
                );
                witness_counts.push(json!({"id": id, "ell": ell, "verified": verified, "draws": draws, "failures": failures}));
            }
            Err(Error::Congruence(m)) => {
                witness_counts.push(json!({"id": id, "ell": ell, "skipped": m}));
            }
            Err(e) => rep.check(name, false, e.to_string()),
        }
    }
    let f4n3 = f4n3_search(5)?;
    rep.check(
        "F4.N3 l=5 exhaustive",
        f4n3.primitive_with_alternating_square == 0,
        format!(
            "{} tuples, {} transitive, {} primitive; {}",
            f4n3.tuples, f4n3.transitive, f4n3.primitive, f4n3.annotation
        ),
    );
    let mut refutations = Vec::new();
    for r in &tables::data().refutations {
        let res = refute(&r.id)?;
        rep.check(
            format!("{} refuted", r.id),
            res.refuted,
            format!(
                "{} nodes, {} transitive tuples",
                res.nodes, res.transitive_tuples
            ),
        );
        refutations.push(res);
    }
    rep.payload = json!({"witnesses": witness_counts, "f4n3": f4n3, "refutations": refutations});
    Ok(())
}

fn cmd_verify_table(
    rep: &mut RunReport,
    table: u8,
    range: Option<&str>,
    threads: Option<usize>,
    draws: usize,
    variants: VariantSelection,
) -> Result<()> {
    rep.param("table", table);
    let default_range = match table {
        1 => "9:12",
        4 => "9:11",
        _ => "",
    };
    let range_text = range.unwrap_or(default_range);
    if table == 1 || table == 4 {
        rep.param("ell-range", range_text);
    }
    if table == 4 {
        rep.param("draws", draws);
    }
    if table == 1 {
        rep.param("variants", format!("{variants:?}").to_lowercase());
    }
    match table {
        1 => {
            let (lo, hi) = parse_range(range_text)?;
            cmd_verify_table1(rep, lo, hi, threads, variants)
        }
        2 => {
            let n = tables::data().table2.len();
            let results: Vec<Result<tables::Table2Report>> = with_pool(threads, || {
                (0..n).into_par_iter().map(verify_table2).collect()
            })?;
            let mut rows = Vec::new();
            for res in results {
                let r = res?;
                rep.check(
                    format!("degree {} {}", r.degree, r.classes.join(" ")),
                    r.passed,
                    format!(
                        "{} tuples, group orders {}, genus {} (expected {})",
                        r.tuples,
                        r.orders.join(" "),
                        fmt_genus(r.genus),
                        r.expected_genus
                    ),
                );
                rows.push(r);
            }
            rep.payload = serde_json::to_value(rows).expect("table 2 reports serialize");
            Ok(())
        }
        3 => {
            let mut rows = Vec::new();
            for row in &tables::data().table3 {
                let r = verify_table3(&row.case, None)?;
                rep.check(
                    format!("case {} m={}", r.case, r.m),
                    r.passed && r.genus <= 1,
                    format!("indices {:?}, genus {}", r.indices, r.genus),
                );
                rows.push(r);
            }
            rep.payload = serde_json::to_value(rows).expect("table 3 reports serialize");
            Ok(())
        }
        4 => {
            let (lo, hi) = parse_range(range_text)?;
            cmd_verify_table4(rep, lo, hi, draws, threads)
        }
        _ => Err(Error::InvalidInput(format!("no table {table}"))),
    }
}

fn cmd_genus(rep: &mut RunReport, path: &Path) -> Result<()> {
    rep.param("tuple", path.display());
    let file = read_tuple(path)?;
    let xs = &file.elements;
    rep.check("product is 1", check_product_one(xs), "");
    let g = genus_from_wreath_tuple(xs)?;
    rep.check("genus", true, format!("g = {}", g.genus));
    let formula = if file.t == 2 {
        let f = T2Data::from_tuple(xs).and_then(|d| d.genus());
        if let Ok(fg) = f {
            rep.check(
                "swap-point formula agrees",
                fg == g.genus,
                format!("formula g = {fg}"),
            );
        }
        f.ok()
    } else {
        None
    };
    rep.payload = json!({"genus": g, "formula_genus": formula});
    Ok(())
}

fn cmd_reduce(rep: &mut RunReport, path: &Path, no_normalize: bool) -> Result<()> {
    rep.param("tuple", path.display())
        .param("normalize", !no_normalize);
    let file = read_tuple(path)?;
    let xs = if no_normalize {
        file.elements.clone()
    } else {
        normalize_lgy(&file.elements)?
    };
    let m = reduced_multiset(&xs)?;
    let c = check_multiset(&m, &xs);
    rep.check(
        "entries are orbit products of reduced forms",
        c.elements_match && c.orbits_covered,
        "",
    );
    rep.check("entry types match the source", c.types_match, "");
    rep.check(
        "certificate product is 1",
        c.certificate_complete && c.certificate_product_one,
        m.certificate_text(),
    );
    rep.check("entries generate a transitive group", c.transitive, "");
    let hatf = if c.transitive {
        let h = hatf_genus(&m)?;
        rep.check(
            "2l-2 <= sum of indices",
            h.bound_holds,
            format!("sum {}, genus {}", h.index_sum, h.genus.genus),
        );
        Some(h)
    } else {
        None
    };
    rep.payload = json!({
        "certificate_text": m.certificate_text(),
        "multiset": m,
        "hatf": hatf,
        "tuple": TupleFile::new(xs)?,
    });
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    rep: &mut RunReport,
    degree: usize,
    classes: &str,
    transitive: bool,
    primitive: bool,
    order: Option<String>,
    limit: Option<usize>,
    threads: Option<usize>,
) -> Result<()> {
    rep.param("degree", degree).param("classes", classes);
    rep.param("require-transitive", transitive)
        .param("require-primitive", primitive);
    if let Some(o) = &order {
        rep.param("order", o);
    }
    if let Some(l) = limit {
        rep.param("limit", l);
    }
    let mut q = SearchQuery::new(degree, SearchQuery::parse_classes(degree, classes)?);
    q.require_transitive = transitive;
    q.require_primitive = primitive;
    q.group_order = order;
    q.limit = limit;
    let res = with_pool(threads, || find_tuples(&q))??;
    let valid = res.tuples.iter().all(|t| {
        product(degree, t).is_identity()
            && t.iter().zip(&q.classes).all(|(p, c)| p.cycle_type() == *c)
    });
    rep.check("tuples have product 1 and the given classes", valid, "");
    let orders: Vec<String> = res
        .tuples
        .iter()
        .map(|t| GroupHandle::new(degree, t.clone()).map(|g| g.order().to_string()))
        .collect::<Result<_>>()?;
    let mut distinct = orders.clone();
    distinct.sort();
    distinct.dedup();
    rep.check(
        "search",
        true,
        format!(
            "{} tuples, {} nodes, group orders {:?}{}",
            res.tuples.len(),
            res.nodes,
            distinct,
            if res.exhausted {
                ""
            } else {
                ", stopped at the limit"
            }
        ),
    );
    let shown: Vec<Vec<String>> = res
        .tuples
        .iter()
        .map(|t| t.iter().map(|p| p.to_cycle_string()).collect())
        .collect();
    rep.payload = json!({
        "tuples": res.tuples,
        "cycles": shown,
        "group_orders": orders,
        "nodes": res.nodes,
        "type_matches": res.type_matches,
        "exhausted": res.exhausted,
    });
    Ok(())
}

fn cmd_classify(rep: &mut RunReport, path: &Path) -> Result<()> {
    rep.param("tuple", path.display());
    let file = read_tuple(path)?;
    let xs = &file.elements;
    rep.check("product is 1", check_product_one(xs), "");
    let r = is_product_type(xs)?;
    rep.check("transitive", r.transitive, "");
    rep.check(
        "primitive",
        r.primitive == Some(true),
        r.block_size
            .map(|b| format!("block of size {b}"))
            .unwrap_or_default(),
    );
    if r.criterion_applies {
        rep.check(
            "criterion agrees with the block test",
            r.primitive_by_criterion == (r.primitive == Some(true)),
            "",
        );
    }
    let id = r.group_id.map(|g| g.as_str().to_string());
    rep.check(
        "classified",
        true,
        format!(
            "order {}, group {}",
            r.group_order,
            id.as_deref().unwrap_or("-")
        ),
    );
    rep.payload = serde_json::to_value(&r).expect("reports serialize");
    Ok(())
}

fn cmd_rpi(rep: &mut RunReport, path: &Path, cyclic: bool) -> Result<()> {
    rep.param("tuple", path.display())
        .param("model", if cyclic { "cyclic" } else { "image" });
    let file = read_tuple(path)?;
    let model = if cyclic {
        CosetModel::Cyclic
    } else {
        CosetModel::of_tuple(&file.elements)?
    };
    let mut records = Vec::new();
    for (k, x) in file.elements.iter().enumerate() {
        let r = rpi_bruteforce(x, &model, DEFAULT_ORBIT_CAP)?;
        rep.check(
            format!("entry {}", k + 1),
            r.rpi >= 0,
            format!("R = {}", r.rpi),
        );
        records.push(r);
    }
    rep.payload = serde_json::to_value(records).expect("records serialize");
    Ok(())
}

fn execute(cli: &Cli) -> Result<RunReport> {
    let start = Instant::now();
    let threads = match &cli.command {
        Command::VerifyTable { parallel, .. } => *parallel,
        _ => None,
    };
    let mut rep = match &cli.command {
        Command::Realize {
            id,
            ell,
            a,
            variant,
            tuple_out,
        } => {
            let mut rep = RunReport::new("realize");
            cmd_realize(
                &mut rep,
                id,
                *ell,
                *a,
                (*variant).into(),
                tuple_out.as_deref(),
            )?;
            rep
        }
        Command::VerifyTable {
            table,
            ell_range,
            draws,
            variants,
            ..
        } => {
            let mut rep = RunReport::new("verify-table");
            cmd_verify_table(
                &mut rep,
                *table,
                ell_range.as_deref(),
                threads,
                *draws,
                *variants,
            )?;
            rep
        }
        Command::Genus { tuple } => {
            let mut rep = RunReport::new("genus");
            cmd_genus(&mut rep, tuple)?;
            rep
        }
        Command::Reduce {
            tuple,
            no_normalize,
        } => {
            let mut rep = RunReport::new("reduce");
            cmd_reduce(&mut rep, tuple, *no_normalize)?;
            rep
        }
        Command::Search {
            degree,
            classes,
            require_transitive,
            require_primitive,
            order,
            limit,
        } => {
            let mut rep = RunReport::new("search");
            cmd_search(
                &mut rep,
                *degree,
                classes,
                *require_transitive,
                *require_primitive,
                order.clone(),
                *limit,
                None,
            )?;
            rep
        }
        Command::Classify { tuple } => {
            let mut rep = RunReport::new("classify");
            cmd_classify(&mut rep, tuple)?;
            rep
        }
        Command::Rpi { tuple, cyclic } => {
            let mut rep = RunReport::new("rpi");
            cmd_rpi(&mut rep, tuple, *cyclic)?;
            rep
        }
    };
    if cli.timings {
        rep.timings_ms
            .push(("total".into(), start.elapsed().as_millis() as u64));
    }
    Ok(rep)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code and the text for stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_OK
            };
            return (code, e.to_string());
        }
    };
    let rep = match execute(&cli) {
        Ok(rep) => rep,
        Err(e) => return (exit_code(&e), format!("error: {e}\n")),
    };
    let code = if rep.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    match cli.json.as_deref() {
        Some("-") => (code, rep.to_json() + "\n"),
        Some(path) => match std::fs::write(path, rep.to_json() + "\n") {
            Ok(()) => (code, rep.to_text()),
            Err(e) => (EXIT_CHECK_FAILED, format!("error: {path}: {e}\n")),
        },
        None => (code, rep.to_text()),
    }
}
