//! Recomputation of the reference tables shipped in `golden/`.
//!
//! Every golden row carries a recipe naming how its code is built:
//!
//! - `complement:R...`: defining set is Z_n minus the cosets of the listed representatives
//! - `defining:R...`: defining set is the union of the listed cosets
//! - `bch:delta:b`: the BCH code B(delta, b)
//! - `shift:G:k`: the code generated by the inverse transform of x^k G
//! - `extend:G:k:delta:b`: B(delta, b), which must be among the BCH extensions of `shift:G:k`
//!
//! G is `quot(E)` for (x^n - 1) / h, `prod(E|E|...)` for a product, `poly(E)`
//! for a literal polynomial or `mins(R...)` for a product of minimal
//! polynomials. E lists the exponents of a binary polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bounds::code_apparent_distance;
use crate::codes::{bch_code, bose_distance, code_from_defining_set, BoseDistance, CyclicCode};
use crate::error::{Error, Result};
use crate::forge::{construct_from_divisor, extend_to_bch};
use crate::galois::{coeffs_from_exponents, RootOfUnity};
use crate::modring::{cyclotomic_cosets, CosetPartition, DefiningSet};
use crate::polyring::{minimal_polynomial, Poly};
use crate::wtdist::{min_distance, DistanceOptions};

pub const TABLES: [&str; 8] = [
    "small-codes",
    "n15",
    "n21",
    "n45",
    "n33",
    "n41",
    "n17",
    "bose21",
];

pub const CSV_HEADER: [&str; 7] = [
    "n",
    "q",
    "complement_defining_set",
    "dimension",
    "min_distance",
    "bch_bound",
    "bose_distance",
];

fn golden_text(table: &str) -> Option<&'static str> {
    Some(match table {
        "small-codes" => include_str!("../golden/small-codes.csv"),
        "n15" => include_str!("../golden/n15.csv"),
        "n21" => include_str!("../golden/n21.csv"),
        "n45" => include_str!("../golden/n45.csv"),
        "n33" => include_str!("../golden/n33.csv"),
        "n41" => include_str!("../golden/n41.csv"),
        "n17" => include_str!("../golden/n17.csv"),
        "bose21" => include_str!("../golden/bose21.csv"),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Quotient(Vec<usize>),
    Product(Vec<Vec<usize>>),
    Literal(Vec<usize>),
    Minimal(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Complement(Vec<usize>),
    Defining(Vec<usize>),
    Bch {
        delta: usize,
        b: usize,
    },
    Shift {
        generator: Generator,
        k: usize,
    },
    Extend {
        generator: Generator,
        k: usize,
        delta: usize,
        b: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Marker {
    /// Repeats an earlier row; not recomputed, mismatches are informational.
    Dup,
    /// A claim known to be inconsistent; mismatches are informational.
    Irregular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub n: usize,
    pub q: u64,
    pub field_poly: Option<Vec<usize>>,
    pub recipe_text: String,
    pub recipe: Recipe,
    pub dimension: Option<usize>,
    pub min_distance: Option<usize>,
    pub bch_bound: Option<usize>,
    pub bose_distance: Option<BoseDistance>,
    pub marker: Option<Marker>,
}

#[derive(Deserialize)]
struct RawRow {
    n: usize,
    q: u64,
    field_poly: String,
    recipe: String,
    dimension: Option<usize>,
    min_distance: Option<usize>,
    bch_bound: Option<usize>,
    bose_distance: String,
    marker: String,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn numbers(s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(format!("bad integer `{t}`"))))
        .collect()
}

fn parse_generator(s: &str) -> Result<Generator> {
    let (kind, rest) = s
        .split_once('(')
        .ok_or_else(|| bad(format!("bad generator `{s}`")))?;
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| bad(format!("bad generator `{s}`")))?;
    Ok(match kind {
        "quot" => Generator::Quotient(numbers(body)?),
        "prod" => Generator::Product(body.split('|').map(numbers).collect::<Result<_>>()?),
        "poly" => Generator::Literal(numbers(body)?),
        "mins" => Generator::Minimal(numbers(body)?),
        _ => return Err(bad(format!("unknown generator kind `{kind}`"))),
    })
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| bad(format!("bad integer `{s}`")))
}

pub fn parse_recipe(s: &str) -> Result<Recipe> {
    let parts: Vec<&str> = s.split(':').collect();
    Ok(match parts.as_slice() {
        ["complement", reps] => Recipe::Complement(numbers(reps)?),
        ["defining", reps] => Recipe::Defining(numbers(reps)?),
        ["bch", delta, b] => Recipe::Bch {
            delta: parse_usize(delta)?,
            b: parse_usize(b)?,
        },
        ["shift", g, k] => Recipe::Shift {
            generator: parse_generator(g)?,
            k: parse_usize(k)?,
        },
        ["extend", g, k, delta, b] => Recipe::Extend {
            generator: parse_generator(g)?,
            k: parse_usize(k)?,
            delta: parse_usize(delta)?,
            b: parse_usize(b)?,
        },
        _ => return Err(bad(format!("unknown recipe `{s}`"))),
    })
}

fn parse_bose(s: &str) -> Result<Option<BoseDistance>> {
    Ok(match s {
        "" => None,
        "not-bch" => Some(BoseDistance::NotBch),
        d => Some(BoseDistance::Bch(parse_usize(d)?)),
    })
}

/// Parses golden CSV text; `#` lines are comments.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for raw in reader.deserialize::<RawRow>() {
        let raw = raw.map_err(|e| bad(format!("golden table: {e}")))?;
        let field_poly = match raw.field_poly.trim() {
            "" => None,
            s => Some(numbers(s)?),
        };
        let marker = match raw.marker.as_str() {
            "" => None,
            "dup" => Some(Marker::Dup),
            "irregular" => Some(Marker::Irregular),
            m => return Err(bad(format!("unknown marker `{m}`"))),
        };
        rows.push(GoldenRow {
            n: raw.n,
            q: raw.q,
            field_poly,
            recipe: parse_recipe(&raw.recipe)?,
            recipe_text: raw.recipe,
            dimension: raw.dimension,
            min_distance: raw.min_distance,
            bch_bound: raw.bch_bound,
            bose_distance: parse_bose(&raw.bose_distance)?,
            marker,
        });
    }
    Ok(rows)
}

pub fn golden_rows(table: &str) -> Result<Vec<GoldenRow>> {
    let text = golden_text(table).ok_or_else(|| Error::UnknownTable(table.to_string()))?;
    parse_golden(text)
}

/// One recomputed table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub q: u64,
    /// Z_n minus the defining set, as a union of cosets `C(a)+C(b)`.
    pub complement_defining_set: String,
    pub dimension: usize,
    pub min_distance: usize,
    /// False when the distance is only an upper bound from a capped walk.
    pub exhaustive: bool,
    pub bch_bound: usize,
    pub bose_distance: BoseDistance,
    pub source: String,
}

impl ReportRow {
    pub fn csv_record(&self) -> [String; 7] {
        let d = if self.exhaustive {
            self.min_distance.to_string()
        } else {
            format!("<={}", self.min_distance)
        };
        [
            self.n.to_string(),
            self.q.to_string(),
            self.complement_defining_set.clone(),
            self.dimension.to_string(),
            d,
            self.bch_bound.to_string(),
            self.bose_distance.to_string(),
        ]
    }
}

/// Formats a coset-closed set as `C(a)+C(b)` by smallest representatives.
pub fn format_coset_union(partition: &CosetPartition, set: &DefiningSet) -> String {
    let reps = partition.decompose(set);
    if reps.is_empty() {
        return "{}".to_string();
    }
    reps.iter()
        .map(|a| format!("C({a})"))
        .collect::<Vec<_>>()
        .join("+")
}

#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub golden: GoldenRow,
    /// None when the code could not be built.
    pub computed: Option<ReportRow>,
    pub mismatches: Vec<String>,
    pub informational: bool,
}

impl RowOutcome {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn is_failure(&self) -> bool {
        !self.mismatches.is_empty() && !self.informational
    }
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub table: String,
    pub outcomes: Vec<RowOutcome>,
}

impl TableReport {
    /// Recomputed rows, one per distinct golden row.
    pub fn rows(&self) -> Vec<ReportRow> {
        self.outcomes
            .iter()
            .filter(|o| o.golden.marker != Some(Marker::Dup))
            .filter_map(|o| o.computed.clone())
            .collect()
    }

    pub fn failures(&self) -> Vec<&RowOutcome> {
        self.outcomes.iter().filter(|o| o.is_failure()).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

struct Context {
    roots: HashMap<(usize, Option<Vec<usize>>), RootOfUnity>,
    partitions: HashMap<usize, Arc<CosetPartition>>,
}

impl Context {
    fn root(&mut self, row: &GoldenRow) -> Result<RootOfUnity> {
        let key = (row.n, row.field_poly.clone());
        if let Some(r) = self.roots.get(&key) {
            return Ok(r.clone());
        }
        if row.q > u32::MAX as u64 {
            return Err(Error::UnsupportedAlphabet(row.q));
        }
        let coeffs = row.field_poly.as_deref().map(coeffs_from_exponents);
        let r = RootOfUnity::for_length(row.q as u32, row.n, coeffs.as_deref())?;
        self.roots.insert(key, r.clone());
        Ok(r)
    }

    fn partition(&mut self, n: usize, q: u64) -> Result<Arc<CosetPartition>> {
        if let Some(p) = self.partitions.get(&n) {
            return Ok(p.clone());
        }
        let p = Arc::new(cyclotomic_cosets(n, q)?);
        self.partitions.insert(n, p.clone());
        Ok(p)
    }
}

fn generator_poly(root: &RootOfUnity, g: &Generator) -> Result<Poly> {
    let field = root.field();
    Ok(match g {
        Generator::Quotient(h) => {
            let (quot, rem) =
                Poly::xn_minus_one(root.n(), field).divrem(&Poly::from_exponents(h), field);
            if !rem.is_zero() {
                return Err(bad("quotient factor does not divide x^n - 1"));
            }
            quot
        }
        Generator::Product(factors) => factors.iter().fold(Poly::one(), |acc, e| {
            acc.mul(&Poly::from_exponents(e), field)
        }),
        Generator::Literal(e) => Poly::from_exponents(e),
        Generator::Minimal(reps) => {
            let mut acc = Poly::one();
            for &r in reps {
                acc = acc.mul(&minimal_polynomial(root, r)?, field);
            }
            acc
        }
    })
}

fn build_code(ctx: &mut Context, row: &GoldenRow) -> Result<(CyclicCode, Vec<String>)> {
    let root = ctx.root(row)?;
    let partition = ctx.partition(row.n, row.q)?;
    let mut notes = Vec::new();
    let code = match &row.recipe {
        Recipe::Complement(reps) => {
            let d = partition
                .closure(reps.iter().map(|&a| a % row.n))
                .complement();
            code_from_defining_set(&root, &d)?
        }
        Recipe::Defining(reps) => {
            let d = partition.closure(reps.iter().map(|&a| a % row.n));
            code_from_defining_set(&root, &d)?
        }
        Recipe::Bch { delta, b } => bch_code(&root, *delta, *b)?.code,
        Recipe::Shift { generator, k } => {
            let g = generator_poly(&root, generator)?;
            construct_from_divisor(&root, &g, *k)?.code
        }
        Recipe::Extend {
            generator,
            k,
            delta,
            b,
        } => {
            let g = generator_poly(&root, generator)?;
            let target = bch_code(&root, *delta, *b)?.code;
            let reached = extend_to_bch(&root, &g, *k)?;
            if !reached.iter().any(|s| s.code == target) {
                let found: Vec<String> = reached
                    .iter()
                    .map(|s| format!("B({},{})", s.delta, s.b))
                    .collect();
                notes.push(format!(
                    "B({delta},{b}) is not among the extensions [{}]",
                    found.join(", ")
                ));
            }
            target
        }
    };
    Ok((code, notes))
}

fn compute_row(code: &CyclicCode, row: &GoldenRow, options: &DistanceOptions) -> ReportRow {
    let partition = code.partition();
    let distance = min_distance(code, options);
    ReportRow {
        n: code.n(),
        q: code.q(),
        complement_defining_set: format_coset_union(partition, &code.complement()),
        dimension: code.dimension(),
        min_distance: distance.distance,
        exhaustive: distance.exhaustive,
        bch_bound: code_apparent_distance(code).overall,
        bose_distance: bose_distance(code),
        source: row.recipe_text.clone(),
    }
}

fn compare(golden: &GoldenRow, row: &ReportRow) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |name: &str, expected: Option<usize>, found: usize| {
        if let Some(e) = expected {
            if e != found {
                out.push(format!("{name}: expected {e}, found {found}"));
            }
        }
    };
    check("dimension", golden.dimension, row.dimension);
    check("bch_bound", golden.bch_bound, row.bch_bound);
    if golden.min_distance.is_some() && !row.exhaustive {
        out.push(format!(
            "min_distance: only the upper bound {} was reached",
            row.min_distance
        ));
    } else {
        check("min_distance", golden.min_distance, row.min_distance);
    }
    if let Some(b) = golden.bose_distance {
        if b != row.bose_distance {
            out.push(format!(
                "bose_distance: expected {b}, found {}",
                row.bose_distance
            ));
        }
    }
    out
}

/// Recomputes a golden table from scratch and diffs it against the
/// transcribed values.
pub fn reproduce(table: &str, options: &DistanceOptions) -> Result<TableReport> {
    let golden = golden_rows(table)?;
    reproduce_rows(table, golden, options)
}

pub fn reproduce_rows(
    table: &str,
    golden: Vec<GoldenRow>,
    options: &DistanceOptions,
) -> Result<TableReport> {
    let mut ctx = Context {
        roots: HashMap::new(),
        partitions: HashMap::new(),
    };
    let mut seen: HashMap<(usize, Option<Vec<usize>>, String), ReportRow> = HashMap::new();
    let mut outcomes = Vec::with_capacity(golden.len());
    for row in golden {
        let key = (row.n, row.field_poly.clone(), row.recipe_text.clone());
        let informational = row.marker.is_some();
        if row.marker == Some(Marker::Dup) {
            let (computed, mismatches) = match seen.get(&key) {
                Some(prev) => (Some(prev.clone()), compare(&row, prev)),
                None => (
                    None,
                    vec!["duplicate of a row that is not present".to_string()],
                ),
            };
            outcomes.push(RowOutcome {
                golden: row,
                computed,
                mismatches,
                informational,
            });
            continue;
        }
        let outcome = match build_code(&mut ctx, &row) {
            Ok((code, mut mismatches)) => {
                let computed = compute_row(&code, &row, options);
                mismatches.extend(compare(&row, &computed));
                seen.insert(key, computed.clone());
                RowOutcome {
                    golden: row,
                    computed: Some(computed),
                    mismatches,
                    informational,
                }
            }
            Err(e) => RowOutcome {
                golden: row,
                computed: None,
                mismatches: vec![format!("construction failed: {e}")],
                informational,
            },
        };
        outcomes.push(outcome);
    }
    Ok(TableReport {
        table: table.to_string(),
        outcomes,
    })
}

/// Writes rows as CSV with the standard header.
pub fn write_csv<W: std::io::Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| bad(format!("csv output: {e}"));
    writer.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        writer.write_record(row.csv_record()).map_err(io)?;
    }
    writer
        .flush()
        .map_err(|e| bad(format!("csv output: {e}")))?;
    Ok(())
}

impl fmt::Display for RowOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.is_match(), self.informational) {
            (true, _) => "ok",
            (false, true) => "note",
            (false, false) => "MISMATCH",
        };
        write!(
            f,
            "{status:<8} n={:<3} {}",
            self.golden.n, self.golden.recipe_text
        )?;
        if let Some(row) = &self.computed {
            write!(
                f,
                "  [{} dim {} d {}{} bch {} bose {}]",
                row.complement_defining_set,
                row.dimension,
                if row.exhaustive { "" } else { "<=" },
                row.min_distance,
                row.bch_bound,
                row.bose_distance
            )?;
        }
        for m in &self.mismatches {
            write!(f, "\n         {m}")?;
        }
        Ok(())
    }
}
