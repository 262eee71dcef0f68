use std::io::Write;

use serde::Serialize;

use cycloforge::bounds::{certify_equality, code_apparent_distance, CertifyOptions};
use cycloforge::codes::{bose_distance, code_from_defining_set, CyclicCode};
use cycloforge::forge::{
    congruence_construct, divisor_family, extend_to_bch, extension_record, find_shift,
    primitive_family_with_root, ConstructionRecord,
};
use cycloforge::modring::{cyclotomic_cosets, DefiningSet};
use cycloforge::polyring::{factor_xn, Poly};
use cycloforge::reproduce::{format_coset_union, reproduce, write_csv, ReportRow, TABLES};
use cycloforge::wtdist::{min_distance, DistanceOptions};
use cycloforge::{Error, RootOfUnity};

use crate::parse::{self, DefiningSetArg};
use crate::schema::*;
use crate::{CliError, Command, Emit, FieldArgs, ForgeMode};

type Out<'a> = &'a mut dyn Write;

fn io(e: std::io::Error) -> CliError {
    CliError::Compute(Error::InvalidInput(format!("output: {e}")))
}

fn print_json<T: Serialize>(out: Out, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Compute(Error::InvalidInput(e.to_string())))?;
    writeln!(out, "{text}").map_err(io)
}

fn prime(q: u64) -> Result<u32, CliError> {
    u32::try_from(q).map_err(|_| CliError::Compute(Error::UnsupportedAlphabet(q)))
}

pub fn root_for(field: &FieldArgs) -> Result<RootOfUnity, CliError> {
    let coeffs = field
        .field_poly
        .as_deref()
        .map(parse::field_poly)
        .transpose()?;
    Ok(RootOfUnity::for_length(
        prime(field.q)?,
        field.n,
        coeffs.as_deref(),
    )?)
}

pub fn code_for(root: &RootOfUnity, text: &str) -> Result<CyclicCode, CliError> {
    let n = root.n();
    let set = match parse::defining_set(text)? {
        DefiningSetArg::Explicit(members) => DefiningSet::new(n, members)?,
        DefiningSetArg::Cosets(reps) => {
            if let Some(&a) = reps.iter().find(|&&a| a >= n) {
                return Err(CliError::Usage(format!("{a} is not a residue mod {n}")));
            }
            cyclotomic_cosets(n, root.q())?.closure(reps)
        }
    };
    Ok(code_from_defining_set(root, &set)?)
}

fn braces(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn execute(command: Command, out: Out) -> Result<(), CliError> {
    match command {
        Command::Cosets { n, q, json } => cosets(n, q, json, out),
        Command::Factor { field, subfield } => factor(&field, subfield, out),
        Command::Analyze {
            field,
            defining_set,
            certify,
            budget,
            subfields,
        } => {
            let options = certify.then_some(CertifyOptions { budget, subfields });
            analyze(&field, &defining_set, options, out)
        }
        Command::Mindist {
            field,
            defining_set,
            cap,
            threads,
            fast_upper,
        } => mindist(&field, &defining_set, cap, threads, fast_upper, out),
        Command::Forge {
            field,
            mode,
            subfield,
            verify,
            generator,
            k,
            max_divisors,
            cap,
        } => {
            let request = ForgeRequest {
                mode,
                subfield,
                verify: verify.then_some(DistanceOptions {
                    cap,
                    ..DistanceOptions::default()
                }),
                generator,
                k,
                max_divisors,
            };
            forge(&field, &request, out)
        }
        Command::Reproduce { table, emit, cap } => reproduce_cmd(&table, emit, cap, out),
    }
}

fn cosets(n: usize, q: u64, json: bool, out: Out) -> Result<(), CliError> {
    let partition = cyclotomic_cosets(n, q)?;
    let reps = partition.representative_set();
    let doc = CosetsJson {
        n,
        q,
        cosets: partition.cosets().to_vec(),
        representatives: partition.representatives(),
        a_set: reps.members.clone(),
        order: reps.order,
    };
    if json {
        return print_json(out, &doc);
    }
    writeln!(out, "n = {n}, q = {q}, ord_n(q) = {}", doc.order).map_err(io)?;
    for c in &doc.cosets {
        writeln!(out, "C({}) = {}", c[0], braces(c)).map_err(io)?;
    }
    writeln!(out, "A(n) = {}", braces(&doc.a_set)).map_err(io)
}

fn factor(field: &FieldArgs, subfield: usize, out: Out) -> Result<(), CliError> {
    let root = root_for(field)?;
    let list = factor_xn(&root, subfield)?;
    let doc = FactorsJson {
        n: field.n,
        q: field.q,
        field_poly: PolyJson::from_modulus(root.field()),
        subfield_degree: subfield,
        factors: list
            .factors
            .iter()
            .map(|f| FactorJson {
                poly: PolyJson::from_poly(&f.poly),
                degree: f.degree(),
                exponents: f.exponents.clone(),
            })
            .collect(),
    };
    if field.json {
        return print_json(out, &doc);
    }
    writeln!(
        out,
        "x^{} - 1 over GF({}^{}): {} factors",
        field.n,
        field.q,
        subfield,
        list.factors.len()
    )
    .map_err(io)?;
    for (i, f) in list.factors.iter().enumerate() {
        writeln!(
            out,
            "h{} = {}   (degree {}, roots alpha^j for j in {})",
            i + 1,
            f.poly,
            f.degree(),
            braces(&f.exponents)
        )
        .map_err(io)?;
    }
    Ok(())
}

fn analyze(
    field: &FieldArgs,
    defining_set: &str,
    certify: Option<CertifyOptions>,
    out: Out,
) -> Result<(), CliError> {
    let root = root_for(field)?;
    let code = code_for(&root, defining_set)?;
    let report = code_apparent_distance(&code);
    let certificate = match &certify {
        Some(options) => Some(certify_equality(&code, options)?),
        None => None,
    };
    let doc = AnalyzeJson {
        code: CodeJson::new(&code, &report),
        representatives: report
            .per_representative
            .iter()
            .map(|r| RepresentativeJson {
                a: r.a,
                defining_set: r.defining_set.members().to_vec(),
                apparent_distance: r.apparent_distance,
                runs: r.runs.clone(),
            })
            .collect(),
        certified: certificate.as_ref().map(Option::is_some),
        certificate: certificate
            .as_ref()
            .and_then(|c| c.as_ref().map(Into::into)),
    };
    if field.json {
        return print_json(out, &doc);
    }
    let partition = code.partition();
    writeln!(
        out,
        "n = {}, q = {}, dimension {}",
        code.n(),
        code.q(),
        code.dimension()
    )
    .map_err(io)?;
    writeln!(
        out,
        "defining set {} = {}",
        format_coset_union(partition, code.defining_set()),
        braces(code.defining_set().members())
    )
    .map_err(io)?;
    writeln!(out, "generator {}", code.generator()).map_err(io)?;
    writeln!(
        out,
        "BCH bound {} (optimal representatives {})",
        report.overall,
        braces(&report.optimal_reps)
    )
    .map_err(io)?;
    for r in &report.per_representative {
        let runs: Vec<String> = r
            .runs
            .iter()
            .map(|z| format!("{}..{}", z.start, (z.start + z.len - 1) % code.n()))
            .collect();
        writeln!(
            out,
            "  a = {:<3} d* = {:<3} runs {}",
            r.a,
            r.apparent_distance,
            runs.join(" ")
        )
        .map_err(io)?;
    }
    writeln!(out, "Bose distance {}", bose_distance(&code)).map_err(io)?;
    match certificate {
        Some(Some(c)) => writeln!(
            out,
            "d = BCH bound: certified by g = {} over GF({}^{}), k = {}, a = {}",
            c.divisor,
            code.q(),
            c.subfield_degree,
            c.k,
            c.a
        )
        .map_err(io)?,
        Some(None) => writeln!(out, "no certificate found").map_err(io)?,
        None => {}
    }
    Ok(())
}

fn mindist(
    field: &FieldArgs,
    defining_set: &str,
    cap: u64,
    threads: usize,
    fast_upper: bool,
    out: Out,
) -> Result<(), CliError> {
    let root = root_for(field)?;
    let code = code_for(&root, defining_set)?;
    let bound = code_apparent_distance(&code).overall;
    let options = DistanceOptions {
        cap,
        threads,
        stop_at: fast_upper.then_some(bound),
    };
    let result = min_distance(&code, &options);
    let doc = MindistJson {
        n: code.n(),
        q: code.q(),
        defining_set: code.defining_set().members().to_vec(),
        dimension: code.dimension(),
        bch_bound: bound,
        min_distance: result.distance,
        exhaustive: result.exhaustive,
        enumerated: result.enumerated,
        witness: PolyJson::from_quotient(&result.witness),
    };
    if field.json {
        return print_json(out, &doc);
    }
    let how = if result.exhaustive {
        "exhaustive"
    } else if result.distance <= bound {
        "equals the BCH bound"
    } else {
        "upper bound only"
    };
    writeln!(
        out,
        "d = {} ({how}, {} codewords, dimension {}, BCH bound {bound})",
        result.distance,
        result.enumerated,
        code.dimension()
    )
    .map_err(io)?;
    writeln!(out, "witness {}", result.witness.to_poly()).map_err(io)
}

pub struct ForgeRequest {
    pub mode: ForgeMode,
    pub subfield: usize,
    pub verify: Option<DistanceOptions>,
    pub generator: Option<String>,
    pub k: Option<usize>,
    pub max_divisors: u64,
}

fn push_unique(records: &mut Vec<ConstructionRecord>, record: ConstructionRecord) {
    if !records
        .iter()
        .any(|r| r.code.defining_set() == record.code.defining_set())
    {
        records.push(record);
    }
}

fn forge_records(
    root: &RootOfUnity,
    req: &ForgeRequest,
) -> Result<Vec<ConstructionRecord>, CliError> {
    let field = root.field();
    let mut records = match req.mode {
        ForgeMode::Divisor => divisor_family(root, req.subfield, req.max_divisors)?,
        ForgeMode::Congruence => {
            let mut records = Vec::new();
            for f in &factor_xn(root, req.subfield)?.factors {
                if let Some(r) = congruence_construct(root, &f.poly, req.subfield)? {
                    push_unique(&mut records, r);
                }
            }
            records
        }
        ForgeMode::Primitive => {
            let n = root.n();
            if root.q() != 2 || !(n + 1).is_power_of_two() {
                return Err(CliError::Usage(
                    "primitive mode needs q = 2 and n = 2^m - 1".into(),
                ));
            }
            primitive_family_with_root(root)?
        }
        ForgeMode::Extend => {
            let bases: Vec<(Poly, usize)> = match &req.generator {
                Some(text) => {
                    let coeffs = parse::field_poly(text)?;
                    let ints: Vec<i64> = coeffs.iter().map(|&c| c as i64).collect();
                    let g = Poly::from_ints(field, &ints);
                    let k = match req.k.or_else(|| find_shift(root, &g)) {
                        Some(k) => k,
                        None => return Err(Error::NotRational { k: 0 }.into()),
                    };
                    vec![(g, k)]
                }
                None => divisor_family(root, req.subfield, req.max_divisors)?
                    .into_iter()
                    .map(|r| (r.divisor, r.k))
                    .collect(),
            };
            let mut records = Vec::new();
            for (g, k) in bases {
                for spec in extend_to_bch(root, &g, k)? {
                    push_unique(&mut records, extension_record(root, &g, k, spec));
                }
            }
            records
        }
    };
    records.sort_by(|a, b| {
        a.source
            .cmp(&b.source)
            .then(b.dimension.cmp(&a.dimension))
            .then(a.delta.cmp(&b.delta))
            .then(a.code.defining_set().cmp(b.code.defining_set()))
    });
    Ok(records)
}

fn forge(field: &FieldArgs, req: &ForgeRequest, out: Out) -> Result<(), CliError> {
    let root = root_for(field)?;
    let mut records = forge_records(&root, req)?;
    let mut distances = Vec::with_capacity(records.len());
    for r in records.iter_mut() {
        distances.push(req.verify.as_ref().map(|o| r.verify(o).distance.distance));
    }
    let doc = ForgeJson {
        n: field.n,
        q: field.q,
        field_poly: PolyJson::from_modulus(root.field()),
        mode: req.mode.as_str().to_string(),
        subfield_degree: req.subfield,
        records: records
            .iter()
            .zip(&distances)
            .map(|(r, d)| RecordJson {
                source: r.source.as_str().to_string(),
                divisor: PolyJson::from_poly(&r.divisor),
                subfield_degree: r.subfield_degree,
                k: r.k,
                generator_word: PolyJson::from_quotient(&r.generator_word),
                defining_set: r.code.defining_set().members().to_vec(),
                dimension: r.dimension,
                delta: r.delta,
                bch: r.bch.map(|(delta, b)| BchJson { delta, b }),
                min_distance: *d,
                verified: r.verified,
            })
            .collect(),
    };
    let failed = records.iter().any(|r| r.verified == Some(false));
    if field.json {
        print_json(out, &doc)?;
    } else {
        for (r, d) in records.iter().zip(&distances) {
            let bch = r
                .bch
                .map(|(delta, b)| format!("  B({delta},{b})"))
                .unwrap_or_default();
            let check = match (r.verified, d) {
                (Some(true), Some(d)) => format!("  verified d = {d}"),
                (Some(false), Some(d)) => format!("  FAILED d = {d}"),
                _ => String::new(),
            };
            writeln!(
                out,
                "{:<16} dim {:<3} delta {:<3} k {:<3} D = {}{bch}  g = {}{check}",
                r.source.as_str(),
                r.dimension,
                r.delta,
                r.k,
                format_coset_union(r.code.partition(), r.code.defining_set()),
                r.divisor
            )
            .map_err(io)?;
        }
        writeln!(out, "{} codes", records.len()).map_err(io)?;
    }
    if failed {
        return Err(CliError::Mismatch(
            "a constructed code failed verification".into(),
        ));
    }
    Ok(())
}

fn reproduce_cmd(table: &str, emit: Option<Emit>, cap: u64, out: Out) -> Result<(), CliError> {
    let tables: Vec<&str> = if table == "all" {
        TABLES.to_vec()
    } else {
        vec![table]
    };
    let options = DistanceOptions {
        cap,
        ..DistanceOptions::default()
    };
    let mut rows: Vec<ReportRow> = Vec::new();
    let mut summary = Vec::new();
    let mut failed = false;
    for t in tables {
        let report = reproduce(t, &options)?;
        let total = report.outcomes.len();
        let matched = report.outcomes.iter().filter(|o| o.is_match()).count();
        let notes = report
            .outcomes
            .iter()
            .filter(|o| !o.is_match() && o.informational)
            .count();
        if emit.is_none() {
            for o in &report.outcomes {
                writeln!(out, "{o}").map_err(io)?;
            }
        }
        summary.push(format!(
            "{t}: {matched}/{total} rows match, {notes} informational, {} mismatched",
            report.failures().len()
        ));
        failed |= !report.passed();
        rows.extend(report.rows());
    }
    match emit {
        Some(Emit::Csv) => write_csv(&rows, &mut *out)?,
        Some(Emit::Json) => print_json(out, &rows)?,
        None => {
            for s in &summary {
                writeln!(out, "{s}").map_err(io)?;
            }
        }
    }
    if emit.is_some() {
        for s in &summary {
            eprintln!("{s}");
        }
    }
    if failed {
        return Err(CliError::Mismatch(
            "recomputed values differ from the reference table".into(),
        ));
    }
    Ok(())
}
