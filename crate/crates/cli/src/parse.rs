//! Parsing of field polynomials and defining sets given on the command line.

use crate::CliError;

/// `12,3,0` (exponents, coefficient 1) or `2:1,1:2,0:1` (exponent:coefficient);
/// the forms may be mixed. Returns ascending coefficients.
pub fn field_poly(text: &str) -> Result<Vec<u32>, CliError> {
    let usage = |m: String| CliError::Usage(format!("bad polynomial `{text}`: {m}"));
    let mut terms = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (e, c) = match item.split_once(':') {
            Some((e, c)) => (e, c),
            None => (item, "1"),
        };
        let e: usize = e
            .trim()
            .parse()
            .map_err(|_| usage(format!("`{e}` is not an exponent")))?;
        let c: u32 = c
            .trim()
            .parse()
            .map_err(|_| usage(format!("`{c}` is not a coefficient")))?;
        terms.push((e, c));
    }
    let top = terms
        .iter()
        .map(|&(e, _)| e)
        .max()
        .ok_or_else(|| usage("no terms".into()))?;
    let mut coeffs = vec![0u32; top + 1];
    for (e, c) in terms {
        if coeffs[e] != 0 {
            return Err(usage(format!("exponent {e} given twice")));
        }
        coeffs[e] = c;
    }
    Ok(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefiningSetArg {
    Explicit(Vec<usize>),
    Cosets(Vec<usize>),
}

pub fn defining_set(text: &str) -> Result<DefiningSetArg, CliError> {
    let (cosets, body) = match text.strip_prefix("coset:") {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let mut members = Vec::new();
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        members.push(
            item.parse()
                .map_err(|_| CliError::Usage(format!("`{item}` is not a residue")))?,
        );
    }
    Ok(if cosets {
        DefiningSetArg::Cosets(members)
    } else {
        DefiningSetArg::Explicit(members)
    })
}
