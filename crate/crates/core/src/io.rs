//! File formats: full-precision CSV, sample tables, and the JSON expansion file.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{Basis, Expansion, ParityChoice, Provenance};
use crate::quadrature::QuadratureRule;

/// C's `%.17g`: 17 significant digits, trailing zeros removed, exponent form when
/// the decimal exponent is below -4 or at least 17.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x.abs());
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if x < 0.0 { "-" } else { "" };
    if !(-4..P).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        let mut out = format!("{sign}{}", &digits[..1]);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
        out
    } else if exp >= 0 {
        let split = exp as usize + 1;
        let frac = digits[split..].trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{}", &digits[..split])
        } else {
            format!("{sign}{}.{frac}", &digits[..split])
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{}", digits.trim_end_matches('0'))
    }
}

/// CSV text with a header row and `%.17g` cells.
pub fn write_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format_g17(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Tabulated `(x, f(x))` pairs read from a two-column CSV with header `x,f`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleTable {
    rows: Vec<(f64, f64)>,
}

/// Abscissa matching tolerance for sample tables.
pub const SAMPLE_MATCH_TOL: f64 = 1e-12;

impl SampleTable {
    pub fn new(rows: Vec<(f64, f64)>) -> Result<Self> {
        for w in rows.windows(2) {
            if w[1].0 == w[0].0 {
                return Err(Error::SampleFormat(format!("duplicate abscissa {}", w[0].0)));
            }
            if w[1].0 < w[0].0 {
                return Err(Error::SampleFormat(format!(
                    "abscissas must be strictly increasing ({} follows {})",
                    w[1].0, w[0].0
                )));
            }
        }
        if let Some((x, y)) = rows.iter().find(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::SampleFormat(format!("non-finite row ({x}, {y})")));
        }
        Ok(SampleTable { rows })
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::SampleFormat("empty sample file".into()))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols != ["x", "f"] {
            return Err(Error::SampleFormat(format!(
                "header must be \"x,f\", found {header:?}"
            )));
        }
        let mut rows = Vec::new();
        for (lineno, line) in lines {
            let mut cells = line.split(',').map(str::trim);
            let (Some(xs), Some(fs), None) = (cells.next(), cells.next(), cells.next()) else {
                return Err(Error::SampleFormat(format!(
                    "line {}: expected two columns",
                    lineno + 1
                )));
            };
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::SampleFormat(format!("line {}: {s:?} is not a number", lineno + 1))
                })
            };
            rows.push((parse(xs)?, parse(fs)?));
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    fn lookup(&self, x: f64) -> Option<f64> {
        let i = self.rows.partition_point(|(r, _)| *r < x - SAMPLE_MATCH_TOL);
        self.rows
            .get(i)
            .filter(|(r, _)| (r - x).abs() <= SAMPLE_MATCH_TOL)
            .map(|(_, y)| *y)
    }

    /// Values at 0, at the rule's nodes, and at 1, in that order; every missing
    /// abscissa is reported.
    pub fn discrete_input(&self, rule: &QuadratureRule) -> Result<(f64, Vec<f64>, f64)> {
        let mut missing = Vec::new();
        let mut get = |x: f64| {
            self.lookup(x).unwrap_or_else(|| {
                missing.push(x);
                f64::NAN
            })
        };
        let at0 = get(0.0);
        let nodes: Vec<f64> = rule.nodes().iter().map(|&x| get(x)).collect();
        let at1 = get(1.0);
        if missing.is_empty() {
            Ok((at0, nodes, at1))
        } else {
            Err(Error::SampleMismatch { missing })
        }
    }
}

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk form of an [`Expansion`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpansionFile {
    pub schema_version: u32,
    pub n: usize,
    pub basis: Basis,
    pub constant: f64,
    pub coeffs: Vec<f64>,
    pub provenance: Provenance,
    pub generator: Generator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub operator: String,
    pub quad_tol: f64,
    pub relaxed_tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<ParityChoice>,
}

impl ExpansionFile {
    pub fn from_expansion(e: &Expansion, generator: Generator) -> Result<Self> {
        if !e.constant().is_finite() || e.coeffs().iter().any(|c| !c.is_finite()) {
            return Err(Error::ExpansionFile("non-finite coefficient".into()));
        }
        Ok(ExpansionFile {
            schema_version: SCHEMA_VERSION,
            n: e.n(),
            basis: e.basis(),
            constant: e.constant(),
            coeffs: e.coeffs().to_vec(),
            provenance: e.provenance(),
            generator,
        })
    }

    pub fn to_expansion(&self) -> Result<Expansion> {
        let e = Expansion::new(self.n, self.constant, self.coeffs.clone(), self.basis, self.provenance)?;
        Ok(e.with_parity(self.generator.parity.clone()))
    }

    /// Pretty JSON with a trailing newline; field order is fixed by the struct.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: ExpansionFile =
            serde_json::from_str(text).map_err(|e| Error::ExpansionFile(e.to_string()))?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(Error::ExpansionFile(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                f.schema_version
            )));
        }
        if f.coeffs.len() != f.n {
            return Err(Error::ExpansionFile(format!(
                "{} coefficients for n = {}",
                f.coeffs.len(),
                f.n
            )));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_rule;

    #[test]
    fn g17_matches_printf() {
        // reference strings produced by C printf("%.17g")
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.5, "0.5"),
            (0.21132486540518713, "0.21132486540518713"),
            (0.7886751345948129, "0.78867513459481287"),
            (0.1, "0.10000000000000001"),
            (-2.5, "-2.5"),
            (1e-5, "1.0000000000000001e-05"),
            (1.5e-4, "0.00014999999999999999"),
            (123456.0, "123456"),
            (1e17, "1e+17"),
            (1e16, "10000000000000000"),
            (f64::MAX, "1.7976931348623157e+308"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g17(x), s, "{x:e}");
            assert_eq!(format_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn sample_table_validation() {
        assert!(SampleTable::parse_csv("x,f\n0,1\n0,2\n").is_err());
        assert!(SampleTable::parse_csv("x,f\n0.5,1\n0.25,2\n").is_err());
        assert!(SampleTable::parse_csv("x,y\n0,1\n").is_err());
        assert!(SampleTable::parse_csv("x,f\n0,abc\n").is_err());
        assert!(SampleTable::parse_csv("x,f\n0,1,2\n").is_err());
        let t = SampleTable::parse_csv("x,f\n0,0\n0.5,0.25\n1,1\n").unwrap();
        assert_eq!(t.rows().len(), 3);
    }

    #[test]
    fn missing_abscissas_are_listed() {
        let rule = gauss_rule(2).unwrap();
        let t = SampleTable::parse_csv("x,f\n0,0\n1,1\n").unwrap();
        match t.discrete_input(&rule) {
            Err(Error::SampleMismatch { missing }) => assert_eq!(missing, rule.nodes()),
            other => panic!("{other:?}"),
        }
        let text = format!(
            "x,f\n0,0\n{},{}\n{},{}\n1,1\n",
            format_g17(rule.nodes()[0]),
            0.1,
            format_g17(rule.nodes()[1]),
            0.2
        );
        let (a, v, b) = SampleTable::parse_csv(&text).unwrap().discrete_input(&rule).unwrap();
        assert_eq!((a, v, b), (0.0, vec![0.1, 0.2], 1.0));
    }
}
