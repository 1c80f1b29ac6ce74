//! Input and output documents, pipeline orchestration and rendering for the
//! command-line tool.

mod parse;

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chow::{pairing_is_unimodular, predicted_ranks, ChowClass, ChowRing};
use crate::cones::find_ample;
use crate::error::{Error, Result};
use crate::exactpoly::Polynomial;
use crate::fan::Fan;
use crate::segre::{segre_class, RowRole, SegreOptions, SegreResult, ToricSetup};

pub use parse::parse_polynomial;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    pub seed: Option<u64>,
    pub coeff_bound: Option<u64>,
    pub retries: Option<u32>,
    pub format: Option<OutputFormat>,
}

/// The fan, optional variable names and grading, and the ideal generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<Vec<i64>>>,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub options: InputOptions,
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("line {}, column {}: {e}", e.line(), e.column())))
}

/// One coefficient of a class: `coefficient · ∏ D_i` over the listed ray indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTerm {
    pub codim: usize,
    pub monomial: Vec<usize>,
    pub coefficient: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisOutput {
    pub codim: usize,
    pub monomials: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualOutput {
    pub d: usize,
    /// `null` when the residual scheme is empty.
    pub dimension: Option<usize>,
    pub class: Vec<ClassTerm>,
    pub rows_used: usize,
    pub rows_skipped: usize,
    pub consistency_rows: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegreComponent {
    pub index: usize,
    pub codim: usize,
    /// Degree of the component when it is zero-dimensional.
    pub degree: Option<i64>,
    pub terms: Vec<ClassTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub coeff_bound: u64,
    pub retries: u32,
    pub rounds_used: u32,
    pub consistency_rows: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub variables: Vec<String>,
    pub degrees: Vec<Vec<i64>>,
    pub alpha: Vec<i64>,
    pub n: usize,
    pub k: usize,
    pub bases: Vec<BasisOutput>,
    pub residuals: Vec<ResidualOutput>,
    pub segre: Vec<SegreComponent>,
    pub provenance: Provenance,
}

/// Pipeline stage that produced a diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Parse,
    Fan,
    Grading,
    Chow,
    Walls,
    Ideal,
    Segre,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Parse => "parse",
            Stage::Fan => "fan",
            Stage::Grading => "grading",
            Stage::Chow => "chow",
            Stage::Walls => "walls",
            Stage::Ideal => "ideal",
            Stage::Segre => "segre",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub stage: Stage,
    pub error: Error,
}

impl Diagnostic {
    pub fn exit_code(&self) -> i32 {
        self.error.exit_code()
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}] in stage {}: {}", self.error.code(), self.stage, self.error)
    }
}

impl std::error::Error for Diagnostic {}

fn at<T>(stage: Stage, r: Result<T>) -> std::result::Result<T, Diagnostic> {
    r.map_err(|error| Diagnostic { stage, error })
}

fn stage_of(e: &Error) -> Stage {
    match e {
        Error::NotSmooth { .. } | Error::NotComplete { .. } | Error::InvalidInput(_) => Stage::Fan,
        Error::NoPositiveGrading | Error::InvalidGrading(_) => Stage::Grading,
        Error::RankMismatch { .. } | Error::NormalizationInconsistent | Error::NonIntegerCoefficient => Stage::Chow,
        _ => Stage::Walls,
    }
}

/// Resolved computation options: command-line values win over the document's.
pub fn resolve_options(doc: &InputDocument, overrides: &InputOptions) -> SegreOptions {
    let d = SegreOptions::default();
    SegreOptions {
        seed: overrides.seed.or(doc.options.seed).unwrap_or(d.seed),
        coeff_bound: overrides.coeff_bound.or(doc.options.coeff_bound).unwrap_or(d.coeff_bound),
        retries: overrides.retries.or(doc.options.retries).unwrap_or(d.retries),
    }
}

/// Fan, Cox ring, Chow ring and wall curves of the document.
pub fn build_setup(doc: &InputDocument) -> std::result::Result<ToricSetup, Diagnostic> {
    let fan = at(Stage::Fan, Fan::new(doc.rays.clone(), doc.max_cones.clone()))?;
    ToricSetup::new(fan, doc.variables.clone(), doc.degrees.clone()).map_err(|e| Diagnostic { stage: stage_of(&e), error: e })
}

/// Parses the generators over the variables of the setup.
pub fn parse_ideal(doc: &InputDocument, setup: &ToricSetup) -> std::result::Result<Vec<Polynomial>, Diagnostic> {
    let names = setup.ring().names();
    doc.ideal.iter().map(|s| at(Stage::Parse, parse_polynomial(s, names))).collect()
}

pub fn run(doc: &InputDocument, options: &SegreOptions) -> std::result::Result<OutputDocument, Diagnostic> {
    let setup = build_setup(doc)?;
    let gens = parse_ideal(doc, &setup)?;
    let ideal = at(Stage::Ideal, setup.ideal(gens))?;
    let result = segre_class(&setup, &ideal, options).map_err(|e| {
        let stage = if matches!(e, Error::EmptySubscheme | Error::WholeSpace) { Stage::Ideal } else { Stage::Segre };
        Diagnostic { stage, error: e }
    })?;
    Ok(to_output(&setup, &result))
}

fn monomial_indices(exps: &[u32]) -> Vec<usize> {
    exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
}

fn class_terms(chow: &ChowRing, c: &ChowClass) -> Vec<ClassTerm> {
    chow.basis(c.codim)
        .iter()
        .zip(&c.coeffs)
        .map(|(m, &coefficient)| ClassTerm { codim: c.codim, monomial: monomial_indices(m.exponents()), coefficient })
        .collect()
}

pub fn to_output(setup: &ToricSetup, res: &SegreResult) -> OutputDocument {
    let chow = &setup.chow;
    let k = setup.dim();
    let bases = (0..=k).map(|codim| BasisOutput { codim, monomials: chow.basis(codim).iter().map(|m| monomial_indices(m.exponents())).collect() }).collect();
    let residuals: Vec<ResidualOutput> = res
        .residuals
        .iter()
        .map(|s| ResidualOutput {
            d: s.d,
            dimension: s.residual_dim,
            class: class_terms(chow, &s.class),
            rows_used: s.rows.iter().filter(|r| r.role == RowRole::Basis).count(),
            rows_skipped: s.rows.iter().filter(|r| r.role == RowRole::Skipped).count(),
            consistency_rows: s.checks_passed(),
        })
        .collect();
    let segre = res
        .segre
        .iter()
        .enumerate()
        .map(|(index, c)| SegreComponent { index, codim: c.codim, degree: (c.codim == k).then(|| chow.degree(c)), terms: class_terms(chow, c) })
        .collect();
    OutputDocument {
        variables: setup.ring().names().to_vec(),
        degrees: setup.ring().grading().to_vec(),
        alpha: res.alpha.0.clone(),
        n: res.n,
        k,
        bases,
        provenance: Provenance {
            seed: res.options.seed,
            coeff_bound: res.options.coeff_bound,
            retries: res.options.retries,
            rounds_used: res.round + 1,
            consistency_rows: residuals.iter().map(|r| r.consistency_rows).sum(),
        },
        residuals,
        segre,
    }
}

pub fn render_json(out: &OutputDocument) -> String {
    serde_json::to_string_pretty(out).expect("output is serializable")
}

pub fn parse_output(text: &str) -> Result<OutputDocument> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn render_terms(terms: &[ClassTerm], names: &[String]) -> String {
    let mut s = String::new();
    for t in terms.iter().filter(|t| t.coefficient != 0) {
        let mono: Vec<String> = {
            let mut parts: Vec<String> = Vec::new();
            let mut i = 0;
            while i < t.monomial.len() {
                let v = t.monomial[i];
                let e = t.monomial[i..].iter().take_while(|&&x| x == v).count();
                parts.push(if e == 1 { format!("D_{}", names[v]) } else { format!("D_{}^{e}", names[v]) });
                i += e;
            }
            parts
        };
        let body = match (t.coefficient.abs(), mono.is_empty()) {
            (c, true) => c.to_string(),
            (1, false) => mono.join("*"),
            (c, false) => format!("{c}*{}", mono.join("*")),
        };
        match (s.is_empty(), t.coefficient < 0) {
            (true, false) => s.push_str(&body),
            (true, true) => write!(s, "-{body}").unwrap(),
            (false, false) => write!(s, " + {body}").unwrap(),
            (false, true) => write!(s, " - {body}").unwrap(),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn render_human(out: &OutputDocument) -> String {
    let names = &out.variables;
    let mut s = String::new();
    let fmt_vec = |v: &[i64]| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    writeln!(s, "dimension of X: k = {}", out.k).unwrap();
    writeln!(s, "dimension of Z: n = {}", out.n).unwrap();
    writeln!(s, "section degree: alpha = {}", fmt_vec(&out.alpha)).unwrap();
    writeln!(s, "Chow ring bases:").unwrap();
    for b in &out.bases {
        let ms: Vec<String> = b.monomials.iter().map(|m| render_terms(&[ClassTerm { codim: b.codim, monomial: m.clone(), coefficient: 1 }], names)).collect();
        writeln!(s, "  codim {}: {}", b.codim, ms.join(", ")).unwrap();
    }
    writeln!(s, "residual classes:").unwrap();
    for r in &out.residuals {
        let dim = r.dimension.map_or("empty".to_string(), |d| format!("dim {d}"));
        writeln!(s, "  [R_{}] = {}   ({dim}; {} rows, {} checks)", r.d, render_terms(&r.class, names), r.rows_used, r.consistency_rows).unwrap();
    }
    writeln!(s, "Segre class:").unwrap();
    for c in &out.segre {
        let deg = c.degree.map_or(String::new(), |d| format!("   (degree {d})"));
        writeln!(s, "  s_{} = {}{deg}", c.index, render_terms(&c.terms, names)).unwrap();
    }
    writeln!(
        s,
        "seed {}, coefficient bound {}, rounds used {} of {}",
        out.provenance.seed,
        out.provenance.coeff_bound,
        out.provenance.rounds_used,
        out.provenance.retries + 1
    )
    .unwrap();
    s
}

/// Internal invariants of the fan data: rank identity, unimodular pairings,
/// degree normalization, wall relations and an ample class.
pub fn check_fan(setup: &ToricSetup) -> Result<Vec<String>> {
    let fan = setup.fan();
    let chow = &setup.chow;
    let k = fan.dim();
    let mut report = Vec::new();
    let h = predicted_ranks(&fan.cone_counts());
    for codim in 0..=k {
        if chow.rank(codim) as i64 != h[k - codim] {
            return Err(Error::RankMismatch { codim, expected: h[k - codim], found: chow.rank(codim) });
        }
    }
    report.push(format!("ranks by codimension: {:?}", (0..=k).map(|c| chow.rank(c)).collect::<Vec<_>>()));
    for codim in 0..=k {
        if !pairing_is_unimodular(chow, codim)? {
            return Err(Error::NonIntegerCoefficient);
        }
    }
    report.push("intersection pairings are unimodular".into());
    for cone in fan.max_cones() {
        let e: Vec<u32> = (0..fan.nrays()).map(|i| u32::from(cone.contains(&i))).collect();
        if chow.degree(&chow.monomial_class(&e)) != 1 {
            return Err(Error::NormalizationInconsistent);
        }
    }
    report.push("every maximal cone has degree 1".into());
    for w in &setup.walls {
        for j in 0..k {
            if (0..fan.nrays()).map(|i| fan.rays()[i][j] * w.pairing[i]).sum::<i64>() != 0 {
                return Err(Error::NotComplete { cone: w.wall.cones.0, facet: w.wall.facet.clone() });
            }
        }
    }
    report.push(format!("{} wall curves satisfy the linear relations", setup.walls.len()));
    let ample = find_ample(&setup.walls, setup.ring().heft())?;
    report.push(format!("ample class {ample}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_documents() {
        assert!(parse_input(r#"{"rays": [[1],[-1]], "max_cones": [[0],[1]], "ideal": ["z0"]}"#).is_ok());
        assert!(parse_input(r#"{"rays": [[1],[-1]], "max_cones": [[0],[1]], "ideal": ["z0"], "extra": 1}"#).is_err());
    }

    #[test]
    fn non_smooth_cone_is_reported() {
        let doc = parse_input(r#"{"rays": [[1,0],[1,2],[-1,-1],[0,-1]], "max_cones": [[0,1],[1,2],[2,3],[3,0]], "ideal": ["z0"]}"#).unwrap();
        let err = run(&doc, &SegreOptions::default()).unwrap_err();
        assert_eq!(err.error, Error::NotSmooth { cone: 0 });
        assert_eq!(err.stage, Stage::Fan);
        assert!(err.to_string().contains("E_NOT_SMOOTH"));
    }

    #[test]
    fn point_on_projective_line() {
        let doc = parse_input(r#"{"rays": [[1],[-1]], "max_cones": [[0],[1]], "variables": ["a","b"], "ideal": ["a - 2 b"]}"#).unwrap();
        let out = run(&doc, &SegreOptions::default()).unwrap();
        assert_eq!(out.n, 0);
        assert_eq!(out.segre[0].degree, Some(1));
        assert_eq!(parse_output(&render_json(&out)).unwrap(), out);
        assert!(render_human(&out).contains("s_0"));
    }
}
