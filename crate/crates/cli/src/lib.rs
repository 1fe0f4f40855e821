//! Job orchestration for the `holokit` command-line tool.

mod render;

use std::fmt;
use std::path::PathBuf;

use holokit::cupprod::cup_structure_from_echelon;
use holokit::echelon::echelon_approximation;
use holokit::foxcalc::jacobian;
use holokit::freelie::{holonomy_presentation, initial_form_lie_dims, HolonomyPresentation};
use holokit::matrix::{IntMatrix, QMatrix};
use holokit::ncseries::relator_weights;
use holokit::presentation::{
    borromean_presentation, parse_presentation, surface_presentation, whitehead_presentation, SeifertData,
};
use holokit::ranks::{
    anick_mild_combinatorial, anick_mild_numeric, anick_mild_search, free_rank_report, graded_formality_compare,
    link_rank_report, one_relator_graded_formality, presentation_rank_report, seifert_rank_report,
    surface_rank_report, CombinatorialMildness, FormalityVerdict, NumericMildness, RankReport, RankTable,
};
use holokit::{Error, FinitePresentation};
use num::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub use render::render_text;

/// Largest tensor dimension `n^N` accepted without `--force`.
pub const TENSOR_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    File(PathBuf),
    Family(String),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Echelon,
    Cup,
    Holonomy,
    Chen { i: usize },
    Lgdims,
    Ranks,
    Mild { order: Option<Vec<String>> },
    Formality,
    Seifert { g: usize, pairs: Vec<(i64, i64)>, b: i64 },
    /// Linking matrix given inline (`"0,1;1,0"`) or read from the input file.
    Link { matrix: Option<String> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Echelon => "echelon",
            Command::Cup => "cup",
            Command::Holonomy => "holonomy",
            Command::Chen { .. } => "chen",
            Command::Lgdims => "lgdims",
            Command::Ranks => "ranks",
            Command::Mild { .. } => "mild",
            Command::Formality => "formality",
            Command::Seifert { .. } => "seifert",
            Command::Link { .. } => "link",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub input: Input,
    pub command: Command,
    pub max_degree: usize,
    pub cap: usize,
    pub force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Io,
    Usage,
    Parse,
    Precondition,
    Resource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            ErrorKind::Io => 1,
            ErrorKind::Usage => 2,
            ErrorKind::Parse => 3,
            ErrorKind::Precondition => 4,
            ErrorKind::Resource => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Syntax { .. } | Error::UndeclaredGenerator { .. } | Error::DuplicateGenerator(_) => ErrorKind::Parse,
            _ => ErrorKind::Precondition,
        };
        CliError::new(kind, e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, Serialize)]
pub struct PresentationSummary {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EchelonSummary {
    pub jacobian: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
    pub h: Vec<Vec<i64>>,
    pub rank: usize,
    pub b: usize,
    pub h1_basis: Vec<String>,
    pub h2_basis: Vec<usize>,
    pub echelon_relators: Vec<String>,
    pub projection: QMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct CupSummary {
    pub b: usize,
    pub basis: Vec<String>,
    pub h2_labels: Vec<usize>,
    pub matrices: Vec<QMatrix>,
    pub rank: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HolonomySummary {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub relation_matrices: Vec<QMatrix>,
    pub dropped_zero: usize,
    pub free: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsSection {
    pub kind: String,
    pub table: RankTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CombinatorialView {
    pub certified: bool,
    pub ordering: Vec<String>,
    pub highest_terms: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MildSection {
    pub weights: Vec<String>,
    pub numeric: NumericMildness,
    pub combinatorial: CombinatorialView,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalitySection {
    pub comparison: FormalityVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_relator_weight_test: Option<bool>,
}

/// Everything a job produced; absent sections are omitted from JSON.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub max_degree: usize,
    pub cap: usize,
    pub fingerprint: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linking_matrix: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub echelon: Option<EchelonSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cup: Option<CupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holonomy: Option<HolonomySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<DimsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<RankReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mildness: Option<MildSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formality: Option<FormalitySection>,
}

impl Report {
    fn new(job: &JobSpec, fingerprint: String) -> Self {
        Report {
            tool: "holokit",
            version: env!("CARGO_PKG_VERSION"),
            command: job.command.name(),
            max_degree: job.max_degree,
            cap: job.cap,
            fingerprint,
            presentation: None,
            linking_matrix: None,
            echelon: None,
            cup: None,
            holonomy: None,
            dims: None,
            ranks: None,
            mildness: None,
            formality: None,
        }
    }
}

/// Hex SHA-256 of `text`.
pub fn fingerprint(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// A family name followed by `key=value` or positional parameters,
/// separated by spaces or colons: `surface g=3`, `surface:3`,
/// `seifert g=1 pairs=2/1,3/2 b=0`, `free n=3`, `borromean`, `whitehead`.
pub fn parse_family(desc: &str) -> Result<(String, Vec<(String, String)>)> {
    let mut tokens = desc.split(|c: char| c.is_whitespace() || c == ':').filter(|t| !t.is_empty());
    let name = tokens
        .next()
        .ok_or_else(|| CliError::new(ErrorKind::Usage, "empty family descriptor"))?
        .to_lowercase();
    let params = tokens
        .map(|t| match t.split_once('=') {
            Some((k, v)) => (k.to_lowercase(), v.to_string()),
            None => (String::new(), t.to_string()),
        })
        .collect();
    Ok((name, params))
}

fn param<'a>(params: &'a [(String, String)], key: &str, position: usize) -> Option<&'a str> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .or_else(|| params.iter().filter(|(k, _)| k.is_empty()).nth(position))
        .map(|(_, v)| v.as_str())
}

fn parse_number<T: std::str::FromStr>(key: &str, v: Option<&str>) -> Result<T> {
    let v = v.ok_or_else(|| CliError::new(ErrorKind::Usage, format!("missing parameter `{key}`")))?;
    v.parse()
        .map_err(|_| CliError::new(ErrorKind::Usage, format!("parameter `{key}`: cannot parse `{v}`")))
}

/// Pairs written `a/b` separated by commas.
pub fn parse_pairs(text: &str) -> Result<Vec<(i64, i64)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (a, b) = s
                .trim()
                .split_once('/')
                .ok_or_else(|| CliError::new(ErrorKind::Usage, format!("pair `{s}` is not of the form a/b")))?;
            Ok((parse_number("alpha", Some(a.trim()))?, parse_number("beta", Some(b.trim()))?))
        })
        .collect()
}

/// Builds the presentation of a named family.
pub fn builtin_family(name: &str, params: &[(String, String)]) -> Result<FinitePresentation> {
    let p = match name {
        "surface" => surface_presentation(parse_number("g", param(params, "g", 0))?)?,
        "borromean" => borromean_presentation(),
        "whitehead" => whitehead_presentation(),
        "free" => FinitePresentation::with_default_names(parse_number("n", param(params, "n", 0))?, Vec::new())?,
        "seifert" => {
            let g = parse_number("g", param(params, "g", 0))?;
            let pairs = parse_pairs(param(params, "pairs", 1).unwrap_or(""))?;
            let b = parse_number("b", Some(param(params, "b", 2).unwrap_or("0")))?;
            SeifertData::new(g, pairs, b)?.presentation()
        }
        other => return Err(CliError::new(ErrorKind::Usage, format!("unknown family `{other}`"))),
    };
    Ok(p)
}

/// Linking matrix rows separated by `;` or newlines, entries by `,` or
/// whitespace.
pub fn parse_linking_matrix(text: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = text
        .split([';', '\n'])
        .map(|line| line.split('#').next().unwrap_or(""))
        .filter(|line| !line.trim().is_empty())
        .map(|line| {
            line.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse()
                        .map_err(|_| CliError::new(ErrorKind::Parse, format!("bad linking number `{t}`")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    if n == 0 {
        return Err(CliError::new(ErrorKind::Parse, "empty linking matrix"));
    }
    IntMatrix::from_rows(n, rows).map_err(|e| CliError::new(ErrorKind::Parse, e.to_string()))
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(ErrorKind::Io, format!("cannot read {}: {e}", path.display())))
}

fn load_presentation(input: &Input) -> Result<FinitePresentation> {
    match input {
        Input::File(path) => Ok(parse_presentation(&read_file(path)?)?),
        Input::Family(desc) => {
            let (name, params) = parse_family(desc)?;
            builtin_family(&name, &params)
        }
        Input::None => Err(CliError::new(ErrorKind::Usage, "an input is required: --file PATH or --family NAME")),
    }
}

/// Refuses jobs whose degree-N tensor space on `n` letters is too large.
fn guard(job: &JobSpec, n: usize) -> Result<()> {
    let size = (n as u128).checked_pow(job.max_degree as u32).unwrap_or(u128::MAX);
    if size > TENSOR_LIMIT && !job.force {
        return Err(CliError::new(
            ErrorKind::Resource,
            format!("{n}^{} = {size} tensor coordinates exceeds {TENSOR_LIMIT}; rerun with --force", job.max_degree),
        ));
    }
    Ok(())
}

fn validate(job: &JobSpec) -> Result<()> {
    if job.max_degree == 0 {
        return Err(CliError::new(ErrorKind::Usage, "--degree must be at least 1"));
    }
    if job.cap < job.max_degree {
        return Err(CliError::new(ErrorKind::Usage, "--cap must be at least --degree"));
    }
    Ok(())
}

fn summarize_presentation(p: &FinitePresentation) -> PresentationSummary {
    PresentationSummary {
        generators: p.generator_names().to_vec(),
        relators: p.relators().iter().map(|r| r.display_with(p.generator_names()).to_string()).collect(),
    }
}

fn relation_text(m: &QMatrix, names: &[String]) -> String {
    let mut terms = Vec::new();
    for i in 0..m.nrows() {
        for j in i + 1..m.ncols() {
            let c = &m[(i, j)];
            if c.is_zero() {
                continue;
            }
            let coef = if *c == holokit::qi(1) { String::new() } else { format!("{c} ") };
            terms.push(format!("{coef}[{}, {}]", names[i], names[j]));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn summarize_holonomy(h: &HolonomyPresentation) -> HolonomySummary {
    HolonomySummary {
        generators: h.generator_names.clone(),
        relations: h.relations.iter().map(|m| relation_text(m, &h.generator_names)).collect(),
        relation_matrices: h.relations.clone(),
        dropped_zero: h.dropped_zero,
        free: h.is_free(),
    }
}

fn mild_section(p: &FinitePresentation, job: &JobSpec, order: &Option<Vec<String>>) -> Result<MildSection> {
    let names = p.generator_names();
    let combinatorial = match order {
        Some(order) => {
            let idx = order
                .iter()
                .map(|o| {
                    names
                        .iter()
                        .position(|n| n == o)
                        .ok_or_else(|| CliError::new(ErrorKind::Usage, format!("unknown generator `{o}` in --order")))
                })
                .collect::<Result<Vec<_>>>()?;
            anick_mild_combinatorial(p, &idx, job.cap)?
        }
        None => anick_mild_search(p, job.cap)?,
    };
    let word = |m: &Vec<usize>| m.iter().map(|&g| names[g].as_str()).collect::<Vec<_>>().join(" ");
    let view = match &combinatorial {
        CombinatorialMildness::Certified { ordering, highest_terms } => CombinatorialView {
            certified: true,
            ordering: ordering.iter().map(|&g| names[g].clone()).collect(),
            highest_terms: highest_terms.iter().map(word).collect(),
            reason: None,
        },
        CombinatorialMildness::Inconclusive { ordering, highest_terms, reason } => CombinatorialView {
            certified: false,
            ordering: ordering.iter().map(|&g| names[g].clone()).collect(),
            highest_terms: highest_terms.iter().map(word).collect(),
            reason: Some(reason.clone()),
        },
    };
    Ok(MildSection {
        weights: relator_weights(p, job.cap).iter().map(|w| w.to_string()).collect(),
        numeric: anick_mild_numeric(p, job.max_degree, job.cap)?,
        combinatorial: view,
    })
}

fn family_ranks(job: &JobSpec, p: &FinitePresentation) -> Result<RankReport> {
    if let Input::Family(desc) = &job.input {
        let (name, params) = parse_family(desc)?;
        let n = job.max_degree;
        match name.as_str() {
            "surface" => return Ok(surface_rank_report(parse_number("g", param(&params, "g", 0))?, n)?),
            "free" => return Ok(free_rank_report(parse_number("n", param(&params, "n", 0))?, n)?),
            "seifert" => {
                let g = parse_number("g", param(&params, "g", 0))?;
                let pairs = parse_pairs(param(&params, "pairs", 1).unwrap_or(""))?;
                let b = parse_number("b", Some(param(&params, "b", 2).unwrap_or("0")))?;
                return Ok(seifert_rank_report(g, &pairs, b, n)?);
            }
            _ => {}
        }
    }
    Ok(presentation_rank_report(p, job.max_degree, job.cap)?)
}

/// Runs a job; output depends only on the job and the tool version.
pub fn run(job: &JobSpec) -> Result<Report> {
    validate(job)?;
    match &job.command {
        Command::Seifert { g, pairs, b } => {
            let data = SeifertData::new(*g, pairs.clone(), *b)?;
            let p = data.presentation();
            let h = holonomy_presentation(&p);
            guard(job, h.b)?;
            let mut report = Report::new(job, fingerprint(&p.canonical_text()));
            report.presentation = Some(summarize_presentation(&p));
            report.holonomy = Some(summarize_holonomy(&h));
            report.ranks = Some(seifert_rank_report(*g, pairs, *b, job.max_degree)?);
            return Ok(report);
        }
        Command::Link { matrix } => {
            let text = match (matrix, &job.input) {
                (Some(m), _) => m.clone(),
                (None, Input::File(path)) => read_file(path)?,
                _ => return Err(CliError::new(ErrorKind::Usage, "link needs --matrix or --file")),
            };
            let l = parse_linking_matrix(&text)?;
            guard(job, l.nrows().saturating_sub(1))?;
            let canonical: String = l
                .to_rows()
                .iter()
                .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ") + "\n")
                .collect();
            let mut report = Report::new(job, fingerprint(&canonical));
            report.holonomy = Some(summarize_holonomy(&holokit::freelie::link_holonomy(&l)?));
            report.linking_matrix = Some(l.to_rows());
            report.ranks = Some(link_rank_report(&l, job.max_degree)?);
            return Ok(report);
        }
        _ => {}
    }

    let p = load_presentation(&job.input)?;
    let mut report = Report::new(job, fingerprint(&p.canonical_text()));
    report.presentation = Some(summarize_presentation(&p));
    match &job.command {
        Command::Echelon => {
            let e = echelon_approximation(&p);
            report.echelon = Some(EchelonSummary {
                jacobian: jacobian(&p).to_rows(),
                c: e.reduction.c.to_rows(),
                h: e.reduction.h.to_rows(),
                rank: e.rank(),
                b: e.b,
                h1_basis: e.h1_basis.iter().map(|&g| p.generator_names()[g].clone()).collect(),
                h2_basis: e.h2_basis.clone(),
                echelon_relators: e.ge.relators().iter().map(|r| r.display_with(p.generator_names()).to_string()).collect(),
                projection: e.proj.matrix().clone(),
            });
        }
        Command::Cup => {
            let e = echelon_approximation(&p);
            let cup = cup_structure_from_echelon(&e);
            report.cup = Some(CupSummary {
                b: cup.b,
                basis: e.h1_basis.iter().map(|&g| p.generator_names()[g].clone()).collect(),
                h2_labels: cup.labels.clone(),
                rank: cup.rank(),
                kernel_dim: cup.kernel_dim(),
                matrices: cup.matrices,
            });
        }
        Command::Holonomy => {
            let h = holonomy_presentation(&p);
            guard(job, h.b)?;
            report.dims = Some(DimsSection {
                kind: "holonomy".into(),
                table: RankTable::from_linear_algebra(&h.lie_dims(job.max_degree)),
            });
            report.holonomy = Some(summarize_holonomy(&h));
        }
        Command::Chen { i } => {
            let h = holonomy_presentation(&p);
            guard(job, h.b)?;
            report.dims = Some(DimsSection {
                kind: format!("holonomy solvable quotient, derived length {i}"),
                table: RankTable::from_linear_algebra(&h.solvable_quotient_dims(*i, job.max_degree)),
            });
            report.holonomy = Some(summarize_holonomy(&h));
        }
        Command::Lgdims => {
            guard(job, p.num_generators())?;
            report.dims = Some(DimsSection {
                kind: "initial-form Lie algebra".into(),
                table: RankTable::from_linear_algebra(&initial_form_lie_dims(&p, job.max_degree, job.cap)?),
            });
        }
        Command::Ranks => {
            guard(job, p.num_generators())?;
            report.holonomy = Some(summarize_holonomy(&holonomy_presentation(&p)));
            report.ranks = Some(family_ranks(job, &p)?);
        }
        Command::Mild { order } => {
            guard(job, p.num_generators())?;
            report.mildness = Some(mild_section(&p, job, order)?);
        }
        Command::Formality => {
            guard(job, p.num_generators())?;
            let one = if p.num_relators() == 1 { Some(one_relator_graded_formality(&p)?) } else { None };
            report.formality = Some(FormalitySection {
                comparison: graded_formality_compare(&p, job.max_degree, job.cap)?,
                one_relator_weight_test: one,
            });
        }
        Command::Seifert { .. } | Command::Link { .. } => unreachable!("handled above"),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(input: Input, command: Command) -> JobSpec {
        JobSpec { input, command, max_degree: 4, cap: 16, force: false }
    }

    #[test]
    fn family_descriptors() {
        assert_eq!(parse_family("surface g=3").unwrap(), ("surface".into(), vec![("g".into(), "3".into())]));
        assert_eq!(builtin_family("surface", &parse_family("surface:3").unwrap().1).unwrap(), surface_presentation(3).unwrap());
        assert_eq!(parse_pairs("2/1, 3/-2").unwrap(), vec![(2, 1), (3, -2)]);
        let s = parse_family("seifert g=1 pairs=2/1,2/1 b=-1").unwrap();
        assert_eq!(builtin_family(&s.0, &s.1).unwrap().num_generators(), 5);
        assert_eq!(builtin_family("torus", &[]).unwrap_err().kind, ErrorKind::Usage);
        assert_eq!(builtin_family("surface", &[]).unwrap_err().kind, ErrorKind::Usage);
        assert_eq!(builtin_family("surface", &[("g".into(), "0".into())]).unwrap_err().kind, ErrorKind::Precondition);
    }

    #[test]
    fn linking_matrices() {
        let l = parse_linking_matrix("0,1;1,0").unwrap();
        assert_eq!(l.to_rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(parse_linking_matrix("0 1\n1 0\n").unwrap(), l);
        assert_eq!(parse_linking_matrix("0,a").unwrap_err().kind, ErrorKind::Parse);
        assert_eq!(parse_linking_matrix("0,1,2").unwrap_err().kind, ErrorKind::Parse);
    }

    #[test]
    fn guard_and_validation() {
        let mut j = job(Input::Family("free n=30".into()), Command::Holonomy);
        j.max_degree = 6;
        assert_eq!(run(&j).unwrap_err().kind, ErrorKind::Resource);
        j.cap = 3;
        assert_eq!(run(&j).unwrap_err().kind, ErrorKind::Usage);
        let none = job(Input::None, Command::Cup);
        assert_eq!(run(&none).unwrap_err().kind, ErrorKind::Usage);
    }

    #[test]
    fn holonomy_job() {
        let r = run(&job(Input::Family("borromean".into()), Command::Holonomy)).unwrap();
        let dims = r.dims.unwrap().table.values();
        assert_eq!(dims, [3, 3, 8, 18].map(num::BigInt::from).to_vec());
        assert!(r.holonomy.unwrap().free);
    }

    #[test]
    fn fingerprints() {
        let a = run(&job(Input::Family("surface g=2".into()), Command::Cup)).unwrap();
        let b = run(&job(Input::Family("surface:2".into()), Command::Cup)).unwrap();
        let c = run(&job(Input::Family("surface g=3".into()), Command::Cup)).unwrap();
        assert_eq!(a.fingerprint, b.fingerprint);
        assert_ne!(a.fingerprint, c.fingerprint);
        assert_eq!(a.cup.unwrap().matrices[0].to_rows()[0][1], holokit::qi(1));
    }
}
