//! Subcommand bodies. Each returns the text to print and the process exit
//! code so they can be exercised without spawning the binary.

use std::fmt::Write;
use std::io;

use zdvce::constructions::{
    self, CertificateKind, ConstructionError, Dispatch, SearchBudget, Source, Witness,
};
use zdvce::graph::{Family, LabeledGraph};
use zdvce::ring;
use zdvce::search::{self, SearchOutcome, SearchResult};
use zdvce::vce::{self, Bipartition, Side, VertexVerdict};

use crate::format::{self, FormatError};

/// Exit codes shared by `construct` and `search`.
pub const EXIT_VCE: i32 = 0;
pub const EXIT_NOT_VCE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
/// `check` input errors.
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn new(text: String, code: i32) -> Self {
        Output { text, code }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

fn graph_name(n: u64, family: Family) -> String {
    format!("{family}({n})")
}

pub fn build(n: u64, family: Family, format: GraphFormat) -> Result<String, ConstructionError> {
    let g = family.build(n)?;
    Ok(match format {
        GraphFormat::Dot => format::graph_to_dot(&g, &graph_name(n, family)),
        GraphFormat::Json => format::graph_to_json(&g, Some(family)) + "\n",
    })
}

fn label_list(g: &LabeledGraph, pi: &Bipartition, side: Side) -> String {
    let mut labels: Vec<_> = pi.members(side).into_iter().map(|v| g.label(v)).collect();
    labels.sort();
    let rendered: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    format!("{side} ({}): {}", rendered.len(), rendered.join(" "))
}

fn shape_name(n: u64) -> String {
    ring::factorize(n)
        .map(|f| ring::classify(&f).tag())
        .unwrap_or_else(|e| e.to_string())
}

pub fn construct(n: u64, family: Family, budget: &SearchBudget) -> Output {
    let dispatched = match constructions::dispatch(n, family, budget) {
        Ok(d) => d,
        Err(ConstructionError::EmptyGraph { .. }) => {
            let text = format!("{}: empty graph, no bipartition exists\n", graph_name(n, family));
            return Output::new(text, EXIT_UNKNOWN);
        }
        Err(e) => return Output::new(format!("error: {e}\n"), EXIT_UNKNOWN),
    };
    let g = dispatched.graph();
    let mut text = format!(
        "{}: shape {}, {} vertices, {} edges\n",
        graph_name(n, family),
        shape_name(n),
        g.len(),
        g.edge_count()
    );
    let code = match &dispatched {
        Dispatch::Certified(cert) => match cert.kind() {
            CertificateKind::Exists { partition, source } => {
                let how = match source {
                    Source::Construction(id) => format!("construction {id}"),
                    Source::Search(_) => format!("search ({source})"),
                };
                let report = vce::check_bipartition(g, partition).expect("certificate fits graph");
                writeln!(text, "VCE bipartition by {how}").unwrap();
                writeln!(text, "{}", label_list(g, partition, Side::R)).unwrap();
                writeln!(text, "{}", label_list(g, partition, Side::B)).unwrap();
                writeln!(text, "checker: {}", report.verdict).unwrap();
                EXIT_VCE
            }
            CertificateKind::NotVce(Witness::IsolatedVertex(v)) => {
                writeln!(text, "NotVce: isolated vertex {}", g.label(*v)).unwrap();
                EXIT_NOT_VCE
            }
            CertificateKind::NotVce(Witness::ExhaustedSearch) => {
                let examined = (1u64 << (g.len().max(1) - 1)) - 1;
                writeln!(
                    text,
                    "NotVce: exhaustive search ruled out all {examined} bipartitions"
                )
                .unwrap();
                EXIT_NOT_VCE
            }
        },
        Dispatch::Unknown { reason, .. } => {
            writeln!(text, "unknown: {reason}").unwrap();
            EXIT_UNKNOWN
        }
    };
    Output::new(text, code)
}

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// Checks the partition in `partition_text` against the graph in
/// `graph_text`. Exit 0 iff very cost effective, 1 otherwise, 3 on bad input.
pub fn check_texts(graph_text: &str, partition_text: &str) -> Output {
    let result = format::graph_from_json(graph_text).and_then(|(g, _)| {
        let pi = format::partition_from_json(partition_text, &g)?;
        Ok((g, pi))
    });
    let (g, pi) = match result {
        Ok(parsed) => parsed,
        Err(e) => return Output::new(format!("error: {e}\n"), EXIT_INPUT),
    };
    let report = vce::check_bipartition(&g, &pi).expect("partition built for this graph");
    let mut text = String::from("vertex\tside\tinside\toutside\tverdict\n");
    for t in &report.tallies {
        let verdict = match t.verdict {
            VertexVerdict::VeryCostEffective => "very-cost-effective",
            VertexVerdict::CostEffectiveOnly => "cost-effective-only",
            VertexVerdict::NotCostEffective => "not-cost-effective",
        };
        writeln!(
            text,
            "{}\t{}\t{}\t{}\t{verdict}",
            g.label(t.vertex),
            pi.side(t.vertex),
            t.inside,
            t.outside
        )
        .unwrap();
    }
    writeln!(text, "verdict: {}", report.verdict).unwrap();
    let code = if report.is_very_cost_effective() {
        EXIT_VCE
    } else {
        let witnesses: Vec<String> =
            report.witnesses.iter().map(|&v| g.label(v).to_string()).collect();
        writeln!(text, "witnesses: {}", witnesses.join(" ")).unwrap();
        EXIT_NOT_VCE
    };
    Output::new(text, code)
}

pub fn check(graph_path: &str, partition_path: &str) -> Output {
    let read = |path: &str| {
        std::fs::read_to_string(path).map_err(|source| CheckError::Io {
            path: path.to_string(),
            source,
        })
    };
    match (read(graph_path), read(partition_path)) {
        (Ok(g), Ok(p)) => check_texts(&g, &p),
        (Err(e), _) | (_, Err(e)) => Output::new(format!("error: {e}\n"), EXIT_INPUT),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Local,
}

pub fn search(n: u64, family: Family, mode: SearchMode, budget: &SearchBudget) -> Output {
    let g = match family.build(n) {
        Ok(g) => g,
        Err(e) => return Output::new(format!("error: {e}\n"), EXIT_UNKNOWN),
    };
    let out: SearchOutcome = match mode {
        SearchMode::Exhaustive => search::brute_force(&g, budget.vertex_cap),
        SearchMode::Local => search::local_search(&g, budget.restarts, budget.steps, budget.seed),
    };
    let mut text = format!(
        "{}: {} vertices, {} bipartitions examined in {:.3} s\n",
        graph_name(n, family),
        g.len(),
        out.partitions_examined,
        out.elapsed.as_secs_f64()
    );
    let code = match &out.result {
        SearchResult::Found(pi) => {
            writeln!(text, "found VCE bipartition").unwrap();
            writeln!(text, "{}", label_list(&g, pi, Side::R)).unwrap();
            writeln!(text, "{}", label_list(&g, pi, Side::B)).unwrap();
            EXIT_VCE
        }
        SearchResult::NoneExists => {
            writeln!(text, "no VCE bipartition exists").unwrap();
            EXIT_NOT_VCE
        }
        SearchResult::Inconclusive(reason) => {
            writeln!(text, "inconclusive: {reason}").unwrap();
            EXIT_UNKNOWN
        }
    };
    Output::new(text, code)
}

/// One line of the survey table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub n: u64,
    pub family: Family,
    pub shape: String,
    pub vertices: usize,
    pub verdict: &'static str,
    pub source: String,
}

pub fn survey_row(
    n: u64,
    family: Family,
    budget: &SearchBudget,
) -> Result<SurveyRow, ConstructionError> {
    let shape = shape_name(n);
    let row = |vertices, verdict, source: String| SurveyRow {
        n,
        family,
        shape: shape.clone(),
        vertices,
        verdict,
        source,
    };
    match constructions::dispatch(n, family, budget) {
        Err(ConstructionError::EmptyGraph { .. }) => Ok(row(0, "Empty-graph", String::new())),
        Err(e) => Err(e),
        Ok(Dispatch::Unknown { graph, .. }) => {
            Ok(row(graph.len(), "Unknown", "inconclusive".to_string()))
        }
        Ok(Dispatch::Certified(cert)) => {
            let vertices = cert.graph().len();
            Ok(match cert.kind() {
                CertificateKind::Exists { source, .. } => {
                    let verdict = match source {
                        Source::Construction(_) => "VCE-by-construction",
                        Source::Search(_) => "VCE-by-search",
                    };
                    row(vertices, verdict, source.to_string())
                }
                CertificateKind::NotVce(Witness::IsolatedVertex(_)) => {
                    row(vertices, "Not-VCE", "isolated-vertex".to_string())
                }
                CertificateKind::NotVce(Witness::ExhaustedSearch) => {
                    row(vertices, "Not-VCE", "exhausted-search".to_string())
                }
            })
        }
    }
}

pub fn survey_rows(
    n_min: u64,
    n_max: u64,
    families: &[Family],
    budget: &SearchBudget,
) -> Result<Vec<SurveyRow>, ConstructionError> {
    let mut families = families.to_vec();
    families.sort();
    families.dedup();
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        for &family in &families {
            rows.push(survey_row(n, family, budget)?);
        }
    }
    Ok(rows)
}

pub fn write_survey<W: io::Write>(rows: &[SurveyRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "family", "shape", "vertices", "verdict", "source"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.family.to_string(),
            r.shape.clone(),
            r.vertices.to_string(),
            r.verdict.to_string(),
            r.source.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let dot = build(16, Family::Gamma, GraphFormat::Dot).unwrap();
        assert!(dot.contains("  8 -- 10;\n"));
        assert_eq!(dot.matches(" -- ").count(), 7);

        let json = build(7, Family::Gamma, GraphFormat::Json).unwrap();
        assert!(json.contains(r#""vertices":[],"edges":[]"#));

        let json = build(15, Family::LineOfGamma, GraphFormat::Json).unwrap();
        let (g, family) = format::graph_from_json(&json).unwrap();
        assert_eq!(family, Some(Family::LineOfGamma));
        assert_eq!((g.len(), g.edge_count()), (8, 16));
        assert!(build(1, Family::Gamma, GraphFormat::Json).is_err());
    }

    #[test]
    fn construct_examples() {
        let budget = SearchBudget::default();
        let out = construct(30, Family::Gamma, &budget);
        assert_eq!(out.code, EXIT_VCE);
        assert!(out.text.contains("construction gamma-squarefree"));
        assert!(out.text.contains("R (5): 5 10 15 20 25"));

        let out = construct(12, Family::Omega, &budget);
        assert_eq!(out.code, EXIT_NOT_VCE);
        assert!(out.text.contains("NotVce: isolated vertex 2"));

        let out = construct(49, Family::Gamma, &budget);
        assert_eq!(out.code, EXIT_VCE);
        assert!(out.text.contains("search (brute-force)"));

        let out = construct(7, Family::Gamma, &budget);
        assert_eq!(out.code, EXIT_UNKNOWN);
        assert!(out.text.contains("empty graph"));

        let small = SearchBudget {
            vertex_cap: 4,
            restarts: 1,
            steps: 1,
            seed: 0,
        };
        let out = construct(10, Family::TotalOfGamma, &small);
        assert_eq!(out.code, EXIT_UNKNOWN, "{}", out.text);
    }

    fn gamma15_json() -> String {
        build(15, Family::Gamma, GraphFormat::Json).unwrap()
    }

    #[test]
    fn check_examples() {
        let g = gamma15_json();
        let out = check_texts(&g, r#"{"R": [3, 6, 9, 12], "B": [5, 10]}"#);
        assert_eq!(out.code, EXIT_VCE, "{}", out.text);
        assert!(out.text.contains("verdict: very cost effective"));

        let out = check_texts(&g, r#"{"R": [3, 6, 9, 12, 5], "B": [10]}"#);
        assert_eq!(out.code, EXIT_NOT_VCE);
        assert!(out.text.contains("5\tR\t4\t0\tnot-cost-effective"));
        assert!(out.text.contains("witnesses: 3 5 6 9 12"));

        let out = check_texts(&g, r#"{"R": [3, 3, 6, 9, 12], "B": [5, 10]}"#);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.text.contains("more than once"));

        let messages: Vec<String> = [
            ("not json", r#"{"R": [3], "B": [5]}"#),
            (g.as_str(), "not json"),
            (g.as_str(), r#"{"R": [4], "B": [3, 5, 6, 9, 10, 12]}"#),
            (g.as_str(), r#"{"R": [], "B": [3, 5, 6, 9, 10, 12]}"#),
            (g.as_str(), r#"{"R": [3], "B": [5]}"#),
        ]
        .iter()
        .map(|(gt, pt)| {
            let out = check_texts(gt, pt);
            assert_eq!(out.code, EXIT_INPUT, "{}", out.text);
            out.text
        })
        .collect();
        let mut distinct = messages.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), messages.len());
    }

    #[test]
    fn check_reports_missing_files() {
        let out = check("/nonexistent/graph.json", "/nonexistent/partition.json");
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.text.contains("cannot read"));
    }

    #[test]
    fn search_examples() {
        let budget = SearchBudget::default();
        let out = search(10, Family::TotalOfGamma, SearchMode::Exhaustive, &budget);
        assert_eq!(out.code, EXIT_NOT_VCE);
        assert!(out.text.contains("255 bipartitions examined"));
        let out = search(15, Family::Gamma, SearchMode::Local, &budget);
        assert_eq!(out.code, EXIT_VCE);
        let out = search(36, Family::Nilradical, SearchMode::Local, &budget);
        assert_eq!(out.code, EXIT_UNKNOWN);
    }

    fn survey_csv(n_min: u64, n_max: u64, families: &[Family]) -> String {
        let rows = survey_rows(n_min, n_max, families, &SearchBudget::default()).unwrap();
        let mut buf = Vec::new();
        write_survey(&rows, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn survey_examples() {
        let csv = survey_csv(6, 30, &[Family::Gamma]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,family,shape,vertices,verdict,source"));
        assert!(csv.contains("\n30,gamma,squarefree(m=3),21,VCE-by-construction,gamma-squarefree\n"));
        assert!(csv.contains("\n7,gamma,prime(p=7),0,Empty-graph,\n"));

        let csv = survey_csv(12, 12, &[Family::Omega]);
        assert!(csv.contains("12,omega,p^2q(p=2;q=3),6,Not-VCE,isolated-vertex"));

        let csv = survey_csv(7, 7, &[Family::Gamma]);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.contains("Empty-graph"));
    }

    #[test]
    fn survey_rows_are_sorted_and_deterministic() {
        let families = [Family::TotalOfGamma, Family::Gamma, Family::Omega, Family::Gamma];
        let a = survey_csv(2, 40, &families);
        let b = survey_csv(2, 40, &families);
        assert_eq!(a, b);
        let rows = survey_rows(2, 40, &families, &SearchBudget::default()).unwrap();
        assert_eq!(rows.len(), 39 * 3);
        assert!(rows.windows(2).all(|w| (w[0].n, w[0].family) < (w[1].n, w[1].family)));
    }
}
