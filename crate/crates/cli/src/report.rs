//! JSON documents written to standard output. Field order is the declaration
//! order below and never changes between runs.

use algsieve::dimmatch::QdimParams;
use algsieve::edgecolor::{ColoringMode, ColoringParams};
use algsieve::kpath::PathSieveParams;
use algsieve::selftest::SuiteReport;
use algsieve::setpack::PackingParams;
use algsieve::Detection;
use serde::Serialize;

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Params {
    Path {
        k: usize,
        k1: usize,
        l2: usize,
    },
    Qdim {
        p: usize,
        q: usize,
        r: usize,
    },
    Packing {
        n: usize,
        q: usize,
        p: usize,
        p0: usize,
        p1: usize,
        p2: usize,
        n1: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        encoding: Option<String>,
    },
    Coloring {
        mode: &'static str,
        colors: usize,
        p: usize,
    },
}

impl From<PathSieveParams> for Params {
    fn from(p: PathSieveParams) -> Self {
        Params::Path { k: p.k, k1: p.k1, l2: p.l2 }
    }
}

impl From<QdimParams> for Params {
    fn from(p: QdimParams) -> Self {
        Params::Qdim { p: p.p, q: p.q, r: p.r }
    }
}

impl From<PackingParams> for Params {
    fn from(p: PackingParams) -> Self {
        Params::Packing { n: p.n, q: p.q, p: p.p, p0: p.p0, p1: p.p1, p2: p.p2, n1: p.n1, encoding: None }
    }
}

impl From<ColoringParams> for Params {
    fn from(p: ColoringParams) -> Self {
        let mode = match p.mode {
            ColoringMode::Regular => "regular",
            ColoringMode::General => "general",
        };
        Params::Coloring { mode, colors: p.colors, p: p.p }
    }
}

fn yes_no(decision: bool) -> &'static str {
    if decision {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub problem: &'static str,
    pub decision: &'static str,
    pub params: Params,
    pub seed: u64,
    pub field_bits: u32,
    pub repetitions_planned: u64,
    pub repetitions_run: u64,
    pub evaluations: u64,
    pub label_count: usize,
    pub label_subsets: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn new<P: Into<Params>>(problem: &'static str, seed: u64, detection: Detection<P>) -> Self {
        RunReport {
            problem,
            decision: yes_no(detection.decision),
            params: detection.params.into(),
            seed,
            field_bits: detection.field_bits,
            repetitions_planned: detection.repetitions_planned,
            repetitions_run: detection.repetitions_run,
            evaluations: detection.evaluations,
            label_count: detection.label_count,
            label_subsets: detection.label_subsets,
            elapsed_ms: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub problem: &'static str,
    pub method: &'static str,
    pub answer: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chromatic_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

impl OracleReport {
    pub fn new(problem: &'static str, method: &'static str, answer: bool) -> Self {
        OracleReport { problem, method, answer: yes_no(answer), chromatic_index: None, max_degree: None }
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteLine {
    pub name: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub nonzero: usize,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub instances: usize,
    pub suites: Vec<SuiteLine>,
    pub passed: usize,
    pub failed: usize,
}

impl SelftestReport {
    pub fn new(seed: u64, instances: usize, suites: &[SuiteReport]) -> Self {
        let lines: Vec<SuiteLine> = suites
            .iter()
            .map(|s| SuiteLine { name: s.name, cases: s.cases, passed: s.passed, failed: s.failed(), nonzero: s.nonzero })
            .collect();
        SelftestReport {
            seed,
            instances,
            passed: lines.iter().map(|l| l.passed).sum(),
            failed: lines.iter().map(|l| l.failed).sum(),
            suites: lines,
        }
    }
}
