//! Serializable reports. Keys are declared in alphabetical order so JSON
//! output is canonical; polynomials are printed in descending GrevLex.

use std::collections::BTreeMap;
use std::fmt::Write;

use clap::ValueEnum;
use serde::Serialize;

use crate::kaehler::{ConormalReport, DifferentialModulePresentation};
use crate::lifting::{AlgebraHom, NilpotentAlgebra};
use crate::poly::Polynomial;
use crate::smoothness::{
    Certificate, Chart, Choice, PointVerdict, Presentation, SmoothLocusReport, SmoothnessVerdict,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    #[default]
    Text,
}

pub(crate) trait Render: Serialize {
    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    fn text(&self) -> String;
}

fn polys(ps: &[Polynomial], names: &[String]) -> Vec<String> {
    ps.iter().map(|p| p.display(names).to_string()).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ideal_text(gens: &[String]) -> String {
    if gens.is_empty() {
        "(0)".to_string()
    } else {
        format!("({})", gens.join(", "))
    }
}

#[derive(Serialize)]
pub(crate) struct ChoiceJson {
    cols: Vec<usize>,
    rows: Vec<usize>,
}

impl From<&Choice> for ChoiceJson {
    fn from(c: &Choice) -> Self {
        ChoiceJson {
            cols: c.cols.clone(),
            rows: c.rows.clone(),
        }
    }
}

impl ChoiceJson {
    fn text(&self) -> String {
        format!("rows {:?} cols {:?}", self.rows, self.cols)
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CertificateJson {
    Unit {
        cofactors: Vec<String>,
        generators: Vec<String>,
    },
    NonSmooth {
        basis: Vec<String>,
    },
}

#[derive(Serialize)]
pub(crate) struct CheckReport {
    certificate: CertificateJson,
    empty_scheme: bool,
    globally_smooth: bool,
    standard_smooth: bool,
}

impl CheckReport {
    pub fn new(pres: &Presentation, v: &SmoothnessVerdict, standard_smooth: bool) -> Self {
        let names = pres.var_names();
        let certificate = match &v.certificate {
            Certificate::Unit {
                generators,
                cofactors,
            } => CertificateJson::Unit {
                cofactors: polys(cofactors, names),
                generators: polys(generators, names),
            },
            Certificate::NonSmooth { basis } => CertificateJson::NonSmooth {
                basis: polys(basis, names),
            },
        };
        CheckReport {
            certificate,
            empty_scheme: v.empty_scheme,
            globally_smooth: v.smooth,
            standard_smooth,
        }
    }
}

impl Render for CheckReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "globally smooth: {}", yes_no(self.globally_smooth));
        let _ = writeln!(s, "empty scheme: {}", yes_no(self.empty_scheme));
        let _ = writeln!(s, "standard smooth: {}", yes_no(self.standard_smooth));
        match &self.certificate {
            CertificateJson::Unit {
                cofactors,
                generators,
            } => {
                let _ = writeln!(s, "certificate: 1 =");
                for (h, g) in cofactors.iter().zip(generators) {
                    if h != "0" {
                        let _ = writeln!(s, "  + ({h}) * ({g})");
                    }
                }
            }
            CertificateJson::NonSmooth { basis } => {
                let _ = writeln!(s, "non-smooth locus: V{}", ideal_text(basis));
            }
        }
        s
    }
}

#[derive(Serialize)]
struct PieceJson {
    colon_gens: Vec<String>,
    cols: Vec<usize>,
    delta: String,
    is_empty: bool,
    rows: Vec<usize>,
}

#[derive(Serialize)]
pub(crate) struct LocusReport {
    empty_scheme: bool,
    globally_smooth: bool,
    non_smooth_ideal: Vec<String>,
    pieces: Vec<PieceJson>,
}

impl LocusReport {
    pub fn new(pres: &Presentation, r: &SmoothLocusReport) -> Self {
        let names = pres.var_names();
        LocusReport {
            empty_scheme: r.empty_scheme,
            globally_smooth: r.globally_smooth,
            non_smooth_ideal: polys(r.non_smooth_ideal.generators(), names),
            pieces: r
                .pieces
                .iter()
                .map(|p| PieceJson {
                    colon_gens: polys(&p.colon_gens, names),
                    cols: p.choice.cols.clone(),
                    delta: p.delta.display(names).to_string(),
                    is_empty: p.is_empty,
                    rows: p.choice.rows.clone(),
                })
                .collect(),
        }
    }
}

impl Render for LocusReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "globally smooth: {}", yes_no(self.globally_smooth));
        let _ = writeln!(s, "empty scheme: {}", yes_no(self.empty_scheme));
        let _ = writeln!(
            s,
            "non-smooth ideal: {}",
            ideal_text(&self.non_smooth_ideal)
        );
        let _ = writeln!(s, "pieces: {}", self.pieces.len());
        for p in &self.pieces {
            let _ = writeln!(
                s,
                "  rows {:?} cols {:?}: delta = {}, colon = {}{}",
                p.rows,
                p.cols,
                p.delta,
                ideal_text(&p.colon_gens),
                if p.is_empty { " (empty)" } else { "" }
            );
        }
        s
    }
}

#[derive(Serialize)]
pub(crate) struct AtReport {
    choice: Option<ChoiceJson>,
    on_variety: bool,
    smooth: bool,
    witness: Option<String>,
}

impl AtReport {
    pub fn new(pres: &Presentation, v: Option<&PointVerdict>) -> Self {
        match v {
            None => AtReport {
                choice: None,
                on_variety: false,
                smooth: false,
                witness: None,
            },
            Some(v) => AtReport {
                choice: Some((&v.choice).into()),
                on_variety: true,
                smooth: v.smooth,
                witness: v
                    .witness
                    .as_ref()
                    .map(|w| w.display(pres.var_names()).to_string()),
            },
        }
    }
}

impl Render for AtReport {
    fn text(&self) -> String {
        let mut s = String::new();
        if !self.on_variety {
            let _ = writeln!(s, "point is not on the variety");
            return s;
        }
        let _ = writeln!(s, "smooth: {}", yes_no(self.smooth));
        if let Some(c) = &self.choice {
            let _ = writeln!(s, "choice: {}", c.text());
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {w}");
        }
        s
    }
}

#[derive(Serialize)]
pub(crate) struct ChartJson {
    localized_element: String,
    origin_choice: ChoiceJson,
    rels: Vec<String>,
    vars: Vec<String>,
}

#[derive(Serialize)]
#[serde(transparent)]
pub(crate) struct ChartReport(Vec<ChartJson>);

impl ChartReport {
    pub fn new(pres: &Presentation, charts: &[Chart]) -> Self {
        ChartReport(
            charts
                .iter()
                .map(|c| {
                    let cp = &c.presentation;
                    ChartJson {
                        localized_element: c
                            .localized_element
                            .display(pres.var_names())
                            .to_string(),
                        origin_choice: (&c.origin_choice).into(),
                        rels: polys(cp.relators(), cp.var_names()),
                        vars: cp.var_names().to_vec(),
                    }
                })
                .collect(),
        )
    }
}

impl Render for ChartReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "charts: {}", self.0.len());
        for (k, c) in self.0.iter().enumerate() {
            let _ = writeln!(
                s,
                "chart {}: D({}) from {}",
                k + 1,
                c.localized_element,
                c.origin_choice.text()
            );
            let _ = writeln!(s, "  vars {}", c.vars.join(" "));
            for r in &c.rels {
                let _ = writeln!(s, "  rel {r}");
            }
        }
        s
    }
}

#[derive(Serialize)]
pub(crate) struct ConormalJson {
    conormal_dim: usize,
    fiber_dim: usize,
    rank_r: usize,
    split_ok: bool,
}

impl From<ConormalReport> for ConormalJson {
    fn from(r: ConormalReport) -> Self {
        ConormalJson {
            conormal_dim: r.conormal_dim,
            fiber_dim: r.fiber_dim,
            rank_r: r.rank_r,
            split_ok: r.split_ok,
        }
    }
}

#[derive(Serialize)]
pub(crate) struct OmegaReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    conormal: Option<ConormalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fiber_dim: Option<usize>,
    rank: usize,
    relations: Vec<Vec<String>>,
    #[serde(skip)]
    symbols: Vec<String>,
}

impl OmegaReport {
    pub fn new(
        om: &DifferentialModulePresentation,
        fiber_dim: Option<usize>,
        conormal: Option<ConormalJson>,
    ) -> Self {
        let names = om.ambient.var_names();
        OmegaReport {
            conormal,
            fiber_dim,
            rank: om.rank,
            relations: om
                .relation_rows
                .iter()
                .map(|row| polys(row, names))
                .collect(),
            symbols: names.iter().map(|v| format!("d{v}")).collect(),
        }
    }
}

impl Render for OmegaReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "free rank: {} on {}", self.rank, self.symbols.join(" "));
        let _ = writeln!(s, "relations: {}", self.relations.len());
        for row in &self.relations {
            let terms: Vec<String> = row
                .iter()
                .zip(&self.symbols)
                .filter(|(p, _)| p.as_str() != "0")
                .map(|(p, d)| format!("({p})*{d}"))
                .collect();
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            let _ = writeln!(s, "  {rhs} = 0");
        }
        if let Some(f) = self.fiber_dim {
            let _ = writeln!(s, "fiber dimension: {f}");
        }
        if let Some(c) = &self.conormal {
            let _ = writeln!(
                s,
                "conormal: jacobian rank {}, conormal dimension {}, split {}",
                c.rank_r,
                c.conormal_dim,
                yes_no(c.split_ok)
            );
        }
        s
    }
}

#[derive(Serialize)]
pub(crate) struct LiftReport {
    images: BTreeMap<String, String>,
    verified: bool,
    #[serde(skip)]
    order: Vec<String>,
}

impl LiftReport {
    pub fn new(
        pres: &Presentation,
        alg: &NilpotentAlgebra,
        hom: &AlgebraHom,
        verified: bool,
    ) -> Self {
        let images = pres
            .var_names()
            .iter()
            .zip(&hom.images)
            .map(|(v, a)| (v.clone(), alg.display(a).to_string()))
            .collect();
        LiftReport {
            images,
            verified,
            order: pres.var_names().to_vec(),
        }
    }
}

impl Render for LiftReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for v in &self.order {
            let _ = writeln!(s, "{v} -> {}", self.images[v]);
        }
        let _ = writeln!(s, "verified: {}", yes_no(self.verified));
        s
    }
}
