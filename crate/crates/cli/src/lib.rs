//! Commands behind the `plumbing` binary. Each command returns the text and
//! JSON renderings of its report.

pub mod cycle_spec;
pub mod error;
pub mod graph_file;
pub mod report;
pub mod selfcheck;

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use plumbing_core::{
    analyze, base_point_report, blow_up_edge, blow_up_generic, build_form, in_analytic_semigroup,
    min_chi, multiplicity_generic, ClassTag, Constraint, HilbertFunction, IntersectionForm,
    RatCycle, ResolutionGraph,
};

pub use error::CliError;
pub use graph_file::{parse_graph, read_graph, GraphFile};

use report::{
    analyze_text, base_points_text, cycle_label, cycle_value, graph_name, int_value,
    multiplicity_text, rat_cycle_value, rat_value, AnalyzeJson, ClassJson, MultiplicityJson,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A rendered command result.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json");
                s.push('\n');
                s
            }
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

/// Graph plus its form, with the enumeration guard applied.
pub fn load(path: &Path, max_box: Option<u64>) -> Result<IntersectionForm, CliError> {
    let g = read_graph(path)?;
    form_of(&g, max_box)
}

pub fn form_of(g: &ResolutionGraph, max_box: Option<u64>) -> Result<IntersectionForm, CliError> {
    Ok(build_form(g)?.with_search_limit(max_box))
}

pub fn cmd_analyze(f: &IntersectionForm) -> Result<Output, CliError> {
    log::info!("analyzing {} ({} vertices)", graph_name(f), f.len());
    let r = analyze(f)?;
    let mult = multiplicity_generic(f)?;
    let zero = RatCycle::zero(f.len());
    let all = min_chi(f, &zero, &Constraint::unbounded())?;
    let positive = min_chi(f, &zero, &Constraint::positive(f.len()))?;
    log::debug!(
        "search nodes: {} over L, {} over L>0",
        all.stats.nodes,
        positive.stats.nodes
    );
    let json = AnalyzeJson {
        graph: graph_name(f),
        vertex_ids: f.ids().to_vec(),
        det_neg: int_value(f.det_neg()),
        class: ClassJson {
            tag: r.class.tag.to_string(),
            min_chi_positive: rat_value(&r.class.min_chi_positive),
            numerically_gorenstein: r.class.numerically_gorenstein,
            is_minimal: r.class.is_minimal,
        },
        p_g: int_value(&r.p_g),
        min_chi: rat_value(&r.min_chi),
        z_k: rat_cycle_value(f.canonical_cycle()),
        z_min: cycle_value(&r.z_min),
        z_max: cycle_value(&r.z_max),
        multiplicity: mult.multiplicity.as_ref().map_or(Value::Null, int_value),
        total_base_points: int_value(&mult.total_base_points),
        min_chi_minimizers: all.minimizers.iter().map(cycle_value).collect(),
        positive_minimizers: positive.minimizers.iter().map(cycle_value).collect(),
    };
    Ok(Output {
        text: analyze_text(f, &r, &mult),
        json: to_json(&json),
    })
}

/// Base points and multiplicity at the maximal ideal cycle, or base points
/// only for an explicit class.
pub fn cmd_multiplicity(f: &IntersectionForm, class: Option<&str>) -> Result<Output, CliError> {
    if let Some(spec) = class {
        let l = cycle_spec::parse(spec)?.evaluate(f)?;
        let r = base_point_report(f, &l)?;
        return Ok(Output {
            text: base_points_text(f, &r),
            json: to_json(&MultiplicityJson::new(f, &r, false)),
        });
    }
    let r = multiplicity_generic(f)?;
    let rational = plumbing_core::classify(f)?.tag == ClassTag::Rational;
    Ok(Output {
        text: multiplicity_text(f, &r, rational),
        json: to_json(&MultiplicityJson::new(f, &r, rational)),
    })
}

pub fn cmd_semigroup(f: &IntersectionForm, class: &str) -> Result<Output, CliError> {
    let l = cycle_spec::parse(class)?.evaluate(f)?;
    let member = in_analytic_semigroup(f, &l)?;
    #[derive(Serialize)]
    struct Json {
        graph: String,
        vertex_ids: Vec<i64>,
        class: Value,
        chi: Value,
        in_analytic_semigroup: bool,
    }
    let json = Json {
        graph: graph_name(f),
        vertex_ids: f.ids().to_vec(),
        class: rat_cycle_value(&l),
        chi: rat_value(&f.chi(&l)),
        in_analytic_semigroup: member,
    };
    Ok(Output {
        text: format!("{} in analytic semigroup: {member}\n", cycle_label(f, &l)),
        json: to_json(&json),
    })
}

/// `𝔥(k · l₀)` for `k = 0..=range`; `l₀` defaults to the maximal ideal cycle.
pub fn cmd_hilbert(
    f: &IntersectionForm,
    cycle: Option<&str>,
    range: u32,
) -> Result<Output, CliError> {
    let l0 = cycle_spec::parse(cycle.unwrap_or("Z_max"))?.evaluate_integral(f)?;
    let h = HilbertFunction::new(f)?;
    let mut rows = Vec::new();
    for k in 0..=range {
        let x = &BigInt::from(k) * &l0;
        rows.push((k, h.value(&x)?));
    }
    #[derive(Serialize)]
    struct Row {
        k: u32,
        h: Value,
    }
    #[derive(Serialize)]
    struct Json {
        graph: String,
        vertex_ids: Vec<i64>,
        l0: Value,
        rows: Vec<Row>,
    }
    let mut text = format!("k  h(k*{})\n", cycle_label(f, &l0.to_rat()));
    for (k, v) in &rows {
        text += &format!("{k}  {v}\n");
    }
    let json = Json {
        graph: graph_name(f),
        vertex_ids: f.ids().to_vec(),
        l0: cycle_value(&l0),
        rows: rows
            .iter()
            .map(|(k, v)| Row {
                k: *k,
                h: int_value(v),
            })
            .collect(),
    };
    Ok(Output {
        text,
        json: to_json(&json),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowUpAt {
    Vertex(i64),
    Edge(i64, i64),
}

/// The blown-up graph as a graph file; both renderings are the file itself.
pub fn cmd_blowup(g: &ResolutionGraph, at: BlowUpAt) -> Result<Output, CliError> {
    let r = match at {
        BlowUpAt::Vertex(v) => blow_up_generic(g, v)?,
        BlowUpAt::Edge(u, w) => blow_up_edge(g, u, w)?,
    };
    let name = g.name().map(|n| match at {
        BlowUpAt::Vertex(v) => format!("{n}_bl{v}"),
        BlowUpAt::Edge(u, w) => format!("{n}_bl{u}_{w}"),
    });
    let graph = match name {
        Some(n) => r.graph.with_name(n),
        None => r.graph,
    };
    let file = GraphFile::from_graph(&graph);
    let mut text = file.to_json();
    text.push('\n');
    Ok(Output {
        text,
        json: to_json(&file),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchRow {
    pub file: String,
    pub graph: String,
    pub vertices: usize,
    pub class: String,
    pub p_g: Value,
    pub min_chi: Value,
    pub multiplicity: Value,
    pub status: String,
    #[serde(skip)]
    pub exit_code: i32,
}

fn batch_row(path: &Path, max_box: Option<u64>) -> BatchRow {
    let file = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut row = BatchRow {
        file,
        graph: String::new(),
        vertices: 0,
        class: String::new(),
        p_g: Value::Null,
        min_chi: Value::Null,
        multiplicity: Value::Null,
        status: "ok".into(),
        exit_code: 0,
    };
    let result = (|| -> Result<(), CliError> {
        let f = load(path, max_box)?;
        row.graph = graph_name(&f);
        row.vertices = f.len();
        let r = analyze(&f)?;
        row.class = r.class.tag.to_string();
        row.p_g = int_value(&r.p_g);
        row.min_chi = rat_value(&r.min_chi);
        let m = multiplicity_generic(&f)?;
        row.multiplicity = m.multiplicity.as_ref().map_or(Value::Null, int_value);
        Ok(())
    })();
    if let Err(e) = result {
        log::warn!("{}: {e}", path.display());
        row.status = e.to_string();
        row.exit_code = e.exit_code();
    }
    row
}

/// Every `*.json` graph in `dir`, sorted by file name; failures stay in
/// their own row.
pub fn cmd_batch(dir: &Path, max_box: Option<u64>) -> Result<(Output, i32), CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let rows: Vec<BatchRow> = paths.par_iter().map(|p| batch_row(p, max_box)).collect();
    let code = rows.iter().map(|r| r.exit_code).max().unwrap_or(0);
    let mut text = String::from("file\tgraph\t|V|\tclass\tp_g\tmin_chi\tmult\tstatus\n");
    for r in &rows {
        text += &format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.file,
            r.graph,
            r.vertices,
            r.class,
            plain(&r.p_g),
            plain(&r.min_chi),
            plain(&r.multiplicity),
            r.status
        );
    }
    Ok((
        Output {
            text,
            json: to_json(&rows),
        },
        code,
    ))
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
