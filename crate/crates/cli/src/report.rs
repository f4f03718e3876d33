//! Serializable reports and their text rendering. Cycles are written as
//! coefficient arrays aligned with `vertex_ids` (ascending ids).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use serde_json::Value;

use plumbing_core::{
    BasePointReport, Cycle, IntersectionForm, InvariantReport, RatCycle, VertexBaseData,
};

/// Integers that fit `i64` as JSON numbers, everything else as strings.
pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn rat_value(x: &BigRational) -> Value {
    if x.is_integer() {
        int_value(&x.to_integer())
    } else {
        Value::String(x.to_string())
    }
}

pub fn cycle_value(c: &Cycle) -> Value {
    Value::Array(c.coeffs().iter().map(int_value).collect())
}

pub fn rat_cycle_value(c: &RatCycle) -> Value {
    Value::Array(c.coeffs().iter().map(rat_value).collect())
}

/// `E`, `Z_K`, `k*E*_v` or the coefficient tuple.
pub fn cycle_label(f: &IntersectionForm, x: &RatCycle) -> String {
    if x == &Cycle::reduced(f.len()).to_rat() {
        return "E".into();
    }
    if x == f.canonical_cycle() {
        return "Z_K".into();
    }
    for i in 0..f.len() {
        let d = f.dual_cycle_at(i);
        let k = &x.coeffs()[0] / &d.coeffs()[0];
        if k.is_integer() && k.is_positive() && &d.scale(&k) == x {
            return if k.is_one() {
                format!("E*_{}", f.id_at(i))
            } else {
                format!("{k}*E*_{}", f.id_at(i))
            };
        }
    }
    let parts: Vec<String> = x.coeffs().iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    pub tag: String,
    pub min_chi_positive: Value,
    pub numerically_gorenstein: bool,
    pub is_minimal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeJson {
    pub graph: String,
    pub vertex_ids: Vec<i64>,
    pub det_neg: Value,
    pub class: ClassJson,
    pub p_g: Value,
    pub min_chi: Value,
    pub z_k: Value,
    pub z_min: Value,
    pub z_max: Value,
    pub multiplicity: Value,
    pub total_base_points: Value,
    /// Every `l ∈ L` attaining `min χ`.
    pub min_chi_minimizers: Vec<Value>,
    /// Every `l > 0` attaining `min_{l>0} χ`.
    pub positive_minimizers: Vec<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexJson {
    pub vertex: i64,
    pub pairing: Value,
    pub d_v: Value,
    pub star: bool,
    pub count: Value,
    pub m_v: Value,
    pub m_v_plus: Value,
    pub t: Value,
    pub m_min: Value,
    pub s_max: Value,
}

impl VertexJson {
    pub fn new(d: &VertexBaseData) -> Self {
        VertexJson {
            vertex: d.vertex,
            pairing: rat_value(&d.pairing),
            d_v: rat_value(&d.d_v),
            star: d.star,
            count: int_value(&d.count),
            m_v: rat_value(&d.m_v),
            m_v_plus: d.m_v_plus.as_ref().map_or(Value::Null, rat_value),
            t: d.t.as_ref().map_or(Value::Null, int_value),
            m_min: d.m_min.as_ref().map_or(Value::Null, cycle_value),
            s_max: d.s_max.as_ref().map_or(Value::Null, rat_cycle_value),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityJson {
    pub graph: String,
    pub vertex_ids: Vec<i64>,
    pub rational: bool,
    pub l: Value,
    pub l_is_canonical: bool,
    pub multiplicity: Value,
    pub wagreich_floor: Value,
    pub total_base_points: Value,
    pub per_vertex: Vec<VertexJson>,
}

impl MultiplicityJson {
    pub fn new(f: &IntersectionForm, r: &BasePointReport, rational: bool) -> Self {
        MultiplicityJson {
            graph: graph_name(f),
            vertex_ids: f.ids().to_vec(),
            rational,
            l: rat_cycle_value(&r.l),
            l_is_canonical: &r.l == f.canonical_cycle(),
            multiplicity: r.multiplicity.as_ref().map_or(Value::Null, int_value),
            wagreich_floor: rat_value(&r.wagreich_floor),
            total_base_points: int_value(&r.total_base_points),
            per_vertex: r.per_vertex.iter().map(VertexJson::new).collect(),
        }
    }
}

pub fn graph_name(f: &IntersectionForm) -> String {
    f.graph().name().unwrap_or("unnamed").to_string()
}

pub fn analyze_text(f: &IntersectionForm, r: &InvariantReport, mult: &BasePointReport) -> String {
    let rational = r.class.is_rational();
    let mult_text = mult
        .multiplicity
        .as_ref()
        .map_or("?".into(), |m| m.to_string());
    let mut out = format!(
        "graph {}: {} vertices, det(-I) = {}\n",
        graph_name(f),
        f.len(),
        f.det_neg()
    );
    out += &format!(
        "{}, p_g={}, Z_min={}, mult={}\n",
        r.class.tag,
        r.p_g,
        cycle_label(f, &r.z_min.to_rat()),
        mult_text
    );
    out += &format!("min chi = {}", r.min_chi);
    if !rational {
        out += &format!(", Z_max = {}", cycle_label(f, &r.z_max.to_rat()));
    }
    out += "\n";
    out
}

fn base_point_summary(r: &BasePointReport) -> String {
    let parts: Vec<String> = r
        .per_vertex
        .iter()
        .filter(|d| d.count > BigInt::from(0))
        .map(|d| {
            let t = d.t.as_ref().map_or("?".into(), |t| t.to_string());
            let each = if d.count > BigInt::from(1) {
                " each"
            } else {
                ""
            };
            format!("E{} ×{} (A_{t}{each})", d.vertex, d.count)
        })
        .collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

pub fn multiplicity_text(f: &IntersectionForm, r: &BasePointReport, rational: bool) -> String {
    let mult = r
        .multiplicity
        .as_ref()
        .map_or("?".into(), |m| m.to_string());
    let which = if rational { "Z_min" } else { "Z_max" };
    let mut out = format!(
        "mult = {mult}, {which} = {}, base points: {}\n",
        cycle_label(f, &r.l),
        base_point_summary(r)
    );
    out += &format!("-{which}^2 = {}\n", r.wagreich_floor);
    for d in &r.per_vertex {
        out += &format!(
            "v{}: ({which},E_v) = {}, d_v = {}, star = {}",
            d.vertex, d.pairing, d.d_v, d.star
        );
        if let (Some(plus), Some(t)) = (&d.m_v_plus, &d.t) {
            out += &format!(", m_v = {}, m_v+ = {plus}, t = {t}", d.m_v);
        }
        out += "\n";
    }
    out
}

pub fn base_points_text(f: &IntersectionForm, r: &BasePointReport) -> String {
    format!(
        "l' = {}, base points: {}\n",
        cycle_label(f, &r.l),
        base_point_summary(r)
    )
}
