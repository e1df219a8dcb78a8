//! JSON encodings. Every number is written as an exact string (`"p/q"` or
//! an integer); readers also accept JSON numbers that are integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::chisel::{BaryReport, ChiselSchedule};
use crate::defcone::{BVector, Certificate, Domain, Verdict};
use crate::error::{Error, Result};
use crate::exactgeom::{Ambient, Coarsening, FanRay, GeneralFan, HPolytope, HRow, VPolytope};
use crate::fans::WallInequality;
use crate::permutohedra::AlphaBeta;
use crate::posets::PermPair;
use crate::rat::{fmt_rat, parse_rat, Rat, RatVec};

pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("values serialize")
    }

    fn parse_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

fn bad(what: &str) -> Error {
    Error::Parse(format!("expected {what}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rat(&n.to_string()),
        _ => Err(bad("an exact number string")),
    }
}

pub fn vec_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

pub fn vec_from_json(v: &Value) -> Result<RatVec> {
    v.as_array().ok_or_else(|| bad("an array"))?.iter().map(rat_from_json).collect()
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    let r = rat_from_json(v)?;
    if !r.is_integer() {
        return Err(bad("an integer"));
    }
    Ok(r.to_integer())
}

fn usize_from_json(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad("a nonnegative integer"))
}

fn str_from_json(v: &Value) -> Result<String> {
    v.as_str().map(str::to_string).ok_or_else(|| bad("a string"))
}

fn usizes_from_json(v: &Value) -> Result<Vec<usize>> {
    v.as_array().ok_or_else(|| bad("an array"))?.iter().map(usize_from_json).collect()
}

fn map_to_json(m: &BTreeMap<String, Rat>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.clone(), rat_to_json(v))).collect())
}

fn map_from_json(v: &Value) -> Result<BTreeMap<String, Rat>> {
    let o = v.as_object().ok_or_else(|| bad("an object"))?;
    o.iter().map(|(k, x)| Ok((k.clone(), rat_from_json(x)?))).collect()
}

impl Json for HPolytope {
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({"label": r.label, "normal": vec_to_json(&r.normal), "rhs": rat_to_json(&r.rhs)}))
            .collect();
        json!({
            "dim": self.dim,
            "equality_rhs": self.equality_rhs.as_ref().map_or(Value::Null, rat_to_json),
            "rows": rows,
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dim = usize_from_json(field(v, "dim")?)?;
        let equality_rhs = match v.get("equality_rhs") {
            None | Some(Value::Null) => None,
            Some(x) => Some(rat_from_json(x)?),
        };
        let rows = field(v, "rows")?.as_array().ok_or_else(|| bad("rows array"))?;
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let label = match r.get("label") {
                    Some(l) => str_from_json(l)?,
                    None => (i + 1).to_string(),
                };
                Ok(HRow { label, normal: vec_from_json(field(r, "normal")?)?, rhs: rat_from_json(field(r, "rhs")?)? })
            })
            .collect::<Result<_>>()?;
        HPolytope::new(dim, equality_rhs, rows)
    }
}

impl Json for VPolytope {
    fn to_json(&self) -> Value {
        json!({"dim": self.dim, "vertices": self.vertices.iter().map(|v| vec_to_json(v)).collect::<Vec<_>>()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let verts = field(v, "vertices")?.as_array().ok_or_else(|| bad("vertices array"))?;
        let verts: Vec<RatVec> = verts.iter().map(vec_from_json).collect::<Result<_>>()?;
        let dim = match v.get("dim") {
            Some(d) => usize_from_json(d)?,
            None => verts.first().map_or(0, Vec::len),
        };
        VPolytope::new(dim, verts)
    }
}

impl Json for GeneralFan {
    fn to_json(&self) -> Value {
        let rays: Vec<Value> = self
            .rays
            .iter()
            .map(|r| json!({"label": r.label, "rep": r.rep.iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
            .collect();
        json!({"ambient": self.ambient.as_str(), "rays": rays, "cones": self.cones})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let rays = field(v, "rays")?.as_array().ok_or_else(|| bad("rays array"))?;
        let rays: Vec<FanRay> = rays
            .iter()
            .map(|r| {
                let rep = field(r, "rep")?.as_array().ok_or_else(|| bad("rep array"))?;
                Ok(FanRay { label: str_from_json(field(r, "label")?)?, rep: rep.iter().map(int_from_json).collect::<Result<_>>()? })
            })
            .collect::<Result<_>>()?;
        let cones = field(v, "cones")?.as_array().ok_or_else(|| bad("cones array"))?;
        let cones: Vec<Vec<String>> = cones
            .iter()
            .map(|c| c.as_array().ok_or_else(|| bad("cone array"))?.iter().map(str_from_json).collect())
            .collect::<Result<_>>()?;
        let ambient = match v.get("ambient").and_then(Value::as_str) {
            Some("linear") => Ambient::Linear,
            Some("quotient") => Ambient::Quotient,
            Some(other) => return Err(Error::Parse(format!("unknown ambient {other:?}"))),
            // Rays summing to zero are read as living modulo the all-ones line.
            None => {
                if rays.iter().all(|r| r.rep.iter().sum::<BigInt>() == BigInt::from(0)) {
                    Ambient::Quotient
                } else {
                    Ambient::Linear
                }
            }
        };
        GeneralFan::new(ambient, rays, cones)
    }
}

impl Json for WallInequality {
    fn to_json(&self) -> Value {
        let rhs: Vec<Value> = self.rhs.iter().map(|(l, c)| json!([l, rat_to_json(c)])).collect();
        json!({
            "kind": self.kind,
            "lhs": map_to_json(&self.lhs),
            "rhs": rhs,
            "balance": rat_to_json(&self.balance),
            "top": self.top_label,
            "text": self.display(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let rhs = field(v, "rhs")?.as_array().ok_or_else(|| bad("rhs array"))?;
        let rhs = rhs
            .iter()
            .map(|t| match t.as_array().map(Vec::as_slice) {
                Some([l, c]) => Ok((str_from_json(l)?, rat_from_json(c)?)),
                _ => Err(bad("[label, coefficient]")),
            })
            .collect::<Result<_>>()?;
        let balance = match v.get("balance") {
            Some(b) => rat_from_json(b)?,
            None => Rat::from_integer(0.into()),
        };
        let top_label = match v.get("top") {
            None | Some(Value::Null) => None,
            Some(t) => Some(str_from_json(t)?),
        };
        let kind = v.get("kind").and_then(Value::as_str).unwrap_or("custom").to_string();
        Ok(WallInequality { kind, lhs: map_from_json(field(v, "lhs")?)?, rhs, balance, top_label })
    }
}

pub fn system_to_json(kind: &str, d: Option<usize>, ineqs: &[WallInequality]) -> Value {
    json!({"kind": kind, "d": d, "count": ineqs.len(), "inequalities": ineqs.iter().map(Json::to_json).collect::<Vec<_>>()})
}

/// Reads `{"inequalities": [...]}` or a bare array.
pub fn system_from_json(v: &Value) -> Result<Vec<WallInequality>> {
    let list = match v {
        Value::Array(a) => a,
        _ => field(v, "inequalities")?.as_array().ok_or_else(|| bad("inequalities array"))?,
    };
    list.iter().map(WallInequality::from_json).collect()
}

impl Json for BVector {
    fn to_json(&self) -> Value {
        json!({"domain": self.domain.as_str(), "d": self.d, "values": map_to_json(&self.values)})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let domain = Domain::parse(field(v, "domain")?.as_str().ok_or_else(|| bad("domain string"))?)?;
        BVector::new(domain, usize_from_json(field(v, "d")?)?, map_from_json(field(v, "values")?)?)
    }
}

impl Json for Certificate {
    fn to_json(&self) -> Value {
        match self {
            Certificate::Inequality { index, inequality, lhs, rhs } => json!({
                "type": "inequality", "index": index, "inequality": inequality.to_json(),
                "lhs": rat_to_json(lhs), "rhs": rat_to_json(rhs),
            }),
            Certificate::Submodular { s, t, lhs, rhs } => json!({
                "type": "submodular", "S": s, "T": t, "lhs": rat_to_json(lhs), "rhs": rat_to_json(rhs),
            }),
            Certificate::Equality { vertex, point, facet, value, rhs } => json!({
                "type": "equality", "vertex": vec_to_json(vertex), "point": vec_to_json(point),
                "facet": facet, "value": rat_to_json(value), "rhs": rat_to_json(rhs),
            }),
            Certificate::NoPassing { vertex, point, facet, value, rhs } => json!({
                "type": "no_passing", "vertex": vec_to_json(vertex), "point": vec_to_json(point),
                "facet": facet, "value": rat_to_json(value), "rhs": rat_to_json(rhs),
            }),
            Certificate::Rank { condition, sets, lhs, rhs } => json!({
                "type": "rank", "condition": condition, "sets": sets, "lhs": rat_to_json(lhs), "rhs": rat_to_json(rhs),
            }),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let r = |k: &str| rat_from_json(field(v, k)?);
        let s = |k: &str| str_from_json(field(v, k)?);
        match field(v, "type")?.as_str() {
            Some("inequality") => Ok(Certificate::Inequality {
                index: usize_from_json(field(v, "index")?)?,
                inequality: WallInequality::from_json(field(v, "inequality")?)?,
                lhs: r("lhs")?,
                rhs: r("rhs")?,
            }),
            Some("submodular") => Ok(Certificate::Submodular { s: s("S")?, t: s("T")?, lhs: r("lhs")?, rhs: r("rhs")? }),
            Some(kind @ ("equality" | "no_passing")) => {
                let (vertex, point) = (vec_from_json(field(v, "vertex")?)?, vec_from_json(field(v, "point")?)?);
                let (facet, value, rhs) = (s("facet")?, r("value")?, r("rhs")?);
                Ok(if kind == "equality" {
                    Certificate::Equality { vertex, point, facet, value, rhs }
                } else {
                    Certificate::NoPassing { vertex, point, facet, value, rhs }
                })
            }
            Some("rank") => {
                let sets = field(v, "sets")?.as_array().ok_or_else(|| bad("sets"))?;
                Ok(Certificate::Rank {
                    condition: s("condition")?,
                    sets: sets.iter().map(str_from_json).collect::<Result<_>>()?,
                    lhs: r("lhs")?,
                    rhs: r("rhs")?,
                })
            }
            _ => Err(bad("a certificate type")),
        }
    }
}

impl Json for Verdict {
    fn to_json(&self) -> Value {
        json!({"member": self.member, "certificate": self.certificate.as_ref().map_or(Value::Null, Json::to_json)})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let member = field(v, "member")?.as_bool().ok_or_else(|| bad("member bool"))?;
        let certificate = match v.get("certificate") {
            None | Some(Value::Null) => None,
            Some(c) => Some(Certificate::from_json(c)?),
        };
        Ok(Verdict { member, certificate })
    }
}

impl Json for AlphaBeta {
    fn to_json(&self) -> Value {
        json!({"alpha": vec_to_json(&self.alpha), "beta": vec_to_json(&self.beta), "M": rat_to_json(&self.m), "N": rat_to_json(&self.n)})
    }

    fn from_json(v: &Value) -> Result<Self> {
        AlphaBeta::new(
            vec_from_json(field(v, "alpha")?)?,
            vec_from_json(field(v, "beta")?)?,
            rat_from_json(field(v, "M")?)?,
            rat_from_json(field(v, "N")?)?,
        )
    }
}

impl Json for ChiselSchedule {
    fn to_json(&self) -> Value {
        json!({"epsilons": vec_to_json(&self.epsilons), "mode": self.mode})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let mode = field(v, "mode")?.as_u64().ok_or_else(|| bad("mode 1 or 2"))?;
        ChiselSchedule::new(vec_from_json(field(v, "epsilons")?)?, mode as u8)
    }
}

impl Json for PermPair {
    fn to_json(&self) -> Value {
        json!({"pi": self.pi, "tau": self.tau})
    }

    fn from_json(v: &Value) -> Result<Self> {
        PermPair::new(usizes_from_json(field(v, "pi")?)?, usizes_from_json(field(v, "tau")?)?)
    }
}

pub fn coarsening_to_json(c: &Coarsening) -> Value {
    let witness = c.witness.as_ref().map_or(Value::Null, |w| json!({"fine_cone": w.fine_cone, "generator": w.generator}));
    json!({"holds": c.holds, "witness": witness})
}

pub fn bary_report_to_json(r: &BaryReport) -> Value {
    let mut m = Map::new();
    m.insert("level".into(), json!(r.level));
    m.insert("d".into(), json!(r.d));
    m.insert("epsilons".into(), vec_to_json(&r.epsilons));
    m.insert("alpha".into(), vec_to_json(&r.alpha));
    m.insert("beta".into(), r.beta.as_deref().map_or(Value::Null, vec_to_json));
    m.insert("appropriate".into(), json!(r.appropriate));
    m.insert("vertex_count".into(), json!(r.vertex_count));
    m.insert("vertices_match".into(), json!(r.vertices_match));
    m.insert("fan_match".into(), json!(r.fan_match));
    m.insert("rounds_match".into(), json!(r.rounds_match));
    m.insert("pass".into(), json!(r.pass));
    Value::Object(m)
}
