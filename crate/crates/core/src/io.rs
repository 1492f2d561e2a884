//! Text and JSON decoders for every input format, plus the matrix encoder.
//!
//! Matrices are `{"rows": r, "cols": c, "entries": [...]}` in row-major order.
//! Strings (`"p/q"`) and integers are exact; any non-integral JSON number
//! makes the whole matrix float. Strings and floats together are refused.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::bordism::{GroupDescriptor, UnorientedBordismTable};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, DynMatrix, FMatrix, QMatrix, Rational};
use crate::maslov::LagrangianTuple;
use crate::metaplectic::{Mp1Context, Mp1Element};
use crate::scan::ContactForm;
use crate::scan::{Sample, SampledImmersion, Topology};
use crate::symplectic::{LagrangianFrame, SymplecticSpace};
use crate::witt::WittReal;

/// Refuses inputs large enough to stall a decoder.
const MAX_ENTRIES: usize = 1 << 20;

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("JSON: {e}")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Parse(format!("{what} must be a JSON object")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::Parse(format!("{what} must be a non-negative integer")))
}

fn as_f64_vec(v: &Value, what: &str) -> Result<Vec<f64>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be an array")))?;
    arr.iter()
        .map(|x| x.as_f64().filter(|f| f.is_finite()).ok_or_else(|| Error::Parse(format!("{what}: non-numeric entry {x}"))))
        .collect()
}

enum Entry {
    Exact(Rational),
    Float(f64),
}

fn entry(v: &Value) -> Result<Entry> {
    match v {
        Value::String(s) => parse_rational(s).map(Entry::Exact),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Entry::Exact(Rational::from_integer(i.into())))
            } else if let Some(u) = n.as_u64() {
                Ok(Entry::Exact(Rational::from_integer(u.into())))
            } else {
                let f = n.as_f64().filter(|f| f.is_finite()).ok_or_else(|| Error::Parse(format!("bad number {n}")))?;
                Ok(Entry::Float(f))
            }
        }
        other => Err(Error::MalformedMatrix(format!("entry {other} is neither a number nor a rational string"))),
    }
}

/// Decodes the matrix encoding from a parsed JSON value.
pub fn matrix_from_value(v: &Value) -> Result<DynMatrix> {
    let obj = v.as_object().ok_or_else(|| Error::MalformedMatrix("expected an object".into()))?;
    let dim = |k: &str| obj.get(k).and_then(Value::as_u64).and_then(|x| usize::try_from(x).ok());
    let (rows, cols) = match (dim("rows"), dim("cols")) {
        (Some(r), Some(c)) => (r, c),
        _ => return Err(Error::MalformedMatrix("rows and cols must be non-negative integers".into())),
    };
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::MalformedMatrix("entries must be an array".into()))?;
    if rows.checked_mul(cols) != Some(entries.len()) || entries.len() > MAX_ENTRIES {
        return Err(Error::MalformedMatrix(format!("{rows}×{cols} matrix with {} entries", entries.len())));
    }
    let parsed: Vec<Entry> = entries.iter().map(entry).collect::<Result<_>>()?;
    let has_float = parsed.iter().any(|e| matches!(e, Entry::Float(_)));
    let has_string = entries.iter().any(Value::is_string);
    if has_float && has_string {
        return Err(Error::ModeMix("matrix mixes rational strings with float entries".into()));
    }
    if has_float {
        let data = parsed
            .into_iter()
            .map(|e| match e {
                Entry::Float(f) => f,
                Entry::Exact(r) => crate::linalg::rational_to_f64(&r),
            })
            .collect();
        Ok(DynMatrix::Approx(FMatrix::new(rows, cols, data)?))
    } else {
        let data = parsed
            .into_iter()
            .map(|e| match e {
                Entry::Exact(r) => r,
                Entry::Float(_) => unreachable!(),
            })
            .collect();
        Ok(DynMatrix::Exact(QMatrix::new(rows, cols, data)?))
    }
}

pub fn parse_matrix(text: &str) -> Result<DynMatrix> {
    matrix_from_value(&parse_json(text)?)
}

/// Encodes a matrix; exact entries become `"p/q"` strings.
pub fn matrix_to_value(m: &DynMatrix) -> Value {
    let entries: Vec<Value> = match m {
        DynMatrix::Exact(q) => q.entries().iter().map(|r| Value::String(format_rational(r))).collect(),
        DynMatrix::Approx(f) => f.entries().iter().map(|&x| json!(x)).collect(),
    };
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

/// `std:n`.
pub fn parse_space_spec(s: &str) -> Result<SymplecticSpace> {
    let n = s
        .trim()
        .strip_prefix("std:")
        .and_then(|n| n.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("space must be written std:n, got {s:?}")))?;
    SymplecticSpace::standard(n)
}

/// Space named by the optional `n` and `omega` fields of an object.
fn space_from_object(obj: &Map<String, Value>, tol: f64) -> Result<Option<SymplecticSpace>> {
    let n = obj.get("n").map(|v| as_usize(v, "n")).transpose()?;
    let space = match obj.get("omega") {
        Some(om) => Some(SymplecticSpace::with_omega(matrix_from_value(om)?, tol)?),
        None => n.map(SymplecticSpace::standard).transpose()?,
    };
    if let (Some(n), Some(s)) = (n, &space) {
        if s.n() != n {
            return Err(Error::DimensionMismatch(format!("n = {n} but ω is {}×{}", s.dim(), s.dim())));
        }
    }
    Ok(space)
}

fn resolve_space(declared: Option<SymplecticSpace>, given: Option<&SymplecticSpace>, rows: usize) -> Result<SymplecticSpace> {
    match (declared, given) {
        (Some(d), Some(g)) if d != *g => Err(Error::DimensionMismatch("file and command line name different spaces".into())),
        (Some(d), _) => Ok(d),
        (None, Some(g)) => Ok(g.clone()),
        (None, None) if rows % 2 == 0 && rows > 0 => SymplecticSpace::standard(rows / 2),
        (None, None) => Err(Error::DimensionMismatch(format!("frame with {rows} rows in no symplectic space"))),
    }
}

/// `{"n": n, "omega": M?, "frame": M}`.
pub fn lagrangian_from_value(v: &Value, space: Option<&SymplecticSpace>, tol: f64) -> Result<LagrangianFrame> {
    let obj = as_object(v, "subspace")?;
    let frame = matrix_from_value(field(obj, "frame")?)?;
    let space = resolve_space(space_from_object(obj, tol)?, space, frame.rows())?;
    LagrangianFrame::new(space, frame, tol)
}

/// Either `{"n"?, "omega"?, "frames": [M, …]}` or an array of subspace objects.
pub fn parse_tuple(text: &str, space: Option<&SymplecticSpace>, tol: f64) -> Result<LagrangianTuple> {
    let v = parse_json(text)?;
    let entries = match &v {
        Value::Array(items) => items
            .iter()
            .map(|it| lagrangian_from_value(it, space, tol))
            .collect::<Result<Vec<_>>>()?,
        Value::Object(obj) => {
            let declared = space_from_object(obj, tol)?;
            let frames = field(obj, "frames")?
                .as_array()
                .ok_or_else(|| Error::Parse("frames must be an array".into()))?;
            frames
                .iter()
                .map(|f| {
                    let m = matrix_from_value(f)?;
                    let s = resolve_space(declared.clone(), space, m.rows())?;
                    LagrangianFrame::new(s, m, tol)
                })
                .collect::<Result<Vec<_>>>()?
        }
        _ => return Err(Error::Parse("tuple must be an object or an array".into())),
    };
    LagrangianTuple::new(entries)
}

/// `{"n"?, "omega"?, "base": M}` with an exact base frame.
pub fn parse_mp1_context(text: &str, tol: f64) -> Result<Arc<Mp1Context>> {
    let v = parse_json(text)?;
    let obj = as_object(&v, "context")?;
    let base = matrix_from_value(field(obj, "base")?)?;
    if !base.is_exact() {
        return Err(Error::ModeMix("metaplectic contexts need an exact base frame".into()));
    }
    let space = resolve_space(space_from_object(obj, tol)?, None, base.rows())?;
    Mp1Context::new(LagrangianFrame::new(space, base, tol)?)
}

/// `{"w": int, "g": M}` in the given context.
pub fn parse_mp1_element(text: &str, ctx: &Arc<Mp1Context>) -> Result<Mp1Element> {
    let v = parse_json(text)?;
    let obj = as_object(&v, "element")?;
    let w = field(obj, "w")?.as_i64().ok_or_else(|| Error::Parse("w must be an integer".into()))?;
    let g = matrix_from_value(field(obj, "g")?)?.as_exact()?.clone();
    ctx.element(WittReal(w), g)
}

pub fn mp1_element_to_value(a: &Mp1Element) -> Value {
    json!({"w": a.w.0, "g": matrix_to_value(&DynMatrix::Exact(a.g().clone()))})
}

/// `line`, `loop`, or `grid:AxB[:periodic=b,b]` with booleans `true/false/1/0`.
pub fn parse_topology(s: &str) -> Result<Topology> {
    let s = s.trim();
    match s {
        "line" => return Ok(Topology::Line),
        "loop" => return Ok(Topology::Loop),
        _ => {}
    }
    let rest = s.strip_prefix("grid:").ok_or_else(|| Error::Parse(format!("unknown topology {s:?}")))?;
    let (shape_s, per_s) = match rest.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (rest, None),
    };
    let shape: Vec<usize> = shape_s
        .split('x')
        .map(|d| d.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad grid extent {d:?}"))))
        .collect::<Result<_>>()?;
    let periodic = match per_s {
        None => vec![false; shape.len()],
        Some(p) => p
            .trim()
            .strip_prefix("periodic=")
            .ok_or_else(|| Error::Parse(format!("expected periodic=…, got {p:?}")))?
            .split(',')
            .map(|b| match b.trim() {
                "true" | "1" => Ok(true),
                "false" | "0" => Ok(false),
                o => Err(Error::Parse(format!("bad periodic flag {o:?}"))),
            })
            .collect::<Result<_>>()?,
    };
    Ok(Topology::Grid { shape, periodic })
}

/// JSON sample file:
/// `{"param_dim", "ambient_dim", "topology", "samples": [{"param", "point", "frame"?}]}`.
/// A `topology` argument overrides the file's.
pub fn parse_samples_json(text: &str, topology: Option<Topology>) -> Result<SampledImmersion> {
    let v = parse_json(text)?;
    let obj = as_object(&v, "sample file")?;
    let param_dim = as_usize(field(obj, "param_dim")?, "param_dim")?;
    let ambient_dim = as_usize(field(obj, "ambient_dim")?, "ambient_dim")?;
    let topology = match topology {
        Some(t) => t,
        None => match obj.get("topology") {
            Some(Value::String(s)) => parse_topology(s)?,
            Some(t) => serde_json::from_value(t.clone()).map_err(|e| Error::Parse(format!("topology: {e}")))?,
            None => return Err(Error::Parse("topology must be declared".into())),
        },
    };
    let raw = field(obj, "samples")?.as_array().ok_or_else(|| Error::Parse("samples must be an array".into()))?;
    if raw.len() > MAX_ENTRIES {
        return Err(Error::SizeGuard(format!("{} samples", raw.len())));
    }
    let samples = raw
        .iter()
        .map(|s| {
            let o = as_object(s, "sample")?;
            let frame = match o.get("frame") {
                None | Some(Value::Null) => None,
                Some(f) => Some(match matrix_from_value(f)? {
                    DynMatrix::Exact(q) => q.to_f64(),
                    DynMatrix::Approx(m) => m,
                }),
            };
            Ok(Sample { param: as_f64_vec(field(o, "param")?, "param")?, point: as_f64_vec(field(o, "point")?, "point")?, frame })
        })
        .collect::<Result<Vec<_>>>()?;
    SampledImmersion::new(param_dim, ambient_dim, samples, topology)
}

enum Column {
    Param(usize),
    Amb(usize),
    Frame(usize, usize),
}

fn column_kind(name: &str) -> Result<Column> {
    let name = name.trim();
    let idx = |s: &str| s.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1);
    let bad = || Error::Parse(format!("unknown column {name:?}"));
    if let Some(r) = name.strip_prefix("param") {
        return idx(r).map(Column::Param).ok_or_else(bad);
    }
    if let Some(r) = name.strip_prefix("amb") {
        return idx(r).map(Column::Amb).ok_or_else(bad);
    }
    if let Some(r) = name.strip_prefix("frame_") {
        let (a, b) = r.split_once('_').ok_or_else(bad)?;
        return match (idx(a), idx(b)) {
            (Some(i), Some(j)) => Ok(Column::Frame(i, j)),
            _ => Err(bad()),
        };
    }
    Err(bad())
}

/// CSV sample file with header `param1.., amb1.., [frame_i_j..]` (1-based,
/// `frame_i_j` is ambient row `i` of tangent column `j`). A leading comment
/// `# topology: <spec>` declares the layout; a `topology` argument overrides it.
pub fn parse_samples_csv(text: &str, topology: Option<Topology>) -> Result<SampledImmersion> {
    let mut declared = None;
    for line in text.lines().map(str::trim).filter(|l| l.starts_with('#')) {
        if let Some(spec) = line.trim_start_matches('#').trim().strip_prefix("topology:") {
            declared = Some(parse_topology(spec)?);
        }
    }
    let topology = topology.or(declared).ok_or_else(|| Error::Parse("topology must be declared".into()))?;
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Parse(format!("CSV header: {e}")))?.clone();
    let kinds: Vec<Column> = headers.iter().map(column_kind).collect::<Result<_>>()?;
    let count = |f: &dyn Fn(&Column) -> Option<usize>| kinds.iter().filter_map(f).max().map_or(0, |m| m + 1);
    let param_dim = count(&|c| if let Column::Param(i) = c { Some(*i) } else { None });
    let ambient_dim = count(&|c| if let Column::Amb(i) = c { Some(*i) } else { None });
    let frames = kinds.iter().filter(|c| matches!(c, Column::Frame(..))).count();
    let n_param = kinds.iter().filter(|c| matches!(c, Column::Param(_))).count();
    let n_amb = kinds.iter().filter(|c| matches!(c, Column::Amb(_))).count();
    if n_param != param_dim || n_amb != ambient_dim {
        return Err(Error::Parse("param and amb columns must be numbered 1..k without gaps or repeats".into()));
    }
    if frames != 0 && frames != param_dim * ambient_dim {
        return Err(Error::Parse(format!("expected {} frame columns, found {frames}", param_dim * ambient_dim)));
    }
    for c in &kinds {
        if let Column::Frame(i, j) = c {
            if *i >= ambient_dim || *j >= param_dim {
                return Err(Error::Parse("frame column index out of range".into()));
            }
        }
    }
    let mut samples = Vec::new();
    for (row, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(format!("CSV row {}: {e}", row + 1)))?;
        if rec.len() != kinds.len() {
            return Err(Error::Parse(format!("CSV row {} has {} fields", row + 1, rec.len())));
        }
        if samples.len() >= MAX_ENTRIES {
            return Err(Error::SizeGuard("too many samples".into()));
        }
        let mut s = Sample { param: vec![0.0; param_dim], point: vec![0.0; ambient_dim], frame: None };
        let mut frame = (frames > 0).then(|| FMatrix::zeros(ambient_dim, param_dim));
        for (kind, raw) in kinds.iter().zip(rec.iter()) {
            let v: f64 = raw
                .parse()
                .ok()
                .filter(|f: &f64| f.is_finite())
                .ok_or_else(|| Error::Parse(format!("CSV row {}: bad number {raw:?}", row + 1)))?;
            match *kind {
                Column::Param(i) => s.param[i] = v,
                Column::Amb(i) => s.point[i] = v,
                Column::Frame(i, j) => frame.as_mut().expect("frame columns present").set(i, j, v),
            }
        }
        s.frame = frame;
        samples.push(s);
    }
    SampledImmersion::new(param_dim, ambient_dim, samples, topology)
}

/// Dispatches on the first non-space byte: `{` means JSON, anything else CSV.
pub fn parse_samples(text: &str, topology: Option<Topology>) -> Result<SampledImmersion> {
    if text.trim_start().starts_with('{') {
        parse_samples_json(text, topology)
    } else {
        parse_samples_csv(text, topology)
    }
}

/// `{"4": r, "5": r, …}`.
pub fn parse_omega_table(text: &str) -> Result<UnorientedBordismTable> {
    let v = parse_json(text)?;
    let obj = as_object(&v, "bordism table")?;
    let mut entries = BTreeMap::new();
    for (k, r) in obj {
        let s: usize = k.trim().parse().map_err(|_| Error::Parse(format!("table key {k:?} is not a degree")))?;
        let r = r.as_u64().ok_or_else(|| Error::Parse(format!("rank for degree {s} must be a non-negative integer")))?;
        entries.insert(s, r);
    }
    let mut table = UnorientedBordismTable::builtin();
    table.extend(entries)?;
    Ok(table)
}

/// Homology groups by degree: a JSON array of strings or a comma list.
pub fn parse_homology(text: &str) -> Result<Vec<GroupDescriptor>> {
    let t = text.trim();
    if t.starts_with('[') {
        let v = parse_json(t)?;
        v.as_array()
            .ok_or_else(|| Error::Parse("homology must be an array".into()))?
            .iter()
            .map(|g| g.as_str().ok_or_else(|| Error::Parse("homology entries must be strings".into()))?.parse())
            .collect()
    } else if t.is_empty() {
        Err(Error::Parse("empty homology list".into()))
    } else {
        t.split(',').map(str::parse).collect()
    }
}

/// `std:n`, or `{"c0": [..], "a": M}` for `χ_p(v) = (c₀ + A p)·v`.
pub fn parse_contact(text: &str) -> Result<ContactForm> {
    let t = text.trim();
    if let Some(n) = t.strip_prefix("std:") {
        let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad contact spec {t:?}")))?;
        if n == 0 {
            return Err(Error::Invalid("half-dimension must be positive".into()));
        }
        return Ok(ContactForm::standard(n));
    }
    let v = parse_json(t)?;
    let obj = as_object(&v, "contact form")?;
    let c0 = as_f64_vec(field(obj, "c0")?, "c0")?;
    let a = matrix_from_value(field(obj, "a")?)?.to_f64();
    ContactForm::new(c0, a)
}

/// Points as a JSON array of coordinate arrays.
pub fn parse_points(text: &str) -> Result<Vec<Vec<f64>>> {
    let v = parse_json(text)?;
    v.as_array()
        .ok_or_else(|| Error::Parse("points must be an array".into()))?
        .iter()
        .map(|p| as_f64_vec(p, "point"))
        .collect()
}

/// Exact `n × p` covector frame in the matrix encoding.
pub fn parse_xi(text: &str) -> Result<QMatrix> {
    Ok(parse_matrix(text)?.as_exact()?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qr;

    #[test]
    fn matrix_modes() {
        let m = parse_matrix(r#"{"rows":1,"cols":3,"entries":["1/2",3,"-4"]}"#).unwrap();
        assert_eq!(m.as_exact().unwrap().get(0, 0), &qr(1, 2));
        let f = parse_matrix(r#"{"rows":1,"cols":2,"entries":[0.5,1]}"#).unwrap();
        assert!(!f.is_exact());
        assert!(matches!(parse_matrix(r#"{"rows":1,"cols":2,"entries":["1",0.5]}"#), Err(Error::ModeMix(_))));
        assert!(matches!(parse_matrix(r#"{"rows":2,"cols":2,"entries":[1]}"#), Err(Error::MalformedMatrix(_))));
        assert!(parse_matrix(r#"{"rows":1,"cols":1,"entries":["1/0"]}"#).is_err());
        assert!(parse_matrix("[").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"rows":2,"cols":1,"entries":["1/3","-2"]}"#;
        let m = parse_matrix(text).unwrap();
        assert_eq!(matrix_from_value(&matrix_to_value(&m)).unwrap(), m);
    }

    #[test]
    fn tuple_forms() {
        let frames = r#"{"n":1,"frames":[
            {"rows":2,"cols":1,"entries":[1,0]},
            {"rows":2,"cols":1,"entries":[1,1]},
            {"rows":2,"cols":1,"entries":[0,1]}]}"#;
        let t = parse_tuple(frames, None, 0.0).unwrap();
        assert_eq!(t.len(), 3);
        let arr = r#"[{"frame":{"rows":2,"cols":1,"entries":[1,0]}},{"n":1,"frame":{"rows":2,"cols":1,"entries":[0,1]}}]"#;
        assert_eq!(parse_tuple(arr, None, 0.0).unwrap().len(), 2);
        let space = parse_space_spec("std:2").unwrap();
        assert!(parse_tuple(frames, Some(&space), 0.0).is_err());
        assert!(parse_space_spec("std:x").is_err());
        let not_lag = r#"{"frames":[{"rows":4,"cols":2,"entries":[1,0,0,0,0,1,0,0]}]}"#;
        assert!(matches!(parse_tuple(not_lag, None, 0.0), Err(Error::NotLagrangian(_))));
    }

    #[test]
    fn topology_specs() {
        assert_eq!(parse_topology("loop").unwrap(), Topology::Loop);
        assert_eq!(
            parse_topology("grid:3x4:periodic=1,false").unwrap(),
            Topology::Grid { shape: vec![3, 4], periodic: vec![true, false] }
        );
        assert!(parse_topology("torus").is_err());
    }

    #[test]
    fn samples_csv_and_json_agree() {
        let csv = "# topology: line\nparam1,amb1,amb2\n0,0,0\n0.5,0.5,0.25\n1,1,1\n";
        let a = parse_samples(csv, None).unwrap();
        let json = r#"{"param_dim":1,"ambient_dim":2,"topology":"line","samples":[
            {"param":[0],"point":[0,0]},{"param":[0.5],"point":[0.5,0.25]},{"param":[1],"point":[1,1]}]}"#;
        let b = parse_samples(json, None).unwrap();
        assert_eq!(a, b);
        let framed = "param1,amb1,amb2,frame_1_1,frame_2_1\n0,1,0,0,1\n1,0,1,-1,0\n";
        let s = parse_samples(framed, Some(Topology::Line)).unwrap();
        assert_eq!(s.samples()[1].frame.as_ref().unwrap().entries(), &[-1.0, 0.0]);
        assert!(parse_samples("param1,amb1\n0,0\n", None).is_err());
        assert!(parse_samples("param1,amb2\n0,0\n1,1\n", Some(Topology::Line)).is_err());
    }

    #[test]
    fn small_formats() {
        let t = parse_omega_table(r#"{"4": 2}"#).unwrap();
        assert_eq!(t.rank(4).unwrap(), 2);
        assert!(parse_omega_table(r#"{"2": 0}"#).is_err());
        assert_eq!(parse_homology("Z2,0,Z2^2").unwrap().len(), 3);
        assert_eq!(parse_homology(r#"["Z2","0"]"#).unwrap().len(), 2);
        assert_eq!(parse_contact("std:1").unwrap().dim(), 3);
        let c = parse_contact(r#"{"c0":[0,0,1],"a":{"rows":3,"cols":3,"entries":[0,-1,0,0,0,0,0,0,0]}}"#).unwrap();
        assert_eq!(c, ContactForm::standard(1));
        assert_eq!(parse_points("[[0,0,0],[1,2,3]]").unwrap().len(), 2);
        assert!(parse_xi(r#"{"rows":2,"cols":1,"entries":[0.5,1]}"#).is_err());
    }

    #[test]
    fn metaplectic_files() {
        let ctx = parse_mp1_context(r#"{"n":1,"base":{"rows":2,"cols":1,"entries":[1,0]}}"#, 0.0).unwrap();
        let a = parse_mp1_element(r#"{"w":2,"g":{"rows":2,"cols":2,"entries":[1,1,0,1]}}"#, &ctx).unwrap();
        assert_eq!(a.w, WittReal(2));
        let back = mp1_element_to_value(&a).to_string();
        assert_eq!(parse_mp1_element(&back, &ctx).unwrap().g(), a.g());
        assert!(parse_mp1_element(r#"{"w":0,"g":{"rows":2,"cols":2,"entries":[1,1,1,1]}}"#, &ctx).is_err());
        assert!(parse_mp1_context(r#"{"base":{"rows":2,"cols":1,"entries":[1.5,0]}}"#, 0.0).is_err());
    }
}
