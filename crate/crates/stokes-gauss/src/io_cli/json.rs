//! Documents {kind, version, payload}. Keys come out sorted since serde_json's map is ordered.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact_math::{format_rational, parse_rational, CirclePoint, Field, GaussRational, Matrix, Rational, Subspace};
use crate::stokes_core::{ExponentLayout, Form, StokesFiltrations, StokesMatrices};

pub const VERSION: &str = "1";

pub fn tool_name() -> String {
    format!("stokes-gauss {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub field: Option<Field>,
    pub payload: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Matrices(StokesMatrices),
    Filtrations(StokesFiltrations),
    Report(Report),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Matrices(_) => "stokes-matrices",
            Document::Filtrations(_) => "stokes-filtrations",
            Document::Report(_) => "report",
        }
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn gauss_to_json(x: &GaussRational) -> Value {
    json!({"re": format_rational(&x.re), "im": format_rational(&x.im)})
}

fn scalar_to_json(x: &GaussRational, field: Field) -> Value {
    match field {
        Field::Q => rational_to_json(&x.re),
        Field::QI => gauss_to_json(x),
    }
}

pub fn point_to_json(p: &CirclePoint) -> Value {
    json!({"doubled": gauss_to_json(&p.doubled), "branch": p.branch})
}

pub fn layout_to_json(l: &ExponentLayout) -> Value {
    json!({
        "exponents": l.exponents.iter().map(gauss_to_json).collect::<Vec<_>>(),
        "ranks": l.ranks,
        "theta0": point_to_json(&l.theta0),
        "pure": l.pure,
    })
}

pub fn vector_to_json(v: &[GaussRational], field: Field) -> Value {
    Value::Array(v.iter().map(|x| scalar_to_json(x, field)).collect())
}

pub fn matrix_to_json(m: &Matrix, field: Field) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row_slice(i), field)).collect())
}

pub fn subspace_to_json(s: &Subspace, field: Field) -> Value {
    Value::Array(s.basis().iter().map(|v| vector_to_json(v, field)).collect())
}

fn envelope(kind: &str, payload: Value) -> Value {
    json!({"kind": kind, "version": VERSION, "payload": payload})
}

pub fn matrices_payload(m: &StokesMatrices) -> Value {
    let f = m.field;
    let mut p = Map::new();
    p.insert("field".into(), json!(f.name()));
    p.insert("form".into(), json!(m.form.name()));
    p.insert("layout".into(), layout_to_json(&m.layout));
    for (nu, key) in ["S03", "S10", "S21", "S32"].iter().enumerate() {
        p.insert((*key).into(), matrix_to_json(&m.s[nu], f));
    }
    if m.form == Form::Variant {
        p.insert("T".into(), Value::Array(m.t.iter().map(|t| matrix_to_json(t, f)).collect()));
    }
    Value::Object(p)
}

pub fn filtrations_payload(d: &StokesFiltrations) -> Value {
    let f = d.field;
    json!({
        "field": f.name(),
        "layout": layout_to_json(&d.layout),
        "dim": d.dim,
        "filtrations": d.steps.iter().map(|row| row.iter().map(|s| subspace_to_json(s, f)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::Matrices(m) => envelope("stokes-matrices", matrices_payload(m)),
        Document::Filtrations(d) => envelope("stokes-filtrations", filtrations_payload(d)),
        Document::Report(r) => {
            let mut v = envelope("report", r.payload.clone());
            v["tool"] = json!(tool_name());
            if let Some(f) = r.field {
                v["field"] = json!(f.name());
            }
            v
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(doc)).expect("JSON values serialize");
    s.push('\n');
    s
}

// ---- parsing ----

fn err(path: &str, msg: impl Into<String>) -> Error {
    Error::parse(if path.is_empty() { "/" } else { path }, msg)
}

fn object<'a>(v: &'a Value, path: &str, required: &[&str], optional: &[&str]) -> Result<&'a Map<String, Value>> {
    let m = v.as_object().ok_or_else(|| err(path, "expected an object"))?;
    for k in m.keys() {
        if !required.contains(&k.as_str()) && !optional.contains(&k.as_str()) {
            return Err(err(&format!("{}/{}", path, k), "unknown field"));
        }
    }
    for k in required {
        if !m.contains_key(*k) {
            return Err(err(&format!("{}/{}", path, k), "missing field"));
        }
    }
    Ok(m)
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| err(path, "expected a non-negative integer"))
}

pub fn parse_rational_value(v: &Value, path: &str) -> Result<Rational> {
    let s = v.as_str().ok_or_else(|| err(path, "expected a rational string \"p/q\""))?;
    parse_rational(s).ok_or_else(|| err(path, format!("invalid rational {:?}", s)))
}

pub fn parse_gauss_value(v: &Value, path: &str) -> Result<GaussRational> {
    let m = object(v, path, &["re", "im"], &[])?;
    Ok(GaussRational::new(parse_rational_value(&m["re"], &format!("{}/re", path))?, parse_rational_value(&m["im"], &format!("{}/im", path))?))
}

// field scalars: "p/q" strings, or {re, im} objects
fn parse_scalar(v: &Value, path: &str) -> Result<GaussRational> {
    if v.is_string() {
        Ok(GaussRational::real(parse_rational_value(v, path)?))
    } else {
        parse_gauss_value(v, path)
    }
}

fn parse_point(v: &Value, path: &str) -> Result<CirclePoint> {
    let m = object(v, path, &["doubled", "branch"], &[])?;
    let doubled = parse_gauss_value(&m["doubled"], &format!("{}/doubled", path))?;
    if doubled.is_zero() {
        return Err(err(&format!("{}/doubled", path), "doubled angle must be nonzero"));
    }
    let branch = usize_of(&m["branch"], &format!("{}/branch", path))?;
    if branch > 1 {
        return Err(err(&format!("{}/branch", path), "branch must be 0 or 1"));
    }
    Ok(CirclePoint::new(doubled, branch as u8))
}

fn parse_layout(v: &Value, path: &str) -> Result<ExponentLayout> {
    let m = object(v, path, &["exponents", "ranks", "theta0", "pure"], &[])?;
    let ep = format!("{}/exponents", path);
    let exponents = array(&m["exponents"], &ep)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_gauss_value(x, &format!("{}/{}", ep, i)))
        .collect::<Result<Vec<_>>>()?;
    let rp = format!("{}/ranks", path);
    let ranks = array(&m["ranks"], &rp)?.iter().enumerate().map(|(i, x)| usize_of(x, &format!("{}/{}", rp, i))).collect::<Result<Vec<_>>>()?;
    if ranks.len() != exponents.len() {
        return Err(err(&rp, "one rank per exponent"));
    }
    let theta0 = parse_point(&m["theta0"], &format!("{}/theta0", path))?;
    let pure = m["pure"].as_bool().ok_or_else(|| err(&format!("{}/pure", path), "expected a boolean"))?;
    // ordering and genericity are checked by validate
    Ok(ExponentLayout { exponents, ranks, theta0, pure })
}

fn parse_vector(v: &Value, path: &str) -> Result<Vec<GaussRational>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| parse_scalar(x, &format!("{}/{}", path, i))).collect()
}

fn parse_matrix(v: &Value, path: &str) -> Result<Matrix> {
    let rows = array(v, path)?.iter().enumerate().map(|(i, r)| parse_vector(r, &format!("{}/{}", path, i))).collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows).map_err(|_| err(path, "rows have different lengths"))
}

fn parse_field(v: &Value, path: &str) -> Result<Field> {
    v.as_str().and_then(Field::parse).ok_or_else(|| err(path, "field must be \"Q\" or \"Q(i)\""))
}

fn parse_matrices(p: &Value) -> Result<StokesMatrices> {
    let path = "/payload";
    let form = p.get("form").and_then(|f| f.as_str());
    let form = match form {
        Some("general") => Form::General,
        Some("variant") => Form::Variant,
        Some(other) => return Err(err("/payload/form", format!("unknown form {:?}", other))),
        None => return Err(err("/payload/form", "missing field")),
    };
    let required: &[&str] = match form {
        Form::General => &["field", "form", "layout", "S03", "S10", "S21", "S32"],
        Form::Variant => &["field", "form", "layout", "S03", "S10", "S21", "S32", "T"],
    };
    let m = object(p, path, required, &[])?;
    let field = parse_field(&m["field"], "/payload/field")?;
    let layout = parse_layout(&m["layout"], "/payload/layout")?;
    let mut s = Vec::with_capacity(4);
    for key in ["S03", "S10", "S21", "S32"] {
        s.push(parse_matrix(&m[key], &format!("/payload/{}", key))?);
    }
    let s: [Matrix; 4] = s.try_into().expect("four matrices");
    let t = match form {
        Form::Variant => array(&m["T"], "/payload/T")?
            .iter()
            .enumerate()
            .map(|(i, x)| parse_matrix(x, &format!("/payload/T/{}", i)))
            .collect::<Result<Vec<_>>>()?,
        Form::General => Vec::new(),
    };
    let mut out = StokesMatrices { layout, s, t, form, field };
    if form == Form::General && out.check_shapes().is_ok() {
        out.t = out.formal_monodromies();
    }
    Ok(out)
}

fn parse_filtrations(p: &Value) -> Result<StokesFiltrations> {
    let m = object(p, "/payload", &["field", "layout", "dim", "filtrations"], &[])?;
    let field = parse_field(&m["field"], "/payload/field")?;
    let layout = parse_layout(&m["layout"], "/payload/layout")?;
    let dim = usize_of(&m["dim"], "/payload/dim")?;
    let fp = "/payload/filtrations";
    let levels = array(&m["filtrations"], fp)?;
    if levels.len() != 4 {
        return Err(err(fp, "expected four filtrations"));
    }
    let mut steps: Vec<Vec<Subspace>> = Vec::with_capacity(4);
    for (nu, level) in levels.iter().enumerate() {
        let lp = format!("{}/{}", fp, nu);
        let mut row = Vec::new();
        for (i, basis) in array(level, &lp)?.iter().enumerate() {
            let bp = format!("{}/{}", lp, i);
            let vecs = array(basis, &bp)?.iter().enumerate().map(|(k, v)| parse_vector(v, &format!("{}/{}", bp, k))).collect::<Result<Vec<_>>>()?;
            if let Some(k) = vecs.iter().position(|v| v.len() != dim) {
                return Err(err(&format!("{}/{}", bp, k), format!("vector length differs from dim = {}", dim)));
            }
            row.push(Subspace::from_vectors(dim, vecs));
        }
        steps.push(row);
    }
    let steps: [Vec<Subspace>; 4] = steps.try_into().expect("four levels");
    Ok(StokesFiltrations { layout, dim, steps, field })
}

pub fn from_value(v: &Value) -> Result<Document> {
    let m = object(v, "", &["kind", "version", "payload"], &["tool", "field"])?;
    let version = m["version"].as_str().ok_or_else(|| err("/version", "expected a string"))?;
    if version != VERSION {
        return Err(err("/version", format!("unsupported version {:?}", version)));
    }
    let kind = m["kind"].as_str().ok_or_else(|| err("/kind", "expected a string"))?;
    let payload = &m["payload"];
    match kind {
        "stokes-matrices" | "stokes-filtrations" if m.contains_key("tool") || m.contains_key("field") => {
            Err(err("/", "only reports carry tool and field at the top level"))
        }
        "stokes-matrices" => Ok(Document::Matrices(parse_matrices(payload)?)),
        "stokes-filtrations" => Ok(Document::Filtrations(parse_filtrations(payload)?)),
        "report" => {
            let field = match m.get("field") {
                Some(f) => Some(parse_field(f, "/field")?),
                None => None,
            };
            Ok(Document::Report(Report { field, payload: payload.clone() }))
        }
        other => Err(err("/kind", format!("unknown kind {:?}", other))),
    }
}

pub fn parse(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| err("/", format!("invalid JSON: {}", e)))?;
    from_value(&v)
}

/// "p/q", "a+bi", "a-bi", "bi", "i" or "-i", with rational a and b.
pub fn parse_gauss_str(s: &str) -> Option<GaussRational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return parse_rational(&s).map(GaussRational::real);
    };
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(k, _)| k).last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x.strip_prefix('+').unwrap_or(x),
    };
    Some(GaussRational::new(parse_rational(re)?, parse_rational(im)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::rat;
    use crate::stokes_core::samples::e1;
    use crate::stokes_core::to_filtrations;

    #[test]
    fn round_trips() {
        for doc in [Document::Matrices(e1()), Document::Matrices(e1().normalize().unwrap()), Document::Filtrations(to_filtrations(&e1()).unwrap())] {
            let text = serialize(&doc);
            let back = parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn keys_are_sorted() {
        let text = serialize(&Document::Matrices(e1()));
        let a = text.find("\"S03\"").unwrap();
        let b = text.find("\"field\"").unwrap();
        let c = text.find("\"layout\"").unwrap();
        assert!(a < b && b < c);
    }

    #[test]
    fn parse_errors_carry_paths() {
        let mut v = to_value(&Document::Matrices(e1()));
        v["payload"]["S10"][0][0] = json!("1/0");
        match from_value(&v) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "/payload/S10/0/0"),
            other => panic!("{:?}", other),
        }
        let mut v = to_value(&Document::Matrices(e1()));
        v["payload"].as_object_mut().unwrap().remove("S03");
        match from_value(&v) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "/payload/S03"),
            other => panic!("{:?}", other),
        }
        let mut v = to_value(&Document::Matrices(e1()));
        v["payload"]["extra"] = json!(1);
        assert!(matches!(from_value(&v), Err(Error::Parse { .. })));
    }

    #[test]
    fn gauss_strings() {
        assert_eq!(parse_gauss_str("3/1"), Some(GaussRational::from_ints(3, 0)));
        assert_eq!(parse_gauss_str("3+i"), Some(GaussRational::from_ints(3, 1)));
        assert_eq!(parse_gauss_str("-1/2-3/4i"), Some(GaussRational::new(rat(-1, 2), rat(-3, 4))));
        assert_eq!(parse_gauss_str("-i"), Some(GaussRational::from_ints(0, -1)));
        assert_eq!(parse_gauss_str("2i"), Some(GaussRational::from_ints(0, 2)));
        assert_eq!(parse_gauss_str("x"), None);
    }
}
