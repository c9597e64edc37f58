//! JSON documents for fields, point spaces, codes and maps.
//!
//! ```json
//! {"field": {"p": 2, "m": 2, "modulus": [1, 1, 1]},
//!  "space": {"labels": ["a", "b", "c"], "measures": ["1", "1", "1/2"]},
//!  "rows": [[0, 1, 1], [1, 0, 1]],
//!  "normalize": false}
//! ```
//!
//! A map document is `{"domain": D, "codomain": D, "matrix": [[...]]}` where
//! each `D` is an inline code document or a path, relative to the map file.
//! Errors name the offending field with a dotted path such as
//! `domain.space.measures[2]`.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::funspace::FunctionSpace;
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::linmap::LinMap;
use crate::space::{parse_rational, PointSpace, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("{field}: {message}")]
    Parse { field: String, message: String },
    #[error("{field}: {source}")]
    Schema { field: String, source: Error },
}

impl InputError {
    pub fn field(&self) -> &str {
        match self {
            InputError::Parse { field, .. } | InputError::Schema { field, .. } => field,
        }
    }

    fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError::Parse { field: field.into(), message: message.into() }
    }

    fn schema(field: impl Into<String>, source: Error) -> Self {
        InputError::Schema { field: field.into(), source }
    }
}

type Result<T> = std::result::Result<T, InputError>;

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| InputError::parse(path, "expected an object"))
}

fn required<'a>(obj: &'a Map<String, Value>, prefix: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| InputError::parse(join(prefix, key), "missing field"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| InputError::parse(path, "expected an array"))
}

fn unsigned(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| InputError::parse(path, "expected a non-negative integer"))
}

fn small(v: &Value, path: &str) -> Result<u32> {
    u32::try_from(unsigned(v, path)?).map_err(|_| InputError::parse(path, "integer out of range"))
}

/// Reads and parses a JSON file; `field` names it in errors.
pub fn read_json(path: &Path, field: &str) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError::parse(field, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError::parse(field, format!("invalid JSON in {}: {e}", path.display())))
}

/// `{"p": 2, "m": 2, "modulus": [1, 1, 1] | "auto"}`; `m` defaults to 1.
pub fn parse_field(v: &Value, path: &str) -> Result<Field> {
    let obj = object(v, path)?;
    let p = small(required(obj, path, "p")?, &join(path, "p"))?;
    let m = match obj.get("m") {
        Some(m) => small(m, &join(path, "m"))?,
        None => 1,
    };
    let modulus_path = join(path, "modulus");
    let modulus = match obj.get("modulus") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if s == "auto" => None,
        Some(Value::Array(coeffs)) => Some(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| small(c, &format!("{modulus_path}[{i}]")))
                .collect::<Result<Vec<u32>>>()?,
        ),
        Some(_) => return Err(InputError::parse(modulus_path, "expected a coefficient array or \"auto\"")),
    };
    Field::new(p, m, modulus.as_deref()).map_err(|e| {
        let field = match e {
            Error::NonPrime(_) => join(path, "p"),
            Error::ZeroDegree => join(path, "m"),
            Error::ReduciblePolynomial { .. } => modulus_path,
            _ => path.to_string(),
        };
        InputError::schema(field, e)
    })
}

fn parse_measure(v: &Value, path: &str) -> Result<Rational> {
    let parsed = match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i as i128)),
        _ => None,
    };
    parsed.ok_or_else(|| InputError::parse(path, "expected an integer or a \"p/q\" string"))
}

/// `{"labels": [...], "measures": [...]}`; measures default to all ones.
pub fn parse_space(v: &Value, path: &str) -> Result<PointSpace> {
    let obj = object(v, path)?;
    let labels_path = join(path, "labels");
    let labels = array(required(obj, path, "labels")?, &labels_path)?
        .iter()
        .enumerate()
        .map(|(i, l)| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| InputError::parse(format!("{labels_path}[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<String>>>()?;
    let measures_path = join(path, "measures");
    let measures = match obj.get("measures") {
        Some(m) => array(m, &measures_path)?
            .iter()
            .enumerate()
            .map(|(i, m)| parse_measure(m, &format!("{measures_path}[{i}]")))
            .collect::<Result<Vec<Rational>>>()?,
        None => vec![Rational::from_integer(1); labels.len()],
    };
    PointSpace::new(labels.clone(), measures).map_err(|e| {
        let field = match &e {
            Error::DuplicateLabel(l) => {
                format!("{labels_path}[{}]", labels.iter().rposition(|x| x == l).unwrap_or_default())
            }
            Error::NonPositiveMeasure { label } => {
                format!("{measures_path}[{}]", labels.iter().position(|x| x == label).unwrap_or_default())
            }
            Error::LengthMismatch { .. } | Error::MeasureOverflow => measures_path.clone(),
            _ => labels_path.clone(),
        };
        InputError::schema(field, e)
    })
}

/// A vector of field elements given by canonical index.
pub fn parse_vector(field: &Field, v: &Value, path: &str) -> Result<Vec<Elem>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let item = format!("{path}[{i}]");
            let index = unsigned(c, &item)?;
            field.elem(index).map_err(|e| InputError::schema(item, e))
        })
        .collect()
}

pub fn parse_matrix(field: &Field, v: &Value, path: &str) -> Result<Matrix> {
    array(v, path)?.iter().enumerate().map(|(i, row)| parse_vector(field, row, &format!("{path}[{i}]"))).collect()
}

/// A code document.
pub fn parse_code(v: &Value, path: &str) -> Result<FunctionSpace> {
    let obj = object(v, path)?;
    let field = parse_field(required(obj, path, "field")?, &join(path, "field"))?;
    let space = parse_space(required(obj, path, "space")?, &join(path, "space"))?;
    let rows_path = join(path, "rows");
    let rows = parse_matrix(&field, required(obj, path, "rows")?, &rows_path)?;
    let normalize = match obj.get("normalize") {
        Some(b) => b.as_bool().ok_or_else(|| InputError::parse(join(path, "normalize"), "expected a boolean"))?,
        None => false,
    };
    FunctionSpace::new(field, space, rows.clone(), normalize).map_err(|e| {
        let field = match &e {
            Error::WidthMismatch { row, .. } => format!("{rows_path}[{row}]"),
            _ => rows_path.clone(),
        };
        InputError::schema(field, e)
    })
}

/// Loads a code from a file.
pub fn load_code(path: &Path) -> Result<FunctionSpace> {
    parse_code(&read_json(path, &path.display().to_string())?, "")
}

fn code_or_path(v: &Value, base: Option<&Path>, path: &str) -> Result<FunctionSpace> {
    match v {
        Value::String(file) => {
            let resolved: PathBuf = base.map(|b| b.join(file)).unwrap_or_else(|| PathBuf::from(file));
            parse_code(&read_json(&resolved, path)?, path)
        }
        _ => parse_code(v, path),
    }
}

/// A map document; relative code paths resolve against `base`.
pub fn parse_map(v: &Value, base: Option<&Path>) -> Result<LinMap> {
    let obj = object(v, "")?;
    let domain = code_or_path(required(obj, "", "domain")?, base, "domain")?;
    let codomain = code_or_path(required(obj, "", "codomain")?, base, "codomain")?;
    let matrix = parse_matrix(domain.field(), required(obj, "", "matrix")?, "matrix")?;
    LinMap::new(domain, codomain, matrix).map_err(|e| {
        let field = match &e {
            Error::DifferentFields => "codomain.field",
            _ => "matrix",
        };
        InputError::schema(field, e)
    })
}

pub fn load_map(path: &Path) -> Result<LinMap> {
    parse_map(&read_json(path, &path.display().to_string())?, path.parent())
}

pub fn field_json(field: &Field) -> Value {
    json!({"p": field.characteristic(), "m": field.degree(), "modulus": field.modulus()})
}

pub fn space_json(space: &PointSpace) -> Value {
    json!({
        "labels": space.labels(),
        "measures": space.measures().iter().map(Rational::to_string).collect::<Vec<_>>(),
    })
}

pub fn vector_json(v: &[Elem]) -> Value {
    Value::from(v.iter().map(|c| c.0).collect::<Vec<_>>())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::from(m.iter().map(|r| vector_json(r)).collect::<Vec<_>>())
}

/// A code document that parses back to an equal space.
pub fn code_json(a: &FunctionSpace) -> Value {
    json!({
        "field": field_json(a.field()),
        "space": space_json(a.space()),
        "rows": matrix_json(a.basis()),
    })
}

pub fn map_json(h: &LinMap) -> Value {
    json!({
        "domain": code_json(h.domain()),
        "codomain": code_json(h.codomain()),
        "matrix": matrix_json(h.matrix()),
    })
}
