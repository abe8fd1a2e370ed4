//! JSON encodings. Exact values travel as strings ("a/b" or residues).

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, FieldDescriptor, FieldElement};
use crate::maslov::LagrangianPath;
use crate::sturm::SturmWord;
use crate::symplectic::{Lagrangian, SymplecticMap, SymplecticSpace};
use crate::witt::{WittClass, WittModI2};

pub fn field(f: FieldDescriptor) -> Value {
    match f.modulus() {
        Some(p) => json!({"kind": "prime", "p": p}),
        None => json!({"kind": "rationals"}),
    }
}

pub fn matrix(m: &ExactMatrix) -> Value {
    json!(m.row_strings())
}

/// A Lagrangian as its g canonical basis columns.
pub fn lagrangian(l: &Lagrangian) -> Value {
    let b = l.basis();
    Value::Array((0..b.cols()).map(|c| json!(b.column(c).transpose().row_strings()[0])).collect())
}

pub fn symplectic(m: &SymplecticMap) -> Value {
    matrix(m.matrix())
}

pub fn path(p: &LagrangianPath) -> Value {
    Value::Array(p.nodes().iter().map(lagrangian).collect())
}

pub fn word(w: &SturmWord) -> Value {
    json!({"start_parity": w.start_parity(), "letters": w.letters().iter().map(matrix).collect::<Vec<_>>()})
}

pub fn witt(w: &WittClass) -> Value {
    let mut m = Map::new();
    m.insert("rank_mod_2".into(), json!(w.rank_parity()));
    m.insert("disc".into(), json!(w.disc().to_string()));
    if let Some(s) = w.signature() {
        m.insert("signature".into(), json!(s));
    }
    if !w.residues().is_empty() {
        let r: Map<String, Value> = w
            .residues()
            .iter()
            .map(|(p, rc)| (p.to_string(), json!({"rank_mod_2": rc.rank_parity, "disc": rc.disc_representative(p).to_string()})))
            .collect();
        m.insert("residues".into(), Value::Object(r));
    }
    Value::Object(m)
}

pub fn witt_mod_i2(w: &WittModI2) -> Value {
    json!({"rank_mod_2": w.rank_parity(), "disc": w.disc().to_string()})
}

// ---- decoding ----

pub fn parse_field(v: &Value) -> Result<FieldDescriptor> {
    match v.get("kind").and_then(Value::as_str) {
        Some("rationals") => Ok(FieldDescriptor::Rationals),
        Some("prime") => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| Error::Parse("prime field needs an integer \"p\"".into()))?;
            if p == 2 {
                return Err(Error::Parse("characteristic 2 unsupported".into()));
            }
            FieldDescriptor::prime(p)
        }
        Some(other) => Err(Error::Parse(format!("unknown field kind \"{other}\""))),
        None => Err(Error::Parse("field needs a \"kind\"".into())),
    }
}

pub fn parse_element(f: FieldDescriptor, v: &Value) -> Result<FieldElement> {
    match v {
        Value::String(s) => FieldElement::parse(f, s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(FieldElement::from_i64(f, i)),
            None => Err(Error::Parse(format!("entry {n} is not an integer; use an \"a/b\" string"))),
        },
        other => Err(Error::Parse(format!("entry {other} is neither a number nor a string"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

pub fn parse_matrix(f: FieldDescriptor, v: &Value) -> Result<ExactMatrix> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(|e| parse_element(f, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(f, rows)
}

/// "L", "L*", or a list of g columns of length 2g.
pub fn parse_lagrangian(space: SymplecticSpace, v: &Value) -> Result<Lagrangian> {
    match v.as_str() {
        Some("L") => return Ok(Lagrangian::standard(space)),
        Some("L*") => return Ok(Lagrangian::dual(space)),
        _ => {}
    }
    let cols = parse_matrix(space.field(), v)?;
    Lagrangian::new(space, &cols.transpose())
}

pub fn parse_word(space: SymplecticSpace, v: &Value) -> Result<SturmWord> {
    let start = v.get("start_parity").and_then(Value::as_u64).ok_or_else(|| Error::Parse("word needs \"start_parity\"".into()))?;
    let letters = array(v.get("letters").unwrap_or(&Value::Null), "letters")?
        .iter()
        .map(|l| parse_matrix(space.field(), l))
        .collect::<Result<Vec<_>>>()?;
    SturmWord::new(space, start as u8, letters)
}

/// A 2g×2g matrix, or a generator: {"upper": q}, {"lower": q}, {"h": x},
/// {"m": q}, {"weyl": y}, {"product": [..]}.
pub fn parse_symplectic(space: SymplecticSpace, v: &Value) -> Result<SymplecticMap> {
    use crate::symplectic::{generator_h, generator_lower, generator_m, generator_upper, generator_weyl};
    if v.is_array() {
        return SymplecticMap::new(space, parse_matrix(space.field(), v)?);
    }
    let obj = v.as_object().ok_or_else(|| Error::Parse("symplectic map must be a matrix or a generator object".into()))?;
    if obj.len() != 1 {
        return Err(Error::Parse("generator object must have exactly one key".into()));
    }
    let (k, arg) = obj.iter().next().unwrap();
    let m = || parse_matrix(space.field(), arg);
    match k.as_str() {
        "upper" => generator_upper(space, &m()?),
        "lower" => generator_lower(space, &m()?),
        "h" => generator_h(space, &m()?),
        "m" => generator_m(space, &m()?),
        "weyl" => generator_weyl(space, &m()?),
        "product" => {
            let mut acc = SymplecticMap::identity(space);
            for f in array(arg, "product")? {
                acc = acc.compose(&parse_symplectic(space, f)?)?;
            }
            Ok(acc)
        }
        other => Err(Error::Parse(format!("unknown generator \"{other}\""))),
    }
}
