//! JSON input and output documents. Rationals travel as strings (`"-3/2"`).

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::linalg::{parse_rational, Rational, RationalMatrix};
use crate::pseudochar::{PTable, PseudocharData};
use crate::rep::Representation;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { m: usize },
    Product { factors: Vec<GroupSpec> },
    Cayley { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { m } => FiniteGroup::cyclic(*m),
            GroupSpec::Product { factors } => {
                let mut it = factors.iter();
                let first = it.next().ok_or_else(|| invalid("product of no factors"))?.build()?;
                it.try_fold(first, |acc, f| Ok(FiniteGroup::direct_product(&acc, &f.build()?)))
            }
            GroupSpec::Cayley { table } => FiniteGroup::from_cayley_table(table),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupSpec::Cyclic { m } => json!({"kind": "cyclic", "m": m}),
            GroupSpec::Product { factors } => {
                json!({"kind": "product", "factors": factors.iter().map(GroupSpec::to_json).collect::<Vec<_>>()})
            }
            GroupSpec::Cayley { table } => json!({"kind": "cayley", "table": table}),
        }
    }

    /// A spec reproducing `g` as a bare table.
    pub fn of(g: &FiniteGroup) -> Self {
        GroupSpec::Cayley {
            table: g.cayley_table(),
        }
    }
}

/// A parsed input document.
#[derive(Debug, Clone)]
pub enum Document {
    Group(GroupSpec, FiniteGroup),
    Representation(Representation),
    Pseudocharacter(PseudocharData),
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn rational_of(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(parse_err(format!("expected a rational string, got {v}"))),
    }
}

fn rationals_of(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected an array of rationals"))?
        .iter()
        .map(rational_of)
        .collect()
}

fn matrix_of(v: &Value) -> Result<RationalMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err("a matrix is an array of rows"))?
        .iter()
        .map(rationals_of)
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(rows)
}

fn usize_of(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("expected a non-negative integer, got {v}")))
}

fn group_of(v: &Value) -> Result<(GroupSpec, FiniteGroup)> {
    let spec: GroupSpec = serde_json::from_value(v.clone()).map_err(|e| parse_err(format!("group: {e}")))?;
    let g = spec.build()?;
    Ok((spec, g))
}

fn representation_of(v: &Value, max_order: usize) -> Result<Representation> {
    let gens = field(v, "generators")?
        .as_array()
        .ok_or_else(|| parse_err("\"generators\" must be an array"))?;
    let mats = gens
        .iter()
        .map(|g| matrix_of(field(g, "matrix")?))
        .collect::<Result<Vec<_>>>()?;
    match v.get("group") {
        None => Representation::from_matrix_generators(&mats, max_order),
        Some(gv) => {
            let (_, grp) = group_of(gv)?;
            let elems = gens
                .iter()
                .map(|g| {
                    let e = usize_of(field(g, "element")?)?;
                    if e >= grp.order() {
                        return Err(invalid(format!("element {e} outside a group of order {}", grp.order())));
                    }
                    Ok(GroupElement(e))
                })
                .collect::<Result<Vec<_>>>()?;
            Representation::from_generators(&grp, &elems, &mats)
        }
    }
}

fn pseudochar_of(v: &Value) -> Result<PseudocharData> {
    let (_, grp) = group_of(field(v, "group")?)?;
    let dim = usize_of(field(v, "dim")?)?;
    let t = rationals_of(field(v, "T")?)?;
    let l = match v.get("l") {
        None | Some(Value::Null) => None,
        Some(x) => Some(rationals_of(x)?),
    };
    let d = PseudocharData::new(grp, dim, t, l)?;
    match v.get("P") {
        None | Some(Value::Null) => Ok(d),
        Some(p) => {
            let arity = usize_of(field(p, "arity")?)?;
            let mut table = PTable::new(arity);
            for e in field(p, "entries")?
                .as_array()
                .ok_or_else(|| parse_err("\"entries\" must be an array"))?
            {
                let tuple = field(e, "tuple")?
                    .as_array()
                    .ok_or_else(|| parse_err("\"tuple\" must be an array"))?
                    .iter()
                    .map(usize_of)
                    .collect::<Result<Vec<_>>>()?;
                table.insert(tuple, rational_of(field(e, "value")?)?)?;
            }
            d.with_p(table)
        }
    }
}

/// Parses a document; without a `"kind"` field the kind is inferred from
/// the fields present.
pub fn parse_document(text: &str, max_order: usize) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    let kind = match v.get("kind").and_then(Value::as_str) {
        Some(k) => k.to_string(),
        None if v.get("generators").is_some() => "representation".into(),
        None if v.get("T").is_some() => "pseudocharacter".into(),
        None => return Err(parse_err("cannot tell the document kind")),
    };
    match kind.as_str() {
        "group" => {
            let (spec, g) = group_of(field(&v, "group")?)?;
            Ok(Document::Group(spec, g))
        }
        "representation" => Ok(Document::Representation(representation_of(&v, max_order)?)),
        "pseudocharacter" => Ok(Document::Pseudocharacter(pseudochar_of(&v)?)),
        other => Err(parse_err(format!("unknown document kind {other:?}"))),
    }
}

pub fn read_document(path: &Path, max_order: usize) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    parse_document(&text, max_order)
}

pub fn read_representation(path: &Path, max_order: usize) -> Result<Representation> {
    match read_document(path, max_order)? {
        Document::Representation(r) => Ok(r),
        _ => Err(parse_err(format!("{} is not a representation document", path.display()))),
    }
}

fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array(
        m.row_vecs()
            .iter()
            .map(|row| Value::Array(row.iter().map(rational_json).collect()))
            .collect(),
    )
}

/// A representation document listing the images of `gens`.
pub fn representation_json(spec: &GroupSpec, rep: &Representation, gens: &[GroupElement]) -> Value {
    let generators: Vec<Value> = gens
        .iter()
        .map(|g| json!({"element": g.0, "matrix": matrix_json(rep.image(*g))}))
        .collect();
    json!({"kind": "representation", "group": spec.to_json(), "dim": rep.dim(), "generators": generators})
}

pub fn pseudochar_json(spec: &GroupSpec, d: &PseudocharData) -> Value {
    let mut v = json!({
        "kind": "pseudocharacter",
        "group": spec.to_json(),
        "dim": d.dim(),
        "T": d.t().iter().map(rational_json).collect::<Vec<_>>(),
    });
    if let Some(l) = d.l() {
        v["l"] = Value::Array(l.iter().map(rational_json).collect());
    }
    if let Some(p) = d.p() {
        let entries: Vec<Value> = p
            .entries()
            .map(|(t, x)| json!({"tuple": t, "value": rational_json(x)}))
            .collect();
        v["P"] = json!({"arity": p.arity(), "entries": entries});
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn group_specs() {
        let v = r#"{"kind":"group","group":{"kind":"product","factors":[{"kind":"cyclic","m":4},{"kind":"cyclic","m":4}]}}"#;
        let Document::Group(spec, g) = parse_document(v, 10).unwrap() else {
            panic!("not a group")
        };
        assert_eq!(g.order(), 16);
        assert_eq!(g.label(4), "(1,0)");
        let back: GroupSpec = serde_json::from_value(spec.to_json()).unwrap();
        assert_eq!(back, spec);
        assert!(parse_document(r#"{"kind":"group","group":{"kind":"cayley","table":[[0,1],[1,1]]}}"#, 10).is_err());
    }

    #[test]
    fn representation_documents() {
        let closure = r#"{"generators":[{"matrix":[["0","1"],["-1","0"]]}]}"#;
        let Document::Representation(r) = parse_document(closure, 10).unwrap() else {
            panic!()
        };
        assert_eq!(r.group().order(), 4);
        let spec = GroupSpec::Cyclic { m: 4 };
        let grp = spec.build().unwrap();
        let r = Representation::from_generators(&grp, &[GroupElement(1)], &[r.image(GroupElement(1)).clone()]).unwrap();
        let text = representation_json(&spec, &r, &[GroupElement(1)]).to_string();
        let Document::Representation(back) = parse_document(&text, 10).unwrap() else {
            panic!()
        };
        assert_eq!(back, r);
    }

    #[test]
    fn pseudocharacter_documents_and_errors() {
        let v = r#"{"kind":"pseudocharacter","group":{"kind":"cyclic","m":2},"dim":1,"T":["1","-1"],"l":["1","1"],
                    "P":{"arity":1,"entries":[{"tuple":[1],"value":"3/2"}]}}"#;
        let Document::Pseudocharacter(d) = parse_document(v, 10).unwrap() else {
            panic!()
        };
        assert_eq!(d.t(), &[int(1), int(-1)]);
        assert_eq!(d.p().unwrap().get(&[1]), crate::linalg::rational(3, 2));
        let spec = GroupSpec::Cyclic { m: 2 };
        let Document::Pseudocharacter(back) = parse_document(&pseudochar_json(&spec, &d).to_string(), 10).unwrap() else {
            panic!()
        };
        assert_eq!(back, d);
        let bad = r#"{"group":{"kind":"cyclic","m":2},"dim":1,"T":["1","1/0"]}"#;
        assert!(matches!(parse_document(bad, 10), Err(Error::Parse(_))));
        assert!(parse_document("{", 10).is_err());
        assert!(parse_document(r#"{"kind":"nope"}"#, 10).is_err());
    }
}
