//! JSON serialization of DGAs (`legdga-dga/1`) and Laurent polynomials
//! (`legdga-poly/1`), with bit-exact round-trips of canonical output.

use serde_json::{json, Map, Value};

use super::dga::{Dga, Generator};
use super::element::{Element, MonomialWord};
use super::field::Field;
use super::laurent::{Expo, LaurentPoly};
use crate::{Error, Result};

fn expo_to_value(e: &Expo) -> Value {
    Value::Array(e.iter().map(|&k| json!(k)).collect())
}

fn expo_from_value(v: &Value, arity: usize) -> Result<Expo> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Schema("exponent vector must be an array".into()))?;
    if arr.len() != arity {
        return Err(Error::Schema("exponent vector has wrong arity".into()));
    }
    arr.iter()
        .map(|x| {
            x.as_i64()
                .ok_or_else(|| Error::Schema("exponent must be an integer".into()))
        })
        .collect()
}

fn element_to_value(e: &Element, dga: &Dga) -> Value {
    let mut terms = Vec::new();
    for (w, c) in &e.terms {
        let mut word = Vec::new();
        for (i, m) in w.monos.iter().enumerate() {
            word.push(expo_to_value(m));
            if i < w.gens.len() {
                word.push(Value::String(dga.generators[w.gens[i]].label.clone()));
            }
        }
        let mut term = Map::new();
        term.insert("scalar".into(), json!(dga.field.render_scalar(c)));
        term.insert("word".into(), Value::Array(word));
        terms.push(Value::Object(term));
    }
    Value::Array(terms)
}

fn element_from_value(v: &Value, dga: &Dga) -> Result<Element> {
    let arity = dga.arity();
    let terms = v
        .as_array()
        .ok_or_else(|| Error::Schema("differential entry must be an array".into()))?;
    let mut out = Element::zero(arity);
    for t in terms {
        let obj = t
            .as_object()
            .ok_or_else(|| Error::Schema("term must be an object".into()))?;
        let scalar = obj
            .get("scalar")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Schema("term missing scalar".into()))?;
        let c = dga.field.parse_scalar(scalar)?;
        let word = obj
            .get("word")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("term missing word".into()))?;
        if word.len() % 2 == 0 {
            return Err(Error::Schema("word must alternate monomials and labels".into()));
        }
        let mut gens = Vec::new();
        let mut monos = Vec::new();
        for (i, part) in word.iter().enumerate() {
            if i % 2 == 0 {
                monos.push(expo_from_value(part, arity)?);
            } else {
                let label = part
                    .as_str()
                    .ok_or_else(|| Error::Schema("generator label must be a string".into()))?;
                let g = dga
                    .generator_by_label(label)
                    .ok_or_else(|| Error::Schema(format!("unknown generator {label:?}")))?;
                gens.push(g);
            }
        }
        out.insert_term(MonomialWord { gens, monos }, c, &dga.field);
    }
    Ok(out)
}

pub fn dga_to_json(dga: &Dga) -> Value {
    let mut root = Map::new();
    root.insert("schema".into(), json!("legdga-dga/1"));
    root.insert("name".into(), json!(dga.name));
    root.insert("field".into(), json!(dga.field.tag()));
    root.insert("variables".into(), json!(dga.vars));
    root.insert("variable_degrees".into(), json!(dga.var_degrees));
    root.insert(
        "generators".into(),
        Value::Array(
            dga.generators
                .iter()
                .map(|g| json!({"label": g.label, "degree": g.degree}))
                .collect(),
        ),
    );
    root.insert(
        "differential".into(),
        Value::Array(
            dga.differential
                .iter()
                .map(|e| element_to_value(e, dga))
                .collect(),
        ),
    );
    Value::Object(root)
}

pub fn dga_from_json(v: &Value) -> Result<Dga> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Schema("DGA document must be an object".into()))?;
    let schema = obj.get("schema").and_then(Value::as_str).unwrap_or("");
    if schema != "legdga-dga/1" {
        return Err(Error::Schema(format!("unsupported DGA schema {schema:?}")));
    }
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("dga")
        .to_string();
    let field = Field::parse(
        obj.get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Schema("missing field tag".into()))?,
    )?;
    let vars: Vec<String> = obj
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("missing variables".into()))?
        .iter()
        .map(|x| x.as_str().map(String::from))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Schema("variables must be strings".into()))?;
    let var_degrees: Vec<i64> = match obj.get("variable_degrees") {
        Some(v) => v
            .as_array()
            .ok_or_else(|| Error::Schema("variable_degrees must be an array".into()))?
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| Error::Schema("bad degree".into())))
            .collect::<Result<_>>()?,
        None => vec![0; vars.len()],
    };
    let generators: Vec<Generator> = obj
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("missing generators".into()))?
        .iter()
        .map(|g| {
            let o = g
                .as_object()
                .ok_or_else(|| Error::Schema("generator must be an object".into()))?;
            Ok(Generator {
                label: o
                    .get("label")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Schema("generator missing label".into()))?
                    .to_string(),
                degree: o
                    .get("degree")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| Error::Schema("generator missing degree".into()))?,
            })
        })
        .collect::<Result<_>>()?;
    let mut dga = Dga {
        name,
        field,
        vars,
        var_degrees,
        generators,
        differential: Vec::new(),
    };
    let diff = obj
        .get("differential")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("missing differential".into()))?;
    if diff.len() != dga.generators.len() {
        return Err(Error::Schema(
            "differential length disagrees with generator table".into(),
        ));
    }
    let mut differential = Vec::new();
    for entry in diff {
        differential.push(element_from_value(entry, &dga)?);
    }
    dga.differential = differential;
    Ok(dga)
}

pub fn poly_to_json(p: &LaurentPoly, vars: &[String], field: &Field) -> Value {
    let terms: Vec<Value> = p
        .terms
        .iter()
        .map(|(e, c)| {
            json!({
                "coeff": field.render_scalar(c),
                "exponents": e,
            })
        })
        .collect();
    json!({
        "schema": "legdga-poly/1",
        "variables": vars,
        "field": field.tag(),
        "terms": terms,
    })
}

pub fn poly_from_json(v: &Value) -> Result<(LaurentPoly, Vec<String>, Field)> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Schema("polynomial document must be an object".into()))?;
    let schema = obj.get("schema").and_then(Value::as_str).unwrap_or("");
    if schema != "legdga-poly/1" {
        return Err(Error::Schema(format!("unsupported polynomial schema {schema:?}")));
    }
    let vars: Vec<String> = obj
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("missing variables".into()))?
        .iter()
        .map(|x| x.as_str().map(String::from))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Schema("variables must be strings".into()))?;
    let field = Field::parse(obj.get("field").and_then(Value::as_str).unwrap_or("q"))?;
    let arity = vars.len();
    let mut poly = LaurentPoly::zero(arity);
    for t in obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("missing terms".into()))?
    {
        let o = t
            .as_object()
            .ok_or_else(|| Error::Schema("term must be an object".into()))?;
        let c = field.parse_scalar(
            o.get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Schema("term missing coeff".into()))?,
        )?;
        let e = expo_from_value(
            o.get("exponents")
                .ok_or_else(|| Error::Schema("term missing exponents".into()))?,
            arity,
        )?;
        poly = poly.add(&LaurentPoly::monomial(e, c, &field), &field);
    }
    Ok((poly, vars, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga_core::element::Element;

    #[test]
    fn dga_round_trip_is_bit_exact() {
        let f = Field::F2;
        let one = LaurentPoly::one(2, &f);
        let mu = LaurentPoly::var_pow(2, 0, 1, &f);
        let la = LaurentPoly::var_pow(2, 1, 1, &f);
        let da = Element::from_poly(&one.add(&la.mul(&one.add(&mu, &f), &f), &f), &f);
        let a = Element::generator(0, 2, &f);
        let da_hat = a.add(&a.conjugate_by_var(0, &f), &f);
        let dga = Dga {
            name: "clifford".into(),
            field: f,
            vars: vec!["mu".into(), "lambda".into()],
            var_degrees: vec![0, 0],
            generators: vec![
                Generator { label: "a".into(), degree: 1 },
                Generator { label: "a^".into(), degree: 2 },
            ],
            differential: vec![da, da_hat],
        };
        let text = serde_json::to_string_pretty(&dga_to_json(&dga)).unwrap();
        let parsed = dga_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        let text2 = serde_json::to_string_pretty(&dga_to_json(&parsed)).unwrap();
        assert_eq!(text, text2);
        assert_eq!(parsed.differential, dga.differential);
    }
}
