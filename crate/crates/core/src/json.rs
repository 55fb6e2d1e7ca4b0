//! JSON encodings of scalars, Grassmann elements, points, representations,
//! sections and reports.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::grassmann::{GeneratorSet, GrassmannElement, Parity, Terms, Variable};
use crate::harmonic::{monomial_names, parse_monomial, CoefficientKey, ExpansionResult, Section};
use crate::liealg::{AlgebraTag, Representation};
use crate::matrix::Matrix;
use crate::reps::{DecompositionReport, RepLabel, Sign};
use crate::scalars::{parse_rational, rational_to_string, ExtendedScalar, GaussianRational, Scalar, ScalarMode};
use crate::supergroup::{FactorizationTriple, GL11Point};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("`{what}` must be an array")))
}

fn as_int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err(format!("`{what}` must be an integer")))
}

fn as_index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("`{what}` must be a non-negative integer")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(format!("`{what}` must be a string")))
}

pub fn gaussian_to_json(x: &GaussianRational) -> Value {
    json!({"re": rational_to_string(x.re()), "im": rational_to_string(x.im())})
}

fn gaussian_from_json(v: &Value) -> Result<GaussianRational> {
    let part = |key: &str| match v.get(key) {
        None => Ok(parse_rational("0")?),
        Some(Value::String(s)) => parse_rational(s),
        Some(Value::Number(n)) if n.is_i64() => parse_rational(&n.to_string()),
        Some(_) => Err(parse_err(format!("`{key}` must be a rational string"))),
    };
    Ok(GaussianRational::new(part("re")?, part("im")?))
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    match x {
        Scalar::Exact(g) => gaussian_to_json(g),
        Scalar::Ext(e) => json!({"c0": gaussian_to_json(e.c0()), "c1": gaussian_to_json(e.c1()), "m": e.m()}),
        Scalar::Float(f) => json!({"re": f.re, "im": f.im}),
    }
}

/// Parses any scalar encoding. Objects with floating-point parts are float
/// scalars; the result is finally converted into `mode`.
pub fn scalar_from_json(v: &Value, mode: ScalarMode) -> Result<Scalar> {
    let s = match v {
        Value::String(s) => Scalar::Exact(GaussianRational::new(parse_rational(s)?, parse_rational("0")?)),
        Value::Number(n) if n.is_i64() => Scalar::from(n.as_i64().unwrap_or_default()),
        Value::Object(o) if o.contains_key("c0") || o.contains_key("c1") => {
            let c0 = o.get("c0").map(gaussian_from_json).transpose()?.unwrap_or_default();
            let c1 = o.get("c1").map(gaussian_from_json).transpose()?.unwrap_or_default();
            let m = as_int(field(v, "m")?, "m")?;
            if c1.is_zero() {
                Scalar::Exact(c0)
            } else {
                Scalar::from(ExtendedScalar::new(c0, c1, m)?)
            }
        }
        Value::Object(o) if o.values().any(|x| x.as_f64().is_some() && !x.is_i64()) => {
            let part = |k: &str| o.get(k).and_then(Value::as_f64).unwrap_or(0.0);
            let tol = match mode {
                ScalarMode::Float { tol } => tol,
                ScalarMode::Exact => crate::scalars::DEFAULT_TOL,
            };
            Scalar::float(part("re"), part("im"), tol)
        }
        Value::Object(_) => Scalar::Exact(gaussian_from_json(v)?),
        _ => return Err(parse_err(format!("not a scalar: {v}"))),
    };
    Ok(match mode {
        ScalarMode::Exact => s,
        mode => s.in_mode(mode),
    })
}

pub fn matrix_to_json(m: &Matrix<Scalar>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect())).collect())
}

pub fn matrix_from_json(v: &Value, mode: ScalarMode) -> Result<Matrix<Scalar>> {
    let rows = as_array(v, "matrix")?
        .iter()
        .map(|r| as_array(r, "matrix row")?.iter().map(|x| scalar_from_json(x, mode)).collect())
        .collect::<Result<Vec<Vec<Scalar>>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows)
}

fn pairs_from_json(v: Option<&Value>) -> Result<Option<Vec<(usize, usize)>>> {
    let Some(v) = v else { return Ok(None) };
    as_array(v, "pairing")?
        .iter()
        .map(|p| {
            let p = as_array(p, "pair")?;
            if p.len() != 2 {
                return Err(parse_err("a pair has two indices"));
            }
            Ok((as_index(&p[0], "pair")?, as_index(&p[1], "pair")?))
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn names_from_json(v: &Value, what: &str) -> Result<Vec<String>> {
    as_array(v, what)?.iter().map(|x| Ok(as_str(x, what)?.to_string())).collect()
}

/// Whether the object declares a generator set of its own.
fn has_generator_set(v: &Value) -> bool {
    v.get("gens").is_some() || v.get("even").is_some()
}

pub fn generator_set_from_json(v: &Value) -> Result<Arc<GeneratorSet>> {
    let odd = match v.get("gens") {
        Some(g) => names_from_json(g, "gens")?,
        None => Vec::new(),
    };
    let mut set = GeneratorSet::new(odd)?;
    if let Some(pairs) = pairs_from_json(v.get("pairing"))? {
        set = set.with_pairing(&pairs)?;
    }
    if let Some(even) = v.get("even") {
        let pairs = pairs_from_json(v.get("even_pairing"))?.unwrap_or_default();
        set = set.with_even(names_from_json(even, "even")?, &pairs)?;
    }
    if let Some(star) = v.get("star") {
        let base = Arc::new(set.clone());
        for entry in as_array(star, "star")? {
            let name = as_str(field(entry, "var")?, "var")?;
            let var = base.variable(name).ok_or_else(|| parse_err(format!("unknown variable `{name}`")))?;
            let image = terms_from_json(field(entry, "terms")?, Some(&base), ScalarMode::Exact)?;
            set = set.with_star_image(var, image)?;
        }
    }
    Ok(Arc::new(set))
}

fn generator_set_to_json(set: &GeneratorSet, out: &mut Map<String, Value>) {
    out.insert("gens".into(), json!(set.odd_names()));
    let pairs =
        |p: &[usize]| Value::Array(p.iter().enumerate().filter(|(a, b)| a < *b).map(|(a, b)| json!([a, b])).collect());
    if let Some(p) = set.pairing() {
        out.insert("pairing".into(), pairs(p));
    }
    if !set.even_names().is_empty() {
        out.insert("even".into(), json!(set.even_names()));
        if let Some(p) = set.even_pairing() {
            out.insert("even_pairing".into(), pairs(p));
        }
    }
    if !set.star_images().is_empty() {
        let star = set
            .star_images()
            .iter()
            .map(|(var, image)| {
                let name = match *var {
                    Variable::Odd(k) => &set.odd_names()[k],
                    Variable::Even(k) => &set.even_names()[k],
                };
                json!({"var": name, "terms": terms_to_json(image)})
            })
            .collect();
        out.insert("star".into(), Value::Array(star));
    }
}

fn terms_to_json(terms: &Terms) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|(mono, c)| {
                let odd: Vec<usize> = (0..64).filter(|k| mono.odd_mask() >> k & 1 == 1).collect();
                let mut t = Map::new();
                t.insert("mono".into(), json!(odd));
                if !mono.exps().is_empty() {
                    t.insert("exps".into(), json!(mono.exps()));
                }
                t.insert("coef".into(), scalar_to_json(c));
                Value::Object(t)
            })
            .collect(),
    )
}

fn terms_from_json(v: &Value, gens: Option<&Arc<GeneratorSet>>, mode: ScalarMode) -> Result<Terms> {
    let mut out = GrassmannElement::zero();
    for t in as_array(v, "terms")? {
        let coef = scalar_from_json(field(t, "coef")?, mode)?;
        let mut factor = GrassmannElement::scalar(coef);
        if let Some(gens) = gens {
            factor = factor.in_set(gens)?;
        }
        if let Some(exps) = t.get("exps") {
            let gens = gens.ok_or_else(|| parse_err("`exps` needs even variables"))?;
            for (k, e) in as_array(exps, "exps")?.iter().enumerate() {
                let e = i32::try_from(as_int(e, "exps")?).map_err(|_| parse_err("exponent out of range"))?;
                let name = gens.even_names().get(k).ok_or_else(|| parse_err("more exponents than even variables"))?;
                factor = factor.try_mul(&GrassmannElement::even_var(gens, name, e)?)?;
            }
        }
        for g in as_array(field(t, "mono")?, "mono")? {
            let gens = gens.ok_or_else(|| parse_err("monomial refers to generators, but none are declared"))?;
            let gen = match g {
                Value::String(name) => GrassmannElement::generator(gens, name)?,
                other => {
                    let k = as_index(other, "mono")?;
                    if k >= gens.odd_names().len() {
                        return Err(parse_err(format!("generator index {k} out of range")));
                    }
                    GrassmannElement::odd_generator(gens, k)
                }
            };
            factor = factor.try_mul(&gen)?;
        }
        out = out.try_add(&factor)?;
    }
    Ok(out.terms().clone())
}

pub fn grassmann_to_json(x: &GrassmannElement) -> Value {
    let mut out = Map::new();
    if let Some(g) = x.gens() {
        generator_set_to_json(g, &mut out);
    }
    out.insert("terms".into(), terms_to_json(x.terms()));
    Value::Object(out)
}

/// Parses an element; `inherited` is used when the object declares no
/// generators of its own.
pub fn grassmann_from_json(
    v: &Value,
    inherited: Option<&Arc<GeneratorSet>>,
    mode: ScalarMode,
) -> Result<GrassmannElement> {
    let own = if has_generator_set(v) { Some(generator_set_from_json(v)?) } else { None };
    let gens = own.as_ref().or(inherited);
    let terms = terms_from_json(field(v, "terms")?, gens, mode)?;
    match gens {
        Some(g) => GrassmannElement::from_terms(g, terms),
        None => {
            let mut out = GrassmannElement::zero();
            for (mono, c) in terms {
                if !mono.is_unit() {
                    return Err(parse_err("monomial refers to generators, but none are declared"));
                }
                out = out.try_add(&GrassmannElement::scalar(c))?;
            }
            Ok(out)
        }
    }
}

fn shared_object(gens: Option<&Arc<GeneratorSet>>, entries: Vec<(&str, &GrassmannElement)>) -> Value {
    let mut out = Map::new();
    if let Some(g) = gens {
        generator_set_to_json(g, &mut out);
    }
    for (k, x) in entries {
        out.insert(k.into(), json!({"terms": terms_to_json(x.terms())}));
    }
    Value::Object(out)
}

fn shared_entries(v: &Value, keys: &[&str], mode: ScalarMode) -> Result<Vec<GrassmannElement>> {
    let top = if has_generator_set(v) { Some(generator_set_from_json(v)?) } else { None };
    keys.iter().map(|k| grassmann_from_json(field(v, k)?, top.as_ref(), mode)).collect()
}

/// `{"a", "beta", "gamma", "d"}` with an optional shared generator set at
/// the top level.
pub fn point_to_json(p: &GL11Point) -> Value {
    shared_object(p.gens(), vec![("a", &p.a), ("beta", &p.beta), ("gamma", &p.gamma), ("d", &p.d)])
}

pub fn point_from_json(v: &Value, mode: ScalarMode) -> Result<GL11Point> {
    let mut e = shared_entries(v, &["a", "beta", "gamma", "d"], mode)?.into_iter();
    let mut next = || e.next().expect("four entries");
    GL11Point::new(next(), next(), next(), next())
}

pub fn triple_to_json(f: &FactorizationTriple) -> Value {
    let gens = [&f.t, &f.theta, &f.eta].into_iter().find_map(|x| x.gens());
    shared_object(gens, vec![("t", &f.t), ("theta", &f.theta), ("eta", &f.eta)])
}

pub fn triple_from_json(v: &Value, mode: ScalarMode) -> Result<FactorizationTriple> {
    let mut e = shared_entries(v, &["t", "theta", "eta"], mode)?.into_iter();
    let mut next = || e.next().expect("three entries");
    Ok(FactorizationTriple { t: next(), theta: next(), eta: next() })
}

/// `{"w", "eta"}` point of the multiplicative supergroup.
pub fn s11_point_to_json(w: &GrassmannElement, eta: &GrassmannElement) -> Value {
    shared_object(w.gens().or(eta.gens()), vec![("w", w), ("eta", eta)])
}

pub fn s11_point_from_json(v: &Value, mode: ScalarMode) -> Result<(GrassmannElement, GrassmannElement)> {
    let mut e = shared_entries(v, &["w", "eta"], mode)?.into_iter();
    Ok((e.next().expect("w"), e.next().expect("eta")))
}

pub fn representation_to_json(rep: &Representation) -> Value {
    let mut out = Map::new();
    out.insert("algebra".into(), json!(rep.algebra.name()));
    let basis = rep.parities.iter().zip(&rep.weights).map(|(p, w)| json!({"parity": p.as_u8(), "weight": w})).collect();
    out.insert("basis".into(), Value::Array(basis));
    for (name, g) in rep.algebra.odd_generators().iter().zip(&rep.generators) {
        out.insert((*name).into(), matrix_to_json(g));
    }
    Value::Object(out)
}

pub fn representation_from_json(v: &Value, mode: ScalarMode) -> Result<Representation> {
    let algebra = AlgebraTag::parse(as_str(field(v, "algebra")?, "algebra")?).map_err(|e| parse_err(e.to_string()))?;
    let mut parities = Vec::new();
    let mut weights = Vec::new();
    for b in as_array(field(v, "basis")?, "basis")? {
        parities.push(match as_int(field(b, "parity")?, "parity")? {
            0 => Parity::Even,
            1 => Parity::Odd,
            other => return Err(parse_err(format!("parity must be 0 or 1, got {other}"))),
        });
        weights.push(as_int(field(b, "weight")?, "weight")?);
    }
    let n = parities.len();
    let generators = algebra
        .odd_generators()
        .iter()
        .map(|name| {
            let m = matrix_from_json(field(v, name)?, mode)?;
            if n == 0 {
                Ok(Matrix::zeros(0, 0))
            } else {
                Ok(m)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(algebra, parities, weights, generators).map_err(|e| parse_err(e.to_string()))
}

pub fn label_to_json(label: &RepLabel) -> Value {
    match label {
        RepLabel::Trivial => json!({"rep": "trivial"}),
        RepLabel::Adjoint => json!({"rep": "adjoint"}),
        RepLabel::ParityAdjoint => json!({"rep": "parity_adjoint"}),
        RepLabel::V(m) => json!({"rep": "V", "m": m}),
        RepLabel::Pi(m, s) => json!({"rep": "pi", "m": m, "sign": s.symbol()}),
    }
}

pub fn label_from_json(v: &Value) -> Result<RepLabel> {
    Ok(match as_str(field(v, "rep")?, "rep")? {
        "trivial" => RepLabel::Trivial,
        "adjoint" => RepLabel::Adjoint,
        "parity_adjoint" => RepLabel::ParityAdjoint,
        "V" => RepLabel::V(as_int(field(v, "m")?, "m")?),
        "pi" => RepLabel::Pi(
            as_int(field(v, "m")?, "m")?,
            Sign::parse(as_str(field(v, "sign")?, "sign")?).map_err(|e| parse_err(e.to_string()))?,
        ),
        other => return Err(parse_err(format!("unknown representation `{other}`"))),
    })
}

pub fn report_to_json(r: &DecompositionReport) -> Value {
    let body = match r.algebra {
        AlgebraTag::S11 => json!({
            "V": r.v.iter().map(|(m, c)| json!({"m": m, "count": c})).collect::<Vec<_>>(),
            "Ad": r.adjoint,
            "PiAd": r.parity_adjoint,
            "trivial": {"even": r.trivial.0, "odd": r.trivial.1},
        }),
        AlgebraTag::Su11 => json!({
            "pi": r.pi.iter().map(|((m, s), c)| json!({"m": m, "sign": s.symbol(), "count": c})).collect::<Vec<_>>(),
            "weight_zero": r.weight_zero.as_ref().map(representation_to_json),
        }),
    };
    let mut out = Map::new();
    out.insert(r.algebra.name().into(), body);
    out.insert("basis_change".into(), matrix_to_json(&r.basis_change));
    Value::Object(out)
}

fn section_terms_to_json(s: &Section) -> Value {
    Value::Array(
        s.terms()
            .iter()
            .map(|(&(m, mono), c)| json!({"m": m, "mono": monomial_names(mono), "coef": scalar_to_json(c)}))
            .collect(),
    )
}

pub fn section_to_json(s: &Section) -> Value {
    json!({"group": s.group.name(), "terms": section_terms_to_json(s)})
}

pub fn section_from_json(v: &Value, mode: ScalarMode) -> Result<Section> {
    let group = AlgebraTag::parse(as_str(field(v, "group")?, "group")?).map_err(|e| parse_err(e.to_string()))?;
    let mut out = Section::zero(group);
    for t in as_array(field(v, "terms")?, "terms")? {
        let m = as_int(field(t, "m")?, "m")?;
        let names = match t.get("mono") {
            Some(x) => names_from_json(x, "mono")?,
            None => Vec::new(),
        };
        let coef = scalar_from_json(field(t, "coef")?, mode)?;
        if let Some((mono, sign)) = parse_monomial(&names, group)? {
            out.add_term(m, mono, coef.try_mul(&Scalar::from(sign))?)?;
        }
    }
    Ok(out)
}

fn coefficient_entry(key: &CoefficientKey, c: &Scalar) -> Value {
    let (label, (i, j)) = key;
    let mut o = match label_to_json(label) {
        Value::Object(o) => o,
        _ => unreachable!("labels encode as objects"),
    };
    o.insert("entry".into(), json!([i, j]));
    o.insert("coef".into(), scalar_to_json(c));
    Value::Object(o)
}

pub fn expansion_to_json(r: &ExpansionResult) -> Value {
    let mut out = Map::new();
    out.insert("group".into(), json!(r.group.name()));
    out.insert(
        "coefficients".into(),
        Value::Array(r.coefficients.iter().map(|(k, c)| coefficient_entry(k, c)).collect()),
    );
    out.insert("residual".into(), section_terms_to_json(&r.residual));
    if !r.residual.is_zero() {
        out.insert("note".into(), json!("outside listed span"));
    }
    Value::Object(out)
}

pub fn expansion_from_json(v: &Value, mode: ScalarMode) -> Result<ExpansionResult> {
    let group = AlgebraTag::parse(as_str(field(v, "group")?, "group")?).map_err(|e| parse_err(e.to_string()))?;
    let mut coefficients = BTreeMap::new();
    for c in as_array(field(v, "coefficients")?, "coefficients")? {
        let label = label_from_json(c)?;
        let entry = as_array(field(c, "entry")?, "entry")?;
        if entry.len() != 2 {
            return Err(parse_err("`entry` has two indices"));
        }
        let key = (label, (as_index(&entry[0], "entry")?, as_index(&entry[1], "entry")?));
        coefficients.insert(key, scalar_from_json(field(c, "coef")?, mode)?);
    }
    let residual = section_from_json(&json!({"group": group.name(), "terms": field(v, "residual")?}), mode)?;
    Ok(ExpansionResult { group, coefficients, residual })
}

/// Serializes with two-space indentation and a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{make_pi_m, make_v_m};
    use crate::supergroup::{GenericUnitaryRing, GroupKind};

    #[test]
    fn scalar_round_trips() {
        let exact = Scalar::Exact(GaussianRational::from_fractions((1, 2), (-3, 4)));
        assert_eq!(scalar_to_json(&exact), json!({"re": "1/2", "im": "-3/4"}));
        let ext = Scalar::from(ExtendedScalar::generator(3).unwrap());
        for x in [exact, ext, Scalar::float(0.5, -1.0, 1e-9)] {
            assert_eq!(scalar_from_json(&scalar_to_json(&x), ScalarMode::Exact).unwrap(), x);
        }
        assert!(scalar_from_json(&json!({"re": "1/0"}), ScalarMode::Exact).is_err());
    }

    #[test]
    fn representation_round_trips() {
        for rep in [make_v_m(3, ScalarMode::Exact).unwrap(), make_pi_m(-2, Sign::Minus, ScalarMode::Exact).unwrap()] {
            let v = representation_to_json(&rep);
            assert_eq!(representation_from_json(&v, ScalarMode::Exact).unwrap(), rep);
        }
        let bad = json!({"algebra": "s11", "basis": [{"parity": 0, "weight": 1.5}], "Z": [["0"]]});
        assert!(matches!(representation_from_json(&bad, ScalarMode::Exact), Err(Error::Parse(_))));
    }

    #[test]
    fn point_round_trips() {
        let ring = GenericUnitaryRing::new(GroupKind::Su11, 1).unwrap();
        let p = &ring.points[0];
        let v = point_to_json(p);
        assert_eq!(&point_from_json(&v, ScalarMode::Exact).unwrap(), p);
    }

    #[test]
    fn grassmann_mono_order_sign() {
        let v = json!({"gens": ["x", "y"], "terms": [{"mono": [1, 0], "coef": "1"}]});
        let e = grassmann_from_json(&v, None, ScalarMode::Exact).unwrap();
        let set = e.gens().unwrap().clone();
        let xy = GrassmannElement::odd_generator(&set, 0) * GrassmannElement::odd_generator(&set, 1);
        assert_eq!(e, -xy);
    }
}
