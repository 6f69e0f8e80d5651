use num_traits::{One, Signed};
use serde_json::{json, Value};

use seifert_core::classify::{classify as classify_graph, lemma24, qhd_certificate};
use seifert_core::exact_arith::{hj_expand, int, mod_inverse, HJExpansion};
use seifert_core::graph_model::{expand, intersection_matrix};
use seifert_core::invariants::{
    graded_discrepancy, k_cycle_closed_form, k_order_numerical, seifert_invariants,
};
use seifert_core::lattice::{canonical_cycle_oracle, discriminant_group};
use seifert_core::pinkham_demazure::{
    gorenstein_test, poincare_series, q_gorenstein_order, DemazureData, TorsionStatus,
};
use seifert_core::{Error, Rational, StarGraph};

use crate::render::Document;
use crate::Failure;

type Outcome = Result<Document, Failure>;

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn consistency(msg: String) -> Failure {
    Error::Consistency(msg).into()
}

fn header(sg: &StarGraph) -> Document {
    let mut doc = Document::new();
    doc.insert("graph".into(), s(sg));
    doc
}

/// Closed form against the lattice solve, plus adjunction on every curve.
fn check_cycle(sg: &StarGraph) -> Result<(), Failure> {
    let pg = expand(sg)?;
    let oracle = canonical_cycle_oracle(&pg)?;
    if k_cycle_closed_form(sg)? != oracle {
        return Err(consistency(format!("{sg}: closed form and lattice solve disagree")));
    }
    if oracle.adjunction_residual(&pg)?.iter().any(|r| *r != int(0)) {
        return Err(consistency(format!("{sg}: adjunction fails")));
    }
    Ok(())
}

pub fn invariants(sg: &StarGraph, verify: bool) -> Outcome {
    let inv = seifert_invariants(sg)?;
    let pg = expand(sg)?;
    let group = discriminant_group(&pg)?;
    let det = intersection_matrix(&pg).matrix.determinant();

    let mut doc = header(sg);
    doc.insert("e".into(), s(&inv.e));
    doc.insert("chi".into(), s(&inv.chi));
    doc.insert("chi_over_e".into(), s(&inv.beta));
    let mut caveat = None;
    match graded_discrepancy(sg) {
        Ok(g) => {
            doc.insert("alpha".into(), s(&g.alpha));
            doc.insert("order_of_k".into(), s(k_order_numerical(sg)?));
            caveat = g.caveat;
        }
        Err(e @ Error::CyclicQuotient { .. }) => {
            doc.insert("alpha".into(), Value::Null);
            doc.insert("order_of_k".into(), Value::Null);
            doc.insert("note".into(), s(e));
        }
        Err(e) => return Err(e.into()),
    }
    doc.insert("discriminant_group".into(), s(&group));
    doc.insert(
        "invariant_factors".into(),
        Value::Array(group.invariant_factors().iter().map(s).collect()),
    );
    doc.insert("det_abs".into(), s(det.abs()));
    if let Some(c) = caveat {
        doc.insert("caveat".into(), s(c));
    }
    if verify {
        let prod: i64 = sg.arms.iter().map(|a| a.n).product();
        if Rational::from_integer(det.abs()) != &inv.e * int(prod) {
            return Err(consistency(format!("{sg}: |det| = {det} is not e * prod n_i")));
        }
        if !sg.is_cyclic_quotient_range() {
            check_cycle(sg)?;
        }
        doc.insert("verified".into(), Value::Bool(true));
    }
    Ok(doc)
}

pub fn canonical_cycle(sg: &StarGraph, verify: bool) -> Outcome {
    let closed = k_cycle_closed_form(sg)?;
    check_cycle(sg)?;
    let mut doc = header(sg);
    let coefficients = closed
        .coefficients
        .iter()
        .map(|(label, k)| (label.to_string(), s(k)))
        .collect();
    doc.insert("coefficients".into(), Value::Object(coefficients));
    doc.insert("order_of_k".into(), s(closed.order()));
    if verify {
        let numerical = k_order_numerical(sg)?;
        if numerical != closed.order() {
            return Err(consistency(format!(
                "{sg}: order {numerical} from end terms, {} from coefficients",
                closed.order()
            )));
        }
    }
    doc.insert("verified_against_oracle".into(), Value::Bool(true));
    Ok(doc)
}

pub fn classify(sg: &StarGraph, verify: bool) -> Outcome {
    let class = classify_graph(sg)?;
    let mut doc = header(sg);
    doc.insert("class".into(), s(class.tag));
    doc.insert("chi".into(), s(&class.chi));
    doc.insert("alpha".into(), s(&class.alpha));
    if let Some(c) = graded_discrepancy(sg)?.caveat {
        doc.insert("caveat".into(), s(c));
    }
    match lemma24(sg) {
        Ok(report) => {
            doc.insert(
                "lemma24".into(),
                json!({
                    "applies": report.applies,
                    "matched_case": report.matched_case.map(|c| c.as_str()),
                    "chi_over_e": report.chi_over_e.to_string(),
                }),
            );
            let cert = qhd_certificate(sg)?;
            let steps: Vec<Value> = cert
                .steps
                .iter()
                .map(|st| json!({"claim": st.claim, "value": st.value, "verdict": st.verdict}))
                .collect();
            doc.insert(
                "qhd_certificate".into(),
                json!({"steps": steps, "overall": cert.overall}),
            );
        }
        Err(e @ Error::PositiveGenus { .. }) => {
            doc.insert("lemma24".into(), Value::Null);
            doc.insert("qhd_certificate".into(), Value::Null);
            doc.insert("note".into(), s(e));
        }
        Err(e) => return Err(e.into()),
    }
    if verify {
        check_cycle(sg)?;
        doc.insert("verified".into(), Value::Bool(true));
    }
    Ok(doc)
}

pub fn poincare(sg: &StarGraph, k_max: u64, verify: bool) -> Outcome {
    let dd = DemazureData::from_star(sg)?;
    let series = poincare_series(&dd, k_max)?;
    if verify {
        // floor(kE) has degree kd - sum ceil(kq/n); recomputed over Q.
        for (k, &dim) in series.iter().enumerate() {
            let k = int(i64::try_from(k).map_err(|_| Failure::input("kmax too large"))?);
            let deg = sg.arms.iter().fold(&k * int(sg.central_weight), |acc, a| {
                acc - (&k * Rational::new(a.q.into(), a.n.into())).ceil()
            });
            let expected = (deg + int(1)).max(int(0));
            if expected != int(i64::try_from(dim).unwrap_or(i64::MAX)) {
                return Err(consistency(format!("{sg}: dim A_{k} = {dim}, expected {expected}")));
            }
        }
    }
    let mut doc = header(sg);
    doc.insert("kmax".into(), json!(k_max));
    doc.insert("series".into(), json!(series));
    if verify {
        doc.insert("verified".into(), Value::Bool(true));
    }
    Ok(doc)
}

pub fn gorenstein(sg: &StarGraph, verify: bool) -> Outcome {
    let dd = DemazureData::from_star(sg)?;
    let order = q_gorenstein_order(&dd)?;
    let mut doc = header(sg);
    let test = match gorenstein_test(&dd, &dd.xi()) {
        Ok(t) => {
            doc.insert("gorenstein".into(), Value::Bool(t.is_some()));
            doc.insert("t".into(), t.map_or(Value::Null, s));
            Some(t)
        }
        Err(e @ Error::PositiveGenus { .. }) => {
            doc.insert("gorenstein".into(), Value::Null);
            doc.insert("t".into(), Value::Null);
            doc.insert("note".into(), s(e));
            None
        }
        Err(e) => return Err(e.into()),
    };
    let torsion = match order.torsion {
        TorsionStatus::Automatic => "automatic",
        TorsionStatus::Undecided => "undecided",
    };
    doc.insert(
        "q_gorenstein".into(),
        json!({"s": order.s.to_string(), "t": order.t.to_string(), "torsion": torsion}),
    );
    doc.insert("order".into(), order.order().map_or(Value::Null, s));
    if verify {
        if let Some(t) = test {
            if t.is_some() != order.s.is_one() {
                return Err(consistency(format!(
                    "{sg}: Gorenstein test {t:?} but order {}",
                    order.s
                )));
            }
        }
        if let Some(o) = order.order() {
            if !sg.is_cyclic_quotient_range() {
                let lattice = k_order_numerical(sg)?;
                if *o != lattice {
                    return Err(consistency(format!(
                        "{sg}: order of K_X {o}, lattice order {lattice}"
                    )));
                }
            }
        }
        doc.insert("verified".into(), Value::Bool(true));
    }
    Ok(doc)
}

/// `n/q` with `0 < q < n` coprime; returns the document and the bare expansion.
pub fn cf(fraction: &str) -> Result<(Document, HJExpansion), Failure> {
    let (n, q) = fraction
        .split_once('/')
        .and_then(|(n, q)| Some((n.trim().parse::<i64>().ok()?, q.trim().parse::<i64>().ok()?)))
        .ok_or_else(|| Failure::input(format!("expected n/q, got {fraction:?}")))?;
    let expansion = hj_expand(n, q)?;
    let q_prime = mod_inverse(q, n)?;
    let mut doc = Document::new();
    doc.insert("fraction".into(), s(format!("{n}/{q}")));
    doc.insert("expansion".into(), json!(expansion.entries()));
    doc.insert("q_prime".into(), json!(q_prime));
    doc.insert("dual_expansion".into(), json!(hj_expand(n, q_prime)?.entries()));
    Ok((doc, expansion))
}
