//! Exhaustive genus-0 sweeps, in lexicographic order: arm count, then the
//! sorted arm tuple, then `d`.

use num_integer::Integer;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use seifert_core::classify::lemma24;
use seifert_core::exact_arith::int;
use seifert_core::invariants::seifert_invariants;
use seifert_core::{Arm, StarGraph};

use crate::render::Document;
use crate::{Failure, Filter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub t_min: usize,
    pub t_max: usize,
    pub d_max: i64,
    pub n_max: i64,
}

fn parse_count(s: &str) -> Result<i64, Failure> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Failure::input(format!("arm count must be an integer, got {s:?}")))
}

impl Bounds {
    /// `t` is `a`, `a..b`, `a..=b` or `a-b`, all inclusive. A reversed range
    /// is empty, not an error.
    pub fn parse(t: &str, d_max: i64, n_max: i64) -> Result<Self, Failure> {
        let (lo, hi) = if let Some((a, b)) = t.split_once("..=") {
            (parse_count(a)?, parse_count(b)?)
        } else if let Some((a, b)) = t.split_once("..") {
            (parse_count(a)?, parse_count(b)?)
        } else if let Some((a, b)) = t.trim().get(1..).and_then(|rest| rest.split_once('-')) {
            let a = format!("{}{a}", &t.trim()[..1]);
            (parse_count(&a)?, parse_count(b)?)
        } else {
            let v = parse_count(t)?;
            (v, v)
        };
        if lo < 0 || hi < 0 {
            return Err(Failure::input(format!("arm count must be >= 0, got {t:?}")));
        }
        if n_max < 2 {
            return Err(Failure::input(format!("nmax must be >= 2, got {n_max}")));
        }
        Ok(Bounds {
            t_min: lo as usize,
            t_max: hi as usize,
            d_max,
            n_max,
        })
    }
}

fn arm_types(n_max: i64) -> Vec<Arm> {
    (2..=n_max)
        .flat_map(|n| (1..n).filter(move |q| q.gcd(&n) == 1).map(move |q| Arm::new(n, q)))
        .collect()
}

/// Next nondecreasing index tuple, or `None` after the last one.
fn advance(idx: &mut [usize], len: usize) -> bool {
    let Some(pos) = (0..idx.len()).rev().find(|&p| idx[p] + 1 < len) else {
        return false;
    };
    idx[pos] += 1;
    let v = idx[pos];
    idx[pos + 1..].iter_mut().for_each(|i| *i = v);
    true
}

fn matches(sg: &StarGraph, filter: Option<Filter>) -> Result<Option<Value>, Failure> {
    let inv = seifert_invariants(sg)?;
    let keep = match filter {
        None => true,
        Some(Filter::Lemma24) => lemma24(sg)?.applies,
        Some(Filter::ChiELt1) => inv.beta < int(1),
        Some(Filter::AlphaGtMinus2) => inv.alpha > int(-2),
        Some(Filter::LogCanonical) => inv.alpha >= int(-1),
    };
    if !keep {
        return Ok(None);
    }
    let mut item = json!({
        "graph": sg.to_string(),
        "chi": inv.chi.to_string(),
        "chi_over_e": inv.beta.to_string(),
        "alpha": inv.alpha.to_string(),
    });
    if filter == Some(Filter::Lemma24) {
        let report = lemma24(sg)?;
        if report.chi_over_e >= seifert_core::Rational::one() {
            return Err(seifert_core::Error::Consistency(format!(
                "{sg} matches a chi/e < 1 case but chi/e = {}",
                report.chi_over_e
            ))
            .into());
        }
        item["matched_case"] = json!(report.matched_case.map(|c| c.as_str()));
    }
    Ok(Some(item))
}

/// Graphs with `e > 0` outside the cyclic quotient range (`t >= 3`).
pub fn enumerate(bounds: &Bounds, filter: Option<Filter>) -> Result<Document, Failure> {
    let types = arm_types(bounds.n_max);
    let mut results = Vec::new();
    for t in bounds.t_min.max(3)..=bounds.t_max {
        let mut idx = vec![0usize; t];
        loop {
            let arms: Vec<Arm> = idx.iter().map(|&i| types[i]).collect();
            for d in 1..=bounds.d_max {
                let sg = StarGraph::new(0, d, arms.clone());
                if sg.euler_number()?.is_positive() {
                    if let Some(item) = matches(&sg, filter)? {
                        results.push(item);
                    }
                }
            }
            if !advance(&mut idx, types.len()) {
                break;
            }
        }
    }

    let mut doc = Document::new();
    doc.insert(
        "bounds".into(),
        json!({
            "t": format!("{}..={}", bounds.t_min, bounds.t_max),
            "dmax": bounds.d_max,
            "nmax": bounds.n_max,
        }),
    );
    doc.insert(
        "filter".into(),
        filter.map_or(Value::Null, |f| json!(f.as_str())),
    );
    doc.insert("count".into(), json!(results.len()));
    doc.insert("results".into(), Value::Array(results));
    Ok(doc)
}
