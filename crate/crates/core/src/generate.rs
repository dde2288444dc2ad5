//! Seeded deterministic model generators for the CLI and the test suites.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::carrier::Carrier;
use crate::complemented::enumerate_all;
use crate::metric::FiniteMetric;
use crate::model::{CarrierDoc, ComplementedDoc, MetricDoc, ModelDocument};
use crate::q::{fmt_q, Q, QRng};
use crate::Error;

pub const GENERATOR_CAP: usize = 8;
pub const ENUMERATE_CAP: usize = 4;

/// A random rational metric on `n` points: symmetric positive entries,
/// repaired to satisfy the triangle inequality by min-plus closure. The
/// repair is recorded in the document's `meta` field.
pub fn random_metric(n: usize, seed: u64) -> Result<ModelDocument, Error> {
    if n == 0 || n > GENERATOR_CAP {
        return Err(Error::SizeCap {
            what: "random metric".into(),
            cap: GENERATOR_CAP,
            got: n,
        });
    }
    let mut rng = QRng::new(seed);
    let mut d = vec![vec![Q::zero(); n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.positive(20);
            d[i][j] = v.clone();
            d[j][i] = v;
        }
    }
    // min-plus closure: d[i][j] := min over paths; logs whether anything moved
    let mut repaired = false;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                    repaired = true;
                }
            }
        }
    }
    let ids: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    // must validate now; the closure repaired the only fixable axiom
    FiniteMetric::validate(ids.clone(), d.clone())?;
    Ok(ModelDocument {
        version: Some("1".into()),
        metric: Some(MetricDoc {
            elements: ids,
            table: d
                .iter()
                .map(|row| row.iter().map(fmt_q).collect())
                .collect(),
        }),
        meta: Some(serde_json::json!({
            "generator": "random-metric",
            "seed": seed,
            "repaired": repaired,
        })),
        ..Default::default()
    })
}

/// A random carrier: trivial equality with either the discrete inequality
/// or a random symmetric apartness candidate.
pub fn random_carrier(n: usize, seed: u64, discrete: bool) -> Result<ModelDocument, Error> {
    if n == 0 || n > GENERATOR_CAP {
        return Err(Error::SizeCap {
            what: "random carrier".into(),
            cap: GENERATOR_CAP,
            got: n,
        });
    }
    let ids: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut apart = Vec::new();
    if discrete {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    apart.push((ids[i].clone(), ids[j].clone()));
                }
            }
        }
    } else {
        let mut rng = QRng::new(seed);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.usize(2) == 1 {
                    apart.push((ids[i].clone(), ids[j].clone()));
                    apart.push((ids[j].clone(), ids[i].clone()));
                }
            }
        }
    }
    let doc = ModelDocument {
        version: Some("1".into()),
        carrier: Some(CarrierDoc {
            elements: ids,
            equal: None,
            apart: Some(apart),
        }),
        meta: Some(serde_json::json!({
            "generator": "random-carrier",
            "seed": seed,
            "discrete": discrete,
        })),
        ..Default::default()
    };
    Ok(doc)
}

/// All complemented subsets of the discrete carrier on `n` elements
/// (3ⁿ of them), named `cs0..`, guarded by the enumeration cap.
pub fn enumerate_cs(n: usize) -> Result<ModelDocument, Error> {
    if n == 0 || n > ENUMERATE_CAP {
        return Err(Error::SizeCap {
            what: "complemented-subset enumeration".into(),
            cap: ENUMERATE_CAP,
            got: n,
        });
    }
    let c = Carrier::discrete(n);
    let all = enumerate_all(&c, 3usize.pow(n as u32) + 1)?;
    let ids: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut cs = BTreeMap::new();
    for (i, a) in all.iter().enumerate() {
        cs.insert(
            format!("cs{i}"),
            ComplementedDoc {
                one: a.one().member_ids(),
                zero: a.zero().member_ids(),
            },
        );
    }
    let mut apart = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                apart.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    Ok(ModelDocument {
        version: Some("1".into()),
        carrier: Some(CarrierDoc {
            elements: ids,
            equal: None,
            apart: Some(apart),
        }),
        complemented: Some(cs),
        meta: Some(serde_json::json!({"generator": "enumerate-cs"})),
        ..Default::default()
    })
}
