//! JSON documents for graphs, phases and BPS input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::rational::parse_q;
use crate::homlattice::{EdgeClass, PhaseFraming};
use crate::ribbon::RibbonGraph;
use crate::superpot::{CoeffEntry, Coeffs};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub darts: usize,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
    /// Face index (as a string key) to label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_labels: Option<BTreeMap<String, String>>,
}

impl GraphDoc {
    pub fn from_graph(g: &RibbonGraph) -> Self {
        let labels = g.face_labels();
        GraphDoc {
            darts: g.dart_count(),
            alpha: g.alpha().to_vec(),
            sigma: g.sigma().to_vec(),
            face_labels: (!labels.is_empty()).then(|| labels.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()),
        }
    }

    pub fn to_graph(&self) -> Result<RibbonGraph> {
        if self.alpha.len() != self.darts || self.sigma.len() != self.darts {
            return Err(Error::Parse(format!(
                "darts = {} but alpha has {} entries and sigma has {}",
                self.darts,
                self.alpha.len(),
                self.sigma.len()
            )));
        }
        let g = RibbonGraph::new(self.alpha.clone(), self.sigma.clone())?;
        match &self.face_labels {
            None => Ok(g),
            Some(m) => {
                let mut labels = BTreeMap::new();
                for (k, v) in m {
                    let f: usize = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("face label key {k:?} is not an index")))?;
                    labels.insert(f, v.clone());
                }
                g.with_face_labels(labels)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseDoc {
    pub kernel_classes: Vec<Vec<i64>>,
    pub lift_classes: Vec<Vec<i64>>,
    pub framing: Vec<Vec<i64>>,
    pub signs: Vec<i64>,
}

impl PhaseDoc {
    pub fn from_phase(pf: &PhaseFraming) -> Self {
        PhaseDoc {
            kernel_classes: pf.kernel_classes.iter().map(|c| c.0.clone()).collect(),
            lift_classes: pf.lift_classes.iter().map(|c| c.0.clone()).collect(),
            framing: pf.framing.clone(),
            signs: pf.signs.clone(),
        }
    }

    pub fn to_phase(&self) -> PhaseFraming {
        PhaseFraming {
            kernel_classes: self.kernel_classes.iter().cloned().map(EdgeClass).collect(),
            lift_classes: self.lift_classes.iter().cloned().map(EdgeClass).collect(),
            framing: self.framing.clone(),
            signs: self.signs.clone(),
        }
    }
}

/// Series coefficients to invert; a superpotential report also parses.
#[derive(Clone, Debug, Deserialize)]
pub struct BpsInput {
    pub genus: usize,
    pub order: u32,
    #[serde(rename = "K")]
    pub k: Vec<CoeffEntry>,
}

impl BpsInput {
    pub fn coeffs(&self) -> Result<Coeffs> {
        let mut out = Coeffs::new();
        for e in &self.k {
            if e.d.len() != self.genus {
                return Err(Error::Parse(format!(
                    "exponent {:?} has length != genus {}",
                    e.d, self.genus
                )));
            }
            let v = parse_q(&e.value).ok_or_else(|| Error::Parse(format!("bad rational {:?}", e.value)))?;
            out.insert(e.d.clone(), v);
        }
        Ok(out)
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_graph(text: &str) -> Result<RibbonGraph> {
    parse_json::<GraphDoc>(text)?.to_graph()
}

pub fn parse_phase(text: &str) -> Result<PhaseFraming> {
    Ok(parse_json::<PhaseDoc>(text)?.to_phase())
}

pub fn parse_bps_input(text: &str) -> Result<BpsInput> {
    parse_json(text)
}

pub fn graph_to_json(g: &RibbonGraph) -> String {
    to_json(&GraphDoc::from_graph(g))
}

pub fn phase_to_json(pf: &PhaseFraming) -> String {
    to_json(&PhaseDoc::from_phase(pf))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homlattice::presets as phases;
    use crate::ribbon::presets as graphs;

    #[test]
    fn graph_roundtrip() {
        for name in graphs::NAMES {
            let g = graphs::by_name(name).unwrap();
            let text = graph_to_json(&g);
            let back = parse_graph(&text).unwrap();
            assert_eq!(graph_to_json(&back), text);
            assert_eq!(back.face_labels(), g.face_labels());
        }
    }

    #[test]
    fn phase_roundtrip() {
        let pf = phases::cube_std(vec![vec![1, 0, 0], vec![0, 0, 2], vec![0, 2, -1]]);
        let text = phase_to_json(&pf);
        assert_eq!(parse_phase(&text).unwrap(), pf);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_graph("{\"darts\": 2}"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_graph("{\"darts\": 3, \"alpha\": [1,0], \"sigma\": [0,1]}"),
            Err(Error::Parse(_))
        ));
        assert!(parse_graph("{\"darts\": 2, \"alpha\": [0,1], \"sigma\": [1,0]}").is_err());
    }
}
