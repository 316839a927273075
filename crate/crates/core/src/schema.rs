//! JSON file formats.
//!
//! Field elements are arrays of `m` exact rational strings, read against a
//! separately declared descriptor `{"r": "p/q", "m": k}`; a bare string is
//! accepted as shorthand for a rational element. Numbers are never floats.
//!
//! ```json
//! {"descriptor": {"r": "2", "m": 2}, "mode": "ap",
//!  "elements": [["1", "0"], ["0", "1"], ["2", "0"], ["0", "2"]]}
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::rational::{format_rational, parse_rational};
use crate::arith::{FieldElement, RootDescriptor};
use crate::cover::{CoverInstance, CoverSolution, Mode, Witness};
use crate::error::{Error, Result};
use crate::progression::{ArithmeticProgression, GeometricProgression};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorJson {
    pub r: String,
    pub m: u32,
}

impl DescriptorJson {
    pub fn parse(&self) -> Result<Arc<RootDescriptor>> {
        RootDescriptor::new(parse_rational(&self.r)?, self.m).map(Arc::new)
    }

    pub fn of(d: &RootDescriptor) -> Self {
        Self {
            r: format_rational(d.r()),
            m: d.m(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, expecting = "expected a rational string or an array of rational strings")]
pub enum ElementJson {
    Coords(Vec<String>),
    Scalar(String),
}

impl ElementJson {
    pub fn parse(&self, field: &Arc<RootDescriptor>) -> Result<FieldElement> {
        match self {
            ElementJson::Scalar(s) => Ok(FieldElement::from_rational(field.clone(), parse_rational(s)?)),
            ElementJson::Coords(cs) => {
                let coords = cs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
                FieldElement::from_coords(field.clone(), coords)
            }
        }
    }

    pub fn of(e: &FieldElement) -> Self {
        ElementJson::Coords(e.coords().iter().map(format_rational).collect())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApJson {
    pub v: ElementJson,
    pub d: ElementJson,
}

impl ApJson {
    pub fn parse(&self, field: &Arc<RootDescriptor>) -> Result<ArithmeticProgression> {
        ArithmeticProgression::new(self.v.parse(field)?, self.d.parse(field)?)
    }

    pub fn of(a: &ArithmeticProgression) -> Self {
        Self {
            v: ElementJson::of(a.start()),
            d: ElementJson::of(a.difference()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GpJson {
    pub u: ElementJson,
    pub q: ElementJson,
}

impl GpJson {
    pub fn parse(&self, field: &Arc<RootDescriptor>) -> Result<GeometricProgression> {
        GeometricProgression::new(self.u.parse(field)?, self.q.parse(field)?)
    }

    pub fn of(g: &GeometricProgression) -> Self {
        Self {
            u: ElementJson::of(g.start()),
            q: ElementJson::of(g.ratio()),
        }
    }
}

fn field_of(d: &Option<DescriptorJson>) -> Result<Arc<RootDescriptor>> {
    match d {
        Some(d) => d.parse(),
        None => Ok(Arc::new(RootDescriptor::rationals())),
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Cover instance file: `{"descriptor": ..., "mode": "ap"|"gp", "elements": [...]}`.
///
/// A missing descriptor means Q; `mode` is optional.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default)]
    pub descriptor: Option<DescriptorJson>,
    #[serde(default)]
    pub mode: Option<Mode>,
    pub elements: Vec<ElementJson>,
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn instance(&self) -> Result<CoverInstance> {
        let field = field_of(&self.descriptor)?;
        let elements = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| e.parse(&field).map_err(|err| annotate(err, &format!("elements[{i}]"))))
            .collect::<Result<Vec<_>>>()?;
        CoverInstance::new(field, elements)
    }
}

fn annotate(err: Error, at: &str) -> Error {
    match err {
        Error::Parse(m) => Error::Parse(format!("{at}: {m}")),
        Error::Domain(m) => Error::Domain(format!("{at}: {m}")),
        Error::Usage(m) => Error::Usage(format!("{at}: {m}")),
        other => other,
    }
}

/// Progression file: a descriptor header plus an AP and/or a GP.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgressionFile {
    #[serde(default)]
    pub descriptor: Option<DescriptorJson>,
    #[serde(default)]
    pub ap: Option<ApJson>,
    #[serde(default)]
    pub gp: Option<GpJson>,
}

impl ProgressionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn field(&self) -> Result<Arc<RootDescriptor>> {
        field_of(&self.descriptor)
    }

    pub fn ap(&self) -> Result<ArithmeticProgression> {
        let ap = self
            .ap
            .as_ref()
            .ok_or_else(|| Error::Parse("missing \"ap\" object".into()))?;
        ap.parse(&self.field()?).map_err(|e| annotate(e, "ap"))
    }

    pub fn gp(&self) -> Result<GeometricProgression> {
        let gp = self
            .gp
            .as_ref()
            .ok_or_else(|| Error::Parse("missing \"gp\" object".into()))?;
        gp.parse(&self.field()?).map_err(|e| annotate(e, "gp"))
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessJson {
    Ap { v: ElementJson, d: ElementJson },
    Gp { u: ElementJson, q: ElementJson },
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockJson {
    pub members: Vec<usize>,
    pub elements: Vec<ElementJson>,
    pub witness: WitnessJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionJson {
    pub descriptor: DescriptorJson,
    pub mode: Mode,
    pub size: usize,
    pub count: usize,
    pub exact: bool,
    pub blocks: Vec<BlockJson>,
}

impl SolutionJson {
    pub fn of(instance: &CoverInstance, mode: Mode, solution: &CoverSolution) -> Self {
        let blocks = solution
            .blocks
            .iter()
            .map(|b| BlockJson {
                members: b.members.clone(),
                elements: b
                    .members
                    .iter()
                    .map(|&i| ElementJson::of(&instance.elements()[i]))
                    .collect(),
                witness: match &b.witness {
                    Witness::Ap(a) => WitnessJson::Ap {
                        v: ElementJson::of(a.start()),
                        d: ElementJson::of(a.difference()),
                    },
                    Witness::Gp(g) => WitnessJson::Gp {
                        u: ElementJson::of(g.start()),
                        q: ElementJson::of(g.ratio()),
                    },
                },
            })
            .collect();
        Self {
            descriptor: DescriptorJson::of(instance.descriptor()),
            mode,
            size: instance.len(),
            count: solution.count,
            exact: solution.exact,
            blocks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::min_ap_cover;

    #[test]
    fn instance_round_trip() {
        let text = r#"{"descriptor": {"r": "2", "m": 2}, "mode": "ap",
            "elements": [["1", "0"], ["0", "1"], ["2", "0"], ["0", "2"]]}"#;
        let file = InstanceFile::from_json(text).unwrap();
        let inst = file.instance().unwrap();
        let sol = min_ap_cover(&inst).unwrap();
        let json = serde_json::to_value(SolutionJson::of(&inst, file.mode.unwrap(), &sol)).unwrap();
        assert_eq!(json["count"], 2);
        assert_eq!(json["blocks"][0]["witness"]["kind"], "ap");
        assert_eq!(json["descriptor"]["m"], 2);
    }

    #[test]
    fn scalar_shorthand_and_default_field() {
        let file = InstanceFile::from_json(r#"{"elements": ["2", "6", ["18"]]}"#).unwrap();
        assert_eq!(file.instance().unwrap().len(), 3);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = InstanceFile::from_json("{\"mode\": \"ap\",\n \"elements\": [1.5]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let file = InstanceFile::from_json(r#"{"mode": "ap", "elements": ["1/0"]}"#).unwrap();
        let err = file.instance().unwrap_err();
        assert!(err.to_string().contains("elements[0]"), "{err}");
        let file = InstanceFile::from_json(
            r#"{"descriptor": {"r": "4", "m": 2}, "mode": "ap", "elements": []}"#,
        )
        .unwrap();
        assert!(file.instance().unwrap_err().to_string().contains("not normalized"));
        let file = InstanceFile::from_json(
            r#"{"descriptor": {"r": "2", "m": 2}, "mode": "ap", "elements": [["1"]]}"#,
        )
        .unwrap();
        assert!(file.instance().is_err());
    }

    #[test]
    fn progression_file() {
        let f = ProgressionFile::from_json(
            r#"{"descriptor": {"r": "2", "m": 2},
                "ap": {"v": "0", "d": "1"}, "gp": {"u": ["1", "0"], "q": ["0", "1"]}}"#,
        )
        .unwrap();
        assert!(f.ap().is_ok());
        assert_eq!(f.gp().unwrap().ratio().coords()[1], crate::arith::rational::int(1));
        let g = ProgressionFile::from_json(r#"{"ap": {"v": "0", "d": "1"}}"#).unwrap();
        assert!(matches!(g.gp(), Err(Error::Parse(_))));
    }
}
