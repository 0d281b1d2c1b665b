//! Versioned JSON container for spaces and measures.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{GridMeasure, PointMeasure};
use crate::spacetime::{BoxRegion, CausalDagSpace, DagEdge, DagMetric, Event, MinkowskiSpace, SprinkledSpace};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub version: u32,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Minkowski { dimension: usize, bounds: Option<BoxRegion> },
    CausalDag { nodes: usize, edges: Vec<DagEdge>, metric: DagMetric },
    Sprinkled { dimension: usize, region: BoxRegion, intensity: f64, seed: u64, points: Vec<Event> },
    PointMeasure { support: Vec<Event>, weights: Vec<f64> },
    NodeMeasure { support: Vec<usize>, weights: Vec<f64> },
    GridMeasure(GridMeasure),
}

impl Document {
    pub fn new(body: Body) -> Self {
        Document { version: FORMAT_VERSION, body }
    }

    pub fn minkowski(space: &MinkowskiSpace) -> Self {
        Self::new(Body::Minkowski { dimension: space.dim(), bounds: space.bounds.clone() })
    }

    pub fn dag(space: &CausalDagSpace) -> Self {
        Self::new(Body::CausalDag { nodes: space.len(), edges: space.edges().to_vec(), metric: space.metric().clone() })
    }

    pub fn sprinkled(space: &SprinkledSpace) -> Self {
        Self::new(Body::Sprinkled {
            dimension: space.parent.dim(),
            region: space.region.clone(),
            intensity: space.intensity,
            seed: space.seed,
            points: space.points().to_vec(),
        })
    }

    pub fn point_measure(mu: &PointMeasure<Event>) -> Self {
        Self::new(Body::PointMeasure { support: mu.support().to_vec(), weights: mu.weights().to_vec() })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text)?;
        if doc.version != FORMAT_VERSION {
            return Err(Error::Serialization(format!("unsupported document version {}", doc.version)));
        }
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn into_minkowski(self) -> Result<MinkowskiSpace> {
        match self.body {
            Body::Minkowski { dimension, bounds } => {
                if dimension < 2 {
                    return Err(Error::Serialization("Minkowski dimension must be at least 2".into()));
                }
                match bounds {
                    Some(b) => MinkowskiSpace::with_bounds(dimension - 1, b),
                    None => Ok(MinkowskiSpace::new(dimension - 1)),
                }
            }
            other => Err(wrong_kind("minkowski", &other)),
        }
    }

    pub fn into_dag(self) -> Result<CausalDagSpace> {
        match self.body {
            Body::CausalDag { nodes, edges, metric } => CausalDagSpace::with_metric(nodes, edges, metric),
            other => Err(wrong_kind("causal-dag", &other)),
        }
    }

    pub fn into_sprinkled(self) -> Result<SprinkledSpace> {
        match self.body {
            Body::Sprinkled { dimension, region, intensity, seed, points } => {
                if dimension < 2 {
                    return Err(Error::Serialization("Minkowski dimension must be at least 2".into()));
                }
                SprinkledSpace::from_points(MinkowskiSpace::new(dimension - 1), region, intensity, seed, points)
            }
            other => Err(wrong_kind("sprinkled", &other)),
        }
    }

    pub fn into_point_measure(self) -> Result<PointMeasure<Event>> {
        match self.body {
            Body::PointMeasure { support, weights } => PointMeasure::new(support, weights),
            other => Err(wrong_kind("point-measure", &other)),
        }
    }
}

fn wrong_kind(expected: &str, body: &Body) -> Error {
    let found = serde_json::to_value(body)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(str::to_string))
        .unwrap_or_default();
    Error::Serialization(format!("expected a {expected} document, found {found}"))
}

/// Serializes `f64` values that may be infinite: finite values as numbers,
/// infinities as the strings `"inf"` and `"-inf"`.
pub mod extended_float {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if *x == f64::INFINITY {
            s.serialize_str("inf")
        } else if *x == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else {
            s.serialize_f64(*x)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(serde::de::Error::custom(format!("not a number: {t}"))),
            },
        }
    }
}

/// [`extended_float`] applied element-wise.
pub mod extended_float_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Wrapped(#[serde(with = "super::extended_float")] f64);

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| Wrapped(*x)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Ok(Vec::<Wrapped>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

/// [`extended_float_vec`] for optional vectors.
pub mod extended_float_opt_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Wrapped(#[serde(with = "super::extended_float_vec")] Vec<f64>);

    pub fn serialize<S: Serializer>(xs: &Option<Vec<f64>>, s: S) -> Result<S::Ok, S::Error> {
        xs.as_ref().map(|v| Wrapped(v.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<f64>>, D::Error> {
        Ok(Option::<Wrapped>::deserialize(d)?.map(|w| w.0))
    }
}
