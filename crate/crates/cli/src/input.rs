use std::path::Path;

use hyperspline::{DataSet, EndCondition, EndKind, Partition, TensionParam};
use serde::Deserialize;

use crate::{FitArgs, FitFamily, Failure};

pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndSpec {
    #[serde(rename = "type", deserialize_with = "de_end")]
    pub kind: EndKind,
    pub left: Option<f64>,
    pub right: Option<f64>,
}

fn de_end<'de, D: serde::Deserializer<'de>>(d: D) -> Result<EndKind, D::Error> {
    let s = String::deserialize(d)?;
    crate::parse_end(&s).map_err(serde::de::Error::custom)
}

/// The request document as written; every field but `x`, `y` may also come
/// from flags, which take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRequest {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub alpha: Option<f64>,
    pub order: Option<u8>,
    pub family: Option<FitFamily>,
    pub end: Option<EndSpec>,
    pub slopes: Option<Vec<f64>>,
    pub samples: Option<usize>,
}

/// A validated fit request.
#[derive(Debug, Clone)]
pub struct FitRequest {
    pub partition: Partition,
    pub data: DataSet,
    pub alpha: TensionParam,
    pub order: u8,
    pub family: FitFamily,
    pub end: Option<EndCondition>,
    pub slopes: Option<Vec<f64>>,
    pub samples: usize,
    /// Warnings to print before fitting.
    pub warnings: Vec<String>,
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> Result<RawRequest, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct Row {
    x: f64,
    y: f64,
}

pub fn read_csv(path: &Path) -> Result<RawRequest, Failure> {
    let text = read(path)?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "y" {
        return Err(invalid(format!("{}: header must be x,y", path.display())));
    }
    let mut raw = RawRequest::default();
    for row in reader.deserialize::<Row>() {
        let row = row.map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        raw.x.push(row.x);
        raw.y.push(row.y);
    }
    Ok(raw)
}

/// Nodes and data of a request, validated.
pub fn points(raw: &RawRequest) -> Result<(Partition, DataSet), Failure> {
    let partition = Partition::new(raw.x.clone())?;
    let data = DataSet::new(raw.y.clone());
    data.check(&partition)?;
    Ok((partition, data))
}

impl FitRequest {
    pub fn build(raw: RawRequest, args: &FitArgs) -> Result<Self, Failure> {
        let (partition, data) = points(&raw)?;
        let alpha = args.alpha.or(raw.alpha).ok_or_else(|| invalid("alpha is required"))?;
        let alpha = TensionParam::new(alpha)?;
        let order = args.order.or(raw.order).ok_or_else(|| invalid("order is required"))?;
        if order != 1 && order != 2 {
            return Err(invalid(format!("order must be 1 or 2, got {order}")));
        }
        let family = args.family.or(raw.family).ok_or_else(|| invalid("family is required"))?;
        let samples = args.samples.or(raw.samples).unwrap_or(DEFAULT_SAMPLES);
        if samples == 0 {
            return Err(invalid("samples must be positive"));
        }
        let mut spec = raw.end;
        if let Some(kind) = args.end {
            spec = Some(EndSpec { kind, left: None, right: None });
        }
        if let Some(s) = spec.as_mut() {
            s.left = args.left.or(s.left);
            s.right = args.right.or(s.right);
        }
        let mut warnings = Vec::new();
        let slopes = raw.slopes;
        if let Some(s) = &slopes {
            if s.len() != partition.nodes().len() {
                return Err(invalid(format!("slopes: expected {} values, got {}", partition.nodes().len(), s.len())));
            }
            if order != 2 || family != FitFamily::S {
                return Err(invalid("slopes are only used by order 2 family s (Hermite)"));
            }
        }
        let end = match (order, spec) {
            (1, Some(s)) => {
                if s.left.is_some() || s.right.is_some() {
                    warnings.push("order 1 fits take no end conditions; end payloads ignored".to_string());
                }
                None
            }
            (1, None) => None,
            (_, _) if slopes.is_some() => {
                if spec.is_some() {
                    warnings.push("Hermite fits take no end conditions; end ignored".to_string());
                }
                None
            }
            (_, None) => return Err(invalid("end is required for order 2")),
            (_, Some(s)) => Some(end_condition(s)?),
        };
        Ok(Self { partition, data, alpha, order, family, end, slopes, samples, warnings })
    }
}

fn end_condition(s: EndSpec) -> Result<EndCondition, Failure> {
    match s.kind {
        EndKind::TypeII => {
            if s.left.is_some() || s.right.is_some() {
                return Err(invalid("end type II takes no left/right payload"));
            }
            Ok(EndCondition::TypeII)
        }
        kind => match (s.left, s.right) {
            (Some(l), Some(r)) => Ok(EndCondition::new(kind, l, r)?),
            _ => Err(invalid(format!("end type {kind} needs both left and right"))),
        },
    }
}
