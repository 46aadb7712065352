//! JSON encodings of fields, pairs, nets, states, probability tables and
//! basis families. Field elements are always strings in the notation of
//! [`Field::parse`]; complex numbers are `[re, im]` with 12 significant digits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{all_lines, line_index, Line, PhasePoint};
use crate::gf::{make_field_with_cap, Field, FieldBasis, FieldElement, DEFAULT_FIELD_CAP};
use crate::linalg::{round_sig, CMatrix, C64};
use crate::mub::MubFamily;
use crate::net::{build_net, QuantumNet, RayChoice};
use crate::weylops::BasisPair;
use crate::wigner::{DensityMatrix, ProbabilityKind};

/// Field size cap for files and the command line, raised by `WIGNERFF_CAP`.
pub fn field_cap() -> u64 {
    let env = std::env::var("WIGNERFF_CAP").ok().and_then(|s| s.trim().parse::<u64>().ok());
    env.map_or(DEFAULT_FIELD_CAP, |c| c.max(DEFAULT_FIELD_CAP))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub r: u32,
    pub n: u32,
}

impl From<Field> for FieldJson {
    fn from(f: Field) -> Self {
        FieldJson { r: f.r(), n: f.n() }
    }
}

impl FieldJson {
    pub fn field(self) -> Result<Field> {
        make_field_with_cap(self.r, self.n, field_cap())
    }
}

/// Parse `"r^n"` or a bare prime `"r"`.
pub fn parse_field_spec(s: &str) -> Result<Field> {
    let err = || Error::Parse { what: "field (expected r^n)", input: s.to_string() };
    let (r, n) = match s.split_once('^') {
        Some((r, n)) => (r.trim().parse().map_err(|_| err())?, n.trim().parse().map_err(|_| err())?),
        None => (s.trim().parse().map_err(|_| err())?, 1),
    };
    make_field_with_cap(r, n, field_cap())
}

pub fn element_strings(xs: &[FieldElement]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn parse_elements(field: Field, xs: &[String]) -> Result<Vec<FieldElement>> {
    xs.iter().map(|s| field.parse(s)).collect()
}

pub fn point_json(a: PhasePoint) -> [String; 2] {
    [a.q.to_string(), a.p.to_string()]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineJson {
    pub a: String,
    pub b: String,
    pub c: String,
}

impl From<Line> for LineJson {
    fn from(l: Line) -> Self {
        LineJson { a: l.a().to_string(), b: l.b().to_string(), c: l.c().to_string() }
    }
}

impl LineJson {
    pub fn line(&self, field: Field) -> Result<Line> {
        Line::new(field.parse(&self.a)?, field.parse(&self.b)?, field.parse(&self.c)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "E")]
    pub e: Vec<String>,
    #[serde(rename = "F")]
    pub f: Vec<String>,
}

impl From<&BasisPair> for PairJson {
    fn from(p: &BasisPair) -> Self {
        PairJson { e: element_strings(p.e().elems()), f: element_strings(p.f().elems()) }
    }
}

impl PairJson {
    pub fn pair(&self, field: Field) -> Result<BasisPair> {
        let e = FieldBasis::new(parse_elements(field, &self.e)?)?;
        let f = FieldBasis::new(parse_elements(field, &self.f)?)?;
        BasisPair::new(e, f)
    }
}

/// A pair file also carries its field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    pub field: FieldJson,
    #[serde(flatten)]
    pub pair: PairJson,
}

impl PairFile {
    pub fn pair(&self) -> Result<BasisPair> {
        self.pair.pair(self.field.field()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetFile {
    pub field: FieldJson,
    pub pair: PairJson,
    pub choice: Vec<String>,
}

impl NetFile {
    pub fn from_net(net: &QuantumNet) -> Self {
        NetFile {
            field: net.field().into(),
            pair: net.pair().into(),
            choice: element_strings(net.choice().labels()),
        }
    }

    pub fn build(&self) -> Result<QuantumNet> {
        let field = self.field.field()?;
        let pair = self.pair.pair(field)?;
        build_net(&pair, RayChoice::new(parse_elements(field, &self.choice)?)?)
    }
}

/// A density matrix or an amplitude vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateFile {
    Matrix(CMatrix),
    Vector(Vec<[f64; 2]>),
}

impl StateFile {
    pub fn density(&self) -> Result<DensityMatrix> {
        match self {
            StateFile::Matrix(m) => DensityMatrix::new(m.clone()),
            StateFile::Vector(v) => DensityMatrix::pure(&v.iter().map(|&[re, im]| C64::new(re, im)).collect::<Vec<_>>()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineValue {
    #[serde(flatten)]
    pub line: LineJson,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityFile {
    pub field: FieldJson,
    #[serde(default)]
    pub kind: ProbabilityKind,
    pub lines: Vec<LineValue>,
}

impl ProbabilityFile {
    pub fn from_values(field: Field, kind: ProbabilityKind, values: &[f64]) -> Self {
        let lines = all_lines(field)
            .into_iter()
            .zip(values)
            .map(|(l, &v)| LineValue { line: l.into(), value: round_sig(v) })
            .collect();
        ProbabilityFile { field: field.into(), kind, lines }
    }

    /// Values in [`all_lines`] order; every line must occur exactly once.
    pub fn values(&self) -> Result<(Field, Vec<f64>)> {
        let field = self.field.field()?;
        let n = field.order();
        let mut out = vec![None; n * (n + 1)];
        for lv in &self.lines {
            let i = line_index(lv.line.line(field)?);
            if out[i].replace(lv.value).is_some() {
                return Err(Error::Parse { what: "probability file (duplicate line)", input: format!("{:?}", lv.line) });
            }
        }
        let values = out
            .into_iter()
            .collect::<Option<Vec<f64>>>()
            .ok_or_else(|| Error::Parse { what: "probability file (missing lines)", input: format!("{} of {}", self.lines.len(), n * (n + 1)) })?;
        Ok((field, values))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledVector {
    pub label: String,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub striation: usize,
    pub direction: [String; 2],
    pub vectors: Vec<LabeledVector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MubJson {
    pub field: FieldJson,
    pub pair: PairJson,
    pub bases: Vec<BasisJson>,
}

impl From<&MubFamily> for MubJson {
    fn from(fam: &MubFamily) -> Self {
        let bases = fam
            .bases
            .iter()
            .map(|b| BasisJson {
                striation: b.striation,
                direction: point_json(b.direction),
                vectors: b
                    .labels
                    .iter()
                    .zip(&b.vectors)
                    .map(|(l, v)| LabeledVector {
                        label: l.to_string(),
                        amplitudes: v.iter().map(|z| [round_sig(z.re), round_sig(z.im)]).collect(),
                    })
                    .collect(),
            })
            .collect();
        MubJson { field: fam.pair.field().into(), pair: (&fam.pair).into(), bases }
    }
}

pub fn to_json_pretty<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable value")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str, what: &'static str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse { what, input: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::presets;

    #[test]
    fn field_spec_parsing() {
        assert_eq!(parse_field_spec("2^2").unwrap(), make_field(2, 2).unwrap());
        assert_eq!(parse_field_spec("7").unwrap(), make_field(7, 1).unwrap());
        assert!(parse_field_spec("4").is_err());
        assert!(parse_field_spec("x^2").is_err());
    }

    #[test]
    fn net_file_round_trip() {
        let net = presets::net("paper-n4").unwrap();
        let text = to_json_pretty(&NetFile::from_net(&net));
        let back: NetFile = from_json(&text, "net").unwrap();
        let net2 = back.build().unwrap();
        assert_eq!(net2.choice(), net.choice());
        assert!(text.contains("\"E\""));
    }

    #[test]
    fn state_file_forms() {
        let v: StateFile = from_json("[[1,0],[0,0]]", "state").unwrap();
        assert!(matches!(v, StateFile::Vector(_)));
        assert_eq!(v.density().unwrap().dim(), 2);
        let m: StateFile = from_json("[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]", "state").unwrap();
        assert!(matches!(m, StateFile::Matrix(_)));
        assert!(m.density().is_ok());
    }

    #[test]
    fn probability_file_round_trip() {
        let f = make_field(3, 1).unwrap();
        let vals: Vec<f64> = (0..12).map(|i| [0.2, 0.3, 0.5][i % 3]).collect();
        let pf = ProbabilityFile::from_values(f, ProbabilityKind::Probabilities, &vals);
        let text = to_json_pretty(&pf);
        assert!(text.contains("\"kind\": \"probabilities\""));
        let back: ProbabilityFile = from_json(&text, "probabilities").unwrap();
        assert_eq!(back.values().unwrap().1, vals);
        let mut short = back.clone();
        short.lines.pop();
        assert!(short.values().is_err());
    }
}
