//! JSON encodings of maps, terrains, words and cost reports.
//!
//! Rationals travel as strings (`"3"`, `"-7/2"`); integers are also accepted
//! as bare JSON numbers on input. Output is always canonical: lowest terms,
//! positive denominator, no `"/1"`.

use std::fmt;

use ordaut_core::rational::parse_rational;
use ordaut_core::{
    CostReport, ExtendedRational, Knot, Letter, PlAutomorphism, PlError, Rational, Terrain, TerrainElement, Word,
    WordError,
};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A rational in its canonical string form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational such as \"3\" or \"-7/2\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).ok_or_else(|| E::custom(format!("not a rational: {v:?}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

/// An endpoint: a rational, `"-inf"` or `"+inf"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint(pub ExtendedRational);

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Endpoint).map_err(|_| de::Error::custom(format!("not an endpoint: {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotJson {
    pub x: Q,
    pub y: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlJson {
    pub knots: Vec<KnotJson>,
    pub left_slope: Q,
    pub right_slope: Q,
}

impl From<&PlAutomorphism> for PlJson {
    fn from(g: &PlAutomorphism) -> Self {
        PlJson {
            knots: g.knots().iter().map(|k| KnotJson { x: Q(k.x.clone()), y: Q(k.y.clone()) }).collect(),
            left_slope: Q(g.left_slope().clone()),
            right_slope: Q(g.right_slope().clone()),
        }
    }
}

impl TryFrom<PlJson> for PlAutomorphism {
    type Error = PlError;

    fn try_from(j: PlJson) -> Result<Self, PlError> {
        let knots = j.knots.into_iter().map(|k| Knot::new(k.x.0, k.y.0)).collect();
        PlAutomorphism::new(knots, j.left_slope.0, j.right_slope.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub color: String,
    pub lo: Endpoint,
    pub hi: Endpoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerrainJson {
    pub elements: Vec<ElementJson>,
}

impl From<&TerrainElement> for ElementJson {
    fn from(e: &TerrainElement) -> Self {
        ElementJson { color: e.color.symbol().to_string(), lo: Endpoint(e.lo.clone()), hi: Endpoint(e.hi.clone()) }
    }
}

impl From<&Terrain> for TerrainJson {
    fn from(t: &Terrain) -> Self {
        TerrainJson { elements: t.elements.iter().map(ElementJson::from).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterJson {
    pub var: u32,
    pub exp: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordJson {
    pub letters: Vec<LetterJson>,
}

impl From<&Word> for WordJson {
    fn from(w: &Word) -> Self {
        WordJson { letters: w.letters().iter().map(|l| LetterJson { var: l.var, exp: l.exp }).collect() }
    }
}

impl TryFrom<WordJson> for Word {
    type Error = WordError;

    fn try_from(j: WordJson) -> Result<Self, WordError> {
        Word::new(j.letters.into_iter().map(|l| Letter::new(l.var, l.exp)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReportJson {
    pub mode: String,
    pub index: i64,
    pub oracle_calls: u64,
    pub ff_steps: u64,
}

impl From<&CostReport> for CostReportJson {
    fn from(r: &CostReport) -> Self {
        CostReportJson { mode: r.mode.name().to_string(), index: r.index, oracle_calls: r.oracle_calls, ff_steps: r.ff_steps }
    }
}

/// One point of a sampled graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub x: Q,
    pub y: Q,
}

pub fn parse_pl(text: &str) -> anyhow::Result<PlAutomorphism> {
    let j: PlJson = serde_json::from_str(text)?;
    Ok(j.try_into()?)
}

pub fn parse_word(text: &str) -> anyhow::Result<Word> {
    let j: WordJson = serde_json::from_str(text)?;
    Ok(j.try_into()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ordaut_core::rational::{int, rat};
    use ordaut_core::support_decompose;

    #[test]
    fn pl_roundtrip() {
        let text = r#"{"knots":[{"x":"0","y":"0"},{"x":"1/3","y":2},{"x":"1","y":"+3"}],"left_slope":"1","right_slope":"2/4"}"#;
        let g = parse_pl(text).unwrap();
        assert_eq!(g.eval(&rat(1, 6)), int(1));
        let out = serde_json::to_string(&PlJson::from(&g)).unwrap();
        assert_eq!(
            out,
            r#"{"knots":[{"x":"0","y":"0"},{"x":"1/3","y":"2"},{"x":"1","y":"3"}],"left_slope":"1","right_slope":"1/2"}"#
        );
        assert_eq!(parse_pl(&out).unwrap(), g);
    }

    #[test]
    fn pl_rejects_bad_input() {
        assert!(parse_pl(r#"{"knots":[{"x":"1","y":"0"},{"x":"0","y":"1"}],"left_slope":"1","right_slope":"1"}"#).is_err());
        assert!(parse_pl(r#"{"knots":[],"left_slope":"1/0","right_slope":"1"}"#).is_err());
        assert!(parse_pl(r#"{"knots":[],"left_slope":"1","right_slope":"1","extra":1}"#).is_err());
        assert!(parse_pl("[1, 2]").is_err());
    }

    #[test]
    fn terrain_and_word_shapes() {
        let t = support_decompose(&PlAutomorphism::affine(int(2), int(-3)));
        let out = serde_json::to_string(&TerrainJson::from(&t)).unwrap();
        assert_eq!(out, r#"{"elements":[{"color":"-","lo":"-inf","hi":"3"},{"color":"+","lo":"3","hi":"+inf"}]}"#);
        let back: TerrainJson = serde_json::from_str(&out).unwrap();
        assert_eq!(back, TerrainJson::from(&t));

        let w = parse_word(r#"{"letters":[{"var":2,"exp":1},{"var":3,"exp":-1}]}"#).unwrap();
        assert_eq!(w.to_string(), "x2 x3^-1");
        assert!(parse_word(r#"{"letters":[{"var":2,"exp":1},{"var":2,"exp":-1}]}"#).is_err());
    }
}
