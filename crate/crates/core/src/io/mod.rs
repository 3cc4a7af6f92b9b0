//! Text and JSON formats for algebras, morphisms and coverings.
//!
//! Both formats carry the same data. JSON documents are recognised by a
//! leading `{`; a JSON object with an `algebras` key is a bundle.

mod bundle;
mod document;
mod text;

pub use bundle::{
    BlockDoc, Bundle, CoveringDocument, GradingDoc, KindDoc, LabeledAlgebra, MorphismDocument, ResolvedBundle,
};
pub use document::{
    load, load_unchecked, load_with_report, AlgebraDocument, BasisDoc, BracketDoc, GeneratorDoc, TermDoc,
};
pub use text::{is_bundle_text, parse_algebra, parse_bundle, serialize_algebra, serialize_bundle};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Domain(format!("unknown format `{s}`; expected text or json"))),
        }
    }
}

/// Either kind of input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Algebra(AlgebraDocument),
    Bundle(Bundle),
}

fn looks_like_json(s: &str) -> bool {
    s.trim_start().starts_with('{')
}

/// Parses text or JSON, algebra document or bundle.
pub fn parse_input(s: &str) -> Result<Input> {
    if looks_like_json(s) {
        let v: serde_json::Value = serde_json::from_str(s)?;
        if v.get("algebras").is_some() {
            Ok(Input::Bundle(serde_json::from_value(v)?))
        } else {
            Ok(Input::Algebra(serde_json::from_value(v)?))
        }
    } else if is_bundle_text(s) {
        Ok(Input::Bundle(parse_bundle(s)?))
    } else {
        Ok(Input::Algebra(parse_algebra(s)?))
    }
}

/// Parses an algebra document in either format.
pub fn parse_algebra_any(s: &str) -> Result<AlgebraDocument> {
    match parse_input(s)? {
        Input::Algebra(d) => Ok(d),
        Input::Bundle(_) => Err(Error::Semantic("expected an algebra document, found a bundle".into())),
    }
}

/// Parses a bundle in either format.
pub fn parse_bundle_any(s: &str) -> Result<Bundle> {
    match parse_input(s)? {
        Input::Bundle(b) => Ok(b),
        Input::Algebra(_) => Err(Error::Semantic("expected a bundle, found an algebra document".into())),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

pub fn write_algebra(doc: &AlgebraDocument, format: Format) -> String {
    match format {
        Format::Text => serialize_algebra(doc),
        Format::Json => to_json(doc),
    }
}

pub fn write_bundle(b: &Bundle, format: Format) -> String {
    match format {
        Format::Text => serialize_bundle(b),
        Format::Json => to_json(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::build_gl_zgraded;
    use crate::functors::f_prime_n;

    #[test]
    fn json_and_text_carry_the_same_document() {
        let g = build_gl_zgraded(&[1, 1], true).unwrap();
        let doc = AlgebraDocument::from_functor_output(&f_prime_n(&g, 2).unwrap());
        let t = parse_algebra_any(&write_algebra(&doc, Format::Text)).unwrap();
        let j = parse_algebra_any(&write_algebra(&doc, Format::Json)).unwrap();
        assert_eq!(t, doc);
        assert_eq!(j, doc);
    }

    #[test]
    fn kinds_are_detected() {
        assert!(matches!(parse_input("algebra x\n").unwrap(), Input::Algebra(_)));
        assert!(matches!(parse_input("{\"algebras\": []}").unwrap(), Input::Bundle(_)));
        assert!(matches!(parse_input("{\"name\": \"z\"}").unwrap(), Input::Algebra(_)));
        assert!(parse_bundle_any("algebra x\n").is_err());
        assert!(matches!(parse_input("{\"name\": 3}"), Err(Error::Json(_))));
    }
}
