//! Ring-spec grammar and family dispatch.
//!
//! A ring spec is one of `Z`, `Zmod:<p>^<k>`, or `A<n>:<orient>;q=<p>`.
//! The integer family additionally takes universe bounds (prime support,
//! exponent cap, free-rank cap) that are not part of the spec string.

use crate::categories::{ChainCategory, QuiverCategory, ZCategory};
use crate::engine::EngineError;
use crate::quiver::LineQuiver;

/// A parsed ring spec, before universe construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    Chain { p: u64, k: u32 },
    PathAlgebra { n: usize, orientation: String, q: u64 },
}

impl RingSpec {
    pub fn parse(s: &str) -> Result<RingSpec, EngineError> {
        let t = s.trim();
        if t == "Z" {
            return Ok(RingSpec::Integers);
        }
        if let Some(rest) = t.strip_prefix("Zmod:") {
            let (p_str, k_str) = rest.split_once('^').ok_or_else(|| {
                EngineError::Parse(t.to_string(), "expected Zmod:<p>^<k>".into())
            })?;
            let p = p_str.parse::<u64>().map_err(|_| {
                EngineError::Parse(p_str.to_string(), "modulus base must be a number".into())
            })?;
            let k = k_str.parse::<u32>().map_err(|_| {
                EngineError::Parse(k_str.to_string(), "modulus exponent must be a number".into())
            })?;
            return Ok(RingSpec::Chain { p, k });
        }
        if let Some(rest) = t.strip_prefix('A') {
            let (head, tail) = rest.split_once(':').ok_or_else(|| {
                EngineError::Parse(t.to_string(), "expected A<n>:<orient>;q=<p>".into())
            })?;
            let n = head.parse::<usize>().map_err(|_| {
                EngineError::Parse(head.to_string(), "vertex count must be a number".into())
            })?;
            let (orient, q_part) = tail.split_once(';').ok_or_else(|| {
                EngineError::Parse(t.to_string(), "missing ;q=<p> suffix".into())
            })?;
            let q_str = q_part.strip_prefix("q=").ok_or_else(|| {
                EngineError::Parse(q_part.to_string(), "expected q=<p>".into())
            })?;
            let q = q_str.parse::<u64>().map_err(|_| {
                EngineError::Parse(q_str.to_string(), "field size must be a number".into())
            })?;
            return Ok(RingSpec::PathAlgebra { n, orientation: orient.to_string(), q });
        }
        Err(EngineError::Parse(
            t.to_string(),
            "expected Z, Zmod:<p>^<k>, or A<n>:<orient>;q=<p>".into(),
        ))
    }
}

/// One of the three supported module categories, behind a single handle.
#[derive(Debug, Clone)]
pub enum AnyCategory {
    Integers(ZCategory),
    Chain(ChainCategory),
    Quiver(QuiverCategory),
}

/// Universe bounds for the integer family; ignored by the others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniverseBounds {
    pub primes: Vec<u64>,
    pub maxexp: u32,
    pub maxrank: usize,
}

impl Default for UniverseBounds {
    fn default() -> Self {
        UniverseBounds { primes: vec![2, 3], maxexp: 2, maxrank: 1 }
    }
}

pub fn build_category(spec: &str, bounds: &UniverseBounds) -> Result<AnyCategory, EngineError> {
    match RingSpec::parse(spec)? {
        RingSpec::Integers => Ok(AnyCategory::Integers(ZCategory::new(
            bounds.primes.clone(),
            bounds.maxexp,
            bounds.maxrank,
        )?)),
        RingSpec::Chain { p, k } => Ok(AnyCategory::Chain(ChainCategory::new(p, k)?)),
        RingSpec::PathAlgebra { n, orientation, q } => {
            let quiver = LineQuiver::new(n, &orientation, q)?;
            Ok(AnyCategory::Quiver(QuiverCategory::new(quiver)))
        }
    }
}

/// Runs a generic body against the concrete category inside an
/// [`AnyCategory`]. The body is monomorphized per family, so it can use the
/// full `ModuleCategory` trait surface.
#[macro_export]
macro_rules! with_category {
    ($any:expr, |$cat:ident| $body:expr) => {
        match $any {
            $crate::rings::AnyCategory::Integers($cat) => $body,
            $crate::rings::AnyCategory::Chain($cat) => $body,
            $crate::rings::AnyCategory::Quiver($cat) => $body,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ModuleCategory;

    #[test]
    fn spec_round_trips_to_categories() {
        let b = UniverseBounds::default();
        let z = build_category("Z", &b).unwrap();
        with_category!(&z, |cat| assert_eq!(cat.ring_spec(), "Z"));
        let c = build_category("Zmod:2^3", &b).unwrap();
        with_category!(&c, |cat| assert_eq!(cat.ring_spec(), "Zmod:2^3"));
        let q = build_category("A4:><>;q=2", &b).unwrap();
        with_category!(&q, |cat| assert_eq!(cat.ring_spec(), "A4:><>;q=2"));
    }

    #[test]
    fn bad_specs_are_rejected_with_the_offending_token() {
        for bad in ["Q", "Zmod:6^2", "Zmod:2", "A1:;q=2", "A4:><>", "A4:><>;q=6", "A9:>>>>>>>>;q=2"] {
            assert!(build_category(bad, &UniverseBounds::default()).is_err(), "{bad}");
        }
        match RingSpec::parse("Zmod:x^2") {
            Err(EngineError::Parse(tok, _)) => assert_eq!(tok, "x"),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn empty_prime_support_gives_an_empty_torsion_universe() {
        let b = UniverseBounds { primes: vec![], maxexp: 1, maxrank: 0 };
        let z = build_category("Z", &b).unwrap();
        with_category!(&z, |cat| assert!(cat.indecomposables().is_empty()));
    }
}
