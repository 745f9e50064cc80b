//! Morphism arguments: JSON files or inline expressions.
//!
//! Expressions: `id:3`, `e:1@3`, `jw:4`, `cap`, `cup`, `p:1-2-1`, `z:[2,1]`,
//! `zl:[3]@3`, `reg:4@3`, `nil:4@3`.

use std::fs;
use std::path::Path;

use tl_core::rootspec::{evaluate_morphism, z_left_with, z_reg_nil_with};
use tl_core::tower::{central_idempotent_with, BratteliPath, IdempotentCache, YoungDiagram};
use tl_core::{CycloRing, Error, GenericRing, Morphism, Result, RingTag};

/// A morphism over ℚ(t) or over ℚ(τ).
#[derive(Clone, Debug)]
pub enum AnyMorphism {
    Generic(Morphism),
    Cyclo(Morphism<CycloRing>),
}

impl AnyMorphism {
    pub fn ell(&self) -> Option<u32> {
        match self {
            AnyMorphism::Generic(_) => None,
            AnyMorphism::Cyclo(m) => Some(m.ring().ell()),
        }
    }

    pub fn at(self, ell: u32) -> Result<Morphism<CycloRing>> {
        match self {
            AnyMorphism::Generic(m) => evaluate_morphism(&m, ell),
            AnyMorphism::Cyclo(m) if m.ring().ell() == ell => Ok(m),
            AnyMorphism::Cyclo(m) => Err(Error::RingMismatch(format!("morphism lives at ℓ = {}, not {ell}", m.ring().ell()))),
        }
    }

    pub fn generic(self) -> Result<Morphism> {
        match self {
            AnyMorphism::Generic(m) => Ok(m),
            AnyMorphism::Cyclo(m) => Err(Error::RingMismatch(format!("expected a generic morphism, got one at ℓ = {}", m.ring().ell()))),
        }
    }
}

/// The common ring of several arguments: `ell` if given, else the ring of any
/// specialized argument, else ℚ(t).
pub fn common_ell(ell: Option<u32>, args: &[&AnyMorphism]) -> Result<Option<u32>> {
    let mut out = ell;
    for a in args {
        match (out, a.ell()) {
            (Some(x), Some(y)) if x != y => return Err(Error::RingMismatch(format!("arguments at ℓ = {x} and ℓ = {y}"))),
            (None, Some(y)) => out = Some(y),
            _ => {}
        }
    }
    Ok(out)
}

pub fn load(arg: &str, cache: impl Fn() -> Result<IdempotentCache>) -> Result<AnyMorphism> {
    if arg.ends_with(".json") || Path::new(arg).is_file() {
        return load_json(&fs::read_to_string(arg)?);
    }
    parse_expr(arg, cache)
}

fn load_json(text: &str) -> Result<AnyMorphism> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let tag: RingTag = serde_json::from_value(value.get("ring").cloned().unwrap_or(serde_json::Value::Null))
        .map_err(|e| Error::Parse(format!("morphism ring: {e}")))?;
    Ok(match tag {
        RingTag::Generic => AnyMorphism::Generic(serde_json::from_value(value)?),
        RingTag::Cyclo(_) => AnyMorphism::Cyclo(serde_json::from_value(value)?),
    })
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

fn split_at_ell<'a>(body: &'a str, expr: &str) -> Result<(&'a str, u32)> {
    let (lhs, ell) = body.rsplit_once('@').ok_or_else(|| Error::Parse(format!("{expr:?} needs @ℓ")))?;
    Ok((lhs, number(ell, "ℓ")?))
}

pub fn parse_expr(expr: &str, cache: impl Fn() -> Result<IdempotentCache>) -> Result<AnyMorphism> {
    let g = GenericRing;
    let (head, body) = expr.split_once(':').unwrap_or((expr, ""));
    let m = match head.trim() {
        "cap" => Morphism::cap(g),
        "cup" => Morphism::cup(g),
        "id" => Morphism::identity(number(body, "size")?, g),
        "e" => {
            let (i, n) = body.split_once('@').ok_or_else(|| Error::Parse(format!("{expr:?} should look like e:i@n")))?;
            Morphism::generator(number(i, "index")?, number(n, "size")?, g)?
        }
        "jw" => (*cache()?.path_idempotent(&BratteliPath::single_row(number(body, "size")?))?).clone(),
        "p" => (*cache()?.path_idempotent(&BratteliPath::parse(body)?)?).clone(),
        "z" => central_idempotent_with(&cache()?, YoungDiagram::parse(body)?)?,
        "zl" => {
            let (l, ell) = split_at_ell(body, expr)?;
            z_left_with(&cache()?, YoungDiagram::parse(l)?, ell)?
        }
        "reg" | "nil" => {
            let (n, ell) = split_at_ell(body, expr)?;
            let (reg, nil) = z_reg_nil_with(&cache()?, number(n, "size")?, ell)?;
            if head == "reg" {
                reg
            } else {
                nil
            }
        }
        _ => return Err(Error::Parse(format!("unknown morphism {expr:?}"))),
    };
    Ok(AnyMorphism::Generic(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mem() -> Result<IdempotentCache> {
        Ok(IdempotentCache::in_memory())
    }

    #[test]
    fn atoms() {
        let e = parse_expr("e:1@3", mem).unwrap().generic().unwrap();
        assert_eq!(e, Morphism::generator(1, 3, GenericRing).unwrap());
        let jw = parse_expr("jw:2", mem).unwrap().generic().unwrap();
        assert_eq!(jw, tl_core::tower::jones_wenzl(2, &GenericRing).unwrap());
        assert_eq!(parse_expr("cap", mem).unwrap().generic().unwrap().cod(), 2);
        assert_eq!(parse_expr("p:1-2-1", mem).unwrap().generic().unwrap().dom(), 2);
        assert!(parse_expr("zl:[3]@3", mem).is_ok());
        assert!(matches!(parse_expr("x:3", mem), Err(Error::Parse(_))));
        assert!(matches!(parse_expr("zl:[3]", mem), Err(Error::Parse(_))));
    }

    #[test]
    fn rings_combine() {
        let g = AnyMorphism::Generic(Morphism::identity(1, GenericRing));
        let c = AnyMorphism::Cyclo(Morphism::identity(1, CycloRing::new(4).unwrap()));
        assert_eq!(common_ell(None, &[&g, &c]).unwrap(), Some(4));
        assert_eq!(common_ell(None, &[&g]).unwrap(), None);
        assert!(common_ell(Some(3), &[&c]).is_err());
    }
}
