//! The JSON instance format (`"format": 1`) and its compilation to kernel objects.

use std::fmt;
use std::sync::Arc;

use amalgam_core::ring::{ideal_generated, is_prime, product_capped, quotient, subring_closure};
use amalgam_core::semigroup::{small_ideals, NumericalSemigroup, SemigroupIdeal};
use amalgam_core::{amalgamate, AmalgamRing, CoreError, FiniteRing, Ring, RingHom};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::suites::Suite;

pub const FORMAT_VERSION: u32 = 1;

/// An element literal: an index into the ring's carrier, or for a product
/// ring a list with one literal per factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Index(usize),
    Tuple(Vec<Element>),
}

/// Constructor tree for a finite ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RingExpr {
    Zmod(usize),
    /// `F_p[x]/(modulus)`, coefficients listed from the constant term up.
    PolyQuot {
        p: u64,
        modulus: Vec<u64>,
    },
    Product(Vec<RingExpr>),
    Quotient {
        ring: Box<RingExpr>,
        ideal: Vec<Element>,
    },
    Subring {
        ring: Box<RingExpr>,
        seeds: Vec<Element>,
    },
    Table {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HomSpec {
    /// Images of a few elements; the rest is forced by the ring operations.
    Images(Vec<(Element, Element)>),
    /// The image of every element of `A`, in carrier order.
    Map(Vec<Element>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceBody {
    Finite {
        #[serde(rename = "A")]
        a: RingExpr,
        #[serde(rename = "B")]
        b: RingExpr,
        f: HomSpec,
        #[serde(rename = "J")]
        j: Vec<Element>,
    },
    /// Duplication of the semigroup ring along each listed ideal; all
    /// ideals with at most three generators when `ideals` is absent.
    Semigroup {
        generators: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ideals: Option<Vec<Vec<i64>>>,
    },
    /// `k[[S]] → k[[T]]`, `t^s ↦ t^{scale·s}`, along ideals of `T`.
    ScaledSemigroup {
        generators: Vec<u64>,
        scale: u64,
        target: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ideals: Option<Vec<Vec<i64>>>,
    },
    SeriesWitness {
        p: u64,
        precision: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub format: u32,
    pub name: String,
    #[serde(flatten)]
    pub body: InstanceBody,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<Suite>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error at {at}: {message}")]
    Semantic { at: String, message: String },
    #[error("resource cap: {0}")]
    Cap(CoreError),
}

impl InstanceError {
    fn semantic(at: &str, message: impl fmt::Display) -> Self {
        InstanceError::Semantic {
            at: at.to_string(),
            message: message.to_string(),
        }
    }

    fn from_core(at: &str, e: CoreError) -> Self {
        match e {
            CoreError::CapExceeded { .. } => InstanceError::Cap(e),
            e => Self::semantic(at, e),
        }
    }
}

impl InstanceBody {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceBody::Finite { .. } => "finite",
            InstanceBody::Semigroup { .. } => "semigroup",
            InstanceBody::ScaledSemigroup { .. } => "scaled-semigroup",
            InstanceBody::SeriesWitness { .. } => "series-witness",
        }
    }
}

impl InstanceSpec {
    /// Reads the JSON text without building any ring.
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let spec: InstanceSpec = serde_json::from_str(text).map_err(|e| {
            use serde_json::error::Category;
            let message = e.to_string();
            match e.classify() {
                Category::Data => InstanceError::Semantic {
                    at: format!("line {}, column {}", e.line(), e.column()),
                    message,
                },
                _ => InstanceError::Syntax {
                    line: e.line(),
                    column: e.column(),
                    message,
                },
            }
        })?;
        if spec.format != FORMAT_VERSION {
            return Err(InstanceError::semantic(
                "format",
                format!(
                    "unsupported format {}, expected {FORMAT_VERSION}",
                    spec.format
                ),
            ));
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance specs always serialize")
    }

    /// Suites to run: the listed ones, or every suite meaningful for the kind.
    pub fn selected_suites(&self) -> Vec<Suite> {
        if self.suites.is_empty() {
            Suite::ALL
                .iter()
                .copied()
                .filter(|s| s.applies_to(self.body.kind()))
                .collect()
        } else {
            self.suites.clone()
        }
    }

    /// Builds and validates every kernel object the instance describes.
    pub fn compile(&self, cap: usize) -> Result<Compiled, InstanceError> {
        match &self.body {
            InstanceBody::Finite { a, b, f, j } => compile_finite(a, b, f, j, cap),
            InstanceBody::Semigroup { generators, ideals } => {
                let s = semigroup("generators", generators)?;
                let ideals = semigroup_ideals(&s, ideals.as_deref())?;
                Ok(Compiled::Semigroup { s, ideals })
            }
            InstanceBody::ScaledSemigroup {
                generators,
                scale,
                target,
                ideals,
            } => {
                let s = semigroup("generators", generators)?;
                let t = semigroup("target", target)?;
                if *scale == 0 {
                    return Err(InstanceError::semantic("scale", "must be positive"));
                }
                if let Some(g) = s
                    .generators()
                    .iter()
                    .find(|&&g| !t.contains((g * scale) as i64))
                {
                    return Err(InstanceError::semantic(
                        "target",
                        format!(
                            "{scale}·{g} is not in T, so t^s ↦ t^(ds) does not map into k[[T]]"
                        ),
                    ));
                }
                let ideals = semigroup_ideals(&t, ideals.as_deref())?;
                Ok(Compiled::Scaled {
                    s,
                    d: *scale,
                    t,
                    ideals,
                })
            }
            InstanceBody::SeriesWitness { p, precision } => {
                if !(2..=64).contains(precision) {
                    return Err(InstanceError::semantic("precision", "must lie in 2..=64"));
                }
                if !is_prime(*p) {
                    return Err(InstanceError::semantic("p", format!("{p} is not prime")));
                }
                Ok(Compiled::Series {
                    p: *p,
                    precision: *precision,
                })
            }
        }
    }
}

/// Parses and compiles one instance document.
pub fn parse_instance(text: &str, cap: usize) -> Result<(InstanceSpec, Compiled), InstanceError> {
    let spec = InstanceSpec::from_json(text)?;
    let compiled = spec.compile(cap)?;
    Ok((spec, compiled))
}

/// Kernel objects ready for the suites.
#[derive(Debug, Clone)]
pub enum Compiled {
    Finite(Box<AmalgamRing>),
    /// An explicit table failed the ring axioms; carries the witness.
    Corrupted {
        at: &'static str,
        error: CoreError,
    },
    Semigroup {
        s: Arc<NumericalSemigroup>,
        ideals: Vec<SemigroupIdeal>,
    },
    Scaled {
        s: Arc<NumericalSemigroup>,
        d: u64,
        t: Arc<NumericalSemigroup>,
        ideals: Vec<SemigroupIdeal>,
    },
    Series {
        p: u64,
        precision: usize,
    },
}

fn semigroup(at: &str, gens: &[u64]) -> Result<Arc<NumericalSemigroup>, InstanceError> {
    NumericalSemigroup::new(gens).map_err(|e| InstanceError::semantic(at, e))
}

fn semigroup_ideals(
    s: &Arc<NumericalSemigroup>,
    listed: Option<&[Vec<i64>]>,
) -> Result<Vec<SemigroupIdeal>, InstanceError> {
    match listed {
        None => Ok(small_ideals(s)),
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(i, gens)| {
                SemigroupIdeal::new(s, gens)
                    .map_err(|e| InstanceError::semantic(&format!("ideals[{i}]"), e))
            })
            .collect(),
    }
}

/// Factor structure of a built ring, used to resolve tuple literals.
enum Shape {
    Leaf,
    Product(Vec<(usize, Shape)>),
}

struct Built {
    ring: Ring,
    shape: Shape,
}

enum BuildError {
    Instance(InstanceError),
    Corrupted(&'static str, CoreError),
}

impl From<InstanceError> for BuildError {
    fn from(e: InstanceError) -> Self {
        BuildError::Instance(e)
    }
}

fn resolve(built: &Built, el: &Element, at: &str) -> Result<usize, InstanceError> {
    resolve_in(&built.shape, built.ring.size(), el, at)
}

fn resolve_in(shape: &Shape, size: usize, el: &Element, at: &str) -> Result<usize, InstanceError> {
    match (el, shape) {
        (Element::Index(i), _) if *i < size => Ok(*i),
        (Element::Index(i), _) => Err(InstanceError::semantic(
            at,
            format!("element {i} out of range for a ring of size {size}"),
        )),
        (Element::Tuple(parts), Shape::Product(factors)) if parts.len() == factors.len() => {
            let mut index = 0;
            for (part, (n, sub)) in parts.iter().zip(factors) {
                index = index * n + resolve_in(sub, *n, part, at)?;
            }
            Ok(index)
        }
        (Element::Tuple(parts), Shape::Product(factors)) => Err(InstanceError::semantic(
            at,
            format!(
                "tuple of length {} for a product of {} factors",
                parts.len(),
                factors.len()
            ),
        )),
        (Element::Tuple(_), Shape::Leaf) => Err(InstanceError::semantic(
            at,
            "tuple literal for a ring that is not a product",
        )),
    }
}

fn build(expr: &RingExpr, at: &'static str, path: &str, cap: usize) -> Result<Built, BuildError> {
    let core = |e: CoreError| BuildError::Instance(InstanceError::from_core(path, e));
    Ok(match expr {
        RingExpr::Zmod(n) => Built {
            ring: FiniteRing::zmod_capped(*n, cap).map_err(core)?,
            shape: Shape::Leaf,
        },
        RingExpr::PolyQuot { p, modulus } => Built {
            ring: FiniteRing::poly_quot_capped(*p, modulus, cap).map_err(core)?,
            shape: Shape::Leaf,
        },
        RingExpr::Product(factors) => {
            if factors.is_empty() {
                return Err(InstanceError::semantic(path, "empty product").into());
            }
            let mut parts = Vec::new();
            let mut ring: Option<Ring> = None;
            for (i, factor) in factors.iter().enumerate() {
                let sub = build(factor, at, &format!("{path}.product[{i}]"), cap)?;
                ring = Some(match ring {
                    None => sub.ring.clone(),
                    Some(acc) => product_capped(&acc, &sub.ring, cap).map_err(core)?,
                });
                parts.push((sub.ring.size(), sub.shape));
            }
            let ring = ring.expect("nonempty product");
            if parts.len() == 1 {
                let (_, shape) = parts.pop().expect("one factor");
                Built { ring, shape }
            } else {
                Built {
                    ring,
                    shape: Shape::Product(parts),
                }
            }
        }
        RingExpr::Quotient { ring, ideal } => {
            let inner_path = format!("{path}.quotient");
            let inner = build(ring, at, &inner_path, cap)?;
            let gens = ideal
                .iter()
                .map(|el| resolve(&inner, el, &format!("{inner_path}.ideal")))
                .collect::<Result<Vec<_>, _>>()?;
            let i = ideal_generated(&inner.ring, &gens);
            let (q, _) = quotient(&inner.ring, &i).map_err(core)?;
            Built {
                ring: q,
                shape: Shape::Leaf,
            }
        }
        RingExpr::Subring { ring, seeds } => {
            let inner_path = format!("{path}.subring");
            let inner = build(ring, at, &inner_path, cap)?;
            let seeds = seeds
                .iter()
                .map(|el| resolve(&inner, el, &format!("{inner_path}.seeds")))
                .collect::<Result<Vec<_>, _>>()?;
            let (sub, _) = subring_closure(&inner.ring, &seeds).map_err(core)?;
            Built {
                ring: sub,
                shape: Shape::Leaf,
            }
        }
        RingExpr::Table {
            add,
            mul,
            zero,
            one,
        } => {
            let ring =
                FiniteRing::from_tables_capped(path, add, mul, *zero, *one, cap).map_err(|e| {
                    match e {
                        CoreError::AxiomViolation { .. } => BuildError::Corrupted(at, e),
                        e => core(e),
                    }
                })?;
            Built {
                ring,
                shape: Shape::Leaf,
            }
        }
    })
}

fn compile_finite(
    a: &RingExpr,
    b: &RingExpr,
    f: &HomSpec,
    j: &[Element],
    cap: usize,
) -> Result<Compiled, InstanceError> {
    let built = |expr, at| match build(expr, at, at, cap) {
        Ok(b) => Ok(Ok(b)),
        Err(BuildError::Corrupted(at, error)) => Ok(Err(Compiled::Corrupted { at, error })),
        Err(BuildError::Instance(e)) => Err(e),
    };
    let a = match built(a, "A")? {
        Ok(a) => a,
        Err(c) => return Ok(c),
    };
    let b = match built(b, "B")? {
        Ok(b) => b,
        Err(c) => return Ok(c),
    };
    let hom = match f {
        HomSpec::Images(pairs) => {
            let pairs = pairs
                .iter()
                .map(|(x, y)| Ok((resolve(&a, x, "f.images")?, resolve(&b, y, "f.images")?)))
                .collect::<Result<Vec<_>, InstanceError>>()?;
            RingHom::from_generator_images(a.ring.clone(), b.ring.clone(), &pairs)
        }
        HomSpec::Map(images) => {
            if images.len() != a.ring.size() {
                return Err(InstanceError::semantic(
                    "f.map",
                    format!(
                        "{} images for a ring of size {}",
                        images.len(),
                        a.ring.size()
                    ),
                ));
            }
            let map = images
                .iter()
                .map(|y| resolve(&b, y, "f.map"))
                .collect::<Result<Vec<_>, _>>()?;
            RingHom::new(a.ring.clone(), b.ring.clone(), map)
        }
    }
    .map_err(|e| match e {
        CoreError::NotAHomomorphism { reason, witness } => InstanceError::semantic(
            "f",
            format!(
                "f does not extend to a homomorphism ({reason}): witness ({}, {})",
                witness.0, witness.1
            ),
        ),
        e => InstanceError::semantic("f", e),
    })?;
    let gens = j
        .iter()
        .map(|el| resolve(&b, el, "J"))
        .collect::<Result<Vec<_>, _>>()?;
    let j = ideal_generated(&b.ring, &gens);
    let requested = a.ring.size() * j.len();
    if requested > cap {
        return Err(InstanceError::Cap(CoreError::CapExceeded {
            requested,
            cap,
        }));
    }
    let d = amalgamate(&a.ring, &b.ring, &hom, &j).map_err(|e| InstanceError::from_core("J", e))?;
    Ok(Compiled::Finite(Box::new(d)))
}
