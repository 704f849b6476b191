//! Deterministic enumeration of instances under size bounds.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use amalgam_core::ring::{all_homs, all_ideals, ideal_generated, is_prime, product};
use amalgam_core::semigroup::{
    canonical_ideal, semigroups_up_to, NumericalSemigroup, SemigroupIdeal,
};
use amalgam_core::{FiniteRing, IdealSet, Ring};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{Element, HomSpec, InstanceBody, InstanceSpec, RingExpr, FORMAT_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    /// Largest `|B|` in the finite catalog.
    pub max_target_size: usize,
    /// Largest number of local factors in a product `B`.
    pub max_factors: usize,
    /// Include `F_p → F_p[x]/(x^n)` along `(x^{n-1})` for these `p^n`.
    pub gorenstein_max_size: usize,
    pub semigroup_max_frobenius: i64,
    pub semigroup_max_embdim: usize,
    /// Semigroups `S` of the scaled catalog.
    pub scaled_max_frobenius: i64,
    pub scaled_max_embdim: usize,
    pub max_scale: u64,
    pub series_primes: Vec<u64>,
    pub series_precisions: Vec<usize>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_target_size: 16,
            max_factors: 3,
            gorenstein_max_size: 32,
            semigroup_max_frobenius: 25,
            semigroup_max_embdim: 4,
            scaled_max_frobenius: 9,
            scaled_max_embdim: 3,
            max_scale: 3,
            series_primes: vec![2, 3, 5],
            series_precisions: vec![2, 5, 8],
        }
    }
}

/// Hard ceilings on the bounds; anything above is refused.
pub const MAX_TARGET_SIZE: usize = 64;
pub const MAX_FROBENIUS: i64 = 31;
pub const MAX_SCALED_FROBENIUS: i64 = 15;
pub const MAX_SCALE: u64 = 5;
pub const MAX_PRECISION: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("bound {bound} = {requested} exceeds the cap of {cap}")]
    Cap {
        bound: &'static str,
        requested: i64,
        cap: i64,
    },
    #[error("invalid bounds: {0}")]
    Invalid(String),
}

impl Bounds {
    pub fn validate(&self) -> Result<(), CatalogError> {
        let checks: [(&'static str, i64, i64); 7] = [
            ("max_factors", self.max_factors as i64, 4),
            (
                "max_target_size",
                self.max_target_size as i64,
                MAX_TARGET_SIZE as i64,
            ),
            (
                "gorenstein_max_size",
                self.gorenstein_max_size as i64,
                MAX_TARGET_SIZE as i64,
            ),
            (
                "semigroup_max_frobenius",
                self.semigroup_max_frobenius,
                MAX_FROBENIUS,
            ),
            (
                "scaled_max_frobenius",
                self.scaled_max_frobenius,
                MAX_SCALED_FROBENIUS,
            ),
            ("max_scale", self.max_scale as i64, MAX_SCALE as i64),
            (
                "series_precisions",
                self.series_precisions.iter().copied().max().unwrap_or(0) as i64,
                MAX_PRECISION as i64,
            ),
        ];
        for (bound, requested, cap) in checks {
            if requested > cap {
                return Err(CatalogError::Cap {
                    bound,
                    requested,
                    cap,
                });
            }
        }
        if let Some(p) = self.series_primes.iter().find(|&&p| !is_prime(p)) {
            return Err(CatalogError::Invalid(format!("{p} is not prime")));
        }
        if self.series_precisions.iter().any(|&n| n < 2) {
            return Err(CatalogError::Invalid("series precision below 2".into()));
        }
        Ok(())
    }
}

struct Named {
    id: String,
    expr: RingExpr,
    ring: Ring,
}

fn poly(p: u64, modulus: &[u64]) -> RingExpr {
    RingExpr::PolyQuot {
        p,
        modulus: modulus.to_vec(),
    }
}

fn build(expr: &RingExpr) -> Ring {
    match expr {
        RingExpr::Zmod(n) => FiniteRing::zmod(*n),
        RingExpr::PolyQuot { p, modulus } => FiniteRing::poly_quot(*p, modulus),
        _ => unreachable!("catalog factors are zmod or poly_quot"),
    }
    .expect("catalog rings are valid")
}

fn tables(r: &FiniteRing) -> Vec<usize> {
    let mut t = Vec::with_capacity(2 * r.size() * r.size());
    for x in r.elements() {
        for y in r.elements() {
            t.push(r.add(x, y));
            t.push(r.mul(x, y));
        }
    }
    t
}

/// The local rings `A`, with isomorphic duplicates (same tables) dropped.
fn local_rings() -> Vec<Named> {
    let list = [
        ("z2", RingExpr::Zmod(2)),
        ("z4", RingExpr::Zmod(4)),
        ("z8", RingExpr::Zmod(8)),
        ("f2", poly(2, &[0, 1])),
        ("f4", poly(2, &[1, 1, 1])),
        ("f2x2", poly(2, &[0, 0, 1])),
        ("f2x3", poly(2, &[0, 0, 0, 1])),
        ("f3", RingExpr::Zmod(3)),
        ("z9", RingExpr::Zmod(9)),
        ("f3x2", poly(3, &[0, 0, 1])),
    ];
    let mut seen = HashSet::new();
    list.into_iter()
        .filter_map(|(id, expr)| {
            let ring = build(&expr);
            seen.insert(tables(&ring)).then(|| Named {
                id: id.to_string(),
                expr,
                ring,
            })
        })
        .collect()
}

/// Ordered products of up to `max_factors` local rings with `|B| ≤ max_size`,
/// shorter products first.
fn target_rings(locals: &[Named], max_size: usize, max_factors: usize) -> Vec<Named> {
    let mut layer: Vec<Vec<&Named>> = vec![Vec::new()];
    let mut out = Vec::new();
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for prefix in &layer {
            let size: usize = prefix.iter().map(|n| n.ring.size()).product();
            for x in locals {
                if size * x.ring.size() <= max_size {
                    let mut seq = prefix.clone();
                    seq.push(x);
                    next.push(seq);
                }
            }
        }
        for seq in &next {
            out.push(match seq.as_slice() {
                [one] => Named {
                    id: one.id.clone(),
                    expr: one.expr.clone(),
                    ring: one.ring.clone(),
                },
                _ => Named {
                    id: seq
                        .iter()
                        .map(|n| n.id.as_str())
                        .collect::<Vec<_>>()
                        .join("."),
                    expr: RingExpr::Product(seq.iter().map(|n| n.expr.clone()).collect()),
                    ring: seq[1..].iter().fold(seq[0].ring.clone(), |acc, n| {
                        product(&acc, &n.ring).expect("small product")
                    }),
                },
            });
        }
        layer = next;
    }
    out
}

/// A greedy generating set of `j`, in ascending order.
fn ideal_generators(j: &IdealSet) -> Vec<usize> {
    let r = j.ring();
    let mut gens = Vec::new();
    let mut span = ideal_generated(r, &[]);
    for &x in j.members() {
        if !span.contains(x) {
            gens.push(x);
            span = ideal_generated(r, &gens);
        }
    }
    gens
}

fn finite_spec(
    name: String,
    a: &RingExpr,
    b: &RingExpr,
    map: &[usize],
    j: &IdealSet,
) -> InstanceSpec {
    InstanceSpec {
        format: FORMAT_VERSION,
        name,
        body: InstanceBody::Finite {
            a: a.clone(),
            b: b.clone(),
            f: HomSpec::Map(map.iter().map(|&y| Element::Index(y)).collect()),
            j: ideal_generators(j)
                .into_iter()
                .map(Element::Index)
                .collect(),
        },
        suites: Vec::new(),
    }
}

fn finite_catalog(bounds: &Bounds, out: &mut Vec<InstanceSpec>) {
    let locals = local_rings();
    let targets = target_rings(&locals, bounds.max_target_size, bounds.max_factors);
    let mut seen = HashSet::new();
    let mut key = |a: &Ring, b: &Ring, map: &[usize], j: &IdealSet| {
        let mut k = tables(a);
        k.push(usize::MAX);
        k.extend(tables(b));
        k.push(usize::MAX);
        k.extend_from_slice(map);
        k.push(usize::MAX);
        k.extend_from_slice(j.members());
        seen.insert(k)
    };
    // F_p -> F_p[x]/(x^n) along (x^{n-1}), where J is a canonical module of
    // F_p; listed first so that dedup does not depend on the other bounds
    for p in [2u64, 3] {
        let a = RingExpr::Zmod(p as usize);
        let mut n = 2;
        while (p as usize).pow(n) <= bounds.gorenstein_max_size {
            let mut modulus = vec![0; n as usize];
            modulus.push(1);
            let b = poly(p, &modulus);
            let (ar, br) = (build(&a), build(&b));
            let j = ideal_generated(&br, &[(p as usize).pow(n - 1)]);
            let homs = all_homs(&ar, &br);
            let f = &homs[0];
            if key(&ar, &br, f.map(), &j) {
                let name = format!("gorenstein-f{p}-x{n}");
                out.push(finite_spec(name, &a, &b, f.map(), &j));
            }
            n += 1;
        }
    }
    for a in &locals {
        for b in &targets {
            let ideals = all_ideals(&b.ring);
            for (h, f) in all_homs(&a.ring, &b.ring).iter().enumerate() {
                for (k, j) in ideals.iter().enumerate() {
                    if key(&a.ring, &b.ring, f.map(), j) {
                        let name = format!("{}-{}-h{h}-j{k}", a.id, b.id);
                        out.push(finite_spec(name, &a.expr, &b.expr, f.map(), j));
                    }
                }
            }
        }
    }
}

fn semigroup_spec(name: String, body: InstanceBody) -> InstanceSpec {
    InstanceSpec {
        format: FORMAT_VERSION,
        name,
        body,
        suites: Vec::new(),
    }
}

fn join(gens: &[u64]) -> String {
    gens.iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join("_")
}

/// Ideals of `T` for the scaled catalog: `T`, its maximal ideal, `K(T)`,
/// the ideals `⟨0, g⟩` for gaps `g`, and their translates by 1.
fn scaled_ideals(t: &Arc<NumericalSemigroup>) -> Vec<Vec<i64>> {
    let mut base = vec![
        SemigroupIdeal::principal(t, 0),
        SemigroupIdeal::maximal(t),
        canonical_ideal(t),
    ];
    base.extend(
        t.gaps()
            .into_iter()
            .map(|g| SemigroupIdeal::new(t, &[0, g as i64]).expect("ideal")),
    );
    let mut out: Vec<Vec<i64>> = Vec::new();
    for e in base {
        for shift in [0, 1] {
            let gens = e.translate(shift - e.min()).generators().to_vec();
            if !out.contains(&gens) {
                out.push(gens);
            }
        }
    }
    out
}

fn semigroup_catalog(bounds: &Bounds, out: &mut Vec<InstanceSpec>) {
    for s in semigroups_up_to(bounds.semigroup_max_frobenius, bounds.semigroup_max_embdim) {
        let name = format!("dup-{}", join(s.generators()));
        out.push(semigroup_spec(
            name,
            InstanceBody::Semigroup {
                generators: s.generators().to_vec(),
                ideals: None,
            },
        ));
    }
    for s in semigroups_up_to(bounds.scaled_max_frobenius, bounds.scaled_max_embdim) {
        for d in 1..=bounds.max_scale {
            let mut targets: Vec<Arc<NumericalSemigroup>> = vec![NumericalSemigroup::naturals()];
            let mut extra: Vec<u64> = s.generators().iter().map(|g| g * d).collect();
            extra.push(2 * d + 1);
            targets.push(NumericalSemigroup::new(&extra).expect("gcd(d, 2d + 1) = 1"));
            if d == 1 {
                targets.push(s.clone());
            }
            let mut seen = HashSet::new();
            for t in targets {
                if !seen.insert(t.generators().to_vec()) {
                    continue;
                }
                let name = format!(
                    "scaled-{}-d{d}-t{}",
                    join(s.generators()),
                    join(t.generators())
                );
                out.push(semigroup_spec(
                    name,
                    InstanceBody::ScaledSemigroup {
                        generators: s.generators().to_vec(),
                        scale: d,
                        target: t.generators().to_vec(),
                        ideals: Some(scaled_ideals(&t)),
                    },
                ));
            }
        }
    }
}

/// Enumerates the catalog; the order depends only on `bounds`.
pub fn generate_catalog(bounds: &Bounds) -> Result<Vec<InstanceSpec>, CatalogError> {
    bounds.validate()?;
    let mut out = Vec::new();
    finite_catalog(bounds, &mut out);
    semigroup_catalog(bounds, &mut out);
    for &p in &bounds.series_primes {
        for &n in &bounds.series_precisions {
            out.push(semigroup_spec(
                format!("series-p{p}-n{n}"),
                InstanceBody::SeriesWitness { p, precision: n },
            ));
        }
    }
    Ok(out)
}

/// Instance counts per kind.
pub fn catalog_statistics(specs: &[InstanceSpec]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for s in specs {
        *counts.entry(s.body.kind().to_string()).or_default() += 1;
    }
    counts
}
