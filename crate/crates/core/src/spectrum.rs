//! Prime spectra of finite rings and of amalgamations.
//!
//! A finite ring is Artinian, so it splits as the product of its local
//! factors `R e` over the primitive idempotents `e`, and its primes are in
//! bijection with those factors. Primes are computed from the idempotents of
//! `R / Nil(R)`, a finite product of finite fields.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::amalgam::{amalgamate, AmalgamRing};
use crate::error::{CoreError, Result};
use crate::ring::{nilradical, preimage, quotient, FiniteRing, IdealSet, Ring, RingHom};
use crate::verdict::{ensure, Verdict};

/// Which lifted family a prime of an amalgamation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "source_index", rename_all = "kebab-case")]
pub enum PrimeTag {
    /// `P ⋈^f J` for the prime of `A` with this index in `primes(A)`.
    LiftFromA(usize),
    /// `{(a, f(a)+j) : f(a)+j ∈ Q}` for the prime of `B` with this index.
    LiftFromB(usize),
    Untagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeIdeal {
    pub ideal: IdealSet,
    pub tag: PrimeTag,
}

/// Indices (into [`SpecReport::primes`]) on either side of `V({0} × J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecPartition {
    pub containing_j0: Vec<usize>,
    pub avoiding_j0: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecReport {
    pub primes: Vec<PrimeIdeal>,
    pub maximals: Vec<usize>,
    pub minimals: Vec<usize>,
    pub partition: Option<SpecPartition>,
}

/// All idempotents, ascending.
pub fn idempotents(r: &FiniteRing) -> Vec<usize> {
    r.elements().filter(|&x| r.is_idempotent(x)).collect()
}

/// The primitive idempotents, ascending. Found by splitting `1` on the
/// smallest nontrivial idempotent below it, recursively.
pub fn primitive_idempotents(r: &FiniteRing) -> Vec<usize> {
    if r.is_zero_ring() {
        return Vec::new();
    }
    let all = idempotents(r);
    let mut out = Vec::new();
    let mut stack = vec![r.one()];
    while let Some(e) = stack.pop() {
        let split = all
            .iter()
            .copied()
            .find(|&x| x != r.zero() && x != e && r.mul(x, e) == x);
        match split {
            Some(x) => {
                stack.push(x);
                stack.push(r.sub(e, x));
            }
            None => out.push(e),
        }
    }
    out.sort_unstable();
    out
}

/// Prime ideals as raw ideals, sorted by member list; empty for the zero ring.
pub fn prime_ideals(r: &Ring) -> Vec<IdealSet> {
    if r.is_zero_ring() {
        return Vec::new();
    }
    let nil = nilradical(r);
    let (reduced, pi) = quotient(r, &nil).expect("nilradical is an ideal");
    let mut primes: Vec<IdealSet> = primitive_idempotents(&reduced)
        .into_iter()
        .map(|eps| {
            let vanishing: Vec<usize> = reduced
                .elements()
                .filter(|&y| reduced.mul(y, eps) == reduced.zero())
                .collect();
            let vanishing = IdealSet::from_sorted_unchecked(reduced.clone(), vanishing, None);
            preimage(&pi, &vanishing)
        })
        .collect();
    primes.sort_by(|x, y| x.members().cmp(y.members()));
    primes
}

pub fn maximal_ideals(r: &Ring) -> Vec<IdealSet> {
    prime_ideals(r)
}

/// The prime spectrum, with maximality and minimality computed and checked
/// rather than assumed.
pub fn primes(r: &Ring) -> Result<SpecReport> {
    if r.is_zero_ring() {
        return Err(CoreError::EmptySpectrum);
    }
    let ideals = prime_ideals(r);
    for p in &ideals {
        ensure!(
            p.is_prime(),
            "computed ideal {:?} is not prime",
            p.members()
        );
    }
    let maximals: Vec<usize> = (0..ideals.len())
        .filter(|&i| ideals[i].is_maximal())
        .collect();
    let minimals: Vec<usize> = (0..ideals.len())
        .filter(|&i| !(0..ideals.len()).any(|k| k != i && ideals[k].is_subset_of(&ideals[i])))
        .collect();
    let all: Vec<usize> = (0..ideals.len()).collect();
    ensure!(maximals == all, "a prime of a finite ring is not maximal");
    ensure!(
        minimals == all,
        "primes of a finite ring do not form an antichain"
    );
    Ok(SpecReport {
        primes: ideals
            .into_iter()
            .map(|ideal| PrimeIdeal {
                ideal,
                tag: PrimeTag::Untagged,
            })
            .collect(),
        maximals,
        minimals,
        partition: None,
    })
}

/// A local factor `R e` of a finite ring.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub idempotent: usize,
    pub ring: Ring,
    /// Parent index of each element of `ring`.
    pub members: Vec<usize>,
    /// `x ↦ x e`, as an index into `ring`.
    pub projection: RingHom,
    /// The prime of `R` not containing `idempotent`.
    pub prime: IdealSet,
}

/// The decomposition `R ≅ ∏ R e` over the primitive idempotents.
pub fn local_factors(r: &Ring) -> Vec<LocalFactor> {
    let primes = prime_ideals(r);
    primitive_idempotents(r)
        .into_iter()
        .map(|e| {
            let members: BTreeSet<usize> = r.elements().map(|x| r.mul(x, e)).collect();
            let members: Vec<usize> = members.into_iter().collect();
            let (ring, parent) =
                FiniteRing::induced(r, &members, e, format!("({}) e{e}", r.label()));
            let mut pos = vec![usize::MAX; r.size()];
            for (i, &m) in parent.iter().enumerate() {
                pos[m] = i;
            }
            let projection = RingHom::new(
                r.clone(),
                ring.clone(),
                r.elements().map(|x| pos[r.mul(x, e)]).collect(),
            )
            .expect("multiplication by an idempotent is a homomorphism onto R e");
            let prime = primes
                .iter()
                .find(|p| !p.contains(e))
                .cloned()
                .expect("each primitive idempotent avoids exactly one prime");
            LocalFactor {
                idempotent: e,
                ring,
                members: parent,
                projection,
                prime,
            }
        })
        .collect()
}

/// `R_P`, realised as the local factor whose maximal ideal pulls back to `P`.
pub fn localize(r: &Ring, p: &IdealSet) -> Result<(Ring, RingHom)> {
    if !p.is_prime() {
        return Err(CoreError::InvariantViolation(
            "localization at a non-prime".into(),
        ));
    }
    let factor = local_factors(r)
        .into_iter()
        .find(|lf| lf.prime == *p)
        .ok_or_else(|| CoreError::InvariantViolation("no local factor matches the prime".into()))?;
    Ok((factor.ring, factor.projection))
}

fn prime_check(d: &AmalgamRing, ideal: &IdealSet) -> Result<()> {
    ensure!(
        ideal.is_prime(),
        "lifted ideal {:?} is not prime",
        ideal.members()
    );
    let r = d.ring();
    let outside: Vec<usize> = r.elements().filter(|&x| !ideal.contains(x)).collect();
    ensure!(
        outside.contains(&r.one()),
        "complement of a prime misses one"
    );
    Ok(())
}

/// `P ⋈^f J = {(p, f(p) + j)}`.
pub fn lift_prime_a(d: &AmalgamRing, p: &PrimeIdeal) -> Result<PrimeIdeal> {
    if !p.ideal.is_prime() {
        return Err(CoreError::InvariantViolation(
            "P is not a prime of A".into(),
        ));
    }
    let members = d.join_members(&p.ideal, d.j().members());
    let ideal = IdealSet::from_members(d.ring().clone(), members)?;
    prime_check(d, &ideal)?;
    ensure!(
        d.j0().is_subset_of(&ideal),
        "lift of a prime of A does not contain {{0}} x J"
    );
    let tag = match p.tag {
        PrimeTag::Untagged => PrimeTag::LiftFromA(0),
        t => t,
    };
    Ok(PrimeIdeal { ideal, tag })
}

/// `{(a, f(a) + j) : f(a) + j ∈ Q}` for a prime `Q` of `B` not containing `J`.
pub fn lift_prime_b(d: &AmalgamRing, q: &PrimeIdeal) -> Result<PrimeIdeal> {
    if !q.ideal.is_prime() {
        return Err(CoreError::InvariantViolation(
            "Q is not a prime of B".into(),
        ));
    }
    if d.j().is_subset_of(&q.ideal) {
        return Err(CoreError::HypothesisViolation("J is contained in Q".into()));
    }
    let members: Vec<usize> = d
        .ring()
        .elements()
        .filter(|&x| q.ideal.contains(d.pair_of(x).1))
        .collect();
    let ideal = IdealSet::from_members(d.ring().clone(), members)?;
    prime_check(d, &ideal)?;
    ensure!(
        !d.j0().is_subset_of(&ideal),
        "lift of a prime of B contains {{0}} x J"
    );
    let tag = match q.tag {
        PrimeTag::Untagged => PrimeTag::LiftFromB(0),
        t => t,
    };
    Ok(PrimeIdeal { ideal, tag })
}

fn tagged(r: &Ring, tag: fn(usize) -> PrimeTag) -> Vec<PrimeIdeal> {
    prime_ideals(r)
        .into_iter()
        .enumerate()
        .map(|(i, ideal)| PrimeIdeal { ideal, tag: tag(i) })
        .collect()
}

/// Both lifted families, in the order (lifts from `A`, lifts from `B`).
pub fn lifted_primes(d: &AmalgamRing) -> Result<(Vec<PrimeIdeal>, Vec<PrimeIdeal>)> {
    let from_a = tagged(d.a(), PrimeTag::LiftFromA)
        .iter()
        .map(|p| lift_prime_a(d, p))
        .collect::<Result<Vec<_>>>()?;
    let from_b = tagged(d.b(), PrimeTag::LiftFromB)
        .iter()
        .filter(|q| !d.j().is_subset_of(&q.ideal))
        .map(|q| lift_prime_b(d, q))
        .collect::<Result<Vec<_>>>()?;
    Ok((from_a, from_b))
}

/// The spectrum of the amalgamation with each prime tagged by its lifted
/// family and partitioned by `V({0} × J)`.
pub fn amalgam_spec_report(d: &AmalgamRing) -> Result<SpecReport> {
    let mut report = primes(d.ring())?;
    let (from_a, from_b) = lifted_primes(d)?;
    for p in &mut report.primes {
        if let Some(l) = from_a.iter().chain(&from_b).find(|l| l.ideal == p.ideal) {
            p.tag = l.tag;
        }
    }
    let j0 = d.j0();
    let (containing_j0, avoiding_j0) =
        (0..report.primes.len()).partition(|&i| j0.is_subset_of(&report.primes[i].ideal));
    report.partition = Some(SpecPartition {
        containing_j0,
        avoiding_j0,
    });
    Ok(report)
}

fn member_sets(ideals: impl IntoIterator<Item = IdealSet>) -> BTreeSet<Vec<usize>> {
    ideals.into_iter().map(|i| i.members().to_vec()).collect()
}

/// Every prime of the amalgamation is a lift from exactly one family, and
/// maximality transfers along both lifts.
pub fn check_spec_partition(d: &AmalgamRing) -> Verdict {
    Verdict::from_result((|| {
        let (from_a, from_b) = lifted_primes(d)?;
        let oracle = member_sets(prime_ideals(d.ring()));
        let lifted_a = member_sets(from_a.iter().map(|p| p.ideal.clone()));
        let lifted_b = member_sets(from_b.iter().map(|p| p.ideal.clone()));
        ensure!(
            lifted_a.len() == from_a.len(),
            "lift from A is not injective"
        );
        ensure!(
            lifted_b.len() == from_b.len(),
            "lift from B is not injective"
        );
        if let Some(c) = lifted_a.intersection(&lifted_b).next() {
            return Err(CoreError::InvariantViolation(format!(
                "prime {c:?} lies in both families"
            )));
        }
        let union: BTreeSet<Vec<usize>> = lifted_a.union(&lifted_b).cloned().collect();
        if let Some(missing) = oracle.difference(&union).next() {
            return Err(CoreError::InvariantViolation(format!(
                "prime {missing:?} is not a lift"
            )));
        }
        if let Some(extra) = union.difference(&oracle).next() {
            return Err(CoreError::InvariantViolation(format!(
                "lift {extra:?} is not a prime"
            )));
        }
        let j0 = d.j0();
        for p in &from_a {
            ensure!(j0.is_subset_of(&p.ideal), "lift from A avoids {{0}} x J");
        }
        for q in &from_b {
            ensure!(!j0.is_subset_of(&q.ideal), "lift from B contains {{0}} x J");
        }
        // maximality transfer
        let primes_a = prime_ideals(d.a());
        let primes_b = prime_ideals(d.b());
        for p in &from_a {
            let PrimeTag::LiftFromA(i) = p.tag else {
                unreachable!()
            };
            ensure!(
                p.ideal.is_maximal() == primes_a[i].is_maximal(),
                "maximality of P and its lift differ"
            );
        }
        for q in &from_b {
            let PrimeTag::LiftFromB(i) = q.tag else {
                unreachable!()
            };
            ensure!(
                q.ideal.is_maximal() == primes_b[i].is_maximal(),
                "maximality of Q and its lift differ"
            );
        }
        Ok(format!(
            "{} primes = {} from A + {} from B",
            oracle.len(),
            from_a.len(),
            from_b.len()
        ))
    })())
}

/// Minimal primes split as the lifts of `Min(B) \ V(J)` and of
/// `Min(A) \ X`, where `X` is the union of `V(f^{-1}(Q + J))` over
/// `Q ∈ Spec(B) \ V(J)`.
pub fn check_min_partition(d: &AmalgamRing) -> Verdict {
    Verdict::from_result((|| {
        let spec_d = if d.ring().is_zero_ring() {
            None
        } else {
            Some(primes(d.ring())?)
        };
        let min_d: Vec<IdealSet> = spec_d
            .map(|s| {
                s.minimals
                    .iter()
                    .map(|&i| s.primes[i].ideal.clone())
                    .collect()
            })
            .unwrap_or_default();
        let j0 = d.j0();
        let (in_v, out_v): (Vec<IdealSet>, Vec<IdealSet>) =
            min_d.into_iter().partition(|p| j0.is_subset_of(p));

        let spec_b = prime_ideals(d.b());
        let min_b: Vec<&IdealSet> = spec_b
            .iter()
            .filter(|q| !spec_b.iter().any(|o| o != *q && o.is_subset_of(q)))
            .collect();
        let mut bad_region: Vec<IdealSet> = Vec::new();
        let spec_a = prime_ideals(d.a());
        for q in spec_b.iter().filter(|q| !d.j().is_subset_of(q)) {
            let pulled = preimage(d.f(), &q.sum(d.j()));
            bad_region.extend(spec_a.iter().filter(|p| pulled.is_subset_of(p)).cloned());
        }
        let min_a: Vec<&IdealSet> = spec_a
            .iter()
            .filter(|p| !spec_a.iter().any(|o| o != *p && o.is_subset_of(p)))
            .collect();

        let expected_out = member_sets(
            min_b
                .iter()
                .filter(|q| !d.j().is_subset_of(q))
                .map(|q| {
                    lift_prime_b(
                        d,
                        &PrimeIdeal {
                            ideal: (*q).clone(),
                            tag: PrimeTag::Untagged,
                        },
                    )
                    .map(|p| p.ideal)
                })
                .collect::<Result<Vec<_>>>()?,
        );
        let expected_in = member_sets(
            min_a
                .iter()
                .filter(|p| !bad_region.contains(p))
                .map(|p| {
                    lift_prime_a(
                        d,
                        &PrimeIdeal {
                            ideal: (*p).clone(),
                            tag: PrimeTag::Untagged,
                        },
                    )
                    .map(|p| p.ideal)
                })
                .collect::<Result<Vec<_>>>()?,
        );
        ensure!(
            member_sets(out_v.clone()) == expected_out,
            "Min(D) \\ V(J0) differs from lifts of Min(B) \\ V(J)"
        );
        ensure!(
            member_sets(in_v.clone()) == expected_in,
            "Min(D) ∩ V(J0) differs from lifts of Min(A) \\ X"
        );
        Ok(format!(
            "{} minimal primes in V(J0), {} outside, |X| = {}",
            in_v.len(),
            out_v.len(),
            bad_region.len()
        ))
    })())
}

fn factor_for(factors: &[LocalFactor], prime: &IdealSet) -> Result<usize> {
    factors
        .iter()
        .position(|lf| lf.prime == *prime)
        .ok_or_else(|| CoreError::InvariantViolation("prime has no local factor".into()))
}

/// Checks that a map between two rings, given on elements, is a bijective
/// unital homomorphism.
fn bijective_hom(source: &Ring, target: &Ring, map: Vec<usize>, what: &str) -> Result<()> {
    let h = RingHom::new(source.clone(), target.clone(), map)
        .map_err(|e| CoreError::InvariantViolation(format!("{what}: {e}")))?;
    ensure!(
        h.is_injective() && h.is_surjective(),
        "{what} is not bijective"
    );
    Ok(())
}

/// The local rings of the amalgamation at each prime, compared through the
/// canonical maps induced by the projections.
pub fn check_localizations(d: &AmalgamRing) -> Verdict {
    Verdict::from_result((|| {
        let (from_a, from_b) = lifted_primes(d)?;
        let factors_d = local_factors(d.ring());
        let factors_a = local_factors(d.a());
        let factors_b = local_factors(d.b());
        let primes_a = prime_ideals(d.a());
        let primes_b = prime_ideals(d.b());
        let fj = d.f_preimage_j();
        let (mut via_b, mut via_a, mut via_amalgam) = (0, 0, 0);

        for q in &from_b {
            let PrimeTag::LiftFromB(i) = q.tag else {
                unreachable!()
            };
            let fd = &factors_d[factor_for(&factors_d, &q.ideal)?];
            let fb = &factors_b[factor_for(&factors_b, &primes_b[i])?];
            let map = fd
                .members
                .iter()
                .map(|&y| fb.projection.apply(d.pb().apply(y)))
                .collect();
            bijective_hom(&fd.ring, &fb.ring, map, "D localized at a lift of Q -> B_Q")?;
            via_b += 1;
        }

        for p in &from_a {
            let PrimeTag::LiftFromA(i) = p.tag else {
                unreachable!()
            };
            let fd = &factors_d[factor_for(&factors_d, &p.ideal)?];
            let fa = &factors_a[factor_for(&factors_a, &primes_a[i])?];
            if !fj.is_subset_of(&primes_a[i]) {
                let map = fd
                    .members
                    .iter()
                    .map(|&y| fa.projection.apply(d.pa().apply(y)))
                    .collect();
                bijective_hom(&fd.ring, &fa.ring, map, "D localized at a lift of P -> A_P")?;
                via_a += 1;
                continue;
            }
            // S = f(A \ P) + J; B_S is the product of the local factors of B
            // whose prime misses S.
            let b = d.b();
            let s: BTreeSet<usize> = d
                .a()
                .elements()
                .filter(|&x| !primes_a[i].contains(x))
                .flat_map(|x| {
                    d.j()
                        .members()
                        .iter()
                        .map(move |&y| b.add(d.f().apply(x), y))
                })
                .collect();
            let eps = factors_b
                .iter()
                .filter(|lf| s.iter().all(|&x| !lf.prime.contains(x)))
                .fold(b.zero(), |acc, lf| b.add(acc, lf.idempotent));
            let bs_members: Vec<usize> = b
                .elements()
                .map(|x| b.mul(x, eps))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let (b_s, bs_parent) = FiniteRing::induced(b, &bs_members, eps, "B_S");
            let mut bs_pos = vec![usize::MAX; b.size()];
            for (k, &m) in bs_parent.iter().enumerate() {
                bs_pos[m] = k;
            }
            let f_p = RingHom::new(
                fa.ring.clone(),
                b_s.clone(),
                fa.members
                    .iter()
                    .map(|&x| bs_pos[b.mul(d.f().apply(x), eps)])
                    .collect(),
            )?;
            let j_s = IdealSet::from_members(
                b_s.clone(),
                d.j().members().iter().map(|&y| bs_pos[b.mul(y, eps)]),
            )?;
            let local = amalgamate(&fa.ring, &b_s, &f_p, &j_s)?;
            let mut a_pos = vec![usize::MAX; d.a().size()];
            for (k, &m) in fa.members.iter().enumerate() {
                a_pos[m] = k;
            }
            let mut map = Vec::with_capacity(fd.members.len());
            for &y in &fd.members {
                let (x, z) = d.pair_of(y);
                let image = local
                    .index_of(a_pos[d.a().mul(x, fa.idempotent)], bs_pos[b.mul(z, eps)])
                    .ok_or_else(|| {
                        CoreError::InvariantViolation("comparison map leaves A_P ⋈ J_S".into())
                    })?;
                map.push(image);
            }
            bijective_hom(
                &fd.ring,
                local.ring(),
                map,
                "D localized at a lift of P -> A_P ⋈ J_S",
            )?;
            via_amalgam += 1;
        }
        Ok(format!(
            "{via_b} via B_Q, {via_a} via A_P, {via_amalgam} via A_P ⋈ J_S"
        ))
    })())
}

/// Primes containing both `{0} × J` and `f^{-1}(J) × {0}` correspond to the
/// primes of `(f(A) + J)/J` through `gamma`.
pub fn check_gamma_intersection(d: &AmalgamRing) -> Verdict {
    Verdict::from_result((|| {
        let j0 = d.j0();
        let j1 = d.j1();
        let both = member_sets(
            prime_ideals(d.ring())
                .into_iter()
                .filter(|p| j0.is_subset_of(p) && j1.is_subset_of(p)),
        );
        let pulled: Vec<IdealSet> = prime_ideals(d.residue_ring())
            .iter()
            .map(|p| preimage(d.gamma(), p))
            .collect();
        let pulled_set = member_sets(pulled.clone());
        ensure!(pulled_set.len() == pulled.len(), "gamma* is not injective");
        ensure!(
            pulled_set == both,
            "gamma* image differs from V(J0) ∩ V(J1)"
        );
        if d.f().is_surjective() {
            let v_j = prime_ideals(d.b())
                .into_iter()
                .filter(|q| d.j().is_subset_of(q))
                .count();
            ensure!(
                v_j == both.len(),
                "f surjective but |V(J)| = {v_j} != {}",
                both.len()
            );
        }
        Ok(format!("{} primes in V(J0) ∩ V(J1)", both.len()))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ideal_generated, product};

    fn z(n: usize) -> Ring {
        FiniteRing::zmod(n).unwrap()
    }

    fn members(report: &SpecReport) -> Vec<Vec<usize>> {
        report
            .primes
            .iter()
            .map(|p| p.ideal.members().to_vec())
            .collect()
    }

    #[test]
    fn spectra_of_small_rings() {
        let f4 = FiniteRing::poly_quot(2, &[1, 1, 1]).unwrap();
        assert_eq!(members(&primes(&f4).unwrap()), vec![vec![0]]);
        assert_eq!(
            members(&primes(&z(6)).unwrap()),
            vec![vec![0, 2, 4], vec![0, 3]]
        );
        assert_eq!(members(&primes(&z(4)).unwrap()), vec![vec![0, 2]]);
        assert_eq!(primes(&z(1)).unwrap_err(), CoreError::EmptySpectrum);
        assert_eq!(primitive_idempotents(&z(6)), vec![3, 4]);
    }

    #[test]
    fn localizations_of_small_rings() {
        let z4 = z(4);
        let (loc, h) = localize(&z4, &ideal_generated(&z4, &[2])).unwrap();
        assert!(loc.same_tables(&z4));
        assert!(h.is_injective());

        let z6 = z(6);
        let (loc, _) = localize(&z6, &ideal_generated(&z6, &[2])).unwrap();
        assert_eq!(loc.size(), 2);
        assert!(loc.is_field());

        let z12 = z(12);
        let (loc, _) = localize(&z12, &ideal_generated(&z12, &[3])).unwrap();
        assert_eq!(loc.size(), 3);
        let total: usize = local_factors(&z12)
            .iter()
            .map(|lf| lf.ring.size())
            .product();
        assert_eq!(total, 12);
    }

    #[test]
    fn lifts_in_the_duplication_of_z4() {
        let z4 = z(4);
        let j = ideal_generated(&z4, &[2]);
        let d = amalgamate(&z4, &z4, &RingHom::identity(&z4), &j).unwrap();
        let m = PrimeIdeal {
            ideal: j.clone(),
            tag: PrimeTag::Untagged,
        };
        let lifted = lift_prime_a(&d, &m).unwrap();
        assert_eq!(lifted.ideal.len(), 4);
        assert!(matches!(
            lift_prime_b(&d, &m),
            Err(CoreError::HypothesisViolation(_))
        ));
        for v in [
            check_spec_partition(&d),
            check_min_partition(&d),
            check_localizations(&d),
            check_gamma_intersection(&d),
        ] {
            assert!(v.holds(), "{v}");
        }
        assert!(check_localizations(&d).detail().contains("1 via A_P ⋈ J_S"));
    }

    #[test]
    fn lift_from_b_in_a_split_target() {
        let f2 = z(2);
        let b = product(&f2, &f2).unwrap();
        let diag = RingHom::from_generator_images(f2.clone(), b.clone(), &[]).unwrap();
        let j = ideal_generated(&b, &[2]); // (1,0)B
        let d = amalgamate(&f2, &b, &diag, &j).unwrap();
        assert_eq!(d.ring().size(), 4);
        let q = IdealSet::from_members(b.clone(), [0, 1]).unwrap(); // 0 x F_2
        let lifted = lift_prime_b(
            &d,
            &PrimeIdeal {
                ideal: q,
                tag: PrimeTag::Untagged,
            },
        )
        .unwrap();
        assert!(lifted.ideal.is_prime());
        assert!(check_spec_partition(&d).holds());
        assert!(check_localizations(&d).holds());
    }

    #[test]
    fn zero_and_unit_ideal_spectra() {
        let z6 = z(6);
        let d = amalgamate(&z6, &z6, &RingHom::identity(&z6), &IdealSet::zero(&z6)).unwrap();
        let report = amalgam_spec_report(&d).unwrap();
        assert_eq!(report.primes.len(), 2);
        assert!(report
            .primes
            .iter()
            .all(|p| matches!(p.tag, PrimeTag::LiftFromA(_))));

        let d = amalgamate(&z6, &z6, &RingHom::identity(&z6), &IdealSet::unit(&z6)).unwrap();
        let report = amalgam_spec_report(&d).unwrap();
        assert_eq!(report.primes.len(), 4);
        let part = report.partition.unwrap();
        assert_eq!((part.containing_j0.len(), part.avoiding_j0.len()), (2, 2));
        assert!(check_gamma_intersection(&d).holds());
        assert!(check_min_partition(&d).holds());
    }
}
