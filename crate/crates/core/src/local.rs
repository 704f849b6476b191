//! Embedding dimension, minimal numbers of generators, lengths and socles of
//! finite local rings.
//!
//! Over a finite local ring with residue field of size `q` every simple
//! module is the residue field, so lengths are logarithms base `q` of
//! cardinalities.

use serde::Serialize;

use crate::amalgam::{is_local_amalgam, AmalgamRing};
use crate::error::{CoreError, Result};
use crate::ideals::{annihilator, extend_ideal, extension_coefficients, hom_lambda};
use crate::ring::{all_ideals, ideal_generated, jacobson, IdealSet, Ring};
use crate::spectrum::{local_factors, maximal_ideals};
use crate::verdict::{ensure, Verdict};

/// Rings up to this size also get their generator counts by exhaustive search.
pub const BRUTE_FORCE_LIMIT: usize = 32;

/// `log_q n`, failing unless `n` is an exact power of `q`.
pub fn log_exact(n: usize, q: usize) -> Result<usize> {
    if q < 2 || n == 0 {
        return Err(CoreError::InvariantViolation(format!(
            "log of {n} base {q}"
        )));
    }
    let (mut k, mut m) = (0, 1usize);
    while m < n {
        m *= q;
        k += 1;
    }
    if m != n {
        return Err(CoreError::InvariantViolation(format!(
            "{n} is not a power of {q}"
        )));
    }
    Ok(k)
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalProfile {
    #[serde(skip)]
    pub ring: Ring,
    pub maximal: IdealSet,
    pub residue_size: usize,
    pub embdim: usize,
    pub socle: IdealSet,
    pub socle_dim: usize,
}

pub fn local_profile(r: &Ring) -> Result<LocalProfile> {
    let max = maximal_ideals(r);
    if max.len() != 1 {
        return Err(CoreError::NotLocal {
            maximal_ideals: max.len(),
        });
    }
    let m = max.into_iter().next().unwrap();
    let q = r.size() / m.len();
    let m2 = m.product(&m);
    let embdim = log_exact(m.len() / m2.len(), q)?;
    let (socle, socle_dim) = if m.is_zero() {
        // a field is its own simple socle
        (IdealSet::unit(r), 1)
    } else {
        let socle = annihilator(r, &m);
        let dim = log_exact(socle.len(), q)?;
        (socle, dim)
    };
    Ok(LocalProfile {
        ring: r.clone(),
        maximal: m,
        residue_size: q,
        embdim,
        socle,
        socle_dim,
    })
}

/// `ν(J)` by Nakayama on each local factor: `log_q |J e / (Jac J) e|`,
/// maximised over the factors.
pub fn min_gens(b: &Ring, j: &IdealSet) -> Result<usize> {
    if j.is_zero() {
        return Ok(0);
    }
    let mut best = 0;
    for lf in local_factors(b) {
        let images: Vec<usize> = j
            .members()
            .iter()
            .map(|&x| lf.projection.apply(x))
            .collect();
        let je = ideal_generated(&lf.ring, &images);
        let max = maximal_ideals(&lf.ring);
        let q = lf.ring.size() / max[0].len();
        let reduced = max[0].product(&je);
        best = best.max(log_exact(je.len() / reduced.len(), q)?);
    }
    Ok(best)
}

/// The least `k` such that some `k` elements generate `J`, by exhaustive
/// search over subsets.
pub fn min_gens_brute(b: &Ring, j: &IdealSet) -> usize {
    fn search(
        b: &Ring,
        j: &IdealSet,
        pool: &[usize],
        start: usize,
        chosen: &mut Vec<usize>,
        k: usize,
    ) -> bool {
        if chosen.len() == k {
            return ideal_generated(b, chosen) == *j;
        }
        for idx in start..pool.len() {
            chosen.push(pool[idx]);
            if search(b, j, pool, idx + 1, chosen, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let pool: Vec<usize> = j
        .members()
        .iter()
        .copied()
        .filter(|&x| x != b.zero())
        .collect();
    (0..=pool.len())
        .find(|&k| search(b, j, &pool, 0, &mut Vec::new(), k))
        .expect("J generates itself")
}

/// `λ(E) = log_q |E|` for an ideal of a local ring.
pub fn length(r: &Ring, e: &IdealSet) -> Result<usize> {
    let q = local_profile(r)?.residue_size;
    log_exact(e.len(), q)
}

/// `λ(big / small)` for ideals `small ⊆ big` of a local ring.
pub fn quotient_length(r: &Ring, big: &IdealSet, small: &IdealSet) -> Result<usize> {
    ensure!(
        small.is_subset_of(big),
        "quotient of ideals that are not nested"
    );
    let q = local_profile(r)?.residue_size;
    log_exact(big.len() / small.len(), q)
}

pub fn is_gorenstein_artinian(r: &Ring) -> Result<bool> {
    Ok(local_profile(r)?.socle_dim == 1)
}

/// Gorenstein at every prime: each local factor has a one-dimensional socle.
pub fn is_gorenstein_finite(r: &Ring) -> Result<bool> {
    for lf in local_factors(r) {
        if !is_gorenstein_artinian(&lf.ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ν(J)` with `J` regarded as an ideal of `f(A) + J`.
pub fn nu_over_image(d: &AmalgamRing) -> Result<usize> {
    min_gens(d.image_ring(), &d.j_in_image())
}

/// `f(M)B = B`.
pub fn expands_to_unit(d: &AmalgamRing) -> Result<bool> {
    let max = maximal_ideals(d.a());
    if max.len() != 1 {
        return Err(CoreError::NotLocal {
            maximal_ideals: max.len(),
        });
    }
    let images: Vec<usize> = max[0].members().iter().map(|&x| d.f().apply(x)).collect();
    Ok(ideal_generated(d.b(), &images).is_unit())
}

/// The embedding dimensions of `A` and `D` and the two readings of `ν(J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbdimData {
    pub embdim_a: usize,
    pub embdim_d: usize,
    /// `J` as an ideal of `f(A) + J`.
    pub nu_image: usize,
    /// `J` as an ideal of `B`.
    pub nu_b: usize,
}

fn embdim_data(d: &AmalgamRing) -> Result<Option<EmbdimData>> {
    let Some(max_d) = is_local_amalgam(d)? else {
        return Ok(None);
    };
    let pa = local_profile(d.a())?;
    let pd = local_profile(d.ring())?;
    ensure!(pd.maximal == max_d, "maximal ideal of D is not M ⋈ J");
    for (r, p) in [(d.a(), &pa), (d.ring(), &pd)] {
        if r.size() <= BRUTE_FORCE_LIMIT {
            let brute = min_gens_brute(r, &p.maximal);
            ensure!(
                brute == p.embdim,
                "{}: embdim {} but {} generators by search",
                r.label(),
                p.embdim,
                brute
            );
        }
    }
    Ok(Some(EmbdimData {
        embdim_a: pa.embdim,
        embdim_d: pd.embdim,
        nu_image: nu_over_image(d)?,
        nu_b: min_gens(d.b(), d.j())?,
    }))
}

fn nu_note(e: &EmbdimData) -> String {
    if e.nu_b == e.nu_image {
        String::new()
    } else {
        format!(" (ν over B is {})", e.nu_b)
    }
}

/// `embdim(A) ≤ embdim(D) ≤ embdim(A) + ν(J)` for a local amalgamation.
pub fn check_embdim_bounds(d: &AmalgamRing) -> Verdict {
    match embdim_data(d) {
        Err(e) => Verdict::Falsified(e.to_string()),
        Ok(None) => Verdict::OutOfHypothesis("D is not local".into()),
        Ok(Some(e)) => {
            if e.embdim_a > e.embdim_d {
                Verdict::Falsified(format!(
                    "embdim(A) = {} > embdim(D) = {}",
                    e.embdim_a, e.embdim_d
                ))
            } else if e.embdim_d > e.embdim_a + e.nu_image {
                Verdict::Falsified(format!(
                    "embdim(D) = {} > embdim(A) + ν(J) = {} + {}",
                    e.embdim_d, e.embdim_a, e.nu_image
                ))
            } else {
                Verdict::Verified(format!(
                    "{} ≤ {} ≤ {} + {}{}",
                    e.embdim_a,
                    e.embdim_d,
                    e.embdim_a,
                    e.nu_image,
                    nu_note(&e)
                ))
            }
        }
    }
}

/// `embdim(D) = embdim(A) + ν(J)` when `f(M)B ⊆ Jac(B)` and `J ⊆ Jac(B)`.
///
/// A finite instance with `f(M)B = B` would contradict the nilpotence of `M`
/// and is reported as falsified.
pub fn check_embdim_equality(d: &AmalgamRing) -> Verdict {
    Verdict::from_optional(
        (|| {
            let max = maximal_ideals(d.a());
            if max.len() != 1 {
                return Ok(None);
            }
            ensure!(!expands_to_unit(d)?, "finite local A with f(M)B = B");
            let jac = jacobson(d.b());
            let images: Vec<usize> = max[0].members().iter().map(|&x| d.f().apply(x)).collect();
            if !d.j().is_subset_of(&jac) || !ideal_generated(d.b(), &images).is_subset_of(&jac) {
                return Ok(None);
            }
            let e = embdim_data(d)?.ok_or_else(|| {
                CoreError::InvariantViolation("hypotheses hold but D is not local".into())
            })?;
            ensure!(
                e.embdim_d == e.embdim_a + e.nu_image,
                "embdim(D) = {} but embdim(A) + ν(J) = {} + {}{}",
                e.embdim_d,
                e.embdim_a,
                e.nu_image,
                nu_note(&e)
            );
            Ok(Some(format!(
                "{} = {} + {}{}",
                e.embdim_d,
                e.embdim_a,
                e.nu_image,
                nu_note(&e)
            )))
        })(),
        "A is not local, or f(M)B or J is not inside Jac(B)",
    )
}

/// Length identities behind the multiplicity formula, for every ideal `I`
/// of `A` on a local amalgamation:
/// `λ(D/(I ⋈ J)) = λ(A/I)` and
/// `λ(D/I·D) = λ(A/I) + λ_{f(A)+J}(J / (f(I)B)J)`.
pub fn check_length_identities(d: &AmalgamRing) -> Verdict {
    Verdict::from_optional(
        (|| {
            let Some(_) = is_local_amalgam(d)? else {
                return Ok(None);
            };
            let unit_d = IdealSet::unit(d.ring());
            let unit_a = IdealSet::unit(d.a());
            let ideals = all_ideals(d.a());
            for i in &ideals {
                let join =
                    IdealSet::from_members(d.ring().clone(), d.join_members(i, d.j().members()))?;
                let ext = extend_ideal(d, i)?;
                let top = quotient_length(d.ring(), &unit_d, &join)?;
                let base = quotient_length(d.a(), &unit_a, i)?;
                ensure!(
                    top == base,
                    "λ(D/(I ⋈ J)) = {top} but λ(A/I) = {base} for I = {:?}",
                    i.members()
                );
                let coeffs = extension_coefficients(d, i);
                let q = local_profile(d.a())?.residue_size;
                let tail = log_exact(d.j().len() / coeffs.len(), q)?;
                let total = quotient_length(d.ring(), &unit_d, &ext)?;
                ensure!(
                    total == base + tail,
                    "λ(D/I·D) = {total} but λ(A/I) + λ(J/(f(I)B)J) = {base} + {tail} for I = {:?}",
                    i.members()
                );
            }
            Ok(Some(format!("{} ideals of A", ideals.len())))
        })(),
        "D is not local",
    )
}

/// A local `A` and an `A`-module `N` (through `act`) with `λ(N) = λ(A)` and a
/// one-dimensional socle is the injective hull of the residue field, which
/// over an Artinian local ring is the canonical module.
fn is_canonical_module(
    a: &Ring,
    module: &[usize],
    act: impl Fn(usize, usize) -> usize,
    zero: usize,
) -> Result<bool> {
    let p = local_profile(a)?;
    if module.len() != a.size() {
        return Ok(false);
    }
    let socle = module
        .iter()
        .filter(|&&y| p.maximal.members().iter().all(|&m| act(m, y) == zero))
        .count();
    Ok(socle == p.residue_size)
}

/// `J ≅ ω_A` as `A`-modules through `f`.
pub fn j_is_canonical(d: &AmalgamRing) -> Result<bool> {
    let b = d.b();
    is_canonical_module(
        d.a(),
        d.j().members(),
        |m, y| b.mul(d.f().apply(m), y),
        b.zero(),
    )
}

/// `f^{-1}(J) ≅ ω_A` as `A`-modules.
pub fn preimage_is_canonical(d: &AmalgamRing) -> Result<bool> {
    let a = d.a();
    is_canonical_module(a, d.f_preimage_j().members(), |m, y| a.mul(m, y), a.zero())
}

/// With `A` local Artinian: `J ≅ ω_A` forces `D` Gorenstein; and when
/// `Ann_{f(A)+J}(J) = 0`, `D` Gorenstein forces `f^{-1}(J) ≅ ω_A`.
pub fn check_gorenstein_socle(d: &AmalgamRing) -> Verdict {
    Verdict::from_optional(
        (|| {
            if maximal_ideals(d.a()).len() != 1 {
                return Ok(None);
            }
            let canonical = j_is_canonical(d)?;
            let gorenstein = is_gorenstein_finite(d.ring())?;
            let ann_vanishes = hom_lambda(d)?.ann_vanishes;
            let mut notes = Vec::new();
            if canonical {
                ensure!(
                    gorenstein,
                    "J ≅ ω_A but D has a local factor with socle dimension > 1"
                );
                notes.push("J ≅ ω_A and D is Gorenstein".to_string());
            }
            if ann_vanishes && gorenstein {
                ensure!(
                    preimage_is_canonical(d)?,
                    "D Gorenstein with Ann(J) = 0 but f^-1(J) is not ω_A"
                );
                notes.push("f^-1(J) ≅ ω_A".to_string());
            }
            Ok(if notes.is_empty() {
                None
            } else {
                Some(notes.join("; "))
            })
        })(),
        "A is not local, or neither J ≅ ω_A nor (D Gorenstein and Ann(J) = 0)",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::amalgamate;
    use crate::ring::{product, FiniteRing, RingHom};

    fn z(n: usize) -> Ring {
        FiniteRing::zmod(n).unwrap()
    }

    fn dup(r: &Ring, gens: &[usize]) -> AmalgamRing {
        amalgamate(r, r, &RingHom::identity(r), &ideal_generated(r, gens)).unwrap()
    }

    fn plane_square() -> Ring {
        // F_2[x,y]/(x,y)^2 as the duplication of F_2[x]/(x^2) along (x)
        let dual = FiniteRing::poly_quot(2, &[0, 0, 1]).unwrap();
        dup(&dual, &[2]).ring().clone()
    }

    #[test]
    fn profiles() {
        let f4 = FiniteRing::poly_quot(2, &[1, 1, 1]).unwrap();
        let p = local_profile(&f4).unwrap();
        assert_eq!((p.embdim, p.socle_dim, p.residue_size), (0, 1, 4));
        let dual = FiniteRing::poly_quot(2, &[0, 0, 1]).unwrap();
        let p = local_profile(&dual).unwrap();
        assert_eq!((p.embdim, p.socle_dim), (1, 1));
        assert_eq!(p.socle.members(), &[0, 2]);
        let p = local_profile(&plane_square()).unwrap();
        assert_eq!((p.embdim, p.socle_dim), (2, 2));
        assert_eq!(
            local_profile(&z(6)).unwrap_err(),
            CoreError::NotLocal { maximal_ideals: 2 }
        );
    }

    #[test]
    fn generator_counts() {
        let r = plane_square();
        let m = local_profile(&r).unwrap().maximal;
        assert_eq!(min_gens(&r, &m).unwrap(), 2);
        assert_eq!(min_gens_brute(&r, &m), 2);
        assert_eq!(min_gens(&r, &IdealSet::zero(&r)).unwrap(), 0);
        let z8 = z(8);
        assert_eq!(min_gens(&z8, &ideal_generated(&z8, &[2])).unwrap(), 1);
        let z12 = z(12);
        assert_eq!(min_gens(&z12, &ideal_generated(&z12, &[6])).unwrap(), 1);
        assert_eq!(min_gens_brute(&z12, &ideal_generated(&z12, &[6])), 1);
    }

    #[test]
    fn lengths() {
        let z8 = z(8);
        assert_eq!(length(&z8, &IdealSet::unit(&z8)).unwrap(), 3);
        assert_eq!(length(&z(5), &IdealSet::unit(&z(5))).unwrap(), 1);
        assert!(log_exact(6, 2).is_err());
    }

    #[test]
    fn gorenstein_oracle() {
        assert!(is_gorenstein_artinian(&z(7)).unwrap());
        for n in 2..=5 {
            let mut modulus = vec![0; n + 1];
            modulus[n] = 1;
            assert!(is_gorenstein_artinian(&FiniteRing::poly_quot(2, &modulus).unwrap()).unwrap());
        }
        assert!(!is_gorenstein_artinian(&plane_square()).unwrap());
        assert!(is_gorenstein_artinian(&z(6)).is_err());
        assert!(is_gorenstein_finite(&z(6)).unwrap());
    }

    #[test]
    fn embedding_dimension_of_duplications() {
        let d = dup(&z(4), &[2]);
        assert!(check_embdim_bounds(&d).holds());
        assert_eq!(check_embdim_equality(&d).detail(), "2 = 1 + 1");
        let x3 = FiniteRing::poly_quot(2, &[0, 0, 0, 1]).unwrap();
        let d = dup(&x3, &[4]);
        assert_eq!(check_embdim_equality(&d).detail(), "2 = 1 + 1");
        assert!(check_length_identities(&d).holds());
    }

    #[test]
    fn nu_must_be_read_over_the_image() {
        // A = Z/4 -> Z/4 x Z/4 diagonally, J = (2) x (2): principal in B but
        // two-generated over f(A) + J.
        let z4 = z(4);
        let b = product(&z4, &z4).unwrap();
        let diag = RingHom::from_generator_images(z4.clone(), b.clone(), &[]).unwrap();
        let two = 2 * 4 + 2;
        let d = amalgamate(&z4, &b, &diag, &ideal_generated(&b, &[two])).unwrap();
        let e = embdim_data(&d).unwrap().unwrap();
        assert_eq!(
            e,
            EmbdimData {
                embdim_a: 1,
                embdim_d: 3,
                nu_image: 2,
                nu_b: 1
            }
        );
        assert!(check_embdim_equality(&d).holds());
    }

    #[test]
    fn canonical_ideal_gives_gorenstein() {
        let f2 = z(2);
        for n in 2..=5 {
            let mut modulus = vec![0; n + 1];
            modulus[n] = 1;
            let b = FiniteRing::poly_quot(2, &modulus).unwrap();
            let incl = RingHom::from_generator_images(f2.clone(), b.clone(), &[]).unwrap();
            let top = 1usize << (n - 1);
            let d = amalgamate(&f2, &b, &incl, &ideal_generated(&b, &[top])).unwrap();
            assert!(j_is_canonical(&d).unwrap());
            assert_eq!(local_profile(d.ring()).unwrap().socle_dim, 1);
            assert!(check_gorenstein_socle(&d).holds());
        }
        let d = dup(&z(4), &[0]);
        assert!(matches!(
            check_gorenstein_socle(&d),
            Verdict::OutOfHypothesis(_)
        ));
    }
}
