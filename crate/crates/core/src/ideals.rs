//! Extension of ideals to the amalgamation, radicals, annihilators and the
//! module of `D`-linear maps `A -> D`.

use serde::Serialize;

use crate::amalgam::{is_local_amalgam, join_ideal, AmalgamRing};
use crate::error::{CoreError, Result};
use crate::ring::{all_ideals, ideal_generated, nilradical, preimage, quotient, IdealSet, Ring};
use crate::spectrum::{maximal_ideals, prime_ideals};
use crate::verdict::{ensure, Verdict};

/// `(f(I)B)J` as an ideal of `B`.
pub fn extension_coefficients(d: &AmalgamRing, i: &IdealSet) -> IdealSet {
    let images: Vec<usize> = i.members().iter().map(|&x| d.f().apply(x)).collect();
    ideal_generated(d.b(), &images).product(d.j())
}

/// The extension `I·D` of an ideal of `A`, computed as the ideal generated by
/// `iota(I)` and compared with `{(i, f(i) + β) : i ∈ I, β ∈ (f(I)B)J}`.
pub fn extend_ideal(d: &AmalgamRing, i: &IdealSet) -> Result<IdealSet> {
    i.check()?;
    if i.ring().size() != d.a().size() {
        return Err(CoreError::InvalidParameter("I is not an ideal of A".into()));
    }
    let seeds: Vec<usize> = i.members().iter().map(|&x| d.iota().apply(x)).collect();
    let closure = ideal_generated(d.ring(), &seeds);
    let formula = d.join_members(i, extension_coefficients(d, i).members());
    ensure!(
        closure.members() == formula.as_slice(),
        "extension of {:?} has {} elements, the formula gives {}",
        i.members(),
        closure.len(),
        formula.len()
    );
    Ok(closure)
}

/// `{x : x^k ∈ I for some k}`, cross-checked against the preimage of the
/// nilradical of `R/I`.
pub fn radical(r: &Ring, i: &IdealSet) -> Result<IdealSet> {
    let members: Vec<usize> = r
        .elements()
        .filter(|&x| {
            let mut y = x;
            for _ in 0..=r.size() {
                if i.contains(y) {
                    return true;
                }
                y = r.mul(y, x);
            }
            false
        })
        .collect();
    let direct = IdealSet::from_members(r.clone(), members)?;
    let (q, pi) = quotient(r, i)?;
    let via_quotient = preimage(&pi, &nilradical(&q));
    ensure!(
        direct == via_quotient,
        "radical of {:?} disagrees with the nilradical of R/I",
        i.members()
    );
    Ok(direct)
}

/// `{x ∈ R : x·i = 0 for all i ∈ I}`.
pub fn annihilator(r: &Ring, i: &IdealSet) -> IdealSet {
    let members: Vec<usize> = r
        .elements()
        .filter(|&x| i.members().iter().all(|&y| r.mul(x, y) == r.zero()))
        .collect();
    IdealSet::from_members(r.clone(), members).expect("annihilators are ideals")
}

/// Closure and extension statements for every ideal of `A`: the formula for
/// `I·D`, the case `f(I)B = B`, and that each `I ⋈^f H` with
/// `f(I)J ⊆ H ⊆ J` is an ideal.
pub fn check_ideal_extension(d: &AmalgamRing) -> Verdict {
    Verdict::from_result((|| {
        let ideals_a = all_ideals(d.a());
        let ideals_image = all_ideals(d.image_ring());
        let incl = d.image_inclusion();
        let (mut unit_cases, mut joins) = (0, 0);
        for i in &ideals_a {
            let ext = extend_ideal(d, i)?;
            let images: Vec<usize> = i.members().iter().map(|&x| d.f().apply(x)).collect();
            if ideal_generated(d.b(), &images).is_unit() {
                let full = d.join_members(i, d.j().members());
                ensure!(
                    ext.members() == full.as_slice(),
                    "f(I)B = B but I·D != I ⋈ J for {:?}",
                    i.members()
                );
                unit_cases += 1;
            }
            let floor = extension_coefficients(d, i);
            for h in &ideals_image {
                let h_in_b: Vec<usize> = h.members().iter().map(|&y| incl.apply(y)).collect();
                let inside_j = h_in_b.iter().all(|&y| d.j().contains(y));
                let above_floor = floor.members().iter().all(|y| h_in_b.contains(y));
                if inside_j && above_floor {
                    join_ideal(d, i, &h_in_b)?;
                    joins += 1;
                }
            }
        }
        Ok(format!(
            "{} ideals of A extended, {unit_cases} with f(I)B = B, {joins} pairs (I, H) closed",
            ideals_a.len()
        ))
    })())
}

/// Counts behind the radical statement on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalReport {
    /// `f^{-1}(Q) != M` for every prime `Q` of `B` not containing `J`.
    pub hypothesis: bool,
    /// `M`-primary ideals of `A` examined.
    pub checked: usize,
    /// Of those, the ones with `I != M` on an instance with `J != 0`.
    pub nontrivial: usize,
}

/// With `A` local and `f^{-1}(Q) != M` for every `Q ∈ Spec(B) \ V(J)`,
/// every `M`-primary ideal extends to an ideal with radical `M ⋈^f J`.
/// When `J ⊆ Jac(B)` that radical is the maximal ideal of `D`.
pub fn radical_corollary(d: &AmalgamRing) -> Result<RadicalReport> {
    let max_a = maximal_ideals(d.a());
    if max_a.len() != 1 {
        return Err(CoreError::NotLocal {
            maximal_ideals: max_a.len(),
        });
    }
    let m = &max_a[0];
    let hypothesis = prime_ideals(d.b())
        .iter()
        .filter(|q| !d.j().is_subset_of(q))
        .all(|q| preimage(d.f(), q) != *m);
    let mut report = RadicalReport {
        hypothesis,
        checked: 0,
        nontrivial: 0,
    };
    if !hypothesis {
        return Ok(report);
    }
    let m_join = IdealSet::from_members(d.ring().clone(), d.join_members(m, d.j().members()))?;
    let local_max = is_local_amalgam(d)?;
    for i in all_ideals(d.a()) {
        if radical(d.a(), &i)? != *m {
            continue;
        }
        let ext = extend_ideal(d, &i)?;
        let rad = radical(d.ring(), &ext)?;
        ensure!(
            rad == m_join,
            "radical of the extension of {:?} is not M ⋈ J",
            i.members()
        );
        if let Some(max_d) = &local_max {
            ensure!(
                rad == *max_d,
                "extension of {:?} is not primary to the maximal ideal",
                i.members()
            );
        }
        report.checked += 1;
        if i != *m && !d.j().is_zero() {
            report.nontrivial += 1;
        }
    }
    Ok(report)
}

pub fn check_radical_corollary(d: &AmalgamRing) -> Verdict {
    match radical_corollary(d) {
        Err(CoreError::NotLocal { maximal_ideals }) => {
            Verdict::OutOfHypothesis(format!("A has {maximal_ideals} maximal ideals"))
        }
        Err(e) => Verdict::Falsified(e.to_string()),
        Ok(r) if !r.hypothesis => {
            Verdict::OutOfHypothesis("some prime Q of B with J ⊄ Q has f^-1(Q) = M".into())
        }
        Ok(r) => Verdict::Verified(format!(
            "{} M-primary ideals, {} nontrivial",
            r.checked, r.nontrivial
        )),
    }
}

/// The two sides of the criterion for `Λ: f^{-1}(J) -> Hom_D(A, D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomLambda {
    /// `|Hom_D(A, D)| = |Ann_D({0} × J)|`.
    pub hom_size: usize,
    /// `|f^{-1}(J)|`, the size of the image of `Λ`.
    pub image_size: usize,
    pub lambda_surjective: bool,
    /// `Ann_{f(A)+J}(J) = 0`.
    pub ann_vanishes: bool,
}

/// `A ≅ D / ({0} × J)` as a `D`-module, so a `D`-linear map `A -> D` is
/// determined by the image of `1`, which must be killed by `{0} × J`.
/// `Λ` sends `x ∈ f^{-1}(J)` to the map with `1 ↦ (x, 0)`.
pub fn hom_lambda(d: &AmalgamRing) -> Result<HomLambda> {
    let hom = annihilator(d.ring(), &d.j0());
    let image = d.j1();
    ensure!(
        image.is_subset_of(&hom),
        "some (x, 0) with x ∈ f^-1(J) does not kill {{0}} x J"
    );
    let ann = annihilator(d.image_ring(), &d.j_in_image());
    Ok(HomLambda {
        hom_size: hom.len(),
        image_size: image.len(),
        lambda_surjective: image == hom,
        ann_vanishes: ann.is_zero(),
    })
}

pub fn check_hom_description(d: &AmalgamRing) -> Verdict {
    Verdict::from_result((|| {
        let h = hom_lambda(d)?;
        ensure!(
            h.lambda_surjective == h.ann_vanishes,
            "Λ surjective = {} but Ann_{{f(A)+J}}(J) = 0 is {}",
            h.lambda_surjective,
            h.ann_vanishes
        );
        Ok(format!(
            "|Hom| = {}, |image Λ| = {}, Ann vanishes: {}",
            h.hom_size, h.image_size, h.ann_vanishes
        ))
    })())
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

    #[test]
    fn extension_in_the_duplication_of_z4() {
        let z4 = z(4);
        let d = dup(&z4, &[2]);
        let i = ideal_generated(&z4, &[2]);
        let ext = extend_ideal(&d, &i).unwrap();
        assert_eq!(ext.len(), 2);
        let iota: Vec<usize> = i.members().iter().map(|&x| d.iota().apply(x)).collect();
        assert_eq!(ext.members(), iota.as_slice());
        assert!(extend_ideal(&d, &IdealSet::zero(&z4)).unwrap().is_zero());
        assert!(check_ideal_extension(&d).holds());
    }

    #[test]
    fn extension_with_a_unit_image() {
        // f: F_2 -> F_2 x F_2 diagonal; I = A has f(I)B = B
        let f2 = z(2);
        let b = product(&f2, &f2).unwrap();
        let diag = RingHom::from_generator_images(f2.clone(), b.clone(), &[]).unwrap();
        let d = amalgamate(&f2, &b, &diag, &ideal_generated(&b, &[2])).unwrap();
        let ext = extend_ideal(&d, &IdealSet::unit(&f2)).unwrap();
        assert!(ext.is_unit());
        let v = check_ideal_extension(&d);
        assert!(v.detail().contains("1 with f(I)B = B"), "{v}");
    }

    #[test]
    fn radicals_and_annihilators() {
        let z8 = z(8);
        assert_eq!(
            radical(&z8, &ideal_generated(&z8, &[4])).unwrap().members(),
            &[0, 2, 4, 6]
        );
        assert_eq!(radical(&z8, &IdealSet::zero(&z8)).unwrap(), nilradical(&z8));
        assert!(radical(&z8, &IdealSet::unit(&z8)).unwrap().is_unit());
        let z4 = z(4);
        assert_eq!(
            annihilator(&z4, &ideal_generated(&z4, &[2])).members(),
            &[0, 2]
        );
        assert!(annihilator(&z4, &IdealSet::unit(&z4)).is_zero());
        assert!(annihilator(&z4, &IdealSet::zero(&z4)).is_unit());
    }

    #[test]
    fn radical_statement_on_small_instances() {
        let z4 = z(4);
        let r = radical_corollary(&dup(&z4, &[2])).unwrap();
        assert!(r.hypothesis);
        assert_eq!((r.checked, r.nontrivial), (2, 1));

        // J = B: the prime 0 x F_2 ... of F_2 x F_2 pulls back to M = 0
        let f2 = z(2);
        let b = product(&f2, &f2).unwrap();
        let diag = RingHom::from_generator_images(f2.clone(), b.clone(), &[]).unwrap();
        let d = amalgamate(&f2, &b, &diag, &IdealSet::unit(&b)).unwrap();
        assert!(matches!(
            check_radical_corollary(&d),
            Verdict::OutOfHypothesis(_)
        ));

        let z6 = z(6);
        assert!(matches!(
            check_radical_corollary(&dup(&z6, &[0])),
            Verdict::OutOfHypothesis(_)
        ));
    }

    #[test]
    fn lambda_criterion_on_both_sides() {
        let f2 = z(2);
        let dual = FiniteRing::poly_quot(2, &[0, 0, 1]).unwrap();
        let incl = RingHom::from_generator_images(f2.clone(), dual.clone(), &[]).unwrap();
        let d = amalgamate(&f2, &dual, &incl, &ideal_generated(&dual, &[2])).unwrap();
        let h = hom_lambda(&d).unwrap();
        assert!(!h.ann_vanishes && !h.lambda_surjective);
        assert!(check_hom_description(&d).holds());

        let z6 = z(6);
        let d = dup(&z6, &[1]);
        let h = hom_lambda(&d).unwrap();
        assert!(h.ann_vanishes && h.lambda_surjective);

        let d = dup(&z6, &[0]);
        let h = hom_lambda(&d).unwrap();
        assert!(!h.ann_vanishes);
        assert_eq!(h.hom_size, 6);
    }
}
