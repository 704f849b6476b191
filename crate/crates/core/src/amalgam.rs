//! The amalgamation `A ⋈^f J = {(a, f(a) + j)} ⊆ A × B` over finite rings.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{CoreError, Result};
use crate::ring::{preimage, quotient, subring_closure, FiniteRing, IdealSet, Ring, RingHom};
use crate::verdict::{ensure, Verdict};

/// `A ⋈^f J` together with its canonical maps.
///
/// Elements are the pairs `(a, f(a) + j)`, numbered in ascending order of
/// their index `a * |B| + b` in `A × B`.
#[derive(Clone)]
pub struct AmalgamRing {
    ring: Ring,
    a: Ring,
    b: Ring,
    f: RingHom,
    j: IdealSet,
    pairs: Vec<(usize, usize)>,
    index: Vec<u32>,
    iota: RingHom,
    pa: RingHom,
    pb: RingHom,
    image: Ring,
    image_incl: RingHom,
    residue: Ring,
    gamma: RingHom,
}

impl fmt::Debug for AmalgamRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AmalgamRing")
            .field("a", &self.a.label())
            .field("b", &self.b.label())
            .field("j", &self.j.members())
            .field("size", &self.ring.size())
            .finish()
    }
}

fn same_ring(x: &Ring, y: &Ring) -> bool {
    std::sync::Arc::ptr_eq(x, y) || x.same_tables(y)
}

/// Builds `A ⋈^f J` and verifies its structural invariants.
pub fn amalgamate(a: &Ring, b: &Ring, f: &RingHom, j: &IdealSet) -> Result<AmalgamRing> {
    if !same_ring(f.source(), a) || !same_ring(f.target(), b) {
        return Err(CoreError::InvariantViolation(
            "f is not a map A -> B".into(),
        ));
    }
    if !same_ring(j.ring(), b) {
        return Err(CoreError::InvariantViolation(
            "J is not an ideal of B".into(),
        ));
    }
    j.check()?;
    let nb = b.size();
    let mut pairs: Vec<(usize, usize)> = a
        .elements()
        .flat_map(|x| j.members().iter().map(move |&y| (x, y)))
        .map(|(x, y)| (x, b.add(f.apply(x), y)))
        .collect();
    pairs.sort_unstable_by_key(|&(x, y)| x * nb + y);
    pairs.dedup();
    ensure!(
        pairs.len() == a.size() * j.len(),
        "carrier has {} elements, expected |A||J| = {}",
        pairs.len(),
        a.size() * j.len()
    );
    let n = pairs.len();
    let mut index = vec![u32::MAX; a.size() * nb];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        index[x * nb + y] = i as u32;
    }
    let lookup = |x: usize, y: usize| -> u32 { index[x * nb + y] };
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &(x1, y1) in &pairs {
        for &(x2, y2) in &pairs {
            add.push(lookup(a.add(x1, x2), b.add(y1, y2)));
            mul.push(lookup(a.mul(x1, x2), b.mul(y1, y2)));
        }
    }
    ensure!(
        add.iter().chain(&mul).all(|&v| v != u32::MAX),
        "carrier is not closed under the ring operations"
    );
    let label = format!("({}) ⋈ ({})", a.label(), b.label());
    let zero = lookup(a.zero(), b.zero()) as usize;
    let one = lookup(a.one(), b.one()) as usize;
    let ring = FiniteRing::from_parts(label, n, add, mul, zero, one);

    let iota = RingHom::new(
        a.clone(),
        ring.clone(),
        a.elements()
            .map(|x| lookup(x, f.apply(x)) as usize)
            .collect(),
    )?;
    let pa = RingHom::new(ring.clone(), a.clone(), pairs.iter().map(|p| p.0).collect())?;
    let pb = RingHom::new(ring.clone(), b.clone(), pairs.iter().map(|p| p.1).collect())?;

    let seeds: Vec<usize> = f
        .image()
        .into_iter()
        .chain(j.members().iter().copied())
        .collect();
    let (image, image_incl) = subring_closure(b, &seeds)?;
    let j_in_image = preimage(&image_incl, j);
    let (residue, pi) = quotient(&image, &j_in_image)?;
    let mut image_pos = vec![usize::MAX; nb];
    for (i, &y) in image_incl.map().iter().enumerate() {
        image_pos[y] = i;
    }
    let gamma_map = pairs.iter().map(|&(_, y)| pi.apply(image_pos[y])).collect();
    let gamma = RingHom::new(ring.clone(), residue.clone(), gamma_map)?;

    let d = AmalgamRing {
        ring,
        a: a.clone(),
        b: b.clone(),
        f: f.clone(),
        j: j.clone(),
        pairs,
        index,
        iota,
        pa,
        pb,
        image,
        image_incl,
        residue,
        gamma,
    };
    d.verify_structure()?;
    Ok(d)
}

impl AmalgamRing {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn a(&self) -> &Ring {
        &self.a
    }

    pub fn b(&self) -> &Ring {
        &self.b
    }

    pub fn f(&self) -> &RingHom {
        &self.f
    }

    pub fn j(&self) -> &IdealSet {
        &self.j
    }

    /// The `(a, b)` components of an element.
    pub fn pair_of(&self, x: usize) -> (usize, usize) {
        self.pairs[x]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The element with components `(a, b)`, if that pair lies in the carrier.
    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.index[a * self.b.size() + b];
        (v != u32::MAX).then_some(v as usize)
    }

    pub fn iota(&self) -> &RingHom {
        &self.iota
    }

    pub fn pa(&self) -> &RingHom {
        &self.pa
    }

    pub fn pb(&self) -> &RingHom {
        &self.pb
    }

    /// The subring `f(A) + J` of `B`.
    pub fn image_ring(&self) -> &Ring {
        &self.image
    }

    pub fn image_inclusion(&self) -> &RingHom {
        &self.image_incl
    }

    /// `J` viewed as an ideal of `f(A) + J`.
    pub fn j_in_image(&self) -> IdealSet {
        preimage(&self.image_incl, &self.j)
    }

    /// `(f(A) + J) / J`.
    pub fn residue_ring(&self) -> &Ring {
        &self.residue
    }

    pub fn gamma(&self) -> &RingHom {
        &self.gamma
    }

    /// `f^{-1}(J)` as an ideal of `A`.
    pub fn f_preimage_j(&self) -> IdealSet {
        preimage(&self.f, &self.j)
    }

    /// `{0} × J`, the kernel of the projection onto `A`.
    pub fn j0(&self) -> IdealSet {
        let members = self
            .j
            .members()
            .iter()
            .map(|&y| {
                self.index_of(self.a.zero(), y)
                    .expect("(0, j) lies in the carrier")
            })
            .collect::<BTreeSet<_>>();
        IdealSet::from_sorted_unchecked(self.ring.clone(), members.into_iter().collect(), None)
    }

    /// `f^{-1}(J) × {0}`, the kernel of the projection onto `B`.
    pub fn j1(&self) -> IdealSet {
        let members = self
            .f_preimage_j()
            .members()
            .iter()
            .map(|&x| {
                self.index_of(x, self.b.zero())
                    .expect("(x, 0) lies in the carrier")
            })
            .collect::<BTreeSet<_>>();
        IdealSet::from_sorted_unchecked(self.ring.clone(), members.into_iter().collect(), None)
    }

    /// `I ⋈^f H = {(i, f(i) + h)}` as a raw member list (not validated).
    pub(crate) fn join_members(&self, i: &IdealSet, h: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = i
            .members()
            .iter()
            .flat_map(|&x| h.iter().map(move |&y| (x, y)))
            .map(|(x, y)| {
                self.index_of(x, self.b.add(self.f.apply(x), y))
                    .expect("pair lies in the carrier")
            })
            .collect();
        set.into_iter().collect()
    }

    fn verify_structure(&self) -> Result<()> {
        let (a, b, f, j) = (&self.a, &self.b, &self.f, &self.j);
        for x in a.elements() {
            ensure!(
                self.pa.apply(self.iota.apply(x)) == x,
                "p_A(iota({x})) != {x}"
            );
        }
        let ker_pa: Vec<usize> = self.pa.kernel().members().to_vec();
        ensure!(
            ker_pa == self.j0().members(),
            "Ker(p_A) differs from {{0}} x J"
        );
        ensure!(
            self.pb.kernel().members() == self.j1().members(),
            "Ker(p_B) differs from f^-1(J) x {{0}}"
        );
        let direct_image: BTreeSet<usize> = a
            .elements()
            .flat_map(|x| j.members().iter().map(move |&y| b.add(f.apply(x), y)))
            .collect();
        ensure!(
            self.pb.image() == direct_image.iter().copied().collect::<Vec<_>>(),
            "p_B(A ⋈ J) differs from f(A) + J"
        );
        ensure!(
            self.image_incl.map() == direct_image.iter().copied().collect::<Vec<_>>().as_slice(),
            "subring closure of f(A) and J differs from f(A) + J"
        );
        ensure!(self.gamma.is_surjective(), "gamma is not surjective");
        let fj = self.f_preimage_j();
        let expected: Vec<usize> = self
            .ring
            .elements()
            .filter(|&x| {
                let (p, q) = self.pairs[x];
                fj.contains(p) && j.contains(q)
            })
            .collect();
        ensure!(
            self.gamma.kernel().members() == expected,
            "Ker(gamma) differs from f^-1(J) x J"
        );
        Ok(())
    }
}

/// The ideal `I ⋈^f H` attached to compatible `I ⊆ A` and `H ⊆ J`.
#[derive(Clone, Debug)]
pub struct CanonicalIdealPair {
    pub i: IdealSet,
    pub h: Vec<usize>,
    pub join: IdealSet,
}

/// Forms `I ⋈^f H`, checking `f(I)J ⊆ H ⊆ J` and that `H` is an
/// `f(A) + J`-submodule of `B`.
pub fn join_ideal(d: &AmalgamRing, i: &IdealSet, h: &[usize]) -> Result<CanonicalIdealPair> {
    let b = d.b();
    if !same_ring(i.ring(), d.a()) {
        return Err(CoreError::InvalidParameter("I is not an ideal of A".into()));
    }
    i.check()?;
    let mut h: Vec<usize> = h.to_vec();
    h.sort_unstable();
    h.dedup();
    let mut in_h = vec![false; b.size()];
    for &y in &h {
        if y >= b.size() {
            return Err(CoreError::InvalidParameter(format!(
                "element {y} out of range"
            )));
        }
        in_h[y] = true;
    }
    if let Some(&y) = h.iter().find(|&&y| !d.j().contains(y)) {
        return Err(CoreError::HypothesisViolation(format!(
            "H is not contained in J: {y}"
        )));
    }
    for &x in i.members() {
        for &y in d.j().members() {
            let p = b.mul(d.f().apply(x), y);
            if !in_h[p] {
                return Err(CoreError::HypothesisViolation(format!(
                    "f(I)J is not contained in H: f({x}) * {y}"
                )));
            }
        }
    }
    if !in_h[b.zero()] {
        return Err(CoreError::HypothesisViolation(
            "H does not contain zero".into(),
        ));
    }
    for &x in &h {
        for &y in &h {
            if !in_h[b.add(x, y)] {
                return Err(CoreError::HypothesisViolation(format!(
                    "H not closed under addition: {x} + {y}"
                )));
            }
        }
        for &s in d.image_inclusion().map() {
            if !in_h[b.mul(s, x)] {
                return Err(CoreError::HypothesisViolation(format!(
                    "H is not an f(A)+J-submodule: {s} * {x}"
                )));
            }
        }
    }
    let members = d.join_members(i, &h);
    let join = IdealSet::from_members(d.ring().clone(), members)?;
    Ok(CanonicalIdealPair {
        i: i.clone(),
        h,
        join,
    })
}

/// The maximal ideal `M ⋈^f J` when the amalgamation is local, `None`
/// otherwise.
///
/// Locality is decided from `A` and `J ⊆ Jac(B)` and then cross-checked
/// against the maximal ideals of the carrier itself.
pub fn is_local_amalgam(d: &AmalgamRing) -> Result<Option<IdealSet>> {
    let max_a = crate::spectrum::maximal_ideals(d.a());
    let criterion = max_a.len() == 1 && d.j().is_subset_of(&crate::ring::jacobson(d.b()));
    let max_d = crate::spectrum::maximal_ideals(d.ring());
    if criterion != (max_d.len() == 1) {
        return Err(CoreError::InvariantViolation(format!(
            "locality criterion says {criterion}, carrier has {} maximal ideals",
            max_d.len()
        )));
    }
    if !criterion {
        return Ok(None);
    }
    let m = IdealSet::from_sorted_unchecked(
        d.ring().clone(),
        d.join_members(&max_a[0], d.j().members()),
        None,
    );
    ensure!(
        m == max_d[0],
        "M ⋈ J is not the maximal ideal of the carrier"
    );
    Ok(Some(m))
}

/// The amalgamation equals the fiber product of `π∘f` and `π: B -> B/J`.
pub fn check_pullback(d: &AmalgamRing) -> Verdict {
    Verdict::from_result((|| {
        let (_, pi) = quotient(d.b(), d.j())?;
        let mut fiber = Vec::new();
        for x in d.a().elements() {
            let target = pi.apply(d.f().apply(x));
            for y in d.b().elements() {
                if pi.apply(y) == target {
                    fiber.push((x, y));
                }
            }
        }
        ensure!(
            fiber == d.pairs(),
            "pullback has {} elements, carrier has {}",
            fiber.len(),
            d.pairs().len()
        );
        Ok(format!("{} pairs", fiber.len()))
    })())
}

/// Replacing `B` by `f(A) + J` yields the same carrier.
pub fn check_image_reduction(d: &AmalgamRing) -> Verdict {
    Verdict::from_result((|| {
        let incl = d.image_inclusion();
        let mut pos = vec![usize::MAX; d.b().size()];
        for (i, &y) in incl.map().iter().enumerate() {
            pos[y] = i;
        }
        let f_prime = RingHom::new(
            d.a().clone(),
            d.image_ring().clone(),
            d.a().elements().map(|x| pos[d.f().apply(x)]).collect(),
        )?;
        let j_prime = d.j_in_image();
        let reduced = amalgamate(d.a(), d.image_ring(), &f_prime, &j_prime)?;
        let mut lifted: Vec<(usize, usize)> = reduced
            .pairs()
            .iter()
            .map(|&(x, y)| (x, incl.apply(y)))
            .collect();
        lifted.sort_unstable_by_key(|&(x, y)| x * d.b().size() + y);
        ensure!(
            lifted == d.pairs(),
            "carrier over f(A)+J differs from the carrier over B"
        );
        Ok(format!("{} pairs", lifted.len()))
    })())
}

/// Construction-level statements: ring axioms, kernels and images of the
/// projections, the retraction, the fiber product and the image reduction.
pub fn check_canonical_maps(d: &AmalgamRing) -> Verdict {
    if let Err(e) = d.ring().check_axioms() {
        return Verdict::Falsified(e.to_string());
    }
    if let Err(e) = d.verify_structure() {
        return Verdict::Falsified(e.to_string());
    }
    let counts = (|| {
        let image_size = d.pb().image().len();
        ensure!(
            image_size == d.image_ring().size(),
            "|p_B(D)| = {image_size}"
        );
        let ker = d.pb().kernel().len();
        ensure!(
            ker == d.f_preimage_j().len(),
            "|Ker p_B| = {ker}, |f^-1(J)| = {}",
            d.f_preimage_j().len()
        );
        let retraction = d.pa().compose(d.iota())?;
        ensure!(
            retraction.map().iter().enumerate().all(|(i, &v)| i == v),
            "p_A∘iota is not the identity"
        );
        Ok(())
    })();
    if let Err(e) = counts {
        return Verdict::Falsified(e.to_string());
    }
    for v in [check_pullback(d), check_image_reduction(d)] {
        if !v.holds() {
            return v;
        }
    }
    Verdict::Verified(format!(
        "|D| = {}, |f(A)+J| = {}",
        d.ring().size(),
        d.image_ring().size()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ideal_generated, product};

    fn z(n: usize) -> Ring {
        FiniteRing::zmod(n).unwrap()
    }

    fn duplication(r: &Ring, gens: &[usize]) -> AmalgamRing {
        let j = ideal_generated(r, gens);
        amalgamate(r, r, &RingHom::identity(r), &j).unwrap()
    }

    #[test]
    fn zero_ideal_gives_a() {
        let z6 = z(6);
        let d = duplication(&z6, &[]);
        assert_eq!(d.ring().size(), 6);
        assert!(d.pa().is_injective() && d.pa().is_surjective());
    }

    #[test]
    fn unit_ideal_gives_product() {
        let z4 = z(4);
        let d = duplication(&z4, &[1]);
        let p = product(&z4, &z4).unwrap();
        assert_eq!(d.ring().size(), 16);
        assert!(d.ring().same_tables(&p));
    }

    #[test]
    fn z4_duplication() {
        let z4 = z(4);
        let d = duplication(&z4, &[2]);
        assert_eq!(d.ring().size(), 8);
        assert!(check_canonical_maps(&d).holds());

        let m = ideal_generated(&z4, &[2]);
        let pair = join_ideal(&d, &m, d.j().members()).unwrap();
        assert_eq!(pair.join.len(), 4);
        let whole = join_ideal(&d, &IdealSet::unit(&z4), d.j().members()).unwrap();
        assert!(whole.join.is_unit());
        let j0 = join_ideal(&d, &IdealSet::zero(&z4), d.j().members()).unwrap();
        assert_eq!(j0.join, d.j0());
    }

    #[test]
    fn join_rejects_bad_h() {
        let z4 = z(4);
        let d = duplication(&z4, &[2]);
        let err = join_ideal(&d, &IdealSet::unit(&z4), &[0]).unwrap_err();
        assert!(matches!(err, CoreError::HypothesisViolation(_)));
        let err = join_ideal(&d, &IdealSet::zero(&z4), &[0, 1]).unwrap_err();
        assert!(matches!(err, CoreError::HypothesisViolation(_)));
    }

    #[test]
    fn locality() {
        let f2 = z(2);
        let z4 = z(4);
        let f = RingHom::from_generator_images(f2.clone(), z4.clone(), &[]);
        // F_2 -> Z/4 has no unital map; use Z/4 -> F_2 direction below instead.
        assert!(f.is_err());

        let dual = FiniteRing::poly_quot(2, &[0, 0, 1]).unwrap();
        let f = RingHom::from_generator_images(f2.clone(), dual.clone(), &[]).unwrap();
        let j = ideal_generated(&dual, &[2]);
        let d = amalgamate(&f2, &dual, &f, &j).unwrap();
        assert_eq!(d.ring().size(), 4);
        let m = is_local_amalgam(&d).unwrap().unwrap();
        assert_eq!(m.len(), 2);

        let z6 = z(6);
        let d = duplication(&z6, &[2]);
        assert!(is_local_amalgam(&d).unwrap().is_none());

        let f2f2 = product(&f2, &f2).unwrap();
        let diag = RingHom::from_generator_images(z4.clone(), f2f2.clone(), &[]).unwrap();
        let j = ideal_generated(&f2f2, &[2]); // (1,0)
        let d = amalgamate(&z4, &f2f2, &diag, &j).unwrap();
        assert!(is_local_amalgam(&d).unwrap().is_none());
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let z4 = z(4);
        let z2 = z(2);
        let j = ideal_generated(&z2, &[]);
        assert!(amalgamate(&z4, &z4, &RingHom::identity(&z4), &j).is_err());
    }
}
