use std::sync::OnceLock;

use amalgam_core::amalgam::{check_canonical_maps, is_local_amalgam};
use amalgam_core::ideals::{
    annihilator, check_hom_description, check_ideal_extension, check_radical_corollary, hom_lambda,
    radical,
};
use amalgam_core::local::{
    check_embdim_bounds, check_embdim_equality, check_gorenstein_socle, check_length_identities,
    min_gens, min_gens_brute,
};
use amalgam_core::ring::{all_homs, all_ideals, product, quotient};
use amalgam_core::semigroup::{
    check_colength, check_duplication, check_scaled_multiplicity, check_semigroup_gorenstein,
    NumericalSemigroup, SemigroupIdeal,
};
use amalgam_core::series::{in_witness_ring, witness_check_principal_maximal};
use amalgam_core::spectrum::{
    check_gamma_intersection, check_localizations, check_min_partition, check_spec_partition,
    local_factors, prime_ideals,
};
use amalgam_core::{amalgamate, FiniteRing, Ring, Verdict};
use proptest::prelude::*;

fn ring_pool() -> &'static [Ring] {
    static POOL: OnceLock<Vec<Ring>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool: Vec<Ring> = (2..=64).map(|n| FiniteRing::zmod(n).unwrap()).collect();
        for (p, m) in [
            (2, vec![1, 1, 1]),
            (2, vec![0, 0, 1]),
            (2, vec![0, 0, 0, 1]),
            (2, vec![1, 1, 0, 1]),
            (3, vec![0, 0, 1]),
            (3, vec![1, 0, 1]),
            (2, vec![1, 0, 1]),
            (2, vec![0, 1, 1]),
        ] {
            pool.push(FiniteRing::poly_quot(p, &m).unwrap());
        }
        let small: Vec<Ring> = pool.iter().filter(|r| r.size() <= 9).cloned().collect();
        for a in &small {
            for b in &small {
                if a.size() * b.size() <= 64 && a.size() <= b.size() {
                    pool.push(product(a, b).unwrap());
                }
            }
        }
        pool
    })
}

fn local_pool() -> &'static [Ring] {
    static POOL: OnceLock<Vec<Ring>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool: Vec<Ring> = [2, 3, 4, 8, 9]
            .iter()
            .map(|&n| FiniteRing::zmod(n).unwrap())
            .collect();
        for (p, m) in [
            (2, vec![1, 1, 1]),
            (2, vec![0, 0, 1]),
            (2, vec![0, 0, 0, 1]),
            (3, vec![0, 0, 1]),
        ] {
            pool.push(FiniteRing::poly_quot(p, &m).unwrap());
        }
        pool
    })
}

fn target_pool() -> &'static [Ring] {
    static POOL: OnceLock<Vec<Ring>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool = local_pool().to_vec();
        let base = local_pool();
        for (i, a) in base.iter().enumerate() {
            for b in &base[i..] {
                if a.size() * b.size() <= 16 {
                    pool.push(product(a, b).unwrap());
                }
            }
        }
        pool.push(FiniteRing::zmod(6).unwrap());
        pool.push(FiniteRing::zmod(12).unwrap());
        pool
    })
}

fn brute_force_primes(r: &Ring) -> Vec<Vec<usize>> {
    all_ideals(r)
        .into_iter()
        .filter(|i| !i.is_unit() && quotient(r, i).unwrap().0.is_domain())
        .map(|i| i.members().to_vec())
        .collect()
}

fn not_falsified(v: &Verdict) -> Result<(), TestCaseError> {
    prop_assert!(!v.is_falsified(), "{v}");
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn primes_agree_with_domain_quotients(idx in 0usize..1000) {
        let pool = ring_pool();
        let r = &pool[idx % pool.len()];
        let mut fast: Vec<Vec<usize>> = prime_ideals(r).iter().map(|p| p.members().to_vec()).collect();
        fast.sort();
        let mut slow = brute_force_primes(r);
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn local_factors_multiply_back(idx in 0usize..1000) {
        let pool = ring_pool();
        let r = &pool[idx % pool.len()];
        let factors = local_factors(r);
        prop_assert_eq!(factors.len(), prime_ideals(r).len());
        prop_assert_eq!(factors.iter().map(|lf| lf.ring.size()).product::<usize>(), r.size());
        let mut images: Vec<Vec<usize>> = r.elements().map(|x| factors.iter().map(|lf| lf.projection.apply(x)).collect()).collect();
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), r.size());
    }

    #[test]
    fn radical_laws(idx in 0usize..1000, i in 0usize..64, k in 0usize..64) {
        let pool = ring_pool();
        let r = &pool[idx % pool.len()];
        let ideals = all_ideals(r);
        let (a, b) = (&ideals[i % ideals.len()], &ideals[k % ideals.len()]);
        let (ra, rb) = (radical(r, a).unwrap(), radical(r, b).unwrap());
        prop_assert_eq!(radical(r, &ra).unwrap(), ra.clone());
        prop_assert!(a.is_subset_of(&ra));
        if a.is_subset_of(b) {
            prop_assert!(ra.is_subset_of(&rb));
        }
        prop_assert_eq!(radical(r, &a.intersection(b)).unwrap(), ra.intersection(&rb));
    }

    #[test]
    fn nakayama_count_matches_search(idx in 0usize..1000, i in 0usize..64) {
        let pool = ring_pool();
        let r = &pool[idx % pool.len()];
        prop_assume!(r.size() <= 32);
        let ideals = all_ideals(r);
        let j = &ideals[i % ideals.len()];
        prop_assert_eq!(min_gens(r, j).unwrap(), min_gens_brute(r, j));
    }

    #[test]
    fn amalgamation_statements_never_fail(a in 0usize..100, b in 0usize..100, h in 0usize..100, j in 0usize..100) {
        let a = &local_pool()[a % local_pool().len()];
        let b = &target_pool()[b % target_pool().len()];
        let homs = all_homs(a, b);
        prop_assume!(!homs.is_empty());
        let f = &homs[h % homs.len()];
        let ideals = all_ideals(b);
        let j = &ideals[j % ideals.len()];
        let d = amalgamate(a, b, f, j).unwrap();
        prop_assert!(check_canonical_maps(&d).holds(), "{}", check_canonical_maps(&d));
        prop_assert!(check_spec_partition(&d).holds());
        prop_assert!(check_min_partition(&d).holds());
        prop_assert!(check_localizations(&d).holds(), "{}", check_localizations(&d));
        prop_assert!(check_gamma_intersection(&d).holds());
        prop_assert!(check_ideal_extension(&d).holds());
        prop_assert!(check_hom_description(&d).holds());
        is_local_amalgam(&d).unwrap();
        for v in [
            check_radical_corollary(&d),
            check_embdim_bounds(&d),
            check_embdim_equality(&d),
            check_length_identities(&d),
            check_gorenstein_socle(&d),
        ] {
            not_falsified(&v)?;
        }
        let lambda = hom_lambda(&d).unwrap();
        if lambda.ann_vanishes {
            prop_assert_eq!(annihilator(d.ring(), &d.j0()).len(), d.f_preimage_j().len());
        }
    }

    #[test]
    fn semigroup_identities(gens in proptest::collection::vec(2u64..14, 1..4), extra in proptest::collection::vec(0i64..20, 0..3)) {
        let mut gens = gens;
        gens.push(gens.iter().map(|g| g + 1).max().unwrap());
        let s = NumericalSemigroup::new(&gens);
        prop_assume!(s.is_ok());
        let s = s.unwrap();
        let mut ideal_gens = vec![0];
        ideal_gens.extend(extra);
        let e = SemigroupIdeal::new(&s, &ideal_gens).unwrap();
        prop_assert!(check_colength(&e).holds(), "{}", check_colength(&e));
        prop_assert!(check_duplication(&e).holds(), "{}", check_duplication(&e));
        not_falsified(&check_semigroup_gorenstein(&e))?;
        prop_assert!(check_scaled_multiplicity(&s, 1, &s, &e).holds());
        for d in 1..=3u64 {
            let n = NumericalSemigroup::naturals();
            let en = SemigroupIdeal::new(&n, &ideal_gens).unwrap();
            prop_assert!(check_scaled_multiplicity(&s, d, &n, &en).holds());
        }
    }

    #[test]
    fn series_divisions_multiply_back(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), prec in 2usize..10) {
        let tr = witness_check_principal_maximal(p, prec).unwrap();
        prop_assert_eq!(tr.steps.len(), 2 + 4 * prec);
        let one = amalgam_core::series::TruncatedSeries::constant(prec, num_rational::BigRational::from_integer(1.into()));
        prop_assert!(in_witness_ring(&one, p));
    }
}
