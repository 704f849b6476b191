//! Named suites: each maps an instance to one status line.

use std::fmt;
use std::str::FromStr;

use amalgam_core::amalgam::{check_canonical_maps, is_local_amalgam};
use amalgam_core::ideals::{check_hom_description, check_ideal_extension, check_radical_corollary};
use amalgam_core::local::{
    check_embdim_bounds, check_embdim_equality, check_gorenstein_socle, check_length_identities,
    expands_to_unit,
};
use amalgam_core::semigroup::{
    check_colength, check_duplication, check_scaled_multiplicity, check_semigroup_gorenstein,
    SemigroupIdeal,
};
use amalgam_core::series::witness_embdim_equality;
use amalgam_core::spectrum::{
    check_gamma_intersection, check_localizations, check_min_partition, check_spec_partition,
    maximal_ideals,
};
use amalgam_core::{AmalgamRing, Verdict};
use serde::{Deserialize, Serialize};

use crate::instance::Compiled;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    CanonicalMaps,
    SpecPartition,
    MinPartition,
    Localizations,
    GammaIntersection,
    IdealExtension,
    Radical,
    HomLambda,
    EmbdimBounds,
    EmbdimEquality,
    DuplicationInvariants,
    ScaledMultiplicity,
    GorensteinSocle,
    EdimlowerWitness,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::CanonicalMaps,
        Suite::SpecPartition,
        Suite::MinPartition,
        Suite::Localizations,
        Suite::GammaIntersection,
        Suite::IdealExtension,
        Suite::Radical,
        Suite::HomLambda,
        Suite::EmbdimBounds,
        Suite::EmbdimEquality,
        Suite::DuplicationInvariants,
        Suite::ScaledMultiplicity,
        Suite::GorensteinSocle,
        Suite::EdimlowerWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CanonicalMaps => "canonical-maps",
            Suite::SpecPartition => "spec-partition",
            Suite::MinPartition => "min-partition",
            Suite::Localizations => "localizations",
            Suite::GammaIntersection => "gamma-intersection",
            Suite::IdealExtension => "ideal-extension",
            Suite::Radical => "radical",
            Suite::HomLambda => "hom-lambda",
            Suite::EmbdimBounds => "embdim-bounds",
            Suite::EmbdimEquality => "embdim-equality",
            Suite::DuplicationInvariants => "duplication-invariants",
            Suite::ScaledMultiplicity => "scaled-multiplicity",
            Suite::GorensteinSocle => "gorenstein-socle",
            Suite::EdimlowerWitness => "edimlower-witness",
        }
    }

    /// The statement a verified line instantiates.
    pub fn statement(self) -> &'static str {
        match self {
            Suite::CanonicalMaps => {
                "A ⋈^f J is a subring of A × B, the pullback of f and B → B/J, with ι, p_A, p_B and γ ring maps"
            }
            Suite::SpecPartition => {
                "Spec(A ⋈^f J) is the disjoint union of the lifts P ⋈ J and Q̄, maximality transfers, and A ⋈^f J is local iff A is local and J ⊆ Jac(B)"
            }
            Suite::MinPartition => {
                "minimal primes of A ⋈^f J are the lifts of Min(B) ∖ V(J) and of the minimal primes of A outside the excluded set"
            }
            Suite::Localizations => {
                "localizations of A ⋈^f J at its primes are B_Q, A_P, or A_P ⋈ J_S"
            }
            Suite::GammaIntersection => {
                "primes containing {0} × J and f⁻¹(J) × {0} correspond to primes of (f(A) + J)/J"
            }
            Suite::IdealExtension => {
                "the extension of an ideal I of A is I ⋈ (f(I)B)J, and the length identities of the quotients hold"
            }
            Suite::Radical => {
                "for A local and I M-primary, the radical of I(A ⋈^f J) is M ⋈ J"
            }
            Suite::HomLambda => {
                "Λ: Hom(A, A ⋈^f J) → Ann({0} × J) is onto exactly when Ann_{f(A)+J}(J) = 0"
            }
            Suite::EmbdimBounds => "embdim(A) ≤ embdim(A ⋈^f J) ≤ embdim(A) + ν(J)",
            Suite::EmbdimEquality => {
                "embdim(A ⋈^f J) = embdim(A) + ν(J) when f(M)B and J lie in Jac(B)"
            }
            Suite::DuplicationInvariants => {
                "the duplication of a semigroup ring along E has multiplicity 2m and embedding dimension embdim(S) + ν(E)"
            }
            Suite::ScaledMultiplicity => {
                "the amalgamation along t^s ↦ t^(ds) has multiplicity m + |E ∖ (dm + E)|"
            }
            Suite::GorensteinSocle => {
                "J ≅ ω_A makes A ⋈^f J Gorenstein; a duplication along E is Gorenstein iff E is a translate of K(S)"
            }
            Suite::EdimlowerWitness => {
                "with f(M)B = B, embdim(A ⋈^f J) can stay at embdim(A): ℤ_(p) + Tℚ[[T]] has maximal ideal pS"
            }
        }
    }

    pub fn applies_to(self, kind: &str) -> bool {
        match self {
            Suite::DuplicationInvariants => kind == "semigroup",
            Suite::ScaledMultiplicity => kind == "scaled-semigroup",
            Suite::GorensteinSocle => kind == "finite" || kind == "semigroup",
            Suite::EdimlowerWitness => kind == "finite" || kind == "series-witness",
            _ => kind == "finite",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Falsified,
    OutOfHypothesis,
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Falsified => "falsified",
            Status::OutOfHypothesis => "out-of-hypothesis",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub detail: String,
}

impl Outcome {
    fn skipped(detail: impl Into<String>) -> Self {
        Outcome {
            status: Status::Skipped,
            detail: detail.into(),
        }
    }
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        let status = match &v {
            Verdict::Verified(_) => Status::Verified,
            Verdict::Falsified(_) => Status::Falsified,
            Verdict::OutOfHypothesis(_) => Status::OutOfHypothesis,
        };
        Outcome {
            status,
            detail: v.detail().to_string(),
        }
    }
}

/// Merges verdicts of one suite; the first verdict decides between verified
/// and out-of-hypothesis, any falsification wins.
fn combine(verdicts: Vec<Verdict>) -> Verdict {
    if let Some(v) = verdicts.iter().find(|v| v.is_falsified()) {
        return v.clone();
    }
    let mut iter = verdicts.into_iter();
    let first = iter.next().expect("at least one verdict");
    if !first.holds() {
        return first;
    }
    let mut details = vec![first.detail().to_string()];
    for v in iter {
        match v {
            Verdict::Verified(d) => details.push(d),
            Verdict::OutOfHypothesis(d) => details.push(format!("n/a: {d}")),
            Verdict::Falsified(_) => unreachable!(),
        }
    }
    Verdict::Verified(details.join("; "))
}

fn locality(d: &AmalgamRing) -> Verdict {
    match is_local_amalgam(d) {
        Ok(local) => Verdict::Verified(format!(
            "local = {}, {} maximal ideals",
            local.is_some(),
            maximal_ideals(d.ring()).len()
        )),
        Err(e) => Verdict::Falsified(e.to_string()),
    }
}

fn finite_vacuity(d: &AmalgamRing) -> Verdict {
    if maximal_ideals(d.a()).len() != 1 {
        return Verdict::OutOfHypothesis("A is not local".into());
    }
    match expands_to_unit(d) {
        Ok(false) => Verdict::OutOfHypothesis(
            "f(M)B ≠ B since M is nilpotent; the hypothesis is vacuous on finite A and is covered by the series witness".into(),
        ),
        Ok(true) => Verdict::Falsified("finite local A with f(M)B = B".into()),
        Err(e) => Verdict::Falsified(e.to_string()),
    }
}

fn run_finite(suite: Suite, d: &AmalgamRing) -> Outcome {
    let verdict = match suite {
        Suite::CanonicalMaps => check_canonical_maps(d),
        Suite::SpecPartition => combine(vec![check_spec_partition(d), locality(d)]),
        Suite::MinPartition => check_min_partition(d),
        Suite::Localizations => check_localizations(d),
        Suite::GammaIntersection => check_gamma_intersection(d),
        Suite::IdealExtension => {
            combine(vec![check_ideal_extension(d), check_length_identities(d)])
        }
        Suite::Radical => check_radical_corollary(d),
        Suite::HomLambda => check_hom_description(d),
        Suite::EmbdimBounds => check_embdim_bounds(d),
        Suite::EmbdimEquality => check_embdim_equality(d),
        Suite::GorensteinSocle => check_gorenstein_socle(d),
        Suite::EdimlowerWitness => finite_vacuity(d),
        Suite::DuplicationInvariants | Suite::ScaledMultiplicity => {
            return Outcome::skipped("semigroup suite on a finite instance")
        }
    };
    verdict.into()
}

fn describe(e: &SemigroupIdeal) -> String {
    let gens: Vec<String> = e.generators().iter().map(|g| g.to_string()).collect();
    format!("E = ⟨{}⟩", gens.join(", "))
}

/// Runs `check` on every ideal; the first falsification is reported with
/// the ideal that produced it.
fn over_ideals(
    ideals: &[SemigroupIdeal],
    what: &str,
    check: impl Fn(&SemigroupIdeal) -> Verdict,
) -> Outcome {
    let mut verified = 0;
    let mut outside = 0;
    for e in ideals {
        match check(e) {
            Verdict::Verified(_) => verified += 1,
            Verdict::OutOfHypothesis(_) => outside += 1,
            Verdict::Falsified(d) => {
                return Outcome {
                    status: Status::Falsified,
                    detail: format!("{}: {d}", describe(e)),
                }
            }
        }
    }
    let status = if verified > 0 {
        Status::Verified
    } else {
        Status::OutOfHypothesis
    };
    Outcome {
        status,
        detail: format!("{verified} ideals {what}, {outside} outside the hypotheses"),
    }
}

pub fn run_suite(suite: Suite, compiled: &Compiled) -> Outcome {
    match compiled {
        Compiled::Finite(d) => run_finite(suite, d),
        Compiled::Corrupted { at, error } => match suite {
            Suite::CanonicalMaps => Outcome {
                status: Status::Falsified,
                detail: format!("{at}: {error}"),
            },
            _ => Outcome::skipped(format!("{at} fails the ring axioms")),
        },
        Compiled::Semigroup { ideals, .. } => match suite {
            Suite::DuplicationInvariants => over_ideals(ideals, "with e = 2m", |e| {
                combine(vec![check_duplication(e), check_colength(e)])
            }),
            Suite::GorensteinSocle => {
                over_ideals(ideals, "with a checked Gorenstein flag", check_semigroup_gorenstein)
            }
            _ => Outcome::skipped("not a semigroup duplication suite"),
        },
        Compiled::Scaled { s, d, t, ideals } => match suite {
            Suite::ScaledMultiplicity => over_ideals(ideals, "matching the oracle", |e| {
                check_scaled_multiplicity(s, *d, t, e)
            }),
            _ => Outcome::skipped("not a scaled semigroup suite"),
        },
        Compiled::Series { p, precision } => match suite {
            Suite::EdimlowerWitness => match witness_embdim_equality(*p, *precision) {
                Ok(w) => Outcome {
                    status: Status::Verified,
                    detail: format!(
                        "p = {p}, N = {precision}: embdim(D) = {} = embdim(A) < {} = embdim(A) + ν(J)",
                        w.embdim_d,
                        w.upper_bound()
                    ),
                },
                Err(e) => Outcome {
                    status: Status::Falsified,
                    detail: e.to_string(),
                },
            },
            _ => Outcome::skipped("not a series suite"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(
                serde_json::to_string(&s).unwrap(),
                format!("\"{}\"", s.name())
            );
        }
        assert!("spectrum".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_applies_somewhere() {
        for s in Suite::ALL {
            assert!(
                ["finite", "semigroup", "scaled-semigroup", "series-witness"]
                    .iter()
                    .any(|k| s.applies_to(k)),
                "{s}"
            );
        }
    }

    #[test]
    fn combine_keeps_falsification() {
        let v = combine(vec![
            Verdict::Verified("a".into()),
            Verdict::Falsified("b".into()),
        ]);
        assert!(v.is_falsified());
        let v = combine(vec![
            Verdict::OutOfHypothesis("x".into()),
            Verdict::Verified("a".into()),
        ]);
        assert!(matches!(v, Verdict::OutOfHypothesis(_)));
    }
}
