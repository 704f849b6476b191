//! Numerical semigroups and their ideals, standing in for the
//! one-dimensional rings `k[[t^S]]` over an infinite field.
//!
//! Lengths of monomial modules are counts of values, so every multiplicity
//! here is an integer count over value sets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::verdict::{ensure, Verdict};

/// A cofinite submonoid of the non-negative integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    conductor: u64,
    /// Membership of `0..conductor`.
    below: Vec<bool>,
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.generators)
    }
}

impl NumericalSemigroup {
    pub fn new(gens: &[u64]) -> Result<Arc<Self>> {
        let gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        if gens.is_empty() {
            return Err(CoreError::InvalidParameter(
                "a numerical semigroup needs a positive generator".into(),
            ));
        }
        let g = gens.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(CoreError::InvalidParameter(format!(
                "generators have gcd {g}"
            )));
        }
        let m = *gens.iter().min().unwrap();
        // sieve until m consecutive members appear
        let mut member = vec![true];
        let mut run = 1u64;
        let mut n = 0u64;
        while run < m {
            n += 1;
            let inside = gens.iter().any(|&g| g <= n && member[(n - g) as usize]);
            member.push(inside);
            run = if inside { run + 1 } else { 0 };
        }
        let conductor = n + 1 - m;
        member.truncate(conductor as usize);
        let mut s = NumericalSemigroup {
            generators: Vec::new(),
            conductor,
            below: member,
        };
        let generators: Vec<u64> = (1..=conductor + m)
            .filter(|&x| {
                s.contains(x as i64)
                    && !(1..x).any(|y| s.contains(y as i64) && s.contains((x - y) as i64))
            })
            .collect();
        s.generators = generators;
        Ok(Arc::new(s))
    }

    /// `ℕ = ⟨1⟩`.
    pub fn naturals() -> Arc<Self> {
        Self::new(&[1]).expect("1 generates ℕ")
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as u64;
        n >= self.conductor || self.below[n as usize]
    }

    /// Minimal generators, ascending.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn embdim(&self) -> usize {
        self.generators.len()
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap; `-1` for `ℕ`.
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor)
            .filter(|&n| !self.below[n as usize])
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius();
        (0..=f).all(|z| self.contains(z) != self.contains(f - z))
    }
}

/// A monomial ideal `E = ⋃ (g + S)` of a numerical semigroup.
#[derive(Clone, PartialEq, Eq)]
pub struct SemigroupIdeal {
    ambient: Arc<NumericalSemigroup>,
    generators: Vec<i64>,
    min: i64,
    /// Every integer from here on lies in `E`.
    conductor: i64,
}

impl fmt::Debug for SemigroupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}", self.generators, self.ambient)
    }
}

impl SemigroupIdeal {
    pub fn new(ambient: &Arc<NumericalSemigroup>, gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(CoreError::InvalidParameter(
                "an ideal needs at least one generator".into(),
            ));
        }
        let min = *gens.iter().min().unwrap();
        let raw_contains = |n: i64| gens.iter().any(|&g| ambient.contains(n - g));
        let top = min + ambient.conductor() as i64;
        let mut conductor = top;
        while conductor > min && raw_contains(conductor - 1) {
            conductor -= 1;
        }
        let mut e = SemigroupIdeal {
            ambient: ambient.clone(),
            generators: Vec::new(),
            min,
            conductor,
        };
        let m = ambient.multiplicity() as i64;
        e.generators = (min..conductor.max(min) + m + 1)
            .filter(|&x| raw_contains(x))
            .filter(|&x| !e.is_redundant(x, raw_contains))
            .collect();
        Ok(e)
    }

    /// `S` itself.
    pub fn principal(ambient: &Arc<NumericalSemigroup>, x: i64) -> Self {
        Self::new(ambient, &[x]).expect("one generator")
    }

    /// The maximal ideal `S \ {0}`.
    pub fn maximal(ambient: &Arc<NumericalSemigroup>) -> Self {
        let gens: Vec<i64> = ambient.generators().iter().map(|&g| g as i64).collect();
        Self::new(ambient, &gens).expect("S has generators")
    }

    fn is_redundant(&self, x: i64, member: impl Fn(i64) -> bool) -> bool {
        (1..=x - self.min).any(|s| self.ambient.contains(s) && member(x - s))
    }

    pub fn ambient(&self) -> &Arc<NumericalSemigroup> {
        &self.ambient
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.conductor
            || (n >= self.min
                && self
                    .generators
                    .iter()
                    .any(|&g| self.ambient.contains(n - g)))
    }

    /// Minimal generators: the elements outside `E + (S \ {0})`.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn min(&self) -> i64 {
        self.min
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    /// Members below the conductor.
    pub fn small_members(&self) -> Vec<i64> {
        (self.min..self.conductor)
            .filter(|&n| self.contains(n))
            .collect()
    }

    /// `x + E`.
    pub fn translate(&self, x: i64) -> Self {
        let gens: Vec<i64> = self.generators.iter().map(|g| g + x).collect();
        Self::new(&self.ambient, &gens).expect("translates keep their generators")
    }

    /// Equal up to translation.
    pub fn is_translate_of(&self, other: &SemigroupIdeal) -> bool {
        let shift = other.min - self.min;
        self.conductor + shift == other.conductor
            && (self.min..self.conductor).all(|n| self.contains(n) == other.contains(n + shift))
    }
}

/// `K(S) = {z : F - z ∉ S}`.
pub fn canonical_ideal(s: &Arc<NumericalSemigroup>) -> SemigroupIdeal {
    let f = s.frobenius();
    let members: Vec<i64> = (0..=f.max(0)).filter(|&z| !s.contains(f - z)).collect();
    let k = SemigroupIdeal::new(s, &members).expect("0 lies in K(S)");
    debug_assert!((0..=f + 1).all(|z| k.contains(z) == !s.contains(f - z)));
    k
}

/// `ν(E)`, the number of minimal generators.
pub fn nu(e: &SemigroupIdeal) -> usize {
    e.generators.len()
}

/// `|E \ (x + E)|`.
pub fn colength_shift(e: &SemigroupIdeal, x: i64) -> usize {
    (e.min..e.conductor + x)
        .filter(|&n| e.contains(n) && !e.contains(n - x))
        .count()
}

/// `|(x + E) \ E|`, zero when `x ∈ S`.
pub fn overshoot_shift(e: &SemigroupIdeal, x: i64) -> usize {
    (e.min + x..e.conductor + x)
        .filter(|&n| e.contains(n - x) && !e.contains(n))
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DuplicationInvariants {
    pub multiplicity: u64,
    pub embdim: usize,
    pub is_cm: bool,
    pub is_gorenstein: bool,
}

/// Invariants of the duplication `k[[t^S]] ⋈ J` along the monomial ideal with
/// value set `E`.
pub fn duplication_invariants(
    s: &Arc<NumericalSemigroup>,
    e: &SemigroupIdeal,
) -> Result<DuplicationInvariants> {
    if e.ambient() != s {
        return Err(CoreError::InvalidParameter("E is not an ideal of S".into()));
    }
    let m = s.multiplicity();
    Ok(DuplicationInvariants {
        multiplicity: m + colength_shift(e, m as i64) as u64,
        embdim: s.embdim() + nu(e),
        // a nonzero ideal of a one-dimensional domain is maximal CM
        is_cm: true,
        is_gorenstein: e.is_translate_of(&canonical_ideal(s)),
    })
}

/// `e(A ⋈^f J) = m + |E \ (dm + E)|` for `f: t^s ↦ t^{ds}` from
/// `k[[t^S]]` to `k[[t^T]]` and `J` with value set `E`.
pub fn scaled_amalgam_multiplicity(
    s: &Arc<NumericalSemigroup>,
    d: u64,
    t: &Arc<NumericalSemigroup>,
    e: &SemigroupIdeal,
) -> Result<u64> {
    if d == 0 {
        return Err(CoreError::InvalidParameter(
            "scale factor must be positive".into(),
        ));
    }
    if let Some(g) = s
        .generators()
        .iter()
        .find(|&&g| !t.contains((d * g) as i64))
    {
        return Err(CoreError::HypothesisViolation(format!(
            "{d}·{g} is not in T"
        )));
    }
    if e.ambient() != t {
        return Err(CoreError::InvalidParameter("E is not an ideal of T".into()));
    }
    let m = s.multiplicity();
    Ok(m + colength_shift(e, (d * m) as i64) as u64)
}

/// Coordinates kept by the truncated-basis oracle on each side.
pub fn oracle_truncation(
    s: &NumericalSemigroup,
    d: u64,
    t: &NumericalSemigroup,
    e: &SemigroupIdeal,
) -> (u64, u64) {
    let m = s.multiplicity();
    // past these orders an element of D already lies in I·D
    let derived = (m + s.conductor()).max((d * m + e.conductor().max(0) as u64).div_ceil(d));
    let floor = (d * (t.conductor() + d * m) + 1).div_ceil(d);
    let n_a = derived.max(floor);
    (n_a, d * n_a)
}

const FIELD: u64 = (1 << 31) - 1;

/// Rank over `GF(2^31 - 1)` of sparse vectors given as `(column, coefficient)`.
fn sparse_rank(rows: Vec<Vec<(usize, u64)>>) -> usize {
    fn inv(x: u64) -> u64 {
        let (mut base, mut exp, mut acc) = (x % FIELD, FIELD - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % FIELD;
            }
            base = base * base % FIELD;
            exp >>= 1;
        }
        acc
    }
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for row in rows {
        let mut v: std::collections::BTreeMap<usize, u64> =
            row.into_iter().filter(|&(_, c)| c % FIELD != 0).collect();
        while let Some((&lead, &c)) = v.iter().next() {
            match pivots.get(&lead) {
                Some(p) => {
                    // p is normalised to lead coefficient 1
                    for &(col, pc) in p {
                        let entry = v.entry(col).or_insert(0);
                        *entry = (*entry + FIELD - c * pc % FIELD) % FIELD;
                        if *entry == 0 {
                            v.remove(&col);
                        }
                    }
                }
                None => {
                    let ic = inv(c);
                    pivots.insert(
                        lead,
                        v.iter().map(|(&col, &x)| (col, x * ic % FIELD)).collect(),
                    );
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `dim_k D / I·D` for `D = k[[t^S]] ⋈^f J` and `I = (t^m)`, by linear algebra
/// on truncated coordinate vectors in `k[[t]] × k[[t]]`.
pub fn truncated_basis_multiplicity(
    s: &Arc<NumericalSemigroup>,
    d: u64,
    t: &Arc<NumericalSemigroup>,
    e: &SemigroupIdeal,
) -> Result<u64> {
    let (n_a, _) = oracle_truncation(s, d, t, e);
    truncated_basis_multiplicity_at(s, d, e, n_a)
}

/// The same count with `n_a` coordinates on the `A` side and `d·n_a` on the
/// `B` side.
pub fn truncated_basis_multiplicity_at(
    s: &Arc<NumericalSemigroup>,
    d: u64,
    e: &SemigroupIdeal,
    n_a: u64,
) -> Result<u64> {
    if e.min() < 0 {
        return Err(CoreError::InvalidParameter("E must lie in T".into()));
    }
    let n_b = d * n_a;
    let m = s.multiplicity();
    // columns: 0..n_a on the A side, n_a..n_a+n_b on the B side
    let pair = |a: u64, b: u64| -> Vec<(usize, u64)> {
        let mut v = Vec::with_capacity(2);
        if a < n_a {
            v.push((a as usize, 1));
        }
        if b < n_b {
            v.push(((n_a + b) as usize, 1));
        }
        v
    };
    let right = |b: u64| vec![((n_a + b) as usize, 1)];
    let members_s: Vec<u64> = (0..n_a).filter(|&x| s.contains(x as i64)).collect();
    let members_e: Vec<u64> = (0..n_b).filter(|&x| e.contains(x as i64)).collect();

    let d_rows: Vec<_> = members_s
        .iter()
        .map(|&x| pair(x, d * x))
        .chain(members_e.iter().map(|&x| right(x)))
        .collect();
    let id_rows: Vec<_> = members_s
        .iter()
        .filter(|&&x| x + m < n_a)
        .map(|&x| pair(x + m, d * (x + m)))
        .chain(
            members_e
                .iter()
                .filter(|&&x| x + d * m < n_b)
                .map(|&x| right(x + d * m)),
        )
        .collect();
    let rank_d = sparse_rank(d_rows);
    let rank_id = sparse_rank(id_rows);
    ensure!(rank_id <= rank_d, "rank of I·D exceeds rank of D");
    Ok((rank_d - rank_id) as u64)
}

/// Every numerical semigroup with Frobenius number at most `max_frobenius`
/// and at most `max_embdim` minimal generators, in a fixed order.
///
/// Walks the tree in which the children of `S` are `S \ {g}` for minimal
/// generators `g > F(S)`.
pub fn semigroups_up_to(max_frobenius: i64, max_embdim: usize) -> Vec<Arc<NumericalSemigroup>> {
    let mut out = Vec::new();
    let mut stack = vec![NumericalSemigroup::naturals()];
    while let Some(s) = stack.pop() {
        if s.embdim() <= max_embdim {
            out.push(s.clone());
        }
        for &g in s.generators().iter().rev() {
            if (g as i64) > s.frobenius() && (g as i64) <= max_frobenius {
                let mut members: BTreeSet<u64> = (1..=(2 * g + 2 + s.multiplicity()))
                    .filter(|&x| s.contains(x as i64))
                    .collect();
                members.remove(&g);
                let gens: Vec<u64> = members.into_iter().collect();
                stack.push(
                    NumericalSemigroup::new(&gens)
                        .expect("removing a generator above F keeps gcd 1"),
                );
            }
        }
    }
    out.sort_by(|a, b| (a.frobenius(), a.generators()).cmp(&(b.frobenius(), b.generators())));
    out
}

/// Ideals of `S` containing `0` with at most three minimal generators,
/// generated by `0` and at most two gaps, deduplicated.
pub fn small_ideals(s: &Arc<NumericalSemigroup>) -> Vec<SemigroupIdeal> {
    let gaps: Vec<i64> = s.gaps().into_iter().map(|g| g as i64).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |gens: Vec<i64>| {
        let e = SemigroupIdeal::new(s, &gens).expect("nonempty");
        if nu(&e) <= 3 && seen.insert(e.generators.clone()) {
            out.push(e);
        }
    };
    push(vec![0]);
    for (i, &g) in gaps.iter().enumerate() {
        push(vec![0, g]);
        for &h in &gaps[i + 1..] {
            push(vec![0, g, h]);
        }
    }
    out
}

/// `|E \ (x + E)| - |(x + E) \ E| = x` for `1 ≤ x ≤ 2m`, so that
/// `|E \ (x + E)| = x` whenever `x ∈ S`.
pub fn check_colength(e: &SemigroupIdeal) -> Verdict {
    Verdict::from_result((|| {
        let s = e.ambient();
        let m = s.multiplicity() as i64;
        for x in 1..=2 * m {
            let (lost, gained) = (colength_shift(e, x), overshoot_shift(e, x));
            ensure!(
                lost as i64 - gained as i64 == x,
                "|E \\ ({x} + E)| - |({x} + E) \\ E| = {lost} - {gained} for E = {e:?}"
            );
            if s.contains(x) {
                ensure!(gained == 0, "{x} ∈ S but {x} + E ⊄ E for E = {e:?}");
            }
        }
        Ok(format!("x = 1..{}", 2 * m))
    })())
}

/// Multiplicity, embedding dimension and Gorenstein flag of the duplication,
/// with the multiplicity also computed by the truncated-basis oracle.
pub fn check_duplication(e: &SemigroupIdeal) -> Verdict {
    Verdict::from_result((|| {
        let s = e.ambient();
        let inv = duplication_invariants(s, e)?;
        let m = s.multiplicity();
        ensure!(
            inv.multiplicity == 2 * m,
            "e(A ⋈ J) = {} but 2e(A) = {}",
            inv.multiplicity,
            2 * m
        );
        ensure!(
            inv.embdim >= s.embdim() && inv.embdim == s.embdim() + nu(e),
            "duplication embdim {}",
            inv.embdim
        );
        Ok(format!(
            "e = {} = 2·{m}, embdim = {} = {} + {}",
            inv.multiplicity,
            inv.embdim,
            s.embdim(),
            nu(e)
        ))
    })())
}

/// Gorenstein flag of the duplication: forced for translates of `K(S)`,
/// equal to symmetry of `S` for principal `E`.
pub fn check_semigroup_gorenstein(e: &SemigroupIdeal) -> Verdict {
    let s = e.ambient();
    let principal = e.generators().len() == 1;
    let canonical = e.is_translate_of(&canonical_ideal(s));
    if !principal && !canonical {
        return Verdict::OutOfHypothesis("E is neither principal nor a translate of K(S)".into());
    }
    Verdict::from_result((|| {
        let inv = duplication_invariants(s, e)?;
        if principal {
            ensure!(
                inv.is_gorenstein == s.is_symmetric(),
                "principal duplication Gorenstein = {} but S symmetric = {}",
                inv.is_gorenstein,
                s.is_symmetric()
            );
        }
        if canonical {
            ensure!(
                inv.is_gorenstein,
                "duplication along a translate of K(S) not flagged Gorenstein"
            );
        }
        Ok(format!(
            "Gorenstein = {}, S symmetric = {}, E ~ K(S) = {canonical}",
            inv.is_gorenstein,
            s.is_symmetric()
        ))
    })())
}

/// The multiplicity formula for `t^s ↦ t^{ds}` against the oracle.
pub fn check_scaled_multiplicity(
    s: &Arc<NumericalSemigroup>,
    d: u64,
    t: &Arc<NumericalSemigroup>,
    e: &SemigroupIdeal,
) -> Verdict {
    match scaled_amalgam_multiplicity(s, d, t, e) {
        Err(CoreError::HypothesisViolation(r)) => Verdict::OutOfHypothesis(r),
        Err(err) => Verdict::Falsified(err.to_string()),
        Ok(formula) => Verdict::from_result((|| {
            let oracle = truncated_basis_multiplicity(s, d, t, e)?;
            ensure!(
                formula == oracle,
                "formula gives {formula}, oracle gives {oracle}"
            );
            Ok(format!("e = {formula}"))
        })()),
    }
}
