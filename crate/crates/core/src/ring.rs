//! Finite commutative rings as explicit operation tables.
//!
//! Every ring is a carrier `{0, .., n-1}` of element indices together with
//! addition and multiplication tables. Element numbering is deterministic per
//! constructor:
//!
//! * `zmod(n)`: residues in ascending order.
//! * `poly_quot(p, f)`: the residue `c0 + c1 x + ..` has index `c0 + c1 p + ..`,
//!   which orders residues by degree and then lexicographically from the top.
//! * `product(R, S)`: row-major, `(r, s)` has index `r * |S| + s`.
//! * subrings and quotients: ascending by the (minimal) parent index.
//!
//! Rings are immutable and shared through [`Ring`] (an `Arc`).

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};

/// Default bound on carrier sizes.
pub const DEFAULT_CAP: usize = 256;

/// Shared handle to an immutable finite ring.
pub type Ring = Arc<FiniteRing>;

/// A finite commutative ring with identity.
#[derive(Clone)]
pub struct FiniteRing {
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    label: String,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("size", &self.size)
            .finish()
    }
}

fn check_cap(requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        return Err(CoreError::CapExceeded { requested, cap });
    }
    Ok(())
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteRing {
    /// Builds a ring from tables that are known to satisfy the axioms.
    pub(crate) fn from_parts(
        label: impl Into<String>,
        size: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
    ) -> Ring {
        debug_assert_eq!(add.len(), size * size);
        debug_assert_eq!(mul.len(), size * size);
        let mut neg = vec![0u32; size];
        for x in 0..size {
            for y in 0..size {
                if add[x * size + y] as usize == zero {
                    neg[x] = y as u32;
                    break;
                }
            }
        }
        Arc::new(FiniteRing {
            size,
            add,
            mul,
            neg,
            zero,
            one,
            label: label.into(),
        })
    }

    /// Builds a ring from explicit tables, checking every axiom exhaustively.
    pub fn from_tables(
        label: impl Into<String>,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: usize,
        one: usize,
    ) -> Result<Ring> {
        Self::from_tables_capped(label, add, mul, zero, one, DEFAULT_CAP)
    }

    pub fn from_tables_capped(
        label: impl Into<String>,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: usize,
        one: usize,
        cap: usize,
    ) -> Result<Ring> {
        let n = add.len();
        if n == 0 {
            return Err(CoreError::InvalidParameter("empty carrier".into()));
        }
        check_cap(n, cap)?;
        if mul.len() != n || add.iter().chain(mul).any(|row| row.len() != n) {
            return Err(CoreError::InvalidParameter(format!(
                "tables must be {n}x{n}"
            )));
        }
        if zero >= n || one >= n {
            return Err(CoreError::InvalidParameter("zero/one out of range".into()));
        }
        if let Some((i, _)) = add
            .iter()
            .chain(mul)
            .flatten()
            .enumerate()
            .find(|(_, &v)| v >= n)
        {
            return Err(CoreError::InvalidParameter(format!(
                "table entry {} out of range",
                i
            )));
        }
        let flat = |t: &[Vec<usize>]| t.iter().flatten().map(|&v| v as u32).collect::<Vec<_>>();
        let (addf, mulf) = (flat(add), flat(mul));
        let mut neg = vec![u32::MAX; n];
        for x in 0..n {
            if let Some(y) = (0..n).find(|&y| addf[x * n + y] as usize == zero) {
                neg[x] = y as u32;
            }
        }
        let ring = FiniteRing {
            size: n,
            add: addf,
            mul: mulf,
            neg,
            zero,
            one,
            label: label.into(),
        };
        ring.check_axioms()?;
        Ok(Arc::new(ring))
    }

    /// `Z/nZ`.
    pub fn zmod(n: usize) -> Result<Ring> {
        Self::zmod_capped(n, DEFAULT_CAP)
    }

    pub fn zmod_capped(n: usize, cap: usize) -> Result<Ring> {
        if n == 0 {
            return Err(CoreError::InvalidParameter(
                "modulus must be positive".into(),
            ));
        }
        check_cap(n, cap)?;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                add.push(((x + y) % n) as u32);
                mul.push(((x * y) % n) as u32);
            }
        }
        Ok(Self::from_parts(format!("Z/{n}"), n, add, mul, 0, 1 % n))
    }

    /// `F_p[x]/(modulus)` with `modulus` given by coefficients, lowest degree first.
    pub fn poly_quot(p: u64, modulus: &[u64]) -> Result<Ring> {
        Self::poly_quot_capped(p, modulus, DEFAULT_CAP)
    }

    pub fn poly_quot_capped(p: u64, modulus: &[u64], cap: usize) -> Result<Ring> {
        if !is_prime(p) {
            return Err(CoreError::InvalidParameter(format!("{p} is not prime")));
        }
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        let Some(deg) = modulus.iter().rposition(|&c| c != 0) else {
            return Err(CoreError::InvalidParameter("zero modulus".into()));
        };
        if deg == 0 {
            return Err(CoreError::InvalidParameter(
                "modulus must have degree >= 1".into(),
            ));
        }
        if modulus[deg] != 1 {
            return Err(CoreError::InvalidParameter("modulus must be monic".into()));
        }
        let size = (p as usize).checked_pow(deg as u32).unwrap_or(usize::MAX);
        check_cap(size, cap)?;
        let p_us = p as usize;
        let digits = |mut x: usize| -> Vec<u64> {
            (0..deg)
                .map(|_| {
                    let d = (x % p_us) as u64;
                    x /= p_us;
                    d
                })
                .collect()
        };
        let index =
            |c: &[u64]| -> usize { c.iter().rev().fold(0, |acc, &d| acc * p_us + d as usize) };
        let polys: Vec<Vec<u64>> = (0..size).map(digits).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in &polys {
            for y in &polys {
                let s: Vec<u64> = x.iter().zip(y).map(|(a, b)| (a + b) % p).collect();
                add.push(index(&s) as u32);
                let mut prod = vec![0u64; 2 * deg];
                for (i, a) in x.iter().enumerate() {
                    for (j, b) in y.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                // reduce with x^deg = -(m_0 + .. + m_{deg-1} x^{deg-1})
                for k in (deg..2 * deg).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, m) in modulus[..deg].iter().enumerate() {
                        let sub = c * m % p;
                        prod[k - deg + i] = (prod[k - deg + i] + p - sub) % p;
                    }
                }
                mul.push(index(&prod[..deg]) as u32);
            }
        }
        let label = format!("F_{p}[x]/({})", poly_to_string(&modulus));
        Ok(Self::from_parts(label, size, add, mul, 0, 1 % size))
    }

    /// The ring obtained by restricting the operations to a closed subset.
    ///
    /// `members` must be sorted, closed under the operations, and contain
    /// `one` as a multiplicative identity for the subset. Returns the ring and
    /// the parent index of each element.
    pub(crate) fn induced(
        parent: &FiniteRing,
        members: &[usize],
        one: usize,
        label: impl Into<String>,
    ) -> (Ring, Vec<usize>) {
        let n = members.len();
        let mut pos = vec![u32::MAX; parent.size];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i as u32;
        }
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &x in members {
            for &y in members {
                add.push(pos[parent.add(x, y)]);
                mul.push(pos[parent.mul(x, y)]);
            }
        }
        debug_assert!(add.iter().chain(&mul).all(|&v| v != u32::MAX));
        let ring = Self::from_parts(
            label,
            n,
            add,
            mul,
            pos[parent.zero] as usize,
            pos[one] as usize,
        );
        (ring, members.to_vec())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    /// `x^k`.
    pub fn pow(&self, x: usize, mut k: u32) -> usize {
        let (mut base, mut acc) = (x, self.one);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `k * 1`.
    pub fn from_int(&self, k: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add(acc, self.one))
    }

    /// Characteristic: the additive order of one.
    pub fn characteristic(&self) -> usize {
        let mut x = self.one;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, self.one);
            k += 1;
        }
        k
    }

    /// Two rings are interchangeable when their tables coincide.
    pub fn same_tables(&self, other: &FiniteRing) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }

    /// Exhaustive check of the commutative-ring axioms.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.size;
        let fail = |axiom: &'static str, witness: Vec<usize>| {
            Err(CoreError::AxiomViolation { axiom, witness })
        };
        if n > 1 && self.zero == self.one {
            return fail("one differs from zero", vec![self.one]);
        }
        for x in 0..n {
            if self.add(x, self.zero) != x {
                return fail("zero is an additive identity", vec![x]);
            }
            if self.neg[x] == u32::MAX {
                return fail("additive inverses exist", vec![x]);
            }
            if self.mul(x, self.one) != x {
                return fail("one is a multiplicative identity", vec![x]);
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return fail("addition is commutative", vec![x, y]);
                }
                if self.mul(x, y) != self.mul(y, x) {
                    return fail("multiplication is commutative", vec![x, y]);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy_add = self.add(x, y);
                let xy_mul = self.mul(x, y);
                for z in 0..n {
                    if self.add(xy_add, z) != self.add(x, self.add(y, z)) {
                        return fail("addition is associative", vec![x, y, z]);
                    }
                    if self.mul(xy_mul, z) != self.mul(x, self.mul(y, z)) {
                        return fail("multiplication is associative", vec![x, y, z]);
                    }
                    if self.mul(xy_add, z) != self.add(self.mul(x, z), self.mul(y, z)) {
                        return fail("multiplication distributes over addition", vec![x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_unit(&self, x: usize) -> bool {
        (0..self.size).any(|y| self.mul(x, y) == self.one)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn is_nilpotent(&self, x: usize) -> bool {
        let mut y = x;
        for _ in 0..=self.size {
            if y == self.zero {
                return true;
            }
            y = self.mul(y, x);
        }
        false
    }

    /// True when the ring has no nonzero zero-divisors and is not the zero ring.
    pub fn is_domain(&self) -> bool {
        if self.is_zero_ring() {
            return false;
        }
        (0..self.size).all(|x| {
            x == self.zero || (0..self.size).all(|y| y == self.zero || self.mul(x, y) != self.zero)
        })
    }

    pub fn is_field(&self) -> bool {
        !self.is_zero_ring() && (0..self.size).all(|x| x == self.zero || self.is_unit(x))
    }
}

fn poly_to_string(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// `R1 x R2` with componentwise operations.
pub fn product(r1: &Ring, r2: &Ring) -> Result<Ring> {
    product_capped(r1, r2, DEFAULT_CAP)
}

pub fn product_capped(r1: &Ring, r2: &Ring, cap: usize) -> Result<Ring> {
    let (n1, n2) = (r1.size(), r2.size());
    let n = n1.checked_mul(n2).ok_or(CoreError::CapExceeded {
        requested: usize::MAX,
        cap,
    })?;
    check_cap(n, cap)?;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (x1, x2) = (x / n2, x % n2);
        for y in 0..n {
            let (y1, y2) = (y / n2, y % n2);
            add.push((r1.add(x1, y1) * n2 + r2.add(x2, y2)) as u32);
            mul.push((r1.mul(x1, y1) * n2 + r2.mul(x2, y2)) as u32);
        }
    }
    let label = format!("({}) x ({})", r1.label(), r2.label());
    Ok(FiniteRing::from_parts(
        label,
        n,
        add,
        mul,
        r1.zero() * n2 + r2.zero(),
        r1.one() * n2 + r2.one(),
    ))
}

/// Componentwise projections of `product(r1, r2)`.
pub fn product_projections(prod: &Ring, r1: &Ring, r2: &Ring) -> Result<(RingHom, RingHom)> {
    let n2 = r2.size();
    let p1 = RingHom::new(
        prod.clone(),
        r1.clone(),
        prod.elements().map(|x| x / n2).collect(),
    )?;
    let p2 = RingHom::new(
        prod.clone(),
        r2.clone(),
        prod.elements().map(|x| x % n2).collect(),
    )?;
    Ok((p1, p2))
}

/// A unital ring homomorphism given by its full element map.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    map: Vec<usize>,
}

impl RingHom {
    /// Validates `map` against every homomorphism axiom.
    ///
    /// Additivity is scanned first, then multiplicativity (both row-major),
    /// then the unit condition; the first failing pair is the witness.
    pub fn new(source: Ring, target: Ring, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(CoreError::InvalidParameter(format!(
                "map has length {}, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size()) {
            return Err(CoreError::InvalidParameter(format!(
                "image {bad} out of range"
            )));
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.add(x, y)] != target.add(map[x], map[y]) {
                    return Err(CoreError::NotAHomomorphism {
                        reason: "addition not preserved",
                        witness: (x, y),
                    });
                }
            }
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(CoreError::NotAHomomorphism {
                        reason: "multiplication not preserved",
                        witness: (x, y),
                    });
                }
            }
        }
        if map[source.one()] != target.one() {
            return Err(CoreError::NotAHomomorphism {
                reason: "one not mapped to one",
                witness: (source.one(), source.one()),
            });
        }
        Ok(RingHom {
            source,
            target,
            map,
        })
    }

    /// Extends an assignment on a few elements to the whole source by
    /// closing under the ring operations, then validates the result.
    pub fn from_generator_images(
        source: Ring,
        target: Ring,
        images: &[(usize, usize)],
    ) -> Result<Self> {
        let n = source.size();
        let mut map: Vec<Option<usize>> = vec![None; n];
        let mut known: Vec<usize> = Vec::new();
        let mut queue = VecDeque::new();
        let assign = |map: &mut Vec<Option<usize>>,
                      x: usize,
                      v: usize,
                      witness: (usize, usize)|
         -> Result<bool> {
            match map[x] {
                Some(old) if old != v => Err(CoreError::NotAHomomorphism {
                    reason: "generator images are inconsistent",
                    witness,
                }),
                Some(_) => Ok(false),
                None => {
                    map[x] = Some(v);
                    Ok(true)
                }
            }
        };
        let seeds = [(source.zero(), target.zero()), (source.one(), target.one())];
        for &(x, v) in seeds.iter().chain(images) {
            if x >= n || v >= target.size() {
                return Err(CoreError::InvalidParameter(format!(
                    "generator image ({x}, {v}) out of range"
                )));
            }
            if assign(&mut map, x, v, (x, x))? {
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            known.push(x);
            let vx = map[x].expect("queued elements are mapped");
            let nx = source.neg(x);
            if assign(&mut map, nx, target.neg(vx), (x, x))? {
                queue.push_back(nx);
            }
            for &y in &known {
                let vy = map[y].expect("known elements are mapped");
                let s = source.add(x, y);
                if assign(&mut map, s, target.add(vx, vy), (x, y))? {
                    queue.push_back(s);
                }
                let p = source.mul(x, y);
                if assign(&mut map, p, target.mul(vx, vy), (x, y))? {
                    queue.push_back(p);
                }
            }
        }
        if let Some(x) = map.iter().position(Option::is_none) {
            return Err(CoreError::InvalidParameter(format!(
                "the given images do not determine the map on element {x}"
            )));
        }
        Self::new(
            source,
            target,
            map.into_iter().map(Option::unwrap).collect(),
        )
    }

    pub fn identity(ring: &Ring) -> Self {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            map: ring.elements().collect(),
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &RingHom) -> Result<RingHom> {
        if !first.target.same_tables(&self.source) {
            return Err(CoreError::InvalidParameter(
                "composition of incompatible maps".into(),
            ));
        }
        Ok(RingHom {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn kernel(&self) -> IdealSet {
        let members = self
            .source
            .elements()
            .filter(|&x| self.map[x] == self.target.zero())
            .collect();
        IdealSet::from_sorted_unchecked(self.source.clone(), members, None)
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.source.size()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size()
    }
}

/// An ideal, stored as its sorted member list.
#[derive(Clone)]
pub struct IdealSet {
    ring: Ring,
    members: Vec<usize>,
    mask: Vec<bool>,
    generators: Option<Vec<usize>>,
}

impl fmt::Debug for IdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealSet")
            .field("ring", &self.ring.label())
            .field("members", &self.members)
            .finish()
    }
}

impl PartialEq for IdealSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.ring.size() == other.ring.size()
    }
}

impl Eq for IdealSet {}

impl serde::Serialize for IdealSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

impl IdealSet {
    pub(crate) fn from_sorted_unchecked(
        ring: Ring,
        members: Vec<usize>,
        generators: Option<Vec<usize>>,
    ) -> Self {
        let mut mask = vec![false; ring.size()];
        for &m in &members {
            mask[m] = true;
        }
        IdealSet {
            ring,
            members,
            mask,
            generators,
        }
    }

    /// Validates that `members` is an ideal of `ring`.
    pub fn from_members(ring: Ring, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= ring.size()) {
            return Err(CoreError::InvalidParameter(format!(
                "element {bad} out of range"
            )));
        }
        let ideal = Self::from_sorted_unchecked(ring, members, None);
        ideal.check()?;
        Ok(ideal)
    }

    /// Checks the ideal invariants: zero, additive closure, absorption.
    pub fn check(&self) -> Result<()> {
        let r = &self.ring;
        if !self.contains(r.zero()) {
            return Err(CoreError::InvariantViolation(
                "ideal does not contain zero".into(),
            ));
        }
        for &x in &self.members {
            for &y in &self.members {
                if !self.contains(r.add(x, y)) {
                    return Err(CoreError::InvariantViolation(format!(
                        "ideal not closed under addition: {x} + {y}"
                    )));
                }
            }
            for y in r.elements() {
                if !self.contains(r.mul(x, y)) {
                    return Err(CoreError::InvariantViolation(format!(
                        "ideal does not absorb multiplication: {x} * {y}"
                    )));
                }
            }
        }
        if let Some(gens) = &self.generators {
            if ideal_generated(r, gens).members != self.members {
                return Err(CoreError::InvariantViolation(
                    "generators do not generate the ideal".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_sorted_unchecked(ring.clone(), vec![ring.zero()], Some(Vec::new()))
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::from_sorted_unchecked(
            ring.clone(),
            ring.elements().collect(),
            Some(vec![ring.one()]),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.members.len() == self.ring.size()
    }

    pub fn is_subset_of(&self, other: &IdealSet) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &IdealSet) -> IdealSet {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Self::from_sorted_unchecked(self.ring.clone(), members, None)
    }

    pub fn sum(&self, other: &IdealSet) -> IdealSet {
        let gens: Vec<usize> = self.members.iter().chain(&other.members).copied().collect();
        let mut ideal = ideal_generated(&self.ring, &gens);
        ideal.generators = None;
        ideal
    }

    /// The ideal generated by all products `x * y`.
    pub fn product(&self, other: &IdealSet) -> IdealSet {
        let r = &self.ring;
        let mut gens: Vec<usize> = Vec::new();
        let mut seen = vec![false; r.size()];
        for &x in &self.members {
            for &y in &other.members {
                let p = r.mul(x, y);
                if !seen[p] {
                    seen[p] = true;
                    gens.push(p);
                }
            }
        }
        let mut ideal = ideal_generated(r, &gens);
        ideal.generators = None;
        ideal
    }

    /// Whether the quotient by this ideal is an integral domain.
    pub fn is_prime(&self) -> bool {
        if self.is_unit() {
            return false;
        }
        let r = &self.ring;
        let outside: Vec<usize> = r.elements().filter(|&x| !self.contains(x)).collect();
        outside
            .iter()
            .all(|&x| outside.iter().all(|&y| !self.contains(r.mul(x, y))))
    }

    /// Whether the quotient by this ideal is a field.
    pub fn is_maximal(&self) -> bool {
        if self.is_unit() {
            return false;
        }
        let r = &self.ring;
        r.elements().filter(|&x| !self.contains(x)).all(|x| {
            r.elements()
                .any(|y| self.contains(r.sub(r.mul(x, y), r.one())))
        })
    }
}

/// Additive subgroup generated by `gens`, returned as a sorted list.
fn additive_span(r: &FiniteRing, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut mask = vec![false; r.size()];
    let mut members = vec![r.zero()];
    mask[r.zero()] = true;
    for g in gens {
        if mask[g] {
            continue;
        }
        // H + <g> is the union of the cosets H + k g.
        let base = members.clone();
        let mut c = g;
        while !mask[c] {
            for &h in &base {
                let v = r.add(h, c);
                if !mask[v] {
                    mask[v] = true;
                    members.push(v);
                }
            }
            c = r.add(c, g);
        }
    }
    members.sort_unstable();
    members
}

/// The smallest ideal containing `gens`.
pub fn ideal_generated(r: &Ring, gens: &[usize]) -> IdealSet {
    let mut seen = vec![false; r.size()];
    let mut products = Vec::new();
    for &g in gens {
        for x in r.elements() {
            let p = r.mul(x, g);
            if !seen[p] {
                seen[p] = true;
                products.push(p);
            }
        }
    }
    let members = additive_span(r, products);
    IdealSet::from_sorted_unchecked(r.clone(), members, Some(gens.to_vec()))
}

/// Every ideal of `r`, sorted by member list.
pub fn all_ideals(r: &Ring) -> Vec<IdealSet> {
    let mut found: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    let zero = IdealSet::zero(r);
    found.insert(zero.members.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(ideal) = queue.pop_front() {
        for x in r.elements() {
            if ideal.contains(x) {
                continue;
            }
            let mut gens = ideal.members.clone();
            gens.push(x);
            let next = ideal_generated(r, &gens);
            if found.insert(next.members.clone()) {
                queue.push_back(next);
            }
        }
    }
    found
        .into_iter()
        .map(|m| IdealSet::from_sorted_unchecked(r.clone(), m, None))
        .collect()
}

/// `R/I` with its canonical surjection.
///
/// Each coset is represented by its smallest element index; quotient elements
/// are numbered in ascending order of those representatives.
pub fn quotient(r: &Ring, ideal: &IdealSet) -> Result<(Ring, RingHom)> {
    if ideal.ring().size() != r.size() {
        return Err(CoreError::InvariantViolation(
            "ideal belongs to another ring".into(),
        ));
    }
    ideal.check()?;
    let n = r.size();
    let rep: Vec<usize> = r
        .elements()
        .map(|x| {
            ideal
                .members()
                .iter()
                .map(|&i| r.add(x, i))
                .min()
                .expect("ideal is nonempty")
        })
        .collect();
    let mut reps = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut class = vec![0usize; n];
    for x in 0..n {
        class[x] = reps
            .binary_search(&rep[x])
            .expect("representative is listed");
    }
    let q = reps.len();
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &x in &reps {
        for &y in &reps {
            add.push(class[r.add(x, y)] as u32);
            mul.push(class[r.mul(x, y)] as u32);
        }
    }
    let label = format!("({}) / I[{}]", r.label(), ideal.len());
    let quot = FiniteRing::from_parts(label, q, add, mul, class[r.zero()], class[r.one()]);
    let hom = RingHom {
        source: r.clone(),
        target: quot.clone(),
        map: class,
    };
    Ok((quot, hom))
}

/// The smallest subring containing `seeds`, with its inclusion map.
pub fn subring_closure(r: &Ring, seeds: &[usize]) -> Result<(Ring, RingHom)> {
    if let Some(&bad) = seeds.iter().find(|&&s| s >= r.size()) {
        return Err(CoreError::InvalidParameter(format!(
            "seed {bad} out of range"
        )));
    }
    let members = closure_members(r, seeds);
    let label = format!("subring of {}", r.label());
    let (sub, parent) = FiniteRing::induced(r, &members, r.one(), label);
    let incl = RingHom {
        source: sub.clone(),
        target: r.clone(),
        map: parent,
    };
    Ok((sub, incl))
}

pub(crate) fn closure_members(r: &FiniteRing, seeds: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; r.size()];
    let mut members: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    for &s in [r.zero(), r.one()].iter().chain(seeds) {
        if !mask[s] {
            mask[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        members.push(x);
        let mut push = |v: usize, queue: &mut VecDeque<usize>| {
            if !mask[v] {
                mask[v] = true;
                queue.push_back(v);
            }
        };
        push(r.neg(x), &mut queue);
        for &y in &members {
            push(r.add(x, y), &mut queue);
            push(r.mul(x, y), &mut queue);
        }
    }
    members.sort_unstable();
    members
}

/// A small set of elements generating `r` as a ring, chosen greedily by
/// ascending index.
pub fn ring_generators(r: &Ring) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut covered = closure_members(r, &gens);
    while covered.len() < r.size() {
        let next = r
            .elements()
            .find(|x| covered.binary_search(x).is_err())
            .expect("closure is a proper subset");
        gens.push(next);
        covered = closure_members(r, &gens);
    }
    gens
}

/// Every unital homomorphism `a -> b`, found by trying all images of
/// [`ring_generators`] and keeping the assignments that extend.
/// Sorted by map.
pub fn all_homs(a: &Ring, b: &Ring) -> Vec<RingHom> {
    let gens = ring_generators(a);
    let mut out: Vec<RingHom> = Vec::new();
    let mut images = vec![0usize; gens.len()];
    loop {
        let assignment: Vec<(usize, usize)> =
            gens.iter().copied().zip(images.iter().copied()).collect();
        if let Ok(h) = RingHom::from_generator_images(a.clone(), b.clone(), &assignment) {
            out.push(h);
        }
        // odometer over b^gens
        let mut k = 0;
        while k < images.len() {
            images[k] += 1;
            if images[k] < b.size() {
                break;
            }
            images[k] = 0;
            k += 1;
        }
        if k == images.len() {
            break;
        }
    }
    out.sort_by(|x, y| x.map().cmp(y.map()));
    out.dedup_by(|x, y| x.map() == y.map());
    out
}

/// `{x : x^k = 0 for some k}`.
pub fn nilradical(r: &Ring) -> IdealSet {
    let members = r.elements().filter(|&x| r.is_nilpotent(x)).collect();
    IdealSet::from_sorted_unchecked(r.clone(), members, None)
}

pub fn units(r: &Ring) -> Vec<usize> {
    r.elements().filter(|&x| r.is_unit(x)).collect()
}

/// `{x : h(x) in I}`.
pub fn preimage(h: &RingHom, ideal: &IdealSet) -> IdealSet {
    let members = h
        .source()
        .elements()
        .filter(|&x| ideal.contains(h.apply(x)))
        .collect();
    IdealSet::from_sorted_unchecked(h.source().clone(), members, None)
}

/// Intersection of all maximal ideals; the whole ring for the zero ring.
pub fn jacobson(r: &Ring) -> IdealSet {
    crate::spectrum::maximal_ideals(r)
        .into_iter()
        .reduce(|acc, m| acc.intersection(&m))
        .unwrap_or_else(|| IdealSet::unit(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal_count_maximal(r: &Ring) -> usize {
        all_ideals(r).iter().filter(|i| i.is_maximal()).count()
    }

    #[test]
    fn zmod_edge_cases() {
        let z1 = FiniteRing::zmod(1).unwrap();
        assert_eq!(z1.one(), z1.zero());
        z1.check_axioms().unwrap();
        assert!(matches!(
            FiniteRing::zmod(0),
            Err(CoreError::InvalidParameter(_))
        ));
        assert!(matches!(
            FiniteRing::zmod(257),
            Err(CoreError::CapExceeded { .. })
        ));
        assert!(FiniteRing::zmod_capped(300, 300).is_ok());
    }

    #[test]
    fn zmod_maximal_ideals() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let maxes: Vec<Vec<usize>> = all_ideals(&z6)
            .into_iter()
            .filter(|i| i.is_maximal())
            .map(|i| i.members().to_vec())
            .collect();
        assert_eq!(maxes, vec![vec![0, 2, 4], vec![0, 3]]);

        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(units(&z4), vec![1, 3]);
        let non_units = IdealSet::from_members(z4.clone(), [0, 2]).unwrap();
        assert!(non_units.is_maximal());
        assert_eq!(ideal_count_maximal(&z4), 1);
    }

    #[test]
    fn poly_quot_examples() {
        let f2 = FiniteRing::poly_quot(2, &[0, 1]).unwrap();
        assert_eq!(f2.size(), 2);
        assert!(f2.is_field());

        let dual = FiniteRing::poly_quot(2, &[0, 0, 1]).unwrap();
        assert_eq!(dual.size(), 4);
        // x has index 2
        assert_eq!(dual.mul(2, 2), dual.zero());

        let f4 = FiniteRing::poly_quot(2, &[1, 1, 1]).unwrap();
        assert!(f4.is_domain());
        assert!(f4.is_field());
        f4.check_axioms().unwrap();

        assert!(matches!(
            FiniteRing::poly_quot(4, &[0, 1]),
            Err(CoreError::InvalidParameter(_))
        ));
        assert!(matches!(
            FiniteRing::poly_quot(2, &[1, 0, 2]),
            Err(CoreError::InvalidParameter(_))
        ));
        assert!(matches!(
            FiniteRing::poly_quot(3, &[1, 0, 2]),
            Err(CoreError::InvalidParameter(_))
        ));
        assert!(matches!(
            FiniteRing::poly_quot(2, &[1]),
            Err(CoreError::InvalidParameter(_))
        ));
    }

    #[test]
    fn products() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let p = product(&f2, &f2).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(ideal_count_maximal(&p), 2);

        let z4 = FiniteRing::zmod(4).unwrap();
        let p = product(&z4, &f2).unwrap();
        assert_eq!(p.size(), 8);
        assert_eq!(jacobson(&p).len(), 2);

        let zero = FiniteRing::zmod(1).unwrap();
        let r = product(&z4, &zero).unwrap();
        let (p1, _) = product_projections(&r, &z4, &zero).unwrap();
        assert!(p1.is_injective() && p1.is_surjective());

        let big = FiniteRing::zmod(32).unwrap();
        assert!(matches!(
            product(&big, &big),
            Err(CoreError::CapExceeded { .. })
        ));
    }

    #[test]
    fn quotients() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let two = ideal_generated(&z4, &[2]);
        let (q, pi) = quotient(&z4, &two).unwrap();
        assert_eq!(q.size(), 2);
        assert!(q.is_field());
        assert_eq!(pi.kernel(), two);

        let (q, pi) = quotient(&z4, &IdealSet::zero(&z4)).unwrap();
        assert!(q.same_tables(&z4));
        assert_eq!(pi.map(), &[0, 1, 2, 3]);

        let z6 = FiniteRing::zmod(6).unwrap();
        let (q, _) = quotient(&z6, &ideal_generated(&z6, &[3])).unwrap();
        assert_eq!(q.size(), 3);
    }

    #[test]
    fn subring_closures() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let p = product(&z4, &z4).unwrap();
        let (prime, _) = subring_closure(&p, &[]).unwrap();
        assert_eq!(prime.size(), 4);
        let (all, incl) = subring_closure(&p, &p.elements().collect::<Vec<_>>()).unwrap();
        assert_eq!(all.size(), 16);
        assert_eq!(incl.map(), p.elements().collect::<Vec<_>>().as_slice());
        // (1,1) and (0,2)
        let (sub, incl) = subring_closure(&p, &[4 + 1, 2]).unwrap();
        assert_eq!(sub.size(), 8);
        // closing again adds nothing
        let (again, _) = subring_closure(&p, incl.map()).unwrap();
        assert_eq!(again.size(), 8);
    }

    #[test]
    fn hom_validation() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let f2 = FiniteRing::zmod(2).unwrap();
        RingHom::new(z4.clone(), z4.clone(), vec![0, 1, 2, 3]).unwrap();
        RingHom::new(z4.clone(), f2.clone(), vec![0, 1, 0, 1]).unwrap();
        let err = RingHom::new(z4.clone(), z4.clone(), vec![0, 3, 2, 1]).unwrap_err();
        assert_eq!(
            err,
            CoreError::NotAHomomorphism {
                reason: "multiplication not preserved",
                witness: (1, 1)
            }
        );
    }

    #[test]
    fn hom_enumeration() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let f4 = FiniteRing::poly_quot(2, &[1, 1, 1]).unwrap();
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(all_homs(&f2, &f2).len(), 1);
        assert_eq!(all_homs(&f4, &f4).len(), 2);
        assert_eq!(all_homs(&z4, &f2).len(), 1);
        assert!(all_homs(&f2, &z4).is_empty());
        assert!(all_homs(&f4, &f2).is_empty());
        let f2f2 = product(&f2, &f2).unwrap();
        assert_eq!(all_homs(&f2f2, &f2).len(), 2);
    }

    #[test]
    fn generator_images() {
        let f4 = FiniteRing::poly_quot(2, &[1, 1, 1]).unwrap();
        // Frobenius x -> x^2 = x + 1
        let frob = RingHom::from_generator_images(f4.clone(), f4.clone(), &[(2, 3)]).unwrap();
        assert_eq!(frob.map(), &[0, 1, 3, 2]);
        let z4 = FiniteRing::zmod(4).unwrap();
        let f2 = FiniteRing::zmod(2).unwrap();
        assert!(RingHom::from_generator_images(f2, z4.clone(), &[]).is_err());
        let err = RingHom::from_generator_images(f4.clone(), f4, &[(2, 2), (3, 2)]).unwrap_err();
        assert!(matches!(err, CoreError::NotAHomomorphism { .. }));
    }

    #[test]
    fn ideals_and_radicals() {
        let z8 = FiniteRing::zmod(8).unwrap();
        assert_eq!(ideal_generated(&z8, &[2]).members(), &[0, 2, 4, 6]);
        assert!(ideal_generated(&z8, &[]).is_zero());
        assert!(ideal_generated(&z8, &[1]).is_unit());
        assert_eq!(all_ideals(&z8).len(), 4);

        let f4 = FiniteRing::poly_quot(2, &[1, 1, 1]).unwrap();
        assert!(nilradical(&f4).is_zero());
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(jacobson(&z4).members(), &[0, 2]);
        let two = ideal_generated(&z4, &[2]);
        assert_eq!(preimage(&RingHom::identity(&z4), &two), two);
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let z3 = FiniteRing::zmod(3).unwrap();
        let add: Vec<Vec<usize>> = (0..3)
            .map(|x| (0..3).map(|y| z3.add(x, y)).collect())
            .collect();
        let mut mul: Vec<Vec<usize>> = (0..3)
            .map(|x| (0..3).map(|y| z3.mul(x, y)).collect())
            .collect();
        mul[2][2] = 2;
        let err = FiniteRing::from_tables("bad", &add, &mul, 0, 1).unwrap_err();
        assert!(matches!(err, CoreError::AxiomViolation { .. }));
    }
}
