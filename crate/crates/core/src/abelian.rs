//! Automorphisms of `Z_{p^a} ⊕ Z_{p^b}` with `a < b`, as explicit 2×2 matrices.
//!
//! Every automorphism has the form
//!
//! ```text
//! ( alpha          beta  )      alpha ∈ Z_{p^a}*,  beta, c ∈ Z_{p^a}
//! ( c·p^(b-a)      delta )      delta ∈ Z_{p^b}*
//! ```
//!
//! acting on column vectors `(x, y)` with `x mod p^a` and `y mod p^b`. The
//! lower-left entry is stored through its cofactor `c`, so the enumeration
//! domain is exactly the product of the four coordinate ranges and
//! `|Aut G| = p^(3a+b-2)·(p-1)^2`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{gcd, is_prime, units, MAX_MODULUS};
use crate::spectrum::Spectrum;

/// Largest group order accepted by [`theta_spectrum`] (2^20).
pub const SPECTRUM_ORDER_CAP: u64 = 1 << 20;

/// The group `Z_{p^a} ⊕ Z_{p^b}`, `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rank2PGroup {
    p: u64,
    a: u32,
    b: u32,
    pa: u64,
    pb: u64,
}

impl Rank2PGroup {
    pub fn new(p: u64, a: u32, b: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if a == 0 {
            return Err(Error::InvalidInput("exponent a must be at least 1".into()));
        }
        if a >= b {
            return Err(Error::Unsupported(format!(
                "matrix form needs a < b, got a = {a}, b = {b}"
            )));
        }
        let order = p
            .checked_pow(a + b)
            .filter(|&o| o <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidInput(format!("{p}^{} exceeds 2^31", a + b)))?;
        let pa = p.pow(a);
        Ok(Rank2PGroup {
            p,
            a,
            b,
            pa,
            pb: order / pa,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// `p^a`, the modulus of the first coordinate.
    pub fn first_modulus(&self) -> u64 {
        self.pa
    }

    /// `p^b`, the modulus of the second coordinate.
    pub fn second_modulus(&self) -> u64 {
        self.pb
    }

    /// `p^(b-a)`, the factor carried by the lower-left entry.
    fn shift(&self) -> u64 {
        self.pb / self.pa
    }

    pub fn order(&self) -> u64 {
        self.pa * self.pb
    }

    pub fn identity(&self) -> GElement {
        GElement { x: 0, y: 0 }
    }

    /// Builds an element, reducing each coordinate.
    pub fn element(&self, x: u64, y: u64) -> GElement {
        GElement {
            x: x % self.pa,
            y: y % self.pb,
        }
    }

    pub fn contains(&self, e: GElement) -> bool {
        e.x < self.pa && e.y < self.pb
    }

    pub fn add(&self, e1: GElement, e2: GElement) -> GElement {
        GElement {
            x: (e1.x + e2.x) % self.pa,
            y: (e1.y + e2.y) % self.pb,
        }
    }

    pub fn neg(&self, e: GElement) -> GElement {
        GElement {
            x: (self.pa - e.x) % self.pa,
            y: (self.pb - e.y) % self.pb,
        }
    }

    /// All elements, ordered by `x` then `y`.
    pub fn elements(&self) -> impl Iterator<Item = GElement> + '_ {
        (0..self.pa).flat_map(move |x| (0..self.pb).map(move |y| GElement { x, y }))
    }

    /// Position of `e` in [`elements`](Self::elements): `x·p^b + y`.
    pub fn index_of(&self, e: GElement) -> usize {
        (e.x * self.pb + e.y) as usize
    }

    /// The subgroup generated by `gens`.
    pub fn span(&self, gens: &[GElement]) -> BTreeSet<GElement> {
        let mut set = BTreeSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(e) = frontier.pop() {
            for &g in gens {
                let next = self.add(e, g);
                if set.insert(next) {
                    frontier.push(next);
                }
            }
        }
        set
    }

    fn check_element(&self, e: GElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{e} is not an element of {self}"
            )))
        }
    }
}

impl fmt::Display for Rank2PGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}+Z_{}", self.pa, self.pb)
    }
}

/// An element `(x mod p^a, y mod p^b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GElement {
    pub x: u64,
    pub y: u64,
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// One automorphism `(alpha, beta; c·p^(b-a), delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutMatrix {
    group: Rank2PGroup,
    alpha: u64,
    beta: u64,
    c: u64,
    delta: u64,
}

impl AutMatrix {
    /// Validates and reduces the four entries. `alpha` and `delta` must be
    /// prime to `p`.
    pub fn new(g: Rank2PGroup, alpha: u64, beta: u64, c: u64, delta: u64) -> Result<Self> {
        let (alpha, beta, c, delta) = (alpha % g.pa, beta % g.pa, c % g.pa, delta % g.pb);
        if gcd(alpha, g.p) != 1 || gcd(delta, g.p) != 1 {
            return Err(Error::InvalidInput(format!(
                "alpha = {alpha} and delta = {delta} must both be prime to {}",
                g.p
            )));
        }
        Ok(AutMatrix {
            group: g,
            alpha,
            beta,
            c,
            delta,
        })
    }

    pub fn identity(g: Rank2PGroup) -> Self {
        AutMatrix {
            group: g,
            alpha: 1,
            beta: 0,
            c: 0,
            delta: 1,
        }
    }

    pub fn group(&self) -> Rank2PGroup {
        self.group
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    /// Cofactor of the lower-left entry; the entry itself is `c·p^(b-a)`.
    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn lower_left(&self) -> u64 {
        self.c * self.group.shift()
    }

    /// Entries as `(alpha, beta, c, delta)`; this is the enumeration order key.
    pub fn key(&self) -> (u64, u64, u64, u64) {
        (self.alpha, self.beta, self.c, self.delta)
    }

    #[inline]
    fn map(&self, e: GElement) -> GElement {
        let g = &self.group;
        GElement {
            x: (self.alpha * e.x + self.beta * (e.y % g.pa)) % g.pa,
            y: (self.lower_left() * e.x + self.delta * e.y) % g.pb,
        }
    }

    /// The image of every element, indexed as in [`Rank2PGroup::elements`].
    pub fn as_permutation(&self) -> Vec<usize> {
        self.group
            .elements()
            .map(|e| self.group.index_of(self.map(e)))
            .collect()
    }
}

impl fmt::Display for AutMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}; {}, {})",
            self.alpha,
            self.beta,
            self.lower_left(),
            self.delta
        )
    }
}

/// `|Aut G| = φ(p^a)·φ(p^b)·p^(2a) = p^(3a+b-2)·(p-1)^2`.
pub fn aut_order(g: &Rank2PGroup) -> u64 {
    let phi_a = g.pa / g.p * (g.p - 1);
    let phi_b = g.pb / g.p * (g.p - 1);
    phi_a * phi_b * g.pa * g.pa
}

/// Every automorphism exactly once, lexicographic in `(alpha, beta, c, delta)`.
pub fn enumerate_aut(g: &Rank2PGroup) -> Vec<AutMatrix> {
    let alphas = units(g.pa).expect("p^a >= 2");
    let deltas = units(g.pb).expect("p^b >= 2");
    let mut out = Vec::with_capacity(aut_order(g) as usize);
    for &alpha in alphas.members() {
        for beta in 0..g.pa {
            for c in 0..g.pa {
                for &delta in deltas.members() {
                    out.push(AutMatrix {
                        group: *g,
                        alpha,
                        beta,
                        c,
                        delta,
                    });
                }
            }
        }
    }
    out
}

/// `(alpha·x + beta·y mod p^a, c·p^(b-a)·x + delta·y mod p^b)`.
pub fn apply(m: &AutMatrix, e: GElement) -> Result<GElement> {
    m.group.check_element(e)?;
    Ok(m.map(e))
}

/// The automorphism `m1 ∘ m2`, read off from the images of the generators
/// `(1, 0)` and `(0, 1)`.
pub fn compose(m1: &AutMatrix, m2: &AutMatrix) -> Result<AutMatrix> {
    if m1.group != m2.group {
        return Err(Error::InvalidInput(format!(
            "cannot compose automorphisms of {} and {}",
            m1.group, m2.group
        )));
    }
    let g = m1.group;
    let col1 = m1.map(m2.map(GElement { x: 1, y: 0 }));
    let col2 = m1.map(m2.map(GElement { x: 0, y: 1 }));
    // The image of (1, 0) has order dividing p^a, so its y is a multiple of p^(b-a).
    debug_assert_eq!(col1.y % g.shift(), 0);
    AutMatrix::new(g, col1.x, col2.x, col1.y / g.shift(), col2.y)
}

/// The fixed-point subgroup `{e : m(e) = e}`, ordered as [`Rank2PGroup::elements`].
pub fn fixed_set(m: &AutMatrix) -> Vec<GElement> {
    m.group.elements().filter(|&e| m.map(e) == e).collect()
}

/// `|fixed_set(m)|` without materializing the set.
pub fn fixed_count(m: &AutMatrix) -> u64 {
    m.group.elements().filter(|&e| m.map(e) == e).count() as u64
}

/// Whether `m - id` is again an automorphism, i.e. both diagonal entries
/// minus one are prime to `p`. For abelian groups this is exactly the
/// fixed-point-free condition.
pub fn is_fpf_shift(m: &AutMatrix) -> bool {
    let p = m.group.p;
    gcd((m.alpha + m.group.pa - 1) % m.group.pa, p) == 1
        && gcd((m.delta + m.group.pb - 1) % m.group.pb, p) == 1
}

/// Exact `θ(G, d)` for every divisor `d` of `|G|` by full enumeration.
///
/// Work is split across the rayon pool; counts are merged additively, so
/// the result does not depend on the number of threads.
pub fn theta_spectrum(g: &Rank2PGroup) -> Result<Spectrum> {
    if g.order() > SPECTRUM_ORDER_CAP {
        return Err(Error::CapExceeded {
            order: g.order(),
            cap: SPECTRUM_ORDER_CAP,
        });
    }
    let auts = enumerate_aut(g);
    let name = g.to_string();
    let order = g.order();
    Ok(auts
        .par_chunks(256)
        .fold(
            || Spectrum::empty(name.clone(), order),
            |mut acc, chunk| {
                for m in chunk {
                    acc.record(fixed_count(m));
                }
                acc
            },
        )
        .reduce(
            || Spectrum::empty(name.clone(), order),
            |mut a, b| {
                a.merge(&b);
                a
            },
        ))
}

/// A subgroup described by generators together with its element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub label: String,
    pub generators: Vec<GElement>,
    pub elements: BTreeSet<GElement>,
}

impl Subgroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The `p + 1` subgroups of order `p^2` in `Z_p ⊕ Z_{p^2}`: the cyclic
/// `J_k = <(k, 1)>` for `k = 0..p`, followed by `J_p = <(1, 0), (0, p)>`.
pub fn subgroups_order_p2(g: &Rank2PGroup) -> Result<Vec<Subgroup>> {
    if g.a != 1 || g.b != 2 {
        return Err(Error::Unsupported(format!(
            "order-p^2 subgroup list is only available for Z_p+Z_p^2, got {g}"
        )));
    }
    let p = g.p;
    let mut out: Vec<Subgroup> = (0..p)
        .map(|k| {
            let gens = vec![GElement { x: k, y: 1 }];
            Subgroup {
                label: format!("J_{k}"),
                elements: g.span(&gens),
                generators: gens,
            }
        })
        .collect();
    let gens = vec![GElement { x: 1, y: 0 }, GElement { x: 0, y: p }];
    out.push(Subgroup {
        label: "J_p".into(),
        elements: g.span(&gens),
        generators: gens,
    });
    Ok(out)
}

/// Automorphisms fixing every element of `xs` (and possibly more).
pub fn at_least_fixers(g: &Rank2PGroup, xs: &BTreeSet<GElement>) -> Result<Vec<AutMatrix>> {
    if xs.is_empty() {
        return Err(Error::InvalidInput("fixed-element set is empty".into()));
    }
    for &e in xs {
        g.check_element(e)?;
    }
    Ok(enumerate_aut(g)
        .into_iter()
        .filter(|m| xs.iter().all(|&e| m.map(e) == e))
        .collect())
}

/// Automorphisms whose fixed set is exactly the subgroup `h`.
pub fn exact_fixers(g: &Rank2PGroup, h: &BTreeSet<GElement>) -> Result<Vec<AutMatrix>> {
    if h.is_empty() {
        return Err(Error::InvalidInput("subgroup is empty".into()));
    }
    for &e in h {
        g.check_element(e)?;
    }
    for &e1 in h {
        for &e2 in h {
            if !h.contains(&g.add(e1, e2)) {
                return Err(Error::InvalidInput(format!(
                    "set is not closed: {e1} + {e2} is missing"
                )));
            }
        }
    }
    let target: Vec<GElement> = h.iter().copied().collect();
    Ok(enumerate_aut(g)
        .into_iter()
        .filter(|m| fixed_set(m) == target)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(p: u64, a: u32, b: u32) -> Rank2PGroup {
        Rank2PGroup::new(p, a, b).unwrap()
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(matches!(
            Rank2PGroup::new(4, 1, 2),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            Rank2PGroup::new(3, 2, 2),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            Rank2PGroup::new(3, 0, 2),
            Err(Error::InvalidInput(_))
        ));
        assert!(Rank2PGroup::new(2, 10, 22).is_err());
        assert!(Rank2PGroup::new(2, 10, 21).is_ok());
    }

    #[test]
    fn aut_order_examples() {
        assert_eq!(aut_order(&grp(2, 1, 2)), 8);
        assert_eq!(aut_order(&grp(3, 1, 2)), 108);
        assert_eq!(
            aut_order(&grp(3, 1, 3)),
            enumerate_aut(&grp(3, 1, 3)).len() as u64
        );
        assert_eq!(aut_order(&grp(3, 1, 3)), 324);
    }

    #[test]
    fn enumeration_order_and_size() {
        let g = grp(2, 1, 2);
        let auts = enumerate_aut(&g);
        assert_eq!(auts.len(), 8);
        assert_eq!(auts[0], AutMatrix::identity(g));
        assert!(auts.windows(2).all(|w| w[0].key() < w[1].key()));
        assert_eq!(enumerate_aut(&grp(3, 1, 2)).len(), 108);
    }

    #[test]
    fn apply_examples() {
        let g = grp(3, 1, 2);
        let m = AutMatrix::new(g, 2, 0, 0, 2).unwrap();
        assert_eq!(apply(&m, g.element(1, 1)).unwrap(), g.element(2, 2));
        for e in g.elements() {
            assert_eq!(apply(&AutMatrix::identity(g), e).unwrap(), e);
        }
        let g2 = grp(2, 1, 2);
        let m2 = AutMatrix::new(g2, 1, 1, 0, 1).unwrap();
        assert_eq!(apply(&m2, g2.element(0, 1)).unwrap(), g2.element(1, 1));
        assert!(apply(&m2, GElement { x: 2, y: 0 }).is_err());
    }

    #[test]
    fn compose_examples() {
        let g = grp(3, 1, 2);
        let m = AutMatrix::new(g, 2, 0, 0, 2).unwrap();
        assert_eq!(compose(&AutMatrix::identity(g), &m).unwrap(), m);
        assert_eq!(
            compose(&m, &m).unwrap(),
            AutMatrix::new(g, 1, 0, 0, 4).unwrap()
        );
        let other = AutMatrix::identity(grp(2, 1, 2));
        assert!(compose(&m, &other).is_err());
    }

    #[test]
    fn compose_closes_over_z2_z4() {
        let g = grp(2, 1, 2);
        let auts = enumerate_aut(&g);
        for m1 in &auts {
            for m2 in &auts {
                let m = compose(m1, m2).unwrap();
                assert!(auts.contains(&m));
                for e in g.elements() {
                    assert_eq!(m.map(e), m1.map(m2.map(e)));
                }
            }
        }
    }

    #[test]
    fn fixed_set_examples() {
        let g = grp(3, 1, 2);
        assert_eq!(fixed_set(&AutMatrix::identity(g)).len(), 27);
        let m = AutMatrix::new(g, 2, 0, 0, 2).unwrap();
        assert_eq!(fixed_set(&m), vec![g.identity()]);
        // x + y ≡ x (mod 2) and 3y ≡ y (mod 4) leave y ∈ {0, 2} with x free.
        let g2 = grp(2, 1, 2);
        let m2 = AutMatrix::new(g2, 1, 1, 0, 3).unwrap();
        let scan: Vec<GElement> = g2
            .elements()
            .filter(|&e| apply(&m2, e).unwrap() == e)
            .collect();
        assert_eq!(fixed_set(&m2), scan);
        assert_eq!(fixed_set(&m2).len(), 4);
    }

    #[test]
    fn fpf_shift_examples() {
        let g = grp(3, 1, 2);
        assert!(!is_fpf_shift(&AutMatrix::identity(g)));
        assert!(is_fpf_shift(&AutMatrix::new(g, 2, 0, 0, 2).unwrap()));
        for b in 2..=5 {
            for m in enumerate_aut(&grp(2, 1, b)) {
                assert!(!is_fpf_shift(&m));
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        let s2 = theta_spectrum(&grp(2, 1, 2)).unwrap();
        assert_eq!(s2.to_string(), "{1: 0, 2: 2, 4: 5, 8: 1}");
        let s3 = theta_spectrum(&grp(3, 1, 2)).unwrap();
        assert_eq!(s3.to_string(), "{1: 27, 3: 57, 9: 23, 27: 1}");
        for (p, a, b) in [(2, 1, 3), (3, 1, 3), (2, 2, 3), (5, 1, 2)] {
            let g = grp(p, a, b);
            assert_eq!(theta_spectrum(&g).unwrap().get(g.order()), Some(1));
        }
    }

    #[test]
    fn spectrum_cap_is_enforced() {
        let g = grp(2, 10, 11);
        assert_eq!(
            theta_spectrum(&g),
            Err(Error::CapExceeded {
                order: 1 << 21,
                cap: SPECTRUM_ORDER_CAP
            })
        );
    }

    #[test]
    fn order_p2_subgroups() {
        let subs = subgroups_order_p2(&grp(2, 1, 2)).unwrap();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|s| s.len() == 4));

        let g3 = grp(3, 1, 2);
        let subs = subgroups_order_p2(&g3).unwrap();
        assert_eq!(subs.len(), 4);
        for (i, s) in subs.iter().enumerate() {
            assert_eq!(s.len(), 9);
            for t in &subs[i + 1..] {
                assert_ne!(s.elements, t.elements);
                assert_eq!(s.elements.intersection(&t.elements).count(), 3);
            }
        }
        for p in [2, 3, 5, 7] {
            let subs = subgroups_order_p2(&grp(p, 1, 2)).unwrap();
            assert!(subs[0].elements.contains(&GElement { x: 0, y: 1 }));
        }
        assert!(matches!(
            subgroups_order_p2(&grp(2, 1, 3)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn fixer_examples() {
        for p in [2, 3, 5] {
            let g = grp(p, 1, 2);
            let all = at_least_fixers(&g, &BTreeSet::from([g.identity()])).unwrap();
            assert_eq!(all.len() as u64, aut_order(&g));
            let subs = subgroups_order_p2(&g).unwrap();
            let j0 = &subs[0].elements;
            let jp = &subs[p as usize].elements;
            assert_eq!(at_least_fixers(&g, j0).unwrap().len() as u64, p * (p - 1));
            assert_eq!(at_least_fixers(&g, jp).unwrap().len() as u64, p * p);
            assert_eq!(exact_fixers(&g, j0).unwrap().len() as u64, p * (p - 1) - 1);
            let whole: BTreeSet<GElement> = g.elements().collect();
            assert_eq!(
                exact_fixers(&g, &whole).unwrap(),
                vec![AutMatrix::identity(g)]
            );
            let total: usize = subs
                .iter()
                .map(|s| exact_fixers(&g, &s.elements).unwrap().len())
                .sum();
            assert_eq!(total as u64, p * p * p - p - 1);
        }
    }

    #[test]
    fn fixer_errors() {
        let g = grp(3, 1, 2);
        assert!(at_least_fixers(&g, &BTreeSet::new()).is_err());
        let not_closed = BTreeSet::from([g.identity(), g.element(1, 0)]);
        assert!(matches!(
            exact_fixers(&g, &not_closed),
            Err(Error::InvalidInput(_))
        ));
    }
}
