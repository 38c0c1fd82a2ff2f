//! Dihedral groups `D_{2n}` and their automorphisms `f_{α,β}` from `Hol(Z_n)`.
//!
//! `f_{α,β}` sends `a^i ↦ a^{αi}` and `a^i b ↦ a^{αi+β} b` for `α ∈ Z_n*`,
//! `β ∈ Z_n`, so `|Aut D_{2n}| = n·φ(n)` for `n ≥ 3`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{gcd, inv_mod, is_prime, totient, units, Residue, MAX_MODULUS};
use crate::spectrum::Spectrum;

pub use crate::formulas::theta_dihedral_formula;

/// `D_{2n} = <a, b : a^n = b^2 = (ba)^2 = 1>`, `n ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralGroup {
    n: u64,
}

impl DihedralGroup {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Unsupported(format!(
                "dihedral automorphisms need n >= 3, got {n}"
            )));
        }
        if 2 * n > MAX_MODULUS {
            return Err(Error::InvalidInput(format!("2n = {} exceeds 2^31", 2 * n)));
        }
        Ok(DihedralGroup { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> u64 {
        2 * self.n
    }

    pub fn identity(&self) -> DihedralElement {
        self.rotation(0)
    }

    /// `a^i`.
    pub fn rotation(&self, i: u64) -> DihedralElement {
        DihedralElement {
            i: i % self.n,
            reflected: false,
        }
    }

    /// `a^i b`.
    pub fn reflection(&self, i: u64) -> DihedralElement {
        DihedralElement {
            i: i % self.n,
            reflected: true,
        }
    }

    /// Rotations `1, a, …, a^{n-1}` followed by reflections `b, ab, …, a^{n-1}b`.
    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> + '_ {
        (0..self.n)
            .map(|i| self.rotation(i))
            .chain((0..self.n).map(|i| self.reflection(i)))
    }

    /// Position of `e` in [`elements`](Self::elements).
    pub fn index_of(&self, e: DihedralElement) -> usize {
        (e.i + if e.reflected { self.n } else { 0 }) as usize
    }

    pub fn contains(&self, e: DihedralElement) -> bool {
        e.i < self.n
    }

    /// `(a^i b^s)(a^j b^t) = a^{i + (-1)^s j} b^{s+t}`.
    pub fn mul(&self, x: DihedralElement, y: DihedralElement) -> DihedralElement {
        let j = if x.reflected { self.n - y.i } else { y.i };
        DihedralElement {
            i: (x.i + j) % self.n,
            reflected: x.reflected ^ y.reflected,
        }
    }

    pub fn inverse(&self, x: DihedralElement) -> DihedralElement {
        if x.reflected {
            x
        } else {
            self.rotation(self.n - x.i)
        }
    }
}

impl fmt::Display for DihedralGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{}", 2 * self.n)
    }
}

/// `a^i` when `reflected` is false, `a^i b` when it is true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DihedralElement {
    pub i: u64,
    pub reflected: bool,
}

impl fmt::Display for DihedralElement {
    /// Written as `1`, `a`, `a^2`, `b`, `ab`, `a^2b`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.reflected) {
            (0, false) => write!(f, "1"),
            (0, true) => write!(f, "b"),
            (1, r) => write!(f, "a{}", if r { "b" } else { "" }),
            (i, r) => write!(f, "a^{i}{}", if r { "b" } else { "" }),
        }
    }
}

/// The automorphism `f_{α,β}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HolAut {
    n: u64,
    alpha: u64,
    beta: u64,
}

impl HolAut {
    pub fn new(g: DihedralGroup, alpha: u64, beta: u64) -> Result<Self> {
        let (alpha, beta) = (alpha % g.n, beta % g.n);
        if gcd(alpha, g.n) != 1 {
            return Err(Error::InvalidInput(format!(
                "alpha = {alpha} is not a unit modulo {}",
                g.n
            )));
        }
        Ok(HolAut {
            n: g.n,
            alpha,
            beta,
        })
    }

    pub fn identity(g: DihedralGroup) -> Self {
        HolAut {
            n: g.n,
            alpha: 1,
            beta: 0,
        }
    }

    pub fn group(&self) -> DihedralGroup {
        DihedralGroup { n: self.n }
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    #[inline]
    fn map(&self, e: DihedralElement) -> DihedralElement {
        let shift = if e.reflected { self.beta } else { 0 };
        DihedralElement {
            i: (self.alpha * e.i + shift) % self.n,
            reflected: e.reflected,
        }
    }

    /// The image of every element, indexed as in [`DihedralGroup::elements`].
    pub fn as_permutation(&self) -> Vec<usize> {
        let g = self.group();
        g.elements().map(|e| g.index_of(self.map(e))).collect()
    }
}

impl fmt::Display for HolAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f_{{{},{}}}", self.alpha, self.beta)
    }
}

/// All `n·φ(n)` automorphisms, lexicographic in `(alpha, beta)`.
pub fn enumerate_dihedral_aut(g: &DihedralGroup) -> Vec<HolAut> {
    let us = units(g.n).expect("n >= 3");
    us.members()
        .iter()
        .flat_map(|&alpha| {
            (0..g.n).map(move |beta| HolAut {
                n: g.n,
                alpha,
                beta,
            })
        })
        .collect()
}

pub fn dihedral_apply(f: &HolAut, e: DihedralElement) -> Result<DihedralElement> {
    if !f.group().contains(e) {
        return Err(Error::InvalidInput(format!(
            "a^{} is not in D_{}",
            e.i,
            2 * f.n
        )));
    }
    Ok(f.map(e))
}

/// Elements fixed by `f`, in [`DihedralGroup::elements`] order.
pub fn dihedral_fixed_set(f: &HolAut) -> Vec<DihedralElement> {
    f.group().elements().filter(|&e| f.map(e) == e).collect()
}

pub fn dihedral_fixed_count(f: &HolAut) -> u64 {
    f.group().elements().filter(|&e| f.map(e) == e).count() as u64
}

/// For prime `n` and `alpha ≠ 1`, the unique `i` with `a^i b` fixed by `f`:
/// `i = (1 - alpha)^{-1}·beta (mod n)`.
pub fn fixed_reflection_index(f: &HolAut) -> Result<Residue> {
    if !is_prime(f.n) {
        return Err(Error::Unsupported(format!("n = {} is not prime", f.n)));
    }
    if f.alpha == 1 {
        return Err(Error::Unsupported(
            "alpha = 1 fixes no reflection or all of them".into(),
        ));
    }
    let one_minus_alpha = Residue::from_i64(1 - f.alpha as i64, f.n)?;
    Ok(inv_mod(one_minus_alpha)? * Residue::new(f.beta, f.n)?)
}

/// Exact `θ(D_{2n}, d)` for every divisor `d` of `2n` by full enumeration.
pub fn dihedral_theta_spectrum(g: &DihedralGroup) -> Spectrum {
    let name = g.to_string();
    let order = g.order();
    enumerate_dihedral_aut(g)
        .par_chunks(256)
        .fold(
            || Spectrum::empty(name.clone(), order),
            |mut acc, chunk| {
                for f in chunk {
                    acc.record(dihedral_fixed_count(f));
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
        )
}

/// `n·φ(n)`.
pub fn dihedral_aut_order(g: &DihedralGroup) -> u64 {
    g.n * totient(g.n).expect("n >= 3")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u64) -> DihedralGroup {
        DihedralGroup::new(n).unwrap()
    }

    #[test]
    fn small_n_rejected() {
        for n in 0..3 {
            assert!(matches!(DihedralGroup::new(n), Err(Error::Unsupported(_))));
        }
    }

    #[test]
    fn multiplication_follows_relations() {
        let g = d(5);
        let a = g.rotation(1);
        let b = g.reflection(0);
        assert_eq!(g.mul(b, b), g.identity());
        let ba = g.mul(b, a);
        assert_eq!(g.mul(ba, ba), g.identity());
        assert_eq!(g.mul(b, a), g.mul(g.inverse(a), b));
        assert_eq!(g.mul(a, b), g.reflection(1));
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inverse(x)), g.identity());
        }
    }

    #[test]
    fn labels() {
        let g = d(4);
        let labels: Vec<String> = g.elements().map(|e| e.to_string()).collect();
        assert_eq!(labels, ["1", "a", "a^2", "a^3", "b", "ab", "a^2b", "a^3b"]);
    }

    #[test]
    fn enumeration_examples() {
        let auts = enumerate_dihedral_aut(&d(4));
        let names: Vec<String> = auts.iter().map(|f| f.to_string()).collect();
        assert_eq!(
            names,
            [
                "f_{1,0}", "f_{1,1}", "f_{1,2}", "f_{1,3}", "f_{3,0}", "f_{3,1}", "f_{3,2}",
                "f_{3,3}"
            ]
        );
        assert_eq!(enumerate_dihedral_aut(&d(5)).len(), 20);
        for n in 3..=30 {
            let g = d(n);
            assert_eq!(
                enumerate_dihedral_aut(&g).len() as u64,
                n * totient(n).unwrap()
            );
        }
    }

    #[test]
    fn automorphisms_preserve_products() {
        for n in 3..=30 {
            let g = d(n);
            let elems: Vec<_> = g.elements().collect();
            for f in enumerate_dihedral_aut(&g) {
                for &x in &elems {
                    for &y in &elems {
                        assert_eq!(f.map(g.mul(x, y)), g.mul(f.map(x), f.map(y)));
                    }
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        let g = d(4);
        for e in g.elements() {
            assert_eq!(dihedral_apply(&HolAut::identity(g), e).unwrap(), e);
        }
        let f31 = HolAut::new(g, 3, 1).unwrap();
        assert_eq!(
            dihedral_apply(&f31, g.reflection(1)).unwrap(),
            g.reflection(0)
        );
        let f32 = HolAut::new(g, 3, 2).unwrap();
        assert_eq!(
            dihedral_apply(&f32, g.reflection(3)).unwrap(),
            g.reflection(3)
        );
        assert!(dihedral_apply(&f32, g.rotation(1).with_index(9)).is_err());
        assert!(HolAut::new(g, 2, 0).is_err());
    }

    impl DihedralElement {
        fn with_index(self, i: u64) -> Self {
            DihedralElement { i, ..self }
        }
    }

    #[test]
    fn fixed_set_examples() {
        let g = d(5);
        assert_eq!(dihedral_fixed_set(&HolAut::identity(g)).len(), 10);
        assert_eq!(
            dihedral_fixed_set(&HolAut::new(g, 2, 1).unwrap()),
            vec![g.identity(), g.reflection(4)]
        );
        let rotations: Vec<_> = (0..5).map(|i| g.rotation(i)).collect();
        assert_eq!(
            dihedral_fixed_set(&HolAut::new(g, 1, 2).unwrap()),
            rotations
        );
    }

    #[test]
    fn fixed_reflection_examples() {
        for n in [3u64, 5, 7, 11] {
            let g = d(n);
            for alpha in 2..n {
                let f = HolAut::new(g, alpha, 0).unwrap();
                assert_eq!(fixed_reflection_index(&f).unwrap().value(), 0);
            }
        }
        let f = HolAut::new(d(5), 2, 1).unwrap();
        assert_eq!(fixed_reflection_index(&f).unwrap().value(), 4);
        let g7 = d(7);
        let f = HolAut::new(g7, 3, 5).unwrap();
        assert_eq!(fixed_reflection_index(&f).unwrap().value(), 1);
        assert_eq!(
            dihedral_apply(&f, g7.reflection(1)).unwrap(),
            g7.reflection(1)
        );

        assert!(fixed_reflection_index(&HolAut::new(d(5), 1, 3).unwrap()).is_err());
        assert!(fixed_reflection_index(&HolAut::new(d(9), 2, 3).unwrap()).is_err());
    }

    #[test]
    fn prime_n_fixed_sets_have_theorem_shape() {
        for n in [3u64, 5, 7, 11, 13] {
            let g = d(n);
            for f in enumerate_dihedral_aut(&g) {
                let fixed = dihedral_fixed_set(&f);
                assert_ne!(fixed.len(), 1);
                if f.alpha() != 1 {
                    let i = fixed_reflection_index(&f).unwrap().value();
                    assert_eq!(fixed, vec![g.identity(), g.reflection(i)]);
                }
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(
            dihedral_theta_spectrum(&d(5)).to_string(),
            "{1: 0, 2: 15, 5: 4, 10: 1}"
        );
        assert_eq!(
            dihedral_theta_spectrum(&d(4)).to_string(),
            "{1: 0, 2: 2, 4: 5, 8: 1}"
        );
        assert_eq!(
            dihedral_theta_spectrum(&d(3)).to_string(),
            "{1: 0, 2: 3, 3: 2, 6: 1}"
        );
        for n in 3..=30 {
            let g = d(n);
            assert_eq!(dihedral_theta_spectrum(&g).mass(), dihedral_aut_order(&g));
        }
    }
}
