//! Brute-force ground truth built only from Cayley tables.
//!
//! Nothing here knows about matrices or holomorphs. Automorphisms are found
//! by mapping a small generating set to every tuple of candidate images with
//! matching element orders, extending along words in the generators, and
//! keeping the extensions that are bijections preserving the full table.

use std::collections::{BTreeSet, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Largest table the oracle builds or searches.
pub const ORACLE_ORDER_CAP: usize = 512;

/// Tables up to this size get an exhaustive associativity check.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 10_000;
const MAX_GENERATORS: usize = 3;

/// A finite group given by its multiplication table on indices `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    name: String,
    size: usize,
    table: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

impl CayleyGroup {
    /// Validates a table: square, Latin, with a two-sided identity, and
    /// associative (exhaustively up to 64 elements, sampled above).
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::InvalidInput("empty table".into()));
        }
        if size > ORACLE_ORDER_CAP {
            return Err(Error::Unsupported(format!(
                "table of size {size} exceeds the oracle cap {ORACLE_ORDER_CAP}"
            )));
        }
        if labels.len() != size {
            return Err(Error::InvalidInput(format!(
                "{} labels for {size} elements",
                labels.len()
            )));
        }
        let mut flat = Vec::with_capacity(size * size);
        for row in &table {
            if row.len() != size {
                return Err(Error::InvalidInput("table is not square".into()));
            }
            flat.extend_from_slice(row);
        }
        let g = CayleyGroup {
            name: name.into(),
            size,
            table: flat,
            identity: 0,
            labels,
        };
        let identity = g.find_identity()?;
        let g = CayleyGroup { identity, ..g };
        g.check_latin()?;
        g.check_associative()?;
        Ok(g)
    }

    fn find_identity(&self) -> Result<usize> {
        (0..self.size)
            .find(|&e| (0..self.size).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
            .ok_or_else(|| Error::InvalidInput("table has no identity".into()))
    }

    fn check_latin(&self) -> Result<()> {
        let n = self.size;
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let r = self.mul(i, j);
                let c = self.mul(j, i);
                if r >= n || c >= n || row[r] || col[c] {
                    return Err(Error::InvalidInput(format!(
                        "table is not a Latin square at row/column {i}"
                    )));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.size;
        let assoc = |x: usize, y: usize, z: usize| {
            if self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)) {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!(
                    "table is not associative at ({x}, {y}, {z})"
                )))
            }
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        assoc(x, y, z)?;
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                assoc(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.size)
            .find(|&y| self.mul(x, y) == self.identity)
            .expect("Latin square has an inverse in every row")
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    /// Same group with element `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.size;
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidInput(
                "relabeling is not a permutation".into(),
            ));
        }
        let mut table = vec![vec![0; n]; n];
        let mut labels = vec![String::new(); n];
        for x in 0..n {
            labels[perm[x]] = self.labels[x].clone();
            for y in 0..n {
                table[perm[x]][perm[y]] = perm[self.mul(x, y)];
            }
        }
        CayleyGroup::from_table(self.name.clone(), table, labels)
    }
}

/// An automorphism as the image of every element index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AutPermutation {
    pub image: Vec<usize>,
}

impl AutPermutation {
    pub fn fixed_count(&self) -> u64 {
        self.image
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i == j)
            .count() as u64
    }

    /// Whether `image` is a bijection preserving every product of `g`.
    pub fn is_automorphism_of(&self, g: &CayleyGroup) -> bool {
        let n = g.size;
        if self.image.len() != n || self.image[g.identity] != g.identity {
            return false;
        }
        let mut seen = vec![false; n];
        for &i in &self.image {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        (0..n)
            .all(|x| (0..n).all(|y| self.image[g.mul(x, y)] == g.mul(self.image[x], self.image[y])))
    }
}

/// `Z_{m1} ⊕ … ⊕ Z_{mk}`, elements indexed in mixed radix with the first
/// coordinate most significant.
pub fn build_direct_sum(moduli: &[u64]) -> Result<CayleyGroup> {
    if moduli.is_empty() {
        return Err(Error::InvalidInput("no moduli given".into()));
    }
    if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidInput(format!("modulus {m} is below 2")));
    }
    let size = moduli
        .iter()
        .try_fold(1u64, |acc, &m| acc.checked_mul(m))
        .filter(|&s| s <= ORACLE_ORDER_CAP as u64)
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "direct sum of {moduli:?} exceeds the oracle cap {ORACLE_ORDER_CAP}"
            ))
        })? as usize;
    let coords: Vec<Vec<u64>> = (0..size)
        .map(|mut idx| {
            let mut c = vec![0; moduli.len()];
            for (k, &m) in moduli.iter().enumerate().rev() {
                c[k] = idx as u64 % m;
                idx /= m as usize;
            }
            c
        })
        .collect();
    let encode = |c: &[u64]| {
        c.iter()
            .zip(moduli)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    };
    let table = coords
        .iter()
        .map(|cx| {
            coords
                .iter()
                .map(|cy| {
                    let sum: Vec<u64> = cx
                        .iter()
                        .zip(cy)
                        .zip(moduli)
                        .map(|((&x, &y), &m)| (x + y) % m)
                        .collect();
                    encode(&sum)
                })
                .collect()
        })
        .collect();
    let labels = coords
        .iter()
        .map(|c| {
            let parts: Vec<String> = c.iter().map(u64::to_string).collect();
            format!("({})", parts.join(", "))
        })
        .collect();
    let name = moduli
        .iter()
        .map(|m| format!("Z_{m}"))
        .collect::<Vec<_>>()
        .join("+");
    CayleyGroup::from_table(name, table, labels)
}

/// `D_{2n}` on indices `i` (for `a^i`) and `n + i` (for `a^i b`), multiplied
/// with `b a^j = a^{-j} b`.
pub fn build_dihedral(n: usize) -> Result<CayleyGroup> {
    if !(3..=128).contains(&n) {
        return Err(Error::Unsupported(format!(
            "oracle dihedral groups need 3 <= n <= 128, got {n}"
        )));
    }
    let decode = |x: usize| (x % n, x >= n);
    let table = (0..2 * n)
        .map(|x| {
            (0..2 * n)
                .map(|y| {
                    let (i, s) = decode(x);
                    let (j, t) = decode(y);
                    let j = if s { (n - j) % n } else { j };
                    (i + j) % n + if s ^ t { n } else { 0 }
                })
                .collect()
        })
        .collect();
    let labels = (0..2 * n)
        .map(|x| {
            let (i, s) = decode(x);
            let rot = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            match (rot.is_empty(), s) {
                (true, false) => "1".to_string(),
                (_, true) => format!("{rot}b"),
                (false, false) => rot,
            }
        })
        .collect();
    CayleyGroup::from_table(format!("D_{}", 2 * n), table, labels)
}

/// Closure of `seeds` under products and inverses.
pub fn subgroup_generated(g: &CayleyGroup, seeds: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut gens: Vec<usize> = seeds.iter().copied().collect();
    gens.extend(seeds.iter().map(|&s| g.inverse(s)));
    let mut set = BTreeSet::from([g.identity]);
    let mut queue = VecDeque::from([g.identity]);
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// Greedy generating set: repeatedly add the element (lowest index on ties)
/// whose addition enlarges the generated subgroup the most.
pub fn greedy_generators(g: &CayleyGroup) -> Result<Vec<usize>> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = BTreeSet::from([g.identity]);
    while span.len() < g.size {
        if gens.len() == MAX_GENERATORS {
            return Err(Error::Unsupported(format!(
                "{} needs more than {MAX_GENERATORS} generators",
                g.name
            )));
        }
        let (best, best_span) = (0..g.size)
            .filter(|x| !span.contains(x))
            .map(|x| {
                let seeds: BTreeSet<usize> = gens.iter().copied().chain([x]).collect();
                (x, subgroup_generated(g, &seeds))
            })
            .fold(None::<(usize, BTreeSet<usize>)>, |best, cand| match best {
                Some(b) if b.1.len() >= cand.1.len() => Some(b),
                _ => Some(cand),
            })
            .expect("span is a proper subgroup, so some element lies outside it");
        gens.push(best);
        span = best_span;
    }
    Ok(gens)
}

/// Breadth-first word tree: for each element other than the identity, the
/// pair `(parent, generator slot)` with `element = parent · gens[slot]`,
/// listed in discovery order.
fn word_tree(g: &CayleyGroup, gens: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut seen = vec![false; g.size];
    seen[g.identity] = true;
    let mut queue = VecDeque::from([g.identity]);
    let mut order = Vec::with_capacity(g.size);
    while let Some(x) = queue.pop_front() {
        for (slot, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                order.push((y, x, slot));
                queue.push_back(y);
            }
        }
    }
    order
}

/// Extends a choice of generator images along the word tree and keeps it if
/// it is a bijective homomorphism.
fn try_extend(
    g: &CayleyGroup,
    gens: &[usize],
    tree: &[(usize, usize, usize)],
    images: &[usize],
) -> Option<AutPermutation> {
    let n = g.size;
    let mut image = vec![usize::MAX; n];
    image[g.identity] = g.identity;
    for &(y, parent, slot) in tree {
        image[y] = g.mul(image[parent], images[slot]);
    }
    let mut seen = vec![false; n];
    for &i in &image {
        if std::mem::replace(&mut seen[i], true) {
            return None;
        }
    }
    // Compatibility with right multiplication by every generator forces a
    // homomorphism; the full-table check below confirms it.
    for x in 0..n {
        for (slot, &s) in gens.iter().enumerate() {
            if image[g.mul(x, s)] != g.mul(image[x], images[slot]) {
                return None;
            }
        }
    }
    let perm = AutPermutation { image };
    perm.is_automorphism_of(g).then_some(perm)
}

/// Every automorphism of `g`, sorted by image vector.
pub fn brute_force_automorphisms(g: &CayleyGroup) -> Result<Vec<AutPermutation>> {
    if g.size > ORACLE_ORDER_CAP {
        return Err(Error::Unsupported(format!(
            "group of size {} exceeds the oracle cap {ORACLE_ORDER_CAP}",
            g.size
        )));
    }
    let gens = greedy_generators(g)?;
    if gens.is_empty() {
        return Ok(vec![AutPermutation {
            image: vec![g.identity],
        }]);
    }
    let tree = word_tree(g, &gens);
    let orders: Vec<usize> = (0..g.size).map(|x| g.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..g.size).filter(|&x| orders[x] == orders[s]).collect())
        .collect();

    let mut found: Vec<AutPermutation> = candidates[0]
        .par_iter()
        .flat_map_iter(|&first| {
            let mut local = Vec::new();
            let mut images = vec![first; gens.len()];
            let mut cursor = vec![0usize; gens.len()];
            // Odometer over the remaining generator slots.
            loop {
                for k in 1..gens.len() {
                    images[k] = candidates[k][cursor[k]];
                }
                if let Some(perm) = try_extend(g, &gens, &tree, &images) {
                    local.push(perm);
                }
                let mut k = gens.len() - 1;
                loop {
                    if k == 0 {
                        return local;
                    }
                    cursor[k] += 1;
                    if cursor[k] < candidates[k].len() {
                        break;
                    }
                    cursor[k] = 0;
                    k -= 1;
                }
            }
        })
        .collect();
    found.sort();
    Ok(found)
}

/// `θ(G, d)` for every divisor `d` of `|G|`, from the brute-force automorphisms.
pub fn oracle_theta_spectrum(g: &CayleyGroup) -> Result<Spectrum> {
    let auts = brute_force_automorphisms(g)?;
    let mut s = Spectrum::empty(g.name.clone(), g.size as u64);
    for f in &auts {
        s.record(f.fixed_count());
    }
    Ok(s)
}
