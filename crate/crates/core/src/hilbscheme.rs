//! Monomial points of the multigraded Hilbert scheme `H_n` for small `n`.
//!
//! Every ideal on `H_n` is radical, so the search runs over squarefree
//! monomial ideals. Such an ideal is an up-set `U` of squarefree monomials,
//! and its Hilbert function is fixed by the number of squarefree standard
//! monomials of each size type `k` (`k_i` variables from camera `i`). The
//! types are visited by increasing total size; at each one the monomials
//! forced by the smaller types are added and the remaining quota is filled
//! in all possible ways.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::monomial::{binomial, hilbert_closed_form, mask_vars, MonomialIdeal};
use crate::polyring::{Monomial, Ring};
use crate::symmetry::{symmetry_classes, SymmetryGroup};
use crate::tangent::tangent_dim;

fn size_type(ring: &Ring, mask: u64) -> Vec<u32> {
    (0..ring.n)
        .map(|c| ring.camera_vars(c).iter().filter(|&&v| mask >> v & 1 == 1).count() as u32)
        .collect()
}

/// Number of squarefree standard monomials of each size type forced by the
/// multiview Hilbert function, by inverting
/// `HF(u) = sum_k t_k prod_i binom(u_i - 1, k_i - 1)`.
pub fn standard_face_counts(n: usize) -> BTreeMap<Vec<u32>, u64> {
    let mut types: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        types = types
            .into_iter()
            .flat_map(|t| {
                (0..=3).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    types.sort_by_key(|t| (t.iter().sum::<u32>(), t.clone()));
    let mut out: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for k in &types {
        let mut rest = hilbert_closed_form(k) as i64;
        for (k2, &t) in &out {
            let same_support = k2.iter().zip(k).all(|(&a, &b)| (a == 0) == (b == 0));
            if k2 != k && same_support && k2.iter().zip(k).all(|(a, b)| a <= b) {
                let mult: u64 = k2
                    .iter()
                    .zip(k)
                    .map(|(&a, &b)| if b == 0 { 1 } else { binomial(u64::from(b - 1), u64::from(a - 1)) })
                    .product();
                rest -= (mult * t) as i64;
            }
        }
        assert!(rest >= 0, "negative face count");
        out.insert(k.clone(), rest as u64);
    }
    out
}

struct Search {
    ring: Ring,
    /// Masks of each type, types in search order, with the quota of ideal members.
    levels: Vec<(Vec<u64>, usize)>,
}

impl Search {
    fn new(n: usize) -> Self {
        let ring = Ring::new(n);
        let counts = standard_face_counts(n);
        let mut by_type: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
        for mask in 0..1u64 << (3 * n) {
            by_type.entry(size_type(&ring, mask)).or_default().push(mask);
        }
        let mut levels: Vec<(Vec<u32>, Vec<u64>, usize)> = by_type
            .into_iter()
            .map(|(k, masks)| {
                let quota = masks.len() - counts[&k] as usize;
                (k, masks, quota)
            })
            .collect();
        levels.sort_by_key(|(k, _, _)| (k.iter().sum::<u32>(), k.clone()));
        Search {
            ring,
            levels: levels.into_iter().map(|(_, m, q)| (m, q)).collect(),
        }
    }

    fn forced(&self, level: usize, inside: &[bool]) -> (Vec<u64>, Vec<u64>) {
        let (masks, _) = &self.levels[level];
        masks.iter().partition(|&&m| {
            let mut b = m;
            while b != 0 {
                let bit = b & b.wrapping_neg();
                if inside[(m ^ bit) as usize] {
                    return true;
                }
                b ^= bit;
            }
            false
        })
    }

    fn run(&self, level: usize, inside: &mut Vec<bool>, out: &mut Vec<Vec<u64>>) {
        if level == self.levels.len() {
            let gens: Vec<u64> = (0..inside.len() as u64)
                .filter(|&m| inside[m as usize])
                .filter(|&m| {
                    let mut b = m;
                    while b != 0 {
                        let bit = b & b.wrapping_neg();
                        if inside[(m ^ bit) as usize] {
                            return false;
                        }
                        b ^= bit;
                    }
                    true
                })
                .collect();
            out.push(gens);
            return;
        }
        let quota = self.levels[level].1;
        let (forced, free) = self.forced(level, inside);
        if forced.len() > quota {
            return;
        }
        for &m in &forced {
            inside[m as usize] = true;
        }
        for_each_subset(&free, quota - forced.len(), &mut |chosen| {
            for &m in chosen {
                inside[m as usize] = true;
            }
            self.run(level + 1, inside, out);
            for &m in chosen {
                inside[m as usize] = false;
            }
        });
        for &m in &forced {
            inside[m as usize] = false;
        }
    }

    /// Index of the first level with a positive quota.
    fn first_choice(&self) -> usize {
        self.levels.iter().position(|(_, q)| *q > 0).unwrap_or(self.levels.len())
    }
}

fn for_each_subset(items: &[u64], k: usize, f: &mut dyn FnMut(&[u64])) {
    fn rec(items: &[u64], k: usize, start: usize, cur: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

/// All squarefree monomial ideals with the multiview Hilbert function,
/// sorted by generators.
pub fn enumerate(n: usize) -> Vec<MonomialIdeal> {
    assert!((2..=3).contains(&n), "the census covers n = 2 and n = 3");
    let search = Search::new(n);
    let ring = search.ring;
    let size = 1usize << (3 * n);
    // Everything below the first level with a quota is empty; branch on the
    // subsets chosen there, which are independent tasks.
    let start = search.first_choice();
    let mut roots: Vec<Vec<u64>> = Vec::new();
    {
        let inside = vec![false; size];
        let mut ok = true;
        for l in 0..start {
            ok &= search.forced(l, &inside).0.is_empty();
        }
        if ok && start < search.levels.len() {
            let (masks, quota) = &search.levels[start];
            for_each_subset(masks, *quota, &mut |c| roots.push(c.to_vec()));
        }
    }
    let mut found: Vec<Vec<u64>> = roots
        .par_iter()
        .flat_map_iter(|root| {
            let mut inside = vec![false; size];
            for &m in root {
                inside[m as usize] = true;
            }
            let mut out = Vec::new();
            search.run(start + 1, &mut inside, &mut out);
            out
        })
        .collect();
    found.sort();
    found.dedup();
    let mut ideals: Vec<MonomialIdeal> = found
        .into_iter()
        .map(|g| MonomialIdeal::new(ring, g.iter().map(|&m| Monomial::from_vars(&mask_vars(m))).collect()))
        .collect();
    ideals.sort_by(|a, b| a.gens().cmp(b.gens()));
    ideals
}

/// Squarefree and with the multiview Hilbert function on the box `<= (3,...,3)`,
/// which for squarefree ideals fixes the Hilbert function in every degree.
pub fn verify_membership(ideal: &MonomialIdeal) -> bool {
    ideal.is_squarefree() && ideal.hilbert_mismatch(3).is_none()
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusClass {
    pub representative: Vec<String>,
    pub size: usize,
    pub generators: usize,
    pub tangent_dim: usize,
    pub borel_fixed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub n: usize,
    pub ideals: usize,
    pub classes: Vec<CensusClass>,
    pub sha256: String,
    #[serde(skip)]
    pub members: Vec<MonomialIdeal>,
}

impl Census {
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        for i in &self.members {
            s.push_str(&i.to_json().generators.join(","));
            s.push('\n');
        }
        s
    }

    pub fn classes_below(&self, dim: usize) -> usize {
        self.classes.iter().filter(|c| c.tangent_dim < dim).count()
    }

    pub fn contains(&self, ideal: &MonomialIdeal) -> bool {
        self.members
            .binary_search_by(|m| m.gens().cmp(ideal.gens()))
            .is_ok()
    }
}

pub fn census(n: usize) -> Census {
    let members = enumerate(n);
    let group = SymmetryGroup::new(n);
    let classes = symmetry_classes(&members, &group)
        .into_iter()
        .map(|(rep, idx)| CensusClass {
            representative: rep.to_json().generators,
            size: idx.len(),
            generators: rep.len(),
            tangent_dim: tangent_dim(&rep),
            borel_fixed: idx.iter().any(|&k| members[k].is_borel_fixed()),
        })
        .collect();
    let mut c = Census {
        n,
        ideals: members.len(),
        classes,
        sha256: String::new(),
        members,
    };
    c.sha256 = hex::encode(Sha256::digest(c.canonical_text().as_bytes()));
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{gens_m, gens_n};

    #[test]
    fn face_counts_reproduce_the_closed_form() {
        let t = standard_face_counts(2);
        assert_eq!(t[&vec![1, 1]], 8);
        assert_eq!(t[&vec![2, 1]], 7);
        assert_eq!(t[&vec![2, 0]], 3);
        assert_eq!(t[&vec![0, 0]], 1);
        // recount the standard monomials of M_3 by support type
        let m3 = gens_m(3);
        let r = m3.ring;
        let t3 = standard_face_counts(3);
        let mut seen: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for mask in 0..1u64 << 9 {
            if !m3.contains(&Monomial::from_vars(&mask_vars(mask))) {
                *seen.entry(size_type(&r, mask)).or_default() += 1;
            }
        }
        for (k, v) in &t3 {
            assert_eq!(seen.get(k).copied().unwrap_or(0), *v, "{k:?}");
        }
    }

    #[test]
    fn two_cameras() {
        let c = census(2);
        assert_eq!(c.ideals, 9);
        assert_eq!(c.classes.len(), 1);
        for i in &c.members {
            assert_eq!(i.len(), 1);
            assert_eq!(i.max_degree(), 2);
            assert_eq!(tangent_dim(i), 8);
            assert!(verify_membership(i));
        }
    }

    #[test]
    fn three_cameras_beyond_the_box_and_on_orbits() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let c = census(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for ideal in c.members.choose_multiple(&mut rng, 40) {
            assert_eq!(ideal.hilbert_mismatch(4), None, "{ideal}");
        }
        // tangent dimension is a class invariant
        let group = SymmetryGroup::new(3);
        for class in &c.classes {
            let rep = MonomialIdeal::parse(&class.representative.join(","), group.ring).unwrap();
            for map in group.maps.choose_multiple(&mut rng, 3) {
                assert_eq!(tangent_dim(&rep.relabel(map)), class.tangent_dim);
            }
        }
    }

    #[test]
    fn membership() {
        let r = Ring::new(2);
        assert!(verify_membership(&MonomialIdeal::parse("x1*x2", r).unwrap()));
        assert!(!verify_membership(&MonomialIdeal::parse("x1", r).unwrap()));
        assert!(verify_membership(&gens_m(3)));
        assert!(verify_membership(&gens_n(3)));
    }
}
