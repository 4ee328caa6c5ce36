//! The group `(S_3)^n ⋊ S_n` acting on `K[x, y, z]`: each camera permutes
//! its three variables and the cameras are relabeled.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::monomial::MonomialIdeal;
use crate::polyring::{Letter, Ring};

const S3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub struct SymmetryGroup {
    pub ring: Ring,
    /// One variable map per group element; the identity comes first.
    pub maps: Vec<Vec<usize>>,
    /// For each element, the image bit of each variable.
    bits: Vec<Vec<u64>>,
}

impl SymmetryGroup {
    /// The full group of order `6^n * n!` on the plain ring.
    pub fn new(n: usize) -> Self {
        let ring = Ring::new(n);
        let letters = [Letter::X, Letter::Y, Letter::Z];
        let mut maps = Vec::new();
        for cams in permutations(n) {
            let mut choice = vec![0usize; n];
            loop {
                let mut map = vec![0usize; ring.nvars()];
                for c in 0..n {
                    for (l, &letter) in letters.iter().enumerate() {
                        map[ring.var(letter, c)] = ring.var(letters[S3[choice[c]][l]], cams[c]);
                    }
                }
                maps.push(map);
                // odometer over the per-camera choices
                let mut k = 0;
                while k < n && choice[k] == 5 {
                    choice[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
                choice[k] += 1;
            }
        }
        let bits = maps.iter().map(|m| m.iter().map(|&v| 1u64 << v).collect()).collect();
        SymmetryGroup { ring, maps, bits }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    fn image(&self, g: usize, mask: u64) -> u64 {
        let b = &self.bits[g];
        let mut m = mask;
        let mut out = 0;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            out |= b[v];
            m &= m - 1;
        }
        out
    }

    /// Lexicographically smallest sorted mask list over the orbit of a
    /// squarefree ideal given by generator masks.
    pub fn canonical_masks(&self, gens: &[u64]) -> Vec<u64> {
        let mut best: Vec<u64> = gens.to_vec();
        best.sort_unstable();
        let mut cur = vec![0u64; gens.len()];
        for g in 1..self.order() {
            for (c, &m) in cur.iter_mut().zip(gens) {
                *c = self.image(g, m);
            }
            cur.sort_unstable();
            if cur < best {
                best.copy_from_slice(&cur);
            }
        }
        best
    }

    /// Canonical representative of the orbit of a squarefree ideal.
    pub fn canonical(&self, ideal: &MonomialIdeal) -> MonomialIdeal {
        assert!(ideal.is_squarefree(), "canonical forms need squarefree generators");
        let masks: Vec<u64> = ideal.gens().iter().map(|m| m.support_mask()).collect();
        let canon = self.canonical_masks(&masks);
        MonomialIdeal::new(
            self.ring,
            canon
                .into_iter()
                .map(|m| crate::polyring::Monomial::from_vars(&crate::monomial::mask_vars(m)))
                .collect(),
        )
    }

    /// Whether `a` and `b` lie in one orbit.
    pub fn equivalent(&self, a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
        a.len() == b.len() && self.canonical(a) == self.canonical(b)
    }
}

/// Orbits of a set of squarefree ideals: each entry is the canonical
/// representative with the indices of its members, sorted canonically.
pub fn symmetry_classes(ideals: &[MonomialIdeal], group: &SymmetryGroup) -> Vec<(MonomialIdeal, Vec<usize>)> {
    let keys: Vec<Vec<u64>> = ideals
        .par_iter()
        .map(|i| {
            let masks: Vec<u64> = i.gens().iter().map(|m| m.support_mask()).collect();
            group.canonical_masks(&masks)
        })
        .collect();
    let mut classes: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (k, key) in keys.into_iter().enumerate() {
        classes.entry(key).or_default().push(k);
    }
    classes
        .into_values()
        .map(|members| (group.canonical(&ideals[members[0]]), members))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(SymmetryGroup::new(2).order(), 72);
        assert_eq!(SymmetryGroup::new(3).order(), 1296);
        let g = SymmetryGroup::new(2);
        assert_eq!(g.maps[0], (0..6).collect::<Vec<_>>());
        let mut sorted = g.maps.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 72);
    }

    #[test]
    fn bilinear_monomials_form_one_orbit() {
        let r = Ring::new(2);
        let g = SymmetryGroup::new(2);
        let ideals: Vec<MonomialIdeal> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .map(|(a, b)| {
                let l = [Letter::X, Letter::Y, Letter::Z];
                MonomialIdeal::new(
                    r,
                    vec![crate::polyring::Monomial::from_vars(&[r.var(l[a], 0), r.var(l[b], 1)])],
                )
            })
            .collect();
        assert_eq!(symmetry_classes(&ideals, &g).len(), 1);
        assert_eq!(symmetry_classes(&ideals[..1], &g).len(), 1);
    }

    #[test]
    fn orbit_invariant_separates() {
        let r = Ring::new(2);
        let g = SymmetryGroup::new(2);
        let a = MonomialIdeal::parse("x1*y2", r).unwrap();
        let b = MonomialIdeal::parse("z1*x2", r).unwrap();
        let c = MonomialIdeal::parse("x1*y1", r).unwrap();
        assert!(g.equivalent(&a, &b));
        assert!(!g.equivalent(&a, &c));
    }
}
