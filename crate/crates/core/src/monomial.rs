//! Monomial ideals: membership, Hilbert counts, minimal primes,
//! Borel-fixedness, Stanley-Reisner complexes and shellings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::polyring::{Letter, Monomial, Polynomial, Ring, RingError};
use crate::exactalg::Rational;

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `binom(|u|+3, 3) - sum_i binom(u_i+2, 3)`.
pub fn hilbert_closed_form(u: &[u32]) -> u64 {
    let total: u64 = u.iter().map(|&a| a as u64).sum();
    let sub: u64 = u.iter().map(|&a| binomial(a as u64 + 2, 3)).sum();
    binomial(total + 3, 3) - sub
}

/// Monomial ideal given by its minimal generators, sorted decreasingly in
/// the standard lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    pub ring: Ring,
    gens: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonomialError {
    #[error("generator {0} is not squarefree")]
    NotSquarefree(String),
    #[error("facet list contains nested facets")]
    NestedFacets,
    #[error("not a monomial: {0}")]
    NotMonomial(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl MonomialIdeal {
    pub fn new(ring: Ring, gens: Vec<Monomial>) -> Self {
        let mut g = gens;
        g.sort();
        g.dedup();
        // minimal elements; a divisor has total degree at most the multiple's
        g.sort_by_key(|m| m.degree());
        let mut mins: Vec<Monomial> = Vec::with_capacity(g.len());
        for m in g {
            if !mins.iter().any(|d| d.divides(&m)) {
                mins.push(m);
            }
        }
        mins.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { ring, gens: mins }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|m| self.contains(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn relabel(&self, map: &[usize]) -> Self {
        Self::new(self.ring, self.gens.iter().map(|m| m.relabel(map)).collect())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Self {
        let mut g = self.gens.clone();
        g.extend_from_slice(&other.gens);
        Self::new(self.ring, g)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Self {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.lcm(b));
            }
        }
        Self::new(self.ring, g)
    }

    /// Prime ideal generated by a set of variables.
    pub fn prime(ring: Ring, vars: &[usize]) -> Self {
        Self::new(ring, vars.iter().map(|&v| Monomial::var(v)).collect())
    }

    pub fn standard_monomials(&self, u: &[u32]) -> Vec<Monomial> {
        self.ring
            .monomials_of_degree(u)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// Number of monomials of multidegree `u` outside the ideal.
    ///
    /// Depth-first over the cameras, tracking which generators can still
    /// divide the monomial being built; memoized on (camera, live set).
    pub fn count_standard(&self, u: &[u32]) -> u64 {
        let n = self.ring.n;
        assert_eq!(u.len(), n, "multidegree has the wrong length");
        let words = self.gens.len().div_ceil(64).max(1);
        // per generator, per camera exponent triple
        let parts: Vec<Vec<[u8; 3]>> = self
            .gens
            .iter()
            .map(|g| {
                (0..n)
                    .map(|c| {
                        let vs = self.ring.camera_vars(c);
                        [g.e[vs[0]], g.e[vs[1]], g.e[vs[2]]]
                    })
                    .collect()
            })
            .collect();
        // last camera where each generator has support
        let last: Vec<usize> = parts
            .iter()
            .map(|p| p.iter().rposition(|t| t != &[0, 0, 0]).unwrap_or(0))
            .collect();
        // generators whose degree fits inside u at all
        let mut live = vec![0u64; words];
        for (k, p) in parts.iter().enumerate() {
            if p.iter().zip(u).all(|(t, &d)| (t[0] + t[1] + t[2]) as u32 <= d) {
                live[k / 64] |= 1 << (k % 64);
            }
        }
        let free: Vec<u64> = {
            // free[c] = product over cameras >= c of binom(u+2,2)
            let mut f = vec![1u64; n + 1];
            for c in (0..n).rev() {
                f[c] = f[c + 1] * binomial(u[c] as u64 + 2, 2);
            }
            f
        };
        let mut memo: HashMap<(usize, Vec<u64>), u64> = HashMap::new();
        let ctx = CountCtx {
            parts: &parts,
            last: &last,
            u,
            free: &free,
        };
        ctx.rec(0, live, &mut memo)
    }

    /// Whether the Hilbert function agrees with the closed form on the box
    /// `u <= (k,...,k)`; returns the first failing multidegree.
    pub fn hilbert_mismatch(&self, k: u32) -> Option<Vec<u32>> {
        let n = self.ring.n;
        let mut u = vec![0u32; n];
        loop {
            if self.count_standard(&u) != hilbert_closed_form(&u) {
                return Some(u);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return None;
                }
                if u[i] < k {
                    u[i] += 1;
                    break;
                }
                u[i] = 0;
                i += 1;
            }
        }
    }

    /// Minimal primes of a squarefree ideal, as variable bitmasks sorted
    /// decreasingly (so that primes with larger variables come first).
    pub fn minimal_primes(&self) -> Result<Vec<u64>, MonomialError> {
        if let Some(g) = self.gens.iter().find(|g| !g.is_squarefree()) {
            return Err(MonomialError::NotSquarefree(self.ring.display_monomial(g)));
        }
        let edges: Vec<u64> = self.gens.iter().map(Monomial::support_mask).collect();
        let mut t = minimal_transversals(&edges);
        // variable 0 is bit 0, the largest variable: compare reversed bit strings
        t.sort_by_key(|&m| std::cmp::Reverse(m.reverse_bits()));
        Ok(t)
    }

    pub fn minimal_prime_ideals(&self) -> Result<Vec<MonomialIdeal>, MonomialError> {
        Ok(self
            .minimal_primes()?
            .into_iter()
            .map(|m| Self::prime(self.ring, &mask_vars(m)))
            .collect())
    }

    /// Multidegree as a formal sum: for every minimal prime of minimal
    /// codimension, the vector counting its variables in each camera.
    pub fn multidegree_poly(&self) -> Result<BTreeMap<Vec<u32>, u64>, MonomialError> {
        let primes = self.minimal_primes()?;
        let codim = primes.iter().map(|p| p.count_ones()).min().unwrap_or(0);
        let mut out = BTreeMap::new();
        for p in primes.into_iter().filter(|p| p.count_ones() == codim) {
            let mut e = vec![0u32; self.ring.n];
            for v in mask_vars(p) {
                if let Some(c) = self.ring.camera_of(v) {
                    e[c] += 1;
                }
            }
            *out.entry(e).or_insert(0) += 1;
        }
        Ok(out)
    }

    /// A generator `m` and an exchanged monomial not in the ideal, if the
    /// ideal is not fixed by the lower-triangular Borel group acting on
    /// each camera's `(x, y, z)`.
    pub fn borel_witness(&self) -> Option<(Monomial, Monomial)> {
        let r = &self.ring;
        for g in &self.gens {
            for c in 0..r.n {
                let (x, y, z) = (r.x(c), r.y(c), r.z(c));
                let moves: &[(usize, usize)] = &[(z, y), (z, x), (y, x)];
                for &(from, to) in moves {
                    if g.e[from] == 0 {
                        continue;
                    }
                    let mut m = *g;
                    m.e[from] -= 1;
                    m.e[to] += 1;
                    if !self.contains(&m) {
                        return Some((*g, m));
                    }
                }
            }
        }
        None
    }

    pub fn is_borel_fixed(&self) -> bool {
        self.borel_witness().is_none()
    }

    pub fn stanley_reisner(&self) -> Result<FacetComplex, MonomialError> {
        let facets = self
            .minimal_primes()?
            .into_iter()
            .map(|p| self.camera_mask() & !p)
            .collect();
        Ok(FacetComplex::new(self.ring, facets))
    }

    fn camera_mask(&self) -> u64 {
        let r = &self.ring;
        (r.aux..r.nvars()).fold(0u64, |m, v| m | 1 << v)
    }

    /// One generator per line, largest first.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.gens {
            s.push_str(&self.ring.display_monomial(g));
            s.push('\n');
        }
        s
    }

    /// Parses monomials separated by newlines or commas; `<`, `>` and
    /// blank entries are ignored.
    pub fn parse(text: &str, ring: Ring) -> Result<Self, MonomialError> {
        let mut gens = Vec::new();
        for item in text
            .split(['\n', ','])
            .map(|s| s.trim().trim_matches(['<', '>', '⟨', '⟩']).trim())
            .filter(|s| !s.is_empty() && !s.starts_with('#'))
        {
            let p = Polynomial::<Rational>::parse(item, &ring)?;
            if p.len() != 1 {
                return Err(MonomialError::NotMonomial(item.to_string()));
            }
            gens.push(p.terms()[0].0);
        }
        Ok(Self::new(ring, gens))
    }

    pub fn to_json(&self) -> MonomialIdealJson {
        MonomialIdealJson {
            n: self.ring.n,
            generators: self.gens.iter().map(|g| self.ring.display_monomial(g)).collect(),
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|m| self.ring.display_monomial(m)).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MonomialIdealJson {
    pub n: usize,
    pub generators: Vec<String>,
}

struct CountCtx<'a> {
    parts: &'a [Vec<[u8; 3]>],
    last: &'a [usize],
    u: &'a [u32],
    free: &'a [u64],
}

impl CountCtx<'_> {
    fn rec(&self, cam: usize, live: Vec<u64>, memo: &mut HashMap<(usize, Vec<u64>), u64>) -> u64 {
        if live.iter().all(|&w| w == 0) {
            return self.free[cam];
        }
        if cam == self.u.len() {
            return 0;
        }
        // a live generator with no support left already divides
        for (w, &word) in live.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let k = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if self.last[k] < cam {
                    return 0;
                }
            }
        }
        let key = (cam, live);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let live = &key.1;
        let d = self.u[cam] as u8;
        let mut total = 0u64;
        for a in 0..=d {
            for b in 0..=d - a {
                let c = d - a - b;
                let mut next = live.clone();
                for (w, word) in next.iter_mut().enumerate() {
                    let mut bits = *word;
                    while bits != 0 {
                        let k = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let t = self.parts[k][cam];
                        if t[0] > a || t[1] > b || t[2] > c {
                            *word &= !(1u64 << (k % 64));
                        }
                    }
                }
                total += self.rec(cam + 1, next, memo);
            }
        }
        memo.insert(key, total);
        total
    }
}

pub fn mask_vars(m: u64) -> Vec<usize> {
    (0..64).filter(|&v| m >> v & 1 == 1).collect()
}

/// Minimal transversals (minimal vertex covers) of a hypergraph with
/// edges given as bitmasks, by Berge's incremental method.
pub fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    let mut edges: Vec<u64> = edges.to_vec();
    edges.sort_by_key(|e| e.count_ones());
    edges.dedup();
    let mut tr: Vec<u64> = vec![0];
    for &e in &edges {
        if e == 0 {
            return Vec::new();
        }
        let mut next: Vec<u64> = Vec::new();
        let (hit, miss): (Vec<u64>, Vec<u64>) = tr.iter().partition(|&&t| t & e != 0);
        next.extend(&hit);
        for t in miss {
            let mut bits = e;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let cand = t | 1 << v;
                // minimal iff no kept transversal is a subset
                if !hit.iter().any(|&h| h & cand == h) {
                    next.push(cand);
                }
            }
        }
        next.sort_by_key(|t| t.count_ones());
        next.dedup();
        let mut mins: Vec<u64> = Vec::with_capacity(next.len());
        for t in next {
            if !mins.iter().any(|&m| m & t == m) {
                mins.push(t);
            }
        }
        tr = mins;
    }
    tr
}

/// Shape of a maximal cell of a subcomplex of a product of triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellShape {
    /// (P^1)^3
    Cube,
    /// P^2 x P^1
    Prism,
    Other,
}

/// Simplicial complex on the ring variables given by its facets (bitmasks).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetComplex {
    pub ring: Ring,
    pub facets: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FacetComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    pub labels: Vec<CellShape>,
}

impl FacetComplex {
    pub fn new(ring: Ring, facets: Vec<u64>) -> Self {
        FacetComplex { ring, facets }
    }

    /// Per-camera vertex counts of a facet.
    pub fn camera_sizes(&self, f: u64) -> Vec<u32> {
        let mut s = vec![0u32; self.ring.n];
        for v in mask_vars(f) {
            if let Some(c) = self.ring.camera_of(v) {
                s[c] += 1;
            }
        }
        s
    }

    pub fn shape(&self, f: u64) -> CellShape {
        let mut s = self.camera_sizes(f);
        s.sort_unstable_by(|a, b| b.cmp(a));
        let rest_ones = |k: usize| s[k..].iter().all(|&a| a == 1);
        if s.len() >= 3 && s[..3] == [2, 2, 2] && rest_ones(3) {
            CellShape::Cube
        } else if s.len() >= 2 && s[..2] == [3, 2] && rest_ones(2) {
            CellShape::Prism
        } else {
            CellShape::Other
        }
    }

    pub fn labels(&self) -> Vec<CellShape> {
        self.facets.iter().map(|&f| self.shape(f)).collect()
    }

    pub fn count_shape(&self, shape: CellShape) -> usize {
        self.labels().into_iter().filter(|&s| s == shape).count()
    }

    /// Edges between cells sharing a 2-dimensional cell: the common
    /// vertex set meets every camera and has `sum (size - 1) = 2`.
    pub fn dual_graph(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.facets.len() {
            for j in i + 1..self.facets.len() {
                let s = self.camera_sizes(self.facets[i] & self.facets[j]);
                if s.iter().all(|&a| a >= 1) && s.iter().map(|&a| a - 1).sum::<u32>() == 2 {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Sorted degree sequence of the dual graph, each entry tagged by shape.
    pub fn dual_degree_sequence(&self) -> Vec<(CellShape, usize)> {
        let mut deg = vec![0usize; self.facets.len()];
        for (a, b) in self.dual_graph() {
            deg[a] += 1;
            deg[b] += 1;
        }
        let labels = self.labels();
        let mut seq: Vec<(CellShape, usize)> = labels.into_iter().zip(deg).collect();
        seq.sort_by_key(|&(s, d)| (s as u8, d));
        seq
    }

    /// Checks the shelling condition for the facets in the given order;
    /// returns the index of the first facet with no unique minimal new face.
    pub fn shelling_failure(&self, order: &[u64]) -> Result<Option<usize>, MonomialError> {
        for (j, &f) in order.iter().enumerate().skip(1) {
            let mut diffs = Vec::with_capacity(j);
            for &g in &order[..j] {
                let d = f & !g;
                if d == 0 {
                    return Err(MonomialError::NestedFacets);
                }
                diffs.push(d);
            }
            if minimal_transversals(&diffs).len() != 1 {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    pub fn is_shelling(&self, order: &[u64]) -> Result<bool, MonomialError> {
        Ok(self.shelling_failure(order)?.is_none())
    }

    pub fn to_json(&self) -> FacetComplexJson {
        let r = &self.ring;
        FacetComplexJson {
            vertices: (r.aux..r.nvars()).map(|v| r.var_name(v)).collect(),
            facets: self
                .facets
                .iter()
                .map(|&f| mask_vars(f).into_iter().map(|v| r.var_name(v)).collect())
                .collect(),
            labels: self.labels(),
        }
    }
}

/// The generic initial ideal `<x_i x_j, x_i y_j y_k, y_i y_j y_k y_l>`.
pub fn gens_m(n: usize) -> MonomialIdeal {
    assert!(n >= 2, "need at least two cameras");
    let r = Ring::new(n);
    let mut g = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            g.push(Monomial::from_vars(&[r.x(i), r.x(j)]));
            for k in j + 1..n {
                g.push(Monomial::from_vars(&[r.x(i), r.y(j), r.y(k)]));
                g.push(Monomial::from_vars(&[r.y(i), r.x(j), r.y(k)]));
                g.push(Monomial::from_vars(&[r.y(i), r.y(j), r.x(k)]));
                for l in k + 1..n {
                    g.push(Monomial::from_vars(&[r.y(i), r.y(j), r.y(k), r.y(l)]));
                }
            }
        }
    }
    MonomialIdeal::new(r, g)
}

/// `<x_i y_j> + <x_i z_j x_k, y_i z_j y_k, y_i z_j x_k>` for `i < j < k`.
pub fn gens_n(n: usize) -> MonomialIdeal {
    assert!(n >= 2, "need at least two cameras");
    let r = Ring::new(n);
    let mut g = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            g.push(Monomial::from_vars(&[r.x(i), r.y(j)]));
            for k in j + 1..n {
                g.push(Monomial::from_vars(&[r.x(i), r.z(j), r.x(k)]));
                g.push(Monomial::from_vars(&[r.y(i), r.z(j), r.y(k)]));
                g.push(Monomial::from_vars(&[r.y(i), r.z(j), r.x(k)]));
            }
        }
    }
    MonomialIdeal::new(r, g)
}

/// Vectors `u` in `{0,1,2}^n` indexing the minimal primes of `M_n`
/// (three ones, or one zero and one one; all other entries two), in
/// increasing lex order.
pub fn gin_prime_labels(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut u = vec![0u8; n];
        let mut c = code;
        for k in (0..n).rev() {
            u[k] = (c % 3) as u8;
            c /= 3;
        }
        let zeros = u.iter().filter(|&&a| a == 0).count();
        let ones = u.iter().filter(|&&a| a == 1).count();
        if (zeros == 0 && ones == 3) || (zeros == 1 && ones == 1) {
            out.push(u);
        }
    }
    out
}

/// Prime `P_u = <p_ij : i <= u_j>` where `p_1j, p_2j, p_3j = x_j, y_j, z_j`.
pub fn gin_prime(ring: &Ring, u: &[u8]) -> u64 {
    let mut m = 0u64;
    for (j, &uj) in u.iter().enumerate() {
        for (i, l) in [Letter::X, Letter::Y, Letter::Z].iter().enumerate() {
            if i < uj as usize {
                m |= 1 << ring.var(*l, j);
            }
        }
    }
    m
}

/// Facets `F_u` of the Stanley-Reisner complex of `M_n`, in the shelling order
/// given by increasing lex order on `u`.
pub fn gin_shelling_order(n: usize) -> Vec<u64> {
    let r = Ring::new(n);
    let all = (0..r.nvars()).fold(0u64, |m, v| m | 1 << v);
    gin_prime_labels(n)
        .iter()
        .map(|u| all & !gin_prime(&r, u))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(i: &MonomialIdeal, u: &[u32]) -> u64 {
        i.standard_monomials(u).len() as u64
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(hilbert_closed_form(&[0, 0]), 1);
        assert_eq!(hilbert_closed_form(&[1, 1]), 8);
        // 35 - 4 - 4
        assert_eq!(hilbert_closed_form(&[2, 2]), 27);
        assert_eq!(hilbert_closed_form(&[1, 1, 1]), 17);
    }

    #[test]
    fn generator_counts() {
        assert_eq!(gens_m(2).len(), 1);
        assert_eq!(gens_m(3).len(), 6);
        assert_eq!(gens_m(4).len(), 19);
        assert_eq!(gens_n(2).len(), 1);
        assert_eq!(gens_n(3).len(), 6);
        assert_eq!(gens_n(4).len(), 18);
    }

    #[test]
    fn count_matches_brute_force() {
        for n in 2..=3 {
            for ideal in [gens_m(n), gens_n(n)] {
                for u in [vec![1; n], vec![2; n], vec![3; n], {
                    let mut v = vec![0; n];
                    v[0] = 2;
                    v[n - 1] = 1;
                    v
                }] {
                    assert_eq!(ideal.count_standard(&u), brute_count(&ideal, &u), "{ideal} {u:?}");
                }
            }
        }
        let r = Ring::new(2);
        let x1 = MonomialIdeal::new(r, vec![Monomial::var(r.x(0))]);
        assert_eq!(x1.count_standard(&[1, 0]), 2);
    }

    #[test]
    fn transversals_small() {
        // edges {0,1}, {1,2}
        let t = minimal_transversals(&[0b011, 0b110]);
        let mut t = t;
        t.sort();
        assert_eq!(t, vec![0b010, 0b101]);
        assert!(minimal_transversals(&[0]).is_empty());
    }

    #[test]
    fn primes_of_principal() {
        let r = Ring::new(2);
        let i = MonomialIdeal::new(r, vec![Monomial::from_vars(&[r.x(0), r.y(1)])]);
        let p = i.minimal_primes().unwrap();
        assert_eq!(p.len(), 2);
        let md = i.multidegree_poly().unwrap();
        assert_eq!(md.get(&vec![1, 0]), Some(&1));
        assert_eq!(md.get(&vec![0, 1]), Some(&1));
    }

    #[test]
    fn recomposition_from_primes() {
        for ideal in [gens_m(3), gens_n(3), gens_m(4)] {
            let primes = ideal.minimal_prime_ideals().unwrap();
            let mut acc = primes[0].clone();
            for p in &primes[1..] {
                acc = acc.intersect(p);
            }
            assert_eq!(acc, ideal);
        }
    }

    #[test]
    fn borel_examples() {
        assert!(gens_m(3).is_borel_fixed());
        let n3 = gens_n(3);
        let r = n3.ring;
        let witness = n3.borel_witness().unwrap();
        assert!(!n3.contains(&witness.1));
        let y1y2x3 = Monomial::from_vars(&[r.y(0), r.y(1), r.x(2)]);
        assert!(!n3.contains(&y1y2x3));
        let r2 = Ring::new(2);
        let zz = MonomialIdeal::new(r2, vec![Monomial::from_vars(&[r2.z(0), r2.z(1)])]);
        assert!(!zz.is_borel_fixed());
    }

    #[test]
    fn gin_labels_match_primes() {
        for n in 3..=5 {
            let m = gens_m(n);
            let mut primes = m.minimal_primes().unwrap();
            let r = Ring::new(n);
            let mut from_labels: Vec<u64> = gin_prime_labels(n).iter().map(|u| gin_prime(&r, u)).collect();
            primes.sort();
            from_labels.sort();
            assert_eq!(primes, from_labels);
        }
    }

    #[test]
    fn shelling_examples() {
        let r = Ring::new(2);
        let fc = FacetComplex::new(r, vec![0b0011]);
        assert!(fc.is_shelling(&[0b0011]).unwrap());
        // two disjoint edges
        let fc = FacetComplex::new(r, vec![0b0011, 0b1100]);
        assert!(!fc.is_shelling(&[0b0011, 0b1100]).unwrap());
        assert!(fc.is_shelling(&[0b0011, 0b0001]).is_err());
        let m3 = gens_m(3).stanley_reisner().unwrap();
        assert!(m3.is_shelling(&gin_shelling_order(3)).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let m = gens_n(3);
        let back = MonomialIdeal::parse(&m.to_text(), m.ring).unwrap();
        assert_eq!(back, m);
        assert!(MonomialIdeal::parse("x1 + y1", m.ring).is_err());
    }
}
