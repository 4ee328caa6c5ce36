//! Buchberger's algorithm (fraction-free over Z or Z[eps]) and the ideal
//! operations built on it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::exactalg::{Field, GcdDomain};
use crate::monomial::MonomialIdeal;
use crate::polyring::{Monomial, Polynomial, Ring, TermOrder, MAX_VARS};

/// A term order rewritten so that, after permuting variables by `perm`,
/// comparison is "weight rows, then derived `Ord` on exponent arrays".
#[derive(Clone, Debug)]
pub struct CompiledOrder {
    perm: Vec<usize>,
    rows: Vec<[i64; MAX_VARS]>,
    /// Weights used for the normal selection strategy (zero on auxiliary variables).
    sel: [u8; MAX_VARS],
}

impl CompiledOrder {
    pub fn new(order: &TermOrder, ring: &Ring) -> Self {
        let nv = ring.nvars();
        let mut perm = order.perm().to_vec();
        assert_eq!(perm.len(), nv, "term order does not match the ring");
        perm.extend(nv..MAX_VARS);
        let rows = order
            .rows()
            .iter()
            .map(|r| {
                let mut a = [0i64; MAX_VARS];
                for (k, &v) in perm.iter().enumerate().take(nv) {
                    a[k] = r[v];
                }
                a
            })
            .collect();
        let mut sel = [0u8; MAX_VARS];
        for (k, &v) in perm.iter().enumerate().take(nv) {
            sel[k] = u8::from(v >= ring.aux);
        }
        CompiledOrder { perm, rows, sel }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for r in &self.rows {
            let (mut da, mut db) = (0i64, 0i64);
            for k in 0..MAX_VARS {
                da += r[k] * a.e[k] as i64;
                db += r[k] * b.e[k] as i64;
            }
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        a.cmp(b)
    }

    fn to_internal(&self, m: &Monomial) -> Monomial {
        m.permuted(&self.perm)
    }

    fn to_external(&self, m: &Monomial) -> Monomial {
        m.unpermuted(&self.perm)
    }

    fn sel_degree(&self, m: &Monomial) -> u32 {
        (0..MAX_VARS).map(|k| (self.sel[k] * m.e[k]) as u32).sum()
    }
}

/// Polynomial in internal coordinates, sorted by decreasing compiled order.
#[derive(Clone, Debug)]
struct IPoly<D> {
    t: Vec<(Monomial, D)>,
}

impl<D: GcdDomain> IPoly<D> {
    fn lm(&self) -> &Monomial {
        &self.t[0].0
    }

    fn lc(&self) -> &D {
        &self.t[0].1
    }

    fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    fn make_primitive(&mut self) {
        if self.t.is_empty() {
            return;
        }
        let mut g = D::zero();
        for (_, c) in &self.t {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        let negate = self.t[0].1.is_neg_associate();
        if !g.is_one() {
            for (_, c) in self.t.iter_mut() {
                *c = c.div_exact(&g);
            }
        }
        if negate {
            for (_, c) in self.t.iter_mut() {
                *c = c.neg_ref();
            }
        }
    }

    fn max_bits(&self) -> u64 {
        self.t.iter().map(|(_, c)| c.size_bits()).max().unwrap_or(0)
    }
}

/// `bp * p[skip_p..] - ag * shift * g[skip_g..]`, merged in compiled order.
fn combine<D: GcdDomain>(
    p: &[(Monomial, D)],
    bp: &D,
    g: &[(Monomial, D)],
    ag: &D,
    shift: &Monomial,
    ord: &CompiledOrder,
) -> Vec<(Monomial, D)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let unit_b = bp.is_one();
    let scale_p = |c: &D| if unit_b { c.clone() } else { c.mul_ref(bp) };
    let mut gm = if j < g.len() { Some(g[j].0.mul(shift)) } else { None };
    while i < p.len() {
        let Some(m) = gm else { break };
        match ord.cmp(&p[i].0, &m) {
            Ordering::Greater => {
                out.push((p[i].0, scale_p(&p[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((m, g[j].1.mul_ref(ag).neg_ref()));
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(shift));
            }
            Ordering::Equal => {
                let c = scale_p(&p[i].1).sub_ref(&g[j].1.mul_ref(ag));
                if !c.is_zero() {
                    out.push((m, c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(shift));
            }
        }
    }
    out.extend(p[i..].iter().map(|(m, c)| (*m, scale_p(c))));
    while j < g.len() {
        out.push((g[j].0.mul(shift), g[j].1.mul_ref(ag).neg_ref()));
        j += 1;
    }
    out
}

struct Basis<D> {
    polys: Vec<IPoly<D>>,
    masks: Vec<u64>,
    active: Vec<bool>,
}

impl<D: GcdDomain> Basis<D> {
    fn find_reducer(&self, m: &Monomial, mask: u64) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, p) in self.polys.iter().enumerate() {
            if self.masks[k] & !mask != 0 || !p.lm().divides(m) {
                continue;
            }
            match best {
                Some(b) if self.polys[b].t.len() <= p.t.len() => {}
                _ => best = Some(k),
            }
        }
        best
    }
}

/// One fraction-free reduction step of the term at `idx` of `p` by `g`.
fn reduce_step<D: GcdDomain>(
    p: &[(Monomial, D)],
    idx: usize,
    g: &IPoly<D>,
    ord: &CompiledOrder,
) -> (Vec<(Monomial, D)>, D) {
    let (m, a) = &p[idx];
    let b = g.lc();
    let gg = a.gcd(b);
    let (a1, b1) = (a.div_exact(&gg), b.div_exact(&gg));
    let shift = m.div(g.lm());
    // terms before idx are untouched by g (they are larger than m)
    let mut head: Vec<(Monomial, D)> = p[..idx]
        .iter()
        .map(|(mm, c)| (*mm, if b1.is_one() { c.clone() } else { c.mul_ref(&b1) }))
        .collect();
    let tail = combine(&p[idx + 1..], &b1, &g.t[1..], &a1, &shift, ord);
    head.extend(tail);
    (head, b1)
}

/// Reduce the leading term of `p` until it is not divisible by any basis element.
fn top_reduce<D: GcdDomain>(mut p: IPoly<D>, basis: &Basis<D>, ord: &CompiledOrder) -> IPoly<D> {
    let start_bits = p.max_bits().max(8);
    let mut steps = 0u32;
    while !p.is_zero() {
        let m = *p.lm();
        let Some(k) = basis.find_reducer(&m, m.support_mask()) else {
            break;
        };
        let (t, _) = reduce_step(&p.t, 0, &basis.polys[k], ord);
        p.t = t;
        steps += 1;
        if steps % 8 == 0 && p.max_bits() > 2 * start_bits {
            p.make_primitive();
        }
    }
    p.make_primitive();
    p
}

/// Fully reduce every term of `p` below position `from`; returns the
/// reduced polynomial and the accumulated scalar `s` with
/// `s * p_in = result (mod basis)`.
fn full_reduce<D: GcdDomain>(
    mut p: Vec<(Monomial, D)>,
    from: usize,
    reducers: &[&IPoly<D>],
    ord: &CompiledOrder,
) -> (Vec<(Monomial, D)>, D) {
    let masks: Vec<u64> = reducers.iter().map(|g| g.lm().support_mask()).collect();
    let mut mult = D::one();
    let mut idx = from;
    while idx < p.len() {
        let m = p[idx].0;
        let mask = m.support_mask();
        let found = reducers
            .iter()
            .enumerate()
            .find(|(k, g)| masks[*k] & !mask == 0 && g.lm().divides(&m));
        match found {
            Some((_, g)) => {
                let (t, b1) = reduce_step(&p, idx, g, ord);
                p = t;
                mult = mult.mul_ref(&b1);
            }
            None => idx += 1,
        }
    }
    (p, mult)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Work {
    Input(usize),
    Pair(usize, usize),
}

/// Buchberger with Gebauer-Möller criteria; returns the reduced basis
/// (primitive, canonical sign) sorted by increasing leading monomial.
fn buchberger<D: GcdDomain>(input: Vec<IPoly<D>>, ord: &CompiledOrder) -> Vec<IPoly<D>> {
    let mut basis: Basis<D> = Basis {
        polys: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
    };
    // queue keyed by (selection degree, kind, sequence)
    let mut queue: BTreeMap<(u32, u8, u64), Work> = BTreeMap::new();
    let mut seq = 0u64;
    let mut pair_lcm: HashMap<(usize, usize), Monomial> = HashMap::new();
    let mut inputs: Vec<Option<IPoly<D>>> = Vec::new();
    for p in input.into_iter().filter(|p| !p.is_zero()) {
        let d = ord.sel_degree(p.lm());
        queue.insert((d, 0, seq), Work::Input(inputs.len()));
        seq += 1;
        inputs.push(Some(p));
    }

    while let Some((_, work)) = queue.pop_first() {
        let h = match work {
            Work::Input(k) => inputs[k].take().unwrap(),
            Work::Pair(i, j) => {
                pair_lcm.remove(&(i, j));
                let (gi, gj) = (&basis.polys[i], &basis.polys[j]);
                let l = gi.lm().lcm(gj.lm());
                let (a, b) = (gi.lc(), gj.lc());
                let g = a.gcd(b);
                let (a1, b1) = (a.div_exact(&g), b.div_exact(&g));
                // b1 * (l/lm_i) * g_i - a1 * (l/lm_j) * g_j
                let si: Vec<(Monomial, D)> = gi.t[1..]
                    .iter()
                    .map(|(m, c)| (m.mul(&l.div(gi.lm())), c.clone()))
                    .collect();
                let t = combine(&si, &b1, &gj.t[1..], &a1, &l.div(gj.lm()), ord);
                IPoly { t }
            }
        };
        if h.is_zero() {
            continue;
        }
        let h = top_reduce(h, &basis, ord);
        if h.is_zero() {
            continue;
        }
        // Gebauer-Möller update
        let hn = basis.polys.len();
        let hlm = *h.lm();
        let cands: Vec<usize> = (0..hn).filter(|&k| basis.active[k]).collect();
        let lcms: Vec<Monomial> = cands.iter().map(|&k| basis.polys[k].lm().lcm(&hlm)).collect();
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            let coprime = basis.polys[cands[a]].lm().is_coprime(&hlm);
            if coprime {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if lcms[b].divides(&lcms[a]) && (lcms[b] != lcms[a] || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // chain criterion on existing pairs
        let stale: Vec<(usize, usize)> = pair_lcm
            .iter()
            .filter(|(&(i, j), l)| {
                hlm.divides(l)
                    && basis.polys[i].lm().lcm(&hlm) != **l
                    && basis.polys[j].lm().lcm(&hlm) != **l
            })
            .map(|(&k, _)| k)
            .collect();
        if !stale.is_empty() {
            queue.retain(|_, w| !matches!(w, Work::Pair(i, j) if stale.contains(&(*i, *j))));
            for k in stale {
                pair_lcm.remove(&k);
            }
        }
        for (a, &k) in cands.iter().enumerate() {
            if !keep[a] || basis.polys[k].lm().is_coprime(&hlm) {
                continue;
            }
            let d = ord.sel_degree(&lcms[a]);
            queue.insert((d, 1, seq), Work::Pair(k, hn));
            seq += 1;
            pair_lcm.insert((k, hn), lcms[a]);
        }
        for k in 0..hn {
            if basis.active[k] && hlm.divides(basis.polys[k].lm()) {
                basis.active[k] = false;
            }
        }
        basis.masks.push(hlm.support_mask());
        basis.polys.push(h);
        basis.active.push(true);
    }

    // minimalize
    let mut mins: Vec<IPoly<D>> = Vec::new();
    let mut order: Vec<usize> = (0..basis.polys.len()).collect();
    order.sort_by(|&a, &b| ord.cmp(basis.polys[a].lm(), basis.polys[b].lm()));
    for k in order {
        let lm = basis.polys[k].lm();
        if mins.iter().any(|g| g.lm().divides(lm)) {
            continue;
        }
        mins.push(basis.polys[k].clone());
    }
    // tail reduction
    let reduced: Vec<IPoly<D>> = (0..mins.len())
        .map(|k| {
            let others: Vec<&IPoly<D>> =
                mins.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g).collect();
            let (t, _) = full_reduce(mins[k].t.clone(), 1, &others, ord);
            let mut p = IPoly { t };
            p.make_primitive();
            p
        })
        .collect();
    reduced
}

fn to_internal<F: Field>(p: &Polynomial<F>, ord: &CompiledOrder) -> IPoly<F::Integral> {
    let coeffs: Vec<F> = p.terms().iter().map(|(_, c)| c.clone()).collect();
    let ints = F::to_integral(&coeffs);
    let mut t: Vec<(Monomial, F::Integral)> = p
        .terms()
        .iter()
        .zip(ints)
        .map(|((m, _), c)| (ord.to_internal(m), c))
        .collect();
    t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    IPoly { t }
}

fn to_external<F: Field>(p: &IPoly<F::Integral>, ord: &CompiledOrder, monic: bool) -> Polynomial<F> {
    let inv = if monic {
        F::from_integral(p.lc()).inv()
    } else {
        F::one()
    };
    Polynomial::from_terms(
        p.t.iter()
            .map(|(m, c)| (ord.to_external(m), F::from_integral(c).mul_ref(&inv))),
    )
}

/// Reduced Gröbner basis: monic, sorted by increasing leading monomial.
pub fn reduced_gb<F: Field>(gens: &[Polynomial<F>], order: &TermOrder, ring: &Ring) -> Vec<Polynomial<F>> {
    let ord = CompiledOrder::new(order, ring);
    let input = gens.iter().filter(|p| !p.is_zero()).map(|p| to_internal(p, &ord)).collect();
    buchberger(input, &ord)
        .iter()
        .map(|p| to_external(p, &ord, true))
        .collect()
}

/// Normal form of `p` modulo a Gröbner basis `gb` for `order`.
pub fn normal_form<F: Field>(
    p: &Polynomial<F>,
    gb: &[Polynomial<F>],
    order: &TermOrder,
    ring: &Ring,
) -> Polynomial<F> {
    let ord = CompiledOrder::new(order, ring);
    let g: Vec<IPoly<F::Integral>> = gb.iter().map(|q| to_internal(q, &ord)).collect();
    normal_form_compiled(p, &g, &ord)
}

fn normal_form_compiled<F: Field>(
    p: &Polynomial<F>,
    g: &[IPoly<F::Integral>],
    ord: &CompiledOrder,
) -> Polynomial<F> {
    if p.is_zero() {
        return p.clone();
    }
    let coeffs: Vec<F> = p.terms().iter().map(|(_, c)| c.clone()).collect();
    let ints = F::to_integral(&coeffs);
    // p = ints * s for the field scalar s
    let s = coeffs[0].div(&F::from_integral(&ints[0]));
    let ip = to_internal(p, ord);
    let refs: Vec<&IPoly<F::Integral>> = g.iter().collect();
    let (t, mult) = full_reduce(ip.t, 0, &refs, ord);
    let scale = s.div(&F::from_integral(&mult));
    Polynomial::from_terms(
        t.iter()
            .map(|(m, c)| (ord.to_external(m), F::from_integral(c).mul_ref(&scale))),
    )
}

/// Zero test for `p` modulo the basis, cheaper than a full normal form.
pub fn reduces_to_zero<F: Field>(
    p: &Polynomial<F>,
    gb: &[Polynomial<F>],
    order: &TermOrder,
    ring: &Ring,
) -> bool {
    normal_form(p, gb, order, ring).is_zero()
}

/// Generators plus cached reduced Gröbner bases per term order.
pub struct IdealPresentation<F> {
    pub ring: Ring,
    gens: Vec<Polynomial<F>>,
    cache: Mutex<HashMap<TermOrder, Vec<Polynomial<F>>>>,
}

impl<F: Field> Clone for IdealPresentation<F> {
    fn clone(&self) -> Self {
        IdealPresentation {
            ring: self.ring,
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl<F: Field> std::fmt::Debug for IdealPresentation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.display(&self.ring)).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

impl<F: Field> IdealPresentation<F> {
    pub fn new(ring: Ring, gens: Vec<Polynomial<F>>) -> Self {
        IdealPresentation {
            ring,
            gens: gens.into_iter().filter(|p| !p.is_zero()).collect(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Presentation whose generators are already known to be the reduced
    /// Gröbner basis for `order`.
    pub fn from_gb(ring: Ring, gb: Vec<Polynomial<F>>, order: &TermOrder) -> Self {
        let me = Self::new(ring, gb.clone());
        me.cache.lock().unwrap().insert(order.clone(), gb);
        me
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|p| p.is_homogeneous(&self.ring))
    }

    /// A minimal generating set of a homogeneous ideal, chosen greedily by
    /// total degree from the lex Gröbner basis.
    pub fn minimal_generators(&self) -> Vec<Polynomial<F>> {
        let mut cand = self.lex_gb();
        cand.sort_by_key(|p| p.terms()[0].0.degree());
        let mut kept: Vec<Polynomial<F>> = Vec::new();
        for p in cand {
            if kept.is_empty() || !Self::new(self.ring, kept.clone()).contains(&p) {
                kept.push(p);
            }
        }
        kept
    }

    pub fn gb(&self, order: &TermOrder) -> Vec<Polynomial<F>> {
        if let Some(g) = self.cache.lock().unwrap().get(order) {
            return g.clone();
        }
        let g = reduced_gb(&self.gens, order, &self.ring);
        self.cache.lock().unwrap().insert(order.clone(), g.clone());
        g
    }

    pub fn lex_gb(&self) -> Vec<Polynomial<F>> {
        self.gb(&TermOrder::lex(&self.ring))
    }

    pub fn normal_form(&self, p: &Polynomial<F>, order: &TermOrder) -> Polynomial<F> {
        normal_form(p, &self.gb(order), order, &self.ring)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        let o = TermOrder::lex(&self.ring);
        self.normal_form(p, &o).is_zero()
    }

    pub fn contains_ideal(&self, other: &Self) -> bool {
        let o = TermOrder::lex(&self.ring);
        let gb = self.gb(&o);
        let ord = CompiledOrder::new(&o, &self.ring);
        let g: Vec<IPoly<F::Integral>> = gb.iter().map(|q| to_internal(q, &ord)).collect();
        other
            .gens
            .par_iter()
            .all(|p| normal_form_compiled(p, &g, &ord).is_zero())
    }

    pub fn initial_ideal(&self, order: &TermOrder) -> MonomialIdeal {
        let lms = self
            .gb(order)
            .iter()
            .map(|p| p.leading_monomial(order).unwrap())
            .collect();
        MonomialIdeal::new(self.ring, lms)
    }

    /// Number of standard monomials of multidegree `u` for the lex initial ideal.
    pub fn hilbert_value(&self, u: &[u32]) -> u64 {
        self.initial_ideal(&TermOrder::lex(&self.ring)).count_standard(u)
    }

    pub fn equal(&self, other: &Self) -> bool {
        let o = TermOrder::lex(&self.ring);
        self.gb(&o) == other.gb(&o)
    }

    /// `I ∩ K[keep]`, computed with a block order putting the eliminated
    /// variables first.
    pub fn eliminate(&self, keep: &[usize]) -> Self {
        let nv = self.ring.nvars();
        let mut w = vec![0i64; nv];
        for (v, wv) in w.iter_mut().enumerate() {
            if !keep.contains(&v) {
                *wv = 1;
            }
        }
        if w.iter().all(|&a| a == 0) {
            return self.clone();
        }
        let order = TermOrder::weighted(vec![w], (0..nv).collect());
        let gb = self.gb(&order);
        let kept: Vec<Polynomial<F>> = gb
            .into_iter()
            .filter(|p| p.monomials().all(|m| m.support().iter().all(|v| keep.contains(v))))
            .collect();
        Self::new(self.ring, kept)
    }

    /// Moves the generators into `target`, sending variable `v` to `map[v]`.
    pub fn change_ring(&self, target: Ring, map: &[usize]) -> Self {
        Self::new(target, self.gens.iter().map(|p| p.relabel(map)).collect())
    }

    /// `I ∩ J` via `t I + (1 - t) J` and elimination of `t`.
    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "intersecting ideals of different rings");
        let base = self.ring;
        let big = base.with_aux(base.aux + 1);
        // shift existing variables by one to make room for the new t at index 0
        let shift: Vec<usize> = (0..base.nvars()).map(|v| v + 1).collect();
        let t = Polynomial::<F>::var(0);
        let one_minus_t = Polynomial::constant(F::one()).sub(&t);
        let mut gens: Vec<Polynomial<F>> =
            self.gens.iter().map(|p| t.mul(&p.relabel(&shift))).collect();
        gens.extend(other.gens.iter().map(|p| one_minus_t.mul(&p.relabel(&shift))));
        let order = TermOrder::lex(&big);
        let gb = reduced_gb(&gens, &order, &big);
        let unshift: Vec<usize> = (0..big.nvars()).map(|v| v.saturating_sub(1)).collect();
        let kept = gb
            .into_iter()
            .filter(|p| p.monomials().all(|m| m.e[0] == 0))
            .map(|p| p.relabel(&unshift))
            .collect();
        Self::new(base, kept)
    }
}

/// Replaces the generators in each multidegree by a reduced echelon basis
/// of their linear span. Inhomogeneous inputs are passed through.
pub fn linear_basis<F: Field>(gens: &[Polynomial<F>], ring: &Ring) -> Vec<Polynomial<F>> {
    let mut groups: BTreeMap<Vec<u32>, Vec<Polynomial<F>>> = BTreeMap::new();
    let mut other = Vec::new();
    for p in gens.iter().filter(|p| !p.is_zero()) {
        match p.multidegree(ring) {
            Some(u) => groups.entry(u).or_default().push(p.clone()),
            None => other.push(p.clone()),
        }
    }
    let mut out: Vec<Polynomial<F>> = groups
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(echelon)
        .collect();
    out.extend(other);
    out
}

/// Reduced row echelon form of the polynomials' coefficient vectors,
/// columns ordered by decreasing standard lex.
pub fn echelon<F: Field>(polys: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut rows: Vec<Polynomial<F>> = Vec::new();
    for p in polys {
        let mut p = p;
        for r in &rows {
            let lead = r.terms()[0].0;
            let c = p.coeff(&lead);
            if !c.is_zero() {
                p = p.sub(&r.scale(&c));
            }
        }
        if p.is_zero() {
            continue;
        }
        let inv = p.terms()[0].1.inv();
        let p = p.scale(&inv);
        let lead = p.terms()[0].0;
        for r in rows.iter_mut() {
            let c = r.coeff(&lead);
            if !c.is_zero() {
                *r = r.sub(&p.scale(&c));
            }
        }
        let pos = rows.partition_point(|r| r.terms()[0].0 > lead);
        rows.insert(pos, p);
    }
    rows
}

/// Result of checking that a generator set is a Gröbner basis under every
/// order of a family.
#[derive(Debug, Clone)]
pub struct UniversalCheck {
    pub orders_checked: usize,
    /// First order (in family order) under which the check failed, with a
    /// leading monomial of the reduced basis not divisible by any
    /// generator's leading monomial.
    pub counterexample: Option<(TermOrder, Monomial)>,
}

impl UniversalCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks whether `gens` is a Gröbner basis for every order in `orders`.
///
/// The ideal's reduced basis is computed from `basis_gens` (any generating
/// set of the same ideal, typically a smaller one), and the initial ideal
/// is compared with the ideal of leading monomials of `gens`.
pub fn universal_gb_check<F: Field>(
    gens: &[Polynomial<F>],
    basis_gens: &[Polynomial<F>],
    orders: &[TermOrder],
    ring: &Ring,
) -> UniversalCheck {
    let results: Vec<Option<Monomial>> = orders
        .par_iter()
        .map(|o| {
            let lts: Vec<Monomial> = gens.iter().filter_map(|p| p.leading_monomial(o)).collect();
            let gb = reduced_gb(basis_gens, o, ring);
            gb.iter()
                .map(|p| p.leading_monomial(o).unwrap())
                .find(|m| !lts.iter().any(|l| l.divides(m)))
        })
        .collect();
    let counterexample = results
        .into_iter()
        .zip(orders)
        .find_map(|(r, o)| r.map(|m| (o.clone(), m)));
    UniversalCheck {
        orders_checked: orders.len(),
        counterexample,
    }
}

/// The `6^n` lex orders obtained by permuting `{x_i, y_i, z_i}` inside each
/// camera; the block structure `x > y > z` (by position) is kept.
pub fn camera_permutation_orders(ring: &Ring) -> Vec<TermOrder> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let n = ring.n;
    let total = 6usize.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut choice = Vec::with_capacity(n);
            for _ in 0..n {
                choice.push(PERMS[code % 6]);
                code /= 6;
            }
            let mut perm = Vec::with_capacity(ring.nvars());
            for block in 0..3 {
                for (cam, ch) in choice.iter().enumerate() {
                    perm.push(ring.camera_vars(cam)[ch[block]]);
                }
            }
            TermOrder::Lex { perm }
        })
        .collect()
}

/// Random weight orders with positive integer weights and a random lex
/// tie-break.
pub fn random_weight_orders(ring: &Ring, k: usize, rng: &mut impl rand::Rng) -> Vec<TermOrder> {
    use rand::seq::SliceRandom;
    (0..k)
        .map(|_| {
            let w: Vec<i64> = (0..ring.nvars()).map(|_| rng.gen_range(1..=1000)).collect();
            let mut perm: Vec<usize> = (0..ring.nvars()).collect();
            perm.shuffle(rng);
            TermOrder::weighted(vec![w], perm)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, EpsRational, Rational, Scalar};
    use num_traits::One;

    fn parse(ring: &Ring, s: &[&str]) -> Vec<Polynomial<Rational>> {
        s.iter().map(|t| Polynomial::parse(t, ring).unwrap()).collect()
    }

    #[test]
    fn single_binomial_is_its_own_basis() {
        let r = Ring::new(2);
        let g = parse(&r, &["2*x1*y2 - 2*x2*y1"]);
        let gb = reduced_gb(&g, &TermOrder::lex(&r), &r);
        assert_eq!(gb, parse(&r, &["x1*y2 - x2*y1"]));
    }

    #[test]
    fn textbook_example() {
        // twisted cubic in P^3 written in camera variables x1,y1,z1,x2
        let r = Ring::new(2);
        let g = parse(&r, &["x1*z1 - y1^2", "y1*x2 - z1^2", "x1*x2 - y1*z1"]);
        let o = TermOrder::lex(&r);
        let gb = reduced_gb(&g, &o, &r);
        // all three generators plus nothing else form the reduced lex basis
        for p in &g {
            assert!(reduces_to_zero(p, &gb, &o, &r));
        }
        let ideal = IdealPresentation::new(r, g.clone());
        assert!(!ideal.contains(&Polynomial::var(r.x(0))));
        // shuffled input gives the same basis
        let mut rev = g.clone();
        rev.reverse();
        assert_eq!(reduced_gb(&rev, &o, &r), gb);
    }

    #[test]
    fn normal_form_basics() {
        let r = Ring::new(2);
        let o = TermOrder::lex(&r);
        let gb = reduced_gb(&parse(&r, &["x1*y2 - x2*y1"]), &o, &r);
        let one = Polynomial::constant(int(1));
        assert_eq!(normal_form(&one, &gb, &o, &r), one);
        let p = Polynomial::parse("3*x1*y2*z1", &r).unwrap();
        let nf = normal_form(&p, &gb, &o, &r);
        assert_eq!(nf, Polynomial::parse("3*x2*y1*z1", &r).unwrap());
    }

    #[test]
    fn intersection_of_monomial_ideals() {
        let r = Ring::new(2);
        let i = IdealPresentation::new(r, parse(&r, &["x1", "y2"]));
        let j = IdealPresentation::new(r, parse(&r, &["x2"]));
        let k = i.intersect(&j);
        let expect = IdealPresentation::new(r, parse(&r, &["x1*x2", "x2*y2"]));
        assert!(k.equal(&expect));
        assert!(i.intersect(&i).equal(&i));
    }

    #[test]
    fn elimination() {
        let r = Ring::new(2);
        // x1 - y1, x1 - z1  => eliminating x1 leaves y1 - z1
        let i = IdealPresentation::new(r, parse(&r, &["x1 - y1", "x1 - z1"]));
        let keep: Vec<usize> = (0..r.nvars()).filter(|&v| v != r.x(0)).collect();
        let e = i.eliminate(&keep);
        let expect = IdealPresentation::new(r, parse(&r, &["y1 - z1"]));
        assert!(e.equal(&expect));
        let all: Vec<usize> = (0..r.nvars()).collect();
        assert!(i.eliminate(&all).equal(&i));
    }

    #[test]
    fn eps_coefficients() {
        let r = Ring::new(2);
        let e = EpsRational::eps();
        let f = Polynomial::from_terms(vec![
            (Monomial::from_vars(&[r.x(0), r.y(1)]), e.clone()),
            (Monomial::from_vars(&[r.x(1), r.y(0)]), EpsRational::from_i64(-1)),
        ]);
        let g = Polynomial::from_terms(vec![
            (Monomial::from_vars(&[r.x(0)]), EpsRational::one()),
            (Monomial::from_vars(&[r.y(0)]), e.clone()),
        ]);
        let o = TermOrder::lex(&r);
        let gb = reduced_gb(&[f.clone(), g.clone()], &o, &r);
        assert!(reduces_to_zero(&f, &gb, &o, &r));
        assert!(reduces_to_zero(&g, &gb, &o, &r));
        for p in &gb {
            assert!(p.leading(&o).unwrap().1.is_one());
        }
    }

    #[test]
    fn echelon_span() {
        let r = Ring::new(2);
        let g = parse(&r, &["x1*x2 + y1*y2", "2*x1*x2 + 2*y1*y2", "x1*y2"]);
        let e = echelon(g);
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn permutation_orders_count() {
        let r = Ring::new(2);
        let os = camera_permutation_orders(&r);
        assert_eq!(os.len(), 36);
        let distinct: std::collections::HashSet<_> = os.iter().collect();
        assert_eq!(distinct.len(), 36);
    }
}
