//! The Z^n-graded polynomial ring in x_i, y_i, z_i (and optionally w_i),
//! monomials, polynomials and term orders.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactalg::{parse_rational, Field, Rational, Scalar};

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    W,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::W => 'w',
            Letter::X => 'x',
            Letter::Y => 'y',
            Letter::Z => 'z',
        }
    }

    /// Position inside the camera's coordinate vector (x, y, z) or (w, x, y, z).
    pub fn row(self, extended: bool) -> usize {
        let base = match self {
            Letter::W => 0,
            Letter::X => 1,
            Letter::Y => 2,
            Letter::Z => 3,
        };
        if extended {
            base
        } else {
            base - 1
        }
    }
}

/// A ring variable: `camera` is 0-based, printed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarId {
    Cam { camera: usize, letter: Letter },
    /// Auxiliary variable used internally (intersections); printed `t1`, `t2`, ...
    Aux(usize),
}

/// Variable layout: `[aux][w-block if extended][x-block][y-block][z-block]`,
/// each block ordered by camera index. With this layout the derived
/// ordering on exponent arrays is the lex order
/// `t > w1 > .. > wn > x1 > .. > xn > y1 > .. > zn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub n: usize,
    pub extended: bool,
    pub aux: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("ring with {0} variables exceeds the supported maximum")]
    TooManyVariables(usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("bad term order: {0}")]
    Order(String),
}

impl Ring {
    pub fn new(n: usize) -> Self {
        Self::build(n, false, 0)
    }

    pub fn extended(n: usize) -> Self {
        Self::build(n, true, 0)
    }

    pub fn build(n: usize, extended: bool, aux: usize) -> Self {
        let r = Ring { n, extended, aux };
        assert!(
            r.nvars() <= MAX_VARS,
            "{}",
            RingError::TooManyVariables(r.nvars())
        );
        r
    }

    /// Same ring with `k` auxiliary variables in front.
    pub fn with_aux(&self, k: usize) -> Self {
        Self::build(self.n, self.extended, k)
    }

    pub fn without_aux(&self) -> Self {
        Self::build(self.n, self.extended, 0)
    }

    pub fn blocks(&self) -> usize {
        if self.extended {
            4
        } else {
            3
        }
    }

    pub fn nvars(&self) -> usize {
        self.aux + self.blocks() * self.n
    }

    pub fn letters(&self) -> &'static [Letter] {
        if self.extended {
            &[Letter::W, Letter::X, Letter::Y, Letter::Z]
        } else {
            &[Letter::X, Letter::Y, Letter::Z]
        }
    }

    /// Index of variable `letter_{camera+1}`.
    pub fn var(&self, letter: Letter, camera: usize) -> usize {
        assert!(camera < self.n, "camera index out of range");
        assert!(
            self.extended || letter != Letter::W,
            "w-variables need the extended ring"
        );
        self.aux + letter.row(self.extended) * self.n + camera
    }

    pub fn x(&self, camera: usize) -> usize {
        self.var(Letter::X, camera)
    }
    pub fn y(&self, camera: usize) -> usize {
        self.var(Letter::Y, camera)
    }
    pub fn z(&self, camera: usize) -> usize {
        self.var(Letter::Z, camera)
    }
    pub fn w(&self, camera: usize) -> usize {
        self.var(Letter::W, camera)
    }

    pub fn var_id(&self, v: usize) -> VarId {
        if v < self.aux {
            return VarId::Aux(v);
        }
        let k = v - self.aux;
        let letter = self.letters()[k / self.n];
        VarId::Cam {
            camera: k % self.n,
            letter,
        }
    }

    pub fn camera_of(&self, v: usize) -> Option<usize> {
        match self.var_id(v) {
            VarId::Cam { camera, .. } => Some(camera),
            VarId::Aux(_) => None,
        }
    }

    /// Indices of the camera's variables in the order (w,) x, y, z.
    pub fn camera_vars(&self, camera: usize) -> Vec<usize> {
        self.letters().iter().map(|&l| self.var(l, camera)).collect()
    }

    pub fn var_name(&self, v: usize) -> String {
        match self.var_id(v) {
            VarId::Aux(k) => format!("t{}", k + 1),
            VarId::Cam { camera, letter } => format!("{}{}", letter.as_char(), camera + 1),
        }
    }

    pub fn parse_var(&self, s: &str) -> Result<usize, RingError> {
        let err = || RingError::UnknownVariable(s.to_string());
        let mut chars = s.chars();
        let c = chars.next().ok_or_else(err)?;
        let idx: usize = chars.as_str().parse().map_err(|_| err())?;
        if idx == 0 {
            return Err(err());
        }
        let letter = match c {
            't' => {
                return if idx <= self.aux {
                    Ok(idx - 1)
                } else {
                    Err(err())
                }
            }
            'w' if self.extended => Letter::W,
            'x' => Letter::X,
            'y' => Letter::Y,
            'z' => Letter::Z,
            _ => return Err(err()),
        };
        if idx > self.n {
            return Err(err());
        }
        Ok(self.var(letter, idx - 1))
    }

    pub fn multidegree(&self, m: &Monomial) -> Vec<u32> {
        let mut u = vec![0u32; self.n];
        for v in self.aux..self.nvars() {
            u[(v - self.aux) % self.n] += m.e[v] as u32;
        }
        u
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for v in 0..self.nvars() {
            match m.e[v] {
                0 => {}
                1 => parts.push(self.var_name(v)),
                k => parts.push(format!("{}^{}", self.var_name(v), k)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// All monomials of multidegree `u` (camera variables only).
    pub fn monomials_of_degree(&self, u: &[u32]) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        for (cam, &d) in u.iter().enumerate() {
            let vars = self.camera_vars(cam);
            let mut next = Vec::new();
            for base in &out {
                for_each_composition(d, vars.len(), &mut |parts: &[u32]| {
                    let mut m = *base;
                    for (k, &p) in parts.iter().enumerate() {
                        m.e[vars[k]] += p as u8;
                    }
                    next.push(m);
                });
            }
            out = next;
        }
        out
    }
}

/// Calls `f` with every composition of `d` into `k` nonnegative parts.
pub fn for_each_composition(d: u32, k: usize, f: &mut dyn FnMut(&[u32])) {
    fn rec(d: u32, i: usize, parts: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if i + 1 == parts.len() {
            parts[i] = d;
            f(parts);
            return;
        }
        for a in (0..=d).rev() {
            parts[i] = a;
            rec(d - a, i + 1, parts, f);
        }
    }
    let mut parts = vec![0; k];
    rec(d, 0, &mut parts, f);
}

/// Dense exponent vector. The derived `Ord` is lex with variable 0 largest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub e: [u8; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { e: [0; MAX_VARS] }
    }

    pub fn var(v: usize) -> Self {
        let mut m = Self::one();
        m.e[v] = 1;
        m
    }

    pub fn from_vars(vars: &[usize]) -> Self {
        let mut m = Self::one();
        for &v in vars {
            m.e[v] += 1;
        }
        m
    }

    pub fn exp(&self, v: usize) -> u8 {
        self.e[v]
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&a| a as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] += o.e[i];
        }
        r
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    /// `self / o`, assuming `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            debug_assert!(r.e[i] >= o.e[i]);
            r.e[i] -= o.e[i];
        }
        r
    }

    pub fn checked_div(&self, o: &Monomial) -> Option<Monomial> {
        o.divides(self).then(|| self.div(o))
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = r.e[i].max(o.e[i]);
        }
        r
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = r.e[i].min(o.e[i]);
        }
        r
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `v` set iff variable `v` occurs.
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &a) in self.e.iter().enumerate() {
            if a > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn support(&self) -> Vec<usize> {
        (0..MAX_VARS).filter(|&i| self.e[i] > 0).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.e.iter().all(|&a| a <= 1)
    }

    /// Reorders variables: result exponent at `k` is the exponent of `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut r = Monomial::one();
        for (k, &v) in perm.iter().enumerate() {
            r.e[k] = self.e[v];
        }
        r
    }

    /// Inverse of [`Monomial::permuted`].
    pub fn unpermuted(&self, perm: &[usize]) -> Monomial {
        let mut r = Monomial::one();
        for (k, &v) in perm.iter().enumerate() {
            r.e[v] = self.e[k];
        }
        r
    }

    /// Applies a variable substitution `v -> map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Monomial {
        let mut r = Monomial::one();
        for (v, &a) in self.e.iter().enumerate() {
            if a > 0 {
                r.e[map[v]] += a;
            }
        }
        r
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        w.iter()
            .zip(self.e.iter())
            .map(|(&a, &b)| a * b as i64)
            .sum()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.e.iter().rposition(|&a| a > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

/// Term order on the variables of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// `perm[0]` is the largest variable.
    Lex { perm: Vec<usize> },
    /// Compare the integer weight rows in turn; ties broken by lex on `tiebreak`.
    Weighted {
        rows: Vec<Vec<i64>>,
        tiebreak: Vec<usize>,
    },
}

impl TermOrder {
    /// The standard lex order `t > w > x > y > z`, each block by camera index.
    pub fn lex(ring: &Ring) -> Self {
        TermOrder::Lex {
            perm: (0..ring.nvars()).collect(),
        }
    }

    pub fn weighted(rows: Vec<Vec<i64>>, tiebreak: Vec<usize>) -> Self {
        TermOrder::Weighted { rows, tiebreak }
    }

    pub fn perm(&self) -> &[usize] {
        match self {
            TermOrder::Lex { perm } => perm,
            TermOrder::Weighted { tiebreak, .. } => tiebreak,
        }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        match self {
            TermOrder::Lex { .. } => &[],
            TermOrder::Weighted { rows, .. } => rows,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for r in self.rows() {
            match a.dot(r).cmp(&b.dot(r)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        for &v in self.perm() {
            match a.e[v].cmp(&b.e[v]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Parses `lex:x1>x2>...` or `weight:[w1,w2,...];tiebreak:lex:...`.
    ///
    /// A lex spec may list only a prefix of the variables; the rest follow
    /// in their default order. Weights may be rationals and are scaled to
    /// integers.
    pub fn parse(spec: &str, ring: &Ring) -> Result<Self, RingError> {
        let spec = spec.trim();
        if spec.is_empty() || spec == "lex" {
            return Ok(Self::lex(ring));
        }
        if let Some(rest) = spec.strip_prefix("lex:") {
            return Ok(TermOrder::Lex {
                perm: parse_lex_perm(rest, ring)?,
            });
        }
        if let Some(rest) = spec.strip_prefix("weight:") {
            let (w, tie) = match rest.split_once(';') {
                Some((w, t)) => (w, Some(t)),
                None => (rest, None),
            };
            let w = w.trim();
            let inner = w
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| RingError::Order(format!("weights must be bracketed: {w}")))?;
            let vals: Vec<Rational> = inner
                .split(',')
                .map(|s| parse_rational(s).ok_or_else(|| RingError::Order(format!("bad weight {s}"))))
                .collect::<Result<_, _>>()?;
            if vals.len() != ring.nvars() {
                return Err(RingError::Order(format!(
                    "expected {} weights, got {}",
                    ring.nvars(),
                    vals.len()
                )));
            }
            let row = integral_weights(&vals)?;
            let tiebreak = match tie {
                None => (0..ring.nvars()).collect(),
                Some(t) => {
                    let t = t.trim();
                    let t = t
                        .strip_prefix("tiebreak:")
                        .ok_or_else(|| RingError::Order(format!("expected tiebreak: {t}")))?;
                    match t.strip_prefix("lex:") {
                        Some(p) => parse_lex_perm(p, ring)?,
                        None if t == "lex" => (0..ring.nvars()).collect(),
                        None => return Err(RingError::Order(format!("unknown tiebreak {t}"))),
                    }
                }
            };
            return Ok(TermOrder::Weighted {
                rows: vec![row],
                tiebreak,
            });
        }
        Err(RingError::Order(format!("unknown order spec `{spec}`")))
    }

    pub fn to_spec(&self, ring: &Ring) -> String {
        let lex = |p: &[usize]| {
            p.iter()
                .map(|&v| ring.var_name(v))
                .collect::<Vec<_>>()
                .join(">")
        };
        match self {
            TermOrder::Lex { perm } => format!("lex:{}", lex(perm)),
            TermOrder::Weighted { rows, tiebreak } => {
                let mut s = String::new();
                for r in rows {
                    let w: Vec<String> = r.iter().map(|a| a.to_string()).collect();
                    s.push_str(&format!("weight:[{}];", w.join(",")));
                }
                s.push_str(&format!("tiebreak:lex:{}", lex(tiebreak)));
                s
            }
        }
    }
}

fn parse_lex_perm(s: &str, ring: &Ring) -> Result<Vec<usize>, RingError> {
    let mut perm = Vec::new();
    let mut seen = vec![false; ring.nvars()];
    for name in s.split('>') {
        let name = name.trim();
        if name.is_empty() {
            continue;
        }
        let v = ring.parse_var(name)?;
        if seen[v] {
            return Err(RingError::Order(format!("variable {name} listed twice")));
        }
        seen[v] = true;
        perm.push(v);
    }
    perm.extend((0..ring.nvars()).filter(|&v| !seen[v]));
    Ok(perm)
}

fn integral_weights(vals: &[Rational]) -> Result<Vec<i64>, RingError> {
    let ints = Rational::to_integral(vals);
    // to_integral may flip nothing; keep the original sign direction
    let sign_ok = vals
        .iter()
        .zip(&ints)
        .all(|(a, b)| a.is_zero() || (a.is_positive() == b.is_positive()));
    let ints: Vec<_> = if sign_ok {
        ints
    } else {
        ints.into_iter().map(|b| -b).collect()
    };
    ints.iter()
        .map(|b| {
            i64::try_from(b).map_err(|_| RingError::Order("weight too large".to_string()))
        })
        .collect()
}

/// Polynomial with terms sorted by decreasing [`Monomial`] (standard lex).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, C::one())
    }

    pub fn var(v: usize) -> Self {
        Self::monomial(Monomial::var(v))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(v) => *v = v.add_ref(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial { terms }
    }

    /// Takes terms already sorted by strictly decreasing monomial, nonzero.
    pub fn from_sorted(terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|(a, _)| m.cmp(a))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let neg = |c: &C| if negate { c.neg_ref() } else { c.clone() };
        while i < self.terms.len() && j < o.terms.len() {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &o.terms[j];
            match a.cmp(b) {
                Ordering::Greater => {
                    out.push((*a, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*b, neg(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca.sub_ref(cb) } else { ca.add_ref(cb) };
                    if !c.is_zero() {
                        out.push((*a, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (*m, neg(c))));
        Polynomial { terms: out }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let m = a.mul(b);
                let c = ca.mul_ref(cb);
                match map.get_mut(&m) {
                    Some(v) => *v = v.add_ref(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(a, ca)| (a.mul(m), ca.mul_ref(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Applies a variable relabeling (a permutation or an embedding).
    pub fn relabel(&self, map: &[usize]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.relabel(map), c.clone())))
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &TermOrder) -> Option<(&Monomial, &C)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Option<Monomial> {
        self.leading(order).map(|(m, _)| *m)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    /// Common multidegree of all terms, `None` if not homogeneous or zero.
    pub fn multidegree(&self, ring: &Ring) -> Option<Vec<u32>> {
        let mut it = self.terms.iter().map(|(m, _)| ring.multidegree(m));
        let first = it.next()?;
        it.all(|u| u == first).then_some(first)
    }

    pub fn is_homogeneous(&self, ring: &Ring) -> bool {
        self.is_zero() || self.multidegree(ring).is_some()
    }

    pub fn display(&self, ring: &Ring) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = ring.display_monomial(m);
            let mag = if mag.contains(' ') && !mag.starts_with('(') {
                format!("({mag})")
            } else {
                mag
            };
            if m.is_one() {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

impl<C: Field> Polynomial<C> {
    /// Divides by the coefficient of the leading monomial under `order`.
    pub fn monic(&self, order: &TermOrder) -> Self {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }
}

impl Polynomial<Rational> {
    /// Canonical associate: integer coefficients with gcd one and positive
    /// leading coefficient in the standard lex order.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<Rational> = self.terms.iter().map(|(_, c)| c.clone()).collect();
        let mut ints = Rational::to_integral(&coeffs);
        if ints[0].is_negative() {
            for c in ints.iter_mut() {
                *c = -c.clone();
            }
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .zip(ints)
                .map(|((m, _), c)| (*m, Rational::from_integer(c)))
                .collect(),
        }
    }

    /// Parses text like `x1*y2 - 3/2*x2^2*y1 + 1`.
    pub fn parse(s: &str, ring: &Ring) -> Result<Self, RingError> {
        let perr = |m: &str| RingError::Parse(format!("{m} in `{s}`"));
        let mut terms = Vec::new();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(perr("empty input"));
        }
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = Rational::one();
            let r = rest.trim_start();
            let r = if let Some(r2) = r.strip_prefix('-') {
                sign = -sign;
                r2
            } else if let Some(r2) = r.strip_prefix('+') {
                r2
            } else if first {
                r
            } else {
                return Err(perr("expected + or -"));
            };
            first = false;
            let end = r.find(['+', '-']).unwrap_or(r.len());
            let body = r[..end].trim();
            rest = &r[end..];
            if body.is_empty() {
                return Err(perr("empty term"));
            }
            let mut coeff = sign;
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(perr("empty factor"));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor).ok_or_else(|| perr("bad coefficient"))?;
                    continue;
                }
                let (name, pow) = match factor.split_once('^') {
                    Some((a, b)) => (
                        a.trim(),
                        b.trim().parse::<u8>().map_err(|_| perr("bad exponent"))?,
                    ),
                    None => (factor, 1),
                };
                let v = ring.parse_var(name)?;
                mono.e[v] = mono.e[v]
                    .checked_add(pow)
                    .ok_or_else(|| perr("exponent overflow"))?;
            }
            terms.push((mono, coeff));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn multidegrees() {
        let r2 = Ring::new(2);
        let m = Monomial::from_vars(&[r2.x(0), r2.y(1)]);
        assert_eq!(r2.multidegree(&m), vec![1, 1]);
        let r3 = Ring::new(3);
        let m = Monomial::from_vars(&[r3.x(0), r3.x(0), r3.z(0), r3.y(2)]);
        assert_eq!(r3.multidegree(&m), vec![3, 0, 1]);
        let r4 = Ring::new(4);
        let m = Monomial::from_vars(&[r4.y(0), r4.y(1), r4.y(2), r4.y(3)]);
        assert_eq!(r4.multidegree(&m), vec![1, 1, 1, 1]);
    }

    #[test]
    fn standard_lex_examples() {
        let r = Ring::new(2);
        let o = TermOrder::lex(&r);
        let x1x2 = Monomial::from_vars(&[r.x(0), r.x(1)]);
        let y1y2 = Monomial::from_vars(&[r.y(0), r.y(1)]);
        assert_eq!(o.cmp(&x1x2, &y1y2), Ordering::Greater);
        assert_eq!(x1x2.cmp(&y1y2), Ordering::Greater);
        assert_eq!(o.cmp(&x1x2, &x1x2), Ordering::Equal);

        let q = Polynomial::parse("z1*y2 - y1*z2", &r).unwrap();
        let (m, c) = q.leading(&o).unwrap();
        assert_eq!(*m, Monomial::from_vars(&[r.y(0), r.z(1)]));
        assert_eq!(*c, int(-1));
    }

    #[test]
    fn weight_with_tiebreak() {
        let r = Ring::new(2);
        let mut w = vec![0i64; r.nvars()];
        w[r.x(0)] = 1;
        let o = TermOrder::weighted(vec![w], (0..r.nvars()).collect());
        let a = Monomial::from_vars(&[r.x(0), r.x(0)]);
        let b = Monomial::from_vars(&[r.x(0), r.y(0)]);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        let parsed = TermOrder::parse("weight:[1,0,0,0,0,0];tiebreak:lex", &r).unwrap();
        assert_eq!(parsed, o);
        let half = TermOrder::parse("weight:[1/2,0,0,0,0,0]", &r).unwrap();
        assert_eq!(half, o);
    }

    #[test]
    fn parse_print_round_trip() {
        let r = Ring::new(3);
        for s in [
            "x1*y2 - x2*y1",
            "-3/2*x1^2*z3 + y2 - 7",
            "x1*z2*x3 - z1*x2*x3",
        ] {
            let p = Polynomial::parse(s, &r).unwrap();
            let q = Polynomial::parse(&p.display(&r), &r).unwrap();
            assert_eq!(p, q, "{s}");
        }
        assert_eq!(
            Polynomial::parse("x1*y2 - x2*y1", &r).unwrap().display(&r),
            "x1*y2 - x2*y1"
        );
        assert!(Polynomial::parse("w1", &r).is_err());
        assert!(Polynomial::parse("x4", &r).is_err());
        let e = Ring::extended(2);
        assert!(Polynomial::parse("w1*x2", &e).is_ok());
    }

    #[test]
    fn lex_spec_parsing() {
        let r = Ring::new(2);
        let o = TermOrder::parse("lex:y1>x1", &r).unwrap();
        assert_eq!(o.perm()[..2], [r.y(0), r.x(0)]);
        assert_eq!(o.perm().len(), 6);
        assert!(TermOrder::parse("lex:x1>x1", &r).is_err());
        assert!(TermOrder::parse("grevlex", &r).is_err());
        assert_eq!(TermOrder::parse(&o.to_spec(&r), &r).unwrap(), o);
    }

    #[test]
    fn canonical_sign() {
        let r = Ring::new(2);
        let p = Polynomial::parse("-2*x1*y2 + 4*x2*y1", &r).unwrap();
        assert_eq!(p.canonical().display(&r), "x1*y2 - 2*x2*y1");
        let half = Polynomial::parse("1/2*x1", &r).unwrap().canonical();
        assert_eq!(half.coeff(&Monomial::var(r.x(0))), rat(1, 1));
    }

    fn mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u8..3, n).prop_map(|v| {
            let mut m = Monomial::one();
            m.e[..v.len()].copy_from_slice(&v);
            m
        })
    }

    fn order(n: usize) -> impl Strategy<Value = TermOrder> {
        (
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(0i64..4, n),
            any::<bool>(),
        )
            .prop_map(|(perm, w, weighted)| {
                if weighted {
                    TermOrder::weighted(vec![w], perm)
                } else {
                    TermOrder::Lex { perm }
                }
            })
    }

    proptest! {
        #[test]
        fn order_is_multiplicative(o in order(9), a in mono(9), b in mono(9), c in mono(9)) {
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
            prop_assert_ne!(o.cmp(&a, &Monomial::one()), Ordering::Less);
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
        }

        #[test]
        fn ring_axioms(a in proptest::collection::vec((mono(6), -3i64..=3), 0..4),
                       b in proptest::collection::vec((mono(6), -3i64..=3), 0..4),
                       c in proptest::collection::vec((mono(6), -3i64..=3), 0..4)) {
            let mk = |v: &Vec<(Monomial, i64)>| Polynomial::from_terms(v.iter().map(|(m, k)| (*m, int(*k))));
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn multidegree_adds(a in mono(6), b in mono(6)) {
            let r = Ring::new(2);
            let pa = Polynomial::<Rational>::monomial(a);
            let pb = Polynomial::<Rational>::monomial(b);
            let u: Vec<u32> = r.multidegree(&a).iter().zip(r.multidegree(&b)).map(|(x, y)| x + y).collect();
            prop_assert_eq!(pa.mul(&pb).multidegree(&r), Some(u));
        }
    }
}
