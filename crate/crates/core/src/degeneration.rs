//! The collinear camera family over `Q(eps)` and its two-step flat
//! degeneration to the binomial ideal `L_n` and the monomial ideal `N_n`.

use serde::Serialize;

use crate::cameras::{collinear_cameras, collinear_cameras_at};
use crate::exactalg::{eps::eps_diff, EpsRational, Field, Matrix, Rational, Scalar};
use crate::groebner::{linear_basis, IdealPresentation};
use crate::monomial::{gens_n, hilbert_closed_form, MonomialIdeal};
use crate::polyring::{Monomial, Polynomial, Ring, TermOrder};

/// Polynomial over `Q(eps)` with the minimal valuation of its coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ValuedPolynomial {
    pub poly: Polynomial<EpsRational>,
    pub minval: i64,
}

impl ValuedPolynomial {
    pub fn new(poly: Polynomial<EpsRational>) -> Self {
        let minval = poly
            .terms()
            .iter()
            .filter_map(|(_, c)| c.val())
            .min()
            .expect("zero polynomial has no valuation");
        ValuedPolynomial { poly, minval }
    }

    /// `eps^(-minval) * p` evaluated at `eps = 0`.
    pub fn special_fiber(&self) -> Polynomial<Rational> {
        Polynomial::from_terms(self.poly.terms().iter().map(|(m, c)| {
            let r = c.mul_eps_pow(-self.minval).eval_at_zero().unwrap();
            (*m, r)
        }))
    }
}

impl std::fmt::Debug for ValuedPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} (val {})", self.poly, self.minval)
    }
}

fn eps_poly(terms: Vec<(Vec<usize>, EpsRational)>) -> Polynomial<EpsRational> {
    Polynomial::from_terms(terms.into_iter().map(|(v, c)| (Monomial::from_vars(&v), c)))
}

/// The quadrics `x_i y_j - x_j y_i` and the three trinomial cubics for
/// each `i < j < k`.
pub fn gens_g(n: usize) -> Vec<ValuedPolynomial> {
    assert!(n >= 2, "need at least two cameras");
    let r = Ring::new(n);
    let one = EpsRational::from_i64;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(eps_poly(vec![
                (vec![r.x(i), r.y(j)], one(1)),
                (vec![r.x(j), r.y(i)], one(-1)),
            ]));
        }
    }
    // exponent n - i for the 1-based camera i, i.e. n - 1 - i here
    let e = |i: usize| n - 1 - i;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let cki = eps_diff(e(k), e(i));
                let cjk = eps_diff(e(j), e(k));
                let cij = eps_diff(e(i), e(j));
                let (x, y, z) = (|c| r.x(c), |c| r.y(c), |c| r.z(c));
                out.push(eps_poly(vec![
                    (vec![x(i), z(j), x(k)], cki.clone()),
                    (vec![z(i), x(j), x(k)], cjk.clone()),
                    (vec![x(i), x(j), z(k)], cij.clone()),
                ]));
                out.push(eps_poly(vec![
                    (vec![y(i), z(j), y(k)], cki.clone()),
                    (vec![z(i), y(j), y(k)], cjk.clone()),
                    (vec![y(i), y(j), z(k)], cij.clone()),
                ]));
                out.push(eps_poly(vec![
                    (vec![y(i), z(j), x(k)], cki),
                    (vec![z(i), y(j), x(k)], cjk),
                    (vec![y(i), x(j), z(k)], cij),
                ]));
            }
        }
    }
    out.into_iter().map(ValuedPolynomial::new).collect()
}

fn q_poly(terms: Vec<(Vec<usize>, i64)>) -> Polynomial<Rational> {
    Polynomial::from_terms(
        terms
            .into_iter()
            .map(|(v, c)| (Monomial::from_vars(&v), Rational::from_integer(c.into()))),
    )
}

/// The binomial generators of `L_n`.
pub fn gens_l(n: usize) -> IdealPresentation<Rational> {
    assert!(n >= 2, "need at least two cameras");
    let r = Ring::new(n);
    let mut g = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            g.push(q_poly(vec![(vec![r.x(i), r.y(j)], 1), (vec![r.x(j), r.y(i)], -1)]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (|c| r.x(c), |c| r.y(c), |c| r.z(c));
                g.push(q_poly(vec![(vec![x(i), z(j), x(k)], 1), (vec![z(i), x(j), x(k)], -1)]));
                g.push(q_poly(vec![(vec![y(i), z(j), y(k)], 1), (vec![z(i), y(j), y(k)], -1)]));
                g.push(q_poly(vec![(vec![y(i), z(j), x(k)], 1), (vec![z(i), y(j), x(k)], -1)]));
            }
        }
    }
    IdealPresentation::new(r, g)
}

/// Generator-wise special fiber. The result is contained in the true
/// special fiber; equality is certified separately by comparing Hilbert
/// functions.
pub fn special_fiber(gens: &[ValuedPolynomial], ring: Ring) -> IdealPresentation<Rational> {
    IdealPresentation::new(ring, gens.iter().map(ValuedPolynomial::special_fiber).collect())
}

/// The prime `I_t` (`3 <= t <= n + 1`, 1-based) of the decomposition of `L_n`.
pub fn component_i(n: usize, t: usize) -> IdealPresentation<Rational> {
    assert!((3..=n + 1).contains(&t), "t out of range");
    let r = Ring::new(n);
    let mut g = Vec::new();
    for i in t - 1..n {
        g.push(Polynomial::var(r.x(i)));
        g.push(Polynomial::var(r.y(i)));
    }
    // 1-based i < j < t  ->  0-based j < t - 1
    for i in 0..t - 1 {
        for j in i + 1..t - 1 {
            g.push(q_poly(vec![(vec![r.x(i), r.y(j)], 1), (vec![r.x(j), r.y(i)], -1)]));
        }
    }
    // 1-based i < j < t - 1
    for i in 0..t - 2 {
        for j in i + 1..t - 2 {
            g.push(q_poly(vec![(vec![r.x(i), r.z(j)], 1), (vec![r.x(j), r.z(i)], -1)]));
            g.push(q_poly(vec![(vec![r.y(i), r.z(j)], 1), (vec![r.y(j), r.z(i)], -1)]));
        }
    }
    IdealPresentation::new(r, g)
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct CheckResult {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    fn ok() -> Self {
        CheckResult {
            passed: true,
            witness: None,
        }
    }

    fn fail(w: String) -> Self {
        CheckResult {
            passed: false,
            witness: Some(w),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegenerationReport {
    pub n: usize,
    /// `<G_n>` equals the ideal of maximal minors of the collinear family.
    pub generated_by_g: CheckResult,
    /// The generator-wise special fiber of `G_n` equals `L_n`, and its lex
    /// initial ideal has the multiview Hilbert function.
    pub special_fiber: CheckResult,
    /// `in_lex(L_n) = N_n`.
    pub initial_ideal: CheckResult,
    /// `N_n` has the multiview Hilbert function on the box `<= (3,...,3)`.
    pub hilbert: CheckResult,
    /// `N_n` and `L_n` are the intersections of `in_lex(I_t)` and `I_t`.
    pub decomposition: CheckResult,
}

impl DegenerationReport {
    pub fn passed(&self) -> bool {
        [
            &self.generated_by_g,
            &self.special_fiber,
            &self.initial_ideal,
            &self.hilbert,
            &self.decomposition,
        ]
        .iter()
        .all(|c| c.passed)
    }
}

/// Whether `p` lies in the linear span of `basis` (all of one multidegree).
fn in_span<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> bool {
    let mut monos: Vec<Monomial> = basis.iter().flat_map(|q| q.monomials().copied()).collect();
    monos.extend(p.monomials().copied());
    monos.sort();
    monos.dedup();
    let row = |q: &Polynomial<F>| monos.iter().map(|m| q.coeff(m)).collect::<Vec<F>>();
    let a = Matrix::from_rows(basis.iter().map(row).collect());
    let mut rows = a.to_rows();
    rows.push(row(p));
    a.rank() == Matrix::from_rows(rows).rank()
}

/// Checks (a): `G_n` lies in the span of the minors of the same
/// multidegree, and every minor (after echelon reduction) reduces to zero
/// modulo a Gröbner basis of `<G_n>`.
pub fn check_generated_by_g(n: usize) -> CheckResult {
    let ring = Ring::new(n);
    let cams = collinear_cameras(n);
    let minors = linear_basis(&cams.multiview_generators(), &ring);
    let g: Vec<Polynomial<EpsRational>> = gens_g(n).into_iter().map(|v| v.poly).collect();
    for p in &g {
        let u = p.multidegree(&ring);
        let same: Vec<Polynomial<EpsRational>> = minors
            .iter()
            .filter(|q| q.multidegree(&ring) == u)
            .cloned()
            .collect();
        if !in_span(p, &same) {
            return CheckResult::fail(format!("generator {} is not a combination of minors", p.display(&ring)));
        }
    }
    let gi = IdealPresentation::new(ring, g);
    let mi = IdealPresentation::new(ring, minors);
    if gi.contains_ideal(&mi) {
        CheckResult::ok()
    } else {
        let bad = mi.gens().iter().find(|p| !gi.contains(p)).unwrap();
        CheckResult::fail(format!("minor {} not in <G_n>", bad.display(&ring)))
    }
}

/// Runs the five degeneration checks for `n` cameras.
pub fn verify_degeneration(n: usize) -> DegenerationReport {
    let ring = Ring::new(n);
    let lex = TermOrder::lex(&ring);
    let (generated_by_g, (special, initial_ideal, hilbert, decomposition)) = rayon::join(
        || check_generated_by_g(n),
        || {
            let l = gens_l(n);
            let fiber = special_fiber(&gens_g(n), ring);
            let special = if !fiber.equal(&l) {
                CheckResult::fail("generator-wise special fiber differs from L_n".into())
            } else {
                match fiber.initial_ideal(&lex).hilbert_mismatch(3) {
                    None => CheckResult::ok(),
                    Some(u) => CheckResult::fail(format!("Hilbert function of the fiber differs at {u:?}")),
                }
            };
            let nn = gens_n(n);
            let init = l.initial_ideal(&lex);
            let initial_ideal = if init == nn {
                CheckResult::ok()
            } else {
                CheckResult::fail(format!("in_lex(L_n) = {init}"))
            };
            let hilbert = match nn.hilbert_mismatch(3) {
                None => CheckResult::ok(),
                Some(u) => CheckResult::fail(format!(
                    "count {} != closed form {} at {u:?}",
                    nn.count_standard(&u),
                    hilbert_closed_form(&u)
                )),
            };
            (special, initial_ideal, hilbert, check_decomposition(n))
        },
    );
    DegenerationReport {
        n,
        generated_by_g,
        special_fiber: special,
        initial_ideal,
        hilbert,
        decomposition,
    }
}

/// Checks both intersection identities for the components `I_t`.
pub fn check_decomposition(n: usize) -> CheckResult {
    let ring = Ring::new(n);
    let lex = TermOrder::lex(&ring);
    let comps: Vec<IdealPresentation<Rational>> = (3..=n + 1).map(|t| component_i(n, t)).collect();
    let mut mono: Option<MonomialIdeal> = None;
    for c in &comps {
        let ini = c.initial_ideal(&lex);
        mono = Some(match mono {
            None => ini,
            Some(m) => m.intersect(&ini),
        });
    }
    let mono = mono.unwrap();
    if mono != gens_n(n) {
        return CheckResult::fail(format!("intersection of initial ideals is {mono}"));
    }
    let mut acc = comps[0].clone();
    for c in &comps[1..] {
        acc = acc.intersect(c);
    }
    if acc.equal(&gens_l(n)) {
        CheckResult::ok()
    } else {
        CheckResult::fail("intersection of the I_t differs from L_n".into())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecializationReport {
    pub n: usize,
    pub eps: String,
    pub initial_ideal: Vec<String>,
    pub equals_n: bool,
    pub equals_m: bool,
}

/// Lex initial ideal of the minors ideal with `eps` specialized to `r`.
/// Exploratory: nothing is asserted about the outcome.
pub fn explore_specialization(n: usize, r: &Rational) -> Option<SpecializationReport> {
    let cams = collinear_cameras_at(n, r).ok()?;
    if !cams.focal_points_distinct() {
        return None;
    }
    let ideal = cams.minors_ideal();
    let ini = ideal.initial_ideal(&TermOrder::lex(&ideal.ring));
    Some(SpecializationReport {
        n,
        eps: r.to_string(),
        initial_ideal: ini.to_json().generators,
        equals_n: ini == gens_n(n),
        equals_m: ini == crate::monomial::gens_m(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn counts_and_coefficient_sums() {
        assert_eq!(gens_g(2).len(), 1);
        let g3 = gens_g(3);
        assert_eq!(g3.len(), 6);
        for v in &g3[3..] {
            let s = v
                .poly
                .terms()
                .iter()
                .fold(EpsRational::zero(), |a, (_, c)| a.add_ref(c));
            assert!(s.is_zero());
        }
        assert_eq!(gens_l(3).gens().len(), 6);
    }

    #[test]
    fn fiber_of_simple_polynomials() {
        let r = Ring::new(2);
        let q = eps_poly(vec![
            (vec![r.x(0), r.y(1)], EpsRational::eps()),
            (vec![r.x(1), r.y(0)], EpsRational::eps_pow(2).neg_ref()),
        ]);
        let f = ValuedPolynomial::new(q).special_fiber();
        assert_eq!(f, Polynomial::parse("x1*y2", &r).unwrap());
        let plain = gens_g(2).remove(0);
        assert_eq!(plain.special_fiber(), Polynomial::parse("x1*y2 - x2*y1", &r).unwrap());
    }

    #[test]
    fn leading_monomials_of_l_are_n() {
        for n in 2..=4 {
            let r = Ring::new(n);
            let lex = TermOrder::lex(&r);
            let lms = gens_l(n).gens().iter().map(|p| p.leading_monomial(&lex).unwrap()).collect();
            assert_eq!(MonomialIdeal::new(r, lms), gens_n(n));
        }
    }

    #[test]
    fn two_cameras() {
        let rep = verify_degeneration(2);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(gens_l(2).gens().len(), 1);
        assert_eq!(gens_n(2).len(), 1);
    }

    #[test]
    fn three_cameras() {
        let rep = verify_degeneration(3);
        assert!(rep.passed(), "{rep:?}");
    }
}
