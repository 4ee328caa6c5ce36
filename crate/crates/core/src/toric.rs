//! Toric cameras: the Cayley matrix, its toric ideal, the Gröbner fan of
//! that ideal and the mixed subdivisions read off from initial ideals.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::cameras::toric_cameras;
use crate::cone::{Cone, IVec};
use crate::exactalg::{Matrix, Rational, Scalar};
use crate::groebner::{reduced_gb, IdealPresentation};
use crate::monomial::{CellShape, FacetComplex, MonomialError, MonomialIdeal};
use crate::polyring::{Letter, Monomial, Polynomial, Ring, TermOrder};
use crate::symmetry::{symmetry_classes, SymmetryGroup};

#[derive(Debug, Error)]
pub enum ToricError {
    #[error("Cayley matrices are only built for 3 or 4 cameras, got {0}")]
    Cameras(usize),
    #[error("the kernel basis from row reduction is not integral")]
    NonIntegralKernel,
    #[error("fan traversal exceeded the node cap of {0}")]
    NodeCap(usize),
    #[error("Gröbner cone without interior for {0}")]
    DegenerateCone(String),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// `[A_1^T ... A_n^T]` over the block indicator rows; columns are labeled by
/// ring variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyMatrix {
    pub ring: Ring,
    pub rows: Vec<Vec<i64>>,
    pub labels: Vec<usize>,
}

impl CayleyMatrix {
    pub fn to_matrix(&self) -> Matrix<Rational> {
        Matrix::from_rows(
            self.rows
                .iter()
                .map(|r| r.iter().map(|&a| Rational::from_i64(a)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.to_matrix().rank()
    }
}

pub fn cayley_matrix(n: usize) -> Result<CayleyMatrix, ToricError> {
    if !(3..=4).contains(&n) {
        return Err(ToricError::Cameras(n));
    }
    let ring = Ring::new(n);
    let cams = toric_cameras(n);
    let letters = [Letter::X, Letter::Y, Letter::Z];
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        let a = cams.camera(i);
        for (r, &l) in letters.iter().enumerate() {
            let mut col: Vec<i64> = (0..4)
                .map(|k| {
                    let e = &a[(r, k)];
                    i64::try_from(e.to_integer()).expect("toric camera entries are small integers")
                })
                .collect();
            col.extend((0..n).map(|b| i64::from(b == i)));
            cols.push(col);
            labels.push(ring.var(l, i));
        }
    }
    let rows = (0..4 + n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    Ok(CayleyMatrix { ring, rows, labels })
}

fn binomial(ring: &Ring, labels: &[usize], v: &[Rational]) -> Option<Polynomial<Rational>> {
    let mut plus = [0u8; 32];
    let mut minus = [0u8; 32];
    for (k, c) in v.iter().enumerate() {
        if !c.is_integer() {
            return None;
        }
        let c = i64::try_from(c.to_integer()).ok()?;
        if c > 0 {
            plus[labels[k]] = c as u8;
        } else {
            minus[labels[k]] = (-c) as u8;
        }
    }
    let _ = ring;
    Some(Polynomial::from_terms([
        (Monomial { e: plus }, Rational::from_i64(1)),
        (Monomial { e: minus }, Rational::from_i64(-1)),
    ]))
}

/// `I : v^infinity` for a homogeneous ideal, via a Gröbner basis in which
/// `v` is smallest after total degree.
pub fn saturate_by_var(ideal: &IdealPresentation<Rational>, v: usize) -> IdealPresentation<Rational> {
    let ring = ideal.ring;
    let nv = ring.nvars();
    let mut last = vec![0i64; nv];
    last[v] = -1;
    let order = TermOrder::weighted(vec![vec![1; nv], last], (0..nv).collect());
    let gb = reduced_gb(ideal.gens(), &order, &ring);
    let gens = gb
        .into_iter()
        .map(|p| {
            let k = p.monomials().map(|m| m.e[v]).min().unwrap_or(0);
            let mut q = Monomial::one();
            q.e[v] = k;
            Polynomial::from_terms(p.terms().iter().map(|(m, c)| (m.div(&q), c.clone())))
        })
        .collect();
    IdealPresentation::new(ring, gens)
}

/// The toric ideal of a Cayley matrix: binomials of a kernel basis,
/// saturated by each variable in turn. Returns minimal generators.
pub fn toric_ideal(m: &CayleyMatrix) -> Result<IdealPresentation<Rational>, ToricError> {
    let ring = m.ring;
    let kernel = m.to_matrix().kernel();
    let mut gens = Vec::new();
    for v in &kernel {
        gens.push(binomial(&ring, &m.labels, v).ok_or(ToricError::NonIntegralKernel)?);
    }
    let mut ideal = IdealPresentation::new(ring, gens);
    if ideal.gens().is_empty() {
        return Ok(ideal);
    }
    for &v in &m.labels {
        ideal = saturate_by_var(&ideal, v);
    }
    Ok(IdealPresentation::new(ring, ideal.minimal_generators()))
}

/// A vertex of the Gröbner fan: a reduced Gröbner basis, its initial ideal
/// and a positive weight in the interior of its cone.
#[derive(Debug, Clone)]
pub struct GFanNode {
    pub gb: Vec<Polynomial<Rational>>,
    pub initial: MonomialIdeal,
    pub weight: Vec<i64>,
}

impl GFanNode {
    pub fn order(&self) -> TermOrder {
        TermOrder::weighted(vec![self.weight.clone()], (0..self.weight.len()).collect())
    }
}

/// Coordinates modulo the homogeneity space: exponent differences live in
/// the span of the starting inequalities, which is read off on pivot columns.
struct Coords {
    nv: usize,
    pivots: Vec<usize>,
}

impl Coords {
    fn restrict(&self, v: &[i64]) -> IVec {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    fn lift(&self, u: &[i64]) -> Vec<i64> {
        let mut w = vec![0; self.nv];
        for (&p, &x) in self.pivots.iter().zip(u) {
            w[p] = x;
        }
        w
    }

    /// Lift and shift by a multiple of `(1, ..., 1)` to make all entries positive.
    fn lift_positive(&self, u: &[i64]) -> Vec<i64> {
        let mut w = self.lift(u);
        let shift = 1 - w.iter().copied().min().unwrap_or(0);
        w.iter_mut().for_each(|a| *a += shift);
        w
    }
}

fn differences(gb: &[Polynomial<Rational>], order: &TermOrder) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for p in gb {
        let lead = p.leading_monomial(order).unwrap();
        for m in p.monomials().filter(|m| **m != lead) {
            out.push((0..32).map(|k| lead.e[k] as i64 - m.e[k] as i64).collect());
        }
    }
    out
}

fn make_node(
    ring: &Ring,
    coords: &Coords,
    gb: Vec<Polynomial<Rational>>,
    order: &TermOrder,
) -> Result<(GFanNode, Cone), ToricError> {
    let ineqs: Vec<IVec> = differences(&gb, order).iter().map(|d| coords.restrict(d)).collect();
    let cone = Cone::from_inequalities(coords.pivots.len(), ineqs);
    let leads: Vec<Monomial> = gb.iter().map(|p| p.leading_monomial(order).unwrap()).collect();
    let initial = MonomialIdeal::new(*ring, leads);
    if !cone.is_full_dimensional() {
        return Err(ToricError::DegenerateCone(initial.to_string()));
    }
    let weight = coords.lift_positive(&cone.relative_interior_point());
    Ok((GFanNode { gb, initial, weight }, cone))
}

/// All initial monomial ideals of a homogeneous ideal by breadth-first
/// flipping across the facets of Gröbner cones. Output is sorted by
/// initial ideal.
pub fn gfan_traverse(ideal: &IdealPresentation<Rational>, cap: usize) -> Result<Vec<GFanNode>, ToricError> {
    let ring = ideal.ring;
    let nv = ring.nvars();
    let lex = TermOrder::lex(&ring);
    let start = ideal.gb(&lex);
    let diffs = differences(&start, &lex);
    let coords = if diffs.is_empty() {
        Coords { nv, pivots: vec![] }
    } else {
        let m = Matrix::from_rows(
            diffs
                .iter()
                .map(|d| d[..nv].iter().map(|&a| Rational::from_i64(a)).collect())
                .collect(),
        );
        Coords {
            nv,
            pivots: m.rref().1,
        }
    };
    let mut nodes: Vec<GFanNode> = Vec::new();
    let mut seen: BTreeMap<Vec<Monomial>, usize> = BTreeMap::new();
    let mut queue: VecDeque<(usize, Cone)> = VecDeque::new();
    let (first, cone) = make_node(&ring, &coords, start, &lex)?;
    seen.insert(first.initial.gens().to_vec(), 0);
    nodes.push(first);
    queue.push_back((0, cone));
    while let Some((k, cone)) = queue.pop_front() {
        for facet in cone.facets() {
            let omega = coords.lift_positive(&facet.point);
            let v = coords.lift(&facet.normal);
            let order = TermOrder::weighted(
                vec![omega, v.iter().map(|a| -a).collect(), nodes[k].weight.clone()],
                (0..nv).collect(),
            );
            let gb = reduced_gb(&nodes[k].gb, &order, &ring);
            let leads: Vec<Monomial> = gb.iter().map(|p| p.leading_monomial(&order).unwrap()).collect();
            let key = MonomialIdeal::new(ring, leads).gens().to_vec();
            if seen.contains_key(&key) {
                continue;
            }
            if nodes.len() >= cap {
                return Err(ToricError::NodeCap(cap));
            }
            let (node, cone) = make_node(&ring, &coords, gb, &order)?;
            seen.insert(key, nodes.len());
            nodes.push(node);
            queue.push_back((nodes.len() - 1, cone));
        }
    }
    nodes.sort_by(|a, b| a.initial.gens().cmp(b.initial.gens()));
    Ok(nodes)
}

/// Default node cap, overridable through `MVGB_NODE_CAP`.
pub fn node_cap() -> usize {
    std::env::var("MVGB_NODE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(100_000)
}

/// The mixed subdivision (as a facet complex) of a squarefree initial ideal.
pub fn mixed_subdivision(initial: &MonomialIdeal) -> Result<FacetComplex, ToricError> {
    Ok(initial.stanley_reisner()?)
}

pub const Y1: &str = "y1*z2, z1*y3, x1*z4, z2*x3, y2*x4, x3*y4, x1*y2*x3, z1*y2*x3, \
                      x1*z2*x4, z1*x3*z4, z2*y3*x4, z2*y3*z4";
pub const Y2: &str = "z1*y2, x1*z3, x1*z4, x2*z3, y2*x4, y3*x4, y1*z2*x3*y4, x1*y2*x3, \
                      x1*z2*x3, x1*z2*x4, x4*z2*y1, y1*z3*x4, y1*z3*y4, y2*x3*y4, y2*z3*y4";
pub const Y3: &str = "z1*y2, z1*y3, x1*z4, x2*z3, x2*z4, y3*x4, x1*y2*z3, y1*x2*y3, \
                      x1*y2*x4, x1*z2*x4, x1*z3*x4, y1*z3*x4, y2*z3*x4, y2*z3*y4";

pub fn named_ideal(text: &str) -> MonomialIdeal {
    MonomialIdeal::parse(text, Ring::new(4)).expect("built-in ideal parses")
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub representative: Vec<String>,
    pub size: usize,
    pub generators: usize,
    pub max_degree: u32,
    pub cubes: usize,
    pub prisms: usize,
    pub other_cells: usize,
    /// Sorted `(shape, degree)` pairs of the dual graph.
    pub dual_degrees: Vec<(CellShape, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ToricReport {
    pub n: usize,
    pub cayley_rank: usize,
    pub toric_generators: Vec<String>,
    pub initial_ideals: usize,
    pub classes: Vec<ClassInfo>,
    pub all_squarefree: bool,
    /// Every subdivision has the expected numbers of cubes and prisms.
    pub cells_ok: bool,
    pub expected_cubes: usize,
    pub expected_prisms: usize,
}

/// Enumerates the Gröbner fan of the toric ideal for `n` cameras and
/// classifies the initial ideals up to symmetry.
pub fn enumerate(n: usize, cap: usize) -> Result<(ToricReport, Vec<GFanNode>), ToricError> {
    let m = cayley_matrix(n)?;
    let ideal = toric_ideal(&m)?;
    let nodes = gfan_traverse(&ideal, cap)?;
    let group = SymmetryGroup::new(n);
    let initials: Vec<MonomialIdeal> = nodes.iter().map(|n| n.initial.clone()).collect();
    let all_squarefree = initials.iter().all(MonomialIdeal::is_squarefree);
    let (expected_cubes, expected_prisms) = (binom3(n), n * (n - 1));
    let mut cells_ok = true;
    let mut cells: Vec<(usize, usize, usize)> = Vec::with_capacity(initials.len());
    for i in &initials {
        let fc = mixed_subdivision(i)?;
        let c = (
            fc.count_shape(CellShape::Cube),
            fc.count_shape(CellShape::Prism),
            fc.count_shape(CellShape::Other),
        );
        cells_ok &= c == (expected_cubes, expected_prisms, 0);
        cells.push(c);
    }
    let classes = symmetry_classes(&initials, &group)
        .into_iter()
        .map(|(rep, members)| {
            let fc = mixed_subdivision(&rep).expect("squarefree");
            let mut dual_degrees = fc.dual_degree_sequence();
            dual_degrees.sort();
            let c = cells[members[0]];
            ClassInfo {
                representative: rep.to_json().generators,
                size: members.len(),
                generators: rep.len(),
                max_degree: rep.max_degree(),
                cubes: c.0,
                prisms: c.1,
                other_cells: c.2,
                dual_degrees,
            }
        })
        .collect();
    let report = ToricReport {
        n,
        cayley_rank: m.rank(),
        toric_generators: ideal.gens().iter().map(|p| p.display(&ideal.ring)).collect(),
        initial_ideals: nodes.len(),
        classes,
        all_squarefree,
        cells_ok,
        expected_cubes,
        expected_prisms,
    };
    Ok((report, nodes))
}

fn binom3(n: usize) -> usize {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

/// Checks on the named ideals against an enumeration for four cameras.
#[derive(Debug, Clone, Serialize)]
pub struct NamedChecks {
    pub min_generators: usize,
    pub max_generators: usize,
    pub twelve_generator_classes: usize,
    pub y1_matches_twelve_class: bool,
    pub quartic_classes: usize,
    pub fifteen_generator_classes: usize,
    pub quartic_classes_are_fifteen_classes: bool,
    pub y2_matches_quartic_class: bool,
    pub y3_among_initial_ideals: bool,
    pub y3_orbit_meets_initial_ideals: bool,
}

impl NamedChecks {
    pub fn passed(&self) -> bool {
        self.min_generators == 12
            && self.max_generators == 15
            && self.twelve_generator_classes == 1
            && self.y1_matches_twelve_class
            && self.quartic_classes == 2
            && self.fifteen_generator_classes == 2
            && self.quartic_classes_are_fifteen_classes
            && self.y2_matches_quartic_class
            && !self.y3_among_initial_ideals
    }
}

pub fn named_checks(report: &ToricReport, nodes: &[GFanNode]) -> NamedChecks {
    let group = SymmetryGroup::new(4);
    let ring = Ring::new(4);
    let rep = |c: &ClassInfo| MonomialIdeal::parse(&c.representative.join(","), ring).unwrap();
    let y1 = group.canonical(&named_ideal(Y1));
    let y2 = group.canonical(&named_ideal(Y2));
    let y3 = named_ideal(Y3);
    let y3c = group.canonical(&y3);
    let counts: Vec<usize> = report.classes.iter().map(|c| c.generators).collect();
    let twelve: Vec<&ClassInfo> = report.classes.iter().filter(|c| c.generators == 12).collect();
    let quartic: Vec<&ClassInfo> = report.classes.iter().filter(|c| c.max_degree >= 4).collect();
    let fifteen: Vec<&ClassInfo> = report.classes.iter().filter(|c| c.generators == 15).collect();
    NamedChecks {
        min_generators: counts.iter().copied().min().unwrap_or(0),
        max_generators: counts.iter().copied().max().unwrap_or(0),
        twelve_generator_classes: twelve.len(),
        y1_matches_twelve_class: twelve.iter().any(|c| rep(c) == y1),
        quartic_classes: quartic.len(),
        fifteen_generator_classes: fifteen.len(),
        quartic_classes_are_fifteen_classes: quartic.len() == fifteen.len()
            && quartic.iter().all(|c| c.generators == 15),
        y2_matches_quartic_class: quartic.iter().any(|c| rep(c) == y2),
        y3_among_initial_ideals: nodes.iter().any(|n| n.initial == y3),
        y3_orbit_meets_initial_ideals: report.classes.iter().any(|c| rep(c) == y3c),
    }
}

/// The three toric quadrics for three cameras cut out `J_A ∩ <z1, z2, z3>`.
pub fn quadric_intersection_identity() -> bool {
    let ring = Ring::new(3);
    let ideal = toric_ideal(&cayley_matrix(3).unwrap()).unwrap();
    let quadrics: Vec<Polynomial<Rational>> = ideal
        .gens()
        .iter()
        .filter(|p| p.terms()[0].0.degree() == 2)
        .cloned()
        .collect();
    let zs = IdealPresentation::new(ring, (0..3).map(|c| Polynomial::var(ring.z(c))).collect());
    IdealPresentation::new(ring, quadrics).equal(&ideal.intersect(&zs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_all(ring: Ring, s: &[&str]) -> IdealPresentation<Rational> {
        IdealPresentation::new(ring, s.iter().map(|p| Polynomial::parse(p, &ring).unwrap()).collect())
    }

    #[test]
    fn three_camera_matrix_is_the_displayed_one() {
        let m = cayley_matrix(3).unwrap();
        let shown = [
            "000100100",
            "100000010",
            "010010000",
            "001001001",
            "111000000",
            "000111000",
            "000000111",
        ];
        let rows: Vec<Vec<i64>> = shown
            .iter()
            .map(|r| r.bytes().map(|b| i64::from(b - b'0')).collect())
            .collect();
        assert_eq!(m.rows, rows);
        assert_eq!(m.rank(), 6);
        assert_eq!(cayley_matrix(4).unwrap().rank(), 7);
        assert!(cayley_matrix(2).is_err());
    }

    #[test]
    fn three_camera_toric_ideal() {
        let ring = Ring::new(3);
        let ideal = toric_ideal(&cayley_matrix(3).unwrap()).unwrap();
        let expected = parse_all(
            ring,
            &["z1*y3 - x1*z3", "z2*x3 - x2*z3", "z1*y2 - y1*z2", "x1*y2*x3 - y1*x2*y3"],
        );
        assert_eq!(ideal.gens().len(), 4);
        assert!(ideal.equal(&expected));
        assert!(ideal.equal(&toric_cameras(3).minors_ideal()));
    }

    #[test]
    fn four_camera_toric_ideal() {
        let ideal = toric_ideal(&cayley_matrix(4).unwrap()).unwrap();
        let degrees: Vec<u32> = ideal.gens().iter().map(|p| p.terms()[0].0.degree()).collect();
        assert_eq!(degrees.iter().filter(|&&d| d == 2).count(), 6);
        assert_eq!(degrees.iter().filter(|&&d| d == 3).count(), 4);
        let ring = Ring::new(4);
        let shown = parse_all(
            ring,
            &[
                "y1*y4 - x1*z4",
                "y3*x4 - x3*y4",
                "y2*x4 - x2*z4",
                "z1*y3 - x1*z3",
                "z2*x3 - x2*z3",
                "z1*y2 - y1*z2",
                "y2*z3*y4 - z2*y3*z4",
                "y1*z3*x4 - z1*x3*z4",
                "x1*z2*x4 - z1*x2*y4",
                "x1*y2*x3 - y1*x2*y3",
            ],
        );
        assert!(ideal.equal(&shown));
        let cams = toric_cameras(4);
        assert!(ideal.equal(&cams.minors_ideal()));
        let elim = cams.multiview_ideal_by_elimination();
        assert!(ideal.equal(&elim));
    }

    #[test]
    fn principal_binomial_has_two_initial_ideals() {
        let ring = Ring::new(2);
        let i = parse_all(ring, &["x1*y2 - x2*y1"]);
        let nodes = gfan_traverse(&i, 10).unwrap();
        assert_eq!(nodes.len(), 2);
        // zero kernel: a full-rank square matrix
        let m = CayleyMatrix {
            ring,
            rows: (0..6).map(|r| (0..6).map(|c| i64::from(r == c)).collect()).collect(),
            labels: (0..6).collect(),
        };
        assert!(toric_ideal(&m).unwrap().gens().is_empty());
    }

    #[test]
    fn three_camera_fan() {
        let (rep, nodes) = enumerate(3, 1000).unwrap();
        assert_eq!(rep.initial_ideals, 20);
        assert_eq!(rep.classes.len(), 3);
        assert!(rep.all_squarefree && rep.cells_ok);
        for n in &nodes {
            assert_eq!(n.order().cmp(&n.initial.gens()[0], &n.initial.gens()[0]), std::cmp::Ordering::Equal);
        }
        assert!(quadric_intersection_identity());
    }

    #[test]
    fn node_cap_is_enforced() {
        let ideal = toric_ideal(&cayley_matrix(3).unwrap()).unwrap();
        assert!(matches!(gfan_traverse(&ideal, 5), Err(ToricError::NodeCap(5))));
    }
}
