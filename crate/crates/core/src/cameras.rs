//! Camera configurations, the matrices `A_sigma` and their maximal minors,
//! fundamental matrices and the two named camera families.

use std::path::Path;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exactalg::{eps::EpsRational, int, parse_rational, Field, Matrix, Rational};
use crate::groebner::{linear_basis, IdealPresentation};
use crate::polyring::{Letter, Monomial, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CameraError {
    #[error("camera {0} is not a 3x4 matrix")]
    Shape(usize),
    #[error("camera {0} does not have rank 3")]
    RankDeficient(usize),
    #[error("need at least two cameras, got {0}")]
    TooFew(usize),
    #[error("camera subset must have at least two elements")]
    SubsetTooSmall,
    #[error("bad camera file: {0}")]
    File(String),
}

/// `n >= 2` camera matrices of size 3x4 and rank 3.
#[derive(Clone, PartialEq)]
pub struct CameraConfig<F> {
    cams: Vec<Matrix<F>>,
}

impl<F: Field> std::fmt::Debug for CameraConfig<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.cams).finish()
    }
}

impl<F: Field> CameraConfig<F> {
    pub fn new(cams: Vec<Matrix<F>>) -> Result<Self, CameraError> {
        if cams.len() < 2 {
            return Err(CameraError::TooFew(cams.len()));
        }
        for (i, a) in cams.iter().enumerate() {
            if a.rows() != 3 || a.cols() != 4 {
                return Err(CameraError::Shape(i));
            }
            if a.rank() != 3 {
                return Err(CameraError::RankDeficient(i));
            }
        }
        Ok(CameraConfig { cams })
    }

    pub fn n(&self) -> usize {
        self.cams.len()
    }

    pub fn camera(&self, i: usize) -> &Matrix<F> {
        &self.cams[i]
    }

    pub fn cameras(&self) -> &[Matrix<F>] {
        &self.cams
    }

    /// Configuration of the first `k` cameras.
    pub fn prefix(&self, k: usize) -> Result<Self, CameraError> {
        Self::new(self.cams[..k].to_vec())
    }

    pub fn subset(&self, sigma: &[usize]) -> Result<Self, CameraError> {
        Self::new(sigma.iter().map(|&i| self.cams[i].clone()).collect())
    }

    /// Left-multiplies camera `i` by `g`.
    pub fn transform_camera(&self, i: usize, g: &Matrix<F>) -> Result<Self, CameraError> {
        let mut cams = self.cams.clone();
        cams[i] = g.mul(&cams[i]);
        Self::new(cams)
    }

    /// Right-multiplies every camera by a 4x4 matrix.
    pub fn transform_world(&self, q: &Matrix<F>) -> Result<Self, CameraError> {
        Self::new(self.cams.iter().map(|a| a.mul(q)).collect())
    }

    /// Kernel generators, scaled so that the first nonzero entry is 1.
    pub fn focal_points(&self) -> Vec<Vec<F>> {
        self.cams
            .iter()
            .map(|a| {
                let k = a.kernel();
                debug_assert_eq!(k.len(), 1);
                normalize_projective(&k[0])
            })
            .collect()
    }

    pub fn focal_points_distinct(&self) -> bool {
        let f = self.focal_points();
        (0..f.len()).all(|i| (i + 1..f.len()).all(|j| f[i] != f[j]))
    }

    /// The 4 x 3n matrix `[A_1^T ... A_n^T]`.
    pub fn stacked(&self) -> Matrix<F> {
        let n = self.n();
        Matrix::from_fn(4, 3 * n, |r, c| self.cams[c / 3][(c % 3, r)].clone())
    }

    /// Columns of the first vanishing 4x4 minor of the stacked matrix, or
    /// `None` if the configuration is generic.
    pub fn genericity_witness(&self) -> Option<[usize; 4]> {
        let s = self.stacked();
        let m = s.cols();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        let sub = s.select(&[0, 1, 2, 3], &[a, b, c, d]);
                        if sub.det().unwrap().is_zero() {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_generic(&self) -> bool {
        self.genericity_witness().is_none()
    }

    /// No three focal points collinear and no four coplanar.
    pub fn in_linearly_general_position(&self) -> bool {
        let f = self.focal_points();
        let n = f.len();
        let rank_of = |idx: &[usize]| {
            Matrix::from_rows(idx.iter().map(|&i| f[i].clone()).collect()).rank()
        };
        for i in 0..n {
            for j in i + 1..n {
                if rank_of(&[i, j]) < 2 {
                    return false;
                }
                for k in j + 1..n {
                    if rank_of(&[i, j, k]) < 3 {
                        return false;
                    }
                    for l in k + 1..n {
                        if rank_of(&[i, j, k, l]) < 4 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Completes camera `i` to an invertible 4x4 matrix by putting a
    /// standard basis row on top.
    pub fn completed(&self, i: usize) -> Matrix<F> {
        for k in 0..4 {
            let top: Vec<F> = (0..4).map(|c| if c == k { F::one() } else { F::zero() }).collect();
            let b = Matrix::from_rows(vec![top]).vstack(&self.cams[i]);
            if b.rank() == 4 {
                return b;
            }
        }
        unreachable!("a rank 3 camera always extends by a unit row")
    }

    /// The polynomial matrix `A_sigma` (`3s x (s+4)`), or `B_sigma`
    /// (`4s x (s+4)`, cameras completed by [`Self::completed`]) when the
    /// ring is extended.
    pub fn a_sigma(&self, sigma: &[usize], ring: &Ring) -> Result<Vec<Vec<Polynomial<F>>>, CameraError> {
        if sigma.len() < 2 {
            return Err(CameraError::SubsetTooSmall);
        }
        let s = sigma.len();
        let h = ring.blocks();
        let mut rows = Vec::with_capacity(h * s);
        for (k, &cam) in sigma.iter().enumerate() {
            let a = if ring.extended {
                self.completed(cam)
            } else {
                self.cams[cam].clone()
            };
            for r in 0..h {
                let mut row: Vec<Polynomial<F>> =
                    (0..4).map(|c| Polynomial::constant(a[(r, c)].clone())).collect();
                for j in 0..s {
                    row.push(if j == k {
                        Polynomial::var(ring.var(ring.letters()[r], cam))
                    } else {
                        Polynomial::zero()
                    });
                }
                rows.push(row);
            }
        }
        Ok(rows)
    }

    /// The maximal minor of `A_sigma` (or `B_sigma`) on the given rows.
    ///
    /// Laplace expansion along the variable columns: each camera block
    /// must supply exactly one row to its variable column, the remaining
    /// four rows form a constant 4x4 determinant.
    pub fn minor(&self, sigma: &[usize], rows: &[usize], ring: &Ring) -> Polynomial<F> {
        let h = ring.blocks();
        let s = sigma.len();
        assert_eq!(rows.len(), s + 4, "a maximal minor needs s + 4 rows");
        let mats: Vec<Matrix<F>> = sigma
            .iter()
            .map(|&c| {
                if ring.extended {
                    self.completed(c)
                } else {
                    self.cams[c].clone()
                }
            })
            .collect();
        let const_row = |r: usize| mats[r / h].row(r % h).to_vec();
        let per_block: Vec<Vec<usize>> = (0..s)
            .map(|k| (0..rows.len()).filter(|&p| rows[p] / h == k).collect())
            .collect();
        if per_block.iter().any(Vec::is_empty) {
            return Polynomial::zero();
        }
        let col_sum: usize = (4..4 + s).sum();
        let mut terms: Vec<(Monomial, F)> = Vec::new();
        let mut choice = vec![0usize; s];
        loop {
            let chosen: Vec<usize> = (0..s).map(|k| per_block[k][choice[k]]).collect();
            let rest: Vec<Vec<F>> = (0..rows.len())
                .filter(|p| !chosen.contains(p))
                .map(|p| const_row(rows[p]))
                .collect();
            let d = Matrix::from_rows(rest).det().unwrap();
            if !d.is_zero() {
                let pos_sum: usize = chosen.iter().sum();
                let sign_neg = (pos_sum + col_sum) % 2 == 1;
                let vars: Vec<usize> = (0..s)
                    .map(|k| ring.var(ring.letters()[rows[chosen[k]] % h], sigma[k]))
                    .collect();
                let c = if sign_neg { d.neg_ref() } else { d };
                terms.push((Monomial::from_vars(&vars), c));
            }
            // next choice
            let mut k = 0;
            loop {
                if k == s {
                    return Polynomial::from_terms(terms);
                }
                choice[k] += 1;
                if choice[k] < per_block[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    /// All nonzero maximal minors of `A_sigma` for `2 <= |sigma| <= min(n, 4)`,
    /// subsets in colex order and row subsets in lex order.
    pub fn multiview_minors(&self, ring: &Ring) -> Vec<Minor<F>> {
        let n = self.n();
        let h = ring.blocks();
        let mut out = Vec::new();
        for s in 2..=n.min(4) {
            for sigma in colex_subsets(n, s) {
                for rows in lex_subsets(h * s, s + 4) {
                    let p = self.minor(&sigma, &rows, ring);
                    if !p.is_zero() {
                        out.push(Minor {
                            sigma: sigma.clone(),
                            rows,
                            poly: p,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn multiview_generators(&self) -> Vec<Polynomial<F>> {
        let ring = Ring::new(self.n());
        self.multiview_minors(&ring).into_iter().map(|m| m.poly).collect()
    }

    /// The ideal generated by the maximal minors, presented by a reduced
    /// echelon basis of their span in each multidegree.
    pub fn minors_ideal(&self) -> IdealPresentation<F> {
        let ring = Ring::new(self.n());
        IdealPresentation::new(ring, linear_basis(&self.multiview_generators(), &ring))
    }

    /// `J^B`: 2x2 minors of the 4 x n matrix with columns `B_i^{-1} (w_i, x_i, y_i, z_i)^T`.
    pub fn diagonal_ideal(&self) -> IdealPresentation<F> {
        let n = self.n();
        let ring = Ring::extended(n);
        let cols: Vec<Vec<Polynomial<F>>> = (0..n)
            .map(|i| {
                let binv = self.completed(i).inverse().unwrap();
                let vars = ring.camera_vars(i);
                (0..4)
                    .map(|r| {
                        Polynomial::from_terms(
                            (0..4).map(|c| (Monomial::var(vars[c]), binv[(r, c)].clone())),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut gens = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                for i in 0..n {
                    for j in i + 1..n {
                        gens.push(cols[i][a].mul(&cols[j][b]).sub(&cols[i][b].mul(&cols[j][a])));
                    }
                }
            }
        }
        IdealPresentation::new(ring, linear_basis(&gens, &ring))
    }

    /// `J_A = J^B ∩ K[x, y, z]`, valid for any configuration.
    pub fn multiview_ideal_by_elimination(&self) -> IdealPresentation<F> {
        let n = self.n();
        let ext = Ring::extended(n);
        let jb = self.diagonal_ideal();
        let keep: Vec<usize> = (0..ext.nvars())
            .filter(|&v| !(0..n).any(|i| ext.w(i) == v))
            .collect();
        let elim = jb.eliminate(&keep);
        let plain = Ring::new(n);
        elim.change_ring(plain, &extended_to_plain(&ext))
    }

    /// Fundamental matrix of the pair `(i, j)`: entry `(r, c)` is
    /// `(-1)^(r+c)` times the 4x4 determinant of the rows of `A_i` without
    /// row `c` and the rows of `A_j` without row `r`.
    pub fn fundamental_matrix(&self, i: usize, j: usize) -> Matrix<F> {
        assert_ne!(i, j, "fundamental matrix needs two distinct cameras");
        let (a, b) = (&self.cams[i], &self.cams[j]);
        Matrix::from_fn(3, 3, |r, c| {
            let mut rows: Vec<Vec<F>> = (0..3).filter(|&k| k != c).map(|k| a.row(k).to_vec()).collect();
            rows.extend((0..3).filter(|&k| k != r).map(|k| b.row(k).to_vec()));
            let d = Matrix::from_rows(rows).det().unwrap();
            if (r + c) % 2 == 1 {
                d.neg_ref()
            } else {
                d
            }
        })
    }

    /// The bilinear form `p_j^T F p_i` as a polynomial.
    pub fn epipolar_form(&self, i: usize, j: usize) -> Polynomial<F> {
        let ring = Ring::new(self.n());
        let f = self.fundamental_matrix(i, j);
        let (pi, pj) = (ring.camera_vars(i), ring.camera_vars(j));
        Polynomial::from_terms((0..3).flat_map(|r| {
            let f = &f;
            let (pi, pj) = (&pi, &pj);
            (0..3).map(move |c| (Monomial::from_vars(&[pj[r], pi[c]]), f[(r, c)].clone()))
        }))
    }
}

/// Variable map from the extended ring to the plain ring (w-variables
/// are sent to an arbitrary index and must not occur).
pub fn extended_to_plain(ext: &Ring) -> Vec<usize> {
    let plain = Ring::new(ext.n);
    (0..ext.nvars())
        .map(|v| match ext.var_id(v) {
            crate::polyring::VarId::Cam { camera, letter } if letter != Letter::W => {
                plain.var(letter, camera)
            }
            _ => 0,
        })
        .collect()
}

/// Variable map from the plain ring into the extended ring.
pub fn plain_to_extended(n: usize) -> Vec<usize> {
    let plain = Ring::new(n);
    let ext = Ring::extended(n);
    (0..plain.nvars())
        .map(|v| match plain.var_id(v) {
            crate::polyring::VarId::Cam { camera, letter } => ext.var(letter, camera),
            _ => unreachable!(),
        })
        .collect()
}

#[derive(Clone)]
pub struct Minor<F> {
    pub sigma: Vec<usize>,
    pub rows: Vec<usize>,
    pub poly: Polynomial<F>,
}

fn normalize_projective<F: Field>(v: &[F]) -> Vec<F> {
    let lead = v.iter().find(|c| !c.is_zero()).expect("zero vector").clone();
    let inv = lead.inv();
    v.iter().map(|c| c.mul_ref(&inv)).collect()
}

/// `k`-subsets of `0..n` in colex order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut all = lex_subsets(n, k);
    all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    all
}

/// `k`-subsets of `0..n` in lex order.
pub fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn int_matrix(rows: &[[i64; 4]; 3]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&a| int(a)).collect()).collect())
}

/// The toric cameras: `A_i` is the identity with column `i` deleted from
/// its rows, so that the focal point of camera `i` is `e_i`. Returns the
/// first `n <= 4` of them.
pub fn toric_cameras(n: usize) -> CameraConfig<Rational> {
    assert!((2..=4).contains(&n), "toric cameras exist for 2 <= n <= 4");
    let cams = (0..n)
        .map(|i| {
            let mut rows = [[0i64; 4]; 3];
            let mut r = 0;
            for k in 0..4 {
                if k != i {
                    rows[r][k] = 1;
                    r += 1;
                }
            }
            int_matrix(&rows)
        })
        .collect();
    CameraConfig::new(cams).unwrap()
}

/// The collinear family `A_i = [[1,1,0,0],[1,0,1,0],[eps^(n-i),0,0,1]]`
/// over `Q(eps)`.
pub fn collinear_cameras(n: usize) -> CameraConfig<EpsRational> {
    assert!(n >= 2, "need at least two cameras");
    let one = EpsRational::one;
    let zero = EpsRational::zero;
    let cams = (1..=n)
        .map(|i| {
            Matrix::from_rows(vec![
                vec![one(), one(), zero(), zero()],
                vec![one(), zero(), one(), zero()],
                vec![EpsRational::eps_pow(n - i), zero(), zero(), one()],
            ])
        })
        .collect();
    CameraConfig::new(cams).unwrap()
}

/// The collinear family specialized at a nonzero rational `eps`.
pub fn collinear_cameras_at(n: usize, eps: &Rational) -> Result<CameraConfig<Rational>, CameraError> {
    if eps.is_zero() {
        return Err(CameraError::File("eps must be nonzero".to_string()));
    }
    let fam = collinear_cameras(n);
    CameraConfig::new(
        fam.cams
            .iter()
            .map(|a| a.map(|c| c.eval(eps).expect("polynomial entries")))
            .collect(),
    )
}

/// Random cameras with integer entries in `[-bound, bound]`, resampled
/// until the configuration is generic.
pub fn random_generic_cameras(n: usize, bound: i64, rng: &mut impl Rng) -> CameraConfig<Rational> {
    loop {
        let cams: Vec<Matrix<Rational>> = (0..n)
            .map(|_| Matrix::from_fn(3, 4, |_, _| int(rng.gen_range(-bound..=bound))))
            .collect();
        if let Ok(c) = CameraConfig::new(cams) {
            if c.is_generic() {
                return c;
            }
        }
    }
}

/// Random cameras of rank 3 with integer entries in `[-bound, bound]`; no
/// genericity condition is imposed.
pub fn random_cameras(n: usize, bound: i64, rng: &mut impl Rng) -> CameraConfig<Rational> {
    loop {
        let cams: Vec<Matrix<Rational>> = (0..n)
            .map(|_| Matrix::from_fn(3, 4, |_, _| int(rng.gen_range(-bound..=bound))))
            .collect();
        if let Ok(c) = CameraConfig::new(cams) {
            return c;
        }
    }
}

/// JSON camera file: `{"n": k, "cameras": [[[e, e, e, e], ...3], ...k]}`
/// with entries given as integers or `"p/q"` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CameraFile {
    pub n: usize,
    pub cameras: Vec<Vec<Vec<serde_json::Value>>>,
}

impl CameraFile {
    pub fn from_config(c: &CameraConfig<Rational>) -> Self {
        CameraFile {
            n: c.n(),
            cameras: c
                .cams
                .iter()
                .map(|a| {
                    a.to_rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(|e| serde_json::Value::String(e.to_string())).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_config(&self) -> Result<CameraConfig<Rational>, CameraError> {
        if self.cameras.len() != self.n {
            return Err(CameraError::File(format!(
                "n = {} but {} cameras given",
                self.n,
                self.cameras.len()
            )));
        }
        let mut cams = Vec::new();
        for (i, cam) in self.cameras.iter().enumerate() {
            if cam.len() != 3 || cam.iter().any(|r| r.len() != 4) {
                return Err(CameraError::Shape(i));
            }
            let rows = cam
                .iter()
                .map(|r| r.iter().map(parse_entry).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            cams.push(Matrix::from_rows(rows));
        }
        CameraConfig::new(cams)
    }

    pub fn read(path: &Path) -> Result<CameraConfig<Rational>, CameraError> {
        let text = std::fs::read_to_string(path).map_err(|e| CameraError::File(e.to_string()))?;
        let f: CameraFile = serde_json::from_str(&text).map_err(|e| CameraError::File(e.to_string()))?;
        f.to_config()
    }
}

fn parse_entry(v: &serde_json::Value) -> Result<Rational, CameraError> {
    let s = match v {
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.clone(),
        other => return Err(CameraError::File(format!("bad entry {other}"))),
    };
    parse_rational(&s).ok_or_else(|| CameraError::File(format!("bad entry {s}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Scalar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Determinant by cofactor expansion over polynomial entries.
    fn poly_det(m: &[Vec<Polynomial<Rational>>]) -> Polynomial<Rational> {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Polynomial::zero();
        for c in 0..n {
            if m[0][c].is_zero() {
                continue;
            }
            let sub: Vec<Vec<Polynomial<Rational>>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, p)| p.clone()).collect())
                .collect();
            let t = m[0][c].mul(&poly_det(&sub));
            acc = if c % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    #[test]
    fn minors_match_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = random_generic_cameras(3, 5, &mut rng);
        let ring = Ring::new(3);
        let a = cfg.a_sigma(&[0, 1, 2], &ring).unwrap();
        assert_eq!((a.len(), a[0].len()), (9, 7));
        for rows in lex_subsets(9, 7).into_iter().step_by(5) {
            let sub: Vec<_> = rows.iter().map(|&r| a[r].clone()).collect();
            assert_eq!(cfg.minor(&[0, 1, 2], &rows, &ring), poly_det(&sub));
        }
        let a2 = cfg.a_sigma(&[0, 2], &ring).unwrap();
        assert_eq!((a2.len(), a2[0].len()), (6, 6));
        assert_eq!(cfg.minor(&[0, 2], &[0, 1, 2, 3, 4, 5], &ring), poly_det(&a2));
        let a4 = random_generic_cameras(4, 5, &mut rng).a_sigma(&[0, 1, 2, 3], &Ring::new(4)).unwrap();
        assert_eq!((a4.len(), a4[0].len()), (12, 8));
    }

    #[test]
    fn toric_focal_points() {
        let t = toric_cameras(4);
        let f = t.focal_points();
        for (i, p) in f.iter().enumerate() {
            let e: Vec<Rational> = (0..4).map(|k| int(i64::from(k == i))).collect();
            assert_eq!(p, &e);
        }
        assert!(!t.is_generic());
        // left multiplication keeps the focal point
        let g = Matrix::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(1), int(0), int(3)],
        ]);
        assert_eq!(t.transform_camera(0, &g).unwrap().focal_points(), f);
    }

    #[test]
    fn collinear_focal_points() {
        let c = collinear_cameras(3);
        let f = c.focal_points();
        for (i, p) in f.iter().enumerate() {
            // (-1 : 1 : 1 : eps^(n-i)) normalized to leading 1
            let expect = vec![
                EpsRational::one(),
                EpsRational::from_i64(-1),
                EpsRational::from_i64(-1),
                EpsRational::eps_pow(3 - (i + 1)).neg_ref(),
            ];
            assert_eq!(p, &expect);
        }
        // specializations lie on one line
        let c = collinear_cameras_at(4, &rat(1, 2)).unwrap();
        let f = c.focal_points();
        let m = Matrix::from_rows(f);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn equal_rowspace_is_not_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random_generic_cameras(2, 5, &mut rng);
        let g = Matrix::from_rows(vec![
            vec![int(1), int(1), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ]);
        let same = CameraConfig::new(vec![c.camera(0).clone(), g.mul(c.camera(0))]).unwrap();
        assert!(same.genericity_witness().is_some());
        assert!(!same.focal_points_distinct());
    }

    #[test]
    fn collinear_quadric_factorizes() {
        let n = 3;
        let c = collinear_cameras(n);
        let ring = Ring::new(n);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let det = c.minor(&[i, j], &[0, 1, 2, 3, 4, 5], &ring);
            let factor = EpsRational::eps_pow(n - (j + 1)).sub_ref(&EpsRational::eps_pow(n - (i + 1)));
            let q = Polynomial::from_terms(vec![
                (Monomial::from_vars(&[ring.x(i), ring.y(j)]), EpsRational::one()),
                (Monomial::from_vars(&[ring.x(j), ring.y(i)]), EpsRational::from_i64(-1)),
            ]);
            assert_eq!(det, q.scale(&factor));
        }
    }

    #[test]
    fn fundamental_matrix_is_the_pair_minor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = random_generic_cameras(2, 6, &mut rng);
        let f = c.fundamental_matrix(0, 1);
        assert_eq!(f.rank(), 2);
        let ring = Ring::new(2);
        let det = c.minor(&[0, 1], &[0, 1, 2, 3, 4, 5], &ring);
        let form = c.epipolar_form(0, 1);
        assert!(form == det || form == det.neg());
    }

    #[test]
    fn camera_file_round_trip() {
        let t = toric_cameras(3);
        let text = serde_json::to_string(&CameraFile::from_config(&t)).unwrap();
        let back: CameraFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_config().unwrap(), t);
        let bad = r#"{"n": 2, "cameras": [[[1,0,0,0],[0,1,0,0],[0,0,1,0]], [[1,0,0,0],[1,0,0,0],[0,0,1,0]]]}"#;
        let f: CameraFile = serde_json::from_str(bad).unwrap();
        assert_eq!(f.to_config(), Err(CameraError::RankDeficient(1)));
    }

    #[test]
    fn subsets_orders() {
        assert_eq!(lex_subsets(4, 2).len(), 6);
        assert_eq!(colex_subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
