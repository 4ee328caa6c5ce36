//! Polyhedral cones `{u : c.u >= 0}` by exact double description over
//! primitive integer vectors.

use num_integer::Integer;

pub type IVec = Vec<i64>;

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Divides out the gcd of the entries.
pub fn primitive(v: &[i128]) -> IVec {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    v.iter()
        .map(|&x| {
            let q = if g == 0 { x } else { x / g };
            i64::try_from(q).expect("cone entries overflow i64")
        })
        .collect()
}

/// `a * x - b * y`, made primitive.
fn combine(a: i128, x: &[i64], b: i128, y: &[i64]) -> IVec {
    let v: Vec<i128> = x.iter().zip(y).map(|(&p, &q)| a * p as i128 - b * q as i128).collect();
    primitive(&v)
}

/// Rank of a list of integer vectors (fraction-free elimination).
pub fn rank(vs: &[IVec]) -> usize {
    let mut rows: Vec<Vec<i128>> = vs.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                let new: Vec<i128> = (0..cols).map(|k| a * rows[i][k] - b * rows[r][k]).collect();
                let g = new.iter().fold(0i128, |g, &x| g.gcd(&x));
                rows[i] = new.into_iter().map(|x| if g == 0 { x } else { x / g }).collect();
            }
        }
        r += 1;
    }
    r
}

#[derive(Debug, Clone)]
pub struct Cone {
    pub dim: usize,
    pub inequalities: Vec<IVec>,
    /// Extreme rays modulo the lineality space.
    pub rays: Vec<IVec>,
    pub lineality: Vec<IVec>,
}

#[derive(Debug, Clone)]
pub struct Facet {
    /// Primitive inner normal.
    pub normal: IVec,
    /// A point in the relative interior.
    pub point: IVec,
}

impl Cone {
    pub fn from_inequalities(dim: usize, inequalities: Vec<IVec>) -> Self {
        let mut lin: Vec<IVec> = (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect();
        let mut rays: Vec<IVec> = Vec::new();
        for (k, c) in inequalities.iter().enumerate() {
            if let Some(p) = lin.iter().position(|l| dot(c, l) != 0) {
                let mut l0 = lin.remove(p);
                if dot(c, &l0) < 0 {
                    l0.iter_mut().for_each(|x| *x = -*x);
                }
                let d0 = dot(c, &l0);
                for v in lin.iter_mut().chain(rays.iter_mut()) {
                    let d = dot(c, v);
                    if d != 0 {
                        *v = combine(d0, v, d, &l0);
                    }
                }
                rays.push(l0);
                continue;
            }
            let done = &inequalities[..k];
            let zero_set = |r: &IVec| -> Vec<bool> { done.iter().map(|c| dot(c, r) == 0).collect() };
            let vals: Vec<i128> = rays.iter().map(|r| dot(c, r)).collect();
            let zs: Vec<Vec<bool>> = rays.iter().map(zero_set).collect();
            let mut next: Vec<IVec> = Vec::new();
            for (r, &v) in rays.iter().zip(&vals) {
                if v >= 0 {
                    next.push(r.clone());
                }
            }
            for i in 0..rays.len() {
                if vals[i] <= 0 {
                    continue;
                }
                for j in 0..rays.len() {
                    if vals[j] >= 0 {
                        continue;
                    }
                    let common: Vec<bool> = zs[i].iter().zip(&zs[j]).map(|(a, b)| *a && *b).collect();
                    let adjacent = (0..rays.len()).all(|t| {
                        t == i || t == j || common.iter().zip(&zs[t]).any(|(c, z)| *c && !*z)
                    });
                    if adjacent {
                        next.push(combine(vals[i], &rays[j], vals[j], &rays[i]));
                    }
                }
            }
            rays = next;
        }
        Cone {
            dim,
            inequalities,
            rays,
            lineality: lin,
        }
    }

    /// Sum of the extreme rays; lies in the relative interior.
    pub fn relative_interior_point(&self) -> IVec {
        let mut p = vec![0i128; self.dim];
        for r in &self.rays {
            for (a, &b) in p.iter_mut().zip(r) {
                *a += b as i128;
            }
        }
        primitive(&p)
    }

    pub fn is_full_dimensional(&self) -> bool {
        let p = self.relative_interior_point();
        self.inequalities.iter().all(|c| dot(c, &p) > 0)
    }

    /// Facets with distinct normals, in order of first appearance.
    pub fn facets(&self) -> Vec<Facet> {
        let mut seen: Vec<IVec> = Vec::new();
        let mut out = Vec::new();
        for c in &self.inequalities {
            let normal = primitive(&c.iter().map(|&x| x as i128).collect::<Vec<_>>());
            if seen.contains(&normal) {
                continue;
            }
            seen.push(normal.clone());
            let on: Vec<IVec> = self.rays.iter().filter(|r| dot(&normal, r) == 0).cloned().collect();
            let mut span = on.clone();
            span.extend(self.lineality.iter().cloned());
            if rank(&span) + 1 != self.dim {
                continue;
            }
            let mut p = vec![0i128; self.dim];
            for r in &on {
                for (a, &b) in p.iter_mut().zip(r) {
                    *a += b as i128;
                }
            }
            out.push(Facet {
                normal,
                point: primitive(&p),
            });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant() {
        let c = Cone::from_inequalities(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(c.rays.len(), 3);
        assert!(c.lineality.is_empty());
        assert_eq!(c.facets().len(), 3);
        assert!(c.is_full_dimensional());
    }

    #[test]
    fn square_cone_with_redundant_inequality() {
        // x +- y >= 0, x +- z >= 0, and the redundant x >= 0
        let c = Cone::from_inequalities(
            3,
            vec![vec![1, 1, 0], vec![1, -1, 0], vec![1, 0, 1], vec![1, 0, -1], vec![1, 0, 0]],
        );
        assert_eq!(c.rays.len(), 4);
        assert_eq!(c.facets().len(), 4);
        let mut rays = c.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![vec![1, -1, -1], vec![1, -1, 1], vec![1, 1, -1], vec![1, 1, 1]]);
    }

    #[test]
    fn half_space_and_lower_dimensional() {
        let h = Cone::from_inequalities(2, vec![vec![1, 0]]);
        assert_eq!(h.lineality.len(), 1);
        assert_eq!(h.facets().len(), 1);
        // x >= 0 and -x >= 0 cut out a line: no interior
        let l = Cone::from_inequalities(2, vec![vec![1, 0], vec![-1, 0]]);
        assert!(!l.is_full_dimensional());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 2, 0], vec![0, 1, 1], vec![1, 3, 1]]), 2);
    }
}
