//! End-to-end verification of the main results, one function per check.
//! Shared by the `check all` command and the acceptance tests.

use std::time::Instant;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cameras::{random_cameras, random_generic_cameras, toric_cameras, CameraConfig};
use crate::degeneration::verify_degeneration;
use crate::exactalg::{Field, Rational};
use crate::groebner::{camera_permutation_orders, linear_basis, random_weight_orders, universal_gb_check};
use crate::hilbscheme::census;
use crate::monomial::{binomial, gens_m, gens_n, gin_shelling_order, MonomialIdeal};
use crate::polyring::{Polynomial, Ring, TermOrder};
use crate::tangent::{tangent_basis_check_n, tangent_dim};
use crate::toric;

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub detail: Value,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {} ({:.1} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds
        )
    }
}

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> (bool, Value)) -> Criterion {
    let t = Instant::now();
    let (passed, detail) = f();
    Criterion {
        id,
        name,
        passed,
        seconds: t.elapsed().as_secs_f64(),
        detail,
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of camera configurations per size in the generic check.
pub const GENERIC_CONFIGS: usize = 3;

/// Lex initial ideal of the multiview ideal equals `M_n` for random generic cameras.
pub fn generic_initial_ideal(n_max: usize) -> Criterion {
    timed(1, "generic initial ideal", || {
        let mut r = rng(1);
        let mut ok = true;
        let mut runs = Vec::new();
        for n in 2..=n_max.min(4) {
            for _ in 0..GENERIC_CONFIGS {
                let cams = random_generic_cameras(n, 9, &mut r);
                let t = Instant::now();
                let ideal = cams.minors_ideal();
                let init = ideal.initial_ideal(&TermOrder::lex(&ideal.ring));
                let secs = t.elapsed().as_secs_f64();
                let good = init == gens_m(n) && secs < 60.0;
                ok &= good;
                runs.push(json!({"n": n, "equal": init == gens_m(n), "seconds": secs}));
            }
        }
        (ok, json!({ "runs": runs }))
    })
}

/// The maximal minors form a Gröbner basis under every per-camera
/// permutation lex order (n = 2, 3) and under random weight orders (n = 4).
pub fn universal_basis(n_max: usize) -> Criterion {
    timed(2, "universal Groebner basis", || {
        let mut r = rng(2);
        let mut ok = true;
        let mut runs = Vec::new();
        for n in 2..=n_max.min(4) {
            let cams = random_generic_cameras(n, 9, &mut r);
            let ring = Ring::new(n);
            let gens = cams.multiview_generators();
            let basis = linear_basis(&gens, &ring);
            let orders = if n < 4 {
                camera_permutation_orders(&ring)
            } else {
                random_weight_orders(&ring, 25, &mut r)
            };
            let check = universal_gb_check(&gens, &basis, &orders, &ring);
            ok &= check.passed();
            runs.push(json!({
                "n": n,
                "orders": check.orders_checked,
                "counterexample": check.counterexample.map(|(o, m)| {
                    format!("{} under {}", ring.display_monomial(&m), o.to_spec(&ring))
                }),
            }));
        }
        (ok, json!({ "runs": runs }))
    })
}

/// `M_n` and `N_n` have the closed-form Hilbert function on the box `<= (3,...,3)`.
pub fn hilbert_identities(n_max: usize) -> Criterion {
    timed(3, "Hilbert function identities", || {
        let mut ok = true;
        let mut runs = Vec::new();
        for n in 2..=n_max.min(5) {
            let m = gens_m(n).hilbert_mismatch(3);
            let nn = gens_n(n).hilbert_mismatch(3);
            ok &= m.is_none() && nn.is_none();
            runs.push(json!({"n": n, "m_mismatch": m, "n_mismatch": nn}));
        }
        (ok, json!({ "runs": runs }))
    })
}

/// Two cameras sharing a focal point, built as `A_2 = G A_1`.
pub fn coincident_pair(seed: u64) -> CameraConfig<Rational> {
    let mut r = rng(seed);
    loop {
        let pair = random_cameras(2, 9, &mut r);
        let a = pair.camera(0).clone();
        let g = pair.camera(1).select(&[0, 1, 2], &[0, 1, 2]);
        if g.det().map(|d| d.is_zero()).unwrap_or(true) {
            continue;
        }
        if let Ok(c) = CameraConfig::new(vec![a.clone(), g.mul(&a)]) {
            return c;
        }
    }
}

/// Hilbert value at `(1, 1)`: 8 for distinct focal points, at most 6 when they coincide.
pub fn focal_dichotomy() -> Criterion {
    timed(4, "focal point dichotomy", || {
        let same = coincident_pair(4);
        let distinct = random_generic_cameras(2, 9, &mut rng(40));
        // the minors vanish identically when the centers coincide, so use elimination
        let hs = same.multiview_ideal_by_elimination().hilbert_value(&[1, 1]);
        let hd = distinct.multiview_ideal_by_elimination().hilbert_value(&[1, 1]);
        let ok = !same.focal_points_distinct() && distinct.focal_points_distinct() && hs <= 6 && hd == 8;
        (ok, json!({"coincident": hs, "distinct": hd}))
    })
}

fn m3_displayed_primes() -> Vec<MonomialIdeal> {
    let r = Ring::new(3);
    [
        "x1,x2,y1", "x1,x2,y2", "x1,x3,y1", "x1,x3,y3", "x2,x3,y2", "x2,x3,y3", "x1,x2,x3",
    ]
    .iter()
    .map(|s| MonomialIdeal::parse(s, r).unwrap())
    .collect()
}

/// Minimal primes, Borel-fixedness and the shelling of `M_n`.
pub fn prime_decomposition(n_max: usize) -> Criterion {
    timed(5, "prime decomposition and shelling", || {
        let mut ok = true;
        let mut runs = Vec::new();
        for n in 3..=n_max.min(6) {
            let m = gens_m(n);
            let primes = m.minimal_prime_ideals().expect("squarefree");
            let expected = (binomial(n as u64, 3) + 2 * binomial(n as u64, 2)) as usize;
            let borel = m.is_borel_fixed();
            let shelling = if n <= 5 {
                Some(m.stanley_reisner().unwrap().is_shelling(&gin_shelling_order(n)).unwrap())
            } else {
                None
            };
            ok &= primes.len() == expected && borel && shelling != Some(false);
            let mut entry = json!({
                "n": n, "primes": primes.len(), "expected": expected,
                "borel_fixed": borel, "shelling": shelling,
            });
            if n == 3 {
                let mut got: Vec<String> = primes.iter().map(|p| p.to_text()).collect();
                let mut want: Vec<String> = m3_displayed_primes().iter().map(|p| p.to_text()).collect();
                got.sort();
                want.sort();
                ok &= got == want;
                entry["matches_displayed"] = json!(got == want);
            }
            runs.push(entry);
        }
        (ok, json!({ "runs": runs }))
    })
}

/// Toric ideal, Gröbner fan and subdivisions for three toric cameras.
pub fn toric_three() -> Criterion {
    timed(6, "toric fan, three cameras", || {
        let ring = Ring::new(3);
        let ideal = toric::toric_ideal(&toric::cayley_matrix(3).unwrap()).unwrap();
        let shown: Vec<Polynomial<Rational>> = [
            "z1*y3 - x1*z3",
            "z2*x3 - x2*z3",
            "z1*y2 - y1*z2",
            "x1*y2*x3 - y1*x2*y3",
        ]
        .iter()
        .map(|s| Polynomial::parse(s, &ring).unwrap())
        .collect();
        let same = ideal.gens().len() == 4 && ideal.equal(&crate::groebner::IdealPresentation::new(ring, shown));
        let (rep, _) = toric::enumerate(3, toric::node_cap()).unwrap();
        let identity = toric::quadric_intersection_identity();
        let ok = same
            && rep.initial_ideals == 20
            && rep.classes.len() == 3
            && rep.cells_ok
            && rep.expected_cubes == 1
            && rep.expected_prisms == 6
            && identity;
        (
            ok,
            json!({
                "toric_ideal_matches": same,
                "initial_ideals": rep.initial_ideals,
                "classes": rep.classes.len(),
                "cells_ok": rep.cells_ok,
                "quadric_identity": identity,
            }),
        )
    })
}

/// Toric ideal, Gröbner fan, classes and the named ideals for four toric cameras.
pub fn toric_four() -> Criterion {
    timed(7, "toric fan, four cameras", || {
        let ideal = toric::toric_ideal(&toric::cayley_matrix(4).unwrap()).unwrap();
        let degrees: Vec<u32> = ideal.gens().iter().map(|p| p.terms()[0].0.degree()).collect();
        let quadrics = degrees.iter().filter(|&&d| d == 2).count();
        let cubics = degrees.iter().filter(|&&d| d == 3).count();
        let (rep, nodes) = toric::enumerate(4, toric::node_cap()).unwrap();
        let named = toric::named_checks(&rep, &nodes);
        let ok = degrees.len() == 10
            && quadrics == 6
            && cubics == 4
            && rep.initial_ideals == 1002
            && rep.classes.len() == 48
            && rep.cells_ok
            && rep.expected_cubes == 4
            && rep.expected_prisms == 12
            && named.passed();
        (
            ok,
            json!({
                "generators": degrees.len(), "quadrics": quadrics, "cubics": cubics,
                "initial_ideals": rep.initial_ideals, "classes": rep.classes.len(),
                "cells_ok": rep.cells_ok, "named": named,
            }),
        )
    })
}

/// The five degeneration certificates for the collinear family.
pub fn degeneration_chain(n_max: usize) -> Criterion {
    timed(8, "degeneration chain", || {
        let reports: Vec<_> = (2..=n_max.min(5)).map(verify_degeneration).collect();
        let ok = reports.iter().all(|r| r.passed());
        (ok, json!({ "reports": reports }))
    })
}

/// Tangent dimensions at `N_n`, the explicit basis, and the points of `H_2`.
pub fn tangent_dimensions(n_max: usize) -> Criterion {
    timed(9, "tangent dimensions", || {
        let mut ok = true;
        let mut runs = Vec::new();
        for n in 3..=n_max.min(7) {
            let d = tangent_dim(&gens_n(n));
            let basis = tangent_basis_check_n(n);
            ok &= d == 11 * n - 15 && basis.passed();
            runs.push(json!({"n": n, "tangent_dim": d, "expected": 11 * n - 15, "basis": basis}));
        }
        let h2 = census(2);
        let dims: Vec<usize> = h2.members.iter().map(tangent_dim).collect();
        ok &= h2.ideals == 9 && dims.iter().all(|&d| d == 8);
        (ok, json!({"n_runs": runs, "h2_tangent_dims": dims}))
    })
}

/// The census of monomial ideals on `H_3`.
pub fn census_three() -> Criterion {
    timed(10, "census of H_3", || {
        let c = census(3);
        let below = c.classes_below(18);
        let borel: Vec<String> = c
            .members
            .iter()
            .filter(|m| m.is_borel_fixed())
            .map(|m| m.to_text())
            .collect();
        let m3_unique = borel == [gens_m(3).to_text()];
        let generic = random_generic_cameras(3, 9, &mut rng(10)).minors_ideal();
        let generic_init = generic.initial_ideal(&TermOrder::lex(&generic.ring));
        let has_n3 = c.contains(&gens_n(3));
        let has_generic = c.contains(&generic_init);
        let ok = c.ideals == 13_824 && c.classes.len() == 16 && below == 7 && m3_unique && has_n3 && has_generic;
        let dims: Vec<usize> = c.classes.iter().map(|k| k.tangent_dim).collect();
        (
            ok,
            json!({
                "ideals": c.ideals, "classes": c.classes.len(), "classes_below_18": below,
                "class_tangent_dims": dims, "borel_fixed_members": borel,
                "contains_n3": has_n3, "contains_generic_initial": has_generic, "sha256": c.sha256,
            }),
        )
    })
}

/// Rank of fundamental matrices and the toric epipolar form.
pub fn fundamental_matrices() -> Criterion {
    timed(11, "fundamental matrices", || {
        let mut r = rng(11);
        let mut max_rank = 0;
        for _ in 0..100 {
            let c = random_cameras(2, 9, &mut r);
            max_rank = max_rank.max(c.fundamental_matrix(0, 1).rank());
        }
        let ring = Ring::new(4);
        let form = toric_cameras(4).epipolar_form(0, 1);
        let target = Polynomial::<Rational>::parse("z1*y2 - y1*z2", &ring).unwrap();
        let proportional = proportional(&form, &target);
        (
            max_rank <= 2 && proportional,
            json!({"max_rank": max_rank, "toric_form": form.display(&ring), "proportional": proportional}),
        )
    })
}

fn proportional(a: &Polynomial<Rational>, b: &Polynomial<Rational>) -> bool {
    if a.is_zero() || b.is_zero() || a.len() != b.len() {
        return false;
    }
    let (m, c) = &b.terms()[0];
    let ratio = Field::div(&a.coeff(m), c);
    !ratio.is_zero() && b.scale(&ratio) == *a
}

/// Every check, in order.
pub fn run_all(n_max: usize) -> Vec<Criterion> {
    let mut out = vec![
        generic_initial_ideal(n_max),
        universal_basis(n_max),
        hilbert_identities(n_max),
        focal_dichotomy(),
        prime_decomposition(n_max),
        toric_three(),
    ];
    if n_max >= 4 {
        out.push(toric_four());
    }
    out.push(degeneration_chain(n_max));
    out.push(tangent_dimensions(n_max));
    out.push(census_three());
    out.push(fundamental_matrices());
    out
}
