//! One check per advertised capability. Every test prints a single verdict
//! line carrying its pinned tolerances; run with `-- --nocapture` to see
//! the lines for passing checks as well.

use std::f64::consts::PI;
use std::time::Instant;

use trimass::construct::{construct_float, construct_standard, reference_l, reference_t};
use trimass::dubiner::{edge_trace, triangle_rule, BasisKind, Edge, RefPoint, ReferenceBasis};
use trimass::exact::{
    edge_hatted_polys, monomial_integral, rat_rank, rat_to_f64, vertex_hatted_polys, Rat, RatPoly2,
};
use trimass::jacobi::{gauss_jacobi_rule, jacobi_eval, JacobiParams};
use trimass::mesh::{assemble, assemble_load, exact_mass_project, project, staged_solve, Mesh};
use trimass::nonexistence::certify;
use trimass_cli::random_quadratic;

fn cosine(x: f64, y: f64) -> f64 {
    1.0 + (PI * x).cos() + (PI * y).sin()
}

fn join(parts: impl Iterator<Item = String>) -> String {
    parts.collect::<Vec<_>>().join("/")
}

#[test]
fn criterion_1_construction_fidelity() {
    let start = Instant::now();
    let built = construct_standard().unwrap();
    let exact_ok = *built.l() == reference_l() && *built.t() == reference_t();
    let float_ops = construct_float(1.0).unwrap();
    let exact_ops = built.to_operators();
    let float_dev = float_ops
        .l
        .max_abs_diff(&exact_ops.l)
        .max(float_ops.t.max_abs_diff(&exact_ops.t));
    let elapsed = start.elapsed().as_secs_f64();

    let pass = exact_ok && float_dev <= 1e-12 && elapsed < 1.0;
    println!(
        "acceptance 1 (construction fidelity): {}; rational L and T {} the embedded \
         reference entrywise; float route deviation {float_dev:.2e} (tol 1e-12); \
         {elapsed:.2} s (limit 1 s)",
        if pass { "pass" } else { "FAIL" },
        if exact_ok { "equal" } else { "DIFFER FROM" },
    );
    assert!(pass);
}

#[test]
fn criterion_2_quadratic_exactness() {
    let start = Instant::now();
    let ops = construct_standard().unwrap().to_operators();
    let rule = triangle_rule(6).unwrap();
    let mut meshes = vec![Mesh::new(
        vec![(-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)],
        vec![[0, 1, 2]],
    )
    .unwrap()];
    for n in [1, 2, 4, 8] {
        meshes.push(Mesh::structured(n).unwrap());
    }
    let mut worst = 0.0f64;
    for seed in 0..100 {
        let c = random_quadratic(seed);
        let f = move |x: f64, y: f64| {
            c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y
        };
        for mesh in &meshes {
            let field = project(mesh, &ops, f, 5).unwrap();
            worst = worst.max(field.l2_error(f, &rule).unwrap());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst <= 1e-10 && elapsed < 10.0;
    println!(
        "acceptance 2 (quadratic exactness): {}; 100 seeded quadratics on the reference \
         element and meshes n in {{1,2,4,8}}, worst L2 error {worst:.2e} (tol 1e-10); \
         {elapsed:.2} s (limit 10 s)",
        if pass { "pass" } else { "FAIL" },
    );
    assert!(pass);
}

#[test]
fn criterion_3_refinement_study() {
    let start = Instant::now();
    let ops = construct_standard().unwrap().to_operators();
    let rule = triangle_rule(6).unwrap();
    // level k runs the structured mesh with cell size h = 2^-(k+1); the
    // slope bands bind on levels 1..4, level 5 exercises runtime headroom
    let mut errors = Vec::new();
    for k in 1..=5usize {
        let mesh = Mesh::structured(1 << (k + 2)).unwrap();
        let field = project(&mesh, &ops, cosine, 6).unwrap();
        errors.push(field.l2_error(cosine, &rule).unwrap());
    }
    let elapsed = start.elapsed().as_secs_f64();
    let slopes: Vec<f64> = errors
        .windows(2)
        .map(|w| (w[1] / w[0]).ln() / 0.5f64.ln())
        .collect();

    let reference_errors = [4.0e-3, 5.3e-4, 6.8e-5, 8.6e-6];
    let reference_slopes = [2.6, 2.8, 2.9];
    let mut failures: Vec<String> = Vec::new();
    for (i, &reference) in reference_errors.iter().enumerate() {
        let ratio = errors[i] / reference;
        if !(0.5..=2.0).contains(&ratio) {
            failures.push(format!(
                "level {} error {:.3e} outside factor 2 of reference {:.1e}",
                i + 1,
                errors[i],
                reference
            ));
        }
    }
    for (i, &reference) in reference_slopes.iter().enumerate() {
        if (slopes[i] - reference).abs() > 0.15 {
            failures.push(format!(
                "slope {} measured {:.3} vs reference {:.1} (band +-0.15)",
                i + 1,
                slopes[i],
                reference
            ));
        }
    }
    if elapsed >= 120.0 {
        failures.push(format!("runtime {elapsed:.1} s exceeds 120 s"));
    }

    let implied: Vec<f64> = reference_errors
        .windows(2)
        .map(|w| (w[1] / w[0]).ln() / 0.5f64.ln())
        .collect();
    println!(
        "acceptance 3 (refinement study): {}; measured errors {} vs reference \
         4.0e-3/5.3e-4/6.8e-5/8.6e-6 (factor-2 bands), measured slopes {} vs reference \
         slope row 2.6/2.8/2.9 (+-0.15); {elapsed:.1} s through h = 2^-6 (limit 120 s)",
        if failures.is_empty() { "pass" } else { "FAIL" },
        join(errors.iter().map(|e| format!("{e:.3e}"))),
        join(slopes.iter().take(3).map(|s| format!("{s:.2}"))),
    );
    println!(
        "note: the reference slope row is inconsistent with the reference error row; \
         those errors imply slopes {} under the stated slope formula, matching the \
         measurement, while the measured errors match the reference errors to their \
         printed precision",
        join(implied.iter().map(|s| format!("{s:.2}"))),
    );
    println!(
        "note: measured level-5 error {:.3e} supports reading the reference table's \
         1.1e-7 as a misprint of 1.1e-6 (its slope cell prints 3.0, implying 6.3)",
        errors[4],
    );
    assert!(
        failures.is_empty(),
        "refinement study deviations (see the notes printed above): {failures:?}"
    );
}

#[test]
fn criterion_4_square_system_certificates() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for p in 2..=7usize {
        let cert = certify(p).unwrap();
        let expected = p * (p - 1) / 2;
        let ok = cert.rows == expected
            && cert.cols == expected
            && cert.weighted_spd
            && cert.min_singular_value > 1e-10 * cert.norm
            && (p > 6 || cert.factor_residual <= 1e-10)
            && cert.pass;
        pass &= ok;
        lines.push(format!(
            "p={p} {} sv {:.1e}",
            if ok { "ok" } else { "BAD" },
            cert.min_singular_value
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 30.0;
    println!(
        "acceptance 4 (square-system certificates): {}; degrees 2..7: index counts \
         p(p-1)/2, weighted Gram SPD, min singular value > 1e-10 * norm, factorization \
         residual <= 1e-10 through degree 6 [{}]; {elapsed:.2} s (limit 30 s)",
        if pass { "pass" } else { "FAIL" },
        lines.join(", "),
    );
    assert!(pass);
}

fn orthogonality_suite() -> Result<(), String> {
    for (alpha, beta) in [(0.0, 0.0), (1.0, 0.0), (2.0, 2.0), (7.0, 2.0)] {
        let params = JacobiParams::new(alpha, beta).unwrap();
        let rule = gauss_jacobi_rule(10, params).unwrap();
        let norms: Vec<f64> = (0..=8)
            .map(|n| rule.integrate(|x| jacobi_eval(params, n, x).powi(2)))
            .collect();
        for n in 0..=8usize {
            for m in 0..n {
                let cross =
                    rule.integrate(|x| jacobi_eval(params, m, x) * jacobi_eval(params, n, x));
                if cross.abs() > 1e-12 * (norms[m] * norms[n]).sqrt() {
                    return Err(format!("({alpha}, {beta}) orders ({m}, {n}): {cross:.2e}"));
                }
            }
        }
    }
    Ok(())
}

fn monomial_suite() -> Result<(), String> {
    for q in 3..=8usize {
        let rule = triangle_rule(q).unwrap();
        for total in 0..=(2 * q - 2) {
            for a in 0..=total {
                let b = total - a;
                let quad: f64 = rule
                    .points
                    .iter()
                    .zip(&rule.weights)
                    .map(|(pt, w)| w * pt.r.powi(a as i32) * pt.s.powi(b as i32))
                    .sum();
                let exact = rat_to_f64(&monomial_integral(a as u32, b as u32));
                if (quad - exact).abs() > 1e-12 * exact.abs().max(1.0) {
                    return Err(format!("q={q} monomial r^{a} s^{b}: {quad} vs {exact}"));
                }
            }
        }
    }
    Ok(())
}

fn trace_suite() -> Result<(), String> {
    let samples: Vec<f64> = (0..200).map(|i| -0.999 + 1.998 * i as f64 / 199.0).collect();
    for p in 1..=6usize {
        let basis = ReferenceBasis::new(p).unwrap();
        for &t in &samples {
            for edge in Edge::ALL {
                let (r, s) = edge.point(t);
                let pt = RefPoint::new(r, s);
                let values = basis.eval(pt).unwrap();
                for (kind, value) in basis.kinds().iter().zip(&values) {
                    let expected = match *kind {
                        BasisKind::Vertex(v) => {
                            if v == edge.opposite() {
                                0.0
                            } else if v == edge.start() {
                                (1.0 - t) / 2.0
                            } else {
                                (1.0 + t) / 2.0
                            }
                        }
                        BasisKind::Edge { edge: own, mode } => {
                            if own == edge {
                                edge_trace(mode, t)
                            } else {
                                0.0
                            }
                        }
                        BasisKind::Interior { .. } => 0.0,
                    };
                    if (value - expected).abs() > 1e-12 {
                        return Err(format!("p={p} {kind:?} on {edge:?} at t={t:.3}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn exact_gram(polys: &[RatPoly2]) -> Vec<Vec<Rat>> {
    let n = polys.len();
    let mut gram = vec![vec![trimass::exact::rat_int(0); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let entry = polys[i].mul(&polys[j]).integrate_ref();
            gram[i][j] = entry.clone();
            gram[j][i] = entry;
        }
    }
    gram
}

fn factored_family_suite() -> Result<(), String> {
    for p in 2..=5usize {
        let expected = p * (p - 1) / 2;
        for (name, polys) in [
            ("vertex-divided", vertex_hatted_polys(p)),
            ("edge-divided", edge_hatted_polys(p)),
        ] {
            let rank = rat_rank(&exact_gram(&polys));
            if rank != expected {
                return Err(format!("{name} family at p={p}: rank {rank} of {expected}"));
            }
        }
    }
    Ok(())
}

fn staged_dense_suite() -> Result<(), String> {
    let ops = construct_standard().unwrap().to_operators();
    let rule = triangle_rule(6).unwrap();
    for n in 1..=4usize {
        let mesh = Mesh::structured(n).unwrap();
        let sys = assemble(&mesh, &ops).unwrap();
        let b = sys
            .t
            .matvec(&assemble_load(&mesh, &sys.dofs, &rule, cosine).unwrap());
        let staged = staged_solve(&sys.l, &sys.dofs, &b).unwrap();
        let dense = sys.l.to_dense().solve(&b).unwrap();
        let worst = staged
            .iter()
            .zip(&dense)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        if worst > 1e-12 {
            return Err(format!("n={n}: staged vs dense {worst:.2e}"));
        }
    }
    Ok(())
}

fn continuity_suite() -> Result<(), String> {
    let ops = construct_standard().unwrap().to_operators();
    let mesh = Mesh::structured(2).unwrap();
    let field = project(&mesh, &ops, cosine, 6).unwrap();
    let mut users: Vec<Vec<(usize, Edge)>> = vec![Vec::new(); mesh.n_edges()];
    for t in 0..mesh.n_triangles() {
        for local in Edge::ALL {
            users[mesh.edge_use(t, local).edge].push((t, local));
        }
    }
    for edge_users in users.iter().filter(|u| u.len() == 2) {
        let (t0, local0) = edge_users[0];
        let (t1, _) = edge_users[1];
        for i in 0..10 {
            let t = -0.9 + 0.2 * i as f64;
            let (r, s) = local0.point(t);
            let pt0 = RefPoint::new(r, s);
            let phys = mesh.map_to_physical(t0, pt0);
            let lambda = mesh.barycentric(t1, phys.x, phys.y);
            let pt1 = RefPoint::new(2.0 * lambda[2] - 1.0, 2.0 * lambda[0] - 1.0);
            let v0 = field.eval_in_element(t0, pt0).unwrap();
            let v1 = field.eval_in_element(t1, pt1).unwrap();
            if (v0 - v1).abs() > 1e-10 {
                return Err(format!("elements {t0}/{t1} at t={t:.1}: {v0} vs {v1}"));
            }
        }
    }
    Ok(())
}

fn witness_suite() -> Result<(), String> {
    let ops = construct_standard().unwrap().to_operators();
    let mesh = Mesh::new(vec![(-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)], vec![[0, 1, 2]]).unwrap();
    let cubic = |x: f64, _: f64| x * x * x;
    let rule = triangle_rule(7).unwrap();
    let staged_err = project(&mesh, &ops, cubic, 7)
        .unwrap()
        .l2_error(cubic, &rule)
        .unwrap();
    if staged_err <= 1e-6 {
        return Err(format!("cubic witness error only {staged_err:.2e}"));
    }
    let mass_err = exact_mass_project(&mesh, cubic, 7)
        .unwrap()
        .l2_error(cubic, &rule)
        .unwrap();
    if mass_err > 1e-10 {
        return Err(format!("mass-route cubic error {mass_err:.2e}"));
    }
    Ok(())
}

#[test]
fn criterion_5_property_suites() {
    let start = Instant::now();
    let suites: [(&str, fn() -> Result<(), String>); 7] = [
        ("orthogonality <=1e-12", orthogonality_suite),
        ("monomials to 2q-2 <=1e-12", monomial_suite),
        ("traces at 200 samples <=1e-12", trace_suite),
        ("divided families full rank p=2..5", factored_family_suite),
        ("staged vs dense <=1e-12 n<=4", staged_dense_suite),
        ("edge continuity <=1e-10", continuity_suite),
        ("cubic witness >1e-6", witness_suite),
    ];
    let mut failures = Vec::new();
    let mut verdicts = Vec::new();
    for (name, suite) in suites {
        match suite() {
            Ok(()) => verdicts.push(format!("{name}: ok")),
            Err(detail) => {
                verdicts.push(format!("{name}: BAD"));
                failures.push(format!("{name}: {detail}"));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "acceptance 5 (property suites): {}; [{}]; {elapsed:.2} s",
        if failures.is_empty() { "pass" } else { "FAIL" },
        verdicts.join(", "),
    );
    assert!(failures.is_empty(), "{failures:?}");
}
