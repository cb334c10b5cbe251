//! Acceptance suite: worked examples, dual families, equivalence, the
//! exhaustive tightness survey, eigenvalue bounds and the eigensolver gate.
//!
//! Runs without the libtest harness so every criterion prints exactly one
//! `PASS`/`FAIL` line; the process exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use graph_frames::survey::graph_from_mask;
use graph_frames::{
    canonical_dual_lg, cluster_distinct, dual_from_shifts, dual_is_in_family, eigh, is_g_frame,
    is_lg_frame, laplacian_bound_check, lg_frame, survey_with, unitary_equivalence_map, DualSpec,
    Execution, Frame, Graph, Matrix, SymmetricMatrix, TolerancePolicy,
};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    lo + (hi - lo) * u
}

fn random_vec(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| uniform(rng, -10.0, 10.0)).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn frames_diff(a: &Frame, b: &Frame) -> f64 {
    a.vectors()
        .iter()
        .zip(b.vectors())
        .map(|(x, y)| max_diff(x, y))
        .fold(0.0, f64::max)
}

/// Connected G(n, p) sample; walks seeds from `seed` until one is connected.
fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    (seed..)
        .map(|s| Graph::random(n, p, s).unwrap())
        .find(|g| g.connected_components().count == 1)
        .unwrap()
}

fn cycle_vectors() -> Frame {
    Frame::new(vec![
        vec![1.0, 1.0, 0.0],
        vec![-1.0, 0.0, 1.0],
        vec![1.0, -1.0, 0.0],
        vec![-1.0, 0.0, -1.0],
    ])
    .unwrap()
}

fn star_vectors() -> Frame {
    Frame::new(vec![
        vec![1.0, 1.0, 1.0],
        vec![-1.0, 0.0, 0.0],
        vec![0.0, -1.0, 0.0],
        vec![0.0, 0.0, -1.0],
    ])
    .unwrap()
}

fn cycle_example() -> Check {
    let tol = tol();
    let g = Graph::cycle(4).map_err(|e| e.to_string())?;
    let r = lg_frame(&g, &tol).map_err(|e| e.to_string())?;

    let spectrum = max_diff(&r.laplacian_spectrum, &[4.0, 2.0, 2.0, 0.0]);
    ensure(spectrum <= 1e-9, || {
        format!("spectrum {:?}", r.laplacian_spectrum)
    })?;
    let s = r
        .frame
        .frame_operator()
        .matrix()
        .max_abs_diff(&Matrix::diag(&[4.0, 2.0, 2.0]))
        .unwrap();
    ensure(s <= 1e-9, || format!("frame operator off by {s:e}"))?;
    let gram = r
        .frame
        .gramian()
        .matrix()
        .max_abs_diff(g.laplacian_matrix().matrix())
        .unwrap();
    ensure(gram <= 1e-9, || format!("gramian off by {gram:e}"))?;

    let f = cycle_vectors();
    let check = is_g_frame(&f, &g, &tol).map_err(|e| e.to_string())?;
    ensure(check.holds, || {
        format!("explicit vectors: residual {:e}", check.residual)
    })?;
    ensure(is_lg_frame(&f, &g, &tol).unwrap(), || {
        "explicit vectors not an L_G frame".into()
    })?;
    Ok(format!(
        "spectrum {spectrum:.1e}, S {s:.1e}, gramian {gram:.1e}"
    ))
}

fn star_example() -> Check {
    let tol = tol();
    let g = Graph::star(4).map_err(|e| e.to_string())?;
    let f = star_vectors();
    let check = is_g_frame(&f, &g, &tol).map_err(|e| e.to_string())?;
    ensure(check.holds && check.residual <= 1e-9, || {
        format!("gramian residual {:e}", check.residual)
    })?;
    ensure(f.dim() == 3 && f.len() == 4, || "wrong shape".into())?;
    ensure(!is_lg_frame(&f, &g, &tol).unwrap(), || {
        "accepted as an L_G frame".into()
    })?;
    Ok(format!("gramian {:.1e}, is_lg_frame false", check.residual))
}

fn canonical_dual() -> Check {
    let tol = tol();
    let g = Graph::cycle(4).unwrap();
    let r = lg_frame(&g, &tol).map_err(|e| e.to_string())?;
    let fast = canonical_dual_lg(&r);
    let generic = r.frame.canonical_dual(&tol).map_err(|e| e.to_string())?;
    let diff = frames_diff(&fast, &generic);
    ensure(diff <= 1e-9, || format!("duals differ by {diff:e}"))?;

    let d: Vec<f64> = r.nonzero_spectrum().iter().map(|m| 1.0 / m).collect();
    let dd = max_diff(&d, &[0.25, 0.5, 0.5]);
    ensure(dd <= 1e-9, || format!("D = {d:?}"))?;
    let inv = r.frame.inverse_frame_operator(&tol).unwrap();
    let di = inv.max_abs_diff(&Matrix::diag(&[0.25, 0.5, 0.5])).unwrap();
    ensure(di <= 1e-9, || {
        format!("S⁻¹ off diag(1/4,1/2,1/2) by {di:e}")
    })?;

    let check = r.frame.verify_dual(&fast, &tol).unwrap();
    ensure(check.holds && check.residual <= 1e-9, || {
        format!("dual residual {:e}", check.residual)
    })?;
    Ok(format!(
        "difference {diff:.1e}, dual residual {:.1e}",
        check.residual
    ))
}

/// 25 valid duals and 25 impostors for one graph frame.
fn dual_trials(f: &Frame, g: &Graph, rng: &mut ChaCha8Rng) -> Result<(f64, f64), String> {
    let tol = tol();
    let p = g.connected_components().count;
    let k = f.dim();
    let mut worst_dual: f64 = 0.0;
    let mut worst_shift: f64 = 0.0;
    for trial in 0..25 {
        let spec = DualSpec {
            shifts: (0..p).map(|_| random_vec(rng, k)).collect(),
        };
        let d = dual_from_shifts(f, g, &spec, &tol).map_err(|e| e.to_string())?;
        let check = f.verify_dual(&d, &tol).unwrap();
        ensure(check.holds && check.residual <= 1e-9, || {
            format!("trial {trial}: dual residual {:e}", check.residual)
        })?;
        let fam = dual_is_in_family(f, g, &d, &tol).unwrap();
        ensure(fam.in_family, || format!("trial {trial}: dual rejected"))?;
        for (got, want) in fam.recovered.shifts.iter().zip(&spec.shifts) {
            let e = max_diff(got, want);
            ensure(e <= 1e-8, || format!("trial {trial}: shift off by {e:e}"))?;
            worst_shift = worst_shift.max(e);
        }
        worst_dual = worst_dual.max(check.residual);

        // Same construction but one vertex gets its own shift.
        let canonical = f.canonical_dual(&tol).unwrap();
        let odd = (rng.next_u64() % g.n() as u64) as usize;
        let label = g.connected_components().label;
        let mut extra = random_vec(rng, k);
        extra[0] += 1.0;
        let vectors = canonical
            .vectors()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let s = &spec.shifts[label[i]];
                v.iter()
                    .zip(s)
                    .zip(&extra)
                    .map(|((x, s), e)| if i == odd { x + s + e } else { x + s })
                    .collect()
            })
            .collect();
        let impostor = Frame::new(vectors).unwrap();
        let fam = dual_is_in_family(f, g, &impostor, &tol).unwrap();
        ensure(!fam.in_family, || format!("impostor {trial} accepted"))?;
    }
    Ok((worst_dual, worst_shift))
}

fn dual_family() -> Check {
    let tol = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let star = Graph::star(4).unwrap();
    let (d1, s1) = dual_trials(&star_vectors(), &star, &mut rng)?;
    let (d2, s2) = dual_trials(&lg_frame(&star, &tol).unwrap().frame, &star, &mut rng)?;

    let k3 = Graph::complete(3).unwrap();
    let two = k3.disjoint_union(&k3);
    let (d3, s3) = dual_trials(&lg_frame(&two, &tol).unwrap().frame, &two, &mut rng)?;

    Ok(format!(
        "dual residual {:.1e}, shift error {:.1e}, impostors rejected",
        d1.max(d2).max(d3),
        s1.max(s2).max(s3)
    ))
}

fn unitary_equivalence() -> Check {
    let tol = tol();
    let mut worst: f64 = 0.0;
    let mut rotated = 0;
    for i in 0..20u64 {
        let n = 3 + (i as usize % 6);
        let g = random_connected(n, 0.5, 1000 * i);
        let base = lg_frame(&g, &tol).map_err(|e| e.to_string())?;
        rotated += base.nonzero_spectrum().len()
            - cluster_distinct(base.nonzero_spectrum(), tol.tau_cluster).len();
        for v in 0..3 {
            let other = base
                .with_rotated_eigenbasis(i * 10 + v, &tol)
                .map_err(|e| e.to_string())?;
            let m = unitary_equivalence_map(&base.frame, &other.frame, &g, &tol)
                .map_err(|e| e.to_string())?;
            let r = m.max_orth_residual.max(m.max_map_residual);
            ensure(r <= 1e-8, || {
                format!("graph {i} variant {v}: residual {r:e}")
            })?;
            worst = worst.max(r);
        }
    }
    // complete graphs have one fully degenerate eigenspace
    for n in [4, 6] {
        let g = Graph::complete(n).unwrap();
        let base = lg_frame(&g, &tol).unwrap();
        for v in 0..3 {
            let other = base.with_rotated_eigenbasis(v, &tol).unwrap();
            let m = unitary_equivalence_map(&base.frame, &other.frame, &g, &tol).unwrap();
            let r = m.max_orth_residual.max(m.max_map_residual);
            ensure(r <= 1e-8, || format!("K{n} variant {v}: residual {r:e}"))?;
            worst = worst.max(r);
        }
    }
    Ok(format!(
        "max residual {worst:.1e} ({rotated} repeated eigenvalues among random graphs)"
    ))
}

fn tightness_survey() -> Check {
    let report = survey_with(5, &tol(), Execution::Sequential).map_err(|e| e.to_string())?;
    let row = report.row(5).ok_or("no row for n = 5")?;
    ensure(row.graphs == 1023, || {
        format!("{} graphs at n = 5", row.graphs)
    })?;
    ensure(report.violations == 0, || {
        let per: Vec<_> = report.rows.iter().map(|r| (r.n, r.violations)).collect();
        format!("violations {per:?}")
    })?;
    ensure(row.connected_tight_masks == [1023], || {
        format!("connected tight masks {:?}", row.connected_tight_masks)
    })?;
    ensure(
        graph_from_mask(5, 1023).unwrap() == Graph::complete(5).unwrap(),
        || "mask 1023 is not K5".into(),
    )?;
    Ok(format!(
        "{} graphs at n = 5 ({} for n <= 5), 0 violations, connected tight = K5 only",
        row.graphs, report.total_graphs
    ))
}

fn eigenvalue_bounds() -> Check {
    let tol = tol();
    let mut min_slack = f64::INFINITY;
    let mut count = 0;
    for n in 2..=5usize {
        let pairs = n * (n - 1) / 2;
        for mask in 1..(1u64 << pairs) {
            let g = graph_from_mask(n, mask).unwrap();
            let b = laplacian_bound_check(&g, &tol).map_err(|e| e.to_string())?;
            ensure(b.min_slack() >= -1e-9, || {
                format!("n={n} mask={mask}: {b:?}")
            })?;
            min_slack = min_slack.min(b.min_slack());
            count += 1;
        }
    }
    for i in 0..50u64 {
        let n = 2 + (i as usize % 29);
        let g = random_connected(n, 0.35, 7000 + 100 * i);
        let b = laplacian_bound_check(&g, &tol).map_err(|e| e.to_string())?;
        ensure(b.connectivity.is_some(), || {
            format!("random graph {i} not connected")
        })?;
        ensure(b.min_slack() >= -1e-9, || {
            format!("random graph {i}: {b:?}")
        })?;
        min_slack = min_slack.min(b.min_slack());
        count += 1;
    }
    Ok(format!("{count} graphs, min slack {min_slack:.1e}"))
}

fn tight_implies_uniform() -> Check {
    let tol = tol();
    let mut tight = 0;
    let mut worst: f64 = 0.0;
    for n in 2..=5usize {
        let pairs = n * (n - 1) / 2;
        for mask in 1..(1u64 << pairs) {
            let g = graph_from_mask(n, mask).unwrap();
            if g.has_null_vertex() {
                continue;
            }
            let r = lg_frame(&g, &tol).unwrap();
            let Some(alpha) = r.frame.tight_bound(&tol) else {
                continue;
            };
            tight += 1;
            let deg = g
                .regularity()
                .ok_or_else(|| format!("mask {mask}: tight but irregular"))?;
            let c = (deg as f64).sqrt();
            for norm in r.frame.norms() {
                ensure((norm - c).abs() <= 1e-8, || {
                    format!("n={n} mask={mask}: norm {norm}")
                })?;
                worst = worst.max((norm - c).abs());
            }

            let a = alpha.round() as usize;
            ensure((alpha - a as f64).abs() <= 1e-8 && a == deg + 1, || {
                format!("n={n} mask={mask}: alpha {alpha}")
            })?;
            let adj = eigh(&g.adjacency_matrix(), &tol).unwrap();
            let clusters = cluster_distinct(&adj.values, tol.tau_cluster);
            let (top, bottom) = (n * (a - deg), n * deg);
            ensure(top % a == 0 && bottom % a == 0, || {
                format!("mask {mask}: fractional multiplicity")
            })?;
            let want = [(deg as f64, top / a), (deg as f64 - alpha, bottom / a)];
            ensure(clusters.len() == 2, || {
                format!("n={n} mask={mask}: {clusters:?}")
            })?;
            for ((v, m), (wv, wm)) in clusters.iter().zip(want) {
                ensure((v - wv).abs() <= 1e-8 && *m == wm, || {
                    format!("n={n} mask={mask}: {clusters:?}, want {want:?}")
                })?;
            }
        }
    }
    ensure(tight > 0, || "no tight graphs found".into())?;
    Ok(format!("{tight} tight graphs, max norm error {worst:.1e}"))
}

fn eigensolver_gate() -> Check {
    let tol = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut orth, mut recon, mut trace): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..100 {
        let n = 1 + i % 12;
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in r..n {
                let v = uniform(&mut rng, -5.0, 5.0);
                m[(r, c)] = v;
                m[(c, r)] = v;
            }
        }
        let tr = m.trace();
        let a = SymmetricMatrix::new(m).unwrap();
        let e = eigh(&a, &tol).map_err(|e| e.to_string())?;
        let o = e.orthogonality_residual();
        let rr = e.reconstruction_residual(&a);
        let t = (e.values.iter().sum::<f64>() - tr).abs() / tr.abs().max(1.0);
        ensure(o <= 1e-10 && rr <= 1e-10 && t <= 1e-9, || {
            format!("matrix {i} (n={n}): orth {o:e}, recon {rr:e}, trace {t:e}")
        })?;
        orth = orth.max(o);
        recon = recon.max(rr);
        trace = trace.max(t);
    }
    Ok(format!(
        "orth {orth:.1e}, recon {recon:.1e}, trace {trace:.1e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "4-cycle example",
            cycle_example,
            Some(Duration::from_secs(1)),
        ),
        ("star example", star_example, Some(Duration::from_secs(1))),
        ("canonical dual", canonical_dual, None),
        ("dual family", dual_family, Some(Duration::from_secs(5))),
        (
            "unitary equivalence",
            unitary_equivalence,
            Some(Duration::from_secs(10)),
        ),
        (
            "tightness survey n <= 5",
            tightness_survey,
            Some(Duration::from_secs(60)),
        ),
        (
            "eigenvalue bounds",
            eigenvalue_bounds,
            Some(Duration::from_secs(30)),
        ),
        ("tight implies uniform", tight_implies_uniform, None),
        ("eigensolver gate", eigensolver_gate, None),
    ];

    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
