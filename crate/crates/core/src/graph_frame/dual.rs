//! Dual frames of graph-generated frames.
//!
//! For a frame F generated by G the duals are exactly {S⁻¹fᵢ + ν_c(i)},
//! where c(i) is the component of vertex i and the ν are arbitrary vectors,
//! one per component. A shift that varies inside a component breaks the
//! reconstruction identity, since the frame vectors of a component sum to
//! zero only over the whole component.

use serde::Serialize;

use super::{is_g_frame, LgFrameResult};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::graph::Graph;
use crate::linalg::TolerancePolicy;

/// One shift vector per connected component, indexed by component id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualSpec {
    pub shifts: Vec<Vec<f64>>,
}

impl DualSpec {
    /// All-zero shifts, which select the canonical dual.
    pub fn zero(components: usize, dim: usize) -> Self {
        DualSpec {
            shifts: vec![vec![0.0; dim]; components],
        }
    }
}

/// Outcome of [`dual_is_in_family`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyCheck {
    pub in_family: bool,
    /// Per-component mean of gᵢ − S⁻¹fᵢ.
    pub recovered: DualSpec,
    /// Largest deviation of gᵢ − S⁻¹fᵢ from its component mean.
    pub constancy_residual: f64,
    pub dual_residual: f64,
}

/// {D·fᵢ} with D = diag(1/μ₁,…,1/μ_k); the frame operator of an L_G frame
/// is diagonal so no inversion is needed.
pub fn canonical_dual_lg(r: &LgFrameResult) -> Frame {
    let inv: Vec<f64> = r.nonzero_spectrum().iter().map(|mu| 1.0 / mu).collect();
    let vectors = r
        .frame
        .vectors()
        .iter()
        .map(|v| v.iter().zip(&inv).map(|(x, d)| x * d).collect())
        .collect();
    Frame::new(vectors).expect("same shape as the frame")
}

/// gᵢ = S⁻¹fᵢ + ν_c(i).
pub fn dual_from_shifts(
    f: &Frame,
    g: &Graph,
    spec: &DualSpec,
    tol: &TolerancePolicy,
) -> Result<Frame> {
    let check = is_g_frame(f, g, tol)?;
    if !check.holds {
        return Err(Error::NotGraphFrame(check.residual));
    }
    let components = g.connected_components();
    if spec.shifts.len() != components.count {
        return Err(Error::ShiftCountMismatch {
            expected: components.count,
            got: spec.shifts.len(),
        });
    }
    if let Some(bad) = spec.shifts.iter().position(|s| s.len() != f.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "shift {bad} has dimension {}, frame lives in dimension {}",
            spec.shifts[bad].len(),
            f.dim()
        )));
    }
    let canonical = f.canonical_dual(tol)?;
    let vectors = canonical
        .vectors()
        .iter()
        .zip(&components.label)
        .map(|(v, &c)| v.iter().zip(&spec.shifts[c]).map(|(x, s)| x + s).collect())
        .collect();
    Frame::new(vectors)
}

/// Recovers the shifts gᵢ − S⁻¹fᵢ and reports whether they are constant on
/// each component and the candidate really is a dual.
pub fn dual_is_in_family(
    f: &Frame,
    g: &Graph,
    candidate: &Frame,
    tol: &TolerancePolicy,
) -> Result<FamilyCheck> {
    if f.len() != g.n() || candidate.len() != f.len() || candidate.dim() != f.dim() {
        return Err(Error::DimensionMismatch(format!(
            "graph has {} vertices, frame is {}x{}, candidate is {}x{}",
            g.n(),
            f.len(),
            f.dim(),
            candidate.len(),
            candidate.dim()
        )));
    }
    let canonical = f.canonical_dual(tol)?;
    let partition = g.connected_components();
    let k = f.dim();

    let h: Vec<Vec<f64>> = candidate
        .vectors()
        .iter()
        .zip(canonical.vectors())
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
        .collect();

    let mut shifts = Vec::with_capacity(partition.count);
    let mut constancy_residual: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for members in partition.members() {
        let mut mean = vec![0.0; k];
        for &v in &members {
            for (m, x) in mean.iter_mut().zip(&h[v]) {
                *m += x;
            }
        }
        mean.iter_mut().for_each(|m| *m /= members.len() as f64);
        for &v in &members {
            for (m, x) in mean.iter().zip(&h[v]) {
                constancy_residual = constancy_residual.max((m - x).abs());
                scale = scale.max(x.abs());
            }
        }
        shifts.push(mean);
    }

    let dual = f.verify_dual(candidate, tol)?;
    let constant = constancy_residual <= tol.tau_recon * scale;
    Ok(FamilyCheck {
        in_family: constant && dual.holds,
        recovered: DualSpec { shifts },
        constancy_residual,
        dual_residual: dual.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::explicit_star_frame;
    use super::super::{is_g_frame, lg_frame};
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn canonical_dual_of_cycle_uses_inverse_spectrum() {
        let g = Graph::cycle(4).unwrap();
        let r = lg_frame(&g, &tol()).unwrap();
        let fast = canonical_dual_lg(&r);
        let generic = r.frame.canonical_dual(&tol()).unwrap();
        for (a, b) in fast.vectors().iter().zip(generic.vectors()) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
        let d: Vec<f64> = r.nonzero_spectrum().iter().map(|m| 1.0 / m).collect();
        for (x, want) in d.iter().zip([0.25, 0.5, 0.5]) {
            assert!((x - want).abs() < 1e-12);
        }
    }

    #[test]
    fn canonical_dual_small_cases() {
        let r = lg_frame(&Graph::complete(2).unwrap(), &tol()).unwrap();
        let d = canonical_dual_lg(&r);
        for (g, f) in d.vectors().iter().zip(r.frame.vectors()) {
            assert!((g[0] - f[0] / 2.0).abs() < 1e-14);
            assert!((g[0].abs() - 0.5).abs() < 1e-14);
        }
        let r = lg_frame(&Graph::complete(4).unwrap(), &tol()).unwrap();
        let d = canonical_dual_lg(&r);
        for (g, f) in d.vectors().iter().zip(r.frame.vectors()) {
            for (x, y) in g.iter().zip(f) {
                assert!((x - y / 4.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_shifts_give_canonical_dual() {
        let g = Graph::star(4).unwrap();
        let f = explicit_star_frame();
        let d = dual_from_shifts(&f, &g, &DualSpec::zero(1, 3), &tol()).unwrap();
        assert_eq!(d, f.canonical_dual(&tol()).unwrap());
        let fam = dual_is_in_family(&f, &g, &d, &tol()).unwrap();
        assert!(fam.in_family);
        assert!(fam.recovered.shifts[0].iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn star_with_shift() {
        let g = Graph::star(4).unwrap();
        let f = explicit_star_frame();
        let spec = DualSpec {
            shifts: vec![vec![7.0, -1.0, 2.0]],
        };
        let d = dual_from_shifts(&f, &g, &spec, &tol()).unwrap();
        let check = f.verify_dual(&d, &tol()).unwrap();
        assert!(check.holds, "{check:?}");
        let fam = dual_is_in_family(&f, &g, &d, &tol()).unwrap();
        assert!(fam.in_family);
        for (x, y) in fam.recovered.shifts[0].iter().zip(&spec.shifts[0]) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn shifts_must_be_constant_per_component() {
        let g = Graph::complete(3)
            .unwrap()
            .disjoint_union(&Graph::complete(3).unwrap());
        let r = lg_frame(&g, &tol()).unwrap();
        let spec = DualSpec {
            shifts: vec![vec![1.0, -2.0, 0.5, 3.0], vec![-4.0, 0.0, 2.0, 1.0]],
        };
        let d = dual_from_shifts(&r.frame, &g, &spec, &tol()).unwrap();
        assert!(r.frame.verify_dual(&d, &tol()).unwrap().holds);

        // apply ν₁ to only two of component 0's three vectors
        let canonical = r.frame.canonical_dual(&tol()).unwrap();
        let mut partial = canonical.into_vectors();
        for v in [0, 1] {
            for (x, s) in partial[v].iter_mut().zip(&spec.shifts[0]) {
                *x += s;
            }
        }
        let partial = Frame::new(partial).unwrap();
        let check = r.frame.verify_dual(&partial, &tol()).unwrap();
        assert!(!check.holds && check.residual > 0.1, "{check:?}");
        let fam = dual_is_in_family(&r.frame, &g, &partial, &tol()).unwrap();
        assert!(!fam.in_family);
    }

    #[test]
    fn perturbed_vector_leaves_the_family() {
        let g = Graph::star(4).unwrap();
        let f = explicit_star_frame();
        let mut v = f.canonical_dual(&tol()).unwrap().into_vectors();
        v[1][0] += 1.0;
        let fam = dual_is_in_family(&f, &g, &Frame::new(v).unwrap(), &tol()).unwrap();
        assert!(!fam.in_family);
        assert!(fam.constancy_residual > 0.5);
    }

    #[test]
    fn argument_errors() {
        let g = Graph::star(4).unwrap();
        let f = explicit_star_frame();
        assert_eq!(
            dual_from_shifts(&f, &g, &DualSpec::zero(2, 3), &tol()),
            Err(Error::ShiftCountMismatch {
                expected: 1,
                got: 2
            })
        );
        assert!(matches!(
            dual_from_shifts(&f, &g, &DualSpec::zero(1, 2), &tol()),
            Err(Error::DimensionMismatch(_))
        ));
        let c4 = Graph::cycle(4).unwrap();
        assert!(!is_g_frame(&f, &c4, &tol()).unwrap().holds);
        assert!(matches!(
            dual_from_shifts(&f, &c4, &DualSpec::zero(1, 3), &tol()),
            Err(Error::NotGraphFrame(_))
        ));
    }
}
