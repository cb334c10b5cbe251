//! Unitary equivalence of two frames generated by the same graph.

use serde::Serialize;

use super::is_g_frame;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::graph::Graph;
use crate::linalg::{spd_power, Matrix, TolerancePolicy};

/// An orthogonal U with U·gᵢ = fᵢ, plus how well both properties hold.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceMap {
    #[serde(serialize_with = "crate::io::serialize_matrix")]
    pub u: Matrix,
    /// max(‖UᵀU − I‖_max, ‖UUᵀ − I‖_max)
    pub max_orth_residual: f64,
    /// max over i of ‖U·gᵢ − fᵢ‖_max
    pub max_map_residual: f64,
}

impl EquivalenceMap {
    pub fn holds(&self, tol: &TolerancePolicy) -> bool {
        self.max_orth_residual <= tol.tau_orth && self.max_map_residual <= tol.tau_recon
    }
}

/// U = S₁⁻²·B·Cᵀ·S₂ mapping the vectors of `second` onto those of `first`.
///
/// B and C are the synthesis matrices and S₁, S₂ the frame operators. Both
/// frames must be generated by `g`; frames generated by different graphs are
/// never unitarily equivalent, so such input is rejected.
pub fn unitary_equivalence_map(
    first: &Frame,
    second: &Frame,
    g: &Graph,
    tol: &TolerancePolicy,
) -> Result<EquivalenceMap> {
    for f in [first, second] {
        let check = is_g_frame(f, g, tol)?;
        if !check.holds {
            return Err(Error::NotGraphFrame(check.residual));
        }
    }
    let b = first.synthesis_matrix();
    let c = second.synthesis_matrix();
    let s1_inv2 = spd_power(&first.frame_operator(), -2.0, tol)?;
    let s2 = second.frame_operator();

    let u = s1_inv2
        .matmul(&b)?
        .matmul(&c.transpose())?
        .matmul(s2.matrix())?;

    let id = Matrix::identity(first.dim());
    let ut = u.transpose();
    let max_orth_residual = ut
        .matmul(&u)?
        .max_abs_diff(&id)?
        .max(u.matmul(&ut)?.max_abs_diff(&id)?);
    let max_map_residual = u.matmul(&c)?.max_abs_diff(&b)?;

    Ok(EquivalenceMap {
        u,
        max_orth_residual,
        max_map_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::super::lg_frame;
    use super::super::tests::{explicit_cycle_frame, explicit_star_frame};
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn identical_frames_give_identity() {
        let g = Graph::cycle(4).unwrap();
        let f = explicit_cycle_frame();
        let m = unitary_equivalence_map(&f, &f, &g, &tol()).unwrap();
        assert!(m.u.max_abs_diff(&Matrix::identity(3)).unwrap() < 1e-10);
        assert!(m.holds(&tol()));
    }

    #[test]
    fn explicit_cycle_frame_vs_rotated_construction() {
        let g = Graph::cycle(4).unwrap();
        let r = lg_frame(&g, &tol())
            .unwrap()
            .with_rotated_eigenbasis(3, &tol())
            .unwrap();
        let m = unitary_equivalence_map(&explicit_cycle_frame(), &r.frame, &g, &tol()).unwrap();
        assert!(m.holds(&tol()), "{m:?}");
    }

    #[test]
    fn star_frame_vs_construction() {
        let g = Graph::star(4).unwrap();
        let r = lg_frame(&g, &tol()).unwrap();
        let m = unitary_equivalence_map(&explicit_star_frame(), &r.frame, &g, &tol()).unwrap();
        assert!(
            m.max_orth_residual < 1e-10 && m.max_map_residual < 1e-10,
            "{m:?}"
        );
    }

    #[test]
    fn cross_graph_input_is_rejected() {
        let c4 = Graph::cycle(4).unwrap();
        let err =
            unitary_equivalence_map(&explicit_cycle_frame(), &explicit_star_frame(), &c4, &tol());
        assert!(matches!(err, Err(Error::NotGraphFrame(_))));
    }
}
