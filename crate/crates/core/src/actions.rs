//! Actions and coactions induced by a homomorphism, their invariant and
//! stabilized objects, and smallness.
//!
//! An action tensor is stored by its slices over a basis of the acting bimonoid
//! `A`. For an action the slice `k` is `x ↦ e_k·x` (left) or `x ↦ x·e_k` (right).
//! For a coaction `β` it is `(δ_k⊗id)β` (left) or `(id⊗δ_k)β` (right), with `δ_k`
//! the dual basis. The trivial (co)action has slices `ε(e_k)·id` or `η_k·id`.
//!
//! The invariant object is always the equalizer of `β` and the trivial one, a
//! subspace of the carrier. The stabilized object is always the coequalizer,
//! a quotient of the carrier.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{null_space_of_rows, invert, Matrix, Quotient, Scalar, Subspace};
use crate::hopfcore::{FinBimonoid, LinMap};
use crate::integrals::{normalized_cointegral, normalized_integral};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionSide {
    LeftAction,
    RightAction,
    LeftCoaction,
    RightCoaction,
}

impl ActionSide {
    pub fn is_coaction(self) -> bool {
        matches!(self, ActionSide::LeftCoaction | ActionSide::RightCoaction)
    }

    pub fn is_left(self) -> bool {
        matches!(self, ActionSide::LeftAction | ActionSide::LeftCoaction)
    }
}

/// The four (co)actions attached to `ξ: A → B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomAction {
    /// `∇_B(ξ⊗id)`: `A` acts on `B` from the left.
    AlphaLeft,
    /// `∇_B(id⊗ξ)`: `A` acts on `B` from the right.
    AlphaRight,
    /// `(ξ⊗id)Δ_A`: `B` coacts on `A` from the left.
    BetaLeft,
    /// `(id⊗ξ)Δ_A`: `B` coacts on `A` from the right.
    BetaRight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTensor {
    acting: Arc<FinBimonoid>,
    carrier_dim: usize,
    side: ActionSide,
    slices: Vec<Matrix>,
}

impl ActionTensor {
    pub fn new(acting: Arc<FinBimonoid>, side: ActionSide, slices: Vec<Matrix>) -> Result<Self> {
        if slices.len() != acting.dim() {
            return Err(Error::ShapeMismatch(format!("{} slices for a {}-dimensional bimonoid", slices.len(), acting.dim())));
        }
        let carrier_dim = slices.first().map_or(0, Matrix::rows);
        if slices.iter().any(|s| s.shape() != (carrier_dim, carrier_dim) || s.field() != acting.field()) {
            return Err(Error::ShapeMismatch("action slices must be square of one size".into()));
        }
        Ok(ActionTensor { acting, carrier_dim, side, slices })
    }

    /// The trivial left action of `acting` on an `n`-dimensional space.
    pub fn trivial(acting: Arc<FinBimonoid>, n: usize) -> Self {
        let id = Matrix::identity(acting.field(), n);
        let slices = acting.counit().iter().map(|e| id.scale(e)).collect();
        ActionTensor { acting, carrier_dim: n, side: ActionSide::LeftAction, slices }
    }

    pub fn acting(&self) -> &Arc<FinBimonoid> {
        &self.acting
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn side(&self) -> ActionSide {
        self.side
    }

    pub fn slices(&self) -> &[Matrix] {
        &self.slices
    }

    /// The structure map: `n × (a·n)` for actions ordered as `A⊗X` or `X⊗A`,
    /// `(a·n) × n` for coactions into `A⊗X` or `X⊗A`.
    pub fn matrix(&self) -> Matrix {
        let (a, n, field) = (self.acting.dim(), self.carrier_dim, self.acting.field());
        let acting_first = self.side.is_left();
        if self.side.is_coaction() {
            Matrix::from_fn(field, a * n, n, |r, c| {
                let (k, x) = if acting_first { (r / n, r % n) } else { (r % a, r / a) };
                self.slices[k].get(x, c).clone()
            })
        } else {
            Matrix::from_fn(field, n, a * n, |r, c| {
                let (k, x) = if acting_first { (c / n, c % n) } else { (c % a, c / a) };
                self.slices[k].get(r, x).clone()
            })
        }
    }

    fn trivial_weights(&self) -> &[Scalar] {
        if self.side.is_coaction() {
            self.acting.unit()
        } else {
            self.acting.counit()
        }
    }

    /// `slice_k − τ_k`, the differences whose kernels and images define the
    /// invariant and stabilized objects.
    fn differences(&self) -> impl Iterator<Item = Matrix> + '_ {
        let id = Matrix::identity(self.acting.field(), self.carrier_dim);
        self.slices.iter().zip(self.trivial_weights()).map(move |(s, w)| s - &id.scale(w))
    }

    /// Associativity and unit (or coassociativity and counit) on basis elements.
    pub fn check_axioms(&self) -> bool {
        let a = &*self.acting;
        let field = a.field();
        let combine = |weights: &dyn Fn(usize) -> Scalar| -> Matrix {
            let mut acc = Matrix::zeros(field, self.carrier_dim, self.carrier_dim);
            for (k, s) in self.slices.iter().enumerate() {
                let w = weights(k);
                if !w.is_zero() {
                    acc = &acc + &s.scale(&w);
                }
            }
            acc
        };
        let unit_weights: &[Scalar] = if self.side.is_coaction() { a.counit() } else { a.unit() };
        if !combine(&|k| unit_weights[k].clone()).is_identity() {
            return false;
        }
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let combined = if self.side.is_coaction() {
                    // Slice of the convolution δ_i ∗ δ_j.
                    combine(&|k| {
                        a.basis_coproduct(k)
                            .iter()
                            .find(|(x, y, _)| *x == i && *y == j)
                            .map_or_else(|| Scalar::zero(field), |(_, _, c)| c.clone())
                    })
                } else {
                    let prod = a.basis_product(i, j);
                    combine(&|k| prod.iter().find(|(t, _)| *t == k).map_or_else(|| Scalar::zero(field), |(_, c)| c.clone()))
                };
                let (si, sj) = (&self.slices[i], &self.slices[j]);
                let composed = match self.side {
                    ActionSide::LeftAction | ActionSide::RightCoaction => si * sj,
                    ActionSide::RightAction | ActionSide::LeftCoaction => sj * si,
                };
                if combined != composed {
                    return false;
                }
            }
        }
        true
    }
}

pub fn action_from_hom(xi: &LinMap, which: HomAction) -> Result<ActionTensor> {
    if !xi.is_bimonoid_hom() {
        return Err(Error::NotAHomomorphism);
    }
    let (a, b) = (xi.domain(), xi.codomain());
    let field = a.field();
    let act = match which {
        HomAction::AlphaLeft | HomAction::AlphaRight => {
            let slices = (0..a.dim())
                .map(|j| {
                    let x = xi.matrix().column(j);
                    if which == HomAction::AlphaLeft {
                        b.left_mul_matrix(&x)
                    } else {
                        b.right_mul_matrix(&x)
                    }
                })
                .collect();
            let side = if which == HomAction::AlphaLeft { ActionSide::LeftAction } else { ActionSide::RightAction };
            ActionTensor::new(a.clone(), side, slices)?
        }
        HomAction::BetaLeft | HomAction::BetaRight => {
            let n = a.dim();
            let mut slices = vec![Matrix::zeros(field, n, n); b.dim()];
            for k in 0..n {
                for (i, j, c) in a.basis_coproduct(k) {
                    // Left: ξ hits the first leg and e_j survives; right: the reverse.
                    let (hit, keep) = if which == HomAction::BetaLeft { (*i, *j) } else { (*j, *i) };
                    for (u, s) in slices.iter_mut().enumerate() {
                        let x = xi.matrix().get(u, hit);
                        if !x.is_zero() {
                            s.add_at(keep, k, &(c * x));
                        }
                    }
                }
            }
            let side = if which == HomAction::BetaLeft { ActionSide::LeftCoaction } else { ActionSide::RightCoaction };
            ActionTensor::new(b.clone(), side, slices)?
        }
    };
    Ok(act)
}

/// The equalizer of the (co)action and the trivial one, with its inclusion.
pub fn invariant_object(act: &ActionTensor) -> (Subspace, Matrix) {
    let field = act.acting.field();
    let rows = act.differences().flat_map(|d| d.to_rows()).filter(|r| !r.iter().all(Scalar::is_zero));
    let sub = null_space_of_rows(field, act.carrier_dim, rows.collect::<Vec<_>>());
    let inclusion = sub.basis_matrix();
    (sub, inclusion)
}

/// The coequalizer, as the quotient by the images of all differences.
pub fn stabilized_object(act: &ActionTensor) -> Quotient {
    let field = act.acting.field();
    let cols = act.differences().flat_map(|d| d.to_columns()).filter(|c| !c.iter().all(Scalar::is_zero));
    Quotient::of(Subspace::span(field, act.carrier_dim, cols))
}

/// `γ = π ∘ i`: invariant object → stabilized object.
pub fn gamma(act: &ActionTensor) -> Matrix {
    let (_, inclusion) = invariant_object(act);
    &stabilized_object(act).projection * &inclusion
}

fn operator(act: &ActionTensor, v: &[Scalar]) -> Result<Matrix> {
    if v.len() != act.acting.dim() {
        return Err(Error::ShapeMismatch(format!("operator argument has length {}, expected {}", v.len(), act.acting.dim())));
    }
    let field = act.acting.field();
    let mut acc = Matrix::zeros(field, act.carrier_dim, act.carrier_dim);
    for (s, c) in act.slices.iter().zip(v) {
        if !c.is_zero() {
            acc = &acc + &s.scale(c);
        }
    }
    Ok(acc)
}

/// `L_α(a) = α(a⊗−)` for a left action, or `L^β(b) = (b⊗id)β` for a left
/// coaction with `b` a covector.
pub fn l_operator(act: &ActionTensor, v: &[Scalar]) -> Result<Matrix> {
    if !act.side.is_left() {
        return Err(Error::ShapeMismatch("L operator needs a left (co)action".into()));
    }
    operator(act, v)
}

/// `R_α(a) = α(−⊗a)` for a right action, or `R^β(b) = (id⊗b)β` for a right coaction.
pub fn r_operator(act: &ActionTensor, v: &[Scalar]) -> Result<Matrix> {
    if act.side.is_left() {
        return Err(Error::ShapeMismatch("R operator needs a right (co)action".into()));
    }
    operator(act, v)
}

pub fn is_small(a: &FinBimonoid) -> bool {
    normalized_integral(a).is_some()
}

pub fn is_cosmall(a: &FinBimonoid) -> bool {
    normalized_cointegral(a).is_some()
}

pub fn is_bismall(a: &FinBimonoid) -> bool {
    is_small(a) && is_cosmall(a)
}

/// `γ⁻¹` when it exists.
pub fn gamma_inverse(act: &ActionTensor) -> Option<Matrix> {
    invert(&gamma(act))
}
