//! Kernel, cokernel, coimage and image Hopf algebras of a homomorphism, and the
//! normalized generator integral `μ_ξ` built from them.
//!
//! `Ker ξ` is the equalizer `{a : (id⊗ξ)Δa = a⊗η}`. `Cok ξ` is `B` modulo
//! `ξ(a)b − ε(a)b`. `Coim ξ = Cok(ker ξ)` and `Im ξ = Ker(cok ξ)`.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::actions::{action_from_hom, gamma, invariant_object, l_operator, r_operator, stabilized_object, HomAction};
use crate::error::{Error, Result};
use crate::exactla::{invert, solve_right, Matrix, Quotient, Scalar, Subspace};
use crate::hopfcore::{FinBimonoid, LinMap};
use crate::integrals::{is_generator, is_integral_along, normalized_cointegral, normalized_integral, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubKind {
    Kernel,
    Cokernel,
    Coimage,
    Image,
}

impl SubKind {
    fn is_sub(self) -> bool {
        matches!(self, SubKind::Kernel | SubKind::Image)
    }

    fn label(self) -> &'static str {
        match self {
            SubKind::Kernel => "Ker",
            SubKind::Cokernel => "Cok",
            SubKind::Coimage => "Coim",
            SubKind::Image => "Im",
        }
    }
}

/// A Hopf subalgebra (kernel, image) or quotient (cokernel, coimage) of `parent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubHopf {
    kind: SubKind,
    parent: Arc<FinBimonoid>,
    structure: Arc<FinBimonoid>,
    map: LinMap,
    splitting: Matrix,
    subspace: Subspace,
}

impl SubHopf {
    pub fn kind(&self) -> SubKind {
        self.kind
    }

    pub fn parent(&self) -> &Arc<FinBimonoid> {
        &self.parent
    }

    pub fn structure(&self) -> &Arc<FinBimonoid> {
        &self.structure
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 1
    }

    /// The inclusion `structure → parent` for kernels and images, the projection
    /// `parent → structure` for cokernels and coimages.
    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn inclusion(&self) -> Option<&LinMap> {
        self.kind.is_sub().then_some(&self.map)
    }

    pub fn projection(&self) -> Option<&LinMap> {
        (!self.kind.is_sub()).then_some(&self.map)
    }

    /// Retraction of the inclusion, or section of the projection, in plain vector spaces.
    pub fn splitting(&self) -> &Matrix {
        &self.splitting
    }

    /// The subspace itself for kernels and images, the relations for quotients.
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Coordinates of a parent vector lying in a kernel or image.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.kind.is_sub() {
            self.subspace.coordinates(v)
        } else {
            None
        }
    }

    pub fn to_json(&self, parent_file: Option<&str>) -> Value {
        let key = if self.kind.is_sub() { "inclusion" } else { "projection" };
        // A loadable bimonoid file with the relation to the parent alongside.
        let mut out = self.structure.to_json();
        out["kind"] = json!(self.kind);
        out["parent"] = json!(self.parent.name());
        out[key] = self.map.matrix().to_json();
        if let Some(f) = parent_file {
            out["parent_file"] = json!(f);
        }
        out
    }
}

fn restrict_failure(what: &str) -> Error {
    Error::StructureDoesNotRestrict(what.to_string())
}

/// The bimonoid structure of `parent` restricted to `sub`, in its canonical basis.
fn restrict(parent: &FinBimonoid, sub: &Subspace, name: String) -> Result<FinBimonoid> {
    let (field, n, d) = (parent.field(), parent.dim(), sub.dim());
    let basis = sub.vectors();
    let pivots = sub.pivots();
    let coords = |v: &[Scalar], what: &str| sub.coordinates(v).ok_or_else(|| restrict_failure(what));

    let mut mul = Matrix::zeros(field, d, d * d);
    for i in 0..d {
        for j in 0..d {
            for (k, c) in coords(&parent.product(&basis[i], &basis[j]), "multiplication")?.into_iter().enumerate() {
                mul.set(k, i * d + j, c);
            }
        }
    }
    let unit = coords(parent.unit(), "unit")?;

    // Δ(v) ∈ V⊗V iff every row and column of its n×n coefficient matrix lies in V.
    let mut comul = Matrix::zeros(field, d * d, d);
    for (k, v) in basis.iter().enumerate() {
        let w = parent.coproduct(v);
        for t in 0..n {
            let row = &w[t * n..(t + 1) * n];
            if !row.iter().all(Scalar::is_zero) && !sub.contains(row) {
                return Err(restrict_failure("comultiplication"));
            }
            let col: Vec<Scalar> = (0..n).map(|u| w[u * n + t].clone()).collect();
            if !col.iter().all(Scalar::is_zero) && !sub.contains(&col) {
                return Err(restrict_failure("comultiplication"));
            }
        }
        for (i, &pi) in pivots.iter().enumerate() {
            for (j, &pj) in pivots.iter().enumerate() {
                comul.set(i * d + j, k, w[pi * n + pj].clone());
            }
        }
    }
    let counit = basis.iter().map(|v| parent.counit_of(v)).collect();
    let antipode = parent.antipode().and_then(|s| {
        let cols: Option<Vec<Vec<Scalar>>> = basis.iter().map(|v| sub.coordinates(&s.apply(v))).collect();
        cols.map(|c| Matrix::from_columns(field, d, &c))
    });
    FinBimonoid::new(name, field, mul, unit, comul, counit, antipode)
}

fn descend_failure(what: &str) -> Error {
    Error::StructureDoesNotDescend(what.to_string())
}

/// The bimonoid structure of `parent` on the quotient, in the representative basis.
fn descend(parent: &FinBimonoid, quot: &Quotient, name: String) -> Result<FinBimonoid> {
    let (field, n, d) = (parent.field(), parent.dim(), quot.dim());
    let p = &quot.projection;
    let pcols: Vec<Vec<(usize, Scalar)>> = (0..n)
        .map(|t| (0..d).filter(|&k| !p.get(k, t).is_zero()).map(|k| (k, p.get(k, t).clone())).collect())
        .collect();
    let push2 = |w: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(field); d * d];
        for (idx, c) in w.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, x) in &pcols[idx / n] {
                let cx = c * x;
                for (l, y) in &pcols[idx % n] {
                    out[k * d + l] += &(&cx * y);
                }
            }
        }
        out
    };
    let relations = quot.relations.vectors();
    for r in relations {
        for j in 0..n {
            let e = parent.basis_vector(j);
            if !p.apply(&parent.product(r, &e)).iter().all(Scalar::is_zero)
                || !p.apply(&parent.product(&e, r)).iter().all(Scalar::is_zero)
            {
                return Err(descend_failure("multiplication"));
            }
        }
        if !push2(&parent.coproduct(r)).iter().all(Scalar::is_zero) {
            return Err(descend_failure("comultiplication"));
        }
        if !parent.counit_of(r).is_zero() {
            return Err(descend_failure("counit"));
        }
    }
    let reps = &quot.representatives;
    let mut mul = Matrix::zeros(field, d, d * d);
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            for (k, c) in parent.basis_product(ri, rj) {
                for (l, x) in &pcols[*k] {
                    mul.add_at(*l, i * d + j, &(c * x));
                }
            }
        }
    }
    let unit = p.apply(parent.unit());
    let mut comul = Matrix::zeros(field, d * d, d);
    for (k, &rk) in reps.iter().enumerate() {
        for (idx, c) in push2(&parent.coproduct(&parent.basis_vector(rk))).into_iter().enumerate() {
            comul.set(idx, k, c);
        }
    }
    let counit = reps.iter().map(|&r| parent.counit()[r].clone()).collect();
    let antipode = parent.antipode().and_then(|s| {
        let descends = relations.iter().all(|r| p.apply(&s.apply(r)).iter().all(Scalar::is_zero));
        descends.then(|| &(p * s) * &quot.section)
    });
    FinBimonoid::new(name, field, mul, unit, comul, counit, antipode)
}

fn map_name(xi: &LinMap) -> String {
    format!("{}→{}", xi.domain().name(), xi.codomain().name())
}

fn sub_object(kind: SubKind, parent: &Arc<FinBimonoid>, sub: Subspace, of: &str) -> Result<SubHopf> {
    let structure = Arc::new(restrict(parent, &sub, format!("{}({of})", kind.label()))?);
    let map = LinMap::new(structure.clone(), parent.clone(), sub.basis_matrix())?;
    Ok(SubHopf { kind, parent: parent.clone(), structure, map, splitting: sub.coordinate_map(), subspace: sub })
}

fn quotient_object(kind: SubKind, parent: &Arc<FinBimonoid>, quot: Quotient, of: &str) -> Result<SubHopf> {
    let structure = Arc::new(descend(parent, &quot, format!("{}({of})", kind.label()))?);
    let map = LinMap::new(parent.clone(), structure.clone(), quot.projection.clone())?;
    Ok(SubHopf { kind, parent: parent.clone(), structure, map, splitting: quot.section, subspace: quot.relations })
}

fn kernel_via(xi: &LinMap, which: HomAction, kind: SubKind) -> Result<SubHopf> {
    let (sub, _) = invariant_object(&action_from_hom(xi, which)?);
    let ker = sub_object(kind, xi.domain(), sub, &map_name(xi))?;
    if xi.compose(&ker.map)? != LinMap::trivial(ker.structure.clone(), xi.codomain().clone()) {
        return Err(Error::IdentityFailed("ξ∘ker(ξ) is not trivial".into()));
    }
    Ok(ker)
}

fn cokernel_via(xi: &LinMap, which: HomAction, kind: SubKind) -> Result<SubHopf> {
    let quot = stabilized_object(&action_from_hom(xi, which)?);
    let cok = quotient_object(kind, xi.codomain(), quot, &map_name(xi))?;
    if cok.map.compose(xi)? != LinMap::trivial(xi.domain().clone(), cok.structure.clone()) {
        return Err(Error::IdentityFailed("cok(ξ)∘ξ is not trivial".into()));
    }
    Ok(cok)
}

pub fn kernel_hopf(xi: &LinMap) -> Result<SubHopf> {
    kernel_via(xi, HomAction::BetaRight, SubKind::Kernel)
}

pub fn cokernel_hopf(xi: &LinMap) -> Result<SubHopf> {
    cokernel_via(xi, HomAction::AlphaLeft, SubKind::Cokernel)
}

pub fn coimage(xi: &LinMap) -> Result<SubHopf> {
    let ker = kernel_hopf(xi)?;
    cokernel_via(&ker.map, HomAction::AlphaLeft, SubKind::Coimage)
}

pub fn image(xi: &LinMap) -> Result<SubHopf> {
    let cok = cokernel_hopf(xi)?;
    kernel_via(&cok.map, HomAction::BetaRight, SubKind::Image)
}

/// Normal: both cokernel presentations exist and agree.
pub fn check_normal(xi: &LinMap) -> bool {
    match (cokernel_via(xi, HomAction::AlphaLeft, SubKind::Cokernel), cokernel_via(xi, HomAction::AlphaRight, SubKind::Cokernel)) {
        (Ok(l), Ok(r)) => l.subspace == r.subspace,
        _ => false,
    }
}

/// Conormal: both kernel presentations exist and agree.
pub fn check_conormal(xi: &LinMap) -> bool {
    match (kernel_via(xi, HomAction::BetaRight, SubKind::Kernel), kernel_via(xi, HomAction::BetaLeft, SubKind::Kernel)) {
        (Ok(r), Ok(l)) => r.subspace == l.subspace,
        _ => false,
    }
}

/// `ξ = im ∘ ξ̄ ∘ coim` with all four pieces.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub kernel: SubHopf,
    pub cokernel: SubHopf,
    pub coimage: SubHopf,
    pub image: SubHopf,
    pub xi_bar: LinMap,
    pub xi_bar_inverse: Option<LinMap>,
}

pub fn decompose(xi: &LinMap) -> Result<Decomposition> {
    let kernel = kernel_hopf(xi)?;
    let cokernel = cokernel_hopf(xi)?;
    let coimage = cokernel_via(&kernel.map, HomAction::AlphaLeft, SubKind::Coimage)?;
    let image = kernel_via(&cokernel.map, HomAction::BetaRight, SubKind::Image)?;
    let m = &(image.splitting() * xi.matrix()) * coimage.splitting();
    let xi_bar = LinMap::new(coimage.structure.clone(), image.structure.clone(), m)?;
    if image.map.compose(&xi_bar)?.compose(&coimage.map)? != *xi {
        return Err(Error::IdentityFailed("ξ ≠ im∘ξ̄∘coim".into()));
    }
    let xi_bar_inverse = invert(xi_bar.matrix())
        .map(|inv| LinMap::new(image.structure.clone(), coimage.structure.clone(), inv))
        .transpose()?;
    Ok(Decomposition { kernel, cokernel, coimage, image, xi_bar, xi_bar_inverse })
}

pub fn xi_bar(xi: &LinMap) -> Result<LinMap> {
    Ok(decompose(xi)?.xi_bar)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub normal: bool,
    pub conormal: bool,
    pub kernel_normal: bool,
    pub cokernel_conormal: bool,
    pub xi_bar_invertible: bool,
}

impl DecompositionReport {
    pub fn is_well_decomposable(&self) -> bool {
        self.kernel_normal && self.cokernel_conormal && self.xi_bar_invertible
    }

    /// The first failing condition, if any.
    pub fn failure(&self) -> Option<&'static str> {
        if !self.kernel_normal {
            Some("kernel inclusion is not normal")
        } else if !self.cokernel_conormal {
            Some("cokernel projection is not conormal")
        } else if !self.xi_bar_invertible {
            Some("induced map Coim → Im is not invertible")
        } else {
            None
        }
    }
}

pub fn is_well_decomposable(xi: &LinMap) -> DecompositionReport {
    let normal = check_normal(xi);
    let conormal = check_conormal(xi);
    let (kernel_normal, cokernel_conormal, xi_bar_invertible) = match decompose(xi) {
        Ok(d) => (check_normal(&d.kernel.map), check_conormal(&d.cokernel.map), d.xi_bar_inverse.is_some()),
        Err(_) => (false, false, false),
    };
    DecompositionReport { normal, conormal, kernel_normal, cokernel_conormal, xi_bar_invertible }
}

fn identity_failed(what: &str) -> Error {
    Error::IdentityFailed(what.to_string())
}

/// The normalized integral `Cok ξ → B` along `cok(ξ)`, as `i ∘ γ⁻¹` for the left
/// action of `A` on `B`. Needs `A` small.
pub fn mu_tilde_cok(xi: &LinMap) -> Result<LinMap> {
    let a = xi.domain();
    let sigma = normalized_integral(a).ok_or_else(|| Error::NotSmall(a.name().to_string()))?;
    let cok = cokernel_hopf(xi)?;
    let left = action_from_hom(xi, HomAction::AlphaLeft)?;
    let (_, inclusion) = invariant_object(&left);
    let g_inv = invert(&gamma(&left)).ok_or_else(|| identity_failed("γ is not invertible for a small bimonoid"))?;
    let mu = LinMap::new(cok.structure.clone(), xi.codomain().clone(), &inclusion * &g_inv)?;
    if !cok.map.compose(&mu)?.matrix().is_identity() {
        return Err(identity_failed("cok∘μ̃ ≠ id"));
    }
    let idem = mu.compose(&cok.map)?;
    let right = action_from_hom(xi, HomAction::AlphaRight)?;
    if idem.matrix() != &l_operator(&left, &sigma)? || idem.matrix() != &r_operator(&right, &sigma)? {
        return Err(identity_failed("μ̃∘cok ≠ L(σ_A) = R(σ_A)"));
    }
    Ok(mu)
}

/// The normalized integral `A → Ker ξ` along `ker(ξ)`, as `γ⁻¹ ∘ q` for the right
/// coaction of `B` on `A`. Needs `B` cosmall.
pub fn mu_tilde_ker(xi: &LinMap) -> Result<LinMap> {
    let b = xi.codomain();
    let cosigma_b = normalized_cointegral(b).ok_or_else(|| Error::NotCosmall(b.name().to_string()))?;
    let ker = kernel_hopf(xi)?;
    let right = action_from_hom(xi, HomAction::BetaRight)?;
    let quot = stabilized_object(&right);
    let g_inv = invert(&gamma(&right)).ok_or_else(|| identity_failed("γ is not invertible for a cosmall bimonoid"))?;
    let mu = LinMap::new(xi.domain().clone(), ker.structure.clone(), &g_inv * &quot.projection)?;
    if !mu.compose(&ker.map)?.matrix().is_identity() {
        return Err(identity_failed("μ̃∘ker ≠ id"));
    }
    let idem = ker.map.compose(&mu)?;
    let left = action_from_hom(xi, HomAction::BetaLeft)?;
    if idem.matrix() != &r_operator(&right, &cosigma_b)? || idem.matrix() != &l_operator(&left, &cosigma_b)? {
        return Err(identity_failed("ker∘μ̃ ≠ R(σ^B) = L(σ^B)"));
    }
    Ok(mu)
}

/// The normalized integral `Coim ξ → A` along `coim(ξ)`. Needs `Ker ξ` small.
pub fn mu_tilde_coim(xi: &LinMap) -> Result<LinMap> {
    let ker = kernel_hopf(xi)?;
    let coim = cokernel_via(&ker.map, HomAction::AlphaLeft, SubKind::Coimage)?;
    let mu = mu_tilde_cok(&ker.map)?.with_endpoints(coim.structure.clone(), xi.domain().clone())?;
    if !coim.map.compose(&mu)?.matrix().is_identity() {
        return Err(identity_failed("coim∘μ̃ ≠ id"));
    }
    Ok(mu)
}

/// The normalized integral `B → Im ξ` along `im(ξ)`. Needs `Cok ξ` cosmall.
pub fn mu_tilde_im(xi: &LinMap) -> Result<LinMap> {
    let cok = cokernel_hopf(xi)?;
    let im = kernel_via(&cok.map, HomAction::BetaRight, SubKind::Image)?;
    let mu = mu_tilde_ker(&cok.map)?.with_endpoints(xi.codomain().clone(), im.structure.clone())?;
    if !mu.compose(&im.map)?.matrix().is_identity() {
        return Err(identity_failed("μ̃∘im ≠ id"));
    }
    Ok(mu)
}

pub const KERNEL_NOT_SMALL: &str = "kernel has no normalized integral";
pub const COKERNEL_NOT_COSMALL: &str = "cokernel has no normalized cointegral";

/// Builds `μ̃_coim ∘ ξ̄⁻¹ ∘ μ̃_im` without the generator check.
pub(crate) fn mu_xi_parts(xi: &LinMap) -> Result<(LinMap, Decomposition)> {
    if !xi.is_bimonoid_hom() {
        return Err(Error::NotAHomomorphism);
    }
    let d = decompose(xi).map_err(|e| match e {
        Error::StructureDoesNotRestrict(w) => Error::NotWellDecomposable(format!("kernel does not exist ({w} does not restrict)")),
        Error::StructureDoesNotDescend(w) => Error::NotWellDecomposable(format!("cokernel does not exist ({w} does not descend)")),
        other => other,
    })?;
    let Some(inv) = d.xi_bar_inverse.clone() else {
        return Err(Error::NotWellDecomposable("induced map Coim → Im is not invertible".into()));
    };
    if !check_normal(&d.kernel.map) {
        return Err(Error::NotWellDecomposable("kernel inclusion is not normal".into()));
    }
    if !check_conormal(&d.cokernel.map) {
        return Err(Error::NotWellDecomposable("cokernel projection is not conormal".into()));
    }
    if normalized_integral(&d.kernel.structure).is_none() {
        return Err(Error::NotPreFredholm(KERNEL_NOT_SMALL.into()));
    }
    if normalized_cointegral(&d.cokernel.structure).is_none() {
        return Err(Error::NotPreFredholm(COKERNEL_NOT_COSMALL.into()));
    }
    let coim = mu_tilde_coim(xi)?.with_endpoints(d.coimage.structure.clone(), xi.domain().clone())?;
    let im = mu_tilde_im(xi)?.with_endpoints(xi.codomain().clone(), d.image.structure.clone())?;
    let mu = coim.compose(&inv)?.compose(&im)?;
    let x = xi.matrix();
    if &(x * mu.matrix()) * x != *x {
        return Err(identity_failed("μ_ξ is not normalized"));
    }
    if !is_integral_along(&mu, xi, Side::TwoSided) {
        return Err(identity_failed("μ_ξ is not an integral along ξ"));
    }
    Ok((mu, d))
}

/// The normalized generator integral along `ξ`. Errors name the failing condition.
pub fn mu_xi(xi: &LinMap) -> Result<LinMap> {
    let (mu, _) = mu_xi_parts(xi)?;
    if !is_generator(&mu, xi)? {
        return Err(identity_failed("μ_ξ is not a generator"));
    }
    Ok(mu)
}

/// Outcome of the commuting-square check `μ_ψ∘ψ′ = φ′∘μ_φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    pub kernel_section: bool,
    pub cokernel_retract: bool,
    /// `None` when a hypothesis fails and the identity is not asserted.
    pub identity: Option<bool>,
}

impl SquareReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.kernel_section && self.cokernel_retract
    }

    pub fn passes(&self) -> bool {
        self.identity == Some(true)
    }
}

/// Square `φ: A → B`, `φ′: A → C`, `ψ: C → D`, `ψ′: B → D` with `ψ∘φ′ = ψ′∘φ`.
pub fn verify_square(phi: &LinMap, phi_prime: &LinMap, psi: &LinMap, psi_prime: &LinMap) -> Result<SquareReport> {
    let lower = psi.compose(phi_prime).map_err(|_| Error::SquareNotCommuting)?;
    let upper = psi_prime.compose(phi).map_err(|_| Error::SquareNotCommuting)?;
    if lower != upper {
        return Err(Error::SquareNotCommuting);
    }
    let field = phi.field();
    let (ker_phi, ker_psi) = (kernel_hopf(phi)?, kernel_hopf(psi)?);
    let kmap = &(ker_psi.splitting() * phi_prime.matrix()) * ker_phi.map.matrix();
    if (ker_psi.map.matrix() * &kmap) != (phi_prime.matrix() * ker_phi.map.matrix()) {
        return Err(identity_failed("φ′ does not map Ker φ into Ker ψ"));
    }
    let kernel_section = solve_right(&kmap, &Matrix::identity(field, kmap.rows()))?.is_some();
    let (cok_phi, cok_psi) = (cokernel_hopf(phi)?, cokernel_hopf(psi)?);
    let cmap = &(cok_psi.map.matrix() * psi_prime.matrix()) * cok_phi.splitting();
    let cokernel_retract = solve_right(&cmap.transpose(), &Matrix::identity(field, cmap.cols()))?.is_some();
    let identity = if kernel_section && cokernel_retract {
        let (mu_phi, mu_psi) = (mu_xi(phi)?, mu_xi(psi)?);
        Some(mu_psi.compose(psi_prime)? == phi_prime.compose(&mu_phi)?)
    } else {
        None
    };
    Ok(SquareReport { kernel_section, cokernel_retract, identity })
}
