//! Inverse volumes, the pairing `⟨ξ⟩`, Fredholm indices, the composition cocycle
//! `ω` and the functorial integrals `ξ_!`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{subspace_equal, Scalar};
use crate::hopfcore::{convolution, dot, scalar_mul, FinBimonoid, LinMap};
use crate::integrals::{normalized_cointegral, normalized_integral};
use crate::kerco::{cokernel_hopf, image, kernel_hopf, mu_xi_parts};

/// `vol⁻¹(A) = σ^A ∘ σ_A`.
pub fn inverse_volume(a: &FinBimonoid) -> Option<Scalar> {
    let sigma = normalized_integral(a)?;
    let cosigma = normalized_cointegral(a)?;
    Some(dot(&cosigma, &sigma, a.field()))
}

/// `⟨ξ⟩ = σ^B ∘ ξ ∘ σ_A`.
pub fn pairing(xi: &LinMap) -> Result<Scalar> {
    let (a, b) = (xi.domain(), xi.codomain());
    let sigma = normalized_integral(a).ok_or_else(|| Error::MissingIntegralData(format!("{} has no normalized integral", a.name())))?;
    let cosigma =
        normalized_cointegral(b).ok_or_else(|| Error::MissingIntegralData(format!("{} has no normalized cointegral", b.name())))?;
    Ok(dot(&cosigma, &xi.image_of(&sigma), a.field()))
}

/// Volumes of `Ker ξ` and `Cok ξ`, with `None` where the volume is undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub domain: String,
    pub codomain: String,
    pub ker_dim: usize,
    pub cok_dim: usize,
    pub ker_vol: Option<Scalar>,
    pub cok_vol: Option<Scalar>,
    pub fredholm: bool,
    pub index: Option<Scalar>,
}

impl IndexReport {
    /// `υ₀(ξ) = vol⁻¹(Ker ξ)`.
    pub fn upsilon0(&self) -> Option<&Scalar> {
        self.ker_vol.as_ref()
    }

    /// `υ₁(ξ) = vol⁻¹(Cok ξ)`.
    pub fn upsilon1(&self) -> Option<&Scalar> {
        self.cok_vol.as_ref()
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &Option<Scalar>| x.as_ref().map(Scalar::to_json);
        json!({
            "domain": self.domain,
            "codomain": self.codomain,
            "ker_dim": self.ker_dim,
            "cok_dim": self.cok_dim,
            "ker_vol": s(&self.ker_vol),
            "cok_vol": s(&self.cok_vol),
            "fredholm": self.fredholm,
            "index": s(&self.index),
            "upsilon0": s(&self.ker_vol),
            "upsilon1": s(&self.cok_vol),
        })
    }
}

fn nonzero(x: &Option<Scalar>) -> bool {
    x.as_ref().is_some_and(|v| !v.is_zero())
}

pub fn fredholm_index(xi: &LinMap) -> Result<IndexReport> {
    if !xi.is_bimonoid_hom() {
        return Err(Error::NotAHomomorphism);
    }
    let ker = kernel_hopf(xi)?;
    let cok = cokernel_hopf(xi)?;
    let ker_vol = inverse_volume(ker.structure());
    let cok_vol = inverse_volume(cok.structure());
    let fredholm = nonzero(&ker_vol) && nonzero(&cok_vol);
    let index = match (&ker_vol, &cok_vol) {
        (Some(k), Some(c)) if fredholm => c.checked_div(k),
        _ => None,
    };
    Ok(IndexReport {
        domain: xi.domain().name().to_string(),
        codomain: xi.codomain().name().to_string(),
        ker_dim: ker.dim(),
        cok_dim: cok.dim(),
        ker_vol,
        cok_vol,
        fredholm,
        index,
    })
}

/// `ω(ξ, ξ′) = ⟨cok(ξ) ∘ ker(ξ′)⟩` for `ξ: A → B`, `ξ′: B → C`.
pub fn omega(xi: &LinMap, xi_prime: &LinMap) -> Result<Scalar> {
    let cok = cokernel_hopf(xi)?;
    let ker = kernel_hopf(xi_prime)?;
    pairing(&cok.map().compose(ker.map())?)
}

/// `μ_ξ ∘ μ_ξ′ = ω(ξ, ξ′)·μ_{ξ′∘ξ}`.
pub fn verify_composition_scalar(xi: &LinMap, xi_prime: &LinMap) -> Result<bool> {
    let w = omega(xi, xi_prime)?;
    let lhs = mu_xi_parts(xi)?.0.compose(&mu_xi_parts(xi_prime)?.0)?;
    let rhs = scalar_mul(&w, &mu_xi_parts(&xi_prime.compose(xi)?)?.0);
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gauge {
    /// `υ₀(ξ) = vol⁻¹(Ker ξ)`.
    #[serde(rename = "v0")]
    Kernel,
    /// `υ₁(ξ) = vol⁻¹(Cok ξ)`.
    #[serde(rename = "v1")]
    Cokernel,
}

impl Gauge {
    pub const ALL: [Gauge; 2] = [Gauge::Kernel, Gauge::Cokernel];

    pub fn as_str(self) -> &'static str {
        match self {
            Gauge::Kernel => "v0",
            Gauge::Cokernel => "v1",
        }
    }
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gauge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v0" | "upsilon0" | "kernel" => Ok(Gauge::Kernel),
            "v1" | "upsilon1" | "cokernel" => Ok(Gauge::Cokernel),
            other => Err(Error::Parse(format!("unknown gauge {other:?}"))),
        }
    }
}

/// `υ(ξ)` in the chosen gauge; `None` when the volume is undefined.
pub fn gauge_value(xi: &LinMap, gauge: Gauge) -> Result<Option<Scalar>> {
    let sub = match gauge {
        Gauge::Kernel => kernel_hopf(xi)?,
        Gauge::Cokernel => cokernel_hopf(xi)?,
    };
    Ok(inverse_volume(sub.structure()))
}

/// `ξ_! = υ(ξ)⁻¹·μ_ξ`.
pub fn functorial_integral(xi: &LinMap, gauge: Gauge) -> Result<LinMap> {
    let report = fredholm_index(xi)?;
    if !report.fredholm {
        return Err(Error::NotFredholm(format!("{} → {}", report.domain, report.codomain)));
    }
    let v = match gauge {
        Gauge::Kernel => report.ker_vol,
        Gauge::Cokernel => report.cok_vol,
    };
    let inv = v.and_then(|x| x.inv()).ok_or_else(|| Error::NotFredholm(format!("gauge {gauge} vanishes")))?;
    Ok(scalar_mul(&inv, &mu_xi_parts(xi)?.0))
}

/// Checks on a composable triple `ξ: A → B`, `ξ′: B → C`, `ξ″: C → D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    /// `ω(ξ,ξ′)·ω(ξ′ξ,ξ″) = ω(ξ′,ξ″)·ω(ξ,ξ″ξ′)`.
    pub cocycle: bool,
    /// `υ(ζ)υ(ζ′) = ω(ζ,ζ′)·υ(ζ′ζ)` on the four composable pairs of the triple, gauge υ₀.
    pub coboundary_v0: bool,
    /// The same for gauge υ₁.
    pub coboundary_v1: bool,
}

impl CocycleReport {
    pub fn all(&self) -> bool {
        self.cocycle && self.coboundary_v0 && self.coboundary_v1
    }
}

pub fn cocycle_and_coboundary_check(xi: &LinMap, xi_prime: &LinMap, xi_second: &LinMap) -> Result<CocycleReport> {
    let g1 = xi_prime.compose(xi)?;
    let g2 = xi_second.compose(xi_prime)?;
    let pairs = [(xi, xi_prime), (&g1, xi_second), (xi_prime, xi_second), (xi, &g2)];
    let omegas = pairs.iter().map(|(f, g)| omega(f, g)).collect::<Result<Vec<_>>>()?;
    let cocycle = &omegas[0] * &omegas[1] == &omegas[2] * &omegas[3];
    let mut coboundary = [true; 2];
    for (slot, gauge) in coboundary.iter_mut().zip(Gauge::ALL) {
        for ((f, g), w) in pairs.iter().zip(&omegas) {
            let gf = g.compose(f)?;
            let (Some(uf), Some(ug), Some(ugf)) = (gauge_value(f, gauge)?, gauge_value(g, gauge)?, gauge_value(&gf, gauge)?)
            else {
                return Err(Error::NotFredholm(format!("gauge {gauge} undefined on the triple")));
            };
            *slot &= &uf * &ug == w * &ugf;
        }
    }
    Ok(CocycleReport { cocycle, coboundary_v0: coboundary[0], coboundary_v1: coboundary[1] })
}

/// `(ξ′∘ξ)_! = ξ_! ∘ ξ′_!` in the given gauge.
pub fn verify_functoriality(xi: &LinMap, xi_prime: &LinMap, gauge: Gauge) -> Result<bool> {
    let lhs = functorial_integral(&xi_prime.compose(xi)?, gauge)?;
    let rhs = functorial_integral(xi, gauge)?.compose(&functorial_integral(xi_prime, gauge)?)?;
    Ok(lhs == rhs)
}

/// `Im ξ` is bismall with nonzero inverse volume.
pub fn is_finite_hom(xi: &LinMap) -> Result<bool> {
    Ok(nonzero(&inverse_volume(image(xi)?.structure())))
}

/// `Ind(ξ∗ε) = Ind(ξ)` for a Fredholm `ξ` and a finite `ε`.
pub fn verify_perturbation(xi: &LinMap, eps: &LinMap) -> Result<bool> {
    let base = fredholm_index(xi)?;
    if !base.fredholm {
        return Err(Error::NotFredholm(format!("{} → {}", base.domain, base.codomain)));
    }
    if !eps.is_bimonoid_hom() {
        return Err(Error::NotAHomomorphism);
    }
    if !is_finite_hom(eps)? {
        return Err(Error::NotFredholm("perturbation is not finite".into()));
    }
    let perturbed = convolution(xi, eps)?;
    let report = fredholm_index(&perturbed)?;
    Ok(report.fredholm && report.index == base.index)
}

/// `vol⁻¹(B) = vol⁻¹(A)·vol⁻¹(C)` for an exact `1 → A → B → C → 1`.
pub fn verify_ses_volume(f: &LinMap, g: &LinMap) -> Result<bool> {
    let not_exact = |w: &str| Error::ChainNotExact(w.to_string());
    let g_f = g.compose(f).map_err(|_| not_exact("maps are not composable"))?;
    if !f.is_bimonoid_hom() || !g.is_bimonoid_hom() {
        return Err(Error::NotAHomomorphism);
    }
    if g_f != LinMap::trivial(f.domain().clone(), g.codomain().clone()) {
        return Err(not_exact("g∘f is not trivial"));
    }
    if !kernel_hopf(f)?.is_trivial() {
        return Err(not_exact("first map is not injective"));
    }
    if !cokernel_hopf(g)?.is_trivial() {
        return Err(not_exact("second map is not surjective"));
    }
    if !subspace_equal(image(f)?.subspace(), kernel_hopf(g)?.subspace()) {
        return Err(not_exact("image of the first map differs from the kernel of the second"));
    }
    let vol = |a: &FinBimonoid| {
        inverse_volume(a).ok_or_else(|| Error::MissingIntegralData(format!("{} is not bismall", a.name())))
    };
    Ok(vol(g.domain())? == &vol(f.domain())? * &vol(g.codomain())?)
}
