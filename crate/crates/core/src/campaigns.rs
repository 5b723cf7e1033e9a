//! Seeded verification campaigns over families of abelian-group instances.
//!
//! A campaign runs every instance of its family, records each outcome, and
//! never stops at the first failure. Reports are deterministic given the seed.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde_json::{json, Value};

use crate::abgroup::random::{random_group, random_hom, rng};
use crate::abgroup::{
    all_homs, cokernel_with_projection, group_algebra, hom_cokernel, hom_kernel, index_oracle, induced_hom,
    kernel_with_inclusion, AbGroup, AbHom,
};
use crate::actions::{is_cosmall, is_small};
use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar};
use crate::hopfcore::LinMap;
use crate::integrals::{integral_along_space, is_generator, normalized_along_solution, Side};
use crate::kerco::{cokernel_hopf, kernel_hopf, mu_xi, verify_square};
use crate::volume::{
    cocycle_and_coboundary_check, fredholm_index, inverse_volume, omega, verify_composition_scalar, verify_functoriality,
    verify_perturbation, verify_ses_volume, Gauge,
};

pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Campaign {
    ExistenceIff,
    Uniqueness,
    CompositionScalar,
    VolumeSes,
    IndexPerturbation,
    Cocycle,
    FunctorialSquare,
    OracleCrosscheck,
}

impl Campaign {
    pub const ALL: [Campaign; 8] = [
        Campaign::ExistenceIff,
        Campaign::Uniqueness,
        Campaign::CompositionScalar,
        Campaign::VolumeSes,
        Campaign::IndexPerturbation,
        Campaign::Cocycle,
        Campaign::FunctorialSquare,
        Campaign::OracleCrosscheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::ExistenceIff => "existence-iff",
            Campaign::Uniqueness => "uniqueness",
            Campaign::CompositionScalar => "composition-scalar",
            Campaign::VolumeSes => "volume-ses",
            Campaign::IndexPerturbation => "index-perturbation",
            Campaign::Cocycle => "cocycle",
            Campaign::FunctorialSquare => "functorial-square",
            Campaign::OracleCrosscheck => "oracle-crosscheck",
        }
    }

    /// The claim the campaign exercises.
    pub fn claim(self) -> &'static str {
        match self {
            Campaign::ExistenceIff => {
                "a normalized integral along ξ exists iff Ker ξ is small and Cok ξ is cosmall, and then it is the generator μ_ξ"
            }
            Campaign::Uniqueness => "a normalized integral along ξ is unique and Int(ξ) is one-dimensional",
            Campaign::CompositionScalar => "μ_ξ∘μ_ξ′ = ω(ξ,ξ′)·μ_(ξ′∘ξ) with ω(ξ,ξ′) = ⟨cok ξ ∘ ker ξ′⟩",
            Campaign::VolumeSes => "vol⁻¹ is multiplicative on short exact sequences",
            Campaign::IndexPerturbation => "Ind is multiplicative and unchanged by convolution with a finite homomorphism",
            Campaign::Cocycle => "ω is a 2-cocycle cobounded by υ₀ and υ₁, and ξ ↦ ξ_! is functorial in both gauges",
            Campaign::FunctorialSquare => "μ_ψ∘ψ′ = φ′∘μ_φ when the Ker map has a section and the Cok map a retract",
            Campaign::OracleCrosscheck => "Ker/Cok dimensions and the Fredholm index agree with the abelian-group oracle",
        }
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Campaign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown campaign {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub label: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignReport {
    pub campaign: Campaign,
    pub seed: u64,
    pub instances: Vec<Instance>,
}

impl CampaignReport {
    pub fn passed(&self) -> usize {
        self.instances.iter().filter(|i| i.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.instances.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.passed)
    }

    pub fn to_json(&self) -> Value {
        let inst = |i: &Instance| json!({ "label": i.label, "passed": i.passed, "detail": i.detail });
        json!({
            "campaign": self.campaign.name(),
            "claim": self.campaign.claim(),
            "seed": self.seed,
            "summary": { "instances": self.instances.len(), "passed": self.passed(), "failed": self.failed() },
            "counterexamples": self.counterexamples().map(inst).collect::<Vec<_>>(),
            "instances": self.instances.iter().map(inst).collect::<Vec<_>>(),
        })
    }
}

pub fn run(campaign: Campaign, seed: u64) -> CampaignReport {
    let instances = match campaign {
        Campaign::ExistenceIff => existence_iff(),
        Campaign::Uniqueness => uniqueness(),
        Campaign::CompositionScalar => composition_scalar(seed),
        Campaign::VolumeSes => volume_ses(seed),
        Campaign::IndexPerturbation => index_perturbation(seed),
        Campaign::Cocycle => cocycle(seed),
        Campaign::FunctorialSquare => functorial_square(seed),
        Campaign::OracleCrosscheck => oracle_crosscheck(seed),
    };
    CampaignReport { campaign, seed, instances }
}

/// Runs one instance; an error is recorded as a failure with its message.
fn instance(label: impl Into<String>, check: impl FnOnce() -> Result<(bool, Value)>) -> Instance {
    let label = label.into();
    match check() {
        Ok((passed, detail)) => Instance { label, passed, detail },
        Err(e) => Instance { label, passed: false, detail: json!({ "error": e.to_string() }) },
    }
}

fn hom_label(rho: &AbHom, field: Field) -> String {
    format!("{} → {} {:?} over {field}", rho.domain().display(), rho.codomain().display(), rho.matrix())
}

fn fields() -> [Field; 4] {
    [Field::RATIONALS, Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::prime(5).unwrap()]
}

/// All homomorphisms among ℤ/2, ℤ/3, ℤ/4, ℤ/6 and ℤ/2×ℤ/2, over ℚ, 𝔽₂, 𝔽₃ and 𝔽₅.
pub fn existence_grid() -> Vec<(AbHom, Field)> {
    let groups: Vec<AbGroup> =
        [vec![2], vec![3], vec![4], vec![6], vec![2, 2]].into_iter().map(|f| AbGroup::new(f).unwrap()).collect();
    let mut out = Vec::new();
    for field in fields() {
        for g in &groups {
            for h in &groups {
                out.extend(all_homs(g, h).into_iter().map(|rho| (rho, field)));
            }
        }
    }
    out
}

fn existence_iff() -> Vec<Instance> {
    existence_grid()
        .into_iter()
        .map(|(rho, field)| {
            instance(hom_label(&rho, field), || {
                let xi = induced_hom(&rho, field);
                let ker_small = is_small(kernel_hopf(&xi)?.structure());
                let cok_cosmall = is_cosmall(cokernel_hopf(&xi)?.structure());
                let along = normalized_along_solution(&xi)?.map(|s| s.map);
                let exists = along.is_some();
                let (agrees, generator) = match (&along, mu_xi(&xi)) {
                    (Some(mu), Ok(m)) => (m == *mu, is_generator(mu, &xi)?),
                    (None, Err(Error::NotPreFredholm(_))) => (true, false),
                    (_, Err(e)) => return Err(e),
                    (None, Ok(_)) => (false, false),
                };
                let passed = exists == (ker_small && cok_cosmall) && agrees && (!exists || generator);
                Ok((passed, json!({
                    "ker_small": ker_small,
                    "cok_cosmall": cok_cosmall,
                    "exists": exists,
                    "agrees_with_mu_xi": agrees,
                    "generator": generator,
                })))
            })
        })
        .collect()
}

fn uniqueness() -> Vec<Instance> {
    existence_grid()
        .into_iter()
        .filter_map(|(rho, field)| {
            let xi = induced_hom(&rho, field);
            let sol = normalized_along_solution(&xi).ok().flatten()?;
            Some(instance(hom_label(&rho, field), || {
                let dim = integral_along_space(&xi, Side::TwoSided)?.dim();
                Ok((sol.affine_dim == 0 && dim == 1, json!({ "affine_dim": sol.affine_dim, "int_dim": dim })))
            }))
        })
        .collect()
}

fn random_chain<R: Rng>(r: &mut R, len: usize, cap: u64) -> (Vec<AbGroup>, Vec<AbHom>) {
    let groups: Vec<AbGroup> = (0..=len).map(|_| random_group(r, cap, cap)).collect();
    let homs = groups.windows(2).map(|w| random_hom(r, &w[0], &w[1])).collect();
    (groups, homs)
}

fn cyclic_quotient(n: u64, m: u64) -> AbHom {
    AbHom::new(AbGroup::cyclic(n), AbGroup::cyclic(m), vec![vec![1]]).unwrap()
}

fn pair_instance(label: String, xi: &LinMap, xi2: &LinMap, expect_omega: Option<Scalar>) -> Instance {
    instance(label, || {
        let w = omega(xi, xi2)?;
        let holds = verify_composition_scalar(xi, xi2)?;
        let matches = expect_omega.as_ref().is_none_or(|e| *e == w);
        Ok((holds && matches, json!({ "omega": w.to_json(), "identity": holds })))
    })
}

fn composition_scalar(seed: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    let q = Field::RATIONALS;
    for field in [q, Field::prime(3).unwrap(), Field::prime(5).unwrap()] {
        let x = induced_hom(&cyclic_quotient(8, 4), field);
        let y = induced_hom(&cyclic_quotient(4, 2), field);
        out.push(pair_instance(format!("ℤ/8 → ℤ/4 → ℤ/2 over {field}"), &x, &y, Some(Scalar::one(field))));
    }
    let a = group_algebra(&AbGroup::cyclic(2), q).into_shared();
    let half = Scalar::parse(q, "1/2").unwrap();
    out.push(pair_instance("η, ε on ℚ[ℤ/2]".into(), &LinMap::unit_of(a.clone()), &LinMap::counit_of(a), Some(half)));
    let mut r = rng(seed);
    for k in 0..10 {
        let (_, homs) = random_chain(&mut r, 2, 12);
        let (x, y) = (induced_hom(&homs[0], q), induced_hom(&homs[1], q));
        out.push(pair_instance(format!("random chain {k}: {}", chain_label(&homs)), &x, &y, None));
    }
    out
}

fn chain_label(homs: &[AbHom]) -> String {
    let mut s = homs[0].domain().display();
    for h in homs {
        s.push_str(" → ");
        s.push_str(&h.codomain().display());
    }
    s
}

fn ses_instance(label: String, f: &AbHom, g: &AbHom) -> Instance {
    instance(label, || {
        let q = Field::RATIONALS;
        let (fi, gi) = (induced_hom(f, q), induced_hom(g, q));
        let holds = verify_ses_volume(&fi, &gi)?;
        let vols: Vec<Value> = [fi.domain(), gi.domain(), gi.codomain()]
            .iter()
            .map(|a| inverse_volume(a).map_or(Value::Null, |v| v.to_json()))
            .collect();
        Ok((holds, json!({ "volumes": vols })))
    })
}

/// `1 → Ker ρ → G → G/Ker ρ → 1` for a random `ρ: G → H`.
pub fn random_ses<R: Rng>(r: &mut R, cap: u64) -> (AbHom, AbHom) {
    let g = random_group(r, cap, cap);
    let h = random_group(r, cap, cap);
    let rho = random_hom(r, &g, &h);
    let (_, incl) = kernel_with_inclusion(&rho);
    let (_, proj) = cokernel_with_projection(&incl);
    (incl, proj)
}

fn volume_ses(seed: u64) -> Vec<Instance> {
    let f = AbHom::new(AbGroup::cyclic(2), AbGroup::cyclic(4), vec![vec![2]]).unwrap();
    let mut out = vec![ses_instance("ℤ/2 → ℤ/4 → ℤ/2".into(), &f, &cyclic_quotient(4, 2))];
    let mut r = rng(seed);
    for k in 0..20 {
        let (f, g) = random_ses(&mut r, 32);
        out.push(ses_instance(format!("random SES {k}: {}", chain_label(&[f.clone(), g.clone()])), &f, &g));
    }
    out
}

fn index_perturbation(seed: u64) -> Vec<Instance> {
    let q = Field::RATIONALS;
    let mut out = Vec::new();
    for factors in [vec![2], vec![6], vec![2, 2]] {
        let a = group_algebra(&AbGroup::new(factors).unwrap(), q).into_shared();
        let label = format!("Ind(id) on {}", a.name());
        out.push(instance(label, || {
            let i = fredholm_index(&LinMap::identity(a))?.index;
            Ok((i == Some(Scalar::one(q)), json!({ "index": i.map(|v| v.to_json()) })))
        }));
    }
    let mut r = rng(seed);
    for k in 0..20 {
        let (_, homs) = random_chain(&mut r, 2, 12);
        out.push(instance(format!("composable pair {k}: {}", chain_label(&homs)), || {
            let (x, y) = (induced_hom(&homs[0], q), induced_hom(&homs[1], q));
            let ind = |m: &LinMap| fredholm_index(m).map(|rep| rep.index);
            let (ix, iy, iyx) = (ind(&x)?, ind(&y)?, ind(&y.compose(&x)?)?);
            let passed = match (&ix, &iy, &iyx) {
                (Some(a), Some(b), Some(c)) => *c == a * b,
                _ => false,
            };
            let s = |v: &Option<Scalar>| v.as_ref().map(Scalar::to_json);
            Ok((passed, json!({ "ind_first": s(&ix), "ind_second": s(&iy), "ind_composite": s(&iyx) })))
        }));
    }
    // Perturbations factoring through ℚ[ℤ/2].
    let z2 = AbGroup::cyclic(2);
    let xi = cyclic_quotient(4, 2);
    let mut perturb = vec![("ξ itself".to_string(), xi.clone(), xi.clone())];
    perturb.push(("trivial".into(), xi.clone(), AbHom::zero(xi.domain(), xi.codomain())));
    while perturb.len() < 12 {
        let g = random_group(&mut r, 16, 8);
        let h = random_group(&mut r, 16, 8);
        let base = random_hom(&mut r, &g, &h);
        let eps = random_hom(&mut r, &z2, &h).compose(&random_hom(&mut r, &g, &z2)).unwrap();
        if eps == AbHom::zero(&g, &h) {
            continue;
        }
        let label = format!("through ℤ/2 on {}", hom_label(&base, q));
        perturb.push((label, base, eps));
    }
    for (label, base, eps) in perturb {
        out.push(instance(format!("perturbation: {label}"), || {
            let holds = verify_perturbation(&induced_hom(&base, q), &induced_hom(&eps, q))?;
            Ok((holds, json!({ "index": index_oracle(&base).to_string() })))
        }));
    }
    out
}

fn cocycle(seed: u64) -> Vec<Instance> {
    let q = Field::RATIONALS;
    let mut r = rng(seed);
    (0..20)
        .map(|k| {
            let (_, homs) = random_chain(&mut r, 3, 8);
            instance(format!("triple {k}: {}", chain_label(&homs)), || {
                let m: Vec<LinMap> = homs.iter().map(|h| induced_hom(h, q)).collect();
                let report = cocycle_and_coboundary_check(&m[0], &m[1], &m[2])?;
                let (m10, m21) = (m[1].compose(&m[0])?, m[2].compose(&m[1])?);
                let pairs = [(&m[0], &m[1]), (&m[1], &m[2]), (&m10, &m[2]), (&m[0], &m21)];
                let mut functorial = serde_json::Map::new();
                let mut all = true;
                for gauge in Gauge::ALL {
                    let ok = pairs.iter().map(|(a, b)| verify_functoriality(a, b, gauge)).collect::<Result<Vec<_>>>()?;
                    all &= ok.iter().all(|&b| b);
                    functorial.insert(gauge.to_string(), json!(ok));
                }
                Ok((report.all() && all, json!({ "cocycle": report, "functorial": functorial })))
            })
        })
        .collect()
}

fn square_instance(label: String, maps: [AbHom; 4], expect_hypotheses: Option<bool>) -> Instance {
    instance(label, || {
        let q = Field::RATIONALS;
        let [phi, phi_p, psi, psi_p] = maps.map(|h| induced_hom(&h, q));
        let report = verify_square(&phi, &phi_p, &psi, &psi_p)?;
        let consistent = report.identity.is_some() == report.hypotheses_hold();
        let passed = consistent
            && report.identity != Some(false)
            && expect_hypotheses.is_none_or(|e| e == report.hypotheses_hold());
        Ok((passed, json!(report)))
    })
}

/// The fixed squares: two passing, one with a non-split Ker map.
pub fn standard_squares() -> Vec<(String, [AbHom; 4], bool)> {
    let c = AbGroup::cyclic;
    let times3 = |n| AbHom::new(c(n), c(n), vec![vec![3]]).unwrap();
    vec![
        (
            "ℤ/4 → ℤ/2 against itself".into(),
            [cyclic_quotient(4, 2), AbHom::identity(&c(4)), cyclic_quotient(4, 2), AbHom::identity(&c(2))],
            true,
        ),
        (
            "ℤ/8 → ℤ/2 over ℤ/4 → ℤ/2 via ℤ/8 → ℤ/4".into(),
            [cyclic_quotient(8, 2), cyclic_quotient(8, 4), cyclic_quotient(4, 2), AbHom::identity(&c(2))],
            true,
        ),
        (
            "ℤ/8 → ℤ/4 vertical, ×3 horizontal".into(),
            [cyclic_quotient(8, 4), times3(8), cyclic_quotient(8, 4), times3(4)],
            true,
        ),
        (
            "ℤ/8 → ℤ/4 over ℤ/4 → ℤ/2 (Ker map not split)".into(),
            [cyclic_quotient(8, 4), cyclic_quotient(8, 4), cyclic_quotient(4, 2), cyclic_quotient(4, 2)],
            false,
        ),
    ]
}

fn functorial_square(seed: u64) -> Vec<Instance> {
    let mut out: Vec<Instance> = standard_squares()
        .into_iter()
        .map(|(label, maps, hyp)| square_instance(label, maps, Some(hyp)))
        .collect();
    let mut r = rng(seed);
    for k in 0..12 {
        let g = random_group(&mut r, 12, 6);
        let h = random_group(&mut r, 12, 6);
        let d = random_group(&mut r, 12, 6);
        let phi = random_hom(&mut r, &g, &h);
        let tau = random_hom(&mut r, &h, &d);
        // C = A with φ′ = id and ψ = τ∘φ, so the square commutes.
        let maps = [phi.clone(), AbHom::identity(&g), tau.compose(&phi).unwrap(), tau];
        out.push(square_instance(format!("random square {k}: {}", chain_label(&[maps[0].clone(), maps[3].clone()])), maps, None));
    }
    out
}

fn oracle_crosscheck(seed: u64) -> Vec<Instance> {
    let q = Field::RATIONALS;
    let mut r = rng(seed);
    (0..100)
        .map(|k| {
            let g = random_group(&mut r, 64, 64);
            let h = random_group(&mut r, 64, 64);
            let rho = random_hom(&mut r, &g, &h);
            instance(format!("hom {k}: {}", hom_label(&rho, q)), || {
                let report = fredholm_index(&induced_hom(&rho, q))?;
                let (k_ord, c_ord) = (hom_kernel(&rho).order(), hom_cokernel(&rho).order());
                let oracle = Scalar::from_big_rational(&index_oracle(&rho));
                let passed = report.ker_dim as u64 == k_ord
                    && report.cok_dim as u64 == c_ord
                    && report.index.as_ref() == Some(&oracle);
                Ok((passed, json!({ "report": report.to_json(), "oracle": { "ker": k_ord, "cok": c_ord, "index": oracle.to_json() } })))
            })
        })
        .collect()
}
