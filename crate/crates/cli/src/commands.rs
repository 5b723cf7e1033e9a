use std::path::Path;

use hopfcalc::abgroup::{
    function_algebra, group_algebra, hom_cokernel, hom_kernel, index_oracle, induced_hom, smith_normal_form, AbGroup,
    AbHom, IntMatrix,
};
use hopfcalc::actions::{is_cosmall, is_small};
use hopfcalc::campaigns::{self, Campaign, CampaignReport};
use hopfcalc::exactla::{Matrix, Scalar};
use hopfcalc::hopfcore::{read_json, FinBimonoid, LinMap};
use hopfcalc::integrals::{
    cointegral_space, integral_along_space, integral_space, is_generator, normalized_cointegral, normalized_integral,
    normalized_integral_along,
};
use hopfcalc::kerco::{coimage, cokernel_hopf, image, kernel_hopf, mu_xi, SubHopf};
use hopfcalc::volume::{fredholm_index, functorial_integral, gauge_value, inverse_volume, omega, pairing};
use hopfcalc::Error;
use serde_json::{json, Value};

use crate::{seed, Command, GroupArgs, GroupCommand, OracleCommand, SubArgs};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_COUNTEREXAMPLE: u8 = 3;

/// A failed run: exit code plus the JSON written to standard output.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub report: Value,
}

impl Failure {
    pub fn input(reason: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, report: json!({ "error": "input", "reason": reason.into() }) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::IdentityFailed(_) => EXIT_COUNTEREXAMPLE,
            e if e.is_precondition() => EXIT_PRECONDITION,
            _ => EXIT_INPUT,
        };
        Failure { code, report: json!({ "error": e.kind(), "reason": e.to_string() }) }
    }
}

type Outcome = Result<Value, Failure>;

fn scalar(s: Option<Scalar>) -> Value {
    s.map_or(Value::Null, |v| v.to_json())
}

fn write_json(path: &Path, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("json serializes") + "\n";
    std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(value: Value, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => {
            write_json(path, &value)?;
            Ok(json!({ "written": path.display().to_string() }))
        }
        None => Ok(value),
    }
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Check { bimonoid } => {
            let a = FinBimonoid::load(&bimonoid)?;
            let report = a.check_axioms();
            Ok(json!({
                "name": a.name(),
                "field": a.field().to_string(),
                "dim": a.dim(),
                "bimonoid": report.is_bimonoid(),
                "hopf": report.is_hopf(),
                "axioms": report,
            }))
        }
        Command::Integrals { bimonoid, side, normalized } => {
            let a = FinBimonoid::load(&bimonoid)?;
            let sigma = normalized.then(|| normalized_integral(&a)).flatten();
            let cosigma = normalized.then(|| normalized_cointegral(&a)).flatten();
            let field = a.field();
            let ints = integral_space(&a, side);
            let coints = cointegral_space(&a, side);
            Ok(json!({
                "integrals": ints.report(sigma.map(|v| Matrix::column_vector(field, v)).as_ref(), None),
                "cointegrals": coints.report(cosigma.map(|v| Matrix::row_vector(field, v)).as_ref(), None),
                "small": is_small(&a),
                "cosmall": is_cosmall(&a),
            }))
        }
        Command::Along { map, side, normalized, generator } => {
            let xi = LinMap::load(&map)?;
            let space = integral_along_space(&xi, side)?;
            let mu = if normalized || generator { normalized_integral_along(&xi)? } else { None };
            let gen = match (&mu, generator) {
                (Some(m), true) => Some(is_generator(m, &xi)?),
                (None, true) => Some(false),
                _ => None,
            };
            Ok(space.report(mu.as_ref().map(LinMap::matrix), gen))
        }
        Command::Kernel(args) => sub_object(args, kernel_hopf),
        Command::Cokernel(args) => sub_object(args, cokernel_hopf),
        Command::Coimage(args) => sub_object(args, coimage),
        Command::Image(args) => sub_object(args, image),
        Command::Mu { map } => {
            let xi = LinMap::load(&map)?;
            let mu = mu_xi(&xi)?;
            Ok(json!({ "mu": mu.matrix().to_json(), "domain": mu.domain().name(), "codomain": mu.codomain().name() }))
        }
        Command::Vol { bimonoid } => {
            let a = FinBimonoid::load(&bimonoid)?;
            Ok(json!({ "inverse_volume": scalar(inverse_volume(&a)) }))
        }
        Command::Pairing { map } => Ok(json!({ "pairing": pairing(&LinMap::load(&map)?)?.to_json() })),
        Command::Index { map } => Ok(fredholm_index(&LinMap::load(&map)?)?.to_json()),
        Command::Omega { first, second } => {
            let (x, y) = (LinMap::load(&first)?, LinMap::load(&second)?);
            Ok(json!({ "omega": omega(&x, &y)?.to_json() }))
        }
        Command::Shriek { map, gauge } => {
            let xi = LinMap::load(&map)?;
            let upsilon = gauge_value(&xi, gauge)?;
            let shriek = functorial_integral(&xi, gauge)?;
            Ok(json!({ "gauge": gauge.as_str(), "upsilon": scalar(upsilon), "shriek": shriek.matrix().to_json() }))
        }
        Command::Group { what } => group(what),
        Command::Oracle { what } => oracle(what),
        Command::Verify { campaign, seed: flag } => verify(&campaign, seed(flag)?),
    }
}

fn sub_object(args: SubArgs, build: fn(&LinMap) -> hopfcalc::Result<SubHopf>) -> Outcome {
    let xi = LinMap::load(&args.map)?;
    let sub = build(&xi)?;
    emit(sub.to_json(Some(&args.map.display().to_string())), args.output.as_deref())
}

fn group_of(factors: Vec<u64>) -> Result<AbGroup, Failure> {
    Ok(AbGroup::canonical(&factors)?)
}

fn group(what: GroupCommand) -> Outcome {
    match what {
        GroupCommand::Algebra(GroupArgs { factors, field, output }) => {
            emit(group_algebra(&group_of(factors)?, field).to_json(), output.as_deref())
        }
        GroupCommand::Function(GroupArgs { factors, field, output }) => {
            emit(function_algebra(&group_of(factors)?, field).to_json(), output.as_deref())
        }
        GroupCommand::Induced { hom, field, output } => {
            let rho = load_hom(&hom)?;
            let xi = induced_hom(&rho, field);
            let stem = output.file_stem().and_then(|s| s.to_str()).unwrap_or("map").to_string();
            let dir = output.parent().map(Path::to_path_buf).unwrap_or_default();
            let (dn, cn) = (format!("{stem}.domain.json"), format!("{stem}.codomain.json"));
            write_json(&dir.join(&dn), &xi.domain().to_json())?;
            write_json(&dir.join(&cn), &xi.codomain().to_json())?;
            let file = serde_json::to_value(xi.to_file(&dn, &cn)).expect("map file serializes");
            emit(file, Some(&output))
        }
    }
}

fn load_hom(path: &Path) -> Result<AbHom, Failure> {
    serde_json::from_value(read_json(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Integers as JSON numbers when they fit in i64, as strings otherwise.
fn int_json(x: &impl std::fmt::Display) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map_or(Value::String(s), Value::from)
}

fn int_rows(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(int_json).collect())).collect())
}

fn oracle(what: OracleCommand) -> Outcome {
    match what {
        OracleCommand::Snf { matrix } => {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(&matrix).map_err(|e| Failure::input(format!("matrix must be JSON rows of integers: {e}")))?;
            if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
                return Err(Failure::input("matrix rows have different lengths"));
            }
            let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
            let diagonal: Vec<Value> = snf.diagonal().iter().map(int_json).collect();
            Ok(json!({ "u": int_rows(&snf.u), "d": int_rows(&snf.d), "v": int_rows(&snf.v), "diagonal": diagonal }))
        }
        OracleCommand::Kernel { hom } => Ok(json!({ "kernel": hom_kernel(&load_hom(&hom)?) })),
        OracleCommand::Cokernel { hom } => Ok(json!({ "cokernel": hom_cokernel(&load_hom(&hom)?) })),
        OracleCommand::Index { hom } => Ok(json!({ "index": index_oracle(&load_hom(&hom)?).to_string() })),
    }
}

fn verify(name: &str, seed: u64) -> Outcome {
    let selected: Vec<Campaign> = if name == "all" { Campaign::ALL.to_vec() } else { vec![name.parse()?] };
    let reports: Vec<CampaignReport> = selected.into_iter().map(|c| campaigns::run(c, seed)).collect();
    let failed = reports.iter().any(|r| !r.all_passed());
    let value = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        json!({ "seed": seed, "campaigns": reports.iter().map(CampaignReport::to_json).collect::<Vec<_>>() })
    };
    if failed {
        let mut report = value;
        report["error"] = json!("counterexample");
        report["reason"] = json!("a campaign instance contradicted the claim; see counterexamples");
        return Err(Failure { code: EXIT_COUNTEREXAMPLE, report });
    }
    Ok(value)
}
