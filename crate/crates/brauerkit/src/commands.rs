//! One function per subcommand. Each returns the canonical inputs, the
//! result JSON and the number of internal checks that passed.

use std::str::FromStr;

use brauerkit_core::arith::format_rational;
use brauerkit_core::bogomolov::{
    commutator_product, commutator_product_witness, quotient_center_order, verify_structure, Bivector,
    WGroupElement,
};
use brauerkit_core::brauer::{
    conic_point_with_cap, descent_split_trace, hilbert_residue, hilbert_symbol, is_split, local_invariants,
    product_formula_check, ConicSolution, DescentOutcome, QmodZ, QuaternionClass,
};
use brauerkit_core::cohomology::{cohomology, GModule};
use brauerkit_core::lind_reichardt::{obstruction_conclusion_with, search_rational_points, ZeroReason};
use brauerkit_core::linalg::AbelianInvariants;
use brauerkit_core::quadform::{
    clifford_invariant, diagonalize, discriminant, global_isotropy_with_budget, IsotropyCertificate, QuadraticForm,
};
use brauerkit_core::{Place, Rational};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::formats::{parse_rational_arg, read_json, FormSpec, GroupSpec, ModuleSpec};
use crate::report::Outcome;
use crate::CliError;

/// Search budgets, overridable through `BRAUERKIT_BUDGET`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub witness: u64,
    pub conic: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            witness: brauerkit_core::quadform::DEFAULT_WITNESS_BUDGET,
            conic: brauerkit_core::brauer::DEFAULT_CONIC_SEARCH_CAP,
        }
    }
}

impl Budget {
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var("BRAUERKIT_BUDGET") {
            Ok(s) => {
                let n: u64 = s.trim().parse().map_err(|_| CliError::Parse(format!("BRAUERKIT_BUDGET={s:?} is not a count")))?;
                Ok(Budget { witness: n, conic: n })
            }
            Err(_) => Ok(Budget::default()),
        }
    }
}

fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

/// Invariant factors stay plain JSON numbers while they fit.
pub fn abelian_json(h: &AbelianInvariants) -> Value {
    let torsion: Vec<Value> = h
        .torsion
        .iter()
        .map(|t| u64::try_from(t).map(Value::from).unwrap_or_else(|_| Value::String(t.to_string())))
        .collect();
    json!({ "free_rank": h.free_rank, "torsion": torsion })
}

fn invariants_json(c: &QuaternionClass) -> Value {
    let inv = local_invariants(c);
    let mut map = Map::new();
    for v in c.candidate_places() {
        map.insert(v.to_string(), Value::String(inv.get(&v).to_string()));
    }
    Value::Object(map)
}

pub fn hilbert(place: &str, a: &str, b: &str) -> Result<Outcome, CliError> {
    let v = Place::from_str(place)?;
    let (a, b) = (parse_rational_arg(a)?, parse_rational_arg(b)?);
    let c = QuaternionClass::new(a.clone(), b.clone())?;
    let symbol = hilbert_symbol(&a, &b, &v);
    let mut checks = 0;
    checks += (symbol == hilbert_symbol(&b, &a, &v)) as u64;
    checks += (symbol == c.hilbert_symbol(&v)) as u64;
    let mut result = json!({
        "symbol": symbol.to_string(),
        "invariant": QmodZ::from_sign(symbol).to_string(),
    });
    if let Place::Finite(p) = &v {
        if !p.is_two() {
            result["residue"] = int(&hilbert_residue(&a, &b, p));
        }
    }
    Ok(Outcome { inputs: json!({ "place": v.to_string(), "a": q(&a), "b": q(&b) }), result, checks_passed: checks })
}

pub fn quat_invariants(a: &str, b: &str) -> Result<Outcome, CliError> {
    let (a, b) = (parse_rational_arg(a)?, parse_rational_arg(b)?);
    let c = QuaternionClass::new(a.clone(), b.clone())?;
    let holds = product_formula_check(&c);
    let result = json!({
        "invariants": invariants_json(&c),
        "sum": local_invariants(&c).sum().to_string(),
        "product_formula": holds,
    });
    Ok(Outcome { inputs: json!({ "a": q(&a), "b": q(&b) }), result, checks_passed: holds as u64 })
}

pub fn quat_split(a: &str, b: &str, trace: bool, budget: Budget) -> Result<Outcome, CliError> {
    let (a, b) = (parse_rational_arg(a)?, parse_rational_arg(b)?);
    let c = QuaternionClass::new(a.clone(), b.clone())?;
    let split = is_split(&c);
    let obstructions: Vec<Value> = local_invariants(&c).support().iter().map(|v| Value::String(v.to_string())).collect();
    let mut result = json!({ "split": split, "obstructions": obstructions });
    let mut checks = product_formula_check(&c) as u64;
    if split {
        if let ConicSolution::Point(p) = conic_point_with_cap(&a, &b, budget.conic)? {
            let [u, v, w] = p.clone().map(Rational::from_integer);
            checks += (&u * &u - &a * &v * &v - &b * &w * &w == Rational::from_integer(0.into())) as u64;
            result["witness"] = Value::Array(p.iter().map(int).collect());
        }
    }
    if trace {
        let (a_bar, b_bar) = c.normalized();
        let t = descent_split_trace(a_bar, b_bar)?;
        let steps: Vec<Value> = t
            .steps
            .iter()
            .map(|s| {
                json!({
                    "a": int(&s.a), "b": int(&s.b), "c": int(&s.c),
                    "b_prime": int(&s.b_prime), "reduced": int(&s.reduced), "square": int(&s.square),
                })
            })
            .collect();
        let outcome = match &t.outcome {
            DescentOutcome::BaseCaseSplit => json!({ "kind": "BaseCaseSplit" }),
            DescentOutcome::LocalObstruction(v) => json!({ "kind": "LocalObstruction", "place": v.to_string() }),
        };
        checks += (matches!(t.outcome, DescentOutcome::BaseCaseSplit) == split) as u64;
        result["trace"] = json!({
            "a": int(a_bar),
            "b": int(b_bar),
            "steps": steps,
            "outcome": outcome,
            "witness": t.witness.as_ref().map(|w| w.iter().map(int).collect::<Vec<_>>()),
        });
    }
    Ok(Outcome { inputs: json!({ "a": q(&a), "b": q(&b) }), result, checks_passed: checks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfAction {
    Diag,
    Disc,
    Clifford,
    Isotropic,
}

pub fn load_form(diagonal: Option<&str>, gram: Option<&std::path::Path>) -> Result<QuadraticForm, CliError> {
    match (diagonal, gram) {
        (Some(d), None) => Ok(QuadraticForm::diagonal_form(&crate::formats::parse_rational_list(d)?)?),
        (None, Some(path)) => read_json::<FormSpec>(path)?.build(),
        _ => Err(CliError::Parse("give either a diagonal list or --gram".into())),
    }
}

pub fn qf(action: QfAction, form: &QuadraticForm, budget: Budget) -> Result<Outcome, CliError> {
    let inputs = serde_json::to_value(FormSpec::of(form)).expect("serializable");
    let (result, checks) = match action {
        QfAction::Diag => {
            let (d, basis) = diagonalize(form);
            let ok = d == form.diagonal();
            let basis: Vec<Vec<Value>> = basis.iter().map(|r| r.iter().map(q).collect()).collect();
            (json!({ "diagonal": d.iter().map(q).collect::<Vec<_>>(), "basis": basis }), ok as u64)
        }
        QfAction::Disc => {
            let d = discriminant(form)?;
            (json!({ "discriminant": int(d.representative()), "trivial": d.is_trivial() }), 0)
        }
        QfAction::Clifford => {
            let c = clifford_invariant(form)?;
            let ok = product_formula_check(&c);
            let result = json!({
                "a": q(c.a()),
                "b": q(c.b()),
                "invariants": invariants_json(&c),
                "split": is_split(&c),
            });
            (result, ok as u64)
        }
        QfAction::Isotropic => match global_isotropy_with_budget(form, budget.witness)? {
            IsotropyCertificate::Isotropic(w) => {
                let x: Vec<Rational> = w.iter().cloned().map(Rational::from_integer).collect();
                let ok = form.evaluate(&x) == Rational::from_integer(0.into());
                (json!({ "isotropic": true, "certificate": "Isotropic", "witness": w.iter().map(int).collect::<Vec<_>>() }), ok as u64)
            }
            IsotropyCertificate::Anisotropic(v) => {
                (json!({ "isotropic": false, "certificate": "Anisotropic", "place": v.to_string() }), 0)
            }
            IsotropyCertificate::IsotropicNoWitness => {
                (json!({ "isotropic": true, "certificate": "IsotropicNoWitness" }), 0)
            }
        },
    };
    Ok(Outcome { inputs, result, checks_passed: checks })
}

pub fn cohomology_cmd(group: &std::path::Path, module: &std::path::Path, degree: usize) -> Result<Outcome, CliError> {
    let gspec: GroupSpec = read_json(group)?;
    let g = gspec.build()?;
    let mspec: ModuleSpec = read_json(module)?;
    let m = mspec.build(&g, &gspec)?;
    let h = cohomology(&g, &m, degree)?;
    let inputs = json!({
        "group": GroupSpec::table_of(&g),
        "module": ModuleSpec::full_action(&m, &g),
        "degree": degree,
    });
    Ok(Outcome { inputs, result: abelian_json(&h), checks_passed: 0 })
}

pub fn perm_module(group: &std::path::Path, subgroup: &str, degree: Option<usize>) -> Result<Outcome, CliError> {
    let gspec: GroupSpec = read_json(group)?;
    let g = gspec.build()?;
    let h: Vec<usize> = subgroup
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| CliError::Parse(format!("bad element index {t:?}"))))
        .collect::<Result<_, _>>()?;
    let m = GModule::permutation_module(&g, &h)?;
    let mut result = json!({ "module": ModuleSpec::full_action(&m, &g) });
    if let Some(i) = degree {
        result["cohomology"] = abelian_json(&cohomology(&g, &m, i)?);
    }
    let inputs = json!({ "group": GroupSpec::table_of(&g), "subgroup": h, "degree": degree });
    Ok(Outcome { inputs, result, checks_passed: 0 })
}

pub fn lind_reichardt(prime_bound: u64, height: u32) -> Result<Outcome, CliError> {
    let report = obstruction_conclusion_with(prime_bound, prime_bound.max(brauerkit_core::lind_reichardt::DEFAULT_SPOT_CHECK_BOUND))?;
    let search = search_rational_points(height);
    let at_17 = report
        .local_points
        .iter()
        .find(|(pt, _)| pt.place == Place::finite(17).expect("prime"))
        .map(|(_, x)| *x)
        .unwrap_or(QmodZ::ZERO);
    let local: Vec<Value> = report
        .local_points
        .iter()
        .map(|(pt, x)| json!({ "place": pt.place.to_string(), "chart": format!("{:?}", pt.chart), "pairing": x.to_string() }))
        .collect();
    let elsewhere: Vec<Value> = report
        .zero_elsewhere
        .entries
        .iter()
        .map(|e| {
            let reason = match e.reason {
                ZeroReason::SeventeenIsSquare => "SeventeenIsSquare",
                ZeroReason::UnitRepresentative { .. } => "UnitRepresentative",
            };
            json!({ "prime": e.prime, "reason": reason, "pairing": e.pairing.to_string(), "verified": e.verified })
        })
        .collect();
    let c17 = &report.constant_at_17;
    let empty = report.verdict == "empty" && search.found.is_empty();
    let checks = [
        report.local_points_nonempty,
        report.chart_identity,
        c17.holds,
        report.zero_elsewhere.all_zero,
        report.dichotomy_covers_all_primes,
        search.found.is_empty(),
    ]
    .iter()
    .filter(|&&b| b)
    .count() as u64;
    let result = json!({
        "verdict": if empty { "empty" } else { "inconclusive" },
        "pairing_at_17": at_17.to_string(),
        "total_pairing": report.total_pairing.to_string(),
        "local_points": local,
        "residue_table_17": {
            "u_residues": c17.u_residues,
            "ratios": c17.ratios,
            "v_residues": c17.v_residues,
            "nonzero_fourth_powers": c17.nonzero_fourth_powers,
            "two_is_fourth_power": c17.two_is_fourth_power,
            "holds": c17.holds,
        },
        "zero_elsewhere": elsewhere,
        "chart_identity": report.chart_identity,
        "rational_search": {
            "height": search.height,
            "candidates": search.candidates,
            "found": search.found.iter().map(|(x, y)| json!([q(x), q(y)])).collect::<Vec<_>>(),
        },
    });
    Ok(Outcome { inputs: json!({ "prime_bound": prime_bound, "height": height }), result, checks_passed: checks })
}

pub fn parse_bivector(p: u32, s: &str) -> Result<Bivector, CliError> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::Parse(format!("bad bivector coordinate {t:?}"))))
        .collect::<Result<_, _>>()?;
    let coords: [i64; 6] =
        parts.try_into().map_err(|_| CliError::Parse("a bivector has six coordinates e12,e13,e14,e23,e24,e34".into()))?;
    Ok(Bivector::new(p, coords))
}

pub fn bogomolov(p: u32, z: &str) -> Result<Outcome, CliError> {
    let structure = verify_structure(p)?;
    let zb = parse_bivector(p, z)?;
    let center = quotient_center_order(&zb)?;
    let witness = commutator_product_witness(&zb)?;
    let product_ok = commutator_product(&witness, &[]) == Some(WGroupElement::central(zb));
    let checks = [
        structure.exponent_p,
        structure.commutators_central,
        structure.commutator_identity,
        structure.commutator_span_rank == 6,
        structure.associativity,
        structure.central_w_count == 1,
        product_ok,
    ]
    .iter()
    .filter(|&&b| b)
    .count() as u64;
    let result = json!({
        "structure": {
            "closure_size": structure.closure_size,
            "exponent_p": structure.exponent_p,
            "commutators_central": structure.commutators_central,
            "commutator_identity": structure.commutator_identity,
            "commutator_span_rank": structure.commutator_span_rank,
            "associativity_triples": structure.associativity_triples,
            "associativity": structure.associativity,
            "center_order": int(&structure.center_order),
            "passes": structure.passes(),
        },
        "quotient": {
            "z": zb.to_string(),
            "decomposable": center.decomposable,
            "central_w_count": center.central_w_count,
            "center_order": int(&center.order),
            "exceeds_w_prime": center.exceeds_w_prime,
            "plane": center.plane.map(|(v, w)| [v.to_string(), w.to_string()]),
        },
        "witness": {
            "pairs": witness.iter().map(|(w, v)| [w.to_string(), v.to_string()]).collect::<Vec<_>>(),
            "product_matches": product_ok,
        },
    });
    let coords: Vec<u32> = zb.coords().to_vec();
    Ok(Outcome { inputs: json!({ "prime": p, "z": coords }), result, checks_passed: checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quat_split_matches_documented_output() {
        let out = quat_split("-1", "-1", false, Budget::default()).unwrap();
        assert_eq!(out.result, json!({ "split": false, "obstructions": ["inf", "2"] }));
        assert_eq!(out.inputs, json!({ "a": "-1", "b": "-1" }));
    }

    #[test]
    fn split_pairs_carry_a_witness() {
        let out = quat_split("5", "-1", true, Budget::default()).unwrap();
        assert_eq!(out.result["split"], json!(true));
        assert!(out.result["witness"].is_array());
        assert_eq!(out.result["trace"]["outcome"]["kind"], json!("BaseCaseSplit"));
        assert_eq!(out.checks_passed, 3);
    }

    #[test]
    fn hilbert_reports() {
        let out = hilbert("3", "3", "-1").unwrap();
        assert_eq!(out.result["symbol"], json!("-1"));
        assert_eq!(out.result["invariant"], json!("1/2"));
        assert!(matches!(hilbert("4", "1", "1"), Err(CliError::Domain(_))));
        assert!(matches!(hilbert("2", "x", "1"), Err(CliError::Parse(_))));
    }

    #[test]
    fn qf_isotropic_certificates() {
        let f = QuadraticForm::from_integers(&[1, -2, -7]).unwrap();
        let out = qf(QfAction::Isotropic, &f, Budget::default()).unwrap();
        assert_eq!(out.result["isotropic"], json!(true));
        let f = QuadraticForm::from_integers(&[1, 1, 1]).unwrap();
        let out = qf(QfAction::Isotropic, &f, Budget::default()).unwrap();
        assert_eq!(out.result, json!({ "isotropic": false, "certificate": "Anisotropic", "place": "inf" }));
        let odd = qf(QfAction::Disc, &f, Budget::default());
        assert!(matches!(odd, Err(CliError::Domain(brauerkit_core::Error::InvalidForm(_)))));
    }

    #[test]
    fn bivector_parsing() {
        assert_eq!(parse_bivector(3, "1,0,0,0,0,1").unwrap(), Bivector::new(3, [1, 0, 0, 0, 0, 1]));
        assert!(parse_bivector(3, "1,0").is_err());
    }
}
