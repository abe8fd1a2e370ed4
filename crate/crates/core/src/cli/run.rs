use serde_json::{json, Map, Value};

use super::json;
use super::props;
use super::scenario::{Command, Object, Scenario, Task};
use crate::error::{Error, Result};
use crate::maslov::{kashiwara_form, maslov_of_path, maslov_triple, nondegenerate_iff_transverse, sylvester_matrix};
use crate::sturm::{decompose, f_mn, mu_cocycle, phi, phi_closed_forms, sylvester_of_sturm};
use crate::symplectic::Lagrangian;
use crate::witt::{hasse_invariant, hasse_places, isometry_invariants, signed_discriminant, witt_class};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Task results plus a seed header. Keys are sorted, so the serialized form
/// is byte-identical for identical (scenario, seed).
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub header: Map<String, Value>,
    pub tasks: Vec<Value>,
    failed: usize,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut m = self.header.clone();
        m.insert("seed".into(), json!(self.seed));
        m.insert("tasks".into(), Value::Array(self.tasks.clone()));
        m.insert("failed_tasks".into(), json!(self.failed));
        Value::Object(m)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize") + "\n"
    }

    pub fn failed_tasks(&self) -> usize {
        self.failed
    }
}

/// 0 when every task and property passed, 1 otherwise.
pub fn exit_code(report: &Report) -> i32 {
    if report.failed == 0 {
        EXIT_PASS
    } else {
        EXIT_FAILURE
    }
}

pub fn run(scenario: &Scenario, seed: u64) -> Report {
    let mut tasks = Vec::new();
    let mut failed = 0;
    for (i, task) in scenario.tasks.iter().enumerate() {
        let mut entry = Map::new();
        entry.insert("index".into(), json!(i));
        entry.insert("command".into(), json!(task.command.name()));
        entry.insert("args".into(), json!(task.args));
        match run_task(scenario, task, seed) {
            Ok((result, ok)) => {
                entry.insert("status".into(), json!(if ok { "pass" } else { "fail" }));
                entry.insert("result".into(), result);
                failed += usize::from(!ok);
            }
            Err(e) => {
                entry.insert("status".into(), json!("error"));
                entry.insert("error".into(), json!(e.to_string()));
                failed += 1;
            }
        }
        tasks.push(Value::Object(entry));
    }
    let mut header = Map::new();
    header.insert("field".into(), json::field(scenario.field()));
    header.insert("g".into(), json!(scenario.genus()));
    Report { seed, header, tasks, failed }
}

/// Runs property families outside a scenario.
pub fn run_props(families: &[&str], cases: Option<usize>, seed: u64) -> Result<Report> {
    let mut tasks = Vec::new();
    let mut failed = 0;
    for (i, name) in families.iter().enumerate() {
        let fam = props::family(name)?;
        let rep = props::run_family(name, cases.unwrap_or(fam.default_cases), seed)?;
        failed += usize::from(!rep.all_passed());
        tasks.push(json!({"index": i, "command": "props", "status": if rep.all_passed() { "pass" } else { "fail" }, "result": rep.to_json()}));
    }
    Ok(Report { seed, header: Map::new(), tasks, failed })
}

fn arg<'a>(s: &'a Scenario, t: &Task, i: usize) -> &'a Object {
    s.object(&t.args[i])
}

macro_rules! expect_kind {
    ($obj:expr, $variant:ident) => {
        match $obj {
            Object::$variant(x) => x,
            _ => return Err(Error::Internal("argument kind was validated at parse time".into())),
        }
    };
}

fn run_task(s: &Scenario, t: &Task, seed: u64) -> Result<(Value, bool)> {
    let space = s.space;
    Ok(match &t.command {
        Command::Witt => {
            let q = expect_kind!(arg(s, t, 0), Form);
            let inv = isometry_invariants(q);
            let mut m = Map::new();
            m.insert("dim".into(), json!(inv.dim));
            m.insert("radical_dim".into(), json!(inv.radical_dim));
            m.insert("witt".into(), json::witt(&witt_class(q)));
            if q.is_nondegenerate() {
                m.insert("signed_disc".into(), json!(signed_discriminant(q)?.to_string()));
                if s.field().is_rationals() {
                    let mut h = Map::new();
                    for place in hasse_places(q) {
                        h.insert(place.to_string(), json!(hasse_invariant(q, &place)?));
                    }
                    m.insert("hasse".into(), Value::Object(h));
                }
            }
            (Value::Object(m), true)
        }
        Command::Sylvester => match arg(s, t, 0) {
            Object::Path(p) => {
                let sy = sylvester_matrix(p)?;
                let (nondeg, trans) = nondegenerate_iff_transverse(p)?;
                let r = json!({
                    "matrix": json::matrix(sy.gram()),
                    "maslov": json::witt(&maslov_of_path(p)?),
                    "nondegenerate": nondeg,
                    "ends_transverse": trans,
                });
                (r, nondeg == trans)
            }
            Object::Sturm(w) => {
                let sy = sylvester_of_sturm(w);
                let mut f = Map::new();
                for (m, n) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    f.insert(format!("f{m}{n}"), json::witt(&f_mn(w, m, n)?));
                }
                let r = json!({
                    "matrix": json::matrix(sy.gram()),
                    "witt": json::witt(&witt_class(&sy)),
                    "evaluated": json::symplectic(&w.evaluate()?),
                    "f": f,
                });
                (r, true)
            }
            _ => return Err(Error::Internal("argument kind was validated at parse time".into())),
        },
        Command::Maslov => {
            let l: Vec<&Lagrangian> = (0..3).map(|i| match arg(s, t, i) {
                Object::Lagrangian(l) => Ok(l),
                _ => Err(Error::Internal("argument kind was validated at parse time".into())),
            }).collect::<Result<_>>()?;
            let mu = maslov_triple(l[0], l[1], l[2])?;
            let k = witt_class(&kashiwara_form(l[0], l[1], l[2])?);
            (json!({"maslov": json::witt(&mu), "two_maslov": json::witt(&mu.times(2)), "kashiwara": json::witt(&k)}), true)
        }
        Command::Cocycle => {
            let x = expect_kind!(arg(s, t, 0), Symplectic);
            let y = expect_kind!(arg(s, t, 1), Symplectic);
            let mu = mu_cocycle(x, y)?;
            let l = Lagrangian::standard(space);
            let bl = maslov_triple(&x.inverse().act(&l)?, &l, &y.act(&l)?)?;
            (json!({"mu": json::witt(&mu), "maslov_triple": json::witt(&bl)}), mu == bl)
        }
        Command::Phi => {
            let m = expect_kind!(arg(s, t, 0), Symplectic);
            let v = phi(m)?;
            let (closed, ok) = match phi_closed_forms(m)? {
                Some(c) => (json::witt_mod_i2(&c), c == v),
                None => (json!("not applicable"), true),
            };
            (json!({"phi": json::witt_mod_i2(&v), "closed_form": closed}), ok)
        }
        Command::Decompose => {
            let m = expect_kind!(arg(s, t, 0), Symplectic);
            let w = decompose(m)?;
            (json!({"word": json::word(&w), "length": w.len()}), true)
        }
        Command::Props { family, cases, seed: own } => {
            let rep = props::run_family(family, *cases, own.unwrap_or(seed))?;
            (rep.to_json(), rep.all_passed())
        }
    })
}
