use std::collections::BTreeMap;

use serde_json::Value;

use super::json;
use super::props;
use crate::error::{Error, Result};
use crate::exact::FieldDescriptor;
use crate::maslov::LagrangianPath;
use crate::sturm::SturmWord;
use crate::symplectic::{Lagrangian, SymplecticMap, SymplecticSpace};
use crate::witt::SymmetricForm;

#[derive(Clone, Debug)]
pub enum Object {
    Lagrangian(Lagrangian),
    Symplectic(SymplecticMap),
    Form(SymmetricForm),
    Sturm(SturmWord),
    Path(LagrangianPath),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Lagrangian(_) => "lagrangian",
            Object::Symplectic(_) => "symplectic",
            Object::Form(_) => "form",
            Object::Sturm(_) => "sturm",
            Object::Path(_) => "path",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Witt,
    Sylvester,
    Maslov,
    Cocycle,
    Phi,
    Decompose,
    Props { family: String, cases: usize, seed: Option<u64> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Witt => "witt",
            Command::Sylvester => "sylvester",
            Command::Maslov => "maslov",
            Command::Cocycle => "cocycle",
            Command::Phi => "phi",
            Command::Decompose => "decompose",
            Command::Props { .. } => "props",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Task {
    pub command: Command,
    pub args: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub space: SymplecticSpace,
    pub objects: BTreeMap<String, Object>,
    pub tasks: Vec<Task>,
}

impl Scenario {
    pub fn field(&self) -> FieldDescriptor {
        self.space.field()
    }

    pub fn genus(&self) -> usize {
        self.space.genus()
    }

    pub fn object(&self, name: &str) -> &Object {
        &self.objects[name]
    }
}

fn at<T>(loc: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{loc}: {m}")),
        other => Error::Parse(format!("{loc}: {other}")),
    })
}

fn parse_node(space: SymplecticSpace, lagrangians: &BTreeMap<String, Lagrangian>, v: &Value) -> Result<Lagrangian> {
    if let Some(name) = v.as_str() {
        if let Some(l) = lagrangians.get(name) {
            return Ok(l.clone());
        }
        if name != "L" && name != "L*" {
            return Err(Error::Parse(format!("unknown Lagrangian \"{name}\"")));
        }
    }
    json::parse_lagrangian(space, v)
}

/// Parses and validates a scenario; every error names its location.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    let field = at("field", json::parse_field(root.get("field").unwrap_or(&Value::Null)))?;
    let g = root.get("g").and_then(Value::as_u64).ok_or_else(|| Error::Parse("g: expected a positive integer".into()))?;
    let space = at("g", SymplecticSpace::new(field, g as usize))?;
    let empty = serde_json::Map::new();
    let objs = match root.get("objects") {
        None => &empty,
        Some(v) => v.as_object().ok_or_else(|| Error::Parse("objects: expected an object".into()))?,
    };
    let mut objects = BTreeMap::new();
    let mut lagrangians = BTreeMap::new();
    // Lagrangians first so paths can refer to them.
    for pass in [true, false] {
        for (name, spec) in objs {
            let loc = format!("objects.{name}");
            let kind = spec.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("{loc}: missing \"kind\"")))?;
            if (kind == "lagrangian") != pass {
                continue;
            }
            let value = spec.get("value").ok_or_else(|| Error::Parse(format!("{loc}: missing \"value\"")))?;
            let obj = match kind {
                "lagrangian" => {
                    let l = at(&loc, json::parse_lagrangian(space, value))?;
                    lagrangians.insert(name.clone(), l.clone());
                    Object::Lagrangian(l)
                }
                "symplectic" => Object::Symplectic(at(&loc, json::parse_symplectic(space, value))?),
                "form" => Object::Form(at(&loc, json::parse_matrix(field, value).and_then(SymmetricForm::new))?),
                "sturm" => Object::Sturm(at(&loc, json::parse_word(space, value))?),
                "path" => {
                    let nodes = value.as_array().ok_or_else(|| Error::Parse(format!("{loc}: path must be an array")))?;
                    let nodes = at(&loc, nodes.iter().map(|n| parse_node(space, &lagrangians, n)).collect::<Result<Vec<_>>>())?;
                    Object::Path(at(&loc, LagrangianPath::new(nodes))?)
                }
                other => return Err(Error::Parse(format!("{loc}: unknown kind \"{other}\""))),
            };
            objects.insert(name.clone(), obj);
        }
    }
    let mut tasks = Vec::new();
    let task_list = match root.get("tasks") {
        None => vec![],
        Some(v) => v.as_array().ok_or_else(|| Error::Parse("tasks: expected an array".into()))?.clone(),
    };
    for (i, t) in task_list.iter().enumerate() {
        let loc = format!("tasks[{i}]");
        tasks.push(at(&loc, parse_task(t, &objects))?);
    }
    Ok(Scenario { space, objects, tasks })
}

fn parse_task(t: &Value, objects: &BTreeMap<String, Object>) -> Result<Task> {
    let name = t.get("command").and_then(Value::as_str).ok_or_else(|| Error::Parse("missing \"command\"".into()))?;
    let args: Vec<String> = match t.get("args") {
        None => vec![],
        Some(a) => a
            .as_array()
            .ok_or_else(|| Error::Parse("args must be an array of names".into()))?
            .iter()
            .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| Error::Parse("args must be names".into())))
            .collect::<Result<_>>()?,
    };
    let (command, kinds): (Command, &[&[&str]]) = match name {
        "witt" => (Command::Witt, &[&["form"]]),
        "sylvester" => (Command::Sylvester, &[&["path", "sturm"]]),
        "maslov" => (Command::Maslov, &[&["lagrangian"], &["lagrangian"], &["lagrangian"]]),
        "cocycle" => (Command::Cocycle, &[&["symplectic"], &["symplectic"]]),
        "phi" => (Command::Phi, &[&["symplectic"]]),
        "decompose" => (Command::Decompose, &[&["symplectic"]]),
        "props" => {
            let family = t.get("family").and_then(Value::as_str).ok_or_else(|| Error::Parse("props needs \"family\"".into()))?;
            props::family(family)?;
            let cases = match t.get("cases") {
                None => props::family(family)?.default_cases,
                Some(c) => c.as_u64().ok_or_else(|| Error::Parse("cases must be a nonnegative integer".into()))? as usize,
            };
            let seed = match t.get("seed") {
                None => None,
                Some(s) => Some(s.as_u64().ok_or_else(|| Error::Parse("seed must be a nonnegative integer".into()))?),
            };
            (Command::Props { family: family.into(), cases, seed }, &[])
        }
        other => return Err(Error::Parse(format!("unknown command \"{other}\""))),
    };
    if args.len() != kinds.len() {
        return Err(Error::Parse(format!("{name} takes {} argument(s), got {}", kinds.len(), args.len())));
    }
    for (a, allowed) in args.iter().zip(kinds) {
        let obj = objects.get(a).ok_or_else(|| Error::Parse(format!("dangling name \"{a}\"")))?;
        if !allowed.contains(&obj.kind()) {
            return Err(Error::Parse(format!("\"{a}\" is a {}, {name} expects {}", obj.kind(), allowed.join(" or "))));
        }
    }
    Ok(Task { command, args })
}
