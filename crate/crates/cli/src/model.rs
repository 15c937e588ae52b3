//! The JSON model format and its loader.

use std::collections::BTreeMap;
use std::path::Path;

use pathmodel::builtin;
use pathmodel::cylinder::IntervalObject;
use pathmodel::search::Guard;
use pathmodel::universe::Universe;
use pathmodel::{FinGroupoid, Gpd, GroupoidMap, Morphism};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse { line: usize, column: usize, message: String },
    Invalid(String),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "cannot read model: {m}"),
            LoadError::Parse { line, column, message } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            LoadError::Invalid(m) => write!(f, "invalid model: {m}"),
        }
    }
}

impl std::error::Error for LoadError {}

fn invalid(m: impl Into<String>) -> LoadError {
    LoadError::Invalid(m.into())
}

/// A groupoid given by a builtin name or by an explicit table.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GroupoidDef {
    Builtin {
        builtin: String,
        #[serde(default)]
        n: Option<usize>,
    },
    Table {
        objects: Vec<String>,
        /// `[name, source, target]`
        morphisms: Vec<(String, String, String)>,
        /// `[g, f, g∘f]`
        compose: Vec<(String, String, String)>,
        #[serde(default)]
        identities: Option<BTreeMap<String, String>>,
        #[serde(default)]
        inverses: Option<BTreeMap<String, String>>,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct MapDef {
    pub dom: String,
    pub cod: String,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntervalDef {
    Trivial,
    WalkingIso,
    Custom { carrier: String, d0: String, d1: String },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UniverseDef {
    Set { fibers: Vec<String> },
    Groupoid { fibers: Vec<String> },
    Explicit { map: String },
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
pub struct Guards {
    #[serde(default)]
    pub max_objects: Option<usize>,
    #[serde(default)]
    pub max_morphisms: Option<usize>,
    #[serde(default)]
    pub max_box_dim: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    #[serde(default)]
    pub groupoids: BTreeMap<String, GroupoidDef>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapDef>,
    pub interval: IntervalDef,
    pub universe: UniverseDef,
    /// Fibers of the universe the J suite eliminates into; the main
    /// universe's fibers when absent.
    #[serde(default)]
    pub motive_fibers: Option<Vec<String>>,
    /// Contexts over which laws are checked pointwise.
    #[serde(default)]
    pub contexts: Vec<String>,
    /// Display maps checked for classification and Kan filling.
    #[serde(default)]
    pub families: Vec<String>,
    #[serde(default)]
    pub suites: Option<Vec<String>>,
    #[serde(default)]
    pub guards: Guards,
}

/// A loaded, validated model.
pub struct Model {
    pub file: ModelFile,
    pub groupoids: BTreeMap<String, Gpd>,
    pub maps: BTreeMap<String, GroupoidMap>,
    pub interval: IntervalObject,
    pub universe: Universe,
    pub motives: Option<Universe>,
    pub contexts: Vec<Gpd>,
    pub families: Vec<(String, GroupoidMap)>,
    pub guard: Guard,
    pub max_box_dim: usize,
}

pub fn parse(text: &str) -> Result<ModelFile, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn load_model(path: &Path, overrides: &Guards) -> Result<Model, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    build(parse(&text)?, overrides)
}

fn builtin_groupoid(name: &str, n: Option<usize>) -> Result<Gpd, LoadError> {
    let need = || n.ok_or_else(|| invalid(format!("builtin {name} needs a size n")));
    Ok(match name {
        "empty" => builtin::empty(),
        "terminal" => builtin::terminal(),
        "walking_iso" => builtin::walking_iso(),
        "discrete" => builtin::discrete(need()?),
        "cyclic" if need()? >= 1 => builtin::cyclic(need()?),
        "indiscrete" => {
            let names: Vec<String> = (0..need()?).map(|i| i.to_string()).collect();
            builtin::indiscrete(&names.iter().map(String::as_str).collect::<Vec<_>>())
        }
        other => return Err(invalid(format!("unknown builtin groupoid {other}"))),
    })
}

fn table_groupoid(name: &str, def: &GroupoidDef) -> Result<Gpd, LoadError> {
    let GroupoidDef::Table {
        objects,
        morphisms,
        compose,
        identities,
        inverses,
    } = def
    else {
        unreachable!()
    };
    let ctx = |m: String| invalid(format!("groupoid {name}: {m}"));
    let obj = |o: &str| objects.iter().position(|x| x == o).ok_or_else(|| ctx(format!("unknown object {o}")));
    let mors = morphisms
        .iter()
        .map(|(n, s, t)| Ok(Morphism::new(n.clone(), obj(s)?, obj(t)?)))
        .collect::<Result<Vec<_>, LoadError>>()?;
    let mor = |m: &str| morphisms.iter().position(|x| x.0 == m).ok_or_else(|| ctx(format!("unknown morphism {m}")));
    let table = compose
        .iter()
        .map(|(g, f, gf)| Ok((mor(g)?, mor(f)?, mor(gf)?)))
        .collect::<Result<Vec<_>, LoadError>>()?;
    let ids = match identities {
        None => None,
        Some(ids) => Some(
            objects
                .iter()
                .map(|o| ids.get(o).ok_or_else(|| ctx(format!("no identity given for {o}"))).and_then(|m| mor(m)))
                .collect::<Result<Vec<_>, LoadError>>()?,
        ),
    };
    let invs = match inverses {
        None => None,
        Some(inv) => Some(
            morphisms
                .iter()
                .map(|(m, _, _)| inv.get(m).ok_or_else(|| ctx(format!("no inverse given for {m}"))).and_then(|i| mor(i)))
                .collect::<Result<Vec<_>, LoadError>>()?,
        ),
    };
    let g = FinGroupoid::from_table(objects.clone(), mors, &table, ids, invs).map_err(|e| ctx(e.to_string()))?;
    Ok(g.into_gpd())
}

/// Builtins are also reachable by these names without being declared.
fn implicit(name: &str) -> Option<Gpd> {
    Some(match name {
        "0" => builtin::empty(),
        "1" => builtin::terminal(),
        "D2" => builtin::discrete(2),
        "D3" => builtin::discrete(3),
        "BZ2" => builtin::cyclic(2),
        "BZ3" => builtin::cyclic(3),
        "I" => builtin::walking_iso(),
        _ => return None,
    })
}

fn resolve(groupoids: &BTreeMap<String, Gpd>, name: &str) -> Result<Gpd, LoadError> {
    groupoids
        .get(name)
        .cloned()
        .or_else(|| implicit(name))
        .ok_or_else(|| invalid(format!("unknown groupoid {name}")))
}

fn build_map(name: &str, def: &MapDef, groupoids: &BTreeMap<String, Gpd>) -> Result<GroupoidMap, LoadError> {
    let (dom, cod) = (resolve(groupoids, &def.dom)?, resolve(groupoids, &def.cod)?);
    let ctx = |m: String| invalid(format!("map {name}: {m}"));
    let obj = (0..dom.num_objects())
        .map(|a| {
            let src = dom.object_name(a);
            let tgt = def.objects.get(src).ok_or_else(|| ctx(format!("object {src} unmapped")))?;
            cod.find_object(tgt).ok_or_else(|| ctx(format!("unknown target object {tgt}")))
        })
        .collect::<Result<Vec<_>, LoadError>>()?;
    let mor = (0..dom.num_morphisms())
        .map(|m| {
            let src = dom.morphism_name(m);
            match def.morphisms.get(src) {
                Some(tgt) => cod.find_morphism(tgt).ok_or_else(|| ctx(format!("unknown target morphism {tgt}"))),
                // identities may be left implicit
                None if dom.is_identity(m) => Ok(cod.id(obj[dom.src(m)])),
                None => Err(ctx(format!("morphism {src} unmapped"))),
            }
        })
        .collect::<Result<Vec<_>, LoadError>>()?;
    let f = GroupoidMap::new(dom, cod, obj, mor);
    let v = f.check_functor();
    if !v.holds() {
        return Err(ctx(format!("not a functor: {v}")));
    }
    Ok(f)
}

fn universe_from(kind: &UniverseDef, fibers: &[String], groupoids: &BTreeMap<String, Gpd>, maps: &BTreeMap<String, GroupoidMap>, guard: &Guard) -> Result<Universe, LoadError> {
    let named = fibers
        .iter()
        .map(|n| Ok((n.clone(), resolve(groupoids, n)?)))
        .collect::<Result<Vec<_>, LoadError>>()?;
    let u = match kind {
        UniverseDef::Set { .. } => Universe::set(&named, guard),
        UniverseDef::Groupoid { .. } => Universe::groupoid(&named, guard),
        UniverseDef::Explicit { map } => {
            return Ok(Universe::explicit(
                maps.get(map).cloned().ok_or_else(|| invalid(format!("unknown map {map}")))?,
            ))
        }
    };
    u.map_err(|e| invalid(format!("universe: {e}")))
}

pub fn build(file: ModelFile, overrides: &Guards) -> Result<Model, LoadError> {
    let defaults = Guard::default();
    let pick = |o: Option<usize>, f: Option<usize>, d: usize| o.or(f).unwrap_or(d);
    let guard = Guard::new(
        pick(overrides.max_objects, file.guards.max_objects, defaults.max_objects),
        pick(overrides.max_morphisms, file.guards.max_morphisms, defaults.max_morphisms),
    );
    let max_box_dim = pick(overrides.max_box_dim, file.guards.max_box_dim, 3);

    let mut groupoids = BTreeMap::new();
    for (name, def) in &file.groupoids {
        let g = match def {
            GroupoidDef::Builtin { builtin, n } => builtin_groupoid(builtin, *n)?,
            table => table_groupoid(name, table)?,
        };
        groupoids.insert(name.clone(), g);
    }
    let mut maps = BTreeMap::new();
    for (name, def) in &file.maps {
        maps.insert(name.clone(), build_map(name, def, &groupoids)?);
    }

    let interval = match &file.interval {
        IntervalDef::Trivial => IntervalObject::trivial(),
        IntervalDef::WalkingIso => IntervalObject::walking_iso(),
        IntervalDef::Custom { carrier, d0, d1 } => {
            let c = resolve(&groupoids, carrier)?;
            let point = |o: &str| c.find_object(o).ok_or_else(|| invalid(format!("interval endpoint {o} not in {carrier}")));
            let (a, b) = (point(d0)?, point(d1)?);
            IntervalObject::custom(carrier, c.clone(), a, b).map_err(|e| invalid(format!("interval: {e}")))?
        }
    };

    let fibers = match &file.universe {
        UniverseDef::Set { fibers } | UniverseDef::Groupoid { fibers } => fibers.clone(),
        UniverseDef::Explicit { .. } => vec![],
    };
    let universe = universe_from(&file.universe, &fibers, &groupoids, &maps, &guard)?;
    let motives = match &file.motive_fibers {
        Some(mf) => Some(universe_from(&file.universe, mf, &groupoids, &maps, &guard)?),
        None => None,
    };
    let context_names = if file.contexts.is_empty() {
        vec!["1".to_string(), "D2".to_string()]
    } else {
        file.contexts.clone()
    };
    let contexts = context_names
        .iter()
        .map(|n| resolve(&groupoids, n))
        .collect::<Result<Vec<_>, LoadError>>()?;
    let families = file
        .families
        .iter()
        .map(|n| Ok((n.clone(), maps.get(n).cloned().ok_or_else(|| invalid(format!("unknown family {n}")))?)))
        .collect::<Result<Vec<_>, LoadError>>()?;
    Ok(Model {
        file,
        groupoids,
        maps,
        interval,
        universe,
        motives,
        contexts,
        families,
        guard,
        max_box_dim,
    })
}
