//! Suite orchestration: laws → a1 → a2 → normal → connection → j → kan.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use pathmodel::builtin::terminal;
use pathmodel::cylinder::{relative_pathobject, Cylinder};
use pathmodel::fibration::{
    build_connection, check_hurewicz_left, check_lift_laws, check_normal, check_uniform, has_section,
    is_isofibration, lift_from_isofibration, maps_over, section_from_lifts, LiftingStructure, PulledBackLift,
    SearchLift,
};
use pathmodel::identity::{j_diagram, j_eliminator};
use pathmodel::kan::{check_kan, check_kan_with, BoxFiller};
use pathmodel::limits::{CommutingSquare, VerifiedPullback};
use pathmodel::search::enumerate_maps;
use pathmodel::universe::{classify, path_types_from_closure, PathTypes, Universe};
use pathmodel::{Error, GroupoidMap, Verdict};

use crate::model::{Guards, IntervalDef, Model, UniverseDef};
use crate::report::{Check, Config, Report, Status, SuiteReport, Summary, FORMAT_VERSION};

pub const ALL_SUITES: [&str; 7] = ["laws", "a1", "a2", "normal", "connection", "j", "kan"];

fn requires(suite: &str) -> &'static [&'static str] {
    match suite {
        "normal" | "kan" => &["a2"],
        "connection" => &["a1", "a2"],
        "j" => &["a1", "a2", "normal", "connection"],
        _ => &[],
    }
}

/// Parses a comma-separated suite list, keeping the fixed order.
pub fn parse_suites(list: &str) -> Result<Vec<String>, String> {
    let wanted: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if let Some(bad) = wanted.iter().find(|s| !ALL_SUITES.contains(s) && **s != "all") {
        return Err(format!("unknown suite {bad}; known: {}", ALL_SUITES.join(",")));
    }
    if wanted.contains(&"all") {
        return Ok(ALL_SUITES.iter().map(|s| s.to_string()).collect());
    }
    Ok(ALL_SUITES.iter().filter(|s| wanted.contains(s)).map(|s| s.to_string()).collect())
}

enum Outcome {
    Ran(Vec<Check>),
    Skipped(String),
    Errored(String),
}

struct Runner<'a> {
    m: &'a Model,
    cyl: Cylinder,
    paths: Option<PathTypes>,
    lift: Option<LiftingStructure>,
}

fn checks(list: Vec<(&str, Verdict)>, prefix: &str) -> Vec<Check> {
    list.into_iter().map(|(n, v)| Check::new(format!("{prefix}{n}"), &v)).collect()
}

impl<'a> Runner<'a> {
    fn guard(&self) -> &pathmodel::search::Guard {
        &self.m.guard
    }

    fn laws(&mut self) -> pathmodel::Result<Vec<Check>> {
        let m = self.m;
        let mut out = Vec::new();
        for (name, g) in &m.groupoids {
            let v = g.validate().map_or_else(|e| Verdict::fails(e.to_string()), |_| Verdict::Holds);
            out.push(Check::new(format!("groupoid {name}"), &v));
        }
        out.push(Check::new("interval", &m.interval.check()));
        out.extend(checks(self.cyl.check_laws(&m.contexts), "cylinder "));
        out.extend(checks(m.universe.check_laws(&m.contexts, self.guard())?, "universe "));
        for (name, f) in &m.families {
            let cls = classify(&m.universe, f, self.guard())?;
            out.push(Check::new(
                format!("classified {name}"),
                &Verdict::from_bool(cls.is_some(), || "no classifying map into the universe".into()),
            ));
        }
        Ok(out)
    }

    fn a1(&mut self) -> pathmodel::Result<Vec<Check>> {
        let m = self.m;
        let pt = path_types_from_closure(&m.universe, &m.interval, self.guard())?;
        let mut out = vec![Check::new("path_square", &pt.check_pullback()?)];
        out.extend(checks(pt.check_laws(&m.contexts, self.guard())?, ""));
        if matches!(m.file.universe, UniverseDef::Set { .. }) {
            out.push(Check::new("path_iff_equal", &extensional(&m.universe, &pt)?));
        }
        self.paths = Some(pt);
        Ok(out)
    }

    fn a2(&mut self) -> pathmodel::Result<Vec<Check>> {
        let m = self.m;
        let tp = &m.universe.tp;
        let iso = Verdict::from_bool(is_isofibration(tp), || "tp does not lift some isomorphism".into());
        let hur = check_hurewicz_left(tp, &self.cyl, &m.contexts, self.guard())?;
        let mut out = vec![Check::new("isofibration", &iso), Check::new("hurewicz", &hur)];
        if !hur.holds() {
            return Ok(out);
        }
        let lift: LiftingStructure = match lift_from_isofibration(tp, &self.cyl) {
            Ok(l) => l,
            Err(Error::Unsupported(_)) => Arc::new(SearchLift::new(tp, &self.cyl, self.guard())),
            Err(e) => return Err(e),
        };
        out.push(Check::new("lift_laws", &check_lift_laws(lift.as_ref(), &m.contexts, self.guard())?));
        let section = section_from_lifts(lift.as_ref(), self.guard())?;
        out.push(Check::new("section", &section.check()));
        let searched = has_section(tp, &self.cyl, self.guard())?;
        out.push(Check::new(
            "definitions_agree",
            &Verdict::from_bool(searched.holds() == hur.holds(), || format!("section search {searched}")),
        ));
        self.lift = Some(lift);
        Ok(out)
    }

    fn lift(&self) -> pathmodel::Result<&LiftingStructure> {
        self.lift.as_ref().ok_or_else(|| Error::MissingWitness("no lift for tp".into()))
    }

    fn paths(&self) -> pathmodel::Result<&PathTypes> {
        self.paths.as_ref().ok_or_else(|| Error::MissingWitness("no path types".into()))
    }

    fn normal(&mut self) -> pathmodel::Result<Vec<Check>> {
        let l = self.lift()?;
        Ok(vec![
            Check::new("normal", &check_normal(l.as_ref(), &self.m.contexts, self.guard())?),
            Check::new("uniform", &check_uniform(l.as_ref(), &self.m.contexts, self.guard())?),
        ])
    }

    fn connection(&mut self) -> pathmodel::Result<Vec<Check>> {
        let pt = self.paths()?;
        let tp = &self.m.universe.tp;
        let sq = VerifiedPullback::new(CommutingSquare::new(
            pt.path_tm.clone(),
            pt.paths.eps.clone(),
            tp.clone(),
            pt.path_ty.clone(),
        )?)?;
        let l = PulledBackLift::new(sq, Arc::clone(self.lift()?))?;
        let c = build_connection(tp, &l, self.guard())?;
        Ok(checks(c.check_laws(), ""))
    }

    fn motive_universe(&self) -> &Universe {
        self.m.motives.as_ref().unwrap_or(&self.m.universe)
    }

    fn motive_lift(&self) -> pathmodel::Result<LiftingStructure> {
        lift_from_isofibration(&self.motive_universe().tp, &self.cyl)
    }

    fn j(&mut self) -> pathmodel::Result<Vec<Check>> {
        let m = self.m;
        let pt = self.paths()?;
        let u1 = self.motive_universe();
        let e = j_eliminator(pt, Arc::clone(self.lift()?), u1, self.motive_lift()?, self.guard())?;
        let mut out = checks(e.check_laws(&m.contexts, self.guard())?, "");
        for (name, fam) in &m.families {
            let Some(cls) = classify(&m.universe, fam, self.guard())? else {
                continue;
            };
            let pa = relative_pathobject(fam, &m.interval, self.guard())?;
            let mut verdict = Verdict::Holds;
            let mut instances = 0;
            'outer: for cty in enumerate_maps(pa.carrier(), &u1.ty, self.guard())? {
                let ext = u1.ext(&cty)?;
                let sq = VerifiedPullback::new(u1.ext_square(&cty)?)?;
                let lc = PulledBackLift::new(sq, self.motive_lift()?)?;
                for ctm in maps_over(&u1.tp, &pa.rho.then(&cty)?, self.guard())? {
                    let c = ext.pair(&pa.rho, &ctm)?;
                    let d = j_diagram(&cls, pt, Arc::clone(self.lift()?), &lc, &c, self.guard())?;
                    instances += 1;
                    for (law, v) in d.check() {
                        if !v.holds() {
                            verdict = v.context(law);
                            break 'outer;
                        }
                    }
                    if !d.found_by_search(self.guard())? {
                        verdict = Verdict::fails("j is not among the searched fillers");
                        break 'outer;
                    }
                }
            }
            out.push(Check::new(format!("diagram {name} ({instances} instances)"), &verdict));
        }
        Ok(out)
    }

    fn kan(&mut self) -> pathmodel::Result<Vec<Check>> {
        let m = self.m;
        let params = [terminal()];
        let tp = &m.universe.tp;
        let r = check_kan(tp, &m.interval, m.max_box_dim, &params, self.guard())?;
        let mut out = vec![Check::new(format!("tp ({} boxes)", r.problems), &r.verdict)];
        let base = BoxFiller::new(tp, &m.interval, m.max_box_dim, self.guard())?;
        for (name, fam) in &m.families {
            let Some(cls) = classify(&m.universe, fam, self.guard())? else {
                continue;
            };
            let filler = base.along(&m.universe, &cls)?;
            let r = check_kan_with(&filler, fam, &params, 2, self.guard())?;
            out.push(Check::new(format!("{name} ({} boxes)", r.problems), &r.verdict));
        }
        Ok(out)
    }

    fn run(&mut self, suite: &str) -> Outcome {
        let result = match suite {
            "laws" => self.laws(),
            "a1" => self.a1(),
            "a2" => self.a2(),
            "normal" => self.normal(),
            "connection" => self.connection(),
            "j" => self.j(),
            "kan" => self.kan(),
            other => return Outcome::Errored(format!("unknown suite {other}")),
        };
        match result {
            Ok(c) => Outcome::Ran(c),
            Err(e @ Error::SizeBound { .. }) => Outcome::Skipped(format!("bound: {e}")),
            Err(Error::Unsupported(m)) => Outcome::Skipped(format!("unsupported: {m}")),
            Err(e) => Outcome::Errored(e.to_string()),
        }
    }
}

/// Every term of `Path(a0, a1)` over a point exists iff `a0 = a1`.
fn extensional(u: &Universe, pt: &PathTypes) -> pathmodel::Result<Verdict> {
    let one = terminal();
    let guard = pathmodel::search::Guard::default();
    let terms: Vec<GroupoidMap> = (0..u.tm.num_objects()).map(|t| GroupoidMap::constant(&one, &u.tm, t)).collect();
    let globals = enumerate_maps(&one, &u.tm, &guard)?;
    for a0 in &terms {
        for a1 in &terms {
            if a0.then(&u.tp)? != a1.then(&u.tp)? {
                continue;
            }
            let p = pt.path_type(a0, a1)?;
            let inhabited = globals.iter().any(|t| t.then(&u.tp).is_ok_and(|x| x == p));
            if inhabited != (a0 == a1) {
                return Ok(Verdict::fails(format!("terms {} and {}", a0.obj(0), a1.obj(0))));
            }
        }
    }
    Ok(Verdict::Holds)
}

fn describe_interval(d: &IntervalDef) -> String {
    match d {
        IntervalDef::Trivial => "trivial".into(),
        IntervalDef::WalkingIso => "walking_iso".into(),
        IntervalDef::Custom { carrier, d0, d1 } => format!("custom {carrier} ({d0}, {d1})"),
    }
}

fn describe_universe(d: &UniverseDef) -> String {
    match d {
        UniverseDef::Set { fibers } => format!("set {{{}}}", fibers.join(", ")),
        UniverseDef::Groupoid { fibers } => format!("groupoid {{{}}}", fibers.join(", ")),
        UniverseDef::Explicit { map } => format!("explicit {map}"),
    }
}

/// Runs the selected suites (and, silently, whatever they depend on).
pub fn run_suites(m: &Model, selected: &[String]) -> Report {
    let start = Instant::now();
    let mut runner = Runner {
        m,
        cyl: Cylinder::new(m.interval.clone()),
        paths: None,
        lift: None,
    };
    let mut needed: Vec<&str> = Vec::new();
    for s in ALL_SUITES {
        let wanted = selected.iter().any(|x| x == s);
        let dependency = selected.iter().any(|x| requires(x).contains(&s)) || (s == "a1" && selected.iter().any(|x| x == "j"));
        if wanted || dependency {
            needed.push(s);
        }
    }
    let mut status: BTreeMap<&str, Status> = BTreeMap::new();
    let mut suites = Vec::new();
    for s in needed {
        let t = Instant::now();
        let blocked = requires(s).iter().find(|d| status.get(*d).is_some_and(|st| *st != Status::Pass));
        let (st, reason, checks) = match blocked {
            Some(d) => (Status::Skipped, Some(format!("requires {d}, which did not pass")), vec![]),
            None => match runner.run(s) {
                Outcome::Ran(c) => {
                    let st = if c.iter().all(|c| c.holds) { Status::Pass } else { Status::Fail };
                    (st, None, c)
                }
                Outcome::Skipped(r) => (Status::Skipped, Some(r), vec![]),
                Outcome::Errored(r) => (Status::Error, Some(r), vec![]),
            },
        };
        status.insert(s, st);
        if selected.iter().any(|x| x == s) {
            suites.push(SuiteReport {
                name: s.to_string(),
                status: st,
                reason,
                checks,
                elapsed_ms: t.elapsed().as_millis() as u64,
            });
        }
    }
    let mut summary = Summary::default();
    for s in &suites {
        match s.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped => summary.skipped += 1,
            Status::Error => summary.error += 1,
        }
    }
    Report {
        format_version: FORMAT_VERSION,
        model: m.file.name.clone(),
        config: Config {
            interval: describe_interval(&m.file.interval),
            universe: describe_universe(&m.file.universe),
            suites: selected.to_vec(),
            contexts: m.contexts.len(),
            families: m.families.iter().map(|(n, _)| n.clone()).collect(),
            guards: Guards {
                max_objects: Some(m.guard.max_objects),
                max_morphisms: Some(m.guard.max_morphisms),
                max_box_dim: Some(m.max_box_dim),
            },
        },
        suites,
        summary,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
