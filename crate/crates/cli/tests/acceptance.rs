//! One line per acceptance criterion. Exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use pathmodel::builtin::*;
use pathmodel::cylinder::{relative_pathobject, Cylinder, IntervalObject};
use pathmodel::fibration::*;
use pathmodel::groupoid::same_groupoid;
use pathmodel::identity::{j_diagram, j_eliminator};
use pathmodel::kan::*;
use pathmodel::limits::{CommutingSquare, VerifiedPullback};
use pathmodel::search::{enumerate_maps, Guard};
use pathmodel::subcomplex::Subcomplex;
use pathmodel::universe::{classify, path_types_from_closure, Universe};
use pathmodel::{Gpd, GroupoidMap, Result};
use pathmodel_cli::report::without_timing;

type Outcome = Result<std::result::Result<String, String>>;

fn fibers(list: &[(&str, Gpd)]) -> Vec<(String, Gpd)> {
    list.iter().map(|(n, g)| (n.to_string(), g.clone())).collect()
}

fn guard() -> Guard {
    Guard::default()
}

fn iso() -> IntervalObject {
    IntervalObject::walking_iso()
}

fn within(start: Instant, limit: Duration, detail: String) -> std::result::Result<String, String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{detail}, {:.2}s", t.as_secs_f64()))
    } else {
        Err(format!("{detail}, but took {:.2}s (limit {}s)", t.as_secs_f64(), limit.as_secs()))
    }
}

fn set_universe() -> Universe {
    let f: Vec<(String, Gpd)> = (0..=4).map(|n| (n.to_string(), discrete(n))).collect();
    Universe::set(&f, &guard()).unwrap()
}

fn groupoid_universe() -> Universe {
    Universe::groupoid(&fibers(&[("D2", discrete(2)), ("1", terminal()), ("0", empty())]), &guard()).unwrap()
}

fn motive_universe() -> Universe {
    Universe::groupoid(&fibers(&[("BZ2", cyclic(2)), ("1", terminal())]), &guard()).unwrap()
}

fn moving_universe() -> Universe {
    Universe::groupoid(&fibers(&[("I", walking_iso()), ("1", terminal())]), &guard()).unwrap()
}

/// Universes with the interval they are paired with.
fn universes() -> Vec<(&'static str, Universe, IntervalObject)> {
    vec![
        ("set {0..4}", set_universe(), IntervalObject::trivial()),
        ("groupoid {D2,1,0}", groupoid_universe(), iso()),
        ("groupoid {BZ2,1}", motive_universe(), iso()),
        ("groupoid {I,1}", moving_universe(), iso()),
    ]
}

fn functor_corpus() -> Result<Vec<GroupoidMap>> {
    let small = [terminal(), discrete(2), walking_iso(), cyclic(2), discrete(3), indiscrete(&["a", "b", "c", "d"])];
    let mut out = Vec::new();
    for a in &small[..4] {
        for b in &small {
            out.extend(enumerate_maps(a, b, &guard())?);
        }
    }
    Ok(out)
}

fn extensional_recovery() -> Outcome {
    let start = Instant::now();
    let u = set_universe();
    let pt = path_types_from_closure(&u, &IntervalObject::trivial(), &guard())?;
    if !pt.check_pullback()?.holds() {
        return Ok(Err("Eq square is not a pullback".into()));
    }
    let one = terminal();
    let globals = enumerate_maps(&one, &u.tm, &guard())?;
    let mut pairs = 0;
    for a0 in &globals {
        for a1 in &globals {
            if a0.then(&u.tp)? != a1.then(&u.tp)? {
                continue;
            }
            pairs += 1;
            let p = pt.path_type(a0, a1)?;
            let inhabited = globals.iter().any(|t| t.then(&u.tp).is_ok_and(|x| x == p));
            if inhabited != (a0 == a1) {
                return Ok(Err(format!("terms {} and {}", a0.obj(0), a1.obj(0))));
            }
        }
    }
    Ok(within(start, Duration::from_secs(1), format!("{pairs} pairs of terms")))
}

fn isofibration_characterization() -> Outcome {
    let start = Instant::now();
    let cyl = Cylinder::new(iso());
    let corpus = functor_corpus()?;
    let mut non_iso = 0;
    for f in &corpus {
        let h = check_hurewicz_left(f, &cyl, &[terminal(), discrete(2)], &guard())?;
        if h.holds() != is_isofibration(f) {
            return Ok(Err(format!("disagreement on {}", f.describe())));
        }
        non_iso += usize::from(!h.holds());
    }
    if corpus.len() < 10 || non_iso < 3 {
        return Ok(Err(format!("corpus too small: {} functors, {non_iso} non-isofibrations", corpus.len())));
    }
    Ok(within(
        start,
        Duration::from_secs(30),
        format!("{} functors, {non_iso} non-isofibrations", corpus.len()),
    ))
}

fn definition_equivalence() -> Outcome {
    let cyl = Cylinder::new(iso());
    let mut round_trips = 0;
    let corpus = functor_corpus()?;
    for f in &corpus {
        let brute = check_hurewicz_left(f, &cyl, &[terminal(), discrete(2)], &guard())?;
        let section = has_section(f, &cyl, &guard())?;
        if brute.holds() != section.holds() {
            return Ok(Err(format!("disagreement on {}", f.describe())));
        }
        if !brute.holds() {
            continue;
        }
        let l = lift_from_isofibration(f, &cyl)?;
        let s = section_from_lifts(l.as_ref(), &guard())?;
        let back = lifts_from_section(&s, &cyl);
        for z in [terminal(), discrete(2)] {
            for (y, p) in lifting_problems(f, &cyl, &z, &guard())? {
                if back.lift(&y, &p)? != l.lift(&y, &p)? {
                    return Ok(Err(format!("round trip changes a lift of {}", f.describe())));
                }
                round_trips += 1;
            }
        }
    }
    Ok(Ok(format!("{} functors, {round_trips} lifts reproduced", corpus.len())))
}

fn connection_laws() -> Outcome {
    let start = Instant::now();
    let mut built = 0;
    for (name, u, interval) in universes() {
        let cyl = Cylinder::new(interval.clone());
        // only universes passing both path-type and Hurewicz checks qualify
        let pt = match path_types_from_closure(&u, &interval, &guard()) {
            Err(pathmodel::Error::ClosureFailure { .. }) => continue,
            r => r?,
        };
        if !pt.check_pullback()?.holds() || !check_hurewicz_left(&u.tp, &cyl, &[terminal()], &guard())?.holds() {
            continue;
        }
        let sq = VerifiedPullback::new(CommutingSquare::new(
            pt.path_tm.clone(),
            pt.paths.eps.clone(),
            u.tp.clone(),
            pt.path_ty.clone(),
        )?)?;
        let l = PulledBackLift::new(sq, lift_from_isofibration(&u.tp, &cyl)?)?;
        let c = build_connection(&u.tp, &l, &guard())?;
        for (law, v) in c.check_laws() {
            if !v.holds() {
                return Ok(Err(format!("{name}: {law}: {v}")));
            }
        }
        built += 1;
    }
    Ok(within(start, Duration::from_secs(60), format!("{built} universes")))
}

fn j_eliminator_laws() -> Outcome {
    let start = Instant::now();
    let pairs = [
        (groupoid_universe(), motive_universe(), iso()),
        (groupoid_universe(), moving_universe(), iso()),
        (set_universe(), set_universe(), IntervalObject::trivial()),
    ];
    let families = [
        GroupoidMap::to_terminal(&discrete(2), &terminal()),
        GroupoidMap::to_terminal(&terminal(), &terminal()),
        GroupoidMap::to_terminal(&discrete(3), &terminal()),
    ];
    let mut instances = 0;
    for (u0, u1, interval) in &pairs {
        let cyl = Cylinder::new(interval.clone());
        let pt = path_types_from_closure(u0, interval, &guard())?;
        let l0: LiftingStructure = lift_from_isofibration(&u0.tp, &cyl)?;
        let e = j_eliminator(&pt, Arc::clone(&l0), u1, lift_from_isofibration(&u1.tp, &cyl)?, &guard())?;
        for (law, v) in e.check_laws(&[terminal(), discrete(2), walking_iso()], &guard())? {
            if !v.holds() {
                return Ok(Err(format!("{law}: {v}")));
            }
        }
        for fam in &families {
            let Some(cls) = classify(u0, fam, &guard())? else {
                continue;
            };
            let pa = relative_pathobject(fam, interval, &guard())?;
            for cty in enumerate_maps(pa.carrier(), &u1.ty, &guard())? {
                let ext = u1.ext(&cty)?;
                let lc = PulledBackLift::new(
                    VerifiedPullback::new(u1.ext_square(&cty)?)?,
                    lift_from_isofibration(&u1.tp, &cyl)?,
                )?;
                for ctm in maps_over(&u1.tp, &pa.rho.then(&cty)?, &guard())? {
                    let c = ext.pair(&pa.rho, &ctm)?;
                    let d = j_diagram(&cls, &pt, Arc::clone(&l0), &lc, &c, &guard())?;
                    for (law, v) in d.check() {
                        if !v.holds() {
                            return Ok(Err(format!("diagram {law}: {v}")));
                        }
                    }
                    if !d.found_by_search(&guard())? {
                        return Ok(Err(format!("j not found by search for {}", fam.describe())));
                    }
                    instances += 1;
                }
            }
        }
    }
    Ok(within(start, Duration::from_secs(300), format!("{instances} diagram instances")))
}

fn normality_dependency() -> Outcome {
    let u0 = groupoid_universe();
    let cyl = Cylinder::new(iso());
    let pt = path_types_from_closure(&u0, &iso(), &guard())?;
    let u1 = moving_universe();
    let l0 = lift_from_isofibration(&u0.tp, &cyl)?;
    let normal = lift_from_isofibration(&u1.tp, &cyl)?;
    let perturbed: LiftingStructure = Arc::new(PerturbedLift::new(Arc::clone(&normal)));
    if check_normal(perturbed.as_ref(), &[terminal()], &guard())?.holds() {
        return Ok(Err("the perturbed lift is normal".into()));
    }
    let contexts = [terminal(), discrete(2)];
    let refl = |motive_lift| -> Result<pathmodel::Verdict> {
        let e = j_eliminator(&pt, Arc::clone(&l0), &u1, motive_lift, &guard())?;
        let laws = e.check_laws(&contexts, &guard())?;
        Ok(laws.into_iter().find(|(n, _)| *n == "reflSubst_jElim").expect("law present").1)
    };
    let with_normal = refl(normal)?;
    let with_perturbed = refl(perturbed)?;
    match (with_normal.holds(), with_perturbed.witness()) {
        (true, Some(w)) => Ok(Ok(format!("reflSubst_jElim fails: {w}"))),
        (false, _) => Ok(Err(format!("fails even with the normal lift: {with_normal}"))),
        (true, None) => Ok(Err("perturbed lift still validates reflSubst_jElim".into())),
    }
}

fn leibniz_calculus() -> Outcome {
    let g = guard();
    let cube = |n| Cube::new(&iso(), n);
    for n in 0..=2 {
        let (p, s) = pushout_product(&boundary_inclusion(&cube(n))?, &iso().end(0));
        let next = cube(n + 1);
        if !same_groupoid(&p.apex, &next.carrier) {
            return Ok(Err(format!("∂𝐈^{n}⊗d0 has the wrong ambient")));
        }
        let s = Subcomplex {
            ambient: next.carrier.clone(),
            faces: s.faces,
        };
        if !s.same_subobject(&next.open_box_faces(0)) {
            return Ok(Err(format!("∂𝐈^{n}⊗d0 is not the open box")));
        }
    }
    let (_, c2, reindex) = concatenation(&cube(1), &cube(1));
    let (_, prod) = pushout_product(&boundary_inclusion(&cube(1))?, &boundary_inclusion(&cube(1))?);
    if !prod.transport(&reindex).same_subobject(&c2.boundary_faces()) {
        return Ok(Err("∂𝐈¹⊗∂𝐈¹ differs from ∂𝐈²".into()));
    }
    for a in [cyclic(2), discrete(2), walking_iso(), terminal()] {
        let v = check_endpoint_hom_is_path_object(&a, &iso(), &g)?;
        if !v.holds() {
            return Ok(Err(format!("endpoint hom: {v}")));
        }
    }
    let one = terminal();
    let lefts = [Subcomplex::empty(&one), boundary_inclusion(&cube(1))?, iso().end(0), endpoints(&iso())];
    let rights = [iso().end(0), endpoints(&iso())];
    let endpoint = GroupoidMap::constant(&one, &walking_iso(), 0);
    let maps = [groupoid_universe().tp, endpoint, GroupoidMap::to_terminal(&cyclic(2), &one)];
    let (mut cases, mut negative) = (0, 0);
    for a in &lefts {
        for b in &rights {
            for c in &maps {
                let t = adjunction_transpose_check(a, b, c, &g)?;
                if !t.agrees().holds() {
                    return Ok(Err(format!("transposition: {}", t.agrees())));
                }
                cases += 1;
                negative += usize::from(!t.product_side.holds());
            }
        }
    }
    Ok(Ok(format!("{cases} transpositions ({negative} negative)")))
}

fn kan_filling() -> Outcome {
    let start = Instant::now();
    let one = terminal();
    let mut families = 0;
    for (name, u, interval) in universes() {
        let r = check_kan(&u.tp, &interval, 3, &[one.clone()], &guard())?;
        if !r.verdict.holds() {
            return Ok(Err(format!("{name} tp: {}", r.verdict)));
        }
        let tp_filler = BoxFiller::new(&u.tp, &interval, 3, &guard())?;
        for base in [terminal(), discrete(2), walking_iso()] {
            for a in enumerate_maps(&base, &u.ty, &guard())? {
                let fam = u.ext(&a)?.disp();
                let cls = classify(&u, &fam, &guard())?.expect("display maps are classified");
                let filler = tp_filler.along(&u, &cls)?;
                let r = check_kan_with(&filler, &fam, &[one.clone()], 2, &guard())?;
                if !r.verdict.holds() {
                    return Ok(Err(format!("{name} {}: {}", fam.describe(), r.verdict)));
                }
                families += 1;
            }
        }
    }
    Ok(within(start, Duration::from_secs(600), format!("{families} classified families")))
}

fn cylinder_laws() -> Outcome {
    let intervals = [
        IntervalObject::trivial(),
        iso(),
        IntervalObject::custom("J3", indiscrete(&["a", "b", "c"]), 0, 2)?,
    ];
    let contexts = [empty(), terminal(), discrete(2), cyclic(2), walking_iso()];
    for i in &intervals {
        if !i.check().holds() {
            return Ok(Err(format!("interval: {}", i.check())));
        }
        for (law, v) in Cylinder::new(i.clone()).check_laws(&contexts) {
            if !v.holds() {
                return Ok(Err(format!("{law}: {v}")));
            }
        }
    }
    Ok(Ok(format!("{} intervals", intervals.len())))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_pathmodel");
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    for ex in ["set_extensional.json", "groupoid_walking_iso.json"] {
        let run = || {
            Command::new(bin)
                .args(["check", "--model"])
                .arg(dir.join(ex))
                .env_remove("PATHMODEL_MAX_OBJECTS")
                .env_remove("PATHMODEL_MAX_MORPHISMS")
                .env_remove("PATHMODEL_MAX_BOX_DIM")
                .output()
                .map(|o| o.stdout)
        };
        let (a, b) = (run().expect("binary runs"), run().expect("binary runs"));
        let strip = |bytes: &[u8]| without_timing(std::str::from_utf8(bytes).unwrap_or("")).map_err(|e| e.to_string());
        let (sa, sb) = match (strip(&a), strip(&b)) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(e), _) | (_, Err(e)) => return Ok(Err(format!("{ex}: {e}"))),
        };
        let bytes = |v: &serde_json::Value| serde_json::to_vec_pretty(v).unwrap_or_default();
        if bytes(&sa) != bytes(&sb) {
            return Ok(Err(format!("{ex}: reports differ")));
        }
    }
    Ok(Ok("2 bundled models".into()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("extensional recovery", extensional_recovery),
        ("isofibration characterization", isofibration_characterization),
        ("definition equivalence", definition_equivalence),
        ("connection laws", connection_laws),
        ("j-eliminator", j_eliminator_laws),
        ("normality dependency", normality_dependency),
        ("leibniz calculus", leibniz_calculus),
        ("kan filling", kan_filling),
        ("cylinder laws", cylinder_laws),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (tag, detail) = match check() {
            Ok(Ok(d)) => ("PASS", d),
            Ok(Err(d)) => ("FAIL", d),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        failed += usize::from(tag == "FAIL");
        println!("{tag} {:>2} {name}: {detail}", i + 1);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
