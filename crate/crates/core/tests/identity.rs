use std::sync::Arc;

use pathmodel::builtin::*;
use pathmodel::cylinder::{Cylinder, IntervalObject};
use pathmodel::fibration::{lift_from_isofibration, maps_over, LiftingStructure, PerturbedLift, PulledBackLift};
use pathmodel::identity::{id_intro_from_path, j_diagram, j_eliminator, IdElim};
use pathmodel::limits::VerifiedPullback;
use pathmodel::search::{enumerate_maps, Guard};
use pathmodel::universe::{classify, path_types_from_closure, PathTypes, Universe};
use pathmodel::{Gpd, GroupoidMap};

fn fibers(list: &[(&str, Gpd)]) -> Vec<(String, Gpd)> {
    list.iter().map(|(n, g)| (n.to_string(), g.clone())).collect()
}

fn terms_universe() -> Universe {
    Universe::groupoid(&fibers(&[("D2", discrete(2)), ("1", terminal()), ("0", empty())]), &Guard::default()).unwrap()
}

fn motive_universe() -> Universe {
    Universe::groupoid(&fibers(&[("BZ2", cyclic(2)), ("1", terminal())]), &Guard::default()).unwrap()
}

fn moving_universe() -> Universe {
    // conjugating by a vertical iso of 𝕀 moves the endpoint, unlike BZ2
    Universe::groupoid(&fibers(&[("I", walking_iso()), ("1", terminal())]), &Guard::default()).unwrap()
}

fn setup(interval: IntervalObject, u0: &Universe, u1: &Universe, perturb: bool) -> (PathTypes, IdElim) {
    let guard = Guard::default();
    let cyl = Cylinder::new(interval.clone());
    let pt = path_types_from_closure(u0, &interval, &guard).unwrap();
    let l0 = lift_from_isofibration(&u0.tp, &cyl).unwrap();
    let mut l1 = lift_from_isofibration(&u1.tp, &cyl).unwrap();
    if perturb {
        l1 = Arc::new(PerturbedLift::new(l1));
    }
    let e = j_eliminator(&pt, l0, u1, l1, &guard).unwrap();
    (pt, e)
}

#[test]
fn intro_laws_hold() {
    let u0 = terms_universe();
    let pt = path_types_from_closure(&u0, &IntervalObject::walking_iso(), &Guard::default()).unwrap();
    let intro = id_intro_from_path(&pt);
    for (name, v) in intro.check_laws(&[terminal(), discrete(2), walking_iso()], &Guard::default()).unwrap() {
        assert!(v.holds(), "{name}: {v}");
    }
}

#[test]
fn refl_is_the_identity_path() {
    let u0 = terms_universe();
    let pt = path_types_from_closure(&u0, &IntervalObject::walking_iso(), &Guard::default()).unwrap();
    let intro = id_intro_from_path(&pt);
    let one = terminal();
    let a = GroupoidMap::constant(&one, &u0.tm, u0.term(0, 1).unwrap());
    let r = intro.refl(&a).unwrap();
    assert_eq!(u0.fiber_name(u0.tp.obj(r.obj(0))), "1");
    let back = pt.unpath(&a, &a, &r).unwrap();
    assert_eq!(back, intro.cylinder().pi(&one).then(&a).unwrap());
}

#[test]
fn elimination_laws_hold_in_groupoids() {
    let (_, e) = setup(IntervalObject::walking_iso(), &terms_universe(), &motive_universe(), false);
    let laws = e.check_laws(&[terminal(), discrete(2), walking_iso()], &Guard::default()).unwrap();
    for (name, v) in &laws {
        assert!(v.holds(), "{name}: {v}");
    }
}

#[test]
fn elimination_laws_hold_in_sets() {
    let u = Universe::set(&fibers(&[("0", empty()), ("1", terminal()), ("2", discrete(2))]), &Guard::default()).unwrap();
    let (_, e) = setup(IntervalObject::trivial(), &u, &u, false);
    let laws = e.check_laws(&[terminal(), discrete(2)], &Guard::default()).unwrap();
    for (name, v) in &laws {
        assert!(v.holds(), "{name}: {v}");
    }
}

#[test]
fn extensional_j_is_c() {
    let u = Universe::set(&fibers(&[("0", empty()), ("1", terminal()), ("2", discrete(2))]), &Guard::default()).unwrap();
    let (_, e) = setup(IntervalObject::trivial(), &u, &u, false);
    let one = terminal();
    for t in 0..u.tm.num_objects() {
        let a = GroupoidMap::constant(&one, &u.tm, t);
        let m = e.motive_ctx(&a).unwrap();
        let ri = e.refl_inst(&m).unwrap();
        // the motive context is a single point: the reflexivity instance
        assert!(ri.is_iso());
        for motive in enumerate_maps(m.ctx(), &u.ty, &Guard::default()).unwrap() {
            for c in maps_over(&u.tp, &ri.then(&motive).unwrap(), &Guard::default()).unwrap() {
                let j = e.j_elim(&m, &motive, &c).unwrap();
                assert_eq!(ri.then(&j).unwrap(), c);
            }
        }
    }
}

#[test]
fn non_normal_motive_lift_breaks_reflexivity() {
    let (_, e) = setup(IntervalObject::walking_iso(), &terms_universe(), &moving_universe(), false);
    assert!(e.check_laws(&[terminal()], &Guard::default()).unwrap().iter().all(|(_, v)| v.holds()));
    let (_, e) = setup(IntervalObject::walking_iso(), &terms_universe(), &moving_universe(), true);
    let laws = e.check_laws(&[terminal(), discrete(2)], &Guard::default()).unwrap();
    let get = |n: &str| laws.iter().find(|(k, _)| *k == n).unwrap().1.clone();
    assert!(get("jElim_tp").holds());
    assert!(!get("reflSubst_jElim").holds());
}

#[test]
fn substitution_along_automorphisms_and_points() {
    let (_, e) = setup(IntervalObject::walking_iso(), &terms_universe(), &motive_universe(), false);
    let guard = Guard::default();
    let g = discrete(2);
    let u0 = terms_universe();
    let swap = GroupoidMap::from_fns(g.clone(), g.clone(), |o| 1 - o, |m| 1 - m);
    let point = GroupoidMap::constant(&terminal(), &g, 0);
    for a in enumerate_maps(&g, &u0.tm, &guard).unwrap() {
        let m = e.motive_ctx(&a).unwrap();
        let ri = e.refl_inst(&m).unwrap();
        for motive in enumerate_maps(m.ctx(), &e.motives.ty, &guard).unwrap().into_iter().take(4) {
            for c in maps_over(&e.motives.tp, &ri.then(&motive).unwrap(), &guard).unwrap() {
                let j = e.j_elim(&m, &motive, &c).unwrap();
                for sigma in [GroupoidMap::identity(&g), swap.clone(), point.clone()] {
                    assert!(e.check_substitution(&sigma, &m, &motive, &c, &j).unwrap().holds());
                }
            }
        }
    }
}

fn motive_lift_for(u1: &Universe, cty: &GroupoidMap, cyl: &Cylinder) -> PulledBackLift {
    let sq = VerifiedPullback::new(u1.ext_square(cty).unwrap()).unwrap();
    PulledBackLift::new(sq, lift_from_isofibration(&u1.tp, cyl).unwrap()).unwrap()
}

#[test]
fn diagram_j_fills_the_square() {
    let guard = Guard::default();
    let u0 = terms_universe();
    let u1 = motive_universe();
    let interval = IntervalObject::walking_iso();
    let cyl = Cylinder::new(interval.clone());
    let pt = path_types_from_closure(&u0, &interval, &guard).unwrap();
    let l0: LiftingStructure = lift_from_isofibration(&u0.tp, &cyl).unwrap();
    // A → X: the two-point fiber over a point
    let fam = GroupoidMap::to_terminal(&discrete(2), &terminal());
    let cls = classify(&u0, &fam, &guard).unwrap().expect("classified");
    let pa = pathmodel::cylinder::relative_pathobject(&fam, &interval, &guard).unwrap();
    let mut checked = 0;
    for cty in enumerate_maps(pa.carrier(), &u1.ty, &guard).unwrap() {
        let ext = u1.ext(&cty).unwrap();
        let lc = motive_lift_for(&u1, &cty, &cyl);
        for ctm in maps_over(&u1.tp, &pa.rho.then(&cty).unwrap(), &guard).unwrap() {
            let c = ext.pair(&pa.rho, &ctm).unwrap();
            let d = j_diagram(&cls, &pt, Arc::clone(&l0), &lc, &c, &guard).unwrap();
            for (name, v) in d.check() {
                assert!(v.holds(), "{name}: {v}");
            }
            assert!(d.found_by_search(&guard).unwrap());
            checked += 1;
        }
    }
    assert!(checked > 0);
}
