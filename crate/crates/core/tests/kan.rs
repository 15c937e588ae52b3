use pathmodel::builtin::*;
use pathmodel::cylinder::{Cylinder, IntervalObject};
use pathmodel::fibration::{check_hurewicz_left, lift_from_isofibration};
use pathmodel::kan::*;
use pathmodel::limits::product;
use pathmodel::search::Guard;
use pathmodel::subcomplex::Subcomplex;
use pathmodel::universe::{classify, Universe};
use pathmodel::{Gpd, GroupoidMap};

fn iso() -> IntervalObject {
    IntervalObject::walking_iso()
}

fn cube(n: usize) -> Cube {
    Cube::new(&iso(), n)
}

fn small_universe() -> Universe {
    let fibers: Vec<(String, Gpd)> = vec![("D2".into(), discrete(2)), ("1".into(), terminal()), ("0".into(), empty())];
    Universe::groupoid(&fibers, &Guard::default()).unwrap()
}

fn endpoint_inclusion() -> GroupoidMap {
    GroupoidMap::from_fns(discrete(2), walking_iso(), |o| o, |m| 3 * m)
}

#[test]
fn cube_sizes() {
    for n in 0..=3 {
        let c = cube(n);
        assert_eq!(c.carrier.num_objects(), 1 << n);
        assert_eq!(c.carrier.num_morphisms(), 1 << (2 * n));
        for o in 0..c.carrier.num_objects() {
            assert_eq!(c.obj_at(&c.obj_coords(o)), o);
        }
    }
}

#[test]
fn square_boundary_has_four_objects_and_twelve_morphisms() {
    let b = boundary_inclusion(&cube(2)).unwrap();
    assert_eq!(b.objects().len(), 4);
    assert_eq!(b.morphisms().len(), 12);
    let b1 = boundary_inclusion(&cube(1)).unwrap();
    assert_eq!((b1.objects().len(), b1.morphisms().len()), (2, 2));
    assert!(boundary_inclusion(&cube(0)).unwrap().objects().is_empty());
}

#[test]
fn recursion_equals_union_of_faces() {
    for n in 0..=3 {
        let c = cube(n);
        assert!(boundary_inclusion(&c).unwrap().same_subobject(&c.boundary_faces()), "boundary {n}");
        if n > 0 {
            for end in 0..2 {
                assert!(open_box(&c, end).unwrap().same_subobject(&c.open_box_faces(end)), "box {n} {end}");
            }
        }
    }
}

#[test]
fn open_boxes_of_low_dimension() {
    let b1 = open_box(&cube(1), 0).unwrap();
    assert_eq!(b1.objects().len(), 1);
    let b2 = open_box(&cube(2), 0).unwrap();
    assert_eq!(b2.objects().len(), 4);
    // three edges: 4 identities and 2 non-identities per edge
    assert_eq!(b2.morphisms().len(), 10);
}

#[test]
fn boundaries_multiply() {
    let (_, c, iso_map) = concatenation(&cube(1), &cube(1));
    assert!(iso_map.is_iso());
    let (_, prod) = pushout_product(&boundary_inclusion(&cube(1)).unwrap(), &boundary_inclusion(&cube(1)).unwrap());
    assert!(prod.transport(&iso_map).same_subobject(&boundary_inclusion(&c).unwrap()));
}

#[test]
fn boundary_times_start_is_the_open_box() {
    let (p, s) = pushout_product(&boundary_inclusion(&cube(1)).unwrap(), &iso().end(0));
    assert!(pathmodel::groupoid::same_groupoid(&p.apex, &cube(2).carrier));
    let s = Subcomplex {
        ambient: cube(2).carrier,
        faces: s.faces,
    };
    assert!(s.same_subobject(&open_box(&cube(2), 0).unwrap()));
}

#[test]
fn start_times_start_is_a_corner() {
    let (_, s) = pushout_product(&iso().end(0), &iso().end(0));
    assert_eq!(s.objects().len(), 3);
    assert_eq!(s.morphisms().len(), 7);
}

#[test]
fn empty_inclusion_is_the_unit() {
    let one = terminal();
    let b = endpoints(&iso());
    let (p, s) = pushout_product(&Subcomplex::empty(&one), &b);
    assert_eq!(p.apex.num_objects(), iso().carrier.num_objects());
    assert_eq!(s.objects().len(), b.objects().len());
    assert_eq!(s.morphisms().len(), b.morphisms().len());
}

#[test]
fn non_monos_are_rejected() {
    let collapse = GroupoidMap::to_terminal(&walking_iso(), &terminal());
    let d0 = GroupoidMap::constant(&terminal(), &walking_iso(), 0);
    assert!(pushout_product_of_monos(&collapse, &d0).is_err());
    assert!(pushout_product_of_monos(&d0, &d0).is_ok());
}

#[test]
fn endpoint_hom_is_the_path_object() {
    for a in [cyclic(2), discrete(2), walking_iso(), terminal()] {
        let v = check_endpoint_hom_is_path_object(&a, &iso(), &Guard::default()).unwrap();
        assert!(v.holds(), "{v}");
    }
}

#[test]
fn hom_from_the_empty_inclusion_is_the_map() {
    let f = small_universe().tp;
    let one = terminal();
    let ph = pullback_hom(&Subcomplex::empty(&one), &f, &Guard::default()).unwrap();
    let ev_total = ph.total.eval_at(0);
    let ev_base = ph.corner.p2().then(&ph.base.eval_at(0)).unwrap();
    assert!(ev_total.is_iso());
    assert!(ev_base.is_iso());
    assert_eq!(ph.map.then(&ev_base).unwrap(), ev_total.then(&f).unwrap());
}

#[test]
fn start_orthogonality_is_hurewicz_lifting() {
    let guard = Guard::default();
    let cyl = Cylinder::new(iso());
    for f in [small_universe().tp, endpoint_inclusion(), GroupoidMap::to_terminal(&cyclic(2), &terminal())] {
        let orth = check_weak_orthogonality(&iso().end(0), &f, None, &guard).unwrap();
        let hur = check_hurewicz_left(&f, &cyl, &[terminal()], &guard).unwrap();
        assert_eq!(orth.holds(), hur.holds(), "{}", f.describe());
    }
}

#[test]
fn orthogonality_examples() {
    let guard = Guard::default();
    let swap = GroupoidMap::from_fns(discrete(2), discrete(2), |o| 1 - o, |m| 1 - m);
    assert!(check_weak_orthogonality(&endpoints(&iso()), &swap, None, &guard).unwrap().holds());
    let box1 = open_box(&cube(1), 0).unwrap();
    assert!(!check_weak_orthogonality(&box1, &endpoint_inclusion(), None, &guard).unwrap().holds());
    assert!(check_weak_orthogonality(&box1, &small_universe().tp, None, &guard).unwrap().holds());
}

#[test]
fn leibniz_transposition_on_a_corpus() {
    let guard = Guard::default();
    let one = terminal();
    let bd = boundary_inclusion(&cube(1)).unwrap();
    let bd_i = endpoints(&iso());
    let d0 = iso().end(0);
    let tp = small_universe().tp;
    let t = adjunction_transpose_check(&bd, &d0, &tp, &guard).unwrap();
    assert!(t.product_side.holds() && t.hom_side.holds());
    // ∂𝐈¹⊗d0 is the 2-box, which every functor fills; the failing case
    // needs the unit on the left, where both sides reduce to d0 ⋔ c
    let t = adjunction_transpose_check(&bd, &d0, &endpoint_inclusion(), &guard).unwrap();
    assert!(t.product_side.holds() && t.hom_side.holds());
    let t = adjunction_transpose_check(&Subcomplex::empty(&one), &d0, &endpoint_inclusion(), &guard).unwrap();
    assert!(!t.product_side.holds() && !t.hom_side.holds());
    let lefts = [Subcomplex::empty(&one), bd.clone(), d0.clone(), bd_i.clone()];
    let rights = [d0.clone(), bd_i.clone()];
    let maps = [tp, endpoint_inclusion(), GroupoidMap::to_terminal(&cyclic(2), &one)];
    for a in &lefts {
        for b in &rights {
            for c in &maps {
                let t = adjunction_transpose_check(a, b, c, &guard).unwrap();
                assert!(t.agrees().holds(), "{}", t.agrees());
            }
        }
    }
}

#[test]
fn box_filling_transposes_in_low_dimensions() {
    let guard = Guard::default();
    let bd = endpoints(&iso());
    let maps = [
        GroupoidMap::to_terminal(&cyclic(2), &terminal()),
        GroupoidMap::to_terminal(&discrete(2), &terminal()),
        endpoint_inclusion(),
        small_universe().tp,
    ];
    for f in &maps {
        let paths = pullback_hom(&bd, f, &guard).unwrap().map;
        for n in 1..=2 {
            let lower = has_box_filling(&paths, &iso(), n, &guard).unwrap().holds();
            let upper = has_box_filling(f, &iso(), n + 1, &guard).unwrap().holds();
            assert_eq!(lower, upper, "{} at {n}", f.describe());
        }
    }
}

#[test]
fn boxes_above_dimension_one_always_fill() {
    // the n-box reaches every vertex and is connected once n ≥ 2
    let guard = Guard::default();
    let f = endpoint_inclusion();
    assert!(!has_box_filling(&f, &iso(), 1, &guard).unwrap().holds());
    for n in 2..=3 {
        assert!(has_box_filling(&f, &iso(), n, &guard).unwrap().holds());
    }
}

#[test]
fn one_box_filler_is_the_hurewicz_lift() {
    let guard = Guard::default();
    let f = small_universe().tp;
    let one = terminal();
    let filler = BoxFiller::new(&f, &iso(), 1, &guard).unwrap();
    let cyl = Cylinder::new(iso());
    let lift = lift_from_isofibration(&f, &cyl).unwrap();
    let iz = cyl.apply(&one);
    let c1 = cube(1);
    for p in box_problems(&f, &c1, &one, &guard).unwrap() {
        let h = filler.fill(&p).unwrap();
        let r = GroupoidMap::from_fns(
            iz.apex.clone(),
            p.domain.apex.clone(),
            |o| p.domain.obj(c1.obj_at(&[iz.split_obj(o).1]), 0),
            |m| p.domain.mor(c1.mor_at(&[iz.split_mor(m).1]), 0),
        );
        let y = GroupoidMap::constant(&one, f.dom(), p.top.obj[p.domain.obj(c1.obj_at(&[0]), 0)]);
        let expected = lift.lift(&y, &r.then(&p.bottom).unwrap()).unwrap();
        assert_eq!(r.then(&h).unwrap(), expected);
    }
}

#[test]
fn universe_is_kan_up_to_three() {
    let guard = Guard::default();
    let tp = small_universe().tp;
    let r = check_kan(&tp, &iso(), 3, &[terminal()], &guard).unwrap();
    assert!(r.verdict.holds(), "{}", r.verdict);
    assert!(r.problems > 0 && r.searched > 0);
}

#[test]
fn parameterized_boxes_fill() {
    let guard = Guard::default();
    let tp = small_universe().tp;
    let r = check_kan(&tp, &iso(), 2, &[terminal(), discrete(2), walking_iso()], &guard).unwrap();
    assert!(r.verdict.holds(), "{}", r.verdict);
}

#[test]
fn set_model_is_trivially_kan() {
    let u = Universe::set(&[("0".into(), empty()), ("1".into(), terminal()), ("2".into(), discrete(2))], &Guard::default()).unwrap();
    let r = check_kan(&u.tp, &IntervalObject::trivial(), 3, &[terminal()], &Guard::default()).unwrap();
    assert!(r.verdict.holds(), "{}", r.verdict);
    let c = Cube::new(&IntervalObject::trivial(), 3);
    assert!(open_box(&c, 0).unwrap().is_full() || open_box(&c, 0).unwrap().objects().len() == 1);
}

#[test]
fn non_isofibration_is_not_kan() {
    let r = check_kan(&endpoint_inclusion(), &iso(), 1, &[terminal()], &Guard::default()).unwrap();
    assert!(!r.verdict.holds());
    assert!(r.verdict.witness().unwrap().contains("dimension 1"));
}

#[test]
fn classified_families_are_kan() {
    let guard = Guard::default();
    let u = small_universe();
    let one = terminal();
    for fam in [
        GroupoidMap::to_terminal(&discrete(2), &one),
        GroupoidMap::to_terminal(&one, &one),
        u.ext(&GroupoidMap::from_fns(walking_iso(), u.ty.clone(), |_| 0, |m| if m == 1 || m == 2 { 1 } else { 0 }))
            .map(|e| e.disp())
            .unwrap(),
    ] {
        let cls = classify(&u, &fam, &guard).unwrap().expect("classified");
        let filler = BoxFiller::classified(&u, &cls, &iso(), 3, &guard).unwrap();
        let r = check_kan_with(&filler, &fam, &[one.clone()], 2, &guard).unwrap();
        assert!(r.verdict.holds(), "{}: {}", fam.describe(), r.verdict);
    }
}

#[test]
fn squares_into_a_product_fill_componentwise() {
    // a sanity check of the box problem enumeration against a trivial fibration
    let one = terminal();
    let p = product(&cyclic(2), &one);
    let f = p.p2();
    let r = check_kan(&f, &iso(), 2, &[one], &Guard::default()).unwrap();
    assert!(r.verdict.holds(), "{}", r.verdict);
}
