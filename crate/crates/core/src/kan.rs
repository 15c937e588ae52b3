//! Cubes, boundaries and open boxes, the Leibniz pushout-product and
//! pullback-hom, weak orthogonality, and cubical box filling.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::cylinder::{pathobject, Cylinder, IntervalObject};
use crate::error::{Error, Result};
use crate::exponential::Exponential;
use crate::fibration::{lift_from_isofibration, LiftingStructure};
use crate::groupoid::{same_groupoid, Gpd, GroupoidMap, Mor, Obj};
use crate::limits::{product, pullback, terminal, Product, PullbackSquare, VerifiedPullback};
use crate::search::{enumerate_partial_maps, fillers, for_each_map, Guard, PartialMap, UNSET};
use crate::subcomplex::{Face, Subcomplex};
use crate::universe::{Classification, Universe};
use crate::verdict::Verdict;

/// The power `𝐈ⁿ`, built as `((1×𝐈)×𝐈)×…` so coordinates are in factor order.
#[derive(Clone, Debug)]
pub struct Cube {
    pub n: usize,
    pub interval: IntervalObject,
    pub carrier: Gpd,
    steps: Vec<Product>,
}

impl Cube {
    pub fn new(interval: &IntervalObject, n: usize) -> Self {
        let mut carrier = terminal();
        let mut steps = Vec::with_capacity(n);
        for _ in 0..n {
            let p = product(&carrier, &interval.carrier);
            carrier = p.apex.clone();
            steps.push(p);
        }
        Self {
            n,
            interval: interval.clone(),
            carrier,
            steps,
        }
    }

    pub fn obj_coords(&self, mut o: Obj) -> Vec<Obj> {
        let mut c = vec![0; self.n];
        for k in (0..self.n).rev() {
            (o, c[k]) = self.steps[k].split_obj(o);
        }
        c
    }

    pub fn mor_coords(&self, mut m: Mor) -> Vec<Mor> {
        let mut c = vec![0; self.n];
        for k in (0..self.n).rev() {
            (m, c[k]) = self.steps[k].split_mor(m);
        }
        c
    }

    pub fn obj_at(&self, c: &[Obj]) -> Obj {
        c.iter().zip(&self.steps).fold(0, |o, (&i, p)| p.obj(o, i))
    }

    pub fn mor_at(&self, c: &[Mor]) -> Mor {
        c.iter().zip(&self.steps).fold(0, |m, (&i, p)| p.mor(m, i))
    }

    /// The face `x_k = end` (coordinates counted from 0).
    pub fn face(&self, k: usize, end: usize) -> Face {
        let i = &self.interval.carrier;
        let e = self.interval.endpoint(end);
        Face::from_predicates(
            &self.carrier,
            |o| self.obj_coords(o)[k] == e,
            |m| self.mor_coords(m)[k] == i.id(e),
        )
    }

    /// The boundary as the union of all faces.
    pub fn boundary_faces(&self) -> Subcomplex {
        let faces = (0..self.n).flat_map(|k| [self.face(k, 0), self.face(k, 1)]).collect();
        Subcomplex {
            ambient: self.carrier.clone(),
            faces,
        }
    }

    /// All faces but `x_n = 1 - end`.
    pub fn open_box_faces(&self, end: usize) -> Subcomplex {
        let mut faces: Vec<Face> = (0..self.n.saturating_sub(1))
            .flat_map(|k| [self.face(k, 0), self.face(k, 1)])
            .collect();
        if self.n > 0 {
            faces.push(self.face(self.n - 1, end));
        }
        Subcomplex {
            ambient: self.carrier.clone(),
            faces,
        }
    }
}

/// The endpoint inclusion `∂𝐈 ↪ 𝐈`.
pub fn endpoints(interval: &IntervalObject) -> Subcomplex {
    let mut faces = interval.end(0).faces;
    faces.extend(interval.end(1).faces);
    Subcomplex {
        ambient: interval.carrier.clone(),
        faces,
    }
}

fn face_product(p: &Product, a: &Face, b: &Face) -> Face {
    let mut f = Face {
        objects: Default::default(),
        morphisms: Default::default(),
    };
    for &x in &a.objects {
        for &y in &b.objects {
            f.objects.insert(p.obj(x, y));
        }
    }
    for &x in &a.morphisms {
        for &y in &b.morphisms {
            f.morphisms.insert(p.mor(x, y));
        }
    }
    f
}

/// The Leibniz product `A×D ∪ C×B ↪ C×D` of `A ↪ C` and `B ↪ D`, with the
/// pushout realized as a union inside the product.
pub fn pushout_product(a: &Subcomplex, b: &Subcomplex) -> (Product, Subcomplex) {
    let p = product(&a.ambient, &b.ambient);
    let (full_c, full_d) = (Face::full(&a.ambient), Face::full(&b.ambient));
    let mut faces: Vec<Face> = a.faces.iter().map(|f| face_product(&p, f, &full_d)).collect();
    faces.extend(b.faces.iter().map(|g| face_product(&p, &full_c, g)));
    let sub = Subcomplex {
        ambient: p.apex.clone(),
        faces,
    }
    .normalized();
    (p, sub)
}

/// The Leibniz product of two monomorphisms; other maps are rejected.
pub fn pushout_product_of_monos(a: &GroupoidMap, b: &GroupoidMap) -> Result<(Product, Subcomplex)> {
    Ok(pushout_product(&Subcomplex::from_mono(a)?, &Subcomplex::from_mono(b)?))
}

fn rehome(sub: Subcomplex, ambient: &Gpd) -> Result<Subcomplex> {
    if !same_groupoid(&sub.ambient, ambient) {
        return Err(Error::Invalid("subcomplex lives in a different ambient".into()));
    }
    Ok(Subcomplex {
        ambient: ambient.clone(),
        faces: sub.faces,
    })
}

/// `∂𝐈ⁿ` by the recursion `∂𝐈⁰ = ∅`, `∂𝐈ⁿ = ∂𝐈ⁿ⁻¹ ⊗ ∂𝐈`.
pub fn boundary_inclusion(cube: &Cube) -> Result<Subcomplex> {
    let mut sub = Subcomplex::empty(&terminal());
    for k in 1..=cube.n {
        let (_, next) = pushout_product(&sub, &endpoints(&cube.interval));
        sub = rehome(next, &Cube::new(&cube.interval, k).carrier)?;
    }
    rehome(sub, &cube.carrier)
}

/// The open box `⊔ⁿ = ∂𝐈ⁿ⁻¹ ⊗ d_end`, missing the face `x_n = 1 - end`.
pub fn open_box(cube: &Cube, end: usize) -> Result<Subcomplex> {
    if cube.n == 0 {
        return Err(Error::Invalid("open boxes start in dimension 1".into()));
    }
    let lower = boundary_inclusion(&Cube::new(&cube.interval, cube.n - 1))?;
    let (_, sub) = pushout_product(&lower, &cube.interval.end(end));
    rehome(sub, &cube.carrier)
}

/// The iso `𝐈ᵐ × 𝐈ⁿ → 𝐈ᵐ⁺ⁿ` concatenating coordinates.
pub fn concatenation(a: &Cube, b: &Cube) -> (Product, Cube, GroupoidMap) {
    let p = product(&a.carrier, &b.carrier);
    let c = Cube::new(&a.interval, a.n + b.n);
    let map = GroupoidMap::from_fns(
        p.apex.clone(),
        c.carrier.clone(),
        |o| {
            let (x, y) = p.split_obj(o);
            c.obj_at(&[a.obj_coords(x), b.obj_coords(y)].concat())
        },
        |m| {
            let (x, y) = p.split_mor(m);
            c.mor_at(&[a.mor_coords(x), b.mor_coords(y)].concat())
        },
    );
    (p, c, map)
}

/// The comparison map `Y^D → Y^B ×_{X^B} X^D` of `B ↪ D` against `f: Y → X`.
pub struct PullbackHom {
    pub total: Exponential,
    pub total_part: Exponential,
    pub base: Exponential,
    pub base_part: Exponential,
    pub corner: PullbackSquare,
    pub map: GroupoidMap,
}

pub fn pullback_hom(i: &Subcomplex, f: &GroupoidMap, guard: &Guard) -> Result<PullbackHom> {
    let full = Subcomplex::full(&i.ambient);
    let total = Exponential::absolute(f.dom(), &full, guard)?;
    let total_part = Exponential::absolute(f.dom(), i, guard)?;
    let base = Exponential::absolute(f.cod(), &full, guard)?;
    let base_part = Exponential::absolute(f.cod(), i, guard)?;
    let corner = pullback(&total_part.postcompose(f, &base_part)?, &base.restrict(&base_part)?)?;
    let map = corner.pair(&total.restrict(&total_part)?, &total.postcompose(f, &base)?)?;
    Ok(PullbackHom {
        total,
        total_part,
        base,
        base_part,
        corner,
        map,
    })
}

/// Whether `∂𝐈 ⇒ (A → 1)` is the path object `A^𝐈 → A×A` up to the canonical
/// isomorphisms on both ends.
pub fn check_endpoint_hom_is_path_object(a: &Gpd, interval: &IntervalObject, guard: &Guard) -> Result<Verdict> {
    let one = terminal();
    let ph = pullback_hom(&endpoints(interval), &GroupoidMap::to_terminal(a, &one), guard)?;
    let po = pathobject(a, interval, guard)?;
    let parts = ph.corner.p1();
    let ends = po.ends.pair(
        &parts.then(&ph.total_part.eval_at(interval.endpoint(0)))?,
        &parts.then(&ph.total_part.eval_at(interval.endpoint(1)))?,
    )?;
    let paths = ph.total.restrict(&po.exp)?;
    if !ends.is_iso() {
        return Ok(Verdict::fails("the corner does not match A×A"));
    }
    if !paths.is_iso() {
        return Ok(Verdict::fails("the exponentials do not match"));
    }
    Ok(Verdict::from_bool(ph.map.then(&ends)? == paths.then(&po.eps)?, || {
        "the comparison map differs from the endpoint map".into()
    }))
}

/// A commuting square from `left` to `right`: a map on the subcomplex and a
/// map on its ambient.
pub type Square = (PartialMap, GroupoidMap);

fn squares_for(left: &Subcomplex, right: &GroupoidMap, guard: &Guard, mut visit: impl FnMut(Square) -> Result<ControlFlow<()>>) -> Result<()> {
    let mut err = None;
    for_each_map(&left.ambient, right.cod(), guard, |bottom| {
        let tops = match enumerate_partial_maps(
            left,
            right.dom(),
            guard,
            |o, v| right.obj(v) == bottom.obj(o),
            |m, n| right.mor(n) == bottom.mor(m),
        ) {
            Ok(t) => t,
            Err(e) => {
                err = Some(e);
                return ControlFlow::Break(());
            }
        };
        for top in tops {
            match visit((top, bottom.clone())) {
                Ok(ControlFlow::Continue(())) => {}
                Ok(ControlFlow::Break(())) => return ControlFlow::Break(()),
                Err(e) => {
                    err = Some(e);
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    })?;
    err.map_or(Ok(()), Err)
}

/// Every commuting square from `left` to `right` (all of them when `given`
/// is `None`) has a diagonal filler, by exhaustive search.
pub fn check_weak_orthogonality(
    left: &Subcomplex,
    right: &GroupoidMap,
    given: Option<&[Square]>,
    guard: &Guard,
) -> Result<Verdict> {
    let unfillable = |sq: &Square| -> Result<Option<String>> {
        let (top, bottom) = sq;
        if fillers(top, right, bottom, guard, Some(1))?.is_empty() {
            Ok(Some(format!("no filler over {}", bottom.describe())))
        } else {
            Ok(None)
        }
    };
    if let Some(sqs) = given {
        for sq in sqs {
            if let Some(w) = unfillable(sq)? {
                return Ok(Verdict::fails(w));
            }
        }
        return Ok(Verdict::Holds);
    }
    let mut verdict = Verdict::Holds;
    squares_for(left, right, guard, |sq| {
        Ok(match unfillable(&sq)? {
            Some(w) => {
                verdict = Verdict::fails(w);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        })
    })?;
    Ok(verdict)
}

/// Both sides of `a⊗b ⋔ c ⟺ a ⋔ (b⇒c)`.
#[derive(Clone, Debug)]
pub struct Transposition {
    pub product_side: Verdict,
    pub hom_side: Verdict,
}

impl Transposition {
    pub fn agrees(&self) -> Verdict {
        Verdict::from_bool(self.product_side.holds() == self.hom_side.holds(), || {
            format!("a⊗b ⋔ c {} but a ⋔ b⇒c {}", self.product_side, self.hom_side)
        })
    }
}

pub fn adjunction_transpose_check(a: &Subcomplex, b: &Subcomplex, c: &GroupoidMap, guard: &Guard) -> Result<Transposition> {
    let (_, ab) = pushout_product(a, b);
    let product_side = check_weak_orthogonality(&ab, c, None, guard)?;
    let hom_side = check_weak_orthogonality(a, &pullback_hom(b, c, guard)?.map, None, guard)?;
    Ok(Transposition {
        product_side,
        hom_side,
    })
}

/// An open-box problem with parameters `Z`: a map on `⊔ⁿ×Z` into `Y` and a
/// map `𝐈ⁿ×Z → X` agreeing under `f: Y → X`.
#[derive(Clone, Debug)]
pub struct BoxProblem {
    pub n: usize,
    pub domain: Product,
    pub boxed: Subcomplex,
    pub top: PartialMap,
    pub bottom: GroupoidMap,
}

/// `⊔ⁿ×Z ↪ 𝐈ⁿ×Z`, the upper open box with parameters.
pub fn parameterized_box(cube: &Cube, params: &Gpd) -> Result<(Product, Subcomplex)> {
    Ok(pushout_product(&open_box(cube, 0)?, &Subcomplex::empty(params)))
}

/// Every open-box problem of dimension `cube.n` against `f`.
pub fn box_problems(f: &GroupoidMap, cube: &Cube, params: &Gpd, guard: &Guard) -> Result<Vec<BoxProblem>> {
    let (domain, boxed) = parameterized_box(cube, params)?;
    let mut out = Vec::new();
    squares_for(&boxed, f, guard, |(top, bottom)| {
        out.push(BoxProblem {
            n: cube.n,
            domain: domain.clone(),
            boxed: boxed.clone(),
            top,
            bottom,
        });
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(out)
}

/// Whether `h` solves the problem against `f`.
pub fn check_filler(p: &BoxProblem, f: &GroupoidMap, h: &GroupoidMap) -> Verdict {
    h.check_functor()
        .and(|| Verdict::from_bool(h.then(f).is_ok_and(|b| b == p.bottom), || "filler is not over the bottom".into()))
        .and(|| {
            let objs = p.boxed.objects().into_iter().all(|o| h.obj(o) == p.top.obj[o]);
            let mors = p.boxed.morphisms().into_iter().all(|m| h.mor(m) == p.top.mor[m]);
            Verdict::from_bool(objs && mors, || "filler does not extend the box".into())
        })
}

struct Level {
    map: GroupoidMap,
    lift: LiftingStructure,
    /// `∂𝐈 ⇒ map`, the next level's right map.
    up: Option<PullbackHom>,
}

/// Constructive open-box filling up to a fixed dimension. Dimension 1 is the
/// Hurewicz lift; dimension `n+1` transposes to an `n`-box problem against
/// `∂𝐈 ⇒ f` and recurses.
pub struct BoxFiller {
    cylinder: Cylinder,
    cubes: Vec<Cube>,
    levels: Arc<Vec<Level>>,
    /// For a classified family: fill against the universe and mediate back.
    transfer: Option<VerifiedPullback>,
}

impl BoxFiller {
    pub fn new(f: &GroupoidMap, interval: &IntervalObject, max_dim: usize, guard: &Guard) -> Result<Self> {
        let cylinder = Cylinder::new(interval.clone());
        let cubes = (0..=max_dim).map(|n| Cube::new(interval, n)).collect();
        let bd = endpoints(interval);
        let mut levels: Vec<Level> = Vec::new();
        let mut map = f.clone();
        for k in 0..max_dim.max(1) {
            let lift = lift_from_isofibration(&map, &cylinder)?;
            let up = if k + 1 < max_dim {
                Some(pullback_hom(&bd, &map, guard)?)
            } else {
                None
            };
            let next = up.as_ref().map(|u| u.map.clone());
            levels.push(Level { map, lift, up });
            match next {
                Some(m) => map = m,
                None => break,
            }
        }
        Ok(Self {
            cylinder,
            cubes,
            levels: Arc::new(levels),
            transfer: None,
        })
    }

    /// Fills against `tp` and transfers along the classifying square.
    pub fn classified(u: &Universe, cls: &Classification, interval: &IntervalObject, max_dim: usize, guard: &Guard) -> Result<Self> {
        Self::new(&u.tp, interval, max_dim, guard)?.along(u, cls)
    }

    /// A filler built for `tp`, reused for a family it classifies.
    pub fn along(&self, u: &Universe, cls: &Classification) -> Result<Self> {
        if self.levels[0].map != u.tp {
            return Err(Error::Invalid("filler was not built for this universe".into()));
        }
        Ok(Self {
            cylinder: self.cylinder.clone(),
            cubes: self.cubes.clone(),
            levels: Arc::clone(&self.levels),
            transfer: Some(VerifiedPullback::new(cls.square(u)?)?),
        })
    }

    pub fn max_dim(&self) -> usize {
        self.cubes.len() - 1
    }

    pub fn fill(&self, p: &BoxProblem) -> Result<GroupoidMap> {
        if p.n == 0 || p.n > self.max_dim() {
            return Err(Error::Unsupported(format!("box dimension {} outside 1..={}", p.n, self.max_dim())));
        }
        let Some(t) = &self.transfer else {
            return self.solve(0, p.n, &p.domain, &p.top, &p.bottom);
        };
        let top = p.top.then(&t.square.top);
        let bottom = p.bottom.then(&t.square.bottom)?;
        let h = self.solve(0, p.n, &p.domain, &top, &bottom)?;
        t.mediate(&p.bottom, &h)
    }

    fn solve(&self, k: usize, n: usize, d: &Product, top: &PartialMap, bottom: &GroupoidMap) -> Result<GroupoidMap> {
        let level = &self.levels[k];
        let interval = &self.cylinder.interval;
        let i = &interval.carrier;
        let z = &d.right;
        let unset = || Error::Invalid("box data missing where the filler needs it".into());
        if n == 1 {
            let c1 = &self.cubes[1];
            let iz = self.cylinder.apply(z);
            let r = GroupoidMap::from_fns(
                iz.apex.clone(),
                d.apex.clone(),
                |o| {
                    let (zo, s) = iz.split_obj(o);
                    d.obj(c1.obj_at(&[s]), zo)
                },
                |m| {
                    let (zm, s) = iz.split_mor(m);
                    d.mor(c1.mor_at(&[s]), zm)
                },
            );
            let d0 = interval.endpoint(0);
            let y = GroupoidMap::try_from_fns(
                z.clone(),
                level.map.dom().clone(),
                |zo| Some(top.obj[d.obj(c1.obj_at(&[d0]), zo)]).filter(|&v| v != UNSET).ok_or_else(unset),
                |zm| Some(top.mor[d.mor(c1.mor_at(&[i.id(d0)]), zm)]).filter(|&v| v != UNSET).ok_or_else(unset),
            )?;
            let h = level.lift.lift(&y, &r.then(bottom)?)?;
            let back = r.inverse().expect("coordinate change is invertible");
            return back.then(&h);
        }
        // Coordinates ((v, z), s) with s the second-to-last coordinate of the
        // (n)-cube and v the others, so the box becomes ⊔ⁿ⁻¹ ⊗ ∂𝐈.
        let up = level.up.as_ref().ok_or_else(|| Error::Unsupported("box dimension above the built tower".into()))?;
        let (lower, cube) = (&self.cubes[n - 1], &self.cubes[n]);
        let w = product(&lower.carrier, z);
        let e = product(&w.apex, i);
        let spread = |v: Vec<usize>, s: usize| -> Vec<usize> {
            let mut u = v;
            let last = u.pop().expect("n ≥ 2");
            u.push(s);
            u.push(last);
            u
        };
        let r = GroupoidMap::from_fns(
            e.apex.clone(),
            d.apex.clone(),
            |o| {
                let (wo, s) = e.split_obj(o);
                let (v, zo) = w.split_obj(wo);
                d.obj(cube.obj_at(&spread(lower.obj_coords(v), s)), zo)
            },
            |m| {
                let (wm, s) = e.split_mor(m);
                let (v, zm) = w.split_mor(wm);
                d.mor(cube.mor_at(&spread(lower.mor_coords(v), s)), zm)
            },
        );
        let lower_box = rehome(parameterized_box(lower, z)?.1, &w.apex)?;
        let (total, part, base) = (&up.total, &up.total_part, &up.base);
        let at = |src: &PartialMap, o: Obj| src.obj[r.obj(o)];
        let at_mor = |src: &PartialMap, m: Mor| src.mor[r.mor(m)];
        let bottom_p = PartialMap::total(bottom);
        let missing = || Error::Invalid("transposed box data is not functorial".into());

        let mut top2 = PartialMap::unset(&w.apex, total.groupoid());
        for wo in lower_box.objects() {
            top2.obj[wo] = total
                .find_functor(|s| at(top, e.obj(wo, s)), |m| at_mor(top, e.mor(w.apex.id(wo), m)))
                .ok_or_else(missing)?;
        }
        for wm in lower_box.morphisms() {
            top2.mor[wm] = total
                .find_nat(top2.obj[w.apex.src(wm)], |s| at_mor(top, e.mor(wm, i.id(s))))
                .ok_or_else(missing)?;
        }

        let functor_pair = |wo: Obj| -> Result<Obj> {
            let a = part
                .find_functor(|s| at(top, e.obj(wo, s)), |m| at_mor(top, e.mor(w.apex.id(wo), m)))
                .ok_or_else(missing)?;
            let b = base
                .find_functor(|s| at(&bottom_p, e.obj(wo, s)), |m| at_mor(&bottom_p, e.mor(w.apex.id(wo), m)))
                .ok_or_else(missing)?;
            up.corner.obj_of(a, b).ok_or_else(missing)
        };
        let corner = &up.corner.apex;
        let bottom2 = GroupoidMap::try_from_fns(
            w.apex.clone(),
            corner.clone(),
            functor_pair,
            |wm| {
                let src = functor_pair(w.apex.src(wm))?;
                let (a, b) = up.corner.obj_pair(src);
                let na = part.find_nat(a, |s| at_mor(top, e.mor(wm, i.id(s)))).ok_or_else(missing)?;
                let nb = base.find_nat(b, |s| at_mor(&bottom_p, e.mor(wm, i.id(s)))).ok_or_else(missing)?;
                up.corner.mor_of(na, nb).ok_or_else(missing)
            },
        )?;

        let h2 = self.solve(k + 1, n - 1, &w, &top2, &bottom2)?;
        let h = total.uncurry(&h2, &e).to_total().ok_or_else(missing)?;
        r.inverse().expect("coordinate change is invertible").then(&h)
    }
}

/// Outcome of a Kan check: the dimension reached and how many problems were
/// filled and confirmed by search.
#[derive(Clone, Debug)]
pub struct KanReport {
    pub verdict: Verdict,
    pub problems: usize,
    pub searched: usize,
}

/// Fills every open-box problem of dimension `≤ max_dim` (for each parameter
/// object) with `filler`, re-verifies each filler, and for dimensions up to
/// `search_dim` confirms it is among the exhaustively searched fillers.
pub fn check_kan_with(
    filler: &BoxFiller,
    f: &GroupoidMap,
    params: &[Gpd],
    search_dim: usize,
    guard: &Guard,
) -> Result<KanReport> {
    let mut report = KanReport {
        verdict: Verdict::Holds,
        problems: 0,
        searched: 0,
    };
    for n in 1..=filler.max_dim() {
        for z in params {
            for p in box_problems(f, &filler.cubes[n], z, guard)? {
                report.problems += 1;
                let h = filler.fill(&p)?;
                let v = check_filler(&p, f, &h);
                if !v.holds() {
                    report.verdict = v.context(&format!("dimension {n}"));
                    return Ok(report);
                }
                if n <= search_dim {
                    report.searched += 1;
                    if !fillers(&p.top, f, &p.bottom, guard, None)?.contains(&h) {
                        report.verdict = Verdict::fails(format!("dimension {n}: filler not found by search"));
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Kan check for an arbitrary map: constructive when `f` is an
/// isofibration, otherwise an unfillable box is searched for as witness.
pub fn check_kan(f: &GroupoidMap, interval: &IntervalObject, max_dim: usize, params: &[Gpd], guard: &Guard) -> Result<KanReport> {
    match BoxFiller::new(f, interval, max_dim, guard) {
        Ok(b) => check_kan_with(&b, f, params, 2, guard),
        Err(Error::NotIsofibration { .. }) => {
            for n in 1..=max_dim {
                let cube = Cube::new(interval, n);
                for z in params {
                    let (_, boxed) = parameterized_box(&cube, z)?;
                    let v = check_weak_orthogonality(&boxed, f, None, guard)?;
                    if !v.holds() {
                        return Ok(KanReport {
                            verdict: v.context(&format!("dimension {n}")),
                            problems: 0,
                            searched: 0,
                        });
                    }
                }
            }
            Err(Error::Invalid("no unfillable box found for a non-isofibration".into()))
        }
        Err(e) => Err(e),
    }
}

/// Whether `f` has `n`-box filling, by search.
pub fn has_box_filling(f: &GroupoidMap, interval: &IntervalObject, n: usize, guard: &Guard) -> Result<Verdict> {
    check_weak_orthogonality(&open_box(&Cube::new(interval, n), 0)?, f, None, guard)
}
