//! Hurewicz fibration structure: chosen lifts against the 0-end of every
//! cylinder, the equivalent section form, normality, uniformity, and the
//! connection on a path object.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::cylinder::{pathobject, relative_pathobject, Cylinder, PathObject};
use crate::error::{Error, Result};
use crate::groupoid::{same_groupoid, Gpd, GroupoidMap, Mor, Obj};
use crate::limits::{pullback, PullbackSquare, VerifiedPullback};
use crate::search::{enumerate_maps, fillers, pins_from_map, Domain, Guard, PartialMap, Search};
use crate::verdict::Verdict;

/// A chosen solution `h̃ : IZ → Y` to every lifting problem
/// `y : Z → Y`, `p : IZ → X` with `y;f = δ0;p`.
pub trait Lifting: Send + Sync {
    fn family(&self) -> &GroupoidMap;
    fn cylinder(&self) -> &Cylinder;
    fn lift(&self, y: &GroupoidMap, p: &GroupoidMap) -> Result<GroupoidMap>;
    fn name(&self) -> String;

    /// Choices made during construction that could break uniformity.
    fn warnings(&self) -> Vec<String> {
        Vec::new()
    }
}

pub type LiftingStructure = Arc<dyn Lifting>;

impl fmt::Debug for dyn Lifting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lifting({})", self.name())
    }
}

fn check_problem(f: &GroupoidMap, cyl: &Cylinder, y: &GroupoidMap, p: &GroupoidMap) -> Result<()> {
    let z = y.dom();
    if !same_groupoid(&cyl.apply(z).apex, p.dom()) {
        return Err(Error::Invalid("path is not defined on the cylinder of the context".into()));
    }
    if y.then(f)? != cyl.delta(0, z).then(p)? {
        return Err(Error::NonCommuting("the start of the path is not the image of the point".into()));
    }
    Ok(())
}

/// All `y : Z → Y` with `y;f = base`.
pub fn maps_over(f: &GroupoidMap, base: &GroupoidMap, guard: &Guard) -> Result<Vec<GroupoidMap>> {
    let z = base.dom();
    guard.check(z, "context")?;
    let domain = Domain::full(z);
    let mut out = Vec::new();
    Search::new(&domain, f.dom())
        .objects(|o, c| f.obj(c) == base.obj(o))
        .morphisms(|m, n| f.mor(n) == base.mor(m))
        .run(&mut |obj, mor| {
            out.push(GroupoidMap::new(z.clone(), f.dom().clone(), obj.to_vec(), mor.to_vec()));
            std::ops::ControlFlow::Continue(())
        });
    Ok(out)
}

/// Every lifting problem `(y, p)` over the context `z`.
pub fn lifting_problems(
    f: &GroupoidMap,
    cyl: &Cylinder,
    z: &Gpd,
    guard: &Guard,
) -> Result<Vec<(GroupoidMap, GroupoidMap)>> {
    let iz = cyl.apply(z).apex;
    let d0 = cyl.delta(0, z);
    let mut out = Vec::new();
    for p in enumerate_maps(&iz, f.cod(), guard)? {
        let start = d0.then(&p)?;
        for y in maps_over(f, &start, guard)? {
            out.push((y, p.clone()));
        }
    }
    Ok(out)
}

fn describe_problem(y: &GroupoidMap, p: &GroupoidMap) -> String {
    format!("y = {}, p = {}", y.describe(), p.describe())
}

/// Whether every lifting problem over the given contexts has a filler,
/// by exhaustive search.
pub fn check_hurewicz_left(f: &GroupoidMap, cyl: &Cylinder, contexts: &[Gpd], guard: &Guard) -> Result<Verdict> {
    for z in contexts {
        let d0 = cyl.delta(0, z);
        for (y, p) in lifting_problems(f, cyl, z, guard)? {
            let top = pins_from_map(&d0, &y).expect("δ0 is injective");
            if fillers(&top, f, &p, guard, Some(1))?.is_empty() {
                return Ok(Verdict::fails(format!("no filler for {}", describe_problem(&y, &p))));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The two lifting laws `h̃;f = p` and `δ0;h̃ = y` on every problem.
pub fn check_lift_laws(l: &dyn Lifting, contexts: &[Gpd], guard: &Guard) -> Result<Verdict> {
    let cyl = l.cylinder();
    let f = l.family();
    for z in contexts {
        for (y, p) in lifting_problems(f, cyl, z, guard)? {
            let h = l.lift(&y, &p)?;
            let bad = if !h.check_functor().holds() {
                Some("lift is not a functor")
            } else if h.then(f)? != p {
                Some("lift_comp_self")
            } else if cyl.delta(0, z).then(&h)? != y {
                Some("delta0_comp_lift")
            } else {
                None
            };
            if let Some(law) = bad {
                return Ok(Verdict::fails(format!("{law} fails for {}", describe_problem(&y, &p))));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The first isomorphism of the base with a lift of its source but no lift
/// of itself, as `(iso, point)`.
pub fn unliftable_iso(f: &GroupoidMap) -> Option<(Mor, Obj)> {
    let (y, x) = (f.dom(), f.cod());
    for pt in 0..y.num_objects() {
        for &xi in x.outgoing(f.obj(pt)) {
            if !y.outgoing(pt).iter().any(|&g| f.mor(g) == xi) {
                return Some((xi, pt));
            }
        }
    }
    None
}

pub fn is_isofibration(f: &GroupoidMap) -> bool {
    unliftable_iso(f).is_none()
}

/// Transport along chosen lifts of isomorphisms. Requires every pair of
/// interval objects to be joined by a unique morphism.
pub struct TransportLift {
    family: GroupoidMap,
    cylinder: Cylinder,
    chosen: HashMap<(Obj, Mor), Mor>,
    /// The unique interval morphism from the 0-end to each object.
    from_start: Vec<Mor>,
    warnings: Vec<String>,
}

impl TransportLift {
    pub fn new(f: &GroupoidMap, cyl: &Cylinder) -> Result<Self> {
        let interval = &cyl.interval;
        if !interval.is_indiscrete() {
            return Err(Error::Unsupported(format!(
                "transport lifts need an interval with unique morphisms; {} has more",
                interval.name
            )));
        }
        if let Some((iso, point)) = unliftable_iso(f) {
            return Err(Error::NotIsofibration {
                iso: f.cod().morphism_name(iso).to_string(),
                point: f.dom().object_name(point).to_string(),
            });
        }
        let (y, x) = (f.dom(), f.cod());
        let mut chosen = HashMap::new();
        let mut warnings = Vec::new();
        for pt in 0..y.num_objects() {
            for &xi in x.outgoing(f.obj(pt)) {
                let lift = if x.is_identity(xi) {
                    y.id(pt)
                } else {
                    let cands: Vec<Mor> = y.outgoing(pt).iter().copied().filter(|&g| f.mor(g) == xi).collect();
                    if cands.len() > 1 {
                        warnings.push(format!(
                            "{} lifts of {} at {}; chose {}",
                            cands.len(),
                            x.morphism_name(xi),
                            y.object_name(pt),
                            y.morphism_name(cands[0])
                        ));
                    }
                    cands[0]
                };
                chosen.insert((pt, xi), lift);
            }
        }
        let c = &interval.carrier;
        let d0 = interval.endpoint(0);
        let from_start = (0..c.num_objects()).map(|i| c.hom(d0, i)[0]).collect();
        Ok(Self {
            family: f.clone(),
            cylinder: cyl.clone(),
            chosen,
            from_start,
            warnings,
        })
    }
}

impl Lifting for TransportLift {
    fn family(&self) -> &GroupoidMap {
        &self.family
    }

    fn cylinder(&self) -> &Cylinder {
        &self.cylinder
    }

    fn name(&self) -> String {
        "transport".into()
    }

    fn warnings(&self) -> Vec<String> {
        self.warnings.clone()
    }

    fn lift(&self, y: &GroupoidMap, p: &GroupoidMap) -> Result<GroupoidMap> {
        check_problem(&self.family, &self.cylinder, y, p)?;
        let z = y.dom();
        let iz = self.cylinder.apply(z);
        let tot = self.family.dom();
        // L(γ, i): the chosen lift at y(γ) of p(id_γ, d0 → i).
        let l = |g: Obj, i: Obj| -> Mor {
            let xi = p.mor(iz.mor(z.id(g), self.from_start[i]));
            self.chosen[&(y.obj(g), xi)]
        };
        Ok(GroupoidMap::from_fns(
            iz.apex.clone(),
            tot.clone(),
            |o| {
                let (g, i) = iz.split_obj(o);
                tot.tgt(l(g, i))
            },
            |m| {
                let (g, _) = iz.split_mor(m);
                let (s, i) = iz.split_obj(iz.apex.src(m));
                let (t, j) = iz.split_obj(iz.apex.tgt(m));
                debug_assert_eq!((z.src(g), z.tgt(g)), (s, t));
                tot.then(tot.then(tot.inv(l(s, i)), y.mor(g)), l(t, j))
            },
        ))
    }
}

pub fn lift_from_isofibration(f: &GroupoidMap, cyl: &Cylinder) -> Result<LiftingStructure> {
    Ok(Arc::new(TransportLift::new(f, cyl)?))
}

/// The lexicographically first filler found by search.
pub struct SearchLift {
    family: GroupoidMap,
    cylinder: Cylinder,
    guard: Guard,
}

impl SearchLift {
    pub fn new(f: &GroupoidMap, cyl: &Cylinder, guard: &Guard) -> Self {
        Self {
            family: f.clone(),
            cylinder: cyl.clone(),
            guard: *guard,
        }
    }
}

impl Lifting for SearchLift {
    fn family(&self) -> &GroupoidMap {
        &self.family
    }

    fn cylinder(&self) -> &Cylinder {
        &self.cylinder
    }

    fn name(&self) -> String {
        "search".into()
    }

    fn lift(&self, y: &GroupoidMap, p: &GroupoidMap) -> Result<GroupoidMap> {
        check_problem(&self.family, &self.cylinder, y, p)?;
        let top = pins_from_map(&self.cylinder.delta(0, y.dom()), y).expect("δ0 is injective");
        fillers(&top, &self.family, p, &self.guard, Some(1))?
            .into_iter()
            .next()
            .ok_or_else(|| Error::MissingWitness(format!("no filler for {}", describe_problem(y, p))))
    }
}

/// Lifts for the left side of a pullback square, obtained from lifts for
/// its right side.
pub struct PulledBackLift {
    square: VerifiedPullback,
    inner: LiftingStructure,
}

impl PulledBackLift {
    pub fn new(square: VerifiedPullback, inner: LiftingStructure) -> Result<Self> {
        if square.square.right != *inner.family() {
            return Err(Error::CospanMismatch("lift is for a different map".into()));
        }
        Ok(Self { square, inner })
    }
}

impl Lifting for PulledBackLift {
    fn family(&self) -> &GroupoidMap {
        &self.square.square.left
    }

    fn cylinder(&self) -> &Cylinder {
        self.inner.cylinder()
    }

    fn name(&self) -> String {
        format!("pullback of {}", self.inner.name())
    }

    fn warnings(&self) -> Vec<String> {
        self.inner.warnings()
    }

    fn lift(&self, y: &GroupoidMap, p: &GroupoidMap) -> Result<GroupoidMap> {
        let sq = &self.square.square;
        let h = self.inner.lift(&y.then(&sq.top)?, &p.then(&sq.bottom)?)?;
        self.square.mediate(p, &h)
    }
}

/// Conjugates a lift by the first non-identity vertical morphism at every
/// point off the 0-end. Still a lift, still uniform, but lifts constant
/// paths to non-constant ones whenever a fiber has non-trivial morphisms.
pub struct PerturbedLift {
    inner: LiftingStructure,
    /// Only perturb over contexts with this many objects.
    only_size: Option<usize>,
}

impl PerturbedLift {
    pub fn new(inner: LiftingStructure) -> Self {
        Self { inner, only_size: None }
    }

    /// A perturbation applied only over contexts with exactly `n` objects,
    /// which breaks uniformity.
    pub fn ad_hoc(inner: LiftingStructure, n: usize) -> Self {
        Self {
            inner,
            only_size: Some(n),
        }
    }
}

impl Lifting for PerturbedLift {
    fn family(&self) -> &GroupoidMap {
        self.inner.family()
    }

    fn cylinder(&self) -> &Cylinder {
        self.inner.cylinder()
    }

    fn name(&self) -> String {
        match self.only_size {
            None => format!("perturbed {}", self.inner.name()),
            Some(n) => format!("ad hoc ({n}) {}", self.inner.name()),
        }
    }

    fn lift(&self, y: &GroupoidMap, p: &GroupoidMap) -> Result<GroupoidMap> {
        let h = self.inner.lift(y, p)?;
        let z = y.dom();
        if self.only_size.is_some_and(|n| z.num_objects() != n) {
            return Ok(h);
        }
        let f = self.family();
        let (tot, base) = (f.dom(), f.cod());
        let iz = self.cylinder().apply(z);
        let d0 = self.cylinder().interval.endpoint(0);
        let v: Vec<Mor> = (0..iz.apex.num_objects())
            .map(|o| {
                let a = h.obj(o);
                if iz.split_obj(o).1 == d0 {
                    return tot.id(a);
                }
                tot.outgoing(a)
                    .iter()
                    .copied()
                    .find(|&g| !tot.is_identity(g) && base.is_identity(f.mor(g)))
                    .unwrap_or(tot.id(a))
            })
            .collect();
        Ok(GroupoidMap::from_fns(
            iz.apex.clone(),
            tot.clone(),
            |o| tot.tgt(v[o]),
            |m| {
                let (s, t) = (iz.apex.src(m), iz.apex.tgt(m));
                tot.then(tot.then(tot.inv(v[s]), h.mor(m)), v[t])
            },
        ))
    }
}

/// Whether lifting a constant path gives the constant path.
pub fn check_normal(l: &dyn Lifting, contexts: &[Gpd], guard: &Guard) -> Result<Verdict> {
    let f = l.family();
    let cyl = l.cylinder();
    for z in contexts {
        let pi = cyl.pi(z);
        for y in enumerate_maps(z, f.dom(), guard)? {
            let p = pi.then(&y.then(f)?)?;
            let h = l.lift(&y, &p)?;
            if h != pi.then(&y)? {
                return Ok(Verdict::fails(format!(
                    "constant path at {} lifts to {}",
                    y.describe(),
                    h.describe()
                )));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Whether lifts commute with substitution along every `σ : Δ → Γ`.
pub fn check_uniform(l: &dyn Lifting, contexts: &[Gpd], guard: &Guard) -> Result<Verdict> {
    let f = l.family();
    let cyl = l.cylinder();
    for g in contexts {
        let problems = lifting_problems(f, cyl, g, guard)?;
        if problems.is_empty() {
            continue;
        }
        for d in contexts {
            for sigma in enumerate_maps(d, g, guard)? {
                let is = cyl.fmap(&sigma);
                for (y, p) in &problems {
                    let lhs = l.lift(&sigma.then(y)?, &is.then(p)?)?;
                    let rhs = is.then(&l.lift(y, p)?)?;
                    if lhs != rhs {
                        return Ok(Verdict::fails(format!(
                            "substituting {} into {}",
                            sigma.describe(),
                            describe_problem(y, p)
                        )));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The section form: `ℓ : X^𝐈 ×_X Y → Y^𝐈` splitting `⟨f^𝐈, ε0⟩`.
#[derive(Clone, Debug)]
pub struct SectionForm {
    pub family: GroupoidMap,
    pub base_paths: PathObject,
    pub total_paths: PathObject,
    pub corner: PullbackSquare,
    pub comparison: GroupoidMap,
    pub ell: GroupoidMap,
}

impl SectionForm {
    pub fn check(&self) -> Verdict {
        match self.ell.then(&self.comparison) {
            Ok(c) if c == GroupoidMap::identity(&self.corner.apex) => Verdict::Holds,
            Ok(_) => Verdict::fails("ell is not a section of the comparison map"),
            Err(e) => Verdict::fails(e.to_string()),
        }
    }
}

fn path_spaces(f: &GroupoidMap, cyl: &Cylinder, guard: &Guard) -> Result<(PathObject, PathObject, PullbackSquare, GroupoidMap)> {
    let base_paths = pathobject(f.cod(), &cyl.interval, guard)?;
    let total_paths = pathobject(f.dom(), &cyl.interval, guard)?;
    let corner = pullback(&base_paths.eps0, f)?;
    let fi = total_paths.exp.postcompose(f, &base_paths.exp)?;
    let comparison = corner.pair(&fi, &total_paths.eps0)?;
    Ok((base_paths, total_paths, corner, comparison))
}

/// Runs the lift on the generic problem over `X^𝐈 ×_X Y`.
pub fn section_from_lifts(l: &dyn Lifting, guard: &Guard) -> Result<SectionForm> {
    let f = l.family();
    let cyl = l.cylinder();
    let (base_paths, total_paths, corner, comparison) = path_spaces(f, cyl, guard)?;
    let z = &corner.apex;
    let prod = cyl.apply(z);
    let p = base_paths
        .exp
        .uncurry(&corner.p1(), &prod)
        .to_total()
        .ok_or_else(|| Error::Invalid("generic path is not total".into()))?;
    let h = l.lift(&corner.p2(), &p)?;
    let ell = total_paths.exp.curry(&PartialMap::total(&h), &prod)?;
    Ok(SectionForm {
        family: f.clone(),
        base_paths,
        total_paths,
        corner,
        comparison,
        ell,
    })
}

/// Lifts read off a section: transpose the path, pair with the point, apply
/// the section, transpose back.
pub struct SectionLift {
    section: SectionForm,
    cylinder: Cylinder,
}

impl Lifting for SectionLift {
    fn family(&self) -> &GroupoidMap {
        &self.section.family
    }

    fn cylinder(&self) -> &Cylinder {
        &self.cylinder
    }

    fn name(&self) -> String {
        "from section".into()
    }

    fn lift(&self, y: &GroupoidMap, p: &GroupoidMap) -> Result<GroupoidMap> {
        check_problem(&self.section.family, &self.cylinder, y, p)?;
        let s = &self.section;
        let prod = self.cylinder.apply(y.dom());
        let pb = s.base_paths.exp.curry(&PartialMap::total(p), &prod)?;
        let k = s.corner.pair(&pb, y)?.then(&s.ell)?;
        s.total_paths
            .exp
            .uncurry(&k, &prod)
            .to_total()
            .ok_or_else(|| Error::Invalid("lift is not total".into()))
    }
}

pub fn lifts_from_section(section: &SectionForm, cyl: &Cylinder) -> LiftingStructure {
    Arc::new(SectionLift {
        section: section.clone(),
        cylinder: cyl.clone(),
    })
}

/// Whether the comparison `Y^𝐈 → X^𝐈 ×_X Y` has any section, by search.
pub fn has_section(f: &GroupoidMap, cyl: &Cylinder, guard: &Guard) -> Result<Verdict> {
    let (_, _, corner, comparison) = path_spaces(f, cyl, guard)?;
    let top = PartialMap::unset(&corner.apex, comparison.dom());
    let found = fillers(&top, &comparison, &GroupoidMap::identity(&corner.apex), guard, Some(1))?;
    Ok(Verdict::from_bool(!found.is_empty(), || {
        "the comparison map to the pullback of evaluation at 0 has no section".into()
    }))
}

/// A connection `χ : A^𝐈 → (A^𝐈)^𝐈` over the base, with `ε_k` applied in
/// the inner coordinate.
#[derive(Clone, Debug)]
pub struct Connection {
    pub cylinder: Cylinder,
    pub paths: PathObject,
    pub squares: PathObject,
    pub chi: GroupoidMap,
    /// The filler `χ̃ : A^𝐈 × 𝐈 → A^𝐈` transposing to `χ`.
    pub chi_flat: GroupoidMap,
    pub inner_eps0: GroupoidMap,
    pub inner_eps1: GroupoidMap,
}

impl Connection {
    /// The connection read as a homotopy `A^𝐈 × 𝐈 → A^𝐈` from `ρε0` to the
    /// identity: at time `j` it is the path `i ↦ χ(p)(i, j)`.
    pub fn vertical(&self) -> Result<GroupoidMap> {
        let cyl = &self.cylinder;
        let z = self.paths.carrier();
        let cube = cyl.apply(&cyl.apply(z).apex);
        let b = self
            .paths
            .exp
            .uncurry(&self.chi_flat, &cube)
            .to_total()
            .ok_or_else(|| Error::Invalid("connection square is not total".into()))?;
        let swapped = cyl.symm(z).then(&b)?;
        self.paths.exp.curry(&PartialMap::total(&swapped), &cube)
    }

    /// `ε1χ = id`, `ε0χ = ρε0` and `χρ = ρρ`.
    pub fn check_laws(&self) -> Vec<(&'static str, Verdict)> {
        let eq = |a: Result<GroupoidMap>, b: Result<GroupoidMap>, what: &str| -> Verdict {
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => Verdict::Holds,
                (Ok(a), Ok(b)) => Verdict::fails(format!("{what}: {} vs {}", a.describe(), b.describe())),
                (Err(e), _) | (_, Err(e)) => Verdict::fails(format!("{what}: {e}")),
            }
        };
        let p = &self.paths;
        vec![
            (
                "eps1_chi",
                eq(
                    self.chi.then(&self.inner_eps1),
                    Ok(GroupoidMap::identity(p.carrier())),
                    "eps1 after chi",
                ),
            ),
            (
                "eps0_chi",
                eq(self.chi.then(&self.inner_eps0), p.eps0.then(&p.rho), "eps0 after chi"),
            ),
            (
                "chi_rho",
                eq(p.rho.then(&self.chi), p.rho.then(&self.squares.rho), "chi after rho"),
            ),
        ]
    }
}

/// Builds the connection of a family `A → X` from a lift against its path
/// object's endpoint map `ε : A^𝐈 → A×_X A`, by filling the box with sides
/// `ρp0`, `ρp0` and `p` for every path `p`.
pub fn build_connection(fam: &GroupoidMap, lift_eps: &dyn Lifting, guard: &Guard) -> Result<Connection> {
    let cyl = lift_eps.cylinder();
    let paths = relative_pathobject(fam, &cyl.interval, guard)?;
    if *lift_eps.family() != paths.eps {
        return Err(Error::MissingWitness("lift is not for the endpoint map of the path object".into()));
    }
    let z = paths.carrier().clone();
    let prod = cyl.apply(&z);
    let eval = paths.exp.eval(&prod);
    let y = paths.eps0.then(&paths.rho)?;
    let p = paths.ends.pair(&prod.p1().then(&paths.eps0)?, &eval)?;
    let chi_flat = lift_eps.lift(&y, &p)?;
    let squares = relative_pathobject(paths.proj(), &cyl.interval, guard)?;
    let chi = squares.exp.curry(&PartialMap::total(&chi_flat), &prod)?;
    let inner_eps0 = squares.exp.postcompose(&paths.eps0, &paths.exp)?;
    let inner_eps1 = squares.exp.postcompose(&paths.eps1, &paths.exp)?;
    Ok(Connection {
        cylinder: cyl.clone(),
        paths,
        squares,
        chi,
        chi_flat,
        inner_eps0,
        inner_eps1,
    })
}
