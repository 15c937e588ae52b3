//! Intervals, the cylinder functor `Γ ↦ Γ×𝐈`, and path objects obtained by
//! exponentiating by the interval.

use crate::error::{Error, Result};
use crate::exponential::Exponential;
use crate::groupoid::{builtin, same_groupoid, Gpd, GroupoidMap, Obj};
use crate::limits::{product, pullback, Product, PullbackSquare};
use crate::search::Guard;
use crate::subcomplex::{Face, Subcomplex};
use crate::verdict::{self, Verdict};

/// A bipointed groupoid `d0, d1 : 1 ⇉ 𝐈`.
#[derive(Clone, Debug)]
pub struct IntervalObject {
    pub name: String,
    pub carrier: Gpd,
    pub d0: GroupoidMap,
    pub d1: GroupoidMap,
    pub collapse: GroupoidMap,
}

impl IntervalObject {
    pub fn custom(name: &str, carrier: Gpd, d0: Obj, d1: Obj) -> Result<Self> {
        if d0 >= carrier.num_objects() || d1 >= carrier.num_objects() {
            return Err(Error::Invalid(format!("interval {name}: endpoint out of range")));
        }
        let one = builtin::terminal();
        Ok(Self {
            name: name.to_string(),
            d0: GroupoidMap::constant(&one, &carrier, d0),
            d1: GroupoidMap::constant(&one, &carrier, d1),
            collapse: GroupoidMap::to_terminal(&carrier, &one),
            carrier,
        })
    }

    /// The point, with both endpoints equal.
    pub fn trivial() -> Self {
        Self::custom("trivial", builtin::terminal(), 0, 0).unwrap()
    }

    /// The walking isomorphism `0 ≅ 1`.
    pub fn walking_iso() -> Self {
        Self::custom("walking-iso", builtin::walking_iso(), 0, 1).unwrap()
    }

    pub fn endpoint(&self, i: usize) -> Obj {
        if i == 0 {
            self.d0.obj(0)
        } else {
            self.d1.obj(0)
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.endpoint(0) == self.endpoint(1)
    }

    /// Every pair of objects joined by exactly one morphism.
    pub fn is_indiscrete(&self) -> bool {
        let c = &self.carrier;
        (0..c.num_objects()).all(|a| (0..c.num_objects()).all(|b| c.hom(a, b).len() == 1))
    }

    /// The subcomplex of one endpoint.
    pub fn end(&self, i: usize) -> Subcomplex {
        let e = self.endpoint(i);
        let c = &self.carrier;
        Subcomplex {
            ambient: c.clone(),
            faces: vec![Face::from_predicates(c, |o| o == e, |m| m == c.id(e))],
        }
    }

    pub fn check(&self) -> Verdict {
        let one = builtin::terminal();
        let id = GroupoidMap::identity(&one);
        verdict::all([
            self.d0.check_functor().context("d0"),
            self.d1.check_functor().context("d1"),
            Verdict::from_bool(self.d0.then(&self.collapse).ok() == Some(id.clone()), || {
                "collapse after d0 is not the identity".into()
            }),
            Verdict::from_bool(self.d1.then(&self.collapse).ok() == Some(id), || {
                "collapse after d1 is not the identity".into()
            }),
        ])
    }
}

/// The cylinder functor `Γ ↦ Γ×𝐈` with its structure maps.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub interval: IntervalObject,
}

impl Cylinder {
    pub fn new(interval: IntervalObject) -> Self {
        Self { interval }
    }

    /// `IΓ = Γ×𝐈`.
    pub fn apply(&self, g: &Gpd) -> Product {
        product(g, &self.interval.carrier)
    }

    /// `δi : Γ → IΓ`, `γ ↦ (γ, di)`.
    pub fn delta(&self, i: usize, g: &Gpd) -> GroupoidMap {
        let p = self.apply(g);
        let e = self.interval.endpoint(i);
        let ie = self.interval.carrier.id(e);
        GroupoidMap::from_fns(g.clone(), p.apex.clone(), |o| p.obj(o, e), |m| p.mor(m, ie))
    }

    /// `π : IΓ → Γ`.
    pub fn pi(&self, g: &Gpd) -> GroupoidMap {
        self.apply(g).p1()
    }

    /// `I(f) : IΓ → IΔ`.
    pub fn fmap(&self, f: &GroupoidMap) -> GroupoidMap {
        let src = self.apply(f.dom());
        let tgt = self.apply(f.cod());
        src.map(f, &GroupoidMap::identity(&self.interval.carrier), &tgt)
    }

    /// `symm : IIΓ → IIΓ`, exchanging the two interval coordinates.
    pub fn symm(&self, g: &Gpd) -> GroupoidMap {
        let inner = self.apply(g);
        let outer = self.apply(&inner.apex);
        GroupoidMap::from_fns(
            outer.apex.clone(),
            outer.apex.clone(),
            |o| {
                let (gi, j) = outer.split_obj(o);
                let (x, i) = inner.split_obj(gi);
                outer.obj(inner.obj(x, j), i)
            },
            |m| {
                let (gi, j) = outer.split_mor(m);
                let (x, i) = inner.split_mor(gi);
                outer.mor(inner.mor(x, j), i)
            },
        )
    }

    /// The five cylinder equations at each context, as named verdicts.
    pub fn check_laws(&self, contexts: &[Gpd]) -> Vec<(&'static str, Verdict)> {
        let eq = |a: Result<GroupoidMap>, b: Result<GroupoidMap>, at: &Gpd| -> Verdict {
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => Verdict::Holds,
                (Ok(a), Ok(b)) => Verdict::fails(format!(
                    "at context with {} objects: {} vs {}",
                    at.num_objects(),
                    a.describe(),
                    b.describe()
                )),
                (Err(e), _) | (_, Err(e)) => Verdict::fails(e.to_string()),
            }
        };
        let per = |f: &dyn Fn(&Gpd) -> Verdict| verdict::all(contexts.iter().map(f));
        vec![
            (
                "delta0_pi",
                per(&|g| eq(self.delta(0, g).then(&self.pi(g)), Ok(GroupoidMap::identity(g)), g)),
            ),
            (
                "delta1_pi",
                per(&|g| eq(self.delta(1, g).then(&self.pi(g)), Ok(GroupoidMap::identity(g)), g)),
            ),
            (
                "symm_symm",
                per(&|g| {
                    let s = self.symm(g);
                    eq(s.then(&s), Ok(GroupoidMap::identity(s.dom())), g)
                }),
            ),
            (
                "whisker",
                per(&|g| {
                    let ig = self.apply(g).apex;
                    verdict::all((0..2).map(|i| {
                        eq(
                            self.delta(i, &ig).then(&self.symm(g)),
                            Ok(self.fmap(&self.delta(i, g))),
                            g,
                        )
                        .context(if i == 0 { "delta0" } else { "delta1" })
                    }))
                }),
            ),
            (
                "symm_pi_pi",
                per(&|g| {
                    let ig = self.apply(g).apex;
                    let pp = self.pi(&ig).then(&self.pi(g));
                    eq(
                        self.symm(g).then(pp.as_ref().unwrap()),
                        pp.clone(),
                        g,
                    )
                }),
            ),
        ]
    }
}

/// The factorization `A → A^𝐈 → A×_X A` of the diagonal of a family `A → X`.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub interval: IntervalObject,
    pub exp: Exponential,
    pub ends: PullbackSquare,
    pub rho: GroupoidMap,
    pub eps0: GroupoidMap,
    pub eps1: GroupoidMap,
    pub eps: GroupoidMap,
}

impl PathObject {
    pub fn family(&self) -> &GroupoidMap {
        self.exp.family().expect("path objects are relative")
    }

    pub fn carrier(&self) -> &Gpd {
        self.exp.groupoid()
    }

    /// `A^𝐈 → X`.
    pub fn proj(&self) -> &GroupoidMap {
        self.exp.proj().expect("path objects are relative")
    }

    /// The fiberwise diagonal `A → A×_X A`.
    pub fn diagonal(&self) -> GroupoidMap {
        let id = GroupoidMap::identity(self.exp.base());
        self.ends.pair(&id, &id).expect("diagonal")
    }

    pub fn check(&self) -> Verdict {
        let id = GroupoidMap::identity(self.exp.base());
        let eqv = |a: Result<GroupoidMap>, b: &GroupoidMap, what: &str| {
            Verdict::from_bool(a.as_ref().ok() == Some(b), || format!("{what} fails"))
        };
        verdict::all([
            eqv(self.rho.then(&self.eps0), &id, "eps0 after rho = id"),
            eqv(self.rho.then(&self.eps1), &id, "eps1 after rho = id"),
            eqv(self.rho.then(&self.eps), &self.diagonal(), "eps after rho = diagonal"),
            eqv(
                self.eps.then(&self.ends.p1()).and_then(|m| m.then(self.family())),
                self.proj(),
                "eps over the base",
            ),
        ])
    }
}

/// The path object of `A` over the terminal groupoid.
pub fn pathobject(a: &Gpd, interval: &IntervalObject, guard: &Guard) -> Result<PathObject> {
    relative_pathobject(&GroupoidMap::to_terminal(a, &builtin::terminal()), interval, guard)
}

/// The path object of a family `A → X` computed in the slice over `X`.
pub fn relative_pathobject(fam: &GroupoidMap, interval: &IntervalObject, guard: &Guard) -> Result<PathObject> {
    let exp = Exponential::relative(fam, &Subcomplex::full(&interval.carrier), guard)?;
    let ends = pullback(fam, fam)?;
    let rho = exp.constant();
    let eps0 = exp.eval_at(interval.endpoint(0));
    let eps1 = exp.eval_at(interval.endpoint(1));
    let eps = ends.pair(&eps0, &eps1)?;
    Ok(PathObject {
        interval: interval.clone(),
        exp,
        ends,
        rho,
        eps0,
        eps1,
        eps,
    })
}

/// The canonical comparison `f*(A^𝐈) → (f*A)^𝐈` for `f : Y → X`, checked to
/// be an isomorphism.
pub fn check_pullback_stability(
    fam: &GroupoidMap,
    f: &GroupoidMap,
    interval: &IntervalObject,
    guard: &Guard,
) -> Result<Verdict> {
    if !same_groupoid(f.cod(), fam.cod()) {
        return Err(Error::CospanMismatch("the map must land in the base of the family".into()));
    }
    let path = relative_pathobject(fam, interval, guard)?;
    let pulled_paths = pullback(f, path.proj())?;
    let fa = pullback(f, fam)?;
    let fpath = relative_pathobject(&fa.p1(), interval, guard)?;
    let missing = || Error::Invalid("comparison target missing".into());
    let cmp = GroupoidMap::try_from_fns(
        pulled_paths.apex.clone(),
        fpath.carrier().clone(),
        |o| {
            let (y, p) = pulled_paths.obj_pair(o);
            fpath
                .exp
                .find_functor(
                    |s| fa.obj_of(y, path.exp.fobj(p, s)).unwrap_or(usize::MAX),
                    |m| fa.mor_of(f.dom().id(y), path.exp.fmor(p, m)).unwrap_or(usize::MAX),
                )
                .ok_or_else(missing)
        },
        |m| {
            let (eta, n) = pulled_paths.mor_pair(m);
            let (y, p) = pulled_paths.obj_pair(pulled_paths.apex.src(m));
            let src = fpath
                .exp
                .find_functor(
                    |s| fa.obj_of(y, path.exp.fobj(p, s)).unwrap_or(usize::MAX),
                    |k| fa.mor_of(f.dom().id(y), path.exp.fmor(p, k)).unwrap_or(usize::MAX),
                )
                .ok_or_else(missing)?;
            fpath
                .exp
                .find_nat(src, |s| fa.mor_of(eta, path.exp.component(n, s)).unwrap_or(usize::MAX))
                .ok_or_else(missing)
        },
    )?;
    Ok(cmp.check_functor().and(|| {
        Verdict::from_bool(cmp.is_iso(), || {
            format!(
                "comparison is not invertible ({} vs {} objects, {} vs {} morphisms)",
                cmp.dom().num_objects(),
                cmp.cod().num_objects(),
                cmp.dom().num_morphisms(),
                cmp.cod().num_morphisms()
            )
        })
    }))
}

