//! Finite classifiers `tp : Tm → Ty` with chosen context extensions, and path
//! types making the path object of `tp` a pullback of `tp`.
//!
//! A universe built from a list of fibers is the Grothendieck construction:
//! `Ty` has the fibers as objects and their isomorphisms as morphisms, `Tm`
//! has pointed fibers `(F, x)`, and `tp` forgets the point.

use std::collections::HashMap;

use crate::cylinder::{relative_pathobject, Cylinder, IntervalObject, PathObject};
use crate::error::{Error, Result};
use crate::groupoid::{same_groupoid, FinGroupoid, Gpd, GroupoidMap, Mor, Morphism, Obj};
use crate::limits::{is_pullback, pullback, CommutingSquare, PullbackSquare, VerifiedPullback};
use crate::search::{enumerate_maps, for_each_map, Domain, Guard, Search};
use crate::verdict::{self, Verdict};

#[derive(Clone, Debug)]
struct Fibers {
    carriers: Vec<Gpd>,
    /// The isomorphism named by each morphism of `Ty`.
    isos: Vec<GroupoidMap>,
    tm_objs: Vec<(Obj, Obj)>,
    tm_obj_index: HashMap<(Obj, Obj), Obj>,
    tm_mor_index: HashMap<(Mor, Mor), Mor>,
}

#[derive(Clone, Debug)]
pub struct Universe {
    pub ty: Gpd,
    pub tm: Gpd,
    pub tp: GroupoidMap,
    fibers: Option<Fibers>,
}

/// A chosen context extension `Γ.A` with `disp : Γ.A → Γ` and `var : Γ.A → Tm`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub ty: GroupoidMap,
    pub pb: PullbackSquare,
}

impl Extension {
    pub fn ctx(&self) -> &Gpd {
        &self.pb.apex
    }

    pub fn disp(&self) -> GroupoidMap {
        self.pb.p1()
    }

    pub fn var(&self) -> GroupoidMap {
        self.pb.p2()
    }

    /// `⟨σ, t⟩ : Δ → Γ.A` for `σ;A = t;tp`.
    pub fn pair(&self, sigma: &GroupoidMap, t: &GroupoidMap) -> Result<GroupoidMap> {
        self.pb.pair(sigma, t)
    }
}

impl Universe {
    /// The universe of the given fibers and all their isomorphisms.
    pub fn groupoid(fibers: &[(String, Gpd)], guard: &Guard) -> Result<Self> {
        Self::build(fibers, false, guard)
    }

    /// The universe of the given discrete fibers, with only identities
    /// between them.
    pub fn set(fibers: &[(String, Gpd)], guard: &Guard) -> Result<Self> {
        if let Some((name, _)) = fibers.iter().find(|(_, f)| !f.is_discrete()) {
            return Err(Error::Invalid(format!("set universe fiber {name} is not discrete")));
        }
        Self::build(fibers, true, guard)
    }

    /// A universe given directly by a map; it has no fiber data, so path
    /// types cannot be derived for it.
    pub fn explicit(tp: GroupoidMap) -> Self {
        Self {
            ty: tp.cod().clone(),
            tm: tp.dom().clone(),
            tp,
            fibers: None,
        }
    }

    fn build(fibers: &[(String, Gpd)], identities_only: bool, guard: &Guard) -> Result<Self> {
        if fibers.is_empty() {
            return Err(Error::Invalid("a universe needs at least one fiber".into()));
        }
        let names: Vec<String> = fibers.iter().map(|(n, _)| n.clone()).collect();
        let carriers: Vec<Gpd> = fibers.iter().map(|(_, f)| f.clone()).collect();
        for (n, f) in fibers {
            guard.check(f, &format!("fiber {n}"))?;
        }

        let mut isos: Vec<GroupoidMap> = Vec::new();
        let mut ty_mors: Vec<Morphism> = Vec::new();
        let mut iso_index: HashMap<(Obj, Obj, Vec<Obj>, Vec<Mor>), Mor> = HashMap::new();
        for (i, fi) in carriers.iter().enumerate() {
            for (j, fj) in carriers.iter().enumerate() {
                let candidates = if identities_only {
                    if i == j {
                        vec![GroupoidMap::identity(fi)]
                    } else {
                        vec![]
                    }
                } else if fi.num_objects() == fj.num_objects() && fi.num_morphisms() == fj.num_morphisms() {
                    enumerate_maps(fi, fj, guard)?.into_iter().filter(|m| m.is_iso()).collect()
                } else {
                    vec![]
                };
                for (k, iso) in candidates.into_iter().enumerate() {
                    let is_id = i == j && iso == GroupoidMap::identity(fi);
                    let name = if is_id {
                        format!("id_{}", names[i])
                    } else {
                        format!("{}>{}#{}", names[i], names[j], k)
                    };
                    iso_index.insert((i, j, iso.obj_map().to_vec(), iso.mor_map().to_vec()), isos.len());
                    ty_mors.push(Morphism::new(name, i, j));
                    isos.push(iso);
                }
            }
        }
        let lookup = |i: Obj, j: Obj, m: &GroupoidMap| -> Mor {
            iso_index[&(i, j, m.obj_map().to_vec(), m.mor_map().to_vec())]
        };
        let ty_id: Vec<Mor> = carriers
            .iter()
            .enumerate()
            .map(|(i, f)| lookup(i, i, &GroupoidMap::identity(f)))
            .collect();
        let ty_inv: Vec<Mor> = isos
            .iter()
            .enumerate()
            .map(|(k, m)| lookup(ty_mors[k].tgt, ty_mors[k].src, &m.inverse().expect("iso")))
            .collect();
        let ty = FinGroupoid::build(names.clone(), ty_mors.clone(), ty_id, ty_inv, |g, f| {
            let c = isos[f].then(&isos[g]).expect("composable isos");
            lookup(ty_mors[f].src, ty_mors[g].tgt, &c)
        })
        .into_gpd();

        // Tm: pointed fibers.
        let mut tm_objs: Vec<(Obj, Obj)> = Vec::new();
        for (i, f) in carriers.iter().enumerate() {
            for x in 0..f.num_objects() {
                tm_objs.push((i, x));
            }
        }
        let tm_obj_index: HashMap<(Obj, Obj), Obj> =
            tm_objs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut tm_mors: Vec<(Mor, Mor)> = Vec::new();
        let mut tm_mor_meta: Vec<Morphism> = Vec::new();
        for (k, &(i, x)) in tm_objs.iter().enumerate() {
            for &phi in ty.outgoing(i) {
                let j = ty.tgt(phi);
                let fj = &carriers[j];
                for &g in fj.outgoing(isos[phi].obj(x)) {
                    tm_mor_meta.push(Morphism::new(
                        format!("({},{})", ty.morphism_name(phi), fj.morphism_name(g)),
                        k,
                        tm_obj_index[&(j, fj.tgt(g))],
                    ));
                    tm_mors.push((phi, g));
                }
            }
        }
        let tm_mor_index: HashMap<(Mor, Mor), Mor> =
            tm_mors.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let tm_names: Vec<String> = tm_objs
            .iter()
            .map(|&(i, x)| format!("({},{})", names[i], carriers[i].object_name(x)))
            .collect();
        let tm_id: Vec<Mor> = tm_objs
            .iter()
            .map(|&(i, x)| tm_mor_index[&(ty.id(i), carriers[i].id(x))])
            .collect();
        let tm_inv: Vec<Mor> = tm_mors
            .iter()
            .map(|&(phi, g)| {
                let back = ty.inv(phi);
                tm_mor_index[&(back, isos[back].mor(carriers[ty.tgt(phi)].inv(g)))]
            })
            .collect();
        let tm = FinGroupoid::build(tm_names, tm_mor_meta, tm_id, tm_inv, |h, k| {
            // (ψ,h) after (φ,g) = (ψφ, ψ(g) then h)
            let (phi, g) = tm_mors[k];
            let (psi, hh) = tm_mors[h];
            let fk = &carriers[ty.tgt(psi)];
            tm_mor_index[&(ty.then(phi, psi), fk.then(isos[psi].mor(g), hh))]
        })
        .into_gpd();
        let tp = GroupoidMap::from_fns(
            tm.clone(),
            ty.clone(),
            |o| tm_objs[o].0,
            |m| tm_mors[m].0,
        );
        Ok(Self {
            ty,
            tm,
            tp,
            fibers: Some(Fibers {
                carriers,
                isos,
                tm_objs,
                tm_obj_index,
                tm_mor_index,
            }),
        })
    }

    fn fiber_data(&self) -> Result<&Fibers> {
        self.fibers
            .as_ref()
            .ok_or_else(|| Error::Unsupported("universe has no fiber presentation".into()))
    }

    pub fn fiber(&self, a: Obj) -> Option<&Gpd> {
        self.fibers.as_ref().map(|f| &f.carriers[a])
    }

    pub fn fiber_name(&self, a: Obj) -> &str {
        self.ty.object_name(a)
    }

    /// The isomorphism of fibers named by a morphism of `Ty`.
    pub fn transport(&self, phi: Mor) -> Option<&GroupoidMap> {
        self.fibers.as_ref().map(|f| &f.isos[phi])
    }

    /// The term `(F, x)`.
    pub fn term(&self, fiber: Obj, x: Obj) -> Option<Obj> {
        self.fibers.as_ref()?.tm_obj_index.get(&(fiber, x)).copied()
    }

    /// The point of a term inside its fiber.
    pub fn point(&self, t: Obj) -> Option<Obj> {
        self.fibers.as_ref().map(|f| f.tm_objs[t].1)
    }

    /// The term morphism `(φ, g)`.
    pub fn term_mor(&self, phi: Mor, g: Mor) -> Option<Mor> {
        self.fibers.as_ref()?.tm_mor_index.get(&(phi, g)).copied()
    }

    /// The chosen extension `Γ.A` of `A : Γ → Ty`.
    pub fn ext(&self, a: &GroupoidMap) -> Result<Extension> {
        Ok(Extension {
            ty: a.clone(),
            pb: pullback(a, &self.tp)?,
        })
    }

    /// The square `(var, disp, tp, A)`.
    pub fn ext_square(&self, a: &GroupoidMap) -> Result<CommutingSquare> {
        let e = self.ext(a)?;
        CommutingSquare::new(e.var(), e.disp(), self.tp.clone(), a.clone())
    }

    /// `Γ.A` laws on every type over every context, and strict stability of
    /// extension under substitution.
    pub fn check_laws(&self, contexts: &[Gpd], guard: &Guard) -> Result<Vec<(&'static str, Verdict)>> {
        let mut disp = Verdict::Holds;
        let mut stable = Verdict::Holds;
        for g in contexts {
            for a in enumerate_maps(g, &self.ty, guard)? {
                let e = self.ext(&a)?;
                if disp.holds() {
                    disp = check_disp_pullback(&self.tp, &a, &e.disp(), &e.var())?
                        .context(&format!("A = {}", a.describe()));
                }
                if stable.holds() {
                    for d in contexts {
                        for sigma in enumerate_maps(d, g, guard)? {
                            let v = ext_stability(self, &sigma, &a)?;
                            if !v.holds() {
                                stable = v.context(&format!("sigma = {}", sigma.describe()));
                                break;
                            }
                        }
                    }
                }
            }
        }
        Ok(vec![("disp_pullback", disp), ("ext_stable", stable)])
    }
}

/// Whether `(var, disp, tp, A)` is a pullback square.
pub fn check_disp_pullback(
    tp: &GroupoidMap,
    a: &GroupoidMap,
    disp: &GroupoidMap,
    var: &GroupoidMap,
) -> Result<Verdict> {
    let sq = CommutingSquare {
        top: var.clone(),
        left: disp.clone(),
        right: tp.clone(),
        bottom: a.clone(),
    };
    if !sq.commutes() {
        return Ok(Verdict::fails("disp;A differs from var;tp"));
    }
    is_pullback(&sq)
}

/// `Δ.(σ;A)` is the pullback of `Γ.A` along `σ`: the substitution map
/// `⟨disp;σ, var⟩` forms a pullback square with `disp`.
fn ext_stability(u: &Universe, sigma: &GroupoidMap, a: &GroupoidMap) -> Result<Verdict> {
    let ea = u.ext(a)?;
    let sa = sigma.then(a)?;
    let esa = u.ext(&sa)?;
    let q = ea.pair(&esa.disp().then(sigma)?, &esa.var())?;
    let sq = CommutingSquare::new(q, esa.disp(), ea.disp(), sigma.clone())?;
    is_pullback(&sq)
}

/// A family `A → X` presented as a pullback of `tp`.
#[derive(Clone, Debug)]
pub struct Classification {
    pub family: GroupoidMap,
    pub classifier: GroupoidMap,
    pub top: GroupoidMap,
}

impl Classification {
    pub fn square(&self, u: &Universe) -> Result<CommutingSquare> {
        CommutingSquare::new(self.top.clone(), self.family.clone(), u.tp.clone(), self.classifier.clone())
    }
}

/// Searches for a classifying map of `fam`.
pub fn classify(u: &Universe, fam: &GroupoidMap, guard: &Guard) -> Result<Option<Classification>> {
    let a = fam.dom();
    let mut found = None;
    let mut err = None;
    for_each_map(fam.cod(), &u.ty, guard, |chi| {
        let pb = match pullback(&chi, &u.tp) {
            Ok(pb) => pb,
            Err(e) => {
                err = Some(e);
                return std::ops::ControlFlow::Break(());
            }
        };
        if pb.apex.num_objects() != a.num_objects() || pb.apex.num_morphisms() != a.num_morphisms() {
            return std::ops::ControlFlow::Continue(());
        }
        let p1 = pb.p1();
        let domain = Domain::full(a);
        let mut iso = None;
        Search::new(&domain, &pb.apex)
            .objects(|o, c| p1.obj(c) == fam.obj(o))
            .morphisms(|m, n| p1.mor(n) == fam.mor(m))
            .run(&mut |obj, mor| {
                let m = GroupoidMap::new(a.clone(), pb.apex.clone(), obj.to_vec(), mor.to_vec());
                if m.is_iso() {
                    iso = Some(m);
                    std::ops::ControlFlow::Break(())
                } else {
                    std::ops::ControlFlow::Continue(())
                }
            });
        match iso {
            Some(iso) => {
                let top = iso.then(&pb.p2()).expect("composable");
                found = Some(Classification {
                    family: fam.clone(),
                    classifier: chi,
                    top,
                });
                std::ops::ControlFlow::Break(())
            }
            None => std::ops::ControlFlow::Continue(()),
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(found)
}

/// Path types for a universe: `Path : Tm×_Ty Tm → Ty` and `path : Tm^𝐈 → Tm`
/// making the path object of `tp` a pullback of `tp`.
#[derive(Clone, Debug)]
pub struct PathTypes {
    pub universe: Universe,
    pub cylinder: Cylinder,
    pub paths: PathObject,
    pub path_ty: GroupoidMap,
    pub path_tm: GroupoidMap,
    pub square: VerifiedPullback,
}

/// Derives path types by classifying the path object of `tp`: each fiber
/// of `ε : Tm^𝐈 → Tm×_Ty Tm` must be discrete and isomorphic to a fiber of
/// the universe.
pub fn path_types_from_closure(u: &Universe, interval: &IntervalObject, guard: &Guard) -> Result<PathTypes> {
    let fib = u.fiber_data()?;
    let paths = relative_pathobject(&u.tp, interval, guard)?;
    let (p, e, eps) = (paths.carrier(), &paths.ends.apex, &paths.eps);

    // ε must have unique lifts of morphisms.
    let mut lift: HashMap<(Obj, Mor), Mor> = HashMap::new();
    for n in 0..p.num_morphisms() {
        if lift.insert((p.src(n), eps.mor(n)), n).is_some() {
            return Err(Error::Unsupported(
                "paths are not determined by their endpoints".into(),
            ));
        }
    }
    let mut fiber_of: Vec<Vec<Obj>> = vec![Vec::new(); e.num_objects()];
    for k in 0..p.num_objects() {
        fiber_of[eps.obj(k)].push(k);
    }
    for k in 0..p.num_objects() {
        for &m in e.outgoing(eps.obj(k)) {
            if !lift.contains_key(&(k, m)) {
                return Err(Error::Unsupported(format!(
                    "endpoint map has no lift of {} at {}",
                    e.morphism_name(m),
                    p.object_name(k)
                )));
            }
        }
    }

    // Each endpoint pair gets the first discrete fiber of matching size.
    let mut code: Vec<Obj> = Vec::with_capacity(e.num_objects());
    let mut theta: Vec<Obj> = vec![usize::MAX; p.num_objects()];
    for (pair, ks) in fiber_of.iter().enumerate() {
        let g = (0..fib.carriers.len())
            .find(|&g| fib.carriers[g].is_discrete() && fib.carriers[g].num_objects() == ks.len())
            .ok_or_else(|| Error::ClosureFailure {
                over: e.object_name(pair).to_string(),
                size: ks.len(),
            })?;
        code.push(g);
        for (pos, &k) in ks.iter().enumerate() {
            theta[k] = pos;
        }
    }
    let path_ty = GroupoidMap::try_from_fns(
        e.clone(),
        u.ty.clone(),
        |o| Ok(code[o]),
        |m| {
            let (s, t) = (e.src(m), e.tgt(m));
            let perm: Vec<Obj> = (0..fiber_of[s].len())
                .map(|pos| theta[p.tgt(lift[&(fiber_of[s][pos], m)])])
                .collect();
            u.ty.hom(code[s], code[t])
                .iter()
                .copied()
                .find(|&phi| fib.isos[phi].obj_map() == perm.as_slice())
                .ok_or_else(|| {
                    Error::ClosureFailure {
                        over: format!("transport along {}", e.morphism_name(m)),
                        size: perm.len(),
                    }
                })
        },
    )?;
    let path_tm = GroupoidMap::try_from_fns(
        p.clone(),
        u.tm.clone(),
        |k| Ok(fib.tm_obj_index[&(code[eps.obj(k)], theta[k])]),
        |n| {
            let phi = path_ty.mor(eps.mor(n));
            let g = &fib.carriers[u.ty.tgt(phi)];
            Ok(fib.tm_mor_index[&(phi, g.id(theta[p.tgt(n)]))])
        },
    )?;
    let square = VerifiedPullback::new(CommutingSquare::new(
        path_tm.clone(),
        eps.clone(),
        u.tp.clone(),
        path_ty.clone(),
    )?)?;
    Ok(PathTypes {
        universe: u.clone(),
        cylinder: Cylinder::new(interval.clone()),
        paths,
        path_ty,
        path_tm,
        square,
    })
}

impl PathTypes {
    fn endpoints(&self, a0: &GroupoidMap, a1: &GroupoidMap) -> Result<GroupoidMap> {
        self.paths.ends.pair(a0, a1)
    }

    /// `Path(a0, a1) : Γ → Ty` for terms of a common type.
    pub fn path_type(&self, a0: &GroupoidMap, a1: &GroupoidMap) -> Result<GroupoidMap> {
        self.endpoints(a0, a1)?.then(&self.path_ty)
    }

    /// `path(p) : Γ → Tm` for `p : IΓ → Tm` whose type is constant along the
    /// interval.
    pub fn path(&self, p: &GroupoidMap) -> Result<GroupoidMap> {
        let gamma = self.cylinder.pi(p.dom()).cod().clone();
        let prod = self.cylinder.apply(&gamma);
        if !same_groupoid(&prod.apex, p.dom()) {
            return Err(Error::Invalid("path expects a map out of a cylinder".into()));
        }
        let q = self.paths.exp.curry(&crate::search::PartialMap::total(p), &prod)?;
        q.then(&self.path_tm)
    }

    /// Like [`PathTypes::path`], for a map out of the cylinder on `gamma`.
    pub fn path_on(&self, gamma: &Gpd, p: &GroupoidMap) -> Result<GroupoidMap> {
        let prod = self.cylinder.apply(gamma);
        let q = self.paths.exp.curry(&crate::search::PartialMap::total(p), &prod)?;
        q.then(&self.path_tm)
    }

    /// The path `IΓ → Tm` named by a term `t` of type `Path(a0, a1)`.
    pub fn unpath(&self, a0: &GroupoidMap, a1: &GroupoidMap, t: &GroupoidMap) -> Result<GroupoidMap> {
        let q = self.unpath_transpose(a0, a1, t)?;
        let prod = self.cylinder.apply(a0.dom());
        self.paths
            .exp
            .uncurry(&q, &prod)
            .to_total()
            .ok_or_else(|| Error::Invalid("path is not total".into()))
    }

    /// `Γ → Tm^𝐈` mediated from the endpoints and the term.
    pub fn unpath_transpose(&self, a0: &GroupoidMap, a1: &GroupoidMap, t: &GroupoidMap) -> Result<GroupoidMap> {
        self.square.mediate(&self.endpoints(a0, a1)?, t)
    }

    /// The path-type equations over each context: typing of `path`, the
    /// endpoints of `unpath`, both round trips, and stability of `Path` and
    /// `path` under substitution.
    pub fn check_laws(&self, contexts: &[Gpd], guard: &Guard) -> Result<Vec<(&'static str, Verdict)>> {
        let cyl = &self.cylinder;
        let tp = &self.universe.tp;
        let mut results: Vec<(&'static str, Verdict)> = vec![
            ("path_tp", Verdict::Holds),
            ("delta0_unpath", Verdict::Holds),
            ("delta1_unpath", Verdict::Holds),
            ("unpath_path", Verdict::Holds),
            ("path_unpath", Verdict::Holds),
            ("Path_comp", Verdict::Holds),
            ("path_comp", Verdict::Holds),
        ];
        let mut record = |i: usize, v: Verdict| {
            if results[i].1.holds() && !v.holds() {
                results[i].1 = v;
            }
        };
        let eq = |a: &Result<GroupoidMap>, b: &GroupoidMap, what: &str| -> Verdict {
            match a {
                Ok(a) if a == b => Verdict::Holds,
                Ok(a) => Verdict::fails(format!("{what}: {} vs {}", a.describe(), b.describe())),
                Err(e) => Verdict::fails(format!("{what}: {e}")),
            }
        };
        for g in contexts {
            let ig = cyl.apply(g).apex;
            // Paths: maps out of the cylinder whose type is constant.
            for p in enumerate_maps(&ig, &self.universe.tm, guard)? {
                let a0 = cyl.delta(0, g).then(&p)?;
                let a1 = cyl.delta(1, g).then(&p)?;
                let ty = a0.then(tp)?;
                if cyl.pi(g).then(&ty)? != p.then(tp)? {
                    continue;
                }
                let t = self.path_on(g, &p)?;
                record(0, eq(&t.then(tp), &self.path_type(&a0, &a1)?, "path_tp"));
                record(3, eq(&self.unpath(&a0, &a1, &t), &p, "unpath_path"));
                for d in contexts {
                    for sigma in enumerate_maps(d, g, guard)? {
                        let lhs = sigma.then(&t);
                        let rhs = self.path_on(d, &cyl.fmap(&sigma).then(&p)?)?;
                        record(6, eq(&lhs, &rhs, "path_comp"));
                        let lhs = sigma.then(&self.path_type(&a0, &a1)?);
                        let rhs = self.path_type(&sigma.then(&a0)?, &sigma.then(&a1)?)?;
                        record(5, eq(&lhs, &rhs, "Path_comp"));
                    }
                }
            }
            // Terms of path types.
            let tms = enumerate_maps(g, &self.universe.tm, guard)?;
            for a0 in &tms {
                for a1 in &tms {
                    let Ok(pt) = self.path_type(a0, a1) else { continue };
                    for t in &tms {
                        if t.then(tp)? != pt {
                            continue;
                        }
                        let p = self.unpath(a0, a1, t);
                        if let Ok(p) = &p {
                            record(1, eq(&cyl.delta(0, g).then(p), a0, "delta0_unpath"));
                            record(2, eq(&cyl.delta(1, g).then(p), a1, "delta1_unpath"));
                            record(4, eq(&self.path_on(g, p), t, "path_unpath"));
                        } else if let Err(e) = p {
                            record(4, Verdict::fails(e.to_string()));
                        }
                    }
                }
            }
        }
        Ok(results)
    }

    /// Whether the defining square of the path types is a pullback.
    pub fn check_pullback(&self) -> Result<Verdict> {
        is_pullback(&self.square.square)
    }
}

/// All verdicts must hold.
pub fn all_hold(results: &[(&'static str, Verdict)]) -> Verdict {
    verdict::all(results.iter().map(|(n, v)| v.clone().context(n)))
}
