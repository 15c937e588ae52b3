//! Exhaustive backtracking search for functors, partial functors on unions
//! of faces, and diagonal fillers. This is the brute-force oracle that the
//! constructive operations are checked against.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::groupoid::{same_groupoid, FinGroupoid, Gpd, GroupoidMap, Mor, Obj};
use crate::subcomplex::Subcomplex;

pub const UNSET: usize = usize::MAX;

/// Size bounds on the domains of enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Self {
            max_objects: 8,
            max_morphisms: 64,
        }
    }
}

impl Guard {
    pub fn new(max_objects: usize, max_morphisms: usize) -> Self {
        Self {
            max_objects,
            max_morphisms,
        }
    }

    pub fn check(&self, g: &FinGroupoid, what: &str) -> Result<()> {
        if g.num_objects() > self.max_objects {
            return Err(Error::SizeBound {
                what: format!("{what} (objects)"),
                required: g.num_objects(),
                limit: self.max_objects,
            });
        }
        if g.num_morphisms() > self.max_morphisms {
            return Err(Error::SizeBound {
                what: format!("{what} (morphisms)"),
                required: g.num_morphisms(),
                limit: self.max_morphisms,
            });
        }
        Ok(())
    }
}

/// An assignment defined on part of a groupoid (`UNSET` elsewhere).
#[derive(Clone, PartialEq, Eq)]
pub struct PartialMap {
    pub dom: Gpd,
    pub cod: Gpd,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl std::fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let objs: Vec<String> = self
            .obj
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != UNSET)
            .map(|(a, &b)| format!("{}↦{}", self.dom.object_name(a), self.cod.object_name(b)))
            .collect();
        let mors: Vec<String> = self
            .mor
            .iter()
            .enumerate()
            .filter(|&(m, &n)| n != UNSET && !self.dom.is_identity(m))
            .map(|(m, &n)| format!("{}↦{}", self.dom.morphism_name(m), self.cod.morphism_name(n)))
            .collect();
        write!(f, "{{{} | {}}}", objs.join(", "), mors.join(", "))
    }
}

impl PartialMap {
    pub fn unset(dom: &Gpd, cod: &Gpd) -> Self {
        Self {
            dom: dom.clone(),
            cod: cod.clone(),
            obj: vec![UNSET; dom.num_objects()],
            mor: vec![UNSET; dom.num_morphisms()],
        }
    }

    pub fn total(f: &GroupoidMap) -> Self {
        Self {
            dom: f.dom().clone(),
            cod: f.cod().clone(),
            obj: f.obj_map().to_vec(),
            mor: f.mor_map().to_vec(),
        }
    }

    /// Restriction of a total map to a subcomplex of its domain.
    pub fn restrict(f: &GroupoidMap, sub: &Subcomplex) -> Self {
        let mut p = Self::unset(f.dom(), f.cod());
        for o in sub.objects() {
            p.obj[o] = f.obj(o);
        }
        for m in sub.morphisms() {
            p.mor[m] = f.mor(m);
        }
        p
    }

    pub fn get_obj(&self, a: Obj) -> Option<Obj> {
        (self.obj[a] != UNSET).then_some(self.obj[a])
    }

    pub fn get_mor(&self, m: Mor) -> Option<Mor> {
        (self.mor[m] != UNSET).then_some(self.mor[m])
    }

    pub fn to_total(&self) -> Option<GroupoidMap> {
        if self.obj.contains(&UNSET) || self.mor.contains(&UNSET) {
            return None;
        }
        Some(GroupoidMap::new(
            self.dom.clone(),
            self.cod.clone(),
            self.obj.clone(),
            self.mor.clone(),
        ))
    }

    /// Post-composition with a total map.
    pub fn then(&self, g: &GroupoidMap) -> PartialMap {
        debug_assert!(same_groupoid(&self.cod, g.dom()));
        PartialMap {
            dom: self.dom.clone(),
            cod: g.cod().clone(),
            obj: self.obj.iter().map(|&b| if b == UNSET { UNSET } else { g.obj(b) }).collect(),
            mor: self.mor.iter().map(|&n| if n == UNSET { UNSET } else { g.mor(n) }).collect(),
        }
    }

    /// Pre-composition with a total map landing where this map is defined.
    pub fn after(&self, f: &GroupoidMap) -> Option<PartialMap> {
        let obj: Vec<usize> = f.obj_map().iter().map(|&a| self.obj[a]).collect();
        let mor: Vec<usize> = f.mor_map().iter().map(|&m| self.mor[m]).collect();
        if obj.contains(&UNSET) || mor.contains(&UNSET) {
            return None;
        }
        Some(PartialMap {
            dom: f.dom().clone(),
            cod: self.cod.clone(),
            obj,
            mor,
        })
    }

    /// Whether the map is defined on exactly the subcomplex and functorial on
    /// each of its faces.
    pub fn is_map_on(&self, sub: &Subcomplex) -> bool {
        let objs = sub.objects();
        let mors = sub.morphisms();
        let c = &self.cod;
        for (o, &b) in self.obj.iter().enumerate() {
            if (b != UNSET) != objs.contains(&o) {
                return false;
            }
        }
        for (m, &n) in self.mor.iter().enumerate() {
            if (n != UNSET) != mors.contains(&m) {
                return false;
            }
            if n != UNSET
                && (c.src(n) != self.obj[self.dom.src(m)] || c.tgt(n) != self.obj[self.dom.tgt(m)])
            {
                return false;
            }
        }
        for o in objs {
            if self.mor[self.dom.id(o)] != c.id(self.obj[o]) {
                return false;
            }
        }
        sub.constraints()
            .into_iter()
            .all(|(g, f, gf)| c.comp(self.mor[g], self.mor[f]) == Some(self.mor[gf]))
    }
}

/// The part of a groupoid a search assigns, with the composition
/// constraints to respect.
#[derive(Clone, Debug)]
pub struct Domain {
    pub ambient: Gpd,
    pub objects: Vec<Obj>,
    pub morphisms: Vec<Mor>,
    pub constraints: Vec<(Mor, Mor, Mor)>,
}

impl Domain {
    pub fn full(g: &Gpd) -> Self {
        Self {
            ambient: g.clone(),
            objects: (0..g.num_objects()).collect(),
            morphisms: (0..g.num_morphisms()).collect(),
            constraints: g
                .composable()
                .filter(|&(g2, f, _)| !g.is_identity(g2) && !g.is_identity(f))
                .collect(),
        }
    }

    pub fn of(sub: &Subcomplex) -> Self {
        Self {
            ambient: sub.ambient.clone(),
            objects: sub.objects().into_iter().collect(),
            morphisms: sub.morphisms().into_iter().collect(),
            constraints: sub
                .constraints()
                .into_iter()
                .filter(|&(g2, f, _)| !sub.ambient.is_identity(g2) && !sub.ambient.is_identity(f))
                .collect(),
        }
    }
}

enum Step {
    Obj(Obj),
    Mor(Mor, Vec<(Mor, Mor, Mor)>),
}

/// Backtracking enumeration of assignments `domain → cod` that are
/// functorial on the domain's constraints and admitted by the filters.
/// Enumeration order is lexicographic in (objects, morphisms) index order.
pub struct Search<'a> {
    domain: &'a Domain,
    cod: &'a Gpd,
    obj_ok: Box<dyn Fn(Obj, Obj) -> bool + 'a>,
    mor_ok: Box<dyn Fn(Mor, Mor) -> bool + 'a>,
}

impl<'a> Search<'a> {
    pub fn new(domain: &'a Domain, cod: &'a Gpd) -> Self {
        Self {
            domain,
            cod,
            obj_ok: Box::new(|_, _| true),
            mor_ok: Box::new(|_, _| true),
        }
    }

    pub fn objects(mut self, f: impl Fn(Obj, Obj) -> bool + 'a) -> Self {
        self.obj_ok = Box::new(f);
        self
    }

    pub fn morphisms(mut self, f: impl Fn(Mor, Mor) -> bool + 'a) -> Self {
        self.mor_ok = Box::new(f);
        self
    }

    fn plan(&self) -> Vec<Step> {
        let amb = &self.domain.ambient;
        let mut placed_obj = vec![false; amb.num_objects()];
        let mut placed_mor = vec![false; amb.num_morphisms()];
        let mut order = Vec::new();
        for &o in &self.domain.objects {
            placed_obj[o] = true;
            order.push(Step::Obj(o));
            for &m in &self.domain.morphisms {
                if !placed_mor[m] && placed_obj[amb.src(m)] && placed_obj[amb.tgt(m)] {
                    placed_mor[m] = true;
                    order.push(Step::Mor(m, Vec::new()));
                }
            }
        }
        // Attach each constraint to the step completing it.
        let mut pos = vec![usize::MAX; amb.num_morphisms()];
        for (i, s) in order.iter().enumerate() {
            if let Step::Mor(m, _) = s {
                pos[*m] = i;
            }
        }
        for &(g, f, gf) in &self.domain.constraints {
            let last = pos[g].max(pos[f]).max(pos[gf]);
            if let Step::Mor(_, cs) = &mut order[last] {
                cs.push((g, f, gf));
            }
        }
        order
    }

    pub fn run(&self, visit: &mut dyn FnMut(&[usize], &[usize]) -> ControlFlow<()>) {
        let amb = &self.domain.ambient;
        let plan = self.plan();
        let mut obj = vec![UNSET; amb.num_objects()];
        let mut mor = vec![UNSET; amb.num_morphisms()];
        let _ = self.rec(&plan, 0, &mut obj, &mut mor, visit);
    }

    fn rec(
        &self,
        plan: &[Step],
        i: usize,
        obj: &mut Vec<usize>,
        mor: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == plan.len() {
            return visit(obj, mor);
        }
        let amb = &self.domain.ambient;
        let cod = self.cod;
        match &plan[i] {
            Step::Obj(o) => {
                for c in 0..cod.num_objects() {
                    if (self.obj_ok)(*o, c) {
                        obj[*o] = c;
                        self.rec(plan, i + 1, obj, mor, visit)?;
                    }
                }
                obj[*o] = UNSET;
            }
            Step::Mor(m, cs) => {
                let (s, t) = (obj[amb.src(*m)], obj[amb.tgt(*m)]);
                let forced = if amb.is_identity(*m) {
                    Some(cod.id(s))
                } else if mor[amb.inv(*m)] != UNSET {
                    Some(cod.inv(mor[amb.inv(*m)]))
                } else {
                    None
                };
                let single;
                let cands: &[Mor] = match forced {
                    Some(n) => {
                        single = [n];
                        &single
                    }
                    None => cod.hom(s, t),
                };
                for &n in cands {
                    if cod.src(n) != s || cod.tgt(n) != t || !(self.mor_ok)(*m, n) {
                        continue;
                    }
                    mor[*m] = n;
                    if cs.iter().all(|&(g, f, gf)| cod.comp(mor[g], mor[f]) == Some(mor[gf])) {
                        self.rec(plan, i + 1, obj, mor, visit)?;
                    }
                }
                mor[*m] = UNSET;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Visits every functor `a → b` once, in deterministic order.
pub fn for_each_map(
    a: &Gpd,
    b: &Gpd,
    guard: &Guard,
    mut visit: impl FnMut(GroupoidMap) -> ControlFlow<()>,
) -> Result<()> {
    guard.check(a, "enumeration domain")?;
    let dom = Domain::full(a);
    Search::new(&dom, b).run(&mut |o, m| {
        visit(GroupoidMap::new(a.clone(), b.clone(), o.to_vec(), m.to_vec()))
    });
    Ok(())
}

/// Every functor `a → b` exactly once.
pub fn enumerate_maps(a: &Gpd, b: &Gpd, guard: &Guard) -> Result<Vec<GroupoidMap>> {
    let mut out = Vec::new();
    for_each_map(a, b, guard, |f| {
        out.push(f);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Every map out of a union of faces (compatible families of functors).
pub fn enumerate_partial_maps(
    sub: &Subcomplex,
    cod: &Gpd,
    guard: &Guard,
    obj_ok: impl Fn(Obj, Obj) -> bool,
    mor_ok: impl Fn(Mor, Mor) -> bool,
) -> Result<Vec<PartialMap>> {
    guard.check(&sub.ambient, "enumeration domain")?;
    let dom = Domain::of(sub);
    let mut out = Vec::new();
    Search::new(&dom, cod)
        .objects(obj_ok)
        .morphisms(mor_ok)
        .run(&mut |o, m| {
            out.push(PartialMap {
                dom: sub.ambient.clone(),
                cod: cod.clone(),
                obj: o.to_vec(),
                mor: m.to_vec(),
            });
            ControlFlow::Continue(())
        });
    Ok(out)
}

/// Pins `h(i(s)) = y(s)` for a left map `i: S → D`; `None` on a conflict.
pub fn pins_from_map(i: &GroupoidMap, y: &GroupoidMap) -> Option<PartialMap> {
    let mut p = PartialMap::unset(i.cod(), y.cod());
    for s in 0..i.dom().num_objects() {
        let slot = &mut p.obj[i.obj(s)];
        if *slot != UNSET && *slot != y.obj(s) {
            return None;
        }
        *slot = y.obj(s);
    }
    for s in 0..i.dom().num_morphisms() {
        let slot = &mut p.mor[i.mor(s)];
        if *slot != UNSET && *slot != y.mor(s) {
            return None;
        }
        *slot = y.mor(s);
    }
    Some(p)
}

/// Diagonal fillers `h: D → Y` of the square with pinned values `top` (on
/// part of `D`) and bottom `x: D → X`, i.e. `h` extends `top` and `h;f = x`.
/// Stops after `limit` fillers when given.
pub fn fillers(
    top: &PartialMap,
    f: &GroupoidMap,
    bottom: &GroupoidMap,
    guard: &Guard,
    limit: Option<usize>,
) -> Result<Vec<GroupoidMap>> {
    let d = bottom.dom();
    guard.check(d, "filler domain")?;
    for (o, &v) in top.obj.iter().enumerate() {
        if v != UNSET && f.obj(v) != bottom.obj(o) {
            return Err(Error::NonCommuting(format!(
                "top and bottom disagree at {}",
                d.object_name(o)
            )));
        }
    }
    for (m, &n) in top.mor.iter().enumerate() {
        if n != UNSET && f.mor(n) != bottom.mor(m) {
            return Err(Error::NonCommuting(format!(
                "top and bottom disagree at {}",
                d.morphism_name(m)
            )));
        }
    }
    let y = f.dom();
    let dom = Domain::full(d);
    let mut out = Vec::new();
    Search::new(&dom, y)
        .objects(|o, v| match top.get_obj(o) {
            Some(p) => p == v,
            None => f.obj(v) == bottom.obj(o),
        })
        .morphisms(|m, n| match top.get_mor(m) {
            Some(p) => p == n,
            None => f.mor(n) == bottom.mor(m),
        })
        .run(&mut |o, m| {
            out.push(GroupoidMap::new(d.clone(), y.clone(), o.to_vec(), m.to_vec()));
            if limit.is_some_and(|l| out.len() >= l) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
    Ok(out)
}
