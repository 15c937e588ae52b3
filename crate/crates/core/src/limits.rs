//! Finite limits with chosen (canonical) constructions: terminal object,
//! binary products and strict pullbacks built from pairs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groupoid::{builtin, same_groupoid, FinGroupoid, Gpd, GroupoidMap, Mor, Morphism, Obj};
use crate::verdict::Verdict;

pub fn terminal() -> Gpd {
    builtin::terminal()
}

/// The chosen binary product `A×B`. Object `(a, b)` has index `a*|B| + b`,
/// morphism `(f, g)` has index `f*|mor B| + g`.
#[derive(Clone, Debug)]
pub struct Product {
    pub left: Gpd,
    pub right: Gpd,
    pub apex: Gpd,
}

pub fn product(a: &Gpd, b: &Gpd) -> Product {
    let (no_b, nm_b) = (b.num_objects(), b.num_morphisms());
    let mut objects = Vec::with_capacity(a.num_objects() * no_b);
    for x in a.objects() {
        for y in b.objects() {
            objects.push(format!("({x},{y})"));
        }
    }
    let mut morphisms = Vec::with_capacity(a.num_morphisms() * nm_b);
    for f in a.morphisms() {
        for g in b.morphisms() {
            morphisms.push(Morphism::new(
                format!("({},{})", f.name, g.name),
                f.src * no_b + g.src,
                f.tgt * no_b + g.tgt,
            ));
        }
    }
    let identity = (0..a.num_objects())
        .flat_map(|x| (0..no_b).map(move |y| (x, y)))
        .map(|(x, y)| a.id(x) * nm_b + b.id(y))
        .collect();
    let inverse = (0..a.num_morphisms() * nm_b)
        .map(|m| a.inv(m / nm_b) * nm_b + b.inv(m % nm_b))
        .collect();
    let apex = FinGroupoid::build(objects, morphisms, identity, inverse, |g, f| {
        let l = a.then(f / nm_b, g / nm_b);
        let r = b.then(f % nm_b, g % nm_b);
        l * nm_b + r
    })
    .into_gpd();
    Product {
        left: a.clone(),
        right: b.clone(),
        apex,
    }
}

impl Product {
    pub fn obj(&self, a: Obj, b: Obj) -> Obj {
        a * self.right.num_objects() + b
    }

    pub fn mor(&self, f: Mor, g: Mor) -> Mor {
        f * self.right.num_morphisms() + g
    }

    pub fn split_obj(&self, o: Obj) -> (Obj, Obj) {
        let n = self.right.num_objects();
        (o / n, o % n)
    }

    pub fn split_mor(&self, m: Mor) -> (Mor, Mor) {
        let n = self.right.num_morphisms();
        (m / n, m % n)
    }

    pub fn p1(&self) -> GroupoidMap {
        GroupoidMap::from_fns(
            self.apex.clone(),
            self.left.clone(),
            |o| self.split_obj(o).0,
            |m| self.split_mor(m).0,
        )
    }

    pub fn p2(&self) -> GroupoidMap {
        GroupoidMap::from_fns(
            self.apex.clone(),
            self.right.clone(),
            |o| self.split_obj(o).1,
            |m| self.split_mor(m).1,
        )
    }

    /// `⟨f, g⟩ : Z → A×B`.
    pub fn pair(&self, f: &GroupoidMap, g: &GroupoidMap) -> Result<GroupoidMap> {
        if !same_groupoid(f.dom(), g.dom())
            || !same_groupoid(f.cod(), &self.left)
            || !same_groupoid(g.cod(), &self.right)
        {
            return Err(Error::CospanMismatch("pairing into a product with mismatched legs".into()));
        }
        Ok(GroupoidMap::from_fns(
            f.dom().clone(),
            self.apex.clone(),
            |o| self.obj(f.obj(o), g.obj(o)),
            |m| self.mor(f.mor(m), g.mor(m)),
        ))
    }

    /// `f × g : A×B → A'×B'` into the given target product.
    pub fn map(&self, f: &GroupoidMap, g: &GroupoidMap, target: &Product) -> GroupoidMap {
        GroupoidMap::from_fns(
            self.apex.clone(),
            target.apex.clone(),
            |o| {
                let (a, b) = self.split_obj(o);
                target.obj(f.obj(a), g.obj(b))
            },
            |m| {
                let (a, b) = self.split_mor(m);
                target.mor(f.mor(a), g.mor(b))
            },
        )
    }

    /// `A×B → B×A`.
    pub fn swap(&self, target: &Product) -> GroupoidMap {
        GroupoidMap::from_fns(
            self.apex.clone(),
            target.apex.clone(),
            |o| {
                let (a, b) = self.split_obj(o);
                target.obj(b, a)
            },
            |m| {
                let (a, b) = self.split_mor(m);
                target.mor(b, a)
            },
        )
    }
}

/// The chosen pullback of a cospan `f: A → C ← B: g`: objects and morphisms
/// are pairs agreeing in `C`, ordered lexicographically (first leg, then
/// second leg).
#[derive(Clone, Debug)]
pub struct PullbackSquare {
    pub f: GroupoidMap,
    pub g: GroupoidMap,
    pub apex: Gpd,
    obj_pairs: Vec<(Obj, Obj)>,
    mor_pairs: Vec<(Mor, Mor)>,
    obj_index: HashMap<(Obj, Obj), Obj>,
    mor_index: HashMap<(Mor, Mor), Mor>,
}

pub fn pullback(f: &GroupoidMap, g: &GroupoidMap) -> Result<PullbackSquare> {
    if !same_groupoid(f.cod(), g.cod()) {
        return Err(Error::CospanMismatch(format!(
            "{} and {} have different codomains",
            f.describe(),
            g.describe()
        )));
    }
    let (a, b) = (f.dom(), g.dom());
    let mut b_over: HashMap<Obj, Vec<Obj>> = HashMap::new();
    for y in 0..b.num_objects() {
        b_over.entry(g.obj(y)).or_default().push(y);
    }
    let mut obj_pairs = Vec::new();
    for x in 0..a.num_objects() {
        if let Some(ys) = b_over.get(&f.obj(x)) {
            obj_pairs.extend(ys.iter().map(|&y| (x, y)));
        }
    }
    let mut bm_over: HashMap<Mor, Vec<Mor>> = HashMap::new();
    for n in 0..b.num_morphisms() {
        bm_over.entry(g.mor(n)).or_default().push(n);
    }
    let mut mor_pairs = Vec::new();
    for m in 0..a.num_morphisms() {
        if let Some(ns) = bm_over.get(&f.mor(m)) {
            mor_pairs.extend(ns.iter().map(|&n| (m, n)));
        }
    }
    let obj_index: HashMap<(Obj, Obj), Obj> =
        obj_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mor_index: HashMap<(Mor, Mor), Mor> =
        mor_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let objects = obj_pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", a.object_name(x), b.object_name(y)))
        .collect();
    let not_functor = || Error::NotFunctor("cospan leg does not preserve endpoints".into());
    let morphisms = mor_pairs
        .iter()
        .map(|&(m, n)| {
            Ok(Morphism::new(
                format!("({},{})", a.morphism_name(m), b.morphism_name(n)),
                *obj_index.get(&(a.src(m), b.src(n))).ok_or_else(not_functor)?,
                *obj_index.get(&(a.tgt(m), b.tgt(n))).ok_or_else(not_functor)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let identity = obj_pairs
        .iter()
        .map(|&(x, y)| mor_index[&(a.id(x), b.id(y))])
        .collect();
    let inverse = mor_pairs
        .iter()
        .map(|&(m, n)| mor_index[&(a.inv(m), b.inv(n))])
        .collect();
    let apex = FinGroupoid::build(objects, morphisms, identity, inverse, |h, k| {
        let (m1, n1) = mor_pairs[k];
        let (m2, n2) = mor_pairs[h];
        mor_index[&(a.then(m1, m2), b.then(n1, n2))]
    })
    .into_gpd();
    Ok(PullbackSquare {
        f: f.clone(),
        g: g.clone(),
        apex,
        obj_pairs,
        mor_pairs,
        obj_index,
        mor_index,
    })
}

impl PullbackSquare {
    pub fn p1(&self) -> GroupoidMap {
        GroupoidMap::from_fns(
            self.apex.clone(),
            self.f.dom().clone(),
            |o| self.obj_pairs[o].0,
            |m| self.mor_pairs[m].0,
        )
    }

    pub fn p2(&self) -> GroupoidMap {
        GroupoidMap::from_fns(
            self.apex.clone(),
            self.g.dom().clone(),
            |o| self.obj_pairs[o].1,
            |m| self.mor_pairs[m].1,
        )
    }

    pub fn obj_pair(&self, o: Obj) -> (Obj, Obj) {
        self.obj_pairs[o]
    }

    pub fn mor_pair(&self, m: Mor) -> (Mor, Mor) {
        self.mor_pairs[m]
    }

    pub fn obj_of(&self, x: Obj, y: Obj) -> Option<Obj> {
        self.obj_index.get(&(x, y)).copied()
    }

    pub fn mor_of(&self, m: Mor, n: Mor) -> Option<Mor> {
        self.mor_index.get(&(m, n)).copied()
    }

    /// The mediating map `⟨u, v⟩ : Z → apex` for a cone `u;f = v;g`.
    pub fn pair(&self, u: &GroupoidMap, v: &GroupoidMap) -> Result<GroupoidMap> {
        if !same_groupoid(u.dom(), v.dom())
            || !same_groupoid(u.cod(), self.f.dom())
            || !same_groupoid(v.cod(), self.g.dom())
        {
            return Err(Error::CospanMismatch("cone legs do not match the cospan".into()));
        }
        GroupoidMap::try_from_fns(
            u.dom().clone(),
            self.apex.clone(),
            |o| {
                self.obj_of(u.obj(o), v.obj(o)).ok_or_else(|| {
                    Error::NonCommuting(format!("cone disagrees at object {}", u.dom().object_name(o)))
                })
            },
            |m| {
                self.mor_of(u.mor(m), v.mor(m)).ok_or_else(|| {
                    Error::NonCommuting(format!("cone disagrees at morphism {}", u.dom().morphism_name(m)))
                })
            },
        )
    }

    /// The chosen pullback as a commuting square.
    pub fn square(&self) -> CommutingSquare {
        CommutingSquare {
            top: self.p2(),
            left: self.p1(),
            right: self.g.clone(),
            bottom: self.f.clone(),
        }
    }
}

/// A square
/// ```text
///   W --top--> B
///   |          |
/// left       right
///   v          v
///   A -bottom> C
/// ```
/// commuting when `left;bottom = top;right`.
#[derive(Clone, Debug)]
pub struct CommutingSquare {
    pub top: GroupoidMap,
    pub left: GroupoidMap,
    pub right: GroupoidMap,
    pub bottom: GroupoidMap,
}

impl CommutingSquare {
    pub fn new(
        top: GroupoidMap,
        left: GroupoidMap,
        right: GroupoidMap,
        bottom: GroupoidMap,
    ) -> Result<Self> {
        let sq = Self {
            top,
            left,
            right,
            bottom,
        };
        sq.ensure_commutes()?;
        Ok(sq)
    }

    pub fn commutes(&self) -> bool {
        match (self.left.then(&self.bottom), self.top.then(&self.right)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    fn ensure_commutes(&self) -> Result<()> {
        let lb = self.left.then(&self.bottom)?;
        let tr = self.top.then(&self.right)?;
        if lb != tr {
            return Err(Error::NonCommuting(format!(
                "left;bottom = {} but top;right = {}",
                lb.describe(),
                tr.describe()
            )));
        }
        Ok(())
    }

    /// The chosen pullback of `(bottom, right)` and the comparison map from
    /// the corner into it.
    pub fn comparison(&self) -> Result<(PullbackSquare, GroupoidMap)> {
        self.ensure_commutes()?;
        let pb = pullback(&self.bottom, &self.right)?;
        let cmp = pb.pair(&self.left, &self.top)?;
        Ok((pb, cmp))
    }
}

/// Whether the canonical comparison from the square's corner to the chosen
/// pullback is an isomorphism.
pub fn is_pullback(sq: &CommutingSquare) -> Result<Verdict> {
    let (pb, cmp) = sq.comparison()?;
    Ok(if cmp.is_iso() {
        Verdict::Holds
    } else if cmp.obj_map().len() != pb.apex.num_objects() || cmp.mor_map().len() != pb.apex.num_morphisms() {
        Verdict::fails(format!(
            "comparison {} objects/{} morphisms vs pullback {}/{}",
            cmp.dom().num_objects(),
            cmp.dom().num_morphisms(),
            pb.apex.num_objects(),
            pb.apex.num_morphisms()
        ))
    } else {
        Verdict::fails("comparison map is not injective")
    })
}

/// A pullback square together with the inverse of its comparison map, so
/// cones can be mediated into the square's own corner.
#[derive(Clone, Debug)]
pub struct VerifiedPullback {
    pub square: CommutingSquare,
    pub chosen: PullbackSquare,
    pub comparison_inverse: GroupoidMap,
}

impl VerifiedPullback {
    pub fn new(square: CommutingSquare) -> Result<Self> {
        let (chosen, cmp) = square.comparison()?;
        let comparison_inverse = cmp
            .inverse()
            .ok_or_else(|| Error::NotPullback("comparison map is not an isomorphism".into()))?;
        Ok(Self {
            square,
            chosen,
            comparison_inverse,
        })
    }

    /// The unique map `Z → W` with `;left = u` and `;top = v`.
    pub fn mediate(&self, u: &GroupoidMap, v: &GroupoidMap) -> Result<GroupoidMap> {
        self.chosen.pair(u, v)?.then(&self.comparison_inverse)
    }
}

/// Isomorphism test between two presentations, by search.
pub fn find_isomorphism(a: &Gpd, b: &Gpd, guard: &crate::search::Guard) -> Result<Option<GroupoidMap>> {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Ok(None);
    }
    let mut found = None;
    crate::search::for_each_map(a, b, guard, |f| {
        if f.is_iso() {
            found = Some(f);
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// A section of the comparison map from the square's corner to the chosen
/// pullback, if one exists (found by exhaustive search).
pub fn is_weak_pullback(
    sq: &CommutingSquare,
    guard: &crate::search::Guard,
) -> Result<Option<GroupoidMap>> {
    let (pb, cmp) = sq.comparison()?;
    let top = crate::search::PartialMap::unset(&pb.apex, sq.left.dom());
    let found = crate::search::fillers(&top, &cmp, &GroupoidMap::identity(&pb.apex), guard, Some(1))?;
    Ok(found.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::builtin::{cyclic, discrete, walking_iso};

    #[test]
    fn pullback_of_identities_is_isomorphic_to_the_object() {
        let a = walking_iso();
        let id = GroupoidMap::identity(&a);
        let pb = pullback(&id, &id).unwrap();
        assert!(pb.p1().is_iso());
        assert!(is_pullback(&pb.square()).unwrap().holds());
    }

    #[test]
    fn pullback_of_distinct_endpoints_is_empty() {
        let i = walking_iso();
        let t = terminal();
        let d0 = GroupoidMap::new(t.clone(), i.clone(), vec![0], vec![0]);
        let d1 = GroupoidMap::new(t.clone(), i.clone(), vec![1], vec![3]);
        let pb = pullback(&d0, &d1).unwrap();
        assert!(pb.apex.is_empty());
        assert!(is_pullback(&pb.square()).unwrap().holds());
    }

    #[test]
    fn product_of_discretes() {
        let d2 = discrete(2);
        let p = product(&d2, &d2);
        assert_eq!(p.apex.num_objects(), 4);
        assert!(p.apex.is_discrete());
        p.apex.validate().unwrap();
    }

    #[test]
    fn cospan_mismatch_is_an_error() {
        let a = discrete(2);
        let b = cyclic(2);
        let e = pullback(&GroupoidMap::identity(&a), &GroupoidMap::identity(&b));
        assert!(matches!(e, Err(Error::CospanMismatch(_))));
    }

    #[test]
    fn square_with_extra_corner_object_is_not_a_pullback() {
        // corner = apex ⊔ one isolated object, mapped onto an existing pair.
        let a = discrete(2);
        let t = terminal();
        let f = GroupoidMap::to_terminal(&a, &t);
        let pb = pullback(&f, &f).unwrap();
        let corner = discrete(5);
        let left = GroupoidMap::from_fns(corner.clone(), a.clone(), |o| pb.obj_pair(o.min(3)).0, |m| pb.obj_pair(m.min(3)).0);
        let top = GroupoidMap::from_fns(corner.clone(), a.clone(), |o| pb.obj_pair(o.min(3)).1, |m| pb.obj_pair(m.min(3)).1);
        let sq = CommutingSquare::new(top, left, f.clone(), f.clone()).unwrap();
        assert!(!is_pullback(&sq).unwrap().holds());
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let i = walking_iso();
        let t = terminal();
        let d0 = GroupoidMap::new(t.clone(), i.clone(), vec![0], vec![0]);
        let d1 = GroupoidMap::new(t.clone(), i.clone(), vec![1], vec![3]);
        let id = GroupoidMap::identity(&t);
        assert!(CommutingSquare::new(id.clone(), id, d1, d0).is_err());
    }

    #[test]
    fn mediating_map_commutes() {
        let i = walking_iso();
        let b = cyclic(2);
        let f = GroupoidMap::from_fns(i.clone(), b.clone(), |_| 0, |m| if m == 1 || m == 2 { 1 } else { 0 });
        let pb = pullback(&f, &f).unwrap();
        let id = GroupoidMap::identity(&i);
        let diag = pb.pair(&id, &id).unwrap();
        assert!(diag.check_functor().holds());
        assert_eq!(diag.then(&pb.p1()).unwrap(), id);
    }
}
