//! Subobjects of a groupoid presented as unions of sub-groupoids ("faces").
//!
//! A union of faces is taken in presheaves: a map out of it is a family of
//! functors on the faces agreeing on overlaps, i.e. an assignment on the
//! union of objects and morphisms that is functorial within each face.
//! Composites across different faces are not required to exist.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::groupoid::{Gpd, GroupoidMap, Mor, Obj};

/// A sub-groupoid of an ambient groupoid: closed under identities, inverses
/// and composition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub objects: BTreeSet<Obj>,
    pub morphisms: BTreeSet<Mor>,
}

impl Face {
    pub fn full(g: &Gpd) -> Self {
        Self {
            objects: (0..g.num_objects()).collect(),
            morphisms: (0..g.num_morphisms()).collect(),
        }
    }

    pub fn from_predicates(g: &Gpd, obj: impl Fn(Obj) -> bool, mor: impl Fn(Mor) -> bool) -> Self {
        Self {
            objects: (0..g.num_objects()).filter(|&o| obj(o)).collect(),
            morphisms: (0..g.num_morphisms()).filter(|&m| mor(m)).collect(),
        }
    }

    /// The image of an injective functor.
    pub fn image(i: &GroupoidMap) -> Result<Self> {
        if !i.is_injective() {
            return Err(Error::Unsupported(
                "only monomorphisms (injective functors) define faces".into(),
            ));
        }
        Ok(Self {
            objects: i.obj_map().iter().copied().collect(),
            morphisms: i.mor_map().iter().copied().collect(),
        })
    }

    pub fn is_subgroupoid_of(&self, g: &Gpd) -> bool {
        self.objects.iter().all(|&o| self.morphisms.contains(&g.id(o)))
            && self.morphisms.iter().all(|&m| {
                self.objects.contains(&g.src(m))
                    && self.objects.contains(&g.tgt(m))
                    && self.morphisms.contains(&g.inv(m))
                    && g.outgoing(g.tgt(m)).iter().all(|&n| {
                        !self.morphisms.contains(&n) || self.morphisms.contains(&g.then(m, n))
                    })
            })
    }

    pub fn contains(&self, other: &Face) -> bool {
        other.objects.is_subset(&self.objects) && other.morphisms.is_subset(&self.morphisms)
    }
}

/// A union of faces inside an ambient groupoid.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub ambient: Gpd,
    pub faces: Vec<Face>,
}

impl Subcomplex {
    pub fn new(ambient: Gpd, faces: Vec<Face>) -> Result<Self> {
        for f in &faces {
            if !f.is_subgroupoid_of(&ambient) {
                return Err(Error::Invalid("face is not a sub-groupoid".into()));
            }
        }
        Ok(Self { ambient, faces })
    }

    pub fn full(g: &Gpd) -> Self {
        Self {
            ambient: g.clone(),
            faces: vec![Face::full(g)],
        }
    }

    pub fn empty(g: &Gpd) -> Self {
        Self {
            ambient: g.clone(),
            faces: vec![],
        }
    }

    /// The subobject given by a monomorphism into `ambient`.
    pub fn from_mono(i: &GroupoidMap) -> Result<Self> {
        Ok(Self {
            ambient: i.cod().clone(),
            faces: vec![Face::image(i)?],
        })
    }

    pub fn objects(&self) -> BTreeSet<Obj> {
        self.faces.iter().flat_map(|f| f.objects.iter().copied()).collect()
    }

    pub fn morphisms(&self) -> BTreeSet<Mor> {
        self.faces.iter().flat_map(|f| f.morphisms.iter().copied()).collect()
    }

    /// Composition constraints `(g, f, g∘f)` holding inside some face.
    pub fn constraints(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut out = BTreeSet::new();
        for face in &self.faces {
            for &f in &face.morphisms {
                for &g in self.ambient.outgoing(self.ambient.tgt(f)) {
                    if face.morphisms.contains(&g) {
                        out.insert((g, f, self.ambient.then(f, g)));
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn is_full(&self) -> bool {
        self.faces.iter().any(|f| f.objects.len() == self.ambient.num_objects() && f.morphisms.len() == self.ambient.num_morphisms())
    }

    /// Equality as subobjects: every face of one lies in some face of the other.
    pub fn same_subobject(&self, other: &Subcomplex) -> bool {
        crate::groupoid::same_groupoid(&self.ambient, &other.ambient)
            && self.faces.iter().all(|f| other.faces.iter().any(|g| g.contains(f)))
            && other.faces.iter().all(|f| self.faces.iter().any(|g| g.contains(f)))
    }

    /// Drops faces contained in other faces.
    pub fn normalized(&self) -> Subcomplex {
        let mut faces: Vec<Face> = Vec::new();
        let mut sorted = self.faces.clone();
        sorted.sort_by_key(|f| std::cmp::Reverse((f.objects.len(), f.morphisms.len())));
        for f in sorted {
            if !faces.iter().any(|g| g.contains(&f)) {
                faces.push(f);
            }
        }
        faces.sort();
        Subcomplex {
            ambient: self.ambient.clone(),
            faces,
        }
    }

    /// Transports the subobject along an isomorphism of ambients.
    pub fn transport(&self, iso: &GroupoidMap) -> Subcomplex {
        Subcomplex {
            ambient: iso.cod().clone(),
            faces: self
                .faces
                .iter()
                .map(|f| Face {
                    objects: f.objects.iter().map(|&o| iso.obj(o)).collect(),
                    morphisms: f.morphisms.iter().map(|&m| iso.mor(m)).collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::builtin::*;
    use crate::limits::product;

    #[test]
    fn endpoints_of_the_interval() {
        let i = walking_iso();
        let d0 = Face::from_predicates(&i, |o| o == 0, |m| m == 0);
        let d1 = Face::from_predicates(&i, |o| o == 1, |m| m == 3);
        let s = Subcomplex::new(i.clone(), vec![d0, d1]).unwrap();
        assert_eq!(s.objects().len(), 2);
        assert_eq!(s.morphisms().len(), 2);
        assert!(!s.is_full());
    }

    #[test]
    fn non_subgroupoid_face_rejected() {
        let i = walking_iso();
        let bad = Face::from_predicates(&i, |_| true, |m| m == 1);
        assert!(Subcomplex::new(i, vec![bad]).is_err());
    }

    #[test]
    fn union_of_two_edges_is_not_closed_but_constraints_are_facewise() {
        let i = walking_iso();
        let sq = product(&i, &i);
        let left = Face::from_predicates(&sq.apex, |o| sq.split_obj(o).0 == 0, |m| sq.split_mor(m).0 == 0);
        let bottom = Face::from_predicates(&sq.apex, |o| sq.split_obj(o).1 == 0, |m| sq.split_mor(m).1 == 0);
        let s = Subcomplex::new(sq.apex.clone(), vec![left.clone(), bottom.clone()]).unwrap();
        assert_eq!(s.objects().len(), 3);
        assert_eq!(s.morphisms().len(), 7);
        for (g, f, gf) in s.constraints() {
            assert!([&left, &bottom].iter().any(|face| {
                face.morphisms.contains(&g) && face.morphisms.contains(&f) && face.morphisms.contains(&gf)
            }));
        }
    }
}
