//! Exponentials `A^S` of a groupoid by a union of faces `S ⊂ D`, optionally
//! relative to a family `A → X` (maps constant over `X`).
//!
//! Objects are maps `S → A` (functorial on each face); morphisms are natural
//! transformations, stored by their components on the objects of `S`. For a
//! relative exponential every functor lies over a single `x ∈ X` and every
//! transformation has all components over a single morphism of `X`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groupoid::{same_groupoid, FinGroupoid, Gpd, GroupoidMap, Mor, Morphism, Obj};
use crate::limits::Product;
use crate::search::{enumerate_partial_maps, Guard, PartialMap, UNSET};
use crate::subcomplex::Subcomplex;

#[derive(Clone, Debug)]
pub struct Exponential {
    base: Gpd,
    fam: Option<GroupoidMap>,
    exponent: Subcomplex,
    groupoid: Gpd,
    proj: Option<GroupoidMap>,
    s_objs: Vec<Obj>,
    s_mors: Vec<Mor>,
    obj_pos: Vec<usize>,
    mor_pos: Vec<usize>,
    functors: Vec<Vec<usize>>,
    functor_index: HashMap<Vec<usize>, Obj>,
    nats: Vec<Vec<Mor>>,
    nat_index: HashMap<(Obj, Vec<Mor>), Mor>,
}

/// Visits every tuple of the cartesian product of `choices`.
fn for_each_tuple(choices: &[Vec<usize>], mut visit: impl FnMut(&[usize])) {
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut cur: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    loop {
        visit(&cur);
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                cur[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = choices[k][0];
        }
    }
}

impl Exponential {
    /// Absolute exponential `A^S`.
    pub fn absolute(base: &Gpd, exponent: &Subcomplex, guard: &Guard) -> Result<Self> {
        Self::build(base, None, exponent, guard)
    }

    /// Exponential in the slice over `X` of the family `fam: A → X` by the
    /// pulled-back exponent `X×S → X`.
    pub fn relative(fam: &GroupoidMap, exponent: &Subcomplex, guard: &Guard) -> Result<Self> {
        Self::build(fam.dom(), Some(fam), exponent, guard)
    }

    fn build(base: &Gpd, fam: Option<&GroupoidMap>, exponent: &Subcomplex, guard: &Guard) -> Result<Self> {
        let d = &exponent.ambient;
        let s_objs: Vec<Obj> = exponent.objects().into_iter().collect();
        let s_mors: Vec<Mor> = exponent.morphisms().into_iter().collect();
        if fam.is_some() && s_objs.is_empty() {
            return Err(Error::Unsupported(
                "relative exponential by an empty exponent".into(),
            ));
        }
        let mut obj_pos = vec![UNSET; d.num_objects()];
        for (i, &o) in s_objs.iter().enumerate() {
            obj_pos[o] = i;
        }
        let mut mor_pos = vec![UNSET; d.num_morphisms()];
        for (i, &m) in s_mors.iter().enumerate() {
            mor_pos[m] = i;
        }
        let key_of = |p: &PartialMap| -> Vec<usize> {
            s_objs
                .iter()
                .map(|&o| p.obj[o])
                .chain(s_mors.iter().map(|&m| p.mor[m]))
                .collect()
        };

        let mut functors: Vec<Vec<usize>> = Vec::new();
        let mut over_obj: Vec<Obj> = Vec::new();
        match fam {
            None => {
                for p in enumerate_partial_maps(exponent, base, guard, |_, _| true, |_, _| true)? {
                    functors.push(key_of(&p));
                }
            }
            Some(fam) => {
                let x = fam.cod();
                for xo in 0..x.num_objects() {
                    let idx = x.id(xo);
                    let maps = enumerate_partial_maps(
                        exponent,
                        base,
                        guard,
                        |_, c| fam.obj(c) == xo,
                        |_, n| fam.mor(n) == idx,
                    )?;
                    for p in maps {
                        functors.push(key_of(&p));
                        over_obj.push(xo);
                    }
                }
            }
        }
        let functor_index: HashMap<Vec<usize>, Obj> =
            functors.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let n_s = s_objs.len();

        // Natural transformations out of each functor: any choice of
        // components determines the target by conjugation.
        let mut nats: Vec<Vec<Mor>> = Vec::new();
        let mut nat_src: Vec<Obj> = Vec::new();
        let mut nat_tgt: Vec<Obj> = Vec::new();
        let mut over_mor: Vec<Mor> = Vec::new();
        let target_of = |f: &[usize], comps: &[Mor]| -> Vec<usize> {
            let mut key: Vec<usize> = comps.iter().map(|&a| base.tgt(a)).collect();
            for (j, &m) in s_mors.iter().enumerate() {
                let a_s = comps[obj_pos[d.src(m)]];
                let a_t = comps[obj_pos[d.tgt(m)]];
                let fm = f[n_s + j];
                key.push(base.then(base.then(base.inv(a_s), fm), a_t));
            }
            key
        };
        for (fi, f) in functors.iter().enumerate() {
            let mut push = |comps: &[usize], xi: Option<Mor>| {
                let key = target_of(f, comps);
                let gi = functor_index[&key];
                nats.push(comps.to_vec());
                nat_src.push(fi);
                nat_tgt.push(gi);
                if let Some(xi) = xi {
                    over_mor.push(xi);
                }
            };
            match fam {
                None => {
                    let choices: Vec<Vec<usize>> =
                        (0..n_s).map(|i| base.outgoing(f[i]).to_vec()).collect();
                    for_each_tuple(&choices, |c| push(c, None));
                }
                Some(fam) => {
                    let x = fam.cod();
                    for &xi in x.outgoing(over_obj[fi]) {
                        let choices: Vec<Vec<usize>> = (0..n_s)
                            .map(|i| {
                                base.outgoing(f[i])
                                    .iter()
                                    .copied()
                                    .filter(|&a| fam.mor(a) == xi)
                                    .collect()
                            })
                            .collect();
                        for_each_tuple(&choices, |c| push(c, Some(xi)));
                    }
                }
            }
        }
        let nat_index: HashMap<(Obj, Vec<Mor>), Mor> = nats
            .iter()
            .enumerate()
            .map(|(i, c)| ((nat_src[i], c.clone()), i))
            .collect();

        let name_of = |f: &[usize]| -> String {
            let mut parts: Vec<&str> = f[..n_s].iter().map(|&o| base.object_name(o)).collect();
            let mors: Vec<&str> = s_mors
                .iter()
                .enumerate()
                .filter(|(_, &m)| !d.is_identity(m))
                .map(|(j, _)| base.morphism_name(f[n_s + j]))
                .collect();
            if !mors.is_empty() {
                parts.push(";");
            }
            let mut s = String::from("[");
            let mut first = true;
            for p in parts.into_iter().chain(mors) {
                if p != ";" && !first && !s.ends_with(';') {
                    s.push(',');
                }
                s.push_str(p);
                first = false;
            }
            s.push(']');
            s
        };
        let objects: Vec<String> = functors.iter().map(|f| name_of(f)).collect();
        let morphisms: Vec<Morphism> = nats
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let comps: Vec<&str> = c.iter().map(|&a| base.morphism_name(a)).collect();
                Morphism::new(
                    format!("{}~({})", objects[nat_src[i]], comps.join(",")),
                    nat_src[i],
                    nat_tgt[i],
                )
            })
            .collect();
        let identity: Vec<Mor> = functors
            .iter()
            .enumerate()
            .map(|(fi, f)| {
                let comps: Vec<Mor> = f[..n_s].iter().map(|&o| base.id(o)).collect();
                nat_index[&(fi, comps)]
            })
            .collect();
        let inverse: Vec<Mor> = nats
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let comps: Vec<Mor> = c.iter().map(|&a| base.inv(a)).collect();
                nat_index[&(nat_tgt[i], comps)]
            })
            .collect();
        let groupoid = FinGroupoid::build(objects, morphisms, identity, inverse, |g, f| {
            let comps: Vec<Mor> = nats[f]
                .iter()
                .zip(&nats[g])
                .map(|(&a, &b)| base.then(a, b))
                .collect();
            nat_index[&(nat_src[f], comps)]
        })
        .into_gpd();
        let proj = fam.map(|fam| {
            GroupoidMap::new(groupoid.clone(), fam.cod().clone(), over_obj.clone(), over_mor.clone())
        });
        Ok(Self {
            base: base.clone(),
            fam: fam.cloned(),
            exponent: exponent.clone(),
            groupoid,
            proj,
            s_objs,
            s_mors,
            obj_pos,
            mor_pos,
            functors,
            functor_index,
            nats,
            nat_index,
        })
    }

    pub fn groupoid(&self) -> &Gpd {
        &self.groupoid
    }

    pub fn base(&self) -> &Gpd {
        &self.base
    }

    pub fn family(&self) -> Option<&GroupoidMap> {
        self.fam.as_ref()
    }

    pub fn exponent(&self) -> &Subcomplex {
        &self.exponent
    }

    /// `A^S → X` for relative exponentials.
    pub fn proj(&self) -> Option<&GroupoidMap> {
        self.proj.as_ref()
    }

    /// Image of the ambient object `s ∈ S` under functor `f`.
    pub fn fobj(&self, f: Obj, s: Obj) -> Obj {
        self.functors[f][self.obj_pos[s]]
    }

    /// Image of the ambient morphism `m ∈ S` under functor `f`.
    pub fn fmor(&self, f: Obj, m: Mor) -> Mor {
        self.functors[f][self.s_objs.len() + self.mor_pos[m]]
    }

    /// Component at `s ∈ S` of transformation `n`.
    pub fn component(&self, n: Mor, s: Obj) -> Mor {
        self.nats[n][self.obj_pos[s]]
    }

    pub fn find_functor(&self, obj: impl Fn(Obj) -> Obj, mor: impl Fn(Mor) -> Mor) -> Option<Obj> {
        let key: Vec<usize> = self
            .s_objs
            .iter()
            .map(|&o| obj(o))
            .chain(self.s_mors.iter().map(|&m| mor(m)))
            .collect();
        self.functor_index.get(&key).copied()
    }

    pub fn find_nat(&self, src: Obj, comp: impl Fn(Obj) -> Mor) -> Option<Mor> {
        let comps: Vec<Mor> = self.s_objs.iter().map(|&o| comp(o)).collect();
        self.nat_index.get(&(src, comps)).copied()
    }

    /// Evaluation at a point of the exponent, `A^S → A`.
    pub fn eval_at(&self, s: Obj) -> GroupoidMap {
        assert!(self.obj_pos[s] != UNSET, "evaluation point outside the exponent");
        GroupoidMap::from_fns(
            self.groupoid.clone(),
            self.base.clone(),
            |f| self.fobj(f, s),
            |n| self.component(n, s),
        )
    }

    /// The constant-map inclusion `A → A^S`.
    pub fn constant(&self) -> GroupoidMap {
        GroupoidMap::from_fns(
            self.base.clone(),
            self.groupoid.clone(),
            |a| {
                self.find_functor(|_| a, |_| self.base.id(a))
                    .expect("constant functor exists")
            },
            |g| {
                let src = self
                    .find_functor(|_| self.base.src(g), |_| self.base.id(self.base.src(g)))
                    .expect("constant functor exists");
                self.find_nat(src, |_| g).expect("constant transformation exists")
            },
        )
    }

    /// Transpose of `h : Z×S → A` (given on the subcomplex `Z×S` of `Z×D`).
    pub fn curry(&self, h: &PartialMap, prod: &Product) -> Result<GroupoidMap> {
        let z = &prod.left;
        debug_assert!(same_groupoid(&prod.right, &self.exponent.ambient));
        let d = &self.exponent.ambient;
        let missing = || Error::Invalid("map does not transpose into the exponential".into());
        GroupoidMap::try_from_fns(
            z.clone(),
            self.groupoid.clone(),
            |zo| {
                self.find_functor(|s| h.obj[prod.obj(zo, s)], |m| h.mor[prod.mor(z.id(zo), m)])
                    .ok_or_else(missing)
            },
            |zm| {
                let zs = z.src(zm);
                let src = self
                    .find_functor(|s| h.obj[prod.obj(zs, s)], |m| h.mor[prod.mor(z.id(zs), m)])
                    .ok_or_else(missing)?;
                self.find_nat(src, |s| h.mor[prod.mor(zm, d.id(s))])
                    .ok_or_else(missing)
            },
        )
    }

    /// Inverse transpose of `k : Z → A^S`, defined on `Z×S ⊂ Z×D`.
    pub fn uncurry(&self, k: &GroupoidMap, prod: &Product) -> PartialMap {
        let (z, d) = (&prod.left, &prod.right);
        let mut out = PartialMap::unset(&prod.apex, &self.base);
        for zo in 0..z.num_objects() {
            for &s in &self.s_objs {
                out.obj[prod.obj(zo, s)] = self.fobj(k.obj(zo), s);
            }
        }
        for zm in 0..z.num_morphisms() {
            let tgt_f = k.obj(z.tgt(zm));
            let nat = k.mor(zm);
            for &m in &self.s_mors {
                let a = self.component(nat, d.src(m));
                out.mor[prod.mor(zm, m)] = self.base.then(a, self.fmor(tgt_f, m));
            }
        }
        out
    }

    /// Evaluation `A^D × D → A` for a full exponent.
    pub fn eval(&self, prod: &Product) -> GroupoidMap {
        self.uncurry(&GroupoidMap::identity(&self.groupoid), prod)
            .to_total()
            .expect("evaluation needs a full exponent")
    }

    /// Restriction `A^S → A^{S'}` for a smaller exponent over the same base.
    pub fn restrict(&self, target: &Exponential) -> Result<GroupoidMap> {
        if !same_groupoid(&self.base, &target.base) {
            return Err(Error::Invalid("restriction between different bases".into()));
        }
        let missing = || Error::Invalid("restricted functor not found".into());
        GroupoidMap::try_from_fns(
            self.groupoid.clone(),
            target.groupoid.clone(),
            |f| {
                target
                    .find_functor(|s| self.fobj(f, s), |m| self.fmor(f, m))
                    .ok_or_else(missing)
            },
            |n| {
                let src = self.groupoid.src(n);
                let tsrc = target
                    .find_functor(|s| self.fobj(src, s), |m| self.fmor(src, m))
                    .ok_or_else(missing)?;
                target.find_nat(tsrc, |s| self.component(n, s)).ok_or_else(missing)
            },
        )
    }

    /// Post-composition `g^S : A^S → B^S` into an exponential of `B` by the
    /// same exponent.
    pub fn postcompose(&self, g: &GroupoidMap, target: &Exponential) -> Result<GroupoidMap> {
        let missing = || Error::Invalid("post-composed functor not found".into());
        GroupoidMap::try_from_fns(
            self.groupoid.clone(),
            target.groupoid.clone(),
            |f| {
                target
                    .find_functor(|s| g.obj(self.fobj(f, s)), |m| g.mor(self.fmor(f, m)))
                    .ok_or_else(missing)
            },
            |n| {
                let src = self.groupoid.src(n);
                let tsrc = target
                    .find_functor(|s| g.obj(self.fobj(src, s)), |m| g.mor(self.fmor(src, m)))
                    .ok_or_else(missing)?;
                target
                    .find_nat(tsrc, |s| g.mor(self.component(n, s)))
                    .ok_or_else(missing)
            },
        )
    }
}
