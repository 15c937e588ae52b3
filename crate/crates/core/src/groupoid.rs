//! Finite groupoids given by explicit presentations, and functors between them.
//!
//! Objects and morphisms are addressed by dense indices; names are carried
//! along for reporting and for the on-the-nose equality of presentations.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::verdict::Verdict;

pub type Obj = usize;
pub type Mor = usize;

/// Shared handle to an immutable groupoid.
pub type Gpd = Arc<FinGroupoid>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

impl Morphism {
    pub fn new(name: impl Into<String>, src: Obj, tgt: Obj) -> Self {
        Self {
            name: name.into(),
            src,
            tgt,
        }
    }
}

/// A finite groupoid: objects, morphisms, a total composition table on
/// composable pairs, identities and inverses.
#[derive(Clone)]
pub struct FinGroupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Mor>,
    inverse: Vec<Mor>,
    /// `(g, f) -> g∘f` for `f: a→b`, `g: b→c`.
    compose: HashMap<(Mor, Mor), Mor>,
    outgoing: Vec<Vec<Mor>>,
    hom: HashMap<(Obj, Obj), Vec<Mor>>,
}

impl PartialEq for FinGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.inverse == other.inverse
            && self.compose == other.compose
    }
}

impl Eq for FinGroupoid {}

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGroupoid")
            .field("objects", &self.objects)
            .field(
                "morphisms",
                &self.morphisms.iter().map(|m| &m.name).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl FinGroupoid {
    /// Builds a groupoid whose composition is computed by `compose` on every
    /// composable pair. The result is trusted; use [`FinGroupoid::validate`]
    /// to check the laws.
    pub fn build(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        inverse: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Mor,
    ) -> Self {
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut incoming = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.src].push(i);
            incoming[m.tgt].push(i);
        }
        let mut table = HashMap::new();
        for b in 0..objects.len() {
            for &f in &incoming[b] {
                for &g in &outgoing[b] {
                    table.insert((g, f), compose(g, f));
                }
            }
        }
        Self::assemble(objects, morphisms, identity, inverse, table)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        inverse: Vec<Mor>,
        compose: HashMap<(Mor, Mor), Mor>,
    ) -> Self {
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut hom: HashMap<(Obj, Obj), Vec<Mor>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.src].push(i);
            hom.entry((m.src, m.tgt)).or_default().push(i);
        }
        Self {
            objects,
            morphisms,
            identity,
            inverse,
            compose,
            outgoing,
            hom,
        }
    }

    /// Builds and validates a groupoid from an explicit composition table of
    /// `(g, f, g∘f)` triples. Identities and inverses are derived when absent.
    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        table: &[(Mor, Mor, Mor)],
        identity: Option<Vec<Mor>>,
        inverse: Option<Vec<Mor>>,
    ) -> Result<Self> {
        for m in &morphisms {
            if m.src >= objects.len() || m.tgt >= objects.len() {
                return Err(Error::InvalidGroupoid(format!(
                    "morphism {} has an endpoint outside the object set",
                    m.name
                )));
            }
        }
        let mut compose = HashMap::new();
        for &(g, f, gf) in table {
            let bad = [g, f, gf].iter().any(|&x| x >= morphisms.len());
            if bad {
                return Err(Error::InvalidGroupoid(format!(
                    "composition entry ({g}, {f}, {gf}) names an unknown morphism"
                )));
            }
            let (mg, mf, mgf) = (&morphisms[g], &morphisms[f], &morphisms[gf]);
            if mf.tgt != mg.src {
                return Err(Error::InvalidGroupoid(format!(
                    "composition entry {}∘{} is not composable",
                    mg.name, mf.name
                )));
            }
            if mgf.src != mf.src || mgf.tgt != mg.tgt {
                return Err(Error::InvalidGroupoid(format!(
                    "{}∘{} = {} has the wrong endpoints",
                    mg.name, mf.name, mgf.name
                )));
            }
            if let Some(prev) = compose.insert((g, f), gf) {
                if prev != gf {
                    return Err(Error::InvalidGroupoid(format!(
                        "{}∘{} given twice with different values",
                        mg.name, mf.name
                    )));
                }
            }
        }
        let provisional = Self::assemble(
            objects.clone(),
            morphisms.clone(),
            vec![],
            vec![],
            compose.clone(),
        );
        for f in 0..morphisms.len() {
            for &g in &provisional.outgoing[morphisms[f].tgt] {
                if !compose.contains_key(&(g, f)) {
                    return Err(Error::InvalidGroupoid(format!(
                        "composition table is not total: {}∘{} missing",
                        morphisms[g].name, morphisms[f].name
                    )));
                }
            }
        }
        let identity = match identity {
            Some(ids) => ids,
            None => provisional.derive_identities()?,
        };
        if identity.len() != objects.len() {
            return Err(Error::InvalidGroupoid(
                "identity map does not cover every object".into(),
            ));
        }
        let with_ids = Self::assemble(
            objects.clone(),
            morphisms.clone(),
            identity.clone(),
            vec![],
            compose.clone(),
        );
        let inverse = match inverse {
            Some(inv) => inv,
            None => with_ids.derive_inverses()?,
        };
        if inverse.len() != morphisms.len() {
            return Err(Error::InvalidGroupoid(
                "inverse map does not cover every morphism".into(),
            ));
        }
        let g = Self::assemble(objects, morphisms, identity, inverse, compose);
        g.validate()?;
        Ok(g)
    }

    fn derive_identities(&self) -> Result<Vec<Mor>> {
        (0..self.objects.len())
            .map(|a| {
                self.hom(a, a)
                    .iter()
                    .copied()
                    .find(|&e| {
                        self.outgoing[a].iter().all(|&g| self.compose[&(g, e)] == g)
                            && self
                                .morphisms
                                .iter()
                                .enumerate()
                                .filter(|(_, m)| m.tgt == a)
                                .all(|(f, _)| self.compose[&(e, f)] == f)
                    })
                    .ok_or_else(|| {
                        Error::InvalidGroupoid(format!(
                            "cannot derive an identity at object {}",
                            self.objects[a]
                        ))
                    })
            })
            .collect()
    }

    fn derive_inverses(&self) -> Result<Vec<Mor>> {
        (0..self.morphisms.len())
            .map(|f| {
                let m = &self.morphisms[f];
                self.hom(m.tgt, m.src)
                    .iter()
                    .copied()
                    .find(|&g| {
                        self.compose[&(g, f)] == self.identity[m.src]
                            && self.compose[&(f, g)] == self.identity[m.tgt]
                    })
                    .ok_or_else(|| {
                        Error::InvalidGroupoid(format!("cannot derive an inverse of {}", m.name))
                    })
            })
            .collect()
    }

    /// Checks the groupoid laws, reporting the first violated equation.
    pub fn validate(&self) -> Result<()> {
        for (a, &e) in self.identity.iter().enumerate() {
            let m = &self.morphisms[e];
            if m.src != a || m.tgt != a {
                return Err(Error::InvalidGroupoid(format!(
                    "identity {} at {} is not an endomorphism of it",
                    m.name, self.objects[a]
                )));
            }
        }
        for f in 0..self.morphisms.len() {
            let m = &self.morphisms[f];
            if self.comp(self.identity[m.tgt], f) != Some(f)
                || self.comp(f, self.identity[m.src]) != Some(f)
            {
                return Err(Error::InvalidGroupoid(format!(
                    "identity law fails at {}",
                    m.name
                )));
            }
            let i = self.inverse[f];
            if self.comp(i, f) != Some(self.identity[m.src])
                || self.comp(f, i) != Some(self.identity[m.tgt])
            {
                return Err(Error::InvalidGroupoid(format!(
                    "inverse law fails at {}",
                    m.name
                )));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.morphisms[f].tgt] {
                let gf = self.compose[&(g, f)];
                for &h in &self.outgoing[self.morphisms[g].tgt] {
                    let lhs = self.compose[&(h, gf)];
                    let rhs = self.compose[&(self.compose[&(h, g)], f)];
                    if lhs != rhs {
                        return Err(Error::InvalidGroupoid(format!(
                            "composition is not associative on ({}, {}, {})",
                            self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, a: Obj) -> &str {
        &self.objects[a]
    }

    pub fn morphism_name(&self, m: Mor) -> &str {
        &self.morphisms[m].name
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m].tgt
    }

    pub fn id(&self, a: Obj) -> Mor {
        self.identity[a]
    }

    pub fn inv(&self, m: Mor) -> Mor {
        self.inverse[m]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.morphisms[m].src] == m
    }

    /// `g∘f`, if composable.
    pub fn comp(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose.get(&(g, f)).copied()
    }

    /// `g∘f`; panics when the pair is not composable.
    pub fn then(&self, f: Mor, g: Mor) -> Mor {
        match self.compose.get(&(g, f)) {
            Some(&gf) => gf,
            None => panic!(
                "{} then {} is not composable",
                self.morphisms[f].name, self.morphisms[g].name
            ),
        }
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        self.hom.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn outgoing(&self, a: Obj) -> &[Mor] {
        &self.outgoing[a]
    }

    /// All composable pairs `(g, f)` with their composite.
    pub fn composable(&self) -> impl Iterator<Item = (Mor, Mor, Mor)> + '_ {
        self.compose.iter().map(|(&(g, f), &gf)| (g, f, gf))
    }

    pub fn find_object(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_morphism(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn is_discrete(&self) -> bool {
        self.morphisms.len() == self.objects.len()
    }

    pub fn into_gpd(self) -> Gpd {
        Arc::new(self)
    }
}

/// Standard small groupoids used throughout the test corpus.
pub mod builtin {
    use super::*;

    pub fn empty() -> Gpd {
        FinGroupoid::build(vec![], vec![], vec![], vec![], |_, _| unreachable!()).into_gpd()
    }

    pub fn terminal() -> Gpd {
        discrete_named(&["*"])
    }

    /// The discrete groupoid on `n` objects `0..n`.
    pub fn discrete(n: usize) -> Gpd {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        discrete_named(&refs)
    }

    pub fn discrete_named(names: &[&str]) -> Gpd {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism::new(format!("id_{o}"), i, i))
            .collect();
        let ids: Vec<Mor> = (0..objects.len()).collect();
        FinGroupoid::build(objects, morphisms, ids.clone(), ids, |g, f| {
            debug_assert_eq!(g, f);
            g
        })
        .into_gpd()
    }

    /// The indiscrete (codiscrete) groupoid: exactly one morphism between any
    /// two objects. Morphism `i*n + j` goes from `i` to `j`.
    pub fn indiscrete(names: &[&str]) -> Gpd {
        let n = names.len();
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut morphisms = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let name = if i == j {
                    format!("id{}", names[i])
                } else {
                    format!("{}>{}", names[i], names[j])
                };
                morphisms.push(Morphism::new(name, i, j));
            }
        }
        let identity = (0..n).map(|i| i * n + i).collect();
        let inverse = (0..n * n).map(|m| (m % n) * n + m / n).collect();
        FinGroupoid::build(objects, morphisms, identity, inverse, |g, f| {
            (f / n) * n + (g % n)
        })
        .into_gpd()
    }

    /// The walking isomorphism `0 ≅ 1`, with morphisms `id0, u: 0→1, u^-1, id1`.
    pub fn walking_iso() -> Gpd {
        let objects = vec!["0".to_string(), "1".to_string()];
        let morphisms = vec![
            Morphism::new("id0", 0, 0),
            Morphism::new("u", 0, 1),
            Morphism::new("u^-1", 1, 0),
            Morphism::new("id1", 1, 1),
        ];
        FinGroupoid::build(objects, morphisms, vec![0, 3], vec![0, 2, 1, 3], |g, f| {
            // index = 2*src + tgt
            let src = f / 2;
            let tgt = g % 2;
            2 * src + tgt
        })
        .into_gpd()
    }

    /// One-object groupoid of the cyclic group of order `n`: morphisms `g^k`.
    pub fn cyclic(n: usize) -> Gpd {
        assert!(n >= 1);
        let objects = vec!["*".to_string()];
        let morphisms = (0..n)
            .map(|k| {
                let name = match (n, k) {
                    (_, 0) => "e".to_string(),
                    (2, 1) => "s".to_string(),
                    _ => format!("g{k}"),
                };
                Morphism::new(name, 0, 0)
            })
            .collect();
        let inverse = (0..n).map(|k| (n - k) % n).collect();
        FinGroupoid::build(objects, morphisms, vec![0], inverse, |g, f| (g + f) % n).into_gpd()
    }
}

/// A functor between finite groupoids.
#[derive(Clone)]
pub struct GroupoidMap {
    dom: Gpd,
    cod: Gpd,
    obj: Vec<Obj>,
    mor: Vec<Mor>,
}

pub fn same_groupoid(a: &Gpd, b: &Gpd) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for GroupoidMap {
    fn eq(&self, other: &Self) -> bool {
        self.obj == other.obj
            && self.mor == other.mor
            && same_groupoid(&self.dom, &other.dom)
            && same_groupoid(&self.cod, &other.cod)
    }
}

impl Eq for GroupoidMap {}

impl fmt::Debug for GroupoidMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl GroupoidMap {
    pub fn new(dom: Gpd, cod: Gpd, obj: Vec<Obj>, mor: Vec<Mor>) -> Self {
        assert_eq!(obj.len(), dom.num_objects());
        assert_eq!(mor.len(), dom.num_morphisms());
        Self { dom, cod, obj, mor }
    }

    pub fn from_fns(
        dom: Gpd,
        cod: Gpd,
        fo: impl FnMut(Obj) -> Obj,
        fm: impl FnMut(Mor) -> Mor,
    ) -> Self {
        let obj = (0..dom.num_objects()).map(fo).collect();
        let mor = (0..dom.num_morphisms()).map(fm).collect();
        Self { dom, cod, obj, mor }
    }

    /// Fallible variant of [`GroupoidMap::from_fns`].
    pub fn try_from_fns(
        dom: Gpd,
        cod: Gpd,
        fo: impl FnMut(Obj) -> Result<Obj>,
        fm: impl FnMut(Mor) -> Result<Mor>,
    ) -> Result<Self> {
        let obj = (0..dom.num_objects()).map(fo).collect::<Result<_>>()?;
        let mor = (0..dom.num_morphisms()).map(fm).collect::<Result<_>>()?;
        Ok(Self { dom, cod, obj, mor })
    }

    pub fn identity(g: &Gpd) -> Self {
        Self::new(
            g.clone(),
            g.clone(),
            (0..g.num_objects()).collect(),
            (0..g.num_morphisms()).collect(),
        )
    }

    /// The unique map out of the empty groupoid.
    pub fn from_empty(dom: &Gpd, cod: &Gpd) -> Self {
        assert!(dom.is_empty());
        Self::new(dom.clone(), cod.clone(), vec![], vec![])
    }

    /// The map collapsing everything to the single object of `terminal`.
    pub fn to_terminal(dom: &Gpd, terminal: &Gpd) -> Self {
        assert_eq!(terminal.num_objects(), 1);
        let id = terminal.id(0);
        Self::from_fns(dom.clone(), terminal.clone(), |_| 0, |_| id)
    }

    /// The constant functor at object `b`.
    pub fn constant(dom: &Gpd, cod: &Gpd, b: Obj) -> Self {
        let idb = cod.id(b);
        Self::from_fns(dom.clone(), cod.clone(), |_| b, |_| idb)
    }

    pub fn dom(&self) -> &Gpd {
        &self.dom
    }

    pub fn cod(&self) -> &Gpd {
        &self.cod
    }

    pub fn obj(&self, a: Obj) -> Obj {
        self.obj[a]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor[m]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor
    }

    /// Diagrammatic composite `self ; g`.
    pub fn then(&self, g: &GroupoidMap) -> Result<GroupoidMap> {
        compose(self, g)
    }

    /// Reinterprets the map with an equal (on the nose) domain/codomain handle.
    pub fn retarget(&self, dom: &Gpd, cod: &Gpd) -> Self {
        debug_assert!(same_groupoid(&self.dom, dom) && same_groupoid(&self.cod, cod));
        Self {
            dom: dom.clone(),
            cod: cod.clone(),
            obj: self.obj.clone(),
            mor: self.mor.clone(),
        }
    }

    /// Functoriality check reporting the first violated equation.
    pub fn check_functor(&self) -> Verdict {
        let (d, c) = (&*self.dom, &*self.cod);
        for (a, &b) in self.obj.iter().enumerate() {
            if b >= c.num_objects() {
                return Verdict::fails(format!("object {} maps outside the codomain", d.object_name(a)));
            }
        }
        for (m, &n) in self.mor.iter().enumerate() {
            if n >= c.num_morphisms() {
                return Verdict::fails(format!("morphism {} maps outside the codomain", d.morphism_name(m)));
            }
            if c.src(n) != self.obj[d.src(m)] || c.tgt(n) != self.obj[d.tgt(m)] {
                return Verdict::fails(format!(
                    "F(src {0}) = src F({0}) fails: {0} ↦ {1}",
                    d.morphism_name(m),
                    c.morphism_name(n)
                ));
            }
        }
        for a in 0..d.num_objects() {
            if self.mor[d.id(a)] != c.id(self.obj[a]) {
                return Verdict::fails(format!(
                    "F(id_{0}) = id_F({0}) fails: id maps to {1}",
                    d.object_name(a),
                    c.morphism_name(self.mor[d.id(a)])
                ));
            }
        }
        for (g, f, gf) in d.composable() {
            if c.comp(self.mor[g], self.mor[f]) != Some(self.mor[gf]) {
                return Verdict::fails(format!(
                    "F({0}∘{1}) = F({0})∘F({1}) fails",
                    d.morphism_name(g),
                    d.morphism_name(f)
                ));
            }
        }
        Verdict::Holds
    }

    pub fn is_injective(&self) -> bool {
        let mut seen_o = vec![false; self.cod.num_objects()];
        for &b in &self.obj {
            if std::mem::replace(&mut seen_o[b], true) {
                return false;
            }
        }
        let mut seen_m = vec![false; self.cod.num_morphisms()];
        for &n in &self.mor {
            if std::mem::replace(&mut seen_m[n], true) {
                return false;
            }
        }
        true
    }

    /// A functor bijective on objects and morphisms is an isomorphism.
    pub fn is_iso(&self) -> bool {
        self.obj.len() == self.cod.num_objects()
            && self.mor.len() == self.cod.num_morphisms()
            && self.is_injective()
    }

    pub fn inverse(&self) -> Option<GroupoidMap> {
        if !self.is_iso() {
            return None;
        }
        let mut obj = vec![0; self.obj.len()];
        for (a, &b) in self.obj.iter().enumerate() {
            obj[b] = a;
        }
        let mut mor = vec![0; self.mor.len()];
        for (m, &n) in self.mor.iter().enumerate() {
            mor[n] = m;
        }
        Some(GroupoidMap::new(self.cod.clone(), self.dom.clone(), obj, mor))
    }

    pub fn describe(&self) -> String {
        let objs: Vec<String> = self
            .obj
            .iter()
            .enumerate()
            .map(|(a, &b)| format!("{}↦{}", self.dom.object_name(a), self.cod.object_name(b)))
            .collect();
        let mors: Vec<String> = self
            .mor
            .iter()
            .enumerate()
            .filter(|&(m, _)| !self.dom.is_identity(m))
            .map(|(m, &n)| format!("{}↦{}", self.dom.morphism_name(m), self.cod.morphism_name(n)))
            .collect();
        format!("{{{} | {}}}", objs.join(", "), mors.join(", "))
    }
}

/// Diagrammatic composite `f ; g`, i.e. `g∘f`.
pub fn compose(f: &GroupoidMap, g: &GroupoidMap) -> Result<GroupoidMap> {
    if !same_groupoid(&f.cod, &g.dom) {
        return Err(Error::Composition(format!(
            "codomain of {} is not the domain of {}",
            f.describe(),
            g.describe()
        )));
    }
    Ok(GroupoidMap {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        obj: f.obj.iter().map(|&b| g.obj[b]).collect(),
        mor: f.mor.iter().map(|&n| g.mor[n]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;

    #[test]
    fn builtins_satisfy_the_laws() {
        for g in [empty(), terminal(), discrete(3), walking_iso(), cyclic(2), cyclic(3), indiscrete(&["a", "b", "c"])] {
            g.validate().unwrap();
        }
    }

    #[test]
    fn walking_iso_composites() {
        let i = walking_iso();
        let u = i.find_morphism("u").unwrap();
        let ui = i.find_morphism("u^-1").unwrap();
        assert_eq!(i.comp(ui, u), Some(i.id(0)));
        assert_eq!(i.comp(u, ui), Some(i.id(1)));
        assert_eq!(i.inv(u), ui);
    }

    #[test]
    fn from_table_derives_identities_and_inverses() {
        // BZ2 written out by hand, without identities or inverses.
        let g = FinGroupoid::from_table(
            vec!["*".into()],
            vec![Morphism::new("e", 0, 0), Morphism::new("s", 0, 0)],
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)],
            None,
            None,
        )
        .unwrap();
        assert_eq!(g.id(0), 0);
        assert_eq!(g.inv(1), 1);
        assert_eq!(g, *cyclic(2));
    }

    #[test]
    fn from_table_rejects_non_associative() {
        // One object, three morphisms e, a, b with a∘a = b, a∘b = e, b∘a = a (breaks associativity).
        let table = [
            (0, 0, 0), (0, 1, 1), (0, 2, 2),
            (1, 0, 1), (2, 0, 2),
            (1, 1, 2), (1, 2, 0), (2, 1, 1), (2, 2, 1),
        ];
        let err = FinGroupoid::from_table(
            vec!["*".into()],
            vec![Morphism::new("e", 0, 0), Morphism::new("a", 0, 0), Morphism::new("b", 0, 0)],
            &table,
            None,
            None,
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("associative") || msg.contains("inverse"), "{msg}");
    }

    #[test]
    fn from_table_rejects_partial_table() {
        let err = FinGroupoid::from_table(
            vec!["*".into()],
            vec![Morphism::new("e", 0, 0), Morphism::new("s", 0, 0)],
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1)],
            None,
            None,
        )
        .unwrap_err();
        assert!(err.to_string().contains("not total"));
    }

    #[test]
    fn compose_identity_cases() {
        let i = walking_iso();
        let b = cyclic(2);
        let f = GroupoidMap::from_fns(i.clone(), b.clone(), |_| 0, |m| if m == 1 || m == 2 { 1 } else { 0 });
        assert!(f.check_functor().holds());
        assert_eq!(compose(&GroupoidMap::identity(&i), &f).unwrap(), f);
        assert_eq!(compose(&f, &GroupoidMap::identity(&b)).unwrap(), f);
        assert!(compose(&f, &f).is_err());
    }

    #[test]
    fn check_functor_on_bz2() {
        let b = cyclic(2);
        assert!(GroupoidMap::identity(&b).check_functor().holds());
        // swap e and s: identity not preserved
        let swap = GroupoidMap::new(b.clone(), b.clone(), vec![0], vec![1, 0]);
        let v = swap.check_functor();
        assert!(!v.holds());
        assert!(v.witness().unwrap().contains("id_"));
        // inversion m ↦ m⁻¹
        let inv = GroupoidMap::from_fns(b.clone(), b.clone(), |a| a, |m| b.inv(m));
        assert!(inv.check_functor().holds());
    }
}
