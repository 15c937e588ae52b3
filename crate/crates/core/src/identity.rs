//! Identity types from path types: `Id = Path`, `refl a = path(π;a)`, and
//! the J-eliminator `j = ε1 ∘ ℓ ∘ ⟨χ, cε0⟩` built from the connection and a
//! lift for the motive.

use crate::cylinder::{relative_pathobject, Cylinder, PathObject};
use crate::error::{Error, Result};
use crate::fibration::{build_connection, maps_over, Connection, Lifting, LiftingStructure, PulledBackLift};
use crate::groupoid::{Gpd, GroupoidMap};
use crate::limits::{CommutingSquare, VerifiedPullback};
use crate::search::{enumerate_maps, fillers, pins_from_map, Guard};
use crate::universe::{Classification, Extension, PathTypes, Universe};
use crate::verdict::Verdict;

fn eq_verdict(a: &Result<GroupoidMap>, b: &Result<GroupoidMap>, what: &str) -> Verdict {
    match (a, b) {
        (Ok(a), Ok(b)) if a == b => Verdict::Holds,
        (Ok(a), Ok(b)) => Verdict::fails(format!("{what}: {} vs {}", a.describe(), b.describe())),
        (Err(e), _) | (_, Err(e)) => Verdict::fails(format!("{what}: {e}")),
    }
}

fn record(results: &mut [(&'static str, Verdict)], name: &str, v: Verdict) {
    if let Some(slot) = results.iter_mut().find(|(n, _)| *n == name) {
        if slot.1.holds() && !v.holds() {
            slot.1 = v;
        }
    }
}

/// `Id` and `refl` read off path types.
#[derive(Clone, Debug)]
pub struct IdIntro {
    pub paths: PathTypes,
}

pub fn id_intro_from_path(paths: &PathTypes) -> IdIntro {
    IdIntro { paths: paths.clone() }
}

impl IdIntro {
    pub fn cylinder(&self) -> &Cylinder {
        &self.paths.cylinder
    }

    pub fn id_type(&self, a0: &GroupoidMap, a1: &GroupoidMap) -> Result<GroupoidMap> {
        self.paths.path_type(a0, a1)
    }

    /// `refl a`: the path term of the constant path at `a`.
    pub fn refl(&self, a: &GroupoidMap) -> Result<GroupoidMap> {
        let g = a.dom();
        self.paths.path_on(g, &self.cylinder().pi(g).then(a)?)
    }

    /// `refl_tp`, `Id_comp` and `refl_comp` over every term in every context.
    pub fn check_laws(&self, contexts: &[Gpd], guard: &Guard) -> Result<Vec<(&'static str, Verdict)>> {
        let mut results = vec![("refl_tp", Verdict::Holds), ("Id_comp", Verdict::Holds), ("refl_comp", Verdict::Holds)];
        let u = &self.paths.universe;
        for g in contexts {
            let terms = enumerate_maps(g, &u.tm, guard)?;
            for a in &terms {
                let r = self.refl(a)?;
                record(&mut results, "refl_tp", eq_verdict(&r.then(&u.tp), &self.id_type(a, a), "refl_tp"));
                for d in contexts {
                    for sigma in enumerate_maps(d, g, guard)? {
                        let sa = sigma.then(a)?;
                        record(&mut results, "refl_comp", eq_verdict(&sigma.then(&r), &self.refl(&sa), "refl_comp"));
                        for b in &terms {
                            let Ok(idab) = self.id_type(a, b) else { continue };
                            let rhs = self.id_type(&sa, &sigma.then(b)?);
                            record(&mut results, "Id_comp", eq_verdict(&sigma.then(&idab), &rhs, "Id_comp"));
                        }
                    }
                }
            }
        }
        Ok(results)
    }
}

/// The motive context `Γ.A.Path(a, var)` of paths out of a term `a`.
#[derive(Clone, Debug)]
pub struct MotiveCtx {
    pub a: GroupoidMap,
    pub ext_a: Extension,
    pub ext_path: Extension,
}

impl MotiveCtx {
    pub fn base(&self) -> &Gpd {
        self.a.dom()
    }

    pub fn ctx(&self) -> &Gpd {
        self.ext_path.ctx()
    }

    /// `M → Γ`.
    pub fn disp(&self) -> Result<GroupoidMap> {
        self.ext_path.disp().then(&self.ext_a.disp())
    }

    /// The other end of the path, `M → Tm`.
    pub fn endpoint(&self) -> Result<GroupoidMap> {
        self.ext_path.disp().then(&self.ext_a.var())
    }

    /// The path term, `M → Tm`.
    pub fn path_term(&self) -> GroupoidMap {
        self.ext_path.var()
    }
}

/// The J-eliminator: terms in the universe of path types, motives in a
/// second universe with a lifting structure.
#[derive(Clone, Debug)]
pub struct IdElim {
    pub intro: IdIntro,
    pub connection: Connection,
    /// The connection as a homotopy `Tm^𝐈 × 𝐈 → Tm^𝐈` from `ρε0` to the identity.
    pub homotopy: GroupoidMap,
    pub motives: Universe,
    pub motive_lift: LiftingStructure,
}

/// Builds J from path types with a lift for their universe, and a lift for
/// the motive universe.
pub fn j_eliminator(
    paths: &PathTypes,
    term_lift: LiftingStructure,
    motives: &Universe,
    motive_lift: LiftingStructure,
    guard: &Guard,
) -> Result<IdElim> {
    if *term_lift.family() != paths.universe.tp {
        return Err(Error::MissingWitness("term lift is not for the universe of path types".into()));
    }
    if *motive_lift.family() != motives.tp {
        return Err(Error::MissingWitness("motive lift is not for the motive universe".into()));
    }
    let lift_eps = PulledBackLift::new(paths.square.clone(), term_lift)?;
    let connection = build_connection(&paths.universe.tp, &lift_eps, guard)?;
    let homotopy = connection.vertical()?;
    Ok(IdElim {
        intro: id_intro_from_path(paths),
        connection,
        homotopy,
        motives: motives.clone(),
        motive_lift,
    })
}

impl IdElim {
    fn paths(&self) -> &PathTypes {
        &self.intro.paths
    }

    pub fn motive_ctx(&self, a: &GroupoidMap) -> Result<MotiveCtx> {
        let u = &self.paths().universe;
        let ext_a = u.ext(&a.then(&u.tp)?)?;
        let wk_a = ext_a.disp().then(a)?;
        let ext_path = u.ext(&self.paths().path_type(&wk_a, &ext_a.var())?)?;
        Ok(MotiveCtx {
            a: a.clone(),
            ext_a,
            ext_path,
        })
    }

    /// `⟨⟨id, a⟩, refl a⟩ : Γ → M`.
    pub fn refl_inst(&self, m: &MotiveCtx) -> Result<GroupoidMap> {
        let id = GroupoidMap::identity(m.base());
        let point = m.ext_a.pair(&id, &m.a)?;
        m.ext_path.pair(&point, &self.intro.refl(&m.a)?)
    }

    /// The motive context of `σ;a` and its map into the motive context of `a`.
    pub fn motive_subst(&self, sigma: &GroupoidMap, m: &MotiveCtx) -> Result<(MotiveCtx, GroupoidMap)> {
        let ms = self.motive_ctx(&sigma.then(&m.a)?)?;
        let point = m.ext_a.pair(&ms.disp()?.then(sigma)?, &ms.endpoint()?)?;
        let map = m.ext_path.pair(&point, &ms.path_term())?;
        Ok((ms, map))
    }

    /// `jElim : M → Tm'` for a motive `C : M → Ty'` and `c : Γ → Tm'` over
    /// `reflInst;C`.
    pub fn j_elim(&self, m: &MotiveCtx, motive: &GroupoidMap, c: &GroupoidMap) -> Result<GroupoidMap> {
        let tp1 = &self.motives.tp;
        if c.then(tp1)? != self.refl_inst(m)?.then(motive)? {
            return Err(Error::NonCommuting("c does not lie over the reflexivity instance".into()));
        }
        let cyl = self.intro.cylinder();
        let pt = self.paths();
        let g = m.ctx();
        let base = m.disp()?;
        let a0 = base.then(&m.a)?;
        let qflat = pt.unpath_transpose(&a0, &m.endpoint()?, &m.path_term())?;
        let h_paths = cyl.fmap(&qflat).then(&self.homotopy)?;
        let base_i = cyl.pi(g).then(&base)?;
        let end = h_paths.then(&pt.paths.eps1)?;
        let term = h_paths.then(&pt.path_tm)?;
        let h = m.ext_path.pair(&m.ext_a.pair(&base_i, &end)?, &term)?;
        let lifted = self.motive_lift.lift(&base.then(c)?, &h.then(motive)?)?;
        cyl.delta(1, g).then(&lifted)
    }

    /// `jElim_tp`, `reflSubst_jElim` and `jElim_comp` over every term, motive
    /// and reflexivity case enumerable over the contexts.
    pub fn check_laws(&self, contexts: &[Gpd], guard: &Guard) -> Result<Vec<(&'static str, Verdict)>> {
        let mut results = vec![
            ("jElim_tp", Verdict::Holds),
            ("reflSubst_jElim", Verdict::Holds),
            ("jElim_comp", Verdict::Holds),
        ];
        let u = &self.paths().universe;
        let tp1 = &self.motives.tp;
        for g in contexts {
            for a in enumerate_maps(g, &u.tm, guard)? {
                let m = self.motive_ctx(&a)?;
                let ri = self.refl_inst(&m)?;
                for motive in enumerate_maps(m.ctx(), &self.motives.ty, guard)? {
                    for c in maps_over(tp1, &ri.then(&motive)?, guard)? {
                        let j = self.j_elim(&m, &motive, &c);
                        let Ok(j) = j else {
                            record(&mut results, "jElim_tp", Verdict::fails(j.unwrap_err().to_string()));
                            continue;
                        };
                        record(&mut results, "jElim_tp", eq_verdict(&j.then(tp1), &Ok(motive.clone()), "jElim_tp"));
                        record(&mut results, "reflSubst_jElim", eq_verdict(&ri.then(&j), &Ok(c.clone()), "reflSubst_jElim"));
                        for d in contexts {
                            for sigma in enumerate_maps(d, g, guard)? {
                                let v = self.check_substitution(&sigma, &m, &motive, &c, &j)?;
                                record(&mut results, "jElim_comp", v);
                            }
                        }
                    }
                }
            }
        }
        Ok(results)
    }

    /// `(j^c)_σ = j^{c_σ}` for one substitution.
    pub fn check_substitution(
        &self,
        sigma: &GroupoidMap,
        m: &MotiveCtx,
        motive: &GroupoidMap,
        c: &GroupoidMap,
        j: &GroupoidMap,
    ) -> Result<Verdict> {
        let (ms, map) = self.motive_subst(sigma, m)?;
        let lhs = map.then(j);
        let rhs = self.j_elim(&ms, &map.then(motive)?, &sigma.then(c)?);
        Ok(eq_verdict(&lhs, &rhs, &format!("jElim_comp at {}", sigma.describe())))
    }
}

/// J as a diagonal filler of the square `(c, ρ, C → A^𝐈, id)` for a family
/// `A → X` classified by the universe of path types.
#[derive(Clone, Debug)]
pub struct DiagramJ {
    pub paths: PathObject,
    pub connection: Connection,
    pub motive: GroupoidMap,
    pub c: GroupoidMap,
    pub j: GroupoidMap,
}

pub fn j_diagram(
    classified: &Classification,
    paths: &PathTypes,
    term_lift: LiftingStructure,
    motive_lift: &dyn Lifting,
    c: &GroupoidMap,
    guard: &Guard,
) -> Result<DiagramJ> {
    let fam = &classified.family;
    let cyl = &paths.cylinder;
    let pa = relative_pathobject(fam, &cyl.interval, guard)?;
    let top_i = pa.exp.postcompose(&classified.top, &paths.paths.exp)?;
    let ends = &paths.paths.ends;
    let bottom = ends
        .pair(&pa.ends.p1().then(&classified.top)?, &pa.ends.p2().then(&classified.top)?)?
        .then(&paths.path_ty)?;
    let sq = VerifiedPullback::new(CommutingSquare::new(
        top_i.then(&paths.path_tm)?,
        pa.eps.clone(),
        paths.universe.tp.clone(),
        bottom,
    )?)?;
    let lift_eps = PulledBackLift::new(sq, term_lift)?;
    let connection = build_connection(fam, &lift_eps, guard)?;
    let homotopy = connection.vertical()?;
    let motive = motive_lift.family().clone();
    if c.then(&motive)? != pa.rho {
        return Err(Error::NonCommuting("c does not lie over the reflexivity paths".into()));
    }
    let lifted = motive_lift.lift(&pa.eps0.then(c)?, &homotopy)?;
    let j = cyl.delta(1, pa.carrier()).then(&lifted)?;
    Ok(DiagramJ {
        paths: pa,
        connection,
        motive,
        c: c.clone(),
        j,
    })
}

impl DiagramJ {
    /// Both triangles: `ρ;j = c` and `j;C = id`.
    pub fn check(&self) -> Vec<(&'static str, Verdict)> {
        vec![
            ("j_rho", eq_verdict(&self.paths.rho.then(&self.j), &Ok(self.c.clone()), "rho then j")),
            (
                "j_section",
                eq_verdict(&self.j.then(&self.motive), &Ok(GroupoidMap::identity(self.paths.carrier())), "j then motive"),
            ),
        ]
    }

    /// Whether `j` is among the fillers found by exhaustive search.
    pub fn found_by_search(&self, guard: &Guard) -> Result<bool> {
        let top = pins_from_map(&self.paths.rho, &self.c)
            .ok_or_else(|| Error::Invalid("reflexivity map is not injective".into()))?;
        let all = fillers(&top, &self.motive, &GroupoidMap::identity(self.paths.carrier()), guard, None)?;
        Ok(all.contains(&self.j))
    }
}
