//! Named verification suites. Each runs a battery of instances and returns a
//! [`Report`] with one record per instance.

use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::battery::{
    instance_rng, random_basic_instance, random_basic_pile, random_basic_rho, random_morphism_into, random_pile,
    random_rho, random_rigid_epi,
};
use crate::catalog::{catalog, groups_up_to_order_8, CatalogError, CatalogKind, NamedGroup};
use crate::embedding::{
    complete_to_pile_morphism, distinct_orbit_choice_exists, search_lifts, solve_basic_pile_ep, BasicPile,
    CompletionConfig, EmbeddingError,
};
use crate::group::{cyclic, GroupHom};
use crate::gset::{gsets_up_to_isomorphism, refine_to_g_partition, stabilizer_aligned_g_partition, GSet, Partition, Point};
use crate::io::{BasicMapJson, BasicPileJson, BoundMorphismJson, GSetJson, GroupJson, PartitionJson, PileJson};
use crate::oracle;
use crate::pile::{fiber_product, rigid_certificate, Pile};
use crate::presentation::{
    basic_pile_phnn, basic_pile_structure_prediction, build_hnn_prime_for_pile, build_phnn, hnn_to_phnn_kernel,
    hom_count, hom_profile, mod_l_prediction, mod_l_quotient, zeta_witness, HomCountProfile, Presentation,
    PresentationError,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Stab,
    GPartition,
    CartesianRigid,
    Completion,
    BasicEp,
    WithSection,
    HnnKernel,
    ModL,
    Section,
    PileHnnStructure,
    ZetaInjective,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Stab,
        Suite::GPartition,
        Suite::CartesianRigid,
        Suite::Completion,
        Suite::BasicEp,
        Suite::WithSection,
        Suite::HnnKernel,
        Suite::ModL,
        Suite::Section,
        Suite::PileHnnStructure,
        Suite::ZetaInjective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Stab => "stab",
            Suite::GPartition => "g-partition",
            Suite::CartesianRigid => "cartesian-rigid",
            Suite::Completion => "completion",
            Suite::BasicEp => "basic-ep",
            Suite::WithSection => "with-section",
            Suite::HnnKernel => "hnn-kernel",
            Suite::ModL => "mod-l",
            Suite::Section => "section",
            Suite::PileHnnStructure => "pile-hnn-structure",
            Suite::ZetaInjective => "zeta-injective",
        }
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Record {
    fn new(name: String, status: Status, detail: Option<String>, witness: Option<Value>) -> Self {
        Record { name, status, detail, witness }
    }

    fn pass(name: String) -> Self {
        Record::new(name, Status::Pass, None, None)
    }

    fn skip(name: String, why: &str) -> Self {
        Record::new(name, Status::Skip, Some(why.to_string()), None)
    }

    fn fail(name: String, why: impl Into<String>, witness: Value) -> Self {
        Record::new(name, Status::Fail, Some(why.into()), Some(witness))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub prime: usize,
    pub catalog: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    /// Records whose name starts with `prefix`.
    pub fn matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.name.starts_with(prefix))
    }
}

/// A single pile with `ρ`, replacing the random battery of the presentation suites.
#[derive(Clone, Debug)]
pub struct PileInstance {
    pub pile: Pile,
    pub rho: GroupHom,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub count: usize,
    pub max_group: usize,
    pub max_space: usize,
    pub prime: usize,
    pub catalog: CatalogKind,
    pub wall_time: bool,
    pub instance: Option<PileInstance>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            count: 100,
            max_group: 8,
            max_space: 6,
            prime: 2,
            catalog: CatalogKind::P3,
            wall_time: true,
            instance: None,
        }
    }
}

impl VerifyConfig {
    fn battery_groups(&self) -> Result<Vec<NamedGroup>, VerifyError> {
        Ok(catalog(self.prime, CatalogKind::P3)?.into_iter().filter(|g| g.group.order() <= self.max_group).collect())
    }

    fn profile_catalog(&self) -> Result<Vec<NamedGroup>, VerifyError> {
        Ok(catalog(self.prime, self.catalog)?)
    }
}

pub fn verify(suite: Suite, cfg: &VerifyConfig) -> Result<Report, VerifyError> {
    let start = Instant::now();
    let records = match suite {
        Suite::Stab => stab_suite(cfg),
        Suite::GPartition => g_partition_suite(cfg),
        Suite::CartesianRigid => cartesian_rigid_suite(cfg)?,
        Suite::Completion => completion_suite(cfg)?,
        Suite::BasicEp => basic_ep_suite(cfg)?,
        Suite::WithSection | Suite::HnnKernel | Suite::ModL | Suite::ZetaInjective => pile_pres_suite(suite, cfg)?,
        Suite::Section | Suite::PileHnnStructure => basic_pres_suite(suite, cfg)?,
    };
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    Ok(Report {
        suite: suite.name().to_string(),
        seed: cfg.seed,
        prime: cfg.prime,
        catalog: cfg.catalog.to_string(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        wall_time_ms: cfg.wall_time.then(|| start.elapsed().as_millis() as u64),
        records,
    })
}

fn sweep(cfg: &VerifyConfig) -> Vec<(String, GSet)> {
    groups_up_to_order_8()
        .into_iter()
        .filter(|g| g.group.order() <= cfg.max_group)
        .flat_map(|ng| {
            gsets_up_to_isomorphism(&ng.group, cfg.max_space)
                .into_iter()
                .enumerate()
                .map(move |(i, s)| (format!("{}/{i}", ng.name), s))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn gset_json(s: &GSet) -> Value {
    serde_json::to_value(GSetJson::from_gset(s, true)).expect("serializable")
}

fn stab_suite(cfg: &VerifyConfig) -> Vec<Record> {
    sweep(cfg)
        .into_par_iter()
        .map(|(name, s)| {
            let name = format!("stab/{name}");
            let blocks: Vec<Vec<Point>> =
                oracle::nonempty_subsets(s.size()).into_iter().filter(|u| oracle::is_block(&s, u)).collect();
            for u in &blocks {
                let su = s.setwise_stabilizer(u).expect("nonempty");
                for z in oracle::nonempty_subsets(u.len()) {
                    let z: Vec<Point> = z.iter().map(|&i| u[i]).collect();
                    let sz = s.setwise_stabilizer(&z).expect("nonempty");
                    if !sz.is_subset_of(&su) {
                        return Record::fail(name, "Stab(Z) ⊄ Stab(U)", json!({"gset": gset_json(&s), "U": u, "Z": z}));
                    }
                }
            }
            for t in s.points() {
                let mut meet = s.group().whole();
                for u in blocks.iter().filter(|u| u.contains(&t)) {
                    meet = meet.intersect(&s.setwise_stabilizer(u).expect("nonempty"));
                }
                if meet != s.stabilizer(t).expect("in range") {
                    return Record::fail(name, "G_t differs from the meet of block stabilizers", json!({"gset": gset_json(&s), "t": t}));
                }
            }
            Record::pass(name)
        })
        .collect()
}

fn g_partition_suite(cfg: &VerifyConfig) -> Vec<Record> {
    sweep(cfg)
        .into_par_iter()
        .map(|(name, s)| {
            let name = format!("g-partition/{name}");
            let n = s.size();
            let seeds = oracle::set_partitions(n);
            let valid: Vec<&Vec<Vec<Point>>> = seeds
                .iter()
                .filter(|q| oracle::is_g_partition(&s, q) && q.iter().all(|b| oracle::has_aligned_witness(&s, b)))
                .collect();
            for p in &seeds {
                let fail = |why: String| Record::fail(name.clone(), why, json!({"gset": gset_json(&s), "partition": {"blocks": p}}));
                let part = Partition::new(n, p.clone()).expect("set partition");
                let r = refine_to_g_partition(&s, &part);
                if !oracle::is_g_partition(&s, r.blocks()) || !oracle::refines(r.blocks(), p) {
                    return fail("refine_to_g_partition output is not a G-partition refining the input".into());
                }
                let (out, wit) = stabilizer_aligned_g_partition(&s, &part);
                if let Err(e) = oracle::check_aligned(&s, p, out.blocks(), &wit) {
                    return fail(format!("aligned partition: {e}"));
                }
                if !valid.iter().any(|q| oracle::refines(q, p)) {
                    return fail("no aligned G-partition refines the input".into());
                }
            }
            Record::pass(name)
        })
        .collect()
}

fn morphism_json(m: &crate::pile::PileMorphism) -> Value {
    serde_json::to_value(BoundMorphismJson::from_morphism(m)).expect("serializable")
}

fn cartesian_rigid_suite(cfg: &VerifyConfig) -> Result<Vec<Record>, VerifyError> {
    let groups = cfg.battery_groups()?;
    Ok((0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let name = format!("cartesian-rigid/{i}");
            let rng = &mut instance_rng(cfg.seed, i);
            let alpha = random_rigid_epi(rng, &groups, cfg.max_space, 1);
            let phi0 = random_morphism_into(rng, alpha.target(), &groups, cfg.max_space);
            let witness = || json!({"alpha": morphism_json(&alpha), "phi0": morphism_json(&phi0)});
            if rigid_certificate(&alpha).is_err() {
                return Record::skip(name, "bottom edge is not rigid");
            }
            match fiber_product(&alpha, &phi0) {
                Ok(fp) => match rigid_certificate(&fp.alpha_hat) {
                    Ok(_) => Record::pass(name),
                    Err(e) => Record::fail(name, format!("pulled-back edge: {e}"), witness()),
                },
                Err(e) => Record::fail(name, format!("fiber product: {e}"), witness()),
            }
        })
        .collect())
}

fn completion_suite(cfg: &VerifyConfig) -> Result<Vec<Record>, VerifyError> {
    let groups = cfg.battery_groups()?;
    let records: Vec<Vec<Record>> = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let rng = &mut instance_rng(cfg.seed, i);
            let alpha = random_rigid_epi(rng, &groups, 4, 4);
            let phi = random_morphism_into(rng, alpha.target(), &groups, 3);
            let names = ["completion", "refinement", "refinement-distinct-orbits"].map(|s| format!("{s}/{i}"));
            let mut lifts = Vec::new();
            search_lifts(phi.group_map(), alpha.group_map(), |h| {
                lifts.push(h.clone());
                if lifts.len() >= 256 {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })
            .expect("shared target");
            let Some(psi) = lifts.choose(rng).cloned() else {
                return names.map(|n| Record::skip(n, "no group-level lift")).to_vec();
            };
            let (g, b) = (phi.source(), alpha.source());
            let n = g.size();
            let k = rng.gen_range(1..=n.max(1));
            let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            let target = Partition::from_labels(labels);
            let witness = json!({
                "phi": morphism_json(&phi),
                "alpha": morphism_json(&alpha),
                "psi": psi.map(),
                "partition": PartitionJson::from_partition(&target),
            });
            let basic_holds = g.space().points().all(|t| {
                let img: Vec<_> = oracle::point_stabilizer(g.space(), t).iter().map(|&e| psi.apply(e)).collect();
                b.space().points().any(|y| {
                    let by = oracle::point_stabilizer(b.space(), y);
                    alpha.apply_point(y) == phi.apply_point(t) && img.iter().all(|e| by.contains(e))
                })
            });
            let cfg_c = CompletionConfig::refining(g, target.clone());
            let result = complete_to_pile_morphism(&psi, &phi, &alpha, &cfg_c);
            let mut out = Vec::new();
            let gamma = match (&result, basic_holds) {
                (Ok(c), true) => {
                    let check = oracle::check_lift(
                        g,
                        b,
                        (phi.group_map().map(), phi.space_map()),
                        (alpha.group_map().map(), alpha.space_map()),
                        (psi.map(), c.morphism.space_map()),
                    );
                    match check {
                        Ok(()) => out.push(Record::pass(names[0].clone())),
                        Err(e) => out.push(Record::fail(names[0].clone(), e, witness.clone())),
                    }
                    Some(c.morphism.clone())
                }
                (Err(EmbeddingError::NoWitness(_)), false) => {
                    out.push(Record::pass(names[0].clone()));
                    None
                }
                (Ok(_), false) => {
                    out.push(Record::fail(names[0].clone(), "completed although the witness condition fails", witness.clone()));
                    None
                }
                (Err(e), _) => {
                    out.push(Record::fail(names[0].clone(), e.to_string(), witness.clone()));
                    None
                }
            };
            let floor = cfg_c.floor_satisfied(b);
            let refine_record = |name: &String, applies: bool, why: &str| match (&gamma, applies) {
                (Some(m), true) if oracle::fibers_refine(m.space_map(), target.blocks()) => Record::pass(name.clone()),
                (Some(m), true) => {
                    let mut w = witness.clone();
                    w["space_map"] = json!(m.space_map());
                    Record::fail(name.clone(), "fibers do not refine the partition", w)
                }
                (None, _) => Record::skip(name.clone(), "no completion"),
                (_, false) => Record::skip(name.clone(), why),
            };
            out.push(refine_record(&names[1], floor, "multiplicity floor not met"));
            let distinct = floor && distinct_orbit_choice_exists(&psi, &phi, &alpha, &target);
            out.push(refine_record(&names[2], distinct, "no distinct-orbit choice"));
            out
        })
        .collect();
    Ok(records.into_iter().flatten().collect())
}

fn basic_ep_suite(cfg: &VerifyConfig) -> Result<Vec<Record>, VerifyError> {
    let groups = cfg.battery_groups()?;
    let covers: Vec<NamedGroup> = match catalog(cfg.prime, CatalogKind::P4) {
        Ok(c) => c,
        Err(_) => catalog(cfg.prime, CatalogKind::P3)?,
    };
    Ok((0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let name = format!("basic-ep/{i}");
            let rng = &mut instance_rng(cfg.seed, i);
            let inst = random_basic_instance(rng, &groups, &covers, cfg.max_space, 8);
            let (a, b) = (inst.alpha.target(), inst.alpha.source());
            let witness = || {
                json!({
                    "basic": BasicPileJson::from_basic(&inst.basic),
                    "phi": BasicMapJson::from_map(&inst.phi),
                    "alpha": morphism_json(&inst.alpha),
                })
            };
            let cert = match rigid_certificate(&inst.alpha) {
                Ok(c) => c,
                Err(e) => return Record::fail(name, format!("generated alpha not rigid: {e}"), witness()),
            };
            let sol = match solve_basic_pile_ep(&inst.basic, &inst.phi, &cert) {
                Ok(s) => s,
                Err(e) => return Record::fail(name, e.to_string(), witness()),
            };
            let am = inst.alpha.group_map().map();
            for (x, ((_, f), (h, gam))) in inst.basic.factors.iter().zip(inst.phi.factor_homs.iter().zip(&sol.factor_homs)).enumerate() {
                let y = sol.points[x];
                let by = oracle::point_stabilizer(b.space(), y);
                let ok = oracle::is_hom(f, b.group(), gam.map())
                    && f.elements().all(|e| am[gam.apply(e)] == h.apply(e) && by.contains(&gam.apply(e)))
                    && y < b.size()
                    && inst.alpha.apply_point(y) == inst.phi.points[x];
                if !ok {
                    return Record::fail(name, format!("factor {x} does not lift"), witness());
                }
            }
            let free_ok = sol.free_images.len() == inst.phi.free_images.len()
                && sol.free_images.iter().zip(&inst.phi.free_images).all(|(&s, &e)| s < b.group().order() && am[s] == e);
            if !free_ok || a.size() == 0 {
                return Record::fail(name, "free generators do not lift", witness());
            }
            Record::pass(name)
        })
        .collect())
}

struct PresInstance {
    pile: Pile,
    transversal: Vec<Point>,
    rho: GroupHom,
}

impl PresInstance {
    fn json(&self) -> Value {
        json!({
            "pile": PileJson::from_pile(&self.pile),
            "transversal": self.transversal,
            "rho": {"target": GroupJson::from_group(self.rho.target()), "map": self.rho.map()},
        })
    }
}

fn pres_instances(cfg: &VerifyConfig, max_group: usize) -> Result<Vec<PresInstance>, VerifyError> {
    if let Some(inst) = &cfg.instance {
        return Ok(vec![PresInstance {
            pile: inst.pile.clone(),
            transversal: inst.pile.space().orbit_representatives(),
            rho: inst.rho.clone(),
        }]);
    }
    let groups: Vec<NamedGroup> = cfg.battery_groups()?.into_iter().filter(|g| g.group.order() <= max_group).collect();
    let targets = catalog(cfg.prime, CatalogKind::P3)?;
    Ok((0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let rng = &mut instance_rng(cfg.seed, i);
            let rp = random_pile(rng, &groups, cfg.max_space);
            let stabs: Vec<_> = rp.pile.space().points().map(|t| rp.pile.stab(t)).collect();
            let (_, rho) = random_rho(rng, rp.pile.group(), &stabs, &targets);
            PresInstance { pile: rp.pile, transversal: rp.transversal, rho }
        })
        .collect())
}

fn compare(name: String, a: &HomCountProfile, b: &HomCountProfile, witness: impl FnOnce() -> Value) -> Record {
    match a.first_difference(b) {
        None => Record::pass(name),
        Some(i) => {
            let mut w = witness();
            w["first_difference"] = json!({"index": i, "left": a.entries.get(i), "right": b.entries.get(i)});
            Record::fail(name, "profiles differ", w)
        }
    }
}

fn pile_pres_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Record>, VerifyError> {
    let cat = cfg.profile_catalog()?;
    let max_group = if suite == Suite::ZetaInjective { cfg.max_group.min(8) } else { cfg.max_group };
    let instances = pres_instances(cfg, max_group)?;
    let p4 = if suite == Suite::ZetaInjective { catalog(cfg.prime, CatalogKind::P4).ok() } else { None };
    let mut records: Vec<Record> = instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let name = format!("{}/{i}", suite.name());
            let phnn = match build_phnn(&inst.pile, &inst.rho) {
                Ok(p) => p,
                Err(e) => return Record::fail(name, e.to_string(), inst.json()),
            };
            let run = || -> Result<Record, PresentationError> {
                Ok(match suite {
                    Suite::WithSection => {
                        let hnn = build_hnn_prime_for_pile(&inst.pile, &inst.transversal, &inst.rho, inst.rho.target())?;
                        compare(name.clone(), &hom_profile(&hnn, &cat), &hom_profile(&phnn, &cat), || inst.json())
                    }
                    Suite::HnnKernel => {
                        let (hnn, words) = hnn_to_phnn_kernel(&inst.pile, &inst.transversal, &inst.rho)?;
                        let q = hnn.quotient_by_closure(&words)?;
                        compare(name.clone(), &hom_profile(&q, &cat), &hom_profile(&phnn, &cat), || inst.json())
                    }
                    Suite::ModL => {
                        let q = mod_l_quotient(&phnn, 1)?;
                        let pred = mod_l_prediction(&inst.pile);
                        compare(name.clone(), &hom_profile(&q, &cat), &hom_profile(&pred, &cat), || inst.json())
                    }
                    _ => match &p4 {
                        None => Record::skip(name.clone(), "catalog p4 needs p = 2"),
                        Some(p4) => match zeta_witness(&phnn, p4) {
                            Some(w) => Record::new(name.clone(), Status::Pass, Some(format!("injective on G into {}", w.target)), None),
                            None => Record::fail(name.clone(), "no catalog quotient is injective on G", inst.json()),
                        },
                    },
                })
            };
            run().unwrap_or_else(|e| Record::fail(name.clone(), e.to_string(), inst.json()))
        })
        .collect();
    if suite == Suite::ModL && cfg.instance.is_none() {
        records.insert(0, fixed_point_mod_l(cfg, &cat)?);
    }
    Ok(records)
}

/// `G = G_t = L = C_p` on one point: both sides are one free letter.
fn fixed_point_mod_l(cfg: &VerifyConfig, cat: &[NamedGroup]) -> Result<Record, VerifyError> {
    let cp = cyclic(cfg.prime);
    let pile = Pile::new(GSet::trivial(&cp, 1));
    let phnn = build_phnn(&pile, &cp.identity_hom())?;
    let lhs = hom_profile(&mod_l_quotient(&phnn, 1)?, cat);
    let rhs = hom_profile(&mod_l_prediction(&pile), cat);
    let expected = HomCountProfile { entries: cat.iter().map(|q| (q.name.clone(), q.group.order() as u128)).collect() };
    let name = "mod-l/fixed-point".to_string();
    Ok(if lhs == expected && rhs == expected {
        Record::pass(name)
    } else {
        Record::fail(name, "profile differs from one free letter", json!({"left": lhs, "right": rhs}))
    })
}

fn basic_pres_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Record>, VerifyError> {
    let cat = cfg.profile_catalog()?;
    let groups = cfg.battery_groups()?;
    let targets = catalog(cfg.prime, CatalogKind::P3)?;
    let cp = cyclic(cfg.prime);
    let worked = (BasicPile { factors: vec![("t".into(), cp.clone())], free_rank: 0 }, cp.identity_hom());
    let mut records: Vec<Record> = (0..=cfg.count)
        .into_par_iter()
        .map(|i| {
            let name = format!("{}/{i}", suite.name());
            let (basic, rho) = if i == 0 {
                (worked.0.clone(), vec![worked.1.clone()])
            } else {
                let rng = &mut instance_rng(cfg.seed, i);
                let mut found = None;
                for _ in 0..16 {
                    let b = random_basic_pile(rng, &groups, 2, 1);
                    if let Some((_, r)) = random_basic_rho(rng, &b, &targets) {
                        found = Some((b, r));
                        break;
                    }
                }
                match found {
                    Some(x) => x,
                    None => return Record::skip(name, "no common L for the factors"),
                }
            };
            let l = rho[0].target().clone();
            let witness = || {
                json!({
                    "basic": BasicPileJson::from_basic(&basic),
                    "rho": rho.iter().map(|h| h.map().to_vec()).collect::<Vec<_>>(),
                    "L": GroupJson::from_group(&l),
                })
            };
            let phnn = match basic_pile_phnn(&basic, &rho, &l) {
                Ok(p) => p,
                Err(e) => return Record::fail(name, e.to_string(), witness()),
            };
            let nf = basic.factors.len();
            let (lhs, rhs) = match suite {
                Suite::Section => match mod_l_quotient(&phnn, nf) {
                    Ok(q) => (hom_profile(&q, &cat), hom_profile(&Presentation::free(basic.free_rank + nf), &cat)),
                    Err(e) => return Record::fail(name, e.to_string(), witness()),
                },
                _ => (hom_profile(&phnn, &cat), hom_profile(&basic_pile_structure_prediction(&basic, &l), &cat)),
            };
            if i == 0 && suite == Suite::PileHnnStructure {
                let direct: Vec<u128> =
                    cat.iter().map(|q| hom_count(&Presentation::of_group("C", &cp), &q.group) * q.group.order() as u128).collect();
                if lhs.entries.iter().map(|e| e.1).collect::<Vec<_>>() != direct {
                    return Record::fail(name, "worked instance differs from |Hom(C_p,Q)|·|Q|", witness());
                }
            }
            compare(name, &lhs, &rhs, witness)
        })
        .collect();
    if let Some(r) = records.first_mut() {
        r.name = format!("{}/worked-instance", suite.name());
    }
    Ok(records)
}

/// Convenience for callers that only need a verdict per suite.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<Report>, VerifyError> {
    Suite::ALL.iter().map(|&s| verify(s, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(count: usize) -> VerifyConfig {
        VerifyConfig { seed: 7, count, max_space: 4, wall_time: false, ..VerifyConfig::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("unknown".parse::<Suite>(), Err(VerifyError::UnknownSuite(_))));
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&verify(Suite::CartesianRigid, &small(10)).unwrap()).unwrap();
        let b = serde_json::to_string(&verify(Suite::CartesianRigid, &small(10)).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn small_runs_pass() {
        for s in [Suite::Stab, Suite::CartesianRigid, Suite::BasicEp, Suite::WithSection, Suite::ModL, Suite::Section] {
            let r = verify(s, &VerifyConfig { max_group: 4, ..small(6) }).unwrap();
            assert!(r.ok(), "{}: {:?}", s.name(), r.records.iter().find(|r| r.status == Status::Fail));
        }
    }

    #[test]
    fn single_instance_mode() {
        let c2 = cyclic(2);
        let cfg = VerifyConfig {
            instance: Some(PileInstance { pile: Pile::new(GSet::trivial(&c2, 1)), rho: c2.identity_hom() }),
            ..small(1)
        };
        let r = verify(Suite::ModL, &cfg).unwrap();
        assert_eq!((r.passed, r.failed), (1, 0));
    }
}
