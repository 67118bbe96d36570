//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the exit code with the text for stdout and stderr.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{catalog, CatalogKind};
use crate::embedding::{
    quotient_ep_transfer, solve_basic_pile_ep, solve_pair_ep, solve_pile_ep_bruteforce, solve_pile_ep_via_pairs,
    EmbeddingError, Solution,
};
use crate::group::{enumerate_homs, Elem, GroupHom, Subgroup};
use crate::gset::{is_g_partition, refine_to_g_partition, stabilizer_aligned_g_partition, Point};
use crate::io::{
    read_json_arg, BasicEpJson, BasicMapJson, BoundMorphismJson, GSetJson, GroupJson, GroupRef, IoError,
    MorphismJson, PairEpJson, PartitionJson, PileEpJson, PileJson, PresentationJson,
};
use crate::pile::{
    check_epi, check_rigid, connect, decompose, fiber_product, quotient_pile, standard_extension, tilde_closure, Pile,
    PileError, PileMorphism,
};
use crate::presentation::{
    basic_pile_phnn, build_hnn, build_hnn_prime_for_pile, build_phnn, hom_count, hom_profile, mod_l_quotient,
    PresentationError, Word,
};
use crate::verify::{verify, PileInstance, Suite, VerifyConfig, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSOLVABLE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "piles", version, about = "Finite group piles, embedding problems and pile HNN-extensions")]
pub struct Cli {
    /// Seed for random batteries.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Hom-count catalog: p3 or p4.
    #[arg(long, global = true, default_value = "p3")]
    pub catalog: String,
    #[arg(long, global = true, default_value_t = 2)]
    pub prime: usize,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Leave wall-clock data out of reports.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite groups given by multiplication tables.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Right G-sets and partitions.
    #[command(subcommand)]
    Gset(GsetCmd),
    /// Piles and their morphisms.
    #[command(subcommand)]
    Pile(PileCmd),
    /// Embedding problems.
    #[command(subcommand)]
    Ep(EpCmd),
    /// Presentations and homomorphism counts.
    #[command(subcommand)]
    Pres(PresCmd),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    Validate {
        #[arg(long)]
        group: String,
    },
    Subgroup {
        #[arg(long)]
        group: String,
        #[arg(long)]
        gens: String,
    },
    NormalClosure {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
    },
    Quotient {
        #[arg(long)]
        group: String,
        #[arg(long)]
        normal: String,
    },
    Homs {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GsetCmd {
    Stabilizer {
        #[arg(long)]
        gset: String,
        #[arg(long)]
        point: Point,
    },
    SetwiseStabilizer {
        #[arg(long)]
        gset: String,
        #[arg(long)]
        set: String,
    },
    IsGPartition {
        #[arg(long)]
        gset: String,
        #[arg(long)]
        partition: String,
    },
    Refine {
        #[arg(long)]
        gset: String,
        #[arg(long)]
        partition: String,
    },
    Align {
        #[arg(long)]
        gset: String,
        #[arg(long)]
        partition: String,
    },
}

/// A morphism file with source and target inline, or a bare map file with
/// `--source` and `--target`.
#[derive(Args, Debug)]
pub struct MorphismArgs {
    #[arg(long)]
    pub morphism: String,
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum PileCmd {
    CheckMorphism(MorphismArgs),
    CheckEpi(MorphismArgs),
    CheckRigid(MorphismArgs),
    StandardExt {
        #[arg(long)]
        group: String,
        /// `[["label", [members...]], ...]`
        #[arg(long)]
        subgroups: String,
    },
    Quotient {
        #[arg(long)]
        pile: String,
        #[arg(long)]
        normal: String,
    },
    Tilde {
        #[arg(long)]
        pile: String,
        #[arg(long)]
        normal: String,
    },
    FiberProduct {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        phi0: String,
    },
    Connect {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    Decompose {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        n0: String,
        #[arg(long)]
        partition: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum EpCmd {
    SolvePair {
        #[arg(long)]
        ep: String,
    },
    SolvePile {
        #[arg(long)]
        ep: String,
        /// Solve through the group-level problem of a fiber product.
        #[arg(long)]
        via_pairs: bool,
    },
    SolveBasic {
        #[arg(long)]
        ep: String,
    },
    TransferQuotient {
        #[arg(long)]
        ep: String,
        #[arg(long)]
        normal: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum PresCmd {
    BuildHnn {
        #[arg(long)]
        group: String,
        /// `[["t", [members of G_t], [images]], ...]`
        #[arg(long)]
        stable: String,
    },
    BuildHnnPrime {
        #[arg(long)]
        pile: String,
        /// Points carrying stable letters; defaults to the least point of each orbit.
        #[arg(long)]
        transversal: Option<String>,
        #[arg(long, default_value = "id")]
        rho: String,
    },
    BuildPhnn {
        #[arg(long, conflicts_with = "basic")]
        pile: Option<String>,
        /// A basic pile; `--rho` then lists one map per factor and `--l` names L.
        #[arg(long)]
        basic: Option<String>,
        #[arg(long, default_value = "id")]
        rho: String,
        #[arg(long)]
        l: Option<String>,
    },
    Quotient {
        #[arg(long)]
        pres: String,
        #[arg(long)]
        words: String,
    },
    ModL {
        #[arg(long)]
        pres: String,
        #[arg(long, default_value_t = 1)]
        factor: usize,
    },
    HomCount {
        #[arg(long)]
        pres: String,
        #[arg(long)]
        target: String,
    },
    HomProfile {
        #[arg(long)]
        pres: String,
    },
    CompareProfiles {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 8)]
    pub max_group: usize,
    #[arg(long, default_value_t = 6)]
    pub max_space: usize,
    /// Run the presentation suites on this pile only.
    #[arg(long)]
    pub pile: Option<String>,
    #[arg(long, default_value = "id")]
    pub rho: String,
}

/// Exit code and output text of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    data: Option<Value>,
}

impl Failure {
    fn invalid(kind: &'static str, message: impl ToString) -> Self {
        Failure { code: EXIT_INVALID, kind, message: message.to_string(), data: None }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Pile(p) => p.into(),
            IoError::Embedding(x) => x.into(),
            other => Failure::invalid("InvalidInput", other),
        }
    }
}

impl From<PileError> for Failure {
    fn from(e: PileError) -> Self {
        match e {
            PileError::Invariant(_) => Failure { code: EXIT_INVARIANT, kind: "Invariant", message: e.to_string(), data: None },
            other => Failure::invalid(pile_error_kind(&other), other),
        }
    }
}

fn pile_error_kind(e: &PileError) -> &'static str {
    match e {
        PileError::NotEquivariant { .. } => "NotEquivariant",
        PileError::NotSurjectiveOnGroups(_) => "NotSurjectiveOnGroups",
        PileError::NotSurjectiveOnPoints(_) => "NotSurjectiveOnPoints",
        PileError::NoStabilizerWitness(_) => "NoStabilizerWitness",
        PileError::StabilizerNotInjective(_) => "StabilizerNotInjective",
        PileError::OrbitMapNotInjective(..) => "OrbitMapNotInjective",
        PileError::KernelNotContained(_) => "KernelNotContained",
        PileError::FibersNotFiner(..) => "FibersNotFiner",
        PileError::StabilizersNotDisjoint(..) => "StabilizersNotDisjoint",
        PileError::MismatchedTarget => "MismatchedTarget",
        _ => "InvalidInput",
    }
}

impl From<EmbeddingError> for Failure {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::Invariant(_) => Failure { code: EXIT_INVARIANT, kind: "Invariant", message: e.to_string(), data: None },
            EmbeddingError::Pile(p) => p.into(),
            other => Failure::invalid("InvalidProblem", other),
        }
    }
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        let kind = match &e {
            PresentationError::InvalidWord { .. } => "InvalidWord",
            PresentationError::PhiNotInjective(_) => "PhiNotInjective",
            PresentationError::RhoNotInjectiveOn(_) => "RhoNotInjectiveOn",
            PresentationError::NotTransversal(_) => "NotTransversal",
            PresentationError::BadFactorIndex(_) => "BadFactorIndex",
            PresentationError::SquareDoesNotCommute(_) => "SquareDoesNotCommute",
            PresentationError::RelatorNotPreserved(_) => "RelatorNotPreserved",
            _ => "InvalidInput",
        };
        Failure::invalid(kind, e)
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        let kind = match e {
            VerifyError::UnknownSuite(_) => "UnknownSuite",
            _ => "InvalidInput",
        };
        Failure::invalid(kind, e)
    }
}

impl From<crate::group::GroupError> for Failure {
    fn from(e: crate::group::GroupError) -> Self {
        Failure::invalid("InvalidGroup", e)
    }
}

impl From<crate::gset::GSetError> for Failure {
    fn from(e: crate::gset::GSetError) -> Self {
        Failure::invalid("InvalidGSet", e)
    }
}

impl From<crate::catalog::CatalogError> for Failure {
    fn from(e: crate::catalog::CatalogError) -> Self {
        Failure::invalid("InvalidCatalog", e)
    }
}

/// Successful output: JSON and an exit code (nonzero for unsolvable or mismatch).
struct Output {
    code: i32,
    value: Value,
}

fn ok(v: impl Serialize) -> Result<Output, Failure> {
    Ok(Output { code: EXIT_OK, value: serde_json::to_value(v).expect("serializable") })
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: error_json("UsageError", &text, None) }
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.value).expect("serializable") + "\n";
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    return Outcome {
                        code: EXIT_INVALID,
                        stdout: String::new(),
                        stderr: error_json("OutputError", &e.to_string(), None),
                    };
                }
            }
            Outcome { code: out.code, stdout: text, stderr: String::new() }
        }
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: error_json(f.kind, &f.message, f.data) },
    }
}

fn error_json(kind: &str, message: &str, data: Option<Value>) -> String {
    let mut v = json!({"error": kind, "message": message});
    if let Some(d) = data {
        v["data"] = d;
    }
    serde_json::to_string(&v).expect("serializable") + "\n"
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Group(c) => group_cmd(c),
        Command::Gset(c) => gset_cmd(c),
        Command::Pile(c) => pile_cmd(c),
        Command::Ep(c) => ep_cmd(c),
        Command::Pres(c) => pres_cmd(cli, c),
        Command::Verify(v) => verify_cmd(cli, v),
    }
}

fn load_group(arg: &str) -> Result<crate::group::FiniteGroup, Failure> {
    Ok(read_json_arg::<GroupRef>(arg)?.resolve()?)
}

fn load_elems(arg: &str) -> Result<Vec<Elem>, Failure> {
    Ok(read_json_arg(arg)?)
}

fn load_pile(arg: &str) -> Result<Pile, Failure> {
    Ok(read_json_arg::<PileJson>(arg)?.to_pile()?)
}

fn load_morphism(arg: &str) -> Result<PileMorphism, Failure> {
    Ok(read_json_arg::<BoundMorphismJson>(arg)?.to_morphism()?)
}

fn load_morphism_args(m: &MorphismArgs) -> Result<PileMorphism, Failure> {
    match (&m.source, &m.target) {
        (Some(s), Some(t)) => Ok(read_json_arg::<MorphismJson>(&m.morphism)?.to_morphism(&load_pile(s)?, &load_pile(t)?)?),
        (None, None) => load_morphism(&m.morphism),
        _ => Err(Failure::invalid("InvalidInput", "give both --source and --target or neither")),
    }
}

fn members(s: &Subgroup) -> Value {
    json!({"members": s.members()})
}

fn group_cmd(c: &GroupCmd) -> Result<Output, Failure> {
    match c {
        GroupCmd::Validate { group } => {
            let g = load_group(group)?;
            ok(json!({"order": g.order(), "abelian": g.is_abelian(), "prime_power_base": g.prime_power_base()}))
        }
        GroupCmd::Subgroup { group, gens } => ok(members(&load_group(group)?.subgroup_generated(&load_elems(gens)?)?)),
        GroupCmd::NormalClosure { group, set } => ok(members(&load_group(group)?.normal_closure(&load_elems(set)?)?)),
        GroupCmd::Quotient { group, normal } => {
            let g = load_group(group)?;
            let n = Subgroup::new(&g, &load_elems(normal)?)?;
            let (q, pi) = g.quotient(&n)?;
            ok(json!({"group": GroupJson::from_group(&q), "projection": pi.map()}))
        }
        GroupCmd::Homs { source, target } => {
            let (s, t) = (load_group(source)?, load_group(target)?);
            let homs = enumerate_homs(&s, &s.generators(), &t)?;
            ok(json!({"count": homs.len(), "homs": homs.iter().map(|h| h.map()).collect::<Vec<_>>()}))
        }
    }
}

fn gset_cmd(c: &GsetCmd) -> Result<Output, Failure> {
    let load = |arg: &str| -> Result<crate::gset::GSet, Failure> { Ok(read_json_arg::<GSetJson>(arg)?.to_gset(None)?) };
    let partition = |arg: &str, n: usize| -> Result<crate::gset::Partition, Failure> {
        Ok(read_json_arg::<PartitionJson>(arg)?.to_partition(n)?)
    };
    match c {
        GsetCmd::Stabilizer { gset, point } => ok(members(&load(gset)?.stabilizer(*point)?)),
        GsetCmd::SetwiseStabilizer { gset, set } => {
            let z: Vec<Point> = read_json_arg(set)?;
            ok(members(&load(gset)?.setwise_stabilizer(&z)?))
        }
        GsetCmd::IsGPartition { gset, partition: p } => {
            let s = load(gset)?;
            ok(json!({"g_partition": is_g_partition(&s, &partition(p, s.size())?)}))
        }
        GsetCmd::Refine { gset, partition: p } => {
            let s = load(gset)?;
            ok(PartitionJson::from_partition(&refine_to_g_partition(&s, &partition(p, s.size())?)))
        }
        GsetCmd::Align { gset, partition: p } => {
            let s = load(gset)?;
            let (out, witnesses) = stabilizer_aligned_g_partition(&s, &partition(p, s.size())?);
            ok(json!({"blocks": out.blocks(), "witnesses": witnesses}))
        }
    }
}

fn pile_cmd(c: &PileCmd) -> Result<Output, Failure> {
    match c {
        PileCmd::CheckMorphism(m) => {
            let m = load_morphism_args(m)?;
            ok(json!({"morphism": true, "fibers": m.fibers().blocks()}))
        }
        PileCmd::CheckEpi(m) => {
            let cert = check_epi(&load_morphism_args(m)?)?;
            ok(json!({"epi": true, "witness": cert.witness}))
        }
        PileCmd::CheckRigid(m) => {
            let cert = check_rigid(&check_epi(&load_morphism_args(m)?)?)?;
            ok(json!({"rigid": true, "witness": cert.epi.witness, "orbit_map": cert.orbit_map}))
        }
        PileCmd::StandardExt { group, subgroups } => {
            let g = load_group(group)?;
            let raw: Vec<(String, Vec<Elem>)> = read_json_arg(subgroups)?;
            let reps = raw
                .into_iter()
                .map(|(l, m)| Ok((l, Subgroup::new(&g, &m)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            let ext = standard_extension(&g, &reps)?;
            ok(json!({"pile": PileJson::from_pile(&ext.pile), "labels": ext.labels, "base_points": ext.base_points}))
        }
        PileCmd::Quotient { pile, normal } => {
            let p = load_pile(pile)?;
            let n = Subgroup::new(p.group(), &load_elems(normal)?)?;
            let (q, m) = quotient_pile(&p, &n)?;
            let rigid = check_epi(&m).and_then(|e| check_rigid(&e)).is_ok();
            ok(json!({"pile": PileJson::from_pile(&q), "morphism": MorphismJson::from_morphism(&m), "rigid": rigid}))
        }
        PileCmd::Tilde { pile, normal } => {
            let p = load_pile(pile)?;
            let n = Subgroup::new(p.group(), &load_elems(normal)?)?;
            ok(members(&tilde_closure(&p, &n)?))
        }
        PileCmd::FiberProduct { alpha, phi0 } => {
            let fp = fiber_product(&load_morphism(alpha)?, &load_morphism(phi0)?)?;
            ok(json!({
                "pile": PileJson::from_pile(&fp.pile),
                "p": MorphismJson::from_morphism(&fp.p),
                "alpha_hat": MorphismJson::from_morphism(&fp.alpha_hat),
                "group_pairs": fp.group_pairs,
                "point_pairs": fp.point_pairs,
            }))
        }
        PileCmd::Connect { phi, psi } => {
            let a = connect(&load_morphism(phi)?, &load_morphism(psi)?)?;
            ok(BoundMorphismJson::from_morphism(&a))
        }
        PileCmd::Decompose { phi, n0, partition } => {
            let phi = load_morphism(phi)?;
            let n0 = Subgroup::new(phi.source().group(), &load_elems(n0)?)?;
            let x = read_json_arg::<PartitionJson>(partition)?.to_partition(phi.source().size())?;
            let d = decompose(&phi, &n0, &x)?;
            ok(json!({
                "pile": PileJson::from_pile(&d.pile),
                "psi": MorphismJson::from_morphism(&d.psi),
                "alpha": MorphismJson::from_morphism(&d.alpha),
                "kernel": d.kernel.members(),
                "witnesses": d.witnesses,
            }))
        }
    }
}

fn solution_output<T, F: FnOnce(&T) -> Value>(s: Solution<T>, render: F) -> Result<Output, Failure> {
    match s {
        Solution::Solved(x) => Ok(Output { code: EXIT_OK, value: json!({"solved": true, "solution": render(&x)}) }),
        Solution::Unsolvable { candidates } => {
            Ok(Output { code: EXIT_UNSOLVABLE, value: json!({"solved": false, "candidates": candidates}) })
        }
    }
}

fn ep_cmd(c: &EpCmd) -> Result<Output, Failure> {
    match c {
        EpCmd::SolvePair { ep } => {
            let problem = read_json_arg::<PairEpJson>(ep)?.to_problem()?;
            solution_output(solve_pair_ep(&problem)?, |h: &GroupHom| json!(h.map()))
        }
        EpCmd::SolvePile { ep, via_pairs } => {
            let problem = read_json_arg::<PileEpJson>(ep)?.to_problem()?;
            let s = if *via_pairs { solve_pile_ep_via_pairs(&problem)? } else { solve_pile_ep_bruteforce(&problem)? };
            solution_output(s, |m: &PileMorphism| json!(MorphismJson::from_morphism(m)))
        }
        EpCmd::SolveBasic { ep } => {
            let raw: BasicEpJson = read_json_arg(ep)?;
            let basic = raw.basic.to_basic(None)?;
            let a = raw.target.to_pile()?;
            let b = raw.cover.to_pile()?;
            let alpha = raw.alpha.to_morphism(&b, &a)?;
            let phi = raw.phi.to_map(&basic, a.group())?;
            let cert = check_rigid(&check_epi(&alpha)?)?;
            let sol = solve_basic_pile_ep(&basic, &phi, &cert)?;
            ok(json!({"solved": true, "solution": BasicMapJson::from_map(&sol)}))
        }
        EpCmd::TransferQuotient { ep, normal } => {
            let problem = read_json_arg::<PileEpJson>(ep)?.to_problem()?;
            let n = Subgroup::new(problem.phi().source().group(), &load_elems(normal)?)?;
            let t = quotient_ep_transfer(&problem, &n)?;
            ok(json!({
                "tilde": t.tilde.members(),
                "projection": MorphismJson::from_morphism(&t.projection),
                "problem": PileEpJson::from_problem(&t.problem),
            }))
        }
    }
}

/// `id` or `{"target": group, "map": [...]}`.
fn load_rho(arg: &str, g: &crate::group::FiniteGroup) -> Result<GroupHom, Failure> {
    if arg == "id" {
        return Ok(g.identity_hom());
    }
    #[derive(serde::Deserialize)]
    struct RhoJson {
        target: GroupRef,
        map: Vec<Elem>,
    }
    let r: RhoJson = read_json_arg(arg)?;
    Ok(GroupHom::new(g, &r.target.resolve()?, r.map)?)
}

fn load_pres(arg: &str) -> Result<crate::presentation::Presentation, Failure> {
    Ok(read_json_arg::<PresentationJson>(arg)?.to_presentation()?)
}

fn pres_json(p: &crate::presentation::Presentation) -> Result<Output, Failure> {
    ok(PresentationJson::from_presentation(p))
}

fn pres_cmd(cli: &Cli, c: &PresCmd) -> Result<Output, Failure> {
    let cat = || -> Result<Vec<crate::catalog::NamedGroup>, Failure> {
        let kind: CatalogKind = cli.catalog.parse()?;
        Ok(catalog(cli.prime, kind)?)
    };
    match c {
        PresCmd::BuildHnn { group, stable } => {
            let g = load_group(group)?;
            let raw: Vec<(String, Vec<Elem>, Vec<Elem>)> = read_json_arg(stable)?;
            let stable = raw
                .into_iter()
                .map(|(l, m, img)| Ok((l, Subgroup::new(&g, &m)?, img)))
                .collect::<Result<Vec<_>, Failure>>()?;
            pres_json(&build_hnn(&g, &stable)?)
        }
        PresCmd::BuildHnnPrime { pile, transversal, rho } => {
            let p = load_pile(pile)?;
            let t0: Vec<Point> = match transversal {
                Some(t) => read_json_arg(t)?,
                None => p.space().orbit_representatives(),
            };
            let rho = load_rho(rho, p.group())?;
            pres_json(&build_hnn_prime_for_pile(&p, &t0, &rho, rho.target())?)
        }
        PresCmd::BuildPhnn { pile, basic, rho, l } => match (pile, basic) {
            (Some(pile), None) => {
                let p = load_pile(pile)?;
                pres_json(&build_phnn(&p, &load_rho(rho, p.group())?)?)
            }
            (None, Some(basic)) => {
                let b = read_json_arg::<crate::io::BasicPileJson>(basic)?.to_basic(None)?;
                let l = load_group(l.as_deref().ok_or_else(|| Failure::invalid("InvalidInput", "--basic needs --l"))?)?;
                let maps: Vec<Vec<Elem>> = read_json_arg(rho)?;
                if maps.len() != b.factors.len() {
                    return Err(Failure::invalid("InvalidInput", "one rho map per factor expected"));
                }
                let homs = b
                    .factors
                    .iter()
                    .zip(maps)
                    .map(|((_, f), m)| Ok(GroupHom::new(f, &l, m)?))
                    .collect::<Result<Vec<_>, Failure>>()?;
                pres_json(&basic_pile_phnn(&b, &homs, &l)?)
            }
            _ => Err(Failure::invalid("InvalidInput", "give exactly one of --pile and --basic")),
        },
        PresCmd::Quotient { pres, words } => {
            let words: Vec<Word> = read_json_arg(words)?;
            pres_json(&load_pres(pres)?.quotient_by_closure(&words)?)
        }
        PresCmd::ModL { pres, factor } => pres_json(&mod_l_quotient(&load_pres(pres)?, *factor)?),
        PresCmd::HomCount { pres, target } => {
            ok(json!({"count": hom_count(&load_pres(pres)?, &load_group(target)?)}))
        }
        PresCmd::HomProfile { pres } => ok(hom_profile(&load_pres(pres)?, &cat()?)),
        PresCmd::CompareProfiles { left, right } => {
            let cat = cat()?;
            let a = hom_profile(&load_pres(left)?, &cat);
            let b = hom_profile(&load_pres(right)?, &cat);
            match a.first_difference(&b) {
                None => ok(json!({"equal": true, "profile": a})),
                Some(i) => Ok(Output {
                    code: EXIT_MISMATCH,
                    value: json!({"equal": false, "first_difference": {
                        "index": i, "left": a.entries.get(i), "right": b.entries.get(i)}}),
                }),
            }
        }
    }
}

fn verify_cmd(cli: &Cli, v: &VerifyArgs) -> Result<Output, Failure> {
    let suite: Suite = v.suite.parse()?;
    let instance = match &v.pile {
        Some(p) => {
            let pile = load_pile(p)?;
            let rho = load_rho(&v.rho, pile.group())?;
            Some(PileInstance { pile, rho })
        }
        None => None,
    };
    let cfg = VerifyConfig {
        seed: cli.seed,
        count: v.count,
        max_group: v.max_group,
        max_space: v.max_space,
        prime: cli.prime,
        catalog: cli.catalog.parse()?,
        wall_time: !cli.no_timestamp,
        instance,
    };
    let report = verify(suite, &cfg)?;
    let code = if report.ok() { EXIT_OK } else { EXIT_INVARIANT };
    Ok(Output { code, value: serde_json::to_value(&report).expect("serializable") })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("piles").chain(args.iter().copied()))
    }

    #[test]
    fn standard_ext_one_point() {
        let out = run_args(&["pile", "standard-ext", "--group", r#""C2""#, "--subgroups", r#"[["t", [0,1]]]"#]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["pile"]["space"]["size"], 1);
    }

    #[test]
    fn hom_count_c2() {
        let pres = r#"{"factors":["C2"],"free_letters":0,"relators":[]}"#;
        let out = run_args(&["pres", "hom-count", "--pres", pres, "--target", r#""C2""#]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v, json!({"count": 2}));
    }

    #[test]
    fn unknown_suite_exits_2() {
        let out = run_args(&["verify", "unknown"]);
        assert_eq!(out.code, EXIT_INVALID);
        let v: Value = serde_json::from_str(&out.stderr).unwrap();
        assert_eq!(v["error"], "UnknownSuite");
    }

    #[test]
    fn compare_profiles_mismatch_exits_4() {
        let a = r#"{"factors":["C2"],"free_letters":0,"relators":[]}"#;
        let b = r#"{"factors":[],"free_letters":1,"relators":[]}"#;
        let out = run_args(&["pres", "compare-profiles", "--left", a, "--right", b]);
        assert_eq!(out.code, EXIT_MISMATCH);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["first_difference"]["index"], 2);
    }
}
