use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};

use crate::algcore::{index_one_coordinates, AlgError};
use crate::bialgd::{
    bialgebroid_a, bialgebroid_b, double_dual_bijective, dual_bialgebroid, duality_pairing_check, invariants_a, left_dual_identification,
    pairing_symmetries, unmirrored_bracket_symmetries, smash_product, verify_action, AxiomReport, ConcreteA, ConcreteB, DualKind,
};
use crate::checks::{Check, CheckList, Sampler};
use crate::extcore::{
    classify, end_iso_props, end_right, m_central_tensors, CentralizerChain, ExtError, ExtensionProfile, IsoCheck, Quasibasis, TensorPower,
};
use crate::frobtower::{build_tower, d2_frobenius_props, find_frobenius_system, os_actions, pairing_identity, psi_isos, FrobeniusSearch};
use crate::morita::{build_context, progenerator_checks, right_side_duals, step_three_centralizer, MuR};
use crate::quantum::{
    biseparable_pairing_check, conjugation_identity, hopf_from_irreducible_with, is_coordinate_sum, prepare_from, qf_instance_check,
    weak_hopf_verify_with, D2Context,
};

use super::job::{Job, Task};
use super::report::{mat_value, vec_value, Dims, Flag, Profile, Report, Section};

/// Runs the job's tasks in order. Deterministic in `(job, seed)` apart from timings.
pub fn run(job: &Job) -> Report {
    let mut report = Report {
        name: job.name.clone(),
        field: job.field.to_string(),
        seed: job.seed,
        check_level: job.check_level,
        tasks: job.tasks.clone(),
        profile: None,
        witnesses: BTreeMap::new(),
        sections: Vec::new(),
        timings: Vec::new(),
    };
    if job.tasks.is_empty() {
        return report;
    }
    let (profile, chain) = match classify(&job.ext) {
        Ok(pc) => pc,
        Err(e) => {
            let mut s = Section::new(job.tasks[0]);
            s.fail(format!("classification failed: {e}"));
            report.sections.push(s);
            return report;
        }
    };
    let mut st = State { job, sampler: Sampler::new(job.check_level, job.seed), profile, chain, search: None, built: None, ctx: None };
    let started = Instant::now();
    let (p, w) = st.profile_report();
    report.profile = Some(p);
    report.witnesses = w;
    let mut first = Some(started);
    for &t in &job.tasks {
        let t0 = first.take().unwrap_or_else(Instant::now);
        let mut s = Section::new(t);
        match t {
            Task::Analyze => st.analyze(&mut s),
            Task::D2 => st.d2(&mut s),
            Task::Morita => st.morita(&mut s),
            Task::Bialgebroid => st.bialgebroid(&mut s),
            Task::Frobenius => st.frobenius(&mut s, &mut report.witnesses),
            Task::Qf => s.add(qf_instance_check(&st.profile)),
            Task::Weakhopf => st.weakhopf(&mut s, &mut report.witnesses),
            Task::Hopf => st.hopf(&mut s, &mut report.witnesses),
            Task::All => unreachable!("expanded during validation"),
        }
        s.settle();
        report.sections.push(s);
        report.timings.push((t, t0.elapsed().as_secs_f64()));
    }
    report
}

struct State<'a> {
    job: &'a Job,
    sampler: Sampler,
    profile: ExtensionProfile,
    chain: CentralizerChain,
    search: Option<FrobeniusSearch>,
    built: Option<Result<(ConcreteA, ConcreteB), String>>,
    ctx: Option<Result<D2Context, ExtError>>,
}

/// Hypothesis failures and non-separable bases are refusals; anything else is an alarm.
fn dispose(s: &mut Section, e: &ExtError) {
    match e {
        ExtError::Hypothesis(w) => s.refuse(w.clone()),
        ExtError::Alg(AlgError::NotSeparable) => s.refuse("the centralizer R is not separable"),
        ExtError::Alg(AlgError::IndexOneNotFound) => s.refuse(e.to_string()),
        _ => s.fail(e.to_string()),
    }
}

fn flag(name: &str, value: bool, yes: &str, no: &str) -> Flag {
    Flag { name: name.into(), value: Some(value), evidence: if value { yes } else { no }.into() }
}

fn axioms(prefix: &str, r: &AxiomReport) -> CheckList {
    let mut c = CheckList::new();
    for a in &r.results {
        c.push_witness(format!("{prefix}: {}", a.name), if a.pass { None } else { Some(format!("{:?}", a.witness.clone().unwrap_or_default())) });
    }
    c
}

fn iso(s: &mut Section, name: &str, r: Result<IsoCheck, ExtError>) {
    match r {
        Ok(i) => s.checks.push(Check { name: format!("{} ({} → {})", i.name, i.domain_dim, i.codomain_dim), pass: true, witness: None }),
        Err(e) => s.checks.push(Check { name: name.into(), pass: false, witness: Some(e.to_string()) }),
    }
}

fn quasibasis_value(q: &Quasibasis) -> Value {
    Value::Array(q.pairs.iter().map(|(b, beta)| json!({ "b": vec_value(b), "beta": mat_value(beta) })).collect())
}

impl State<'_> {
    fn search(&mut self) -> &FrobeniusSearch {
        let (ext, seed) = (&self.job.ext, self.job.seed);
        self.search.get_or_insert_with(|| find_frobenius_system(ext, seed))
    }

    fn built(&mut self) -> Result<&(ConcreteA, ConcreteB), String> {
        self.ensure_built();
        self.built.as_ref().expect("set").as_ref().map_err(|e| e.clone())
    }

    fn ensure_built(&mut self) {
        if self.built.is_none() {
            let (ext, chain) = (&self.job.ext, &self.chain);
            let r = match (&self.profile.left_quasibasis, &self.profile.right_quasibasis) {
                (Some(l), Some(r)) => bialgebroid_a(ext, chain, l, r).and_then(|a| Ok((a, bialgebroid_b(ext, chain, l)?))).map_err(|e| e.to_string()),
                (l, r) => Err(missing_sides(l.is_some(), r.is_some())),
            };
            self.built = Some(r);
        }
    }

    fn ctx(&mut self) -> Result<&D2Context, ExtError> {
        if self.ctx.is_none() {
            self.search();
            let built = self.built().ok().cloned();
            let search = self.search.as_ref().expect("searched");
            self.ctx = Some(prepare_from(&self.job.ext, self.profile.clone(), self.chain.clone(), search, built));
        }
        self.ctx.as_ref().expect("set").as_ref().map_err(|e| e.clone())
    }

    fn profile_report(&mut self) -> (Profile, BTreeMap<String, Value>) {
        let ext = &self.job.ext;
        let p = &self.profile;
        let mut w = BTreeMap::new();
        let dims = Dims {
            n: p.dim_n,
            m: p.dim_m,
            r: p.dim_r,
            a: p.dim_a,
            b: p.dim_b,
            c: step_three_centralizer(ext, &self.chain).dim(),
            end_m_n: p.dim_end_m_n,
            m1: p.dim_t2,
            m2: TensorPower::new(ext, 3).dim(),
        };
        let mut flags = vec![flag("proper", p.proper, "ι is injective", "ι has a nonzero kernel")];
        for (name, q, key, target) in [
            ("leftD2", &p.left_quasibasis, "leftQuasibasis", "m ↦ m ⊗ 1"),
            ("rightD2", &p.right_quasibasis, "rightQuasibasis", "m ↦ 1 ⊗ m"),
        ] {
            if let Some(q) = q {
                w.insert(key.to_string(), quasibasis_value(q));
            }
            flags.push(flag(
                name,
                q.is_some(),
                &format!("witnesses.{key}"),
                &format!("certified none: {target} is outside the span of the basis pairs of B × A"),
            ));
        }
        flags.push(flag("leftD2Summand", p.left_d2_summand, "_N M⊗_N M_M is a summand of a multiple of _N M_M", "_N M⊗_N M_M is not a summand of any multiple of _N M_M"));
        flags.push(flag("rightD2Summand", p.right_d2_summand, "_M M⊗_N M_N is a summand of a multiple of _M M_N", "_M M⊗_N M_N is not a summand of any multiple of _M M_N"));
        let central = m_central_tensors(ext, &self.chain.t2);
        let one = ext.m.one();
        let one_one = self.chain.t2.elem(&[&one, &one]);
        let one_one_central = central.coords(&one_one).is_some();
        w.insert("mCentralTensors".into(), Value::Array(central.basis().iter().map(|v| vec_value(v)).collect()));
        w.insert("oneTensorOneIsCentral".into(), Value::Bool(one_one_central));
        flags.push(flag(
            "hSeparable",
            p.h_separable,
            "M ⊗_N M is a summand of a multiple of M as M-bimodules; (M ⊗_N M)^M in witnesses.mCentralTensors",
            "M ⊗_N M is not a summand of any multiple of M as M-bimodules",
        ));
        flags.push(flag("centrallyProjective", p.centrally_projective, "M is a summand of a multiple of N as N-bimodules", "M is not a summand of any multiple of N as N-bimodules"));
        if let Some(e) = &p.split_map {
            w.insert("splitMap".into(), mat_value(e));
        }
        flags.push(flag("split", p.split(), "witnesses.splitMap", "no N-bimodule map E: M → N has E∘ι = id"));
        if let Some(e) = &p.separability_element {
            w.insert("separabilityElement".into(), vec_value(e));
        }
        flags.push(flag("separable", p.separable(), "witnesses.separabilityElement", "no e ∈ (M ⊗_N M)^M has μ(e) = 1"));
        flags.push(flag("projectiveLeft", p.projective_left, "_N M is a summand of a free module", "_N M is not projective"));
        flags.push(flag("projectiveRight", p.projective_right, "M_N is a summand of a free module", "M_N is not projective"));
        flags.push(flag("biseparable", p.biseparable(), "split, separable and projective on both sides", "one of split, separable or two-sided projectivity fails"));
        flags.push(flag("leftQF", p.left_qf, "_N M_M is a summand of a multiple of Hom(M_N, N_N)", "projectivity fails or _N M_M is not a summand of a multiple of Hom(M_N, N_N)"));
        flags.push(flag("rightQF", p.right_qf, "_M M_N is a summand of a multiple of Hom(_N M, _N N)", "projectivity fails or _M M_N is not a summand of a multiple of Hom(_N M, _N N)"));
        flags.push(flag("balanced", p.balanced, "the maps commuting with End M_N are ρ(N)", "the bicommutant of End M_N is larger than ρ(N)"));
        flags.push(flag("leftD3", p.left_d3, "_N M⊗_N M⊗_N M_E' and _N M⊗_N M_E' are H-equivalent", "the two bimodules are not H-equivalent"));
        flags.push(flag("rightD3", p.right_d3, "_E M⊗_N M⊗_N M_N and _E M⊗_N M_N are H-equivalent", "the two bimodules are not H-equivalent"));
        let frob = match self.search().clone() {
            FrobeniusSearch::Found(sys) => {
                w.insert(
                    "frobeniusSystem".into(),
                    json!({
                        "e": mat_value(&sys.e),
                        "x": sys.x.iter().map(|v| vec_value(v)).collect::<Vec<_>>(),
                        "y": sys.y.iter().map(|v| vec_value(v)).collect::<Vec<_>>(),
                    }),
                );
                Flag { name: "frobenius".into(), value: Some(true), evidence: "witnesses.frobeniusSystem".into() }
            }
            FrobeniusSearch::NotFrobenius(r) => Flag { name: "frobenius".into(), value: Some(false), evidence: format!("certified none: {r}") },
            FrobeniusSearch::Undecided => Flag {
                name: "frobenius".into(),
                value: None,
                evidence: "undecided: no system found and the bimodule criterion found no obstruction".into(),
            },
        };
        flags.push(frob);
        self.ensure_built();
        let inv = match self.built.as_ref().expect("set") {
            Ok((a, _)) => {
                let (space, rep) = invariants_a(&self.job.ext, &self.chain, a);
                w.insert("invariantsMA".into(), Value::Array(space.basis().iter().map(|v| vec_value(v)).collect()));
                Flag {
                    name: "invariantsEqualN".into(),
                    value: Some(rep.equals_n),
                    evidence: format!("M^A has dimension {} (witnesses.invariantsMA), ι(N) has dimension {}", rep.dim, self.profile.dim_n),
                }
            }
            Err(why) => Flag { name: "invariantsEqualN".into(), value: None, evidence: format!("A is not available: {why}") },
        };
        flags.push(inv);
        (Profile { dims, flags }, w)
    }

    fn analyze(&mut self, s: &mut Section) {
        self.ensure_built();
        let (ext, chain, p) = (&self.job.ext, &self.chain, &self.profile);
        s.push("the centralizer chain is consistent", chain.verify(ext).is_ok());
        if let Some(q) = &p.left_quasibasis {
            s.push("the left quasibasis satisfies its defining identity", q.verify(ext, chain));
        }
        if let Some(q) = &p.right_quasibasis {
            s.push("the right quasibasis satisfies its defining identity", q.verify(ext, chain));
        }
        s.push("left D2: quasibasis search agrees with the summand test", p.left_d2() == p.left_d2_summand);
        s.push("right D2: quasibasis search agrees with the summand test", p.right_d2() == p.right_d2_summand);
        s.push("H-separable implies D2", !p.h_separable || p.d2());
        s.push("centrally projective implies D2", !p.centrally_projective || p.d2());
        if let Some(Ok((a, b))) = &self.built {
            s.push("the two coproduct formulas of A agree", a.formulas_agree);
            let rep = invariants_a(ext, chain, a).1;
            s.push("the descriptions of M^A agree", rep.descriptions_agree);
            s.push("M^A is a subalgebra", rep.closed_under_product);
            s.info("invariantsDim", rep.dim);
            s.info("dimB", b.bg.dim());
        }
    }

    fn d2(&mut self, s: &mut Section) {
        let (ext, chain, p) = (&self.job.ext, &self.chain, &self.profile);
        let (Some(l), Some(r)) = (&p.left_quasibasis, &p.right_quasibasis) else {
            s.refuse(missing_sides(p.left_d2(), p.right_d2()));
            return;
        };
        s.push("the left quasibasis satisfies its defining identity", l.verify(ext, chain));
        s.push("the right quasibasis satisfies its defining identity", r.verify(ext, chain));
        s.info("leftQuasibasisSize", l.len());
        s.info("rightQuasibasisSize", r.len());
        match end_iso_props(ext, chain, l, r) {
            Ok(rep) => {
                iso(s, "End _N M ≅ A ⊗_R M", Ok(rep.end_left));
                iso(s, "End M_N ≅ M ⊗_R A", Ok(rep.end_right));
                iso(s, "A ⊗_R A ≅ Hom_{N-N}(M ⊗_N M, M)", Ok(rep.tensor_square));
                s.push("End(_N M) is a summand of a multiple of M as N-M-bimodules", rep.end_left_summand);
                s.push("End(M_N) is a summand of a multiple of M as M-N-bimodules", rep.end_right_summand);
            }
            Err(e) => dispose(s, &e),
        }
    }

    fn morita(&mut self, s: &mut Section) {
        let (ext, chain, p) = (&self.job.ext, &self.chain, &self.profile);
        match MuR::new(ext, chain) {
            Ok(mu) => {
                s.info("dimC", mu.c_space.dim());
                s.info("muRRank", mu.rank());
                s.info("muRSurjective", mu.is_surjective());
            }
            Err(e) => {
                dispose(s, &e);
                return;
            }
        }
        let Some(l) = &p.left_quasibasis else {
            s.refuse("not left depth two");
            return;
        };
        let ctx = match build_context(ext, chain, l) {
            Ok(c) => c,
            Err(e) => return dispose(s, &e),
        };
        for c in &ctx.checks {
            iso(s, c.name, Ok(c.clone()));
        }
        s.push("μ_R: B ⊗_R A → C is surjective", ctx.mu_r.is_surjective());
        s.push("C → End B_R is a bijective algebra map", ctx.c_end_b);
        s.push("C → End _R A is a bijective anti-homomorphism", ctx.c_end_a_anti);
        s.push("Morita associativity and action compatibilities", ctx.associativity);
        s.push("ψ is a C-R-bimodule map", ctx.psi_bimodule_map);
        let pg = progenerator_checks(ext, chain, &ctx);
        s.push("Σ ψ(b_i)(α) β_i = α", pg.dual_basis);
        s.push("_R A is projective", pg.a_projective);
        s.push("_R A is a generator", pg.a_generator);
        s.push("B_R is projective", pg.b_projective);
        s.push("B_R is a generator", pg.b_generator);
        if let Some(r) = &p.right_quasibasis {
            match right_side_duals(ext, chain, r) {
                Ok(rep) => {
                    for c in rep.checks {
                        iso(s, c.name, Ok(c));
                    }
                    s.push("End_M(M ⊗_N M)_N → End A_R is bijective", rep.c_end_a);
                    s.push("the left and right step-three centralizers have equal dimension", rep.dim_c == rep.dim_c_right);
                }
                Err(e) => dispose(s, &e),
            }
        }
    }

    fn bialgebroid(&mut self, s: &mut Section) {
        let ext = self.job.ext.clone();
        let chain = self.chain.clone();
        let (a, b) = match self.built() {
            Ok(ab) => ab.clone(),
            Err(why) => {
                if why.starts_with("not ") {
                    s.refuse(why);
                } else {
                    s.fail(why);
                }
                return;
            }
        };
        s.info("dimA", a.bg.dim());
        s.info("dimB", b.bg.dim());
        s.info("dimR", a.bg.base.dim());
        s.add(axioms("A", &a.bg.verify_axioms()));
        s.add(axioms("B", &b.bg.verify_axioms()));
        s.add(axioms("A on M", &verify_action(&a.bg, &a.action)));
        s.add(axioms("B on End _N M", &verify_action(&b.bg, &b.action)));
        s.push("the two coproduct formulas of A agree", a.formulas_agree);
        s.push("Δ(α)(m ⊗ m') = α(mm')", a.lu_identity);
        s.push("Δ_B(b) = ι^{-1}(b^1 ⊗ 1 ⊗ b^2)", b.delta_via_iso);
        iso(s, "B ⊗_R B ≅ (M ⊗_N M ⊗_N M)^N", Ok(b.triple_iso.clone()));
        s.push("invariants of the B-action are ρ(M)", b.invariants_are_rho_m);
        let (_, inv) = invariants_a(&ext, &chain, &a);
        s.info("invariantsDim", inv.dim);
        s.info("invariantsEqualN", inv.equals_n);
        match smash_product(&a.bg, &a.action) {
            Ok((sp, rep)) => {
                let e = end_right(&ext);
                s.info("smashDim", rep.dim);
                s.push("M ⋊ A is well defined", rep.well_defined);
                s.push("M → M ⋊ A is injective", rep.iota_m_injective);
                s.push("A → M ⋊ A is injective", rep.iota_a_injective);
                s.push("the smash product relations hold", rep.relations_hold);
                s.push("M ⋊ A ≅ End M_N", rep.dim == e.dim() && sp.to_endomorphisms(&a.action, &e));
            }
            Err(e) => s.checks.push(Check { name: "M ⋊ A".into(), pass: false, witness: Some(e.to_string()) }),
        }
        for (kind, label) in [(DualKind::Right, "A*"), (DualKind::Left, "*A")] {
            let d = match dual_bialgebroid(&a.bg, kind) {
                Ok(d) => d,
                Err(e) => {
                    s.checks.push(Check { name: format!("{label} exists"), pass: false, witness: Some(e.to_string()) });
                    continue;
                }
            };
            s.push(format!("{label}: the pairing descends"), d.pairing_descends);
            s.add(axioms(label, &d.bg.verify_axioms()));
            for (name, ok) in pairing_symmetries(&a.bg, &d).relations {
                s.push(format!("{label}: {name}"), ok);
            }
            let iso_b = match kind {
                DualKind::Right => duality_pairing_check(&ext, &chain, &a, &b, &d),
                DualKind::Left => left_dual_identification(&ext, &chain, &a, &b, &d),
            };
            match iso_b {
                Ok(c) => s.push(format!("B ≅ {label} as right bialgebroids"), c.all()),
                Err(e) => s.checks.push(Check { name: format!("B ≅ {label}"), pass: false, witness: Some(e.to_string()) }),
            }
            if kind == DualKind::Left {
                s.push("A → (*A)* is bijective", double_dual_bijective(&a.bg, &d));
                s.info("unmirroredBracketForms", unmirrored_bracket_symmetries(&a.bg, &d).relations);
            }
        }
    }

    fn frobenius(&mut self, s: &mut Section, w: &mut BTreeMap<String, Value>) {
        let sys = match self.search().clone() {
            FrobeniusSearch::Found(sys) => sys,
            FrobeniusSearch::NotFrobenius(r) => return s.refuse(format!("not Frobenius: {r}")),
            FrobeniusSearch::Undecided => return s.refuse("no Frobenius system found and none ruled out"),
        };
        let ext = self.job.ext.clone();
        let chain = self.chain.clone();
        s.push("Σ x_i E(y_i m) = m = Σ E(m x_i) y_i", sys.verify(&ext).is_ok());
        let tower = match build_tower(&ext, &sys) {
            Ok(t) => t,
            Err(e) => return dispose(s, &e),
        };
        s.info("dimM1", tower.dim_m1());
        s.info("dimM2", tower.dim_m2());
        s.info("dimAHat", tower.a_hat.dim());
        s.info("dimBHat", tower.b_hat.dim());
        s.info("dimCHat", tower.c_hat.dim());
        s.add(tower.verify(&ext));
        w.insert("jonesProjections".into(), json!({ "e1": vec_value(&tower.e1), "e2": vec_value(&tower.e2) }));
        let maps = match psi_isos(&ext, &chain, &tower) {
            Ok((maps, c)) => {
                s.add(c);
                maps
            }
            Err(e) => return dispose(s, &e),
        };
        s.add(os_actions(&ext, &chain, &tower, &maps));
        if let (Ok((a, _)), Some(l)) = (self.built().cloned(), self.profile.left_quasibasis.clone()) {
            match d2_frobenius_props(&ext, &chain, &tower, &maps, &a, &l) {
                Ok(rep) => {
                    s.add(rep.checks);
                    s.push("M_1 | M is left depth two", rep.tower_left_d2);
                    s.push("M_1 | M is right depth two", rep.tower_right_d2);
                }
                Err(e) => dispose(s, &e),
            }
            let bad = pairing_identity(&ext, &chain, &tower, &maps, &maps.psi_b);
            s.checks.push(Check {
                name: "E_M E_{M_1}(ψ_B(b) e_1 e_2 φ_A(α)) = b^1 α(b^2)".into(),
                pass: bad.is_none(),
                witness: bad.map(|b| format!("{b:?}")),
            });
        }
    }

    fn weakhopf(&mut self, s: &mut Section, w: &mut BTreeMap<String, Value>) {
        let (seed, sampler) = (self.job.seed, self.sampler);
        let ctx = match self.ctx() {
            Ok(c) => c,
            Err(e) => return dispose(s, &e.clone()),
        };
        let coords = match index_one_coordinates(&ctx.chain.r, seed) {
            Ok(c) => c,
            Err(e) => return dispose(s, &ExtError::Alg(e)),
        };
        s.info("coordinatesAreCoordinateSum", is_coordinate_sum(&ctx.chain, &coords.phi));
        let rep = match weak_hopf_verify_with(ctx, &coords, &sampler) {
            Ok(r) => r,
            Err(e) => return dispose(s, &e),
        };
        s.info("aWeak", rep.a_weak);
        s.info("bWeak", rep.b_weak);
        s.info("gramRank", rep.gram.rank());
        s.info("criteria", &rep.criteria);
        if let Some(ap) = &rep.antipode_a {
            s.info("antipodeAInvolutive", ap.involutive);
        }
        if let Some(ap) = &rep.antipode_b {
            s.info("antipodeBInvolutive", ap.involutive);
        }
        s.add(rep.checks.clone());
        let mut wv = serde_json::Map::new();
        wv.insert("phi".into(), vec_value(&coords.phi));
        wv.insert("e".into(), Value::Array(coords.left.iter().map(|v| vec_value(v)).collect()));
        wv.insert("f".into(), Value::Array(coords.right.iter().map(|v| vec_value(v)).collect()));
        if let Some(ap) = &rep.antipode_a {
            wv.insert("antipodeA".into(), mat_value(&ap.s));
        }
        if let Some(ap) = &rep.antipode_b {
            wv.insert("antipodeB".into(), mat_value(&ap.s));
        }
        if let Some(l) = rep.a.normalized_left_integral() {
            wv.insert("normalizedLeftIntegralA".into(), vec_value(&l));
        }
        if let Some(r) = rep.b.normalized_right_integral() {
            wv.insert("normalizedRightIntegralB".into(), vec_value(&r));
        }
        if let Ok(e) = ctx.e_in_a() {
            wv.insert("nondegenerateIntegralE".into(), vec_value(&e));
        }
        w.insert("weakHopf".into(), Value::Object(wv));
    }

    fn hopf(&mut self, s: &mut Section, w: &mut BTreeMap<String, Value>) {
        let (seed, sampler) = (self.job.seed, self.sampler);
        let ctx = match self.ctx() {
            Ok(c) => c,
            Err(e) => return dispose(s, &e.clone()),
        };
        let h = match hopf_from_irreducible_with(ctx, seed, &sampler) {
            Ok(h) => h,
            Err(e) => return dispose(s, &e),
        };
        s.add(h.checks.clone());
        s.info("criteria", &h.criteria);
        w.insert("hopf".into(), json!({ "psi": vec_value(&h.psi), "norm": vec_value(&h.norm), "antipode": mat_value(&h.antipode) }));
        let tower = match build_tower(&ctx.ext, &ctx.sys) {
            Ok(t) => t,
            Err(e) => return dispose(s, &e),
        };
        let maps = match psi_isos(&ctx.ext, &ctx.chain, &tower) {
            Ok((m, _)) => m,
            Err(e) => return dispose(s, &e),
        };
        s.add(conjugation_identity(ctx, &tower, &maps, &h));
        match biseparable_pairing_check(ctx, &tower, &maps) {
            Ok(c) => s.add(c),
            Err(ExtError::Hypothesis(why)) => s.info("biseparablePairingSkipped", why),
            Err(e) => dispose(s, &e),
        }
    }
}

fn missing_sides(left: bool, right: bool) -> String {
    match (left, right) {
        (false, false) => "not left depth two; not right depth two".into(),
        (false, true) => "not left depth two".into(),
        (true, false) => "not right depth two".into(),
        (true, true) => "depth two on both sides".into(),
    }
}
