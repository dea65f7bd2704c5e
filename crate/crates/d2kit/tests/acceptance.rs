//! Acceptance criteria, one line per criterion. Each criterion recomputes its key numbers with
//! a small oracle written here and compares them with the library.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use d2kit::algcore::{eval_form, index_one_coordinates, m2_char2_coordinates, nondegenerate_form_check, Algebra};
use d2kit::bialgd::{
    bialgebroid_a, bialgebroid_b, dual_bialgebroid, invariants_a, pairing_symmetries, unmirrored_bracket_symmetries, smash_product, Bialgebroid, DualKind,
};
use d2kit::cli::gallery;
use d2kit::exactla::{kernel, rank, unit_vec, vec_add, vec_scale, Field, Mat, Scalar};
use d2kit::extcore::examples::{c2_in_c4, non_d2_sample, random_extension, upper_triangular_in_m2};
use d2kit::extcore::{classify, end_right, m_central_tensors, RingExtension};
use d2kit::frobtower::{build_tower, d2_frobenius_props, find_frobenius_system, os_actions, psi_isos, FrobeniusSearch};
use d2kit::morita::{build_context, progenerator_checks, MuR};
use d2kit::quantum::{is_coordinate_sum, prepare, weak_hopf_verify, WeakBialgebra};

const Q: Field = Field::Rational;

type Outcome = Result<Vec<String>, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ints(f: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| f.int(x)).collect()
}

/// Commutant dimension of a family of `n × n` matrices: `X L = L X` via Kronecker products.
fn commutant_dim(f: Field, n: usize, mats: &[Mat]) -> usize {
    let id = Mat::identity(f, n);
    let mut rows = Vec::new();
    for l in mats {
        let eq = l.kron(&id).sub(&id.kron(&l.transpose()));
        rows.extend((0..eq.rows()).map(|i| eq.row(i).to_vec()));
    }
    n * n - rank(&Mat::from_rows(f, n * n, rows))
}

/// `b^1 α(b^2)` summed over the lifted terms of `b`, computed from the definitions.
fn pair_oracle(ext: &RingExtension, chain: &d2kit::extcore::CentralizerChain, b: usize, alpha: &Mat) -> Vec<Scalar> {
    let m = &ext.m;
    let t2 = &chain.t2;
    let bv = chain.b_embed(&unit_vec(ext.field(), chain.b.dim(), b));
    let mut acc = m.zero();
    for (t, c) in t2.lift(&bv) {
        let d = t2.radix.digits(t);
        acc = vec_add(&acc, &vec_scale(&m.mul(&m.e(d[0]), &alpha.mul_vec(&m.e(d[1]))), &c));
    }
    acc
}

fn upper_triangular_counterexample() -> Outcome {
    let ext = upper_triangular_in_m2(Q);
    let (p, chain) = classify(&ext).map_err(|e| e.to_string())?;
    let m = &ext.m;
    let one = m.one();
    ensure!(p.dim_r == 1 && chain.r_space.contains(&one), "R should be K·1, got dim {}", p.dim_r);
    let central = (0..m.dim()).all(|i| chain.t2.elem(&[&m.e(i), &one]) == chain.t2.elem(&[&one, &m.e(i)]));
    ensure!(central, "m ⊗ 1 ≠ 1 ⊗ m for some basis element");
    ensure!(m_central_tensors(&ext, &chain.t2).contains(&chain.t2.elem(&[&one, &one])), "1 ⊗ 1 missing from the M-central tensors");
    ensure!(p.h_separable, "expected H-separable");
    let (Some(l), Some(r)) = (&p.left_quasibasis, &p.right_quasibasis) else { return Err("expected D2 on both sides".into()) };
    ensure!(l.verify(&ext, &chain) && r.verify(&ext, &chain), "a quasibasis fails its identity");
    ensure!(p.dim_a == 1, "dim A = {}", p.dim_a);
    let id = Mat::identity(Q, 2 * 2);
    ensure!(rank(&Mat::from_rows(Q, 16, vec![chain.a_mats[0].flat().to_vec(), id.flat().to_vec()])) == 1, "A is not K·id");
    let left_mults: Vec<Mat> = (0..4).map(|i| m.lmat(&m.e(i))).collect();
    let lam = rank(&Mat::from_rows(Q, 16, left_mults.iter().map(|x| x.flat().to_vec()).collect()));
    let end = end_right(&ext);
    ensure!(p.dim_end_m_n == 4 && lam == 4 && end.dim() == 4, "End M_N has dim {} (oracle {lam})", end.dim());
    ensure!(left_mults.iter().all(|x| end.contains(x.flat())), "λ(M) ⊄ End M_N");
    let a = bialgebroid_a(&ext, &chain, l, r).map_err(|e| e.to_string())?;
    let (space, inv) = invariants_a(&ext, &chain, &a);
    ensure!(space.dim() == 4 && !inv.equals_n && p.dim_n == 3, "M^A has dim {}, N has dim {}", space.dim(), p.dim_n);
    let bicommutant = commutant_dim(Q, 4, &left_mults);
    ensure!(bicommutant == 4 && !p.balanced, "commutant of End M_N has dim {bicommutant}, balanced = {}", p.balanced);
    ensure!(matches!(find_frobenius_system(&ext, 0), FrobeniusSearch::NotFrobenius(_)), "expected a certified non-Frobenius extension");
    ensure!(!p.left_qf && !p.right_qf, "expected neither left nor right QF");
    Ok(vec![format!("M^A dim {} vs N dim {}; bicommutant dim {bicommutant} vs ρ(N) dim {}", space.dim(), p.dim_n, p.dim_n)])
}

fn scalars_in_m2() -> Outcome {
    let ext = RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2));
    let (p, chain) = classify(&ext).map_err(|e| e.to_string())?;
    let (Some(l), Some(r)) = (&p.left_quasibasis, &p.right_quasibasis) else { return Err("expected D2".into()) };
    let a = bialgebroid_a(&ext, &chain, l, r).map_err(|e| e.to_string())?;
    let b = bialgebroid_b(&ext, &chain, l).map_err(|e| e.to_string())?;
    let dm = ext.dim_m();
    ensure!(a.bg.dim() == 16 && a.bg.dim() == dm * dm, "dim A = {} vs dim End_K M = {}", a.bg.dim(), dm * dm);
    ensure!(b.bg.dim() == 16, "dim B = {}", b.bg.dim());
    ensure!(a.bg.verify_axioms().all_pass(), "A axioms: {:?}", a.bg.verify_axioms().failures().iter().map(|x| x.name).collect::<Vec<_>>());
    ensure!(b.bg.verify_axioms().all_pass(), "B axioms: {:?}", b.bg.verify_axioms().failures().iter().map(|x| x.name).collect::<Vec<_>>());
    let (na, nb, dr) = (chain.a.dim(), chain.b.dim(), chain.r.dim());
    let mut by_b = vec![Vec::new(); nb];
    let mut by_a = vec![Vec::new(); na];
    for (i, row) in by_b.iter_mut().enumerate() {
        for (j, col) in by_a.iter_mut().enumerate() {
            let v = pair_oracle(&ext, &chain, i, &chain.a_mats[j]);
            let c = chain.r_space.coords(&v).ok_or("b^1 α(b^2) outside R")?;
            row.extend(c.iter().cloned());
            col.extend(c);
        }
    }
    let (rb, ra) = (rank(&Mat::from_rows(Q, na * dr, by_b)), rank(&Mat::from_rows(Q, nb * dr, by_a)));
    ensure!(rb == 16 && ra == 16, "pairing ranks {rb}, {ra}");
    let (sp, rep) = smash_product(&a.bg, &a.action).map_err(|e| e.to_string())?;
    let end = end_right(&ext);
    ensure!(rep.dim == end.dim() && sp.to_endomorphisms(&a.action, &end), "M ⋊ A has dim {} vs End M_N {}", rep.dim, end.dim());
    Ok(vec![format!("R-valued pairing rank {rb} both ways; M ⋊ A dim {}", rep.dim)])
}

fn group_extension() -> Outcome {
    let ext = c2_in_c4(Q);
    let (p, chain) = classify(&ext).map_err(|e| e.to_string())?;
    let (Some(l), Some(r)) = (&p.left_quasibasis, &p.right_quasibasis) else { return Err("expected D2".into()) };
    ensure!(l.verify(&ext, &chain) && r.verify(&ext, &chain), "quasibasis identity fails");
    let (dm, dn) = (ext.dim_m(), ext.dim_n());
    ensure!(ext.m.is_commutative() && p.dim_r == dm, "R should be all of M, dim R = {}", p.dim_r);
    let rk = dm / dn;
    ensure!(p.dim_a == rk * rk * dn && p.dim_b == rk * rk * dn, "dim A = {}, dim B = {}, expected {}", p.dim_a, p.dim_b, rk * rk * dn);
    let ctx = build_context(&ext, &chain, l).map_err(|e| e.to_string())?;
    ensure!(ctx.checks.len() >= 4, "only {} Morita isomorphisms", ctx.checks.len());
    ensure!(ctx.mu_r.is_surjective() && ctx.c_end_b && ctx.c_end_a_anti && ctx.associativity && ctx.psi_bimodule_map, "Morita context flags fail");
    ensure!(progenerator_checks(&ext, &chain, &ctx).all(), "progenerator checks fail");
    let FrobeniusSearch::Found(sys) = find_frobenius_system(&ext, 0) else { return Err("no Frobenius system".into()) };
    sys.verify(&ext).map_err(|e| e.to_string())?;
    let tower = build_tower(&ext, &sys).map_err(|e| e.to_string())?;
    let tv = tower.verify(&ext);
    ensure!(tv.all_pass(), "tower: {:?}", tv.failures());
    let (maps, pc) = psi_isos(&ext, &chain, &tower).map_err(|e| e.to_string())?;
    ensure!(pc.all_pass(), "ψ isomorphisms: {:?}", pc.failures());
    let oc = os_actions(&ext, &chain, &tower, &maps);
    ensure!(oc.all_pass(), "actions: {:?}", oc.failures());
    let a = bialgebroid_a(&ext, &chain, l, r).map_err(|e| e.to_string())?;
    let fp = d2_frobenius_props(&ext, &chain, &tower, &maps, &a, l).map_err(|e| e.to_string())?;
    ensure!(fp.checks.all_pass() && fp.tower_left_d2 && fp.tower_right_d2, "Frobenius D2 properties: {:?}", fp.checks.failures());
    ensure!(p.split() && p.separable() && p.balanced, "split/separable/balanced");
    ensure!(p.left_qf && p.right_qf && p.left_d3 && p.right_d3, "QF or D3 fails");
    ensure!(invariants_a(&ext, &chain, &a).1.equals_n, "M^A ≠ N");
    Ok(vec![format!("dims R {} A {} B {} C {}; {} Morita isomorphisms", p.dim_r, p.dim_a, p.dim_b, ctx.dim_c, ctx.checks.len())])
}

fn weak_hopf_q_times_q() -> Outcome {
    let ext = RingExtension::over_scalars(Algebra::diagonal(Q, 2));
    let ctx = prepare(&ext, 0).map_err(|e| e.to_string())?;
    let coords = index_one_coordinates(&ctx.chain.r, 0).map_err(|e| e.to_string())?;
    ensure!(coords.phi == ints(Q, &[1, 1]), "φ = {:?}", coords.phi);
    ensure!(is_coordinate_sum(&ctx.chain, &coords.phi), "φ is not the coordinate sum");
    let rep = weak_hopf_verify(&ctx, &coords).map_err(|e| e.to_string())?;
    ensure!(rep.checks.all_pass(), "weak Hopf checks: {:?}", rep.checks.failures());
    let n = rep.a.dim();
    let one = rep.a.algebra.one();
    let mut one_one = vec![Q.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            one_one[i * n + j] = &one[i] * &one[j];
        }
    }
    ensure!(rep.a.delta_of(&one) != one_one && rep.a_weak && rep.a.is_genuinely_weak(), "Δ(1) = 1 ⊗ 1 in A");
    for name in ["E is a left integral in A", "E ↼ b = E ◁ b", "b ↦ E ◁ b is onto A", "A has an antipode", "B has an antipode"] {
        ensure!(rep.checks.passed(name), "{name}");
    }
    let (Some(sa), Some(sb)) = (&rep.antipode_a, &rep.antipode_b) else { return Err("missing antipode".into()) };
    ensure!(sa.involutive && sb.involutive, "antipode not involutive");
    ensure!(rep.criteria.consistent(), "split/separable criteria disagree");
    Ok(vec![format!("dim A {n}, Gram rank {}, {} checks", rep.gram.rank(), rep.checks.len())])
}

fn char_two_coordinates() -> Outcome {
    let f = Field::Prime(2);
    let a = Algebra::matrix_algebra(f, 2);
    let c = m2_char2_coordinates(f);
    ensure!(c.phi == ints(f, &[1, 1, 1, 0]) && c.left.len() == 6 && c.right.len() == 6, "φ = {:?}, {} terms", c.phi, c.left.len());
    for k in 0..4 {
        let x = a.e(k);
        let mut s1 = a.zero();
        let mut s2 = a.zero();
        for (e, g) in c.left.iter().zip(&c.right) {
            s1 = vec_add(&s1, &vec_scale(g, &eval_form(&c.phi, &a.mul(&x, e))));
            s2 = vec_add(&s2, &vec_scale(e, &eval_form(&c.phi, &a.mul(g, &x))));
        }
        ensure!(s1 == x && s2 == x, "dual basis identity fails at basis element {k}");
    }
    let idx = c.left.iter().zip(&c.right).fold(a.zero(), |s, (e, g)| vec_add(&s, &a.mul(e, g)));
    ensure!(idx == a.one(), "Σ e_i f_i = {:?}", idx);
    c.verify(&a).map_err(|e| e.to_string())?;
    Ok(vec![])
}

fn random_form(a: &Algebra, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..a.dim()).map(|_| a.field().int(rng.gen_range(-2i64..=2))).collect()
}

/// Left and right nondegeneracy from the multiplication table: rows and columns of `φ(e_i e_j)`.
fn form_oracle(a: &Algebra, phi: &[Scalar]) -> (bool, bool) {
    let n = a.dim();
    let g = Mat::from_fn(a.field(), n, n, |i, j| eval_form(phi, &a.mul(&a.e(i), &a.e(j))));
    (rank(&g.transpose()) == n, kernel(&g).dim() == 0)
}

fn cross_oracles() -> Outcome {
    let mut cases = gallery::all();
    for s in 0..20 {
        let (label, ext) = random_extension(Q, s);
        ensure!(ext.dim_m() <= 6, "{label} exceeds dimension six");
        cases.push((format!("random {s}: {label}"), ext));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut forms, mut degenerate, mut d2_cases, mut unmirrored_fail) = (0, 0, 0, 0);
    for (name, ext) in &cases {
        let (p, chain) = classify(ext).map_err(|e| format!("{name}: {e}"))?;
        ensure!(p.left_d2() == p.left_d2_summand && p.right_d2() == p.right_d2_summand, "{name}: quasibasis and summand tests disagree");
        ensure!(!p.h_separable || p.d2(), "{name}: H-separable but not D2");
        ensure!(!p.centrally_projective || p.d2(), "{name}: centrally projective but not D2");
        ensure!(!p.left_d2() || p.left_d3, "{name}: left D2 but not left D3");
        ensure!(!p.right_d2() || p.right_d3, "{name}: right D2 but not right D3");
        ensure!(!(p.d2() && p.biseparable()) || (p.left_qf && p.right_qf), "{name}: D2 and biseparable but not QF");
        if let (Some(l), Some(r)) = (&p.left_quasibasis, &p.right_quasibasis) {
            d2_cases += 1;
            let a = bialgebroid_a(ext, &chain, l, r).map_err(|e| format!("{name}: {e}"))?;
            ensure!(a.formulas_agree, "{name}: coproduct formulas disagree");
            for kind in [DualKind::Right, DualKind::Left] {
                let d = dual_bialgebroid(&a.bg, kind).map_err(|e| format!("{name}: {e}"))?;
                let sym = pairing_symmetries(&a.bg, &d);
                ensure!(sym.all(), "{name}: {kind:?} pairing symmetries {:?}", sym.relations);
                unmirrored_fail += unmirrored_bracket_symmetries(&a.bg, &d).relations.iter().filter(|(_, ok)| !ok).count();
            }
        }
        for alg in [&ext.n, &ext.m] {
            for k in 0..50 {
                let phi = if k == 0 { alg.zero() } else { random_form(alg, &mut rng) };
                let (l, r) = form_oracle(alg, &phi);
                let lib = catch_unwind(AssertUnwindSafe(|| nondegenerate_form_check(alg, &phi))).map_err(|_| format!("{name}: library sides disagree"))?;
                ensure!(l == r && lib.left == l && lib.right == r, "{name}: form {phi:?} left {l} right {r}, library {lib:?}");
                forms += 1;
                degenerate += usize::from(!l);
            }
        }
    }
    Ok(vec![
        format!("{} extensions, {d2_cases} depth two; {forms} forms, {degenerate} degenerate", cases.len()),
        format!("info: bracket symmetries in the unmirrored form fail {unmirrored_fail} times across both duals"),
    ])
}

fn negative_controls() -> Outcome {
    let c3 = [vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
    let g = Bialgebroid::group_bialgebra(Q, &c3).map_err(|e| e.to_string())?;
    ensure!(g.verify_axioms().all_pass(), "the unperturbed group bialgebra fails");
    let bad = g.perturbed(0, 1, &Q.one()).verify_axioms();
    let co = bad.get("coassociativity").ok_or("no coassociativity check")?;
    ensure!(!co.pass && co.witness.is_some(), "perturbed coproduct is still coassociative");
    let ctx = prepare(&RingExtension::over_scalars(Algebra::diagonal(Q, 2)), 0).map_err(|e| e.to_string())?;
    let coords = index_one_coordinates(&ctx.chain.r, 0).map_err(|e| e.to_string())?;
    let w = WeakBialgebra::from_bialgebroid(&ctx.a.bg, &coords).map_err(|e| e.to_string())?;
    ensure!(w.verify().all_pass(), "the unperturbed weak bialgebra fails");
    let wf = w.perturbed(0, 1, &Q.one()).verify();
    ensure!(wf.failures().iter().any(|c| c.witness.is_some()), "perturbed weak bialgebra passes");
    let mut out = vec![format!("perturbed weak bialgebra fails {} checks", wf.failures().len())];
    for seed in 0..4 {
        let ext = non_d2_sample(Q, seed);
        let (p, chain) = classify(&ext).map_err(|e| e.to_string())?;
        ensure!(p.left_quasibasis.is_none() && p.right_quasibasis.is_none(), "seed {seed}: a quasibasis was found");
        ensure!(!p.left_d2_summand && !p.right_d2_summand, "seed {seed}: summand test says D2");
        let mu = MuR::new(&ext, &chain).map_err(|e| e.to_string())?;
        ensure!(!mu.is_surjective() && mu.rank() < mu.c_space.dim(), "seed {seed}: μ_R is onto");
        out.push(format!("seed {seed}: rank μ_R {} < dim C {}", mu.rank(), mu.c_space.dim()));
    }
    Ok(out)
}

fn main() -> ExitCode {
    let criteria: [(&str, f64, fn() -> Outcome); 7] = [
        ("upper triangular matrices in M_2(Q): H-separable, not balanced, not Frobenius", 1.0, upper_triangular_counterexample),
        ("scalars in M_2(Q): bialgebroids, nondegenerate pairing, smash product", 5.0, scalars_in_m2),
        ("Q[C_2] in Q[C_4]: Morita context, Frobenius tower, ring-theoretic flags", 10.0, group_extension),
        ("scalars in Q × Q: genuinely weak Hopf algebras in duality", 10.0, weak_hopf_q_times_q),
        ("M_2(F_2): index-one coordinates in characteristic two", 1.0, char_two_coordinates),
        ("cross-checks over the gallery and twenty random extensions", 60.0, cross_oracles),
        ("negative controls: perturbed structures and non-depth-two samples", 5.0, negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let t0 = Instant::now();
        let r = catch_unwind(f).unwrap_or_else(|e| Err(format!("panic: {}", e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())));
        let secs = t0.elapsed().as_secs_f64();
        let r = r.and_then(|notes| if secs <= budget { Ok(notes) } else { Err(format!("took {secs:.2} s, budget {budget} s")) });
        match r {
            Ok(notes) => {
                println!("PASS criterion {} {name} ({secs:.2} s)", i + 1);
                for n in notes {
                    println!("    {n}");
                }
            }
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
