//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod support;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ainf_core::algebra::{OneForm, Poly};
use ainf_core::determinacy::{ideal_membership, ideal_membership_in, reduce_to_w, TruncatedSeries};
use ainf_core::floer::{apply_hkr_sign, builtin, classification_targets, compare_with_transfer, hkr_of, validate_floer};
use ainf_core::hochschild::{antisymmetry_defect, hochschild_d, hom_invariant_dim, invariant_dim, jacobi_defect};
use ainf_core::koszul::{matrix_factorization_check, cyclic_gamma, quintic_w, sign_normalize_gamma, verify_contraction, Conventions};
use ainf_core::scalars::{Monomial, Rat};
use ainf_core::structures::{check_index_degrees, check_weights, verify_ainfty, AInftyStructure};
use ainf_core::toric::{golden, golden_diff, toric_check};
use ainf_core::transfer::{enumerate_trees, mu1_series, transfer};

const SEED: u64 = 20211;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gamma() -> OneForm {
    sign_normalize_gamma(&cyclic_gamma(), &quintic_w()).expect("cyclic form matches W up to sign").0
}

fn structure(d: usize) -> AInftyStructure {
    AInftyStructure::from_transfer(&transfer(&gamma(), d).expect("transfer"))
}

fn var(k: usize) -> Poly {
    Poly::var(k)
}

fn matrix_factorization() -> Check {
    let (g, flipped) = sign_normalize_gamma(&cyclic_gamma(), &quintic_w()).map_err(|e| e.to_string())?;
    let w = matrix_factorization_check(&g).map_err(|e| e.to_string())?;
    ensure(w == quintic_w(), format!("delta^2 = {}", w.fmt_with(3)))?;
    Ok(format!("delta^2 = ({})·id, gamma flipped: {flipped}", w.fmt_with(3)))
}

fn contraction() -> Check {
    let rep = verify_contraction(3, 6);
    ensure(rep.passed(), rep.to_string())?;
    Ok(format!("{} terms, epsilon = {:+}", rep.terms_checked, rep.epsilon.unwrap_or(0)))
}

fn low_order() -> Check {
    let r = transfer(&gamma(), 5).map_err(|e| e.to_string())?;
    ensure(r.tables.keys().all(|(d, _)| *d != 1), "mu^1 table present")?;
    ensure(mu1_series(&gamma()).is_empty(), "mu^1 series nonzero")?;
    let wedge = AInftyStructure::wedge(3);
    ensure(r.table(2, 0) == wedge.table(2, 0), "mu^2_0 differs from the wedge product")?;
    ensure(r.tables.keys().all(|(d, k)| *d != 2 || *k == 0), "mu^2_k nonzero for k > 0")?;
    Ok(format!("mu^1 = 0, mu^2_0 = wedge ({} constants), mu^2_(k>0) = 0", wedge.table(2, 0).map_or(0, |t| t.len())))
}

fn classification() -> Check {
    let sign = Conventions::standard().hkr_sign;
    let mu = apply_hkr_sign(&structure(5), sign);
    let (cubic, quintic) = classification_targets();
    ensure(hkr_of(&mu, 3, 0) == cubic, format!("HKR(mu^3_0) = {:?}", hkr_of(&mu, 3, 0)))?;
    ensure(mu.table(4, 1).is_none_or(|t| t.is_empty()), "alpha^4_1 nonzero")?;
    ensure(hkr_of(&mu, 5, 1) == quintic, format!("HKR(mu^5_1) = {:?}", hkr_of(&mu, 5, 1)))?;
    let verbatim = AInftyStructure::from_transfer(&transfer(&cyclic_gamma(), 5).map_err(|e| e.to_string())?);
    ensure(hkr_of(&verbatim, 3, 0) == cubic && hkr_of(&verbatim, 5, 1) == quintic, "unnormalized form misses the targets")?;
    Ok(format!("HKR(mu^3_0) = {:?}, alpha^4_1 = 0, HKR(mu^5_1) = {:?}, hkr_sign = {sign:+}", cubic, quintic))
}

fn maurer_cartan() -> Check {
    let mu = structure(5);
    let rep = verify_ainfty(&mu, 6);
    ensure(rep.passed() && rep.per_arity.len() == 7, rep.to_string())?;
    let mut broken = mu.clone();
    let t = broken.tables.get_mut(&(3, 0)).ok_or("no mu^3_0")?;
    let (_, c) = t.iter_mut().next().ok_or("empty mu^3_0")?;
    *c += &Rat::ONE;
    ensure(!verify_ainfty(&broken, 6).passed(), "a mutated structure passes")?;
    Ok("residual 0 at arities 0..=6; a mutated constant is detected".into())
}

fn gradings() -> Check {
    let mu = structure(6);
    let w = check_weights(&mu);
    let i = check_index_degrees(&mu);
    ensure(w.passed(), w.violations.join("; "))?;
    ensure(i.passed(), i.violations.join("; "))?;
    Ok(format!("{} constants obey weight balance and index 6-3d+4k", w.checked))
}

fn invariant_dimensions() -> Check {
    let got = [invariant_dim(3, 3, 0), invariant_dim(3, 4, 2), invariant_dim(3, 5, 0), hom_invariant_dim(3, 3, 1), hom_invariant_dim(3, 3, -2)];
    ensure(got == [1, 3, 3, 0, 0], format!("{got:?}"))?;
    Ok(format!("{got:?}"))
}

fn hochschild() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases = 60;
    for i in 0..cases {
        let phi = support::random_cochain(&mut rng, 3);
        let psi = support::random_cochain(&mut rng, 3);
        let chi = support::random_cochain(&mut rng, 3);
        ensure(hochschild_d(&hochschild_d(&phi)).is_zero(), format!("d^2 != 0 in case {i}"))?;
        ensure(antisymmetry_defect(&phi, &psi).is_zero(), format!("antisymmetry fails in case {i}"))?;
        ensure(jacobi_defect(&phi, &psi, &chi).is_zero(), format!("Jacobi fails in case {i}"))?;
    }
    Ok(format!("{cases} random triples of arity <= 3"))
}

fn determinacy() -> Check {
    let w = quintic_w();
    for (j, k) in [(0, 1), (0, 2), (1, 2)] {
        let f = var(j).mul(&var(k));
        let m = ideal_membership(&TruncatedSeries::new(&f, 4), &w, 4).map_err(|e| e.to_string())?;
        ensure(m.defect(&f, &w).is_zero() && m.remainder.min_degree().is_none_or(|d| d >= 4), format!("v{}v{} not in I + F4", j + 1, k + 1))?;
    }
    for j in 0..3 {
        let f = Poly::monomial(Monomial::var(j), Rat::ONE);
        let f = (1..6).fold(f.clone(), |acc, _| acc.mul(&var(j)));
        let m = ideal_membership_in(&f, &w, 8, 2).map_err(|e| e.to_string())?;
        let q_ok = m.q.iter().all(|q| q.min_degree().is_none_or(|d| d >= 2));
        ensure(m.defect(&f, &w).is_zero() && q_ok && m.remainder.min_degree().is_none_or(|d| d >= 8), format!("v{}^6 not in I·F2 + F8", j + 1))?;
    }
    let cube = Poly::monomial(Monomial::from_exps(&[3, 3, 3]), Rat::ONE);
    let mut perturbations = vec![cube];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    perturbations.extend((0..20).map(|_| support::random_perturbation(&mut rng, 3, 14)));
    for (i, p) in perturbations.iter().enumerate() {
        let red = reduce_to_w(&w.add(p), &w, 3, 15).map_err(|e| format!("case {i}: {e}"))?;
        ensure(red.passed(), format!("case {i}: residual {}", red.residual.fmt_with(3)))?;
    }
    Ok(format!("6 memberships certified; {} reductions with residual 0 mod F15", perturbations.len()))
}

fn toric() -> Check {
    let rep = toric_check(&quintic_w());
    let diff = golden_diff(&rep);
    ensure(rep.passed() && diff.is_empty(), format!("{rep}{}", diff.join("\n")))?;
    let g = golden();
    ensure(g.generators.len() == 5 && g.transitions.len() == 4 && g.h.len() == 5, "golden data incomplete")?;
    Ok(format!("{} generator triples, {} transitions, {} H equations", rep.generators.len(), rep.transitions.len(), rep.h.len()))
}

fn floer() -> Check {
    let (tables, dict) = builtin();
    let rep = validate_floer(&tables, &dict).map_err(|e| e.to_string())?;
    ensure(rep.passed(), rep.to_string())?;
    let cmp = compare_with_transfer(&tables, &dict, &structure(5), &Conventions::standard()).map_err(|e| e.to_string())?;
    ensure(cmp.passed(), cmp.to_string())?;
    Ok(format!("{} table checks, {} transfer comparisons", rep.checks.len(), cmp.checks.len()))
}

fn oracle() -> Check {
    let g = support::toy_gamma();
    let engine = transfer(&g, 4).map_err(|e| e.to_string())?;
    let brute = support::Oracle::new(&g, 4).tables(4);
    ensure(!brute.is_empty() && engine.tables == brute, "toy transfer differs from the oracle")?;
    let mut memo = HashMap::new();
    let mut total = 0;
    for d in 1..=6 {
        let b_max = 4;
        let mut by_b = vec![0u128; b_max + 1];
        for t in enumerate_trees(d, b_max) {
            by_b[support::bivalent_count(&t)] += 1;
        }
        for (b, got) in by_b.iter().enumerate() {
            let rooted = support::count(d, b, &mut memo) - u128::from(d == 1 && b == 0);
            ensure(*got == rooted && *got == support::closed_form_count(d, b), format!("tree count d = {d}, b = {b}: {got} vs {rooted}"))?;
            total += got;
        }
    }
    Ok(format!("{} toy constants agree; {total} trees counted for d <= 6, b <= 4", brute.values().map(|t| t.len()).sum::<usize>()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 12] = [
        ("matrix factorization", Duration::from_secs(1), matrix_factorization),
        ("contraction data, Sym-degree <= 6", Duration::from_secs(10), contraction),
        ("transfer low order", Duration::from_secs(10), low_order),
        ("classification targets", Duration::from_secs(30 * 60), classification),
        ("Maurer-Cartan residual, arity <= 6", Duration::from_secs(2 * 3600), maurer_cartan),
        ("gradings", Duration::from_secs(60), gradings),
        ("invariant dimensions", Duration::from_secs(10), invariant_dimensions),
        ("Hochschild calculus", Duration::from_secs(60), hochschild),
        ("determinacy", Duration::from_secs(5 * 60), determinacy),
        ("toric golden data", Duration::from_secs(10), toric),
        ("Floer transport", Duration::from_secs(10), floer),
        ("oracle equivalence", Duration::from_secs(10 * 60), oracle),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = result.and_then(|s| if elapsed <= *budget { Ok(s) } else { Err(format!("took {elapsed:.2?}, budget {budget:?}")) });
        match result {
            Ok(detail) => println!("PASS {:>2} {name} [exact, {elapsed:.2?} / {budget:?}]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [exact, {elapsed:.2?} / {budget:?}]: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
