//! One line per acceptance criterion. Runs without the libtest harness so
//! the report reads top to bottom; the process fails when a criterion fails
//! that is not listed in `UNATTAINABLE`.

mod common;

use std::time::{Duration, Instant};

use common::{
    anti_monge_global, composed_cross, cut_example, fixture, kalmanson_global, parity_cross,
    printed_cross, random_matrix, random_perm, random_symmetric, random_toeplitz,
};
use num_traits::Signed;
use qapstruct::blocks::BlockPartition;
use qapstruct::decompose::{
    benevolent_split, cdw_decomposition, cdw_feasibility, cut_weight_matrix,
    kalmanson_decomposition, robinson_kalmanson_decomposition, CoefficientKind,
};
use qapstruct::generate::{
    ps_ray, random_instance, stripe_matrix, supnick_permutation, InstanceClass, RaySpec,
};
use qapstruct::rational::{format, int};
use qapstruct::recognize::{
    check_cut_matrix, check_kalmanson, check_monge_family, check_robinson,
    extract_toeplitz_profile, MongeVariant, ToeplitzFlag,
};
use qapstruct::solve::{
    brute_force, brute_force_with, random_case_instance, selection_optimum, BruteForceOptions,
    CaseId,
};
use qapstruct::{apply_permutation, compose, invert, qap_objective, ExactMatrix, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The printed closed form of the Supnick-permuted ray is wrong in one
/// parity class, so criterion 7 cannot pass as stated.
const UNATTAINABLE: &[u32] = &[7];

struct Check {
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        let what = what.into();
        if cond {
            self.notes.push(what);
        } else {
            self.ok = false;
            self.notes.push(format!("FAILED {what}"));
        }
    }
}

fn run(id: u32, title: &str, budget: Duration, body: impl FnOnce(&mut Check)) -> bool {
    let start = Instant::now();
    let mut c = Check::new();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| body(&mut c)));
    let elapsed = start.elapsed();
    if outcome.is_err() {
        c.ok = false;
        c.notes.push("FAILED panicked".into());
    }
    if elapsed > budget {
        c.ok = false;
        c.notes.push(format!("FAILED over the {budget:?} budget"));
    }
    let verdict = if c.ok { "PASS" } else { "FAIL" };
    println!("criterion {id}: {verdict} {title} [{:.2}s]", elapsed.as_secs_f64());
    for n in &c.notes {
        println!("    {n}");
    }
    c.ok
}

fn sizes(sizes: &[usize]) -> ExactMatrix {
    BlockPartition::from_sizes(sizes).unwrap().cut_matrix()
}

fn worked_example(c: &mut Check) {
    let m = cut_example();
    let d = cut_weight_matrix(&m).unwrap();
    let nz: Vec<_> = d.nonzero().map(|(i, j, v)| (i, j, v.clone())).collect();
    let printed: Vec<_> = [(1, 2), (1, 3), (3, 4), (4, 6), (5, 6)]
        .into_iter()
        .map(|(i, j)| (i, j, int(1)))
        .collect();
    c.expect(nz == printed, "cut-weight matrix has exactly the five unit entries");

    let k = kalmanson_decomposition(&m).unwrap();
    use CoefficientKind::*;
    let want = [(Delta, (3, 4)), (Alpha, (2, 2)), (Alpha, (3, 3)), (Beta, (3, 3)), (Beta, (4, 4))];
    let exact = k.coefficients.iter().all(|co| {
        let expected = if want.contains(&(co.kind, co.index)) { int(1) } else { int(0) };
        co.weight == expected
    });
    c.expect(exact, "weights delta34 = alpha2 = alpha3 = beta3 = beta4 = 1, all others 0");
    let rk = robinson_kalmanson_decomposition(&m).unwrap();
    c.expect(
        rk.offset == int(-2) && rk.terms.len() == 5 && rk.reconstructs(&m),
        format!("Robinson+Kalmanson offset {} with {} unit cuts", format(&rk.offset), rk.terms.len()),
    );

    let cdw = cdw_decomposition(&m).unwrap().ok().unwrap();
    let mut blocks: Vec<_> = cdw
        .terms
        .iter()
        .map(|t| (t.weight.clone(), t.blocks.to_string()))
        .collect();
    blocks.sort_by(|a, b| a.1.cmp(&b.1));
    let expected = vec![
        (int(1), "{1,2,3} {4,5,6}".to_string()),
        (int(1), "{1,2} {3,4} {5,6}".to_string()),
    ];
    c.expect(
        blocks == expected && cdw.all_cdw() && cdw.reconstructs(&m),
        format!("CDW terms {:?}, offset {}", blocks.iter().map(|b| &b.1).collect::<Vec<_>>(), format(&cdw.offset)),
    );
}

fn three_cut_example(c: &mut Check) {
    let m = cut_example();
    let parts = [sizes(&[3, 1, 2]), sizes(&[2, 1, 3]), sizes(&[1, 1, 2, 1, 1])];
    let sum = parts[0].add(&parts[1]).unwrap().add(&parts[2]).unwrap();
    c.expect(sum == m, "C = C1 + C2 + C3");
    for (i, p) in parts.iter().enumerate() {
        let part = check_cut_matrix(p).ok().unwrap();
        c.expect(!part.is_cdw(), format!("C{} = {part} is not in CDW normal form", i + 1));
    }
    let d = cut_weight_matrix(&m).unwrap();
    c.expect(cdw_feasibility(&d).unwrap().is_yes(), "C is CDW feasible");
    c.expect(cdw_decomposition(&m).unwrap().is_yes(), "C has a CDW decomposition");
}

fn appendix_fixtures(c: &mut Check) {
    let yes = |name: &str, ok: bool| (name.to_string(), ok);
    let toeplitz = |name: &str, flag: ToeplitzFlag| {
        extract_toeplitz_profile(&fixture(name)).ok().is_some_and(|p| p.has(flag))
    };
    let kr = fixture("kalmanson_robinson");
    let results = vec![
        yes("robinson", check_robinson(&fixture("robinson")).unwrap().is_yes()),
        yes("cdw_conic", {
            let a = fixture("cdw_conic");
            cdw_decomposition(&a)
                .unwrap()
                .ok()
                .is_some_and(|d| d.all_cdw() && d.reconstructs(&a))
        }),
        yes(
            "monotone_anti_monge",
            check_monge_family(&fixture("monotone_anti_monge"), MongeVariant::MonotoneAntiMonge).is_yes(),
        ),
        yes("kalmanson", check_kalmanson(&fixture("kalmanson")).unwrap().is_yes()),
        yes("dw_toeplitz", toeplitz("dw_toeplitz", ToeplitzFlag::Dw)),
        yes(
            "kalmanson_robinson",
            check_kalmanson(&kr).unwrap().is_yes() && check_robinson(&kr).unwrap().is_yes(),
        ),
        yes("down_benevolent", toeplitz("down_benevolent", ToeplitzFlag::DownBenevolent)),
        yes(
            "anti_monge",
            check_monge_family(&fixture("anti_monge"), MongeVariant::AntiMonge).is_yes(),
        ),
        yes("up_benevolent", toeplitz("up_benevolent", ToeplitzFlag::UpBenevolent)),
    ];
    for (name, ok) in results {
        c.expect(ok, format!("{name}: accepted"));
    }
    let w = extract_toeplitz_profile(&fixture("simple_toeplitz_misprint"))
        .witness()
        .cloned();
    c.expect(
        w.as_ref().is_some_and(|w| w.indices[..2] == [2, 5]),
        format!(
            "simple_toeplitz (as printed): rejected at cell {:?}",
            w.map(|w| w.indices[..2].to_vec())
        ),
    );
}

fn theorem_suite(c: &mut Check) {
    for case in CaseId::ALL {
        let mut fails = 0;
        for seed in 0..200u64 {
            let n = 5 + (seed % 4) as usize;
            let inst = random_case_instance(case, n, seed).unwrap();
            let claimed = qap_objective(&inst.a, &inst.b, &case.optimal_permutation(n)).unwrap();
            if brute_force(&inst.a, &inst.b, 8).unwrap().value != claimed {
                fails += 1;
            }
        }
        c.expect(fails == 0, format!("{case}: 200 instances, {fails} failures"));
    }
}

fn appendix_scale(c: &mut Check) {
    let id = Permutation::identity(10);
    for (a, b) in [("kalmanson_robinson", "down_benevolent"), ("kalmanson", "dw_toeplitz")] {
        let (ma, mb) = (fixture(a), fixture(b));
        let start = Instant::now();
        let best = brute_force(&ma, &mb, 10).unwrap();
        let at_id = qap_objective(&ma, &mb, &id).unwrap();
        c.expect(
            best.value == at_id,
            format!(
                "({a}, {b}): optimum {} = identity value {} over 10! permutations [{:.1}s]",
                format(&best.value),
                format(&at_id),
                start.elapsed().as_secs_f64()
            ),
        );
    }

    // Recorded, not asserted: which canonical permutation attains the optimum.
    let (ma, mb) = (fixture("anti_monge"), fixture("up_benevolent"));
    let best = brute_force(&ma, &mb, 10).unwrap();
    let v_id = qap_objective(&ma, &mb, &id).unwrap();
    let v_sup = qap_objective(&ma, &mb, &supnick_permutation(10)).unwrap();
    let attains = |v: &_| if *v == best.value { "attains" } else { "misses" };
    c.notes.push(format!(
        "note (anti_monge, up_benevolent): optimum {} at {:?}; identity {} ({}), Supnick {} ({})",
        format(&best.value),
        best.permutation.one_based(),
        format(&v_id),
        attains(&v_id),
        format(&v_sup),
        attains(&v_sup),
    ));
}

fn lemma_properties(c: &mut Check) {
    const TRIALS: u64 = 1000;
    let mut r = ChaCha8Rng::seed_from_u64(2024);

    let mut literal_misses = 0;
    let mut fails = 0;
    for _ in 0..TRIALS {
        let n = r.gen_range(1..=8);
        let a = random_matrix(&mut r, n, -9, 9);
        let b = random_matrix(&mut r, n, -9, 9);
        let (pi, psi, phi) = (random_perm(&mut r, n), random_perm(&mut r, n), random_perm(&mut r, n));
        let lhs = qap_objective(
            &apply_permutation(&a, &pi).unwrap(),
            &apply_permutation(&b, &psi).unwrap(),
            &phi,
        )
        .unwrap();
        let at = |p: &Permutation, q: &Permutation| {
            let m = compose(&compose(p, q).unwrap(), &invert(&psi)).unwrap();
            qap_objective(&a, &b, &m).unwrap()
        };
        fails += usize::from(lhs != at(&pi, &phi));
        literal_misses += usize::from(lhs != at(&phi, &pi));
    }
    c.expect(fails == 0, format!("relabelling identity Z(A^pi, B^psi, phi) = Z(A, B, pi∘phi∘psi⁻¹): {fails} failures"));
    c.notes.push(format!(
        "note: the printed order phi∘pi∘psi⁻¹ disagrees in {literal_misses}/{TRIALS} trials"
    ));

    let mut fails = 0;
    let mut accepted = 0;
    for t in 0..TRIALS {
        let n = r.gen_range(1..=7);
        let base = random_instance(InstanceClass::Kalmanson, n, t).unwrap().matrix().clone();
        let m = if t % 2 == 0 { base } else { random_symmetric(&mut r, n, 0, 3) };
        let fast = check_kalmanson(&m).unwrap().is_yes();
        accepted += usize::from(fast);
        fails += usize::from(fast != kalmanson_global(&m));
    }
    c.expect(fails == 0, format!("adjacent vs. four-point Kalmanson: {fails} disagreements ({accepted} accepted)"));

    let mut fails = 0;
    let mut accepted = 0;
    for t in 0..TRIALS {
        let n = r.gen_range(1..=7);
        let base = random_instance(InstanceClass::MonotoneAntiMonge, n, t).unwrap().matrix().clone();
        let m = if t % 2 == 0 { base } else { random_matrix(&mut r, n, -1, 3) };
        let fast = check_monge_family(&m, MongeVariant::AntiMonge).is_yes();
        accepted += usize::from(fast);
        fails += usize::from(fast != anti_monge_global(&m));
    }
    c.expect(fails == 0, format!("adjacent vs. all 2x2 anti-Monge: {fails} disagreements ({accepted} accepted)"));

    let mut fails = 0;
    for t in 0..TRIALS {
        let n = r.gen_range(4..=9);
        let m = random_instance(InstanceClass::RobinsonKalmanson, n, t).unwrap().matrix().clone();
        let k = kalmanson_decomposition(&m).unwrap();
        let ok = k.coefficients.iter().all(|co| !co.weight.is_negative())
            && k.reconstruct().eq_off_diagonal(&m);
        fails += usize::from(!ok);
    }
    c.expect(fails == 0, format!("nonnegative cut weights on Robinson and Kalmanson inputs: {fails} failures"));

    let mut fails = 0;
    for t in 0..TRIALS {
        let n = r.gen_range(1..=10);
        let ok = {
            let b = random_instance(InstanceClass::DownBenevolent, n, t).unwrap().matrix().clone();
            benevolent_split(&b).unwrap().reconstruct() == b
        } && {
            let m = random_instance(InstanceClass::Kalmanson, n, t).unwrap().matrix().clone();
            kalmanson_decomposition(&m).unwrap().reconstruct().eq_off_diagonal(&m)
        } && {
            let m = random_instance(InstanceClass::RobinsonKalmanson, n, t).unwrap().matrix().clone();
            robinson_kalmanson_decomposition(&m).unwrap().reconstructs(&m)
        } && {
            let m = random_instance(InstanceClass::CdwConic, n, t).unwrap().matrix().clone();
            cdw_decomposition(&m).unwrap().ok().is_some_and(|d| d.reconstructs(&m))
        };
        fails += usize::from(!ok);
    }
    c.expect(fails == 0, format!("benevolent split and all decompositions rebuild exactly: {fails} failures"));

    let mut fails = 0;
    let maximize = BruteForceOptions {
        maximize: true,
        ..Default::default()
    };
    for _ in 0..TRIALS {
        let n = r.gen_range(3..=7);
        let i = r.gen_range(n / 2 + 1..n);
        let a = random_symmetric(&mut r, n, -9, 9);
        let t = stripe_matrix(n, i).unwrap();
        let best = brute_force_with(&a, &t, &maximize).unwrap().value;
        fails += usize::from(selection_optimum(&a, i).unwrap() * int(2) != best);
    }
    c.expect(fails == 0, format!("2 x selection optimum = maximum against a stripe matrix: {fails} failures"));

    let mut fails = 0;
    for t in 0..TRIALS {
        let n = r.gen_range(4..=9);
        let m = random_instance(InstanceClass::CdwConic, n, t).unwrap().matrix().clone();
        fails += usize::from(!cdw_feasibility(&cut_weight_matrix(&m).unwrap()).unwrap().is_yes());
    }
    c.expect(fails == 0, format!("CDW feasibility accepts random CDW conic combinations: {fails} failures"));
    let single = BlockPartition::single_cut(6, 1, 2).unwrap().cut_matrix();
    let w = cdw_feasibility(&cut_weight_matrix(&single).unwrap())
        .unwrap()
        .witness()
        .cloned();
    c.expect(
        w.as_ref().is_some_and(|w| w.indices == [2, 1]),
        format!("single cut {{1,2}} at n = 6 rejected at (k,l) = {:?}", w.map(|w| w.indices)),
    );
}

fn ps_rays(c: &mut Check) {
    let mut printed_misses = Vec::new();
    let mut parity_misses = 0;
    let mut ray_misses = 0;
    let mut total = 0;
    for n in 1..=12 {
        for p in 1..=n {
            for q in p..=n {
                total += 1;
                let composed = composed_cross(n, p, q);
                let via_ray = ps_ray(&RaySpec { n, p, q, u: 1, cyclic: false }).unwrap();
                if via_ray != composed {
                    ray_misses += 1;
                }
                if printed_cross(n, p, q) != composed {
                    printed_misses.push((n, p, q));
                }
                if parity_cross(n, p, q) != composed {
                    parity_misses += 1;
                }
            }
        }
    }
    let odd_odd = printed_misses
        .iter()
        .all(|&(n, p, q)| (n - p) % 2 == 1 && (q - p) % 2 == 1);
    c.expect(
        printed_misses.is_empty(),
        format!(
            "printed closed form at u = 1: {}/{total} (n,p,q) disagree, all with n-p and q-p odd: {odd_odd}; first {:?}",
            printed_misses.len(),
            printed_misses.first()
        ),
    );
    c.expect(ray_misses == 0, format!("ps_ray at u = 1 equals the composition: {ray_misses}/{total} disagree"));
    c.expect(
        parity_misses == 0,
        format!("closed form with parity-aware arm lengths: {parity_misses}/{total} disagree"),
    );

    let mut r = ChaCha8Rng::seed_from_u64(77);
    let mut fails = 0;
    for _ in 0..500 {
        let n = r.gen_range(1..=12);
        let p = r.gen_range(1..=n);
        let q = r.gen_range(p..=n);
        let shifts = RaySpec::admissible_shifts(n, p, q);
        let u = shifts[r.gen_range(0..shifts.len())];
        let b = random_toeplitz(&mut r, n, -20, 20);
        let id = Permutation::identity(n);
        let value = |u| {
            let m = ps_ray(&RaySpec { n, p, q, u, cyclic: false }).unwrap();
            qap_objective(&m, &b, &id).unwrap()
        };
        fails += usize::from(value(u) != value(1));
    }
    c.expect(fails == 0, format!("objective against a Toeplitz B is shift invariant: 500 trials, {fails} failures"));
    c.expect(
        printed_cross(10, 2, 7) == composed_cross(10, 2, 7),
        "figure case n = 10, p = 2, q = 7 matches the printed form",
    );
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        (1, run(1, "worked 6x6 example, exact", secs(1), worked_example)),
        (2, run(2, "C is CDW feasible while its three-cut form is not", secs(1), three_cut_example)),
        (3, run(3, "appendix fixtures", secs(1), appendix_fixtures)),
        (4, run(4, "theorem permutations attain the exhaustive minimum, n = 5..8", secs(300), theorem_suite)),
        (5, run(5, "identity optimal on the n = 10 appendix pairs", secs(1200), appendix_scale)),
        (6, run(6, "lemma-level properties, 1000 trials each", secs(600), lemma_properties)),
        (7, run(7, "shifted Supnick rays", secs(600), ps_rays)),
    ];
    let failed: Vec<u32> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    let unexpected: Vec<u32> = failed
        .iter()
        .copied()
        .filter(|id| !UNATTAINABLE.contains(id))
        .collect();
    println!(
        "acceptance: {} passed, {} failed {:?}; recorded as unattainable {:?}",
        results.len() - failed.len(),
        failed.len(),
        failed,
        UNATTAINABLE
    );
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
