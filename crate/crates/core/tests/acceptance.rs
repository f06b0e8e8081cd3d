//! End-to-end acceptance checks, one test per numbered criterion. Each test
//! prints a single pass/fail line and pins its runtime budget.

use std::time::Instant;

use fga_core::{
    ball_size, bounded_intersection, build_ball, centralizer_evidence, check_direct_product,
    edge_stab_membership, embed_tuple, enumerate_ball, extract_tuple, family_generators,
    fixes_arc, mk_to_rose, nielsen_power_witness, rose_stab_membership, rose_to_mk,
    subgroup_ball, suite_seed, trace_closure_violations, twisted_vertex_action, Automorphism,
    Basis, FamilyKind, MkElement, RoseSplitting, Sampler, TupleElement, WitnessOutcome, Word,
    is_nielsen_power_outer,
};

const MASTER_SEED: u64 = 0x5EED_2026;

fn criterion(
    n: usize,
    what: &str,
    limit_s: Option<f64>,
    body: impl FnOnce() -> Result<(), String>,
) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed().as_secs_f64();
    match &result {
        Ok(()) => println!("criterion {n} ({what}): pass ({elapsed:.2}s)"),
        Err(e) => println!("criterion {n} ({what}): FAIL — {e}"),
    }
    if let Err(e) = result {
        panic!("criterion {n} failed: {e}");
    }
    if let Some(limit) = limit_s {
        assert!(elapsed < limit, "criterion {n} took {elapsed:.2}s, budget {limit}s");
    }
}

fn err<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

#[test]
fn criterion_01_word_algebra() {
    criterion(1, "word algebra", Some(10.0), || {
        let basis = Basis::standard(3);
        let e = Word::identity(&basis);
        let mut count: u64 = 0;
        for w in enumerate_ball(&basis, 8) {
            count += 1;
            if Word::reduce(&basis, w.letters().iter().copied()) != w {
                return err(format!("reduction not idempotent on {w}"));
            }
            let prod = w.multiply(&w.invert()).map_err(|e| e.to_string())?;
            if !prod.is_identity() {
                return err(format!("w·w⁻¹ ≠ 1 for {w}"));
            }
            if w.multiply(&e).map_err(|e| e.to_string())? != w {
                return err(format!("identity law fails on {w}"));
            }
        }
        if count != ball_size(3, 8) {
            return err(format!("rank-3 ball of radius 8 has {count} words, formula gives {}", ball_size(3, 8)));
        }
        // associativity, exhaustive on the radius-2 ball
        let small: Vec<Word> = enumerate_ball(&basis, 2).collect();
        for a in &small {
            for b in &small {
                let ab = a.multiply(b).map_err(|e| e.to_string())?;
                for c in &small {
                    let bc = b.multiply(c).map_err(|e| e.to_string())?;
                    if ab.multiply(c) != a.multiply(&bc) {
                        return err(format!("associativity fails on {a}, {b}, {c}"));
                    }
                }
            }
        }
        for rank in 2..=5 {
            let rb = Basis::standard(rank);
            for l in 0..=4 {
                let n = enumerate_ball(&rb, l).count() as u64;
                if n != ball_size(rank, l) {
                    return err(format!("rank {rank}, L = {l}: {n} ≠ {}", ball_size(rank, l)));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_02_mk_group_law() {
    criterion(2, "M_k group law", Some(5.0), || {
        let basis = Basis::standard(2);
        for k in 1..=3 {
            let mut s = Sampler::new(suite_seed(MASTER_SEED, &format!("c2.k{k}")));
            let id = MkElement::identity(&basis, k);
            for _ in 0..1000 {
                let a = s.mk_element(&basis, k, 4, 3);
                let b = s.mk_element(&basis, k, 4, 3);
                let c = s.mk_element(&basis, k, 4, 3);
                let assoc = a.mul(&b).and_then(|ab| ab.mul(&c))
                    == b.mul(&c).and_then(|bc| a.mul(&bc));
                if !assoc {
                    return err(format!("associativity fails on {a}, {b}, {c}"));
                }
                if a.mul(&id) != Ok(a.clone()) || id.mul(&a) != Ok(a.clone()) {
                    return err(format!("identity law fails on {a}"));
                }
                let inv = a.inverse();
                if !a.mul(&inv).map_err(|e| e.to_string())?.is_identity()
                    || !inv.mul(&a).map_err(|e| e.to_string())?.is_identity()
                {
                    return err(format!("inverse law fails on {a}"));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_03_tuple_embedding() {
    criterion(3, "tuple embedding and involutions", Some(5.0), || {
        let basis = Basis::standard(2);
        let k = 3;
        let mut s = Sampler::new(suite_seed(MASTER_SEED, "c3"));
        for _ in 0..200 {
            let t = s.tuple(&basis, k + 1, 4);
            let m = embed_tuple(&t);
            if extract_tuple(&m).map_err(|e| e.to_string())? != t {
                return err("embed/extract round trip failed".to_string());
            }
            for i in 1..=k {
                let twice = m.alpha(i).and_then(|x| x.alpha(i)).map_err(|e| e.to_string())?;
                if twice != m {
                    return err(format!("α_{i}² ≠ id on {m}"));
                }
                for j in 1..=k {
                    if i == j {
                        continue;
                    }
                    let mut x = m.clone();
                    for _ in 0..3 {
                        x = x.alpha(j).and_then(|y| y.alpha(i)).map_err(|e| e.to_string())?;
                    }
                    if x != m {
                        return err(format!("(α_{i}α_{j})³ ≠ id on {m}"));
                    }
                }
            }
            // Sym(k+1)-equivariance: α_i realizes the transposition (i, k+1)
            // on tuples, and coordinate swaps realize (i, j) for i, j ≤ k.
            for i in 1..=k {
                let mut entries = t.entries.clone();
                entries.swap(i - 1, k);
                let swapped = TupleElement::new(entries).map_err(|e| e.to_string())?;
                if embed_tuple(&swapped) != m.alpha(i).map_err(|e| e.to_string())? {
                    return err(format!("embedding not equivariant under (i {i}, {})", k + 1));
                }
                for j in i + 1..=k {
                    let mut entries = t.entries.clone();
                    entries.swap(i - 1, j - 1);
                    let swapped = TupleElement::new(entries).map_err(|e| e.to_string())?;
                    let mut coords = m.coords().to_vec();
                    coords.swap(i - 1, j - 1);
                    let permuted =
                        MkElement::new(coords, m.phi().clone()).map_err(|e| e.to_string())?;
                    if embed_tuple(&swapped) != permuted {
                        return err(format!("embedding not equivariant under ({i} {j})"));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_04_fixed_subgroup_of_powers() {
    criterion(4, "fixed subgroup of τ powers", Some(30.0), || {
        let basis = Basis::standard(2);
        let a1 = Word::generator(&basis, 0);
        let a2 = Word::generator(&basis, 1);
        let conj = a1
            .multiply(&a2)
            .and_then(|w| w.multiply(&a1.invert()))
            .map_err(|e| e.to_string())?;
        let oracle: Vec<Word> = subgroup_ball(&[conj, a2], 6)
            .into_iter()
            .filter(|w| w.len() <= 5)
            .collect();
        let tau = Automorphism::nielsen_tau(&basis);
        let reference = tau.fixed_words(5);
        if reference != oracle {
            return err(format!(
                "Fix(τ) ∩ B(5) has {} words, subgroup oracle lists {}",
                reference.len(),
                oracle.len()
            ));
        }
        for p in 2..=3 {
            if tau.pow(p).fixed_words(5) != reference {
                return err(format!("Fix(τ^{p}) ∩ B(5) differs from Fix(τ) ∩ B(5)"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_05_nielsen_detection() {
    criterion(5, "Nielsen power detection", Some(20.0), || {
        let basis = Basis::standard(2);
        let tau = Automorphism::nielsen_tau(&basis);
        let small: Vec<Word> = enumerate_ball(&basis, 2).collect();
        for g in &small {
            let ad_g = Automorphism::inner(g);
            for y in &small {
                let ad_y = Automorphism::inner(y);
                let conjugated = ad_y
                    .compose(&tau)
                    .and_then(|x| x.compose(&ad_y.inverse()))
                    .map_err(|e| e.to_string())?;
                for p in -3i32..=3 {
                    let phi = ad_g.compose(&conjugated.pow(p)).map_err(|e| e.to_string())?;
                    if !is_nielsen_power_outer(&phi).map_err(|e| e.to_string())? {
                        return err(format!("rejected ad_g∘(ad_y τ ad_y⁻¹)^{p}, g = {g}, y = {y}"));
                    }
                }
            }
        }
        let swap = Automorphism::parse(&basis, "a1 -> a2; a2 -> a1", 1).map_err(|e| e.to_string())?;
        let flip = Automorphism::parse(&basis, "a1 -> a1^-1", 1).map_err(|e| e.to_string())?;
        if is_nielsen_power_outer(&swap).map_err(|e| e.to_string())? {
            return err("basis swap accepted".to_string());
        }
        if is_nielsen_power_outer(&flip).map_err(|e| e.to_string())? {
            return err("sign flip accepted".to_string());
        }
        let violations = trace_closure_violations(3);
        if !violations.is_empty() {
            return err(format!("{} trace-closure violations over [-3,3]", violations.len()));
        }
        Ok(())
    });
}

#[test]
fn criterion_06_witnesses() {
    criterion(6, "similarity witnesses", None, || {
        let basis = Basis::standard(2);
        let tau = Automorphism::nielsen_tau(&basis);
        let positive = Automorphism::inner(&Word::generator(&basis, 1))
            .compose(&tau)
            .map_err(|e| e.to_string())?;
        match nielsen_power_witness(&positive, 2, 3).map_err(|e| e.to_string())? {
            WitnessOutcome::Witness(w) => {
                let expected_y = Word::generator(&basis, 0).invert();
                if w.p != 1 || w.y != expected_y {
                    return err(format!("expected (p = 1, y = a1^-1), got (p = {}, y = {})", w.p, w.y));
                }
                if !w.reproduces(&positive) {
                    return err("witness does not reproduce ad_a2∘τ".to_string());
                }
            }
            other => return err(format!("no witness for ad_a2∘τ: {other:?}")),
        }
        let negative = Automorphism::inner(&Word::generator(&basis, 0))
            .compose(&tau)
            .map_err(|e| e.to_string())?;
        match nielsen_power_witness(&negative, 4, 3).map_err(|e| e.to_string())? {
            WitnessOutcome::DefinitiveNo => Ok(()),
            other => err(format!("ad_a1∘τ should be a definitive negative, got {other:?}")),
        }
    });
}

#[test]
fn criterion_07_rose_stabilizer_bridge() {
    criterion(7, "rose stabilizer bridge", None, || {
        let a_basis = Basis::standard(2);
        for n in [3usize, 4] {
            let k = n - 2;
            let basis = Basis::standard(n);
            let rose = RoseSplitting::new(&basis, k).map_err(|e| e.to_string())?;
            let mut s = Sampler::new(suite_seed(MASTER_SEED, &format!("c7.n{n}")));
            for _ in 0..200 {
                let m = s.mk_element(&a_basis, 2 * k, 3, 3);
                let phi = mk_to_rose(&m, &rose).map_err(|e| e.to_string())?;
                let d = rose_stab_membership(&phi, &rose)
                    .ok_or_else(|| "lift left the stabilizer".to_string())?;
                if rose_to_mk(&d).map_err(|e| e.to_string())? != m {
                    return err(format!("round trip failed on {m}"));
                }
                let m2 = s.mk_element(&a_basis, 2 * k, 3, 3);
                let phi2 = mk_to_rose(&m2, &rose).map_err(|e| e.to_string())?;
                let lhs = mk_to_rose(&m.mul(&m2).map_err(|e| e.to_string())?, &rose)
                    .map_err(|e| e.to_string())?;
                if lhs != phi.compose(&phi2).map_err(|e| e.to_string())? {
                    return err(format!("bridge not multiplicative on {m}, {m2}"));
                }
            }
            // edge condition separates left from right transvections
            for w_text in ["a1", "a2", "a1 a2"] {
                let w = basis.parse_word(w_text).map_err(|e| e.to_string())?;
                for j in 1..=k {
                    let left = Automorphism::left_transvection(&basis, j, &w)
                        .map_err(|e| e.to_string())?;
                    let right = Automorphism::right_transvection(&basis, j, &w)
                        .map_err(|e| e.to_string())?;
                    if edge_stab_membership(&left, &rose, j) {
                        return err(format!("left transvection by {w} accepted at petal {j}"));
                    }
                    if !edge_stab_membership(&right, &rose, j) {
                        return err(format!("right transvection by {w} rejected at petal {j}"));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_tree_balls() {
    criterion(8, "tree balls and twisted action", Some(60.0), || {
        for n in [3usize, 4, 5] {
            let basis = Basis::standard(n);
            let rose = RoseSplitting::new(&basis, n - 2).map_err(|e| e.to_string())?;
            for l in 0..=3 {
                let ball = build_ball(&rose, l);
                if !ball.is_connected() {
                    return err(format!("N = {n}, L = {l}: ball disconnected"));
                }
                if !ball.is_tree() {
                    return err(format!("N = {n}, L = {l}: ball has a cycle"));
                }
            }
            let mut s = Sampler::new(suite_seed(MASTER_SEED, &format!("c8.n{n}")));
            for _ in 0..100 {
                let phi = s.stab0_automorphism(&basis, 3);
                let g = s.word(&basis, 4);
                let v = rose.coset_normal_form(&s.word(&basis, 4));
                let moved = rose.coset_normal_form(&g.multiply(v.rep()).map_err(|e| e.to_string())?);
                let lhs = twisted_vertex_action(&phi, &moved, &rose).map_err(|e| e.to_string())?;
                let fv = twisted_vertex_action(&phi, &v, &rose).map_err(|e| e.to_string())?;
                let rhs = rose.coset_normal_form(
                    &phi.apply(&g).multiply(fv.rep()).map_err(|e| e.to_string())?,
                );
                if lhs != rhs {
                    return err(format!("equivariance fails: N = {n}, g = {g}, v = {v}"));
                }
            }
            let ball = build_ball(&rose, 3);
            for g in enumerate_ball(&basis, 2) {
                let inner = Automorphism::inner(&g);
                for v in &ball.vertices {
                    let acted = twisted_vertex_action(&inner, v, &rose).map_err(|e| e.to_string())?;
                    let translated =
                        rose.coset_normal_form(&g.multiply(v.rep()).map_err(|e| e.to_string())?);
                    if acted != translated {
                        return err(format!("f_ad_g ≠ left translation: N = {n}, g = {g}, v = {v}"));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_lift_correction() {
    criterion(9, "inner-corrected lifts fix the base edge", None, || {
        let basis = Basis::standard(3);
        let rose = RoseSplitting::new(&basis, 1).map_err(|e| e.to_string())?;
        let ball = build_ball(&rose, 1);
        let a1 = Word::generator(&basis, 0);
        let a2 = Word::generator(&basis, 1);
        let mut gens = vec![Automorphism::identity(&basis)];
        for w in [&a1, &a2] {
            gens.push(Automorphism::left_transvection(&basis, 1, w).map_err(|e| e.to_string())?);
            gens.push(Automorphism::right_transvection(&basis, 1, w).map_err(|e| e.to_string())?);
            gens.push(Automorphism::inner(w));
        }
        gens.push(Automorphism::nielsen_tau(&basis));
        let with_inverses: Vec<Automorphism> = gens
            .iter()
            .cloned()
            .chain(gens.iter().map(Automorphism::inverse))
            .collect();
        let base = rose.coset_normal_form(&Word::identity(&basis));
        let x1 = rose.coset_normal_form(&Word::generator(&basis, 2));
        let mut checked = 0u64;
        for a in &with_inverses {
            for b in &with_inverses {
                let phi = a.compose(b).map_err(|e| e.to_string())?;
                let d = rose_stab_membership(&phi, &rose)
                    .ok_or_else(|| format!("product left Stab⁰: {phi}"))?;
                let corrected = Automorphism::inner(&d.u[0])
                    .inverse()
                    .compose(&phi)
                    .map_err(|e| e.to_string())?;
                if !edge_stab_membership(&corrected, &rose, 1) {
                    return err(format!("correction fails for {phi}"));
                }
                let fixes = fixes_arc(&corrected, &ball, &[(base.clone(), x1.clone())])
                    .map_err(|e| e.to_string())?;
                if !fixes {
                    return err(format!("corrected map moves the base edge for {phi}"));
                }
                checked += 1;
            }
        }
        if checked < 15 * 15 {
            return err(format!("only {checked} products checked"));
        }
        Ok(())
    });
}

#[test]
fn criterion_10_direct_product_families() {
    criterion(10, "direct-product families", Some(120.0), || {
        for n in [3usize, 4, 5] {
            for kind in FamilyKind::ALL {
                let factors = family_generators(kind, n).map_err(|e| e.to_string())?;
                let report = check_direct_product(&factors);
                if !report.cross_failures.is_empty() {
                    return err(format!(
                        "{} at N = {n}: non-commuting cross pair {:?}",
                        kind.name(),
                        report.cross_failures[0]
                    ));
                }
                if !report.passes(&factors) {
                    return err(format!("{} at N = {n}: missing nonabelian witness", kind.name()));
                }
                let nonabelian = factors.iter().filter(|f| f.expect_nonabelian).count();
                let expected = if kind.name().starts_with("Aut") { 2 * n - 3 } else { 2 * n - 4 };
                if nonabelian != expected {
                    return err(format!(
                        "{} at N = {n}: {nonabelian} nonabelian factors, expected {expected}",
                        kind.name()
                    ));
                }
                for (i, f1) in factors.iter().enumerate() {
                    for f2 in factors.iter().skip(i + 1) {
                        let common = bounded_intersection(f1, f2, 3);
                        if common.len() != 1 || !common[0].is_identity() {
                            return err(format!(
                                "{} at N = {n}: {} ∩ {} has {} elements at depth 3",
                                kind.name(),
                                f1.label,
                                f2.label,
                                common.len()
                            ));
                        }
                    }
                }
            }
            let central = centralizer_evidence(FamilyKind::AutTauCentral, n, None)
                .map_err(|e| e.to_string())?;
            if !central.tau_centralizes_all() {
                return err(format!("τ fails to centralize AutTauCentral at N = {n}: {:?}", central.failing_pair()));
            }
            let inner = centralizer_evidence(FamilyKind::AutTauInner, n, None)
                .map_err(|e| e.to_string())?;
            if !inner.tau_centralizes_other_factors() || inner.tau_factors.is_empty() {
                return err(format!("τ fails to centralize AutTauInner complements at N = {n}"));
            }
            let plain = centralizer_evidence(FamilyKind::AutPlain, n, None)
                .map_err(|e| e.to_string())?;
            let l1_fails = plain
                .per_generator
                .iter()
                .any(|(label, _, commutes)| label == "L_1" && !commutes);
            if !l1_fails {
                return err(format!("τ unexpectedly centralizes AutPlain's L_1 at N = {n}"));
            }
        }
        Ok(())
    });
}
