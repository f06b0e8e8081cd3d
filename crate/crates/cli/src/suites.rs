//! Seeded property-verification suites. Each suite checks one algebraic
//! contract of the core library on deterministic pseudo-random inputs and
//! reports the first counterexample it finds.

use anyhow::{anyhow, Result};
use fga_core::{
    ball_size, bounded_intersection, build_ball, centralizer_evidence, check_direct_product,
    commuting_nielsen_check, conjugate_family, depth_table, edge_stab_membership,
    edge_stab_to_mk, embed_tuple, enumerate_ball, extract_tuple, family_generators, fixes_arc,
    ia3_filter, is_nielsen_power_outer, mk_to_rose, nielsen_power_witness, rose_stab_membership,
    rose_to_mk, subgroup_ball, suite_seed, trace_closure_violations, twisted_vertex_action,
    Automorphism, Basis, FamilyKind, MkElement, ProbeBounds, RoseSplitting, Sampler, Sign,
    TreeBall, WitnessOutcome, WkElement, Word,
};

#[derive(Debug, Clone, Copy)]
pub struct SuiteCtx {
    pub seed: u64,
    pub n: usize,
    pub l: usize,
    pub depth: usize,
}

/// Pass with a sample count, or fail with a printable counterexample.
pub struct Outcome {
    pub samples: u64,
    pub counterexample: Option<String>,
}

impl Outcome {
    fn pass(samples: u64) -> Outcome {
        Outcome { samples, counterexample: None }
    }

    fn fail(samples: u64, counterexample: String) -> Outcome {
        Outcome { samples, counterexample: Some(counterexample) }
    }
}

pub struct Suite {
    pub name: &'static str,
    pub anchor: &'static str,
    pub run: fn(&SuiteCtx) -> Result<Outcome>,
}

/// Per-suite RNG, decoupled from the other suites so the registry can grow
/// without perturbing existing streams.
fn sampler(ctx: &SuiteCtx, name: &str) -> Sampler {
    Sampler::new(suite_seed(ctx.seed, name))
}

fn words_reduce(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "words.reduce");
    let basis = Basis::standard(ctx.n.max(2));
    let samples = 400;
    for _ in 0..samples {
        let w = s.word(&basis, 12);
        if Word::reduce(&basis, w.letters().iter().copied()) != w {
            return Ok(Outcome::fail(samples, format!("reduce not idempotent on {w}")));
        }
        if !w.multiply(&w.invert())?.is_identity() {
            return Ok(Outcome::fail(samples, format!("w·w⁻¹ ≠ 1 for w = {w}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn words_axioms(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "words.axioms");
    let basis = Basis::standard(ctx.n.max(2));
    let samples = 300;
    let e = Word::identity(&basis);
    for _ in 0..samples {
        let (a, b, c) = (s.word(&basis, 8), s.word(&basis, 8), s.word(&basis, 8));
        if a.multiply(&b)?.multiply(&c)? != a.multiply(&b.multiply(&c)?)? {
            return Ok(Outcome::fail(samples, format!("associativity: {a}, {b}, {c}")));
        }
        if a.multiply(&e)? != a || e.multiply(&a)? != a {
            return Ok(Outcome::fail(samples, format!("identity law: {a}")));
        }
        if !a.invert().multiply(&a)?.is_identity() {
            return Ok(Outcome::fail(samples, format!("inverse law: {a}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn words_ball(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut samples = 0;
    for rank in 2..=ctx.n.max(3) {
        let basis = Basis::standard(rank);
        for l in 0..=ctx.l.max(3) {
            let words: Vec<Word> = enumerate_ball(&basis, l).collect();
            samples += words.len() as u64;
            if words.len() as u64 != ball_size(rank, l) {
                return Ok(Outcome::fail(
                    samples,
                    format!("|B({l})| in rank {rank}: got {}, formula {}", words.len(), ball_size(rank, l)),
                ));
            }
            if words.windows(2).any(|p| p[0] >= p[1]) {
                return Ok(Outcome::fail(samples, format!("B({l}) in rank {rank} not length-lex sorted")));
            }
        }
    }
    Ok(Outcome::pass(samples))
}

fn words_strip(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "words.strip");
    let basis = Basis::standard(ctx.n.max(3));
    let factor = [0usize, 1];
    let samples = 300;
    for _ in 0..samples {
        let w = s.word(&basis, 10);
        let (prefix, rest) = w.strip_prefix(&factor);
        if !prefix.in_factor(&factor) || prefix.multiply(&rest)? != w {
            return Ok(Outcome::fail(samples, format!("strip_prefix unsound on {w}")));
        }
        if !rest.is_identity() && rest.letters()[0].index < 2 {
            return Ok(Outcome::fail(samples, format!("strip_prefix not maximal on {w}")));
        }
        let (rem, suffix) = w.strip_suffix(&factor);
        if !suffix.in_factor(&factor) || rem.multiply(&suffix)? != w {
            return Ok(Outcome::fail(samples, format!("strip_suffix unsound on {w}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn aut_functorial(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "aut.functorial");
    let basis = Basis::standard(ctx.n.max(3));
    let samples = 150;
    for _ in 0..samples {
        let phi = s.stab0_automorphism(&basis, 4);
        let psi = s.stab0_automorphism(&basis, 4);
        let w = s.word(&basis, 6);
        if phi.compose(&psi)?.apply(&w) != phi.apply(&psi.apply(&w)) {
            return Ok(Outcome::fail(samples, format!("(φ∘ψ)(w) ≠ φ(ψ(w)) at w = {w}")));
        }
        if !phi.compose(&phi.inverse())?.is_identity() {
            return Ok(Outcome::fail(samples, format!("φ∘φ⁻¹ ≠ id for {phi}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn aut_inner(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "aut.inner");
    let basis = Basis::standard(ctx.n.max(2));
    let samples = 200;
    for _ in 0..samples {
        let g = s.word(&basis, 6);
        let h = s.word(&basis, 6);
        let lhs = Automorphism::inner(&g).compose(&Automorphism::inner(&h))?;
        if lhs != Automorphism::inner(&g.multiply(&h)?) {
            return Ok(Outcome::fail(samples, format!("ad_g∘ad_h ≠ ad_gh: g = {g}, h = {h}")));
        }
        if Automorphism::inner(&g).inner_conjugator()? != g {
            return Ok(Outcome::fail(samples, format!("conjugator recovery failed on g = {g}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn aut_matrix(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "aut.matrix");
    let basis = Basis::standard(2);
    let samples = 150;
    for _ in 0..samples {
        let phi = s.f2_automorphism(&basis, 5);
        let psi = s.f2_automorphism(&basis, 5);
        let product = phi.abelianization_matrix(None).multiply(&psi.abelianization_matrix(None));
        if phi.compose(&psi)?.abelianization_matrix(None) != product {
            return Ok(Outcome::fail(samples, format!("abelianization not a homomorphism: {phi} / {psi}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn aut_parse(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "aut.parse");
    let basis = Basis::standard(ctx.n.max(3));
    let samples = 60;
    for _ in 0..samples {
        let phi = s.stab0_automorphism(&basis, 3);
        // Display omits the witness; supply it explicitly as the inverse's
        // own listing so the round trip needs no search.
        let text = format!("{phi} | {}", phi.inverse());
        if Automorphism::parse(&basis, &text, 0)? != phi {
            return Ok(Outcome::fail(samples, format!("display/parse round trip failed on {text}")));
        }
        let searched = s.stab0_automorphism(&basis, 1);
        if Automorphism::parse(&basis, &searched.to_string(), 5)? != searched {
            return Ok(Outcome::fail(samples, format!("witness search round trip failed on {searched}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn aut_collins_turner(ctx: &SuiteCtx) -> Result<Outcome> {
    let basis = Basis::standard(2);
    let a1 = Word::generator(&basis, 0);
    let a2 = Word::generator(&basis, 1);
    let conj = a1.multiply(&a2)?.multiply(&a1.invert())?;
    let bound = ctx.l.max(3);
    let oracle: Vec<Word> = subgroup_ball(&[conj, a2], bound + 1)
        .into_iter()
        .filter(|w| w.len() <= bound)
        .collect();
    let mut samples = 0;
    for p in [1, 2, -1] {
        let tau_p = Automorphism::nielsen_tau(&basis).pow(p);
        let fixed = tau_p.fixed_words(bound);
        samples += fixed.len() as u64;
        if fixed != oracle {
            return Ok(Outcome::fail(
                samples,
                format!("Fix(τ^{p}) ∩ B({bound}) has {} words, expected {}", fixed.len(), oracle.len()),
            ));
        }
    }
    Ok(Outcome::pass(samples))
}

fn nielsen_outer(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "nielsen.outer");
    let basis = Basis::standard(2);
    let tau = Automorphism::nielsen_tau(&basis);
    let mut samples = 0;
    for p in -4i32..=4 {
        samples += 1;
        let g = s.word(&basis, 4);
        let candidate = Automorphism::inner(&g).compose(&tau.pow(p))?;
        if !is_nielsen_power_outer(&candidate)? {
            return Ok(Outcome::fail(samples, format!("ad_g∘τ^{p} rejected, g = {g}")));
        }
    }
    let swap = Automorphism::parse(&basis, "a1 -> a2; a2 -> a1", 2)?;
    samples += 1;
    if is_nielsen_power_outer(&swap)? {
        return Ok(Outcome::fail(samples, "basis swap accepted".to_string()));
    }
    Ok(Outcome::pass(samples))
}

fn nielsen_witness(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "nielsen.witness");
    let basis = Basis::standard(2);
    let tau = Automorphism::nielsen_tau(&basis);
    let samples = 40;
    for i in 0..samples {
        let y = s.word(&basis, 3);
        let p = (i % 7) as i32 - 3;
        let ad_y = Automorphism::inner(&y);
        let phi = ad_y.compose(&tau.pow(p))?.compose(&ad_y.inverse())?;
        match nielsen_power_witness(&phi, y.len() + 2, 4)? {
            WitnessOutcome::Witness(w) => {
                if !w.reproduces(&phi) {
                    return Ok(Outcome::fail(samples, format!("witness does not reproduce φ: y = {y}, p = {p}")));
                }
            }
            other => {
                return Ok(Outcome::fail(samples, format!("no witness for y = {y}, p = {p}: {other:?}")));
            }
        }
    }
    Ok(Outcome::pass(samples))
}

fn nielsen_commuting(ctx: &SuiteCtx) -> Result<Outcome> {
    let basis = Basis::standard(2);
    let tau = Automorphism::nielsen_tau(&basis);
    let fixed = tau.fixed_words(ctx.l.max(3));
    let samples = fixed.len() as u64;
    for w in &fixed {
        let tau1 = Automorphism::inner(w).compose(&tau)?;
        let report = commuting_nielsen_check(&tau, &tau1, 2, 2, w.len().max(1))?;
        if !report.commute || !report.powers_commute {
            return Ok(Outcome::fail(samples, format!("ad_w∘τ fails to commute with τ, w = {w}")));
        }
        if report.fix_witness.is_none() {
            return Ok(Outcome::fail(samples, format!("no Fix(τ) witness found for w = {w}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn nielsen_trace(_ctx: &SuiteCtx) -> Result<Outcome> {
    let violations = trace_closure_violations(3);
    if let Some((m, c)) = violations.first() {
        return Ok(Outcome::fail(1, format!("trace-closure violation: {m:?}, lower-left {c}")));
    }
    Ok(Outcome::pass(7u64.pow(3)))
}

fn mk_assoc(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "mk.assoc");
    let basis = Basis::standard(2);
    let samples = 1000;
    for _ in 0..samples {
        let a = s.mk_element(&basis, 3, 4, 3);
        let b = s.mk_element(&basis, 3, 4, 3);
        let c = s.mk_element(&basis, 3, 4, 3);
        if a.mul(&b)?.mul(&c)? != a.mul(&b.mul(&c)?)? {
            return Ok(Outcome::fail(samples, format!("associativity: {a}, {b}, {c}")));
        }
        if !a.mul(&a.inverse())?.is_identity() || !a.inverse().mul(&a)?.is_identity() {
            return Ok(Outcome::fail(samples, format!("inverse law: {a}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn mk_j(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "mk.j");
    let basis = Basis::standard(2);
    let samples = 150;
    for _ in 0..samples {
        let g = s.word(&basis, 5);
        let h = s.word(&basis, 5);
        let jg = MkElement::j(&g, 2);
        let jh = MkElement::j(&h, 2);
        if jg.mul(&jh)? != MkElement::j(&g.multiply(&h)?, 2) {
            return Ok(Outcome::fail(samples, format!("J not multiplicative: g = {g}, h = {h}")));
        }
        if jg.as_j_element() != Some(g.clone()) {
            return Ok(Outcome::fail(samples, format!("as_j_element lost g = {g}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn mk_embed(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "mk.embed");
    let basis = Basis::standard(2);
    let k = 3;
    let samples = 100;
    for _ in 0..samples {
        let t = s.tuple(&basis, k + 1, 4);
        let m = embed_tuple(&t);
        if extract_tuple(&m)? != t {
            return Ok(Outcome::fail(samples, "embed/extract round trip failed".to_string()));
        }
        for i in 1..=k {
            if !m.alpha(i)?.alpha(i)?.eq(&m) {
                return Ok(Outcome::fail(samples, format!("α_{i} not an involution on {m}")));
            }
        }
        // (α₁α₂)³ = id as a transformation: apply it three times.
        let mut x = m.clone();
        for _ in 0..3 {
            x = x.alpha(1)?.alpha(2)?;
        }
        if x != m {
            return Ok(Outcome::fail(samples, format!("(α₁α₂)³ ≠ id on {m}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn mk_pi(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "mk.pi");
    let basis = Basis::standard(2);
    let samples = 120;
    for _ in 0..samples {
        let a = s.mk_element(&basis, 2, 3, 4);
        let b = s.mk_element(&basis, 2, 3, 4);
        let product = a.pi_bar_matrix(Some(3)).multiply(&b.pi_bar_matrix(Some(3)));
        if a.mul(&b)?.pi_bar_matrix(Some(3)) != product {
            return Ok(Outcome::fail(samples, format!("π̄ mod 3 not a homomorphism: {a}, {b}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn split_ball(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut samples = 0;
    for n in 3..=ctx.n.max(4) {
        let basis = Basis::standard(n);
        let rose = RoseSplitting::new(&basis, n - 2)?;
        for l in 0..=ctx.l.max(2) {
            let ball = build_ball(&rose, l);
            samples += ball.vertices.len() as u64;
            let expected = enumerate_ball(&basis, l)
                .filter(|w| rose.coset_normal_form(w).rep() == w)
                .count();
            if ball.vertices.len() != expected {
                return Ok(Outcome::fail(samples, format!("N = {n}, L = {l}: {} vertices, expected {expected}", ball.vertices.len())));
            }
            if !ball.is_tree() {
                return Ok(Outcome::fail(samples, format!("ball N = {n}, L = {l} is not a tree")));
            }
        }
    }
    Ok(Outcome::pass(samples))
}

fn split_equivariance(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "split.equivariance");
    let n = ctx.n.max(3);
    let basis = Basis::standard(n);
    let rose = RoseSplitting::new(&basis, n - 2)?;
    let samples = 80;
    for _ in 0..samples {
        let phi = s.stab0_automorphism(&basis, 3);
        let g = s.word(&basis, 4);
        let v = rose.coset_normal_form(&s.word(&basis, 4));
        let moved = rose.coset_normal_form(&g.multiply(v.rep())?);
        let lhs = twisted_vertex_action(&phi, &moved, &rose)?;
        let rhs = rose.coset_normal_form(&phi.apply(&g).multiply(twisted_vertex_action(&phi, &v, &rose)?.rep())?);
        if lhs != rhs {
            return Ok(Outcome::fail(samples, format!("f_φ(g·v) ≠ φ(g)·f_φ(v): g = {g}, v = {v}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn split_translation(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "split.translation");
    let n = ctx.n.max(3);
    let basis = Basis::standard(n);
    let rose = RoseSplitting::new(&basis, n - 2)?;
    let samples = 120;
    for _ in 0..samples {
        let g = s.word(&basis, 5);
        let v = rose.coset_normal_form(&s.word(&basis, 4));
        let acted = twisted_vertex_action(&Automorphism::inner(&g), &v, &rose)?;
        if acted != rose.coset_normal_form(&g.multiply(v.rep())?) {
            return Ok(Outcome::fail(samples, format!("f_ad_g not left translation: g = {g}, v = {v}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn split_rose_mk(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "split.rose_mk");
    let n = ctx.n.max(3);
    let k = n - 2;
    let basis = Basis::standard(n);
    let a_basis = Basis::standard(2);
    let rose = RoseSplitting::new(&basis, k)?;
    let samples = 60;
    for _ in 0..samples {
        let m1 = s.mk_element(&a_basis, 2 * k, 3, 3);
        let m2 = s.mk_element(&a_basis, 2 * k, 3, 3);
        let phi1 = mk_to_rose(&m1, &rose)?;
        let d = rose_stab_membership(&phi1, &rose)
            .ok_or_else(|| anyhow!("lifted element not in rose stabilizer"))?;
        if rose_to_mk(&d)? != m1 {
            return Ok(Outcome::fail(samples, format!("round trip failed on {m1}")));
        }
        let phi2 = mk_to_rose(&m2, &rose)?;
        if mk_to_rose(&m1.mul(&m2)?, &rose)? != phi1.compose(&phi2)? {
            return Ok(Outcome::fail(samples, format!("bridge not multiplicative: {m1}, {m2}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn split_edge(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "split.edge");
    let n = ctx.n.max(3);
    let k = n - 2;
    let basis = Basis::standard(n);
    let a_basis = Basis::standard(2);
    let rose = RoseSplitting::new(&basis, k)?;
    let samples: u64 = 60;
    for i in 0..samples {
        let mut m = s.mk_element(&a_basis, 2 * k, 3, 3);
        let j = (i as usize) % k + 1;
        let in_edge = i % 2 == 0;
        if in_edge {
            let mut coords = m.coords().to_vec();
            coords[j - 1] = Word::identity(&a_basis);
            m = MkElement::new(coords, m.phi().clone())?;
        }
        let phi = mk_to_rose(&m, &rose)?;
        let member = edge_stab_membership(&phi, &rose, j);
        let u_trivial = m.coord(j - 1).is_identity();
        if member != u_trivial {
            return Ok(Outcome::fail(samples, format!("edge membership mismatch at petal {j}: {m}")));
        }
        if member {
            let d = rose_stab_membership(&phi, &rose).ok_or_else(|| anyhow!("not in stabilizer"))?;
            if edge_stab_to_mk(&d, j)?.arity() != 2 * k - 1 {
                return Ok(Outcome::fail(samples, format!("edge image has wrong arity: {m}")));
            }
        }
    }
    Ok(Outcome::pass(samples))
}

fn split_wk(_ctx: &SuiteCtx) -> Result<Outcome> {
    let k = 3;
    // all signed permutations of 3 petals
    let mut all = Vec::new();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        for bits in 0..(1 << k) {
            let signs = (0..k)
                .map(|i| if bits >> i & 1 == 0 { Sign::Plus } else { Sign::Minus })
                .collect();
            all.push(WkElement { perm: perm.to_vec(), signs });
        }
    }
    let samples = (all.len() * all.len()) as u64;
    let id = WkElement::identity(k);
    for a in &all {
        if !a.compose(&a.inverse()).is_identity() || !a.inverse().compose(a).is_identity() {
            return Ok(Outcome::fail(samples, format!("inverse law fails: {a:?}")));
        }
        for b in &all {
            let ab = a.compose(b);
            if ab.compose(&id) != ab || !all.contains(&ab) {
                return Ok(Outcome::fail(samples, format!("composition leaves the group: {a:?}, {b:?}")));
            }
        }
    }
    Ok(Outcome::pass(samples))
}

/// λ'_a (x₁ ↦ x₁a, vertex factor conjugated by a⁻¹) lies in the petal-1
/// edge stabilizer, and its M_{2k-1}(A) image is the J-element of a⁻¹.
fn split_bridge(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "split.bridge");
    let n = ctx.n.max(3);
    let basis = Basis::standard(n);
    let rose = RoseSplitting::new(&basis, n - 2)?;
    let samples = 40;
    for _ in 0..samples {
        let a = s.factor_word(&basis, 3);
        let ai = a.invert();
        let mut images = Vec::new();
        let mut inverse_images = Vec::new();
        for i in 0..n {
            let x = Word::generator(&basis, i);
            if i == 2 {
                images.push(x.multiply(&a)?);
                inverse_images.push(x.multiply(&ai)?);
            } else {
                images.push(ai.multiply(&x)?.multiply(&a)?);
                inverse_images.push(a.multiply(&x)?.multiply(&ai)?);
            }
        }
        let lambda = Automorphism::new(&basis, images, inverse_images)?;
        if !edge_stab_membership(&lambda, &rose, 1) {
            return Ok(Outcome::fail(samples, format!("λ'_a not in edge stabilizer, a = {a}")));
        }
        let d = rose_stab_membership(&lambda, &rose).ok_or_else(|| anyhow!("not in stabilizer"))?;
        let image = edge_stab_to_mk(&d, 1)?;
        let a_basis = Basis::standard(2);
        let expected = a_basis.parse_word(&ai.to_string())?;
        if image.as_j_element() != Some(expected) {
            return Ok(Outcome::fail(samples, format!("Θ(λ'_a) ≠ J(a⁻¹), a = {a}, image = {image}")));
        }
    }
    Ok(Outcome::pass(samples))
}

/// Every rose-stabilizer element with trivial signed permutation becomes an
/// edge stabilizer after correcting by the inner automorphism of u₁, and the
/// corrected map fixes the base edge as an arc of the tree.
fn split_lift(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "split.lift");
    let n = ctx.n.max(3);
    let basis = Basis::standard(n);
    let rose = RoseSplitting::new(&basis, n - 2)?;
    let ball = arc_ball(&rose);
    let samples = 60;
    for _ in 0..samples {
        let phi = s.stab0_automorphism(&basis, 4);
        let d = rose_stab_membership(&phi, &rose).ok_or_else(|| anyhow!("sampled outside Stab⁰"))?;
        let corrected = Automorphism::inner(&d.u[0]).inverse().compose(&phi)?;
        if !edge_stab_membership(&corrected, &rose, 1) {
            return Ok(Outcome::fail(samples, format!("correction by u₁ fails for {phi}")));
        }
        let base = rose.coset_normal_form(&Word::identity(&basis));
        let x1 = rose.coset_normal_form(&Word::generator(&basis, 2));
        if !fixes_arc(&corrected, &ball, &[(base, x1)])? {
            return Ok(Outcome::fail(samples, format!("corrected map moves the base edge for {phi}")));
        }
    }
    Ok(Outcome::pass(samples))
}

fn arc_ball(rose: &RoseSplitting) -> TreeBall {
    build_ball(rose, 1)
}

fn families_products(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut samples = 0;
    for kind in FamilyKind::ALL {
        for n in [3, ctx.n.max(3)] {
            let factors = family_generators(kind, n)?;
            samples += factors.len() as u64;
            let report = check_direct_product(&factors);
            if !report.passes(&factors) {
                return Ok(Outcome::fail(samples, format!("{} at N = {n}: {:?}", kind.name(), report.cross_failures.first())));
            }
            let expected = expected_factor_count(kind, n);
            if factors.len() != expected {
                return Ok(Outcome::fail(samples, format!("{} at N = {n}: {} factors, expected {expected}", kind.name(), factors.len())));
            }
        }
    }
    Ok(Outcome::pass(samples))
}

fn expected_factor_count(kind: FamilyKind, n: usize) -> usize {
    match kind {
        FamilyKind::DB => 2 * (n - 2),
        FamilyKind::AutPlain => 2 * n - 3,
        FamilyKind::AutTauCentral => 2 * n - 2,
        FamilyKind::AutTauFirst | FamilyKind::AutTauInner => 2 * n - 3,
        FamilyKind::OutPlain => 2 * n - 4,
        FamilyKind::OutTauCentral => 2 * n - 3,
        FamilyKind::OutTauFirst => 2 * n - 4,
    }
}

fn families_db(ctx: &SuiteCtx) -> Result<Outcome> {
    let factors = family_generators(FamilyKind::DB, ctx.n.max(3))?;
    let mut samples = 0;
    let report = check_direct_product(&factors);
    if !report.passes(&factors) {
        return Ok(Outcome::fail(samples, format!("{:?}", report.cross_failures.first())));
    }
    for f in &factors {
        for g in &f.generators {
            samples += 1;
            if g.is_inner() {
                return Ok(Outcome::fail(samples, format!("{} generator is inner: {g}", f.label)));
            }
        }
    }
    Ok(Outcome::pass(samples))
}

fn families_intersections(ctx: &SuiteCtx) -> Result<Outcome> {
    let depth = ctx.depth.min(3).max(2);
    let mut samples = 0;
    for kind in [FamilyKind::AutPlain, FamilyKind::AutTauCentral, FamilyKind::OutPlain] {
        let factors = family_generators(kind, 3)?;
        for (i, f1) in factors.iter().enumerate() {
            for f2 in factors.iter().skip(i + 1) {
                samples += 1;
                let common = bounded_intersection(f1, f2, depth);
                if common.len() != 1 || !common[0].is_identity() {
                    return Ok(Outcome::fail(samples, format!("{} ∩ {} has {} elements at depth {depth}", f1.label, f2.label, common.len())));
                }
            }
        }
    }
    Ok(Outcome::pass(samples))
}

fn families_centralizer(ctx: &SuiteCtx) -> Result<Outcome> {
    let n = ctx.n.max(3);
    let mut samples = 0;
    for kind in FamilyKind::ALL {
        let ev = centralizer_evidence(kind, n, None)?;
        samples += ev.per_generator.len() as u64;
        let ok = match kind {
            FamilyKind::AutTauCentral | FamilyKind::OutTauCentral => ev.tau_centralizes_all(),
            FamilyKind::AutTauFirst | FamilyKind::AutTauInner | FamilyKind::OutTauFirst => {
                ev.tau_centralizes_other_factors() && !ev.tau_factors.is_empty()
            }
            FamilyKind::DB | FamilyKind::AutPlain | FamilyKind::OutPlain => !ev.tau_centralizes_all(),
        };
        if !ok {
            return Ok(Outcome::fail(samples, format!("centralization pattern wrong for {}: {:?}", kind.name(), ev.failing_pair())));
        }
    }
    let probed = centralizer_evidence(
        FamilyKind::AutTauCentral,
        3,
        Some(ProbeBounds { coord_len: 1, tau_power: 1 }),
    )?;
    let probe = probed.probe.ok_or_else(|| anyhow!("probe missing"))?;
    samples += probe.len() as u64;
    if !probe.iter().any(|m| m.to_string() == "(1 | 1 ; a1 -> a1 a2)") {
        return Ok(Outcome::fail(samples, "τ image missing from its own centralizer probe".to_string()));
    }
    Ok(Outcome::pass(samples))
}

fn families_ia3(ctx: &SuiteCtx) -> Result<Outcome> {
    let factors = family_generators(FamilyKind::AutTauCentral, 3)?;
    let tau_factor = factors
        .iter()
        .find(|f| f.label == "<t>")
        .ok_or_else(|| anyhow!("<t> factor missing"))?;
    let d = ctx.depth.max(3);
    let table = depth_table(tau_factor, d);
    let samples = table.len() as u64;
    if table.len() != 2 * d + 1 {
        return Ok(Outcome::fail(samples, format!("|<t>| at depth {d} is {}, expected {}", table.len(), 2 * d + 1)));
    }
    let congruent = ia3_filter(tau_factor, 3);
    if congruent.len() != 3 || !congruent.iter().all(Automorphism::is_in_ia3) {
        return Ok(Outcome::fail(samples, format!("IA₃ slice of <t> at depth 3 has {} elements, expected 3", congruent.len())));
    }
    Ok(Outcome::pass(samples))
}

fn families_conjugation(ctx: &SuiteCtx) -> Result<Outcome> {
    let mut s = sampler(ctx, "families.conjugation");
    let n = ctx.n.max(3);
    let basis = Basis::standard(n);
    let samples = 10;
    for kind in [FamilyKind::AutPlain, FamilyKind::AutTauCentral] {
        let factors = family_generators(kind, n)?;
        for _ in 0..samples / 2 {
            let psi = s.stab0_automorphism(&basis, 3);
            let conjugated = conjugate_family(&factors, &psi)?;
            let report = check_direct_product(&conjugated);
            if !report.passes(&conjugated) {
                return Ok(Outcome::fail(samples, format!("conjugate of {} by {psi} fails", kind.name())));
            }
        }
    }
    Ok(Outcome::pass(samples))
}

pub fn registry() -> Vec<Suite> {
    vec![
        Suite { name: "words.reduce", anchor: "free reduction is idempotent and w·w⁻¹ = 1", run: words_reduce },
        Suite { name: "words.axioms", anchor: "group axioms hold for reduced-word multiplication", run: words_axioms },
        Suite { name: "words.ball", anchor: "ball enumeration matches the counting formula, length-lex sorted", run: words_ball },
        Suite { name: "words.strip", anchor: "maximal factor prefix/suffix stripping is sound", run: words_strip },
        Suite { name: "aut.functorial", anchor: "composition and inversion of automorphisms act functorially", run: aut_functorial },
        Suite { name: "aut.inner", anchor: "inner automorphisms form a homomorphic image with exact conjugator recovery", run: aut_inner },
        Suite { name: "aut.matrix", anchor: "abelianization is a homomorphism to GL(2,Z)", run: aut_matrix },
        Suite { name: "aut.parse", anchor: "automorphism display/parse round trip", run: aut_parse },
        Suite { name: "aut.collins_turner", anchor: "Fix(τ^p) is the rank-2 subgroup <a1a2a1⁻¹, a2> for p ≠ 0", run: aut_collins_turner },
        Suite { name: "nielsen.outer", anchor: "trace-2 det-1 criterion accepts ad_g∘τ^p and rejects a basis swap", run: nielsen_outer },
        Suite { name: "nielsen.witness", anchor: "bounded search recovers (p, y) from ad_y∘τ^p∘ad_y⁻¹", run: nielsen_witness },
        Suite { name: "nielsen.commuting", anchor: "conjugates of τ by Fix(τ) elements commute, with a fixed-word witness", run: nielsen_commuting },
        Suite { name: "nielsen.trace", anchor: "trace condition on elementary products forces a vanishing corner entry", run: nielsen_trace },
        Suite { name: "mk.assoc", anchor: "semidirect-product law is associative with two-sided inverses", run: mk_assoc },
        Suite { name: "mk.j", anchor: "the twisted diagonal J is a multiplicative copy of A", run: mk_j },
        Suite { name: "mk.embed", anchor: "tuple embedding inverts exactly; the α_i are involutions with order-3 pairs", run: mk_embed },
        Suite { name: "mk.pi", anchor: "mod-3 abelianization of the Aut-part is multiplicative", run: mk_pi },
        Suite { name: "split.ball", anchor: "coset balls are trees with the right vertex count", run: split_ball },
        Suite { name: "split.equivariance", anchor: "the twisted vertex action is φ-equivariant", run: split_equivariance },
        Suite { name: "split.translation", anchor: "inner automorphisms act by left translation", run: split_translation },
        Suite { name: "split.rose_mk", anchor: "Stab⁰ ↔ M_2k(A) bridge is a multiplicative bijection", run: split_rose_mk },
        Suite { name: "split.edge", anchor: "edge stabilizer membership is exactly u_j = 1, image has arity 2k−1", run: split_edge },
        Suite { name: "split.wk", anchor: "signed petal permutations close under composition and inversion", run: split_wk },
        Suite { name: "split.bridge", anchor: "petal-1 transvections by a map to J-elements of a⁻¹", run: split_bridge },
        Suite { name: "split.lift", anchor: "correcting by ad_u₁ lands in the edge stabilizer and fixes the base arc", run: split_lift },
        Suite { name: "families.products", anchor: "generator families pairwise commute with the expected factor counts", run: families_products },
        Suite { name: "families.DB", anchor: "the doubled transvection family commutes across factors with no inner generators", run: families_db },
        Suite { name: "families.intersections", anchor: "distinct factors meet trivially in bounded product depth", run: families_intersections },
        Suite { name: "families.centralizer", anchor: "τ centralizes exactly the factors each family variant predicts", run: families_centralizer },
        Suite { name: "families.ia3", anchor: "the <t> factor is infinite cyclic; only cubes survive the mod-3 filter", run: families_ia3 },
        Suite { name: "families.conjugation", anchor: "direct-product structure is conjugation invariant", run: families_conjugation },
    ]
}
