use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Debug;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ArithmeticModel, Campaign, ClaimId, Failure};
use crate::monomial::{
    common_ambient, extended_group_equal, is_subgroup, sampling, MonoGroup, MonoMatrix, MonoVector, RegularElement,
    RootScalar, StabilizerProbe, Stratum,
};
use crate::taxonomy::{
    all_regular_central_of, divisible_count, gcd_of, regular_hyperplane_numbers_of, regular_numbers_of,
    GroupDescriptor,
};

/// Result of one claim on one group.
pub(super) struct Outcome {
    pub applicable: bool,
    pub checks: u64,
    pub failures: Vec<Failure>,
    descriptor: GroupDescriptor,
}

impl Outcome {
    fn new(descriptor: GroupDescriptor) -> Self {
        Outcome {
            applicable: true,
            checks: 0,
            failures: Vec::new(),
            descriptor,
        }
    }

    /// Records one comparison of a closed form (`expected`) with the
    /// oracle (`got`).
    fn expect<T: PartialEq + Debug>(&mut self, witness: impl FnOnce() -> String, expected: T, got: T) {
        self.checks += 1;
        if expected != got {
            self.failures.push(Failure {
                descriptor: self.descriptor.to_string(),
                witness: witness(),
                expected: format!("{expected:?}"),
                got: format!("{got:?}"),
            });
        }
    }
}

fn text(s: &str) -> impl FnOnce() -> String + '_ {
    move || s.to_string()
}

fn vector_witness(x: &MonoVector, l: u64) -> String {
    format!("x = {} with z = exp(2pi*i/{l})", x.display_in(l))
}

fn pair_witness(g: &MonoGroup, r: &RegularElement) -> String {
    format!(
        "w = {} with eigenvalue {} (z = exp(2pi*i/{}))",
        g.elements()[r.index],
        r.eigenvalue.display_in(g.ambient()),
        g.ambient()
    )
}

fn descriptor(m: u32, p: u32, n: u32) -> GroupDescriptor {
    GroupDescriptor::Imprimitive { m, p, n }
}

fn rng_for(seed: u64, (m, p, n): (u32, u32, u32)) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((m as u64) << 32) | ((p as u64) << 16) | n as u64);
    rng
}

pub(super) fn check(
    c: &Campaign,
    model: &dyn ArithmeticModel,
    params: (u32, u32, u32),
    all: &[(u32, u32, u32)],
) -> Outcome {
    let (m, p, n) = params;
    let d = descriptor(m, p, n);
    let mut out = Outcome::new(d);
    let cap = c.cap as u128;
    let g = match MonoGroup::build(m, p, n, cap) {
        Ok(g) => g,
        Err(e) => {
            out.expect(text("materialization"), "group".to_string(), e.to_string());
            return out;
        }
    };
    let mut rng = rng_for(c.seed, params);
    match c.claim_id {
        ClaimId::OrderFormula => order_formula(&mut out, model, &g, c.samples, &mut rng),
        ClaimId::CenterGcd => center_gcd(&mut out, model, &g),
        ClaimId::RegularCriterion => regular_criterion(&mut out, model, &g),
        ClaimId::RegularHyperplanesFull => regular_hyperplanes(&mut out, model, &g),
        ClaimId::StabilizerLemmaA | ClaimId::StabilizerLemmaB | ClaimId::StabilizerLemmaC => {
            stabilizer_lemma(&mut out, c.claim_id, &g, c.samples, &mut rng)
        }
        ClaimId::FullGroupCase3 => full_group_case(&mut out, model, &g, all, cap, true),
        ClaimId::FullGroupCase4 => full_group_case(&mut out, model, &g, all, cap, false),
        ClaimId::ExtendedEqualityLemma => extended_equality(&mut out, model, &g, all, cap),
        ClaimId::AllRegularCentralCriterion => all_regular_central(&mut out, model, &g),
        ClaimId::BraidShadowConsistency => braid_shadow(&mut out, model, &g, cap),
    }
    out
}

/// Size of the group generated by `gens`, by breadth-first closure.
fn closure_size(gens: &[MonoMatrix], n: usize, l: u64) -> usize {
    let id = MonoMatrix::identity(n, l);
    let mut seen: HashSet<MonoMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = s.compose(&x);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn order_formula(out: &mut Outcome, model: &dyn ArithmeticModel, g: &MonoGroup, samples: usize, rng: &mut ChaCha8Rng) {
    let d = g.descriptor();
    let order = g.order() as u128;
    let generated = closure_size(&g.reflections(), g.rank(), g.ambient()) as u128;
    out.expect(text("order of the group generated by the reflections"), order, generated);
    let degrees = model.degrees(&d);
    out.expect(text("product of the degrees"), degrees.iter().map(|&x| x as u128).product(), order);
    out.expect(text("m^n n!/p"), model.group_order(&d), order);
    let scalars = g.scalars().len() as u128;
    out.expect(text("central index m^(n-1) n!/gcd(p,n)"), model.central_index(&d), order / scalars);
    for _ in 0..samples {
        let a = &g.elements()[rng.random_range(0..g.order())];
        let b = &g.elements()[rng.random_range(0..g.order())];
        out.expect(|| format!("closure: ({a}) * ({b})"), true, g.contains(&a.compose(b)));
        out.expect(|| format!("inverse of {a}"), true, g.contains(&a.inverse()));
    }
}

fn center_gcd(out: &mut Outcome, model: &dyn ArithmeticModel, g: &MonoGroup) {
    let gens = g.reflections();
    let center: Vec<&MonoMatrix> = g
        .elements()
        .iter()
        .filter(|w| gens.iter().all(|r| w.compose(r) == r.compose(w)))
        .collect();
    for w in &center {
        out.expect(|| format!("central element {w}"), true, w.is_scalar());
    }
    let gcd = gcd_of(&model.degrees(&g.descriptor()));
    out.expect(text("|Z(W)| by commutation with reflections"), gcd, center.len() as u64);
    out.expect(text("number of scalar matrices"), gcd, g.scalars().len() as u64);
}

fn regular_orders(regs: &[RegularElement], pred: impl Fn(&RegularElement) -> bool) -> BTreeSet<u64> {
    regs.iter().filter(|r| pred(r)).map(RegularElement::order).collect()
}

fn regular_criterion(out: &mut Outcome, model: &dyn ArithmeticModel, g: &MonoGroup) {
    let d = g.descriptor();
    let (degrees, codegrees) = (model.degrees(&d), model.codegrees(&d));
    let regs = g.regular_elements();
    out.expect(
        text("orders of regular eigenvalues"),
        regular_numbers_of(&degrees, &codegrees),
        regular_orders(&regs, |_| true),
    );
    for r in &regs {
        out.expect(|| pair_witness(g, r), divisible_count(&degrees, r.order()), r.dim());
    }
}

fn regular_hyperplanes(out: &mut Outcome, model: &dyn ArithmeticModel, g: &MonoGroup) {
    let d = g.descriptor();
    let (degrees, codegrees) = (model.degrees(&d), model.codegrees(&d));
    let arithmetic = regular_hyperplane_numbers_of(&degrees, &codegrees);
    let regs = g.regular_elements();
    let oracle = regular_orders(&regs, |r| r.dim() + 1 == g.rank());
    out.expect(text("orders of regular eigenspaces of dimension n-1"), &arithmetic, &oracle);
    let full = model.full_group(&d).map(|r| r.full == d);
    if full == Ok(true) {
        out.expect(text("regular hyperplane numbers of a full group"), &BTreeSet::new(), &arithmetic);
        for r in regs.iter().filter(|r| r.dim() + 1 == g.rank()) {
            out.expect(|| pair_witness(g, r), "no regular hyperplane", "regular hyperplane");
        }
    }
}

fn stabilizer_lemma(out: &mut Outcome, claim: ClaimId, g: &MonoGroup, samples: usize, rng: &mut ChaCha8Rng) {
    let l = g.ambient();
    let regs = g.regular_elements();
    let probe = StabilizerProbe::with_regular(g, &regs);
    let random = sampling::random_vectors(rng, g, samples);
    let adversarial = sampling::adversarial_vectors(rng, g, &regs);
    let identity = MonoMatrix::identity(g.rank(), l);
    let mut strongly_regular = 0usize;
    for (i, x) in random.iter().chain(&adversarial).enumerate() {
        let report = match probe.extended_stabilizer(x) {
            Ok(r) => r,
            Err(e) => {
                out.expect(|| vector_witness(x, l), "stabilizer".to_string(), e.to_string());
                continue;
            }
        };
        match claim {
            ClaimId::StabilizerLemmaA => {
                if i < random.len() && report.stratum == Stratum::StronglyRegular {
                    strongly_regular += 1;
                }
                out.expect(
                    || vector_witness(x, l),
                    true,
                    report
                        .pairs
                        .iter()
                        .any(|p| p.element == identity && p.lambda == RootScalar::ONE),
                );
                out.expect(
                    || vector_witness(x, l),
                    true,
                    report.pairs.iter().all(|p| p.element.apply(x).scale(p.lambda) == *x),
                );
                // Stratum membership is decided from forms and eigenspaces,
                // independently of the stabilizer scan.
                out.expect(
                    || format!("{}; stratum {:?}", vector_witness(x, l), report.stratum),
                    report.stratum != Stratum::StronglyRegular,
                    !report.is_trivial(),
                );
            }
            ClaimId::StabilizerLemmaB => out.expect(
                || format!("{}; projective stabilizer by 2x2 minors", vector_witness(x, l)),
                report.is_trivial(),
                probe.projective_stabilizer_trivial(x),
            ),
            _ => out.expect(
                || format!("{}; scalar action on the orbit W.x", vector_witness(x, l)),
                report.stab_in_w,
                probe.scalar_action_stabilizer_trivial(x),
            ),
        }
    }
    // A random sample misses the strata with positive probability only; the
    // check needs enough draws to be meaningful.
    if claim == ClaimId::StabilizerLemmaA && samples >= 20 {
        out.expect(text("strongly regular vectors among random samples"), true, strongly_regular > 0);
    }
}

fn build_in(m: u32, p: u32, n: u32, l: u64, cap: u128) -> Option<MonoGroup> {
    MonoGroup::build_in(m, p, n, cap, l).ok()
}

/// The reflection with `e_1 -> ζ_m^{-1} e_2`, `e_2 -> ζ_m e_1`, fixing the
/// other coordinates.
fn transposition_reflection(m: u32, n: usize, l: u64) -> MonoMatrix {
    let c = l / m as u64;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, 1);
    let mut weights = vec![0; n];
    weights[0] = l - c;
    weights[1] = c;
    MonoMatrix::new(perm, weights, l)
}

fn full_group_case(
    out: &mut Outcome,
    model: &dyn ArithmeticModel,
    g: &MonoGroup,
    all: &[(u32, u32, u32)],
    cap: u128,
    rank_two: bool,
) {
    let d = g.descriptor();
    let (m, p, n) = g.params();
    if (n == 2) != rank_two {
        out.applicable = false;
        return;
    }
    let r = match model.full_group(&d) {
        Ok(r) => r,
        Err(e) => {
            out.expect(text("full group"), "defined".to_string(), e.to_string());
            return;
        }
    };
    out.expect(
        || format!("full group of {}", r.full),
        Some(r.full),
        model.full_group(&r.full).ok().map(|x| x.full),
    );
    let GroupDescriptor::Imprimitive { m: mf, p: pf, n: nf } = r.full else {
        out.expect(text("full group"), "imprimitive".to_string(), r.full.to_string());
        return;
    };
    out.expect(text("rank of the full group"), n, nf);
    let l = common_ambient(m, mf, n);
    let (Some(w), Some(wf)) = (build_in(m, p, n, l, cap), build_in(mf, pf, n, l, cap)) else {
        return;
    };
    let witness = || format!("W_f = {}", r.full);
    out.expect(witness, Ok(true), extended_group_equal(&w, &wf));
    out.expect(witness, Ok(true), is_subgroup(&w, &wf));
    out.expect(witness, r.index, (wf.order() / w.order()) as u128);
    out.expect(witness, 0, wf.order() % w.order());

    if !rank_two {
        let mat = transposition_reflection(m, n as usize, l);
        out.expect(|| format!("M = {mat}"), true, w.contains(&mat) && mat.fixed_dim() + 1 == n as usize);
    }

    for &(m2, p2, n2) in all.iter().filter(|&&(_, _, n2)| n2 == n) {
        let d2 = descriptor(m2, p2, n2);
        let l2 = common_ambient(m, m2, n);
        let (Some(a), Some(b)) = (build_in(m, p, n, l2, cap), build_in(m2, p2, n, l2, cap)) else {
            continue;
        };
        let equal = extended_group_equal(&a, &b) == Ok(true);
        let predicted = model.full_group(&d2).map(|x| x.full) == Ok(r.full);
        let partner = || format!("W' = {d2}");
        out.expect(partner, predicted, equal);
        if !equal {
            continue;
        }
        let l3 = common_ambient(m2, mf, n);
        if let (Some(b3), Some(f3)) = (build_in(m2, p2, n, l3, cap), build_in(mf, pf, n, l3, cap)) {
            out.expect(|| format!("{d2} inside {}", r.full), Ok(true), is_subgroup(&b3, &f3));
        }
        if rank_two {
            let expected_m2 = match (p % 2 == 0, p2 % 2 == 0) {
                (true, false) => m / 2,
                (false, true) => 2 * m,
                _ => m,
            };
            out.expect(partner, expected_m2, m2);
        } else {
            // Some λM lies in W'; since n > 2, λ is itself a coefficient,
            // so λ and λζ_m lie in μ_m'.
            let mat = transposition_reflection(m, n as usize, l2);
            let step = l2 / m2 as u64;
            let c = l2 / m as u64;
            let lambdas: Vec<u64> = (0..l2).filter(|&e| b.contains(&mat.scaled(e))).collect();
            out.expect(|| format!("{}: scalars lambda with lambda*M in W'", partner()), true, !lambdas.is_empty());
            for e in lambdas {
                out.expect(
                    || format!("{}: lambda = z^{e} with z = exp(2pi*i/{l2})", partner()),
                    (0, 0),
                    (e % step, (e + c) % step),
                );
            }
            out.expect(partner, (m, p.gcd(&n)), (m2, p2.gcd(&n)));
        }
    }
}

fn extended_equality(
    out: &mut Outcome,
    model: &dyn ArithmeticModel,
    g: &MonoGroup,
    all: &[(u32, u32, u32)],
    cap: u128,
) {
    let d = g.descriptor();
    let (m, p, n) = g.params();
    for &(m2, p2, n2) in all.iter().filter(|&&(_, _, n2)| n2 == n) {
        let d2 = descriptor(m2, p2, n2);
        let l = common_ambient(m, m2, n);
        let (Some(a), Some(b)) = (build_in(m, p, n, l, cap), build_in(m2, p2, n, l, cap)) else {
            continue;
        };
        let equal = extended_group_equal(&a, &b) == Ok(true);
        let same_index = model.central_index(&d) == model.central_index(&d2);
        let partner = || format!("W' = {d2}");
        if is_subgroup(&a, &b) == Ok(true) {
            out.expect(partner, same_index, equal);
        }
        if equal {
            out.expect(partner, true, same_index);
        }
    }
}

fn all_regular_central(out: &mut Outcome, model: &dyn ArithmeticModel, g: &MonoGroup) {
    let d = g.descriptor();
    let regs = g.regular_elements();
    let oracle = regs.iter().all(|r| g.elements()[r.index].is_scalar());
    out.expect(
        || match regs.iter().find(|r| !g.elements()[r.index].is_scalar()) {
            Some(r) => format!("non-central regular pair {}", pair_witness(g, r)),
            None => "all regular pairs are scalar".to_string(),
        },
        all_regular_central_of(&model.degrees(&d), &model.codegrees(&d)),
        oracle,
    );
}

fn braid_shadow(out: &mut Outcome, model: &dyn ArithmeticModel, g: &MonoGroup, cap: u128) {
    let d = g.descriptor();
    let s = match model.braid_shadow(&d) {
        Ok(s) => s,
        Err(e) => {
            out.expect(text("braid shadow"), "defined".to_string(), e.to_string());
            return;
        }
    };
    let center = g.scalars().len() as u64;
    out.expect(text("|Z(W)|"), s.center_w, center);
    out.expect(text("beta_S^e = pi_S with e = |Z(W)|"), s.beta_to_pi_exponent, center);
    let regs = g.regular_elements();
    let hyperplanes = regs.iter().any(|r| r.dim() + 1 == g.rank());
    out.expect(text("no regular eigenspace of dimension n-1"), s.bs_equals_b, !hyperplanes);
    out.expect(
        text("all regular pairs scalar"),
        s.bmr_diagram_completes,
        regs.iter().all(|r| g.elements()[r.index].is_scalar()),
    );
    let Ok(r) = model.full_group(&d) else {
        return;
    };
    if let GroupDescriptor::Imprimitive { m, p, n } = r.full {
        if let Ok(wf) = MonoGroup::build(m, p, n, cap) {
            let center_f = wf.scalars().len() as u64;
            let witness = || format!("W_f = {}", r.full);
            out.expect(witness, s.center_wf, center_f);
            out.expect(witness, s.beta_wf_power, center_f / center);
            out.expect(witness, s.beta_wf_power as usize, wf.order() / g.order());
        }
    }
}
