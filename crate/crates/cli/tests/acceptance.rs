//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or exceeds its time limit.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use autfree::format::{parse_automaton, parse_instance, Instance};
use autfree_core::analysis::{
    check_cancellative, check_equidivisible, check_length_function, find_hash_violation, Side,
};
use autfree_core::free::{build_r_hat_semigroup, validate_free_basis, BasisCheck, StubProvider};
use autfree_core::monoid::{self, MonoidArtifacts, PresentationVerdict};
use autfree_core::ops::{compose, dual, power, power_state_name};
use autfree_core::pcp::l_hom;
use autfree_core::semigroup::{self, SemigroupArtifacts};
use autfree_core::sequences::SequenceSpace;
use autfree_core::word_problem::{
    acts_as_identity, bounded_separator, decide_equal, enumerate_relations, BoundedDecision, Decision, SequenceClasses,
};
use autfree_core::{Error, LetterId, StateId, Transducer};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture_text(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn automaton(name: &str) -> Transducer {
    parse_automaton(&fixture_text(name)).unwrap()
}

fn sgr(name: &str) -> SemigroupArtifacts {
    match parse_instance(&fixture_text(name)).unwrap() {
        Instance::Pcp(p) => semigroup::build(&p, &StubProvider).unwrap(),
        Instance::Epcp(_) => panic!("{name} is padded"),
    }
}

fn mon(name: &str) -> MonoidArtifacts {
    monoid::build(&parse_instance(&fixture_text(name)).unwrap().to_epcp("e").unwrap()).unwrap()
}

fn all_sequences(n: usize, k: usize) -> Vec<Vec<StateId>> {
    let space = SequenceSpace::new(n, k);
    (0..space.len()).map(|i| space.decode(i)).collect()
}

fn cat<T: Clone>(a: &[T], b: &[T]) -> Vec<T> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

fn rev<T: Clone>(a: &[T]) -> Vec<T> {
    a.iter().rev().cloned().collect()
}

fn random_seq(rng: &mut StdRng, n: usize, max: usize) -> Vec<StateId> {
    let len = rng.gen_range(0..=max);
    (0..len).map(|_| StateId(rng.gen_range(0..n as u32))).collect()
}

fn random_word(rng: &mut StdRng, m: usize, max: usize) -> Vec<LetterId> {
    let len = rng.gen_range(0..=max);
    (0..len).map(|_| LetterId(rng.gen_range(0..m as u32))).collect()
}

fn adding_machine_semantics() -> Check {
    let am = automaton("am.json");
    let q = am.state("q").unwrap();
    let zero = am.letter("0").unwrap();
    for i in 0..256usize {
        let out = am.act(&vec![q; i], &[zero; 8]);
        let bits: Vec<String> = (0..8).map(|k| ((i >> k) & 1).to_string()).collect();
        ensure!(am.letter_names(&out) == bits, "q^{i} on 0^8 gave {:?}", am.letter_names(&out));
    }
    let id = am.state("id").unwrap();
    ensure!(decide_equal(&am, &[id], &[]).is_equal(), "id is not the identity");
    for i in 0..=64usize {
        for j in 0..i {
            ensure!(!decide_equal(&am, &vec![q; i], &vec![q; j]).is_equal(), "q^{i} = q^{j}");
        }
    }
    Ok(())
}

fn free_generation() -> Check {
    let f2 = automaton("f2.json");
    let classes = SequenceClasses::new(&f2, 5);
    ensure!(classes.num_classes() == classes.space().len(), "F2 has a relation up to length 5");
    let seqs = all_sequences(2, 5);
    for (i, p) in seqs.iter().enumerate() {
        for q in &seqs[..i] {
            match decide_equal(&f2, p, q) {
                Decision::Separated(u) => ensure!(f2.act(p, &u) != f2.act(q, &u), "bad separator"),
                Decision::Equal => return Err(format!("{:?} = {:?}", f2.state_names(p), f2.state_names(q))),
            }
        }
    }
    for p in all_sequences(2, 8) {
        for a in f2.letter_ids() {
            let out = f2.act(&p, &vec![a; p.len()]);
            ensure!(f2.letter_names(&out) == f2.state_names(&p), "p ∘ a^|p| ≠ p for {:?}", f2.state_names(&p));
        }
    }
    Ok(())
}

fn algebra_coherence() -> Check {
    let fixtures = [automaton("am.json"), automaton("f2.json"), automaton("f2id.json")];
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    for t in &fixtures {
        let (n, m) = (t.num_states(), t.num_letters());
        let d = dual(t).map_err(|e| e.to_string())?;
        ensure!(dual(&d).map_err(|e| e.to_string())? == *t, "dual is not an involution");
        let c = compose(t, t).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let (p, q) = (random_seq(&mut rng, n, 5), random_seq(&mut rng, n, 5));
            let (u, v) = (random_word(&mut rng, m, 6), random_word(&mut rng, m, 6));
            // interaction laws
            let uv = cat(&u, &v);
            ensure!(t.act(&p, &uv) == cat(&t.act(&p, &u), &t.act(&t.dual_act(&p, &u), &v)), "p ∘ uv");
            ensure!(t.dual_act(&p, &uv) == t.dual_act(&t.dual_act(&p, &u), &v), "p · uv");
            let qp = cat(&q, &p);
            ensure!(t.act(&qp, &u) == t.act(&q, &t.act(&p, &u)), "qp ∘ u");
            ensure!(t.dual_act(&qp, &u) == cat(&t.dual_act(&q, &t.act(&p, &u)), &t.dual_act(&p, &u)), "qp · u");
            ensure!(t.act(&p, &u).len() == u.len() && t.dual_act(&p, &u).len() == p.len(), "lengths");
            // powers and composition
            if !p.is_empty() {
                let tk = power(t, p.len()).map_err(|e| e.to_string())?;
                let s = tk.state(&power_state_name(t, &p)).ok_or("power state missing")?;
                ensure!(tk.act(&[s], &u) == t.act(&p, &u), "power acts differently");
                let r = tk.dual_act(&[s], &u);
                ensure!(tk.state_name(r[0]) == power_state_name(t, &t.dual_act(&p, &u)), "power residual");
            }
            if p.len() >= 2 {
                let pair = c.state(&format!("({},{})", t.state_name(p[0]), t.state_name(p[1]))).ok_or("pair")?;
                ensure!(c.act(&[pair], &u) == t.act(&p[..2], &u), "composition acts differently");
            }
            // the dual automaton computes the dual action
            let du: Vec<StateId> = rev(&u).iter().map(|a| StateId(a.0)).collect();
            let dp: Vec<LetterId> = rev(&p).iter().map(|s| LetterId(s.0)).collect();
            let residual: Vec<StateId> = rev(&d.act(&du, &dp)).iter().map(|a| StateId(a.0)).collect();
            ensure!(residual == t.dual_act(&p, &u), "dual automaton disagrees with the dual action");
        }
        // exhaustive at sizes ≤ 3
        let seqs = all_sequences(n, 3);
        let words: Vec<Vec<LetterId>> =
            all_sequences(m, 3).into_iter().map(|w| w.into_iter().map(|s| LetterId(s.0)).collect()).collect();
        for p in &seqs {
            for u in &words {
                for v in words.iter().filter(|v| u.len() + v.len() <= 3) {
                    let uv = cat(u, v);
                    ensure!(t.act(p, &uv) == cat(&t.act(p, u), &t.act(&t.dual_act(p, u), v)), "exhaustive p ∘ uv");
                }
                for q in seqs.iter().filter(|q| q.len() + p.len() <= 3) {
                    ensure!(t.act(&cat(q, p), u) == t.act(q, &t.act(p, u)), "exhaustive qp ∘ u");
                }
            }
        }
    }
    Ok(())
}

fn semigroup_end_to_end() -> Check {
    let art = sgr("sgr-solv.json");
    let t = &art.automaton;
    let s = |names: &[&str]| t.parse_states(names).unwrap();
    ensure!(decide_equal(t, &s(&["#1", "1", "#1"]), &s(&["#1", "1", "#2"])).is_equal(), "witness not equal");
    let (h1, h2) = (s(&["#1"]), s(&["#2"]));
    let iota = [art.symbols.iota];
    ensure!(t.act(&h1, &iota) == [art.symbols.alpha], "#1 ∘ ι ≠ α");
    ensure!(t.act(&h2, &iota) == [art.symbols.beta], "#2 ∘ ι ≠ β");
    ensure!(!decide_equal(t, &h1, &h2).is_equal(), "#1 = #2");
    let rel = art.witness_relation(&[1]).map_err(|e| e.to_string())?;
    let sol = art.extract_solution(&rel.left, &rel.right).map_err(|e| e.to_string())?;
    ensure!(art.instance.is_solution(&sol), "extracted word is not a solution");
    for p in all_sequences(t.num_states(), 4) {
        for mu in 1..=art.projection.factorize(&p).s() {
            let closed = art.shift_law(&p, mu).map_err(|e| e.to_string())?;
            ensure!(closed == t.dual_act(&p, &vec![art.symbols.a; mu]), "shift law fails on {:?}", t.state_names(&p));
        }
    }
    Ok(())
}

fn semigroup_negative() -> Check {
    let art = sgr("sgr-unsolv.json");
    let t = &art.automaton;
    for r in enumerate_relations(t, 3) {
        ensure!(
            art.projection.pi_prime(&r.left) == art.projection.pi_prime(&r.right),
            "relation {:?} = {:?} changes the projection",
            t.state_names(&r.left),
            t.state_names(&r.right)
        );
    }
    let report = check_length_function(t, &art.projection.weights(), 3, true).map_err(|e| e.to_string())?;
    ensure!(report.passed(), "length function fails: {:?}", report.verdict);
    Ok(())
}

fn monoid_end_to_end() -> Check {
    for (name, solution) in [("mon-triv.json", vec![1]), ("mon-solv.json", vec![1, 2])] {
        let art = mon(name);
        let t = &art.automaton;
        let rel = art.witness_relation(&solution).map_err(|e| e.to_string())?;
        ensure!(decide_equal(t, &rel.left, &rel.right).is_equal(), "{name}: witness not equal");
        let got = art.extract_solution(&rel.left, &rel.right).map_err(|e| e.to_string())?;
        ensure!(art.instance.is_solution(&got), "{name}: extracted word is not a solution");
        ensure!(
            rel.left[1..rel.left.len() - 1] == art.index_word(&l_hom(&got, art.instance.len())).unwrap()[..],
            "{name}: round trip"
        );
        let sy = &art.symbols;
        let len = art.instance.len();
        for (i, tile) in art.instance.tiles().iter().enumerate() {
            let ii = vec![art.index_state(i + 1).unwrap(); len];
            for (entry, exit, w) in [(sy.alpha_0, sy.alpha_l, &tile.phi), (sy.alpha_l, sy.alpha_l, &tile.phi)]
                .into_iter()
                .chain([(sy.beta_0, sy.beta_l, &tile.psi), (sy.beta_l, sy.beta_l, &tile.psi)])
            {
                ensure!(t.act(&ii, &[entry]) == [exit], "{name}: chain of tile {}", i + 1);
                ensure!(t.state_names(&t.dual_act(&ii, &[entry])) == *w, "{name}: chain residual of tile {}", i + 1);
            }
        }
        for p in all_sequences(t.num_states(), 4) {
            for mu in 0..=art.projection.factorize(&p).s() {
                let closed = art.shift_law(&p, mu).map_err(|e| e.to_string())?;
                ensure!(
                    closed == t.dual_act(&p, &vec![sy.a; mu]),
                    "{name}: shift law fails on {:?}",
                    t.state_names(&p)
                );
            }
        }
        ensure!(acts_as_identity(t, &[sy.e]), "{name}: e is not the identity");
    }
    Ok(())
}

fn monoid_negative() -> Check {
    let art = mon("mon-unsolv.json");
    let t = &art.automaton;
    match art.check_free_presentation(3).map_err(|e| e.to_string())? {
        PresentationVerdict::ConsistentUpTo(3) => {}
        other => return Err(format!("free presentation: {other:?}")),
    }
    let e = art.symbols.e;
    for r in enumerate_relations(t, 3) {
        ensure!(art.projection.compatible(&r.left, &r.right), "incompatible relation");
        for pos in 0..=r.left.len() {
            let mut l = r.left.clone();
            l.insert(pos, e);
            ensure!(decide_equal(t, &l, &r.right).is_equal(), "inserting e breaks a relation");
        }
    }
    Ok(())
}

fn consistency_matrix() -> Check {
    let solv = sgr("sgr-solv.json");
    let t = &solv.automaton;
    let witness = find_hash_violation(t, &solv.projection, 3).ok_or("no witness relation on the solvable fixture")?;
    ensure!(decide_equal(t, &witness.left, &witness.right).is_equal(), "witness does not hold");
    let c = check_cancellative(t, 3, Side::Left).map_err(|e| e.to_string())?;
    ensure!(c.counterexample().is_some_and(|c| c.recheck(t, None, None)), "no left cancellation counterexample");
    let d = check_equidivisible(t, 3).map_err(|e| e.to_string())?;
    ensure!(d.counterexample().is_some_and(|c| c.recheck(t, None, None)), "no equidivisibility counterexample");

    let unsolv = sgr("sgr-unsolv.json");
    let t = &unsolv.automaton;
    ensure!(find_hash_violation(t, &unsolv.projection, 3).is_none(), "witness on the unsolvable fixture");
    ensure!(
        check_cancellative(t, 3, Side::Left).map_err(|e| e.to_string())?.passed(),
        "cancellation fails on the unsolvable fixture"
    );
    ensure!(
        check_equidivisible(t, 3).map_err(|e| e.to_string())?.passed(),
        "equidivisibility fails on the unsolvable fixture"
    );
    Ok(())
}

fn oracle_agreement() -> Check {
    let fixtures: Vec<Transducer> = vec![
        automaton("am.json"),
        automaton("f2.json"),
        automaton("f2id.json"),
        sgr("sgr-solv.json").automaton,
        sgr("sgr-unsolv.json").automaton,
        mon("mon-triv.json").automaton,
        mon("mon-solv.json").automaton,
        mon("mon-unsolv.json").automaton,
    ];
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let mut equal = 0;
    for case in 0..2000 {
        let t = &fixtures[case % fixtures.len()];
        let n = t.num_states();
        let p = random_seq(&mut rng, n, 4);
        // half of the pairs are small edits of p, so that equal pairs occur
        let q = if rng.gen_bool(0.5) {
            let mut q = p.clone();
            let pos = rng.gen_range(0..=q.len());
            if rng.gen_bool(0.5) || q.is_empty() {
                q.insert(pos, StateId(rng.gen_range(0..n as u32)));
            } else {
                let last = q.len() - 1;
                q[pos.min(last)] = StateId(rng.gen_range(0..n as u32));
            }
            q
        } else {
            random_seq(&mut rng, n, 4)
        };
        let d = decide_equal(t, &p, &q);
        let b = bounded_separator(t, &p, &q, 4);
        match (&d, &b) {
            (Decision::Equal, BoundedDecision::EqualUpTo(_)) => equal += 1,
            (Decision::Separated(u), BoundedDecision::Separated(w)) => {
                ensure!(t.act(&p, u) != t.act(&q, u), "decider separator does not separate");
                ensure!(t.act(&p, w) != t.act(&q, w), "brute-force separator does not separate");
                ensure!(u.len() == w.len(), "separator lengths differ: {} vs {}", u.len(), w.len());
            }
            (Decision::Separated(u), BoundedDecision::EqualUpTo(_)) => {
                ensure!(u.len() > 4, "brute force missed a separator of length {}", u.len());
            }
            (Decision::Equal, BoundedDecision::Separated(_)) => {
                return Err(format!("case {case}: decider says equal, brute force separates"));
            }
        }
    }
    ensure!(equal > 0, "no equal pair was sampled");
    Ok(())
}

fn honest_failure() -> Check {
    let lambda = vec!["x".to_string(), "y".to_string()];
    let index = vec!["1".to_string()];
    match build_r_hat_semigroup(&lambda, &index, 2, &StubProvider) {
        Err(Error::Unsupported(_)) => {}
        Err(e) => return Err(format!("unexpected error: {e}")),
        Ok(_) => return Err("an automaton was built without a construction".into()),
    }
    let rhat = build_r_hat_semigroup(&lambda, &index, 1, &StubProvider).map_err(|e| e.to_string())?;
    let t = &rhat.automaton;
    ensure!(
        validate_free_basis(t, &rhat.projection, 3).map_err(|e| e.to_string())? == BasisCheck::Agrees,
        "the unmutated automaton is rejected"
    );
    // x now behaves exactly like y
    let (x, y) = (t.state("x").unwrap(), t.state("y").unwrap());
    let mutated =
        Transducer::from_fn(t.states().to_vec(), t.alphabet().to_vec(), |p, a| t.step(if p == x { y } else { p }, a))
            .map_err(|e| e.to_string())?;
    match validate_free_basis(&mutated, &rhat.projection, 3).map_err(|e| e.to_string())? {
        BasisCheck::Counterexample { left, right, equal_in_automaton } => {
            let eq = decide_equal(&mutated, &left, &right).is_equal();
            let same_image = rhat.projection.pi(&left).unwrap() == rhat.projection.pi(&right).unwrap();
            ensure!(eq == equal_in_automaton && eq != same_image, "counterexample does not hold up");
        }
        BasisCheck::Agrees => return Err("the mutated automaton is accepted".into()),
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("adding machine semantics", 10, adding_machine_semantics),
        ("free generation", 60, free_generation),
        ("algebra coherence", 60, algebra_coherence),
        ("semigroup reduction end to end", 120, semigroup_end_to_end),
        ("semigroup reduction, unsolvable instance", 300, semigroup_negative),
        ("monoid reduction end to end", 300, monoid_end_to_end),
        ("monoid reduction, unsolvable instance", 300, monoid_negative),
        ("consistency of the bounded analyses", 300, consistency_matrix),
        ("decider agrees with brute force", 120, oracle_agreement),
        ("honest failure without a construction", 10, honest_failure),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(r) => r,
            Err(e) => Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let took = start.elapsed();
        let result = match result {
            Ok(()) if took > Duration::from_secs(limit) => Err(format!("time limit of {limit}s exceeded")),
            r => r,
        };
        match result {
            Ok(()) => println!("PASS  {:>2}  {name}  ({:.2}s, limit {limit}s)", i + 1, took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}  ({:.2}s, limit {limit}s): {msg}", i + 1, took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
