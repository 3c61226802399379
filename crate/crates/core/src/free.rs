//! Generator automata for free semigroups and monoids.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::blocks::{Image, Projection};
use crate::ops::{power, power_state_name, union};
use crate::sequences::SequenceSpace;
use crate::transducer::{LetterId, StateId, Transducer};
use crate::word_problem::{decide_equal, SequenceClasses};
use crate::{Error, Result};

/// The adding machine over `{0,1}`: `q` adds one to a binary number written
/// least significant bit first, `id` is the identity.
pub fn adding_machine() -> Transducer {
    let states = alloc::vec!["q".to_string(), "id".to_string()];
    let alphabet = alloc::vec!["0".to_string(), "1".to_string()];
    Transducer::from_fn(states, alphabet, |p, a| match (p.0, a.0) {
        (0, 0) => (LetterId(1), StateId(1)),
        (0, _) => (LetterId(0), StateId(0)),
        _ => (a, StateId(1)),
    })
    .expect("adding machine is well formed")
}

/// The automaton `({R}, {R}, {a --b/a--> b})`: every state ignores its input
/// letter, writes its own name and moves to the state named by the input.
/// It generates the free semigroup over `R`.
pub fn free_semigroup_automaton<S: AsRef<str>>(symbols: &[S]) -> Result<Transducer> {
    if symbols.len() < 2 {
        return Err(Error::AlphabetTooSmall(symbols.len()));
    }
    let names: Vec<String> = symbols.iter().map(|s| s.as_ref().to_string()).collect();
    Transducer::from_fn(names.clone(), names, |p, b| (LetterId(p.0), StateId(b.0)))
}

/// Adds a state `name` that loops on every letter with output equal to input.
pub fn with_identity_state(t: &Transducer, name: &str) -> Result<Transducer> {
    if t.state(name).is_some() {
        return Err(Error::NameClash(name.into()));
    }
    let mut states = t.states().to_vec();
    states.push(name.into());
    let id = StateId(t.num_states() as u32);
    Transducer::from_fn(states, t.alphabet().to_vec(), |p, a| if p == id { (a, id) } else { t.step(p, a) })
}

/// Renames every state of `t` through `f`.
///
/// # Panics
/// If `f` is not injective on the state names.
pub fn rename_states<F: FnMut(&str) -> String>(t: &Transducer, mut f: F) -> Transducer {
    let states = t.states().iter().map(|s| f(s)).collect();
    Transducer::from_fn(states, t.alphabet().to_vec(), |p, a| t.step(p, a)).expect("renaming must be injective")
}

/// `T ∪ T^2 ∪ ... ∪ T^L`. Powers have tuple states of distinct arities, so
/// the union is always valid.
pub fn union_of_powers(t: &Transducer, len: usize) -> Result<Transducer> {
    if len == 0 {
        return Err(Error::ZeroPower);
    }
    let mut acc = t.clone();
    for k in 2..=len {
        acc = union(&acc, &power(t, k)?)?;
    }
    Ok(acc)
}

/// An automaton `R̂` generating a free semigroup together with the
/// projection `π` of its states onto words over the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RHat {
    pub automaton: Transducer,
    pub projection: Projection,
}

impl RHat {
    /// The state standing for the (non-empty) basis word `w`, if there is one.
    pub fn word_state<S: AsRef<str>>(&self, w: &[S]) -> Option<StateId> {
        self.automaton.state_ids().find(|&p| match self.projection.image(p) {
            Image::Word(v) => v.len() == w.len() && v.iter().zip(w).all(|(x, y)| x == y.as_ref()),
            Image::Hash(_) => false,
        })
    }
}

/// `union_of_powers(F, L)` for the free automaton `F` over `basis`, with
/// the tuple state `(λ_1,...,λ_ℓ)` projecting to the word `λ_1...λ_ℓ`.
pub fn free_powers(basis: &[String], len: usize) -> Result<RHat> {
    let f = free_semigroup_automaton(basis)?;
    let automaton = union_of_powers(&f, len)?;
    let mut images = Vec::with_capacity(automaton.num_states());
    for l in 1..=len {
        let space = SequenceSpace::new(f.num_states(), l);
        for i in space.range_of_len(l) {
            let seq = space.decode(i);
            debug_assert_eq!(automaton.state(&power_state_name(&f, &seq)), Some(StateId(images.len() as u32)));
            images.push(Image::Word(f.state_names(&seq)));
        }
    }
    Ok(RHat { automaton, projection: Projection::new(images) })
}

/// Supplies the construction that adjoins a free generator to an automaton
/// semigroup: given `S` it must return an automaton `S'` with one extra
/// state `q` such that `S(S') ≅ S(S) ⋆ q⁺` via the obvious map.
pub trait FreeBasisProvider {
    fn adjoin_free_generator(&self, s: &Transducer, qname: &str) -> Result<Transducer>;
}

/// A provider without a construction. Every request is answered with
/// [`Error::Unsupported`].
#[derive(Clone, Copy, Debug, Default)]
pub struct StubProvider;

impl FreeBasisProvider for StubProvider {
    fn adjoin_free_generator(&self, _s: &Transducer, qname: &str) -> Result<Transducer> {
        Err(Error::Unsupported(format!("no construction available to adjoin the free generator `{qname}`")))
    }
}

/// Adjoins the state `qname` through `provider` after checking that the
/// name is fresh.
pub fn adjoin_free_generator(provider: &dyn FreeBasisProvider, s: &Transducer, qname: &str) -> Result<Transducer> {
    if s.state(qname).is_some() {
        return Err(Error::NameClash(qname.into()));
    }
    let out = provider.adjoin_free_generator(s, qname)?;
    if out.num_states() != s.num_states() + 1 || out.state(qname).is_none() {
        return Err(Error::Consistency(format!("provider did not add exactly the state `{qname}`")));
    }
    Ok(out)
}

/// Checks a candidate adjunction against normal forms in `S(S) ⋆ q⁺` for
/// all state sequences of length at most `k`: two sequences must be equal
/// in `extended` iff they alternate between the same `q`-powers and
/// pairwise `S`-equal blocks over the old states.
///
/// Returns the first offending pair (as sequences of `extended`).
pub fn check_adjunction(
    old: &Transducer,
    extended: &Transducer,
    qname: &str,
    k: usize,
) -> Result<Option<(Vec<StateId>, Vec<StateId>)>> {
    let q = extended.state(qname).ok_or_else(|| Error::UnknownState(qname.into()))?;
    let to_old: Vec<Option<StateId>> =
        extended.state_ids().map(|p| if p == q { None } else { old.state(extended.state_name(p)) }).collect();
    if to_old.iter().filter(|x| x.is_none()).count() != 1 {
        return Err(Error::Precondition("extended automaton must contain the old states".into()));
    }
    let classes = SequenceClasses::new(extended, k);
    let old_classes = SequenceClasses::new(old, k);
    let space = classes.space();
    let old_space = old_classes.space();

    // normal form: alternating runs, q-runs by length, old blocks by class
    let normal = |seq: &[StateId]| -> Vec<(bool, usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < seq.len() {
            let is_q = seq[i] == q;
            let mut j = i;
            while j < seq.len() && (seq[j] == q) == is_q {
                j += 1;
            }
            if is_q {
                out.push((true, j - i));
            } else {
                let block: Vec<StateId> = seq[i..j].iter().map(|p| to_old[p.index()].unwrap()).collect();
                out.push((false, old_classes.class_of(old_space.index(&block))));
            }
            i = j;
        }
        out
    };
    let mut first_by_form: BTreeMap<Vec<(bool, usize)>, usize> = BTreeMap::new();
    let mut first_by_class: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..space.len() {
        let seq = space.decode(i);
        let form = normal(&seq);
        let c = classes.class_of(i);
        let j = *first_by_form.entry(form).or_insert(i);
        if classes.class_of(j) != c {
            return Ok(Some((space.decode(j), seq)));
        }
        let j = *first_by_class.entry(c).or_insert(i);
        if normal(&space.decode(j)) != normal(&seq) {
            return Ok(Some((space.decode(j), seq)));
        }
    }
    Ok(None)
}

/// Builds the free generating automaton `R̂` with state set `Λ̂ ∪ I`, where
/// `Λ̂` holds the words of length `1..=len` over `lambda`.
///
/// For `len = 1` this is the free automaton over `Λ ∪ I`. For longer words
/// the union of the first `len` powers of the free automaton over `Λ` is
/// extended by one adjoined free generator per index, which needs a
/// provider that can actually build such adjunctions.
pub fn build_r_hat_semigroup(
    lambda: &[String],
    index: &[String],
    len: usize,
    provider: &dyn FreeBasisProvider,
) -> Result<RHat> {
    if lambda.len() < 2 {
        return Err(Error::AlphabetTooSmall(lambda.len()));
    }
    if index.is_empty() {
        return Err(Error::InvalidInstance("empty index set".into()));
    }
    if let Some(i) = index.iter().find(|i| lambda.contains(i)) {
        return Err(Error::NameClash(i.clone()));
    }
    if len == 0 {
        return Err(Error::ZeroPower);
    }
    if len == 1 {
        let basis: Vec<String> = lambda.iter().chain(index).cloned().collect();
        return free_powers(&basis, 1);
    }
    let RHat { mut automaton, projection } = free_powers(lambda, len)?;
    let mut images: Vec<Image> = automaton.state_ids().map(|p| projection.image(p).clone()).collect();
    for i in index {
        if automaton.state(i).is_some() {
            return Err(Error::NameClash(i.clone()));
        }
        automaton = adjoin_free_generator(provider, &automaton, i)?;
        images.push(Image::Word(alloc::vec![i.clone()]));
    }
    Ok(RHat { automaton, projection: Projection::new(images) })
}

/// Outcome of [`validate_free_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisCheck {
    /// `=_T` and equality of projections agree on all sequences up to the bound.
    Agrees,
    /// `left` and `right` are equal in one sense but not in the other.
    Counterexample { left: Vec<StateId>, right: Vec<StateId>, equal_in_automaton: bool },
}

/// Checks `p =_T q ⟺ π(p) = π(q)` for all state sequences of length at
/// most `k`.
pub fn validate_free_basis(t: &Transducer, pi: &Projection, k: usize) -> Result<BasisCheck> {
    if k == 0 {
        return Err(Error::ZeroBound);
    }
    if pi.len() != t.num_states() {
        return Err(Error::Precondition("projection does not match the automaton".into()));
    }
    let classes = SequenceClasses::new(t, k);
    let space = classes.space();
    let mut first_by_image: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    let mut first_by_class: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..space.len() {
        let seq = space.decode(i);
        let image = pi.pi(&seq)?;
        let j = *first_by_image.entry(image.clone()).or_insert(i);
        if classes.class_of(j) != classes.class_of(i) {
            return Ok(counterexample(t, space.decode(j), seq));
        }
        let j = *first_by_class.entry(classes.class_of(i)).or_insert(i);
        if pi.pi(&space.decode(j))? != image {
            return Ok(counterexample(t, space.decode(j), seq));
        }
    }
    Ok(BasisCheck::Agrees)
}

fn counterexample(t: &Transducer, left: Vec<StateId>, right: Vec<StateId>) -> BasisCheck {
    let equal_in_automaton = decide_equal(t, &left, &right).is_equal();
    BasisCheck::Counterexample { left, right, equal_in_automaton }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_problem::acts_as_identity;
    use alloc::vec;

    fn w(t: &Transducer, s: &str) -> Vec<LetterId> {
        let names: Vec<String> = s.chars().map(|c| c.to_string()).collect();
        t.parse_word(&names).unwrap()
    }

    fn seq(t: &Transducer, s: &[&str]) -> Vec<StateId> {
        t.parse_states(s).unwrap()
    }

    #[test]
    fn adding_machine_counts() {
        let am = adding_machine();
        let q = seq(&am, &["q"]);
        assert_eq!(am.act(&q, &w(&am, "000")), w(&am, "100"));
        assert_eq!(am.act(&q, &w(&am, "100")), w(&am, "010"));
        assert_eq!(am.act(&q, &w(&am, "010")), w(&am, "110"));
        assert_eq!(am.act(&q, &w(&am, "110")), w(&am, "001"));
        assert_eq!(am.dual_act(&q, &w(&am, "0")), seq(&am, &["id"]));
        assert_eq!(am.dual_act(&q, &w(&am, "1")), q);
    }

    #[test]
    fn adding_machine_residuals() {
        // the residual after each letter of q∘000, q∘100, q∘010, q∘110
        let am = adding_machine();
        let q = seq(&am, &["q"]);
        let residuals = |u: &str| -> Vec<String> {
            let u = w(&am, u);
            (0..=u.len()).map(|n| am.state_names(&am.dual_act(&q, &u[..n])).concat()).collect()
        };
        assert_eq!(residuals("000"), ["q", "id", "id", "id"]);
        assert_eq!(residuals("100"), ["q", "q", "id", "id"]);
        assert_eq!(residuals("110"), ["q", "q", "q", "id"]);
    }

    #[test]
    fn free_automaton_rule() {
        let f = free_semigroup_automaton(&["x", "y"]).unwrap();
        let x = seq(&f, &["x"]);
        assert_eq!(f.act(&x, &w(&f, "y")), w(&f, "x"));
        assert_eq!(f.dual_act(&x, &w(&f, "y")), seq(&f, &["y"]));
        assert_eq!(f.act(&seq(&f, &["y", "x"]), &w(&f, "xx")), w(&f, "yx"));
        assert_eq!(free_semigroup_automaton(&["x"]), Err(Error::AlphabetTooSmall(1)));
    }

    #[test]
    fn identity_state() {
        let f = free_semigroup_automaton(&["x", "y"]).unwrap();
        let fid = with_identity_state(&f, "id").unwrap();
        assert!(acts_as_identity(&fid, &seq(&fid, &["id"])));
        assert!(decide_equal(&fid, &seq(&fid, &["id", "x"]), &seq(&fid, &["x"])).is_equal());
        assert_eq!(with_identity_state(&f, "x"), Err(Error::NameClash("x".into())));
    }

    #[test]
    fn powers_union() {
        let f = free_semigroup_automaton(&["x", "y"]).unwrap();
        assert_eq!(union_of_powers(&f, 1).unwrap(), f);
        let u = union_of_powers(&f, 2).unwrap();
        assert_eq!(u.num_states(), 6);
        let xy = seq(&u, &["(x,y)"]);
        let x_y = seq(&u, &["x", "y"]);
        assert!(decide_equal(&u, &xy, &x_y).is_equal());
        let word = w(&u, "yxy");
        assert_eq!(u.act(&xy, &word), u.act(&x_y, &word));
    }

    #[test]
    fn r_hat_at_length_one() {
        let lambda = vec!["x".to_string(), "y".to_string()];
        let index = vec!["1".to_string()];
        let r = build_r_hat_semigroup(&lambda, &index, 1, &StubProvider).unwrap();
        assert_eq!(r.automaton, free_semigroup_automaton(&["x", "y", "1"]).unwrap());
        assert_eq!(validate_free_basis(&r.automaton, &r.projection, 3), Ok(BasisCheck::Agrees));
    }

    #[test]
    fn r_hat_needs_a_provider_beyond_length_one() {
        let lambda = vec!["x".to_string(), "y".to_string()];
        let index = vec!["1".to_string()];
        let err = build_r_hat_semigroup(&lambda, &index, 2, &StubProvider).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
        assert!(matches!(build_r_hat_semigroup(&lambda, &lambda[..1], 1, &StubProvider), Err(Error::NameClash(_))));
    }

    #[test]
    fn powers_form_a_free_basis() {
        let lambda = vec!["x".to_string(), "y".to_string()];
        let r = free_powers(&lambda, 2).unwrap();
        assert_eq!(validate_free_basis(&r.automaton, &r.projection, 2), Ok(BasisCheck::Agrees));
        let xy = r.automaton.state("(x,y)").unwrap();
        assert_eq!(r.word_state(&["x", "y"]), Some(xy));
    }

    #[test]
    fn mutated_basis_is_rejected() {
        let f = free_semigroup_automaton(&["x", "y", "1"]).unwrap();
        let mut raw = f.to_raw();
        // x --y/x--> y  retargeted to  x --y/x--> x
        let t = raw.transitions.iter_mut().find(|t| t.from == "x" && t.input == "y").unwrap();
        t.to = "x".into();
        let bad = Transducer::from_raw(&raw).unwrap();
        let pi = Projection::identity(&bad);
        match validate_free_basis(&bad, &pi, 3).unwrap() {
            BasisCheck::Counterexample { left, right, equal_in_automaton } => {
                assert!(equal_in_automaton);
                assert_ne!(left, right);
                assert!(decide_equal(&bad, &left, &right).is_equal());
            }
            BasisCheck::Agrees => panic!("mutation went unnoticed"),
        }
    }

    struct Renamer;

    // adds a copy of the first state under a new name: never free
    impl FreeBasisProvider for Renamer {
        fn adjoin_free_generator(&self, s: &Transducer, qname: &str) -> Result<Transducer> {
            let mut states = s.states().to_vec();
            states.push(qname.into());
            let n = s.num_states() as u32;
            Transducer::from_fn(states, s.alphabet().to_vec(), |p, a| s.step(if p.0 == n { StateId(0) } else { p }, a))
        }
    }

    #[test]
    fn adjunction_oracle_catches_a_bad_provider() {
        let f = free_semigroup_automaton(&["x", "y"]).unwrap();
        let bad = adjoin_free_generator(&Renamer, &f, "1").unwrap();
        let found = check_adjunction(&f, &bad, "1", 2).unwrap();
        let (l, r) = found.expect("copy of x is not free");
        assert!(decide_equal(&bad, &l, &r).is_equal());
        // the free automaton over {x,y,1} is a correct adjunction
        let good = free_semigroup_automaton(&["x", "y", "1"]).unwrap();
        assert_eq!(check_adjunction(&f, &good, "1", 3).unwrap(), None);
        assert!(matches!(adjoin_free_generator(&StubProvider, &f, "1"), Err(Error::Unsupported(_))));
    }
}
