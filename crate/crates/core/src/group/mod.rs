//! Abelian-group algebra: finite subsets, sumsets, restricted sumsets,
//! stabilizers, coset recovery, and the two additive-combinatorics gates
//! (the golden-ratio restricted-sumset criterion and the 3/2-sumset coset
//! lemma) decided in exact integer arithmetic.

pub mod angle;
pub mod finab;
pub mod mask;
pub mod oracle;

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Iteration cap for subgroup closures in groups that may be infinite.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// An abelian group whose elements we can store in ordered sets.
///
/// `self` is the group descriptor; elements do not know their group, so all
/// operations go through it. Implementations: tuples modulo a vector of
/// cyclic orders ([`finab::FinAbGroup`]), the circle group with a formal
/// generic rotation ([`angle::CircleGroup`]), points of a Weierstrass curve
/// ([`crate::cubic::EcGroup`]), and the additive / multiplicative rational
/// groups carried by the parabola and hyperbola ([`crate::conic`]).
pub trait AbelianGroup: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + Eq + Ord + std::hash::Hash + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Whether `a` is a valid element of this group.
    fn contains(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Group order if the group is finite and enumerable.
    fn order(&self) -> Option<u64> {
        self.elements().map(|e| e.len() as u64)
    }

    /// All elements, for enumerable groups.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Order of an element; `None` when infinite (or beyond the search cap).
    fn element_order(&self, a: &Self::Elem) -> Option<u64> {
        let zero = self.zero();
        let mut acc = a.clone();
        let mut k = 1u64;
        while acc != zero {
            if k as usize >= DEFAULT_CLOSURE_CAP {
                return None;
            }
            acc = self.add(&acc, a);
            k += 1;
        }
        Some(k)
    }

    /// The number of solutions of x + x = 0; for an abelian group this is
    /// also the maximum number of solutions of x + x = a over all a.
    fn doubling_constant(&self) -> u64;

    /// Largest possible finite subgroup size, when the group structure
    /// bounds it (the parabola and hyperbola cases); `None` means finite
    /// subgroups of every size may exist.
    fn finite_subgroup_bound(&self) -> Option<u64>;
}

/// A finite subset of an abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSet<G: AbelianGroup> {
    group: G,
    elems: BTreeSet<G::Elem>,
}

impl<G: AbelianGroup> GroupSet<G> {
    pub fn new<I: IntoIterator<Item = G::Elem>>(group: G, elems: I) -> Result<Self> {
        let elems: BTreeSet<G::Elem> = elems.into_iter().collect();
        for e in &elems {
            if !group.contains(e) {
                return Err(Error::Usage(format!("{e} is not an element of the group")));
            }
        }
        Ok(GroupSet { group, elems })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &G::Elem> {
        self.elems.iter()
    }

    pub fn elems(&self) -> &BTreeSet<G::Elem> {
        &self.elems
    }

    pub fn contains(&self, e: &G::Elem) -> bool {
        self.elems.contains(e)
    }

    pub fn is_subset(&self, other: &GroupSet<G>) -> bool {
        self.elems.is_subset(&other.elems)
    }

    fn require_same_group(&self, other: &GroupSet<G>) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// {a + b : a in self, b in other}.
    pub fn sumset(&self, other: &GroupSet<G>) -> Result<GroupSet<G>> {
        self.require_same_group(other)?;
        let mut out = BTreeSet::new();
        for a in &self.elems {
            for b in &other.elems {
                out.insert(self.group.add(a, b));
            }
        }
        Ok(GroupSet { group: self.group.clone(), elems: out })
    }

    /// {a + a' : a, a' in self, a != a'}.
    pub fn restricted_sumset(&self) -> Result<GroupSet<G>> {
        if self.elems.len() < 2 {
            return Err(Error::Degenerate(
                "restricted sumset needs at least two elements".into(),
            ));
        }
        let v: Vec<&G::Elem> = self.elems.iter().collect();
        let mut out = BTreeSet::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                out.insert(self.group.add(v[i], v[j]));
            }
        }
        Ok(GroupSet { group: self.group.clone(), elems: out })
    }

    /// {-a : a in self}.
    pub fn negated(&self) -> GroupSet<G> {
        let elems = self.elems.iter().map(|a| self.group.neg(a)).collect();
        GroupSet { group: self.group.clone(), elems }
    }

    /// {a + t : a in self}.
    pub fn translated(&self, t: &G::Elem) -> GroupSet<G> {
        let elems = self.elems.iter().map(|a| self.group.add(a, t)).collect();
        GroupSet { group: self.group.clone(), elems }
    }
}

/// An explicitly enumerated subgroup (finite by construction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup<G: AbelianGroup> {
    elems: BTreeSet<G::Elem>,
}

impl<G: AbelianGroup> Subgroup<G> {
    /// Wrap a set that is already known to be a subgroup; verified.
    pub fn from_elements<I: IntoIterator<Item = G::Elem>>(group: &G, elems: I) -> Result<Self> {
        let elems: BTreeSet<G::Elem> = elems.into_iter().collect();
        if !elems.contains(&group.zero()) {
            return Err(Error::Usage("subgroup must contain the identity".into()));
        }
        for a in &elems {
            if !elems.contains(&group.neg(a)) {
                return Err(Error::Usage("subgroup not closed under negation".into()));
            }
            for b in &elems {
                if !elems.contains(&group.add(a, b)) {
                    return Err(Error::Usage("subgroup not closed under addition".into()));
                }
            }
        }
        Ok(Subgroup { elems })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, e: &G::Elem) -> bool {
        self.elems.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &G::Elem> {
        self.elems.iter()
    }

    pub fn elems(&self) -> &BTreeSet<G::Elem> {
        &self.elems
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    /// Whether every element of `set` lies in `offset + H`.
    pub fn coset_contains_all<'a, I: IntoIterator<Item = &'a G::Elem>>(
        &self,
        group: &G,
        offset: &G::Elem,
        set: I,
    ) -> bool
    where
        G::Elem: 'a,
    {
        set.into_iter().all(|e| self.elems.contains(&group.sub(e, offset)))
    }
}

/// The stabilizer {x : x + S = S} of a finite nonempty set.
///
/// Any stabilizing x maps a fixed s0 into S, so x lies in S - s0; checking
/// those candidates is exact and terminates even in infinite groups.
pub fn stabilizer<G: AbelianGroup>(s: &GroupSet<G>) -> Result<Subgroup<G>> {
    let s0 = s
        .iter()
        .next()
        .ok_or_else(|| Error::Degenerate("stabilizer of the empty set".into()))?;
    let g = s.group();
    let mut stab = BTreeSet::new();
    for e in s.iter() {
        let cand = g.sub(e, s0);
        let shifted: BTreeSet<G::Elem> = s.iter().map(|x| g.add(x, &cand)).collect();
        if shifted == *s.elems() {
            stab.insert(cand);
        }
    }
    debug_assert!(stab.contains(&g.zero()));
    Ok(Subgroup { elems: stab })
}

/// Closure of a generating set under the group operation, or `None` when it
/// exceeds `cap` (or a generator has infinite order).
pub fn subgroup_generated<G: AbelianGroup>(
    group: &G,
    gens: &[G::Elem],
    cap: usize,
) -> Option<Subgroup<G>> {
    for g in gens {
        group.element_order(g)?;
    }
    let mut set = BTreeSet::new();
    set.insert(group.zero());
    let mut frontier: Vec<G::Elem> = vec![group.zero()];
    while let Some(f) = frontier.pop() {
        for g in gens {
            let n = group.add(&f, g);
            if set.insert(n.clone()) {
                if set.len() > cap {
                    return None;
                }
                frontier.push(n);
            }
        }
    }
    // generators have finite order, so the closure under addition alone
    // already contains negatives
    Some(Subgroup { elems: set })
}

/// Smallest subgroup H with `a` contained in a single coset of H, plus an
/// offset, or `Infinite` when the difference set generates an infinite (or
/// cap-exceeding) subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalCoset<G: AbelianGroup> {
    Finite { subgroup: Subgroup<G>, offset: G::Elem },
    Infinite,
}

pub fn minimal_containing_coset<G: AbelianGroup>(
    a: &GroupSet<G>,
    cap: usize,
) -> Result<MinimalCoset<G>> {
    let a0 = a
        .iter()
        .next()
        .ok_or_else(|| Error::Degenerate("coset of the empty set".into()))?
        .clone();
    let diffs: Vec<G::Elem> = a.iter().map(|e| a.group().sub(e, &a0)).collect();
    match subgroup_generated(a.group(), &diffs, cap) {
        Some(subgroup) => {
            debug_assert!(subgroup.coset_contains_all(a.group(), &a0, a.iter()));
            Ok(MinimalCoset::Finite { subgroup, offset: a0 })
        }
        None => Ok(MinimalCoset::Infinite),
    }
}

/// Exact decision of s <= phi*n - (L+2) with s = |A+.A|, n = |A|, phi the
/// golden ratio: equivalent to 2(s+L+2) - n <= sqrt(5)*n, decided by integer
/// squaring.
pub fn lev_hypothesis_holds<G: AbelianGroup>(a: &GroupSet<G>) -> Result<bool> {
    let s = a.restricted_sumset()?.len() as i128;
    let n = a.len() as i128;
    let l = a.group().doubling_constant() as i128;
    let t = 2 * (s + l + 2) - n;
    Ok(t <= 0 || t * t <= 5 * n * n)
}

/// Whether A +. A = A + A.
pub fn check_lev_conclusion<G: AbelianGroup>(a: &GroupSet<G>) -> Result<bool> {
    let restricted = a.restricted_sumset()?;
    let full = a.sumset(a)?;
    Ok(restricted == full)
}

/// Structured outcome of the sumset-coset lemma check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaAbVerdict<G: AbelianGroup> {
    /// All three hypotheses hold and the conclusion was verified.
    Holds {
        stabilizer: Subgroup<G>,
        sum_offset: G::Elem,
        a1_offset: G::Elem,
        a2_offset: G::Elem,
    },
    /// A hypothesis fails; the conclusion is not asserted.
    HypothesisNotMet { reason: String },
    /// Hypotheses hold but the conclusion fails. Never expected.
    Counterexample { detail: String },
}

impl<G: AbelianGroup> LemmaAbVerdict<G> {
    pub fn holds(&self) -> bool {
        matches!(self, LemmaAbVerdict::Holds { .. })
    }
}

/// Check the coset lemma on a pair of finite sets: under |A1| >= |A2|,
/// 4|A2| >= 3|A1| and 2|A1+A2| < 3|A1|, the sumset A1+A2 must equal a single
/// coset of its stabilizer H and each Ai must lie in one coset of H.
pub fn check_lemma_ab<G: AbelianGroup>(
    a1: &GroupSet<G>,
    a2: &GroupSet<G>,
) -> Result<LemmaAbVerdict<G>> {
    a1.require_same_group(a2)?;
    if a1.is_empty() || a2.is_empty() {
        return Err(Error::Degenerate("lemma check on an empty set".into()));
    }
    let (n1, n2) = (a1.len(), a2.len());
    if n1 < n2 {
        return Ok(LemmaAbVerdict::HypothesisNotMet {
            reason: format!("|A1| = {n1} < {n2} = |A2|"),
        });
    }
    if 4 * n2 < 3 * n1 {
        return Ok(LemmaAbVerdict::HypothesisNotMet {
            reason: format!("|A2| = {n2} < (3/4)|A1| = 3/4 * {n1}"),
        });
    }
    let sum = a1.sumset(a2)?;
    if 2 * sum.len() >= 3 * n1 {
        return Ok(LemmaAbVerdict::HypothesisNotMet {
            reason: format!("|A1+A2| = {} >= (3/2)|A1| = 3/2 * {n1}", sum.len()),
        });
    }
    let h = stabilizer(&sum)?;
    let sum_offset = sum.iter().next().expect("nonempty sumset").clone();
    if sum.len() != h.order()
        || !h.coset_contains_all(sum.group(), &sum_offset, sum.iter())
    {
        return Ok(LemmaAbVerdict::Counterexample {
            detail: format!(
                "A1+A2 has size {} but its stabilizer has order {}",
                sum.len(),
                h.order()
            ),
        });
    }
    let a1_offset = a1.iter().next().expect("nonempty").clone();
    let a2_offset = a2.iter().next().expect("nonempty").clone();
    if !h.coset_contains_all(a1.group(), &a1_offset, a1.iter()) {
        return Ok(LemmaAbVerdict::Counterexample {
            detail: "A1 is not contained in one coset of H".into(),
        });
    }
    if !h.coset_contains_all(a2.group(), &a2_offset, a2.iter()) {
        return Ok(LemmaAbVerdict::Counterexample {
            detail: "A2 is not contained in one coset of H".into(),
        });
    }
    Ok(LemmaAbVerdict::Holds { stabilizer: h, sum_offset, a1_offset, a2_offset })
}

/// All subgroups of a finite enumerable group, by closing joins of cyclic
/// subgroups until a fixpoint. Intended for desk-scale groups.
pub fn all_subgroups<G: AbelianGroup>(group: &G) -> Result<Vec<Subgroup<G>>> {
    let elems = group
        .elements()
        .ok_or_else(|| Error::Unsupported("subgroup enumeration needs a finite group".into()))?;
    let n = elems.len();
    let mut found: BTreeSet<BTreeSet<G::Elem>> = BTreeSet::new();
    for e in &elems {
        let cyc = subgroup_generated(group, std::slice::from_ref(e), n)
            .expect("cyclic subgroup of a finite group");
        found.insert(cyc.elems);
    }
    loop {
        let mut new: Vec<BTreeSet<G::Elem>> = Vec::new();
        let current: Vec<&BTreeSet<G::Elem>> = found.iter().collect();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let gens: Vec<G::Elem> =
                    current[i].iter().chain(current[j].iter()).cloned().collect();
                let join = subgroup_generated(group, &gens, n)
                    .expect("join inside a finite group");
                if !found.contains(&join.elems) {
                    new.push(join.elems);
                }
            }
        }
        if new.is_empty() {
            break;
        }
        found.extend(new);
    }
    Ok(found.into_iter().map(|elems| Subgroup { elems }).collect())
}

#[cfg(test)]
mod tests {
    use super::angle::{AngleElem, CircleGroup};
    use super::finab::FinAbGroup;
    use super::*;
    use crate::field::rat;

    fn zset(k: u64, elems: &[u64]) -> GroupSet<FinAbGroup> {
        let g = FinAbGroup::cyclic(k);
        GroupSet::new(g.clone(), elems.iter().map(|&e| g.elem(&[e]))).unwrap()
    }

    #[test]
    fn sumset_examples() {
        let s = zset(4, &[0, 1]).sumset(&zset(4, &[0, 2])).unwrap();
        assert_eq!(s, zset(4, &[0, 1, 2, 3]));
        let a = zset(6, &[1, 4, 5]);
        let id = zset(6, &[0]);
        assert_eq!(a.sumset(&id).unwrap(), a);
        let h = zset(6, &[0, 2, 4]);
        assert_eq!(h.sumset(&h).unwrap(), h);
    }

    #[test]
    fn sumset_rejects_group_mismatch() {
        assert_eq!(
            zset(4, &[0]).sumset(&zset(6, &[0])).unwrap_err(),
            Error::GroupMismatch
        );
    }

    #[test]
    fn restricted_sumset_examples() {
        assert_eq!(zset(5, &[0, 1, 2]).restricted_sumset().unwrap(), zset(5, &[1, 2, 3]));
        assert!(zset(5, &[1]).restricted_sumset().is_err());
        // {g, g+t} -> single element {2g+t}
        assert_eq!(zset(12, &[3, 8]).restricted_sumset().unwrap(), zset(12, &[11]));
        // quarter-turn angles: restricted sums cover all quarters
        let g = CircleGroup;
        let quarters = GroupSet::new(
            g,
            (0..4).map(|j| AngleElem::new(rat(j, 4), 0)),
        )
        .unwrap();
        let sums = quarters.restricted_sumset().unwrap();
        assert_eq!(sums, quarters);
    }

    #[test]
    fn stabilizer_examples() {
        let h = stabilizer(&zset(6, &[0, 2, 4])).unwrap();
        assert_eq!(h.order(), 3);
        let whole = stabilizer(&zset(6, &[0, 1, 2, 3, 4, 5])).unwrap();
        assert_eq!(whole.order(), 6);
        let trivial = stabilizer(&zset(5, &[0, 1])).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn stabilizer_of_mixed_rotation_set_is_trivial() {
        let g = CircleGroup;
        let s = GroupSet::new(
            g,
            [AngleElem::new(rat(0, 1), 0), AngleElem::new(rat(0, 1), 1)],
        )
        .unwrap();
        assert!(stabilizer(&s).unwrap().is_trivial());
    }

    #[test]
    fn lev_examples() {
        // A = Z_5: s = 5, L = 1, n = 5; 11^2 = 121 <= 125
        let a = zset(5, &[0, 1, 2, 3, 4]);
        assert!(lev_hypothesis_holds(&a).unwrap());
        assert!(check_lev_conclusion(&a).unwrap());
        // A = {0,1} in Z_10: s = 1, L = 2, n = 2; 8^2 = 64 > 20
        let b = zset(10, &[0, 1]);
        assert!(!lev_hypothesis_holds(&b).unwrap());
        assert!(!check_lev_conclusion(&b).unwrap());
        // A = {0,1} in a torsion-free group (L = 1): 6^2 = 36 > 20
        let g = crate::conic::ParabolaGroup;
        let c = GroupSet::new(g, [rat(0, 1), rat(1, 1)]).unwrap();
        assert!(!lev_hypothesis_holds(&c).unwrap());
    }

    #[test]
    fn lemma_ab_examples() {
        // A1 = A2 = {1,3,5} in Z_6: sumset {0,2,4} is the subgroup itself
        let a = zset(6, &[1, 3, 5]);
        match check_lemma_ab(&a, &a).unwrap() {
            LemmaAbVerdict::Holds { stabilizer: h, .. } => {
                assert_eq!(h.order(), 3);
                assert!(h.contains(&FinAbGroup::cyclic(6).elem(&[2])));
            }
            v => panic!("expected Holds, got {v:?}"),
        }
        // whole group
        let z5 = zset(5, &[0, 1, 2, 3, 4]);
        assert!(check_lemma_ab(&z5, &z5).unwrap().holds());
        // boundary: |A1+A2| = 3 = (3/2)|A1| exactly, hypothesis fails
        let t = zset(10, &[0, 1]);
        match check_lemma_ab(&t, &t).unwrap() {
            LemmaAbVerdict::HypothesisNotMet { reason } => {
                assert!(reason.contains("3"), "reason: {reason}");
            }
            v => panic!("expected HypothesisNotMet, got {v:?}"),
        }
    }

    #[test]
    fn minimal_coset_examples() {
        // {1/6+t, 1/2+t, 5/6+t} lies in (1/6+t) + (1/3)Z/Z
        let g = CircleGroup;
        let s = GroupSet::new(
            g,
            [
                AngleElem::new(rat(1, 6), 1),
                AngleElem::new(rat(1, 2), 1),
                AngleElem::new(rat(5, 6), 1),
            ],
        )
        .unwrap();
        match minimal_containing_coset(&s, DEFAULT_CLOSURE_CAP).unwrap() {
            MinimalCoset::Finite { subgroup, offset } => {
                assert_eq!(subgroup.order(), 3);
                assert_eq!(offset, AngleElem::new(rat(1, 6), 1));
                assert!(subgroup.contains(&AngleElem::new(rat(1, 3), 0)));
            }
            MinimalCoset::Infinite => panic!("expected finite coset"),
        }
        // a singleton has the trivial subgroup
        let single = GroupSet::new(CircleGroup, [AngleElem::new(rat(2, 7), 3)]).unwrap();
        match minimal_containing_coset(&single, DEFAULT_CLOSURE_CAP).unwrap() {
            MinimalCoset::Finite { subgroup, .. } => assert!(subgroup.is_trivial()),
            MinimalCoset::Infinite => panic!("expected finite"),
        }
        // {0, t} generates an infinite subgroup
        let mixed = GroupSet::new(
            CircleGroup,
            [AngleElem::new(rat(0, 1), 0), AngleElem::new(rat(0, 1), 1)],
        )
        .unwrap();
        assert_eq!(
            minimal_containing_coset(&mixed, DEFAULT_CLOSURE_CAP).unwrap(),
            MinimalCoset::Infinite
        );
    }

    #[test]
    fn subgroup_enumeration_z12() {
        let g = FinAbGroup::cyclic(12);
        let subs = all_subgroups(&g).unwrap();
        let mut orders: Vec<usize> = subs.iter().map(|h| h.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn subgroup_enumeration_z2xz2() {
        let g = FinAbGroup::product(&[2, 2]);
        let subs = all_subgroups(&g).unwrap();
        let mut orders: Vec<usize> = subs.iter().map(|h| h.order()).collect();
        orders.sort();
        // trivial, three Z_2's, and the whole group
        assert_eq!(orders, vec![1, 2, 2, 2, 4]);
    }

    #[test]
    fn stabilizer_is_subgroup_and_partitions() {
        for k in 2..=10u64 {
            for bits in 1..(1u64 << k) {
                if bits.count_ones() < 1 {
                    continue;
                }
                let elems: Vec<u64> = (0..k).filter(|i| bits >> i & 1 == 1).collect();
                let s = zset(k, &elems);
                let h = stabilizer(&s).unwrap();
                // closure is checked by construction in from_elements
                let g = FinAbGroup::cyclic(k);
                Subgroup::from_elements(&g, h.iter().cloned()).unwrap();
                // S is a union of H-cosets
                assert_eq!(s.len() % h.order(), 0);
            }
        }
    }
}
