//! Comparable pairs generated from seed rules.
//!
//! Seeds are closed under concatenation, duality and transitivity over every
//! string of length at most `L`. Concatenation is applied one bit at a time:
//! `a >= g` gives `ab >= gb` and `ba >= bg`, and transitivity recovers the
//! general product `ak >= gl` through `gk` or `al`, one of which always fits.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::{dual_string, thue_morse_prefix, BitString};
use crate::certify::OrderOutcome;
use crate::error::{Error, Result};

/// Longest strings a relation set may cover.
pub const MAX_CLOSURE_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    /// `1 >= 0`.
    A,
    /// `10 >= 01`.
    B,
    /// `10 0^k 01 >= 01 0^k 10`.
    C,
    /// `0^k 1^(2^k) >= 1^k 0^(2^k)`, a conjecture.
    D,
    /// Complemented Thue-Morse prefixes dominate the prefixes.
    E,
    /// `011 >= 10`.
    F,
}

impl Rule {
    pub const ALL: [Rule; 6] = [Rule::A, Rule::B, Rule::C, Rule::D, Rule::E, Rule::F];

    /// `true` for rules that are not proved.
    pub fn is_conjecture(self) -> bool {
        self == Rule::D
    }

    /// Every instance of the rule with both sides of length at most `max_len`.
    pub fn instances(self, max_len: usize) -> Vec<(BitString, BitString)> {
        let bs = |s: String| s.parse::<BitString>().expect("generated strings are binary");
        let mut out = Vec::new();
        match self {
            Rule::A => out.push((bs("1".into()), bs("0".into()))),
            Rule::B => out.push((bs("10".into()), bs("01".into()))),
            Rule::C => {
                for k in 0..=max_len.saturating_sub(4) {
                    let z = "0".repeat(k);
                    out.push((bs(format!("10{z}01")), bs(format!("01{z}10"))));
                }
            }
            Rule::D => {
                let mut k = 0;
                while k + (1 << k) <= max_len {
                    let hi = BitString::repeat(false, k).concat(&BitString::repeat(true, 1 << k));
                    let lo = BitString::repeat(true, k).concat(&BitString::repeat(false, 1 << k));
                    out.push((hi, lo));
                    k += 1;
                }
            }
            Rule::E => {
                let lengths: BTreeSet<usize> = (0..)
                    .map(|k| 1usize << k)
                    .take_while(|&n| n <= max_len)
                    .chain((1..).map(|k| 4 * k).take_while(|&n| n <= max_len))
                    .collect();
                for n in lengths {
                    let tau = thue_morse_prefix(n);
                    out.push((tau.complement(), tau));
                }
            }
            Rule::F => out.push((bs("011".into()), bs("10".into()))),
        }
        out.retain(|(a, g)| a.len() <= max_len && g.len() <= max_len);
        out
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A set of seed rules, written like `ABCF` or `A,B,C,F`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RuleSet(BTreeSet<Rule>);

impl RuleSet {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        Self(rules.into_iter().collect())
    }

    pub fn contains(&self, rule: Rule) -> bool {
        self.0.contains(&rule)
    }

    pub fn iter(&self) -> impl Iterator<Item = Rule> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &RuleSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromStr for RuleSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rules = BTreeSet::new();
        for c in s.chars().filter(|c| !matches!(c, ',' | ' ' | '{' | '}')) {
            let rule = match c.to_ascii_uppercase() {
                'A' => Rule::A,
                'B' => Rule::B,
                'C' => Rule::C,
                'D' => Rule::D,
                'E' => Rule::E,
                'F' => Rule::F,
                _ => return Err(Error::Parse(format!("unknown rule {c:?} in {s:?}"))),
            };
            rules.insert(rule);
        }
        Ok(Self(rules))
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.0 {
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// How an edge entered the relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Seed(Rule),
    /// The same bit appended to both sides of the premise.
    Append,
    /// The same bit prepended to both sides of the premise.
    Prepend,
    /// Complemented and swapped premise.
    Dual,
    /// Chained premises.
    Transitive,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Seed(r) => write!(f, "seed:{r}"),
            Provenance::Append => f.write_str("append"),
            Provenance::Prepend => f.write_str("prepend"),
            Provenance::Dual => f.write_str("dual"),
            Provenance::Transitive => f.write_str("transitive"),
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

type Edge = (u32, u32);

#[derive(Clone, Copy, Debug)]
struct Derivation {
    provenance: Provenance,
    premises: [Option<Edge>; 2],
}

/// Strings of length at most `max_len`, indexed shortest first, then lexicographically.
#[derive(Clone, Debug)]
struct Universe {
    max_len: usize,
    strings: Vec<BitString>,
}

impl Universe {
    fn new(max_len: usize) -> Self {
        Self { max_len, strings: BitString::all_up_to(max_len).collect() }
    }

    fn index(&self, s: &BitString) -> Option<u32> {
        (s.len() <= self.max_len).then(|| ((1u64 << s.len()) - 1 + s.to_index()) as u32)
    }

    fn get(&self, i: u32) -> &BitString {
        &self.strings[i as usize]
    }

    fn len(&self) -> usize {
        self.strings.len()
    }
}

/// Bit rows allocated on first use.
#[derive(Clone, Debug)]
struct SparseBits {
    width: usize,
    rows: Vec<Option<Box<[u64]>>>,
}

impl SparseBits {
    fn new(n: usize) -> Self {
        Self { width: n.div_ceil(64), rows: vec![None; n] }
    }

    fn get(&self, r: u32, c: u32) -> bool {
        self.rows[r as usize].as_ref().is_some_and(|row| row[c as usize / 64] >> (c % 64) & 1 == 1)
    }

    fn set(&mut self, r: u32, c: u32) {
        let width = self.width;
        let row = self.rows[r as usize].get_or_insert_with(|| vec![0u64; width].into_boxed_slice());
        row[c as usize / 64] |= 1 << (c % 64);
    }

    fn ones(&self, r: u32) -> Vec<u32> {
        let mut out = Vec::new();
        if let Some(row) = &self.rows[r as usize] {
            for (w, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    out.push((w * 64) as u32 + bits.trailing_zeros());
                    bits &= bits - 1;
                }
            }
        }
        out
    }
}

/// A reflexive relation `lhs >= rhs` over all strings up to a length bound.
#[derive(Clone, Debug)]
pub struct RelationSet {
    universe: Universe,
    rows: SparseBits,
    cols: SparseBits,
    derivations: HashMap<Edge, Derivation>,
    order: Vec<Edge>,
}

/// One line of exported edge data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeRecord {
    pub lhs: BitString,
    pub rhs: BitString,
    pub provenance: Provenance,
}

impl RelationSet {
    /// The reflexive relation on strings of length at most `max_len`.
    pub fn new(max_len: usize) -> Result<Self> {
        if max_len > MAX_CLOSURE_LEN {
            return Err(Error::Capacity { len: max_len, limit: MAX_CLOSURE_LEN });
        }
        let universe = Universe::new(max_len);
        let n = universe.len();
        Ok(Self { universe, rows: SparseBits::new(n), cols: SparseBits::new(n), derivations: HashMap::new(), order: Vec::new() })
    }

    pub fn max_len(&self) -> usize {
        self.universe.max_len
    }

    /// Number of stored (non-reflexive) edges.
    pub fn edge_count(&self) -> usize {
        self.order.len()
    }

    /// `lhs >= rhs` is in the relation; always true for equal strings in range.
    pub fn contains(&self, lhs: &BitString, rhs: &BitString) -> bool {
        match (self.universe.index(lhs), self.universe.index(rhs)) {
            (Some(a), Some(b)) => a == b || self.rows.get(a, b),
            _ => false,
        }
    }

    /// Classifies a pair by membership in both directions.
    pub fn classify(&self, alpha: &BitString, gamma: &BitString) -> OrderOutcome {
        if alpha == gamma {
            return OrderOutcome::Equal;
        }
        match (self.contains(alpha, gamma), self.contains(gamma, alpha)) {
            (true, true) => OrderOutcome::Equivalent,
            (true, false) => OrderOutcome::Greater,
            (false, true) => OrderOutcome::Less,
            (false, false) => OrderOutcome::Incomparable,
        }
    }

    fn insert(&mut self, edge: Edge, derivation: Derivation) -> bool {
        let (a, b) = edge;
        if a == b || self.rows.get(a, b) {
            return false;
        }
        self.rows.set(a, b);
        self.cols.set(b, a);
        self.derivations.insert(edge, derivation);
        self.order.push(edge);
        true
    }

    /// Adds a seed edge; strings longer than the bound are ignored.
    pub fn add_seed(&mut self, lhs: &BitString, rhs: &BitString, rule: Rule) -> bool {
        match (self.universe.index(lhs), self.universe.index(rhs)) {
            (Some(a), Some(b)) => self.insert((a, b), Derivation { provenance: Provenance::Seed(rule), premises: [None, None] }),
            _ => false,
        }
    }

    /// Edges in insertion order, reflexive pairs omitted.
    pub fn edges(&self) -> impl Iterator<Item = EdgeRecord> + '_ {
        self.order.iter().map(|e| EdgeRecord {
            lhs: self.universe.get(e.0).clone(),
            rhs: self.universe.get(e.1).clone(),
            provenance: self.derivations[e].provenance,
        })
    }

    /// CSV with columns `lhs,rhs,provenance`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for rec in self.edges() {
            w.serialize(rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Derivation of `lhs >= rhs` as indented lines, premises before conclusions.
    pub fn explain(&self, lhs: &BitString, rhs: &BitString) -> Option<Vec<String>> {
        let a = self.universe.index(lhs)?;
        let b = self.universe.index(rhs)?;
        if a == b {
            return Some(vec![format!("{lhs} >= {rhs}  [reflexive]")]);
        }
        self.derivations.get(&(a, b))?;
        let mut lines = Vec::new();
        self.explain_into((a, b), 0, &mut lines);
        Some(lines)
    }

    fn explain_into(&self, edge: Edge, depth: usize, lines: &mut Vec<String>) {
        let d = self.derivations[&edge];
        for p in d.premises.into_iter().flatten() {
            self.explain_into(p, depth + 1, lines);
        }
        let (l, r) = (self.universe.get(edge.0), self.universe.get(edge.1));
        lines.push(format!("{:indent$}{l} >= {r}  [{}]", "", d.provenance, indent = 2 * depth));
    }

    /// Least superset closed under concatenation, duality and transitivity.
    pub fn close(&self) -> RelationSet {
        let mut out = self.clone();
        out.close_in_place();
        out
    }

    fn close_in_place(&mut self) {
        let n = self.universe.len() as u32;
        let max_len = self.universe.max_len;
        let index = |s: &BitString, u: &Universe| u.index(s).expect("in range");
        let append: Vec<[Option<u32>; 2]> = (0..n)
            .map(|i| {
                let s = self.universe.get(i);
                [false, true].map(|bit| (s.len() < max_len).then(|| index(&s.pushed(bit), &self.universe)))
            })
            .collect();
        let prepend: Vec<[Option<u32>; 2]> = (0..n)
            .map(|i| {
                let s = self.universe.get(i);
                [false, true].map(|bit| (s.len() < max_len).then(|| index(&s.prepended(bit), &self.universe)))
            })
            .collect();
        let dual: Vec<u32> = (0..n).map(|i| index(&dual_string(self.universe.get(i)), &self.universe)).collect();

        let mut queue: VecDeque<Edge> = self.order.iter().copied().collect();
        while let Some(e @ (a, b)) = queue.pop_front() {
            let mut derived: Vec<(Edge, Derivation)> = Vec::new();
            let single = |provenance| Derivation { provenance, premises: [Some(e), None] };
            for bit in 0..2 {
                if let (Some(x), Some(y)) = (append[a as usize][bit], append[b as usize][bit]) {
                    derived.push(((x, y), single(Provenance::Append)));
                }
                if let (Some(x), Some(y)) = (prepend[a as usize][bit], prepend[b as usize][bit]) {
                    derived.push(((x, y), single(Provenance::Prepend)));
                }
            }
            derived.push(((dual[b as usize], dual[a as usize]), single(Provenance::Dual)));
            for c in self.rows.ones(b) {
                derived.push(((a, c), Derivation { provenance: Provenance::Transitive, premises: [Some(e), Some((b, c))] }));
            }
            for d in self.cols.ones(a) {
                derived.push(((d, b), Derivation { provenance: Provenance::Transitive, premises: [Some((d, a)), Some(e)] }));
            }
            for (edge, derivation) in derived {
                if self.insert(edge, derivation) {
                    queue.push_back(edge);
                }
            }
        }
    }
}

/// Seed edges for `rules` over strings of length at most `max_len`.
///
/// The conjectured rule D is refused unless `allow_conjecture` is set.
pub fn seed_rules(rules: &RuleSet, max_len: usize, allow_conjecture: bool) -> Result<RelationSet> {
    if rules.contains(Rule::D) && !allow_conjecture {
        return Err(Error::Usage("rule D is a conjecture; enable it explicitly".into()));
    }
    let mut set = RelationSet::new(max_len)?;
    for rule in rules.iter() {
        for (lhs, rhs) in rule.instances(max_len) {
            set.add_seed(&lhs, &rhs, rule);
        }
    }
    Ok(set)
}

/// Seeds and closes in one step.
pub fn closure_of(rules: &RuleSet, max_len: usize, allow_conjecture: bool) -> Result<RelationSet> {
    Ok(seed_rules(rules, max_len, allow_conjecture)?.close())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn rules(s: &str) -> RuleSet {
        s.parse().unwrap()
    }

    fn edge_set(r: &RelationSet) -> BTreeSet<(BitString, BitString)> {
        r.edges().map(|e| (e.lhs, e.rhs)).collect()
    }

    #[test]
    fn seeds() {
        let a = seed_rules(&rules("A"), 1, false).unwrap();
        assert_eq!(edge_set(&a), BTreeSet::from([(bs("1"), bs("0"))]));
        assert!(a.contains(&bs("0"), &bs("0")));
        let c = seed_rules(&rules("C"), 6, false).unwrap();
        assert!(c.contains(&bs("100001"), &bs("010010")));
        assert!(c.contains(&bs("1001"), &bs("0110")));
        let f = seed_rules(&rules("F"), 3, false).unwrap();
        assert!(f.contains(&bs("011"), &bs("10")));
        assert!(seed_rules(&rules("D"), 6, false).is_err());
        let d = seed_rules(&rules("D"), 6, true).unwrap();
        assert!(d.contains(&bs("011"), &bs("100")));
        assert!(d.contains(&bs("001111"), &bs("110000")));
        let e = seed_rules(&rules("E"), 12, false).unwrap();
        for s in ["1", "10", "1001", "10010110", "100101100110"] {
            let hi = bs(s);
            assert!(e.contains(&hi, &hi.complement()), "{s}");
        }
    }

    #[test]
    fn rule_set_parsing() {
        assert_eq!(rules("A,B,C"), rules("abc"));
        assert_eq!(rules("{A, F}").to_string(), "AF");
        assert!("AX".parse::<RuleSet>().is_err());
        assert!(rules("").iter().next().is_none());
    }

    #[test]
    fn empty_closure_is_reflexive() {
        let r = RelationSet::new(4).unwrap().close();
        assert_eq!(r.edge_count(), 0);
        assert!(r.contains(&bs("0110"), &bs("0110")));
        assert_eq!(r.classify(&bs("01"), &bs("10")), OrderOutcome::Incomparable);
    }

    #[test]
    fn rsa_closure_at_two() {
        let r = closure_of(&rules("A"), 2, false).unwrap();
        for (l, g) in [("11", "00"), ("10", "00"), ("11", "01"), ("1", "0"), ("11", "10")] {
            assert!(r.contains(&bs(l), &bs(g)), "{l} >= {g}");
        }
        assert!(!r.contains(&bs("10"), &bs("01")));
        assert!(!r.contains(&bs("1"), &bs("00")));
    }

    #[test]
    fn rsf_chain() {
        let r = closure_of(&rules("ABF"), 4, false).unwrap();
        assert!(r.contains(&bs("0011"), &bs("010")));
        assert!(r.contains(&bs("010"), &bs("1000")));
        assert!(r.contains(&bs("0011"), &bs("1000")));
        let chain = r.explain(&bs("0011"), &bs("1000")).unwrap();
        assert!(chain.last().unwrap().starts_with("0011 >= 1000"));
    }

    #[test]
    fn closure_properties() {
        let base = closure_of(&rules("ABF"), 5, false).unwrap();
        let bigger = closure_of(&rules("ABCF"), 5, false).unwrap();
        assert_eq!(edge_set(&base.close()), edge_set(&base));
        assert!(edge_set(&base).is_subset(&edge_set(&bigger)));
        for (l, g) in edge_set(&bigger) {
            assert!(bigger.contains(&dual_string(&g), &dual_string(&l)));
        }
        let set = edge_set(&base);
        for (a, b) in &set {
            for (c, d) in &set {
                if b == c {
                    assert!(base.contains(a, d));
                }
                if a.len() + c.len() <= 5 && b.len() + d.len() <= 5 {
                    assert!(base.contains(&a.concat(c), &b.concat(d)));
                }
            }
        }
    }

    #[test]
    fn csv_export() {
        let r = closure_of(&rules("A"), 1, false).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "lhs,rhs,provenance\n1,0,seed:A\n");
    }
}
