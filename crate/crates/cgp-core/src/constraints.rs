//! Attribute constraints: satisfaction of a constraint conjunction by an
//! attribute assignment, and implication between two conjunctions.
//!
//! Implication is decided symbolically through [`NormalizedConstraint`], a
//! per-attribute canonical form (bounds, equality folded into the bounds, and
//! an excluded-value set). Integer domains absorb strict bounds into closed
//! ones (`A > c` becomes `A >= c+1`), which makes implication complete per
//! type: `age > 44` and `age >= 45` are equivalent over integers but not over
//! decimals. String ordering is byte-wise lexicographic so verdicts are
//! platform-stable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A typed constant: integer, decimal, or string.
///
/// Integers and decimals compare numerically with each other; strings compare
/// byte-wise lexicographically and only with other strings.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Dec(f64),
    Str(String),
}

impl Eq for Value {}

impl Ord for Value {
    /// Structural ordering used for canonical serialization and set storage.
    /// Semantic (numeric) comparison lives in [`Value::compare`].
    fn cmp(&self, other: &Self) -> Ordering {
        use Value::*;
        match (self, other) {
            (Int(a), Int(b)) => a.cmp(b),
            (Dec(a), Dec(b)) => a.total_cmp(b),
            (Str(a), Str(b)) => a.cmp(b),
            (Int(_), _) => Ordering::Less,
            (_, Int(_)) => Ordering::Greater,
            (Dec(_), _) => Ordering::Less,
            (_, Dec(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Dec(d) => write!(f, "{d:?}"),
            Value::Str(s) => write!(f, "{s:?}"),
        }
    }
}

impl Value {
    /// Semantic comparison: numeric across `Int`/`Dec`, lexicographic for
    /// strings. Returns `None` when the values are incomparable (string vs
    /// number).
    pub fn compare(&self, other: &Value) -> Option<Ordering> {
        use Value::*;
        match (self, other) {
            (Int(a), Int(b)) => Some(a.cmp(b)),
            (Dec(a), Dec(b)) => Some(a.total_cmp(b)),
            (Int(a), Dec(b)) => Some((*a as f64).total_cmp(b)),
            (Dec(a), Int(b)) => Some(a.total_cmp(&(*b as f64))),
            (Str(a), Str(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }

    fn type_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Dec(_) => "decimal",
            Value::Str(_) => "string",
        }
    }
}

/// Comparison operator of a constraint atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Ge,
    Le,
    Eq,
    Ne,
    Gt,
    Lt,
}

impl CmpOp {
    pub fn holds(&self, ord: Ordering) -> bool {
        match self {
            CmpOp::Ge => ord != Ordering::Less,
            CmpOp::Le => ord != Ordering::Greater,
            CmpOp::Eq => ord == Ordering::Equal,
            CmpOp::Ne => ord != Ordering::Equal,
            CmpOp::Gt => ord == Ordering::Greater,
            CmpOp::Lt => ord == Ordering::Less,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            CmpOp::Ge => ">=",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Gt => ">",
            CmpOp::Lt => "<",
        }
    }
}

/// One atomic formula `attr op constant`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Atom {
    pub attr: String,
    pub op: CmpOp,
    pub value: Value,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.attr, self.op.symbol(), self.value)
    }
}

/// Conjunction of atoms constraining a pattern node. Empty means "no
/// constraint".
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConstraintConjunction(pub Vec<Atom>);

impl ConstraintConjunction {
    pub fn none() -> Self {
        ConstraintConjunction(Vec::new())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Attributes constrained by this conjunction.
    pub fn attrs(&self) -> BTreeSet<&str> {
        self.0.iter().map(|a| a.attr.as_str()).collect()
    }
}

/// Attribute values carried by a data node; attribute names are unique.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct AttributeAssignment(pub BTreeMap<String, Value>);

impl AttributeAssignment {
    pub fn new() -> Self {
        AttributeAssignment(BTreeMap::new())
    }

    pub fn get(&self, attr: &str) -> Option<&Value> {
        self.0.get(attr)
    }

    pub fn set(mut self, attr: &str, value: Value) -> Self {
        self.0.insert(attr.to_string(), value);
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("incomparable values: {left} value vs {right} constant on attribute {attr:?}")]
    IncomparableValues {
        attr: String,
        left: &'static str,
        right: &'static str,
    },
    #[error("mixed constant types on attribute {attr:?}")]
    MixedTypes { attr: String },
    #[error("unsatisfiable constraint on attribute {attr:?}")]
    Unsatisfiable { attr: String },
}

/// Does the assignment satisfy the conjunction?
///
/// An atom over an attribute absent from the assignment fails; comparing a
/// string value against a numeric constant (or vice versa) is an error.
pub fn satisfies(
    values: &AttributeAssignment,
    formula: &ConstraintConjunction,
) -> Result<bool, ConstraintError> {
    let mut ok = true;
    for atom in formula.atoms() {
        match values.get(&atom.attr) {
            None => ok = false,
            Some(v) => match v.compare(&atom.value) {
                Some(ord) => {
                    if !atom.op.holds(ord) {
                        ok = false;
                    }
                }
                None => {
                    return Err(ConstraintError::IncomparableValues {
                        attr: atom.attr.clone(),
                        left: v.type_name(),
                        right: atom.value.type_name(),
                    })
                }
            },
        }
    }
    Ok(ok)
}

/// Like [`satisfies`], with incomparable values counting as a failed atom.
/// The matching engines use this form.
pub fn satisfies_lenient(values: &AttributeAssignment, formula: &ConstraintConjunction) -> bool {
    satisfies(values, formula).unwrap_or(false)
}

/// Value domain an attribute's constraints are interpreted over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Int,
    Dec,
    Str,
}

fn domain_of(v: &Value) -> Domain {
    match v {
        Value::Int(_) => Domain::Int,
        Value::Dec(_) => Domain::Dec,
        Value::Str(_) => Domain::Str,
    }
}

/// One attribute's canonical solution set: bounds plus excluded points.
/// Equality atoms are folded into the bounds (`lo == hi`, both closed).
#[derive(Debug, Clone, PartialEq)]
pub struct AttrRange {
    pub domain: Domain,
    /// Lower bound; `bool` is the open flag. Integer and string bounds are
    /// closed after normalization (strings have a least element, `""`).
    pub lo: Option<(Value, bool)>,
    pub hi: Option<(Value, bool)>,
    pub excluded: BTreeSet<Value>,
}

impl AttrRange {
    fn unconstrained(domain: Domain) -> Self {
        AttrRange {
            domain,
            lo: None,
            hi: None,
            excluded: BTreeSet::new(),
        }
    }

    fn contains(&self, v: &Value) -> bool {
        if self.excluded.contains(v) {
            return false;
        }
        if let Some((lo, open)) = &self.lo {
            match v.compare(lo) {
                Some(Ordering::Less) => return false,
                Some(Ordering::Equal) if *open => return false,
                None => return false,
                _ => {}
            }
        }
        if let Some((hi, open)) = &self.hi {
            match v.compare(hi) {
                Some(Ordering::Greater) => return false,
                Some(Ordering::Equal) if *open => return false,
                None => return false,
                _ => {}
            }
        }
        true
    }

    /// Successor in a discrete domain; `None` for decimals or on overflow.
    fn succ(domain: Domain, v: &Value) -> Option<Value> {
        match (domain, v) {
            (Domain::Int, Value::Int(i)) => i.checked_add(1).map(Value::Int),
            (Domain::Str, Value::Str(s)) => {
                let mut t = s.clone();
                t.push('\0');
                Some(Value::Str(t))
            }
            _ => None,
        }
    }

    /// Tighten bounds so that closed endpoints are genuine solution points.
    fn tighten(&mut self) {
        if matches!(self.domain, Domain::Int | Domain::Str) {
            // Discrete lower end: step over excluded points.
            for _ in 0..=self.excluded.len() {
                match &self.lo {
                    Some((lo, open)) => {
                        debug_assert!(!open, "discrete bounds are closed after normalization");
                        if self.excluded.contains(lo) {
                            match Self::succ(self.domain, lo) {
                                Some(next) => self.lo = Some((next, false)),
                                None => break,
                            }
                        } else {
                            break;
                        }
                    }
                    None => break,
                }
            }
        }
        if self.domain == Domain::Int {
            // Integers also have predecessors, so the upper end tightens too.
            for _ in 0..=self.excluded.len() {
                match &self.hi {
                    Some((Value::Int(h), _)) if self.excluded.contains(&Value::Int(*h)) => {
                        match h.checked_sub(1) {
                            Some(p) => self.hi = Some((Value::Int(p), false)),
                            None => break,
                        }
                    }
                    _ => break,
                }
            }
        } else {
            // Dense or predecessor-free domains: a closed excluded endpoint
            // just becomes open.
            if let Some((hi, open)) = &self.hi {
                if !*open && self.excluded.contains(hi) {
                    self.hi = Some((hi.clone(), true));
                }
            }
            if self.domain == Domain::Dec {
                if let Some((lo, open)) = &self.lo {
                    if !*open && self.excluded.contains(lo) {
                        self.lo = Some((lo.clone(), true));
                    }
                }
            }
        }
        let lo = self.lo.clone();
        let hi = self.hi.clone();
        self.excluded.retain(|q| {
            let above_lo = match &lo {
                Some((l, open)) => match q.compare(l) {
                    Some(Ordering::Greater) => true,
                    Some(Ordering::Equal) => !*open,
                    _ => false,
                },
                None => true,
            };
            let below_hi = match &hi {
                Some((h, open)) => match q.compare(h) {
                    Some(Ordering::Less) => true,
                    Some(Ordering::Equal) => !*open,
                    _ => false,
                },
                None => true,
            };
            above_lo && below_hi
        });
    }

    /// Is the solution set non-empty?
    fn inhabited(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some((lo, lo_open)), Some((hi, hi_open))) => match lo.compare(hi) {
                Some(Ordering::Greater) | None => false,
                Some(Ordering::Equal) => !lo_open && !hi_open && !self.excluded.contains(lo),
                Some(Ordering::Less) => match self.domain {
                    Domain::Int | Domain::Str => self.walk_finds_point(),
                    Domain::Dec => true,
                },
            },
            (Some((_, lo_open)), None) => {
                if matches!(self.domain, Domain::Int | Domain::Str) {
                    debug_assert!(!lo_open);
                    self.walk_finds_point()
                } else {
                    true
                }
            }
            _ => true,
        }
    }

    /// Walk the discrete successor chain from `lo` looking for a point inside
    /// the bounds and outside the exclusions. At most `|excluded| + 1` steps
    /// are needed: the visited points are distinct, so they cannot all be
    /// excluded.
    fn walk_finds_point(&self) -> bool {
        let mut x = match &self.lo {
            Some((lo, _)) => lo.clone(),
            None => return true,
        };
        for _ in 0..=self.excluded.len() {
            let in_hi = match &self.hi {
                Some((hi, open)) => match x.compare(hi) {
                    Some(Ordering::Less) => true,
                    Some(Ordering::Equal) => !*open,
                    _ => false,
                },
                None => true,
            };
            if !in_hi {
                return false;
            }
            if !self.excluded.contains(&x) {
                return true;
            }
            match Self::succ(self.domain, &x) {
                Some(next) => x = next,
                None => return false,
            }
        }
        true
    }

    /// A concrete solution point, if one exists.
    pub fn witness(&self) -> Option<Value> {
        if !self.inhabited() {
            return None;
        }
        let start = match (&self.lo, self.domain) {
            (Some((lo, open)), Domain::Dec) => {
                if *open {
                    let base = num(lo);
                    match &self.hi {
                        Some((hi, _)) => Value::Dec((base + num(hi)) / 2.0),
                        None => Value::Dec(base + 1.0),
                    }
                } else {
                    lo.clone()
                }
            }
            (Some((lo, _)), _) => lo.clone(),
            (None, Domain::Str) => Value::Str(String::new()),
            (None, Domain::Int) => match &self.hi {
                Some((Value::Int(h), _)) => Value::Int(h.saturating_sub(1024)),
                _ => Value::Int(0),
            },
            (None, Domain::Dec) => match &self.hi {
                Some((h, _)) => Value::Dec(num(h) - 1024.0),
                None => Value::Dec(0.0),
            },
        };
        let mut x = start;
        for _ in 0..=self.excluded.len() + 1 {
            if self.contains(&x) {
                return Some(x);
            }
            x = match Self::succ(self.domain, &x) {
                Some(next) => next,
                None => {
                    // Dense domain: nudge upward past the excluded point.
                    let base = num(&x);
                    let hi = self.hi.as_ref().map(|(h, _)| num(h));
                    let next = match hi {
                        Some(h) => (base + h) / 2.0 + f64::EPSILON * base.abs().max(1.0),
                        None => base + 0.5,
                    };
                    Value::Dec(next)
                }
            };
        }
        None
    }
}

fn num(v: &Value) -> f64 {
    match v {
        Value::Int(i) => *i as f64,
        Value::Dec(d) => *d,
        _ => f64::NAN,
    }
}

/// Canonical per-attribute form of a constraint conjunction.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedConstraint(pub BTreeMap<String, AttrRange>);

impl NormalizedConstraint {
    pub fn range(&self, attr: &str) -> Option<&AttrRange> {
        self.0.get(attr)
    }

    /// One assignment satisfying every attribute, if the form is satisfiable.
    pub fn witness(&self) -> Option<AttributeAssignment> {
        let mut out = AttributeAssignment::new();
        for (attr, range) in &self.0 {
            out.0.insert(attr.clone(), range.witness()?);
        }
        Some(out)
    }
}

/// Normalize a conjunction over the given per-attribute domains. Attributes
/// not present in `domains` use the domain of their own constants.
fn normalize_with(
    formula: &ConstraintConjunction,
    domains: &BTreeMap<&str, Domain>,
) -> Result<NormalizedConstraint, ConstraintError> {
    let mut out: BTreeMap<String, AttrRange> = BTreeMap::new();
    for atom in formula.atoms() {
        let domain = *domains.get(atom.attr.as_str()).unwrap_or(&domain_of(&atom.value));
        // A string atom in a numeric domain (or vice versa) can never be
        // satisfied together with the other side's atoms.
        if domain_mismatch(domain, &atom.value) {
            return Err(ConstraintError::MixedTypes {
                attr: atom.attr.clone(),
            });
        }
        let range = out
            .entry(atom.attr.clone())
            .or_insert_with(|| AttrRange::unconstrained(domain));
        apply_atom(range, atom);
    }
    for range in out.values_mut() {
        if range.domain == Domain::Str && range.lo.is_none() {
            range.lo = Some((Value::Str(String::new()), false));
        }
        range.tighten();
    }
    Ok(NormalizedConstraint(out))
}

fn domain_mismatch(domain: Domain, v: &Value) -> bool {
    matches!(
        (domain, v),
        (Domain::Str, Value::Int(_) | Value::Dec(_)) | (Domain::Int | Domain::Dec, Value::Str(_))
    )
}

fn apply_atom(range: &mut AttrRange, atom: &Atom) {
    let v = coerce(range.domain, &atom.value);
    match atom.op {
        CmpOp::Eq => {
            intersect_lo(range, v.clone(), false);
            intersect_hi(range, v, false);
        }
        CmpOp::Ne => {
            range.excluded.insert(v);
        }
        CmpOp::Ge => intersect_lo(range, v, false),
        CmpOp::Gt => match range.domain {
            // Discrete domains close strict bounds up to the successor.
            Domain::Int | Domain::Str => match AttrRange::succ(range.domain, &v) {
                Some(next) => intersect_lo(range, next, false),
                None => {
                    // No successor (integer overflow): nothing lies above.
                    range.excluded.insert(v.clone());
                    intersect_lo(range, v, false);
                }
            },
            Domain::Dec => intersect_lo(range, v, true),
        },
        CmpOp::Le => intersect_hi(range, v, false),
        CmpOp::Lt => match (range.domain, &v) {
            (Domain::Int, Value::Int(i)) => match i.checked_sub(1) {
                Some(p) => intersect_hi(range, Value::Int(p), false),
                None => {
                    range.excluded.insert(v.clone());
                    intersect_hi(range, v, false);
                }
            },
            _ => intersect_hi(range, v, true),
        },
    }
}

/// Promote integer constants into a decimal domain so bound comparisons are
/// exact within one representation.
fn coerce(domain: Domain, v: &Value) -> Value {
    match (domain, v) {
        (Domain::Dec, Value::Int(i)) => Value::Dec(*i as f64),
        _ => v.clone(),
    }
}

fn intersect_lo(range: &mut AttrRange, v: Value, open: bool) {
    let replace = match &range.lo {
        None => true,
        Some((cur, cur_open)) => match v.compare(cur) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Equal) => open && !cur_open,
            _ => false,
        },
    };
    if replace {
        range.lo = Some((v, open));
    }
}

fn intersect_hi(range: &mut AttrRange, v: Value, open: bool) {
    let replace = match &range.hi {
        None => true,
        Some((cur, cur_open)) => match v.compare(cur) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => open && !cur_open,
            _ => false,
        },
    };
    if replace {
        range.hi = Some((v, open));
    }
}

/// Normalize a single conjunction, checking per-attribute type uniformity and
/// satisfiability. Used by pattern validation.
pub fn normalize(formula: &ConstraintConjunction) -> Result<NormalizedConstraint, ConstraintError> {
    // Within one conjunction every constant on an attribute must share one
    // type; mixing integers and decimals counts as mixed.
    let mut seen: BTreeMap<&str, Domain> = BTreeMap::new();
    for atom in formula.atoms() {
        let d = domain_of(&atom.value);
        match seen.get(atom.attr.as_str()) {
            Some(prev) if *prev != d => {
                return Err(ConstraintError::MixedTypes {
                    attr: atom.attr.clone(),
                })
            }
            _ => {
                seen.insert(atom.attr.as_str(), d);
            }
        }
    }
    let norm = normalize_with(formula, &BTreeMap::new())?;
    for (attr, range) in &norm.0 {
        if !range.inhabited() {
            return Err(ConstraintError::Unsatisfiable { attr: attr.clone() });
        }
    }
    Ok(norm)
}

/// Is every assignment satisfying `stronger` also satisfying `weaker`?
///
/// Decided per attribute: the joint domain of an attribute is integer only
/// when both sides constrain it with integer constants exclusively; any
/// decimal widens it to the reals. If `weaker` constrains an attribute that
/// `stronger` leaves unconstrained the answer is `false`. Both inputs must be
/// satisfiable (validated); verdicts on unsatisfiable inputs are unspecified.
pub fn implies(stronger: &ConstraintConjunction, weaker: &ConstraintConjunction) -> bool {
    let mut domains: BTreeMap<&str, Domain> = BTreeMap::new();
    for atom in stronger.atoms().iter().chain(weaker.atoms()) {
        let d = domain_of(&atom.value);
        domains
            .entry(atom.attr.as_str())
            .and_modify(|cur| {
                *cur = match (*cur, d) {
                    (Domain::Str, Domain::Str) => Domain::Str,
                    (Domain::Int, Domain::Int) => Domain::Int,
                    (Domain::Str, _) | (_, Domain::Str) => Domain::Str, // mismatch caught below
                    _ => Domain::Dec,
                };
            })
            .or_insert(d);
    }
    // A string/numeric clash on a shared attribute means no common solutions
    // relate the two sides; implication fails.
    for atom in stronger.atoms().iter().chain(weaker.atoms()) {
        if domain_mismatch(domains[atom.attr.as_str()], &atom.value) {
            return false;
        }
    }
    let a = match normalize_with(stronger, &domains) {
        Ok(n) => n,
        Err(_) => return false,
    };
    let b = match normalize_with(weaker, &domains) {
        Ok(n) => n,
        Err(_) => return false,
    };
    for (attr, rb) in &b.0 {
        match a.0.get(attr) {
            None => return false,
            Some(ra) => {
                if !range_subset(ra, rb) {
                    return false;
                }
            }
        }
    }
    true
}

/// Mutual implication.
pub fn equivalent(a: &ConstraintConjunction, b: &ConstraintConjunction) -> bool {
    implies(a, b) && implies(b, a)
}

/// Solution-set inclusion `a ⊆ b` for one attribute. `a` is assumed
/// inhabited and tightened.
fn range_subset(a: &AttrRange, b: &AttrRange) -> bool {
    // b's lower bound must not cut into a.
    if let Some((blo, bopen)) = &b.lo {
        match &a.lo {
            None => return false,
            Some((alo, aopen)) => match blo.compare(alo) {
                Some(Ordering::Less) => {}
                Some(Ordering::Equal) => {
                    if *bopen && !*aopen {
                        return false;
                    }
                }
                _ => return false,
            },
        }
    }
    if let Some((bhi, bopen)) = &b.hi {
        match &a.hi {
            None => return false,
            Some((ahi, aopen)) => match bhi.compare(ahi) {
                Some(Ordering::Greater) => {}
                Some(Ordering::Equal) => {
                    if *bopen && !*aopen {
                        return false;
                    }
                }
                _ => return false,
            },
        }
    }
    // Every point b excludes must be outside a's solutions.
    for q in &b.excluded {
        if a.contains(q) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(attr: &str, op: CmpOp, value: Value) -> Atom {
        Atom {
            attr: attr.to_string(),
            op,
            value,
        }
    }

    fn conj(atoms: Vec<Atom>) -> ConstraintConjunction {
        ConstraintConjunction(atoms)
    }

    #[test]
    fn satisfies_basic() {
        let values = AttributeAssignment::new().set("age", Value::Int(50));
        let ge45 = conj(vec![atom("age", CmpOp::Ge, Value::Int(45))]);
        assert_eq!(satisfies(&values, &ge45), Ok(true));

        // An atom over an absent attribute fails: satisfaction requires an
        // actual value to compare.
        assert_eq!(satisfies(&AttributeAssignment::new(), &ge45), Ok(false));

        let values20 = AttributeAssignment::new().set("age", Value::Int(20));
        let ne20 = conj(vec![atom("age", CmpOp::Ne, Value::Int(20))]);
        assert_eq!(satisfies(&values20, &ne20), Ok(false));
    }

    #[test]
    fn satisfies_incomparable_is_error() {
        let values = AttributeAssignment::new().set("age", Value::Str("old".into()));
        let ge45 = conj(vec![atom("age", CmpOp::Ge, Value::Int(45))]);
        assert!(satisfies(&values, &ge45).is_err());
        assert!(!satisfies_lenient(&values, &ge45));
    }

    #[test]
    fn satisfies_splits_over_conjunction() {
        let a = conj(vec![atom("age", CmpOp::Gt, Value::Int(25))]);
        let b = conj(vec![atom("gender", CmpOp::Eq, Value::Str("female".into()))]);
        let mut both = a.clone();
        both.0.extend(b.0.clone());
        for values in [
            AttributeAssignment::new()
                .set("age", Value::Int(30))
                .set("gender", Value::Str("female".into())),
            AttributeAssignment::new().set("age", Value::Int(30)),
            AttributeAssignment::new().set("gender", Value::Str("female".into())),
            AttributeAssignment::new(),
        ] {
            let lhs = satisfies_lenient(&values, &both);
            let rhs = satisfies_lenient(&values, &a) && satisfies_lenient(&values, &b);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn implies_age_gender_example() {
        let strong = conj(vec![
            atom("age", CmpOp::Gt, Value::Int(25)),
            atom("gender", CmpOp::Eq, Value::Str("female".into())),
        ]);
        let weak = conj(vec![atom("age", CmpOp::Ne, Value::Int(20))]);
        assert!(implies(&strong, &weak));
        assert!(!implies(&weak, &strong));
    }

    #[test]
    fn implies_is_reflexive() {
        let x = conj(vec![
            atom("age", CmpOp::Ge, Value::Int(10)),
            atom("age", CmpOp::Le, Value::Int(20)),
            atom("name", CmpOp::Ne, Value::Str("bob".into())),
        ]);
        assert!(implies(&x, &x));
    }

    #[test]
    fn integer_strict_bound_closes_up() {
        let gt44 = conj(vec![atom("age", CmpOp::Gt, Value::Int(44))]);
        let ge45 = conj(vec![atom("age", CmpOp::Ge, Value::Int(45))]);
        assert!(equivalent(&gt44, &ge45));

        let dec_gt44 = conj(vec![atom("age", CmpOp::Gt, Value::Dec(44.0))]);
        let dec_ge45 = conj(vec![atom("age", CmpOp::Ge, Value::Dec(45.0))]);
        assert!(!equivalent(&dec_gt44, &dec_ge45));
        assert!(implies(&dec_ge45, &dec_gt44));

        let ge45i = conj(vec![atom("age", CmpOp::Ge, Value::Int(45))]);
        let ge46i = conj(vec![atom("age", CmpOp::Ge, Value::Int(46))]);
        assert!(!implies(&ge45i, &ge46i));
        assert!(implies(&ge46i, &ge45i));
    }

    #[test]
    fn exclusions_tighten_integer_bounds() {
        // x >= 5 and x != 5 is exactly x >= 6 over integers.
        let a = conj(vec![
            atom("x", CmpOp::Ge, Value::Int(5)),
            atom("x", CmpOp::Ne, Value::Int(5)),
        ]);
        let b = conj(vec![atom("x", CmpOp::Ge, Value::Int(6))]);
        assert!(equivalent(&a, &b));
    }

    #[test]
    fn unsatisfiable_detected() {
        let eq_both = conj(vec![
            atom("a", CmpOp::Eq, Value::Int(3)),
            atom("a", CmpOp::Eq, Value::Int(4)),
        ]);
        assert!(matches!(
            normalize(&eq_both),
            Err(ConstraintError::Unsatisfiable { .. })
        ));

        // Bounded integer range drained by exclusions.
        let drained = conj(vec![
            atom("a", CmpOp::Ge, Value::Int(1)),
            atom("a", CmpOp::Le, Value::Int(3)),
            atom("a", CmpOp::Ne, Value::Int(1)),
            atom("a", CmpOp::Ne, Value::Int(2)),
            atom("a", CmpOp::Ne, Value::Int(3)),
        ]);
        assert!(normalize(&drained).is_err());

        // The same exclusions over decimals leave plenty of room.
        let dec = conj(vec![
            atom("a", CmpOp::Ge, Value::Dec(1.0)),
            atom("a", CmpOp::Le, Value::Dec(3.0)),
            atom("a", CmpOp::Ne, Value::Dec(1.0)),
            atom("a", CmpOp::Ne, Value::Dec(2.0)),
            atom("a", CmpOp::Ne, Value::Dec(3.0)),
        ]);
        assert!(normalize(&dec).is_ok());
    }

    #[test]
    fn mixed_types_rejected() {
        let mixed = conj(vec![
            atom("a", CmpOp::Ge, Value::Int(1)),
            atom("a", CmpOp::Eq, Value::Str("x".into())),
        ]);
        assert!(matches!(
            normalize(&mixed),
            Err(ConstraintError::MixedTypes { .. })
        ));
    }

    #[test]
    fn unconstrained_attribute_blocks_implication() {
        let strong = conj(vec![atom("age", CmpOp::Ge, Value::Int(45))]);
        let weak = conj(vec![atom("city", CmpOp::Ne, Value::Str("x".into()))]);
        assert!(!implies(&strong, &weak));
        assert!(implies(&strong, &ConstraintConjunction::none()));
        assert!(!implies(&ConstraintConjunction::none(), &strong));
    }

    #[test]
    fn witness_produces_solutions() {
        for c in [
            conj(vec![atom("a", CmpOp::Gt, Value::Int(5))]),
            conj(vec![
                atom("a", CmpOp::Ge, Value::Int(5)),
                atom("a", CmpOp::Ne, Value::Int(5)),
                atom("a", CmpOp::Le, Value::Int(7)),
            ]),
            conj(vec![atom("a", CmpOp::Lt, Value::Dec(2.5))]),
            conj(vec![atom("s", CmpOp::Gt, Value::Str("m".into()))]),
            conj(vec![atom("s", CmpOp::Ne, Value::Str("".into()))]),
        ] {
            let w = normalize(&c).unwrap().witness().unwrap();
            assert_eq!(satisfies(&w, &c), Ok(true), "witness failed for {c:?}");
        }
    }
}
