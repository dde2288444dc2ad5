//! A tiny formula language with the strong-negation rewriter and classical
//! evaluation over finite structures.
//!
//! Terms are variables or named constants of a finite sort; sorts are
//! validated carriers, so `=` and `≠` are interpreted by the carrier's
//! partition and apartness relation. The evaluator is the classical oracle
//! for the negation calculus: on tight structures `No` behaves exactly like
//! classical negation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::carrier::Carrier;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    EqAtom(Term, Term),
    NeqAtom(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, String, Box<Formula>),
    Exists(String, String, Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn forall(v: &str, sort: &str, body: Formula) -> Formula {
        Formula::Forall(v.into(), sort.into(), Box::new(body))
    }
    pub fn exists(v: &str, sort: &str, body: Formula) -> Formula {
        Formula::Exists(v.into(), sort.into(), Box::new(body))
    }
    /// `¬A := A ⇒ ⊥`.
    pub fn weak_not(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bottom)
    }

    pub fn is_implication_free(&self) -> bool {
        match self {
            Formula::Top | Formula::Bottom | Formula::EqAtom(..) | Formula::NeqAtom(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.is_implication_free() && b.is_implication_free()
            }
            Formula::Implies(..) => false,
            Formula::Forall(_, _, f) | Formula::Exists(_, _, f) => f.is_implication_free(),
        }
    }

    /// Free variables, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            let term = |t: &Term, bound: &Vec<String>, out: &mut Vec<String>| {
                if let Term::Var(v) = t {
                    if !bound.contains(v) && !out.contains(v) {
                        out.push(v.clone());
                    }
                }
            };
            match f {
                Formula::Top | Formula::Bottom => {}
                Formula::EqAtom(s, t) | Formula::NeqAtom(s, t) => {
                    term(s, bound, out);
                    term(t, bound, out);
                }
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(v, _, body) | Formula::Exists(v, _, body) => {
                    bound.push(v.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Renames bound variables to de Bruijn-style canonical names, for
    /// alpha-insensitive syntactic comparison.
    pub fn debruijn(&self) -> Formula {
        fn go(f: &Formula, env: &mut Vec<String>) -> Formula {
            let term = |t: &Term, env: &Vec<String>| match t {
                Term::Var(v) => match env.iter().rposition(|b| b == v) {
                    Some(i) => Term::Var(format!("#{}", env.len() - 1 - i)),
                    None => t.clone(),
                },
                Term::Const(_) => t.clone(),
            };
            match f {
                Formula::Top => Formula::Top,
                Formula::Bottom => Formula::Bottom,
                Formula::EqAtom(s, t) => Formula::EqAtom(term(s, env), term(t, env)),
                Formula::NeqAtom(s, t) => Formula::NeqAtom(term(s, env), term(t, env)),
                Formula::And(a, b) => Formula::and(go(a, env), go(b, env)),
                Formula::Or(a, b) => Formula::or(go(a, env), go(b, env)),
                Formula::Implies(a, b) => Formula::implies(go(a, env), go(b, env)),
                Formula::Forall(v, s, body) => {
                    env.push(v.clone());
                    let b = go(body, env);
                    env.pop();
                    Formula::Forall("#".into(), s.clone(), Box::new(b))
                }
                Formula::Exists(v, s, body) => {
                    env.push(v.clone());
                    let b = go(body, env);
                    env.pop();
                    Formula::Exists("#".into(), s.clone(), Box::new(b))
                }
            }
        }
        go(self, &mut Vec::new())
    }

    /// Alpha-equivalence: syntactic identity after de Bruijn normalization.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self.debruijn() == other.debruijn()
    }
}

/// The syntactic strong negation: atoms swap Eq↔Neq, ∨↦∧, ∧↦∨ with negated
/// children, (A⇒B)↦A∧No B, ∃↦∀, ∀↦∃ with negated body, ⊤↦⊥, ⊥↦⊤.
pub fn strong_negate(f: &Formula) -> Formula {
    match f {
        Formula::Top => Formula::Bottom,
        Formula::Bottom => Formula::Top,
        Formula::EqAtom(s, t) => Formula::NeqAtom(s.clone(), t.clone()),
        Formula::NeqAtom(s, t) => Formula::EqAtom(s.clone(), t.clone()),
        Formula::Or(a, b) => Formula::and(strong_negate(a), strong_negate(b)),
        Formula::And(a, b) => Formula::or(strong_negate(a), strong_negate(b)),
        Formula::Implies(a, b) => Formula::and((**a).clone(), strong_negate(b)),
        Formula::Exists(v, s, body) => {
            Formula::Forall(v.clone(), s.clone(), Box::new(strong_negate(body)))
        }
        Formula::Forall(v, s, body) => {
            Formula::Exists(v.clone(), s.clone(), Box::new(strong_negate(body)))
        }
    }
}

/// `A ⇛ B := (A ⇒ B) ∧ (No B ⇒ No A)`.
pub fn strong_implication(a: &Formula, b: &Formula) -> Formula {
    Formula::and(
        Formula::implies(a.clone(), b.clone()),
        Formula::implies(strong_negate(b), strong_negate(a)),
    )
}

/// A finite evaluation structure: named sorts interpreted by validated
/// carriers, plus named constants.
#[derive(Clone, Debug)]
pub struct FiniteStructure {
    sorts: BTreeMap<String, Arc<Carrier>>,
    consts: BTreeMap<String, (String, usize)>,
}

impl FiniteStructure {
    pub fn new() -> FiniteStructure {
        FiniteStructure {
            sorts: BTreeMap::new(),
            consts: BTreeMap::new(),
        }
    }

    pub fn with_sort(mut self, name: &str, carrier: Arc<Carrier>) -> FiniteStructure {
        self.sorts.insert(name.into(), carrier);
        self
    }

    pub fn with_const(mut self, name: &str, sort: &str, element: usize) -> FiniteStructure {
        self.consts.insert(name.into(), (sort.into(), element));
        self
    }

    pub fn sort(&self, name: &str) -> Result<&Arc<Carrier>, Error> {
        self.sorts
            .get(name)
            .ok_or_else(|| Error::UnknownSort(name.into()))
    }

    pub fn sorts(&self) -> impl Iterator<Item = (&String, &Arc<Carrier>)> {
        self.sorts.iter()
    }

    /// A structure is tight when every sort's inequality is tight (Ineq₃);
    /// with Ineq₁ this makes ≠ the classical complement of =.
    pub fn is_tight(&self) -> bool {
        self.sorts.values().all(|c| c.flags().tight)
    }

    fn constant(&self, name: &str) -> Result<(String, usize), Error> {
        self.consts
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownConstant(name.into()))
    }
}

impl Default for FiniteStructure {
    fn default() -> Self {
        Self::new()
    }
}

pub type Assignment = BTreeMap<String, (String, usize)>;

fn eval_term(
    t: &Term,
    st: &FiniteStructure,
    env: &Assignment,
) -> Result<(String, usize), Error> {
    match t {
        Term::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(v.clone())),
        Term::Const(c) => st.constant(c),
    }
}

/// Standard classical truth value; quantifiers range over the finite sort.
pub fn evaluate(f: &Formula, st: &FiniteStructure, env: &Assignment) -> Result<bool, Error> {
    fn atom(
        st: &FiniteStructure,
        env: &Assignment,
        s: &Term,
        t: &Term,
        want_eq: bool,
    ) -> Result<bool, Error> {
        let (sa, ia) = eval_term(s, st, env)?;
        let (sb, ib) = eval_term(t, st, env)?;
        if sa != sb {
            return Err(Error::Model(format!(
                "atom compares terms of different sorts {sa:?} and {sb:?}"
            )));
        }
        let c = st.sort(&sa)?;
        Ok(if want_eq {
            c.equal(ia, ib)
        } else {
            c.apart(ia, ib)
        })
    }
    match f {
        Formula::Top => Ok(true),
        Formula::Bottom => Ok(false),
        Formula::EqAtom(s, t) => atom(st, env, s, t, true),
        Formula::NeqAtom(s, t) => atom(st, env, s, t, false),
        Formula::And(a, b) => Ok(evaluate(a, st, env)? && evaluate(b, st, env)?),
        Formula::Or(a, b) => Ok(evaluate(a, st, env)? || evaluate(b, st, env)?),
        Formula::Implies(a, b) => Ok(!evaluate(a, st, env)? || evaluate(b, st, env)?),
        Formula::Forall(v, sort, body) => {
            let n = st.sort(sort)?.len();
            let mut env = env.clone();
            for i in 0..n {
                env.insert(v.clone(), (sort.clone(), i));
                if !evaluate(body, st, &env)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Exists(v, sort, body) => {
            let n = st.sort(sort)?.len();
            let mut env = env.clone();
            for i in 0..n {
                env.insert(v.clone(), (sort.clone(), i));
                if evaluate(body, st, &env)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => write!(w, "top"),
            Formula::Bottom => write!(w, "bottom"),
            Formula::EqAtom(s, t) => write!(w, "(eq {s} {t})"),
            Formula::NeqAtom(s, t) => write!(w, "(neq {s} {t})"),
            Formula::And(a, b) => write!(w, "(and {a} {b})"),
            Formula::Or(a, b) => write!(w, "(or {a} {b})"),
            Formula::Implies(a, b) => write!(w, "(implies {a} {b})"),
            Formula::Forall(v, s, body) => write!(w, "(forall {v} {s} {body})"),
            Formula::Exists(v, s, body) => write!(w, "(exists {v} {s} {body})"),
        }
    }
}

/// Parses the parenthesized text syntax, e.g. `(and (eq x c) (neq y d))`.
/// Identifiers bound by an enclosing quantifier are variables; all other
/// identifiers are constants. `(not f)` is sugar for `(implies f bottom)`.
pub fn parse(input: &str) -> Result<Formula, Error> {
    let tokens = tokenize(input)?;
    let mut pos = 0;
    let f = parse_formula(&tokens, &mut pos, &mut Vec::new())?;
    if pos != tokens.len() {
        return Err(Error::FormulaParse("trailing tokens".into()));
    }
    Ok(f)
}

fn tokenize(s: &str) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    if out.is_empty() {
        return Err(Error::FormulaParse("empty input".into()));
    }
    Ok(out)
}

fn parse_formula(
    tokens: &[String],
    pos: &mut usize,
    bound: &mut Vec<String>,
) -> Result<Formula, Error> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::FormulaParse("unexpected end of input".into()))?;
    if tok != "(" {
        *pos += 1;
        return match tok.as_str() {
            "top" => Ok(Formula::Top),
            "bottom" => Ok(Formula::Bottom),
            other => Err(Error::FormulaParse(format!("unexpected token {other:?}"))),
        };
    }
    *pos += 1;
    let head = tokens
        .get(*pos)
        .ok_or_else(|| Error::FormulaParse("unexpected end of input".into()))?
        .clone();
    *pos += 1;
    let f = match head.as_str() {
        "eq" | "neq" => {
            let s = parse_term(tokens, pos, bound)?;
            let t = parse_term(tokens, pos, bound)?;
            if head == "eq" {
                Formula::EqAtom(s, t)
            } else {
                Formula::NeqAtom(s, t)
            }
        }
        "and" | "or" | "implies" => {
            let a = parse_formula(tokens, pos, bound)?;
            let b = parse_formula(tokens, pos, bound)?;
            match head.as_str() {
                "and" => Formula::and(a, b),
                "or" => Formula::or(a, b),
                _ => Formula::implies(a, b),
            }
        }
        "not" => Formula::weak_not(parse_formula(tokens, pos, bound)?),
        "forall" | "exists" => {
            let v = next_ident(tokens, pos)?;
            let sort = next_ident(tokens, pos)?;
            bound.push(v.clone());
            let body = parse_formula(tokens, pos, bound)?;
            bound.pop();
            if head == "forall" {
                Formula::Forall(v, sort, Box::new(body))
            } else {
                Formula::Exists(v, sort, Box::new(body))
            }
        }
        other => return Err(Error::FormulaParse(format!("unknown form {other:?}"))),
    };
    match tokens.get(*pos) {
        Some(t) if t == ")" => {
            *pos += 1;
            Ok(f)
        }
        _ => Err(Error::FormulaParse("expected ')'".into())),
    }
}

fn next_ident(tokens: &[String], pos: &mut usize) -> Result<String, Error> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::FormulaParse("unexpected end of input".into()))?;
    if tok == "(" || tok == ")" {
        return Err(Error::FormulaParse("expected identifier".into()));
    }
    *pos += 1;
    Ok(tok.clone())
}

fn parse_term(tokens: &[String], pos: &mut usize, bound: &[String]) -> Result<Term, Error> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::FormulaParse("unexpected end of input".into()))?;
    if tok == "(" || tok == ")" {
        return Err(Error::FormulaParse("expected a term".into()));
    }
    *pos += 1;
    Ok(if bound.contains(&tok.to_string()) {
        Term::Var(tok.clone())
    } else {
        Term::Const(tok.clone())
    })
}
