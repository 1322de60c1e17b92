//! Formulas of the language with `□`, `◇` and the binary modality `▷`.
//!
//! The ASCII surface syntax is
//!
//! ```text
//! T  F  ~φ  φ & ψ  φ | ψ  φ -> ψ  []φ  <>φ  φ |> ψ  p0 p1 …
//! ```
//!
//! Binding strength, tightest first: the prefix operators `~ [] <>`, then
//! `&`, `|`, `|>`, `->`. Implication associates to the right, `&` and `|` to
//! the left, and `|>` does not associate at all: `p0 |> p1 |> p2` is
//! rejected.

mod parser;
mod schema;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use parser::parse;
pub use schema::{Schema, SCHEMA_NAMES};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Var(u32),
    Top,
    Bot,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
    Rhd(Box<Formula>, Box<Formula>),
}

use Formula as F;

impl Formula {
    pub fn var(index: u32) -> Self {
        F::Var(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Self {
        F::Neg(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        F::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        F::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        F::Imp(Box::new(a), Box::new(b))
    }

    pub fn boxed(a: Formula) -> Self {
        F::Box(Box::new(a))
    }

    pub fn dia(a: Formula) -> Self {
        F::Dia(Box::new(a))
    }

    pub fn rhd(a: Formula, b: Formula) -> Self {
        F::Rhd(Box::new(a), Box::new(b))
    }

    /// Conjunction of a list, `T` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(F::Top)
    }

    /// Indices of the variables occurring in the formula.
    pub fn variables(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<u32>) {
        match self {
            F::Var(i) => {
                out.insert(*i);
            }
            F::Top | F::Bot => {}
            F::Neg(a) | F::Box(a) | F::Dia(a) => a.collect_variables(out),
            F::And(a, b) | F::Or(a, b) | F::Imp(a, b) | F::Rhd(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    /// Modal and connective nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            F::Var(_) | F::Top | F::Bot => 0,
            F::Neg(a) | F::Box(a) | F::Dia(a) => 1 + a.depth(),
            F::And(a, b) | F::Or(a, b) | F::Imp(a, b) | F::Rhd(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            F::Var(_) | F::Top | F::Bot => 1,
            F::Neg(a) | F::Box(a) | F::Dia(a) => 1 + a.size(),
            F::And(a, b) | F::Or(a, b) | F::Imp(a, b) | F::Rhd(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn contains_rhd(&self) -> bool {
        match self {
            F::Var(_) | F::Top | F::Bot => false,
            F::Rhd(..) => true,
            F::Neg(a) | F::Box(a) | F::Dia(a) => a.contains_rhd(),
            F::And(a, b) | F::Or(a, b) | F::Imp(a, b) => a.contains_rhd() || b.contains_rhd(),
        }
    }

    pub fn contains_unary_modality(&self) -> bool {
        match self {
            F::Var(_) | F::Top | F::Bot => false,
            F::Box(_) | F::Dia(_) => true,
            F::Neg(a) => a.contains_unary_modality(),
            F::And(a, b) | F::Or(a, b) | F::Imp(a, b) | F::Rhd(a, b) => {
                a.contains_unary_modality() || b.contains_unary_modality()
            }
        }
    }

    /// Simultaneous substitution; variables without a binding are left alone.
    pub fn substitute(&self, map: &BTreeMap<u32, Formula>) -> Formula {
        let go = |f: &Formula| Box::new(f.substitute(map));
        match self {
            F::Var(i) => map.get(i).cloned().unwrap_or(F::Var(*i)),
            F::Top => F::Top,
            F::Bot => F::Bot,
            F::Neg(a) => F::Neg(go(a)),
            F::Box(a) => F::Box(go(a)),
            F::Dia(a) => F::Dia(go(a)),
            F::And(a, b) => F::And(go(a), go(b)),
            F::Or(a, b) => F::Or(go(a), go(b)),
            F::Imp(a, b) => F::Imp(go(a), go(b)),
            F::Rhd(a, b) => F::Rhd(go(a), go(b)),
        }
    }

    /// Rewrites `□ψ` as `¬ψ ▷ ⊥` and `◇ψ` as `¬(ψ ▷ ⊥)`, bottom-up.
    ///
    /// Over CL the two forms are equivalent (J1 gives one direction, J4 the
    /// other), so the result has the same truth set in every CL-space.
    pub fn box_as_rhd(&self) -> Formula {
        let go = |f: &Formula| Box::new(f.box_as_rhd());
        match self {
            F::Var(i) => F::Var(*i),
            F::Top => F::Top,
            F::Bot => F::Bot,
            F::Neg(a) => F::Neg(go(a)),
            F::Box(a) => Formula::rhd(Formula::neg(a.box_as_rhd()), F::Bot),
            F::Dia(a) => Formula::neg(Formula::rhd(a.box_as_rhd(), F::Bot)),
            F::And(a, b) => F::And(go(a), go(b)),
            F::Or(a, b) => F::Or(go(a), go(b)),
            F::Imp(a, b) => F::Imp(go(a), go(b)),
            F::Rhd(a, b) => F::Rhd(go(a), go(b)),
        }
    }

    /// Canonical text. Parentheses are minimal except that a `|>` directly
    /// under `->` is always bracketed, as in `(p0 |> p1) -> (p0 |> p2)`.
    pub fn render(&self) -> String {
        self.to_string()
    }

    fn precedence(&self) -> u8 {
        match self {
            F::Imp(..) => 1,
            F::Rhd(..) => 2,
            F::Or(..) => 3,
            F::And(..) => 4,
            F::Neg(_) | F::Box(_) | F::Dia(_) => 5,
            F::Var(_) | F::Top | F::Bot => 6,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            write!(f, "(")?;
        }
        match self {
            F::Var(i) => write!(f, "p{i}")?,
            F::Top => write!(f, "T")?,
            F::Bot => write!(f, "F")?,
            F::Neg(a) => {
                write!(f, "~")?;
                a.fmt_at(f, 5)?;
            }
            F::Box(a) => {
                write!(f, "[]")?;
                a.fmt_at(f, 5)?;
            }
            F::Dia(a) => {
                write!(f, "<>")?;
                a.fmt_at(f, 5)?;
            }
            F::And(a, b) => {
                a.fmt_at(f, 4)?;
                write!(f, " & ")?;
                b.fmt_at(f, 5)?;
            }
            F::Or(a, b) => {
                a.fmt_at(f, 3)?;
                write!(f, " | ")?;
                b.fmt_at(f, 4)?;
            }
            F::Rhd(a, b) => {
                a.fmt_at(f, 3)?;
                write!(f, " |> ")?;
                b.fmt_at(f, 3)?;
            }
            F::Imp(a, b) => {
                let side = |g: &Formula, min: u8| if matches!(g, F::Rhd(..)) { 3 } else { min };
                a.fmt_at(f, side(a, 2))?;
                write!(f, " -> ")?;
                b.fmt_at(f, side(b, 1))?;
            }
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// The first `n + 1` members of the Fine–Rautenberg family:
/// `◇p0, □(p0 → ◇p1), …, □(p(n-1) → ◇pn)`.
pub fn delta_family(n: usize) -> Vec<Formula> {
    let mut out = vec![Formula::dia(F::Var(0))];
    for i in 0..n as u32 {
        out.push(Formula::boxed(Formula::imp(
            F::Var(i),
            Formula::dia(F::Var(i + 1)),
        )));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> Formula {
        F::Var(i)
    }

    #[test]
    fn render_examples() {
        assert_eq!(F::Top.render(), "T");
        assert_eq!(Formula::rhd(Formula::dia(p(0)), p(0)).render(), "<>p0 |> p0");
        assert_eq!(
            Formula::imp(p(0), Formula::imp(p(1), p(2))).render(),
            "p0 -> p1 -> p2"
        );
        assert_eq!(
            Formula::imp(Formula::imp(p(0), p(1)), p(2)).render(),
            "(p0 -> p1) -> p2"
        );
        assert_eq!(
            Formula::rhd(Formula::rhd(p(0), p(1)), p(2)).render(),
            "(p0 |> p1) |> p2"
        );
        assert_eq!(
            Formula::and(p(0), Formula::and(p(1), p(2))).render(),
            "p0 & (p1 & p2)"
        );
        assert_eq!(Formula::neg(Formula::neg(p(3))).render(), "~~p3");
        assert_eq!(
            Formula::boxed(Formula::or(p(0), F::Bot)).render(),
            "[](p0 | F)"
        );
    }

    #[test]
    fn box_as_rhd_examples() {
        assert_eq!(
            Formula::boxed(p(0)).box_as_rhd(),
            Formula::rhd(Formula::neg(p(0)), F::Bot)
        );
        assert_eq!(p(0).box_as_rhd(), p(0));
        assert_eq!(
            Formula::dia(p(0)).box_as_rhd(),
            Formula::neg(Formula::rhd(p(0), F::Bot))
        );
        let nested = parse("[]<>p0 -> (p1 |> []p2)").unwrap().box_as_rhd();
        assert!(!nested.contains_unary_modality());
    }

    #[test]
    fn delta_examples() {
        let render = |n| -> Vec<String> { delta_family(n).iter().map(Formula::render).collect() };
        assert_eq!(render(0), vec!["<>p0"]);
        assert_eq!(render(1), vec!["<>p0", "[](p0 -> <>p1)"]);
        let d2 = render(2);
        assert_eq!(d2.len(), 3);
        assert_eq!(d2[2], "[](p1 -> <>p2)");
    }

    #[test]
    fn variables_and_depth() {
        let f = parse("[](p3 -> p1) |> ~p3").unwrap();
        assert_eq!(f.variables().into_iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(f.depth(), 3);
        assert_eq!(f.size(), 7);
        assert!(f.contains_rhd());
    }
}
