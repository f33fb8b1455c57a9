//! Formula AST, parser, and printer.
//!
//! The surface syntax is ASCII-first with Unicode aliases accepted on
//! input:
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?            right-associative
//! or      := and ("\/" and)*           left-associative
//! and     := unary ("&" unary)*        left-associative
//! unary   := ("~" | "[]" | "<>") unary | atom | "bot" | "top" | "(" formula ")"
//! ```
//!
//! Precedence from tightest to loosest: prefix operators, `&`, `\/`,
//! `->`. Accepted aliases: `¬` for `~`, `∧` for `&`, `∨` for `\/`,
//! `→` for `->`, `□` for `[]`, `◇`/`◊` for `<>`, `⊥` for `bot`,
//! `⊤` for `top`.
//!
//! Disjunction and the diamond are kept as AST nodes so printing
//! round-trips, but they are definable: `a \/ b` abbreviates
//! `~(~a & ~b)` and `<>a` abbreviates `~[]~a`. [`Formula::desugar`]
//! performs that rewriting when a negation-normal core is needed.
//!
//! Whether an atom counts as *Boolean* (interpreted in a designated
//! Boolean subalgebra) is not part of the AST; it is decided against a
//! declared set of Boolean atom names, so the same formula can be
//! classified differently in different signatures.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A formula of the conditional epistemic language.
///
/// `Bot` and `Top` are primitive constants; the definable connectives
/// (`Or`, `Diamond`) are retained structurally so that parsing and
/// printing are mutually inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// The falsum constant.
    Bot,
    /// The verum constant.
    Top,
    /// A propositional atom; Boolean-ness is relative to a declared name set.
    Atom(String),
    /// Orthonegation.
    Neg(Box<Formula>),
    /// Conjunction (meet).
    And(Box<Formula>, Box<Formula>),
    /// Disjunction (join); definable as `~(~a & ~b)`.
    Or(Box<Formula>, Box<Formula>),
    /// The epistemic necessity modal (`[]`).
    Box(Box<Formula>),
    /// The epistemic possibility modal (`<>`); definable as `~[]~a`.
    Diamond(Box<Formula>),
    /// The conditional (`->`).
    Imp(Box<Formula>, Box<Formula>),
}

/// Which sublanguage a formula belongs to, relative to a set of
/// declared Boolean atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FragmentTag {
    /// No modals, no conditionals, and every atom is a declared Boolean atom.
    Boolean,
    /// No conditionals; modals or non-Boolean atoms may occur.
    Modal,
    /// At least one conditional occurs.
    Conditional,
}

impl Formula {
    /// Atom constructor taking anything stringy.
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    /// Negation of `self`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Formula::Neg(Box::new(self))
    }

    /// Conjunction of `self` with `other`.
    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    /// Disjunction of `self` with `other`.
    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    /// `[] self`.
    pub fn boxed(self) -> Self {
        Formula::Box(Box::new(self))
    }

    /// `<> self`.
    pub fn diamond(self) -> Self {
        Formula::Diamond(Box::new(self))
    }

    /// Conditional from `self` to `other`.
    pub fn imp(self, other: Formula) -> Self {
        Formula::Imp(Box::new(self), Box::new(other))
    }

    /// Parse a formula from the surface syntax.
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        Parser::new(input)?.parse_whole()
    }

    /// Rewrite `Or` and `Diamond` into their definitions
    /// (`~(~a & ~b)` and `~[]~a`), leaving everything else intact.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Bot | Formula::Top | Formula::Atom(_) => self.clone(),
            Formula::Neg(a) => a.desugar().neg(),
            Formula::And(a, b) => a.desugar().and(b.desugar()),
            Formula::Or(a, b) => a.desugar().neg().and(b.desugar().neg()).neg(),
            Formula::Box(a) => a.desugar().boxed(),
            Formula::Diamond(a) => a.desugar().neg().boxed().neg(),
            Formula::Imp(a, b) => a.desugar().imp(b.desugar()),
        }
    }

    /// True if the formula contains no `[]`, `<>`, or `->` and all of
    /// its atoms are in `bool_atoms`.
    pub fn is_boolean(&self, bool_atoms: &BTreeSet<String>) -> bool {
        match self {
            Formula::Bot | Formula::Top => true,
            Formula::Atom(name) => bool_atoms.contains(name),
            Formula::Neg(a) => a.is_boolean(bool_atoms),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.is_boolean(bool_atoms) && b.is_boolean(bool_atoms)
            }
            Formula::Box(_) | Formula::Diamond(_) | Formula::Imp(_, _) => false,
        }
    }

    /// Classify the formula relative to a declared Boolean atom set.
    pub fn fragment(&self, bool_atoms: &BTreeSet<String>) -> FragmentTag {
        if self.has_conditional() {
            FragmentTag::Conditional
        } else if self.is_boolean(bool_atoms) {
            FragmentTag::Boolean
        } else {
            FragmentTag::Modal
        }
    }

    fn has_conditional(&self) -> bool {
        match self {
            Formula::Bot | Formula::Top | Formula::Atom(_) => false,
            Formula::Neg(a) | Formula::Box(a) | Formula::Diamond(a) => a.has_conditional(),
            Formula::And(a, b) | Formula::Or(a, b) => a.has_conditional() || b.has_conditional(),
            Formula::Imp(_, _) => true,
        }
    }

    /// All distinct subformulas, children strictly before parents; the
    /// last entry is the formula itself.
    pub fn subformula_closure(&self) -> Vec<Formula> {
        let mut seen: BTreeSet<Formula> = BTreeSet::new();
        let mut out = Vec::new();
        self.closure_into(&mut seen, &mut out);
        out
    }

    fn closure_into(&self, seen: &mut BTreeSet<Formula>, out: &mut Vec<Formula>) {
        match self {
            Formula::Bot | Formula::Top | Formula::Atom(_) => {}
            Formula::Neg(a) | Formula::Box(a) | Formula::Diamond(a) => {
                a.closure_into(seen, out);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.closure_into(seen, out);
                b.closure_into(seen, out);
            }
        }
        if seen.insert(self.clone()) {
            out.push(self.clone());
        }
    }

    /// The atom names occurring in the formula, in sorted order.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set
    }

    fn collect_atoms(&self, set: &mut BTreeSet<String>) {
        match self {
            Formula::Bot | Formula::Top => {}
            Formula::Atom(name) => {
                set.insert(name.clone());
            }
            Formula::Neg(a) | Formula::Box(a) | Formula::Diamond(a) => a.collect_atoms(set),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(set);
                b.collect_atoms(set);
            }
        }
    }

    /// Simultaneously replace atoms by formulas. Atoms missing from the
    /// map are left alone.
    pub fn substitute(&self, map: &alloc::collections::BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Bot | Formula::Top => self.clone(),
            Formula::Atom(name) => map.get(name).cloned().unwrap_or_else(|| self.clone()),
            Formula::Neg(a) => a.substitute(map).neg(),
            Formula::And(a, b) => a.substitute(map).and(b.substitute(map)),
            Formula::Or(a, b) => a.substitute(map).or(b.substitute(map)),
            Formula::Box(a) => a.substitute(map).boxed(),
            Formula::Diamond(a) => a.substitute(map).diamond(),
            Formula::Imp(a, b) => a.substitute(map).imp(b.substitute(map)),
        }
    }

    /// Binding strength used by the printer; higher binds tighter.
    fn level(&self) -> u8 {
        match self {
            Formula::Imp(_, _) => 1,
            Formula::Or(_, _) => 2,
            Formula::And(_, _) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        let needs_parens = self.level() < min_level;
        if needs_parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Bot => write!(f, "bot")?,
            Formula::Top => write!(f, "top")?,
            Formula::Atom(name) => write!(f, "{name}")?,
            Formula::Neg(a) => {
                write!(f, "~")?;
                a.fmt_at(f, 4)?;
            }
            Formula::Box(a) => {
                write!(f, "[]")?;
                a.fmt_at(f, 4)?;
            }
            Formula::Diamond(a) => {
                write!(f, "<>")?;
                a.fmt_at(f, 4)?;
            }
            Formula::And(a, b) => {
                a.fmt_at(f, 3)?;
                write!(f, " & ")?;
                b.fmt_at(f, 4)?;
            }
            Formula::Or(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, " \\/ ")?;
                b.fmt_at(f, 3)?;
            }
            Formula::Imp(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, " -> ")?;
                b.fmt_at(f, 1)?;
            }
        }
        if needs_parens {
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

/// Error from [`Formula::parse`], with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset at which the problem was detected.
    pub offset: usize,
    /// Human-readable description.
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Neg,
    And,
    Or,
    Imp,
    Box,
    Diamond,
    Bot,
    Top,
    LParen,
    RParen,
    Ident(String),
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Self, ParseError> {
        let tokens = tokenize(input)?;
        Ok(Parser {
            tokens,
            pos: 0,
            end: input.len(),
        })
    }

    fn parse_whole(mut self) -> Result<Formula, ParseError> {
        let formula = self.parse_imp()?;
        match self.tokens.get(self.pos) {
            None => Ok(formula),
            Some((offset, token)) => Err(ParseError {
                offset: *offset,
                message: alloc::format!("unexpected {token:?} after complete formula"),
            }),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn parse_imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_or()?;
        if self.peek() == Some(&Token::Imp) {
            self.bump();
            let rhs = self.parse_imp()?;
            Ok(lhs.imp(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_and()?;
        while self.peek() == Some(&Token::Or) {
            self.bump();
            let rhs = self.parse_and()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_unary()?;
        while self.peek() == Some(&Token::And) {
            self.bump();
            let rhs = self.parse_unary()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.here();
        match self.bump() {
            Some(Token::Neg) => Ok(self.parse_unary()?.neg()),
            Some(Token::Box) => Ok(self.parse_unary()?.boxed()),
            Some(Token::Diamond) => Ok(self.parse_unary()?.diamond()),
            Some(Token::Bot) => Ok(Formula::Bot),
            Some(Token::Top) => Ok(Formula::Top),
            Some(Token::Ident(name)) => Ok(Formula::Atom(name)),
            Some(Token::LParen) => {
                let inner = self.parse_imp()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ParseError {
                        offset: self.here(),
                        message: "expected ')'".to_owned(),
                    }),
                }
            }
            other => Err(ParseError {
                offset,
                message: alloc::format!("expected a formula, found {other:?}"),
            }),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let bytes = input.as_bytes();
    let mut chars = input.char_indices().peekable();
    while let Some((offset, c)) = chars.next() {
        let token = match c {
            c if c.is_whitespace() => continue,
            '~' | '¬' => Token::Neg,
            '&' | '∧' => Token::And,
            '∨' => Token::Or,
            '→' => Token::Imp,
            '□' => Token::Box,
            '◇' | '◊' => Token::Diamond,
            '⊥' => Token::Bot,
            '⊤' => Token::Top,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '\\' => {
                if chars.next_if(|&(_, c)| c == '/').is_some() {
                    Token::Or
                } else {
                    return Err(ParseError {
                        offset,
                        message: "expected '/' after '\\'".to_owned(),
                    });
                }
            }
            '-' => {
                if chars.next_if(|&(_, c)| c == '>').is_some() {
                    Token::Imp
                } else {
                    return Err(ParseError {
                        offset,
                        message: "expected '>' after '-'".to_owned(),
                    });
                }
            }
            '[' => {
                if chars.next_if(|&(_, c)| c == ']').is_some() {
                    Token::Box
                } else {
                    return Err(ParseError {
                        offset,
                        message: "expected ']' after '['".to_owned(),
                    });
                }
            }
            '<' => {
                if chars.next_if(|&(_, c)| c == '>').is_some() {
                    Token::Diamond
                } else {
                    return Err(ParseError {
                        offset,
                        message: "expected '>' after '<'".to_owned(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = offset + c.len_utf8();
                while let Some(&(next, nc)) = chars.peek() {
                    if nc.is_ascii_alphanumeric() || nc == '_' {
                        chars.next();
                        end = next + nc.len_utf8();
                    } else {
                        break;
                    }
                }
                let name = core::str::from_utf8(&bytes[offset..end]).expect("ascii ident");
                match name {
                    "bot" => Token::Bot,
                    "top" => Token::Top,
                    _ => Token::Ident(name.to_owned()),
                }
            }
            other => {
                return Err(ParseError {
                    offset,
                    message: alloc::format!("unexpected character {other:?}"),
                })
            }
        };
        tokens.push((offset, token));
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn precedence_matches_grammar() {
        let parsed = Formula::parse("~p & q \\/ r -> s").unwrap();
        let expected = p().neg().and(q()).or(Formula::atom("r")).imp(Formula::atom("s"));
        assert_eq!(parsed, expected);
    }

    #[test]
    fn imp_is_right_associative() {
        let parsed = Formula::parse("p -> q -> r").unwrap();
        assert_eq!(parsed, p().imp(q().imp(Formula::atom("r"))));
    }

    #[test]
    fn unicode_aliases_parse() {
        assert_eq!(Formula::parse("◇p ∧ ◇¬p").unwrap(), Formula::parse("<>p & <>~p").unwrap());
        assert_eq!(Formula::parse("□(p → ⊥) ∨ ⊤").unwrap(), Formula::parse("[](p -> bot) \\/ top").unwrap());
    }

    #[test]
    fn display_round_trips() {
        let samples = [
            "p",
            "~~p",
            "p & q & r",
            "p \\/ (q & ~r)",
            "(p -> q) -> r",
            "[](p \\/ q) -> <>~p",
            "~(p & (q \\/ r))",
            "bot \\/ top",
        ];
        for text in samples {
            let f = Formula::parse(text).unwrap();
            let printed = alloc::format!("{f}");
            assert_eq!(Formula::parse(&printed).unwrap(), f, "round-trip of {text} via {printed}");
        }
    }

    #[test]
    fn closure_puts_children_first() {
        let f = Formula::parse("<>p & <>~p").unwrap();
        let closure = f.subformula_closure();
        assert_eq!(*closure.last().unwrap(), f);
        for (i, g) in closure.iter().enumerate() {
            for h in g.subformula_closure() {
                if h != *g {
                    let j = closure.iter().position(|x| *x == h).unwrap();
                    assert!(j < i, "{h} should precede {g}");
                }
            }
        }
    }

    #[test]
    fn boolean_fragment_is_relative_to_declared_atoms() {
        let f = Formula::parse("a & ~(b \\/ a)").unwrap();
        let mut bools: BTreeSet<String> = ["a", "b"].iter().map(|s| String::from(*s)).collect();
        assert_eq!(f.fragment(&bools), FragmentTag::Boolean);
        bools.remove("b");
        assert_eq!(f.fragment(&bools), FragmentTag::Modal);
        assert_eq!(Formula::parse("a -> b").unwrap().fragment(&bools), FragmentTag::Conditional);
        assert_eq!(Formula::parse("[]a").unwrap().fragment(&bools), FragmentTag::Modal);
    }

    #[test]
    fn desugar_eliminates_or_and_diamond() {
        let f = Formula::parse("<>p \\/ q").unwrap();
        let expected = p().neg().boxed().neg().neg().and(q().neg()).neg();
        assert_eq!(f.desugar(), expected);
    }
}
