use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Algebra, Signature};
use crate::error::{Error, Result};

/// A term over some signature: a variable `x_i` or an operation applied to
/// subterms.
///
/// Terms print as s-expressions, `(op arg1 arg2 …)`, with variables written
/// `x0, x1, …` and constants as `(c)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(op: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(op.into(), args)
    }

    pub fn constant(op: impl Into<String>) -> Term {
        Term::App(op.into(), Vec::new())
    }

    pub fn binary(op: &str, a: Term, b: Term) -> Term {
        Term::App(op.into(), alloc::vec![a, b])
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Number of variables the term needs: one past its largest index.
    pub fn var_count(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::App(_, args) => args.iter().map(Term::var_count).max().unwrap_or(0),
        }
    }

    /// Checks op names and arities against a signature.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        self.compile(sig).map(|_| ())
    }

    pub(crate) fn compile(&self, sig: &Signature) -> Result<Compiled> {
        Ok(match self {
            Term::Var(i) => Compiled::Var(*i),
            Term::App(name, args) => {
                let op = sig
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownOp(name.clone()))?;
                if sig.arity(op) != args.len() {
                    return Err(Error::ArityMismatch {
                        op: name.clone(),
                        expected: sig.arity(op),
                        found: args.len(),
                    });
                }
                let args = args
                    .iter()
                    .map(|a| a.compile(sig))
                    .collect::<Result<Vec<_>>>()?;
                Compiled::App(op, args.into_boxed_slice())
            }
        })
    }

    /// Evaluates the term with `x_i` bound to `env[i]`.
    pub fn eval(&self, alg: &Algebra, env: &[usize]) -> Result<usize> {
        if let Some((index, &value)) = env.iter().enumerate().find(|(_, &v)| v >= alg.size()) {
            return Err(Error::OutOfRange {
                index,
                value,
                bound: alg.size(),
            });
        }
        let compiled = self.compile(alg.signature())?;
        let vars = self.var_count();
        if vars > env.len() {
            return Err(Error::VariableOutOfRange {
                index: vars - 1,
                vars: env.len(),
            });
        }
        Ok(compiled.eval(alg, env))
    }

    /// The `k`-ary operation the term induces, as a flat table.
    pub fn table(&self, alg: &Algebra, k: usize) -> Result<Vec<usize>> {
        let vars = self.var_count();
        if vars > k {
            return Err(Error::VariableOutOfRange {
                index: vars - 1,
                vars: k,
            });
        }
        let compiled = self.compile(alg.signature())?;
        let mut out = Vec::with_capacity(alg.size().pow(k as u32));
        super::for_each_tuple(alg.size(), k, |env| out.push(compiled.eval(alg, env)));
        Ok(out)
    }

    /// Replaces every variable `x_i` by `subst[i]`.
    pub fn substitute(&self, subst: &[Term]) -> Term {
        match self {
            Term::Var(i) => subst[*i].clone(),
            Term::App(op, args) => Term::App(
                op.clone(),
                args.iter().map(|a| a.substitute(subst)).collect(),
            ),
        }
    }

    /// Parses the s-expression form. A bare atom of the shape `x<digits>` is a
    /// variable; any other bare atom is a constant.
    pub fn parse(text: &str) -> Result<Term> {
        let mut p = Parser { src: text, pos: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

/// A term with op names resolved to indices.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Var(usize),
    App(usize, Box<[Compiled]>),
}

impl Compiled {
    pub(crate) fn eval(&self, alg: &Algebra, env: &[usize]) -> usize {
        match self {
            Compiled::Var(i) => env[*i],
            Compiled::App(op, args) => {
                let mut vals = [0usize; 8];
                if args.len() <= vals.len() {
                    for (v, a) in vals.iter_mut().zip(args.iter()) {
                        *v = a.eval(alg, env);
                    }
                    alg.apply(*op, &vals[..args.len()])
                } else {
                    let vals: Vec<usize> = args.iter().map(|a| a.eval(alg, env)).collect();
                    alg.apply(*op, &vals)
                }
            }
        }
    }
}

fn var_index(atom: &str) -> Option<usize> {
    let digits = atom.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::TermSyntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn atom(&mut self) -> Result<&str> {
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected an atom"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.src[self.pos..].starts_with('(') {
            self.pos += 1;
            self.skip_ws();
            let op = self.atom()?.to_string();
            let mut args = Vec::new();
            loop {
                self.skip_ws();
                match self.src[self.pos..].chars().next() {
                    Some(')') => {
                        self.pos += 1;
                        return Ok(Term::App(op, args));
                    }
                    Some(_) => args.push(self.term()?),
                    None => return Err(self.error("unclosed parenthesis")),
                }
            }
        }
        if self.src[self.pos..].starts_with(')') {
            return Err(self.error("unexpected `)`"));
        }
        let atom = self.atom()?;
        Ok(match var_index(atom) {
            Some(i) => Term::Var(i),
            None => Term::App(atom.to_string(), Vec::new()),
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(op, args) => {
                write!(f, "({op}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cyclic_group, quasigroup_from_latin_square, LatinSquare};
    use alloc::vec;

    fn x(i: usize) -> Term {
        Term::var(i)
    }

    #[test]
    fn eval_variable() {
        let z3 = cyclic_group(3).unwrap();
        assert_eq!(x(0).eval(&z3, &[2]).unwrap(), 2);
    }

    #[test]
    fn group_maltsev_term() {
        let z3 = cyclic_group(3).unwrap();
        let t = Term::binary(
            "·",
            Term::binary("·", x(0), Term::app("inv", vec![x(1)])),
            x(2),
        );
        assert_eq!(t.eval(&z3, &[1, 1, 2]).unwrap(), 2);
    }

    #[test]
    fn quasigroup_term_collapses_on_y_eq_z() {
        let q = quasigroup_from_latin_square(&LatinSquare::cyclic(3)).unwrap();
        // (x/(y\y))·(y\z)
        let t = Term::binary(
            "·",
            Term::binary("/", x(0), Term::binary("\\", x(1), x(1))),
            Term::binary("\\", x(1), x(2)),
        );
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(t.eval(&q, &[a, b, b]).unwrap(), a);
            }
        }
    }

    #[test]
    fn eval_errors() {
        let z3 = cyclic_group(3).unwrap();
        assert!(matches!(
            Term::constant("nope").eval(&z3, &[]),
            Err(Error::UnknownOp(_))
        ));
        assert!(matches!(
            x(2).eval(&z3, &[0]),
            Err(Error::VariableOutOfRange { .. })
        ));
        assert!(matches!(
            Term::app("inv", vec![x(0), x(0)]).eval(&z3, &[0]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn parse_and_print() {
        let t = Term::parse("(· (/ x0 (\\ x1 x1)) (\\ x1 x2))").unwrap();
        assert_eq!(t.to_string(), "(· (/ x0 (\\ x1 x1)) (\\ x1 x2))");
        assert_eq!(Term::parse(" (e) ").unwrap(), Term::constant("e"));
        assert_eq!(Term::parse("e").unwrap(), Term::constant("e"));
        assert_eq!(Term::parse("x12").unwrap(), x(12));
        assert!(Term::parse("(· x0").is_err());
        assert!(Term::parse("x0 x1").is_err());
        assert!(Term::parse(")").is_err());
    }

    #[test]
    fn depth_and_vars() {
        let t = Term::parse("(m (m x0 x3) x1)").unwrap();
        assert_eq!(t.depth(), 2);
        assert_eq!(t.var_count(), 4);
    }
}
