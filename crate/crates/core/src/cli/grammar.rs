//! Germ description files.
//!
//! ```text
//! frontal-kernel v1;
//! ring x, y;
//! target X, Y, Z;
//! weights x = 1, y = 2;
//! map f = x, y^2, x*y^3;
//! map g = [x, 0] | [0, x];
//! unfold F of f params t: x, y^2, x*y^3 + t*y;
//! good_equation F = Z^2 - X^2*Y^3;
//! assert_frontal_stable F;
//! analyze f: frontal, image, mu;
//! ```
//!
//! Statements end with `;`. `ring` and `target` set the current source and
//! target coordinates for the maps that follow. The header is optional; when
//! present it must name version 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::germ::{default_target_names, MapGerm};
use crate::invariants::UnfoldingSpec;
use crate::ring::parse::{tokenize, Cursor, TokenKind};
use crate::ring::{MonomialOrder, Poly, Rational, Ring};

pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Directive {
    Frontal,
    Wavefront,
    Image,
    Mu,
    Curve,
    HatM,
    Genfam,
    Derlog,
    Siersma,
    GoodEquation,
    MF,
    CodimFe,
    Samuel,
    All,
}

impl Directive {
    pub const ALL: [Directive; 14] = [
        Directive::Frontal,
        Directive::Wavefront,
        Directive::Image,
        Directive::Mu,
        Directive::Curve,
        Directive::HatM,
        Directive::Genfam,
        Directive::Derlog,
        Directive::Siersma,
        Directive::GoodEquation,
        Directive::MF,
        Directive::CodimFe,
        Directive::Samuel,
        Directive::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Directive::Frontal => "frontal",
            Directive::Wavefront => "wavefront",
            Directive::Image => "image",
            Directive::Mu => "mu",
            Directive::Curve => "curve",
            Directive::HatM => "hat_M",
            Directive::Genfam => "genfam",
            Directive::Derlog => "derlog",
            Directive::Siersma => "siersma",
            Directive::GoodEquation => "good_equation",
            Directive::MF => "M_F",
            Directive::CodimFe => "codim_Fe",
            Directive::Samuel => "samuel",
            Directive::All => "all",
        }
    }
}

impl FromStr for Directive {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        Directive::ALL.iter().copied().find(|d| d.as_str() == s).ok_or(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Ring(Vec<String>),
    Target(Vec<String>),
    Weights(Vec<(String, Rational)>),
    Map { name: String, germ: MapGerm },
    /// `f_u` per branch over the base source variables followed by `params`.
    Unfold { name: String, base: String, params: Vec<String>, branches: Vec<Vec<Poly>> },
    GoodEquation { unfolding: String, equation: Poly },
    AssertFrontalStable(String),
    Analyze { target: String, directives: Vec<Directive> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermFile {
    pub version: u32,
    pub statements: Vec<Statement>,
}

struct Scope {
    ring: Option<Ring>,
    target: Option<Vec<String>>,
}

impl GermFile {
    pub fn parse(text: &str) -> Result<GermFile> {
        let toks = tokenize(text)?;
        let mut cur = Cursor::new(&toks);
        let mut version = VERSION;
        if matches!(&cur.peek().kind, TokenKind::Ident(s) if s == "frontal") && cur.peek_at(1).is_sym('-') {
            cur.next();
            cur.next();
            if !cur.eat_keyword("kernel") {
                return Err(cur.error("expected `frontal-kernel v1;` header"));
            }
            let (v, line, col) = cur.expect_ident()?;
            version = v
                .strip_prefix('v')
                .and_then(|d| d.parse().ok())
                .ok_or(Error::Syntax { line, col, msg: format!("bad version tag `{v}`") })?;
            if version != VERSION {
                return Err(Error::Syntax { line, col, msg: format!("unsupported version {version}") });
            }
            cur.expect_sym(';')?;
        }
        let mut scope = Scope { ring: None, target: None };
        let mut file = GermFile { version, statements: Vec::new() };
        while !cur.at_eof() {
            let st = file.statement(&mut cur, &mut scope)?;
            cur.expect_sym(';')?;
            file.statements.push(st);
        }
        Ok(file)
    }

    fn statement(&self, cur: &mut Cursor, scope: &mut Scope) -> Result<Statement> {
        let (kw, line, col) = cur.expect_ident()?;
        match kw.as_str() {
            "ring" => {
                let vars = ident_list(cur)?;
                let ring = Ring::new(&vars, MonomialOrder::GlobalDegRevLex)
                    .map_err(|e| Error::Syntax { line, col, msg: e.to_string() })?;
                scope.ring = Some(ring);
                Ok(Statement::Ring(vars))
            }
            "target" => {
                let vars = ident_list(cur)?;
                scope.target = Some(vars.clone());
                Ok(Statement::Target(vars))
            }
            "weights" => {
                let ring = scope.ring.clone().ok_or(Error::Syntax { line, col, msg: "weights before ring".into() })?;
                let mut ws = Vec::new();
                loop {
                    let (name, l, c) = cur.expect_ident()?;
                    if ring.var_index(&name).is_none() {
                        return Err(Error::Undeclared { name, line: l, col: c });
                    }
                    cur.expect_sym('=')?;
                    ws.push((name, rational(cur)?));
                    if !cur.eat_sym(',') {
                        break;
                    }
                }
                let mut full: Vec<Rational> = vec![Rational::from_integer(1.into()); ring.nvars()];
                for (name, w) in &ws {
                    full[ring.var_index(name).expect("checked")] = w.clone();
                }
                let weighted =
                    ring.with_weights(full).map_err(|e| Error::Syntax { line, col, msg: e.to_string() })?;
                scope.ring = Some(weighted);
                Ok(Statement::Weights(ws))
            }
            "map" => {
                let (name, ..) = cur.expect_ident()?;
                self.check_fresh(&name, line, col)?;
                cur.expect_sym('=')?;
                let ring = scope.ring.clone().ok_or(Error::Syntax { line, col, msg: "map before ring".into() })?;
                let branches = branch_list(cur, &ring)?;
                let m = branches[0].len();
                let names = match &scope.target {
                    Some(t) => t.clone(),
                    None => default_target_names(m),
                };
                for b in &branches {
                    if b.len() != names.len() {
                        return Err(Error::Arity { expected: names.len(), found: b.len() });
                    }
                }
                if let Some(i) = (0..names.len()).find(|&i| branches.iter().all(|b| b[i].is_zero())) {
                    return Err(Error::Syntax {
                        line,
                        col,
                        msg: format!("component {} of `{name}` is identically zero", i + 1),
                    });
                }
                let target = Ring::new(&names, MonomialOrder::GlobalDegRevLex)
                    .map_err(|e| Error::Syntax { line, col, msg: e.to_string() })?;
                let germ =
                    MapGerm::new(&ring, &target, branches).map_err(|e| Error::Syntax { line, col, msg: e.to_string() })?;
                Ok(Statement::Map { name, germ })
            }
            "unfold" => {
                let (name, ..) = cur.expect_ident()?;
                self.check_fresh(&name, line, col)?;
                if !cur.eat_keyword("of") {
                    return Err(cur.error("expected `of`"));
                }
                let (base, bl, bc) = cur.expect_ident()?;
                let germ = self.map(&base).ok_or(Error::Undeclared { name: base.clone(), line: bl, col: bc })?;
                if !cur.eat_keyword("params") {
                    return Err(cur.error("expected `params`"));
                }
                let params = ident_list(cur)?;
                cur.expect_sym(':')?;
                let ring = germ
                    .source()
                    .extend(&params, MonomialOrder::GlobalDegRevLex)
                    .map_err(|e| Error::Syntax { line, col, msg: e.to_string() })?;
                germ.target()
                    .extend(&params, MonomialOrder::GlobalDegRevLex)
                    .map_err(|e| Error::Syntax { line, col, msg: e.to_string() })?;
                let branches = branch_list(cur, &ring)?;
                UnfoldingSpec::new(germ, &params, branches.clone())
                    .map_err(|e| Error::Syntax { line, col, msg: e.to_string() })?;
                Ok(Statement::Unfold { name, base, params, branches })
            }
            "good_equation" => {
                let (u, ul, uc) = cur.expect_ident()?;
                let spec = self.unfolding_spec(&u).map_err(|_| Error::Undeclared { name: u.clone(), line: ul, col: uc })?;
                cur.expect_sym('=')?;
                let equation = cur.expr(&spec.map().target().to_global())?;
                Ok(Statement::GoodEquation { unfolding: u, equation })
            }
            "assert_frontal_stable" => {
                let (u, ul, uc) = cur.expect_ident()?;
                if self.unfold_statement(&u).is_none() {
                    return Err(Error::Undeclared { name: u, line: ul, col: uc });
                }
                Ok(Statement::AssertFrontalStable(u))
            }
            "analyze" => {
                let (target, tl, tc) = cur.expect_ident()?;
                if self.map(&target).is_none() && self.unfold_statement(&target).is_none() {
                    return Err(Error::Undeclared { name: target, line: tl, col: tc });
                }
                let mut directives = Vec::new();
                if cur.eat_sym(':') {
                    loop {
                        let (d, dl, dc) = cur.expect_ident()?;
                        let d = d.parse::<Directive>().map_err(|_| Error::Syntax {
                            line: dl,
                            col: dc,
                            msg: format!("unknown directive `{d}`"),
                        })?;
                        directives.push(d);
                        if !cur.eat_sym(',') {
                            break;
                        }
                    }
                }
                Ok(Statement::Analyze { target, directives })
            }
            other => Err(Error::Syntax { line, col, msg: format!("unknown statement `{other}`") }),
        }
    }

    fn check_fresh(&self, name: &str, line: usize, col: usize) -> Result<()> {
        if self.map(name).is_some() || self.unfold_statement(name).is_some() {
            return Err(Error::Syntax { line, col, msg: format!("`{name}` is already defined") });
        }
        Ok(())
    }

    pub fn map(&self, name: &str) -> Option<&MapGerm> {
        self.statements.iter().find_map(|s| match s {
            Statement::Map { name: n, germ } if n == name => Some(germ),
            _ => None,
        })
    }

    fn unfold_statement(&self, name: &str) -> Option<&Statement> {
        self.statements.iter().find(|s| matches!(s, Statement::Unfold { name: n, .. } if n == name))
    }

    /// Names of the unfoldings of map `base`, in declaration order.
    pub fn unfoldings_of(&self, base: &str) -> Vec<&str> {
        self.statements
            .iter()
            .filter_map(|s| match s {
                Statement::Unfold { name, base: b, .. } if b == base => Some(name.as_str()),
                _ => None,
            })
            .collect()
    }

    /// Base map of an unfolding.
    pub fn base_of(&self, unfolding: &str) -> Option<&str> {
        match self.unfold_statement(unfolding)? {
            Statement::Unfold { base, .. } => Some(base),
            _ => None,
        }
    }

    /// The unfolding with its declared equation and assertions applied.
    pub fn unfolding_spec(&self, name: &str) -> Result<UnfoldingSpec> {
        let Some(Statement::Unfold { base, params, branches, .. }) = self.unfold_statement(name) else {
            return Err(Error::precondition(format!("no unfolding named `{name}`")));
        };
        let germ = self.map(base).ok_or_else(|| Error::precondition(format!("no map named `{base}`")))?;
        let mut spec = UnfoldingSpec::new(germ, params, branches.clone())?;
        for s in &self.statements {
            match s {
                Statement::GoodEquation { unfolding, equation } if unfolding == name => {
                    spec = spec.with_equation(equation.clone())?;
                }
                Statement::AssertFrontalStable(u) if u == name => spec = spec.assert_frontal_stable(),
                _ => {}
            }
        }
        Ok(spec)
    }

    pub fn analyses(&self) -> impl Iterator<Item = (&str, &[Directive])> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Analyze { target, directives } => Some((target.as_str(), directives.as_slice())),
            _ => None,
        })
    }
}

fn ident_list(cur: &mut Cursor) -> Result<Vec<String>> {
    let mut out = vec![cur.expect_ident()?.0];
    while cur.eat_sym(',') {
        out.push(cur.expect_ident()?.0);
    }
    Ok(out)
}

fn rational(cur: &mut Cursor) -> Result<Rational> {
    let int = |cur: &mut Cursor| -> Result<num_bigint::BigInt> {
        let t = cur.next();
        match t.kind {
            TokenKind::Int(n) => Ok(n),
            _ => Err(Error::Syntax { line: t.line, col: t.col, msg: format!("expected integer, found {}", t.describe()) }),
        }
    };
    let n = int(cur)?;
    let d = if cur.eat_sym('/') { int(cur)? } else { 1.into() };
    if d == 0.into() {
        return Err(cur.error("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn expr_list(cur: &mut Cursor, ring: &Ring) -> Result<Vec<Poly>> {
    let mut out = vec![cur.expr(ring)?];
    while cur.eat_sym(',') {
        out.push(cur.expr(ring)?);
    }
    Ok(out)
}

fn branch_list(cur: &mut Cursor, ring: &Ring) -> Result<Vec<Vec<Poly>>> {
    if !cur.peek().is_sym('[') {
        return Ok(vec![expr_list(cur, ring)?]);
    }
    let mut out = Vec::new();
    loop {
        cur.expect_sym('[')?;
        out.push(expr_list(cur, ring)?);
        cur.expect_sym(']')?;
        if !cur.eat_sym('|') {
            return Ok(out);
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

fn fmt_branches(f: &mut fmt::Formatter<'_>, branches: &[Vec<Poly>]) -> fmt::Result {
    if branches.len() == 1 {
        return write!(f, "{}", join(&branches[0]));
    }
    let parts: Vec<String> = branches.iter().map(|b| format!("[{}]", join(b))).collect();
    write!(f, "{}", parts.join(" | "))
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ring(v) => write!(f, "ring {};", v.join(", ")),
            Statement::Target(v) => write!(f, "target {};", v.join(", ")),
            Statement::Weights(ws) => {
                let parts: Vec<String> = ws.iter().map(|(n, w)| format!("{n} = {w}")).collect();
                write!(f, "weights {};", parts.join(", "))
            }
            Statement::Map { name, germ } => {
                write!(f, "map {name} = ")?;
                fmt_branches(f, germ.branches())?;
                write!(f, ";")
            }
            Statement::Unfold { name, base, params, branches } => {
                write!(f, "unfold {name} of {base} params {}: ", params.join(", "))?;
                fmt_branches(f, branches)?;
                write!(f, ";")
            }
            Statement::GoodEquation { unfolding, equation } => write!(f, "good_equation {unfolding} = {equation};"),
            Statement::AssertFrontalStable(u) => write!(f, "assert_frontal_stable {u};"),
            Statement::Analyze { target, directives } => {
                write!(f, "analyze {target}")?;
                if !directives.is_empty() {
                    let ds: Vec<&str> = directives.iter().map(|d| d.as_str()).collect();
                    write!(f, ": {}", ds.join(", "))?;
                }
                write!(f, ";")
            }
        }
    }
}

impl fmt::Display for GermFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "frontal-kernel v{};", self.version)?;
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let f = GermFile::parse("ring x; map f = x^3, x^4;").unwrap();
        let g = f.map("f").unwrap();
        assert_eq!(g.branch(0)[0].to_string(), "x^3");
        assert_eq!(g.target().names(), &["y1".to_string(), "y2".to_string()]);
    }

    #[test]
    fn folded_umbrella_and_unfolding() {
        let text = "frontal-kernel v1;\nring x, y;\nmap f = x, y^2, x*y^3;\n";
        let f = GermFile::parse(text).unwrap();
        assert_eq!(f.map("f").unwrap().target().names()[2], "Z");
        let text = "ring x; map f = x^3, x^4; unfold F of f params t: x^3+t*x, x^4+(2/3)*t*x^2; analyze f: all;";
        let f = GermFile::parse(text).unwrap();
        let u = f.unfolding_spec("F").unwrap();
        assert_eq!(u.map().branch(0)[1].to_string(), "x^4 + 2/3*x^2*t");
        assert_eq!(f.unfoldings_of("f"), vec!["F"]);
    }

    #[test]
    fn round_trip() {
        let text = "frontal-kernel v1;
            ring x, y; weights x = 1, y = 3/2; target A, B, C;
            map f = x, y^2, -x*y^3 + 1/2*y^5;
            ring x;
            target P, Q;
            map g = [x, x^2] | [x^3, x];
            unfold G of g params s, t: [x + s, x^2] | [x^3, x + t*x];
            good_equation G = P - Q + s*t;
            assert_frontal_stable G;
            analyze f: frontal, hat_M;
            analyze G;";
        let a = GermFile::parse(text).unwrap();
        let b = GermFile::parse(&a.to_string()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn errors_carry_positions() {
        match GermFile::parse("ring x;\nmap f = x, z;") {
            Err(Error::Undeclared { name, line, col }) => assert_eq!((name.as_str(), line, col), ("z", 2, 12)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(GermFile::parse("ring x; map f = x^3 x^4;"), Err(Error::Syntax { .. })));
        assert!(matches!(GermFile::parse("frontal-kernel v2; ring x;"), Err(Error::Syntax { .. })));
        assert!(matches!(GermFile::parse("ring x; map f = x, 0;"), Err(Error::Syntax { .. })));
        assert!(GermFile::parse("ring x; map f = [x, 0] | [0, x];").is_ok());
        assert!(matches!(GermFile::parse("ring x; map f = [x, 0] | [x^2, 0];"), Err(Error::Syntax { .. })));
        assert!(matches!(GermFile::parse("ring x; target A; map f = x, x^2;"), Err(Error::Arity { .. })));
        assert!(matches!(GermFile::parse("ring x; analyze f;"), Err(Error::Undeclared { .. })));
        assert!(matches!(GermFile::parse("ring x; map f = x, x^2; analyze f: nonsense;"), Err(Error::Syntax { .. })));
    }
}
