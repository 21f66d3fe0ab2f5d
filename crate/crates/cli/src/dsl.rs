//! Group and subgroup specifications.
//!
//! Groups: atoms `name:param` combined with `A x B` (direct product, left
//! associative), and the postfix `A wr2` and `A wr:t` (wreath with `S_t`),
//! which bind tighter than `x`. Parentheses group.

use std::fmt;

use perfcode::field::FiniteField;
use perfcode::lattice::{all_subgroups, maximal_subgroups, LATTICE_CAP};
use perfcode::linear::{
    affine_translations, agl1, agl2, extension, gl2, m10, pgammal2, pgl2, preimage_in_sl2,
    projective_socle, psigmal2, psl2, sl2,
};
use perfcode::maximal::{construct_row, row_condition, table_rows, Family, MaximalTag};
use perfcode::products::{direct_product, wreath_s};
use perfcode::small::{alt, cyclic, dihedral, elemab, modular, quaternion, semidihedral, sym};
use perfcode::structure::{normalizer, point_stabilizer, sylow2};
use perfcode::{Error, FiniteGroup, Permutation, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

fn perr<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Sym(u64),
    Alt(u64),
    Cyclic(u64),
    Dihedral(u64),
    Quaternion(u64),
    Semidihedral(u64),
    Modular(u64),
    Elemab { p: u64, k: u64 },
    Psl2(u64),
    Pgl2(u64),
    Sl2(u64),
    Gl2(u64),
    Psigmal2(u64),
    Pgammal2(u64),
    Ext { q: u64, k: u64 },
    Agl1(u64),
    Agl2(u64),
    M10,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Atom(Atom),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Wreath(Box<GroupSpec>, u64),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Sym(n) => write!(f, "sym:{n}"),
            Atom::Alt(n) => write!(f, "alt:{n}"),
            Atom::Cyclic(n) => write!(f, "cyclic:{n}"),
            Atom::Dihedral(n) => write!(f, "dihedral:{n}"),
            Atom::Quaternion(n) => write!(f, "quaternion:{n}"),
            Atom::Semidihedral(n) => write!(f, "semidihedral:{n}"),
            Atom::Modular(n) => write!(f, "modular:{n}"),
            Atom::Elemab { p, k } => write!(f, "elemab:{p}^{k}"),
            Atom::Psl2(q) => write!(f, "psl2:{q}"),
            Atom::Pgl2(q) => write!(f, "pgl2:{q}"),
            Atom::Sl2(q) => write!(f, "sl2:{q}"),
            Atom::Gl2(q) => write!(f, "gl2:{q}"),
            Atom::Psigmal2(q) => write!(f, "psigmal2:{q}"),
            Atom::Pgammal2(q) => write!(f, "pgammal2:{q}"),
            Atom::Ext { q, k } => write!(f, "ext:{q}:{k}"),
            Atom::Agl1(q) => write!(f, "agl1:{q}"),
            Atom::Agl2(q) => write!(f, "agl2:{q}"),
            Atom::M10 => write!(f, "m10"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Atom(a) => write!(f, "{a}"),
            GroupSpec::Direct(l, r) => {
                write!(f, "{l} x ")?;
                match **r {
                    GroupSpec::Direct(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
            GroupSpec::Wreath(inner, t) => {
                match **inner {
                    GroupSpec::Direct(..) => write!(f, "({inner})")?,
                    _ => write!(f, "{inner}")?,
                }
                if *t == 2 {
                    write!(f, " wr2")
                } else {
                    write!(f, " wr:{t}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Word(String),
}

fn lex(s: &str) -> Vec<(usize, Token)> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '(' || c == ')' {
            chars.next();
            out.push((i, if c == '(' { Token::Open } else { Token::Close }));
        } else {
            let mut word = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() || c == '(' || c == ')' {
                    break;
                }
                word.push(c);
                chars.next();
            }
            out.push((i, Token::Word(word)));
        }
    }
    out
}

fn number(pos: usize, s: &str) -> Result<u64, ParseError> {
    match s.parse::<u64>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => perr(pos, format!("expected a positive integer, found `{s}`")),
    }
}

fn atom(pos: usize, word: &str) -> Result<Atom, ParseError> {
    if word == "m10" {
        return Ok(Atom::M10);
    }
    let parts: Vec<&str> = word.split(':').collect();
    let one = |ctor: fn(u64) -> Atom| -> Result<Atom, ParseError> {
        match parts.as_slice() {
            [_, n] => Ok(ctor(number(pos + parts[0].len() + 1, n)?)),
            _ => perr(pos, format!("`{}` takes one parameter", parts[0])),
        }
    };
    match parts[0] {
        "sym" => one(Atom::Sym),
        "alt" => one(Atom::Alt),
        "cyclic" => one(Atom::Cyclic),
        "dihedral" => one(Atom::Dihedral),
        "quaternion" => one(Atom::Quaternion),
        "semidihedral" => one(Atom::Semidihedral),
        "modular" => one(Atom::Modular),
        "psl2" => one(Atom::Psl2),
        "pgl2" => one(Atom::Pgl2),
        "sl2" => one(Atom::Sl2),
        "gl2" => one(Atom::Gl2),
        "psigmal2" => one(Atom::Psigmal2),
        "pgammal2" => one(Atom::Pgammal2),
        "agl1" => one(Atom::Agl1),
        "agl2" => one(Atom::Agl2),
        "elemab" => match parts.as_slice() {
            [_, pk] => {
                let at = pos + "elemab:".len();
                let Some((p, k)) = pk.split_once('^') else {
                    return perr(at, "expected `p^k`");
                };
                Ok(Atom::Elemab {
                    p: number(at, p)?,
                    k: number(at + p.len() + 1, k)?,
                })
            }
            _ => perr(pos, "`elemab` takes one parameter `p^k`"),
        },
        "ext" => match parts.as_slice() {
            [_, q, k] => {
                let at = pos + "ext:".len();
                let k = k.parse::<u64>().map_err(|_| ParseError {
                    pos: at + q.len() + 1,
                    message: format!("expected an integer, found `{k}`"),
                })?;
                Ok(Atom::Ext {
                    q: number(at, q)?,
                    k,
                })
            }
            _ => perr(pos, "`ext` takes two parameters `q:k`"),
        },
        other => perr(pos, format!("unknown group `{other}`")),
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<GroupSpec, ParseError> {
        let mut left = self.term()?;
        while let Some((_, Token::Word(w))) = self.peek() {
            if w != "x" {
                break;
            }
            self.at += 1;
            let right = self.term()?;
            left = GroupSpec::Direct(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<GroupSpec, ParseError> {
        let mut g = self.primary()?;
        while let Some((pos, Token::Word(w))) = self.peek().cloned() {
            let t = if w == "wr2" {
                2
            } else if let Some(t) = w.strip_prefix("wr:") {
                number(pos + 3, t)?
            } else {
                break;
            };
            self.at += 1;
            g = GroupSpec::Wreath(Box::new(g), t);
        }
        Ok(g)
    }

    fn primary(&mut self) -> Result<GroupSpec, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some((_, Token::Open)) => {
                self.at += 1;
                let g = self.expr()?;
                match self.peek() {
                    Some((_, Token::Close)) => {
                        self.at += 1;
                        Ok(g)
                    }
                    _ => perr(self.pos(), "expected `)`"),
                }
            }
            Some((_, Token::Word(w))) if w != "x" && w != "wr2" && !w.starts_with("wr:") => {
                self.at += 1;
                Ok(GroupSpec::Atom(atom(pos, &w)?))
            }
            Some(_) => perr(pos, "expected a group"),
            None => perr(pos, "unexpected end of input"),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser {
            tokens: lex(s),
            at: 0,
            end: s.len(),
        };
        let g = p.expr()?;
        if p.at != p.tokens.len() {
            return perr(p.pos(), "unexpected trailing input");
        }
        Ok(g)
    }
}

/// What a built group knows about how it was made.
#[derive(Debug, Clone)]
pub enum Provenance {
    /// Acts on the projective line of GF(q); `family` is set for `PSL_2(q)`
    /// and `PGL_2(q)` themselves.
    Projective {
        q: u64,
        family: Option<Family>,
    },
    Sl2 {
        q: u64,
    },
    Affine {
        q: u64,
    },
    Other,
}

#[derive(Debug, Clone)]
pub struct BuiltGroup {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
    pub provenance: Provenance,
}

impl GroupSpec {
    pub fn build(&self) -> perfcode::Result<BuiltGroup> {
        let (group, provenance) = match self {
            GroupSpec::Atom(a) => build_atom(*a)?,
            GroupSpec::Direct(l, r) => {
                let (l, r) = (l.build()?, r.build()?);
                (direct_product(&l.group, &r.group)?.group, Provenance::Other)
            }
            GroupSpec::Wreath(inner, t) => (
                wreath_s(&inner.build()?.group, *t as usize)?.group,
                Provenance::Other,
            ),
        };
        Ok(BuiltGroup {
            spec: self.clone(),
            group,
            provenance,
        })
    }
}

fn build_atom(a: Atom) -> perfcode::Result<(FiniteGroup, Provenance)> {
    let projective = |q, family| Provenance::Projective { q, family };
    Ok(match a {
        Atom::Sym(n) => (sym(n as usize)?, Provenance::Other),
        Atom::Alt(n) => (alt(n as usize)?, Provenance::Other),
        Atom::Cyclic(n) => (cyclic(n as usize)?, Provenance::Other),
        Atom::Dihedral(n) => (dihedral(n as usize)?, Provenance::Other),
        Atom::Quaternion(n) => (quaternion(n)?, Provenance::Other),
        Atom::Semidihedral(n) => (semidihedral(n)?, Provenance::Other),
        Atom::Modular(n) => (modular(n)?, Provenance::Other),
        Atom::Elemab { p, k } => (elemab(p, k as u32)?, Provenance::Other),
        Atom::Psl2(q) => (psl2(q)?, projective(q, Some(Family::Psl))),
        Atom::Pgl2(q) => (pgl2(q)?, projective(q, Some(Family::Pgl))),
        Atom::Sl2(q) => (sl2(q)?, Provenance::Sl2 { q }),
        Atom::Gl2(q) => (gl2(q)?, Provenance::Other),
        Atom::Psigmal2(q) => (psigmal2(q)?, projective(q, None)),
        Atom::Pgammal2(q) => (pgammal2(q)?, projective(q, None)),
        Atom::Ext { q, k } => (extension(q, k as u32)?, projective(q, None)),
        Atom::Agl1(q) => (agl1(q)?, Provenance::Affine { q }),
        Atom::Agl2(q) => (agl2(q)?, Provenance::Affine { q }),
        Atom::M10 => (m10()?, projective(9, None)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    Maximal(MaximalTag),
    Generators(Vec<Vec<u32>>),
    PointStabilizer(u32),
    Socle,
    Sylow2,
    All,
    AllMaximal,
    PreimageOf(Box<SubgroupSpec>),
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Maximal(t) => write!(f, "maximal:{t}"),
            SubgroupSpec::Generators(g) => {
                let parts: Vec<String> = g
                    .iter()
                    .map(|p| {
                        format!(
                            "[{}]",
                            p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect();
                write!(f, "generators:[{}]", parts.join(","))
            }
            SubgroupSpec::PointStabilizer(0) => write!(f, "point-stabilizer"),
            SubgroupSpec::PointStabilizer(p) => write!(f, "point-stabilizer:{p}"),
            SubgroupSpec::Socle => write!(f, "socle"),
            SubgroupSpec::Sylow2 => write!(f, "sylow2"),
            SubgroupSpec::All => write!(f, "all"),
            SubgroupSpec::AllMaximal => write!(f, "all-maximal"),
            SubgroupSpec::PreimageOf(inner) => write!(f, "preimage-of:{inner}"),
        }
    }
}

impl std::str::FromStr for SubgroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_subgroup(s.trim(), 0)
    }
}

fn parse_subgroup(s: &str, pos: usize) -> Result<SubgroupSpec, ParseError> {
    Ok(match s {
        "point-stabilizer" => SubgroupSpec::PointStabilizer(0),
        "socle" => SubgroupSpec::Socle,
        "sylow2" => SubgroupSpec::Sylow2,
        "all" => SubgroupSpec::All,
        "all-maximal" => SubgroupSpec::AllMaximal,
        _ => {
            if let Some(tag) = s.strip_prefix("maximal:") {
                let t = tag.parse::<MaximalTag>().map_err(|_| ParseError {
                    pos: pos + "maximal:".len(),
                    message: format!("unknown maximal tag `{tag}`"),
                })?;
                SubgroupSpec::Maximal(t)
            } else if let Some(p) = s.strip_prefix("point-stabilizer:") {
                let n = p.parse::<u32>().map_err(|_| ParseError {
                    pos: pos + "point-stabilizer:".len(),
                    message: format!("expected a point, found `{p}`"),
                })?;
                SubgroupSpec::PointStabilizer(n)
            } else if let Some(list) = s.strip_prefix("generators:") {
                let gens: Vec<Vec<u32>> = serde_json::from_str(list).map_err(|e| ParseError {
                    pos: pos + "generators:".len() + e.column().saturating_sub(1),
                    message: format!("expected a list of image arrays: {e}"),
                })?;
                SubgroupSpec::Generators(gens)
            } else if let Some(inner) = s.strip_prefix("preimage-of:") {
                SubgroupSpec::PreimageOf(Box::new(parse_subgroup(
                    inner,
                    pos + "preimage-of:".len(),
                )?))
            } else {
                return perr(pos, format!("unknown subgroup specification `{s}`"));
            }
        }
    })
}

/// A resolved subgroup with the description used in records.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub description: String,
    pub subgroup: Subgroup,
}

fn field(q: u64) -> perfcode::Result<FiniteField> {
    let q32 =
        u32::try_from(q).map_err(|_| Error::BadParameters(format!("q = {q} is too large")))?;
    FiniteField::of_order(q32)
}

/// The subgroup of a projective-line group for a table row: the row itself
/// for `PSL_2(q)` and `PGL_2(q)`, and `N_G(row of the socle)` otherwise.
fn maximal_row(b: &BuiltGroup, tag: MaximalTag) -> perfcode::Result<Subgroup> {
    let Provenance::Projective { q, family } = b.provenance else {
        return Err(Error::BadParameters(format!(
            "maximal:{tag} needs a group on the projective line"
        )));
    };
    let k = field(q)?;
    let g = b.group.whole();
    match family {
        Some(fam) => {
            if !row_condition(fam, q, tag) {
                return Err(Error::ConditionViolated(format!(
                    "row {tag} does not occur for q = {q}"
                )));
            }
            construct_row(&g, &k, fam, tag)
        }
        None => {
            if !row_condition(Family::Psl, q, tag) {
                return Err(Error::ConditionViolated(format!(
                    "row {tag} does not occur in PSL_2({q})"
                )));
            }
            let socle = projective_socle(&b.group, q)?;
            let row = construct_row(&socle, &k, Family::Psl, tag)?;
            normalizer(&g, &row)
        }
    }
}

fn table_family(b: &BuiltGroup) -> Option<(u64, Family)> {
    match b.provenance {
        Provenance::Projective { q, family: Some(f) } => Some((q, f)),
        Provenance::Projective { q, family: None } => Some((q, Family::Psl)),
        _ => None,
    }
}

impl SubgroupSpec {
    pub fn resolve(&self, b: &BuiltGroup) -> perfcode::Result<Vec<Resolved>> {
        let g = b.group.whole();
        let one = |subgroup: Subgroup| {
            Ok(vec![Resolved {
                description: self.to_string(),
                subgroup,
            }])
        };
        match self {
            SubgroupSpec::Maximal(tag) => one(maximal_row(b, *tag)?),
            SubgroupSpec::Generators(gens) => {
                let perms = gens
                    .iter()
                    .map(|v| Permutation::from_images(v.clone()))
                    .collect::<perfcode::Result<Vec<_>>>()?;
                one(Subgroup::from_permutations(&b.group, &perms)?)
            }
            SubgroupSpec::PointStabilizer(p) => {
                if *p as usize >= b.group.degree() {
                    return Err(Error::BadParameters(format!(
                        "point {p} is outside the domain"
                    )));
                }
                one(point_stabilizer(&g, *p))
            }
            SubgroupSpec::Socle => match b.provenance {
                Provenance::Projective { q, .. } => one(projective_socle(&b.group, q)?),
                Provenance::Affine { q } if b.group.degree() as u64 == q * q => {
                    one(affine_translations(&b.group, q)?)
                }
                Provenance::Affine { .. } => {
                    // translations are the fixed-point-free elements of AGL_1(q)
                    let members: Vec<u32> = g
                        .members()
                        .iter()
                        .copied()
                        .filter(|&x| {
                            x == 0
                                || b.group
                                    .element(x)
                                    .iter()
                                    .enumerate()
                                    .all(|(i, &y)| i as u32 != y)
                        })
                        .collect();
                    one(Subgroup::from_members(&b.group, &members)?)
                }
                _ => Err(Error::BadParameters(format!(
                    "no recorded socle for {}",
                    b.spec
                ))),
            },
            SubgroupSpec::Sylow2 => one(sylow2(&g)),
            SubgroupSpec::All => Ok(all_subgroups(&g, LATTICE_CAP)?
                .into_iter()
                .enumerate()
                .map(|(i, subgroup)| Resolved {
                    description: format!("all[{i}]"),
                    subgroup,
                })
                .collect()),
            SubgroupSpec::AllMaximal => match table_family(b) {
                Some((q, fam)) => table_rows(fam, q)
                    .into_iter()
                    .map(|tag| {
                        Ok(Resolved {
                            description: format!("maximal:{tag}"),
                            subgroup: maximal_row(b, tag)?,
                        })
                    })
                    .collect(),
                None => Ok(maximal_subgroups(&g)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, subgroup)| Resolved {
                        description: format!("all-maximal[{i}]"),
                        subgroup,
                    })
                    .collect()),
            },
            SubgroupSpec::PreimageOf(inner) => {
                let Provenance::Sl2 { q } = b.provenance else {
                    return Err(Error::BadParameters(
                        "preimage-of needs sl2:q, whose quotient by -I is recorded".into(),
                    ));
                };
                let image = GroupSpec::Atom(Atom::Psl2(q)).build()?;
                inner
                    .resolve(&image)?
                    .into_iter()
                    .map(|r| {
                        Ok(Resolved {
                            description: format!("preimage-of:{}", r.description),
                            subgroup: preimage_in_sl2(q, &b.group, &r.subgroup)?,
                        })
                    })
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        for s in [
            "sym:4",
            "elemab:2^3",
            "ext:25:1",
            "m10",
            "sym:3 x cyclic:2 x alt:4",
            "sym:3 x (cyclic:2 x alt:4)",
            "psl2:7 wr2",
            "(sym:3 x cyclic:2) wr:3",
            "sym:3 wr2 wr2",
        ] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
            assert_eq!(g.to_string().parse::<GroupSpec>().unwrap(), g);
        }
        let loose: GroupSpec = "( sym:3  x cyclic:2 )wr2".parse().unwrap();
        assert_eq!(loose.to_string(), "(sym:3 x cyclic:2) wr2");
    }

    #[test]
    fn positioned_errors() {
        let e = "sym:3 x frob:4".parse::<GroupSpec>().unwrap_err();
        assert_eq!(e.pos, 8);
        let e = "sym:0".parse::<GroupSpec>().unwrap_err();
        assert_eq!(e.pos, 4);
        let e = "(sym:3".parse::<GroupSpec>().unwrap_err();
        assert_eq!(e.pos, 6);
        assert!("sym:3 x".parse::<GroupSpec>().is_err());
        assert!("maximal:d0".parse::<SubgroupSpec>().is_err());
    }

    #[test]
    fn subgroup_specs() {
        for s in [
            "maximal:d-1",
            "generators:[[1,0,2]]",
            "point-stabilizer",
            "preimage-of:maximal:s4",
            "all",
        ] {
            assert_eq!(s.parse::<SubgroupSpec>().unwrap().to_string(), s);
        }
        let b = "sl2:5".parse::<GroupSpec>().unwrap().build().unwrap();
        let r = "preimage-of:maximal:borel"
            .parse::<SubgroupSpec>()
            .unwrap()
            .resolve(&b)
            .unwrap();
        assert_eq!(r[0].subgroup.order(), 20);
        let b = "psl2:7".parse::<GroupSpec>().unwrap().build().unwrap();
        assert_eq!(SubgroupSpec::AllMaximal.resolve(&b).unwrap().len(), 2);
    }
}
