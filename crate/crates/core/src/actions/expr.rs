//! Group expressions and action specifications as accepted on the command
//! line and in catalog `construct` fields.
//!
//! Group expressions:
//!
//! | form                     | group                                              |
//! |--------------------------|----------------------------------------------------|
//! | `Sym(n)`, `Alt(n)`       | natural action on `n` points                       |
//! | `C(n)`, `D(n)`           | cyclic / dihedral group on `n` points              |
//! | `PSL(2,q)` etc.          | `PSL`, `PGL`, `PGammaL` on the projective line     |
//! | `Wr(E,k)`                | `E ≀ Sym(k)`, imprimitive                          |
//! | `PWr(E,l)`               | `E ≀ Sym(l)` in product action                     |
//! | `Cosets(E,S)`            | image of `E` on the cosets of the subgroup `S`     |
//! | `Hol(p,M1,M2,…)`         | `(F_p)^d ⋊ ⟨M1,M2,…⟩`, matrices as `[[..],[..]]`   |
//! | `Gens(n,c1,c2,…)`        | generated by cycle strings on `n` points           |
//! | anything else            | a catalog name                                     |
//!
//! Subgroup specifications `S`: `sylow2`, `stab:i,j,…` (pointwise stabiliser,
//! 1-based) or cycle strings separated by `;`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::structure::{sylow2_with, DEFAULT_SEED};

use super::catalog::{bundled_catalog, realize, CatalogEntry};
use super::field::{mobius_action, MobiusFlavor};
use super::{coset_action, holomorph_affine, linear_map, wreath_imprimitive, wreath_product_action};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    Sylow2,
    /// Pointwise stabiliser of 0-based points.
    Stabilizer(Vec<usize>),
    /// Generators in 1-based cycle notation.
    Generators(Vec<String>),
}

impl SubgroupSpec {
    pub fn realize(&self, g: &PermGroup) -> Result<PermGroup> {
        self.realize_with(g, DEFAULT_SEED, &Limits::default())
    }

    pub fn realize_with(&self, g: &PermGroup, seed: u64, limits: &Limits) -> Result<PermGroup> {
        match self {
            SubgroupSpec::Sylow2 => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                sylow2_with(g, None, &mut rng, limits)
            }
            SubgroupSpec::Stabilizer(pts) => {
                if let Some(&x) = pts.iter().find(|&&x| x >= g.degree()) {
                    return Err(Error::precondition(format!("point {} outside the domain", x + 1)));
                }
                Ok(g.pointwise_stabilizer(pts))
            }
            SubgroupSpec::Generators(gens) => {
                let gens = gens
                    .iter()
                    .map(|s| Permutation::parse_cycles(s, g.degree()))
                    .collect::<Result<Vec<_>>>()?;
                g.subgroup(gens)
            }
        }
    }
}

impl FromStr for SubgroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "sylow2" {
            return Ok(SubgroupSpec::Sylow2);
        }
        if let Some(rest) = s.strip_prefix("stab:") {
            let pts = rest
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(Error::Parse {
                        pos: 0,
                        msg: format!("bad point `{t}` in stabiliser spec"),
                    }),
                })
                .collect::<Result<_>>()?;
            return Ok(SubgroupSpec::Stabilizer(pts));
        }
        if s.starts_with('(') {
            return Ok(SubgroupSpec::Generators(
                s.split(';').map(|t| t.trim().to_string()).collect(),
            ));
        }
        Err(Error::Parse {
            pos: 0,
            msg: format!("unknown subgroup spec `{s}`"),
        })
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Sylow2 => write!(f, "sylow2"),
            SubgroupSpec::Stabilizer(pts) => {
                let v: Vec<String> = pts.iter().map(|x| (x + 1).to_string()).collect();
                write!(f, "stab:{}", v.join(","))
            }
            SubgroupSpec::Generators(g) => write!(f, "{}", g.join(";")),
        }
    }
}

/// How a group acts: on its own domain, or on the right cosets of a
/// subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionSpec {
    Natural,
    Cosets(SubgroupSpec),
}

impl FromStr for ActionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "natural" => Ok(ActionSpec::Natural),
            "sylow2" => Ok(ActionSpec::Cosets(SubgroupSpec::Sylow2)),
            _ => match s.strip_prefix("cosets:") {
                Some(rest) => Ok(ActionSpec::Cosets(rest.parse()?)),
                None => Err(Error::Parse {
                    pos: 0,
                    msg: format!("unknown action `{s}`; expected natural, sylow2 or cosets:<subgroup>"),
                }),
            },
        }
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionSpec::Natural => write!(f, "natural"),
            ActionSpec::Cosets(SubgroupSpec::Sylow2) => write!(f, "sylow2"),
            ActionSpec::Cosets(s) => write!(f, "cosets:{s}"),
        }
    }
}

/// Splits `s` at top-level commas (outside any brackets).
fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn parse_int(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("expected an integer, found `{s}`"),
    })
}

fn arity(name: &str, args: &[&str], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("{name} takes {n} argument(s), got {}", args.len()),
        });
    }
    Ok(())
}

fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::precondition("dihedral groups need n ≥ 3"));
    }
    let rot = Permutation::from_images((0..n).map(|x| (x + 1) % n).collect())?;
    let refl = Permutation::from_images((0..n).map(|x| (n - x) % n).collect())?;
    PermGroup::with_order(n, vec![rot, refl], 2 * n as u128, &[])
}

/// Resolves a group expression; `catalog` is searched before the bundled
/// catalog for plain names.
pub fn resolve(text: &str, catalog: &[CatalogEntry]) -> Result<PermGroup> {
    let text = text.trim();
    if let Some(e) = catalog.iter().find(|e| e.name == text) {
        return realize(e);
    }
    if let Some(e) = bundled_catalog().into_iter().find(|e| e.name == text) {
        return realize(&e);
    }
    resolve_expr(text, catalog)
}

/// Like [`resolve`] but the outermost form must be an expression, so an
/// entry may share its name with its own `construct`.
pub(crate) fn resolve_expr(text: &str, catalog: &[CatalogEntry]) -> Result<PermGroup> {
    let text = text.trim();
    let (head, body) = match (text.find('('), text.ends_with(')')) {
        (Some(i), true) => (&text[..i], &text[i + 1..text.len() - 1]),
        _ => return Err(Error::UnknownGroup(text.to_string())),
    };
    let args = split_args(body);
    match head {
        "Sym" | "Alt" | "C" | "D" => {
            arity(head, &args, 1)?;
            let n = parse_int(args[0])?;
            if n == 0 {
                return Err(Error::precondition("degree must be positive"));
            }
            match head {
                "Sym" => Ok(PermGroup::symmetric(n)),
                "Alt" => Ok(PermGroup::alternating(n)),
                "C" => Ok(PermGroup::cyclic(n)),
                _ => dihedral(n),
            }
        }
        "PSL" | "PGL" | "PGammaL" | "PΓL" => {
            arity(head, &args, 2)?;
            if parse_int(args[0])? != 2 {
                return Err(Error::precondition("only dimension 2 is supported"));
            }
            mobius_action(parse_int(args[1])? as u32, head.parse::<MobiusFlavor>()?)
        }
        "Wr" | "PWr" => {
            arity(head, &args, 2)?;
            let t = resolve(args[0], catalog)?;
            let k = parse_int(args[1])?;
            if head == "Wr" {
                wreath_imprimitive(&t, k)
            } else {
                wreath_product_action(&t, k)
            }
        }
        "Cosets" => {
            arity(head, &args, 2)?;
            let g = resolve(args[0], catalog)?;
            let h = args[1].parse::<SubgroupSpec>()?.realize(&g)?;
            Ok(coset_action(&g, &h)?.image)
        }
        "Hol" => {
            if args.len() < 2 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "Hol takes a prime and at least one matrix".into(),
                });
            }
            let p = parse_int(args[0])? as u64;
            let mats: Vec<Vec<Vec<u64>>> = args[1..]
                .iter()
                .map(|m| {
                    serde_json::from_str(m).map_err(|e| Error::Parse {
                        pos: e.column(),
                        msg: format!("bad matrix `{m}`: {e}"),
                    })
                })
                .collect::<Result<_>>()?;
            let d = mats[0].len();
            let maps = mats
                .iter()
                .map(|m| linear_map(p, d, m))
                .collect::<Result<Vec<_>>>()?;
            holomorph_affine(p, d, &maps)
        }
        "Gens" => {
            if args.len() < 2 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "Gens takes a degree and at least one generator".into(),
                });
            }
            let n = parse_int(args[0])?;
            let gens = args[1..]
                .iter()
                .map(|s| Permutation::parse_cycles(s, n))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::with_degree(n, gens)
        }
        _ => Err(Error::UnknownGroup(text.to_string())),
    }
}
