use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A built-in group family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GroupSpec {
    Cyclic(u64),
    /// Dihedral group of order `2n`.
    Dihedral(u64),
    Symmetric(u64),
    Alternating(u64),
    Sl2(u64),
    Psl2(u64),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
}

pub(crate) const MAX_PERMUTATION_DEGREE: u64 = 8;
pub(crate) const MAX_FIELD_ORDER: u64 = 31;

pub(crate) fn is_prime(q: u64) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn factorial(m: u64) -> u64 {
    (1..=m).product()
}

impl GroupSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GroupSpec::Cyclic(_) => "cyclic",
            GroupSpec::Dihedral(_) => "dihedral",
            GroupSpec::Symmetric(_) => "symmetric",
            GroupSpec::Alternating(_) => "alternating",
            GroupSpec::Sl2(_) => "sl2",
            GroupSpec::Psl2(_) => "psl2",
            GroupSpec::DirectProduct(..) => "direct_product",
        }
    }

    /// Group order, after checking the parameters.
    pub fn order(&self) -> Result<u64> {
        match *self {
            GroupSpec::Cyclic(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameter {
                        family: "cyclic",
                        value: n,
                        reason: "order must be positive",
                    });
                }
                Ok(n)
            }
            GroupSpec::Dihedral(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameter {
                        family: "dihedral",
                        value: n,
                        reason: "polygon size must be positive",
                    });
                }
                n.checked_mul(2).ok_or(Error::InvalidParameter {
                    family: "dihedral",
                    value: n,
                    reason: "order overflows",
                })
            }
            GroupSpec::Symmetric(m) | GroupSpec::Alternating(m) => {
                let family = self.family();
                if m == 0 || m > MAX_PERMUTATION_DEGREE {
                    return Err(Error::InvalidParameter {
                        family,
                        value: m,
                        reason: "degree must be in 1..=8",
                    });
                }
                let full = factorial(m);
                Ok(match self {
                    GroupSpec::Alternating(_) if m >= 2 => full / 2,
                    _ => full,
                })
            }
            GroupSpec::Sl2(q) | GroupSpec::Psl2(q) => {
                let family = self.family();
                if !is_prime(q) {
                    return Err(Error::NonPrimeParameter { family, q });
                }
                if q > MAX_FIELD_ORDER {
                    return Err(Error::InvalidParameter {
                        family,
                        value: q,
                        reason: "field order must be at most 31",
                    });
                }
                let sl = q * (q * q - 1);
                match self {
                    GroupSpec::Psl2(_) if q == 2 => Err(Error::InvalidParameter {
                        family,
                        value: q,
                        reason: "psl2 needs an odd prime",
                    }),
                    GroupSpec::Psl2(_) => Ok(sl / 2),
                    _ => Ok(sl),
                }
            }
            GroupSpec::DirectProduct(ref a, ref b) => {
                let (oa, ob) = (a.order()?, b.order()?);
                oa.checked_mul(ob).ok_or(Error::InvalidParameter {
                    family: "direct_product",
                    value: oa,
                    reason: "order overflows",
                })
            }
        }
    }

    /// Parses `cyclic(6)`, `psl2(7)`, `direct_product(cyclic(2), sl2(3))`, ...
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            src: text,
            rest: text.trim(),
        };
        let spec = p.spec()?;
        if !p.rest.trim().is_empty() {
            return Err(Error::MalformedSpec(text.into()));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    rest: &'a str,
}

impl Parser<'_> {
    fn malformed(&self) -> Error {
        Error::MalformedSpec(self.src.into())
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.rest = self.rest.trim_start();
        match self.rest.strip_prefix(c) {
            Some(r) => {
                self.rest = r;
                Ok(())
            }
            None => Err(self.malformed()),
        }
    }

    fn ident(&mut self) -> &str {
        self.rest = self.rest.trim_start();
        let end = self
            .rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest.len());
        let (id, r) = self.rest.split_at(end);
        self.rest = r;
        id
    }

    fn number(&mut self) -> Result<u64> {
        self.rest = self.rest.trim_start();
        let end = self.rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest.len());
        let (digits, r) = self.rest.split_at(end);
        let value = digits.parse().map_err(|_| self.malformed())?;
        self.rest = r;
        Ok(value)
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let name = self.ident().to_ascii_lowercase();
        self.eat('(')?;
        let spec = match name.as_str() {
            "direct_product" | "product" => {
                let a = self.spec()?;
                self.eat(',')?;
                let b = self.spec()?;
                GroupSpec::DirectProduct(Box::new(a), Box::new(b))
            }
            "cyclic" => GroupSpec::Cyclic(self.number()?),
            "dihedral" => GroupSpec::Dihedral(self.number()?),
            "symmetric" => GroupSpec::Symmetric(self.number()?),
            "alternating" => GroupSpec::Alternating(self.number()?),
            "sl2" => GroupSpec::Sl2(self.number()?),
            "psl2" => GroupSpec::Psl2(self.number()?),
            "" => return Err(self.malformed()),
            _ => return Err(Error::UnknownFamily(name)),
        };
        self.eat(')')?;
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::DirectProduct(a, b) => write!(f, "direct_product({a},{b})"),
            GroupSpec::Cyclic(n)
            | GroupSpec::Dihedral(n)
            | GroupSpec::Symmetric(n)
            | GroupSpec::Alternating(n)
            | GroupSpec::Sl2(n)
            | GroupSpec::Psl2(n) => write!(f, "{}({n})", self.family()),
        }
    }
}

impl From<GroupSpec> for String {
    fn from(s: GroupSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for GroupSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        GroupSpec::parse(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips_through_display() {
        for text in ["cyclic(6)", "psl2(7)", "direct_product(cyclic(2),sl2(3))"] {
            let spec = GroupSpec::parse(text).unwrap();
            assert_eq!(spec.to_string(), text);
        }
        let spaced = GroupSpec::parse(" direct_product( dihedral(4) , alternating(5) ) ").unwrap();
        assert_eq!(spaced.order().unwrap(), 8 * 60);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(GroupSpec::parse("mathieu(11)"), Err(Error::UnknownFamily(_))));
        assert!(matches!(GroupSpec::parse("cyclic(6"), Err(Error::MalformedSpec(_))));
        assert!(matches!(GroupSpec::parse("cyclic(x)"), Err(Error::MalformedSpec(_))));
    }

    #[test]
    fn orders_and_parameter_checks() {
        assert_eq!(GroupSpec::Sl2(3).order().unwrap(), 24);
        assert_eq!(GroupSpec::Psl2(7).order().unwrap(), 168);
        assert_eq!(GroupSpec::Alternating(5).order().unwrap(), 60);
        assert_eq!(GroupSpec::Alternating(1).order().unwrap(), 1);
        assert!(matches!(
            GroupSpec::Sl2(9).order(),
            Err(Error::NonPrimeParameter { .. })
        ));
        assert!(matches!(
            GroupSpec::Psl2(2).order(),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            GroupSpec::Sl2(37).order(),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(GroupSpec::Symmetric(9).order().is_err());
    }
}
