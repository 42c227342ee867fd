use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{HalfExp, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
    Zero,
}

/// `±q^(exp/2)` or the constant `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub sign: Sign,
    pub exp: HalfExp,
}

impl Monomial {
    pub const ZERO: Monomial = Monomial { sign: Sign::Zero, exp: HalfExp::ZERO };
    pub const ONE: Monomial = Monomial { sign: Sign::Pos, exp: HalfExp::ZERO };

    pub const fn pos(exp: HalfExp) -> Self {
        Monomial { sign: Sign::Pos, exp }
    }

    pub const fn neg(exp: HalfExp) -> Self {
        Monomial { sign: Sign::Neg, exp }
    }

    /// `q^k` for whole `k`.
    pub const fn q(k: i64) -> Self {
        Monomial::pos(HalfExp::from_q(k))
    }

    /// `q^(h/2)`.
    pub const fn q_half(h: i64) -> Self {
        Monomial::pos(HalfExp(h))
    }

    pub fn is_zero(self) -> bool {
        self.sign == Sign::Zero
    }

    /// `+1`, `-1` or `0`.
    pub fn sign_value(self) -> i8 {
        match self.sign {
            Sign::Pos => 1,
            Sign::Neg => -1,
            Sign::Zero => 0,
        }
    }

    pub fn negated(self) -> Self {
        match self.sign {
            Sign::Pos => Monomial::neg(self.exp),
            Sign::Neg => Monomial::pos(self.exp),
            Sign::Zero => self,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Monomial {
        match (self.sign, other.sign) {
            (Sign::Zero, _) | (_, Sign::Zero) => Monomial::ZERO,
            (a, b) => Monomial { sign: if a == b { Sign::Pos } else { Sign::Neg }, exp: self.exp + other.exp },
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, other: Monomial) -> Result<Monomial> {
        Ok(self.mul(other.recip()?))
    }

    pub fn recip(self) -> Result<Monomial> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("division by the zero monomial".into()));
        }
        Ok(Monomial { sign: self.sign, exp: -self.exp })
    }

    /// Multiplies by `q^(shift/2)`.
    pub fn shift(self, shift: HalfExp) -> Monomial {
        if self.is_zero() {
            self
        } else {
            Monomial { sign: self.sign, exp: self.exp + shift }
        }
    }

    pub fn pow(self, n: i64) -> Result<Monomial> {
        if n == 0 {
            return Ok(Monomial::ONE);
        }
        if self.is_zero() {
            return if n > 0 {
                Ok(Monomial::ZERO)
            } else {
                Err(Error::InvalidArgument("negative power of zero".into()))
            };
        }
        let sign = if self.sign == Sign::Neg && n % 2 != 0 { Sign::Neg } else { Sign::Pos };
        Ok(Monomial { sign, exp: self.exp * n })
    }

    pub fn to_series(self) -> Series {
        match self.sign {
            Sign::Zero => Series::exact_zero(),
            _ => Series::exact_monomial(self.sign_value(), self.exp),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.sign {
            Sign::Zero => return f.write_str("0"),
            Sign::Pos => "",
            Sign::Neg => "-",
        };
        match self.exp.halves() {
            0 => write!(f, "{prefix}1"),
            2 => write!(f, "{prefix}q"),
            h if h % 2 == 0 => write!(f, "{prefix}q^{}", h / 2),
            h => write!(f, "{prefix}q^({h}/2)"),
        }
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Accepts `0`, `1`, `-1`, `q`, `-q`, `q^3`, `q^-2`, `q^(1/2)`, `-q^(-3/2)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse monomial `{s}`"));
        let t = s.trim();
        if t == "0" {
            return Ok(Monomial::ZERO);
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let exp = if body == "1" {
            HalfExp::ZERO
        } else if body == "q" {
            HalfExp::from_q(1)
        } else {
            let e = body.strip_prefix("q^").ok_or_else(bad)?;
            let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
            match e.split_once('/') {
                Some((num, "2")) => HalfExp(num.trim().parse().map_err(|_| bad())?),
                Some(_) => return Err(bad()),
                None => HalfExp::from_q(e.trim().parse().map_err(|_| bad())?),
            }
        };
        Ok(if neg { Monomial::neg(exp) } else { Monomial::pos(exp) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Monomial::neg(HalfExp(3));
        let b = Monomial::q(2);
        assert_eq!(a.mul(b), Monomial::neg(HalfExp(7)));
        assert_eq!(a.div(a).unwrap(), Monomial::ONE);
        assert_eq!(a.pow(2).unwrap(), Monomial::pos(HalfExp(6)));
        assert_eq!(a.pow(-1).unwrap(), Monomial::neg(HalfExp(-3)));
        assert_eq!(Monomial::ZERO.mul(b), Monomial::ZERO);
        assert!(Monomial::ZERO.recip().is_err());
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "1", "-1", "q", "-q", "q^3", "q^-2", "q^(1/2)", "-q^(-3/2)"] {
            let m: Monomial = s.parse().unwrap();
            let again: Monomial = m.to_string().parse().unwrap();
            assert_eq!(m, again, "{s}");
        }
        assert_eq!("-q^(3/2)".parse::<Monomial>().unwrap(), Monomial::neg(HalfExp(3)));
        assert!("2q".parse::<Monomial>().is_err());
        assert!("q^(1/3)".parse::<Monomial>().is_err());
    }
}
