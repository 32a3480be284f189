use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::Error;

/// Whether a row is established or only observed numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Standing {
    Proven,
    Conjectural,
    /// Proven for some primes and conjectural for the rest.
    Mixed,
}

/// What a row is parameterised by, beyond the prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    None,
    /// Shift `d` of a `C(2k, k+d)` factor.
    Shift,
    /// Rational base parameter `x`.
    Base,
}

macro_rules! registry {
    ($($id:ident => $name:literal, $standing:ident, $params:ident, $desc:literal;)*) => {
        /// Registered congruences, in registry order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        #[allow(non_camel_case_types)]
        pub enum CongruenceId {
            $($id,)*
        }

        impl CongruenceId {
            pub const ALL: &'static [CongruenceId] = &[$(CongruenceId::$id,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(CongruenceId::$id => $name,)*
                }
            }

            pub fn standing(self) -> Standing {
                match self {
                    $(CongruenceId::$id => Standing::$standing,)*
                }
            }

            pub fn param_kind(self) -> ParamKind {
                match self {
                    $(CongruenceId::$id => ParamKind::$params,)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(CongruenceId::$id => $desc,)*
                }
            }
        }
    };
}

registry! {
    C1_1 => "C1_1", Mixed, None, "sum C(2k,k)^3 vs 4x^2-2p with p=x^2+7y^2, or 0";
    C1_2 => "C1_2", Proven, None, "C(n+j,2j) vs C(2j,j)/(-16)^j for j<=n";
    C1_5 => "C1_5", Proven, Shift, "sum C(2k,k)^2 C(2k,k+d)/64^k vanishes for d of the right parity";
    C1_6 => "C1_6", Proven, None, "sum C(2k,k)^2 C(2k,k+1)/64^k for p=3 mod 4";
    C1_7a => "C1_7a", Proven, None, "half sum (k+1)C(2k,k)^2/8^k vs sign*x";
    C1_7b => "C1_7b", Proven, None, "half sum (2k+1)C(2k,k)^2/(-16)^k vs sign*x";
    C1_8 => "C1_8", Proven, None, "Catalan and weighted sums over 8^k vs sign*(2x-p/x)";
    C1_9 => "C1_9", Proven, None, "Schroder sum and (-16)^k sums vs 2*sign*(2x-p/x)";
    C1_10 => "C1_10", Proven, None, "half sum k^2 C(2k,k)^2/8^k vs sign*(x-3p/(4x))";
    C1_11 => "C1_11", Proven, None, "half sum k^2 C(2k,k)^2/(-16)^k vs -sign*p/(16x)";
    C1_12 => "C1_12", Proven, None, "sum C(2k,k)^2 C(2k,k+1)/(-8)^k vs 2p-2x^2";
    C1_13 => "C1_13", Proven, None, "sum C(2k,k) C(2k,k+1)^2/(-8)^k vs -2p";
    CR1_1 => "CR1_1", Conjectural, None, "combined (k+1) and (2k+1) sums vs 2(2/p)x";
    C1_14b => "C1_14b", Proven, None, "sum C(2k,k)^2 C(3k,k)/108^k vs b(p)";
    C1_14c => "C1_14c", Proven, None, "sum C(2k,k)^2 C(4k,2k)/256^k vs c(p)";
    C1_15 => "C1_15", Proven, None, "sum C(2k,k) C(3k,k) C(6k,3k)/1728^k vs (p/3)a(p)";
    C1_19 => "C1_19", Proven, Shift, "shifted sum over 108^k vanishes";
    C1_20 => "C1_20", Proven, Shift, "shifted sum over 256^k vanishes";
    C1_21 => "C1_21", Proven, Shift, "shifted sum over 1728^k vanishes";
    C1_22 => "C1_22", Proven, None, "sum over 256^k vs 4x^2-2p for p=3 mod 8, p=x^2+2y^2";
    C1_23 => "C1_23", Proven, None, "sum over 1728^k vs 2p-4x^2 for p=5 mod 12";
    C1_24 => "C1_24", Proven, None, "sum C(2k,k)^2 C(3k,k+1)/108^k vanishes for p=1 mod 3";
    C1_25 => "C1_25", Proven, None, "sum C(4k,2k) C(2k,k) C(2k,k+1)/256^k vanishes";
    C1_26 => "C1_26", Proven, None, "sum C(6k,3k) C(3k,k) C(2k,k+1)/1728^k vanishes";
    CL3_2 => "CL3_2", Proven, None, "double sums of C(2i,i)^2 C(2j,j)^2 vs p(-1/p) mod p^3";
    CGZ => "CGZ", Proven, None, "sum (3k+1)C(2k,k)^3/(-8)^k vs p(-1/p) mod p^3";
    CGZ_P4 => "CGZ_P4", Conjectural, None, "sum (3k+1)C(2k,k)^3/(-8)^k vs p(-1/p)+p^3 E_(p-3) mod p^4";
    CL3_3 => "CL3_3", Proven, None, "first moments of C(2k,k)^2 sums mod p^3";
    C3_2 => "C3_2", Proven, None, "C(n,(p-1)/4) vs (2^(p-1)+1)/2 (2x-p/(2x)) mod p^2";
    C3_3 => "C3_3", Proven, None, "half sums of C(2k,k)^2 over 8^k and (-16)^k vs sign*(2x-p/(2x))";
    C3_4 => "C3_4", Proven, None, "central Delannoy D_n vs sign*(2x-p/(2x))";
    CR3_1 => "CR3_1", Proven, None, "D_n vanishes mod p for p=3 mod 4";
    C3_5 => "C3_5", Proven, None, "sum C(2k,k)^3/(-8)^k vs 4x^2-2p or 0";
    C4_1 => "C4_1", Proven, Base, "sum C(2k,k)^3 (-x/64)^k vs a 256-type sum in x/(64(x+1)^2)";
    CG => "CG", Proven, None, "C(n,(p-1)/4) vs 2x mod p";
    CM => "CM", Proven, None, "C(n,(p-1)/4) vs 12(-432)^m C(2m,m) mod p, m=(p-5)/12";
    C_AHL => "C_AHL", Proven, None, "Apery-like sum vs 4x^2-2p with p=x^2+2y^2, or 0, mod p";
}

impl CongruenceId {
    /// Exponent `k` of the modulus `p^k` at which the row is stated.
    pub fn exponent(self, p: u64) -> u32 {
        use CongruenceId::*;
        match self {
            CL3_2 | CGZ | CL3_3 => 3,
            CGZ_P4 => 4,
            CR1_1 => {
                if p % 4 == 1 {
                    3
                } else {
                    2
                }
            }
            CR3_1 | C4_1 | CG | CM | C_AHL => 1,
            _ => 2,
        }
    }

    /// Rows that only run when requested explicitly.
    pub fn experimental_only(self) -> bool {
        matches!(self, CongruenceId::CR1_1 | CongruenceId::CGZ_P4)
    }

    /// Whether the row needs the eta-product coefficients.
    pub fn needs_eta(self) -> bool {
        matches!(
            self,
            CongruenceId::C1_14b | CongruenceId::C1_14c | CongruenceId::C1_15
        )
    }

    /// Position in registry order.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CongruenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CongruenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CongruenceId::ALL
            .iter()
            .copied()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown congruence id `{s}`")))
    }
}

impl Serialize for CongruenceId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip_in_order() {
        assert_eq!(CongruenceId::ALL.len(), 37);
        for (i, id) in CongruenceId::ALL.iter().enumerate() {
            assert_eq!(id.index(), i);
            assert_eq!(id.name().parse::<CongruenceId>().unwrap(), *id);
        }
        assert!("C9_9".parse::<CongruenceId>().is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(CongruenceId::CR1_1.exponent(5), 3);
        assert_eq!(CongruenceId::CR1_1.exponent(7), 2);
        assert_eq!(CongruenceId::CGZ_P4.exponent(7), 4);
        assert_eq!(CongruenceId::C_AHL.exponent(7), 1);
        assert_eq!(CongruenceId::C1_5.exponent(7), 2);
    }
}
