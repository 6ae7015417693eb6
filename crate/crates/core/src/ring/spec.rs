use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Descriptor of a finite commutative ring with identity.
///
/// The text form is the grammar accepted by [`FromStr`]:
/// `Z<m>`, `F<p>`, `F<p>^<r>:<modulus>`, `<base>[t]/t^<e>`,
/// `<base>[a1..a<k>]dual` (`<base>[a1]dual` for one generator) and `<spec>x<spec>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Integers modulo `m`.
    Zmod(u64),
    /// Prime field.
    Prime(u64),
    /// `F_p[t]/(modulus)`; `modulus` holds coefficients from degree 0 upward and is monic.
    Extension { p: u64, modulus: Vec<u64> },
    /// `base[t]/(t^exponent)`.
    Truncated { base: Box<RingSpec>, exponent: u32 },
    /// `base[a1..ak]` with all products `ai*aj` zero.
    Dual { base: Box<RingSpec>, generators: u32 },
    Product(Vec<RingSpec>),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime-power factorization `n = prod p^e`, primes ascending.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl RingSpec {
    /// Number of elements, saturating at `u128::MAX`.
    pub fn cardinality(&self) -> u128 {
        match self {
            RingSpec::Zmod(m) | RingSpec::Prime(m) => *m as u128,
            RingSpec::Extension { p, modulus } => {
                (*p as u128).saturating_pow(modulus.len().saturating_sub(1) as u32)
            }
            RingSpec::Truncated { base, exponent } => base.cardinality().saturating_pow(*exponent),
            RingSpec::Dual { base, generators } => base.cardinality().saturating_pow(generators + 1),
            RingSpec::Product(fs) => fs
                .iter()
                .fold(1u128, |acc, f| acc.saturating_mul(f.cardinality())),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Zmod(m) => {
                if *m < 2 {
                    return Err(Error::InvalidSpec(format!("Z{m}: modulus must be at least 2")));
                }
            }
            RingSpec::Prime(p) => {
                if !is_prime(*p) {
                    return Err(Error::InvalidSpec(format!("F{p}: {p} is not prime")));
                }
            }
            RingSpec::Extension { p, modulus } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidSpec(format!("F{p}^..: {p} is not prime")));
                }
                if modulus.len() < 2 {
                    return Err(Error::InvalidSpec("extension degree must be at least 1".into()));
                }
                if *modulus.last().unwrap() != 1 {
                    return Err(Error::InvalidSpec("extension modulus must be monic".into()));
                }
                if modulus.iter().any(|&c| c >= *p) {
                    return Err(Error::InvalidSpec(format!(
                        "modulus coefficients must be reduced below {p}"
                    )));
                }
                if !fp_irreducible(*p, modulus) {
                    return Err(Error::ReducibleModulus(format_modulus(modulus)));
                }
            }
            RingSpec::Truncated { base, exponent } => {
                if *exponent < 2 {
                    return Err(Error::InvalidSpec("nilpotent extension needs t^e with e >= 2".into()));
                }
                base.validate_as_base()?;
            }
            RingSpec::Dual { base, generators } => {
                if *generators < 1 {
                    return Err(Error::InvalidSpec("dual extension needs at least one generator".into()));
                }
                base.validate_as_base()?;
            }
            RingSpec::Product(fs) => {
                if fs.len() < 2 {
                    return Err(Error::InvalidSpec("a product needs at least two factors".into()));
                }
                for f in fs {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }

    fn validate_as_base(&self) -> Result<()> {
        if matches!(self, RingSpec::Product(_)) {
            return Err(Error::InvalidSpec(
                "extensions of product rings are not expressible; extend each factor".into(),
            ));
        }
        self.validate()
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn fp_irreducible(p: u64, modulus: &[u64]) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push(c % p);
                c /= p;
            }
            divisor.push(1);
            if fp_rem(p, modulus, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn fp_rem(p: u64, a: &[u64], monic: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let d = monic.len() - 1;
    while r.len() > d {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for (i, &m) in monic.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * m) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn format_modulus(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{e}"),
        };
        parts.push(match (c, e) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(m) => write!(f, "Z{m}"),
            RingSpec::Prime(p) => write!(f, "F{p}"),
            RingSpec::Extension { p, modulus } => {
                write!(f, "F{p}^{}:{}", modulus.len() - 1, format_modulus(modulus))
            }
            RingSpec::Truncated { base, exponent } => write!(f, "{base}[t]/t^{exponent}"),
            RingSpec::Dual { base, generators: 1 } => write!(f, "{base}[a1]dual"),
            RingSpec::Dual { base, generators } => write!(f, "{base}[a1..a{generators}]dual"),
            RingSpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty ring spec".into()));
        }
        let mut factors = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in s.char_indices() {
            match c {
                '[' => depth += 1,
                ']' => depth -= 1,
                'x' if depth == 0 => {
                    factors.push(parse_factor(&s[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        factors.push(parse_factor(&s[start..])?);
        let spec = if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            RingSpec::Product(factors)
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_uint(s: &str, what: &str) -> Result<u64> {
    s.parse::<u64>()
        .map_err(|_| Error::Parse(format!("expected {what}, found {s:?}")))
}

fn parse_factor(s: &str) -> Result<RingSpec> {
    let base_end = s.find('[').unwrap_or(s.len());
    let (head, mut rest) = s.split_at(base_end);
    let mut spec = if let Some(m) = head.strip_prefix('Z') {
        RingSpec::Zmod(parse_uint(m, "modulus")?)
    } else if let Some(body) = head.strip_prefix('F') {
        match body.split_once('^') {
            None => RingSpec::Prime(parse_uint(body, "prime")?),
            Some((p, tail)) => {
                let (r, poly) = tail
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("missing ':<modulus>' in {head:?}")))?;
                let p = parse_uint(p, "prime")?;
                let r = parse_uint(r, "extension degree")? as usize;
                let modulus = parse_modulus(poly, p)?;
                if modulus.len() != r + 1 {
                    return Err(Error::InvalidSpec(format!(
                        "modulus {poly:?} does not have degree {r}"
                    )));
                }
                RingSpec::Extension { p, modulus }
            }
        }
    } else {
        return Err(Error::Parse(format!("unknown ring {head:?}")));
    };
    while !rest.is_empty() {
        if let Some(tail) = rest.strip_prefix("[t]/t^") {
            let end = tail.find('[').unwrap_or(tail.len());
            let e = parse_uint(&tail[..end], "nilpotency exponent")? as u32;
            spec = RingSpec::Truncated { base: Box::new(spec), exponent: e };
            rest = &tail[end..];
        } else if let Some(tail) = rest.strip_prefix("[a1]dual") {
            spec = RingSpec::Dual { base: Box::new(spec), generators: 1 };
            rest = tail;
        } else if let Some(tail) = rest.strip_prefix("[a1..a") {
            let close = tail
                .find("]dual")
                .ok_or_else(|| Error::Parse(format!("malformed dual suffix {rest:?}")))?;
            let k = parse_uint(&tail[..close], "generator count")? as u32;
            spec = RingSpec::Dual { base: Box::new(spec), generators: k };
            rest = &tail[close + 5..];
        } else {
            return Err(Error::Parse(format!("unexpected suffix {rest:?}")));
        }
    }
    Ok(spec)
}

/// Parses a polynomial in `t` with integer coefficients, reducing modulo `p`.
fn parse_modulus(s: &str, p: u64) -> Result<Vec<u64>> {
    let mut coeffs: Vec<u64> = Vec::new();
    let mut add = |e: usize, c: u64, neg: bool| {
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        let c = c % p;
        coeffs[e] = if neg { (coeffs[e] + p - c) % p } else { (coeffs[e] + c) % p };
    };
    let mut chars = s.char_indices().peekable();
    let mut term_start = 0;
    let mut neg = false;
    let mut terms: Vec<(bool, &str)> = Vec::new();
    while let Some((i, c)) = chars.next() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push((neg, &s[term_start..i]));
            neg = c == '-';
            term_start = i + 1;
        } else if c == '-' && i == 0 {
            neg = true;
            term_start = 1;
        }
    }
    terms.push((neg, &s[term_start..]));
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in modulus {s:?}")));
        }
        let (coeff, mono) = match term.find('t') {
            None => (parse_uint(term, "coefficient")?, 0usize),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let c = if c.is_empty() { 1 } else { parse_uint(c, "coefficient")? };
                let e = match &term[pos + 1..] {
                    "" => 1,
                    rest => parse_uint(
                        rest.strip_prefix('^')
                            .ok_or_else(|| Error::Parse(format!("bad monomial {term:?}")))?,
                        "exponent",
                    )? as usize,
                };
                (c, e)
            }
        };
        add(mono, coeff, neg);
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_examples() {
        for s in ["Z4", "F3", "F2^2:t^2+t+1", "Z4[a1]dual", "Z4[a1..a3]dual", "Z4xF3", "F2[t]/t^2"] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "Z4xF3".parse::<RingSpec>().unwrap(),
            RingSpec::Product(vec![RingSpec::Zmod(4), RingSpec::Prime(3)])
        );
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(matches!("Z1".parse::<RingSpec>(), Err(Error::InvalidSpec(_))));
        assert!(matches!("F4".parse::<RingSpec>(), Err(Error::InvalidSpec(_))));
        assert!(matches!(
            "F2^2:t^2+1".parse::<RingSpec>(),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!("F2[t]/t^1".parse::<RingSpec>(), Err(Error::InvalidSpec(_))));
        assert!("Q7".parse::<RingSpec>().is_err());
    }

    #[test]
    fn irreducibility_by_trial_division() {
        assert!(fp_irreducible(2, &[1, 1, 1]));
        assert!(fp_irreducible(2, &[1, 1, 0, 1]));
        assert!(!fp_irreducible(2, &[1, 0, 1]));
        assert!(fp_irreducible(3, &[1, 0, 1]));
        assert!(!fp_irreducible(5, &[1, 0, 1]));
    }

    #[test]
    fn cardinality_of_composites() {
        let s: RingSpec = "Z4[a1..a2]dualxF3".parse().unwrap();
        assert_eq!(s.cardinality(), 64 * 3);
    }
}
