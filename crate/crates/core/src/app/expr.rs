//! A small expression language for maps and pipelines.
//!
//! ```text
//! expr     := atom | shear | convolve
//! atom     := name [ "(" [ number ] ")" ]
//! shear    := "shear(" expr [ ", omega=" dilatation ] [ ", gamma=" number ] ")"
//! convolve := "convolve(" expr "," expr ")"
//! number   := pi, decimals, + - * /, unary minus, parentheses
//! ```
//!
//! Recognized calls: `f_alpha(a)`, `f_theta(t)`, `koebe_shear`, `slanted(s)`,
//! `phi_beta(b)`, `identity`, `linear`, `strip`, `z`,
//! `shear(<prefunction>, omega=<dilatation>, gamma=<angle>)` and
//! `convolve(<map or series>, <series>)`. The `omega` value is taken verbatim
//! up to the next top-level comma, so `omega=mobius:a=0.3` works.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::Error;
use crate::families::{
    f_alpha_prefunction, f_theta_prefunction, koebe_shear_prefunction, phi_beta, slanted_halfplane_prefunction,
    strip_map, Dilatation,
};
use crate::harmonic::{shear_construct, Direction, HarmonicMap};
use crate::series::TruncatedSeries;

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Atom { name: String, param: Option<f64> },
    Shear { prefunction: Box<Expr>, omega: Dilatation, gamma: f64 },
    Convolve { map: Box<Expr>, phi: Box<Expr> },
}

/// Result of evaluating an [`Expr`] at a given order.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Series(TruncatedSeries),
    /// A harmonic map, with the direction it was sheared along if any.
    Map { map: HarmonicMap, gamma: Option<Direction> },
}

impl Value {
    /// The harmonic map, promoting a series `F` to the analytic map `F + conj(0)`.
    pub fn to_map(&self) -> crate::Result<HarmonicMap> {
        match self {
            Value::Series(s) => HarmonicMap::analytic(s.clone()),
            Value::Map { map, .. } => Ok(map.clone()),
        }
    }

    /// The series itself, or for a map the prefunction `h - e^{2i gamma} g`
    /// along `gamma` (defaulting to the shear direction).
    pub fn to_series(&self, gamma: Option<Direction>) -> TruncatedSeries {
        match self {
            Value::Series(s) => s.clone(),
            Value::Map { map, gamma: own } => {
                let d = gamma.or(*own).unwrap_or(Direction::IMAGINARY_AXIS);
                map.analytic_prefunction(d)
            }
        }
    }

    pub fn gamma(&self) -> Option<Direction> {
        match self {
            Value::Series(_) => None,
            Value::Map { gamma, .. } => *gamma,
        }
    }
}

const ATOMS_WITH_PARAM: [&str; 4] = ["f_alpha", "f_theta", "slanted", "phi_beta"];
const ATOMS_BARE: [&str; 5] = ["koebe_shear", "identity", "linear", "strip", "z"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        if self.eat(ch) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |c| format!("'{c}'"));
            self.err(self.pos, format!("expected '{ch}', found {found}"))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 || self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            return self.err(start, "expected a name");
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn call(&mut self) -> Result<Expr, ParseError> {
        let (start, name) = self.ident()?;
        match name {
            "shear" => self.shear(),
            "convolve" => {
                self.expect('(')?;
                let map = self.call()?;
                self.expect(',')?;
                let phi = self.call()?;
                self.expect(')')?;
                Ok(Expr::Convolve {
                    map: Box::new(map),
                    phi: Box::new(phi),
                })
            }
            _ if ATOMS_WITH_PARAM.contains(&name) => {
                self.expect('(')?;
                let param = self.number()?;
                self.expect(')')?;
                Ok(Expr::Atom {
                    name: name.to_string(),
                    param: Some(param),
                })
            }
            _ if ATOMS_BARE.contains(&name) => {
                if self.eat('(') {
                    self.expect(')')?;
                }
                Ok(Expr::Atom {
                    name: name.to_string(),
                    param: None,
                })
            }
            _ => self.err(start, format!("unknown function '{name}'")),
        }
    }

    fn shear(&mut self) -> Result<Expr, ParseError> {
        self.expect('(')?;
        let prefunction = self.call()?;
        let mut omega = None;
        let mut gamma = None;
        while self.eat(',') {
            let (at, key) = self.ident()?;
            self.expect('=')?;
            match key {
                "omega" => {
                    self.skip_ws();
                    let vstart = self.pos;
                    let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
                    let text = self.rest()[..len].trim();
                    self.pos += len;
                    omega = Some(
                        text.parse::<Dilatation>()
                            .or_else(|e| self.err(vstart, e.to_string()))?,
                    );
                }
                "gamma" => gamma = Some(self.number()?),
                _ => return self.err(at, format!("unknown shear argument '{key}'")),
            }
        }
        self.expect(')')?;
        Ok(Expr::Shear {
            prefunction: Box::new(prefunction),
            omega: omega.unwrap_or(Dilatation::Zero),
            gamma: gamma.unwrap_or(PI / 2.0),
        })
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += self.term()?;
            } else if self.eat('-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<f64, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc *= self.factor()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.factor()?;
                if d == 0.0 {
                    return self.err(at, "division by zero");
                }
                acc /= d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<f64, ParseError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        if self.eat('+') {
            return self.factor();
        }
        if self.eat('(') {
            let v = self.number()?;
            self.expect(')')?;
            return Ok(v);
        }
        self.skip_ws();
        let start = self.pos;
        if self.rest().starts_with("pi") {
            self.pos += 2;
            return Ok(PI);
        }
        let len = self
            .rest()
            .char_indices()
            .take_while(|&(i, c)| {
                c.is_ascii_digit()
                    || c == '.'
                    || ((c == 'e' || c == 'E') && i > 0)
                    || ((c == '-' || c == '+') && i > 0 && matches!(self.rest().as_bytes()[i - 1], b'e' | b'E'))
            })
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        if len == 0 {
            return self.err(start, "expected a number");
        }
        let text = &self.rest()[..len];
        let v: f64 = text
            .parse()
            .or_else(|_| self.err(start, format!("invalid number '{text}'")))?;
        self.pos += len;
        Ok(v)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err(self.pos, format!("unexpected trailing input '{}'", self.rest()));
        }
        Ok(())
    }
}

/// Parses a map or series expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.call()?;
    p.finish()?;
    Ok(e)
}

/// Parses an angle or other real-valued expression such as `pi/2-0.7854`.
pub fn parse_number(src: &str) -> Result<f64, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let v = p.number()?;
    p.finish()?;
    Ok(v)
}

/// Parses a unimodular constant: a real number (`-1`, `1`) or `cis(<angle>)`
/// for `e^{i angle}`.
pub fn parse_unit(src: &str) -> Result<Complex64, ParseError> {
    let trimmed = src.trim_start();
    let offset = src.len() - trimmed.len();
    if trimmed.starts_with("cis") {
        let mut p = Parser { src, pos: offset + 3 };
        p.expect('(')?;
        let angle = p.number()?;
        p.expect(')')?;
        p.finish()?;
        return Ok(Complex64::from_polar(1.0, angle));
    }
    parse_number(src).map(|x| Complex64::new(x, 0.0))
}

impl Expr {
    pub fn eval(&self, order: usize) -> crate::Result<Value> {
        match self {
            Expr::Atom { name, param } => {
                let p = param.unwrap_or(0.0);
                let s = match name.as_str() {
                    "f_alpha" => f_alpha_prefunction(p, order)?,
                    "f_theta" => f_theta_prefunction(p, order)?,
                    "slanted" => slanted_halfplane_prefunction(p, order)?,
                    "phi_beta" => phi_beta(p, order)?,
                    "koebe_shear" => koebe_shear_prefunction(order),
                    "identity" => TruncatedSeries::hadamard_identity(order),
                    "linear" | "z" => TruncatedSeries::z(order),
                    "strip" => strip_map(order),
                    other => unreachable!("parser admitted unknown atom {other}"),
                };
                Ok(Value::Series(s))
            }
            Expr::Shear {
                prefunction,
                omega,
                gamma,
            } => {
                let pre = match prefunction.eval(order)? {
                    Value::Series(s) => s,
                    Value::Map { .. } => {
                        return Err(Error::NotNormalized {
                            what: "shear prefunction",
                            detail: "expected an analytic series, found a harmonic map".into(),
                        })
                    }
                };
                let d = Direction::new(*gamma)?;
                let map = shear_construct(&pre, &omega.series(order), d)?;
                Ok(Value::Map { map, gamma: Some(d) })
            }
            Expr::Convolve { map, phi } => {
                let phi = match phi.eval(order)? {
                    Value::Series(s) => s,
                    Value::Map { .. } => {
                        return Err(Error::NotNormalized {
                            what: "convolver",
                            detail: "expected an analytic series, found a harmonic map".into(),
                        })
                    }
                };
                match map.eval(order)? {
                    Value::Series(s) => Ok(Value::Series(
                        HarmonicMap::analytic(s)?.harmonic_convolve(&phi)?.h().clone(),
                    )),
                    Value::Map { map, gamma } => Ok(Value::Map {
                        map: map.harmonic_convolve(&phi)?,
                        gamma,
                    }),
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom { name, param: Some(p) } => write!(f, "{name}({p})"),
            Expr::Atom { name, param: None } => f.write_str(name),
            Expr::Shear {
                prefunction,
                omega,
                gamma,
            } => write!(f, "shear({prefunction}, omega={omega}, gamma={gamma})"),
            Expr::Convolve { map, phi } => write!(f, "convolve({map}, {phi})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn numbers() {
        assert_eq!(parse_number("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_number("pi/2-0.7854").unwrap(), PI / 2.0 - 0.7854);
        assert_eq!(parse_number("-1").unwrap(), -1.0);
        assert_eq!(parse_number("2*(1+0.5)").unwrap(), 3.0);
        assert_eq!(parse_number("1e-3").unwrap(), 1e-3);
        assert_eq!(parse_number(" 3 * pi / 4 ").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_number("-pi/4").unwrap(), -PI / 4.0);
    }

    #[test]
    fn number_errors_carry_position() {
        assert_eq!(parse_number("pi/").unwrap_err().position, 3);
        assert_eq!(parse_number("1 2").unwrap_err().position, 2);
        assert_eq!(parse_number("1/0").unwrap_err().position, 2);
    }

    #[test]
    fn unit_constants() {
        assert_eq!(parse_unit("-1").unwrap(), Complex64::new(-1.0, 0.0));
        let w = parse_unit("cis(pi/2)").unwrap();
        assert!((w - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(parse_unit("cis pi").is_err());
    }

    #[test]
    fn shear_expression() {
        let e = parse("shear(f_alpha(0.5), omega=z, gamma=pi/2)").unwrap();
        let Expr::Shear { omega, gamma, .. } = &e else { panic!() };
        assert_eq!(*omega, Dilatation::Monomial { n: 1, lambda: Complex64::new(1.0, 0.0) });
        assert_eq!(*gamma, PI / 2.0);
        let e = parse("shear(koebe_shear, omega=mobius:a=0.3, gamma=0)").unwrap();
        assert!(matches!(e, Expr::Shear { omega: Dilatation::Mobius { .. }, .. }));
    }

    #[test]
    fn nested_convolution() {
        let e = parse("convolve(shear(f_alpha(0), omega=z, gamma=pi/2), phi_beta(0))").unwrap();
        let v = e.eval(64).unwrap();
        let Value::Map { map, gamma } = v else { panic!() };
        assert_eq!(gamma, Some(Direction::IMAGINARY_AXIS));
        assert_eq!(map.order(), 64);
    }

    #[test]
    fn parse_errors() {
        let e = parse("shear(f_alpha(0.5), omega=z, gama=1)").unwrap_err();
        assert_eq!(e.position, 29);
        let e = parse("nope(1)").unwrap_err();
        assert_eq!(e.position, 0);
        let e = parse("f_alpha(0.5").unwrap_err();
        assert_eq!(e.position, 11);
        let e = parse("f_alpha(0.5) extra").unwrap_err();
        assert_eq!(e.position, 13);
        let e = parse("shear(f_alpha(0.5), omega=w)").unwrap_err();
        assert_eq!(e.position, 26);
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "f_alpha(0.5)",
            "koebe_shear",
            "convolve(shear(slanted(0.25), omega=z2, gamma=1.25), strip)",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn construction_errors_are_not_parse_errors() {
        let e = parse("f_alpha(2)").unwrap();
        assert!(e.eval(16).is_err());
    }
}
