//! Textual generating-function specs.
//!
//! ```text
//! constant | power(b) | doob_factor | ratio(k) | table(p:v, p:v, ...) | natural
//! ```
//!
//! `natural` depends on a family and is resolved by the caller.

use bgl_core::psi::PsiFunction;

#[derive(Debug, Clone, PartialEq)]
pub enum PsiSpec {
    Constant,
    Power(f64),
    DoobFactor,
    Ratio(f64),
    Table(Vec<(f64, f64)>),
    Natural,
}

impl PsiSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let text = text.trim();
        let (name, args) = match text.find('(') {
            Some(i) => {
                let inner = text[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| format!("unclosed argument list in '{text}'"))?;
                (text[..i].trim(), Some(inner.trim()))
            }
            None => (text, None),
        };
        let number = |a: Option<&str>| -> Result<f64, String> {
            let a = a.ok_or_else(|| format!("'{name}' takes one numeric argument"))?;
            a.parse::<f64>().map_err(|_| format!("'{a}' is not a number"))
        };
        let no_args = |spec: PsiSpec| -> Result<PsiSpec, String> {
            match args {
                None => Ok(spec),
                Some(_) => Err(format!("'{name}' takes no arguments")),
            }
        };
        match name {
            "constant" => no_args(PsiSpec::Constant),
            "doob_factor" => no_args(PsiSpec::DoobFactor),
            "natural" => no_args(PsiSpec::Natural),
            "power" => Ok(PsiSpec::Power(number(args)?)),
            "ratio" => Ok(PsiSpec::Ratio(number(args)?)),
            "table" => {
                let body = args.ok_or("'table' needs p:value pairs")?;
                let pairs = body
                    .split(',')
                    .map(|pair| {
                        let (p, v) = pair.split_once(':').ok_or_else(|| format!("'{}' is not p:value", pair.trim()))?;
                        let p = p.trim().parse::<f64>().map_err(|_| format!("bad exponent '{}'", p.trim()))?;
                        let v = v.trim().parse::<f64>().map_err(|_| format!("bad value '{}'", v.trim()))?;
                        Ok((p, v))
                    })
                    .collect::<Result<Vec<_>, String>>()?;
                Ok(PsiSpec::Table(pairs))
            }
            other => Err(format!("unknown generating function '{other}'")),
        }
    }

    /// Builds a family-independent spec.
    pub fn build(&self) -> bgl_core::Result<PsiFunction> {
        match self {
            PsiSpec::Constant => Ok(PsiFunction::constant()),
            PsiSpec::Power(b) => PsiFunction::power(*b),
            PsiSpec::DoobFactor => Ok(PsiFunction::doob_factor()),
            PsiSpec::Ratio(k) => PsiFunction::ratio(*k),
            PsiSpec::Table(t) => PsiFunction::table(t),
            PsiSpec::Natural => Err(bgl_core::Error::Precondition(
                "the natural function needs a family; use it where one is loaded".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        assert_eq!(PsiSpec::parse("constant").unwrap(), PsiSpec::Constant);
        assert_eq!(PsiSpec::parse(" power( 0.5 ) ").unwrap(), PsiSpec::Power(0.5));
        assert_eq!(PsiSpec::parse("ratio(2)").unwrap(), PsiSpec::Ratio(2.0));
        assert_eq!(PsiSpec::parse("doob_factor").unwrap(), PsiSpec::DoobFactor);
        assert_eq!(PsiSpec::parse("natural").unwrap(), PsiSpec::Natural);
        assert_eq!(
            PsiSpec::parse("table(1.5:1, 4:2.5)").unwrap(),
            PsiSpec::Table(vec![(1.5, 1.0), (4.0, 2.5)])
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "power", "power(x)", "power(1", "constant(1)", "table(1.5)", "gauss(1)"] {
            assert!(PsiSpec::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn builds() {
        assert_eq!(PsiSpec::Power(1.0).build().unwrap().eval(3.0).unwrap(), 3.0);
        assert!(PsiSpec::Natural.build().is_err());
        assert!(PsiSpec::Ratio(-1.0).build().is_err());
    }
}
