//! Text format for cubic forms:
//!
//! ```text
//! surface GF(3^1) vars x y z t
//! x^3 y^0 z^0 t^0 : [1]
//! x^0 y^0 z^1 t^2 : [2]
//! ```
//!
//! Plane cubics use the header `curve GF(p^k) vars x y z`. Omitted monomials
//! are zero; blank lines and lines starting with `#` are ignored.

use crate::algebra::{Form, Gf};
use crate::error::{Error, Result};

use super::{PLANE_VARS, SURFACE_VARS};

pub fn parse_form(text: &str) -> Result<Form> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Invalid("empty form file".into()))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() < 3 || !matches!(words[0], "surface" | "curve") || words[2] != "vars" {
        return Err(Error::Invalid(format!("bad header `{header}`")));
    }
    let field = Gf::parse_literal(words[1])?;
    let vars = &words[3..];
    let expected: &[&str] = match vars.len() {
        4 => &SURFACE_VARS,
        3 => &PLANE_VARS,
        _ => return Err(Error::Invalid(format!("expected 3 or 4 variables, got {}", vars.len()))),
    };
    if vars != expected {
        return Err(Error::Invalid(format!("variables must be `{}`", expected.join(" "))));
    }
    let mut form = Form::zero(&field, vars.len(), 3);
    for line in lines {
        let (mono, coeff) = line
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("expected `monomial : coefficient`, got `{line}`")))?;
        let mut exps = vec![0u8; vars.len()];
        for tok in mono.split_whitespace() {
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<u8>().map_err(|_| Error::Invalid(format!("bad exponent in `{tok}`")))?),
                None => (tok, 1),
            };
            let i = vars
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| Error::Invalid(format!("unknown variable `{name}`")))?;
            exps[i] = exps[i].saturating_add(e);
        }
        if exps.iter().map(|&e| e as usize).sum::<usize>() != 3 {
            return Err(Error::Invalid(format!("monomial `{}` is not of degree 3", mono.trim())));
        }
        let c = field.parse_element(coeff)?;
        let prev = form.coeff(&exps);
        form.set_coeff(&exps, field.add(prev, c))?;
    }
    Ok(form)
}

/// Writes every nonzero coefficient, one monomial per line.
pub fn format_form(form: &Form) -> String {
    let f = form.field();
    let vars: &[&str] = if form.nvars() == 4 { &SURFACE_VARS } else { &PLANE_VARS };
    let kind = if form.nvars() == 4 { "surface" } else { "curve" };
    let mut out = format!("{kind} {} vars {}\n", f.literal(), vars.join(" "));
    for (e, c) in form.terms() {
        if c.is_zero() {
            continue;
        }
        let mono: Vec<String> = vars.iter().zip(e).map(|(v, k)| format!("{v}^{k}")).collect();
        out.push_str(&format!("{} : {}\n", mono.join(" "), f.format_element(c)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::fermat;

    #[test]
    fn round_trip() {
        let f = Gf::new(3, 2).unwrap();
        let mut x = fermat(&f);
        x.set_coeff(&[1, 1, 0, 1], f.generator()).unwrap();
        let text = format_form(&x);
        assert!(text.starts_with("surface GF(3^2) vars x y z t\n"));
        assert_eq!(parse_form(&text).unwrap(), x);
    }

    #[test]
    fn short_monomials_and_comments() {
        let x = parse_form("# fermat\nsurface GF(2) vars x y z t\nx^3 : 1\ny^3 : [1]\nz^3 : 1\nt^3 : 1\n").unwrap();
        assert_eq!(x, fermat(&Gf::prime(2).unwrap()));
        let c = parse_form("curve GF(5^1) vars x y z\nx y z : [4]\n").unwrap();
        assert_eq!(c.nvars(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_form("surface GF(4) vars x y z t\n").is_err());
        assert!(parse_form("surface GF(3) vars x y z t\nx^2 : 1\n").is_err());
        assert!(parse_form("surface GF(3) vars a b c d\n").is_err());
    }
}
