//! Potential specification strings:
//! `powerlaw:N=<real>[,gamma=<real>]` | `sho_shifted` |
//! `box:half_width=<real>` | `file:<path>` with two ascending columns x, V.

use anyhow::{bail, Context, Result};
use std::fs;

use sumrules_core::potential::{Potential, SampledPotential};

pub fn parse_potential(spec: &str) -> Result<Potential> {
    let spec = spec.trim();
    if spec == "sho_shifted" {
        return Ok(Potential::ShiftedOscillator);
    }
    if let Some(rest) = spec.strip_prefix("powerlaw:") {
        let mut n = None;
        let mut gamma = 1.0;
        for part in rest.split(',') {
            let (key, value) = part
                .split_once('=')
                .with_context(|| format!("expected key=value in `{part}`"))?;
            let value: f64 = value
                .trim()
                .parse()
                .with_context(|| format!("bad number `{value}`"))?;
            match key.trim() {
                "N" => n = Some(value),
                "gamma" => gamma = value,
                other => bail!("unknown power-law key `{other}` (expected N or gamma)"),
            }
        }
        let n = n.context("powerlaw spec needs N=<real>")?;
        return Ok(Potential::power_law(n, gamma)?);
    }
    if let Some(rest) = spec.strip_prefix("box:") {
        let (key, value) = rest
            .split_once('=')
            .context("box spec needs half_width=<real>")?;
        if key.trim() != "half_width" {
            bail!("unknown box key `{key}`");
        }
        let half_width: f64 = value.trim().parse().context("bad half_width")?;
        return Ok(Potential::box_well(half_width)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read samples `{path}`"))?;
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split([',', ' ', '\t']).filter(|s| !s.is_empty());
            let x: f64 = cols
                .next()
                .with_context(|| format!("line {}: missing x", lineno + 1))?
                .parse()
                .with_context(|| format!("line {}: bad x", lineno + 1))?;
            let v: f64 = cols
                .next()
                .with_context(|| format!("line {}: missing V", lineno + 1))?
                .parse()
                .with_context(|| format!("line {}: bad V", lineno + 1))?;
            xs.push(x);
            vs.push(v);
        }
        return Ok(Potential::Custom(SampledPotential::new(xs, vs)?));
    }
    bail!(
        "unrecognized potential `{spec}`; expected powerlaw:N=<real>[,gamma=<real>], \
         sho_shifted, box:half_width=<real>, or file:<path>"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_grammar() {
        assert!(matches!(
            parse_potential("sho_shifted").unwrap(),
            Potential::ShiftedOscillator
        ));
        match parse_potential("powerlaw:N=4").unwrap() {
            Potential::PowerLaw(p) => {
                assert_eq!(p.exponent, 4.0);
                assert_eq!(p.strength, 1.0);
            }
            other => panic!("{other:?}"),
        }
        match parse_potential("powerlaw:N=1.5,gamma=2").unwrap() {
            Potential::PowerLaw(p) => assert_eq!(p.strength, 2.0),
            other => panic!("{other:?}"),
        }
        match parse_potential("box:half_width=1.5707963267948966").unwrap() {
            Potential::Box { half_width } => assert!((half_width - std::f64::consts::FRAC_PI_2).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert!(parse_potential("powerlaw:M=4").is_err());
        assert!(parse_potential("nonsense").is_err());
        assert!(parse_potential("powerlaw:N=-1").is_err());
    }

    #[test]
    fn reads_sampled_files() {
        let dir = std::env::temp_dir().join("sumrules_spec_string_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("well.csv");
        let mut body = String::from("# x, V\n");
        for i in 0..400 {
            let x = 0.02 * i as f64;
            body.push_str(&format!("{x}, {}\n", x * x));
        }
        std::fs::write(&path, body).unwrap();
        let pot = parse_potential(&format!("file:{}", path.display())).unwrap();
        assert!((pot.value(1.0) - 1.0).abs() < 1e-3);
    }
}
