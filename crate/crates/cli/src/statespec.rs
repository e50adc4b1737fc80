//! Text forms accepted wherever the CLI expects a state.
//!
//! - `N; re,im; re,im; ...`   inline amplitudes, index 0 = `|0,N>`
//! - `(a, b, c, ...)`         real amplitudes, `N` = count - 1
//! - `coherent:N,theta,phi`   angles in the active unit
//! - `noon:N`, `fock:N,n`, `eta:N,+` / `eta:N,-`
//! - `orbit2:theta`, `orbit3:theta2,theta3,phi3`

use su2limits::orbits::{orbit_state_n2, orbit_state_n3};
use su2limits::{Error, EtaBranch, Result, TwoModeState};

use crate::Unit;

pub fn parse_state(spec: &str, unit: Unit) -> Result<TwoModeState> {
    let spec = spec.trim();
    if let Some(inner) = spec.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        let values = numbers(inner)?;
        if values.is_empty() {
            return Err(Error::Parse("empty amplitude tuple".into()));
        }
        return TwoModeState::from_real(values.len() - 1, &values);
    }
    if spec.contains(';') {
        return spec.parse();
    }
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let args: Vec<&str> = args.split(',').map(str::trim).collect();
    let arity = |k: usize| {
        if args.len() == k && args.iter().all(|a| !a.is_empty()) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "{name} takes {k} argument(s), got {spec:?}"
            )))
        }
    };
    match name.trim() {
        "coherent" => {
            arity(3)?;
            TwoModeState::su2_coherent(
                count(args[0])?,
                unit.to_rad(number(args[1])?),
                unit.to_rad(number(args[2])?),
            )
        }
        "noon" => {
            arity(1)?;
            TwoModeState::noon(count(args[0])?)
        }
        "fock" => {
            arity(2)?;
            TwoModeState::fock(count(args[0])?, count(args[1])?)
        }
        "eta" => {
            arity(2)?;
            let branch = match args[1] {
                "+" | "plus" => EtaBranch::Plus,
                "-" | "minus" => EtaBranch::Minus,
                other => {
                    return Err(Error::Parse(format!(
                        "eta branch must be + or -, got {other:?}"
                    )))
                }
            };
            TwoModeState::eta(count(args[0])?, branch)
        }
        "orbit2" => {
            arity(1)?;
            orbit_state_n2(unit.to_rad(number(args[0])?))
        }
        "orbit3" => {
            arity(3)?;
            let [a, b, c] = [0, 1, 2].map(|i| number(args[i]));
            orbit_state_n3(unit.to_rad(a?), unit.to_rad(b?), unit.to_rad(c?))
        }
        _ => Err(Error::Parse(format!("unrecognised state {spec:?}"))),
    }
}

fn number(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

fn count(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad photon number {s:?}")))
}

pub fn numbers(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(number)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_inline_forms() {
        let eta = parse_state("eta:3,+", Unit::Deg).unwrap();
        assert!((eta.amplitudes()[3].re - 0.953021).abs() < 1e-6);

        let south = parse_state("2; 1,0; 0,0; 0,0", Unit::Deg).unwrap();
        assert_eq!(south.n_photons(), 2);

        let tuple = parse_state("(0, 0.5704, 0.7914, 0.2199)", Unit::Deg).unwrap();
        assert_eq!(tuple.n_photons(), 3);

        let deg = parse_state("coherent:2,90,0", Unit::Deg).unwrap();
        let rad = parse_state("coherent:2,1.5707963267948966,0", Unit::Rad).unwrap();
        assert!(deg.fidelity(&rad).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn malformed_specs() {
        for bad in [
            "",
            "noon",
            "noon:x",
            "eta:3,?",
            "coherent:2,1",
            "(,)",
            "2; 1,0; x,0; 0,0",
            "blob:1",
        ] {
            assert!(
                matches!(parse_state(bad, Unit::Rad), Err(Error::Parse(_))),
                "{bad}"
            );
        }
        assert_eq!(parse_state("(0, 0)", Unit::Rad), Err(Error::Unnormalizable));
    }
}
