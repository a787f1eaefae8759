//! Presentation file format: a header line `d alpha`, then one generator per
//! line as `d` space-separated integers. Lines starting with `#` and blank
//! lines are ignored.

use asreg_core::lattice::IntVec;

use crate::CliError;

pub fn parse(text: &str) -> Result<(usize, u64, Vec<IntVec>), CliError> {
    let mut header: Option<(usize, u64)> = None;
    let mut gens: Vec<IntVec> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if tokens.len() != 2 {
                    return Err(CliError::Input(format!(
                        "line {}: header must be `d alpha`, got {} token(s)",
                        idx + 1,
                        tokens.len()
                    )));
                }
                let dim: usize = tokens[0].parse().map_err(|_| {
                    CliError::Input(format!("line {}: invalid dimension {:?}", idx + 1, tokens[0]))
                })?;
                let alpha: u64 = tokens[1].parse().map_err(|_| {
                    CliError::Input(format!("line {}: invalid alpha {:?}", idx + 1, tokens[1]))
                })?;
                if dim == 0 || alpha == 0 {
                    return Err(CliError::Input(format!(
                        "line {}: dimension and alpha must be positive",
                        idx + 1
                    )));
                }
                header = Some((dim, alpha));
            }
            Some((dim, _)) => {
                if tokens.len() != dim {
                    return Err(CliError::Input(format!(
                        "line {}: generator needs {dim} coordinates, got {}",
                        idx + 1,
                        tokens.len()
                    )));
                }
                let coords: Result<Vec<i64>, CliError> = tokens
                    .iter()
                    .map(|t| {
                        t.parse::<i64>().map_err(|_| {
                            CliError::Input(format!(
                                "line {}: invalid coordinate {t:?}",
                                idx + 1
                            ))
                        })
                    })
                    .collect();
                gens.push(IntVec::from_i64(&coords?));
            }
        }
    }

    let (dim, alpha) =
        header.ok_or_else(|| CliError::Input("input has no header line".into()))?;
    Ok((dim, alpha, gens))
}
