use super::ml::ml_reference;
use crate::error::{Error, Result};
use crate::special_functions::MLArgs;

/// One line of a reference-value file: `name, inputs…, value, precision`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureRecord {
    pub name: String,
    pub inputs: Vec<f64>,
    pub value: f64,
    /// Claimed absolute accuracy of `value`.
    pub precision: f64,
}

impl FixtureRecord {
    pub fn to_line(&self) -> String {
        let mut fields = vec![self.name.clone()];
        fields.extend(self.inputs.iter().map(|v| format!("{v:.17e}")));
        fields.push(format!("{:.17e}", self.value));
        fields.push(format!("{:.3e}", self.precision));
        fields.join(",")
    }

    /// Parses a record; blank lines and `#` comments yield `Ok(None)`.
    pub fn parse_line(line: &str, line_no: usize) -> Result<Option<Self>> {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return Ok(None);
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() < 3 {
            return Err(Error::Parse {
                line: line_no,
                message: "expected name, inputs, value, precision".into(),
            });
        }
        let nums = fields[1..]
            .iter()
            .map(|f| {
                f.parse::<f64>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad number {f:?}: {e}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        let (rest, tail) = nums.split_at(nums.len() - 2);
        Ok(Some(Self {
            name: fields[0].to_string(),
            inputs: rest.to_vec(),
            value: tail[0],
            precision: tail[1],
        }))
    }
}

/// Mittag-Leffler reference records (inputs α, β, z) on a fixed grid that
/// covers the series, asymptotic and contour regimes of the evaluator.
pub fn ml_fixture_records(digits: u32) -> Result<Vec<FixtureRecord>> {
    let alphas = [0.1, 0.3, 0.5, 0.75, 1.0, 1.3, 1.5, 1.8, 2.0];
    let betas = [0.5, 1.0, 1.7, 2.5];
    let zs = [-0.5f64, -2.0, -7.5, -20.0, -30.0, 0.9, 3.0];
    let mut out = Vec::new();
    for &alpha in &alphas {
        for &beta in &betas {
            for &z in &zs {
                // Growth like exp(z^{1/α}) leaves double range long before the
                // series becomes affordable.
                if z > 0.0 && z.powf(1.0 / alpha) > 50.0 {
                    continue;
                }
                let args = MLArgs::new(alpha, beta, z)?;
                let value = match ml_reference(args, digits) {
                    Ok(v) => v,
                    Err(Error::Unsupported(_)) => continue,
                    Err(e) => return Err(e),
                };
                out.push(FixtureRecord {
                    name: "mittag_leffler".into(),
                    inputs: vec![alpha, beta, z],
                    value,
                    precision: value.abs().max(1.0) * 10f64.powi(-(digits.min(17) as i32)),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let r = FixtureRecord {
            name: "x".into(),
            inputs: vec![0.5, -1.25],
            value: std::f64::consts::PI,
            precision: 1e-17,
        };
        let back = FixtureRecord::parse_line(&r.to_line(), 1).unwrap().unwrap();
        assert_eq!(back.inputs, r.inputs);
        assert_eq!(back.value, r.value);
        assert!(FixtureRecord::parse_line("# header", 1).unwrap().is_none());
        assert!(matches!(
            FixtureRecord::parse_line("a,b,c", 7),
            Err(Error::Parse { line: 7, .. })
        ));
    }
}
