use std::path::Path;

use spectral_cone::inequalities::Spectrum;

use crate::Failure;

/// Reads a spectrum from a JSON file, inline JSON (`[0.5,0.5]`) or a comma
/// list. Unsorted input is sorted with a warning.
pub fn spectrum(arg: &str, name: &str) -> Result<Spectrum, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg)
            .map_err(|e| Failure::Usage(format!("--{name}: cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let values = parse_values(&text).map_err(|e| Failure::Usage(format!("--{name}: {e}")))?;
    if values.windows(2).any(|w| w[0] < w[1]) {
        eprintln!("warning: --{name} was not in non-increasing order; sorted it");
    }
    Spectrum::sorted(values).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn parse_values(text: &str) -> Result<Vec<f64>, String> {
    let t = text.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| e.to_string());
    }
    t.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}")))
        .collect()
}

pub fn read_file(path: &str, flag: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("--{flag}: cannot read {path}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_forms() {
        assert_eq!(
            parse_values("0.5, 0.25,0.25").unwrap(),
            vec![0.5, 0.25, 0.25]
        );
        assert_eq!(parse_values("[1, 0]").unwrap(), vec![1.0, 0.0]);
        assert!(parse_values("1,x").is_err());
    }

    #[test]
    fn sorts_input() {
        let s = spectrum("0.1,0.9", "spectrum").ok().unwrap();
        assert_eq!(s.values(), &[0.9, 0.1]);
    }
}
