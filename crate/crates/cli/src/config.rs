//! Key = value config files mirroring the command-line flags.
//!
//! Any long flag may appear as `flag-name = value` (comments start with
//! `#`). Config entries act as defaults: a flag given on the command line
//! wins. The merge happens textually, by appending `--flag=value` tokens
//! before clap parses, so every flag of every subcommand is covered
//! uniformly.

pub fn expand_args(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut out = argv.clone();
    let Some(pos) = argv.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(out);
    };
    let path = if argv[pos] == "--config" {
        argv.get(pos + 1).cloned().ok_or("--config requires a path")?
    } else {
        argv[pos]["--config=".len()..].to_string()
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("{path}:{}: expected `key = value`", lineno + 1));
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || key == "config" {
            continue;
        }
        let flag = format!("--{key}");
        let already = out
            .iter()
            .any(|a| a == &flag || a.starts_with(&format!("{flag}=")));
        if !already {
            out.push(format!("{flag}={value}"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn config_fills_missing_flags_only() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# defaults\ngamma = 0.5\nlambda = 1.0\n").unwrap();
        let path = f.path().to_str().unwrap().to_string();
        let argv: Vec<String> = ["blockent", "xy-entropy", "--config", &path, "--gamma", "0.25"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let out = expand_args(argv).unwrap();
        assert!(out.contains(&"--lambda=1.0".to_string()));
        assert!(!out.iter().any(|a| a == "--gamma=0.5"));
    }
}
