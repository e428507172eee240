//! `--config FILE` expansion.
//!
//! Each `key=value` line becomes `--key=value` right after the subcommand
//! path, unless the same flag is already on the command line, which then
//! wins. Keys are the long flag names; `_` and `-` are interchangeable.

use clap::{Arg, Command, CommandFactory};

use crate::args::Cli;
use crate::error::{usage, CliError, CliResult};

pub fn expand(mut argv: Vec<String>) -> CliResult<Vec<String>> {
    let Some(path) = take_config(&mut argv)? else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
        path: path.clone().into(),
        source,
    })?;
    let root = Cli::command();
    let (leaf, at) = subcommand_path(&root, &argv);
    let mut seen = Vec::new();
    let mut extra = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return usage(format!("{path}:{}: expected key=value", lineno + 1));
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        let Some(arg) = lookup(&root, leaf, &key) else {
            return usage(format!("{path}:{}: unknown key `{key}`", lineno + 1));
        };
        if seen.contains(&key) {
            return usage(format!("{path}:{}: duplicate key `{key}`", lineno + 1));
        }
        seen.push(key.clone());
        if given(&argv, &key) {
            continue;
        }
        if arg.get_action().takes_values() {
            extra.push(format!("--{key}={value}"));
        } else {
            match value {
                "true" => extra.push(format!("--{key}")),
                "false" => {}
                other => {
                    return usage(format!(
                        "{path}:{}: `{key}` expects true or false, got `{other}`",
                        lineno + 1
                    ))
                }
            }
        }
    }
    argv.splice(at..at, extra);
    Ok(argv)
}

fn take_config(argv: &mut Vec<String>) -> CliResult<Option<String>> {
    let mut found = None;
    let mut i = 1;
    while i < argv.len() {
        let value = if argv[i] == "--config" {
            if i + 1 >= argv.len() {
                return usage("--config needs a file");
            }
            let v = argv.remove(i + 1);
            argv.remove(i);
            v
        } else if let Some(v) = argv[i].strip_prefix("--config=") {
            let v = v.to_string();
            argv.remove(i);
            v
        } else {
            i += 1;
            continue;
        };
        if found.replace(value).is_some() {
            return usage("--config given more than once");
        }
    }
    Ok(found)
}

/// Deepest subcommand named on the command line and the index just past it.
fn subcommand_path<'a>(root: &'a Command, argv: &[String]) -> (&'a Command, usize) {
    let mut cmd = root;
    let mut at = 1;
    for (i, tok) in argv.iter().enumerate().skip(1) {
        if tok.starts_with('-') {
            continue;
        }
        match cmd.find_subcommand(tok) {
            Some(sub) => {
                cmd = sub;
                at = i + 1;
            }
            None => break,
        }
    }
    (cmd, at)
}

fn lookup<'a>(root: &'a Command, leaf: &'a Command, key: &str) -> Option<&'a Arg> {
    if matches!(key, "config" | "help" | "version") {
        return None;
    }
    let find = |c: &'a Command| c.get_arguments().find(|a| a.get_long() == Some(key));
    find(leaf).or_else(|| find(root).filter(|a| a.is_global_set()))
}

fn given(argv: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    argv.iter()
        .any(|t| *t == flag || t.strip_prefix(&flag).is_some_and(|r| r.starts_with('=')))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn with_config(body: &str, cmd: &str) -> CliResult<Vec<String>> {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(body.as_bytes()).unwrap();
        let p = f.path().to_str().unwrap().to_string();
        expand(argv(&format!("{cmd} --config {p}")))
    }

    #[test]
    fn keys_expand_after_subcommand() {
        let out = with_config("# minimal\ng=2\nm1 = 2\nm2=6 # trailing\n", "orbitsym foliation info").unwrap();
        assert_eq!(out, argv("orbitsym foliation info --g=2 --m1=2 --m2=6"));
    }

    #[test]
    fn command_line_wins() {
        let out = with_config("g=2\nm1=2\nm2=6\n", "orbitsym foliation info --g 4").unwrap();
        assert_eq!(out, argv("orbitsym foliation info --m1=2 --m2=6 --g 4"));
    }

    #[test]
    fn flags_and_underscores() {
        let out = with_config(
            "m=2\nk=2\nverify=true\nspin=false\nsequential=true\n",
            "orbitsym clifford",
        )
        .unwrap();
        assert_eq!(out, argv("orbitsym clifford --m=2 --k=2 --verify --sequential"));
        let out = with_config("h_tilde=-1\n", "orbitsym curve sweep").unwrap();
        assert_eq!(out, argv("orbitsym curve sweep --h-tilde=-1"));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(with_config("bogus=1\n", "orbitsym foliation info").is_err());
        assert!(with_config("g\n", "orbitsym foliation info").is_err());
        assert!(with_config("g=1\ng=2\n", "orbitsym foliation info").is_err());
        assert!(with_config("verify=yes\n", "orbitsym clifford").is_err());
        assert!(with_config("config=x\n", "orbitsym clifford").is_err());
        // keys of another subcommand are unknown here
        assert!(with_config("n-dirs=8\n", "orbitsym curve shoot").is_err());
    }
}
