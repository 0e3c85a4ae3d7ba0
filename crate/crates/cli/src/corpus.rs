//! Golden corpus. Each case `NAME.args` holds one argument per line; its expected
//! transcript is `NAME.golden`, and any file the case writes (e.g. `--svg x.svg`)
//! is compared against the file of that name in the corpus directory.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::{run, Output};

fn transcript(o: &Output) -> String {
    format!("exit {}\n--- stdout\n{}--- stderr\n{}", o.code, o.stdout, o.stderr)
}

pub fn run_dir(dir: &Path, bless: bool, _out: &mut Output) -> Result<Value, String> {
    let mut cases: Vec<_> = fs::read_dir(dir)
        .map_err(|e| format!("cannot read {}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "args"))
        .collect();
    cases.sort();
    if cases.is_empty() {
        return Err(format!("no .args files in {}", dir.display()));
    }
    let mut failed = Vec::new();
    for case in &cases {
        let name = case.file_stem().unwrap().to_string_lossy().to_string();
        let text = fs::read_to_string(case).map_err(|e| e.to_string())?;
        let args = std::iter::once("trop".to_string())
            .chain(text.lines().filter(|l| !l.is_empty()).map(str::to_string));
        let o = run(args);
        let mut produced = vec![(dir.join(format!("{name}.golden")), transcript(&o))];
        produced.extend(o.files.iter().map(|(p, c)| (dir.join(p), c.clone())));
        for (path, content) in produced {
            if bless {
                fs::write(&path, &content).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            } else if fs::read_to_string(&path).ok().as_deref() != Some(content.as_str()) {
                failed.push(format!("{name} ({})", path.file_name().unwrap().to_string_lossy()));
            }
        }
    }
    if !failed.is_empty() {
        return Err(format!("{} corpus mismatch(es): {}", failed.len(), failed.join(", ")));
    }
    Ok(json!({ "cases": cases.len(), "blessed": bless }))
}
