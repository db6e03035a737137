use std::fs;
use std::path::PathBuf;

use clap::{ArgGroup, Args};

use valency::treebank::beta_to_unicode;

use crate::{write_stdout, Failure, Status};

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["text", "file"])))]
pub struct BetaCodeArgs {
    /// Beta Code string
    text: Option<String>,
    /// Transcode a file line by line; failing lines come out empty
    #[arg(long)]
    file: Option<PathBuf>,
}

pub fn run(args: BetaCodeArgs) -> Result<Status, Failure> {
    if let Some(text) = args.text {
        let greek = beta_to_unicode(&text).map_err(|e| Failure::new(e.to_string()))?;
        write_stdout(&format!("{greek}\n"))?;
        return Ok(Status::Ok);
    }
    let path = args.file.expect("clap requires text or file");
    let input = fs::read_to_string(&path).map_err(|e| Failure::io(&path, e))?;
    let mut out = String::with_capacity(input.len() * 2);
    let mut failures = 0;
    for (i, line) in input.lines().enumerate() {
        match beta_to_unicode(line) {
            Ok(greek) => out.push_str(&greek),
            Err(e) => {
                failures += 1;
                eprintln!("warning: {}: line {}: {e}", path.display(), i + 1);
            }
        }
        out.push('\n');
    }
    write_stdout(&out)?;
    Ok(if failures == 0 {
        Status::Ok
    } else {
        Status::Partial
    })
}
