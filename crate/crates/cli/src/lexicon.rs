use std::fs;
use std::path::PathBuf;

use clap::{ArgGroup, Args};

use valency::lexicon::{
    constructions_for_verb, diff_constructions, frame_frequencies, query_entries, read_lexicon,
    stats_basic, stats_by_author, write_lexicon, ConstructionRecord, Layout, Lexicon, QueryFilter,
};
use valency::treebank::Voice;

use crate::{write_stdout, Failure, LexiconInput, Status};

fn load(input: &LexiconInput) -> Result<(Lexicon, Status), Failure> {
    let (lexicon, errors) =
        read_lexicon(&input.lexicon, input.lenient).map_err(|e| Failure::io(&input.lexicon, e))?;
    for e in &errors {
        eprintln!(
            "warning: {}: line {}: {}",
            input.lexicon.display(),
            e.line,
            e.message
        );
    }
    let status = if errors.is_empty() {
        Status::Ok
    } else {
        Status::Partial
    };
    Ok((lexicon, status))
}

#[derive(Args)]
#[command(group(ArgGroup::new("table").required(true).args(["basic", "by_author", "frames"])))]
pub struct StatsArgs {
    #[command(flatten)]
    input: LexiconInput,
    /// Entry, verb, frame and frame-filler counts
    #[arg(long)]
    basic: bool,
    /// Entries per author with a TOTAL row
    #[arg(long)]
    by_author: bool,
    /// The K most frequent frames
    #[arg(long, value_name = "K")]
    frames: Option<usize>,
}

pub fn stats(args: StatsArgs) -> Result<Status, Failure> {
    let (lex, status) = load(&args.input)?;
    let mut out = String::new();
    if args.basic {
        let b = stats_basic(&lex);
        out.push_str("statistic\tcount\n");
        out.push_str(&format!("entries\t{}\n", b.entries));
        out.push_str(&format!("unique_verb_lemmas\t{}\n", b.unique_verb_lemmas));
        out.push_str(&format!("unique_frames\t{}\n", b.unique_frames));
        out.push_str(&format!(
            "unique_frame_fillers\t{}\n",
            b.unique_frame_fillers
        ));
    } else if args.by_author {
        let counts = stats_by_author(&lex);
        out.push_str("author\tentries\n");
        for (author, n) in &counts.rows {
            out.push_str(&format!("{author}\t{n}\n"));
        }
        out.push_str(&format!("TOTAL\t{}\n", counts.total));
    } else if let Some(k) = args.frames {
        out.push_str("rank\tframe\tcount\n");
        for (i, (frame, n)) in frame_frequencies(&lex, k).iter().enumerate() {
            out.push_str(&format!("{}\t{frame}\t{n}\n", i + 1));
        }
    }
    write_stdout(&out)?;
    Ok(status)
}

#[derive(Args)]
pub struct QueryArgs {
    #[command(flatten)]
    input: LexiconInput,
    #[arg(long)]
    verb: Option<String>,
    #[arg(long)]
    author: Option<String>,
    #[arg(long)]
    title: Option<String>,
    /// active, passive, middle, medio-passive or unspecified
    #[arg(long)]
    voice: Option<String>,
    /// Substring of the frame string
    #[arg(long)]
    frame_contains: Option<String>,
    /// A case, mood or "adverb" realized by some slot
    #[arg(long)]
    realization: Option<String>,
    /// Preposition or conjunction lemma mediating some slot
    #[arg(long)]
    mediator: Option<String>,
}

pub fn query(args: QueryArgs) -> Result<Status, Failure> {
    let voice = match &args.voice {
        Some(v) => {
            Some(Voice::from_name(v).ok_or_else(|| Failure::new(format!("unknown voice {v:?}")))?)
        }
        None => None,
    };
    let (lex, status) = load(&args.input)?;
    let filter = QueryFilter {
        verb: args.verb,
        author: args.author,
        title: args.title,
        voice,
        frame_contains: args.frame_contains,
        realization: args.realization,
        mediator: args.mediator,
    };
    let hits: Vec<_> = query_entries(&lex, &filter).into_iter().cloned().collect();
    let empty = hits.is_empty();
    let mut buf = Vec::new();
    write_lexicon(&Lexicon::new(hits), &mut buf, Layout::Full)
        .map_err(|e| Failure::new(format!("writing output: {e}")))?;
    write_stdout(&String::from_utf8_lossy(&buf))?;
    Ok(if empty { Status::Empty } else { status })
}

#[derive(Args)]
pub struct ConstructionsArgs {
    #[command(flatten)]
    input: LexiconInput,
    #[arg(long)]
    verb: String,
    #[arg(long, default_value_t = 1)]
    min_count: usize,
    #[arg(long, default_value_t = 1)]
    min_authors: usize,
    /// File of frames already known for the verb, one per line; prints the
    /// differences in both directions instead
    #[arg(long)]
    known_frames: Option<PathBuf>,
}

fn record_row(side: Option<&str>, c: &ConstructionRecord) -> String {
    let authors: Vec<&str> = c.authors.iter().map(String::as_str).collect();
    let prefix = side.map(|s| format!("{s}\t")).unwrap_or_default();
    format!("{prefix}{}\t{}\t{}\n", c.frame, c.count, authors.join(","))
}

pub fn constructions(args: ConstructionsArgs) -> Result<Status, Failure> {
    let known = match &args.known_frames {
        Some(path) => Some(
            fs::read_to_string(path)
                .map_err(|e| Failure::io(path, e))?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from)
                .collect::<Vec<_>>(),
        ),
        None => None,
    };
    let (lex, status) = load(&args.input)?;
    let keep =
        |c: &ConstructionRecord| c.count >= args.min_count && c.authors.len() >= args.min_authors;
    let (out, empty) = match known {
        None => {
            let records =
                constructions_for_verb(&lex, &args.verb, args.min_count, args.min_authors);
            let mut out = String::from("frame\tcount\tauthors\n");
            for c in &records {
                out.push_str(&record_row(None, c));
            }
            (out, records.is_empty())
        }
        Some(known) => {
            let diff = diff_constructions(&lex, &args.verb, &known);
            let lexicon_side: Vec<_> = diff.only_in_lexicon.iter().filter(|c| keep(c)).collect();
            let mut out = String::from("side\tframe\tcount\tauthors\n");
            for c in &lexicon_side {
                out.push_str(&record_row(Some("only_in_lexicon"), c));
            }
            for f in &diff.only_in_known {
                out.push_str(&format!("only_in_known\t{f}\t\t\n"));
            }
            (
                out,
                lexicon_side.is_empty() && diff.only_in_known.is_empty(),
            )
        }
    };
    write_stdout(&out)?;
    Ok(if empty { Status::Empty } else { status })
}
