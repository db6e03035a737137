//! Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unicode_normalization::UnicodeNormalization;

use valency::casestudy::{parse_formula_spans, run_case_study, CaseStudyConfig};
use valency::frames::{extract_entries, ExtractOptions, LexiconEntry};
use valency::lexicon::{
    frame_frequencies, query_entries, read_lexicon, read_lexicon_str, stats_basic, stats_by_author,
    write_lexicon, Layout, Lexicon, QueryFilter,
};
use valency::semantics::{cosine_similarity, load_vector_space, Group};
use valency::stats::{ks_two_sample, significance_stars, KsMethod};
use valency::treebank::{
    beta_to_unicode, load_treebank_dir, parse_manifest, parse_treebank_file, Case, Gender, Mood,
    Number, PartOfSpeech, Person, PosTag, Tense, Voice,
};

enum Verdict {
    Pass(String),
    Skip(String),
}

type Outcome = Result<Verdict, String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(rel)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || {
        format!("took {:.2?}, limit {:.0?}", elapsed, limit)
    })
}

fn golden_entry() -> Outcome {
    let start = Instant::now();
    let bytes = std::fs::read(data("persians_2901046.xml")).map_err(|e| e.to_string())?;
    let parsed = parse_treebank_file(&bytes, None).map_err(|e| e.to_string())?;
    let extraction = extract_entries(&parsed.sentences, ExtractOptions::default());
    let elapsed = start.elapsed();
    let got = &extraction.entries;
    check(got.len() == 1, || {
        format!("{} entries, expected 1", got.len())
    })?;
    let e = &got[0];
    let expected = (
        "Aeschylus",
        "Persians",
        "703-706",
        "ἀνθίστημι",
        "medio-passive",
        2901046u64,
        "medio-passive_OBJ[dative],SBJ[nominative]",
        "medio-passive_OBJ[dative]{σύ},SBJ[nominative]{δέος}",
    );
    let actual = (
        e.author.as_str(),
        e.title.as_str(),
        e.subdoc.as_str(),
        e.verb.as_str(),
        e.voice.name(),
        e.sentence_id,
        e.frame.as_str(),
        e.frame_fillers.as_str(),
    );
    check(actual == expected, || format!("got {actual:?}"))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(Verdict::Pass(format!(
        "{} in {:.1?}",
        e.frame_fillers, elapsed
    )))
}

const POS: &str = "-nvtadlgcrpmiuex";
const PERSON: &str = "-123";
const NUMBER: &str = "-sdp";
const TENSE: &str = "-pirltfa";
const MOOD: &str = "-isonmp";
const VOICE: &str = "-apme";
const GENDER: &str = "-mfn";
const CASE: &str = "-ngdav";
const DEGREE: &str = "-cs";

fn postags() -> Outcome {
    let tag = PosTag::decode("v3spie---").map_err(|e| e.to_string())?;
    check(
        (
            tag.pos, tag.person, tag.number, tag.tense, tag.mood, tag.voice,
        ) == (
            PartOfSpeech::Verb,
            Person::Third,
            Number::Singular,
            Tense::Present,
            Mood::Indicative,
            Voice::MedioPassive,
        ) && tag.gender == Gender::Unspecified
            && tag.case == Case::Unspecified,
        || format!("v3spie--- decoded as {tag:?}"),
    )?;
    let tag = PosTag::decode("n-s---nn-").map_err(|e| e.to_string())?;
    check(
        (tag.pos, tag.person, tag.number, tag.gender, tag.case)
            == (
                PartOfSpeech::Noun,
                Person::Unspecified,
                Number::Singular,
                Gender::Neuter,
                Case::Nominative,
            )
            && tag.voice == Voice::Unspecified,
        || format!("n-s---nn- decoded as {tag:?}"),
    )?;
    let tag = PosTag::decode("p-s----d-").map_err(|e| e.to_string())?;
    check(
        (tag.pos, tag.number, tag.gender, tag.case)
            == (
                PartOfSpeech::Pronoun,
                Number::Singular,
                Gender::Unspecified,
                Case::Dative,
            ),
        || format!("p-s----d- decoded as {tag:?}"),
    )?;

    let tables = [
        POS, PERSON, NUMBER, TENSE, MOOD, VOICE, GENDER, CASE, DEGREE,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10_000 {
        let tag: String = tables
            .iter()
            .map(|t| *t.as_bytes().choose(&mut rng).unwrap() as char)
            .collect();
        let decoded = PosTag::decode(&tag).map_err(|e| format!("{tag}: {e}"))?;
        check(decoded.encode() == tag, || {
            format!("{tag} re-encoded as {}", decoded.encode())
        })?;
    }
    Ok(Verdict::Pass(
        "3 tags field-for-field, 10000 random round trips".into(),
    ))
}

fn beta_code() -> Outcome {
    let cases = [
        ("a)ll'", "ἀλλ’"),
        ("e)pei\\", "ἐπεὶ"),
        ("de/os", "δέος"),
        ("palaio\\n", "παλαιὸν"),
        ("soi\\", "σοὶ"),
        ("frenw=n", "φρενῶν"),
        ("a)nqi/statai", "ἀνθίσταται"),
    ];
    let mut words = Vec::new();
    for (beta, greek) in cases {
        let got = beta_to_unicode(beta).map_err(|e| format!("{beta}: {e}"))?;
        let want: String = greek.nfc().collect();
        check(got == want, || format!("{beta} -> {got}, expected {want}"))?;
        check(got.nfc().collect::<String>() == got, || {
            format!("{got} is not NFC")
        })?;
        words.push(got);
    }
    let line = words.join(" ");
    check(
        line == "ἀλλ’ ἐπεὶ δέος παλαιὸν σοὶ φρενῶν ἀνθίσταται",
        || format!("line {line:?}"),
    )?;
    Ok(Verdict::Pass(line))
}

fn greek_word(rng: &mut ChaCha8Rng) -> String {
    let letters: Vec<char> = ('\u{3b1}'..='\u{3c9}')
        .chain('\u{1f00}'..='\u{1f07}')
        .collect();
    let len = rng.gen_range(2..9);
    (0..len)
        .map(|_| *letters.choose(rng).unwrap())
        .collect::<String>()
        .nfc()
        .collect()
}

fn random_entry(rng: &mut ChaCha8Rng) -> LexiconEntry {
    let works = [
        ("Homer", "Iliad"),
        ("Homer", "Odyssey"),
        ("Hesiod", "Theogony"),
        ("Herodotus", "Histories"),
        ("Aeschylus", "Persians"),
        ("Plato", "Republic"),
    ];
    let (author, title) = *works.choose(rng).unwrap();
    let voices = [
        Voice::Active,
        Voice::Passive,
        Voice::Middle,
        Voice::MedioPassive,
        Voice::Unspecified,
    ];
    let voice = *voices.choose(rng).unwrap();
    let labels = ["SBJ", "OBJ", "OBJ_CO", "OBJ_AP", "PNOM", "OCOMP", "SBJ_CO"];
    let realizations = [
        "nominative",
        "accusative",
        "dative",
        "genitive",
        "infinitive",
        "adverb",
    ];
    let mut elements: Vec<(String, String)> = (0..rng.gen_range(1..4))
        .map(|_| {
            let mediator = if rng.gen_bool(0.2) {
                format!("({})", greek_word(rng))
            } else {
                String::new()
            };
            let el = format!(
                "{mediator}{}[{}]",
                labels.choose(rng).unwrap(),
                realizations.choose(rng).unwrap()
            );
            (el, greek_word(rng))
        })
        .collect();
    elements.sort();
    let prefix = format!("{}_", voice.name());
    let frame = prefix.clone()
        + &elements
            .iter()
            .map(|e| e.0.clone())
            .collect::<Vec<_>>()
            .join(",");
    let fillers = prefix
        + &elements
            .iter()
            .map(|(e, f)| format!("{e}{{{f}}}"))
            .collect::<Vec<_>>()
            .join(",");
    LexiconEntry {
        author: author.into(),
        title: title.into(),
        subdoc: format!("{}.{}", rng.gen_range(1..25), rng.gen_range(1..900)),
        verb: greek_word(rng),
        voice,
        sentence_id: rng.gen_range(1..10_000_000_000u64),
        root_id: rng.gen(),
        frame,
        frame_fillers: fillers,
    }
}

fn lexicon_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let entries: Vec<LexiconEntry> = (0..1000).map(|_| random_entry(&mut rng)).collect();
    let lex = Lexicon::new(entries.clone());
    let mut buf = Vec::new();
    write_lexicon(&lex, &mut buf, Layout::Full).map_err(|e| e.to_string())?;
    let text = String::from_utf8(buf).map_err(|e| e.to_string())?;
    let (back, errors) = read_lexicon_str(&text, false).map_err(|e| e.to_string())?;
    check(errors.is_empty(), || format!("{} row errors", errors.len()))?;
    check(back.entries() == entries.as_slice(), || {
        "entries differ after round trip".into()
    })?;

    let total = stats_basic(&back).entries;
    let by_author = stats_by_author(&back);
    let author_sum: usize = by_author.rows.iter().map(|r| r.1).sum();
    check(author_sum == total && by_author.total == total, || {
        format!("author counts sum to {author_sum}, total {total}")
    })?;
    let frame_sum: usize = frame_frequencies(&back, usize::MAX)
        .iter()
        .map(|r| r.1)
        .sum();
    check(frame_sum == total, || {
        format!("frame counts sum to {frame_sum}, total {total}")
    })?;
    Ok(Verdict::Pass(format!(
        "1000 entries, {} authors, {} frames",
        by_author.rows.len(),
        frame_frequencies(&back, usize::MAX).len()
    )))
}

/// D scaled by n1 n2, straight from the ECDF definition.
fn ecdf_gap(a: &[f64], b: &[f64]) -> u64 {
    let (n1, n2) = (a.len() as i64, b.len() as i64);
    a.iter()
        .chain(b)
        .map(|&x| {
            let ca = a.iter().filter(|&&v| v <= x).count() as i64;
            let cb = b.iter().filter(|&&v| v <= x).count() as i64;
            (ca * n2 - cb * n1).unsigned_abs()
        })
        .max()
        .unwrap()
}

/// Exhaustive permutation p-value: every way of splitting the pooled values
/// into groups of n1 and n2.
fn enumerated_p(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (n, k) = (pooled.len(), a.len());
    let observed = ecdf_gap(a, b);
    let (mut hits, mut total) = (0u64, 0u64);
    let mut mask: u32 = (1 << k) - 1;
    while mask < (1 << n) {
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for (i, &v) in pooled.iter().enumerate() {
            if mask & (1 << i) != 0 {
                x.push(v)
            } else {
                y.push(v)
            }
        }
        total += 1;
        if ecdf_gap(&x, &y) >= observed {
            hits += 1;
        }
        // next subset of the same size
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    hits as f64 / total as f64
}

fn random_sample(rng: &mut ChaCha8Rng, n: usize, tied: bool, shift: f64) -> Vec<f64> {
    (0..n)
        .map(|_| {
            if tied {
                rng.gen_range(0..4) as f64
            } else {
                rng.gen::<f64>() + shift
            }
        })
        .collect()
}

fn ks_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let (n1, n2) = (rng.gen_range(2..=8), rng.gen_range(2..=8));
        let tied = i % 2 == 0;
        let shift = rng.gen_range(0.0..0.6);
        let a = random_sample(&mut rng, n1, tied, 0.0);
        let b = random_sample(&mut rng, n2, tied, shift);
        let r = ks_two_sample(&a, &b, KsMethod::Exact).map_err(|e| e.to_string())?;
        let d = ecdf_gap(&a, &b) as f64 / (n1 * n2) as f64;
        check(r.d_statistic == d, || {
            format!("pair {i}: D {} vs enumeration {d}", r.d_statistic)
        })?;
        let p = enumerated_p(&a, &b);
        let err = (r.p_value - p).abs();
        worst = worst.max(err);
        check(err <= 1e-12, || {
            format!("pair {i}: p {} vs enumeration {p}", r.p_value)
        })?;
    }

    let mut abs_err = 0.0;
    let mut count = 0;
    for n in 8..=10 {
        for _ in 0..100 {
            let shift = rng.gen_range(0.0..0.6);
            let a = random_sample(&mut rng, n, false, 0.0);
            let b = random_sample(&mut rng, n, false, shift);
            let exact = ks_two_sample(&a, &b, KsMethod::Exact).map_err(|e| e.to_string())?;
            let asym = ks_two_sample(&a, &b, KsMethod::Asymptotic).map_err(|e| e.to_string())?;
            abs_err += (exact.p_value - asym.p_value).abs();
            count += 1;
        }
    }
    let mae = abs_err / count as f64;
    check(mae <= 0.05, || format!("asymptotic MAE {mae:.4} > 0.05"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(Verdict::Pass(format!(
        "200 pairs, max |p - enum| {worst:.1e}, asymptotic MAE {mae:.4}, {elapsed:.1?}"
    )))
}

fn stars() -> Outcome {
    let expected = [
        (0.034, "**"),
        (0.052, "*"),
        (0.053, "*"),
        (0.084, "*"),
        (0.106, ""),
        (0.240, ""),
    ];
    for (p, want) in expected {
        let got = significance_stars(p).map_err(|e| e.to_string())?;
        check(got == want, || format!("{p} -> {got:?}, expected {want:?}"))?;
    }
    Ok(Verdict::Pass("6 p-values".into()))
}

fn synthetic_case_study() -> Outcome {
    let start = Instant::now();
    let dir = data("casestudy");
    let text = std::fs::read_to_string(dir.join("casestudy.conf")).map_err(|e| e.to_string())?;
    let config = CaseStudyConfig::parse(&text, &dir).map_err(|e| e.to_string())?;
    let load = load_treebank_dir(config.treebank_dir.as_deref().unwrap(), None)
        .map_err(|e| e.to_string())?;
    let spans_text = std::fs::read_to_string(config.formula_span_path.as_deref().unwrap())
        .map_err(|e| e.to_string())?;
    let spans = parse_formula_spans(&spans_text).map_err(|e| e.to_string())?;
    let (lexicon, _) =
        read_lexicon(config.lexicon_path.as_deref().unwrap(), false).map_err(|e| e.to_string())?;
    let space = load_vector_space(config.vector_space_path.as_deref().unwrap())
        .map_err(|e| e.to_string())?;
    let report = run_case_study(&config, &load.trees, &spans, &lexicon, &space);
    let elapsed = start.elapsed();

    // fixture geometry: verb A's formulaic objects form a tight cluster
    let a_objects: Vec<String> = report
        .distributions
        .iter()
        .find(|d| d.verb == "ἄγω" && d.group == Group::Formulaic)
        .map(|d| d.included_lemmas.clone())
        .ok_or("no formulaic distribution for ἄγω")?;
    for x in &a_objects {
        for y in &a_objects {
            let c = cosine_similarity(space.get(x).unwrap(), space.get(y).unwrap())
                .map_err(|e| e.to_string())?;
            check(c >= 0.9, || format!("cos({x}, {y}) = {c}"))?;
        }
    }

    let find = |verb: &str| report.comparisons.iter().find(|c| c.verb == verb);
    let a = find("ἄγω").ok_or("verb A not reported")?;
    check(a.ks.p_value < 0.05 && a.stars == "**", || {
        format!("verb A p = {}, stars {:?}", a.ks.p_value, a.stars)
    })?;
    check(a.median_formulaic != a.median_baseline, || {
        "verb A medians coincide".into()
    })?;
    let b = find("φέρω").ok_or("verb B not reported")?;
    check(b.ks.d_statistic <= 0.2 && b.stars.is_empty(), || {
        format!("verb B D = {}, stars {:?}", b.ks.d_statistic, b.stars)
    })?;

    let dropped: BTreeMap<&str, &str> = report
        .dropped
        .iter()
        .map(|d| (d.verb.as_str(), d.reason.code()))
        .collect();
    let expected_drops = [
        ("ἔχω", "below_min_epic_tokens"),
        ("λαμβάνω", "too_few_epic_types"),
        ("τίθημι", "too_few_baseline_types"),
    ];
    for (verb, code) in expected_drops {
        check(dropped.get(verb) == Some(&code), || {
            format!("{verb} dropped as {:?}, expected {code}", dropped.get(verb))
        })?;
        check(
            report
                .run_log()
                .contains(&format!("dropped\t{verb}\t{code}")),
            || format!("{verb} missing from run log"),
        )?;
    }
    // exactly 50 tokens and 10 types on both sides is enough
    let boundary = find("δίδωμι").ok_or("boundary verb δίδωμι not reported")?;
    check(
        boundary.epic_token_count == 50 && boundary.epic_type_count == 10,
        || {
            format!(
                "δίδωμι counts {:?}",
                (boundary.epic_token_count, boundary.epic_type_count)
            )
        },
    )?;
    for c in &report.comparisons {
        check(
            c.epic_token_count >= config.min_epic_tokens
                && c.epic_type_count >= config.min_object_types
                && c.baseline_type_count >= config.min_object_types,
            || format!("{} reported below a threshold", c.verb),
        )?;
    }
    within(elapsed, Duration::from_secs(10))?;
    Ok(Verdict::Pass(format!(
        "A: p = {:.2e} {}, medians {:.3}/{:.3}; B: D = {:.2}; {} drops logged; {elapsed:.1?}",
        a.ks.p_value,
        a.stars,
        a.median_formulaic,
        a.median_baseline,
        b.ks.d_statistic,
        report.dropped.len()
    )))
}

fn within_pct(got: usize, want: f64, pct: f64) -> Result<(), String> {
    check((got as f64 - want).abs() <= want * pct / 100.0, || {
        format!("{got} not within {pct}% of {want}")
    })
}

fn full_corpus() -> Outcome {
    let Some(dir) = std::env::var_os("VALENCY_AGDT_DIR") else {
        return Ok(Verdict::Skip(
            "set VALENCY_AGDT_DIR to an AGDT 2.0 XML directory to run".into(),
        ));
    };
    let manifest = match std::env::var_os("VALENCY_AGDT_MANIFEST") {
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|e| e.to_string())?;
            Some(parse_manifest(&text)?)
        }
        None => None,
    };
    let load = load_treebank_dir(Path::new(&dir), manifest.as_ref()).map_err(|e| e.to_string())?;
    let lex = Lexicon::new(extract_entries(&load.trees, ExtractOptions::default()).entries);
    let basic = stats_basic(&lex);
    within_pct(basic.entries, 72_067.0, 1.0)?;
    within_pct(basic.unique_verb_lemmas, 5_077.0, 1.0)?;
    within_pct(basic.unique_frames, 7_100.0, 1.0)?;
    within_pct(basic.unique_frame_fillers, 43_631.0, 1.0)?;
    let homer = stats_by_author(&lex)
        .rows
        .iter()
        .find(|r| r.0 == "Homer")
        .map(|r| r.1)
        .unwrap_or(0);
    within_pct(homer, 30_574.0, 1.0)?;
    let top = frame_frequencies(&lex, 1);
    check(
        top.first().map(|r| r.0.as_str()) == Some("active_OBJ[accusative]"),
        || format!("rank-1 frame {top:?}"),
    )?;
    within_pct(top[0].1, 12_563.0, 1.0)?;
    let hits = query_entries(
        &lex,
        &QueryFilter {
            verb: Some("αἱρέω".into()),
            author: Some("Homer".into()),
            realization: Some("genitive".into()),
            ..Default::default()
        },
    )
    .len();
    check(hits.abs_diff(15) <= 1, || {
        format!("αἱρέω genitive in Homer: {hits}")
    })?;
    Ok(Verdict::Pass(format!("{basic:?}")))
}

fn table6_note() -> Outcome {
    Ok(Verdict::Skip(
        "numerical table reproduction needs the original vector space and formula editions; \
         covered by criteria 5-7"
            .into(),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "golden entry", golden_entry),
        (2, "postag decoding", postags),
        (3, "beta code excerpt", beta_code),
        (4, "lexicon round trip", lexicon_round_trip),
        (5, "KS oracle", ks_oracle),
        (6, "significance stars", stars),
        (7, "synthetic case study", synthetic_case_study),
        (8, "full-corpus reproduction", full_corpus),
        (9, "results table reproduction", table6_note),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        match run() {
            Ok(Verdict::Pass(detail)) => println!("PASS criterion {id} ({name}): {detail}"),
            Ok(Verdict::Skip(detail)) => println!("SKIP criterion {id} ({name}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}): {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
