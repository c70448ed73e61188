//! The `.aut` text format.
//!
//! Line-based, `#` starts a comment, tokens are whitespace-separated:
//!
//! ```text
//! automaton <name>
//! kind buchi|cobuchi|weak
//! alphabet <tok> <tok> ...
//! states <n>
//! initial <id>
//! accepting <id> <id> ...        # may list nothing
//! trans <src> <letter> <dst>     # one line per transition
//! ```
//!
//! Serialization is canonical: fixed directive order, accepting states
//! sorted, transitions sorted by `(src, letter, dst)`. Cosmetic state
//! names travel in `# name <id> <label>` comment lines, which the parser
//! recognizes and any other tool may ignore.

use super::{complete_automaton, Alphabet, Automaton, Kind, LassoWord, StateId};
use crate::error::{Error, Result};

/// Parses the `.aut` format.
///
/// With `allow_partial` unset, missing transitions are an error. With it
/// set, the automaton is totalized via [`complete_automaton`] before
/// being returned, so analysis code never sees a partial relation.
pub fn parse_automaton(text: &str, allow_partial: bool) -> Result<Automaton> {
    let mut name: Option<String> = None;
    let mut kind: Option<Kind> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut num_states: Option<usize> = None;
    let mut initial: Option<StateId> = None;
    let mut accepting: Option<Vec<StateId>> = None;
    let mut transitions: Vec<(usize, StateId, String, StateId)> = Vec::new();
    let mut state_names: Vec<(usize, StateId, String)> = Vec::new();

    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.into() };

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() == 3 && toks[0] == "name" {
                let id: StateId = toks[1]
                    .parse()
                    .map_err(|_| err(lineno, "bad state id in name comment"))?;
                state_names.push((lineno, id, toks[2].to_string()));
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "automaton" => {
                if toks.len() != 2 {
                    return Err(err(lineno, "expected: automaton <name>"));
                }
                name = Some(toks[1].to_string());
            }
            "kind" => {
                if toks.len() != 2 {
                    return Err(err(lineno, "expected: kind buchi|cobuchi|weak"));
                }
                kind = Some(
                    Kind::from_str(toks[1])
                        .ok_or_else(|| err(lineno, "kind must be buchi, cobuchi or weak"))?,
                );
            }
            "alphabet" => {
                if toks.len() < 2 {
                    return Err(err(lineno, "alphabet must list at least one letter"));
                }
                alphabet = Some(Alphabet::new(toks[1..].iter().copied()).map_err(|e| {
                    err(lineno, &e.to_string())
                })?);
            }
            "states" => {
                let n: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "expected: states <n>"))?;
                num_states = Some(n);
            }
            "initial" => {
                let q: StateId = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "expected: initial <id>"))?;
                initial = Some(q);
            }
            "accepting" => {
                let mut acc = Vec::new();
                for t in &toks[1..] {
                    acc.push(t.parse().map_err(|_| err(lineno, "bad accepting state id"))?);
                }
                accepting = Some(acc);
            }
            "trans" => {
                if toks.len() != 4 {
                    return Err(err(lineno, "expected: trans <src> <letter> <dst>"));
                }
                let src: StateId =
                    toks[1].parse().map_err(|_| err(lineno, "bad source state id"))?;
                let dst: StateId =
                    toks[3].parse().map_err(|_| err(lineno, "bad target state id"))?;
                transitions.push((lineno, src, toks[2].to_string(), dst));
            }
            other => {
                return Err(err(lineno, &format!("unknown directive '{other}'")));
            }
        }
    }

    let alphabet = alphabet.ok_or_else(|| err(0, "missing alphabet line"))?;
    let kind = kind.ok_or_else(|| err(0, "missing kind line"))?;
    let num_states = num_states.ok_or_else(|| err(0, "missing states line"))?;
    let initial = initial.ok_or_else(|| err(0, "missing initial line"))?;
    let name = name.unwrap_or_else(|| "a".to_string());

    let mut trans = Vec::with_capacity(transitions.len());
    for (lineno, src, letter, dst) in transitions {
        let l = alphabet
            .index_of(&letter)
            .ok_or_else(|| err(lineno, &format!("unknown letter '{letter}'")))?;
        if src >= num_states || dst >= num_states {
            return Err(err(lineno, "transition endpoint out of range"));
        }
        trans.push((src, l, dst));
    }

    let mut a = Automaton::new_partial(
        name,
        alphabet,
        kind,
        num_states,
        initial,
        accepting.unwrap_or_default(),
        trans,
    )?;
    for (lineno, id, label) in state_names {
        if id >= a.num_states() {
            return Err(err(lineno, "state id out of range in name comment"));
        }
        a.set_state_name(id, label);
    }
    if a.validate_total().is_err() {
        if allow_partial {
            a = complete_automaton(&a);
        } else {
            a.validate_total().map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        }
    }
    a.validate_weak().map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    Ok(a)
}

/// Canonical serialization; `parse ∘ serialize` is the identity and the
/// output is byte-identical across calls.
pub fn serialize_automaton(a: &Automaton) -> String {
    let mut out = String::new();
    out.push_str(&format!("automaton {}\n", a.name()));
    out.push_str(&format!("kind {}\n", a.kind()));
    out.push_str("alphabet");
    for (_, l) in a.alphabet().letters() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    out.push_str(&format!("states {}\n", a.num_states()));
    out.push_str(&format!("initial {}\n", a.initial()));
    out.push_str("accepting");
    for q in a.accepting_states() {
        out.push_str(&format!(" {q}"));
    }
    out.push('\n');
    for q in 0..a.num_states() {
        if let Some(n) = a.state_name(q) {
            out.push_str(&format!("# name {q} {n}\n"));
        }
    }
    for (q, l, p) in a.transitions() {
        out.push_str(&format!("trans {q} {} {p}\n", a.alphabet().letter(l)));
    }
    out
}

/// Parses the command-line lasso syntax `u;v`.
///
/// When every alphabet token is a single character the letters are
/// concatenated (`ab;ba`); otherwise they are comma-separated
/// (`x1,c2;x1,c1`). The stem may be empty, the loop may not.
pub fn parse_lasso(alphabet: &Alphabet, text: &str) -> Result<LassoWord> {
    let bad = |msg: &str| Error::InvalidInput(format!("lasso '{text}': {msg}"));
    let (stem_txt, loop_txt) = text
        .split_once(';')
        .ok_or_else(|| bad("expected 'stem;loop'"))?;
    let split = |part: &str| -> Result<Vec<usize>> {
        if part.is_empty() {
            return Ok(Vec::new());
        }
        let tokens: Vec<String> = if part.contains(',') || !alphabet.single_char() {
            part.split(',').map(str::to_string).collect()
        } else {
            part.chars().map(|c| c.to_string()).collect()
        };
        tokens
            .iter()
            .map(|t| {
                alphabet
                    .index_of(t)
                    .ok_or_else(|| bad(&format!("unknown letter '{t}'")))
            })
            .collect()
    };
    let stem = split(stem_txt.trim())?;
    let looped = split(loop_txt.trim())?;
    LassoWord::new(stem, looped)
}

/// Renders a lasso in the same syntax `parse_lasso` accepts.
pub fn format_lasso(alphabet: &Alphabet, w: &LassoWord) -> String {
    let join = |part: &[usize]| -> String {
        if alphabet.single_char() {
            part.iter().map(|&l| alphabet.letter(l)).collect()
        } else {
            part.iter().map(|&l| alphabet.letter(l)).collect::<Vec<_>>().join(",")
        }
    };
    format!("{};{}", join(w.stem()), join(w.looped()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::corpus;

    const U_TEXT: &str = "\
automaton U
kind buchi
alphabet a b
states 1
initial 0
accepting 0
# name 0 q0
trans 0 a 0
trans 0 b 0
";

    #[test]
    fn parses_u() {
        let a = parse_automaton(U_TEXT, false).unwrap();
        assert_eq!(a.num_states(), 1);
        assert!(a.is_accepting(0));
        assert_eq!(a, corpus::u());
    }

    #[test]
    fn missing_transition_is_totality_violation() {
        let text = U_TEXT.lines().take(8).collect::<Vec<_>>().join("\n");
        assert!(parse_automaton(&text, false).is_err());
        // allow-partial restores totality through the sink.
        let a = parse_automaton(&text, true).unwrap();
        assert_eq!(a.num_states(), 2);
        a.validate_total().unwrap();
    }

    #[test]
    fn weak_homogeneity_checked_at_parse() {
        let text = "\
automaton w
kind weak
alphabet a
states 2
initial 0
accepting 0
trans 0 a 1
trans 1 a 0
";
        assert!(matches!(parse_automaton(text, false), Err(Error::Parse { .. })));
    }

    #[test]
    fn serialize_is_canonical_and_round_trips() {
        for (_, a) in corpus::corpus() {
            let s1 = serialize_automaton(&a);
            let s2 = serialize_automaton(&a);
            assert_eq!(s1, s2);
            let b = parse_automaton(&s1, false).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn lasso_syntax_both_flavours() {
        let ab = Alphabet::ab();
        let w = parse_lasso(&ab, "ab;b").unwrap();
        assert_eq!(w.stem(), &[0, 1]);
        assert_eq!(w.looped(), &[1]);
        let w2 = parse_lasso(&ab, ";a").unwrap();
        assert!(w2.stem().is_empty());
        assert!(parse_lasso(&ab, "ab;").is_err());

        let multi = Alphabet::new(["x1", "c1"]).unwrap();
        let w3 = parse_lasso(&multi, "x1,c1;x1,c1").unwrap();
        assert_eq!(w3.stem(), &[0, 1]);
        assert_eq!(format_lasso(&multi, &w3), "x1,c1;x1,c1");
        assert_eq!(format_lasso(&ab, &w), "ab;b");
    }
}
