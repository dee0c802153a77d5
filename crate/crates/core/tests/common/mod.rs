//! Reference implementations and helpers shared by the integration tests.
//! The oracles here are written straight from the textbook definitions and
//! deliberately share no code with the library.

#![allow(dead_code)]

use std::path::PathBuf;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn synthetic_corpus() -> PathBuf {
    repo_root().join("corpus/synthetic")
}

pub fn matcher_fixtures() -> PathBuf {
    repo_root().join("corpus/fixtures/matcher")
}

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Runs the command-line front end in-process.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("parasim").chain(args.iter().copied());
    let code = parasim::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("stdout is UTF-8"),
        String::from_utf8(err).expect("stderr is UTF-8"),
    )
}

/// Value of a `name value` line on stdout.
pub fn field(stdout: &str, name: &str) -> Option<f64> {
    stdout.lines().find_map(|l| {
        let (k, v) = l.split_once(' ')?;
        (k == name).then(|| v.trim().parse().ok()).flatten()
    })
}

/// Edit distance by the recursive definition, memoized on suffix pairs.
pub fn levenshtein_recursive(a: &[u8], b: &[u8]) -> usize {
    fn go(a: &[u8], b: &[u8], i: usize, j: usize, memo: &mut [Option<usize>]) -> usize {
        if i == a.len() {
            return b.len() - j;
        }
        if j == b.len() {
            return a.len() - i;
        }
        let key = i * (b.len() + 1) + j;
        if let Some(d) = memo[key] {
            return d;
        }
        let d = if a[i] == b[j] {
            go(a, b, i + 1, j + 1, memo)
        } else {
            1 + go(a, b, i + 1, j, memo)
                .min(go(a, b, i, j + 1, memo))
                .min(go(a, b, i + 1, j + 1, memo))
        };
        memo[key] = Some(d);
        d
    }
    let mut memo = vec![None; (a.len() + 1) * (b.len() + 1)];
    go(a, b, 0, 0, &mut memo)
}

/// Every string over `alphabet` of length `0..=max_len`.
pub fn all_strings(alphabet: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for &c in alphabet {
                let mut t: Vec<u8> = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Jaro similarity following the definition: matches within the window
/// `max(|a|,|b|)/2 - 1`, half the out-of-order matches are transpositions.
pub fn jaro_reference(a: &[char], b: &[char]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut b_used = vec![false; b.len()];
    let mut a_matched = Vec::new();
    for (i, ca) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        for j in lo..hi {
            if !b_used[j] && b[j] == *ca {
                b_used[j] = true;
                a_matched.push(*ca);
                break;
            }
        }
    }
    let m = a_matched.len();
    if m == 0 {
        return 0.0;
    }
    let b_matched: Vec<char> = b.iter().zip(&b_used).filter(|(_, &u)| u).map(|(c, _)| *c).collect();
    let half = a_matched.iter().zip(&b_matched).filter(|(x, y)| x != y).count();
    let t = (half / 2) as f64;
    let m = m as f64;
    (m / a.len() as f64 + m / b.len() as f64 + (m - t) / m) / 3.0
}

pub fn jaro_winkler_reference(a: &[char], b: &[char]) -> f64 {
    let j = jaro_reference(a, b);
    if j <= 0.7 {
        return j;
    }
    let l = a.iter().zip(b).take(4).take_while(|(x, y)| x == y).count() as f64;
    j + l * 0.1 * (1.0 - j)
}

// Dense-vector formulas, used against the sparse library implementations.

pub fn dense_cosine(x: &[f64], y: &[f64]) -> f64 {
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny = y.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 {
        0.0
    } else {
        dot / (nx * ny)
    }
}

pub fn dense_unit(x: &[f64]) -> Vec<f64> {
    let n = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    if n == 0.0 {
        x.to_vec()
    } else {
        x.iter().map(|a| a / n).collect()
    }
}

pub fn dense_euclidean(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

pub fn dense_manhattan(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum()
}

pub fn dense_dice(x: &[f64], y: &[f64]) -> f64 {
    let (a, b) = (support(x), support(y));
    if a + b == 0 {
        return 1.0;
    }
    2.0 * common(x, y) as f64 / (a + b) as f64
}

pub fn dense_jaccard(x: &[f64], y: &[f64]) -> f64 {
    let c = common(x, y);
    let union = support(x) + support(y) - c;
    if union == 0 {
        return 1.0;
    }
    c as f64 / union as f64
}

fn support(x: &[f64]) -> usize {
    x.iter().filter(|&&a| a > 0.0).count()
}

fn common(x: &[f64], y: &[f64]) -> usize {
    x.iter().zip(y).filter(|(a, b)| **a > 0.0 && **b > 0.0).count()
}

/// Term names for dense dimension indices.
pub fn term(i: usize) -> String {
    format!("t{i}")
}
