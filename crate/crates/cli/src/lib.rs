//! File formats, DOT export and the command-line front end of `autfree`.

pub mod commands;
pub mod dot;
pub mod format;

/// Splits a comma-separated symbol list. Commas nested inside brackets
/// belong to the symbol, so tuple states such as `(x,y)` stay intact. The
/// empty string and `ε` denote the empty list.
pub fn split_symbols(s: &str) -> Vec<String> {
    let s = s.trim();
    if s.is_empty() || s == "ε" {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur.trim().to_string());
    out
}

/// Space-separated names, `ε` for the empty sequence.
pub fn show<S: AsRef<str>>(names: &[S]) -> String {
    if names.is_empty() {
        return "ε".into();
    }
    names.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(" ")
}
