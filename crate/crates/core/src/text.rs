//! Tokenizer shared by every word grammar in the crate.
//!
//! A token is a lowercase symbol name, an optional index and an optional
//! exponent: `u3`, `x`, `a2^-1`, `v^5`. Tokens are separated by whitespace
//! and the identity is spelled `e`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    /// 1-based column of the first character.
    pub column: usize,
    pub name: String,
    pub index: Option<u32>,
    pub exponent: i64,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

/// Splits `text` into tokens. A lone `e` yields no token.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        if chars[pos].is_whitespace() {
            pos += 1;
            continue;
        }
        let column = pos + 1;
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_lowercase() {
            pos += 1;
        }
        if pos == start {
            return Err(err(
                column,
                format!("unexpected character '{}'", chars[pos]),
            ));
        }
        let name: String = chars[start..pos].iter().collect();

        let digits_start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let index = if pos > digits_start {
            let s: String = chars[digits_start..pos].iter().collect();
            let value: u32 = s
                .parse()
                .map_err(|_| err(digits_start + 1, "index too large"))?;
            if value == 0 {
                return Err(err(digits_start + 1, "indices start at 1"));
            }
            Some(value)
        } else {
            None
        };

        let mut exponent = 1;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let exp_start = pos;
            if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                pos += 1;
            }
            let num_start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == num_start {
                return Err(err(exp_start + 1, "expected an integer exponent after '^'"));
            }
            let s: String = chars[exp_start..pos].iter().collect();
            exponent = s
                .parse()
                .map_err(|_| err(exp_start + 1, "exponent too large"))?;
        }

        if pos < chars.len() && !chars[pos].is_whitespace() {
            return Err(err(
                pos + 1,
                format!("unexpected character '{}'", chars[pos]),
            ));
        }

        if name == "e" && index.is_none() {
            if exponent != 1 {
                return Err(err(column, "the identity takes no exponent"));
            }
            continue;
        }
        tokens.push(Token {
            column,
            name,
            index,
            exponent,
        });
    }
    Ok(tokens)
}

pub(crate) fn token_error(token: &Token, message: impl Into<String>) -> Error {
    err(token.column, message)
}

/// Appends `^-1` style suffixes.
pub(crate) fn with_sign(base: String, exponent: i64) -> String {
    if exponent == 1 {
        base
    } else {
        format!("{base}^{exponent}")
    }
}
