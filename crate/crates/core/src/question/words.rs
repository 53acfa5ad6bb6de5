//! English number words for counting answers.

const WORDS: [&str; 21] = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
    "nineteen", "twenty",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot spell a negative count ({0})")]
pub struct NegativeCount(pub i64);

/// Counting answers are spelled out up to twenty; larger counts fall back
/// to digits.
pub fn count_to_word(n: i64) -> Result<String, NegativeCount> {
    if n < 0 {
        return Err(NegativeCount(n));
    }
    Ok(match usize::try_from(n) {
        Ok(i) if i < WORDS.len() => WORDS[i].to_string(),
        _ => n.to_string(),
    })
}

/// Ordinal words for positional questions (1-based, up to ten).
pub fn ordinal_word(n: usize) -> &'static str {
    match n {
        1 => "first",
        2 => "second",
        3 => "third",
        4 => "fourth",
        5 => "fifth",
        6 => "sixth",
        7 => "seventh",
        8 => "eighth",
        9 => "ninth",
        10 => "tenth",
        _ => unreachable!("ordinal beyond chart capacity"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spells_counts() {
        assert_eq!(count_to_word(0).unwrap(), "zero");
        assert_eq!(count_to_word(4).unwrap(), "four");
        assert_eq!(count_to_word(13).unwrap(), "thirteen");
        assert_eq!(count_to_word(20).unwrap(), "twenty");
        assert_eq!(count_to_word(21).unwrap(), "21");
    }

    #[test]
    fn rejects_negative() {
        assert!(count_to_word(-1).is_err());
    }
}
