//! Bundled demonstration forms and the plain-text job file format.
//!
//! A job file holds a polynomial in the input grammar. Lines starting with
//! `#` are comments, except `# vars: x, y, z` which declares the variable
//! order. All other lines are concatenated into the polynomial text.

use crate::error::{Result, SdsError};
use crate::polynomial::{parse_form, Form};

/// Polynomial text plus the declared variables, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobFile {
    pub vars: Option<Vec<String>>,
    pub polynomial: String,
}

pub fn parse_job_file(text: &str) -> JobFile {
    let mut vars = None;
    let mut body = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(list) = comment.trim().strip_prefix("vars:") {
                vars = Some(
                    list.split(',')
                        .map(|v| v.trim().to_string())
                        .filter(|v| !v.is_empty())
                        .collect(),
                );
            }
            continue;
        }
        if !trimmed.is_empty() {
            body.push(trimmed);
        }
    }
    JobFile {
        vars,
        polynomial: body.join(" "),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub source: &'static str,
}

impl CorpusEntry {
    pub fn job(&self) -> JobFile {
        parse_job_file(self.source)
    }

    pub fn vars(&self) -> Vec<String> {
        self.job().vars.expect("corpus files declare their variables")
    }

    pub fn form(&self) -> Result<Form> {
        let job = self.job();
        let vars = job.vars.ok_or(SdsError::NoVariables)?;
        parse_form(&job.polynomial, &vars)
    }
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        id: "example1",
        source: include_str!("../corpus/example1.txt"),
    },
    CorpusEntry {
        id: "example2",
        source: include_str!("../corpus/example2.txt"),
    },
    CorpusEntry {
        id: "example3-p1",
        source: include_str!("../corpus/example3-p1.txt"),
    },
    CorpusEntry {
        id: "example3-p2",
        source: include_str!("../corpus/example3-p2.txt"),
    },
    CorpusEntry {
        id: "example3-p3",
        source: include_str!("../corpus/example3-p3.txt"),
    },
    CorpusEntry {
        id: "example3-p4",
        source: include_str!("../corpus/example3-p4.txt"),
    },
    CorpusEntry {
        id: "example3-p5",
        source: include_str!("../corpus/example3-p5.txt"),
    },
    CorpusEntry {
        id: "example3-p6",
        source: include_str!("../corpus/example3-p6.txt"),
    },
];

pub fn corpus_entry(id: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.id == id)
}

pub fn corpus_ids() -> Vec<&'static str> {
    CORPUS.iter().map(|e| e.id).collect()
}

/// Denominator-cleared form of
/// `2/3 * (x^2/(y+z) + y^2/(z+x) + z^2/(x+y)) >= ((x^p + y^p + z^p)/3)^(1/p)`.
///
/// With `D = (y+z)(z+x)(x+y)` and `N = D * sum x^2/(y+z)`, both sides are
/// non-negative on the orthant, so the inequality is equivalent to its
/// `p`-th power; multiplying that by `3^p D^p` gives
/// `2^p N^p - 3^(p-1) D^p (x^p + y^p + z^p) >= 0`.
pub fn power_mean_form(p: u32) -> Form {
    assert!(p >= 1, "p must be positive");
    let vars = ["x", "y", "z"];
    let parse = |s: &str| parse_form(s, &vars).expect("valid construction");
    let numerator = parse("x^2*(z+x)*(x+y) + y^2*(y+z)*(x+y) + z^2*(y+z)*(z+x)");
    let denominator = parse("(y+z)*(z+x)*(x+y)");
    let power_sum = parse(&format!("x^{p} + y^{p} + z^{p}"));
    let two_p = num_rational::BigRational::from_integer(num_bigint::BigInt::from(2).pow(p));
    let three_p1 = num_rational::BigRational::from_integer(num_bigint::BigInt::from(3).pow(p - 1));
    numerator
        .pow(p)
        .scale(&two_p)
        .sub(&denominator.pow(p).mul(&power_sum).scale(&three_p1))
}

/// Job file text for [`power_mean_form`], as stored in the corpus.
pub fn power_mean_job_file(p: u32) -> String {
    let vars = ["x", "y", "z"];
    format!(
        "# Power-mean inequality for p = {p}:\n\
         #   2/3*(x^2/(y+z) + y^2/(z+x) + z^2/(x+y)) - ((x^{p}+y^{p}+z^{p})/3)^(1/{p}) >= 0\n\
         # Both sides raised to the p-th power, then multiplied by 3^p*((y+z)(z+x)(x+y))^p:\n\
         #   2^p*N^p - 3^(p-1)*D^p*(x^p + y^p + z^p)\n\
         # with D = (y+z)*(z+x)*(x+y) and N = x^2*(z+x)*(x+y) + y^2*(y+z)*(x+y) + z^2*(y+z)*(z+x).\n\
         # Generated by `cargo run -p sds-core --example gen_corpus`.\n\
         # vars: x, y, z\n{}\n",
        power_mean_form(p).to_string_with(&vars)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Point;
    use crate::rational::{int, rat};

    #[test]
    fn job_file_parsing() {
        let job = parse_job_file("# a comment\n# vars: a, b\n a^2 -\n b^2\n");
        assert_eq!(job.vars, Some(vec!["a".to_string(), "b".to_string()]));
        assert_eq!(job.polynomial, "a^2 - b^2");
        assert_eq!(parse_job_file("x*y").vars, None);
    }

    #[test]
    fn bundled_files_parse() {
        for entry in CORPUS {
            let f = entry.form().unwrap();
            assert_eq!(f.nvars(), 3, "{}", entry.id);
        }
        assert!(corpus_entry("example7").is_none());
        assert_eq!(corpus_ids().len(), 8);
    }

    #[test]
    fn power_mean_files_match_construction() {
        for p in 1..=6 {
            let entry = corpus_entry(&format!("example3-p{p}")).unwrap();
            assert_eq!(entry.form().unwrap(), power_mean_form(p));
            assert_eq!(entry.source, power_mean_job_file(p));
        }
    }

    #[test]
    fn power_mean_form_shape() {
        for p in 1..=6 {
            let f = power_mean_form(p);
            assert_eq!(f.degree(), 4 * p);
            // Equality at x = y = z.
            assert_eq!(f.evaluate(&Point::ones(3)).unwrap(), int(0));
        }
        // p = 1: 2N - D(x+y+z) at (1, 0, 0): N = 1, D = 0.
        assert_eq!(power_mean_form(1).evaluate(&Point::unit(3, 0)).unwrap(), int(2));
    }

    #[test]
    fn reported_point_is_negative_for_p6() {
        let p = Point::new(vec![rat(2159, 5832), rat(3685, 11664), rat(3661, 11664)]);
        assert!(p.in_simplex());
        assert!(power_mean_form(6).evaluate(&p).unwrap() < int(0));
    }
}
