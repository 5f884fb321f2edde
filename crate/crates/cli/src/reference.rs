//! Published fiber-count polynomials, in the display form of `LatticePolynomial`.

pub const SYMMETRIC: &[(&str, &str, &str)] = &[
    ("A2", "0,0", "3k^2+3k+1"),
    ("A2", "1,0", "3k^2+6k+3"),
    ("A2", "0,1", "3k^2+6k+3"),
    ("A2", "1,1", "6k+6"),
    ("B2", "0,0", "2k_l^2+4k_lk_s+k_s^2+2k_l+2k_s+1"),
    ("B2", "1,0", "4k_l+4k_s+4"),
    ("B2", "0,1", "2k_l^2+4k_lk_s+k_s^2+6k_l+4k_s+4"),
    ("B2", "1,1", "4k_l+4k_s+8"),
    ("G2", "0,0", "9k_l^2+12k_lk_s+3k_s^2+3k_l+3k_s+1"),
    ("G2", "1,0", "12k_l+6k_s+6"),
    ("G2", "0,1", "6k_l+6k_s+6"),
    ("G2", "1,1", "6k_l+6k_s+12"),
];

pub const TRUNCATED: &[(&str, &str, &str)] = &[
    ("A2", "0,0", "3k^2+3k+1"),
    ("A2", "1,0", "3k^2+3k+1"),
    ("A2", "-1,1", "2k+1"),
    ("A2", "0,-1", "k+1"),
    ("A2", "0,1", "3k^2+3k+1"),
    ("A2", "1,-1", "2k+1"),
    ("A2", "-1,0", "k+1"),
    ("A2", "1,1", "2k+1"),
    ("A2", "-1,2", "k+1"),
    ("A2", "2,-1", "k+1"),
    ("A2", "-2,1", "k+1"),
    ("A2", "1,-2", "k+1"),
    ("A2", "-1,-1", "1"),
];

pub fn rows<'a>(table: &'a [(&'a str, &'a str, &'a str)], system: &str) -> Vec<(&'a str, &'a str)> {
    table
        .iter()
        .filter(|(s, _, _)| s.eq_ignore_ascii_case(system))
        .map(|&(_, l, p)| (l, p))
        .collect()
}
