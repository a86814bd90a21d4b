//! Named reference configurations.
//!
//! Values are kept as the printed decimal strings and parsed on demand;
//! `str::parse::<f64>` rounds each to the nearest double.

use crate::geometry::DistanceVector;

/// A named configuration with its source decimals in `r12, r13, r14, r23,
/// r24, r34` order.
#[derive(Debug, Clone, Copy)]
pub struct GoldenEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub decimals: [&'static str; 6],
}

impl GoldenEntry {
    pub fn distances(&self) -> DistanceVector {
        let r = self.decimals.map(|s| s.parse::<f64>().expect("golden decimals are valid"));
        DistanceVector::from_array(r).expect("golden distances are positive")
    }
}

pub const E1: GoldenEntry = GoldenEntry {
    name: "E1",
    description: "trapezoidal c.c. with m1 > m2 (m1/m2 = 1.0194571510769873907, m1/m4 = 7.9942119368105807422)",
    decimals: [
        "8",
        "9.7414781617108145730",
        "7.52080447824566090",
        "7.1064329749865061893",
        "8.75000000000000000",
        "4.0246879466945716437",
    ],
};

pub const E2: GoldenEntry = GoldenEntry {
    name: "E2",
    description: "trapezoidal c.c. with m1 < m2 (m1/m2 = 0.69074480337446980353, m1/m4 = 0.87696321790891338292)",
    decimals: [
        "8",
        "12.129061710615553753",
        "7.8020830551846857406",
        "7.6549229903601603027",
        "9.5117033174926140565",
        "7.3822682494734852600",
    ],
};

pub const E3: GoldenEntry = GoldenEntry {
    name: "E3",
    description: "non-symmetric trapezoidal c.c. with m1 = m2",
    decimals: [
        "8",
        "10.13318587483539368",
        "7.59545875301365884",
        "7.03230033956929474",
        "8.63262460668978253",
        "4.37871386495945262",
    ],
};

pub const SQ: GoldenEntry = GoldenEntry {
    name: "SQ",
    description: "unit square",
    decimals: ["1", "1.4142135623730950488", "1", "1", "1.4142135623730950488", "1"],
};

pub const ISO: GoldenEntry = GoldenEntry {
    name: "ISO",
    description: "isosceles trapezoid with sides (2, 1, 1, 1), not a c.c.",
    decimals: ["2", "1.7320508075688772935", "1", "1", "1.7320508075688772935", "1"],
};

pub const REGISTRY: [GoldenEntry; 5] = [E1, E2, E3, SQ, ISO];

/// Printed mass ratios `(m1/m2, m1/m4)` for `E1` and `E2`.
pub const E1_RATIOS: (&str, &str) = ("1.0194571510769873907", "7.9942119368105807422");
pub const E2_RATIOS: (&str, &str) = ("0.69074480337446980353", "0.87696321790891338292");

/// Looks up an entry by name, ignoring ASCII case.
pub fn lookup(name: &str) -> Option<&'static GoldenEntry> {
    REGISTRY.iter().find(|g| g.name.eq_ignore_ascii_case(name))
}

pub fn e1() -> DistanceVector {
    E1.distances()
}
pub fn e2() -> DistanceVector {
    E2.distances()
}
pub fn e3() -> DistanceVector {
    E3.distances()
}
pub fn square() -> DistanceVector {
    SQ.distances()
}
pub fn iso() -> DistanceVector {
    ISO.distances()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_to_nearest_double() {
        let r = e1();
        assert_eq!(r.r12, 8.0);
        assert_eq!(r.r24, 8.75);
        assert_eq!(r.r34, 4.024_687_946_694_572);
        assert!(lookup("e3").is_some());
        assert!(lookup("E4").is_none());
    }

    #[test]
    fn decimals_round_trip() {
        for g in REGISTRY {
            let r = g.distances();
            for (s, v) in g.decimals.iter().zip(r.to_array()) {
                let exact: f64 = s.parse().unwrap();
                assert_eq!(exact.to_bits(), v.to_bits());
            }
        }
    }
}
