use num_traits::One;

use crate::error::{Error, Result};
use crate::numeric::{rat_int, BigRational};
use crate::polyalg::{ExpPoly, Polynomial};

/// One member of the θ-chain: the function `scale · e^{j0 t} · body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEntry {
    pub name: &'static str,
    pub body: ExpPoly,
    pub j0: u32,
    pub scale: BigRational,
}

impl ChainEntry {
    fn plain(name: &'static str, body: ExpPoly) -> Self {
        ChainEntry { name, body, j0: 0, scale: BigRational::one() }
    }

    fn factored(name: &'static str, scale: i64, body: ExpPoly) -> Self {
        ChainEntry { name, body, j0: 1, scale: rat_int(scale) }
    }

    /// Whether the entry records a factorization `F = c e^t G`.
    pub fn is_factored(&self) -> bool {
        self.j0 != 0
    }

    /// The represented function as a single exponential polynomial.
    pub fn value(&self) -> ExpPoly {
        self.body.shift_exp(self.j0).scale(&self.scale)
    }
}

/// θ and its successive derivatives, factored where the chain factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaChain {
    entries: Vec<ChainEntry>,
}

/// Chain labels in order. Entries 1, 7 and 13 are the factored ones.
pub const CHAIN_NAMES: [&str; 19] = [
    "θ", "θ′", "θ₁", "θ₁′", "θ₁″", "θ₁‴", "θ₁⁽⁴⁾", "θ₁⁽⁵⁾", "θ₂", "θ₂′", "θ₂″", "θ₂‴", "θ₂⁽⁴⁾", "θ₂⁽⁵⁾",
    "θ₃", "θ₃′", "θ₃″", "θ₃‴", "θ₃⁽⁴⁾",
];

/// Prefactors of the three factorizations: `θ′ = 2e^tθ₁`, `θ₁⁽⁵⁾ = e^tθ₂`,
/// `θ₂⁽⁵⁾ = 16e^tθ₃`.
const FACTORS: [(usize, i64); 3] = [(1, 2), (7, 1), (13, 16)];

/// Printed values at `t = 0`, in chain order with `θ₁(0)` absent.
pub const INITIAL_VALUES: [(&str, i64); 18] = [
    ("θ", 0),
    ("θ′", 0),
    ("θ₁′", 0),
    ("θ₁″", 0),
    ("θ₁‴", 0),
    ("θ₁⁽⁴⁾", 0),
    ("θ₁⁽⁵⁾", 0),
    ("θ₂", 0),
    ("θ₂′", 0),
    ("θ₂″", 22960),
    ("θ₂‴", 216160),
    ("θ₂⁽⁴⁾", 1188248),
    ("θ₂⁽⁵⁾", 5009904),
    ("θ₃", 313119),
    ("θ₃′", 809098),
    ("θ₃″", 1651644),
    ("θ₃‴", 2711964),
    ("θ₃⁽⁴⁾", 3352392),
];

impl ThetaChain {
    pub fn entries(&self) -> &[ChainEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&ChainEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Regenerates the whole chain from θ by exact differentiation,
    /// dividing out the three prefactors. Fails if a prefactor does not
    /// divide exactly.
    pub fn regenerate(theta: &ExpPoly) -> Result<Self> {
        let mut entries = vec![ChainEntry::plain(CHAIN_NAMES[0], theta.clone())];
        let mut current = theta.clone();
        for (i, name) in CHAIN_NAMES.iter().enumerate().skip(1) {
            if let Some(&(_, c)) = FACTORS.iter().find(|(k, _)| *k == i) {
                current = current.derivative();
                let body = current.divide_prefactor(&rat_int(c), 1)?;
                entries.push(ChainEntry::factored(name, c, body.clone()));
                current = body;
            } else if FACTORS.iter().any(|(k, _)| *k + 1 == i) {
                entries.push(ChainEntry::plain(name, current.clone()));
            } else {
                current = current.derivative();
                entries.push(ChainEntry::plain(name, current.clone()));
            }
        }
        Ok(ThetaChain { entries })
    }

    /// Adjacent pairs `(from, to, holds)`: a derivative link asserts
    /// `d/dt from = to`; a factorization link asserts `from = c e^t to`.
    pub fn links(&self) -> Vec<(&'static str, &'static str, bool)> {
        self.entries
            .windows(2)
            .map(|w| {
                let (a, b) = (&w[0], &w[1]);
                let ok = if a.is_factored() {
                    a.body == b.value()
                } else {
                    a.value().derivative() == b.value()
                };
                (a.name, b.name, ok)
            })
            .collect()
    }
}

/// Exact kernel objects: `Q`, `Pnum = P·(e^t − 1)` and the θ-chain as
/// printed.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub q: ExpPoly,
    pub pnum: ExpPoly,
    pub chain: ThetaChain,
}

fn ep(parts: &[(u32, i64, &[i64])]) -> ExpPoly {
    ExpPoly::from_terms(
        parts.iter().map(|(j, c, p)| (*j, Polynomial::from_ints(p).scale(&rat_int(*c)))),
    )
}

fn scaled(c: i64, e: ExpPoly) -> ExpPoly {
    e.scale(&rat_int(c))
}

pub fn build_kernel() -> Kernel {
    let q = ep(&[(2, 1, &[2]), (1, -1, &[18, -6, 1]), (0, 1, &[16, 8])]);
    let pnum = ep(&[(2, 1, &[-86, 54, -12, 1]), (1, -1, &[-160, 16, -12, 1]), (0, 1, &[-74, -26])]);

    let theta = ep(&[
        (5, 2, &[-140, 78, -15, 1]),
        (4, 1, &[1236, -420, 132, -16, 1]),
        (3, -2, &[1018, -132, 125, -26, 5]),
        (2, 1, &[1660, -228, 356, -88, 17]),
        (1, -1, &[756, -228, 40, -38, 8]),
        (0, 1, &[176]),
    ]);
    let t1 = ep(&[
        (4, 1, &[-622, 360, -72, 5]),
        (3, 2, &[1131, -354, 120, -15, 1]),
        (2, -1, &[2922, -146, 297, -58, 15]),
        (1, 1, &[1546, 128, 224, -54, 17]),
        (0, 1, &[-264, 74, 37, 3, -4]),
    ]);
    let t1d1 = ep(&[
        (4, 1, &[-2128, 1296, -273, 20]),
        (3, 2, &[3039, -822, 315, -41, 3]),
        (2, -2, &[2849, 151, 210, -28, 15]),
        (1, 1, &[1674, 576, 62, 14, 17]),
        (0, 1, &[74, 74, 9, -16]),
    ]);
    let t1d2 = ep(&[
        (4, 2, &[-3608, 2319, -516, 40]),
        (3, 6, &[2765, -612, 274, -37, 3]),
        (2, -2, &[5849, 722, 336, 4, 30]),
        (1, 1, &[2250, 700, 104, 82, 17]),
        (0, 1, &[74, 18, -48]),
    ]);
    let t1d3 = ep(&[
        (4, 2, &[-12113, 8244, -1944, 160]),
        (3, 6, &[7683, -1288, 711, -99, 9]),
        (2, -8, &[3105, 529, 171, 32, 15]),
        (1, 1, &[2950, 908, 350, 150, 17]),
        (0, 1, &[18, -96]),
    ]);
    let t1d4 = ep(&[
        (4, 32, &[-2513, 1818, -456, 40]),
        (3, 6, &[21761, -2442, 1836, -261, 27]),
        (2, -8, &[6739, 1400, 438, 124, 30]),
        (1, 1, &[3858, 1608, 800, 218, 17]),
        (0, 1, &[-96]),
    ]);
    let t2 = ep(&[
        (3, 64, &[-4117, 3180, -852, 80]),
        (2, 18, &[20947, -1218, 1575, -225, 27]),
        (1, -16, &[7439, 1838, 624, 184, 30]),
        (0, 1, &[5466, 3208, 1454, 286, 17]),
    ]);
    let t2d1 = scaled(
        2,
        ep(&[
            (3, 96, &[-3057, 2612, -772, 80]),
            (2, 9, &[40676, 714, 2475, -342, 54]),
            (1, -8, &[9277, 3086, 1176, 304, 30]),
            (0, 1, &[1604, 1454, 429, 34]),
        ]),
    );
    let t2d2 = scaled(
        4,
        ep(&[
            (3, 48, &[-6559, 6292, -2076, 240]),
            (2, 9, &[41033, 3189, 1962, -234, 54]),
            (1, -4, &[12363, 5438, 2088, 424, 30]),
            (0, 1, &[727, 429, 51]),
        ]),
    );
    let t2d3 = scaled(
        4,
        ep(&[
            (3, 48, &[-13385, 14724, -5508, 720]),
            (2, 9, &[85255, 10302, 3222, -252, 108]),
            (1, -4, &[17801, 9614, 3360, 544, 30]),
            (0, 1, &[429, 102]),
        ]),
    );
    let t2d4 = scaled(
        8,
        ep(&[
            (3, 72, &[-8477, 11052, -4788, 720]),
            (2, 18, &[45203, 6762, 1422, -18, 54]),
            (1, -2, &[27415, 16334, 4992, 664, 30]),
            (0, 1, &[51]),
        ]),
    );
    let t3 = ep(&[
        (2, 108, &[-4793, 7860, -4068, 720]),
        (1, 18, &[48584, 8184, 1395, 90, 54]),
        (0, -1, &[43749, 26318, 6984, 784, 30]),
    ]);
    let t3d1 = scaled(
        2,
        ep(&[
            (2, 108, &[-863, 3792, -2988, 720]),
            (1, 9, &[56768, 10974, 1665, 306, 54]),
            (0, -1, &[13159, 6984, 1176, 60]),
        ]),
    );
    let t3d2 = scaled(
        6,
        ep(&[
            (2, 72, &[1033, 804, -1908, 720]),
            (1, 3, &[67742, 14304, 2583, 522, 54]),
            (0, -4, &[582, 196, 15]),
        ]),
    );
    let t3d3 = scaled(
        6,
        ep(&[
            (2, 144, &[1435, -1104, -828, 720]),
            (1, 3, &[82046, 19470, 4149, 738, 54]),
            (0, -8, &[98, 15]),
        ]),
    );
    let t3d4 = scaled(
        18,
        ep(&[(2, 96, &[883, -1932, 252, 720]), (1, 1, &[101516, 27768, 6363, 954, 54]), (0, 1, &[-40])]),
    );

    let p = ChainEntry::plain;
    let entries = vec![
        p("θ", theta),
        ChainEntry::factored("θ′", 2, t1.clone()),
        p("θ₁", t1),
        p("θ₁′", t1d1),
        p("θ₁″", t1d2),
        p("θ₁‴", t1d3),
        p("θ₁⁽⁴⁾", t1d4),
        ChainEntry::factored("θ₁⁽⁵⁾", 1, t2.clone()),
        p("θ₂", t2),
        p("θ₂′", t2d1),
        p("θ₂″", t2d2),
        p("θ₂‴", t2d3),
        p("θ₂⁽⁴⁾", t2d4),
        ChainEntry::factored("θ₂⁽⁵⁾", 16, t3.clone()),
        p("θ₃", t3),
        p("θ₃′", t3d1),
        p("θ₃″", t3d2),
        p("θ₃‴", t3d3),
        p("θ₃⁽⁴⁾", t3d4),
    ];
    Kernel { q, pnum, chain: ThetaChain { entries } }
}

/// `u(t) = 883 − 1932t + 252t² + 720t³` from the θ₃⁽⁴⁾ lower bound.
pub fn u_poly() -> Polynomial {
    Polynomial::from_ints(&[883, -1932, 252, 720])
}

/// The quartic multiplying `e^t` in θ₃⁽⁴⁾/18.
pub fn theta34_quartic() -> Polynomial {
    Polynomial::from_ints(&[101516, 27768, 6363, 954, 54])
}

/// `(1+t)·quartic − 40` as printed: `101476 + 129284t + … + 54t⁵`.
pub fn theta34_quintic() -> Polynomial {
    Polynomial::from_ints(&[101476, 129284, 34131, 7317, 1008, 54])
}

/// The printed degree-7 numerator `54t⁷ + … + 744976`.
pub fn degree7() -> Polynomial {
    Polynomial::from_ints(&[744976, -291584, -839488, 209804, 309567, 72621, 792, 54])
}

/// The printed rewrite `54t⁷+792t⁶+72621t⁵+(309567t²+828938t+508821)(t−1)²−102880t+236155`.
pub fn degree7_rewrite() -> Polynomial {
    let sq = Polynomial::from_ints(&[1, -1]).pow(2);
    let head = Polynomial::from_ints(&[236155, -102880, 0, 0, 0, 72621, 792, 54]);
    &head + &(&Polynomial::from_ints(&[508821, 828938, 309567]) * &sq)
}

/// Printed Maclaurin coefficient of Q: `(2^{k+1} − (k−9)(k+2))/k!`.
pub fn q_coeff_printed(k: u32) -> BigRational {
    q_coeff_with(k, |k| (k - 9) * (k + 2))
}

/// Maclaurin coefficient of `Q` from its closed form: `(2^{k+1} − (k²−7k+18))/k!` for k ≥ 3.
pub fn q_coeff_derived(k: u32) -> BigRational {
    q_coeff_with(k, |k| k * k - 7 * k + 18)
}

fn q_coeff_with(k: u32, sub: impl Fn(i64) -> i64) -> BigRational {
    let mut fact = num_bigint::BigInt::one();
    for i in 2..=k {
        fact *= i;
    }
    let top = (num_bigint::BigInt::one() << (k as usize + 1)) - sub(k as i64);
    BigRational::new(top, fact)
}

/// The cleared-denominator form of `d/dt[P/Q] = −θ/((e^t−1)²Q²)`:
/// `N′(e^t−1)Q − N(e^tQ + (e^t−1)Q′) + θ`, which must vanish.
pub fn ratio_derivative_residual(k: &Kernel) -> Result<ExpPoly> {
    let theta = &k.chain.entries().first().ok_or_else(|| Error::Inconsistent("empty chain".into()))?.body;
    let em1 = &ExpPoly::term(1, &[1]) - &ExpPoly::term(0, &[1]);
    let n = &k.pnum;
    let lhs = &(&(&n.derivative() * &em1) * &k.q)
        - &(n * &(&k.q.shift_exp(1) + &(&em1 * &k.q.derivative())));
    Ok(&lhs + theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn transcribed_constants() {
        let k = build_kernel();
        assert_eq!(k.q.part(0), Polynomial::from_ints(&[16, 8]));
        assert_eq!(k.chain.entries()[0].body.part(0), Polynomial::from_ints(&[176]));
        assert_eq!(k.pnum.part(0), Polynomial::from_ints(&[-74, -26]));
        assert_eq!(k.chain.entries().len(), 19);
    }

    #[test]
    fn printed_chain_is_self_consistent_and_regenerates() {
        let k = build_kernel();
        for (a, b, ok) in k.chain.links() {
            assert!(ok, "{a} -> {b}");
        }
        let regen = ThetaChain::regenerate(&k.chain.entries()[0].body).unwrap();
        assert_eq!(regen, k.chain);
        assert!(ratio_derivative_residual(&k).unwrap().is_zero());
    }

    #[test]
    fn q_coefficients() {
        let q = build_kernel().q;
        for k in 3..=40 {
            assert_eq!(q.taylor_coeff(k as usize), q_coeff_derived(k));
        }
        assert_eq!(q_coeff_printed(3), rat(23, 3));
        assert_eq!(degree7(), degree7_rewrite());
    }
}
