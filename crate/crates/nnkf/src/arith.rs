//! Exact integer and rational helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IVec = Vec<Int>;
pub type RVec = Vec<Rat>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn ivec(v: &[i64]) -> IVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rvec(v: &[(i64, i64)]) -> RVec {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn to_rvec(v: &[Int]) -> RVec {
    v.iter().map(rat_int).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    let mut s = Int::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Pairing of a rational covector with an integer point.
pub fn pair(v: &[Rat], p: &[Int]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in v.iter().zip(p) {
        if !x.is_zero() && !y.is_zero() {
            s += x * rat_int(y);
        }
    }
    s
}

pub fn sub(a: &[Int], b: &[Int]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Int], b: &[Int]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_rat(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Divides an integer vector by the gcd of its entries.
pub fn make_primitive(v: &mut [Int]) {
    let mut g = Int::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn lcm_of_denominators(v: &[Rat]) -> Int {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    l
}

/// Clears denominators, returning the integer vector and the common scale.
pub fn clear_denominators(v: &[Rat]) -> (IVec, Int) {
    let l = lcm_of_denominators(v);
    let out = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    (out, l)
}

pub fn factorial(k: usize) -> Int {
    let mut f = Int::one();
    for i in 2..=k {
        f *= Int::from(i);
    }
    f
}

/// Canonical textual form of a rational: `p` or `p/q` in lowest terms.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

pub fn is_positive_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_positive())
}
