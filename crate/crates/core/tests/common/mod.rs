//! Reference implementations written straight from the definitions, sharing
//! nothing with the library beyond the rational type and matrix access.
#![allow(dead_code)]

use graev::qpspace::Qpm;
use graev::Rational;
use num_traits::Zero;

/// `(point, sign)` with sign `+1`, `-1`, or `0` for the neutral letter.
pub type Sym = (usize, i8);

pub const E: Sym = (usize::MAX, 0);

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn matrix(m: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
    m.iter().map(|row| row.iter().map(|&(p, q)| r(p, q)).collect()).collect()
}

fn inv(s: Sym) -> Sym {
    (s.0, -s.1)
}

/// The extended distance on `X ∪ {e}`; `None` is `e`.
fn rho_e(m: &[Vec<Rational>], x: Option<usize>, y: Option<usize>) -> Rational {
    match (x, y) {
        (Some(a), Some(b)) => m[a][b].clone(),
        (None, None) => Rational::zero(),
        _ => r(1, 1),
    }
}

fn upper(s: Sym) -> Option<Option<usize>> {
    match s.1 {
        1 => Some(Some(s.0)),
        0 => Some(None),
        _ => None,
    }
}

fn lower(s: Sym) -> Option<Option<usize>> {
    match s.1 {
        -1 => Some(Some(s.0)),
        0 => Some(None),
        _ => None,
    }
}

pub fn rho_star(m: &[Vec<Rational>], x: Sym, y: Sym) -> Rational {
    if x == y {
        return Rational::zero();
    }
    if let (Some(a), Some(b)) = (upper(x), upper(y)) {
        return rho_e(m, a, b);
    }
    if let (Some(a), Some(b)) = (lower(x), lower(y)) {
        // ρ_e(y⁻¹, x⁻¹)
        return rho_e(m, b, a);
    }
    r(2, 1)
}

/// `½ Σ ρ*(xᵢ⁻¹, x_{φ(i)})`.
pub fn gamma(m: &[Vec<Rational>], word: &[Sym], phi: &[usize]) -> Rational {
    let total: Rational = (0..word.len()).map(|i| rho_star(m, inv(word[i]), word[phi[i]])).sum();
    total / r(2, 1)
}

/// Every perfect matching of `0..2n` as a partner table.
pub fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(p: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        match p.iter().position(Option::is_none) {
            None => out.push(p.iter().map(|x| x.unwrap()).collect()),
            Some(i) => {
                for j in i + 1..p.len() {
                    if p[j].is_none() {
                        p[i] = Some(j);
                        p[j] = Some(i);
                        go(p, out);
                        p[i] = None;
                        p[j] = None;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; 2 * n], &mut out);
    out
}

pub fn is_noncrossing(phi: &[usize]) -> bool {
    (0..phi.len()).all(|a| {
        (0..phi.len()).all(|c| {
            let (b, d) = (phi[a], phi[c]);
            !(a < c && c < b && b < d)
        })
    })
}

pub fn schemes(n: usize) -> Vec<Vec<usize>> {
    matchings(n).into_iter().filter(|p| is_noncrossing(p)).collect()
}

/// All ways to place `word` in order inside `total` slots, `e` elsewhere.
pub fn paddings(word: &[Sym], total: usize) -> Vec<Vec<Sym>> {
    if word.len() > total {
        return Vec::new();
    }
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    if !word.is_empty() {
        for mut rest in paddings(&word[1..], total - 1) {
            rest.insert(0, word[0]);
            out.push(rest);
        }
    }
    if word.len() < total {
        for mut rest in paddings(word, total - 1) {
            rest.insert(0, E);
            out.push(rest);
        }
    }
    out
}

/// Free-group norm of a reduced word by brute force over `n ≤ max_n`.
pub fn norm(m: &[Vec<Rational>], word: &[Sym], max_n: usize) -> Rational {
    if word.is_empty() {
        return Rational::zero();
    }
    let mut best: Option<Rational> = None;
    for n in word.len().div_ceil(2)..=max_n {
        let schemes = schemes(n);
        for padded in paddings(word, 2 * n) {
            for phi in &schemes {
                let g = gamma(m, &padded, phi);
                if best.as_ref().is_none_or(|b| &g < b) {
                    best = Some(g);
                }
            }
        }
    }
    best.unwrap()
}

/// Abelian norm: letters from coefficients, padded with `e` up to `extra`
/// more slots, minimised over all perfect matchings.
pub fn abelian_norm(m: &[Vec<Rational>], coeffs: &[i64], extra: usize) -> Rational {
    let mut letters: Vec<Sym> = Vec::new();
    for (p, &c) in coeffs.iter().enumerate() {
        for _ in 0..c.unsigned_abs() {
            letters.push((p, c.signum() as i8));
        }
    }
    if letters.is_empty() {
        return Rational::zero();
    }
    let mut best: Option<Rational> = None;
    for pad in 0..=extra {
        let mut w = letters.clone();
        w.extend(std::iter::repeat_n(E, pad));
        if w.len() % 2 == 1 {
            continue;
        }
        for phi in matchings(w.len() / 2) {
            let g = gamma(m, &w, &phi);
            if best.as_ref().is_none_or(|b| &g < b) {
                best = Some(g);
            }
        }
    }
    best.unwrap()
}

pub fn qpm(labels: &[&str], m: Vec<Vec<Rational>>) -> Qpm {
    Qpm::new(labels.iter().map(|s| s.to_string()).collect(), m).unwrap()
}

pub fn instance_a_matrix() -> Vec<Vec<Rational>> {
    matrix(&[&[(0, 1), (1, 4)], &[(1, 1), (0, 1)]])
}

/// Translates a library word into reference symbols.
pub fn syms(word: &graev::words::Word) -> Vec<Sym> {
    use graev::words::Letter;
    word.letters()
        .iter()
        .map(|l| match *l {
            Letter::Pos(p) => (p.0, 1),
            Letter::Neg(p) => (p.0, -1),
            Letter::Neutral => E,
        })
        .collect()
}

pub fn catalan(n: usize) -> usize {
    // C_n = binom(2n, n) / (n + 1)
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * (2 * n as u128 - k) / (k + 1);
    }
    (c / (n as u128 + 1)) as usize
}

pub fn double_factorial_odd(n: usize) -> usize {
    (1..=n).map(|k| 2 * k - 1).product()
}
