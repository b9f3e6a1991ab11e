//! Brute-force oracles written from the definitions alone. Nothing here
//! calls into the library, so agreement with it is meaningful.

#![allow(dead_code)]

use rand::Rng;

/// `binom(m, k) mod p` from Pascal's triangle over exact integers.
pub struct Binomials {
    rows: Vec<Vec<u128>>,
}

impl Binomials {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(max + 1);
        for m in 0..=max {
            let mut row = vec![1u128; m + 1];
            for k in 1..m {
                row[k] = rows[m - 1][k - 1] + rows[m - 1][k];
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    pub fn exact(&self, m: usize, k: usize) -> u128 {
        if k > m {
            0
        } else {
            self.rows[m][k]
        }
    }

    pub fn mod_p(&self, m: usize, k: usize, p: u128) -> u128 {
        self.exact(m, k) % p
    }
}

/// Length of a longest regular chain starting at `a`, by dynamic
/// programming over every multiexponent below `a`. Chain elements are
/// nonzero, strictly decreasing componentwise, and consecutive product
/// binomials are nonzero mod `p`.
pub fn longest_chain_len(a: &[usize], p: u128) -> usize {
    let max = *a.iter().max().unwrap_or(&0);
    let binoms = Binomials::new(max);
    let dims: Vec<usize> = a.iter().map(|&x| x + 1).collect();
    let total: usize = dims.iter().product();
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut v = vec![0; dims.len()];
        for i in (0..dims.len()).rev() {
            v[i] = idx % dims[i];
            idx /= dims[i];
        }
        v
    };
    // indices grow with every coordinate, so predecessors come first
    let mut best = vec![0usize; total];
    for idx in 1..total {
        let b = decode(idx);
        let mut len = 1;
        for (jdx, &prev) in best.iter().enumerate().take(idx).skip(1) {
            let c = decode(jdx);
            let below = c.iter().zip(&b).all(|(x, y)| x <= y) && c != b;
            if !below {
                continue;
            }
            let coeff = b
                .iter()
                .zip(&c)
                .fold(1u128, |acc, (&bi, &ci)| acc * binoms.mod_p(bi, ci, p) % p);
            if coeff != 0 {
                len = len.max(prev + 1);
            }
        }
        best[idx] = len;
    }
    best[total - 1]
}

/// Base-p digit sum.
pub fn digit_sum(mut m: u64, p: u64) -> u64 {
    let mut s = 0;
    while m > 0 {
        s += m % p;
        m /= p;
    }
    s
}

/// Additive structure of GF(p^e) on base-p digit encodings; enough for
/// derived forms, which only add vectors and sum values with signs.
#[derive(Clone, Copy, Debug)]
pub struct Additive {
    pub p: u32,
    pub e: u32,
}

impl Additive {
    pub fn q(&self) -> u32 {
        self.p.pow(self.e)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }
}

/// A map `GF(q)^n → GF(q)` as a table over points in lexicographic order
/// (first coordinate most significant).
#[derive(Clone, Debug)]
pub struct MapTable {
    pub field: Additive,
    pub n: usize,
    pub values: Vec<u32>,
}

impl MapTable {
    pub fn points(&self) -> usize {
        (self.field.q() as usize).pow(self.n as u32)
    }

    fn add_points(&self, mut x: usize, mut y: usize) -> usize {
        let q = self.field.q() as usize;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.n {
            out += self.field.add((x % q) as u32, (y % q) as u32) as usize * place;
            x /= q;
            y /= q;
            place *= q;
        }
        out
    }

    /// `Σ_I (−1)^{s−|I|} f(Σ_{i∈I} v_i)` over all subsets `I`.
    pub fn derived(&self, tuple: &[usize]) -> u32 {
        let s = tuple.len();
        let mut acc = 0;
        for mask in 0u32..(1 << s) {
            let mut point = 0;
            for (i, &v) in tuple.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    point = self.add_points(point, v);
                }
            }
            let val = self.values[point];
            let term = if (s - mask.count_ones() as usize).is_multiple_of(2) {
                val
            } else {
                self.field.neg(val)
            };
            acc = self.field.add(acc, term);
        }
        acc
    }

    /// Whether `Δˢf` vanishes on every nondecreasing tuple of points.
    pub fn form_vanishes(&self, s: usize) -> bool {
        let n = self.points();
        let mut tuple = vec![0usize; s];
        loop {
            if self.derived(&tuple) != 0 {
                return false;
            }
            let mut i = s;
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                if tuple[i] + 1 < n {
                    let v = tuple[i] + 1;
                    for slot in tuple[i..].iter_mut() {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    }

    /// `None` for infinity.
    pub fn comb_degree(&self) -> Option<u64> {
        if self.values[0] != 0 {
            return None;
        }
        let bound = self.n * self.field.e as usize * (self.field.p as usize - 1) + 1;
        for s in 1..=bound {
            if self.form_vanishes(s) {
                return Some(s as u64 - 1);
            }
        }
        panic!("derived form of order {bound} does not vanish");
    }

    pub fn random<R: Rng>(rng: &mut R, field: Additive, n: usize) -> Self {
        let q = field.q();
        let len = (q as usize).pow(n as u32);
        let mut values: Vec<u32> = (0..len).map(|_| rng.random_range(0..q)).collect();
        values[0] = 0;
        MapTable { field, n, values }
    }
}

/// Binary vector as one byte per coordinate.
pub type Bits = Vec<u8>;

pub fn parse_bits(s: &str) -> Bits {
    s.chars()
        .filter_map(|c| match c {
            '0' => Some(0),
            '1' => Some(1),
            _ => None,
        })
        .collect()
}

pub fn weight(v: &[u8]) -> u64 {
    v.iter().map(|&b| b as u64).sum()
}

pub fn xor(u: &[u8], v: &[u8]) -> Bits {
    u.iter().zip(v).map(|(a, b)| a ^ b).collect()
}

pub fn and(u: &[u8], v: &[u8]) -> Bits {
    u.iter().zip(v).map(|(a, b)| a & b).collect()
}

/// All `2^k` codewords; index bit `i` selects row `i`.
pub fn span(rows: &[Bits], len: usize) -> Vec<Bits> {
    (0..1usize << rows.len())
        .map(|x| {
            let mut c = vec![0u8; len];
            for (i, r) in rows.iter().enumerate() {
                if x >> i & 1 == 1 {
                    c = xor(&c, r);
                }
            }
            c
        })
        .collect()
}

/// GF(2) rank by elimination on byte vectors.
pub fn rank(rows: &[Bits]) -> usize {
    let mut m: Vec<Bits> = rows.to_vec();
    let mut r = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        if let Some(piv) = (r..m.len()).find(|&i| m[i][c] == 1) {
            m.swap(r, piv);
            for i in 0..m.len() {
                if i != r && m[i][c] == 1 {
                    let row = m[r].clone();
                    m[i] = xor(&m[i], &row);
                }
            }
            r += 1;
        }
    }
    r
}

/// Failures of the three Griess conditions for `eta[x][y]` on `words`.
pub fn griess_failures(words: &[Bits], eta: &[Vec<u8>]) -> usize {
    let n = words.len();
    let mut bad = 0;
    for x in 0..n {
        if eta[x][x] as u64 != (weight(&words[x]) / 4) % 2 {
            bad += 1;
        }
        for y in 0..n {
            let wxy = weight(&and(&words[x], &words[y]));
            if (eta[x][y] ^ eta[y][x]) as u64 != (wxy / 2) % 2 {
                bad += 1;
            }
            for z in 0..n {
                let w3 = weight(&and(&and(&words[x], &words[y]), &words[z]));
                let lhs = eta[x][y] ^ eta[x ^ y][z] ^ eta[y][z] ^ eta[x][y ^ z];
                if lhs as u64 != w3 % 2 {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// Every row and column of a Cayley table is a permutation.
pub fn is_latin(table: &[Vec<u32>]) -> bool {
    let n = table.len();
    let perm = |vals: Vec<u32>| {
        let mut seen = vec![false; n];
        vals.iter()
            .all(|&v| (v as usize) < n && !std::mem::replace(&mut seen[v as usize], true))
    };
    (0..n).all(|i| perm(table[i].clone()) && perm((0..n).map(|j| table[j][i]).collect()))
}

/// `x(y(xz)) = ((xy)x)z` on all triples of a Cayley table.
pub fn is_moufang(t: &[Vec<u32>]) -> bool {
    let n = t.len();
    let m = |a: usize, b: usize| t[a][b] as usize;
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| m(x, m(y, m(x, z))) == m(m(m(x, y), x), z)))
    })
}

/// Random equal-length bit vectors.
pub fn random_bits<R: Rng>(rng: &mut R, len: usize) -> Bits {
    (0..len).map(|_| rng.random_range(0..2u8)).collect()
}

/// Prints one acceptance line and returns whether it passed.
pub fn report(id: usize, name: &str, ok: bool, elapsed: std::time::Duration, limit_secs: f64) -> bool {
    let in_time = elapsed.as_secs_f64() < limit_secs;
    let pass = ok && in_time;
    println!(
        "criterion {id} [{}] {name}: exact={ok} time={:.3}s limit={limit_secs}s",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    pass
}
