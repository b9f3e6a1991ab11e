//! Code loops of doubly even codes.
//!
//! A factor set `η: C × C → GF(2)` satisfying the Griess conditions turns
//! `C × GF(2)` into a Moufang loop under `(x, a)(y, b) = (x + y, a + b + η(x, y))`.
//! Codewords are indexed by coefficient vector (bit `i` selects basis row
//! `i`), and the loop element `(x, a)` has index `2·x + a`.

use serde::Serialize;

use crate::codes::{BinaryCode, CodeLevel, Codeword};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::polarization::{comb_degree_oracle, derived_form_table, CombDegree};
use crate::poly_map::ValueTable;

/// Largest code dimension accepted by [`solve_eta`]; loops then have at
/// most 128 elements.
pub const MAX_LOOP_CODE_DIM: usize = 6;

/// Weights of all codewords and of their pairwise and triple intersections,
/// indexed by coefficient vector.
struct WeightData {
    words: Vec<Codeword>,
}

impl WeightData {
    fn new(code: &BinaryCode) -> Result<Self> {
        Ok(WeightData {
            words: code.codewords()?,
        })
    }

    fn quarter(&self, x: usize) -> Result<u8> {
        let w = self.words[x].weight();
        if !w.is_multiple_of(4) {
            return Err(Error::NotDoublyEven(format!(
                "codeword {} has weight {w}",
                self.words[x]
            )));
        }
        Ok(((w / 4) & 1) as u8)
    }

    fn half_pair(&self, x: usize, y: usize) -> Result<u8> {
        let w = self.words[x].intersection_weight(&self.words[y]);
        if !w.is_multiple_of(2) {
            return Err(Error::NotDoublyEven(format!(
                "intersection of {} and {} has odd weight {w}",
                self.words[x], self.words[y]
            )));
        }
        Ok(((w / 2) & 1) as u8)
    }

    fn triple(&self, x: usize, y: usize, z: usize) -> u8 {
        (self.words[x].triple_intersection_weight(&self.words[y], &self.words[z]) & 1) as u8
    }
}

/// A Griess factor set on a doubly even code, stored as a `2^k × 2^k` bit
/// matrix indexed by coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaTable {
    code: BinaryCode,
    table: Vec<u8>,
}

impl EtaTable {
    /// Wraps an explicit table; the Griess conditions are not checked here
    /// (see [`EtaTable::griess_violations`]).
    pub fn from_raw(code: BinaryCode, table: Vec<u8>) -> Result<Self> {
        let size = 1usize << code.dimension();
        if table.len() != size * size {
            return Err(Error::Arity {
                expected: size * size,
                got: table.len(),
            });
        }
        if table.iter().any(|&b| b > 1) {
            return Err(Error::Invalid("η values must be bits".into()));
        }
        Ok(EtaTable { code, table })
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    /// Number of codewords.
    pub fn size(&self) -> usize {
        1 << self.code.dimension()
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.table[x * self.size() + y]
    }

    /// Rows of the bit matrix.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        self.table.chunks(self.size()).map(<[u8]>::to_vec).collect()
    }

    /// Every failure of `η(x,x) = w(x)/4`, `η(x,y) + η(y,x) = w(x∩y)/2` and
    /// `η(x,y) + η(x+y,z) + η(y,z) + η(x,y+z) = w(x∩y∩z)`, by enumeration.
    pub fn griess_violations(&self) -> Result<Vec<String>> {
        let data = WeightData::new(&self.code)?;
        let size = self.size();
        let mut out = Vec::new();
        for x in 0..size {
            if self.get(x, x) != data.quarter(x)? {
                out.push(format!("η({x},{x}) ≠ w(x)/4"));
            }
            for y in 0..size {
                if self.get(x, y) ^ self.get(y, x) != data.half_pair(x, y)? {
                    out.push(format!("η({x},{y}) + η({y},{x}) ≠ w(x∩y)/2"));
                }
                for z in 0..size {
                    let lhs = self.get(x, y) ^ self.get(x ^ y, z) ^ self.get(y, z) ^ self.get(x, y ^ z);
                    if lhs != data.triple(x, y, z) {
                        out.push(format!("cocycle condition fails at ({x},{y},{z})"));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// An affine form over GF(2): bit `nv` of the bitset is the constant.
#[derive(Clone)]
struct Affine(Vec<u64>);

impl Affine {
    fn zero(words: usize) -> Self {
        Affine(vec![0; words])
    }

    fn flip(&mut self, bit: usize) {
        self.0[bit / 64] ^= 1 << (bit % 64);
    }

    fn get(&self, bit: usize) -> bool {
        self.0[bit / 64] >> (bit % 64) & 1 == 1
    }

    fn add(&mut self, other: &Affine) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    /// Lowest set bit strictly below `limit`.
    fn lowest_var(&self, limit: usize) -> Option<usize> {
        for (i, &w) in self.0.iter().enumerate() {
            if w != 0 {
                let bit = i * 64 + w.trailing_zeros() as usize;
                return (bit < limit).then_some(bit);
            }
        }
        None
    }
}

/// Incremental row echelon form; each stored row has its pivot as lowest bit.
struct Eliminator {
    nv: usize,
    rows: Vec<Option<Affine>>,
}

impl Eliminator {
    fn new(nv: usize) -> Self {
        Eliminator {
            nv,
            rows: vec![None; nv],
        }
    }

    /// Adds the equation `form = 0`; fails if the system becomes inconsistent.
    fn insert(&mut self, mut form: Affine) -> Result<()> {
        while let Some(piv) = form.lowest_var(self.nv) {
            match &self.rows[piv] {
                Some(row) => form.add(row),
                None => {
                    self.rows[piv] = Some(form);
                    return Ok(());
                }
            }
        }
        if form.get(self.nv) {
            return Err(Error::Internal(
                "the Griess conditions have no solution for this code".into(),
            ));
        }
        Ok(())
    }

    /// A solution with every free variable set to 0.
    fn solve(&self) -> Vec<bool> {
        let mut val = vec![false; self.nv];
        for piv in (0..self.nv).rev() {
            if let Some(row) = &self.rows[piv] {
                let mut v = row.get(self.nv);
                for (j, &vj) in val.iter().enumerate().skip(piv + 1) {
                    if row.get(j) && vj {
                        v = !v;
                    }
                }
                val[piv] = v;
            }
        }
        val
    }
}

/// Solves the Griess conditions on a doubly even code of dimension at most
/// [`MAX_LOOP_CODE_DIM`], normalized by `η(0,·) = η(·,0) = 0`.
///
/// The values `η(x, c_i)` on basis vectors are the unknowns; the cocycle
/// condition with `z = c_i` expresses every `η(x, y)` through them. All
/// three conditions are then eliminated over GF(2) and the solution is
/// re-checked by enumeration.
pub fn solve_eta(code: &BinaryCode) -> Result<EtaTable> {
    let k = code.dimension();
    if k > MAX_LOOP_CODE_DIM {
        return Err(Error::cap("code dimension for code loops", MAX_LOOP_CODE_DIM as u64));
    }
    let level = code.level()?;
    if !level.at_least(2) {
        return Err(Error::NotDoublyEven(level.to_string()));
    }
    let data = WeightData::new(code)?;
    let size = 1usize << k;
    let nv = size * k;
    let words = (nv + 1).div_ceil(64);
    let unknown = |x: usize, i: usize| x * k + i;
    let constant = nv;

    let mut forms = vec![Affine::zero(words); size * size];
    for x in 0..size {
        for y in 1..size {
            let i = usize::BITS as usize - 1 - y.leading_zeros() as usize;
            let base = y ^ (1 << i);
            // η(x, base + c_i) = η(x, base) + η(x + base, c_i) + η(base, c_i) + w(x∩base∩c_i)
            let mut f = forms[x * size + base].clone();
            f.flip(unknown(x ^ base, i));
            f.flip(unknown(base, i));
            if data.triple(x, base, 1 << i) == 1 {
                f.flip(constant);
            }
            forms[x * size + y] = f;
        }
    }
    let form = |x: usize, y: usize| &forms[x * size + y];

    let mut elim = Eliminator::new(nv);
    for y in 0..size {
        elim.insert(form(0, y).clone())?;
    }
    for x in 0..size {
        let mut f = form(x, x).clone();
        if data.quarter(x)? == 1 {
            f.flip(constant);
        }
        elim.insert(f)?;
        for y in x + 1..size {
            let mut f = form(x, y).clone();
            f.add(form(y, x));
            if data.half_pair(x, y)? == 1 {
                f.flip(constant);
            }
            elim.insert(f)?;
        }
    }
    for x in 0..size {
        for y in 0..size {
            for z in 0..size {
                let mut f = form(x, y).clone();
                f.add(form(x ^ y, z));
                f.add(form(y, z));
                f.add(form(x, y ^ z));
                if data.triple(x, y, z) == 1 {
                    f.flip(constant);
                }
                elim.insert(f)?;
            }
        }
    }

    let val = elim.solve();
    let table = forms
        .iter()
        .map(|f| {
            let mut v = f.get(constant);
            for (j, &b) in val.iter().enumerate() {
                if b && f.get(j) {
                    v = !v;
                }
            }
            v as u8
        })
        .collect();
    let eta = EtaTable {
        code: code.clone(),
        table,
    };
    let bad = eta.griess_violations()?;
    if let Some(first) = bad.first() {
        return Err(Error::Internal(format!("solved η fails a Griess condition: {first}")));
    }
    Ok(eta)
}

/// An element `(x, a)` of a code loop: `x` is the coefficient vector of the
/// codeword and `a` the extra bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LoopElement {
    pub x: usize,
    pub a: u8,
}

impl LoopElement {
    pub fn new(x: usize, a: u8) -> Self {
        LoopElement { x, a: a & 1 }
    }

    pub fn index(self) -> usize {
        self.x * 2 + self.a as usize
    }

    pub fn from_index(idx: usize) -> Self {
        LoopElement {
            x: idx / 2,
            a: (idx & 1) as u8,
        }
    }
}

/// The code loop `C × GF(2)` with its Cayley table.
#[derive(Clone, Debug)]
pub struct CodeLoop {
    eta: EtaTable,
    order: usize,
    cayley: Vec<u32>,
    // ldiv[u·order + w] is the v with u·v = w, or u32::MAX if none
    ldiv: Vec<u32>,
}

/// Outcome of the exhaustive Moufang check.
#[derive(Clone, Debug, Serialize)]
pub struct MoufangReport {
    pub holds: bool,
    pub triples_checked: u64,
    pub first_violation: Option<[LoopElement; 3]>,
}

/// Outcome of [`CodeLoop::verify_identities`].
#[derive(Clone, Debug, Serialize)]
pub struct LoopReport {
    pub order: usize,
    pub squares: Vec<LoopElement>,
    pub elementary_abelian: bool,
    pub latin_square: bool,
    pub moufang: bool,
    pub violations: Vec<String>,
}

impl LoopReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// JSON form of a loop: the η bit matrix and the Cayley table of indices.
#[derive(Clone, Debug, Serialize)]
pub struct LoopExport {
    pub order: usize,
    pub eta: Vec<Vec<u8>>,
    pub cayley: Vec<Vec<u32>>,
}

impl CodeLoop {
    pub fn new(eta: EtaTable) -> Self {
        let size = eta.size();
        let order = 2 * size;
        let mut cayley = Vec::with_capacity(order * order);
        for u in 0..order {
            let (x, a) = (u / 2, u & 1);
            for v in 0..order {
                let (y, b) = (v / 2, v & 1);
                let bit = a ^ b ^ eta.get(x, y) as usize;
                cayley.push(((x ^ y) * 2 + bit) as u32);
            }
        }
        let mut ldiv = vec![u32::MAX; order * order];
        for u in 0..order {
            for v in 0..order {
                ldiv[u * order + cayley[u * order + v] as usize] = v as u32;
            }
        }
        CodeLoop {
            eta,
            order,
            cayley,
            ldiv,
        }
    }

    /// Solves η for `code` and builds its loop.
    pub fn from_code(code: &BinaryCode) -> Result<Self> {
        Ok(CodeLoop::new(solve_eta(code)?))
    }

    pub fn eta(&self) -> &EtaTable {
        &self.eta
    }

    pub fn code(&self) -> &BinaryCode {
        self.eta.code()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> LoopElement {
        LoopElement::new(0, 0)
    }

    pub fn elements(&self) -> impl Iterator<Item = LoopElement> {
        (0..self.order).map(LoopElement::from_index)
    }

    /// Checks membership.
    pub fn element(&self, x: usize, a: u8) -> Result<LoopElement> {
        if x >= self.eta.size() || a > 1 {
            return Err(Error::Invalid(format!(
                "({x},{a}) is not an element of a loop of order {}",
                self.order
            )));
        }
        Ok(LoopElement::new(x, a))
    }

    /// The codeword part of `u`.
    pub fn codeword(&self, u: LoopElement) -> Codeword {
        self.code().codeword(u.x as u64)
    }

    fn mul_idx(&self, u: usize, v: usize) -> usize {
        self.cayley[u * self.order + v] as usize
    }

    pub fn mul(&self, u: LoopElement, v: LoopElement) -> LoopElement {
        LoopElement::from_index(self.mul_idx(u.index(), v.index()))
    }

    /// The `v` with `u·v = w`.
    pub fn left_div(&self, u: LoopElement, w: LoopElement) -> LoopElement {
        let v = self.ldiv[u.index() * self.order + w.index()];
        assert!(v != u32::MAX, "left division is not solvable");
        LoopElement::from_index(v as usize)
    }

    /// The `u` with `u·v = w`.
    pub fn right_div(&self, w: LoopElement, v: LoopElement) -> LoopElement {
        let (v, w) = (v.index(), w.index());
        let u = (0..self.order)
            .find(|&u| self.mul_idx(u, v) == w)
            .expect("code loops have right division");
        LoopElement::from_index(u)
    }

    /// `[x, y]`, the `u` with `xy = (yx)u`.
    pub fn commutator(&self, x: LoopElement, y: LoopElement) -> LoopElement {
        self.left_div(self.mul(y, x), self.mul(x, y))
    }

    /// `[x, y, z]`, the `u` with `(xy)z = (x(yz))u`.
    pub fn associator(&self, x: LoopElement, y: LoopElement, z: LoopElement) -> LoopElement {
        let lhs = self.mul(self.mul(x, y), z);
        let rhs = self.mul(x, self.mul(y, z));
        self.left_div(rhs, lhs)
    }

    pub fn square(&self, x: LoopElement) -> LoopElement {
        self.mul(x, x)
    }

    /// Every row and column of the Cayley table is a permutation.
    pub fn is_latin_square(&self) -> bool {
        let n = self.order;
        let mut seen = vec![0usize; n];
        for stamp in 1..=n {
            for v in 0..n {
                let p = self.cayley[(stamp - 1) * n + v] as usize;
                if seen[p] == stamp {
                    return false;
                }
                seen[p] = stamp;
            }
        }
        let mut seen = vec![0usize; n];
        for stamp in 1..=n {
            for u in 0..n {
                let p = self.cayley[u * n + stamp - 1] as usize;
                if seen[p] == stamp {
                    return false;
                }
                seen[p] = stamp;
            }
        }
        true
    }

    /// `x(y(xz)) = ((xy)x)z` on all triples.
    pub fn moufang_check(&self) -> MoufangReport {
        let n = self.order;
        let mut checked = 0;
        for x in 0..n {
            for y in 0..n {
                let xy_x = self.mul_idx(self.mul_idx(x, y), x);
                for z in 0..n {
                    checked += 1;
                    let lhs = self.mul_idx(x, self.mul_idx(y, self.mul_idx(x, z)));
                    if lhs != self.mul_idx(xy_x, z) {
                        return MoufangReport {
                            holds: false,
                            triples_checked: checked,
                            first_violation: Some(
                                [x, y, z].map(LoopElement::from_index),
                            ),
                        };
                    }
                }
            }
        }
        MoufangReport {
            holds: true,
            triples_checked: checked,
            first_violation: None,
        }
    }

    /// The set `L²` of squares, sorted by index.
    pub fn squares(&self) -> Vec<LoopElement> {
        let mut sq: Vec<_> = self.elements().map(|x| self.square(x)).collect();
        sq.sort();
        sq.dedup();
        sq
    }

    /// Exhaustive check of the code loop identities:
    /// `(xy)² = x²y²[x,y]`, `[xy,z] = [x,z][y,z][x,y,z]`,
    /// `[vx,y,z] = [v,y,z][x,y,z]`, `x² = (0, w(x)/4)`,
    /// `[x,y] = (0, w(x∩y)/2)`, `[x,y,z] = (0, w(x∩y∩z))`, `|L²| ≤ 2`, and
    /// `L` elementary abelian exactly when `|L²| = 1`. Also runs the
    /// Latin-square and Moufang checks.
    pub fn verify_identities(&self) -> Result<LoopReport> {
        let data = WeightData::new(self.code())?;
        let mut violations = Vec::new();
        let mut fail = |msg: String| {
            if violations.len() < 100 {
                violations.push(msg);
            }
        };
        let latin = self.is_latin_square();
        if !latin {
            fail("Cayley table is not a Latin square".into());
        }
        let moufang = self.moufang_check();
        if let Some([x, y, z]) = moufang.first_violation {
            fail(format!("Moufang identity fails at {x:?}, {y:?}, {z:?}"));
        }
        let els: Vec<_> = self.elements().collect();
        let central = |bit: u8| LoopElement::new(0, bit);
        let mut abelian_group = true;
        for &x in &els {
            let sq = self.square(x);
            if sq != central(data.quarter(x.x)?) {
                fail(format!("{x:?}² = {sq:?}, expected (0, w/4)"));
            }
            abelian_group &= sq == self.identity();
            for &y in &els {
                let c = self.commutator(x, y);
                if c != central(data.half_pair(x.x, y.x)?) {
                    fail(format!("[{x:?},{y:?}] = {c:?}, expected (0, w(x∩y)/2)"));
                }
                abelian_group &= c == self.identity();
                let xy = self.mul(x, y);
                let rhs = self.mul(self.mul(self.square(x), self.square(y)), c);
                if self.square(xy) != rhs {
                    fail(format!("(xy)² ≠ x²y²[x,y] at {x:?}, {y:?}"));
                }
                for &z in &els {
                    let a = self.associator(x, y, z);
                    if a != central(data.triple(x.x, y.x, z.x)) {
                        fail(format!("[{x:?},{y:?},{z:?}] = {a:?}, expected (0, w(x∩y∩z))"));
                    }
                    abelian_group &= a == self.identity();
                    let lhs = self.commutator(xy, z);
                    let rhs = self.mul(self.mul(self.commutator(x, z), self.commutator(y, z)), a);
                    if lhs != rhs {
                        fail(format!("[xy,z] ≠ [x,z][y,z][x,y,z] at {x:?}, {y:?}, {z:?}"));
                    }
                    // [vx,y,z] = [v,y,z][x,y,z] with v = z ranging over L too
                    for &v in &els {
                        let lhs = self.associator(self.mul(v, x), y, z);
                        let rhs = self.mul(self.associator(v, y, z), a);
                        if lhs != rhs {
                            fail(format!(
                                "[vx,y,z] ≠ [v,y,z][x,y,z] at {v:?}, {x:?}, {y:?}, {z:?}"
                            ));
                        }
                    }
                }
            }
        }
        let squares = self.squares();
        if squares.len() > 2 {
            fail(format!("|L²| = {} > 2", squares.len()));
        }
        if abelian_group != (squares.len() == 1) {
            fail(format!(
                "elementary abelian is {abelian_group} but |L²| = {}",
                squares.len()
            ));
        }
        Ok(LoopReport {
            order: self.order,
            squares,
            elementary_abelian: abelian_group,
            latin_square: latin,
            moufang: moufang.holds,
            violations,
        })
    }

    pub fn export(&self) -> LoopExport {
        LoopExport {
            order: self.order,
            eta: self.eta.matrix(),
            cayley: self.cayley.chunks(self.order).map(<[u32]>::to_vec).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.export()).expect("loop export serializes")
    }
}

/// Index in lexicographic point order (x1 most significant) of the
/// coefficient vector `x` (bit `i` is `x_{i+1}`).
fn lex_index(x: usize, k: usize) -> usize {
    (0..k).fold(0, |acc, i| acc | (x >> i & 1) << (k - 1 - i))
}

/// The squaring map `P` on `L/Z`, with `Z = {(0,0), (0,1)}` so that
/// `L/Z ≅ C ≅ GF(2)^k`: `P(x)` is the bit of `(x,0)²`. The result is checked
/// against the loop: `Δ²P(x,y)` is the bit of `[x,y]`, `Δ³P(x,y,z)` the bit
/// of `[x,y,z]`, and `cdeg P ≤ 3`.
pub fn p_from_loop(l: &CodeLoop) -> Result<ValueTable> {
    let squares = l.squares();
    if squares.len() > 2 {
        return Err(Error::Invalid(format!("|L²| = {} exceeds 2", squares.len())));
    }
    if squares.iter().any(|s| s.x != 0) {
        return Err(Error::Invalid("squares are not central bits".into()));
    }
    let k = l.code().dimension();
    let size = 1usize << k;
    let mut values = vec![0u32; size];
    for x in 0..size {
        values[lex_index(x, k)] = l.square(LoopElement::new(x, 0)).a as u32;
    }
    let table = ValueTable::new(FieldCtx::gf2(), k, values)?;

    let lift = |x: usize| LoopElement::new(x, 0);
    let d2 = derived_form_table(&table, 2)?;
    let d3 = derived_form_table(&table, 3)?;
    for x in 0..size {
        for y in 0..size {
            let (ix, iy) = (lex_index(x, k), lex_index(y, k));
            let c = l.commutator(lift(x), lift(y));
            if c.x != 0 || d2[ix * size + iy] != c.a as u32 {
                return Err(Error::Internal(format!("Δ²P({x},{y}) differs from [x,y]")));
            }
            for z in 0..size {
                let iz = lex_index(z, k);
                let a = l.associator(lift(x), lift(y), lift(z));
                if a.x != 0 || d3[(ix * size + iy) * size + iz] != a.a as u32 {
                    return Err(Error::Internal(format!(
                        "Δ³P({x},{y},{z}) differs from [x,y,z]"
                    )));
                }
            }
        }
    }
    match comb_degree_oracle(&table)? {
        CombDegree::Finite(d) if d <= 3 => Ok(table),
        other => Err(Error::Internal(format!("squaring map has cdeg {other}, expected ≤ 3"))),
    }
}

/// Level check used before building a loop.
pub fn require_doubly_even(code: &BinaryCode) -> Result<CodeLevel> {
    let level = code.level()?;
    if !level.at_least(2) {
        return Err(Error::NotDoublyEven(level.to_string()));
    }
    Ok(level)
}
