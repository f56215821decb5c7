//! Hermite and diagonal reduction with explicit transforms and inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, RingError};
use crate::instances::Integers;
use crate::ring::{EuclideanDomain, Ring};
use crate::structure::gelfand_decompose;

/// Dense row-major matrix with at least one row and one column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(RingError::PreconditionFailed("matrix must have at least one row and one column".into()));
        }
        if data.len() != rows * cols {
            return Err(RingError::PreconditionFailed(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(RingError::PreconditionFailed("rows have different lengths".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.cols).map(<[E]>::to_vec).collect()
    }

    /// Rejects entries that are not canonical elements of `ring`.
    pub fn check<R: Ring<Elem = E>>(&self, ring: &R) -> Result<()> {
        self.data.iter().try_for_each(|x| ring.check(x))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(RingError::PreconditionFailed(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn diagonal(&self) -> Vec<E> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_diagonal<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || ring.is_zero(self.get(i, j))))
    }

    /// Applies the 2x2 matrix `m` (row-major) to rows `i, j`; `i == j` scales row `i` by `m[0]`.
    fn mix_rows<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, j: usize, m: &[E; 4]) {
        for col in 0..self.cols {
            let (x, y) = (self.get(i, col).clone(), self.get(j, col).clone());
            if i == j {
                self.set(i, col, ring.mul(&m[0], &x));
                continue;
            }
            self.set(i, col, ring.add(&ring.mul(&m[0], &x), &ring.mul(&m[1], &y)));
            self.set(j, col, ring.add(&ring.mul(&m[2], &x), &ring.mul(&m[3], &y)));
        }
    }

    /// Right-multiplies columns `i, j` by the 2x2 matrix `m`.
    fn mix_cols<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, j: usize, m: &[E; 4]) {
        for row in 0..self.rows {
            let (x, y) = (self.get(row, i).clone(), self.get(row, j).clone());
            if i == j {
                self.set(row, i, ring.mul(&x, &m[0]));
                continue;
            }
            self.set(row, i, ring.add(&ring.mul(&x, &m[0]), &ring.mul(&y, &m[2])));
            self.set(row, j, ring.add(&ring.mul(&x, &m[1]), &ring.mul(&y, &m[3])));
        }
    }

    pub fn map<F, T>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One invertible 2x2 transform acting on rows (left) or columns (right)
/// `i, j`. When `i == j` it scales by `m[0]`, a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform<E> {
    pub side: Side,
    pub i: usize,
    pub j: usize,
    pub m: [E; 4],
    pub m_inv: [E; 4],
    pub label: String,
}

/// `P * A * Q = D` with explicit inverses of `P` and `Q` and the list of
/// transforms that built them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalReduction<E> {
    pub p: Matrix<E>,
    pub p_inv: Matrix<E>,
    pub d: Matrix<E>,
    pub q: Matrix<E>,
    pub q_inv: Matrix<E>,
    pub certificate: Vec<Transform<E>>,
}

struct Workspace<'a, R: Ring> {
    ring: &'a R,
    a: Matrix<R::Elem>,
    p: Matrix<R::Elem>,
    p_inv: Matrix<R::Elem>,
    q: Matrix<R::Elem>,
    q_inv: Matrix<R::Elem>,
    certificate: Vec<Transform<R::Elem>>,
}

impl<'a, R: Ring> Workspace<'a, R> {
    fn new(ring: &'a R, a: &Matrix<R::Elem>) -> Self {
        Workspace {
            ring,
            a: a.clone(),
            p: Matrix::identity(ring, a.rows),
            p_inv: Matrix::identity(ring, a.rows),
            q: Matrix::identity(ring, a.cols),
            q_inv: Matrix::identity(ring, a.cols),
            certificate: Vec::new(),
        }
    }

    fn apply(&mut self, t: Transform<R::Elem>) {
        let r = self.ring;
        match t.side {
            Side::Left => {
                self.a.mix_rows(r, t.i, t.j, &t.m);
                self.p.mix_rows(r, t.i, t.j, &t.m);
                self.p_inv.mix_cols(r, t.i, t.j, &t.m_inv);
            }
            Side::Right => {
                self.a.mix_cols(r, t.i, t.j, &t.m);
                self.q.mix_cols(r, t.i, t.j, &t.m);
                self.q_inv.mix_rows(r, t.i, t.j, &t.m_inv);
            }
        }
        self.certificate.push(t);
    }

    fn finish(self) -> DiagonalReduction<R::Elem> {
        DiagonalReduction { p: self.p, p_inv: self.p_inv, d: self.a, q: self.q, q_inv: self.q_inv, certificate: self.certificate }
    }
}

fn swap<R: Ring>(ring: &R, side: Side, i: usize, j: usize) -> Transform<R::Elem> {
    let m = [ring.zero(), ring.one(), ring.one(), ring.zero()];
    Transform { side, i, j, m: m.clone(), m_inv: m, label: "swap".into() }
}

fn scale<R: Ring>(ring: &R, side: Side, i: usize, unit: R::Elem) -> Result<Transform<R::Elem>> {
    let inv =
        ring.unit_inverse(&unit).ok_or_else(|| RingError::TraceInvariantViolation(format!("{} is not a unit", ring.format(&unit))))?;
    let (z, o) = (ring.zero(), ring.one());
    Ok(Transform { side, i, j: i, m: [unit, z.clone(), z.clone(), o.clone()], m_inv: [inv, z.clone(), z, o], label: "scale".into() })
}

/// Row transform sending the column `(a; b)` to `(d; 0)`, or the column
/// transform sending the row `(a b)` to `(d 0)`.
fn gcd_transform<R: Ring>(ring: &R, side: Side, i: usize, j: usize, a: &R::Elem, b: &R::Elem) -> Result<Transform<R::Elem>> {
    let n = |x: &R::Elem| ring.neg(x);
    if !ring.is_zero(a) && ring.divides(a, b) {
        let q = ring.divide_exact(b, a)?;
        let (z, o) = (ring.zero(), ring.one());
        let (m, m_inv) = match side {
            Side::Left => ([o.clone(), z.clone(), n(&q), o.clone()], [o.clone(), z, q, o]),
            Side::Right => ([o.clone(), n(&q), z.clone(), o.clone()], [o.clone(), q, z, o]),
        };
        return Ok(Transform { side, i, j, m, m_inv, label: "eliminate".into() });
    }
    let g = ring.gcdex(a, b)?;
    let (u, v, a0, b0) = (g.u, g.v, g.a0, g.b0);
    let (m, m_inv) = match side {
        Side::Left => ([u.clone(), v.clone(), n(&b0), a0.clone()], [a0, n(&v), b0, u]),
        Side::Right => ([u.clone(), n(&b0), v.clone(), a0.clone()], [a0, b0, n(&v), u]),
    };
    Ok(Transform { side, i, j, m, m_inv, label: "gcd".into() })
}

/// `(a b) * Q = (d 0)` with `Q = [[u, -b0], [v, a0]]` and `det Q = 1`.
pub fn hermite_reduce_pair<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<(R::Elem, Matrix<R::Elem>)> {
    let g = ring.gcdex(a, b)?;
    let q = Matrix::new(2, 2, vec![g.u.clone(), ring.neg(&g.b0), g.v.clone(), g.a0.clone()])?;
    Ok((g.d, q))
}

/// First `t` in the ring's search order with `a + b*t` nonzero.
pub fn gelfand_range_1_witness<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
    if !ring.coprime(a, b) {
        return Err(RingError::NotComaximal(format!("{}, {}", ring.format(a), ring.format(b))));
    }
    let cap = crate::limits::Caps::default().cofactor_search;
    for i in 0..cap {
        let Some(t) = ring.element_at(i) else { break };
        if !ring.is_zero(&ring.add(a, &ring.mul(b, &t))) {
            return Ok(t);
        }
    }
    Err(RingError::SearchExhausted(cap))
}

/// Diagonal form by gcd elimination over a Euclidean domain. Diagonal
/// entries are canonical associates forming a divisibility chain, zeros last.
pub fn diagonal_reduce<R: EuclideanDomain>(ring: &R, a: &Matrix<R::Elem>) -> Result<DiagonalReduction<R::Elem>> {
    a.check(ring)?;
    let (m, n) = (a.rows, a.cols);
    let mut w = Workspace::new(ring, a);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(ring, &w.a, t) else { break };
        if pi != t {
            w.apply(swap(ring, Side::Left, t, pi));
        }
        if pj != t {
            w.apply(swap(ring, Side::Right, t, pj));
        }
        loop {
            for i in t + 1..m {
                if !ring.is_zero(w.a.get(i, t)) {
                    let tr = gcd_transform(ring, Side::Left, t, i, w.a.get(t, t), w.a.get(i, t))?;
                    w.apply(tr);
                }
            }
            for j in t + 1..n {
                if !ring.is_zero(w.a.get(t, j)) {
                    let tr = gcd_transform(ring, Side::Right, t, j, w.a.get(t, t), w.a.get(t, j))?;
                    w.apply(tr);
                }
            }
            if (t + 1..m).any(|i| !ring.is_zero(w.a.get(i, t))) {
                continue;
            }
            let pivot = w.a.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !ring.divides(&pivot, w.a.get(i, j))));
            match offender {
                Some(i) => {
                    let (z, o) = (ring.zero(), ring.one());
                    w.apply(Transform {
                        side: Side::Left,
                        i: t,
                        j: i,
                        m: [o.clone(), o.clone(), z.clone(), o.clone()],
                        m_inv: [o.clone(), ring.neg(&o), z, o],
                        label: "add".into(),
                    });
                }
                None => break,
            }
        }
        let (unit, _) = ring.normal_form(w.a.get(t, t));
        if !ring.is_one(&unit) {
            let inv = ring.unit_inverse(&unit).expect("normal form unit");
            w.apply(scale(ring, Side::Left, t, inv)?);
        }
    }
    Ok(w.finish())
}

fn smallest_entry<R: EuclideanDomain>(ring: &R, a: &Matrix<R::Elem>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if ring.is_zero(x) {
                continue;
            }
            if best.is_none_or(|(bi, bj)| ring.cmp_size(x, a.get(bi, bj)).is_lt()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Every failed invariant of a claimed reduction of `a`.
pub fn verify_reduction<R: EuclideanDomain>(ring: &R, a: &Matrix<R::Elem>, red: &DiagonalReduction<R::Elem>) -> Vec<String> {
    let mut out = Vec::new();
    let (m, n) = (a.rows, a.cols);
    let shapes = [("P", &red.p, m, m), ("P^-1", &red.p_inv, m, m), ("D", &red.d, m, n), ("Q", &red.q, n, n), ("Q^-1", &red.q_inv, n, n)];
    for (name, x, r, c) in shapes {
        if x.rows != r || x.cols != c {
            out.push(format!("{name} is {}x{}, expected {r}x{c}", x.rows, x.cols));
        }
    }
    if !out.is_empty() {
        return out;
    }
    match red.p.mul(ring, a).and_then(|pa| pa.mul(ring, &red.q)) {
        Ok(paq) if paq == red.d => {}
        Ok(_) => out.push("P*A*Q differs from D".into()),
        Err(e) => out.push(e.to_string()),
    }
    for (name, x, y, k) in [("P", &red.p, &red.p_inv, m), ("Q", &red.q, &red.q_inv, n)] {
        let id = Matrix::identity(ring, k);
        if x.mul(ring, y).ok().as_ref() != Some(&id) || y.mul(ring, x).ok().as_ref() != Some(&id) {
            out.push(format!("{name} times its claimed inverse is not the identity"));
        }
    }
    if !red.d.is_diagonal(ring) {
        out.push("D is not diagonal".into());
    }
    let diag = red.d.diagonal();
    for (i, x) in diag.iter().enumerate() {
        if ring.associate(x) != *x {
            out.push(format!("d{i} = {} is not normalized", ring.format(x)));
        }
    }
    for w in diag.windows(2) {
        if !ring.divides(&w[0], &w[1]) {
            out.push(format!("{} does not divide {}", ring.format(&w[0]), ring.format(&w[1])));
        }
    }
    let mut replay = Workspace::new(ring, a);
    for t in &red.certificate {
        if t.i.max(t.j) >= if t.side == Side::Left { m } else { n } {
            out.push("certificate index out of range".into());
            return out;
        }
        replay.apply(t.clone());
    }
    if replay.p != red.p || replay.q != red.q {
        out.push("certificate does not reproduce P and Q".into());
    }
    out
}

/// Witnesses computed by the 2x2 procedure on `[[a, 0], [b, c]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularTrace<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
    pub u: E,
    pub v: E,
    pub t: E,
    pub k: E,
    pub r: E,
    pub s: E,
    pub p: E,
    pub l: E,
    pub q: E,
    pub delta: E,
    pub p1: E,
    pub q1: E,
    /// `p1*k + q1*c`, comaximal with `p1*a`.
    pub x: E,
    /// `gcd(p1*a, x)`.
    pub witness_gcd: E,
    pub engine_agrees: bool,
}

impl<E: Clone + PartialEq> TriangularTrace<E> {
    pub fn violations<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<String> {
        let mut out = Vec::new();
        let mut eq = |lhs: E, rhs: &E, what: &str| {
            if lhs != *rhs {
                out.push(format!("{what}: {} != {}", ring.format(&lhs), ring.format(rhs)));
            }
        };
        let (add, mul) = (|x: &E, y: &E| ring.add(x, y), |x: &E, y: &E| ring.mul(x, y));
        eq(add(&mul(&self.a, &self.u), &mul(&self.b, &self.v)), &self.d, "a*u + b*v = d");
        eq(add(&self.b, &mul(&self.d, &self.t)), &self.k, "k = b + d*t");
        eq(mul(&self.r, &self.s), &self.k, "k = r*s");
        eq(add(&mul(&self.s, &self.p), &mul(&self.c, &self.l)), &ring.one(), "s*p + c*l = 1");
        eq(mul(&self.r, &self.l), &self.q, "q = r*l");
        eq(mul(&self.p1, &self.delta), &self.p, "p = p1*delta");
        eq(mul(&self.q1, &self.delta), &self.q, "q = q1*delta");
        eq(add(&mul(&self.p1, &self.k), &mul(&self.q1, &self.c)), &self.x, "x = p1*k + q1*c");
        let mut flag = |ok: bool, what: &str| {
            if !ok {
                out.push(what.to_string());
            }
        };
        flag(ring.coprime(&self.r, &self.a), "rR + aR = R fails");
        flag(ring.coprime(&self.s, &self.c), "sR + cR = R fails");
        flag(ring.coprime(&self.p1, &self.q1), "p1R + q1R = R fails");
        flag(ring.is_unit(&self.witness_gcd), "p1*aR + (p1*k + q1*c)R = R fails");
        flag(ring.coprime(&ring.mul(&self.p1, &self.a), &self.x), "recorded witness gcd is stale");
        flag(self.engine_agrees, "generic engine produced a different diagonal");
        out
    }
}

/// A verified reduction together with the witnesses that built it.
pub type TriangularOutput<E> = (DiagonalReduction<E>, TriangularTrace<E>);

/// Reduces `[[a, 0], [b, c]]` with `aR + bR + cR = R` to `diag(1, ac)` up to
/// a unit, recording every witness of the construction.
pub fn reduce_2x2_triangular<R: EuclideanDomain>(ring: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> Result<TriangularOutput<R::Elem>> {
    for x in [a, b, c] {
        ring.check(x)?;
    }
    let g3 = ring.bezout(&ring.bezout(a, b).0, c).0;
    if !ring.is_unit(&g3) {
        return Err(RingError::PreconditionFailed(format!(
            "precondition aR+bR+cR=R fails: gcd({}, {}, {}) = {}",
            ring.format(a),
            ring.format(b),
            ring.format(c),
            ring.format(&g3)
        )));
    }
    let violation = |what: &str| RingError::TraceInvariantViolation(what.to_string());
    let g = ring.gcdex(a, b)?;
    let (d, u, v) = (g.d.clone(), g.u.clone(), g.v.clone());

    // k = b + d*t must be reachable by adding w times row 0 to row 1
    let (t, w) = if !ring.is_zero(b) || ring.is_zero(a) {
        (ring.zero(), ring.zero())
    } else {
        let t = gelfand_range_1_witness(ring, &ring.zero(), &ring.one()).unwrap_or_else(|_| ring.one());
        (t.clone(), ring.mul(&u, &t))
    };
    let k = ring.add(b, &ring.mul(&d, &t));
    if ring.add(b, &ring.mul(&w, a)) != k {
        return Err(violation("k is not reachable by a row operation"));
    }

    let (r, s) = if ring.is_zero(&k) {
        (ring.one(), ring.zero())
    } else {
        let split = gelfand_decompose(ring, &k, a, c)?;
        (split.r, split.s)
    };
    let pl = ring.gcdex(&s, c)?;
    let unit_inv = ring.unit_inverse(&pl.d).ok_or_else(|| violation("sR + cR = R fails"))?;
    let (p, l) = (ring.mul(&pl.u, &unit_inv), ring.mul(&pl.v, &unit_inv));
    let q = ring.mul(&r, &l);
    let pq = ring.gcdex(&p, &q)?;
    let (delta, p1, q1) = (pq.d.clone(), pq.a0.clone(), pq.b0.clone());
    let x = ring.add(&ring.mul(&p1, &k), &ring.mul(&q1, c));
    let witness_gcd = ring.bezout(&ring.mul(&p1, a), &x).0;
    if !ring.is_unit(&witness_gcd) {
        return Err(violation("p1*aR + (p1*k + q1*c)R = R fails"));
    }

    let matrix = Matrix::new(2, 2, vec![a.clone(), ring.zero(), b.clone(), c.clone()])?;
    let mut ws = Workspace::new(ring, &matrix);
    let (z, o) = (ring.zero(), ring.one());
    if !ring.is_zero(&w) {
        ws.apply(Transform {
            side: Side::Left,
            i: 0,
            j: 1,
            m: [o.clone(), z.clone(), w.clone(), o.clone()],
            m_inv: [o.clone(), z.clone(), ring.neg(&w), o.clone()],
            label: "k = b + d*t".into(),
        });
    }
    // p1*x' + q1*y' = 1 makes [[p1, -y'], [q1, x']] unimodular
    let (xc, yc) = (pq.u.clone(), pq.v.clone());
    let det = ring.add(&ring.mul(&p1, &xc), &ring.mul(&q1, &yc));
    let det_inv = ring.unit_inverse(&det).ok_or_else(|| violation("p1, q1 cofactors are not unimodular"))?;
    let (xc, yc) = (ring.mul(&xc, &det_inv), ring.mul(&yc, &det_inv));
    ws.apply(Transform {
        side: Side::Right,
        i: 0,
        j: 1,
        m: [p1.clone(), ring.neg(&yc), q1.clone(), xc.clone()],
        m_inv: [xc, yc, ring.neg(&q1), p1.clone()],
        label: "column (p1*a, p1*k + q1*c)".into(),
    });
    let first = ring.gcdex(ws.a.get(0, 0), ws.a.get(1, 0))?;
    let mut tr = gcd_transform(ring, Side::Left, 0, 1, ws.a.get(0, 0), ws.a.get(1, 0))?;
    tr.label = "comaximal column to (1, 0)".into();
    ws.apply(tr);
    if !ring.is_unit(&first.d) {
        return Err(violation("first column is not unimodular"));
    }
    if !ring.is_one(ws.a.get(0, 0)) {
        let inv = ring.unit_inverse(ws.a.get(0, 0)).expect("unit pivot");
        ws.apply(scale(ring, Side::Left, 0, inv)?);
    }
    let e = ws.a.get(0, 1).clone();
    if !ring.is_zero(&e) {
        ws.apply(Transform {
            side: Side::Right,
            i: 0,
            j: 1,
            m: [o.clone(), ring.neg(&e), z.clone(), o.clone()],
            m_inv: [o.clone(), e, z, o],
            label: "clear".into(),
        });
    }
    let (unit, _) = ring.normal_form(ws.a.get(1, 1));
    if !ring.is_one(&unit) {
        let inv = ring.unit_inverse(&unit).expect("normal form unit");
        ws.apply(scale(ring, Side::Left, 1, inv)?);
    }
    let red = ws.finish();
    if red.d.get(1, 1) != &ring.associate(&ring.mul(a, c)) {
        return Err(violation("D is not diag(1, ac)"));
    }
    let engine = diagonal_reduce(ring, &matrix)?;
    let engine_agrees = engine.d == red.d;
    let trace = TriangularTrace {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d,
        u,
        v,
        t,
        k,
        r,
        s,
        p,
        l,
        q,
        delta,
        p1,
        q1,
        x,
        witness_gcd,
        engine_agrees,
    };
    let bad = trace.violations(ring);
    if !bad.is_empty() {
        return Err(violation(&bad.join("; ")));
    }
    Ok((red, trace))
}

/// Fraction-free determinant.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors `Delta_k / Delta_{k-1}` from gcds of all `k x k` minors.
pub fn snf_oracle_integers(a: &Matrix<BigInt>) -> Result<Vec<BigInt>> {
    let k_max = a.rows.min(a.cols);
    if k_max > 6 {
        return Err(RingError::TooLarge { size: format!("{}x{}", a.rows, a.cols), cap: 6 });
    }
    let mut out = Vec::with_capacity(k_max);
    let mut prev = BigInt::one();
    for k in 1..=k_max {
        let mut delta = BigInt::zero();
        for rows in combinations(a.rows, k) {
            for cols in combinations(a.cols, k) {
                let minor = rows.iter().map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
                delta = delta.gcd(&bareiss(minor));
            }
        }
        if delta.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), k_max - out.len()));
            break;
        }
        out.push(&delta / &prev);
        prev = delta;
    }
    Ok(out)
}

/// `|det|` of a square integer matrix.
pub fn integer_determinant(a: &Matrix<BigInt>) -> Result<BigInt> {
    if a.rows != a.cols {
        return Err(RingError::PreconditionFailed("determinant of a non-square matrix".into()));
    }
    Ok(bareiss(a.to_rows()).abs())
}

/// Convenience for integer matrices given as `i64` rows.
pub fn integer_matrix(rows: &[&[i64]]) -> Result<Matrix<BigInt>> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

/// Integer matrices only need the ring marker for reduction.
pub fn reduce_integers(a: &Matrix<BigInt>) -> Result<DiagonalReduction<BigInt>> {
    diagonal_reduce(&Integers, a)
}
