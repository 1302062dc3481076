//! The star-shaped plumbing graph of a Seifert datum, its lattice data and
//! the discriminant group `H = L'/L`.

use std::ops::Range;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{frac, int, neg_cf_expand, rat_int, rat_to_i64, rat_to_string, Int, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::seifert::SeifertData;
use crate::smith::{basis_order, smith_normal_form};

/// Graphs larger than this are refused; every downstream computation is
/// dense and cubic in the vertex count.
pub const MAX_VERTICES: usize = 1500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Self-intersection `-b_v`.
    pub euler: i64,
    /// `"E0"` for the central vertex, `"E{i}.{j}"` for the `j`-th vertex of
    /// leg `i`, counted outward from the center (both 1-based).
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct StarGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    legs: Vec<Range<usize>>,
    matrix: Vec<Vec<i64>>,
    inverse: Vec<Vec<Rational>>,
}

/// A rational cycle, one coefficient per vertex in graph order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCycle(pub Vec<Rational>);

impl QCycle {
    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Coefficients permuted into another vertex order: `order[k]` is the
    /// graph index that goes to position `k`.
    pub fn permuted(&self, order: &[usize]) -> Vec<Rational> {
        order.iter().map(|&v| self.0[v].clone()).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(rat_to_string).collect()
    }
}

impl Serialize for QCycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

pub fn build_graph(sd: &SeifertData) -> Result<StarGraph> {
    let mut vertices = vec![Vertex {
        euler: -sd.b0(),
        label: "E0".into(),
    }];
    let mut edges = Vec::new();
    let mut legs = Vec::with_capacity(sd.nu());
    for (i, leg) in sd.legs().iter().enumerate() {
        let cf = neg_cf_expand(leg.alpha, leg.omega)?;
        if vertices.len() + cf.len() > MAX_VERTICES {
            return Err(Error::Overflow(format!(
                "plumbing graph exceeds {MAX_VERTICES} vertices"
            )));
        }
        let start = vertices.len();
        let mut prev = 0;
        for (j, &b) in cf.entries().iter().enumerate() {
            let v = vertices.len();
            vertices.push(Vertex {
                euler: -b,
                label: format!("E{}.{}", i + 1, j + 1),
            });
            edges.push((prev, v));
            prev = v;
        }
        legs.push(start..vertices.len());
    }
    let n = vertices.len();
    let mut matrix = vec![vec![0i64; n]; n];
    for (v, vx) in vertices.iter().enumerate() {
        matrix[v][v] = vx.euler;
    }
    for &(a, b) in &edges {
        matrix[a][b] = 1;
        matrix[b][a] = 1;
    }
    let big: Vec<Vec<Int>> = matrix.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    if !linalg::is_negative_definite(&big) {
        return Err(Error::NotNegativeDefinite {
            e: rat_to_string(&sd.euler_number()),
        });
    }
    let rat_matrix: Vec<Vec<Rational>> =
        matrix.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect();
    let inverse = linalg::inverse(&rat_matrix)
        .ok_or_else(|| Error::Consistency("definite matrix reported singular".into()))?;
    Ok(StarGraph {
        vertices,
        edges,
        legs,
        matrix,
        inverse,
    })
}

impl StarGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Vertex range of leg `i` (0-based), ordered outward from the center.
    pub fn leg(&self, i: usize) -> Range<usize> {
        self.legs[i].clone()
    }

    /// Index of the end vertex of leg `i` (0-based).
    pub fn leg_end(&self, i: usize) -> usize {
        self.legs[i].end - 1
    }

    pub fn labels(&self) -> Vec<&str> {
        self.vertices.iter().map(|v| v.label.as_str()).collect()
    }

    /// `E*_v . E*_w`, i.e. the `(v, w)` entry of the inverse intersection matrix.
    pub fn dual_pairing(&self, v: usize, w: usize) -> &Rational {
        &self.inverse[v][w]
    }

    /// Product of two rational cycles.
    pub fn dot(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (v, row) in self.matrix.iter().enumerate() {
            if a[v].is_zero() {
                continue;
            }
            for (w, &m) in row.iter().enumerate() {
                if m != 0 {
                    acc += &a[v] * &b[w] * rat_int(m);
                }
            }
        }
        acc
    }
}

impl Serialize for StarGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct V<'a> {
            id: usize,
            euler: i64,
            label: &'a str,
        }
        let vs: Vec<V> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| V {
                id,
                euler: v.euler,
                label: &v.label,
            })
            .collect();
        let es: Vec<[usize; 2]> = self.edges.iter().map(|&(a, b)| [a, b]).collect();
        let mut st = s.serialize_struct("StarGraph", 3)?;
        st.serialize_field("vertices", &vs)?;
        st.serialize_field("edges", &es)?;
        st.serialize_field("central", &0)?;
        st.end()
    }
}

/// Row `v` is the coefficient vector of `E*_v`, characterized by
/// `E*_v . E_w = -delta_vw`.
pub fn dual_basis(g: &StarGraph) -> Vec<QCycle> {
    g.inverse
        .iter()
        .map(|row| QCycle(row.iter().map(|x| -x).collect()))
        .collect()
}

/// `Z_K` with `Z_K . E_v = E_v^2 + 2` for every vertex.
pub fn canonical_cycle(g: &StarGraph) -> QCycle {
    let rhs: Vec<Rational> = g.vertices.iter().map(|v| rat_int(v.euler + 2)).collect();
    QCycle(linalg::mat_vec(&g.inverse, &rhs))
}

/// Fundamental cycle by Laufer's algorithm together with `p_a(Z)`.
pub fn fundamental_cycle(g: &StarGraph) -> (Vec<i64>, i64) {
    let n = g.len();
    let mut z = vec![1i64; n];
    // z_dot[v] = Z . E_v
    let mut z_dot: Vec<i64> = (0..n).map(|v| (0..n).map(|w| z[w] * g.matrix[w][v]).sum()).collect();
    while let Some(v) = (0..n).find(|&v| z_dot[v] > 0) {
        z[v] += 1;
        for (w, d) in z_dot.iter_mut().enumerate() {
            *d += g.matrix[v][w];
        }
    }
    let zz: i64 = (0..n).map(|v| z[v] * z_dot[v]).sum();
    // Z.K = -Z.Z_K = -sum z_v (E_v^2 + 2)
    let zk: i64 = -(0..n).map(|v| z[v] * (g.vertices[v].euler + 2)).sum::<i64>();
    let p_a = 1 + (zz + zk) / 2;
    debug_assert_eq!((zz + zk) % 2, 0);
    (z, p_a)
}

/// Discriminant group `H` of the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupData {
    pub order: i64,
    pub invariant_factors: Vec<i64>,
    pub o: i64,
    /// `ord(h_i)` for `i = 0..=nu`; `h_0 = [E*_0]`, `h_i` = class of the
    /// dual of the end of leg `i`.
    pub element_orders: Vec<i64>,
    /// Pairings of the same classes, reduced mod 1.
    #[serde(serialize_with = "crate::arith::serialize_rational_matrix")]
    pub pairing: Vec<Vec<Rational>>,
}

/// Builds `H` from the presentation
/// `<h0..h_nu | h0^b0 prod h_i^-omega_i, h0^-1 h_i^alpha_i>`
/// and cross-checks it against the lattice side.
pub fn group_data(g: &StarGraph, sd: &SeifertData) -> Result<GroupData> {
    let nu = sd.nu();
    let mut rel = vec![vec![Int::zero(); nu + 1]; nu + 1];
    rel[0][0] = int(sd.b0());
    for (i, leg) in sd.legs().iter().enumerate() {
        rel[0][i + 1] = int(-leg.omega);
        rel[i + 1][0] = int(-1);
        rel[i + 1][i + 1] = int(leg.alpha);
    }
    let smith = smith_normal_form(&rel);
    let to_i64 = |x: &Int, what: &str| {
        rat_to_i64(&Rational::from_integer(x.clone()))
            .ok_or_else(|| Error::Overflow(format!("{what} does not fit in 64 bits")))
    };
    let invariant_factors: Vec<i64> = smith
        .diagonal
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| to_i64(d, "invariant factor"))
        .collect::<Result<_>>()?;
    let order: i64 = invariant_factors.iter().product();

    let det = linalg::bareiss(
        g.matrix.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
    )
    .det
    .abs();
    if det != int(order) {
        return Err(Error::Consistency(format!(
            "|H| = {order} from the presentation but |det I| = {det}"
        )));
    }

    let reps: Vec<usize> = std::iter::once(0).chain((0..nu).map(|i| g.leg_end(i))).collect();
    let mut element_orders = Vec::with_capacity(nu + 1);
    for (k, &v) in reps.iter().enumerate() {
        let from_smith = basis_order(&smith, k)
            .ok_or_else(|| Error::Consistency("infinite order in a finite group".into()))?;
        let from_lattice = g.inverse[v].iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        if from_smith != from_lattice {
            return Err(Error::Consistency(format!(
                "order of h_{k}: {from_smith} from the presentation, {from_lattice} from E*"
            )));
        }
        element_orders.push(to_i64(&from_smith, "element order")?);
    }
    let o = element_orders[0];
    if o != sd.order_o() {
        return Err(Error::Consistency(format!(
            "ord [E*_0] = {o} but |e| alpha = {}",
            sd.order_o()
        )));
    }
    let pairing = reps
        .iter()
        .map(|&v| reps.iter().map(|&w| frac(&g.inverse[v][w])).collect())
        .collect();
    Ok(GroupData {
        order,
        invariant_factors,
        o,
        element_orders,
        pairing,
    })
}

/// Lattice-side summary of a Seifert datum.
#[derive(Clone, Debug)]
pub struct GraphInvariants {
    pub graph: StarGraph,
    pub canonical: QCycle,
    pub fundamental: Vec<i64>,
    pub p_a: i64,
    pub group: GroupData,
}

impl GraphInvariants {
    pub fn compute(sd: &SeifertData) -> Result<Self> {
        let graph = build_graph(sd)?;
        let canonical = canonical_cycle(&graph);
        let (fundamental, p_a) = fundamental_cycle(&graph);
        let group = group_data(&graph, sd)?;
        Ok(Self {
            graph,
            canonical,
            fundamental,
            p_a,
            group,
        })
    }

    pub fn is_rational(&self) -> bool {
        self.p_a == 0
    }

    pub fn is_numerically_gorenstein(&self) -> bool {
        self.canonical.is_integral()
    }

    pub fn is_elliptic(&self) -> bool {
        self.p_a == 1
    }
}

/// `ord(h_i) <= alpha_i` for every leg.
pub fn o_small_condition(sd: &SeifertData, group: &GroupData) -> bool {
    sd.legs()
        .iter()
        .zip(&group.element_orders[1..])
        .all(|(leg, &ord)| ord <= leg.alpha)
}
