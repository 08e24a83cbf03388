//! Hand-built instances that steer the solver through each branch that
//! produces a pair of disjoint long cycles. Every fixture uses l = 5 and is
//! assembled around a 16-cycle C on vertices 0..16 plus a second long cycle
//! D and a handful of attachment paths, with all path lengths chosen so that
//!
//! * C is the unique shortest long cycle (every other long cycle has at
//!   least 16 vertices, and no cycle has length 5..=15),
//! * D is the long cycle whose intersection with C spans the shortest
//!   segment of C, and
//! * the deletion stages, chord searches and the two-path step unfold into
//!   exactly the intended branch.

use crate::graph::Graph;

pub struct Fixture {
    pub name: &'static str,
    pub ell: usize,
    /// Expected `Branch::label()` of the solve trace.
    pub expect: &'static str,
    pub graph: Graph,
}

/// Incremental edge-list builder; `path` threads fresh vertices between two
/// existing ones, which is all these gadgets need.
struct Build {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Build {
    /// A cycle on vertices 0..k.
    fn ring(k: usize) -> Self {
        let edges = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Build { n: k, edges }
    }

    /// A path from `a` to `b` with `len` edges through fresh internal
    /// vertices, returned in order from `a` to `b`. With `a == b` this
    /// closes a cycle through `len - 1` fresh vertices.
    fn path(&mut self, a: usize, b: usize, len: usize) -> Vec<usize> {
        assert!(len >= 1);
        let mut inner = Vec::with_capacity(len - 1);
        let mut prev = a;
        for _ in 0..len - 1 {
            let v = self.n;
            self.n += 1;
            self.edges.push((prev, v));
            inner.push(v);
            prev = v;
        }
        self.edges.push((prev, b));
        inner
    }

    fn graph(self) -> Graph {
        Graph::from_edges(self.n, &self.edges).expect("fixture graph is well formed")
    }
}

/// Skeleton for the x != y case: D = 0-1-2 plus a 14-edge return path R,
/// and a chord path S = 13 -(sa)- r6 -(sb)- `s_end` whose cycle with the
/// short C-arc becomes D'. Returns (builder, R internals r1..r13).
fn skeleton_xy(sa: usize, sb: usize, s_end: usize) -> (Build, Vec<usize>) {
    let mut b = Build::ring(16);
    let r = b.path(2, 0, 14);
    b.path(13, r[5], sa);
    b.path(r[5], s_end, sb);
    (b, r)
}

/// Skeleton for the x = y case: D is a 16-cycle through 0 only, P0 joins 2
/// to d8, and S = 13 -(sa)- t -(6)- 10 supplies Q1 with endpoint t = d`t_idx`.
/// Returns (builder, D internals d1..d15).
fn skeleton_x(t_idx: usize, sa: usize) -> (Build, Vec<usize>) {
    let mut b = Build::ring(16);
    let d = b.path(0, 0, 16);
    b.path(2, d[7], 7);
    b.path(13, d[t_idx - 1], sa);
    b.path(d[t_idx - 1], 10, 6);
    (b, d)
}

/// Both chord positions of the first x != y pair branch: the shortest
/// (E2, D)-chord Z ends either inside xDy (at vertex 1) or inside yDt
/// (at r3), ahead of the Q1 endpoint t = r6 either way.
fn fixture_a2(v_in_xdy: bool) -> Fixture {
    let (mut b, r) = skeleton_xy(7, 6, 10);
    if v_in_xdy {
        // Violating chord to vertex 1, plus a survivor cycle for the second
        // deletion stage: 5 - r8 .. r11 - 7 - 6 - 5.
        b.path(5, 1, 12);
        b.path(5, r[7], 13);
        b.path(r[10], 7, 13);
    } else {
        // Violating chord to r3; the survivor cycle threads the chord and a
        // return leg: 5 - r3 - r2 - r1 - 7 - 6 - 5.
        b.path(5, r[2], 10);
        b.path(r[0], 7, 11);
    }
    Fixture {
        name: if v_in_xdy { "a2_xdy" } else { "a2_ydt" },
        ell: 5,
        expect: if v_in_xdy {
            "case_a_claim_a2_xdy"
        } else {
            "case_a_claim_a2_ydt"
        },
        graph: b.graph(),
    }
}

/// Both routings of the x != y two-path branch: the Menger pair lands at
/// r9/r11 with the C-endpoints either nested (left) or swapped (right).
fn fixture_a3(right: bool) -> Fixture {
    let (mut b, r) = skeleton_xy(7, 6, 10);
    if right {
        b.path(5, r[10], 8);
        b.path(7, r[8], 7);
    } else {
        b.path(5, r[8], 6);
        b.path(7, r[10], 7);
    }
    Fixture {
        name: if right { "a3_right" } else { "a3_left" },
        ell: 5,
        expect: if right {
            "case_a_claim_a3_right"
        } else {
            "case_a_claim_a3_left"
        },
        graph: b.graph(),
    }
}

/// Both positions of the first x = y pair branch: t on xDw with the chord
/// overshooting it, or t on wDx with the chord falling short.
fn fixture_b1(t_in_xdw: bool) -> Fixture {
    let (mut b, d) = if t_in_xdw {
        skeleton_x(4, 9)
    } else {
        skeleton_x(12, 9)
    };
    if t_in_xdw {
        b.path(5, d[5], 5); // chord to d6, past t = d4
        b.path(d[0], 7, 8); // survivor leg d1 - 7
    } else {
        b.path(5, d[9], 7); // survivor leg 5 - d10
        b.path(d[10], 7, 6); // chord to d11, short of t = d12
    }
    Fixture {
        name: if t_in_xdw { "b1_xdw" } else { "b1_wdx" },
        ell: 5,
        expect: if t_in_xdw {
            "case_b_claim_b1_xdw"
        } else {
            "case_b_claim_b1_wdx"
        },
        graph: b.graph(),
    }
}

/// Both shapes of the violated two-path pattern in the x = y case. The
/// shortest chord conforms (it ends at d2 or d3, inside xDt), while the
/// disjoint pair reaches across w = d8 (parallel) or straddles t (crossing).
fn fixture_b2(parallel: bool) -> Fixture {
    let (mut b, d) = skeleton_x(4, 9);
    if parallel {
        b.path(5, d[1], 9); // conforming chord to d2
        b.path(5, d[8], 10); // pair leg to d9
        b.path(7, d[9], 10); // pair leg to d10
    } else {
        b.path(7, d[2], 6); // conforming chord to d3, also a pair leg
        b.path(5, d[5], 7); // pair leg to d6, past t = d4
    }
    Fixture {
        name: if parallel { "b2_parallel" } else { "b2_crossing" },
        ell: 5,
        expect: if parallel {
            "case_b_claim_b2_parallel"
        } else {
            "case_b_claim_b2_crossing"
        },
        graph: b.graph(),
    }
}

/// Both shapes of the conforming two-path pattern in the x = y case: the
/// pair endpoints sit on t's side of D and the legs run parallel or cross.
fn fixture_b3(parallel: bool) -> Fixture {
    let (mut b, d) = if parallel {
        skeleton_x(4, 9)
    } else {
        skeleton_x(12, 9)
    };
    if parallel {
        b.path(7, d[2], 6); // leg to d3
        b.path(5, d[0], 10); // leg to d1
    } else {
        b.path(7, d[12], 6); // leg to d13
        b.path(5, d[13], 9); // leg to d14
    }
    Fixture {
        name: if parallel { "b3_parallel" } else { "b3_crossing" },
        ell: 5,
        expect: if parallel {
            "case_b_claim_b3_parallel"
        } else {
            "case_b_claim_b3_crossing"
        },
        graph: b.graph(),
    }
}

/// All ten fixtures, one per pair-producing subcase.
pub fn all() -> Vec<Fixture> {
    vec![
        fixture_a2(true),
        fixture_a2(false),
        fixture_a3(false),
        fixture_a3(true),
        fixture_b1(true),
        fixture_b1(false),
        fixture_b2(true),
        fixture_b2(false),
        fixture_b3(true),
        fixture_b3(false),
    ]
}
