"""Caching line graphs from subspace geometry.

The construction takes parameters (k, m, t, q), fixes the span w of the
first t-1 standard basis vectors of GF(q)^k, and builds

  * user spaces:     all t-dim superspaces of w (one user per space),
  * sum spaces:      all (m+t)-dim superspaces of w,
  * subfile sets:    (m+1)-sets of user spaces whose sum is a sum space.

A vertex (user, subfile) exists exactly when the user's space is NOT
inside the subfile set's sum; vertices sharing a user form a user clique,
vertices sharing a subfile form a subfile clique, and these two clique
families each partition the vertex set.  Transmission cliques come from
(m+2)-sets of user spaces whose sum has dimension m+t+1; they partition
the vertices of the complement of the squared line graph and give the
XOR delivery groups.

Everything is enumerated in the quotient space GF(q)^k / w: a user space
is one normalized quotient vector (its "direction"), a sum of user
spaces has full dimension exactly when the directions involved are
linearly independent, so the subfile and transmission enumerations are
depth-first searches over independent direction sets.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product

import numpy as np

from .gf import GF, factor_prime_power, field as make_field
from .subspaces import (
    SubspaceBasis,
    Vector,
    enumerate_superspaces,
    generating_set_counts,
    q_binomial,
    reduce_vector,
    standard_prefix_subspace,
)

DEFAULT_VERTEX_CAP = 10 ** 7


class CapacityError(RuntimeError):
    """Predicted construction size exceeds the configured cap."""


class DegenerateConstructionError(ValueError):
    """Parameters produce an empty line graph (every subfile fully cached)."""


# ----------------------------------------------------------------------
# Parameters
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ConstructionParams:
    """Construction knobs: ambient dim k, set size m+1, user dim t, field q."""

    k: int
    m: int
    t: int
    q: int

    def __post_init__(self) -> None:
        factor_prime_power(self.q)  # raises for non prime powers
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        if self.m + self.t > self.k:
            raise ValueError(
                f"need m + t <= k, got m={self.m}, t={self.t}, k={self.k}"
            )
        if self.m == 0:
            warnings.warn(
                "m = 0 is degenerate: delivery cliques have size 2",
                stacklevel=2,
            )

    @property
    def alpha(self) -> int:
        return self.k - self.m - self.t

    @property
    def field(self) -> GF:
        return make_field(self.q)

    # Closed forms used both for capacity estimates and as invariants.

    @property
    def num_users(self) -> int:
        return q_binomial(self.k - self.t + 1, 1, self.q)

    @property
    def subfile_clique_size(self) -> int:
        return self.q ** (self.m + 1) * q_binomial(self.alpha, 1, self.q)

    @property
    def user_clique_size(self) -> int:
        g = generating_set_counts(self.q, self.m, self.t).subspace_sets
        h = self.q ** (self.m + 1) * q_binomial(self.k - self.t, self.m + 1, self.q)
        return h * g

    @property
    def subpacketization(self) -> int:
        g = generating_set_counts(self.q, self.m, self.t).subspace_sets
        return q_binomial(self.k - self.t + 1, self.m + 1, self.q) * g

    @property
    def vertex_count(self) -> int:
        return self.num_users * self.user_clique_size


# ----------------------------------------------------------------------
# Quotient-direction elimination, generic and GF(2)-packed
# ----------------------------------------------------------------------

class _TupleOps:
    """Echelon bookkeeping on tuple vectors over any GF(q)."""

    def __init__(self, f: GF):
        self.f = f

    def reduce(self, v, rows):
        # rows: list of (pivot_col, normalized_row)
        f = self.f
        for pc, row in rows:
            c = v[pc]
            if c != 0:
                v = tuple(f.sub(x, f.mul(c, y)) for x, y in zip(v, row))
        return v

    def is_zero(self, v) -> bool:
        return not any(v)

    def make_pivot(self, v):
        pc = next(i for i, x in enumerate(v) if x != 0)
        inv = self.f.inv(v[pc])
        if inv != 1:
            v = tuple(self.f.mul(inv, x) for x in v)
        return pc, v


class _BitOps:
    """Same bookkeeping with bit-packed vectors for GF(2)."""

    @staticmethod
    def pack(v) -> int:
        out = 0
        for i, x in enumerate(v):
            if x:
                out |= 1 << i
        return out

    def reduce(self, v: int, rows) -> int:
        for lead, row in rows:
            if (v >> lead) & 1:
                v ^= row
        return v

    def is_zero(self, v: int) -> bool:
        return v == 0

    def make_pivot(self, v: int):
        return (v & -v).bit_length() - 1, v


def _independent_subsets(directions, size, ops):
    """All index subsets (ascending) whose directions are independent.

    Each added vector must raise the rank by one, so a branch dies the
    moment a candidate reduces to zero against the chosen rows.
    """
    n = len(directions)
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def rec(start: int, rows) -> None:
        depth = len(chosen)
        if depth == size:
            out.append(tuple(chosen))
            return
        # not enough candidates left to finish
        for i in range(start, n - (size - depth) + 1):
            red = ops.reduce(directions[i], rows)
            if ops.is_zero(red):
                continue
            chosen.append(i)
            rec(i + 1, rows + [ops.make_pivot(red)])
            chosen.pop()

    rec(0, [])
    return out


# ----------------------------------------------------------------------
# Universe: spaces and subfile sets
# ----------------------------------------------------------------------

@dataclass
class Universe:
    """Enumerated spaces of one construction.

    subfile_sets holds each subfile as a sorted tuple of user indices;
    subfile_span maps the subfile to the index of its sum space, and
    members lists, per sum space, the users whose space lies inside it.
    """

    params: ConstructionParams
    root: SubspaceBasis
    user_spaces: list[SubspaceBasis]
    sum_spaces: list[SubspaceBasis]
    members: list[tuple[int, ...]]
    subfile_sets: list[tuple[int, ...]]
    subfile_span: list[int]
    user_directions: list[Vector] = dc_field(repr=False, default_factory=list)

    @property
    def num_users(self) -> int:
        return len(self.user_spaces)

    @property
    def subpacketization(self) -> int:
        return len(self.subfile_sets)

    def subfile_sum_space(self, x: int) -> SubspaceBasis:
        return self.sum_spaces[self.subfile_span[x]]


def _quotient_vector(f: GF, row: Vector, w_rows: tuple[Vector, ...], free_cols) -> Vector:
    reduced = reduce_vector(f, row, w_rows)
    return tuple(reduced[c] for c in free_cols)


def _normalize(f: GF, v: Vector) -> Vector:
    for x in v:
        if x != 0:
            if x == 1:
                return v
            inv = f.inv(x)
            return tuple(f.mul(inv, y) for y in v)
    return v


def build_universe(params: ConstructionParams, max_vertices: int | None = DEFAULT_VERTEX_CAP) -> Universe:
    """Enumerate users, sum spaces and subfile sets for the parameters.

    Refuses up front when the closed-form vertex count K*D exceeds
    max_vertices, reporting the predicted sizes.
    """
    cp = params
    f = cp.field
    predicted_f = cp.subpacketization
    predicted_vertices = cp.vertex_count
    if max_vertices is not None and predicted_vertices > max_vertices:
        raise CapacityError(
            f"predicted {predicted_vertices} vertices "
            f"(K={cp.num_users}, D={cp.user_clique_size}, F={predicted_f}) "
            f"exceed cap {max_vertices}"
        )

    w = standard_prefix_subspace(f, cp.k, cp.t - 1)
    user_spaces = enumerate_superspaces(w, cp.t)
    assert len(user_spaces) == cp.num_users
    sum_spaces = enumerate_superspaces(w, cp.m + cp.t)
    assert len(sum_spaces) == q_binomial(cp.k - cp.t + 1, cp.m + 1, cp.q)

    w_pivots = {next(i for i, x in enumerate(r) if x != 0) for r in w.rows}
    free_cols = [j for j in range(cp.k) if j not in w_pivots]

    # Each user space is w plus one new direction in the quotient.
    directions: list[Vector] = []
    for v in user_spaces:
        extra = [r for r in v.rows if next(i for i, x in enumerate(r) if x != 0) not in w_pivots]
        assert len(extra) == 1
        directions.append(_normalize(f, _quotient_vector(f, extra[0], w.rows, free_cols)))
    direction_index = {d: i for i, d in enumerate(directions)}
    assert len(direction_index) == len(directions)

    # Members of each sum space: walk the nonzero quotient combinations of
    # its basis, normalize, and look the direction up.
    members: list[tuple[int, ...]] = []
    expected_members = q_binomial(cp.m + 1, 1, cp.q)
    for p in sum_spaces:
        extra_rows = [
            _quotient_vector(f, r, w.rows, free_cols)
            for r in p.rows
            if next(i for i, x in enumerate(r) if x != 0) not in w_pivots
        ]
        assert len(extra_rows) == cp.m + 1
        found: set[int] = set()
        for coeffs in product(f.elements(), repeat=cp.m + 1):
            if not any(coeffs):
                continue
            acc = [0] * len(free_cols)
            for c, row in zip(coeffs, extra_rows):
                if c:
                    acc = [f.add(a, f.mul(c, x)) for a, x in zip(acc, row)]
            found.add(direction_index[_normalize(f, tuple(acc))])
        assert len(found) == expected_members
        members.append(tuple(sorted(found)))

    # Subfile sets per sum space: (m+1)-subsets of its members with
    # independent directions, i.e. sets actually summing to the space.
    if cp.q == 2:
        ops = _BitOps()
        packed = [_BitOps.pack(d) for d in directions]
    else:
        ops = _TupleOps(f)
        packed = directions
    g = generating_set_counts(cp.q, cp.m, cp.t).subspace_sets
    tagged: list[tuple[tuple[int, ...], int]] = []
    for span_idx, member_ids in enumerate(members):
        local = [packed[i] for i in member_ids]
        subsets = _independent_subsets(local, cp.m + 1, ops)
        assert len(subsets) == g, (span_idx, len(subsets), g)
        for sub in subsets:
            tagged.append((tuple(member_ids[i] for i in sub), span_idx))
    tagged.sort(key=lambda pair: pair[0])
    subfile_sets = [pair[0] for pair in tagged]
    subfile_span = [pair[1] for pair in tagged]
    assert len(subfile_sets) == predicted_f

    return Universe(
        params=cp,
        root=w,
        user_spaces=user_spaces,
        sum_spaces=sum_spaces,
        members=members,
        subfile_sets=subfile_sets,
        subfile_span=subfile_span,
        user_directions=directions,
    )


# ----------------------------------------------------------------------
# The line graph
# ----------------------------------------------------------------------

@dataclass
class CachingLineGraph:
    """Vertex set {(user, subfile): user space not inside the subfile sum}
    together with its user-clique and subfile-clique partitions."""

    universe: Universe
    user_cliques: list[np.ndarray]        # per user, sorted subfile indices
    subfile_cliques: list[tuple[int, ...]]  # per subfile, sorted user indices
    span_member_mask: list[int]           # per sum space, bitmask of members

    @property
    def params(self) -> ConstructionParams:
        return self.universe.params

    @property
    def num_users(self) -> int:
        return self.universe.num_users

    @property
    def subpacketization(self) -> int:
        return self.universe.subpacketization

    @cached_property
    def subfile_clique_size(self) -> int:
        return len(self.subfile_cliques[0])

    @cached_property
    def user_clique_size(self) -> int:
        return len(self.user_cliques[0])

    @property
    def vertex_count(self) -> int:
        return self.num_users * self.user_clique_size

    def has_vertex(self, user: int, subfile: int) -> bool:
        mask = self.span_member_mask[self.universe.subfile_span[subfile]]
        return not (mask >> user) & 1

    def vertex_labels(self):
        """All (user, subfile) labels, grouped by subfile clique."""
        for x, users in enumerate(self.subfile_cliques):
            for v in users:
                yield (v, x)


def build_line_graph(universe: Universe) -> CachingLineGraph:
    cp = universe.params
    k_users = universe.num_users

    member_masks = []
    for member_ids in universe.members:
        mask = 0
        for v in member_ids:
            mask |= 1 << v
        member_masks.append(mask)

    uncached_per_span = [
        tuple(v for v in range(k_users) if not (mask >> v) & 1)
        for mask in member_masks
    ]
    clique_size = cp.subfile_clique_size
    if clique_size == 0:
        raise DegenerateConstructionError(
            "m + t = k leaves every subfile cached at every user: empty line graph"
        )
    for unc in uncached_per_span:
        assert len(unc) == clique_size

    subfile_cliques = [uncached_per_span[s] for s in universe.subfile_span]

    span_to_subfiles: list[list[int]] = [[] for _ in universe.sum_spaces]
    for x, s in enumerate(universe.subfile_span):
        span_to_subfiles[s].append(x)
    user_lists: list[list[int]] = [[] for _ in range(k_users)]
    for s, xs in enumerate(span_to_subfiles):
        for v in uncached_per_span[s]:
            user_lists[v].extend(xs)
    expected_d = cp.user_clique_size
    user_cliques = []
    for v, xs in enumerate(user_lists):
        assert len(xs) == expected_d, (v, len(xs), expected_d)
        arr = np.array(sorted(xs), dtype=np.int64)
        user_cliques.append(arr)

    return CachingLineGraph(
        universe=universe,
        user_cliques=user_cliques,
        subfile_cliques=subfile_cliques,
        span_member_mask=member_masks,
    )


def is_compl_square_edge(graph: CachingLineGraph, v1: tuple[int, int], v2: tuple[int, int]) -> bool:
    """Edge test in the complement of the squared line graph.

    (u1, x1) and (u2, x2) are joined exactly when the users differ, the
    subfiles differ, and neither crossed pair (u1, x2), (u2, x1) is a
    vertex, i.e. each user has the other's subfile cached.
    """
    u1, x1 = v1
    u2, x2 = v2
    for u, x in (v1, v2):
        if not (0 <= u < graph.num_users and 0 <= x < graph.subpacketization):
            raise ValueError(f"({u}, {x}) is out of range")
        if not graph.has_vertex(u, x):
            raise ValueError(f"({u}, {x}) is not a vertex of the line graph")
    if u1 == u2 or x1 == x2:
        return False
    return not graph.has_vertex(u1, x2) and not graph.has_vertex(u2, x1)


# ----------------------------------------------------------------------
# Transmission cliques
# ----------------------------------------------------------------------

@dataclass
class TransmissionCover:
    """Disjoint transmission cliques covering every vertex.

    Row i of `users`/`subfiles` is one clique: d = m+2 vertex pairs,
    ordered by user index.  clique_of[(user, subfile)] recovers the row.
    """

    users: np.ndarray     # (num_cliques, d) int64
    subfiles: np.ndarray  # (num_cliques, d) int64
    clique_of: np.ndarray  # (K, F) int64, -1 where no vertex

    @property
    def num_cliques(self) -> int:
        return self.users.shape[0]

    @property
    def group_size(self) -> int:
        return self.users.shape[1]

    def clique(self, i: int) -> list[tuple[int, int]]:
        return list(zip(self.users[i].tolist(), self.subfiles[i].tolist()))


def enumerate_transmission_cliques(graph: CachingLineGraph) -> TransmissionCover:
    """All (m+2)-sets of users with independent directions, as cliques.

    Dropping one user from such a set leaves a subfile set, so each set Y
    yields the clique {(u, Y minus u)}.  The cliques are pairwise disjoint
    and cover the vertex set; both facts are asserted during the build.
    """
    uni = graph.universe
    cp = uni.params
    f = cp.field
    if cp.q == 2:
        ops = _BitOps()
        packed = [_BitOps.pack(d) for d in uni.user_directions]
    else:
        ops = _TupleOps(f)
        packed = uni.user_directions

    groups = _independent_subsets(packed, cp.m + 2, ops)
    d = cp.m + 2
    expected = graph.vertex_count // d
    assert len(groups) == expected, (len(groups), expected)

    subfile_index = {xs: i for i, xs in enumerate(uni.subfile_sets)}
    users = np.empty((len(groups), d), dtype=np.int64)
    subs = np.empty((len(groups), d), dtype=np.int64)
    clique_of = np.full((graph.num_users, graph.subpacketization), -1, dtype=np.int64)
    for row, group in enumerate(groups):
        for j, u in enumerate(group):
            rest = tuple(v for v in group if v != u)
            x = subfile_index[rest]
            users[row, j] = u
            subs[row, j] = x
            assert clique_of[u, x] == -1
            clique_of[u, x] = row
    assert int((clique_of >= 0).sum()) == graph.vertex_count
    return TransmissionCover(users=users, subfiles=subs, clique_of=clique_of)


# ----------------------------------------------------------------------
# Validation (the four line-graph conditions)
# ----------------------------------------------------------------------

@dataclass
class LineGraphReport:
    """Outcome of the four structural conditions; violations are messages."""

    user_partition_ok: bool
    cross_degree_ok: bool
    subfile_clique_ok: bool
    subfile_count_ok: bool
    violations: list[str]

    @property
    def ok(self) -> bool:
        return (
            self.user_partition_ok
            and self.cross_degree_ok
            and self.subfile_clique_ok
            and self.subfile_count_ok
        )


def verify_vertex_labels(labels, num_users: int, num_subfiles: int) -> LineGraphReport:
    """Check the caching-line-graph conditions on raw (user, subfile) labels.

    Conditions: (i) user cliques partition the vertices with one common
    size; (ii) a vertex has at most one neighbour inside any other user
    clique; (iii) a vertex plus its neighbours outside its own user clique
    form a clique; (iv) the number of subfile cliques matches.
    """
    labels = list(labels)
    violations: list[str] = []

    per_user: dict[int, int] = {}
    per_subfile: dict[int, list[int]] = {}
    seen: dict[tuple[int, int], int] = {}
    for (u, x) in labels:
        per_user[u] = per_user.get(u, 0) + 1
        per_subfile.setdefault(x, []).append(u)
        seen[(u, x)] = seen.get((u, x), 0) + 1

    sizes = set(per_user.values())
    user_partition_ok = len(per_user) == num_users and len(sizes) == 1
    if len(per_user) != num_users:
        violations.append(
            f"condition (i): {len(per_user)} user cliques, expected {num_users}"
        )
    if len(sizes) > 1:
        violations.append(f"condition (i): unequal user clique sizes {sorted(sizes)}")

    dupes = [lab for lab, cnt in seen.items() if cnt > 1]
    cross_degree_ok = not dupes
    for lab in dupes:
        violations.append(
            f"condition (ii): label {lab} occurs {seen[lab]} times, so some vertex "
            f"has two neighbours in one other user clique"
        )

    # (iii): within one subfile clique all pairs must be adjacent, i.e.
    # share the subfile but not the user.
    subfile_clique_ok = True
    for x, users in per_subfile.items():
        if len(set(users)) != len(users):
            subfile_clique_ok = False
            violations.append(
                f"condition (iii): subfile clique {x} holds user "
                f"{sorted(u for u in set(users) if users.count(u) > 1)} twice; "
                f"it is not a clique"
            )

    subfile_count_ok = len(per_subfile) == num_subfiles
    if not subfile_count_ok:
        violations.append(
            f"condition (iv): {len(per_subfile)} subfile cliques, expected {num_subfiles}"
        )

    return LineGraphReport(
        user_partition_ok=user_partition_ok,
        cross_degree_ok=cross_degree_ok,
        subfile_clique_ok=subfile_clique_ok,
        subfile_count_ok=subfile_count_ok,
        violations=violations,
    )


def verify_line_graph(graph: CachingLineGraph) -> LineGraphReport:
    return verify_vertex_labels(
        graph.vertex_labels(), graph.num_users, graph.subpacketization
    )
