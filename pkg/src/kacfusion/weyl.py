"""Finite and extended affine Weyl groups acting on weight coordinates.

A finite Weyl element is an integer matrix acting on fundamental weight
coordinates together with its determinant sign. Affine elements are pairs
t_beta * wbar with a rational translation vector beta; they act on
AffineWeight values and, through the same formula, on the nu images of
affine coroots (which carry k0 = 0).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Tuple

from .errors import CapacityError, ChamberError
from .ratlin import frac, mat_inv, vec, vec_add, vec_neg, vec_scale
from .rootsys import AffineWeight, FiniteRootSystem, FiniteWeight

IntMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class WeylElement:
    """An element of the finite Weyl group with its sign character."""

    matrix: IntMatrix
    sign: int

    def act(self, v) -> FiniteWeight:
        return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in self.matrix)

    def act_affine(self, lam: AffineWeight) -> AffineWeight:
        return AffineWeight(self.act(lam.finite), lam.k0, lam.d0)

    def compose(self, other: "WeylElement") -> "WeylElement":
        bt = list(zip(*other.matrix))
        m = tuple(
            tuple(sum(ra[k] * cb[k] for k in range(len(ra))) for cb in bt)
            for ra in self.matrix
        )
        return WeylElement(m, self.sign * other.sign)

    def inverse(self) -> "WeylElement":
        inv = mat_inv(self.matrix)
        m = tuple(tuple(int(x) for x in row) for row in inv)
        return WeylElement(m, self.sign)

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(n)
            for j in range(n)
        )


def weyl_identity(rank: int) -> WeylElement:
    return WeylElement(
        tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)), 1
    )


def simple_reflection(rs: FiniteRootSystem, i: int) -> WeylElement:
    """Reflection in the i-th simple root (1-based)."""
    n = rs.rank
    k = i - 1
    m = tuple(
        tuple(int(r == c) - (int(rs.cartan[r][k]) if c == k else 0) for c in range(n))
        for r in range(n)
    )
    return WeylElement(m, -1)


def weyl_order(rs: FiniteRootSystem) -> int:
    """Order of the finite Weyl group, from the classical product formulas."""
    fam, n = rs.spec.family, rs.spec.rank
    if fam == "A":
        return factorial(n + 1)
    if fam in ("B", "C"):
        return 2**n * factorial(n)
    if fam == "D":
        return 2 ** (n - 1) * factorial(n)
    if fam == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    if fam == "F":
        return 1152
    return 12


@lru_cache(maxsize=None)
def enumerate_weyl(rs: FiniteRootSystem, bound: int = 10**6):
    """All elements of the finite Weyl group, identity first.

    The traversal is breadth first over left multiplication by simple
    reflections, so the output order is deterministic. Groups larger than
    the bound are refused up front.
    """
    order = weyl_order(rs)
    if order > bound:
        raise CapacityError(
            f"Weyl group of {rs.spec} has order {order}, above the bound {bound}"
        )
    gens = [simple_reflection(rs, i) for i in range(1, rs.rank + 1)]
    start = weyl_identity(rs.rank)
    seen = {start.matrix: start}
    queue = [start]
    pos = 0
    while pos < len(queue):
        w = queue[pos]
        pos += 1
        for g in gens:
            nxt = g.compose(w)
            if nxt.matrix not in seen:
                seen[nxt.matrix] = nxt
                queue.append(nxt)
    if len(queue) != order:
        raise AssertionError("Weyl enumeration does not match the group order")
    return tuple(queue)


def to_dominant(rs: FiniteRootSystem, xi, strict: bool = False):
    """Reduce a finite weight to the dominant chamber.

    Returns (w, w(xi)) with w(xi) dominant, by greedy reflection at the
    first negative coordinate. With strict=True a wall point (some zero
    coordinate after reduction) raises ChamberError.
    """
    cur = vec(xi)
    w = weyl_identity(rs.rank)
    cap = rs.num_positive_roots + 2
    for _ in range(cap):
        neg = next((i for i, x in enumerate(cur) if x < 0), None)
        if neg is None:
            if strict and any(x == 0 for x in cur):
                raise ChamberError("weight lies on a reflection wall")
            return w, cur
        s = simple_reflection(rs, neg + 1)
        cur = s.act(cur)
        w = s.compose(w)
    raise ChamberError("dominance reduction did not terminate")


@dataclass(frozen=True)
class ExtAffineElement:
    """t_beta * wbar in the extended affine Weyl group."""

    beta: FiniteWeight
    wbar: WeylElement

    def compose(self, other: "ExtAffineElement") -> "ExtAffineElement":
        return ExtAffineElement(
            vec_add(self.beta, self.wbar.act(other.beta)),
            self.wbar.compose(other.wbar),
        )

    def inverse(self) -> "ExtAffineElement":
        winv = self.wbar.inverse()
        return ExtAffineElement(vec_neg(winv.act(self.beta)), winv)

    @property
    def sign(self) -> int:
        return self.wbar.sign

    def is_identity(self) -> bool:
        return all(x == 0 for x in self.beta) and self.wbar.is_identity()


def ext_identity(rank: int) -> ExtAffineElement:
    return ExtAffineElement(tuple(Fraction(0) for _ in range(rank)), weyl_identity(rank))


def ext_from_wbar(w: WeylElement) -> ExtAffineElement:
    return ExtAffineElement(tuple(Fraction(0) for _ in range(len(w.matrix))), w)


def affine_action(rs: FiniteRootSystem, y: ExtAffineElement, lam: AffineWeight) -> AffineWeight:
    """Apply t_beta * wbar to an affine weight.

    The translation acts by lam + k0 beta - ((lam, beta) + k0 (beta, beta)/2) delta,
    which also covers adjoint transport of coroot images (k0 = 0).
    """
    fin = y.wbar.act(lam.finite)
    b = y.beta
    shift = rs.inner_finite(fin, b) + lam.k0 * rs.inner_finite(b, b) / 2
    return AffineWeight(vec_add(fin, vec_scale(lam.k0, b)), lam.k0, lam.d0 - shift)


def _node0_data(rs: FiniteRootSystem, variant: str):
    """Pairing coefficients and reflection root for the affine node.

    The affine basis element is q K minus the highest coroot of the short
    chamber family: for the principal variant the coroot of theta, with
    pairing coefficients the comarks; for the coprincipal variant the
    coroot of theta_short, with coefficients the dual marks.
    """
    if variant == "principal":
        return rs.comarks, rs.theta
    if variant == "coprincipal":
        return rs.dual_marks, rs.theta_short
    raise ValueError(f"unknown variant {variant!r}")


def _node0_reflection(rs: FiniteRootSystem, q: int, variant: str) -> ExtAffineElement:
    coeffs, root = _node0_data(rs, variant)
    n = rs.rank
    m = tuple(
        tuple(int(r == c) - int(root[r]) * coeffs[c] for c in range(n))
        for r in range(n)
    )
    return ExtAffineElement(vec_scale(frac(q), root), WeylElement(m, -1))


def coroot_basis_Sq(rs: FiniteRootSystem, q: int, variant: str = "principal"):
    """nu images of the level-q chamber coroot basis.

    Index 0 carries q K minus the relevant highest coroot, the rest are the
    finite simple coroots. At q = 1 the principal basis is the ordinary
    affine one.
    """
    _, root = _node0_data(rs, variant)
    gamma0 = AffineWeight(
        vec_neg(rs.coroot_image(root)), Fraction(0), Fraction(q)
    )
    basis = [gamma0]
    for j in range(rs.rank):
        basis.append(AffineWeight(vec(rs.simple_coroots[j]), Fraction(0), Fraction(0)))
    return tuple(basis)


def _affine_reduce(rs, q, variant, k0, fin, eps, cap=200000):
    """Greedy reduction into the level-q chamber, with an optional
    infinitesimal tie-break component eps transported alongside.

    A condition is violated when its main value is negative, or zero with
    negative eps value. Returns (u, fin', eps') with u in the affine group
    generated by the finite reflections and the level-q node reflection.
    """
    coeffs, _ = _node0_data(rs, variant)
    refl0 = _node0_reflection(rs, q, variant)
    n = rs.rank
    u = ext_identity(n)
    fin = vec(fin)
    eps = vec(eps) if eps is not None else None
    qk0 = frac(q) * k0
    for _ in range(cap):
        hit = None
        node0_main = qk0 - sum(coeffs[i] * fin[i] for i in range(n))
        node0_eps = (
            -sum(coeffs[i] * eps[i] for i in range(n)) if eps is not None else 0
        )
        if node0_main < 0 or (node0_main == 0 and eps is not None and node0_eps < 0):
            hit = 0
        else:
            for i in range(n):
                if fin[i] < 0 or (fin[i] == 0 and eps is not None and eps[i] < 0):
                    hit = i + 1
                    break
        if hit is None:
            return u, fin, eps
        if hit == 0:
            r = refl0
            fin = vec_add(r.wbar.act(fin), vec_scale(k0, r.beta))
            if eps is not None:
                eps = r.wbar.act(eps)
        else:
            s = simple_reflection(rs, hit)
            r = ext_from_wbar(s)
            fin = s.act(fin)
            if eps is not None:
                eps = s.act(eps)
        u = r.compose(u)
    raise ChamberError("affine chamber reduction did not terminate")


def affine_to_dominant(
    rs: FiniteRootSystem,
    xi: AffineWeight,
    q: int = 1,
    variant: str = "principal",
    strict: bool = False,
):
    """Reduce an affine weight into the closed level-q chamber.

    The acting group is the finite Weyl group extended by translations in
    q times the coroot lattice (principal) or q times the root lattice
    (coprincipal). Returns (u, u(xi)). Requires positive level; with
    strict=True a wall point raises ChamberError.
    """
    if xi.k0 <= 0:
        raise ChamberError("chamber reduction needs a positive level")
    u, fin, _ = _affine_reduce(rs, q, variant, xi.k0, xi.finite, None)
    out = affine_action(rs, u, xi)
    if strict:
        coeffs, _ = _node0_data(rs, variant)
        walls = [x for x in fin]
        walls.append(frac(q) * xi.k0 - sum(coeffs[i] * fin[i] for i in range(rs.rank)))
        if any(x == 0 for x in walls):
            raise ChamberError("affine weight lies on a chamber wall")
    return u, out


@lru_cache(maxsize=None)
def _longest_element(rs: FiniteRootSystem) -> WeylElement:
    w, img = to_dominant(rs, vec_neg(rs.rho))
    if img != rs.rho:
        raise AssertionError("longest element computation failed")
    return w


@lru_cache(maxsize=None)
def _longest_parabolic(rs: FiniteRootSystem, j: int) -> WeylElement:
    """Longest element of the parabolic generated by all s_i with i != j."""
    big = Fraction(10**6)
    xi = [Fraction(-1)] * rs.rank
    xi[j - 1] = big
    w, img = to_dominant(rs, tuple(xi))
    if any(img[i] < 0 for i in range(rs.rank)):
        raise AssertionError("parabolic reduction failed")
    return w


@lru_cache(maxsize=None)
def extended_generators(rs: FiniteRootSystem, variant: str = "principal"):
    """Automorphisms sigma_j = t_{Lambda_j} sigma_j_bar of the level-1 chamber.

    Returns the identity together with one element per nonzero node of J
    (principal) or LJ (coprincipal). The translation part is the chamber
    vertex Lambda_j (the mark coefficient there is 1), and sigma_j_bar is
    the unique finite element carrying minus the relevant highest root to
    alpha_j; this defining property is checked.
    """
    nodes = rs.J if variant == "principal" else rs.LJ
    _, root = _node0_data(rs, variant)
    out = [ext_identity(rs.rank)]
    w0 = _longest_element(rs)
    for j in nodes:
        if j == 0:
            continue
        sbar = _longest_parabolic(rs, j).compose(w0)
        if sbar.act(vec_neg(root)) != rs.simple_roots[j - 1]:
            raise AssertionError("sigma_j does not carry -theta to alpha_j")
        out.append(ExtAffineElement(rs.fundamental_weight(j), sbar))
    return tuple(out)
