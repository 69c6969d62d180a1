"""Exact splitting of torus homomorphisms into GL_k.

A candidate homomorphism is a square matrix of Laurent polynomials in the
torus variables.  Grouping the matrix coefficients by monomial exponent
yields one rational matrix per character; the map is a group homomorphism
into GL_k exactly when those coefficient matrices form a complete system
of orthogonal idempotents.  Weights are therefore read directly off the
exponents -- no characteristic polynomial, no algebraic numbers -- and a
simultaneous diagonalizer is assembled from echelon bases of the
projector images, deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .bundle import BlockStructure, BundleData, ExtensionError, check_extension
from .fan import Fan
from .lattice import Character
from .laurent import LaurentMatrix, LaurentPoly
from .report import CheckReport

QMatrix = tuple[tuple[Fraction, ...], ...]


class RepError(ValueError):
    """Invalid input to the representation splitter."""


# ---------------------------------------------------------------------------
# exact rational matrix helpers
# ---------------------------------------------------------------------------


def _q_identity(k: int) -> QMatrix:
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)
    )


def _q_zero(k: int) -> QMatrix:
    return tuple(tuple(Fraction(0) for _ in range(k)) for _ in range(k))


def _q_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    k = len(a)
    return tuple(
        tuple(sum(a[i][l] * b[l][j] for l in range(k)) for j in range(k))
        for i in range(k)
    )


def _q_add(a: QMatrix, b: QMatrix) -> QMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _q_is_zero(a: QMatrix) -> bool:
    return all(x == 0 for row in a for x in row)


def _q_rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with pivots normalized to 1."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, nrows) if mat[i][col] != 0), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        p = mat[r][col]
        mat[r] = [x / p for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return mat, pivots


def _q_column_basis(a: QMatrix) -> list[tuple[Fraction, ...]]:
    """Reduced column-echelon basis of the column space (may be empty)."""
    cols = [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]
    rref, pivots = _q_rref(cols)
    return [tuple(rref[i]) for i in range(len(pivots))]


def _q_inverse(a: QMatrix) -> QMatrix:
    k = len(a)
    work = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
        for i, row in enumerate(a)
    ]
    for col in range(k):
        sel = next((i for i in range(col, k) if work[i][col] != 0), None)
        if sel is None:
            raise RepError("matrix is singular")
        work[col], work[sel] = work[sel], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for i in range(k):
            if i != col and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return tuple(tuple(row[k:]) for row in work)


def q_matrix(values: Sequence[Sequence]) -> QMatrix:
    return tuple(tuple(Fraction(v) for v in row) for row in values)


# ---------------------------------------------------------------------------
# weight collection and the homomorphism test
# ---------------------------------------------------------------------------


def collect_weights(rho: LaurentMatrix) -> dict[Character, QMatrix]:
    """Coefficient matrix of every monomial appearing in the matrix.

    Summing coefficient * monomial over the returned mapping reconstructs
    the input exactly.
    """
    k = rho.size
    exps: set[tuple[int, ...]] = set()
    for row in rho.rows:
        for p in row:
            exps.update(p.terms)
    out: dict[Character, QMatrix] = {}
    for e in sorted(exps):
        out[e] = tuple(
            tuple(rho.rows[i][j].coefficient(e) for j in range(k)) for i in range(k)
        )
    return out


def reconstruct(weights: Mapping[Character, QMatrix], nvars: int, size: int) -> LaurentMatrix:
    rows = [
        [
            LaurentPoly(nvars, {e: a[i][j] for e, a in weights.items()})
            for j in range(size)
        ]
        for i in range(size)
    ]
    return LaurentMatrix(nvars, rows)


def verify_homomorphism(rho: LaurentMatrix) -> CheckReport:
    """Projector identities characterizing a torus homomorphism into GL_k.

    The coefficient family {A_m} must satisfy A_m A_m' = 0 for m != m',
    A_m^2 = A_m, and sum A_m = I; this is the functional equation
    rho(ts) = rho(t) rho(s) together with rho(1) = I, and it forces
    rho(t) invertible for every torus point.  The first violated identity
    is reported.
    """
    weights = collect_weights(rho)
    chars = sorted(weights)
    for i, m1 in enumerate(chars):
        for m2 in chars[i + 1 :]:
            if not _q_is_zero(_q_mul(weights[m1], weights[m2])):
                return CheckReport(
                    False,
                    [{"kind": "product_not_zero", "weights": [list(m1), list(m2)]}],
                )
            if not _q_is_zero(_q_mul(weights[m2], weights[m1])):
                return CheckReport(
                    False,
                    [{"kind": "product_not_zero", "weights": [list(m2), list(m1)]}],
                )
    for m in chars:
        a = weights[m]
        if _q_mul(a, a) != a:
            return CheckReport(False, [{"kind": "not_idempotent", "weight": list(m)}])
    total = _q_zero(rho.size)
    for m in chars:
        total = _q_add(total, weights[m])
    if total != _q_identity(rho.size):
        return CheckReport(False, [{"kind": "sum_not_identity"}])
    return CheckReport(True, [])


# ---------------------------------------------------------------------------
# single and joint splitting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightDecomposition:
    """Weights with projectors, plus a verified diagonalizing conjugator.

    ``diagonal[j]`` is the character carried by column j of the
    conjugator; weight blocks appear in lexicographic order and each
    projector equals the corresponding coefficient matrix.
    """

    weights: tuple[tuple[Character, QMatrix, int], ...]
    conjugator: QMatrix
    inverse_conjugator: QMatrix
    diagonal: tuple[Character, ...]

    def multiplicity(self, m: Character) -> int:
        for char, _, mult in self.weights:
            if char == m:
                return mult
        return 0


def _assemble_conjugator(
    groups: Sequence[tuple[object, list[tuple[Fraction, ...]]]], k: int
) -> QMatrix:
    cols: list[tuple[Fraction, ...]] = []
    for _, basis in groups:
        cols.extend(basis)
    if len(cols) != k:
        raise RepError("projector images do not fill the space")
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


def _verify_diagonal(
    rho: LaurentMatrix, g: QMatrix, g_inv: QMatrix, diagonal: Sequence[Character]
) -> None:
    conj = (
        LaurentMatrix.constant(rho.nvars, g_inv)
        * rho
        * LaurentMatrix.constant(rho.nvars, g)
    )
    for i in range(rho.size):
        for j in range(rho.size):
            p = conj.rows[i][j]
            if i != j:
                if not p.is_zero:
                    raise RepError("internal: conjugated matrix is not diagonal")
            elif p != LaurentPoly.monomial(diagonal[i]):
                raise RepError("internal: diagonal entry is not the expected monomial")


def split(rho: LaurentMatrix) -> WeightDecomposition:
    """Weight decomposition with a deterministic diagonalizing conjugator.

    Requires the projector identities to hold; the conjugator columns are
    the reduced column-echelon bases of the projector images taken in
    lexicographic weight order, and the diagonalization is re-verified as
    an exact identity in the Laurent ring before returning.
    """
    rep = verify_homomorphism(rho)
    if not rep:
        raise RepError(f"not a homomorphism: {rep.findings[0]}")
    weights = collect_weights(rho)
    groups = []
    entries = []
    diagonal: list[Character] = []
    for m in sorted(weights):
        basis = _q_column_basis(weights[m])
        groups.append((m, basis))
        entries.append((m, weights[m], len(basis)))
        diagonal.extend([m] * len(basis))
    g = _assemble_conjugator(groups, rho.size)
    g_inv = _q_inverse(g)
    _verify_diagonal(rho, g, g_inv, diagonal)
    return WeightDecomposition(
        weights=tuple(entries),
        conjugator=g,
        inverse_conjugator=g_inv,
        diagonal=tuple(diagonal),
    )


@dataclass(frozen=True)
class JointSplit:
    """Simultaneous diagonalization data for a family of homomorphisms.

    ``classes[c]`` is a tuple of per-input characters (the joint weight of
    the c-th block of conjugator columns) with its multiplicity;
    ``diagonals[i][j]`` is the character of input i on column j.
    """

    conjugator: QMatrix
    inverse_conjugator: QMatrix
    classes: tuple[tuple[tuple[Character, ...], int], ...]
    diagonals: tuple[tuple[Character, ...], ...]


def joint_split(rhos: Sequence[LaurentMatrix]) -> JointSplit:
    """One conjugator diagonalizing every member of the family.

    The coefficient matrices must commute across the family (this is the
    abelian-image hypothesis, checked first) and each member must pass the
    homomorphism test.  Products of one projector per member project onto
    the joint weight spaces; nonzero products, in lexicographic order of
    their weight tuples, contribute echelon-basis columns.
    """
    if not rhos:
        raise RepError("empty family")
    k = rhos[0].size
    nvars = rhos[0].nvars
    for rho in rhos:
        if rho.size != k or rho.nvars != nvars:
            raise RepError("family members must share size and variables")
    families = [collect_weights(rho) for rho in rhos]
    for a in range(len(rhos)):
        for b in range(a + 1, len(rhos)):
            for ma, pa in families[a].items():
                for mb, pb in families[b].items():
                    if _q_mul(pa, pb) != _q_mul(pb, pa):
                        raise RepError(
                            "images do not commute: coefficient matrices of inputs "
                            f"{a} and {b} fail to commute"
                        )
    for idx, rho in enumerate(rhos):
        rep = verify_homomorphism(rho)
        if not rep:
            raise RepError(f"not a homomorphism (input {idx}): {rep.findings[0]}")

    def joint_projectors(
        prefix: tuple[Character, ...], proj: QMatrix, depth: int
    ) -> list[tuple[tuple[Character, ...], QMatrix]]:
        if depth == len(families):
            return [(prefix, proj)]
        out = []
        for m in sorted(families[depth]):
            p = _q_mul(proj, families[depth][m])
            if not _q_is_zero(p):
                out.extend(joint_projectors(prefix + (m,), p, depth + 1))
        return out

    classes_raw = joint_projectors((), _q_identity(k), 0)
    groups = []
    classes = []
    for weight_tuple, proj in classes_raw:
        basis = _q_column_basis(proj)
        groups.append((weight_tuple, basis))
        classes.append((weight_tuple, len(basis)))
    g = _assemble_conjugator(groups, k)
    g_inv = _q_inverse(g)
    diagonals = []
    for i in range(len(rhos)):
        diag: list[Character] = []
        for weight_tuple, mult in classes:
            diag.extend([weight_tuple[i]] * mult)
        diagonals.append(tuple(diag))
        _verify_diagonal(rhos[i], g, g_inv, diagonals[i])
    return JointSplit(
        conjugator=g,
        inverse_conjugator=g_inv,
        classes=tuple(classes),
        diagonals=tuple(diagonals),
    )


def split_to_bundle(
    fan: Fan,
    rhos: Mapping[int, LaurentMatrix] | Sequence[LaurentMatrix],
    blocks: BlockStructure | None = None,
) -> tuple[QMatrix, BundleData]:
    """Reduce a per-cone family of homomorphisms to diagonal bundle data.

    The family is jointly diagonalized; the conjugator columns are then
    grouped to fit the declared block sizes, each block drawing its
    columns from a single joint weight class (so the k_i diagonal entries
    of a block agree on every cone).  The resulting character collection
    must satisfy the extension condition.
    """
    m = len(fan.max_cones)
    if isinstance(rhos, Mapping):
        try:
            family = [rhos[i] for i in range(m)]
        except KeyError as exc:
            raise RepError(f"missing homomorphism for maximal cone {exc}") from exc
    else:
        family = list(rhos)
        if len(family) != m:
            raise RepError(f"expected {m} homomorphisms, got {len(family)}")
    if family[0].nvars != fan.dim:
        raise RepError("variable count must match the fan dimension")
    js = joint_split(family)
    k = family[0].size
    if blocks is None:
        blocks = BlockStructure.diagonal(k)
    if blocks.k != k:
        raise RepError(f"block sizes sum to {blocks.k}, matrices have size {k}")

    # Assign blocks (in order) to joint weight classes; first feasible
    # assignment in lexicographic class order wins.
    mults = [mult for _, mult in js.classes]
    parts = blocks.partition

    def assign(idx: int, remaining: list[int]) -> list[int] | None:
        if idx == len(parts):
            return [] if all(x == 0 for x in remaining) else None
        for ci in range(len(remaining)):
            if remaining[ci] >= parts[idx]:
                remaining[ci] -= parts[idx]
                rest = assign(idx + 1, remaining)
                if rest is not None:
                    return [ci] + rest
                remaining[ci] += parts[idx]
        return None

    assignment = assign(0, list(mults))
    if assignment is None:
        raise RepError(
            "block multiplicity mismatch: joint weight multiplicities "
            f"{mults} cannot fill blocks {list(parts)}"
        )

    # Reorder conjugator columns into block order.
    class_columns: list[list[int]] = []
    start = 0
    for _, mult in js.classes:
        class_columns.append(list(range(start, start + mult)))
        start += mult
    perm: list[int] = []
    for b, ci in enumerate(assignment):
        take = parts[b]
        perm.extend(class_columns[ci][:take])
        class_columns[ci] = class_columns[ci][take:]
    g = tuple(tuple(js.conjugator[i][j] for j in perm) for i in range(k))
    chars = tuple(
        tuple(js.classes[ci][0][cone] for ci in assignment) for cone in range(m)
    )
    data = BundleData(fan=fan, blocks=blocks, chars=chars)
    rep = check_extension(data)
    if not rep:
        raise ExtensionError(f"extension condition fails: {rep.summary()}")
    return g, data


# ---------------------------------------------------------------------------
# triangular rigidity
# ---------------------------------------------------------------------------


def triangular_rigidity_check(rho: LaurentMatrix) -> CheckReport:
    """No one-variable homomorphism is triangular with a nonzero strict part.

    For a lower-triangular matrix with equal diagonal entries, passing the
    homomorphism test forces every off-diagonal entry to vanish; a nonzero
    off-diagonal entry therefore always surfaces as a violated projector
    identity, which is returned in the report.
    """
    if rho.nvars != 1:
        raise RepError("single-variable input required")
    k = rho.size
    for i in range(k):
        for j in range(i + 1, k):
            if not rho.rows[i][j].is_zero:
                raise RepError("not triangular")
    diag = rho.rows[0][0]
    for i in range(1, k):
        if rho.rows[i][i] != diag:
            raise RepError("diagonal entries differ")
    rep = verify_homomorphism(rho)
    if rep.ok:
        for i in range(k):
            for j in range(i):
                if not rho.rows[i][j].is_zero:
                    raise RepError(
                        "internal: homomorphism test passed with a nonzero "
                        "off-diagonal entry"
                    )
    return rep


# ---------------------------------------------------------------------------
# one-variable limit extension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitExtensionVerdict:
    """Outcome of the one-variable extension test.

    ``limit_is_identity`` records whether f(zt) f(z)^{-1} tends to the
    identity as z -> 0 (no negative z-powers and identity constant part);
    ``extends`` records whether f itself is polynomial in z with an
    invertible value at 0.  The first always implies the second, and the
    implication is asserted internally.
    """

    limit_exists: bool
    limit_is_identity: bool
    extends: bool
    min_z_degree: int


def _shift_to_two_vars(p: LaurentPoly) -> LaurentPoly:
    # p(z) -> p(z*t) in variables (z, t): the exponent duplicates.
    return LaurentPoly(2, {(e, e): c for (e,), c in p.terms.items()})


def _plain_to_two_vars(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(2, {(e, 0): c for (e,), c in p.terms.items()})


def monomial_limit_extension(f: LaurentMatrix) -> LimitExtensionVerdict:
    """Test the regular extension of a one-variable invertible-matrix map.

    The determinant must be a single monomial (so the matrix is invertible
    over the punctured line); the inverse is adjugate over determinant,
    exact.  The product f(zt) f(z)^{-1} is expanded in two variables to
    decide whether its limit at z = 0 exists and equals the identity.
    """
    if f.nvars != 1:
        raise RepError("single-variable input required")
    d = f.determinant()
    mono = d.monomial_term()
    if mono is None:
        raise RepError("det not monomial: the map does not land in GL_k over C*")
    exp, coeff = mono
    f_inv = f.adjugate().map_entries(lambda p: p.divide_by_monomial(exp, coeff))
    shifted = f.map_entries(_shift_to_two_vars, nvars=2)
    plain_inv = f_inv.map_entries(_plain_to_two_vars, nvars=2)
    product = shifted * plain_inv

    limit_exists = True
    limit_is_identity = True
    k = f.size
    for i in range(k):
        for j in range(k):
            p = product.rows[i][j]
            for (ez, _), _c in p.terms.items():
                if ez < 0:
                    limit_exists = False
            constant = LaurentPoly(
                2, {(0, et): c for (ez, et), c in p.terms.items() if ez == 0}
            )
            target = (
                LaurentPoly.constant(2, 1) if i == j else LaurentPoly.zero(2)
            )
            if constant != target:
                limit_is_identity = False
    limit_is_identity = limit_is_identity and limit_exists

    degrees = [
        p.min_exponent(0) for row in f.rows for p in row if not p.is_zero
    ]
    min_deg = min(degrees) if degrees else 0
    extends = min_deg >= 0
    if extends:
        constant_matrix = tuple(
            tuple(f.rows[i][j].coefficient((0,)) for j in range(k)) for i in range(k)
        )
        try:
            _q_inverse(constant_matrix)
        except RepError:
            extends = False
    if limit_is_identity and not extends:
        raise RepError("internal: identity limit without a regular extension")
    return LimitExtensionVerdict(
        limit_exists=limit_exists,
        limit_is_identity=limit_is_identity,
        extends=extends,
        min_z_degree=min_deg,
    )
