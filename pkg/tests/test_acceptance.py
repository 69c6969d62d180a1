"""Acceptance suite: every criterion exact, desk-scale, deterministic.

Each test prints one ``[acceptance] <name>: PASS/FAIL`` line.  Boxes that
would exceed 5**6 ray-value tuples are sampled (10**4 draws, fixed seeds);
smaller boxes are enumerated exhaustively.
"""

import itertools
import random
from contextlib import contextmanager
from fractions import Fraction


from equitoric import (
    BundleData,
    Fan,
    RayValues,
    check_extension,
    from_ray_values,
    is_complete,
    is_smooth,
    joint_split,
    monomial_limit_extension,
    split,
    to_ray_values,
    transition_cocycle,
    verify_cocycle,
    verify_homomorphism,
)
from equitoric.laurent import LaurentMatrix, LaurentPoly
from equitoric.rep import _q_inverse, q_matrix
from conftest import (
    make_hirzebruch,
    make_p1,
    make_p1xp1,
    make_p2,
    random_unimodular,
)

EXHAUSTIVE_LIMIT = 5**6
SAMPLES = 10**4
BOUND = 2


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[acceptance] {name}: FAIL")
        raise
    print(f"[acceptance] {name}: PASS")


def fans_under_test():
    return [
        ("P1", make_p1()),
        ("P2", make_p2()),
        ("P1xP1", make_p1xp1()),
        ("F2", make_hirzebruch(2)),
    ]


def ray_value_tables(fan_name, fan, r):
    """Deterministic stream of ray-value tables with entries in [-2, 2]."""
    d = len(fan.rays)
    size = (2 * BOUND + 1) ** (d * r)
    if size <= EXHAUSTIVE_LIMIT:
        for combo in itertools.product(range(-BOUND, BOUND + 1), repeat=d * r):
            yield tuple(combo[i * r : (i + 1) * r] for i in range(d))
    else:
        rng = random.Random(f"{fan_name}:r={r}")
        for _ in range(SAMPLES):
            yield tuple(
                tuple(rng.randint(-BOUND, BOUND) for _ in range(r)) for _ in range(d)
            )


# ---------------------------------------------------------------------------
# 1. Z^(d r) parametrization
# ---------------------------------------------------------------------------


def test_parametrization_bijection():
    with criterion("Z^(d*r) parametrization"):
        for fan_name, fan in fans_under_test():
            for r in (1, 2, 3):
                count = 0
                for values in ray_value_tables(fan_name, fan, r):
                    rv = RayValues(fan=fan, r=r, values=values)
                    data = from_ray_values(rv)
                    assert check_extension(data).ok
                    recovered = to_ray_values(data)
                    assert recovered.values == values
                    assert from_ray_values(recovered) == data
                    count += 1
                d = len(fan.rays)
                size = (2 * BOUND + 1) ** (d * r)
                assert count == (size if size <= EXHAUSTIVE_LIMIT else SAMPLES)


# ---------------------------------------------------------------------------
# 2. extension-condition oracle
# ---------------------------------------------------------------------------


def _support_function_oracle(fan, chars):
    # Independent path: per unordered pair of maximal cones, the two
    # characters must take equal values on every shared ray generator.
    m = len(fan.max_cones)
    for i in range(m):
        for j in range(i + 1, m):
            shared = set(fan.max_cones[i]) & set(fan.max_cones[j])
            for ray_idx in shared:
                ray = fan.rays[ray_idx]
                left = sum(a * b for a, b in zip(chars[i], ray))
                right = sum(a * b for a, b in zip(chars[j], ray))
                if left != right:
                    return False
    return True


def test_extension_oracle_agreement():
    with criterion("extension-condition oracle agreement"):
        for fan in (make_p2(), make_hirzebruch(2)):
            m = len(fan.max_cones)
            single = list(itertools.product((-1, 0, 1), repeat=fan.dim))
            for combo in itertools.product(single, repeat=m):
                data = BundleData(fan=fan, blocks=1, chars=tuple((c,) for c in combo))
                assert check_extension(data).ok == _support_function_oracle(fan, combo)


# ---------------------------------------------------------------------------
# 3. splitting round trip
# ---------------------------------------------------------------------------


def _conjugate(g_rows, exponents):
    g = q_matrix(g_rows)
    g_inv = _q_inverse(g)
    nvars = len(exponents[0])
    return (
        LaurentMatrix.constant(nvars, g)
        * LaurentMatrix.diagonal_monomials(exponents)
        * LaurentMatrix.constant(nvars, g_inv)
    )


def _assert_diagonalizes(rho, conjugator, inverse_conjugator, diagonal):
    conj = (
        LaurentMatrix.constant(rho.nvars, inverse_conjugator)
        * rho
        * LaurentMatrix.constant(rho.nvars, conjugator)
    )
    expected = LaurentMatrix.diagonal_monomials(list(diagonal))
    assert conj == expected


def test_split_round_trip():
    with criterion("splitting round trip"):
        rng = random.Random(2024)
        for case in range(100):
            k = rng.randint(1, 4)
            n = rng.randint(1, 3)
            g0 = random_unimodular(rng, k)
            exps = [
                tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(k)
            ]
            rho = _conjugate(g0, exps)
            dec = split(rho)
            assert sorted(dec.diagonal) == sorted(exps)
            _assert_diagonalizes(rho, dec.conjugator, dec.inverse_conjugator, dec.diagonal)

            exps2 = [
                tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(k)
            ]
            family = [rho, _conjugate(g0, exps2)]
            js = joint_split(family)
            assert sorted(js.diagonals[0]) == sorted(exps)
            assert sorted(js.diagonals[1]) == sorted(exps2)
            for rho_i, diag_i in zip(family, js.diagonals):
                _assert_diagonalizes(rho_i, js.conjugator, js.inverse_conjugator, diag_i)


# ---------------------------------------------------------------------------
# 4. homomorphism characterization
# ---------------------------------------------------------------------------


_POINT_POOL = [
    Fraction(1),
    Fraction(2),
    Fraction(3),
    Fraction(-1),
    Fraction(-2),
    Fraction(1, 2),
    Fraction(-1, 3),
    Fraction(3, 2),
    Fraction(5),
    Fraction(-2, 5),
]


def _evaluation_oracle(rho, rng, points=20):
    k = rho.size
    identity = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    if rho.evaluate(tuple(Fraction(1) for _ in range(rho.nvars))) != identity:
        return False
    for _ in range(points):
        t = tuple(rng.choice(_POINT_POOL) for _ in range(rho.nvars))
        s = tuple(rng.choice(_POINT_POOL) for _ in range(rho.nvars))
        ts = tuple(a * b for a, b in zip(t, s))
        rt, rs = rho.evaluate(t), rho.evaluate(s)
        prod = [
            [sum(rt[i][l] * rs[l][j] for l in range(k)) for j in range(k)]
            for i in range(k)
        ]
        if rho.evaluate(ts) != prod:
            return False
    return True


def _perturb(rho, rng):
    k = rho.size
    i, j = rng.randrange(k), rng.randrange(k)
    exps = {e for row in rho.rows for p in row for e in p.terms}
    exps.add(tuple(rng.randint(-2, 2) for _ in range(rho.nvars)))
    e = rng.choice(sorted(exps))
    delta = LaurentPoly(rho.nvars, {e: Fraction(rng.choice([1, -1, 2]))})
    rows = [list(row) for row in rho.rows]
    rows[i][j] = rows[i][j] + delta
    return LaurentMatrix(rho.nvars, rows)


def test_homomorphism_characterization():
    with criterion("homomorphism characterization vs evaluation oracle"):
        rng = random.Random(4096)
        for case in range(100):
            k = rng.randint(1, 4)
            n = rng.randint(1, 3)
            rho = _conjugate(
                random_unimodular(rng, k),
                [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(k)],
            )
            verdict = verify_homomorphism(rho).ok
            assert verdict is True
            assert _evaluation_oracle(rho, rng) == verdict

            bad = _perturb(rho, rng)
            bad_verdict = verify_homomorphism(bad).ok
            assert bad_verdict is False
            assert _evaluation_oracle(bad, rng) == bad_verdict


# ---------------------------------------------------------------------------
# 5. triangular rigidity
# ---------------------------------------------------------------------------


def test_triangular_rigidity_suite():
    from equitoric import triangular_rigidity_check

    with criterion("triangular rigidity"):
        rng = random.Random(77)
        passing = 0
        for case in range(200):
            k = rng.randint(1, 4)
            zero = LaurentPoly.zero(1)
            if rng.random() < 0.8:
                diag = LaurentPoly.monomial((rng.randint(-2, 2),))
            else:
                diag = LaurentPoly(
                    1,
                    {
                        (rng.randint(-2, 2),): Fraction(rng.choice([1, 2, -1])),
                        (rng.randint(-2, 2),): Fraction(1),
                    },
                )
            rows = []
            off_diag_nonzero = False
            for i in range(k):
                row = []
                for j in range(k):
                    if j > i:
                        row.append(zero)
                    elif j == i:
                        row.append(diag)
                    elif rng.random() < 0.5:
                        e = rng.randint(-2, 2)
                        row.append(LaurentPoly(1, {(e,): Fraction(rng.choice([1, -1, 2]))}))
                        off_diag_nonzero = True
                    else:
                        row.append(zero)
                rows.append(row)
            rho = LaurentMatrix(1, rows)
            verdict = verify_homomorphism(rho).ok
            if verdict:
                passing += 1
                assert not off_diag_nonzero
            assert triangular_rigidity_check(rho).ok == verdict
        assert passing > 0  # the suite exercises genuine homomorphisms too


# ---------------------------------------------------------------------------
# 6. cocycle suite
# ---------------------------------------------------------------------------


def test_cocycle_suite():
    with criterion("cocycle suite"):
        for fan_name, fan in fans_under_test():
            for r in (1, 2, 3):
                for values in ray_value_tables(fan_name, fan, r):
                    data = from_ray_values(RayValues(fan=fan, r=r, values=values))
                    assert verify_cocycle(transition_cocycle(data)).ok
            # one injected corruption per fan must be detected
            base = from_ray_values(
                RayValues(
                    fan=fan,
                    r=1,
                    values=tuple((i % 3 - 1,) for i in range(len(fan.rays))),
                )
            )
            coc = transition_cocycle(base)
            pair = sorted(coc.entries)[0]
            bump = (1,) + (0,) * (fan.dim - 1)
            coc.entries[pair] = (
                tuple(x + y for x, y in zip(coc.entries[pair][0], bump)),
            )
            assert not verify_cocycle(coc).ok


# ---------------------------------------------------------------------------
# 7. one-variable limit-extension shadow
# ---------------------------------------------------------------------------


def _random_unipotent_poly(rng, k):
    zero = LaurentPoly.zero(1)
    one = LaurentPoly.constant(1, 1)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if j > i:
                row.append(zero)
            elif j == i:
                row.append(one)
            else:
                coeffs = {
                    (e,): Fraction(rng.randint(-2, 2)) for e in range(rng.randint(1, 3))
                }
                row.append(LaurentPoly(1, coeffs))
        rows.append(row)
    return LaurentMatrix(1, rows)


def test_limit_extension_shadow():
    with criterion("limit-extension shadow"):
        rng = random.Random(31337)
        identity_cases = 0
        for case in range(50):
            k = rng.randint(1, 3)
            u = _random_unipotent_poly(rng, k)
            powers = [rng.choice([0, 0, 0, 1, 2]) for _ in range(k)]
            scale = [Fraction(rng.choice([1, 2, -1, 3])) for _ in range(k)]
            p = LaurentMatrix(
                1,
                [
                    [
                        LaurentPoly(1, {(powers[i],): scale[i]})
                        if i == j
                        else LaurentPoly.zero(1)
                        for j in range(k)
                    ]
                    for i in range(k)
                ],
            )
            verdict = monomial_limit_extension(u * p)
            if verdict.limit_is_identity:
                assert verdict.extends
                identity_cases += 1
            assert verdict.limit_is_identity == (not any(powers))
        assert identity_cases > 0

        for case in range(20):
            k = rng.randint(1, 3)
            powers = [rng.randint(-3, 3) for _ in range(k)]
            powers[rng.randrange(k)] = rng.randint(-3, -1)
            f = LaurentMatrix.diagonal_monomials([(e,) for e in powers])
            verdict = monomial_limit_extension(f)
            assert not verdict.limit_is_identity
            assert not verdict.extends


# ---------------------------------------------------------------------------
# 8. fan gates
# ---------------------------------------------------------------------------


def test_fan_gates():
    with criterion("fan gates"):
        good = [
            make_p1(),
            make_p2(),
            make_p1xp1(),
            make_hirzebruch(0),
            make_hirzebruch(1),
            make_hirzebruch(2),
            make_hirzebruch(3),
        ]
        for fan in good:
            assert is_smooth(fan).ok
            assert is_complete(fan).ok

        singular = Fan(
            dim=2, rays=((1, 0), (1, 2)), max_cones=((0, 1),), check=False
        )
        rep = is_smooth(singular)
        assert not rep.ok
        assert rep.findings == [
            {"kind": "singular_cone", "cone": 0, "invariant_factor": 2}
        ]

        quadrant = Fan(dim=2, rays=((1, 0), (0, 1)), max_cones=((0, 1),))
        rep = is_complete(quadrant)
        assert not rep.ok
        assert rep.findings[0]["kind"] == "unmatched_facet"
        assert rep.findings[0]["facet_rays"] in ([0], [1])
