import random

import pytest

from pathcoalg.coalgebra import coradical_filtration, path_element, skew_primitives
from pathcoalg.errors import (
    ConstraintViolation,
    ForbiddenPair,
    LambdaOrderViolation,
    ParamMismatch,
    ParityViolation,
    ParseError,
    WindowTooSmall,
)
from pathcoalg.hopf import (
    BmnElement,
    element,
    TensorElement,
    antipode,
    basis_element,
    comultiply,
    contains_path_combination,
    counit,
    gen_a,
    gen_b,
    gen_x,
    gen_y,
    group_canonical,
    group_element,
    multiply,
    parse_bmn_element,
    translate,
    truncate_to_subcoalgebra,
    unit,
    validate_params,
    verify_hopf_axioms,
)
from pathcoalg.quiver import Path
from pathcoalg.scalar import ONE, cyc


def params_free(lam="1", s="1", t="1", k="0"):
    return validate_params(0, 0, cyc(lam), cyc(s), cyc(t), cyc(k))


class TestValidateParams:
    def test_parity(self):
        with pytest.raises(ParityViolation):
            validate_params(2, 1, 1, 0, 0, 0)

    def test_lambda_order(self):
        with pytest.raises(LambdaOrderViolation):
            validate_params(4, 2, cyc("z3^1"), 0, 0, 0)
        # gcd(4, 2) = 2 so lambda = -1 works
        validate_params(4, 2, -1, 1, 1, 0)

    def test_forbidden_pair(self):
        with pytest.raises(ForbiddenPair):
            validate_params(1, 1, 1, 0, 0, 0)
        with pytest.raises(ForbiddenPair):
            validate_params(-1, -1, 1, 0, 0, 0)

    def test_constraint_cases(self):
        validate_params(0, 0, -1, 1, 1, 0)
        with pytest.raises(ConstraintViolation):
            validate_params(0, 0, -1, 1, 1, 1)
        with pytest.raises(ConstraintViolation):
            validate_params(0, 0, cyc("z4^1"), 1, 0, 0)
        validate_params(0, 0, cyc("z4^1"), 0, 0, 0)

    def test_lambda_zero(self):
        with pytest.raises(LambdaOrderViolation):
            validate_params(0, 0, 0, 0, 0, 0)

    def test_sign_normalization(self):
        p = validate_params(-3, -1, 1, 0, 0, 0)
        assert (p.m, p.n) == (3, 1)
        p = validate_params(0, -2, 1, 0, 0, 0)
        assert (p.m, p.n) == (0, 2)
        p = validate_params(2, -2, 1, 0, 0, 0)
        assert (p.m, p.n) == (2, -2)

    def test_json_round_trip(self):
        p = validate_params(3, 1, 1, cyc("1/2"), 0, cyc("z2^1"))
        q = type(p).from_json(p.to_json())
        assert p == q


class TestGroupCanonical:
    def test_examples(self):
        p31 = validate_params(3, 1, 1, 0, 0, 0)
        assert group_canonical(p31, 4, 0) == (1, 1)
        pfree = params_free()
        assert group_canonical(pfree, -2, 5) == (-2, 5)
        p22 = validate_params(2, 2, 1, 1, 1, 0)
        assert group_canonical(p22, 3, 0) == (1, 2)

    def test_idempotent(self):
        p = validate_params(4, 2, -1, 1, 1, 0)
        for i in range(-5, 6):
            for j in range(-5, 6):
                c = group_canonical(p, i, j)
                assert group_canonical(p, *c) == c


class TestMultiply:
    def test_x_times_a(self):
        p = params_free()
        assert gen_x(p) * gen_a(p) == -(gen_a(p) * gen_x(p))
        assert gen_x(p) * gen_a(p) == BmnElement(p, {((1, 0), 1, 0): -ONE})

    def test_x_squared(self):
        p = params_free(s="2")
        expect = unit(p) * 2 - group_element(p, 2, 0) * 2
        assert gen_x(p) * gen_x(p) == expect

    def test_y_squared(self):
        p = params_free(t="3")
        expect = unit(p) * 3 - group_element(p, 0, 2) * 3
        assert gen_y(p) * gen_y(p) == expect

    def test_y_times_x(self):
        p = params_free(k="5")
        lam_inv = p.lam_inv
        expect = (
            unit(p) * (lam_inv * p.k)
            - group_element(p, 1, 1) * (lam_inv * p.k)
            - basis_element(p, 0, 0, 1, 1) * lam_inv
        )
        assert gen_y(p) * gen_x(p) == expect

    def test_defining_relations(self):
        for p in (
            params_free(k="5"),
            params_free(lam="-1"),
            validate_params(3, 1, 1, 1, 1, 2),
            validate_params(2, -2, -1, 1, 1, 0),
            validate_params(0, 0, "z4^1", 0, 0, 0),
        ):
            a, b, x, y = gen_a(p), gen_b(p), gen_x(p), gen_y(p)
            one = unit(p)
            assert a * b == b * a
            assert group_element(p, p.m, 0) == group_element(p, 0, p.n)
            assert x * x == (one - group_element(p, 2, 0)) * p.s
            assert y * y == (one - group_element(p, 0, 2)) * p.t
            assert a * x + x * a == BmnElement(p, {})
            assert b * x * p.lam + x * b == BmnElement(p, {})
            assert b * y + y * b == BmnElement(p, {})
            assert a * y + y * a * p.lam == BmnElement(p, {})
            assert x * y + y * x * p.lam == (one - a * b) * p.k

    def test_conjugation_identities(self):
        for p in (params_free(lam="-1"), validate_params(0, 0, "z4^1", 0, 0, 0)):
            a_inv = group_element(p, -1, 0)
            b_inv = group_element(p, 0, -1)
            x = gen_x(p)
            assert a_inv * x * gen_a(p) == -x
            assert b_inv * x * gen_b(p) == -(x * p.lam)

    def test_associativity_random(self):
        rng = random.Random(7)
        for p in (params_free(k="5"), validate_params(3, 1, 1, 2, 3, 1)):
            keys = [
                ((i, j), pp, qq)
                for (i, j) in p.window(2)
                for pp in (0, 1)
                for qq in (0, 1)
            ]
            for _ in range(40):
                u, v, w = (
                    BmnElement(p, {keys[rng.randrange(len(keys))]: cyc(rng.randint(-3, 3))})
                    for _ in range(3)
                )
                assert (u * v) * w == u * (v * w)

    def test_param_mismatch(self):
        with pytest.raises(ParamMismatch):
            multiply(gen_x(params_free()), gen_x(params_free(k="5")))


class TestCoalgebraStructure:
    def test_grouplike(self):
        p = params_free()
        g = group_element(p, 2, -1)
        key = ((2, -1), 0, 0)
        assert comultiply(g) == TensorElement(p, {(key, key): ONE})
        assert counit(g) == ONE

    def test_delta_x(self):
        p = params_free()
        one_k = ((0, 0), 0, 0)
        x_k = ((0, 0), 1, 0)
        a_k = ((1, 0), 0, 0)
        assert comultiply(gen_x(p)) == TensorElement(
            p, {(one_k, x_k): ONE, (x_k, a_k): ONE}
        )

    def test_delta_xy(self):
        p = params_free(k="5")
        xy = basis_element(p, 0, 0, 1, 1)
        expect = TensorElement(
            p,
            {
                (((0, 0), 0, 0), ((0, 0), 1, 1)): ONE,
                (((0, 0), 0, 1), ((0, 1), 1, 0)): -p.lam,
                (((0, 0), 1, 0), ((1, 0), 0, 1)): ONE,
                (((0, 0), 1, 1), ((1, 1), 0, 0)): ONE,
            },
        )
        assert comultiply(xy) == expect

    def test_antipode_values(self):
        p = params_free()
        assert antipode(gen_a(p)) == group_element(p, -1, 0)
        assert antipode(unit(p)) == unit(p)
        assert antipode(gen_x(p)) == group_element(p, -1, 0) * gen_x(p)
        assert antipode(gen_y(p)) == group_element(p, 0, -1) * gen_y(p)


class TestHopfAxioms:
    def test_full_suite_row_5b(self):
        p = validate_params(0, 0, 1, 1, 1, 5)
        report = verify_hopf_axioms(p, 2)
        assert report["ok"]
        assert report["basis_checked"] == 4 * 25

    def test_other_shapes(self):
        for p in (
            validate_params(3, 1, 1, 1, 0, 1),
            validate_params(2, -2, -1, 1, 1, 0),
            validate_params(2, 0, "z2^1", 0, 1, 0),
            validate_params(0, 0, "z4^1", 0, 0, 0),
        ):
            assert verify_hopf_axioms(p, 1)["ok"]


class TestTruncation:
    def test_rank_free_case(self):
        p = params_free(k="5")
        tr = truncate_to_subcoalgebra(p, 1)
        assert tr.rank == 4 * 9
        assert len(tr.window) == 9
        # images really are independent inside the coalgebra
        assert tr.coalgebra.dim >= tr.rank

    def test_rank_folded(self):
        p = validate_params(3, 1, 1, 1, 1, 0)
        tr = truncate_to_subcoalgebra(p, 1)
        assert tr.rank == 4 * len(p.window(1))

    def test_loewy_length_three(self):
        p = params_free()
        tr = truncate_to_subcoalgebra(p, 1)
        _, loewy = coradical_filtration(tr.coalgebra)
        assert loewy == 3

    def test_image_examples(self):
        p = params_free(k="5")
        tr = truncate_to_subcoalgebra(p, 1)
        assert tr.image_of(0, 0, 0, 0) == path_element(tr.quiver, Path("a0b0"))
        xy = tr.image_of(0, 0, 1, 1)
        assert xy == path_element(
            tr.quiver, Path("a0b0", ("x@a0b0", "y@a1b0"))
        ) - path_element(tr.quiver, Path("a0b0", ("y@a0b0", "x@a0b1")), p.lam)
        assert tr.coalgebra.contains(xy)

    def test_skew_primitive_dimensions(self):
        p = params_free()
        tr = truncate_to_subcoalgebra(p, 1)
        c = tr.coalgebra
        assert len(skew_primitives(c, "a0b0", "a1b0")) == 2
        assert len(skew_primitives(c, "a0b0", "a0b1")) == 2
        assert len(skew_primitives(c, "a0b0", "a1b1")) == 1
        assert len(skew_primitives(c, "a1b0", "a0b0")) == 1
        assert len(skew_primitives(c, "a0b0", "a0b0")) == 0

    def test_window_too_small(self):
        p = params_free()
        tr = truncate_to_subcoalgebra(p, 1)
        with pytest.raises(WindowTooSmall):
            tr.image_of(5, 5, 0, 0)


class TestPathMembership:
    @pytest.mark.parametrize("lam_str,extras", [("1", ("1", "1", "0")), ("-1", ("1", "1", "0")), ("z4^1", ("0", "0", "0"))])
    def test_iff_rule(self, lam_str, extras):
        s, t, k = extras
        p = validate_params(0, 0, cyc(lam_str), cyc(s), cyc(t), cyc(k))
        tr = truncate_to_subcoalgebra(p, 1)
        assert contains_path_combination(p, 1, 0, 0, ONE, -p.lam, truncation=tr)
        assert not contains_path_combination(p, 1, 0, 0, ONE, cyc(0), truncation=tr)
        assert not contains_path_combination(p, 1, 0, 0, cyc(0), ONE, truncation=tr)
        rng = random.Random(3)
        for _ in range(20):
            c1 = cyc(rng.randint(-4, 4))
            c2 = cyc(rng.randint(-4, 4))
            expected = (c2 + p.lam * c1).is_zero()
            for (i, j) in [(0, 0), (-1, 0), (0, -1)]:
                got = contains_path_combination(p, 1, i, j, c1, c2, truncation=tr)
                assert got == expected

    def test_single_paths_rejected(self):
        p = params_free()
        tr = truncate_to_subcoalgebra(p, 1)
        q = tr.quiver
        probes = [
            Path("a0b0", ("x@a0b0", "x@a1b0")),  # (x|ax)
            Path("a0b0", ("y@a0b0", "y@a0b1")),  # (y|by)
            Path("a0b0", ("x@a0b0", "y@a1b0")),  # (x|ay)
            Path("a0b0", ("y@a0b0", "x@a0b1")),  # (y|bx)
        ]
        for probe in probes:
            assert not tr.coalgebra.contains(path_element(q, probe))

    def test_out_of_window(self):
        p = params_free()
        with pytest.raises(WindowTooSmall):
            contains_path_combination(p, 1, 5, 5, ONE, -ONE)


class TestTranslate:
    def test_examples(self):
        p = params_free()
        tr = truncate_to_subcoalgebra(p, 2)
        q = tr.quiver
        path = Path("a0b0", ("x@a0b0", "y@a1b0"))
        assert translate(p, q, (1, 0), path) == Path("a1b0", ("x@a1b0", "y@a2b0"))
        assert translate(p, q, (0, 0), path) == path
        assert translate(p, q, (0, 1), Path("a0b0", ("y@a0b0", "x@a0b1"))) == Path(
            "a0b1", ("y@a0b1", "x@a0b2")
        )

    def test_folding(self):
        p = validate_params(3, 1, 1, 0, 0, 0)
        tr = truncate_to_subcoalgebra(p, 2)
        q = tr.quiver
        # shifting a^2 by a wraps to (0, 1)
        out = translate(p, q, (1, 0), Path("a2b0"))
        assert out == Path("a0b1")

    def test_leaves_window(self):
        p = params_free()
        tr = truncate_to_subcoalgebra(p, 1)
        with pytest.raises(WindowTooSmall):
            translate(p, tr.quiver, (10, 0), Path("a0b0"))


class TestGrammar:
    def test_parse_basic(self):
        p = params_free(k="5")
        assert parse_bmn_element(p, "a^2*b^-1*x*y") == basis_element(p, 2, -1, 1, 1)
        assert parse_bmn_element(p, "1") == unit(p)
        assert parse_bmn_element(p, "a - b") == gen_a(p) - gen_b(p)
        assert parse_bmn_element(p, "2*x + y*x") == gen_x(p) * 2 + gen_y(p) * gen_x(p)
        assert parse_bmn_element(p, "x^2") == gen_x(p) * gen_x(p)

    def test_round_trip(self):
        p = params_free(k="5")
        elems = [
            unit(p),
            gen_y(p) * gen_x(p),
            basis_element(p, -2, 3, 1, 0) * cyc("1/2") - unit(p),
            antipode(basis_element(p, 1, 1, 1, 1)),
        ]
        for e in elems:
            assert parse_bmn_element(p, str(e)) == e

    def test_errors(self):
        p = params_free()
        for bad in ["", "x^-1", "q", "2**x", "a^"]:
            with pytest.raises(ParseError):
                parse_bmn_element(p, bad)


class TestFoldedSquares:
    def test_x_square_vanishes_when_a_square_folds(self):
        # a^2 = 1 in the (2,0) group, so x^2 = s(1 - a^2) = 0
        p = validate_params(2, 0, -1, 1, 0, 0)
        x = gen_x(p)
        assert x * x == element(p, {})
        assert verify_hopf_axioms(p, 1)["ok"]

    def test_y_square_vanishes_when_b_square_folds(self):
        p = validate_params(0, 2, -1, 0, 1, 0)
        y = gen_y(p)
        assert y * y == element(p, {})
        assert verify_hopf_axioms(p, 1)["ok"]
