"""
Tests for the degree-zero component: block form, K0/K1 classes, corner skew and fullness
"""
import pytest

from config.settings import HOMS_PATH
from controllers.file_parser import FileParser
from models.algebra import LeavittPathAlgebra, Monomial
from models.bfmod import sigma_act
from models.coefficients import CoefficientRing
from models.errors import (
    NoIncomingEdge, NotAUnit, NotDegreeZero, NotIdempotent, NotPrimitive, PaddingNeedsRegular, StageTooSmall,
    UnsupportedCoefficientField,
)
from models.expression import parse_expression
from models.graph import paths_into
from models.homs import ad_corner, identity_hom, verify_hom
from models.zerocomp import (
    TrivialK1, alpha, bratteli_embed, corner_skew, corner_skew_transport, filtration_stage, from_block_form,
    fullness_certificate, k0_class, k1_class, require_balanced, to_block_form, unit_inverse, verify_fullness,
)
from tests.conftest import PRIMITIVE_GRAPHS


def test_balanced_elements(r2):
    require_balanced(parse_expression("e f* + v", r2))
    with pytest.raises(NotDegreeZero):
        require_balanced(r2.edge("e"))
    assert filtration_stage(parse_expression("e e f* e* + v", r2)) == 2


@pytest.mark.parametrize("name", PRIMITIVE_GRAPHS)
def test_block_form_is_a_multiplicative_bijection(graph, name, rng, random_elements):
    algebra = LeavittPathAlgebra(graph(name))
    for _ in range(30):
        x = random_elements(algebra, rng, balanced=True)
        y = random_elements(algebra, rng, balanced=True)
        n = max(filtration_stage(x), filtration_stage(y))
        bx, by = to_block_form(x, n), to_block_form(y, n)
        assert from_block_form(bx) == x
        assert to_block_form(x * y, n) == bx * by


def test_block_sizes_count_paths(graph):
    algebra = LeavittPathAlgebra(graph("fibonacci"))
    b = to_block_form(algebra.one(), 3)
    assert b.sizes() == {v: len(paths_into(algebra.graph, v, 3)) for v in algebra.graph.vertices}
    assert b.sizes() == {"u": 5, "w": 3}


def test_bratteli_embedding_matches_padding(r2, rng, random_elements):
    for _ in range(20):
        x = random_elements(r2, rng, balanced=True)
        n = filtration_stage(x)
        assert bratteli_embed(to_block_form(x, n)) == to_block_form(x, n + 1)


def test_stage_errors(r2, graph):
    with pytest.raises(StageTooSmall):
        to_block_form(parse_expression("e f*", r2), 0)
    toeplitz = LeavittPathAlgebra(graph("toeplitz"))
    with pytest.raises(PaddingNeedsRegular):
        to_block_form(toeplitz.vertex("w"), 1)


@pytest.mark.parametrize("name", PRIMITIVE_GRAPHS)
def test_k0_of_a_vertex_is_its_basis_vector(graph, name):
    algebra = LeavittPathAlgebra(graph(name))
    for v in algebra.graph.vertices:
        cls = k0_class(algebra.vertex(v))
        assert cls.stage == 0
        assert cls == cls.module.basis(v)


def test_k0_of_unit_and_range_projections(r2):
    one = k0_class(r2.one())
    assert one == one.module.order_unit()
    # [ee*] sits at stage 1; in the limit 2[ee*] = [1]
    half = k0_class(r2.edge("e") * r2.ghost("e"))
    assert half.stage == 1
    assert half + half == one


def test_k0_rejects_non_idempotents(r2):
    with pytest.raises(NotIdempotent):
        k0_class(r2.integer(2))


@pytest.mark.parametrize("name", PRIMITIVE_GRAPHS)
def test_corner_skew_shifts_k0_by_sigma(graph, name):
    algebra = LeavittPathAlgebra(graph(name))
    cs = corner_skew(algebra)
    assert cs.t_minus * cs.t_plus == algebra.one()
    for v in algebra.graph.vertices:
        p = algebra.vertex(v)
        assert k0_class(alpha(cs, p)) == sigma_act(k0_class(p))


def test_corner_skew_needs_incoming_edges(graph):
    algebra = LeavittPathAlgebra(graph("source"))
    with pytest.raises(NoIncomingEdge):
        corner_skew(algebra)


def test_unit_inverse_blockwise(r2):
    u = parse_expression("2 e e* + f f*", r2)
    inverse = unit_inverse(u)
    assert inverse == parse_expression("1/2 e e* + f f*", r2)
    with pytest.raises(NotAUnit):
        unit_inverse(parse_expression("e e*", r2))


def test_k1_classes_are_block_determinants(r2):
    two = k1_class(r2.integer(2))
    assert two.multiplicative
    assert two.vector == (r2.ring.from_int(2),)
    assert k1_class(r2.integer(2) * r2.integer(2)) == two * two
    skew = k1_class(parse_expression("2 e e* + f f*", r2))
    assert skew.stage == 1
    assert skew != two
    assert k1_class(r2.one()) == two.module.multiplicative_one(r2.ring)


def test_k1_over_f2_is_trivial(rose2):
    algebra = LeavittPathAlgebra(rose2, CoefficientRing(2))
    cls = k1_class(algebra.one())
    assert isinstance(cls, TrivialK1)
    assert cls.to_record()['trivial'] is True


def test_k1_rejects_polynomial_coefficients(r2):
    poly = r2.polynomial_extension
    with pytest.raises(UnsupportedCoefficientField):
        k1_class(poly.one())


def test_k1_checks_supplied_inverse(r2):
    u = parse_expression("2 e e* + f f*", r2)
    with pytest.raises(NotAUnit):
        k1_class(u, inverse=r2.one())


@pytest.mark.parametrize("name", PRIMITIVE_GRAPHS)
def test_fullness_certificates_verify(graph, name):
    algebra = LeavittPathAlgebra(graph(name))
    for e in algebra.graph.edges:
        cert = fullness_certificate(algebra, e.name)
        assert verify_fullness(cert)
        assert cert.projection() == algebra.edge(e.name) * algebra.ghost(e.name)


def test_fullness_needs_primitivity(graph):
    algebra = LeavittPathAlgebra(graph("cycle2"))
    with pytest.raises(NotPrimitive):
        fullness_certificate(algebra, algebra.graph.edges[0].name)


def _random_unit(algebra, rng, factors=3):
    """Product of elementary units 1 + c a b* (a != b of equal length) and diagonal scalings"""
    g, ring = algebra.graph, algebra.ring
    u = algebra.one()
    for _ in range(factors):
        w = rng.choice(g.vertices)
        paths = paths_into(g, w, rng.randint(0, 2))
        a = rng.choice(paths)
        if len(paths) > 1 and rng.random() < 0.5:
            b = rng.choice([p for p in paths if p != a])
            factor = algebra.one() + algebra.monomial(Monomial(a, b)).scale(rng.choice([-2, -1, 1, 3]))
        else:
            scale = ring.from_fraction(rng.choice([-2, -1, 2, 3]), rng.choice([1, 2, 3]))
            factor = algebra.one() + algebra.monomial(Monomial(a, a)).scale(scale - ring.one)
        u = u * factor
    return u


def _random_idempotent(algebra, rng):
    g = algebra.graph
    paths = paths_into(g, rng.choice(g.vertices), rng.randint(0, 2))
    q = algebra.zero()
    for a in rng.sample(paths, rng.randint(1, len(paths))):
        q = q + algebra.monomial(Monomial(a, a))
    u = _random_unit(algebra, rng, factors=2)
    return u * q * unit_inverse(u)


@pytest.mark.parametrize("name", PRIMITIVE_GRAPHS)
def test_corner_skew_shifts_k0_of_random_idempotents(graph, name, rng):
    algebra = LeavittPathAlgebra(graph(name))
    cs = corner_skew(algebra)
    for _ in range(8):
        p = _random_idempotent(algebra, rng)
        assert p * p == p
        assert k0_class(alpha(cs, p)) == sigma_act(k0_class(p))


@pytest.mark.parametrize("name", PRIMITIVE_GRAPHS)
def test_corner_skew_shifts_k1_by_sigma(graph, name, rng):
    algebra = LeavittPathAlgebra(graph(name))
    cs = corner_skew(algebra)
    one = algebra.one()
    for _ in range(10):
        u = _random_unit(algebra, rng)
        shifted = one - cs.p + alpha(cs, u)
        assert k1_class(shifted) == sigma_act(k1_class(u))


@pytest.mark.parametrize("name", PRIMITIVE_GRAPHS)
def test_normal_form_basis_of_each_stage(graph, name):
    # balanced normal-form monomials of length <= n span the stage-n matrix algebra
    algebra = LeavittPathAlgebra(graph(name))
    g = algebra.graph
    count = 0
    for n in range(5):
        count += sum(1 for v in g.vertices
                     for a in paths_into(g, v, n) for b in paths_into(g, v, n)
                     if not algebra.violates_basis(Monomial(a, b)))
        assert count == sum(len(paths_into(g, v, n)) ** 2 for v in g.vertices)


@pytest.mark.parametrize("name", PRIMITIVE_GRAPHS)
def test_block_products_match_dense_matrices(graph, name, rng, random_elements):
    algebra = LeavittPathAlgebra(graph(name))
    for _ in range(20):
        x = random_elements(algebra, rng, balanced=True)
        y = random_elements(algebra, rng, balanced=True)
        n = max(filtration_stage(x), filtration_stage(y))
        bx, by, bxy = to_block_form(x, n), to_block_form(y, n), to_block_form(x * y, n)
        for v in algebra.graph.vertices:
            assert bxy.matrix(v).to_Matrix() == bx.matrix(v).to_Matrix() * by.matrix(v).to_Matrix()


def test_corner_skew_transport_along_unital_embedding(r2, graph):
    j2 = LeavittPathAlgebra(graph("j2"))
    h = FileParser.parse_hom(FileParser.read(HOMS_PATH / "rose2_to_j2.hom"), r2, j2, "rose2_to_j2.hom")
    assert verify_hom(h).ok
    t_plus, t_minus, isometry = corner_skew_transport(h, corner_skew(r2))
    assert t_plus == parse_expression("a + b", j2)
    assert t_minus == t_plus.star()
    assert isometry


def test_corner_skew_transport_along_a_corner_map(r2):
    h = identity_hom(r2)
    verify_hom(h)
    corner = ad_corner(h, r2.edge("e"), r2.ghost("e"))
    t_plus, t_minus, isometry = corner_skew_transport(corner, corner_skew(r2))
    assert t_plus == parse_expression("e e e*", r2)
    assert t_minus * t_plus == parse_expression("e e*", r2)
    assert not isometry
