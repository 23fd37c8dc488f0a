"""
Tests for graded homomorphisms, tensor units and corner deformations
"""
import pytest

from config.settings import HOMS_PATH
from controllers.file_parser import FileParser
from models.algebra import LeavittPathAlgebra
from models.errors import (
    CornerConditionFailed, GraphValidationError, NotDegreeZero, NotEssential, NotStarCompatible, UnverifiedHom,
)
from models.expression import parse_expression
from models.homs import (
    GradedHom, U_representative, ad_conjugate, ad_corner, corner_shift_pair, corner_units, difference_units,
    identity_hom, induced_k0, is_star_compatible, phi_z, source_elimination_inclusion, u_f, u_one, verify_hom,
)
from models.zerocomp import unit_inverse
from tests.conftest import ESSENTIAL_GRAPHS


def load_hom(name, source_algebra, target=None):
    text = FileParser.read(HOMS_PATH / name)
    return FileParser.parse_hom(text, source_algebra, target or source_algebra, name)


@pytest.fixture
def l_j2(j2):
    return LeavittPathAlgebra(j2)


@pytest.mark.parametrize("name", ["rose2_identity.hom", "rose2_swap.hom"])
def test_endomorphisms_verify(r2, name):
    h = load_hom(name, r2)
    report = verify_hom(h)
    assert report.ok
    assert h.verified and h.unital
    assert is_star_compatible(h)


def test_check_names_in_order(r2):
    report = verify_hom(identity_hom(r2))
    assert [c.name for c in report.checks] == ["V", "E1", "E2", "CK1", "CK2", "degree", "unital", "star-compatible"]


def test_broken_hom_fails_ck1(r2):
    h = load_hom("rose2_broken.hom", r2)
    report = verify_hom(h)
    assert not report.ok
    assert report.first_failure.name == "CK1"
    assert report.first_failure.detail == "e* e = v fails"
    with pytest.raises(UnverifiedHom):
        induced_k0(h)


def test_embedding_into_j2(r2, l_j2):
    h = load_hom("rose2_to_j2.hom", r2, l_j2)
    assert verify_hom(h).ok
    assert h.apply(r2.one()) == l_j2.one()
    k0 = induced_k0(h)
    assert k0.to_record() == {'lag': 0, 'M': [[1], [1]]}


def test_apply_extends_multiplicatively(r2):
    h = load_hom("rose2_swap.hom", r2)
    x = parse_expression("e f* + 2 e e f*", r2)
    assert h.apply(x) == parse_expression("f e* + 2 f f e*", r2)


def test_missing_and_unknown_generators(r2):
    images = {g: r2.generator(g) for g in r2.generator_names()}
    del images["f*"]
    with pytest.raises(GraphValidationError):
        GradedHom(r2, r2, images)
    images["f*"] = r2.ghost("f")
    images["g"] = r2.one()
    with pytest.raises(GraphValidationError):
        GradedHom(r2, r2, images)


def test_non_unital_inclusion(graph):
    algebra = LeavittPathAlgebra(graph("source"))
    h = source_elimination_inclusion(algebra, "s")
    report = verify_hom(h, require_unital=False)
    assert report.ok
    assert report.check("unital").status == "fail"
    assert not report.check("unital").required
    assert not verify_hom(h, require_unital=True).ok


def test_tensor_units(r2):
    u1 = u_one(r2)
    assert u1.degree == 0
    assert u1.unit * u1.inverse == u1.unit.parent.one()
    assert u_f(identity_hom(r2)).unit == u1.unit


def test_tensor_unit_of_embedding(r2, l_j2):
    pair = u_f(load_hom("rose2_to_j2.hom", r2, l_j2))
    assert pair.inverse * pair.unit == pair.unit.parent.one()


def test_tensor_units_need_essential_graphs(graph):
    with pytest.raises(NotEssential):
        u_one(LeavittPathAlgebra(graph("source")))


def test_tensor_unit_needs_star_compatibility(r2):
    h = load_hom("rose2_identity.hom", r2)
    images = dict(h.images)
    images["e"], images["e*"] = r2.edge("e").scale(2), r2.ghost("e").scale(r2.ring.from_fraction(1, 2))
    scaled = GradedHom(r2, r2, images, "scaled")
    assert verify_hom(scaled).ok
    with pytest.raises(NotStarCompatible):
        u_f(scaled)


def _scale_family(r2):
    h = load_hom("rose2_identity.hom", r2)
    verify_hom(h)
    units, inverses = FileParser.parse_units(FileParser.read(HOMS_PATH / "rose2_scale.units"), h)
    return h, corner_units(h, units, inverses)


def test_corner_units_fill_in_defaults(r2):
    h, family = _scale_family(r2)
    assert family.units["f"] == parse_expression("f f*", r2)
    assert family.inverses["e"] == parse_expression("1/2 e e*", r2)


def test_phi_z_and_difference_units(r2):
    h, family = _scale_family(r2)
    deformed = phi_z(h, family)
    assert deformed.images["e"] == r2.edge("e").scale(2)
    assert deformed.images["e*"] == parse_expression("1/2 e*", r2)
    assert induced_k0(deformed).to_record() == induced_k0(h).to_record()
    recovered = difference_units(h, deformed)
    assert recovered.units["e"] == family.units["e"]


def test_corner_condition_is_enforced(r2):
    h = identity_hom(r2)
    verify_hom(h)
    with pytest.raises(CornerConditionFailed):
        corner_units(h, {"e": r2.one()})
    with pytest.raises(CornerConditionFailed):
        corner_units(h, {"e": parse_expression("e e e* e*", r2)})


def test_u_representative_multiplies_edge_classes(r2):
    h, family = _scale_family(r2)
    classes = U_representative(h, family)
    expected = classes["v"].module.multiplicative([r2.ring.from_int(2)], 1, r2.ring)
    assert classes["v"] == expected


def test_corner_shift_pair_agrees(r2, graph):
    h = identity_hom(r2)
    verify_hom(h)
    left, right = corner_shift_pair(h, "e", "e", parse_expression("2 e e*", r2))
    assert left == right
    fib = identity_hom(LeavittPathAlgebra(graph("fibonacci")))
    verify_hom(fib)
    with pytest.raises(GraphValidationError):
        corner_shift_pair(fib, "a", "b", fib.target.edge("a") * fib.target.ghost("a"))


def test_ad_conjugate(r2):
    h = identity_hom(r2)
    verify_hom(h)
    u = parse_expression("2 e e* + f f*", r2)
    conjugated = ad_conjugate(h, u)
    assert conjugated.images["e"] == parse_expression("e e e* + 2 e f f*", r2)
    assert verify_hom(conjugated).ok


@pytest.mark.parametrize("name", ESSENTIAL_GRAPHS)
def test_tensor_unit_of_every_essential_graph(graph, name):
    u1 = u_one(LeavittPathAlgebra(graph(name)))
    one = u1.unit.parent.one()
    assert u1.degree == 0
    assert u1.unit * u1.inverse == one
    assert u1.inverse * u1.unit == one
    assert u1.inverse == u1.unit.star()


def test_ad_corner_by_an_isometry(r2):
    h = identity_hom(r2)
    verify_hom(h)
    corner = ad_corner(h, r2.edge("e"), r2.ghost("e"))
    assert corner.images["v"] == parse_expression("e e*", r2)
    assert corner.images["f"] == parse_expression("e f e*", r2)
    assert corner.images["f*"] == parse_expression("e f* e*", r2)
    assert verify_hom(corner, require_unital=False).ok
    assert not corner.unital


def test_ad_corner_with_inverse_pair_is_conjugation(r2):
    h = identity_hom(r2)
    verify_hom(h)
    u = parse_expression("2 e e* + f f*", r2)
    corner = ad_corner(h, u, unit_inverse(u))
    assert corner.same_images(ad_conjugate(h, u))
    assert corner.unital


def test_ad_corner_rejections(r2):
    h = identity_hom(r2)
    verify_hom(h)
    with pytest.raises(CornerConditionFailed):
        ad_corner(h, r2.ghost("e"), r2.edge("e"))
    with pytest.raises(CornerConditionFailed):
        ad_corner(h, r2.edge("e"), r2.ghost("f"))
    with pytest.raises(NotDegreeZero):
        ad_corner(h, r2.edge("e"), r2.edge("e"))
    with pytest.raises(NotDegreeZero):
        ad_corner(h, parse_expression("e + v", r2), r2.ghost("e"))


RELATION_FAMILIES = ("V", "E1", "E2", "CK1", "CK2")
CANDIDATE_IMAGES = {
    "v": ["v", "e e*", "f f*"],
    "e": ["e", "f", "2 e", "e e e*", "e f*"],
    "f": ["f", "e", "f f", "e f f*"],
    "e*": ["e*", "f*", "1/2 e*", "e e* e*"],
    "f*": ["f*", "e*", "f* f*", "f f* e*"],
}


def _failing_relation_families(graph, img, zero):
    """Evaluate every defining relation as a difference that must vanish"""
    differences = {name: [] for name in RELATION_FAMILIES}
    for v in graph.vertices:
        for w in graph.vertices:
            differences["V"].append(img[v] * img[w] - (img[v] if v == w else zero))
    for e in graph.edges:
        x, x_star = img[e.name], img[e.name + "*"]
        differences["E1"] += [img[e.source] * x - x, x * img[e.range] - x]
        differences["E2"] += [img[e.range] * x_star - x_star, x_star * img[e.source] - x_star]
        for f in graph.edges:
            differences["CK1"].append(x_star * img[f.name] - (img[e.range] if e == f else zero))
    for v in graph.vertices:
        out = graph.out_edges(v)
        if out:
            ranges = zero
            for e in out:
                ranges = ranges + img[e.name] * img[e.name + "*"]
            differences["CK2"].append(img[v] - ranges)
    return {name for name, values in differences.items() if not all(d.is_zero() for d in values)}


def test_verify_hom_agrees_with_relation_evaluation(r2, rng):
    generators = list(CANDIDATE_IMAGES)
    choices = [{g: 0 for g in generators}, {"v": 0, "e": 1, "f": 1, "e*": 1, "f*": 1}]
    while len(choices) < 50:
        choices.append({g: rng.randrange(len(CANDIDATE_IMAGES[g])) for g in generators})
    accepted = 0
    for choice in choices:
        images = {g: parse_expression(CANDIDATE_IMAGES[g][i], r2) for g, i in choice.items()}
        report = verify_hom(GradedHom(r2, r2, images, "candidate"), require_unital=False)
        failing = {c.name for c in report.checks if c.name in RELATION_FAMILIES and c.status == "fail"}
        assert failing == _failing_relation_families(r2.graph, images, r2.zero()), choice
        accepted += not failing
    assert 2 <= accepted < len(choices)
