"""Face-by-face nondegeneracy certificates."""

from fractions import Fraction

import pytest

from conftest import CORPUS, DEGENERATE, pipeline
from newton_spectra import (
    DegenerateError,
    ExactModeUnsupportedError,
    assumed_certificate,
    is_nondegenerate,
    newton_polytope,
    parse_laurent,
    proper_faces,
    require_nondegenerate,
)


def test_corpus_certificates():
    for expr, n, _ in CORPUS:
        data = pipeline(expr)
        cert = is_nondegenerate(data["f"], data["polytope"])
        assert cert.ok, expr
        assert cert.mode == ("exact" if n <= 2 else "probabilistic")
        if cert.mode == "exact":
            assert cert.failure_probability == 0
        else:
            assert 0 <= cert.failure_probability < Fraction(1, 1000)
        assert cert.degenerate_face is None
        assert cert.faces  # every proper face receives a report
        assert all(r.ok for r in cert.faces)


def test_proper_face_counts():
    # triangle: 3 vertices + 3 edges
    p = pipeline("u1 + u2 + u1^-1*u2^-1")["polytope"]
    faces = proper_faces(p)
    dims = sorted(len(ids) for ids in faces)
    assert dims == [1, 1, 1, 2, 2, 2]
    # octahedron: 6 vertices + 12 edges + 8 facets
    p = pipeline("u1 + u2 + u3 + u1^-1 + u2^-1 + u3^-1")["polytope"]
    assert len(proper_faces(p)) == 26


def test_degenerate_square_term_detected_exactly():
    # (u1 - u2)^2 vanishes with its log-partials at u1 = u2 on the edge
    # carrying that binomial square
    f, _ = parse_laurent(DEGENERATE)
    p = newton_polytope(f)
    cert = is_nondegenerate(f, p)
    assert cert.mode == "exact" and not cert.ok
    bad = cert.degenerate_face
    assert bad is not None and not bad.ok
    assert set(bad.vertices) == {(2, 0), (0, 2)}
    with pytest.raises(DegenerateError):
        require_nondegenerate(f, p)


def test_perturbed_square_is_fine():
    f, _ = parse_laurent("u1^2 - u1*u2 + u2^2 + u1^-1*u2^-1")
    cert = is_nondegenerate(f, newton_polytope(f))
    assert cert.ok and cert.mode == "exact"


def test_exact_mode_refuses_three_variables():
    data = pipeline("u1*u2*u3 + u1^-1 + u2^-1 + u3^-1")
    with pytest.raises(ExactModeUnsupportedError):
        is_nondegenerate(data["f"], data["polytope"], mode="exact")


def test_probabilistic_mode_is_seed_deterministic():
    data = pipeline("u1 + u2 + u3 + u1^-1 + u2^-1 + u3^-1")
    a = is_nondegenerate(data["f"], data["polytope"], seed=1)
    b = is_nondegenerate(data["f"], data["polytope"], seed=1)
    assert a.to_json_obj() == b.to_json_obj()
    c = is_nondegenerate(data["f"], data["polytope"], seed=2)
    assert c.ok == a.ok


def test_degenerate_edge_in_three_variables():
    # (u1 - u2)^2 * u3 puts a repeated torus root on an edge of the hull;
    # edges stay exact even in probabilistic mode
    f, _ = parse_laurent(
        "u1^2*u3 - 2*u1*u2*u3 + u2^2*u3 + u3 + u1^-1*u2^-1*u3^-1 + u1*u2"
    )
    p = newton_polytope(f)
    assert p.convenient
    cert = is_nondegenerate(f, p, seed=0)
    assert not cert.ok
    assert cert.degenerate_face.dim == 1
    assert cert.degenerate_face.method == "edge-gcd"


def test_degenerate_two_face_detected_by_prime_sampling():
    # (1+u1)(1+u2)*u3 vanishes with both log-partials at u1 = u2 = -1 on
    # the square facet, while every edge of that square stays squarefree,
    # so only the sampled-resultant test can catch it
    f, _ = parse_laurent("u3 + u1*u3 + u2*u3 + u1*u2*u3 + u1^-1*u2^-1*u3^-1 + u3^-1")
    p = newton_polytope(f)
    assert p.convenient
    for seed in range(3):
        cert = is_nondegenerate(f, p, seed=seed)
        assert not cert.ok
        assert cert.degenerate_face.dim == 2
        assert cert.degenerate_face.method == "prime-resultant"


def test_assumed_certificate_shape():
    cert = assumed_certificate()
    assert cert.ok and cert.mode == "assumed"
    obj = cert.to_json_obj()
    assert obj["ok"] is True and obj["mode"] == "assumed"
    assert obj["faces"] == [] and obj["degenerate_face"] is None
