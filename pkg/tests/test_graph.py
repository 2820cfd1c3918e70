import pytest

from src.errors import UnsupportedCornerConfiguration
from src.graph import create_graph, should_continue
from src.nodes import weights as weights_node
from src.schemas import CertificateReport, CertifyRequest, GabberVerdict, PolytopeFamily
from src.state import initial_state


def certify(request: CertifyRequest, thread: str = "test") -> CertificateReport:
    graph = create_graph()
    config = {"configurable": {"thread_id": thread}, "recursion_limit": 20}
    report = None
    for event in graph.stream(initial_state(request), config=config):
        for node_output in event.values():
            if node_output and node_output.get("report") is not None:
                report = node_output["report"]
    assert report is not None
    return report


def test_prism_is_not_certified():
    report = certify(CertifyRequest(family=PolytopeFamily(family="prism", sides=(2, 2, 2))))
    assert report.R == 48
    assert report.weights.descending() == (4, 6, 28, 6, 4)
    assert report.weights_source == "stratum assembly"
    assert report.lattice_points == 27
    assert not report.R_primality.prime
    assert not report.approved
    assert len(report.conditions) == 3


def test_truncated_rectangle_is_certified():
    family = PolytopeFamily(family="truncated_prism", sides=(2, 3), corner=(1, 1))
    report = certify(CertifyRequest(family=family))
    assert report.R == 11
    assert report.weights.total == 11
    assert report.weights.ascending() == (3, 4, 4)
    assert report.top_weight == 4
    assert report.gabber.verdict == GabberVerdict.CONTAINS
    assert report.approved
    assert "prime-dimension certificate holds" in report.findings


def test_closed_form_on_request():
    family = PolytopeFamily(family="pyramid", sides=(2, 2, 226))
    report = certify(CertifyRequest(family=family, use_closed_form=True))
    assert report.weights_source == "closed form (pyramid)"
    assert "weights taken from the closed form on request" in report.findings
    assert report.monodromy.large
    assert report.approved


def test_engine_failure_retries_with_closed_form(monkeypatch):
    def fail(P):
        raise UnsupportedCornerConfiguration("corner not covered")

    monkeypatch.setattr(weights_node, "assemble_surface_weights", fail)
    report = certify(CertifyRequest(family=PolytopeFamily(family="pyramid", sides=(2, 2, 226))))
    assert report.weights_source == "closed form (pyramid)"
    assert report.weights.total == report.R == 2 * 2 * 2 * 226
    assert report.approved
    assert any(e.startswith("weights: UnsupportedCornerConfiguration") for e in report.errors)
    assert "weights taken from the closed form after the engine failed" in report.findings


def test_failure_without_closed_form_is_reported(monkeypatch):
    def fail(P):
        raise UnsupportedCornerConfiguration("corner not covered")

    monkeypatch.setattr(weights_node, "assemble_surface_weights", fail)
    family = PolytopeFamily(family="truncated_prism", sides=(2, 2, 2), corner=(1, 1, 1))
    report = certify(CertifyRequest(family=family))
    assert report.weights is None
    assert report.R == 47
    assert report.top_weight == 4
    # the prime test still runs on the top-weight multiplicity
    assert report.gabber.verdict == GabberVerdict.CONTAINS
    assert report.errors


def test_collinear_vertices_are_rejected():
    report = certify(CertifyRequest(vertices=[[0, 0], [1, 1], [2, 2]]))
    assert report.subject == "invalid request"
    assert not report.approved
    assert any(e.startswith("planner:") for e in report.errors)


@pytest.mark.parametrize("state, expected", [
    ({"needs_retry": True, "retry_count": 1}, "weights"),
    ({"needs_retry": True, "retry_count": 2}, "end"),
    ({}, "end"),
])
def test_should_continue(state, expected):
    assert should_continue(state) == expected
