import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lyubeznik.simplicial import SimplicialComplex

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def complexes(draw, max_n=5, min_n=1):
    n = draw(st.integers(min_n, max_n))
    facets = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=6))
    return SimplicialComplex(n, tuple(facets))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
