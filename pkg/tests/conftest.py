import pytest
from hypothesis import strategies as st

from rights_extension.game import GameParams
from rights_extension.production import ProductionSpec

ACCEPTANCE_LINES: list[str] = []

FAMILIES = [ProductionSpec.isoelastic(0.5), ProductionSpec.log(), ProductionSpec.saturating(2.0)]


@pytest.fixture
def baseline():
    """N=10, E0=1, M=0.5, A=2, G=0.5, isoelastic(0.5): the elite extends to 2."""
    return GameParams(N=10, E0=1.0, M=0.5, A=2.0, G=0.5, f=ProductionSpec.isoelastic(0.5))


productions = st.one_of(
    st.floats(0.1, 0.9).map(ProductionSpec.isoelastic),
    st.just(ProductionSpec.log()),
    st.floats(0.3, 5.0).map(ProductionSpec.saturating),
)


@st.composite
def game_params(draw, commitment_problem=True):
    N = draw(st.integers(2, 30))
    G = draw(st.floats(1.0 / N, 1.0, exclude_min=True, exclude_max=True))
    hi = 1.0 / G if commitment_problem else float(N)
    E0 = draw(st.floats(1e-3, hi, exclude_max=commitment_problem))
    if E0 > N:
        E0 = float(N)
    return GameParams(
        N=N, E0=E0, M=draw(st.floats(0.05, 10.0)), A=draw(st.floats(0.2, 10.0)), G=G,
        f=draw(productions),
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
