import os

from hypothesis import settings, strategies as st

from sekit.matrix import CorrMatrix

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def grids(rows, cols, max_entry):
    return st.lists(
        st.lists(st.integers(0, max_entry), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    )


@st.composite
def matrices(draw, max_dim=5, max_entry=9, rows=None, cols=None, square=False):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = r if square else cols if cols is not None else draw(st.integers(1, max_dim))
    return CorrMatrix(draw(grids(r, c, max_entry)))


@st.composite
def composable_pairs(draw, max_dim=5, max_entry=9):
    """``(R, S)`` with R a x b and S b x a."""
    a = draw(st.integers(1, max_dim))
    b = draw(st.integers(1, max_dim))
    return (draw(matrices(rows=a, cols=b, max_entry=max_entry)),
            draw(matrices(rows=b, cols=a, max_entry=max_entry)))


def naive_product(x, y):
    """Schoolbook product on plain lists, independent of sekit.matrix."""
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))]
            for i in range(len(x))]


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(report, "user_properties", []))
            if "criterion" in props and report.when == "call":
                rows.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for criterion, status in sorted(rows, key=lambda r: int(r[0].split()[0][2:])):
            terminalreporter.write_line(f"{status}  {criterion}")
