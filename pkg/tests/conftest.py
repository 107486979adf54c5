from hypothesis import strategies as st

from obkit.openbook import Curve, Letter, OpenBook, PlanarPage


@st.composite
def planar_books(draw, max_boundary=5, max_letters=5, max_exponent=4):
    r = draw(st.integers(1, max_boundary))
    if r == 1:
        return OpenBook(PlanarPage(0, 1))
    curve = st.sets(st.integers(1, r - 1), min_size=1).map(lambda s: Curve(tuple(sorted(s))))
    exponent = st.integers(-max_exponent, max_exponent).filter(bool)
    word = draw(st.lists(st.builds(Letter, curve, exponent), max_size=max_letters))
    return OpenBook(PlanarPage(0, r), tuple(word))


@st.composite
def stabilizations(draw):
    ob = draw(planar_books(max_boundary=4))
    sign = draw(st.sampled_from([1, -1]))
    attach = draw(st.sets(st.integers(1, ob.boundary_count - 1))) if ob.boundary_count > 1 else set()
    return ob, sign, attach


_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        number, _, title = name[len("test_criterion_"):].partition("_")
        terminalreporter.write_line(f"[{_criteria[name]}] criterion {int(number)}: {title.replace('_', ' ')}")
