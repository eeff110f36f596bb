import pytest

ACCEPTANCE: dict[str, str] = {}


def record(criterion: str, passed: bool, detail: str = "") -> None:
    # parametrized criteria report once; any failing case fails the criterion
    if ACCEPTANCE.get(criterion, "").startswith("FAIL"):
        return
    ACCEPTANCE[criterion] = ("PASS" if passed else "FAIL") + (f"  {detail}" if detail else "")


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under the test's docstring title."""
    title = request.node.function.__doc__.strip().splitlines()[0]
    outcome = {"detail": ""}
    yield outcome
    rep = getattr(request.node, "rep_call", None)
    record(title, rep is not None and rep.passed, outcome["detail"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    out = yield
    rep = out.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for title in sorted(ACCEPTANCE, key=lambda t: int(t.split()[0].rstrip("."))):
        terminalreporter.write_line(f"{ACCEPTANCE[title][:4]}  {title}{ACCEPTANCE[title][4:]}")
