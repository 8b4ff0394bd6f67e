import pytest

from boundquiver import corpus
from boundquiver.ar import enumerate_indecomposables


def alg(ident):
    return corpus.algebra(ident)


def inds(ident):
    return enumerate_indecomposables(corpus.algebra(ident))


@pytest.fixture
def ex1():
    return alg("EX1")


@pytest.fixture
def ex3():
    return alg("EX3")


# acceptance criteria record their verdict here; printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool | None, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        label = "INFO" if ok is None else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"criterion {k:>2}: {label}  {text}")
