from fractions import Fraction

import pytest

from planepoly.corpus import corpus_generate
from planepoly.serialize import parse_text

F = Fraction

# affine in x, built by three W steps from 1
AFFINE_CUBIC = "x + x*y + x*y^2 + y^3"
P3 = "x^3 + 3*x*y + y^3"
# sharp in two variables without the cyclic symmetry of the p_d family
SEPTIC = "x^7 + y^7 + 7/2 x^5 y + 7/2 x y^5 + 7/2 x y"
SEPTIC_TOP_STEP = "x^6 - x^5*y + x^4*y^2 - x^3*y^3 + x^2*y^4 - x*y^5 + y^6"
# last-monomial W chain from 1 in three variables
CHAIN_CUBIC = "x + y + x*z + y*z + x*z^2 + y*z^2 + z^3"
# a commonly quoted form of the same chain, with xy in place of yz; it is not in J
CHAIN_CUBIC_MISQUOTED = "x + y + x*y + x*z + x*z^2 + y*z^2 + z^3"
# p3 with y replaced by y + z: in H(3, 3) with 7 terms, not in W
CUBIC_NOT_W = "x^3 + 3*x*y + 3*x*z + y^3 + 3*y^2*z + 3*y*z^2 + z^3"
# optimal in H(3, 4)
QUARTIC = "x^2*y*z + x*y^2*z + x*y*z^2 + x^2*y + x*y^2 + x^2 + x*z + y + z"


def poly(text, n=None):
    return parse_text(text, n)


@pytest.fixture(scope="session")
def mixed_corpus():
    """500 elements over n in {2, 3, 4} and degrees 1..5."""
    out = []
    for n in (2, 3, 4):
        for d in range(1, 6):
            size = 34 if n < 4 else 32
            out += corpus_generate(n, d, seed=1000 * n + d, size=size)
    return out[:500]


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, seconds, limit = ACCEPTANCE_RESULTS[k]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {k}: {verdict} ({seconds:.2f} s, limit {limit:g} s)")
