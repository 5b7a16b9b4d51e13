import os
import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SPECIAL = [Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1)]


def rationals(max_num: int = 12, max_den: int = 6):
    generic = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    return st.one_of(st.sampled_from(SPECIAL), generic)


@st.composite
def skew_matrices(draw, min_n: int = 1, max_n: int = 6, entries=None):
    from lval.skew import SkewMatrix

    n = draw(st.integers(min_n, max_n))
    ent = entries if entries is not None else rationals()
    upper = {(i, j): draw(ent) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return SkewMatrix.from_upper(n, upper)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.verdict_lines():
        terminalreporter.write_line(line)
