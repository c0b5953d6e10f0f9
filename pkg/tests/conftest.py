import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from qferm.scalar import ExactScalar, QISqrt2

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
field = st.builds(QISqrt2, small, small, small, small)
scalars = st.dictionaries(st.integers(-4, 4), field, max_size=4).map(ExactScalar)
rational_q = st.sampled_from([Fraction(3, 2), Fraction(5, 7), Fraction(9, 4), Fraction(-2, 3)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = [mod.RESULTS[k] for k in sorted(mod.RESULTS)] if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
