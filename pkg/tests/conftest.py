import hypothesis.strategies as st
from hypothesis import settings

from monoid_collapse import fixtures

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SYSTEMS = {name: make() for name, make in fixtures.ALL.items()}


def words(rs, max_size=8):
    n = len(rs.alphabet)
    if n == 0:
        return st.just(())
    return st.lists(st.integers(0, n - 1), max_size=max_size).map(tuple)


system_names = st.sampled_from(sorted(SYSTEMS))


# acceptance results are collected here and echoed in the terminal summary
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
