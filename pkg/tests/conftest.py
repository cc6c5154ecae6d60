import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (title, passed, seconds, note); filled by test_acceptance
ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        title, passed, seconds, note = ACCEPTANCE_RESULTS[n]
        status = "PASS" if passed else "FAIL"
        line = f"criterion {n}: {status}  {title}  ({seconds:.2f} s)"
        if note:
            line += f"  {note}"
        terminalreporter.write_line(line)
