from __future__ import annotations

# criterion number -> (title, passed, seconds, limit); filled by test_acceptance
ACCEPTANCE: dict[int, tuple] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, passed, secs, limit = ACCEPTANCE[num]
        terminalreporter.write_line("criterion %2d %-4s %-48s %7.2f s (limit %g s)"
                                    % (num, "PASS" if passed else "FAIL", title, secs, limit))
