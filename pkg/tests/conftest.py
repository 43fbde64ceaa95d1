from support import ACCEPTANCE_RESULTS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    from test_acceptance import TITLES, line

    terminalreporter.section("acceptance criteria")
    for number in sorted(TITLES):
        if number in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line(number, *ACCEPTANCE_RESULTS[number]))
        else:
            terminalreporter.write_line(f"criterion {number} [NOT RUN] {TITLES[number]}")
