def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
    missing = [n for n in range(1, 13) if n not in mod.RESULTS]
    if missing:
        terminalreporter.write_line(f"not run: {missing}")
