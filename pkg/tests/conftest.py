import re

CRITERIA = {
    1: "every Black box sampled at random points agrees with the scalar classifier",
    2: "elbow-coincidence configurations are never inside a Black joint-space box",
    3: "the workspace point hole is an Undetermined minimum-size leaf at every depth",
    4: "the quadtree/grid cost ratio K decreases with depth within the expected call budget",
    5: "aspect counts match across mechanisms, are depth-stable, and pair one-to-one",
    6: "labeling, refinement, serialization, and inverse-of-direct oracles agree",
    7: "interval operations are inclusion isotonic with zero violations",
}

_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results: dict[int, bool] = {}
    for category in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(category, []):
            match = _PATTERN.search(getattr(rep, "nodeid", ""))
            if not match:
                continue
            num = int(match.group(1))
            results[num] = results.get(num, True) and category == "passed"
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(results):
        status = "PASS" if results[num] else "FAIL"
        terminalreporter.write_line(
            f"criterion {num}: {status} - {CRITERIA.get(num, '')}"
        )
