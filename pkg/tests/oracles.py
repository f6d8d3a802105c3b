"""Independent reference implementations used to check the library.

These work on plain 0/1 lists and share no code with ``tcsp``.
"""

import random


def classify_tests(cells, statements, deleted, modified):
    """Cluster name per test, straight from the cluster definitions."""
    alive = [j for j, s in enumerate(statements) if s not in deleted]
    mods = [j for j, s in enumerate(statements) if s in modified]
    result = []
    for row in cells:
        if not any(row[j] for j in alive):
            result.append("out_dated")
        elif modified and not any(row[j] for j in mods):
            result.append("surplus")
        else:
            result.append("required")
    return result


def greedy_steps(cells):
    """Brute-force greedy: rescan every unchosen row each step.

    Returns a list of (row index, count, tied row indices).
    """
    width = len(cells[0]) if cells else 0
    uncovered = set(range(width))
    chosen = set()
    steps = []
    while uncovered:
        counts = {}
        for i, row in enumerate(cells):
            if i not in chosen:
                counts[i] = sum(1 for j in uncovered if row[j])
        if not counts:
            break
        best_count = max(counts.values())
        if best_count == 0:
            break
        tied = [i for i in sorted(counts) if counts[i] == best_count]
        best = tied[0]
        steps.append((best, best_count, tied))
        chosen.add(best)
        uncovered -= {j for j in range(width) if cells[best][j]}
    return steps


def random_case(rng: random.Random, max_tests=12, max_statements=12):
    """Random labelled 0/1 matrix plus a random disjoint change set."""
    n = rng.randint(0, max_tests)
    k = rng.randint(0, max_statements)
    density = rng.choice([0.05, 0.15, 0.3, 0.5, 0.8])
    tests = [f"T{i + 1}" for i in range(n)]
    statements = [f"S{j + 1}" for j in range(k)]
    cells = [[1 if rng.random() < density else 0 for _ in range(k)] for _ in range(n)]
    roles = [rng.choice("ddmm...") for _ in range(k)]
    deleted = {s for s, r in zip(statements, roles) if r == "d"}
    modified = {s for s, r in zip(statements, roles) if r == "m"}
    return tests, statements, cells, deleted, modified
