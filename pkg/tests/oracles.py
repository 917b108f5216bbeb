"""Independent reference implementations used only by the tests."""


def naive_count(text: str, pattern: str) -> int:
    """Overlapping occurrences by sliding a window over every position."""
    m = len(pattern)
    return sum(1 for i in range(len(text) - m + 1) if text[i : i + m] == pattern)


def naive_suffix_array(text: str) -> list[int]:
    return sorted(range(len(text)), key=lambda i: text[i:])


def naive_probability(text: str, pattern: str) -> float:
    c = naive_count(text, pattern)
    if c == 0:
        return 0.0
    return (c - 1) / (len(text) - len(pattern) + 1)


def naive_run(text: str, query: str, start: int) -> list[tuple[int, int]]:
    out = []
    for m in range(1, len(query) - start + 1):
        c = naive_count(text, query[start : start + m])
        if c < 2:
            break
        out.append((m, c))
    return out
