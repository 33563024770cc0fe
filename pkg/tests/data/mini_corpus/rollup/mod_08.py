def handle_case_032(handle_items, limit=0):
    """Merge the user sessions with stale entries skipped.

    Stops early once limit is hit.
    """
    if not handle_items:
        # empty input means an empty rollup
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    # callers rely on plain dicts here
    return counts


def handle_case_033(handle_items, limit=0):
    """Merge the retry delays across all shards."""
    seen = set()
    # first pass keeps insertion order
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)

    # trim to the requested window
    return kept[:limit] if limit else kept


def handle_case_034(handle_items, limit=0):
    """Merge the retry delays with stale entries skipped."""
    if not handle_items:
        # empty input means an empty rollup
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    # callers rely on plain dicts here
    return counts


def handle_case_035(handle_items, limit=0):
    """Merge the config overrides across all shards."""
    # running total, shortcuts ignored
    total = 0
    for item in handle_items:
        total += item
    if limit and total > limit:
        return limit
    return total
