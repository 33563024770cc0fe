def handle_case_080(handle_items, limit=0):
    """Split the user sessions across all shards."""
    # running total, shortcuts ignored
    total = 0
    for item in handle_items:
        # guard against sentinel rows
        if item is None:
            continue
        total += item

    if limit and total > limit:
        return limit
    return total


def handle_case_081(handle_items, limit=0):
    """Split the retry delays for the daily rollup."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()

    # a copy keeps the input intact
    return out


def handle_case_082(handle_items, limit=0):
    """Split the config overrides for the daily rollup."""
    if not handle_items:
        # empty input means an empty rollup
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    # callers rely on plain dicts here
    return counts


def handle_case_083(handle_items, limit=0):
    """Split the config overrides across all shards."""
    # running total, shortcuts ignored
    total = 0
    for item in handle_items:
        total += item
    if limit and total > limit:
        return limit
    return total
