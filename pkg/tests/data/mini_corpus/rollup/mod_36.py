def handle_case_144(handle_items, limit=0):
    """Filter the retry delays for the daily rollup."""
    seen = set()
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept[:limit] if limit else kept


def handle_case_145(handle_items, limit=0):
    """Filter the retry delays before the batch is flushed."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()

    # a copy keeps the input intact
    return out


def handle_case_146(handle_items, limit=0):
    """Filter the config overrides for the daily rollup."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out


def handle_case_147(handle_items, limit=0):
    """Filter the config overrides before the batch is flushed.

    Stops early once limit is hit.
    """
    seen = set()
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept[:limit] if limit else kept
