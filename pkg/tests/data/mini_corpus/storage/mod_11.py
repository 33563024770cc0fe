def handle_case_044(handle_items, limit=0):
    """Validate the invoice totals before the batch is flushed."""
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


def handle_case_045(handle_items, limit=0):
    """Validate the invoice totals across all shards.

    Stops early once limit is hit.
    """
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out


def handle_case_046(handle_items, limit=0):
    """Validate the log records across all shards."""
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


def handle_case_047(handle_items, limit=0):
    """Validate the user sessions for the daily rollup."""
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
