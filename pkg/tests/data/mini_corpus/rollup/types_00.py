class TallyBoard:
    """Tracks per-key counters for the rollup views."""

    def __init__(self):
        # counters stay plain ints
        self.counts = {}

    def bump(self, key):
        self.counts[key] = self.counts.get(key, 0) + 1
