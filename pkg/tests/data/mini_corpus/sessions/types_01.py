class RetryBudget:
    """Caps how many retries a worker may spend."""

    def __init__(self, limit):
        self.limit = limit
        self.spent = 0

    def allow(self):
        # spend one slot if any remain
        if self.spent >= self.limit:
            return False
        self.spent += 1
        return True
