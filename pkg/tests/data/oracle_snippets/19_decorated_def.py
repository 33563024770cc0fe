@lru_cache(maxsize=None)
def lookup(key):
    return TABLE[key]
