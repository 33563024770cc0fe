rows = load()
keep = [r for r in rows if r.ok]
