count = 3
label = f"{count if count else 0} items"
