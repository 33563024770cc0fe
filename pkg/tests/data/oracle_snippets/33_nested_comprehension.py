grid = fetch()
flat = [cell for row in grid if row for cell in row if cell]
