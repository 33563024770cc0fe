for row in table:
    if row.live:
        while row.next():
            row.step()
