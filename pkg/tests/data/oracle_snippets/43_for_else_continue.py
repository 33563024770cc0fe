for job in queue:
    if job.skip:
        continue
    run(job)
else:
    drain()
