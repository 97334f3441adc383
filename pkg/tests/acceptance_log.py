"""Pass/fail lines collected by the acceptance suite and printed after the run."""
LINES = []
