"""Error-correcting codes for informed receivers."""
