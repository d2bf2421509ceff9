"""HTTP service wrapping the core package; the CLI is a thin client of it."""
