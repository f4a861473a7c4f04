"""nate test suite."""
