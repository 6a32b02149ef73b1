"""oneleg command-line interface."""
