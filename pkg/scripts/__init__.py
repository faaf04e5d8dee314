"""Entry-point scripts for diskernel."""
