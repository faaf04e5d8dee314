"""diskernel command-line layer"""
