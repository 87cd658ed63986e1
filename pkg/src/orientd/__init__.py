"""Exact solvers and instance generators for d-orientable vertex deletion."""
