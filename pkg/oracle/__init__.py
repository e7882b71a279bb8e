"""Brute-force oracles used to certify the analyzer on small instances."""

from oracle.census import OracleMinimalSets, census, integer_grading, oracle_min_sets
from oracle.random_instances import random_instance

__all__ = ["OracleMinimalSets", "census", "integer_grading", "oracle_min_sets", "random_instance"]
