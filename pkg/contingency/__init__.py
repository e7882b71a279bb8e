"""Marginal-model generator matrices for multi-way contingency tables."""

from contingency.marginal import cells, embed_block, marginal_matrix, remove_redundant_rows, table_matrix

__all__ = ["cells", "embed_block", "marginal_matrix", "remove_redundant_rows", "table_matrix"]
