# Partition Duality - Boolean partition algebras and partition (uniform) spaces
# Finite instances are checked exhaustively, tree-coded infinite ones at bounded depth

__version__ = "0.1.0"
