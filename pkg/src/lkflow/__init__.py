"""Proof-theory toolkit for the LK sequent calculus."""

__version__ = '0.1.0'
