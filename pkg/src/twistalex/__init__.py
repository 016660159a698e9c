"""Twisted Alexander polynomials of surgery families on links.

The package computes (twisted) Alexander polynomials of links given by
braid words or planar diagram codes, follows them through the family of
manifolds obtained by 1/q surgery on one component, and estimates Mahler
measures of the resulting polynomials.

Modules
-------
laurent     exact Laurent polynomial arithmetic, gcd, canonical forms
matrix      polynomial matrices, determinants and minors
fox         free group words and Fox free differential calculus
links       braids, planar diagrams and Wirtinger presentations
alexander   Alexander matrices and polynomials
twisted     permutation representations and twisted Alexander polynomials
family      surgery presentations and twist families
mahler      Mahler measure estimates and cyclic cover torsion
cli         command line interface
"""
from .laurent import LaurentPoly, QPoly, canonical_form, exact_div, gcd, parse_poly

__version__ = "0.1.0"

__all__ = ["LaurentPoly", "QPoly", "canonical_form", "exact_div", "gcd", "parse_poly", "__version__"]
