"""
Chance Split

This package divides probabilistic shares of objects among agents whose
preferences are given by ideal lotteries, and checks the resulting
mechanisms against strategy proofness, efficiency, replacement
monotonicity, non-bossiness, in-betweenness, anonymity, envy-freeness and
welfare equivalence with exact rational arithmetic.
"""

__version__ = '1.0.0'
__author__ = 'Chance Split Team'
