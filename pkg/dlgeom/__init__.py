"""
dlgeom - exact computation in Diestel-Leader graphs DL_d(q), the
lamplighter groups L_q and the visual boundaries of both.
"""

__version__ = "1.0.0"
__author__ = "dlgeom developers"
__description__ = "Exact computation in Diestel-Leader graphs and lamplighter groups"
