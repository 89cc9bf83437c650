"""
Minimal dominating sets and MDS-filtered seed selection on multilayer networks.
"""
