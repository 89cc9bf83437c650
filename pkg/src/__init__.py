"""
File created: Package initializer.
"""
