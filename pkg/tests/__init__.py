"""
File created: Package initializer for tests module.
"""
