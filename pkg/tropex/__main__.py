# ============================================================================
# tropex/__main__.py
# ------------------
# Entry point for `python -m tropex` execution.
# ============================================================================

"""
Allow running tropex as a module:
    python -m tropex secondary --d 2
"""

if __name__ == '__main__':
    import sys
    from .cli import main
    sys.exit(main())
