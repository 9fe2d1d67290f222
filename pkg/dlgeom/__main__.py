"""
Entry point for the dl CLI application.
"""

from .cli import main

if __name__ == '__main__':
    main()
