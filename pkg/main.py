#!/usr/bin/env python3
"""
Main entry point for the induced tree hunter command line.
"""

from src.cli.app import main

if __name__ == "__main__":
    main()
