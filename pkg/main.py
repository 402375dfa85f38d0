#!/usr/bin/env python3
"""
LAC dHvA Simulator - entry script

    python main.py sweep --config lacdhva/data/paper.cfg --out out
"""
import os
import sys

from dotenv import load_dotenv

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from lacdhva.cli import main

# Load environment variables
load_dotenv()

if __name__ == "__main__":
    sys.exit(main())
